//! Canonical text rendering and parsing of polynomials, plus a LaTeX
//! emitter for table-row output.
//!
//! Canonical form: terms in the canonical monomial order, explicit `+`/`-`
//! between terms, coefficients as `p` or `p/q`, factors joined by `*`,
//! exponents as `^k`. `cp2` stands for the second target Chern class,
//! `cb3` for the third quotient Chern class.

use std::sync::Arc;

use num_traits::{One, Signed};

use crate::poly::{GradedPoly, VarTable};
use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Renders a bare monomial, `1` for the empty one.
pub fn render_monomial(table: &VarTable, exps: &[u32]) -> String {
    let mut factors = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 1 {
            factors.push(table.names()[i].clone());
        } else if e > 1 {
            factors.push(format!("{}^{}", table.names()[i], e));
        }
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// Canonical rendering; `0` for the zero polynomial.
pub fn render_poly(p: &GradedPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (exps, coeff)) in p.sorted_terms().into_iter().enumerate() {
        let mono = render_monomial(p.vars(), &exps);
        let mag = scalar::abs(&coeff);
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mono == "1" {
            out.push_str(&scalar::render(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", scalar::render(&mag), mono));
        }
    }
    out
}

/// Parses the canonical form back into a polynomial over `table`.
pub fn parse_poly(table: &Arc<VarTable>, input: &str) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero(table);
    let input = input.trim();
    if input.is_empty() {
        return Err(Error::Parse("empty polynomial text".into()));
    }
    if input == "0" {
        return Ok(out);
    }
    for (sign, term) in split_terms(input)? {
        let parsed = parse_term(table, term)?;
        let signed = if sign < 0 { parsed.neg() } else { parsed };
        out = out.checked_add(&signed)?;
    }
    Ok(out)
}

fn split_terms(input: &str) -> Result<Vec<(i32, &str)>> {
    let mut terms = Vec::new();
    let bytes = input.as_bytes();
    let mut start = 0usize;
    let mut sign = 1i32;
    let mut seen_content = false;
    let mut prev_char = ' ';
    for (i, b) in bytes.iter().enumerate() {
        let ch = *b as char;
        // a sign splits terms unless it follows '^' or occurs before content
        if (ch == '+' || ch == '-') && seen_content && prev_char != '^' && prev_char != '/' {
            terms.push((sign, input[start..i].trim()));
            sign = if ch == '-' { -1 } else { 1 };
            start = i + 1;
            seen_content = false;
        } else if ch == '-' && !seen_content {
            sign = -sign;
            start = i + 1;
        } else if !ch.is_whitespace() {
            seen_content = true;
        }
        if !ch.is_whitespace() {
            prev_char = ch;
        }
    }
    terms.push((sign, input[start..].trim()));
    if terms.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("dangling sign in `{input}`")));
    }
    Ok(terms)
}

fn parse_term(table: &Arc<VarTable>, term: &str) -> Result<GradedPoly> {
    let mut coeff = Scalar::one();
    let mut exps = vec![0u32; table.len()];
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if factor
            .chars()
            .next()
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            let c = scalar::parse(factor)
                .ok_or_else(|| Error::Parse(format!("bad coefficient `{factor}`")))?;
            coeff *= c;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let exp: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (n.trim(), exp)
            }
            None => (factor, 1),
        };
        let idx = table
            .index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        exps[idx] += exp;
    }
    Ok(GradedPoly::from_terms(table, [(exps, coeff)]))
}

/// LaTeX name for a canonical variable.
fn latex_var(name: &str) -> String {
    if let Some(rest) = name.strip_prefix("cp") {
        return format!("c'_{{{rest}}}");
    }
    if let Some(rest) = name.strip_prefix("cb") {
        return format!("\\bar{{c}}_{{{rest}}}");
    }
    if let Some(rest) = name.strip_prefix("xi") {
        return format!("\\xi_{{{rest}}}");
    }
    if name == "eps0" {
        return "\\epsilon_0".to_string();
    }
    if name.len() > 1 {
        if let Some(rest) = name.strip_prefix(|c: char| c.is_ascii_alphabetic()) {
            if rest.chars().all(|c| c.is_ascii_digit()) {
                return format!("{}_{{{rest}}}", &name[..1]);
            }
        }
    }
    name.to_string()
}

/// Renders a polynomial as a LaTeX expression mirroring the usual
/// characteristic-class notation.
pub fn render_latex(p: &GradedPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (exps, coeff)) in p.sorted_terms().into_iter().enumerate() {
        let mut mono = String::new();
        for (j, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = latex_var(&p.vars().names()[j]);
            if e == 1 {
                mono.push_str(&format!("{v} "));
            } else {
                mono.push_str(&format!("{{{v}}}^{{{e}}} "));
            }
        }
        let mono = mono.trim_end().to_string();
        let mag = scalar::abs(&coeff);
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag_str = if scalar::is_integer(&mag) {
            scalar::render(&mag)
        } else {
            format!("\\tfrac{{{}}}{{{}}}", mag.numer(), mag.denom())
        };
        if mono.is_empty() {
            out.push_str(&mag_str);
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag_str} {mono}"));
        }
    }
    out
}
