//! Enumerative pipelines: evaluate Thom polynomials on flag-manifold Chern
//! data, push down to the ambient projective space, and express locus
//! degrees in projective characters.
//!
//! Three pipelines are built:
//! - `p3-surface`: plane-to-plane types over a resolved surface mapping to
//!   P^3; degrees come out in the characters d, xi1, xi2, xi01 defined by
//!   `f_*(1) = d a`, `f_* c1 = xi1 a^2`, `f_*(c1^2) = xi2 a^3`,
//!   `f_* c2 = xi01 a^3`.
//! - `p4-surface`: surface-to-3-space types over an immersed surface in
//!   P^4, same characters shifted one degree up.
//! - `p4-primal`: equidimensional types over a smooth hypersurface
//!   X in P^4 with `c(TX) = (1+a)^5 (1+d a)^{-1}`; degrees come out as
//!   polynomials in d with the rule `∫_X a^3 = d`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::poly::{GradedPoly, VarTable};
use crate::registry::{self, Registry};
use crate::ring::{flag_target_chern, quotient_chern, ChernVector, QuotientRing};
use crate::scalar::{self, Scalar};
use crate::text::{render_latex, render_poly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    P3Surface,
    P4Surface,
    P4Primal,
}

impl Pipeline {
    pub fn parse(s: &str) -> Result<Pipeline> {
        match s {
            "p3-surface" => Ok(Pipeline::P3Surface),
            "p4-surface" => Ok(Pipeline::P4Surface),
            "p4-primal" => Ok(Pipeline::P4Primal),
            other => Err(Error::UnknownPipeline(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pipeline::P3Surface => "p3-surface",
            Pipeline::P4Surface => "p4-surface",
            Pipeline::P4Primal => "p4-primal",
        }
    }

    /// Which map-germ pair the pipeline consumes.
    pub fn pair(&self) -> (usize, usize) {
        match self {
            Pipeline::P3Surface => (2, 2),
            Pipeline::P4Surface => (2, 3),
            Pipeline::P4Primal => (3, 3),
        }
    }

    pub fn ambient(&self) -> u32 {
        match self {
            Pipeline::P3Surface => 3,
            Pipeline::P4Surface | Pipeline::P4Primal => 4,
        }
    }

    /// Dimension of the flag of (point, line) pairs over the source.
    pub fn flag_dim(&self) -> u64 {
        match self {
            Pipeline::P3Surface => 4,
            Pipeline::P4Surface => 5,
            Pipeline::P4Primal => 6,
        }
    }

    /// The pushforward data of the pipeline.
    pub fn pushforward_spec(&self) -> PushforwardSpec {
        PushforwardSpec {
            ambient: self.ambient(),
            source_dim: self.pair().0 as u32,
            rho: self.ambient(),
        }
    }
}

/// Pushforward data for one pipeline: the ambient dimension, the source
/// dimension, and the degree of the monic fiber relation (the Gysin map
/// keeps the t^{rho-1} layer).
#[derive(Debug, Clone)]
pub struct PushforwardSpec {
    pub ambient: u32,
    pub source_dim: u32,
    pub rho: u32,
}

impl PushforwardSpec {
    pub fn surface(n: u32) -> PushforwardSpec {
        PushforwardSpec {
            ambient: n,
            source_dim: 2,
            rho: n,
        }
    }
}

/// Character table d, xi1, xi2, xi01.
pub fn chars_table() -> Arc<VarTable> {
    VarTable::new(&[("d", 1), ("xi1", 1), ("xi2", 1), ("xi01", 1)])
}

/// Ordinary characters d, eps0 (double-curve degree), C (crosscaps),
/// T (triple points).
pub fn ordinary_table() -> Arc<VarTable> {
    VarTable::new(&[("d", 1), ("eps0", 1), ("C", 1), ("T", 1)])
}

/// Complete-intersection degrees d1, d2.
pub fn ci_table() -> Arc<VarTable> {
    VarTable::new(&[("d1", 1), ("d2", 1)])
}

/// Plain degree table for the primal pipeline.
pub fn degree_table() -> Arc<VarTable> {
    VarTable::new(&[("d", 1)])
}

/// Substitute a Tp into the flag ring of a surface pipeline: formal
/// c1, c2 for the source tangent bundle, the twisted quotient data for the
/// target. Dimension truncation happens inside the ring.
pub fn locus_class_surface(tp: &GradedPoly, n: u32) -> Result<GradedPoly> {
    let ring = QuotientRing::surface_flag(n);
    let vars = ring.vars().clone();
    let cprime = flag_target_chern(&ring, n, "h")?;
    let mut bindings: BTreeMap<String, GradedPoly> = BTreeMap::new();
    for name in tp.vars().names() {
        if let Some(j) = name.strip_prefix("cp") {
            let j: usize = j.parse().expect("cp index");
            bindings.insert(name.clone(), cprime.class(j, &vars));
        }
    }
    // c1, c2 are identity-bound; surface Tps have no deeper source classes
    Ok(ring.reduce(&tp.substitute(&bindings, &vars)?))
}

/// Gysin pushforward along the t-fibration of the surface flag ring.
pub fn flag_pushdown(x: &GradedPoly, n: u32) -> GradedPoly {
    QuotientRing::surface_flag(n).gysin_pushforward(x)
}

/// Linear extension of the character map: a monomial `c1^i c2^j h^k` maps
/// to `char(i, j) * a^{k+i+2j+(n-2)}`. Returns the character polynomial
/// and the (uniform) ambient a-power.
pub fn xi_pushforward(x: &GradedPoly, n: u32) -> Result<(GradedPoly, u32)> {
    let chars = chars_table();
    let vars = x.vars();
    let idx = |name: &str| vars.index(name);
    let (i1, i2, ih) = (idx("c1"), idx("c2"), idx("h"));
    let it = idx("t");
    let mut out = GradedPoly::zero(&chars);
    let mut a_pow: Option<u32> = None;
    for (exps, coeff) in x.terms() {
        if let Some(t) = it {
            if exps[t] != 0 {
                return Err(Error::Internal("xi map applied before pushdown".into()));
            }
        }
        let i = i1.map(|k| exps[k]).unwrap_or(0);
        let j = i2.map(|k| exps[k]).unwrap_or(0);
        let k = ih.map(|k| exps[k]).unwrap_or(0);
        let char_name = match (i, j) {
            (0, 0) => "d",
            (1, 0) => "xi1",
            (2, 0) => "xi2",
            (0, 1) => "xi01",
            _ => {
                return Err(Error::Internal(format!(
                    "source Chern monomial c1^{i} c2^{j} exceeds the surface dimension"
                )))
            }
        };
        let power = k + i + 2 * j + (n - 2);
        match a_pow {
            None => a_pow = Some(power),
            Some(p) if p == power => {}
            Some(p) => {
                return Err(Error::Internal(format!(
                    "non-uniform ambient degree: {p} vs {power}"
                )))
            }
        }
        // the remaining variables (d, xi, ...) of mixed rings carry over
        let mut char_term = GradedPoly::var(&chars, char_name);
        for (vi, &e) in exps.iter().enumerate() {
            if e == 0 || Some(vi) == i1 || Some(vi) == i2 || Some(vi) == ih || Some(vi) == it {
                continue;
            }
            let name = &vars.names()[vi];
            let v = GradedPoly::var(&chars, name).pow(e);
            char_term = char_term.checked_mul(&v)?;
        }
        out = out.checked_add(&char_term.scale(coeff))?;
    }
    Ok((out, a_pow.unwrap_or(0)))
}

/// One emitted degree formula.
#[derive(Debug, Clone, Serialize)]
pub struct FormulaRecord {
    pub locus: String,
    pub pipeline: String,
    pub type_name: String,
    pub formula: String,
    pub characters: Vec<String>,
    pub latex: String,
}

impl FormulaRecord {
    fn new(locus: &str, pipeline: Pipeline, type_name: &str, poly: &GradedPoly) -> FormulaRecord {
        let characters = poly
            .vars()
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| poly.terms().any(|(e, _)| e[*i] != 0))
            .map(|(_, n)| n.clone())
            .collect();
        FormulaRecord {
            locus: locus.into(),
            pipeline: pipeline.name().into(),
            type_name: type_name.into(),
            formula: render_poly(poly),
            characters,
            latex: render_latex(poly),
        }
    }
}

/// The geometric name of a locus, where the classification gives one.
pub fn locus_name(pipeline: Pipeline, type_name: &str) -> String {
    match (pipeline, type_name) {
        (Pipeline::P3Surface, "LipsBeaks") => "Parabolic curve".into(),
        (Pipeline::P3Surface, "Swallowtail") => "Flecnodal curve".into(),
        (Pipeline::P3Surface, "Butterfly") => "Deg. flecnodal pt".into(),
        (Pipeline::P3Surface, "Gulls") => "Cusp of Gauss".into(),
        (Pipeline::P3Surface, "Sharksfin") => "Crosscap".into(),
        (Pipeline::P3Surface, "Goose") => "Goose point".into(),
        _ => format!("{type_name} locus"),
    }
}

/// Degree of the locus with singular projection of the given type, as a
/// polynomial in the pipeline's characters.
pub fn locus_degree(
    registry: &Registry,
    pipeline: Pipeline,
    type_name: &str,
) -> Result<(GradedPoly, FormulaRecord)> {
    let (m, n_pair) = pipeline.pair();
    let t = registry.lookup(m, n_pair, type_name)?;
    let tp = t.known_tp_expanded().ok_or_else(|| Error::UnknownType {
        name: type_name.into(),
        m,
        n: n_pair,
    })?;
    locus_degree_of_tp(&tp, pipeline, &t.name)
}

/// Same, for an explicit Tp (used by the cross-route identity check).
pub fn locus_degree_of_tp(
    tp: &GradedPoly,
    pipeline: Pipeline,
    type_name: &str,
) -> Result<(GradedPoly, FormulaRecord)> {
    let s = tp
        .homogeneous_degree()
        .ok_or_else(|| Error::Internal("Tp must be homogeneous".into()))?;
    if s > pipeline.flag_dim() {
        return Err(Error::EmptyLocus {
            degree: s,
            flag_dim: pipeline.flag_dim(),
        });
    }
    let poly = match pipeline {
        Pipeline::P3Surface | Pipeline::P4Surface => {
            let n = pipeline.pushforward_spec().ambient;
            let cls = locus_class_surface(tp, n)?;
            let pushed = flag_pushdown(&cls, n);
            let (chars, a_pow) = xi_pushforward(&pushed, n)?;
            if !chars.is_zero() && a_pow as u64 != s - 1 {
                return Err(Error::Internal(format!(
                    "ambient degree {a_pow} does not match codimension {s}"
                )));
            }
            chars
        }
        Pipeline::P4Primal => primal_degree(tp, s)?,
    };
    let record = FormulaRecord::new(&locus_name(pipeline, type_name), pipeline, type_name, &poly);
    Ok((poly, record))
}

/// The primal pipeline: substitute `c(TX) = (1+a)^5 (1+d a)^{-1}` and the
/// P^4 flag data, push down, and integrate with `∫_X a^3 = d`.
fn primal_degree(tp: &GradedPoly, s: u64) -> Result<GradedPoly> {
    let ring = QuotientRing::primal_flag();
    let vars = ring.vars().clone();
    let one = GradedPoly::one(&vars);
    let a = GradedPoly::var(&vars, "a");
    let d = GradedPoly::var(&vars, "d");
    let da = d.checked_mul(&a)?;
    let c_total = ring.reduce(
        &one.checked_add(&a)?
            .pow(5)
            .checked_mul(&ring.unit_inverse(&one.checked_add(&da)?)?)?,
    );
    let cprime = flag_target_chern(&ring, 4, "a")?;
    let mut bindings: BTreeMap<String, GradedPoly> = BTreeMap::new();
    for k in 1..=3usize {
        bindings.insert(
            format!("c{k}"),
            coeff_in_var_power(&c_total, &vars, "a", k as u32, true)?,
        );
        bindings.insert(format!("cp{k}"), cprime.class(k, &vars));
    }
    let cls = ring.reduce(&tp.substitute(&bindings, &vars)?);
    let pushed = ring.gysin_pushforward(&cls);
    // pushed lives on X: terms d^e a^k with uniform k = s - 3
    let dt = degree_table();
    let mut out = GradedPoly::zero(&dt);
    let ia = vars.index("a").unwrap();
    let id = vars.index("d").unwrap();
    let it = vars.index("t").unwrap();
    let expected = (s - 3) as u32;
    for (exps, coeff) in pushed.terms() {
        if exps[it] != 0 {
            return Err(Error::Internal("primal class not pushed down".into()));
        }
        if exps[ia] != expected {
            return Err(Error::Internal(format!(
                "primal class has a^{} where a^{} was expected",
                exps[ia], expected
            )));
        }
        let term = GradedPoly::from_terms(&dt, [(vec![exps[id]], coeff.clone())]);
        out = out.checked_add(&term)?;
    }
    // degree of the pushforward: multiply by ∫_X a^3 = d
    out.checked_mul(&GradedPoly::var(&dt, "d"))
}

/// Terms of `x` with exact power k of `var`; `keep` retains the variable
/// in the result, otherwise it is stripped.
fn coeff_in_var_power(
    x: &GradedPoly,
    vars: &Arc<VarTable>,
    var: &str,
    k: u32,
    keep: bool,
) -> Result<GradedPoly> {
    let idx = vars
        .index(var)
        .ok_or_else(|| Error::Internal(format!("missing variable {var}")))?;
    let mut out = GradedPoly::zero(vars);
    for (exps, coeff) in x.terms() {
        if exps[idx] == k {
            let mut e = exps.clone();
            if !keep {
                e[idx] = 0;
            }
            out = out.checked_add(&GradedPoly::from_terms(vars, [(e, coeff.clone())]))?;
        }
    }
    Ok(out)
}

/// The multi-singularity characters of a resolved surface in P^3: number
/// of crosscaps C, number of triple points T, and double-curve degree
/// eps0, all as polynomials in (d, xi1, xi2, xi01).
#[derive(Debug, Clone)]
pub struct StableChars {
    pub crosscaps: GradedPoly,
    pub triple_points: GradedPoly,
    pub double_curve: GradedPoly,
}

/// Ring over the resolved surface M: formal c1, c2, the pullback
/// hyperplane class h (truncated above dim M), and the characters as free
/// symbols so that pulled-back classes like s1 = (4d - xi1) h^2 live here.
fn m_ring() -> QuotientRing {
    let vars = VarTable::new(&[
        ("d", 1),
        ("xi1", 1),
        ("xi2", 1),
        ("xi01", 1),
        ("c1", 1),
        ("c2", 2),
        ("h", 1),
    ]);
    QuotientRing::new(vars, vec![(vec!["c1", "c2", "h"], 2)], None)
}

/// Pushforward to P^3 of a class on M written in (c1, c2, h) with
/// character coefficients.
fn push_m_class(x: &GradedPoly) -> Result<GradedPoly> {
    let (chars, _) = xi_pushforward(x, 3)?;
    Ok(chars)
}

/// Pullback of the pushforward: `f^* f_*` with the projection formula,
/// landing back in the M ring with h in place of a.
fn pull_push(x: &GradedPoly, ring: &QuotientRing) -> Result<GradedPoly> {
    let vars = ring.vars();
    let idx = |name: &str| vars.index(name).expect("m-ring variable");
    let (i1, i2, ih) = (idx("c1"), idx("c2"), idx("h"));
    let mut out = GradedPoly::zero(vars);
    for (exps, coeff) in x.terms() {
        let (i, j, k) = (exps[i1], exps[i2], exps[ih]);
        let char_name = match (i, j) {
            (0, 0) => "d",
            (1, 0) => "xi1",
            (2, 0) => "xi2",
            (0, 1) => "xi01",
            _ => return Err(Error::Internal("class exceeds surface dimension".into())),
        };
        let mut e = exps.clone();
        e[i1] = 0;
        e[i2] = 0;
        e[ih] = k + i + 2 * j + 1; // f_* raises by one, then a pulls back to h
        e[idx(char_name)] += 1;
        out = out.checked_add(&GradedPoly::from_terms(vars, [(e, coeff.clone())]))?;
    }
    Ok(ring.reduce(&out))
}

/// Computes C, T, eps0 from the stable multi-singularity classes, with
/// the orbit multiplicities 2 (double points) and 3 (triple points)
/// divided out.
pub fn stable_multisingularity_chars(_registry: &Registry) -> Result<StableChars> {
    let ring = m_ring();
    let vars = ring.vars().clone();
    let one = GradedPoly::one(&vars);
    let c1 = GradedPoly::var(&vars, "c1");
    let c2 = GradedPoly::var(&vars, "c2");
    let h = GradedPoly::var(&vars, "h");
    let d = GradedPoly::var(&vars, "d");

    // quotient Chern classes of f^*TP^3 - TM
    let c_source = ChernVector::new(2, vec![c1.clone(), c2.clone()]);
    let hp = ring.reduce(&one.checked_add(&h)?.pow(4));
    let c_target = ChernVector::new(2, vec![hp.homogeneous_part(1), hp.homogeneous_part(2)]);
    let cbar = quotient_chern(&ring, &c_source, &c_target, 2)?;
    let (cb1, cb2) = (cbar[0].clone(), cbar[1].clone());

    // s0 = f^* f_*(1) = d h ; s1 = f^* f_*(cb1)
    let s0 = ring.reduce(&d.checked_mul(&h)?);
    let s1 = pull_push(&cb1, &ring)?;

    let multi = |name: &str| -> Result<GradedPoly> {
        let form = registry::multisingularity_tp(name)?;
        let value = form.substitute_pairs(
            &[
                ("s0", s0.clone()),
                ("s1", s1.clone()),
                ("cb1", cb1.clone()),
                ("cb2", cb2.clone()),
            ],
            &vars,
        )?;
        Ok(ring.reduce(&value))
    };

    let crosscaps = push_m_class(&multi("A1")?)?;
    let triple = push_m_class(&multi("A0^3")?)?;
    let double = push_m_class(&multi("A0^2")?)?;

    Ok(StableChars {
        crosscaps,
        triple_points: triple.scale(&scalar::frac(1, 3)),
        double_curve: double.scale(&scalar::frac(1, 2)),
    })
}

/// Combined table for the character conversions.
fn conversion_table() -> Arc<VarTable> {
    VarTable::new(&[
        ("d", 1),
        ("xi1", 1),
        ("xi2", 1),
        ("xi01", 1),
        ("eps0", 1),
        ("C", 1),
        ("T", 1),
    ])
}

/// The forward character conversion: xi1, xi2, xi01 as polynomials in
/// (d, eps0, C, T).
pub fn char_conversion_forward() -> [GradedPoly; 3] {
    let t = ordinary_table();
    let p = |s: &str| crate::text::parse_poly(&t, s).expect("conversion text");
    [
        p("4*d - d^2 + 2*eps0"),
        p("d^3 - 8*d^2 + 16*d + 16*eps0 - 3*d*eps0 + 3*T - C"),
        p("d^3 - 4*d^2 + 6*d + 8*eps0 - 3*d*eps0 + 3*T - 2*C"),
    ]
}

/// Inverts the stable multi-singularity system exactly: solves the
/// computed C(xi), T(xi), eps0(xi) for the xi characters over
/// (d, eps0, C, T). Must agree with [`char_conversion_forward`].
pub fn char_conversion_inverse(registry: &Registry) -> Result<[GradedPoly; 3]> {
    let chars = stable_multisingularity_chars(registry)?;
    let big = conversion_table();
    let ord = ordinary_table();
    let unknowns = ["xi1", "xi2", "xi01"];
    let mut matrix: Vec<Vec<GradedPoly>> = Vec::new();
    let mut rhs: Vec<GradedPoly> = Vec::new();
    for (formula, target) in [
        (&chars.crosscaps, "C"),
        (&chars.triple_points, "T"),
        (&chars.double_curve, "eps0"),
    ] {
        // equation: formula(d, xi) = target
        let f = formula.embed(&big)?;
        let mut row = vec![GradedPoly::zero(&ord); 3];
        let mut b = GradedPoly::var(&big, target);
        for (exps, coeff) in f.terms() {
            let xi_exps: Vec<u32> = unknowns
                .iter()
                .map(|u| exps[big.index(u).unwrap()])
                .collect();
            let total: u32 = xi_exps.iter().sum();
            if total == 0 {
                b = b.checked_sub(&GradedPoly::from_terms(
                    &big,
                    [(exps.clone(), coeff.clone())],
                ))?;
            } else if total == 1 {
                let col = xi_exps.iter().position(|&e| e == 1).unwrap();
                let mut e = exps.clone();
                e[big.index(unknowns[col]).unwrap()] = 0;
                let stripped = GradedPoly::from_terms(&big, [(e, coeff.clone())]);
                row[col] = row[col].checked_add(&project_to(&stripped, &ord)?)?;
            } else {
                return Err(Error::Internal("character system is not linear".into()));
            }
        }
        matrix.push(row);
        rhs.push(project_to(&b, &ord)?);
    }
    let solution = crate::linalg::solve_symbolic(&matrix, &rhs)?;
    Ok([
        solution[0].clone(),
        solution[1].clone(),
        solution[2].clone(),
    ])
}

/// Reinterprets a polynomial over a smaller table; fails if it uses
/// variables outside it.
fn project_to(x: &GradedPoly, target: &Arc<VarTable>) -> Result<GradedPoly> {
    let source = x.vars();
    let mut out = GradedPoly::zero(target);
    for (exps, coeff) in x.terms() {
        let mut e = vec![0u32; target.len()];
        for (i, &exp) in exps.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let name = &source.names()[i];
            match target.index(name) {
                Some(j) => e[j] = exp,
                None => {
                    return Err(Error::Internal(format!(
                        "variable {name} does not belong to the target table"
                    )))
                }
            }
        }
        out = out.checked_add(&GradedPoly::from_terms(target, [(e, coeff.clone())]))?;
    }
    Ok(out)
}

/// Rewrites a (d, xi1, xi2, xi01) formula in the ordinary characters
/// (d, eps0, C, T) via the forward conversion.
pub fn ordinary_form(formula: &GradedPoly) -> Result<GradedPoly> {
    let [x1, x2, x01] = char_conversion_forward();
    let target = ordinary_table();
    formula.substitute_pairs(&[("xi1", x1), ("xi2", x2), ("xi01", x01)], &target)
}

/// Characters of a smooth complete intersection surface of degrees
/// (d1, d2) in P^4, computed from the restricted tangent series against
/// `f_*(a^k) = d1 d2 a^{k+2}`.
pub struct CiChars {
    pub d: GradedPoly,
    pub xi1: GradedPoly,
    pub xi2: GradedPoly,
    pub xi01: GradedPoly,
}

pub fn complete_intersection_chars() -> Result<CiChars> {
    let vars = VarTable::new(&[("d1", 1), ("d2", 1), ("a", 1)]);
    let ring = QuotientRing::new(vars.clone(), vec![(vec!["a"], 2)], None);
    let one = GradedPoly::one(&vars);
    let a = GradedPoly::var(&vars, "a");
    let d1a = GradedPoly::var(&vars, "d1").checked_mul(&a)?;
    let d2a = GradedPoly::var(&vars, "d2").checked_mul(&a)?;
    let normal = one.checked_add(&d1a)?.checked_mul(&one.checked_add(&d2a)?)?;
    let c_tm = ring.reduce(
        &one.checked_add(&a)?
            .pow(5)
            .checked_mul(&ring.unit_inverse(&ring.reduce(&normal))?)?,
    );
    let ci = ci_table();
    let kappa1 = project_to(&coeff_in_var_power(&c_tm, &vars, "a", 1, false)?, &ci)?;
    let kappa2 = project_to(&coeff_in_var_power(&c_tm, &vars, "a", 2, false)?, &ci)?;
    let d = crate::text::parse_poly(&ci, "d1*d2")?;
    Ok(CiChars {
        xi1: d.checked_mul(&kappa1)?,
        xi2: d.checked_mul(&kappa1.checked_mul(&kappa1)?)?,
        xi01: d.checked_mul(&kappa2)?,
        d,
    })
}

/// Specializes a (d, xi) formula to a complete intersection (d1, d2).
pub fn ci_form(formula: &GradedPoly) -> Result<GradedPoly> {
    let chars = complete_intersection_chars()?;
    let target = ci_table();
    formula.substitute_pairs(
        &[
            ("d", chars.d),
            ("xi1", chars.xi1),
            ("xi2", chars.xi2),
            ("xi01", chars.xi01),
        ],
        &target,
    )
}

/// Evaluates a formula at numeric character values.
pub fn evaluate_formula(formula: &GradedPoly, values: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    let empty = VarTable::new(&[("one", 1)]);
    let mut bindings = BTreeMap::new();
    for name in formula.vars().names() {
        if let Some(v) = values.get(name) {
            bindings.insert(name.clone(), GradedPoly::constant(&empty, v.clone()));
        }
    }
    let value = formula.substitute(&bindings, &empty).map_err(|e| match e {
        Error::UnboundVariable(v) => Error::MalformedChars(format!("missing value for {v}")),
        other => other,
    })?;
    if value.is_zero() {
        return Ok(Scalar::zero());
    }
    if value.weighted_degree() != 0 {
        return Err(Error::MalformedChars(
            "unassigned characters remain".into(),
        ));
    }
    Ok(value.coefficient_of(&[0; 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::builtin_registry;
    use crate::text::parse_poly;

    fn chars(s: &str) -> GradedPoly {
        parse_poly(&chars_table(), s).unwrap()
    }

    fn ord(s: &str) -> GradedPoly {
        parse_poly(&ordinary_table(), s).unwrap()
    }

    fn ci(s: &str) -> GradedPoly {
        parse_poly(&ci_table(), s).unwrap()
    }

    fn dpoly(s: &str) -> GradedPoly {
        parse_poly(&degree_table(), s).unwrap()
    }

    #[test]
    fn table_7_all_rows() {
        let reg = builtin_registry();
        let rows = [
            ("LipsBeaks", "8*d - 4*xi1"),
            ("Swallowtail", "20*d - 11*xi1"),
            ("Butterfly", "150*d - 180*xi1 + 60*xi2 - 25*xi01"),
            ("Gulls", "62*d - 72*xi1 + 19*xi2 + 3*xi01"),
            ("Sharksfin", "6*d - 4*xi1 + xi2 - xi01"),
        ];
        for (name, expected) in rows {
            let (poly, _) = locus_degree(&reg, Pipeline::P3Surface, name).unwrap();
            assert_eq!(poly, chars(expected), "{name}");
        }
    }

    #[test]
    fn goose_degree() {
        let reg = builtin_registry();
        let (poly, _) = locus_degree(&reg, Pipeline::P3Surface, "Goose").unwrap();
        assert_eq!(poly, chars("22*d - 24*xi1 + 7*xi2 - xi01"));
    }

    #[test]
    fn table_8_all_rows() {
        let reg = builtin_registry();
        let rows = [
            ("LipsBeaks", "4*d^2 - 8*d - 8*eps0"),
            ("Swallowtail", "11*d^2 - 24*d - 22*eps0"),
            (
                "Butterfly",
                "35*d^3 - 200*d^2 + 240*d - 10*C + 105*T + 400*eps0 - 105*d*eps0",
            ),
            (
                "Gulls",
                "22*d^3 - 92*d^2 + 96*d - 25*C + 66*T + 184*eps0 - 66*d*eps0",
            ),
            ("Sharksfin", "C"),
        ];
        for (name, expected) in rows {
            let (poly, _) = locus_degree(&reg, Pipeline::P3Surface, name).unwrap();
            let converted = ordinary_form(&poly).unwrap();
            assert_eq!(converted, ord(expected), "{name}");
        }
        // the goose count in ordinary characters
        let (poly, _) = locus_degree(&reg, Pipeline::P3Surface, "Goose").unwrap();
        assert_eq!(
            ordinary_form(&poly).unwrap(),
            ord("6*d^3 - 28*d^2 + 32*d - 5*C + 18*T + 56*eps0 - 18*d*eps0")
        );
    }

    #[test]
    fn stable_char_displays() {
        let reg = builtin_registry();
        let st = stable_multisingularity_chars(&reg).unwrap();
        assert_eq!(st.crosscaps, chars("6*d - 4*xi1 + xi2 - xi01"));
        assert_eq!(
            st.triple_points,
            chars("1/6*d^3 - 2*d^2 + 22/3*d - 4*xi1 + 1/2*d*xi1 + 2/3*xi2 - 1/3*xi01")
        );
        assert_eq!(st.double_curve, chars("1/2*d^2 - 2*d + 1/2*xi1"));
        // clearing the declared multiplicities yields integer coefficients
        assert!(st.triple_points.scale(&scalar::int(6)).is_integral());
        assert!(st.double_curve.scale(&scalar::int(2)).is_integral());
    }

    #[test]
    fn cross_route_crosscap_identity() {
        // Table 7 crosscap row and the multi-singularity count are two
        // independent computations of the same class
        let reg = builtin_registry();
        let (via_flag, _) = locus_degree(&reg, Pipeline::P3Surface, "Sharksfin").unwrap();
        let via_multi = stable_multisingularity_chars(&reg).unwrap().crosscaps;
        assert_eq!(via_flag, via_multi);
    }

    #[test]
    fn char_conversion_round_trips() {
        let reg = builtin_registry();
        let forward = char_conversion_forward();
        let inverse = char_conversion_inverse(&reg).unwrap();
        for (f, i) in forward.iter().zip(&inverse) {
            assert_eq!(f, i);
        }
        // smooth quartic: eps0 = C = T = 0, d = 4 gives xi1 = 0
        let values: BTreeMap<String, Scalar> = [
            ("d".to_string(), scalar::int(4)),
            ("eps0".to_string(), scalar::int(0)),
            ("C".to_string(), scalar::int(0)),
            ("T".to_string(), scalar::int(0)),
        ]
        .into();
        assert_eq!(
            evaluate_formula(&forward[0], &values).unwrap(),
            scalar::int(0)
        );
    }

    #[test]
    fn table_9_all_rows() {
        let reg = builtin_registry();
        let rows = [
            ("B2", "25*d - 16*xi1"),
            ("H2", "10*d - 6*xi1"),
            ("H3", "210*d - 255*xi1 + 95*xi2 - 55*xi01"),
            ("P3", "80*d - 95*xi1 + 33*xi2 - 15*xi01"),
        ];
        for (name, expected) in rows {
            let (poly, _) = locus_degree(&reg, Pipeline::P4Surface, name).unwrap();
            assert_eq!(poly, chars(expected), "{name}");
        }
        // two asymptotic lines through a general point
        let (b1, _) = locus_degree(&reg, Pipeline::P4Surface, "B1").unwrap();
        assert_eq!(b1, chars("2*d"));
    }

    #[test]
    fn table_10_all_rows() {
        let reg = builtin_registry();
        let rows = [
            ("B2", "16*d1^2*d2 + 16*d1*d2^2 - 55*d1*d2"),
            ("H2", "6*d1^2*d2 + 6*d1*d2^2 - 20*d1*d2"),
            (
                "H3",
                "40*d1^3*d2 + 40*d1*d2^3 + 135*d1^2*d2^2 - 420*d1^2*d2 - 420*d1*d2^2 + 760*d1*d2",
            ),
            (
                "P3",
                "18*d1^3*d2 + 18*d1*d2^3 + 51*d1^2*d2^2 - 160*d1^2*d2 - 160*d1*d2^2 + 280*d1*d2",
            ),
        ];
        for (name, expected) in rows {
            let (poly, _) = locus_degree(&reg, Pipeline::P4Surface, name).unwrap();
            let specialized = ci_form(&poly).unwrap();
            assert_eq!(specialized, ci(expected), "{name}");
        }
    }

    #[test]
    fn ci_characters_against_frozen_oracle_values() {
        // frozen from the independent quadrature: integrate the explicit
        // restricted tangent series against f_*(a^k) = d1 d2 a^{k+2}
        let c = complete_intersection_chars().unwrap();
        assert_eq!(c.d, ci("d1*d2"));
        assert_eq!(c.xi1, ci("5*d1*d2 - d1^2*d2 - d1*d2^2"));
        assert_eq!(
            c.xi2,
            ci("25*d1*d2 - 10*d1^2*d2 - 10*d1*d2^2 + d1^3*d2 + 2*d1^2*d2^2 + d1*d2^3")
        );
        assert_eq!(
            c.xi01,
            ci("10*d1*d2 - 5*d1^2*d2 - 5*d1*d2^2 + d1^3*d2 + d1^2*d2^2 + d1*d2^3")
        );
    }

    #[test]
    fn table_11_and_remarks() {
        let reg = builtin_registry();
        let rows = [
            ("A4", "50*d^2 - 120*d"),
            ("C", "5*d^2 - 10*d"),
            ("D", "40*d^2 - 90*d"),
        ];
        for (name, expected) in rows {
            let (poly, _) = locus_degree(&reg, Pipeline::P4Primal, name).unwrap();
            assert_eq!(poly, dpoly(expected), "{name}");
        }
        let (a3, _) = locus_degree(&reg, Pipeline::P4Primal, "A3").unwrap();
        assert_eq!(a3, dpoly("6*d"));
        let (i22, _) = locus_degree(&reg, Pipeline::P4Primal, "I22").unwrap();
        assert!(i22.is_zero());
    }

    #[test]
    fn empty_locus_is_detected() {
        let reg = builtin_registry();
        // a degree-5 class exceeds the dimension-4 flag over a surface in P^3
        let tp = reg.lookup(2, 3, "S3").unwrap().known_tp_expanded().unwrap();
        assert!(matches!(
            locus_degree_of_tp(&tp, Pipeline::P3Surface, "S3"),
            Err(Error::EmptyLocus { .. })
        ));
    }

    #[test]
    fn locus_class_examples() {
        // cp1 on the P^3 flag restricts to 3h + t
        let t = VarTable::chern(2, 2);
        let tp = parse_poly(&t, "cp1").unwrap();
        let cls = locus_class_surface(&tp, 3).unwrap();
        let ring = QuotientRing::surface_flag(3);
        assert_eq!(cls, parse_poly(ring.vars(), "3*h + t").unwrap());
        // c1^3 is killed by the dimension truncation
        let tp = parse_poly(&t, "c1^3").unwrap();
        assert!(locus_class_surface(&tp, 3).unwrap().is_zero());
    }

    #[test]
    fn pushdown_values() {
        let ring3 = QuotientRing::surface_flag(3);
        let p = |s: &str| parse_poly(ring3.vars(), s).unwrap();
        assert_eq!(flag_pushdown(&p("h*t^2"), 3), p("h"));
        assert_eq!(flag_pushdown(&p("t^3"), 3), p("-h"));
        let ring4 = QuotientRing::surface_flag(4);
        let q = |s: &str| parse_poly(ring4.vars(), s).unwrap();
        assert_eq!(flag_pushdown(&q("t^3"), 4), q("1"));
        assert_eq!(flag_pushdown(&q("t^4"), 4), q("-h"));
    }

    #[test]
    fn xi_map_values() {
        let ring = QuotientRing::surface_flag(3);
        let p = |s: &str| parse_poly(ring.vars(), s).unwrap();
        let (chars_poly, a_pow) = xi_pushforward(&p("1"), 3).unwrap();
        assert_eq!(chars_poly, chars("d"));
        assert_eq!(a_pow, 1);
        let (chars_poly, a_pow) = xi_pushforward(&p("c1*h"), 3).unwrap();
        assert_eq!(chars_poly, chars("xi1"));
        assert_eq!(a_pow, 3);
        // weighted degree above the surface dimension dies in the ring
        assert!(QuotientRing::surface_flag(3).reduce(&p("c1*c2")).is_zero());
    }

    #[test]
    fn all_final_formulas_are_integral() {
        let reg = builtin_registry();
        for (pipeline, names) in [
            (
                Pipeline::P3Surface,
                vec![
                    "LipsBeaks",
                    "Swallowtail",
                    "Butterfly",
                    "Gulls",
                    "Sharksfin",
                    "Goose",
                ],
            ),
            (Pipeline::P4Surface, vec!["B1", "B2", "H2", "H3", "P3"]),
            (Pipeline::P4Primal, vec!["A3", "A4", "C", "D", "I22"]),
        ] {
            for name in names {
                let (poly, _) = locus_degree(&reg, pipeline, name).unwrap();
                assert!(poly.is_integral(), "{name} on {}", pipeline.name());
                let ordinary = match pipeline {
                    Pipeline::P3Surface => ordinary_form(&poly).unwrap(),
                    _ => poly.clone(),
                };
                assert!(ordinary.is_integral(), "{name} ordinary");
            }
        }
    }

    #[test]
    fn numeric_evaluation() {
        // substitute d1 = d2 = 2 into the H2 complete-intersection row
        let poly = ci("6*d1^2*d2 + 6*d1*d2^2 - 20*d1*d2");
        let values: BTreeMap<String, Scalar> = [
            ("d1".to_string(), scalar::int(2)),
            ("d2".to_string(), scalar::int(2)),
        ]
        .into();
        assert_eq!(evaluate_formula(&poly, &values).unwrap(), scalar::int(16));
        // d = 3 in the primal D row
        let poly = dpoly("40*d^2 - 90*d");
        let values: BTreeMap<String, Scalar> = [("d".to_string(), scalar::int(3))].into();
        assert_eq!(evaluate_formula(&poly, &values).unwrap(), scalar::int(90));
    }
}
