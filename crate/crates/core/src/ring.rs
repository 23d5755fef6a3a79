//! Quotient cohomology rings, Chern-class calculus, and the Gysin
//! pushforward along projectivized bundles.
//!
//! The flag manifold of pairs (point, line through it) in P^n is the
//! projectivized quotient bundle P(Q); its cohomology is
//! `Z[a,t] / <a^{n+1}, t^n + a t^{n-1} + ... + a^n>` with `a` the
//! hyperplane class and `t` the dual tautological class. One reducer
//! serves every pipeline: a [`QuotientRing`] is a variable table plus a
//! per-group truncation bound and an optional monic fiber relation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::poly::{GradedPoly, VarTable};
use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Monic rewrite rule `t^rho = -(base t^{rho-1} + base^2 t^{rho-2} + ... + base^rho)`.
#[derive(Debug, Clone)]
pub struct FiberRelation {
    pub t: usize,
    pub base: usize,
    pub rho: u32,
}

/// A polynomial ring together with reduction rules: dimension truncations
/// (sum of weighted degrees over a variable group is bounded) and at most
/// one fiber relation. Every element has a unique normal form with
/// t-degree below `rho`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    vars: Arc<VarTable>,
    truncations: Vec<(Vec<usize>, u64)>,
    fiber: Option<FiberRelation>,
}

impl QuotientRing {
    pub fn new(
        vars: Arc<VarTable>,
        truncations: Vec<(Vec<&str>, u64)>,
        fiber: Option<(&str, &str, u32)>,
    ) -> QuotientRing {
        let truncations = truncations
            .into_iter()
            .map(|(names, bound)| {
                let idx = names
                    .iter()
                    .map(|n| vars.index(n).expect("truncation variable"))
                    .collect();
                (idx, bound)
            })
            .collect();
        let fiber = fiber.map(|(t, base, rho)| FiberRelation {
            t: vars.index(t).expect("fiber variable"),
            base: vars.index(base).expect("base variable"),
            rho,
        });
        QuotientRing {
            vars,
            truncations,
            fiber,
        }
    }

    /// The flag ring of P^n: `Z[a,t]/<a^{n+1}, t^n + a t^{n-1} + ... + a^n>`.
    pub fn flag_pn(n: u32) -> QuotientRing {
        let vars = VarTable::new(&[("a", 1), ("t", 1)]);
        QuotientRing::new(vars, vec![(vec!["a"], n as u64)], Some(("t", "a", n)))
    }

    /// Flag ring pulled back over a surface M mapping to P^n: formal
    /// classes c1, c2 of TM and the pullback hyperplane class h, truncated
    /// above the dimension of M, with the t-relation based at h.
    pub fn surface_flag(n: u32) -> QuotientRing {
        let vars = VarTable::new(&[("c1", 1), ("c2", 2), ("h", 1), ("t", 1)]);
        QuotientRing::new(
            vars,
            vec![(vec!["c1", "c2", "h"], 2)],
            Some(("t", "h", n)),
        )
    }

    /// Flag ring over a smooth 3-fold X in P^4, with the degree carried as
    /// the formal symbol `d` (unconstrained by the truncation).
    pub fn primal_flag() -> QuotientRing {
        let vars = VarTable::new(&[("d", 1), ("a", 1), ("t", 1)]);
        QuotientRing::new(vars, vec![(vec!["a"], 3)], Some(("t", "a", 4)))
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn fiber(&self) -> Option<&FiberRelation> {
        self.fiber.as_ref()
    }

    fn truncate(&self, x: &GradedPoly) -> GradedPoly {
        let mut keep: Vec<(Vec<u32>, Scalar)> = Vec::new();
        'term: for (exps, c) in x.terms() {
            for (group, bound) in &self.truncations {
                let deg: u64 = group
                    .iter()
                    .map(|&i| exps[i] as u64 * self.vars.weights()[i] as u64)
                    .sum();
                if deg > *bound {
                    continue 'term;
                }
            }
            keep.push((exps.clone(), c.clone()));
        }
        GradedPoly::from_terms(&self.vars, keep)
    }

    /// Normal form: rewrite powers of the fiber variable via the monic
    /// relation and drop terms beyond the truncation bounds. Idempotent.
    pub fn reduce(&self, x: &GradedPoly) -> GradedPoly {
        let mut cur = self.truncate(x);
        let Some(f) = self.fiber.clone() else {
            return cur;
        };
        loop {
            let mut changed = false;
            let mut next: Vec<(Vec<u32>, Scalar)> = Vec::new();
            for (exps, c) in cur.terms() {
                if exps[f.t] >= f.rho {
                    changed = true;
                    // t^e = t^{e-rho} * t^rho, then t^rho -> -(sum base^i t^{rho-i})
                    for i in 1..=f.rho {
                        let mut e2 = exps.clone();
                        e2[f.t] = exps[f.t] - i;
                        e2[f.base] += i;
                        next.push((e2, -c.clone()));
                    }
                } else {
                    next.push((exps.clone(), c.clone()));
                }
            }
            cur = self.truncate(&GradedPoly::from_terms(&self.vars, next));
            if !changed {
                return cur;
            }
        }
    }

    /// Inverse of a unit `1 + u` where `u` is nilpotent modulo the ring
    /// relations.
    pub fn unit_inverse(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let one = GradedPoly::one(&self.vars);
        let c0 = p.coefficient_of(&vec![0; self.vars.len()]);
        if c0 != scalar::int(1) {
            return Err(Error::NonUnitSeries(scalar::render(&c0)));
        }
        let u = self.reduce(&p.checked_sub(&one)?);
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..64 {
            power = self.reduce(&power.checked_mul(&u)?.neg());
            if power.is_zero() {
                return Ok(out);
            }
            out = out.checked_add(&power)?;
        }
        Err(Error::Internal(
            "unit inverse did not terminate; element not nilpotent".into(),
        ))
    }

    /// Gysin pushforward along the projectivized bundle: reduce to
    /// t-degree < rho, keep the t^{rho-1} layer, drop the rest.
    pub fn gysin_pushforward(&self, x: &GradedPoly) -> GradedPoly {
        let f = self.fiber.as_ref().expect("ring has a fiber relation");
        let reduced = self.reduce(x);
        let mut keep: Vec<(Vec<u32>, Scalar)> = Vec::new();
        for (exps, c) in reduced.terms() {
            if exps[f.t] == f.rho - 1 {
                let mut e2 = exps.clone();
                e2[f.t] = 0;
                keep.push((e2, c.clone()));
            }
        }
        GradedPoly::from_terms(&self.vars, keep)
    }
}

/// Chern classes c_1..c_rank of a bundle, as elements of a common table.
#[derive(Debug, Clone)]
pub struct ChernVector {
    pub rank: usize,
    pub classes: Vec<GradedPoly>,
}

impl ChernVector {
    pub fn new(rank: usize, classes: Vec<GradedPoly>) -> ChernVector {
        assert_eq!(classes.len(), rank);
        ChernVector { rank, classes }
    }

    /// c_k, zero beyond the rank.
    pub fn class(&self, k: usize, vars: &Arc<VarTable>) -> GradedPoly {
        if k == 0 {
            GradedPoly::one(vars)
        } else if k <= self.rank {
            self.classes[k - 1].clone()
        } else {
            GradedPoly::zero(vars)
        }
    }

    /// Total Chern class 1 + c_1 + ... + c_rank.
    pub fn total(&self, vars: &Arc<VarTable>) -> GradedPoly {
        let mut out = GradedPoly::one(vars);
        for c in &self.classes {
            out = out.checked_add(c).expect("same table");
        }
        out
    }
}

/// Degree-k parts (k = 1..=max_degree) of `c(F) * c(E)^{-1}` as abstract
/// power series with weighted-degree truncation.
pub fn series_quotient(
    c_source: &GradedPoly,
    c_target: &GradedPoly,
    max_degree: u64,
) -> Result<Vec<GradedPoly>> {
    let inv = c_source.truncated_inverse(max_degree)?;
    let series = c_target.checked_mul(&inv)?.truncate_above(max_degree);
    Ok((1..=max_degree).map(|k| series.homogeneous_part(k)).collect())
}

/// Quotient Chern classes of a pair of Chern vectors inside a ring.
pub fn quotient_chern(
    ring: &QuotientRing,
    c_source: &ChernVector,
    c_target: &ChernVector,
    max_degree: u64,
) -> Result<Vec<GradedPoly>> {
    let vars = ring.vars();
    let inv = ring.unit_inverse(&c_source.total(vars))?;
    let series = ring.reduce(&c_target.total(vars).checked_mul(&inv)?);
    Ok((1..=max_degree)
        .map(|k| series.homogeneous_part(k))
        .collect())
}

/// The (c, c') expansions of the quotient Chern classes cb_1..cb_max for a
/// source of rank m and target of rank n.
pub fn cbar_expansions(m: usize, n: usize, max_degree: u64) -> Vec<GradedPoly> {
    let vars = VarTable::chern(m, n);
    let mut c_source = GradedPoly::one(&vars);
    for i in 1..=m {
        c_source = c_source
            .checked_add(&GradedPoly::var(&vars, &format!("c{i}")))
            .unwrap();
    }
    let mut c_target = GradedPoly::one(&vars);
    for j in 1..=n {
        c_target = c_target
            .checked_add(&GradedPoly::var(&vars, &format!("cp{j}")))
            .unwrap();
    }
    series_quotient(&c_source, &c_target, max_degree).expect("unit series")
}

/// Rewrites a polynomial in the quotient classes cb_i as a polynomial in
/// (c, c') for the given source/target ranks.
pub fn expand_quotient_form(tp_in_cbar: &GradedPoly, m: usize, n: usize) -> GradedPoly {
    let max = tp_in_cbar.weighted_degree();
    let expansions = cbar_expansions(m, n, max);
    let target = VarTable::chern(m, n);
    let mut bindings: BTreeMap<String, GradedPoly> = BTreeMap::new();
    for (k, value) in expansions.iter().enumerate() {
        bindings.insert(format!("cb{}", k + 1), value.clone());
    }
    tp_in_cbar
        .substitute(&bindings, &target)
        .expect("all cb variables bound")
}

/// True when a homogeneous polynomial in (c, c') lies in the subring
/// generated by the quotient Chern classes. Decided exactly: the cb-word
/// expansions of the right degree span a subspace, and membership is a
/// consistent linear system.
pub fn in_cbar_span(tp: &GradedPoly, m: usize, n: usize) -> bool {
    let Some(degree) = tp.homogeneous_degree() else {
        return false;
    };
    if degree == 0 {
        return true;
    }
    let cb_table = crate::poly::VarTable::cbar(degree as usize);
    let words = crate::poly::monomial_basis(&cb_table, degree);
    let expansions = cbar_expansions(m, n, degree);
    let target = VarTable::chern(m, n);
    let mut bindings: BTreeMap<String, GradedPoly> = BTreeMap::new();
    for (k, value) in expansions.iter().enumerate() {
        bindings.insert(format!("cb{}", k + 1), value.clone());
    }
    // coefficient matrix: one column per cb-word, rows indexed by the
    // (c, c') monomials of the degree
    let cc_basis = crate::poly::monomial_basis(&target, degree);
    let mut columns = Vec::new();
    for word in &words {
        let word_poly = GradedPoly::from_terms(&cb_table, [(word.clone(), crate::scalar::int(1))]);
        let expanded = word_poly.substitute(&bindings, &target).expect("bound");
        columns.push(expanded);
    }
    let matrix: Vec<Vec<Scalar>> = cc_basis
        .iter()
        .map(|mono| columns.iter().map(|c| c.coefficient_of(mono)).collect())
        .collect();
    let rhs: Vec<Scalar> = cc_basis.iter().map(|mono| tp.coefficient_of(mono)).collect();
    crate::linalg::eliminate(&matrix, &rhs).conflict.is_none()
}

/// Chern vector of `L ⊗ W` for a line class `ell` of weighted degree 1:
/// `c_k = sum_i binom(rank - i, k - i) ell^{k-i} c_i(W)`, reduced.
pub fn twist_chern(ring: &QuotientRing, ell: &GradedPoly, w: &ChernVector) -> ChernVector {
    let vars = ring.vars();
    let r = w.rank as u32;
    let mut classes = Vec::with_capacity(w.rank);
    for k in 1..=w.rank {
        let mut acc = GradedPoly::zero(vars);
        for i in 0..=k {
            let b = scalar::binomial(r - i as u32, (k - i) as u32);
            if b.is_zero() {
                continue;
            }
            let term = ell
                .pow((k - i) as u32)
                .checked_mul(&w.class(i, vars))
                .unwrap()
                .scale(&b);
            acc = acc.checked_add(&term).unwrap();
        }
        classes.push(ring.reduce(&acc));
    }
    ChernVector::new(w.rank, classes)
}

/// Chern vector of the rank n-1 quotient bundle V on the flag of P^n,
/// before twisting: c(V) = 1 / ((1 - base)(1 - t)).
pub fn flag_quotient_chern(ring: &QuotientRing, n: u32, base: &str) -> Result<ChernVector> {
    let vars = ring.vars();
    let one = GradedPoly::one(vars);
    let b = GradedPoly::var(vars, base);
    let t = GradedPoly::var(vars, "t");
    let c_s = (&(&one - &b)) * &(&one - &t);
    let inv = ring.unit_inverse(&c_s)?;
    let rank = (n - 1) as usize;
    let classes: Vec<GradedPoly> = (1..=rank as u64)
        .map(|k| inv.homogeneous_part(k))
        .collect();
    Ok(ChernVector::new(rank, classes))
}

/// Chern vector of `γ* ⊗ V` on the flag of P^n (n = 3 or 4), the target
/// bundle of the projection family. `base` is the hyperplane class name in
/// the ring (`a` on the flag itself, `h` after pulling back to a surface).
pub fn flag_target_chern(ring: &QuotientRing, n: u32, base: &str) -> Result<ChernVector> {
    if n != 3 && n != 4 {
        return Err(Error::UnknownPipeline(format!(
            "flag target Chern data only built for P^3 and P^4, got n={n}"
        )));
    }
    let v = flag_quotient_chern(ring, n, base)?;
    let ell = GradedPoly::var(ring.vars(), base);
    Ok(twist_chern(ring, &ell, &v))
}

/// Degree of a class on P^n: the coefficient of a^n. The input must be a
/// polynomial in the single variable `a_name`.
pub fn integrate_pn(x: &GradedPoly, a_name: &str, n: u32) -> Result<Scalar> {
    let idx = x
        .vars()
        .index(a_name)
        .ok_or_else(|| Error::Internal(format!("variable {a_name} missing")))?;
    for (exps, _) in x.terms() {
        for (i, &e) in exps.iter().enumerate() {
            if i != idx && e != 0 {
                return Err(Error::Internal(
                    "integrate_pn expects a class in the hyperplane variable only".into(),
                ));
            }
        }
    }
    Ok(x.coefficient_of_named(&[(a_name, n)]))
}
