//! Weighted-graded sparse multivariate polynomials over exact rationals.
//!
//! A [`VarTable`] fixes an ordered list of named variables with positive
//! integer weights (`c_i` has weight `i`, `c'_j` weight `j`, hyperplane and
//! tautological classes weight 1). A [`GradedPoly`] is a finite map from
//! exponent vectors to nonzero coefficients; the weighted degree of a term
//! is the exponent vector paired against the weights.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Ordered list of (name, weight) pairs. Names are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarTable {
    pub fn new(vars: &[(&str, u32)]) -> Arc<VarTable> {
        let mut names = Vec::with_capacity(vars.len());
        let mut weights = Vec::with_capacity(vars.len());
        for (name, w) in vars {
            assert!(*w > 0, "variable weight must be positive");
            assert!(
                !names.contains(&name.to_string()),
                "duplicate variable name {name}"
            );
            names.push(name.to_string());
            weights.push(*w);
        }
        Arc::new(VarTable { names, weights })
    }

    /// Chern variables `c1..cm, cp1..cpn` with weight = index.
    pub fn chern(m: usize, n: usize) -> Arc<VarTable> {
        let mut vars: Vec<(String, u32)> = Vec::new();
        for i in 1..=m {
            vars.push((format!("c{i}"), i as u32));
        }
        for j in 1..=n {
            vars.push((format!("cp{j}"), j as u32));
        }
        let refs: Vec<(&str, u32)> = vars.iter().map(|(s, w)| (s.as_str(), *w)).collect();
        VarTable::new(&refs)
    }

    /// Quotient Chern variables `cb1..cbk` with weight = index.
    pub fn cbar(k: usize) -> Arc<VarTable> {
        let vars: Vec<(String, u32)> = (1..=k).map(|i| (format!("cb{i}"), i as u32)).collect();
        let refs: Vec<(&str, u32)> = vars.iter().map(|(s, w)| (s.as_str(), *w)).collect();
        VarTable::new(&refs)
    }

    /// Torus variables: `a` for rank 1, `a1..ar` otherwise, all weight 1.
    pub fn torus(rank: usize) -> Arc<VarTable> {
        if rank == 1 {
            VarTable::new(&[("a", 1)])
        } else {
            let vars: Vec<(String, u32)> = (1..=rank).map(|i| (format!("a{i}"), 1)).collect();
            let refs: Vec<(&str, u32)> = vars.iter().map(|(s, w)| (s.as_str(), *w)).collect();
            VarTable::new(&refs)
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight_of(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }
}

/// Canonical monomial order used for ansatz bases and text rendering:
/// lower weighted degree first; within a degree, monomials touching only an
/// initial segment of the variable list come first (graded by the highest
/// variable index present), and ties break lexicographically with earlier
/// variables and higher exponents first. This puts `c1^3, c1*c2` ahead of
/// the `cp1`-monomials `c1^2*cp1, c1*cp1^2, c2*cp1, cp1^3`, matching the
/// customary way such ansatz bases are written out.
pub fn monomial_cmp(table: &VarTable, a: &[u32], b: &[u32]) -> Ordering {
    let (da, db) = (table.weight_of(a), table.weight_of(b));
    if da != db {
        return da.cmp(&db);
    }
    let ha = a.iter().rposition(|&e| e != 0).map(|i| i as i64).unwrap_or(-1);
    let hb = b.iter().rposition(|&e| e != 0).map(|i| i as i64).unwrap_or(-1);
    if ha != hb {
        return ha.cmp(&hb);
    }
    // lex with higher exponents on earlier variables first
    for (ea, eb) in a.iter().zip(b.iter()) {
        if ea != eb {
            return eb.cmp(ea);
        }
    }
    Ordering::Equal
}

/// Sparse polynomial over a shared variable table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl GradedPoly {
    pub fn zero(vars: &Arc<VarTable>) -> GradedPoly {
        GradedPoly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> GradedPoly {
        Self::constant(vars, scalar::int(1))
    }

    pub fn constant(vars: &Arc<VarTable>, c: Scalar) -> GradedPoly {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The variable `name` as a polynomial. Panics if absent.
    pub fn var(vars: &Arc<VarTable>, name: &str) -> GradedPoly {
        let idx = vars
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exps, scalar::int(1));
        p
    }

    pub fn from_terms(
        vars: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> GradedPoly {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            p.add_term(&exps, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    /// Terms sorted by the canonical monomial order.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Scalar)> {
        let mut v: Vec<(Vec<u32>, Scalar)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|(ea, _), (eb, _)| monomial_cmp(&self.vars, ea, eb));
        v
    }

    fn add_term(&mut self, exps: &[u32], c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.vars.len());
        match self.terms.get_mut(exps) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c);
            }
        }
    }

    fn check_same_vars(&self, other: &GradedPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::MismatchedVars(format!(
                "{:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_same_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(&scalar::int(-1))
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (exps, coeff) in &self.terms {
            out.terms.insert(exps.clone(), coeff * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        let mut out = Self::one(&self.vars);
        for _ in 0..n {
            out = out.checked_mul(self).expect("same table");
        }
        out
    }

    /// Exact coefficient of an exponent vector, zero if absent.
    pub fn coefficient_of(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of a monomial given as `[(name, exp)]`; unmentioned
    /// variables have exponent zero.
    pub fn coefficient_of_named(&self, mono: &[(&str, u32)]) -> Scalar {
        let mut exps = vec![0u32; self.vars.len()];
        for (name, e) in mono {
            let idx = self
                .vars
                .index(name)
                .unwrap_or_else(|| panic!("unknown variable {name}"));
            exps[idx] = *e;
        }
        self.coefficient_of(&exps)
    }

    /// Maximal weighted degree among terms; 0 for the zero polynomial.
    pub fn weighted_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|e| self.vars.weight_of(e))
            .max()
            .unwrap_or(0)
    }

    /// `Some(d)` when all terms share weighted degree `d`. The zero
    /// polynomial is homogeneous of every degree; report `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(|e| self.vars.weight_of(e));
        match it.next() {
            None => Some(0),
            Some(d) => {
                if it.all(|x| x == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    /// Keep only terms of weighted degree `<= max_degree`.
    pub fn truncate_above(&self, max_degree: u64) -> GradedPoly {
        let mut out = Self::zero(&self.vars);
        for (exps, c) in &self.terms {
            if self.vars.weight_of(exps) <= max_degree {
                out.terms.insert(exps.clone(), c.clone());
            }
        }
        out
    }

    /// The homogeneous part of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u64) -> GradedPoly {
        let mut out = Self::zero(&self.vars);
        for (exps, c) in &self.terms {
            if self.vars.weight_of(exps) == d {
                out.terms.insert(exps.clone(), c.clone());
            }
        }
        out
    }

    /// Geometric-series inverse of a unit power series, exact modulo terms
    /// of weighted degree `> max_degree`. The constant term must be 1.
    pub fn truncated_inverse(&self, max_degree: u64) -> Result<GradedPoly> {
        let c0 = self.coefficient_of(&vec![0; self.vars.len()]);
        if !c0.is_one() {
            return Err(Error::NonUnitSeries(scalar::render(&c0)));
        }
        // p = 1 + u with u of weight >= 1, so sum_{k<=max} (-u)^k terminates.
        let neg_u = self
            .checked_sub(&Self::one(&self.vars))?
            .truncate_above(max_degree)
            .neg();
        let mut out = Self::one(&self.vars);
        let mut power = Self::one(&self.vars);
        for _ in 1..=max_degree {
            power = power.checked_mul(&neg_u)?.truncate_above(max_degree);
            if power.is_zero() {
                break;
            }
            out = out.checked_add(&power)?;
        }
        Ok(out)
    }

    /// Polynomial composition: replace every variable by its binding. All
    /// bindings live over a common target table. Variables occurring in
    /// `self` must be bound, except that a variable whose name also exists
    /// in the target table is identity-bound by default.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, GradedPoly>,
        target: &Arc<VarTable>,
    ) -> Result<GradedPoly> {
        for b in bindings.values() {
            if &b.vars != target {
                return Err(Error::MismatchedVars(
                    "binding value over a different table".into(),
                ));
            }
        }
        // resolve the binding of each source variable that actually occurs
        let mut resolved: Vec<Option<GradedPoly>> = vec![None; self.vars.len()];
        for exps in self.terms.keys() {
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 && resolved[i].is_none() {
                    let name = &self.vars.names()[i];
                    let value = match bindings.get(name) {
                        Some(v) => v.clone(),
                        None => {
                            if target.index(name).is_some() {
                                GradedPoly::var(target, name)
                            } else {
                                return Err(Error::UnboundVariable(name.clone()));
                            }
                        }
                    };
                    resolved[i] = Some(value);
                }
            }
        }
        let mut out = Self::zero(target);
        for (exps, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    let base = resolved[i].as_ref().expect("resolved above");
                    term = term.checked_mul(&base.pow(e))?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Substitute with `[(name, value)]` sugar.
    pub fn substitute_pairs(
        &self,
        pairs: &[(&str, GradedPoly)],
        target: &Arc<VarTable>,
    ) -> Result<GradedPoly> {
        let map: BTreeMap<String, GradedPoly> = pairs
            .iter()
            .map(|(n, v)| (n.to_string(), v.clone()))
            .collect();
        self.substitute(&map, target)
    }

    /// Reinterpret over a larger table containing all variables of the
    /// current one (by name, same weights).
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<GradedPoly> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (name, w) in self.vars.names().iter().zip(self.vars.weights()) {
            let idx = target
                .index(name)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
            if target.weights()[idx] != *w {
                return Err(Error::MismatchedVars(format!(
                    "weight of {name} differs in target table"
                )));
            }
            map.push(idx);
        }
        let mut out = Self::zero(target);
        for (exps, c) in &self.terms {
            let mut new_exps = vec![0u32; target.len()];
            for (i, &e) in exps.iter().enumerate() {
                new_exps[map[i]] = e;
            }
            out.add_term(&new_exps, c.clone());
        }
        Ok(out)
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(scalar::is_integer)
    }
}

impl std::ops::Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("mismatched variable tables")
    }
}

impl std::ops::Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_sub(rhs).expect("mismatched variable tables")
    }
}

impl std::ops::Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("mismatched variable tables")
    }
}

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly::neg(self)
    }
}

/// All exponent vectors of exact weighted degree `degree`, in the canonical
/// monomial order.
pub fn monomial_basis(vars: &Arc<VarTable>, degree: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; vars.len()];
    enumerate(vars, 0, degree, &mut current, &mut out);
    out.sort_by(|a, b| monomial_cmp(vars, a, b));
    out
}

fn enumerate(
    vars: &Arc<VarTable>,
    idx: usize,
    remaining: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if idx == vars.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let w = vars.weights()[idx] as u64;
    let max_e = remaining / w;
    for e in 0..=max_e {
        current[idx] = e as u32;
        enumerate(vars, idx + 1, remaining - e * w, current, out);
    }
    current[idx] = 0;
}
