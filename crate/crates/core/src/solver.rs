//! The restriction/interpolation method: determine the coefficients of a
//! Thom polynomial by evaluating a degree-codim ansatz on torus-equivariant
//! model families.
//!
//! For the target type the ansatz must equal the Euler class of the normal
//! slice to its locus in the universal model (the principal equation, one
//! row per torus monomial of top degree). For every other type of
//! codimension at most the target's, the target singularity does not occur
//! in that type's model, so the substituted ansatz must vanish (the
//! homogeneous equations). The combined system is over-determined; it is
//! solved by exact Gaussian elimination and the solution is verified by
//! back substitution.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg;
use crate::poly::{monomial_basis, GradedPoly, VarTable};
use crate::registry::{euler_class, torus_bindings, Registry, SingularityType};
use crate::scalar::{self, Scalar};
use crate::text::{render_monomial, render_poly};
use crate::{Error, Result};

/// Degree-codim monomial basis in (c, c') with attached unknowns x_1..x_N.
#[derive(Debug, Clone)]
pub struct Ansatz {
    pub target: SingularityType,
    pub vars: std::sync::Arc<VarTable>,
    pub basis: Vec<Vec<u32>>,
}

pub fn ansatz(target: &SingularityType) -> Ansatz {
    let vars = VarTable::chern(target.source_dim, target.target_dim);
    let basis = monomial_basis(&vars, target.codim as u64);
    Ansatz {
        target: target.clone(),
        vars,
        basis,
    }
}

/// The torus substitution of a type: c_i and c'_j as polynomials in the
/// torus variables (re-exported from the registry, where the weight data
/// lives).
pub fn torus_substitution(t: &SingularityType) -> Result<Vec<(String, GradedPoly)>> {
    torus_bindings(t)
}

/// Row provenance: which type and torus monomial produced an equation.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Provenance {
    pub kind: EquationKind,
    pub source_type: String,
    pub torus_monomial: String,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum EquationKind {
    Principal,
    Homogeneous,
    Incidence,
}

/// One linear equation over the ansatz unknowns.
#[derive(Debug, Clone)]
pub struct Equation {
    pub coeffs: Vec<Scalar>,
    pub rhs: Scalar,
    pub provenance: Provenance,
}

impl Equation {
    pub fn render(&self) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c == &scalar::int(0) {
                continue;
            }
            let mag = scalar::abs(c);
            let var = format!("x{}", j + 1);
            let body = if mag == scalar::int(1) {
                var
            } else {
                format!("{}*{}", scalar::render(&mag), var)
            };
            if terms.is_empty() {
                if c < &scalar::int(0) {
                    terms.push(format!("-{body}"));
                } else {
                    terms.push(body);
                }
            } else if c < &scalar::int(0) {
                terms.push(format!("- {body}"));
            } else {
                terms.push(format!("+ {body}"));
            }
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        format!("{} = {}", terms.join(" "), scalar::render(&self.rhs))
    }
}

/// Exact linear system with provenance tags.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        self.equations.iter().map(|e| e.coeffs.clone()).collect()
    }

    pub fn rhs(&self) -> Vec<Scalar> {
        self.equations.iter().map(|e| e.rhs.clone()).collect()
    }
}

/// Substituted values of each ansatz monomial under a type's torus data.
fn ansatz_values_under(a: &Ansatz, t: &SingularityType) -> Result<Vec<GradedPoly>> {
    let torus = VarTable::torus(t.torus_rank);
    let bindings: BTreeMap<String, GradedPoly> = torus_bindings(t)?.into_iter().collect();
    let mut var_values: Vec<GradedPoly> = Vec::new();
    for name in a.vars.names() {
        let v = bindings
            .get(name)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(&torus));
        var_values.push(v);
    }
    let mut out = Vec::with_capacity(a.basis.len());
    for exps in &a.basis {
        let mut acc = GradedPoly::one(&torus);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = acc.checked_mul(&var_values[i].pow(e))?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Rows equating torus-monomial coefficients of the substituted ansatz
/// with the matching coefficients of `rhs_poly`. Duplicate rows within the
/// block are emitted once.
fn rows_for(
    a: &Ansatz,
    t: &SingularityType,
    rhs_poly: &GradedPoly,
    kind: EquationKind,
) -> Result<Vec<Equation>> {
    let torus = VarTable::torus(t.torus_rank);
    let values = ansatz_values_under(a, t)?;
    let degree = a.target.codim as u64;
    let mut rows: Vec<Equation> = Vec::new();
    for mono in monomial_basis(&torus, degree) {
        let coeffs: Vec<Scalar> = values.iter().map(|v| v.coefficient_of(&mono)).collect();
        let rhs = rhs_poly.coefficient_of(&mono);
        let eq = Equation {
            coeffs,
            rhs,
            provenance: Provenance {
                kind,
                source_type: t.name.clone(),
                torus_monomial: render_monomial(&torus, &mono),
            },
        };
        if !rows
            .iter()
            .any(|r| r.coeffs == eq.coeffs && r.rhs == eq.rhs)
        {
            rows.push(eq);
        }
    }
    Ok(rows)
}

/// The principal equation rows for the target type: substituted ansatz =
/// Euler class of the normal slice.
pub fn principal_equation(a: &Ansatz) -> Result<Vec<Equation>> {
    let t = &a.target;
    if !t.solvable {
        if t.normal_weights.iter().any(|w| w.iter().all(|&x| x == 0)) {
            return Err(Error::ModulusDirection(t.name.clone()));
        }
        return Err(Error::NotSolvable(t.name.clone()));
    }
    let euler = euler_class(t)?;
    rows_for(a, t, &euler, EquationKind::Principal)
}

/// Homogeneous (vanishing) rows contributed by a lower or equal-codimension
/// type distinct from the target.
pub fn homogeneous_equations(a: &Ansatz, lower: &SingularityType) -> Result<Vec<Equation>> {
    let zero = GradedPoly::zero(&VarTable::torus(lower.torus_rank));
    rows_for(a, lower, &zero, EquationKind::Homogeneous)
}

/// The default constraint set: every catalogued type the validity rule
/// admits against the target (codimension rule, or the record's explicit
/// target list for jet representatives).
pub fn default_constraints<'r>(
    registry: &'r Registry,
    target: &SingularityType,
) -> Vec<&'r SingularityType> {
    let mut list: Vec<&SingularityType> = registry
        .types_for_pair(target.source_dim, target.target_dim)
        .into_iter()
        .filter(|t| crate::registry::is_valid_source(t, target))
        .collect();
    list.sort_by_key(|t| (t.codim, t.name.clone()));
    list
}

/// Incidence-anchor rows: the substituted ansatz on the anchor's reference
/// model equals the stored restriction class.
pub fn incidence_rows(registry: &Registry, a: &Ansatz) -> Result<Vec<Equation>> {
    let Some(anchor) = &a.target.incidence_anchor else {
        return Ok(Vec::new());
    };
    let model = registry.lookup(a.target.source_dim, a.target.target_dim, &anchor.model)?;
    let torus = VarTable::torus(model.torus_rank);
    let value = crate::text::parse_poly(&torus, &anchor.value)?;
    rows_for(a, model, &value, EquationKind::Incidence)
}

/// Machine-readable record of a solve.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub name: String,
    pub pair: (usize, usize),
    pub basis: Vec<String>,
    pub equations: Vec<EquationRecord>,
    pub unknowns: usize,
    pub rank: usize,
    pub pivotal_rows: Vec<usize>,
    pub solution: Vec<String>,
    pub tp: String,
    pub integral: bool,
    pub back_substitution_verified: bool,
    pub golden_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquationRecord {
    pub kind: EquationKind,
    pub source_type: String,
    pub torus_monomial: String,
    pub coefficients: Vec<String>,
    pub rhs: String,
    pub rendered: String,
}

/// Runs the restriction method for a target type.
///
/// `constraints`: `None` for the default rule, otherwise explicit type
/// names resolved against the registry.
pub fn solve_tp(
    registry: &Registry,
    target: &SingularityType,
    constraints: Option<&[String]>,
) -> Result<(GradedPoly, SolveReport)> {
    let a = ansatz(target);
    let mut system = LinearSystem::default();
    system.equations.extend(principal_equation(&a)?);
    let lower_types: Vec<&SingularityType> = match constraints {
        None => default_constraints(registry, target),
        Some(names) => {
            let mut list = Vec::new();
            for name in names {
                list.push(registry.lookup(target.source_dim, target.target_dim, name)?);
            }
            list
        }
    };
    for lt in &lower_types {
        system.equations.extend(homogeneous_equations(&a, lt)?);
    }
    system.equations.extend(incidence_rows(registry, &a)?);

    let matrix = system.matrix();
    let rhs = system.rhs();
    let elim = linalg::eliminate(&matrix, &rhs);
    if let Some((bad, pivot)) = elim.conflict {
        return Err(Error::InconsistentSystem {
            row_a: format!(
                "{} [{}]",
                system.equations[bad].provenance.source_type,
                system.equations[bad].provenance.torus_monomial
            ),
            row_b: format!(
                "{} [{}]",
                system.equations[pivot].provenance.source_type,
                system.equations[pivot].provenance.torus_monomial
            ),
        });
    }
    if elim.kernel_dim > 0 {
        let missing: Vec<String> = registry
            .types_for_pair(target.source_dim, target.target_dim)
            .iter()
            .filter(|t| {
                t.codim <= target.codim
                    && t.name != target.name
                    && !lower_types.iter().any(|l| l.name == t.name)
            })
            .map(|t| t.name.clone())
            .collect();
        return Err(Error::Underdetermined {
            kernel_dim: elim.kernel_dim,
            suggestion: if missing.is_empty() {
                "no further catalogued types available".into()
            } else {
                missing.join(", ")
            },
        });
    }
    let solution = elim.solution.expect("consistent full-rank system");
    if !linalg::verify_solution(&matrix, &rhs, &solution) {
        return Err(Error::Internal("back substitution failed".into()));
    }
    if let Some(bad) = solution.iter().find(|x| !scalar::is_integer(x)) {
        return Err(Error::NonIntegralSolution(scalar::render(bad)));
    }

    let mut tp = GradedPoly::zero(&a.vars);
    for (exps, x) in a.basis.iter().zip(&solution) {
        tp = tp.checked_add(&GradedPoly::from_terms(
            &a.vars,
            [(exps.clone(), x.clone())],
        ))?;
    }

    let golden_match = target.known_tp_expanded().map(|golden| golden == tp);

    let report = SolveReport {
        name: target.name.clone(),
        pair: target.pair(),
        basis: a
            .basis
            .iter()
            .map(|e| render_monomial(&a.vars, e))
            .collect(),
        equations: system
            .equations
            .iter()
            .map(|e| EquationRecord {
                kind: e.provenance.kind,
                source_type: e.provenance.source_type.clone(),
                torus_monomial: e.provenance.torus_monomial.clone(),
                coefficients: e.coeffs.iter().map(scalar::render).collect(),
                rhs: scalar::render(&e.rhs),
                rendered: e.render(),
            })
            .collect(),
        unknowns: a.basis.len(),
        rank: elim.rank,
        pivotal_rows: elim.pivotal_rows,
        solution: solution.iter().map(scalar::render).collect(),
        tp: render_poly(&tp),
        integral: true,
        back_substitution_verified: true,
        golden_match,
    };
    Ok((tp, report))
}

/// Residual of a Tp under one type's torus substitution.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyRow {
    pub source_type: String,
    pub vanishes: bool,
    pub residual: String,
}

/// Checks that a homogeneous Tp vanishes under every given type's torus
/// substitution (the vanishing half of the restriction method, applied to
/// closed-form entries).
pub fn consistency_check(
    tp_expanded: &GradedPoly,
    lower_types: &[&SingularityType],
) -> Result<Vec<ConsistencyRow>> {
    let mut rows = Vec::new();
    for t in lower_types {
        let value = crate::registry::evaluate_under_bindings(tp_expanded, t)?;
        rows.push(ConsistencyRow {
            source_type: t.name.clone(),
            vanishes: value.is_zero(),
            residual: render_poly(&value),
        });
    }
    Ok(rows)
}
