//! Catalogue of singularity types: normal forms, A-codimensions, torus
//! weight systems, and the golden Thom polynomial tables.
//!
//! Only three weight systems are forced by the worked material; the rest
//! are derived here from each normal form (quasi-homogeneity fixes the
//! source weights, the target weights are the component degrees, and the
//! unfolding weights come from the versal deformation monomials). Every
//! derivation is validated two ways: the symbolic quasi-homogeneity check
//! in [`validate_type`], and reproduction of the published Thom
//! polynomials by the solver.
//!
//! Types whose germ is not quasi-homogeneous (Butterfly, Sharksfin) store
//! a quasi-homogeneous jet representative of their equisingularity stratum
//! instead: it supplies torus data for vanishing constraints, while their
//! Thom polynomials stay closed-form only. The unimodal P3 family carries
//! a zero-weight modulus direction in its normal slice and is flagged
//! unsolvable for that reason.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::poly::{GradedPoly, VarTable};
use crate::ring::expand_quotient_form;
use crate::text::parse_poly;
use crate::{Error, Result};

/// One singularity type record. Weight vectors are rows of an integer
/// matrix with `torus_rank` columns.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SingularityType {
    pub name: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub codim: u32,
    pub torus_rank: usize,
    pub source_weights: Vec<Vec<i64>>,
    pub target_weights: Vec<Vec<i64>>,
    pub unfolding_weights: Vec<Vec<i64>>,
    pub normal_weights: Vec<Vec<i64>>,
    pub normal_form: Option<String>,
    pub known_tp: Option<String>,
    pub solvable: bool,
    /// Which targets this record may constrain with vanishing rows.
    /// `None` applies the codimension rule (any distinct target of
    /// codimension at least this record's). Records whose stored
    /// representative is a jet of a deeper germ realize extra types in
    /// their model families and must list their valid targets explicitly.
    #[serde(default)]
    pub vanishing_for: Option<Vec<String>>,
    /// Restriction of this type's Tp to a reference model in whose closure
    /// the type's stratum meets a deeper stratum. Pins the coefficient a
    /// rank-deficient vanishing system leaves free.
    #[serde(default)]
    pub incidence_anchor: Option<IncidenceAnchor>,
    pub notes: String,
}

/// An incidence anchor: `ansatz restricted to the named model = value`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IncidenceAnchor {
    /// Name of the registry record whose torus data hosts the restriction.
    pub model: String,
    /// Canonical polynomial in the model's torus variables.
    pub value: String,
}

impl SingularityType {
    pub fn pair(&self) -> (usize, usize) {
        (self.source_dim, self.target_dim)
    }

    /// True when the type carries usable torus weight data.
    pub fn has_torus_data(&self) -> bool {
        self.torus_rank > 0 && !self.source_weights.is_empty()
    }

    /// The known Tp parsed over its natural table: quotient classes when
    /// the stored text uses `cb` variables, otherwise (c, c').
    pub fn known_tp_poly(&self) -> Option<GradedPoly> {
        let text = self.known_tp.as_ref()?;
        Some(parse_tp_text(text, self.source_dim, self.target_dim))
    }

    /// The known Tp expanded into (c, c') variables.
    pub fn known_tp_expanded(&self) -> Option<GradedPoly> {
        let p = self.known_tp_poly()?;
        Some(if is_cbar_poly(&p) {
            expand_quotient_form(&p, self.source_dim, self.target_dim)
        } else {
            p
        })
    }
}

fn is_cbar_text(text: &str) -> bool {
    text.contains("cb")
}

fn is_cbar_poly(p: &GradedPoly) -> bool {
    p.vars().names().iter().any(|n| n.starts_with("cb"))
}

/// Parses a Tp in canonical text over either the (c, c') table of the pair
/// or the quotient-class table.
pub fn parse_tp_text(text: &str, m: usize, n: usize) -> GradedPoly {
    let table = if is_cbar_text(text) {
        VarTable::cbar(6)
    } else {
        VarTable::chern(m, n)
    };
    parse_poly(&table, text).expect("golden polynomial text parses")
}

/// The golden Thom polynomial of a catalogued type, expanded in (c, c').
pub fn golden_tp(registry: &Registry, m: usize, n: usize, name: &str) -> Result<GradedPoly> {
    let t = registry.lookup(m, n, name)?;
    t.known_tp_expanded().ok_or_else(|| Error::UnknownType {
        name: name.into(),
        m,
        n,
    })
}

// Golden table texts, transcribed row by row from the published tables.

pub const TP_FOLD: &str = "cb1";
pub const TP_CUSP: &str = "cb1^2 + cb2";
pub const TP_SWALLOWTAIL: &str = "cb1^3 + 3*cb1*cb2 + 2*cb3";
pub const TP_LIPSBEAKS: &str = "-2*c1^3 + 5*c1^2*cp1 - 4*c1*cp1^2 - c1*c2 + c2*cp1 + cp1^3";
pub const TP_GOOSE: &str = "2*c1^4 + 5*c1^2*c2 + 4*c2^2 - 7*c1^3*cp1 - 10*c1*c2*cp1 \
     + 9*c1^2*cp1^2 + 5*c2*cp1^2 - 5*c1*cp1^3 + cp1^4 - 2*c1^2*cp2 \
     - 6*c2*cp2 + 4*c1*cp1*cp2 - 2*cp1^2*cp2 + 2*cp2^2";
pub const TP_GULLS: &str = "6*c1^4 - c1^2*c2 - 4*c2^2 - 17*c1^3*cp1 + 4*c1*c2*cp1 \
     + 17*c1^2*cp1^2 - 3*c2*cp1^2 - 7*c1*cp1^3 + cp1^4 + 2*c1^2*cp2 \
     + 6*c2*cp2 - 4*c1*cp1*cp2 + 2*cp1^2*cp2 - 2*cp2^2";
pub const TP_BUTTERFLY: &str = "cb1^4 + 6*cb1^2*cb2 + 2*cb2^2 + 9*cb1*cb3 + 6*cb4";
pub const TP_SHARKSFIN: &str = "cb2^2 - cb1*cb3";

pub const TP_S0: &str = "cb2";
pub const TP_B1: &str =
    "-3*c1^3 + 4*c1*c2 + 4*c1^2*cp1 - 2*c2*cp1 - c1*cp1^2 - 3*c1*cp2 + cp1*cp2 + cp3";
pub const TP_S2: &str = "13*c1^4 - 22*c1^2*c2 + 3*c2^2 - 21*c1^3*cp1 + 19*c1*c2*cp1 \
     + 9*c1^2*cp1^2 - 3*c2*cp1^2 - c1*cp1^3 + 14*c1^2*cp2 - 4*c2*cp2 \
     - 9*c1*cp1*cp2 + cp1^2*cp2 + cp2^2 - 6*c1*cp3 + 2*cp1*cp3";
pub const TP_B2: &str = "11*c1^4 - 22*c1^2*c2 + c2^2 - 17*c1^3*cp1 + 21*c1*c2*cp1 \
     + 7*c1^2*cp1^2 - 5*c2*cp1^2 - c1*cp1^3 + 10*c1^2*cp2 \
     - 5*c1*cp1*cp2 + cp1^2*cp2 - cp2^2 - 10*c1*cp3 + 4*cp1*cp3";
pub const TP_H2: &str = "cb2^2 + cb1*cb3 + 2*cb4";
pub const TP_S3: &str = "-71*c1^5 + 149*c1^3*c2 - 48*c1*c2^2 + 132*c1^4*cp1 - 174*c1^2*c2*cp1 \
     + 20*c2^2*cp1 - 76*c1^3*cp1^2 + 53*c1*c2*cp1^2 + 16*c1^2*cp1^3 \
     - 4*c2*cp1^3 - c1*cp1^4 - 82*c1^3*cp2 + 53*c1*c2*cp2 + 75*c1^2*cp1*cp2 \
     - 17*c2*cp1*cp2 - 18*c1*cp1^2*cp2 + cp1^3*cp2 - 11*c1*cp2^2 + 3*cp1*cp2^2 \
     + 39*c1^2*cp3 - 9*c2*cp3 - 24*c1*cp1*cp3 + 3*cp1^2*cp3 + 3*cp2*cp3";
pub const TP_B3: &str = "-110*c1^5 + 286*c1^3*c2 - 76*c1*c2^2 + 192*c1^4*cp1 - 356*c1^2*c2*cp1 \
     + 32*c2^2*cp1 - 104*c1^3*cp1^2 + 134*c1*c2*cp1^2 + 24*c1^2*cp1^3 - 16*c2*cp1^3 \
     - 2*c1*cp1^4 - 100*c1^3*cp2 + 54*c1*c2*cp2 + 70*c1^2*cp1*cp2 - 18*c2*cp1*cp2 \
     - 20*c1*cp1^2*cp2 + 2*cp1^3*cp2 + 10*c1*cp2^2 - 2*cp1*cp2^2 + 106*c1^2*cp3 \
     - 6*c2*cp3 - 72*c1*cp1*cp3 + 14*cp1^2*cp3 - 6*cp2*cp3";
pub const TP_H3: &str = "-48*c1^5 + 156*c1^3*c2 - 90*c1*c2^2 + 80*c1^4*cp1 - 182*c1^2*c2*cp1 \
     + 42*c2^2*cp1 - 36*c1^3*cp1^2 + 48*c1*c2*cp1^2 + 4*c1^2*cp1^3 \
     - 2*c2*cp1^3 - 60*c1^3*cp2 + 84*c1*c2*cp2 + 46*c1^2*cp1*cp2 - 26*c2*cp1*cp2 \
     - 6*c1*cp1^2*cp2 - 12*c1*cp2^2 + 2*cp1*cp2^2 + 45*c1^2*cp3 - 27*c2*cp3 \
     - 27*c1*cp1*cp3 + 2*cp1^2*cp3 + 9*cp2*cp3";
pub const TP_C3: &str = "-33*c1^5 + 66*c1^3*c2 - 3*c1*c2^2 + 62*c1^4*cp1 - 85*c1^2*c2*cp1 \
     + c2^2*cp1 - 38*c1^3*cp1^2 + 36*c1*c2*cp1^2 + 10*c1^2*cp1^3 - 5*c2*cp1^3 \
     - c1*cp1^4 - 30*c1^3*cp2 + 25*c1^2*cp1*cp2 - 8*c1*cp1^2*cp2 \
     + cp1^3*cp2 + 3*c1*cp2^2 - cp1*cp2^2 + 30*c1^2*cp3 - 22*c1*cp1*cp3 + 4*cp1^2*cp3";
pub const TP_P3: &str = "-16*c1^5 + 48*c1^3*c2 - 24*c1*c2^2 + 28*c1^4*cp1 - 58*c1^2*c2*cp1 \
     + 11*c2^2*cp1 - 14*c1^3*cp1^2 + 17*c1*c2*cp1^2 \
     + 2*c1^2*cp1^3 - c2*cp1^3 - 20*c1^3*cp2 + 24*c1*c2*cp2 + 17*c1^2*cp1*cp2 \
     - 8*c2*cp1*cp2 - 3*c1*cp1^2*cp2 - 4*c1*cp2^2 + cp1*cp2^2 + 14*c1^2*cp3 \
     - 6*c2*cp3 - 9*c1*cp1*cp3 + cp1^2*cp3 + 2*cp2*cp3";

pub const TP_C33: &str = "2*c1^4 + c1^2*c2 - 2*c2^2 + 3*c1*c3 - 7*c1^3*cp1 - 3*c3*cp1 \
     + 9*c1^2*cp1^2 - c2*cp1^2 - 5*c1*cp1^3 + cp1^4 - 2*c1^2*cp2 \
     + 4*c2*cp2 + 2*c1*cp1*cp2 - 2*cp2^2 - 2*c1*cp3 + 2*cp1*cp3";
pub const TP_D33: &str = "18*c1^4 - 21*c1^2*c2 - 2*c2^2 + 8*c1*c3 - 45*c1^3*cp1 + 31*c1*c2*cp1 \
     - 6*c3*cp1 + 40*c1^2*cp1^2 - 12*c2*cp1^2 - 15*c1*cp1^3 + 2*cp1^4 + 13*c1^2*cp2 \
     + 4*c2*cp2 - 17*c1*cp1*cp2 + 6*cp1^2*cp2 - 2*cp2^2 - 8*c1*cp3 + 6*cp1*cp3";

/// The equidimensional stable-series Tp of A_3 as printed in the worked
/// example list, with coefficient 1 on cb3. It disagrees with the
/// Swallowtail table row (coefficient 2); the solver output arbitrates
/// between the two published forms.
pub const TP_A3_EXAMPLE_VARIANT: &str = "cb1^3 + 3*cb1*cb2 + cb3";

/// Stable Tp for corank-1 types of maps from n-folds to (n+1)-folds.
pub const TP_A1_NPLUS1: &str = "cb2";
pub const TP_A2_NPLUS1: &str = "cb2^2 + cb1*cb3 + cb4";

/// Multi-singularity classes for maps from surfaces to 3-folds, written in
/// s0 = f*f_*(1), s1 = f*f_*(cb1) and the quotient classes.
pub const TP_MULTI_A0A0: &str = "s0 - cb1";
pub const TP_MULTI_A1: &str = "cb2";
pub const TP_MULTI_A0A0A0: &str = "1/2*s0^2 - 1/2*s1 - s0*cb1 + cb1^2 + cb2";

/// Variable table for the multi-singularity classes.
pub fn multisingularity_table() -> Arc<VarTable> {
    VarTable::new(&[("s0", 1), ("s1", 2), ("cb1", 1), ("cb2", 2)])
}

pub fn multisingularity_tp(name: &str) -> Result<GradedPoly> {
    let table = multisingularity_table();
    let text = match name {
        "A0^2" => TP_MULTI_A0A0,
        "A1" => TP_MULTI_A1,
        "A0^3" => TP_MULTI_A0A0A0,
        _ => {
            return Err(Error::UnknownType {
                name: name.into(),
                m: 2,
                n: 3,
            })
        }
    };
    parse_poly(&table, text)
}

/// The read-only catalogue of types.
#[derive(Debug, Clone)]
pub struct Registry {
    types: Vec<SingularityType>,
}

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase()
}

impl Registry {
    pub fn types(&self) -> &[SingularityType] {
        &self.types
    }

    pub fn types_for_pair(&self, m: usize, n: usize) -> Vec<&SingularityType> {
        self.types.iter().filter(|t| t.pair() == (m, n)).collect()
    }

    /// Name lookup with the customary aliases (S1 = B1 = H1; A0 is the
    /// immersion for pair (2,3); punctuation in names is ignored).
    pub fn lookup(&self, m: usize, n: usize, name: &str) -> Result<&SingularityType> {
        let mut key = normalize_name(name);
        key = match key.as_str() {
            "s1" | "h1" => "b1".into(),
            "a0" if (m, n) == (2, 3) => "immersion".into(),
            "i2" => "i22".into(),
            other => other.into(),
        };
        self.types
            .iter()
            .find(|t| t.pair() == (m, n) && normalize_name(&t.name) == key)
            .ok_or_else(|| Error::UnknownType {
                name: name.into(),
                m,
                n,
            })
    }

    /// Loads a registry file and merges it over this one: records with a
    /// matching (pair, name) replace the existing entry, new records are
    /// appended.
    pub fn merge_from_file(&self, path: &Path) -> Result<Registry> {
        let text = fs::read_to_string(path)?;
        let extra: Vec<SingularityType> = serde_json::from_str(&text)?;
        let mut types = self.types.clone();
        for record in extra {
            match types
                .iter_mut()
                .find(|t| t.pair() == record.pair() && t.name == record.name)
            {
                Some(existing) => *existing = record,
                None => types.push(record),
            }
        }
        Ok(Registry { types })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.types).expect("registry serializes")
    }

    pub fn from_json(text: &str) -> Result<Registry> {
        let types: Vec<SingularityType> = serde_json::from_str(text)?;
        Ok(Registry { types })
    }

    /// Diagnostics for every record; empty means the registry is valid.
    pub fn validate(&self) -> Vec<String> {
        self.types.iter().flat_map(validate_type).collect()
    }
}

/// The built-in catalogue.
pub fn builtin_registry() -> Registry {
    let mut types = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn t(
        name: &str,
        (m, n): (usize, usize),
        codim: u32,
        rank: usize,
        src: Vec<Vec<i64>>,
        tgt: Vec<Vec<i64>>,
        unf: Vec<Vec<i64>>,
        nrm: Vec<Vec<i64>>,
        nf: &str,
        tp: Option<&str>,
        solvable: bool,
        notes: &str,
    ) -> SingularityType {
        SingularityType {
            name: name.into(),
            source_dim: m,
            target_dim: n,
            codim,
            torus_rank: rank,
            source_weights: src,
            target_weights: tgt,
            unfolding_weights: unf,
            normal_weights: nrm,
            normal_form: Some(nf.into()),
            known_tp: tp.map(|s| s.into()),
            solvable,
            vanishing_for: None,
            incidence_anchor: None,
            notes: notes.into(),
        }
    }

    // ---- plane-to-plane -------------------------------------------------
    types.push(t(
        "Regular",
        (2, 2),
        0,
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![1, 0], vec![0, 1]],
        vec![],
        vec![],
        "(x, y)",
        None,
        true,
        "identity germ; contributes the c = c' vanishing constraints",
    ));
    types.push(t(
        "Fold",
        (2, 2),
        1,
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![1, 0], vec![0, 2]],
        vec![],
        vec![vec![0, 1]],
        "(x, y^2)",
        Some(TP_FOLD),
        true,
        "stable; fold locus is the x-axis, normal slice is the y-direction",
    ));
    types.push(t(
        "Cusp",
        (2, 2),
        2,
        1,
        vec![vec![2], vec![1]],
        vec![vec![2], vec![3]],
        vec![],
        vec![vec![2], vec![1]],
        "(x, x*y + y^3)",
        Some(TP_CUSP),
        true,
        "weights forced by x*y and y^3 sharing a degree; cusp points isolated",
    ));
    types.push(t(
        "LipsBeaks",
        (2, 2),
        3,
        1,
        vec![vec![1], vec![1]],
        vec![vec![1], vec![3]],
        vec![vec![2]],
        vec![vec![1], vec![1], vec![2]],
        "(x, y^3 + x^2*y)",
        Some(TP_LIPSBEAKS),
        true,
        "versal unfolding monomial y of weight 2",
    ));
    types.push(t(
        "Swallowtail",
        (2, 2),
        3,
        1,
        vec![vec![3], vec![1]],
        vec![vec![3], vec![4]],
        vec![vec![2]],
        vec![vec![3], vec![1], vec![2]],
        "(x, x*y + y^4)",
        Some(TP_SWALLOWTAIL),
        true,
        "versal unfolding monomial y^2 of weight 2",
    ));
    types.push(t(
        "Goose",
        (2, 2),
        4,
        1,
        vec![vec![2], vec![3]],
        vec![vec![2], vec![9]],
        vec![vec![6], vec![4]],
        vec![vec![2], vec![3], vec![6], vec![4]],
        "(x, y^3 + x^3*y)",
        Some(TP_GOOSE),
        true,
        "versal unfolding monomials y, x*y of weights 6, 4",
    ));
    types.push(t(
        "Butterfly",
        (2, 2),
        4,
        1,
        vec![vec![4], vec![1]],
        vec![vec![4], vec![5]],
        vec![],
        vec![],
        "(x, x*y + y^5)",
        Some(TP_BUTTERFLY),
        false,
        "germ (x, x*y + y^5 + y^7) is 7-determined and its 7-jet is not \
         quasi-homogeneous, so the principal equation is not available; the \
         stored 5-jet stratum representative supplies vanishing constraints \
         and the closed form is consistency-checked",
    ));
    let mut gulls = t(
        "Gulls",
        (2, 2),
        4,
        1,
        vec![vec![2], vec![1]],
        vec![vec![2], vec![4]],
        vec![vec![3], vec![1]],
        vec![vec![2], vec![1], vec![3], vec![1]],
        "(x, x*y^2 + y^4)",
        Some(TP_GULLS),
        true,
        "germ (x, x*y^2 + y^4 + y^5) is not quasi-homogeneous; the stratum \
         admits the quasi-homogeneous 5-jet representative stored here, with \
         deformation monomials y, y^3 of weights 3, 1; the representative is \
         the edge germ of the stratum, whose family realizes goose points, \
         so its vanishing rows apply only to the listed targets; the \
         vanishing system determines this Tp only modulo the corank-2 class, \
         and the incidence anchor pins the remaining coefficient",
    );
    gulls.vanishing_for = Some(vec!["Butterfly".into(), "Sharksfin".into()]);
    gulls.incidence_anchor = Some(IncidenceAnchor {
        model: "Sharksfin".into(),
        value: "3*a1^3*a2 - 6*a1^2*a2^2 + 3*a1*a2^3".into(),
    });
    types.push(gulls);
    let mut sharksfin = t(
        "Sharksfin",
        (2, 2),
        4,
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![2, 0], vec![0, 2]],
        vec![],
        vec![],
        "(x^2, y^2)",
        Some(TP_SHARKSFIN),
        false,
        "germ (x^2 + y^3, x^3 + y^2) is not quasi-homogeneous; the corank-2 \
         pencil stratum is represented by an independent pair of squares; \
         every corank-1 type of the same codimension lies in the closure of \
         that family, so the vanishing rows apply only to the listed target; \
         closed form consistency-checked",
    );
    sharksfin.vanishing_for = Some(vec!["Butterfly".into()]);
    types.push(sharksfin);
    // Jet-orbit scaffolds: quasi-homogeneous monomial jets whose families
    // provably avoid the goose stratum closure (the quadratic part of the
    // second component along a goose degeneration is a perfect square, and
    // the cubic part a perfect cube, while x*y and x^2*y are neither).
    // They contribute the vanishing rows the goose solve needs beyond the
    // catalogued types.
    let mut jet = t(
        "Jet_x2y",
        (2, 2),
        5,
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![1, 0], vec![2, 1]],
        vec![],
        vec![],
        "(x, x^2*y)",
        None,
        false,
        "monomial jet orbit used as a vanishing constraint for the goose \
         solve; separates the gulls direction",
    );
    jet.vanishing_for = Some(vec!["Goose".into()]);
    types.push(jet);
    let mut jet = t(
        "Jet_x2xy",
        (2, 2),
        5,
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![2, 0], vec![1, 1]],
        vec![],
        vec![],
        "(x^2, x*y)",
        None,
        false,
        "degenerate-pencil jet orbit used as a vanishing constraint for the \
         goose solve; separates the corank-2 direction",
    );
    jet.vanishing_for = Some(vec!["Goose".into()]);
    types.push(jet);

    // ---- surface-to-3-space ---------------------------------------------
    types.push(t(
        "Immersion",
        (2, 3),
        0,
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![],
        vec![],
        "(x, y, 0)",
        None,
        true,
        "full T^3 symmetry on source and target",
    ));
    types.push(t(
        "S0",
        (2, 3),
        2,
        2,
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![1, 0], vec![0, 2], vec![1, 1]],
        vec![],
        vec![vec![1, 0], vec![0, 1]],
        "(x, y^2, x*y)",
        Some(TP_S0),
        true,
        "stable crosscap; isolated singular point, normal slice = source",
    ));
    types.push(t(
        "B1",
        (2, 3),
        3,
        1,
        vec![vec![1], vec![1]],
        vec![vec![1], vec![2], vec![3]],
        vec![vec![2]],
        vec![vec![1], vec![1], vec![2]],
        "(x, y^2, x^2*y + y^3)",
        Some(TP_B1),
        true,
        "versal unfolding monomial y of weight 2",
    ));
    types.push(t(
        "S2",
        (2, 3),
        4,
        1,
        vec![vec![2], vec![3]],
        vec![vec![2], vec![6], vec![9]],
        vec![vec![6], vec![4]],
        vec![vec![2], vec![3], vec![6], vec![4]],
        "(x, y^2, y^3 + x^3*y)",
        Some(TP_S2),
        true,
        "versal unfolding monomials y, x*y of weights 6, 4",
    ));
    types.push(t(
        "B2",
        (2, 3),
        4,
        1,
        vec![vec![2], vec![1]],
        vec![vec![2], vec![2], vec![5]],
        vec![vec![4], vec![2]],
        vec![vec![2], vec![1], vec![4], vec![2]],
        "(x, y^2, x^2*y + y^5)",
        Some(TP_B2),
        true,
        "versal unfolding monomials y, y^3 of weights 4, 2",
    ));
    types.push(t(
        "H2",
        (2, 3),
        4,
        1,
        vec![vec![4], vec![1]],
        vec![vec![4], vec![3], vec![5]],
        vec![vec![2], vec![3]],
        vec![vec![4], vec![1], vec![2], vec![3]],
        "(x, y^3, x*y + y^5)",
        Some(TP_H2),
        true,
        "versal deformations y in the second component (weight 2) and y^2 \
         in the third (weight 3)",
    ));
    types.push(t(
        "S3",
        (2, 3),
        5,
        1,
        vec![vec![1], vec![2]],
        vec![vec![1], vec![4], vec![6]],
        vec![vec![4], vec![3], vec![2]],
        vec![vec![1], vec![2], vec![4], vec![3], vec![2]],
        "(x, y^2, y^3 + x^4*y)",
        Some(TP_S3),
        true,
        "versal unfolding monomials y, x*y, x^2*y of weights 4, 3, 2",
    ));
    types.push(t(
        "B3",
        (2, 3),
        5,
        1,
        vec![vec![3], vec![1]],
        vec![vec![3], vec![2], vec![7]],
        vec![vec![6], vec![4], vec![2]],
        vec![vec![3], vec![1], vec![6], vec![4], vec![2]],
        "(x, y^2, x^2*y + y^7)",
        Some(TP_B3),
        true,
        "versal unfolding monomials y, y^3, y^5 of weights 6, 4, 2",
    ));
    types.push(t(
        "H3",
        (2, 3),
        5,
        1,
        vec![vec![7], vec![1]],
        vec![vec![7], vec![3], vec![8]],
        vec![vec![2], vec![6], vec![3]],
        vec![vec![7], vec![1], vec![2], vec![6], vec![3]],
        "(x, y^3, x*y + y^8)",
        Some(TP_H3),
        true,
        "versal deformations y in the second component (weight 2) and \
         y^2, y^5 in the third (weights 6, 3)",
    ));
    types.push(t(
        "C3",
        (2, 3),
        5,
        1,
        vec![vec![1], vec![1]],
        vec![vec![1], vec![2], vec![4]],
        vec![vec![3], vec![2], vec![1]],
        vec![vec![1], vec![1], vec![3], vec![2], vec![1]],
        "(x, y^2, x*y^3 + x^3*y)",
        Some(TP_C3),
        true,
        "versal unfolding monomials y, x*y, y^3 of weights 3, 2, 1",
    ));
    types.push(t(
        "P3",
        (2, 3),
        5,
        1,
        vec![vec![2], vec![1]],
        vec![vec![2], vec![3], vec![4]],
        vec![vec![1], vec![1], vec![0]],
        vec![vec![2], vec![1], vec![1], vec![1], vec![0]],
        "(x, x*y + y^3, x*y^2 + y^4)",
        Some(TP_P3),
        false,
        "unimodal family; the modulus multiplies y^4 in the third component \
         and spans a zero-weight normal direction, so the Euler class \
         vanishes and the principal equation degenerates; the stored normal \
         form is the modulus = 1 representative",
    ));

    // ---- 3-space-to-3-space ---------------------------------------------
    types.push(t(
        "A0",
        (3, 3),
        0,
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![],
        vec![],
        "(x, y, z)",
        None,
        true,
        "identity germ",
    ));
    types.push(t(
        "A1",
        (3, 3),
        1,
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
        vec![],
        vec![vec![0, 0, 1]],
        "(x, y, z^2)",
        Some(TP_FOLD),
        true,
        "suspended fold; fold locus is the (x,y)-plane",
    ));
    types.push(t(
        "A2",
        (3, 3),
        2,
        2,
        vec![vec![1, 0], vec![0, 2], vec![0, 1]],
        vec![vec![1, 0], vec![0, 2], vec![0, 3]],
        vec![],
        vec![vec![0, 2], vec![0, 1]],
        "(x, y, y*z + z^3)",
        Some(TP_CUSP),
        true,
        "cusp locus is the x-axis, normal slice spans the (y,z)-directions",
    ));
    types.push(t(
        "A3",
        (3, 3),
        3,
        1,
        vec![vec![2], vec![3], vec![1]],
        vec![vec![2], vec![3], vec![4]],
        vec![],
        vec![vec![2], vec![3], vec![1]],
        "(x, y, y*z + x*z^2 + z^4)",
        Some(TP_SWALLOWTAIL),
        true,
        "stable; swallowtail points isolated, normal slice = source",
    ));
    types.push(t(
        "A4",
        (3, 3),
        4,
        1,
        vec![vec![3], vec![4], vec![1]],
        vec![vec![3], vec![4], vec![5]],
        vec![vec![2]],
        vec![vec![3], vec![4], vec![1], vec![2]],
        "(x, y, y*z + x*z^2 + z^5)",
        Some(TP_BUTTERFLY),
        true,
        "versal unfolding monomial z^3 of weight 2",
    ));
    types.push(t(
        "C",
        (3, 3),
        4,
        1,
        vec![vec![1], vec![1], vec![1]],
        vec![vec![1], vec![1], vec![3]],
        vec![vec![2]],
        vec![vec![1], vec![1], vec![1], vec![2]],
        "(x, y, z^3 + y^2*z + x^2*z)",
        Some(TP_C33),
        true,
        "versal unfolding monomial z of weight 2",
    ));
    types.push(t(
        "D",
        (3, 3),
        4,
        1,
        vec![vec![1], vec![3], vec![1]],
        vec![vec![1], vec![3], vec![4]],
        vec![vec![2]],
        vec![vec![1], vec![3], vec![1], vec![2]],
        "(x, y, y*z + z^4 + x^2*z^2)",
        Some(TP_D33),
        true,
        "versal unfolding monomial z^2 of weight 2",
    ));
    types.push(t(
        "I22",
        (3, 3),
        4,
        1,
        vec![vec![1], vec![1], vec![1]],
        vec![vec![1], vec![2], vec![2]],
        vec![],
        vec![],
        "(x, y*z, y^2 + z^2 + x*y)",
        Some(TP_SHARKSFIN),
        false,
        "corank-2 type; torus data supplies vanishing constraints for the \
         equal-codimension solves, the closed form is consistency-checked",
    ));

    Registry { types }
}

/// True when `source` may contribute vanishing rows against `target`: a
/// distinct type of the same pair with torus data, subject to either the
/// codimension rule or the record's explicit target list.
pub fn is_valid_source(source: &SingularityType, target: &SingularityType) -> bool {
    if source.name == target.name || source.pair() != target.pair() || !source.has_torus_data() {
        return false;
    }
    match &source.vanishing_for {
        None => source.codim <= target.codim,
        Some(list) => list.iter().any(|n| n == &target.name),
    }
}

/// Per-record diagnostics: weight matrix shapes, quasi-homogeneity of the
/// stored normal form, degree of the known Tp, and the normal-slice
/// bookkeeping for solvable types.
pub fn validate_type(t: &SingularityType) -> Vec<String> {
    let mut diags = Vec::new();
    let ctx = format!("{} ({},{})", t.name, t.source_dim, t.target_dim);

    if t.has_torus_data() {
        if t.source_weights.len() != t.source_dim {
            diags.push(format!(
                "{ctx}: expected {} source weight vectors, found {}",
                t.source_dim,
                t.source_weights.len()
            ));
        }
        if t.target_weights.len() != t.target_dim {
            diags.push(format!(
                "{ctx}: expected {} target weight vectors, found {}",
                t.target_dim,
                t.target_weights.len()
            ));
        }
        for w in t
            .source_weights
            .iter()
            .chain(&t.target_weights)
            .chain(&t.unfolding_weights)
            .chain(&t.normal_weights)
        {
            if w.len() != t.torus_rank {
                diags.push(format!(
                    "{ctx}: weight vector {w:?} does not have rank {}",
                    t.torus_rank
                ));
            }
        }
        if let Some(nf) = &t.normal_form {
            diags.extend(check_quasi_homogeneity(&ctx, t, nf));
        }
    }

    if t.solvable {
        if t.normal_weights.len() != t.codim as usize {
            diags.push(format!(
                "{ctx}: solvable type needs {} normal weights, found {}",
                t.codim,
                t.normal_weights.len()
            ));
        }
        // the normal slice sits inside source + unfolding directions
        let mut pool: Vec<&Vec<i64>> = t
            .source_weights
            .iter()
            .chain(&t.unfolding_weights)
            .collect();
        for w in &t.normal_weights {
            match pool.iter().position(|p| *p == w) {
                Some(i) => {
                    pool.remove(i);
                }
                None => diags.push(format!(
                    "{ctx}: normal weight {w:?} is not a source or unfolding direction"
                )),
            }
        }
    }

    if let Some(tp) = t.known_tp_poly() {
        match tp.homogeneous_degree() {
            Some(d) if d == t.codim as u64 => {}
            got => diags.push(format!(
                "{ctx}: known Tp must be homogeneous of degree {}, got {:?}",
                t.codim, got
            )),
        }
    }

    if let Some(anchor) = &t.incidence_anchor {
        // the anchor value must be homogeneous of the type's codimension;
        // its variables are checked against the model when the solver runs
        let table = VarTable::torus(2);
        match parse_poly(&table, &anchor.value) {
            Ok(p) if p.homogeneous_degree() == Some(t.codim as u64) => {}
            Ok(_) => diags.push(format!(
                "{ctx}: incidence anchor is not homogeneous of degree {}",
                t.codim
            )),
            Err(e) => diags.push(format!("{ctx}: incidence anchor does not parse: {e}")),
        }
    }

    diags
}

fn check_quasi_homogeneity(ctx: &str, t: &SingularityType, nf: &str) -> Vec<String> {
    let mut diags = Vec::new();
    let trimmed = nf.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(trimmed);
    let components: Vec<&str> = inner.split(',').map(str::trim).collect();
    if components.len() != t.target_dim {
        diags.push(format!(
            "{ctx}: normal form has {} components, expected {}",
            components.len(),
            t.target_dim
        ));
        return diags;
    }
    let source_vars = VarTable::new(&[("x", 1), ("y", 1), ("z", 1)]);
    for (i, comp) in components.iter().enumerate() {
        if *comp == "0" {
            continue; // the zero component is quasi-homogeneous of any degree
        }
        let poly = match parse_poly(&source_vars, comp) {
            Ok(p) => p,
            Err(e) => {
                diags.push(format!("{ctx}: component `{comp}` does not parse: {e}"));
                continue;
            }
        };
        let expected = &t.target_weights[i];
        for (exps, _) in poly.terms() {
            let mut weight = vec![0i64; t.torus_rank];
            for (j, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if j >= t.source_weights.len() {
                    diags.push(format!(
                        "{ctx}: component `{comp}` uses more variables than the source has"
                    ));
                    continue;
                }
                for (k, wk) in t.source_weights[j].iter().enumerate() {
                    weight[k] += e as i64 * wk;
                }
            }
            if &weight != expected {
                diags.push(format!(
                    "{ctx}: component `{comp}` is not homogeneous of degree {expected:?} \
                     (term with weight {weight:?})"
                ));
                break;
            }
        }
    }
    diags
}

/// Evaluates a Tp under a type's torus substitution; the result is a
/// polynomial in the torus variables.
pub fn evaluate_under_bindings(tp: &GradedPoly, t: &SingularityType) -> Result<GradedPoly> {
    let torus = VarTable::torus(t.torus_rank);
    let bindings = torus_bindings(t)?;
    let map: BTreeMap<String, GradedPoly> = bindings.into_iter().collect();
    tp.substitute(&map, &torus)
}

/// The substitution c_i -> degree-i part of prod (1 + <w, a>) over the
/// source weights, and likewise c'_j over the target weights.
pub fn torus_bindings(t: &SingularityType) -> Result<Vec<(String, GradedPoly)>> {
    if !t.has_torus_data() {
        return Err(Error::NoTorusData(t.name.clone()));
    }
    let torus = VarTable::torus(t.torus_rank);
    let product = |weights: &[Vec<i64>]| -> GradedPoly {
        let mut acc = GradedPoly::one(&torus);
        for w in weights {
            let mut factor = GradedPoly::one(&torus);
            for (k, &wk) in w.iter().enumerate() {
                let name = torus.names()[k].clone();
                let var = GradedPoly::var(&torus, &name);
                factor = factor
                    .checked_add(&var.scale(&crate::scalar::int(wk)))
                    .unwrap();
            }
            acc = acc.checked_mul(&factor).unwrap();
        }
        acc
    };
    let c_total = product(&t.source_weights);
    let cp_total = product(&t.target_weights);
    let mut out = Vec::new();
    for i in 1..=t.source_dim as u64 {
        out.push((format!("c{i}"), c_total.homogeneous_part(i)));
    }
    for j in 1..=t.target_dim as u64 {
        out.push((format!("cp{j}"), cp_total.homogeneous_part(j)));
    }
    Ok(out)
}

/// The Euler class of the normal slice: prod <w, a> over normal weights.
pub fn euler_class(t: &SingularityType) -> Result<GradedPoly> {
    if !t.has_torus_data() {
        return Err(Error::NoTorusData(t.name.clone()));
    }
    let torus = VarTable::torus(t.torus_rank);
    let mut acc = GradedPoly::one(&torus);
    for w in &t.normal_weights {
        if w.iter().all(|&x| x == 0) {
            return Err(Error::ModulusDirection(t.name.clone()));
        }
        let mut factor = GradedPoly::zero(&torus);
        for (k, &wk) in w.iter().enumerate() {
            let name = torus.names()[k].clone();
            let var = GradedPoly::var(&torus, &name);
            factor = factor
                .checked_add(&var.scale(&crate::scalar::int(wk)))
                .unwrap();
        }
        acc = acc.checked_mul(&factor).unwrap();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::render_poly;

    #[test]
    fn builtin_is_complete() {
        let reg = builtin_registry();
        let expect_22 = [
            "Regular",
            "Fold",
            "Cusp",
            "LipsBeaks",
            "Swallowtail",
            "Goose",
            "Butterfly",
            "Gulls",
            "Sharksfin",
        ];
        let expect_23 = [
            "Immersion", "S0", "B1", "S2", "B2", "H2", "S3", "B3", "H3", "C3", "P3",
        ];
        let expect_33 = ["A0", "A1", "A2", "A3", "A4", "C", "D", "I22"];
        for name in expect_22 {
            assert!(reg.lookup(2, 2, name).is_ok(), "{name}");
        }
        for name in expect_23 {
            assert!(reg.lookup(2, 3, name).is_ok(), "{name}");
        }
        for name in expect_33 {
            assert!(reg.lookup(3, 3, name).is_ok(), "{name}");
        }
    }

    #[test]
    fn aliases_resolve() {
        let reg = builtin_registry();
        assert_eq!(reg.lookup(2, 3, "S1").unwrap().name, "B1");
        assert_eq!(reg.lookup(2, 3, "H1").unwrap().name, "B1");
        assert_eq!(reg.lookup(2, 3, "A0").unwrap().name, "Immersion");
        assert_eq!(reg.lookup(2, 2, "Lips/Beaks").unwrap().name, "LipsBeaks");
        assert_eq!(reg.lookup(3, 3, "I_{2,2}").unwrap().name, "I22");
        assert!(reg.lookup(2, 3, "Q9").is_err());
    }

    #[test]
    fn builtin_validates_clean() {
        let reg = builtin_registry();
        let diags = reg.validate();
        assert!(diags.is_empty(), "diagnostics: {diags:#?}");
    }

    #[test]
    fn b1_weight_data_matches_worked_example() {
        let reg = builtin_registry();
        let b1 = reg.lookup(2, 3, "B1").unwrap();
        assert_eq!(b1.torus_rank, 1);
        assert_eq!(b1.source_weights, vec![vec![1], vec![1]]);
        assert_eq!(b1.unfolding_weights, vec![vec![2]]);
        assert_eq!(b1.target_weights, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(b1.normal_weights, vec![vec![1], vec![1], vec![2]]);
        let binds = torus_bindings(b1).unwrap();
        let rendered: Vec<String> = binds
            .iter()
            .map(|(n, v)| format!("{n} -> {}", render_poly(v)))
            .collect();
        assert_eq!(
            rendered,
            vec![
                "c1 -> 2*a",
                "c2 -> a^2",
                "cp1 -> 6*a",
                "cp2 -> 11*a^2",
                "cp3 -> 6*a^3",
            ]
        );
        assert_eq!(render_poly(&euler_class(b1).unwrap()), "2*a^3");
    }

    #[test]
    fn corrupted_target_weights_are_reported() {
        let reg = builtin_registry();
        let mut bad = reg.lookup(2, 3, "B1").unwrap().clone();
        bad.target_weights = vec![vec![1], vec![2], vec![4]];
        let diags = validate_type(&bad);
        assert!(
            diags.iter().any(|d| d.contains("x^2*y + y^3")),
            "diagnostics should name the failing component: {diags:?}"
        );
    }

    #[test]
    fn cusp_weights_pass() {
        let reg = builtin_registry();
        let cusp = reg.lookup(2, 2, "Cusp").unwrap();
        assert!(validate_type(cusp).is_empty());
        assert_eq!(render_poly(&euler_class(cusp).unwrap()), "2*a^2");
    }

    #[test]
    fn golden_entries_are_homogeneous_of_codim_degree() {
        let reg = builtin_registry();
        for t in reg.types() {
            if let Some(tp) = t.known_tp_expanded() {
                assert_eq!(
                    tp.homogeneous_degree(),
                    Some(t.codim as u64),
                    "degree mismatch for {}",
                    t.name
                );
            }
        }
    }

    #[test]
    fn registry_round_trips_bit_exactly() {
        let reg = builtin_registry();
        let json = reg.to_json();
        let back = Registry::from_json(&json).unwrap();
        assert_eq!(back.types(), reg.types());
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn euler_class_matches_golden_tp_under_own_bindings() {
        // substituting a type's own torus data into its published Tp must
        // reproduce the Euler class of its normal slice
        let reg = builtin_registry();
        for t in reg.types() {
            if !t.solvable || !t.has_torus_data() || t.codim == 0 {
                continue;
            }
            let Some(tp) = t.known_tp_expanded() else {
                continue;
            };
            let value = evaluate_under_bindings(&tp, t).unwrap();
            let euler = euler_class(t).unwrap();
            assert_eq!(
                value,
                euler,
                "Euler mismatch for {}: value {} vs euler {}",
                t.name,
                render_poly(&value),
                render_poly(&euler)
            );
        }
    }

    #[test]
    fn p3_modulus_direction_is_refused() {
        let reg = builtin_registry();
        let p3 = reg.lookup(2, 3, "P3").unwrap();
        assert!(matches!(euler_class(p3), Err(Error::ModulusDirection(_))));
    }

    #[test]
    fn multisingularity_forms_parse() {
        for name in ["A0^2", "A1", "A0^3"] {
            let tp = multisingularity_tp(name).unwrap();
            assert!(!tp.is_zero());
        }
        assert!(multisingularity_tp("A0^4").is_err());
    }

    #[test]
    fn merge_replaces_and_appends() {
        let reg = builtin_registry();
        let dir = std::env::temp_dir().join("thom-registry-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("extra.json");
        let mut extra = reg.lookup(2, 2, "Fold").unwrap().clone();
        extra.notes = "replaced".into();
        let mut fresh = extra.clone();
        fresh.name = "FoldVariant".into();
        std::fs::write(
            &path,
            serde_json::to_string_pretty(&vec![extra, fresh]).unwrap(),
        )
        .unwrap();
        let merged = reg.merge_from_file(&path).unwrap();
        assert_eq!(merged.lookup(2, 2, "Fold").unwrap().notes, "replaced");
        assert!(merged.lookup(2, 2, "FoldVariant").is_ok());
        assert_eq!(merged.types().len(), reg.types().len() + 1);
    }
}
