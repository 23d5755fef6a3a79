//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the checked content. Every comparison is exact; there are no
//! tolerances anywhere.

use std::collections::BTreeMap;

use thom::enumerative::{
    char_conversion_forward, char_conversion_inverse, locus_degree, ordinary_form,
    stable_multisingularity_chars, Pipeline,
};
use thom::poly::{monomial_basis, GradedPoly, VarTable};
use thom::registry::{builtin_registry, evaluate_under_bindings, is_valid_source};
use thom::ring::{cbar_expansions, QuotientRing};
use thom::scalar::{self, Scalar};
use thom::solver::{ansatz, homogeneous_equations, principal_equation, solve_tp};
use thom::text::{parse_poly, render_monomial, render_poly};
use thom::verify::{arbitrate_swallowtail, run_tables};

fn int_row(coeffs: &[Scalar], rhs: &Scalar) -> (Vec<i64>, i64) {
    let to_int = |x: &Scalar| -> i64 {
        assert!(scalar::is_integer(x), "non-integer row entry");
        x.numer().try_into().expect("fits i64")
    };
    (coeffs.iter().map(to_int).collect(), to_int(rhs))
}

#[test]
fn criterion_1_worked_example_bit_exact() {
    let reg = builtin_registry();
    let b1 = reg.lookup(2, 3, "B1").unwrap();
    let a = ansatz(b1);

    // the nine-monomial ansatz, in the printed order
    let basis: Vec<String> = a
        .basis
        .iter()
        .map(|e| render_monomial(&a.vars, e))
        .collect();
    assert_eq!(
        basis,
        vec![
            "c1^3", "c1*c2", "c1^2*cp1", "c1*cp1^2", "c2*cp1", "cp1^3", "c1*cp2", "cp1*cp2",
            "cp3"
        ]
    );

    // the principal equation, bit for bit
    let principal = principal_equation(&a).unwrap();
    assert_eq!(principal.len(), 1);
    assert_eq!(
        principal[0].render(),
        "8*x1 + 2*x2 + 24*x3 + 72*x4 + 6*x5 + 216*x6 + 22*x7 + 66*x8 + 6*x9 = 2"
    );

    // the ten vanishing equations, as a multiset of integer rows
    let immersion = reg.lookup(2, 3, "Immersion").unwrap();
    let s0 = reg.lookup(2, 3, "S0").unwrap();
    let mut rows = homogeneous_equations(&a, immersion).unwrap();
    assert_eq!(rows.len(), 6, "the immersion contributes six equations");
    let s0_rows = homogeneous_equations(&a, s0).unwrap();
    assert_eq!(s0_rows.len(), 4, "the crosscap contributes four equations");
    rows.extend(s0_rows);
    let mut got: Vec<(Vec<i64>, i64)> = rows
        .iter()
        .map(|e| int_row(&e.coeffs, &e.rhs))
        .collect();
    let mut want: Vec<(Vec<i64>, i64)> = vec![
        (vec![0, 0, 0, 0, 0, 1, 0, 0, 0], 0),
        (vec![1, 0, 1, 1, 0, 1, 0, 0, 0], 0),
        (vec![0, 0, 0, 1, 0, 3, 0, 1, 0], 0),
        (vec![0, 0, 1, 2, 0, 3, 1, 1, 0], 0),
        (vec![3, 1, 3, 3, 1, 3, 1, 1, 0], 0),
        (vec![0, 0, 2, 4, 1, 6, 2, 3, 1], 0),
        (vec![1, 0, 2, 4, 0, 8, 1, 2, 0], 0),
        (vec![1, 0, 3, 9, 0, 27, 2, 6, 0], 0),
        (vec![3, 1, 7, 16, 2, 36, 6, 13, 2], 0),
        (vec![3, 1, 8, 21, 3, 54, 7, 19, 2], 0),
    ];
    got.sort();
    want.sort();
    assert_eq!(got, want, "the ten vanishing equations");

    // the solved polynomial, as printed
    let (tp, report) = solve_tp(&reg, b1, None).unwrap();
    assert_eq!(
        render_poly(&tp),
        "-3*c1^3 + 4*c1*c2 + 4*c1^2*cp1 - c1*cp1^2 - 2*c2*cp1 - 3*c1*cp2 + cp1*cp2 + cp3"
    );
    assert_eq!(report.equations.len(), 11);
    println!("PASS criterion 1: worked example regenerated (ansatz, principal equation, ten vanishing equations, solved polynomial)");
}

#[test]
fn criterion_2_tables_4_5_6_reproduced() {
    let reg = builtin_registry();
    let mut checked = 0usize;
    for table in ["4", "5", "6"] {
        let rows = run_tables(&reg, table).unwrap();
        for row in &rows {
            assert!(row.pass, "table {} row {}: {}", row.table, row.name, row.detail);
        }
        checked += rows.len();
    }
    // the solvable rows the gate names explicitly
    let solved = [
        (2, 2, "Fold"),
        (2, 2, "Cusp"),
        (2, 2, "LipsBeaks"),
        (2, 2, "Goose"),
        (2, 2, "Gulls"),
        (2, 3, "S0"),
        (2, 3, "B1"),
        (2, 3, "S2"),
        (2, 3, "B2"),
        (2, 3, "H2"),
        (2, 3, "S3"),
        (2, 3, "B3"),
        (2, 3, "H3"),
        (2, 3, "C3"),
        (3, 3, "C"),
        (3, 3, "D"),
        (3, 3, "A1"),
        (3, 3, "A2"),
        (3, 3, "A3"),
        (3, 3, "A4"),
    ];
    for (m, n, name) in solved {
        let t = reg.lookup(m, n, name).unwrap();
        let (_, report) = solve_tp(&reg, t, None).unwrap();
        assert_eq!(report.golden_match, Some(true), "{name} ({m},{n})");
    }
    // the closed-form rows pass consistency with zero residual
    let closed = [
        (2, 2, "Swallowtail"),
        (2, 2, "Butterfly"),
        (2, 2, "Sharksfin"),
        (2, 3, "P3"),
        (3, 3, "I22"),
        (2, 3, "H2"),
    ];
    for (m, n, name) in closed {
        let t = reg.lookup(m, n, name).unwrap();
        let tp = t.known_tp_expanded().unwrap();
        for source in reg.types_for_pair(m, n) {
            if !is_valid_source(source, t) {
                continue;
            }
            let residual = evaluate_under_bindings(&tp, source).unwrap();
            assert!(
                residual.is_zero(),
                "{name} has residual {} under {}",
                render_poly(&residual),
                source.name
            );
        }
    }
    println!("PASS criterion 2: {checked} table rows reproduced (solved or consistency-checked)");
}

#[test]
fn criterion_3_swallowtail_discrepancy_arbitrated() {
    let reg = builtin_registry();
    let reports = arbitrate_swallowtail(&reg).unwrap();
    for r in &reports {
        assert!(
            r.matches_table_form && !r.matches_example_variant,
            "{}: table {}, variant {}",
            r.type_name,
            r.matches_table_form,
            r.matches_example_variant
        );
    }
    // exactly one of the two published forms survives
    println!(
        "PASS criterion 3: solver output for Swallowtail and A3 matches the table form \
         (coefficient 2 on the top quotient class); the worked-example variant with \
         coefficient 1 is refuted"
    );
}

#[test]
fn criterion_4_p3_pipeline_identities() {
    let reg = builtin_registry();
    for table in ["7", "8"] {
        let rows = run_tables(&reg, table).unwrap();
        for row in &rows {
            assert!(row.pass, "table {} row {}: {}", row.table, row.name, row.detail);
        }
    }
    // both conversion directions agree as exact linear maps
    let forward = char_conversion_forward();
    let inverse = char_conversion_inverse(&reg).unwrap();
    for (f, i) in forward.iter().zip(&inverse) {
        assert_eq!(f, i);
    }
    println!(
        "PASS criterion 4: surface-in-P3 degrees, ordinary-character table, stable \
         multi-singularity displays, and both character-conversion directions"
    );
}

#[test]
fn criterion_5_p4_pipelines() {
    let reg = builtin_registry();
    for table in ["9", "10", "11"] {
        let rows = run_tables(&reg, table).unwrap();
        for row in &rows {
            assert!(row.pass, "table {} row {}: {}", row.table, row.name, row.detail);
        }
    }
    println!(
        "PASS criterion 5: surface-in-P4 degrees, complete-intersection forms, and the \
         primal degrees including 6d for the stable swallowtail and 0 for the corank-2 class"
    );
}

#[test]
fn criterion_6_cross_route_identity() {
    let reg = builtin_registry();
    let (via_flag, _) = locus_degree(&reg, Pipeline::P3Surface, "Sharksfin").unwrap();
    let via_multi = stable_multisingularity_chars(&reg).unwrap().crosscaps;
    assert_eq!(via_flag, via_multi);
    println!(
        "PASS criterion 6: crosscap degree agrees between the flag pipeline and the \
         multi-singularity route: {}",
        render_poly(&via_flag)
    );
}

// deterministic pseudo-random stream for the property suites
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 16
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn random_poly(rng: &mut Lcg, vars: &std::sync::Arc<VarTable>, max_exp: i64) -> GradedPoly {
    let nterms = rng.in_range(0, 4);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let exps: Vec<u32> = (0..vars.len())
            .map(|_| rng.in_range(0, max_exp) as u32)
            .collect();
        terms.push((exps, scalar::int(rng.in_range(-5, 5))));
    }
    GradedPoly::from_terms(vars, terms)
}

#[test]
fn criterion_7_property_suites() {
    // ring axioms on >= 1000 randomized small polynomials
    let vars = VarTable::chern(2, 2);
    let mut rng = Lcg(0x5eed);
    for _ in 0..1000 {
        let a = random_poly(&mut rng, &vars, 2);
        let b = random_poly(&mut rng, &vars, 2);
        let c = random_poly(&mut rng, &vars, 2);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    // reduce idempotence on >= 1000 randomized flag-ring elements
    let ring = QuotientRing::flag_pn(3);
    let fvars = ring.vars().clone();
    for _ in 0..1000 {
        let x = random_poly(&mut rng, &fvars, 6);
        let once = ring.reduce(&x);
        assert_eq!(ring.reduce(&once), once);
    }

    // Gysin pushforward values
    let p3 = QuotientRing::flag_pn(3);
    let p = |r: &QuotientRing, s: &str| parse_poly(r.vars(), s).unwrap();
    assert_eq!(p3.gysin_pushforward(&p(&p3, "t^2")), p(&p3, "1"));
    assert_eq!(p3.gysin_pushforward(&p(&p3, "t^3")), p(&p3, "-a"));
    let p4 = QuotientRing::flag_pn(4);
    assert_eq!(p4.gysin_pushforward(&p(&p4, "t^3")), p(&p4, "1"));
    assert_eq!(p4.gysin_pushforward(&p(&p4, "t^4")), p(&p4, "-a"));

    // quotient classes vanish when the bundles agree
    for (m, n) in [(2usize, 2usize), (3, 3)] {
        let table = VarTable::chern(m, n);
        let mut binds = BTreeMap::new();
        for j in 1..=n {
            binds.insert(format!("cp{j}"), GradedPoly::var(&table, &format!("c{j}")));
        }
        for (k, part) in cbar_expansions(m, n, 4).iter().enumerate() {
            let diag = part.substitute(&binds, &table).unwrap();
            assert!(diag.is_zero(), "quotient class {} at c = c'", k + 1);
        }
    }

    // monomial basis agrees with brute-force enumeration up to degree 6
    let t23 = VarTable::chern(2, 3);
    for degree in 0..=6u64 {
        let mut brute = Vec::new();
        for e1 in 0..=6u32 {
            for e2 in 0..=3u32 {
                for e3 in 0..=6u32 {
                    for e4 in 0..=3u32 {
                        for e5 in 0..=2u32 {
                            let w = e1 as u64
                                + 2 * e2 as u64
                                + e3 as u64
                                + 2 * e4 as u64
                                + 3 * e5 as u64;
                            if w == degree {
                                brute.push(vec![e1, e2, e3, e4, e5]);
                            }
                        }
                    }
                }
            }
        }
        let mut basis = monomial_basis(&t23, degree);
        basis.sort();
        brute.sort();
        assert_eq!(basis, brute, "degree {degree}");
    }

    // integrality: every solved Tp and every final degree formula
    let reg = builtin_registry();
    for t in reg.types() {
        if t.solvable {
            let (tp, report) = solve_tp(&reg, t, None).unwrap();
            assert!(tp.is_integral(), "{}", t.name);
            assert!(report.integral);
        }
    }
    for (pipeline, names) in [
        (
            Pipeline::P3Surface,
            vec!["LipsBeaks", "Swallowtail", "Butterfly", "Gulls", "Sharksfin", "Goose"],
        ),
        (Pipeline::P4Surface, vec!["B1", "B2", "H2", "H3", "P3"]),
        (Pipeline::P4Primal, vec!["A3", "A4", "C", "D", "I22"]),
    ] {
        for name in names {
            let (poly, _) = locus_degree(&reg, pipeline, name).unwrap();
            assert!(poly.is_integral(), "{name}");
            if pipeline == Pipeline::P3Surface {
                assert!(ordinary_form(&poly).unwrap().is_integral(), "{name}");
            }
        }
    }
    // the multi-singularity counts clear their declared multiplicities
    let st = stable_multisingularity_chars(&reg).unwrap();
    assert!(st.crosscaps.is_integral());
    assert!(st.double_curve.scale(&scalar::int(2)).is_integral());
    assert!(st.triple_points.scale(&scalar::int(6)).is_integral());

    // empty-locus guard on the dimension-4 flag
    let s3 = reg.lookup(2, 3, "S3").unwrap().known_tp_expanded().unwrap();
    assert!(matches!(
        thom::enumerative::locus_degree_of_tp(&s3, Pipeline::P3Surface, "S3"),
        Err(thom::Error::EmptyLocus { .. })
    ));

    println!(
        "PASS criterion 7: ring axioms and reduce idempotence on 1000 randomized cases, \
         Gysin values, quotient-class vanishing, basis enumeration against brute force, \
         and integrality of all solved polynomials and degree formulas"
    );
}

#[test]
fn full_verify_suite_is_green() {
    let reg = builtin_registry();
    let rows = run_tables(&reg, "all").unwrap();
    let failures: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    assert!(failures.is_empty(), "{failures:#?}");
    println!("PASS: full table verification, {} rows", rows.len());
}
