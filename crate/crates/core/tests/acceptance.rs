//! The acceptance battery. Every criterion prints one PASS/FAIL line.
//!
//! Run with `cargo test -p hecke-dirac --test acceptance -- --nocapture`
//! to see the report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use hecke_dirac::dirac::{bounds_screen, pairing_grid, vogan_check, DiracContext};
use hecke_dirac::field::{q, q_to_string, to_f64, Field, Q};
use hecke_dirac::hmod::{nu_norm2, nu_norm2_exact, one_dimensional, principal_series, OneDimKind, Weight};
use hecke_dirac::linalg::max_abs;
use hecke_dirac::orbits::{length_table, nu_regular};
use hecke_dirac::rootsys::{RootSystem, RootSystemSpec, Series};
use hecke_dirac::setting::Setting;
use hecke_dirac::spincover::SpinCover;
use hecke_dirac::suite::{random_weight, run_suites, Check, Status, SuiteName, SuiteOptions};
use hecke_dirac::vogan::{
    differential_check, graded_decomposition_check, koszul_cohomology, solve_zeta, zeta_casimir_check,
    zeta_character_check,
};
use hecke_dirac::weyl::WeylGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn equal(series: Series, rank: usize) -> Setting<Q> {
    Setting::equal(RootSystemSpec::new(series, rank), SEED).expect("setting")
}

fn unequal(series: Series) -> Setting<Q> {
    let params = BTreeMap::from([("long".to_string(), q(1, 1)), ("short".to_string(), q(2, 1))]);
    Setting::new(RootSystemSpec::new(series, 2), &params, SEED).expect("setting")
}

/// A1, A2, B2, G2 with equal parameters, then B2 and G2 with (long, short) = (1, 2).
fn rank_two_battery() -> Vec<(String, Setting<Q>)> {
    vec![
        ("A1".into(), equal(Series::A, 1)),
        ("A2".into(), equal(Series::A, 2)),
        ("B2".into(), equal(Series::B, 2)),
        ("G2".into(), equal(Series::G2, 2)),
        ("B2(1,2)".into(), unequal(Series::B)),
        ("G2(1,2)".into(), unequal(Series::G2)),
    ]
}

fn only(suite: SuiteName) -> SuiteOptions {
    SuiteOptions { suites: vec![suite], ..SuiteOptions::default() }
}

fn failing(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.name.clone()).collect()
}

fn hecke_identities() -> Outcome {
    let start = Instant::now();
    let required = [
        "cross_relation",
        "conjugation_formula",
        "casimir_central",
        "omega_tilde_skew",
        "omega_tilde_equivariant",
        "omega_tilde_commutator",
        "casimir_tilde_formula",
    ];
    let mut problems = Vec::new();
    for (label, s) in rank_two_battery() {
        let checks = run_suites(&s, &only(SuiteName::Hecke)).expect("hecke suite");
        let bad = failing(&checks);
        if !bad.is_empty() {
            problems.push(format!("{label}: {bad:?}"));
        }
        if let Some(c) = checks.iter().find(|c| !c.exact) {
            problems.push(format!("{label}: {} not exact", c.name));
        }
        for name in required {
            if !checks.iter().any(|c| c.name == name) {
                problems.push(format!("{label}: {name} missing"));
            }
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(30);
    Outcome::new(problems.is_empty() && fast, format!("{elapsed:.2?}; problems {problems:?}"))
}

fn clifford_suite() -> Outcome {
    let mut settings = rank_two_battery();
    settings.push(("A3".into(), equal(Series::A, 3)));
    settings.push(("B3".into(), equal(Series::B, 3)));
    let start = Instant::now();
    let mut problems = Vec::new();
    for (label, s) in &settings {
        let checks = run_suites(s, &only(SuiteName::Clifford)).expect("clifford suite");
        let bad = failing(&checks);
        if !bad.is_empty() {
            problems.push(format!("{label}: {bad:?}"));
        }
        let herm = checks.iter().find(|c| c.name == "spin_hermitian").and_then(|c| c.residual);
        if herm.is_none_or(|r| r >= 1e-12) {
            problems.push(format!("{label}: hermitian residual {herm:?}"));
        }
        let n = s.rank();
        let spins = s.spin_modules().expect("spin modules");
        let expected_count = if n % 2 == 1 { 2 } else { 1 };
        if spins.len() != expected_count || spins.iter().any(|m| m.dim() != 1 << (n / 2)) {
            problems.push(format!("{label}: spin modules {} of dim {:?}", spins.len(), spins.first().map(|m| m.dim())));
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(problems.is_empty() && elapsed < Duration::from_secs(5), format!("{elapsed:.2?}; problems {problems:?}"))
}

fn dirac_square() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G2, 2)] {
        let s = equal(series, rank);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut modules =
            vec![one_dimensional(&s.hecke, OneDimKind::Trivial), one_dimensional(&s.hecke, OneDimKind::Steinberg)];
        for _ in 0..20 {
            modules.push(principal_series(&s.hecke, &random_weight::<Q>(rank, &mut rng)).expect("principal series"));
        }
        for spin in s.spin_modules().expect("spin modules") {
            for m in &modules {
                let ctx = DiracContext::new(&s, m, spin.clone()).expect("dirac");
                worst = worst.max(ctx.dirac_square_residual());
                count += 1;
            }
        }
    }
    Outcome::new(worst < 1e-9, format!("max residual {worst:.2e} over {count} operators"))
}

fn sorted_genuine(s: &Setting<Q>) -> Vec<f64> {
    let mut v: Vec<f64> = s.c_tilde.iter().filter(|c| c.genuine).map(|c| c.formula).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn c_values() -> Outcome {
    let a1 = equal(Series::A, 1);
    let a2 = equal(Series::A, 2);
    let close = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9);
    let g1 = sorted_genuine(&a1);
    let g2 = sorted_genuine(&a2);
    let values_ok = close(&g1, &[0.5, 0.5]) && close(&g2, &[0.5, 0.5, 2.0]);
    let routes = [&a1, &a2]
        .iter()
        .flat_map(|s| s.c_tilde.iter())
        .map(|c| (c.formula - c.eigenvalue).abs().max(c.off_scalar))
        .fold(0.0, f64::max);
    let lengths: BTreeSet<Q> = length_table(a2.rs.as_ref(), true)
        .expect("length table")
        .iter()
        .map(|o| o.norm2_exact.clone().expect("exact norm"))
        .collect();
    let c_set: BTreeSet<Q> = g2
        .iter()
        .map(|&x| {
            let r = Q::from_float(x).expect("finite");
            Q::new((r * Q::from_integer(1_000_000.into())).round().to_integer(), 1_000_000.into())
        })
        .collect();
    let table_ok = lengths == BTreeSet::from([q(2, 1), q(1, 2)]) && lengths == c_set;
    Outcome::new(
        values_ok && routes < 1e-8 && table_ok,
        format!(
            "A1 {:?}, A2 {:?}, route gap {routes:.1e}, solvable lengths {:?}",
            g1.iter().map(|x| format!("{x:.9}")).collect::<Vec<_>>(),
            g2.iter().map(|x| format!("{x:.9}")).collect::<Vec<_>>(),
            lengths.iter().map(q_to_string).collect::<Vec<_>>()
        ),
    )
}

fn one_dimensional_vanishing<F: Field>(label: &str, s: &Setting<F>, problems: &mut Vec<String>) -> (f64, f64) {
    let mut entry: f64 = 0.0;
    let mut equality: f64 = 0.0;
    let pair = s.hecke.standard_dual_pair();
    for kind in [OneDimKind::Trivial, OneDimKind::Steinberg] {
        let m = one_dimensional(&s.hecke, kind);
        if F::EXACT {
            let t = m.group_matrices_exact(&s.weyl).expect("exact module");
            for omega in &pair.0 {
                let w = m.act_exact(&t, &s.hecke.omega_tilde(omega)).expect("exact action");
                if !w.is_zero() {
                    problems.push(format!("{label} {kind:?}: ω̃ acts by a nonzero scalar"));
                }
            }
        }
        let n2 = nu_norm2(&s.rs, m.nu.as_ref().expect("declared ν"));
        for spin in s.spin_modules().expect("spin modules") {
            let ctx = DiracContext::new(s, &m, spin).expect("dirac");
            entry = entry.max(max_abs(&ctx.d));
            for e in ctx.full_decomposition().expect("decomposition") {
                equality = equality.max((n2 - e.c_value).abs());
            }
        }
    }
    (entry, equality)
}

fn dirac_on_one_dimensional() -> Outcome {
    let mut problems = Vec::new();
    let mut entry: f64 = 0.0;
    let mut equality: f64 = 0.0;
    let mut systems = Vec::new();
    let mut exact: Vec<(String, Setting<Q>)> = rank_two_battery();
    for (series, rank) in [(Series::A, 3), (Series::A, 4), (Series::B, 3), (Series::C, 3), (Series::D, 4), (Series::F4, 4)] {
        exact.push((RootSystemSpec::new(series, rank).label(), equal(series, rank)));
    }
    for (label, s) in &exact {
        let (e, q) = one_dimensional_vanishing(label, s, &mut problems);
        entry = entry.max(e);
        equality = equality.max(q);
        systems.push(label.clone());
    }
    for m in [5, 8] {
        let s: Setting<f64> = Setting::equal(RootSystemSpec::dihedral(m), SEED).expect("dihedral setting");
        let (e, q) = one_dimensional_vanishing(&s.rs.label(), &s, &mut problems);
        entry = entry.max(e);
        equality = equality.max(q);
        systems.push(s.rs.label());
    }
    Outcome::new(
        problems.is_empty() && entry < 1e-12 && equality < 1e-10,
        format!("max |D| {entry:.1e}, max |⟨ν,ν⟩ − c| {equality:.1e} on {systems:?}; {problems:?}"),
    )
}

/// `π(ω̃)` for ω = α∨ on the A1 principal series with basis `(1⊗1, t⊗1)`:
/// `[[λ, c], [−c, −λ]]`. Returns `(dim ker, dim im, dim ker/(ker ∩ im))`.
fn a1_oracle(lambda: &Q, c: &Q) -> (usize, usize, usize) {
    let m = [[lambda.clone(), c.clone()], [-c.clone(), -lambda.clone()]];
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let zero = m.iter().flatten().all(|x| *x == Q::from_integer(0.into()));
    let rank = if det != Q::from_integer(0.into()) {
        2
    } else if zero {
        0
    } else {
        1
    };
    let square_zero = (0..2).all(|i| {
        (0..2).all(|j| (0..2).map(|k| m[i][k].clone() * m[k][j].clone()).sum::<Q>() == Q::from_integer(0.into()))
    });
    let cohomology = match rank {
        2 => 0,
        0 => 2,
        _ => usize::from(!square_zero),
    };
    (2 - rank, rank, cohomology)
}

fn a1_cohomology() -> (Outcome, Outcome) {
    let s = equal(Series::A, 1);
    let one = q(1, 1);
    let critical_norm = q(1, 2);
    let mut iff_failures = Vec::new();
    let mut oracle_mismatch = Vec::new();
    let mut vogan_ok = true;
    let mut orbit_ok = true;
    let mut worst_length: f64 = 0.0;
    let regular = nu_regular(s.rs.as_ref()).expect("regular orbit");
    let reg = regular.nu.exact().expect("exact").to_vec();
    let orbit: BTreeSet<Vec<Q>> = (0..s.weyl.order()).map(|w| s.weyl.act_on_weight(w, &reg)).collect();
    for k in 0..=40 {
        let lambda = q(-20 + k, 10);
        let nu = Weight::Exact(vec![lambda.clone()]);
        let n2 = nu_norm2_exact(&s.rs, &nu).expect("exact norm");
        assert_eq!(n2, lambda.clone() * lambda.clone() / Q::from_integer(2.into()));
        let x = principal_series(&s.hecke, &nu).expect("principal series");
        let (ok_k, ok_i, ok_h) = a1_oracle(&lambda, &one);
        for spin in s.spin_modules().expect("spin modules") {
            let ctx = DiracContext::new(&s, &x, spin.clone()).expect("dirac");
            let coh = ctx.cohomology();
            if (coh.dim() == 0) != (n2 != critical_norm) {
                iff_failures.push(format!("λ={lambda} spin {}: dim H^D = {}", spin.label(), coh.dim()));
            }
            if (coh.dim_kernel(), coh.dim_image(), coh.dim()) != (ok_k, ok_i, ok_h) {
                oracle_mismatch.push(format!("λ={lambda}"));
            }
            if n2 == critical_norm {
                let v = vogan_check(&ctx).expect("vogan check");
                vogan_ok &= v.pass && !v.vacuous;
                for e in &v.entries {
                    worst_length = worst_length.max(e.length_residual);
                    vogan_ok &= e.orbit_ok == Some(true);
                }
                orbit_ok &= orbit.contains(&vec![lambda.clone()]);
            }
        }
    }
    let supported = oracle_mismatch.is_empty() && vogan_ok && worst_length < 1e-8 && orbit_ok;
    (
        Outcome::new(
            iff_failures.is_empty(),
            format!("dim H^D = 0 iff ⟨ν,ν⟩ ≠ 1/2 on 41 points; counterexamples {iff_failures:?}"),
        ),
        Outcome::new(
            supported,
            format!(
                "2x2 oracle mismatches {oracle_mismatch:?}; vogan length residual {worst_length:.1e}; ν ∈ W·ν_reg exactly: {orbit_ok}"
            ),
        ),
    )
}

fn koszul_suite() -> Outcome {
    let mut problems = Vec::new();
    for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
        let s = equal(series, rank);
        let label = s.rs.label();
        let k = koszul_cohomology(&s, 3).expect("koszul");
        if k.cohomology != vec![1, 0, 0] || !k.pass {
            problems.push(format!("{label}: cohomology {:?}", k.cohomology));
        }
        let d = graded_decomposition_check(&s, 3).expect("decomposition");
        if !d.pass || d.rows.is_empty() || d.refined_rows.is_empty() || d.rho_span != s.weyl.order() {
            problems.push(format!("{label}: decomposition"));
        }
        let r = differential_check(&s, 3, 50).expect("differentials");
        if !(r.pass
            && r.dbar_square_zero
            && r.odd_derivation
            && r.odd_derivation_pairs == 50
            && r.reflection_tensors_closed)
        {
            problems.push(format!("{label}: differentials"));
        }
    }
    Outcome::new(problems.is_empty(), format!("problems {problems:?}"))
}

fn zeta_solver() -> Outcome {
    let mut problems = Vec::new();
    let mut coeff: f64 = 0.0;
    for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
        let s = equal(series, rank);
        let c = zeta_casimir_check(&s).expect("zeta of casimir");
        coeff = coeff.max(c.coefficient_error);
        if !(c.pass && c.rho_equal && c.unique && c.residual == 0.0 && c.coefficient_error < 1e-8) {
            problems.push(format!("{}: ζ(Ω)", s.rs.label()));
        }
    }
    let a2 = equal(Series::A, 2);
    let cubic = a2.hecke.poly(a2.hecke.invariant_of_degree(3).expect("cubic invariant"));
    let omega = a2.hecke.casimir().expect("casimir");
    let omega_sq = a2.hecke.mul(&omega, &omega).expect("product");
    let mut char_err: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for (name, z) in [("cubic", &cubic), ("casimir squared", &omega_sq)] {
        let sol = solve_zeta(&a2, z).expect("zeta");
        residual = residual.max(sol.residual);
        if !(sol.unique && sol.residual < 1e-8) {
            problems.push(format!("A2 {name}: unique {} residual {}", sol.unique, sol.residual));
        }
        for kind in [OneDimKind::Trivial, OneDimKind::Steinberg] {
            let m = one_dimensional(&a2.hecke, kind);
            for spin in a2.spin_modules().expect("spin modules") {
                let r = zeta_character_check(&a2, &m, &spin, z, &sol).expect("character check");
                char_err = char_err.max(r.character_error);
                if !r.pass || r.entries.is_empty() {
                    problems.push(format!("A2 {name} {kind:?}"));
                }
            }
        }
    }
    Outcome::new(
        problems.is_empty() && char_err < 1e-8,
        format!("ζ(Ω) coefficient error {coeff:.1e}; A2 residual {residual:.1e}; χ_ν(z) − σ̃(ζ(z)) {char_err:.1e}; {problems:?}"),
    )
}

/// `⟨ν,ν⟩ = (2/3)(a² + ab + b²)` for pairings `(a, b)` in A2.
fn a2_norm(p: &[Q]) -> Q {
    let (a, b) = (&p[0], &p[1]);
    (a * a + a * b + b * b) * q(2, 3)
}

fn bounds_screening() -> Outcome {
    let s = equal(Series::A, 2);
    let grid = pairing_grid(2, q(2, 1), q(1, 2));
    let rows = bounds_screen(&s, &grid).expect("screen");
    let w_rho: BTreeSet<Vec<Q>> = [(1, 1), (-1, 2), (2, -1), (1, -2), (-2, 1), (-1, -1)]
        .iter()
        .map(|&(a, b)| vec![q(a, 1), q(b, 1)])
        .collect();
    let two = q(2, 1);
    let mut above = 0;
    let mut above_ok = true;
    let mut equality_points = BTreeSet::new();
    let mut norm_ok = true;
    for (nu, row) in grid.iter().zip(&rows) {
        let p = nu.exact().expect("exact grid").to_vec();
        let n2 = a2_norm(&p);
        norm_ok &= (row.nu_norm2 - to_f64(&n2)).abs() < 1e-12;
        if n2 > two {
            above += 1;
            above_ok &= !row.passes && row.bounds.iter().any(|b| b.violated) && row.exceeds_regular == Some(true);
        }
        let at_two = row.bounds.iter().any(|b| b.admissible && b.equality && (b.c_value - 2.0).abs() < 1e-9);
        if row.passes && at_two {
            equality_points.insert(p);
        }
    }
    let equality_ok = equality_points == w_rho;
    Outcome::new(
        above_ok && equality_ok && norm_ok,
        format!(
            "{} grid points, {above} above ⟨ν_r,ν_r⟩ = 2 all excluded: {above_ok}; passing with equality at 2: {} points, equal to W·ν_r: {equality_ok}",
            grid.len(),
            equality_points.len()
        ),
    )
}

fn reproducibility(battery: Duration) -> Outcome {
    let mut identical = true;
    for (series, rank) in [(Series::A, 2), (Series::B, 2)] {
        let run = || {
            let s = Setting::<Q>::equal(RootSystemSpec::new(series, rank), 7).expect("setting");
            serde_json::to_string(&run_suites(&s, &SuiteOptions::default()).expect("suites")).expect("json")
        };
        identical &= run() == run();
    }
    let start = Instant::now();
    let a3 = RootSystem::<Q>::build(RootSystemSpec::new(Series::A, 3)).expect("A3");
    let table = length_table(&a3, false).expect("orbits");
    // ⟨h/2, h/2⟩ from the partition: Σ over parts k of Σ_j ((k − 1 − 2j)/2)²
    let oracle: Vec<Q> = [vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        .iter()
        .map(|parts: &Vec<i64>| {
            parts
                .iter()
                .flat_map(|&k| (0..k).map(move |j| q(k - 1 - 2 * j, 2)))
                .map(|x| x.clone() * x)
                .sum()
        })
        .collect();
    let a3_ok = table.len() == 5 && table.iter().zip(&oracle).all(|(d, o)| d.norm2_exact.as_ref() == Some(o));
    let b3 = RootSystem::<Q>::build(RootSystemSpec::new(Series::B, 3)).expect("B3");
    let b3_order = WeylGroup::new(&b3).expect("B3 group").order();
    let f4 = RootSystem::<Q>::build(RootSystemSpec::new(Series::F4, 4)).expect("F4");
    let f4_weyl = WeylGroup::new(&f4).expect("F4 group");
    let f4_cover = SpinCover::new(&f4, &f4_weyl).expect("F4 cover").order();
    let spot = start.elapsed();
    let pass = identical
        && a3_ok
        && b3_order == 48
        && f4_cover == 2304
        && battery < Duration::from_secs(300)
        && spot < Duration::from_secs(300);
    Outcome::new(
        pass,
        format!(
            "byte-identical suites: {identical}; battery {battery:.1?}; A3 orbit lengths {a3_ok}; |W(B3)| = {b3_order}; |W̃(F4)| = {f4_cover}; spot checks {spot:.1?}"
        ),
    )
}

#[test]
fn acceptance_battery() {
    let start = Instant::now();
    let (cohomology_iff, cohomology_support) = a1_cohomology();
    let mut results: Vec<(&str, &str, Outcome)> = vec![
        ("1", "exact Hecke algebra identities", hecke_identities()),
        ("2", "Clifford algebra and spin cover", clifford_suite()),
        ("3", "square of the Dirac operator", dirac_square()),
        ("4", "c(σ̃) constants", c_values()),
        ("5", "Dirac operator on one-dimensional modules", dirac_on_one_dimensional()),
        ("6a", "A1 Dirac cohomology vanishing pattern", cohomology_iff),
        ("6b", "A1 Dirac cohomology oracle, length and orbit", cohomology_support),
        ("7", "graded Koszul complex", koszul_suite()),
        ("8", "zeta map", zeta_solver()),
        ("9", "bounds screening on A2", bounds_screening()),
    ];
    let battery = start.elapsed();
    results.push(("10", "reproducibility and timing", reproducibility(battery)));
    for (id, name, o) in &results {
        println!("criterion {id:>3} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let known_false = ["6a"];
    let unexpected: Vec<&str> =
        results.iter().filter(|(id, _, o)| !o.pass && !known_false.contains(id)).map(|(id, _, _)| *id).collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
    let a = results.iter().find(|(id, _, _)| *id == "6a").expect("6a");
    assert!(!a.2.pass, "the vanishing pattern changed; update the acceptance notes");
}
