use hecke_dirac::dirac::DiracContext;
use hecke_dirac::field::{q, Q};
use hecke_dirac::hmod::{
    one_dimensional, principal_series, same_orbit, validate_module, weight_multiset_residual, ModuleRep, OneDimKind,
    Weight,
};
use hecke_dirac::rootsys::{RootSystemSpec, Series};
use hecke_dirac::setting::Setting;

#[test]
fn principal_series_satisfy_the_relations_exactly() {
    for (series, rank) in [(Series::A, 2), (Series::B, 2), (Series::G2, 2), (Series::A, 3)] {
        let s: Setting<Q> = Setting::equal(RootSystemSpec::new(series, rank), 3).unwrap();
        let nu = Weight::Exact((0..rank as i64).map(|i| q(2 * i + 1, 3)).collect());
        let x = principal_series(&s.hecke, &nu).unwrap();
        assert_eq!(x.dim, s.weyl.order());
        let report = validate_module(&s.hecke, &x).unwrap();
        assert!(report.pass, "{:?}", report.failures());
        assert!(report.checks.iter().all(|c| c.exact));
        assert!(weight_multiset_residual(&s.weyl, &x, &nu, 3) < 1e-8);
    }
}

#[test]
fn one_dimensional_modules_round_trip_through_json() {
    let s: Setting<Q> = Setting::equal(RootSystemSpec::new(Series::B, 2), 3).unwrap();
    for kind in [OneDimKind::Trivial, OneDimKind::Steinberg] {
        let m = one_dimensional(&s.hecke, kind);
        let back = ModuleRep::from_json(&m.to_json()).unwrap();
        assert_eq!(back.dim, 1);
        assert!(validate_module(&s.hecke, &back).unwrap().pass);
    }
}

#[test]
fn recovered_central_character_lies_in_the_declared_orbit() {
    let s: Setting<Q> = Setting::equal(RootSystemSpec::new(Series::A, 2), 5).unwrap();
    let nu = Weight::Exact(vec![q(1, 2), q(-3, 4)]);
    let x = principal_series(&s.hecke, &nu).unwrap();
    let got: Vec<f64> = x.recover_nu(5).unwrap().iter().map(|z| z.re).collect();
    assert!(same_orbit(&s.weyl, &Weight::Float(got), &nu, 1e-8));
}

#[test]
fn dihedral_five_runs_in_floating_point() {
    let s: Setting<f64> = Setting::equal(RootSystemSpec::dihedral(5), 3).unwrap();
    assert_eq!(s.weyl.order(), 10);
    assert_eq!(s.cover.order(), 20);
    let x = principal_series(&s.hecke, &Weight::Float(vec![0.3, -0.7])).unwrap();
    assert!(validate_module(&s.hecke, &x).unwrap().pass);
    for spin in s.spin_modules().unwrap() {
        let ctx = DiracContext::new(&s, &x, spin).unwrap();
        assert!(ctx.dirac_square_residual() < 1e-9);
    }
}
