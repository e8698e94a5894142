use std::collections::BTreeMap;
use std::sync::OnceLock;

use hecke_dirac::clifford::{Clifford, CliffordElement};
use hecke_dirac::field::{q, Q};
use hecke_dirac::hecke::HeckeElement;
use hecke_dirac::poly::Poly;
use hecke_dirac::rootsys::{RootSystemSpec, Series};
use hecke_dirac::setting::Setting;
use hecke_dirac::vogan::{t_add, t_is_zero, t_sub, Mode, TensorAlgebra};
use proptest::prelude::*;

fn a2() -> &'static Setting<Q> {
    static S: OnceLock<Setting<Q>> = OnceLock::new();
    S.get_or_init(|| Setting::equal(RootSystemSpec::new(Series::A, 2), 1).unwrap())
}

fn b2_unequal() -> &'static Setting<Q> {
    static S: OnceLock<Setting<Q>> = OnceLock::new();
    S.get_or_init(|| {
        let params = BTreeMap::from([("long".to_string(), q(1, 1)), ("short".to_string(), q(2, 1))]);
        Setting::new(RootSystemSpec::new(Series::B, 2), &params, 1).unwrap()
    })
}

type Term = (usize, Vec<u8>, i64);

fn terms(order: usize, rank: usize) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec((0..order, prop::collection::vec(0u8..=1, rank), -3i64..=3), 1..4)
}

fn element(s: &Setting<Q>, ts: &[Term]) -> HeckeElement<Q> {
    let h = &s.hecke;
    ts.iter().fold(h.zero(), |acc, (w, m, c)| acc.add(&h.t_poly(*w, Poly::monomial(m.clone(), q(*c, 1)))))
}

fn clifford_element(alg: &Clifford<Q>, coeffs: &[i64]) -> CliffordElement<Q> {
    CliffordElement::from_coeffs(alg.dim(), coeffs.iter().map(|&c| q(c, 1)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hecke_multiplication_is_associative(a in terms(6, 2), b in terms(6, 2), c in terms(6, 2)) {
        let s = a2();
        let h = &s.hecke;
        let (a, b, c) = (element(s, &a), element(s, &b), element(s, &c));
        let left = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
        let right = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
        prop_assert!(left.sub(&right).is_zero());
    }

    #[test]
    fn unequal_parameters_stay_associative(a in terms(8, 2), b in terms(8, 2), c in terms(8, 2)) {
        let s = b2_unequal();
        let h = &s.hecke;
        let (a, b, c) = (element(s, &a), element(s, &b), element(s, &c));
        let left = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
        let right = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
        prop_assert!(left.sub(&right).is_zero());
    }

    #[test]
    fn star_is_an_involutive_antiautomorphism(a in terms(6, 2), b in terms(6, 2)) {
        let s = a2();
        let h = &s.hecke;
        let (a, b) = (element(s, &a), element(s, &b));
        let ab = h.star(&h.mul(&a, &b).unwrap()).unwrap();
        let ba = h.mul(&h.star(&b).unwrap(), &h.star(&a).unwrap()).unwrap();
        prop_assert!(ab.sub(&ba).is_zero());
        prop_assert!(h.star(&h.star(&a).unwrap()).unwrap().sub(&a).is_zero());
    }

    #[test]
    fn cross_relation_matches_naive_normal_ordering(m in prop::collection::vec(0u8..=3, 2), i in 0usize..2, c in 1i64..=4) {
        for s in [a2(), b2_unequal()] {
            let h = &s.hecke;
            let f = Poly::monomial(m.clone(), q(c, 1));
            let fast = h.mul(&h.poly(f.clone()), &h.t_simple(i)).unwrap();
            let naive = h.poly_times_simple_naive(i, &f).unwrap();
            prop_assert!(fast.sub(&naive).is_zero());
        }
    }

    #[test]
    fn clifford_laws(x in prop::collection::vec(-3i64..=3, 8), y in prop::collection::vec(-3i64..=3, 8),
                     z in prop::collection::vec(-3i64..=3, 8), v in prop::collection::vec(-3i64..=3, 3)) {
        let alg = Clifford::new(vec![q(1, 1), q(2, 1), q(1, 3)]);
        let (x, y, z) = (clifford_element(&alg, &x), clifford_element(&alg, &y), clifford_element(&alg, &z));
        let m = |a: &CliffordElement<Q>, b: &CliffordElement<Q>| alg.mul(a, b).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &y).transpose(), m(&y.transpose(), &x.transpose()));
        prop_assert_eq!(m(&x, &y).epsilon(), m(&x.epsilon(), &y.epsilon()));
        let vq: Vec<Q> = v.iter().map(|&c| q(c, 1)).collect();
        let norm: Q = vq.iter().zip(alg.q()).map(|(a, d)| a.clone() * a.clone() * d.clone()).sum();
        let vv = alg.vector(&vq);
        prop_assert_eq!(m(&vv, &vv), alg.scalar(-norm));
    }

    #[test]
    fn dbar_is_an_odd_derivation(
        wa in 0usize..6, ma in prop::collection::vec(0u8..=1, 2), ka in 0usize..4,
        wb in 0usize..6, mb in prop::collection::vec(0u8..=1, 2), kb in 0usize..4,
    ) {
        let s = a2();
        let alg = TensorAlgebra::new(s, Mode::Graded).unwrap();
        let a = alg.basis_element(&(wa, ma, ka));
        let b = alg.basis_element(&(wb, mb, kb));
        let lhs = alg.dbar(&alg.mul(&a, &b).unwrap()).unwrap();
        let first = alg.mul(&alg.dbar(&a).unwrap(), &b).unwrap();
        let second = alg.mul(&a, &alg.dbar(&b).unwrap()).unwrap();
        let rhs = if ka.count_ones() % 2 == 0 { t_add(&first, &second) } else { t_sub(&first, &second) };
        prop_assert!(t_is_zero(&t_sub(&lhs, &rhs)));
        prop_assert!(t_is_zero(&alg.dbar(&alg.dbar(&a).unwrap()).unwrap()));
    }
}
