mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use nok_core::bodies::{self, ClassifiedIdeal};
use nok_core::invariants;
use nok_core::simis::{self, HilbertElement};

#[test]
fn sgt_within_bound_and_c_divides_lcm() {
    props::sgt_and_lcm().unwrap();
}

#[test]
fn hilbert_basis_matches_brute_force() {
    props::hilbert_brute_force().unwrap();
}

#[test]
fn scaled_vertices_are_basis_elements() {
    for (name, f) in supported_fixtures() {
        let r = simis::hilbert_basis(&f.ideal, None).unwrap();
        let sp = bodies::symbolic_polyhedron(&f.ideal).unwrap();
        let set: BTreeSet<(u32, Vec<u32>)> = r.elements.iter().map(|e| (e.degree, e.exponent.to_vec())).collect();
        for v in sp.vertices() {
            let d = nok_core::rational::denominator_lcm(v);
            let dq = Q::from_integer(d.clone());
            let a: Vec<u32> = v.iter().map(|x| (x * &dq).to_integer().try_into().unwrap()).collect();
            let d: u32 = d.try_into().unwrap();
            assert!(set.contains(&(d, a.clone())), "{name}: missing ({a:?}, {d})");
        }
    }
}

#[test]
fn squarefree_normal_equal_bound() {
    for (name, f) in supported_fixtures() {
        let ell = invariants::analytic_spread(f.ideal.ideal()).unwrap();
        if f.ideal.is_squarefree() && bodies::np_equals_sp(&f.ideal).unwrap() && ell >= 3 {
            let sgt = simis::sgt_exact(&f.ideal).unwrap();
            assert!(sgt as usize <= (ell - 2).max(1), "{name}: sgt {sgt}, ell {ell}");
        }
    }
}

/// Writes `(a, k)` as basis elements of total degree `k` plus a nonnegative vector.
fn decomposes(basis: &[HilbertElement], a: &[u32], k: u32) -> bool {
    if k == 0 {
        return true;
    }
    basis.iter().any(|e| {
        e.degree <= k
            && e.exponent.iter().zip(a).all(|(x, y)| x <= y)
            && decomposes(
                basis,
                &a.iter().zip(e.exponent.iter()).map(|(x, y)| x - y).collect::<Vec<_>>(),
                k - e.degree,
            )
    })
}

#[test]
fn semigroup_completeness() {
    for (name, f) in supported_fixtures() {
        if f.ideal.nvars() > 5 {
            continue;
        }
        let r = simis::hilbert_basis(&f.ideal, None).unwrap();
        for k in 1..=r.completeness_bound.min(4) {
            for g in bodies::symbolic_power(&f.ideal, k).unwrap().generators() {
                assert!(decomposes(&r.elements, g, k), "{name}: {g:?} in degree {k}");
            }
        }
    }
}

#[test]
fn known_generation_types() {
    let sgt = |name: &str| simis::sgt_exact(&fixture(name).ideal).unwrap();
    assert_eq!(sgt("triangle.nok"), 2);
    assert_eq!(sgt("c5.nok"), 3);
    assert_eq!(sgt("gt2sharp.nok"), 2);
    assert_eq!(sgt("principal.nok"), 1);
}

#[test]
fn veronese_and_probe() {
    let t = fixture("triangle.nok").ideal;
    assert!(!simis::veronese_verify(&t, 1, 2).unwrap().holds);
    let c = invariants::vertex_constants(&t).unwrap().c;
    let c: u32 = c.try_into().unwrap();
    assert!(simis::veronese_verify(&t, c, 1).unwrap().holds);
    let s = fixture("cfromsp1.nok").ideal;
    assert!(simis::veronese_verify(&s, 2, 3).unwrap().holds);
    let p = simis::svd_probe(&s, 3).unwrap();
    assert_eq!((p.candidate, p.certified_upper, p.conclusive), (2, 2, true));
    let p = simis::svd_probe(&fixture("c5.nok").ideal, 3).unwrap();
    assert_eq!((p.c, p.candidate), (3, 3));
    // I^(2) needs the extra generator abcdef, so the Veronese degree is not 1
    let p = simis::svd_probe(&fixture("gt2sharp.nok").ideal, 2).unwrap();
    assert_eq!(p.candidate, 2);
    let p = simis::svd_probe(&fixture("principal.nok").ideal, 4).unwrap();
    assert_eq!((p.candidate, p.conclusive), (1, true));
}

#[test]
fn normal_rees_degrees() {
    let one: BTreeSet<u32> = [1].into_iter().collect();
    assert_eq!(
        simis::normal_rees_generator_degrees(fixture("principal.nok").ideal.ideal()).unwrap(),
        one
    );
    let m = fixture("mprimary.nok").ideal;
    assert_eq!(simis::normal_rees_generator_degrees(m.ideal()).unwrap(), one);
    // closure(I^k) = closure(I)^k for k <= 3
    let closure = bodies::integral_closure(m.ideal()).unwrap();
    for k in 1..=3 {
        let lhs = bodies::integral_closure(&nok_core::ideal::power(m.ideal(), k).unwrap()).unwrap();
        assert_eq!(lhs, nok_core::ideal::power(&closure, k).unwrap());
    }
    let t = fixture("triangle.nok").ideal;
    let degrees = simis::normal_rees_generator_degrees(t.ideal()).unwrap();
    let ell = invariants::analytic_spread(t.ideal()).unwrap() as u32;
    assert!(degrees.iter().all(|&d| d <= (ell - 1).max(1)));
    let closed_powers = (1..=3).all(|k| {
        bodies::integral_closure(&nok_core::ideal::power(t.ideal(), k).unwrap()).unwrap()
            == nok_core::ideal::power(t.ideal(), k).unwrap()
    });
    assert_eq!(degrees == one, closed_powers);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_bases_match_brute_force(c in linear_power_strategy(3, 3, 2)) {
        let r = simis::hilbert_basis(&c, Some(3)).unwrap();
        let fast: BTreeSet<(u32, Vec<u32>)> = r.elements.iter().map(|e| (e.degree, e.exponent.to_vec())).collect();
        prop_assert_eq!(fast, brute_hilbert(&c, 3));
        let l = r.degrees.iter().fold(BigInt::from(1), |acc, &d| num_integer::lcm(acc, BigInt::from(d)));
        if r.exhaustive {
            let consts = invariants::vertex_constants(&c).unwrap();
            prop_assert_eq!(&l % &consts.c, BigInt::from(0));
        }
    }

    #[test]
    fn random_squarefree_sgt_bound(i in squarefree_strategy(4, 5)) {
        let c = ClassifiedIdeal::classify(i).unwrap();
        let r = simis::hilbert_basis(&c, None).unwrap();
        let b = invariants::sgt_bounds(&c).unwrap();
        prop_assert!(BigInt::from(r.sgt) <= b.general);
        prop_assert!(r.exhaustive);
    }
}
