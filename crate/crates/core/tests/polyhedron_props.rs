mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use nok_core::polyhedron::{self, HalfSpace, RationalPolyhedron};

fn build(n: usize, rows: &[(Vec<i64>, i64)]) -> RationalPolyhedron {
    let mut hs = polyhedron::orthant_halfspaces(n);
    hs.extend(
        rows.iter()
            .filter(|(h, _)| h.iter().any(|&x| x != 0))
            .map(|(h, o)| HalfSpace::from_ints(h, *o)),
    );
    polyhedron::from_halfspaces(&hs, n).unwrap()
}

fn as_rows(p: &RationalPolyhedron) -> Vec<(Vec<Q>, Q)> {
    p.facets()
        .iter()
        .map(|h| {
            (
                h.normal().iter().map(|x| Q::from_integer(x.clone())).collect(),
                Q::from_integer(h.offset().clone()),
            )
        })
        .collect()
}

#[test]
fn vertex_enumeration_matches_brute_force() {
    props::vertex_oracle(200).unwrap();
}

#[test]
fn triangle_symbolic_polyhedron() {
    let p = build(3, &[(vec![1, 1, 0], 1), (vec![0, 1, 1], 1), (vec![1, 0, 1], 1)]);
    let got: BTreeSet<Vec<Q>> = p.vertices().iter().cloned().collect();
    let expected: BTreeSet<Vec<Q>> = [
        ints(&[1, 1, 0]),
        ints(&[1, 0, 1]),
        ints(&[0, 1, 1]),
        qv(&[(1, 2), (1, 2), (1, 2)]),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, expected);
    assert_eq!(polyhedron::mdc(&p).unwrap(), 1);
}

#[test]
fn rejects_non_up_sets() {
    let mut hs = polyhedron::orthant_halfspaces(2);
    hs.push(HalfSpace::from_ints(&[1, -1], 0));
    assert!(polyhedron::from_halfspaces(&hs, 2).is_err());
    let hs = vec![HalfSpace::from_ints(&[1, 1], 1)];
    assert!(polyhedron::from_halfspaces(&hs, 2).is_err());
    assert!(polyhedron::hull_up_set(&[qv(&[(-1, 1), (0, 1)])], 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hull_round_trip((n, pts) in points_strategy(4, 6, 4)) {
        let pts: Vec<Vec<Q>> = pts.iter().map(|p| ints(p)).collect();
        let p = polyhedron::hull_up_set(&pts, n).unwrap();
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
        for x in &pts {
            prop_assert!(p.contains(x).unwrap());
        }
        let rows = as_rows(&p);
        for (h, o) in &rows {
            prop_assert!(pts.iter().any(|x| {
                let s: Q = h.iter().zip(x).map(|(a, b)| a * b).sum();
                &s == o
            }), "facet tight at no input point");
        }
        let mut all = rows.clone();
        all.extend(orthant_rows(n));
        let brute = brute_vertices(&all, n);
        let got: BTreeSet<Vec<Q>> = p.vertices().iter().cloned().collect();
        prop_assert_eq!(got, brute);
        let q2 = polyhedron::from_halfspaces(p.facets(), n).unwrap();
        prop_assert!(polyhedron::equal(&p, &q2).unwrap());
    }

    #[test]
    fn compactness_criteria_agree((n, rows) in halfspace_strategy(4, 5, 3)) {
        let p = build(n, &rows);
        for f in polyhedron::faces(&p) {
            let by_cols = polyhedron::compact_by_columns(&p, &f.tight_facets);
            let by_rays = polyhedron::compact_by_rays(&p, &f.tight_facets);
            prop_assert_eq!(by_cols, by_rays);
            prop_assert_eq!(by_cols, f.compact);
        }
    }

    #[test]
    fn scaling_round_trip((n, rows) in halfspace_strategy(4, 5, 3), num in 1i64..=5, den in 1i64..=5) {
        let p = build(n, &rows);
        let t = q(num, den);
        let s = polyhedron::scale(&p, &t).unwrap();
        let back = polyhedron::scale(&s, &(Q::from_integer(1.into()) / &t)).unwrap();
        prop_assert!(polyhedron::equal(&p, &back).unwrap());
        let expected: BTreeSet<Vec<Q>> = p.vertices().iter().map(|v| v.iter().map(|x| x * &t).collect()).collect();
        let got: BTreeSet<Vec<Q>> = s.vertices().iter().cloned().collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(polyhedron::mdc(&s).unwrap(), polyhedron::mdc(&p).unwrap());
        prop_assert!(polyhedron::mdc(&p).unwrap() < n.max(1));
    }

    #[test]
    fn decomposition_and_certificates((n, rows) in halfspace_strategy(4, 5, 3), raw in prop::collection::vec((0i64..=12, 1i64..=3), 4)) {
        let p = build(n, &rows);
        let x: Vec<Q> = raw[..n].iter().map(|&(a, b)| q(a, b)).collect();
        if p.contains(&x).unwrap() {
            let (u, w) = polyhedron::decompose_point(&p, &x).unwrap();
            prop_assert!(w.iter().all(|e| *e >= Q::from_integer(0.into())));
            prop_assert!(p.contains(&u).unwrap());
            let sum: Vec<Q> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
            prop_assert_eq!(&sum, &x);
            let cert = polyhedron::membership_certificate(&p, &x).unwrap();
            prop_assert!(cert.verify(&p, &x));
        } else {
            prop_assert!(polyhedron::decompose_point(&p, &x).is_err());
        }
    }

    #[test]
    fn minimal_lattice_points_match_box_scan((n, rows) in halfspace_strategy(4, 4, 3)) {
        let p = build(n, &rows);
        let bb = polyhedron::default_box_bound(&p).unwrap();
        let fast: BTreeSet<Vec<u32>> = polyhedron::minimal_lattice_points(&p, &bb)
            .unwrap()
            .into_iter()
            .map(|a| a.to_vec())
            .collect();
        // scan a box one larger than the claimed bound
        let wide: Vec<u32> = bb.iter().map(|&b| b as u32 + 1).collect();
        let inside = |a: &[u32]| p.contains(&polyhedron::to_rat(a)).unwrap();
        let mut brute = BTreeSet::new();
        let mut a = vec![0u32; n];
        loop {
            if inside(&a)
                && (0..n).all(|i| a[i] == 0 || {
                    let mut b = a.clone();
                    b[i] -= 1;
                    !inside(&b)
                })
            {
                brute.insert(a.clone());
            }
            let Some(i) = (0..n).find(|&i| a[i] < wide[i]) else { break };
            a[i] += 1;
            for x in a.iter_mut().take(i) {
                *x = 0;
            }
        }
        prop_assert_eq!(fast, brute);
    }
}
