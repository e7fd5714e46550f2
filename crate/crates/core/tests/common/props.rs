//! Property checks shared by the per-module suites and the acceptance run.
//! Each returns `Err` with a description of the first counterexample.

use std::cell::RefCell;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use nok_core::bodies::{self, ClassifiedIdeal};
use nok_core::families::{self, FamilySpec};
use nok_core::ideal::{self, MonomialIdeal, PrimeComponent, PrimeDecomposition};
use nok_core::invariants;
use nok_core::parse;
use nok_core::polyhedron::{self, HalfSpace};
use nok_core::simis;

use super::*;

/// A reproducible runner: fixed seed, no persistence files.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn ok_or_fail<T>(r: nok_core::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(e.to_string()))
}

/// Double description against solving every `n`-subset of the constraints.
pub fn vertex_oracle(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&halfspace_strategy(5, 6, 3), |(n, rows)| {
            let rows: Vec<(Vec<i64>, i64)> = rows.into_iter().filter(|(h, _)| h.iter().any(|&x| x != 0)).collect();
            let mut hs = polyhedron::orthant_halfspaces(n);
            hs.extend(rows.iter().map(|(h, o)| HalfSpace::from_ints(h, *o)));
            let p = ok_or_fail(polyhedron::from_halfspaces(&hs, n))?;
            let mut qrows = orthant_rows(n);
            qrows.extend(rows.iter().map(|(h, o)| (ints(h), q(*o, 1))));
            let expected = brute_vertices(&qrows, n);
            let got: BTreeSet<Vec<Q>> = p.vertices().iter().cloned().collect();
            prop_assert_eq!(got.len(), p.vertices().len());
            prop_assert_eq!(got, expected);
            prop_assert_eq!(p.rays().len(), n);
            for (h, o) in &qrows {
                let feasible = p.vertices().iter().all(|v| {
                    let s: Q = h.iter().zip(v).map(|(a, b)| a * b).sum();
                    &s >= o
                });
                prop_assert!(feasible, "vertex violates a defining row");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn scaled_decomposition(d: &PrimeDecomposition, k: u32) -> PrimeDecomposition {
    let comps = d
        .components()
        .iter()
        .map(|p| PrimeComponent::new(p.vars().to_vec(), p.multiplicity() * k).unwrap())
        .collect();
    PrimeDecomposition::new(d.nvars(), comps).unwrap()
}

/// `NP(I^k) = k·NP(I)`, `SP(I^(k)) = k·SP(I)` and `NP(I) ⊆ SP(I)`.
pub fn body_scaling(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(linear_power_strategy(5, 4, 3), 1u32..=4), |(c, k)| {
            let np = ok_or_fail(bodies::newton_polyhedron(c.ideal()))?;
            let sp = ok_or_fail(bodies::symbolic_polyhedron(&c))?;
            prop_assert!(ok_or_fail(np.is_subset_of(&sp))?, "NP not inside SP");

            let np_k = ok_or_fail(bodies::newton_polyhedron(&ok_or_fail(ideal::power(c.ideal(), k))?))?;
            prop_assert!(ok_or_fail(polyhedron::equal(
                &np_k,
                &ok_or_fail(polyhedron::scale_int(&np, k.into()))?
            ))?);

            let d = c.decomposition().unwrap();
            let ck = ok_or_fail(ClassifiedIdeal::from_decomposition(scaled_decomposition(d, k)))?;
            prop_assert_eq!(ck.ideal(), &ok_or_fail(bodies::symbolic_power(&c, k))?);
            let sp_k = ok_or_fail(bodies::symbolic_polyhedron(&ck))?;
            let k_sp = ok_or_fail(polyhedron::scale_int(&sp, k.into()))?;
            prop_assert!(ok_or_fail(polyhedron::equal(&sp_k, &k_sp))?);
            let kq = q(i64::from(k), 1);
            let expected: BTreeSet<Vec<Q>> = brute_vertices(&sp_rows(d), c.nvars())
                .into_iter()
                .map(|v| v.into_iter().map(|x| x * &kq).collect())
                .collect();
            let got: BTreeSet<Vec<Q>> = sp_k.vertices().iter().cloned().collect();
            prop_assert_eq!(got, expected);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `NP(I^(d)) = d·SP(I)` holds exactly when `c | d`, for `d <= 2c`.
/// The expanded route is compared on the small cases.
pub fn np_scaled_sp_divisibility() -> Result<(), String> {
    for (name, f) in supported_fixtures() {
        let consts = invariants::vertex_constants(&f.ideal).map_err(|e| e.to_string())?;
        let c: u32 = consts.c.try_into().map_err(|_| format!("{name}: c too large"))?;
        for d in 1..=2 * c {
            let got = invariants::verify_np_scaled_sp(&f.ideal, d).map_err(|e| e.to_string())?;
            if got != (d % c == 0) {
                return Err(format!("{name}: d={d}, c={c}, check returned {got}"));
            }
            if d <= 3 && f.ideal.nvars() <= 5 {
                let expanded = invariants::verify_np_scaled_sp_expanded(&f.ideal, d).map_err(|e| e.to_string())?;
                if expanded != got {
                    return Err(format!("{name}: d={d}, expanded route disagrees"));
                }
            }
        }
    }
    Ok(())
}

/// `sgt <= max{ℓ_s·D - 1, D}` and `c | lcm(degrees)`.
pub fn sgt_and_lcm() -> Result<(), String> {
    for (name, f) in supported_fixtures() {
        let r = simis::hilbert_basis(&f.ideal, None).map_err(|e| e.to_string())?;
        let bounds = invariants::sgt_bounds(&f.ideal).map_err(|e| e.to_string())?;
        if !r.exhaustive || BigInt::from(r.sgt) > bounds.general {
            return Err(format!("{name}: sgt {} above bound {}", r.sgt, bounds.general));
        }
        let l = r
            .degrees
            .iter()
            .fold(BigInt::from(1), |acc, &d| acc.lcm(&BigInt::from(d)));
        let consts = invariants::vertex_constants(&f.ideal).map_err(|e| e.to_string())?;
        if !(&l % &consts.c == BigInt::from(0)) {
            return Err(format!("{name}: c={} does not divide lcm {l}", consts.c));
        }
    }
    Ok(())
}

/// Degree-bounded Hilbert basis against brute-force irreducibility.
pub fn hilbert_brute_force() -> Result<(), String> {
    for (name, f) in supported_fixtures() {
        let r = simis::hilbert_basis(&f.ideal, None).map_err(|e| e.to_string())?;
        let bound = r.completeness_bound.min(4);
        let fast: BTreeSet<(u32, Vec<u32>)> = r
            .elements
            .iter()
            .filter(|e| e.degree <= bound)
            .map(|e| (e.degree, e.exponent.to_vec()))
            .collect();
        let brute = brute_hilbert(&f.ideal, bound);
        if fast != brute {
            return Err(format!("{name}: bound {bound}: fast {fast:?} vs brute {brute:?}"));
        }
    }
    Ok(())
}

pub fn family_fixtures() -> Vec<(String, FamilySpec)> {
    let dir = manifest_dir().join("families");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".nok"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let f = parse::parse_family_file(&dir.join(&n)).expect(&n);
            (n, f.family)
        })
        .collect()
}

fn family_strategy() -> impl Strategy<Value = FamilySpec> {
    let power = ideal_strategy(3, 3, 2).prop_map(FamilySpec::Power);
    let symbolic = linear_power_strategy(3, 3, 2).prop_map(FamilySpec::Symbolic);
    let intersection = (2usize..=3)
        .prop_flat_map(|n| {
            prop::collection::vec(
                prop::collection::vec(prop::collection::vec(0u32..=2, n), 1..=2).prop_filter_map(
                    "zero generator",
                    move |gs| {
                        MonomialIdeal::new(n, gs.into_iter().map(nok_core::ideal::ExponentVector::new).collect()).ok()
                    },
                ),
                1..=3,
            )
        })
        .prop_map(FamilySpec::Intersection);
    let ceiling = (ideal_strategy(2, 2, 2), 1i64..=3, 1i64..=3, -3i64..=3).prop_filter_map(
        "exponents not subadditive",
        |(base, a, b, beta)| {
            let f = FamilySpec::Ceiling {
                base,
                alpha: q(a, b),
                beta: q(beta, b),
            };
            f.validate().ok().map(|_| f)
        },
    );
    prop_oneof![power, symbolic, intersection, ceiling]
}

/// `I_p·I_q ⊆ I_{p+q}` for `p + q <= 6`.
pub fn graded_axiom(f: &FamilySpec) -> Result<(), String> {
    let members: Vec<MonomialIdeal> = (1..=6)
        .map(|k| families::member_ideal(f, k))
        .collect::<nok_core::Result<_>>()
        .map_err(|e| e.to_string())?;
    for p in 1..=5usize {
        for qq in p..=6 - p {
            let prod = ideal::multiply(&members[p - 1], &members[qq - 1]).map_err(|e| e.to_string())?;
            if !prod.is_subset_of(&members[p + qq - 1]) {
                return Err(format!("{} family: I_{p} I_{qq} not inside I_{}", f.name(), p + qq));
            }
        }
    }
    Ok(())
}

pub fn graded_family_axiom(cases: u32) -> Result<(), String> {
    for (name, f) in family_fixtures() {
        graded_axiom(&f).map_err(|e| format!("{name}: {e}"))?;
    }
    let seen = RefCell::new(BTreeSet::new());
    runner(cases)
        .run(&family_strategy(), |f| {
            seen.borrow_mut().insert(f.name());
            graded_axiom(&f).map_err(fail)?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    // every variant must have been drawn at least once
    let seen = seen.into_inner();
    if seen.len() != 4 {
        return Err(format!("only variants {seen:?} were generated"));
    }
    Ok(())
}
