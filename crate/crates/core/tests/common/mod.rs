//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nok_core::bodies::{ClassifiedIdeal, IdealKind};
use nok_core::ideal::{ExponentVector, MonomialIdeal, PrimeComponent, PrimeDecomposition};
use nok_core::parse::{self, IdealFile};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qv(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(n, d)| q(n, d)).collect()
}

pub fn ints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x, 1)).collect()
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> IdealFile {
    parse::parse_ideal_file(&manifest_dir().join("ideals").join(name)).expect(name)
}

/// Every fixture ideal with a symbolic polyhedron.
pub fn supported_fixtures() -> Vec<(String, IdealFile)> {
    let mut names: Vec<String> = std::fs::read_dir(manifest_dir().join("ideals"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".nok"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let f = fixture(&n);
            (n, f)
        })
        .filter(|(_, f)| f.ideal.supports_sp())
        .collect()
}

/// Unique solution of a square system by fraction-exact Gauss-Jordan elimination.
pub fn solve_square(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{x : <h, x> >= o}` by solving every `n`-subset of the
/// constraints as equalities and keeping the feasible unique solutions.
pub fn brute_vertices(hs: &[(Vec<Q>, Q)], n: usize) -> BTreeSet<Vec<Q>> {
    let mut out = BTreeSet::new();
    for idx in combinations(hs.len(), n) {
        let a: Vec<Vec<Q>> = idx.iter().map(|&i| hs[i].0.clone()).collect();
        let b: Vec<Q> = idx.iter().map(|&i| hs[i].1.clone()).collect();
        if let Some(x) = solve_square(&a, &b) {
            let feasible = hs.iter().all(|(h, o)| {
                let s: Q = h.iter().zip(&x).map(|(u, v)| u * v).sum();
                &s >= o
            });
            if feasible {
                out.insert(x);
            }
        }
    }
    out
}

pub fn orthant_rows(n: usize) -> Vec<(Vec<Q>, Q)> {
    (0..n)
        .map(|i| {
            (
                (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect(),
                Q::zero(),
            )
        })
        .collect()
}

/// The defining half-spaces of `SP` read straight off a decomposition.
pub fn sp_rows(d: &PrimeDecomposition) -> Vec<(Vec<Q>, Q)> {
    let n = d.nvars();
    let mut rows = orthant_rows(n);
    for p in d.components() {
        let mut h = vec![Q::zero(); n];
        for &i in p.vars() {
            h[i] = Q::one();
        }
        rows.push((h, q(i64::from(p.multiplicity()), 1)));
    }
    rows
}

/// Minimal vertex covers by checking every subset of variables.
pub fn brute_minimal_primes(i: &MonomialIdeal) -> BTreeSet<Vec<usize>> {
    let n = i.nvars();
    let covers: Vec<u64> = (0u64..1 << n)
        .filter(|&m| {
            i.generators()
                .iter()
                .all(|g| (0..n).any(|j| g[j] > 0 && m & (1 << j) != 0))
        })
        .collect();
    covers
        .iter()
        .filter(|&&m| !covers.iter().any(|&o| o != m && o & m == o))
        .map(|&m| (0..n).filter(|j| m & (1 << j) != 0).collect())
        .collect()
}

/// Non-orthant facets `<h, x> >= 1` of `conv(gens) + R^n_{>=0}`: every
/// choice of generators and coordinate directions pinning down `h`, kept
/// when `h >= 0` and every generator satisfies it.
pub fn up_hull_rows(gens: &[ExponentVector], n: usize) -> Vec<Vec<Q>> {
    let pts: Vec<Vec<Q>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| q(i64::from(x), 1)).collect())
        .collect();
    let mut rows = BTreeSet::new();
    for s in 1..=n.min(pts.len()) {
        for gi in combinations(pts.len(), s) {
            for dirs in combinations(n, n - s) {
                let mut a: Vec<Vec<Q>> = gi.iter().map(|&i| pts[i].clone()).collect();
                let mut b = vec![Q::one(); s];
                for &j in &dirs {
                    a.push((0..n).map(|t| if t == j { Q::one() } else { Q::zero() }).collect());
                    b.push(Q::zero());
                }
                let Some(h) = solve_square(&a, &b) else { continue };
                let valid = h.iter().all(|x| *x >= Q::zero())
                    && pts
                        .iter()
                        .all(|p| h.iter().zip(p).map(|(u, v)| u * v).sum::<Q>() >= Q::one());
                if valid {
                    rows.insert(h);
                }
            }
        }
    }
    rows.into_iter().collect()
}

/// `(a, k)` is a lattice point of the cone over the symbolic polyhedron:
/// prime conditions for decompositions, a hull computed here from the
/// generators for m-primary ideals.
pub struct SymbolicOracle<'a> {
    c: &'a ClassifiedIdeal,
    rows: Vec<Vec<Q>>,
}

impl<'a> SymbolicOracle<'a> {
    pub fn new(c: &'a ClassifiedIdeal) -> Self {
        let rows = match c.kind() {
            IdealKind::MPrimary => up_hull_rows(c.ideal().generators(), c.nvars()),
            _ => Vec::new(),
        };
        SymbolicOracle { c, rows }
    }

    pub fn member(&self, a: &[u32], k: u32) -> bool {
        match self.c.kind() {
            IdealKind::Squarefree(d) | IdealKind::LinearPower(d) => d.components().iter().all(|p| {
                let s: u64 = p.vars().iter().map(|&i| u64::from(a[i])).sum();
                s >= u64::from(k) * u64::from(p.multiplicity())
            }),
            IdealKind::MPrimary => {
                let kq = q(i64::from(k), 1);
                self.rows
                    .iter()
                    .all(|h| h.iter().zip(a).map(|(u, &v)| u * q(i64::from(v), 1)).sum::<Q>() >= kq)
            }
            IdealKind::GeneralUnsupported => panic!("unsupported"),
        }
    }
}

fn box_points(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Largest exponent that can appear in a minimal generator of `I^(k)`, per unit of `k`.
pub fn coordinate_scale(c: &ClassifiedIdeal) -> u32 {
    match c.decomposition() {
        Some(d) => d.max_multiplicity(),
        None => c
            .ideal()
            .generators()
            .iter()
            .flat_map(|g| g.iter().copied())
            .max()
            .unwrap_or(1),
    }
}

/// Irreducible lattice points `(a, k)`, `1 <= k <= bound`, of the cone over
/// the symbolic polyhedron, by testing every split against the definition.
pub fn brute_hilbert(c: &ClassifiedIdeal, bound: u32) -> BTreeSet<(u32, Vec<u32>)> {
    let n = c.nvars();
    let s = coordinate_scale(c);
    let oracle = SymbolicOracle::new(c);
    let member = |a: &[u32], k: u32| oracle.member(a, k);
    let mut out = BTreeSet::new();
    for k in 1..=bound {
        for a in box_points(&vec![k * s; n]) {
            if !member(&a, k) {
                continue;
            }
            // a split off a degree-0 unit vector
            let non_minimal = (0..n).any(|i| {
                a[i] > 0 && {
                    let mut b = a.clone();
                    b[i] -= 1;
                    member(&b, k)
                }
            });
            if non_minimal {
                continue;
            }
            let reducible = (1..k).any(|j| {
                box_points(&a).into_iter().any(|b| {
                    let rest: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                    member(&b, j) && member(&rest, k - j)
                })
            });
            if !reducible {
                out.insert((k, a));
            }
        }
    }
    out
}

pub mod props;

// ---- generators ----

pub fn ideal_strategy(max_vars: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens)
            .prop_map(move |gs| MonomialIdeal::new(n, gs.into_iter().map(ExponentVector::new).collect()).unwrap())
    })
}

pub fn squarefree_strategy(max_vars: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_vars).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 1..=max_gens).prop_map(move |masks| {
            let gens = masks
                .into_iter()
                .map(|m| ExponentVector::new((0..n).map(|j| u32::from(m & (1 << j) != 0)).collect()))
                .collect();
            MonomialIdeal::new(n, gens).unwrap()
        })
    })
}

/// Random irredundant decompositions `⋂ p^{ω_p}`.
pub fn linear_power_strategy(
    max_vars: usize,
    max_comps: usize,
    max_mult: u32,
) -> impl Strategy<Value = ClassifiedIdeal> {
    (2..=max_vars).prop_flat_map(move |n| {
        prop::collection::vec((1u64..(1 << n), 1..=max_mult), 1..=max_comps).prop_filter_map(
            "redundant decomposition",
            move |comps| {
                let comps: Vec<PrimeComponent> = comps
                    .into_iter()
                    .map(|(m, w)| PrimeComponent::new((0..n).filter(|j| m & (1 << j) != 0).collect(), w).unwrap())
                    .collect();
                let d = PrimeDecomposition::new(n, comps).ok()?;
                ClassifiedIdeal::from_decomposition(d).ok()
            },
        )
    })
}

/// Random up-set half-space systems: the orthant plus nonnegative normals.
pub fn halfspace_strategy(
    max_vars: usize,
    max_rows: usize,
    max_entry: i64,
) -> impl Strategy<Value = (usize, Vec<(Vec<i64>, i64)>)> {
    (1..=max_vars).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec(
                (prop::collection::vec(0..=max_entry, n), 1..=2 * max_entry),
                1..=max_rows,
            ),
        )
    })
}

pub fn points_strategy(
    max_vars: usize,
    max_points: usize,
    max_entry: i64,
) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_vars).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0..=max_entry, n), 1..=max_points),
        )
    })
}
