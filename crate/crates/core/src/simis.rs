//! Degree-bounded integral Hilbert bases of the cone over a body placed at
//! height one, generation type and Veronese checks.
//!
//! A lattice point `(a, k)` of the cone with `k >= 1` is reducible iff it is
//! the sum of a basis element `(b, j)`, `1 <= j < k`, and a lattice point of
//! the cone, i.e. `b <= a` and `(a - b)/(k - j)` lies in the body. Points
//! that are not minimal at their height are reducible through the degree-0
//! generators `(e_i, 0)`, so only minimal lattice points are candidates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bodies::{self, ClassifiedIdeal};
use crate::error::{Error, Result};
use crate::ideal::{self, ExponentVector, MonomialIdeal};
use crate::invariants;
use crate::polyhedron::{self, RationalPolyhedron};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HilbertElement {
    pub degree: u32,
    pub exponent: ExponentVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasisReport {
    /// Sorted by degree, then exponent.
    pub elements: Vec<HilbertElement>,
    pub degrees: BTreeSet<u32>,
    pub sgt: u32,
    pub degree_bound_used: u32,
    /// `max{ℓ_s·D - 1, D}`, beyond which no basis element exists.
    pub completeness_bound: u32,
    pub exhaustive: bool,
}

struct IntFacet {
    normal: Vec<i64>,
    offset: i64,
}

fn int_facets(p: &RationalPolyhedron) -> Result<Vec<IntFacet>> {
    p.facets()
        .iter()
        .map(|h| {
            Ok(IntFacet {
                normal: h
                    .normal()
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow))
                    .collect::<Result<_>>()?,
                offset: h.offset().to_i64().ok_or(Error::Overflow)?,
            })
        })
        .collect()
}

fn reduces(facets: &[IntFacet], a: &ExponentVector, k: u32, b: &HilbertElement) -> bool {
    if b.degree >= k || !b.exponent.divides(a) {
        return false;
    }
    let h = i64::from(k - b.degree);
    facets.iter().all(|f| {
        let lhs: i64 = f
            .normal
            .iter()
            .zip(a.iter().zip(b.exponent.iter()))
            .map(|(&w, (&x, &y))| w * (i64::from(x) - i64::from(y)))
            .sum();
        lhs >= h * f.offset
    })
}

/// Minimal lattice points of `k·body` for each `k` in `1..=bound`.
fn candidates_by_degree(body: &RationalPolyhedron, bound: u32) -> Result<Vec<Vec<ExponentVector>>> {
    (1..=bound)
        .into_par_iter()
        .map(|k| {
            let scaled = polyhedron::scale_int(body, u64::from(k))?;
            let bb = polyhedron::default_box_bound(&scaled)?;
            polyhedron::minimal_lattice_points(&scaled, &bb)
        })
        .collect()
}

/// Basis elements of the cone over `body` with degree at most `bound`.
pub fn hilbert_basis_of(body: &RationalPolyhedron, bound: u32) -> Result<Vec<HilbertElement>> {
    let facets = int_facets(body)?;
    let by_degree = candidates_by_degree(body, bound)?;
    let mut basis: Vec<HilbertElement> = Vec::new();
    for (idx, cands) in by_degree.into_iter().enumerate() {
        let k = idx as u32 + 1;
        let accepted: Vec<HilbertElement> = cands
            .into_par_iter()
            .filter(|a| !basis.iter().any(|b| reduces(&facets, a, k, b)))
            .map(|exponent| HilbertElement { degree: k, exponent })
            .collect();
        basis.extend(accepted);
    }
    Ok(basis)
}

fn to_u32(v: &BigInt) -> Result<u32> {
    v.to_u32().ok_or(Error::Overflow)
}

/// Hilbert basis of the Simis cone, up to `degree_bound` (default: the
/// completeness bound `max{ℓ_s·D - 1, D}`).
pub fn hilbert_basis(c: &ClassifiedIdeal, degree_bound: Option<u32>) -> Result<HilbertBasisReport> {
    let sp = bodies::symbolic_polyhedron(c)?;
    let ell_s = polyhedron::mdc(&sp)? + 1;
    let consts = invariants::constants_of(&sp);
    let completeness_bound = to_u32(&invariants::general_sgt_bound(ell_s, &consts.d_max))?;
    let bound = degree_bound.unwrap_or(completeness_bound);
    let elements = hilbert_basis_of(&sp, bound)?;
    let degrees: BTreeSet<u32> = elements.iter().map(|e| e.degree).collect();
    Ok(HilbertBasisReport {
        sgt: degrees.iter().next_back().copied().unwrap_or(0),
        degrees,
        elements,
        degree_bound_used: bound,
        completeness_bound,
        exhaustive: bound >= completeness_bound,
    })
}

/// Maximum generating degree of the symbolic Rees algebra.
pub fn sgt_exact(c: &ClassifiedIdeal) -> Result<u32> {
    Ok(hilbert_basis(c, None)?.sgt)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseCheck {
    pub d: u32,
    pub k_max: u32,
    pub holds: bool,
    /// First `k` with `I^(dk) ≠ (I^(d))^k`.
    pub counterexample: Option<u32>,
}

/// Checks `I^(dk) = (I^(d))^k` for `k <= k_max`. A failure is a genuine
/// counterexample; success is only a bounded certificate.
pub fn veronese_verify(c: &ClassifiedIdeal, d: u32, k_max: u32) -> Result<VeroneseCheck> {
    if d == 0 || k_max == 0 {
        return Err(Error::NonPositiveExponent);
    }
    let base = bodies::symbolic_power(c, d)?;
    let mut pow = base.clone();
    for k in 1..=k_max {
        if k > 1 {
            pow = ideal::multiply(&pow, &base)?;
        }
        let dk = d.checked_mul(k).ok_or(Error::Overflow)?;
        if bodies::symbolic_power(c, dk)? != pow {
            return Ok(VeroneseCheck {
                d,
                k_max,
                holds: false,
                counterexample: Some(k),
            });
        }
    }
    Ok(VeroneseCheck {
        d,
        k_max,
        holds: true,
        counterexample: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvdProbe {
    pub c: u32,
    pub candidate: u32,
    pub certified_upper: u32,
    pub k_max: u32,
    /// Every smaller multiple of `c` failed and the candidate is the proven
    /// upper bound, so the candidate is the Veronese degree.
    pub conclusive: bool,
}

/// Smallest multiple of `c` in `[c, max{(ℓ_s - 1)c, c}]` that passes the bounded Veronese check.
pub fn svd_probe(c: &ClassifiedIdeal, k_max: u32) -> Result<SvdProbe> {
    let consts = invariants::vertex_constants(c)?;
    let ell_s = invariants::symbolic_analytic_spread(c)?;
    let window = invariants::svd_window(&consts.c, ell_s);
    let step = to_u32(&consts.c)?;
    let upper = to_u32(&window.upper)?;
    let mut d = step;
    while d <= upper {
        if veronese_verify(c, d, k_max)?.holds {
            return Ok(SvdProbe {
                c: step,
                candidate: d,
                certified_upper: upper,
                k_max,
                conclusive: d == upper,
            });
        }
        d += step;
    }
    Err(Error::NoCandidate)
}

/// Generating degrees of the normalized Rees algebra, searched up to `max{ℓ(I) - 1, 1}`.
pub fn normal_rees_generator_degrees(i: &MonomialIdeal) -> Result<BTreeSet<u32>> {
    let np = bodies::newton_polyhedron(i)?;
    let ell = polyhedron::mdc(&np)? + 1;
    let bound = (ell.saturating_sub(1)).max(1) as u32;
    Ok(hilbert_basis_of(&np, bound)?.into_iter().map(|e| e.degree).collect())
}
