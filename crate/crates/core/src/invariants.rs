//! Numeric invariants read off Newton and symbolic polyhedra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bodies::{self, ClassifiedIdeal};
use crate::error::Result;
use crate::ideal::MonomialIdeal;
use crate::polyhedron::{self, RationalPolyhedron};
use crate::rational::{denominator_lcm, lcm_all, Rat};

/// `ℓ(I) = mdc(NP(I)) + 1`.
pub fn analytic_spread(i: &MonomialIdeal) -> Result<usize> {
    Ok(polyhedron::mdc(&bodies::newton_polyhedron(i)?)? + 1)
}

/// `ℓ_s(I) = mdc(SP(I)) + 1`.
pub fn symbolic_analytic_spread(c: &ClassifiedIdeal) -> Result<usize> {
    Ok(polyhedron::mdc(&bodies::symbolic_polyhedron(c)?)? + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexConstants {
    /// `d_i`: lcm of the coordinate denominators of each vertex, in vertex order.
    pub denoms: Vec<BigInt>,
    /// `c = lcm(d_i)`.
    pub c: BigInt,
    /// `D = max(d_i)`.
    pub d_max: BigInt,
}

pub fn constants_of(p: &RationalPolyhedron) -> VertexConstants {
    let denoms: Vec<BigInt> = p.vertices().iter().map(|v| denominator_lcm(v)).collect();
    let c = lcm_all(denoms.iter());
    let d_max = denoms.iter().max().cloned().unwrap_or_else(BigInt::one);
    VertexConstants { denoms, c, d_max }
}

pub fn vertex_constants(c: &ClassifiedIdeal) -> Result<VertexConstants> {
    Ok(constants_of(&bodies::symbolic_polyhedron(c)?))
}

/// `NP(I^(d)) = d·SP(I)`, decided on the vertices of `d·SP(I)`: the
/// inclusion `NP(I^(d)) ⊆ d·SP(I)` always holds, and the reverse holds iff
/// every vertex of `d·SP(I)` is the exponent of a monomial of `I^(d)`.
pub fn verify_np_scaled_sp(c: &ClassifiedIdeal, d: u32) -> Result<bool> {
    let scaled = polyhedron::scale_int(&bodies::symbolic_polyhedron(c)?, u64::from(d))?;
    for v in scaled.vertices() {
        if !v.iter().all(Rat::is_integer) {
            return Ok(false);
        }
        let a = crate::ideal::ExponentVector::new(
            v.iter()
                .map(|x| u32::try_from(x.to_integer()).map_err(|_| crate::Error::Overflow))
                .collect::<Result<Vec<_>>>()?,
        );
        if !bodies::member_symbolic(c, &a, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same question answered by expanding `I^(d)` and comparing polyhedra.
pub fn verify_np_scaled_sp_expanded(c: &ClassifiedIdeal, d: u32) -> Result<bool> {
    let np = bodies::newton_polyhedron(&bodies::symbolic_power(c, d)?)?;
    let scaled = polyhedron::scale_int(&bodies::symbolic_polyhedron(c)?, u64::from(d))?;
    polyhedron::equal(&np, &scaled)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvdBounds {
    pub lower: BigInt,
    pub upper: BigInt,
    /// `(ℓ_s - 1)·c` fell below `c` and was raised to `c`.
    pub clamped: bool,
}

pub fn svd_bounds(c: &ClassifiedIdeal) -> Result<SvdBounds> {
    let k = vertex_constants(c)?.c;
    let ell_s = symbolic_analytic_spread(c)?;
    Ok(svd_window(&k, ell_s))
}

pub(crate) fn svd_window(c: &BigInt, ell_s: usize) -> SvdBounds {
    let raw = BigInt::from(ell_s - 1) * c;
    let clamped = raw < *c;
    SvdBounds {
        lower: c.clone(),
        upper: if clamped { c.clone() } else { raw },
        clamped,
    }
}

/// `H = (n+1)^{(n+1)/2} / 2^n` and the bound `max{ℓ_s·H - 1, H}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardBound {
    pub h_squared: Rat,
    /// `H` when it is rational.
    pub h: Option<Rat>,
    /// The bound itself when `H` is rational.
    pub bound: Option<Rat>,
    /// Integer part of the bound; sgt is an integer so this is equally valid.
    pub bound_floor: BigInt,
}

pub fn hadamard_bound(n: usize, ell_s: usize) -> HadamardBound {
    let base = BigInt::from(n + 1);
    let num = num_traits::pow(base, n + 1);
    let den = num_traits::pow(BigInt::from(4), n);
    let h_squared = Rat::new(num.clone(), den.clone());
    let root = num.sqrt();
    let ell = BigInt::from(ell_s);
    if &root * &root == num {
        let h = Rat::new(root, num_traits::pow(BigInt::from(2), n));
        let a = Rat::from_integer(ell) * &h - Rat::one();
        let bound = if a > h { a } else { h.clone() };
        let bound_floor = bound.floor().to_integer();
        return HadamardBound {
            h_squared,
            h: Some(h),
            bound: Some(bound),
            bound_floor,
        };
    }
    // floor(t·H) = isqrt(floor(t²·H²)) for t >= 0
    let floor_scaled = |t: &BigInt| (t * t * h_squared.numer()).div_floor(h_squared.denom()).sqrt();
    let h_floor = floor_scaled(&BigInt::one());
    let a_floor = floor_scaled(&ell) - BigInt::one();
    HadamardBound {
        h_squared,
        h: None,
        bound: None,
        bound_floor: a_floor.max(h_floor),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgtBounds {
    /// `max{ℓ_s·D - 1, D}`.
    pub general: BigInt,
    /// `max{ℓ_s - 2, 1}`, for squarefree ideals with `NP = SP`.
    pub np_eq_sp: Option<BigInt>,
    pub hadamard: HadamardBound,
}

pub(crate) fn general_sgt_bound(ell_s: usize, d_max: &BigInt) -> BigInt {
    let a = BigInt::from(ell_s) * d_max - BigInt::one();
    a.max(d_max.clone())
}

pub fn sgt_bounds(c: &ClassifiedIdeal) -> Result<SgtBounds> {
    let ell_s = symbolic_analytic_spread(c)?;
    let consts = vertex_constants(c)?;
    let np_eq_sp = if c.is_squarefree() && bodies::np_equals_sp(c)? {
        Some(BigInt::from(ell_s.saturating_sub(2).max(1)))
    } else {
        None
    };
    Ok(SgtBounds {
        general: general_sgt_bound(ell_s, &consts.d_max),
        np_eq_sp,
        hadamard: hadamard_bound(c.nvars(), ell_s),
    })
}

/// `c` divides the lcm of the generating degrees and every `d_i` is itself a
/// generating degree.
pub fn bound_c_check(c: &ClassifiedIdeal, degrees: &[u32]) -> Result<bool> {
    let consts = vertex_constants(c)?;
    let degs: Vec<BigInt> = degrees.iter().map(|&d| BigInt::from(d)).collect();
    let l = lcm_all(degs.iter());
    let divides = !degs.is_empty() && (&l % &consts.c).is_zero();
    Ok(divides && consts.denoms.iter().all(|d| degs.contains(d)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub nvars: usize,
    pub kind: &'static str,
    pub ell: usize,
    pub ell_s: usize,
    pub constants: VertexConstants,
    pub np_equals_sp: bool,
    pub svd: SvdBounds,
    pub sgt: SgtBounds,
}

pub fn invariant_report(c: &ClassifiedIdeal) -> Result<InvariantReport> {
    let np = bodies::newton_polyhedron(c.ideal())?;
    let sp = bodies::symbolic_polyhedron(c)?;
    let ell = polyhedron::mdc(&np)? + 1;
    let ell_s = polyhedron::mdc(&sp)? + 1;
    let constants = constants_of(&sp);
    let np_equals_sp = polyhedron::equal(&np, &sp)?;
    let svd = svd_window(&constants.c, ell_s);
    let sgt = SgtBounds {
        general: general_sgt_bound(ell_s, &constants.d_max),
        np_eq_sp: (c.is_squarefree() && np_equals_sp).then(|| BigInt::from(ell_s.saturating_sub(2).max(1))),
        hadamard: hadamard_bound(c.nvars(), ell_s),
    };
    Ok(InvariantReport {
        nvars: c.nvars(),
        kind: c.kind().name(),
        ell,
        ell_s,
        constants,
        np_equals_sp,
        svd,
        sgt,
    })
}
