//! Graded families of monomial ideals and their Newton–Okounkov bodies.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::bodies::{self, ClassifiedIdeal};
use crate::error::{Error, Result};
use crate::ideal::{self, MonomialIdeal};
use crate::polyhedron::{self, RationalPolyhedron};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `I_k = I^k`
    Power(MonomialIdeal),
    /// `I_k = I^(k)`
    Symbolic(ClassifiedIdeal),
    /// `I_k = ⋂ J_i^k`
    Intersection(Vec<MonomialIdeal>),
    /// `I_k = base^⌈αk + β⌉`
    Ceiling { base: MonomialIdeal, alpha: Rat, beta: Rat },
}

/// `⌈αk + β⌉`
pub fn ceiling_exponent(alpha: &Rat, beta: &Rat, k: u32) -> BigInt {
    (alpha * Rat::from_integer(BigInt::from(k)) + beta).ceil().to_integer()
}

/// With `α = a/b` the exponents satisfy `e_{k+b} = e_k + a`, so
/// `e_p + e_q - e_{p+q}` is periodic in `p` and `q` with period `b`.
fn ceiling_is_subadditive(alpha: &Rat, beta: &Rat) -> Result<bool> {
    let b = alpha.denom().to_u32().ok_or(Error::Overflow)?;
    let e: Vec<BigInt> = (0..=2 * b).map(|k| ceiling_exponent(alpha, beta, k)).collect();
    for p in 1..=b as usize {
        for q in p..=b as usize {
            if &e[p] + &e[q] < e[p + q] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl FamilySpec {
    pub fn nvars(&self) -> usize {
        match self {
            FamilySpec::Power(i) => i.nvars(),
            FamilySpec::Symbolic(c) => c.nvars(),
            FamilySpec::Intersection(js) => js.first().map_or(0, MonomialIdeal::nvars),
            FamilySpec::Ceiling { base, .. } => base.nvars(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Power(_) => "power",
            FamilySpec::Symbolic(_) => "symbolic",
            FamilySpec::Intersection(_) => "intersection",
            FamilySpec::Ceiling { .. } => "ceiling",
        }
    }

    /// Checks the structural requirements of each variant. A ceiling family
    /// must have `α > 0`, `⌈α + β⌉ >= 1` and subadditive exponents, the last
    /// being exactly the graded-family axiom for powers of a proper ideal.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Power(_) => Ok(()),
            FamilySpec::Symbolic(c) => {
                if c.supports_sp() {
                    Ok(())
                } else {
                    Err(Error::UnsupportedIdealClass)
                }
            }
            FamilySpec::Intersection(js) => {
                let first = js.first().ok_or(Error::EmptyList)?;
                match js.iter().find(|j| j.nvars() != first.nvars()) {
                    Some(j) => Err(Error::DimensionMismatch {
                        expected: first.nvars(),
                        found: j.nvars(),
                    }),
                    None => Ok(()),
                }
            }
            FamilySpec::Ceiling { alpha, beta, base } => {
                if !alpha.is_positive() {
                    return Err(Error::InvalidFamily("alpha must be positive".into()));
                }
                if ceiling_exponent(alpha, beta, 1) < BigInt::one() {
                    return Err(Error::InvalidFamily("ceil(alpha + beta) must be at least 1".into()));
                }
                if !base.is_unit() && !ceiling_is_subadditive(alpha, beta)? {
                    return Err(Error::InvalidFamily(
                        "exponents ceil(alpha*k + beta) are not subadditive, so I_p I_q is not contained in I_(p+q)"
                            .into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// The ideal `I_k`.
pub fn member_ideal(f: &FamilySpec, k: u32) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(Error::NonPositiveExponent);
    }
    f.validate()?;
    match f {
        FamilySpec::Power(i) => ideal::power(i, k),
        FamilySpec::Symbolic(c) => bodies::symbolic_power(c, k),
        FamilySpec::Intersection(js) => {
            let powers = js.iter().map(|j| ideal::power(j, k)).collect::<Result<Vec<_>>>()?;
            ideal::intersect(&powers)
        }
        FamilySpec::Ceiling { base, alpha, beta } => {
            let e = ceiling_exponent(alpha, beta, k).to_u32().ok_or(Error::Overflow)?;
            ideal::power(base, e)
        }
    }
}

/// `Δ(F)`, the closure of `⋃ (1/k)·NP(I_k)`, in closed form.
///
/// For a ceiling family `(1/k)·NP(I_k) = (e_k/k)·NP(base)` and these sets
/// grow as `e_k/k` shrinks; subadditivity makes `inf e_k/k = lim e_k/k = α`.
pub fn newton_okounkov_body(f: &FamilySpec) -> Result<RationalPolyhedron> {
    f.validate()?;
    match f {
        FamilySpec::Power(i) => bodies::newton_polyhedron(i),
        FamilySpec::Symbolic(c) => bodies::symbolic_polyhedron(c),
        FamilySpec::Intersection(js) => {
            let nps = js.iter().map(bodies::newton_polyhedron).collect::<Result<Vec<_>>>()?;
            polyhedron::intersect_polyhedra(&nps)
        }
        FamilySpec::Ceiling { base, alpha, .. } => polyhedron::scale(&bodies::newton_polyhedron(base)?, alpha),
    }
}

/// `(1/k)·NP(I_k)`
pub fn scaled_member_body(f: &FamilySpec, k: u32) -> Result<RationalPolyhedron> {
    let np = bodies::newton_polyhedron(&member_ideal(f, k)?)?;
    polyhedron::scale(&np, &Rat::new(BigInt::one(), BigInt::from(k)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationWitness {
    pub c_tested: u32,
    /// The lexicographically largest entry of `outside`.
    pub vertex: Vec<Rat>,
    /// Every vertex of `Δ` outside `(1/c)·NP(I_c)`, sorted.
    pub outside: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub stabilized: bool,
    pub c: Option<u32>,
    pub c_max: u32,
    pub witness: Option<StabilizationWitness>,
}

enum Probe {
    Equal,
    Differs(Vec<Vec<Rat>>),
}

fn probe(f: &FamilySpec, delta: &RationalPolyhedron, c: u32) -> Result<Probe> {
    let q = scaled_member_body(f, c)?;
    if polyhedron::equal(&q, delta)? {
        return Ok(Probe::Equal);
    }
    let mut outside = Vec::new();
    for v in delta.vertices() {
        if !q.contains(v)? {
            outside.push(v.clone());
        }
    }
    if outside.is_empty() {
        // only possible if (1/c)·NP(I_c) is not contained in Δ
        for v in q.vertices() {
            if !delta.contains(v)? {
                outside.push(v.clone());
            }
        }
    }
    Ok(Probe::Differs(outside))
}

/// Smallest `c <= c_max` with `(1/c)·NP(I_c) = Δ(F)`. Candidates are
/// evaluated in parallel batches; the first batch holding a match decides.
pub fn stabilization_check(f: &FamilySpec, c_max: u32) -> Result<StabilizationReport> {
    if c_max == 0 {
        return Err(Error::NonPositiveExponent);
    }
    let delta = newton_okounkov_body(f)?;
    let batch = rayon::current_num_threads().max(1) as u32;
    let mut witness = None;
    let mut start = 1;
    while start <= c_max {
        let end = (start + batch - 1).min(c_max);
        let results = (start..=end)
            .into_par_iter()
            .map(|c| probe(f, &delta, c).map(|p| (c, p)))
            .collect::<Result<Vec<_>>>()?;
        for (c, p) in results {
            match p {
                Probe::Equal => {
                    return Ok(StabilizationReport {
                        stabilized: true,
                        c: Some(c),
                        c_max,
                        witness: None,
                    })
                }
                Probe::Differs(outside) => {
                    witness = Some(StabilizationWitness {
                        c_tested: c,
                        vertex: outside.last().cloned().unwrap_or_default(),
                        outside,
                    })
                }
            }
        }
        start = end + 1;
    }
    Ok(StabilizationReport {
        stabilized: false,
        c: None,
        c_max,
        witness,
    })
}

/// `mdc(Δ(F)) + 1`, only once the family is known to stabilize.
pub fn family_analytic_spread(f: &FamilySpec, c_max: u32) -> Result<usize> {
    let report = stabilization_check(f, c_max)?;
    if !report.stabilized {
        return Err(Error::NotProvenNoetherian {
            c_max: u64::from(c_max),
        });
    }
    Ok(polyhedron::mdc(&newton_okounkov_body(f)?)? + 1)
}

/// Samples `k <= 4`: the integral closure of `I_k` has the same Newton
/// polyhedron as `I_k`, and its scaled body lies in `Δ(F)`.
pub fn closure_family_body_equality(f: &FamilySpec) -> Result<bool> {
    let delta = newton_okounkov_body(f)?;
    for k in 1..=4u32 {
        let ik = member_ideal(f, k)?;
        let closed = bodies::integral_closure(&ik)?;
        let np = bodies::newton_polyhedron(&ik)?;
        let np_closed = bodies::newton_polyhedron(&closed)?;
        if !polyhedron::equal(&np, &np_closed)? {
            return Ok(false);
        }
        let scaled = polyhedron::scale(&np_closed, &Rat::new(BigInt::one(), BigInt::from(k)))?;
        if !scaled.is_subset_of(&delta)? {
            return Ok(false);
        }
    }
    Ok(true)
}
