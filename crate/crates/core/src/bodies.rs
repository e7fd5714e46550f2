//! Newton and symbolic polyhedra of monomial ideals, and the ideals they
//! determine: symbolic powers, real powers and integral closures.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ideal::{self, ExponentVector, MonomialIdeal, PrimeComponent, PrimeDecomposition};
use crate::polyhedron::{
    self, default_box_bound, from_halfspaces, minimal_lattice_points, orthant_halfspaces, Certificate, HalfSpace,
    RationalPolyhedron,
};
use crate::rational::Rat;

/// The classes of ideals for which a symbolic polyhedron is available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealKind {
    /// Squarefree, with its minimal primes.
    Squarefree(PrimeDecomposition),
    /// Given explicitly as `⋂ p^{ω_p}`.
    LinearPower(PrimeDecomposition),
    /// Contains a pure power of every variable.
    MPrimary,
    GeneralUnsupported,
}

impl IdealKind {
    pub fn name(&self) -> &'static str {
        match self {
            IdealKind::Squarefree(_) => "squarefree",
            IdealKind::LinearPower(_) => "linear-power",
            IdealKind::MPrimary => "m-primary",
            IdealKind::GeneralUnsupported => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedIdeal {
    ideal: MonomialIdeal,
    kind: IdealKind,
}

impl ClassifiedIdeal {
    /// Squarefree first, then principal, then m-primary, otherwise unsupported.
    pub fn classify(ideal: MonomialIdeal) -> Result<Self> {
        let kind = if ideal.is_unit() {
            IdealKind::MPrimary
        } else if ideal.is_squarefree() {
            IdealKind::Squarefree(ideal::minimal_primes(&ideal)?)
        } else if ideal.is_principal() {
            // x^a = ⋂ (x_i)^{a_i}
            let a = &ideal.generators()[0];
            let comps = (0..ideal.nvars())
                .filter(|&i| a[i] > 0)
                .map(|i| PrimeComponent::new(vec![i], a[i]))
                .collect::<Result<Vec<_>>>()?;
            IdealKind::LinearPower(PrimeDecomposition::new(ideal.nvars(), comps)?)
        } else if ideal.has_all_pure_powers() {
            IdealKind::MPrimary
        } else {
            IdealKind::GeneralUnsupported
        };
        Ok(ClassifiedIdeal { ideal, kind })
    }

    pub fn from_decomposition(d: PrimeDecomposition) -> Result<Self> {
        let ideal = ideal::expand_decomposition(&d)?;
        Ok(ClassifiedIdeal {
            ideal,
            kind: IdealKind::LinearPower(d),
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn kind(&self) -> &IdealKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    /// The prime decomposition, for squarefree and linear-power ideals.
    pub fn decomposition(&self) -> Option<&PrimeDecomposition> {
        match &self.kind {
            IdealKind::Squarefree(d) | IdealKind::LinearPower(d) => Some(d),
            _ => None,
        }
    }

    pub fn supports_sp(&self) -> bool {
        !matches!(self.kind, IdealKind::GeneralUnsupported)
    }

    pub fn is_squarefree(&self) -> bool {
        matches!(self.kind, IdealKind::Squarefree(_))
            || self.decomposition().is_some_and(PrimeDecomposition::is_squarefree)
    }
}

pub fn newton_polyhedron(i: &MonomialIdeal) -> Result<RationalPolyhedron> {
    polyhedron::hull_of_exponents(i.generators(), i.nvars())
}

/// `Σ_{x_i ∈ p} a_i >= ω_p` for every component, plus the orthant.
pub fn symbolic_halfspaces(d: &PrimeDecomposition) -> Vec<HalfSpace> {
    let n = d.nvars();
    let mut hs = orthant_halfspaces(n);
    for c in d.components() {
        let normal: Vec<i64> = c.indicator(n).into_iter().map(i64::from).collect();
        hs.push(HalfSpace::from_ints(&normal, i64::from(c.multiplicity())));
    }
    hs
}

pub fn symbolic_polyhedron(c: &ClassifiedIdeal) -> Result<RationalPolyhedron> {
    match &c.kind {
        IdealKind::Squarefree(d) | IdealKind::LinearPower(d) => from_halfspaces(&symbolic_halfspaces(d), d.nvars()),
        IdealKind::MPrimary => newton_polyhedron(&c.ideal),
        IdealKind::GeneralUnsupported => Err(Error::UnsupportedIdealClass),
    }
}

fn scaled_point(a: &ExponentVector, k: u32) -> Result<Vec<Rat>> {
    if k == 0 {
        return Err(Error::NonPositiveExponent);
    }
    let k = Rat::from_integer(k.into());
    Ok(a.iter().map(|&x| Rat::from_integer(x.into()) / &k).collect())
}

fn check_len(i: &MonomialIdeal, a: &ExponentVector) -> Result<()> {
    if a.len() != i.nvars() {
        return Err(Error::DimensionMismatch {
            expected: i.nvars(),
            found: a.len(),
        });
    }
    Ok(())
}

/// `x^a` lies in the integral closure of `I^k`.
pub fn member_integral_closure(i: &MonomialIdeal, a: &ExponentVector, k: u32) -> Result<bool> {
    check_len(i, a)?;
    newton_polyhedron(i)?.contains(&scaled_point(a, k)?)
}

/// Convex-combination certificate for `a/k ∈ NP(I)`, or `None` when `x^a` is not in the closure.
pub fn integral_closure_certificate(i: &MonomialIdeal, a: &ExponentVector, k: u32) -> Result<Option<Certificate>> {
    check_len(i, a)?;
    let np = newton_polyhedron(i)?;
    let x = scaled_point(a, k)?;
    if !np.contains(&x)? {
        return Ok(None);
    }
    polyhedron::membership_certificate(&np, &x).map(Some)
}

/// `x^a ∈ I^(k)`. For m-primary ideals the symbolic power is the ordinary power.
pub fn member_symbolic(c: &ClassifiedIdeal, a: &ExponentVector, k: u32) -> Result<bool> {
    check_len(&c.ideal, a)?;
    match &c.kind {
        IdealKind::Squarefree(_) | IdealKind::LinearPower(_) => symbolic_polyhedron(c)?.contains(&scaled_point(a, k)?),
        IdealKind::MPrimary => {
            if k == 0 {
                return Err(Error::NonPositiveExponent);
            }
            Ok(ideal::power(&c.ideal, k)?.contains_monomial(a))
        }
        IdealKind::GeneralUnsupported => Err(Error::UnsupportedIdealClass),
    }
}

pub fn symbolic_power(c: &ClassifiedIdeal, k: u32) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(Error::NonPositiveExponent);
    }
    match &c.kind {
        IdealKind::Squarefree(d) | IdealKind::LinearPower(d) => {
            let sp = polyhedron::scale_int(&symbolic_polyhedron(c)?, u64::from(k))?;
            // decrementing a coordinate above k·max ω keeps every prime condition
            let bound: Vec<u64> = (0..d.nvars())
                .map(|j| u64::from(k) * u64::from(d.max_multiplicity_at(j)))
                .collect();
            MonomialIdeal::new(d.nvars(), minimal_lattice_points(&sp, &bound)?)
        }
        IdealKind::MPrimary => ideal::power(&c.ideal, k),
        IdealKind::GeneralUnsupported => Err(Error::UnsupportedIdealClass),
    }
}

/// The ideal of lattice points of `r·NP(I)`.
pub fn real_power(i: &MonomialIdeal, r: &Rat) -> Result<MonomialIdeal> {
    if !r.is_positive() {
        return Err(Error::NonPositiveExponent);
    }
    let p = polyhedron::scale(&newton_polyhedron(i)?, r)?;
    let bound = default_box_bound(&p)?;
    MonomialIdeal::new(i.nvars(), minimal_lattice_points(&p, &bound)?)
}

pub fn integral_closure(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    real_power(i, &Rat::from_integer(1.into()))
}

/// `NP(I) = SP(I)`.
pub fn np_equals_sp(c: &ClassifiedIdeal) -> Result<bool> {
    polyhedron::equal(&newton_polyhedron(&c.ideal)?, &symbolic_polyhedron(c)?)
}
