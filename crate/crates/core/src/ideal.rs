//! Monomial ideals as antichains of exponent vectors.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Exponent vector `a` of the monomial `x^a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// `self` divides `other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Bitmask of the variables with positive exponent.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }
}

impl Deref for ExponentVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A nonzero monomial ideal, stored by its minimal generators in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`; the generating set is minimalized.
    pub fn new(nvars: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for g in &gens {
            if g.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.len(),
                });
            }
        }
        minimalize(gens)
    }

    pub fn from_vecs(nvars: usize, gens: &[&[u32]]) -> Result<Self> {
        Self::new(nvars, gens.iter().map(|g| ExponentVector(g.to_vec())).collect())
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Self {
        let gens = (0..nvars).rev().map(|i| ExponentVector::unit(nvars, i)).collect();
        MonomialIdeal { nvars, gens }
    }

    /// The prime ideal generated by the given variables.
    pub fn prime(nvars: usize, vars: &[usize]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::EmptyPrime);
        }
        Self::new(nvars, vars.iter().map(|&i| ExponentVector::unit(nvars, i)).collect())
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![ExponentVector::zeros(nvars)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(ExponentVector::is_squarefree)
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// Some pure power `x_i^m` lies in the ideal for every variable.
    pub fn has_all_pure_powers(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.gens
                .iter()
                .any(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
    }

    pub fn contains_monomial(&self, a: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(a))
    }

    /// Ideal containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains_monomial(g))
    }

    fn check_same_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }
}

/// Canonical minimal generating set of the ideal generated by `gens`.
pub fn minimalize(gens: Vec<ExponentVector>) -> Result<MonomialIdeal> {
    let nvars = match gens.first() {
        Some(g) => g.len(),
        None => return Err(Error::EmptyGeneratorSet),
    };
    if let Some(g) = gens.iter().find(|g| g.len() != nvars) {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: g.len(),
        });
    }
    let mut seen = HashSet::with_capacity(gens.len());
    let mut cands: Vec<ExponentVector> = gens.into_iter().filter(|g| seen.insert(g.clone())).collect();
    // a divisor has total degree at most that of its multiple
    cands.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    let mut kept: Vec<ExponentVector> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| k.divides(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    Ok(MonomialIdeal { nvars, gens: kept })
}

pub fn multiply(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.check_same_dim(j)?;
    let mut prods = Vec::with_capacity(i.gens.len() * j.gens.len());
    for a in &i.gens {
        for b in &j.gens {
            prods.push(a.add(b));
        }
    }
    minimalize(prods)
}

pub fn power(i: &MonomialIdeal, k: u32) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(Error::NonPositiveExponent);
    }
    let mut acc = i.clone();
    for _ in 1..k {
        acc = multiply(&acc, i)?;
    }
    Ok(acc)
}

pub fn intersect(ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    let (first, rest) = ideals.split_first().ok_or(Error::EmptyList)?;
    let mut acc = first.clone();
    for j in rest {
        acc.check_same_dim(j)?;
        let mut lcms = Vec::with_capacity(acc.gens.len() * j.gens.len());
        for a in &acc.gens {
            for b in &j.gens {
                lcms.push(a.lcm(b));
            }
        }
        acc = minimalize(lcms)?;
    }
    Ok(acc)
}

/// Localize at the monomial prime generated by `vars` and contract back:
/// exponents outside the prime are set to zero.
pub fn saturate_to_prime(i: &MonomialIdeal, vars: &[usize]) -> Result<MonomialIdeal> {
    if vars.is_empty() {
        return Err(Error::EmptyPrime);
    }
    if let Some(&v) = vars.iter().find(|&&v| v >= i.nvars) {
        return Err(Error::DimensionMismatch {
            expected: i.nvars,
            found: v + 1,
        });
    }
    let keep: HashSet<usize> = vars.iter().copied().collect();
    let projected = i
        .gens
        .iter()
        .map(|g| {
            ExponentVector(
                g.iter()
                    .enumerate()
                    .map(|(j, &e)| if keep.contains(&j) { e } else { 0 })
                    .collect(),
            )
        })
        .collect();
    minimalize(projected)
}

/// A monomial prime `p` together with its multiplicity `ω_p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeComponent {
    vars: Vec<usize>,
    multiplicity: u32,
}

impl PrimeComponent {
    pub fn new(mut vars: Vec<usize>, multiplicity: u32) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::EmptyPrime);
        }
        if multiplicity == 0 {
            return Err(Error::InvalidDecomposition("multiplicity must be at least 1".into()));
        }
        vars.sort_unstable();
        vars.dedup();
        Ok(PrimeComponent { vars, multiplicity })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// Indicator vector `v_p` of the prime.
    pub fn indicator(&self, nvars: usize) -> Vec<u32> {
        let mut v = vec![0; nvars];
        for &i in &self.vars {
            v[i] = 1;
        }
        v
    }

    fn is_superset_of(&self, other: &PrimeComponent) -> bool {
        other.vars.iter().all(|v| self.vars.binary_search(v).is_ok())
    }
}

/// An irredundant decomposition `I = ⋂ p^{ω_p}` of a linear-power-type ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeDecomposition {
    nvars: usize,
    components: Vec<PrimeComponent>,
}

impl PrimeDecomposition {
    /// Validates and canonicalizes a decomposition. A component whose prime
    /// contains another component's prime with no larger multiplicity is
    /// implied and dropped; a strictly larger prime with larger multiplicity
    /// is an embedded component and is rejected.
    pub fn new(nvars: usize, components: Vec<PrimeComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDecomposition("no components".into()));
        }
        for c in &components {
            if let Some(&v) = c.vars.iter().find(|&&v| v >= nvars) {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: v + 1,
                });
            }
        }
        let mut comps = components;
        comps.sort();
        comps.dedup();
        let mut kept: Vec<PrimeComponent> = Vec::new();
        for (idx, c) in comps.iter().enumerate() {
            let implied = comps.iter().enumerate().any(|(jdx, d)| {
                jdx != idx
                    && c.is_superset_of(d)
                    && c.multiplicity <= d.multiplicity
                    // equal components were deduplicated; among equal primes keep the larger power
                    && (c.vars != d.vars || c.multiplicity < d.multiplicity)
            });
            if !implied {
                kept.push(c.clone());
            }
        }
        for c in &kept {
            if let Some(d) = kept.iter().find(|d| *d != c && c.is_superset_of(d)) {
                return Err(Error::InvalidDecomposition(format!(
                    "prime {:?} contains the prime {:?}; embedded components are not of linear-power type",
                    c.vars, d.vars
                )));
            }
        }
        Ok(PrimeDecomposition {
            nvars,
            components: kept,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[PrimeComponent] {
        &self.components
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.components.iter().map(|c| c.multiplicity).max().unwrap_or(1)
    }

    /// Largest multiplicity among components whose prime contains variable `j`.
    pub fn max_multiplicity_at(&self, j: usize) -> u32 {
        self.components
            .iter()
            .filter(|c| c.vars.binary_search(&j).is_ok())
            .map(|c| c.multiplicity)
            .max()
            .unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.components.iter().all(|c| c.multiplicity == 1)
    }
}

pub fn expand_decomposition(d: &PrimeDecomposition) -> Result<MonomialIdeal> {
    let powers = d
        .components
        .iter()
        .map(|c| power(&MonomialIdeal::prime(d.nvars, &c.vars)?, c.multiplicity))
        .collect::<Result<Vec<_>>>()?;
    intersect(&powers)
}

/// Minimal primes of a squarefree ideal: the minimal vertex covers of the
/// hypergraph whose edges are the generator supports.
pub fn minimal_primes(i: &MonomialIdeal) -> Result<PrimeDecomposition> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if i.is_unit() {
        return Err(Error::InvalidDecomposition(
            "the unit ideal has no minimal primes".into(),
        ));
    }
    if i.nvars > 64 {
        return Err(Error::DimensionMismatch {
            expected: 64,
            found: i.nvars,
        });
    }
    let edges: Vec<u64> = i.gens.iter().map(ExponentVector::support_mask).collect();
    let covers = minimal_transversals(&edges);
    let comps = covers
        .into_iter()
        .map(|m| PrimeComponent::new((0..i.nvars).filter(|&v| m & (1 << v) != 0).collect(), 1))
        .collect::<Result<Vec<_>>>()?;
    PrimeDecomposition::new(i.nvars, comps)
}

/// Branch on the first edge missed by the partial cover; prune partial covers
/// that already contain a recorded transversal.
pub(crate) fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    fn recurse(edges: &[u64], current: u64, found: &mut Vec<u64>) {
        if found.iter().any(|&f| f & current == f) {
            return;
        }
        match edges.iter().find(|&&e| e & current == 0) {
            None => {
                found.retain(|&f| f & current != current);
                found.push(current);
            }
            Some(&edge) => {
                let mut rest = edge;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    recurse(edges, current | bit, found);
                }
            }
        }
    }
    let mut found = Vec::new();
    recurse(edges, 0, &mut found);
    // a later branch can record a proper subset of an earlier cover
    let all = found.clone();
    found.retain(|&f| !all.iter().any(|&g| g != f && g & f == g));
    found.sort_unstable();
    found.dedup();
    found
}
