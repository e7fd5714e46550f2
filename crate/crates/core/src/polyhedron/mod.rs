//! Exact rational up-set polyhedra `P = conv(V) + R^n_{>=0}`.
//!
//! Every polyhedron here lives in the nonnegative orthant and absorbs it, so
//! facet normals are nonnegative, the recession cone is the orthant and the
//! polyhedron is full-dimensional and pointed.

mod bitset;
mod dd;
mod faces;
mod lattice;

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use faces::{compact_by_columns, compact_by_rays};
pub use faces::{decompose_point, faces, mdc, membership_certificate, Certificate, FaceDescriptor};
pub use lattice::{default_box_bound, minimal_lattice_points};

use crate::error::{Error, Result};
use crate::ideal::ExponentVector;
use crate::linalg;
use crate::rational::{dot_int, dot_int_rat, make_primitive, Rat};

static MAX_VERTICES: AtomicUsize = AtomicUsize::new(10_000);

/// Caps the number of intermediate rays a double-description run may hold.
pub fn set_max_vertices(limit: usize) {
    MAX_VERTICES.store(limit.max(1), Ordering::Relaxed);
}

pub fn max_vertices() -> usize {
    MAX_VERTICES.load(Ordering::Relaxed)
}

/// The half-space `<normal, x> >= offset`, stored primitively.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl HalfSpace {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        let mut all = normal;
        all.push(offset);
        make_primitive(&mut all);
        let offset = all.pop().unwrap();
        HalfSpace { normal: all, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Self::new(normal.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(offset))
    }

    /// `x_i >= 0`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut normal = vec![BigInt::zero(); n];
        normal[i] = BigInt::one();
        HalfSpace {
            normal,
            offset: BigInt::zero(),
        }
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn slack(&self, x: &[Rat]) -> Rat {
        dot_int_rat(&self.normal, x) - Rat::from_integer(self.offset.clone())
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn tight_at(&self, x: &[Rat]) -> bool {
        self.slack(x).is_zero()
    }

    fn is_orthant_bound(&self, i: usize) -> bool {
        !self.offset.is_negative()
            && self
                .normal
                .iter()
                .enumerate()
                .all(|(j, x)| if j == i { x.is_positive() } else { x.is_zero() })
    }
}

pub fn orthant_halfspaces(n: usize) -> Vec<HalfSpace> {
    (0..n).map(|i| HalfSpace::coordinate(n, i)).collect()
}

/// A rational up-set polyhedron with matching irredundant H- and V-representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolyhedron {
    nvars: usize,
    facets: Vec<HalfSpace>,
    vertices: Vec<Vec<Rat>>,
    rays: Vec<Vec<BigInt>>,
    dim: usize,
}

impl RationalPolyhedron {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| crate::rational::is_integral(v))
    }

    pub fn has_vertex(&self, v: &[Rat]) -> bool {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).is_ok()
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        self.check_dim(x.len())?;
        Ok(self.facets.iter().all(|h| h.satisfied_by(x)))
    }

    pub fn contains_exponent(&self, a: &ExponentVector) -> Result<bool> {
        self.contains(&to_rat(a))
    }

    /// `r` lies in the recession cone.
    pub fn recedes_along(&self, r: &[BigInt]) -> bool {
        self.facets.iter().all(|h| !dot_int(&h.normal, r).is_negative())
    }

    /// Indices of facets tight at `x`.
    pub fn tight_facets(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].tight_at(x)).collect()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        Ok(())
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RationalPolyhedron) -> Result<bool> {
        other.check_dim(self.nvars)?;
        Ok(self
            .vertices
            .iter()
            .all(|v| other.facets.iter().all(|h| h.satisfied_by(v)))
            && self.rays.iter().all(|r| other.recedes_along(r)))
    }
}

pub fn to_rat(a: &[u32]) -> Vec<Rat> {
    a.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

/// `conv(points) + R^n_{>=0}`.
pub fn hull_up_set(points: &[Vec<Rat>], n: usize) -> Result<RationalPolyhedron> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if p.iter().any(|x| x.is_negative()) {
            return Err(Error::NotUpSet);
        }
    }
    let mut pts: Vec<Vec<Rat>> = points.to_vec();
    pts.sort();
    pts.dedup();
    // a point dominating another point is never a vertex
    let candidates: Vec<Vec<Rat>> = pts
        .iter()
        .filter(|p| {
            !pts.iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();

    // facets of the cone over (p, 1) and (e_j, 0) are extreme rays of its dual
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(candidates.len() + n);
    for j in 0..n {
        let mut r = vec![BigInt::zero(); n + 1];
        r[j] = BigInt::one();
        rows.push(r);
    }
    for p in &candidates {
        let mut h = p.clone();
        h.push(Rat::one());
        rows.push(crate::rational::primitive_integer(&h));
    }
    let dual = dd::extreme_rays(&rows, n + 1, max_vertices())?;
    let mut facets: Vec<HalfSpace> = dual
        .into_iter()
        .filter(|r| r[..n].iter().any(|x| !x.is_zero()))
        .map(|r| HalfSpace::new(r[..n].to_vec(), -&r[n]))
        .collect();
    facets.sort();
    facets.dedup();

    let vertices: Vec<Vec<Rat>> = candidates
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|h| h.tight_at(p))
                .map(|h| h.normal.clone())
                .collect();
            linalg::rank_int(&tight) == n
        })
        .collect();
    let rays = unit_rays(n);
    Ok(RationalPolyhedron {
        nvars: n,
        facets,
        vertices,
        rays,
        dim: n,
    })
}

pub fn hull_of_exponents(points: &[ExponentVector], n: usize) -> Result<RationalPolyhedron> {
    let pts: Vec<Vec<Rat>> = points.iter().map(|a| to_rat(a)).collect();
    hull_up_set(&pts, n)
}

fn unit_rays(n: usize) -> Vec<Vec<BigInt>> {
    let mut rays: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut r = vec![BigInt::zero(); n];
            r[j] = BigInt::one();
            r
        })
        .collect();
    rays.sort();
    rays
}

/// Double-description conversion of an up-set H-representation. Every
/// `x_i >= 0` (or a stronger `x_i >= c`, `c >= 0`) must be present.
pub fn from_halfspaces(hs: &[HalfSpace], n: usize) -> Result<RationalPolyhedron> {
    let mut cons: Vec<HalfSpace> = Vec::with_capacity(hs.len());
    for h in hs {
        if h.normal.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.normal.len(),
            });
        }
        if h.normal.iter().any(|x| x.is_negative()) {
            return Err(Error::NotUpSet);
        }
        if h.normal.iter().all(|x| x.is_zero()) {
            if h.offset.is_positive() {
                return Err(Error::InfeasibleSystem);
            }
            continue;
        }
        cons.push(HalfSpace::new(h.normal.clone(), h.offset.clone()));
    }
    for i in 0..n {
        if !cons.iter().any(|h| h.is_orthant_bound(i)) {
            return Err(Error::MissingOrthantConstraints(i));
        }
    }
    cons.sort();
    cons.dedup();

    // homogenize: <h, x> - offset * t >= 0 and t >= 0
    let mut rows: Vec<Vec<BigInt>> = cons
        .iter()
        .map(|h| {
            let mut r = h.normal.clone();
            r.push(-&h.offset);
            r
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); n + 1];
    t_row[n] = BigInt::one();
    rows.push(t_row);

    let gens = dd::extreme_rays(&rows, n + 1, max_vertices())?;
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for g in &gens {
        if g[n].is_positive() {
            let t = &g[n];
            vertices.push(
                g[..n]
                    .iter()
                    .map(|x| Rat::new(x.clone(), t.clone()))
                    .collect::<Vec<_>>(),
            );
        } else {
            rays.push(g[..n].to_vec());
        }
    }
    if vertices.is_empty() {
        return Err(Error::InfeasibleSystem);
    }

    let facets: Vec<HalfSpace> = cons
        .into_iter()
        .zip(rows.iter())
        .filter(|(_, row)| {
            let tight: Vec<Vec<BigInt>> = gens.iter().filter(|g| dot_int(row, g).is_zero()).cloned().collect();
            linalg::rank_int(&tight) == n
        })
        .map(|(h, _)| h)
        .collect();

    vertices.sort();
    rays.sort();
    Ok(RationalPolyhedron {
        nvars: n,
        facets,
        vertices,
        rays,
        dim: n,
    })
}

/// Same vertex and ray sets, checked through mutual containment.
pub fn equal(p: &RationalPolyhedron, q: &RationalPolyhedron) -> Result<bool> {
    Ok(p.is_subset_of(q)? && q.is_subset_of(p)?)
}

pub fn scale(p: &RationalPolyhedron, t: &Rat) -> Result<RationalPolyhedron> {
    if !t.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let (num, den) = (t.numer(), t.denom());
    let mut facets: Vec<HalfSpace> = p
        .facets
        .iter()
        .map(|h| HalfSpace::new(h.normal.iter().map(|x| x * den).collect(), &h.offset * num))
        .collect();
    facets.sort();
    let mut vertices: Vec<Vec<Rat>> = p.vertices.iter().map(|v| v.iter().map(|x| x * t).collect()).collect();
    vertices.sort();
    Ok(RationalPolyhedron {
        nvars: p.nvars,
        facets,
        vertices,
        rays: p.rays.clone(),
        dim: p.dim,
    })
}

pub fn scale_int(p: &RationalPolyhedron, k: u64) -> Result<RationalPolyhedron> {
    scale(p, &Rat::from_integer(BigInt::from(k)))
}

pub fn intersect_polyhedra(ps: &[RationalPolyhedron]) -> Result<RationalPolyhedron> {
    let first = ps.first().ok_or(Error::EmptyList)?;
    let n = first.nvars;
    let mut hs = orthant_halfspaces(n);
    for p in ps {
        first.check_dim(p.nvars)?;
        hs.extend(p.facets.iter().cloned());
    }
    from_halfspaces(&hs, n)
}

/// The orthant `R^n_{>=0}` itself.
pub fn orthant(n: usize) -> RationalPolyhedron {
    RationalPolyhedron {
        nvars: n,
        facets: orthant_halfspaces(n),
        vertices: vec![vec![Rat::zero(); n]],
        rays: unit_rays(n),
        dim: n,
    }
}
