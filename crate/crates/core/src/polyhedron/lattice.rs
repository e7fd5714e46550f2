//! Minimal lattice points of up-set polyhedra.
//!
//! A lattice point `a` of an up-set `P` is minimal iff for every `i` with
//! `a_i > 0` some facet `<h, x> >= o` with `h_i > 0` satisfies
//! `<h, a> - h_i < o`. The search assigns coordinates in order and prunes a
//! branch as soon as an assigned positive coordinate can no longer have such
//! a witness, since later coordinates only increase `<h, a>`.

use num_traits::{Signed, ToPrimitive};

use super::RationalPolyhedron;
use crate::error::{Error, Result};
use crate::ideal::ExponentVector;

struct Facet {
    normal: Vec<i64>,
    offset: i64,
    last: usize,
}

fn to_i64(p: &RationalPolyhedron) -> Result<Vec<Facet>> {
    p.facets()
        .iter()
        .map(|h| {
            let normal = h
                .normal()
                .iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let offset = h.offset().to_i64().ok_or(Error::Overflow)?;
            let last = normal.iter().rposition(|&x| x != 0).unwrap_or(0);
            Ok(Facet { normal, offset, last })
        })
        .collect()
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// A per-coordinate bound that every minimal lattice point respects.
pub fn default_box_bound(p: &RationalPolyhedron) -> Result<Vec<u64>> {
    let facets = to_i64(p)?;
    Ok((0..p.nvars())
        .map(|j| {
            facets
                .iter()
                .filter(|f| f.normal[j] > 0)
                .map(|f| div_ceil(f.offset, f.normal[j]).max(0) as u64)
                .max()
                .unwrap_or(0)
        })
        .collect())
}

struct Search<'a> {
    facets: &'a [Facet],
    n: usize,
    point: Vec<i64>,
    partial: Vec<i64>,
    out: Vec<ExponentVector>,
}

impl Search<'_> {
    fn has_witness(&self, i: usize) -> bool {
        self.facets
            .iter()
            .zip(&self.partial)
            .any(|(f, &s)| f.normal[i] > 0 && s - f.normal[i] < f.offset)
    }

    fn assign(&mut self, j: usize, value: i64) -> Result<()> {
        let delta = value - self.point[j];
        self.point[j] = value;
        for (f, s) in self.facets.iter().zip(self.partial.iter_mut()) {
            if f.normal[j] != 0 {
                *s = f.normal[j]
                    .checked_mul(delta)
                    .and_then(|d| s.checked_add(d))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    fn visit(&mut self, j: usize) -> Result<()> {
        if j == self.n {
            let minimal = (0..self.n).all(|i| self.point[i] == 0 || self.has_witness(i));
            if minimal {
                self.out
                    .push(ExponentVector::new(self.point.iter().map(|&x| x as u32).collect()));
            }
            return Ok(());
        }
        // facets whose support ends at j must hold once j is fixed
        let mut lo = 0i64;
        let mut hi = 0i64;
        for (f, &s) in self.facets.iter().zip(&self.partial) {
            let h = f.normal[j];
            if h <= 0 {
                continue;
            }
            if f.last == j {
                lo = lo.max(div_ceil(f.offset - s, h));
            }
            hi = hi.max(div_floor(f.offset - s + h - 1, h));
        }
        if j + 1 == self.n {
            hi = hi.min(lo);
        }
        let mut value = lo;
        while value <= hi {
            self.assign(j, value)?;
            // a dead witness stays dead as value grows
            let alive = (0..=j).all(|i| self.point[i] == 0 || self.has_witness(i));
            if !alive {
                break;
            }
            self.visit(j + 1)?;
            value += 1;
        }
        self.assign(j, 0)?;
        Ok(())
    }
}

/// The componentwise-minimal points of `P ∩ Z^n_{>=0}`, lexicographically
/// sorted. Fails with `BoundTooSmall` when some minimal point leaves the box.
pub fn minimal_lattice_points(p: &RationalPolyhedron, box_bound: &[u64]) -> Result<Vec<ExponentVector>> {
    let n = p.nvars();
    if box_bound.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: box_bound.len(),
        });
    }
    let facets = to_i64(p)?;
    if facets.iter().any(|f| f.normal.iter().any(|x| x.is_negative())) {
        return Err(Error::NotUpSet);
    }
    let partial = vec![0i64; facets.len()];
    let mut search = Search {
        facets: &facets,
        n,
        point: vec![0; n],
        partial,
        out: Vec::new(),
    };
    search.visit(0)?;
    let mut out = search.out;
    out.sort();
    for a in &out {
        if let Some(j) = (0..n).find(|&j| a[j] as u64 > box_bound[j]) {
            return Err(Error::BoundTooSmall { coordinate: j });
        }
    }
    Ok(out)
}
