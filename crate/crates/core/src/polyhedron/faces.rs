//! Face structure: compact faces, `mdc`, and point decompositions.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::bitset::BitSet;
use super::RationalPolyhedron;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot_int, dot_int_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub tight_facets: Vec<usize>,
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub compact: bool,
}

fn vertex_incidence(p: &RationalPolyhedron) -> Vec<BitSet> {
    p.vertices
        .iter()
        .map(|v| {
            let mut s = BitSet::new(p.facets.len());
            for (i, h) in p.facets.iter().enumerate() {
                if h.tight_at(v) {
                    s.insert(i);
                }
            }
            s
        })
        .collect()
}

/// Every tight-facet set that arises as an intersection of vertex incidence
/// sets; each one is the incidence set of a distinct nonempty face.
fn incidence_closure(inc: &[BitSet]) -> Vec<BitSet> {
    let mut seen: HashSet<BitSet> = inc.iter().cloned().collect();
    let mut work: Vec<BitSet> = seen.iter().cloned().collect();
    while let Some(s) = work.pop() {
        for v in inc {
            let t = s.intersection(v);
            if !seen.contains(&t) {
                seen.insert(t.clone());
                work.push(t);
            }
        }
    }
    let mut out: Vec<BitSet> = seen.into_iter().collect();
    out.sort();
    out
}

/// Recession cone is the orthant, so a face is bounded iff every coordinate
/// direction is blocked by some tight facet.
pub fn compact_by_columns(p: &RationalPolyhedron, tight: &[usize]) -> bool {
    (0..p.nvars).all(|j| tight.iter().any(|&i| p.facets[i].normal[j].is_positive()))
}

/// Definitional test: no ray of the polyhedron stays inside the face.
pub fn compact_by_rays(p: &RationalPolyhedron, tight: &[usize]) -> bool {
    !p.rays
        .iter()
        .any(|r| tight.iter().all(|&i| dot_int(&p.facets[i].normal, r).is_zero()))
}

fn affine_dim(points: &[&Vec<Rat>], directions: &[&Vec<BigInt>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|v| v.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rows.extend(
        directions
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()),
    );
    if rows.is_empty() {
        0
    } else {
        linalg::rank(&rows)
    }
}

/// All nonempty faces of `p`.
pub fn faces(p: &RationalPolyhedron) -> Vec<FaceDescriptor> {
    let inc = vertex_incidence(p);
    incidence_closure(&inc)
        .into_iter()
        .map(|t| {
            let tight: Vec<usize> = t.iter().collect();
            let verts: Vec<usize> = (0..inc.len()).filter(|&v| t.is_subset(&inc[v])).collect();
            let rays: Vec<&Vec<BigInt>> = p
                .rays
                .iter()
                .filter(|r| tight.iter().all(|&i| dot_int(&p.facets[i].normal, r).is_zero()))
                .collect();
            let pts: Vec<&Vec<Rat>> = verts.iter().map(|&v| &p.vertices[v]).collect();
            FaceDescriptor {
                dim: affine_dim(&pts, &rays),
                compact: compact_by_columns(p, &tight),
                tight_facets: tight,
                vertices: verts,
            }
        })
        .collect()
}

/// Maximum dimension of a compact face.
pub fn mdc(p: &RationalPolyhedron) -> Result<usize> {
    if p.vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let inc = vertex_incidence(p);
    let mut best = 0;
    for t in incidence_closure(&inc) {
        let tight: Vec<usize> = t.iter().collect();
        if !compact_by_columns(p, &tight) {
            continue;
        }
        let pts: Vec<&Vec<Rat>> = (0..inc.len())
            .filter(|&v| t.is_subset(&inc[v]))
            .map(|v| &p.vertices[v])
            .collect();
        if pts.len() > best + 1 {
            best = best.max(affine_dim(&pts, &[]));
        }
    }
    Ok(best)
}

/// Writes `v = u + w` with `u` on a compact face and `w >= 0`, by sliding
/// `v` down coordinate directions that are free on its current face.
pub fn decompose_point(p: &RationalPolyhedron, v: &[Rat]) -> Result<(Vec<Rat>, Vec<Rat>)> {
    if !p.contains(v)? {
        return Err(Error::PointNotInPolyhedron);
    }
    let n = p.nvars;
    let mut u = v.to_vec();
    let mut w = vec![Rat::zero(); n];
    loop {
        let tight = p.tight_facets(&u);
        let free = (0..n).find(|&j| tight.iter().all(|&i| p.facets[i].normal[j].is_zero()));
        let Some(j) = free else {
            return Ok((u, w));
        };
        // every facet with a positive j-th entry is slack at u
        let step = p
            .facets
            .iter()
            .filter(|h| h.normal[j].is_positive())
            .map(|h| h.slack(&u) / Rat::from_integer(h.normal[j].clone()))
            .min()
            .ok_or(Error::NoVertices)?;
        u[j] -= &step;
        w[j] += &step;
    }
}

/// A point written as a convex combination of vertices plus a nonnegative vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `(vertex index, weight)`; weights are positive and sum to one.
    pub weights: Vec<(usize, Rat)>,
    pub excess: Vec<Rat>,
}

impl Certificate {
    pub fn verify(&self, p: &RationalPolyhedron, x: &[Rat]) -> bool {
        let n = p.nvars;
        let mut acc = self.excess.clone();
        let mut total = Rat::zero();
        for (idx, wt) in &self.weights {
            if wt.is_negative() || *idx >= p.vertices.len() {
                return false;
            }
            total += wt;
            for j in 0..n {
                acc[j] += wt * &p.vertices[*idx][j];
            }
        }
        total == Rat::from_integer(1.into()) && self.excess.iter().all(|e| !e.is_negative()) && acc.as_slice() == x
    }
}

/// Membership certificate for `x ∈ p`: decompose onto a compact face, then
/// peel vertices off that face until the remainder is a vertex.
pub fn membership_certificate(p: &RationalPolyhedron, x: &[Rat]) -> Result<Certificate> {
    let (mut u, excess) = decompose_point(p, x)?;
    let mut weights: Vec<(usize, Rat)> = Vec::new();
    let mut remaining = Rat::from_integer(1.into());
    loop {
        let tight = p.tight_facets(&u);
        let on_face: Vec<usize> = (0..p.vertices.len())
            .filter(|&i| tight.iter().all(|&f| p.facets[f].tight_at(&p.vertices[i])))
            .collect();
        let &vi = on_face.first().ok_or(Error::NoVertices)?;
        let vert = &p.vertices[vi];
        if vert.as_slice() == u.as_slice() {
            weights.push((vi, remaining));
            break;
        }
        // push from the vertex through u to the boundary of the face
        let dir: Vec<Rat> = u.iter().zip(vert).map(|(a, b)| a - b).collect();
        let lambda = p
            .facets
            .iter()
            .filter_map(|h| {
                let d = dot_int_rat(&h.normal, &dir);
                d.is_negative().then(|| -h.slack(vert) / d)
            })
            .min()
            .ok_or(Error::NoVertices)?;
        // u = (1 - 1/lambda) vert + (1/lambda) u'
        let inv = lambda.recip();
        let next: Vec<Rat> = vert.iter().zip(&dir).map(|(a, d)| a + d * &lambda).collect();
        weights.push((vi, &remaining * (Rat::from_integer(1.into()) - &inv)));
        remaining *= inv;
        u = next;
    }
    weights.retain(|(_, w)| !w.is_zero());
    let mut merged: Vec<(usize, Rat)> = Vec::new();
    for (i, w) in weights {
        match merged.iter_mut().find(|(j, _)| *j == i) {
            Some((_, acc)) => *acc += w,
            None => merged.push((i, w)),
        }
    }
    merged.sort_by_key(|(i, _)| *i);
    Ok(Certificate {
        weights: merged,
        excess,
    })
}
