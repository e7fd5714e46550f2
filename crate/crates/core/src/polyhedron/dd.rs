//! Incremental double description for pointed polyhedral cones
//! `{y : <a_i, y> >= 0}` with integer constraint rows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::bitset::BitSet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot_int, make_primitive, Rat};

struct Ray {
    coords: Vec<BigInt>,
    zeros: BitSet,
}

/// Extreme rays (primitive integer vectors) of the cone cut out by `rows`.
/// The rows must span the ambient space, i.e. the cone is pointed.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize, limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = rows.len();
    let mut order: Vec<usize> = (0..m).collect();
    // sparse constraints first keeps intermediate ray sets small
    order.sort_by_key(|&i| (rows[i].iter().filter(|x| !x.is_zero()).count(), i));

    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    let mut basis_rows: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for &i in &order {
        if basis.len() == dim {
            break;
        }
        basis_rows.push(rows[i].clone());
        if linalg::rank_int(&basis_rows) == basis_rows.len() {
            basis.push(i);
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < dim {
        return Err(Error::NotUpSet);
    }

    let mat: Vec<Vec<Rat>> = basis_rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let inv = linalg::inverse(&mat).ok_or(Error::NotUpSet)?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|col| {
            let column: Vec<Rat> = (0..dim).map(|r| inv[r][col].clone()).collect();
            let coords = crate::rational::primitive_integer(&column);
            let mut zeros = BitSet::new(m);
            for (k, &b) in basis.iter().enumerate() {
                if k != col {
                    zeros.insert(b);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    for &ci in order.iter().filter(|i| !basis.contains(i)) {
        let row = &rows[ci];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(ci);
                }
            }
            continue;
        }

        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != n && common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[n];
                let mut coords: Vec<BigInt> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xn, xp)| a * xn + &b * xp)
                    .collect();
                make_primitive(&mut coords);
                let mut zeros = common;
                zeros.insert(ci);
                created.push(Ray { coords, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_positive() {
                next.push(r);
            } else if v.is_zero() {
                let mut r = r;
                r.zeros.insert(ci);
                next.push(r);
            }
        }
        next.extend(created);
        if next.len() > limit {
            return Err(Error::TooManyVertices { limit });
        }
        rays = next;
    }

    Ok(rays.into_iter().map(|r| r.coords).collect())
}
