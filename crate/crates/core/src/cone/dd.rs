//! Double description: intersecting halfspaces while carrying a lineality
//! space.
//!
//! The state is a pair (L, R): an integral basis of the current lineality
//! space and the extreme rays of the current cone modulo that space.  Each
//! ray carries the set of already-processed constraints it satisfies with
//! equality, which drives the adjacency test.

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg::{dot, primitive_vector, Int, IntMat};

pub struct DdResult {
    /// Basis of the lineality space (rows, saturated lattice basis in
    /// Hermite normal form).
    pub lineality: IntMat,
    /// Extreme rays modulo lineality: primitive rows, sorted.
    pub rays: IntMat,
}

struct Ray {
    v: Vec<Int>,
    /// Bitset over processed constraint indices with value zero.
    zero: Vec<u64>,
}

fn bit_and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn bit_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(x, y)| x & !y == 0)
}

/// Intersection of the halfspaces `a * x >= 0` for the rows `a` of
/// `constraints`, inside `R^dim`.
///
/// Returns the lineality space and the extreme rays; the cone is the set of
/// nonnegative combinations of the rays plus the lineality space.
pub fn halfspace_intersection(constraints: &IntMat, dim: usize) -> Result<DdResult> {
    // normalize the constraint list: primitive, deduplicated, sorted
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for r in 0..constraints.rows() {
        if constraints.is_zero_row(r) {
            continue;
        }
        rows.push(primitive_vector(constraints.row(r))?);
    }
    rows.sort();
    rows.dedup();
    let k = rows.len();
    let words = k.div_ceil(64).max(1);

    let mut lineality: Vec<Vec<Int>> =
        (0..dim).map(|i| IntMat::identity(dim).row_vec(i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (t, a) in rows.iter().enumerate() {
        let lin_vals: Vec<Int> = lineality.iter().map(|l| dot(a, l)).collect();
        if let Some(p) = lin_vals.iter().position(|v| !v.is_zero()) {
            // The constraint cuts the lineality space: one basis vector turns
            // into a ray on the positive side, the rest are corrected to lie
            // in the hyperplane, and existing rays are projected along it.
            let mut l0 = lineality.remove(p);
            let mut a_l0 = lin_vals[p].clone();
            if a_l0.is_negative() {
                for x in &mut l0 {
                    *x = -x.clone();
                }
                a_l0 = -a_l0;
            }
            for (i, l) in lineality.iter_mut().enumerate() {
                let ali = if i < p { lin_vals[i].clone() } else { lin_vals[i + 1].clone() };
                if ali.is_zero() {
                    continue;
                }
                let combined: Vec<Int> = l
                    .iter()
                    .zip(&l0)
                    .map(|(li, l0i)| &a_l0 * li - &ali * l0i)
                    .collect();
                *l = primitive_vector(&combined)?;
            }
            for ray in &mut rays {
                let ar = dot(a, &ray.v);
                if !ar.is_zero() {
                    let combined: Vec<Int> = ray
                        .v
                        .iter()
                        .zip(&l0)
                        .map(|(ri, l0i)| &a_l0 * ri - &ar * l0i)
                        .collect();
                    ray.v = primitive_vector(&combined)?;
                }
                ray.zero[t / 64] |= 1 << (t % 64);
            }
            // the pivot vector becomes a ray, tight on everything before t
            let mut zero = vec![0u64; words];
            for earlier in 0..t {
                zero[earlier / 64] |= 1 << (earlier % 64);
            }
            rays.push(Ray { v: l0, zero });
            continue;
        }

        // constraint vanishes on the lineality space: split the rays
        let vals: Vec<Int> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (ray, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    ray.zero[t / 64] |= 1 << (t % 64);
                }
            }
            continue;
        }
        let lin_dim = lineality.len();
        let mut next: Vec<Ray> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for (i, ray) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                let mut kept = Ray { v: ray.v.clone(), zero: ray.zero.clone() };
                if vals[i].is_zero() {
                    kept.zero[t / 64] |= 1 << (t % 64);
                }
                next.push(kept);
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common = bit_and_count(&rays[p].zero, &rays[n].zero);
                // a 2-face needs at least dim - lin_dim - 2 tight constraints
                if common + 2 + lin_dim < dim {
                    continue;
                }
                let meet = bit_and(&rays[p].zero, &rays[n].zero);
                // adjacency: no third ray is tight on the common set
                let adjacent = rays.iter().enumerate().all(|(i, r)| {
                    i == p || i == n || !is_subset(&meet, &r.zero)
                });
                if !adjacent {
                    continue;
                }
                let combined: Vec<Int> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(ni, pi)| &vals[p] * ni - &vals[n] * pi)
                    .collect();
                let mut zero = meet;
                zero[t / 64] |= 1 << (t % 64);
                next.push(Ray { v: primitive_vector(&combined)?, zero });
            }
        }
        rays = next;
    }

    let mut ray_rows: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    ray_rows.sort();
    ray_rows.dedup();
    let rays = if ray_rows.is_empty() {
        IntMat::empty(0, dim)
    } else {
        IntMat::from_rows(ray_rows)
    };
    let lineality = if lineality.is_empty() {
        IntMat::empty(0, dim)
    } else {
        let (h, _) = crate::linalg::hermite_normal_form(&IntMat::from_rows(lineality));
        let nonzero: Vec<Vec<Int>> =
            (0..h.rows()).filter(|&r| !h.is_zero_row(r)).map(|r| h.row_vec(r)).collect();
        if nonzero.is_empty() {
            IntMat::empty(0, dim)
        } else {
            IntMat::from_rows(nonzero)
        }
    };
    Ok(DdResult { lineality, rays })
}
