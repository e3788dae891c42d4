//! Hilbert bases of pointed, full-dimensional lattice cones in working
//! coordinates.
//!
//! The computation follows the classical simplicial scheme: build a placing
//! triangulation over the extreme rays, enumerate the lattice points of the
//! half-open parallelepiped of each simplex through the Smith normal form of
//! its ray matrix, and reduce the union of all candidates globally.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::cone::dd::halfspace_intersection;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Int, IntMat, Rat};

/// Upper bound on the total number of parallelepiped points we are willing
/// to enumerate.
const ENUMERATION_LIMIT: u64 = 1_000_000;

/// The minimal generating set of the monoid of lattice points of the working
/// cone, as sorted rows.
pub fn hilbert_basis(cone: &Cone) -> Result<IntMat> {
    let q = cone.working_dim;
    if q == 0 || cone.rays.rows() == 0 {
        return Ok(IntMat::empty(0, q));
    }
    let rays = &cone.rays;
    let simplices = placing_triangulation(rays, q)?;

    // check the total enumeration size before allocating anything
    let mut pieces = Vec::with_capacity(simplices.len());
    let mut total: u64 = 0;
    for s in &simplices {
        let m = rays.select_rows(s);
        let det = linalg::determinant_int(&m)?.abs();
        total = total.saturating_add(u64::try_from(&det).unwrap_or(u64::MAX));
        pieces.push((m, det));
    }
    if total > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { limit: ENUMERATION_LIMIT });
    }

    let mut candidates: BTreeSet<Vec<Int>> = rays.iter_rows().map(|r| r.to_vec()).collect();
    for (m, det) in &pieces {
        if det.is_one() {
            continue;
        }
        for p in parallelepiped_points(m) {
            if p.iter().any(|x| !x.is_zero()) {
                candidates.insert(p);
            }
        }
    }

    // global reduction: an element is kept when no other kept element can be
    // subtracted from it without leaving the cone; smaller degrees first
    let forms = cone.support_forms()?;
    let mut annotated: Vec<(Int, Vec<Int>, Vec<Int>)> = candidates
        .into_iter()
        .map(|x| {
            let vals: Vec<Int> = forms.iter_rows().map(|s| dot(s, &x)).collect();
            let deg = match &cone.grading {
                Some(g) => dot(g, &x),
                None => vals.iter().sum(),
            };
            (deg, x, vals)
        })
        .collect();
    annotated.sort();
    let mut kept: Vec<(Vec<Int>, Vec<Int>)> = Vec::new();
    'next: for (_, x, v) in annotated {
        for (y, w) in &kept {
            if *y != x && v.iter().zip(w).all(|(a, b)| a >= b) {
                continue 'next;
            }
        }
        kept.push((x, v));
    }
    let mut rows: Vec<Vec<Int>> = kept.into_iter().map(|(x, _)| x).collect();
    rows.sort();
    Ok(IntMat::from_rows(rows))
}

/// Triangulate the cone spanned by `rays` (extreme, primitive, full rank) by
/// placing: seed with the first independent subset, then attach every later
/// ray over the boundary facets it can see.
fn placing_triangulation(rays: &IntMat, q: usize) -> Result<Vec<Vec<usize>>> {
    let n = rays.rows();
    let mut seed: Vec<usize> = Vec::new();
    for i in 0..n {
        if seed.len() == q {
            break;
        }
        let mut trial = seed.clone();
        trial.push(i);
        let rows: Vec<&[Int]> = trial.iter().map(|&j| rays.row(j)).collect();
        if linalg::rank_of_row_set(&rows, q) == trial.len() {
            seed = trial;
        }
    }
    debug_assert_eq!(seed.len(), q, "the working cone is full-dimensional");
    let mut in_seed = vec![false; n];
    for &i in &seed {
        in_seed[i] = true;
    }
    let mut placed = seed.clone();
    let mut simplices = vec![seed];
    for t in 0..n {
        if in_seed[t] {
            continue;
        }
        let current = rays.select_rows(&placed);
        let dual = halfspace_intersection(&current, q)?;
        let y = rays.row(t);
        let mut fresh = Vec::new();
        for s in dual.rays.iter_rows() {
            if !dot(s, y).is_negative() {
                continue;
            }
            // boundary facets inside the hyperplane of s, visible from y
            for simplex in &simplices {
                let facet: Vec<usize> = simplex
                    .iter()
                    .copied()
                    .filter(|&i| dot(s, rays.row(i)).is_zero())
                    .collect();
                if facet.len() == q - 1 {
                    let mut next = facet;
                    next.push(t);
                    next.sort_unstable();
                    fresh.push(next);
                }
            }
        }
        debug_assert!(!fresh.is_empty(), "an extreme ray lies outside the partial cone");
        simplices.extend(fresh);
        placed.push(t);
    }
    Ok(simplices)
}

/// Lattice points of the half-open parallelepiped spanned by the rows of the
/// nonsingular matrix `m` (the origin included).
fn parallelepiped_points(m: &IntMat) -> Vec<Vec<Int>> {
    let q = m.rows();
    let (u, d, _) = linalg::smith_normal_form(m);
    let divisors: Vec<Int> = (0..q).map(|i| d[(i, i)].clone()).collect();
    debug_assert!(divisors.iter().all(|x| x.is_positive()));
    let mut points = Vec::new();
    let mut c = vec![Int::zero(); q];
    loop {
        if c.iter().any(|x| !x.is_zero()) {
            // residue representative in simplex coordinates: t = c * D^-1 * U
            let mut t = vec![Rat::zero(); q];
            for i in 0..q {
                if c[i].is_zero() {
                    continue;
                }
                let f = Rat::new(c[i].clone(), divisors[i].clone());
                for (tj, uij) in t.iter_mut().zip(u.row(i)) {
                    *tj += &f * Rat::from_integer(uij.clone());
                }
            }
            // wrap into the half-open box and map back to the lattice
            let mut x = vec![Rat::zero(); q];
            for i in 0..q {
                let frac = &t[i] - t[i].floor();
                if frac.is_zero() {
                    continue;
                }
                for (xj, mij) in x.iter_mut().zip(m.row(i)) {
                    *xj += &frac * Rat::from_integer(mij.clone());
                }
            }
            debug_assert!(x.iter().all(|v| v.is_integer()));
            points.push(x.into_iter().map(|v| v.to_integer()).collect());
        }
        let mut k = 0;
        loop {
            if k == q {
                return points;
            }
            c[k] += Int::one();
            if c[k] < divisors[k] {
                break;
            }
            c[k] = Int::zero();
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeInput;
    use crate::linalg::int;

    fn cone_from_gens(dim: usize, rows: &[&[i64]]) -> Cone {
        let mut inp = ConeInput::new(dim);
        inp.generators = Some(IntMat::from_i64(rows).to_rat());
        Cone::from_input(&inp).unwrap()
    }

    fn sorted_vals(forms: &IntMat, x: &[Int]) -> Vec<Int> {
        let mut v: Vec<Int> = forms.iter_rows().map(|s| dot(s, x)).collect();
        v.sort();
        v
    }

    #[test]
    fn plane_cone_gains_one_interior_element() {
        let c = cone_from_gens(2, &[&[0, 1], &[2, 1]]);
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(hb, IntMat::from_i64(&[&[0, 1], &[1, 1], &[2, 1]]));
    }

    #[test]
    fn index_four_plane_cone() {
        let c = cone_from_gens(2, &[&[1, 0], &[1, 4]]);
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(
            hb,
            IntMat::from_i64(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3], &[1, 4]])
        );
    }

    #[test]
    fn orthant_hilbert_basis_is_the_unit_vectors() {
        let c = cone_from_gens(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(hilbert_basis(&c).unwrap(), IntMat::identity(3).sorted_rows());
    }

    #[test]
    fn smooth_cone_over_the_unit_square_needs_no_extra_elements() {
        let c = cone_from_gens(3, &[&[0, 0, 1], &[0, 1, 1], &[1, 0, 1], &[1, 1, 1]]);
        assert_eq!(hilbert_basis(&c).unwrap(), c.rays.sorted_rows());
    }

    #[test]
    fn simplex_cone_of_index_five_with_paired_form_values() {
        let c = cone_from_gens(4, &[&[0, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], &[5, 1, 1, 1]]);
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(hb.rows(), 8);
        let ray_set: BTreeSet<Vec<Int>> = c.rays.iter_rows().map(|r| r.to_vec()).collect();
        let mut ray_patterns = Vec::new();
        let mut extra_patterns = Vec::new();
        for x in hb.iter_rows() {
            let pat = sorted_vals(c.support_forms().unwrap(), x);
            if ray_set.contains(x) {
                ray_patterns.push(pat);
            } else {
                extra_patterns.push(pat);
            }
        }
        extra_patterns.sort();
        let five = |v: &[i64]| -> Vec<Int> { v.iter().map(|&x| int(x)).collect() };
        assert_eq!(ray_patterns, vec![five(&[0, 0, 0, 5]); 4]);
        assert_eq!(
            extra_patterns,
            vec![
                five(&[1, 1, 4, 4]),
                five(&[1, 1, 4, 4]),
                five(&[2, 2, 3, 3]),
                five(&[2, 2, 3, 3]),
            ]
        );
    }

    #[test]
    fn simplex_cone_of_index_five_with_distinct_form_values() {
        let c = cone_from_gens(4, &[&[0, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], &[5, 2, 1, 1]]);
        let hb = hilbert_basis(&c).unwrap();
        assert_eq!(hb.rows(), 8);
        let ray_set: BTreeSet<Vec<Int>> = c.rays.iter_rows().map(|r| r.to_vec()).collect();
        for x in hb.iter_rows() {
            let pat = sorted_vals(c.support_forms().unwrap(), x);
            if ray_set.contains(x) {
                assert_eq!(pat, [int(0), int(0), int(0), int(5)]);
            } else {
                assert_eq!(pat, [int(1), int(2), int(3), int(4)]);
            }
        }
    }

    #[test]
    fn grading_does_not_change_the_basis() {
        let plain = cone_from_gens(2, &[&[0, 1], &[2, 1]]);
        let mut inp = ConeInput::new(2);
        inp.generators = Some(IntMat::from_i64(&[&[0, 1], &[2, 1]]).to_rat());
        inp.grading = Some(vec![int(0), int(1)]);
        let graded = Cone::from_input(&inp).unwrap();
        assert_eq!(hilbert_basis(&plain).unwrap(), hilbert_basis(&graded).unwrap());
    }

    #[test]
    fn enumeration_guard_fires_for_huge_indices() {
        let c = cone_from_gens(2, &[&[1, 0], &[1, 2_000_000]]);
        assert_eq!(
            hilbert_basis(&c).err(),
            Some(Error::EnumerationGuard { limit: ENUMERATION_LIMIT })
        );
    }

    #[test]
    fn random_cones_generate_all_their_small_lattice_points() {
        use rand::{Rng, SeedableRng};

        fn generated(vals: &[Int], x: &[Int], hb: &[(Vec<Int>, Vec<Int>)]) -> bool {
            if x.iter().all(|v| v.is_zero()) {
                return true;
            }
            for (h, hv) in hb {
                if vals.iter().zip(hv).all(|(a, b)| a >= b) {
                    let nx: Vec<Int> = x.iter().zip(h).map(|(a, b)| a - b).collect();
                    let nv: Vec<Int> = vals.iter().zip(hv).map(|(a, b)| a - b).collect();
                    if generated(&nv, &nx, hb) {
                        return true;
                    }
                }
            }
            false
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x41B);
        for _case in 0..25 {
            let dim = rng.gen_range(2..=3);
            let m = rng.gen_range(2..=4);
            let rows: Vec<Vec<Int>> = (0..m)
                .map(|_| (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
                .collect();
            let mut inp = ConeInput::new(dim);
            inp.generators = Some(IntMat::from_rows(rows).to_rat());
            let c = Cone::from_input(&inp).unwrap();
            if c.working_dim == 0 {
                continue;
            }
            let hb = hilbert_basis(&c).unwrap();
            let annotated: Vec<(Vec<Int>, Vec<Int>)> = hb
                .iter_rows()
                .map(|h| {
                    let hv: Vec<Int> =
                        c.support_forms().unwrap().iter_rows().map(|s| dot(s, h)).collect();
                    (h.to_vec(), hv)
                })
                .collect();
            // pairwise irreducibility
            for (i, (x, v)) in annotated.iter().enumerate() {
                for (j, (_, w)) in annotated.iter().enumerate() {
                    if i != j {
                        assert!(
                            !v.iter().zip(w).all(|(a, b)| a >= b),
                            "{x:?} is reducible"
                        );
                    }
                }
            }
            // every small lattice point of the cone is a nonnegative integral
            // combination of basis elements
            let q = c.working_dim;
            let mut point = vec![-4i64; q];
            loop {
                let x: Vec<Int> = point.iter().map(|&v| int(v)).collect();
                let vals: Vec<Int> =
                    c.support_forms().unwrap().iter_rows().map(|s| dot(s, &x)).collect();
                if vals.iter().all(|v| !v.is_negative()) {
                    assert!(generated(&vals, &x, &annotated), "{x:?} not generated");
                }
                let mut k = 0;
                loop {
                    if k == q {
                        break;
                    }
                    point[k] += 1;
                    if point[k] <= 4 {
                        break;
                    }
                    point[k] = -4;
                    k += 1;
                }
                if k == q {
                    break;
                }
            }
        }
    }
}
