//! Built-in input families.
//!
//! * The linear ordering polytope `LO_n`: the convex hull of the incidence
//!   vectors of all linear orders of `n` elements, either in all `n²` pair
//!   coordinates or projected to the `n·(n-1)/2` coordinates `(x, y)` with
//!   `x < y` (an integrally isomorphic copy, and full-dimensional).
//! * The known symmetries of `LO_n`: relabelings of the ground set together
//!   with order reversal, a group of order `2·n!` acting on the vertices.
//!   It serves as a certificate subgroup for the automorphism engines.
//! * A pair of simplicial 4-dimensional cones whose extreme-ray evaluation
//!   tables are identical while the cones are not isomorphic over the
//!   integers; they exercise the lattice-sensitive machinery.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cone::{Cone, ConeInput};
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMat, Rat, RatMat};
use crate::perm::{Permutation, PermutationGroup};

/// Coordinate system for the linear ordering polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoCoordinates {
    /// All `n²` pair coordinates `(x, y)`, diagonal included.
    Full,
    /// Only the coordinates `(x, y)` with `x < y`, in lexicographic order.
    Projected,
}

/// The two simplicial cone variants with colliding ray tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiteVariant {
    C,
    D,
}

const LO_MIN: usize = 3;
const LO_MAX: usize = 7;

fn check_lo_range(n: usize) -> Result<()> {
    if !(LO_MIN..=LO_MAX).contains(&n) {
        return Err(Error::Unsupported(format!(
            "linear ordering polytope supports {} <= n <= {}, got {}",
            LO_MIN, LO_MAX, n
        )));
    }
    Ok(())
}

/// All rank vectors of length `n` in lexicographic order.  `r[x]` is the
/// position of element `x` in the order, so `x` precedes `y` exactly when
/// `r[x] < r[y]`.
fn rank_vectors(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn incidence_vector(r: &[usize], n: usize, coords: LoCoordinates) -> Vec<Rat> {
    let bit = |x: usize, y: usize| if r[x] < r[y] { Rat::one() } else { Rat::zero() };
    match coords {
        LoCoordinates::Full => {
            let mut v = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    v.push(if x == y { Rat::zero() } else { bit(x, y) });
                }
            }
            v
        }
        LoCoordinates::Projected => {
            let mut v = Vec::with_capacity(n * (n - 1) / 2);
            for x in 0..n {
                for y in x + 1..n {
                    v.push(bit(x, y));
                }
            }
            v
        }
    }
}

/// The linear ordering polytope as polytope input: one vertex per linear
/// order of `{0, …, n-1}`, enumerated by rank vector in lexicographic
/// order.
pub fn lo_polytope(n: usize, coordinates: LoCoordinates) -> Result<ConeInput> {
    check_lo_range(n)?;
    let dim = match coordinates {
        LoCoordinates::Full => n * n,
        LoCoordinates::Projected => n * (n - 1) / 2,
    };
    let rows: Vec<Vec<Rat>> =
        rank_vectors(n).iter().map(|r| incidence_vector(r, n, coordinates)).collect();
    let mut input = ConeInput::new(dim);
    input.polytope_points = Some(RatMat::from_rows(rows));
    Ok(input)
}

/// The vertex permutations of `LO_n` induced by relabeling the ground set
/// and by order reversal, as a group on the `n!` vertices in the
/// `lo_polytope` enumeration order.  Relabeling by `π` sends the vertex of
/// rank vector `r` to the vertex of `r ∘ π`; reversal sends `r` to
/// `(n-1) - r`.  The group has order `2·n!` and reversal commutes with all
/// relabelings.
pub fn relabeling_and_duality_group(n: usize) -> Result<PermutationGroup> {
    check_lo_range(n)?;
    let ranks = rank_vectors(n);
    let index: BTreeMap<&[usize], usize> =
        ranks.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let vertex_perm = |map: &dyn Fn(&[usize]) -> Vec<usize>| -> Permutation {
        let images: Vec<usize> = ranks.iter().map(|r| index[map(r.as_slice()).as_slice()]).collect();
        Permutation::from_images(images).expect("bijection on rank vectors")
    };

    let mut generators = Vec::new();
    // the transposition (0 1) and the full cycle generate all relabelings
    let swap: Vec<usize> = (0..n).map(|x| if x < 2 { 1 - x } else { x }).collect();
    let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    for pi in [swap, cycle] {
        generators.push(vertex_perm(&|r: &[usize]| pi.iter().map(|&px| r[px]).collect()));
    }
    generators.push(vertex_perm(&|r: &[usize]| r.iter().map(|&v| n - 1 - v).collect()));
    Ok(PermutationGroup::new(ranks.len(), generators))
}

/// One of the two 4-dimensional simplicial cones over an empty simplex of
/// multiplicity 5.
pub fn white_cone(variant: WhiteVariant) -> ConeInput {
    let last: &[i64] = match variant {
        WhiteVariant::C => &[5, 1, 1, 1],
        WhiteVariant::D => &[5, 2, 1, 1],
    };
    let mut input = ConeInput::new(4);
    input.generators = Some(
        IntMat::from_i64(&[&[0, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], last]).to_rat(),
    );
    input
}

/// For a cone built from polytope points that are all vertices: the index
/// of the input point matching each extreme ray.
pub fn ray_point_indices(cone: &Cone, points: &RatMat) -> Result<Vec<usize>> {
    let mut lookup: BTreeMap<Vec<Int>, usize> = BTreeMap::new();
    for (k, p) in points.iter_rows().enumerate() {
        let mut v = p.to_vec();
        v.push(Rat::one());
        let prim = RatMat::from_rows(vec![v]).rows_to_primitive()?;
        lookup.insert(prim.row_vec(0), k);
    }
    cone.rays_ambient
        .iter_rows()
        .map(|r| {
            lookup.get(r).copied().ok_or_else(|| {
                Error::Unsupported("extreme ray does not match an input point".into())
            })
        })
        .collect()
}

/// Conjugate a permutation of input points into ray indexing, given the
/// per-ray point indices from `ray_point_indices`.
pub fn transport_point_permutation(g: &Permutation, ray_points: &[usize]) -> Permutation {
    let mut point_to_ray = vec![usize::MAX; g.degree()];
    for (ray, &pt) in ray_points.iter().enumerate() {
        point_to_ray[pt] = ray;
    }
    let images: Vec<usize> =
        ray_points.iter().map(|&pt| point_to_ray[g.apply(pt)]).collect();
    Permutation::from_images(images).expect("conjugated bijection")
}
