//! Acceptance suite: one test per gate, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conesym::cone::{Cone, ConeInput};
use conesym::engines::{
    combinatorial_automorphisms, euclidean_automorphisms, integral_automorphisms,
    rational_automorphisms, ObjectKind,
};
use conesym::graph::WeightTable;
use conesym::hilbert::hilbert_basis;
use conesym::linalg::{
    determinant_int, dot, generates_full_lattice, int, solve_linear, Int, IntMat,
};
use conesym::models::{
    lo_polytope, ray_point_indices, relabeling_and_duality_group, transport_point_permutation,
    white_cone, LoCoordinates, WhiteVariant,
};
use conesym::normal_form::{canonical_type, is_isomorphic, TypeLevel};
use conesym::perm::PermutationGroup;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn cone_from_rows(dim: usize, rows: Vec<Vec<i64>>) -> Cone {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let mut input = ConeInput::new(dim);
    input.generators = Some(IntMat::from_i64(&refs).to_rat());
    Cone::from_input(&input).unwrap()
}

/// Random generator matrices with entries in `lo..=hi`, avoiding zero rows.
fn random_rows(
    rng: &mut ChaCha8Rng,
    dim: usize,
    count: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<i64>> {
    let mut rows = Vec::with_capacity(count);
    while rows.len() < count {
        let row: Vec<i64> = (0..dim).map(|_| rng.gen_range(lo..=hi)).collect();
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    rows
}

// -------------------------------------------------------------------------
// 1. The two index-five simplicial cones: automorphism groups, canonical
//    forms at both levels, and the isomorphism verdict.

#[test]
fn acceptance_1_index_five_simplices() {
    let start = Instant::now();
    let c = Cone::from_input(&white_cone(WhiteVariant::C)).unwrap();
    let d = Cone::from_input(&white_cone(WhiteVariant::D)).unwrap();

    let auto_c = integral_automorphisms(&c).unwrap();
    assert_eq!(auto_c.group.order(), &int(8));
    assert!(!auto_c.group.is_abelian());

    let auto_d = integral_automorphisms(&d).unwrap();
    assert_eq!(auto_d.group.order(), &int(4));
    assert!(auto_d.group.is_abelian());
    let orders = auto_d.group.element_orders(1000).unwrap();
    assert!(orders.iter().any(|(ord, count)| ord == &int(4) && *count > 0));

    let five_id = {
        let mut m = IntMat::identity(4);
        for i in 0..4 {
            let row: Vec<Int> = m.row(i).iter().map(|x| x * 5).collect();
            m.set_row(i, &row);
        }
        m
    };
    let etype_c = canonical_type(&c, TypeLevel::ExtremeOnly).unwrap();
    let etype_d = canonical_type(&d, TypeLevel::ExtremeOnly).unwrap();
    assert_eq!(etype_c.matrix, five_id);
    assert_eq!(etype_d.matrix, five_id);

    let full_c = canonical_type(&c, TypeLevel::Full).unwrap();
    let full_d = canonical_type(&d, TypeLevel::Full).unwrap();
    assert_ne!(full_c.to_text(), full_d.to_text());

    assert_eq!(is_isomorphic(&c, &d).unwrap(), None);

    assert!(start.elapsed() < Duration::from_secs(5), "took {:?}", start.elapsed());
    println!("ACCEPTANCE 1: PASS");
}

// -------------------------------------------------------------------------
// 2. Linear ordering polytopes for n = 3, 4, 5: group orders of all four
//    flavors.

#[test]
fn acceptance_2_lo_group_orders() {
    let start = Instant::now();
    for n in 3..=5 {
        let cone = Cone::from_input(&lo_polytope(n, LoCoordinates::Projected).unwrap()).unwrap();
        let full_order = int(2 * factorial(n + 1) as i64);
        let euclidean_order = int(2 * factorial(n) as i64);

        assert_eq!(integral_automorphisms(&cone).unwrap().group.order(), &full_order);
        assert_eq!(rational_automorphisms(&cone).unwrap().group.order(), &full_order);
        assert_eq!(combinatorial_automorphisms(&cone).unwrap().group.order(), &full_order);
        assert_eq!(euclidean_automorphisms(&cone).unwrap().group.order(), &euclidean_order);
    }
    assert!(start.elapsed() < Duration::from_secs(300), "took {:?}", start.elapsed());
    println!("ACCEPTANCE 2: PASS");
}

// -------------------------------------------------------------------------
// 3. LO_6: the Euclidean group from the vertices alone, without facet
//    enumeration; and (stretch) the integral group with facets.

#[test]
fn acceptance_3_lo6_euclidean_without_facets() {
    let start = Instant::now();
    let cone = Cone::from_input(&lo_polytope(6, LoCoordinates::Projected).unwrap()).unwrap();
    assert_eq!(cone.num_rays(), 720);
    let auto = euclidean_automorphisms(&cone).unwrap();
    assert_eq!(auto.group.order(), &int(1440));
    assert!(!cone.support_forms_computed(), "facets were enumerated");
    assert!(start.elapsed() < Duration::from_secs(600), "took {:?}", start.elapsed());
    println!("ACCEPTANCE 3: PASS");
}

#[test]
fn acceptance_3_stretch_lo6_integral() {
    let start = Instant::now();
    let cone = Cone::from_input(&lo_polytope(6, LoCoordinates::Projected).unwrap()).unwrap();
    let auto = integral_automorphisms(&cone).unwrap();
    assert_eq!(auto.group.order(), &int(10080));
    assert!(start.elapsed() < Duration::from_secs(1800), "took {:?}", start.elapsed());
    println!("ACCEPTANCE 3 (stretch): PASS");
}

// -------------------------------------------------------------------------
// 4. Duality transport: the support-form group has the primal order, and
//    every generator pair leaves the evaluation table invariant.

#[test]
fn acceptance_4_duality_transport() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4001);
    let mut checked = 0;
    while checked < 50 {
        let dim = rng.gen_range(2..=4);
        let count = rng.gen_range(2..=6);
        let cone = cone_from_rows(dim, random_rows(&mut rng, dim, count, -3, 3));
        if cone.num_rays() == 0 {
            continue;
        }
        let result = integral_automorphisms(&cone).unwrap();
        let (_, dual_group) = result.dual.as_ref().expect("integral flavor reports the dual");
        assert_eq!(dual_group.order(), result.group.order());

        let points = if result.object == ObjectKind::HilbertBasisElements {
            hilbert_basis(&cone).unwrap()
        } else {
            cone.rays.clone()
        };
        let forms = cone.support_forms().unwrap();
        for (p, q) in &result.paired_generators {
            for i in 0..points.rows() {
                for j in 0..forms.rows() {
                    assert_eq!(
                        dot(points.row(p.apply(i)), forms.row(q.apply(j))),
                        dot(points.row(i), forms.row(j)),
                        "table not invariant under a transported pair"
                    );
                }
            }
        }
        checked += 1;
    }
    println!("ACCEPTANCE 4: PASS");
}

// -------------------------------------------------------------------------
// 5. The graph engine against brute force: integral automorphisms of small
//    cones as permutations of the extreme rays, element by element.

fn heap_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// The permutation of the rays that a unimodular map realizes, if one does.
fn realizing_map(points: &IntMat, perm: &[usize]) -> Option<IntMat> {
    let image = points.select_rows(perm);
    let m = solve_linear(&points.to_rat(), &image.to_rat())?;
    if !m.is_integral() {
        return None;
    }
    let m = m.to_int().unwrap();
    if determinant_int(&m).ok()?.abs() != Int::from(1) {
        return None;
    }
    Some(m)
}

/// Every integral automorphism of the cone as the permutation it induces on
/// the extreme rays, regardless of which object the engine reported on.
fn engine_ray_elements(cone: &Cone) -> BTreeSet<Vec<usize>> {
    let result = integral_automorphisms(cone).unwrap();
    let elements = result.group.elements(1_000_000).unwrap();
    if result.object != ObjectKind::HilbertBasisElements {
        return elements.into_iter().map(|p| p.images().to_vec()).collect();
    }
    let hb = hilbert_basis(cone).unwrap();
    let ray_index: HashMap<Vec<Int>, usize> =
        (0..cone.num_rays()).map(|i| (cone.rays.row(i).to_vec(), i)).collect();
    elements
        .into_iter()
        .map(|g| {
            let m = realizing_map(&hb, g.images()).expect("group elements realize unimodularly");
            let moved = cone.rays.mul(&m);
            (0..moved.rows())
                .map(|i| ray_index[&moved.row(i).to_vec()])
                .collect::<Vec<usize>>()
        })
        .collect()
}

#[test]
fn acceptance_5_engine_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5002);
    let mut checked = 0;
    while checked < 50 {
        let dim = rng.gen_range(2..=3);
        let count = rng.gen_range(2..=5);
        let cone = cone_from_rows(dim, random_rows(&mut rng, dim, count, -3, 3));
        if cone.num_rays() == 0 {
            continue;
        }
        let brute: BTreeSet<Vec<usize>> = heap_permutations(cone.num_rays())
            .into_iter()
            .filter(|p| realizing_map(&cone.rays, p).is_some())
            .collect();
        assert_eq!(engine_ray_elements(&cone), brute);
        checked += 1;
    }
    println!("ACCEPTANCE 5: PASS");
}

// -------------------------------------------------------------------------
// 6. Canonical forms do not depend on the presentation, and the identity
//    table is its own canonical form.

#[test]
fn acceptance_6_canonical_form_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6003);
    let mut checked = 0;
    while checked < 20 {
        let dim = rng.gen_range(2..=3);
        let count = rng.gen_range(2..=5);
        let rows = random_rows(&mut rng, dim, count, -3, 3);
        let cone = cone_from_rows(dim, rows.clone());
        if cone.num_rays() == 0 {
            continue;
        }
        let reference = canonical_type(&cone, TypeLevel::Full).unwrap().to_text();
        for _ in 0..100 {
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rng);
            let again = cone_from_rows(dim, shuffled);
            assert_eq!(
                canonical_type(&again, TypeLevel::Full).unwrap().to_text(),
                reference,
                "canonical type changed under an input shuffle"
            );
        }
        checked += 1;
    }

    for n in 1..=6 {
        let id = IntMat::identity(n).to_rat();
        assert_eq!(WeightTable::bipartite(id.clone()).canonical_matrix(), id);
    }
    println!("ACCEPTANCE 6: PASS");
}

// -------------------------------------------------------------------------
// 7. Hilbert bases against a brute-force irreducibility oracle.

fn to_i64_rows(m: &IntMat) -> Vec<Vec<i64>> {
    m.iter_rows()
        .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
        .collect()
}

/// All irreducible lattice points of the cone, found by enumerating every
/// lattice point of bounded degree and crossing off the reducible ones.
fn brute_force_hilbert_basis(cone: &Cone) -> Vec<Vec<i64>> {
    let dim = cone.working_dim;
    if cone.num_rays() == 0 {
        return Vec::new();
    }
    let forms = to_i64_rows(cone.support_forms().unwrap());
    let rays = to_i64_rows(&cone.rays);
    let degree_form: Vec<i64> =
        (0..dim).map(|k| forms.iter().map(|f| f[k]).sum()).collect();
    let deg = |x: &[i64]| -> i64 { x.iter().zip(&degree_form).map(|(a, b)| a * b).sum() };
    let bound: i64 = rays.iter().map(|r| deg(r)).sum();

    // the degree slice of the cone has vertices 0 and (bound / deg r) * r,
    // which gives integer coordinate bounds for the enumeration box
    let mut lo = vec![0i64; dim];
    let mut hi = vec![0i64; dim];
    for r in &rays {
        let d = deg(r);
        for k in 0..dim {
            let extreme = bound * r[k];
            lo[k] = lo[k].min(extreme.div_euclid(d));
            hi[k] = hi[k].max(-(-extreme).div_euclid(d));
        }
    }

    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut current = lo.clone();
    'outer: loop {
        let in_cone = forms
            .iter()
            .all(|f| f.iter().zip(&current).map(|(a, b)| a * b).sum::<i64>() >= 0);
        let d = deg(&current);
        if in_cone && d >= 1 && d <= bound {
            points.push(current.clone());
        }
        for k in 0..dim {
            if current[k] < hi[k] {
                current[k] += 1;
                continue 'outer;
            }
            current[k] = lo[k];
        }
        break;
    }

    points.sort_by_key(|x| deg(x));
    let member: HashSet<Vec<i64>> = points.iter().cloned().collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for x in &points {
        let reducible = basis.iter().any(|h| {
            deg(h) < deg(x)
                && member.contains(
                    &x.iter().zip(h).map(|(a, b)| a - b).collect::<Vec<i64>>(),
                )
        });
        if !reducible {
            basis.push(x.clone());
        }
    }
    basis.sort();
    basis
}

#[test]
fn acceptance_7_hilbert_basis_oracle() {
    let orthant = cone_from_rows(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(hilbert_basis(&orthant).unwrap(), IntMat::identity(3).sorted_rows());

    let plane = cone_from_rows(2, vec![vec![0, 1], vec![2, 1]]);
    assert_eq!(
        hilbert_basis(&plane).unwrap(),
        IntMat::from_i64(&[&[0, 1], &[1, 1], &[2, 1]]).sorted_rows()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x7004);
    let mut checked = 0;
    while checked < 20 {
        // signed entries in the plane, nonnegative entries in space: both
        // keep the brute-force enumeration box small
        let (dim, lo) = if checked % 2 == 0 { (2, -2) } else { (3, 0) };
        let count = rng.gen_range(2..=4);
        let cone = cone_from_rows(dim, random_rows(&mut rng, dim, count, lo, 3));
        if cone.num_rays() == 0 {
            continue;
        }
        let mut computed = to_i64_rows(&hilbert_basis(&cone).unwrap());
        computed.sort();
        assert_eq!(computed, brute_force_hilbert_basis(&cone));
        checked += 1;
    }
    println!("ACCEPTANCE 7: PASS");
}

// -------------------------------------------------------------------------
// 8. Subgroup certificates on the linear ordering polytopes.

#[test]
fn acceptance_8_lo_subgroup_certificates() {
    for n in 3..=5 {
        let input = lo_polytope(n, LoCoordinates::Projected).unwrap();
        let cone = Cone::from_input(&input).unwrap();
        let points = input.polytope_points.as_ref().unwrap();
        let ray_points = ray_point_indices(&cone, points).unwrap();

        // every ray is a vertex and in the same position, so all four
        // flavors act on the same index set
        let poly = cone.polyhedron().unwrap();
        assert_eq!(poly.vertex_rays, (0..cone.num_rays()).collect::<Vec<usize>>());

        let model = relabeling_and_duality_group(n).unwrap();
        let transported = PermutationGroup::new(
            cone.num_rays(),
            model
                .generators()
                .iter()
                .map(|g| transport_point_permutation(g, &ray_points))
                .collect(),
        );
        assert_eq!(transported.order(), &int(2 * factorial(n) as i64));

        let integral = integral_automorphisms(&cone).unwrap().group;
        let rational = rational_automorphisms(&cone).unwrap().group;
        let euclidean = euclidean_automorphisms(&cone).unwrap().group;
        let combinatorial = combinatorial_automorphisms(&cone).unwrap().group;

        for flavor_group in [&integral, &rational, &euclidean, &combinatorial] {
            assert!(transported.is_subgroup_of(flavor_group));
        }
        assert!(euclidean.is_subgroup_of(&rational));
        assert!(rational.is_subgroup_of(&combinatorial));
    }
    println!("ACCEPTANCE 8: PASS");
}

// -------------------------------------------------------------------------
// 9. Report fidelity: a full job report, byte for byte.

#[test]
fn acceptance_9_report_snapshot() {
    let job = conesym::io::parse_input(
        "amb_space 2\n\
         polytope 4\n\
         0 0\n\
         1 0\n\
         0 1\n\
         1 1\n\
         Automorphisms\n\
         EuclideanAutomorphisms\n\
         HilbertBasis\n\
         NormalForm\n\
         IsoCheck shifted.in\n",
    )
    .unwrap();
    let outcome = conesym::report::run_job(&job, |path| {
        assert_eq!(path, "shifted.in");
        Ok("amb_space 2\npolytope 4\n3 5\n4 5\n3 6\n4 6\n".to_string())
    });
    assert_eq!(outcome.failed_goals, 0);
    assert_eq!(outcome.text, include_str!("snapshots/square_report.txt"));
    println!("ACCEPTANCE 9: PASS");
}

// -------------------------------------------------------------------------

#[test]
fn random_cone_helper_never_returns_zero_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        for row in random_rows(&mut rng, 3, 4, -3, 3) {
            assert!(row.iter().any(|&x| x != 0));
        }
    }
}

#[test]
fn heap_permutations_cover_the_symmetric_group() {
    let perms = heap_permutations(4);
    let set: BTreeSet<Vec<usize>> = perms.into_iter().collect();
    assert_eq!(set.len(), 24);
}

#[test]
fn brute_force_oracle_agrees_on_known_bases() {
    // a unimodular image of the quadrant: the rays alone are the basis
    let quadrant_image = cone_from_rows(2, vec![vec![1, 0], vec![-1, 1]]);
    assert_eq!(brute_force_hilbert_basis(&quadrant_image), vec![vec![-1, 1], vec![1, 0]]);

    // the index-two plane cone needs the interior point (1, 1)
    let plane = cone_from_rows(2, vec![vec![0, 1], vec![2, 1]]);
    assert_eq!(
        brute_force_hilbert_basis(&plane),
        vec![vec![0, 1], vec![1, 1], vec![2, 1]]
    );
}

#[test]
fn rays_that_generate_the_lattice_keep_the_engine_on_the_ray_table() {
    let cone = cone_from_rows(2, vec![vec![0, 1], vec![1, 0]]);
    assert!(generates_full_lattice(&cone.rays));
    let result = integral_automorphisms(&cone).unwrap();
    assert_eq!(result.object, ObjectKind::ExtremeRays);
}
