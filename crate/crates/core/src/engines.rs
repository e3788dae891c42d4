//! Automorphism groups of cones and polyhedra.
//!
//! Every flavor is computed by reduction to the automorphism group of a
//! weighted graph: either a bipartite table (objects vs. linear forms, with
//! entries the evaluations) or a symmetric table of pairwise invariants
//! (squared distances, or the values of an invariant quadratic form).  The
//! graph engine returns permutation generators, and where a flavor promises
//! more than combinatorial symmetry the generators are certified by solving
//! for the realizing linear map.

use crate::cone::{Cone, ConeInput};
use crate::error::{Error, Result};
use crate::graph::WeightTable;
use crate::hilbert::hilbert_basis;
use crate::linalg::{
    determinant_rat, dot, dot_rat, inverse_rat, solve_linear, Int, IntMat, Rat, RatMat,
};
use crate::perm::{Permutation, PermutationGroup};
use num_traits::{One, Signed, Zero};

/// The notion of equivalence under which symmetries are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Lattice-preserving linear transformations (unimodular on the span).
    Integral,
    /// Rational linear transformations preserving the canonical scaling
    /// (vertices of a polytope, or degree-one ray representatives).
    Rational,
    /// Rigid motions of the ambient space permuting the vertices.
    Euclidean,
    /// Automorphisms of the face lattice.
    Combinatorial,
    /// Rational transformations permuting the input vectors as given.
    Input,
    /// Permutations of the ambient coordinates preserving the input.
    Ambient,
}

impl Flavor {
    pub fn label(self) -> &'static str {
        match self {
            Flavor::Integral => "Integral",
            Flavor::Rational => "Rational",
            Flavor::Euclidean => "Euclidean",
            Flavor::Combinatorial => "Combinatorial",
            Flavor::Input => "Input",
            Flavor::Ambient => "Ambient",
        }
    }
}

/// Which reduction produced the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Evaluation table of support forms on the extreme rays.
    ExtremeRays,
    /// Evaluation table of support forms on the Hilbert basis.
    HilbertBasis,
    /// Symmetric table of an invariant quadratic form.
    QuadraticForm,
    /// Symmetric table of pairwise squared distances.
    SquaredDistances,
    /// Zero pattern of the evaluation table.
    Incidence,
    /// The raw input matrix itself.
    InputMatrix,
}

/// What the permutations act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    ExtremeRays,
    Vertices,
    SupportHyperplanes,
    HilbertBasisElements,
    InputVectors,
    Coordinates,
}

impl ObjectKind {
    pub fn label(self) -> &'static str {
        match self {
            ObjectKind::ExtremeRays => "extreme rays of cone",
            ObjectKind::Vertices => "vertices of polyhedron",
            ObjectKind::SupportHyperplanes => "support hyperplanes",
            ObjectKind::HilbertBasisElements => "Hilbert basis elements",
            ObjectKind::InputVectors => "input vectors",
            ObjectKind::Coordinates => "coordinates",
        }
    }
}

/// An automorphism group together with the data needed to report it.
#[derive(Debug)]
pub struct AutoResult {
    pub flavor: Flavor,
    pub method: Method,
    /// What the permutations of `group` act on.
    pub object: ObjectKind,
    pub group: PermutationGroup,
    /// The induced action on the other side of a bipartite reduction
    /// (support hyperplanes), when there is one.
    pub dual: Option<(ObjectKind, PermutationGroup)>,
    /// For bipartite reductions, the generators as (object, hyperplane)
    /// pairs: the two permutations of one pair belong to the same
    /// transformation.
    pub paired_generators: Vec<(Permutation, Permutation)>,
    /// Whether every generator has been certified as the restriction of a
    /// lattice-preserving linear map.
    pub integrality_verified: bool,
}

impl AutoResult {
    fn trivial(flavor: Flavor, method: Method, object: ObjectKind, degree: usize) -> AutoResult {
        AutoResult {
            flavor,
            method,
            object,
            group: PermutationGroup::trivial(degree),
            dual: None,
            paired_generators: Vec::new(),
            integrality_verified: false,
        }
    }
}

/// How the acting objects of a cone should be named in output: vertices when
/// the cone is the homogenization of a polytope, extreme rays otherwise.
fn primal_object(cone: &Cone) -> ObjectKind {
    match &cone.dehom {
        Some(d)
            if cone.lineality.rows() == 0
                && cone.rays.iter_rows().all(|r| dot(d, r).is_positive()) =>
        {
            ObjectKind::Vertices
        }
        _ => ObjectKind::ExtremeRays,
    }
}

/// Builds the bipartite table of support form values on the given points
/// (working coordinates), with the grading and dehomogenization appended as
/// fixed columns so that only value-preserving permutations survive.
pub(crate) fn evaluation_table(points: &IntMat, cone: &Cone) -> Result<WeightTable> {
    let forms = cone.support_forms()?;
    let n = points.rows();
    let s = forms.rows();
    let mut extras: Vec<&Vec<Int>> = Vec::new();
    if let Some(g) = &cone.grading {
        extras.push(g);
    }
    if let Some(d) = &cone.dehom {
        extras.push(d);
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for i in 0..n {
        let p = points.row(i);
        let mut row: Vec<Rat> = Vec::with_capacity(s + extras.len());
        for j in 0..s {
            row.push(Rat::from_integer(dot(forms.row(j), p)));
        }
        for e in &extras {
            row.push(Rat::from_integer(dot(e, p)));
        }
        rows.push(row);
    }
    let weights = if n == 0 {
        RatMat::empty(0, s + extras.len())
    } else {
        RatMat::from_rows(rows)
    };
    let mut table = WeightTable::bipartite(weights);
    for k in 0..extras.len() {
        table.fix_col(s + k);
    }
    Ok(table)
}

/// Whether the row permutation extends to a linear map that is integral with
/// determinant of absolute value one, i.e. restricts to an automorphism of
/// the lattice spanned by the coordinates.
fn realizes_unimodularly(points: &IntMat, perm: &Permutation) -> bool {
    if points.rows() == 0 {
        return true;
    }
    let a = points.to_rat();
    let b = points.select_rows(perm.images()).to_rat();
    let m = match solve_linear(&a, &b) {
        Some(m) => m,
        None => return false,
    };
    if !m.is_integral() {
        return false;
    }
    matches!(determinant_rat(&m), Ok(d) if d.abs().is_one())
}

/// Splits paired bipartite generators into the row group and the column
/// group restricted to the first `s` (non-appended) columns, keeping the
/// pairing itself.
fn pair_groups(
    pairs: Vec<(Permutation, Permutation)>,
    n: usize,
    s: usize,
) -> (PermutationGroup, PermutationGroup, Vec<(Permutation, Permutation)>) {
    let restricted: Vec<(Permutation, Permutation)> = pairs
        .into_iter()
        .map(|(p, q)| {
            let q = Permutation::from_images(q.images()[..s].to_vec()).expect("valid restriction");
            (p, q)
        })
        .collect();
    let row_gens: Vec<Permutation> = restricted.iter().map(|(p, _)| p.clone()).collect();
    let col_gens: Vec<Permutation> = restricted.iter().map(|(_, q)| q.clone()).collect();
    (PermutationGroup::new(n, row_gens), PermutationGroup::new(s, col_gens), restricted)
}

/// The group of lattice-preserving linear transformations of the cone's span
/// that map the cone onto itself and preserve the grading and
/// dehomogenization.  Cones with a lineality space are handled through their
/// pointed quotient.
///
/// The candidate permutations come from the symmetries of the evaluation
/// table on the extreme rays; each generator is certified by solving for the
/// realizing matrix.  If certification fails the table is rebuilt on the
/// Hilbert basis, whose elements generate the full lattice of the span, so
/// that every table symmetry is automatically realizable.
pub fn integral_automorphisms(cone: &Cone) -> Result<AutoResult> {
    if cone.num_rays() == 0 {
        return Ok(AutoResult::trivial(
            Flavor::Integral,
            Method::ExtremeRays,
            primal_object(cone),
            0,
        ));
    }

    let pairs = evaluation_table(&cone.rays, cone)?.bipartite_automorphisms().generators;
    if pairs.iter().all(|(p, _)| realizes_unimodularly(&cone.rays, p)) {
        let (group, dual, paired) =
            pair_groups(pairs, cone.num_rays(), cone.support_forms()?.rows());
        return Ok(AutoResult {
            flavor: Flavor::Integral,
            method: Method::ExtremeRays,
            object: primal_object(cone),
            group,
            dual: Some((ObjectKind::SupportHyperplanes, dual)),
            paired_generators: paired,
            integrality_verified: true,
        });
    }

    let hb = hilbert_basis(cone)?;
    let pairs = evaluation_table(&hb, cone)?.bipartite_automorphisms().generators;
    for (p, _) in &pairs {
        assert!(
            realizes_unimodularly(&hb, p),
            "Hilbert basis symmetries must extend to lattice automorphisms"
        );
    }
    let (group, dual, paired) = pair_groups(pairs, hb.rows(), cone.support_forms()?.rows());
    Ok(AutoResult {
        flavor: Flavor::Integral,
        method: Method::HilbertBasis,
        object: ObjectKind::HilbertBasisElements,
        group,
        dual: Some((ObjectKind::SupportHyperplanes, dual)),
        paired_generators: paired,
        integrality_verified: true,
    })
}

/// The automorphism group of the face lattice, read off from the zero
/// pattern of the evaluation table.  For a polyhedron the dehomogenization
/// contributes a fixed indicator column separating vertices from directions.
pub fn combinatorial_automorphisms(cone: &Cone) -> Result<AutoResult> {
    let n = cone.num_rays();
    let s = cone.support_forms()?.rows();
    if n == 0 {
        return Ok(AutoResult::trivial(
            Flavor::Combinatorial,
            Method::Incidence,
            primal_object(cone),
            0,
        ));
    }
    let incidence = cone.incidence()?;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: Vec<Rat> = Vec::with_capacity(s + 1);
        for j in 0..s {
            row.push(if incidence[i][j] { Rat::one() } else { Rat::zero() });
        }
        if let Some(d) = &cone.dehom {
            row.push(if dot(d, cone.rays.row(i)).is_positive() { Rat::one() } else { Rat::zero() });
        }
        rows.push(row);
    }
    let mut table = WeightTable::bipartite(RatMat::from_rows(rows));
    if cone.dehom.is_some() {
        table.fix_col(s);
    }
    let pairs = table.bipartite_automorphisms().generators;
    let (group, dual, paired) = pair_groups(pairs, n, s);
    Ok(AutoResult {
        flavor: Flavor::Combinatorial,
        method: Method::Incidence,
        object: primal_object(cone),
        group,
        dual: Some((ObjectKind::SupportHyperplanes, dual)),
        paired_generators: paired,
        integrality_verified: false,
    })
}

/// Pairwise squared Euclidean distances; exact over the rationals.
fn squared_distance_table(points: &RatMat) -> RatMat {
    let n = points.rows();
    let mut rows = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut d = Rat::zero();
            for k in 0..points.cols() {
                let diff = &points.row(i)[k] - &points.row(j)[k];
                d += &diff * &diff;
            }
            rows[i][j] = d.clone();
            rows[j][i] = d;
        }
    }
    if n == 0 { RatMat::empty(0, 0) } else { RatMat::from_rows(rows) }
}

/// The group of rigid motions of the ambient space permuting the vertices.
/// A permutation of a finite point set preserving all pairwise distances
/// extends to an isometry, so the symmetric table of squared distances
/// captures exactly this group.  Requires a bounded polyhedron.
pub fn euclidean_automorphisms(cone: &Cone) -> Result<AutoResult> {
    let poly = cone.polyhedron()?;
    if !poly.recession_rays.is_empty() || cone.lineality.rows() > 0 {
        return Err(Error::Unbounded);
    }
    let table = WeightTable::symmetric(squared_distance_table(&poly.vertices_ambient));
    let gens = table.symmetric_automorphisms();
    Ok(AutoResult {
        flavor: Flavor::Euclidean,
        method: Method::SquaredDistances,
        object: ObjectKind::Vertices,
        group: PermutationGroup::new(poly.vertices_ambient.rows(), gens),
        dual: None,
        paired_generators: Vec::new(),
        integrality_verified: false,
    })
}

/// The symmetric table `w[i][j] = p_i R p_j^T` with `R` the inverse of the
/// configuration's Gram sum `Q = sum_k p_k^T p_k`.  A permutation preserves
/// `w` exactly when some invertible linear map of the span sends each `p_i`
/// to `p_{perm(i)}`: `Q` transforms contravariantly, so `w` is a complete
/// invariant of the configuration up to linear equivalence.
fn quadratic_form_table(points: &RatMat) -> Result<RatMat> {
    let gram = points.transpose().mul(points);
    let r = inverse_rat(&gram)?;
    Ok(points.mul(&r).mul(&points.transpose()))
}

/// The group of rational linear transformations permuting the canonically
/// scaled representatives: the vertices of a bounded polyhedron, or the
/// degree-one points on the extreme rays of a graded cone.
pub fn rational_automorphisms(cone: &Cone) -> Result<AutoResult> {
    let (points, object) = if cone.dehom.is_some() {
        let poly = cone.polyhedron()?;
        if !poly.recession_rays.is_empty() || cone.lineality.rows() > 0 {
            return Err(Error::Unbounded);
        }
        (poly.vertices.clone(), ObjectKind::Vertices)
    } else if let Some(g) = &cone.grading {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(cone.num_rays());
        for i in 0..cone.num_rays() {
            let ray = cone.rays.row(i);
            let value = Rat::from_integer(dot(g, ray));
            rows.push(ray.iter().map(|x| Rat::from_integer(x.clone()) / &value).collect());
        }
        if rows.is_empty() {
            return Ok(AutoResult::trivial(
                Flavor::Rational,
                Method::QuadraticForm,
                ObjectKind::ExtremeRays,
                0,
            ));
        }
        (RatMat::from_rows(rows), ObjectKind::ExtremeRays)
    } else {
        return Err(Error::Unsupported(
            "rational automorphisms need a grading or a dehomogenization".into(),
        ));
    };
    let table = WeightTable::symmetric(quadratic_form_table(&points)?);
    let gens = table.symmetric_automorphisms();
    Ok(AutoResult {
        flavor: Flavor::Rational,
        method: Method::QuadraticForm,
        object,
        group: PermutationGroup::new(points.rows(), gens),
        dual: None,
        paired_generators: Vec::new(),
        integrality_verified: false,
    })
}

/// The single raw matrix of an input description, for the flavors that act
/// on the input as given rather than on the derived geometry.
enum RawInput {
    Generators(RatMat),
    Forms(RatMat),
    Points(RatMat),
}

fn single_input_matrix(input: &ConeInput) -> Result<RawInput> {
    if input.polytope_points.is_some()
        && (input.grading.is_some() || input.dehomogenization.is_some())
    {
        return Err(Error::NotDirectPolytope);
    }
    match (&input.generators, &input.inequalities, &input.polytope_points) {
        (Some(g), None, None) => Ok(RawInput::Generators(g.clone())),
        (None, Some(f), None) => Ok(RawInput::Forms(f.clone())),
        (None, None, Some(p)) => Ok(RawInput::Points(p.clone())),
        (None, None, None) => Err(Error::EmptyInput),
        _ => Err(Error::Unsupported(
            "input and ambient automorphisms need a single input matrix".into(),
        )),
    }
}

/// Coordinates of the rows with respect to a row basis of their span; the
/// quadratic form below does not depend on the basis chosen.
fn span_coordinates(points: &RatMat) -> RatMat {
    let mut echelon: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut basis_rows: Vec<usize> = Vec::new();
    for i in 0..points.rows() {
        let mut v = points.row(i).to_vec();
        for (pivot, e) in &echelon {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (vk, ek) in v.iter_mut().zip(e) {
                    *vk -= &f * ek;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
            let lead = v[pivot].clone();
            for vk in v.iter_mut() {
                *vk /= &lead;
            }
            echelon.push((pivot, v));
            basis_rows.push(i);
        }
    }
    if basis_rows.is_empty() {
        return RatMat::empty(points.rows(), 0);
    }
    let basis_rows: Vec<Vec<Rat>> = basis_rows.iter().map(|&i| points.row(i).to_vec()).collect();
    let basis = RatMat::from_rows(basis_rows);
    solve_linear(&basis.transpose(), &points.transpose())
        .expect("rows lie in the span of the selected basis")
        .transpose()
}

/// Quadratic-form table of a configuration that need not span its ambient
/// space.  A configuration of zero vectors carries no linear structure, so
/// its table is identically zero and every permutation survives.
fn span_quadratic_form(points: &RatMat) -> Result<RatMat> {
    let n = points.rows();
    let coords = span_coordinates(points);
    if coords.cols() == 0 {
        return Ok(RatMat::zeros(n, n));
    }
    quadratic_form_table(&coords)
}

fn ambient_values(form: &[Int], rows: &RatMat) -> Vec<Rat> {
    let f: Vec<Rat> = form.iter().map(|v| Rat::from_integer(v.clone())).collect();
    rows.iter_rows().map(|r| dot_rat(&f, r)).collect()
}

fn restrict_to_prefix(perms: Vec<Permutation>, n: usize) -> Vec<Permutation> {
    perms
        .into_iter()
        .map(|p| Permutation::from_images(p.images()[..n].to_vec()).expect("prefix is invariant"))
        .collect()
}

/// The group of invertible rational transformations permuting the input
/// vectors exactly as listed (duplicates stay distinct objects) and
/// preserving the grading and dehomogenization.
///
/// Generator input: the transformation acts on the vectors, so the grading
/// joins as a pinned extra point whose cross-weights are its values on the
/// vectors.  Inequality input: the transformation acts by substitution on
/// the forms, and the grading lives on the same side, so it joins the
/// configuration itself as a pinned vector.  Polytope input: the points are
/// homogenized, turning affine maps into linear ones.
pub fn input_automorphisms(input: &ConeInput) -> Result<AutoResult> {
    let (config, evals, n) = match single_input_matrix(input)? {
        RawInput::Generators(x) => {
            let mut evals: Vec<Vec<Rat>> = Vec::new();
            if let Some(g) = &input.grading {
                evals.push(ambient_values(g, &x));
            }
            if let Some(d) = &input.dehomogenization {
                evals.push(ambient_values(d, &x));
            }
            let n = x.rows();
            (x, evals, n)
        }
        RawInput::Forms(x) => {
            let n = x.rows();
            let mut rows: Vec<Vec<Rat>> = (0..n).map(|i| x.row(i).to_vec()).collect();
            if let Some(g) = &input.grading {
                rows.push(g.iter().map(|v| Rat::from_integer(v.clone())).collect());
            }
            if let Some(d) = &input.dehomogenization {
                rows.push(d.iter().map(|v| Rat::from_integer(v.clone())).collect());
            }
            (RatMat::from_rows(rows), Vec::new(), n)
        }
        RawInput::Points(x) => {
            let n = x.rows();
            if n == 0 {
                return Ok(AutoResult::trivial(
                    Flavor::Input,
                    Method::QuadraticForm,
                    ObjectKind::InputVectors,
                    0,
                ));
            }
            let rows: Vec<Vec<Rat>> = (0..n)
                .map(|i| {
                    let mut row = x.row(i).to_vec();
                    row.push(Rat::one());
                    row
                })
                .collect();
            (RatMat::from_rows(rows), Vec::new(), n)
        }
    };
    if n == 0 {
        return Ok(AutoResult::trivial(Flavor::Input, Method::QuadraticForm, ObjectKind::InputVectors, 0));
    }

    let base = span_quadratic_form(&config)?;
    let total = config.rows() + evals.len();
    let mut rows = vec![vec![Rat::zero(); total]; total];
    for i in 0..config.rows() {
        for j in 0..config.rows() {
            rows[i][j] = base.row(i)[j].clone();
        }
    }
    for (a, values) in evals.iter().enumerate() {
        for (i, v) in values.iter().enumerate() {
            rows[config.rows() + a][i] = v.clone();
            rows[i][config.rows() + a] = v.clone();
        }
    }
    let mut table = WeightTable::symmetric(RatMat::from_rows(rows));
    for u in n..total {
        table.fix_row(u);
    }
    let gens = restrict_to_prefix(table.symmetric_automorphisms(), n);
    Ok(AutoResult {
        flavor: Flavor::Input,
        method: Method::QuadraticForm,
        object: ObjectKind::InputVectors,
        group: PermutationGroup::new(n, gens),
        dual: None,
        paired_generators: Vec::new(),
        integrality_verified: false,
    })
}

/// The group of permutations of the ambient coordinates that map the set of
/// input rows onto itself and fix the grading and dehomogenization.  The raw
/// matrix is the bipartite table; the extra forms join as pinned rows, and
/// the coordinate side of the pair group is the result.
pub fn ambient_automorphisms(input: &ConeInput) -> Result<AutoResult> {
    let (x, extras): (RatMat, Vec<Vec<Rat>>) = match single_input_matrix(input)? {
        RawInput::Points(x) => (x, Vec::new()),
        RawInput::Generators(x) | RawInput::Forms(x) => {
            let mut extras: Vec<Vec<Rat>> = Vec::new();
            if let Some(g) = &input.grading {
                extras.push(g.iter().map(|v| Rat::from_integer(v.clone())).collect());
            }
            if let Some(d) = &input.dehomogenization {
                extras.push(d.iter().map(|v| Rat::from_integer(v.clone())).collect());
            }
            (x, extras)
        }
    };
    let d = x.cols();
    let n = x.rows();
    if n + extras.len() == 0 {
        // Nothing constrains the coordinates, so all of their permutations
        // remain.
        let gens = symmetric_group_generators(d);
        return Ok(AutoResult {
            flavor: Flavor::Ambient,
            method: Method::InputMatrix,
            object: ObjectKind::Coordinates,
            group: PermutationGroup::new(d, gens),
            dual: None,
            paired_generators: Vec::new(),
            integrality_verified: false,
        });
    }
    let mut rows: Vec<Vec<Rat>> = (0..n).map(|i| x.row(i).to_vec()).collect();
    rows.extend(extras.iter().cloned());
    let mut table = WeightTable::bipartite(RatMat::from_rows(rows));
    for a in 0..extras.len() {
        table.fix_row(n + a);
    }
    let pairs = table.bipartite_automorphisms().generators;
    let col_gens: Vec<Permutation> = pairs.into_iter().map(|(_, q)| q).collect();
    Ok(AutoResult {
        flavor: Flavor::Ambient,
        method: Method::InputMatrix,
        object: ObjectKind::Coordinates,
        group: PermutationGroup::new(d, col_gens),
        dual: None,
        paired_generators: Vec::new(),
        integrality_verified: false,
    })
}

fn symmetric_group_generators(d: usize) -> Vec<Permutation> {
    if d < 2 {
        return Vec::new();
    }
    let mut gens = vec![Permutation::from_cycles(d, &[&[0, 1]]).expect("transposition")];
    if d > 2 {
        let cycle: Vec<usize> = (0..d).collect();
        gens.push(Permutation::from_cycles(d, &[&cycle]).expect("cycle"));
    }
    gens
}
