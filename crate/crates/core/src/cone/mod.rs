//! Rational cones and polyhedra.
//!
//! A cone can be entered by generators, by inequalities, or as the
//! homogenization of a polytope given by its points.  Whatever the source,
//! construction reduces the cone to *working coordinates*: a pointed,
//! full-dimensional cone in a lattice `Z^q` together with the transforms
//! between ambient and working space.  All combinatorial and arithmetic
//! machinery (support forms, Hilbert bases, automorphism tables, normal
//! forms) operates on the working cone.

pub mod dd;

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, Int, IntMat, Rat, RatMat};
use dd::halfspace_intersection;

/// Raw input as it comes from a file or from a model constructor.
#[derive(Debug, Clone)]
pub struct ConeInput {
    pub amb_dim: usize,
    pub generators: Option<RatMat>,
    pub polytope_points: Option<RatMat>,
    pub inequalities: Option<RatMat>,
    pub grading: Option<Vec<Int>>,
    pub dehomogenization: Option<Vec<Int>>,
}

impl ConeInput {
    pub fn new(amb_dim: usize) -> Self {
        ConeInput {
            amb_dim,
            generators: None,
            polytope_points: None,
            inequalities: None,
            grading: None,
            dehomogenization: None,
        }
    }
}

/// A cone in reduced form.  `rays` and `rays_ambient` are parallel row
/// lists; the working rows are images of the ambient rows under
/// `to_working`, made primitive.
#[derive(Debug, Clone)]
pub struct Cone {
    /// Dimension of the space the input lives in (input dimension plus one
    /// for polytope input, which is homogenized).
    pub ambient_dim: usize,
    /// Dimension of the linear span of the cone.
    pub cone_dim: usize,
    /// Dimension of the working space: `cone_dim` minus the lineality
    /// dimension.
    pub working_dim: usize,
    /// Basis of the lineality space in ambient coordinates.
    pub lineality: IntMat,
    /// Extreme rays modulo lineality, ambient coordinates, sorted.
    pub rays_ambient: IntMat,
    /// The same rays in working coordinates (primitive rows).
    pub rays: IntMat,
    /// Support forms of the working cone, computed on first use (see the
    /// `support_forms` accessor).
    support_forms: OnceLock<IntMat>,
    /// Right-multiplication matrix mapping an ambient row vector in the span
    /// of the cone to its working coordinates.
    pub to_working: RatMat,
    /// Right-multiplication matrix mapping a working row vector back into
    /// ambient coordinates (a section; round trips are exact modulo
    /// lineality).
    pub from_working: IntMat,
    /// Grading in working coordinates, validated positive on all rays.
    pub grading: Option<Vec<Int>>,
    pub grading_ambient: Option<Vec<Int>>,
    /// Dehomogenization in working coordinates, validated nonnegative.
    pub dehom: Option<Vec<Int>>,
    pub dehom_ambient: Option<Vec<Int>>,
    /// True when ambient and working coordinates coincide.
    pub identity_transform: bool,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        // the lazily computed support forms are a function of the geometry
        // and do not participate in equality
        self.ambient_dim == other.ambient_dim
            && self.cone_dim == other.cone_dim
            && self.working_dim == other.working_dim
            && self.lineality == other.lineality
            && self.rays_ambient == other.rays_ambient
            && self.rays == other.rays
            && self.to_working == other.to_working
            && self.from_working == other.from_working
            && self.grading == other.grading
            && self.grading_ambient == other.grading_ambient
            && self.dehom == other.dehom
            && self.dehom_ambient == other.dehom_ambient
            && self.identity_transform == other.identity_transform
    }
}

impl Eq for Cone {}

/// The polyhedron `{ x in C : dehom(x) = 1 }` split into vertices and
/// recession rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    /// Vertices in working coordinates, scaled so the dehomogenization is 1.
    pub vertices: RatMat,
    /// The same vertices in ambient coordinates.
    pub vertices_ambient: RatMat,
    /// Indices into `Cone::rays` of the vertex rays, in ray order.
    pub vertex_rays: Vec<usize>,
    /// Indices of the recession rays (dehomogenization value zero).
    pub recession_rays: Vec<usize>,
}

/// Drop zero rows and scale the rest to primitive integer vectors.
fn primitive_int_rows(m: &RatMat) -> Result<IntMat> {
    let rows: Vec<Vec<Rat>> = m
        .iter_rows()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.to_vec())
        .collect();
    if rows.is_empty() {
        return Ok(IntMat::empty(0, m.cols()));
    }
    RatMat::from_rows(rows).rows_to_primitive()
}

/// `{ x : m * x = 0 }` as saturated basis rows.
fn right_kernel(m: &IntMat, dim: usize) -> IntMat {
    if m.rows() == 0 {
        return IntMat::identity(dim);
    }
    linalg::integer_kernel_rows(&m.transpose())
}

fn stack_with_negated(base: IntMat, rows: &IntMat) -> IntMat {
    let mut out = base;
    for r in rows.iter_rows() {
        out = out.vstack(&IntMat::from_rows(vec![r.to_vec()]));
        out = out.vstack(&IntMat::from_rows(vec![r.iter().map(|x| -x.clone()).collect()]));
    }
    out
}

/// Lineality space and extreme rays of a cone given by generators.
fn generator_description(gens: &IntMat, dim: usize) -> Result<(IntMat, IntMat)> {
    let dual = halfspace_intersection(gens, dim)?;
    let stacked = dual.rays.vstack(&dual.lineality);
    let lineality = right_kernel(&stacked, dim);
    if lineality.rows() > 0 {
        // not pointed: fall back to a primal double description run
        let constraints = stack_with_negated(dual.rays.clone(), &dual.lineality);
        let primal = halfspace_intersection(&constraints, dim)?;
        return Ok((primal.lineality, primal.rays));
    }
    // pointed case: the extreme rays are exactly those generators whose
    // tight set of support forms is not contained in any other generator's
    let mut cand: Vec<Vec<Int>> = gens.iter_rows().map(|r| r.to_vec()).collect();
    cand.sort();
    cand.dedup();
    let tights: Vec<Vec<bool>> = cand
        .iter()
        .map(|y| dual.rays.iter_rows().map(|s| dot(s, y).is_zero()).collect())
        .collect();
    let mut extreme_rows = Vec::new();
    for i in 0..cand.len() {
        let dominated = (0..cand.len()).any(|j| {
            j != i && tights[i].iter().zip(&tights[j]).all(|(a, b)| !*a || *b)
        });
        if !dominated {
            extreme_rows.push(cand[i].clone());
        }
    }
    let rays = if extreme_rows.is_empty() {
        IntMat::empty(0, dim)
    } else {
        IntMat::from_rows(extreme_rows)
    };
    Ok((IntMat::empty(0, dim), rays))
}

impl Cone {
    pub fn from_input(input: &ConeInput) -> Result<Cone> {
        let amb = input.amb_dim;
        if amb == 0 {
            return Err(Error::EmptyInput);
        }
        let check = |m: &RatMat| -> Result<()> {
            if m.rows() > 0 && m.cols() != amb {
                return Err(Error::DimensionMismatch { expected: amb, got: m.cols() });
            }
            Ok(())
        };
        if let Some(m) = &input.generators {
            check(m)?;
        }
        if let Some(m) = &input.polytope_points {
            check(m)?;
        }
        if let Some(m) = &input.inequalities {
            check(m)?;
        }
        if let Some(g) = &input.grading {
            if g.len() != amb {
                return Err(Error::DimensionMismatch { expected: amb, got: g.len() });
            }
        }
        if let Some(d) = &input.dehomogenization {
            if d.len() != amb {
                return Err(Error::DimensionMismatch { expected: amb, got: d.len() });
            }
        }
        if input.polytope_points.is_some() {
            if input.generators.is_some() || input.inequalities.is_some() {
                return Err(Error::Unsupported(
                    "polytope input cannot be combined with cone or inequalities".into(),
                ));
            }
            if input.grading.is_some() {
                return Err(Error::Unsupported(
                    "grading cannot be combined with polytope input".into(),
                ));
            }
            if input.dehomogenization.is_some() {
                return Err(Error::Unsupported(
                    "dehomogenization cannot be combined with polytope input".into(),
                ));
            }
        }
        if input.generators.is_none()
            && input.polytope_points.is_none()
            && input.inequalities.is_none()
        {
            return Err(Error::EmptyInput);
        }

        if let Some(points) = &input.polytope_points {
            return Self::from_polytope_points(amb, points);
        }

        // assemble the effective generator / inequality matrices
        let gens = match &input.generators {
            Some(m) => Some(primitive_int_rows(m)?),
            None => None,
        };
        let ineqs = match &input.inequalities {
            Some(m) => Some(primitive_int_rows(m)?),
            None => None,
        };

        // extreme rays and lineality in ambient coordinates
        let (lineality, rays_ambient) = match (&gens, &ineqs) {
            (Some(g), None) => generator_description(g, amb)?,
            (None, Some(a)) => {
                let r = halfspace_intersection(a, amb)?;
                (r.lineality, r.rays)
            }
            (Some(g), Some(a)) => {
                let dual = halfspace_intersection(g, amb)?;
                let constraints =
                    stack_with_negated(dual.rays.clone(), &dual.lineality).vstack(a);
                let r = halfspace_intersection(&constraints, amb)?;
                (r.lineality, r.rays)
            }
            (None, None) => unreachable!("validated above"),
        };

        Self::from_geometry(
            amb,
            lineality,
            rays_ambient,
            input.grading.clone(),
            input.dehomogenization.clone(),
        )
    }

    /// Homogenize a polytope given by points: the cone over `(p, 1)`, with
    /// the last coordinate as dehomogenization.
    fn from_polytope_points(amb: usize, points: &RatMat) -> Result<Cone> {
        let dim = amb + 1;
        let mut dehom = vec![Int::zero(); dim];
        dehom[dim - 1] = Int::one();

        let mut pts: Vec<Vec<Rat>> = points.iter_rows().map(|r| r.to_vec()).collect();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Self::from_geometry(
                dim,
                IntMat::empty(0, dim),
                IntMat::empty(0, dim),
                None,
                Some(dehom),
            );
        }

        // Bounding-box certificate: a point whose coordinates all sit on the
        // boundary of the bounding box is a vertex of the box, hence an
        // extreme point of the polytope.  When every distinct point is
        // certified this way the homogenized points are exactly the extreme
        // rays (the cone over a height-one point set is always pointed), and
        // the double description step can be skipped entirely.  This covers
        // all 0/1 polytopes.
        let mut lo = pts[0].clone();
        let mut hi = pts[0].clone();
        for p in &pts {
            for k in 0..amb {
                if p[k] < lo[k] {
                    lo[k] = p[k].clone();
                }
                if p[k] > hi[k] {
                    hi[k] = p[k].clone();
                }
            }
        }
        let all_box_vertices =
            pts.iter().all(|p| (0..amb).all(|k| p[k] == lo[k] || p[k] == hi[k]));

        let rows: Vec<Vec<Rat>> = pts
            .into_iter()
            .map(|mut p| {
                p.push(Rat::one());
                p
            })
            .collect();
        let gens = RatMat::from_rows(rows).rows_to_primitive()?;

        let (lineality, rays_ambient) = if all_box_vertices {
            (IntMat::empty(0, dim), gens.sorted_rows())
        } else {
            generator_description(&gens, dim)?
        };

        Self::from_geometry(dim, lineality, rays_ambient, None, Some(dehom))
    }

    fn from_geometry(
        dim: usize,
        lineality: IntMat,
        rays_ambient: IntMat,
        grading_ambient: Option<Vec<Int>>,
        dehom_ambient: Option<Vec<Int>>,
    ) -> Result<Cone> {
        let span_rows = rays_ambient.vstack(&lineality);
        let basis = linalg::span_lattice_basis(&span_rows);
        let cone_dim = basis.rows();

        if cone_dim == 0 {
            // the cone is the origin
            let grading = grading_ambient.clone().map(|_| Vec::new());
            let dehom = dehom_ambient.clone().map(|_| Vec::new());
            return Ok(Cone {
                ambient_dim: dim,
                cone_dim: 0,
                working_dim: 0,
                lineality: IntMat::empty(0, dim),
                rays_ambient: IntMat::empty(0, dim),
                rays: IntMat::empty(0, 0),
                support_forms: OnceLock::new(),
                to_working: RatMat::zeros(dim, 0),
                from_working: IntMat::empty(0, dim),
                grading,
                grading_ambient,
                dehom,
                dehom_ambient,
                identity_transform: false,
            });
        }

        let ray_coords = linalg::solve_integral_rows(&basis, &rays_ambient)
            .expect("extreme rays lie in the saturated span lattice");
        let lin_coords = linalg::solve_integral_rows(&basis, &lineality)
            .expect("lineality lies in the saturated span lattice");

        // quotient out the lineality: unimodular coordinates in which the
        // first coordinates span the (saturated) lineality lattice
        let (quot, section) = if lin_coords.rows() == 0 {
            (IntMat::identity(cone_dim), IntMat::identity(cone_dim))
        } else {
            let sat = linalg::span_lattice_basis(&lin_coords);
            let l = sat.rows();
            let (_, d, v) = linalg::smith_normal_form(&sat);
            for i in 0..l {
                debug_assert!(d[(i, i)].is_one(), "saturated lattice splits off");
            }
            let v_inv = linalg::inverse_rat(&v.to_rat())?.to_int()?;
            let tail: Vec<usize> = (l..cone_dim).collect();
            let quot = v.transpose().select_rows(&tail).transpose();
            let section = v_inv.select_rows(&tail);
            (quot, section)
        };
        let working_dim = quot.cols();

        let identity_candidate = basis.is_identity() && lin_coords.rows() == 0;
        let (rays, to_working, from_working) = if identity_candidate {
            (rays_ambient.clone(), RatMat::identity(dim), IntMat::identity(dim))
        } else {
            let images = ray_coords.mul(&quot);
            let mut rows = Vec::with_capacity(images.rows());
            for r in images.iter_rows() {
                rows.push(linalg::primitive_vector(r)?);
            }
            let rays = if rows.is_empty() {
                IntMat::empty(0, working_dim)
            } else {
                IntMat::from_rows(rows)
            };
            let from_working = section.mul(&basis);
            let gram = basis.mul(&basis.transpose()).to_rat();
            let pseudo = basis.transpose().to_rat().mul(&linalg::inverse_rat(&gram)?);
            let to_working = pseudo.mul(&quot.to_rat());
            (rays, to_working, from_working)
        };

        debug_assert!(
            working_dim > 0 || rays.rows() == 0,
            "rays survive the lineality quotient"
        );

        let grading = match &grading_ambient {
            Some(g) => {
                if lineality.rows() > 0 {
                    return Err(Error::GradingNotPositive);
                }
                let gw = from_working.mul_vec(g);
                for r in rays.iter_rows() {
                    if !dot(r, &gw).is_positive() {
                        return Err(Error::GradingNotPositive);
                    }
                }
                Some(gw)
            }
            None => None,
        };
        let dehom = match &dehom_ambient {
            Some(d0) => {
                for l in lineality.iter_rows() {
                    if !dot(l, d0).is_zero() {
                        return Err(Error::DehomogenizationNegative);
                    }
                }
                let dw = from_working.mul_vec(d0);
                for r in rays.iter_rows() {
                    if dot(r, &dw).is_negative() {
                        return Err(Error::DehomogenizationNegative);
                    }
                }
                Some(dw)
            }
            None => None,
        };

        let identity_transform = identity_candidate && dim == working_dim;
        Ok(Cone {
            ambient_dim: dim,
            cone_dim,
            working_dim,
            lineality,
            rays_ambient,
            rays,
            support_forms: OnceLock::new(),
            to_working,
            from_working,
            grading,
            grading_ambient,
            dehom,
            dehom_ambient,
            identity_transform,
        })
    }

    pub fn num_rays(&self) -> usize {
        self.rays.rows()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.rows() == 0
    }

    /// Support forms of the working cone, sorted.  The working cone is
    /// exactly `{ x : s * x >= 0 for every row s }`.  Computed by double
    /// description on first use and cached; goals that never evaluate
    /// support forms (Euclidean distances, for instance) avoid the cost.
    pub fn support_forms(&self) -> Result<&IntMat> {
        if let Some(forms) = self.support_forms.get() {
            return Ok(forms);
        }
        let computed = if self.working_dim == 0 {
            IntMat::empty(0, 0)
        } else {
            let dual = halfspace_intersection(&self.rays, self.working_dim)?;
            debug_assert_eq!(dual.lineality.rows(), 0, "working cone is full-dimensional");
            dual.rays
        };
        Ok(self.support_forms.get_or_init(|| computed))
    }

    /// Whether the support forms have been computed yet.  Lets callers
    /// check that a computation stayed on the facet-free path.
    pub fn support_forms_computed(&self) -> bool {
        self.support_forms.get().is_some()
    }

    /// Ray-against-support-form incidence: `incidence[i][j]` is true when
    /// ray `i` lies on the hyperplane of support form `j`.
    pub fn incidence(&self) -> Result<Vec<Vec<bool>>> {
        let forms = self.support_forms()?;
        Ok(self
            .rays
            .iter_rows()
            .map(|y| forms.iter_rows().map(|s| dot(y, s).is_zero()).collect())
            .collect())
    }

    /// Split the rays along the dehomogenization into vertices and recession
    /// rays.
    pub fn polyhedron(&self) -> Result<Polyhedron> {
        let dw = self.dehom.as_ref().ok_or(Error::NoDehomogenization)?;
        let da = self.dehom_ambient.as_ref().expect("ambient dehomogenization present");
        let mut vertex_rays = Vec::new();
        let mut recession_rays = Vec::new();
        for i in 0..self.rays.rows() {
            if dot(self.rays.row(i), dw).is_positive() {
                vertex_rays.push(i);
            } else {
                recession_rays.push(i);
            }
        }
        if vertex_rays.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let scale = |row: &[Int], value: Int| -> Vec<Rat> {
            row.iter().map(|x| Rat::new(x.clone(), value.clone())).collect()
        };
        let vertices = RatMat::from_rows(
            vertex_rays
                .iter()
                .map(|&i| scale(self.rays.row(i), dot(self.rays.row(i), dw)))
                .collect(),
        );
        let vertices_ambient = RatMat::from_rows(
            vertex_rays
                .iter()
                .map(|&i| scale(self.rays_ambient.row(i), dot(self.rays_ambient.row(i), da)))
                .collect(),
        );
        Ok(Polyhedron { vertices, vertices_ambient, vertex_rays, recession_rays })
    }
}
