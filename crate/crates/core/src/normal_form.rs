//! Canonical types and lattice-isomorphism testing.
//!
//! The *type* of a cone is the evaluation table of a distinguished point set
//! (Hilbert basis or extreme rays) against the support forms, with grading
//! and dehomogenization values appended as fixed columns.  Canonically
//! relabeling the table gives a matrix that is invariant under any
//! relabeling of the input, and two cones with equal full canonical types
//! are isomorphic as lattice cones.
//!
//! The canonical matrix alone does not remember which sublattice of the
//! working lattice the rows span, so the type carries a *lattice tag*: a
//! Hermite basis of the image of the working lattice under the canonically
//! ordered support forms.  At the extreme-ray level the tag separates cones
//! (such as the two 4-dimensional simplicial cones below in the tests) whose
//! ray tables are identical but whose lattices differ.

use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::engines::evaluation_table;
use crate::error::Result;
use crate::graph::WeightTable;
use crate::hilbert::hilbert_basis;
use crate::linalg::{
    determinant_int, generates_full_lattice, hermite_normal_form, inverse_rat, solve_linear,
    Int, IntMat,
};
use crate::perm::PermutationGroup;

/// Bound on the number of column stabilizer elements enumerated while
/// minimizing the lattice tag.
const STABILIZER_LIMIT: u64 = 100_000;

/// Which point set the type is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeLevel {
    /// Hilbert basis rows: equality of canonical types decides lattice
    /// isomorphism.
    Full,
    /// Extreme ray rows only: cheaper, and still a complete invariant when
    /// combined with the lattice tag.
    ExtremeOnly,
}

/// Canonical type of a cone: the canonically relabeled evaluation table
/// together with the lattice tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalType {
    /// Canonically ordered evaluation table.  Columns are the support forms
    /// followed by `fixed_cols` pinned columns (grading, then
    /// dehomogenization, when present).
    pub matrix: IntMat,
    /// Number of trailing pinned columns.
    pub fixed_cols: usize,
    /// Hermite basis of the image of the working lattice under the
    /// canonically ordered support forms, minimized over all column orders
    /// that achieve the canonical matrix.
    pub lattice_tag: IntMat,
}

impl CanonicalType {
    /// Deterministic text form: a header per block, then the rows with
    /// space-separated entries.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(
            out,
            "canonical type {} {} {}",
            self.matrix.rows(),
            self.matrix.cols(),
            self.fixed_cols
        )
        .unwrap();
        for r in self.matrix.iter_rows() {
            writeln!(out, "{}", join_row(r)).unwrap();
        }
        writeln!(out, "lattice tag {} {}", self.lattice_tag.rows(), self.lattice_tag.cols())
            .unwrap();
        for r in self.lattice_tag.iter_rows() {
            writeln!(out, "{}", join_row(r)).unwrap();
        }
        out
    }
}

fn join_row(r: &[Int]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Hermite basis (zero rows dropped) of the lattice spanned by the
/// evaluations of the working basis vectors under the forms listed in
/// `order`.
fn lattice_tag_for_order(forms: &IntMat, order: &[usize]) -> IntMat {
    let (h, _) = hermite_normal_form(&forms.select_rows(order).transpose());
    let rows: Vec<Vec<Int>> = h
        .iter_rows()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.to_vec())
        .collect();
    if rows.is_empty() {
        IntMat::empty(0, h.cols())
    } else {
        IntMat::from_rows(rows)
    }
}

fn row_key(m: &IntMat) -> Vec<Vec<Int>> {
    m.iter_rows().map(|r| r.to_vec()).collect()
}

/// Canonical type of the cone at the requested level.
///
/// When the type rows generate the working lattice (always the case at the
/// full level), every relabeling that achieves the canonical matrix induces
/// the same tag and no search is needed.  Otherwise the tag is minimized
/// over the column stabilizer of the canonical table, subject to the
/// enumeration guard.
pub fn canonical_type(cone: &Cone, level: TypeLevel) -> Result<CanonicalType> {
    let points = match level {
        TypeLevel::Full => hilbert_basis(cone)?,
        TypeLevel::ExtremeOnly => cone.rays.clone(),
    };
    let forms = cone.support_forms()?;
    let s = forms.rows();
    let table = evaluation_table(&points, cone)?;
    let labeling = table.canonical_labeling();
    let canon = table.apply_labeling(&labeling);
    let matrix = canon.to_int()?;
    let fixed_cols = table.cols() - s;
    let form_order: Vec<usize> = labeling.col_order[..s].to_vec();

    let lattice_tag = if s == 0 || generates_full_lattice(&points) {
        lattice_tag_for_order(forms, &form_order)
    } else {
        // all column orders achieving the canonical matrix differ by a
        // column stabilizer element of the canonical table
        let mut canon_table = WeightTable::bipartite(canon);
        for k in s..table.cols() {
            canon_table.fix_col(k);
        }
        let col_gens = canon_table
            .bipartite_automorphisms()
            .generators
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        let stabilizer = PermutationGroup::new(table.cols(), col_gens);
        let mut best: Option<IntMat> = None;
        for tau in stabilizer.elements(STABILIZER_LIMIT)? {
            let order: Vec<usize> = (0..s).map(|j| form_order[tau.apply(j)]).collect();
            let tag = lattice_tag_for_order(forms, &order);
            let better = match &best {
                None => true,
                Some(b) => row_key(&tag) < row_key(b),
            };
            if better {
                best = Some(tag);
            }
        }
        best.expect("stabilizer contains the identity")
    };

    Ok(CanonicalType { matrix, fixed_cols, lattice_tag })
}

/// Whether `m` is a witness for `a` being isomorphic to `b`: a unimodular
/// working-coordinate matrix mapping the ray set of `a` onto the ray set of
/// `b` and transporting grading and dehomogenization.
fn verify_witness(m: &IntMat, a: &Cone, b: &Cone) -> bool {
    let unimodular = matches!(determinant_int(m), Ok(d) if d.abs().is_one());
    if !unimodular {
        return false;
    }
    if a.rays.mul(m).sorted_rows() != b.rays.sorted_rows() {
        return false;
    }
    let transports = |va: &Option<Vec<Int>>, vb: &Option<Vec<Int>>| match (va, vb) {
        (Some(x), Some(y)) => m.mul_vec(y) == *x,
        (None, None) => true,
        _ => false,
    };
    transports(&a.grading, &b.grading) && transports(&a.dehom, &b.dehom)
}

/// Solve for the linear map sending row `order_a[p]` of `rows_a` to row
/// `order_b[p]` of `rows_b`, as an integer matrix.  Returns `None` when the
/// matched systems are inconsistent or the solution is not integral.
fn matched_row_map(
    rows_a: &IntMat,
    order_a: &[usize],
    rows_b: &IntMat,
    order_b: &[usize],
) -> Option<IntMat> {
    let a = rows_a.select_rows(order_a).to_rat();
    let b = rows_b.select_rows(order_b).to_rat();
    let m = solve_linear(&a, &b)?;
    if !m.is_integral() {
        return None;
    }
    m.to_int().ok()
}

/// Test whether two cones are isomorphic as lattice cones: is there a
/// lattice automorphism of the working space mapping one cone onto the
/// other and transporting the grading and dehomogenization?  Cones with a
/// lineality space are compared through their pointed quotients, which is
/// equivalent because the saturated lineality lattice always splits off.
///
/// Returns a witness in working coordinates (right multiplication maps
/// working rows of the first cone to working rows of the second) when the
/// cones are isomorphic.
pub fn is_isomorphic(a: &Cone, b: &Cone) -> Result<Option<IntMat>> {
    // cheap invariants first
    if a.working_dim != b.working_dim
        || a.lineality.rows() != b.lineality.rows()
        || a.num_rays() != b.num_rays()
        || a.grading.is_some() != b.grading.is_some()
        || a.dehom.is_some() != b.dehom.is_some()
    {
        return Ok(None);
    }
    let forms_a = a.support_forms()?;
    let forms_b = b.support_forms()?;
    if forms_a.rows() != forms_b.rows() {
        return Ok(None);
    }
    if a.working_dim == 0 {
        // both cones are the origin modulo lineality spaces of equal rank
        return Ok(Some(IntMat::identity(0)));
    }
    let s = forms_a.rows();

    // extreme-ray tables must at least be isomorphic as weighted graphs
    let table_a = evaluation_table(&a.rays, a)?;
    let table_b = evaluation_table(&b.rays, b)?;
    let la = table_a.canonical_labeling();
    let lb = table_b.canonical_labeling();
    if table_a.apply_labeling(&la) != table_b.apply_labeling(&lb) {
        return Ok(None);
    }

    // fast path: when the rays generate the working lattices on both sides,
    // the canonical matching itself realizes an isomorphism
    if generates_full_lattice(&a.rays) && generates_full_lattice(&b.rays) {
        if let Some(m) = matched_row_map(&a.rays, &la.row_order, &b.rays, &lb.row_order) {
            if verify_witness(&m, a, b) {
                return Ok(Some(m));
            }
        }
        debug_assert!(false, "generating rays always realize the canonical matching");
    }

    // dual fast path: when the support forms generate, match them instead
    // and transport the map back to the primal side
    if generates_full_lattice(forms_a) && generates_full_lattice(forms_b) {
        let ca: Vec<usize> = la.col_order[..s].to_vec();
        let cb: Vec<usize> = lb.col_order[..s].to_vec();
        if let Some(psi) = matched_row_map(forms_a, &ca, forms_b, &cb) {
            if let Ok(inv) = inverse_rat(&psi.to_rat()) {
                if let Ok(m) = inv.transpose().to_int() {
                    if verify_witness(&m, a, b) {
                        return Ok(Some(m));
                    }
                }
            }
        }
        debug_assert!(false, "generating forms always realize the canonical matching");
    }

    // full comparison on the Hilbert basis tables, whose rows always
    // generate the working lattice
    let hb_a = hilbert_basis(a)?;
    let hb_b = hilbert_basis(b)?;
    if hb_a.rows() != hb_b.rows() {
        return Ok(None);
    }
    let full_a = evaluation_table(&hb_a, a)?;
    let full_b = evaluation_table(&hb_b, b)?;
    let fla = full_a.canonical_labeling();
    let flb = full_b.canonical_labeling();
    if full_a.apply_labeling(&fla) != full_b.apply_labeling(&flb) {
        return Ok(None);
    }
    if lattice_tag_for_order(forms_a, &fla.col_order[..s])
        != lattice_tag_for_order(forms_b, &flb.col_order[..s])
    {
        debug_assert!(false, "equal full tables force equal tags");
        return Ok(None);
    }
    let m = matched_row_map(&hb_a, &fla.row_order, &hb_b, &flb.row_order)
        .expect("matched Hilbert bases realize an integral map");
    assert!(verify_witness(&m, a, b), "Hilbert basis matching realizes an isomorphism");
    Ok(Some(m))
}
