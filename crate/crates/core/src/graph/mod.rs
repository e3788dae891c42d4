//! Weighted-graph symmetry engine.
//!
//! Cone problems are reduced to two kinds of finite weighted graphs:
//!
//! * *bipartite tables*: an `m x s` matrix of rational weights, to be
//!   permuted by a pair of permutations (rows, columns);
//! * *symmetric tables*: an `n x n` symmetric matrix, to be permuted by a
//!   single permutation acting on both sides.
//!
//! Individual rows/columns/vertices can be pinned ("fixed"): an automorphism
//! must map them to themselves, and canonical labelings keep them at their
//! own position.
//!
//! The solver compresses weights to small integer codes, runs a partition
//! refinement to an equitable coloring and then explores an
//! individualization-refinement tree.  Automorphisms come out of leaf
//! certificate matches; canonical labelings come from a separate row-placement
//! branch-and-bound that maximizes the relabeled matrix lexicographically.

mod auto;
mod canon;
mod refine;

use std::collections::BTreeMap;

use crate::linalg::{Rat, RatMat};
use crate::perm::Permutation;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableKind {
    Bipartite,
    Symmetric,
}

/// A weighted table to be solved for symmetries.
#[derive(Clone)]
pub struct WeightTable {
    kind: TableKind,
    weights: RatMat,
    row_fixed: Vec<bool>,
    col_fixed: Vec<bool>,
}

/// Generators of the automorphism group of a bipartite table, as paired
/// (row, column) permutations: entry `[i][j]` maps to `[rows(i)][cols(j)]`.
pub struct BipartiteAutomorphisms {
    pub generators: Vec<(Permutation, Permutation)>,
}

/// Result of a canonical labeling: `row_order[p]` is the original row placed
/// at position `p` of the canonical matrix, and likewise for columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
}

impl WeightTable {
    pub fn bipartite(weights: RatMat) -> Self {
        let (m, s) = (weights.rows(), weights.cols());
        WeightTable {
            kind: TableKind::Bipartite,
            weights,
            row_fixed: vec![false; m],
            col_fixed: vec![false; s],
        }
    }

    pub fn symmetric(weights: RatMat) -> Self {
        let n = weights.rows();
        assert_eq!(n, weights.cols(), "symmetric table must be square");
        for i in 0..n {
            for j in 0..i {
                assert_eq!(weights[(i, j)], weights[(j, i)], "table must be symmetric");
            }
        }
        WeightTable {
            kind: TableKind::Symmetric,
            weights,
            row_fixed: vec![false; n],
            col_fixed: vec![false; n],
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.weights.rows()
    }

    pub fn cols(&self) -> usize {
        self.weights.cols()
    }

    pub fn weights(&self) -> &RatMat {
        &self.weights
    }

    /// Pin a row: automorphisms must map it to itself and canonical
    /// labelings keep it at its own index.  On symmetric tables this pins the
    /// vertex on both sides.
    pub fn fix_row(&mut self, i: usize) {
        self.row_fixed[i] = true;
        if self.kind == TableKind::Symmetric {
            self.col_fixed[i] = true;
        }
    }

    pub fn fix_col(&mut self, j: usize) {
        self.col_fixed[j] = true;
        if self.kind == TableKind::Symmetric {
            self.row_fixed[j] = true;
        }
    }

    pub fn row_fixed(&self) -> &[bool] {
        &self.row_fixed
    }

    pub fn col_fixed(&self) -> &[bool] {
        &self.col_fixed
    }

    fn compress(&self) -> CodeTable {
        let mut palette: BTreeMap<&Rat, u32> = BTreeMap::new();
        for r in 0..self.weights.rows() {
            for w in self.weights.row(r) {
                palette.entry(w).or_insert(0);
            }
        }
        for (rank, (_, code)) in palette.iter_mut().enumerate() {
            *code = rank as u32;
        }
        let mut codes = Vec::with_capacity(self.weights.rows() * self.weights.cols());
        for r in 0..self.weights.rows() {
            for w in self.weights.row(r) {
                codes.push(palette[w]);
            }
        }
        CodeTable {
            kind: self.kind,
            m: self.weights.rows(),
            s: self.weights.cols(),
            codes,
            row_fixed: self.row_fixed.clone(),
            col_fixed: self.col_fixed.clone(),
        }
    }

    /// Generators of the automorphism group of a bipartite table.
    ///
    /// Every automorphism is a pair (row permutation, column permutation);
    /// the generated pair group is exactly the set of weight-preserving
    /// pairs.  Fixed rows/columns are mapped to themselves.
    pub fn bipartite_automorphisms(&self) -> BipartiteAutomorphisms {
        assert_eq!(self.kind, TableKind::Bipartite);
        let code = self.compress();
        let gens = auto::automorphism_generators(&code);
        let m = code.m;
        let generators = gens
            .into_iter()
            .map(|g| {
                let rows =
                    Permutation::from_images((0..m).map(|i| g.apply(i)).collect()).unwrap();
                let cols = Permutation::from_images(
                    (m..m + code.s).map(|j| g.apply(j) - m).collect(),
                )
                .unwrap();
                (rows, cols)
            })
            .collect();
        BipartiteAutomorphisms { generators }
    }

    /// Generators of the automorphism group of a symmetric table.
    pub fn symmetric_automorphisms(&self) -> Vec<Permutation> {
        assert_eq!(self.kind, TableKind::Symmetric);
        let code = self.compress();
        auto::automorphism_generators(&code)
    }

    /// Canonical labeling of a bipartite table: the (row, column) order that
    /// lexicographically maximizes the relabeled matrix, read row-major.
    /// Fixed rows and columns stay at their own indices; fixed columns must
    /// form a suffix of the column range.
    pub fn canonical_labeling(&self) -> Labeling {
        assert_eq!(self.kind, TableKind::Bipartite);
        let code = self.compress();
        canon::canonical_labeling(&code)
    }

    /// The matrix as reordered by a labeling.
    pub fn apply_labeling(&self, labeling: &Labeling) -> RatMat {
        let mut rows = Vec::with_capacity(self.weights.rows());
        for &r in &labeling.row_order {
            rows.push(
                labeling.col_order.iter().map(|&c| self.weights[(r, c)].clone()).collect(),
            );
        }
        if rows.is_empty() {
            RatMat::empty(0, self.weights.cols())
        } else {
            RatMat::from_rows(rows)
        }
    }

    /// Canonical form of the matrix itself.
    pub fn canonical_matrix(&self) -> RatMat {
        let labeling = self.canonical_labeling();
        self.apply_labeling(&labeling)
    }
}

/// Compressed table: weights replaced by their rank in the sorted palette.
/// Rank order agrees with weight order, so lexicographic comparisons of code
/// matrices agree with comparisons of the underlying weight matrices.
pub(crate) struct CodeTable {
    pub kind: TableKind,
    pub m: usize,
    pub s: usize,
    pub codes: Vec<u32>,
    pub row_fixed: Vec<bool>,
    pub col_fixed: Vec<bool>,
}

impl CodeTable {
    pub fn code(&self, r: usize, c: usize) -> u32 {
        self.codes[r * self.s + c]
    }

    /// Number of vertices of the refinement universe: rows then columns for
    /// bipartite tables, the single vertex set for symmetric ones.
    pub fn universe(&self) -> usize {
        match self.kind {
            TableKind::Bipartite => self.m + self.s,
            TableKind::Symmetric => self.m,
        }
    }

    /// 0 = row side, 1 = column side.
    pub fn side(&self, u: usize) -> u8 {
        match self.kind {
            TableKind::Bipartite => u8::from(u >= self.m),
            TableKind::Symmetric => 0,
        }
    }

    pub fn is_fixed(&self, u: usize) -> bool {
        match self.kind {
            TableKind::Bipartite => {
                if u < self.m {
                    self.row_fixed[u]
                } else {
                    self.col_fixed[u - self.m]
                }
            }
            TableKind::Symmetric => self.row_fixed[u],
        }
    }

    /// Sorted multiset of codes between `u` and the splitter members.
    /// For bipartite tables the splitter must live on the other side.
    pub fn key(&self, u: usize, splitter: &[usize]) -> Vec<u32> {
        let mut key: Vec<u32> = match self.kind {
            TableKind::Bipartite => {
                if u < self.m {
                    splitter.iter().map(|&w| self.code(u, w - self.m)).collect()
                } else {
                    splitter.iter().map(|&w| self.code(w, u - self.m)).collect()
                }
            }
            TableKind::Symmetric => splitter.iter().map(|&w| self.code(u, w)).collect(),
        };
        key.sort_unstable();
        key
    }

    pub fn diagonal_code(&self, u: usize) -> u32 {
        self.code(u, u)
    }

    /// Flat certificate of the table under a discrete labeling of the
    /// universe (position -> vertex).
    pub fn certificate(&self, labeling: &[usize]) -> Vec<u32> {
        match self.kind {
            TableKind::Bipartite => {
                let row_order: Vec<usize> =
                    labeling.iter().copied().filter(|&u| u < self.m).collect();
                let col_order: Vec<usize> =
                    labeling.iter().copied().filter(|&u| u >= self.m).map(|u| u - self.m).collect();
                let mut cert = Vec::with_capacity(self.m * self.s);
                for &r in &row_order {
                    for &c in &col_order {
                        cert.push(self.code(r, c));
                    }
                }
                cert
            }
            TableKind::Symmetric => {
                let mut cert = Vec::with_capacity(self.m * self.m);
                for &r in labeling {
                    for &c in labeling {
                        cert.push(self.code(r, c));
                    }
                }
                cert
            }
        }
    }
}
