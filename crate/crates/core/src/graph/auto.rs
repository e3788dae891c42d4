//! Automorphism search by individualization-refinement.
//!
//! The tree is rooted at the equitable refinement of the initial coloring.
//! Each node individualizes one vertex of the first non-singleton cell (a
//! position-based choice, hence invariant under relabeling) and refines.
//! The first (leftmost) leaf provides a reference certificate; any other leaf
//! with an equal certificate yields an automorphism.  Subtrees are pruned
//!
//! * by node signature: a node whose cell-size structure differs from the
//!   first path at the same depth cannot lead to a matching leaf,
//! * by orbits: on the first path, a candidate in the orbit of an already
//!   explored candidate (under the automorphisms found so far, restricted to
//!   those fixing the individualized prefix pointwise) is skipped, and
//! * by backjumping: once a subtree hanging off the first path produces an
//!   automorphism, the rest of that subtree is abandoned and the search
//!   resumes at the deepest first-path ancestor.  One representative per
//!   subtree suffices to generate the group.

use super::refine::Partition;
use super::CodeTable;
use crate::perm::Permutation;

pub fn automorphism_generators(table: &CodeTable) -> Vec<Permutation> {
    let (mut root, seeds) = Partition::initial(table);
    root.refine(table, &seeds);
    let mut search = Search {
        table,
        first_structure: Vec::new(),
        first_leaf: Vec::new(),
        first_cert: Vec::new(),
        gens: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.explore(root, 0, true, 0, &mut prefix);
    search.gens
}

struct Search<'t> {
    table: &'t CodeTable,
    /// cell-size structure of the first path, per depth
    first_structure: Vec<Vec<u32>>,
    /// position -> vertex at the first leaf
    first_leaf: Vec<usize>,
    first_cert: Vec<u32>,
    gens: Vec<Permutation>,
}

impl<'t> Search<'t> {
    /// Returns `Some(d)` to request unwinding to the first-path node at
    /// depth `d` after an automorphism was found below it.
    fn explore(
        &mut self,
        part: Partition,
        depth: usize,
        on_spine: bool,
        spine_depth: usize,
        prefix: &mut Vec<usize>,
    ) -> Option<usize> {
        let structure = part.structure();
        if on_spine {
            debug_assert_eq!(self.first_structure.len(), depth);
            self.first_structure.push(structure);
        } else if self.first_structure.get(depth) != Some(&structure) {
            return None;
        }
        let spine_depth = if on_spine { depth } else { spine_depth };

        let Some(target) = part.first_non_singleton() else {
            let labeling = part.discrete_labeling();
            let cert = self.table.certificate(&labeling);
            if on_spine {
                self.first_leaf = labeling;
                self.first_cert = cert;
                return None;
            }
            if cert == self.first_cert {
                let n = self.table.universe();
                let mut images = vec![0usize; n];
                for p in 0..n {
                    images[self.first_leaf[p]] = labeling[p];
                }
                let g = Permutation::from_images(images).expect("leaf bijection");
                if !g.is_identity() {
                    self.gens.push(g);
                    return Some(spine_depth);
                }
            }
            return None;
        };

        let candidates = part.cell_members(target).to_vec();
        let mut tried: Vec<usize> = Vec::new();
        let mut orbit_uf = UnionFind::new(0);
        let mut uf_epoch = usize::MAX;
        for (idx, &v) in candidates.iter().enumerate() {
            if on_spine && idx > 0 {
                if uf_epoch != self.gens.len() {
                    orbit_uf = self.prefix_orbits(prefix);
                    uf_epoch = self.gens.len();
                }
                if tried.iter().any(|&u| orbit_uf.same(u, v)) {
                    tried.push(v);
                    continue;
                }
            }
            let mut child = part.clone();
            let seed = child.individualize(v);
            child.refine(self.table, &[seed]);
            prefix.push(v);
            let jump = self.explore(child, depth + 1, on_spine && idx == 0, spine_depth, prefix);
            prefix.pop();
            tried.push(v);
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
                debug_assert_eq!(d, depth);
                debug_assert!(on_spine);
            }
        }
        None
    }

    /// Orbits of the subgroup generated by the automorphisms found so far
    /// that fix every vertex of `prefix`.
    fn prefix_orbits(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.table.universe());
        for g in &self.gens {
            if prefix.iter().any(|&x| g.apply(x) != x) {
                continue;
            }
            for u in 0..self.table.universe() {
                uf.union(u, g.apply(u));
            }
        }
        uf
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
