//! Permutations and permutation groups with an exact stabilizer chain.
//!
//! Groups are stored by generators plus a Schreier-Sims base/strong-generator
//! chain, built eagerly on construction.  That gives exact group orders,
//! membership tests and (guarded) element enumeration without ever writing
//! down more than the chain.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::Int;

/// A permutation of `{0, 1, ..., n-1}` stored by its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Build from an image vector, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Unsupported("image vector is not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles over `{0, ..., n-1}` (handy in tests).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w];
                let b = cyc[(w + 1) % cyc.len()];
                if a >= n || b >= n {
                    return Err(Error::Unsupported("cycle entry out of range".into()));
                }
                images[a] = b;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0usize; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &v)| i != v).map(|(i, _)| i)
    }

    /// Disjoint cycle decomposition.  Fixed points are omitted, each cycle
    /// starts at its smallest element, and cycles are sorted by first element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            out.push(cyc);
        }
        out
    }

    /// Multiplicative order (lcm of the cycle lengths).
    pub fn order(&self) -> Int {
        let mut ord = Int::one();
        for cyc in self.cycles() {
            ord = ord.lcm(&Int::from(cyc.len()));
        }
        ord
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    /// `transversal[q]` maps `point` to `q`; `None` when `q` is outside the orbit.
    transversal: Vec<Option<Permutation>>,
    /// Orbit points in discovery order (representatives are kept stable when
    /// the orbit grows, which the chain maintenance relies on).
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        Level { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    /// Extend the orbit and transversal to the closure under the current
    /// generator set.  Existing representatives are never replaced.
    fn close_orbit(&mut self) {
        let mut head = 0usize;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for gi in 0..self.gens.len() {
                let q = self.gens[gi].apply(p);
                if self.transversal[q].is_none() {
                    let rep = self.gens[gi].compose(self.transversal[p].as_ref().unwrap());
                    self.transversal[q] = Some(rep);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A permutation group given by generators, with an eagerly computed
/// stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Vec<Level>,
    order: Int,
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, gens: Vec::new(), chain: Vec::new(), order: Int::one() }
    }

    pub fn new(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut kept: Vec<Permutation> = Vec::new();
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        let mut group =
            PermutationGroup { degree, gens: kept, chain: Vec::new(), order: Int::one() };
        group.build_chain();
        group
    }

    fn build_chain(&mut self) {
        // All defining generators live at level 0; deeper levels receive the
        // sift residues discovered below.
        for gi in 0..self.gens.len() {
            let g = self.gens[gi].clone();
            if self.chain.is_empty() {
                let point = g.smallest_moved().expect("identity was filtered");
                self.chain.push(Level::new(point, self.degree));
            }
            self.chain[0].gens.push(g);
        }
        if let Some(level) = self.chain.first_mut() {
            level.close_orbit();
        }
        // Re-establish the chain condition from the bottom up.  Scanning a
        // level checks all its Schreier generators; a failure installs the
        // residue on every level it stabilizes into and resumes at the level
        // where sifting stalled.
        let mut i = self.chain.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            self.chain[lvl].close_orbit();
            match self.find_violation(lvl) {
                Some((h, j)) => {
                    self.add_generator(lvl + 1, j, h);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        let mut order = Int::one();
        for level in &self.chain {
            order *= Int::from(level.orbit.len());
        }
        self.order = order;
    }

    fn find_violation(&mut self, lvl: usize) -> Option<(Permutation, usize)> {
        for oi in 0..self.chain[lvl].orbit.len() {
            let b = self.chain[lvl].orbit[oi];
            for gi in 0..self.chain[lvl].gens.len() {
                let x = &self.chain[lvl].gens[gi];
                let xb = x.apply(b);
                let u_b = self.chain[lvl].transversal[b].as_ref().unwrap();
                let u_xb = self.chain[lvl].transversal[xb].as_ref().unwrap();
                let sg = u_xb.inverse().compose(&x.compose(u_b));
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(&sg, lvl + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Install `h` as a generator on levels `first..=last`.  The residue `h`
    /// fixes the base points of all levels before `last`, so the strong
    /// generating sets stay nested.  `last == chain.len()` appends a level.
    fn add_generator(&mut self, first: usize, last: usize, h: Permutation) {
        if last == self.chain.len() {
            let point = h.smallest_moved().expect("nonidentity residue");
            self.chain.push(Level::new(point, self.degree));
        }
        for l in first..=last {
            self.chain[l].gens.push(h.clone());
            self.chain[l].close_orbit();
        }
    }

    /// Sift `g` through the chain starting at level `from`.  Returns the
    /// residue and the level at which sifting stalled (`chain.len()` when it
    /// ran through the whole chain).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for j in from..self.chain.len() {
            let q = h.apply(self.chain[j].point);
            if q == self.chain[j].point {
                continue;
            }
            match &self.chain[j].transversal[q] {
                None => return (h, j),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        (h, self.chain.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &Int {
        &self.order
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.strip(g, 0);
        h.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Orbits of the natural action on `{0, ..., degree-1}`, including fixed
    /// points as singletons.  Each orbit is sorted; orbits are ordered by
    /// their smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.gens {
            for i in 0..self.degree {
                let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi] = lo;
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.degree {
            let r = find(&mut parent, i);
            classes.entry(r).or_default().push(i);
        }
        classes.into_values().collect()
    }

    /// All group elements, in a deterministic order.  Errors when the group
    /// order exceeds `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        if self.order > Int::from(limit) {
            return Err(Error::EnumerationGuard { limit });
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for q in 0..self.degree {
                let Some(u) = &level.transversal[q] else { continue };
                for e in &elems {
                    next.push(u.compose(e));
                }
            }
            elems = next;
        }
        elems.sort();
        Ok(elems)
    }

    /// Multiset of element orders, as (order, multiplicity) pairs sorted by
    /// order.  Subject to the same enumeration guard as `elements`.
    pub fn element_orders(&self, limit: u64) -> Result<Vec<(Int, usize)>> {
        let mut counts: BTreeMap<Int, usize> = BTreeMap::new();
        for e in self.elements(limit)? {
            *counts.entry(e.order()).or_insert(0) += 1;
        }
        Ok(counts.into_iter().collect())
    }
}
