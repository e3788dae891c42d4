//! Ordered partitions and equitable refinement.
//!
//! Cells live in an arena so that worklist entries stay valid across splits:
//! a split kills the parent cell and records its children, and a stale queue
//! entry expands to the live descendants when popped.

use std::collections::{BTreeMap, VecDeque};

use super::{CodeTable, TableKind};

#[derive(Clone)]
pub struct Partition {
    /// Arena: members of each cell, sorted ascending (meaningful while alive).
    members: Vec<Vec<usize>>,
    /// Children ids of dead cells.
    children: Vec<Vec<usize>>,
    alive: Vec<bool>,
    /// vertex -> id of its live cell
    cell_of: Vec<usize>,
    /// live cell ids in partition order
    order: Vec<usize>,
}

impl Partition {
    /// Initial coloring: fixed vertices become pinned singletons (in vertex
    /// order), then one cell per side for the rest; symmetric tables
    /// additionally split the free cell by diagonal code.
    pub fn initial(table: &CodeTable) -> (Partition, Vec<usize>) {
        let n = table.universe();
        let mut part = Partition {
            members: Vec::new(),
            children: Vec::new(),
            alive: Vec::new(),
            cell_of: vec![usize::MAX; n],
            order: Vec::new(),
        };
        let mut initial_cells: Vec<Vec<usize>> = Vec::new();
        for side in 0..2u8 {
            let in_side: Vec<usize> = (0..n).filter(|&u| table.side(u) == side).collect();
            if in_side.is_empty() {
                continue;
            }
            for &u in in_side.iter().filter(|&&u| table.is_fixed(u)) {
                initial_cells.push(vec![u]);
            }
            let free: Vec<usize> =
                in_side.iter().copied().filter(|&u| !table.is_fixed(u)).collect();
            if free.is_empty() {
                continue;
            }
            if table.kind == TableKind::Symmetric {
                let mut by_diag: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                for u in free {
                    by_diag.entry(table.diagonal_code(u)).or_default().push(u);
                }
                initial_cells.extend(by_diag.into_values());
            } else {
                initial_cells.push(free);
            }
        }
        let mut seeds = Vec::new();
        for cell in initial_cells {
            let id = part.push_cell(cell);
            part.order.push(id);
            seeds.push(id);
        }
        (part, seeds)
    }

    fn push_cell(&mut self, cell: Vec<usize>) -> usize {
        let id = self.members.len();
        for &u in &cell {
            self.cell_of[u] = id;
        }
        self.members.push(cell);
        self.children.push(Vec::new());
        self.alive.push(true);
        id
    }

    pub fn cell_members(&self, id: usize) -> &[usize] {
        debug_assert!(self.alive[id]);
        &self.members[id]
    }

    /// Cell sizes in partition order; relabeling-invariant node signature.
    pub fn structure(&self) -> Vec<u32> {
        self.order.iter().map(|&c| self.members[c].len() as u32).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.order.iter().all(|&c| self.members[c].len() == 1)
    }

    /// First (earliest position) cell with more than one member.
    pub fn first_non_singleton(&self) -> Option<usize> {
        self.order.iter().copied().find(|&c| self.members[c].len() > 1)
    }

    /// Vertices in partition order once the partition is discrete.
    pub fn discrete_labeling(&self) -> Vec<usize> {
        debug_assert!(self.is_discrete());
        self.order.iter().map(|&c| self.members[c][0]).collect()
    }

    /// Split `v` off as its own cell, placed before the remainder of its old
    /// cell.  Returns the id of the new singleton (the refinement seed).
    pub fn individualize(&mut self, v: usize) -> usize {
        let c = self.cell_of[v];
        debug_assert!(self.members[c].len() > 1);
        let rest: Vec<usize> = self.members[c].iter().copied().filter(|&u| u != v).collect();
        let ids = self.replace(c, vec![vec![v], rest]);
        ids[0]
    }

    /// Replace live cell `c` by the given fragments (in order).
    fn replace(&mut self, c: usize, fragments: Vec<Vec<usize>>) -> Vec<usize> {
        debug_assert!(self.alive[c]);
        debug_assert_eq!(
            fragments.iter().map(|f| f.len()).sum::<usize>(),
            self.members[c].len()
        );
        self.alive[c] = false;
        let ids: Vec<usize> = fragments.into_iter().map(|f| self.push_cell(f)).collect();
        self.children[c] = ids.clone();
        let pos = self.order.iter().position(|&x| x == c).expect("cell in order");
        self.order.splice(pos..=pos, ids.iter().copied());
        ids
    }

    fn live_descendants(&self, c: usize, out: &mut Vec<usize>) {
        if self.alive[c] {
            out.push(c);
        } else {
            for &ch in &self.children[c] {
                self.live_descendants(ch, out);
            }
        }
    }

    /// Refine to the coarsest equitable partition reachable from the seeds,
    /// by worklist splitting.  Fragments are ordered by ascending key, so the
    /// resulting cell order is determined by the table alone.
    pub fn refine(&mut self, table: &CodeTable, seeds: &[usize]) {
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut queued: Vec<bool> = vec![false; self.members.len()];
        let enqueue = |queue: &mut VecDeque<usize>, queued: &mut Vec<bool>, id: usize| {
            if queued.len() <= id {
                queued.resize(id + 1, false);
            }
            if !queued[id] {
                queued[id] = true;
                queue.push_back(id);
            }
        };
        for &s in seeds {
            enqueue(&mut queue, &mut queued, s);
        }
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            if !self.alive[s] {
                let mut live = Vec::new();
                self.live_descendants(s, &mut live);
                for d in live {
                    enqueue(&mut queue, &mut queued, d);
                }
                continue;
            }
            let splitter = self.members[s].clone();
            let splitter_side = table.side(splitter[0]);
            let targets = self.order.clone();
            for c in targets {
                if !self.alive[c] || self.members[c].len() == 1 {
                    continue;
                }
                // bipartite tables only relate opposite sides
                if table.kind == TableKind::Bipartite
                    && table.side(self.members[c][0]) == splitter_side
                {
                    continue;
                }
                let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
                for &u in &self.members[c] {
                    groups.entry(table.key(u, &splitter)).or_default().push(u);
                }
                if groups.len() == 1 {
                    continue;
                }
                let fragments: Vec<Vec<usize>> = groups.into_values().collect();
                let was_queued = queued[c];
                if was_queued {
                    queued[c] = false;
                }
                let ids = self.replace(c, fragments);
                queued.resize(self.members.len(), false);
                if was_queued {
                    // the parent still owed a splitting pass; pass the duty on
                    for &id in &ids {
                        enqueue(&mut queue, &mut queued, id);
                    }
                } else {
                    // all fragments but one largest suffice as future splitters
                    let max_len = ids.iter().map(|&id| self.members[id].len()).max().unwrap();
                    let skip = ids
                        .iter()
                        .position(|&id| self.members[id].len() == max_len)
                        .unwrap();
                    for (k, &id) in ids.iter().enumerate() {
                        if k != skip {
                            enqueue(&mut queue, &mut queued, id);
                        }
                    }
                }
            }
        }
    }

    /// Full equitability check, used by the tests as an oracle on the
    /// refinement: every cell must be constant w.r.t. every cell's key.
    #[cfg(test)]
    pub fn assert_equitable(&self, table: &CodeTable) {
        for &s in &self.order {
            let splitter = &self.members[s];
            for &c in &self.order {
                if table.kind == TableKind::Bipartite
                    && table.side(self.members[c][0]) == table.side(splitter[0])
                {
                    continue;
                }
                let keys: Vec<Vec<u32>> =
                    self.members[c].iter().map(|&u| table.key(u, splitter)).collect();
                assert!(
                    keys.windows(2).all(|w| w[0] == w[1]),
                    "partition not equitable: cell {c} splits against {s}"
                );
            }
        }
    }
}
