//! Canonical labeling of bipartite tables.
//!
//! The canonical form is the lexicographically greatest matrix (read
//! row-major) over all row orders and all orders of the non-fixed columns.
//! Fixed rows and columns stay at their own indices; fixed columns must form
//! a suffix of the column range.
//!
//! Rows are placed top-down.  The column order is kept as an ordered list of
//! blocks that every placed row is constant on; committing a row refines each
//! block by the row's values in descending order, which realizes the row's
//! best possible appearance.  The appearance of a committed row can therefore
//! never change, and the search only has to branch on rows that tie for the
//! greatest appearance, with a global incumbent for pruning.

use super::{CodeTable, Labeling};

pub fn canonical_labeling(table: &CodeTable) -> Labeling {
    if table.s == 0 {
        // nothing distinguishes the rows; any order realizes the empty matrix
        return Labeling { row_order: (0..table.m).collect(), col_order: Vec::new() };
    }
    let free_cols: Vec<usize> = (0..table.s).filter(|&c| !table.col_fixed[c]).collect();
    let fixed_cols: Vec<usize> = (0..table.s).filter(|&c| table.col_fixed[c]).collect();
    assert!(
        fixed_cols.iter().all(|&c| c >= free_cols.len()),
        "fixed columns must form a suffix"
    );
    let mut search = Search { table, fixed_cols, incumbent: None };
    let blocks = if free_cols.is_empty() { Vec::new() } else { vec![free_cols] };
    let mut placed = Vec::with_capacity(table.m);
    let mut used = vec![false; table.m];
    let mut current = Vec::with_capacity(table.m);
    search.place(&mut placed, &mut used, blocks, &mut current);
    let best = search.incumbent.expect("search visits at least one leaf");
    Labeling { row_order: best.row_order, col_order: best.col_order }
}

struct Incumbent {
    rows: Vec<Vec<u32>>,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
}

struct Search<'t> {
    table: &'t CodeTable,
    fixed_cols: Vec<usize>,
    incumbent: Option<Incumbent>,
}

impl<'t> Search<'t> {
    /// The appearance row `r` would have under the current blocks: per block
    /// its values sorted descending, then the fixed columns verbatim.
    fn appearance(&self, r: usize, blocks: &[Vec<usize>]) -> Vec<u32> {
        let mut row = Vec::with_capacity(self.table.s);
        for block in blocks {
            let mut vals: Vec<u32> = block.iter().map(|&c| self.table.code(r, c)).collect();
            vals.sort_unstable_by(|a, b| b.cmp(a));
            row.extend(vals);
        }
        row.extend(self.fixed_cols.iter().map(|&c| self.table.code(r, c)));
        row
    }

    /// Refine the blocks by row `r`'s values in descending order.
    fn refine_blocks(&self, r: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut by_val: Vec<(u32, usize)> =
                block.iter().map(|&c| (self.table.code(r, c), c)).collect();
            // descending by value, ascending by column id within equal values
            by_val.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let mut cur_val = None;
            for (v, c) in by_val {
                if cur_val != Some(v) {
                    out.push(Vec::new());
                    cur_val = Some(v);
                }
                out.last_mut().unwrap().push(c);
            }
        }
        out
    }

    fn place(
        &mut self,
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
        blocks: Vec<Vec<usize>>,
        current: &mut Vec<Vec<u32>>,
    ) {
        let t = placed.len();
        if t == self.table.m {
            if self.incumbent.is_none() {
                let mut col_order: Vec<usize> = blocks.iter().flatten().copied().collect();
                col_order.extend(self.fixed_cols.iter().copied());
                self.incumbent = Some(Incumbent {
                    rows: current.clone(),
                    row_order: placed.clone(),
                    col_order,
                });
            }
            return;
        }
        let candidates: Vec<usize> = if self.table.row_fixed[t] {
            if used[t] {
                return;
            }
            vec![t]
        } else {
            (0..self.table.m)
                .filter(|&r| !used[r] && !self.table.row_fixed[r])
                .collect()
        };
        if candidates.is_empty() {
            return;
        }
        let appearances: Vec<Vec<u32>> =
            candidates.iter().map(|&r| self.appearance(r, &blocks)).collect();
        let best = appearances.iter().max().unwrap().clone();
        if let Some(inc) = &self.incumbent {
            match best.cmp(&inc.rows[t]) {
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Greater => self.incumbent = None,
                std::cmp::Ordering::Equal => {}
            }
        }
        current.push(best.clone());
        for (r, app) in candidates.iter().zip(&appearances) {
            if *app != best {
                continue;
            }
            let child_blocks = self.refine_blocks(*r, &blocks);
            placed.push(*r);
            used[*r] = true;
            self.place(placed, used, child_blocks, current);
            used[*r] = false;
            placed.pop();
        }
        current.pop();
    }
}
