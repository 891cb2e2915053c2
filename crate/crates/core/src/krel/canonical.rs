//! Canonical representatives: the row-major lexicographic minimum over all row
//! and column permutations.
//!
//! For a fixed order of rows the best column order sorts columns by their
//! vectors, so the search only branches over row orders. Choosing rows one at
//! a time refines an ordered partition of the columns; the next output row is
//! the chosen row sorted inside each cell. Rows that would produce a larger
//! next row than the current best are cut, and among tied rows only one per
//! orbit of the row transpositions that extend to automorphisms is explored.

use std::cmp::Ordering;

use crate::error::{GammaError, Result};

use super::{reduce, KRelation};

pub const DEFAULT_MAX_CELLS: usize = 144;

/// Cell bound for canonicalization, overridable through `GAMMA_FORGE_MAX_CELLS`.
pub fn max_cells() -> usize {
    std::env::var("GAMMA_FORGE_MAX_CELLS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}

/// Reduces, then returns the least matrix in the permutation orbit.
pub fn canonical_form(c: &KRelation) -> Result<KRelation> {
    let r = reduce(c);
    let limit = max_cells();
    if r.rows() * r.cols() > limit {
        return Err(GammaError::Resource(format!(
            "{}x{} reduced matrix exceeds the canonicalization bound of {limit} cells",
            r.rows(),
            r.cols()
        )));
    }
    let entries = lexmin(r.rows(), r.cols(), r.raw());
    Ok(KRelation::from_raw(r.k(), r.rows(), r.cols(), entries))
}

/// Whether `c` is already the least member of its permutation orbit (no reduction applied).
pub fn is_canonical(c: &KRelation) -> bool {
    is_lexmin(c.rows(), c.cols(), c.raw())
}

pub(crate) fn lexmin(rows: usize, cols: usize, m: &[u8]) -> Vec<u8> {
    let mut s = Search::new(rows, cols, m, None);
    s.run();
    s.best
}

pub(crate) fn is_lexmin(rows: usize, cols: usize, m: &[u8]) -> bool {
    let mut s = Search::new(rows, cols, m, Some(m.to_vec()));
    s.run();
    !s.found_less
}

struct Search<'a> {
    rows: usize,
    cols: usize,
    m: &'a [u8],
    sorted_cols: Vec<Vec<u8>>,
    best: Vec<u8>,
    have_best: bool,
    abort_on_less: bool,
    found_less: bool,
    cur: Vec<u8>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(rows: usize, cols: usize, m: &'a [u8], reference: Option<Vec<u8>>) -> Self {
        let mut sorted_cols: Vec<Vec<u8>> = (0..cols).map(|j| (0..rows).map(|i| m[i * cols + j]).collect()).collect();
        sorted_cols.sort_unstable();
        let abort_on_less = reference.is_some();
        Search {
            rows,
            cols,
            m,
            sorted_cols,
            have_best: abort_on_less,
            best: reference.unwrap_or_default(),
            abort_on_less,
            found_less: false,
            cur: Vec::with_capacity(rows * cols),
            used: vec![false; rows],
        }
    }

    fn run(&mut self) {
        let cells = if self.cols == 0 { Vec::new() } else { vec![(0..self.cols).collect::<Vec<_>>()] };
        self.dfs(0, &cells);
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u8 {
        self.m[i * self.cols + j]
    }

    fn next_row(&self, r: usize, cells: &[Vec<usize>]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.cols);
        for cell in cells {
            let start = out.len();
            out.extend(cell.iter().map(|&j| self.at(r, j)));
            out[start..].sort_unstable();
        }
        out
    }

    fn refine(&self, r: usize, cells: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(cells.len());
        for cell in cells {
            let mut cell = cell.clone();
            cell.sort_by_key(|&j| self.at(r, j));
            let mut start = 0;
            for end in 1..=cell.len() {
                if end == cell.len() || self.at(r, cell[end]) != self.at(r, cell[start]) {
                    out.push(cell[start..end].to_vec());
                    start = end;
                }
            }
        }
        out
    }

    /// Swapping rows `a` and `b` extends to an automorphism iff it preserves
    /// the multiset of columns.
    fn swap_is_automorphism(&self, a: usize, b: usize) -> bool {
        let mut swapped: Vec<Vec<u8>> = self
            .sorted_cols
            .iter()
            .map(|col| {
                let mut col = col.clone();
                col.swap(a, b);
                col
            })
            .collect();
        swapped.sort_unstable();
        swapped == self.sorted_cols
    }

    fn dfs(&mut self, depth: usize, cells: &[Vec<usize>]) {
        if depth == self.rows {
            if !self.have_best || self.cur < self.best {
                self.best = self.cur.clone();
                self.have_best = true;
            }
            return;
        }
        let candidates: Vec<(usize, Vec<u8>)> =
            (0..self.rows).filter(|&r| !self.used[r]).map(|r| (r, self.next_row(r, cells))).collect();
        let least = candidates.iter().map(|(_, row)| row).min().expect("an unused row remains").clone();

        let width = self.cols;
        if self.have_best && self.cur[..] == self.best[..depth * width] {
            match least[..].cmp(&self.best[depth * width..(depth + 1) * width]) {
                Ordering::Greater => return,
                Ordering::Less if self.abort_on_less => {
                    self.found_less = true;
                    return;
                }
                _ => {}
            }
        }

        let mut reps: Vec<usize> = Vec::new();
        for (r, row) in &candidates {
            if *row != least {
                continue;
            }
            if !reps.iter().any(|&s| self.swap_is_automorphism(s, *r)) {
                reps.push(*r);
            }
        }
        for r in reps {
            self.used[r] = true;
            self.cur.extend_from_slice(&least);
            let refined = self.refine(r, cells);
            self.dfs(depth + 1, &refined);
            self.cur.truncate(depth * width);
            self.used[r] = false;
            if self.found_less {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Minimum over every pair of permutations.
    fn brute_lexmin(c: &KRelation) -> Vec<u8> {
        let rp = permutations(c.rows());
        let cp = permutations(c.cols());
        let mut best: Option<Vec<u8>> = None;
        for r in &rp {
            for q in &cp {
                let m = c.permute(r, q).raw().to_vec();
                if best.as_ref().map_or(true, |b| &m < b) {
                    best = Some(m);
                }
            }
        }
        best.unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=2);
            let entries: Vec<u8> = (0..rows * cols).map(|_| rng.gen_range(0..=k)).collect();
            let c = KRelation::from_raw(k as usize, rows, cols, entries);
            let fast = lexmin(rows, cols, c.raw());
            assert_eq!(fast, brute_lexmin(&c), "{c}");
            assert!(is_lexmin(rows, cols, &fast));
            assert_eq!(is_lexmin(rows, cols, c.raw()), fast == c.raw());
        }
    }

    #[test]
    fn invariant_under_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c = KRelation::from_rows(2, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2], vec![2, 0, 1, 1], vec![1, 1, 1, 0]])
            .unwrap();
        let canon = canonical_form(&c).unwrap();
        for _ in 0..50 {
            let mut r: Vec<usize> = (0..4).collect();
            let mut q: Vec<usize> = (0..4).collect();
            r.shuffle(&mut rng);
            q.shuffle(&mut rng);
            assert_eq!(canonical_form(&c.permute(&r, &q)).unwrap(), canon);
        }
    }

    #[test]
    fn identity_is_fast_and_fixed() {
        let id = KRelation::identity(12);
        let canon = canonical_form(&id).unwrap();
        assert_eq!(canon.row(0)[11], 1);
        assert!(is_canonical(&canon));
    }

    #[test]
    fn cell_bound_is_enforced() {
        assert!(matches!(canonical_form(&KRelation::identity(13)), Err(GammaError::Resource(_))));
    }
}
