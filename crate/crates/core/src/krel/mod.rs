//! k-relations: matrices over `{0, …, k}` without zero rows or columns, taken
//! up to independent row and column permutations. Reduced classes model
//! `(H𝔹 ∧ H𝔹)(k₊)`.

mod canonical;
mod ck;
mod enumerate;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, GammaError, Result};

pub use canonical::{canonical_form, is_canonical, max_cells, DEFAULT_MAX_CELLS};
pub use ck::{
    act, class_of, gamma_retract, is_ck_morphism, lift, naturality_check, smash_action, smash_element, CkObject,
    KClass, KRelationFunctor, NaturalityReport,
};
pub use enumerate::{enumerate_reduced, enumeration_limits, fixed_points, FixedPoints};

/// A `rows × cols` matrix over `{0, …, k}`, stored row-major. Rows index the
/// first smash factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KRelation {
    k: usize,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl KRelation {
    /// Validates shape, entry range and the absence of zero rows and columns.
    pub fn new(k: usize, rows: usize, cols: usize, entries: Vec<usize>) -> Result<Self> {
        if k > u8::MAX as usize {
            return domain(format!("level {k} exceeds {}", u8::MAX));
        }
        if rows == 0 || cols == 0 {
            return domain("a k-relation needs at least one row and one column");
        }
        if entries.len() != rows * cols {
            return domain(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, entries.len()));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e > k) {
            return domain(format!("entry {bad} outside 0..={k}"));
        }
        let c = KRelation { k, rows, cols, entries: entries.into_iter().map(|e| e as u8).collect() };
        if let Some(i) = (0..rows).find(|&i| c.row(i).iter().all(|&e| e == 0)) {
            return domain(format!("row {} is identically zero", i + 1));
        }
        if let Some(j) = (0..cols).find(|&j| (0..rows).all(|i| c.get(i, j) == 0)) {
            return domain(format!("column {} is identically zero", j + 1));
        }
        Ok(c)
    }

    pub fn from_rows(k: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return domain("rows have different lengths");
        }
        Self::new(k, rows.len(), cols, rows.concat())
    }

    pub(crate) fn from_raw(k: usize, rows: usize, cols: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        KRelation { k, rows, cols, entries }
    }

    /// `Id_n`.
    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n).map(|z| usize::from(z / n == z % n)).collect();
        Self::new(1, n, n, entries).expect("identity is a 1-relation")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.cols + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.entries[i * self.cols + j]).collect()
    }

    pub fn raw(&self) -> &[u8] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&e| e as usize).collect()).collect()
    }

    pub fn transpose(&self) -> KRelation {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entries[i * self.cols + j]);
            }
        }
        KRelation { k: self.k, rows: self.cols, cols: self.rows, entries }
    }

    /// No repeated row and no repeated column.
    pub fn is_reduced(&self) -> bool {
        let mut rows = HashSet::new();
        let mut cols = HashSet::new();
        (0..self.rows).all(|i| rows.insert(self.row(i))) && (0..self.cols).all(|j| cols.insert(self.column(j)))
    }

    /// Number of nonzero entries in each row.
    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row(i).iter().filter(|&&e| e != 0).count()).collect()
    }

    /// Applies row and column permutations: row `i` of the result is row `row_perm[i]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> KRelation {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in row_perm {
            for &j in col_perm {
                entries.push(self.entries[i * self.cols + j]);
            }
        }
        KRelation { k: self.k, rows: self.rows, cols: self.cols, entries }
    }
}

/// Merges equal rows, then equal columns, keeping first occurrences in order.
pub fn reduce(c: &KRelation) -> KRelation {
    let mut seen = HashSet::new();
    let keep_rows: Vec<usize> = (0..c.rows).filter(|&i| seen.insert(c.row(i).to_vec())).collect();
    let mut seen = HashSet::new();
    let keep_cols: Vec<usize> = (0..c.cols)
        .filter(|&j| seen.insert(keep_rows.iter().map(|&i| c.entries[i * c.cols + j]).collect::<Vec<_>>()))
        .collect();
    let mut entries = Vec::with_capacity(keep_rows.len() * keep_cols.len());
    for &i in &keep_rows {
        for &j in &keep_cols {
            entries.push(c.entries[i * c.cols + j]);
        }
    }
    KRelation { k: c.k, rows: keep_rows.len(), cols: keep_cols.len(), entries }
}

/// `k rows cols` on the first line, then one line per row.
impl fmt::Display for KRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.k, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for KRelation {
    type Err = GammaError;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GammaError::Parse("empty k-relation".into()))?;
        let nums = |line: &str| -> Result<Vec<usize>> {
            line.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| GammaError::Parse(format!("bad entry `{t}`"))))
                .collect()
        };
        let head = nums(header)?;
        let [k, rows, cols] = head[..] else {
            return Err(GammaError::Parse(format!("expected `k rows cols`, got `{header}`")));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| GammaError::Parse(format!("missing row {}", i + 1)))?;
            let row = nums(line)?;
            if row.len() != cols {
                return Err(GammaError::Parse(format!("row {} has {} entries, expected {cols}", i + 1, row.len())));
            }
            entries.extend(row);
        }
        if lines.next().is_some() {
            return Err(GammaError::Parse("trailing rows after the matrix".into()));
        }
        KRelation::new(k, rows, cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(KRelation::from_rows(1, &[vec![1, 0], vec![0, 0]]).is_err());
        assert!(KRelation::from_rows(1, &[vec![1, 0], vec![1, 0]]).is_err());
        assert!(KRelation::from_rows(1, &[vec![2]]).is_err());
        assert!(KRelation::from_rows(1, &[]).is_err());
        assert!(KRelation::from_rows(2, &[vec![2, 0], vec![1, 1]]).is_ok());
    }

    #[test]
    fn reduction() {
        let c = KRelation::from_rows(1, &[vec![1], vec![1]]).unwrap();
        assert_eq!(reduce(&c), KRelation::identity(1));
        let c = KRelation::from_rows(1, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(reduce(&c), KRelation::identity(1));
        assert_eq!(reduce(&KRelation::identity(3)), KRelation::identity(3));
        let c = KRelation::from_rows(2, &[vec![1, 2, 1], vec![0, 1, 0], vec![1, 2, 1]]).unwrap();
        let r = reduce(&c);
        assert_eq!(r.to_rows(), vec![vec![1, 2], vec![0, 1]]);
        assert!(r.is_reduced());
        assert_eq!(reduce(&r), r);
    }

    #[test]
    fn text_round_trip() {
        let c = KRelation::from_rows(2, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let s = c.to_string();
        assert_eq!(s, "2 2 3\n1 2 0\n0 1 1\n");
        assert_eq!(s.parse::<KRelation>().unwrap(), c);
        assert!("1 2 2\n1 0\n".parse::<KRelation>().is_err());
        assert!("1 1 2\n1 0 1\n".parse::<KRelation>().is_err());
    }

    #[test]
    fn transpose_involution() {
        let c = KRelation::from_rows(1, &[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(c.transpose().to_rows(), vec![vec![1, 1, 0], vec![1, 0, 1], vec![1, 0, 0]]);
        assert_eq!(c.transpose().transpose(), c);
        assert_eq!(c.row_weights(), vec![3, 1, 1]);
    }
}
