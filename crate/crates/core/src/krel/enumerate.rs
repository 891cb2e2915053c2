//! Orderly generation of reduced k-relations up to isomorphism.
//!
//! The first `t` rows of a canonical matrix are themselves canonical, and the
//! rows of a canonical matrix with distinct rows strictly increase. Matrices
//! are therefore grown one row at a time from canonical prefixes, keeping only
//! extensions that are again canonical.

use serde::Serialize;

use crate::error::{GammaError, Result};

use super::canonical::is_lexmin;
use super::{canonical_form, KRelation};

/// Largest `(rows, cols)` accepted by [`enumerate_reduced`] at level `k`.
pub fn enumeration_limits(k: usize) -> Option<(usize, usize)> {
    match k {
        0 | 1 => Some((6, 6)),
        2 | 3 => Some((4, 4)),
        _ => None,
    }
}

/// Every reduced k-relation class with at most `max_rows` rows and `max_cols`
/// columns, as canonical forms sorted by shape then entries.
pub fn enumerate_reduced(k: usize, max_rows: usize, max_cols: usize) -> Result<Vec<KRelation>> {
    match enumeration_limits(k) {
        Some((r, c)) if max_rows <= r && max_cols <= c => {}
        Some((r, c)) => {
            return Err(GammaError::Resource(format!(
                "enumeration at level {k} is limited to {r}x{c}, asked for {max_rows}x{max_cols}"
            )))
        }
        None => return Err(GammaError::Resource(format!("enumeration supports levels up to 3, asked for {k}"))),
    }
    let mut out = Vec::new();
    if k == 0 {
        return Ok(out);
    }
    for cols in 1..=max_cols {
        let rows_of_width = all_rows(k, cols);
        let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
        for rows in 1..=max_rows {
            let mut next = Vec::new();
            for p in &prefixes {
                let last = if p.is_empty() { None } else { Some(&p[p.len() - cols..]) };
                for row in &rows_of_width {
                    if last.is_some_and(|l| row.as_slice() <= l) {
                        continue;
                    }
                    let mut m = Vec::with_capacity(p.len() + cols);
                    m.extend_from_slice(p);
                    m.extend_from_slice(row);
                    if columns_sorted(rows, cols, &m) && is_lexmin(rows, cols, &m) {
                        next.push(m);
                    }
                }
            }
            out.extend(
                next.iter()
                    .filter(|m| columns_distinct_nonzero(rows, cols, m))
                    .map(|m| KRelation::from_raw(k, rows, cols, m.clone())),
            );
            prefixes = next;
        }
    }
    out.sort();
    Ok(out)
}

/// Nonzero rows of length `cols` over `0..=k`, in increasing order.
fn all_rows(k: usize, cols: usize) -> Vec<Vec<u8>> {
    crate::constructions::tuples(k + 1, cols)
        .into_iter()
        .skip(1)
        .map(|r| r.into_iter().map(|e| e as u8).collect())
        .collect()
}

fn column(rows: usize, cols: usize, m: &[u8], j: usize) -> impl Iterator<Item = u8> + '_ {
    (0..rows).map(move |i| m[i * cols + j])
}

fn columns_sorted(rows: usize, cols: usize, m: &[u8]) -> bool {
    (1..cols).all(|j| column(rows, cols, m, j - 1).le(column(rows, cols, m, j)))
}

fn columns_distinct_nonzero(rows: usize, cols: usize, m: &[u8]) -> bool {
    // columns are sorted, so distinctness only needs neighbours
    column(rows, cols, m, 0).any(|e| e != 0) && (1..cols).all(|j| column(rows, cols, m, j - 1).ne(column(rows, cols, m, j)))
}

/// Classes split by whether transposition fixes them.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPoints {
    pub fixed: Vec<KRelation>,
    pub non_fixed: Vec<KRelation>,
}

/// The `C₂` action `c ↦ cᵗ` on the classes within `max_rows × max_cols`.
pub fn fixed_points(k: usize, max_rows: usize, max_cols: usize) -> Result<FixedPoints> {
    let mut fixed = Vec::new();
    let mut non_fixed = Vec::new();
    for c in enumerate_reduced(k, max_rows, max_cols)? {
        if canonical_form(&c.transpose())? == c {
            fixed.push(c);
        } else {
            non_fixed.push(c);
        }
    }
    Ok(FixedPoints { fixed, non_fixed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Canonical forms of every reduced matrix of the given shape, by brute force.
    fn brute_classes(k: usize, rows: usize, cols: usize) -> BTreeSet<KRelation> {
        let mut out = BTreeSet::new();
        for v in crate::constructions::tuples(k + 1, rows * cols) {
            if let Ok(c) = KRelation::new(k, rows, cols, v) {
                if c.is_reduced() {
                    out.insert(canonical_form(&c).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn agrees_with_brute_force() {
        for (k, r, c) in [(1, 3, 3), (1, 3, 4), (1, 4, 3), (2, 2, 3), (2, 3, 2), (3, 2, 2)] {
            let listed: BTreeSet<KRelation> =
                enumerate_reduced(k, r, c).unwrap().into_iter().filter(|m| m.shape() == (r, c)).collect();
            assert_eq!(listed, brute_classes(k, r, c), "k={k} {r}x{c}");
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_reduced(1, 1, 1).unwrap(), vec![KRelation::identity(1)]);
        assert_eq!(enumerate_reduced(1, 2, 2).unwrap().len(), 3);
        let exact: Vec<_> = enumerate_reduced(1, 3, 3).unwrap().into_iter().filter(|c| c.shape() == (3, 3)).collect();
        assert_eq!(exact.len(), 8);
    }

    #[test]
    fn limits() {
        assert!(matches!(enumerate_reduced(1, 7, 2), Err(GammaError::Resource(_))));
        assert!(matches!(enumerate_reduced(2, 5, 2), Err(GammaError::Resource(_))));
        assert!(matches!(enumerate_reduced(4, 1, 1), Err(GammaError::Resource(_))));
        assert!(enumerate_reduced(0, 3, 3).unwrap().is_empty());
    }
}
