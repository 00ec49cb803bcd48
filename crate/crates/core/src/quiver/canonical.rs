//! Canonical relabeling of exchange matrices.
//!
//! The canonical form is the relabeling whose strictly lower triangle, read
//! row by row, is lexicographically smallest among all relabelings that list
//! vertices in nondecreasing order of an isomorphism-invariant colour (from
//! iterated neighbourhood refinement). Placing the `t`-th vertex fixes row `t`
//! of the lower triangle, so candidates are compared level by level and only
//! the minimal prefixes survive. Twin vertices (same arrows to everything
//! else, none between them) are interchangeable and only one is tried.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::ExchangeMatrix;
use crate::error::QuiverError;

/// Default vertex bound for [`canonical_form`].
pub const DEFAULT_CANONICAL_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub matrix: ExchangeMatrix,
    /// `permutation[p]` is the original vertex placed at position `p`.
    pub permutation: Vec<usize>,
}

pub fn canonical_form(b: &ExchangeMatrix) -> Result<CanonicalForm, QuiverError> {
    canonical_form_bounded(b, DEFAULT_CANONICAL_BOUND)
}

pub fn canonical_form_bounded(
    b: &ExchangeMatrix,
    bound: usize,
) -> Result<CanonicalForm, QuiverError> {
    let n = b.n();
    if n > bound {
        return Err(QuiverError::TooLarge { n, limit: bound });
    }
    let colors = refine_colors(b);
    let permutation = minimal_ordering(b, &colors);
    Ok(CanonicalForm {
        matrix: b.permuted(&permutation),
        permutation,
    })
}

/// Colour refinement: start from the sorted row multiset, then repeatedly
/// split by the multiset of `(entry, neighbour colour)` pairs. Colours are
/// ranks of the signature values, so they are comparable across relabelings.
fn refine_colors(b: &ExchangeMatrix) -> Vec<usize> {
    let n = b.n();
    let mut colors: Vec<usize> = {
        let sigs: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = b.row(i).to_vec();
                r.sort_unstable();
                r
            })
            .collect();
        rank(&sigs)
    };
    loop {
        let sigs: Vec<(usize, Vec<(i64, usize)>)> = (0..n)
            .map(|i| {
                let mut s: Vec<(i64, usize)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (b.get(i, j), colors[j]))
                    .collect();
                s.sort_unstable();
                (colors[i], s)
            })
            .collect();
        let next = rank(&sigs);
        let before = distinct(&colors);
        colors = next;
        if distinct(&colors) == before {
            return colors;
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: BTreeMap<&T, usize> = sorted.iter().enumerate().map(|(i, s)| (s, i)).collect();
    sigs.iter().map(|s| index[s]).collect()
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn are_twins(b: &ExchangeMatrix, u: usize, v: usize) -> bool {
    b.get(u, v) == 0 && (0..b.n()).all(|w| w == u || w == v || b.get(u, w) == b.get(v, w))
}

fn minimal_ordering(b: &ExchangeMatrix, colors: &[usize]) -> Vec<usize> {
    let n = b.n();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for t in 0..n {
        let mut best_row: Option<Vec<i64>> = None;
        let mut next: Vec<Vec<usize>> = Vec::new();
        for prefix in &frontier {
            let mut placed = vec![false; n];
            for &p in prefix {
                placed[p] = true;
            }
            let min_color = (0..n).filter(|&v| !placed[v]).map(|v| colors[v]).min();
            let Some(min_color) = min_color else { continue };
            let mut tried: Vec<usize> = Vec::new();
            for v in (0..n).filter(|&v| !placed[v] && colors[v] == min_color) {
                if tried.iter().any(|&u| are_twins(b, u, v)) {
                    continue;
                }
                tried.push(v);
                let row: Vec<i64> = prefix.iter().map(|&p| b.get(v, p)).collect();
                let mut extended = prefix.clone();
                extended.push(v);
                match best_row.as_ref().map(|best| row.cmp(best)) {
                    None | Some(std::cmp::Ordering::Less) => {
                        best_row = Some(row);
                        next.clear();
                        next.push(extended);
                    }
                    Some(std::cmp::Ordering::Equal) => next.push(extended),
                    Some(std::cmp::Ordering::Greater) => {}
                }
            }
        }
        debug_assert!(!next.is_empty() || t == n);
        frontier = next;
    }
    frontier.into_iter().min().unwrap_or_default()
}
