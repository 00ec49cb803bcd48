use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{two_path_term, ExchangeMatrix};
use crate::error::QuiverError;

/// Colour of a mutable vertex of a quiver in the mutation class of a framed
/// quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexStatus {
    Green,
    Red,
}

/// Ice quiver stored as an extended exchange matrix: the skew-symmetric
/// principal block on the `n` mutable vertices plus `m - n` frozen rows.
///
/// Frozen entry `c[r][i] > 0` encodes `c[r][i]` arrows `i -> r*` and
/// `c[r][i] < 0` encodes arrows `r* -> i`. Arrows between frozen vertices are
/// never stored. With this encoding the framed quiver has frozen block `I`,
/// and a vertex is green exactly when its frozen column is nonnegative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IceQuiver {
    principal: ExchangeMatrix,
    /// Row-major, `(m - n) * n` entries.
    frozen: Vec<i64>,
}

impl IceQuiver {
    pub fn new(principal: ExchangeMatrix, frozen_rows: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = principal.n();
        let mut frozen = Vec::with_capacity(frozen_rows.len() * n);
        for (r, row) in frozen_rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::Shape(format!(
                    "frozen row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    n
                )));
            }
            frozen.extend(row);
        }
        Ok(Self { principal, frozen })
    }

    /// Ice quiver with no frozen vertices.
    pub fn from_principal(principal: ExchangeMatrix) -> Self {
        Self {
            principal,
            frozen: Vec::new(),
        }
    }

    /// The framed quiver: one frozen copy `i*` per vertex with a single arrow
    /// `i -> i*`.
    pub fn frame(b: &ExchangeMatrix) -> Self {
        let n = b.n();
        let mut frozen = vec![0; n * n];
        for i in 0..n {
            frozen[i * n + i] = 1;
        }
        Self {
            principal: b.clone(),
            frozen,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.principal.n()
    }

    /// Total row count (mutable plus frozen).
    pub fn m(&self) -> usize {
        self.n() + self.frozen_count()
    }

    pub fn frozen_count(&self) -> usize {
        if self.n() == 0 {
            0
        } else {
            self.frozen.len() / self.n()
        }
    }

    pub fn principal(&self) -> &ExchangeMatrix {
        &self.principal
    }

    /// Frozen entry at frozen row `r` (0-based among frozen rows), column `i`.
    #[inline]
    pub fn frozen_entry(&self, r: usize, i: usize) -> i64 {
        self.frozen[r * self.n() + i]
    }

    pub fn frozen_rows(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..self.frozen_count())
            .map(|r| self.frozen[r * n..(r + 1) * n].to_vec())
            .collect()
    }

    /// Column `i` of the frozen block.
    pub fn frozen_column(&self, i: usize) -> Vec<i64> {
        (0..self.frozen_count())
            .map(|r| self.frozen_entry(r, i))
            .collect()
    }

    /// Entry of the full `m x n` extended matrix.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        let n = self.n();
        if row < n {
            self.principal.get(row, col)
        } else {
            self.frozen_entry(row - n, col)
        }
    }

    /// The full `m x n` extended matrix, frozen rows last.
    pub fn extended_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = self.principal.rows();
        rows.extend(self.frozen_rows());
        rows
    }

    /// Mutation at mutable vertex `k`; frozen rows follow the quiver rule
    /// under the encoding described on the type.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        let principal = self.principal.mutate(k)?;
        let n = self.n();
        let mut frozen = self.frozen.clone();
        for r in 0..self.frozen_count() {
            let crk = self.frozen_entry(r, k);
            for j in 0..n {
                let idx = r * n + j;
                if j == k {
                    frozen[idx] = -self.frozen[idx];
                } else if crk != 0 {
                    // 2-paths j -> k -> r* (crk > 0) or r* -> k -> j (crk < 0)
                    let delta = two_path_term(crk, -self.principal.get(k, j))?;
                    frozen[idx] = self.frozen[idx]
                        .checked_add(delta)
                        .ok_or(QuiverError::Overflow)?;
                }
            }
        }
        Ok(Self { principal, frozen })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Self, QuiverError> {
        let mut cur = self.clone();
        for &k in seq {
            cur = cur.mutate(k)?;
        }
        Ok(cur)
    }

    /// Green iff no frozen vertex has an arrow into `i`, red iff `i` has no
    /// arrow into a frozen vertex. A column with both signs cannot occur in
    /// the mutation class of a framed quiver and is reported as an error.
    /// An all-zero column reports green.
    pub fn vertex_status(&self, i: usize) -> Result<VertexStatus, QuiverError> {
        self.principal.check_vertex(i)?;
        let mut pos = false;
        let mut neg = false;
        for r in 0..self.frozen_count() {
            let c = self.frozen_entry(r, i);
            pos |= c > 0;
            neg |= c < 0;
        }
        match (pos, neg) {
            (true, true) => Err(QuiverError::SignCoherenceViolation { vertex: i }),
            (false, true) => Ok(VertexStatus::Red),
            _ => Ok(VertexStatus::Green),
        }
    }

    pub fn statuses(&self) -> Result<Vec<VertexStatus>, QuiverError> {
        (0..self.n()).map(|i| self.vertex_status(i)).collect()
    }

    /// `true` iff every mutable vertex is red (vacuously for `n = 0`).
    pub fn all_red(&self) -> Result<bool, QuiverError> {
        Ok(self.statuses()?.iter().all(|&s| s == VertexStatus::Red))
    }

    /// Whether some vertex has at least two arrows into `k`. Frozen vertices
    /// are included when `count_frozen` is set.
    pub fn is_head_of_multiple_arrow(&self, k: usize, count_frozen: bool) -> bool {
        let n = self.n();
        if (0..n).any(|i| self.principal.get(i, k) >= 2) {
            return true;
        }
        count_frozen && (0..self.frozen_count()).any(|r| self.frozen_entry(r, k) <= -2)
    }

    /// Freezes the mutable vertices in `set`. The remaining mutable vertices
    /// keep their relative order; each newly frozen vertex becomes a frozen
    /// row appended after the existing ones, in increasing vertex order.
    /// Arrows among frozen vertices are dropped.
    pub fn freeze(&self, set: &[usize]) -> Result<Self, QuiverError> {
        if set.is_empty() {
            return Err(QuiverError::InvalidVertexSet("empty freezing set".into()));
        }
        let n = self.n();
        let mut chosen = vec![false; n];
        for &v in set {
            self.principal.check_vertex(v)?;
            if std::mem::replace(&mut chosen[v], true) {
                return Err(QuiverError::InvalidVertexSet(format!(
                    "vertex {} listed twice",
                    v + 1
                )));
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !chosen[v]).collect();
        let principal = if keep.is_empty() {
            ExchangeMatrix::zero(0)
        } else {
            self.principal.induced_subquiver(&keep)?
        };
        let mut frozen = Vec::new();
        for r in 0..self.frozen_count() {
            frozen.extend(keep.iter().map(|&j| self.frozen_entry(r, j)));
        }
        for s in (0..n).filter(|&v| chosen[v]) {
            // c[s*][j] > 0 iff j -> s, i.e. b[j][s] > 0
            frozen.extend(keep.iter().map(|&j| self.principal.get(j, s)));
        }
        Ok(Self { principal, frozen })
    }
}

impl From<ExchangeMatrix> for IceQuiver {
    fn from(b: ExchangeMatrix) -> Self {
        Self::from_principal(b)
    }
}

impl fmt::Debug for IceQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IceQuiver")
            .field("principal", &self.principal)
            .field("frozen", &self.frozen_rows())
            .finish()
    }
}

impl fmt::Display for IceQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.principal)?;
        if self.frozen_count() > 0 {
            writeln!(f, "--")?;
            for row in self.frozen_rows() {
                let row: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(f, "[{}]", row.join(" "))?;
            }
        }
        Ok(())
    }
}
