use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

/// Number of new arrows `i -> j` created by the 2-paths through `k` when the
/// arrow counts are `a = b[i][k]` and `b = b[k][j]`, i.e. `(|a| b + a |b|) / 2`.
#[inline]
pub(crate) fn two_path_term(a: i64, b: i64) -> Result<i64, QuiverError> {
    if a > 0 && b > 0 {
        a.checked_mul(b).ok_or(QuiverError::Overflow)
    } else if a < 0 && b < 0 {
        a.checked_mul(b)
            .and_then(i64::checked_neg)
            .ok_or(QuiverError::Overflow)
    } else {
        Ok(0)
    }
}

/// Skew-symmetric integer matrix encoding a quiver.
///
/// `b[i][j] > 0` means there are exactly `b[i][j]` arrows `i -> j`. Vertices
/// are 0-based in the API and 1-based in every serialized form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    /// Builds a matrix from its rows, checking squareness and skew-symmetry.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(QuiverError::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            entries.extend(row);
        }
        Self::from_flat(n, entries)
    }

    pub fn from_flat(n: usize, entries: Vec<i64>) -> Result<Self, QuiverError> {
        if entries.len() != n * n {
            return Err(QuiverError::Shape(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let m = Self { n, entries };
        for i in 0..n {
            if m.get(i, i) != 0 {
                return Err(QuiverError::NotSkewSymmetric { row: i, col: i });
            }
            for j in (i + 1)..n {
                if Some(m.get(i, j)) != m.get(j, i).checked_neg() {
                    return Err(QuiverError::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    /// The quiver with `n` vertices and no arrows.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    /// Builds a matrix from `(source, target, multiplicity)` triples using
    /// 0-based vertices. Opposite arrows cancel, as 2-cycles do in a quiver.
    pub fn from_arrows(
        n: usize,
        arrows: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, QuiverError> {
        let mut m = Self::zero(n);
        for (s, t, mult) in arrows {
            if s >= n || t >= n {
                return Err(QuiverError::VertexOutOfRange {
                    vertex: s.max(t),
                    n,
                });
            }
            if s == t {
                return Err(QuiverError::Shape(format!("loop at vertex {}", s + 1)));
            }
            let fwd = m
                .get(s, t)
                .checked_add(mult)
                .ok_or(QuiverError::Overflow)?;
            m.entries[s * n + t] = fwd;
            m.entries[t * n + s] = fwd.checked_neg().ok_or(QuiverError::Overflow)?;
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Arrow count `i -> j` (zero when the arrows go the other way).
    #[inline]
    pub fn arrows(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).max(0)
    }

    /// All arrows as `(source, target, multiplicity)` with 0-based vertices,
    /// in lexicographic order of `(source, target)`.
    pub fn arrow_list(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let b = self.get(i, j);
                if b > 0 {
                    out.push((i, j, b));
                }
            }
        }
        out
    }

    /// Largest arrow multiplicity, zero for an arrowless quiver.
    pub fn max_multiplicity(&self) -> i64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn check_vertex(&self, k: usize) -> Result<(), QuiverError> {
        if k < self.n {
            Ok(())
        } else {
            Err(QuiverError::VertexOutOfRange { vertex: k, n: self.n })
        }
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut entries = self.entries.clone();
        for i in 0..n {
            let bik = self.get(i, k);
            for j in 0..n {
                let idx = i * n + j;
                if i == k || j == k {
                    entries[idx] = -self.entries[idx];
                } else if bik != 0 {
                    let delta = two_path_term(bik, self.get(k, j))?;
                    entries[idx] = self.entries[idx]
                        .checked_add(delta)
                        .ok_or(QuiverError::Overflow)?;
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Applies the mutations of `seq` left to right.
    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Self, QuiverError> {
        let mut cur = self.clone();
        for &k in seq {
            cur = cur.mutate(k)?;
        }
        Ok(cur)
    }

    /// `true` iff the digraph with an arc `i -> j` whenever `b[i][j] > 0` has
    /// no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on in-degrees.
        let n = self.n;
        let mut indeg: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.get(i, j) > 0).count())
            .collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for w in 0..n {
                if self.get(v, w) > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        seen == n
    }

    /// Principal minor on `vertices`, kept in the given order.
    pub fn induced_subquiver(&self, vertices: &[usize]) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::InvalidVertexSet("empty vertex set".into()));
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(QuiverError::InvalidVertexSet(format!(
                    "vertex {} listed twice",
                    v + 1
                )));
            }
        }
        let k = vertices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in vertices {
            for &j in vertices {
                entries.push(self.get(i, j));
            }
        }
        Ok(Self { n: k, entries })
    }

    /// Relabels vertices: vertex `perm[p]` of `self` becomes vertex `p`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &i in perm {
            for &j in perm {
                entries.push(self.get(i, j));
            }
        }
        Self { n, entries }
    }

    /// Entrywise `factor * B`.
    pub fn scaled(&self, factor: i64) -> Result<Self, QuiverError> {
        let entries = self
            .entries
            .iter()
            .map(|&b| b.checked_mul(factor).ok_or(QuiverError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self { n: self.n, entries })
    }

    /// The opposite quiver (all arrows reversed).
    pub fn opposite(&self) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|&b| -b).collect(),
        }
    }

    /// Vertex sets of the connected components of the underlying graph, each
    /// sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if self.get(v, w) != 0 && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = QuiverError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        Self::new(rows)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.n).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|b| b.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.n {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|b| format!("{b:>width$}"))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
