use serde::{Deserialize, Serialize};

use super::ObstructionError;
use crate::quiver::ExchangeMatrix;

/// The simple digraph underlying a quiver: an arc `i -> j` whenever
/// `b[i][j] > 0`, multiplicities forgotten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    /// Sorted lexicographically.
    arcs: Vec<(usize, usize)>,
    adjacent: Vec<bool>,
}

/// A chordless cycle of the underlying undirected graph, as a vertex list in
/// traversal order, and whether its arcs all point the same way around it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramCycle {
    #[serde(with = "crate::serde_util::one_based")]
    pub vertices: Vec<usize>,
    pub oriented: bool,
}

impl Diagram {
    pub fn new(b: &ExchangeMatrix) -> Self {
        let n = b.n();
        let arcs = b.arrow_list().into_iter().map(|(i, j, _)| (i, j)).collect();
        let mut adjacent = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                adjacent[i * n + j] = b.get(i, j) != 0;
            }
        }
        Self { n, arcs, adjacent }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Index of the arc joining `u` and `v` in either direction.
    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if self.arcs.binary_search(&(u, v)).is_ok() {
            (u, v)
        } else {
            (v, u)
        };
        self.arcs.binary_search(&key).ok()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacent[u * self.n + v]
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.adjacent(v, w))
    }

    /// The arcs traversed by a closed vertex walk, in order.
    pub fn cycle_arcs(&self, vertices: &[usize]) -> Vec<usize> {
        (0..vertices.len())
            .map(|t| {
                let (u, v) = (vertices[t], vertices[(t + 1) % vertices.len()]);
                self.arc_index(u, v).expect("consecutive cycle vertices are adjacent")
            })
            .collect()
    }

    /// Whether every arc of the closed walk points forward, or every arc
    /// points backward.
    pub fn is_oriented(&self, vertices: &[usize]) -> bool {
        let k = vertices.len();
        let forward = (0..k).all(|t| {
            self.arcs
                .binary_search(&(vertices[t], vertices[(t + 1) % k]))
                .is_ok()
        });
        let backward = (0..k).all(|t| {
            self.arcs
                .binary_search(&(vertices[(t + 1) % k], vertices[t]))
                .is_ok()
        });
        forward || backward
    }

    /// All chordless cycles (length >= 3) of the underlying undirected graph.
    ///
    /// Each cycle is listed once, starting at its smallest vertex and
    /// continuing towards the smaller of that vertex's two cycle neighbours.
    pub fn chordless_cycles(&self, cap: usize) -> Result<Vec<DiagramCycle>, ObstructionError> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for s in 0..self.n {
            path.clear();
            path.push(s);
            self.extend(&mut path, &mut out, cap)?;
        }
        Ok(out)
    }

    fn extend(
        &self,
        path: &mut Vec<usize>,
        out: &mut Vec<DiagramCycle>,
        cap: usize,
    ) -> Result<(), ObstructionError> {
        let s = path[0];
        let last = *path.last().expect("path starts non-empty");
        let t = path.len() - 1;
        for w in self.neighbours(last) {
            if w <= s || path.contains(&w) {
                continue;
            }
            // w may touch only its predecessor among the interior vertices
            if path[1..t.max(1)].iter().any(|&v| self.adjacent(v, w)) {
                continue;
            }
            if t >= 1 && self.adjacent(s, w) {
                if path[1] < w {
                    let mut vertices = path.clone();
                    vertices.push(w);
                    let oriented = self.is_oriented(&vertices);
                    out.push(DiagramCycle { vertices, oriented });
                    if out.len() > cap {
                        return Err(ObstructionError::TooManyCycles { cap });
                    }
                }
                continue;
            }
            path.push(w);
            self.extend(path, out, cap)?;
            path.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bce() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![
            vec![0, 2, 2, 4],
            vec![-2, 0, -6, 2],
            vec![-2, 6, 0, -2],
            vec![-4, -2, 2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn bce_has_four_triangles_one_oriented() {
        let d = Diagram::new(&bce());
        assert_eq!(d.arcs().len(), 6);
        let cycles = d.chordless_cycles(100).unwrap();
        let mut got: Vec<(Vec<usize>, bool)> =
            cycles.into_iter().map(|c| (c.vertices, c.oriented)).collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                (vec![0, 1, 2], false),
                (vec![0, 1, 3], false),
                (vec![0, 2, 3], false),
                (vec![1, 2, 3], true),
            ]
        );
    }

    #[test]
    fn square_without_chord() {
        // 1 -> 2 -> 3 -> 4 -> 1: one oriented 4-cycle
        let b = ExchangeMatrix::from_arrows(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        let cycles = Diagram::new(&b).chordless_cycles(10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 1, 2, 3]);
        assert!(cycles[0].oriented);
        // add the chord 1 -> 3: two triangles, the square disappears
        let c = ExchangeMatrix::from_arrows(
            4,
            [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)],
        )
        .unwrap();
        let cycles = Diagram::new(&c).chordless_cycles(10).unwrap();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.vertices.len() == 3));
    }

    #[test]
    fn cap_applies() {
        let k5 = ExchangeMatrix::from_arrows(
            5,
            (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j, 1))),
        )
        .unwrap();
        assert_eq!(Diagram::new(&k5).chordless_cycles(100).unwrap().len(), 10);
        assert!(matches!(
            Diagram::new(&k5).chordless_cycles(3),
            Err(ObstructionError::TooManyCycles { cap: 3 })
        ));
    }
}
