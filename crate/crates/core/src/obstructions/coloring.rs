//! Admissible colourings: a 0/1 label per arc of the diagram such that every
//! oriented chordless cycle has odd label sum and every non-oriented one has
//! even label sum. The conditions are a linear system over GF(2) with the
//! arcs as unknowns, solved here by Gaussian elimination on bit rows.

use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, DiagramCycle};
use super::ObstructionError;
use crate::quiver::ExchangeMatrix;

/// Default cap on the number of chordless cycles considered.
pub const DEFAULT_CYCLE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredArc {
    #[serde(with = "crate::serde_util::one_based_index")]
    pub source: usize,
    #[serde(with = "crate::serde_util::one_based_index")]
    pub target: usize,
    pub color: u8,
}

/// A labeling of the diagram arcs by 0/1, in arc order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub arcs: Vec<ColoredArc>,
}

impl Coloring {
    pub fn color(&self, source: usize, target: usize) -> Option<u8> {
        self.arcs
            .iter()
            .find(|a| a.source == source && a.target == target)
            .map(|a| a.color)
    }

    pub fn is_all_zero(&self) -> bool {
        self.arcs.iter().all(|a| a.color == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ColoringOutcome {
    Admissible { coloring: Coloring },
    /// An inclusion-minimal set of cycle conditions with no common solution:
    /// their arc sets cancel mod 2 while their right-hand sides sum to 1.
    Unsatisfiable { witness: Vec<DiagramCycle> },
}

impl ColoringOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Self::Admissible { coloring } => Some(coloring),
            Self::Unsatisfiable { .. } => None,
        }
    }

    pub fn is_unsatisfiable(&self) -> bool {
        matches!(self, Self::Unsatisfiable { .. })
    }
}

pub fn admissible_coloring(b: &ExchangeMatrix) -> Result<ColoringOutcome, ObstructionError> {
    admissible_coloring_capped(b, DEFAULT_CYCLE_CAP)
}

pub fn admissible_coloring_capped(
    b: &ExchangeMatrix,
    cycle_cap: usize,
) -> Result<ColoringOutcome, ObstructionError> {
    let diagram = Diagram::new(b);
    let cycles = diagram.chordless_cycles(cycle_cap)?;
    let vars = diagram.arcs().len();
    let equations: Vec<BitRow> = cycles
        .iter()
        .map(|c| {
            let mut row = BitRow::zeros(vars + 1);
            for a in diagram.cycle_arcs(&c.vertices) {
                row.flip(a);
            }
            if c.oriented {
                row.flip(vars);
            }
            row
        })
        .collect();

    match solve(&equations, vars) {
        Ok(solution) => Ok(ColoringOutcome::Admissible {
            coloring: Coloring {
                arcs: diagram
                    .arcs()
                    .iter()
                    .zip(solution)
                    .map(|(&(source, target), bit)| ColoredArc {
                        source,
                        target,
                        color: u8::from(bit),
                    })
                    .collect(),
            },
        }),
        Err(mut subset) => {
            // greedy deletion leaves an inclusion-minimal inconsistent subset
            let mut idx = 0;
            while idx < subset.len() {
                let mut trial = subset.clone();
                trial.remove(idx);
                let rows: Vec<BitRow> = trial.iter().map(|&e| equations[e].clone()).collect();
                if solve(&rows, vars).is_err() {
                    subset = trial;
                } else {
                    idx += 1;
                }
            }
            Ok(ColoringOutcome::Unsatisfiable {
                witness: subset.into_iter().map(|e| cycles[e].clone()).collect(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    fn zeros(bits: usize) -> Self {
        Self {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Solves the system whose rows carry `vars` coefficient bits followed by the
/// right-hand side bit. Returns a solution with free variables set to 0, or
/// the indices of equations whose sum is `0 = 1`.
fn solve(equations: &[BitRow], vars: usize) -> Result<Vec<bool>, Vec<usize>> {
    let m = equations.len();
    let mut rows: Vec<BitRow> = equations.to_vec();
    let mut provenance: Vec<BitRow> = (0..m)
        .map(|i| {
            let mut p = BitRow::zeros(m);
            p.flip(i);
            p
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let Some(p) = (r..m).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        provenance.swap(r, p);
        for i in 0..m {
            if i != r && rows[i].get(col) {
                let (pivot_row, pivot_prov) = (rows[r].clone(), provenance[r].clone());
                rows[i].xor_assign(&pivot_row);
                provenance[i].xor_assign(&pivot_prov);
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == m {
            break;
        }
    }
    if let Some(bad) = (r..m).find(|&i| rows[i].get(vars)) {
        return Err(provenance[bad].ones().collect());
    }
    let mut solution = vec![false; vars];
    for (row, col) in pivots {
        solution[col] = rows[row].get(vars);
    }
    Ok(solution)
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

    fn check(b: &ExchangeMatrix, c: &Coloring) {
        let d = Diagram::new(b);
        for cyc in d.chordless_cycles(1000).unwrap() {
            let sum: u8 = d
                .cycle_arcs(&cyc.vertices)
                .into_iter()
                .map(|a| c.arcs[a].color)
                .sum::<u8>()
                % 2;
            assert_eq!(sum, u8::from(cyc.oriented), "{cyc:?}");
        }
    }

    #[test]
    fn bce_is_unsatisfiable_with_all_four_triangles() {
        let out = admissible_coloring(&bce()).unwrap();
        let ColoringOutcome::Unsatisfiable { witness } = out else {
            panic!("expected a refutation");
        };
        assert_eq!(witness.len(), 4);
        assert_eq!(witness.iter().filter(|c| c.oriented).count(), 1);
        let oriented = witness.iter().find(|c| c.oriented).unwrap();
        assert_eq!(oriented.vertices, vec![1, 2, 3]);
    }

    #[test]
    fn acyclic_gets_all_zero() {
        let b = ExchangeMatrix::from_arrows(4, [(0, 1, 1), (0, 2, 2), (1, 2, 1), (2, 3, 1), (1, 3, 1)])
            .unwrap();
        let out = admissible_coloring(&b).unwrap();
        assert!(out.coloring().unwrap().is_all_zero());
    }

    #[test]
    fn markov_has_a_coloring() {
        let b = ExchangeMatrix::from_arrows(3, [(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        let c = admissible_coloring(&b).unwrap().coloring().cloned().unwrap();
        assert_eq!(c.arcs.iter().map(|a| a.color as u32).sum::<u32>() % 2, 1);
        check(&b, &c);
    }

    #[test]
    fn square_with_chord() {
        let b = ExchangeMatrix::from_arrows(
            4,
            [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (2, 0, 1)],
        )
        .unwrap();
        let c = admissible_coloring(&b).unwrap().coloring().cloned().unwrap();
        check(&b, &c);
    }

    #[test]
    fn solver_reports_inconsistency() {
        let mut a = BitRow::zeros(3);
        a.flip(0);
        a.flip(1);
        let mut b = BitRow::zeros(3);
        b.flip(0);
        let mut c = BitRow::zeros(3);
        c.flip(1);
        c.flip(2);
        assert_eq!(solve(&[a.clone(), b.clone()], 2), Ok(vec![false, false]));
        let mut bad = solve(&[a, b, c], 2).unwrap_err();
        bad.sort();
        assert_eq!(bad, vec![0, 1, 2]);
    }
}
