//! Mutation classes up to relabeling.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::QuiverError;
use crate::obstructions::{admissible_coloring, ColoringOutcome};
use crate::quiver::{canonical_form, ExchangeMatrix, IceQuiver, DEFAULT_CANONICAL_BOUND};
use crate::sequence::MutationSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCaps {
    pub max_quivers: usize,
    /// Quivers with a larger arrow multiplicity are not added.
    pub max_multiplicity: i64,
}

impl Default for ClassCaps {
    fn default() -> Self {
        Self {
            max_quivers: 10_000,
            max_multiplicity: 32,
        }
    }
}

/// One isomorphism class in a mutation class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMember {
    pub canonical: ExchangeMatrix,
    /// Reaches a quiver isomorphic to `canonical` from the seed, in the
    /// seed's labels.
    pub sequence: MutationSequence,
}

/// Mutating member `from` (in the labels of `from`'s sequence endpoint) at
/// `vertex` gives a quiver isomorphic to member `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEdge {
    pub from: usize,
    #[serde(with = "crate::serde_util::one_based_index")]
    pub vertex: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationClass {
    /// In discovery order; the seed's class is first.
    pub representatives: Vec<ClassMember>,
    /// Whether closure under mutation was reached within the caps.
    pub complete: bool,
    pub edges: Vec<ClassEdge>,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn contains(&self, b: &ExchangeMatrix) -> Result<bool, QuiverError> {
        let c = canonical_form(b)?.matrix;
        Ok(self.representatives.iter().any(|m| m.canonical == c))
    }
}

/// Breadth-first enumeration of `mut(b)` up to relabeling.
pub fn enumerate_class(b: &ExchangeMatrix, caps: ClassCaps) -> Result<MutationClass, QuiverError> {
    Ok(explore(b, caps, |_| false)?.0)
}

/// Result of the exploration plus the index of the first member accepted by
/// `stop`, if any.
fn explore(
    b: &ExchangeMatrix,
    caps: ClassCaps,
    stop: impl Fn(&ExchangeMatrix) -> bool,
) -> Result<(MutationClass, Option<usize>), QuiverError> {
    let n = b.n();
    let mut index: HashMap<ExchangeMatrix, usize> = HashMap::new();
    let mut members = vec![ClassMember {
        canonical: canonical_form(b)?.matrix,
        sequence: MutationSequence::empty(),
    }];
    index.insert(members[0].canonical.clone(), 0);
    if stop(b) {
        return Ok((
            MutationClass {
                representatives: members,
                complete: false,
                edges: Vec::new(),
            },
            Some(0),
        ));
    }
    let mut edges = Vec::new();
    let mut complete = true;
    // (member index, concrete matrix in seed labels)
    let mut frontier = vec![(0usize, b.clone())];
    while !frontier.is_empty() {
        let children: Vec<Vec<(usize, ExchangeMatrix, ExchangeMatrix)>> = frontier
            .par_iter()
            .map(|(_, m)| {
                (0..n)
                    .map(|k| {
                        let next = m.mutate(k)?;
                        let canon = canonical_form(&next)?.matrix;
                        Ok((k, next, canon))
                    })
                    .collect::<Result<Vec<_>, QuiverError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next_frontier = Vec::new();
        for ((from, _), kids) in frontier.iter().zip(children) {
            for (k, next, canon) in kids {
                if let Some(&to) = index.get(&canon) {
                    edges.push(ClassEdge { from: *from, vertex: k, to });
                    continue;
                }
                if next.max_multiplicity() > caps.max_multiplicity
                    || members.len() >= caps.max_quivers
                {
                    complete = false;
                    continue;
                }
                let to = members.len();
                let mut sequence = members[*from].sequence.clone();
                sequence.0.push(k);
                index.insert(canon.clone(), to);
                members.push(ClassMember {
                    canonical: canon,
                    sequence,
                });
                edges.push(ClassEdge { from: *from, vertex: k, to });
                if stop(&next) {
                    return Ok((
                        MutationClass {
                            representatives: members,
                            complete: false,
                            edges,
                        },
                        Some(to),
                    ));
                }
                next_frontier.push((to, next));
            }
        }
        frontier = next_frontier;
    }
    Ok((
        MutationClass {
            representatives: members,
            complete,
            edges,
        },
        None,
    ))
}

/// Whether `mut(b)` is finite. Decided componentwise: components of rank at
/// most 2 are finite, and a larger connected component is infinite iff some
/// quiver in its class has an arrow of multiplicity at least 3.
pub fn is_mutation_finite(b: &ExchangeMatrix) -> bool {
    b.connected_components().into_iter().all(|comp| {
        if comp.len() <= 2 {
            return true;
        }
        let c = b
            .induced_subquiver(&comp)
            .expect("components are valid vertex sets");
        component_finite(&c)
    })
}

fn component_finite(b: &ExchangeMatrix) -> bool {
    let n = b.n();
    // beyond the canonical-form bound, deduplicate labeled matrices instead
    let key = |m: &ExchangeMatrix| -> ExchangeMatrix {
        if n <= DEFAULT_CANONICAL_BOUND {
            canonical_form(m).map(|c| c.matrix).unwrap_or_else(|_| m.clone())
        } else {
            m.clone()
        }
    };
    if b.max_multiplicity() >= 3 {
        return false;
    }
    let mut seen = HashSet::from([key(b)]);
    let mut frontier = vec![b.clone()];
    while let Some(m) = frontier.pop() {
        for k in 0..n {
            let Ok(next) = m.mutate(k) else {
                return false;
            };
            if next.max_multiplicity() >= 3 {
                return false;
            }
            if seen.insert(key(&next)) {
                frontier.push(next);
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum AcyclicSearch {
    /// Mutating along `sequence` gives an acyclic quiver.
    Found { sequence: MutationSequence },
    NotWithinCap,
    /// No admissible colouring exists, so no quiver in the class is acyclic.
    ImpossibleByColoring,
}

pub fn class_contains_acyclic(
    b: &ExchangeMatrix,
    caps: ClassCaps,
) -> Result<AcyclicSearch, QuiverError> {
    if b.is_acyclic() {
        return Ok(AcyclicSearch::Found {
            sequence: MutationSequence::empty(),
        });
    }
    if let Ok(ColoringOutcome::Unsatisfiable { .. }) = admissible_coloring(b) {
        return Ok(AcyclicSearch::ImpossibleByColoring);
    }
    let (class, hit) = explore(b, caps, ExchangeMatrix::is_acyclic)?;
    Ok(match hit {
        Some(i) => AcyclicSearch::Found {
            sequence: class.representatives[i].sequence.clone(),
        },
        None => AcyclicSearch::NotWithinCap,
    })
}

fn gcd_of(values: impl Iterator<Item = i64>) -> u64 {
    values.fold(0u64, |g, v| g.gcd(&v.unsigned_abs()))
}

/// gcd of the absolute values in each column; 0 for an all-zero column.
pub fn column_gcds(b: &ExchangeMatrix) -> Vec<u64> {
    (0..b.n())
        .map(|j| gcd_of((0..b.n()).map(|i| b.get(i, j))))
        .collect()
}

/// As [`column_gcds`], over all rows of the extended matrix.
pub fn ice_column_gcds(q: &IceQuiver) -> Vec<u64> {
    (0..q.n())
        .map(|j| gcd_of((0..q.m()).map(|r| q.entry(r, j))))
        .collect()
}

/// FNV-1a over the entries; stable across runs and platforms.
pub fn canonical_hash(canonical: &ExchangeMatrix) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let n = canonical.n() as i64;
    for v in std::iter::once(n).chain(canonical.rows().into_iter().flatten()) {
        for byte in v.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

/// An index document plus one quiver document per representative, named
/// `<hash>.quiver`.
pub fn class_dump(class: &MutationClass) -> (serde_json::Value, Vec<(String, String)>) {
    let hashes: Vec<String> = class
        .representatives
        .iter()
        .map(|m| canonical_hash(&m.canonical))
        .collect();
    let index = serde_json::json!({
        "complete": class.complete,
        "representatives": class.representatives.iter().zip(&hashes).map(|(m, h)| {
            serde_json::json!({
                "hash": h,
                "file": format!("{h}.quiver"),
                "sequence": m.sequence,
            })
        }).collect::<Vec<_>>(),
        "edges": class.edges.iter().map(|e| {
            serde_json::json!({
                "from": hashes[e.from],
                "vertex": e.vertex + 1,
                "to": hashes[e.to],
            })
        }).collect::<Vec<_>>(),
    });
    let docs = class
        .representatives
        .iter()
        .zip(&hashes)
        .map(|(m, h)| {
            (
                format!("{h}.quiver"),
                crate::quiver::write_quiver(&IceQuiver::from_principal(m.canonical.clone())),
            )
        })
        .collect();
    (index, docs)
}
