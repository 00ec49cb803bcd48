use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MutationSequence;
use crate::error::QuiverError;
use crate::obstructions::{class_no_mgs_certificate, no_mgs_certificate, NoMgsCertificate};
use crate::quiver::{ExchangeMatrix, IceQuiver, VertexStatus};

/// Frontiers smaller than this are expanded on the calling thread.
const PARALLEL_FRONTIER: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// Level by level with exact-state deduplication; returns a shortest
    /// sequence.
    BreadthFirst,
    /// Depth-limited DFS with increasing limits and no visited set.
    IterativeDeepening,
}

/// Which kind of sequence a search looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Mgs,
    G2r,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Skip green vertices that are the head of a multiple arrow.
    pub prune_bad_head: bool,
    /// Count arrows from frozen vertices when deciding the above.
    pub count_frozen_arrows: bool,
    /// Try the no-MGS certificates before searching.
    pub check_obstructions: bool,
    /// Cap on distinct states (BFS) or visited nodes per iteration (IDDFS).
    pub max_states: usize,
    pub strategy: SearchStrategy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            prune_bad_head: true,
            count_frozen_arrows: true,
            check_obstructions: true,
            max_states: 2_000_000,
            strategy: SearchStrategy::BreadthFirst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { sequence: MutationSequence },
    /// No sequence of length at most `depth` exists. Not a proof of
    /// nonexistence.
    ExhaustedToDepth { depth: usize },
    Obstructed { certificate: NoMgsCertificate },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&MutationSequence> {
        match self {
            Self::Found { sequence } => Some(sequence),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("state cap of {cap} exceeded; every sequence of length <= {best_depth} was explored")]
    ResourceExceeded { cap: usize, best_depth: usize },
    /// Nothing was found, but some states had entries beyond the 64-bit range
    /// and were not explored.
    #[error("{skipped} states overflowed 64-bit entries and were skipped; search to depth {depth} is incomplete")]
    Overflow { skipped: usize, depth: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Clone, Copy)]
enum Goal {
    MaximalGreen { prune: bool, count_frozen: bool },
    GreenToRed,
}

impl Goal {
    /// Vertices worth mutating next from `q`, given the previous step.
    fn moves(self, q: &IceQuiver, last: Option<usize>) -> Result<Vec<usize>, QuiverError> {
        let mut out = Vec::with_capacity(q.n());
        for k in 0..q.n() {
            match self {
                Goal::MaximalGreen { prune, count_frozen } => {
                    if q.vertex_status(k)? != VertexStatus::Green {
                        continue;
                    }
                    if prune && q.is_head_of_multiple_arrow(k, count_frozen) {
                        continue;
                    }
                }
                Goal::GreenToRed => {
                    if last == Some(k) {
                        continue;
                    }
                }
            }
            out.push(k);
        }
        Ok(out)
    }
}

/// Searches for a maximal green sequence of `b` of length at most
/// `max_depth`.
pub fn search_mgs(
    b: &ExchangeMatrix,
    max_depth: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    if options.check_obstructions {
        if let Some(certificate) = no_mgs_certificate(b).or_else(|| class_no_mgs_certificate(b)) {
            return Ok(SearchOutcome::Obstructed { certificate });
        }
    }
    let goal = Goal::MaximalGreen {
        prune: options.prune_bad_head,
        count_frozen: options.count_frozen_arrows,
    };
    run(b, max_depth, goal, options)
}

/// Searches for a green-to-red sequence of `b` of length at most `max_depth`
/// with default options.
pub fn search_g2r(b: &ExchangeMatrix, max_depth: usize) -> Result<SearchOutcome, SearchError> {
    search_g2r_with(b, max_depth, &SearchOptions::default())
}

pub fn search_g2r_with(
    b: &ExchangeMatrix,
    max_depth: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    run(b, max_depth, Goal::GreenToRed, options)
}

/// Continues from an arbitrary ice quiver, e.g. the middle of a sequence.
/// The no-MGS certificates describe the framed quiver, so they are only
/// consulted when `start` is exactly the framing of its principal part.
pub fn search_from(
    start: &IceQuiver,
    kind: SearchKind,
    max_depth: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    match kind {
        SearchKind::Mgs => {
            if *start == IceQuiver::frame(start.principal()) {
                return search_mgs(start.principal(), max_depth, options);
            }
            let goal = Goal::MaximalGreen {
                prune: options.prune_bad_head,
                count_frozen: options.count_frozen_arrows,
            };
            run_from(start.clone(), max_depth, goal, options)
        }
        SearchKind::G2r => run_from(start.clone(), max_depth, Goal::GreenToRed, options),
    }
}

fn run(
    b: &ExchangeMatrix,
    max_depth: usize,
    goal: Goal,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    run_from(IceQuiver::frame(b), max_depth, goal, options)
}

fn run_from(
    start: IceQuiver,
    max_depth: usize,
    goal: Goal,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    match options.strategy {
        SearchStrategy::BreadthFirst => bfs(start, max_depth, goal, options.max_states),
        SearchStrategy::IterativeDeepening => iddfs(start, max_depth, goal, options.max_states),
    }
}

struct Node {
    state: IceQuiver,
    path: Vec<usize>,
}

fn bfs(
    start: IceQuiver,
    max_depth: usize,
    goal: Goal,
    cap: usize,
) -> Result<SearchOutcome, SearchError> {
    let mut seen: HashSet<IceQuiver> = HashSet::new();
    seen.insert(start.clone());
    let mut skipped = 0;
    let mut frontier = vec![Node {
        state: start,
        path: Vec::new(),
    }];
    for depth in 0..=max_depth {
        for node in &frontier {
            if node.state.all_red()? {
                return Ok(SearchOutcome::Found {
                    sequence: MutationSequence(node.path.clone()),
                });
            }
        }
        if depth == max_depth || frontier.is_empty() {
            break;
        }
        // `None` marks a child whose entries overflowed
        let expand = |node: &Node| -> Result<Vec<Option<Node>>, QuiverError> {
            goal.moves(&node.state, node.path.last().copied())?
                .into_iter()
                .map(|k| match node.state.mutate(k) {
                    Ok(state) => {
                        let mut path = node.path.clone();
                        path.push(k);
                        Ok(Some(Node { state, path }))
                    }
                    Err(QuiverError::Overflow) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect()
        };
        let children: Vec<Vec<Option<Node>>> = if frontier.len() >= PARALLEL_FRONTIER {
            frontier.par_iter().map(expand).collect::<Result<_, _>>()?
        } else {
            frontier.iter().map(expand).collect::<Result<_, _>>()?
        };
        let mut next = Vec::new();
        for child in children.into_iter().flatten() {
            let Some(child) = child else {
                skipped += 1;
                continue;
            };
            if seen.insert(child.state.clone()) {
                if seen.len() > cap {
                    return Err(SearchError::ResourceExceeded {
                        cap,
                        best_depth: depth,
                    });
                }
                next.push(child);
            }
        }
        frontier = next;
    }
    exhausted(max_depth, skipped)
}

fn exhausted(depth: usize, skipped: usize) -> Result<SearchOutcome, SearchError> {
    if skipped > 0 {
        Err(SearchError::Overflow { skipped, depth })
    } else {
        Ok(SearchOutcome::ExhaustedToDepth { depth })
    }
}

fn iddfs(
    start: IceQuiver,
    max_depth: usize,
    goal: Goal,
    cap: usize,
) -> Result<SearchOutcome, SearchError> {
    fn dfs(
        q: &IceQuiver,
        path: &mut Vec<usize>,
        limit: usize,
        goal: Goal,
        budget: &mut usize,
        skipped: &mut usize,
    ) -> Result<bool, QuiverError> {
        if path.len() == limit {
            return q.all_red();
        }
        for k in goal.moves(q, path.last().copied())? {
            if *budget == 0 {
                return Ok(false);
            }
            *budget -= 1;
            let next = match q.mutate(k) {
                Ok(next) => next,
                Err(QuiverError::Overflow) => {
                    *skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            path.push(k);
            if dfs(&next, path, limit, goal, budget, skipped)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    let mut skipped = 0;
    for limit in 0..=max_depth {
        let mut budget = cap;
        let mut path = Vec::new();
        if dfs(&start, &mut path, limit, goal, &mut budget, &mut skipped)? {
            return Ok(SearchOutcome::Found {
                sequence: MutationSequence(path),
            });
        }
        if budget == 0 {
            return Err(SearchError::ResourceExceeded {
                cap,
                best_depth: limit.saturating_sub(1),
            });
        }
    }
    exhausted(max_depth, skipped)
}
