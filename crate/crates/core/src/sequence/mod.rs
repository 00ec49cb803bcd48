//! Green, maximal green and green-to-red mutation sequences on framed quivers.

mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::QuiverError;
use crate::quiver::{ExchangeMatrix, IceQuiver, VertexStatus};

pub use search::{
    search_from, search_g2r, search_g2r_with, search_mgs, SearchError, SearchKind,
    SearchOptions, SearchOutcome, SearchStrategy,
};

/// A finite list of mutable vertices, applied left to right.
///
/// Stored 0-based; parsed from and printed as comma-separated 1-based
/// indices such as `1,4,3,4,2,4`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationSequence(pub Vec<usize>);

impl MutationSequence {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// From 1-based vertex labels. Panics on a zero label.
    pub fn from_one_based(labels: &[usize]) -> Self {
        Self(
            labels
                .iter()
                .map(|&v| v.checked_sub(1).expect("vertex labels are 1-based"))
                .collect(),
        )
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    /// Applies a vertex relabeling `old -> relabel[old]`.
    pub fn relabeled(&self, relabel: &[usize]) -> Self {
        Self(self.0.iter().map(|&v| relabel[v]).collect())
    }

    fn check(&self, n: usize) -> Result<(), QuiverError> {
        match self.0.iter().find(|&&v| v >= n) {
            Some(&vertex) => Err(QuiverError::VertexOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for MutationSequence {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid mutation sequence {0:?}: expected comma-separated vertex labels starting at 1")]
pub struct ParseSequenceError(pub String);

impl FromStr for MutationSequence {
    type Err = ParseSequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        s.split(',')
            .map(|part| match part.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(ParseSequenceError(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl Serialize for MutationSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MutationSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-step observations made while replaying a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFlags {
    /// The mutated vertex was green just before the step.
    pub was_green: bool,
    /// The mutated vertex was the head of a multiple arrow (frozen arrows
    /// included) just before the step.
    pub was_bad_head: bool,
}

/// Every intermediate framed state of a replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayTrace {
    pub sequence: MutationSequence,
    /// `states[0]` is the framed quiver, `states[t]` follows step `t`.
    pub states: Vec<IceQuiver>,
    pub statuses: Vec<Vec<VertexStatus>>,
    pub flags: Vec<StepFlags>,
}

impl ReplayTrace {
    pub fn final_state(&self) -> &IceQuiver {
        self.states.last().expect("a trace always holds the initial state")
    }

    pub fn final_statuses(&self) -> &[VertexStatus] {
        self.statuses.last().expect("a trace always holds the initial state")
    }

    pub fn all_steps_green(&self) -> bool {
        self.flags.iter().all(|f| f.was_green)
    }

    pub fn ends_all_red(&self) -> bool {
        self.final_statuses().iter().all(|&s| s == VertexStatus::Red)
    }
}

/// Replays `seq` from the framed quiver of `b`.
pub fn replay(b: &ExchangeMatrix, seq: &MutationSequence) -> Result<ReplayTrace, QuiverError> {
    replay_from(&IceQuiver::frame(b), seq)
}

/// Replays `seq` from an arbitrary starting ice quiver.
pub fn replay_from(start: &IceQuiver, seq: &MutationSequence) -> Result<ReplayTrace, QuiverError> {
    seq.check(start.n())?;
    let mut states = Vec::with_capacity(seq.len() + 1);
    let mut statuses = Vec::with_capacity(seq.len() + 1);
    let mut flags = Vec::with_capacity(seq.len());
    let mut cur = start.clone();
    statuses.push(cur.statuses()?);
    for &k in seq.steps() {
        let colors = statuses.last().expect("pushed above");
        flags.push(StepFlags {
            was_green: colors[k] == VertexStatus::Green,
            was_bad_head: cur.is_head_of_multiple_arrow(k, true),
        });
        let next = cur.mutate(k)?;
        states.push(cur);
        cur = next;
        statuses.push(cur.statuses()?);
    }
    states.push(cur);
    Ok(ReplayTrace {
        sequence: seq.clone(),
        states,
        statuses,
        flags,
    })
}

/// Every step mutates a vertex that is green at that moment.
pub fn verify_green(b: &ExchangeMatrix, seq: &MutationSequence) -> Result<bool, QuiverError> {
    Ok(replay(b, seq)?.all_steps_green())
}

/// A green sequence ending with every vertex red.
pub fn verify_maximal_green(
    b: &ExchangeMatrix,
    seq: &MutationSequence,
) -> Result<bool, QuiverError> {
    let trace = replay(b, seq)?;
    Ok(trace.all_steps_green() && trace.ends_all_red())
}

/// Any sequence ending with every vertex red; intermediate colours are free.
pub fn verify_green_to_red(
    b: &ExchangeMatrix,
    seq: &MutationSequence,
) -> Result<bool, QuiverError> {
    Ok(replay(b, seq)?.ends_all_red())
}
