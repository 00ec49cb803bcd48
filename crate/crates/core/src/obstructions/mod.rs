//! Certificates that a quiver has no maximal green sequence, admissible
//! colourings, covering pairs and local-acyclicity certificate trees.

pub mod checker;
mod coloring;
mod cover;
mod diagram;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::class::column_gcds;
use crate::quiver::ExchangeMatrix;

pub use coloring::{
    admissible_coloring, admissible_coloring_capped, ColoredArc, Coloring, ColoringOutcome,
    DEFAULT_CYCLE_CAP,
};
pub use cover::{
    covering_pairs, local_acyclicity_certificate, CertificateCaps, LaCertificate, LaNode,
    LaOutcome,
};
pub use diagram::{Diagram, DiagramCycle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObstructionError {
    #[error("more than {cap} chordless cycles")]
    TooManyCycles { cap: usize },
}

/// Evidence that no maximal green sequence exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoMgsCertificate {
    /// An oriented cycle each of whose arrows has multiplicity at least 2.
    /// Every vertex of the induced subquiver on it is the head of a multiple
    /// arrow, so that subquiver and hence the quiver has no MGS.
    MultipleArrowCycle {
        #[serde(with = "crate::serde_util::one_based")]
        cycle: Vec<usize>,
    },
    /// Covers the whole mutation class: every column gcd is at least 2, so
    /// no class member has a single arrow, and the colouring system has no
    /// solution, so no class member is acyclic.
    ClassLevel {
        column_gcds: Vec<u64>,
        refutation: Vec<DiagramCycle>,
    },
}

/// A shortest oriented cycle in the subgraph of arcs with `b[i][j] >= 2`,
/// starting from the smallest vertex that lies on any such cycle.
pub fn multiple_arrow_cycle(b: &ExchangeMatrix) -> Option<Vec<usize>> {
    let n = b.n();
    for s in 0..n {
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in s..n {
                if b.get(u, v) < 2 {
                    continue;
                }
                if v == s {
                    let mut cycle = vec![u];
                    let mut cur = u;
                    while cur != s {
                        cur = parent[cur].expect("visited vertices have parents");
                        cycle.push(cur);
                    }
                    cycle.reverse();
                    return Some(cycle);
                }
                if parent[v].is_none() {
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
    }
    None
}

pub fn no_mgs_certificate(b: &ExchangeMatrix) -> Option<NoMgsCertificate> {
    multiple_arrow_cycle(b).map(|cycle| NoMgsCertificate::MultipleArrowCycle { cycle })
}

/// Class-level certificate; `None` also when the cycle enumeration hits its
/// cap.
pub fn class_no_mgs_certificate(b: &ExchangeMatrix) -> Option<NoMgsCertificate> {
    if b.n() == 0 {
        return None;
    }
    let gcds = column_gcds(b);
    if gcds.iter().any(|&g| g < 2) {
        return None;
    }
    match admissible_coloring(b).ok()? {
        ColoringOutcome::Unsatisfiable { witness } => Some(NoMgsCertificate::ClassLevel {
            column_gcds: gcds,
            refutation: witness,
        }),
        ColoringOutcome::Admissible { .. } => None,
    }
}
