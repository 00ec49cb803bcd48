//! Quiver mutation and cluster-algebra combinatorics: framed quivers and
//! green/red vertices, maximal green and green-to-red sequences, certificates
//! that no maximal green sequence exists, local-acyclicity certificates and
//! exact Laurent-polynomial tests for upper cluster algebra membership.
//!
//! Vertices are 0-based in the API and 1-based in every text format.

pub mod class;
pub mod cluster;
pub mod error;
pub mod obstructions;
pub mod quiver;
pub mod sequence;
mod serde_util;

pub use class::{
    class_contains_acyclic, column_gcds, enumerate_class, is_mutation_finite, AcyclicSearch,
    ClassCaps, MutationClass,
};
pub use cluster::{
    cluster_variable, degree, depth1_upper_membership, grading_check, is_coprime_matrix,
    parse_laurent, seed_mutate, ClusterError, Degree, GradingVector, LaurentPoly, Seed,
};
pub use error::{FormatError, QuiverError};
pub use obstructions::{
    admissible_coloring, class_no_mgs_certificate, covering_pairs, local_acyclicity_certificate,
    multiple_arrow_cycle, no_mgs_certificate, CertificateCaps, Coloring, ColoringOutcome,
    LaCertificate, LaOutcome, NoMgsCertificate,
};
pub use quiver::{
    canonical_form, parse_exchange_matrix, parse_quiver, CanonicalForm, ExchangeMatrix,
    IceQuiver, VertexStatus,
};
pub use sequence::{
    replay, search_g2r, search_mgs, verify_green, verify_green_to_red, verify_maximal_green,
    MutationSequence, ReplayTrace, SearchKind, SearchOptions, SearchOutcome,
};

/// Quivers shipped with the crate.
pub mod data {
    use crate::quiver::{parse_exchange_matrix, ExchangeMatrix};

    pub const QCE: &str = include_str!("../data/qce.quiver");
    pub const X7_B1: &str = include_str!("../data/x7_b1.quiver");
    pub const X7_B2: &str = include_str!("../data/x7_b2.quiver");
    pub const MARKOV: &str = include_str!("../data/markov.quiver");
    pub const A2: &str = include_str!("../data/a2.quiver");

    /// The document for a named example: `qce`, `x7_b1`, `x7_b2`, `markov`
    /// or `a2`.
    pub fn document(name: &str) -> Option<&'static str> {
        match name {
            "qce" => Some(QCE),
            "x7_b1" => Some(X7_B1),
            "x7_b2" => Some(X7_B2),
            "markov" => Some(MARKOV),
            "a2" => Some(A2),
            _ => None,
        }
    }

    pub fn matrix(name: &str) -> Option<ExchangeMatrix> {
        document(name).map(|d| parse_exchange_matrix(d).expect("shipped documents parse"))
    }

    pub fn qce() -> ExchangeMatrix {
        matrix("qce").expect("shipped")
    }

    pub fn x7_b1() -> ExchangeMatrix {
        matrix("x7_b1").expect("shipped")
    }

    pub fn x7_b2() -> ExchangeMatrix {
        matrix("x7_b2").expect("shipped")
    }

    pub fn markov() -> ExchangeMatrix {
        matrix("markov").expect("shipped")
    }

    pub fn a2() -> ExchangeMatrix {
        matrix("a2").expect("shipped")
    }
}
