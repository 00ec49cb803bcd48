//! Exchange matrices, ice quivers and their mutation.

mod canonical;
mod ice;
mod io;
mod matrix;

pub use canonical::{canonical_form, canonical_form_bounded, CanonicalForm, DEFAULT_CANONICAL_BOUND};
pub use ice::{IceQuiver, VertexStatus};
pub use io::{parse_exchange_matrix, parse_quiver, parse_quiver_value, quiver_to_json, write_quiver};
pub use matrix::ExchangeMatrix;
