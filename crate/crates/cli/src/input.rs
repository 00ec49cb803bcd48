use std::fs;

use quiverlab_core::{data, parse_quiver, ExchangeMatrix, IceQuiver};

use crate::commands::CliError;

pub fn load(arg: &str) -> Result<IceQuiver, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(name) => data::document(name)
            .ok_or_else(|| CliError::Usage(format!("no shipped example named {name:?}")))?
            .to_string(),
        None => fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?,
    };
    parse_quiver(&text).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
}

/// The exchange matrix of a document without frozen rows.
pub fn load_plain(arg: &str) -> Result<ExchangeMatrix, CliError> {
    let q = load(arg)?;
    if q.frozen_count() > 0 {
        return Err(CliError::Usage(format!(
            "{arg}: expected a quiver without frozen vertices"
        )));
    }
    Ok(q.principal().clone())
}
