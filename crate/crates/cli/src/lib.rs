//! Campaign harness, file formats and report generation behind the `ur`
//! command-line tool.

pub mod campaign;
pub mod demo;
pub mod error;
pub mod report;
pub mod wire;

pub use campaign::{draw_instance, run_campaign, CampaignConfig, CampaignResult, Instance};
pub use error::{CliError, CliResult};
pub use wire::{load_problem, parse_problem, save_problem, Problem, ProblemFile};

use ur_core::{RelationId, StateKind};

/// Parses `all` or a comma-separated list of relation names.
pub fn parse_relations(list: &str) -> CliResult<Vec<RelationId>> {
    parse_list(list, &RelationId::ALL, |s| {
        s.parse().map_err(|e: ur_core::relations::UnknownRelation| e.to_string())
    })
}

/// Parses `all` or a comma-separated list of state kinds.
pub fn parse_state_kinds(list: &str) -> CliResult<Vec<StateKind>> {
    parse_list(list, &StateKind::ALL, |s| s.parse())
}

fn parse_list<T: Copy + PartialEq>(
    list: &str,
    all: &[T],
    parse: impl Fn(&str) -> Result<T, String>,
) -> CliResult<Vec<T>> {
    if list.trim() == "all" {
        return Ok(all.to_vec());
    }
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let item = parse(part).map_err(CliError::Config)?;
        if !out.contains(&item) {
            out.push(item);
        }
    }
    if out.is_empty() {
        return Err(CliError::Config(format!("empty list '{list}'")));
    }
    Ok(out)
}
