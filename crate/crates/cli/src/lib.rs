//! Declarative scenarios for the `diffalg` engine: a parser for ring,
//! derivation and task sections, a runner that records one fact per line,
//! and the shipped golden corpus.

pub mod corpus;
pub mod parse;
pub mod runner;
pub mod scenario;

pub use parse::{parse_matrix, parse_polynomial, ParseError};
pub use runner::{error_code, run_scenario, Options, Report, Status, TaskOutcome};
pub use scenario::{parse_scenario, Scenario, TaskKind};
