//! The golden scenarios, embedded at build time.

use diffalg::par;

use crate::runner::{run_scenario, Options, Report};
use crate::scenario::parse_scenario;

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        /// `(name, file contents)` in corpus order.
        pub const CORPUS: &[(&str, &str)] = &[$(($name, include_str!(concat!("../corpus/", $name, ".scn")))),*];
    };
}

corpus!["ex3_1", "ex3_3", "ex3_4", "ex3_6a", "ex3_6b", "ex4_3", "ex4_7q", "ex4_11", "ex4_13", "ex4_14"];

pub fn source(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses and runs one corpus entry.
pub fn run_named(name: &str, opts: Options) -> Option<Report> {
    let text = source(name)?;
    let s = parse_scenario(name, text).unwrap_or_else(|e| panic!("corpus file {name}.scn does not parse: {e}"));
    Some(run_scenario(&s, opts))
}

/// Every corpus scenario, scheduled as independent jobs.
pub fn run_all(opts: Options) -> Vec<Report> {
    let names: Vec<&str> = CORPUS.iter().map(|(n, _)| *n).collect();
    par::map(opts.exec, &names, |n| run_named(n, opts).expect("listed in CORPUS"))
}
