//! From a JSON problem description to verified invariants.

pub mod analysis;
pub mod commands;
pub mod problem;
pub mod report;

pub use analysis::{
    analyze, Analysis, ClassicalReport, Config, VerificationReport, RESOURCE_LIMIT_VAR,
};
pub use commands::{
    corpus, corpus_entries, exit_code, run, run_corpus, Command, CorpusEntry, Outcome,
    EXIT_IDENTITY_VIOLATED, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED,
};
pub use problem::{GroupSpec, Problem, ProblemSpec};

#[cfg(test)]
mod tests;
