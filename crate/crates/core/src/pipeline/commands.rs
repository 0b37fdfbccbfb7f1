//! Command entry points returning JSON, text and an exit code.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::analysis::{analyze, Analysis, Config};
use super::problem::{GroupSpec, ProblemSpec};
use super::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_VIOLATED: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

const CORPUS: &str = include_str!("../../data/corpus.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Verify,
    Classical,
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn failure(err: &Error) -> Self {
        let code = exit_code(err);
        Outcome {
            json: json!({ "error": { "kind": error_kind(err), "message": err.to_string() } }),
            text: format!("error: {err}\n"),
            exit_code: code,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::NonIntegralCoefficient { .. } => EXIT_IDENTITY_VIOLATED,
        _ => EXIT_UNSUPPORTED,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match exit_code(err) {
        EXIT_PARSE => "parse",
        EXIT_IDENTITY_VIOLATED => "identity",
        _ => "unsupported",
    }
}

/// The built-in corpus of problems, without group choices.
pub fn corpus() -> Vec<ProblemSpec> {
    serde_json::from_str(CORPUS).expect("built-in corpus is valid")
}

/// Runs one command on a JSON problem description.
pub fn run(command: Command, input: &str, config: &Config) -> Outcome {
    match run_inner(command, input, config) {
        Ok(o) => o,
        Err(e) => Outcome::failure(&e),
    }
}

fn run_inner(command: Command, input: &str, config: &Config) -> Result<Outcome> {
    let spec = ProblemSpec::from_json(input)?;
    let analysis = analyze(spec.resolve()?, config)?;
    let mut json = report::analysis_json(&analysis);
    let mut text = report::analysis_text(&analysis);
    let mut exit_code = EXIT_OK;
    match command {
        Command::Analyze => {}
        Command::Verify => {
            let v = analysis.verify()?;
            json["verification"] = report::verification_json(&v);
            text.push_str(&report::verification_text(
                &v,
                report::ambient_label(&analysis.problem),
            ));
            if !v.ok || !v.secondary_ok {
                exit_code = EXIT_IDENTITY_VIOLATED;
            }
        }
        Command::Classical => {
            let c = analysis.classical()?;
            json["classical"] = report::classical_json(&c);
            text.push_str(&report::classical_text(&c));
            if !c.ok || !c.degree_ok() {
                exit_code = EXIT_IDENTITY_VIOLATED;
            }
        }
    }
    Ok(Outcome {
        json,
        text,
        exit_code,
    })
}

/// Result of one corpus entry under one group choice.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub group: &'static str,
    pub identity_ok: bool,
    pub secondary_ok: bool,
    pub independent: bool,
    pub routes_agree: bool,
    pub closed_matches: bool,
    pub log_matches: bool,
    /// `None` when the classical relation does not apply to this group.
    pub classical_ok: Option<bool>,
    pub degree_ok: Option<bool>,
    pub error: Option<String>,
}

impl CorpusEntry {
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.identity_ok
            && self.secondary_ok
            && self.routes_agree
            && self.closed_matches
            && self.log_matches
            && self.classical_ok != Some(false)
            && self.degree_ok != Some(false)
    }

    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "group": self.group,
            "identity_ok": self.identity_ok,
            "secondary_ok": self.secondary_ok,
            "independent": self.independent,
            "routes_agree": self.routes_agree,
            "closed_matches": self.closed_matches,
            "log_matches": self.log_matches,
            "classical_ok": self.classical_ok,
            "degree_ok": self.degree_ok,
            "error": self.error,
            "ok": self.ok(),
        })
    }
}

fn corpus_entry(spec: &ProblemSpec, config: &Config) -> CorpusEntry {
    let mut entry = CorpusEntry {
        name: spec.name.clone().unwrap_or_default(),
        group: spec.group.label(),
        identity_ok: false,
        secondary_ok: false,
        independent: false,
        routes_agree: false,
        closed_matches: false,
        log_matches: false,
        classical_ok: None,
        degree_ok: None,
        error: None,
    };
    let analysis: Result<Analysis> = spec.resolve().and_then(|p| analyze(p, config));
    let result = analysis.and_then(|a| {
        let v = a.verify()?;
        entry.identity_ok = v.ok;
        entry.secondary_ok = v.secondary_ok;
        entry.independent = v.independent;
        entry.routes_agree = a.strata.routes_agree();
        entry.closed_matches = a.closed_matches();
        entry.log_matches = a.corollary_holds();
        if a.problem.is_monodromy_cyclic() {
            let c = a.classical()?;
            entry.classical_ok = Some(c.ok);
            entry.degree_ok = Some(c.degree_ok());
        }
        Ok(())
    });
    if let Err(e) = result {
        entry.error = Some(e.to_string());
    }
    entry
}

/// Every corpus polynomial under both `G = G_f` and `G = <h>`.
pub fn corpus_entries(config: &Config) -> Vec<CorpusEntry> {
    let specs: Vec<ProblemSpec> = corpus()
        .into_iter()
        .flat_map(|s| {
            [GroupSpec::FullSymmetry, GroupSpec::MonodromyCyclic]
                .into_iter()
                .map(move |group| ProblemSpec { group, ..s.clone() })
        })
        .collect();
    specs.par_iter().map(|s| corpus_entry(s, config)).collect()
}

pub fn run_corpus(config: &Config) -> Outcome {
    let entries = corpus_entries(config);
    let all_ok = entries.iter().all(CorpusEntry::ok);
    let mut text = String::new();
    for e in &entries {
        text.push_str(&format!(
            "{:<16} {:<17} {}{}\n",
            e.name,
            e.group,
            report::pass(e.ok()),
            e.error
                .as_ref()
                .map(|m| format!(" ({m})"))
                .unwrap_or_default()
        ));
    }
    text.push_str(&format!(
        "{} of {} corpus runs passed\n",
        entries.iter().filter(|e| e.ok()).count(),
        entries.len()
    ));
    Outcome {
        json: json!({
            "entries": entries.iter().map(CorpusEntry::json).collect::<Vec<_>>(),
            "ok": all_ok,
        }),
        text,
        exit_code: if all_ok {
            EXIT_OK
        } else {
            EXIT_IDENTITY_VIOLATED
        },
    }
}
