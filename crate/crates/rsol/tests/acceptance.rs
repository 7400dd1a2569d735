//! One line per criterion: `criterion N: PASS|FAIL (<suite>, <checks>, <time> of <limit>)`.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Duration;

use rsol::corpus::{corpus, uses_omega};
use rsol::suites::{self, Report, MUTATIONS, RULE_MODELS, SOUNDNESS_FAMILIES, SOUNDNESS_PER_FAMILY};

const SEED: u64 = 1;

struct Criterion {
    suite: &'static str,
    limit: Duration,
    /// Size requirements that the suite's own records do not show.
    extra: fn(&Report) -> Result<(), String>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn at_least(what: &str, have: usize, need: usize) -> Result<(), String> {
    if have >= need {
        Ok(())
    } else {
        Err(format!("{what}: {have} < {need}"))
    }
}

fn soundness(r: &Report) -> Result<(), String> {
    at_least("instances per schema", SOUNDNESS_FAMILIES.len() * SOUNDNESS_PER_FAMILY, 200)?;
    at_least("schema records", r.records.len(), 18)
}

fn rules(r: &Report) -> Result<(), String> {
    let c = corpus();
    at_least("corpus", c.len(), 20)?;
    at_least("omega proofs", c.iter().filter(|e| uses_omega(&e.file.proof)).count(), 3)?;
    at_least("models", RULE_MODELS, 20)?;
    at_least("proof records", r.records.len(), c.len())
}

fn collapse(r: &Report) -> Result<(), String> {
    at_least("sentences", suites::COLLAPSE_SENTENCES, 50)?;
    at_least("structures", r.records.len(), 1)
}

fn weakso(r: &Report) -> Result<(), String> {
    at_least("sizes and the singleton check", r.records.len(), 6)
}

fn dsl_orbits(r: &Report) -> Result<(), String> {
    at_least("structures", r.records.iter().filter(|x| x.check.contains("arity 1")).count(), 20)
}

fn lemma_reg(r: &Report) -> Result<(), String> {
    let triples: std::collections::BTreeSet<_> =
        r.records.iter().filter_map(|x| x.check.split(" (").next()).collect();
    at_least("triples", triples.len(), 50)
}

fn rs(r: &Report) -> Result<(), String> {
    at_least("avoid choices", r.records.iter().filter(|x| x.check.starts_with("powerset(3) avoiding")).count(), 7)
}

fn kernel(r: &Report) -> Result<(), String> {
    at_least("mutations", MUTATIONS, 500)?;
    at_least("records", r.records.len(), 1)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { suite: "soundness", limit: secs(120), extra: soundness },
        Criterion { suite: "rules", limit: secs(120), extra: rules },
        Criterion { suite: "collapse", limit: secs(300), extra: collapse },
        Criterion { suite: "weakso", limit: secs(30), extra: weakso },
        Criterion { suite: "dsl-orbits", limit: secs(600), extra: dsl_orbits },
        Criterion { suite: "lemma-reg", limit: secs(120), extra: lemma_reg },
        Criterion { suite: "rs", limit: secs(60), extra: rs },
        Criterion { suite: "kernel", limit: secs(120), extra: kernel },
    ];
    let mut all = true;
    for (i, c) in criteria.iter().enumerate() {
        let line = match suites::run(c.suite, SEED) {
            Ok(r) => {
                let mut problems: Vec<String> = r.failures().map(|f| format!("{}: {}", f.check, f.detail)).collect();
                if let Err(e) = (c.extra)(&r) {
                    problems.push(e);
                }
                if r.elapsed > c.limit {
                    problems.push(format!("took {:.1?}", r.elapsed));
                }
                let ok = problems.is_empty();
                all &= ok;
                let head = format!(
                    "criterion {}: {} ({}, {}/{} checks, {:.1?} of {:?})",
                    i + 1,
                    if ok { "PASS" } else { "FAIL" },
                    c.suite,
                    r.records.iter().filter(|x| x.passed).count(),
                    r.records.len(),
                    r.elapsed,
                    c.limit
                );
                problems.iter().take(5).fold(head, |acc, p| acc + "\n    " + p)
            }
            Err(e) => {
                all = false;
                format!("criterion {}: FAIL ({}: {e})", i + 1, c.suite)
            }
        };
        println!("{line}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
