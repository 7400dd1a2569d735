//! The proof file format.
//!
//! ```text
//! # comment
//! signature: P0/1,c0
//! theta: weak-so:1
//! sigma: ∀x0 P0(x0)
//! goal: P0(c0)
//! 1. (∀x0 P0(x0)) → P0(c0) ; Q1
//! 2. ∀x0 P0(x0) ; premise 1
//! 3. P0(c0) ; MP 1 2
//! template t over n {
//!   1. (∀X0 X0(c0)) → [X0 := θ_n](X0(c0)) ; A6 n
//! }
//! ```
//!
//! Justifications: `premise k`, an axiom name (`PL1` ... `EQ2`, `A1 [k]`,
//! `A2` ... `A5`, `A6 k`), `A6 n` inside templates, `MP i j` (line `i` is
//! the implication), `Gen i x3`, `Gen i X0^2`, `R3 <id>`. Line numbers are
//! 1-based; templates number their own lines.

use std::fmt::Write as _;

use rsol_core::calculus::{Justification, Line, OmegaTemplate, Proof, Schema};
use rsol_core::formulas::{parse, parse_schematic, print, FoVar, Formula, Signature, SoVar};

use crate::formats::content_lines;
use crate::Failure;

#[derive(Clone, Debug, PartialEq)]
pub struct ProofFile {
    pub signature: Signature,
    pub theta: Option<String>,
    pub proof: Proof,
}

fn err(no: usize, msg: impl std::fmt::Display) -> Failure {
    Failure::parse(format!("line {no}: {msg}"))
}

fn number(s: &str, no: usize) -> Result<usize, Failure> {
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k - 1),
        _ => Err(err(no, format!("expected a line or premise number, got {s}"))),
    }
}

fn parse_justification(s: &str, no: usize) -> Result<Justification, Failure> {
    let words: Vec<&str> = s.split_whitespace().collect();
    Ok(match words.as_slice() {
        ["premise", k] => Justification::Premise(number(k, no)?),
        ["MP", i, j] => Justification::Mp(number(i, no)?, number(j, no)?),
        ["Gen", i, v] => {
            let i = number(i, no)?;
            if let Some(d) = v.strip_prefix('x') {
                Justification::GenFo(i, FoVar(d.parse().map_err(|_| err(no, "bad variable"))?))
            } else if let Some(rest) = v.strip_prefix('X') {
                let (idx, arity) = rest.split_once('^').unwrap_or((rest, "1"));
                let idx = idx.parse().map_err(|_| err(no, "bad variable"))?;
                let arity = arity.parse().ok().filter(|a| *a >= 1).ok_or_else(|| err(no, "bad arity"))?;
                Justification::GenSo(i, SoVar::new(idx, arity))
            } else {
                return Err(err(no, format!("cannot generalize over {v}")));
            }
        }
        ["R3", id] => Justification::R3(id.to_string()),
        ["A6", "n"] => Justification::A6n,
        _ => Justification::Axiom(Schema::parse(s).ok_or_else(|| err(no, format!("unknown justification {s}")))?),
    })
}

fn first_inst(lines: &[Line]) -> Option<SoVar> {
    let mut found = None;
    for l in lines {
        l.formula.visit(&mut |g| {
            if let (None, Formula::Inst(v, _)) = (found, g) {
                found = Some(*v);
            }
        });
    }
    found
}

pub fn parse_proof_file(text: &str, default_sig: Option<&Signature>) -> Result<ProofFile, Failure> {
    let mut sig = default_sig.cloned().unwrap_or_default();
    let mut theta = None;
    let mut proof = Proof::default();
    let mut sigma_text: Vec<(usize, String)> = Vec::new();
    let mut goal_text: Option<(usize, String)> = None;
    let mut open: Option<(String, Vec<Line>, usize)> = None;
    let mut seen_lines = false;
    for (no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("template ") {
            if open.is_some() {
                return Err(err(no, "templates do not nest"));
            }
            let words: Vec<&str> = rest.split_whitespace().collect();
            let [_, "over", "n", "{"] = words.as_slice() else {
                return Err(err(no, "expected template <id> over n {"));
            };
            open = Some((words[0].to_string(), Vec::new(), no));
            continue;
        }
        if line == "}" {
            let (id, lines, start) = open.take().ok_or_else(|| err(no, "unmatched }"))?;
            let var = first_inst(&lines).ok_or_else(|| err(start, "template without a schematic node"))?;
            proof.templates.push(OmegaTemplate { id, var, lines });
            continue;
        }
        if !seen_lines {
            if let Some((key, value)) = line.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "signature" => {
                        sig = value.parse().map_err(|e| err(no, e))?;
                        continue;
                    }
                    "theta" => {
                        theta = Some(value.to_string());
                        continue;
                    }
                    "sigma" => {
                        sigma_text.push((no, value.to_string()));
                        continue;
                    }
                    "goal" => {
                        goal_text = Some((no, value.to_string()));
                        continue;
                    }
                    _ => {}
                }
            }
        }
        seen_lines = true;
        let (index, rest) = line.split_once('.').ok_or_else(|| err(no, "expected <index>. <formula> ; <justification>"))?;
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| err(no, "missing ; before the justification"))?;
        let parser = if open.is_some() { parse_schematic } else { parse };
        let target = match &mut open {
            Some((_, lines, _)) => lines,
            None => &mut proof.lines,
        };
        if number(index.trim(), no)? != target.len() {
            return Err(err(no, format!("expected line number {}", target.len() + 1)));
        }
        let f = parser(formula.trim(), &sig).map_err(|e| err(no, e))?;
        target.push(Line::new(f, parse_justification(just.trim(), no)?));
    }
    if let Some((_, _, start)) = open {
        return Err(err(start, "unterminated template"));
    }
    for (no, s) in sigma_text {
        proof.sigma.push(parse(&s, &sig).map_err(|e| err(no, e))?);
    }
    if let Some((no, g)) = goal_text {
        proof.goal = Some(parse(&g, &sig).map_err(|e| err(no, e))?);
    }
    Ok(ProofFile {
        signature: sig,
        theta,
        proof,
    })
}

fn write_lines(out: &mut String, lines: &[Line], indent: &str) {
    for (i, l) in lines.iter().enumerate() {
        writeln!(out, "{indent}{}. {} ; {}", i + 1, print(&l.formula), l.just).expect("string");
    }
}

/// Templates are written before the main lines.
pub fn print_proof_file(pf: &ProofFile) -> String {
    let mut out = String::new();
    writeln!(out, "signature: {}", pf.signature).expect("string");
    if let Some(t) = &pf.theta {
        writeln!(out, "theta: {t}").expect("string");
    }
    for s in &pf.proof.sigma {
        writeln!(out, "sigma: {}", print(s)).expect("string");
    }
    if let Some(g) = &pf.proof.goal {
        writeln!(out, "goal: {}", print(g)).expect("string");
    }
    for t in &pf.proof.templates {
        writeln!(out, "template {} over n {{", t.id).expect("string");
        write_lines(&mut out, &t.lines, "  ");
        out.push_str("}\n");
    }
    write_lines(&mut out, &pf.proof.lines, "");
    out
}
