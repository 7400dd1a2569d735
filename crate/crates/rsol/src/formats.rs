//! Structure files, family files, premise files and regular-family files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use rsol_core::boolean::{EntryKind, RegularEntry};
use rsol_core::formulas::{parse, FoVar, Formula, Signature};
use rsol_core::structures::{tuple_count, FiniteStructure, Relation};
use rsol_core::theta::{builtin, Custom, ThetaFamily};

use crate::Failure;

/// The JSON form of a finite structure. Symbols are named `P<i>`, `f<i>`,
/// `c<i>` with contiguous indices. `arities` is needed only where a table
/// does not determine the arity (an empty predicate, a one-element domain).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub domain_size: u32,
    #[serde(default)]
    pub predicates: BTreeMap<String, Vec<Vec<u32>>>,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    pub constants: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arities: BTreeMap<String, u32>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub identity: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn indexed<V>(map: &BTreeMap<String, V>, prefix: char) -> Result<Vec<(&String, &V)>, Failure> {
    let mut out: Vec<(u32, &String, &V)> = Vec::new();
    for (name, v) in map {
        let i = name
            .strip_prefix(prefix)
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| Failure::parse(format!("symbol {name} should be {prefix}<index>")))?;
        out.push((i, name, v));
    }
    out.sort_by_key(|e| e.0);
    if out.iter().enumerate().any(|(j, e)| e.0 as usize != j) {
        return Err(Failure::parse(format!("{prefix} indices must be contiguous from 0")));
    }
    Ok(out.into_iter().map(|(_, n, v)| (n, v)).collect())
}

impl StructureFile {
    pub fn to_structure(&self) -> Result<FiniteStructure, Failure> {
        let n = self.domain_size;
        let mut preds = Vec::new();
        let mut pred_arities = Vec::new();
        for (name, tuples) in indexed(&self.predicates, 'P')? {
            let arity = match (self.arities.get(name), tuples.first()) {
                (Some(a), _) => *a,
                (None, Some(t)) => t.len() as u32,
                (None, None) => return Err(Failure::parse(format!("give the arity of the empty predicate {name}"))),
            };
            if arity == 0 || tuples.iter().any(|t| t.len() as u32 != arity || t.iter().any(|e| *e >= n)) {
                return Err(Failure::parse(format!("{name}: tuples must have length {arity} and entries below {n}")));
            }
            preds.push(Relation::from_tuples(arity, n, tuples.iter().map(|t| t.as_slice())));
            pred_arities.push(arity as usize);
        }
        let mut funcs = Vec::new();
        let mut func_arities = Vec::new();
        for (name, table) in indexed(&self.functions, 'f')? {
            let arity = match self.arities.get(name) {
                Some(a) => *a,
                None => (1..=8)
                    .find(|k| tuple_count(n, *k) == Some(table.len()))
                    .ok_or_else(|| Failure::parse(format!("{name}: table length is not a power of {n}")))?,
            };
            funcs.push(table.clone());
            func_arities.push(arity as usize);
        }
        let consts: Vec<u32> = indexed(&self.constants, 'c')?.into_iter().map(|(_, v)| *v).collect();
        let mut sig = Signature::new(pred_arities, func_arities, consts.len());
        if !self.identity {
            sig = sig.without_identity();
        }
        Ok(FiniteStructure::new(n, sig, preds, funcs, consts)?)
    }

    pub fn from_structure(s: &FiniteStructure) -> Self {
        let sig = s.signature();
        let mut out = StructureFile {
            domain_size: s.size(),
            identity: sig.identity,
            ..Default::default()
        };
        for (i, r) in s.predicates().iter().enumerate() {
            out.predicates.insert(format!("P{i}"), r.tuples().collect());
            out.arities.insert(format!("P{i}"), r.arity());
        }
        for (i, a) in sig.functions.iter().enumerate() {
            out.functions.insert(format!("f{i}"), s.function_table(i).to_vec());
            out.arities.insert(format!("f{i}"), *a as u32);
        }
        for (i, c) in s.constants().iter().enumerate() {
            out.constants.insert(format!("c{i}"), *c);
        }
        out
    }
}

pub fn parse_structure(json: &str) -> Result<FiniteStructure, Failure> {
    serde_json::from_str::<StructureFile>(json)?.to_structure()
}

pub fn load_structure(path: &Path) -> Result<FiniteStructure, Failure> {
    parse_structure(&std::fs::read_to_string(path)?)
}

pub fn structure_json(s: &FiniteStructure) -> String {
    serde_json::to_string(&StructureFile::from_structure(s)).expect("serializable")
}

fn var_list(s: &str) -> Result<Vec<FoVar>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .map(FoVar)
                .ok_or_else(|| Failure::parse(format!("expected a variable x<n>, got {v}")))
        })
        .collect()
}

/// A custom family: one member per line, `<slots> | <params> | <formula>`
/// with comma-separated variable lists, e.g. `x0 | x1 | P0(x0) ∨ x0 = x1`.
pub fn parse_custom_family(name: &str, text: &str, sig: &Signature) -> Result<Custom, Failure> {
    let mut members = Vec::new();
    for (no, line) in content_lines(text) {
        let parts: Vec<&str> = line.splitn(3, '|').collect();
        let [slots, params, formula] = parts[..] else {
            return Err(Failure::parse(format!("line {no}: expected <slots> | <params> | <formula>")));
        };
        let f = parse(formula.trim(), sig).map_err(|e| Failure::parse(format!("line {no}: {e}")))?;
        members.push((f, var_list(slots)?, var_list(params)?));
    }
    Ok(Custom::new(name, sig, members)?)
}

/// A built-in family name, or the path of a custom family file.
pub fn load_theta(spec: &str, sig: &Signature) -> Result<Box<dyn ThetaFamily>, Failure> {
    if let Some(f) = builtin(spec, sig) {
        return Ok(f);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::parse(format!("unknown family {spec}")));
    }
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
    Ok(Box::new(parse_custom_family(name, &std::fs::read_to_string(path)?, sig)?))
}

/// Non-empty lines with `#` comments removed, numbered from 1.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// One sentence per line.
pub fn parse_sigma(text: &str, sig: &Signature) -> Result<Vec<Formula>, Failure> {
    content_lines(text)
        .map(|(no, l)| parse(l, sig).map_err(|e| Failure::parse(format!("line {no}: {e}"))))
        .collect()
}

/// Splits at commas outside braces and parentheses.
pub fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|p| !p.is_empty());
    out
}

/// Entries `join|meet : <bound> : <element list or generator name>`.
pub fn parse_regular_family<E: Clone + 'static>(
    text: &str,
    elem: impl Fn(&str) -> Option<E>,
    generator: impl Fn(&str) -> Option<fn(usize) -> E>,
) -> Result<Vec<RegularEntry<E>>, Failure> {
    let mut out = Vec::new();
    for (no, line) in content_lines(text) {
        let parts: Vec<&str> = line.splitn(3, ':').map(str::trim).collect();
        let [kind, bound, members] = parts[..] else {
            return Err(Failure::parse(format!("line {no}: expected join|meet : <bound> : <members>")));
        };
        let kind = match kind {
            "join" => EntryKind::Join,
            "meet" => EntryKind::Meet,
            k => return Err(Failure::parse(format!("line {no}: unknown entry kind {k}"))),
        };
        let bad = |what: &str| Failure::parse(format!("line {no}: cannot read element {what}"));
        let bound = elem(bound).ok_or_else(|| bad(bound))?;
        let label = format!("line {no}");
        let entry = match generator(members) {
            Some(g) => {
                let mut e = RegularEntry::infinite(kind, members, g, bound);
                e.label = format!("{label} ({members})");
                e
            }
            None => {
                let list = split_top(members)
                    .into_iter()
                    .map(|m| elem(m).ok_or_else(|| bad(m)))
                    .collect::<Result<Vec<E>, Failure>>()?;
                RegularEntry::finite(kind, list, bound, &label)
            }
        };
        out.push(entry);
    }
    Ok(out)
}
