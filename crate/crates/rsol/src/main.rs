use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rsol::corpus::uses_omega;
use rsol::formats::{load_structure, load_theta, parse_regular_family, parse_sigma, structure_json};
use rsol::prf::{parse_proof_file, print_proof_file, ProofFile};
use rsol::suites::{self, merge};
use rsol::Failure;
use rsol_core::boolean::{
    check_f_compatible, complete_regular_family, is_ultrafilter, rs_construct, verify_entry, BooleanAlgebra,
    CofiniteFilter, EntryKind, FinCof, FinCofSet, Free, Membership, PowerSet, RegularEntry, Step, Verdict,
    DEFAULT_BUDGET,
};
use rsol_core::calculus::{apply_deduction, check_proof, spot_check_template, DeductionError, Kernel};
use rsol_core::formulas::{parse, parse_schematic, print, FoVar, Formula, Signature, SoVar, Variable};
use rsol_core::structures::{
    automorphisms, eval_full_so, eval_so, exact_k, k_exact_orbits, leibniz_reduce, lemma_reg_check,
    materialize_by_rank, materialize_k, orbits, Assignment, DefinableFamily, LemmaItem, RegCheck,
};
use rsol_core::theta::{classify_prefix, Enumerated};

/// Second-order logic over definable relation families: evaluation, proof
/// checking and compatible ultrafilters.
#[derive(Parser)]
#[command(name = "rsol", version)]
struct Cli {
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Oracle {
    /// `K` from the members up to `--bound`.
    Bounded,
    /// The exact `K` of the family.
    Exact,
    /// Unions of automorphism orbits (add `--params` for every relation).
    Orbits,
    /// Unions of quantifier-rank types up to `--rank`.
    Rank,
    /// Every relation (full second-order semantics).
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and pretty-print a formula.
    Parse {
        formula: String,
        #[arg(long, default_value = "")]
        signature: String,
        /// Accept `[X := θ_n](φ)` nodes.
        #[arg(long)]
        schematic: bool,
    },
    /// Evaluate a sentence in a standard structure.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value = "dsl")]
        theta: String,
        #[arg(long, value_enum, default_value = "exact")]
        oracle: Oracle,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        params: bool,
        #[arg(long)]
        sentence: String,
        /// Fail unless the value is this.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// List the relations of `K` with their witnesses.
    Ktheta {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value = "dsl")]
        theta: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Compute the exact family at these arities instead.
        #[arg(long, value_delimiter = ',')]
        exact: Vec<u32>,
    },
    /// Automorphisms, orbits and the parameter-free definable family.
    Orbits {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value_t = 1)]
        arity: u32,
        #[arg(long)]
        params: bool,
    },
    /// Compare standard all-fo semantics with full second-order semantics.
    CompareSo {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        sentence: Vec<String>,
        /// One sentence per line.
        #[arg(long)]
        sentences: Option<PathBuf>,
    },
    /// Check one quantifier identity in the truth algebra.
    LemmaCheck {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value = "weak-so")]
        theta: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long)]
        formula: String,
        /// i, ii, iii, iv, v or vi.
        #[arg(long)]
        item: String,
        /// The quantified variable, `x0` or `X0`.
        #[arg(long)]
        var: String,
        /// Free individual variables `x0 ..` available to the algebra.
        #[arg(long, default_value_t = 2)]
        vars: u32,
    },
    /// Leibniz reduction by identity-free indistinguishability.
    Reduce {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Check a proof file.
    ProveCheck {
        #[arg(long)]
        proof: PathBuf,
        /// Extra premises, one per line, numbered after the header ones.
        #[arg(long)]
        sigma: Option<PathBuf>,
        #[arg(long)]
        theta: Option<String>,
        /// Also check template instances `0 ..= N` line by line.
        #[arg(long)]
        spot: Option<usize>,
        /// Discharge this premise and check the transformed proof.
        #[arg(long)]
        deduce: Option<String>,
        /// Where to write the transformed proof.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rasiowa-Sikorski construction of a compatible ultrafilter.
    Rs {
        /// powerset:<n>, free:<g> or fincof.
        #[arg(long)]
        algebra: String,
        /// A family file, or a generator name (atoms, coatoms, initial).
        #[arg(long)]
        family: Option<String>,
        /// Use every subset of a finite carrier with its join and meet.
        #[arg(long)]
        complete: bool,
        #[arg(long, default_value = "0")]
        avoid: String,
        /// Elements to decide after the entries.
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Per-entry search budget (default: RSOL_BUDGET or 10000).
        #[arg(long)]
        budget: Option<usize>,
        /// Also report the verdicts of the cofinite ultrafilter (fincof).
        #[arg(long)]
        cofinite: bool,
    },
    /// Run a verification suite.
    Suite {
        #[arg(value_parser = suites::SUITES)]
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, human: impl AsRef<str>, record: Value) {
        if self.json {
            println!("{record}");
        } else {
            println!("{}", human.as_ref());
        }
    }

    fn text(&self, human: impl AsRef<str>) {
        if !self.json {
            println!("{}", human.as_ref());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    match run(cli.cmd, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if out.json {
                println!("{}", json!({"error": e.to_string(), "exit": e.exit_code()}));
            }
            eprintln!("rsol: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse_in(text: &str, sig: &Signature) -> Result<Formula, Failure> {
    Ok(parse(text, sig)?)
}

fn budget(explicit: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = explicit {
        return Ok(b);
    }
    match std::env::var("RSOL_BUDGET") {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::pre(format!("RSOL_BUDGET must be a number, got {v}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn sizes(k: &DefinableFamily) -> Value {
    k.arities().map(|a| (a.to_string(), json!(k.len(a)))).collect::<serde_json::Map<_, _>>().into()
}

fn run(cmd: Cmd, out: &Out) -> Result<bool, Failure> {
    match cmd {
        Cmd::Parse {
            formula,
            signature,
            schematic,
        } => {
            let sig: Signature = signature.parse()?;
            let f = if schematic {
                parse_schematic(&formula, &sig)?
            } else {
                parse(&formula, &sig)?
            };
            let n = f.normalize();
            let class = classify_prefix(&f);
            let prefix = format!("∃_{} ∀_{}", class.exists, class.forall);
            out.emit(
                format!(
                    "{}\nprimitive: {}\nsentence: {}\nquantifier rank: {}\nprefix: {prefix}",
                    print(&f),
                    print(&n),
                    f.is_sentence(),
                    f.quantifier_rank()
                ),
                json!({
                    "command": "parse",
                    "formula": print(&f),
                    "primitive": print(&n),
                    "sentence": f.is_sentence(),
                    "rank": f.quantifier_rank(),
                    "prefix": prefix,
                }),
            );
            Ok(true)
        }
        Cmd::Eval {
            structure,
            theta,
            oracle,
            bound,
            rank,
            params,
            sentence,
            expect,
        } => {
            let s = load_structure(&structure)?;
            let f = parse_in(&sentence, s.signature())?;
            if !f.is_sentence() {
                return Err(Failure::pre("eval needs a sentence"));
            }
            let arities: Vec<u32> = f.so_arities().into_iter().collect();
            let a = Assignment::new();
            let (value, k) = match oracle {
                Oracle::Full => (eval_full_so(&s, &f, &a)?, None),
                _ => {
                    let k = match oracle {
                        Oracle::Bounded => materialize_k(&s, load_theta(&theta, s.signature())?.as_ref(), bound)?,
                        Oracle::Exact => exact_k(&s, load_theta(&theta, s.signature())?.as_ref(), &arities)?,
                        Oracle::Orbits => merge(
                            arities
                                .iter()
                                .map(|&ar| k_exact_orbits(&s, params, ar))
                                .collect::<Result<Vec<_>, _>>()?,
                            s.size(),
                        ),
                        _ => {
                            let r = rank.unwrap_or(s.size() + 1);
                            merge(
                                arities
                                    .iter()
                                    .map(|&ar| materialize_by_rank(&s, ar, r))
                                    .collect::<Result<Vec<_>, _>>()?,
                                s.size(),
                            )
                        }
                    };
                    (eval_so(&s, &k, &f, &a)?, Some(k))
                }
            };
            let passed = expect.is_none_or(|e| e == value);
            let family = k.as_ref().map(sizes).unwrap_or(Value::Null);
            let mut human = value.to_string();
            if let Some(e) = expect.filter(|_| !passed) {
                human.push_str(&format!(" (expected {e})"));
            }
            out.emit(
                human,
                json!({
                    "command": "eval",
                    "sentence": print(&f),
                    "oracle": format!("{oracle:?}").to_lowercase(),
                    "value": value,
                    "family": family,
                    "passed": passed,
                }),
            );
            Ok(passed)
        }
        Cmd::Ktheta {
            structure,
            theta,
            bound,
            exact,
        } => {
            let s = load_structure(&structure)?;
            let fam = load_theta(&theta, s.signature())?;
            let k = if exact.is_empty() {
                materialize_k(&s, fam.as_ref(), bound)?
            } else {
                exact_k(&s, fam.as_ref(), &exact)?
            };
            out.text(format!("{} on {} elements: {} relations", fam.name(), s.size(), k.total_len()));
            for a in k.arities().collect::<Vec<_>>() {
                for (r, prov) in k.entries(a) {
                    out.emit(
                        format!("  {r}  {prov:?}"),
                        json!({
                            "command": "ktheta",
                            "arity": a,
                            "relation": r.tuples().collect::<Vec<_>>(),
                            "provenance": format!("{prov:?}"),
                        }),
                    );
                }
            }
            Ok(true)
        }
        Cmd::Orbits {
            structure,
            arity,
            params,
        } => {
            let s = load_structure(&structure)?;
            let autos = automorphisms(&s);
            let orbs = orbits(&s, arity)?;
            let k = k_exact_orbits(&s, params, arity)?;
            out.emit(
                format!(
                    "{} automorphisms\norbits: {}\ndefinable {arity}-ary relations: {}",
                    autos.len(),
                    orbs.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "),
                    k.len(arity)
                ),
                json!({
                    "command": "orbits",
                    "automorphisms": autos.len(),
                    "orbits": orbs.iter().map(|o| o.tuples().collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "definable": k.len(arity),
                }),
            );
            Ok(true)
        }
        Cmd::CompareSo {
            structure,
            sentence,
            sentences,
        } => {
            let s = load_structure(&structure)?;
            let mut fs = sentence
                .iter()
                .map(|t| parse_in(t, s.signature()))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(path) = sentences {
                fs.extend(parse_sigma(&std::fs::read_to_string(path)?, s.signature())?);
            }
            if fs.is_empty() {
                return Err(Failure::pre("give --sentence or --sentences"));
            }
            let fam = Enumerated::all_fo(s.signature(), true);
            let mut all = true;
            for f in &fs {
                let arities: Vec<u32> = f.so_arities().into_iter().collect();
                let k = exact_k(&s, &fam, &arities)?;
                let a = Assignment::new();
                let (std, full) = (eval_so(&s, &k, f, &a)?, eval_full_so(&s, f, &a)?);
                all &= std == full;
                out.emit(
                    format!("{} {}: standard {std}, full {full}", if std == full { "agree" } else { "DIFFER" }, print(f)),
                    json!({"command": "compare-so", "sentence": print(f), "standard": std, "full": full, "passed": std == full}),
                );
            }
            Ok(all)
        }
        Cmd::LemmaCheck {
            structure,
            theta,
            bound,
            formula,
            item,
            var,
            vars,
        } => {
            let s = load_structure(&structure)?;
            let fam = load_theta(&theta, s.signature())?;
            let f = parse_in(&formula, s.signature())?;
            let item = LemmaItem::parse(&item).ok_or_else(|| Failure::parse(format!("unknown item {item}")))?;
            let var = parse_variable(&var)?;
            let k = materialize_k(&s, fam.as_ref(), bound)?;
            let cx = RegCheck {
                structure: &s,
                vars,
                k: &k,
                family: fam.as_ref(),
                bound,
            };
            let r = lemma_reg_check(&cx, &f, item, var)?;
            out.emit(
                format!(
                    "({item}) {}: quantified {}, {} of {} instances {}",
                    if r.holds() { "holds" } else { "FAILS" },
                    r.lhs,
                    if item.universal() { "meet" } else { "join" },
                    r.instances,
                    r.rhs
                ),
                json!({
                    "command": "lemma-check",
                    "item": item.to_string(),
                    "formula": print(&f),
                    "lhs": r.lhs.tuples().collect::<Vec<_>>(),
                    "rhs": r.rhs.tuples().collect::<Vec<_>>(),
                    "instances": r.instances,
                    "passed": r.holds(),
                }),
            );
            Ok(r.holds())
        }
        Cmd::Reduce { structure, depth } => {
            let s = load_structure(&structure)?;
            let r = leibniz_reduce(&s, depth)?;
            let quotient: Value = serde_json::from_str(&structure_json(&r.quotient))?;
            out.emit(
                format!(
                    "blocks: {:?}\nrounds: {}, stable: {}\nquotient: {}",
                    r.blocks(),
                    r.rounds,
                    r.stable,
                    quotient
                ),
                json!({
                    "command": "reduce",
                    "blocks": r.blocks(),
                    "rounds": r.rounds,
                    "stable": r.stable,
                    "quotient": quotient,
                }),
            );
            Ok(true)
        }
        Cmd::ProveCheck {
            proof,
            sigma,
            theta,
            spot,
            deduce,
            out: target,
        } => prove_check(out, &proof, sigma.as_deref(), theta, spot, deduce, target.as_deref()),
        Cmd::Rs {
            algebra,
            family,
            complete,
            avoid,
            steps,
            budget: b,
            cofinite,
        } => {
            let b = budget(b)?;
            let cfg = RsRun {
                family: family.as_deref(),
                complete,
                avoid: &avoid,
                steps,
                budget: b,
            };
            let (head, arg) = algebra.split_once(':').unwrap_or((&algebra, ""));
            let size = || {
                arg.parse::<u32>()
                    .map_err(|_| Failure::parse(format!("expected {head}:<n>, got {algebra}")))
            };
            match head {
                "powerset" => {
                    let p = PowerSet::new(size()?)?;
                    rs_run(out, &p, &cfg, |s| p.parse(s), |_| None, |_| None, None)
                }
                "free" => {
                    let f = Free::new(size()?)?;
                    rs_run(out, &f, &cfg, |s| f.parse(s), |_| None, |_| None, None)
                }
                "fincof" => {
                    let parse = |s: &str| match s.trim() {
                        "0" => Some(FinCof.zero()),
                        "1" => Some(FinCof.one()),
                        t => FinCofSet::parse(t),
                    };
                    let other: Option<&dyn Membership<FinCofSet>> = cofinite.then_some(&CofiniteFilter);
                    rs_run(out, &FinCof, &cfg, parse, fincof_entry, FinCof::generator, other)
                }
                _ => Err(Failure::parse(format!("unknown algebra {algebra}"))),
            }
        }
        Cmd::Suite { name, seed } => {
            let report = suites::run(&name, seed)?;
            for r in &report.records {
                out.emit(
                    format!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.check, r.detail),
                    serde_json::to_value(r)?,
                );
            }
            out.text(report.summary());
            Ok(report.passed())
        }
    }
}

fn parse_variable(s: &str) -> Result<Variable, Failure> {
    let bad = || Failure::parse(format!("expected x<n> or X<n>[^k], got {s}"));
    if let Some(d) = s.strip_prefix('x') {
        return Ok(Variable::Fo(FoVar(d.parse().map_err(|_| bad())?)));
    }
    let rest = s.strip_prefix('X').ok_or_else(bad)?;
    let (i, a) = rest.split_once('^').unwrap_or((rest, "1"));
    let arity: u32 = a.parse().map_err(|_| bad())?;
    if arity == 0 {
        return Err(bad());
    }
    Ok(Variable::So(SoVar::new(i.parse().map_err(|_| bad())?, arity)))
}

fn prove_check(
    out: &Out,
    path: &Path,
    sigma: Option<&Path>,
    theta: Option<String>,
    spot: Option<usize>,
    deduce: Option<String>,
    target: Option<&Path>,
) -> Result<bool, Failure> {
    let mut file = parse_proof_file(&std::fs::read_to_string(path)?, None)?;
    if let Some(extra) = sigma {
        let more = parse_sigma(&std::fs::read_to_string(extra)?, &file.signature)?;
        file.proof.sigma.extend(more);
    }
    if let Some(i) = file.proof.sigma.iter().position(|f| !f.is_sentence()) {
        return Err(Failure::pre(format!("premise {} is not a sentence", i + 1)));
    }
    let theta = theta.or_else(|| file.theta.clone()).unwrap_or_else(|| "weak-so".into());
    let fam = load_theta(&theta, &file.signature)?;
    let k = Kernel::new(fam.as_ref());
    let report = |label: &str, pf: &ProofFile| -> Result<bool, Failure> {
        let p = &pf.proof;
        if let Err(r) = check_proof(&k, p) {
            out.emit(
                format!("{label}: rejected at {r}"),
                json!({"command": "prove-check", "proof": label, "passed": false, "rejection": r.to_string()}),
            );
            return Ok(false);
        }
        let conclusion = p.conclusion().map(print).unwrap_or_default();
        out.emit(
            format!(
                "{label}: accepted, {} lines, {} templates{}\nconclusion: {conclusion}",
                p.lines.len(),
                p.templates.len(),
                if uses_omega(p) { ", uses the omega rule" } else { "" }
            ),
            json!({
                "command": "prove-check",
                "proof": label,
                "passed": true,
                "lines": p.lines.len(),
                "templates": p.templates.len(),
                "conclusion": conclusion,
            }),
        );
        let mut ok = true;
        if let Some(bound) = spot {
            for t in &p.templates {
                let verdict = spot_check_template(&k, &p.sigma, t, bound);
                ok &= verdict.is_ok();
                out.emit(
                    match &verdict {
                        Ok(n) => format!("  template {}: {n} instances accepted", t.id),
                        Err(r) => format!("  template {}: {r}", t.id),
                    },
                    json!({
                        "command": "spot-check",
                        "template": t.id,
                        "passed": verdict.is_ok(),
                        "detail": verdict.map_or_else(|r| r.to_string(), |n| format!("{n} instances")),
                    }),
                );
            }
        }
        Ok(ok)
    };
    let mut passed = report(&path.display().to_string(), &file)?;
    if let Some(text) = deduce {
        let phi = parse_in(&text, &file.signature)?;
        let proof = apply_deduction(&k, &file.proof, &phi).map_err(|e| match e {
            DeductionError::NotSentence => Failure::pre(e.to_string()),
            DeductionError::Rejected(_) => Failure::Check(e.to_string()),
        })?;
        let deduced = ProofFile {
            proof,
            theta: Some(theta.clone()),
            ..file.clone()
        };
        let printed = print_proof_file(&deduced);
        match target {
            Some(p) => std::fs::write(p, &printed)?,
            None => out.text(&printed),
        }
        passed &= report("deduced", &deduced)?;
    }
    Ok(passed)
}

struct RsRun<'a> {
    family: Option<&'a str>,
    complete: bool,
    avoid: &'a str,
    steps: usize,
    budget: usize,
}

/// Built-in fincof entries: `atoms` (join 1), `coatoms` (meet 0) and
/// `initial` (join 1).
fn fincof_entry(name: &str) -> Option<RegularEntry<FinCofSet>> {
    let g = FinCof::generator(name)?;
    Some(match name {
        "coatoms" => RegularEntry::infinite(EntryKind::Meet, name, g, FinCof.zero()),
        _ => RegularEntry::infinite(EntryKind::Join, name, g, FinCof.one()),
    })
}

fn rs_run<A: BooleanAlgebra>(
    out: &Out,
    alg: &A,
    cfg: &RsRun<'_>,
    elem: impl Fn(&str) -> Option<A::Elem>,
    builtin: impl Fn(&str) -> Option<RegularEntry<A::Elem>>,
    generator: impl Fn(&str) -> Option<fn(usize) -> A::Elem>,
    other: Option<&dyn Membership<A::Elem>>,
) -> Result<bool, Failure>
where
    A::Elem: 'static,
{
    let avoid = elem(cfg.avoid).ok_or_else(|| Failure::parse(format!("cannot read element {}", cfg.avoid)))?;
    let mut entries = if cfg.complete {
        complete_regular_family(alg)?
    } else {
        Vec::new()
    };
    if let Some(spec) = cfg.family {
        match builtin(spec) {
            Some(e) if !Path::new(spec).exists() => entries.push(e),
            _ => {
                let text = std::fs::read_to_string(spec)?;
                entries.extend(parse_regular_family(&text, &elem, &generator)?);
            }
        }
    }
    for e in &entries {
        verify_entry(alg, e, cfg.budget)?;
    }
    let u = rs_construct(alg, &entries, &avoid, cfg.steps, cfg.budget)?;
    out.text(format!("{} entries in {}, avoiding {}", entries.len(), alg.name(), alg.show(&avoid)));
    out.emit(
        format!("chain: {}", u.chain.iter().map(|e| alg.show(e)).collect::<Vec<_>>().join(" ≥ ")),
        json!({"command": "rs", "chain": u.chain.iter().map(|e| alg.show(e)).collect::<Vec<_>>()}),
    );
    for s in &u.steps {
        let (human, record) = match s {
            Step::Bound { entry } => (
                format!("  entry {}: bound", entries[*entry].label),
                json!({"step": "bound", "entry": entries[*entry].label}),
            ),
            Step::Witness { entry, index, member } => (
                format!("  entry {}: witness {index} = {}", entries[*entry].label, alg.show(member)),
                json!({"step": "witness", "entry": entries[*entry].label, "index": index, "member": alg.show(member)}),
            ),
            Step::Decide { element, member } => (
                format!("  decide {}: {}", alg.show(element), if *member { "in" } else { "out" }),
                json!({"step": "decide", "element": alg.show(element), "member": member}),
            ),
        };
        out.emit(human, record);
    }
    let m = u.membership(alg);
    let excluded = !m.contains(&avoid);
    let mut passed = excluded;
    if alg.cardinality().is_some() {
        let ultra = is_ultrafilter(alg, &m)?;
        passed &= ultra;
        out.emit(
            format!("ultrafilter: {ultra}, avoided element excluded: {excluded}"),
            json!({"check": "ultrafilter", "passed": ultra, "excluded": excluded}),
        );
    } else {
        out.emit(
            format!("generated by {}, avoided element excluded: {excluded}", alg.show(u.last())),
            json!({"check": "avoid", "passed": excluded, "generator": alg.show(u.last())}),
        );
    }
    let mut counts = [0usize; 3];
    for e in &entries {
        let v = check_f_compatible(&m, e, cfg.budget);
        counts[match v {
            Verdict::Compatible => 0,
            Verdict::Incompatible { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }] += 1;
        passed &= !matches!(v, Verdict::Incompatible { .. });
        if entries.len() <= 64 || !v.is_compatible() {
            out.emit(
                format!("  {} ({}): {v:?}", e.label, e.kind),
                json!({"check": "compatible", "entry": e.label, "verdict": format!("{v:?}"), "passed": !matches!(v, Verdict::Incompatible { .. })}),
            );
        }
        if let Some(o) = other {
            let w = check_f_compatible(o, e, cfg.budget);
            out.emit(
                format!("  cofinite ultrafilter on {}: {w:?}", e.label),
                json!({"check": "cofinite", "entry": e.label, "verdict": format!("{w:?}")}),
            );
        }
    }
    out.text(format!(
        "{} compatible, {} incompatible, {} inconclusive",
        counts[0], counts[1], counts[2]
    ));
    Ok(passed)
}

