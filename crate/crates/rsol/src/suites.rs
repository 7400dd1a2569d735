//! Seeded verification suites. Each returns one record per check; the
//! records are deterministic given the seed.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use rsol_core::boolean::{
    check_f_compatible, complete_regular_family, is_ultrafilter, rs_construct, BooleanAlgebra, CofiniteFilter,
    FinCof, FinCofSet, Membership, PowerSet, Step, Verdict, DEFAULT_BUDGET,
};
use rsol_core::calculus::{
    apply_deduction, check_proof, instantiate_template, matches_schema, spot_check_template, Kernel, Line, Proof,
};
use rsol_core::formulas::{alpha_eq, parse, FoVar, Formula, Signature, SoVar, Variable};
use rsol_core::structures::{
    eval_full_so, eval_so, exact_k, k_exact_orbits, lemma_reg_check, materialize_by_rank, materialize_k,
    Assignment, DefinableFamily, FiniteStructure, LemmaItem, RegCheck,
};
use rsol_core::theta::{Enumerated, ThetaFamily, WeakSo};

use crate::corpus::{corpus, unused_lines, uses_omega, Entry};
use crate::formats::load_theta;
use crate::gen::{self, axiom_instance, closure, flip_atom, FormulaGen, Rand, SO_SCHEMATA};
use crate::Failure;

pub const SUITES: [&str; 8] = ["soundness", "rules", "collapse", "weakso", "dsl-orbits", "lemma-reg", "rs", "kernel"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub seed: u64,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<Record>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn summary(&self) -> String {
        let ok = self.records.iter().filter(|r| r.passed).count();
        format!(
            "{}: {}/{} checks passed in {:.1?}",
            self.suite,
            ok,
            self.records.len(),
            self.elapsed
        )
    }
}

struct Log {
    suite: &'static str,
    seed: u64,
    records: Vec<Record>,
}

impl Log {
    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.records.push(Record {
            suite: self.suite.into(),
            seed: self.seed,
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn run(name: &str, seed: u64) -> Result<Report, Failure> {
    let start = Instant::now();
    let suite = SUITES
        .into_iter()
        .find(|s| *s == name)
        .ok_or_else(|| Failure::pre(format!("unknown suite {name}; expected one of {}", SUITES.join(", "))))?;
    let mut log = Log {
        suite,
        seed,
        records: Vec::new(),
    };
    let mut rng = gen::rng(seed);
    match suite {
        "soundness" => soundness(&mut log, &mut rng)?,
        "rules" => rules(&mut log, &mut rng)?,
        "collapse" => collapse(&mut log, &mut rng)?,
        "weakso" => weakso(&mut log)?,
        "dsl-orbits" => dsl_orbits(&mut log, &mut rng)?,
        "lemma-reg" => lemma_reg(&mut log, &mut rng)?,
        "rs" => rs(&mut log)?,
        _ => kernel(&mut log, &mut rng)?,
    }
    Ok(Report {
        suite: suite.into(),
        seed,
        records: log.records,
        elapsed: start.elapsed(),
    })
}

fn sig(s: &str) -> Signature {
    s.parse().expect("suite signature")
}

/// `count` random structures, sizes cycling through `1..=max_size`.
fn catalog(rng: &mut Rand, sig: &Signature, max_size: u32, count: usize) -> Vec<FiniteStructure> {
    (0..count)
        .map(|i| gen::structure(rng, sig, 1 + (i as u32 % max_size)))
        .collect()
}

pub const SOUNDNESS_FAMILIES: [&str; 3] = ["weak-so", "dsl", "all-fo"];
pub const SOUNDNESS_PER_FAMILY: usize = 70;

fn soundness(log: &mut Log, rng: &mut Rand) -> Result<(), Failure> {
    let sig = sig("P0/1,P1/2,c0");
    let pool = catalog(rng, &sig, 4, 24);
    for name in SOUNDNESS_FAMILIES {
        let fam = load_theta(name, &sig)?;
        let ks = pool
            .iter()
            .map(|s| exact_k(s, fam.as_ref(), &[1]))
            .collect::<Result<Vec<_>, _>>()?;
        let max_n = if name == "weak-so" { 3 } else { 20 };
        for schema in SO_SCHEMATA {
            let (mut truths, mut recognized, mut first_bad) = (0, 0, None);
            for _ in 0..SOUNDNESS_PER_FAMILY {
                let (f, expected) = axiom_instance(rng, fam.as_ref(), schema, max_n)
                    .ok_or_else(|| Failure::pre(format!("{name} cannot instantiate {schema}")))?;
                let at = rng.gen_range(0..pool.len());
                let holds = eval_so(&pool[at], &ks[at], &closure(&f), &Assignment::new())?;
                let known = matches_schema(fam.as_ref(), &f, expected);
                truths += holds as usize;
                recognized += known as usize;
                if first_bad.is_none() && !(holds && known) {
                    first_bad = Some(format!("{f} on structure {at} (true: {holds}, recognized: {known})"));
                }
            }
            let n = SOUNDNESS_PER_FAMILY;
            log.push(
                format!("{schema} {name}"),
                truths == n && recognized == n,
                first_bad.unwrap_or_else(|| format!("{truths}/{n} true, {recognized}/{n} recognized")),
            );
        }
    }
    Ok(())
}

/// The lines of a proof with templates instantiated at `0..=bound`.
fn all_lines(k: &Kernel<'_>, p: &Proof, bound: usize) -> Result<Vec<Formula>, Failure> {
    let mut out: Vec<Formula> = p.lines.iter().map(|l| l.formula.clone()).collect();
    for t in &p.templates {
        for n in 0..=bound {
            let lines: Vec<Line> = instantiate_template(k, t, n).map_err(|e| Failure::Check(e.to_string()))?;
            out.extend(lines.into_iter().map(|l| l.formula));
        }
    }
    Ok(out)
}

pub const RULE_MODELS: usize = 20;

fn rules(log: &mut Log, rng: &mut Rand) -> Result<(), Failure> {
    for e in corpus() {
        let sig = &e.file.signature;
        let fam = load_theta(e.theta(), sig)?;
        let k = Kernel::new(fam.as_ref());
        if let Err(r) = check_proof(&k, &e.file.proof) {
            log.push(&e.name, false, format!("kernel rejects the proof: {r}"));
            continue;
        }
        let lines: Vec<Formula> = all_lines(&k, &e.file.proof, 2)?.iter().map(closure).collect();
        let mut arities: Vec<u32> = lines.iter().flat_map(|f| f.so_arities()).collect();
        arities.extend(e.file.proof.sigma.iter().flat_map(|f| f.so_arities()));
        arities.sort();
        arities.dedup();
        let (mut models, mut tries, mut bad) = (0, 0, None);
        while models < RULE_MODELS && tries < 5000 && bad.is_none() {
            tries += 1;
            let size = rng.gen_range(1..=4);
            let s = gen::structure(rng, sig, size);
            let kk = exact_k(&s, fam.as_ref(), &arities)?;
            let a = Assignment::new();
            let mut premises = true;
            for f in &e.file.proof.sigma {
                premises &= eval_so(&s, &kk, f, &a)?;
            }
            if !premises {
                continue;
            }
            models += 1;
            for f in &lines {
                if !eval_so(&s, &kk, f, &a)? {
                    bad = Some(format!("{f} fails on a model of the premises"));
                    break;
                }
            }
        }
        let ok = bad.is_none() && models >= RULE_MODELS;
        let detail = bad.unwrap_or_else(|| format!("{} lines true in {models} models", lines.len()));
        log.push(&e.name, ok, detail);
    }
    Ok(())
}

pub const COLLAPSE_SENTENCES: usize = 50;

fn so_quantifiers(f: &Formula) -> usize {
    let mut n = 0;
    f.visit(&mut |g| {
        if matches!(g, Formula::ForallSo(..) | Formula::ExistsSo(..)) {
            n += 1;
        }
    });
    n
}

fn collapse(log: &mut Log, rng: &mut Rand) -> Result<(), Failure> {
    let sig = sig("P0/1,P1/2");
    let structures = catalog(rng, &sig, 3, 12);
    let g = FormulaGen::new(&sig, 2).with_so(&[], &[SoVar::new(0, 1), SoVar::new(1, 1), SoVar::new(0, 2)]);
    let mut sentences = Vec::new();
    while sentences.len() < COLLAPSE_SENTENCES {
        let f = g.sentence(rng, 4);
        if (1..=2).contains(&so_quantifiers(&f)) {
            sentences.push(f);
        }
    }
    let fam = Enumerated::all_fo(&sig, true);
    for (i, s) in structures.iter().enumerate() {
        let k = exact_k(s, &fam, &[1, 2])?;
        let mut bad = None;
        for f in &sentences {
            let a = Assignment::new();
            let (std, full) = (eval_so(s, &k, f, &a)?, eval_full_so(s, f, &a)?);
            if std != full && bad.is_none() {
                bad = Some(format!("{f}: standard {std}, full {full}"));
            }
        }
        let detail = bad.clone().unwrap_or_else(|| format!("{} sentences agree on |A| = {}", sentences.len(), s.size()));
        log.push(format!("structure {i}"), bad.is_none(), detail);
    }
    Ok(())
}

fn weakso(log: &mut Log) -> Result<(), Failure> {
    let empty = Signature::empty();
    let fam = WeakSo::new(&empty, 1);
    for n in 1..=5u32 {
        let s = FiniteStructure::pure(n);
        let k = materialize_k(&s, &fam, n as usize - 1)?;
        let want = (1usize << n) - 1;
        let got = k.len(1);
        let exact = k.same_relations(&exact_k(&s, &fam, &[1])?);
        log.push(
            format!("|A| = {n}"),
            got == want && exact && k.relations(1).all(|r| !r.is_empty()),
            format!("{got}/{want} nonempty subsets"),
        );
    }
    let s = FiniteStructure::pure(2);
    let f = parse("∀x ∃X ∀y (X(y) ↔ x = y)", &empty)?;
    let weak = eval_so(&s, &materialize_k(&s, &fam, 1)?, &f, &Assignment::new())?;
    let dsl = eval_so(&s, &exact_k(&s, &Enumerated::dsl(&empty), &[1])?, &f, &Assignment::new())?;
    log.push(
        "singletons on two points",
        weak && !dsl,
        format!("weak-so {weak}, dsl-orbits {dsl}"),
    );
    Ok(())
}

fn dsl_orbits(log: &mut Log, rng: &mut Rand) -> Result<(), Failure> {
    let sig = sig("P0/1,P1/2");
    let mut structures: Vec<FiniteStructure> = catalog(rng, &sig, 4, 20);
    let empty: Vec<FiniteStructure> = (1..=4).map(FiniteStructure::pure).collect();
    structures.extend(empty);
    for (i, s) in structures.iter().enumerate() {
        let arities: &[u32] = if s.size() <= 3 { &[1, 2] } else { &[1] };
        for &arity in arities {
            let by_rank = materialize_by_rank(s, arity, s.size() + 1)?;
            let exact = k_exact_orbits(s, false, arity)?;
            log.push(
                format!("structure {i} arity {arity}"),
                by_rank.same_relations(&exact),
                format!("|A| = {}, {} relations by rank, {} by orbits", s.size(), by_rank.len(arity), exact.len(arity)),
            );
        }
    }
    Ok(())
}

pub const LEMMA_TRIPLES: usize = 60;

fn lemma_reg(log: &mut Log, rng: &mut Rand) -> Result<(), Failure> {
    let sig = sig("P0/1,P1/2,c0");
    let v = SoVar::new(0, 1);
    for t in 0..2 * LEMMA_TRIPLES {
        let first_order = t < LEMMA_TRIPLES;
        let size = rng.gen_range(1..=3);
        let s = gen::structure(rng, &sig, size);
        let name = ["weak-so", "dsl", "all-fo"][rng.gen_range(0..3)];
        let fam = load_theta(name, &sig)?;
        let bound = match name {
            "weak-so" => s.size() as usize - 1,
            _ => 8,
        };
        let k = materialize_k(&s, fam.as_ref(), bound)?;
        let g = if first_order {
            FormulaGen::new(&sig, 2).with_so(&[], &[SoVar::new(1, 1)])
        } else {
            FormulaGen::new(&sig, 2).with_so(&[v], &[SoVar::new(1, 1)])
        };
        let mut f = g.formula(rng, 3);
        // only the quantified variable may stay free at second order
        for w in f.free_so().into_iter().filter(|w| *w != v) {
            f = if rng.gen_bool(0.5) {
                Formula::forall_so(w, f)
            } else {
                Formula::exists_so(w, f)
            };
        }
        let cx = RegCheck {
            structure: &s,
            vars: 2,
            k: &k,
            family: fam.as_ref(),
            bound,
        };
        let items: Vec<(LemmaItem, Variable)> = if first_order {
            let x = FoVar(rng.gen_range(0..2));
            vec![(LemmaItem::I, Variable::Fo(x)), (LemmaItem::II, Variable::Fo(x))]
        } else {
            [LemmaItem::III, LemmaItem::IV, LemmaItem::V, LemmaItem::VI]
                .into_iter()
                .map(|i| (i, Variable::So(v)))
                .collect()
        };
        for (item, var) in items {
            let out = lemma_reg_check(&cx, &f, item, var)?;
            log.push(
                format!("triple {t} ({item}) {name}"),
                out.holds(),
                format!("{f} over {var}, {} instances", out.instances),
            );
        }
    }
    Ok(())
}

fn rs(log: &mut Log) -> Result<(), Failure> {
    let p = PowerSet::new(3)?;
    let family = complete_regular_family(&p)?;
    log.push("complete family size", family.len() == 512, format!("{} entries", family.len()));
    for avoid in (0..8u32).filter(|a| *a != 7) {
        let u = rs_construct(&p, &family, &avoid, usize::MAX, DEFAULT_BUDGET)?;
        let m = u.membership(&p);
        let ultra = is_ultrafilter(&p, &m)?;
        let excluded = !m.contains(&avoid);
        let compatible = family.iter().filter(|e| check_f_compatible(&m, e, 0) == Verdict::Compatible).count();
        log.push(
            format!("powerset(3) avoiding {}", p.show(&avoid)),
            ultra && excluded && compatible == family.len(),
            format!(
                "generated by {}, ultrafilter {ultra}, avoided {excluded}, {compatible}/{} compatible",
                p.show(u.last()),
                family.len()
            ),
        );
    }
    let atoms = FinCof::atoms_entry();
    let u = rs_construct(&FinCof, std::slice::from_ref(&atoms), &FinCof.zero(), 0, DEFAULT_BUDGET)?;
    let principal = matches!(u.steps.first(), Some(Step::Witness { .. }))
        && matches!(u.last(), FinCofSet::Finite(s) if s.len() == 1);
    let own = check_f_compatible(&u.membership(&FinCof), &atoms, 10);
    log.push(
        "fincof atoms entry",
        principal && own == Verdict::Compatible,
        format!("decided by the principal ultrafilter at {}, verdict {own:?}", u.last()),
    );
    let cof = check_f_compatible(&CofiniteFilter, &atoms, 10);
    log.push(
        "cofinite ultrafilter against atoms",
        cof == Verdict::Incompatible { witness: None },
        format!("verdict {cof:?}"),
    );
    Ok(())
}

pub const MUTATIONS: usize = 500;

fn kernel_for(e: &Entry) -> Result<Box<dyn ThetaFamily>, Failure> {
    load_theta(e.theta(), &e.file.signature)
}

fn kernel(log: &mut Log, rng: &mut Rand) -> Result<(), Failure> {
    let entries = corpus();
    let omega = entries.iter().filter(|e| uses_omega(&e.file.proof)).count();
    log.push(
        "corpus size",
        entries.len() >= 20 && omega >= 3,
        format!("{} proofs, {omega} with the omega rule", entries.len()),
    );
    let fams = entries.iter().map(kernel_for).collect::<Result<Vec<_>, _>>()?;
    for (e, fam) in entries.iter().zip(&fams) {
        let k = Kernel::new(fam.as_ref());
        let p = &e.file.proof;
        let verdict = check_proof(&k, p).map_err(|r| r.to_string()).and_then(|()| {
            p.templates
                .iter()
                .try_for_each(|t| spot_check_template(&k, &p.sigma, t, 5).map(|_| ()))
                .map_err(|r| r.to_string())
        });
        let unused = unused_lines(p);
        log.push(
            format!("accepts {}", e.name),
            verdict.is_ok() && unused.is_empty(),
            match verdict {
                Err(r) => r,
                Ok(()) if !unused.is_empty() => format!("uncited lines {unused:?}"),
                Ok(()) => format!("{} lines, {} templates", p.lines.len(), p.templates.len()),
            },
        );
    }
    let (mut rejected, mut equivalent, mut missed) = (0, 0, Vec::new());
    for _ in 0..MUTATIONS {
        let i = rng.gen_range(0..entries.len());
        let k = Kernel::new(fams[i].as_ref());
        let mut p = entries[i].file.proof.clone();
        let slots = p.lines.len() + p.templates.iter().map(|t| t.lines.len()).sum::<usize>();
        let mut j = rng.gen_range(0..slots);
        let line = if j < p.lines.len() {
            &mut p.lines[j]
        } else {
            j -= p.lines.len();
            let t = p
                .templates
                .iter_mut()
                .find(|t| {
                    let here = j < t.lines.len();
                    if !here {
                        j -= t.lines.len();
                    }
                    here
                })
                .expect("slot in range");
            &mut t.lines[j]
        };
        let before = line.formula.normalize();
        line.formula = flip_atom(rng, &line.formula);
        let after = line.formula.clone();
        if alpha_eq(&before, &after.normalize()) {
            equivalent += 1;
        } else if check_proof(&k, &p).is_err() {
            rejected += 1;
        } else {
            missed.push(format!("{}: {after}", entries[i].name));
        }
    }
    log.push(
        "atom-flip mutations",
        missed.is_empty(),
        format!(
            "{rejected} rejected, {equivalent} equivalent, {} accepted{}",
            missed.len(),
            missed.first().map(|m| format!(" (first: {m})")).unwrap_or_default()
        ),
    );
    for (e, fam) in entries.iter().zip(&fams) {
        let k = Kernel::new(fam.as_ref());
        for (j, phi) in e.file.proof.sigma.iter().enumerate() {
            let verdict = apply_deduction(&k, &e.file.proof, phi)
                .map_err(|d| d.to_string())
                .and_then(|d| {
                    check_proof(&k, &d).map_err(|r| r.to_string())?;
                    for t in &d.templates {
                        spot_check_template(&k, &d.sigma, t, 3).map_err(|r| r.to_string())?;
                    }
                    Ok(d.lines.len())
                });
            log.push(
                format!("deduction {} premise {}", e.name, j + 1),
                verdict.is_ok(),
                match verdict {
                    Ok(n) => format!("{n} lines accepted"),
                    Err(r) => r,
                },
            );
        }
    }
    Ok(())
}

/// A relation family merged from several per-arity families.
pub fn merge(parts: impl IntoIterator<Item = DefinableFamily>, domain: u32) -> DefinableFamily {
    let mut out = DefinableFamily::new(domain);
    for part in parts {
        for a in part.arities().collect::<Vec<_>>() {
            for (r, prov) in part.entries(a) {
                out.insert(r.clone(), prov.clone());
            }
        }
    }
    out
}
