//! Executable metatheory: each registered property is a per-case predicate
//! over generated expressions.
//!
//! Case `i` of a run with base seed `s` uses the seed `case_seed(s, i)`, and
//! [`run_case`] replays any single case from its seed alone. Cases are
//! sharded across threads; the verdict does not depend on scheduling.

use std::fmt::Write as _;

use phoml_core::parallel::{check_diamond, relate_relations, REDUCT_CAP};
use phoml_core::parse::{parse_expr, Classifier, Scope};
use phoml_core::print::print;
use phoml_core::reduce::{
    joinable, reachable, reduce, Joinability, Reducible, DEFAULT_FUEL, JOIN_CAP, JOIN_DEPTH,
    PROPERTY_FUEL,
};
use phoml_core::typeck::derivation::{validate, validate_context};
use phoml_core::typeck::{Checker, Context, Entry};
use phoml_core::{
    path_subst, Equation, Expr, Name, Path, PathSubstitution, Sort, Status, Substitution, Term,
    Type,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gen::{self, GenConfig, Regime, Typed, TypedGen, UntypedGen};
use crate::shrink;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Ci,
    Full,
}

impl Profile {
    pub fn cases(self) -> usize {
        match self {
            Profile::Ci => 1_000,
            Profile::Full => 10_000,
        }
    }
}

/// Every registered property, in the order `all` runs them.
pub const PROPERTIES: &[&str] = &[
    "generator-soundness",
    "type-validity",
    "derivation-soundness",
    "subject-reduction",
    "weakening",
    "substitution",
    "typed-pathsub",
    "subst-pathsubst-i",
    "subst-pathsubst-ii",
    "resp-pathsub",
    "confluence-step",
    "diamond",
    "parallel-relations",
    "canonicity-closed",
    "weak-normalization",
    "round-trip",
];

/// Largest untyped expression in the reduction corpora.
pub const UNTYPED_MAX_SIZE: usize = 12;
/// Largest node budget given to the typed generator.
pub const TYPED_MAX_SIZE: usize = 14;
/// Reduction steps followed per subject-reduction case.
pub const SR_STEPS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub name: &'static str,
    pub cases: usize,
    /// Cases skipped because the generator gave up.
    pub discarded: usize,
    pub failures: Vec<Failure>,
}

impl PropertyVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `PROP <name> cases=<n> failures=<k>`, then `FAIL seed=<s>` per
    /// failure.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "PROP {} cases={} failures={}",
            self.name,
            self.cases,
            self.failures.len()
        )];
        out.extend(
            self.failures
                .iter()
                .map(|f| format!("FAIL seed={}", f.seed)),
        );
        out
    }
}

/// The outcome of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Discard,
    Fail(String),
}

pub fn case_seed(base: u64, index: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64)
}

/// Runs `cases` cases of a registered property.
pub fn run_property(name: &str, cases: usize, seed: u64) -> Option<PropertyVerdict> {
    let name = *PROPERTIES.iter().find(|n| **n == name)?;
    let outcomes: Vec<(u64, Outcome)> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, i);
            (s, run_case(name, s).expect("registered"))
        })
        .collect();
    let mut failures = Vec::new();
    let mut discarded = 0;
    for (seed, o) in outcomes {
        match o {
            Outcome::Pass => {}
            Outcome::Discard => discarded += 1,
            Outcome::Fail(counterexample) => failures.push(Failure {
                seed,
                counterexample,
            }),
        }
    }
    failures.sort_by_key(|f| f.seed);
    Some(PropertyVerdict {
        name,
        cases,
        discarded,
        failures,
    })
}

/// Replays one case from its seed.
pub fn run_case(name: &str, seed: u64) -> Option<Outcome> {
    let checker = Checker::new(PROPERTY_FUEL);
    let c = &checker;
    Some(match name {
        "generator-soundness" => generator_soundness(c, seed),
        "type-validity" => typed_case(c, seed, Regime::Open, type_validity),
        "derivation-soundness" => typed_case(c, seed, Regime::Open, derivation_soundness),
        "subject-reduction" => typed_case(c, seed, Regime::Open, subject_reduction),
        "weakening" => weakening(c, seed),
        "substitution" => substitution(c, seed),
        "typed-pathsub" => typed_pathsub(c, seed),
        "subst-pathsubst-i" => subst_pathsubst_i(seed),
        "subst-pathsubst-ii" => subst_pathsubst_ii(seed),
        "resp-pathsub" => resp_pathsub(seed),
        "confluence-step" => untyped_case(seed, confluence_step),
        "diamond" => untyped_case(seed, diamond),
        "parallel-relations" => untyped_case(seed, parallel_relations),
        "canonicity-closed" => canonicity(c, seed),
        "weak-normalization" => typed_case(c, seed, Regime::Open, weak_normalization),
        "round-trip" => round_trip(seed),
        _ => return None,
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn config(seed: u64) -> GenConfig {
    let mut r = rng(seed ^ 0x5EED);
    GenConfig::new(seed, r.gen_range(2..=TYPED_MAX_SIZE))
}

fn typed_sort(seed: u64, sorts: &[Sort]) -> Sort {
    sorts[(seed % sorts.len() as u64) as usize]
}

const SORTS: [Sort; 3] = [Sort::Term, Sort::Proof, Sort::Path];

fn describe(t: &Typed) -> String {
    if t.ctx.is_empty() {
        format!("|- {} : {}", t.expr, t.classifier)
    } else {
        format!("{} |- {} : {}", t.ctx, t.expr, t.classifier)
    }
}

type TypedCheck = fn(&Checker, &Typed) -> Result<(), String>;
type UntypedCheck = fn(&Expr) -> Result<(), String>;

/// Generates, checks and on failure shrinks a typed case.
fn typed_case(c: &Checker, seed: u64, regime: Regime, check: TypedCheck) -> Outcome {
    let cfg = config(seed);
    let Ok(t) = gen::typed(&cfg, typed_sort(seed, &SORTS), regime) else {
        return Outcome::Discard;
    };
    if let Err(e) = c.check(&t.ctx, &t.expr, &t.classifier) {
        return Outcome::Fail(format!("generated case ill-typed: {}: {e}", describe(&t)));
    }
    match check(c, &t) {
        Ok(()) => Outcome::Pass,
        Err(_) => {
            let small = shrink::shrink(&t, c, |s| check(c, s).is_err());
            let why = check(c, &small).err().unwrap_or_default();
            Outcome::Fail(format!("{}: {why}", describe(&small)))
        }
    }
}

/// Budgets are skewed towards the maximum, where overlapping redexes fit.
pub fn untyped_size(seed: u64) -> usize {
    let mut r = rng(seed ^ 0x517E);
    if r.gen_bool(0.8) {
        r.gen_range(UNTYPED_MAX_SIZE - 4..=UNTYPED_MAX_SIZE)
    } else {
        r.gen_range(1..=UNTYPED_MAX_SIZE)
    }
}

pub fn untyped_expr(seed: u64) -> Expr {
    gen::untyped(&GenConfig::new(seed, untyped_size(seed)))
}

fn untyped_case(seed: u64, check: UntypedCheck) -> Outcome {
    let e = untyped_expr(seed);
    match check(&e) {
        Ok(()) => Outcome::Pass,
        Err(_) => {
            let small = shrink::shrink_untyped(&e, |s| check(s).is_err());
            let why = check(&small).err().unwrap_or_default();
            Outcome::Fail(format!("{small}: {why}"))
        }
    }
}

fn generator_soundness(c: &Checker, seed: u64) -> Outcome {
    let cfg = config(seed);
    let regime = [Regime::Open, Regime::NoTermVars, Regime::Closed][(seed / 3 % 3) as usize];
    match gen::typed(&cfg, typed_sort(seed, &SORTS), regime) {
        Err(e) => Outcome::Fail(e.to_string()),
        Ok(t) => match c
            .check_context(&t.ctx)
            .and_then(|()| c.check(&t.ctx, &t.expr, &t.classifier))
        {
            Ok(()) => Outcome::Pass,
            Err(e) => Outcome::Fail(format!("{}: {e}", describe(&t))),
        },
    }
}

fn classifier_ok(c: &Checker, ctx: &Context, cl: &Classifier) -> Result<(), String> {
    match cl {
        Classifier::Type(_) => Ok(()),
        Classifier::Prop(phi) => c.check_prop(ctx, phi).map_err(|e| e.to_string()),
        Classifier::Equation(eq) => c.check_equation(ctx, eq).map_err(|e| e.to_string()),
    }
}

/// Stated and inferred classifiers are well formed, and the expression
/// checks against the one inferred for it.
fn type_validity(c: &Checker, t: &Typed) -> Result<(), String> {
    classifier_ok(c, &t.ctx, &t.classifier)
        .map_err(|e| format!("stated classifier ill-formed: {e}"))?;
    match c.infer(&t.ctx, &t.expr) {
        Ok(cl) => {
            classifier_ok(c, &t.ctx, &cl).map_err(|e| format!("inferred {cl} ill-formed: {e}"))?;
            c.check(&t.ctx, &t.expr, &cl)
                .map_err(|e| format!("does not check against inferred {cl}: {e}"))
        }
        Err(e) if e.kind == phoml_core::typeck::ErrorKind::TriLamShapeError => Ok(()),
        Err(e) => Err(format!("inference failed: {e}")),
    }
}

fn convertible(a: &Term, b: &Term) -> bool {
    phoml_core::reduce::convertible(a, b, PROPERTY_FUEL).unwrap_or(false)
}

/// Derivations of the context and the judgement replay under the
/// independent validator.
fn derivation_soundness(c: &Checker, t: &Typed) -> Result<(), String> {
    let ds = c.derive_context(&t.ctx).map_err(|e| e.to_string())?;
    validate_context(&t.ctx, &ds, PROPERTY_FUEL).map_err(|e| format!("context: {e}"))?;
    let d = match (&t.expr, &t.classifier) {
        (Expr::Term(m), _) => c.derive_type(&t.ctx, m),
        (Expr::Proof(d), Classifier::Prop(phi)) => c.derive_check_proof(&t.ctx, d, phi),
        (Expr::Path(p), Classifier::Equation(eq)) => c.derive_check_path(&t.ctx, p, eq),
        _ => return Err("sort mismatch".into()),
    }
    .map_err(|e| e.to_string())?;
    validate(&t.ctx, &d, PROPERTY_FUEL).map_err(|e| e.to_string())
}

/// Every one-step reduct along a reduction sequence keeps the classifier,
/// and the inferred classifier stays well formed.
fn subject_reduction(c: &Checker, t: &Typed) -> Result<(), String> {
    let mut cur = t.expr.clone();
    for _ in 0..SR_STEPS {
        for s in cur.step_all() {
            c.check(&t.ctx, &s.result, &t.classifier).map_err(|e| {
                format!(
                    "reduct {} ({} at {}) lost its classifier: {e}",
                    s.result, s.rule, s.position
                )
            })?;
        }
        if let Ok(cl) = c.infer(&t.ctx, &cur) {
            classifier_ok(c, &t.ctx, &cl)
                .map_err(|e| format!("{cur} infers ill-formed {cl}: {e}"))?;
        }
        match cur.step_cbn() {
            Some(s) => cur = s.result,
            None => break,
        }
    }
    Ok(())
}

fn weak_normalization(_: &Checker, t: &Typed) -> Result<(), String> {
    let o = reduce(&t.expr, DEFAULT_FUEL);
    if o.status.is_normal() {
        Ok(())
    } else {
        Err(format!("no normal form within {DEFAULT_FUEL} steps"))
    }
}

fn weakening(c: &Checker, seed: u64) -> Outcome {
    let cfg = config(seed);
    let Ok(t) = gen::typed(&cfg, typed_sort(seed, &SORTS), Regime::Open) else {
        return Outcome::Discard;
    };
    let mut r = rng(seed ^ 0x3EA4);
    let extra = r.gen_range(1..=3);
    let wider = gen::weaken(&mut r, cfg.weights, &t.ctx, extra);
    if let Err(e) = c.check_context(&wider) {
        return Outcome::Fail(format!("weakened context {wider} ill-formed: {e}"));
    }
    match c.check(&wider, &t.expr, &t.classifier) {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(format!("{} fails in {wider}: {e}", describe(&t))),
    }
}

/// Replacing a context variable by a well-typed expression of its
/// classifier preserves typing.
fn substitution(c: &Checker, seed: u64) -> Outcome {
    let cfg = config(seed);
    let Ok(t) = gen::typed(&cfg, typed_sort(seed, &SORTS), Regime::Open) else {
        return Outcome::Discard;
    };
    if t.ctx.is_empty() {
        return Outcome::Discard;
    }
    let mut r = rng(seed ^ 0x5B57);
    let i = r.gen_range(0..t.ctx.len());
    let prefix: Context = t.ctx.entries()[..i].iter().cloned().collect();
    let target = &t.ctx.entries()[i];
    let mut g = TypedGen::new(&mut r, cfg.weights, prefix.clone());
    let s = match target {
        Entry::Term(x, a) => Substitution::new().term(x.clone(), g.term(a, 4)),
        Entry::Proof(p, phi) => match g.proof(phi, 6) {
            Some(d) => Substitution::new().proof(p.clone(), d),
            None => return Outcome::Discard,
        },
        Entry::Path(e, eq) => match g.path(eq, 6) {
            Some(q) => Substitution::new().path(e.clone(), q),
            None => return Outcome::Discard,
        },
    };
    let mut ctx = prefix;
    for e in &t.ctx.entries()[i + 1..] {
        ctx.push(match e {
            Entry::Term(x, a) => Entry::Term(x.clone(), a.clone()),
            Entry::Proof(p, phi) => Entry::Proof(p.clone(), phi.subst(&s)),
            Entry::Path(p, eq) => Entry::Path(p.clone(), eq.subst(&s)),
        });
    }
    let expr = t.expr.subst(&s);
    let cl = subst_classifier(&t.classifier, &s);
    match c.check(&ctx, &expr, &cl) {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(format!(
            "{} under {s:?}: {ctx} |- {expr} : {cl}: {e}",
            describe(&t)
        )),
    }
}

fn subst_classifier(c: &Classifier, s: &Substitution) -> Classifier {
    match c {
        Classifier::Type(a) => Classifier::Type(a.clone()),
        Classifier::Prop(phi) => Classifier::Prop(phi.subst(s)),
        Classifier::Equation(eq) => Classifier::Equation(eq.subst(s)),
    }
}

/// `M{x := P : N = N'}` proves `M[x:=N] = M[x:=N']`.
fn typed_pathsub(c: &Checker, seed: u64) -> Outcome {
    let cfg = config(seed);
    let mut r = rng(seed);
    let ctx = gen::context(&mut r, cfg.weights, cfg.context_depth, Regime::Open);
    let mut g = TypedGen::new(&mut r, cfg.weights, ctx.clone());
    let b = g.random_type(1);
    let n = g.term(&b, 3);
    let n2 = if g.rng.gen_bool(0.5) {
        n.clone()
    } else {
        g.term(&b, 3)
    };
    let Some(p) = g.path(
        &Equation::new(n.clone(), b.clone(), n2.clone()),
        cfg.size / 2 + 1,
    ) else {
        return Outcome::Discard;
    };
    let x = fresh_in(&ctx, "z");
    let a = g.random_type(1);
    g.ctx.push(Entry::Term(x.clone(), b.clone()));
    let m = g.term(&a, cfg.size);
    let tau = PathSubstitution::new().with(x.clone(), p, n.clone(), n2.clone());
    let lhs = m.subst(&Substitution::new().term(x.clone(), n));
    let rhs = m.subst(&Substitution::new().term(x, n2));
    let eq = Equation::new(lhs, a, rhs);
    let q = path_subst(&m, &tau);
    match c
        .check_equation(&ctx, &eq)
        .and_then(|()| c.check_path(&ctx, &q, &eq))
    {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(format!("{ctx} |- {q} : {eq} (from {m}): {e}")),
    }
}

fn fresh_in(ctx: &Context, base: &str) -> Name {
    (0..)
        .map(|i| Name::new(format!("{base}{i}")))
        .find(|n| !ctx.declares(n))
        .expect("unbounded")
}

/// Random path substitution over the untyped pool, never binding `avoid`.
fn random_pathsub(g: &mut UntypedGen, avoid: &str, erase: Option<&Name>) -> PathSubstitution {
    let names: Vec<&str> = ["y", "f"].into_iter().filter(|n| *n != avoid).collect();
    let count = g.rng.gen_range(1..=names.len());
    let mut tau = PathSubstitution::new();
    let clean = |t: Term| match erase {
        Some(x) => t.subst(&Substitution::new().term(x.clone(), Term::Bot)),
        None => t,
    };
    let cleanp = |p: Path| match erase {
        Some(x) => p.subst(&Substitution::new().term(x.clone(), Term::Bot)),
        None => p,
    };
    for y in names.choose_multiple(g.rng, count) {
        let ps = g.rng.gen_range(1..5);
        let (ls, rs) = (g.rng.gen_range(1..4), g.rng.gen_range(1..4));
        let p = cleanp(g.path(ps));
        let (l, r) = (clean(g.term(ls)), clean(g.term(rs)));
        tau.insert(*y, p, l, r);
    }
    tau
}

/// `M[x:=N]{τ}` and `M{x := N{τ} : N[ρ] = N[σ], τ}` coincide.
fn subst_pathsubst_i(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut g = UntypedGen::new(&mut r);
    let size = g.rng.gen_range(1..=UNTYPED_MAX_SIZE);
    let m = g.term(size);
    let ns = g.rng.gen_range(1..6);
    let n = g.term(ns);
    let x = Name::new("x");
    let tau = random_pathsub(&mut g, "x", Some(&x));
    let left = path_subst(
        &m.subst(&Substitution::new().term(x.clone(), n.clone())),
        &tau,
    );
    let mut wide = tau.clone();
    wide.insert(
        x.clone(),
        path_subst(&n, &tau),
        n.subst(&tau.left_subst()),
        n.subst(&tau.right_subst()),
    );
    let right = path_subst(&m, &wide);
    if left == right {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "M = {m}, N = {n}, tau = {}: {left} vs {right}",
            show_tau(&tau)
        ))
    }
}

/// `M{τ}[x:=N]` and `M{τ[x:=N], x := ref(N) : N = N}` coincide.
fn subst_pathsubst_ii(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut g = UntypedGen::new(&mut r);
    let size = g.rng.gen_range(1..=UNTYPED_MAX_SIZE);
    let m = g.term(size);
    let ns = g.rng.gen_range(1..6);
    let n = g.term(ns);
    let x = Name::new("x");
    let tau = random_pathsub(&mut g, "x", None);
    let s = Substitution::new().term(x.clone(), n.clone());
    let left = path_subst(&m, &tau).subst(&s);
    let mut wide = tau.subst(&s);
    wide.insert(x, Path::Ref(n.clone()), n.clone(), n.clone());
    let right = path_subst(&m, &wide);
    if left == right {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "M = {m}, N = {n}, tau = {}: {left} vs {right}",
            show_tau(&tau)
        ))
    }
}

fn show_tau(tau: &PathSubstitution) -> String {
    let mut s = String::new();
    for (i, (x, b)) in tau.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x} := {} : {} = {}", b.path, b.left, b.right);
    }
    s
}

/// `M → N` implies `M{τ} ↠ N{τ}`.
fn resp_pathsub(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut g = UntypedGen::new(&mut r);
    let size = g.rng.gen_range(2..=UNTYPED_MAX_SIZE);
    let m = g.term(size);
    let tau = random_pathsub(&mut g, "", None);
    let mt = path_subst(&m, &tau);
    for n in m.reducts() {
        let nt = path_subst(&n, &tau);
        if !reachable(&mt, &nt, JOIN_DEPTH, JOIN_CAP)
            && joinable(&mt, &nt, JOIN_DEPTH, JOIN_CAP) != Joinability::Joined
        {
            return Outcome::Fail(format!(
                "{m} -> {n}, tau = {}: {mt} does not reach {nt}",
                show_tau(&tau)
            ));
        }
    }
    Outcome::Pass
}

/// Distinct one-step reducts have a common reduct within the search bound.
pub fn confluence_step(e: &Expr) -> Result<(), String> {
    let rs: Vec<Expr> = e.reducts().into_iter().collect();
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            match joinable(&rs[i], &rs[j], JOIN_DEPTH, JOIN_CAP) {
                Joinability::Joined => {}
                other => return Err(format!("{} and {} not joined ({other:?})", rs[i], rs[j])),
            }
        }
    }
    Ok(())
}

/// Any two parallel reducts meet in one further parallel step.
pub fn diamond(e: &Expr) -> Result<(), String> {
    let reports = check_diamond(e, REDUCT_CAP).map_err(|o| o.to_string())?;
    match reports.into_iter().find(|r| r.join.is_none()) {
        None => Ok(()),
        Some(r) => Err(format!(
            "{} and {} have no common parallel reduct",
            r.branch1, r.branch2
        )),
    }
}

/// One step is a parallel step, and a parallel step is a reduction sequence.
pub fn parallel_relations(e: &Expr) -> Result<(), String> {
    let r = relate_relations(e);
    if r.holds() {
        Ok(())
    } else {
        Err(format!(
            "steps not parallel: {:?}; parallel not reachable: {:?}; overflow: {}",
            r.steps_not_parallel
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            r.parallel_not_reachable
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            r.overflow
        ))
    }
}

/// Closed proofs and paths normalise to canonical forms matching their
/// classifiers; with only proof and path variables, to canonical or neutral
/// forms.
fn canonicity(c: &Checker, seed: u64) -> Outcome {
    let cfg = config(seed);
    let sort = typed_sort(seed, &[Sort::Proof, Sort::Path]);
    let check_closed = |t: &Typed| closed_canonical(c, t);
    let check_open = |t: &Typed| -> Result<(), String> {
        let o = reduce(&t.expr, DEFAULT_FUEL);
        match o.status {
            Status::NormalCanonical | Status::NormalNeutral => Ok(()),
            s => Err(format!("{s} after {} steps: {}", o.steps, o.result)),
        }
    };
    let mut discard = true;
    for (regime, check) in [
        (
            Regime::Closed,
            &check_closed as &dyn Fn(&Typed) -> Result<(), String>,
        ),
        (Regime::NoTermVars, &check_open),
    ] {
        let Ok(t) = gen::typed(&cfg, sort, regime) else {
            continue;
        };
        discard = false;
        if let Err(e) = c.check(&t.ctx, &t.expr, &t.classifier) {
            return Outcome::Fail(format!("generated case ill-typed: {}: {e}", describe(&t)));
        }
        if check(&t).is_err() {
            let small = shrink::shrink(&t, c, |s| check(s).is_err());
            let why = check(&small).err().unwrap_or_default();
            return Outcome::Fail(format!("{}: {why}", describe(&small)));
        }
    }
    if discard {
        Outcome::Discard
    } else {
        Outcome::Pass
    }
}

/// A closed case normalises to a well-typed canonical form of its
/// classifier.
pub fn closed_canonical(c: &Checker, t: &Typed) -> Result<(), String> {
    let o = reduce(&t.expr, DEFAULT_FUEL);
    if !o.status.is_normal() {
        return Err(format!("no normal form within {DEFAULT_FUEL} steps"));
    }
    c.check(&t.ctx, &o.result, &t.classifier)
        .map_err(|e| format!("normal form {} ill-typed: {e}", o.result))?;
    let bad = |what: &str| Err(format!("normal form {} is {what}", o.result));
    match (&o.result, &t.classifier) {
        (Expr::Proof(d), Classifier::Prop(phi)) => {
            let nf = phoml_core::reduce::normalize_term(phi, DEFAULT_FUEL).result;
            if !nf.is_canonical_prop() {
                return Err(format!("proposition normalises to non-canonical {nf}"));
            }
            match (d, &nf) {
                (phoml_core::Proof::Lam(_, ann, _), Term::Imp(a, _)) if convertible(ann, a) => {
                    Ok(())
                }
                (phoml_core::Proof::Lam(..), _) => bad("a lambda with the wrong annotation"),
                _ => bad("not a lambda"),
            }
        }
        (Expr::Path(p), Classifier::Equation(eq)) => match (p, &eq.ty) {
            (Path::Ref(m), _) if convertible(m, &eq.lhs) && convertible(m, &eq.rhs) => Ok(()),
            (Path::Univ(a, b, ..), Type::Omega)
                if convertible(a, &eq.lhs) && convertible(b, &eq.rhs) =>
            {
                Ok(())
            }
            (Path::TriLam(_, ann, _), Type::Arrow(dom, _)) if ann == &**dom => Ok(()),
            _ => bad("not a canonical path for its equation"),
        },
        _ => bad("of the wrong sort"),
    }
}

/// `parse(print(E))` is alpha-equal to `E`.
fn round_trip(seed: u64) -> Outcome {
    let (expr, scope) = if seed.is_multiple_of(2) {
        let scope = Scope::new()
            .with("x", Sort::Term)
            .with("y", Sort::Term)
            .with("f", Sort::Term)
            .with("p", Sort::Proof)
            .with("q", Sort::Proof)
            .with("e", Sort::Path);
        (untyped_expr(seed), scope)
    } else {
        let Ok(t) = gen::typed(&config(seed), typed_sort(seed / 2, &SORTS), Regime::Open) else {
            return Outcome::Discard;
        };
        (t.expr, Scope::from_context(&t.ctx))
    };
    let text = print(&expr);
    match parse_expr(&text, &scope) {
        Ok(back) if back == expr => Outcome::Pass,
        Ok(back) => Outcome::Fail(format!("{text} reparsed as {back}")),
        Err(e) => Outcome::Fail(format!("{text}: {e}")),
    }
}
