//! Call-by-name reduction.
//!
//! Reduction never goes under a binder, and never into an argument. The
//! only positions are the heads of the three applications, both operands of
//! `=>` and `=>*`, the path under `^+`/`^-`, and the term `M` of a head
//! `ref(M)` in `ref(M) @[N, N'] P`.

use std::collections::VecDeque;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::subst::{path_subst, PathSubstitution};
use crate::syntax::{Canonicity, Expr, Hint, Name, Path, Proof, Term, Var};

pub const DEFAULT_FUEL: usize = 10_000;
pub const PROPERTY_FUEL: usize = 1_000;
pub const JOIN_DEPTH: usize = 8;
pub const JOIN_CAP: usize = 10_000;

/// The top-level redex rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Beta,
    BetaProof,
    RefPlus,
    RefMinus,
    UnivPlus,
    UnivMinus,
    BetaTri,
    RefLamApp,
    ImpStarRefRef,
    ImpStarRefUniv,
    ImpStarUnivRef,
    ImpStarUnivUniv,
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::Beta,
        Rule::BetaProof,
        Rule::RefPlus,
        Rule::RefMinus,
        Rule::UnivPlus,
        Rule::UnivMinus,
        Rule::BetaTri,
        Rule::RefLamApp,
        Rule::ImpStarRefRef,
        Rule::ImpStarRefUniv,
        Rule::ImpStarUnivRef,
        Rule::ImpStarUnivUniv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Beta => "beta",
            Rule::BetaProof => "beta-proof",
            Rule::RefPlus => "ref-plus",
            Rule::RefMinus => "ref-minus",
            Rule::UnivPlus => "univ-plus",
            Rule::UnivMinus => "univ-minus",
            Rule::BetaTri => "beta-tri",
            Rule::RefLamApp => "ref-lam-app",
            Rule::ImpStarRefRef => "impstar-ref-ref",
            Rule::ImpStarRefUniv => "impstar-ref-univ",
            Rule::ImpStarUnivRef => "impstar-univ-ref",
            Rule::ImpStarUnivUniv => "impstar-univ-univ",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A congruence position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cong {
    AppFun,
    ImpLeft,
    ImpRight,
    PAppFun,
    Plus,
    Minus,
    PathAppFun,
    RefTerm,
    ImpStarLeft,
    ImpStarRight,
}

impl Cong {
    pub fn name(self) -> &'static str {
        match self {
            Cong::AppFun => "cong-app-fun",
            Cong::ImpLeft => "cong-imp-left",
            Cong::ImpRight => "cong-imp-right",
            Cong::PAppFun => "cong-papp-fun",
            Cong::Plus => "cong-plus",
            Cong::Minus => "cong-minus",
            Cong::PathAppFun => "cong-pathapp-fun",
            Cong::RefTerm => "cong-ref-term",
            Cong::ImpStarLeft => "cong-impstar-left",
            Cong::ImpStarRight => "cong-impstar-right",
        }
    }
}

/// Where a redex sits: the congruences crossed from the root, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Position(pub Vec<Cong>);

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("top");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            f.write_str(c.name())?;
        }
        Ok(())
    }
}

/// One reduction step: the contracted rule, its position and the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step<T> {
    pub result: T,
    pub rule: Rule,
    pub position: Position,
}

impl<T> Step<T> {
    fn top(result: T, rule: Rule) -> Step<T> {
        Step {
            result,
            rule,
            position: Position::default(),
        }
    }

    fn under<U>(self, cong: Cong, wrap: impl FnOnce(T) -> U) -> Step<U> {
        let mut position = self.position.0;
        position.insert(0, cong);
        Step {
            result: wrap(self.result),
            rule: self.rule,
            position: Position(position),
        }
    }
}

fn proof_bound(i: usize) -> Proof {
    Proof::Var(Var::Bound(i))
}

/// `\p:p_ann. \q:q_ann. body` where `body` refers to `p` as index 1 and `q` as
/// index 0.
fn lam_pq(p_ann: Term, q_ann: Term, body: Proof) -> Proof {
    Proof::Lam(
        Hint::new("p"),
        p_ann,
        Arc::new(Proof::Lam(Hint::new("q"), q_ann, Arc::new(body))),
    )
}

fn papp(f: Proof, a: Proof) -> Proof {
    Proof::app(f, a)
}

/// The contractum of a term redex at the root.
pub fn contract_term(t: &Term) -> Option<(Term, Rule)> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(_, _, body) => Some((Term::instantiate(body, a), Rule::Beta)),
            _ => None,
        },
        _ => None,
    }
}

/// The contractum of a proof redex at the root.
pub fn contract_proof(d: &Proof) -> Option<(Proof, Rule)> {
    match d {
        Proof::App(f, a) => match &**f {
            Proof::Lam(_, _, body) => Some((Proof::instantiate(body, a), Rule::BetaProof)),
            _ => None,
        },
        Proof::Plus(p) | Proof::Minus(p) => {
            let plus = matches!(d, Proof::Plus(_));
            match &**p {
                Path::Ref(phi) => {
                    let id = Proof::Lam(Hint::new("p"), phi.clone(), Arc::new(proof_bound(0)));
                    Some((id, if plus { Rule::RefPlus } else { Rule::RefMinus }))
                }
                Path::Univ(_, _, fwd, bwd) => Some(if plus {
                    ((**fwd).clone(), Rule::UnivPlus)
                } else {
                    ((**bwd).clone(), Rule::UnivMinus)
                }),
                _ => None,
            }
        }
        _ => None,
    }
}

/// The contractum of a path redex at the root.
pub fn contract_path(p: &Path) -> Option<(Path, Rule)> {
    match p {
        Path::App(f, n, n2, q) => match &**f {
            Path::TriLam(_, _, body) => Some((Path::instantiate(body, n, n2, q), Rule::BetaTri)),
            Path::Ref(Term::Lam(_, _, body)) => {
                let x = Name::internal();
                let body = Term::instantiate(body, &Term::Var(Var::Free(x.clone())));
                let tau = PathSubstitution::new().with(x, (**q).clone(), n.clone(), n2.clone());
                Some((path_subst(&body, &tau), Rule::RefLamApp))
            }
            _ => None,
        },
        Path::ImpStar(l, r) => contract_imp_star(l, r),
        _ => None,
    }
}

fn contract_imp_star(l: &Path, r: &Path) -> Option<(Path, Rule)> {
    let imp = |a: &Term, b: &Term| Term::imp(a.clone(), b.clone());
    // p q
    let pq = || papp(proof_bound(1), proof_bound(0));
    match (l, r) {
        (Path::Ref(phi), Path::Ref(psi)) => Some((Path::Ref(imp(phi, psi)), Rule::ImpStarRefRef)),
        (Path::Ref(phi), Path::Univ(psi, chi, d, e)) => {
            let fwd = lam_pq(imp(phi, psi), phi.clone(), papp((**d).clone(), pq()));
            let bwd = lam_pq(imp(phi, chi), phi.clone(), papp((**e).clone(), pq()));
            Some((
                Path::univ(imp(phi, psi), imp(phi, chi), fwd, bwd),
                Rule::ImpStarRefUniv,
            ))
        }
        (Path::Univ(phi, psi, d, e), Path::Ref(chi)) => {
            // p (e q), p (d q)
            let fwd = lam_pq(
                imp(phi, chi),
                psi.clone(),
                papp(proof_bound(1), papp((**e).clone(), proof_bound(0))),
            );
            let bwd = lam_pq(
                imp(psi, chi),
                phi.clone(),
                papp(proof_bound(1), papp((**d).clone(), proof_bound(0))),
            );
            Some((
                Path::univ(imp(phi, chi), imp(psi, chi), fwd, bwd),
                Rule::ImpStarUnivRef,
            ))
        }
        (Path::Univ(phi, psi, d, e), Path::Univ(phi2, psi2, d2, e2)) => {
            // d' (p (e q)), e' (p (d q))
            let fwd = lam_pq(
                imp(phi, phi2),
                psi.clone(),
                papp(
                    (**d2).clone(),
                    papp(proof_bound(1), papp((**e).clone(), proof_bound(0))),
                ),
            );
            let bwd = lam_pq(
                imp(psi, psi2),
                phi.clone(),
                papp(
                    (**e2).clone(),
                    papp(proof_bound(1), papp((**d).clone(), proof_bound(0))),
                ),
            );
            Some((
                Path::univ(imp(phi, phi2), imp(psi, psi2), fwd, bwd),
                Rule::ImpStarUnivUniv,
            ))
        }
        _ => None,
    }
}

/// Expressions of a class closed under reduction.
pub trait Reducible: Clone + Eq + Hash + Sized {
    /// Every one-step reduct, one entry per redex occurrence.
    fn step_all(&self) -> Vec<Step<Self>>;

    /// The step chosen by the deterministic strategy: a root redex first,
    /// otherwise the head position, with `=>` and `=>*` reducing their left
    /// operand before their right.
    fn step_cbn(&self) -> Option<Step<Self>>;

    fn into_expr(self) -> Expr;

    /// The set of one-step reducts up to α.
    fn reducts(&self) -> IndexSet<Self> {
        self.step_all().into_iter().map(|s| s.result).collect()
    }

    fn is_normal(&self) -> bool {
        self.step_cbn().is_none()
    }
}

impl Reducible for Term {
    fn step_all(&self) -> Vec<Step<Term>> {
        let mut out = Vec::new();
        if let Some((t, rule)) = contract_term(self) {
            out.push(Step::top(t, rule));
        }
        match self {
            Term::App(f, a) => {
                for s in f.step_all() {
                    out.push(s.under(Cong::AppFun, |f| Term::App(Arc::new(f), a.clone())));
                }
            }
            Term::Imp(a, b) => {
                for s in a.step_all() {
                    out.push(s.under(Cong::ImpLeft, |a| Term::Imp(Arc::new(a), b.clone())));
                }
                for s in b.step_all() {
                    out.push(s.under(Cong::ImpRight, |b| Term::Imp(a.clone(), Arc::new(b))));
                }
            }
            _ => {}
        }
        out
    }

    fn step_cbn(&self) -> Option<Step<Term>> {
        if let Some((t, rule)) = contract_term(self) {
            return Some(Step::top(t, rule));
        }
        match self {
            Term::App(f, a) => f
                .step_cbn()
                .map(|s| s.under(Cong::AppFun, |f| Term::App(Arc::new(f), a.clone()))),
            Term::Imp(a, b) => match a.step_cbn() {
                Some(s) => Some(s.under(Cong::ImpLeft, |a| Term::Imp(Arc::new(a), b.clone()))),
                None => b
                    .step_cbn()
                    .map(|s| s.under(Cong::ImpRight, |b| Term::Imp(a.clone(), Arc::new(b)))),
            },
            _ => None,
        }
    }

    fn into_expr(self) -> Expr {
        Expr::Term(self)
    }
}

impl Reducible for Proof {
    fn step_all(&self) -> Vec<Step<Proof>> {
        let mut out = Vec::new();
        if let Some((t, rule)) = contract_proof(self) {
            out.push(Step::top(t, rule));
        }
        match self {
            Proof::App(f, a) => {
                for s in f.step_all() {
                    out.push(s.under(Cong::PAppFun, |f| Proof::App(Arc::new(f), a.clone())));
                }
            }
            Proof::Plus(p) => {
                for s in p.step_all() {
                    out.push(s.under(Cong::Plus, Proof::plus));
                }
            }
            Proof::Minus(p) => {
                for s in p.step_all() {
                    out.push(s.under(Cong::Minus, Proof::minus));
                }
            }
            _ => {}
        }
        out
    }

    fn step_cbn(&self) -> Option<Step<Proof>> {
        if let Some((t, rule)) = contract_proof(self) {
            return Some(Step::top(t, rule));
        }
        match self {
            Proof::App(f, a) => f
                .step_cbn()
                .map(|s| s.under(Cong::PAppFun, |f| Proof::App(Arc::new(f), a.clone()))),
            Proof::Plus(p) => p.step_cbn().map(|s| s.under(Cong::Plus, Proof::plus)),
            Proof::Minus(p) => p.step_cbn().map(|s| s.under(Cong::Minus, Proof::minus)),
            _ => None,
        }
    }

    fn into_expr(self) -> Expr {
        Expr::Proof(self)
    }
}

fn rebuild_path_app(f: Path, p: &Path) -> Path {
    match p {
        Path::App(_, n, n2, q) => Path::App(Arc::new(f), n.clone(), n2.clone(), q.clone()),
        _ => unreachable!(),
    }
}

impl Reducible for Path {
    fn step_all(&self) -> Vec<Step<Path>> {
        let mut out = Vec::new();
        if let Some((t, rule)) = contract_path(self) {
            out.push(Step::top(t, rule));
        }
        match self {
            Path::App(f, ..) => {
                for s in f.step_all() {
                    out.push(s.under(Cong::PathAppFun, |f| rebuild_path_app(f, self)));
                }
                if let Path::Ref(m) = &**f {
                    for s in m.step_all() {
                        out.push(s.under(Cong::RefTerm, |m| rebuild_path_app(Path::Ref(m), self)));
                    }
                }
            }
            Path::ImpStar(a, b) => {
                for s in a.step_all() {
                    out.push(s.under(Cong::ImpStarLeft, |a| Path::ImpStar(Arc::new(a), b.clone())));
                }
                for s in b.step_all() {
                    out.push(s.under(Cong::ImpStarRight, |b| {
                        Path::ImpStar(a.clone(), Arc::new(b))
                    }));
                }
            }
            _ => {}
        }
        out
    }

    fn step_cbn(&self) -> Option<Step<Path>> {
        if let Some((t, rule)) = contract_path(self) {
            return Some(Step::top(t, rule));
        }
        match self {
            Path::App(f, ..) => {
                if let Some(s) = f.step_cbn() {
                    return Some(s.under(Cong::PathAppFun, |f| rebuild_path_app(f, self)));
                }
                match &**f {
                    Path::Ref(m) => m
                        .step_cbn()
                        .map(|s| s.under(Cong::RefTerm, |m| rebuild_path_app(Path::Ref(m), self))),
                    _ => None,
                }
            }
            Path::ImpStar(a, b) => match a.step_cbn() {
                Some(s) => {
                    Some(s.under(Cong::ImpStarLeft, |a| Path::ImpStar(Arc::new(a), b.clone())))
                }
                None => b.step_cbn().map(|s| {
                    s.under(Cong::ImpStarRight, |b| {
                        Path::ImpStar(a.clone(), Arc::new(b))
                    })
                }),
            },
            _ => None,
        }
    }

    fn into_expr(self) -> Expr {
        Expr::Path(self)
    }
}

impl Reducible for Expr {
    fn step_all(&self) -> Vec<Step<Expr>> {
        fn lift<T: Reducible>(steps: Vec<Step<T>>) -> Vec<Step<Expr>> {
            steps
                .into_iter()
                .map(|s| Step {
                    result: s.result.into_expr(),
                    rule: s.rule,
                    position: s.position,
                })
                .collect()
        }
        match self {
            Expr::Term(t) => lift(t.step_all()),
            Expr::Proof(t) => lift(t.step_all()),
            Expr::Path(t) => lift(t.step_all()),
            Expr::Type(_) | Expr::Equation(_) => Vec::new(),
        }
    }

    fn step_cbn(&self) -> Option<Step<Expr>> {
        fn lift<T: Reducible>(s: Option<Step<T>>) -> Option<Step<Expr>> {
            s.map(|s| Step {
                result: s.result.into_expr(),
                rule: s.rule,
                position: s.position,
            })
        }
        match self {
            Expr::Term(t) => lift(t.step_cbn()),
            Expr::Proof(t) => lift(t.step_cbn()),
            Expr::Path(t) => lift(t.step_cbn()),
            Expr::Type(_) | Expr::Equation(_) => None,
        }
    }

    fn into_expr(self) -> Expr {
        self
    }
}

pub fn step_all<T: Reducible>(e: &T) -> Vec<Step<T>> {
    e.step_all()
}

pub fn step_cbn<T: Reducible>(e: &T) -> Option<Step<T>> {
    e.step_cbn()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    NormalCanonical,
    NormalNeutral,
    NormalOther,
    FuelExhausted,
}

impl Status {
    pub fn is_normal(self) -> bool {
        self != Status::FuelExhausted
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::NormalCanonical => "Normal-Canonical",
            Status::NormalNeutral => "Normal-Neutral",
            Status::NormalOther => "Normal-Other",
            Status::FuelExhausted => "FuelExhausted",
        }
    }

    fn of_normal(e: &Expr) -> Status {
        if e.classify_canonical() != Canonicity::NotCanonical {
            Status::NormalCanonical
        } else if e.is_neutral() {
            Status::NormalNeutral
        } else {
            Status::NormalOther
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutcome<T> {
    pub result: T,
    pub steps: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry<T> {
    pub rule: Rule,
    pub position: Position,
    pub after: T,
}

pub type Trace<T> = Vec<TraceEntry<T>>;

/// Iterates [`Reducible::step_cbn`] at most `fuel` times.
pub fn reduce<T: Reducible>(e: &T, fuel: usize) -> ReductionOutcome<T> {
    run(e, fuel, |_| {})
}

pub fn reduce_traced<T: Reducible>(e: &T, fuel: usize) -> (ReductionOutcome<T>, Trace<T>) {
    let mut trace = Vec::new();
    let outcome = run(e, fuel, |s: &Step<T>| {
        trace.push(TraceEntry {
            rule: s.rule,
            position: s.position.clone(),
            after: s.result.clone(),
        })
    });
    (outcome, trace)
}

fn run<T: Reducible>(e: &T, fuel: usize, mut on_step: impl FnMut(&Step<T>)) -> ReductionOutcome<T> {
    let mut current = e.clone();
    let mut steps = 0;
    loop {
        let Some(step) = current.step_cbn() else {
            let status = Status::of_normal(&current.clone().into_expr());
            return ReductionOutcome {
                result: current,
                steps,
                status,
            };
        };
        if steps == fuel {
            return ReductionOutcome {
                result: current,
                steps,
                status: Status::FuelExhausted,
            };
        }
        on_step(&step);
        current = step.result;
        steps += 1;
    }
}

pub fn normalize_term(m: &Term, fuel: usize) -> ReductionOutcome<Term> {
    reduce(m, fuel)
}

/// Conversion could not be decided within the fuel budget.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("conversion is indeterminate: normalisation ran out of fuel")]
pub struct Indeterminate;

/// `M ≃ N`, decided by normalising both sides and comparing up to α.
pub fn convertible(m: &Term, n: &Term, fuel: usize) -> Result<bool, Indeterminate> {
    let nm = normalize_term(m, fuel);
    if !nm.status.is_normal() {
        return Err(Indeterminate);
    }
    let nn = if n == m {
        nm.clone()
    } else {
        normalize_term(n, fuel)
    };
    if !nn.status.is_normal() {
        return Err(Indeterminate);
    }
    Ok(nm.result == nn.result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Joinability {
    Joined,
    /// Both reduction graphs were explored completely without meeting.
    Disjoint,
    /// The depth or node budget ran out first.
    Unknown,
}

/// Breadth-first search for a common reduct of `a` and `b` within `depth`
/// steps from each side, visiting at most `cap` expressions in total.
pub fn joinable<T: Reducible>(a: &T, b: &T, depth: usize, cap: usize) -> Joinability {
    if a == b {
        return Joinability::Joined;
    }
    let mut seen = [IndexSet::new(), IndexSet::new()];
    let mut frontier = [vec![a.clone()], vec![b.clone()]];
    seen[0].insert(a.clone());
    seen[1].insert(b.clone());
    for _ in 0..depth {
        let mut progressed = false;
        for side in 0..2 {
            let mut next = Vec::new();
            for e in &frontier[side] {
                for r in e.reducts() {
                    if seen[1 - side].contains(&r) {
                        return Joinability::Joined;
                    }
                    if seen[side].insert(r.clone()) {
                        next.push(r);
                    }
                }
            }
            progressed |= !next.is_empty();
            frontier[side] = next;
            if seen[0].len() + seen[1].len() > cap {
                return Joinability::Unknown;
            }
        }
        if !progressed {
            return Joinability::Disjoint;
        }
    }
    Joinability::Unknown
}

/// Whether `to` is reachable from `from` in at most `depth` steps.
pub fn reachable<T: Reducible>(from: &T, to: &T, depth: usize, cap: usize) -> bool {
    let mut seen = IndexSet::new();
    seen.insert(from.clone());
    let mut queue = VecDeque::from([(from.clone(), 0)]);
    while let Some((e, d)) = queue.pop_front() {
        if &e == to {
            return true;
        }
        if d == depth || seen.len() > cap {
            continue;
        }
        for r in e.reducts() {
            if seen.insert(r.clone()) {
                queue.push_back((r, d + 1));
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Type;

    fn id() -> Term {
        Term::lam("x", Type::Omega, Term::var("x"))
    }

    #[test]
    fn beta_and_congruence() {
        let t = Term::app(id(), Term::Bot);
        assert_eq!(t.reducts().into_iter().collect::<Vec<_>>(), vec![Term::Bot]);
        let imp = Term::imp(t, Term::Bot);
        let out = normalize_term(&imp, 10);
        assert_eq!(out.result, Term::imp(Term::Bot, Term::Bot));
        assert_eq!(out.status, Status::NormalCanonical);
        assert_eq!(out.steps, 1);
    }

    #[test]
    fn no_reduction_under_lambda() {
        let t = Term::lam(
            "x",
            Type::Omega,
            Term::app(Term::lam("y", Type::Omega, Term::var("y")), Term::var("x")),
        );
        assert!(t.step_all().is_empty());
        assert_eq!(convertible(&t, &id(), 10), Ok(false));
        assert!(Term::var("x").step_all().is_empty());
    }

    #[test]
    fn proof_rules() {
        let phi = Term::var("phi");
        let s = Proof::plus(Path::Ref(phi.clone())).step_cbn().unwrap();
        assert_eq!(s.rule, Rule::RefPlus);
        assert_eq!(s.result, Proof::lam("p", phi.clone(), Proof::var("p")));
        let u = Path::univ(phi, Term::var("psi"), Proof::var("d"), Proof::var("e"));
        let s = Proof::minus(u).step_cbn().unwrap();
        assert_eq!((s.result, s.rule), (Proof::var("e"), Rule::UnivMinus));
        assert!(Term::Bot.step_cbn().is_none());
    }

    #[test]
    fn impstar_ref_ref_needs_both_operands() {
        let p = Path::imp_star(Path::Ref(Term::var("phi")), Path::Ref(Term::var("psi")));
        let r: Vec<_> = p.reducts().into_iter().collect();
        assert_eq!(
            r,
            vec![Path::Ref(Term::imp(Term::var("phi"), Term::var("psi")))]
        );
        let blocked = Path::imp_star(Path::Ref(Term::var("phi")), Path::var("e"));
        assert!(blocked.step_all().is_empty());
    }

    #[test]
    fn ref_lam_app_note_example() {
        let r = Path::app(
            Path::Ref(Term::lam("y", Type::Omega, Term::var("y'"))),
            Term::Bot,
            Term::Bot,
            Path::Ref(Term::Bot),
        );
        assert!(r.reducts().contains(&Path::Ref(Term::var("y'"))));
    }

    #[test]
    fn ref_term_congruence() {
        let m = Term::app(
            Term::lam("f", Type::arrow(Type::Omega, Type::Omega), Term::var("f")),
            id(),
        );
        let p = Path::app(Path::Ref(m), Term::Bot, Term::Bot, Path::Ref(Term::Bot));
        let s = p.step_cbn().unwrap();
        assert_eq!(s.position, Position(vec![Cong::RefTerm]));
        assert_eq!(s.position.to_string(), "cong-ref-term");
        let s2 = s.result.step_cbn().unwrap();
        assert_eq!(s2.rule, Rule::RefLamApp);
    }

    #[test]
    fn fuel_accounting() {
        let out = reduce(&Term::Bot, 1);
        assert_eq!(
            (out.result, out.steps, out.status),
            (Term::Bot, 0, Status::NormalCanonical)
        );
        let t = Term::app(id(), Term::app(id(), Term::Bot));
        let out = reduce(&t, 1);
        assert_eq!(out.status, Status::FuelExhausted);
        assert_eq!(out.steps, 1);
        assert_eq!(convertible(&t, &Term::Bot, 1), Err(Indeterminate));
        assert_eq!(convertible(&t, &Term::Bot, 2), Ok(true));
    }

    #[test]
    fn join_search() {
        let t = Term::imp(Term::app(id(), Term::Bot), Term::app(id(), Term::Bot));
        let rs: Vec<_> = t.reducts().into_iter().collect();
        assert_eq!(rs.len(), 2);
        assert_eq!(
            joinable(&rs[0], &rs[1], JOIN_DEPTH, JOIN_CAP),
            Joinability::Joined
        );
        assert_eq!(
            joinable(&Term::Bot, &Term::var("x"), JOIN_DEPTH, JOIN_CAP),
            Joinability::Disjoint
        );
        assert!(reachable(&t, &Term::imp(Term::Bot, Term::Bot), 2, 100));
        assert!(!reachable(&t, &Term::imp(Term::Bot, Term::Bot), 1, 100));
    }
}
