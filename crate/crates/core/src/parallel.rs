//! Parallel one-step reduction and the diamond property.
//!
//! Congruences follow the call-by-name relation: heads of applications, both
//! operands of `=>` and `=>*` simultaneously, the path under `^+`/`^-`, and
//! the term of a head `ref(M)` in a path application. Contraction rules take
//! their redex as is; there is no simultaneous reduction inside a contractum.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::reduce::{
    contract_path, contract_proof, contract_term, reachable, Reducible, JOIN_CAP, JOIN_DEPTH,
};
use crate::syntax::{Expr, Path, Proof, Term};

pub const REDUCT_CAP: usize = 10_000;

/// `{F : E ▷ F}`, truncated at the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelReducts<T: Hash + Eq> {
    pub reducts: IndexSet<T>,
    pub overflow: bool,
}

#[derive(Default)]
struct Memo {
    terms: HashMap<Term, Arc<IndexSet<Term>>>,
    proofs: HashMap<Proof, Arc<IndexSet<Proof>>>,
    paths: HashMap<Path, Arc<IndexSet<Path>>>,
    cap: usize,
    overflow: bool,
}

impl Memo {
    fn new(cap: usize) -> Memo {
        Memo {
            cap,
            ..Memo::default()
        }
    }

    fn push<T: Hash + Eq>(&mut self, set: &mut IndexSet<T>, t: T) {
        if set.len() >= self.cap {
            self.overflow = true;
        } else {
            set.insert(t);
        }
    }

    fn term(&mut self, t: &Term) -> Arc<IndexSet<Term>> {
        if let Some(r) = self.terms.get(t) {
            return r.clone();
        }
        let mut out = IndexSet::new();
        out.insert(t.clone());
        if let Some((c, _)) = contract_term(t) {
            self.push(&mut out, c);
        }
        match t {
            Term::App(f, a) => {
                for f2 in self.term(f).iter() {
                    self.push(&mut out, Term::App(Arc::new(f2.clone()), a.clone()));
                }
            }
            Term::Imp(a, b) => {
                let (ra, rb) = (self.term(a), self.term(b));
                for a2 in ra.iter() {
                    for b2 in rb.iter() {
                        self.push(&mut out, Term::imp(a2.clone(), b2.clone()));
                    }
                }
            }
            _ => {}
        }
        let out = Arc::new(out);
        self.terms.insert(t.clone(), out.clone());
        out
    }

    fn proof(&mut self, d: &Proof) -> Arc<IndexSet<Proof>> {
        if let Some(r) = self.proofs.get(d) {
            return r.clone();
        }
        let mut out = IndexSet::new();
        out.insert(d.clone());
        if let Some((c, _)) = contract_proof(d) {
            self.push(&mut out, c);
        }
        match d {
            Proof::App(f, a) => {
                for f2 in self.proof(f).iter() {
                    self.push(&mut out, Proof::App(Arc::new(f2.clone()), a.clone()));
                }
            }
            Proof::Plus(p) => {
                for p2 in self.path(p).iter() {
                    self.push(&mut out, Proof::plus(p2.clone()));
                }
            }
            Proof::Minus(p) => {
                for p2 in self.path(p).iter() {
                    self.push(&mut out, Proof::minus(p2.clone()));
                }
            }
            _ => {}
        }
        let out = Arc::new(out);
        self.proofs.insert(d.clone(), out.clone());
        out
    }

    fn path(&mut self, p: &Path) -> Arc<IndexSet<Path>> {
        if let Some(r) = self.paths.get(p) {
            return r.clone();
        }
        let mut out = IndexSet::new();
        out.insert(p.clone());
        if let Some((c, _)) = contract_path(p) {
            self.push(&mut out, c);
        }
        match p {
            Path::App(f, n, n2, q) => {
                for f2 in self.path(f).iter() {
                    self.push(
                        &mut out,
                        Path::App(Arc::new(f2.clone()), n.clone(), n2.clone(), q.clone()),
                    );
                }
                if let Path::Ref(m) = &**f {
                    for m2 in self.term(m).iter() {
                        let head = Arc::new(Path::Ref(m2.clone()));
                        self.push(&mut out, Path::App(head, n.clone(), n2.clone(), q.clone()));
                    }
                }
            }
            Path::ImpStar(a, b) => {
                let (ra, rb) = (self.path(a), self.path(b));
                for a2 in ra.iter() {
                    for b2 in rb.iter() {
                        self.push(&mut out, Path::imp_star(a2.clone(), b2.clone()));
                    }
                }
            }
            _ => {}
        }
        let out = Arc::new(out);
        self.paths.insert(p.clone(), out.clone());
        out
    }
}

/// Expressions of a class with a parallel reduction relation.
pub trait ParallelReducible: Reducible {
    fn parallel_reducts(&self, cap: usize) -> ParallelReducts<Self>;
}

macro_rules! parallel_class {
    ($ty:ty, $method:ident) => {
        impl ParallelReducible for $ty {
            fn parallel_reducts(&self, cap: usize) -> ParallelReducts<$ty> {
                let mut memo = Memo::new(cap.max(1));
                let reducts = memo.$method(self);
                ParallelReducts {
                    reducts: (*reducts).clone(),
                    overflow: memo.overflow,
                }
            }
        }
    };
}

parallel_class!(Term, term);
parallel_class!(Proof, proof);
parallel_class!(Path, path);

impl ParallelReducible for Expr {
    fn parallel_reducts(&self, cap: usize) -> ParallelReducts<Expr> {
        fn lift<T: ParallelReducible>(r: ParallelReducts<T>) -> ParallelReducts<Expr> {
            ParallelReducts {
                reducts: r.reducts.into_iter().map(Reducible::into_expr).collect(),
                overflow: r.overflow,
            }
        }
        match self {
            Expr::Term(t) => lift(t.parallel_reducts(cap)),
            Expr::Proof(t) => lift(t.parallel_reducts(cap)),
            Expr::Path(t) => lift(t.parallel_reducts(cap)),
            Expr::Type(_) | Expr::Equation(_) => ParallelReducts {
                reducts: IndexSet::from([self.clone()]),
                overflow: false,
            },
        }
    }
}

pub fn parallel_reducts<T: ParallelReducible>(e: &T, cap: usize) -> ParallelReducts<T> {
    e.parallel_reducts(cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Joined,
    CounterexampleCandidate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Joined => "Joined",
            Verdict::CounterexampleCandidate => "CounterexampleCandidate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondReport<T> {
    pub source: T,
    pub branch1: T,
    pub branch2: T,
    pub join: Option<T>,
    pub verdict: Verdict,
}

impl<T> DiamondReport<T> {
    /// `DIAMOND <verdict> <size> <seed>`
    pub fn line(&self, size: usize, seed: u64) -> String {
        format!("DIAMOND {} {} {}", self.verdict, size, seed)
    }
}

/// The reduct set of some expression exceeded the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parallel reduct set exceeded the cap")]
pub struct Overflow;

/// For each pair of distinct parallel reducts, a common parallel reduct.
pub fn check_diamond<T: ParallelReducible>(
    e: &T,
    cap: usize,
) -> Result<Vec<DiamondReport<T>>, Overflow> {
    let top = e.parallel_reducts(cap);
    if top.overflow {
        return Err(Overflow);
    }
    let items: Vec<T> = top.reducts.into_iter().collect();
    let mut branch_sets = Vec::with_capacity(items.len());
    for f in &items {
        let r = f.parallel_reducts(cap);
        if r.overflow {
            return Err(Overflow);
        }
        branch_sets.push(r.reducts);
    }
    let mut reports = Vec::new();
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            let join = branch_sets[i]
                .iter()
                .find(|h| branch_sets[j].contains(*h))
                .cloned();
            let verdict = if join.is_some() {
                Verdict::Joined
            } else {
                Verdict::CounterexampleCandidate
            };
            reports.push(DiamondReport {
                source: e.clone(),
                branch1: items[i].clone(),
                branch2: items[j].clone(),
                join,
                verdict,
            });
        }
    }
    Ok(reports)
}

/// Outcome of comparing `→` with `▷` on one expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport<T> {
    /// One-step reducts that are not parallel reducts.
    pub steps_not_parallel: Vec<T>,
    /// Parallel reducts not reached by a bounded `↠` search.
    pub parallel_not_reachable: Vec<T>,
    pub overflow: bool,
}

impl<T> RelationReport<T> {
    pub fn verdict(&self) -> Verdict {
        if self.steps_not_parallel.is_empty()
            && self.parallel_not_reachable.is_empty()
            && !self.overflow
        {
            Verdict::Joined
        } else {
            Verdict::CounterexampleCandidate
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict() == Verdict::Joined
    }
}

/// `→ ⊆ ▷` and `▷ ⊆ ↠` on `e`.
pub fn relate_relations<T: ParallelReducible>(e: &T) -> RelationReport<T> {
    let par = e.parallel_reducts(REDUCT_CAP);
    let steps_not_parallel = e
        .reducts()
        .into_iter()
        .filter(|f| !par.reducts.contains(f))
        .collect();
    let parallel_not_reachable = par
        .reducts
        .iter()
        .filter(|f| !reachable(e, *f, JOIN_DEPTH, JOIN_CAP))
        .cloned()
        .collect();
    RelationReport {
        steps_not_parallel,
        parallel_not_reachable,
        overflow: par.overflow,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Type;

    #[test]
    fn reflexivity_only_for_normal_forms() {
        let r = Term::Bot.parallel_reducts(REDUCT_CAP);
        assert_eq!(r.reducts.into_iter().collect::<Vec<_>>(), vec![Term::Bot]);
        assert!(check_diamond(&Term::Bot, REDUCT_CAP).unwrap().is_empty());
    }

    #[test]
    fn beta_and_impstar() {
        let t = Term::app(Term::lam("x", Type::Omega, Term::var("x")), Term::Bot);
        let r: Vec<_> = t.parallel_reducts(REDUCT_CAP).reducts.into_iter().collect();
        assert_eq!(r, vec![t.clone(), Term::Bot]);
        let p = Path::imp_star(Path::Ref(Term::var("phi")), Path::Ref(Term::var("psi")));
        let r: Vec<_> = p.parallel_reducts(REDUCT_CAP).reducts.into_iter().collect();
        assert_eq!(
            r,
            vec![
                p.clone(),
                Path::Ref(Term::imp(Term::var("phi"), Term::var("psi")))
            ]
        );
    }

    #[test]
    fn simultaneous_imp_operands() {
        let b = Term::app(Term::lam("x", Type::Omega, Term::var("x")), Term::Bot);
        let t = Term::imp(b.clone(), b);
        let r = t.parallel_reducts(REDUCT_CAP).reducts;
        assert_eq!(r.len(), 4);
        assert!(r.contains(&Term::imp(Term::Bot, Term::Bot)));
        assert!(check_diamond(&t, REDUCT_CAP)
            .unwrap()
            .iter()
            .all(|d| d.verdict == Verdict::Joined));
        assert!(relate_relations(&t).holds());
    }

    #[test]
    fn cap_sets_overflow() {
        let b = Term::app(Term::lam("x", Type::Omega, Term::var("x")), Term::Bot);
        let t = Term::imp(b.clone(), b);
        let r = t.parallel_reducts(2);
        assert!(r.overflow);
        assert_eq!(check_diamond(&t, 2), Err(Overflow));
    }
}
