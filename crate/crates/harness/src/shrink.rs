//! Greedy counterexample minimisation.
//!
//! A candidate replaces one subexpression by `bot`, the canonical inhabitant
//! of a small type, or one of its own children. Candidates are kept only if
//! they still typecheck against the original classifier and still fail.

use phoml_core::typeck::Checker;
use phoml_core::{canonical_inhabitant, Expr, Path, Proof, Term, Type};
use std::sync::Arc;

use crate::gen::Typed;

/// Upper bound on accepted shrink steps.
pub const MAX_STEPS: usize = 200;

fn small_terms() -> Vec<Term> {
    let o = Type::Omega;
    vec![
        Term::Bot,
        canonical_inhabitant(&Type::arrow(o.clone(), o.clone())),
        canonical_inhabitant(&Type::arrow(o.clone(), Type::arrow(o.clone(), o))),
    ]
}

fn terms(t: &Term) -> Vec<Term> {
    let mut out = small_terms();
    match t {
        Term::Var(_) | Term::Bot => {}
        Term::Imp(a, b) => {
            out.push((**a).clone());
            out.push((**b).clone());
            out.extend(
                terms(a)
                    .into_iter()
                    .map(|a| Term::Imp(Arc::new(a), b.clone())),
            );
            out.extend(
                terms(b)
                    .into_iter()
                    .map(|b| Term::Imp(a.clone(), Arc::new(b))),
            );
        }
        Term::Lam(h, ty, body) => {
            out.push((**body).clone());
            out.extend(
                terms(body)
                    .into_iter()
                    .map(|b| Term::Lam(h.clone(), ty.clone(), Arc::new(b))),
            );
        }
        Term::App(f, a) => {
            out.push((**f).clone());
            out.push((**a).clone());
            out.extend(
                terms(f)
                    .into_iter()
                    .map(|f| Term::App(Arc::new(f), a.clone())),
            );
            out.extend(
                terms(a)
                    .into_iter()
                    .map(|a| Term::App(f.clone(), Arc::new(a))),
            );
        }
    }
    out.retain(|c| c != t);
    out
}

fn proofs(d: &Proof) -> Vec<Proof> {
    let mut out = Vec::new();
    match d {
        Proof::Var(_) => {}
        Proof::Lam(h, ann, body) => {
            out.push((**body).clone());
            out.extend(
                terms(ann)
                    .into_iter()
                    .map(|a| Proof::Lam(h.clone(), a, body.clone())),
            );
            out.extend(
                proofs(body)
                    .into_iter()
                    .map(|b| Proof::Lam(h.clone(), ann.clone(), Arc::new(b))),
            );
        }
        Proof::App(f, a) => {
            out.push((**f).clone());
            out.push((**a).clone());
            out.extend(
                proofs(f)
                    .into_iter()
                    .map(|f| Proof::App(Arc::new(f), a.clone())),
            );
            out.extend(
                proofs(a)
                    .into_iter()
                    .map(|a| Proof::App(f.clone(), Arc::new(a))),
            );
        }
        Proof::Plus(p) => out.extend(paths(p).into_iter().map(|p| Proof::Plus(Arc::new(p)))),
        Proof::Minus(p) => out.extend(paths(p).into_iter().map(|p| Proof::Minus(Arc::new(p)))),
    }
    out
}

fn paths(p: &Path) -> Vec<Path> {
    let mut out = Vec::new();
    match p {
        Path::Var(_) => {}
        Path::Ref(m) => out.extend(terms(m).into_iter().map(Path::Ref)),
        Path::ImpStar(a, b) => {
            out.extend(
                paths(a)
                    .into_iter()
                    .map(|a| Path::ImpStar(Arc::new(a), b.clone())),
            );
            out.extend(
                paths(b)
                    .into_iter()
                    .map(|b| Path::ImpStar(a.clone(), Arc::new(b))),
            );
        }
        Path::Univ(a, b, d, e) => {
            out.extend(
                terms(a)
                    .into_iter()
                    .map(|a| Path::Univ(a, b.clone(), d.clone(), e.clone())),
            );
            out.extend(
                terms(b)
                    .into_iter()
                    .map(|b| Path::Univ(a.clone(), b, d.clone(), e.clone())),
            );
            out.extend(
                proofs(d)
                    .into_iter()
                    .map(|d| Path::Univ(a.clone(), b.clone(), Arc::new(d), e.clone())),
            );
            out.extend(
                proofs(e)
                    .into_iter()
                    .map(|e| Path::Univ(a.clone(), b.clone(), d.clone(), Arc::new(e))),
            );
        }
        Path::TriLam(h, ty, body) => {
            out.extend(
                paths(body)
                    .into_iter()
                    .map(|b| Path::TriLam(h.clone(), ty.clone(), Arc::new(b))),
            );
        }
        Path::App(f, l, r, q) => {
            out.push((**f).clone());
            out.push((**q).clone());
            out.push(Path::Ref(l.clone()));
            out.extend(
                paths(f)
                    .into_iter()
                    .map(|f| Path::App(Arc::new(f), l.clone(), r.clone(), q.clone())),
            );
            out.extend(
                terms(l)
                    .into_iter()
                    .map(|l| Path::App(f.clone(), l, r.clone(), q.clone())),
            );
            out.extend(
                terms(r)
                    .into_iter()
                    .map(|r| Path::App(f.clone(), l.clone(), r, q.clone())),
            );
            out.extend(
                paths(q)
                    .into_iter()
                    .map(|q| Path::App(f.clone(), l.clone(), r.clone(), Arc::new(q))),
            );
        }
    }
    out
}

/// One-step shrink candidates, smallest first, all locally closed.
pub fn candidates(e: &Expr) -> Vec<Expr> {
    let mut out: Vec<Expr> = match e {
        Expr::Term(t) => terms(t).into_iter().map(Expr::Term).collect(),
        Expr::Proof(d) => proofs(d).into_iter().map(Expr::Proof).collect(),
        Expr::Path(p) => paths(p).into_iter().map(Expr::Path).collect(),
        Expr::Type(_) | Expr::Equation(_) => Vec::new(),
    };
    out.retain(|c| c.size() < e.size() && locally_closed(c));
    out.sort_by_key(Expr::size);
    out.dedup();
    out
}

fn locally_closed(e: &Expr) -> bool {
    match e {
        Expr::Term(t) => t.is_locally_closed(),
        Expr::Proof(d) => d.is_locally_closed(),
        Expr::Path(p) => p.is_locally_closed(),
        Expr::Type(_) => true,
        Expr::Equation(eq) => eq.is_locally_closed(),
    }
}

/// Shrinks `case` while `fails` holds, keeping it typed against its
/// classifier.
pub fn shrink(case: &Typed, checker: &Checker, mut fails: impl FnMut(&Typed) -> bool) -> Typed {
    let mut current = case.clone();
    for _ in 0..MAX_STEPS {
        let next = candidates(&current.expr).into_iter().find_map(|expr| {
            let t = Typed {
                expr,
                ..current.clone()
            };
            (checker.check(&t.ctx, &t.expr, &t.classifier).is_ok() && fails(&t)).then_some(t)
        });
        match next {
            Some(t) => current = t,
            None => break,
        }
    }
    current
}

/// Shrinks an untyped expression while `fails` holds.
pub fn shrink_untyped(e: &Expr, mut fails: impl FnMut(&Expr) -> bool) -> Expr {
    let mut current = e.clone();
    for _ in 0..MAX_STEPS {
        match candidates(&current).into_iter().find(|c| fails(c)) {
            Some(c) => current = c,
            None => break,
        }
    }
    current
}
