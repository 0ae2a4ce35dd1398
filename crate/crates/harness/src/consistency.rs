//! Exhaustive search for closed proofs of `bot`.
//!
//! Expressions are enumerated directly in de Bruijn form, so each alpha
//! class is visited exactly once. Sub-enumerations are memoised by size and
//! binder depth.

use std::collections::HashMap;
use std::sync::Arc;

use phoml_core::reduce::{convertible, DEFAULT_FUEL};
use phoml_core::syntax::{Hint, TriHints, Var};
use phoml_core::typeck::{Checker, Context};
use phoml_core::{Path, Proof, Term, Type};
use rayon::prelude::*;

/// Largest size the search accepts.
pub const MAX_SEARCH_SIZE: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub max_size: usize,
    /// Closed proofs enumerated, by size (index 0 is size 1).
    pub enumerated: Vec<usize>,
    /// Of those, the ones with an inferable proposition.
    pub typed: usize,
    /// Proofs of a proposition convertible with `bot`.
    pub hits: Vec<Proof>,
}

impl ConsistencyReport {
    pub fn total(&self) -> usize {
        self.enumerated.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Depth {
    term: usize,
    proof: usize,
    path: usize,
}

#[derive(Default)]
struct Enumerator {
    types: HashMap<usize, Arc<Vec<Type>>>,
    terms: HashMap<(usize, usize), Arc<Vec<Term>>>,
    proofs: HashMap<(usize, Depth), Arc<Vec<Proof>>>,
    paths: HashMap<(usize, Depth), Arc<Vec<Path>>>,
}

/// Ordered compositions of `n` into `k` positive parts.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn tri_hints() -> TriHints {
    TriHints {
        e: Hint::new("e"),
        x: Hint::new("x"),
        y: Hint::new("y"),
    }
}

impl Enumerator {
    fn types(&mut self, n: usize) -> Arc<Vec<Type>> {
        if let Some(v) = self.types.get(&n) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(Type::Omega);
        }
        for c in compositions(n.saturating_sub(1), 2) {
            for a in self.types(c[0]).iter() {
                for b in self.types(c[1]).iter() {
                    out.push(Type::arrow(a.clone(), b.clone()));
                }
            }
        }
        let out = Arc::new(out);
        self.types.insert(n, out.clone());
        out
    }

    fn terms(&mut self, n: usize, dt: usize) -> Arc<Vec<Term>> {
        if let Some(v) = self.terms.get(&(n, dt)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(Term::Bot);
            out.extend((0..dt).map(|i| Term::Var(Var::Bound(i))));
        }
        for c in compositions(n.saturating_sub(1), 2) {
            let (a, b) = (self.terms(c[0], dt), self.terms(c[1], dt));
            for x in a.iter() {
                for y in b.iter() {
                    out.push(Term::imp(x.clone(), y.clone()));
                    out.push(Term::app(x.clone(), y.clone()));
                }
            }
            let (tys, bodies) = (self.types(c[0]), self.terms(c[1], dt + 1));
            for ty in tys.iter() {
                for body in bodies.iter() {
                    out.push(Term::Lam(
                        Hint::new("x"),
                        ty.clone(),
                        Arc::new(body.clone()),
                    ));
                }
            }
        }
        let out = Arc::new(out);
        self.terms.insert((n, dt), out.clone());
        out
    }

    fn proofs(&mut self, n: usize, d: Depth) -> Arc<Vec<Proof>> {
        if let Some(v) = self.proofs.get(&(n, d)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.extend((0..d.proof).map(|i| Proof::Var(Var::Bound(i))));
        }
        if n >= 2 {
            for p in self.paths(n - 1, d).iter() {
                out.push(Proof::plus(p.clone()));
                out.push(Proof::minus(p.clone()));
            }
        }
        for c in compositions(n.saturating_sub(1), 2) {
            let (f, a) = (self.proofs(c[0], d), self.proofs(c[1], d));
            for x in f.iter() {
                for y in a.iter() {
                    out.push(Proof::app(x.clone(), y.clone()));
                }
            }
            let inner = Depth {
                proof: d.proof + 1,
                ..d
            };
            let (anns, bodies) = (self.terms(c[0], d.term), self.proofs(c[1], inner));
            for ann in anns.iter() {
                for body in bodies.iter() {
                    out.push(Proof::Lam(
                        Hint::new("p"),
                        ann.clone(),
                        Arc::new(body.clone()),
                    ));
                }
            }
        }
        let out = Arc::new(out);
        self.proofs.insert((n, d), out.clone());
        out
    }

    fn paths(&mut self, n: usize, d: Depth) -> Arc<Vec<Path>> {
        if let Some(v) = self.paths.get(&(n, d)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.extend((0..d.path).map(|i| Path::Var(Var::Bound(i))));
        }
        if n >= 2 {
            out.extend(self.terms(n - 1, d.term).iter().cloned().map(Path::Ref));
        }
        for c in compositions(n.saturating_sub(1), 2) {
            let (a, b) = (self.paths(c[0], d), self.paths(c[1], d));
            for x in a.iter() {
                for y in b.iter() {
                    out.push(Path::imp_star(x.clone(), y.clone()));
                }
            }
            let inner = Depth {
                term: d.term + 2,
                path: d.path + 1,
                ..d
            };
            let (tys, bodies) = (self.types(c[0]), self.paths(c[1], inner));
            for ty in tys.iter() {
                for body in bodies.iter() {
                    out.push(Path::TriLam(
                        tri_hints(),
                        ty.clone(),
                        Arc::new(body.clone()),
                    ));
                }
            }
        }
        for c in compositions(n.saturating_sub(1), 4) {
            let (a, b) = (self.terms(c[0], d.term), self.terms(c[1], d.term));
            let (f, g) = (self.proofs(c[2], d), self.proofs(c[3], d));
            for w in a.iter() {
                for x in b.iter() {
                    for y in f.iter() {
                        for z in g.iter() {
                            out.push(Path::univ(w.clone(), x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
            let (p, q) = (self.paths(c[0], d), self.paths(c[3], d));
            let (l, r) = (self.terms(c[1], d.term), self.terms(c[2], d.term));
            for w in p.iter() {
                for x in l.iter() {
                    for y in r.iter() {
                        for z in q.iter() {
                            out.push(Path::app(w.clone(), x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.paths.insert((n, d), out.clone());
        out
    }
}

/// Every closed proof of exactly `size` nodes, once per alpha class.
pub fn closed_proofs(size: usize) -> Vec<Proof> {
    Enumerator::default()
        .proofs(
            size,
            Depth {
                term: 0,
                proof: 0,
                path: 0,
            },
        )
        .to_vec()
}

/// Enumerates all closed proofs up to `max_size` nodes and reports those
/// whose proposition is convertible with `bot`.
///
/// Panics if `max_size` exceeds [`MAX_SEARCH_SIZE`].
pub fn bounded_consistency_search(max_size: usize) -> ConsistencyReport {
    assert!(
        max_size <= MAX_SEARCH_SIZE,
        "search size {max_size} exceeds {MAX_SEARCH_SIZE}"
    );
    let mut en = Enumerator::default();
    let checker = Checker::new(DEFAULT_FUEL);
    let ctx = Context::new();
    let mut report = ConsistencyReport {
        max_size,
        enumerated: Vec::new(),
        typed: 0,
        hits: Vec::new(),
    };
    for n in 1..=max_size {
        let proofs = en.proofs(
            n,
            Depth {
                term: 0,
                proof: 0,
                path: 0,
            },
        );
        report.enumerated.push(proofs.len());
        let results: Vec<(bool, Option<Proof>)> = proofs
            .par_iter()
            .map(|d| {
                let inferred = checker.infer_prop(&ctx, d);
                let typed = inferred.is_ok();
                let by_inference = inferred
                    .is_ok_and(|phi| convertible(&phi, &Term::Bot, DEFAULT_FUEL) == Ok(true));
                let by_checking = checker.check_proof(&ctx, d, &Term::Bot).is_ok();
                (typed, (by_inference || by_checking).then(|| d.clone()))
            })
            .collect();
        for (typed, hit) in results {
            report.typed += usize::from(typed);
            report.hits.extend(hit);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(3, 4), Vec::<Vec<usize>>::new());
        assert_eq!(compositions(4, 4).len(), 1);
    }

    #[test]
    fn smallest_closed_proofs() {
        assert!(closed_proofs(1).is_empty());
        // ref(bot)^+ and ref(bot)^-
        assert_eq!(closed_proofs(3).len(), 2 + 1);
        assert!(closed_proofs(3).contains(&Proof::Lam(
            Hint::new("p"),
            Term::Bot,
            Arc::new(Proof::Var(Var::Bound(0)))
        )));
    }
}
