use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Equation, Name, Path, Proof, Term, Type, Var};

/// Number of binders of each kind crossed so far.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Depth {
    pub term: usize,
    pub proof: usize,
    pub path: usize,
}

impl Depth {
    fn under_lam(self) -> Depth {
        Depth {
            term: self.term + 1,
            ..self
        }
    }

    fn under_plam(self) -> Depth {
        Depth {
            proof: self.proof + 1,
            ..self
        }
    }

    fn under_trilam(self) -> Depth {
        Depth {
            term: self.term + 2,
            path: self.path + 1,
            ..self
        }
    }
}

/// A rewrite of variable occurrences. Returning `None` keeps the occurrence.
/// Replacements must be locally closed, since they are inserted under binders
/// without shifting.
pub(crate) trait VarMap {
    fn term(&self, _v: &Var, _d: Depth) -> Option<Term> {
        None
    }
    fn proof(&self, _v: &Var, _d: Depth) -> Option<Proof> {
        None
    }
    fn path(&self, _v: &Var, _d: Depth) -> Option<Path> {
        None
    }
}

/// Replaces the outermost bound variables with expressions. In each slice the
/// last element is index 0.
pub(crate) struct Open<'a> {
    pub terms: &'a [Term],
    pub proofs: &'a [Proof],
    pub paths: &'a [Path],
}

impl<'a> Open<'a> {
    pub fn terms(terms: &'a [Term]) -> Open<'a> {
        Open {
            terms,
            proofs: &[],
            paths: &[],
        }
    }

    pub fn proofs(proofs: &'a [Proof]) -> Open<'a> {
        Open {
            terms: &[],
            proofs,
            paths: &[],
        }
    }
}

fn open_index<T: Clone>(v: &Var, depth: usize, with: &[T]) -> Option<T> {
    match v {
        Var::Bound(i) if *i >= depth && *i - depth < with.len() => {
            Some(with[with.len() - 1 - (*i - depth)].clone())
        }
        _ => None,
    }
}

impl VarMap for Open<'_> {
    fn term(&self, v: &Var, d: Depth) -> Option<Term> {
        open_index(v, d.term, self.terms)
    }
    fn proof(&self, v: &Var, d: Depth) -> Option<Proof> {
        open_index(v, d.proof, self.proofs)
    }
    fn path(&self, v: &Var, d: Depth) -> Option<Path> {
        open_index(v, d.path, self.paths)
    }
}

/// Abstracts free names into bound variables; the inverse of [`Open`].
pub(crate) struct Close<'a> {
    pub terms: &'a [Name],
    pub proofs: &'a [Name],
    pub paths: &'a [Name],
}

impl<'a> Close<'a> {
    pub fn terms(terms: &'a [Name]) -> Close<'a> {
        Close {
            terms,
            proofs: &[],
            paths: &[],
        }
    }

    pub fn proofs(proofs: &'a [Name]) -> Close<'a> {
        Close {
            terms: &[],
            proofs,
            paths: &[],
        }
    }
}

fn close_name(v: &Var, depth: usize, names: &[Name]) -> Option<Var> {
    match v {
        Var::Free(n) => names
            .iter()
            .rposition(|m| m == n)
            .map(|j| Var::Bound(depth + names.len() - 1 - j)),
        Var::Bound(_) => None,
    }
}

impl VarMap for Close<'_> {
    fn term(&self, v: &Var, d: Depth) -> Option<Term> {
        close_name(v, d.term, self.terms).map(Term::Var)
    }
    fn proof(&self, v: &Var, d: Depth) -> Option<Proof> {
        close_name(v, d.proof, self.proofs).map(Proof::Var)
    }
    fn path(&self, v: &Var, d: Depth) -> Option<Path> {
        close_name(v, d.path, self.paths).map(Path::Var)
    }
}

fn map_arc<T: Binding>(t: &Arc<T>, m: &impl VarMap, d: Depth) -> Option<Arc<T>> {
    t.map_opt(m, d).map(Arc::new)
}

fn pick<T: Clone>(new: Option<T>, old: &T) -> T {
    new.unwrap_or_else(|| old.clone())
}

/// Variable-level operations shared by every syntactic class.
pub(crate) trait Binding: Clone + Sized {
    /// `None` when nothing changed, so untouched subtrees stay shared.
    fn map_opt(&self, m: &impl VarMap, d: Depth) -> Option<Self>;

    fn visit(&self, f: &mut dyn FnMut(Kind, &Var, Depth), d: Depth);

    fn map_vars(&self, m: &impl VarMap, d: Depth) -> Self {
        self.map_opt(m, d).unwrap_or_else(|| self.clone())
    }

    fn open(&self, o: &Open<'_>, d: Depth) -> Self {
        self.map_vars(o, d)
    }

    fn close(&self, c: &Close<'_>, d: Depth) -> Self {
        self.map_vars(c, d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Term,
    Proof,
    Path,
}

impl Binding for Type {
    fn map_opt(&self, _: &impl VarMap, _: Depth) -> Option<Type> {
        None
    }

    fn visit(&self, _: &mut dyn FnMut(Kind, &Var, Depth), _: Depth) {}
}

impl Binding for Term {
    fn map_opt(&self, m: &impl VarMap, d: Depth) -> Option<Term> {
        match self {
            Term::Var(v) => m.term(v, d),
            Term::Bot => None,
            Term::Imp(a, b) | Term::App(a, b) => {
                let (na, nb) = (map_arc(a, m, d), map_arc(b, m, d));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                let (a, b) = (pick(na, a), pick(nb, b));
                Some(match self {
                    Term::Imp(..) => Term::Imp(a, b),
                    _ => Term::App(a, b),
                })
            }
            Term::Lam(h, ty, body) => {
                map_arc(body, m, d.under_lam()).map(|b| Term::Lam(h.clone(), ty.clone(), b))
            }
        }
    }

    fn visit(&self, f: &mut dyn FnMut(Kind, &Var, Depth), d: Depth) {
        match self {
            Term::Var(v) => f(Kind::Term, v, d),
            Term::Bot => {}
            Term::Imp(a, b) | Term::App(a, b) => {
                a.visit(f, d);
                b.visit(f, d);
            }
            Term::Lam(_, _, body) => body.visit(f, d.under_lam()),
        }
    }
}

impl Binding for Proof {
    fn map_opt(&self, m: &impl VarMap, d: Depth) -> Option<Proof> {
        match self {
            Proof::Var(v) => m.proof(v, d),
            Proof::Lam(h, ann, body) => {
                let (na, nb) = (ann.map_opt(m, d), map_arc(body, m, d.under_plam()));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                Some(Proof::Lam(h.clone(), pick(na, ann), pick(nb, body)))
            }
            Proof::App(a, b) => {
                let (na, nb) = (map_arc(a, m, d), map_arc(b, m, d));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                Some(Proof::App(pick(na, a), pick(nb, b)))
            }
            Proof::Plus(p) => map_arc(p, m, d).map(Proof::Plus),
            Proof::Minus(p) => map_arc(p, m, d).map(Proof::Minus),
        }
    }

    fn visit(&self, f: &mut dyn FnMut(Kind, &Var, Depth), d: Depth) {
        match self {
            Proof::Var(v) => f(Kind::Proof, v, d),
            Proof::Lam(_, ann, body) => {
                ann.visit(f, d);
                body.visit(f, d.under_plam());
            }
            Proof::App(a, b) => {
                a.visit(f, d);
                b.visit(f, d);
            }
            Proof::Plus(p) | Proof::Minus(p) => p.visit(f, d),
        }
    }
}

impl Binding for Path {
    fn map_opt(&self, m: &impl VarMap, d: Depth) -> Option<Path> {
        match self {
            Path::Var(v) => m.path(v, d),
            Path::Ref(t) => t.map_opt(m, d).map(Path::Ref),
            Path::ImpStar(a, b) => {
                let (na, nb) = (map_arc(a, m, d), map_arc(b, m, d));
                if na.is_none() && nb.is_none() {
                    return None;
                }
                Some(Path::ImpStar(pick(na, a), pick(nb, b)))
            }
            Path::Univ(a, b, c, e) => {
                let parts = (
                    a.map_opt(m, d),
                    b.map_opt(m, d),
                    map_arc(c, m, d),
                    map_arc(e, m, d),
                );
                if parts.0.is_none() && parts.1.is_none() && parts.2.is_none() && parts.3.is_none()
                {
                    return None;
                }
                Some(Path::Univ(
                    pick(parts.0, a),
                    pick(parts.1, b),
                    pick(parts.2, c),
                    pick(parts.3, e),
                ))
            }
            Path::TriLam(h, ty, body) => {
                map_arc(body, m, d.under_trilam()).map(|b| Path::TriLam(h.clone(), ty.clone(), b))
            }
            Path::App(p, l, r, q) => {
                let parts = (
                    map_arc(p, m, d),
                    l.map_opt(m, d),
                    r.map_opt(m, d),
                    map_arc(q, m, d),
                );
                if parts.0.is_none() && parts.1.is_none() && parts.2.is_none() && parts.3.is_none()
                {
                    return None;
                }
                Some(Path::App(
                    pick(parts.0, p),
                    pick(parts.1, l),
                    pick(parts.2, r),
                    pick(parts.3, q),
                ))
            }
        }
    }

    fn visit(&self, f: &mut dyn FnMut(Kind, &Var, Depth), d: Depth) {
        match self {
            Path::Var(v) => f(Kind::Path, v, d),
            Path::Ref(t) => t.visit(f, d),
            Path::ImpStar(a, b) => {
                a.visit(f, d);
                b.visit(f, d);
            }
            Path::Univ(a, b, c, e) => {
                a.visit(f, d);
                b.visit(f, d);
                c.visit(f, d);
                e.visit(f, d);
            }
            Path::TriLam(_, _, body) => body.visit(f, d.under_trilam()),
            Path::App(p, l, r, q) => {
                p.visit(f, d);
                l.visit(f, d);
                r.visit(f, d);
                q.visit(f, d);
            }
        }
    }
}

impl Binding for Equation {
    fn map_opt(&self, m: &impl VarMap, d: Depth) -> Option<Equation> {
        let (nl, nr) = (self.lhs.map_opt(m, d), self.rhs.map_opt(m, d));
        if nl.is_none() && nr.is_none() {
            return None;
        }
        Some(Equation {
            lhs: pick(nl, &self.lhs),
            ty: self.ty.clone(),
            rhs: pick(nr, &self.rhs),
        })
    }

    fn visit(&self, f: &mut dyn FnMut(Kind, &Var, Depth), d: Depth) {
        self.lhs.visit(f, d);
        self.rhs.visit(f, d);
    }
}

/// Free variables by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub terms: BTreeSet<Name>,
    pub proofs: BTreeSet<Name>,
    pub paths: BTreeSet<Name>,
}

impl FreeVars {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.proofs.is_empty() && self.paths.is_empty()
    }

    pub fn contains_name(&self, n: &Name) -> bool {
        self.terms.contains(n) || self.proofs.contains(n) || self.paths.contains(n)
    }

    pub fn extend(&mut self, other: FreeVars) {
        self.terms.extend(other.terms);
        self.proofs.extend(other.proofs);
        self.paths.extend(other.paths);
    }

    pub fn all(&self) -> impl Iterator<Item = &Name> {
        self.terms.iter().chain(&self.proofs).chain(&self.paths)
    }
}

pub(crate) fn free_vars_of(b: &impl Binding) -> FreeVars {
    let mut fv = FreeVars::default();
    b.visit(
        &mut |kind, v, _| {
            if let Var::Free(n) = v {
                let set = match kind {
                    Kind::Term => &mut fv.terms,
                    Kind::Proof => &mut fv.proofs,
                    Kind::Path => &mut fv.paths,
                };
                set.insert(n.clone());
            }
        },
        Depth::default(),
    );
    fv
}

pub(crate) fn locally_closed(b: &impl Binding) -> bool {
    let mut ok = true;
    b.visit(
        &mut |kind, v, d| {
            if let Var::Bound(i) = v {
                let depth = match kind {
                    Kind::Term => d.term,
                    Kind::Proof => d.proof,
                    Kind::Path => d.path,
                };
                ok &= *i < depth;
            }
        },
        Depth::default(),
    );
    ok
}

macro_rules! public_binding_api {
    ($($ty:ty),*) => {$(
        impl $ty {
            pub fn free_vars(&self) -> FreeVars {
                free_vars_of(self)
            }

            /// No dangling de Bruijn indices.
            pub fn is_locally_closed(&self) -> bool {
                locally_closed(self)
            }
        }
    )*};
}

public_binding_api!(Term, Proof, Path, Equation);

impl super::Expr {
    pub fn free_vars(&self) -> FreeVars {
        use super::Expr;
        match self {
            Expr::Type(_) => FreeVars::default(),
            Expr::Term(t) => t.free_vars(),
            Expr::Proof(t) => t.free_vars(),
            Expr::Path(t) => t.free_vars(),
            Expr::Equation(t) => t.free_vars(),
        }
    }
}
