//! Substitution, path substitution `M{x := P : N = N'}`, the trivial loop
//! `M{}` and the closed inhabitants `c_A`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::syntax::{
    Binding, Depth, Equation, Expr, Hint, Name, Path, Proof, Term, TriHints, Type, Var, VarMap,
};

/// A simultaneous substitution for free variables of all three kinds.
///
/// Images must be locally closed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub terms: BTreeMap<Name, Term>,
    pub proofs: BTreeMap<Name, Proof>,
    pub paths: BTreeMap<Name, Path>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn term(mut self, x: impl Into<Name>, m: Term) -> Substitution {
        self.terms.insert(x.into(), m);
        self
    }

    pub fn proof(mut self, p: impl Into<Name>, d: Proof) -> Substitution {
        self.proofs.insert(p.into(), d);
        self
    }

    pub fn path(mut self, e: impl Into<Name>, q: Path) -> Substitution {
        self.paths.insert(e.into(), q);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.proofs.is_empty() && self.paths.is_empty()
    }

    /// The substitution `t[self][then]`: images of `self` followed by `then`,
    /// and `then` on variables outside the domain of `self`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        fn merge<T: Clone>(
            first: &BTreeMap<Name, T>,
            then: &BTreeMap<Name, T>,
            apply: impl Fn(&T) -> T,
        ) -> BTreeMap<Name, T> {
            let mut out: BTreeMap<Name, T> =
                first.iter().map(|(k, v)| (k.clone(), apply(v))).collect();
            for (k, v) in then {
                out.entry(k.clone()).or_insert_with(|| v.clone());
            }
            out
        }
        Substitution {
            terms: merge(&self.terms, &then.terms, |t| t.subst(then)),
            proofs: merge(&self.proofs, &then.proofs, |t| t.subst(then)),
            paths: merge(&self.paths, &then.paths, |t| t.subst(then)),
        }
    }
}

impl VarMap for Substitution {
    fn term(&self, v: &Var, _: Depth) -> Option<Term> {
        match v {
            Var::Free(n) => self.terms.get(n).cloned(),
            Var::Bound(_) => None,
        }
    }
    fn proof(&self, v: &Var, _: Depth) -> Option<Proof> {
        match v {
            Var::Free(n) => self.proofs.get(n).cloned(),
            Var::Bound(_) => None,
        }
    }
    fn path(&self, v: &Var, _: Depth) -> Option<Path> {
        match v {
            Var::Free(n) => self.paths.get(n).cloned(),
            Var::Bound(_) => None,
        }
    }
}

macro_rules! substitutable {
    ($($ty:ty),*) => {$(
        impl $ty {
            /// Capture-avoiding simultaneous substitution.
            pub fn subst(&self, s: &Substitution) -> $ty {
                if s.is_empty() {
                    return self.clone();
                }
                self.map_vars(s, Depth::default())
            }
        }
    )*};
}

substitutable!(Term, Proof, Path, Equation);

impl Expr {
    pub fn subst(&self, s: &Substitution) -> Expr {
        match self {
            Expr::Type(t) => Expr::Type(t.clone()),
            Expr::Term(t) => Expr::Term(t.subst(s)),
            Expr::Proof(t) => Expr::Proof(t.subst(s)),
            Expr::Path(t) => Expr::Path(t.subst(s)),
            Expr::Equation(t) => Expr::Equation(t.subst(s)),
        }
    }
}

/// The image of one variable under a path substitution: a path together with
/// its two endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathBinding {
    pub path: Path,
    pub left: Term,
    pub right: Term,
}

/// `x1 := P1 : M1 = N1, ..., xn := Pn : Mn = Nn`
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSubstitution {
    map: BTreeMap<Name, PathBinding>,
}

impl PathSubstitution {
    pub fn new() -> PathSubstitution {
        PathSubstitution::default()
    }

    pub fn with(
        mut self,
        x: impl Into<Name>,
        path: Path,
        left: Term,
        right: Term,
    ) -> PathSubstitution {
        self.insert(x, path, left, right);
        self
    }

    pub fn insert(&mut self, x: impl Into<Name>, path: Path, left: Term, right: Term) {
        self.map.insert(x.into(), PathBinding { path, left, right });
    }

    pub fn get(&self, x: &Name) -> Option<&PathBinding> {
        self.map.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &PathBinding)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `x_i := M_i`
    pub fn left_subst(&self) -> Substitution {
        Substitution {
            terms: self
                .map
                .iter()
                .map(|(k, b)| (k.clone(), b.left.clone()))
                .collect(),
            ..Substitution::default()
        }
    }

    /// `x_i := N_i`
    pub fn right_subst(&self) -> Substitution {
        Substitution {
            terms: self
                .map
                .iter()
                .map(|(k, b)| (k.clone(), b.right.clone()))
                .collect(),
            ..Substitution::default()
        }
    }

    /// Applies an ordinary substitution to every path and endpoint.
    pub fn subst(&self, s: &Substitution) -> PathSubstitution {
        PathSubstitution {
            map: self
                .map
                .iter()
                .map(|(k, b)| {
                    let b = PathBinding {
                        path: b.path.subst(s),
                        left: b.left.subst(s),
                        right: b.right.subst(s),
                    };
                    (k.clone(), b)
                })
                .collect(),
        }
    }
}

struct PathSubst {
    tau: PathSubstitution,
    left: Substitution,
    right: Substitution,
}

impl PathSubst {
    fn new(tau: PathSubstitution) -> PathSubst {
        let left = tau.left_subst();
        let right = tau.right_subst();
        PathSubst { tau, left, right }
    }

    fn extended(&self, x: Name, path: Path, left: Term, right: Term) -> PathSubst {
        let mut next = PathSubst {
            tau: self.tau.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        };
        next.left.terms.insert(x.clone(), left.clone());
        next.right.terms.insert(x.clone(), right.clone());
        next.tau.insert(x, path, left, right);
        next
    }

    fn apply(&self, l: &Term) -> Path {
        match l {
            Term::Var(Var::Free(x)) => match self.tau.get(x) {
                Some(b) => b.path.clone(),
                None => Path::Ref(l.clone()),
            },
            Term::Var(Var::Bound(_)) => {
                panic!("path substitution applied to a term with a dangling bound variable")
            }
            Term::Bot => Path::Ref(Term::Bot),
            Term::App(f, a) => Path::app(
                self.apply(f),
                a.subst(&self.left),
                a.subst(&self.right),
                self.apply(a),
            ),
            Term::Lam(h, ty, body) => {
                let y = Name::internal();
                let (e, a, a2) = (Name::internal(), Name::internal(), Name::internal());
                let body = Term::instantiate(body, &Term::Var(Var::Free(y.clone())));
                let inner = self
                    .extended(
                        y,
                        Path::Var(Var::Free(e.clone())),
                        Term::Var(Var::Free(a.clone())),
                        Term::Var(Var::Free(a2.clone())),
                    )
                    .apply(&body);
                let hints = TriHints {
                    e: Hint::new(format!("e_{}", h.as_str())),
                    x: h.clone(),
                    y: Hint::new(format!("{}'", h.as_str())),
                };
                Path::TriLam(
                    hints,
                    ty.clone(),
                    Arc::new(Path::close_tri(inner, &e, &a, &a2)),
                )
            }
            Term::Imp(a, b) => Path::imp_star(self.apply(a), self.apply(b)),
        }
    }
}

/// `L{tau}`.
///
/// Panics if `l` is not locally closed.
pub fn path_subst(l: &Term, tau: &PathSubstitution) -> Path {
    PathSubst::new(tau.clone()).apply(l)
}

/// `M{}`: the path substitution with empty domain.
pub fn trivial_loop(m: &Term) -> Path {
    path_subst(m, &PathSubstitution::new())
}

/// `c_Omega = bot`, `c_(A -> B) = \x:A. c_B`.
pub fn canonical_inhabitant(ty: &Type) -> Term {
    match ty {
        Type::Omega => Term::Bot,
        Type::Arrow(a, b) => Term::Lam(
            Hint::new("x"),
            (**a).clone(),
            Arc::new(canonical_inhabitant(b)),
        ),
    }
}
