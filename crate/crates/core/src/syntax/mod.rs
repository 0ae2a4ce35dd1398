//! Abstract syntax.
//!
//! Binding uses a locally nameless representation with three independent
//! index spaces, one per variable kind. Free variables are named, bound
//! variables are de Bruijn indices counted among the enclosing binders *of the
//! same kind*. Binder names survive only as [`Hint`]s, which compare equal to
//! every other hint, so the derived `PartialEq`/`Hash` on expressions is
//! α-equivalence.
//!
//! Binder layout:
//!
//! | binder                  | term indices  | proof indices | path indices |
//! |-------------------------|---------------|---------------|--------------|
//! | `\x:A. M`               | `x` = 0       |               |              |
//! | `\p:phi. d`             |               | `p` = 0       |              |
//! | `lll e : x =[A] y . P`  | `y` = 0, `x` = 1 |            | `e` = 0      |

mod binding;
mod classify;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use binding::FreeVars;
pub(crate) use binding::{Binding, Close, Depth, Open, VarMap};
pub use classify::{classify_canonical, classify_neutral, Canonicity};

/// A free variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: impl AsRef<str>) -> Name {
        Name(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// A name that cannot collide with anything the parser accepts.
    pub(crate) fn internal() -> Name {
        use std::sync::atomic::{AtomicU64, Ordering};
        static NEXT: AtomicU64 = AtomicU64::new(0);
        Name::new(format!("%{}", NEXT.fetch_add(1, Ordering::Relaxed)))
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Display name of a bound variable. Invisible to equality and hashing.
#[derive(Clone)]
pub struct Hint(Arc<str>);

impl Hint {
    pub fn new(s: impl AsRef<str>) -> Hint {
        Hint(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Hint) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Hints for the three variables bound by `lll e : x =[A] y . P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriHints {
    pub e: Hint,
    pub x: Hint,
    pub y: Hint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Free(Name),
    Bound(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Omega,
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// `A1 -> ... -> An -> Omega` as `([A1, ..., An])`.
    pub fn arguments(&self) -> Vec<Type> {
        let mut args = Vec::new();
        let mut ty = self;
        while let Type::Arrow(a, b) = ty {
            args.push((**a).clone());
            ty = b;
        }
        args
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Omega => 1,
            Type::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Bot,
    Imp(Arc<Term>, Arc<Term>),
    Lam(Hint, Type, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Proof {
    Var(Var),
    Lam(Hint, Term, Arc<Proof>),
    App(Arc<Proof>, Arc<Proof>),
    Plus(Arc<Path>),
    Minus(Arc<Path>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Var(Var),
    Ref(Term),
    ImpStar(Arc<Path>, Arc<Path>),
    Univ(Term, Term, Arc<Proof>, Arc<Proof>),
    TriLam(TriHints, Type, Arc<Path>),
    /// `P @[M, N] Q`: the path `P` applied to `Q`, annotated with the
    /// endpoints `M`, `N` of `Q`.
    App(Arc<Path>, Term, Term, Arc<Path>),
}

/// `lhs =[ty] rhs`
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub ty: Type,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, ty: Type, rhs: Term) -> Equation {
        Equation { lhs, ty, rhs }
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.ty.size() + self.rhs.size()
    }
}

/// The syntactic classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Type,
    Term,
    Proof,
    Path,
    Equation,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Type => "type",
            Sort::Term => "term",
            Sort::Proof => "proof",
            Sort::Path => "path",
            Sort::Equation => "equation",
        })
    }
}

/// An expression of any class.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Type(Type),
    Term(Term),
    Proof(Proof),
    Path(Path),
    Equation(Equation),
}

impl Expr {
    pub fn sort(&self) -> Sort {
        match self {
            Expr::Type(_) => Sort::Type,
            Expr::Term(_) => Sort::Term,
            Expr::Proof(_) => Sort::Proof,
            Expr::Path(_) => Sort::Path,
            Expr::Equation(_) => Sort::Equation,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Type(t) => t.size(),
            Expr::Term(t) => t.size(),
            Expr::Proof(t) => t.size(),
            Expr::Path(t) => t.size(),
            Expr::Equation(t) => t.size(),
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Expr::Term(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_proof(&self) -> Option<&Proof> {
        match self {
            Expr::Proof(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_path(&self) -> Option<&Path> {
        match self {
            Expr::Path(t) => Some(t),
            _ => None,
        }
    }
}

impl From<Type> for Expr {
    fn from(t: Type) -> Expr {
        Expr::Type(t)
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Expr {
        Expr::Term(t)
    }
}

impl From<Proof> for Expr {
    fn from(t: Proof) -> Expr {
        Expr::Proof(t)
    }
}

impl From<Path> for Expr {
    fn from(t: Path) -> Expr {
        Expr::Path(t)
    }
}

impl From<Equation> for Expr {
    fn from(t: Equation) -> Expr {
        Expr::Equation(t)
    }
}

/// Structural comparison modulo bound-variable names.
pub fn alpha_equal(a: &Expr, b: &Expr) -> bool {
    a == b
}

// Smart constructors. Binder constructors take the body with the bound
// variable still free and abstract over it.

impl Term {
    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(Var::Free(name.into()))
    }

    pub fn imp(lhs: Term, rhs: Term) -> Term {
        Term::Imp(Arc::new(lhs), Arc::new(rhs))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    /// `f a1 ... an`
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn lam(x: impl Into<Name>, ann: Type, body: Term) -> Term {
        let x = x.into();
        let body = body.close(&Close::terms(std::slice::from_ref(&x)), Depth::default());
        Term::Lam(Hint::new(x.as_str()), ann, Arc::new(body))
    }

    /// The body of a `Lam` with its bound variable replaced by `arg`.
    pub fn instantiate(body: &Term, arg: &Term) -> Term {
        body.open(&Open::terms(std::slice::from_ref(arg)), Depth::default())
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Bot => 1,
            Term::Imp(a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
            Term::Lam(_, ty, body) => 1 + ty.size() + body.size(),
        }
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }
}

impl Proof {
    pub fn var(name: impl Into<Name>) -> Proof {
        Proof::Var(Var::Free(name.into()))
    }

    pub fn app(fun: Proof, arg: Proof) -> Proof {
        Proof::App(Arc::new(fun), Arc::new(arg))
    }

    pub fn apps(fun: Proof, args: impl IntoIterator<Item = Proof>) -> Proof {
        args.into_iter().fold(fun, Proof::app)
    }

    pub fn plus(path: Path) -> Proof {
        Proof::Plus(Arc::new(path))
    }

    pub fn minus(path: Path) -> Proof {
        Proof::Minus(Arc::new(path))
    }

    pub fn lam(p: impl Into<Name>, ann: Term, body: Proof) -> Proof {
        let p = p.into();
        let body = body.close(&Close::proofs(std::slice::from_ref(&p)), Depth::default());
        Proof::Lam(Hint::new(p.as_str()), ann, Arc::new(body))
    }

    pub fn instantiate(body: &Proof, arg: &Proof) -> Proof {
        body.open(&Open::proofs(std::slice::from_ref(arg)), Depth::default())
    }

    pub fn size(&self) -> usize {
        match self {
            Proof::Var(_) => 1,
            Proof::Lam(_, ann, body) => 1 + ann.size() + body.size(),
            Proof::App(a, b) => 1 + a.size() + b.size(),
            Proof::Plus(p) | Proof::Minus(p) => 1 + p.size(),
        }
    }
}

impl Path {
    pub fn var(name: impl Into<Name>) -> Path {
        Path::Var(Var::Free(name.into()))
    }

    pub fn reflexivity(term: Term) -> Path {
        Path::Ref(term)
    }

    pub fn imp_star(lhs: Path, rhs: Path) -> Path {
        Path::ImpStar(Arc::new(lhs), Arc::new(rhs))
    }

    pub fn univ(src: Term, tgt: Term, fwd: Proof, bwd: Proof) -> Path {
        Path::Univ(src, tgt, Arc::new(fwd), Arc::new(bwd))
    }

    pub fn app(fun: Path, left: Term, right: Term, arg: Path) -> Path {
        Path::App(Arc::new(fun), left, right, Arc::new(arg))
    }

    /// `lll e : x =[ann] y . body`, abstracting the free names `e`, `x`, `y`.
    ///
    /// Panics if `x` and `y` coincide.
    pub fn tri_lam(
        e: impl Into<Name>,
        x: impl Into<Name>,
        y: impl Into<Name>,
        ann: Type,
        body: Path,
    ) -> Path {
        let (e, x, y) = (e.into(), x.into(), y.into());
        assert!(x != y, "lll binds two distinct term variables");
        let hints = TriHints {
            e: Hint::new(e.as_str()),
            x: Hint::new(x.as_str()),
            y: Hint::new(y.as_str()),
        };
        Path::TriLam(hints, ann, Arc::new(Path::close_tri(body, &e, &x, &y)))
    }

    pub(crate) fn close_tri(body: Path, e: &Name, x: &Name, y: &Name) -> Path {
        let terms = [x.clone(), y.clone()];
        let paths = [e.clone()];
        body.close(
            &Close {
                terms: &terms,
                proofs: &[],
                paths: &paths,
            },
            Depth::default(),
        )
    }

    /// The body of a `TriLam` with `x`, `y`, `e` replaced.
    pub fn instantiate(body: &Path, x: &Term, y: &Term, e: &Path) -> Path {
        let terms = [x.clone(), y.clone()];
        let paths = [e.clone()];
        body.open(
            &Open {
                terms: &terms,
                proofs: &[],
                paths: &paths,
            },
            Depth::default(),
        )
    }

    pub fn size(&self) -> usize {
        match self {
            Path::Var(_) => 1,
            Path::Ref(m) => 1 + m.size(),
            Path::ImpStar(a, b) => 1 + a.size() + b.size(),
            Path::Univ(a, b, c, d) => 1 + a.size() + b.size() + c.size() + d.size(),
            Path::TriLam(_, ty, body) => 1 + ty.size() + body.size(),
            Path::App(p, m, n, q) => 1 + p.size() + m.size() + n.size() + q.size(),
        }
    }
}
