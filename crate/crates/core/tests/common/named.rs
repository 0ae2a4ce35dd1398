//! A named-variable rendering of the syntax, used as an independent oracle
//! for the nameless kernel: free variables, canonical binder renumbering,
//! capture-avoiding substitution and path substitution are all recomputed
//! here on explicit names.

use std::collections::{BTreeMap, BTreeSet};

use phoml_core::parse::Scope;
use phoml_core::{Path, Proof, Sort, Term, Type};
use proptest::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NTerm {
    Var(String),
    Bot,
    Imp(Box<NTerm>, Box<NTerm>),
    Lam(String, Type, Box<NTerm>),
    App(Box<NTerm>, Box<NTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NProof {
    Var(String),
    Lam(String, NTerm, Box<NProof>),
    App(Box<NProof>, Box<NProof>),
    Plus(Box<NPath>),
    Minus(Box<NPath>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NPath {
    Var(String),
    Ref(NTerm),
    ImpStar(Box<NPath>, Box<NPath>),
    Univ(NTerm, NTerm, Box<NProof>, Box<NProof>),
    /// `lll e : x =[A] y . body`
    Tri(String, String, String, Type, Box<NPath>),
    App(Box<NPath>, NTerm, NTerm, Box<NPath>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NExpr {
    Term(NTerm),
    Proof(NProof),
    Path(NPath),
}

pub const TERM_POOL: [&str; 3] = ["x", "y", "z"];
pub const PROOF_POOL: [&str; 2] = ["p", "q"];
pub const PATH_POOL: [&str; 2] = ["e", "f"];

/// Declares every pool name at its kind.
pub fn pool_scope() -> Scope {
    let mut s = Scope::new();
    TERM_POOL.iter().for_each(|n| s.declare(n, Sort::Term));
    PROOF_POOL.iter().for_each(|n| s.declare(n, Sort::Proof));
    PATH_POOL.iter().for_each(|n| s.declare(n, Sort::Path));
    s
}

// Conversion to the kernel.

pub fn term(t: &NTerm) -> Term {
    match t {
        NTerm::Var(x) => Term::var(x.as_str()),
        NTerm::Bot => Term::Bot,
        NTerm::Imp(a, b) => Term::imp(term(a), term(b)),
        NTerm::Lam(x, a, b) => Term::lam(x.as_str(), a.clone(), term(b)),
        NTerm::App(f, a) => Term::app(term(f), term(a)),
    }
}

pub fn proof(d: &NProof) -> Proof {
    match d {
        NProof::Var(p) => Proof::var(p.as_str()),
        NProof::Lam(p, phi, b) => Proof::lam(p.as_str(), term(phi), proof(b)),
        NProof::App(f, a) => Proof::app(proof(f), proof(a)),
        NProof::Plus(p) => Proof::plus(path(p)),
        NProof::Minus(p) => Proof::minus(path(p)),
    }
}

pub fn path(p: &NPath) -> Path {
    match p {
        NPath::Var(e) => Path::var(e.as_str()),
        NPath::Ref(m) => Path::Ref(term(m)),
        NPath::ImpStar(a, b) => Path::imp_star(path(a), path(b)),
        NPath::Univ(a, b, d, e) => Path::univ(term(a), term(b), proof(d), proof(e)),
        NPath::Tri(e, x, y, a, b) => {
            Path::tri_lam(e.as_str(), x.as_str(), y.as_str(), a.clone(), path(b))
        }
        NPath::App(f, l, r, q) => Path::app(path(f), term(l), term(r), path(q)),
    }
}

pub fn expr(e: &NExpr) -> phoml_core::Expr {
    match e {
        NExpr::Term(t) => term(t).into(),
        NExpr::Proof(d) => proof(d).into(),
        NExpr::Path(p) => path(p).into(),
    }
}

// Free variables.

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fv {
    pub terms: BTreeSet<String>,
    pub proofs: BTreeSet<String>,
    pub paths: BTreeSet<String>,
}

pub fn fv_term(t: &NTerm) -> BTreeSet<String> {
    match t {
        NTerm::Var(x) => BTreeSet::from([x.clone()]),
        NTerm::Bot => BTreeSet::new(),
        NTerm::Imp(a, b) | NTerm::App(a, b) => &fv_term(a) | &fv_term(b),
        NTerm::Lam(x, _, b) => {
            let mut s = fv_term(b);
            s.remove(x);
            s
        }
    }
}

fn union(a: Fv, b: Fv) -> Fv {
    Fv {
        terms: &a.terms | &b.terms,
        proofs: &a.proofs | &b.proofs,
        paths: &a.paths | &b.paths,
    }
}

fn of_terms(t: BTreeSet<String>) -> Fv {
    Fv {
        terms: t,
        ..Fv::default()
    }
}

pub fn fv_proof(d: &NProof) -> Fv {
    match d {
        NProof::Var(p) => Fv {
            proofs: BTreeSet::from([p.clone()]),
            ..Fv::default()
        },
        NProof::Lam(p, phi, b) => {
            let mut inner = fv_proof(b);
            inner.proofs.remove(p);
            union(of_terms(fv_term(phi)), inner)
        }
        NProof::App(f, a) => union(fv_proof(f), fv_proof(a)),
        NProof::Plus(p) | NProof::Minus(p) => fv_path(p),
    }
}

pub fn fv_path(p: &NPath) -> Fv {
    match p {
        NPath::Var(e) => Fv {
            paths: BTreeSet::from([e.clone()]),
            ..Fv::default()
        },
        NPath::Ref(m) => of_terms(fv_term(m)),
        NPath::ImpStar(a, b) => union(fv_path(a), fv_path(b)),
        NPath::Univ(a, b, d, e) => union(
            union(of_terms(fv_term(a)), of_terms(fv_term(b))),
            union(fv_proof(d), fv_proof(e)),
        ),
        NPath::Tri(e, x, y, _, b) => {
            let mut inner = fv_path(b);
            inner.paths.remove(e);
            inner.terms.remove(x);
            inner.terms.remove(y);
            inner
        }
        NPath::App(f, l, r, q) => union(
            union(fv_path(f), fv_path(q)),
            union(of_terms(fv_term(l)), of_terms(fv_term(r))),
        ),
    }
}

pub fn fv(e: &NExpr) -> Fv {
    match e {
        NExpr::Term(t) => of_terms(fv_term(t)),
        NExpr::Proof(d) => fv_proof(d),
        NExpr::Path(p) => fv_path(p),
    }
}

// Renaming.

/// Renames every binder in traversal order with `fresh`, which is called
/// once per bound variable.
#[derive(Default, Clone)]
struct Env {
    terms: Vec<(String, String)>,
    proofs: Vec<(String, String)>,
    paths: Vec<(String, String)>,
}

fn look(stack: &[(String, String)], x: &str) -> String {
    stack
        .iter()
        .rev()
        .find(|(old, _)| old == x)
        .map_or_else(|| x.to_owned(), |(_, new)| new.clone())
}

struct Renamer<F: FnMut() -> String> {
    fresh: F,
}

impl<F: FnMut() -> String> Renamer<F> {
    fn term(&mut self, t: &NTerm, env: &Env) -> NTerm {
        match t {
            NTerm::Var(x) => NTerm::Var(look(&env.terms, x)),
            NTerm::Bot => NTerm::Bot,
            NTerm::Imp(a, b) => {
                NTerm::Imp(Box::new(self.term(a, env)), Box::new(self.term(b, env)))
            }
            NTerm::App(a, b) => {
                NTerm::App(Box::new(self.term(a, env)), Box::new(self.term(b, env)))
            }
            NTerm::Lam(x, a, b) => {
                let n = (self.fresh)();
                let mut inner = env.clone();
                inner.terms.push((x.clone(), n.clone()));
                NTerm::Lam(n, a.clone(), Box::new(self.term(b, &inner)))
            }
        }
    }

    fn proof(&mut self, d: &NProof, env: &Env) -> NProof {
        match d {
            NProof::Var(p) => NProof::Var(look(&env.proofs, p)),
            NProof::Lam(p, phi, b) => {
                let phi = self.term(phi, env);
                let n = (self.fresh)();
                let mut inner = env.clone();
                inner.proofs.push((p.clone(), n.clone()));
                NProof::Lam(n, phi, Box::new(self.proof(b, &inner)))
            }
            NProof::App(f, a) => {
                NProof::App(Box::new(self.proof(f, env)), Box::new(self.proof(a, env)))
            }
            NProof::Plus(p) => NProof::Plus(Box::new(self.path(p, env))),
            NProof::Minus(p) => NProof::Minus(Box::new(self.path(p, env))),
        }
    }

    fn path(&mut self, p: &NPath, env: &Env) -> NPath {
        match p {
            NPath::Var(e) => NPath::Var(look(&env.paths, e)),
            NPath::Ref(m) => NPath::Ref(self.term(m, env)),
            NPath::ImpStar(a, b) => {
                NPath::ImpStar(Box::new(self.path(a, env)), Box::new(self.path(b, env)))
            }
            NPath::Univ(a, b, d, e) => NPath::Univ(
                self.term(a, env),
                self.term(b, env),
                Box::new(self.proof(d, env)),
                Box::new(self.proof(e, env)),
            ),
            NPath::Tri(e, x, y, a, b) => {
                let (ne, nx, ny) = ((self.fresh)(), (self.fresh)(), (self.fresh)());
                let mut inner = env.clone();
                inner.paths.push((e.clone(), ne.clone()));
                inner.terms.push((x.clone(), nx.clone()));
                inner.terms.push((y.clone(), ny.clone()));
                NPath::Tri(ne, nx, ny, a.clone(), Box::new(self.path(b, &inner)))
            }
            NPath::App(f, l, r, q) => NPath::App(
                Box::new(self.path(f, env)),
                self.term(l, env),
                self.term(r, env),
                Box::new(self.path(q, env)),
            ),
        }
    }

    fn expr(&mut self, e: &NExpr) -> NExpr {
        let env = Env::default();
        match e {
            NExpr::Term(t) => NExpr::Term(self.term(t, &env)),
            NExpr::Proof(d) => NExpr::Proof(self.proof(d, &env)),
            NExpr::Path(p) => NExpr::Path(self.path(p, &env)),
        }
    }
}

/// Binders renumbered `#0, #1, ...` in traversal order.
pub fn canonical(e: &NExpr) -> NExpr {
    let mut k = 0;
    Renamer {
        fresh: || {
            k += 1;
            format!("#{k}")
        },
    }
    .expr(e)
}

/// Binders renamed to fresh names carrying `tag`.
pub fn rename(e: &NExpr, tag: &str) -> NExpr {
    let mut k = 0;
    Renamer {
        fresh: || {
            k += 1;
            format!("{tag}{k}")
        },
    }
    .expr(e)
}

pub fn alpha_equivalent(a: &NExpr, b: &NExpr) -> bool {
    canonical(a) == canonical(b)
}

// Substitution and path substitution on names.

/// Fresh names that cannot collide with generated ones.
pub struct Supply(usize);

impl Supply {
    pub fn new() -> Supply {
        Supply(0)
    }

    pub fn fresh(&mut self) -> String {
        self.0 += 1;
        format!("v{}", self.0)
    }
}

/// Capture-avoiding `t[x := m]` for term variables, renaming every binder.
pub fn subst_term(t: &NTerm, map: &BTreeMap<String, NTerm>, supply: &mut Supply) -> NTerm {
    match t {
        NTerm::Var(x) => map.get(x).cloned().unwrap_or_else(|| t.clone()),
        NTerm::Bot => NTerm::Bot,
        NTerm::Imp(a, b) => NTerm::Imp(
            Box::new(subst_term(a, map, supply)),
            Box::new(subst_term(b, map, supply)),
        ),
        NTerm::App(a, b) => NTerm::App(
            Box::new(subst_term(a, map, supply)),
            Box::new(subst_term(b, map, supply)),
        ),
        NTerm::Lam(x, a, b) => {
            let n = supply.fresh();
            let mut inner = map.clone();
            inner.insert(x.clone(), NTerm::Var(n.clone()));
            NTerm::Lam(n, a.clone(), Box::new(subst_term(b, &inner, supply)))
        }
    }
}

/// One entry `x := P : M = N` of a path substitution.
#[derive(Clone, Debug)]
pub struct Entry {
    pub path: NPath,
    pub left: NTerm,
    pub right: NTerm,
}

/// `L{tau}`, clause by clause.
pub fn path_subst(l: &NTerm, tau: &BTreeMap<String, Entry>, supply: &mut Supply) -> NPath {
    let lefts: BTreeMap<String, NTerm> = tau
        .iter()
        .map(|(k, v)| (k.clone(), v.left.clone()))
        .collect();
    let rights: BTreeMap<String, NTerm> = tau
        .iter()
        .map(|(k, v)| (k.clone(), v.right.clone()))
        .collect();
    match l {
        NTerm::Var(x) => tau
            .get(x)
            .map_or_else(|| NPath::Ref(l.clone()), |en| en.path.clone()),
        NTerm::Bot => NPath::Ref(NTerm::Bot),
        NTerm::Imp(a, b) => NPath::ImpStar(
            Box::new(path_subst(a, tau, supply)),
            Box::new(path_subst(b, tau, supply)),
        ),
        NTerm::App(m, n) => NPath::App(
            Box::new(path_subst(m, tau, supply)),
            subst_term(n, &lefts, supply),
            subst_term(n, &rights, supply),
            Box::new(path_subst(n, tau, supply)),
        ),
        NTerm::Lam(x, a, m) => {
            let (e, a1, a2) = (supply.fresh(), supply.fresh(), supply.fresh());
            let mut inner = tau.clone();
            inner.insert(
                x.clone(),
                Entry {
                    path: NPath::Var(e.clone()),
                    left: NTerm::Var(a1.clone()),
                    right: NTerm::Var(a2.clone()),
                },
            );
            NPath::Tri(
                e,
                a1,
                a2,
                a.clone(),
                Box::new(path_subst(m, &inner, supply)),
            )
        }
    }
}

// Generators. Binders draw from the same pools as free variables, so
// shadowing and name reuse are common.

pub fn arb_type() -> impl Strategy<Value = Type> {
    let leaf = Just(Type::Omega);
    leaf.prop_recursive(3, 6, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Type::arrow(a, b))
    })
}

fn pick(pool: &'static [&'static str]) -> impl Strategy<Value = String> {
    proptest::sample::select(pool).prop_map(str::to_owned)
}

pub fn arb_term() -> impl Strategy<Value = NTerm> {
    let leaf = prop_oneof![Just(NTerm::Bot), pick(&TERM_POOL).prop_map(NTerm::Var)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| NTerm::Imp(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| NTerm::App(Box::new(a), Box::new(b))),
            (pick(&TERM_POOL), arb_type(), inner).prop_map(|(x, a, b)| NTerm::Lam(
                x,
                a,
                Box::new(b)
            )),
        ]
    })
}

pub fn arb_proof_path() -> (BoxedStrategy<NProof>, BoxedStrategy<NPath>) {
    let proof_leaf = pick(&PROOF_POOL).prop_map(NProof::Var);
    let path_leaf = prop_oneof![
        pick(&PATH_POOL).prop_map(NPath::Var),
        arb_term().prop_map(NPath::Ref)
    ];
    let mixed = prop_oneof![
        proof_leaf.prop_map(NExpr::Proof),
        path_leaf.prop_map(NExpr::Path)
    ];
    let tree = mixed.prop_recursive(4, 24, 4, |inner| {
        let proof = inner.clone().prop_map(as_proof);
        let path = inner.prop_map(as_path);
        prop_oneof![
            (pick(&PROOF_POOL), arb_term(), proof.clone())
                .prop_map(|(p, phi, b)| NExpr::Proof(NProof::Lam(p, phi, Box::new(b)))),
            (proof.clone(), proof.clone())
                .prop_map(|(f, a)| NExpr::Proof(NProof::App(Box::new(f), Box::new(a)))),
            path.clone()
                .prop_map(|p| NExpr::Proof(NProof::Plus(Box::new(p)))),
            path.clone()
                .prop_map(|p| NExpr::Proof(NProof::Minus(Box::new(p)))),
            (path.clone(), path.clone())
                .prop_map(|(a, b)| NExpr::Path(NPath::ImpStar(Box::new(a), Box::new(b)))),
            (arb_term(), arb_term(), proof.clone(), proof)
                .prop_map(|(a, b, d, e)| NExpr::Path(NPath::Univ(a, b, Box::new(d), Box::new(e)))),
            (pick(&PATH_POOL), distinct_pair(), arb_type(), path.clone())
                .prop_map(|(e, (x, y), a, b)| NExpr::Path(NPath::Tri(e, x, y, a, Box::new(b)))),
            (path.clone(), arb_term(), arb_term(), path)
                .prop_map(|(f, l, r, q)| NExpr::Path(NPath::App(Box::new(f), l, r, Box::new(q)))),
        ]
    });
    (
        tree.clone().prop_map(as_proof).boxed(),
        tree.prop_map(as_path).boxed(),
    )
}

fn distinct_pair() -> impl Strategy<Value = (String, String)> {
    (0..TERM_POOL.len(), 1..TERM_POOL.len()).prop_map(|(i, k)| {
        (
            TERM_POOL[i].to_owned(),
            TERM_POOL[(i + k) % TERM_POOL.len()].to_owned(),
        )
    })
}

fn as_proof(e: NExpr) -> NProof {
    match e {
        NExpr::Proof(d) => d,
        NExpr::Path(p) => NProof::Plus(Box::new(p)),
        NExpr::Term(t) => NProof::Plus(Box::new(NPath::Ref(t))),
    }
}

fn as_path(e: NExpr) -> NPath {
    match e {
        NExpr::Path(p) => p,
        NExpr::Proof(d) => NPath::Univ(NTerm::Bot, NTerm::Bot, Box::new(d.clone()), Box::new(d)),
        NExpr::Term(t) => NPath::Ref(t),
    }
}

pub fn arb_expr() -> impl Strategy<Value = NExpr> {
    let (proof, path) = arb_proof_path();
    prop_oneof![
        arb_term().prop_map(NExpr::Term),
        proof.prop_map(NExpr::Proof),
        path.prop_map(NExpr::Path)
    ]
}
