//! Random expressions.
//!
//! The typed generator is goal directed. Asked for an inhabitant of a
//! classifier it picks one typing rule whose conclusion can match, generates
//! the premises as new goals and gives up (returning `None`) when a goal has
//! no inhabitant within the budget. Callers retry with fresh randomness.
//!
//! The untyped generator ignores typing and favours redex shapes, so the
//! reduction relations have something to do.

use phoml_core::parse::Classifier;
use phoml_core::reduce::{convertible, normalize_term, PROPERTY_FUEL};
use phoml_core::typeck::Checker;
use phoml_core::typeck::{Context, Entry};
use phoml_core::{
    canonical_inhabitant, path_subst, trivial_loop, Equation, Expr, Name, Path, PathSubstitution,
    Proof, Sort, Term, Type,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Relative weights of the constructor families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weights {
    /// Variables and constants.
    pub leaf: u32,
    /// `\x`, `\p` and `lll`.
    pub binder: u32,
    /// Applications, `^+`, `^-` and path application.
    pub elim: u32,
    /// `=>`, `=>*`, `ref` and `univ`.
    pub intro: u32,
    /// Explicit redexes.
    pub redex: u32,
}

impl Default for Weights {
    fn default() -> Weights {
        Weights {
            leaf: 4,
            binder: 2,
            elim: 2,
            intro: 2,
            redex: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Node budget.
    pub size: usize,
    pub weights: Weights,
    /// Number of declarations in generated contexts.
    pub context_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("at least one weight must be positive")]
    ZeroWeights,
}

impl GenConfig {
    pub fn new(seed: u64, size: usize) -> GenConfig {
        GenConfig {
            seed,
            size,
            weights: Weights::default(),
            context_depth: 3,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let w = self.weights;
        if self.size == 0 {
            Err(ConfigError::ZeroSize)
        } else if w.leaf + w.binder + w.elim + w.intro + w.redex == 0 {
            Err(ConfigError::ZeroWeights)
        } else {
            Ok(())
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        use rand::SeedableRng;
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// A generated expression with the classifier it was generated for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typed {
    pub ctx: Context,
    pub expr: Expr,
    pub classifier: Classifier,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no {sort} generated after {attempts} attempts")]
pub struct GenFailure {
    pub sort: Sort,
    pub attempts: usize,
}

pub const RETRIES: usize = 50;

fn nf(t: &Term) -> Option<Term> {
    let o = normalize_term(t, PROPERTY_FUEL);
    o.status.is_normal().then_some(o.result)
}

fn conv(a: &Term, b: &Term) -> bool {
    convertible(a, b, PROPERTY_FUEL).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Leaf,
    Binder,
    Elim,
    Intro,
    Redex,
}

impl Weights {
    fn of(&self, f: Family) -> u32 {
        match f {
            Family::Leaf => self.leaf,
            Family::Binder => self.binder,
            Family::Elim => self.elim,
            Family::Intro => self.intro,
            Family::Redex => self.redex,
        }
    }
}

/// A weighted random permutation of the options.
fn order<T: Copy>(rng: &mut ChaCha8Rng, w: &Weights, mut opts: Vec<(Family, T)>) -> Vec<T> {
    let mut out = Vec::with_capacity(opts.len());
    while !opts.is_empty() {
        let total: u32 = opts.iter().map(|(f, _)| w.of(*f) + 1).sum();
        let mut pick = rng.gen_range(0..total);
        let mut idx = 0;
        for (i, (f, _)) in opts.iter().enumerate() {
            let wt = w.of(*f) + 1;
            if pick < wt {
                idx = i;
                break;
            }
            pick -= wt;
        }
        out.push(opts.remove(idx).1);
    }
    out
}

/// Goal-directed generator over a mutable context.
pub struct TypedGen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    pub weights: Weights,
    pub ctx: Context,
    counter: usize,
}

#[derive(Clone, Copy)]
enum TermOpt {
    Leaf,
    Imp,
    Lam,
    App,
    VarApp,
    Beta,
}

#[derive(Clone, Copy)]
enum ProofOpt {
    Var,
    Lam,
    Plus,
    Minus,
    App,
    VarApp,
    Beta,
}

#[derive(Clone, Copy)]
enum PathOpt {
    Var,
    Ref,
    Loop,
    Univ,
    ImpStar,
    Lll,
    PathApp,
}

impl<'r> TypedGen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng, weights: Weights, ctx: Context) -> TypedGen<'r> {
        TypedGen {
            rng,
            weights,
            ctx,
            counter: 0,
        }
    }

    fn fresh(&mut self, base: &str) -> Name {
        loop {
            self.counter += 1;
            let n = Name::new(format!("{base}{}", self.counter));
            if !self.ctx.declares(&n) {
                return n;
            }
        }
    }

    fn split(&mut self, n: usize, parts: usize) -> Vec<usize> {
        let mut out = vec![0; parts];
        for _ in 0..n {
            let i = self.rng.gen_range(0..parts);
            out[i] += 1;
        }
        out
    }

    pub fn random_type(&mut self, depth: usize) -> Type {
        if depth == 0 || self.rng.gen_bool(0.6) {
            Type::Omega
        } else {
            Type::arrow(self.random_type(depth - 1), self.random_type(depth - 1))
        }
    }

    fn under<T>(&mut self, entries: Vec<Entry>, f: impl FnOnce(&mut Self) -> T) -> T {
        let saved = self.ctx.clone();
        for e in entries {
            self.ctx.push(e);
        }
        let r = f(self);
        self.ctx = saved;
        r
    }

    fn term_vars_of(&self, a: &Type) -> Vec<Name> {
        self.ctx
            .entries()
            .iter()
            .filter_map(|e| match e {
                Entry::Term(x, b) if b == a => Some(x.clone()),
                _ => None,
            })
            .collect()
    }

    /// A term of type `a` within roughly `n` nodes. Never fails.
    pub fn term(&mut self, a: &Type, n: usize) -> Term {
        let mut opts = vec![(Family::Leaf, TermOpt::Leaf)];
        if n > 1 {
            if *a == Type::Omega {
                opts.push((Family::Intro, TermOpt::Imp));
            }
            if matches!(a, Type::Arrow(..)) {
                opts.push((Family::Binder, TermOpt::Lam));
            }
            opts.push((Family::Elim, TermOpt::App));
            opts.push((Family::Elim, TermOpt::VarApp));
            opts.push((Family::Redex, TermOpt::Beta));
        }
        for opt in order(self.rng, &self.weights, opts) {
            if let Some(t) = self.term_by(opt, a, n) {
                return t;
            }
        }
        canonical_inhabitant(a)
    }

    fn term_by(&mut self, opt: TermOpt, a: &Type, n: usize) -> Option<Term> {
        match opt {
            TermOpt::Leaf => {
                let mut vars = self.term_vars_of(a);
                if *a == Type::Omega && (vars.is_empty() || self.rng.gen_bool(0.3)) {
                    return Some(Term::Bot);
                }
                vars.shuffle(self.rng);
                vars.pop().map(Term::var)
            }
            TermOpt::Imp => {
                let s = self.split(n - 1, 2);
                Some(Term::imp(
                    self.term(&Type::Omega, s[0]),
                    self.term(&Type::Omega, s[1]),
                ))
            }
            TermOpt::Lam => {
                let Type::Arrow(b, c) = a else { return None };
                let x = self.fresh("x");
                let body = self.under(vec![Entry::Term(x.clone(), (**b).clone())], |g| {
                    g.term(c, n - 1)
                });
                Some(Term::lam(x, (**b).clone(), body))
            }
            TermOpt::App => {
                let b = self.random_type(1);
                let s = self.split(n - 1, 2);
                let f = self.term(&Type::arrow(b.clone(), a.clone()), s[0]);
                Some(Term::app(f, self.term(&b, s[1])))
            }
            TermOpt::VarApp => {
                let mut heads: Vec<(Name, Vec<Type>)> = Vec::new();
                for e in self.ctx.entries() {
                    if let Entry::Term(f, ty) = e {
                        let mut args = Vec::new();
                        let mut t = ty;
                        while let Type::Arrow(d, c) = t {
                            args.push((**d).clone());
                            t = c;
                            if t == a {
                                heads.push((f.clone(), args.clone()));
                            }
                        }
                    }
                }
                let (f, args) = heads.choose(self.rng)?.clone();
                let s = self.split(n.saturating_sub(1), args.len());
                let args: Vec<Term> = args.iter().zip(s).map(|(d, k)| self.term(d, k)).collect();
                Some(Term::apps(Term::var(f), args))
            }
            TermOpt::Beta => {
                let b = self.random_type(1);
                let s = self.split(n - 1, 2);
                let x = self.fresh("x");
                let body = self.under(vec![Entry::Term(x.clone(), b.clone())], |g| g.term(a, s[0]));
                Some(Term::app(
                    Term::lam(x, b.clone(), body),
                    self.term(&b, s[1]),
                ))
            }
        }
    }

    /// A proposition, slightly biased towards implications.
    pub fn prop(&mut self, n: usize) -> Term {
        self.term(&Type::Omega, n)
    }

    fn proof_vars(&self) -> Vec<(Name, Term)> {
        self.ctx
            .entries()
            .iter()
            .filter_map(|e| match e {
                Entry::Proof(p, phi) => Some((p.clone(), phi.clone())),
                _ => None,
            })
            .collect()
    }

    fn path_vars(&self) -> Vec<(Name, Equation)> {
        self.ctx
            .entries()
            .iter()
            .filter_map(|e| match e {
                Entry::Path(p, eq) => Some((p.clone(), eq.clone())),
                _ => None,
            })
            .collect()
    }

    /// A proof of `phi`, if one is found within the budget.
    pub fn proof(&mut self, phi: &Term, n: usize) -> Option<Proof> {
        let target = nf(phi)?;
        let imp = matches!(target, Term::Imp(..));
        let mut opts = vec![(Family::Leaf, ProofOpt::Var)];
        if n > 0 {
            opts.push((Family::Elim, ProofOpt::VarApp));
        }
        if imp {
            opts.push((Family::Binder, ProofOpt::Lam));
        }
        if n > 1 {
            if imp {
                opts.push((Family::Elim, ProofOpt::Plus));
                opts.push((Family::Elim, ProofOpt::Minus));
            }
            opts.push((Family::Elim, ProofOpt::App));
            opts.push((Family::Redex, ProofOpt::Beta));
        }
        for opt in order(self.rng, &self.weights, opts) {
            if let Some(d) = self.proof_by(opt, phi, &target, n) {
                return Some(d);
            }
        }
        None
    }

    fn proof_by(&mut self, opt: ProofOpt, phi: &Term, target: &Term, n: usize) -> Option<Proof> {
        match opt {
            ProofOpt::Var => {
                let mut vars: Vec<Name> = self
                    .proof_vars()
                    .into_iter()
                    .filter(|(_, psi)| nf(psi).as_ref() == Some(target))
                    .map(|(p, _)| p)
                    .collect();
                vars.shuffle(self.rng);
                vars.pop().map(Proof::var)
            }
            ProofOpt::VarApp => {
                let mut heads: Vec<(Name, Term)> = Vec::new();
                for (q, psi) in self.proof_vars() {
                    if let Some(Term::Imp(c, d)) = nf(&psi) {
                        if nf(&d).as_ref() == Some(target) {
                            heads.push((q, (*c).clone()));
                        }
                    }
                }
                let (q, c) = heads.choose(self.rng)?.clone();
                let arg = self.proof(&c, n - 1)?;
                Some(Proof::app(Proof::var(q), arg))
            }
            ProofOpt::Lam => {
                let (a, b) = match (phi, target) {
                    (Term::Imp(a, b), _) | (_, Term::Imp(a, b)) => ((**a).clone(), (**b).clone()),
                    _ => return None,
                };
                let ann = if self.rng.gen_bool(0.15) {
                    beta_expand(&a)
                } else {
                    a
                };
                let p = self.fresh("p");
                let body = self.under(vec![Entry::Proof(p.clone(), ann.clone())], |g| {
                    g.proof(&b, n.saturating_sub(1))
                })?;
                Some(Proof::lam(p, ann, body))
            }
            ProofOpt::Plus | ProofOpt::Minus => {
                let Term::Imp(a, b) = target else { return None };
                let (l, r) = if matches!(opt, ProofOpt::Plus) {
                    (a, b)
                } else {
                    (b, a)
                };
                let p = self.path(
                    &Equation::new((**l).clone(), Type::Omega, (**r).clone()),
                    n - 1,
                )?;
                Some(if matches!(opt, ProofOpt::Plus) {
                    Proof::plus(p)
                } else {
                    Proof::minus(p)
                })
            }
            ProofOpt::App => {
                let s = self.split(n - 1, 3);
                let psi = self.lemma_prop(s[2].min(4));
                let d = self.proof(&Term::imp(psi.clone(), phi.clone()), s[0])?;
                let e = self.proof(&psi, s[1])?;
                Some(Proof::app(d, e))
            }
            ProofOpt::Beta => {
                let s = self.split(n - 1, 2);
                let psi = self.lemma_prop(2);
                let p = self.fresh("p");
                let body = self.under(vec![Entry::Proof(p.clone(), psi.clone())], |g| {
                    g.proof(phi, s[0])
                })?;
                let arg = self.proof(&psi, s[1])?;
                Some(Proof::app(Proof::lam(p, psi, body), arg))
            }
        }
    }

    /// A proposition likely to be provable here.
    fn lemma_prop(&mut self, n: usize) -> Term {
        let vars = self.proof_vars();
        match self.rng.gen_range(0..4) {
            0 if !vars.is_empty() => vars.choose(self.rng).expect("nonempty").1.clone(),
            1 => {
                let a = self.prop(n);
                Term::imp(a.clone(), a)
            }
            _ => {
                let a = self.prop(n);
                let b = self.prop(n);
                Term::imp(a.clone(), Term::imp(b, a))
            }
        }
    }

    /// A path proving `eq`, if one is found within the budget.
    pub fn path(&mut self, eq: &Equation, n: usize) -> Option<Path> {
        let (l, r) = (nf(&eq.lhs)?, nf(&eq.rhs)?);
        let same = l == r;
        let mut opts = vec![(Family::Leaf, PathOpt::Var)];
        if same {
            opts.push((Family::Intro, PathOpt::Ref));
            opts.push((Family::Intro, PathOpt::Loop));
        }
        if n > 1 {
            match &eq.ty {
                Type::Omega => {
                    opts.push((Family::Intro, PathOpt::Univ));
                    if matches!((&l, &r), (Term::Imp(..), Term::Imp(..))) {
                        opts.push((Family::Intro, PathOpt::ImpStar));
                    }
                }
                Type::Arrow(..) => opts.push((Family::Binder, PathOpt::Lll)),
            }
            if matches!((&l, &r), (Term::App(..), Term::App(..))) {
                opts.push((Family::Elim, PathOpt::PathApp));
            }
        }
        for opt in order(self.rng, &self.weights, opts) {
            if let Some(p) = self.path_by(opt, eq, &l, &r, n) {
                return Some(p);
            }
        }
        None
    }

    fn path_by(
        &mut self,
        opt: PathOpt,
        eq: &Equation,
        l: &Term,
        r: &Term,
        n: usize,
    ) -> Option<Path> {
        match opt {
            PathOpt::Var => {
                let mut vars: Vec<Name> = self
                    .path_vars()
                    .into_iter()
                    .filter(|(_, e)| {
                        e.ty == eq.ty && conv(&e.lhs, &eq.lhs) && conv(&e.rhs, &eq.rhs)
                    })
                    .map(|(e, _)| e)
                    .collect();
                vars.shuffle(self.rng);
                vars.pop().map(Path::var)
            }
            PathOpt::Ref => Some(Path::Ref(if self.rng.gen_bool(0.5) {
                eq.lhs.clone()
            } else {
                eq.rhs.clone()
            })),
            PathOpt::Loop => Some(trivial_loop(&eq.lhs)),
            PathOpt::Univ => {
                let s = self.split(n - 1, 2);
                let fwd = self.proof(&Term::imp(eq.lhs.clone(), eq.rhs.clone()), s[0])?;
                let bwd = self.proof(&Term::imp(eq.rhs.clone(), eq.lhs.clone()), s[1])?;
                Some(Path::univ(eq.lhs.clone(), eq.rhs.clone(), fwd, bwd))
            }
            PathOpt::ImpStar => {
                let (Term::Imp(a, b), Term::Imp(c, d)) = (l, r) else {
                    return None;
                };
                let s = self.split(n - 1, 2);
                let p = self.path(
                    &Equation::new((**a).clone(), Type::Omega, (**c).clone()),
                    s[0],
                )?;
                let q = self.path(
                    &Equation::new((**b).clone(), Type::Omega, (**d).clone()),
                    s[1],
                )?;
                Some(Path::imp_star(p, q))
            }
            PathOpt::Lll => {
                let Type::Arrow(a, b) = &eq.ty else {
                    return None;
                };
                let (e, x, y) = (self.fresh("e"), self.fresh("x"), self.fresh("y"));
                let entries = vec![
                    Entry::Term(x.clone(), (**a).clone()),
                    Entry::Term(y.clone(), (**a).clone()),
                    Entry::Path(
                        e.clone(),
                        Equation::new(Term::var(x.clone()), (**a).clone(), Term::var(y.clone())),
                    ),
                ];
                let goal = Equation::new(
                    Term::app(eq.lhs.clone(), Term::var(x.clone())),
                    (**b).clone(),
                    Term::app(eq.rhs.clone(), Term::var(y.clone())),
                );
                let body = self.under(entries, |g| g.path(&goal, n - 1))?;
                Some(Path::tri_lam(e, x, y, (**a).clone(), body))
            }
            PathOpt::PathApp => {
                let (Term::App(f, m), Term::App(g, m2)) = (l, r) else {
                    return None;
                };
                let ty = Checker::new(PROPERTY_FUEL).infer_type(&self.ctx, m).ok()?;
                let s = self.split(n - 1, 2);
                let p = self.path(
                    &Equation::new(
                        (**f).clone(),
                        Type::arrow(ty.clone(), eq.ty.clone()),
                        (**g).clone(),
                    ),
                    s[0],
                )?;
                let q = self.path(&Equation::new((**m).clone(), ty, (**m2).clone()), s[1])?;
                Some(Path::app(p, (**m).clone(), (**m2).clone(), q))
            }
        }
    }
}

/// `(\x:Omega. x) t`, convertible with `t`.
pub fn beta_expand(t: &Term) -> Term {
    Term::app(Term::lam("x", Type::Omega, Term::var("x")), t.clone())
}

/// Which variables a generated context may declare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Any declarations.
    Open,
    /// Proof and path variables only.
    NoTermVars,
    /// The empty context.
    Closed,
}

/// A well-formed random context of at most `depth` declarations.
pub fn context(rng: &mut ChaCha8Rng, weights: Weights, depth: usize, regime: Regime) -> Context {
    let mut g = TypedGen::new(rng, weights, Context::new());
    if regime == Regime::Closed {
        return g.ctx;
    }
    for _ in 0..depth {
        let kind = g.rng.gen_range(0..3);
        let entry = match kind {
            0 if regime == Regime::Open => {
                let x = g.fresh("v");
                Entry::Term(x, g.random_type(2))
            }
            1 => {
                let p = g.fresh("h");
                let size = g.rng.gen_range(1..5);
                Entry::Proof(p, g.prop(size))
            }
            _ => {
                let e = g.fresh("w");
                let ty = g.random_type(1);
                let (a, b) = (g.rng.gen_range(1..4), g.rng.gen_range(1..4));
                let (l, r) = (g.term(&ty, a), g.term(&ty, b));
                Entry::Path(e, Equation::new(l, ty, r))
            }
        };
        g.ctx.push(entry);
    }
    g.ctx
}

/// A random inhabitant of a random classifier of the given sort.
pub fn typed(cfg: &GenConfig, sort: Sort, regime: Regime) -> Result<Typed, GenFailure> {
    let mut rng = cfg.rng();
    typed_with(&mut rng, cfg, sort, regime)
}

pub fn typed_with(
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    sort: Sort,
    regime: Regime,
) -> Result<Typed, GenFailure> {
    for _ in 0..RETRIES {
        let ctx = context(rng, cfg.weights, cfg.context_depth, regime);
        let mut g = TypedGen::new(rng, cfg.weights, ctx);
        let n = cfg.size;
        let made = match sort {
            Sort::Term => {
                let a = g.random_type(2);
                let m = g.term(&a, n);
                Some((Expr::Term(m), Classifier::Type(a)))
            }
            Sort::Proof => {
                let phi = if g.rng.gen_bool(0.3) {
                    g.prop(n / 3 + 1)
                } else {
                    g.lemma_prop(n / 4 + 1)
                };
                g.proof(&phi, n)
                    .map(|d| (Expr::Proof(d), Classifier::Prop(phi)))
            }
            _ => g
                .path_goal(n)
                .map(|(p, eq)| (Expr::Path(p), Classifier::Equation(eq))),
        };
        if let Some((expr, classifier)) = made {
            return Ok(Typed {
                ctx: g.ctx,
                expr,
                classifier,
            });
        }
    }
    Err(GenFailure {
        sort,
        attempts: RETRIES,
    })
}

impl TypedGen<'_> {
    /// A path together with the equation it was generated for.
    fn path_goal(&mut self, n: usize) -> Option<(Path, Equation)> {
        let ty = self.random_type(1);
        match self.rng.gen_range(0..4) {
            0 => {
                // Path substitution into a body with one hole.
                let b = self.random_type(1);
                let (a, a2) = self.endpoints(&b, n / 4 + 1);
                let eq = Equation::new(a.clone(), b.clone(), a2.clone());
                let q = self.path(&eq, n / 2)?;
                let x = self.fresh("x");
                let k = self.under(vec![Entry::Term(x.clone(), b.clone())], |g| {
                    g.term(&ty, n / 2 + 1)
                });
                let tau = PathSubstitution::new().with(x.clone(), q, a.clone(), a2.clone());
                let s = |m: Term| phoml_core::Substitution::new().term(x.clone(), m);
                let eq = Equation::new(k.subst(&s(a)), ty, k.subst(&s(a2)));
                Some((path_subst(&k, &tau), eq))
            }
            _ => {
                let (l, r) = self.endpoints(&ty, n / 3 + 1);
                let eq = Equation::new(l, ty, r);
                self.path(&eq, n).map(|p| (p, eq))
            }
        }
    }

    /// Two terms of type `ty` likely to be provably equal here.
    fn endpoints(&mut self, ty: &Type, n: usize) -> (Term, Term) {
        let vars: Vec<Equation> = self
            .path_vars()
            .into_iter()
            .map(|(_, e)| e)
            .filter(|e| &e.ty == ty)
            .collect();
        match self.rng.gen_range(0..4) {
            0 if !vars.is_empty() => {
                let e = vars.choose(self.rng).expect("nonempty").clone();
                (e.lhs, e.rhs)
            }
            1 => {
                let m = self.term(ty, n);
                let m2 = if *ty == Type::Omega {
                    beta_expand(&m)
                } else {
                    m.clone()
                };
                (m, m2)
            }
            _ => (self.term(ty, n), self.term(ty, n)),
        }
    }
}

/// Untyped expressions over a fixed pool of free variables, biased towards
/// redexes and towards redexes that overlap.
///
/// `term(n)`, `proof(n)` and `path(n)` never exceed `n` nodes.
pub struct UntypedGen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    terms: Vec<Name>,
    proofs: Vec<Name>,
    paths: Vec<Name>,
    counter: usize,
}

#[derive(Clone, Copy)]
enum UTerm {
    Leaf,
    Imp,
    ImpRedexes,
    App,
    Lam,
    Beta,
}

#[derive(Clone, Copy)]
enum UProof {
    Var,
    Lam,
    App,
    Plus,
    Minus,
    Beta,
    HeadRedex,
    AppliedRedex,
}

#[derive(Clone, Copy)]
enum UPath {
    Var,
    Ref,
    ImpStar,
    RefImpStar,
    Univ,
    TriLam,
    App,
    RefLamApp,
    TriApp,
    RefRef,
    ImpStarRedexes,
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, opts: &[(u32, T)]) -> T {
    let total: u32 = opts.iter().map(|o| o.0).sum();
    let mut k = rng.gen_range(0..total);
    for (w, o) in opts {
        if k < *w {
            return *o;
        }
        k -= w;
    }
    opts[opts.len() - 1].1
}

impl<'r> UntypedGen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng) -> UntypedGen<'r> {
        UntypedGen {
            rng,
            terms: vec![Name::new("x"), Name::new("y"), Name::new("f")],
            proofs: vec![Name::new("p"), Name::new("q")],
            paths: vec![Name::new("e")],
            counter: 0,
        }
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        Name::new(format!("{base}{}", self.counter))
    }

    /// A random composition of `m` into `k` positive parts; `m >= k`.
    fn parts(&mut self, m: usize, k: usize) -> Vec<usize> {
        let mut out = vec![1; k];
        for _ in 0..m - k {
            let i = self.rng.gen_range(0..k);
            out[i] += 1;
        }
        out
    }

    /// A binder annotation of at most `max` nodes.
    fn ty(&mut self, max: usize) -> Type {
        if max >= 3 && self.rng.gen_bool(0.3) {
            Type::arrow(Type::Omega, Type::Omega)
        } else {
            Type::Omega
        }
    }

    pub fn expr(&mut self, sort: Sort, n: usize) -> Expr {
        match sort {
            Sort::Term => Expr::Term(self.term(n)),
            Sort::Proof => Expr::Proof(self.proof(n)),
            _ => Expr::Path(self.path(n)),
        }
    }

    fn bind<T>(&mut self, kind: Sort, names: &[Name], f: impl FnOnce(&mut Self) -> T) -> T {
        let stack = match kind {
            Sort::Term => &mut self.terms,
            Sort::Proof => &mut self.proofs,
            _ => &mut self.paths,
        };
        stack.extend(names.iter().cloned());
        let r = f(self);
        let stack = match kind {
            Sort::Term => &mut self.terms,
            Sort::Proof => &mut self.proofs,
            _ => &mut self.paths,
        };
        stack.truncate(stack.len() - names.len());
        r
    }

    fn lam_term(&mut self, n: usize) -> Term {
        let ty = self.ty(n - 2);
        let x = self.fresh("x");
        let body = self.bind(Sort::Term, std::slice::from_ref(&x), |g| {
            g.term(n - 1 - ty.size())
        });
        Term::lam(x, ty, body)
    }

    pub fn term(&mut self, n: usize) -> Term {
        let mut opts = vec![(2, UTerm::Leaf)];
        if n >= 3 {
            opts.extend([(2, UTerm::Imp), (1, UTerm::App), (1, UTerm::Lam)]);
        }
        if n >= 5 {
            opts.push((5, UTerm::Beta));
        }
        if n >= 11 {
            opts.push((6, UTerm::ImpRedexes));
        }
        match pick(self.rng, &opts) {
            UTerm::Leaf => {
                if self.rng.gen_bool(0.25) {
                    Term::Bot
                } else {
                    Term::var(self.terms.choose(self.rng).expect("pool").clone())
                }
            }
            UTerm::Imp => {
                let p = self.parts(n - 1, 2);
                Term::imp(self.term(p[0]), self.term(p[1]))
            }
            UTerm::App => {
                let p = self.parts(n - 1, 2);
                Term::app(self.term(p[0]), self.term(p[1]))
            }
            UTerm::ImpRedexes => {
                let p = self.parts(n - 9, 2);
                Term::imp(self.beta(p[0] + 4), self.beta(p[1] + 4))
            }
            UTerm::Lam => self.lam_term(n),
            UTerm::Beta => self.beta(n),
        }
    }

    /// `(\x:A. M) N` within `n >= 5` nodes.
    fn beta(&mut self, n: usize) -> Term {
        let p = self.parts(n - 1, 2);
        let (f, a) = if p[0] >= 3 { (p[0], p[1]) } else { (3, n - 4) };
        Term::app(self.lam_term(f), self.term(a))
    }

    fn lam_proof(&mut self, n: usize) -> Proof {
        let p = self.parts(n - 1, 2);
        let ann = self.term(p[0]);
        let h = self.fresh("p");
        let body = self.bind(Sort::Proof, std::slice::from_ref(&h), |g| g.proof(p[1]));
        Proof::lam(h, ann, body)
    }

    pub fn proof(&mut self, n: usize) -> Proof {
        let mut opts = vec![(2, UProof::Var)];
        if n >= 2 {
            opts.extend([(1, UProof::Plus), (1, UProof::Minus)]);
        }
        if n >= 3 {
            opts.extend([(1, UProof::Lam), (1, UProof::App), (3, UProof::HeadRedex)]);
        }
        if n >= 5 {
            opts.extend([(2, UProof::Beta), (3, UProof::AppliedRedex)]);
        }
        match pick(self.rng, &opts) {
            UProof::Var => Proof::var(self.proofs.choose(self.rng).expect("pool").clone()),
            UProof::Plus => Proof::plus(self.path(n - 1)),
            UProof::Minus => Proof::minus(self.path(n - 1)),
            UProof::Lam => self.lam_proof(n),
            UProof::App => {
                let p = self.parts(n - 1, 2);
                Proof::app(self.proof(p[0]), self.proof(p[1]))
            }
            UProof::HeadRedex => {
                let head = self.redex_head(n - 1);
                if self.rng.gen_bool(0.5) {
                    Proof::plus(head)
                } else {
                    Proof::minus(head)
                }
            }
            UProof::Beta => {
                let p = self.parts(n - 1, 2);
                let (f, a) = if p[0] >= 3 { (p[0], p[1]) } else { (3, n - 4) };
                Proof::app(self.lam_proof(f), self.proof(a))
            }
            UProof::AppliedRedex => {
                let p = self.parts(n - 2, 2);
                let (h, a) = if p[0] >= 2 { (p[0], p[1]) } else { (2, n - 4) };
                let head = self.redex_head(h);
                let head = if self.rng.gen_bool(0.5) {
                    Proof::plus(head)
                } else {
                    Proof::minus(head)
                };
                Proof::app(head, self.proof(a))
            }
        }
    }

    /// A path headed by `ref`, `univ` or `=>*`, the shapes `^+` and `^-`
    /// act on; `n >= 2`.
    fn redex_head(&mut self, n: usize) -> Path {
        let mut opts = vec![(2, UPath::Ref)];
        if n >= 3 {
            opts.push((2, UPath::ImpStar));
        }
        if n >= 5 {
            opts.extend([(2, UPath::RefImpStar), (2, UPath::Univ)]);
        }
        let opt = pick(self.rng, &opts);
        self.path_by(opt, n)
    }

    pub fn path(&mut self, n: usize) -> Path {
        let mut opts = vec![(2, UPath::Var)];
        if n >= 2 {
            opts.push((1, UPath::Ref));
        }
        if n >= 3 {
            opts.extend([(1, UPath::ImpStar), (1, UPath::TriLam)]);
        }
        if n >= 5 {
            opts.extend([(2, UPath::RefImpStar), (1, UPath::Univ), (1, UPath::App)]);
        }
        if n >= 7 {
            opts.extend([(2, UPath::TriApp), (2, UPath::RefRef)]);
        }
        if n >= 8 {
            opts.push((2, UPath::RefLamApp));
        }
        if n >= 17 {
            opts.push((3, UPath::ImpStarRedexes));
        }
        let opt = pick(self.rng, &opts);
        self.path_by(opt, n)
    }

    fn tri_lam(&mut self, n: usize) -> Path {
        let ty = self.ty(n - 2);
        let (e, x, y) = (self.fresh("e"), self.fresh("x"), self.fresh("y"));
        let body = self.bind(Sort::Term, &[x.clone(), y.clone()], |g| {
            g.bind(Sort::Path, std::slice::from_ref(&e), |g| {
                g.path(n - 1 - ty.size())
            })
        });
        Path::tri_lam(e, x, y, ty, body)
    }

    fn path_by(&mut self, opt: UPath, n: usize) -> Path {
        match opt {
            UPath::Var => Path::var(self.paths.choose(self.rng).expect("pool").clone()),
            UPath::Ref => Path::Ref(self.term(n - 1)),
            UPath::ImpStar => {
                let p = self.parts(n - 1, 2);
                Path::imp_star(self.path(p[0]), self.path(p[1]))
            }
            UPath::RefImpStar => {
                let p = self.parts(n - 3, 2);
                Path::imp_star(Path::Ref(self.term(p[0])), Path::Ref(self.term(p[1])))
            }
            UPath::Univ => {
                let p = self.parts(n - 1, 4);
                Path::univ(
                    self.term(p[0]),
                    self.term(p[1]),
                    self.proof(p[2]),
                    self.proof(p[3]),
                )
            }
            UPath::TriLam => self.tri_lam(n),
            UPath::App => {
                let p = self.parts(n - 1, 4);
                Path::app(
                    self.path(p[0]),
                    self.term(p[1]),
                    self.term(p[2]),
                    self.path(p[3]),
                )
            }
            UPath::RefLamApp => {
                let p = self.parts(n - 4, 4);
                let f = Path::Ref(self.lam_term(p[0] + 2));
                Path::app(f, self.term(p[1]), self.term(p[2]), self.path(p[3]))
            }
            UPath::TriApp => {
                let p = self.parts(n - 3, 4);
                let f = self.tri_lam(p[0] + 2);
                Path::app(f, self.term(p[1]), self.term(p[2]), self.path(p[3]))
            }
            UPath::ImpStarRedexes => {
                let p = self.parts(n - 15, 2);
                let (a, b) = (
                    self.path_by(UPath::TriApp, p[0] + 7),
                    self.path_by(UPath::TriApp, p[1] + 7),
                );
                Path::imp_star(a, b)
            }
            UPath::RefRef => {
                let p = self.parts(n - 3, 4);
                let f = Path::Ref(self.term(p[0]));
                Path::app(
                    f,
                    self.term(p[1]),
                    self.term(p[2]),
                    Path::Ref(self.term(p[3])),
                )
            }
        }
    }
}

/// An untyped expression of a random sort within `size` nodes.
pub fn untyped(cfg: &GenConfig) -> Expr {
    let mut rng = cfg.rng();
    let sort = [Sort::Term, Sort::Proof, Sort::Path][rng.gen_range(0..3)];
    let e = UntypedGen::new(&mut rng).expr(sort, cfg.size);
    debug_assert!(e.size() <= cfg.size, "{e} exceeds {}", cfg.size);
    e
}

/// `ctx` with `extra` fresh declarations inserted at random positions.
pub fn weaken(rng: &mut ChaCha8Rng, weights: Weights, ctx: &Context, extra: usize) -> Context {
    let mut entries = ctx.entries().to_vec();
    for k in 0..extra {
        let i = rng.gen_range(0..=entries.len());
        let prefix: Context = entries[..i].iter().cloned().collect();
        let mut g = TypedGen::new(rng, weights, prefix);
        let name = (0..)
            .map(|j| Name::new(format!("z{k}_{j}")))
            .find(|n| !entries.iter().any(|e| e.name() == n))
            .expect("unbounded");
        let entry = match g.rng.gen_range(0..3) {
            0 => Entry::Term(name, g.random_type(2)),
            1 => Entry::Proof(name, g.prop(3)),
            _ => {
                let ty = g.random_type(1);
                let (l, r) = (g.term(&ty, 2), g.term(&ty, 2));
                Entry::Path(name, Equation::new(l, ty, r))
            }
        };
        entries.insert(i, entry);
    }
    entries.into_iter().collect()
}
