//! Typing: contexts, inference and checking for terms, proofs and paths.
//!
//! Inference is syntax-directed. Conversion enters in three places: exposing
//! the implication of a proof in function position, checking a proof or path
//! against a stated classifier, and checking the argument of a path
//! application against its endpoint annotations.
//!
//! A `lll` path is checked by pushing the target equation inward. Inferring
//! one recovers the endpoint functions from the body's equation: `M x` with
//! `x` not free in `M` yields `M`, otherwise the side is abstracted over its
//! own variable.

pub mod derivation;

use std::fmt;
use std::sync::Arc;

use crate::parse::Classifier;
use crate::reduce::{convertible, normalize_term, Indeterminate, Reducible, DEFAULT_FUEL};
use crate::syntax::{
    Binding, Close, Depth, Equation, Expr, FreeVars, Hint, Name, Path, Proof, Term, TriHints, Type,
    Var,
};

use derivation::{Derivation, Discard, Judgement, Record, Recorder, RuleName};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Term(Name, Type),
    Proof(Name, Term),
    Path(Name, Equation),
}

impl Entry {
    pub fn name(&self) -> &Name {
        match self {
            Entry::Term(n, _) | Entry::Proof(n, _) | Entry::Path(n, _) => n,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Term(x, a) => write!(f, "{x} : {a}"),
            Entry::Proof(p, phi) => write!(f, "{p} : {phi}"),
            Entry::Path(e, eq) => write!(f, "{e} : {eq}"),
        }
    }
}

/// An ordered list of declarations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<Entry>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn with(mut self, entry: Entry) -> Context {
        self.entries.push(entry);
        self
    }

    pub fn term(self, x: impl Into<Name>, a: Type) -> Context {
        self.with(Entry::Term(x.into(), a))
    }

    pub fn proof(self, p: impl Into<Name>, phi: Term) -> Context {
        self.with(Entry::Proof(p.into(), phi))
    }

    pub fn path(self, e: impl Into<Name>, eq: Equation) -> Context {
        self.with(Entry::Path(e.into(), eq))
    }

    pub fn lookup_term(&self, x: &Name) -> Option<&Type> {
        self.entries.iter().rev().find_map(|e| match e {
            Entry::Term(n, a) if n == x => Some(a),
            _ => None,
        })
    }

    pub fn lookup_proof(&self, p: &Name) -> Option<&Term> {
        self.entries.iter().rev().find_map(|e| match e {
            Entry::Proof(n, phi) if n == p => Some(phi),
            _ => None,
        })
    }

    pub fn lookup_path(&self, e: &Name) -> Option<&Equation> {
        self.entries.iter().rev().find_map(|en| match en {
            Entry::Path(n, eq) if n == e => Some(eq),
            _ => None,
        })
    }

    /// Whether any entry of any kind uses this name.
    pub fn declares(&self, n: &Name) -> bool {
        self.entries.iter().any(|e| e.name() == n)
    }

    pub(crate) fn declares_same_kind(&self, entry: &Entry) -> bool {
        self.entries.iter().any(|e| {
            e.name() == entry.name() && std::mem::discriminant(e) == std::mem::discriminant(entry)
        })
    }

    pub fn has_term_vars(&self) -> bool {
        self.entries.iter().any(|e| matches!(e, Entry::Term(..)))
    }

    /// The entries needed to classify anything with free variables `fv`:
    /// those naming a variable in `fv`, closed under the free variables of
    /// their own classifiers. Order is preserved.
    pub fn restrict(&self, fv: &FreeVars) -> Context {
        let mut need = fv.clone();
        let mut keep = vec![false; self.entries.len()];
        for (i, e) in self.entries.iter().enumerate().rev() {
            let used = match e {
                Entry::Term(n, _) => need.terms.contains(n),
                Entry::Proof(n, _) => need.proofs.contains(n),
                Entry::Path(n, _) => need.paths.contains(n),
            };
            if used {
                keep[i] = true;
                match e {
                    Entry::Term(..) => {}
                    Entry::Proof(_, phi) => need.extend(phi.free_vars()),
                    Entry::Path(_, eq) => need.extend(eq.free_vars()),
                }
            }
        }
        self.entries
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// `true` if every entry of `self` occurs in `other` in the same order.
    pub fn is_subsequence_of(&self, other: &Context) -> bool {
        let mut it = other.entries.iter();
        self.entries.iter().all(|e| it.any(|o| o == e))
    }
}

impl FromIterator<Entry> for Context {
    fn from_iter<I: IntoIterator<Item = Entry>>(iter: I) -> Context {
        Context {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    UnboundVariable,
    KindMismatch,
    NotAnImplication,
    NotAnArrow,
    NotOmegaEquation,
    EndpointMismatch,
    NotConvertible,
    ContextIllFormed,
    FuelExhausted,
    TriLamShapeError,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Steps from the root of the checked expression to the offending node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Location(pub Vec<String>);

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for s in &self.0 {
            write!(f, "/{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("ERROR {kind} at {location}: {detail}")]
pub struct TypeError {
    pub kind: ErrorKind,
    pub location: Location,
    pub detail: String,
    /// For `ContextIllFormed`, the failure inside the offending entry.
    pub cause: Option<Box<TypeError>>,
}

impl TypeError {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> TypeError {
        TypeError {
            kind,
            location: Location::default(),
            detail: detail.into(),
            cause: None,
        }
    }

    fn within(mut self, step: &str) -> TypeError {
        self.location.0.insert(0, step.to_owned());
        self
    }
}

type Result<T> = std::result::Result<T, TypeError>;

trait Within<T> {
    fn within(self, step: &str) -> Result<T>;
}

impl<T> Within<T> for Result<T> {
    fn within(self, step: &str) -> Result<T> {
        self.map_err(|e| e.within(step))
    }
}

fn fuel_error(_: Indeterminate) -> TypeError {
    TypeError::new(
        ErrorKind::FuelExhausted,
        "conversion did not finish within the fuel budget",
    )
}

fn free(n: &Name) -> Term {
    Term::Var(Var::Free(n.clone()))
}

/// The typing judgements of the system, with a fuel budget for conversion.
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub fuel: usize,
}

impl Default for Checker {
    fn default() -> Checker {
        Checker { fuel: DEFAULT_FUEL }
    }
}

impl Checker {
    pub fn new(fuel: usize) -> Checker {
        Checker { fuel }
    }

    fn engine<R: Recorder>(&self, ctx: &Context) -> Engine<R> {
        Engine {
            fuel: self.fuel,
            ctx: ctx.clone(),
            _r: std::marker::PhantomData,
        }
    }

    pub fn check_context(&self, ctx: &Context) -> Result<()> {
        self.engine::<Discard>(&Context::new())
            .context(ctx)
            .map(drop)
    }

    pub fn infer_type(&self, ctx: &Context, m: &Term) -> Result<Type> {
        self.engine::<Discard>(ctx).term(m).map(|r| r.0)
    }

    pub fn infer_prop(&self, ctx: &Context, d: &Proof) -> Result<Term> {
        self.engine::<Discard>(ctx).proof(d).map(|r| r.0)
    }

    pub fn infer_equation(&self, ctx: &Context, p: &Path) -> Result<Equation> {
        self.engine::<Discard>(ctx).path(p).map(|r| r.0)
    }

    pub fn check_term(&self, ctx: &Context, m: &Term, a: &Type) -> Result<()> {
        self.engine::<Discard>(ctx).check_term(m, a).map(drop)
    }

    pub fn check_proof(&self, ctx: &Context, d: &Proof, phi: &Term) -> Result<()> {
        self.engine::<Discard>(ctx).check_proof(d, phi).map(drop)
    }

    pub fn check_path(&self, ctx: &Context, p: &Path, eq: &Equation) -> Result<()> {
        self.engine::<Discard>(ctx).check_path(p, eq).map(drop)
    }

    /// Checks that `phi` is a proposition.
    pub fn check_prop(&self, ctx: &Context, phi: &Term) -> Result<()> {
        self.check_term(ctx, phi, &Type::Omega)
    }

    /// Checks that both endpoints of `eq` have its type.
    pub fn check_equation(&self, ctx: &Context, eq: &Equation) -> Result<()> {
        self.check_term(ctx, &eq.lhs, &eq.ty).within("lhs")?;
        self.check_term(ctx, &eq.rhs, &eq.ty).within("rhs")
    }

    /// Infers the classifier of a term, proof or path.
    pub fn infer(&self, ctx: &Context, e: &Expr) -> Result<Classifier> {
        match e {
            Expr::Term(m) => self.infer_type(ctx, m).map(Classifier::Type),
            Expr::Proof(d) => self.infer_prop(ctx, d).map(Classifier::Prop),
            Expr::Path(p) => self.infer_equation(ctx, p).map(Classifier::Equation),
            Expr::Type(_) | Expr::Equation(_) => Err(TypeError::new(
                ErrorKind::KindMismatch,
                format!("{} has no classifier", e.sort()),
            )),
        }
    }

    /// Checks that `c` is well formed and classifies `e`.
    pub fn check(&self, ctx: &Context, e: &Expr, c: &Classifier) -> Result<()> {
        match (e, c) {
            (Expr::Term(m), Classifier::Type(a)) => self.check_term(ctx, m, a),
            (Expr::Proof(d), Classifier::Prop(phi)) => {
                self.check_prop(ctx, phi).within("proposition")?;
                self.check_proof(ctx, d, phi)
            }
            (Expr::Path(p), Classifier::Equation(eq)) => {
                self.check_equation(ctx, eq).within("equation")?;
                self.check_path(ctx, p, eq)
            }
            _ => Err(TypeError::new(
                ErrorKind::KindMismatch,
                format!("a {} cannot be classified by {c}", e.sort()),
            )),
        }
    }

    pub fn derive_context(&self, ctx: &Context) -> Result<Vec<Derivation>> {
        self.engine::<Record>(&Context::new()).context(ctx)
    }

    pub fn derive_type(&self, ctx: &Context, m: &Term) -> Result<Derivation> {
        self.engine::<Record>(ctx).term(m).map(|r| r.1)
    }

    pub fn derive_prop(&self, ctx: &Context, d: &Proof) -> Result<Derivation> {
        self.engine::<Record>(ctx).proof(d).map(|r| r.1)
    }

    pub fn derive_equation(&self, ctx: &Context, p: &Path) -> Result<Derivation> {
        self.engine::<Record>(ctx).path(p).map(|r| r.1)
    }

    pub fn derive_check_proof(&self, ctx: &Context, d: &Proof, phi: &Term) -> Result<Derivation> {
        self.engine::<Record>(ctx).check_proof(d, phi)
    }

    pub fn derive_check_path(&self, ctx: &Context, p: &Path, eq: &Equation) -> Result<Derivation> {
        self.engine::<Record>(ctx).check_path(p, eq)
    }
}

struct Engine<R: Recorder> {
    fuel: usize,
    ctx: Context,
    _r: std::marker::PhantomData<R>,
}

impl<R: Recorder> Engine<R> {
    /// A name based on `hint` that is declared nowhere in the context and
    /// does not occur in `avoid`.
    fn fresh(&self, hint: &Hint, avoid: &FreeVars, taken: &[&Name]) -> Name {
        let base = if hint.as_str().is_empty() {
            "x"
        } else {
            hint.as_str()
        };
        let mut s = base.to_owned();
        loop {
            let n = Name::new(&s);
            if !self.ctx.declares(&n) && !avoid.contains_name(&n) && !taken.contains(&&n) {
                return n;
            }
            s.push('\'');
        }
    }

    fn under<T>(
        &mut self,
        entries: Vec<Entry>,
        f: impl FnOnce(&mut Self) -> Result<T>,
    ) -> Result<T> {
        let n = entries.len();
        self.ctx.entries.extend(entries);
        let r = f(self);
        let len = self.ctx.entries.len();
        self.ctx.entries.truncate(len - n);
        r
    }

    fn context(&mut self, target: &Context) -> Result<Vec<R::D>> {
        let mut out = Vec::with_capacity(target.len());
        for (i, entry) in target.entries.iter().enumerate() {
            let wrap = |cause: TypeError| TypeError {
                kind: ErrorKind::ContextIllFormed,
                location: Location(vec![format!("context[{i}]")]),
                detail: format!("declaration `{entry}` is ill-formed: {}", cause.detail),
                cause: Some(Box::new(cause)),
            };
            if self.ctx.declares_same_kind(entry) {
                return Err(wrap(TypeError::new(
                    ErrorKind::KindMismatch,
                    format!("`{}` is declared twice", entry.name()),
                )));
            }
            let d = match entry {
                Entry::Term(..) => R::node(RuleName::CtxT, || Judgement::Valid, vec![], vec![]),
                Entry::Proof(_, phi) => {
                    let dp = self.check_term(phi, &Type::Omega).map_err(wrap)?;
                    R::node(RuleName::CtxP, || Judgement::Valid, vec![], vec![dp])
                }
                Entry::Path(_, eq) => {
                    let dl = self
                        .check_term(&eq.lhs, &eq.ty)
                        .within("lhs")
                        .map_err(wrap)?;
                    let dr = self
                        .check_term(&eq.rhs, &eq.ty)
                        .within("rhs")
                        .map_err(wrap)?;
                    R::node(RuleName::CtxE, || Judgement::Valid, vec![], vec![dl, dr])
                }
            };
            out.push(d);
            self.ctx.entries.push(entry.clone());
        }
        Ok(out)
    }

    fn misuse(&self, n: &Name, expected: &str) -> TypeError {
        let actual = self.ctx.entries.iter().rev().find(|e| e.name() == n);
        match actual {
            Some(Entry::Term(..)) => TypeError::new(
                ErrorKind::KindMismatch,
                format!("`{n}` is a term variable, expected a {expected} variable"),
            ),
            Some(Entry::Proof(..)) => TypeError::new(
                ErrorKind::KindMismatch,
                format!("`{n}` is a proof variable, expected a {expected} variable"),
            ),
            Some(Entry::Path(..)) => TypeError::new(
                ErrorKind::KindMismatch,
                format!("`{n}` is a path variable, expected a {expected} variable"),
            ),
            None => TypeError::new(ErrorKind::UnboundVariable, format!("`{n}` is not declared")),
        }
    }

    fn term(&mut self, m: &Term) -> Result<(Type, R::D)> {
        match m {
            Term::Var(Var::Free(x)) => match self.ctx.lookup_term(x) {
                Some(a) => {
                    let a = a.clone();
                    let d = R::node(
                        RuleName::VarT,
                        || Judgement::Term(m.clone(), a.clone()),
                        vec![],
                        vec![],
                    );
                    Ok((a, d))
                }
                None => Err(self.misuse(x, "term")),
            },
            Term::Var(Var::Bound(i)) => Err(TypeError::new(
                ErrorKind::UnboundVariable,
                format!("dangling bound index {i}"),
            )),
            Term::Bot => {
                let d = R::node(
                    RuleName::Bot,
                    || Judgement::Term(Term::Bot, Type::Omega),
                    vec![],
                    vec![],
                );
                Ok((Type::Omega, d))
            }
            Term::Imp(a, b) => {
                let da = self.check_term(a, &Type::Omega).within("lhs")?;
                let db = self.check_term(b, &Type::Omega).within("rhs")?;
                let d = R::node(
                    RuleName::Imp,
                    || Judgement::Term(m.clone(), Type::Omega),
                    vec![],
                    vec![da, db],
                );
                Ok((Type::Omega, d))
            }
            Term::Lam(h, a, body) => {
                let x = self.fresh(h, &body.free_vars(), &[]);
                let opened = Term::instantiate(body, &free(&x));
                let (b, db) = self
                    .under(vec![Entry::Term(x.clone(), a.clone())], |s| s.term(&opened))
                    .within("body")?;
                let ty = Type::arrow(a.clone(), b);
                let d = R::node(
                    RuleName::LamT,
                    || Judgement::Term(m.clone(), ty.clone()),
                    vec![x],
                    vec![db],
                );
                Ok((ty, d))
            }
            Term::App(f, a) => {
                let (tf, df) = self.term(f).within("fun")?;
                let Type::Arrow(dom, cod) = &tf else {
                    return Err(TypeError::new(
                        ErrorKind::NotAnArrow,
                        format!("`{f}` has type {tf}, which is not a function type"),
                    )
                    .within("fun"));
                };
                let da = self.check_term(a, dom).within("arg")?;
                let b = (**cod).clone();
                let d = R::node(
                    RuleName::AppT,
                    || Judgement::Term(m.clone(), b.clone()),
                    vec![],
                    vec![df, da],
                );
                Ok((b, d))
            }
        }
    }

    fn check_term(&mut self, m: &Term, a: &Type) -> Result<R::D> {
        let (b, d) = self.term(m)?;
        if &b == a {
            Ok(d)
        } else {
            Err(TypeError::new(
                ErrorKind::KindMismatch,
                format!("`{m}` has type {b}, expected {a}"),
            ))
        }
    }

    fn proof(&mut self, delta: &Proof) -> Result<(Term, R::D)> {
        match delta {
            Proof::Var(Var::Free(p)) => match self.ctx.lookup_proof(p) {
                Some(phi) => {
                    let phi = phi.clone();
                    let d = R::node(
                        RuleName::VarP,
                        || Judgement::Proof(delta.clone(), phi.clone()),
                        vec![],
                        vec![],
                    );
                    Ok((phi, d))
                }
                None => Err(self.misuse(p, "proof")),
            },
            Proof::Var(Var::Bound(i)) => Err(TypeError::new(
                ErrorKind::UnboundVariable,
                format!("dangling bound index {i}"),
            )),
            Proof::Lam(h, phi, body) => {
                let dphi = self.check_term(phi, &Type::Omega).within("ann")?;
                let mut avoid = body.free_vars();
                avoid.extend(phi.free_vars());
                let p = self.fresh(h, &avoid, &[]);
                let opened = Proof::instantiate(body, &Proof::Var(Var::Free(p.clone())));
                let (psi, db) = self
                    .under(vec![Entry::Proof(p.clone(), phi.clone())], |s| {
                        s.proof(&opened)
                    })
                    .within("body")?;
                let prop = Term::imp(phi.clone(), psi);
                let d = R::node(
                    RuleName::LamP,
                    || Judgement::Proof(delta.clone(), prop.clone()),
                    vec![p],
                    vec![dphi, db],
                );
                Ok((prop, d))
            }
            Proof::App(f, a) => {
                let (phi, df) = self.proof(f).within("fun")?;
                let norm = normalize_term(&phi, self.fuel);
                if !norm.status.is_normal() {
                    return Err(fuel_error(Indeterminate).within("fun"));
                }
                let Term::Imp(ante, cons) = &norm.result else {
                    return Err(TypeError::new(
                        ErrorKind::NotAnImplication,
                        format!("`{f}` proves `{phi}`, which does not reduce to an implication"),
                    )
                    .within("fun"));
                };
                let df = if norm.result == phi {
                    df
                } else {
                    let dn = self.check_term(&norm.result, &Type::Omega).within("fun")?;
                    let target = norm.result.clone();
                    R::node(
                        RuleName::ConvP,
                        || Judgement::Proof((**f).clone(), target),
                        vec![],
                        vec![df, dn],
                    )
                };
                let da = self.check_proof(a, ante).within("arg")?;
                let psi = (**cons).clone();
                let d = R::node(
                    RuleName::AppP,
                    || Judgement::Proof(delta.clone(), psi.clone()),
                    vec![],
                    vec![df, da],
                );
                Ok((psi, d))
            }
            Proof::Plus(p) | Proof::Minus(p) => {
                let plus = matches!(delta, Proof::Plus(_));
                let (eq, dp) = self.path(p).within("path")?;
                if eq.ty != Type::Omega {
                    return Err(TypeError::new(
                        ErrorKind::NotOmegaEquation,
                        format!(
                            "`{p}` proves `{eq}`, which is not an equation between propositions"
                        ),
                    )
                    .within("path"));
                }
                let prop = if plus {
                    Term::imp(eq.lhs, eq.rhs)
                } else {
                    Term::imp(eq.rhs, eq.lhs)
                };
                let rule = if plus {
                    RuleName::Plus
                } else {
                    RuleName::Minus
                };
                let d = R::node(
                    rule,
                    || Judgement::Proof(delta.clone(), prop.clone()),
                    vec![],
                    vec![dp],
                );
                Ok((prop, d))
            }
        }
    }

    fn convert(&self, a: &Term, b: &Term) -> Result<bool> {
        convertible(a, b, self.fuel).map_err(fuel_error)
    }

    fn check_proof(&mut self, delta: &Proof, phi: &Term) -> Result<R::D> {
        let (psi, d) = self.proof(delta)?;
        if &psi == phi {
            return Ok(d);
        }
        if !self.convert(&psi, phi)? {
            return Err(TypeError::new(
                ErrorKind::NotConvertible,
                format!("`{delta}` proves `{psi}`, expected `{phi}`"),
            ));
        }
        let dphi = self.check_term(phi, &Type::Omega)?;
        Ok(R::node(
            RuleName::ConvP,
            || Judgement::Proof(delta.clone(), phi.clone()),
            vec![],
            vec![d, dphi],
        ))
    }

    fn path(&mut self, p: &Path) -> Result<(Equation, R::D)> {
        match p {
            Path::Var(Var::Free(e)) => match self.ctx.lookup_path(e) {
                Some(eq) => {
                    let eq = eq.clone();
                    let d = R::node(
                        RuleName::VarE,
                        || Judgement::Path(p.clone(), eq.clone()),
                        vec![],
                        vec![],
                    );
                    Ok((eq, d))
                }
                None => Err(self.misuse(e, "path")),
            },
            Path::Var(Var::Bound(i)) => Err(TypeError::new(
                ErrorKind::UnboundVariable,
                format!("dangling bound index {i}"),
            )),
            Path::Ref(m) => {
                let (a, dm) = self.term(m).within("term")?;
                let eq = Equation::new(m.clone(), a, m.clone());
                let d = R::node(
                    RuleName::Ref,
                    || Judgement::Path(p.clone(), eq.clone()),
                    vec![],
                    vec![dm],
                );
                Ok((eq, d))
            }
            Path::ImpStar(l, r) => {
                let (e1, d1) = self.omega_path(l).within("lhs")?;
                let (e2, d2) = self.omega_path(r).within("rhs")?;
                let eq = Equation::new(
                    Term::imp(e1.lhs, e2.lhs),
                    Type::Omega,
                    Term::imp(e1.rhs, e2.rhs),
                );
                let d = R::node(
                    RuleName::ImpStar,
                    || Judgement::Path(p.clone(), eq.clone()),
                    vec![],
                    vec![d1, d2],
                );
                Ok((eq, d))
            }
            Path::Univ(phi, psi, fwd, bwd) => {
                self.check_term(phi, &Type::Omega).within("src")?;
                self.check_term(psi, &Type::Omega).within("tgt")?;
                let df = self
                    .check_proof(fwd, &Term::imp(phi.clone(), psi.clone()))
                    .within("fwd")?;
                let db = self
                    .check_proof(bwd, &Term::imp(psi.clone(), phi.clone()))
                    .within("bwd")?;
                let eq = Equation::new(phi.clone(), Type::Omega, psi.clone());
                let d = R::node(
                    RuleName::Univ,
                    || Judgement::Path(p.clone(), eq.clone()),
                    vec![],
                    vec![df, db],
                );
                Ok((eq, d))
            }
            Path::TriLam(h, a, body) => self.infer_tri_lam(p, h, a, body),
            Path::App(f, n, n2, q) => {
                let (ef, df) = self.path(f).within("fun")?;
                let Type::Arrow(dom, cod) = &ef.ty else {
                    return Err(TypeError::new(
                        ErrorKind::NotAnArrow,
                        format!("`{f}` proves `{ef}`, which is not an equation between functions"),
                    )
                    .within("fun"));
                };
                let dn = self.check_term(n, dom).within("left")?;
                let dn2 = self.check_term(n2, dom).within("right")?;
                let target = Equation::new(n.clone(), (**dom).clone(), n2.clone());
                let dq = self
                    .check_path(q, &target)
                    .map_err(|e| {
                        if e.kind == ErrorKind::NotConvertible && e.location.0.is_empty() {
                            TypeError {
                                kind: ErrorKind::EndpointMismatch,
                                ..e
                            }
                        } else {
                            e
                        }
                    })
                    .within("arg")?;
                let eq = Equation::new(
                    Term::app(ef.lhs, n.clone()),
                    (**cod).clone(),
                    Term::app(ef.rhs, n2.clone()),
                );
                let d = R::node(
                    RuleName::AppE,
                    || Judgement::Path(p.clone(), eq.clone()),
                    vec![],
                    vec![df, dq, dn, dn2],
                );
                Ok((eq, d))
            }
        }
    }

    /// The first term on the reduction sequence of `t` of the form `F arg`.
    fn expose_app(&self, t: &Term, arg: &Term) -> Option<Term> {
        let mut cur = t.clone();
        for _ in 0..self.fuel {
            if matches!(&cur, Term::App(_, a) if **a == *arg) {
                return Some(cur);
            }
            cur = cur.step_cbn()?.result;
        }
        None
    }

    /// `P @[N, N'] Q` against `F N =[B] G N'`: `P` is checked against
    /// `F = G` instead of inferred.
    fn check_path_app(
        &mut self,
        p: &Path,
        (f, n, n2, q): (&Path, &Term, &Term, &Path),
        (f1, f2): (&Term, &Term),
        eq: &Equation,
    ) -> Result<R::D> {
        let (dom, dn) = self.term(n).within("left")?;
        let dn2 = self.check_term(n2, &dom).within("right")?;
        let fun = Equation::new(
            f1.clone(),
            Type::arrow(dom.clone(), eq.ty.clone()),
            f2.clone(),
        );
        let df = self.check_path(f, &fun).within("fun")?;
        let dq = self
            .check_path(q, &Equation::new(n.clone(), dom, n2.clone()))
            .within("arg")?;
        Ok(R::node(
            RuleName::AppE,
            || Judgement::Path(p.clone(), eq.clone()),
            vec![],
            vec![df, dq, dn, dn2],
        ))
    }

    fn omega_path(&mut self, p: &Path) -> Result<(Equation, R::D)> {
        let (eq, d) = self.path(p)?;
        if eq.ty != Type::Omega {
            return Err(TypeError::new(
                ErrorKind::NotOmegaEquation,
                format!("`{p}` proves `{eq}`, which is not an equation between propositions"),
            ));
        }
        Ok((eq, d))
    }

    fn tri_names(&self, h: &TriHints, avoid: &FreeVars) -> (Name, Name, Name) {
        let e = self.fresh(&h.e, avoid, &[]);
        let x = self.fresh(&h.x, avoid, &[&e]);
        let y = self.fresh(&h.y, avoid, &[&e, &x]);
        (e, x, y)
    }

    fn tri_entries(e: &Name, x: &Name, y: &Name, a: &Type) -> Vec<Entry> {
        vec![
            Entry::Term(x.clone(), a.clone()),
            Entry::Term(y.clone(), a.clone()),
            Entry::Path(e.clone(), Equation::new(free(x), a.clone(), free(y))),
        ]
    }

    fn infer_tri_lam(
        &mut self,
        p: &Path,
        h: &TriHints,
        a: &Type,
        body: &Path,
    ) -> Result<(Equation, R::D)> {
        let (e, x, y) = self.tri_names(h, &body.free_vars());
        let opened =
            Path::instantiate(body, &free(&x), &free(&y), &Path::Var(Var::Free(e.clone())));
        let (eq, m, n, dbody) = self
            .under(Self::tri_entries(&e, &x, &y, a), |s| {
                let (inner, db) = s.path(&opened)?;
                let m = s.endpoint_function(&inner.lhs, &x, &y, a, h.x.clone())?;
                let n = s.endpoint_function(&inner.rhs, &y, &x, a, h.y.clone())?;
                let target = Equation::new(
                    Term::app(m.clone(), free(&x)),
                    inner.ty.clone(),
                    Term::app(n.clone(), free(&y)),
                );
                let db = if target == inner {
                    db
                } else {
                    let dl = s.check_term(&target.lhs, &target.ty)?;
                    let dr = s.check_term(&target.rhs, &target.ty)?;
                    let t = target.clone();
                    R::node(
                        RuleName::ConvE,
                        || Judgement::Path(opened.clone(), t),
                        vec![],
                        vec![db, dl, dr],
                    )
                };
                Ok((inner, m, n, db))
            })
            .within("body")?;
        let ty = Type::arrow(a.clone(), eq.ty);
        let dm = self.check_term(&m, &ty).within("body")?;
        let dn = self.check_term(&n, &ty).within("body")?;
        let result = Equation::new(m, ty, n);
        let d = R::node(
            RuleName::Lll,
            || Judgement::Path(p.clone(), result.clone()),
            vec![e, x, y],
            vec![dbody, dm, dn],
        );
        Ok((result, d))
    }

    /// A function `F` with `F own ≃ side` and neither variable free in `F`.
    fn endpoint_function(
        &self,
        side: &Term,
        own: &Name,
        other: &Name,
        a: &Type,
        hint: Hint,
    ) -> Result<Term> {
        let attempt = |t: &Term| -> Option<Term> {
            if let Term::App(f, arg) = t {
                if matches!(&**arg, Term::Var(Var::Free(v)) if v == own) {
                    let fv = f.free_vars();
                    if !fv.terms.contains(own) && !fv.terms.contains(other) {
                        return Some((**f).clone());
                    }
                }
            }
            if t.free_vars().terms.contains(other) {
                return None;
            }
            let closed = t.close(&Close::terms(std::slice::from_ref(own)), Depth::default());
            Some(Term::Lam(hint.clone(), a.clone(), Arc::new(closed)))
        };
        if let Some(f) = attempt(side) {
            return Ok(f);
        }
        let norm = normalize_term(side, self.fuel);
        if !norm.status.is_normal() {
            return Err(fuel_error(Indeterminate));
        }
        attempt(&norm.result).ok_or_else(|| {
            TypeError::new(
                ErrorKind::TriLamShapeError,
                format!("`{side}` depends on `{other}`, so no endpoint function can be read off"),
            )
        })
    }

    fn check_path(&mut self, p: &Path, eq: &Equation) -> Result<R::D> {
        if let (Path::TriLam(h, a, body), Type::Arrow(dom, cod)) = (p, &eq.ty) {
            if a != &**dom {
                return Err(TypeError::new(
                    ErrorKind::KindMismatch,
                    format!("`lll` binds variables of type {a}, expected {dom}"),
                ));
            }
            let mut avoid = body.free_vars();
            avoid.extend(eq.free_vars());
            let (e, x, y) = self.tri_names(h, &avoid);
            let opened =
                Path::instantiate(body, &free(&x), &free(&y), &Path::Var(Var::Free(e.clone())));
            let target = Equation::new(
                Term::app(eq.lhs.clone(), free(&x)),
                (**cod).clone(),
                Term::app(eq.rhs.clone(), free(&y)),
            );
            let db = self
                .under(Self::tri_entries(&e, &x, &y, a), |s| {
                    s.check_path(&opened, &target)
                })
                .within("body")?;
            let dm = self.check_term(&eq.lhs, &eq.ty).within("lhs")?;
            let dn = self.check_term(&eq.rhs, &eq.ty).within("rhs")?;
            return Ok(R::node(
                RuleName::Lll,
                || Judgement::Path(p.clone(), eq.clone()),
                vec![e, x, y],
                vec![db, dm, dn],
            ));
        }
        if let Path::App(f, n, n2, q) = p {
            if let (Some(l), Some(r)) = (self.expose_app(&eq.lhs, n), self.expose_app(&eq.rhs, n2))
            {
                let exposed = Equation::new(l, eq.ty.clone(), r);
                if let (Term::App(f1, _), Term::App(f2, _)) = (&exposed.lhs, &exposed.rhs) {
                    if let Ok(d) = self.check_path_app(p, (f, n, n2, q), (f1, f2), &exposed) {
                        if &exposed == eq {
                            return Ok(d);
                        }
                        let dl = self.check_term(&eq.lhs, &eq.ty)?;
                        let dr = self.check_term(&eq.rhs, &eq.ty)?;
                        return Ok(R::node(
                            RuleName::ConvE,
                            || Judgement::Path(p.clone(), eq.clone()),
                            vec![],
                            vec![d, dl, dr],
                        ));
                    }
                }
            }
        }
        let (found, d) = self.path(p)?;
        if found.ty != eq.ty {
            return Err(TypeError::new(
                ErrorKind::KindMismatch,
                format!(
                    "`{p}` proves an equation at type {}, expected {}",
                    found.ty, eq.ty
                ),
            ));
        }
        if &found == eq {
            return Ok(d);
        }
        if !self.convert(&found.lhs, &eq.lhs)? || !self.convert(&found.rhs, &eq.rhs)? {
            return Err(TypeError::new(
                ErrorKind::NotConvertible,
                format!("`{p}` proves `{found}`, expected `{eq}`"),
            ));
        }
        let dl = self.check_term(&eq.lhs, &eq.ty)?;
        let dr = self.check_term(&eq.rhs, &eq.ty)?;
        Ok(R::node(
            RuleName::ConvE,
            || Judgement::Path(p.clone(), eq.clone()),
            vec![],
            vec![d, dl, dr],
        ))
    }
}
