//! Derivation trees and an independent validator that checks every node
//! against an instance of its typing rule.

use std::fmt;

use crate::reduce::convertible;
use crate::syntax::{Equation, Name, Path, Proof, Term, Type, Var};

use super::{Context, Entry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    Valid,
    Term(Term, Type),
    Proof(Proof, Term),
    Path(Path, Equation),
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgement::Valid => write!(f, "valid"),
            Judgement::Term(m, a) => write!(f, "{m} : {a}"),
            Judgement::Proof(d, phi) => write!(f, "{d} : {phi}"),
            Judgement::Path(p, eq) => write!(f, "{p} : {eq}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleName {
    CtxT,
    CtxP,
    CtxE,
    VarT,
    VarP,
    VarE,
    Bot,
    Imp,
    AppT,
    LamT,
    AppP,
    LamP,
    ConvP,
    Ref,
    ImpStar,
    Univ,
    Plus,
    Minus,
    Lll,
    AppE,
    ConvE,
}

impl RuleName {
    pub fn name(self) -> &'static str {
        match self {
            RuleName::CtxT => "ctx-T",
            RuleName::CtxP => "ctx-P",
            RuleName::CtxE => "ctx-E",
            RuleName::VarT => "var-T",
            RuleName::VarP => "var-P",
            RuleName::VarE => "var-E",
            RuleName::Bot => "bot",
            RuleName::Imp => "imp",
            RuleName::AppT => "app-T",
            RuleName::LamT => "lam-T",
            RuleName::AppP => "app-P",
            RuleName::LamP => "lam-P",
            RuleName::ConvP => "conv-P",
            RuleName::Ref => "ref",
            RuleName::ImpStar => "impstar",
            RuleName::Univ => "univ",
            RuleName::Plus => "plus",
            RuleName::Minus => "minus",
            RuleName::Lll => "lll",
            RuleName::AppE => "app-E",
            RuleName::ConvE => "conv-E",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A node of a derivation. `fresh` lists the names chosen for the variables a
/// binder rule introduces into the context of its first premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: RuleName,
    pub judgement: Judgement,
    pub fresh: Vec<Name>,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Indented rendering, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("({}) {}\n", self.rule, self.judgement));
        for p in &self.premises {
            p.render_into(depth + 1, out);
        }
    }
}

/// Builds derivation nodes, or nothing.
pub(crate) trait Recorder {
    type D;
    fn node(
        rule: RuleName,
        judgement: impl FnOnce() -> Judgement,
        fresh: Vec<Name>,
        premises: Vec<Self::D>,
    ) -> Self::D;
}

pub(crate) struct Record;
pub(crate) struct Discard;

impl Recorder for Record {
    type D = Derivation;
    fn node(
        rule: RuleName,
        judgement: impl FnOnce() -> Judgement,
        fresh: Vec<Name>,
        premises: Vec<Derivation>,
    ) -> Derivation {
        Derivation {
            rule,
            judgement: judgement(),
            fresh,
            premises,
        }
    }
}

impl Recorder for Discard {
    type D = ();
    fn node(_: RuleName, _: impl FnOnce() -> Judgement, _: Vec<Name>, _: Vec<()>) {}
}

/// A node that is not an instance of its rule.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid ({rule}) node for `{judgement}`: {reason}")]
pub struct InvalidDerivation {
    pub rule: RuleName,
    pub judgement: String,
    pub reason: String,
}

struct Validator {
    ctx: Context,
    fuel: usize,
}

type Check = Result<(), InvalidDerivation>;

fn fail(d: &Derivation, reason: impl Into<String>) -> InvalidDerivation {
    InvalidDerivation {
        rule: d.rule,
        judgement: d.judgement.to_string(),
        reason: reason.into(),
    }
}

fn fv(name: &Name) -> Term {
    Term::Var(Var::Free(name.clone()))
}

impl Validator {
    fn premises<'d>(
        &self,
        d: &'d Derivation,
        n: usize,
    ) -> Result<&'d [Derivation], InvalidDerivation> {
        if d.premises.len() == n {
            Ok(&d.premises)
        } else {
            Err(fail(
                d,
                format!("expected {n} premises, found {}", d.premises.len()),
            ))
        }
    }

    fn fresh<'d>(&self, d: &'d Derivation, n: usize) -> Result<&'d [Name], InvalidDerivation> {
        if d.fresh.len() != n {
            return Err(fail(d, "wrong number of fresh variables"));
        }
        for x in &d.fresh {
            if self.ctx.declares(x) {
                return Err(fail(d, format!("`{x}` is not fresh")));
            }
        }
        Ok(&d.fresh)
    }

    fn expect(&self, d: &Derivation, premise: &Derivation, j: &Judgement) -> Check {
        if &premise.judgement == j {
            Ok(())
        } else {
            Err(fail(
                d,
                format!("premise concludes `{}`, expected `{j}`", premise.judgement),
            ))
        }
    }

    fn conv(&self, d: &Derivation, a: &Term, b: &Term) -> Check {
        match convertible(a, b, self.fuel) {
            Ok(true) => Ok(()),
            _ => Err(fail(d, format!("`{a}` and `{b}` are not convertible"))),
        }
    }

    fn under(&mut self, entries: Vec<Entry>, f: impl FnOnce(&mut Validator) -> Check) -> Check {
        let n = entries.len();
        self.ctx.entries.extend(entries);
        let r = f(self);
        let len = self.ctx.entries.len();
        self.ctx.entries.truncate(len - n);
        r
    }

    fn validate(&mut self, d: &Derivation) -> Check {
        use Judgement as J;
        match (d.rule, &d.judgement) {
            (RuleName::VarT, J::Term(Term::Var(Var::Free(x)), a)) => {
                self.premises(d, 0)?;
                match self.ctx.lookup_term(x) {
                    Some(b) if b == a => Ok(()),
                    _ => Err(fail(d, "no matching declaration")),
                }
            }
            (RuleName::Bot, J::Term(Term::Bot, Type::Omega)) => self.premises(d, 0).map(drop),
            (RuleName::Imp, J::Term(Term::Imp(a, b), Type::Omega)) => {
                let ps = self.premises(d, 2)?;
                self.expect(d, &ps[0], &J::Term((**a).clone(), Type::Omega))?;
                self.expect(d, &ps[1], &J::Term((**b).clone(), Type::Omega))?;
                self.all(ps)
            }
            (RuleName::AppT, J::Term(Term::App(m, n), b)) => {
                let ps = self.premises(d, 2)?;
                let J::Term(m2, Type::Arrow(a, b2)) = &ps[0].judgement else {
                    return Err(fail(d, "function premise is not at an arrow type"));
                };
                if m2 != &**m || &**b2 != b {
                    return Err(fail(d, "function premise does not match"));
                }
                self.expect(d, &ps[1], &J::Term((**n).clone(), (**a).clone()))?;
                self.all(ps)
            }
            (RuleName::LamT, J::Term(Term::Lam(_, a, body), Type::Arrow(a2, b))) => {
                let ps = self.premises(d, 1)?;
                let x = self.fresh(d, 1)?[0].clone();
                if &**a2 != a {
                    return Err(fail(d, "domain does not match the annotation"));
                }
                let body = Term::instantiate(body, &fv(&x));
                self.expect(d, &ps[0], &J::Term(body, (**b).clone()))?;
                self.under(vec![Entry::Term(x, a.clone())], |v| v.validate(&ps[0]))
            }
            (RuleName::VarP, J::Proof(Proof::Var(Var::Free(p)), phi)) => {
                self.premises(d, 0)?;
                match self.ctx.lookup_proof(p) {
                    Some(psi) if psi == phi => Ok(()),
                    _ => Err(fail(d, "no matching declaration")),
                }
            }
            (RuleName::LamP, J::Proof(Proof::Lam(_, phi, body), Term::Imp(phi2, psi))) => {
                let ps = self.premises(d, 2)?;
                let p = self.fresh(d, 1)?[0].clone();
                if &**phi2 != phi {
                    return Err(fail(d, "antecedent does not match the annotation"));
                }
                self.expect(d, &ps[0], &J::Term(phi.clone(), Type::Omega))?;
                let body = Proof::instantiate(body, &Proof::Var(Var::Free(p.clone())));
                self.expect(d, &ps[1], &J::Proof(body, (**psi).clone()))?;
                self.validate(&ps[0])?;
                self.under(vec![Entry::Proof(p, phi.clone())], |v| v.validate(&ps[1]))
            }
            (RuleName::AppP, J::Proof(Proof::App(f, a), psi)) => {
                let ps = self.premises(d, 2)?;
                let J::Proof(f2, Term::Imp(phi, psi2)) = &ps[0].judgement else {
                    return Err(fail(d, "function premise is not an implication"));
                };
                if f2 != &**f || &**psi2 != psi {
                    return Err(fail(d, "function premise does not match"));
                }
                self.expect(d, &ps[1], &J::Proof((**a).clone(), (**phi).clone()))?;
                self.all(ps)
            }
            (RuleName::ConvP, J::Proof(delta, psi)) => {
                let ps = self.premises(d, 2)?;
                let J::Proof(delta2, phi) = &ps[0].judgement else {
                    return Err(fail(d, "first premise is not a proof judgement"));
                };
                if delta2 != delta {
                    return Err(fail(d, "premise is about a different proof"));
                }
                self.expect(d, &ps[1], &J::Term(psi.clone(), Type::Omega))?;
                self.conv(d, phi, psi)?;
                self.all(ps)
            }
            (
                RuleName::Plus | RuleName::Minus,
                J::Proof(Proof::Plus(p) | Proof::Minus(p), prop),
            ) => {
                let ps = self.premises(d, 1)?;
                let J::Path(p2, eq) = &ps[0].judgement else {
                    return Err(fail(d, "premise is not a path judgement"));
                };
                let plus = matches!(d.judgement, J::Proof(Proof::Plus(_), _));
                if plus != (d.rule == RuleName::Plus) || p2 != &**p || eq.ty != Type::Omega {
                    return Err(fail(d, "premise does not match"));
                }
                let expected = if plus {
                    Term::imp(eq.lhs.clone(), eq.rhs.clone())
                } else {
                    Term::imp(eq.rhs.clone(), eq.lhs.clone())
                };
                if &expected != prop {
                    return Err(fail(d, "proposition does not match the equation"));
                }
                self.all(ps)
            }
            (RuleName::VarE, J::Path(Path::Var(Var::Free(e)), eq)) => {
                self.premises(d, 0)?;
                match self.ctx.lookup_path(e) {
                    Some(eq2) if eq2 == eq => Ok(()),
                    _ => Err(fail(d, "no matching declaration")),
                }
            }
            (RuleName::Ref, J::Path(Path::Ref(m), eq)) => {
                let ps = self.premises(d, 1)?;
                if &eq.lhs != m || &eq.rhs != m {
                    return Err(fail(d, "endpoints differ from the term"));
                }
                self.expect(d, &ps[0], &J::Term(m.clone(), eq.ty.clone()))?;
                self.all(ps)
            }
            (RuleName::ImpStar, J::Path(Path::ImpStar(p, q), eq)) => {
                let ps = self.premises(d, 2)?;
                let (J::Path(p2, e1), J::Path(q2, e2)) = (&ps[0].judgement, &ps[1].judgement)
                else {
                    return Err(fail(d, "premises are not path judgements"));
                };
                let expected = Equation::new(
                    Term::imp(e1.lhs.clone(), e2.lhs.clone()),
                    Type::Omega,
                    Term::imp(e1.rhs.clone(), e2.rhs.clone()),
                );
                if p2 != &**p
                    || q2 != &**q
                    || e1.ty != Type::Omega
                    || e2.ty != Type::Omega
                    || &expected != eq
                {
                    return Err(fail(d, "premises do not match"));
                }
                self.all(ps)
            }
            (RuleName::Univ, J::Path(Path::Univ(phi, psi, fwd, bwd), eq)) => {
                let ps = self.premises(d, 2)?;
                if eq != &Equation::new(phi.clone(), Type::Omega, psi.clone()) {
                    return Err(fail(d, "equation does not match"));
                }
                self.expect(
                    d,
                    &ps[0],
                    &J::Proof((**fwd).clone(), Term::imp(phi.clone(), psi.clone())),
                )?;
                self.expect(
                    d,
                    &ps[1],
                    &J::Proof((**bwd).clone(), Term::imp(psi.clone(), phi.clone())),
                )?;
                self.all(ps)
            }
            (RuleName::Lll, J::Path(Path::TriLam(_, a, body), eq)) => {
                let ps = self.premises(d, 3)?;
                let names = self.fresh(d, 3)?;
                let (e, x, y) = (names[0].clone(), names[1].clone(), names[2].clone());
                if x == y {
                    return Err(fail(d, "x and y coincide"));
                }
                let Type::Arrow(a2, b) = &eq.ty else {
                    return Err(fail(d, "equation is not at an arrow type"));
                };
                if &**a2 != a {
                    return Err(fail(d, "domain does not match the annotation"));
                }
                let body =
                    Path::instantiate(body, &fv(&x), &fv(&y), &Path::Var(Var::Free(e.clone())));
                let target = Equation::new(
                    Term::app(eq.lhs.clone(), fv(&x)),
                    (**b).clone(),
                    Term::app(eq.rhs.clone(), fv(&y)),
                );
                self.expect(d, &ps[0], &J::Path(body, target))?;
                self.expect(d, &ps[1], &J::Term(eq.lhs.clone(), eq.ty.clone()))?;
                self.expect(d, &ps[2], &J::Term(eq.rhs.clone(), eq.ty.clone()))?;
                let ext = vec![
                    Entry::Term(x.clone(), a.clone()),
                    Entry::Term(y.clone(), a.clone()),
                    Entry::Path(e, Equation::new(fv(&x), a.clone(), fv(&y))),
                ];
                self.under(ext, |v| v.validate(&ps[0]))?;
                self.all(&ps[1..])
            }
            (RuleName::AppE, J::Path(Path::App(p, n, n2, q), eq)) => {
                let ps = self.premises(d, 4)?;
                let J::Path(p2, ep) = &ps[0].judgement else {
                    return Err(fail(d, "function premise is not a path judgement"));
                };
                let Type::Arrow(a, b) = &ep.ty else {
                    return Err(fail(d, "function premise is not at an arrow type"));
                };
                let expected = Equation::new(
                    Term::app(ep.lhs.clone(), n.clone()),
                    (**b).clone(),
                    Term::app(ep.rhs.clone(), n2.clone()),
                );
                if p2 != &**p || &expected != eq {
                    return Err(fail(d, "function premise does not match"));
                }
                let qeq = Equation::new(n.clone(), (**a).clone(), n2.clone());
                self.expect(d, &ps[1], &J::Path((**q).clone(), qeq))?;
                self.expect(d, &ps[2], &J::Term(n.clone(), (**a).clone()))?;
                self.expect(d, &ps[3], &J::Term(n2.clone(), (**a).clone()))?;
                self.all(ps)
            }
            (RuleName::ConvE, J::Path(p, eq)) => {
                let ps = self.premises(d, 3)?;
                let J::Path(p2, eq0) = &ps[0].judgement else {
                    return Err(fail(d, "first premise is not a path judgement"));
                };
                if p2 != p || eq0.ty != eq.ty {
                    return Err(fail(d, "premise does not match"));
                }
                self.expect(d, &ps[1], &J::Term(eq.lhs.clone(), eq.ty.clone()))?;
                self.expect(d, &ps[2], &J::Term(eq.rhs.clone(), eq.ty.clone()))?;
                self.conv(d, &eq0.lhs, &eq.lhs)?;
                self.conv(d, &eq0.rhs, &eq.rhs)?;
                self.all(ps)
            }
            _ => Err(fail(d, "the judgement is not an instance of the rule")),
        }
    }

    fn all(&mut self, ps: &[Derivation]) -> Check {
        ps.iter().try_for_each(|p| self.validate(p))
    }

    fn context(&mut self, target: &Context, ds: &[Derivation]) -> Check {
        if ds.len() != target.entries.len() {
            return Err(InvalidDerivation {
                rule: RuleName::CtxT,
                judgement: "valid".into(),
                reason: "one derivation per context entry expected".into(),
            });
        }
        for (entry, d) in target.entries.iter().zip(ds) {
            if d.judgement != Judgement::Valid {
                return Err(fail(d, "context node must conclude validity"));
            }
            if self.ctx.declares_same_kind(entry) {
                return Err(fail(d, "duplicate declaration"));
            }
            match (d.rule, entry) {
                (RuleName::CtxT, Entry::Term(..)) => {
                    self.premises(d, 0)?;
                }
                (RuleName::CtxP, Entry::Proof(_, phi)) => {
                    let ps = self.premises(d, 1)?;
                    self.expect(d, &ps[0], &Judgement::Term(phi.clone(), Type::Omega))?;
                    self.all(ps)?;
                }
                (RuleName::CtxE, Entry::Path(_, eq)) => {
                    let ps = self.premises(d, 2)?;
                    self.expect(d, &ps[0], &Judgement::Term(eq.lhs.clone(), eq.ty.clone()))?;
                    self.expect(d, &ps[1], &Judgement::Term(eq.rhs.clone(), eq.ty.clone()))?;
                    self.all(ps)?;
                }
                _ => return Err(fail(d, "rule does not match the entry")),
            }
            self.ctx.entries.push(entry.clone());
        }
        Ok(())
    }
}

/// Checks that `d` derives its judgement in `ctx`.
pub fn validate(ctx: &Context, d: &Derivation, fuel: usize) -> Result<(), InvalidDerivation> {
    Validator {
        ctx: ctx.clone(),
        fuel,
    }
    .validate(d)
}

/// Checks one validity derivation per entry of `ctx`.
pub fn validate_context(
    ctx: &Context,
    ds: &[Derivation],
    fuel: usize,
) -> Result<(), InvalidDerivation> {
    Validator {
        ctx: Context::new(),
        fuel,
    }
    .context(ctx, ds)
}
