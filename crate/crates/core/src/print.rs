//! Concrete syntax output with minimal parentheses.
//!
//! Precedence, loosest first: binders (`\x:A. M`, `lll`), infix (`->`,
//! `=>`, `=>*`, all right-associative), application (juxtaposition and
//! `@[M, N]`, left-associative), postfix `^+`/`^-`, atoms.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Equation, Expr, Hint, Name, Path, Proof, Term, Type, Var};

const BINDER: u8 = 0;
const INFIX: u8 = 1;
const APP: u8 = 2;
const POSTFIX: u8 = 3;
const ATOM: u8 = 4;

pub const RESERVED: [&str; 9] = [
    "Omega",
    "bot",
    "ref",
    "univ",
    "lll",
    "assume",
    "def",
    "check",
    "normalize",
];

struct Printer {
    out: String,
    avoid: BTreeSet<String>,
    terms: Vec<String>,
    proofs: Vec<String>,
    paths: Vec<String>,
}

impl Printer {
    fn new(free: impl IntoIterator<Item = Name>) -> Printer {
        Printer {
            out: String::new(),
            avoid: free.into_iter().map(|n| n.as_str().to_owned()).collect(),
            terms: Vec::new(),
            proofs: Vec::new(),
            paths: Vec::new(),
        }
    }

    fn w(&mut self, s: &str) {
        self.out.push_str(s);
    }

    /// A display name for a binder that clashes with nothing in scope or free.
    fn fresh(&self, hint: &Hint) -> String {
        let base = hint.as_str();
        let valid = !base.is_empty()
            && base
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && base
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        let mut name = if valid {
            base.to_owned()
        } else {
            "x".to_owned()
        };
        while RESERVED.contains(&name.as_str())
            || self.avoid.contains(&name)
            || self.terms.contains(&name)
            || self.proofs.contains(&name)
            || self.paths.contains(&name)
        {
            name.push('\'');
        }
        name
    }

    fn var(&mut self, v: &Var, stack: fn(&Printer) -> &Vec<String>) {
        match v {
            Var::Free(n) => self.w(n.as_str()),
            Var::Bound(i) => {
                let s = stack(self);
                match s.len().checked_sub(i + 1) {
                    Some(j) => {
                        let name = s[j].clone();
                        self.w(&name)
                    }
                    None => {
                        let dangling = format!("#{i}");
                        self.w(&dangling)
                    }
                }
            }
        }
    }

    fn open(&mut self, level: u8, min: u8) {
        if level < min {
            self.w("(");
        }
    }

    fn close(&mut self, level: u8, min: u8) {
        if level < min {
            self.w(")");
        }
    }

    fn ty(&mut self, t: &Type, min: u8) {
        match t {
            Type::Omega => self.w("Omega"),
            Type::Arrow(a, b) => {
                self.open(INFIX, min);
                self.ty(a, APP);
                self.w(" -> ");
                self.ty(b, INFIX);
                self.close(INFIX, min);
            }
        }
    }

    fn term(&mut self, t: &Term, min: u8) {
        match t {
            Term::Var(v) => self.var(v, |p| &p.terms),
            Term::Bot => self.w("bot"),
            Term::Imp(a, b) => {
                self.open(INFIX, min);
                self.term(a, APP);
                self.w(" => ");
                self.term(b, INFIX);
                self.close(INFIX, min);
            }
            Term::App(f, a) => {
                self.open(APP, min);
                self.term(f, APP);
                self.w(" ");
                self.term(a, POSTFIX);
                self.close(APP, min);
            }
            Term::Lam(h, ty, body) => {
                self.open(BINDER, min);
                let x = self.fresh(h);
                self.w(&format!("\\{x}:"));
                self.ty(ty, INFIX);
                self.w(". ");
                self.terms.push(x);
                self.term(body, BINDER);
                self.terms.pop();
                self.close(BINDER, min);
            }
        }
    }

    fn proof(&mut self, d: &Proof, min: u8) {
        match d {
            Proof::Var(v) => self.var(v, |p| &p.proofs),
            Proof::App(f, a) => {
                self.open(APP, min);
                self.proof(f, APP);
                self.w(" ");
                self.proof(a, POSTFIX);
                self.close(APP, min);
            }
            Proof::Plus(p) | Proof::Minus(p) => {
                self.open(POSTFIX, min);
                self.path(p, ATOM);
                self.w(if matches!(d, Proof::Plus(_)) {
                    "^+"
                } else {
                    "^-"
                });
                self.close(POSTFIX, min);
            }
            Proof::Lam(h, ann, body) => {
                self.open(BINDER, min);
                let p = self.fresh(h);
                self.w(&format!("\\{p}:"));
                self.term(ann, INFIX);
                self.w(". ");
                self.proofs.push(p);
                self.proof(body, BINDER);
                self.proofs.pop();
                self.close(BINDER, min);
            }
        }
    }

    fn path(&mut self, p: &Path, min: u8) {
        match p {
            Path::Var(v) => self.var(v, |p| &p.paths),
            Path::Ref(m) => {
                self.w("ref(");
                self.term(m, BINDER);
                self.w(")");
            }
            Path::Univ(a, b, d, e) => {
                self.w("univ(");
                self.term(a, BINDER);
                self.w(", ");
                self.term(b, BINDER);
                self.w(", ");
                self.proof(d, BINDER);
                self.w(", ");
                self.proof(e, BINDER);
                self.w(")");
            }
            Path::ImpStar(a, b) => {
                self.open(INFIX, min);
                self.path(a, APP);
                self.w(" =>* ");
                self.path(b, INFIX);
                self.close(INFIX, min);
            }
            Path::App(f, m, n, q) => {
                self.open(APP, min);
                self.path(f, APP);
                self.w(" @[");
                self.term(m, BINDER);
                self.w(", ");
                self.term(n, BINDER);
                self.w("] ");
                self.path(q, POSTFIX);
                self.close(APP, min);
            }
            Path::TriLam(h, ty, body) => {
                self.open(BINDER, min);
                let e = self.fresh(&h.e);
                self.paths.push(e.clone());
                let x = self.fresh(&h.x);
                self.terms.push(x.clone());
                let y = self.fresh(&h.y);
                self.terms.push(y.clone());
                self.w(&format!("lll {e} : {x} =["));
                self.ty(ty, BINDER);
                self.w(&format!("] {y}. "));
                self.path(body, BINDER);
                self.terms.pop();
                self.terms.pop();
                self.paths.pop();
                self.close(BINDER, min);
            }
        }
    }

    fn equation(&mut self, eq: &Equation) {
        self.term(&eq.lhs, INFIX);
        self.w(" =[");
        self.ty(&eq.ty, BINDER);
        self.w("] ");
        self.term(&eq.rhs, INFIX);
    }
}

fn all_free(fv: crate::syntax::FreeVars) -> impl Iterator<Item = Name> {
    fv.terms.into_iter().chain(fv.proofs).chain(fv.paths)
}

pub fn print_type(t: &Type) -> String {
    let mut p = Printer::new([]);
    p.ty(t, BINDER);
    p.out
}

pub fn print_term(t: &Term) -> String {
    let mut p = Printer::new(all_free(t.free_vars()));
    p.term(t, BINDER);
    p.out
}

pub fn print_proof(d: &Proof) -> String {
    let mut p = Printer::new(all_free(d.free_vars()));
    p.proof(d, BINDER);
    p.out
}

pub fn print_path(q: &Path) -> String {
    let mut p = Printer::new(all_free(q.free_vars()));
    p.path(q, BINDER);
    p.out
}

pub fn print_equation(eq: &Equation) -> String {
    let mut p = Printer::new(all_free(eq.free_vars()));
    p.equation(eq);
    p.out
}

pub fn print(e: &Expr) -> String {
    match e {
        Expr::Type(t) => print_type(t),
        Expr::Term(t) => print_term(t),
        Expr::Proof(t) => print_proof(t),
        Expr::Path(t) => print_path(t),
        Expr::Equation(t) => print_equation(t),
    }
}

macro_rules! display_via {
    ($($ty:ty => $f:ident),*) => {$(
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&$f(self))
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&$f(self))
            }
        }
    )*};
}

display_via!(
    Type => print_type,
    Term => print_term,
    Proof => print_proof,
    Path => print_path,
    Equation => print_equation,
    Expr => print
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn associativity() {
        let t = Term::imp(Term::Bot, Term::imp(Term::Bot, Term::Bot));
        assert_eq!(print_term(&t), "bot => bot => bot");
        let l = Term::imp(Term::imp(Term::Bot, Term::Bot), Term::Bot);
        assert_eq!(print_term(&l), "(bot => bot) => bot");
        let a = Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z"));
        assert_eq!(print_term(&a), "x y z");
        let r = Term::app(Term::var("x"), Term::app(Term::var("y"), Term::var("z")));
        assert_eq!(print_term(&r), "x (y z)");
        let ty = Type::arrow(Type::arrow(Type::Omega, Type::Omega), Type::Omega);
        assert_eq!(print_type(&ty), "(Omega -> Omega) -> Omega");
    }

    #[test]
    fn binders_avoid_free_names() {
        let t = Term::lam("x", Type::Omega, Term::var("y"))
            .subst(&crate::subst::Substitution::new().term("y", Term::var("x")));
        assert_eq!(print_term(&t), "\\x':Omega. x");
        let nested = Term::lam(
            "x",
            Type::Omega,
            Term::lam("x", Type::Omega, Term::var("x")),
        );
        assert_eq!(print_term(&nested), "\\x:Omega. \\x':Omega. x'");
    }

    #[test]
    fn paths_and_proofs() {
        let p = Path::app(
            Path::Ref(Term::var("H")),
            Term::var("F"),
            Term::var("I"),
            Path::tri_lam("e", "x", "y", Type::Omega, Path::var("e")),
        );
        assert_eq!(print_path(&p), "ref(H) @[F, I] (lll e : x =[Omega] y. e)");
        let d = Proof::app(Proof::minus(p), Proof::var("m"));
        assert_eq!(
            print_proof(&d),
            "(ref(H) @[F, I] (lll e : x =[Omega] y. e))^- m"
        );
        let s = Path::imp_star(Path::Ref(Term::Bot), Path::Ref(Term::Bot));
        assert_eq!(print_proof(&Proof::plus(s)), "(ref(bot) =>* ref(bot))^+");
    }
}
