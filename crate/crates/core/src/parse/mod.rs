//! Concrete syntax: lexing, parsing and sort elaboration of expressions and
//! proof scripts.
//!
//! The grammar does not distinguish the sorts; they are recovered from the
//! declared kinds of variables. A `\x:A. M` is a term abstraction when `A` is
//! a type and a proof abstraction when `A` is a proposition.
//!
//! Definitions are macros. A use of a defined name is replaced by its body,
//! free variables included, so a binder around the use captures them.

mod lexer;
mod raw;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::syntax::{Equation, Expr, Name, Path, Proof, Sort, Term, Type};
use crate::typeck::{Context, Entry};

use raw::{Ident, Parser, Raw, RawClassifier, RawDecl, RawKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: syntax error: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

/// What an `assume` declares or a `check` demands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classifier {
    Type(Type),
    Prop(Term),
    Equation(Equation),
}

impl Classifier {
    /// The sort of the expressions this classifies.
    pub fn subject_sort(&self) -> Sort {
        match self {
            Classifier::Type(_) => Sort::Term,
            Classifier::Prop(_) => Sort::Proof,
            Classifier::Equation(_) => Sort::Path,
        }
    }

    pub fn into_expr(self) -> Expr {
        match self {
            Classifier::Type(t) => Expr::Type(t),
            Classifier::Prop(t) => Expr::Term(t),
            Classifier::Equation(t) => Expr::Equation(t),
        }
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classifier::Type(t) => write!(f, "{t}"),
            Classifier::Prop(t) => write!(f, "{t}"),
            Classifier::Equation(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Assume { name: Name, classifier: Classifier },
    Def { name: Name, sort: Sort, expr: Expr },
    Check { expr: Expr, classifier: Classifier },
    Normalize { expr: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub decl: Decl,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}

impl Script {
    /// All assumptions, in order.
    pub fn context(&self) -> Context {
        self.items
            .iter()
            .filter_map(|it| match &it.decl {
                Decl::Assume { name, classifier } => Some(entry(name.clone(), classifier.clone())),
                _ => None,
            })
            .collect()
    }

    /// The body of a definition, with earlier definitions inlined.
    pub fn def(&self, name: &str) -> Option<&Expr> {
        self.items.iter().find_map(|it| match &it.decl {
            Decl::Def { name: n, expr, .. } if n.as_str() == name => Some(expr),
            _ => None,
        })
    }
}

pub fn entry(name: Name, classifier: Classifier) -> Entry {
    match classifier {
        Classifier::Type(a) => Entry::Term(name, a),
        Classifier::Prop(phi) => Entry::Proof(name, phi),
        Classifier::Equation(eq) => Entry::Path(name, eq),
    }
}

/// The variable kind of each name that may occur free.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    globals: HashMap<String, Global>,
}

#[derive(Clone, Debug)]
enum Global {
    Var(Sort),
    Def(Expr),
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    pub fn declare(&mut self, name: &str, sort: Sort) {
        self.globals.insert(name.to_owned(), Global::Var(sort));
    }

    pub fn with(mut self, name: &str, sort: Sort) -> Scope {
        self.declare(name, sort);
        self
    }

    pub fn from_context(ctx: &Context) -> Scope {
        let mut s = Scope::new();
        for e in ctx.entries() {
            let sort = match e {
                Entry::Term(..) => Sort::Term,
                Entry::Proof(..) => Sort::Proof,
                Entry::Path(..) => Sort::Path,
            };
            s.declare(e.name().as_str(), sort);
        }
        s
    }
}

fn file_name(file: &str) -> Arc<str> {
    Arc::from(file)
}

/// Parses a whole script.
pub fn parse_script(file: &str, text: &str) -> Result<Script, ParseError> {
    let toks = lexer::lex(&file_name(file), text)?;
    let mut p = Parser::new(toks);
    let mut scope = Scope::new();
    let mut items = Vec::new();
    while !p.at_end() {
        let item = p.item()?;
        let decl = elaborate_decl(&mut scope, item.decl)?;
        items.push(Item {
            decl,
            span: item.span,
        });
    }
    Ok(Script { items })
}

pub fn parse(text: &str) -> Result<Script, ParseError> {
    parse_script("<input>", text)
}

/// Parses one expression whose free variables are resolved in `scope`.
pub fn parse_expr(text: &str, scope: &Scope) -> Result<Expr, ParseError> {
    let toks = lexer::lex(&file_name("<input>"), text)?;
    let mut p = Parser::new(toks);
    let raw = p.expr()?;
    p.end()?;
    Elab::new(scope).expr(&raw)
}

/// Parses a type, a proposition or an equation.
pub fn parse_classifier(text: &str, scope: &Scope) -> Result<Classifier, ParseError> {
    let toks = lexer::lex(&file_name("<input>"), text)?;
    let mut p = Parser::new(toks);
    let raw = p.classifier()?;
    p.end()?;
    Elab::new(scope).classifier(&raw, &classifier_span(&raw))
}

fn classifier_span(c: &RawClassifier) -> SourceSpan {
    match c {
        RawClassifier::Plain(r) | RawClassifier::Equation(r, _, _) => r.span.clone(),
    }
}

fn error<T>(span: &SourceSpan, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        span: span.clone(),
        message: message.into(),
    })
}

fn sort_article(s: Sort) -> &'static str {
    match s {
        Sort::Type => "a type",
        Sort::Term => "a term",
        Sort::Proof => "a proof",
        Sort::Path => "a path",
        Sort::Equation => "an equation",
    }
}

fn elaborate_decl(scope: &mut Scope, decl: RawDecl) -> Result<Decl, ParseError> {
    let fresh_name = |scope: &Scope, id: &Ident| {
        if scope.globals.contains_key(&id.name) {
            error(&id.span, format!("`{}` is already declared", id.name))
        } else {
            Ok(Name::new(&id.name))
        }
    };
    match decl {
        RawDecl::Assume(x, cls) => {
            let name = fresh_name(scope, &x)?;
            let classifier = Elab::new(scope).classifier(&cls, &x.span)?;
            scope.declare(&x.name, classifier.subject_sort());
            Ok(Decl::Assume { name, classifier })
        }
        RawDecl::Def(n, sort_id, body) => {
            let name = fresh_name(scope, &n)?;
            let sort = match sort_id.name.as_str() {
                "term" => Sort::Term,
                "proof" => Sort::Proof,
                "path" => Sort::Path,
                other => {
                    return error(
                        &sort_id.span,
                        format!("expected `term`, `proof` or `path`, found `{other}`"),
                    )
                }
            };
            let expr = Elab::new(scope).expect(&body, sort)?;
            scope
                .globals
                .insert(n.name.clone(), Global::Def(expr.clone()));
            Ok(Decl::Def { name, sort, expr })
        }
        RawDecl::Check(e, cls) => {
            let mut el = Elab::new(scope);
            let expr = el.expr(&e)?;
            let classifier = el.classifier(&cls, &e.span)?;
            if expr.sort() != classifier.subject_sort() {
                return error(
                    &e.span,
                    format!(
                        "{} cannot be classified by {}",
                        sort_article(expr.sort()),
                        sort_article(classifier.clone().into_expr().sort())
                    ),
                );
            }
            Ok(Decl::Check { expr, classifier })
        }
        RawDecl::Normalize(e) => {
            let expr = Elab::new(scope).expr(&e)?;
            if matches!(expr.sort(), Sort::Type) {
                return error(&e.span, "types have no reduction");
            }
            Ok(Decl::Normalize { expr })
        }
    }
}

struct Elab<'s> {
    scope: &'s Scope,
    locals: Vec<(String, Sort)>,
}

impl<'s> Elab<'s> {
    fn new(scope: &'s Scope) -> Elab<'s> {
        Elab {
            scope,
            locals: Vec::new(),
        }
    }

    fn classifier(
        &mut self,
        c: &RawClassifier,
        span: &SourceSpan,
    ) -> Result<Classifier, ParseError> {
        match c {
            RawClassifier::Plain(r) => match self.expr(r)? {
                Expr::Type(t) => Ok(Classifier::Type(t)),
                Expr::Term(t) => Ok(Classifier::Prop(t)),
                other => error(
                    span,
                    format!(
                        "expected a type, a proposition or an equation, found {}",
                        sort_article(other.sort())
                    ),
                ),
            },
            RawClassifier::Equation(l, a, r) => {
                let lhs = self.term(l)?;
                let ty = self.ty(a)?;
                let rhs = self.term(r)?;
                Ok(Classifier::Equation(Equation::new(lhs, ty, rhs)))
            }
        }
    }

    fn expect(&mut self, r: &Raw, sort: Sort) -> Result<Expr, ParseError> {
        let e = self.expr(r)?;
        if e.sort() == sort {
            Ok(e)
        } else {
            error(
                &r.span,
                format!(
                    "expected {}, found {}",
                    sort_article(sort),
                    sort_article(e.sort())
                ),
            )
        }
    }

    fn ty(&mut self, r: &Raw) -> Result<Type, ParseError> {
        match self.expect(r, Sort::Type)? {
            Expr::Type(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    fn term(&mut self, r: &Raw) -> Result<Term, ParseError> {
        match self.expect(r, Sort::Term)? {
            Expr::Term(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    fn proof(&mut self, r: &Raw) -> Result<Proof, ParseError> {
        match self.expect(r, Sort::Proof)? {
            Expr::Proof(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    fn path(&mut self, r: &Raw) -> Result<Path, ParseError> {
        match self.expect(r, Sort::Path)? {
            Expr::Path(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    fn under<T>(&mut self, binds: &[(&Ident, Sort)], f: impl FnOnce(&mut Self) -> T) -> T {
        for (id, s) in binds {
            self.locals.push((id.name.clone(), *s));
        }
        let r = f(self);
        self.locals.truncate(self.locals.len() - binds.len());
        r
    }

    fn var(sort: Sort, name: &str) -> Expr {
        match sort {
            Sort::Term => Term::var(name).into(),
            Sort::Proof => Proof::var(name).into(),
            Sort::Path => Path::var(name).into(),
            Sort::Type | Sort::Equation => unreachable!(),
        }
    }

    fn expr(&mut self, r: &Raw) -> Result<Expr, ParseError> {
        Ok(match &r.kind {
            RawKind::Ident(n) => {
                if let Some((_, s)) = self.locals.iter().rev().find(|(m, _)| m == n) {
                    Self::var(*s, n)
                } else {
                    match self.scope.globals.get(n) {
                        Some(Global::Var(s)) => Self::var(*s, n),
                        Some(Global::Def(e)) => e.clone(),
                        None => return error(&r.span, format!("unknown identifier `{n}`")),
                    }
                }
            }
            RawKind::Omega => Type::Omega.into(),
            RawKind::Bot => Term::Bot.into(),
            RawKind::Arrow(a, b) => Type::arrow(self.ty(a)?, self.ty(b)?).into(),
            RawKind::Imp(a, b) => Term::imp(self.term(a)?, self.term(b)?).into(),
            RawKind::ImpStar(a, b) => Path::imp_star(self.path(a)?, self.path(b)?).into(),
            RawKind::Lam(x, ann, body) => match self.expr(ann)? {
                Expr::Type(a) => {
                    let m = self.under(&[(x, Sort::Term)], |s| s.term(body))?;
                    Term::lam(x.name.as_str(), a, m).into()
                }
                Expr::Term(phi) => {
                    let d = self.under(&[(x, Sort::Proof)], |s| s.proof(body))?;
                    Proof::lam(x.name.as_str(), phi, d).into()
                }
                other => {
                    return error(
                        &ann.span,
                        format!(
                            "a binder annotation must be a type or a proposition, found {}",
                            sort_article(other.sort())
                        ),
                    )
                }
            },
            RawKind::App(f, a) => match self.expr(f)? {
                Expr::Term(m) => Term::app(m, self.term(a)?).into(),
                Expr::Proof(d) => Proof::app(d, self.proof(a)?).into(),
                other => {
                    return error(
                        &f.span,
                        format!("{} cannot be applied", sort_article(other.sort())),
                    );
                }
            },
            RawKind::Plus(p) => Proof::plus(self.path(p)?).into(),
            RawKind::Minus(p) => Proof::minus(self.path(p)?).into(),
            RawKind::Ref(m) => Path::Ref(self.term(m)?).into(),
            RawKind::Univ(args) => {
                let [a, b, c, d] = &**args;
                Path::univ(self.term(a)?, self.term(b)?, self.proof(c)?, self.proof(d)?).into()
            }
            RawKind::Lll { e, x, ty, y, body } => {
                let a = self.ty(ty)?;
                let p = self.under(&[(x, Sort::Term), (y, Sort::Term), (e, Sort::Path)], |s| {
                    s.path(body)
                })?;
                Path::tri_lam(e.name.as_str(), x.name.as_str(), y.name.as_str(), a, p).into()
            }
            RawKind::PathApp(f, m, n, q) => {
                Path::app(self.path(f)?, self.term(m)?, self.term(n)?, self.path(q)?).into()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_shapes() {
        let s = Scope::new();
        let e = parse_expr("ref(bot) =>* ref(bot)", &s).unwrap();
        assert_eq!(
            e,
            Expr::Path(Path::imp_star(Path::Ref(Term::Bot), Path::Ref(Term::Bot)))
        );
        let e = parse_expr("lll e : x =[Omega] y . e", &s).unwrap();
        assert_eq!(
            e,
            Expr::Path(Path::tri_lam("e", "x", "y", Type::Omega, Path::var("e")))
        );
        let err = parse_expr("lll e : x =[Omega] x . e", &s).unwrap_err();
        assert!(err.message.contains("distinct"));
        let s = Scope::new()
            .with("H", Sort::Term)
            .with("F", Sort::Term)
            .with("I", Sort::Term)
            .with("Q", Sort::Path);
        let e = parse_expr("ref(H) @[F, I] Q", &s).unwrap();
        assert_eq!(
            e,
            Expr::Path(Path::app(
                Path::Ref(Term::var("H")),
                Term::var("F"),
                Term::var("I"),
                Path::var("Q")
            ))
        );
    }

    #[test]
    fn lambda_sort_follows_annotation() {
        let e = parse_expr("\\x:Omega. x", &Scope::new()).unwrap();
        assert_eq!(e, Expr::Term(Term::lam("x", Type::Omega, Term::var("x"))));
        let e = parse_expr("\\p:bot => bot. p", &Scope::new()).unwrap();
        assert_eq!(
            e,
            Expr::Proof(Proof::lam(
                "p",
                Term::imp(Term::Bot, Term::Bot),
                Proof::var("p")
            ))
        );
    }

    #[test]
    fn reserved_words_rejected() {
        for w in [
            "Omega",
            "bot",
            "ref",
            "univ",
            "lll",
            "assume",
            "def",
            "check",
            "normalize",
        ] {
            let text = format!("\\{w}:Omega. bot");
            let err = parse_expr(&text, &Scope::new()).unwrap_err();
            assert!(err.message.contains("reserved"), "{w}: {}", err.message);
        }
    }

    #[test]
    fn script_with_macros() {
        let text = "
            assume x : Omega
            def T : term := bot => bot   -- top
            def F : term := \\y:Omega. T => y
            check F x : Omega
            normalize F x
        ";
        let s = parse(text).unwrap();
        assert_eq!(s.items.len(), 5);
        let Decl::Check { expr, classifier } = &s.items[3].decl else {
            panic!()
        };
        assert_eq!(expr.to_string(), "(\\y:Omega. (bot => bot) => y) x");
        assert_eq!(classifier, &Classifier::Type(Type::Omega));
        assert_eq!(s.items[3].span.line, 5);
        assert_eq!(s.context().len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("assume x : Omega\ncheck y : Omega").unwrap_err();
        assert_eq!((err.span.line, err.span.column), (2, 7));
        let err = parse("assume x : Omega\nassume x : Omega").unwrap_err();
        assert!(err.message.contains("already declared"));
    }
}
