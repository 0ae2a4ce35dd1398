//! Sort-agnostic syntax tree produced by the parser.

use super::lexer::{Tok, Token};
use super::{ParseError, SourceSpan};

#[derive(Clone, Debug)]
pub(crate) struct Raw {
    pub kind: RawKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub(crate) enum RawKind {
    Ident(String),
    Omega,
    Bot,
    Arrow(Box<Raw>, Box<Raw>),
    Imp(Box<Raw>, Box<Raw>),
    ImpStar(Box<Raw>, Box<Raw>),
    Lam(Ident, Box<Raw>, Box<Raw>),
    App(Box<Raw>, Box<Raw>),
    Plus(Box<Raw>),
    Minus(Box<Raw>),
    Ref(Box<Raw>),
    Univ(Box<[Raw; 4]>),
    Lll {
        e: Ident,
        x: Ident,
        ty: Box<Raw>,
        y: Ident,
        body: Box<Raw>,
    },
    PathApp(Box<Raw>, Box<Raw>, Box<Raw>, Box<Raw>),
}

#[derive(Clone, Debug)]
pub(crate) struct Ident {
    pub name: String,
    pub span: SourceSpan,
}

/// The right-hand side of `:` in `assume` and `check`.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub(crate) enum RawClassifier {
    Plain(Raw),
    Equation(Raw, Raw, Raw),
}

#[derive(Clone, Debug)]
pub(crate) enum RawDecl {
    Assume(Ident, RawClassifier),
    Def(Ident, Ident, Raw),
    Check(Raw, RawClassifier),
    Normalize(Raw),
}

#[derive(Clone, Debug)]
pub(crate) struct RawItem {
    pub decl: RawDecl,
    pub span: SourceSpan,
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn join(a: &SourceSpan, b: &SourceSpan) -> SourceSpan {
    let length = if a.line == b.line {
        b.column + b.length - a.column
    } else {
        a.length
    };
    SourceSpan {
        length,
        ..a.clone()
    }
}

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn eat(&mut self, t: Tok) -> bool {
        if *self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            Tok::Omega
            | Tok::Bot
            | Tok::Ref
            | Tok::Univ
            | Tok::Lll
            | Tok::Assume
            | Tok::Def
            | Tok::Check
            | Tok::Normalize => Err(ParseError {
                span: self.span(),
                message: format!(
                    "{} is reserved and cannot be used as an identifier",
                    self.peek().describe()
                ),
            }),
            _ => self.error("an identifier"),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn node(&self, kind: RawKind, start: &SourceSpan) -> Raw {
        Raw {
            kind,
            span: join(start, &self.prev_span()),
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Raw, ParseError> {
        let start = self.span();
        match self.peek() {
            Tok::Backslash => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let ann = self.infix()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.expr()?;
                Ok(self.node(RawKind::Lam(x, Box::new(ann), Box::new(body)), &start))
            }
            Tok::Lll => {
                self.bump();
                let e = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let x = self.ident()?;
                self.expect(Tok::EqOpen, "`=[`")?;
                let ty = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                let y = self.ident()?;
                if x.name == y.name {
                    return Err(ParseError {
                        span: y.span,
                        message: format!(
                            "the endpoint variables of `lll` must be distinct, both are `{}`",
                            x.name
                        ),
                    });
                }
                self.expect(Tok::Dot, "`.`")?;
                let body = self.expr()?;
                Ok(self.node(
                    RawKind::Lll {
                        e,
                        x,
                        ty: Box::new(ty),
                        y,
                        body: Box::new(body),
                    },
                    &start,
                ))
            }
            _ => self.infix(),
        }
    }

    fn infix(&mut self) -> Result<Raw, ParseError> {
        let start = self.span();
        let lhs = self.app()?;
        let make: fn(Box<Raw>, Box<Raw>) -> RawKind = match self.peek() {
            Tok::Arrow => RawKind::Arrow,
            Tok::Imp => RawKind::Imp,
            Tok::ImpStar => RawKind::ImpStar,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.infix()?;
        Ok(self.node(make(Box::new(lhs), Box::new(rhs)), &start))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Omega | Tok::Bot | Tok::Ref | Tok::Univ | Tok::LParen
        )
    }

    fn app(&mut self) -> Result<Raw, ParseError> {
        let start = self.span();
        let mut head = self.postfix()?;
        loop {
            if self.eat(Tok::AtOpen) {
                let m = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let n = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                let q = self.postfix()?;
                head = self.node(
                    RawKind::PathApp(Box::new(head), Box::new(m), Box::new(n), Box::new(q)),
                    &start,
                );
            } else if self.starts_atom() {
                let arg = self.postfix()?;
                head = self.node(RawKind::App(Box::new(head), Box::new(arg)), &start);
            } else {
                return Ok(head);
            }
        }
    }

    fn postfix(&mut self) -> Result<Raw, ParseError> {
        let start = self.span();
        let mut e = self.atom()?;
        loop {
            if self.eat(Tok::Plus) {
                e = self.node(RawKind::Plus(Box::new(e)), &start);
            } else if self.eat(Tok::Minus) {
                e = self.node(RawKind::Minus(Box::new(e)), &start);
            } else {
                return Ok(e);
            }
        }
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(self.node(RawKind::Ident(name), &start))
            }
            Tok::Omega => {
                self.bump();
                Ok(self.node(RawKind::Omega, &start))
            }
            Tok::Bot => {
                self.bump();
                Ok(self.node(RawKind::Bot, &start))
            }
            Tok::Ref => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let m = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(self.node(RawKind::Ref(Box::new(m)), &start))
            }
            Tok::Univ => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let c = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let d = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(self.node(RawKind::Univ(Box::new([a, b, c, d])), &start))
            }
            Tok::LParen => {
                self.bump();
                let mut e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                e.span = join(&start, &self.prev_span());
                Ok(e)
            }
            _ => self.error("an expression"),
        }
    }

    pub(crate) fn classifier(&mut self) -> Result<RawClassifier, ParseError> {
        let lhs = self.expr()?;
        if self.eat(Tok::EqOpen) {
            let ty = self.expr()?;
            self.expect(Tok::RBracket, "`]`")?;
            let rhs = self.infix()?;
            Ok(RawClassifier::Equation(lhs, ty, rhs))
        } else {
            Ok(RawClassifier::Plain(lhs))
        }
    }

    pub(crate) fn item(&mut self) -> Result<RawItem, ParseError> {
        let start = self.span();
        let decl = match self.peek() {
            Tok::Assume => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                RawDecl::Assume(x, self.classifier()?)
            }
            Tok::Def => {
                self.bump();
                let n = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let sort = self.ident()?;
                self.expect(Tok::ColonEq, "`:=`")?;
                RawDecl::Def(n, sort, self.expr()?)
            }
            Tok::Check => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::Colon, "`:`")?;
                RawDecl::Check(e, self.classifier()?)
            }
            Tok::Normalize => {
                self.bump();
                RawDecl::Normalize(self.expr()?)
            }
            _ => return self.error("a declaration (`assume`, `def`, `check` or `normalize`)"),
        };
        Ok(RawItem {
            decl,
            span: join(&start, &self.prev_span()),
        })
    }
}
