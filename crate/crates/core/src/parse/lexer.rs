use std::sync::Arc;

use super::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Omega,
    Bot,
    Ref,
    Univ,
    Lll,
    Assume,
    Def,
    Check,
    Normalize,
    Backslash,
    Colon,
    ColonEq,
    Dot,
    Comma,
    LParen,
    RParen,
    Arrow,
    Imp,
    ImpStar,
    EqOpen,
    AtOpen,
    RBracket,
    Plus,
    Minus,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".to_owned(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Omega => "Omega",
            Tok::Bot => "bot",
            Tok::Ref => "ref",
            Tok::Univ => "univ",
            Tok::Lll => "lll",
            Tok::Assume => "assume",
            Tok::Def => "def",
            Tok::Check => "check",
            Tok::Normalize => "normalize",
            Tok::Backslash => "\\",
            Tok::Colon => ":",
            Tok::ColonEq => ":=",
            Tok::Dot => ".",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Arrow => "->",
            Tok::Imp => "=>",
            Tok::ImpStar => "=>*",
            Tok::EqOpen => "=[",
            Tok::AtOpen => "@[",
            Tok::RBracket => "]",
            Tok::Plus => "^+",
            Tok::Minus => "^-",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "Omega" => Tok::Omega,
        "bot" => Tok::Bot,
        "ref" => Tok::Ref,
        "univ" => Tok::Univ,
        "lll" => Tok::Lll,
        "assume" => Tok::Assume,
        "def" => Tok::Def,
        "check" => Tok::Check,
        "normalize" => Tok::Normalize,
        _ => return None,
    })
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn lex(file: &Arc<str>, src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let span = |line, column, length| SourceSpan {
        file: file.clone(),
        line,
        column,
        length,
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let len = (i - start) as u32;
            let tok = keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token {
                tok,
                span: span(line, col, len),
            });
            col += len;
            continue;
        }
        let rest = |s: &str| {
            s.chars()
                .enumerate()
                .all(|(k, ch)| chars.get(i + k) == Some(&ch))
        };
        let (tok, len) = if rest("=>*") {
            (Tok::ImpStar, 3)
        } else if rest("=>") {
            (Tok::Imp, 2)
        } else if rest("=[") {
            (Tok::EqOpen, 2)
        } else if rest("->") {
            (Tok::Arrow, 2)
        } else if rest(":=") {
            (Tok::ColonEq, 2)
        } else if rest("@[") {
            (Tok::AtOpen, 2)
        } else if rest("^+") {
            (Tok::Plus, 2)
        } else if rest("^-") {
            (Tok::Minus, 2)
        } else {
            let t = match c {
                '\\' => Tok::Backslash,
                ':' => Tok::Colon,
                '.' => Tok::Dot,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ']' => Tok::RBracket,
                _ => {
                    return Err(ParseError {
                        span: span(line, col, 1),
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            (t, 1)
        };
        out.push(Token {
            tok,
            span: span(line, col, len),
        });
        i += len as usize;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(line, col, 0),
    });
    Ok(out)
}
