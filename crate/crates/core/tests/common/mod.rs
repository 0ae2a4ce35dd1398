#![allow(dead_code)]

use phoml_core::parse::{parse_classifier, parse_expr, Classifier, Scope};
use phoml_core::{Equation, Expr, Path, Proof, Sort, Term, Type};

/// A scope declaring the given term, proof and path variables.
pub fn scope(terms: &[&str], proofs: &[&str], paths: &[&str]) -> Scope {
    let mut s = Scope::new();
    for t in terms {
        s.declare(t, Sort::Term);
    }
    for p in proofs {
        s.declare(p, Sort::Proof);
    }
    for e in paths {
        s.declare(e, Sort::Path);
    }
    s
}

pub fn expr(text: &str, s: &Scope) -> Expr {
    parse_expr(text, s).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn term(text: &str, s: &Scope) -> Term {
    expr(text, s)
        .as_term()
        .unwrap_or_else(|| panic!("{text} is not a term"))
        .clone()
}

pub fn proof(text: &str, s: &Scope) -> Proof {
    expr(text, s)
        .as_proof()
        .unwrap_or_else(|| panic!("{text} is not a proof"))
        .clone()
}

pub fn path(text: &str, s: &Scope) -> Path {
    expr(text, s)
        .as_path()
        .unwrap_or_else(|| panic!("{text} is not a path"))
        .clone()
}

pub fn ty(text: &str) -> Type {
    match parse_classifier(text, &Scope::new()).unwrap_or_else(|e| panic!("{text}: {e}")) {
        Classifier::Type(a) => a,
        other => panic!("{text} is not a type: {other:?}"),
    }
}

pub fn equation(text: &str, s: &Scope) -> Equation {
    match parse_classifier(text, s).unwrap_or_else(|e| panic!("{text}: {e}")) {
        Classifier::Equation(eq) => eq,
        other => panic!("{text} is not an equation: {other:?}"),
    }
}
pub mod named;
