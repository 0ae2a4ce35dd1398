mod common;

use std::collections::BTreeSet;

use common::named::{self, NExpr};
use common::{expr, path, scope};
use phoml_core::syntax::{alpha_equal, classify_canonical, classify_neutral, Canonicity};
use phoml_core::Name;
use proptest::prelude::*;

fn names(ns: &[&str]) -> BTreeSet<Name> {
    ns.iter().map(Name::new).collect()
}

#[test]
fn free_vars_of_closed_expressions() {
    let s = scope(&[], &[], &[]);
    assert!(expr("\\x:Omega. x", &s).free_vars().is_empty());
    assert!(expr("lll e : x =[Omega] y. e", &s).free_vars().is_empty());
}

#[test]
fn free_vars_of_univ_body() {
    let s = scope(&["x", "y"], &[], &["e"]);
    let p = expr(
        "univ((bot => bot) => x, y, \\p:(bot => bot) => x. e^+ (p (\\p:bot. p)), \\m:y. \\n:bot => bot. e^- m)",
        &s,
    );
    let fv = p.free_vars();
    assert_eq!(fv.terms, names(&["x", "y"]));
    assert_eq!(fv.paths, names(&["e"]));
    assert!(fv.proofs.is_empty());
}

#[test]
fn alpha_equality_examples() {
    let s = scope(&[], &[], &[]);
    let eq = |a: &str, b: &str| alpha_equal(&expr(a, &s), &expr(b, &s));
    assert!(eq("\\x:Omega. x", "\\y:Omega. y"));
    assert!(!eq("\\x:Omega. x", "\\x:Omega. bot"));
    assert!(eq(
        "lll e : x =[Omega -> Omega] y. e",
        "lll f : u =[Omega -> Omega] v. f"
    ));
    assert!(!eq(
        "lll e : x =[Omega] y. ref(x)",
        "lll e : x =[Omega] y. ref(y)"
    ));
}

#[test]
fn renamer_oracle_agrees_on_lll() {
    use named::{NPath, NTerm};
    let omega = phoml_core::Type::Omega;
    let a = NExpr::Path(NPath::Tri(
        "e".into(),
        "x".into(),
        "y".into(),
        omega.clone(),
        Box::new(NPath::Var("e".into())),
    ));
    let b = NExpr::Path(NPath::Tri(
        "f".into(),
        "u".into(),
        "v".into(),
        omega.clone(),
        Box::new(NPath::Var("f".into())),
    ));
    assert!(named::alpha_equivalent(&a, &b));
    assert!(alpha_equal(&named::expr(&a), &named::expr(&b)));
    let c = NExpr::Path(NPath::Tri(
        "e".into(),
        "x".into(),
        "y".into(),
        omega,
        Box::new(NPath::Ref(NTerm::Var("x".into()))),
    ));
    assert!(!named::alpha_equivalent(&a, &c));
}

#[test]
fn canonical_classification_examples() {
    let s = scope(&["x", "phi", "psi"], &["d", "e"], &[]);
    assert_eq!(
        classify_canonical(&expr("bot => (bot => bot)", &s)),
        Canonicity::CanonicalProp
    );
    assert_eq!(
        classify_canonical(&expr("x => bot", &s)),
        Canonicity::NotCanonical
    );
    assert_eq!(
        classify_canonical(&expr("univ(phi, psi, d, e)", &s)),
        Canonicity::CanonicalPath
    );
    assert_eq!(
        classify_canonical(&expr("\\p:phi. p", &s)),
        Canonicity::CanonicalProof
    );
    assert_eq!(
        classify_canonical(&expr("ref(x)", &s)),
        Canonicity::CanonicalPath
    );
    assert_eq!(
        classify_canonical(&expr("lll e : a =[Omega] b. e", &s)),
        Canonicity::CanonicalPath
    );
}

#[test]
fn neutral_classification_examples() {
    let s = scope(&["x", "phi"], &["d"], &["e"]);
    assert!(classify_neutral(&expr("x bot", &s)));
    assert!(!classify_neutral(&expr("ref(bot)^+", &s)));
    assert!(classify_neutral(&expr("ref(phi) =>* e", &s)));
    assert!(classify_neutral(&expr("e =>* ref(phi)", &s)));
    assert!(!classify_neutral(&expr("ref(phi) =>* ref(phi)", &s)));
    assert!(classify_neutral(&expr("e @[x, x] ref(x)", &s)));
    assert!(classify_neutral(&expr("e^- d", &s)));
    assert!(!classify_neutral(&expr("(\\y:Omega. y) x", &s)));
    assert!(!classify_neutral(&expr("bot", &s)));
}

#[test]
fn tri_lam_binds_distinct_variables() {
    assert!(
        phoml_core::parse::parse_expr("lll e : x =[Omega] x. e", &scope(&[], &[], &[])).is_err()
    );
    let p = path("lll e : x =[Omega] y. ref(x => y)", &scope(&[], &[], &[]));
    assert!(p.free_vars().is_empty());
}

fn pair() -> impl Strategy<Value = (NExpr, NExpr)> {
    prop_oneof![
        named::arb_expr().prop_map(|e| {
            let r = named::rename(&e, "r");
            (e, r)
        }),
        (named::arb_expr(), named::arb_expr()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn alpha_equality_matches_renamer((a, b) in pair()) {
        let (ka, kb) = (named::expr(&a), named::expr(&b));
        prop_assert_eq!(alpha_equal(&ka, &kb), named::alpha_equivalent(&a, &b));
    }

    #[test]
    fn alpha_equality_is_an_equivalence(a in named::arb_expr()) {
        let b = named::rename(&a, "r");
        let c = named::rename(&b, "s");
        let (ka, kb, kc) = (named::expr(&a), named::expr(&b), named::expr(&c));
        prop_assert!(alpha_equal(&ka, &ka));
        prop_assert!(alpha_equal(&ka, &kb) && alpha_equal(&kb, &ka));
        prop_assert!(alpha_equal(&kb, &kc) && alpha_equal(&ka, &kc));
    }

    #[test]
    fn free_vars_match_oracle_and_ignore_renaming(a in named::arb_expr()) {
        let k = named::expr(&a);
        let fv = k.free_vars();
        let oracle = named::fv(&a);
        let strs = |s: &BTreeSet<Name>| s.iter().map(|n| n.as_str().to_owned()).collect::<BTreeSet<_>>();
        prop_assert_eq!(strs(&fv.terms), oracle.terms);
        prop_assert_eq!(strs(&fv.proofs), oracle.proofs);
        prop_assert_eq!(strs(&fv.paths), oracle.paths);
        prop_assert_eq!(named::expr(&named::rename(&a, "r")).free_vars(), fv);
    }

    #[test]
    fn classifiers_are_exclusive(a in named::arb_expr()) {
        let k = named::expr(&a);
        let canonical = classify_canonical(&k);
        prop_assert!(!(canonical != Canonicity::NotCanonical && classify_neutral(&k)));
        if canonical == Canonicity::CanonicalProp {
            prop_assert!(k.free_vars().is_empty());
        }
    }
}

#[test]
fn sizes_count_nodes() {
    let s = scope(&["x"], &[], &[]);
    assert_eq!(expr("x", &s).size(), 1);
    assert_eq!(expr("\\y:Omega. x", &s).size(), 3);
    assert_eq!(expr("ref(x) =>* ref(bot)", &s).size(), 5);
}
