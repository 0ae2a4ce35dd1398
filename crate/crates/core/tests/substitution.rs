mod common;

use std::collections::BTreeMap;

use common::named::{self, Entry, NPath, NTerm, Supply};
use common::{path, scope, term, ty};
use phoml_core::reduce::{reduce, Joinability, DEFAULT_FUEL};
use phoml_core::typeck::{Checker, Context};
use phoml_core::{
    canonical_inhabitant, path_subst, trivial_loop, PathSubstitution, Reducible, Status,
    Substitution, Term,
};
use proptest::prelude::*;

#[test]
fn concrete_substitution_examples() {
    let s = scope(&["y", "y'", "x"], &[], &[]);
    let t = term("(\\x:Omega. x) y", &s);
    assert_eq!(
        t.subst(&Substitution::new().term("y", Term::Bot)),
        term("(\\x:Omega. x) bot", &s)
    );
    let r = path("ref(y')", &s);
    assert_eq!(
        r.subst(&Substitution::new().term("y'", term("\\x:Omega. x", &s))),
        path("ref(\\x:Omega. x)", &s)
    );
    let captured = term("\\x:Omega. y", &s).subst(&Substitution::new().term("y", term("x", &s)));
    assert_eq!(captured, term("\\z:Omega. x", &s));
}

#[test]
fn concrete_path_substitution_examples() {
    let s = scope(&["f", "n", "n2", "y'"], &[], &["q"]);
    let tau = PathSubstitution::new().with("x", path("q", &s), term("n", &s), term("n2", &s));
    let fx = term("f x", &s.clone().with("x", phoml_core::Sort::Term));
    assert_eq!(path_subst(&fx, &tau), path("ref(f) @[n, n2] q", &s));

    assert_eq!(
        trivial_loop(&term("\\x:Omega. x", &s)),
        path("lll e : a =[Omega] a'. e", &s)
    );
    let tau = PathSubstitution::new().with("y", path("ref(bot)", &s), Term::Bot, Term::Bot);
    assert_eq!(path_subst(&term("y'", &s), &tau), path("ref(y')", &s));

    // The application clause annotates with both endpoint instances.
    let g = term("f (n => x)", &s.clone().with("x", phoml_core::Sort::Term));
    let tau = PathSubstitution::new().with("x", path("q", &s), term("n", &s), term("n2", &s));
    assert_eq!(
        path_subst(&g, &tau),
        path("ref(f) @[n => n, n => n2] (ref(n) =>* q)", &s)
    );
}

#[test]
fn substitution_does_not_commute_with_reduction_on_paths() {
    let s = scope(&["y'"], &[], &[]);
    let display = path("ref(\\y:Omega. y') @[bot, bot] ref(bot)", &s);
    let id = term("\\x:Omega. x", &s);
    let substituted = display.subst(&Substitution::new().term("y'", id.clone()));
    let out = reduce(&substituted, DEFAULT_FUEL);
    assert_eq!(out.status, Status::NormalCanonical);
    assert_eq!(out.result, path("lll e : x =[Omega] x'. e", &s));
    assert_ne!(out.result, path("ref(\\x:Omega. x)", &s));

    // Reducing first and substituting afterwards gives ref(\x.x).
    let reduced = reduce(&display, DEFAULT_FUEL).result;
    assert_eq!(
        reduced.subst(&Substitution::new().term("y'", id)),
        path("ref(\\x:Omega. x)", &s)
    );
    assert_eq!(
        phoml_core::reduce::joinable(&out.result, &path("ref(\\x:Omega. x)", &s), 8, 10_000),
        Joinability::Disjoint
    );
}

#[test]
fn canonical_inhabitants_examples() {
    let s = scope(&[], &[], &[]);
    assert_eq!(canonical_inhabitant(&ty("Omega")), Term::Bot);
    assert_eq!(
        canonical_inhabitant(&ty("Omega -> Omega")),
        term("\\x:Omega. bot", &s)
    );
    assert_eq!(
        canonical_inhabitant(&ty("(Omega -> Omega) -> Omega")),
        term("\\f:Omega -> Omega. bot", &s)
    );
}

fn to_kernel_map(m: &BTreeMap<String, NTerm>) -> Substitution {
    m.iter().fold(Substitution::new(), |s, (k, v)| {
        s.term(k.as_str(), named::term(v))
    })
}

fn arb_map() -> impl Strategy<Value = BTreeMap<String, NTerm>> {
    proptest::collection::btree_map(
        proptest::sample::select(&named::TERM_POOL[..]).prop_map(str::to_owned),
        named::arb_term(),
        0..3,
    )
}

fn arb_tau() -> impl Strategy<Value = BTreeMap<String, Entry>> {
    let (_, paths) = named::arb_proof_path();
    let entry = (paths, named::arb_term(), named::arb_term())
        .prop_map(|(path, left, right)| Entry { path, left, right });
    proptest::collection::btree_map(
        proptest::sample::select(&named::TERM_POOL[..]).prop_map(str::to_owned),
        entry,
        0..3,
    )
}

fn to_kernel_tau(tau: &BTreeMap<String, Entry>) -> PathSubstitution {
    tau.iter().fold(PathSubstitution::new(), |t, (k, e)| {
        t.with(
            k.as_str(),
            named::path(&e.path),
            named::term(&e.left),
            named::term(&e.right),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn substitution_matches_named_oracle(t in named::arb_term(), map in arb_map()) {
        let expected = named::term(&named::subst_term(&t, &map, &mut Supply::new()));
        prop_assert_eq!(named::term(&t).subst(&to_kernel_map(&map)), expected);
    }

    #[test]
    fn path_substitution_matches_named_oracle(t in named::arb_term(), tau in arb_tau()) {
        let expected: NPath = named::path_subst(&t, &tau, &mut Supply::new());
        prop_assert_eq!(path_subst(&named::term(&t), &to_kernel_tau(&tau)), named::path(&expected));
    }

    #[test]
    fn substitution_lemma(e in named::arb_expr(), m1 in arb_map(), m2 in arb_map()) {
        let (s1, s2) = (to_kernel_map(&m1), to_kernel_map(&m2));
        let k = named::expr(&e);
        prop_assert_eq!(k.subst(&s1).subst(&s2), k.subst(&s1.compose(&s2)));
    }

    #[test]
    fn canonical_inhabitant_is_closed_and_typed(a in named::arb_type()) {
        let c = canonical_inhabitant(&a);
        prop_assert!(c.free_vars().is_empty());
        prop_assert_eq!(Checker::new(DEFAULT_FUEL).infer_type(&Context::new(), &c).ok(), Some(a));
        prop_assert!(c.is_normal());
        prop_assert_eq!(trivial_loop(&c), path_subst(&c, &PathSubstitution::new()));
    }
}
