use super::{Expr, Path, Proof, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Canonicity {
    CanonicalProp,
    CanonicalProof,
    CanonicalPath,
    NotCanonical,
}

impl Term {
    /// Built from `bot` and `=>` alone.
    pub fn is_canonical_prop(&self) -> bool {
        match self {
            Term::Bot => true,
            Term::Imp(a, b) => a.is_canonical_prop() && b.is_canonical_prop(),
            _ => false,
        }
    }

    /// `x | M_n N`
    pub fn is_neutral(&self) -> bool {
        match self {
            Term::Var(Var::Free(_)) => true,
            Term::App(f, _) => f.is_neutral(),
            _ => false,
        }
    }
}

impl Proof {
    pub fn is_canonical(&self) -> bool {
        matches!(self, Proof::Lam(..))
    }

    /// `p | P_n^+ | P_n^- | d_n e`
    pub fn is_neutral(&self) -> bool {
        match self {
            Proof::Var(Var::Free(_)) => true,
            Proof::Plus(p) | Proof::Minus(p) => p.is_neutral(),
            Proof::App(f, _) => f.is_neutral(),
            _ => false,
        }
    }
}

impl Path {
    pub fn is_canonical(&self) -> bool {
        matches!(self, Path::Ref(_) | Path::Univ(..) | Path::TriLam(..))
    }

    /// `e | P_n =>* Q | Q =>* P_n | P_n @[M, N] Q`
    pub fn is_neutral(&self) -> bool {
        match self {
            Path::Var(Var::Free(_)) => true,
            Path::ImpStar(a, b) => a.is_neutral() || b.is_neutral(),
            Path::App(f, ..) => f.is_neutral(),
            _ => false,
        }
    }
}

impl Expr {
    pub fn classify_canonical(&self) -> Canonicity {
        match self {
            Expr::Term(t) if t.is_canonical_prop() => Canonicity::CanonicalProp,
            Expr::Proof(d) if d.is_canonical() => Canonicity::CanonicalProof,
            Expr::Path(p) if p.is_canonical() => Canonicity::CanonicalPath,
            _ => Canonicity::NotCanonical,
        }
    }

    pub fn is_neutral(&self) -> bool {
        match self {
            Expr::Term(t) => t.is_neutral(),
            Expr::Proof(d) => d.is_neutral(),
            Expr::Path(p) => p.is_neutral(),
            Expr::Type(_) | Expr::Equation(_) => false,
        }
    }
}

pub fn classify_canonical(e: &Expr) -> Canonicity {
    e.classify_canonical()
}

pub fn classify_neutral(e: &Expr) -> bool {
    e.is_neutral()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bot() -> Term {
        Term::Bot
    }

    #[test]
    fn canonical_props() {
        let t = Term::imp(bot(), Term::imp(bot(), bot()));
        assert_eq!(
            Expr::Term(t).classify_canonical(),
            Canonicity::CanonicalProp
        );
        let open = Term::imp(Term::var("x"), bot());
        assert_eq!(
            Expr::Term(open).classify_canonical(),
            Canonicity::NotCanonical
        );
    }

    #[test]
    fn canonical_paths_and_proofs() {
        let u = Path::univ(
            Term::var("phi"),
            Term::var("psi"),
            Proof::var("d"),
            Proof::var("e"),
        );
        assert_eq!(
            Expr::Path(u).classify_canonical(),
            Canonicity::CanonicalPath
        );
        let l = Proof::lam("p", bot(), Proof::var("p"));
        assert_eq!(
            Expr::Proof(l).classify_canonical(),
            Canonicity::CanonicalProof
        );
    }

    #[test]
    fn neutral_grammar() {
        assert!(Term::app(Term::var("x"), bot()).is_neutral());
        assert!(!Term::app(
            Term::lam("x", super::super::Type::Omega, Term::var("x")),
            bot()
        )
        .is_neutral());
        assert!(!Proof::plus(Path::Ref(bot())).is_neutral());
        assert!(Path::imp_star(Path::Ref(Term::var("phi")), Path::var("e")).is_neutral());
        assert!(Proof::app(Proof::minus(Path::var("e")), Proof::var("q")).is_neutral());
    }
}
