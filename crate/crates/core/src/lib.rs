//! Kernel for PHOML, a predicative higher-order minimal logic with
//! extensional equality: syntax, substitution, reduction, parallel reduction,
//! typing, and the concrete syntax.

pub mod parallel;
pub mod parse;
pub mod print;
pub mod reduce;
pub mod subst;
pub mod syntax;
pub mod typeck;

pub use reduce::{Reducible, ReductionOutcome, Rule, Status};
pub use subst::{canonical_inhabitant, path_subst, trivial_loop, PathSubstitution, Substitution};
pub use syntax::{Equation, Expr, FreeVars, Name, Path, Proof, Sort, Term, Type};
