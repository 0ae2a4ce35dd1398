//! Checking and normalising the declarations of a script.

use phoml_core::parse::{entry, Classifier, Decl, Script, SourceSpan};
use phoml_core::reduce::{reduce, reduce_traced, ReductionOutcome, Trace};
use phoml_core::typeck::{Checker, Context, TypeError};
use phoml_core::{Expr, FreeVars};

/// The outcome of one declaration.
#[derive(Clone, Debug)]
pub struct ItemReport {
    pub span: SourceSpan,
    pub directive: bool,
    pub lines: Vec<String>,
    pub error: Option<TypeError>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<ItemReport>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|i| i.error.is_none())
    }

    pub fn errors(&self) -> impl Iterator<Item = (&SourceSpan, &TypeError)> {
        self.items
            .iter()
            .filter_map(|i| i.error.as_ref().map(|e| (&i.span, e)))
    }

    /// Output lines of the successful declarations.
    pub fn output(&self) -> String {
        self.items
            .iter()
            .flat_map(|i| &i.lines)
            .map(|l| format!("{l}\n"))
            .collect()
    }
}

fn judgement(ctx: &Context, subject: &str, classifier: &str) -> String {
    if ctx.is_empty() {
        format!("|- {subject} : {classifier}")
    } else {
        format!("{ctx} |- {subject} : {classifier}")
    }
}

fn classifier_vars(c: &Classifier) -> FreeVars {
    match c {
        Classifier::Type(_) => FreeVars::default(),
        Classifier::Prop(t) => t.free_vars(),
        Classifier::Equation(eq) => eq.free_vars(),
    }
}

fn outcome_line<T: std::fmt::Display>(o: &ReductionOutcome<T>) -> String {
    format!("{} after {} steps: {}", o.status, o.steps, o.result)
}

/// Checks every declaration. Assumptions accumulate into the context; each
/// other declaration is checked in the part of it that its free variables
/// need.
pub fn check_script(script: &Script, checker: &Checker, fuel: usize) -> CheckReport {
    let mut ctx = Context::new();
    let mut report = CheckReport::default();
    for item in &script.items {
        let (directive, result) = match &item.decl {
            Decl::Assume { name, classifier } => {
                let extended = ctx.clone().with(entry(name.clone(), classifier.clone()));
                let mut need = classifier_vars(classifier);
                match classifier.subject_sort() {
                    phoml_core::Sort::Term => need.terms.insert(name.clone()),
                    phoml_core::Sort::Proof => need.proofs.insert(name.clone()),
                    _ => need.paths.insert(name.clone()),
                };
                let r = checker
                    .check_context(&extended.restrict(&need))
                    .map(|()| vec![format!("ASSUME {name} : {classifier}")]);
                if r.is_ok() {
                    ctx = extended;
                }
                (false, r)
            }
            Decl::Def { name, expr, .. } => {
                let sub = ctx.restrict(&expr.free_vars());
                let r = checker.infer(&sub, expr).map(|c| {
                    vec![format!(
                        "DEF {}",
                        judgement(&sub, name.as_str(), &c.to_string())
                    )]
                });
                (false, r)
            }
            Decl::Check { expr, classifier } => {
                let mut need = expr.free_vars();
                need.extend(classifier_vars(classifier));
                let sub = ctx.restrict(&need);
                let r = checker.check(&sub, expr, classifier).map(|()| {
                    vec![format!(
                        "OK {}",
                        judgement(&sub, &expr.to_string(), &classifier.to_string())
                    )]
                });
                (true, r)
            }
            Decl::Normalize { expr } => {
                let o = reduce(expr, fuel);
                (
                    true,
                    Ok(vec![
                        format!("NORMALIZE {expr}"),
                        format!("  {}", outcome_line(&o)),
                    ]),
                )
            }
        };
        let (lines, error) = match result {
            Ok(lines) => (lines, None),
            Err(e) => (Vec::new(), Some(e)),
        };
        report.items.push(ItemReport {
            span: item.span.clone(),
            directive,
            lines,
            error,
        });
    }
    report
}

/// Normalises a definition, returning the outcome and the trace.
pub fn normalize_def(
    script: &Script,
    name: &str,
    fuel: usize,
) -> Option<(ReductionOutcome<Expr>, Trace<Expr>)> {
    script.def(name).map(|e| reduce_traced(e, fuel))
}

/// The lines printed by `normalize`: optionally the trace, then the status,
/// then the result on its own final line.
pub fn render_normalization(
    outcome: &ReductionOutcome<Expr>,
    trace: Option<&Trace<Expr>>,
) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(trace) = trace {
        for (i, t) in trace.iter().enumerate() {
            out.push(format!(
                "{:>3} {} at {}: {}",
                i + 1,
                t.rule,
                t.position,
                t.after
            ));
        }
    }
    out.push(format!("{} after {} steps", outcome.status, outcome.steps));
    out.push(outcome.result.to_string());
    out
}
