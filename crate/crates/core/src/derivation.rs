//! Derivation certificates and their independent checker.
//!
//! A derivation is a finite list of steps, each concluding a ground pair
//! `lhs <= rhs`; premises always precede their use and the conclusion is the
//! final step. The checker replays a derivation step by step against the
//! presentation and the generator poset; it shares nothing with the
//! saturation engine's closure machinery, including substitution
//! application.

use std::fmt;

use thiserror::Error;

use crate::poset::Poset;
use crate::term::{Presentation, Term};

#[derive(Clone, Debug)]
pub enum Step {
    /// A substitution instance of an axiom.
    Axiom {
        axiom: usize,
        subst: Vec<(String, Term)>,
    },
    /// A pair from the generator order.
    GeneratorOrder { lo: Term, hi: Term },
    Refl { term: Term },
    /// Chains two earlier steps.
    Trans { left: usize, right: usize },
    /// Applies an operation to componentwise related arguments.
    Mono { op: String, components: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub steps: Vec<Step>,
    /// The derived pair; always the conclusion of the final step.
    pub conclusion: (Term, Term),
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::Axiom { axiom, subst } => {
                    write!(f, "[{i}] axiom {axiom} with ")?;
                    for (j, (v, t)) in subst.iter().enumerate() {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{v}:={t}")?;
                    }
                    writeln!(f)?;
                }
                Step::GeneratorOrder { lo, hi } => {
                    writeln!(f, "[{i}] generator order {lo} <= {hi}")?
                }
                Step::Refl { term } => writeln!(f, "[{i}] refl {term}")?,
                Step::Trans { left, right } => writeln!(f, "[{i}] trans [{left}] [{right}]")?,
                Step::Mono { op, components } => {
                    write!(f, "[{i}] mono {op}")?;
                    for c in components {
                        write!(f, " [{c}]")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        write!(f, "conclusion: {} <= {}", self.conclusion.0, self.conclusion.1)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("step {0}: axiom index {1} out of range")]
    BadAxiomIndex(usize, usize),
    #[error("step {0}: variable `{1}` of the axiom is not substituted")]
    UnboundAxiomVariable(usize, String),
    #[error("step {0}: term `{1}` is not ground over the generators")]
    NotGround(usize, String),
    #[error("step {0}: premise index {1} does not precede the step")]
    PremiseOutOfOrder(usize, usize),
    #[error("step {0}: transitivity middle terms differ: `{1}` vs `{2}`")]
    TransMismatch(usize, String, String),
    #[error("step {0}: operation `{1}` unknown or arity mismatch")]
    BadOperation(usize, String),
    #[error("step {0}: generator pair {1} <= {2} does not hold")]
    BadGeneratorPair(usize, String, String),
    #[error("derivation is empty")]
    Empty,
    #[error("conclusion records {0} <= {1} but the final step concludes {2} <= {3}")]
    ConclusionMismatch(String, String, String, String),
}

/// Substitution application local to the checker.
fn apply(t: &Term, subst: &[(String, Term)]) -> Term {
    match t {
        Term::Atom(v) => {
            for (name, image) in subst {
                if name == v {
                    return image.clone();
                }
            }
            t.clone()
        }
        Term::App(op, args) => {
            Term::App(op.clone(), args.iter().map(|a| apply(a, subst)).collect())
        }
    }
}

fn ensure_ground(
    step: usize,
    t: &Term,
    pres: &Presentation,
    generators: &Poset,
) -> Result<(), CheckError> {
    let gens: Vec<String> = generators.labels().to_vec();
    t.validate(pres.signature(), &gens)
        .map_err(|_| CheckError::NotGround(step, t.to_string()))
}

/// Replays a derivation. Every step is recomputed from the presentation and
/// the generator poset alone; nothing from the saturation engine is trusted.
pub fn check(
    pres: &Presentation,
    generators: &Poset,
    d: &Derivation,
) -> Result<(), CheckError> {
    let mut concluded: Vec<(Term, Term)> = Vec::with_capacity(d.steps.len());
    for (i, step) in d.steps.iter().enumerate() {
        let pair = match step {
            Step::Axiom { axiom, subst } => {
                let ax = pres
                    .axioms()
                    .get(*axiom)
                    .ok_or(CheckError::BadAxiomIndex(i, *axiom))?;
                for v in ax
                    .lhs
                    .atoms()
                    .into_iter()
                    .chain(ax.rhs.atoms())
                    .filter(|v| ax.context.iter().any(|c| c == v))
                {
                    if !subst.iter().any(|(name, _)| name == v) {
                        return Err(CheckError::UnboundAxiomVariable(i, v.to_string()));
                    }
                }
                let lhs = apply(&ax.lhs, subst);
                let rhs = apply(&ax.rhs, subst);
                ensure_ground(i, &lhs, pres, generators)?;
                ensure_ground(i, &rhs, pres, generators)?;
                (lhs, rhs)
            }
            Step::GeneratorOrder { lo, hi } => {
                let (Term::Atom(a), Term::Atom(b)) = (lo, hi) else {
                    return Err(CheckError::BadGeneratorPair(
                        i,
                        lo.to_string(),
                        hi.to_string(),
                    ));
                };
                let (Some(ai), Some(bi)) = (generators.index_of(a), generators.index_of(b))
                else {
                    return Err(CheckError::BadGeneratorPair(i, a.clone(), b.clone()));
                };
                if !generators.leq(ai, bi) {
                    return Err(CheckError::BadGeneratorPair(i, a.clone(), b.clone()));
                }
                (lo.clone(), hi.clone())
            }
            Step::Refl { term } => {
                ensure_ground(i, term, pres, generators)?;
                (term.clone(), term.clone())
            }
            Step::Trans { left, right } => {
                if *left >= i {
                    return Err(CheckError::PremiseOutOfOrder(i, *left));
                }
                if *right >= i {
                    return Err(CheckError::PremiseOutOfOrder(i, *right));
                }
                let (a, b1) = concluded[*left].clone();
                let (b2, c) = concluded[*right].clone();
                if b1 != b2 {
                    return Err(CheckError::TransMismatch(
                        i,
                        b1.to_string(),
                        b2.to_string(),
                    ));
                }
                (a, c)
            }
            Step::Mono { op, components } => {
                let Some(op_idx) = pres.signature().op_index(op) else {
                    return Err(CheckError::BadOperation(i, op.clone()));
                };
                if pres.signature().arity(op_idx) != components.len() {
                    return Err(CheckError::BadOperation(i, op.clone()));
                }
                let mut lhs_args = Vec::with_capacity(components.len());
                let mut rhs_args = Vec::with_capacity(components.len());
                for &c in components {
                    if c >= i {
                        return Err(CheckError::PremiseOutOfOrder(i, c));
                    }
                    let (a, b) = concluded[c].clone();
                    lhs_args.push(a);
                    rhs_args.push(b);
                }
                (
                    Term::App(op.clone(), lhs_args),
                    Term::App(op.clone(), rhs_args),
                )
            }
        };
        concluded.push(pair);
    }
    let Some(last) = concluded.last() else {
        return Err(CheckError::Empty);
    };
    if *last != d.conclusion {
        return Err(CheckError::ConclusionMismatch(
            d.conclusion.0.to_string(),
            d.conclusion.1.to_string(),
            last.0.to_string(),
            last.1.to_string(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Presentation;

    fn sl_axiom_step() -> (Presentation, Poset, Derivation) {
        let sl = Presentation::semilattice();
        let gens = Poset::discrete(vec!["a", "b"]);
        // Axiom 6 is meet(x,y) <= x (after the three expanded equations).
        let d = Derivation {
            steps: vec![Step::Axiom {
                axiom: 6,
                subst: vec![
                    ("x".into(), Term::atom("a")),
                    ("y".into(), Term::atom("b")),
                ],
            }],
            conclusion: (
                Term::app("meet", vec![Term::atom("a"), Term::atom("b")]),
                Term::atom("a"),
            ),
        };
        (sl, gens, d)
    }

    #[test]
    fn axiom_step_replays() {
        let (sl, gens, d) = sl_axiom_step();
        check(&sl, &gens, &d).unwrap();
    }

    #[test]
    fn wrong_conclusion_rejected() {
        let (sl, gens, mut d) = sl_axiom_step();
        d.conclusion.1 = Term::atom("b");
        assert!(matches!(
            check(&sl, &gens, &d),
            Err(CheckError::ConclusionMismatch(..))
        ));
    }

    #[test]
    fn forward_reference_rejected() {
        let sl = Presentation::semilattice();
        let gens = Poset::discrete(vec!["a"]);
        let d = Derivation {
            steps: vec![Step::Trans { left: 0, right: 1 }],
            conclusion: (Term::atom("a"), Term::atom("a")),
        };
        assert!(matches!(
            check(&sl, &gens, &d),
            Err(CheckError::PremiseOutOfOrder(..))
        ));
    }

    #[test]
    fn generator_pair_must_hold() {
        let sl = Presentation::semilattice();
        let gens = Poset::discrete(vec!["a", "b"]);
        let d = Derivation {
            steps: vec![Step::GeneratorOrder {
                lo: Term::atom("a"),
                hi: Term::atom("b"),
            }],
            conclusion: (Term::atom("a"), Term::atom("b")),
        };
        assert!(matches!(
            check(&sl, &gens, &d),
            Err(CheckError::BadGeneratorPair(..))
        ));
    }
}
