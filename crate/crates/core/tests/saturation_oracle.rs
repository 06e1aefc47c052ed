//! Cross-check of the saturation engine against a naive fixpoint oracle:
//! re-iterate all deduction rules on a full pair matrix until nothing
//! changes, no worklist, no classes. The oracle shares no code with the
//! engine's closure machinery.

use oal_core::poset::Poset;
use oal_core::saturate::saturate;
use oal_core::term::{Presentation, Term};
use oal_core::universe::{TermUniverse, DEFAULT_TERM_CAP};

/// Matches `pattern` against a concrete ground term, extending `subst`.
fn match_term(pattern: &Term, concrete: &Term, subst: &mut Vec<(String, Term)>) -> bool {
    match pattern {
        Term::Atom(v) => {
            if let Some((_, bound)) = subst.iter().find(|(name, _)| name == v) {
                return bound == concrete;
            }
            subst.push((v.clone(), concrete.clone()));
            true
        }
        Term::App(op, args) => match concrete {
            Term::App(cop, cargs) if cop == op && cargs.len() == args.len() => args
                .iter()
                .zip(cargs)
                .all(|(p, c)| match_term(p, c, subst)),
            _ => false,
        },
    }
}

/// Is `(s, t)` a substitution instance of the axiom?
fn is_instance(ax: &oal_core::term::Inequation, s: &Term, t: &Term) -> bool {
    let mut subst = Vec::new();
    match_term(&ax.lhs, s, &mut subst) && match_term(&ax.rhs, t, &mut subst)
}

/// The naive fixpoint: a full boolean matrix over universe terms, all rules
/// re-applied until stable.
fn naive_saturate(pres: &Presentation, uni: &TermUniverse) -> Vec<Vec<bool>> {
    let n = uni.len();
    let terms: Vec<Term> = (0..n as u32).map(|t| uni.term_of(t)).collect();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        rel[i][i] = true;
    }
    let gens = uni.generators();
    for a in 0..gens.len() {
        for b in 0..gens.len() {
            if gens.leq(a, b) {
                let ia = uni.lookup_term(&Term::atom(gens.label(a))).unwrap() as usize;
                let ib = uni.lookup_term(&Term::atom(gens.label(b))).unwrap() as usize;
                rel[ia][ib] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        // Axiom instances.
        for ax in pres.axioms() {
            for s in 0..n {
                for t in 0..n {
                    if !rel[s][t] && is_instance(ax, &terms[s], &terms[t]) {
                        rel[s][t] = true;
                        changed = true;
                    }
                }
            }
        }
        // Transitivity.
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] && !rel[i][j] {
                            rel[i][j] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        // Monotonicity: componentwise related arguments of the same
        // operation.
        let apps: Vec<usize> = (0..n)
            .filter(|&i| matches!(terms[i], Term::App(..)))
            .collect();
        for &i in &apps {
            for &j in &apps {
                if rel[i][j] {
                    continue;
                }
                let (Term::App(op1, args1), Term::App(op2, args2)) = (&terms[i], &terms[j])
                else {
                    unreachable!()
                };
                if op1 != op2 || args1.len() != args2.len() {
                    continue;
                }
                let ok = args1.iter().zip(args2).all(|(a, b)| {
                    let ia = uni.lookup_term(a).unwrap() as usize;
                    let ib = uni.lookup_term(b).unwrap() as usize;
                    rel[ia][ib]
                });
                if ok {
                    rel[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

fn compare(pres: &Presentation, gens: &Poset, depth: usize) {
    let uni = TermUniverse::build(pres.signature(), gens, depth, DEFAULT_TERM_CAP).unwrap();
    assert!(uni.len() <= 200, "oracle is quadratic; keep universes small");
    let sat = saturate(pres, &uni);
    let oracle = naive_saturate(pres, &uni);
    for s in 0..uni.len() as u32 {
        for t in 0..uni.len() as u32 {
            assert_eq!(
                sat.leq(s, t),
                oracle[s as usize][t as usize],
                "engine and oracle disagree on {} <= {}",
                uni.term_of(s),
                uni.term_of(t)
            );
        }
    }
}

#[test]
fn semilattice_on_discrete_two() {
    compare(
        &Presentation::semilattice(),
        &Poset::discrete(vec!["a", "b"]),
        2,
    );
}

#[test]
fn semilattice_on_chain_two() {
    let gens = Poset::new(vec!["a", "b"], &[(0, 1)]).unwrap();
    compare(&Presentation::semilattice(), &gens, 2);
}

#[test]
fn semilattice_on_three_generators_depth_two() {
    let gens = Poset::new(vec!["a", "b", "c"], &[(0, 2)]).unwrap();
    compare(&Presentation::semilattice(), &gens, 2);
}

#[test]
fn ordered_monoid_on_one_generator() {
    compare(
        &Presentation::ordered_monoid(),
        &Poset::discrete(vec!["x"]),
        2,
    );
}

#[test]
fn pointed_presentation_on_chain() {
    let gens = Poset::new(vec!["a", "b"], &[(0, 1)]).unwrap();
    compare(&Presentation::pointed(), &gens, 2);
}

#[test]
fn monoid_with_least_unit() {
    let mut pres = Presentation::ordered_monoid();
    pres.push_le(oal_core::term::Inequation::new(
        vec!["x"],
        Term::app("e", vec![]),
        Term::atom("x"),
    ))
    .unwrap();
    compare(&pres, &Poset::discrete(vec!["x"]), 2);
}

/// Enlarging the depth never removes derivable pairs.
#[test]
fn depth_monotonicity() {
    let sl = Presentation::semilattice();
    let gens = Poset::new(vec!["a", "b"], &[(0, 1)]).unwrap();
    let u1 = TermUniverse::build(sl.signature(), &gens, 1, DEFAULT_TERM_CAP).unwrap();
    let u2 = TermUniverse::build(sl.signature(), &gens, 2, DEFAULT_TERM_CAP).unwrap();
    let s1 = saturate(&sl, &u1);
    let s2 = saturate(&sl, &u2);
    for a in 0..u1.len() as u32 {
        for b in 0..u1.len() as u32 {
            if s1.leq(a, b) {
                let a2 = u2.lookup_term(&u1.term_of(a)).unwrap();
                let b2 = u2.lookup_term(&u1.term_of(b)).unwrap();
                assert!(s2.leq(a2, b2), "pair lost when deepening the universe");
            }
        }
    }
}
