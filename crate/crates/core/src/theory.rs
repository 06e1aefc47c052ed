//! Discrete Lawvere theories of a presentation, their models, and the
//! algebra/model correspondence.
//!
//! The theory materializes the hom-posets `T(n,1)` as free algebras on
//! discrete `n` up to a maximal arity; `T(n,k)` is represented as k-tuples,
//! so finite products are strictly preserved by construction. Composition is
//! substitution of representatives, evaluated through the free-algebra
//! tables.

use thiserror::Error;

use crate::algebra::{self, AlgebraError, OrderedAlgebra};
use crate::free::{free_algebra, FreeAlgebra, FreeError};
use crate::poset::{rank, unrank, Poset};
use crate::term::Presentation;

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("free algebra on discrete {0} did not stabilize")]
    Truncated(usize),
    #[error("operation `{op}` has arity {arity}, above the materialized maximum {max}")]
    ArityOutOfRange { op: String, arity: usize, max: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("theory law violated: {0}")]
    LawViolated(String),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A discrete Lawvere theory, materialized up to `max_arity`.
pub struct DiscreteLawvereTheory {
    pres: Presentation,
    max_arity: usize,
    /// hom(n, 1) as the free algebra on discrete n, for n = 0..=max_arity.
    homs: Vec<FreeAlgebra>,
    /// The same hom-posets as ordered algebras (for evaluation).
    algs: Vec<OrderedAlgebra>,
}

impl DiscreteLawvereTheory {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn hom(&self, n: usize) -> &FreeAlgebra {
        &self.homs[n]
    }

    pub fn hom_algebra(&self, n: usize) -> &OrderedAlgebra {
        &self.algs[n]
    }

    /// Size of the hom-poset T(n, 1).
    pub fn hom_size(&self, n: usize) -> usize {
        self.homs[n].class_count()
    }

    /// The i-th projection in T(n, 1): the class of the i-th generator.
    pub fn projection(&self, n: usize, i: usize) -> usize {
        self.homs[n].unit().apply(i)
    }

    /// Composition by substitution: `f` in T(n,1) composed with the tuple
    /// `gs` in T(m,1)^n gives an element of T(m,1), the class of the
    /// representative of `f` with the i-th generator replaced by `gs[i]`.
    pub fn compose(&self, n: usize, f: usize, m: usize, gs: &[usize]) -> usize {
        assert_eq!(gs.len(), n, "tuple length must match the source arity");
        crate::free::eval_rep(&self.homs[n], &self.algs[m], gs, f)
            .expect("representatives evaluate in hom algebras")
    }
}

/// Builds the discrete Lawvere theory of a presentation up to `max_arity`,
/// validating the structural laws: identity on objects with strict product
/// preservation (by the tuple representation), projection laws, and identity
/// of composition at the projections.
pub fn theory_of(
    pres: &Presentation,
    max_arity: usize,
    depth: usize,
    cap: usize,
) -> Result<DiscreteLawvereTheory, TheoryError> {
    let mut homs = Vec::with_capacity(max_arity + 1);
    let mut algs = Vec::with_capacity(max_arity + 1);
    for n in 0..=max_arity {
        let f = free_algebra(pres, &Poset::discrete_n(n), depth, cap)?;
        if !f.is_total() {
            return Err(TheoryError::Truncated(n));
        }
        algs.push(f.as_algebra()?);
        homs.push(f);
    }
    let theory = DiscreteLawvereTheory {
        pres: pres.clone(),
        max_arity,
        homs,
        algs,
    };
    // pi_i . <g_0..g_{n-1}> = g_i.
    for n in 1..=max_arity {
        for m in 0..=max_arity {
            let size_m = theory.hom_size(m);
            let (count, sizes) = algebra::tuple_space(size_m, n);
            for r in 0..count {
                let gs = unrank(r, &sizes);
                for i in 0..n {
                    let c = theory.compose(n, theory.projection(n, i), m, &gs);
                    if c != gs[i] {
                        return Err(TheoryError::LawViolated(format!(
                            "projection law fails at n={n}, m={m}, i={i}"
                        )));
                    }
                }
            }
        }
    }
    // f . <pi_0..pi_{n-1}> = f.
    for n in 0..=max_arity {
        let projs: Vec<usize> = (0..n).map(|i| theory.projection(n, i)).collect();
        for f in 0..theory.hom_size(n) {
            if theory.compose(n, f, n, &projs) != f {
                return Err(TheoryError::LawViolated(format!(
                    "identity law fails at n={n}, f={f}"
                )));
            }
        }
    }
    Ok(theory)
}

/// A model of a discrete Lawvere theory: a base poset with a monotone action
/// of every hom-poset, strictly product-preserving by representation (the
/// value at `n` is the n-fold power of the base).
pub struct Model {
    base: Poset,
    max_arity: usize,
    /// actions[n][f] is the table of a monotone map base^n -> base.
    actions: Vec<Vec<Vec<usize>>>,
}

impl Model {
    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn action(&self, n: usize, f: usize) -> &[usize] {
        &self.actions[n][f]
    }

    pub fn apply(&self, n: usize, f: usize, tuple: &[usize]) -> usize {
        let (_, sizes) = algebra::tuple_space(self.base.len(), n);
        self.actions[n][f][rank(tuple, &sizes)]
    }
}

/// The model of an algebra: `action(f)(h) = h#(f)`, the value of the unique
/// homomorphic extension of the tuple `h` at `f` — computed by evaluating
/// the representative of `f` under the valuation `h`.
pub fn model_of_algebra(
    a: &OrderedAlgebra,
    t: &DiscreteLawvereTheory,
) -> Result<Model, TheoryError> {
    algebra::satisfies_all(a, &t.pres).map_err(|e| TheoryError::PreconditionFailed(e.to_string()))?;
    let base = a.carrier().clone();
    let mut actions = Vec::with_capacity(t.max_arity + 1);
    for n in 0..=t.max_arity {
        let (count, sizes) = algebra::tuple_space(base.len(), n);
        let mut tables = Vec::with_capacity(t.hom_size(n));
        for f in 0..t.hom_size(n) {
            let mut table = Vec::with_capacity(count);
            for r in 0..count {
                let h = unrank(r, &sizes);
                table.push(crate::free::eval_rep(&t.homs[n], a, &h, f)?);
            }
            tables.push(table);
        }
        actions.push(tables);
    }
    let model = Model {
        base,
        max_arity: t.max_arity,
        actions,
    };
    validate_model(&model, t)?;
    Ok(model)
}

/// Validates the model invariants: each action is monotone as a map from the
/// hom-poset into the poset of monotone maps, projections act as product
/// projections, and composition is preserved.
pub fn validate_model(m: &Model, t: &DiscreteLawvereTheory) -> Result<(), TheoryError> {
    let nbase = m.base.len();
    for n in 0..=t.max_arity {
        let (count, sizes) = algebra::tuple_space(nbase, n);
        // Each action is a monotone map base^n -> base.
        for f in 0..t.hom_size(n) {
            for r1 in 0..count {
                let t1 = unrank(r1, &sizes);
                'next: for r2 in 0..count {
                    let t2 = unrank(r2, &sizes);
                    for i in 0..n {
                        if !m.base.leq(t1[i], t2[i]) {
                            continue 'next;
                        }
                    }
                    if !m.base.leq(m.actions[n][f][r1], m.actions[n][f][r2]) {
                        return Err(TheoryError::LawViolated(format!(
                            "action of {f} in T({n},1) is not monotone"
                        )));
                    }
                }
            }
        }
        // The action is monotone in the hom argument.
        for f1 in 0..t.hom_size(n) {
            for f2 in 0..t.hom_size(n) {
                if t.hom(n).classes().leq(f1, f2) {
                    for r in 0..count {
                        if !m.base.leq(m.actions[n][f1][r], m.actions[n][f2][r]) {
                            return Err(TheoryError::LawViolated(format!(
                                "action is not monotone from T({n},1)"
                            )));
                        }
                    }
                }
            }
        }
        // Projections act as product projections.
        for i in 0..n {
            let p = t.projection(n, i);
            for r in 0..count {
                if m.actions[n][p][r] != unrank(r, &sizes)[i] {
                    return Err(TheoryError::LawViolated(format!(
                        "projection {i} of T({n},1) does not act as a projection"
                    )));
                }
            }
        }
    }
    // Composition is preserved: action(f . gs) = action(f) after the actions
    // of the tuple.
    for n in 0..=t.max_arity {
        for mm in 0..=t.max_arity {
            let size_m = t.hom_size(mm);
            let (tuples, tuple_sizes) = algebra::tuple_space(size_m, n);
            let (points, point_sizes) = algebra::tuple_space(nbase, mm);
            for f in 0..t.hom_size(n) {
                for tr in 0..tuples {
                    let gs = unrank(tr, &tuple_sizes);
                    let composite = t.compose(n, f, mm, &gs);
                    for pr in 0..points {
                        let h = unrank(pr, &point_sizes);
                        let lhs = m.apply(mm, composite, &h);
                        let inner: Vec<usize> =
                            gs.iter().map(|&g| m.apply(mm, g, &h)).collect();
                        let rhs = m.apply(n, f, &inner);
                        if lhs != rhs {
                            return Err(TheoryError::LawViolated(format!(
                                "functoriality fails at n={n}, m={mm}, f={f}"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Rebuilds an ordered algebra from a model: the table of an operation is
/// the action of the class of the term applying it to the projections.
pub fn algebra_of_model(
    m: &Model,
    t: &DiscreteLawvereTheory,
) -> Result<OrderedAlgebra, TheoryError> {
    let sig = t.pres.signature().clone();
    let mut tables = Vec::new();
    for (idx, op) in sig.ops().iter().enumerate() {
        if op.arity > t.max_arity {
            return Err(TheoryError::ArityOutOfRange {
                op: op.name.clone(),
                arity: op.arity,
                max: t.max_arity,
            });
        }
        // Class of op(x0,..,x{n-1}) in T(n,1).
        let projs: Vec<usize> = (0..op.arity).map(|i| t.projection(op.arity, i)).collect();
        let class = t.homs[op.arity]
            .apply(idx, &projs)
            .expect("total free algebra");
        tables.push(m.actions[op.arity][class].clone());
    }
    let alg = OrderedAlgebra::new(sig, m.base.clone(), tables)?;
    algebra::satisfies_all(&alg, &t.pres)
        .map_err(|e| TheoryError::LawViolated(format!("rebuilt algebra fails an axiom: {e}")))?;
    Ok(alg)
}

#[derive(Debug)]
pub enum RetractVerdict {
    /// A split pair witnessing that the algebra is a retract of the free
    /// algebra on `n` discrete generators.
    Retract {
        n: usize,
        section: algebra::Homomorphism,
        retraction: algebra::Homomorphism,
    },
    NotFoundUpTo(usize),
}

/// Searches for a presentation of `a` as a retract of a free algebra on a
/// finite discrete poset, in deterministic order: arity ascending, then
/// sections, then retractions lexicographically.
pub fn perfectly_presentable_check(
    a: &OrderedAlgebra,
    pres: &Presentation,
    n_max: usize,
    depth: usize,
    cap: usize,
) -> Result<RetractVerdict, TheoryError> {
    algebra::satisfies_all(a, pres).map_err(|e| TheoryError::PreconditionFailed(e.to_string()))?;
    for n in 0..=n_max {
        let f = free_algebra(pres, &Poset::discrete_n(n), depth, cap)?;
        if !f.is_total() {
            return Err(TheoryError::Truncated(n));
        }
        if f.class_count() < a.len() {
            // A section must be injective.
            continue;
        }
        let falg = f.as_algebra()?;
        let sections = algebra::all_homomorphisms(a, &falg);
        let retractions = algebra::all_homomorphisms(&falg, a);
        for s in &sections {
            for e in &retractions {
                let round: Vec<usize> = (0..a.len()).map(|x| e.apply(s.apply(x))).collect();
                if round.iter().enumerate().all(|(x, &y)| x == y) {
                    return Ok(RetractVerdict::Retract {
                        n,
                        section: s.clone(),
                        retraction: e.clone(),
                    });
                }
            }
        }
    }
    Ok(RetractVerdict::NotFoundUpTo(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::{diamond_min, min_chain};
    use crate::term::Presentation;
    use crate::universe::DEFAULT_TERM_CAP;

    fn t_sl(max_arity: usize) -> DiscreteLawvereTheory {
        theory_of(&Presentation::semilattice(), max_arity, 3, DEFAULT_TERM_CAP).unwrap()
    }

    #[test]
    fn semilattice_hom_sizes() {
        let t = t_sl(2);
        assert_eq!(t.hom_size(0), 0, "no closed terms without constants");
        assert_eq!(t.hom_size(1), 1, "idempotence collapses T(1,1)");
        assert_eq!(t.hom_size(2), 3);
    }

    #[test]
    fn composition_respects_commutativity() {
        let t = t_sl(2);
        // meet(pi0, pi1) composed with the swapped projections is itself.
        let p0 = t.projection(2, 0);
        let p1 = t.projection(2, 1);
        let meet = t.homs[2].apply(0, &[p0, p1]).unwrap();
        let swapped = t.compose(2, meet, 2, &[p1, p0]);
        assert_eq!(swapped, meet);
    }

    #[test]
    fn composition_with_diagonal_is_identity() {
        let t = t_sl(2);
        let p0 = t.projection(2, 0);
        let p1 = t.projection(2, 1);
        let meet = t.homs[2].apply(0, &[p0, p1]).unwrap();
        let one = t.projection(1, 0);
        // meet . <pi0, pi0> in T(1,1) is the single class (idempotence).
        let diag = t.compose(2, meet, 1, &[one, one]);
        assert_eq!(diag, one);
    }

    #[test]
    fn model_action_of_meet_is_min() {
        let t = t_sl(2);
        let a = min_chain(2);
        let m = model_of_algebra(&a, &t).unwrap();
        let p0 = t.projection(2, 0);
        let p1 = t.projection(2, 1);
        let meet = t.homs[2].apply(0, &[p0, p1]).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(m.apply(2, meet, &[x, y]), x.min(y));
            }
        }
        // Projections act as product projections.
        assert_eq!(m.apply(2, p0, &[0, 1]), 0);
        assert_eq!(m.apply(2, p1, &[0, 1]), 1);
    }

    #[test]
    fn algebra_model_round_trip() {
        let t = t_sl(2);
        for a in [min_chain(2), diamond_min()] {
            let m = model_of_algebra(&a, &t).unwrap();
            let back = algebra_of_model(&m, &t).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn one_point_round_trip() {
        let t = t_sl(2);
        let one = OrderedAlgebra::terminal(t.presentation().signature().clone());
        let m = model_of_algebra(&one, &t).unwrap();
        let back = algebra_of_model(&m, &t).unwrap();
        assert_eq!(back, one);
    }

    #[test]
    fn free_algebra_is_its_own_retract() {
        let sl = Presentation::semilattice();
        let f = free_algebra(&sl, &Poset::discrete_n(2), 2, DEFAULT_TERM_CAP).unwrap();
        let a = f.as_algebra().unwrap();
        match perfectly_presentable_check(&a, &sl, 2, 2, DEFAULT_TERM_CAP).unwrap() {
            RetractVerdict::Retract { n, .. } => assert_eq!(n, 2),
            RetractVerdict::NotFoundUpTo(_) => panic!("free algebra must be a retract of itself"),
        }
    }

    #[test]
    fn one_point_algebra_is_retract_of_f1() {
        let sl = Presentation::semilattice();
        let one = OrderedAlgebra::terminal(sl.signature().clone());
        match perfectly_presentable_check(&one, &sl, 3, 2, DEFAULT_TERM_CAP).unwrap() {
            RetractVerdict::Retract { n, .. } => assert_eq!(n, 1),
            RetractVerdict::NotFoundUpTo(_) => panic!("one-point algebra is a retract of F(1)"),
        }
    }

    #[test]
    fn min_chain3_is_retract_of_f3() {
        let sl = Presentation::semilattice();
        let a = min_chain(3);
        match perfectly_presentable_check(&a, &sl, 3, 3, DEFAULT_TERM_CAP).unwrap() {
            RetractVerdict::Retract { n, section, retraction } => {
                assert_eq!(n, 3);
                for x in 0..3 {
                    assert_eq!(retraction.apply(section.apply(x)), x);
                }
            }
            RetractVerdict::NotFoundUpTo(_) => panic!("chain-3 is a retract of F(3)"),
        }
    }
}
