//! Free ordered algebras on finite posets by saturation to a fixpoint, the
//! tensor universal property, and the canonical morphism onto an algebra.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{self, AlgebraError, Homomorphism, OrderedAlgebra};
use crate::enumerate;
use crate::poset::{rank, unrank, MonotoneMap, Poset};
use crate::saturate::saturate;
use crate::term::{Presentation, Term};
use crate::universe::{TermUniverse, UniverseError};

#[derive(Debug, Error)]
pub enum FreeError {
    #[error("free algebra did not stabilize at depth {0}")]
    Truncated(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeStatus {
    Total,
    Truncated(usize),
}

/// The free algebra of a presentation on an ordered set of generators,
/// computed on a depth-bounded term universe.
///
/// Classes are the saturation classes; the class order is the derivable
/// preorder modulo its symmetric part. `status` is `Total` when the quotient
/// is closed under the operations — equivalently, when every class
/// representative has depth strictly below the bound — and `Truncated`
/// otherwise, in which case the tables are partial.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pres: Presentation,
    generators: Poset,
    classes: Poset,
    reps: Vec<Term>,
    tables: Vec<Vec<Option<usize>>>,
    unit: MonotoneMap,
    status: FreeStatus,
    depth: usize,
}

impl FreeAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn generators(&self) -> &Poset {
        &self.generators
    }

    /// Poset of class representatives.
    pub fn classes(&self) -> &Poset {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn rep(&self, class: usize) -> &Term {
        &self.reps[class]
    }

    pub fn unit(&self) -> &MonotoneMap {
        &self.unit
    }

    pub fn status(&self) -> &FreeStatus {
        &self.status
    }

    pub fn is_total(&self) -> bool {
        self.status == FreeStatus::Total
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Table entry for an operation on classes, when representable.
    pub fn apply(&self, op_idx: usize, args: &[usize]) -> Option<usize> {
        let (_, sizes) = algebra::tuple_space(self.classes.len(), args.len());
        self.tables[op_idx][rank(args, &sizes)]
    }

    /// The underlying ordered algebra; requires `Total`.
    pub fn as_algebra(&self) -> Result<OrderedAlgebra, FreeError> {
        if let FreeStatus::Truncated(d) = self.status {
            return Err(FreeError::Truncated(d));
        }
        let tables = self
            .tables
            .iter()
            .map(|t| t.iter().map(|e| e.expect("total")).collect())
            .collect();
        Ok(OrderedAlgebra::new(
            self.pres.signature().clone(),
            self.classes.clone(),
            tables,
        )?)
    }
}

/// Builds the free algebra on `p`: saturates the depth-bounded term universe
/// over the generators, quotients, and detects the fixpoint.
pub fn free_algebra(
    pres: &Presentation,
    p: &Poset,
    depth: usize,
    cap: usize,
) -> Result<FreeAlgebra, FreeError> {
    assert!(depth >= 1, "free algebras need depth at least 1");
    let uni = TermUniverse::build(pres.signature(), p, depth, cap)?;
    let sat = saturate(pres, &uni);
    let k = sat.class_count();
    let reps: Vec<Term> = (0..k).map(|c| sat.rep_term(c)).collect();
    let rep_ids: Vec<_> = (0..k).map(|c| sat.rep(c)).collect();
    // Representative strings can collide when a generator label shadows a
    // constant; suffix duplicates to keep poset labels distinct.
    let mut labels: Vec<String> = Vec::with_capacity(k);
    for rep in &reps {
        let base = rep.to_string();
        let mut label = base.clone();
        let mut n = 1;
        while labels.contains(&label) {
            n += 1;
            label = format!("{base}#{n}");
        }
        labels.push(label);
    }
    let mut pairs = Vec::new();
    for c1 in 0..k {
        for c2 in 0..k {
            if sat.class_leq(c1, c2) {
                pairs.push((c1, c2));
            }
        }
    }
    let classes = Poset::new(labels, &pairs).expect("class order is a poset");
    let total = rep_ids.iter().all(|&r| uni.depth(r) < depth);
    let sig = pres.signature();
    let mut tables = Vec::new();
    for op_idx in 0..sig.ops().len() {
        let arity = sig.arity(op_idx);
        let (count, sizes) = algebra::tuple_space(k, arity);
        let mut table = vec![None; count];
        for r in 0..count {
            let tuple = unrank(r, &sizes);
            if tuple.iter().any(|&c| uni.depth(rep_ids[c]) >= depth) {
                continue;
            }
            let args: Vec<_> = tuple.iter().map(|&c| rep_ids[c]).collect();
            if let Some(t) = uni.lookup_app(op_idx, &args) {
                table[r] = Some(sat.class_of(t));
            }
        }
        tables.push(table);
    }
    let unit_table: Vec<usize> = (0..p.len()).map(|g| sat.class_of(uni.gen_id(g))).collect();
    let unit = MonotoneMap::new(p.clone(), classes.clone(), unit_table)
        .expect("generator order maps into the class order");
    Ok(FreeAlgebra {
        pres: pres.clone(),
        generators: p.clone(),
        classes,
        reps,
        tables,
        unit,
        status: if total {
            FreeStatus::Total
        } else {
            FreeStatus::Truncated(depth)
        },
        depth,
    })
}

/// Evaluates a class representative in an algebra under a valuation of the
/// generators (as a table `generator index -> element`).
pub fn eval_rep(
    f: &FreeAlgebra,
    a: &OrderedAlgebra,
    valuation: &[usize],
    class: usize,
) -> Result<usize, AlgebraError> {
    let val: BTreeMap<String, usize> = f
        .generators
        .labels()
        .iter()
        .cloned()
        .zip(valuation.iter().copied())
        .collect();
    algebra::eval(a, &val, &f.reps[class])
}

#[derive(Clone, Debug)]
pub enum UpVerdict {
    Pass {
        maps: usize,
    },
    Fail(UpFailure),
}

impl UpVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, UpVerdict::Pass { .. })
    }
}

#[derive(Clone, Debug)]
pub enum UpFailure {
    /// A monotone map of generators with no homomorphic extension.
    NoExtension { map: Vec<usize> },
    /// A monotone map with several extensions.
    NonUniqueExtension { map: Vec<usize> },
    /// A homomorphism that is not the extension of any generator map.
    NotSurjective,
    /// The correspondence fails to be an order-isomorphism.
    NotOrderIso { lo: Vec<usize>, hi: Vec<usize> },
}

/// Verifies the tensor universal property of a total free algebra against a
/// model `a`: every monotone map of generators has exactly one homomorphic
/// extension, and the correspondence is an order-isomorphism onto the
/// homomorphism poset.
pub fn universal_property_check(
    f: &FreeAlgebra,
    a: &OrderedAlgebra,
) -> Result<UpVerdict, FreeError> {
    if !f.is_total() {
        return Err(FreeError::PreconditionFailed(
            "free algebra is not total".into(),
        ));
    }
    algebra::satisfies_all(a, &f.pres)
        .map_err(|e| FreeError::PreconditionFailed(e.to_string()))?;
    let falg = f.as_algebra()?;
    let homs = algebra::all_homomorphisms(&falg, a);
    let gen_maps = enumerate::monotone_maps(f.generators(), a.carrier());
    let mut extension_of: Vec<usize> = Vec::with_capacity(gen_maps.len());
    let mut hom_used = vec![false; homs.len()];
    for gm in gen_maps.iter() {
        let mut found: Option<usize> = None;
        for (hi, h) in homs.iter().enumerate() {
            let extends = (0..f.generators().len())
                .all(|g| h.apply(f.unit.apply(g)) == gm[g]);
            if extends {
                if found.is_some() {
                    return Ok(UpVerdict::Fail(UpFailure::NonUniqueExtension {
                        map: gm.clone(),
                    }));
                }
                found = Some(hi);
            }
        }
        match found {
            Some(hi) => {
                extension_of.push(hi);
                hom_used[hi] = true;
            }
            None => return Ok(UpVerdict::Fail(UpFailure::NoExtension { map: gm.clone() })),
        }
    }
    if hom_used.iter().any(|u| !u) {
        return Ok(UpVerdict::Fail(UpFailure::NotSurjective));
    }
    // Order-isomorphism: pointwise order of generator maps matches pointwise
    // order of their extensions.
    for (i, gi) in gen_maps.iter().enumerate() {
        for (j, gj) in gen_maps.iter().enumerate() {
            let lo_leq = (0..f.generators().len()).all(|g| a.carrier().leq(gi[g], gj[g]));
            let hi_leq = homs[extension_of[i]]
                .map()
                .pointwise_leq(homs[extension_of[j]].map());
            if lo_leq != hi_leq {
                return Ok(UpVerdict::Fail(UpFailure::NotOrderIso {
                    lo: gi.clone(),
                    hi: gj.clone(),
                }));
            }
        }
    }
    Ok(UpVerdict::Pass {
        maps: gen_maps.len(),
    })
}

/// The canonical morphism onto an algebra: the extension of the identity
/// valuation from the free algebra on the underlying poset.
#[derive(Clone, Debug)]
pub struct CanonicalMorphism {
    pub free_on_carrier: FreeAlgebra,
    pub map: Homomorphism,
}

/// Computes the canonical morphism `c_X: F(UX) -> X` and checks its stated
/// properties: the hom-poset from the free algebra on one generator is
/// order-isomorphic to the carrier, the morphism is surjective, and it is
/// the coinserter of its own prekernel pair.
pub fn canonical_morphism(
    pres: &Presentation,
    x: &OrderedAlgebra,
    depth: usize,
    cap: usize,
) -> Result<CanonicalMorphism, FreeError> {
    algebra::satisfies_all(x, pres).map_err(|e| FreeError::PreconditionFailed(e.to_string()))?;
    let one = Poset::new(vec!["*"], &[]).unwrap();
    let g = free_algebra(pres, &one, depth, cap)?;
    if let FreeStatus::Truncated(d) = g.status {
        return Err(FreeError::Truncated(d));
    }
    // Hom-poset K(G, X) is order-isomorphic to the carrier of X.
    let galg = g.as_algebra()?;
    let homs = algebra::all_homomorphisms(&galg, x);
    let point = g.unit.apply(0);
    for e in 0..x.len() {
        let matching: Vec<&Homomorphism> =
            homs.iter().filter(|h| h.apply(point) == e).collect();
        if matching.len() != 1 {
            return Err(FreeError::PreconditionFailed(format!(
                "hom-poset K(G,X) is not the carrier at element {}",
                x.carrier().label(e)
            )));
        }
    }
    for h1 in &homs {
        for h2 in &homs {
            let elems = x.carrier().leq(h1.apply(point), h2.apply(point));
            if elems != h1.map().pointwise_leq(h2.map()) {
                return Err(FreeError::PreconditionFailed(
                    "hom-poset K(G,X) order differs from the carrier".into(),
                ));
            }
        }
    }
    let f = free_algebra(pres, x.carrier(), depth, cap)?;
    if let FreeStatus::Truncated(d) = f.status {
        return Err(FreeError::Truncated(d));
    }
    let falg = f.as_algebra()?;
    let identity: Vec<usize> = (0..x.len()).collect();
    let table: Vec<usize> = (0..f.class_count())
        .map(|c| eval_rep(&f, x, &identity, c))
        .collect::<Result<_, _>>()?;
    let map = Homomorphism::new(falg, x.clone(), table)?;
    if !map.map().is_surjective() {
        return Err(FreeError::PreconditionFailed(
            "canonical morphism is not surjective".into(),
        ));
    }
    if !algebra::is_coinserter_of_own_prekernel(&map) {
        return Err(FreeError::PreconditionFailed(
            "canonical morphism is not the coinserter of its prekernel pair".into(),
        ));
    }
    Ok(CanonicalMorphism {
        free_on_carrier: f,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::DEFAULT_TERM_CAP;

    fn sl() -> Presentation {
        Presentation::semilattice()
    }

    #[test]
    fn empty_signature_free_algebra_is_the_poset() {
        let sig = crate::term::Signature::empty();
        let pres = Presentation::new(sig, Vec::new()).unwrap();
        let p = Poset::new(vec!["a", "b", "c"], &[(0, 1)]).unwrap();
        let f = free_algebra(&pres, &p, 1, DEFAULT_TERM_CAP).unwrap();
        assert!(f.is_total());
        assert_eq!(f.class_count(), 3);
        assert!(crate::iso::are_isomorphic(f.classes(), &p));
    }

    #[test]
    fn free_semilattice_on_discrete_two() {
        let f = free_algebra(&sl(), &Poset::discrete(vec!["a", "b"]), 2, DEFAULT_TERM_CAP)
            .unwrap();
        assert!(f.is_total());
        assert_eq!(f.class_count(), 3);
        let a = f.classes().index_of("a").unwrap();
        let b = f.classes().index_of("b").unwrap();
        let ab = f.classes().index_of("meet(a,b)").unwrap();
        assert!(f.classes().lt(ab, a) && f.classes().lt(ab, b));
        assert!(!f.classes().leq(a, b) && !f.classes().leq(b, a));
    }

    #[test]
    fn free_semilattice_on_chain_collapses() {
        let chain = Poset::new(vec!["a", "b"], &[(0, 1)]).unwrap();
        let f = free_algebra(&sl(), &chain, 2, DEFAULT_TERM_CAP).unwrap();
        assert!(f.is_total());
        assert_eq!(f.class_count(), 2);
        assert!(crate::iso::are_isomorphic(f.classes(), &chain));
    }

    #[test]
    fn free_monoid_is_truncated() {
        let m = Presentation::ordered_monoid();
        let f = free_algebra(&m, &Poset::discrete(vec!["x"]), 3, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(*f.status(), FreeStatus::Truncated(3));
        // No axiom merges distinct powers of the generator, so the classes
        // stay discrete: e, x, x^2, ... up to the depth bound.
        assert!(f.classes().is_discrete());
        assert!(f.class_count() >= 4);
    }

    #[test]
    fn universal_property_against_min_chain() {
        let f = free_algebra(&sl(), &Poset::discrete(vec!["a", "b"]), 2, DEFAULT_TERM_CAP)
            .unwrap();
        let a = crate::algebra::tests_support::min_chain(2);
        let verdict = universal_property_check(&f, &a).unwrap();
        match verdict {
            UpVerdict::Pass { maps } => assert_eq!(maps, 4),
            UpVerdict::Fail(fail) => panic!("universal property failed: {fail:?}"),
        }
    }

    #[test]
    fn canonical_morphism_on_chain_is_iso() {
        let x = crate::algebra::tests_support::min_chain(2);
        let cm = canonical_morphism(&sl(), &x, 2, DEFAULT_TERM_CAP).unwrap();
        assert!(cm.map.map().is_surjective());
        assert!(cm.map.map().is_injective());
    }

    #[test]
    fn canonical_morphism_on_diamond_collapses_classes() {
        // 4-element diamond with binary meet: free SL on the carrier has 5
        // classes, the canonical morphism folds the synthetic meet class
        // onto the bottom.
        let x = crate::algebra::tests_support::diamond_min();
        let cm = canonical_morphism(&sl(), &x, 2, DEFAULT_TERM_CAP).unwrap();
        assert!(cm.map.map().is_surjective());
        assert!(!cm.map.map().is_injective());
        assert_eq!(cm.free_on_carrier.class_count(), 5);
    }

    #[test]
    fn canonical_morphism_on_one_point() {
        let one = OrderedAlgebra::terminal(sl().signature().clone());
        let cm = canonical_morphism(&sl(), &one, 2, DEFAULT_TERM_CAP).unwrap();
        assert!(cm.map.map().is_surjective());
    }
}
