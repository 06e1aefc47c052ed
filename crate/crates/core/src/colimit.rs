//! Colimit laws on finite instances: reflexive pairs, split coequalizers,
//! coequalizers built from symmetrized coinserters, canonical presentations
//! of algebras by free algebras, and commutation of coinserters with finite
//! products.

use thiserror::Error;

use crate::algebra::{self, Homomorphism, OrderedAlgebra};
use crate::enumerate;
use crate::free::{self, FreeError};
use crate::poset::{self, rank, unrank, CoinserterResult, MonotoneMap, Poset, PosetError};
use crate::term::Presentation;

#[derive(Debug, Error)]
pub enum ColimitError {
    #[error("split coequalizer data does not compose")]
    ShapeMismatch,
    #[error("the map e is not surjective, s cannot be computed pointwise")]
    NotComputable,
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Free(#[from] FreeError),
}

/// Searches for a joint splitting `d` with `u0 . d = u1 . d = id`, in
/// lexicographic order of the candidate tables.
pub fn is_reflexive_pair(u0: &MonotoneMap, u1: &MonotoneMap) -> Option<MonotoneMap> {
    assert!(u0.is_parallel_to(u1), "pair must be parallel");
    for d in enumerate::monotone_map_values(u0.cod(), u0.dom()) {
        let both = (0..u0.cod().len())
            .all(|x| u0.apply(d.apply(x)) == x && u1.apply(d.apply(x)) == x);
        if both {
            return Some(d);
        }
    }
    None
}

/// Reflexivity in the category of algebras: the splitting must be a
/// homomorphism.
pub fn is_reflexive_pair_alg(u0: &Homomorphism, u1: &Homomorphism) -> Option<Homomorphism> {
    assert!(u0.is_parallel_to(u1), "pair must be parallel");
    for d in algebra::all_homomorphisms(u0.cod(), u0.dom()) {
        let both = (0..u0.cod().len())
            .all(|x| u0.apply(d.apply(x)) == x && u1.apply(d.apply(x)) == x);
        if both {
            return Some(d);
        }
    }
    None
}

/// The split coequalizer data `d0, d1: A -> B`, `e: B -> C`, `t: B -> A`,
/// `s: C -> B` subject to `e.d0 = e.d1`, `e.s = id`, `d0.t = id`,
/// `d1.t = s.e`.
#[derive(Clone, Debug)]
pub struct SplitCoequalizerData {
    pub d0: MonotoneMap,
    pub d1: MonotoneMap,
    pub e: MonotoneMap,
    pub t: MonotoneMap,
    pub s: MonotoneMap,
}

#[derive(Debug)]
pub enum SplitVerdict {
    Verified(SplitCoequalizerData),
    /// Name of the failed identity and the element where it fails.
    Violation { identity: &'static str, witness: usize },
}

impl SplitVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, SplitVerdict::Verified(_))
    }
}

fn first_difference(f: &MonotoneMap, g: &MonotoneMap) -> Option<usize> {
    (0..f.dom().len()).find(|&x| f.apply(x) != g.apply(x))
}

/// Verifies the split-coequalizer identities. When `s` is absent it is
/// derived: `d0.t = id` and `d1.t.d0 = d1.t.d1` are required, then the
/// unique `s` with `s.e = d1.t` is computed pointwise and `e.s = id` is
/// checked.
pub fn split_coequalizer(
    d0: &MonotoneMap,
    d1: &MonotoneMap,
    e: &MonotoneMap,
    t: &MonotoneMap,
    s: Option<&MonotoneMap>,
) -> Result<SplitVerdict, ColimitError> {
    let shapes_ok = d0.is_parallel_to(d1)
        && d0.cod() == e.dom()
        && t.dom() == e.dom()
        && t.cod() == d0.dom()
        && s.map_or(true, |s| s.dom() == e.cod() && s.cod() == e.dom());
    if !shapes_ok {
        return Err(ColimitError::ShapeMismatch);
    }
    let ed0 = d0.then(e);
    let ed1 = d1.then(e);
    if let Some(x) = first_difference(&ed0, &ed1) {
        return Ok(SplitVerdict::Violation {
            identity: "e.d0 = e.d1",
            witness: x,
        });
    }
    let d0t = t.then(d0);
    if let Some(x) = first_difference(&d0t, &MonotoneMap::identity(e.dom())) {
        return Ok(SplitVerdict::Violation {
            identity: "d0.t = id",
            witness: x,
        });
    }
    let d1t = t.then(d1);
    let s = match s {
        Some(s) => s.clone(),
        None => {
            // d1.t must coequalize d0 and d1 before s can exist.
            let lhs = d0.then(&d1t);
            let rhs = d1.then(&d1t);
            if let Some(x) = first_difference(&lhs, &rhs) {
                return Ok(SplitVerdict::Violation {
                    identity: "d1.t.d0 = d1.t.d1",
                    witness: x,
                });
            }
            if !e.is_surjective() {
                return Err(ColimitError::NotComputable);
            }
            let mut table = vec![usize::MAX; e.cod().len()];
            for x in 0..e.dom().len() {
                let c = e.apply(x);
                let v = d1t.apply(x);
                if table[c] != usize::MAX && table[c] != v {
                    return Ok(SplitVerdict::Violation {
                        identity: "s.e = d1.t (well-definedness)",
                        witness: x,
                    });
                }
                table[c] = v;
            }
            MonotoneMap::new(e.cod().clone(), e.dom().clone(), table)?
        }
    };
    let es = s.then(e);
    if let Some(x) = first_difference(&es, &MonotoneMap::identity(e.cod())) {
        return Ok(SplitVerdict::Violation {
            identity: "e.s = id",
            witness: x,
        });
    }
    let se = e.then(&s);
    if let Some(x) = first_difference(&d1t, &se) {
        return Ok(SplitVerdict::Violation {
            identity: "d1.t = s.e",
            witness: x,
        });
    }
    // The absolute-colimit chain d1.t.d1 = s.e.d1 = s.e.d0 = d1.t.d0.
    let chain = [
        ("d1.t.d1 = s.e.d1", d1.then(&d1t), d1.then(&se)),
        ("s.e.d1 = s.e.d0", d1.then(&se), d0.then(&se)),
        ("s.e.d0 = d1.t.d0", d0.then(&se), d0.then(&d1t)),
    ];
    for (name, lhs, rhs) in chain {
        if let Some(x) = first_difference(&lhs, &rhs) {
            return Ok(SplitVerdict::Violation {
                identity: name,
                witness: x,
            });
        }
    }
    Ok(SplitVerdict::Verified(SplitCoequalizerData {
        d0: d0.clone(),
        d1: d1.clone(),
        e: e.clone(),
        t: t.clone(),
        s,
    }))
}

/// Conical coequalizer of `f, g: A -> B` in Pos, built as the coinserter of
/// the reflexive pair `[f,g,id], [g,f,id]: A + A + B -> B` (split by the
/// coproduct injection of `B`).
pub fn coequalizer(f: &MonotoneMap, g: &MonotoneMap) -> Result<CoinserterResult, PosetError> {
    if !f.is_parallel_to(g) {
        return Err(PosetError::NotParallel);
    }
    let a = f.dom();
    let b = f.cod();
    let (x, injections) = Poset::coproduct(&[a, a, b]);
    let mut r0 = vec![0usize; x.len()];
    let mut r1 = vec![0usize; x.len()];
    for i in 0..a.len() {
        r0[injections[0].apply(i)] = f.apply(i);
        r1[injections[0].apply(i)] = g.apply(i);
        r0[injections[1].apply(i)] = g.apply(i);
        r1[injections[1].apply(i)] = f.apply(i);
    }
    for i in 0..b.len() {
        r0[injections[2].apply(i)] = i;
        r1[injections[2].apply(i)] = i;
    }
    let u0 = MonotoneMap::new(x.clone(), b.clone(), r0)?;
    let u1 = MonotoneMap::new(x, b.clone(), r1)?;
    debug_assert!(is_reflexive_pair(&u0, &u1).is_some());
    let result = poset::coinserter(&u0, &u1)?;
    debug_assert_eq!(f.then(&result.map), g.then(&result.map));
    Ok(result)
}

/// Direct construction of the same coequalizer: collapse by the symmetric
/// closure of the forced pairs. Used as the cross-check for [`coequalizer`].
pub fn symmetric_collapse(
    f: &MonotoneMap,
    g: &MonotoneMap,
) -> Result<CoinserterResult, PosetError> {
    if !f.is_parallel_to(g) {
        return Err(PosetError::NotParallel);
    }
    let b = f.cod();
    let mut pre = poset::Preorder::from_poset(b);
    let mut forced = Vec::new();
    for t in 0..f.dom().len() {
        forced.push((f.apply(t), g.apply(t)));
        forced.push((g.apply(t), f.apply(t)));
    }
    pre.extend(&forced);
    let (quotient, class_of) = pre.quotient();
    let map = MonotoneMap::new(b.clone(), quotient.clone(), class_of)?;
    Ok(CoinserterResult { quotient, map })
}

/// Canonical presentation of an algebra as a split coequalizer of free
/// algebras: `F(UF(UA)) => F(UA) -> A` with the two counits, split at the
/// poset level by the units.
pub struct CanonicalPresentation {
    /// Counit at the free algebra: `FUFUA -> FUA`.
    pub d0: Homomorphism,
    /// Free image of the counit at A: `FUFUA -> FUA`.
    pub d1: Homomorphism,
    /// Counit at A (the canonical morphism): `FUA -> A`.
    pub e: Homomorphism,
    /// Unit at the carrier of FUA (a poset map, not a homomorphism).
    pub t: MonotoneMap,
    /// Unit at the carrier of A.
    pub s: MonotoneMap,
    /// Joint splitting of (d0, d1) in the category of algebras.
    pub reflexivity: Homomorphism,
    pub verdict: SplitVerdict,
}

/// Builds the canonical presentation and verifies the split-coequalizer
/// identities on the underlying maps.
pub fn canonical_presentation(
    a: &OrderedAlgebra,
    pres: &Presentation,
    depth: usize,
    cap: usize,
) -> Result<CanonicalPresentation, ColimitError> {
    let ca = free::canonical_morphism(pres, a, depth, cap)?;
    let fua = ca.free_on_carrier.clone();
    let fua_alg = fua.as_algebra()?;
    let e = ca.map;
    let cfua = free::canonical_morphism(pres, &fua_alg, depth, cap)?;
    let fufua = cfua.free_on_carrier.clone();
    let fufua_alg = fufua.as_algebra()?;
    let d0 = cfua.map;
    // d1 = F(U e): relabel generators of FUFUA along the underlying map of e
    // and evaluate in FUA.
    let relabel: Vec<usize> = (0..fua_alg.len())
        .map(|g| fua.unit().apply(e.apply(g)))
        .collect();
    let d1_table: Vec<usize> = (0..fufua.class_count())
        .map(|c| free::eval_rep(&fufua, &fua_alg, &relabel, c))
        .collect::<Result<_, _>>()
        .map_err(FreeError::from)?;
    let d1 = Homomorphism::new(fufua_alg.clone(), fua_alg.clone(), d1_table)
        .map_err(FreeError::from)?;
    // t = unit of FUFUA on the carrier of FUA; s = unit of FUA on the
    // carrier of A.
    let t = fufua.unit().clone();
    let s = fua.unit().clone();
    // Joint splitting F(unit of A): FUA -> FUFUA, witnessing reflexivity.
    let lift: Vec<usize> = (0..a.len())
        .map(|g| fufua.unit().apply(fua.unit().apply(g)))
        .collect();
    let refl_table: Vec<usize> = (0..fua.class_count())
        .map(|c| free::eval_rep(&fua, &fufua_alg, &lift, c))
        .collect::<Result<_, _>>()
        .map_err(FreeError::from)?;
    let reflexivity = Homomorphism::new(fua_alg, fufua_alg, refl_table)
        .map_err(FreeError::from)?;
    let verdict = split_coequalizer(d0.map(), d1.map(), e.map(), &t, Some(&s))?;
    Ok(CanonicalPresentation {
        d0,
        d1,
        e,
        t,
        s,
        reflexivity,
        verdict,
    })
}

/// Outcome of the commutation check between two coinserters and the binary
/// product.
#[derive(Debug)]
pub enum SiftedVerdict {
    Commutes {
        reflexive_first: bool,
        reflexive_second: bool,
    },
    CounterExample {
        reflexive_first: bool,
        reflexive_second: bool,
        product_quotient: Poset,
        quotient_product: Poset,
    },
}

impl SiftedVerdict {
    pub fn commutes(&self) -> bool {
        matches!(self, SiftedVerdict::Commutes { .. })
    }
}

/// Compares the coinserter of the componentwise product of two parallel
/// pairs with the product of their coinserters, via the canonical
/// comparison map on classes. For reflexive pairs the expected verdict is
/// `Commutes`; for others the verdict is reported without expectation.
pub fn sifted_commutation_check(
    p: (&MonotoneMap, &MonotoneMap),
    q: (&MonotoneMap, &MonotoneMap),
) -> Result<SiftedVerdict, PosetError> {
    let (u0, u1) = p;
    let (v0, v1) = q;
    if !u0.is_parallel_to(u1) || !v0.is_parallel_to(v1) {
        return Err(PosetError::NotParallel);
    }
    let reflexive_first = is_reflexive_pair(u0, u1).is_some();
    let reflexive_second = is_reflexive_pair(v0, v1).is_some();
    let (dom, _) = Poset::product(&[u0.dom(), v0.dom()]);
    let (cod, _) = Poset::product(&[u0.cod(), v0.cod()]);
    let dom_sizes = [u0.dom().len(), v0.dom().len()];
    let cod_sizes = [u0.cod().len(), v0.cod().len()];
    let pair_map = |a: &MonotoneMap, b: &MonotoneMap| -> MonotoneMap {
        let table: Vec<usize> = (0..dom.len())
            .map(|r| {
                let t = unrank(r, &dom_sizes);
                rank(&[a.apply(t[0]), b.apply(t[1])], &cod_sizes)
            })
            .collect();
        MonotoneMap::new(dom.clone(), cod.clone(), table).expect("componentwise map is monotone")
    };
    let w0 = pair_map(u0, v0);
    let w1 = pair_map(u1, v1);
    let both = poset::coinserter(&w0, &w1)?;
    let c1 = poset::coinserter(u0, u1)?;
    let c2 = poset::coinserter(v0, v1)?;
    let (qprod, _) = Poset::product(&[&c1.quotient, &c2.quotient]);
    let qsizes = [c1.quotient.len(), c2.quotient.len()];
    // Comparison map on classes, forced by surjectivity of the coinserter.
    let mut table = vec![usize::MAX; both.quotient.len()];
    let mut consistent = true;
    for r in 0..cod.len() {
        let t = unrank(r, &cod_sizes);
        let target = rank(&[c1.map.apply(t[0]), c2.map.apply(t[1])], &qsizes);
        let slot = &mut table[both.map.apply(r)];
        if *slot != usize::MAX && *slot != target {
            consistent = false;
            break;
        }
        *slot = target;
    }
    let iso = consistent
        && !table.iter().any(|&v| v == usize::MAX)
        && MonotoneMap::new(both.quotient.clone(), qprod.clone(), table)
            .map(|k| k.is_injective() && k.is_surjective() && k.is_embedding())
            .unwrap_or(false);
    if iso {
        Ok(SiftedVerdict::Commutes {
            reflexive_first,
            reflexive_second,
        })
    } else {
        Ok(SiftedVerdict::CounterExample {
            reflexive_first,
            reflexive_second,
            product_quotient: both.quotient,
            quotient_product: qprod,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::min_chain;
    use crate::universe::DEFAULT_TERM_CAP;

    #[test]
    fn identity_pair_is_reflexive() {
        let p = Poset::chain(2);
        let id = MonotoneMap::identity(&p);
        let d = is_reflexive_pair(&id, &id).unwrap();
        assert_eq!(d, id);
    }

    #[test]
    fn comparable_pair_projections_reflexive_via_diagonal() {
        let p = Poset::chain(2);
        let cp = p.comparable_pairs();
        let d = is_reflexive_pair(&cp.pi0, &cp.pi1).unwrap();
        // The diagonal is a splitting; the first found must also split.
        assert_eq!(d.then(&cp.pi0), MonotoneMap::identity(&p.discretization()));
        assert_eq!(d.then(&cp.pi1), MonotoneMap::identity(&p.discretization()));
    }

    #[test]
    fn non_surjective_pair_not_reflexive() {
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let two = Poset::discrete(vec!["a", "b"]);
        let u = MonotoneMap::new(one.clone(), two.clone(), vec![0]).unwrap();
        assert!(is_reflexive_pair(&u, &u).is_none());
    }

    #[test]
    fn identity_split_coequalizer() {
        let p = Poset::chain(2);
        let id = MonotoneMap::identity(&p);
        let v = split_coequalizer(&id, &id, &id, &id, None).unwrap();
        match v {
            SplitVerdict::Verified(data) => assert_eq!(data.s, id),
            SplitVerdict::Violation { identity, .. } => panic!("violated {identity}"),
        }
    }

    #[test]
    fn mutated_data_violates() {
        // d0.t != id: use a constant t.
        let p = Poset::chain(2);
        let id = MonotoneMap::identity(&p);
        let konst = MonotoneMap::new(p.clone(), p.clone(), vec![0, 0]).unwrap();
        let v = split_coequalizer(&id, &id, &id, &konst, None).unwrap();
        assert!(matches!(
            v,
            SplitVerdict::Violation {
                identity: "d0.t = id",
                ..
            }
        ));
    }

    #[test]
    fn coequalizer_identifies_both_ways() {
        // Two points picked by f and g collapse to one class.
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let two = Poset::discrete(vec!["a", "b"]);
        let f = MonotoneMap::new(one.clone(), two.clone(), vec![0]).unwrap();
        let g = MonotoneMap::new(one, two, vec![1]).unwrap();
        let co = coequalizer(&f, &g).unwrap();
        assert_eq!(co.quotient.len(), 1);
        let direct = symmetric_collapse(&f, &g).unwrap();
        assert!(crate::iso::are_isomorphic(&co.quotient, &direct.quotient));
    }

    #[test]
    fn coequalizer_of_equal_pair_is_identity() {
        let p = Poset::chain(3);
        let id = MonotoneMap::identity(&p);
        let co = coequalizer(&id, &id).unwrap();
        assert!(crate::iso::are_isomorphic(&co.quotient, &p));
    }

    #[test]
    fn canonical_presentation_of_min_chain() {
        let sl = Presentation::semilattice();
        let a = min_chain(2);
        let cp = canonical_presentation(&a, &sl, 2, DEFAULT_TERM_CAP).unwrap();
        assert!(cp.verdict.is_verified());
        // Reflexivity: the joint splitting splits both counit legs.
        let r0 = cp.reflexivity.then(&cp.d0);
        let r1 = cp.reflexivity.then(&cp.d1);
        let id = Homomorphism::identity(cp.d0.cod());
        assert_eq!(r0, id);
        assert_eq!(r1, id);
    }

    #[test]
    fn canonical_presentation_of_pointed_poset() {
        // {e < a} over the pointed presentation e <= x.
        let pt = Presentation::pointed();
        let carrier = Poset::new(vec!["e", "a"], &[(0, 1)]).unwrap();
        let alg =
            OrderedAlgebra::new(pt.signature().clone(), carrier, vec![vec![0]]).unwrap();
        let cp = canonical_presentation(&alg, &pt, 2, DEFAULT_TERM_CAP).unwrap();
        assert!(cp.verdict.is_verified());
    }

    #[test]
    fn sifted_commutation_for_canonical_pairs() {
        let p = Poset::chain(2);
        let cp = p.comparable_pairs();
        let v = sifted_commutation_check((&cp.pi0, &cp.pi1), (&cp.pi0, &cp.pi1)).unwrap();
        match v {
            SiftedVerdict::Commutes {
                reflexive_first,
                reflexive_second,
            } => {
                assert!(reflexive_first && reflexive_second);
            }
            SiftedVerdict::CounterExample { .. } => panic!("canonical pairs must commute"),
        }
    }

    #[test]
    fn sifted_commutation_with_identity_pair() {
        let p = Poset::chain(2);
        let cp = p.comparable_pairs();
        let c3 = Poset::chain(3);
        let id = MonotoneMap::identity(&c3);
        let v = sifted_commutation_check((&cp.pi0, &cp.pi1), (&id, &id)).unwrap();
        assert!(v.commutes());
    }
}
