//! Properties of the Pos-level constructions: prekernel universality,
//! factorization uniqueness against an independent image oracle, canonical
//! coinserters, and closure invariants under random generating pairs.

use oal_core::enumerate::{monotone_map_values, posets_up_to};
use oal_core::iso;
use oal_core::poset::{coinserter, factor, prekernel_pair, MonotoneMap, Poset, PosetError};
use proptest::prelude::*;

/// Def-style prekernel universality: every pair `(v0, v1)` with
/// `f.v0 <= f.v1` factors through the projections by a unique monotone `k`,
/// and the factorization is order-reflecting.
#[test]
fn prekernel_pair_is_universal() {
    for x in posets_up_to(3) {
        for y in posets_up_to(2) {
            for f in monotone_map_values(x, y) {
                let (u, p0, p1) = prekernel_pair(&f);
                for v in posets_up_to(2) {
                    let maps = monotone_map_values(v, x);
                    for v0 in &maps {
                        for v1 in &maps {
                            let inequated = (0..v.len())
                                .all(|i| y.leq(f.apply(v0.apply(i)), f.apply(v1.apply(i))));
                            if !inequated {
                                continue;
                            }
                            // k is forced pointwise: k(i) = (v0(i), v1(i)).
                            let table: Vec<usize> = (0..v.len())
                                .map(|i| {
                                    (0..u.len())
                                        .find(|&j| {
                                            p0.apply(j) == v0.apply(i)
                                                && p1.apply(j) == v1.apply(i)
                                        })
                                        .expect("pair lies in the prekernel")
                                })
                                .collect();
                            let k = MonotoneMap::new(v.clone(), u.clone(), table)
                                .expect("forced factorization is monotone");
                            assert_eq!(&k.then(&p0), v0);
                            assert_eq!(&k.then(&p1), v1);
                        }
                    }
                    // Condition (2): u_i.k <= u_i.kbar for both i forces
                    // k <= kbar.
                    let ks = monotone_map_values(v, &u);
                    for k in &ks {
                        for kbar in &ks {
                            if k.then(&p0).pointwise_leq(&kbar.then(&p0))
                                && k.then(&p1).pointwise_leq(&kbar.then(&p1))
                            {
                                assert!(k.pointwise_leq(kbar));
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Independent oracle for the factorization: the image of `f` with the order
/// pulled back from the codomain.
fn image_factorization(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let image = f.image();
    let labels: Vec<String> = image
        .iter()
        .map(|&i| f.cod().label(i).to_string())
        .collect();
    let mut pairs = Vec::new();
    for (a, &ia) in image.iter().enumerate() {
        for (b, &ib) in image.iter().enumerate() {
            if f.cod().leq(ia, ib) {
                pairs.push((a, b));
            }
        }
    }
    let img_poset = Poset::new(labels, &pairs).unwrap();
    let c_table: Vec<usize> = (0..f.dom().len())
        .map(|x| image.iter().position(|&i| i == f.apply(x)).unwrap())
        .collect();
    let c = MonotoneMap::new(f.dom().clone(), img_poset.clone(), c_table).unwrap();
    let m = MonotoneMap::new(img_poset, f.cod().clone(), image).unwrap();
    (c, m)
}

#[test]
fn factorization_matches_image_oracle_up_to_iso() {
    for x in posets_up_to(4) {
        for y in posets_up_to(3) {
            for f in monotone_map_values(x, y) {
                let (c, m) = factor(&f);
                assert_eq!(c.then(&m), f);
                assert!(c.is_surjective());
                assert!(m.is_embedding());
                let (c2, m2) = image_factorization(&f);
                let phi = iso::iso_over_domain(&c, &c2)
                    .expect("factorizations are isomorphic over the domain");
                // The iso also commutes with the embeddings.
                assert_eq!(phi.then(&m2), m);
            }
        }
    }
}

/// Surjections are recovered as coinserters of their prekernel pairs.
#[test]
fn surjections_are_coinserters_of_their_prekernels() {
    for x in posets_up_to(3) {
        for y in posets_up_to(3) {
            for s in monotone_map_values(x, y) {
                if !s.is_surjective() {
                    continue;
                }
                let (_, p0, p1) = prekernel_pair(&s);
                let co = coinserter(&p0, &p1).unwrap();
                assert!(
                    iso::iso_over_domain(&co.map, &s).is_some(),
                    "surjection not recovered from its prekernel pair"
                );
            }
        }
    }
}

/// Canonical coinserter: the comparable-pairs projections are reflexive and
/// their coinserter rebuilds the poset.
#[test]
fn canonical_coinserter_rebuilds_the_poset() {
    for p in posets_up_to(4) {
        let cp = p.comparable_pairs();
        let d0 = cp.diagonal.then(&cp.pi0);
        let d1 = cp.diagonal.then(&cp.pi1);
        let id = MonotoneMap::identity(&p.discretization());
        assert_eq!(d0, id);
        assert_eq!(d1, id);
        let co = coinserter(&cp.pi0, &cp.pi1).unwrap();
        assert!(iso::are_isomorphic(&co.quotient, p));
    }
}

proptest! {
    /// Closure of arbitrary generating pairs is reflexive and transitive,
    /// and either errors on a cycle or satisfies antisymmetry.
    #[test]
    fn closure_always_yields_poset_or_cycle_error(
        n in 0usize..6,
        pairs in prop::collection::vec((0usize..6, 0usize..6), 0..12),
    ) {
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(a, b)| a < n && b < n)
            .collect();
        match Poset::new(labels, &pairs) {
            Ok(p) => {
                for a in 0..n {
                    prop_assert!(p.leq(a, a));
                    for b in 0..n {
                        if a != b {
                            prop_assert!(!(p.leq(a, b) && p.leq(b, a)));
                        }
                        for c in 0..n {
                            if p.leq(a, b) && p.leq(b, c) {
                                prop_assert!(p.leq(a, c));
                            }
                        }
                    }
                }
                for (a, b) in pairs {
                    prop_assert!(p.leq(a, b));
                }
            }
            Err(PosetError::AntisymmetryViolation(..)) => {}
            Err(other) => return Err(TestCaseError::fail(format!("unexpected error {other}"))),
        }
    }

    /// Random parallel pairs over small posets: the computed coinserter is
    /// surjective and inequates the pair.
    #[test]
    fn coinserter_basic_properties(
        dom_idx in 0usize..9,
        cod_idx in 0usize..9,
        seed0 in any::<u64>(),
        seed1 in any::<u64>(),
    ) {
        let posets = posets_up_to(3);
        let u = posets[dom_idx % posets.len()];
        let x = posets[cod_idx % posets.len()];
        let maps = monotone_map_values(u, x);
        if maps.is_empty() {
            return Ok(());
        }
        let u0 = &maps[(seed0 % maps.len() as u64) as usize];
        let u1 = &maps[(seed1 % maps.len() as u64) as usize];
        let co = coinserter(u0, u1).unwrap();
        prop_assert!(co.map.is_surjective());
        for t in 0..u.len() {
            prop_assert!(co.quotient.leq(co.map.apply(u0.apply(t)), co.map.apply(u1.apply(t))));
        }
    }
}
