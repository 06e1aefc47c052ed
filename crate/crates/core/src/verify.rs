//! Brute-force universal-property oracle for coinserters in Pos.
//!
//! A candidate passes if (i) it inequates the pair, (ii) every map that
//! inequates the pair into a probe poset factors through it, and (iii) it is
//! order-reflecting for parallel maps out of its codomain. Probes run over
//! all posets with at most `probe_bound` elements, one per isomorphism class.

use crate::enumerate;
use crate::poset::{MonotoneMap, Poset};

#[derive(Clone, Debug)]
pub enum CoinserterVerdict {
    Pass {
        probes: usize,
        /// Set when the probe enumeration was empty.
        warning: Option<String>,
    },
    Fail(CoinserterFailure),
}

impl CoinserterVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, CoinserterVerdict::Pass { .. })
    }
}

#[derive(Clone, Debug)]
pub enum CoinserterFailure {
    /// `candidate . u0 <= candidate . u1` fails at this domain element.
    NotInequating { t: usize },
    /// A map inequating the pair that does not factor through the candidate.
    NotFactoring { probe: Poset, map: MonotoneMap },
    /// Parallel maps with `g . candidate <= gbar . candidate` but `g !<= gbar`.
    NotOrderReflecting {
        probe: Poset,
        g: MonotoneMap,
        gbar: MonotoneMap,
    },
}

/// Checks whether `candidate: X -> Q` is the coinserter of `u0, u1: U -> X`,
/// probing universality against every poset of at most `probe_bound`
/// elements. Witnesses are the first found in deterministic enumeration
/// order.
pub fn verify_coinserter(
    u0: &MonotoneMap,
    u1: &MonotoneMap,
    candidate: &MonotoneMap,
    probe_bound: usize,
) -> CoinserterVerdict {
    assert!(u0.is_parallel_to(u1), "u0, u1 must be parallel");
    assert_eq!(
        u0.cod(),
        candidate.dom(),
        "candidate must start at the codomain of the pair"
    );
    // (i) the candidate inequates the pair.
    for t in 0..u0.dom().len() {
        let (a, b) = (candidate.apply(u0.apply(t)), candidate.apply(u1.apply(t)));
        if !candidate.cod().leq(a, b) {
            return CoinserterVerdict::Fail(CoinserterFailure::NotInequating { t });
        }
    }
    let x = candidate.dom();
    let q = candidate.cod();
    let probes = enumerate::posets_up_to(probe_bound);
    let probe_count = probes.len();
    for probe in probes {
        let maps_from_q = enumerate::monotone_maps(q, probe);
        // (ii) factorization of every inequating map.
        for f_table in enumerate::monotone_maps(x, probe).iter() {
            let inequates = (0..u0.dom().len())
                .all(|t| probe.leq(f_table[u0.apply(t)], f_table[u1.apply(t)]));
            if !inequates {
                continue;
            }
            if !factors_through(candidate, f_table, &maps_from_q, probe) {
                let map = MonotoneMap::new(x.clone(), probe.clone(), f_table.clone()).unwrap();
                return CoinserterVerdict::Fail(CoinserterFailure::NotFactoring {
                    probe: probe.clone(),
                    map,
                });
            }
        }
        // (iii) order-reflection: g . candidate <= gbar . candidate forces
        // g <= gbar.
        for g in maps_from_q.iter() {
            'gbar: for gbar in maps_from_q.iter() {
                for xi in 0..x.len() {
                    if !probe.leq(g[candidate.apply(xi)], gbar[candidate.apply(xi)]) {
                        continue 'gbar;
                    }
                }
                for qi in 0..q.len() {
                    if !probe.leq(g[qi], gbar[qi]) {
                        return CoinserterVerdict::Fail(CoinserterFailure::NotOrderReflecting {
                            probe: probe.clone(),
                            g: MonotoneMap::new(q.clone(), probe.clone(), g.clone()).unwrap(),
                            gbar: MonotoneMap::new(q.clone(), probe.clone(), gbar.clone())
                                .unwrap(),
                        });
                    }
                }
            }
        }
    }
    CoinserterVerdict::Pass {
        probes: probe_count,
        warning: (probe_count == 0).then(|| "probe enumeration is empty".to_string()),
    }
}

/// Does `f = g . candidate` have a solution `g`? For surjective candidates
/// `g` is forced pointwise; otherwise all maps out of the quotient are tried.
fn factors_through(
    candidate: &MonotoneMap,
    f_table: &[usize],
    maps_from_q: &[Vec<usize>],
    probe: &Poset,
) -> bool {
    if candidate.is_surjective() {
        let q = candidate.cod();
        let mut g = vec![usize::MAX; q.len()];
        for xi in 0..candidate.dom().len() {
            let slot = &mut g[candidate.apply(xi)];
            if *slot != usize::MAX && *slot != f_table[xi] {
                return false;
            }
            *slot = f_table[xi];
        }
        for a in 0..q.len() {
            for b in 0..q.len() {
                if q.leq(a, b) && !probe.leq(g[a], g[b]) {
                    return false;
                }
            }
        }
        true
    } else {
        maps_from_q.iter().any(|g| {
            (0..candidate.dom().len()).all(|xi| g[candidate.apply(xi)] == f_table[xi])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::coinserter;

    #[test]
    fn computed_coinserters_pass() {
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let x = Poset::discrete(vec!["a", "b"]);
        let u0 = MonotoneMap::new(one.clone(), x.clone(), vec![0]).unwrap();
        let u1 = MonotoneMap::new(one, x, vec![1]).unwrap();
        let co = coinserter(&u0, &u1).unwrap();
        assert!(verify_coinserter(&u0, &u1, &co.map, 4).is_pass());
    }

    #[test]
    fn identity_fails_when_pair_not_inequated() {
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let x = Poset::discrete(vec!["a", "b"]);
        let u0 = MonotoneMap::new(one.clone(), x.clone(), vec![0]).unwrap();
        let u1 = MonotoneMap::new(one, x.clone(), vec![1]).unwrap();
        let candidate = MonotoneMap::identity(&x);
        match verify_coinserter(&u0, &u1, &candidate, 3) {
            CoinserterVerdict::Fail(CoinserterFailure::NotInequating { t }) => assert_eq!(t, 0),
            other => panic!("expected NotInequating, got {other:?}"),
        }
    }

    #[test]
    fn collapse_to_point_fails_universality() {
        // True quotient is the two-chain; the collapse to one point cannot
        // factor an order-separating map.
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let x = Poset::discrete(vec!["a", "b"]);
        let u0 = MonotoneMap::new(one.clone(), x.clone(), vec![0]).unwrap();
        let u1 = MonotoneMap::new(one, x.clone(), vec![1]).unwrap();
        let pt = Poset::new(vec!["*"], &[]).unwrap();
        let candidate = MonotoneMap::new(x, pt, vec![0, 0]).unwrap();
        let verdict = verify_coinserter(&u0, &u1, &candidate, 3);
        assert!(!verdict.is_pass());
    }

    #[test]
    fn non_surjective_candidate_fails_order_reflection() {
        // Equal pair over a point, candidate embeds the point into a chain:
        // factorization succeeds but order-reflection fails on the part of
        // the codomain the candidate misses.
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let id = MonotoneMap::identity(&one);
        let candidate = MonotoneMap::new(one.clone(), Poset::chain(2), vec![0]).unwrap();
        let verdict = verify_coinserter(&id, &id, &candidate, 2);
        assert!(matches!(
            verdict,
            CoinserterVerdict::Fail(CoinserterFailure::NotOrderReflecting { .. })
        ));
    }
}
