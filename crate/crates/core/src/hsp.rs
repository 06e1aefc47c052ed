//! Bounded Birkhoff-closure membership: is an algebra a quotient of a
//! subalgebra of a finite product of generator algebras? The negative
//! certificate is an inequation that holds in every generator but fails in
//! the candidate, found by bounded search over small terms.

use crate::algebra::{
    self, satisfies, AlgebraError, Homomorphism, OrderedAlgebra, SatisfactionVerdict,
};
use crate::poset::{unrank, Poset};
use crate::term::Inequation;
use crate::universe::TermUniverse;

#[derive(Clone, Debug)]
pub struct HspConfig {
    /// Depth bound for refutation terms.
    pub term_depth: usize,
    /// Number of context variables for refutation inequations.
    pub context_size: usize,
    pub term_cap: usize,
}

impl Default for HspConfig {
    fn default() -> Self {
        HspConfig {
            term_depth: 2,
            context_size: 3,
            term_cap: 50_000,
        }
    }
}

#[derive(Debug)]
pub enum HspVerdict {
    Member(HspWitness),
    /// An inequation holding in all generators but failing in the candidate.
    Refuted(Inequation),
    /// Bounded search exhausted without a witness either way.
    NotFound,
}

/// Witness chain: the candidate is the image of a surjective homomorphism
/// from a subalgebra of a product of generators.
#[derive(Debug)]
pub struct HspWitness {
    pub power: usize,
    /// Indices into the generator list, one per factor.
    pub factors: Vec<usize>,
    /// Generating elements of the subalgebra (labels in the product).
    pub seed: Vec<String>,
    pub subalgebra_size: usize,
    /// The quotient map from the subalgebra onto the candidate.
    pub quotient: Homomorphism,
}

/// Searches in deterministic order — increasing power, then factor tuples,
/// then seeds by size, then seed images lexicographically — for a
/// presentation of `b` as a quotient of a subalgebra of a product of
/// generators. Falls back to the bounded refutation search.
pub fn hsp_membership(
    b: &OrderedAlgebra,
    generators: &[OrderedAlgebra],
    power_bound: usize,
    cfg: &HspConfig,
) -> Result<HspVerdict, AlgebraError> {
    for g in generators {
        if g.signature() != b.signature() {
            return Err(AlgebraError::SignatureMismatch);
        }
    }
    if let Some(w) = member_search(b, generators, power_bound)? {
        return Ok(HspVerdict::Member(w));
    }
    if let Some(ineq) = refutation_search(b, generators, cfg)? {
        return Ok(HspVerdict::Refuted(ineq));
    }
    Ok(HspVerdict::NotFound)
}

/// All nondecreasing tuples of length `k` over `0..n`, lexicographically.
fn nondecreasing_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    if n == 0 {
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                for j in i + 1..k {
                    cur[j] = cur[i];
                }
                break;
            }
        }
    }
}

/// All size-`k` subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= n - (k - i) {
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn member_search(
    b: &OrderedAlgebra,
    generators: &[OrderedAlgebra],
    power_bound: usize,
) -> Result<Option<HspWitness>, AlgebraError> {
    for power in 0..=power_bound {
        for factors in nondecreasing_tuples(power, generators.len()) {
            let prod = if power == 0 {
                algebra::terminal_of(b.signature())
            } else {
                let chosen: Vec<&OrderedAlgebra> =
                    factors.iter().map(|&i| &generators[i]).collect();
                algebra::product(&chosen)?.0
            };
            if let Some((seed, size, quotient)) = quotients_of_subalgebras(b, &prod)? {
                return Ok(Some(HspWitness {
                    power,
                    factors,
                    seed,
                    subalgebra_size: size,
                    quotient,
                }));
            }
        }
    }
    Ok(None)
}

/// Enumerates subalgebras of the product generated by seeds of at most
/// `|b|` elements (by increasing seed size) and, for each, the surjective
/// homomorphisms onto `b` determined by images of the seed.
fn quotients_of_subalgebras(
    b: &OrderedAlgebra,
    prod: &OrderedAlgebra,
) -> Result<Option<(Vec<String>, usize, Homomorphism)>, AlgebraError> {
    let max_seed = b.len().min(prod.len());
    let mut tried: Vec<Vec<usize>> = Vec::new();
    for size in 0..=max_seed {
        for seed in combinations(prod.len(), size) {
            let incl = algebra::subalgebra_generated(prod, &seed);
            let sub = incl.dom().clone();
            let elements: Vec<usize> = (0..sub.len()).map(|i| incl.apply(i)).collect();
            if tried.contains(&elements) {
                continue;
            }
            tried.push(elements);
            let seed_in_sub: Vec<usize> = seed
                .iter()
                .map(|&s| (0..sub.len()).position(|i| incl.apply(i) == s).unwrap())
                .collect();
            if let Some(q) = quotient_onto(&sub, &seed_in_sub, b) {
                let labels = seed
                    .iter()
                    .map(|&s| prod.carrier().label(s).to_string())
                    .collect();
                return Ok(Some((labels, sub.len(), q)));
            }
        }
    }
    Ok(None)
}

/// Searches for a surjective homomorphism `sub -> b`. A homomorphism is
/// determined by the images of the generating seed: the rest of the map is
/// forced by iterating the operations to a fixpoint.
fn quotient_onto(
    sub: &OrderedAlgebra,
    seed: &[usize],
    b: &OrderedAlgebra,
) -> Option<Homomorphism> {
    if sub.is_empty() {
        return if b.is_empty() {
            Homomorphism::new(sub.clone(), b.clone(), Vec::new()).ok()
        } else {
            None
        };
    }
    if b.is_empty() {
        return None;
    }
    let assignments = b.len().pow(seed.len() as u32);
    'assign: for a in 0..assignments {
        let images = unrank(a, &vec![b.len(); seed.len()]);
        let mut map: Vec<Option<usize>> = vec![None; sub.len()];
        for (s, &img) in seed.iter().zip(&images) {
            if let Some(prev) = map[*s] {
                if prev != img {
                    continue 'assign;
                }
            }
            map[*s] = Some(img);
        }
        // Propagate through the operations until stable.
        loop {
            let mut grew = false;
            for (idx, op) in sub.signature().ops().iter().enumerate() {
                let (count, sizes) = algebra::tuple_space(sub.len(), op.arity);
                for r in 0..count {
                    let tuple = unrank(r, &sizes);
                    let Some(imgs): Option<Vec<usize>> =
                        tuple.iter().map(|&t| map[t]).collect()
                    else {
                        continue;
                    };
                    let target = sub.apply(idx, &tuple);
                    let forced = b.apply(idx, &imgs);
                    match map[target] {
                        Some(prev) if prev != forced => continue 'assign,
                        Some(_) => {}
                        None => {
                            map[target] = Some(forced);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if map.iter().any(Option::is_none) {
            continue;
        }
        let table: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
        if let Ok(hom) = Homomorphism::new(sub.clone(), b.clone(), table) {
            if hom.map().is_surjective() {
                return Some(hom);
            }
        }
    }
    None
}

/// Bounded search for an inequation separating the candidate from the
/// generators: contexts grow up to the configured size, terms up to the
/// configured depth.
fn refutation_search(
    b: &OrderedAlgebra,
    generators: &[OrderedAlgebra],
    cfg: &HspConfig,
) -> Result<Option<Inequation>, AlgebraError> {
    const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];
    let max_ctx = cfg.context_size.min(VAR_NAMES.len());
    for ctx_size in 1..=max_ctx {
        let context: Vec<String> = VAR_NAMES[..ctx_size].iter().map(|s| s.to_string()).collect();
        let vars = Poset::discrete(context.clone());
        let Ok(uni) = TermUniverse::build(b.signature(), &vars, cfg.term_depth, cfg.term_cap)
        else {
            continue;
        };
        for lhs in 0..uni.len() as u32 {
            for rhs in 0..uni.len() as u32 {
                if lhs == rhs {
                    continue;
                }
                let ineq = Inequation {
                    context: context.clone(),
                    lhs: uni.term_of(lhs),
                    rhs: uni.term_of(rhs),
                };
                if let SatisfactionVerdict::Fails(_) = satisfies(b, &ineq)? {
                    let holds_everywhere = generators.iter().try_fold(true, |acc, g| {
                        Ok::<bool, AlgebraError>(
                            acc && satisfies(g, &ineq)? == SatisfactionVerdict::Holds,
                        )
                    })?;
                    if holds_everywhere {
                        return Ok(Some(ineq));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::{max_chain2, min_chain};

    #[test]
    fn generator_is_member_of_itself() {
        let a = min_chain(2);
        let v = hsp_membership(&a, &[a.clone()], 2, &HspConfig::default()).unwrap();
        match v {
            HspVerdict::Member(w) => {
                assert_eq!(w.power, 1);
                assert!(w.quotient.map().is_surjective());
            }
            other => panic!("expected Member, got {other:?}"),
        }
    }

    #[test]
    fn one_point_is_member() {
        let a = min_chain(2);
        let one = OrderedAlgebra::terminal(a.signature().clone());
        let v = hsp_membership(&one, &[a], 2, &HspConfig::default()).unwrap();
        assert!(matches!(v, HspVerdict::Member(_)));
    }

    #[test]
    fn max_chain_refuted_by_projection_inequation() {
        let v = hsp_membership(&max_chain2(), &[min_chain(2)], 2, &HspConfig::default()).unwrap();
        match v {
            HspVerdict::Refuted(ineq) => {
                assert_eq!(
                    satisfies(&min_chain(2), &ineq).unwrap(),
                    SatisfactionVerdict::Holds
                );
                assert!(matches!(
                    satisfies(&max_chain2(), &ineq).unwrap(),
                    SatisfactionVerdict::Fails(_)
                ));
            }
            other => panic!("expected Refuted, got {other:?}"),
        }
    }

    #[test]
    fn product_member_found() {
        // The 4-element diamond with min is a subalgebra (indeed all) of
        // min-chain-2 squared.
        let d = crate::algebra::tests_support::diamond_min();
        let v = hsp_membership(&d, &[min_chain(2)], 2, &HspConfig::default()).unwrap();
        match v {
            HspVerdict::Member(w) => assert_eq!(w.power, 2),
            other => panic!("expected Member, got {other:?}"),
        }
    }
}
