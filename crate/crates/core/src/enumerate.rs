//! Exhaustive enumeration at desk scale: all posets of a given size up to
//! isomorphism (cached, they seed every universal-property oracle), all
//! monotone maps between two posets, and all algebras or models on small
//! carriers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebra::OrderedAlgebra;
use crate::iso::canonical_key;
use crate::poset::{MonotoneMap, Poset};
use crate::term::{Presentation, Signature};

const MAX_CACHED_SIZE: usize = 5;

/// All posets with exactly `n` elements, one per isomorphism class, in a
/// fixed deterministic order. Cached after the first call.
pub fn posets_of_size(n: usize) -> &'static [Poset] {
    static CACHE: OnceLock<Vec<OnceLock<Vec<Poset>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_CACHED_SIZE).map(|_| OnceLock::new()).collect());
    assert!(n <= MAX_CACHED_SIZE, "poset enumeration capped at {MAX_CACHED_SIZE}");
    cache[n].get_or_init(|| enumerate_posets(n))
}

/// All posets with at most `n` elements up to isomorphism, smallest first.
pub fn posets_up_to(n: usize) -> Vec<&'static Poset> {
    (0..=n).flat_map(|k| posets_of_size(k).iter()).collect()
}

fn enumerate_posets(n: usize) -> Vec<Poset> {
    if n == 0 {
        return vec![Poset::empty()];
    }
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut seen: Vec<Vec<bool>> = Vec::new();
    let mut out = Vec::new();
    let mut rel = vec![false; n * n];
    // Subsets of off-diagonal pairs that are already transitively closed and
    // antisymmetric; each labeled poset appears exactly once this way.
    'mask: for mask in 0u64..(1 << off_diag.len()) {
        rel.iter_mut().for_each(|c| *c = false);
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (i, &(a, b)) in off_diag.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rel[a * n + b] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && rel[a * n + b] {
                    if rel[b * n + a] {
                        continue 'mask;
                    }
                    for c in 0..n {
                        if rel[b * n + c] && !rel[a * n + c] {
                            continue 'mask;
                        }
                    }
                }
            }
        }
        let pairs: Vec<(usize, usize)> = off_diag
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let p = Poset::new(labels.clone(), &pairs).expect("checked transitive + antisymmetric");
        let key = canonical_key(&p);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(p);
        }
    }
    out
}

/// All monotone maps `p -> q` as tables, in lexicographic order. Results are
/// memoized globally: the oracles enumerate the same hom-sets many times.
pub fn monotone_maps(p: &Poset, q: &Poset) -> std::sync::Arc<Vec<Vec<usize>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Poset, Poset), std::sync::Arc<Vec<Vec<usize>>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (p.clone(), q.clone());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let maps = std::sync::Arc::new(enumerate_monotone_maps(p, q));
    cache.lock().unwrap().insert(key, maps.clone());
    maps
}

fn enumerate_monotone_maps(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    if n > 0 && q.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    fn rec(p: &Poset, q: &Poset, table: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(table.clone());
            return;
        }
        for v in 0..q.len() {
            let ok = (0..i).all(|j| {
                (!p.leq(j, i) || q.leq(table[j], v)) && (!p.leq(i, j) || q.leq(v, table[j]))
            });
            if ok {
                table[i] = v;
                rec(p, q, table, i + 1, out);
            }
        }
    }
    rec(p, q, &mut table, 0, &mut out);
    out
}

/// Monotone maps as [`MonotoneMap`] values.
pub fn monotone_map_values(p: &Poset, q: &Poset) -> Vec<MonotoneMap> {
    monotone_maps(p, q)
        .iter()
        .map(|t| MonotoneMap::new(p.clone(), q.clone(), t.clone()).unwrap())
        .collect()
}

pub fn surjective_monotone_maps(p: &Poset, q: &Poset) -> Vec<MonotoneMap> {
    monotone_map_values(p, q)
        .into_iter()
        .filter(MonotoneMap::is_surjective)
        .collect()
}

/// All algebras of the signature on the given carrier: every assignment of
/// monotone tables to the operation symbols, in lexicographic table order.
pub fn algebras_on(sig: &Signature, carrier: &Poset) -> Vec<OrderedAlgebra> {
    let n = carrier.len();
    let mut per_op: Vec<Vec<Vec<usize>>> = Vec::new();
    for op in sig.ops() {
        let (tuples, _) = crate::algebra::tuple_space(n, op.arity);
        let mut tables = Vec::new();
        if n == 0 {
            // No table entries needed; a constant cannot exist on an empty
            // carrier, so the signature must be constant-free.
            if op.arity == 0 {
                return Vec::new();
            }
            tables.push(Vec::new());
        } else {
            let mut table = vec![0usize; tuples];
            enumerate_tables(carrier, op.arity, &mut table, 0, &mut tables);
        }
        per_op.push(tables);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_op.len()];
    loop {
        let tables: Vec<Vec<usize>> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| per_op[i][c].clone())
            .collect();
        if let Ok(alg) = OrderedAlgebra::new(sig.clone(), carrier.clone(), tables) {
            out.push(alg);
        }
        // Odometer over table choices.
        let mut i = per_op.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < per_op[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Enumerates monotone tables for one operation by filling tuple ranks in
/// order and pruning against already-filled comparable tuples.
fn enumerate_tables(
    carrier: &Poset,
    arity: usize,
    table: &mut Vec<usize>,
    rank: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if rank == table.len() {
        out.push(table.clone());
        return;
    }
    let n = carrier.len();
    let sizes = vec![n; arity];
    let tuple = crate::poset::unrank(rank, &sizes);
    'candidates: for v in 0..n {
        for prev in 0..rank {
            let pt = crate::poset::unrank(prev, &sizes);
            let le = (0..arity).all(|i| carrier.leq(pt[i], tuple[i]));
            let ge = (0..arity).all(|i| carrier.leq(tuple[i], pt[i]));
            if le && !carrier.leq(table[prev], v) {
                continue 'candidates;
            }
            if ge && !carrier.leq(v, table[prev]) {
                continue 'candidates;
            }
        }
        table[rank] = v;
        enumerate_tables(carrier, arity, table, rank + 1, out);
    }
}

/// All algebras of the signature on carriers of at most `max` elements, one
/// carrier per isomorphism class.
pub fn algebras_up_to(sig: &Signature, max: usize) -> Vec<OrderedAlgebra> {
    posets_up_to(max)
        .into_iter()
        .flat_map(|p| algebras_on(sig, p))
        .collect()
}

/// All models of the presentation (algebras satisfying every axiom) on
/// carriers of at most `max` elements.
pub fn models_up_to(pres: &Presentation, max: usize) -> Vec<OrderedAlgebra> {
    algebras_up_to(pres.signature(), max)
        .into_iter()
        .filter(|a| crate::algebra::satisfies_all(a, pres).is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_oeis() {
        // Unlabeled posets: 1, 1, 2, 5, 16.
        assert_eq!(posets_of_size(0).len(), 1);
        assert_eq!(posets_of_size(1).len(), 1);
        assert_eq!(posets_of_size(2).len(), 2);
        assert_eq!(posets_of_size(3).len(), 5);
        assert_eq!(posets_of_size(4).len(), 16);
    }

    #[test]
    fn monotone_map_counts() {
        let c2 = Poset::chain(2);
        let d2 = Poset::discrete_n(2);
        assert_eq!(monotone_maps(&c2, &c2).len(), 3);
        assert_eq!(monotone_maps(&d2, &c2).len(), 4);
        assert_eq!(monotone_maps(&c2, &d2).len(), 2);
        assert_eq!(monotone_maps(&Poset::empty(), &c2).len(), 1);
        assert_eq!(monotone_maps(&c2, &Poset::empty()).len(), 0);
    }

    #[test]
    fn monotone_maps_are_lexicographically_ordered() {
        let c2 = Poset::chain(2);
        let maps = monotone_maps(&c2, &c2);
        assert_eq!(*maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }
}
