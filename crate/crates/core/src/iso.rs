//! Poset isomorphism by backtracking over invariant-compatible bijections.
//! Instances stay small (a handful of elements), so no sophistication is
//! needed beyond degree/level pruning.

use crate::poset::{MonotoneMap, Poset};

/// Invariant attached to each element: (down-set size, up-set size, height).
fn invariants(p: &Poset) -> Vec<(usize, usize, usize)> {
    let n = p.len();
    let mut height = vec![0usize; n];
    // Longest chain below, computed by fixpoint; n is a trivial bound.
    for _ in 0..n {
        for a in 0..n {
            for b in 0..n {
                if p.lt(b, a) && height[b] + 1 > height[a] {
                    height[a] = height[b] + 1;
                }
            }
        }
    }
    (0..n)
        .map(|a| (p.down_set(a).len(), p.up_set(a).len(), height[a]))
        .collect()
}

/// Finds an order-isomorphism `p -> q` as an element table, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let inv_p = invariants(p);
    let mut inv_q_sorted = invariants(q);
    let inv_q = inv_q_sorted.clone();
    let mut inv_p_sorted = inv_p.clone();
    inv_p_sorted.sort_unstable();
    inv_q_sorted.sort_unstable();
    if inv_p_sorted != inv_q_sorted {
        return None;
    }
    let n = p.len();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn backtrack(
        p: &Poset,
        q: &Poset,
        inv_p: &[(usize, usize, usize)],
        inv_q: &[(usize, usize, usize)],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: usize,
    ) -> bool {
        if a == p.len() {
            return true;
        }
        for b in 0..q.len() {
            if used[b] || inv_p[a] != inv_q[b] {
                continue;
            }
            let ok = (0..a).all(|a2| {
                p.leq(a, a2) == q.leq(b, assign[a2]) && p.leq(a2, a) == q.leq(assign[a2], b)
            });
            if ok {
                assign[a] = b;
                used[b] = true;
                if backtrack(p, q, inv_p, inv_q, assign, used, a + 1) {
                    return true;
                }
                used[b] = false;
                assign[a] = usize::MAX;
            }
        }
        false
    }
    if backtrack(p, q, &inv_p, &inv_q, &mut assign, &mut used, 0) {
        Some(assign)
    } else {
        None
    }
}

pub fn are_isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}

/// Isomorphism over a common domain: `phi: cod(c1) -> cod(c2)` with
/// `phi . c1 = c2`. When `c1` is surjective `phi` is forced pointwise.
pub fn iso_over_domain(c1: &MonotoneMap, c2: &MonotoneMap) -> Option<MonotoneMap> {
    assert_eq!(c1.dom(), c2.dom(), "maps must share their domain");
    if c1.cod().len() != c2.cod().len() {
        return None;
    }
    if c1.is_surjective() {
        let mut table = vec![usize::MAX; c1.cod().len()];
        for x in 0..c1.dom().len() {
            let (a, b) = (c1.apply(x), c2.apply(x));
            if table[a] != usize::MAX && table[a] != b {
                return None;
            }
            table[a] = b;
        }
        if table.iter().any(|&v| v == usize::MAX) {
            return None;
        }
        let phi = MonotoneMap::new(c1.cod().clone(), c2.cod().clone(), table).ok()?;
        if phi.is_injective() && phi.is_embedding() && phi.is_surjective() {
            Some(phi)
        } else {
            None
        }
    } else {
        // Fall back to searching all isomorphisms of the codomains.
        let perms = all_isomorphisms(c1.cod(), c2.cod());
        for table in perms {
            let phi = MonotoneMap::new(c1.cod().clone(), c2.cod().clone(), table).unwrap();
            if &c1.then(&phi) == c2 {
                return Some(phi);
            }
        }
        None
    }
}

/// All isomorphisms `p -> q` (tables), in lexicographic order.
pub fn all_isomorphisms(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p.len() != q.len() {
        return out;
    }
    let n = p.len();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        p: &Poset,
        q: &Poset,
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if a == p.len() {
            out.push(assign.clone());
            return;
        }
        for b in 0..q.len() {
            if used[b] {
                continue;
            }
            let ok = (0..a).all(|a2| {
                p.leq(a, a2) == q.leq(b, assign[a2]) && p.leq(a2, a) == q.leq(assign[a2], b)
            });
            if ok {
                assign[a] = b;
                used[b] = true;
                rec(p, q, assign, used, a + 1, out);
                used[b] = false;
                assign[a] = usize::MAX;
            }
        }
    }
    rec(p, q, &mut assign, &mut used, 0, &mut out);
    out
}

/// Canonical key of a poset's isomorphism class: the lexicographically least
/// adjacency bitstring over all permutations. Only for small carriers.
pub fn canonical_key(p: &Poset) -> Vec<bool> {
    let n = p.len();
    assert!(n <= 7, "canonical_key is brute force over permutations");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |perm| {
        let mut key = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                key[perm[a] * n + perm[b]] = p.leq(a, b);
            }
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}
