//! Finite posets and monotone maps, with the constructions used throughout:
//! products, coproducts, discretization, comparable-pair posets, coinserters,
//! prekernel pairs, and the (surjection, embedding) factorization.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("antisymmetry violation: {0} <= {1} <= {0} with {0} != {1}")]
    AntisymmetryViolation(String, String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("element index {0} out of range (carrier has {1} elements)")]
    ElementOutOfRange(usize, usize),
    #[error("maps are not parallel (domains or codomains differ)")]
    NotParallel,
    #[error("map table has {got} entries, domain has {want}")]
    WrongTableLength { got: usize, want: usize },
    #[error("map is not monotone: {0} <= {1} but images are unrelated")]
    NotMonotone(String, String),
}

/// A finite poset. The relation is stored reflexive-transitively closed, so
/// `leq` is a single lookup.
///
/// Elements are indices `0..len`; each carries a printable label. The empty
/// carrier is legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>, // row-major n*n, closed
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset{{{}", self.labels.join(","))?;
        write!(f, "; ")?;
        let mut first = true;
        for (a, b) in self.strict_pairs() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}<={}", self.labels[a], self.labels[b])?;
        }
        write!(f, "}}")
    }
}

/// Reflexive-transitive closure of `pairs` over `n` elements, in place.
fn close(rel: &mut [bool], n: usize) {
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
}

impl Poset {
    /// Builds a poset from generating pairs; the stored relation is the
    /// reflexive-transitive closure. Fails if the closure has a cycle through
    /// distinct elements or if labels repeat.
    pub fn new<S: Into<String>>(
        labels: Vec<S>,
        generating_pairs: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        for i in 0..n {
            for j in 0..i {
                if labels[i] == labels[j] {
                    return Err(PosetError::DuplicateElement(labels[i].clone()));
                }
            }
        }
        let mut rel = vec![false; n * n];
        for &(a, b) in generating_pairs {
            if a >= n {
                return Err(PosetError::ElementOutOfRange(a, n));
            }
            if b >= n {
                return Err(PosetError::ElementOutOfRange(b, n));
            }
            rel[a * n + b] = true;
        }
        close(&mut rel, n);
        for i in 0..n {
            for j in 0..i {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(PosetError::AntisymmetryViolation(
                        labels[j].clone(),
                        labels[i].clone(),
                    ));
                }
            }
        }
        Ok(Poset { labels, leq: rel })
    }

    /// Discrete poset on the given labels.
    pub fn discrete<S: Into<String>>(labels: Vec<S>) -> Poset {
        Poset::new(labels, &[]).expect("discrete posets have no cycles")
    }

    /// Discrete poset `e0, .., e{n-1}`.
    pub fn discrete_n(n: usize) -> Poset {
        Poset::discrete((0..n).map(|i| format!("e{i}")).collect())
    }

    /// Chain `e0 < e1 < .. < e{n-1}`.
    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new((0..n).map(|i| format!("e{i}")).collect(), &pairs).unwrap()
    }

    pub fn empty() -> Poset {
        Poset::discrete(Vec::<String>::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All pairs `a <= b` with `a != b`, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs (the transitive reduction).
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, b) in self.strict_pairs() {
            let direct = (0..self.len()).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
            if !direct {
                out.push((a, b));
            }
        }
        out
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(b, a)).collect()
    }

    /// Same elements, only reflexive pairs (`|P|` in order-theoretic notation).
    pub fn discretization(&self) -> Poset {
        Poset::discrete(self.labels.clone())
    }

    pub fn is_discrete(&self) -> bool {
        self.strict_pairs().is_empty()
    }

    /// n-ary product with componentwise order; the first factor is the most
    /// significant digit of the element rank. Returns the projections.
    pub fn product(factors: &[&Poset]) -> (Poset, Vec<MonotoneMap>) {
        let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
        let total: usize = sizes.iter().product();
        let k = factors.len();
        let mut labels = Vec::with_capacity(total);
        for rank in 0..total {
            let tuple = unrank(rank, &sizes);
            let parts: Vec<&str> = tuple
                .iter()
                .zip(factors)
                .map(|(&i, p)| p.label(i))
                .collect();
            labels.push(format!("({})", parts.join(",")));
        }
        let mut pairs = Vec::new();
        for a in 0..total {
            let ta = unrank(a, &sizes);
            'next: for b in 0..total {
                let tb = unrank(b, &sizes);
                for i in 0..k {
                    if !factors[i].leq(ta[i], tb[i]) {
                        continue 'next;
                    }
                }
                pairs.push((a, b));
            }
        }
        let prod = Poset::new(labels, &pairs).expect("componentwise order is a poset");
        let projections = (0..k)
            .map(|i| {
                let table = (0..total).map(|r| unrank(r, &sizes)[i]).collect();
                MonotoneMap::new(prod.clone(), factors[i].clone(), table).unwrap()
            })
            .collect();
        (prod, projections)
    }

    /// Disjoint union with no cross pairs. Returns the injections. Labels are
    /// prefixed with the summand index when there is more than one summand.
    pub fn coproduct(summands: &[&Poset]) -> (Poset, Vec<MonotoneMap>) {
        let total: usize = summands.iter().map(|p| p.len()).sum();
        let mut labels = Vec::with_capacity(total);
        let mut pairs = Vec::new();
        let mut offsets = Vec::with_capacity(summands.len());
        let mut off = 0;
        for (s, p) in summands.iter().enumerate() {
            offsets.push(off);
            for i in 0..p.len() {
                if summands.len() > 1 {
                    labels.push(format!("{}.{}", s, p.label(i)));
                } else {
                    labels.push(p.label(i).to_string());
                }
            }
            for (a, b) in p.strict_pairs() {
                pairs.push((off + a, off + b));
            }
            off += p.len();
        }
        let sum = Poset::new(labels, &pairs).expect("disjoint union of posets is a poset");
        let injections = summands
            .iter()
            .zip(&offsets)
            .map(|(p, &off)| {
                let table = (0..p.len()).map(|i| off + i).collect();
                MonotoneMap::new((*p).clone(), sum.clone(), table).unwrap()
            })
            .collect();
        (sum, injections)
    }

    /// `P^(2)`: the discrete poset of all comparable pairs `(a, b)` with
    /// `a <= b`, together with the two projections into `|P|` and the diagonal
    /// splitting `d: |P| -> P^(2)`.
    pub fn comparable_pairs(&self) -> ComparablePairs {
        let discrete = self.discretization();
        let mut members = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq(a, b) {
                    members.push((a, b));
                }
            }
        }
        let labels: Vec<String> = members
            .iter()
            .map(|&(a, b)| format!("({},{})", self.label(a), self.label(b)))
            .collect();
        let pairs_poset = Poset::discrete(labels);
        let pi0 = MonotoneMap::new(
            pairs_poset.clone(),
            discrete.clone(),
            members.iter().map(|&(a, _)| a).collect(),
        )
        .unwrap();
        let pi1 = MonotoneMap::new(
            pairs_poset.clone(),
            discrete.clone(),
            members.iter().map(|&(_, b)| b).collect(),
        )
        .unwrap();
        let diag_table = (0..self.len())
            .map(|x| members.iter().position(|&(a, b)| a == x && b == x).unwrap())
            .collect();
        let diagonal = MonotoneMap::new(discrete, pairs_poset.clone(), diag_table).unwrap();
        ComparablePairs {
            pairs: pairs_poset,
            pi0,
            pi1,
            diagonal,
        }
    }
}

/// Mixed-radix unrank, first coordinate most significant.
pub fn unrank(mut rank: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = rank % sizes[i];
        rank /= sizes[i];
    }
    out
}

/// Inverse of [`unrank`].
pub fn rank(tuple: &[usize], sizes: &[usize]) -> usize {
    let mut r = 0;
    for i in 0..sizes.len() {
        r = r * sizes[i] + tuple[i];
    }
    r
}

/// The comparable-pairs data of Example-style canonical coinserters:
/// `pi0, pi1: P^(2) -> |P|` with the diagonal splitting.
pub struct ComparablePairs {
    pub pairs: Poset,
    pub pi0: MonotoneMap,
    pub pi1: MonotoneMap,
    pub diagonal: MonotoneMap,
}

/// An order-preserving map between posets, stored as a total table.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: Poset,
    cod: Poset,
    table: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Map{{")?;
        for (i, &v) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}->{}", self.dom.label(i), self.cod.label(v))?;
        }
        write!(f, "}}")
    }
}

impl MonotoneMap {
    pub fn new(dom: Poset, cod: Poset, table: Vec<usize>) -> Result<MonotoneMap, PosetError> {
        if table.len() != dom.len() {
            return Err(PosetError::WrongTableLength {
                got: table.len(),
                want: dom.len(),
            });
        }
        for &v in &table {
            if v >= cod.len() {
                return Err(PosetError::ElementOutOfRange(v, cod.len()));
            }
        }
        for a in 0..dom.len() {
            for b in 0..dom.len() {
                if dom.leq(a, b) && !cod.leq(table[a], table[b]) {
                    return Err(PosetError::NotMonotone(
                        dom.label(a).to_string(),
                        dom.label(b).to_string(),
                    ));
                }
            }
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub fn identity(p: &Poset) -> MonotoneMap {
        MonotoneMap {
            dom: p.clone(),
            cod: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    pub fn dom(&self) -> &Poset {
        &self.dom
    }

    pub fn cod(&self) -> &Poset {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `other` after `self` (so `self.then(g) = g . self`). Panics unless the
    /// codomain of `self` equals the domain of `other`.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(self.cod, other.dom, "composition shape mismatch");
        MonotoneMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            table: self.table.iter().map(|&a| other.table[a]).collect(),
        }
    }

    pub fn is_parallel_to(&self, other: &MonotoneMap) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &v in &self.table {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Embedding in the order sense: injective and order-reflecting.
    pub fn is_embedding(&self) -> bool {
        if !self.is_injective() {
            return false;
        }
        for a in 0..self.dom.len() {
            for b in 0..self.dom.len() {
                if self.cod.leq(self.table[a], self.table[b]) && !self.dom.leq(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Pointwise order on parallel maps.
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        assert!(self.is_parallel_to(other), "pointwise order needs parallel maps");
        (0..self.dom.len()).all(|a| self.cod.leq(self.table[a], other.table[a]))
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.table.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// A preorder: reflexive and transitive, antisymmetry not required. Used as
/// the intermediate object when computing coinserters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    labels: Vec<String>,
    rel: Vec<bool>, // closed
}

impl Preorder {
    /// Closure of `pairs` (no antisymmetry check).
    pub fn new<S: Into<String>>(labels: Vec<S>, pairs: &[(usize, usize)]) -> Preorder {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for &(a, b) in pairs {
            rel[a * n + b] = true;
        }
        close(&mut rel, n);
        Preorder { labels, rel }
    }

    pub fn from_poset(p: &Poset) -> Preorder {
        Preorder {
            labels: p.labels.clone(),
            rel: p.leq.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rel(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.len() + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.rel(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Adds pairs and re-closes.
    pub fn extend(&mut self, pairs: &[(usize, usize)]) {
        let n = self.len();
        for &(a, b) in pairs {
            self.rel[a * n + b] = true;
        }
        close(&mut self.rel, n);
    }

    /// Quotients by the symmetric part: classes are mutual-reachability
    /// classes, the representative is the least member index, and the class
    /// label is the representative's label. Returns the quotient poset and
    /// the class of each element.
    pub fn quotient(&self) -> (Poset, Vec<usize>) {
        let n = self.len();
        let mut class_rep: Vec<Option<usize>> = vec![None; n];
        let mut reps: Vec<usize> = Vec::new();
        for a in 0..n {
            if class_rep[a].is_some() {
                continue;
            }
            reps.push(a);
            for b in a..n {
                if class_rep[b].is_none() && self.rel(a, b) && self.rel(b, a) {
                    class_rep[b] = Some(reps.len() - 1);
                }
            }
        }
        let class_of: Vec<usize> = class_rep.into_iter().map(Option::unwrap).collect();
        let labels: Vec<String> = reps.iter().map(|&r| self.labels[r].clone()).collect();
        let mut pairs = Vec::new();
        for (ci, &ri) in reps.iter().enumerate() {
            for (cj, &rj) in reps.iter().enumerate() {
                if self.rel(ri, rj) {
                    pairs.push((ci, cj));
                }
            }
        }
        let quotient = Poset::new(labels, &pairs)
            .expect("quotient by the symmetric part is antisymmetric");
        (quotient, class_of)
    }
}

/// Result of a coinserter computation: the quotient poset and the reflection
/// map from the coinserted object onto it.
#[derive(Clone, Debug)]
pub struct CoinserterResult {
    pub quotient: Poset,
    pub map: MonotoneMap,
}

impl CoinserterResult {
    /// Class of a source element.
    pub fn class_of(&self, x: usize) -> usize {
        self.map.apply(x)
    }
}

/// Coinserter of a parallel pair in Pos: the smallest preorder on the
/// codomain containing its order and all pairs `(u0(t), u1(t))`, quotiented
/// by its symmetric part.
pub fn coinserter(u0: &MonotoneMap, u1: &MonotoneMap) -> Result<CoinserterResult, PosetError> {
    if !u0.is_parallel_to(u1) {
        return Err(PosetError::NotParallel);
    }
    let x = u0.cod();
    let mut pre = Preorder::from_poset(x);
    let forced: Vec<(usize, usize)> = (0..u0.dom().len())
        .map(|t| (u0.apply(t), u1.apply(t)))
        .collect();
    pre.extend(&forced);
    let (quotient, class_of) = pre.quotient();
    let map = MonotoneMap::new(x.clone(), quotient.clone(), class_of)
        .expect("reflection map is monotone");
    Ok(CoinserterResult { quotient, map })
}

/// Prekernel pair of `f` in Pos: the subposet of `dom(f) x dom(f)` on all
/// `(x0, x1)` with `f(x0) <= f(x1)`, with its two projections.
pub fn prekernel_pair(f: &MonotoneMap) -> (Poset, MonotoneMap, MonotoneMap) {
    let a = f.dom();
    let mut members = Vec::new();
    for x0 in 0..a.len() {
        for x1 in 0..a.len() {
            if f.cod().leq(f.apply(x0), f.apply(x1)) {
                members.push((x0, x1));
            }
        }
    }
    let labels: Vec<String> = members
        .iter()
        .map(|&(x0, x1)| format!("({},{})", a.label(x0), a.label(x1)))
        .collect();
    let mut pairs = Vec::new();
    for (i, &(a0, a1)) in members.iter().enumerate() {
        for (j, &(b0, b1)) in members.iter().enumerate() {
            if a.leq(a0, b0) && a.leq(a1, b1) {
                pairs.push((i, j));
            }
        }
    }
    let u = Poset::new(labels, &pairs).expect("subposet of a product is a poset");
    let p0 = MonotoneMap::new(u.clone(), a.clone(), members.iter().map(|&(x, _)| x).collect())
        .unwrap();
    let p1 = MonotoneMap::new(u.clone(), a.clone(), members.iter().map(|&(_, x)| x).collect())
        .unwrap();
    (u, p0, p1)
}

/// Factors `f = m . c` with `c` the coinserter of the prekernel pair of `f`
/// (a surjection) and `m` an order-embedding.
pub fn factor(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let (_, p0, p1) = prekernel_pair(f);
    let co = coinserter(&p0, &p1).expect("projections are parallel");
    let c = co.map;
    // On classes, x ~ x' iff f(x) = f(x'), so m is well defined pointwise.
    let mut m_table = vec![usize::MAX; co.quotient.len()];
    for x in 0..f.dom().len() {
        m_table[c.apply(x)] = f.apply(x);
    }
    let m = MonotoneMap::new(co.quotient, f.cod().clone(), m_table)
        .expect("induced map on classes is monotone");
    (c, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> Poset {
        Poset::new(vec!["a", "b"], &[(0, 1)]).unwrap()
    }

    #[test]
    fn singleton_poset() {
        let p = Poset::new(vec!["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn closure_adds_reflexive_pairs() {
        let p = two_chain();
        assert!(p.leq(0, 0) && p.leq(1, 1) && p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let err = Poset::new(vec!["a", "b"], &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(
            err,
            PosetError::AntisymmetryViolation("a".into(), "b".into())
        );
    }

    #[test]
    fn duplicate_element_detected() {
        let err = Poset::new(vec!["a", "a"], &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateElement("a".into()));
    }

    #[test]
    fn transitive_closure_through_middle() {
        let p = Poset::new(vec!["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
    }

    #[test]
    fn product_of_chains_is_diamond() {
        let c = two_chain();
        let (prod, projs) = Poset::product(&[&c, &c]);
        assert_eq!(prod.len(), 4);
        // (a,a) is bottom, (b,b) is top, the mixed pairs are incomparable.
        let bot = prod.index_of("(a,a)").unwrap();
        let top = prod.index_of("(b,b)").unwrap();
        let l = prod.index_of("(a,b)").unwrap();
        let r = prod.index_of("(b,a)").unwrap();
        assert!(prod.leq(bot, l) && prod.leq(bot, r) && prod.leq(l, top) && prod.leq(r, top));
        assert!(!prod.leq(l, r) && !prod.leq(r, l));
        assert_eq!(projs.len(), 2);
        assert_eq!(projs[0].apply(l), 0);
        assert_eq!(projs[1].apply(l), 1);
    }

    #[test]
    fn coproduct_of_points_is_discrete() {
        let one = Poset::new(vec!["x"], &[]).unwrap();
        let (sum, injs) = Poset::coproduct(&[&one, &one]);
        assert_eq!(sum.len(), 2);
        assert!(sum.is_discrete());
        assert_eq!(injs[0].apply(0), 0);
        assert_eq!(injs[1].apply(0), 1);
    }

    #[test]
    fn comparable_pairs_of_two_chain() {
        let p = two_chain();
        let cp = p.comparable_pairs();
        assert_eq!(cp.pairs.len(), 3);
        assert!(cp.pairs.is_discrete());
        assert_eq!(cp.pairs.labels(), &["(a,a)", "(a,b)", "(b,b)"]);
        // Diagonal splits both projections.
        let d0 = cp.diagonal.then(&cp.pi0);
        let d1 = cp.diagonal.then(&cp.pi1);
        let id = MonotoneMap::identity(&p.discretization());
        assert_eq!(d0, id);
        assert_eq!(d1, id);
    }

    #[test]
    fn coinserter_of_equal_pair_is_identity() {
        let p = two_chain();
        let id = MonotoneMap::identity(&p);
        let co = coinserter(&id, &id).unwrap();
        assert_eq!(co.quotient, p);
        assert_eq!(co.map, id);
    }

    #[test]
    fn coinserter_inserts_order() {
        // One point picking a then b in discrete {a,b}: quotient is the chain.
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let x = Poset::discrete(vec!["a", "b"]);
        let u0 = MonotoneMap::new(one.clone(), x.clone(), vec![0]).unwrap();
        let u1 = MonotoneMap::new(one, x, vec![1]).unwrap();
        let co = coinserter(&u0, &u1).unwrap();
        assert_eq!(co.quotient.len(), 2);
        assert!(co.quotient.leq(co.class_of(0), co.class_of(1)));
        assert!(!co.quotient.leq(co.class_of(1), co.class_of(0)));
        assert!(co.map.is_injective());
    }

    #[test]
    fn coinserter_collapses_cycles() {
        // Forcing b <= a on the chain a < b collapses to a point.
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let x = two_chain();
        let u0 = MonotoneMap::new(one.clone(), x.clone(), vec![1]).unwrap();
        let u1 = MonotoneMap::new(one, x, vec![0]).unwrap();
        let co = coinserter(&u0, &u1).unwrap();
        assert_eq!(co.quotient.len(), 1);
    }

    #[test]
    fn prekernel_of_identity_on_chain() {
        let p = two_chain();
        let id = MonotoneMap::identity(&p);
        let (u, p0, p1) = prekernel_pair(&id);
        assert_eq!(u.len(), 3);
        let pairs: Vec<(usize, usize)> = (0..u.len()).map(|i| (p0.apply(i), p1.apply(i))).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
        // Componentwise order: (a,a) <= (a,b) <= (b,b).
        assert!(u.leq(0, 1) && u.leq(1, 2) && !u.leq(1, 0));
    }

    #[test]
    fn prekernel_of_constant_map_is_everything() {
        let x = Poset::discrete(vec!["a", "b"]);
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let f = MonotoneMap::new(x, one, vec![0, 0]).unwrap();
        let (u, _, _) = prekernel_pair(&f);
        assert_eq!(u.len(), 4);
    }

    #[test]
    fn prekernel_of_embedding_into_three_chain() {
        // a < b embedded into a < c < b': pairs with f(x0) <= f(x1).
        let dom = two_chain();
        let cod = Poset::new(vec!["a", "c", "b'"], &[(0, 1), (1, 2)]).unwrap();
        let f = MonotoneMap::new(dom, cod, vec![0, 2]).unwrap();
        let (u, p0, p1) = prekernel_pair(&f);
        let pairs: Vec<(usize, usize)> = (0..u.len()).map(|i| (p0.apply(i), p1.apply(i))).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn factor_surjection_gives_iso_embedding() {
        let x = two_chain();
        let one = Poset::new(vec!["t"], &[]).unwrap();
        let f = MonotoneMap::new(x, one, vec![0, 0]).unwrap();
        let (c, m) = factor(&f);
        assert_eq!(c.then(&m), f);
        assert!(c.is_surjective());
        assert!(m.is_embedding());
        assert!(m.is_surjective(), "embedding part of a surjection is iso");
    }

    #[test]
    fn factor_embedding_gives_iso_coinserter_part() {
        let dom = two_chain();
        let cod = Poset::new(vec!["a", "c", "b'"], &[(0, 1), (1, 2)]).unwrap();
        let f = MonotoneMap::new(dom, cod, vec![0, 2]).unwrap();
        let (c, m) = factor(&f);
        assert_eq!(c.then(&m), f);
        assert!(c.is_injective() && c.is_surjective() && c.is_embedding());
    }

    #[test]
    fn factor_discrete_onto_chain() {
        // f: discrete {a,b} -> chain x<y is bijective but not an embedding;
        // c inserts the order, m is an iso onto the image.
        let dom = Poset::discrete(vec!["a", "b"]);
        let cod = Poset::new(vec!["x", "y"], &[(0, 1)]).unwrap();
        let f = MonotoneMap::new(dom, cod, vec![0, 1]).unwrap();
        let (c, m) = factor(&f);
        assert_eq!(c.then(&m), f);
        assert!(c.is_surjective() && !c.cod().is_discrete());
        assert!(m.is_embedding());
        assert!(c.cod().leq(c.apply(0), c.apply(1)));
    }

    #[test]
    fn empty_poset_everywhere() {
        let e = Poset::empty();
        let m = MonotoneMap::new(e.clone(), e.clone(), vec![]).unwrap();
        let co = coinserter(&m, &m).unwrap();
        assert!(co.quotient.is_empty());
        let (u, _, _) = prekernel_pair(&m);
        assert!(u.is_empty());
        let (prod, _) = Poset::product(&[&e, &e]);
        assert!(prod.is_empty());
    }
}
