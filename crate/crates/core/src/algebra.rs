//! Finite ordered algebras and monotone homomorphisms: validation, term
//! evaluation, satisfaction of inequations, products, generated subalgebras,
//! coinserters (quotients by precongruence saturation), and factorization.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::iso;
use crate::poset::{self, rank, unrank, MonotoneMap, Poset, PosetError};
use crate::term::{Inequation, Presentation, Signature, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operation `{op}` is not monotone: {lo} vs {hi}")]
    NonMonotoneOperation { op: String, lo: String, hi: String },
    #[error("operation `{op}` table has {got} entries, expected {want}")]
    MissingTableEntry { op: String, got: usize, want: usize },
    #[error("table count {got} does not match signature ({want} operations)")]
    WrongTableCount { got: usize, want: usize },
    #[error("table entry {0} out of carrier range {1}")]
    EntryOutOfRange(usize, usize),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("map is not a homomorphism: op `{op}` at tuple {tuple}")]
    NotHomomorphism { op: String, tuple: String },
    #[error("algebra with constants cannot have an empty carrier")]
    EmptyWithConstants,
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("{0} fails an axiom: {1}")]
    AxiomFails(String, String),
}

/// Number of `arity`-tuples over an `n`-element carrier together with the
/// radix vector used to rank them.
pub fn tuple_space(n: usize, arity: usize) -> (usize, Vec<usize>) {
    let sizes = vec![n; arity];
    (sizes.iter().product(), sizes)
}

/// A finite ordered algebra: a poset carrier plus one monotone table per
/// operation symbol. Tables are indexed by mixed-radix tuple rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedAlgebra {
    sig: Signature,
    carrier: Poset,
    tables: Vec<Vec<usize>>,
}

impl OrderedAlgebra {
    /// Validates totality and monotonicity of every operation table.
    pub fn new(
        sig: Signature,
        carrier: Poset,
        tables: Vec<Vec<usize>>,
    ) -> Result<OrderedAlgebra, AlgebraError> {
        if tables.len() != sig.ops().len() {
            return Err(AlgebraError::WrongTableCount {
                got: tables.len(),
                want: sig.ops().len(),
            });
        }
        let n = carrier.len();
        if n == 0 && sig.has_constants() {
            return Err(AlgebraError::EmptyWithConstants);
        }
        for (op, table) in sig.ops().iter().zip(&tables) {
            let (want, sizes) = tuple_space(n, op.arity);
            if table.len() != want {
                return Err(AlgebraError::MissingTableEntry {
                    op: op.name.clone(),
                    got: table.len(),
                    want,
                });
            }
            for &v in table {
                if v >= n {
                    return Err(AlgebraError::EntryOutOfRange(v, n));
                }
            }
            for lo in 0..table.len() {
                let lo_t = unrank(lo, &sizes);
                'hi: for hi in 0..table.len() {
                    let hi_t = unrank(hi, &sizes);
                    for i in 0..op.arity {
                        if !carrier.leq(lo_t[i], hi_t[i]) {
                            continue 'hi;
                        }
                    }
                    if !carrier.leq(table[lo], table[hi]) {
                        return Err(AlgebraError::NonMonotoneOperation {
                            op: op.name.clone(),
                            lo: format!("{lo_t:?}"),
                            hi: format!("{hi_t:?}"),
                        });
                    }
                }
            }
        }
        Ok(OrderedAlgebra {
            sig,
            carrier,
            tables,
        })
    }

    /// One-point algebra: every operation is constant at the single element.
    pub fn terminal(sig: Signature) -> OrderedAlgebra {
        let carrier = Poset::new(vec!["*"], &[]).unwrap();
        let tables = sig.ops().iter().map(|_| vec![0]).collect();
        OrderedAlgebra::new(sig, carrier, tables).unwrap()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn table(&self, op_idx: usize) -> &[usize] {
        &self.tables[op_idx]
    }

    pub fn apply(&self, op_idx: usize, args: &[usize]) -> usize {
        let (_, sizes) = tuple_space(self.len(), self.sig.arity(op_idx));
        self.tables[op_idx][rank(args, &sizes)]
    }
}

/// A monotone homomorphism between ordered algebras of the same signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    dom: OrderedAlgebra,
    cod: OrderedAlgebra,
    map: MonotoneMap,
}

impl Homomorphism {
    pub fn new(
        dom: OrderedAlgebra,
        cod: OrderedAlgebra,
        table: Vec<usize>,
    ) -> Result<Homomorphism, AlgebraError> {
        if dom.sig != cod.sig {
            return Err(AlgebraError::SignatureMismatch);
        }
        let map = MonotoneMap::new(dom.carrier.clone(), cod.carrier.clone(), table)?;
        for (idx, op) in dom.sig.ops().iter().enumerate() {
            let (count, sizes) = tuple_space(dom.len(), op.arity);
            for r in 0..count {
                let tuple = unrank(r, &sizes);
                let image: Vec<usize> = tuple.iter().map(|&a| map.apply(a)).collect();
                if map.apply(dom.apply(idx, &tuple)) != cod.apply(idx, &image) {
                    return Err(AlgebraError::NotHomomorphism {
                        op: op.name.clone(),
                        tuple: format!("{tuple:?}"),
                    });
                }
            }
        }
        Ok(Homomorphism { dom, cod, map })
    }

    pub fn identity(a: &OrderedAlgebra) -> Homomorphism {
        Homomorphism {
            dom: a.clone(),
            cod: a.clone(),
            map: MonotoneMap::identity(&a.carrier),
        }
    }

    pub fn dom(&self) -> &OrderedAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &OrderedAlgebra {
        &self.cod
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map.apply(a)
    }

    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        assert_eq!(self.cod, other.dom, "composition shape mismatch");
        Homomorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map: self.map.then(&other.map),
        }
    }

    pub fn is_parallel_to(&self, other: &Homomorphism) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }
}

/// Evaluates a term under a valuation of its atoms.
pub fn eval(
    a: &OrderedAlgebra,
    valuation: &BTreeMap<String, usize>,
    t: &Term,
) -> Result<usize, AlgebraError> {
    match t {
        Term::Atom(v) => valuation
            .get(v)
            .copied()
            .ok_or_else(|| AlgebraError::UnboundVariable(v.clone())),
        Term::App(op, args) => {
            let idx = a
                .sig
                .op_index(op)
                .ok_or_else(|| AlgebraError::UnknownOp(op.clone()))?;
            let mut vals = Vec::with_capacity(args.len());
            for arg in args {
                vals.push(eval(a, valuation, arg)?);
            }
            Ok(a.apply(idx, &vals))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatisfactionVerdict {
    Holds,
    /// The lexicographically first countervaluation.
    Fails(BTreeMap<String, usize>),
}

/// Does the algebra satisfy `lhs <= rhs` under every valuation of the
/// discrete context? Valuations are scanned in lexicographic order with the
/// first context variable most significant.
pub fn satisfies(a: &OrderedAlgebra, ineq: &Inequation) -> Result<SatisfactionVerdict, AlgebraError> {
    let k = ineq.context.len();
    let n = a.len();
    if n == 0 && k > 0 {
        return Ok(SatisfactionVerdict::Holds);
    }
    let (count, sizes) = tuple_space(n.max(1), k);
    for r in 0..count {
        let tuple = unrank(r, &sizes);
        let valuation: BTreeMap<String, usize> = ineq
            .context
            .iter()
            .cloned()
            .zip(tuple.iter().copied())
            .collect();
        let l = eval(a, &valuation, &ineq.lhs)?;
        let rhs = eval(a, &valuation, &ineq.rhs)?;
        if !a.carrier.leq(l, rhs) {
            return Ok(SatisfactionVerdict::Fails(valuation));
        }
    }
    Ok(SatisfactionVerdict::Holds)
}

/// Checks every axiom; the error carries the first failing axiom and its
/// countervaluation.
pub fn satisfies_all(a: &OrderedAlgebra, pres: &Presentation) -> Result<(), AlgebraError> {
    if a.signature() != pres.signature() {
        return Err(AlgebraError::SignatureMismatch);
    }
    for ax in pres.axioms() {
        if let SatisfactionVerdict::Fails(val) = satisfies(a, ax)? {
            return Err(AlgebraError::AxiomFails(ax.to_string(), format!("{val:?}")));
        }
    }
    Ok(())
}

/// Product of algebras with componentwise carrier and tables; the empty
/// product is the one-point terminal algebra.
pub fn product(
    factors: &[&OrderedAlgebra],
) -> Result<(OrderedAlgebra, Vec<Homomorphism>), AlgebraError> {
    let Some(first) = factors.first() else {
        return Ok((
            OrderedAlgebra::terminal(Signature::empty()),
            Vec::new(),
        ));
    };
    let sig = first.sig.clone();
    if factors.iter().any(|f| f.sig != sig) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let carriers: Vec<&Poset> = factors.iter().map(|f| f.carrier()).collect();
    let (carrier, projections) = Poset::product(&carriers);
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let mut tables = Vec::new();
    for (idx, op) in sig.ops().iter().enumerate() {
        let (count, tuple_sizes) = tuple_space(carrier.len(), op.arity);
        let mut table = Vec::with_capacity(count);
        for r in 0..count {
            let tuple = unrank(r, &tuple_sizes);
            let mut result = Vec::with_capacity(factors.len());
            for (fi, f) in factors.iter().enumerate() {
                let args: Vec<usize> = tuple.iter().map(|&t| unrank(t, &sizes)[fi]).collect();
                result.push(f.apply(idx, &args));
            }
            table.push(rank(&result, &sizes));
        }
        tables.push(table);
    }
    let prod = OrderedAlgebra::new(sig, carrier, tables)?;
    let homs = projections
        .into_iter()
        .enumerate()
        .map(|(i, p)| Homomorphism {
            dom: prod.clone(),
            cod: factors[i].clone(),
            map: p,
        })
        .collect();
    Ok((prod, homs))
}

/// Empty product over an explicit signature (terminal algebra of that
/// signature).
pub fn terminal_of(sig: &Signature) -> OrderedAlgebra {
    OrderedAlgebra::terminal(sig.clone())
}

/// Least subalgebra containing `seed`, with the order induced from `a`.
/// Returns the inclusion homomorphism (an order-embedding).
pub fn subalgebra_generated(a: &OrderedAlgebra, seed: &[usize]) -> Homomorphism {
    let mut member = vec![false; a.len()];
    for &s in seed {
        member[s] = true;
    }
    loop {
        let elems: Vec<usize> = (0..a.len()).filter(|&x| member[x]).collect();
        let mut grew = false;
        for (idx, op) in a.sig.ops().iter().enumerate() {
            let (count, sizes) = tuple_space(elems.len(), op.arity);
            for r in 0..count {
                let tuple: Vec<usize> =
                    unrank(r, &sizes).into_iter().map(|i| elems[i]).collect();
                let v = a.apply(idx, &tuple);
                if !member[v] {
                    member[v] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let elems: Vec<usize> = (0..a.len()).filter(|&x| member[x]).collect();
    let labels: Vec<String> = elems.iter().map(|&x| a.carrier.label(x).to_string()).collect();
    let mut pairs = Vec::new();
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            if a.carrier.leq(x, y) {
                pairs.push((i, j));
            }
        }
    }
    let carrier = Poset::new(labels, &pairs).expect("induced order is a poset");
    let back: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut tables = Vec::new();
    for (idx, op) in a.sig.ops().iter().enumerate() {
        let (count, sizes) = tuple_space(elems.len(), op.arity);
        let mut table = Vec::with_capacity(count);
        for r in 0..count {
            let tuple: Vec<usize> = unrank(r, &sizes).into_iter().map(|i| elems[i]).collect();
            table.push(back[&a.apply(idx, &tuple)]);
        }
        tables.push(table);
    }
    let sub = OrderedAlgebra::new(a.sig.clone(), carrier, tables)
        .expect("restriction of monotone tables is monotone");
    Homomorphism::new(sub, a.clone(), elems).expect("inclusion is a homomorphism")
}

/// Precongruence saturation: the least preorder on the carrier containing its
/// order and `forced`, closed under transitivity and under every operation.
/// Pairs are processed FIFO; operation closure rescans the tuples that
/// dominate a newly added pair.
pub fn precongruence(a: &OrderedAlgebra, forced: &[(usize, usize)]) -> Vec<bool> {
    let n = a.len();
    let mut rel = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            if a.carrier.leq(x, y) {
                rel[x * n + y] = true;
            }
        }
    }
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let push = |rel: &mut Vec<bool>, queue: &mut VecDeque<(usize, usize)>, x: usize, y: usize| {
        if !rel[x * n + y] {
            rel[x * n + y] = true;
            queue.push_back((x, y));
        }
    };
    for &(x, y) in forced {
        push(&mut rel, &mut queue, x, y);
    }
    while let Some((x, y)) = queue.pop_front() {
        // Transitivity through the new pair.
        for c in 0..n {
            if rel[y * n + c] {
                push(&mut rel, &mut queue, x, c);
            }
            if rel[c * n + x] {
                push(&mut rel, &mut queue, c, y);
            }
        }
        // Operation closure: tuples related componentwise, using (x, y) at
        // one position.
        for (idx, op) in a.sig.ops().iter().enumerate() {
            if op.arity == 0 {
                continue;
            }
            let (count, sizes) = tuple_space(n, op.arity - 1);
            for pos in 0..op.arity {
                for lo_rest in 0..count {
                    let lo_rest_t = unrank(lo_rest, &sizes);
                    'hi: for hi_rest in 0..count {
                        let hi_rest_t = unrank(hi_rest, &sizes);
                        for i in 0..op.arity - 1 {
                            if !rel[lo_rest_t[i] * n + hi_rest_t[i]] {
                                continue 'hi;
                            }
                        }
                        let mut lo_t = lo_rest_t.clone();
                        lo_t.insert(pos, x);
                        let mut hi_t = hi_rest_t.clone();
                        hi_t.insert(pos, y);
                        push(
                            &mut rel,
                            &mut queue,
                            a.apply(idx, &lo_t),
                            a.apply(idx, &hi_t),
                        );
                    }
                }
            }
        }
    }
    rel
}

/// Coinserter in the category of ordered algebras: the quotient by the
/// precongruence generated by `(u0(t), u1(t))`. Tables descend because the
/// precongruence is closed under operations.
pub fn coinserter(
    u0: &Homomorphism,
    u1: &Homomorphism,
) -> Result<(OrderedAlgebra, Homomorphism), AlgebraError> {
    if !u0.is_parallel_to(u1) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let x = u0.cod();
    let forced: Vec<(usize, usize)> = (0..u0.dom().len())
        .map(|t| (u0.apply(t), u1.apply(t)))
        .collect();
    quotient_by(x, &forced)
}

/// Quotient of `x` by the precongruence generated by `forced`.
pub fn quotient_by(
    x: &OrderedAlgebra,
    forced: &[(usize, usize)],
) -> Result<(OrderedAlgebra, Homomorphism), AlgebraError> {
    let rel = precongruence(x, forced);
    let n = x.len();
    let mut rel_pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rel[a * n + b] {
                rel_pairs.push((a, b));
            }
        }
    }
    let pre = poset::Preorder::new(x.carrier.labels().to_vec(), &rel_pairs);
    let (qposet, class_of) = pre.quotient();
    let m = qposet.len();
    let mut tables = Vec::new();
    for (idx, op) in x.sig.ops().iter().enumerate() {
        let (count, sizes) = tuple_space(m, op.arity);
        let mut table = vec![usize::MAX; count];
        let (xcount, xsizes) = tuple_space(n, op.arity);
        for r in 0..xcount {
            let tuple = unrank(r, &xsizes);
            let classes: Vec<usize> = tuple.iter().map(|&t| class_of[t]).collect();
            let target = class_of[x.apply(idx, &tuple)];
            let slot = &mut table[rank(&classes, &sizes)];
            debug_assert!(
                *slot == usize::MAX || *slot == target,
                "precongruence closure guarantees well-defined tables"
            );
            *slot = target;
        }
        debug_assert!(table.iter().all(|&v| v != usize::MAX));
        tables.push(table);
    }
    let q = OrderedAlgebra::new(x.sig.clone(), qposet, tables)?;
    let hom = Homomorphism::new(x.clone(), q.clone(), class_of)?;
    Ok((q, hom))
}

/// Prekernel pair of `f` in the category of ordered algebras: the subposet
/// `{(x0, x1) : f(x0) <= f(x1)}` of the square, which is closed under the
/// operations and hence a subalgebra, with its two projections.
pub fn prekernel_pair(f: &Homomorphism) -> (OrderedAlgebra, Homomorphism, Homomorphism) {
    let a = f.dom();
    let (square, _) = product(&[a, a]).expect("same signature");
    let members: Vec<usize> = (0..square.len())
        .filter(|&r| {
            let t = unrank(r, &[a.len(), a.len()]);
            f.cod().carrier().leq(f.apply(t[0]), f.apply(t[1]))
        })
        .collect();
    let incl = subalgebra_generated(&square, &members);
    debug_assert_eq!(incl.dom().len(), members.len(), "member set is op-closed");
    let u = incl.dom().clone();
    let proj = |coord: usize| -> Homomorphism {
        let table: Vec<usize> = (0..u.len())
            .map(|i| unrank(incl.apply(i), &[a.len(), a.len()])[coord])
            .collect();
        Homomorphism::new(u.clone(), a.clone(), table).expect("projection is a homomorphism")
    };
    (u.clone(), proj(0), proj(1))
}

/// Factors `f = m . c` with `c` the coinserter of the prekernel pair of `f`
/// and `m` the induced embedding.
pub fn factor(f: &Homomorphism) -> (Homomorphism, Homomorphism) {
    let (_, p0, p1) = prekernel_pair(f);
    let (q, c) = coinserter(&p0, &p1).expect("projections are parallel");
    let mut m_table = vec![usize::MAX; q.len()];
    for x in 0..f.dom().len() {
        m_table[c.apply(x)] = f.apply(x);
    }
    let m = Homomorphism::new(q, f.cod().clone(), m_table)
        .expect("induced map on classes is a homomorphism");
    (c, m)
}

/// Is `f` (up to isomorphism over its domain) the coinserter of its own
/// prekernel pair? True for every surjective homomorphism.
pub fn is_coinserter_of_own_prekernel(f: &Homomorphism) -> bool {
    let (_, p0, p1) = prekernel_pair(f);
    let (_, c) = coinserter(&p0, &p1).expect("parallel");
    match iso::iso_over_domain(c.map(), f.map()) {
        Some(phi) => {
            // The carrier iso must also transport the algebra structure.
            Homomorphism::new(c.cod().clone(), f.cod().clone(), phi.table().to_vec()).is_ok()
        }
        None => false,
    }
}

/// All homomorphisms `a -> b`, ordered lexicographically by table.
pub fn all_homomorphisms(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Vec<Homomorphism> {
    crate::enumerate::monotone_maps(a.carrier(), b.carrier())
        .iter()
        .filter_map(|t| Homomorphism::new(a.clone(), b.clone(), t.clone()).ok())
        .collect()
}

/// Universal-property oracle for algebra coinserters, probing over every
/// algebra of the signature with at most `probe_bound` carrier elements.
pub enum AlgCoinserterVerdict {
    Pass,
    NotInequating { t: usize },
    NotFactoring { probe: OrderedAlgebra },
    NotOrderReflecting { probe: OrderedAlgebra },
}

pub fn verify_coinserter(
    u0: &Homomorphism,
    u1: &Homomorphism,
    candidate: &Homomorphism,
    probe_bound: usize,
) -> AlgCoinserterVerdict {
    for t in 0..u0.dom().len() {
        let (a, b) = (candidate.apply(u0.apply(t)), candidate.apply(u1.apply(t)));
        if !candidate.cod().carrier().leq(a, b) {
            return AlgCoinserterVerdict::NotInequating { t };
        }
    }
    let q = candidate.cod();
    for probe in crate::enumerate::algebras_up_to(u0.dom().signature(), probe_bound) {
        let maps_from_q = all_homomorphisms(q, &probe);
        for f in all_homomorphisms(u0.cod(), &probe) {
            let coin = (0..u0.dom().len()).all(|t| {
                probe
                    .carrier()
                    .leq(f.apply(u0.apply(t)), f.apply(u1.apply(t)))
            });
            if !coin {
                continue;
            }
            let factors = maps_from_q
                .iter()
                .any(|g| &candidate.then(g) == &f);
            if !factors {
                return AlgCoinserterVerdict::NotFactoring { probe };
            }
        }
        for g in &maps_from_q {
            for h in &maps_from_q {
                let gc = candidate.then(g);
                let hc = candidate.then(h);
                if gc.map().pointwise_leq(hc.map()) && !g.map().pointwise_leq(h.map()) {
                    return AlgCoinserterVerdict::NotOrderReflecting { probe };
                }
            }
        }
    }
    AlgCoinserterVerdict::Pass
}

/// Small fixture algebras shared by the test suites.
#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    /// Chain `0 < .. < n-1` with binary minimum.
    pub fn min_chain(n: usize) -> OrderedAlgebra {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        let carrier = Poset::chain(n);
        let (count, sizes) = tuple_space(n, 2);
        let table = (0..count)
            .map(|r| {
                let t = unrank(r, &sizes);
                t[0].min(t[1])
            })
            .collect();
        OrderedAlgebra::new(sig, carrier, vec![table]).unwrap()
    }

    /// Two-chain with binary maximum, which fails `meet(x,y) <= x`.
    pub fn max_chain2() -> OrderedAlgebra {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        OrderedAlgebra::new(sig, Poset::chain(2), vec![vec![0, 1, 1, 1]]).unwrap()
    }

    /// 4-element diamond `bot < l, r < top` with the actual infimum.
    pub fn diamond_min() -> OrderedAlgebra {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        let carrier =
            Poset::new(vec!["bot", "l", "r", "top"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let inf = |a: usize, b: usize| -> usize {
            (0..4)
                .filter(|&z| carrier.leq(z, a) && carrier.leq(z, b))
                .max_by_key(|&z| (0..4).filter(|&w| carrier.leq(w, z)).count())
                .unwrap()
        };
        let (count, sizes) = tuple_space(4, 2);
        let table = (0..count)
            .map(|r| {
                let t = unrank(r, &sizes);
                inf(t[0], t[1])
            })
            .collect();
        OrderedAlgebra::new(sig, carrier, vec![table]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::{max_chain2, min_chain};
    use super::*;

    #[test]
    fn min_is_monotone() {
        min_chain(2);
    }

    #[test]
    fn swap_is_not_monotone() {
        let sig = Signature::new(vec![("swap", 1)]).unwrap();
        let err = OrderedAlgebra::new(sig, Poset::chain(2), vec![vec![1, 0]]).unwrap_err();
        assert!(matches!(err, AlgebraError::NonMonotoneOperation { .. }));
    }

    #[test]
    fn discrete_carrier_accepts_any_table() {
        let sig = Signature::new(vec![("swap", 1)]).unwrap();
        OrderedAlgebra::new(sig, Poset::discrete_n(2), vec![vec![1, 0]]).unwrap();
    }

    #[test]
    fn eval_meet_terms() {
        let a = min_chain(2);
        let mut val = BTreeMap::new();
        val.insert("x".to_string(), 1);
        val.insert("y".to_string(), 0);
        let t = Term::app("meet", vec![Term::atom("x"), Term::atom("y")]);
        assert_eq!(eval(&a, &val, &t).unwrap(), 0);
        let t2 = Term::app(
            "meet",
            vec![
                Term::app("meet", vec![Term::atom("x"), Term::atom("x")]),
                Term::atom("y"),
            ],
        );
        val.insert("y".to_string(), 1);
        assert_eq!(eval(&a, &val, &t2).unwrap(), 1);
    }

    #[test]
    fn unbound_variable_reported() {
        let a = min_chain(2);
        let err = eval(&a, &BTreeMap::new(), &Term::atom("x")).unwrap_err();
        assert_eq!(err, AlgebraError::UnboundVariable("x".into()));
    }

    #[test]
    fn min_satisfies_projection() {
        let a = min_chain(2);
        let ineq = Inequation::new(
            vec!["x", "y"],
            Term::app("meet", vec![Term::atom("x"), Term::atom("y")]),
            Term::atom("x"),
        );
        assert_eq!(satisfies(&a, &ineq).unwrap(), SatisfactionVerdict::Holds);
    }

    #[test]
    fn max_fails_projection_at_first_countervaluation() {
        let a = max_chain2();
        let ineq = Inequation::new(
            vec!["x", "y"],
            Term::app("meet", vec![Term::atom("x"), Term::atom("y")]),
            Term::atom("x"),
        );
        let verdict = satisfies(&a, &ineq).unwrap();
        let mut expect = BTreeMap::new();
        expect.insert("x".to_string(), 0);
        expect.insert("y".to_string(), 1);
        assert_eq!(verdict, SatisfactionVerdict::Fails(expect));
    }

    #[test]
    fn reflexivity_always_holds() {
        let a = max_chain2();
        let ineq = Inequation::new(vec!["x"], Term::atom("x"), Term::atom("x"));
        assert_eq!(satisfies(&a, &ineq).unwrap(), SatisfactionVerdict::Holds);
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let a = min_chain(2);
        let one = OrderedAlgebra::terminal(a.signature().clone());
        let (prod, _) = product(&[&a, &one]).unwrap();
        assert_eq!(prod.len(), 2);
        assert!(iso::are_isomorphic(prod.carrier(), a.carrier()));
    }

    #[test]
    fn product_of_chains_componentwise_min() {
        let a = min_chain(2);
        let (prod, projs) = product(&[&a, &a]).unwrap();
        assert_eq!(prod.len(), 4);
        for r in 0..4 {
            for s in 0..4 {
                let v = prod.apply(0, &[r, s]);
                for p in &projs {
                    assert_eq!(p.apply(v), p.apply(r).min(p.apply(s)));
                }
            }
        }
    }

    #[test]
    fn subalgebra_closure_examples() {
        let a = min_chain(3);
        let top = subalgebra_generated(&a, &[2]);
        assert_eq!(top.dom().len(), 1);
        let ends = subalgebra_generated(&a, &[0, 2]);
        assert_eq!(ends.dom().len(), 2);
        let all = subalgebra_generated(&a, &[0, 1, 2]);
        assert_eq!(all.dom().len(), 3);
        assert!(all.map().is_embedding());
    }

    #[test]
    fn coinserter_identity_pair() {
        let a = min_chain(2);
        let id = Homomorphism::identity(&a);
        let (q, c) = coinserter(&id, &id).unwrap();
        assert_eq!(q.len(), 2);
        assert!(c.map().is_injective());
    }

    #[test]
    fn coinserter_collapsing_chain() {
        // Forcing 1 <= 0 in the min chain collapses everything.
        let a = min_chain(2);
        let (q, _) = quotient_by(&a, &[(1, 0)]).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn op_closure_propagates_through_swap() {
        // Discrete {a,b} with a unary swap: forcing a <= b forces b <= a.
        let sig = Signature::new(vec![("swap", 1)]).unwrap();
        let a = OrderedAlgebra::new(sig, Poset::discrete(vec!["a", "b"]), vec![vec![1, 0]]).unwrap();
        let (q, _) = quotient_by(&a, &[(0, 1)]).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn factor_of_collapse() {
        // min-chain-3 -> min-chain-2 identifying 1 and 2.
        let a = min_chain(3);
        let b = min_chain(2);
        let f = Homomorphism::new(a, b, vec![0, 1, 1]).unwrap();
        let (c, m) = factor(&f);
        assert_eq!(c.then(&m), f);
        assert!(c.map().is_surjective());
        assert!(m.map().is_embedding());
        assert_eq!(m.dom().len(), 2);
        assert!(is_coinserter_of_own_prekernel(&f));
    }

    #[test]
    fn factor_of_embedding() {
        let a = min_chain(2);
        let b = min_chain(3);
        let f = Homomorphism::new(a, b, vec![0, 2]).unwrap();
        let (c, m) = factor(&f);
        assert_eq!(c.then(&m), f);
        assert!(c.map().is_injective() && c.map().is_surjective());
        assert!(m.map().is_embedding());
    }
}
