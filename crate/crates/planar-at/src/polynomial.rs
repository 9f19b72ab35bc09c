//! The graph polynomial and exact coefficient extraction.
//!
//! For a graph with linearly ordered vertices the polynomial is the product
//! of `(x_v - sign(uv) * x_u)` over all edges `uv` with `u < v`. Everything
//! downstream rests on reading off single monomial coefficients exactly, so
//! two independent engines are provided: a state-merging dynamic program
//! (`coeff_dp`, the workhorse) and a direct signed enumeration of endpoint
//! selections (`coeff_select`, the cross-check). They share no intermediate
//! representation beyond the query itself.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::plane_graph::{edge, Edge, PlaneGraph, VId};

/// Sparse exponent vector; vertices not present have exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExponentVector(BTreeMap<VId, u32>);

impl ExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VId, u32)>) -> Self {
        ExponentVector(pairs.into_iter().filter(|&(_, k)| k > 0).collect())
    }

    pub fn get(&self, v: VId) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VId, k: u32) {
        if k == 0 {
            self.0.remove(&v);
        } else {
            self.0.insert(v, k);
        }
    }

    pub fn increment(&mut self, v: VId) {
        *self.0.entry(v).or_insert(0) += 1;
    }

    /// Decrements the exponent at `v`; `None` if it is already zero.
    pub fn decremented(&self, v: VId) -> Option<Self> {
        let mut out = self.clone();
        match out.0.get_mut(&v) {
            Some(k) if *k > 1 => *k -= 1,
            Some(_) => {
                out.0.remove(&v);
            }
            None => return None,
        }
        Some(out)
    }

    pub fn incremented(&self, v: VId) -> Self {
        let mut out = self.clone();
        out.increment(v);
        out
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (VId, u32)> + '_ {
        self.0.iter().map(|(&v, &k)| (v, k))
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.values().copied().max().unwrap_or(0)
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, k) in other.support() {
            *out.0.entry(v).or_insert(0) += k;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Edge signs; unlisted edges are `+1`. Only `-1` entries are stored, so a
/// signature with no entries is the all-plus signature.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature(BTreeSet<Edge>);

impl Signature {
    pub fn all_plus() -> Self {
        Self::default()
    }

    pub fn from_negative_edges(neg: impl IntoIterator<Item = (VId, VId)>) -> Self {
        Signature(neg.into_iter().map(|(u, v)| edge(u, v)).collect())
    }

    pub fn sign(&self, e: Edge) -> i64 {
        if self.0.contains(&e) {
            -1
        } else {
            1
        }
    }

    pub fn set_negative(&mut self, e: Edge) {
        self.0.insert(e);
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    /// The signature restricted to a given edge set.
    pub fn restricted_to(&self, edges: &[Edge]) -> Signature {
        Signature(
            self.0
                .iter()
                .copied()
                .filter(|e| edges.binary_search(e).is_ok())
                .collect(),
        )
    }
}

/// A single-coefficient question: which monomial, in the polynomial of
/// which graph, with which edges removed and which signs.
#[derive(Clone, Debug)]
pub struct CoefficientQuery<'a> {
    pub graph: &'a PlaneGraph,
    pub removed: BTreeSet<Edge>,
    pub signature: &'a Signature,
    pub eta: &'a ExponentVector,
}

impl<'a> CoefficientQuery<'a> {
    pub fn full(graph: &'a PlaneGraph, signature: &'a Signature, eta: &'a ExponentVector) -> Self {
        CoefficientQuery {
            graph,
            removed: BTreeSet::new(),
            signature,
            eta,
        }
    }

    pub fn without(
        graph: &'a PlaneGraph,
        removed: impl IntoIterator<Item = Edge>,
        signature: &'a Signature,
        eta: &'a ExponentVector,
    ) -> Self {
        CoefficientQuery {
            graph,
            removed: removed.into_iter().collect(),
            signature,
            eta,
        }
    }

    /// Edges actually contributing factors, ordered by larger endpoint then
    /// smaller. Processing in this order completes vertices one by one,
    /// which keeps both engines' state spaces small.
    fn working_edges(&self) -> Vec<Edge> {
        let mut es: Vec<Edge> = self
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|e| !self.removed.contains(e))
            .collect();
        es.sort_unstable_by_key(|&(u, v)| (v, u));
        es
    }
}

struct Prepared {
    edges: Vec<Edge>,
    /// Dense vertex indexing for the query graph.
    index: HashMap<VId, usize>,
    target: Vec<u32>,
    /// Incidence counts in the working edge set.
    incidence: Vec<u32>,
}

/// Shared setup; `None` means the coefficient is trivially zero.
fn prepare(q: &CoefficientQuery) -> Option<Prepared> {
    for (v, _) in q.eta.support() {
        if !q.graph.contains_vertex(v) {
            return None;
        }
    }
    let edges = q.working_edges();
    if q.eta.total() as usize != edges.len() {
        return None;
    }
    let index: HashMap<VId, usize> = q
        .graph
        .verts()
        .iter()
        .copied()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let n = index.len();
    let mut target = vec![0u32; n];
    for (v, k) in q.eta.support() {
        target[index[&v]] = k;
    }
    let mut incidence = vec![0u32; n];
    for &(u, v) in &edges {
        incidence[index[&u]] += 1;
        incidence[index[&v]] += 1;
    }
    if (0..n).any(|i| target[i] > incidence[i]) {
        return None;
    }
    Some(Prepared {
        edges,
        index,
        target,
        incidence,
    })
}

/// Coefficient of the queried monomial, by dynamic programming over edges.
///
/// States are partial exponent vectors; expanding an edge either raises the
/// larger endpoint (sign `+1`) or the smaller one (sign `-sign(uv)`).
/// States that can no longer reach the target at either endpoint are
/// dropped immediately.
pub fn coeff_dp(q: &CoefficientQuery) -> BigInt {
    let Some(p) = prepare(q) else {
        return BigInt::zero();
    };
    let n = p.target.len();
    if p.target.iter().any(|&t| t > u8::MAX as u32) {
        // Unreachable at supported sizes; incidence caps exponents first.
        return BigInt::zero();
    }
    let mut remaining = p.incidence.clone();
    let mut states: HashMap<Vec<u8>, BigInt> =
        HashMap::from([(vec![0u8; n], BigInt::one())]);
    for &(u, v) in &p.edges {
        let iu = p.index[&u];
        let iv = p.index[&v];
        remaining[iu] -= 1;
        remaining[iv] -= 1;
        let sign_u = -BigInt::from(q.signature.sign((u, v)));
        let mut next: HashMap<Vec<u8>, BigInt> = HashMap::with_capacity(states.len() * 2);
        for (s, c) in states {
            let feasible = |s: &[u8], i: usize| p.target[i] - s[i] as u32 <= remaining[i];
            if (s[iv] as u32) < p.target[iv] {
                let mut t = s.clone();
                t[iv] += 1;
                if feasible(&t, iu) && feasible(&t, iv) {
                    *next.entry(t).or_insert_with(BigInt::zero) += &c;
                }
            }
            if (s[iu] as u32) < p.target[iu] {
                let mut t = s;
                t[iu] += 1;
                if feasible(&t, iu) && feasible(&t, iv) {
                    *next.entry(t).or_insert_with(BigInt::zero) += &c * &sign_u;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }
    let target: Vec<u8> = p.target.iter().map(|&t| t as u8).collect();
    states.remove(&target).unwrap_or_else(BigInt::zero)
}

/// Coefficient of the queried monomial, by signed enumeration of endpoint
/// selections. Independent of [`coeff_dp`]; used for cross-checks and by
/// the verification oracles.
pub fn coeff_select(q: &CoefficientQuery) -> BigInt {
    let Some(p) = prepare(q) else {
        return BigInt::zero();
    };
    let m = p.edges.len();
    let dense: Vec<(usize, usize, i64)> = p
        .edges
        .iter()
        .map(|&(u, v)| (p.index[&u], p.index[&v], q.signature.sign((u, v))))
        .collect();
    let mut need = p.target.clone();
    let mut remaining = p.incidence.clone();
    let mut acc = BigInt::zero();

    fn rec(
        k: usize,
        dense: &[(usize, usize, i64)],
        need: &mut [u32],
        remaining: &mut [u32],
        sign: i64,
        acc: &mut BigInt,
    ) {
        if k == dense.len() {
            *acc += sign;
            return;
        }
        let (iu, iv, s) = dense[k];
        remaining[iu] -= 1;
        remaining[iv] -= 1;
        if need[iv] > 0 && need[iu] <= remaining[iu] && need[iv] - 1 <= remaining[iv] {
            need[iv] -= 1;
            rec(k + 1, dense, need, remaining, sign, acc);
            need[iv] += 1;
        }
        if need[iu] > 0 && need[iu] - 1 <= remaining[iu] && need[iv] <= remaining[iv] {
            need[iu] -= 1;
            rec(k + 1, dense, need, remaining, -s * sign, acc);
            need[iu] += 1;
        }
        remaining[iu] += 1;
        remaining[iv] += 1;
    }
    let _ = m;
    rec(0, &dense, &mut need, &mut remaining, 1, &mut acc);
    acc
}

/// Rewrites a non-vanishing monomial of a graph containing edge `f` into a
/// non-vanishing monomial of the graph without `f`, by undoing one factor.
/// Prefers lowering the larger endpoint. Returns the new exponent vector
/// and its coefficient in the smaller graph.
pub fn restrict_monomial(
    graph: &PlaneGraph,
    removed: &BTreeSet<Edge>,
    signature: &Signature,
    eta: &ExponentVector,
    f: Edge,
) -> Result<(ExponentVector, BigInt), PolyError> {
    if removed.contains(&f) || !graph.has_edge(f) {
        return Err(PolyError::PreconditionViolated(format!(
            "edge {} {} not present in the queried graph",
            graph.name(f.0),
            graph.name(f.1)
        )));
    }
    let base = CoefficientQuery {
        graph,
        removed: removed.clone(),
        signature,
        eta,
    };
    if coeff_dp(&base).is_zero() {
        return Err(PolyError::PreconditionViolated(
            "monomial vanishes before restriction".into(),
        ));
    }
    let mut shrunk = removed.clone();
    shrunk.insert(f);
    for v in [f.1, f.0] {
        let Some(candidate) = eta.decremented(v) else {
            continue;
        };
        let c = coeff_dp(&CoefficientQuery {
            graph,
            removed: shrunk.clone(),
            signature,
            eta: &candidate,
        });
        if !c.is_zero() {
            return Ok((candidate, c));
        }
    }
    Err(PolyError::PreconditionViolated(
        "both restrictions vanish although the source monomial does not".into(),
    ))
}

/// Caps on exhaustive monomial searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Maximum number of coefficient evaluations per search.
    pub max_candidates: usize,
    /// Largest k tried by [`at_number`].
    pub max_k: u32,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_candidates: 2_000_000,
            max_k: 16,
        }
    }
}

/// Enumerates exponent vectors over `verts` with per-vertex caps and a
/// fixed total, in ascending lexicographic order (earlier vertices vary
/// slowest and take smaller exponents first). Invokes the callback until
/// it returns `true`; returns whether it did.
pub fn for_each_capped_vector(
    verts: &[VId],
    caps: &[u32],
    total: u32,
    f: &mut impl FnMut(&ExponentVector) -> bool,
) -> bool {
    fn rec(
        verts: &[VId],
        caps: &[u32],
        i: usize,
        left: u32,
        cur: &mut ExponentVector,
        f: &mut impl FnMut(&ExponentVector) -> bool,
    ) -> bool {
        if i == verts.len() {
            return left == 0 && f(cur);
        }
        let tail: u32 = caps[i + 1..].iter().sum();
        let lo = left.saturating_sub(tail);
        let hi = caps[i].min(left);
        for k in lo..=hi {
            cur.set(verts[i], k);
            if rec(verts, caps, i + 1, left - k, cur, f) {
                cur.set(verts[i], 0);
                return true;
            }
        }
        cur.set(verts[i], 0);
        false
    }
    if caps.iter().sum::<u32>() < total {
        return false;
    }
    let mut cur = ExponentVector::new();
    rec(verts, caps, 0, total, &mut cur, f)
}

/// The least k such that some monomial with all exponents below k has a
/// nonzero coefficient, together with the first witness found. This is the
/// paintability-style number the certificates bound by 4.
pub fn at_number(
    g: &PlaneGraph,
    signature: &Signature,
    limits: &SearchLimits,
) -> Result<(u32, ExponentVector), PolyError> {
    let m = g.edge_count() as u32;
    if m == 0 {
        return Ok((1, ExponentVector::new()));
    }
    let max_degree = g
        .verts()
        .iter()
        .map(|&v| g.degree(v) as u32)
        .max()
        .unwrap_or(0);
    let mut budget = limits.max_candidates;
    for k in 1..=limits.max_k.min(max_degree + 1) {
        let verts = g.verts().to_vec();
        let caps: Vec<u32> = verts
            .iter()
            .map(|&v| (k - 1).min(g.degree(v) as u32))
            .collect();
        let mut found = None;
        let mut exhausted = false;
        for_each_capped_vector(&verts, &caps, m, &mut |eta| {
            if budget == 0 {
                exhausted = true;
                return true;
            }
            budget -= 1;
            let c = coeff_dp(&CoefficientQuery::full(g, signature, eta));
            if !c.is_zero() {
                found = Some(eta.clone());
                true
            } else {
                false
            }
        });
        if exhausted {
            return Err(PolyError::SearchBudgetExceeded(limits.max_candidates));
        }
        if let Some(eta) = found {
            return Ok((k, eta));
        }
    }
    Err(PolyError::SearchBudgetExceeded(limits.max_candidates))
}

/// Searches for a monomial with exponents strictly below the per-vertex
/// bounds `f` and nonzero coefficient. `Ok(None)` means an exhaustive
/// search found none.
pub fn f_at_check(
    g: &PlaneGraph,
    signature: &Signature,
    bounds: &BTreeMap<VId, u32>,
    limits: &SearchLimits,
) -> Result<Option<ExponentVector>, PolyError> {
    let m = g.edge_count() as u32;
    let verts = g.verts().to_vec();
    let caps: Vec<u32> = verts
        .iter()
        .map(|&v| {
            bounds
                .get(&v)
                .copied()
                .unwrap_or(0)
                .saturating_sub(1)
                .min(g.degree(v) as u32)
        })
        .collect();
    let mut budget = limits.max_candidates;
    let mut found = None;
    let mut exhausted = false;
    for_each_capped_vector(&verts, &caps, m, &mut |eta| {
        if budget == 0 {
            exhausted = true;
            return true;
        }
        budget -= 1;
        let c = coeff_dp(&CoefficientQuery::full(g, signature, eta));
        if !c.is_zero() {
            found = Some(eta.clone());
            true
        } else {
            false
        }
    });
    if exhausted {
        return Err(PolyError::SearchBudgetExceeded(limits.max_candidates));
    }
    Ok(found)
}

/// Checks a claimed witness against per-vertex bounds using the selection
/// engine: exponents strictly below `bounds` everywhere and a nonzero
/// coefficient in the full polynomial.
pub fn f_at_verify(
    g: &PlaneGraph,
    signature: &Signature,
    bounds: &BTreeMap<VId, u32>,
    eta: &ExponentVector,
) -> bool {
    for &v in g.verts() {
        if eta.get(v) >= bounds.get(&v).copied().unwrap_or(0) {
            return false;
        }
    }
    for (v, _) in eta.support() {
        if !g.contains_vertex(v) {
            return false;
        }
    }
    !coeff_select(&CoefficientQuery::full(g, signature, eta)).is_zero()
}

/// `|a| == |b|`.
pub fn same_magnitude(a: &BigInt, b: &BigInt) -> bool {
    a.abs() == b.abs()
}
