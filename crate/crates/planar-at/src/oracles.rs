//! Independent verification and brute-force solvers.
//!
//! Everything here recomputes claims from first principles with
//! [`coeff_select`] or exhaustive search and never calls into the
//! construction code, so agreement between the two sides is meaningful.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;

use crate::error::OracleError;
use crate::extractor::{Certificate, Mode};
use crate::plane_graph::{edge, validate_matching, Edge, Matching, MatchingIssue, PlaneGraph, VId};
use crate::polynomial::{coeff_select, CoefficientQuery, ExponentVector, Signature};

/// Largest graph the painting-game solver accepts.
pub const PAINT_GUARD: usize = 8;

/// Default node budget for the defective list-coloring search.
pub const COLOR_BUDGET: usize = 5_000_000;

/// Per-vertex color lists; every list is non-empty, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment(BTreeMap<VId, Vec<i64>>);

impl ListAssignment {
    pub fn new(lists: BTreeMap<VId, Vec<i64>>) -> Result<Self, OracleError> {
        let mut out = BTreeMap::new();
        for (v, mut colors) in lists {
            colors.sort_unstable();
            colors.dedup();
            if colors.is_empty() {
                return Err(OracleError::PreconditionViolated(format!(
                    "empty color list for vertex #{v}"
                )));
            }
            out.insert(v, colors);
        }
        Ok(ListAssignment(out))
    }

    pub fn colors(&self, v: VId) -> &[i64] {
        self.0.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (VId, &[i64])> {
        self.0.iter().map(|(&v, c)| (v, c.as_slice()))
    }
}

/// Position in the painting game: who still needs color, what is left to
/// spend, and the defect bound in force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub uncolored: BTreeSet<VId>,
    pub tokens: BTreeMap<VId, u32>,
    pub defect: u32,
}

/// First reason a matching-plus-monomial pair fails the certificate caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceIssue {
    BadMatching(MatchingIssue),
    EdgeNotOnBoundary,
    /// A designated endpoint carries a nonzero exponent.
    EndpointLoaded(VId),
    /// A boundary vertex exceeds two minus its matching degree.
    BoundaryCapExceeded(VId),
    /// An interior vertex exceeds three (four at an oriented head).
    InteriorCapExceeded(VId),
    /// The monomial's coefficient is zero in the reduced graph.
    Vanishes,
}

/// Checks the four certificate conditions for `eta` against `(g, e, m)`,
/// reporting the first violation: designated endpoints at zero, boundary
/// caps, interior caps, and finally a nonzero coefficient in the graph
/// without `e` (and without the matching unless it is oriented).
pub fn is_nice(
    g: &PlaneGraph,
    e: Edge,
    m: &Matching,
    eta: &ExponentVector,
    sig: &Signature,
) -> Result<(), NiceIssue> {
    validate_matching(g, e, m).map_err(NiceIssue::BadMatching)?;
    let on_boundary = g
        .component_walk(e.0)
        .ok()
        .map(|w| w.boundary_edges().contains(&e))
        .unwrap_or(false);
    if !on_boundary {
        return Err(NiceIssue::EdgeNotOnBoundary);
    }
    for v in [e.0, e.1] {
        if eta.get(v) != 0 {
            return Err(NiceIssue::EndpointLoaded(v));
        }
    }
    let boundary = match g.boundary_vertices() {
        Ok(b) => b,
        Err(_) => return Err(NiceIssue::EdgeNotOnBoundary),
    };
    let heads = m.heads();
    for &v in g.verts() {
        if v == e.0 || v == e.1 || !boundary.contains(&v) {
            continue;
        }
        if eta.get(v) + m.degree(v) > 2 {
            return Err(NiceIssue::BoundaryCapExceeded(v));
        }
    }
    for &v in g.verts() {
        if boundary.contains(&v) {
            continue;
        }
        let cap = if heads.contains(&v) { 4 } else { 3 };
        if eta.get(v) > cap {
            return Err(NiceIssue::InteriorCapExceeded(v));
        }
    }
    let mut removed: BTreeSet<Edge> = BTreeSet::new();
    removed.insert(e);
    if !m.is_oriented() {
        removed.extend(m.edge_set());
    }
    let c = coeff_select(&CoefficientQuery::without(g, removed, sig, eta));
    if c.is_zero() {
        return Err(NiceIssue::Vanishes);
    }
    Ok(())
}

/// One named verification step.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Empty on success, a short explanation on failure.
    pub detail: String,
}

/// Outcome of [`verify_certificate`]: every check with its verdict.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.checks.push(CheckResult {
                name,
                passed: true,
                detail: String::new(),
            }),
            Err(detail) => self.checks.push(CheckResult {
                name,
                passed: false,
                detail,
            }),
        }
    }
}

/// Re-derives every claim a certificate makes, using only [`coeff_select`]
/// for algebra. Failures land in the report; nothing is trusted from the
/// certificate itself.
pub fn verify_certificate(g: &PlaneGraph, sig: &Signature, cert: &Certificate) -> VerifyReport {
    let mut report = VerifyReport { checks: Vec::new() };
    let oriented = cert.mode.is_oriented();
    let (v1, v2) = cert.edge;
    let e = if g.contains_vertex(v1) && g.contains_vertex(v2) && v1 != v2 {
        Some(edge(v1, v2))
    } else {
        None
    };

    report.push(
        "edge-on-boundary",
        match e {
            Some(e) if g.has_edge(e) => match g.component_walk(v1) {
                Ok(w) if w.directed_steps().contains(&cert.edge) => Ok(()),
                Ok(_) => Err(format!(
                    "{} -> {} is not a step of the outer walk",
                    g.name(v1),
                    g.name(v2)
                )),
                Err(err) => Err(err.to_string()),
            },
            _ => Err("designated edge is not an edge of the graph".into()),
        },
    );

    report.push(
        "mode-signature",
        match cert.mode {
            Mode::Plain if !sig.is_all_plus() => {
                Err("plain mode with a negative edge sign".into())
            }
            Mode::Signed if sig.is_all_plus() => {
                Err("signed mode without any negative edge sign".into())
            }
            _ => Ok(()),
        },
    );

    report.push(
        "matching-mode",
        if cert.matching.is_oriented() == oriented {
            Ok(())
        } else {
            Err("matching orientation disagrees with the mode".into())
        },
    );

    report.push(
        "matching-valid",
        match e {
            Some(e) => validate_matching(g, e, &cert.matching).map_err(|i| format!("{i:?}")),
            None => Err("designated edge endpoints are invalid".into()),
        },
    );

    report.push(
        "exponent-caps",
        (|| {
            let boundary = g.boundary_vertices().map_err(|e| e.to_string())?;
            let heads = cert.matching.heads();
            for (v, k) in cert.eta.support() {
                if !g.contains_vertex(v) {
                    return Err(format!("exponent on unknown vertex #{v}"));
                }
                if v == v1 || v == v2 {
                    if k != 0 {
                        return Err(format!("designated endpoint {} loaded", g.name(v)));
                    }
                } else if boundary.contains(&v) {
                    if k + cert.matching.degree(v) > 2 {
                        return Err(format!("boundary vertex {} above its cap", g.name(v)));
                    }
                } else {
                    let cap = if heads.contains(&v) { 4 } else { 3 };
                    if k > cap {
                        return Err(format!("interior vertex {} above its cap", g.name(v)));
                    }
                }
            }
            Ok(())
        })(),
    );

    let mut expect = g.edge_count() as i64 - 1;
    if !oriented {
        expect -= cert.matching.len() as i64;
    }
    report.push(
        "exponent-sum",
        if cert.eta.total() as i64 == expect {
            Ok(())
        } else {
            Err(format!(
                "exponents sum to {} instead of {expect}",
                cert.eta.total()
            ))
        },
    );

    let mut removed: BTreeSet<Edge> = BTreeSet::new();
    if let Some(e) = e {
        removed.insert(e);
    }
    if !oriented {
        removed.extend(cert.matching.edge_set());
    }
    let c = coeff_select(&CoefficientQuery::without(
        g,
        removed.iter().copied(),
        sig,
        &cert.eta,
    ));
    report.push(
        "coefficient",
        if c.is_zero() {
            Err("monomial vanishes in the reduced graph".into())
        } else if c != cert.coefficient {
            Err(format!("recomputed {c}, certificate says {}", cert.coefficient))
        } else {
            Ok(())
        },
    );

    report.push(
        "final-shape",
        if cert.eta_final == cert.eta.incremented(v1) {
            Ok(())
        } else {
            Err("final exponents are not the certified ones plus the edge tail".into())
        },
    );

    report.push(
        "final-caps",
        (|| {
            let heads = cert.matching.heads();
            for (v, k) in cert.eta_final.support() {
                let cap = if heads.contains(&v) { 4 } else { 3 };
                if k > cap {
                    return Err(format!("final exponent of {} above {cap}", g.name(v)));
                }
            }
            Ok(())
        })(),
    );

    let kept: BTreeSet<Edge> = if oriented {
        BTreeSet::new()
    } else {
        cert.matching.edge_set()
    };
    let c = coeff_select(&CoefficientQuery::without(g, kept, sig, &cert.eta_final));
    report.push(
        "final-coefficient",
        if c.is_zero() {
            Err("final monomial vanishes".into())
        } else if c.magnitude() != cert.coefficient.magnitude() {
            Err(format!(
                "final coefficient {c} differs in magnitude from {}",
                cert.coefficient
            ))
        } else {
            Ok(())
        },
    );

    if oriented {
        report.push(
            "heads-interior",
            (|| {
                let interior = g.interior_vertices().map_err(|e| e.to_string())?;
                for h in cert.matching.heads() {
                    if !interior.contains(&h) {
                        return Err(format!("head {} lies on the boundary", g.name(h)));
                    }
                }
                Ok(())
            })(),
        );
        report.push(
            "head-count",
            if cert.matching.heads().len() * 2 < g.vertex_count() {
                Ok(())
            } else {
                Err(format!(
                    "{} heads is not below half of {} vertices",
                    cert.matching.heads().len(),
                    g.vertex_count()
                ))
            },
        );
    }

    report
}

/// Finds a coloring from the lists at which the signed graph polynomial of
/// `g` is nonzero, i.e. every edge `uv` gets `c(u) != sign(uv) * c(v)`.
/// Requires each list to exceed the vertex's exponent and the monomial to
/// have a nonzero coefficient; under those preconditions a coloring always
/// exists, so exhaustion is reported as an internal violation.
pub fn cn_assign(
    g: &PlaneGraph,
    sig: &Signature,
    eta: &ExponentVector,
    lists: &ListAssignment,
) -> Result<BTreeMap<VId, i64>, OracleError> {
    for &v in g.verts() {
        let need = eta.get(v) as usize + 1;
        if lists.colors(v).len() < need {
            return Err(OracleError::PreconditionViolated(format!(
                "list of {} has {} colors but needs {need}",
                g.name(v),
                lists.colors(v).len()
            )));
        }
    }
    let c = coeff_select(&CoefficientQuery::full(g, sig, eta));
    if c.is_zero() {
        return Err(OracleError::PreconditionViolated(
            "monomial coefficient is zero".into(),
        ));
    }
    let verts = g.verts();
    let mut chosen: BTreeMap<VId, i64> = BTreeMap::new();
    fn rec(
        g: &PlaneGraph,
        sig: &Signature,
        lists: &ListAssignment,
        verts: &[VId],
        i: usize,
        chosen: &mut BTreeMap<VId, i64>,
    ) -> bool {
        if i == verts.len() {
            return true;
        }
        let v = verts[i];
        'colors: for &color in lists.colors(v) {
            for &u in g.rotation(v) {
                if let Some(&cu) = chosen.get(&u) {
                    if color == sig.sign(edge(u, v)) as i64 * cu {
                        continue 'colors;
                    }
                }
            }
            chosen.insert(v, color);
            if rec(g, sig, lists, verts, i + 1, chosen) {
                return true;
            }
            chosen.remove(&v);
        }
        false
    }
    if rec(g, sig, lists, verts, 0, &mut chosen) {
        Ok(chosen)
    } else {
        Err(OracleError::InternalProofViolation(
            "no coloring found although the coefficient is nonzero".into(),
        ))
    }
}

/// Exhaustive search for a list coloring in which every vertex has at most
/// `d` conflicting neighbors; an edge `uv` conflicts when
/// `c(u) == sign(uv) * c(v)`. Returns `None` when no such coloring exists.
pub fn list_color(
    g: &PlaneGraph,
    sig: &Signature,
    lists: &ListAssignment,
    d: u32,
    max_nodes: usize,
) -> Result<Option<BTreeMap<VId, i64>>, OracleError> {
    let verts = g.verts();
    for &v in verts {
        if lists.colors(v).is_empty() {
            return Err(OracleError::PreconditionViolated(format!(
                "no list for vertex {}",
                g.name(v)
            )));
        }
    }
    struct Search<'a> {
        g: &'a PlaneGraph,
        sig: &'a Signature,
        lists: &'a ListAssignment,
        d: u32,
        nodes: usize,
        max_nodes: usize,
        chosen: BTreeMap<VId, i64>,
        conflicts: BTreeMap<VId, u32>,
    }
    impl Search<'_> {
        fn rec(&mut self, i: usize) -> Result<bool, OracleError> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(OracleError::SearchBudgetExceeded(self.max_nodes));
            }
            let verts = self.g.verts();
            if i == verts.len() {
                return Ok(true);
            }
            let v = verts[i];
            'colors: for &color in self.lists.colors(v) {
                let mut hit: Vec<VId> = Vec::new();
                for &u in self.g.rotation(v) {
                    if let Some(&cu) = self.chosen.get(&u) {
                        if color == self.sig.sign(edge(u, v)) as i64 * cu {
                            if self.conflicts[&u] + 1 > self.d {
                                continue 'colors;
                            }
                            hit.push(u);
                        }
                    }
                }
                if hit.len() as u32 > self.d {
                    continue;
                }
                self.chosen.insert(v, color);
                self.conflicts.insert(v, hit.len() as u32);
                for &u in &hit {
                    *self.conflicts.get_mut(&u).unwrap() += 1;
                }
                if self.rec(i + 1)? {
                    return Ok(true);
                }
                for &u in &hit {
                    *self.conflicts.get_mut(&u).unwrap() -= 1;
                }
                self.chosen.remove(&v);
                self.conflicts.remove(&v);
            }
            Ok(false)
        }
    }
    let mut search = Search {
        g,
        sig,
        lists,
        d,
        nodes: 0,
        max_nodes,
        chosen: BTreeMap::new(),
        conflicts: BTreeMap::new(),
    };
    if search.rec(0)? {
        Ok(Some(search.chosen))
    } else {
        Ok(None)
    }
}

/// One half-move of the painting game's principal variation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PaintPly {
    Mark(Vec<VId>),
    Color(Vec<VId>),
}

/// Exact result of the painting game.
#[derive(Clone, Debug)]
pub struct PaintOutcome {
    pub painter_wins: bool,
    /// Alternating mark/color plies of optimal play, at most ten.
    pub variation: Vec<PaintPly>,
    /// Number of distinct positions evaluated.
    pub states: usize,
}

struct PaintSolver {
    verts: Vec<VId>,
    adj: Vec<u16>,
    d: u32,
    memo: HashMap<(u16, [u8; PAINT_GUARD]), bool>,
    replies: HashMap<u16, Vec<u16>>,
}

impl PaintSolver {
    fn tokens_key(t: &[u8; PAINT_GUARD], uncolored: u16) -> [u8; PAINT_GUARD] {
        let mut out = [0u8; PAINT_GUARD];
        for (i, slot) in out.iter_mut().enumerate() {
            if uncolored & (1 << i) != 0 {
                *slot = t[i];
            }
        }
        out
    }

    fn spend(tokens: &[u8; PAINT_GUARD], marked: u16) -> [u8; PAINT_GUARD] {
        let mut spent = *tokens;
        for (i, slot) in spent.iter_mut().enumerate() {
            if marked & (1 << i) != 0 {
                *slot = slot.saturating_sub(1);
            }
        }
        spent
    }

    fn feasible(&self, x: u16) -> bool {
        (0..self.verts.len())
            .filter(|&i| x & (1 << i) != 0)
            .all(|i| (self.adj[i] & x).count_ones() <= self.d)
    }

    /// Feasible subsets of `a` that cannot be grown inside `a`. Smaller
    /// replies are dominated: coloring more vertices never hurts the
    /// painter. Cached per marked set; tokens play no role here.
    fn maximal_replies(&mut self, a: u16) -> Vec<u16> {
        if let Some(cached) = self.replies.get(&a) {
            return cached.clone();
        }
        let mut out = Vec::new();
        for x in 1..=a {
            if x & a != x || !self.feasible(x) {
                continue;
            }
            let grows = (0..self.verts.len()).any(|i| {
                let bit = 1 << i;
                a & bit != 0 && x & bit == 0 && self.feasible(x | bit)
            });
            if !grows {
                out.push(x);
            }
        }
        self.replies.insert(a, out.clone());
        out
    }

    fn lister_wins(&mut self, uncolored: u16, tokens: [u8; PAINT_GUARD]) -> bool {
        for (i, &t) in tokens.iter().enumerate() {
            if uncolored & (1 << i) != 0 && t == 0 {
                return true;
            }
        }
        if uncolored == 0 {
            return false;
        }
        let key = (uncolored, Self::tokens_key(&tokens, uncolored));
        if let Some(&won) = self.memo.get(&key) {
            return won;
        }
        let mut won = false;
        'moves: for a in 1..=uncolored {
            if a & uncolored != a {
                continue;
            }
            let spent = Self::spend(&tokens, a);
            let survives = self.maximal_replies(a).into_iter().any(|x| {
                !self.lister_wins(uncolored & !x, Self::tokens_key(&spent, uncolored & !x))
            });
            if !survives {
                won = true;
                break 'moves;
            }
        }
        self.memo.insert(key, won);
        won
    }
}

/// Plays the defective painting game to the end: the marker spends one
/// token per marked vertex per round, the painter colors a marked subset
/// inducing degree at most `d`, and the marker wins exactly when an
/// uncolored vertex is out of tokens at a round end. Exact minimax over all
/// moves; graphs above [`PAINT_GUARD`] vertices are refused.
pub fn paint_solve(
    g: &PlaneGraph,
    tokens: &ExponentVector,
    d: u32,
) -> Result<PaintOutcome, OracleError> {
    let n = g.vertex_count();
    if n > PAINT_GUARD {
        return Err(OracleError::SearchBudgetExceeded(n));
    }
    let verts: Vec<VId> = g.verts().to_vec();
    let index: HashMap<VId, usize> = verts.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![0u16; verts.len()];
    for &(u, v) in g.edges() {
        adj[index[&u]] |= 1 << index[&v];
        adj[index[&v]] |= 1 << index[&u];
    }
    let mut start = [0u8; PAINT_GUARD];
    for (i, &v) in verts.iter().enumerate() {
        start[i] = tokens.get(v).min(u8::MAX as u32) as u8;
    }
    let full: u16 = if verts.is_empty() {
        0
    } else {
        (1u16 << verts.len()) - 1
    };
    let mut solver = PaintSolver {
        verts,
        adj,
        d,
        memo: HashMap::new(),
        replies: HashMap::new(),
    };
    let lister_wins = solver.lister_wins(full, PaintSolver::tokens_key(&start, full));
    let variation = principal_variation(&mut solver, full, start);
    Ok(PaintOutcome {
        painter_wins: !lister_wins,
        variation,
        states: solver.memo.len(),
    })
}

fn principal_variation(
    solver: &mut PaintSolver,
    mut uncolored: u16,
    mut tokens: [u8; PAINT_GUARD],
) -> Vec<PaintPly> {
    let mut plies = Vec::new();
    let to_verts = |mask: u16, solver: &PaintSolver| -> Vec<VId> {
        (0..solver.verts.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| solver.verts[i])
            .collect()
    };
    while plies.len() < 10 && uncolored != 0 {
        if (0..solver.verts.len()).any(|i| uncolored & (1 << i) != 0 && tokens[i] == 0) {
            break;
        }
        let mut chosen_mark: Option<u16> = None;
        for a in 1..=uncolored {
            if a & uncolored != a {
                continue;
            }
            let spent = PaintSolver::spend(&tokens, a);
            let survives = solver.maximal_replies(a).into_iter().any(|x| {
                !solver.lister_wins(uncolored & !x, PaintSolver::tokens_key(&spent, uncolored & !x))
            });
            if !survives {
                chosen_mark = Some(a);
                break;
            }
            if chosen_mark.is_none() {
                chosen_mark = Some(a);
            }
        }
        let Some(a) = chosen_mark else { break };
        let spent = PaintSolver::spend(&tokens, a);
        plies.push(PaintPly::Mark(to_verts(a, solver)));
        let replies = solver.maximal_replies(a);
        let x = replies
            .iter()
            .copied()
            .find(|&x| {
                !solver.lister_wins(uncolored & !x, PaintSolver::tokens_key(&spent, uncolored & !x))
            })
            .or_else(|| replies.first().copied());
        let Some(x) = x else { break };
        plies.push(PaintPly::Color(to_verts(x, solver)));
        uncolored &= !x;
        tokens = PaintSolver::tokens_key(&spent, uncolored);
    }
    plies
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractor::extract;
    use crate::generators::catalog;
    use crate::polynomial::{at_number, SearchLimits};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cat(name: &str) -> PlaneGraph {
        catalog(name).expect("catalog graph")
    }

    fn uniform_lists(g: &PlaneGraph, colors: &[i64]) -> ListAssignment {
        ListAssignment::new(
            g.verts()
                .iter()
                .map(|&v| (v, colors.to_vec()))
                .collect::<BTreeMap<_, _>>(),
        )
        .unwrap()
    }

    fn uniform_tokens(g: &PlaneGraph, k: u32) -> ExponentVector {
        ExponentVector::from_pairs(g.verts().iter().map(|&v| (v, k)))
    }

    fn random_lists(g: &PlaneGraph, size: usize, seed: u64) -> ListAssignment {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lists = BTreeMap::new();
        for &v in g.verts() {
            let mut colors = BTreeSet::new();
            while colors.len() < size {
                colors.insert(rng.gen_range(0..(2 * size as i64)));
            }
            lists.insert(v, colors.into_iter().collect::<Vec<_>>());
        }
        ListAssignment::new(lists).unwrap()
    }

    #[test]
    fn nice_checks_report_first_violation() {
        let g = cat("c3");
        let m = Matching::empty(false);
        let sig = Signature::all_plus();
        assert_eq!(
            is_nice(&g, (0, 1), &m, &ExponentVector::from_pairs([(2, 2)]), &sig),
            Ok(())
        );
        assert_eq!(
            is_nice(
                &g,
                (0, 1),
                &m,
                &ExponentVector::from_pairs([(1, 1), (2, 1)]),
                &sig
            ),
            Err(NiceIssue::EndpointLoaded(1))
        );
        let k4 = cat("k4");
        assert_eq!(
            is_nice(
                &k4,
                (0, 1),
                &m,
                &ExponentVector::from_pairs([(2, 2), (3, 4)]),
                &sig
            ),
            Err(NiceIssue::InteriorCapExceeded(3))
        );
        assert_eq!(
            is_nice(&g, (0, 1), &m, &ExponentVector::from_pairs([(2, 1)]), &sig),
            Err(NiceIssue::Vanishes)
        );
    }

    #[test]
    fn verify_accepts_extractor_output() {
        let sig = Signature::all_plus();
        for name in ["k2", "c3", "c4", "k4", "w6", "octahedron", "apollonian-2"] {
            let g = cat(name);
            let cert = extract(&g, None, &sig, false).expect("extraction");
            let report = verify_certificate(&g, &sig, &cert);
            assert!(
                report.passed(),
                "{name}: {:?}",
                report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn verify_flags_tampered_coefficient() {
        let g = cat("k4");
        let sig = Signature::all_plus();
        let mut cert = extract(&g, None, &sig, false).unwrap();
        cert.coefficient = -cert.coefficient;
        let report = verify_certificate(&g, &sig, &cert);
        assert!(!report.passed());
        let failed: Vec<_> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        assert_eq!(failed, vec!["coefficient"]);
    }

    #[test]
    fn verify_flags_matching_covering_endpoint() {
        let g = cat("k4");
        let sig = Signature::all_plus();
        let mut cert = extract(&g, None, &sig, false).unwrap();
        cert.matching = Matching::new_unoriented([(0, 2)]);
        let report = verify_certificate(&g, &sig, &cert);
        let failed: Vec<_> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        assert!(failed.contains(&"matching-valid"), "{failed:?}");
    }

    #[test]
    fn verify_accepts_oriented_output() {
        let sig = Signature::all_plus();
        for name in ["octahedron", "apollonian-2", "w6"] {
            let g = cat(name);
            let cert = extract(&g, None, &sig, true).expect("oriented extraction");
            let report = verify_certificate(&g, &sig, &cert);
            assert!(
                report.passed(),
                "{name}: {:?}",
                report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
            assert!(report.checks.iter().any(|c| c.name == "head-count"));
        }
    }

    #[test]
    fn cn_assign_on_k2() {
        let g = cat("k2");
        let lists = ListAssignment::new(BTreeMap::from([(0, vec![5]), (1, vec![5, 7])])).unwrap();
        let phi = cn_assign(
            &g,
            &Signature::all_plus(),
            &ExponentVector::from_pairs([(1, 1)]),
            &lists,
        )
        .unwrap();
        assert_eq!(phi, BTreeMap::from([(0, 5), (1, 7)]));
    }

    #[test]
    fn cn_assign_rejects_vanishing_monomial() {
        let g = cat("c3");
        let lists = uniform_lists(&g, &[1, 2, 3]);
        let err = cn_assign(
            &g,
            &Signature::all_plus(),
            &ExponentVector::from_pairs([(2, 2)]),
            &lists,
        )
        .unwrap_err();
        assert!(matches!(err, OracleError::PreconditionViolated(_)));
    }

    #[test]
    fn cn_assign_rejects_short_lists() {
        let g = cat("k2");
        let lists = ListAssignment::new(BTreeMap::from([(0, vec![5]), (1, vec![5])])).unwrap();
        let err = cn_assign(
            &g,
            &Signature::all_plus(),
            &ExponentVector::from_pairs([(1, 1)]),
            &lists,
        )
        .unwrap_err();
        assert!(matches!(err, OracleError::PreconditionViolated(_)));
    }

    #[test]
    fn cn_assign_colors_c4_from_random_two_lists() {
        let g = cat("c4");
        let sig = Signature::all_plus();
        let eta = ExponentVector::from_pairs([(0, 1), (1, 1), (2, 1), (3, 1)]);
        for seed in 0..16 {
            let lists = random_lists(&g, 2, seed);
            let phi = cn_assign(&g, &sig, &eta, &lists).expect("coloring exists");
            for &(u, v) in g.edges() {
                assert_ne!(phi[&u], phi[&v], "seed {seed}");
            }
        }
    }

    #[test]
    fn list_color_triangle_examples() {
        let g = cat("c3");
        let sig = Signature::all_plus();
        let lists = uniform_lists(&g, &[1, 2]);
        assert_eq!(list_color(&g, &sig, &lists, 0, COLOR_BUDGET).unwrap(), None);
        let phi = list_color(&g, &sig, &lists, 1, COLOR_BUDGET)
            .unwrap()
            .expect("defect one suffices");
        assert_eq!(phi, BTreeMap::from([(0, 1), (1, 1), (2, 2)]));
    }

    #[test]
    fn list_color_respects_signs() {
        let g = cat("k2");
        let sig = Signature::from_negative_edges([(0, 1)]);
        let lists = uniform_lists(&g, &[1, 2]);
        let phi = list_color(&g, &sig, &lists, 0, COLOR_BUDGET)
            .unwrap()
            .expect("signed k2 is easy");
        assert_eq!(phi, BTreeMap::from([(0, 1), (1, 1)]));
        let neg_lists = uniform_lists(&g, &[-1, 1]);
        let phi = list_color(&g, &sig, &neg_lists, 0, COLOR_BUDGET)
            .unwrap()
            .expect("opposite pair works");
        assert_eq!(phi, BTreeMap::from([(0, -1), (1, -1)]));
    }

    #[test]
    fn paint_k2_two_tokens_painter_wins() {
        let g = cat("k2");
        let out = paint_solve(&g, &uniform_tokens(&g, 2), 0).unwrap();
        assert!(out.painter_wins);
        assert!(matches!(out.variation.first(), Some(PaintPly::Mark(_))));
        assert!(out.states > 0);
    }

    #[test]
    fn paint_triangle_two_tokens_lister_wins() {
        let g = cat("c3");
        let out = paint_solve(&g, &uniform_tokens(&g, 2), 0).unwrap();
        assert!(!out.painter_wins);
    }

    #[test]
    fn paint_triangle_one_token_defect_one_lister_wins() {
        let g = cat("c3");
        let out = paint_solve(&g, &uniform_tokens(&g, 1), 1).unwrap();
        assert!(!out.painter_wins);
    }

    #[test]
    fn paint_triangle_three_tokens_painter_wins() {
        let g = cat("c3");
        let out = paint_solve(&g, &uniform_tokens(&g, 3), 0).unwrap();
        assert!(out.painter_wins);
    }

    #[test]
    fn paint_outcome_monotone_in_tokens() {
        for name in ["path3", "c3", "c4"] {
            let g = cat(name);
            let mut prev = false;
            for k in 1..=3 {
                let win = paint_solve(&g, &uniform_tokens(&g, k), 0)
                    .unwrap()
                    .painter_wins;
                assert!(!prev || win, "{name} lost ground from {} tokens", k - 1);
                prev = win;
            }
            let base = uniform_tokens(&g, 2);
            if paint_solve(&g, &base, 0).unwrap().painter_wins {
                for &v in g.verts() {
                    let bumped = base.incremented(v);
                    assert!(paint_solve(&g, &bumped, 0).unwrap().painter_wins);
                }
            }
        }
    }

    #[test]
    fn painter_win_implies_sampled_lists_colorable() {
        for name in ["k2", "c4"] {
            let g = cat(name);
            assert!(paint_solve(&g, &uniform_tokens(&g, 2), 0).unwrap().painter_wins);
            for seed in 0..20 {
                let lists = random_lists(&g, 2, 1000 + seed);
                let phi = list_color(&g, &Signature::all_plus(), &lists, 0, COLOR_BUDGET)
                    .unwrap()
                    .expect("sampled lists must be colorable");
                for &(u, v) in g.edges() {
                    assert_ne!(phi[&u], phi[&v]);
                }
            }
        }
    }

    #[test]
    fn exponent_bound_implies_painter_win() {
        for name in ["k2", "path3", "c3", "c4", "c5", "k4", "w5", "w6"] {
            let g = cat(name);
            let (k, _) = at_number(&g, &Signature::all_plus(), &SearchLimits::default())
                .expect("bound computable");
            let out = paint_solve(&g, &uniform_tokens(&g, k), 0).unwrap();
            assert!(out.painter_wins, "{name} not painter-won at {k} tokens");
        }
    }

    #[test]
    fn verify_is_exact_about_coefficient_values() {
        let g = cat("c3");
        let sig = Signature::all_plus();
        let mut cert = extract(&g, None, &sig, false).unwrap();
        cert.coefficient = BigInt::from(2);
        assert!(!verify_certificate(&g, &sig, &cert).passed());
    }
}
