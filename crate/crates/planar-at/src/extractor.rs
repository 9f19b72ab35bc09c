//! Certificate construction.
//!
//! [`extract`] turns a plane graph and a boundary edge into a
//! [`Certificate`]: a matching, a non-vanishing monomial of the graph
//! polynomial with all exponents at most 3 (4 at oriented heads), and the
//! trace of rewriting steps that produced it. Every step recomputes the
//! claimed coefficient from scratch and fails loudly on any mismatch, so a
//! returned certificate has already survived a full audit.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{ExtractError, GraphError};
use crate::plane_graph::{
    augment_to_simple_boundary, delete_boundary_vertex, edge, find_chords, split_at_chord,
    validate_matching, BoundaryWalk, DirEdge, Edge, Matching, PlaneGraph, VId,
};
use crate::polynomial::{
    coeff_dp, restrict_monomial, same_magnitude, CoefficientQuery, ExponentVector, Signature,
};

/// Graphs at or below this size are first attempted by direct enumeration.
pub const BASE_THRESHOLD: usize = 6;

/// How the coefficient engine treats edge signs and matched pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All edge signs `+1`, matched edges removed from the polynomial.
    Plain,
    /// Arbitrary edge signs, matched edges removed from the polynomial.
    Signed,
    /// Pairs stay in the polynomial; each pair's head may carry exponent 4.
    Oriented,
}

impl Mode {
    pub fn is_oriented(self) -> bool {
        matches!(self, Mode::Oriented)
    }
}

/// One rewriting step, recorded when the step's monomial is in hand, so a
/// trace lists each step after the steps it consumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// Direct enumeration found the monomial on a small graph.
    Base { matching_size: usize },
    /// The graph was split along a boundary chord and the halves multiplied.
    SplitChord { chord: Edge },
    /// The boundary was a triangle; its third vertex was deleted and every
    /// fan vertex raised by one.
    DeleteTriangle { deleted: VId, fan: Vec<VId> },
    /// The last boundary vertex was deleted and one unit of exponent shifted
    /// from the boundary into the fan vertex `target`.
    DeleteShift {
        deleted: VId,
        fan: Vec<VId>,
        target: VId,
        saturated: Option<VId>,
        tested: Vec<(VId, bool)>,
    },
    /// The last boundary vertex was deleted and the whole fan raised by one
    /// after every shift candidate vanished.
    DeleteRaise {
        deleted: VId,
        fan: Vec<VId>,
        tested: Vec<(VId, bool)>,
    },
    /// Corner edges were added to make the outer walk simple.
    Augment { added: Vec<Edge> },
    /// One previously added corner edge was removed again. `lowered` names
    /// the vertex whose exponent was reduced, or is `None` when the edge was
    /// instead dropped from the matching.
    Peel { edge: Edge, lowered: Option<VId> },
    /// The graph was disconnected; components were certified independently
    /// and their monomials multiplied.
    Components { parts: Vec<Vec<VId>> },
}

/// A fully audited extraction result for a graph and boundary edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    /// The designated edge, directed as it appears on the outer walk.
    pub edge: DirEdge,
    pub matching: Matching,
    /// Non-vanishing monomial of the graph minus `edge` (minus the matching
    /// unless oriented), with both `edge` endpoints at exponent 0.
    pub eta: ExponentVector,
    /// `eta` plus one at the tail of `edge`; non-vanishing once `edge` is
    /// restored.
    pub eta_final: ExponentVector,
    /// Coefficient of `eta` in the reduced graph.
    pub coefficient: BigInt,
    pub trace: Vec<TraceStep>,
}

struct Ctx<'a> {
    sig: &'a Signature,
    oriented: bool,
}

/// Matching, monomial and coefficient certified for one (graph, edge) pair.
#[derive(Clone, Debug)]
struct NicePart {
    matching: Matching,
    eta: ExponentVector,
    coeff: BigInt,
}

fn internal(msg: impl Into<String>) -> ExtractError {
    ExtractError::InternalProofViolation(msg.into())
}

fn ensure(cond: bool, msg: &str) -> Result<(), ExtractError> {
    if cond {
        Ok(())
    } else {
        Err(internal(msg))
    }
}

/// Edges excluded from the polynomial for a given part.
fn removed_for(e: DirEdge, m: &Matching, ctx: &Ctx) -> BTreeSet<Edge> {
    let mut removed = BTreeSet::new();
    removed.insert(edge(e.0, e.1));
    if !ctx.oriented {
        removed.extend(m.edge_set());
    }
    removed
}

fn coeff_of(g: &PlaneGraph, e: DirEdge, m: &Matching, ctx: &Ctx, eta: &ExponentVector) -> BigInt {
    coeff_dp(&CoefficientQuery::without(
        g,
        removed_for(e, m, ctx),
        ctx.sig,
        eta,
    ))
}

/// Audits the caps and the exponent sum of a part against its graph.
fn check_part(g: &PlaneGraph, e: DirEdge, part: &NicePart, ctx: &Ctx) -> Result<(), ExtractError> {
    if let Err(issue) = validate_matching(g, edge(e.0, e.1), &part.matching) {
        return Err(internal(format!("matching rejected: {issue:?}")));
    }
    let boundary = g.boundary_vertices()?;
    let heads = part.matching.heads();
    if ctx.oriented {
        for &h in &heads {
            ensure(!boundary.contains(&h), "pair head lies on the boundary")?;
        }
    }
    for (v, k) in part.eta.support() {
        ensure(g.contains_vertex(v), "exponent on a vertex outside the graph")?;
        if v == e.0 || v == e.1 {
            ensure(k == 0, "designated endpoint carries an exponent")?;
        } else if boundary.contains(&v) {
            ensure(
                k + part.matching.degree(v) <= 2,
                "boundary exponent exceeds its cap",
            )?;
        } else if heads.contains(&v) {
            ensure(k <= 4, "head exponent exceeds 4")?;
        } else {
            ensure(k <= 3, "interior exponent exceeds 3")?;
        }
    }
    let mut expect = g.edge_count() as u32 - 1;
    if !ctx.oriented {
        expect -= part.matching.len() as u32;
    }
    ensure(part.eta.total() == expect, "exponent sum is off")?;
    ensure(!part.coeff.is_zero(), "stored coefficient is zero")?;
    Ok(())
}

/// Caps for a shift candidate on the reduced graph: the old last boundary
/// vertex drops to one below its usual cap and at most one fan vertex may
/// sit one above it.
fn check_shift_candidate(
    g: &PlaneGraph,
    e: DirEdge,
    m: &Matching,
    tau: &ExponentVector,
    end: VId,
) -> Result<(), ExtractError> {
    let boundary = g.boundary_vertices()?;
    let heads = m.heads();
    let mut over = 0usize;
    for (v, k) in tau.support() {
        if v == e.0 || v == e.1 {
            ensure(k == 0, "shift candidate touches a designated endpoint")?;
        } else if v == end {
            ensure(k + m.degree(v) <= 1, "shift source above its lowered cap")?;
        } else if boundary.contains(&v) {
            let slack = k + m.degree(v);
            ensure(slack <= 3, "shift candidate far above a boundary cap")?;
            if slack == 3 {
                over += 1;
            }
        } else if heads.contains(&v) {
            ensure(k <= 4, "shift candidate above a head cap")?;
        } else {
            ensure(k <= 3, "shift candidate above an interior cap")?;
        }
    }
    ensure(over <= 1, "two vertices above their boundary caps")?;
    Ok(())
}

/// Directed occurrence of `e` on the outer walk of its component.
fn resolve_direction(g: &PlaneGraph, e: Edge) -> Result<DirEdge, GraphError> {
    if !g.has_edge(e) {
        return Err(GraphError::EdgeAbsent(
            g.name(e.0).into(),
            g.name(e.1).into(),
        ));
    }
    let walk = g.component_walk(e.0)?;
    let steps = walk.directed_steps();
    if steps.contains(&(e.0, e.1)) {
        Ok((e.0, e.1))
    } else if steps.contains(&(e.1, e.0)) {
        Ok((e.1, e.0))
    } else {
        Err(GraphError::EdgeNotOnBoundary(
            g.name(e.0).into(),
            g.name(e.1).into(),
        ))
    }
}

/// Lexicographically smallest boundary edge of the primary component.
pub fn default_edge(g: &PlaneGraph) -> Result<Edge, GraphError> {
    let anchor = g
        .primary_anchor()
        .ok_or_else(|| GraphError::MissingAnchor("<graph>".into()))?;
    let walk = g.component_walk(anchor.0)?;
    walk.boundary_edges()
        .into_iter()
        .next()
        .ok_or(GraphError::BoundaryTooShort)
}

/// Builds a certificate for `g` and the designated edge `e` (defaulting to
/// the smallest boundary edge). The oriented flag switches matched pairs
/// from edge removals to head markings.
pub fn extract(
    g: &PlaneGraph,
    e: Option<Edge>,
    sig: &Signature,
    oriented: bool,
) -> Result<Certificate, ExtractError> {
    let e = match e {
        Some(e) => e,
        None => default_edge(g)?,
    };
    let e_dir = resolve_direction(g, e)?;
    let g = g.with_anchor(e_dir)?;
    let ctx = Ctx { sig, oriented };
    let mut trace = Vec::new();
    let part = extract_nice(&g, e_dir, &ctx, &mut trace)?;
    check_part(&g, e_dir, &part, &ctx)?;
    let (eta_final, _) = finalize_part(&g, e_dir, &ctx, &part)?;
    let mode = if oriented {
        Mode::Oriented
    } else if sig.is_all_plus() {
        Mode::Plain
    } else {
        Mode::Signed
    };
    Ok(Certificate {
        mode,
        edge: e_dir,
        matching: part.matching,
        eta: part.eta,
        eta_final,
        coefficient: part.coeff,
        trace,
    })
}

/// Restores the designated edge: the monomial gains one at the edge's tail
/// and must keep a coefficient of the same magnitude in the larger graph.
fn finalize_part(
    g: &PlaneGraph,
    e: DirEdge,
    ctx: &Ctx,
    part: &NicePart,
) -> Result<(ExponentVector, BigInt), ExtractError> {
    ensure(part.eta.get(e.0) == 0, "tail already carries an exponent")?;
    let eta_final = part.eta.incremented(e.0);
    let removed: BTreeSet<Edge> = if ctx.oriented {
        BTreeSet::new()
    } else {
        part.matching.edge_set()
    };
    let c = coeff_dp(&CoefficientQuery::without(g, removed, ctx.sig, &eta_final));
    ensure(!c.is_zero(), "monomial vanishes once the edge is restored")?;
    ensure(
        same_magnitude(&c, &part.coeff),
        "restoring the edge changed the coefficient magnitude",
    )?;
    let heads = part.matching.heads();
    for (v, k) in eta_final.support() {
        let cap = if heads.contains(&v) { 4 } else { 3 };
        ensure(k <= cap, "final exponent exceeds its cap")?;
    }
    Ok((eta_final, c))
}

/// Certifies a possibly disconnected graph: the designated edge's component
/// is certified as is, every other component is certified for its own
/// smallest boundary edge and finalized, and the monomials multiply.
fn extract_nice(
    g: &PlaneGraph,
    e: DirEdge,
    ctx: &Ctx,
    trace: &mut Vec<TraceStep>,
) -> Result<NicePart, ExtractError> {
    let comps = g.components();
    if comps.len() == 1 {
        return extract_nice_connected(g, e, ctx, trace);
    }
    let e_comp = comps
        .iter()
        .find(|c| c.contains(&e.0))
        .cloned()
        .ok_or_else(|| internal("designated edge lost its component"))?;
    let primary = g.induced(&e_comp, vec![e])?;
    let mut part = extract_nice_connected(&primary, e, ctx, trace)?;
    for comp in comps.iter().filter(|c| **c != e_comp) {
        if comp.iter().all(|&v| g.degree(v) == 0) {
            continue;
        }
        let rep = *comp.iter().next().expect("component is nonempty");
        let anchor = g
            .anchors()
            .iter()
            .copied()
            .find(|&(u, _)| comp.contains(&u))
            .ok_or_else(|| GraphError::MissingAnchor(g.name(rep).into()))?;
        let sub = g.induced(comp, vec![anchor])?;
        let e_c = sub
            .component_walk(anchor.0)?
            .boundary_edges()
            .into_iter()
            .next()
            .ok_or(GraphError::BoundaryTooShort)?;
        let e_c_dir = resolve_direction(&sub, e_c)?;
        let sub_part = extract_nice_connected(&sub, e_c_dir, ctx, trace)?;
        let (eta_c, _) = finalize_part(&sub, e_c_dir, ctx, &sub_part)?;
        let c_c = coeff_dp(&CoefficientQuery::without(
            &sub,
            if ctx.oriented {
                BTreeSet::new()
            } else {
                sub_part.matching.edge_set()
            },
            ctx.sig,
            &eta_c,
        ));
        let matching = part
            .matching
            .union(&sub_part.matching)
            .ok_or_else(|| internal("component matchings overlap"))?;
        part = NicePart {
            matching,
            eta: part.eta.plus(&eta_c),
            coeff: part.coeff * c_c,
        };
    }
    let c = coeff_of(g, e, &part.matching, ctx, &part.eta);
    ensure(c == part.coeff, "component product disagrees with a recount")?;
    check_part(g, e, &part, ctx)?;
    trace.push(TraceStep::Components {
        parts: comps
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect(),
    });
    Ok(part)
}

fn extract_nice_connected(
    g: &PlaneGraph,
    e: DirEdge,
    ctx: &Ctx,
    trace: &mut Vec<TraceStep>,
) -> Result<NicePart, ExtractError> {
    let g = g.with_anchor(e)?;
    if g.vertex_count() <= BASE_THRESHOLD {
        if let Some(part) = base_search(&g, e, ctx, trace)? {
            return Ok(part);
        }
        // Direct enumeration can come up empty in oriented mode when every
        // usable pair lies on the boundary; the structural cases below still
        // apply and strictly shrink the graph.
    }
    ensure(
        g.vertex_count() > 2,
        "enumeration failed on a trivially small graph",
    )?;
    let walk = g.boundary_walk()?;
    if !walk.is_simple_cycle {
        return augment_and_peel(&g, e, ctx, trace);
    }
    let chords = find_chords(&g, &walk)?;
    if let Some(&f) = chords.first() {
        split_and_merge(&g, e, f, ctx, trace)
    } else {
        delete_and_lift(&g, e, &walk, ctx, trace)
    }
}

/// Splits along a boundary chord, certifies both sides, and multiplies the
/// two monomials. The chord's endpoints carry exponent 0 in the off side,
/// which pins the only way the product can form the combined monomial, so
/// the combined coefficient is exactly the product of the two halves'.
fn split_and_merge(
    g: &PlaneGraph,
    e: DirEdge,
    f: Edge,
    ctx: &Ctx,
    trace: &mut Vec<TraceStep>,
) -> Result<NicePart, ExtractError> {
    let (g1, g2) = split_at_chord(g, f, edge(e.0, e.1))?;
    let p1 = extract_nice_connected(&g1, e, ctx, trace)?;
    let f_dir = g2
        .primary_anchor()
        .ok_or_else(|| internal("chord side lost its anchor"))?;
    let p2 = extract_nice_connected(&g2, f_dir, ctx, trace)?;
    let matching = p1
        .matching
        .union(&p2.matching)
        .ok_or_else(|| internal("chord side matchings overlap"))?;
    let eta = p1.eta.plus(&p2.eta);
    let expected = &p1.coeff * &p2.coeff;
    let part = NicePart {
        matching,
        eta,
        coeff: expected,
    };
    let c = coeff_of(g, e, &part.matching, ctx, &part.eta);
    ensure(
        c == part.coeff,
        "chord product disagrees with a direct recount",
    )?;
    check_part(g, e, &part, ctx)?;
    trace.push(TraceStep::SplitChord { chord: f });
    Ok(part)
}

/// Deletes the boundary vertex preceding the designated edge and lifts the
/// smaller graph's monomial back, choosing between the three fan rules.
fn delete_and_lift(
    g: &PlaneGraph,
    e: DirEdge,
    walk: &BoundaryWalk,
    ctx: &Ctx,
    trace: &mut Vec<TraceStep>,
) -> Result<NicePart, ExtractError> {
    let n = walk.len();
    let outcome = delete_boundary_vertex(g, e)?;
    let fan = outcome.fan;
    let sub = outcome.graph;
    let vn = fan.deleted;
    let sub_part = extract_nice(&sub, e, ctx, trace)?;

    if n == 3 {
        let mut eta = sub_part.eta.clone();
        for &u in &fan.interior {
            eta.increment(u);
        }
        ensure(eta.get(vn) == 0, "deleted vertex already carries an exponent")?;
        eta.set(vn, 2);
        let c = coeff_of(g, e, &sub_part.matching, ctx, &eta);
        ensure(!c.is_zero(), "triangle lift vanished")?;
        ensure(
            same_magnitude(&c, &sub_part.coeff),
            "triangle lift changed the coefficient magnitude",
        )?;
        let part = NicePart {
            matching: sub_part.matching,
            eta,
            coeff: c,
        };
        check_part(g, e, &part, ctx)?;
        trace.push(TraceStep::DeleteTriangle {
            deleted: vn,
            fan: fan.interior.clone(),
        });
        return Ok(part);
    }

    let end = fan.end;
    let mut tested: Vec<(VId, bool)> = Vec::new();
    let mut chosen: Option<(VId, ExponentVector, BigInt)> = None;
    if let Some(shifted) = sub_part.eta.decremented(end) {
        for &u in &fan.interior {
            let tau = shifted.incremented(u);
            check_shift_candidate(&sub, e, &sub_part.matching, &tau, end)?;
            let c = coeff_of(&sub, e, &sub_part.matching, ctx, &tau);
            let hit = !c.is_zero();
            tested.push((u, hit));
            if hit {
                chosen = Some((u, tau, c));
                break;
            }
        }
    }

    match chosen {
        Some((target, tau, c_tau)) => {
            let saturated = tau.get(target) == 3;
            if saturated {
                ensure(
                    sub_part.matching.degree(target) == 0,
                    "saturated fan vertex is already matched",
                )?;
            }
            let mut eta = tau.clone();
            eta.increment(end);
            for &u in &fan.interior {
                if u == target && saturated && !ctx.oriented {
                    continue;
                }
                eta.increment(u);
            }
            ensure(eta.get(vn) == 0, "deleted vertex already carries an exponent")?;
            eta.set(vn, 1);
            let mut matching = sub_part.matching.clone();
            if saturated {
                matching = matching.with_pair((target, vn));
            }
            let c = coeff_of(g, e, &matching, ctx, &eta);
            ensure(!c.is_zero(), "shift lift vanished")?;
            ensure(
                same_magnitude(&c, &c_tau),
                "shift lift changed the coefficient magnitude",
            )?;
            let part = NicePart {
                matching,
                eta,
                coeff: c,
            };
            check_part(g, e, &part, ctx)?;
            trace.push(TraceStep::DeleteShift {
                deleted: vn,
                fan: fan.interior.clone(),
                target,
                saturated: saturated.then_some(target),
                tested,
            });
            Ok(part)
        }
        None => {
            let mut eta = sub_part.eta.clone();
            for &u in &fan.interior {
                eta.increment(u);
            }
            ensure(eta.get(vn) == 0, "deleted vertex already carries an exponent")?;
            eta.set(vn, 2);
            let c = coeff_of(g, e, &sub_part.matching, ctx, &eta);
            ensure(!c.is_zero(), "fan raise vanished")?;
            ensure(
                same_magnitude(&c, &sub_part.coeff),
                "fan raise changed the coefficient magnitude",
            )?;
            let part = NicePart {
                matching: sub_part.matching,
                eta,
                coeff: c,
            };
            check_part(g, e, &part, ctx)?;
            trace.push(TraceStep::DeleteRaise {
                deleted: vn,
                fan: fan.interior.clone(),
                tested,
            });
            Ok(part)
        }
    }
}

/// Makes a repeating outer walk simple by adding corner edges, certifies
/// the augmented graph, then removes the added edges one by one. An added
/// edge inside the matching leaves the polynomial unchanged when both are
/// dropped together; any other added edge is removed by lowering one of its
/// endpoints' exponents.
fn augment_and_peel(
    g: &PlaneGraph,
    e: DirEdge,
    ctx: &Ctx,
    trace: &mut Vec<TraceStep>,
) -> Result<NicePart, ExtractError> {
    let (augmented, added) = augment_to_simple_boundary(g, e)?;
    ensure(!added.is_empty(), "augmentation added nothing")?;
    let mut part = extract_nice_connected(&augmented, e, ctx, trace)?;
    trace.push(TraceStep::Augment {
        added: added.clone(),
    });
    let mut cur = augmented;
    for &f in added.iter().rev() {
        if part.matching.edge_set().contains(&f) {
            ensure(
                !ctx.oriented,
                "oriented pair landed on an added corner edge",
            )?;
            part.matching = part.matching.without_edge(f);
            cur = cur.without_edge(f)?;
            trace.push(TraceStep::Peel {
                edge: f,
                lowered: None,
            });
        } else {
            let removed = removed_for(e, &part.matching, ctx);
            let (eta2, c2) = restrict_monomial(&cur, &removed, ctx.sig, &part.eta, f)?;
            let lowered = if eta2.get(f.1) + 1 == part.eta.get(f.1) {
                f.1
            } else {
                f.0
            };
            cur = cur.without_edge(f)?;
            part.eta = eta2;
            part.coeff = c2;
            trace.push(TraceStep::Peel {
                edge: f,
                lowered: Some(lowered),
            });
        }
    }
    ensure(
        cur.edges() == g.edges(),
        "peeling did not return to the original graph",
    )?;
    let c = coeff_of(g, e, &part.matching, ctx, &part.eta);
    ensure(c == part.coeff, "peeled coefficient disagrees with a recount")?;
    ensure(!c.is_zero(), "peeled monomial vanished")?;
    check_part(g, e, &part, ctx)?;
    Ok(part)
}

/// All matchings of `g` avoiding both endpoints of `avoid`, ordered by size
/// then lexicographically.
fn matchings_avoiding(g: &PlaneGraph, avoid: Edge) -> Vec<Vec<Edge>> {
    let cand: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| u != avoid.0 && u != avoid.1 && v != avoid.0 && v != avoid.1)
        .collect();
    fn rec(cand: &[Edge], i: usize, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        out.push(cur.clone());
        for j in i..cand.len() {
            let (u, v) = cand[j];
            if cur.iter().any(|&(a, b)| a == u || a == v || b == u || b == v) {
                continue;
            }
            cur.push(cand[j]);
            rec(cand, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&cand, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All ways to pick a head per pair, heads restricted to interior vertices,
/// in ascending head order. Unoriented mode yields the single normalized
/// matching.
fn orientations_of(
    pairs: &[Edge],
    interior: &BTreeSet<VId>,
    oriented: bool,
) -> Vec<Matching> {
    if !oriented {
        return vec![Matching::new_unoriented(pairs.iter().copied())];
    }
    let mut out = Vec::new();
    let mut cur: Vec<(VId, VId)> = Vec::new();
    fn rec(
        pairs: &[Edge],
        i: usize,
        interior: &BTreeSet<VId>,
        cur: &mut Vec<(VId, VId)>,
        out: &mut Vec<Matching>,
    ) {
        if i == pairs.len() {
            out.push(Matching::new_oriented(cur.iter().copied()));
            return;
        }
        let (u, v) = pairs[i];
        for head in [u, v] {
            if interior.contains(&head) {
                let tail = if head == u { v } else { u };
                cur.push((head, tail));
                rec(pairs, i + 1, interior, cur, out);
                cur.pop();
            }
        }
    }
    rec(pairs, 0, interior, &mut cur, &mut out);
    out
}

/// Exhaustive certificate search on a small graph: matchings in size then
/// lexicographic order, head assignments in ascending order, exponent
/// vectors in ascending lexicographic order; the first non-vanishing
/// monomial wins. Returns `None` when the whole space is empty.
fn base_search(
    g: &PlaneGraph,
    e: DirEdge,
    ctx: &Ctx,
    trace: &mut Vec<TraceStep>,
) -> Result<Option<NicePart>, ExtractError> {
    let boundary = g.boundary_vertices()?;
    let interior: BTreeSet<VId> = g
        .verts()
        .iter()
        .copied()
        .filter(|v| !boundary.contains(v))
        .collect();
    let verts: Vec<VId> = g.verts().to_vec();
    for pairs in matchings_avoiding(g, edge(e.0, e.1)) {
        for matching in orientations_of(&pairs, &interior, ctx.oriented) {
            let removed = removed_for(e, &matching, ctx);
            let working: Vec<Edge> = g
                .edges()
                .iter()
                .copied()
                .filter(|f| !removed.contains(f))
                .collect();
            let total = working.len() as u32;
            let heads = matching.heads();
            let caps: Vec<u32> = verts
                .iter()
                .map(|&v| {
                    let structural = if v == e.0 || v == e.1 {
                        0
                    } else if boundary.contains(&v) {
                        2 - matching.degree(v)
                    } else if heads.contains(&v) {
                        4
                    } else {
                        3
                    };
                    let deg = working.iter().filter(|&&(a, b)| a == v || b == v).count() as u32;
                    structural.min(deg)
                })
                .collect();
            let mut found: Option<(ExponentVector, BigInt)> = None;
            crate::polynomial::for_each_capped_vector(&verts, &caps, total, &mut |eta| {
                let c = coeff_dp(&CoefficientQuery::without(
                    g,
                    removed.iter().copied(),
                    ctx.sig,
                    eta,
                ));
                if c.is_zero() {
                    false
                } else {
                    found = Some((eta.clone(), c));
                    true
                }
            });
            if let Some((eta, coeff)) = found {
                let part = NicePart {
                    matching,
                    eta,
                    coeff,
                };
                check_part(g, e, &part, ctx)?;
                trace.push(TraceStep::Base {
                    matching_size: part.matching.len(),
                });
                return Ok(Some(part));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::catalog;

    fn cat(name: &str) -> PlaneGraph {
        catalog(name).expect("catalog graph")
    }

    fn plain(g: &PlaneGraph, e: Option<Edge>) -> Certificate {
        extract(g, e, &Signature::all_plus(), false).expect("extraction")
    }

    /// Three triangles chained through two cut vertices; the outer walk
    /// repeats both cut vertices.
    fn triangle_chain() -> PlaneGraph {
        PlaneGraph::build(
            vec![
                "v1".into(),
                "v2".into(),
                "v3".into(),
                "v4".into(),
                "v5".into(),
                "v6".into(),
                "v7".into(),
            ],
            vec![
                vec![1, 2],
                vec![2, 0],
                vec![1, 0, 4, 3],
                vec![4, 2],
                vec![3, 2, 6, 5],
                vec![6, 4],
                vec![4, 5],
            ],
            vec![(0, 1)],
        )
        .expect("chain builds")
    }

    fn two_triangles() -> PlaneGraph {
        PlaneGraph::build(
            vec![
                "v1".into(),
                "v2".into(),
                "v3".into(),
                "v4".into(),
                "v5".into(),
                "v6".into(),
            ],
            vec![
                vec![1, 2],
                vec![2, 0],
                vec![0, 1],
                vec![4, 5],
                vec![5, 3],
                vec![3, 4],
            ],
            vec![(0, 1), (3, 4)],
        )
        .expect("two triangles build")
    }

    #[test]
    fn k2_certificate_is_trivial() {
        let cert = plain(&cat("k2"), None);
        assert_eq!(cert.mode, Mode::Plain);
        assert_eq!(cert.edge, (0, 1));
        assert!(cert.matching.is_empty());
        assert!(cert.eta.is_zero());
        assert_eq!(cert.eta_final, ExponentVector::from_pairs([(0, 1)]));
        assert_eq!(cert.coefficient, BigInt::from(1));
        assert_eq!(cert.trace, vec![TraceStep::Base { matching_size: 0 }]);
    }

    #[test]
    fn triangle_certificate_frozen() {
        let cert = plain(&cat("c3"), Some((0, 1)));
        assert!(cert.matching.is_empty());
        assert_eq!(cert.eta, ExponentVector::from_pairs([(2, 2)]));
        assert_eq!(cert.coefficient, BigInt::from(1));
        assert_eq!(cert.eta_final, ExponentVector::from_pairs([(0, 1), (2, 2)]));
    }

    #[test]
    fn k4_certificate_frozen() {
        let cert = plain(&cat("k4"), Some((0, 1)));
        assert!(cert.matching.is_empty());
        assert_eq!(cert.eta, ExponentVector::from_pairs([(2, 2), (3, 3)]));
        assert_eq!(cert.coefficient, BigInt::from(1));
        assert_eq!(
            cert.eta_final,
            ExponentVector::from_pairs([(0, 1), (2, 2), (3, 3)])
        );
    }

    #[test]
    fn c4_certificate_frozen() {
        let cert = plain(&cat("c4"), Some((0, 1)));
        assert_eq!(cert.eta, ExponentVector::from_pairs([(2, 1), (3, 2)]));
        assert_eq!(cert.coefficient, BigInt::from(1));
    }

    #[test]
    fn c5_certificate_frozen() {
        let cert = plain(&cat("c5"), Some((0, 1)));
        assert_eq!(
            cert.eta,
            ExponentVector::from_pairs([(2, 1), (3, 1), (4, 2)])
        );
        assert_eq!(cert.coefficient, BigInt::from(1));
    }

    #[test]
    fn path3_certificate_frozen() {
        let g = cat("path3");
        assert_eq!(default_edge(&g).unwrap(), (0, 1));
        let cert = plain(&g, None);
        assert_eq!(cert.eta, ExponentVector::from_pairs([(2, 1)]));
        assert_eq!(cert.coefficient, BigInt::from(1));
    }

    #[test]
    fn w6_extraction_deletes_a_boundary_vertex() {
        let cert = plain(&cat("w6"), Some((0, 1)));
        assert!(cert.trace.iter().any(|s| matches!(
            s,
            TraceStep::DeleteShift { .. } | TraceStep::DeleteRaise { .. }
        )));
        assert_eq!(plain(&cat("w6"), Some((0, 1))), cert);
    }

    #[test]
    fn octahedron_every_boundary_edge() {
        let g = cat("octahedron");
        for e in g.boundary_walk().unwrap().boundary_edges() {
            let cert = plain(&g, Some(e));
            assert!(cert.eta_final.max_exponent() <= 3);
        }
    }

    #[test]
    fn triangle_chain_augments_and_peels() {
        let g = triangle_chain();
        let walk = g.boundary_walk().unwrap();
        assert_eq!(walk.len(), 9);
        assert!(!walk.is_simple_cycle);
        let cert = plain(&g, Some((0, 1)));
        let added = cert.trace.iter().find_map(|s| match s {
            TraceStep::Augment { added } => Some(added.clone()),
            _ => None,
        });
        assert_eq!(added, Some(vec![(2, 6), (0, 6)]));
        let peels = cert
            .trace
            .iter()
            .filter(|s| matches!(s, TraceStep::Peel { .. }))
            .count();
        assert_eq!(peels, 2);
    }

    #[test]
    fn two_components_multiply() {
        let g = two_triangles();
        let cert = plain(&g, Some((0, 1)));
        assert_eq!(
            cert.eta,
            ExponentVector::from_pairs([(2, 2), (3, 1), (5, 2)])
        );
        assert_eq!(
            cert.trace.last(),
            Some(&TraceStep::Components {
                parts: vec![vec![0, 1, 2], vec![3, 4, 5]]
            })
        );
    }

    #[test]
    fn signed_k4_extracts() {
        let sig = Signature::from_negative_edges([(1, 2), (2, 3)]);
        let cert = extract(&cat("k4"), Some((0, 1)), &sig, false).expect("signed extraction");
        assert_eq!(cert.mode, Mode::Signed);
        assert!(!cert.coefficient.is_zero());
    }

    #[test]
    fn oriented_octahedron_marks_interior_heads() {
        let g = cat("octahedron");
        let cert = extract(&g, Some((0, 1)), &Signature::all_plus(), true).expect("oriented");
        assert_eq!(cert.mode, Mode::Oriented);
        let interior = g.interior_vertices().unwrap();
        for h in cert.matching.heads() {
            assert!(interior.contains(&h));
        }
        assert!(cert.matching.heads().len() * 2 < g.vertex_count());
        assert_eq!(cert.eta_final.total() as usize, g.edge_count());
        assert!(cert.eta_final.max_exponent() <= 4);
    }

    #[test]
    fn apollonian_level_two_every_boundary_edge() {
        let g = cat("apollonian-2");
        for e in g.boundary_walk().unwrap().boundary_edges() {
            plain(&g, Some(e));
        }
    }

    #[test]
    fn icosahedron_extracts() {
        let cert = plain(&cat("icosahedron"), None);
        assert!(cert.eta_final.max_exponent() <= 3);
        assert_eq!(
            cert.eta_final.total() as usize,
            cat("icosahedron").edge_count() - cert.matching.len()
        );
    }

    #[test]
    fn absent_or_interior_edges_are_rejected() {
        let g = cat("octahedron");
        assert!(matches!(
            extract(&g, Some((3, 4)), &Signature::all_plus(), false),
            Err(ExtractError::Graph(GraphError::EdgeNotOnBoundary(_, _)))
        ));
        assert!(matches!(
            extract(&g, Some((0, 3)), &Signature::all_plus(), false),
            Err(ExtractError::Graph(GraphError::EdgeAbsent(_, _)))
        ));
    }
}
