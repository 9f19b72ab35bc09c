//! Text formats: graph files, exponent specs, color-list files, certificate
//! documents and DOT export.
//!
//! Every emitter produces one canonical byte sequence for its input, and the
//! matching parser accepts exactly the constructs documented here, so
//! emit-parse-emit round trips are bit-exact and digests are stable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::FormatError;
use crate::extractor::{Certificate, Mode, TraceStep};
use crate::oracles::ListAssignment;
use crate::plane_graph::{edge, DirEdge, Edge, Matching, PlaneGraph, VId};
use crate::polynomial::{ExponentVector, Signature};

fn malformed(no: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(no, msg.into())
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// Meaningful lines of a text document: comments stripped at the first `#`,
/// blank lines dropped, numbering preserved for error reports.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn resolve(g: &PlaneGraph, no: usize, name: &str) -> Result<VId, FormatError> {
    g.vertex_by_name(name)
        .ok_or_else(|| malformed(no, format!("unknown vertex `{name}`")))
}

/// Parses the graph text format.
///
/// One construct per line: `v <name>` declares a vertex (declaration order is
/// the vertex order), `rot <name>: <name> ...` gives its counterclockwise
/// neighbor cycle, `outer <u> <v>` designates an outer-face anchor (one line
/// per component), and `sign <u> <v> <+1|-1>` sets an edge sign. Comments run
/// from `#` to the end of the line.
pub fn parse_graph(text: &str) -> Result<(PlaneGraph, Signature), FormatError> {
    enum Item<'a> {
        Rot(usize, &'a str, Vec<&'a str>),
        Outer(usize, &'a str, &'a str),
        Sign(usize, &'a str, &'a str, bool),
    }

    let mut names: Vec<String> = Vec::new();
    let mut index: BTreeMap<&str, VId> = BTreeMap::new();
    let mut items: Vec<Item> = Vec::new();

    for (no, line) in content_lines(text) {
        let (kind, body) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let body = body.trim();
        match kind {
            "v" => {
                if body.is_empty() || body.contains(char::is_whitespace) {
                    return Err(malformed(no, "expected `v <name>`"));
                }
                if index.insert(body, names.len()).is_some() {
                    return Err(malformed(no, format!("duplicate vertex `{body}`")));
                }
                names.push(body.to_string());
            }
            "rot" => {
                let (head, tail) = body
                    .split_once(':')
                    .ok_or_else(|| malformed(no, "expected `rot <name>: <name> ...`"))?;
                let head = head.trim();
                if head.is_empty() || head.contains(char::is_whitespace) {
                    return Err(malformed(no, "expected one vertex before `:`"));
                }
                items.push(Item::Rot(no, head, tail.split_whitespace().collect()));
            }
            "outer" => {
                let mut it = body.split_whitespace();
                match (it.next(), it.next(), it.next()) {
                    (Some(u), Some(v), None) => items.push(Item::Outer(no, u, v)),
                    _ => return Err(malformed(no, "expected `outer <u> <v>`")),
                }
            }
            "sign" => {
                let mut it = body.split_whitespace();
                match (it.next(), it.next(), it.next(), it.next()) {
                    (Some(u), Some(v), Some(s), None) => {
                        let negative = match s {
                            "+1" => false,
                            "-1" => true,
                            _ => {
                                return Err(malformed(no, format!("bad sign `{s}`")));
                            }
                        };
                        items.push(Item::Sign(no, u, v, negative));
                    }
                    _ => return Err(malformed(no, "expected `sign <u> <v> <+1|-1>`")),
                }
            }
            other => return Err(malformed(no, format!("unknown directive `{other}`"))),
        }
    }

    let lookup = |no: usize, name: &str| -> Result<VId, FormatError> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| malformed(no, format!("unknown vertex `{name}`")))
    };

    let mut rotations: Vec<Option<Vec<VId>>> = vec![None; names.len()];
    let mut anchors: Vec<DirEdge> = Vec::new();
    let mut signs: Vec<(usize, Edge, bool)> = Vec::new();
    for item in items {
        match item {
            Item::Rot(no, head, nbrs) => {
                let v = lookup(no, head)?;
                let list = nbrs
                    .iter()
                    .map(|w| lookup(no, w))
                    .collect::<Result<Vec<_>, _>>()?;
                if rotations[v].replace(list).is_some() {
                    return Err(malformed(no, format!("duplicate rotation for `{head}`")));
                }
            }
            Item::Outer(no, u, v) => anchors.push((lookup(no, u)?, lookup(no, v)?)),
            Item::Sign(no, u, v, negative) => {
                signs.push((no, edge(lookup(no, u)?, lookup(no, v)?), negative));
            }
        }
    }

    let rotations = rotations.into_iter().map(Option::unwrap_or_default).collect();
    let g = PlaneGraph::build(names, rotations, anchors)?;

    let mut sig = Signature::all_plus();
    let mut seen = BTreeSet::new();
    for (no, e, negative) in signs {
        if !g.has_edge(e) {
            return Err(malformed(
                no,
                format!("sign for absent edge {} {}", g.name(e.0), g.name(e.1)),
            ));
        }
        if !seen.insert(e) {
            return Err(malformed(
                no,
                format!("duplicate sign for edge {} {}", g.name(e.0), g.name(e.1)),
            ));
        }
        if negative {
            sig.set_negative(e);
        }
    }
    Ok((g, sig))
}

/// Canonical graph text: vertices in order, non-empty rotations in order,
/// anchors in order, then `sign ... -1` lines for the negative edges of the
/// graph in edge order. Plus signs are implicit and never written.
pub fn emit_graph(g: &PlaneGraph, sig: &Signature) -> String {
    let mut out = String::new();
    for &v in g.verts() {
        writeln!(out, "v {}", g.name(v)).unwrap();
    }
    for &v in g.verts() {
        let rot = g.rotation(v);
        if rot.is_empty() {
            continue;
        }
        write!(out, "rot {}:", g.name(v)).unwrap();
        for &w in rot {
            write!(out, " {}", g.name(w)).unwrap();
        }
        out.push('\n');
    }
    for &(u, v) in g.anchors() {
        writeln!(out, "outer {} {}", g.name(u), g.name(v)).unwrap();
    }
    for (u, v) in sig.restricted_to(g.edges()).negative_edges() {
        writeln!(out, "sign {} {} -1", g.name(u), g.name(v)).unwrap();
    }
    out
}

/// SHA-256 of the canonical graph text, as lowercase hex.
pub fn graph_digest(g: &PlaneGraph, sig: &Signature) -> String {
    let mut hasher = Sha256::new();
    hasher.update(emit_graph(g, sig).as_bytes());
    let mut out = String::with_capacity(64);
    for byte in hasher.finalize() {
        write!(out, "{byte:02x}").unwrap();
    }
    out
}

/// Parses a `v1=2,v3=1` exponent spec; `-` and the empty string denote the
/// zero vector. Also used for token counts in the painting game.
pub fn parse_exponents(g: &PlaneGraph, spec: &str) -> Result<ExponentVector, FormatError> {
    let spec = spec.trim();
    let mut eta = ExponentVector::new();
    if spec.is_empty() || spec == "-" {
        return Ok(eta);
    }
    let mut seen = BTreeSet::new();
    for part in spec.split(',') {
        let part = part.trim();
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| invalid(format!("expected `vertex=count`, got `{part}`")))?;
        let v = g
            .vertex_by_name(name.trim())
            .ok_or_else(|| invalid(format!("unknown vertex `{}`", name.trim())))?;
        if !seen.insert(v) {
            return Err(invalid(format!("duplicate vertex `{}`", name.trim())));
        }
        let k: u32 = value
            .trim()
            .parse()
            .map_err(|_| invalid(format!("bad count `{}`", value.trim())))?;
        eta.set(v, k);
    }
    Ok(eta)
}

/// Canonical exponent spec: `-` for the zero vector, otherwise nonzero
/// entries in vertex order.
pub fn emit_exponents(g: &PlaneGraph, eta: &ExponentVector) -> String {
    let parts: Vec<String> = eta
        .support()
        .filter(|&(_, k)| k > 0)
        .map(|(v, k)| format!("{}={k}", g.name(v)))
        .collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}

/// Parses a color-list file: one `vertex: c1 c2 ...` line per vertex,
/// `#` comments allowed.
pub fn parse_lists(g: &PlaneGraph, text: &str) -> Result<ListAssignment, FormatError> {
    let mut lists = BTreeMap::new();
    for (no, line) in content_lines(text) {
        let (name, rest) = line
            .split_once(':')
            .ok_or_else(|| malformed(no, "expected `vertex: c1 c2 ...`"))?;
        let v = resolve(g, no, name.trim())?;
        if lists.contains_key(&v) {
            return Err(malformed(no, format!("duplicate list for `{}`", name.trim())));
        }
        let colors = rest
            .split_whitespace()
            .map(|c| {
                c.parse::<i64>()
                    .map_err(|_| malformed(no, format!("bad color `{c}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if colors.is_empty() {
            return Err(malformed(no, format!("no colors for `{}`", name.trim())));
        }
        lists.insert(v, colors);
    }
    ListAssignment::new(lists).map_err(|e| invalid(e.to_string()))
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Plain => "plain",
        Mode::Signed => "signed",
        Mode::Oriented => "oriented",
    }
}

fn emit_pairs(g: &PlaneGraph, pairs: &[(VId, VId)]) -> String {
    if pairs.is_empty() {
        return "-".to_string();
    }
    pairs
        .iter()
        .map(|&(u, v)| format!("{} {}", g.name(u), g.name(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn emit_vertex_list(g: &PlaneGraph, vs: &[VId]) -> String {
    vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(",")
}

fn emit_tested(g: &PlaneGraph, tested: &[(VId, bool)]) -> String {
    if tested.is_empty() {
        return "-".to_string();
    }
    tested
        .iter()
        .map(|&(v, hit)| format!("{}:{}", g.name(v), if hit { "hit" } else { "miss" }))
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_trace_step(g: &PlaneGraph, step: &TraceStep) -> String {
    match step {
        TraceStep::Base { matching_size } => format!("base matching={matching_size}"),
        TraceStep::SplitChord { chord } => {
            format!("split-chord {} {}", g.name(chord.0), g.name(chord.1))
        }
        TraceStep::DeleteTriangle { deleted, fan } => format!(
            "delete-triangle {} fan={}",
            g.name(*deleted),
            emit_vertex_list(g, fan)
        ),
        TraceStep::DeleteShift {
            deleted,
            fan,
            target,
            saturated,
            tested,
        } => format!(
            "delete-shift {} fan={} target={} saturated={} tested={}",
            g.name(*deleted),
            emit_vertex_list(g, fan),
            g.name(*target),
            saturated.map_or("-", |v| g.name(v)),
            emit_tested(g, tested)
        ),
        TraceStep::DeleteRaise {
            deleted,
            fan,
            tested,
        } => format!(
            "delete-raise {} fan={} tested={}",
            g.name(*deleted),
            emit_vertex_list(g, fan),
            emit_tested(g, tested)
        ),
        TraceStep::Augment { added } => format!("augment {}", emit_pairs(g, added)),
        TraceStep::Peel { edge, lowered } => format!(
            "peel {} {} lowered={}",
            g.name(edge.0),
            g.name(edge.1),
            lowered.map_or("-", |v| g.name(v))
        ),
        TraceStep::Components { parts } => format!(
            "components {}",
            parts
                .iter()
                .map(|p| emit_vertex_list(g, p))
                .collect::<Vec<_>>()
                .join(" | ")
        ),
    }
}

/// Canonical certificate document. Line-oriented and sorted wherever the data
/// is a set, so identical certificates serialize to identical bytes.
pub fn emit_certificate(g: &PlaneGraph, sig: &Signature, cert: &Certificate) -> String {
    let mut out = String::new();
    out.push_str("planar-at certificate v1\n");
    writeln!(out, "graph {}", graph_digest(g, sig)).unwrap();
    writeln!(out, "mode {}", mode_name(cert.mode)).unwrap();
    writeln!(out, "edge {} {}", g.name(cert.edge.0), g.name(cert.edge.1)).unwrap();
    writeln!(out, "matching {}", emit_pairs(g, cert.matching.pairs())).unwrap();
    writeln!(out, "eta {}", emit_exponents(g, &cert.eta)).unwrap();
    writeln!(out, "eta-final {}", emit_exponents(g, &cert.eta_final)).unwrap();
    writeln!(out, "coefficient {}", cert.coefficient).unwrap();
    for step in &cert.trace {
        writeln!(out, "trace {}", emit_trace_step(g, step)).unwrap();
    }
    out.push_str("end\n");
    out
}

fn parse_pairs(g: &PlaneGraph, no: usize, text: &str) -> Result<Vec<(VId, VId)>, FormatError> {
    if text == "-" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let mut it = part.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => Ok((resolve(g, no, u)?, resolve(g, no, v)?)),
                _ => Err(malformed(
                    no,
                    format!("expected `u v` pair, got `{}`", part.trim()),
                )),
            }
        })
        .collect()
}

fn parse_vertex_list(g: &PlaneGraph, no: usize, text: &str) -> Result<Vec<VId>, FormatError> {
    text.split(',').map(|p| resolve(g, no, p.trim())).collect()
}

fn parse_tested(g: &PlaneGraph, no: usize, text: &str) -> Result<Vec<(VId, bool)>, FormatError> {
    if text == "-" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let (name, verdict) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| malformed(no, format!("expected `vertex:hit|miss`, got `{part}`")))?;
            let hit = match verdict {
                "hit" => true,
                "miss" => false,
                _ => return Err(malformed(no, format!("bad verdict `{verdict}`"))),
            };
            Ok((resolve(g, no, name)?, hit))
        })
        .collect()
}

fn parse_optional_vertex(
    g: &PlaneGraph,
    no: usize,
    text: &str,
) -> Result<Option<VId>, FormatError> {
    if text == "-" {
        Ok(None)
    } else {
        resolve(g, no, text).map(Some)
    }
}

fn keyed<'a>(no: usize, token: &'a str, key: &str) -> Result<&'a str, FormatError> {
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| malformed(no, format!("expected `{key}=...`, got `{token}`")))
}

fn parse_trace_step(g: &PlaneGraph, no: usize, rest: &str) -> Result<TraceStep, FormatError> {
    let (kind, body) = rest.split_once(' ').unwrap_or((rest, ""));
    let body = body.trim();
    let tokens: Vec<&str> = body.split_whitespace().collect();
    match kind {
        "base" => {
            let [token] = tokens[..] else {
                return Err(malformed(no, "expected `base matching=N`"));
            };
            let matching_size = keyed(no, token, "matching")?
                .parse()
                .map_err(|_| malformed(no, "bad matching size"))?;
            Ok(TraceStep::Base { matching_size })
        }
        "split-chord" => {
            let [u, v] = tokens[..] else {
                return Err(malformed(no, "expected `split-chord <u> <v>`"));
            };
            Ok(TraceStep::SplitChord {
                chord: edge(resolve(g, no, u)?, resolve(g, no, v)?),
            })
        }
        "delete-triangle" => {
            let [deleted, fan] = tokens[..] else {
                return Err(malformed(no, "expected `delete-triangle <v> fan=...`"));
            };
            Ok(TraceStep::DeleteTriangle {
                deleted: resolve(g, no, deleted)?,
                fan: parse_vertex_list(g, no, keyed(no, fan, "fan")?)?,
            })
        }
        "delete-shift" => {
            let [deleted, fan, target, saturated, tested] = tokens[..] else {
                return Err(malformed(
                    no,
                    "expected `delete-shift <v> fan=... target=... saturated=... tested=...`",
                ));
            };
            Ok(TraceStep::DeleteShift {
                deleted: resolve(g, no, deleted)?,
                fan: parse_vertex_list(g, no, keyed(no, fan, "fan")?)?,
                target: resolve(g, no, keyed(no, target, "target")?)?,
                saturated: parse_optional_vertex(g, no, keyed(no, saturated, "saturated")?)?,
                tested: parse_tested(g, no, keyed(no, tested, "tested")?)?,
            })
        }
        "delete-raise" => {
            let [deleted, fan, tested] = tokens[..] else {
                return Err(malformed(
                    no,
                    "expected `delete-raise <v> fan=... tested=...`",
                ));
            };
            Ok(TraceStep::DeleteRaise {
                deleted: resolve(g, no, deleted)?,
                fan: parse_vertex_list(g, no, keyed(no, fan, "fan")?)?,
                tested: parse_tested(g, no, keyed(no, tested, "tested")?)?,
            })
        }
        "augment" => Ok(TraceStep::Augment {
            added: parse_pairs(g, no, body)?
                .into_iter()
                .map(|(u, v)| edge(u, v))
                .collect(),
        }),
        "peel" => {
            let [u, v, lowered] = tokens[..] else {
                return Err(malformed(no, "expected `peel <u> <v> lowered=...`"));
            };
            Ok(TraceStep::Peel {
                edge: edge(resolve(g, no, u)?, resolve(g, no, v)?),
                lowered: parse_optional_vertex(g, no, keyed(no, lowered, "lowered")?)?,
            })
        }
        "components" => {
            let parts = body
                .split('|')
                .map(|part| parse_vertex_list(g, no, part.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TraceStep::Components { parts })
        }
        other => Err(malformed(no, format!("unknown trace step `{other}`"))),
    }
}

/// Parses a certificate document against the graph it certifies. The digest
/// line must match `graph_digest(g, sig)`, which ties the document to both
/// the graph bytes and the signature.
pub fn parse_certificate(
    g: &PlaneGraph,
    sig: &Signature,
    text: &str,
) -> Result<Certificate, FormatError> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| invalid(format!("certificate ends before {what}")))
    };
    let field = |((no, line), key): ((usize, &str), &str)| -> Result<(usize, String), FormatError> {
        let (k, rest) = line.split_once(' ').unwrap_or((line, ""));
        if k != key {
            return Err(malformed(no, format!("expected `{key}`, found `{k}`")));
        }
        Ok((no, rest.trim().to_string()))
    };

    let (no, header) = next("header")?;
    if header != "planar-at certificate v1" {
        return Err(malformed(no, "expected `planar-at certificate v1`"));
    }
    let (_, found) = field((next("graph digest")?, "graph"))?;
    let expected = graph_digest(g, sig);
    if found != expected {
        return Err(FormatError::DigestMismatch { expected, found });
    }
    let (no, mode) = field((next("mode")?, "mode"))?;
    let mode = match mode.as_str() {
        "plain" => Mode::Plain,
        "signed" => Mode::Signed,
        "oriented" => Mode::Oriented,
        other => return Err(malformed(no, format!("unknown mode `{other}`"))),
    };
    let (no, edge_line) = field((next("edge")?, "edge"))?;
    let mut it = edge_line.split_whitespace();
    let edge = match (it.next(), it.next(), it.next()) {
        (Some(u), Some(v), None) => (resolve(g, no, u)?, resolve(g, no, v)?),
        _ => return Err(malformed(no, "expected `edge <u> <v>`")),
    };
    let (no, pairs_line) = field((next("matching")?, "matching"))?;
    let pairs = parse_pairs(g, no, &pairs_line)?;
    let matching = if mode.is_oriented() {
        Matching::new_oriented(pairs)
    } else {
        Matching::new_unoriented(pairs)
    };
    let (no, eta_line) = field((next("eta")?, "eta"))?;
    let eta = parse_exponents(g, &eta_line).map_err(|e| remap(no, e))?;
    let (no, final_line) = field((next("eta-final")?, "eta-final"))?;
    let eta_final = parse_exponents(g, &final_line).map_err(|e| remap(no, e))?;
    let (no, coeff_line) = field((next("coefficient")?, "coefficient"))?;
    let coefficient: BigInt = coeff_line
        .parse()
        .map_err(|_| malformed(no, format!("bad coefficient `{coeff_line}`")))?;

    let mut trace = Vec::new();
    loop {
        let (no, line) = next("`end`")?;
        if line == "end" {
            break;
        }
        let rest = line
            .strip_prefix("trace ")
            .ok_or_else(|| malformed(no, format!("expected `trace ...` or `end`, found `{line}`")))?;
        trace.push(parse_trace_step(g, no, rest.trim())?);
    }
    if let Some((no, line)) = lines.next() {
        return Err(malformed(no, format!("content after `end`: `{line}`")));
    }

    Ok(Certificate {
        mode,
        edge,
        matching,
        eta,
        eta_final,
        coefficient,
        trace,
    })
}

fn remap(no: usize, err: FormatError) -> FormatError {
    match err {
        FormatError::Invalid(msg) => FormatError::Malformed(no, msg),
        other => other,
    }
}

/// DOT document for a graph, optionally overlaid with a certificate: matching
/// edges bold, the designated edge dashed, and vertices labeled with their
/// nonzero final exponents.
pub fn export_dot(g: &PlaneGraph, cert: Option<&Certificate>) -> String {
    let mut out = String::new();
    out.push_str("graph {\n");
    out.push_str("  node [shape=circle];\n");
    for &v in g.verts() {
        let label = match cert {
            Some(c) if c.eta_final.get(v) > 0 => {
                format!("{}:{}", g.name(v), c.eta_final.get(v))
            }
            _ => g.name(v).to_string(),
        };
        writeln!(out, "  \"{}\" [label=\"{label}\"];", g.name(v)).unwrap();
    }
    let matched = cert.map(|c| c.matching.edge_set()).unwrap_or_default();
    let designated = cert.map(|c| edge(c.edge.0, c.edge.1));
    for &e in g.edges() {
        let style = if designated == Some(e) {
            " [style=dashed]"
        } else if matched.contains(&e) {
            " [style=bold]"
        } else {
            ""
        };
        writeln!(out, "  \"{}\" -- \"{}\"{style};", g.name(e.0), g.name(e.1)).unwrap();
    }
    out.push_str("}\n");
    out
}
