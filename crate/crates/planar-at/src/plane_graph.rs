//! Plane graphs as rotation systems with designated outer faces.
//!
//! A [`PlaneGraph`] stores, for every vertex, the counterclockwise cyclic
//! order of its neighbours, plus one directed anchor edge per connected
//! component; the face traced to the left of an anchor is that component's
//! outer face. All structural surgery the certificate construction needs
//! (boundary walks, chord detection, chord splits, boundary-vertex deletion,
//! boundary augmentation) lives here. Operations never mutate: each returns
//! a fresh validated graph.
//!
//! Vertices are handles into the original declaration list, so the linear
//! order on vertices is plain numeric order and survives every subgraph
//! operation unchanged. That keeps exponent vectors from different
//! subgraphs directly addable.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::GraphError;

/// Vertex handle: position in the declaration list of the original graph.
pub type VId = usize;

/// Undirected edge, normalized so the smaller endpoint comes first.
pub type Edge = (VId, VId);

/// Directed edge `(tail, head)`.
pub type DirEdge = (VId, VId);

/// Normalizes an unordered vertex pair into an [`Edge`].
pub fn edge(u: VId, v: VId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An embedded graph together with its outer-face designation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    names: Arc<Vec<String>>,
    verts: Vec<VId>,
    rot: BTreeMap<VId, Vec<VId>>,
    anchors: Vec<DirEdge>,
    edges: Vec<Edge>,
}

/// The closed walk around a component's outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    /// Walk vertices in traversal order, starting at the anchor tail. The
    /// walk is closed; the final step back to the first vertex is implicit.
    pub vertices: Vec<VId>,
    /// True when no vertex repeats in the sequence.
    pub is_simple_cycle: bool,
}

impl BoundaryWalk {
    /// The directed steps of the walk, including the closing step.
    pub fn directed_steps(&self) -> Vec<DirEdge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Undirected edges used by the walk.
    pub fn boundary_edges(&self) -> BTreeSet<Edge> {
        self.directed_steps()
            .into_iter()
            .map(|(u, v)| edge(u, v))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Fan of a deleted boundary vertex: its neighbours in rotation order from
/// the anchor tail round to the preceding boundary vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    /// The deleted vertex.
    pub deleted: VId,
    /// First fan endpoint: the anchor tail.
    pub start: VId,
    /// Neighbours of the deleted vertex strictly between the endpoints.
    /// All of them were interior before the deletion.
    pub interior: Vec<VId>,
    /// Last fan endpoint: the boundary vertex preceding the deleted one.
    pub end: VId,
}

/// Result of deleting the boundary vertex that precedes the anchor.
#[derive(Clone, Debug)]
pub struct DeletionOutcome {
    pub graph: PlaneGraph,
    pub fan: Fan,
}

/// A set of vertex-disjoint edges, possibly with a designated head per pair.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    /// In unoriented form each pair is normalized (smaller endpoint first).
    /// In oriented form each pair is `(head, tail)` and order is meaningful.
    pairs: Vec<(VId, VId)>,
    oriented: bool,
}

/// Reason a matching fails validation against a graph and designated edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingIssue {
    EdgeAbsent(VId, VId),
    SharedVertex(VId),
    CoversDesignatedEndpoint(VId),
}

impl Matching {
    pub fn new_unoriented(pairs: impl IntoIterator<Item = (VId, VId)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(u, v)| edge(u, v)).collect();
        pairs.sort_unstable();
        Matching {
            pairs,
            oriented: false,
        }
    }

    pub fn new_oriented(pairs: impl IntoIterator<Item = (VId, VId)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable_by_key(|&(h, t)| edge(h, t));
        Matching {
            pairs,
            oriented: true,
        }
    }

    pub fn empty(oriented: bool) -> Self {
        Matching {
            pairs: Vec::new(),
            oriented,
        }
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn pairs(&self) -> &[(VId, VId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Underlying undirected edges.
    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.pairs.iter().map(|&(u, v)| edge(u, v)).collect()
    }

    /// Heads of oriented pairs; empty for unoriented matchings.
    pub fn heads(&self) -> BTreeSet<VId> {
        if self.oriented {
            self.pairs.iter().map(|&(h, _)| h).collect()
        } else {
            BTreeSet::new()
        }
    }

    pub fn covers(&self, v: VId) -> bool {
        self.pairs.iter().any(|&(a, b)| a == v || b == v)
    }

    /// 1 if the matching covers `v`, else 0.
    pub fn degree(&self, v: VId) -> u32 {
        u32::from(self.covers(v))
    }

    /// Adds one pair. Panics if orientation kinds disagree; callers only
    /// ever merge matchings produced under the same mode.
    pub fn with_pair(&self, pair: (VId, VId)) -> Self {
        let mut pairs = self.pairs.clone();
        pairs.push(if self.oriented {
            pair
        } else {
            edge(pair.0, pair.1)
        });
        let mut m = Matching {
            pairs,
            oriented: self.oriented,
        };
        m.pairs.sort_unstable_by_key(|&(a, b)| edge(a, b));
        m
    }

    /// Disjoint union; `None` if the two share a covered vertex.
    pub fn union(&self, other: &Matching) -> Option<Self> {
        debug_assert_eq!(self.oriented, other.oriented);
        for &(a, b) in &other.pairs {
            if self.covers(a) || self.covers(b) {
                return None;
            }
        }
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().copied());
        pairs.sort_unstable_by_key(|&(a, b)| edge(a, b));
        Some(Matching {
            pairs,
            oriented: self.oriented,
        })
    }

    /// The matching with one underlying edge removed.
    pub fn without_edge(&self, f: Edge) -> Self {
        Matching {
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|&(a, b)| edge(a, b) != f)
                .collect(),
            oriented: self.oriented,
        }
    }
}

/// Checks that `m` is a matching of `g` avoiding both endpoints of `e`.
pub fn validate_matching(g: &PlaneGraph, e: Edge, m: &Matching) -> Result<(), MatchingIssue> {
    let mut covered = BTreeSet::new();
    for &(a, b) in m.pairs() {
        if !g.has_edge(edge(a, b)) {
            return Err(MatchingIssue::EdgeAbsent(a, b));
        }
        for v in [a, b] {
            if !covered.insert(v) {
                return Err(MatchingIssue::SharedVertex(v));
            }
            if v == e.0 || v == e.1 {
                return Err(MatchingIssue::CoversDesignatedEndpoint(v));
            }
        }
    }
    Ok(())
}

impl PlaneGraph {
    /// Builds and fully validates a plane graph.
    ///
    /// `rotations[i]` is the counterclockwise neighbour list of vertex `i`;
    /// `anchors` holds one directed edge per component that should carry an
    /// outer-face designation (components may be left without one, but most
    /// operations on such a component will fail).
    pub fn build(
        names: Vec<String>,
        rotations: Vec<Vec<VId>>,
        anchors: Vec<DirEdge>,
    ) -> Result<Self, GraphError> {
        if names.len() != rotations.len() {
            return Err(GraphError::InvalidName(
                "rotation list count differs from vertex count".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            // Names appear bare in the text formats, so the delimiters used
            // there cannot occur inside one.
            let reserved = |c: char| c.is_whitespace() || "#,:=|\"\\".contains(c);
            if name.is_empty() || name.chars().any(reserved) {
                return Err(GraphError::InvalidName(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        let names = Arc::new(names);
        let mut rot = BTreeMap::new();
        for (v, list) in rotations.into_iter().enumerate() {
            for &w in &list {
                if w >= n {
                    return Err(GraphError::UndeclaredVertex(
                        names[v].clone(),
                        format!("#{w}"),
                    ));
                }
            }
            rot.insert(v, list);
        }
        Self::from_parts(names, (0..n).collect(), rot, anchors)
    }

    /// Internal constructor: derives the edge list and checks every
    /// invariant (simplicity, rotation symmetry, anchor validity, Euler's
    /// formula per component).
    fn from_parts(
        names: Arc<Vec<String>>,
        verts: Vec<VId>,
        rot: BTreeMap<VId, Vec<VId>>,
        anchors: Vec<DirEdge>,
    ) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (&v, list) in &rot {
            let mut local = BTreeSet::new();
            for &w in list {
                if w == v {
                    return Err(GraphError::LoopEdge(names[v].clone()));
                }
                if !local.insert(w) {
                    return Err(GraphError::ParallelEdge(names[v].clone(), names[w].clone()));
                }
                if !rot.get(&w).is_some_and(|l| l.contains(&v)) {
                    return Err(GraphError::AsymmetricRotation(
                        names[v].clone(),
                        names[w].clone(),
                    ));
                }
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        edges.sort_unstable();
        let g = PlaneGraph {
            names,
            verts,
            rot,
            anchors,
            edges,
        };
        for &(u, v) in &g.anchors {
            if !g.rot.get(&u).is_some_and(|l| l.contains(&v)) {
                return Err(GraphError::InvalidAnchor(g.name(u).into(), g.name(v).into()));
            }
        }
        let comps = g.components();
        for comp in &comps {
            let rep = *comp.iter().next().expect("components are non-empty");
            let owned: Vec<_> = g
                .anchors
                .iter()
                .filter(|&&(u, _)| comp.contains(&u))
                .collect();
            if owned.len() > 1 {
                return Err(GraphError::DuplicateAnchor(g.name(rep).into()));
            }
            let vc = comp.len();
            let ec = g
                .edges
                .iter()
                .filter(|&&(u, _)| comp.contains(&u))
                .count();
            if ec == 0 {
                continue;
            }
            let fc = g
                .faces()
                .iter()
                .filter(|f| comp.contains(&f[0].0))
                .count();
            if vc + fc != ec + 2 {
                return Err(GraphError::EulerViolation(g.name(rep).into(), vc, ec, fc));
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn verts(&self) -> &[VId] {
        &self.verts
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: VId) -> bool {
        self.rot.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: VId) -> usize {
        self.rot.get(&v).map_or(0, Vec::len)
    }

    pub fn rotation(&self, v: VId) -> &[VId] {
        self.rot.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn name(&self, v: VId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &Arc<Vec<String>> {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VId> {
        self.verts.iter().copied().find(|&v| self.names[v] == name)
    }

    pub fn anchors(&self) -> &[DirEdge] {
        &self.anchors
    }

    /// The primary anchor: the one boundary walks of connected graphs use.
    pub fn primary_anchor(&self) -> Option<DirEdge> {
        self.anchors.first().copied()
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VId>> {
        let mut unseen: BTreeSet<VId> = self.verts.iter().copied().collect();
        let mut comps = Vec::new();
        while let Some(&start) = unseen.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            unseen.remove(&start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in self.rotation(v) {
                    if unseen.remove(&w) {
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// The next directed edge of the face that lies to the left of `(u, v)`:
    /// leave `v` along the predecessor of `u` in `v`'s rotation.
    fn face_next(&self, (u, v): DirEdge) -> DirEdge {
        let r = &self.rot[&v];
        let i = r
            .iter()
            .position(|&w| w == u)
            .expect("face_next requires a directed edge of the graph");
        (v, r[(i + r.len() - 1) % r.len()])
    }

    /// The face through `start`, as a cyclic list of directed edges.
    pub fn face_of(&self, start: DirEdge) -> Vec<DirEdge> {
        let mut walk = vec![start];
        let mut cur = self.face_next(start);
        while cur != start {
            walk.push(cur);
            cur = self.face_next(cur);
        }
        walk
    }

    /// All faces, each a cyclic directed-edge list, in first-edge order.
    pub fn faces(&self) -> Vec<Vec<DirEdge>> {
        let mut dir_edges = BTreeSet::new();
        for (&v, list) in &self.rot {
            for &w in list {
                dir_edges.insert((v, w));
            }
        }
        let mut faces = Vec::new();
        while let Some(&start) = dir_edges.iter().next() {
            let face = self.face_of(start);
            for de in &face {
                dir_edges.remove(de);
            }
            faces.push(face);
        }
        faces
    }

    /// Outer boundary walk of a connected graph, starting at the anchor.
    pub fn boundary_walk(&self) -> Result<BoundaryWalk, GraphError> {
        if self.components().len() != 1 {
            return Err(GraphError::Disconnected);
        }
        let anchor = self
            .primary_anchor()
            .ok_or_else(|| GraphError::MissingAnchor(self.any_vertex_name()))?;
        Ok(self.walk_from(anchor))
    }

    fn walk_from(&self, anchor: DirEdge) -> BoundaryWalk {
        let face = self.face_of(anchor);
        let vertices: Vec<VId> = face.iter().map(|&(u, _)| u).collect();
        let distinct: BTreeSet<VId> = vertices.iter().copied().collect();
        BoundaryWalk {
            is_simple_cycle: distinct.len() == vertices.len(),
            vertices,
        }
    }

    fn any_vertex_name(&self) -> String {
        self.verts
            .first()
            .map_or_else(|| "<empty>".into(), |&v| self.names[v].clone())
    }

    /// Outer walk of the component containing `v`, from that component's
    /// anchor.
    pub fn component_walk(&self, v: VId) -> Result<BoundaryWalk, GraphError> {
        if !self.contains_vertex(v) {
            return Err(GraphError::VertexAbsent(format!("#{v}")));
        }
        let comp = self
            .components()
            .into_iter()
            .find(|c| c.contains(&v))
            .expect("present vertex lies in a component");
        let anchor = self
            .anchors
            .iter()
            .copied()
            .find(|&(u, _)| comp.contains(&u))
            .ok_or_else(|| GraphError::MissingAnchor(self.names[v].clone()))?;
        Ok(self.walk_from(anchor))
    }

    /// Vertices on some component's outer face. Isolated vertices count as
    /// boundary; every component with edges must carry an anchor.
    pub fn boundary_vertices(&self) -> Result<BTreeSet<VId>, GraphError> {
        let mut boundary = BTreeSet::new();
        for comp in self.components() {
            let rep = *comp.iter().next().expect("non-empty");
            if comp.iter().all(|&v| self.degree(v) == 0) {
                boundary.extend(comp);
                continue;
            }
            let anchor = self
                .anchors
                .iter()
                .copied()
                .find(|&(u, _)| comp.contains(&u))
                .ok_or_else(|| GraphError::MissingAnchor(self.names[rep].clone()))?;
            boundary.extend(self.walk_from(anchor).vertices);
        }
        Ok(boundary)
    }

    /// Vertices not on any outer face.
    pub fn interior_vertices(&self) -> Result<BTreeSet<VId>, GraphError> {
        let boundary = self.boundary_vertices()?;
        Ok(self
            .verts
            .iter()
            .copied()
            .filter(|v| !boundary.contains(v))
            .collect())
    }

    /// Re-anchors the component containing `d` at `d` and makes it primary.
    /// `d` must lie on that component's current outer face.
    pub fn with_anchor(&self, d: DirEdge) -> Result<Self, GraphError> {
        let comp = self
            .components()
            .into_iter()
            .find(|c| c.contains(&d.0))
            .ok_or_else(|| GraphError::VertexAbsent(format!("#{}", d.0)))?;
        let old = self
            .anchors
            .iter()
            .copied()
            .find(|&(u, _)| comp.contains(&u))
            .ok_or_else(|| GraphError::MissingAnchor(self.name(d.0).into()))?;
        if !self.face_of(old).contains(&d) {
            return Err(GraphError::EdgeNotOnBoundary(
                self.name(d.0).into(),
                self.name(d.1).into(),
            ));
        }
        let mut anchors = vec![d];
        anchors.extend(self.anchors.iter().copied().filter(|&a| a != old));
        Self::from_parts(
            self.names.clone(),
            self.verts.clone(),
            self.rot.clone(),
            anchors,
        )
    }

    /// Induced subgraph on `keep`, with explicitly supplied anchors.
    pub fn induced(
        &self,
        keep: &BTreeSet<VId>,
        anchors: Vec<DirEdge>,
    ) -> Result<Self, GraphError> {
        let verts: Vec<VId> = self.verts.iter().copied().filter(|v| keep.contains(v)).collect();
        let rot: BTreeMap<VId, Vec<VId>> = verts
            .iter()
            .map(|&v| {
                (
                    v,
                    self.rot[&v]
                        .iter()
                        .copied()
                        .filter(|w| keep.contains(w))
                        .collect(),
                )
            })
            .collect();
        Self::from_parts(self.names.clone(), verts, rot, anchors)
    }

    /// The graph with one edge removed; anchors are kept, so the removed
    /// edge must not carry one.
    pub fn without_edge(&self, f: Edge) -> Result<Self, GraphError> {
        if !self.has_edge(f) {
            return Err(GraphError::EdgeAbsent(
                self.name(f.0).into(),
                self.name(f.1).into(),
            ));
        }
        for &(u, v) in &self.anchors {
            if edge(u, v) == f {
                return Err(GraphError::InvalidAnchor(
                    self.name(u).into(),
                    self.name(v).into(),
                ));
            }
        }
        let mut rot = self.rot.clone();
        rot.get_mut(&f.0).expect("endpoint present").retain(|&w| w != f.1);
        rot.get_mut(&f.1).expect("endpoint present").retain(|&w| w != f.0);
        Self::from_parts(
            self.names.clone(),
            self.verts.clone(),
            rot,
            self.anchors.clone(),
        )
    }

    /// Inserts edge `(p, s)` with `s` placed immediately before
    /// `after_at_p` in `p`'s rotation and `p` immediately before
    /// `after_at_s` in `s`'s rotation.
    fn with_edge_inserted(
        &self,
        p: VId,
        s: VId,
        after_at_p: VId,
        after_at_s: VId,
    ) -> Result<Self, GraphError> {
        let mut rot = self.rot.clone();
        let insert = |list: &mut Vec<VId>, item: VId, before: VId| {
            let i = list
                .iter()
                .position(|&w| w == before)
                .expect("insertion marker present");
            list.insert(i, item);
        };
        insert(rot.get_mut(&p).expect("vertex present"), s, after_at_p);
        insert(rot.get_mut(&s).expect("vertex present"), p, after_at_s);
        Self::from_parts(
            self.names.clone(),
            self.verts.clone(),
            rot,
            self.anchors.clone(),
        )
    }
}

/// Chords of the outer cycle: edges joining non-consecutive boundary
/// vertices, in ascending endpoint order.
pub fn find_chords(g: &PlaneGraph, walk: &BoundaryWalk) -> Result<Vec<Edge>, GraphError> {
    if !walk.is_simple_cycle {
        return Err(GraphError::NotSimpleBoundary);
    }
    let n = walk.vertices.len();
    let pos: HashMap<VId, usize> = walk
        .vertices
        .iter()
        .copied()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut chords = Vec::new();
    for &(u, v) in g.edges() {
        let (Some(&i), Some(&j)) = (pos.get(&u), pos.get(&v)) else {
            continue;
        };
        let d = (i + n - j) % n;
        if d != 1 && d != n - 1 {
            chords.push((u, v));
        }
    }
    Ok(chords)
}

/// Splits `g` along chord `f` into the two subgraphs bounded by `f` and the
/// two boundary arcs. The first result contains `e` and keeps `e`'s anchor;
/// the second is anchored at the directed occurrence of `f` whose left face
/// lies on the first subgraph's side, which makes `f` lie on the second
/// subgraph's outer walk starting at that anchor.
pub fn split_at_chord(
    g: &PlaneGraph,
    f: Edge,
    e: Edge,
) -> Result<(PlaneGraph, PlaneGraph), GraphError> {
    let walk = g.boundary_walk()?;
    let chords = find_chords(g, &walk)?;
    if !chords.contains(&f) {
        return Err(GraphError::NotAChord(
            g.name(f.0).into(),
            g.name(f.1).into(),
        ));
    }
    if e == f || !walk.boundary_edges().contains(&e) {
        return Err(GraphError::EdgeOnChordSide(
            g.name(e.0).into(),
            g.name(e.1).into(),
        ));
    }

    let faces = g.faces();
    let mut face_idx: HashMap<DirEdge, usize> = HashMap::new();
    for (i, face) in faces.iter().enumerate() {
        for &de in face {
            face_idx.insert(de, i);
        }
    }
    let anchor = g.primary_anchor().expect("connected graph has an anchor");
    let outer = face_idx[&anchor];

    // Flood inner faces from each side of the chord; two inner faces are
    // adjacent when they share an edge other than the chord itself.
    let mut dual: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for &(a, b) in g.edges() {
        if (a, b) == f {
            continue;
        }
        let l = face_idx[&(a, b)];
        let r = face_idx[&(b, a)];
        dual[l].push(r);
        dual[r].push(l);
    }
    let flood = |start: usize| -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in &dual[i] {
                if j != outer && seen.insert(j) {
                    stack.push(j);
                }
            }
        }
        seen
    };
    let side_a = flood(face_idx[&(f.0, f.1)]);
    let side_b = flood(face_idx[&(f.1, f.0)]);
    debug_assert!(side_a.is_disjoint(&side_b));
    debug_assert_eq!(side_a.len() + side_b.len() + 1, faces.len());

    // e is a boundary edge, so exactly one of its directions borders an
    // inner face; that face's side is the side e lives on.
    let e_inner = if face_idx[&(e.0, e.1)] == outer {
        face_idx[&(e.1, e.0)]
    } else {
        face_idx[&(e.0, e.1)]
    };
    let (e_side, far_side) = if side_a.contains(&e_inner) {
        (side_a, side_b)
    } else {
        (side_b, side_a)
    };

    let vertex_set = |side: &BTreeSet<usize>| -> BTreeSet<VId> {
        side.iter()
            .flat_map(|&i| faces[i].iter().map(|&(u, _)| u))
            .collect()
    };
    let v1 = vertex_set(&e_side);
    let v2 = vertex_set(&far_side);
    debug_assert!(v1.intersection(&v2).copied().collect::<Vec<_>>() == vec![f.0, f.1]
        || v1.intersection(&v2).copied().collect::<Vec<_>>() == vec![f.1, f.0]);

    let g2_anchor = if e_side.contains(&face_idx[&(f.0, f.1)]) {
        (f.0, f.1)
    } else {
        (f.1, f.0)
    };
    let g1 = g.induced(&v1, vec![anchor])?;
    let g2 = g.induced(&v2, vec![g2_anchor])?;
    Ok((g1, g2))
}

/// Deletes the boundary vertex preceding the anchor tail on a chordless
/// simple boundary cycle and reports its fan. The resulting graph can be
/// disconnected; every new component receives an anchor on the merged
/// outer face.
pub fn delete_boundary_vertex(g: &PlaneGraph, e: DirEdge) -> Result<DeletionOutcome, GraphError> {
    let g = g.with_anchor(e)?;
    let walk = g.boundary_walk()?;
    if !walk.is_simple_cycle {
        return Err(GraphError::NotSimpleBoundary);
    }
    let n = walk.len();
    if n < 3 {
        return Err(GraphError::BoundaryTooShort);
    }
    if let Some(&(u, v)) = find_chords(&g, &walk)?.first() {
        return Err(GraphError::HasChord(g.name(u).into(), g.name(v).into()));
    }
    let vn = walk.vertices[n - 1];
    let prev = walk.vertices[n - 2];
    let first = walk.vertices[0];

    // On a chordless simple boundary the rotation at the deleted vertex
    // runs ... first, prev ... counterclockwise; reading it clockwise from
    // `first` sweeps the fan through the interior to `prev`.
    let rot = g.rotation(vn);
    let deg = rot.len();
    let i0 = rot
        .iter()
        .position(|&w| w == first)
        .expect("boundary predecessor adjacent to anchor tail");
    debug_assert_eq!(rot[(i0 + 1) % deg], prev);
    let mut interior = Vec::new();
    let boundary = g.boundary_vertices()?;
    for k in 1..deg {
        let w = rot[(i0 + deg - k) % deg];
        if w == prev {
            break;
        }
        if boundary.contains(&w) {
            return Err(GraphError::HasChord(g.name(vn).into(), g.name(w).into()));
        }
        interior.push(w);
    }
    debug_assert_eq!(interior.len(), deg - 2);

    // Directed edges that keep the merged outer face on their left: those
    // on the old outer face and those on faces incident to the deleted
    // vertex, minus the deleted vertex's own edges.
    let mut hints = BTreeSet::new();
    for face in g.faces() {
        let touches = face.iter().any(|&(u, v)| u == vn || v == vn);
        let is_outer = face.contains(&g.primary_anchor().expect("anchored"));
        if touches || is_outer {
            hints.extend(
                face.iter()
                    .copied()
                    .filter(|&(u, v)| u != vn && v != vn),
            );
        }
    }

    let keep: BTreeSet<VId> = g.verts().iter().copied().filter(|&v| v != vn).collect();
    let skeleton = g.induced(&keep, Vec::new())?;
    let mut anchors = Vec::new();
    for comp in skeleton.components() {
        if comp.contains(&e.0) {
            anchors.insert(0, e);
        } else if comp.iter().any(|&v| skeleton.degree(v) > 0) {
            let hint = hints
                .iter()
                .copied()
                .find(|&(u, _)| comp.contains(&u))
                .expect("every split component borders the merged outer face");
            anchors.push(hint);
        }
    }
    let graph = g.induced(&keep, anchors)?;
    Ok(DeletionOutcome {
        graph,
        fan: Fan {
            deleted: vn,
            start: first,
            interior,
            end: prev,
        },
    })
}

/// Repeatedly cuts corners at repeated boundary vertices until the outer
/// walk is a simple cycle. Returns the augmented graph and the added edges
/// in insertion order. The walk occurrence of `e` at the anchor is never
/// spliced away.
pub fn augment_to_simple_boundary(
    g: &PlaneGraph,
    e: DirEdge,
) -> Result<(PlaneGraph, Vec<Edge>), GraphError> {
    let mut g = g.with_anchor(e)?;
    let mut added = Vec::new();
    let bound = 2 * g.edge_count() + g.vertex_count() + 2;
    for _ in 0..bound {
        let walk = g.boundary_walk()?;
        if walk.is_simple_cycle {
            return Ok((g, added));
        }
        let m = walk.len();
        let mut seen = BTreeSet::new();
        let j = (0..m)
            .find(|&j| !seen.insert(walk.vertices[j]))
            .expect("non-simple walk repeats a vertex");
        let p = walk.vertices[(j + m - 1) % m];
        let c = walk.vertices[j];
        let s = walk.vertices[(j + 1) % m];
        let a = walk.vertices[(j + m - 2) % m];
        debug_assert!(p != s, "corner neighbours of a repeated vertex differ");
        debug_assert!(!g.has_edge(edge(p, s)), "corner cut already present");
        // At p the walk entered from a and left towards c; the new edge to
        // s goes into the outer region between those two. At s the walk
        // continues to b; the new edge from p slots in just before c.
        let b = walk.vertices[(j + 2) % m];
        let _ = b;
        let at_s_before = c;
        g = g.with_edge_inserted(p, s, a, at_s_before)?;
        added.push(edge(p, s));
    }
    Err(GraphError::NotSimpleBoundary)
}
