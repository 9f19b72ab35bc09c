//! Built-in graph families and seeded random instances.
//!
//! The catalog holds small plane graphs with fixed embeddings and vertex
//! orders, chosen so every code path of the certificate construction gets
//! exercised: cycles and paths, wheels, stacked triangulations, and the
//! two Platonic triangulations that fit on a desk. Random generation is
//! fully deterministic in the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::plane_graph::{edge, PlaneGraph, VId};
use crate::polynomial::Signature;

/// One catalog family.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
}

/// The catalog listing; `apollonian-k` stands for any positive level.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry { name: "k2", description: "a single edge" },
        CatalogEntry { name: "path3", description: "path on three vertices" },
        CatalogEntry { name: "c3", description: "triangle" },
        CatalogEntry { name: "c4", description: "4-cycle" },
        CatalogEntry { name: "c5", description: "5-cycle" },
        CatalogEntry { name: "k4", description: "complete graph on four vertices" },
        CatalogEntry { name: "w5", description: "wheel with a 5-cycle rim" },
        CatalogEntry { name: "w6", description: "wheel with a 6-cycle rim" },
        CatalogEntry { name: "octahedron", description: "octahedron" },
        CatalogEntry {
            name: "apollonian-k",
            description: "triangle with k rounds of stacking a vertex in every inner face",
        },
        CatalogEntry { name: "icosahedron", description: "icosahedron" },
    ]
}

/// Builds a catalog graph by name. `apollonian-<k>` takes any k >= 1.
pub fn catalog(name: &str) -> Option<PlaneGraph> {
    let g = match name {
        "k2" => cycle_like(&["v1", "v2"]),
        "path3" => PlaneGraph::build(
            names(&["v1", "v2", "v3"]),
            vec![vec![1], vec![0, 2], vec![1]],
            vec![(0, 1)],
        ),
        "c3" => cycle_like(&["v1", "v2", "v3"]),
        "c4" => cycle_like(&["v1", "v2", "v3", "v4"]),
        "c5" => cycle_like(&["v1", "v2", "v3", "v4", "v5"]),
        "k4" => PlaneGraph::build(
            names(&["v1", "v2", "v3", "v4"]),
            vec![vec![2, 3, 1], vec![0, 3, 2], vec![1, 3, 0], vec![1, 0, 2]],
            vec![(0, 1)],
        ),
        "w5" => wheel(5),
        "w6" => wheel(6),
        "octahedron" => PlaneGraph::build(
            names(&["v1", "v2", "v3", "v4", "v5", "v6"]),
            vec![
                vec![2, 4, 5, 1],
                vec![0, 5, 3, 2],
                vec![1, 3, 4, 0],
                vec![1, 5, 4, 2],
                vec![5, 0, 2, 3],
                vec![1, 0, 4, 3],
            ],
            vec![(0, 1)],
        ),
        "icosahedron" => icosahedron(),
        _ => {
            let k: u32 = name.strip_prefix("apollonian-")?.parse().ok()?;
            if k == 0 {
                return None;
            }
            return Some(apollonian_levels(k));
        }
    };
    Some(g.expect("catalog graphs are valid by construction"))
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Cycle (or single edge) with the outer face left of `(v1, v2)`.
fn cycle_like(vs: &[&str]) -> Result<PlaneGraph, GraphError> {
    let n = vs.len();
    let rot = (0..n)
        .map(|i| {
            if n == 2 {
                vec![(i + 1) % n]
            } else {
                vec![(i + n - 1) % n, (i + 1) % n]
            }
        })
        .collect();
    PlaneGraph::build(names(vs), rot, vec![(0, 1)])
}

/// Wheel: rim `v1..vn` declared first, hub `h` last, hub inside.
fn wheel(rim: usize) -> Result<PlaneGraph, GraphError> {
    let hub = rim;
    let mut rot: Vec<Vec<VId>> = (0..rim)
        .map(|i| vec![(i + rim - 1) % rim, hub, (i + 1) % rim])
        .collect();
    rot.push((0..rim).rev().collect());
    let mut vs = numbered(rim);
    vs.push("h".into());
    PlaneGraph::build(vs, rot, vec![(0, 1)])
}

/// Derives rotation lists from a consistently oriented face list in which
/// every directed edge appears exactly once.
fn from_oriented_faces(
    vertex_names: Vec<String>,
    faces: &[Vec<VId>],
    anchor: (VId, VId),
) -> Result<PlaneGraph, GraphError> {
    let n = vertex_names.len();
    // At each corner u -> v -> w the embedding demands that u follow w in
    // v's rotation.
    let mut follow: Vec<Vec<(VId, VId)>> = vec![Vec::new(); n];
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let u = face[(i + k - 1) % k];
            let v = face[i];
            let w = face[(i + 1) % k];
            follow[v].push((w, u));
        }
    }
    let rot = follow
        .into_iter()
        .map(|pairs| {
            let mut rot = Vec::with_capacity(pairs.len());
            if let Some(&(start, _)) = pairs.first() {
                let mut cur = start;
                loop {
                    rot.push(cur);
                    let (_, next) = pairs
                        .iter()
                        .find(|&&(w, _)| w == cur)
                        .expect("face corners chain around each vertex");
                    cur = *next;
                    if cur == start {
                        break;
                    }
                }
            }
            rot
        })
        .collect();
    PlaneGraph::build(vertex_names, rot, vec![anchor])
}

/// Icosahedron: north pole v1, upper ring v2..v6, lower ring v7..v11,
/// south pole v12; outer face (v1, v2, v3).
fn icosahedron() -> Result<PlaneGraph, GraphError> {
    let f = |a: usize, b: usize, c: usize| vec![a - 1, b - 1, c - 1];
    let mut faces = vec![
        f(1, 3, 2), f(1, 4, 3), f(1, 5, 4), f(1, 6, 5), f(1, 2, 6),
        f(2, 3, 8), f(3, 4, 9), f(4, 5, 10), f(5, 6, 11), f(6, 2, 7),
        f(2, 8, 7), f(3, 9, 8), f(4, 10, 9), f(5, 11, 10), f(6, 7, 11),
        f(7, 8, 12), f(8, 9, 12), f(9, 10, 12), f(10, 11, 12), f(11, 7, 12),
    ];
    // Mirror so that the face left of (v1, v2) is the triangle v1 v2 v3.
    for face in &mut faces {
        face.reverse();
    }
    from_oriented_faces(numbered(12), &faces, (0, 1))
}

/// Stacked triangulation state: the current graph data plus its inner
/// faces as directed triangles.
struct Stacker {
    rot: Vec<Vec<VId>>,
    faces: Vec<(VId, VId, VId)>,
}

impl Stacker {
    fn triangle() -> Self {
        Stacker {
            rot: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            // The one inner face of the base triangle, oriented as traced.
            faces: vec![(1, 0, 2)],
        }
    }

    /// Stacks a new vertex into inner face `i`, splitting it into three.
    fn stack(&mut self, i: usize) -> VId {
        let (a, b, c) = self.faces[i];
        let h = self.rot.len();
        self.rot.push(vec![a, b, c]);
        let insert_after = |rot: &mut Vec<VId>, after: VId, item: VId| {
            let p = rot
                .iter()
                .position(|&w| w == after)
                .expect("face corner neighbour present");
            rot.insert(p + 1, item);
        };
        insert_after(&mut self.rot[a], b, h);
        insert_after(&mut self.rot[b], c, h);
        insert_after(&mut self.rot[c], a, h);
        self.faces[i] = (a, b, h);
        self.faces.push((b, c, h));
        self.faces.push((c, a, h));
        h
    }

    fn build(self) -> Result<PlaneGraph, GraphError> {
        let n = self.rot.len();
        PlaneGraph::build(numbered(n), self.rot, vec![(0, 1)])
    }
}

/// `apollonian-k`: k rounds of stacking into every inner face at once.
pub fn apollonian_levels(k: u32) -> PlaneGraph {
    let mut s = Stacker::triangle();
    for _ in 0..k {
        for i in 0..s.faces.len() {
            s.stack(i);
        }
    }
    s.build().expect("stacked triangulations are valid")
}

/// Random stacked triangulation on `n >= 3` vertices, deterministic in the
/// seed. Has exactly `3n - 6` edges.
pub fn random_apollonian(n: usize, seed: u64) -> Result<PlaneGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::BoundaryTooShort);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Stacker::triangle();
    while s.rot.len() < n {
        let i = rng.gen_range(0..s.faces.len());
        s.stack(i);
    }
    s.build()
}

/// Uniform random signs on the edges of `g`, deterministic in the seed.
pub fn random_signature(g: &PlaneGraph, seed: u64) -> Signature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sig = Signature::all_plus();
    for &(u, v) in g.edges() {
        if rng.gen_range(0..2u32) == 1 {
            sig.set_negative(edge(u, v));
        }
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_name_builds() {
        for entry in catalog_entries() {
            let name = if entry.name == "apollonian-k" {
                "apollonian-2"
            } else {
                entry.name
            };
            let g = catalog(name).expect("builds");
            assert!(g.vertex_count() >= 2, "{name}");
        }
        assert!(catalog("apollonian-0").is_none());
        assert!(catalog("nonesuch").is_none());
    }

    #[test]
    fn wheel_boundary_and_hub() {
        let g = catalog("w5").expect("builds");
        let w = g.boundary_walk().expect("walk");
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(g.interior_vertices().expect("interior").len(), 1);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.name(5), "h");
    }

    #[test]
    fn octahedron_shape() {
        let g = catalog("octahedron").expect("builds");
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.faces().len(), 8);
        assert_eq!(g.boundary_walk().expect("walk").vertices, vec![0, 1, 2]);
        assert!(g.verts().iter().all(|&v| g.degree(v) == 4));
    }

    #[test]
    fn icosahedron_shape() {
        let g = catalog("icosahedron").expect("builds");
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 30);
        assert_eq!(g.faces().len(), 20);
        assert_eq!(g.boundary_walk().expect("walk").vertices, vec![0, 1, 2]);
        assert!(g.verts().iter().all(|&v| g.degree(v) == 5));
    }

    #[test]
    fn first_apollonian_level_is_k4() {
        let g = apollonian_levels(1);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        let k4 = catalog("k4").expect("builds");
        assert_eq!(g.edges(), k4.edges());
    }

    #[test]
    fn apollonian_counts() {
        assert_eq!(apollonian_levels(2).vertex_count(), 7);
        assert_eq!(apollonian_levels(3).vertex_count(), 16);
        let g = apollonian_levels(3);
        assert_eq!(g.edge_count(), 3 * 16 - 6);
        assert_eq!(g.boundary_walk().expect("walk").vertices, vec![0, 1, 2]);
    }

    #[test]
    fn random_apollonian_is_deterministic_and_planar() {
        for n in [3, 5, 8, 12] {
            for seed in [0, 1, 7] {
                let a = random_apollonian(n, seed).expect("builds");
                let b = random_apollonian(n, seed).expect("builds");
                assert_eq!(a, b);
                assert_eq!(a.vertex_count(), n);
                assert_eq!(a.edge_count(), 3 * n - 6);
            }
        }
        let a = random_apollonian(9, 1).expect("builds");
        let b = random_apollonian(9, 2).expect("builds");
        assert_ne!(a, b, "different seeds give different stacks");
    }

    #[test]
    fn random_signature_is_deterministic() {
        let g = catalog("w5").expect("builds");
        let a = random_signature(&g, 11);
        let b = random_signature(&g, 11);
        assert_eq!(a, b);
        let c = random_signature(&g, 12);
        assert_ne!(a, c);
    }
}
