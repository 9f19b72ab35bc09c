//! End-to-end acceptance suite. Each test is one gate: it exercises a whole
//! pipeline at desk scale against independently recomputed expectations and
//! prints a single PASS line with its measurements.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_at::extractor::{extract, Certificate};
use planar_at::format::emit_certificate;
use planar_at::generators::{catalog, catalog_entries, random_apollonian, random_signature};
use planar_at::oracles::{cn_assign, paint_solve, verify_certificate, ListAssignment, VerifyReport};
use planar_at::plane_graph::{PlaneGraph, VId};
use planar_at::polynomial::{
    at_number, coeff_dp, coeff_select, f_at_verify, CoefficientQuery, ExponentVector,
    SearchLimits, Signature,
};

/// Every catalog graph, with the parametrized family pinned to two depths.
fn instances() -> Vec<(String, PlaneGraph)> {
    catalog_entries()
        .iter()
        .flat_map(|entry| match entry.name {
            "apollonian-k" => vec!["apollonian-2", "apollonian-3"],
            other => vec![other],
        })
        .map(|name| (name.to_string(), catalog(name).unwrap()))
        .collect()
}

fn failures(report: &VerifyReport) -> String {
    report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn sweep_graph(seed: u64) -> PlaneGraph {
    let n = 5 + ((seed - 1) % 6) as usize;
    random_apollonian(n, seed).unwrap()
}

fn minus_matching(g: &PlaneGraph, cert: &Certificate) -> PlaneGraph {
    let mut reduced = g.clone();
    for e in cert.matching.edge_set() {
        reduced = reduced.without_edge(e).unwrap();
    }
    reduced
}

fn uniform_tokens(g: &PlaneGraph, k: u32) -> ExponentVector {
    ExponentVector::from_pairs(g.verts().iter().map(|&v| (v, k)))
}

#[test]
fn a01_every_catalog_boundary_edge_extracts_and_verifies() {
    let started = Instant::now();
    let sig = Signature::all_plus();
    let mut runs = 0;
    for (name, g) in instances() {
        for e in g.boundary_walk().unwrap().boundary_edges() {
            let cert = extract(&g, Some(e), &sig, false).unwrap();
            let report = verify_certificate(&g, &sig, &cert);
            assert!(report.passed(), "{name} edge {e:?}: {}", failures(&report));
            runs += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("PASS: {runs} catalog boundary-edge runs verified in {elapsed:.2?}");
}

#[test]
fn a02_random_triangulation_sweep_verifies() {
    let started = Instant::now();
    let sig = Signature::all_plus();
    for seed in 1..=100u64 {
        let g = sweep_graph(seed);
        let cert = extract(&g, None, &sig, false).unwrap();
        let report = verify_certificate(&g, &sig, &cert);
        assert!(report.passed(), "seed {seed}: {}", failures(&report));
        assert_eq!(
            cert.eta_final.total() as usize,
            g.edge_count() - cert.matching.len(),
            "seed {seed}: exponents must cover the reduced edge set"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!("PASS: 100 random triangulations certified in {elapsed:.2?}");
}

/// Random exponent vector; when `homogeneous`, its total is the edge count
/// so the coefficient has a chance to be nonzero.
fn random_eta(rng: &mut ChaCha8Rng, g: &PlaneGraph, homogeneous: bool) -> ExponentVector {
    let mut eta = ExponentVector::new();
    if homogeneous {
        let verts = g.verts().to_vec();
        let mut left = g.edge_count() as u32;
        while left > 0 {
            let v = verts[rng.gen_range(0..verts.len())];
            if eta.get(v) < g.degree(v) as u32 {
                eta.increment(v);
                left -= 1;
            }
        }
    } else {
        for &v in g.verts() {
            eta.set(v, rng.gen_range(0..=3));
        }
    }
    eta
}

fn query_pool() -> Vec<PlaneGraph> {
    let mut pool: Vec<PlaneGraph> = ["k2", "path3", "c3", "c4", "c5", "k4"]
        .iter()
        .map(|n| catalog(n).unwrap())
        .collect();
    pool.extend((1..=4).map(|s| random_apollonian(6, s).unwrap()));
    pool
}

#[test]
fn a03_both_engines_agree_on_random_queries() {
    let pool = query_pool();
    assert!(pool.iter().all(|g| g.edge_count() <= 12));
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut zero_cases = 0;
    for q in 0..200 {
        let g = &pool[rng.gen_range(0..pool.len())];
        let sig = if rng.gen_bool(0.5) {
            Signature::all_plus()
        } else {
            random_signature(g, rng.gen())
        };
        let homogeneous = rng.gen_bool(0.5);
        let eta = random_eta(&mut rng, g, homogeneous);
        let query = CoefficientQuery::full(g, &sig, &eta);
        let dp = coeff_dp(&query);
        let select = coeff_select(&query);
        assert_eq!(dp, select, "query {q}");
        if eta.total() != g.edge_count() as u32 {
            assert!(dp.is_zero(), "query {q}");
            zero_cases += 1;
        }
    }
    assert!(zero_cases >= 50, "only {zero_cases} inhomogeneous queries");
    println!("PASS: 200 coefficient queries agreed across engines ({zero_cases} of them zero by degree)");
}

#[test]
fn a04_exact_bounds_on_small_graphs() {
    let limits = SearchLimits::default();
    let sig = Signature::all_plus();
    for (name, expected) in [("k2", 2), ("c4", 2), ("c5", 3), ("k4", 4)] {
        let g = catalog(name).unwrap();
        let started = Instant::now();
        let (k, witness) = at_number(&g, &sig, &limits).unwrap();
        let elapsed = started.elapsed();
        assert_eq!(k, expected, "{name}");
        assert!(witness.max_exponent() < k, "{name}");
        assert!(elapsed < Duration::from_secs(1), "{name} took {elapsed:?}");
    }
    println!("PASS: exhaustive exponent bounds match on k2, c4, c5, k4 in under a second each");
}

#[test]
fn a05_inhomogeneous_coefficients_vanish() {
    let pool = query_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for q in 0..100 {
        let g = &pool[rng.gen_range(0..pool.len())];
        let mut eta = random_eta(&mut rng, g, false);
        if eta.total() == g.edge_count() as u32 {
            eta.increment(g.verts()[0]);
        }
        let sig = random_signature(g, rng.gen());
        let query = CoefficientQuery::full(g, &sig, &eta);
        assert!(coeff_dp(&query).is_zero(), "query {q}");
        assert!(coeff_select(&query).is_zero(), "query {q}");
    }
    println!("PASS: 100 degree-mismatched monomials have zero coefficient in both engines");
}

fn random_lists(
    rng: &mut ChaCha8Rng,
    g: &PlaneGraph,
    eta: &ExponentVector,
) -> ListAssignment {
    let mut lists = BTreeMap::new();
    for &v in g.verts() {
        let size = eta.get(v) as usize + 1;
        let mut pool: Vec<i64> = (0..2 * size as i64).collect();
        let mut colors = Vec::with_capacity(size);
        for _ in 0..size {
            colors.push(pool.swap_remove(rng.gen_range(0..pool.len())));
        }
        lists.insert(v, colors);
    }
    ListAssignment::new(lists).unwrap()
}

#[test]
fn a06_certificates_instantiate_to_list_colorings() {
    let sig = Signature::all_plus();
    let mut rounds = 0;
    for (name, g) in instances() {
        let cert = extract(&g, None, &sig, false).unwrap();
        let reduced = minus_matching(&g, &cert);
        let mut rng = ChaCha8Rng::seed_from_u64(606);
        for round in 0..20 {
            let lists = random_lists(&mut rng, &reduced, &cert.eta_final);
            let coloring = cn_assign(&reduced, &sig, &cert.eta_final, &lists)
                .unwrap_or_else(|e| panic!("{name} round {round}: {e}"));
            for &(u, v) in reduced.edges() {
                assert_ne!(coloring[&u], coloring[&v], "{name} round {round}");
            }
            for (&v, c) in &coloring {
                assert!(lists.colors(v).contains(c), "{name} round {round}");
            }
            rounds += 1;
        }
    }
    println!("PASS: {rounds} random list assignments sized by the certificates all colored");
}

#[test]
fn a07_painting_game_ground_truths() {
    let sig = Signature::all_plus();
    let oct = catalog("octahedron").unwrap();
    let cert = extract(&oct, None, &sig, false).unwrap();
    let reduced = minus_matching(&oct, &cert);
    let outcome = paint_solve(&reduced, &uniform_tokens(&reduced, 4), 0).unwrap();
    assert!(outcome.painter_wins, "octahedron minus its matching, 4 tokens");

    let c3 = catalog("c3").unwrap();
    let two = paint_solve(&c3, &uniform_tokens(&c3, 2), 0).unwrap();
    assert!(!two.painter_wins, "triangle, 2 tokens, strict");
    let one = paint_solve(&c3, &uniform_tokens(&c3, 1), 1).unwrap();
    assert!(!one.painter_wins, "triangle, 1 token, one conflict allowed");
    println!("PASS: exact game values match on the reduced octahedron and the triangle");
}

#[test]
fn a08_signed_runs_verify_and_all_plus_collapses_to_plain() {
    let insts = instances();
    for seed in 1..=50u64 {
        let (name, g) = &insts[(seed as usize - 1) % insts.len()];
        let sig = random_signature(g, seed);
        let cert = extract(g, None, &sig, false).unwrap();
        let report = verify_certificate(g, &sig, &cert);
        assert!(report.passed(), "{name} seed {seed}: {}", failures(&report));
    }
    let plus = Signature::all_plus();
    for (name, g) in &insts {
        let first = emit_certificate(g, &plus, &extract(g, None, &plus, false).unwrap());
        let second = emit_certificate(g, &plus, &extract(g, None, &plus, false).unwrap());
        assert_eq!(first, second, "{name}");
        assert!(first.contains("mode plain"), "{name}");
    }
    println!("PASS: 50 random signatures verified; all-plus runs serialize as plain bytes");
}

#[test]
fn a09_oriented_witnesses_bound_heads() {
    let sig = Signature::all_plus();
    for seed in 1..=100u64 {
        let g = sweep_graph(seed);
        let cert = extract(&g, None, &sig, true).unwrap();
        let report = verify_certificate(&g, &sig, &cert);
        assert!(report.passed(), "seed {seed}: {}", failures(&report));
        let heads: BTreeSet<VId> = cert.matching.heads();
        assert!(2 * heads.len() < g.vertex_count(), "seed {seed}");
        let bounds: BTreeMap<VId, u32> = g
            .verts()
            .iter()
            .map(|&v| (v, if heads.contains(&v) { 5 } else { 4 }))
            .collect();
        assert!(f_at_verify(&g, &sig, &bounds, &cert.eta_final), "seed {seed}");
    }
    println!("PASS: 100 oriented runs stay below 5 on heads, 4 elsewhere, with few heads");
}

#[test]
fn a10_reruns_are_byte_identical() {
    let sig = Signature::all_plus();
    let mut compared = 0;
    for (name, g) in instances() {
        for e in g.boundary_walk().unwrap().boundary_edges() {
            let first = emit_certificate(&g, &sig, &extract(&g, Some(e), &sig, false).unwrap());
            let second = emit_certificate(&g, &sig, &extract(&g, Some(e), &sig, false).unwrap());
            assert_eq!(first, second, "{name} {e:?}");
            compared += 1;
        }
    }
    for seed in 1..=100u64 {
        let g = sweep_graph(seed);
        let first = emit_certificate(&g, &sig, &extract(&g, None, &sig, false).unwrap());
        let again = sweep_graph(seed);
        let second = emit_certificate(&again, &sig, &extract(&again, None, &sig, false).unwrap());
        assert_eq!(first, second, "seed {seed}");
        compared += 1;
    }
    println!("PASS: {compared} repeated runs produced byte-identical certificates");
}
