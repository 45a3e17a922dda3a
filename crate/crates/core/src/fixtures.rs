//! Small reference graphs used throughout the test suites and benches,
//! plus a deterministic PRNG and a random-graph corpus generator.
//!
//! Naming convention: `n1`/`n2` are the one-object graphs ℕ and ℕ²,
//! `l2`/`l3` are bouquets of loops (one vertex, several loops of one
//! color), `c2` is the directed 2-cycle, `d2` the disjoint union of two
//! copies of ℕ, and `f2` a one-vertex 2-graph whose squares shuffle the
//! edges nontrivially.

use crate::algebra::{Algebra, AlgebraElement};
use crate::degree::MultiDegree;
use crate::kgraph::{BuildMode, EdgeDecl, KGraph, Path, Presentation, SquareDecl};
use crate::ring::{RingSpec, RingValue};

fn edge(id: &str, color: usize, range: &str, source: &str) -> EdgeDecl {
    EdgeDecl {
        id: id.to_string(),
        color,
        range: range.to_string(),
        source: source.to_string(),
    }
}

fn square(g: &str, h: &str, h2: &str, g2: &str) -> SquareDecl {
    SquareDecl {
        first: (g.to_string(), h.to_string()),
        second: (h2.to_string(), g2.to_string()),
    }
}

/// One vertex, one loop: the 1-graph ℕ.
pub fn n1() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["star".to_string()],
        edges: vec![edge("f", 1, "star", "star")],
        squares: vec![],
    }
}

/// One vertex, two commuting loops of different colors: the 2-graph ℕ².
pub fn n2() -> Presentation {
    Presentation {
        k: 2,
        vertices: vec!["star".to_string()],
        edges: vec![edge("e", 1, "star", "star"), edge("f", 2, "star", "star")],
        squares: vec![square("e", "f", "f", "e")],
    }
}

/// One vertex, two loops of one color (the graph of the Leavitt algebra L_2).
pub fn l2() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["star".to_string()],
        edges: vec![edge("a", 1, "star", "star"), edge("b", 1, "star", "star")],
        squares: vec![],
    }
}

/// One vertex, three loops of one color.
pub fn l3() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["star".to_string()],
        edges: vec![
            edge("a", 1, "star", "star"),
            edge("b", 1, "star", "star"),
            edge("c", 1, "star", "star"),
        ],
        squares: vec![],
    }
}

/// Two vertices on a directed 2-cycle.
pub fn c2() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["u".to_string(), "v".to_string()],
        edges: vec![edge("e", 1, "u", "v"), edge("f", 1, "v", "u")],
        squares: vec![],
    }
}

/// Disjoint union of two copies of ℕ.
pub fn d2() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["star1".to_string(), "star2".to_string()],
        edges: vec![
            edge("f1", 1, "star1", "star1"),
            edge("f2", 1, "star2", "star2"),
        ],
        squares: vec![],
    }
}

/// One vertex, blue loops a,b (color 1) and red loops x,y (color 2), with
/// squares a∘x = y∘a, a∘y = x∘b, b∘x = x∘a, b∘y = y∘b.
pub fn f2() -> Presentation {
    Presentation {
        k: 2,
        vertices: vec!["star".to_string()],
        edges: vec![
            edge("a", 1, "star", "star"),
            edge("b", 1, "star", "star"),
            edge("x", 2, "star", "star"),
            edge("y", 2, "star", "star"),
        ],
        squares: vec![
            square("a", "x", "y", "a"),
            square("a", "y", "x", "b"),
            square("b", "x", "x", "a"),
            square("b", "y", "y", "b"),
        ],
    }
}

/// A 3-graph: one vertex, single loops p (color 1) and q (color 2), three
/// loops t1,t2,t3 (color 3), all color exchanges trivial. This is the
/// product of ℕ² with a three-loop bouquet and satisfies the hexagon
/// condition.
pub fn product_n2_l3() -> Presentation {
    let mut pres = Presentation {
        k: 3,
        vertices: vec!["star".to_string()],
        edges: vec![edge("p", 1, "star", "star"), edge("q", 2, "star", "star")],
        squares: vec![square("p", "q", "q", "p")],
    };
    for t in ["t1", "t2", "t3"] {
        pres.edges.push(edge(t, 3, "star", "star"));
        pres.squares.push(square("p", t, t, "p"));
        pres.squares.push(square("q", t, t, "q"));
    }
    pres
}

/// ℕ together with an unreachable second component: a loop at `w` plus a
/// connector w ← star. Valid, but not cofinal (star never reaches {w}).
pub fn split_tail() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["star".to_string(), "w".to_string()],
        edges: vec![
            edge("f", 1, "star", "star"),
            edge("g", 1, "w", "w"),
            edge("h", 1, "w", "star"),
        ],
        squares: vec![],
    }
}

/// Two vertices, one edge: acyclic, so `v` is a source. Only builds in
/// permissive mode.
pub fn acyclic_a2() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["u".to_string(), "v".to_string()],
        edges: vec![edge("e", 1, "u", "v")],
        squares: vec![],
    }
}

/// A three-vertex path u ← v ← w: acyclic, permissive only.
pub fn acyclic_chain3() -> Presentation {
    Presentation {
        k: 1,
        vertices: vec!["u".to_string(), "v".to_string(), "w".to_string()],
        edges: vec![edge("e1", 1, "u", "v"), edge("e2", 1, "v", "w")],
        squares: vec![],
    }
}

/// Build a fixture strictly, panicking on violations (fixtures are valid).
pub fn build(pres: &Presentation) -> KGraph {
    match KGraph::build(pres, BuildMode::Strict) {
        Ok(g) => g,
        Err(vs) => panic!("fixture failed validation: {vs:?}"),
    }
}

/// Build allowing sources (for the acyclic fixtures).
pub fn build_permissive(pres: &Presentation) -> KGraph {
    match KGraph::build(pres, BuildMode::Permissive) {
        Ok(g) => g,
        Err(vs) => panic!("fixture failed permissive validation: {vs:?}"),
    }
}

/// SplitMix64: a tiny deterministic PRNG for seeded test corpora.
#[derive(Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in 0..n (n > 0). Modulo bias is irrelevant here.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len() as u64) as usize]
    }
}

/// A random nonzero scalar with small numerators and denominators.
pub fn random_scalar(rng: &mut SplitMix64, spec: RingSpec) -> RingValue {
    loop {
        let v = match spec {
            RingSpec::Rationals => {
                let num = rng.below(9) as i64 - 4;
                let den = 1 + rng.below(3) as i64;
                spec.from_ratio(num.into(), den.into())
                    .expect("den nonzero")
            }
            RingSpec::PrimeField(p) => spec.from_integer(rng.below(p.min(9)) as i64),
            RingSpec::Integers => spec.from_integer(rng.below(9) as i64 - 4),
        };
        if !v.is_zero() {
            return v;
        }
    }
}

/// All paths of degree ≤ bound·(1,…,1), sorted.
pub fn path_pool(alg: &Algebra, bound: u32) -> Vec<Path> {
    let g = alg.graph();
    let mut pool = Vec::new();
    for n in MultiDegree::uniform(g.arity(), bound).box_iter() {
        pool.extend(g.all_paths(&n));
    }
    pool.sort();
    pool
}

/// A random element with up to `max_terms` terms drawn from `pool`
/// (α and each β share a source, as the normal form requires).
pub fn random_element(
    alg: &Algebra,
    rng: &mut SplitMix64,
    pool: &[Path],
    max_terms: u64,
) -> AlgebraElement {
    let nterms = 1 + rng.below(max_terms);
    let mut triples = Vec::new();
    for _ in 0..nterms {
        let beta = rng.pick(pool).clone();
        let candidates: Vec<&Path> = pool
            .iter()
            .filter(|a| a.source() == beta.source())
            .collect();
        let alpha = (*rng.pick(&candidates)).clone();
        triples.push((alpha, beta, random_scalar(rng, alg.spec())));
    }
    alg.from_terms(triples)
        .expect("generated terms are well-formed")
}

/// A random element whose ghost degrees all equal `ghost` and whose α come
/// from `pool`.
pub fn random_element_at_ghost(
    alg: &Algebra,
    rng: &mut SplitMix64,
    pool: &[Path],
    ghost: &MultiDegree,
    max_terms: u64,
) -> AlgebraElement {
    let betas = alg.graph().all_paths(ghost);
    let nterms = 1 + rng.below(max_terms);
    let mut triples = Vec::new();
    for _ in 0..nterms {
        let beta = rng.pick(&betas).clone();
        let candidates: Vec<&Path> = pool
            .iter()
            .filter(|a| a.source() == beta.source())
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let alpha = (*rng.pick(&candidates)).clone();
        triples.push((alpha, beta, random_scalar(rng, alg.spec())));
    }
    alg.from_terms(triples)
        .expect("generated terms are well-formed")
}

/// A random one-vertex 2-graph: `nblue` color-1 loops, `nred` color-2
/// loops, and a uniformly random square bijection between the blue-red and
/// red-blue composable pairs. Any such bijection is a valid 2-graph, which
/// makes this a good confluence stressor.
pub fn random_one_vertex_2graph(rng: &mut SplitMix64, nblue: u64, nred: u64) -> Presentation {
    let blues: Vec<String> = (0..nblue).map(|i| format!("a{i}")).collect();
    let reds: Vec<String> = (0..nred).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for b in &blues {
        edges.push(edge(b, 1, "star", "star"));
    }
    for r in &reds {
        edges.push(edge(r, 2, "star", "star"));
    }
    // pair up (blue, red) with a random permutation of (red, blue)
    let mut firsts = Vec::new();
    for b in &blues {
        for r in &reds {
            firsts.push((b.clone(), r.clone()));
        }
    }
    let mut seconds = Vec::new();
    for r in &reds {
        for b in &blues {
            seconds.push((r.clone(), b.clone()));
        }
    }
    // Fisher-Yates on the second sides
    for i in (1..seconds.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        seconds.swap(i, j);
    }
    let squares = firsts
        .into_iter()
        .zip(seconds)
        .map(|((g, h), (h2, g2))| square(&g, &h, &h2, &g2))
        .collect();
    Presentation {
        k: 2,
        vertices: vec!["star".to_string()],
        edges,
        squares,
    }
}

/// A random valid 1-graph with at most `max_vertices` vertices and
/// `max_edges` edges. Every vertex is given an in-edge first, so the result
/// always passes validation (k = 1 needs no squares).
pub fn random_k1_graph(rng: &mut SplitMix64, max_vertices: u64, max_edges: u64) -> Presentation {
    let nv = 1 + rng.below(max_vertices);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let ne = nv + rng.below(max_edges - nv + 1);
    let mut edges = Vec::new();
    for i in 0..ne {
        // the first nv edges give each vertex an in-edge of color 1
        let range = if i < nv { i } else { rng.below(nv) };
        let source = rng.below(nv);
        edges.push(edge(
            &format!("e{i}"),
            1,
            &format!("v{range}"),
            &format!("v{source}"),
        ));
    }
    Presentation {
        k: 1,
        vertices,
        edges,
        squares: vec![],
    }
}
