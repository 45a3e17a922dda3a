//! Graph-theoretic deciders for the hypotheses of the structure theorems:
//! closed paths, cofinality, aperiodicity, the commutativity criterion,
//! connected components, and the Laurent polynomial picture of commutative
//! algebras.
//!
//! Conventions: the skeleton digraph has one arc s(e) → r(e) per edge, so a
//! path λ ∈ vΛw is a directed walk from w to v. "v reaches w" below always
//! means vΛw ≠ ∅.

use crate::algebra::{Algebra, AlgebraElement, AlgebraError};
use crate::degree::MultiDegree;
use crate::kgraph::{EdgeId, KGraph, VertexId};
use crate::parallel;
use crate::ring::{RingSpec, RingValue};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalysisError {
    NoSourcesRequired,
    NotCommutativeGraph,
    Algebra(AlgebraError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NoSourcesRequired => {
                write!(f, "operation requires a graph with no sources")
            }
            AnalysisError::NotCommutativeGraph => {
                write!(f, "operation requires a commutative graph")
            }
            AnalysisError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AnalysisError {}

impl From<AlgebraError> for AnalysisError {
    fn from(e: AlgebraError) -> Self {
        AnalysisError::Algebra(e)
    }
}

/// Whether the graph has any closed path of nonzero degree. Every closed
/// path factors into a closed edge walk, so this is cycle detection on the
/// skeleton digraph.
pub fn has_closed_path(g: &KGraph) -> bool {
    let sccs = strongly_connected_components(g);
    sccs.iter().any(|scc| {
        scc.len() > 1
            || g.edges()
                .any(|e| g.edge_source(e) == scc[0] && g.edge_range(e) == scc[0])
    })
}

/// Strongly connected components of the skeleton digraph (arcs s(e) → r(e)),
/// as sorted vertex lists, ordered by smallest member. Iterative Tarjan.
pub fn strongly_connected_components(g: &KGraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        adj[g.edge_source(e).index()].push(g.edge_range(e).index());
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<VertexId>> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // explicit DFS stack: (vertex, next child position)
        let mut dfs: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut child)) = dfs.last_mut() {
            if *child == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == UNSEEN {
                    dfs.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                dfs.pop();
                if let Some(&mut (parent, _)) = dfs.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack nonempty");
                        on_stack[w] = false;
                        comp.push(VertexId::from_index(w));
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    components.push(comp);
                }
            }
        }
    }
    components.sort_by_key(|c| c[0]);
    components
}

/// reach[w] = vertices reachable from w along arcs s(e) → r(e), reflexively.
/// So v ∈ reach[w] iff vΛw ≠ ∅.
fn forward_reach(g: &KGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        adj[g.edge_source(e).index()].push(g.edge_range(e).index());
    }
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let mut queue = vec![start];
        reach[start][start] = true;
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if !reach[start][w] {
                    reach[start][w] = true;
                    queue.push(w);
                }
            }
        }
    }
    reach
}

/// SCCs supporting closed paths with positive degree in every color —
/// exactly the possible tails of infinite paths when the vertex set is
/// finite.
pub fn tail_capable_sccs(g: &KGraph) -> Vec<Vec<VertexId>> {
    let sccs = strongly_connected_components(g);
    let mut scc_of = vec![usize::MAX; g.vertex_count()];
    for (i, scc) in sccs.iter().enumerate() {
        for v in scc {
            scc_of[v.index()] = i;
        }
    }
    sccs.iter()
        .enumerate()
        .filter(|(i, _)| {
            (1..=g.arity()).all(|c| {
                g.edges().any(|e| {
                    g.edge_color(e) == c
                        && scc_of[g.edge_source(e).index()] == *i
                        && scc_of[g.edge_range(e).index()] == *i
                })
            })
        })
        .map(|(_, scc)| scc.clone())
        .collect()
}

/// Cofinality: every vertex receives a path from every tail-capable SCC.
///
/// With finitely many vertices, the cofinally visited vertex set of any
/// infinite path lies inside one tail-capable SCC (its visited vertices are
/// mutually reachable and its degree grows in every color), and conversely
/// every tail-capable SCC carries an infinite path. Requires no sources.
pub fn is_cofinal(g: &KGraph) -> Result<bool, AnalysisError> {
    if !g.has_no_sources() {
        return Err(AnalysisError::NoSourcesRequired);
    }
    let reach = forward_reach(g);
    let tails = tail_capable_sccs(g);
    Ok(g.vertices().all(|v| {
        tails
            .iter()
            .all(|scc| scc.iter().any(|w| reach[w.index()][v.index()]))
    }))
}

/// Independent cross-check for `is_cofinal`: enumerate eventually periodic
/// infinite paths ρ·γ^∞ with |γ|, |ρ| bounded, compute the vertices they
/// visit, and test the cofinality condition directly. Returns false as soon
/// as a counterexample is found. Test-only by design, but deterministic.
pub fn eventually_periodic_cofinality_oracle(g: &KGraph, max_len: u32) -> bool {
    let reach = forward_reach(g);
    let k = g.arity();
    let nv = g.vertex_count();

    // vertices of ρ·γ^∞ = vertices of ρ ∪ vertices of γ^∞, so precompute
    // the connector vertex sets grouped by source
    let mut connector_sets: Vec<BTreeSet<Vec<bool>>> = vec![BTreeSet::new(); nv];
    for (v, set) in connector_sets.iter_mut().enumerate() {
        let mut trivial = vec![false; nv];
        trivial[v] = true;
        set.insert(trivial);
    }
    for m in MultiDegree::uniform(k, max_len).box_iter() {
        if m.is_zero() {
            continue;
        }
        for rho in g.all_paths(&m) {
            connector_sets[rho.source().index()].insert(path_visited_set(g, &rho));
        }
    }

    // candidate periods: closed paths with every coordinate positive;
    // distinct periods sharing a visited set need only one check
    let mut period_sets: BTreeSet<(usize, Vec<bool>)> = BTreeSet::new();
    for coords in MultiDegree::uniform(k, max_len).box_iter() {
        if coords.coords().contains(&0) {
            continue;
        }
        for v in g.vertices() {
            for gamma in g.paths_from(v, &coords) {
                if gamma.is_closed() {
                    period_sets.insert((gamma.range().index(), periodic_visited_set(g, &gamma)));
                }
            }
        }
    }

    let mut checked: BTreeSet<Vec<bool>> = BTreeSet::new();
    for (base, gamma_set) in &period_sets {
        for rho_set in &connector_sets[*base] {
            let visited: Vec<bool> = gamma_set.iter().zip(rho_set).map(|(a, b)| a | b).collect();
            if !checked.insert(visited.clone()) {
                continue;
            }
            let ok = g
                .vertices()
                .all(|v| (0..nv).any(|w| visited[w] && reach[w][v.index()]));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// The vertices {s(p(0,q)) : q ≤ d(p)} a finite path passes through. For
/// k = 1 these are just the word's endpoints.
fn path_visited_set(g: &KGraph, p: &crate::kgraph::Path) -> Vec<bool> {
    let nv = g.vertex_count();
    let mut visited = vec![false; nv];
    if g.arity() == 1 {
        visited[p.range().index()] = true;
        for &e in p.word() {
            visited[g.edge_source(e).index()] = true;
        }
        return visited;
    }
    for q in p.degree().box_iter() {
        let at = g.segment(p, &q, &q).expect("within bounds");
        visited[at.range().index()] = true;
    }
    visited
}

/// The set {x_γ(q) : q ∈ ℕ^k} of vertices visited by γ^∞. For k = 1 this is
/// exactly the vertex set of γ; in general it is read off prefixes of γ^reps
/// out to one period before its end.
fn periodic_visited_set(g: &KGraph, gamma: &crate::kgraph::Path) -> Vec<bool> {
    let nv = g.vertex_count();
    let mut visited = vec![false; nv];
    if g.arity() == 1 {
        visited[gamma.range().index()] = true;
        for &e in gamma.word() {
            visited[g.edge_source(e).index()] = true;
        }
        return visited;
    }
    let reps = g.vertex_count() as u32 + 2;
    let mut power = g.vertex_path(gamma.range());
    for _ in 0..reps {
        power = g.compose(&power, gamma).expect("closed path composes");
    }
    let horizon = power
        .degree()
        .checked_sub(gamma.degree())
        .expect("at least one period");
    for q in horizon.box_iter() {
        let at = g.segment(&power, &q, &q).expect("within bounds");
        visited[at.range().index()] = true;
    }
    visited
}

/// How an aperiodicity verdict was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AperiodicityMode {
    /// k = 1: the entrance criterion decides exactly.
    ExactEntrance,
    /// k ≥ 2: bounded witness search up to the stated bound.
    BoundedProbe(u32),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AperiodicityVerdict {
    AperiodicExact,
    NoPeriodicityUpToBound(u32),
    PeriodicWitness {
        vertex: VertexId,
        m: MultiDegree,
        n: MultiDegree,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AperiodicityReport {
    pub mode: AperiodicityMode,
    pub verdict: AperiodicityVerdict,
}

impl AperiodicityReport {
    /// Some(true)/Some(false) when the mode decides exactly; None when the
    /// bounded probe found no periodicity (which proves nothing).
    pub fn decided_aperiodic(&self) -> Option<bool> {
        match (&self.mode, &self.verdict) {
            (AperiodicityMode::ExactEntrance, AperiodicityVerdict::AperiodicExact) => Some(true),
            (AperiodicityMode::ExactEntrance, AperiodicityVerdict::PeriodicWitness { .. }) => {
                Some(false)
            }
            _ => None,
        }
    }
}

/// Aperiodicity: exact entrance criterion for k = 1, bounded witness search
/// otherwise.
pub fn aperiodicity(g: &KGraph, bound: u32, threads: usize) -> AperiodicityReport {
    if g.arity() == 1 {
        aperiodicity_exact_k1(g)
    } else {
        aperiodicity_bounded(g, bound, threads)
    }
}

/// k = 1 exact decision: aperiodic iff every simple cycle has an entrance
/// (a cycle vertex receiving an edge other than its cycle edge). An
/// entrance-free cycle of length L gives the periodic witness (v, L, 0).
fn aperiodicity_exact_k1(g: &KGraph) -> AperiodicityReport {
    debug_assert_eq!(g.arity(), 1);
    let entrance_free = |cycle: &[EdgeId]| -> bool {
        let edges: BTreeSet<EdgeId> = cycle.iter().copied().collect();
        cycle.iter().all(|&ce| {
            let v = g.edge_range(ce);
            g.in_edges(v, 1).iter().all(|e| edges.contains(e))
        })
    };
    // simple cycles as closed words g1..gL (r(g1) = s(gL) = root), rooted at
    // their smallest vertex; words grow at the source end
    for root in g.vertices() {
        let mut stack: Vec<(Vec<EdgeId>, VertexId)> = vec![(Vec::new(), root)];
        while let Some((word, at)) = stack.pop() {
            for &e in g.in_edges(at, 1) {
                let next = g.edge_source(e);
                if next == root {
                    let mut cycle = word.clone();
                    cycle.push(e);
                    if entrance_free(&cycle) {
                        return AperiodicityReport {
                            mode: AperiodicityMode::ExactEntrance,
                            verdict: AperiodicityVerdict::PeriodicWitness {
                                vertex: root,
                                m: MultiDegree::new(vec![cycle.len() as u32]),
                                n: MultiDegree::new(vec![0]),
                            },
                        };
                    }
                } else if next.index() > root.index()
                    && !word.iter().any(|&prev| g.edge_source(prev) == next)
                {
                    let mut w2 = word.clone();
                    w2.push(e);
                    stack.push((w2, next));
                }
            }
        }
    }
    AperiodicityReport {
        mode: AperiodicityMode::ExactEntrance,
        verdict: AperiodicityVerdict::AperiodicExact,
    }
}

/// Bounded witness search for any arity: for every vertex v and every pair
/// m ≠ n ≤ (B,…,B), look for λ ∈ vΛ with m∨n ≤ d(λ) ≤ m∨n + (B,…,B) whose
/// shifted segments differ. Deterministic for every thread count.
pub fn aperiodicity_bounded(g: &KGraph, bound: u32, threads: usize) -> AperiodicityReport {
    let k = g.arity();
    let box_degrees = MultiDegree::uniform(k, bound).box_iter();
    let mut tasks: Vec<(VertexId, MultiDegree, MultiDegree)> = Vec::new();
    for v in g.vertices() {
        for m in &box_degrees {
            for n in &box_degrees {
                if m != n {
                    tasks.push((v, m.clone(), n.clone()));
                }
            }
        }
    }
    let failures = parallel::map_indexed(threads, &tasks, |(v, m, n)| {
        !has_aperiodicity_witness(g, *v, m, n, bound)
    });
    match failures.iter().position(|&f| f) {
        Some(i) => {
            let (v, m, n) = tasks[i].clone();
            AperiodicityReport {
                mode: AperiodicityMode::BoundedProbe(bound),
                verdict: AperiodicityVerdict::PeriodicWitness { vertex: v, m, n },
            }
        }
        None => AperiodicityReport {
            mode: AperiodicityMode::BoundedProbe(bound),
            verdict: AperiodicityVerdict::NoPeriodicityUpToBound(bound),
        },
    }
}

fn has_aperiodicity_witness(
    g: &KGraph,
    v: VertexId,
    m: &MultiDegree,
    n: &MultiDegree,
    bound: u32,
) -> bool {
    let join = m.join(n);
    for extra in MultiDegree::uniform(g.arity(), bound).box_iter() {
        let d = join.add(&extra);
        for lam in g.paths_from(v, &d) {
            let len = lam.degree().checked_sub(&join).expect("d ≥ m∨n");
            let seg_m = g
                .segment(&lam, m, &m.add(&len))
                .expect("bounds hold by construction");
            let seg_n = g
                .segment(&lam, n, &n.add(&len))
                .expect("bounds hold by construction");
            if seg_m != seg_n {
                return true;
            }
        }
    }
    false
}

/// The commutativity criterion: every edge is a loop and every vertex
/// receives exactly one edge of each color.
pub fn is_commutative_graph(g: &KGraph) -> bool {
    g.edges().all(|e| g.edge_range(e) == g.edge_source(e))
        && g.vertices()
            .all(|v| (1..=g.arity()).all(|c| g.in_edges(v, c).len() == 1))
}

/// Weakly connected components of the skeleton, ordered by smallest vertex.
pub fn components(g: &KGraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in g.edges() {
        let a = find(&mut parent, g.edge_range(e).index());
        let b = find(&mut parent, g.edge_source(e).index());
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        groups
            .entry(root)
            .or_default()
            .push(VertexId::from_index(v));
    }
    groups.into_values().collect()
}

/// A Laurent polynomial in k commuting indeterminates with exponents in ℤ^k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    spec: RingSpec,
    arity: usize,
    coeffs: BTreeMap<Vec<i64>, RingValue>,
}

impl LaurentPoly {
    pub fn zero(spec: RingSpec, arity: usize) -> Self {
        LaurentPoly {
            spec,
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<i64>, RingValue> {
        &self.coeffs
    }

    fn insert(&mut self, expo: Vec<i64>, c: RingValue) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&expo) {
            Some(old) => {
                let sum = old.add(&c).expect("uniform spec");
                if sum.is_zero() {
                    self.coeffs.remove(&expo);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.coeffs.insert(expo, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.spec, self.arity);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let expo: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(expo, c1.mul(c2).expect("uniform spec"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (expo, c) in &self.coeffs {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = expo
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            let c = c.abs();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The explicit isomorphism with a direct sum of Laurent polynomial rings,
/// available exactly for commutative graphs: per component vertex v, the
/// unique color-i loop maps to x_i, its ghost to x_i^{-1}, and p_v to 1.
pub struct LaurentIso {
    graph_token: u64,
    arity: usize,
}

/// Build the isomorphism; errors unless the commutativity criterion holds.
pub fn laurent_iso(g: &KGraph) -> Result<LaurentIso, AnalysisError> {
    if !is_commutative_graph(g) {
        return Err(AnalysisError::NotCommutativeGraph);
    }
    Ok(LaurentIso {
        graph_token: g.token(),
        arity: g.arity(),
    })
}

impl LaurentIso {
    /// The unique color-c loop at v.
    pub fn variable_loop(&self, g: &KGraph, v: VertexId, color: usize) -> EdgeId {
        g.in_edges(v, color)[0]
    }

    /// Export an element as one Laurent polynomial per component it touches,
    /// ordered by component vertex. A term s_α s_{β*} at vertex v maps to
    /// x^{d(α) − d(β)}.
    pub fn export(
        &self,
        alg: &Algebra,
        elem: &AlgebraElement,
    ) -> Result<Vec<(VertexId, LaurentPoly)>, AnalysisError> {
        if alg.graph().token() != self.graph_token {
            return Err(AnalysisError::Algebra(AlgebraError::GraphMismatch));
        }
        let mut per_vertex: BTreeMap<VertexId, LaurentPoly> = BTreeMap::new();
        for (alpha, beta, c) in elem.terms() {
            let v = alpha.range();
            let expo = alpha.degree().grade_diff(beta.degree()).coords().to_vec();
            per_vertex
                .entry(v)
                .or_insert_with(|| LaurentPoly::zero(alg.spec(), self.arity))
                .insert(expo, c.clone());
        }
        per_vertex.retain(|_, poly| !poly.is_zero());
        Ok(per_vertex.into_iter().collect())
    }
}

/// The bundle of graph properties reported by the CLI.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub has_closed_path: bool,
    /// None when the graph has sources (cofinality undefined here).
    pub cofinal: Option<bool>,
    pub aperiodicity: AperiodicityReport,
    pub commutative_graph: bool,
    pub components: Vec<Vec<VertexId>>,
}

/// Run every decider with the given aperiodicity bound.
pub fn properties(g: &KGraph, bound: u32, threads: usize) -> PropertyReport {
    PropertyReport {
        has_closed_path: has_closed_path(g),
        cofinal: is_cofinal(g).ok(),
        aperiodicity: aperiodicity(g, bound, threads),
        commutative_graph: is_commutative_graph(g),
        components: components(g),
    }
}
