//! Finitely presented k-graphs and their path arithmetic.
//!
//! A k-graph is presented by a colored skeleton (vertices plus edges of k
//! colors) together with factorization squares: for each composable pair of
//! edges with colors i < j, a unique rewriting rule g∘h = h′∘g′ exchanging
//! the two colors. Validity (the unique factorization property at degree
//! e_i + e_j, plus the hexagon condition for k ≥ 3) is checked by
//! [`validate`]; all path operations assume a validated graph.
//!
//! Paths are stored as color-canonical edge words: colors nondecreasing from
//! the range end. A word g₁…g_n denotes the composition g₁∘g₂∘…∘g_n with
//! r(g_{t+1}) = s(g_t), so r(path) = r(g₁) and s(path) = s(g_n). The
//! canonical word is the unique representative of its morphism.

mod parse;
mod validate;

pub use parse::{parse_graph, ParseError};
pub use validate::{validate, Violation};

use crate::degree::MultiDegree;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

static GRAPH_TOKEN: AtomicU64 = AtomicU64::new(1);

/// Index of a vertex within its graph (vertices are sorted by id).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }

    pub(crate) fn from_index(i: usize) -> VertexId {
        VertexId(i)
    }
}

/// Index of an edge within its graph (edges are sorted by id).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Raw edge declaration: `edge <id> <color> <range> <source>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

/// Raw square declaration: `square g h = h2 g2`, meaning g∘h = h2∘g2 with
/// color(g) = color(g2) < color(h) = color(h2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDecl {
    pub first: (String, String),
    pub second: (String, String),
}

/// An unchecked k-graph presentation, as read from a graph file or built in
/// code. Turn it into a [`KGraph`] with [`KGraph::build`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    pub squares: Vec<SquareDecl>,
}

/// How strictly [`KGraph::build`] treats validation violations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BuildMode {
    /// Reject any violation.
    Strict,
    /// Allow source vertices (vΛ^{e_i} = ∅); reject everything else.
    /// Needed to admit acyclic skeletons, which a finite no-sources graph
    /// can never be.
    Permissive,
}

/// A validated, immutable k-graph. Safe to share across threads.
pub struct KGraph {
    token: u64,
    k: usize,
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edge_color: Vec<usize>,
    edge_range: Vec<VertexId>,
    edge_source: Vec<VertexId>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    /// in_edges[v][c-1]: edges of color c with range v, ascending by id.
    in_edges: Vec<Vec<Vec<EdgeId>>>,
    /// Anti-canonical word pair (higher color, lower color) -> canonical pair.
    to_canonical: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// Canonical word pair (lower color, higher color) -> anti-canonical pair.
    from_canonical: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// Vertices v with vΛ^n ≠ ∅ for every n (greatest fixpoint; all of them
    /// on a no-sources graph).
    live: Vec<bool>,
}

/// Errors from path construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathError {
    EmptyWord,
    NotComposable {
        at: usize,
        expected: String,
        found: String,
    },
    SegmentBounds {
        detail: String,
    },
    UnknownVertex(String),
    UnknownEdge(String),
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::EmptyWord => {
                write!(f, "an empty word does not name a path without its vertex")
            }
            PathError::NotComposable {
                at,
                expected,
                found,
            } => write!(
                f,
                "word not composable at position {at}: expected range {expected}, found {found}"
            ),
            PathError::SegmentBounds { detail } => write!(f, "segment bounds violated: {detail}"),
            PathError::UnknownVertex(v) => write!(f, "unknown vertex id `{v}`"),
            PathError::UnknownEdge(e) => write!(f, "unknown edge id `{e}`"),
        }
    }
}

impl std::error::Error for PathError {}

/// A morphism of the k-graph in color-canonical edge-word form, with cached
/// degree, range and source. The empty word is a vertex.
///
/// Ordering is by (word, range): well-defined because a nonempty canonical
/// word determines range and source, and degree-0 paths are told apart by
/// their vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    word: Vec<EdgeId>,
    degree: MultiDegree,
    range: VertexId,
    source: VertexId,
}

impl Path {
    pub fn word(&self) -> &[EdgeId] {
        &self.word
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn is_vertex(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.range == self.source
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .cmp(&other.word)
            .then_with(|| self.range.cmp(&other.range))
    }
}

impl KGraph {
    /// Validate a presentation and build the graph. All violations (or, in
    /// permissive mode, all violations other than source vertices) abort the
    /// build and are returned.
    pub fn build(pres: &Presentation, mode: BuildMode) -> Result<KGraph, Vec<Violation>> {
        let violations = validate(pres);
        let blocking: Vec<Violation> = violations
            .into_iter()
            .filter(|v| match mode {
                BuildMode::Strict => true,
                BuildMode::Permissive => !matches!(v, Violation::SourceVertex { .. }),
            })
            .collect();
        if !blocking.is_empty() {
            return Err(blocking);
        }

        let mut vertex_names = pres.vertices.clone();
        vertex_names.sort();
        let vertex_index: HashMap<String, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i)))
            .collect();

        let mut edge_decls = pres.edges.clone();
        edge_decls.sort_by(|a, b| a.id.cmp(&b.id));
        let edge_names: Vec<String> = edge_decls.iter().map(|e| e.id.clone()).collect();
        let edge_index: HashMap<String, EdgeId> = edge_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), EdgeId(i)))
            .collect();
        let edge_color: Vec<usize> = edge_decls.iter().map(|e| e.color).collect();
        let edge_range: Vec<VertexId> = edge_decls.iter().map(|e| vertex_index[&e.range]).collect();
        let edge_source: Vec<VertexId> =
            edge_decls.iter().map(|e| vertex_index[&e.source]).collect();

        let mut in_edges = vec![vec![Vec::new(); pres.k]; vertex_names.len()];
        for (i, decl) in edge_decls.iter().enumerate() {
            let v = edge_range[i].0;
            in_edges[v][decl.color - 1].push(EdgeId(i));
        }

        let mut to_canonical = HashMap::new();
        let mut from_canonical = HashMap::new();
        for sq in &pres.squares {
            let g = edge_index[&sq.first.0];
            let h = edge_index[&sq.first.1];
            let h2 = edge_index[&sq.second.0];
            let g2 = edge_index[&sq.second.1];
            from_canonical.insert((g, h), (h2, g2));
            to_canonical.insert((h2, g2), (g, h));
        }

        let live = compute_live(&in_edges, &edge_source, pres.k);

        Ok(KGraph {
            token: GRAPH_TOKEN.fetch_add(1, Ordering::Relaxed),
            k: pres.k,
            vertex_names,
            edge_names,
            edge_color,
            edge_range,
            edge_source,
            vertex_index,
            edge_index,
            in_edges,
            to_canonical,
            from_canonical,
            live,
        })
    }

    /// Identity token distinguishing graph instances (for mismatch checks).
    pub fn token(&self) -> u64 {
        self.token
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_names.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn edge_color(&self, e: EdgeId) -> usize {
        self.edge_color[e.0]
    }

    pub fn edge_range(&self, e: EdgeId) -> VertexId {
        self.edge_range[e.0]
    }

    pub fn edge_source(&self, e: EdgeId) -> VertexId {
        self.edge_source[e.0]
    }

    /// Edges of one color with range v, ascending by id: the set vΛ^{e_c}.
    pub fn in_edges(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.in_edges[v.0][color - 1]
    }

    /// Whether vΛ^n ≠ ∅ for every degree n. All vertices are live on a
    /// no-sources graph; on permissive graphs the dead ones index the
    /// idempotents forced to zero by the relations.
    pub fn is_live(&self, v: VertexId) -> bool {
        self.live[v.0]
    }

    pub fn all_live(&self) -> bool {
        self.live.iter().all(|&b| b)
    }

    /// Whether every vertex receives an edge of every color.
    pub fn has_no_sources(&self) -> bool {
        self.vertices()
            .all(|v| (1..=self.k).all(|c| !self.in_edges(v, c).is_empty()))
    }

    /// A path touches only live vertices (trivially true on valid graphs).
    pub fn path_is_live(&self, p: &Path) -> bool {
        if !self.live[p.range.0] {
            return false;
        }
        p.word.iter().all(|&e| self.live[self.edge_source(e).0])
    }

    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            word: Vec::new(),
            degree: MultiDegree::zero(self.k),
            range: v,
            source: v,
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        Path {
            word: vec![e],
            degree: MultiDegree::basis(self.k, self.edge_color(e)),
            range: self.edge_range(e),
            source: self.edge_source(e),
        }
    }

    fn word_degree(&self, word: &[EdgeId]) -> MultiDegree {
        let mut coords = vec![0u32; self.k];
        for &e in word {
            coords[self.edge_color(e) - 1] += 1;
        }
        MultiDegree::new(coords)
    }

    fn check_composable(&self, word: &[EdgeId]) -> Result<(), PathError> {
        for t in 0..word.len().saturating_sub(1) {
            let expected = self.edge_source(word[t]);
            let found = self.edge_range(word[t + 1]);
            if expected != found {
                return Err(PathError::NotComposable {
                    at: t + 1,
                    expected: self.vertex_name(expected).to_string(),
                    found: self.vertex_name(found).to_string(),
                });
            }
        }
        Ok(())
    }

    fn path_from_canonical_word(&self, word: Vec<EdgeId>, range_if_empty: VertexId) -> Path {
        if word.is_empty() {
            return self.vertex_path(range_if_empty);
        }
        let degree = self.word_degree(&word);
        let range = self.edge_range(word[0]);
        let source = self.edge_source(*word.last().unwrap());
        Path {
            word,
            degree,
            range,
            source,
        }
    }

    /// Sort a composable word into color-canonical order by repeatedly
    /// applying factorization squares to adjacent out-of-order pairs. Each
    /// application removes exactly one color inversion, so this terminates;
    /// the result is independent of rewrite order by unique factorization.
    fn sort_word(&self, mut w: Vec<EdgeId>) -> Vec<EdgeId> {
        loop {
            let mut t = 0;
            let mut swapped = false;
            while t + 1 < w.len() {
                let (a, b) = (w[t], w[t + 1]);
                if self.edge_color(a) > self.edge_color(b) {
                    let &(g, h) = self
                        .to_canonical
                        .get(&(a, b))
                        .expect("validated graph covers every out-of-order composable pair");
                    w[t] = g;
                    w[t + 1] = h;
                    swapped = true;
                }
                t += 1;
            }
            if !swapped {
                return w;
            }
        }
    }

    /// The canonical Path equal, as a morphism, to an arbitrary composable
    /// edge word.
    pub fn canonicalize(&self, word: &[EdgeId]) -> Result<Path, PathError> {
        self.check_composable(word)?;
        if word.is_empty() {
            return Err(PathError::EmptyWord);
        }
        let range = self.edge_range(word[0]);
        let sorted = self.sort_word(word.to_vec());
        Ok(self.path_from_canonical_word(sorted, range))
    }

    /// Canonicalize a named edge word, resolving ids first.
    pub fn canonicalize_named(&self, names: &[&str]) -> Result<Path, PathError> {
        let word: Vec<EdgeId> = names
            .iter()
            .map(|n| {
                self.edge_id(n)
                    .ok_or_else(|| PathError::UnknownEdge(n.to_string()))
            })
            .collect::<Result<_, _>>()?;
        self.canonicalize(&word)
    }

    /// λμ for r(μ) = s(λ): word concatenation followed by canonicalization.
    pub fn compose(&self, lhs: &Path, rhs: &Path) -> Result<Path, PathError> {
        if rhs.range != lhs.source {
            return Err(PathError::NotComposable {
                at: lhs.word.len(),
                expected: self.vertex_name(lhs.source).to_string(),
                found: self.vertex_name(rhs.range).to_string(),
            });
        }
        if lhs.is_vertex() {
            return Ok(rhs.clone());
        }
        if rhs.is_vertex() {
            return Ok(lhs.clone());
        }
        let mut word = lhs.word.clone();
        word.extend_from_slice(&rhs.word);
        let sorted = self.sort_word(word);
        Ok(self.path_from_canonical_word(sorted, lhs.range))
    }

    /// Move the first edge of the given color to the front of a canonical
    /// word by square rewrites, preserving the morphism. Returns false if no
    /// edge of that color is present.
    fn pull_color_front(&self, w: &mut [EdgeId], color: usize) -> bool {
        let pos = match w.iter().position(|&e| self.edge_color(e) == color) {
            Some(p) => p,
            None => return false,
        };
        for j in (0..pos).rev() {
            // w[j+1] carries the pulled color; w[j] has a strictly lower one.
            let &(h2, g2) = self
                .from_canonical
                .get(&(w[j], w[j + 1]))
                .expect("validated graph covers every in-order composable pair");
            w[j] = h2;
            w[j + 1] = g2;
        }
        true
    }

    /// Split a canonical word as μ·rest with d(μ) = p. The remainder stays
    /// canonical because each pull replaces prefix edges color-for-color.
    fn split_prefix(&self, word: &[EdgeId], p: &MultiDegree) -> (Vec<EdgeId>, Vec<EdgeId>) {
        let mut rest = word.to_vec();
        let mut prefix = Vec::with_capacity(p.total() as usize);
        for color in 1..=self.k {
            for _ in 0..p.coord(color - 1) {
                let pulled = self.pull_color_front(&mut rest, color);
                debug_assert!(pulled, "prefix degree exceeds word degree");
                prefix.push(rest.remove(0));
            }
        }
        (prefix, rest)
    }

    /// The unique ν with λ = μνρ, d(μ) = p, d(ν) = q − p.
    pub fn segment(
        &self,
        path: &Path,
        p: &MultiDegree,
        q: &MultiDegree,
    ) -> Result<Path, PathError> {
        if !p.leq(q) || !q.leq(&path.degree) {
            return Err(PathError::SegmentBounds {
                detail: format!("need 0 <= ({p}) <= ({q}) <= ({d})", d = path.degree),
            });
        }
        let (prefix, rest) = self.split_prefix(&path.word, p);
        let prefix_source = prefix
            .last()
            .map(|&e| self.edge_source(e))
            .unwrap_or(path.range);
        let mid_len = q.checked_sub(p).expect("checked p <= q");
        let (mid, _) = self.split_prefix(&rest, &mid_len);
        Ok(self.path_from_canonical_word(mid, prefix_source))
    }

    /// vΛ^n: all canonical paths with range v and degree n, lexicographic in
    /// the edge word. Empty when some vertex along the way lacks in-edges.
    pub fn paths_from(&self, v: VertexId, n: &MultiDegree) -> Vec<Path> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(n.total() as usize);
        self.paths_from_rec(v, n, &mut word, &mut out, v);
        out
    }

    fn paths_from_rec(
        &self,
        v: VertexId,
        n: &MultiDegree,
        word: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
        range: VertexId,
    ) {
        let color = match (1..=self.k).find(|&c| n.coord(c - 1) > 0) {
            Some(c) => c,
            None => {
                out.push(self.path_from_canonical_word(word.clone(), range));
                return;
            }
        };
        let rest = n
            .checked_sub(&MultiDegree::basis(self.k, color))
            .expect("coordinate positive");
        for &e in self.in_edges(v, color) {
            word.push(e);
            self.paths_from_rec(self.edge_source(e), &rest, word, out, range);
            word.pop();
        }
    }

    /// Λ^n over all range vertices, ordered by (word, range).
    pub fn all_paths(&self, n: &MultiDegree) -> Vec<Path> {
        let mut out = Vec::new();
        for v in self.vertices() {
            out.extend(self.paths_from(v, n));
        }
        out.sort();
        out
    }

    /// Λ^min(μ, ν): all pairs (α, β) with μα = νβ and d(μα) = d(μ)∨d(ν).
    /// Empty when r(μ) ≠ r(ν).
    pub fn min_common_extensions(&self, mu: &Path, nu: &Path) -> Vec<(Path, Path)> {
        if mu.range != nu.range {
            return Vec::new();
        }
        let join = mu.degree.join(&nu.degree);
        let ext_mu = join.checked_sub(&mu.degree).expect("join dominates");
        let ext_nu = join.checked_sub(&nu.degree).expect("join dominates");
        let alphas = self.paths_from(mu.source, &ext_mu);
        let betas = self.paths_from(nu.source, &ext_nu);
        let mut out = Vec::new();
        for alpha in &alphas {
            let lifted = self
                .compose(mu, alpha)
                .expect("range matches by construction");
            for beta in &betas {
                let other = self
                    .compose(nu, beta)
                    .expect("range matches by construction");
                if lifted == other {
                    out.push((alpha.clone(), beta.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// The square partner of a composable word pair (a, b) with distinct
    /// colors: the unique (x, y) with a∘b = x∘y and colors exchanged.
    pub fn square_partner(&self, a: EdgeId, b: EdgeId) -> Option<(EdgeId, EdgeId)> {
        let (ca, cb) = (self.edge_color(a), self.edge_color(b));
        if ca < cb {
            self.from_canonical.get(&(a, b)).copied()
        } else if ca > cb {
            self.to_canonical.get(&(a, b)).copied()
        } else {
            None
        }
    }

    /// Render a path as its edge word joined by dots, or the vertex id for a
    /// degree-0 path.
    pub fn path_string(&self, p: &Path) -> String {
        if p.is_vertex() {
            self.vertex_name(p.range).to_string()
        } else {
            p.word
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// Greatest fixpoint of "for every color there is an in-edge from a live
/// source": exactly the vertices v with vΛ^n ≠ ∅ for all n.
fn compute_live(in_edges: &[Vec<Vec<EdgeId>>], edge_source: &[VertexId], k: usize) -> Vec<bool> {
    let mut live = vec![true; in_edges.len()];
    loop {
        let mut changed = false;
        for v in 0..in_edges.len() {
            if !live[v] {
                continue;
            }
            let ok = (0..k).all(|c| {
                in_edges[v][c]
                    .iter()
                    .any(|&e| live[edge_source[e.index()].0])
            });
            if !ok {
                live[v] = false;
                changed = true;
            }
        }
        if !changed {
            return live;
        }
    }
}
