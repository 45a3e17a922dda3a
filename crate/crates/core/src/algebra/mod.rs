//! Elements of the Kumjian-Pask algebra KP_R(Λ) with exact arithmetic.
//!
//! An element is a finite R-linear combination of products s_α s_{β*} with
//! s(α) = s(β); a vertex idempotent p_v is the pair (v, v). Multiplication
//! expands (s_α s_{β*})(s_γ s_{δ*}) = Σ_{(ρ,τ)∈Λ^min(β,γ)} s_{αρ} s_{(δτ)*},
//! which reduces to the defining relations on generators: orthogonal vertex
//! idempotents, range/source absorption, s_{λ*} s_μ = δ_{λ,μ} p_{s(λ)} for
//! equal degrees, and p_v = Σ_{λ∈vΛ^n} s_λ s_{λ*}.
//!
//! Mixed ghost degrees are permitted in intermediate results; `normalize`
//! reshapes every term to the componentwise maximum ghost degree present,
//! after which coefficient maps are canonical at that degree. Two elements
//! are equal in the algebra iff their difference normalizes to zero (the
//! canonical pairs at one ghost degree are linearly independent, but a
//! single element does not have a preferred ghost degree, so equality is
//! decided on differences).

mod expr;

pub use expr::{parse_element, ExprError};

use crate::degree::{GradeDegree, MultiDegree};
use crate::kgraph::{KGraph, Path, PathError, VertexId};
use crate::ring::{RingError, RingSpec, RingValue};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    GraphMismatch,
    ForeignPath,
    Ring(RingError),
    Path(PathError),
    ReshapeBound {
        ghost: MultiDegree,
        target: MultiDegree,
    },
    SourceMismatch,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::GraphMismatch => write!(f, "elements belong to different graphs"),
            AlgebraError::ForeignPath => write!(f, "path does not belong to this graph"),
            AlgebraError::Ring(e) => write!(f, "{e}"),
            AlgebraError::Path(e) => write!(f, "{e}"),
            AlgebraError::ReshapeBound { ghost, target } => write!(
                f,
                "reshape target ({target}) does not dominate ghost degree ({ghost})"
            ),
            AlgebraError::SourceMismatch => {
                write!(f, "term paths must share their source vertex")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

impl From<RingError> for AlgebraError {
    fn from(e: RingError) -> Self {
        AlgebraError::Ring(e)
    }
}

impl From<PathError> for AlgebraError {
    fn from(e: PathError) -> Self {
        AlgebraError::Path(e)
    }
}

/// A finite coefficient map over pairs (α, β) of paths with s(α) = s(β),
/// representing Σ r_{α,β} s_α s_{β*}. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    graph_token: u64,
    spec: RingSpec,
    terms: BTreeMap<(Path, Path), RingValue>,
}

impl AlgebraElement {
    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    /// Structural zero test. After `normalize` this decides equality with 0
    /// on a validated (no-sources) graph.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &RingValue)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    /// Componentwise maximum of the ghost degrees d(β) present (0 for the
    /// zero element).
    pub fn ghost_max(&self, k: usize) -> MultiDegree {
        let mut m = MultiDegree::zero(k);
        for (_, beta) in self.terms.keys() {
            m = m.join(beta.degree());
        }
        m
    }

    /// All terms share one ghost degree (vacuously true for 0).
    pub fn uniform_ghost(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some((_, first)) => it.all(|(_, b)| b.degree() == first.degree()),
        }
    }

    /// Every term has α = β.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(a, b)| a == b)
    }
}

/// The Kumjian-Pask algebra of a graph over a coefficient ring: the context
/// object for all element operations.
#[derive(Clone)]
pub struct Algebra {
    graph: Arc<KGraph>,
    spec: RingSpec,
}

impl Algebra {
    pub fn new(graph: Arc<KGraph>, spec: RingSpec) -> Algebra {
        Algebra { graph, spec }
    }

    pub fn graph(&self) -> &KGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> Arc<KGraph> {
        Arc::clone(&self.graph)
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    fn owns(&self, e: &AlgebraElement) -> Result<(), AlgebraError> {
        if e.graph_token != self.graph.token() {
            return Err(AlgebraError::GraphMismatch);
        }
        if e.spec != self.spec {
            return Err(AlgebraError::Ring(RingError::SpecMismatch {
                left: e.spec,
                right: self.spec,
            }));
        }
        Ok(())
    }

    fn owns_path(&self, p: &Path) -> Result<(), AlgebraError> {
        let g = &self.graph;
        let ok = p.range().index() < g.vertex_count()
            && p.word().iter().all(|&e| e.index() < g.edge_count())
            && g.canonicalize(p.word()).map_or(p.is_vertex(), |c| &c == p);
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::ForeignPath)
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            graph_token: self.graph.token(),
            spec: self.spec,
            terms: BTreeMap::new(),
        }
    }

    fn single(&self, alpha: Path, beta: Path, coeff: RingValue) -> AlgebraElement {
        debug_assert_eq!(alpha.source(), beta.source());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((alpha, beta), coeff);
        }
        AlgebraElement {
            graph_token: self.graph.token(),
            spec: self.spec,
            terms,
        }
    }

    /// The vertex idempotent p_v.
    pub fn vertex_idempotent(&self, v: VertexId) -> AlgebraElement {
        let p = self.graph.vertex_path(v);
        self.single(p.clone(), p, self.spec.one())
    }

    /// The generator s_λ (for a vertex path this is p_v).
    pub fn path_gen(&self, lambda: &Path) -> Result<AlgebraElement, AlgebraError> {
        self.owns_path(lambda)?;
        let src = self.graph.vertex_path(lambda.source());
        Ok(self.single(lambda.clone(), src, self.spec.one()))
    }

    /// The ghost generator s_{λ*} (for a vertex path this is p_v, matching
    /// the convention v* = v).
    pub fn ghost_gen(&self, lambda: &Path) -> Result<AlgebraElement, AlgebraError> {
        self.owns_path(lambda)?;
        let src = self.graph.vertex_path(lambda.source());
        Ok(self.single(src, lambda.clone(), self.spec.one()))
    }

    /// Σ_v p_v, the identity (the vertex set is finite by construction).
    pub fn identity(&self) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for v in self.graph.vertices() {
            let p = self.graph.vertex_path(v);
            terms.insert((p.clone(), p), self.spec.one());
        }
        AlgebraElement {
            graph_token: self.graph.token(),
            spec: self.spec,
            terms,
        }
    }

    /// Build an element from raw (α, β, coefficient) triples, collecting
    /// like terms and dropping zeros.
    pub fn from_terms<I>(&self, triples: I) -> Result<AlgebraElement, AlgebraError>
    where
        I: IntoIterator<Item = (Path, Path, RingValue)>,
    {
        let mut acc = self.zero();
        for (alpha, beta, coeff) in triples {
            if alpha.source() != beta.source() {
                return Err(AlgebraError::SourceMismatch);
            }
            self.owns_path(&alpha)?;
            self.owns_path(&beta)?;
            if coeff.spec() != self.spec {
                return Err(AlgebraError::Ring(RingError::SpecMismatch {
                    left: coeff.spec(),
                    right: self.spec,
                }));
            }
            Self::accumulate(&mut acc.terms, (alpha, beta), coeff)?;
        }
        Ok(acc)
    }

    fn accumulate(
        terms: &mut BTreeMap<(Path, Path), RingValue>,
        key: (Path, Path),
        coeff: RingValue,
    ) -> Result<(), AlgebraError> {
        if coeff.is_zero() {
            return Ok(());
        }
        match terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&coeff)?;
                if sum.is_zero() {
                    terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                terms.insert(key, coeff);
            }
        }
        Ok(())
    }

    pub fn add(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        self.owns(b)?;
        let mut out = a.clone();
        for ((alpha, beta), c) in &b.terms {
            Self::accumulate(&mut out.terms, (alpha.clone(), beta.clone()), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.add(a, &self.scalar_mul(&self.spec.one().neg(), b)?)
    }

    pub fn scalar_mul(
        &self,
        c: &RingValue,
        a: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        if c.spec() != self.spec {
            return Err(AlgebraError::Ring(RingError::SpecMismatch {
                left: c.spec(),
                right: self.spec,
            }));
        }
        let mut out = self.zero();
        for ((alpha, beta), r) in &a.terms {
            Self::accumulate(&mut out.terms, (alpha.clone(), beta.clone()), c.mul(r)?)?;
        }
        Ok(out)
    }

    /// Bilinear extension of (s_α s_{β*})(s_γ s_{δ*}) =
    /// Σ_{(ρ,τ)∈Λ^min(β,γ)} s_{αρ} s_{(δτ)*}.
    pub fn mul(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        self.owns(b)?;
        let g = &self.graph;
        let mut out = self.zero();
        for ((a_alpha, a_beta), ca) in &a.terms {
            for ((b_alpha, b_beta), cb) in &b.terms {
                let coeff = ca.mul(cb)?;
                if coeff.is_zero() {
                    continue;
                }
                for (rho, tau) in g.min_common_extensions(a_beta, b_alpha) {
                    let alpha = g.compose(a_alpha, &rho)?;
                    let beta = g.compose(b_beta, &tau)?;
                    Self::accumulate(&mut out.terms, (alpha, beta), coeff.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// The anti-involution fixing coefficients: swaps each (α, β) to (β, α).
    pub fn star(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        let mut out = self.zero();
        for ((alpha, beta), c) in &a.terms {
            out.terms.insert((beta.clone(), alpha.clone()), c.clone());
        }
        Ok(out)
    }

    /// Rewrite every term at ghost degree m ≥ all present d(β) by
    /// s_α s_{β*} = Σ_{μ∈s(α)Λ^{m−d(β)}} s_{αμ} s_{(βμ)*}.
    pub fn reshape(
        &self,
        a: &AlgebraElement,
        m: &MultiDegree,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        let g = &self.graph;
        let mut out = self.zero();
        for ((alpha, beta), c) in &a.terms {
            let ext = match m.checked_sub(beta.degree()) {
                Some(e) => e,
                None => {
                    return Err(AlgebraError::ReshapeBound {
                        ghost: beta.degree().clone(),
                        target: m.clone(),
                    })
                }
            };
            for mu in g.paths_from(alpha.source(), &ext) {
                let new_alpha = g.compose(alpha, &mu)?;
                let new_beta = g.compose(beta, &mu)?;
                Self::accumulate(&mut out.terms, (new_alpha, new_beta), c.clone())?;
            }
        }
        Ok(out)
    }

    /// Canonical form at the maximum ghost degree present: all β reshaped to
    /// one degree, terms sorted, zeros dropped. Coefficient maps at a common
    /// ghost degree are canonical, so `normalize(a − b).is_zero()` decides
    /// equality.
    pub fn normalize(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        let m = a.ghost_max(self.graph.arity());
        self.reshape(a, &m)
    }

    /// Algebra equality: the difference normalizes to zero.
    pub fn equal(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<bool, AlgebraError> {
        Ok(self.normalize(&self.sub(a, b)?)?.is_zero())
    }

    /// Terms of one ℤ^k-degree d(α) − d(β) = g.
    pub fn graded_component(
        &self,
        a: &AlgebraElement,
        g: &GradeDegree,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.owns(a)?;
        let mut out = self.zero();
        for ((alpha, beta), c) in &a.terms {
            if &alpha.degree().grade_diff(beta.degree()) == g {
                out.terms.insert((alpha.clone(), beta.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// The grades with nonzero component, ascending.
    pub fn grades(&self, a: &AlgebraElement) -> Vec<GradeDegree> {
        let mut gs: Vec<GradeDegree> = a
            .terms
            .keys()
            .map(|(alpha, beta)| alpha.degree().grade_diff(beta.degree()))
            .collect();
        gs.sort();
        gs.dedup();
        gs
    }

    /// `Some(g)` when every term has degree g (the zero element reports
    /// degree 0).
    pub fn is_homogeneous(&self, a: &AlgebraElement) -> Option<GradeDegree> {
        let gs = self.grades(a);
        match gs.len() {
            0 => Some(GradeDegree::zero(self.graph.arity())),
            1 => Some(gs.into_iter().next().unwrap()),
            _ => None,
        }
    }

    /// Serialize in the element grammar: sorted terms, explicit
    /// coefficients, `p(v)`, `s(α)`, `st(β)` and `s(α)*st(β)` factors.
    pub fn element_string(&self, a: &AlgebraElement) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let g = &self.graph;
        let mut out = String::new();
        for (i, ((alpha, beta), c)) in a.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&format!("{}", c.abs()));
            out.push('*');
            let factors = match (alpha.is_vertex(), beta.is_vertex()) {
                (true, true) => format!("p({})", g.vertex_name(alpha.range())),
                (false, true) => format!("s({})", g.path_string(alpha)),
                (true, false) => format!("st({})", g.path_string(beta)),
                (false, false) => {
                    format!("s({})*st({})", g.path_string(alpha), g.path_string(beta))
                }
            };
            out.push_str(&factors);
        }
        out
    }
}
