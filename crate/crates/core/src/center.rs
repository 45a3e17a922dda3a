//! The exact bounded-window center solver.
//!
//! A window (ghost m, cap D) spans the finite subspace V(w) of normal-form
//! elements Σ c_{α,β} s_α s_{β*} with d(β) = m, d(α) ≤ D and s(α) = s(β).
//! An element is central iff it commutes with the skeleton generators
//! {p_v} ∪ {s_e} ∪ {s_{e*}} (they generate the algebra), so the center
//! intersected with V(w) is the kernel of an exact linear system: one
//! equation block per generator, each commutator expanded coefficientwise in
//! the canonical pair basis at the block's common ghost degree. No
//! approximation is involved.
//!
//! Two implementation notes, both exact rewrites of that system:
//!
//! - The generators are homogeneous, so commutation splits across the ℤ^k
//!   grading; the solver works one grade class of the window at a time.
//! - On graphs with sources (admitted in permissive mode), the relations
//!   p_v = Σ_{λ∈vΛ^n} s_λ s_{λ*} with empty right sides force every pair
//!   touching a dead vertex (one with vΛ^n = ∅ for some n) to zero, and the
//!   quotient is the algebra of the live subgraph. The solver drops dead
//!   pairs accordingly; on validated no-sources graphs every vertex is live
//!   and nothing changes. In particular every window center of an acyclic
//!   graph is {0}, matching the fact that a center without closed paths
//!   vanishes.

use crate::algebra::{Algebra, AlgebraElement, AlgebraError};
use crate::analysis::{self, AperiodicityMode, AperiodicityVerdict, PropertyReport};
use crate::degree::{GradeDegree, MultiDegree};
use crate::kgraph::{KGraph, Path};
use crate::parallel;
use crate::ring::{Matrix, RingSpec, RingValue};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

const ROW_CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterError {
    InvalidWindow(String),
    /// The live subgraph of a permissive graph is not closed under its
    /// factorization squares, so the quotient algebra has no usable normal
    /// form and the solver refuses to guess.
    QuotientUnsupported,
    ZeroElement,
    NotNormalized,
    Algebra(AlgebraError),
}

impl fmt::Display for CenterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterError::InvalidWindow(s) => write!(f, "invalid window: {s}"),
            CenterError::QuotientUnsupported => write!(
                f,
                "graph has sources and its live subgraph is not square-closed"
            ),
            CenterError::ZeroElement => write!(f, "expected a nonzero element"),
            CenterError::NotNormalized => {
                write!(f, "expected a normalized element (uniform ghost degree)")
            }
            CenterError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CenterError {}

impl From<AlgebraError> for CenterError {
    fn from(e: AlgebraError) -> Self {
        CenterError::Algebra(e)
    }
}

impl From<crate::ring::RingError> for CenterError {
    fn from(e: crate::ring::RingError) -> Self {
        CenterError::Algebra(AlgebraError::Ring(e))
    }
}

/// The pair (ghost degree m, cap D) bounding the normal-form subspace
/// searched by the solver. Invariant: D ≥ m componentwise, so the window
/// always contains the reshaped identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window {
    ghost: MultiDegree,
    cap: MultiDegree,
}

impl Window {
    pub fn new(ghost: MultiDegree, cap: MultiDegree) -> Result<Window, CenterError> {
        if ghost.arity() != cap.arity() {
            return Err(CenterError::InvalidWindow(format!(
                "ghost has arity {}, cap has arity {}",
                ghost.arity(),
                cap.arity()
            )));
        }
        if !ghost.leq(&cap) {
            return Err(CenterError::InvalidWindow(format!(
                "cap ({cap}) must dominate ghost ({ghost})"
            )));
        }
        Ok(Window { ghost, cap })
    }

    pub fn ghost(&self) -> &MultiDegree {
        &self.ghost
    }

    pub fn cap(&self) -> &MultiDegree {
        &self.cap
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ghost=({}) cap=({})", self.ghost, self.cap)
    }
}

/// All pairs (α, β) with d(β) = ghost, d(α) ≤ cap and s(α) = s(β), ordered
/// by (α, β).
pub fn window_basis(g: &KGraph, w: &Window) -> Vec<(Path, Path)> {
    let betas = g.all_paths(&w.ghost);
    let mut out = Vec::new();
    for d in w.cap.box_iter() {
        for alpha in g.all_paths(&d) {
            for beta in betas.iter().filter(|b| b.source() == alpha.source()) {
                out.push((alpha.clone(), beta.clone()));
            }
        }
    }
    out.sort();
    out
}

/// The center of the algebra intersected with a window, exactly.
#[derive(Clone, Debug)]
pub struct CenterResult {
    pub window: Window,
    pub spec: RingSpec,
    /// |window_basis|, before the live filter.
    pub pair_count: usize,
    /// Unknowns actually used (equal to `pair_count` on valid graphs).
    pub used_pair_count: usize,
    /// Kernel basis mapped back to elements, normalized and scaled
    /// (leading coefficient 1 over the fields; primitive with positive
    /// leading coefficient over ℤ).
    pub basis: Vec<AlgebraElement>,
    /// Dimension over the fields, lattice rank over ℤ.
    pub rank: usize,
}

/// The skeleton generators, in report order.
pub fn generators(alg: &Algebra) -> Vec<(String, AlgebraElement)> {
    let g = alg.graph();
    let mut out = Vec::new();
    for v in g.vertices() {
        out.push((format!("p({})", g.vertex_name(v)), alg.vertex_idempotent(v)));
    }
    for e in g.edges() {
        let path = g.edge_path(e);
        out.push((
            format!("s({})", g.edge_name(e)),
            alg.path_gen(&path).expect("edge path is owned"),
        ));
    }
    for e in g.edges() {
        let path = g.edge_path(e);
        out.push((
            format!("st({})", g.edge_name(e)),
            alg.ghost_gen(&path).expect("edge path is owned"),
        ));
    }
    out
}

fn live_pair(g: &KGraph, alpha: &Path, beta: &Path) -> bool {
    g.path_is_live(alpha) && g.path_is_live(beta)
}

/// On permissive graphs, the quotient normal form is only available when
/// the live subgraph is closed under the factorization squares.
fn quotient_supported(g: &KGraph) -> bool {
    if g.all_live() {
        return true;
    }
    let edge_live = |e| g.is_live(g.edge_range(e)) && g.is_live(g.edge_source(e));
    for a in g.edges() {
        for b in g.edges() {
            if g.edge_source(a) != g.edge_range(b) || g.edge_color(a) == g.edge_color(b) {
                continue;
            }
            if !edge_live(a) || !edge_live(b) {
                continue;
            }
            if let Some((x, y)) = g.square_partner(a, b) {
                if !edge_live(x) || !edge_live(y) {
                    return false;
                }
            }
        }
    }
    true
}

/// Zero test in the algebra (in the live quotient, on permissive graphs).
fn commutator_vanishes(alg: &Algebra, elem: &AlgebraElement) -> Result<bool, CenterError> {
    let g = alg.graph();
    let n = alg.normalize(elem)?;
    let vanishes = n.terms().all(|(a, b, _)| !live_pair(g, a, b));
    Ok(vanishes)
}

/// Exact commutant of the generators inside the window.
pub fn central_in_window(
    alg: &Algebra,
    w: &Window,
    threads: usize,
) -> Result<CenterResult, CenterError> {
    let g = alg.graph();
    if w.ghost.arity() != g.arity() {
        return Err(CenterError::InvalidWindow(format!(
            "window arity {} does not match graph arity {}",
            w.ghost.arity(),
            g.arity()
        )));
    }
    if !quotient_supported(g) {
        return Err(CenterError::QuotientUnsupported);
    }
    let raw = window_basis(g, w);
    let pair_count = raw.len();
    let pairs: Vec<(Path, Path)> = raw
        .into_iter()
        .filter(|(a, b)| live_pair(g, a, b))
        .collect();
    let used = pairs.len();
    let gens = generators(alg);

    // commutation with homogeneous generators splits across the grading
    let mut by_grade: BTreeMap<GradeDegree, Vec<(Path, Path)>> = BTreeMap::new();
    for (a, b) in pairs {
        by_grade
            .entry(a.degree().grade_diff(b.degree()))
            .or_default()
            .push((a, b));
    }

    let mut basis = Vec::new();
    for (_, grade_pairs) in by_grade {
        let vectors = solve_grade_class(alg, &grade_pairs, &gens, threads)?;
        for v in vectors {
            let elem = alg.from_terms(
                v.iter()
                    .zip(&grade_pairs)
                    .filter(|&(c, (_a, _b))| !c.is_zero())
                    .map(|(c, (a, b))| (a.clone(), b.clone(), c.clone())),
            )?;
            if !elem.is_zero() {
                basis.push(scale_basis_element(alg, elem)?);
            }
        }
    }
    basis.sort_by(|a, b| {
        let ka: Vec<_> = a.terms().map(|(x, y, _)| (x.clone(), y.clone())).collect();
        let kb: Vec<_> = b.terms().map(|(x, y, _)| (x.clone(), y.clone())).collect();
        ka.cmp(&kb)
    });
    let rank = basis.len();
    Ok(CenterResult {
        window: w.clone(),
        spec: alg.spec(),
        pair_count,
        used_pair_count: used,
        basis,
        rank,
    })
}

/// Kernel of the commutator system restricted to one grade class, as
/// coordinate rows over `pairs`. Rows are intersected in chunks so the
/// working matrices stay near the (shrinking) kernel dimension.
fn solve_grade_class(
    alg: &Algebra,
    pairs: &[(Path, Path)],
    gens: &[(String, AlgebraElement)],
    threads: usize,
) -> Result<Vec<Vec<RingValue>>, CenterError> {
    let g = alg.graph();
    let spec = alg.spec();
    let k = g.arity();
    let n = pairs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // kernel basis rows, starting from all of V(w) in this grade
    let mut basis: Vec<Vec<RingValue>> = (0..n)
        .map(|i| {
            let mut row = vec![spec.zero(); n];
            row[i] = spec.one();
            row
        })
        .collect();

    for (_, gen) in gens {
        if basis.is_empty() {
            break;
        }
        let comms: Vec<AlgebraElement> = parallel::map_indexed(threads, pairs, |(a, b)| {
            let x = alg
                .from_terms([(a.clone(), b.clone(), spec.one())])
                .expect("window pair is well-formed");
            let xg = alg.mul(&x, gen).expect("same algebra");
            let gx = alg.mul(gen, &x).expect("same algebra");
            alg.sub(&xg, &gx).expect("same algebra")
        });
        let mut m_block = MultiDegree::zero(k);
        for c in &comms {
            m_block = m_block.join(&c.ghost_max(k));
        }
        let cols: Vec<Vec<((Path, Path), RingValue)>> =
            parallel::map_indexed(threads, &comms, |c| {
                let r = alg.reshape(c, &m_block).expect("block degree dominates");
                r.terms()
                    .filter(|(a, b, _)| live_pair(g, a, b))
                    .map(|(a, b, v)| ((a.clone(), b.clone()), v.clone()))
                    .collect()
            });
        // canonical-basis rows: key -> sparse (unknown index, coefficient)
        let mut rows: BTreeMap<(Path, Path), Vec<(usize, RingValue)>> = BTreeMap::new();
        for (i, col) in cols.iter().enumerate() {
            for (key, v) in col {
                rows.entry(key.clone()).or_default().push((i, v.clone()));
            }
        }
        let row_list: Vec<Vec<(usize, RingValue)>> = rows.into_values().collect();
        for chunk in row_list.chunks(ROW_CHUNK) {
            if basis.is_empty() {
                break;
            }
            let d = basis.len();
            let mut mat = Matrix::zero(spec, chunk.len(), d);
            let mut nontrivial = false;
            for (r, sparse) in chunk.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let mut acc = spec.zero();
                    for (i, c) in sparse {
                        acc = acc.add(&c.mul(&b[*i])?)?;
                    }
                    if !acc.is_zero() {
                        nontrivial = true;
                    }
                    mat.set(r, j, acc);
                }
            }
            if !nontrivial {
                continue;
            }
            let z = mat.kernel();
            if z.len() == d {
                continue;
            }
            basis = z
                .iter()
                .map(|coeffs| {
                    let mut row = vec![spec.zero(); n];
                    for (t, zt) in coeffs.iter().enumerate() {
                        if zt.is_zero() {
                            continue;
                        }
                        for i in 0..n {
                            if !basis[t][i].is_zero() {
                                row[i] = row[i].add(&zt.mul(&basis[t][i])?)?;
                            }
                        }
                    }
                    Ok::<_, CenterError>(row)
                })
                .collect::<Result<Vec<_>, _>>()?;
        }
    }
    Ok(basis)
}

/// Leading coefficient 1 over the fields; primitive, positive-leading over ℤ.
fn scale_basis_element(alg: &Algebra, elem: AlgebraElement) -> Result<AlgebraElement, CenterError> {
    let first = {
        let mut it = elem.terms();
        match it.next() {
            Some((_, _, c)) => c.clone(),
            None => {
                drop(it);
                return Ok(elem);
            }
        }
    };
    match alg.spec() {
        RingSpec::Integers => {
            let mut content = BigInt::zero();
            for (_, _, c) in elem.terms() {
                if let RingValue::Int(n) = c {
                    content = content.gcd(n);
                }
            }
            let negate = first.is_negative();
            if content.is_one() && !negate {
                return Ok(elem);
            }
            let rescaled = alg.from_terms(elem.terms().map(|(a, b, c)| {
                let n = match c {
                    RingValue::Int(n) => n / &content,
                    _ => unreachable!("integer element"),
                };
                (
                    a.clone(),
                    b.clone(),
                    RingValue::Int(if negate { -n } else { n }),
                )
            }))?;
            Ok(rescaled)
        }
        _ => {
            if first.is_one() {
                return Ok(elem);
            }
            Ok(alg.scalar_mul(&first.inv().map_err(AlgebraError::Ring)?, &elem)?)
        }
    }
}

/// Necessary conditions for centrality of a nonzero normal-form element.
/// They are filters, not a decision: an element can pass all four and still
/// fail to be central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterReport {
    /// (1) every term has r(α) = r(β)
    pub range_match: bool,
    /// (2) W = {r(β)} absorbs paths out of it: no edge from W to Λ⁰∖W
    pub range_set_absorbing: bool,
    /// (3) every term's source vertex is the range of some term
    pub source_covered: bool,
    /// (4) the β-set supports a closed chain β_1⋯β_l
    pub beta_closed_chain: bool,
    /// ghost degree 0 makes every β a vertex and (4) degenerate: each term
    /// is a closed chain of length 1.
    pub ghost_zero_degenerate: bool,
}

impl FilterReport {
    pub fn all_pass(&self) -> bool {
        self.range_match
            && self.range_set_absorbing
            && self.source_covered
            && self.beta_closed_chain
    }
}

/// Evaluate the four structural filters on a nonzero normalized element.
pub fn central_filters(alg: &Algebra, a: &AlgebraElement) -> Result<FilterReport, CenterError> {
    if a.is_zero() {
        return Err(CenterError::ZeroElement);
    }
    if !a.uniform_ghost() {
        return Err(CenterError::NotNormalized);
    }
    let g = alg.graph();
    let range_match = a
        .terms()
        .all(|(alpha, beta, _)| alpha.range() == beta.range());

    let mut range_set = vec![false; g.vertex_count()];
    for (_, beta, _) in a.terms() {
        range_set[beta.range().index()] = true;
    }
    let range_set_absorbing = g
        .edges()
        .all(|e| !range_set[g.edge_source(e).index()] || range_set[g.edge_range(e).index()]);

    let source_covered = a.terms().all(|(alpha, _, _)| {
        let s = alpha.source();
        a.terms().any(|(x, y, _)| x.range() == s && y.range() == s)
    });

    // β-chain digraph: β → β' iff r(β') = s(β); a directed cycle is exactly
    // a closed chain β_1⋯β_l
    let mut betas: Vec<&Path> = a.terms().map(|(_, b, _)| b).collect();
    betas.sort();
    betas.dedup();
    let nb = betas.len();
    let mut adj = vec![Vec::new(); nb];
    for (i, b) in betas.iter().enumerate() {
        for (j, b2) in betas.iter().enumerate() {
            if b2.range() == b.source() {
                adj[i].push(j);
            }
        }
    }
    let beta_closed_chain = digraph_has_cycle(&adj);
    let ghost_zero_degenerate = a
        .terms()
        .next()
        .map(|(_, b, _)| b.degree().is_zero())
        .unwrap_or(false);

    Ok(FilterReport {
        range_match,
        range_set_absorbing,
        source_covered,
        beta_closed_chain,
        ghost_zero_degenerate,
    })
}

fn digraph_has_cycle(adj: &[Vec<usize>]) -> bool {
    // 0 = unseen, 1 = in progress, 2 = done
    let mut state = vec![0u8; adj.len()];
    for start in 0..adj.len() {
        if state[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        state[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Per-basis-element structural diagnostics for a solved window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosticsEntry {
    /// {r(β)} covers every vertex — expected when the graph is cofinal.
    pub ranges_cover_all: bool,
    /// Every term has α = β — expected when the graph is aperiodic.
    pub diagonal: bool,
    /// All diagonal coefficients equal (None when not diagonal) — combined
    /// with the two flags above this pins the element to R·1.
    pub uniform_coefficient: Option<bool>,
}

pub fn diagnostics(alg: &Algebra, result: &CenterResult) -> Vec<DiagnosticsEntry> {
    let g = alg.graph();
    result
        .basis
        .iter()
        .map(|b| {
            let mut covered = vec![false; g.vertex_count()];
            for (_, beta, _) in b.terms() {
                covered[beta.range().index()] = true;
            }
            let live_cover = g.vertices().all(|v| covered[v.index()] || !g.is_live(v));
            let diagonal = b.is_diagonal();
            let uniform = if diagonal {
                let mut coeffs = b.terms().map(|(_, _, c)| c);
                let first = coeffs.next().cloned();
                Some(match first {
                    Some(c0) => coeffs.all(|c| *c == c0),
                    None => true,
                })
            } else {
                None
            };
            DiagnosticsEntry {
                ranges_cover_all: live_cover,
                diagonal,
                uniform_coefficient: uniform,
            }
        })
        .collect()
}

/// Outcome of checking a user element for centrality.
#[derive(Clone, Debug)]
pub struct CentralityCheck {
    pub central: bool,
    /// First generator whose commutator is nonzero.
    pub violating_generator: Option<String>,
    /// Filter report (when the element is nonzero and normalized).
    pub filters: Option<FilterReport>,
}

pub fn check_central(
    alg: &Algebra,
    elem: &AlgebraElement,
    threads: usize,
) -> Result<CentralityCheck, CenterError> {
    let gens = generators(alg);
    let commuted = parallel::map_indexed(threads, &gens, |(_, gen)| {
        let xg = alg.mul(elem, gen).expect("same algebra");
        let gx = alg.mul(gen, elem).expect("same algebra");
        let diff = alg.sub(&xg, &gx).expect("same algebra");
        commutator_vanishes(alg, &diff)
    });
    let mut violating = None;
    for (i, ok) in commuted.iter().enumerate() {
        match ok {
            Ok(true) => {}
            Ok(false) => {
                violating = Some(gens[i].0.clone());
                break;
            }
            Err(e) => return Err(e.clone()),
        }
    }
    let normalized = alg.normalize(elem)?;
    let filters = if normalized.is_zero() {
        None
    } else {
        Some(central_filters(alg, &normalized)?)
    };
    Ok(CentralityCheck {
        central: violating.is_none(),
        violating_generator: violating,
        filters,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => write!(f, "VERIFIED"),
            Verdict::Refuted => write!(f, "REFUTED"),
            Verdict::Inconclusive => write!(f, "INCONCLUSIVE"),
            Verdict::NotApplicable => write!(f, "NOT-APPLICABLE"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClaimOutcome {
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct WindowSummary {
    pub window: Window,
    pub pair_count: usize,
    pub used_pair_count: usize,
    pub rank: usize,
    /// rank 1 and basis = {identity}
    pub scalar: bool,
    /// rank equals the unknown count (everything central)
    pub full: bool,
    /// every basis element passes all four structural filters
    pub filters_pass: bool,
    pub all_diagonal: bool,
    pub all_ranges_cover: bool,
}

/// Outcome of the theorem harness over every window below a maximum.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub properties: PropertyReport,
    pub windows: Vec<WindowSummary>,
    /// Solver output for each window, in the same order as `windows`.
    pub results: Vec<CenterResult>,
    /// cofinal + aperiodic + finite vertices ⇒ center = R·identity
    pub scalar_center: ClaimOutcome,
    /// commutative criterion ⇒ every window is entirely central
    pub commutative_full_window: ClaimOutcome,
    /// no closed paths ⇒ center is {0}
    pub acyclic_zero_center: ClaimOutcome,
}

/// Run the deciders, solve every window w ≤ max_window, and compare against
/// the structure theorems. Bounded aperiodicity probes never upgrade to a
/// VERIFIED/REFUTED claim.
pub fn verify_theorems(
    alg: &Algebra,
    max_window: &Window,
    aperiodicity_bound: u32,
    threads: usize,
) -> Result<TheoremReport, CenterError> {
    let g = alg.graph();
    let props = analysis::properties(g, aperiodicity_bound, threads);

    let mut windows = Vec::new();
    let mut results = Vec::new();
    for ghost in max_window.ghost.box_iter() {
        for cap in max_window.cap.box_iter() {
            if !ghost.leq(&cap) {
                continue;
            }
            let w = Window::new(ghost.clone(), cap)?;
            let result = central_in_window(alg, &w, threads)?;
            let identity_in_window =
                scale_basis_element(alg, alg.reshape(&alg.identity(), w.ghost())?)?;
            let scalar = result.rank == 1 && alg.equal(&result.basis[0], &identity_in_window)?;
            let full = result.rank == result.used_pair_count;
            let mut filters_pass = true;
            for b in &result.basis {
                if !central_filters(alg, b)?.all_pass() {
                    filters_pass = false;
                }
            }
            let diag = diagnostics(alg, &result);
            windows.push(WindowSummary {
                window: w,
                pair_count: result.pair_count,
                used_pair_count: result.used_pair_count,
                rank: result.rank,
                scalar,
                full,
                filters_pass,
                all_diagonal: diag.iter().all(|d| d.diagonal),
                all_ranges_cover: diag.iter().all(|d| d.ranges_cover_all),
            });
            results.push(result);
        }
    }

    let all_scalar = windows.iter().all(|w| w.scalar);
    let scalar_center = if g.vertex_count() == 0 {
        ClaimOutcome {
            verdict: Verdict::NotApplicable,
            detail: "hypotheses unmet: graph has no vertices".to_string(),
        }
    } else {
        match (
            &props.cofinal,
            &props.aperiodicity.mode,
            &props.aperiodicity.verdict,
        ) {
            (Some(true), AperiodicityMode::ExactEntrance, AperiodicityVerdict::AperiodicExact) => {
                ClaimOutcome {
                    verdict: if all_scalar {
                        Verdict::Verified
                    } else {
                        Verdict::Refuted
                    },
                    detail: if all_scalar {
                        "center equals R*identity in every window".to_string()
                    } else {
                        "a window center strictly exceeds R*identity".to_string()
                    },
                }
            }
            (
                Some(true),
                AperiodicityMode::BoundedProbe(b),
                AperiodicityVerdict::NoPeriodicityUpToBound(_),
            ) => ClaimOutcome {
                verdict: Verdict::Inconclusive,
                detail: format!(
                    "{}; aperiodicity only bounded-probed (B={b})",
                    if all_scalar {
                        "window centers equal R*identity, consistent with the theorem"
                    } else {
                        "a window center exceeds R*identity; periodicity beyond the bound is possible"
                    }
                ),
            },
            (cof, _, verdict) => {
                let mut reasons = Vec::new();
                match cof {
                    Some(false) => reasons.push("graph is not cofinal".to_string()),
                    None => reasons.push("graph has sources".to_string()),
                    Some(true) => {}
                }
                if let AperiodicityVerdict::PeriodicWitness { vertex, m, n } = verdict {
                    reasons.push(format!(
                        "periodicity at {} with m=({m}) n=({n})",
                        g.vertex_name(*vertex)
                    ));
                }
                ClaimOutcome {
                    verdict: Verdict::NotApplicable,
                    detail: format!("hypotheses unmet: {}", reasons.join("; ")),
                }
            }
        }
    };

    let commutative_full_window = if props.commutative_graph {
        let ok = windows.iter().all(|w| w.full);
        ClaimOutcome {
            verdict: if ok {
                Verdict::Verified
            } else {
                Verdict::Refuted
            },
            detail: if ok {
                "every window is entirely central".to_string()
            } else {
                "a window contains a non-central element".to_string()
            },
        }
    } else {
        ClaimOutcome {
            verdict: Verdict::NotApplicable,
            detail: "graph fails the commutativity criterion".to_string(),
        }
    };

    let acyclic_zero_center = if !props.has_closed_path {
        let ok = windows.iter().all(|w| w.rank == 0);
        ClaimOutcome {
            verdict: if ok {
                Verdict::Verified
            } else {
                Verdict::Refuted
            },
            detail: if ok {
                "every window center is {0}".to_string()
            } else {
                "a window center is nonzero despite the graph being acyclic".to_string()
            },
        }
    } else {
        ClaimOutcome {
            verdict: Verdict::NotApplicable,
            detail: "graph has closed paths".to_string(),
        }
    };

    Ok(TheoremReport {
        properties: props,
        windows,
        results,
        scalar_center,
        commutative_full_window,
        acyclic_zero_center,
    })
}

#[cfg(test)]
mod tests;
