//! Presentation validation: id hygiene, square bijectivity (the unique
//! factorization property at degree e_i + e_j), the hexagon condition for
//! k ≥ 3, and the no-sources requirement.

use super::{EdgeId, Presentation};
use std::collections::HashMap;
use std::fmt;

/// One validation problem. An empty report means the presentation is a
/// bona fide row-finite k-graph with no sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId {
        id: String,
    },
    DanglingEndpoint {
        edge: String,
        role: &'static str,
        vertex: String,
    },
    ColorOutOfBounds {
        edge: String,
        color: usize,
        k: usize,
    },
    UnknownSquareEdge {
        id: String,
    },
    MalformedSquare {
        square: String,
        reason: String,
    },
    MissingFactorization {
        pair: (String, String),
    },
    DuplicateFactorization {
        pair: (String, String),
        canonical_side: bool,
    },
    HexagonFailure {
        triple: (String, String, String),
    },
    SourceVertex {
        vertex: String,
        color: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id `{id}`"),
            Violation::DanglingEndpoint { edge, role, vertex } => {
                write!(f, "edge `{edge}`: unknown {role} vertex `{vertex}`")
            }
            Violation::ColorOutOfBounds { edge, color, k } => {
                write!(f, "edge `{edge}`: color {color} out of bounds for k={k}")
            }
            Violation::UnknownSquareEdge { id } => {
                write!(f, "square references unknown edge `{id}`")
            }
            Violation::MalformedSquare { square, reason } => {
                write!(f, "square {square}: {reason}")
            }
            Violation::MissingFactorization { pair } => {
                write!(f, "no factorization for pair ({}, {})", pair.0, pair.1)
            }
            Violation::DuplicateFactorization {
                pair,
                canonical_side,
            } => {
                if *canonical_side {
                    write!(
                        f,
                        "duplicate factorization for pair ({}, {})",
                        pair.0, pair.1
                    )
                } else {
                    write!(
                        f,
                        "duplicate factorization for anti-ordered pair ({}, {})",
                        pair.0, pair.1
                    )
                }
            }
            Violation::HexagonFailure { triple } => {
                write!(
                    f,
                    "hexagon failure on triple ({}, {}, {})",
                    triple.0, triple.1, triple.2
                )
            }
            Violation::SourceVertex { vertex, color } => {
                write!(
                    f,
                    "vertex `{vertex}` has no incoming edges of color {color} (source)"
                )
            }
        }
    }
}

/// Check a presentation. Problems are reported, never raised.
pub fn validate(pres: &Presentation) -> Vec<Violation> {
    let mut out = Vec::new();

    // Duplicate ids, within and across the vertex and edge namespaces.
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for v in &pres.vertices {
        *seen.entry(v.as_str()).or_insert(0) += 1;
    }
    for e in &pres.edges {
        *seen.entry(e.id.as_str()).or_insert(0) += 1;
    }
    let mut dup: Vec<&str> = seen
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(&id, _)| id)
        .collect();
    dup.sort();
    for id in dup {
        out.push(Violation::DuplicateId { id: id.to_string() });
    }

    // Edge endpoints and colors.
    let vertex_idx: HashMap<&str, usize> = pres
        .vertices
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    for e in &pres.edges {
        if !vertex_idx.contains_key(e.range.as_str()) {
            out.push(Violation::DanglingEndpoint {
                edge: e.id.clone(),
                role: "range",
                vertex: e.range.clone(),
            });
        }
        if !vertex_idx.contains_key(e.source.as_str()) {
            out.push(Violation::DanglingEndpoint {
                edge: e.id.clone(),
                role: "source",
                vertex: e.source.clone(),
            });
        }
        if e.color < 1 || e.color > pres.k {
            out.push(Violation::ColorOutOfBounds {
                edge: e.id.clone(),
                color: e.color,
                k: pres.k,
            });
        }
    }

    // Resolve edges (first declaration wins on duplicates; duplicates were
    // already reported above).
    let mut edge_idx: HashMap<&str, EdgeId> = HashMap::new();
    for (i, e) in pres.edges.iter().enumerate() {
        edge_idx.entry(e.id.as_str()).or_insert(EdgeId(i));
    }
    let color = |e: EdgeId| pres.edges[e.0].color;
    let range = |e: EdgeId| pres.edges[e.0].range.as_str();
    let source = |e: EdgeId| pres.edges[e.0].source.as_str();

    // Per-square shape checks; well-formed squares feed the bijection.
    let mut first_map: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    let mut second_map: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    let mut squares_ok = true;
    for sq in &pres.squares {
        let ids = [&sq.first.0, &sq.first.1, &sq.second.0, &sq.second.1];
        let mut resolved = Vec::with_capacity(4);
        let mut unknown = false;
        for id in ids {
            match edge_idx.get(id.as_str()) {
                Some(&e) => resolved.push(e),
                None => {
                    out.push(Violation::UnknownSquareEdge { id: id.clone() });
                    unknown = true;
                }
            }
        }
        if unknown {
            squares_ok = false;
            continue;
        }
        let (g, h, h2, g2) = (resolved[0], resolved[1], resolved[2], resolved[3]);
        let square_str = format!(
            "({}, {}) = ({}, {})",
            sq.first.0, sq.first.1, sq.second.0, sq.second.1
        );
        let bad = |reason: String, out: &mut Vec<Violation>| {
            out.push(Violation::MalformedSquare {
                square: square_str.clone(),
                reason,
            });
        };
        let mut ok = true;
        if !(color(g) < color(h)) {
            bad(
                format!(
                    "first pair must have strictly increasing colors, got {} and {}",
                    color(g),
                    color(h)
                ),
                &mut out,
            );
            ok = false;
        }
        if color(g) != color(g2) || color(h) != color(h2) {
            bad(
                "second pair colors must mirror the first pair".to_string(),
                &mut out,
            );
            ok = false;
        }
        if source(g) != range(h) {
            bad(
                format!(
                    "first pair not composable: s({}) = {} but r({}) = {}",
                    sq.first.0,
                    source(g),
                    sq.first.1,
                    range(h)
                ),
                &mut out,
            );
            ok = false;
        }
        if source(h2) != range(g2) {
            bad(
                format!(
                    "second pair not composable: s({}) = {} but r({}) = {}",
                    sq.second.0,
                    source(h2),
                    sq.second.1,
                    range(g2)
                ),
                &mut out,
            );
            ok = false;
        }
        if ok && range(g) != range(h2) {
            bad(
                "both factorizations must share their range".to_string(),
                &mut out,
            );
            ok = false;
        }
        if ok && source(h) != source(g2) {
            bad(
                "both factorizations must share their source".to_string(),
                &mut out,
            );
            ok = false;
        }
        if !ok {
            squares_ok = false;
            continue;
        }
        if first_map.insert((g, h), 1).is_some() {
            out.push(Violation::DuplicateFactorization {
                pair: (sq.first.0.clone(), sq.first.1.clone()),
                canonical_side: true,
            });
            squares_ok = false;
        }
        if second_map.insert((h2, g2), 1).is_some() {
            out.push(Violation::DuplicateFactorization {
                pair: (sq.second.0.clone(), sq.second.1.clone()),
                canonical_side: false,
            });
            squares_ok = false;
        }
    }

    // Bijection coverage: every composable distinct-color pair must occur on
    // the appropriate side exactly once.
    let edge_ids: Vec<EdgeId> = (0..pres.edges.len())
        .map(EdgeId)
        .filter(|e| {
            // skip shadowed duplicates so each id is considered once
            edge_idx.get(pres.edges[e.0].id.as_str()) == Some(e)
        })
        .collect();
    for &a in &edge_ids {
        for &b in &edge_ids {
            if source(a) != range(b) || color(a) == color(b) {
                continue;
            }
            if color(a) < color(b) {
                if !first_map.contains_key(&(a, b)) {
                    out.push(Violation::MissingFactorization {
                        pair: (pres.edges[a.0].id.clone(), pres.edges[b.0].id.clone()),
                    });
                    squares_ok = false;
                }
            } else if !second_map.contains_key(&(a, b)) {
                out.push(Violation::MissingFactorization {
                    pair: (pres.edges[a.0].id.clone(), pres.edges[b.0].id.clone()),
                });
                squares_ok = false;
            }
        }
    }

    // Hexagon condition, only meaningful once the squares form a bijection.
    if pres.k >= 3 && squares_ok {
        let mut from_canonical: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)> = HashMap::new();
        for sq in &pres.squares {
            let g = edge_idx[sq.first.0.as_str()];
            let h = edge_idx[sq.first.1.as_str()];
            let h2 = edge_idx[sq.second.0.as_str()];
            let g2 = edge_idx[sq.second.1.as_str()];
            from_canonical.insert((g, h), (h2, g2));
        }
        let swap = |w: &mut [EdgeId; 3], t: usize| {
            let &(x, y) = from_canonical
                .get(&(w[t], w[t + 1]))
                .expect("square bijection verified above");
            w[t] = x;
            w[t + 1] = y;
        };
        for &a in &edge_ids {
            for &b in &edge_ids {
                if source(a) != range(b) || color(a) >= color(b) {
                    continue;
                }
                for &c in &edge_ids {
                    if source(b) != range(c) || color(b) >= color(c) {
                        continue;
                    }
                    // route 1: swap (0,1), (1,2), (0,1)
                    let mut w1 = [a, b, c];
                    swap(&mut w1, 0);
                    swap(&mut w1, 1);
                    swap(&mut w1, 0);
                    // route 2: swap (1,2), (0,1), (1,2)
                    let mut w2 = [a, b, c];
                    swap(&mut w2, 1);
                    swap(&mut w2, 0);
                    swap(&mut w2, 1);
                    if w1 != w2 {
                        out.push(Violation::HexagonFailure {
                            triple: (
                                pres.edges[a.0].id.clone(),
                                pres.edges[b.0].id.clone(),
                                pres.edges[c.0].id.clone(),
                            ),
                        });
                    }
                }
            }
        }
    }

    // No sources: vΛ^{e_i} ≠ ∅ for every vertex and color.
    let mut sorted_vertices: Vec<&String> = pres.vertices.iter().collect();
    sorted_vertices.sort();
    sorted_vertices.dedup();
    for v in sorted_vertices {
        for c in 1..=pres.k {
            let receives = pres.edges.iter().any(|e| e.color == c && e.range == **v);
            if !receives {
                out.push(Violation::SourceVertex {
                    vertex: (*v).clone(),
                    color: c,
                });
            }
        }
    }

    out
}
