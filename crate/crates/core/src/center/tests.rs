use super::*;
use crate::fixtures::{self, SplitMix64};
use crate::ring::in_span;
use num_traits::Signed as _;
use std::sync::Arc;

fn algebra(pres: &crate::Presentation, spec: RingSpec) -> Algebra {
    Algebra::new(Arc::new(fixtures::build(pres)), spec)
}

fn algebra_permissive(pres: &crate::Presentation, spec: RingSpec) -> Algebra {
    Algebra::new(Arc::new(fixtures::build_permissive(pres)), spec)
}

fn q() -> RingSpec {
    RingSpec::Rationals
}

fn window(ghost: &[u32], cap: &[u32]) -> Window {
    Window::new(
        MultiDegree::new(ghost.to_vec()),
        MultiDegree::new(cap.to_vec()),
    )
    .unwrap()
}

fn coords(spec: RingSpec, elem: &AlgebraElement, pairs: &[(Path, Path)]) -> Vec<RingValue> {
    let map: BTreeMap<(Path, Path), RingValue> = elem
        .terms()
        .map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))
        .collect();
    pairs
        .iter()
        .map(|p| map.get(p).cloned().unwrap_or_else(|| spec.zero()))
        .collect()
}

#[test]
fn window_rejects_non_dominating_caps() {
    assert!(Window::new(MultiDegree::new(vec![2]), MultiDegree::new(vec![1])).is_err());
    assert!(Window::new(MultiDegree::new(vec![1]), MultiDegree::new(vec![1, 1])).is_err());
}

#[test]
fn window_basis_enumeration() {
    let g = fixtures::build(&fixtures::n1());
    let pairs = window_basis(&g, &window(&[1], &[2]));
    let strs: Vec<String> = pairs
        .iter()
        .map(|(a, b)| format!("({},{})", g.path_string(a), g.path_string(b)))
        .collect();
    assert_eq!(strs, vec!["(star,f)", "(f,f)", "(f.f,f)"]);

    let g = fixtures::build(&fixtures::l2());
    assert_eq!(window_basis(&g, &window(&[0], &[0])).len(), 1);

    let g = fixtures::build(&fixtures::c2());
    let pairs = window_basis(&g, &window(&[0], &[2]));
    assert_eq!(pairs.len(), 6);
    // every pair couples α with the vertex path at its source
    assert!(pairs
        .iter()
        .all(|(a, b)| b.is_vertex() && b.range() == a.source()));
}

#[test]
fn window_contains_the_identity() {
    for pres in [
        fixtures::n1(),
        fixtures::l2(),
        fixtures::c2(),
        fixtures::n2(),
    ] {
        let alg = algebra(&pres, q());
        let k = alg.graph().arity();
        let w = window(&vec![1; k], &vec![2; k]);
        let pairs = window_basis(alg.graph(), &w);
        let identity = alg.reshape(&alg.identity(), w.ghost()).unwrap();
        let v = coords(q(), &identity, &pairs);
        assert_eq!(
            v.iter().filter(|c| !c.is_zero()).count(),
            identity.term_count()
        );
    }
}

#[test]
fn center_of_the_two_loop_graph_is_scalar() {
    let alg = algebra(&fixtures::l2(), q());
    for ghost in 0..=2u32 {
        for cap in ghost..=3u32 {
            let w = window(&[ghost], &[cap]);
            let result = central_in_window(&alg, &w, 1).unwrap();
            assert_eq!(result.rank, 1, "window {w}");
            let identity =
                scale_basis_element(&alg, alg.reshape(&alg.identity(), w.ghost()).unwrap())
                    .unwrap();
            assert!(alg.equal(&result.basis[0], &identity).unwrap());
        }
    }
}

#[test]
fn center_ranks_are_ring_independent_on_l2() {
    for spec in [
        q(),
        RingSpec::PrimeField(2),
        RingSpec::PrimeField(3),
        RingSpec::Integers,
    ] {
        let alg = algebra(&fixtures::l2(), spec);
        let result = central_in_window(&alg, &window(&[1], &[2]), 1).unwrap();
        assert_eq!(result.rank, 1, "over {spec}");
    }
    // same on the two-color graph with shuffled squares
    for spec in [q(), RingSpec::PrimeField(2), RingSpec::Integers] {
        let alg = algebra(&fixtures::f2(), spec);
        let result = central_in_window(&alg, &window(&[1, 1], &[1, 1]), 1).unwrap();
        assert_eq!(result.rank, 1, "f2 over {spec}");
        let identity = scale_basis_element(
            &alg,
            alg.reshape(&alg.identity(), &MultiDegree::new(vec![1, 1]))
                .unwrap(),
        )
        .unwrap();
        assert!(alg.equal(&result.basis[0], &identity).unwrap());
    }
}

#[test]
fn three_color_windows_solve() {
    // k = 3 smoke coverage: the solver, filters and harness run end to end
    let alg = algebra(&fixtures::product_n2_l3(), q());
    let w = window(&[0, 0, 1], &[1, 1, 1]);
    let result = central_in_window(&alg, &w, 1).unwrap();
    assert!(result.rank >= 1);
    // the identity is always central; periodicity in the N^2 factor makes
    // the center larger than the scalars in suitable windows
    let report = verify_theorems(&alg, &w, 1, 2).unwrap();
    assert_eq!(report.scalar_center.verdict, Verdict::NotApplicable);
    assert!(report.scalar_center.detail.contains("periodicity"));
    for b in &result.basis {
        for (name, gen) in generators(&alg) {
            assert!(
                alg.equal(&alg.mul(b, &gen).unwrap(), &alg.mul(&gen, b).unwrap())
                    .unwrap(),
                "k=3 basis element fails to commute with {name}"
            );
        }
    }
}

#[test]
fn vertexless_graph_solves_to_nothing() {
    let pres = crate::Presentation {
        k: 1,
        vertices: vec![],
        edges: vec![],
        squares: vec![],
    };
    let alg = Algebra::new(Arc::new(fixtures::build(&pres)), q());
    let result = central_in_window(&alg, &window(&[1], &[1]), 1).unwrap();
    assert_eq!(result.rank, 0);
    let report = verify_theorems(&alg, &window(&[1], &[1]), 3, 1).unwrap();
    assert_eq!(report.scalar_center.verdict, Verdict::NotApplicable);
    assert!(report.scalar_center.detail.contains("no vertices"));
}

#[test]
fn commutative_windows_are_entirely_central() {
    let alg = algebra(&fixtures::n1(), q());
    let result = central_in_window(&alg, &window(&[1], &[2]), 1).unwrap();
    assert_eq!(result.rank, 3);
    assert_eq!(result.pair_count, 3);

    let alg = algebra(&fixtures::n2(), q());
    let result = central_in_window(&alg, &window(&[1, 1], &[2, 2]), 1).unwrap();
    assert_eq!(result.rank, result.pair_count);
    assert_eq!(result.pair_count, 9);
}

#[test]
fn periodic_two_cycle_has_a_larger_center() {
    let alg = algebra(&fixtures::c2(), q());
    let g = alg.graph();
    let w = window(&[0], &[2]);
    let result = central_in_window(&alg, &w, 1).unwrap();
    assert!(result.rank >= 2, "rank {}", result.rank);

    // z = s(e.f) + s(f.e) commutes with the generators by hand expansion
    let ef = g.canonicalize_named(&["e", "f"]).unwrap();
    let fe = g.canonicalize_named(&["f", "e"]).unwrap();
    let z = alg
        .add(&alg.path_gen(&ef).unwrap(), &alg.path_gen(&fe).unwrap())
        .unwrap();
    let se = alg.path_gen(&g.edge_path(g.edge_id("e").unwrap())).unwrap();
    let efe = alg
        .path_gen(&g.canonicalize_named(&["e", "f", "e"]).unwrap())
        .unwrap();
    assert!(alg.equal(&alg.mul(&z, &se).unwrap(), &efe).unwrap());
    assert!(alg.equal(&alg.mul(&se, &z).unwrap(), &efe).unwrap());
    assert!(check_central(&alg, &z, 1).unwrap().central);

    // and z lies in the span of the solved basis
    let pairs = window_basis(g, &w);
    let basis_coords: Vec<Vec<RingValue>> = result
        .basis
        .iter()
        .map(|b| coords(q(), b, &pairs))
        .collect();
    assert!(in_span(q(), &basis_coords, &coords(q(), &z, &pairs)));

    // the non-central element s(e) + s(f) is not in the span
    let sf = alg.path_gen(&g.edge_path(g.edge_id("f").unwrap())).unwrap();
    let not_central = alg.add(&se, &sf).unwrap();
    assert!(!check_central(&alg, &not_central, 1).unwrap().central);
    assert!(!in_span(
        q(),
        &basis_coords,
        &coords(q(), &not_central, &pairs)
    ));
}

#[test]
fn solver_basis_elements_commute_with_every_generator() {
    // re-verified through the algebra, independent of the matrix assembly
    for pres in [
        fixtures::l2(),
        fixtures::c2(),
        fixtures::n2(),
        fixtures::d2(),
    ] {
        let alg = algebra(&pres, q());
        let k = alg.graph().arity();
        let result = central_in_window(&alg, &window(&vec![1; k], &vec![2; k]), 1).unwrap();
        for b in &result.basis {
            for (name, gen) in generators(&alg) {
                let xg = alg.mul(b, &gen).unwrap();
                let gx = alg.mul(&gen, b).unwrap();
                assert!(
                    alg.equal(&xg, &gx).unwrap(),
                    "basis element fails to commute with {name} on {pres:?}"
                );
            }
        }
    }
}

#[test]
fn random_elements_outside_the_kernel_fail_commutation() {
    let mut rng = SplitMix64::new(4242);
    let alg = algebra(&fixtures::c2(), q());
    let w = window(&[0], &[2]);
    let pairs = window_basis(alg.graph(), &w);
    let result = central_in_window(&alg, &w, 1).unwrap();
    let basis_coords: Vec<Vec<RingValue>> = result
        .basis
        .iter()
        .map(|b| coords(q(), b, &pairs))
        .collect();
    let mut seen_outside = 0;
    for _ in 0..30 {
        let vec: Vec<RingValue> = (0..pairs.len())
            .map(|_| q().from_integer(rng.below(5) as i64 - 2))
            .collect();
        if vec.iter().all(|c| c.is_zero()) {
            continue;
        }
        let elem = alg
            .from_terms(
                vec.iter()
                    .zip(&pairs)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, (a, b))| (a.clone(), b.clone(), c.clone())),
            )
            .unwrap();
        let central = check_central(&alg, &elem, 1).unwrap().central;
        let inside = in_span(q(), &basis_coords, &coords(q(), &elem, &pairs));
        assert_eq!(central, inside);
        if !inside {
            seen_outside += 1;
        }
    }
    assert!(seen_outside > 0, "sampling never left the center");
}

#[test]
fn center_grows_consistently_with_the_window() {
    // w ≤ w′ with cap growth at least ghost growth: reshaped basis elements
    // stay in the larger window's span
    let alg = algebra(&fixtures::c2(), q());
    let small = window(&[0], &[1]);
    let large = window(&[1], &[2]);
    let small_result = central_in_window(&alg, &small, 1).unwrap();
    let large_result = central_in_window(&alg, &large, 1).unwrap();
    let large_pairs = window_basis(alg.graph(), &large);
    let large_coords: Vec<Vec<RingValue>> = large_result
        .basis
        .iter()
        .map(|b| coords(q(), b, &large_pairs))
        .collect();
    for b in &small_result.basis {
        let lifted = alg.reshape(b, large.ghost()).unwrap();
        assert!(in_span(
            q(),
            &large_coords,
            &coords(q(), &lifted, &large_pairs)
        ));
    }
}

#[test]
fn filters_pass_on_central_elements_and_catch_corner_idempotents() {
    let alg = algebra(&fixtures::c2(), q());
    let g = alg.graph();

    let identity = alg.identity();
    let report = central_filters(&alg, &identity).unwrap();
    assert!(report.all_pass());
    assert!(report.ghost_zero_degenerate);

    // p(u) fails the absorbing-range-set filter: W = {u} but the edge f
    // leaves u for v
    let pu = alg.vertex_idempotent(g.vertex_id("u").unwrap());
    let report = central_filters(&alg, &pu).unwrap();
    assert!(!report.range_set_absorbing);
    assert!(!report.all_pass());
    // and p(u) is indeed non-central: p(u)·s(e) = s(e) but s(e)·p(u) = 0
    let se = alg.path_gen(&g.edge_path(g.edge_id("e").unwrap())).unwrap();
    assert!(alg.equal(&alg.mul(&pu, &se).unwrap(), &se).unwrap());
    assert!(alg.mul(&se, &pu).unwrap().is_zero());
    assert!(!check_central(&alg, &pu, 1).unwrap().central);
}

#[test]
fn filters_are_necessary_not_sufficient() {
    // s(a) on the two-loop graph passes every filter but is not central
    let alg = algebra(&fixtures::l2(), q());
    let g = alg.graph();
    let sa = alg.path_gen(&g.edge_path(g.edge_id("a").unwrap())).unwrap();
    let report = central_filters(&alg, &sa).unwrap();
    assert!(report.all_pass());
    assert!(!check_central(&alg, &sa, 1).unwrap().central);
}

#[test]
fn filters_require_nonzero_normalized_input() {
    let alg = algebra(&fixtures::l2(), q());
    assert_eq!(
        central_filters(&alg, &alg.zero()).unwrap_err(),
        CenterError::ZeroElement
    );
    // mixed ghost degrees are rejected
    let g = alg.graph();
    let a = g.edge_path(g.edge_id("a").unwrap());
    let mixed = alg
        .add(
            &alg.identity(),
            &alg.mul(&alg.path_gen(&a).unwrap(), &alg.ghost_gen(&a).unwrap())
                .unwrap(),
        )
        .unwrap();
    assert_eq!(
        central_filters(&alg, &mixed).unwrap_err(),
        CenterError::NotNormalized
    );
}

#[test]
fn diagnostics_flag_diagonal_and_coverage() {
    let alg = algebra(&fixtures::l2(), q());
    let result = central_in_window(&alg, &window(&[1], &[2]), 1).unwrap();
    let diag = diagnostics(&alg, &result);
    assert_eq!(diag.len(), 1);
    assert!(diag[0].diagonal);
    assert!(diag[0].ranges_cover_all);
    assert_eq!(diag[0].uniform_coefficient, Some(true));

    // the periodic 2-cycle has non-diagonal central elements
    let alg = algebra(&fixtures::c2(), q());
    let result = central_in_window(&alg, &window(&[0], &[2]), 1).unwrap();
    let diag = diagnostics(&alg, &result);
    assert!(diag.iter().any(|d| !d.diagonal));
}

#[test]
fn harness_verifies_the_scalar_center_on_l2() {
    let alg = algebra(&fixtures::l2(), q());
    let report = verify_theorems(&alg, &window(&[1], &[3]), 3, 1).unwrap();
    assert_eq!(report.scalar_center.verdict, Verdict::Verified);
    assert_eq!(
        report.commutative_full_window.verdict,
        Verdict::NotApplicable
    );
    assert_eq!(report.acyclic_zero_center.verdict, Verdict::NotApplicable);
}

#[test]
fn harness_verifies_commutative_full_windows_on_n2() {
    let alg = algebra(&fixtures::n2(), q());
    let report = verify_theorems(&alg, &window(&[1, 1], &[1, 1]), 2, 1).unwrap();
    assert_eq!(report.commutative_full_window.verdict, Verdict::Verified);
    // the graph is periodic, so no scalar-center claim is made
    assert_eq!(report.scalar_center.verdict, Verdict::NotApplicable);
    assert!(report.scalar_center.detail.contains("hypotheses unmet"));
}

#[test]
fn harness_never_claims_scalar_center_on_the_periodic_cycle() {
    let alg = algebra(&fixtures::c2(), q());
    let report = verify_theorems(&alg, &window(&[1], &[2]), 3, 1).unwrap();
    assert_eq!(report.scalar_center.verdict, Verdict::NotApplicable);
    assert!(report.scalar_center.detail.contains("periodicity at u"));
    assert!(report.windows.iter().any(|w| w.rank > 1));
}

#[test]
fn acyclic_windows_solve_to_zero_in_permissive_mode() {
    for pres in [fixtures::acyclic_a2(), fixtures::acyclic_chain3()] {
        let alg = algebra_permissive(&pres, q());
        for ghost in 0..=2u32 {
            for cap in ghost..=3u32 {
                let result = central_in_window(&alg, &window(&[ghost], &[cap]), 1).unwrap();
                assert_eq!(result.rank, 0, "window ghost={ghost} cap={cap} on {pres:?}");
                assert_eq!(result.used_pair_count, 0);
            }
        }
        let report = verify_theorems(&alg, &window(&[1], &[2]), 3, 1).unwrap();
        assert_eq!(report.acyclic_zero_center.verdict, Verdict::Verified);
        assert_eq!(report.scalar_center.verdict, Verdict::NotApplicable);
    }
}

#[test]
fn bounded_probe_hypotheses_stay_inconclusive() {
    // f2 is cofinal and the probe finds no periodicity, but a bounded probe
    // can never upgrade the scalar-center claim beyond INCONCLUSIVE
    let alg = algebra(&fixtures::f2(), q());
    let report = verify_theorems(&alg, &window(&[1, 1], &[1, 1]), 2, 1).unwrap();
    assert_eq!(report.scalar_center.verdict, Verdict::Inconclusive);
    assert!(report.scalar_center.detail.contains("bounded-probed"));
    assert!(report.windows.iter().all(|w| w.scalar));
}

/// Brute-force reference solver: one dense commutator matrix over the whole
/// window (no grade decomposition, no chunked intersection), kernel taken in
/// one shot.
fn naive_center_basis(alg: &Algebra, w: &Window) -> Vec<Vec<RingValue>> {
    let g = alg.graph();
    let spec = alg.spec();
    let pairs = window_basis(g, w);
    let gens = generators(alg);
    let mut all_rows: Vec<Vec<RingValue>> = Vec::new();
    for (_, gen) in &gens {
        let comms: Vec<AlgebraElement> = pairs
            .iter()
            .map(|(a, b)| {
                let x = alg
                    .from_terms([(a.clone(), b.clone(), spec.one())])
                    .unwrap();
                alg.sub(&alg.mul(&x, gen).unwrap(), &alg.mul(gen, &x).unwrap())
                    .unwrap()
            })
            .collect();
        let mut m_block = MultiDegree::zero(g.arity());
        for c in &comms {
            m_block = m_block.join(&c.ghost_max(g.arity()));
        }
        let reshaped: Vec<AlgebraElement> = comms
            .iter()
            .map(|c| alg.reshape(c, &m_block).unwrap())
            .collect();
        let mut keys: Vec<(Path, Path)> = Vec::new();
        for r in &reshaped {
            for (a, b, _) in r.terms() {
                let key = (a.clone(), b.clone());
                if !keys.contains(&key) {
                    keys.push(key);
                }
            }
        }
        keys.sort();
        for key in keys {
            let row: Vec<RingValue> = reshaped
                .iter()
                .map(|r| {
                    r.terms()
                        .find(|(a, b, _)| (*a, *b) == (&key.0, &key.1))
                        .map(|(_, _, v)| v.clone())
                        .unwrap_or_else(|| spec.zero())
                })
                .collect();
            all_rows.push(row);
        }
    }
    let mut mat = Matrix::zero(spec, all_rows.len(), pairs.len());
    for (r, row) in all_rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            mat.set(r, c, v.clone());
        }
    }
    mat.kernel()
}

#[test]
fn optimized_solver_matches_the_naive_dense_solver() {
    let mut cases = vec![
        (fixtures::l2(), vec![1], vec![2]),
        (fixtures::c2(), vec![0], vec![2]),
        (fixtures::c2(), vec![1], vec![2]),
        (fixtures::n2(), vec![1, 1], vec![1, 1]),
        (fixtures::d2(), vec![1], vec![2]),
    ];
    let mut rng = SplitMix64::new(0xD1CE);
    for _ in 0..5 {
        let nb = 1 + rng.below(2);
        let nr = 1 + rng.below(2);
        cases.push((
            fixtures::random_one_vertex_2graph(&mut rng, nb, nr),
            vec![1, 1],
            vec![1, 1],
        ));
    }
    for (pres, ghost, cap) in cases {
        let alg = algebra(&pres, q());
        let w = window(&ghost, &cap);
        let pairs = window_basis(alg.graph(), &w);
        let fast = central_in_window(&alg, &w, 1).unwrap();
        let slow = naive_center_basis(&alg, &w);
        assert_eq!(fast.rank, slow.len(), "rank mismatch on {pres:?} {w}");
        // span equality in both directions
        let fast_coords: Vec<Vec<RingValue>> =
            fast.basis.iter().map(|b| coords(q(), b, &pairs)).collect();
        for v in &slow {
            assert!(in_span(q(), &fast_coords, v));
        }
        for v in &fast_coords {
            assert!(in_span(q(), &slow, v));
        }
    }
}

#[test]
fn solver_is_thread_count_independent() {
    let alg = algebra(&fixtures::c2(), q());
    let w = window(&[1], &[2]);
    let one = central_in_window(&alg, &w, 1).unwrap();
    for threads in [2, 4] {
        let other = central_in_window(&alg, &w, threads).unwrap();
        assert_eq!(one.rank, other.rank);
        assert_eq!(one.basis, other.basis);
    }
}

#[test]
fn integer_basis_vectors_are_primitive() {
    let alg = algebra(&fixtures::c2(), RingSpec::Integers);
    let result = central_in_window(&alg, &window(&[0], &[2]), 1).unwrap();
    assert!(result.rank >= 2);
    for b in &result.basis {
        let mut content = BigInt::zero();
        let mut first_sign_positive = None;
        for (_, _, c) in b.terms() {
            if let RingValue::Int(n) = c {
                content = content.gcd(n);
                if first_sign_positive.is_none() {
                    first_sign_positive = Some(!n.is_negative());
                }
            }
        }
        assert!(content.is_one());
        assert_eq!(first_sign_positive, Some(true));
    }
}
