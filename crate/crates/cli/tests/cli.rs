//! End-to-end coverage of the command surface through `run`, including the
//! exit-code contract and round-tripping of emitted element expressions.

use kp_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn kp(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn validate_reports_valid_and_invalid() {
    let (code, out, _) = kp(&["validate", &fixture("g_n2.kg")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "valid\n");

    let (code, out, _) = kp(&["validate", &fixture("acyclic_a2.kg")]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.starts_with("invalid (1 violations)"));
    assert!(out.contains("no incoming edges"));
}

#[test]
fn paths_lists_in_deterministic_order() {
    let (code, out, _) = kp(&[
        "paths",
        &fixture("g_l2.kg"),
        "--from",
        "star",
        "--degree",
        "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "a.a\na.b\nb.a\nb.b\n");

    let (code, out, _) = kp(&["paths", &fixture("g_c2.kg"), "--from", "u", "--degree", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "e.f.e\n");
}

#[test]
fn mul_applies_the_defining_relations() {
    let (code, out, _) = kp(&["mul", &fixture("g_n1.kg"), "--ring", "Q", "st(f)", "s(f)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1*p(star)\n");

    // distinct loops of equal degree annihilate
    let (code, out, _) = kp(&["mul", &fixture("g_l2.kg"), "--ring", "Q", "st(a)", "s(b)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "0\n");
}

#[test]
fn normalize_reshapes_to_the_common_ghost_degree() {
    let (code, out, _) = kp(&[
        "normalize",
        &fixture("g_l2.kg"),
        "--ring",
        "Q",
        "p(star) - s(a)*st(a)",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1*s(b)*st(b)\n");
}

#[test]
fn props_report_has_fixed_key_order() {
    let (code, out, _) = kp(&["props", &fixture("g_c2.kg")]);
    assert_eq!(code, EXIT_OK);
    let expected = "\
k=1
vertices=2
edges=2
has_closed_path=true
cofinal=true
aperiodicity=periodic-witness vertex=u m=(2) n=(0)
aperiodicity_mode=exact-entrance
aperiodicity_bound=unused
commutative_graph=false
components=1
component_1={u,v}
";
    assert_eq!(out, expected);
}

#[test]
fn props_in_permissive_mode_reports_undefined_cofinality() {
    let (code, out, _) = kp(&["props", &fixture("acyclic_a2.kg"), "--permissive"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("has_closed_path=false"));
    assert!(out.contains("cofinal=undefined (graph has sources)"));
}

#[test]
fn center_check_flags_non_central_elements() {
    let (code, out, _) = kp(&[
        "center",
        &fixture("g_c2.kg"),
        "--ring",
        "Q",
        "--ghost",
        "0",
        "--cap",
        "2",
        "--check",
        "s(e.f) + s(f.e)",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check: central=true"));

    let (code, out, _) = kp(&[
        "center",
        &fixture("g_c2.kg"),
        "--ring",
        "Q",
        "--ghost",
        "0",
        "--cap",
        "2",
        "--check",
        "p(u)",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check: central=false"));
    assert!(out.contains("check: violating_generator="));
    assert!(out.contains("absorbing=FAIL"));
}

#[test]
fn center_over_each_ring() {
    for ring in ["Q", "Fp:2", "Fp:3", "Z"] {
        let (code, out, _) = kp(&[
            "center",
            &fixture("g_l2.kg"),
            "--ring",
            ring,
            "--ghost",
            "1",
            "--cap",
            "2",
        ]);
        assert_eq!(code, EXIT_OK, "ring {ring}");
        assert!(out.contains("rank=1"), "ring {ring}: {out}");
        assert!(out.contains("basis_1=1*s(a)*st(a) + 1*s(b)*st(b)"));
    }
}

#[test]
fn emitted_elements_reparse_to_equal_elements() {
    use kp_core::algebra::{parse_element, Algebra};
    use kp_core::fixtures::{self, SplitMix64};
    use kp_core::ring::RingSpec;
    use std::sync::Arc;

    // whatever `mul` prints must parse back to the same element
    let mut rng = SplitMix64::new(99);
    for pres in [fixtures::l2(), fixtures::c2(), fixtures::n2()] {
        for spec in [
            RingSpec::Rationals,
            RingSpec::PrimeField(5),
            RingSpec::Integers,
        ] {
            let alg = Algebra::new(Arc::new(fixtures::build(&pres)), spec);
            let pool = fixtures::path_pool(&alg, 2);
            for _ in 0..10 {
                let x = fixtures::random_element(&alg, &mut rng, &pool, 3);
                let y = fixtures::random_element(&alg, &mut rng, &pool, 3);
                let prod = alg.normalize(&alg.mul(&x, &y).unwrap()).unwrap();
                let text = alg.element_string(&prod);
                let back = parse_element(&alg, &text).unwrap();
                assert_eq!(back, prod, "round trip failed on `{text}`");
            }
        }
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // parse error: malformed graph file
    let dir = std::env::temp_dir().join("kp_cli_exit_codes");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.kg");
    std::fs::write(&bad, "k 1\nvortex star\n").unwrap();
    let (code, _, err) = kp(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("line 2, col 1"));

    // parse error: unknown flag
    let (code, _, err) = kp(&["props", &fixture("g_l2.kg"), "--frobnicate", "1"]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("unknown flag"));

    // parse error: unknown command
    let (code, _, _) = kp(&["frobnicate"]);
    assert_eq!(code, EXIT_PARSE);

    // parse error: degree vector of the wrong length
    let (code, _, err) = kp(&[
        "paths",
        &fixture("g_n2.kg"),
        "--from",
        "star",
        "--degree",
        "1",
    ]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("expected k=2"));

    // parse error: bad element expression, with its column
    let (code, _, err) = kp(&["mul", &fixture("g_n1.kg"), "--ring", "Q", "s(f)", "s(g)"]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("col 3"));

    // parse error: composite modulus
    let (code, _, err) = kp(&[
        "center",
        &fixture("g_l2.kg"),
        "--ring",
        "Fp:4",
        "--ghost",
        "1",
        "--cap",
        "1",
    ]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("not prime"));

    // domain error: graph with sources without --permissive
    let (code, _, err) = kp(&["props", &fixture("acyclic_a2.kg")]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("not a valid k-graph"));

    // domain error: missing file
    let (code, _, _) = kp(&["props", "no_such_file.kg"]);
    assert_eq!(code, EXIT_DOMAIN);

    // domain error: unknown vertex
    let (code, _, err) = kp(&[
        "paths",
        &fixture("g_l2.kg"),
        "--from",
        "ghost",
        "--degree",
        "1",
    ]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("unknown vertex"));

    // domain error: cap does not dominate ghost
    let (code, _, err) = kp(&[
        "center",
        &fixture("g_l2.kg"),
        "--ring",
        "Q",
        "--ghost",
        "2",
        "--cap",
        "1",
    ]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("dominate"));

    // help goes to stdout with success
    let (code, out, _) = kp(&["help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("GRAPH FILE GRAMMAR"));
}

#[test]
fn report_covers_all_sections() {
    let (code, out, _) = kp(&["report", &fixture("g_n2.kg")]);
    assert_eq!(code, EXIT_OK);
    for section in ["[graph]", "[props]", "[center ring=Q", "[verdicts]"] {
        assert!(out.contains(section), "missing {section} in:\n{out}");
    }
    assert!(out.contains("claim commutative_full_window: VERIFIED"));
}
