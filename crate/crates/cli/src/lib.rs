//! Command-line front end: parse graph files and element expressions,
//! dispatch to the engine, emit stable text reports.
//!
//! Exit codes: 0 on success, 1 on domain errors (failed preconditions,
//! validation failures), 2 on parse errors (files, expressions, flags).
//! All reports are plain text with a fixed field order, byte-identical
//! across runs and thread counts.

use kp_core::algebra::{parse_element, Algebra, AlgebraElement};
use kp_core::analysis::{AperiodicityMode, AperiodicityVerdict, PropertyReport};
use kp_core::center::{
    central_in_window, check_central, diagnostics, verify_theorems, CenterResult, FilterReport,
    TheoremReport, Window,
};
use kp_core::ring::RingSpec;
use kp_core::{BuildMode, KGraph, MultiDegree, Presentation};
use std::fmt::Write as _;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

const USAGE: &str = "\
kp — exact engine for finitely presented k-graphs and their Kumjian-Pask algebras

USAGE
  kp <command> <graph-file> [flags] [args]

COMMANDS
  validate <file>                       check the presentation; list violations
  paths <file> --from V --degree N      list the paths with range V and degree N
  mul <file> --ring R \"E1\" \"E2\"         normalized product of two elements
  normalize <file> --ring R \"E\"         canonical normal form of an element
  props <file>                          graph property report
  center <file> --ring R --ghost M --cap D
                                        exact center of the window (ghost M, cap D)
  report <file>                         validation, properties, centers, verdicts
  help                                  this text

FLAGS
  --ring Q | Fp:<p> | Z      coefficient ring (p prime)
  --from <vertex-id>         range vertex for `paths`
  --degree n1,...,nk         comma-separated degree vector of length k
  --ghost m1,...,mk          ghost degree (all beta degrees) of the window
  --cap d1,...,dk            cap on alpha degrees; must dominate the ghost
  --check \"E\"                test an element for centrality (with `center`)
  --verify                   run the theorem harness (with `center`)
  --aperiodicity-bound B     witness-search bound for k >= 2 (default 3)
  --threads N                worker threads (default 1; output is identical
                             for every thread count)
  --permissive               admit graphs with sources (e.g. acyclic graphs)

GRAPH FILE GRAMMAR (one declaration per line, `#` comments, 7-bit text)
  k <int>
  vertex <id>
  edge <id> <color> <range-id> <source-id>
  square <g> <h> = <h2> <g2>      # g∘h = h2∘g2, color(g)=color(g2) < color(h)=color(h2)
  ids match [A-Za-z0-9_]+; unknown directives are errors

ELEMENT EXPRESSION GRAMMAR (whitespace insignificant)
  element := '0' | ['-'] term (('+'|'-') term)*
  term    := [coeff '*']? factor ('*' factor)*
  factor  := 'p(' vertex ')' | 's(' path ')' | 'st(' path ')'
  path    := id ('.' id)*
  coeff   := integer | integer '/' integer      # interpreted in the ring

EXIT CODES
  0 success, 1 domain error, 2 parse error
";

/// A domain (exit 1) or parse (exit 2) failure, with its message.
struct Failure {
    code: i32,
    msg: String,
}

fn parse_fail(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        msg: msg.into(),
    }
}

fn domain_fail(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        msg: msg.into(),
    }
}

/// Parsed command line: positionals plus recognized flags.
struct Args {
    positionals: Vec<String>,
    ring: Option<String>,
    from: Option<String>,
    degree: Option<String>,
    ghost: Option<String>,
    cap: Option<String>,
    check: Option<String>,
    verify: bool,
    aperiodicity_bound: u32,
    threads: usize,
    permissive: bool,
}

fn parse_args(tokens: &[String]) -> Result<Args, Failure> {
    let mut args = Args {
        positionals: Vec::new(),
        ring: None,
        from: None,
        degree: None,
        ghost: None,
        cap: None,
        check: None,
        verify: false,
        aperiodicity_bound: 3,
        threads: 1,
        permissive: false,
    };
    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        let mut value = |name: &str| -> Result<String, Failure> {
            i += 1;
            tokens
                .get(i)
                .cloned()
                .ok_or_else(|| parse_fail(format!("flag {name} expects a value")))
        };
        match tok.as_str() {
            "--ring" => args.ring = Some(value("--ring")?),
            "--from" => args.from = Some(value("--from")?),
            "--degree" => args.degree = Some(value("--degree")?),
            "--ghost" => args.ghost = Some(value("--ghost")?),
            "--cap" => args.cap = Some(value("--cap")?),
            "--check" => args.check = Some(value("--check")?),
            "--verify" => args.verify = true,
            "--permissive" => args.permissive = true,
            "--aperiodicity-bound" => {
                let v = value("--aperiodicity-bound")?;
                args.aperiodicity_bound = v
                    .parse()
                    .map_err(|_| parse_fail(format!("invalid bound `{v}`")))?;
            }
            "--threads" => {
                let v = value("--threads")?;
                let n: usize = v
                    .parse()
                    .map_err(|_| parse_fail(format!("invalid thread count `{v}`")))?;
                if n == 0 {
                    return Err(parse_fail("thread count must be at least 1"));
                }
                args.threads = n;
            }
            other if other.starts_with("--") => {
                return Err(parse_fail(format!("unknown flag `{other}`")));
            }
            _ => args.positionals.push(tok.clone()),
        }
        i += 1;
    }
    Ok(args)
}

fn load_graph(path: &str, mode: BuildMode) -> Result<Arc<KGraph>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| domain_fail(format!("cannot read `{path}`: {e}")))?;
    let pres: Presentation =
        kp_core::parse_graph(&text).map_err(|e| parse_fail(format!("{path}: {e}")))?;
    match KGraph::build(&pres, mode) {
        Ok(g) => Ok(Arc::new(g)),
        Err(violations) => {
            let mut msg = format!("`{path}` is not a valid k-graph:");
            for v in violations {
                let _ = write!(msg, "\n  {v}");
            }
            Err(Failure {
                code: EXIT_DOMAIN,
                msg,
            })
        }
    }
}

fn ring_spec(args: &Args) -> Result<RingSpec, Failure> {
    match &args.ring {
        Some(s) => RingSpec::parse(s).map_err(|e| parse_fail(e.to_string())),
        None => Ok(RingSpec::Rationals),
    }
}

fn degree_vector(text: &str, k: usize, what: &str) -> Result<MultiDegree, Failure> {
    let coords: Result<Vec<u32>, _> = text.split(',').map(|c| c.trim().parse()).collect();
    let coords = coords.map_err(|_| parse_fail(format!("invalid {what} vector `{text}`")))?;
    if coords.len() != k {
        return Err(parse_fail(format!(
            "{what} vector `{text}` has length {}, expected k={k}",
            coords.len()
        )));
    }
    Ok(MultiDegree::new(coords))
}

fn build_mode(args: &Args) -> BuildMode {
    if args.permissive {
        BuildMode::Permissive
    } else {
        BuildMode::Strict
    }
}

fn expect_file<'a>(args: &'a Args, cmd: &str) -> Result<&'a str, Failure> {
    match args.positionals.len() {
        0 => Err(parse_fail(format!("{cmd}: missing graph file"))),
        _ => Ok(&args.positionals[0]),
    }
}

fn render_filters(f: &FilterReport) -> String {
    let yn = |b: bool| if b { "pass" } else { "FAIL" };
    format!(
        "range_match={} absorbing={} source_cover={} beta_chain={} ghost0_degenerate={}",
        yn(f.range_match),
        yn(f.range_set_absorbing),
        yn(f.source_covered),
        yn(f.beta_closed_chain),
        if f.ghost_zero_degenerate { "yes" } else { "no" }
    )
}

fn render_properties(g: &KGraph, props: &PropertyReport, out: &mut String) {
    let _ = writeln!(out, "k={}", g.arity());
    let _ = writeln!(out, "vertices={}", g.vertex_count());
    let _ = writeln!(out, "edges={}", g.edge_count());
    let _ = writeln!(out, "has_closed_path={}", props.has_closed_path);
    let _ = writeln!(
        out,
        "cofinal={}",
        match props.cofinal {
            Some(b) => b.to_string(),
            None => "undefined (graph has sources)".to_string(),
        }
    );
    let verdict = match &props.aperiodicity.verdict {
        AperiodicityVerdict::AperiodicExact => "aperiodic".to_string(),
        AperiodicityVerdict::NoPeriodicityUpToBound(b) => {
            format!("no-periodicity-up-to-bound-{b}")
        }
        AperiodicityVerdict::PeriodicWitness { vertex, m, n } => format!(
            "periodic-witness vertex={} m=({m}) n=({n})",
            g.vertex_name(*vertex)
        ),
    };
    let _ = writeln!(out, "aperiodicity={verdict}");
    let (mode, bound) = match props.aperiodicity.mode {
        AperiodicityMode::ExactEntrance => ("exact-entrance".to_string(), "unused".to_string()),
        AperiodicityMode::BoundedProbe(b) => ("bounded-probe".to_string(), b.to_string()),
    };
    let _ = writeln!(out, "aperiodicity_mode={mode}");
    let _ = writeln!(out, "aperiodicity_bound={bound}");
    let _ = writeln!(out, "commutative_graph={}", props.commutative_graph);
    let _ = writeln!(out, "components={}", props.components.len());
    for (i, comp) in props.components.iter().enumerate() {
        let names: Vec<&str> = comp.iter().map(|v| g.vertex_name(*v)).collect();
        let _ = writeln!(out, "component_{}={{{}}}", i + 1, names.join(","));
    }
}

fn render_center_result(alg: &Algebra, result: &CenterResult, out: &mut String) {
    let _ = writeln!(out, "window: {}", result.window);
    let _ = writeln!(out, "ring={}", result.spec);
    let _ = writeln!(out, "pairs={}", result.pair_count);
    let _ = writeln!(out, "pairs_used={}", result.used_pair_count);
    let _ = writeln!(out, "rank={}", result.rank);
    let diag = diagnostics(alg, result);
    for (i, b) in result.basis.iter().enumerate() {
        let _ = writeln!(out, "basis_{}={}", i + 1, alg.element_string(b));
        if let Ok(f) = kp_core::center::central_filters(alg, b) {
            let _ = writeln!(out, "filters_{}={}", i + 1, render_filters(&f));
        }
        let d = &diag[i];
        let _ = writeln!(
            out,
            "diagnostics_{}=diagonal={} ranges_cover={} uniform={}",
            i + 1,
            if d.diagonal { "yes" } else { "no" },
            if d.ranges_cover_all { "yes" } else { "no" },
            match d.uniform_coefficient {
                Some(true) => "yes",
                Some(false) => "no",
                None => "n/a",
            }
        );
    }
}

fn render_verdicts(report: &TheoremReport, out: &mut String) {
    let _ = writeln!(
        out,
        "claim scalar_center: {} ({})",
        report.scalar_center.verdict, report.scalar_center.detail
    );
    let _ = writeln!(
        out,
        "claim commutative_full_window: {} ({})",
        report.commutative_full_window.verdict, report.commutative_full_window.detail
    );
    let _ = writeln!(
        out,
        "claim acyclic_zero_center: {} ({})",
        report.acyclic_zero_center.verdict, report.acyclic_zero_center.detail
    );
    for w in &report.windows {
        let _ = writeln!(
            out,
            "window {}: rank={} pairs={} scalar={} full={} filters={} diagonal={} cover={}",
            w.window,
            w.rank,
            w.used_pair_count,
            if w.scalar { "yes" } else { "no" },
            if w.full { "yes" } else { "no" },
            if w.filters_pass { "pass" } else { "FAIL" },
            if w.all_diagonal { "yes" } else { "no" },
            if w.all_ranges_cover { "yes" } else { "no" },
        );
    }
}

fn cmd_validate(args: &Args) -> Result<(String, i32), Failure> {
    let path = expect_file(args, "validate")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| domain_fail(format!("cannot read `{path}`: {e}")))?;
    let pres = kp_core::parse_graph(&text).map_err(|e| parse_fail(format!("{path}: {e}")))?;
    let violations = kp_core::validate(&pres);
    let mut out = String::new();
    if violations.is_empty() {
        let _ = writeln!(out, "valid");
        Ok((out, EXIT_OK))
    } else {
        let _ = writeln!(out, "invalid ({} violations)", violations.len());
        for v in &violations {
            let _ = writeln!(out, "  {v}");
        }
        Ok((out, EXIT_DOMAIN))
    }
}

fn cmd_paths(args: &Args) -> Result<(String, i32), Failure> {
    let path = expect_file(args, "paths")?;
    let g = load_graph(path, build_mode(args))?;
    let from = args
        .from
        .as_ref()
        .ok_or_else(|| parse_fail("paths: missing --from"))?;
    let v = g
        .vertex_id(from)
        .ok_or_else(|| domain_fail(format!("unknown vertex id `{from}`")))?;
    let degree_text = args
        .degree
        .as_ref()
        .ok_or_else(|| parse_fail("paths: missing --degree"))?;
    let n = degree_vector(degree_text, g.arity(), "degree")?;
    let mut out = String::new();
    for p in g.paths_from(v, &n) {
        let _ = writeln!(out, "{}", g.path_string(&p));
    }
    Ok((out, EXIT_OK))
}

fn element_command(args: &Args, cmd: &str) -> Result<(Algebra, Vec<AlgebraElement>), Failure> {
    let path = expect_file(args, cmd)?;
    let g = load_graph(path, build_mode(args))?;
    let spec = ring_spec(args)?;
    let alg = Algebra::new(g, spec);
    let exprs = &args.positionals[1..];
    let mut elems = Vec::new();
    for text in exprs {
        let e =
            parse_element(&alg, text).map_err(|err| parse_fail(format!("in `{text}`: {err}")))?;
        elems.push(e);
    }
    Ok((alg, elems))
}

fn cmd_mul(args: &Args) -> Result<(String, i32), Failure> {
    let (alg, elems) = element_command(args, "mul")?;
    if elems.len() != 2 {
        return Err(parse_fail(format!(
            "mul: expected exactly two element expressions, got {}",
            elems.len()
        )));
    }
    let product = alg
        .mul(&elems[0], &elems[1])
        .and_then(|p| alg.normalize(&p))
        .map_err(|e| domain_fail(e.to_string()))?;
    Ok((format!("{}\n", alg.element_string(&product)), EXIT_OK))
}

fn cmd_normalize(args: &Args) -> Result<(String, i32), Failure> {
    let (alg, elems) = element_command(args, "normalize")?;
    if elems.len() != 1 {
        return Err(parse_fail(format!(
            "normalize: expected exactly one element expression, got {}",
            elems.len()
        )));
    }
    let n = alg
        .normalize(&elems[0])
        .map_err(|e| domain_fail(e.to_string()))?;
    Ok((format!("{}\n", alg.element_string(&n)), EXIT_OK))
}

fn cmd_props(args: &Args) -> Result<(String, i32), Failure> {
    let path = expect_file(args, "props")?;
    let g = load_graph(path, build_mode(args))?;
    let props = kp_core::analysis::properties(&g, args.aperiodicity_bound, args.threads);
    let mut out = String::new();
    render_properties(&g, &props, &mut out);
    Ok((out, EXIT_OK))
}

fn window_from_args(args: &Args, k: usize) -> Result<Window, Failure> {
    let ghost_text = args
        .ghost
        .as_ref()
        .ok_or_else(|| parse_fail("center: missing --ghost"))?;
    let cap_text = args
        .cap
        .as_ref()
        .ok_or_else(|| parse_fail("center: missing --cap"))?;
    let ghost = degree_vector(ghost_text, k, "ghost")?;
    let cap = degree_vector(cap_text, k, "cap")?;
    Window::new(ghost, cap).map_err(|e| domain_fail(e.to_string()))
}

fn cmd_center(args: &Args) -> Result<(String, i32), Failure> {
    let path = expect_file(args, "center")?;
    let g = load_graph(path, build_mode(args))?;
    let spec = ring_spec(args)?;
    let alg = Algebra::new(g, spec);
    let w = window_from_args(args, alg.graph().arity())?;
    let mut out = String::new();

    let result =
        central_in_window(&alg, &w, args.threads).map_err(|e| domain_fail(e.to_string()))?;
    render_center_result(&alg, &result, &mut out);

    if let Some(expr) = &args.check {
        let elem =
            parse_element(&alg, expr).map_err(|err| parse_fail(format!("in `{expr}`: {err}")))?;
        let check =
            check_central(&alg, &elem, args.threads).map_err(|e| domain_fail(e.to_string()))?;
        let _ = writeln!(out, "check: element={}", alg.element_string(&elem));
        let _ = writeln!(out, "check: central={}", check.central);
        if let Some(gen) = &check.violating_generator {
            let _ = writeln!(out, "check: violating_generator={gen}");
        }
        if let Some(f) = &check.filters {
            let _ = writeln!(out, "check: filters={}", render_filters(f));
        }
    }

    if args.verify {
        let report = verify_theorems(&alg, &w, args.aperiodicity_bound, args.threads)
            .map_err(|e| domain_fail(e.to_string()))?;
        render_verdicts(&report, &mut out);
    }
    Ok((out, EXIT_OK))
}

fn cmd_report(args: &Args) -> Result<(String, i32), Failure> {
    let path = expect_file(args, "report")?;
    let g = load_graph(path, build_mode(args))?;
    let spec = ring_spec(args)?;
    let alg = Algebra::new(Arc::clone(&g), spec);
    let k = g.arity();
    let ghost = match &args.ghost {
        Some(t) => degree_vector(t, k, "ghost")?,
        None => MultiDegree::uniform(k, 1),
    };
    let cap = match &args.cap {
        Some(t) => degree_vector(t, k, "cap")?,
        None => ghost.clone(),
    };
    let max_window = Window::new(ghost, cap).map_err(|e| domain_fail(e.to_string()))?;

    let mut out = String::new();
    let _ = writeln!(out, "[graph]");
    let _ = writeln!(out, "k={}", g.arity());
    let _ = writeln!(out, "vertices={}", g.vertex_count());
    let _ = writeln!(out, "edges={}", g.edge_count());

    let _ = writeln!(out, "[props]");
    let props = kp_core::analysis::properties(&g, args.aperiodicity_bound, args.threads);
    render_properties(&g, &props, &mut out);

    let report = verify_theorems(&alg, &max_window, args.aperiodicity_bound, args.threads)
        .map_err(|e| domain_fail(e.to_string()))?;
    for result in &report.results {
        let _ = writeln!(out, "[center ring={} {}]", result.spec, result.window);
        render_center_result(&alg, result, &mut out);
    }
    let _ = writeln!(out, "[verdicts]");
    render_verdicts(&report, &mut out);
    Ok((out, EXIT_OK))
}

/// Run the CLI on the given arguments, writing reports to `out` and error
/// messages to `err`. Returns the process exit code.
pub fn run(argv: &[String], out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let Some(cmd) = argv.first() else {
        let _ = write!(err, "{USAGE}");
        return EXIT_PARSE;
    };
    if cmd == "help" || cmd == "--help" || cmd == "-h" {
        let _ = write!(out, "{USAGE}");
        return EXIT_OK;
    }
    let args = match parse_args(&argv[1..]) {
        Ok(a) => a,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            return f.code;
        }
    };
    let outcome = match cmd.as_str() {
        "validate" => cmd_validate(&args),
        "paths" => cmd_paths(&args),
        "mul" => cmd_mul(&args),
        "normalize" => cmd_normalize(&args),
        "props" => cmd_props(&args),
        "center" => cmd_center(&args),
        "report" => cmd_report(&args),
        other => Err(parse_fail(format!(
            "unknown command `{other}` (see `kp help`)"
        ))),
    };
    match outcome {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
