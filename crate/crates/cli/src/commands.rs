use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use gradcan::deciders::{analyze_graph, structural_decomposition, DecompositionDescriptor, PropertyReport};
use gradcan::gmatrix::{graded_exchange_ring, graded_exchange_witness, is_graded_clean_ring};
use gradcan::oracle::{
    brute_graded_clean, enumerate_homogeneous, exchange_with, lift_idempotent_check, Evidence,
    IdempotentTable, Outcome, SearchWindow,
};
use gradcan::{Base, Field, GMatrix, Graph, GradedMatrixRing, Truth, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::expr::{parse_element, parse_matrix, parse_shifts};
use crate::{dsl, CheckProperty, Cli, Command, MatrixAction, OracleArgs, OracleProperty, RingArgs, EXIT_UNKNOWN};

/// What a command prints on stdout and the exit code it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Analyze { file, json, strict } => analyze(&load(&file)?, json, strict),
        Command::Decompose { file, json } => decompose(&load(&file)?, json),
        Command::Fmt { file } => Ok(Output::ok(dsl::render(&load(&file)?))),
        Command::Matrix(m) => match m.action {
            MatrixAction::Check {
                property,
                witnesses,
                element,
                window,
                json,
                strict,
            } => matrix_check(&m.ring, property, witnesses, element.as_deref(), &window, json, strict),
        },
        Command::Oracle(o) => oracle(&o),
        Command::Eval { file, expr, field, json } => eval(load(&file)?, &expr, &field, json),
    }
}

fn load(path: &Path) -> CliResult<Graph> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    dsl::parse_graph(&text)
        .map(|d| d.graph)
        .map_err(|e| e.in_file(&shown))
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn analyze(g: &Graph, json: bool, strict: bool) -> CliResult<Output> {
    let report = analyze_graph(g)?;
    let stdout = if json { report.to_json() } else { report_text(&report) };
    let code = if strict && report.has_unknown() { EXIT_UNKNOWN } else { 0 };
    Ok(Output { stdout, code })
}

fn report_text(r: &PropertyReport) -> String {
    let g = r.graph();
    let mut s = String::new();
    let plural = |n: usize, one: &str, many: &str| format!("{n} {}", if n == 1 { one } else { many });
    writeln!(
        s,
        "graph: {}, {}",
        plural(g.vertices.len(), "vertex", "vertices"),
        plural(g.edges.len(), "edge", "edges")
    )
    .unwrap();
    writeln!(s, "unital: {}", if r.is_unital() { "yes" } else { "no" }).unwrap();
    for (p, v) in r.iter() {
        writeln!(s, "{:<8} {:<8} {}", p.name(), v.verdict.to_string(), v.citation).unwrap();
    }
    if let Some(d) = r.decomposition() {
        s.push_str("decomposition:\n");
        s.push_str(&summands_text(d));
    }
    if !r.notes().is_empty() {
        s.push_str("notes:\n");
        for n in r.notes() {
            writeln!(s, "  - {n}").unwrap();
        }
    }
    s
}

fn summands_text(d: &DecompositionDescriptor) -> String {
    let mut s = String::new();
    for x in &d.summands {
        write!(s, "  {}  anchor {}", x.ring, x.anchor).unwrap();
        if let Some(c) = &x.cycle {
            write!(s, "  cycle {c}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn decompose(g: &Graph, json: bool) -> CliResult<Output> {
    let d = structural_decomposition(g)?;
    Ok(Output::ok(if json { json_line(&d) } else { summands_text(&d) }))
}

pub fn eval(g: Graph, text: &str, field: &str, json: bool) -> CliResult<Output> {
    let field: Field = field.parse()?;
    let g = Arc::new(g);
    let a = parse_element(text, &g, field)?;
    let comps: Vec<(i64, String)> = a
        .support_degrees()
        .into_iter()
        .map(|d| (d, a.component(d).to_string()))
        .collect();
    if json {
        let v = json!({
            "normal_form": a.to_string(),
            "homogeneous_degree": a.homogeneous_degree(),
            "components": comps
                .iter()
                .map(|(d, e)| json!({"degree": d, "element": e}))
                .collect::<Vec<Value>>(),
        });
        return Ok(Output::ok(json_line(&v)));
    }
    let mut s = format!("normal form: {a}\n");
    for (d, e) in comps {
        writeln!(s, "degree {d}: {e}").unwrap();
    }
    Ok(Output::ok(s))
}

fn ring_of(r: &RingArgs) -> CliResult<(GradedMatrixRing, Field)> {
    let base: Base = r.base.parse()?;
    let field: Field = r.field.parse()?;
    let shifts = match &r.shifts {
        Some(s) => parse_shifts(s)?,
        None => vec![0; r.n],
    };
    if shifts.len() != r.n {
        return Err(CliError::Usage(format!(
            "--n is {} but --shifts lists {} values",
            r.n,
            shifts.len()
        )));
    }
    Ok((GradedMatrixRing::new(base, shifts)?, field))
}

fn window(field: Field, spec: &str) -> CliResult<SearchWindow> {
    let Field::Prime(p) = field else {
        return Err(CliError::Usage(
            "searching a window needs a finite field; pass --field fp:P".into(),
        ));
    };
    let (lo, hi) = SearchWindow::parse_degrees(spec)?;
    Ok(SearchWindow::new(p, lo, hi)?)
}

fn homogeneous(ring: &GradedMatrixRing, w: &SearchWindow) -> Vec<GMatrix> {
    w.degrees()
        .flat_map(|d| enumerate_homogeneous(ring, d, w).filter(move |x| d == 0 || !x.is_zero()))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn matrix_check(
    args: &RingArgs,
    property: CheckProperty,
    witnesses: bool,
    element: Option<&str>,
    window_spec: &str,
    json: bool,
    strict: bool,
) -> CliResult<Output> {
    let (ring, field) = ring_of(args)?;
    let (name, verdict): (&str, Verdict) = match property {
        CheckProperty::Clean => ("graded clean", is_graded_clean_ring(&ring)),
        CheckProperty::Exchange => ("graded exchange", graded_exchange_ring(&ring)),
    };
    let elements = match (element, witnesses) {
        (Some(t), _) => Some(vec![parse_matrix(t, &ring, field)?]),
        (None, true) => Some(homogeneous(&ring, &window(field, window_spec)?)),
        (None, false) => None,
    };
    let mut rows: Vec<Value> = Vec::new();
    if let Some(xs) = &elements {
        if verdict.verdict != Truth::Yes {
            return Err(CliError::Usage(format!(
                "no witnesses: {ring} is not decided {name} ({})",
                verdict.verdict
            )));
        }
        for x in xs {
            rows.push(witness_for(property, &ring, field, x, window_spec)?);
        }
    }
    let code = if strict && verdict.verdict == Truth::Unknown { EXIT_UNKNOWN } else { 0 };
    let stdout = if json {
        let mut v = json!({
            "ring": ring.to_string(),
            "field": field.to_string(),
            "property": name,
            "verdict": verdict,
        });
        if elements.is_some() {
            v["witnesses"] = Value::Array(rows);
        }
        json_line(&v)
    } else {
        let mut s = format!("{name} {ring} over {field}: {verdict}\n");
        for r in &rows {
            let parts: Vec<String> = ["x", "u", "e", "r", "s"]
                .iter()
                .filter_map(|k| r.get(k).and_then(Value::as_str).map(|v| format!("{k} = {v}")))
                .collect();
            writeln!(s, "  {}", parts.join("  ")).unwrap();
        }
        s
    };
    Ok(Output { stdout, code })
}

fn witness_for(
    property: CheckProperty,
    ring: &GradedMatrixRing,
    field: Field,
    x: &GMatrix,
    window_spec: &str,
) -> CliResult<Value> {
    match property {
        CheckProperty::Exchange => {
            let w = graded_exchange_witness(x)?;
            w.verify(x)?;
            Ok(json!({"x": x, "e": w.e, "r": w.r, "s": w.s}))
        }
        CheckProperty::Clean => {
            // clean decompositions come from the search, so a finite window is needed
            let win = window(field, window_spec)?;
            match brute_graded_clean(ring, x, &win)? {
                Outcome::Found(d) => Ok(json!({"x": x, "u": d.u, "e": d.e})),
                other => Err(CliError::Core(gradcan::Error::InvariantViolation(format!(
                    "{x} has no clean decomposition in the window ({})",
                    other.label()
                )))),
            }
        }
    }
}

fn oracle(o: &OracleArgs) -> CliResult<Output> {
    let (ring, field) = ring_of(&o.ring)?;
    let mut w = window(field, &o.window)?;
    if let Some(e) = &o.exponents {
        let (lo, hi) = SearchWindow::parse_degrees(e)?;
        w = w.with_exponents(lo, hi)?;
    }
    if let Some(k) = o.powers {
        w = w.with_powers(k);
    }
    let xs = match &o.element {
        Some(t) => vec![parse_matrix(t, &ring, field)?],
        None if o.property == OracleProperty::Lift => {
            return Err(CliError::Usage("lift needs --element and at least one --ideal".into()))
        }
        None => homogeneous(&ring, &w),
    };
    let mut s = String::new();
    let mut push = |ev: Evidence| {
        s.push_str(&serde_json::to_string(&ev).expect("serializable"));
        s.push('\n');
    };
    match o.property {
        OracleProperty::Clean => {
            for x in &xs {
                push(Evidence::new(&ring, "clean", x, &brute_graded_clean(&ring, x, &w)?));
            }
        }
        OracleProperty::Exchange => {
            let table = IdempotentTable::new(&ring, &w);
            for x in &xs {
                push(Evidence::new(&ring, "exchange", x, &exchange_with(&table, &ring, x, &w)?));
            }
        }
        OracleProperty::Lift => {
            if o.ideal.is_empty() {
                return Err(CliError::Usage("lift needs at least one --ideal".into()));
            }
            let gens = o
                .ideal
                .iter()
                .map(|t| parse_matrix(t, &ring, field))
                .collect::<CliResult<Vec<_>>>()?;
            for x in &xs {
                push(Evidence::new(&ring, "lift", x, &lift_idempotent_check(&ring, x, &gens, &w)?));
            }
        }
    }
    Ok(Output::ok(s))
}
