//! The commands. Each returns its full output and exit code so the binary,
//! the tests and the corpus runner share one path.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};
use whittaker_core::analysis::{
    search_whittaker, simplicity_verdict, AnalysisError, SearchParams, SearchResult, SimplicityVerdict, Status,
};
use whittaker_core::pbw::{Engine, ModuleElement, WhittakerSetup};
use whittaker_core::{Classification, LaurentPoly, Verdict, Window};

use crate::schema::{
    element_from_json, element_to_json, from_json, ElementJson, FunctionalJson, GeneratorJson, ParamsJson, Scenario,
    SchemaError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_CORROBORATION: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, code: i32) -> Self {
        Output { stdout, stderr: String::new(), code }
    }

    fn fail(stderr: String, code: i32) -> Self {
        Output { stdout: String::new(), stderr, code }
    }
}

impl From<SchemaError> for Output {
    fn from(e: SchemaError) -> Self {
        Output::fail(e.to_string(), EXIT_INVALID)
    }
}

/// Inline JSON if the argument looks like it, otherwise a file path.
pub fn read_input(arg: &str) -> Result<(String, String), SchemaError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(("(inline)".into(), arg.into()));
    }
    std::fs::read_to_string(arg).map(|text| (arg.into(), text)).map_err(|e| SchemaError {
        source: arg.into(),
        violations: vec![whittaker_core::pbw::Violation { path: "(file)".into(), message: e.to_string() }],
    })
}

pub fn load_scenario(arg: &str) -> Result<Scenario, SchemaError> {
    let (source, text) = read_input(arg)?;
    Scenario::parse(&source, &text)
}

fn window_json(w: Window) -> Value {
    json!([w.lo, w.hi])
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({
        "display": p.to_string(),
        "coeffs": p.iter().map(|(e, c)| json!([e, c.to_string()])).collect::<Vec<_>>(),
    })
}

fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::InE { annihilator } => json!({"class": "in-E", "annihilator": poly_json(annihilator)}),
        Classification::NotInEDeclared(ev) => json!({
            "class": "not-in-E",
            "evidence": {"degree_bound": ev.degree_bound, "window": window_json(ev.window), "rank": ev.rank},
        }),
        Classification::Undecided(reason) => json!({"class": "undecided", "reason": undecided_text(reason)}),
    }
}

fn undecided_text(reason: &whittaker_core::functional::UndecidedReason) -> String {
    use whittaker_core::functional::UndecidedReason::*;
    match reason {
        CandidateAnnihilator { candidate, window } => {
            format!("declared outside E, but {candidate} annihilates it on {window}")
        }
        DeclaredMemberWithoutAnnihilator(ev) => format!(
            "declared in E, but no annihilator of degree ≤ {} vanishes on {}",
            ev.degree_bound, ev.window
        ),
    }
}

fn classification_text(c: &Classification) -> String {
    match c {
        Classification::InE { annihilator } => format!("in E, annihilator {annihilator}"),
        Classification::NotInEDeclared(ev) => format!(
            "declared outside E; no annihilator of degree ≤ {} on {} (recurrence rank {})",
            ev.degree_bound, ev.window, ev.rank
        ),
        Classification::Undecided(reason) => format!("undecided: {}", undecided_text(reason)),
    }
}

fn params_json(p: &SearchParams) -> Value {
    json!({
        "lth_max": p.lth_max,
        "exp_window": window_json(p.exp_window),
        "deg_window": p.deg_window.map(window_json),
    })
}

fn params_text(p: &SearchParams) -> String {
    let mut s = format!("length ≤ {}, exponents {}", p.lth_max, p.exp_window);
    if let Some(d) = p.deg_window {
        write!(s, ", degrees {d}").unwrap();
    }
    s
}

fn search_json(p: &SearchParams, r: &SearchResult) -> Value {
    json!({
        "params": params_json(p),
        "columns": r.columns,
        "rank": r.rank,
        "dimension": r.dimension(),
        "windowed": r.windowed,
    })
}

fn search_text(p: &SearchParams, r: &SearchResult) -> String {
    format!(
        "{}: {} monomials, rank {}, dimension {}{}",
        params_text(p),
        r.columns,
        r.rank,
        r.dimension(),
        if r.windowed { " (windowed)" } else { "" }
    )
}

fn setup_header(name: &str, setup: &WhittakerSetup) -> String {
    let mut s = format!("scenario: {name}\nalgebra: {}  pair: {}", setup.algebra().name(), setup.pair());
    if let Some(n) = setup.n() {
        write!(s, "  N: {n}").unwrap();
    }
    s.push('\n');
    s
}

fn status_word(v: &SimplicityVerdict) -> String {
    let word = match v.status {
        Status::Simple => "SIMPLE",
        Status::Reducible => "REDUCIBLE",
        Status::Undecided => "UNDECIDED",
    };
    match v.epistemic {
        whittaker_core::analysis::Epistemic::Exact => format!("{word} (exact)"),
        whittaker_core::analysis::Epistemic::Windowed => format!("{word} (windowed)"),
    }
}

pub fn verdict_json(name: &str, setup: &WhittakerSetup, v: &SimplicityVerdict) -> Value {
    let classification: serde_json::Map<String, Value> =
        v.criterion.iter().map(|c| (c.slot.to_string(), classification_json(&c.classification))).collect();
    json!({
        "scenario": name,
        "algebra": setup.algebra().name(),
        "pair": setup.pair().name(),
        "status": v.status.to_string(),
        "epistemic": match v.epistemic {
            whittaker_core::analysis::Epistemic::Exact => "exact",
            whittaker_core::analysis::Epistemic::Windowed => "windowed",
        },
        "basis": v.basis,
        "classification": classification,
        "witness": v.witness.as_ref().map(element_to_json),
        "corroboration": v.corroboration.as_ref().map(|c| search_json(&c.params, &c.result)),
        "notes": v.notes,
    })
}

pub fn verdict_text(name: &str, setup: &WhittakerSetup, v: &SimplicityVerdict) -> String {
    let mut s = setup_header(name, setup);
    writeln!(s, "verdict: {}", status_word(v)).unwrap();
    writeln!(s, "basis: {}", v.basis).unwrap();
    writeln!(s, "criterion:").unwrap();
    for c in &v.criterion {
        writeln!(s, "  {}: {}", c.slot, classification_text(&c.classification)).unwrap();
    }
    if let Some(w) = &v.witness {
        writeln!(s, "witness: {w}").unwrap();
        writeln!(s, "witness json: {}", serde_json::to_string(&element_to_json(w)).unwrap()).unwrap();
    }
    if let Some(c) = &v.corroboration {
        writeln!(s, "corroboration: {}", search_text(&c.params, &c.result)).unwrap();
    }
    for n in &v.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

fn analysis_failure(e: &AnalysisError) -> Output {
    let code = match e {
        AnalysisError::CorroborationFailure { .. } | AnalysisError::PostconditionFailed { .. } => EXIT_CORROBORATION,
        _ => EXIT_INVALID,
    };
    let mut s = format!("error: {e}\n");
    if let AnalysisError::CorroborationFailure { basis } = e {
        for b in basis {
            writeln!(s, "  found: {b}").unwrap();
        }
    }
    Output::fail(s, code)
}

fn resolve(scenario: &Scenario, overrides: &ParamsJson) -> Result<SearchParams, Output> {
    scenario.params.merged(overrides).resolve(&scenario.setup).map_err(|violations| {
        Output::from(SchemaError { source: "(parameters)".into(), violations })
    })
}

/// The verdict for an already parsed scenario.
pub fn verdict_for(scenario: &Scenario, overrides: &ParamsJson, as_json: bool) -> (Output, Option<SimplicityVerdict>) {
    let params = match resolve(scenario, overrides) {
        Ok(p) => p,
        Err(o) => return (o, None),
    };
    match simplicity_verdict(&scenario.setup, &params) {
        Ok(v) => {
            let code = if v.status == Status::Undecided { EXIT_UNDECIDED } else { EXIT_OK };
            let out = if as_json {
                serde_json::to_string_pretty(&verdict_json(&scenario.name, &scenario.setup, &v)).unwrap() + "\n"
            } else {
                verdict_text(&scenario.name, &scenario.setup, &v)
            };
            (Output::ok(out, code), Some(v))
        }
        Err(e) => (analysis_failure(&e), None),
    }
}

pub fn verdict(scenario: &str, overrides: &ParamsJson, as_json: bool) -> Output {
    match load_scenario(scenario) {
        Ok(s) => verdict_for(&s, overrides, as_json).0,
        Err(e) => e.into(),
    }
}

/// Runs the Whittaker test on a vector; exit 0 iff it passes.
pub fn check(scenario: &str, vector: &str, overrides: &ParamsJson, as_json: bool) -> Output {
    let s = match load_scenario(scenario) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let params = match resolve(&s, overrides) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let u = match read_input(vector).and_then(|(src, text)| {
        let raw: ElementJson = from_json(&src, &text)?;
        element_from_json(&raw, "vector").map_err(|violations| SchemaError { source: src, violations })
    }) {
        Ok(u) => u,
        Err(e) => return e.into(),
    };
    let engine = Engine::new(&s.setup);
    let verdict = match engine.is_whittaker_in(&u, params.class_window) {
        Ok(v) => v,
        Err(e) => return Output::fail(format!("error: {e}\n"), EXIT_INVALID),
    };
    let (word, witness) = match &verdict {
        Verdict::ExactTrue => ("WHITTAKER (exact)", None),
        Verdict::WindowedTrue(_) => ("WHITTAKER (windowed)", None),
        Verdict::ExactFalse(w) => ("NOT WHITTAKER (exact)", Some(*w)),
        Verdict::WindowedFalse(w) => ("NOT WHITTAKER (windowed)", Some(*w)),
    };
    let out = if as_json {
        let v = json!({
            "scenario": s.name,
            "vector": element_to_json(&u),
            "whittaker": verdict.holds(),
            "epistemic": if verdict.is_exact() { "exact" } else { "windowed" },
            "window": match verdict { Verdict::WindowedTrue(w) => Some(window_json(w)), _ => None },
            "witness": witness.map(|w| json!({"family": w.family.to_string(), "k": w.k})),
        });
        serde_json::to_string_pretty(&v).unwrap() + "\n"
    } else {
        let mut t = setup_header(&s.name, &s.setup);
        writeln!(t, "vector: {u}").unwrap();
        writeln!(t, "result: {word}").unwrap();
        if let Verdict::WindowedTrue(w) = verdict {
            writeln!(t, "window: {w}").unwrap();
        }
        if let Some(w) = witness {
            let g = w.family.generator(s.setup.algebra(), w.k);
            let residual = engine.concrete_residual(w.family, w.k, &u);
            writeln!(t, "witness: {w}: {g} leaves residual {residual}").unwrap();
        }
        t
    };
    Output::ok(out, if verdict.holds() { EXIT_OK } else { 1 })
}

/// Dumps a basis of the Whittaker vectors in the truncation.
pub fn search(scenario: &str, overrides: &ParamsJson, as_json: bool) -> Output {
    let s = match load_scenario(scenario) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let params = match resolve(&s, overrides) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let r = match search_whittaker(&s.setup, &params) {
        Ok(r) => r,
        Err(e) => return analysis_failure(&e),
    };
    let out = if as_json {
        let mut v = search_json(&params, &r);
        v["scenario"] = json!(s.name);
        v["basis"] = json!(r.basis.iter().map(element_to_json).collect::<Vec<_>>());
        serde_json::to_string_pretty(&v).unwrap() + "\n"
    } else {
        let mut t = setup_header(&s.name, &s.setup);
        writeln!(t, "search: {}", search_text(&params, &r)).unwrap();
        for (i, b) in r.basis.iter().enumerate() {
            writeln!(t, "  [{i}] {b}").unwrap();
        }
        t
    };
    Output::ok(out, EXIT_OK)
}

/// Classifies a functional and prints its annihilator generator.
pub fn ann(functional: &str, overrides: &ParamsJson, as_json: bool) -> Output {
    let f = match read_input(functional).and_then(|(src, text)| {
        let raw: FunctionalJson = from_json(&src, &text)?;
        raw.to_functional("functional").map_err(|violations| SchemaError { source: src, violations })
    }) {
        Ok(f) => f,
        Err(e) => return e.into(),
    };
    let degree = overrides.class_degree.unwrap_or(whittaker_core::functional::DEFAULT_CLASS_DEGREE);
    let window = match overrides.class_window {
        Some((lo, hi)) if lo <= hi => Window::new(lo, hi),
        Some((lo, hi)) => return Output::fail(format!("error: empty window [{lo}, {hi}]\n"), EXIT_INVALID),
        None => whittaker_core::functional::DEFAULT_CLASS_WINDOW,
    };
    let c = match f.classify(degree, window) {
        Ok(c) => c,
        Err(e) => return Output::fail(format!("error: {e}\n"), EXIT_INVALID),
    };
    let code = match c {
        Classification::Undecided(_) => EXIT_UNDECIDED,
        _ => EXIT_OK,
    };
    let out = if as_json {
        serde_json::to_string_pretty(&classification_json(&c)).unwrap() + "\n"
    } else {
        format!("functional: {f}\nclassification: {}\n", classification_text(&c))
    };
    Output::ok(out, code)
}

/// Acts by one generator on a vector (the cyclic vector by default).
pub fn act(scenario: &str, generator: &str, element: Option<&str>, as_json: bool) -> Output {
    let s = match load_scenario(scenario) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let pair = s.setup.pair();
    let g = match read_input(generator).and_then(|(src, text)| {
        let raw: GeneratorJson = from_json(&src, &text)?;
        raw.to_generator(pair, "generator").map_err(|v| SchemaError { source: src, violations: vec![v] })
    }) {
        Ok(g) => g,
        Err(e) => return e.into(),
    };
    let u = match element {
        None => ModuleElement::cyclic(),
        Some(arg) => match read_input(arg).and_then(|(src, text)| {
            let raw: ElementJson = from_json(&src, &text)?;
            element_from_json(&raw, "element").map_err(|violations| SchemaError { source: src, violations })
        }) {
            Ok(u) => u,
            Err(e) => return e.into(),
        },
    };
    match Engine::new(&s.setup).act(&g, &u) {
        Ok(r) if as_json => Output::ok(serde_json::to_string_pretty(&element_to_json(&r)).unwrap() + "\n", EXIT_OK),
        Ok(r) => Output::ok(format!("{g} . ({u}) = {r}\n"), EXIT_OK),
        Err(e) => Output::fail(format!("error: {e}\n"), EXIT_INVALID),
    }
}

/// One corpus entry: its report and whether it met its expectations.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub file: String,
    pub output: Output,
    pub mismatches: Vec<String>,
    /// Matches its expectations, or exits 0 when it has none.
    pub passed: bool,
}

fn run_corpus_entry(path: &Path, overrides: &ParamsJson, as_json: bool) -> CorpusEntry {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let scenario = match load_scenario(&path.to_string_lossy()) {
        Ok(s) => s,
        Err(e) => {
            return CorpusEntry { file, output: e.into(), mismatches: vec!["scenario does not load".into()], passed: false };
        }
    };
    let (output, v) = verdict_for(&scenario, overrides, as_json);
    let mut mismatches = Vec::new();
    if let Some(exp) = &scenario.expected {
        let got = v.as_ref().map(|v| v.status.to_string()).unwrap_or_else(|| "error".into());
        if let Some(st) = &exp.status {
            if *st != got {
                mismatches.push(format!("status: expected {st}, got {got}"));
            }
        }
        if let Some(w) = &exp.witness {
            let want = element_from_json(w, "expected.witness").ok();
            let have = v.as_ref().and_then(|v| v.witness.clone());
            if want != have {
                mismatches.push("witness differs".into());
            }
        }
        if let Some(d) = exp.search_dimension {
            match resolve(&scenario, overrides).map(|p| search_whittaker(&scenario.setup, &p)) {
                Ok(Ok(r)) if r.dimension() == d => {}
                Ok(Ok(r)) => mismatches.push(format!("search dimension: expected {d}, got {}", r.dimension())),
                _ => mismatches.push("search failed".into()),
            }
        }
    }
    let passed = match &scenario.expected {
        Some(_) => mismatches.is_empty(),
        None => output.code == EXIT_OK,
    };
    CorpusEntry { file, output, mismatches, passed }
}

/// Runs every `*.json` scenario in `dir`, in file-name order.
pub fn corpus_entries(dir: &Path, overrides: &ParamsJson, as_json: bool, jobs: usize) -> Result<Vec<CorpusEntry>, String> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| e.to_string())?;
    Ok(pool.install(|| files.par_iter().map(|p| run_corpus_entry(p, overrides, as_json)).collect()))
}

pub fn corpus(dir: &str, overrides: &ParamsJson, as_json: bool, jobs: usize) -> Output {
    let entries = match corpus_entries(Path::new(dir), overrides, as_json, jobs) {
        Ok(e) => e,
        Err(e) => return Output::fail(format!("error: {e}\n"), EXIT_INVALID),
    };
    let failed = entries.iter().filter(|e| !e.passed).count();
    let out = if as_json {
        let v: Vec<Value> = entries
            .iter()
            .map(|e| {
                let report: Value = serde_json::from_str(&e.output.stdout).unwrap_or(Value::Null);
                json!({
                    "file": e.file,
                    "exit": e.output.code,
                    "report": report,
                    "error": if e.output.stderr.is_empty() { None } else { Some(&e.output.stderr) },
                    "mismatches": e.mismatches,
                })
            })
            .collect();
        serde_json::to_string_pretty(&json!({"scenarios": v, "failed": failed})).unwrap() + "\n"
    } else {
        let mut t = String::new();
        for e in &entries {
            writeln!(t, "== {}", e.file).unwrap();
            t.push_str(&e.output.stdout);
            t.push_str(&e.output.stderr);
            for m in &e.mismatches {
                writeln!(t, "MISMATCH: {m}").unwrap();
            }
        }
        writeln!(t, "corpus: {} scenarios, {} passed, {} failed", entries.len(), entries.len() - failed, failed).unwrap();
        t
    };
    Output::ok(out, if failed == 0 { EXIT_OK } else { EXIT_INVALID })
}
