//! Request routing and report building for the `cremona` command.
//!
//! Every command produces an [`AnalysisReport`] whose JSON form has a fixed
//! key order: `command`, `input`, the command payload, then `warnings`.

mod render;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use cremona::degree2::{build_graph, classify, edge_graph_dot, normal_form_of, random_cremona_degree2};
use cremona::hilbert::{find_cremona_subsets, is_hilbert_base, is_normal_ideal, lift, Verdict};
use cremona::inversion::{inversion_factor, verify_inversion};
use cremona::{check_canonical, invert, is_cohesive, is_cremona, log_matrix, IntMatrix, MonomialSet};
use num::{BigInt, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub use render::render;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Invert,
    Classify,
    NormalForm,
    HilbertCheck { bound: u64 },
    NormalCheck { bound: u64 },
    ExtractCremona,
    ExportDot { edge_graph: bool },
    Generate { n: usize, r: usize, seed: u64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Invert => "invert",
            Command::Classify => "classify",
            Command::NormalForm => "normal-form",
            Command::HilbertCheck { .. } => "hilbert-check",
            Command::NormalCheck { .. } => "normal-check",
            Command::ExtractCremona => "extract-cremona",
            Command::ExportDot { .. } => "export-dot",
            Command::Generate { .. } => "generate",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    File(PathBuf),
    Inline(String),
    Stdin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub command: Command,
    /// Ignored by `generate`.
    pub input: InputSource,
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Core(#[from] cremona::Error),
}

impl CliError {
    /// 1 for unreadable or malformed input, 2 for inputs violating a
    /// command's contract (e.g. inverting a non-Cremona set).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Core(e) if e.is_parse_error() => 1,
            CliError::Core(_) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub command: &'static str,
    /// The parsed input set, absent for `generate`.
    pub input: Option<Value>,
    #[serde(flatten)]
    pub payload: Map<String, Value>,
    pub warnings: Vec<String>,
}

/// Reads a monomial set in the text format, or in JSON when the input starts
/// with `{`. A JSON object with a `set` field (as printed by `generate`) is
/// accepted too.
pub fn read_input(source: &InputSource) -> Result<MonomialSet, CliError> {
    let text = match source {
        InputSource::File(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        InputSource::Inline(text) => text.clone(),
        InputSource::Stdin => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            buf
        }
    };
    if !text.trim_start().starts_with('{') {
        return Ok(MonomialSet::parse(&text)?);
    }
    let value: Value = serde_json::from_str(&text).map_err(cremona::Error::from)?;
    let inner = match value.get("set") {
        Some(set) if value.get("monomials").is_none() => set.clone(),
        _ => value,
    };
    let raw = serde_json::from_value(inner).map_err(cremona::Error::from)?;
    Ok(MonomialSet::from_json_value(raw)?)
}

fn big(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn matrix_rows(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(big).collect()))
            .collect(),
    )
}

fn object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        other => panic!("payload must be an object, got {other}"),
    }
}

fn to_object<T: Serialize>(value: &T) -> Map<String, Value> {
    object(serde_json::to_value(value).expect("report types serialize"))
}

pub fn run(request: &AnalysisRequest) -> Result<AnalysisReport, CliError> {
    if let Command::Generate { n, r, seed } = request.command {
        let set = random_cremona_degree2(n, r, seed)?;
        return Ok(AnalysisReport {
            command: request.command.name(),
            input: None,
            payload: object(json!({
                "n": n,
                "r": r,
                "seed": seed,
                "set": set.to_json_value(),
                "text": set.to_text(),
            })),
            warnings: Vec::new(),
        });
    }

    let set = read_input(&request.input)?;
    let mut warnings = Vec::new();
    let payload = match &request.command {
        Command::Analyze => analyze(&set, &mut warnings)?,
        Command::Invert => {
            let inv = invert(&set)?;
            let inverse = inv.inverse_set(set.variables());
            object(json!({
                "inverse": inverse.vectors(),
                "gamma": inv.gamma(),
                "delta": inv.delta(),
                "factor": inversion_factor(&inv, set.variables()),
                "inverse_text": inverse.rendered(),
                "verified": verify_inversion(&set, &inv),
            }))
        }
        Command::Classify => to_object(&classify(&set)?),
        Command::NormalForm => {
            let graph = build_graph(&set)?;
            let nf = normal_form_of(&set, &graph)?;
            let names = set.variables();
            object(json!({
                "matrix": matrix_rows(&nf.matrix),
                "row_permutation": nf.row_permutation,
                "column_permutation": nf.column_permutation,
                "rows": nf.row_permutation.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "columns": nf.column_permutation.iter().map(|&j| set.render(j)).collect::<Vec<_>>(),
                "root_size": nf.root_size,
                "layer_sizes": nf.layer_sizes,
            }))
        }
        Command::HilbertCheck { bound } => {
            let cone = lift(&set)?;
            let report = is_hilbert_base(&cone, *bound)?;
            bound_warning(report.verdict, *bound, &mut warnings);
            let mut payload = to_object(&report);
            payload.insert("generators".into(), json!(cone.generators()));
            payload
        }
        Command::NormalCheck { bound } => {
            let report = is_normal_ideal(&set, *bound)?;
            bound_warning(report.verdict(), *bound, &mut warnings);
            to_object(&report)
        }
        Command::ExtractCremona => {
            let found = find_cremona_subsets(&set)?;
            if found.proper_classes.is_empty() {
                warnings.push("no subset without a common factor has |det| = d".into());
            }
            to_object(&found)
        }
        Command::ExportDot { edge_graph } => {
            let graph = build_graph(&set)?;
            let dot = if *edge_graph {
                edge_graph_dot(&graph, &set.rendered())
            } else {
                graph.to_dot()
            };
            object(json!({ "dot": dot }))
        }
        Command::Generate { .. } => unreachable!("handled above"),
    };
    Ok(AnalysisReport {
        command: request.command.name(),
        input: Some(serde_json::to_value(set.to_json_value()).expect("sets serialize")),
        payload,
        warnings,
    })
}

fn bound_warning(verdict: Verdict, bound: u64, warnings: &mut Vec<String>) {
    match verdict {
        Verdict::Holds => warnings.push(format!("verified only for lattice points up to level {bound}")),
        Verdict::Inconclusive => warnings.push(format!("enumeration too large; stopped before level {bound}")),
        Verdict::Fails => {}
    }
}

fn analyze(set: &MonomialSet, warnings: &mut Vec<String>) -> Result<Map<String, Value>, CliError> {
    let canonical = check_canonical(set);
    let lm = log_matrix(set);
    let birationality = if canonical.holds() && lm.degree().is_some() {
        let report = is_cremona(set)?;
        json!({
            "d": report.d,
            "minor_gcd": big(&report.minor_gcd),
            "is_birational_onto_image": report.is_birational_onto_image,
            "is_cremona": report.is_cremona,
            "determinant": report.determinant.as_ref().map(big),
        })
    } else {
        warnings.push("birationality not evaluated: set is not canonical and stochastic".into());
        Value::Null
    };
    Ok(object(json!({
        "n": set.n(),
        "q": set.q(),
        "log_matrix": matrix_rows(lm.matrix()),
        "stochastic": lm.degree().is_some(),
        "degree": lm.degree(),
        "canonical": canonical,
        "cohesive": is_cohesive(set),
        "birationality": birationality,
    })))
}
