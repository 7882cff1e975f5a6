//! Batch front end: one JSON document in, one canonical JSON report out.
//!
//! Reports are written with sorted keys and every float printed with 17 significant digits, so
//! identical inputs give byte-identical files. Failures produce a diagnostic record and a
//! distinct exit code (see [`exit_code`]).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fermi::{
    fermi_general, fermi_periodic, fermi_schrodinger, loop_data, williamson, XPoly,
};
use crate::inversion::{
    invert_general, invert_schrodinger, recover_frequencies, schrodinger_observables, unmix_trace,
    SpectrumList, TraceSample,
};
use crate::linalg::block_rotation;
use crate::normalform::{birkhoff, HamiltonianSpec, NormalFormResult, Setting};
use crate::observables::{average_family, observable_family, AveragedObservable, ObservableSpec};
use crate::phasepoly::{ActionPoly, Caps, Mode, PhasePoly, TermRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SMALL_DIVISOR: i32 = 3;
pub const EXIT_RANK: i32 = 4;
pub const EXIT_RESIDUAL: i32 = 5;

/// Version of the input schema understood by this build.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classical,
    Quantum,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Quantum => Mode::Quantum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Fermi coordinates from a Hessian, a Hamiltonian, a potential or a loop of frames.
    Fermi,
    /// Birkhoff normal form.
    Bnf,
    /// Classical angle averages of an observable family.
    Avg,
    /// Quantum diagonal matrix elements of an observable family.
    Melem,
    /// Frequencies from low-lying levels.
    Freqs,
    /// Hamiltonian or potential Taylor data from a normal form and averages.
    Invert,
    /// Taylor coefficients from trace samples.
    Unmix,
    /// Forward pipeline followed by inversion, with an error table.
    Roundtrip,
}

/// One job: a subcommand, its input document and overrides.
#[derive(Clone, Debug, Parser)]
#[command(name = "birkhoff", version, about = "Normal forms and inverse problems near wells and periodic orbits")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Input JSON document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Truncation order N.
    #[arg(long, global = true)]
    pub order: Option<u32>,
    /// Fourier band D for the periodic setting.
    #[arg(long = "fourier-band", global = true)]
    pub fourier_band: Option<u32>,
    /// Tolerance for residual and lattice checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Grid size for synthetic periodic loops.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CapsDoc {
    order: Option<u32>,
    fourier_band: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PotentialTerm {
    x_exponents: Vec<u32>,
    value: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LoopDoc {
    /// Sampled frames on a uniform grid of the period, row-major.
    samples: Option<Vec<Vec<Vec<f64>>>>,
    /// Or a synthetic loop `S0 . rotation(2 pi rates t)` sampled on `--grid` points.
    s0: Option<Vec<Vec<f64>>>,
    rates: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum InverseKind {
    #[default]
    General,
    Schrodinger,
}

/// Input document. Which fields are needed depends on the subcommand.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    schema: u32,
    #[serde(default)]
    setting: Option<Setting>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    theta: Option<Vec<f64>>,
    /// Quadratic form `(1/2) v^T A v` in block order `(x, xi)`.
    #[serde(default)]
    hessian: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    potential: Option<Vec<PotentialTerm>>,
    #[serde(rename = "E", default)]
    energy: f64,
    #[serde(default)]
    terms: Option<Vec<TermRecord>>,
    #[serde(default)]
    caps: CapsDoc,
    #[serde(default)]
    mode: Option<Mode>,
    #[serde(default)]
    observables: Option<Vec<ObservableSpec>>,
    #[serde(default)]
    levels: Option<Vec<f64>>,
    #[serde(default)]
    hbar: Option<f64>,
    #[serde(default)]
    samples: Option<Vec<TraceSample>>,
    #[serde(rename = "loop", default)]
    loop_doc: Option<LoopDoc>,
    #[serde(default)]
    inverse: InverseKind,
    #[serde(default)]
    normal_form: Option<ActionPoly>,
    #[serde(default)]
    averages: Option<Vec<AveragedObservable>>,
}

impl InputDoc {
    fn need<T: Clone>(field: &Option<T>, name: &str) -> Result<T> {
        field
            .clone()
            .ok_or_else(|| Error::Parse(format!("input needs `{name}`")))
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Json(_) => EXIT_PARSE,
        Error::SmallDivisor { .. } => EXIT_SMALL_DIVISOR,
        Error::RankDeficient { .. } => EXIT_RANK,
        Error::Residual { .. } => EXIT_RESIDUAL,
        _ => EXIT_OTHER,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) | Error::Json(_) => "parse",
        Error::SmallDivisor { .. } => "small_divisor",
        Error::RankDeficient { .. } => "rank_deficient",
        Error::Residual { .. } => "residual",
        Error::Io(_) => "io",
        _ => "failure",
    }
}

/// Machine-readable record of a failure.
pub fn error_record(e: &Error) -> Value {
    let mut detail = json!({});
    match e {
        Error::SmallDivisor { key, divisor, completed_order } => {
            detail = json!({"key": key, "divisor": divisor, "completed_order": completed_order});
        }
        Error::RankDeficient { order, rank, unknowns, unresolved } => {
            detail = json!({"order": order, "rank": rank, "unknowns": unknowns, "unresolved": unresolved});
        }
        Error::Residual { residual, tol, context } => {
            detail = json!({"residual": residual, "tol": tol, "context": context});
        }
        _ => {}
    }
    json!({
        "error": {
            "kind": error_kind(e),
            "exit_code": exit_code(e),
            "message": e.to_string(),
            "detail": detail,
        }
    })
}

struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }
}

/// A float with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        "0.0".into()
    } else {
        format!("{v:.16e}")
    }
}

/// Serialize with sorted keys and 17-significant-digit floats.
pub fn to_canonical_json(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    serde::Serialize::serialize(v, &mut ser).expect("serializing a Value cannot fail");
    let mut s = String::from_utf8(buf).expect("JSON is UTF-8");
    s.push('\n');
    s
}

/// Run a job, write its report, and return the process exit code.
pub fn run(config: &JobConfig) -> i32 {
    let (report, code) = match execute(config) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("birkhoff: {e}");
            (error_record(&e), exit_code(&e))
        }
    };
    let text = to_canonical_json(&report);
    let written = match &config.output {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("birkhoff: cannot write report: {e}");
        return EXIT_OTHER;
    }
    code
}

/// Parse command-line arguments and run. Clap usage errors exit with the parse code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match JobConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_PARSE
            } else {
                EXIT_OK
            }
        }
    }
}

/// Execute a job and return its report together with the exit code to use.
pub fn execute(config: &JobConfig) -> Result<(Value, i32)> {
    if let Some(t) = config.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Parse(format!("--tol must lie in (0, 1), got {t}")));
        }
    }
    if config.order == Some(0) || config.grid == Some(0) {
        return Err(Error::Parse("--order and --grid must be positive".into()));
    }
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| Error::Parse("--input is required".into()))?;
    let text = fs::read_to_string(path)?;
    let doc: InputDoc = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema version {} is not supported (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    let mut report = match config.command {
        Command::Fermi => cmd_fermi(&doc, config)?,
        Command::Bnf => cmd_bnf(&doc, config)?,
        Command::Avg => cmd_averages(&doc, config, Mode::Classical)?,
        Command::Melem => cmd_averages(&doc, config, Mode::Quantum)?,
        Command::Freqs => cmd_freqs(&doc, config)?,
        Command::Invert => cmd_invert(&doc, config)?,
        Command::Unmix => cmd_unmix(&doc, config)?,
        Command::Roundtrip => return cmd_roundtrip(&doc, config),
    };
    report["command"] = json!(command_name(config.command));
    Ok((report, EXIT_OK))
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Fermi => "fermi",
        Command::Bnf => "bnf",
        Command::Avg => "avg",
        Command::Melem => "melem",
        Command::Freqs => "freqs",
        Command::Invert => "invert",
        Command::Unmix => "unmix",
        Command::Roundtrip => "roundtrip",
    }
}

fn matrix_json(m: &DMatrix<f64>) -> Value {
    json!((0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect::<Vec<f64>>())
        .collect::<Vec<_>>())
}

fn matrix_from(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>> {
    let r = rows.len();
    if r == 0 || rows.iter().any(|row| row.len() != r) {
        return Err(Error::Parse(format!("`{what}` must be a nonempty square matrix")));
    }
    Ok(DMatrix::from_fn(r, r, |i, j| rows[i][j]))
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn xpoly_json(p: &XPoly) -> Value {
    json!(p
        .terms
        .iter()
        .map(|(k, v)| json!({"x_exponents": k, "value": v}))
        .collect::<Vec<_>>())
}

fn order_of(doc: &InputDoc, config: &JobConfig) -> u32 {
    config.order.or(doc.caps.order).unwrap_or(4)
}

fn band_of(doc: &InputDoc, config: &JobConfig) -> u32 {
    config.fourier_band.or(doc.caps.fourier_band).unwrap_or(0)
}

fn mode_of(doc: &InputDoc, config: &JobConfig) -> Mode {
    config.mode.map(Mode::from).or(doc.mode).unwrap_or(Mode::Classical)
}

fn dof(doc: &InputDoc) -> Result<usize> {
    if let Some(n) = doc.n {
        return Ok(n);
    }
    if let Some(t) = &doc.theta {
        return Ok(t.len());
    }
    if let Some(h) = &doc.hessian {
        return Ok(h.len() / 2);
    }
    if let Some(p) = &doc.potential {
        if let Some(t) = p.first() {
            return Ok(t.x_exponents.len());
        }
    }
    Err(Error::Parse("cannot determine the number of degrees of freedom; give `n`".into()))
}

fn potential_of(doc: &InputDoc) -> Result<Option<XPoly>> {
    let Some(terms) = &doc.potential else {
        return Ok(None);
    };
    let n = dof(doc)?;
    let mut v = XPoly::new(n);
    for t in terms {
        if t.x_exponents.len() != n {
            return Err(Error::Parse(format!("potential term {:?} has wrong length", t.x_exponents)));
        }
        v.add_term(t.x_exponents.clone(), t.value);
    }
    Ok(Some(v))
}

fn perturbation_of(doc: &InputDoc, n: usize) -> Result<PhasePoly> {
    let terms = doc.terms.clone().unwrap_or_default();
    PhasePoly::from_records(n, &terms).map_err(Error::Parse)
}

/// Quadratic form `(1/2) v^T A v` as a phase polynomial, `v = (x, xi)` in block order.
fn quadratic_symbol(a: &DMatrix<f64>) -> PhasePoly {
    let n = a.nrows() / 2;
    let coord = |i: usize| {
        if i < n {
            PhasePoly::x(n, i)
        } else {
            PhasePoly::xi(n, i - n)
        }
    };
    let mut out = PhasePoly::new(n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            if a[(i, j)] != 0.0 {
                out.add_assign_poly(&coord(i).mul_poly(&coord(j)).scale_real(0.5 * a[(i, j)]));
            }
        }
    }
    out
}

/// The Hamiltonian of a document in Fermi form, plus the Schrodinger frame when it came from a potential.
struct Forward {
    spec: HamiltonianSpec,
    schrodinger: Option<crate::fermi::SchrodingerFrame>,
}

fn forward_of(doc: &InputDoc, config: &JobConfig) -> Result<Forward> {
    let order = order_of(doc, config);
    let band = band_of(doc, config);
    let setting = doc.setting.unwrap_or(Setting::Well);
    if let Some(v) = potential_of(doc)? {
        if setting != Setting::Well {
            return Err(Error::Parse("a potential describes a well".into()));
        }
        let frame = fermi_schrodinger(&v, order)?;
        let spec = HamiltonianSpec::well(&frame.theta, frame.energy, &frame.remainder.to_phase(), Caps::order(order));
        return Ok(Forward { spec, schrodinger: Some(frame) });
    }
    let n = dof(doc)?;
    let pert = perturbation_of(doc, n)?;
    if let Some(theta) = &doc.theta {
        if theta.len() != n {
            return Err(Error::Parse("`theta` length differs from `n`".into()));
        }
        let spec = match setting {
            Setting::Well => HamiltonianSpec::well(theta, doc.energy, &pert, Caps::order(order)),
            Setting::Periodic => HamiltonianSpec::periodic(theta, doc.energy, &pert, Caps::new(order, band)),
        };
        return Ok(Forward { spec, schrodinger: None });
    }
    if let Some(rows) = &doc.hessian {
        if setting != Setting::Well {
            return Err(Error::Parse("a Hessian input describes a well; give `theta` for orbits".into()));
        }
        let a = matrix_from(rows, "hessian")?;
        let mut h = quadratic_symbol(&a);
        h.add_assign_poly(&PhasePoly::constant(n, doc.energy));
        h.add_assign_poly(&pert);
        let frame = fermi_general(&h)?;
        let mut rest = frame.hamiltonian.clone();
        rest.add_assign_poly(&PhasePoly::harmonic(&frame.theta).scale_real(-1.0));
        rest.add_assign_poly(&PhasePoly::constant(n, -frame.energy));
        let spec = HamiltonianSpec::well(&frame.theta, frame.energy, &rest.pruned(), Caps::order(order));
        return Ok(Forward { spec, schrodinger: None });
    }
    Err(Error::Parse("input needs one of `potential`, `theta` or `hessian`".into()))
}

fn nf_json(nf: &NormalFormResult) -> Result<Value> {
    Ok(json!({
        "mode": to_value(&nf.mode)?,
        "setting": to_value(&nf.setting)?,
        "theta": nf.theta,
        "order": nf.order,
        "caps": to_value(&nf.caps)?,
        "h": to_value(&nf.h)?,
        "h_symbol": to_value(&nf.h_symbol)?,
        "generators": nf.generators.iter().map(to_value).collect::<Result<Vec<_>>>()?,
        "divisor_log": to_value(&nf.divisor_log)?,
        "homological_residuals": nf.homological_residuals,
        "normal_form_residual": nf.normal_form_residual,
        "truncation_report": to_value(&nf.truncation_report)?,
    }))
}

fn cmd_fermi(doc: &InputDoc, config: &JobConfig) -> Result<Value> {
    if let Some(l) = &doc.loop_doc {
        return fermi_loop(l, config);
    }
    let order = order_of(doc, config);
    if let Some(v) = potential_of(doc)? {
        let frame = fermi_schrodinger(&v, order)?;
        return Ok(json!({
            "kind": "schrodinger",
            "u": matrix_json(&frame.u),
            "theta": frame.theta,
            "energy": frame.energy,
            "remainder": xpoly_json(&frame.remainder),
            "hamiltonian": to_value(&frame.hamiltonian)?,
        }));
    }
    let rows = InputDoc::need(&doc.hessian, "hessian")?;
    let a = matrix_from(&rows, "hessian")?;
    if doc.terms.as_ref().is_some_and(|t| !t.is_empty()) {
        let n = a.nrows() / 2;
        let mut h = quadratic_symbol(&a);
        h.add_assign_poly(&PhasePoly::constant(n, doc.energy));
        h.add_assign_poly(&perturbation_of(doc, n)?);
        let frame = fermi_general(&h)?;
        return Ok(json!({
            "kind": "general",
            "theta": frame.theta,
            "energy": frame.energy,
            "s": matrix_json(&frame.s),
            "hamiltonian": to_value(&frame.hamiltonian)?,
            "quadratic_residual": frame.quadratic_residual,
        }));
    }
    let frame = williamson(&a)?;
    Ok(json!({
        "kind": "williamson",
        "lambda": frame.lambda,
        "s": matrix_json(&frame.s),
        "symplectic_residual": frame.symplectic_residual,
        "diagonal_residual": frame.diagonal_residual,
    }))
}

fn fermi_loop(l: &LoopDoc, config: &JobConfig) -> Result<Value> {
    let samples: Vec<DMatrix<f64>> = if let Some(s) = &l.samples {
        s.iter().map(|m| matrix_from(m, "loop.samples")).collect::<Result<_>>()?
    } else {
        let s0 = matrix_from(&InputDoc::need(&l.s0, "loop.s0")?, "loop.s0")?;
        let rates = InputDoc::need(&l.rates, "loop.rates")?;
        if rates.len() * 2 != s0.nrows() {
            return Err(Error::Parse("`loop.rates` needs one rate per degree of freedom".into()));
        }
        let m = config.grid.unwrap_or(256);
        (0..m)
            .map(|g| {
                let t = g as f64 / m as f64;
                let angles: Vec<f64> = rates.iter().map(|r| 2.0 * std::f64::consts::PI * r * t).collect();
                &s0 * block_rotation(&angles)
            })
            .collect()
    };
    if let Some(s) = samples.first() {
        let dim = s.nrows();
        if dim % 2 != 0 || samples.iter().any(|m| m.nrows() != dim) {
            return Err(Error::Parse("loop frames must share an even dimension".into()));
        }
    }
    let (families, traces) = loop_data(&samples);
    let lp = fermi_periodic(&families, &traces)?;
    Ok(json!({
        "kind": "periodic",
        "grid": samples.len(),
        "theta_dot": lp.theta_dot,
        "theta": lp.theta,
        "frames": lp.frames.iter().map(matrix_json).collect::<Vec<_>>(),
    }))
}

fn cmd_bnf(doc: &InputDoc, config: &JobConfig) -> Result<Value> {
    let fw = forward_of(doc, config)?;
    let nf = birkhoff(&fw.spec, mode_of(doc, config), order_of(doc, config))?;
    nf_json(&nf)
}

fn family_of(doc: &InputDoc, spec: &HamiltonianSpec, order: u32) -> Vec<ObservableSpec> {
    doc.observables.clone().unwrap_or_else(|| {
        observable_family(
            spec.n(),
            order,
            spec.caps.fourier_band,
            spec.setting == Setting::Periodic,
        )
    })
}

fn cmd_averages(doc: &InputDoc, config: &JobConfig, mode: Mode) -> Result<Value> {
    let fw = forward_of(doc, config)?;
    let order = order_of(doc, config);
    let nf = birkhoff(&fw.spec, mode, order)?;
    let family = family_of(doc, &fw.spec, order);
    let avgs = average_family(&nf, &family, order)?;
    Ok(json!({
        "normal_form": nf_json(&nf)?,
        "averages": to_value(&avgs)?,
    }))
}

fn cmd_freqs(doc: &InputDoc, config: &JobConfig) -> Result<Value> {
    let levels = InputDoc::need(&doc.levels, "levels")?;
    let hbar = doc.hbar.unwrap_or(1.0);
    let n = InputDoc::need(&doc.n, "n")?;
    let tol = config.tol.unwrap_or(1e-6);
    let got = recover_frequencies(&SpectrumList { levels, hbar }, n, tol)?;
    Ok(json!({"theta": got.theta, "ground": got.ground, "tol": tol}))
}

fn cmd_invert(doc: &InputDoc, config: &JobConfig) -> Result<Value> {
    let h = InputDoc::need(&doc.normal_form, "normal_form")?;
    let averages = InputDoc::need(&doc.averages, "averages")?;
    let theta = InputDoc::need(&doc.theta, "theta")?;
    let mode = mode_of(doc, config);
    let order = order_of(doc, config);
    let tol = config.tol.unwrap_or(1e-8);
    match doc.inverse {
        InverseKind::Schrodinger => {
            let got = invert_schrodinger(&h, &averages, &theta, mode, order, tol)?;
            Ok(json!({
                "inverse": "schrodinger",
                "theta": got.theta,
                "energy": got.energy,
                "achieved_order": got.achieved_order,
                "coefficients": xpoly_json(&got.remainder),
                "reports": to_value(&got.reports)?,
            }))
        }
        InverseKind::General => {
            let setting = doc.setting.unwrap_or(Setting::Well);
            let got = invert_general(&h, &averages, &theta, setting, mode, order, band_of(doc, config), tol)?;
            Ok(json!({
                "inverse": "general",
                "setting": to_value(&setting)?,
                "mode": to_value(&mode)?,
                "achieved_order": got.achieved_order,
                "hamiltonian": to_value(&got.hamiltonian)?,
                "generators": got.generators.iter().map(to_value).collect::<Result<Vec<_>>>()?,
                "reports": to_value(&got.reports)?,
            }))
        }
    }
}

fn cmd_unmix(doc: &InputDoc, config: &JobConfig) -> Result<Value> {
    let theta = InputDoc::need(&doc.theta, "theta")?;
    let samples = InputDoc::need(&doc.samples, "samples")?;
    let pmax = order_of(doc, config);
    let tol = config.tol.unwrap_or(1e-8);
    let got = unmix_trace(&samples, &theta, pmax, tol)?;
    Ok(json!({
        "b": to_value(&got.b)?,
        "condition": got.condition,
        "residual": got.residual,
        "gauge": "coefficients with y-dependence are folded into the y-free representative",
    }))
}

fn error_row(key: String, want: (f64, f64), got: (f64, f64), scale: f64) -> (Value, f64) {
    let diff = ((want.0 - got.0).powi(2) + (want.1 - got.1).powi(2)).sqrt();
    let size = (want.0 * want.0 + want.1 * want.1).sqrt();
    let rel = if size > 0.0 { diff / size } else { diff / scale.max(f64::MIN_POSITIVE) };
    (
        json!({
            "key": key,
            "input": [want.0, want.1],
            "recovered": [got.0, got.1],
            "abs_error": diff,
            "rel_error": rel,
        }),
        rel,
    )
}

fn cmd_roundtrip(doc: &InputDoc, config: &JobConfig) -> Result<(Value, i32)> {
    let fw = forward_of(doc, config)?;
    let order = order_of(doc, config);
    let mode = mode_of(doc, config);
    let tol = config.tol.unwrap_or(1e-8);
    let nf = birkhoff(&fw.spec, mode, order)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let reports;
    if let Some(frame) = &fw.schrodinger {
        let avgs = average_family(&nf, &schrodinger_observables(fw.spec.n()), order)?;
        let got = invert_schrodinger(&nf.h, &avgs, &frame.theta, mode, order, tol)?;
        let scale = frame.remainder.terms.values().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut keys: Vec<&Vec<u32>> = frame.remainder.terms.keys().chain(got.remainder.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let (row, rel) = error_row(format!("x^{k:?}"), (frame.remainder.get(k), 0.0), (got.remainder.get(k), 0.0), scale);
            worst = worst.max(rel);
            rows.push(row);
        }
        reports = to_value(&got.reports)?;
    } else {
        let family = family_of(doc, &fw.spec, order);
        let avgs = average_family(&nf, &family, order)?;
        let band = fw.spec.caps.fourier_band;
        let got = invert_general(&nf.h, &avgs, &fw.spec.theta, fw.spec.setting, mode, order, band, tol)?;
        let want = fw.spec.hamiltonian.up_to_order(order);
        let scale = want.max_abs();
        let mut keys: Vec<_> = want.keys().chain(got.hamiltonian.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let (a, b) = (want.get(&k), got.hamiltonian.get(&k));
            let (row, rel) = error_row(k.to_string(), (a.re, a.im), (b.re, b.im), scale);
            worst = worst.max(rel);
            rows.push(row);
        }
        reports = to_value(&got.reports)?;
    }
    let pass = worst <= tol;
    let report = json!({
        "command": "roundtrip",
        "mode": to_value(&mode)?,
        "order": order,
        "tol": tol,
        "errors": rows,
        "max_rel_error": worst,
        "status": if pass { "ok" } else { "residual_failure" },
        "inverse_reports": reports,
        "normal_form": nf_json(&nf)?,
    });
    Ok((report, if pass { EXIT_OK } else { EXIT_RESIDUAL }))
}
