// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use serde::Serialize;
use subclassical_core::classical::{
    birkhoff_decompose, build_dilation, dilation_restriction, validate_stochastic, StochasticMatrix,
};
use subclassical_core::numerics::{check_density_matrix, ComplexMatrix, ProbabilityVector};
use subclassical_core::qext::{classify_with_tol, permutation_unitary, traced_extension, CPMap};
use subclassical_core::tol;
use subclassical_core::trajectories::{
    kraus_law, marginal_law, run_one_step_batch, spin, spontaneous_emission, BipartiteUnitary, ExampleSystem,
};

use crate::acceptance::{self, Criterion, Fault};
use crate::error::CliError;
use crate::formats::{
    real_rows, BipartiteJson, BirkhoffJson, CPMapJson, ClassificationJson, Counts, DilationJson, MatrixJson,
    StochasticJson, CP_VIOLATION,
};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const MAX_TOL: f64 = 1e-3;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_STEPS: u64 = 100_000;

/// Error bound on restriction round trips (`dilate`, `extend`).
const ROUND_TRIP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    CsvSummary,
}

/// Options shared by every command.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    /// Classification tolerance.
    pub tol: f64,
    pub seed: u64,
    pub steps: u64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, seed: DEFAULT_SEED, steps: DEFAULT_STEPS, format: Format::Json }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol <= MAX_TOL) {
            return Err(CliError::Validation(format!(
                "tolerance must lie in (0, {MAX_TOL:e}], got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Rendered command output. `failure` is set when the command ran but a
/// verification did not hold (exit 1); `notes` go to stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub failure: Option<String>,
    pub notes: Option<String>,
}

/// Header and rows of a `csv-summary` table.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn key_value(pairs: Vec<(&str, String)>) -> Self {
        Self {
            header: vec!["key", "value"],
            rows: pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
        }
    }
}

pub trait Report: Serialize {
    fn table(&self) -> Table;
}

fn render<R: Report>(report: &R, cfg: &Config) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        Format::CsvSummary => {
            let table = report.table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn finish<R: Report>(report: &R, cfg: &Config, failure: Option<String>) -> Result<Outcome, CliError> {
    Ok(Outcome { body: render(report, cfg)?, failure, notes: None })
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(text)?)
}

fn parse_stochastic(text: &str) -> Result<StochasticMatrix, CliError> {
    let raw = parse::<StochasticJson>(text)?.to_real()?;
    Ok(validate_stochastic(&raw)?)
}

#[derive(Serialize)]
pub struct DilationCheck {
    pub restriction_error: f64,
    pub bijective: bool,
}

#[derive(Serialize)]
pub struct DilateReport {
    #[serde(flatten)]
    pub dilation: DilationJson,
    pub verification: DilationCheck,
}

impl Report for DilateReport {
    fn table(&self) -> Table {
        Table::key_value(vec![
            ("sys_size", self.dilation.sys_size.to_string()),
            ("env_size", self.dilation.env_size.to_string()),
            ("restriction_error", num(self.verification.restriction_error)),
            ("bijective", self.verification.bijective.to_string()),
        ])
    }
}

pub fn dilate(input: &str, cfg: &Config) -> Result<Outcome, CliError> {
    let q = parse_stochastic(input)?;
    let d = build_dilation(&q);
    let restriction_error = dilation_restriction(&d).max_abs_diff(&q);
    let t = d.t();
    let mut seen = vec![false; t.len()];
    let bijective = t.is_consistent() && t.forward().iter().all(|&a| !std::mem::replace(&mut seen[a], true));
    let report = DilateReport {
        dilation: DilationJson::from(&d),
        verification: DilationCheck { restriction_error, bijective },
    };
    let failure = if !bijective {
        Some("dilation map is not a bijection".to_string())
    } else if restriction_error > ROUND_TRIP {
        Some(format!("restriction error {restriction_error:e} exceeds {ROUND_TRIP:e}"))
    } else {
        None
    };
    finish(&report, cfg, failure)
}

fn classification(m: &CPMap, cfg: &Config) -> Result<ClassificationJson, CliError> {
    let choi_min = m.choi_min_eigenvalue();
    if choi_min < -CP_VIOLATION {
        return Err(CliError::NotCompletelyPositive(choi_min));
    }
    let unitality = m.unitality_deviation();
    let c = classify_with_tol(m, cfg.tol);
    let mut out = ClassificationJson::new(&c, cfg.tol, unitality, choi_min);
    if unitality > tol::DEFAULT {
        out.warnings.push(format!("not unital: max |sum K*K - I| = {unitality:e}"));
    }
    if c.is_subclassical && c.stochastic_q().is_err() {
        out.warnings.push("restriction to the diagonal is not a stochastic matrix".to_string());
    }
    Ok(out)
}

fn classification_rows(c: &ClassificationJson) -> Vec<(&'static str, String)> {
    vec![
        ("subclassical", c.subclassical.to_string()),
        ("doubly", c.doubly.to_string()),
        ("measurement", c.measurement.to_string()),
        ("purely", c.purely.to_string()),
        ("leakage", num(c.leakage)),
        ("B_norm", num(c.b_norm)),
        ("C_norm", num(c.c_norm)),
        ("unitality_error", num(c.unitality_error)),
        ("choi_min_eigenvalue", num(c.choi_min_eigenvalue)),
        ("warnings", c.warnings.len().to_string()),
    ]
}

impl Report for ClassificationJson {
    fn table(&self) -> Table {
        Table::key_value(classification_rows(self))
    }
}

pub fn classify(input: &str, cfg: &Config) -> Result<Outcome, CliError> {
    let m = parse::<CPMapJson>(input)?.to_cpmap()?;
    let report = classification(&m, cfg)?;
    finish(&report, cfg, None)
}

#[derive(Serialize)]
pub struct ExtendReport {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<f64>>,
    pub dilation: DilationJson,
    pub cp_map: CPMapJson,
    pub classification: ClassificationJson,
    pub restriction_error: f64,
}

impl Report for ExtendReport {
    fn table(&self) -> Table {
        let mut rows = vec![
            ("n", self.q.len().to_string()),
            ("env_size", self.dilation.env_size.to_string()),
            ("kraus_operators", self.cp_map.kraus.as_ref().map_or(0, Vec::len).to_string()),
            ("restriction_error", num(self.restriction_error)),
        ];
        rows.extend(classification_rows(&self.classification));
        Table::key_value(rows)
    }
}

pub fn extend(input: &str, cfg: &Config) -> Result<Outcome, CliError> {
    let q = parse_stochastic(input)?;
    let d = build_dilation(&q);
    let u = permutation_unitary(d.t());
    let m = traced_extension(&u, d.nu())?;
    let class = classification(&m, cfg)?;
    let restriction_error =
        class.q.iter().flatten().zip(q.matrix().entries()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let failure = if !class.doubly {
        Some("extension is not doubly subclassical".to_string())
    } else if restriction_error > ROUND_TRIP {
        Some(format!("restriction error {restriction_error:e} exceeds {ROUND_TRIP:e}"))
    } else {
        None
    };
    let report = ExtendReport {
        q: q.to_rows(),
        dilation: DilationJson::from(&d),
        cp_map: CPMapJson::from(&m),
        classification: class,
        restriction_error,
    };
    finish(&report, cfg, failure)
}

#[derive(Serialize)]
pub struct BirkhoffReport {
    pub n: usize,
    #[serde(flatten)]
    pub decomposition: BirkhoffJson,
    pub reconstruction_error: f64,
}

impl Report for BirkhoffReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["weight", "permutation"],
            rows: self
                .decomposition
                .weights
                .iter()
                .zip(&self.decomposition.permutations)
                .map(|(w, p)| vec![num(*w), join(p)])
                .collect(),
        }
    }
}

/// Shortest round-trip form, as in the JSON output.
fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "null".into())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn birkhoff(input: &str, cfg: &Config) -> Result<Outcome, CliError> {
    let r = parse::<StochasticJson>(input)?.to_real()?;
    let b = birkhoff_decompose(&r)?;
    let reconstruction_error = b.reconstruct().max_abs_diff(&r);
    let failure = (reconstruction_error > tol::BIRKHOFF_RESIDUAL)
        .then(|| format!("reconstruction error {reconstruction_error:e}"));
    let report = BirkhoffReport { n: r.n(), decomposition: BirkhoffJson::from(&b), reconstruction_error };
    finish(&report, cfg, failure)
}

/// Named example systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    SpontaneousEmission,
    Spin,
}

impl Preset {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "spontaneous-emission" => Some(Preset::SpontaneousEmission),
            "spin" => Some(Preset::Spin),
            _ => None,
        }
    }
}

/// Coupling parameters; `time` defaults to `π/4` for spontaneous emission
/// and `1` for the spin system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    pub theta: f64,
    pub lambda: f64,
    pub mu: f64,
    pub time: Option<f64>,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self { theta: 1.0, lambda: FRAC_PI_3, mu: FRAC_PI_6, time: None }
    }
}

fn build_preset(preset: Preset, p: &SystemParams) -> Result<ExampleSystem, CliError> {
    let finite = [p.theta, p.lambda, p.mu, p.time.unwrap_or(0.0)].iter().all(|x| x.is_finite());
    if !finite {
        return Err(CliError::Validation("system parameters must be finite".into()));
    }
    Ok(match preset {
        Preset::SpontaneousEmission => spontaneous_emission(p.theta, p.time.unwrap_or(FRAC_PI_4))?,
        Preset::Spin => spin(p.lambda, p.mu, p.time.unwrap_or(1.0))?,
    })
}

#[derive(Serialize)]
pub struct ExampleReport {
    #[serde(rename = "H")]
    pub h: MatrixJson,
    #[serde(rename = "U")]
    pub u: MatrixJson,
    #[serde(rename = "R")]
    pub r: Vec<Vec<f64>>,
    pub birkhoff: BirkhoffJson,
}

impl Report for ExampleReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["weight", "permutation"],
            rows: self
                .birkhoff
                .weights
                .iter()
                .zip(&self.birkhoff.permutations)
                .map(|(w, p)| vec![num(*w), join(p)])
                .collect(),
        }
    }
}

pub fn example(preset: Preset, params: &SystemParams, cfg: &Config) -> Result<Outcome, CliError> {
    let ex = build_preset(preset, params)?;
    let report = ExampleReport {
        h: (&ex.h).into(),
        u: (&ex.u).into(),
        r: real_rows(&ex.r),
        birkhoff: (&ex.birkhoff).into(),
    };
    finish(&report, cfg, None)
}

/// Where the system/environment unitary comes from.
pub enum SystemSpec<'a> {
    Preset(Preset, SystemParams),
    /// `BipartiteUnitary` JSON text.
    Custom(&'a str),
}

/// Initial system state; only diagonal states are in scope.
pub enum Initial<'a> {
    /// Point mass on `|0⟩`.
    Ground,
    Law(Vec<f64>),
    /// Density matrix as `MatrixJson` text.
    State(&'a str),
}

#[derive(Serialize)]
pub struct TrajectoryReport {
    pub steps: u64,
    pub seed: u64,
    pub counts: Counts,
    pub exact_law: Vec<f64>,
    pub kraus_law: Vec<f64>,
    pub law_identity_error: f64,
    pub abs_deviation: Vec<f64>,
    pub max_abs_deviation: f64,
    pub within_three_sigma: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_states: Option<Vec<Option<MatrixJson>>>,
}

impl Report for TrajectoryReport {
    fn table(&self) -> Table {
        let n = self.steps.max(1) as f64;
        Table {
            header: vec!["outcome", "count", "frequency", "exact", "abs_deviation"],
            rows: self
                .counts
                .0
                .iter()
                .enumerate()
                .map(|(y, &k)| {
                    vec![
                        y.to_string(),
                        k.to_string(),
                        num(k as f64 / n),
                        num(self.exact_law[y]),
                        num(self.abs_deviation[y]),
                    ]
                })
                .collect(),
        }
    }
}

fn initial_law(initial: &Initial, sys: usize) -> Result<ProbabilityVector, CliError> {
    let mu = match initial {
        Initial::Ground => ProbabilityVector::point_mass(sys, 0),
        Initial::Law(w) => ProbabilityVector::new(w.clone())?,
        Initial::State(text) => {
            let rho = parse::<MatrixJson>(text)?.to_matrix()?;
            check_density_matrix(&rho, tol::DEFAULT)?;
            let off = rho.offdiag_max_abs();
            if off > tol::NEGATIVE_CLAMP {
                return Err(CliError::Validation(format!(
                    "initial state must be diagonal in the canonical basis (off-diagonal {off:e})"
                )));
            }
            ProbabilityVector::normalized(rho.diag().iter().map(|z| z.re).collect())?
        }
    };
    if mu.dim() != sys {
        return Err(CliError::Validation(format!(
            "initial law on {} states for a {sys}-dimensional system",
            mu.dim()
        )));
    }
    Ok(mu)
}

pub fn trajectory(
    system: &SystemSpec,
    initial: &Initial,
    final_states: bool,
    cfg: &Config,
) -> Result<Outcome, CliError> {
    let bu: BipartiteUnitary = match system {
        SystemSpec::Preset(p, params) => build_preset(*p, params)?.bipartite(),
        SystemSpec::Custom(text) => parse::<BipartiteJson>(text)?.to_bipartite()?,
    };
    if cfg.steps == 0 {
        return Err(CliError::Validation("--steps must be positive".into()));
    }
    let mu = initial_law(initial, bu.sys_dim())?;
    let rho = ComplexMatrix::real_diagonal(mu.weights());
    let exact = marginal_law(&bu, &mu)?;
    let kraus = kraus_law(&bu, &rho)?;
    let law_identity_error =
        exact.weights().iter().zip(&kraus).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let counts = run_one_step_batch(&bu, &rho, cfg.steps, cfg.seed)?;
    let n = cfg.steps as f64;
    let abs_deviation: Vec<f64> =
        counts.iter().zip(exact.weights()).map(|(&k, &p)| (k as f64 / n - p).abs()).collect();
    let max_abs_deviation = abs_deviation.iter().copied().fold(0.0, f64::max);
    let within_three_sigma = exact
        .weights()
        .iter()
        .zip(&abs_deviation)
        .filter(|(&p, _)| p >= 0.01)
        .all(|(&p, &dev)| dev <= 3.0 * (p * (1.0 - p) / n).sqrt());
    let final_states = final_states.then(|| {
        (0..bu.env_dim())
            .map(|y| {
                let p = kraus[y];
                (p > tol::DEGENERATE_OUTCOME).then(|| {
                    let my = bu.block(y, 0);
                    let post = my.matmul(&rho).matmul(&my.adjoint()).scale_real(1.0 / p);
                    MatrixJson::from(&post)
                })
            })
            .collect()
    });
    let report = TrajectoryReport {
        steps: cfg.steps,
        seed: cfg.seed,
        counts: Counts(counts),
        exact_law: exact.weights().to_vec(),
        kraus_law: kraus,
        law_identity_error,
        abs_deviation,
        max_abs_deviation,
        within_three_sigma,
        final_states,
    };
    finish(&report, cfg, None)
}

#[derive(Serialize)]
pub struct CriterionJson {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub criteria: Vec<CriterionJson>,
}

impl Report for VerifyReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["criterion", "name", "status", "detail"],
            rows: self
                .criteria
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.name.to_string(),
                        if c.passed { "pass" } else { "FAIL" }.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect(),
        }
    }
}

/// Runs the acceptance suite. The per-criterion table (with timings when
/// `verbose`) is returned in `notes`.
pub fn verify(verbose: bool, fault: Option<Fault>, cfg: &Config) -> Result<Outcome, CliError> {
    let results: Vec<Criterion> = acceptance::run_all(fault);
    let mut notes = String::new();
    for c in &results {
        notes.push_str(&c.line());
        if verbose {
            notes.push_str(&format!("  [{:.1} ms]", c.elapsed.as_secs_f64() * 1e3));
        }
        notes.push('\n');
    }
    let failed: Vec<String> =
        results.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.id, c.name)).collect();
    let report = VerifyReport {
        passed: failed.is_empty(),
        criteria: results
            .iter()
            .map(|c| CriterionJson {
                id: c.id,
                name: c.name,
                passed: c.passed,
                detail: c.detail.clone(),
                elapsed_ms: verbose.then_some(c.elapsed.as_secs_f64() * 1e3),
            })
            .collect(),
    };
    let failure = (!failed.is_empty()).then(|| format!("failing criteria: {}", failed.join(", ")));
    let mut out = finish(&report, cfg, failure)?;
    out.notes = Some(notes);
    Ok(out)
}
