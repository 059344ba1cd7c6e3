//! Batch runs over generated graph families, emitting one CSV row per cell.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{self, find_induced_kst, Graph};
use crate::hitting::{
    construct_bet_hitting_set, exchange_size, min_hitting_set_with_cap, paper_schedule, verify_by_deletion,
    verify_hitting_set_with_cap, HittingCertificate, Mode, ParamSchedule,
};
use crate::mis::{alpha_with_witness, DEFAULT_ENUMERATION_CAP};

pub const CSV_SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: &str = "schema,family,n,seed,alpha,h_exact,t_bet,t_trivial,e_observed,runtime_ms";

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub families: Vec<FamilySpec>,
    #[serde(default)]
    pub n_values: Vec<usize>,
    pub seeds: Vec<u64>,
    pub schedule: ScheduleSpec,
    #[serde(default)]
    pub caps: Caps,
    /// Fill `runtime_ms`. Off by default so that output is reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Fixed clique sizes; `n_values` is ignored.
    Cluster { sizes: Vec<usize> },
    /// Edge-addition process avoiding 4-cycles, up to `m` edges (saturating when absent).
    C4Free { m: Option<usize> },
    Path,
    Cycle,
    Gnp { p: f64 },
    /// Clique on `clique` vertices plus an independent remainder, cross edges with probability `p`.
    Split { clique: usize, p: f64 },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Cluster { sizes } => {
                format!("cluster[{}]", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";"))
            }
            FamilySpec::C4Free { m: Some(m) } => format!("c4-free[m={m}]"),
            FamilySpec::C4Free { m: None } => "c4-free[saturated]".into(),
            FamilySpec::Path => "path".into(),
            FamilySpec::Cycle => "cycle".into(),
            FamilySpec::Gnp { p } => format!("gnp[p={p}]"),
            FamilySpec::Split { clique, p } => format!("split[clique={clique};p={p}]"),
        }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Graph> {
        match self {
            FamilySpec::Cluster { sizes } => graph::gen_cluster(sizes),
            FamilySpec::C4Free { m } => graph::gen_c4_free_process(n, m.unwrap_or(n * n.saturating_sub(1) / 2), seed),
            FamilySpec::Path => Ok(graph::gen_path(n)),
            FamilySpec::Cycle if n < 3 => Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}"))),
            FamilySpec::Cycle => Ok(graph::gen_cycle(n)),
            FamilySpec::Gnp { p } => graph::gen_gnp(n, *p, seed),
            FamilySpec::Split { clique, p } => {
                if *clique > n {
                    return Err(Error::InvalidArgument(format!("clique {clique} larger than n = {n}")));
                }
                graph::gen_split(*clique, n - clique, *p, seed)
            }
        }
    }

    fn fixed_n(&self) -> Option<usize> {
        match self {
            FamilySpec::Cluster { sizes } => Some(sizes.iter().sum()),
            _ => None,
        }
    }
}

/// A number or the word `"auto"`.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AutoOr<T> {
    Value(T),
    Word(AutoWord),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum AutoWord {
    Auto,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum BinsSpec {
    Word(BinsWord),
    Explicit(Vec<(f64, f64)>),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum BinsWord {
    /// `ceil(2 / delta)` equal-width bins over `[0, n + 1)`.
    Even,
    /// The asymptotic schedule (usually infeasible at these sizes).
    Paper,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScheduleSpec {
    /// `"paper"`: the asymptotic schedule with `s = t = 2` and automatic `delta`.
    Named(BinsWord),
    Inline(InlineSchedule),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineSchedule {
    pub s: usize,
    pub t: usize,
    /// `"auto"` picks `(min degree + 1/2) / n`, just above the low-degree shortcut.
    #[serde(default = "auto")]
    pub delta: AutoOr<f64>,
    /// `"auto"` picks the largest `k` with `(t - 1) C(k, s) + 1 <= alpha`.
    #[serde(default = "auto")]
    pub k: AutoOr<usize>,
    #[serde(default = "even")]
    pub bins: BinsSpec,
}

fn auto<T>() -> AutoOr<T> {
    AutoOr::Word(AutoWord::Auto)
}

fn even() -> BinsSpec {
    BinsSpec::Word(BinsWord::Even)
}

impl ScheduleSpec {
    fn inline(&self) -> InlineSchedule {
        match self {
            ScheduleSpec::Named(word) => {
                InlineSchedule { s: 2, t: 2, delta: auto(), k: auto(), bins: BinsSpec::Word(*word) }
            }
            ScheduleSpec::Inline(inline) => inline.clone(),
        }
    }

    /// Resolves the schedule for one graph.
    pub fn resolve(&self, g: &Graph, alpha: usize) -> Result<ParamSchedule> {
        let spec = self.inline();
        let n = g.n();
        let delta = match spec.delta {
            AutoOr::Value(d) => d,
            AutoOr::Word(_) => {
                let (_, min_degree) = g.min_degree_vertex().ok_or_else(|| Error::InvalidArgument("empty graph".into()))?;
                (min_degree as f64 + 0.5) / n as f64
            }
        };
        let k = match spec.k {
            AutoOr::Value(k) => k,
            AutoOr::Word(_) => auto_k(spec.s, spec.t, alpha)?,
        };
        match spec.bins {
            BinsSpec::Word(BinsWord::Even) => ParamSchedule::even_bins(spec.s, spec.t, delta, n, k),
            BinsSpec::Word(BinsWord::Paper) => paper_schedule(n, spec.s, spec.t, delta),
            BinsSpec::Explicit(ranges) => ParamSchedule::explicit(spec.s, spec.t, delta, &ranges, k),
        }
    }

    pub fn pattern(&self) -> (usize, usize) {
        let spec = self.inline();
        (spec.s, spec.t)
    }
}

/// Largest `k >= s` with `k <= alpha` and `(t - 1) C(k, s) + 1 <= alpha`.
pub fn auto_k(s: usize, t: usize, alpha: usize) -> Result<usize> {
    (s..=alpha)
        .take_while(|&k| exchange_size(s, t, k).is_some_and(|h| h <= alpha))
        .last()
        .ok_or_else(|| Error::Infeasible(format!("no k >= {s} fits alpha = {alpha} for (s, t) = ({s}, {t})")))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    /// Largest `n` for which the family of maximum independent sets is enumerated.
    pub enumeration: usize,
    /// Largest `n` for which the exact minimum hitting set is computed.
    pub h_exact: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { enumeration: DEFAULT_ENUMERATION_CAP, h_exact: 24 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub alpha: usize,
    pub h_exact: Option<usize>,
    pub t_bet: usize,
    pub t_trivial: usize,
    pub e_observed: Option<usize>,
    pub runtime_ms: Option<f64>,
    pub certificate: HittingCertificate,
}

impl ExperimentRecord {
    pub fn csv_row(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{CSV_SCHEMA_VERSION},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.seed,
            self.alpha,
            opt(&self.h_exact),
            self.t_bet,
            self.t_trivial,
            opt(&self.e_observed),
            self.runtime_ms.map(|ms| format!("{ms:.3}")).unwrap_or_default(),
        )
    }
}

/// A cell that could not be run; the remaining cells are unaffected.
#[derive(Debug)]
pub struct CellError {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct ExperimentReport {
    pub records: Vec<ExperimentRecord>,
    pub errors: Vec<CellError>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for record in &self.records {
            let _ = writeln!(out, "{}", record.csv_row());
        }
        out
    }
}

struct Cell<'a> {
    family: &'a FamilySpec,
    n: usize,
    seed: u64,
}

/// Runs every (family, n, seed) cell. Cells run in parallel; results are reported in cell
/// order. A certificate that fails verification aborts the run with that certificate.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut cells = Vec::new();
    for family in &config.families {
        let sizes: Vec<usize> = match family.fixed_n() {
            Some(n) => vec![n],
            None => config.n_values.clone(),
        };
        for &n in &sizes {
            for &seed in &config.seeds {
                cells.push(Cell { family, n, seed });
            }
        }
    }
    let outcomes: Vec<Result<ExperimentRecord>> = cells.par_iter().map(|cell| run_cell(cell, config)).collect();
    let mut report = ExperimentReport::default();
    for (cell, outcome) in cells.iter().zip(outcomes) {
        match outcome {
            Ok(record) => report.records.push(record),
            Err(e @ Error::Verification { .. }) => return Err(e),
            Err(error) => report.errors.push(CellError {
                family: cell.family.label(),
                n: cell.n,
                seed: cell.seed,
                error,
            }),
        }
    }
    Ok(report)
}

fn run_cell(cell: &Cell<'_>, config: &ExperimentConfig) -> Result<ExperimentRecord> {
    let start = Instant::now();
    let g = cell.family.generate(cell.n, cell.seed)?;
    let n = g.n();
    let (s, t) = config.schedule.pattern();
    if let Some(witness) = find_induced_kst(&g, s, t) {
        return Err(Error::FreenessViolation { witness });
    }
    let (alpha, _) = alpha_with_witness(&g);
    let sched = config.schedule.resolve(&g, alpha)?;
    let cert = construct_bet_hitting_set(&g, &sched, cell.seed)?;
    let valid = if n <= config.caps.enumeration {
        verify_hitting_set_with_cap(&g, &cert.hitting_set, config.caps.enumeration)?
    } else {
        verify_by_deletion(&g, &cert.hitting_set)
    };
    if !valid {
        return Err(Error::Verification {
            message: format!("{} n={} seed={}: T misses a maximum independent set", cell.family.label(), n, cell.seed),
            record: cert.to_record(),
        });
    }
    let h_exact = if n <= config.caps.h_exact {
        Some(min_hitting_set_with_cap(&g, config.caps.enumeration)?.0)
    } else {
        None
    };
    let (_, min_degree) = g.min_degree_vertex().expect("n >= 1 after construction");
    Ok(ExperimentRecord {
        family: cell.family.label(),
        n,
        seed: cell.seed,
        alpha,
        h_exact,
        t_bet: cert.hitting_set.len(),
        t_trivial: min_degree + 1,
        e_observed: if cert.mode == Mode::BetConstruction { cert.residual_edges } else { None },
        runtime_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        certificate: cert,
    })
}
