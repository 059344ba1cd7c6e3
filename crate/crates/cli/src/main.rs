use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hitlab_core::analysis::{auto_k, run_experiment, ExperimentConfig};
use hitlab_core::drc::{self, BetaRule, DrcOutcome};
use hitlab_core::graph::{self, find_induced_kst, format_dimacs, format_edge_list, read_graph};
use hitlab_core::hitting::{
    self, construct_with, min_hitting_set_with_cap, sample_hitting_set, ConstructOptions,
};
use hitlab_core::mis::{self, alpha_with_witness, DEFAULT_ENUMERATION_CAP};
use hitlab_core::{Error, Graph, GraphFormat, HittingCertificate, ParamSchedule, Result, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "hitlab", version, about = "Hitting sets for maximum independent sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Search for an induced K_{s,t}; exits 2 with the witness if one exists.
    CheckFree(CheckFreeArgs),
    /// Independence number, all maximum independent sets, or their intersection.
    Mis(MisArgs),
    /// Build a hitting set and print its certificate.
    Hit(HitArgs),
    /// Check a vertex set or certificate against every maximum independent set.
    Verify(VerifyArgs),
    /// Exact minimum hitting set size.
    Minhit(MinhitArgs),
    /// Random p-subsets as hitting sets.
    SampleHit(SampleHitArgs),
    /// Large clique in a dense induced-C4-free graph.
    Drc(DrcArgs),
    /// Report the asymptotic parameter schedule.
    Schedule(ScheduleArgs),
    /// Run an experiment configuration and emit CSV.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Input graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Input format.
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        read_graph(&self.graph, self.format)
    }
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|source| Error::Io { path: path.clone(), source }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Gnp,
    Cluster,
    C4Free,
    Path,
    Cycle,
    Complete,
    Empty,
    Star,
    Petersen,
    Split,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    /// Vertex count (leaf count for `star`).
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for `gnp`; cross-edge probability for `split`.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Clique sizes for `cluster`, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Edge budget for `c4-free` (default: run to saturation).
    #[arg(long)]
    m: Option<usize>,
    /// Clique part size for `split`.
    #[arg(long, default_value_t = 0)]
    clique: usize,
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct Pattern {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
}

impl Pattern {
    fn check(&self) -> Result<()> {
        if self.s < 1 || self.s > self.t {
            return Err(Error::InvalidArgument(format!("need 1 <= s <= t, got s = {}, t = {}", self.s, self.t)));
        }
        Ok(())
    }
}

#[derive(Args, Debug)]
struct CheckFreeArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    pattern: Pattern,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MisAction {
    Alpha,
    Enumerate,
    Kernel,
}

#[derive(Args, Debug)]
struct MisArgs {
    action: MisAction,
    #[command(flatten)]
    input: GraphInput,
    /// Largest n for which enumeration is attempted.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScheduleKind {
    Paper,
}

#[derive(Args, Debug)]
struct HitArgs {
    #[command(flatten)]
    input: GraphInput,
    #[command(flatten)]
    pattern: Pattern,
    /// Target fraction of n.
    #[arg(long)]
    delta: f64,
    /// Anchor sample size (default: largest k with (t-1) C(k, s) + 1 <= alpha).
    #[arg(long)]
    k: Option<usize>,
    /// Degree bin `lo:hi` in vertices; repeatable. Without any, ceil(2/delta) even bins are used.
    #[arg(long = "theta", value_parser = parse_theta)]
    thetas: Vec<(f64, f64)>,
    /// Use the asymptotic schedule instead of explicit bins.
    #[arg(long)]
    schedule: Option<ScheduleKind>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the `{v} ∪ N(v)` shortcut for low minimum degree.
    #[arg(long)]
    no_shortcut: bool,
    /// Skip the single-vertex answer when alpha > n/2.
    #[arg(long)]
    no_kernel: bool,
    /// Return T = V instead of failing when the exchange set does not fit.
    #[arg(long)]
    allow_fallback: bool,
    #[command(flatten)]
    output: Output,
}

fn parse_theta(text: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = text.split_once(':').ok_or_else(|| format!("expected lo:hi, got {text:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower threshold {lo:?}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper threshold {hi:?}: {e}"))?;
    Ok((lo, hi))
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Certificate file written by `hit`.
    #[arg(long, conflicts_with = "set", required_unless_present = "set")]
    cert: Option<PathBuf>,
    /// Vertex ids separated by spaces or commas.
    #[arg(long)]
    set: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct MinhitArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Also print the lexicographically least optimal set.
    #[arg(long)]
    witness: bool,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct SampleHitArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Sample size.
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BetaChoice {
    Standard,
    Sharper,
}

#[derive(Args, Debug)]
struct DrcArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Edge density the graph is promised to have.
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "standard")]
    beta_rule: BetaChoice,
    /// Explicit beta, overriding the rule.
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args, Debug)]
struct ScheduleArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    pattern: Pattern,
    #[arg(long)]
    delta: f64,
    /// Exponent base (default 10 s).
    #[arg(long)]
    base: Option<f64>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// JSON configuration.
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("error:usage:{first}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error:{}:{e}", e.kind());
        return ExitCode::from(e.exit_code() as u8);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error:{}:{e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// `HITLAB_THREADS` caps the rayon pool used by trials and experiment cells.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("HITLAB_THREADS") else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("HITLAB_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen(args) => gen(args),
        Command::CheckFree(args) => check_free(args),
        Command::Mis(args) => mis_command(args),
        Command::Hit(args) => hit(args),
        Command::Verify(args) => verify(args),
        Command::Minhit(args) => minhit(args),
        Command::SampleHit(args) => sample_hit(args),
        Command::Drc(args) => drc_command(args),
        Command::Schedule(args) => schedule(args),
        Command::Experiment(args) => experiment(args),
    }
}

fn gen(args: GenArgs) -> Result<()> {
    let g = match args.family {
        Family::Gnp => graph::gen_gnp(args.n, args.p, args.seed)?,
        Family::Cluster => graph::gen_cluster(&args.sizes)?,
        Family::C4Free => graph::gen_c4_free_process(args.n, args.m.unwrap_or(args.n * args.n.saturating_sub(1) / 2), args.seed)?,
        Family::Path => graph::gen_path(args.n),
        Family::Cycle if args.n < 3 => return Err(Error::InvalidArgument("cycle needs n >= 3".into())),
        Family::Cycle => graph::gen_cycle(args.n),
        Family::Complete => graph::gen_complete(args.n),
        Family::Empty => graph::gen_empty(args.n),
        Family::Star => graph::gen_star(args.n),
        Family::Petersen => graph::gen_petersen(),
        Family::Split => {
            if args.clique > args.n {
                return Err(Error::InvalidArgument(format!("clique {} larger than n = {}", args.clique, args.n)));
            }
            graph::gen_split(args.clique, args.n - args.clique, args.p, args.seed)?
        }
    };
    let text = match args.format {
        GraphFormat::EdgeList => format_edge_list(&g),
        GraphFormat::Dimacs => format_dimacs(&g),
    };
    args.output.emit(&text)
}

fn check_free(args: CheckFreeArgs) -> Result<()> {
    args.pattern.check()?;
    let g = args.input.load()?;
    match find_induced_kst(&g, args.pattern.s, args.pattern.t) {
        None => {
            println!("free");
            Ok(())
        }
        Some(witness) => {
            println!("{witness}");
            Err(Error::FreenessViolation { witness })
        }
    }
}

fn mis_command(args: MisArgs) -> Result<()> {
    let g = args.input.load()?;
    let mut out = String::new();
    match args.action {
        MisAction::Alpha => {
            let (alpha, witness) = alpha_with_witness(&g);
            let _ = writeln!(out, "alpha: {alpha}\nwitness: {witness}");
        }
        MisAction::Enumerate => {
            let family = mis::enumerate_mis_with_cap(&g, args.cap)?;
            let _ = writeln!(out, "alpha: {}\ncount: {}", family.alpha(), family.len());
            for set in family.iter() {
                let _ = writeln!(out, "{set}");
            }
        }
        MisAction::Kernel => {
            let kernel = mis::kernel_with_cap(&g, args.cap)?;
            let _ = writeln!(out, "kernel: {kernel}");
        }
    }
    print!("{out}");
    Ok(())
}

fn hit(args: HitArgs) -> Result<()> {
    args.pattern.check()?;
    let g = args.input.load()?;
    let (s, t) = (args.pattern.s, args.pattern.t);
    let sched = match args.schedule {
        Some(ScheduleKind::Paper) => hitting::paper_schedule(g.n(), s, t, args.delta)?,
        None => {
            let k = match args.k {
                Some(k) => k,
                None => auto_k(s, t, alpha_with_witness(&g).0)?,
            };
            if args.thetas.is_empty() {
                ParamSchedule::even_bins(s, t, args.delta, g.n(), k)?
            } else {
                ParamSchedule::explicit(s, t, args.delta, &args.thetas, k)?
            }
        }
    };
    let opts = ConstructOptions {
        low_degree_shortcut: !args.no_shortcut,
        allow_fallback: args.allow_fallback,
        kernel_route: !args.no_kernel,
    };
    let cert = construct_with(&g, &sched, args.seed, &opts)?;
    args.output.emit(&cert.to_record())
}

fn parse_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for token in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let v: usize = token.parse().map_err(|_| Error::InvalidArgument(format!("bad vertex id {token:?}")))?;
        if v >= n {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range for n = {n}")));
        }
        set.insert(v);
    }
    Ok(set)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn verify(args: VerifyArgs) -> Result<()> {
    let g = args.input.load()?;
    let (t, record) = match (&args.cert, &args.set) {
        (Some(path), _) => {
            let text = read_text(path)?;
            let cert = HittingCertificate::from_record(&text)?;
            if cert.n != g.n() {
                return Err(Error::InvalidArgument(format!("certificate is for n = {}, graph has n = {}", cert.n, g.n())));
            }
            if let Err(message) = cert.check_consistency(&g) {
                return Err(Error::Verification { message, record: text });
            }
            (cert.hitting_set.clone(), text)
        }
        (None, Some(set)) => {
            let t = parse_set(set, g.n())?;
            let record = format!("T: {t}\n");
            (t, record)
        }
        (None, None) => return Err(Error::InvalidArgument("need --cert or --set".into())),
    };
    let family = mis::enumerate_mis_with_cap(&g, args.cap)?;
    if let Some(missed) = family.first_unhit(&t) {
        return Err(Error::Verification { message: format!("maximum independent set {{{missed}}} avoids T"), record });
    }
    println!("valid: {} maximum independent sets hit by |T| = {}", family.len(), t.len());
    Ok(())
}

fn minhit(args: MinhitArgs) -> Result<()> {
    let g = args.input.load()?;
    let (size, witness) = min_hitting_set_with_cap(&g, args.cap)?;
    println!("{size}");
    if args.witness {
        println!("{witness}");
    }
    Ok(())
}

fn sample_hit(args: SampleHitArgs) -> Result<()> {
    let g = args.input.load()?;
    let report = sample_hitting_set(&g, args.p, args.seed, args.trials)?;
    let mut out = String::new();
    let _ = writeln!(out, "alpha: {}", report.alpha);
    let _ = writeln!(out, "mis_count: {}", report.mis_count);
    let _ = writeln!(out, "trials: {}", report.trials);
    let _ = writeln!(out, "failures: {}", report.failures);
    let _ = writeln!(out, "fail_rate: {}", report.fail_rate);
    let _ = writeln!(out, "union_bound: {}", report.union_bound);
    match (&report.hit, report.first_success) {
        (Some(hit), Some(i)) => {
            let _ = writeln!(out, "first_success: {i}\nT: {hit}");
        }
        _ => {
            let _ = writeln!(out, "first_success:\nT:");
        }
    }
    print!("{out}");
    Ok(())
}

fn drc_command(args: DrcArgs) -> Result<()> {
    let g = args.input.load()?;
    let outcome = match args.beta {
        Some(beta) => drc::drc_clique_with_beta(&g, args.alpha, beta)?,
        None => {
            let rule = match args.beta_rule {
                BetaChoice::Standard => BetaRule::Standard,
                BetaChoice::Sharper => BetaRule::Sharper,
            };
            drc::drc_clique_with(&g, args.alpha, rule)?
        }
    };
    let mut out = String::new();
    match &outcome {
        DrcOutcome::Codegree { missing_edge: (u, v), clique } => {
            let _ = writeln!(out, "branch: codegree\nmissing_edge: {u} {v}\nclique: {clique}\nsize: {}", clique.len());
        }
        DrcOutcome::Neighborhood(trace) => {
            let pairs: Vec<String> = trace.matching.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            let _ = writeln!(out, "branch: neighborhood");
            let _ = writeln!(out, "beta: {}", trace.beta);
            let _ = writeln!(out, "x: {}", trace.x);
            let _ = writeln!(out, "U: {}", trace.u);
            let _ = writeln!(out, "Y: {}", trace.y);
            let _ = writeln!(out, "Z: {}", trace.z);
            let _ = writeln!(out, "matching:{}", pairs.iter().map(|p| format!(" {p}")).collect::<String>());
            let _ = writeln!(out, "clique: {}", trace.clique);
            let _ = writeln!(out, "size: {}", trace.clique.len());
        }
    }
    print!("{out}");
    Ok(())
}

fn schedule(args: ScheduleArgs) -> Result<()> {
    args.pattern.check()?;
    let base = args.base.unwrap_or(10.0 * args.pattern.s as f64);
    let sched = hitting::scaled_schedule(args.n, args.pattern.s, args.pattern.t, args.delta, base)?;
    let mut out = String::new();
    let _ = writeln!(out, "n: {}\ns: {}\nt: {}\ndelta: {}\nbase: {base}", args.n, sched.s, sched.t, sched.delta);
    let _ = writeln!(out, "ln_n: {}", (args.n as f64).ln());
    let _ = writeln!(out, "bins: {}", sched.bins.len());
    for (j, bin) in sched.bins.iter().enumerate() {
        let _ = writeln!(
            out,
            "bin {}: ln_theta_lo {} ln_theta_hi {} ln_k {}",
            j + 1,
            bin.ln_theta_lo,
            bin.ln_theta_hi,
            bin.ln_k
        );
    }
    let _ = writeln!(out, "feasible: {}", sched.feasible);
    print!("{out}");
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let config = ExperimentConfig::from_json(&read_text(&args.config)?)?;
    let report = run_experiment(&config)?;
    for cell in &report.errors {
        eprintln!("warning:{}:{} n={} seed={}: {}", cell.error.kind(), cell.family, cell.n, cell.seed, cell.error);
    }
    args.output.emit(&report.to_csv())
}
