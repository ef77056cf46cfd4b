//! Command-line front end: `gen`, `compute`, `verify`, `bench` and `sim`.
//!
//! Exit codes: 0 success, 1 result mismatch, 2 usage error, 3 input or
//! format error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::curve::{CurveParams, JacobianPoint, OpCounters};
use crate::curves;
use crate::msm::{msm_naive, msm_pippenger, MsmConfig, Reduction, DEFAULT_INNER_WINDOW_BITS, DEFAULT_WINDOW_BITS};
use crate::sim::{sweep, write_sim_csv, SimConfig};
use crate::vectors::{generate_vectors, read_vectors, write_bench_csv, write_vectors, BenchRow, VectorSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sabmsm", version, about = "Bucket-method MSM engine and accelerator performance model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a deterministic vector file.
    Gen(GenArgs),
    /// Compute the MSM of a vector file and print the result and counters.
    Compute(ComputeArgs),
    /// Recompute with every strategy and compare against the stored result.
    Verify(VerifyArgs),
    /// Time MSM strategies on generated vectors and write a CSV.
    Bench(BenchArgs),
    /// Run the accelerator performance model over a parameter grid.
    Sim(Box<SimArgs>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveName {
    Bn128,
    #[value(name = "bls12-381")]
    Bls12_381,
    Toy,
}

impl CurveName {
    fn params(self) -> &'static CurveParams {
        match self {
            CurveName::Bn128 => curves::bn128(),
            CurveName::Bls12_381 => curves::bls12_381(),
            CurveName::Toy => curves::toy(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Naive,
    Pippenger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Combine {
    RunningSum,
    Recursive,
}

impl From<Combine> for Reduction {
    fn from(c: Combine) -> Self {
        match c {
            Combine::RunningSum => Reduction::RunningSum,
            Combine::Recursive => Reduction::Recursive,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    curve: CurveName,
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Do not append the expected result line.
    #[arg(long)]
    no_result: bool,
}

#[derive(Debug, Args)]
struct EngineArgs {
    #[arg(long, default_value_t = DEFAULT_WINDOW_BITS)]
    window: u32,
    #[arg(long, default_value_t = DEFAULT_INNER_WINDOW_BITS)]
    inner_window: u32,
    /// Window workers (0 = all available threads).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(long)]
    vectors: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Pippenger)]
    algo: Algo,
    #[arg(long, value_enum, default_value_t = Combine::RunningSum)]
    combine: Combine,
    #[command(flatten)]
    engine: EngineArgs,
    /// Also write the result line to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    vectors: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    curve: CurveName,
    /// Comma-separated MSM sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Comma-separated: naive, pippenger, pippenger-recursive.
    #[arg(long, value_delimiter = ',', default_value = "naive,pippenger")]
    algos: Vec<String>,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    csv: PathBuf,
}

/// Every sim flag takes a comma-separated list; the grid is their product.
#[derive(Debug, Args)]
struct SimArgs {
    /// Base configuration file of key=value lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of BAM units sharing the UDA.
    #[arg(long, value_delimiter = ',')]
    bams: Vec<String>,
    /// Clock frequency in Hz.
    #[arg(long, value_delimiter = ',')]
    fmax: Vec<String>,
    /// UDA pipeline latency in cycles.
    #[arg(long, value_delimiter = ',')]
    latency: Vec<String>,
    /// Window bits k.
    #[arg(long, value_delimiter = ',')]
    window: Vec<String>,
    /// IS-RBAM inner window bits.
    #[arg(long, value_delimiter = ',')]
    inner_window: Vec<String>,
    /// Scalar width N.
    #[arg(long, value_delimiter = ',')]
    scalar_bits: Vec<String>,
    /// MSM size m (accepts 2^e).
    #[arg(long, value_delimiter = ',')]
    size: Vec<String>,
    /// Bucket hazard policy: stall or defer.
    #[arg(long, value_delimiter = ',')]
    hazard: Vec<String>,
    /// Deferred-pair queue capacity.
    #[arg(long, value_delimiter = ',')]
    defer_depth: Vec<String>,
    /// Memory channels.
    #[arg(long, value_delimiter = ',')]
    channels: Vec<String>,
    /// Bytes per cycle per channel.
    #[arg(long, value_delimiter = ',')]
    channel_bytes: Vec<String>,
    /// Fixed host overhead in seconds.
    #[arg(long, value_delimiter = ',')]
    host_fixed: Vec<String>,
    /// Host transfer bandwidth in bytes per second.
    #[arg(long, value_delimiter = ',')]
    host_bw: Vec<String>,
    /// Digit stream: uniform or cyclic.
    #[arg(long, value_delimiter = ',')]
    workload: Vec<String>,
    /// Digit sampling seed.
    #[arg(long, value_delimiter = ',')]
    seed: Vec<String>,
    /// Output path; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Mismatch(_) => EXIT_MISMATCH,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Usage(m) | Failure::Input(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code. Diagnostics go to standard error.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
        Command::Sim(a) => sim(*a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("sabmsm: {}", f.message());
            f.code()
        }
    }
}

fn engine_config(e: &EngineArgs, reduction: Reduction) -> Result<MsmConfig, Failure> {
    let cfg = MsmConfig { window_bits: e.window, reduction, inner_window_bits: e.inner_window, parallelism: e.threads };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn run_algo(
    vs: &VectorSet,
    cv: &CurveParams,
    algo: Algo,
    cfg: &MsmConfig,
) -> Result<(JacobianPoint, OpCounters), Failure> {
    let mut c = OpCounters::default();
    let r = match algo {
        Algo::Naive => msm_naive(&vs.scalars, &vs.points, cv, &mut c),
        Algo::Pippenger => msm_pippenger(&vs.scalars, &vs.points, cv, cfg, &mut c),
    }
    .map_err(input)?;
    Ok((r, c))
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    if a.size == 0 {
        return Err(Failure::Usage("--size must be at least 1".into()));
    }
    let cv = a.curve.params();
    let mut vs = generate_vectors(cv, a.size, a.seed);
    if !a.no_result {
        let (r, _) = run_algo(&vs, cv, Algo::Pippenger, &MsmConfig::default())?;
        vs.expected = Some(cv.to_affine(&r));
    }
    write_vectors(&vs, &a.out).map_err(input)
}

fn compute(a: ComputeArgs) -> Result<(), Failure> {
    let cfg = engine_config(&a.engine, a.combine.into())?;
    let vs = read_vectors(&a.vectors).map_err(|e| Failure::Input(format!("{}: {e}", a.vectors.display())))?;
    let cv = vs.curve_params().map_err(input)?;
    let start = Instant::now();
    let (r, c) = run_algo(&vs, cv, a.algo, &cfg)?;
    let seconds = start.elapsed().as_secs_f64();
    let line = format!("result {}", cv.format_affine(&cv.to_affine(&r)));
    println!("{line}");
    println!(
        "mod_muls={} mod_sqrs={} mod_adds={} point_adds={} point_doubles={} uda_ops={} seconds={seconds:.6}",
        c.mod_muls, c.mod_sqrs, c.mod_adds, c.point_adds, c.point_doubles, c.uda_ops
    );
    if let Some(out) = a.out {
        fs::write(out, format!("{line}\n")).map_err(input)?;
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let vs = read_vectors(&a.vectors).map_err(|e| Failure::Input(format!("{}: {e}", a.vectors.display())))?;
    let cv = vs.curve_params().map_err(input)?;
    let Some(expected) = vs.expected else {
        return Err(Failure::Input(format!("{} has no result line", a.vectors.display())));
    };
    let expected = cv.to_jacobian(&expected);
    let runs = [
        ("naive", Algo::Naive, Reduction::RunningSum),
        ("pippenger/running-sum", Algo::Pippenger, Reduction::RunningSum),
        ("pippenger/recursive", Algo::Pippenger, Reduction::Recursive),
    ];
    let mut mismatches = Vec::new();
    for (name, algo, reduction) in runs {
        let cfg = engine_config(&a.engine, reduction)?;
        let (r, _) = run_algo(&vs, cv, algo, &cfg)?;
        let ok = cv.points_equal(&r, &expected);
        println!("{name}: {}", if ok { "ok" } else { "MISMATCH" });
        if !ok {
            mismatches.push(name);
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("result differs for {}", mismatches.join(", "))))
    }
}

fn bench(a: BenchArgs) -> Result<(), Failure> {
    let cv = a.curve.params();
    let mut plan = Vec::new();
    for name in &a.algos {
        let (algo, reduction) = match name.as_str() {
            "naive" => (Algo::Naive, Reduction::RunningSum),
            "pippenger" | "pippenger-running-sum" => (Algo::Pippenger, Reduction::RunningSum),
            "pippenger-recursive" => (Algo::Pippenger, Reduction::Recursive),
            other => return Err(Failure::Usage(format!("unknown algorithm {other:?}"))),
        };
        plan.push((name.as_str(), algo, engine_config(&a.engine, reduction)?));
    }
    let mut rows = Vec::new();
    for &m in &a.sizes {
        if m == 0 {
            return Err(Failure::Usage("sizes must be at least 1".into()));
        }
        let vs = generate_vectors(cv, m, a.seed);
        for (name, algo, cfg) in &plan {
            let start = Instant::now();
            let (_, c) = run_algo(&vs, cv, *algo, cfg)?;
            let seconds = start.elapsed().as_secs_f64();
            let row = BenchRow::new(cv.name(), name, m, cfg.window_bits, seconds, &c);
            eprintln!("{} {} m={} {:.4}s {:.4} Mpps", row.curve, row.algo, m, seconds, row.mpps);
            rows.push(row);
        }
    }
    write_bench_csv(&rows, &a.csv).map_err(input)
}

fn sim_grid(a: &SimArgs) -> Result<Vec<SimConfig>, Failure> {
    let base = match &a.config {
        Some(p) => SimConfig::from_file(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => SimConfig::default(),
    };
    let axes: [(&str, &Vec<String>); 15] = [
        ("bams", &a.bams),
        ("fmax", &a.fmax),
        ("latency", &a.latency),
        ("window", &a.window),
        ("inner_window", &a.inner_window),
        ("scalar_bits", &a.scalar_bits),
        ("size", &a.size),
        ("hazard", &a.hazard),
        ("defer_depth", &a.defer_depth),
        ("channels", &a.channels),
        ("channel_bytes", &a.channel_bytes),
        ("host_fixed", &a.host_fixed),
        ("host_bw", &a.host_bw),
        ("workload", &a.workload),
        ("seed", &a.seed),
    ];
    let mut grid = vec![base];
    for (key, values) in axes {
        if values.is_empty() {
            continue;
        }
        let mut next = Vec::with_capacity(grid.len() * values.len());
        for cfg in &grid {
            for v in values {
                let mut c = cfg.clone();
                c.set(key, v).map_err(usage)?;
                next.push(c);
            }
        }
        grid = next;
    }
    for c in &grid {
        c.validate().map_err(usage)?;
    }
    Ok(grid)
}

fn sim(a: SimArgs) -> Result<(), Failure> {
    let grid = sim_grid(&a)?;
    let reports = sweep(&grid).map_err(usage)?;
    let rows: Vec<_> = grid.into_iter().zip(reports).collect();
    match &a.csv {
        Some(path) => {
            let f = fs::File::create(path).map_err(input)?;
            write_sim_csv(f, &rows).map_err(input)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_sim_csv(&mut lock, &rows).map_err(input)?;
            lock.flush().map_err(input)
        }
    }
}
