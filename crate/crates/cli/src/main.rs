//! `prodset`: exact product-set experiments from the command line.
//!
//! Every subcommand prints a CSV header followed by one row per
//! measurement. Fields never contain commas and numbers carry full
//! round-trip precision, so output can be concatenated and diffed.
//! Randomized commands are fully determined by `--seed`; parallel commands
//! give identical results at any `--workers` value.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 capacity (memory
//! budget) error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use prodset_core::{
    coverage_deficit, derive_params, energy_diagnostics, growth_set, growth_set_comparator,
    heavy_count_report, hr_general_ratio, hr_ratio, iterated_log, mn_prediction,
    multiplication_table_size, omega_bounded_set, omega_set_comparator, prime_position_set,
    prime_reciprocal_sum, product_set_summary, read_set, theta_forms, tilted_sum, write_set, Error,
    ExperimentReport, FactorSieve, Resources, ThinningLab, TiltParams, CSV_HEADER, DEFAULT_SLACK,
};

#[derive(Parser)]
#[command(
    name = "prodset",
    version,
    about = "Exact product-set experiments: multiplication tables, multiplicative energy, \
             sieved constructions, tilted sums",
    after_help = "All output is CSV with the fixed header\n  \
                  command,n,seed,params,measured,comparator,wall_time_ms,error\n\
                  Exit codes: 0 success, 2 usage/domain error, 3 capacity error."
)]
struct Cli {
    /// Scratch memory budget in bytes; suffixes KiB/MiB/GiB accepted.
    #[arg(
        long,
        global = true,
        default_value = "4GiB",
        value_parser = parse_bytes,
        env = "PRODSET_MEM_BUDGET"
    )]
    mem_budget: u64,

    /// Worker threads (0 = all cores). Results are identical at any count.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Also append the CSV rows to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report wall_time_ms as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    reproducible: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The table exponent computed from both closed forms.
    ///
    /// Measured keys: theta, form_half, form_one, form_delta.
    Theta,

    /// Derived construction parameters at n.
    ///
    /// Measured keys: k, r, h, x, lambda1, lambda2.
    Params {
        #[arg(long)]
        n: u64,
    },

    /// Exact multiplication-table size.
    ///
    /// Measured keys: m_n, ratio (against the comparator `scale`).
    Mtable {
        #[arg(long)]
        n: u64,
    },

    /// Exact |A·B| for two newline-delimited set files.
    ///
    /// Measured keys: size, pair_count, max_tau.
    Prodset {
        /// First set file (ascending decimals, one per line).
        #[arg(long)]
        a: PathBuf,
        /// Second set file.
        #[arg(long)]
        b: PathBuf,
    },

    /// Squarefree growth-constrained set on (n/2, n].
    ///
    /// Measured keys: size, ratio (against the comparator `scale`).
    BuildB {
        #[arg(long)]
        n: u64,
        /// Additive slack in the growth condition.
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: f64,
        /// Write the set to this file.
        #[arg(long)]
        out_set: Option<PathBuf>,
    },

    /// Strict prime-position variant of build-b (always a subset of it).
    ///
    /// Measured keys: size, base_size, is_subset.
    BuildBPp {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out_set: Option<PathBuf>,
    },

    /// Multiplicative energy of the growth-constrained set at n.
    ///
    /// Measured keys: size, energy, ratio (against |B|²·(log_2 n)^4).
    Energy {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: f64,
    },

    /// Seeded random thinning of the growth-constrained set.
    ///
    /// Measured keys: size_b, rho, size_a, size_aa, ratio_size, ratio_pairs,
    /// predictor, rho_sq_f, rho_bsq_over_n, f_over_sqrt_b.
    Thin {
        #[arg(long)]
        n: u64,
        /// Damping factor g > 1; default log_3 n.
        #[arg(long)]
        g: Option<f64>,
        /// Thinning seed; drawn from system entropy (and reported) if omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Emit this many rows with seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        repeats: u32,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: f64,
        /// Write the thinned set to this file (repeats must be 1).
        #[arg(long)]
        out_set: Option<PathBuf>,
    },

    /// Integers m <= n whose prime-factor count with multiplicity stays
    /// below the derived threshold k + r.
    ///
    /// Measured keys: size, ratio (against the comparator `scale`).
    BuildA {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out_set: Option<PathBuf>,
    },

    /// Exact coverage deficit of the build-a self-products against the full
    /// table. Needs a sieve up to n², capping n near 2^14 at the default
    /// budget.
    ///
    /// Measured keys: m_n, size_a, size_aa, missing, heavy, coverage_ratio.
    Deficit {
        #[arg(long)]
        n: u64,
    },

    /// Tilted sum over m <= x of lambda^(prime-power count below t).
    ///
    /// Measured keys: sum, ratio (against x·(log t)^(lambda-1)).
    Tilted {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        lambda: f64,
    },

    /// Full mean-value ratio for lambda^(prime-power count), with the prime
    /// reciprocal sum evaluated exactly.
    ///
    /// Measured keys: sum, prime_sum, ratio.
    HrRatio {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        lambda: f64,
    },

    /// Heavy-product count (more than 2k+h prime factors below n²) against
    /// its tilted majorant. Needs a sieve up to n².
    ///
    /// Measured keys: exact, majorant, dominated, threshold.
    D1 {
        #[arg(long)]
        n: u64,
    },

    /// Run one command over an n-grid; failures at single points become
    /// rows with the error column set and the sweep continues.
    ///
    /// Grid forms: "4096", "2^10..2^14" (step x2), "1000..9000:+2000",
    /// "2^4..2^10:x4", "16,64,4096". For tilted the grid drives x.
    Sweep {
        #[arg(value_enum)]
        command: SweepTarget,
        /// Grid of n values.
        #[arg(long)]
        n: String,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: f64,
        /// Prime cutoff for tilted sweeps.
        #[arg(long)]
        t: Option<u64>,
        /// Tilt for tilted sweeps.
        #[arg(long)]
        lambda: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepTarget {
    Mtable,
    Params,
    BuildB,
    BuildBPp,
    BuildA,
    Energy,
    Deficit,
    D1,
    Thin,
    Tilted,
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    let (digits, mult) = if let Some(d) = lower.strip_suffix("gib") {
        (d, 1u64 << 30)
    } else if let Some(d) = lower.strip_suffix("mib") {
        (d, 1 << 20)
    } else if let Some(d) = lower.strip_suffix("kib") {
        (d, 1 << 10)
    } else if let Some(d) = lower.strip_suffix("gb") {
        (d, 1_000_000_000)
    } else if let Some(d) = lower.strip_suffix("mb") {
        (d, 1_000_000)
    } else if let Some(d) = lower.strip_suffix("kb") {
        (d, 1_000)
    } else {
        (lower.as_str(), 1)
    };
    let value: u64 = digits
        .trim()
        .parse()
        .map_err(|e| format!("bad byte count {s:?}: {e}"))?;
    value
        .checked_mul(mult)
        .ok_or_else(|| format!("byte count {s:?} overflows"))
}

/// One number in a grid spec: plain decimal or base^exponent.
fn parse_grid_number(s: &str) -> Result<u64, Error> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base: u64 = base
            .trim()
            .parse()
            .map_err(|e| Error::Domain(format!("bad grid base {base:?}: {e}")))?;
        let exp: u32 = exp
            .trim()
            .parse()
            .map_err(|e| Error::Domain(format!("bad grid exponent {exp:?}: {e}")))?;
        base.checked_pow(exp)
            .ok_or_else(|| Error::Domain(format!("grid value {s} overflows")))
    } else {
        s.parse()
            .map_err(|e| Error::Domain(format!("bad grid value {s:?}: {e}")))
    }
}

/// Expand a grid spec into its points. An empty range (start above end)
/// yields zero points.
fn parse_grid(spec: &str) -> Result<Vec<u64>, Error> {
    let spec = spec.trim();
    if spec.contains(',') {
        return spec.split(',').map(parse_grid_number).collect();
    }
    let (range, step) = match spec.split_once(':') {
        Some((r, s)) => (r, Some(s)),
        None => (spec, None),
    };
    if let Some((lo, hi)) = range.split_once("..") {
        let lo = parse_grid_number(lo)?;
        let hi = parse_grid_number(hi)?;
        enum Step {
            Mul(u64),
            Add(u64),
        }
        let step = match step {
            None => Step::Mul(2),
            Some(s) => {
                let s = s.trim();
                if let Some(f) = s.strip_prefix('x') {
                    let f: u64 = f
                        .parse()
                        .map_err(|e| Error::Domain(format!("bad step {s:?}: {e}")))?;
                    if f < 2 {
                        return Err(Error::Domain("multiplicative step must be >= 2".into()));
                    }
                    Step::Mul(f)
                } else if let Some(a) = s.strip_prefix('+') {
                    let a: u64 = a
                        .parse()
                        .map_err(|e| Error::Domain(format!("bad step {s:?}: {e}")))?;
                    if a == 0 {
                        return Err(Error::Domain("additive step must be >= 1".into()));
                    }
                    Step::Add(a)
                } else {
                    return Err(Error::Domain(format!(
                        "step must look like x2 or +1000, got {s:?}"
                    )));
                }
            }
        };
        let mut points = Vec::new();
        let mut v = lo;
        while v <= hi {
            points.push(v);
            v = match step {
                Step::Mul(f) => match v.checked_mul(f) {
                    Some(next) => next,
                    None => break,
                },
                Step::Add(a) => match v.checked_add(a) {
                    Some(next) => next,
                    None => break,
                },
            };
        }
        Ok(points)
    } else {
        if step.is_some() {
            return Err(Error::Domain(format!(
                "step given without a range in grid {spec:?}"
            )));
        }
        Ok(vec![parse_grid_number(range)?])
    }
}

struct Emitter {
    file: Option<BufWriter<File>>,
}

impl Emitter {
    fn new(path: &Option<PathBuf>) -> Result<Self, Error> {
        let mut emitter = Emitter {
            file: match path {
                Some(p) => Some(BufWriter::new(File::create(p)?)),
                None => None,
            },
        };
        emitter.line(CSV_HEADER)?;
        Ok(emitter)
    }

    fn line(&mut self, line: &str) -> Result<(), Error> {
        println!("{line}");
        if let Some(f) = &mut self.file {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }

    fn emit(&mut self, report: &ExperimentReport) -> Result<(), Error> {
        self.line(&report.to_csv_row())
    }

    fn finish(mut self) -> Result<(), Error> {
        if let Some(f) = &mut self.file {
            f.flush()?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("prodset: {e}");
            if e.is_capacity() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

struct Ctx {
    res: Resources,
    reproducible: bool,
}

impl Ctx {
    fn clock(&self, start: Instant) -> u64 {
        if self.reproducible {
            0
        } else {
            start.elapsed().as_millis() as u64
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let ctx = Ctx {
        res: Resources {
            mem_budget: cli.mem_budget,
            workers: cli.workers,
        },
        reproducible: cli.reproducible,
    };
    let mut emitter = Emitter::new(&cli.out)?;
    match cli.command {
        Cmd::Sweep {
            command,
            n,
            g,
            seed,
            slack,
            t,
            lambda,
        } => {
            let points = parse_grid(&n)?;
            for point in points {
                let start = Instant::now();
                let result = sweep_point(command, point, g, seed, slack, t, lambda, &ctx);
                let mut report = match result {
                    Ok(report) => report,
                    Err(e) => {
                        let mut r = ExperimentReport::new(sweep_name(command)).with_n(point);
                        r.set_error(&e.to_string());
                        r
                    }
                };
                report.wall_time_ms = ctx.clock(start);
                emitter.emit(&report)?;
            }
        }
        other => {
            let start = Instant::now();
            let reports = single_command(other, &ctx)?;
            for mut report in reports {
                report.wall_time_ms = ctx.clock(start);
                emitter.emit(&report)?;
            }
        }
    }
    emitter.finish()
}

fn sweep_name(target: SweepTarget) -> &'static str {
    match target {
        SweepTarget::Mtable => "mtable",
        SweepTarget::Params => "params",
        SweepTarget::BuildB => "build-b",
        SweepTarget::BuildBPp => "build-b-pp",
        SweepTarget::BuildA => "build-a",
        SweepTarget::Energy => "energy",
        SweepTarget::Deficit => "deficit",
        SweepTarget::D1 => "d1",
        SweepTarget::Thin => "thin",
        SweepTarget::Tilted => "tilted",
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep_point(
    target: SweepTarget,
    n: u64,
    g: Option<f64>,
    seed: Option<u64>,
    slack: f64,
    t: Option<u64>,
    lambda: Option<f64>,
    ctx: &Ctx,
) -> Result<ExperimentReport, Error> {
    match target {
        SweepTarget::Mtable => mtable_report(n, ctx),
        SweepTarget::Params => params_report(n),
        SweepTarget::BuildB => build_b_report(n, slack, &None, ctx),
        SweepTarget::BuildBPp => build_b_pp_report(n, &None, ctx),
        SweepTarget::BuildA => build_a_report(n, &None, ctx),
        SweepTarget::Energy => energy_report(n, slack, ctx),
        SweepTarget::Deficit => deficit_report(n, ctx),
        SweepTarget::D1 => d1_report(n, ctx),
        SweepTarget::Thin => {
            let seed = seed.unwrap_or_else(rand::random::<u64>);
            let outcomes = thin_reports(n, g, seed, 1, slack, &None, ctx)?;
            Ok(outcomes.into_iter().next().expect("one repeat"))
        }
        SweepTarget::Tilted => {
            let t = t.ok_or_else(|| Error::Domain("tilted sweep needs --t".into()))?;
            let lambda =
                lambda.ok_or_else(|| Error::Domain("tilted sweep needs --lambda".into()))?;
            tilted_report(n, t, lambda, ctx)
        }
    }
}

fn single_command(cmd: Cmd, ctx: &Ctx) -> Result<Vec<ExperimentReport>, Error> {
    Ok(match cmd {
        Cmd::Theta => {
            let (half, one) = theta_forms();
            let mut r = ExperimentReport::new("theta");
            r.measure("theta", one)
                .measure("form_half", half)
                .measure("form_one", one)
                .measure("form_delta", (half - one).abs());
            r.compare("reference", "0.04303566");
            vec![r]
        }
        Cmd::Params { n } => vec![params_report(n)?],
        Cmd::Mtable { n } => vec![mtable_report(n, ctx)?],
        Cmd::Prodset { a, b } => {
            let set_a = read_set(&a)?;
            let set_b = read_set(&b)?;
            let summary = product_set_summary(&set_a, &set_b, ctx.res)?;
            let mut r = ExperimentReport::new("prodset");
            r.param("size_a", set_a.len()).param("size_b", set_b.len());
            r.measure("size", summary.size)
                .measure("pair_count", summary.pair_count)
                .measure("max_tau", summary.max_tau);
            vec![r]
        }
        Cmd::BuildB { n, slack, out_set } => vec![build_b_report(n, slack, &out_set, ctx)?],
        Cmd::BuildBPp { n, out_set } => vec![build_b_pp_report(n, &out_set, ctx)?],
        Cmd::Energy { n, slack } => vec![energy_report(n, slack, ctx)?],
        Cmd::Thin {
            n,
            g,
            seed,
            repeats,
            slack,
            out_set,
        } => {
            if repeats == 0 {
                return Err(Error::Domain("--repeats must be >= 1".into()));
            }
            if out_set.is_some() && repeats != 1 {
                return Err(Error::Domain("--out-set needs --repeats 1".into()));
            }
            let seed = seed.unwrap_or_else(rand::random::<u64>);
            thin_reports(n, g, seed, repeats, slack, &out_set, ctx)?
        }
        Cmd::BuildA { n, out_set } => vec![build_a_report(n, &out_set, ctx)?],
        Cmd::Deficit { n } => vec![deficit_report(n, ctx)?],
        Cmd::Tilted { x, t, lambda } => vec![tilted_report(x, t, lambda, ctx)?],
        Cmd::HrRatio { x, lambda } => {
            let sieve = FactorSieve::build_with_budget(x, ctx.res.mem_budget)?;
            let sum = tilted_sum(&TiltParams::new(x, x, lambda)?, &sieve, ctx.res)?;
            let prime_sum = prime_reciprocal_sum(&sieve, x)?;
            let ratio = hr_general_ratio(x, lambda, &sieve, ctx.res)?;
            let mut r = ExperimentReport::new("hr-ratio").with_n(x);
            r.param("lambda", lambda);
            r.measure("sum", sum)
                .measure("prime_sum", prime_sum)
                .measure("ratio", ratio);
            r.compare(
                "denom",
                (x as f64) / (x as f64).ln() * (lambda * prime_sum).exp(),
            );
            vec![r]
        }
        Cmd::D1 { n } => vec![d1_report(n, ctx)?],
        Cmd::Sweep { .. } => unreachable!("sweep handled by run()"),
    })
}

fn params_report(n: u64) -> Result<ExperimentReport, Error> {
    let p = derive_params(n)?;
    let mut r = ExperimentReport::new("params").with_n(n);
    r.measure("k", p.k)
        .measure("r", p.r)
        .measure("h", p.h)
        .measure("x", p.x)
        .measure("lambda1", p.lambda1)
        .measure("lambda2", p.lambda2);
    r.compare("m_n_scale", mn_prediction(n)?);
    Ok(r)
}

fn mtable_report(n: u64, ctx: &Ctx) -> Result<ExperimentReport, Error> {
    let m_n = multiplication_table_size(n, ctx.res)?;
    let mut r = ExperimentReport::new("mtable").with_n(n);
    r.measure("m_n", m_n);
    match mn_prediction(n) {
        Ok(scale) => {
            r.measure("ratio", m_n as f64 / scale);
            r.compare("scale", scale);
        }
        Err(_) => {
            // below the comparator floor the exact count still stands alone
        }
    }
    Ok(r)
}

fn build_b_report(
    n: u64,
    slack: f64,
    out_set: &Option<PathBuf>,
    ctx: &Ctx,
) -> Result<ExperimentReport, Error> {
    let sieve = FactorSieve::build_with_budget(n, ctx.res.mem_budget)?;
    let set = growth_set(n, &sieve, slack, ctx.res)?;
    if let Some(path) = out_set {
        write_set(path, &set.elements)?;
    }
    let scale = set.size_comparator();
    let mut r = ExperimentReport::new("build-b").with_n(n);
    r.param("k", set.k).param("slack", slack);
    r.measure("size", set.len())
        .measure("ratio", set.len() as f64 / scale);
    r.compare("scale", scale);
    Ok(r)
}

fn build_b_pp_report(
    n: u64,
    out_set: &Option<PathBuf>,
    ctx: &Ctx,
) -> Result<ExperimentReport, Error> {
    let sieve = FactorSieve::build_with_budget(n, ctx.res.mem_budget)?;
    let strict = prime_position_set(n, &sieve, ctx.res)?;
    let base = growth_set(n, &sieve, DEFAULT_SLACK, ctx.res)?;
    if let Some(path) = out_set {
        write_set(path, &strict)?;
    }
    let base_set: std::collections::HashSet<u64> = base.elements.iter().copied().collect();
    let is_subset = strict.iter().all(|m| base_set.contains(m));
    let scale = growth_set_comparator(n);
    let mut r = ExperimentReport::new("build-b-pp").with_n(n);
    r.param("k", base.k);
    r.measure("size", strict.len())
        .measure("base_size", base.len())
        .measure("is_subset", u8::from(is_subset));
    r.compare("scale", scale);
    Ok(r)
}

fn energy_report(n: u64, slack: f64, ctx: &Ctx) -> Result<ExperimentReport, Error> {
    let sieve = FactorSieve::build_with_budget(n, ctx.res.mem_budget)?;
    let set = growth_set(n, &sieve, slack, ctx.res)?;
    let diag = energy_diagnostics(&set.elements, n, ctx.res)?;
    let mut r = ExperimentReport::new("energy").with_n(n);
    r.param("k", set.k).param("slack", slack);
    r.measure("size", diag.set_size)
        .measure("energy", diag.energy)
        .measure("ratio", diag.ratio);
    r.compare("bound_factor", diag.bound_factor);
    Ok(r)
}

fn thin_reports(
    n: u64,
    g: Option<f64>,
    seed: u64,
    repeats: u32,
    slack: f64,
    out_set: &Option<PathBuf>,
    ctx: &Ctx,
) -> Result<Vec<ExperimentReport>, Error> {
    let g = match g {
        Some(g) => g,
        None => {
            let default = iterated_log(n as f64, 3)?;
            if default <= 1.0 {
                return Err(Error::Domain(format!(
                    "default damping g = log_3 {n} = {default:.4} is not > 1; pass --g explicitly"
                )));
            }
            default
        }
    };
    let sieve = FactorSieve::build_with_budget(n, ctx.res.mem_budget)?;
    let lab = ThinningLab::new(n, &sieve, slack, ctx.res)?;
    let mut reports = Vec::new();
    for i in 0..repeats {
        let run_seed = seed.wrapping_add(i as u64);
        let outcome = lab.run(g, run_seed, ctx.res)?;
        if let Some(path) = out_set {
            write_set(path, &outcome.a)?;
        }
        let mut r = ExperimentReport::new("thin").with_n(n).with_seed(run_seed);
        r.param("g", g)
            .param("slack", slack)
            .param("k", lab.base_set().k);
        r.measure("size_b", outcome.size_b)
            .measure("rho", outcome.rho)
            .measure("size_a", outcome.size_a)
            .measure("size_aa", outcome.size_aa)
            .measure("ratio_size", outcome.ratio_size)
            .measure("ratio_pairs", outcome.ratio_pairs)
            .measure("predictor", outcome.predictor);
        r.compare("rho_sq_f", outcome.surrogates.rho_sq_f)
            .compare("rho_bsq_over_n", outcome.surrogates.rho_bsq_over_n)
            .compare("f_over_sqrt_b", outcome.surrogates.f_over_sqrt_b);
        reports.push(r);
    }
    Ok(reports)
}

fn build_a_report(n: u64, out_set: &Option<PathBuf>, ctx: &Ctx) -> Result<ExperimentReport, Error> {
    let sieve = FactorSieve::build_with_budget(n, ctx.res.mem_budget)?;
    let set = omega_bounded_set(n, &sieve, ctx.res)?;
    if let Some(path) = out_set {
        write_set(path, &set.elements)?;
    }
    let scale = omega_set_comparator(n);
    let mut r = ExperimentReport::new("build-a").with_n(n);
    r.param("k", set.k).param("r", set.r);
    r.measure("size", set.len())
        .measure("ratio", set.len() as f64 / scale);
    r.compare("scale", scale);
    Ok(r)
}

fn deficit_report(n: u64, ctx: &Ctx) -> Result<ExperimentReport, Error> {
    let top = n.checked_mul(n).ok_or(Error::Range {
        what: "squared scan bound",
        value: n,
        limit: u32::MAX as u64,
    })?;
    let sieve = FactorSieve::build_with_budget(top, ctx.res.mem_budget)?;
    let report = coverage_deficit(n, &sieve, ctx.res)?;
    let mut r = ExperimentReport::new("deficit").with_n(n);
    r.param("k", report.params.k)
        .param("r", report.params.r)
        .param("h", report.params.h);
    r.measure("m_n", report.table_size)
        .measure("size_a", report.set_size)
        .measure("size_aa", report.product_size)
        .measure("missing", report.missing)
        .measure("heavy", report.heavy_count)
        .measure("coverage_ratio", report.coverage_ratio);
    r.compare("m_n_scale", mn_prediction(n)?);
    Ok(r)
}

fn tilted_report(x: u64, t: u64, lambda: f64, ctx: &Ctx) -> Result<ExperimentReport, Error> {
    let params = TiltParams::new(x, t, lambda)?;
    let sieve = FactorSieve::build_with_budget(x, ctx.res.mem_budget)?;
    let sum = tilted_sum(&params, &sieve, ctx.res)?;
    let mut r = ExperimentReport::new("tilted").with_n(x);
    r.param("t", t).param("lambda", lambda);
    r.measure("sum", sum);
    if t >= 3 {
        let scale = x as f64 * (t as f64).ln().powf(lambda - 1.0);
        r.measure("ratio", hr_ratio(&params, &sieve, ctx.res)?);
        r.compare("scale", scale);
    }
    Ok(r)
}

fn d1_report(n: u64, ctx: &Ctx) -> Result<ExperimentReport, Error> {
    let top = n.checked_mul(n).ok_or(Error::Range {
        what: "squared scan bound",
        value: n,
        limit: u32::MAX as u64,
    })?;
    let sieve = FactorSieve::build_with_budget(top, ctx.res.mem_budget)?;
    let report = heavy_count_report(n, &sieve, ctx.res)?;
    let mut r = ExperimentReport::new("d1").with_n(n);
    r.param("threshold", report.threshold);
    r.measure("exact", report.exact)
        .measure("majorant", report.majorant)
        .measure(
            "dominated",
            u8::from(report.exact as f64 <= report.majorant),
        );
    r.compare("closed_form", report.closed_form);
    Ok(r)
}
