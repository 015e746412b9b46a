//! Command-line front end.
//!
//! Exit status: 0 when no explicit inequality is violated, 1 when one is, 2
//! for configuration and input errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use pbias_core::inequality::{
    bks_ratio, correlation_report, hypercontractivity_sweep, level_transfer_checks, low_degree_norm_check,
    talagrand_boundary_report_with_cap, threshold_tightness_table, DEFAULT_ALPHA,
};
use pbias_core::influence::{first_level_transfer_check_with_cap, fk_bound_check_with_cap, squares_bound_check_with_cap};
use pbias_core::oracle::{random_instance, InstanceKind};
use pbias_core::reduction::{predicted_coefficient, reduce_implicit, reduce_with_cap};
use pbias_core::{
    dyadic_approx, inverse_transform, named_family, transform, CubeFunction, DyadicBias, Family, InequalityReport,
    Measure, Relation, SubsetMask, DEFAULT_DENSE_CAP,
};

use crate::format::{self, BiasRecord, Format, FunctionFile, SpectrumFile};
use crate::suite;

#[derive(Debug, Parser)]
#[command(name = "pbias", version, about = "Biased Fourier analysis on the cube and the dyadic reduction to the uniform measure")]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier-Walsh coefficients of a function under mu_p.
    Spectrum {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rebuild a function from a spectrum JSON file.
    Inverse {
        /// Spectrum JSON as written by `spectrum`.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The reduced function g on mn uniform coordinates.
    Reduce {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        /// Largest mn for which the dense table of g is built.
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the reduction against brute force.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// ||T_delta f||_2 <= ||f||_q on a grid of noise rates.
    Hyper {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        /// Either a point count for an even grid on [0, sqrt(pL/(1-p))] or a comma-separated list of rates.
        #[arg(long, default_value = "20")]
        delta_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// ||f||_q against the low-degree bound for f of degree at most d.
    Lowdeg {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        /// Norm exponents, comma-separated, each at least 2.
        #[arg(long, default_value = "4")]
        q: String,
        /// Degree bound.
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Boundary inequality for a monotone set, with its transfer steps.
    Boundary {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        /// Exponent split in phi and psi, in (0, 1].
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Correlation of two monotone sets.
    Correlation {
        #[command(flatten)]
        input: FunctionArgs,
        /// Family of the second set.
        #[arg(long, conflicts_with = "input_b")]
        family_b: Option<String>,
        /// JSON function file of the second set.
        #[arg(long)]
        input_b: Option<PathBuf>,
        #[command(flatten)]
        bias: BiasArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Level-d weight of a monotone function against its influences.
    Bks {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        /// Level, at least 2.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact boundary quantities of the balanced threshold set next to their normal limits.
    Tightness {
        /// Number of coordinates (any size; no cube enumeration).
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        bias: BiasArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full acceptance suite.
    Suite {
        /// Seed for the random instances.
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Predicted against actual coefficients of g, for every subset.
    Coeffs {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        /// Allowed absolute difference.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Level weights of g against the lower bound, every level.
    Levels {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Influence transfer bounds (sum, squares, per coordinate, first level).
    Influence {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        bias: BiasArgs,
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Named family: dictator[:i], and, or, parity, majority, threshold:k,
    /// tribes[:w], balanced-threshold, random-boolean, random-real.
    #[arg(long, conflicts_with = "input")]
    pub family: Option<String>,
    /// JSON function file ({"n", "values"} or {"n", "truth_hex"}).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Number of coordinates for --family.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Seed for the random families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BiasArgs {
    /// Numerator of p = t / 2^m.
    #[arg(long, default_value_t = 1, conflicts_with = "p")]
    pub t: u64,
    /// Exponent of p = t / 2^m.
    #[arg(long, default_value_t = 2, conflicts_with = "p")]
    pub m: u32,
    /// Real p, replaced by its best dyadic approximation (needs --m-max).
    #[arg(long, requires = "m_max")]
    pub p: Option<f64>,
    /// Largest m tried when approximating --p.
    #[arg(long)]
    pub m_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl BiasArgs {
    pub fn resolve(&self) -> anyhow::Result<BiasRecord> {
        match self.p {
            Some(target) => {
                let m_max = self.m_max.context("--p needs --m-max")?;
                let (bias, error) = dyadic_approx(target, m_max)?;
                log::info!("p = {target} approximated by {bias} (error {error:e})");
                Ok(BiasRecord { p_target: Some(target), approx_error: Some(error), ..BiasRecord::exact(bias) })
            }
            None => Ok(BiasRecord::exact(DyadicBias::new(self.t, self.m)?)),
        }
    }
}

impl FunctionArgs {
    pub fn load(&self, bias: Option<DyadicBias>) -> anyhow::Result<(String, CubeFunction)> {
        if let Some(path) = &self.input {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let f = format::read_function(BufReader::new(file))?;
            return Ok((path.display().to_string(), f));
        }
        let spec = self.family.as_deref().context("give --family or --input")?;
        let n = self.n;
        let f = match spec {
            "random-boolean" => random_instance(InstanceKind::RandomBoolean, n, self.seed)?,
            "random-real" => random_instance(InstanceKind::RandomReal, n, self.seed)?,
            "balanced-threshold" => {
                let bias = bias.context("balanced-threshold needs a dyadic bias")?;
                named_family(&Family::balanced_threshold(n, bias), n)?
            }
            other => named_family(&other.parse::<Family>()?, n)?,
        };
        let label = if spec.starts_with("random-") {
            format!("{spec} n={n} seed={}", self.seed)
        } else {
            format!("{spec} n={n}")
        };
        Ok((label, f))
    }
}

impl OutputArgs {
    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Clean,
    Violation,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Clean => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(1),
        }
    }
}

fn status_of<'a>(reports: impl IntoIterator<Item = &'a InequalityReport>) -> Status {
    if reports.into_iter().any(InequalityReport::is_violation) {
        Status::Violation
    } else {
        Status::Clean
    }
}

fn emit_reports(reports: &[InequalityReport], label: &str, output: &OutputArgs) -> anyhow::Result<Status> {
    for r in reports.iter().filter(|r| r.is_violation()) {
        log::error!("violation on {label}: {r}");
    }
    let mut w = output.writer()?;
    format::write_reports(reports, output.format, &mut w)?;
    w.flush()?;
    Ok(status_of(reports))
}

fn bias_header(record: &BiasRecord, out: &mut dyn Write, format: Format) -> anyhow::Result<()> {
    if let (Format::Csv, Some(target), Some(error)) = (format, record.p_target, record.approx_error) {
        writeln!(out, "# p={}/2^{} approximates {target} (error {error:e})", record.t, record.m)?;
    }
    Ok(())
}

/// Parses the command line, runs it and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match run(cli.command) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn run(command: Command) -> anyhow::Result<Status> {
    match command {
        Command::Spectrum { input, bias, output } => {
            let record = bias.resolve()?;
            let b = record.bias()?;
            let (_, f) = input.load(Some(b))?;
            let spectrum = transform(&f, b);
            let mut w = output.writer()?;
            match output.format {
                Format::Json => format::write_json(&SpectrumFile::new(&spectrum, Some(record)), &mut w)?,
                Format::Csv => {
                    bias_header(&record, &mut w, Format::Csv)?;
                    format::write_spectrum_csv(&spectrum, &mut w)?;
                }
            }
            w.flush()?;
            Ok(Status::Clean)
        }
        Command::Inverse { input, output } => {
            let file = File::open(&input).with_context(|| format!("opening {}", input.display()))?;
            let spectrum = format::read_spectrum(BufReader::new(file))?;
            let f = inverse_transform(&spectrum);
            let mut w = output.writer()?;
            match output.format {
                Format::Json => format::write_json(&FunctionFile::from_function(&f), &mut w)?,
                Format::Csv => write_function_csv(&f, &mut w)?,
            }
            w.flush()?;
            Ok(Status::Clean)
        }
        Command::Reduce { input, bias, dense_cap, output } => {
            let record = bias.resolve()?;
            let b = record.bias()?;
            let (_, f) = input.load(Some(b))?;
            let mut w = output.writer()?;
            if f.n() * b.m() <= dense_cap {
                let g = reduce_with_cap(&f, b, dense_cap)?.into_dense().expect("dense table was built");
                match output.format {
                    Format::Json => {
                        let mut file = FunctionFile::compact(&g);
                        file.bias = Some(record);
                        format::write_json(&file, &mut w)?;
                    }
                    Format::Csv => write_function_csv(&g, &mut w)?,
                }
            } else {
                let g = reduce_implicit(&f, b)?;
                log::info!("mn = {} is above the dense cap {dense_cap}; emitting a summary", g.dimension());
                let summary = serde_json::json!({
                    "dense": false,
                    "blocks": g.blocks(),
                    "width": g.width(),
                    "dimension": g.dimension(),
                    "expectation": f.expectation(b),
                    "bias": record,
                });
                format::write_json(&summary, &mut w)?;
            }
            w.flush()?;
            Ok(Status::Clean)
        }
        Command::Verify { what } => run_verify(what),
        Command::Hyper { input, bias, delta_grid, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let grid = parse_delta_grid(&delta_grid, b)?;
            let reports = hypercontractivity_sweep(&f, &grid, b)?;
            emit_reports(&reports, &label, &output)
        }
        Command::Lowdeg { input, bias, q, d, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let reports = parse_list(&q)?
                .into_iter()
                .map(|q| low_degree_norm_check(&f, q, d, b))
                .collect::<Result<Vec<_>, _>>()?;
            emit_reports(&reports, &label, &output)
        }
        Command::Boundary { input, bias, alpha, dense_cap, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let report = talagrand_boundary_report_with_cap(&f, b, alpha, dense_cap)?;
            if report.boundary_containment.is_none() {
                log::warn!("mn = {} is above the dense cap {dense_cap}; transfer steps skipped", f.n() * b.m());
            }
            emit_reports(&format::talagrand_reports(&report), &label, &output)
        }
        Command::Correlation { input, family_b, input_b, bias, output } => {
            let b = bias.resolve()?.bias()?;
            let (label_a, a) = input.load(Some(b))?;
            let second = FunctionArgs { family: family_b, input: input_b, n: input.n, seed: input.seed };
            let (label_b, c) = second.load(Some(b))?;
            let r = correlation_report(&a, &c, b)?;
            emit_reports(&[r.harris_kleitman, r.talagrand], &format!("{label_a} / {label_b}"), &output)
        }
        Command::Bks { input, bias, d, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let r = bks_ratio(&f, d, b)?;
            emit_reports(&[r], &label, &output)
        }
        Command::Tightness { n, bias, output } => {
            let record = bias.resolve()?;
            let table = threshold_tightness_table(n, record.bias()?)?;
            let mut w = output.writer()?;
            bias_header(&record, &mut w, output.format)?;
            format::write_tightness(&table, output.format, &mut w)?;
            w.flush()?;
            Ok(Status::Clean)
        }
        Command::Suite { seed } => {
            let outcomes = suite::run_suite(seed);
            for o in &outcomes {
                println!("{o}");
            }
            Ok(if outcomes.iter().all(suite::CriterionOutcome::passed) { Status::Clean } else { Status::Violation })
        }
    }
}

fn run_verify(what: VerifyCommand) -> anyhow::Result<Status> {
    match what {
        VerifyCommand::Coeffs { input, bias, tol, dense_cap, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let g = reduce_with_cap(&f, b, dense_cap)?;
            let spec_f = transform(&f, b);
            let spec_g = transform(g.require_dense()?, Measure::Uniform);
            let mut w = output.writer()?;
            let mut mismatches = 0usize;
            let mut rows = Vec::with_capacity(spec_g.coeffs().len());
            for (s, &actual) in spec_g.coeffs().iter().enumerate() {
                let predicted = predicted_coefficient(&spec_f, SubsetMask::from(s), b)?;
                let magnitude_error = (predicted.magnitude - actual.abs()).abs();
                let sign_error = predicted.signed.map(|v| (v - actual).abs());
                if magnitude_error > tol || sign_error.is_some_and(|e| e > tol) {
                    mismatches += 1;
                    log::error!("{label} {b} S={}: predicted {predicted:?}, actual {actual}", SubsetMask::from(s));
                }
                rows.push((s, actual, predicted, magnitude_error, sign_error));
            }
            match output.format {
                Format::Json => {
                    let doc: Vec<_> = rows
                        .iter()
                        .map(|(s, actual, predicted, me, se)| {
                            serde_json::json!({
                                "subset": format::subset_label(*s),
                                "subset_mask": s,
                                "actual": actual,
                                "predicted_magnitude": predicted.magnitude,
                                "predicted_signed": predicted.signed,
                                "magnitude_error": me,
                                "sign_error": se,
                            })
                        })
                        .collect();
                    format::write_json(&doc, &mut w)?;
                }
                Format::Csv => {
                    let mut c = csv::Writer::from_writer(&mut w);
                    c.write_record([
                        "subset_mask",
                        "size",
                        "actual",
                        "predicted_magnitude",
                        "predicted_signed",
                        "magnitude_error",
                        "sign_error",
                    ])?;
                    for (s, actual, predicted, me, se) in &rows {
                        c.write_record([
                            s.to_string(),
                            s.count_ones().to_string(),
                            format::float(*actual),
                            format::float(predicted.magnitude),
                            predicted.signed.map(format::float).unwrap_or_default(),
                            format::float(*me),
                            se.map(format::float).unwrap_or_default(),
                        ])?;
                    }
                    c.flush()?;
                }
            }
            w.flush()?;
            Ok(if mismatches == 0 { Status::Clean } else { Status::Violation })
        }
        VerifyCommand::Levels { input, bias, dense_cap, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let reports = level_transfer_checks(&f, b, dense_cap)?;
            emit_reports(&reports, &label, &output)
        }
        VerifyCommand::Influence { input, bias, dense_cap, output } => {
            let b = bias.resolve()?.bias()?;
            let (label, f) = input.load(Some(b))?;
            let mut reports = vec![fk_bound_check_with_cap(&f, b, dense_cap)?];
            let squares = squares_bound_check_with_cap(&f, b, dense_cap)?;
            reports.push(squares.aggregate.clone());
            for c in &squares.coordinates {
                reports.push(
                    InequalityReport::explicit("coordinate_bound", Relation::AtMost, c.influence, c.bound)
                        .with_param("block", c.block as f64)
                        .with_param("position", f64::from(c.position)),
                );
            }
            reports.push(first_level_transfer_check_with_cap(&f, b, dense_cap)?);
            emit_reports(&reports, &label, &output)
        }
    }
}

fn write_function_csv(f: &CubeFunction, out: &mut dyn Write) -> anyhow::Result<()> {
    let mut c = csv::Writer::from_writer(out);
    c.write_record(["point", "value"])?;
    for (x, v) in f.values().iter().enumerate() {
        c.write_record([x.to_string(), format::float(*v)])?;
    }
    c.flush()?;
    Ok(())
}

fn parse_list(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("`{x}` is not a number")))
        .collect()
}

/// `"20"` is an even 20-point grid on `[0, sqrt(pL/(1-p))]`; `"0,0.1,0.3"` is taken as given.
pub fn parse_delta_grid(s: &str, bias: DyadicBias) -> anyhow::Result<Vec<f64>> {
    if s.contains(',') || s.contains('.') {
        return parse_list(s);
    }
    let points: usize = s.trim().parse().with_context(|| format!("`{s}` is neither a count nor a list"))?;
    if points == 0 {
        bail!("the noise grid needs at least one point");
    }
    Ok(suite::delta_grid(bias, points))
}
