//! Command-line front end.
//!
//! ```text
//! durrmeyer approximate --preset classical,m2-tilde --n 10 --f example1 --svg
//! durrmeyer errors --preset m3-tilde --n 5,10,20 --f example3
//! durrmeyer moments --preset m2-tilde --central 2 --x 0,0.5
//! durrmeyer rate --preset m2-tilde --n 16,32,64,128,256 --f example1
//! durrmeyer reproduce-example 3 --out results
//! ```
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical assertion
//! failure, 4 I/O failure.

pub mod config;
pub mod plot;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{convergence_order, error_report, ErrorReport};
use crate::basis::LinearCoeff;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::grid::Grid;
use crate::moments::{closed_form, moment_bruteforce, Accuracy, MomentKind, MomentQuery};
use crate::operators::{apply_on_grid, preset, OperatorSpec, SequenceFamily};
use crate::target::TargetFunction;

pub use config::{ExperimentConfig, PartialConfig};
pub use plot::PlotDocument;
pub use table::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "durrmeyer",
    version,
    about = "Bernstein-Durrmeyer operators and their higher-order modifications"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate f and its approximants on a grid.
    Approximate(ExperimentArgs),
    /// Tabulate |f - D f| per operator and print sup-errors.
    Errors(ExperimentArgs),
    /// Compare closed-form moments against direct summation.
    Moments(MomentArgs),
    /// Fit the log-log convergence slope over several degrees.
    Rate(ExperimentArgs),
    /// Regenerate one of the three worked examples.
    ReproduceExample(ReproduceArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    /// Flat key=value file; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Operator presets, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub preset: Vec<String>,
    /// Degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Target function: example1, example2, example3, sin2pi, abs-half or e0..e10.
    #[arg(long = "f")]
    pub f: Option<String>,
    /// Number of grid points.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Output directory (default: $DURRMEYER_OUT, else ./out).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long)]
    pub svg: bool,
    /// Custom order-I coefficient a0(n), e.g. "(n-1)/(2n)".
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Option<String>,
    /// Custom order-I coefficient a1(n), e.g. "1/n".
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    /// Output file stem (default: the function name).
    #[arg(long)]
    pub name: Option<String>,
}

impl ExperimentArgs {
    fn to_partial(&self) -> PartialConfig {
        PartialConfig {
            presets: (!self.preset.is_empty()).then(|| self.preset.clone()),
            n_values: (!self.n.is_empty()).then(|| self.n.clone()),
            function: self.f.clone(),
            grid: self.grid,
            out_dir: self.out.clone(),
            svg: self.svg.then_some(true),
            a0: self.a0.clone(),
            a1: self.a1.clone(),
            name: self.name.clone(),
        }
    }

    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        self.to_partial().over(file).resolve()
    }
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["central", "raw"]))]
pub struct MomentArgs {
    #[arg(long, default_value = "classical")]
    pub preset: String,
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub n: Vec<usize>,
    /// Central moment D((t-x)^r; x) of order r.
    #[arg(long)]
    pub central: Option<usize>,
    /// Raw moment D(e_i; x) of order i.
    #[arg(long)]
    pub raw: Option<usize>,
    /// Evaluation points, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.25,0.5,0.75,1",
        allow_hyphen_values = true
    )]
    pub x: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// Example number.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub example: u8,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub grid: Option<usize>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Csv { .. } => EXIT_IO,
        Error::Assertion(_) | Error::DegenerateFit(_) => EXIT_ASSERTION,
        _ => EXIT_CONFIG,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Approximate(a) => cmd_approximate(&a.resolve()?, out).map(drop),
        Command::Errors(a) => cmd_errors(&a.resolve()?, out).map(drop),
        Command::Moments(a) => cmd_moments(a, out),
        Command::Rate(a) => cmd_rate(&a.resolve()?, out).map(drop),
        Command::ReproduceExample(a) => cmd_reproduce(a, out).map(drop),
    }
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", line.as_ref()).map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn column_label(fam: &SequenceFamily, n: usize) -> String {
    format!("{}_n{n}", fam.name)
}

/// Every (family, degree) pair of the experiment.
fn specs(cfg: &ExperimentConfig) -> Result<Vec<(String, OperatorSpec)>> {
    let mut v = Vec::new();
    for fam in &cfg.families {
        for &n in &cfg.n_values {
            v.push((column_label(fam, n), fam.at(n)?));
        }
    }
    Ok(v)
}

/// Writes `<name>_approx.csv` (and `.svg` when enabled); returns the paths.
pub fn cmd_approximate(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let grid = Grid::uniform(cfg.grid)?;
    let specs = specs(cfg)?;
    ensure_dir(&cfg.out_dir)?;
    let xs = grid.points().to_vec();
    let mut t = Table::new();
    t.push("x", xs.clone());
    t.push("f", xs.iter().map(|&x| cfg.target.eval(x)).collect());
    let mut plot = PlotDocument::new(format!("Approximation of {}", cfg.target.id()), "x", "value");
    plot.push("f", xs.iter().map(|&x| (x, cfg.target.eval(x))).collect())?;
    for (label, spec) in &specs {
        let vals = apply_on_grid(spec, &cfg.target, &grid);
        t.push(label.clone(), vals.iter().map(|p| p.1).collect());
        plot.push(label.clone(), vals)?;
    }
    let mut written = Vec::new();
    let csv = cfg.out_dir.join(format!("{}_approx.csv", cfg.name));
    t.write(&csv)?;
    written.push(csv);
    if cfg.svg {
        let svg = cfg.out_dir.join(format!("{}_approx.svg", cfg.name));
        plot.write(&svg)?;
        written.push(svg);
    }
    for p in &written {
        say(out, format!("wrote {}", p.display()))?;
    }
    Ok(written)
}

/// Writes `<name>_errors.csv` (and `.svg`) and prints one sup-error line per
/// column.
pub fn cmd_errors(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<Vec<(String, ErrorReport)>> {
    cfg.validate()?;
    let grid = Grid::uniform(cfg.grid)?;
    let specs = specs(cfg)?;
    ensure_dir(&cfg.out_dir)?;
    let mut t = Table::new();
    t.push("x", grid.points().to_vec());
    let mut plot = PlotDocument::new(
        format!("Error of approximation for {}", cfg.target.id()),
        "x",
        "|f - Df|",
    );
    let mut reports = Vec::new();
    for (label, spec) in specs {
        let r = error_report(&spec, &cfg.target, &grid);
        t.push(label.clone(), r.per_point.iter().map(|p| p.1).collect());
        plot.push(label.clone(), r.per_point.clone())?;
        reports.push((label, r));
    }
    let csv = cfg.out_dir.join(format!("{}_errors.csv", cfg.name));
    t.write(&csv)?;
    say(out, format!("wrote {}", csv.display()))?;
    if cfg.svg {
        let svg = cfg.out_dir.join(format!("{}_errors.svg", cfg.name));
        plot.write(&svg)?;
        say(out, format!("wrote {}", svg.display()))?;
    }
    for (label, r) in &reports {
        say(out, format!("sup-error {label}: {:e}", r.sup_error))?;
    }
    Ok(reports)
}

/// Prints closed-form and brute-force moments side by side.
pub fn cmd_moments(args: &MomentArgs, out: &mut dyn Write) -> Result<()> {
    let (kind, order) = match (args.central, args.raw) {
        (Some(r), None) => (MomentKind::Central, r),
        (None, Some(i)) => (MomentKind::Raw, i),
        _ => return Err(Error::InvalidConfig("give exactly one of --central or --raw".into())),
    };
    if args.n.is_empty() || args.x.is_empty() {
        return Err(Error::InvalidConfig("--n and --x must not be empty".into()));
    }
    let mut rows = Vec::new();
    for &n in &args.n {
        let spec = match (&args.a0, &args.a1) {
            (Some(a0), Some(a1)) => {
                OperatorSpec::m1(n, LinearCoeff::new(Expr::parse(a0)?.eval(n), Expr::parse(a1)?.eval(n)))?
                    .with_label("m1-custom")
            }
            (None, None) => preset(&args.preset, n)?,
            _ => return Err(Error::InvalidConfig("--a0 and --a1 must be given together".into())),
        };
        for &x in &args.x {
            let q = MomentQuery {
                spec: spec.clone(),
                kind,
                order,
                x,
            };
            let closed = closed_form(&q)?;
            let brute = moment_bruteforce(&q)?;
            rows.push((n, x, closed, brute));
        }
    }
    say(
        out,
        format!(
            "{:>6} {:>8} {:>24} {:>24} {:>10}  form",
            "n", "x", "closed", "bruteforce", "|diff|"
        ),
    )?;
    for (n, x, closed, brute) in rows {
        let form = match closed.accuracy {
            Accuracy::Exact => "exact".to_string(),
            Accuracy::Leading { remainder_order } => format!("leading term, O(n^-{remainder_order})"),
        };
        say(
            out,
            format!(
                "{n:>6} {x:>8} {:>24} {:>24} {:>10.3e}  {form}",
                table::format_float(closed.value),
                table::format_float(brute),
                (closed.value - brute).abs()
            ),
        )?;
    }
    Ok(())
}

/// Fits convergence slopes, prints them and writes `<name>_rate.csv` with
/// columns `n` and one sup-error column per operator.
pub fn cmd_rate(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<PathBuf> {
    cfg.validate()?;
    let grid = Grid::uniform(cfg.grid)?;
    ensure_dir(&cfg.out_dir)?;
    let mut t = Table::new();
    t.push("n", cfg.n_values.iter().map(|&n| n as f64).collect());
    let mut plot = PlotDocument::new(format!("Convergence for {}", cfg.target.id()), "ln n", "ln sup-error");
    for fam in &cfg.families {
        match convergence_order(fam, &cfg.target, &cfg.n_values, &grid) {
            Ok(fit) => {
                say(
                    out,
                    format!("rate {}: slope {:.4}, r^2 {:.6}", fam.name, fit.slope, fit.r_squared),
                )?;
                for (n, e) in fit.n_values.iter().zip(&fit.sup_errors) {
                    say(out, format!("  n={n:<6} sup-error {e:e}"))?;
                }
                if !fit.dropped.is_empty() {
                    say(
                        out,
                        format!("  left out of the fit (error below 1e-12): {:?}", fit.dropped),
                    )?;
                }
                let pts = fit
                    .n_values
                    .iter()
                    .zip(&fit.sup_errors)
                    .filter(|(n, _)| !fit.dropped.contains(n))
                    .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
                    .collect();
                plot.push(fam.name.clone(), pts)?;
                t.push(fam.name.clone(), fit.sup_errors);
            }
            Err(Error::DegenerateFit(msg)) => {
                say(out, format!("rate {}: no fit, {msg}", fam.name))?;
                let errs = cfg
                    .n_values
                    .iter()
                    .map(|&n| Ok(error_report(&fam.at(n)?, &cfg.target, &grid).sup_error))
                    .collect::<Result<Vec<_>>>()?;
                t.push(fam.name.clone(), errs);
            }
            Err(e) => return Err(e),
        }
    }
    let csv = cfg.out_dir.join(format!("{}_rate.csv", cfg.name));
    t.write(&csv)?;
    say(out, format!("wrote {}", csv.display()))?;
    if cfg.svg && !plot.series.is_empty() {
        let svg = cfg.out_dir.join(format!("{}_rate.svg", cfg.name));
        plot.write(&svg)?;
        say(out, format!("wrote {}", svg.display()))?;
    }
    Ok(csv)
}

/// Function, operators and degrees of a worked example.
pub fn example_config(example: u8, out_dir: PathBuf, grid: usize) -> Result<ExperimentConfig> {
    let (f, m1, ns): (_, _, &[usize]) = match example {
        1 => (TargetFunction::example1(), "m1-example1", &[10]),
        2 => (TargetFunction::example2(), "m1-example2", &[10]),
        3 => (TargetFunction::example3(), "m1-example1", &[5, 10, 20]),
        _ => return Err(Error::InvalidConfig(format!("no example {example}; choose 1, 2 or 3"))),
    };
    let families = ["classical", m1, "m2-tilde", "m3-tilde"]
        .iter()
        .map(|p| SequenceFamily::named(p))
        .collect::<Result<Vec<_>>>()?;
    let cfg = ExperimentConfig {
        families,
        n_values: ns.to_vec(),
        name: f.id().to_string(),
        target: f,
        grid,
        out_dir,
        svg: true,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Outcome of a reproduced example.
#[derive(Debug)]
pub struct Reproduction {
    pub files: Vec<PathBuf>,
    pub reports: Vec<(String, ErrorReport)>,
}

impl Reproduction {
    pub fn sup_error(&self, label: &str) -> Option<f64> {
        self.reports.iter().find(|(l, _)| l == label).map(|(_, r)| r.sup_error)
    }
}

pub fn reproduce_example(example: u8, out_dir: PathBuf, grid: usize, out: &mut dyn Write) -> Result<Reproduction> {
    let cfg = example_config(example, out_dir, grid)?;
    let mut files = cmd_approximate(&cfg, out)?;
    let reports = cmd_errors(&cfg, out)?;
    files.push(cfg.out_dir.join(format!("{}_errors.csv", cfg.name)));
    files.push(cfg.out_dir.join(format!("{}_errors.svg", cfg.name)));

    if cfg.n_values.len() > 1 {
        let grid = Grid::uniform(cfg.grid)?;
        for fam in &cfg.families {
            let mut t = Table::new();
            t.push("x", grid.points().to_vec());
            let mut plot = PlotDocument::new(format!("{} errors for {}", fam.name, cfg.target.id()), "x", "|f - Df|");
            for &n in &cfg.n_values {
                let label = column_label(fam, n);
                let r = &reports.iter().find(|(l, _)| *l == label).expect("report per column").1;
                t.push(format!("n{n}"), r.per_point.iter().map(|p| p.1).collect());
                plot.push(format!("n = {n}"), r.per_point.clone())?;
            }
            let stem = format!("{}_{}_errors", cfg.name, fam.name);
            let (csv, svg) = (
                cfg.out_dir.join(format!("{stem}.csv")),
                cfg.out_dir.join(format!("{stem}.svg")),
            );
            t.write(&csv)?;
            plot.write(&svg)?;
            say(out, format!("wrote {}\nwrote {}", csv.display(), svg.display()))?;
            files.extend([csv, svg]);
        }
    }

    let repro = Reproduction { files, reports };
    if example != 2 {
        let sup = |p: &str| {
            repro
                .sup_error(&format!("{p}_n10"))
                .expect("n = 10 is part of the example")
        };
        let base = sup("classical");
        for p in ["m2-tilde", "m3-tilde"] {
            let e = sup(p);
            let ok = e < base;
            say(
                out,
                format!(
                    "check {p} beats classical at n=10: {e:e} < {base:e} {}",
                    if ok { "PASS" } else { "FAIL" }
                ),
            )?;
            if !ok {
                return Err(Error::Assertion(format!(
                    "example {example}: {p} sup-error {e:e} is not below classical {base:e}"
                )));
            }
        }
    }
    Ok(repro)
}

fn cmd_reproduce(args: &ReproduceArgs, out: &mut dyn Write) -> Result<Reproduction> {
    let dir = args.out.clone().unwrap_or_else(config::default_out_dir);
    reproduce_example(
        args.example,
        dir,
        args.grid.unwrap_or(crate::grid::DEFAULT_GRID_POINTS),
        out,
    )
}
