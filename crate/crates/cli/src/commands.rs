use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrcx::bounds::{f_value, table1, table2, BoundReport, TABLE1_XS};
use lrcx::rational::decimal4;
use lrcx::recovery_graph::{
    build_graph, color_vertices, exhaustive_expected_fraction, monte_carlo, structural_sweep, trial_permutation,
};
use lrcx::repair_sim::repair_sweep;
use lrcx::verifier::{discover_family, verify_matrix, Discovery, SearchMode};
use lrcx::xlrc::{build_xlrc_with, BuildOptions};
use lrcx::{BitMatrix, Convention, Distance, RecoveringFamily};
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::matrix_file::{self, ParseError};

/// Largest coloured set whose subsets `graph` sweeps structurally.
const STRUCTURAL_MAX: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "lrcx", version, about = "Binary locally recoverable codes with availability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a parity-check matrix and print its parameters.
    Construct(ConstructArgs),
    /// Print union-size and rate bounds, or the bound tables.
    Bounds(BoundsArgs),
    /// Check that a matrix has t recovering sets of size at most r per coordinate.
    Verify(VerifyArgs),
    /// Run the permutation-coloring experiment on a matrix.
    Graph(GraphArgs),
    /// Repair every coordinate of seeded codewords.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Wzl,
    Xlrc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Incidence,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    RowsOnly,
    DualEnum,
    BoundedCombos,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::RowsOnly => SearchMode::RowsOnly,
            ModeArg::DualEnum => SearchMode::DualEnum,
            ModeArg::BoundedCombos => SearchMode::BoundedCombos,
        }
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub kind: Kind,
    /// Seed locality (r̃).
    pub r: usize,
    /// Seed availability (t̃).
    pub t: usize,
    /// Extra copies of each column; required for xlrc.
    pub x: Option<usize>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Incidence)]
    pub convention: ConventionArg,
    /// Write the matrix here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub x: Option<usize>,
    #[arg(long, conflicts_with_all = ["table2", "r"])]
    pub table1: bool,
    #[arg(long, conflicts_with = "r")]
    pub table2: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Matrix file.
    pub matrix: PathBuf,
    pub r: usize,
    pub t: usize,
    pub x: usize,
    /// How candidate recovering sets are generated.
    #[arg(long, value_enum, default_value_t = ModeArg::BoundedCombos)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Also check codeword separation by enumerating the code.
    #[arg(long)]
    pub deep: bool,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Average over all n! orderings instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Lib(#[from] lrcx::Error),
}

/// What a command printed and how it ended.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    /// 0 or 1; errors map to 2 in [`run`].
    pub code: u8,
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli, stdout: &mut impl Write, stderr: &mut impl Write) -> u8 {
    let result = match cli.command {
        Command::Construct(a) => construct(&a),
        Command::Bounds(a) => bounds(&a),
        Command::Verify(a) => verify(&a),
        Command::Graph(a) => graph(&a),
        Command::Simulate(a) => simulate(&a),
    };
    match result {
        Ok(out) => {
            let written = stdout
                .write_all(out.stdout.as_bytes())
                .and_then(|_| stderr.write_all(out.stderr.as_bytes()));
            if written.is_err() {
                return 2;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn read_matrix(path: &Path) -> Result<BitMatrix, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    matrix_file::parse_bytes(&bytes).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn fraction(value: &lrcx::Rational) -> String {
    format!("{value} = {}", decimal4(value))
}

pub fn construct(a: &ConstructArgs) -> Result<Output, CliError> {
    let x = match (a.kind, a.x) {
        (Kind::Wzl, None | Some(0)) => 0,
        (Kind::Wzl, Some(_)) => return Err(CliError::Usage("wzl takes no x; use xlrc".into())),
        (Kind::Xlrc, Some(x)) => x,
        (Kind::Xlrc, None) => return Err(CliError::Usage("xlrc needs r t x".into())),
    };
    let convention = match a.convention {
        ConventionArg::Incidence => Convention::Incidence,
        ConventionArg::Complement => Convention::Complement,
    };
    let opts = BuildOptions {
        convention,
        ..Default::default()
    };
    let code = build_xlrc_with(a.r, a.t, x, opts)?;
    let p = &code.params;
    let mut summary = format!("n={} k={}", p.n, p.k);
    match p.d {
        Some(Distance::Finite(d)) => write!(summary, " d={d}").unwrap(),
        Some(Distance::Infinite) => summary.push_str(" d=inf"),
        None => {}
    }
    writeln!(summary, "\nr={} t={} x={}", p.r, p.t, p.x).unwrap();
    writeln!(summary, "rate {}", fraction(&p.rate)).unwrap();

    let text = matrix_file::render(&code.h);
    let mut out = Output::default();
    match &a.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            out.stdout = summary;
        }
        None => {
            out.stdout = text;
            out.stderr = summary;
        }
    }
    Ok(out)
}

pub fn bounds(a: &BoundsArgs) -> Result<Output, CliError> {
    let csv = a.format == Format::Csv;
    let mut s = String::new();
    if a.table1 {
        let table = table1();
        let xs: Vec<String> = TABLE1_XS.iter().map(|x| format!("x={x}")).collect();
        if csv {
            writeln!(s, "r,t,{}", xs.join(",")).unwrap();
        } else {
            writeln!(s, "{:>2} {:>2} {}", "r", "t", xs.iter().map(|x| format!("{x:>6}")).collect::<Vec<_>>().join(" ")).unwrap();
        }
        for row in &table.rows {
            let cells: Vec<&str> = row.cells.iter().map(|c| c.decimal4.as_str()).collect();
            if csv {
                writeln!(s, "{},{},{}", row.r, row.t, cells.join(",")).unwrap();
            } else {
                writeln!(s, "{:>2} {:>2} {}", row.r, row.t, cells.join(" ")).unwrap();
            }
        }
    } else if a.table2 {
        let names = ["wzl_rate", "bound_x0", "construction_x1", "bound_x1"];
        if csv {
            writeln!(s, "r,t,{}", names.join(",")).unwrap();
        } else {
            writeln!(s, "{:>2} {:>2} {}", "r", "t", names.map(|n| format!("{n:>15}")).join(" ")).unwrap();
        }
        for row in table2() {
            let cells = row.decimals();
            if csv {
                writeln!(s, "{},{},{}", row.r, row.t, cells.join(",")).unwrap();
            } else {
                writeln!(s, "{:>2} {:>2} {}", row.r, row.t, cells.map(|c| format!("{c:>15}")).join(" ")).unwrap();
            }
        }
    } else {
        let (r, t, x) = match (a.r, a.t, a.x) {
            (Some(r), Some(t), Some(x)) => (r, t, x),
            _ => return Err(CliError::Usage("bounds needs r t x, --table1, or --table2".into())),
        };
        let rep = BoundReport::new(r, t, x)?;
        if csv {
            writeln!(s, "r,t,x,f,R*").unwrap();
            writeln!(s, "{r},{t},{x},{},{}", decimal4(&rep.f), rep.decimal4).unwrap();
        } else {
            writeln!(s, "r={r} t={t} x={x}").unwrap();
            writeln!(s, "j N_lower N_upper").unwrap();
            for (j, (lo, hi)) in rep.n_lower_by_j.iter().zip(&rep.n_upper_by_j).enumerate() {
                writeln!(s, "{} {lo} {hi}", j + 1).unwrap();
            }
            writeln!(s, "f = {}", fraction(&rep.f)).unwrap();
            writeln!(s, "R* = {}", fraction(&rep.rate_upper)).unwrap();
        }
    }
    Ok(Output {
        stdout: s,
        ..Default::default()
    })
}

pub fn verify(a: &VerifyArgs) -> Result<Output, CliError> {
    let c = &a.code;
    let h = read_matrix(&c.matrix)?;
    let rep = verify_matrix(&h, c.r, c.t, c.x, c.mode.into(), a.deep)?;
    let mut s = String::new();
    writeln!(s, "n={} r={} t={} x={}", h.cols(), c.r, c.t, c.x).unwrap();
    writeln!(s, "coordinate sizes max_intersection sets").unwrap();
    for cr in &rep.per_coordinate {
        let sizes: Vec<String> = cr.sets.iter().map(|s| s.len().to_string()).collect();
        let sets: Vec<String> = cr.sets.iter().map(ToString::to_string).collect();
        writeln!(
            s,
            "{} {} {} {}",
            cr.coordinate + 1,
            sizes.join(","),
            cr.max_intersection,
            sets.join(" ")
        )
        .unwrap();
    }
    for f in &rep.failures {
        match f.coordinate {
            Some(i) => writeln!(s, "failure at coordinate {}: {}", i + 1, f.reason).unwrap(),
            None => writeln!(s, "failure: {}", f.reason).unwrap(),
        }
    }
    let deep = if rep.deep_checked { "deep" } else { "structural" };
    writeln!(s, "{} ({deep} check)", if rep.ok { "ok" } else { "FAILED" }).unwrap();
    Ok(Output {
        stdout: s,
        code: u8::from(!rep.ok),
        ..Default::default()
    })
}

/// A family for the experiments, or the report of why none was found.
fn family_or_report(h: &BitMatrix, c: &CodeArgs, s: &mut String) -> Result<Option<RecoveringFamily>, CliError> {
    match discover_family(h, c.r, c.t, c.x, c.mode.into())? {
        Discovery::Found(fam) => Ok(Some(fam)),
        Discovery::NotFound { coordinate, exhaustive } => {
            let how = if exhaustive { "exhaustive" } else { "bounded" };
            writeln!(s, "no recovering family: coordinate {} has none ({how} search)", coordinate + 1).unwrap();
            Ok(None)
        }
    }
}

pub fn graph(a: &GraphArgs) -> Result<Output, CliError> {
    let c = &a.code;
    if !a.exhaustive && a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let h = read_matrix(&c.matrix)?;
    let f = f_value(c.r, c.t, c.x)?;
    let mut s = String::new();
    let Some(fam) = family_or_report(&h, c, &mut s)? else {
        return Ok(Output {
            stdout: s,
            code: 1,
            ..Default::default()
        });
    };
    let g = build_graph(&fam);
    writeln!(s, "n={} r={} t={} x={}", h.cols(), c.r, c.t, c.x).unwrap();
    writeln!(s, "f = {}", fraction(&f)).unwrap();
    let holds;
    if a.exhaustive {
        let e = exhaustive_expected_fraction(&g)?;
        holds = e >= f;
        writeln!(s, "expected fraction = {}", fraction(&e)).unwrap();
    } else {
        let mc = monte_carlo(&g, a.trials, a.seed);
        let f = f.to_f64().unwrap_or(f64::NAN);
        holds = mc.mean >= f - 3.0 * mc.stderr;
        writeln!(s, "trials={} seed={}", a.trials, a.seed).unwrap();
        writeln!(s, "mean = {:.6} stderr = {:.6}", mc.mean, mc.stderr).unwrap();
        writeln!(s, "acyclic trials = {}/{}", mc.acyclic_trials, mc.trials).unwrap();
    }
    let outcome = color_vertices(&g, &trial_permutation(g.n(), a.seed, 0));
    if outcome.colored_set.len() <= STRUCTURAL_MAX {
        let (checked, passed) = structural_sweep(&g, &outcome);
        writeln!(s, "structural checks (trial 0) = {passed}/{checked}").unwrap();
    }
    writeln!(s, "bound {}", if holds { "holds" } else { "violated" }).unwrap();
    Ok(Output {
        stdout: s,
        code: u8::from(!holds),
        ..Default::default()
    })
}

pub fn simulate(a: &SimulateArgs) -> Result<Output, CliError> {
    let c = &a.code;
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let h = read_matrix(&c.matrix)?;
    let mut s = String::new();
    let Some(fam) = family_or_report(&h, c, &mut s)? else {
        return Ok(Output {
            stdout: s,
            code: 1,
            ..Default::default()
        });
    };
    let rep = repair_sweep(&h, &fam, a.samples, a.seed)?;
    let basis_points = rep.successes * 10_000 / rep.repairs.max(1);
    writeln!(s, "n={} samples={} seed={}", h.cols(), a.samples, a.seed).unwrap();
    writeln!(
        s,
        "repairs={} successes={} ({}.{:02}%)",
        rep.repairs,
        rep.successes,
        basis_points / 100,
        basis_points % 100
    )
    .unwrap();
    writeln!(s, "max load = {}", rep.max_load).unwrap();
    writeln!(s, "load histogram").unwrap();
    for (load, count) in &rep.load_histogram {
        writeln!(s, "{load} {count}").unwrap();
    }
    Ok(Output {
        stdout: s,
        code: u8::from(!rep.all_succeeded()),
        ..Default::default()
    })
}
