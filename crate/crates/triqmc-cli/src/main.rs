//! `triqmc` — generate QMC point sets on triangles, measure their
//! discrepancy, and run quadrature convergence studies.
//!
//! Exit codes: 0 on success, 2 on command-line usage errors, 3 on runtime
//! errors (bad configuration, unreadable input, unknown integrand, ...).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triqmc::quadrature::convergence_study_with;
use triqmc::vdc::{ScrambleMode, DEFAULT_SCRAMBLE_DEPTH};
use triqmc::{
    builtin_integrand, integrate, lattice::LatticeAngle,
    lattice::QuadraticIrrationalTangent, parallelogram_discrepancy_grid_with,
    parallelogram_discrepancy_with, pc_discrepancy, subtriangle_discrepancy, DiscrepancyReport,
    Execution, Family, Generator, Point, ReferenceTriangle, SampleSet, Triangle,
};

#[derive(Parser)]
#[command(
    name = "triqmc",
    version,
    about = "Quasi-Monte Carlo point sets, discrepancy, and quadrature on triangles"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a point set and print it as CSV (`x,y`).
    Generate(GenerateCmd),
    /// Compute a discrepancy measure of a point set (JSON report), or a
    /// CSV sweep over point counts with `--n-list`.
    Discrepancy(DiscrepancyCmd),
    /// Integrate a builtin integrand over the domain with one point set.
    Integrate(IntegrateCmd),
    /// RMSE convergence study over a list of point counts (CSV).
    Converge(ConvergeCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// Deterministic triangular van der Corput sequence.
    Vdc,
    /// Nested-uniform-scrambled van der Corput points (randomized).
    VdcScrambled,
    /// Kronecker lattice, fixed (zero) shift.
    Lattice,
    /// Kronecker lattice with a seeded random shift.
    LatticeShifted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LeafArg {
    Centroid,
    UniformLeaf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExecArg {
    /// Library default (parallel when compiled in).
    Auto,
    Sequential,
    Parallel,
}

impl ExecArg {
    fn to_execution(self) -> Execution {
        match self {
            ExecArg::Auto => Execution::default(),
            ExecArg::Sequential => Execution::Sequential,
            ExecArg::Parallel => Execution::Parallel,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Parallelogram,
    AnchoredBox,
    Subtriangle,
}

#[derive(Args)]
struct DomainArgs {
    /// Domain triangle: `right-unit`, `pc`, `equilateral`, or
    /// `custom:ax,ay,bx,by,cx,cy`.
    #[arg(long, default_value = "equilateral")]
    domain: String,
}

impl DomainArgs {
    fn triangle(&self) -> Result<Triangle, CliError> {
        match self.domain.as_str() {
            "right-unit" => Ok(Triangle::reference(ReferenceTriangle::RightUnit)),
            "pc" => Ok(Triangle::reference(ReferenceTriangle::PillardsCools)),
            "equilateral" => Ok(Triangle::reference(ReferenceTriangle::EquilateralUnitArea)),
            other => {
                let spec = other.strip_prefix("custom:").ok_or_else(|| {
                    CliError(format!(
                        "unknown domain '{other}' (expected right-unit, pc, equilateral, or custom:ax,ay,bx,by,cx,cy)"
                    ))
                })?;
                let nums: Vec<f64> = spec
                    .split(',')
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError(format!("bad custom domain '{spec}': {e}")))?;
                if nums.len() != 6 {
                    return Err(CliError(format!(
                        "custom domain needs 6 numbers, got {}",
                        nums.len()
                    )));
                }
                Triangle::new(
                    Point::new(nums[0], nums[1]),
                    Point::new(nums[2], nums[3]),
                    Point::new(nums[4], nums[5]),
                )
                .map_err(CliError::from)
            }
        }
    }
}

#[derive(Args)]
struct GenCommon {
    /// Point-set construction to use.
    #[arg(long, value_enum, default_value_t = GenKind::Vdc)]
    generator: GenKind,
    /// Seed for randomized generators (scrambling, random shift).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start index of the van der Corput sequence (points start..start+n).
    #[arg(long, default_value_t = 0)]
    start: u64,
    /// Scrambling depth in base-4 digits (vdc-scrambled).
    #[arg(long, default_value_t = DEFAULT_SCRAMBLE_DEPTH)]
    depth: u32,
    /// Leaf placement for scrambled points.
    #[arg(long, value_enum, default_value_t = LeafArg::Centroid)]
    leaf: LeafArg,
    /// Lattice angle as a quadratic irrational tangent `a,b,c,d` meaning
    /// tan(alpha) = (a + b*sqrt(c))/d.
    #[arg(long, default_value = "1,1,2,1", conflicts_with = "angle_rad")]
    angle: String,
    /// Lattice angle in raw radians (no admissibility structure).
    #[arg(long)]
    angle_rad: Option<f64>,
    /// Trim or pad the lattice to exactly n points.
    #[arg(long)]
    exact_count: bool,
}

impl GenCommon {
    fn lattice_angle(&self) -> Result<LatticeAngle, CliError> {
        if let Some(rad) = self.angle_rad {
            return Ok(LatticeAngle::RawRadians(rad));
        }
        let nums: Vec<i64> = self
            .angle
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError(format!("bad --angle '{}': {e}", self.angle)))?;
        if nums.len() != 4 {
            return Err(CliError(format!(
                "--angle needs 4 integers a,b,c,d; got {}",
                nums.len()
            )));
        }
        let tan = QuadraticIrrationalTangent::new(nums[0], nums[1], nums[2], nums[3])?;
        Ok(LatticeAngle::Tangent(tan))
    }

    fn generator(&self) -> Result<Generator, CliError> {
        Ok(match self.generator {
            GenKind::Vdc => Generator::Vdc { start: self.start },
            GenKind::VdcScrambled => Generator::VdcScrambled {
                depth: self.depth,
                mode: match self.leaf {
                    LeafArg::Centroid => ScrambleMode::Centroid,
                    LeafArg::UniformLeaf => ScrambleMode::UniformLeaf,
                },
            },
            GenKind::Lattice => Generator::Lattice {
                angle: self.lattice_angle()?,
                exact_count: self.exact_count,
            },
            GenKind::LatticeShifted => Generator::LatticeShifted {
                angle: self.lattice_angle()?,
                exact_count: self.exact_count,
            },
        })
    }
}

#[derive(Args)]
struct GenerateCmd {
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    gen: GenCommon,
    /// Number of points.
    #[arg(short = 'n', long = "n", value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Output file (default: stdout).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DiscrepancyCmd {
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    gen: GenCommon,
    /// Number of points (generator input; not needed with --points).
    #[arg(short = 'n', long = "n", value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,
    /// Read the point set from a CSV file (`x,y` header optional; `-` for
    /// stdin) instead of generating it.
    #[arg(long)]
    points: Option<String>,
    /// Discrepancy family to evaluate.
    #[arg(long, value_enum, default_value_t = FamilyArg::Parallelogram)]
    family: FamilyArg,
    /// Use the approximate grid scan at this resolution instead of the
    /// exact sweep (parallelogram family only).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    grid: Option<u64>,
    /// Subdivision depth for the subtriangle family.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=8))]
    subdivision_depth: u32,
    /// Sweep over point counts instead of one report: `a..b` doubles from a
    /// to b, or a comma list `16,64,256`. CSV output.
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long, value_enum, default_value_t = ExecArg::Auto)]
    execution: ExecArg,
    /// Output file (default: stdout).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IntegrateCmd {
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    gen: GenCommon,
    /// Number of points.
    #[arg(short = 'n', long = "n", value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Builtin integrand name.
    #[arg(short = 'f', long, default_value = "const1")]
    integrand: String,
    /// Output file (default: stdout).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeCmd {
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    gen: GenCommon,
    /// Point counts: `a..b` doubles from a to b, or a comma list.
    #[arg(long)]
    n_list: String,
    /// Builtin integrand name.
    #[arg(short = 'f', long, default_value = "const1")]
    integrand: String,
    /// Replicates per point count (randomized generators only).
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    replicates: u32,
    #[arg(long, value_enum, default_value_t = ExecArg::Auto)]
    execution: ExecArg,
    /// Output file (default: stdout).
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
struct CliError(String);

impl From<triqmc::Error> for CliError {
    fn from(e: triqmc::Error) -> Self {
        CliError(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Generate(c) => run_generate(c),
        Cmd::Discrepancy(c) => run_discrepancy(c),
        Cmd::Integrate(c) => run_integrate(c),
        Cmd::Converge(c) => run_converge(c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

/// Honor `TRIQMC_THREADS` for the rayon global pool (parallel builds only).
fn init_thread_pool() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("TRIQMC_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| CliError(format!("cannot write stdout: {e}")))
        }
    }
}

fn points_csv(ps: &SampleSet) -> String {
    let mut out = String::with_capacity(ps.len() * 48 + 4);
    out.push_str("x,y\n");
    for p in ps.points() {
        let _ = writeln!(out, "{:.16e},{:.16e}", p.x, p.y);
    }
    out
}

fn run_generate(c: GenerateCmd) -> Result<(), CliError> {
    let domain = c.domain.triangle()?;
    let generator = c.gen.generator()?;
    let ps = generator.sample(&domain, c.n, c.gen.seed)?;
    emit(c.output.as_ref(), &points_csv(&ps))
}

fn read_points_csv(path: &str) -> Result<Vec<Point>, CliError> {
    let raw = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError(format!("cannot read {path}: {e}")))?
    };
    let mut points = Vec::new();
    for (lineno, line) in raw.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == "x,y") {
            continue;
        }
        let mut cols = line.split(',');
        let (x, y) = (cols.next(), cols.next());
        match (x, y) {
            (Some(xs), Some(ys)) => {
                let x = xs.trim().parse::<f64>();
                let y = ys.trim().parse::<f64>();
                match (x, y) {
                    (Ok(x), Ok(y)) => points.push(Point::new(x, y)),
                    _ => {
                        return Err(CliError(format!(
                            "bad point on line {}: '{line}'",
                            lineno + 1
                        )))
                    }
                }
            }
            _ => {
                return Err(CliError(format!(
                    "bad point on line {}: '{line}'",
                    lineno + 1
                )))
            }
        }
    }
    Ok(points)
}

fn one_report(
    c: &DiscrepancyCmd,
    ps: &SampleSet,
    exec: Execution,
) -> Result<DiscrepancyReport, CliError> {
    Ok(match c.family {
        FamilyArg::Parallelogram => match c.grid {
            Some(res) => parallelogram_discrepancy_grid_with(ps, res as usize, exec)?,
            None => parallelogram_discrepancy_with(ps, exec)?,
        },
        FamilyArg::AnchoredBox => {
            if c.grid.is_some() {
                return Err(CliError("--grid only applies to the parallelogram family".into()));
            }
            pc_discrepancy(ps)?
        }
        FamilyArg::Subtriangle => {
            if c.grid.is_some() {
                return Err(CliError("--grid only applies to the parallelogram family".into()));
            }
            let value = subtriangle_discrepancy(ps, c.subdivision_depth)?;
            DiscrepancyReport {
                family: Family::Subtriangle,
                value,
                witness: None,
                approximate: false,
                n_points: ps.len(),
            }
        }
    })
}

fn run_discrepancy(c: DiscrepancyCmd) -> Result<(), CliError> {
    let domain = c.domain.triangle()?;
    let exec = c.execution.to_execution();

    if let Some(list) = &c.n_list {
        if c.points.is_some() {
            return Err(CliError("--n-list and --points are mutually exclusive".into()));
        }
        let ns = parse_n_list(list)?;
        let generator = c.gen.generator()?;
        let mut out = String::from("N,value,one_over_sqrt_n,log_n_over_n\n");
        for &n in &ns {
            let ps = generator.sample(&domain, n, c.gen.seed)?;
            let report = one_report(&c, &ps, exec)?;
            let nf = n as f64;
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e}",
                n,
                report.value,
                1.0 / nf.sqrt(),
                nf.ln().max(1.0) / nf
            );
        }
        return emit(c.output.as_ref(), &out);
    }

    let ps = match &c.points {
        Some(path) => SampleSet::new(domain, read_points_csv(path)?, format!("csv({path})"))?,
        None => {
            let n = c
                .n
                .ok_or_else(|| CliError("either -n or --points is required".into()))?;
            c.gen.generator()?.sample(&domain, n, c.gen.seed)?
        }
    };
    let report = one_report(&c, &ps, exec)?;
    let json = serde_json::to_string(&report)
        .map_err(|e| CliError(format!("cannot serialize report: {e}")))?;
    emit(c.output.as_ref(), &format!("{json}\n"))
}

fn run_integrate(c: IntegrateCmd) -> Result<(), CliError> {
    let domain = c.domain.triangle()?;
    let ig = builtin_integrand(&domain, &c.integrand)?;
    let ps = c.gen.generator()?.sample(&domain, c.n, c.gen.seed)?;
    let estimate = integrate(&ps, &ig)?;
    let report = serde_json::json!({
        "integrand": ig.name(),
        "smoothness": ig.smoothness().to_string(),
        "n_points": ps.len(),
        "estimate": estimate,
        "exact": ig.exact(),
        "abs_err": ig.exact().map(|e| (estimate - e).abs()),
    });
    emit(c.output.as_ref(), &format!("{report}\n"))
}

fn run_converge(c: ConvergeCmd) -> Result<(), CliError> {
    let domain = c.domain.triangle()?;
    let ig = builtin_integrand(&domain, &c.integrand)?;
    let generator = c.gen.generator()?;
    let ns = parse_n_list(&c.n_list)?;
    let rows = convergence_study_with(
        &generator,
        &domain,
        &ig,
        &ns,
        c.replicates,
        c.gen.seed,
        c.execution.to_execution(),
    )?;
    let mut out = String::new();
    out.push_str(triqmc::ConvergenceRow::csv_header());
    out.push('\n');
    for row in &rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    emit(c.output.as_ref(), &out)
}

/// `a..b` doubles from a up to b inclusive; otherwise a comma list.
fn parse_n_list(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = |why: &str| CliError(format!("bad --n-list '{s}': {why}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad("start is not an integer"))?;
        let b: u64 = b.trim().parse().map_err(|_| bad("end is not an integer"))?;
        if a == 0 {
            return Err(bad("start must be at least 1"));
        }
        if b < a {
            return Err(bad("end must be >= start"));
        }
        let mut ns = Vec::new();
        let mut n = a;
        while n <= b {
            ns.push(n);
            match n.checked_mul(2) {
                Some(next) => n = next,
                None => break,
            }
        }
        Ok(ns)
    } else {
        let ns: Vec<u64> = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("expected integers"))?;
        if ns.is_empty() || ns.contains(&0) {
            return Err(bad("counts must be at least 1"));
        }
        Ok(ns)
    }
}
