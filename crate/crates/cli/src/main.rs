use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use legflow_core::flow::{evolve_with_snapshots, FlowConfig, FlowState};
use legflow_core::geom::{frenet_reconstruct, heisenberg_projection, lagrangian_projection, torus_knot_curve, Frame, SampledCurve};
use legflow_core::invariants::{invariant_report, maslov_index, RationalDetect};
use legflow_core::io::{self, Format};
use legflow_core::linalg::{Mat2, Point3};
use legflow_core::stationary::{
    closure_quanta, curvature_profile, minimize_period_function, scan_modular_curve, snap_to_modular_curve, standard_frame,
    standard_phi_loop, time_periodicity_function, ClosureConfig, Modulus, ModulusCase, ScanConfig,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Validation(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl From<legflow_core::Error> for CliError {
    fn from(e: legflow_core::Error) -> Self {
        use legflow_core::Error as E;
        match e {
            E::InvalidInput(_)
            | E::InvalidModulus(_)
            | E::NotCoprime { .. }
            | E::Parse(_)
            | E::Io(_)
            | E::JetArity { .. }
            | E::HierarchyDepth(_) => Self::Validation(e.to_string()),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Validation(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CaseArg {
    Symmetric,
    Cnoidal,
    Dnoidal,
}

impl From<CaseArg> for ModulusCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Symmetric => ModulusCase::SymmetricCnoidal,
            CaseArg::Cnoidal => ModulusCase::Cnoidal,
            CaseArg::Dnoidal => ModulusCase::Dnoidal,
        }
    }
}

/// Legendrian curves in the 3-sphere under the mKdV hierarchy.
#[derive(Debug, Parser)]
#[command(name = "legflow", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Sample count (torus-knot: 4096 nodes; stationary: 1024 nodes per wavelength)
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Rational-detection tolerance (default 1e-6)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest denominator accepted by rational detection
    #[arg(long, global = true, default_value_t = 64)]
    max_denominator: u64,
    /// Output format for curves and traces
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,
    /// Output directory
    #[arg(long, global = true, default_value = "legflow-out")]
    out: PathBuf,
}

impl Common {
    fn detect(&self) -> CliResult<RationalDetect> {
        let tolerance = self.tol.unwrap_or(1e-6);
        if !(tolerance > 0.0 && tolerance < 0.5) {
            return Err(CliError::Validation(format!("--tol must lie in (0, 0.5), got {tolerance}")));
        }
        if self.max_denominator == 0 {
            return Err(CliError::Validation("--max-denominator must be positive".into()));
        }
        Ok(RationalDetect { max_denominator: self.max_denominator, tolerance })
    }

    fn samples(&self, default: usize) -> CliResult<usize> {
        match self.samples.unwrap_or(default) {
            n if n >= 8 => Ok(n),
            n => Err(CliError::Validation(format!("--samples must be at least 8, got {n}"))),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Torus knot γ_{m,n}: polyline, projections and invariants
    TorusKnot { m: u32, n: u32 },
    /// Evolve a periodic curvature profile under k_t = M_{n+1}
    Evolve {
        /// CSV file with header `s,k` at uniform nodes
        input: PathBuf,
        /// Flow index (1 is the Z_1 flow k_t = M_2)
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        t_end: f64,
        /// Number of snapshot intervals
        #[arg(long, default_value_t = 10)]
        snapshots: usize,
        /// Also reconstruct curves from each snapshot
        #[arg(long)]
        curves: bool,
    },
    /// Stationary curve with modulus (e1, [e2,] e3)
    Stationary {
        #[arg(allow_negative_numbers = true)]
        e1: f64,
        #[arg(allow_negative_numbers = true)]
        e3: f64,
        #[arg(long, allow_negative_numbers = true)]
        e2: Option<f64>,
        #[arg(long, value_enum, default_value = "symmetric")]
        case: CaseArg,
    },
    /// Trace the modular curve Σ_q, q = q_num/q_den
    Scan {
        #[arg(allow_negative_numbers = true)]
        q_num: i64,
        q_den: u64,
        #[arg(long, default_value_t = 40.0)]
        e1_max: f64,
        #[arg(long, default_value_t = 60.0)]
        e3_max: f64,
    },
}

struct Output {
    dir: PathBuf,
    format: Format,
}

impl Output {
    fn new(dir: &Path, format: Format) -> CliResult<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), format })
    }

    fn write(&self, name: &str, contents: &str) -> CliResult<()> {
        fs::write(self.dir.join(name), contents)?;
        Ok(())
    }

    fn formatted(&self, stem: &str) -> String {
        format!("{stem}.{}", self.format.extension())
    }

    fn curve_with_projections(&self, stem: &str, curve: &SampledCurve) -> CliResult<()> {
        self.write(&self.formatted(stem), &io::polyline(curve, self.format)?)?;
        match heisenberg_projection(curve) {
            Ok(h) => {
                let lag: Vec<Point3> = lagrangian_projection(&h).into_iter().map(|[x, y]| [x, y, 0.0]).collect();
                self.write(&self.formatted(&format!("{stem}_heisenberg")), &io::points(&h, self.format)?)?;
                self.write(&self.formatted(&format!("{stem}_lagrangian")), &io::points(&lag, self.format)?)?;
            }
            Err(e) => eprintln!("warning: projections of {stem} skipped: {e}"),
        }
        Ok(())
    }
}

fn torus_knot(common: &Common, m: u32, n: u32) -> CliResult<String> {
    let samples = common.samples(4096)?;
    let curve = torus_knot_curve(m, n, samples)?;
    let report = invariant_report(&curve)?;
    let out = Output::new(&common.out, common.format.into())?;
    out.curve_with_projections("curve", &curve)?;
    out.write("report.json", &io::json(&report)?)?;
    let tb = report.bennequin.map_or("n/a".to_string(), |b| b.to_string());
    Ok(format!(
        "torus-knot {m},{n}: maslov {} clifford_index {} spin {} bennequin {tb}",
        report.maslov,
        report.clifford_index,
        report.spin.value()
    ))
}

fn evolve(common: &Common, input: &Path, n: usize, t_end: f64, snapshots: usize, curves: bool) -> CliResult<String> {
    if !t_end.is_finite() {
        return Err(CliError::Validation("--t-end must be finite".into()));
    }
    let k = io::read_profile_csv(&fs::read_to_string(input)?)?;
    let run = evolve_with_snapshots(&FlowState::new(k), n, t_end, snapshots, &FlowConfig::default())?;
    let out = Output::new(&common.out, common.format.into())?;
    out.write("conservation.csv", &io::conservation_csv(&run.conservation))?;
    #[derive(Serialize)]
    struct Snapshot<'a> {
        t: f64,
        period: f64,
        k: &'a [f64],
    }
    match out.format {
        Format::Csv => {
            for (i, s) in run.snapshots.iter().enumerate() {
                out.write(&format!("snapshot_{i:04}.csv"), &io::profile_csv(&s.k))?;
            }
        }
        Format::Json => {
            let snaps: Vec<Snapshot> = run.snapshots.iter().map(|s| Snapshot { t: s.t, period: s.k.period, k: &s.k.values }).collect();
            out.write("snapshots.json", &io::json(&snaps)?)?;
        }
    }
    if curves {
        for (i, s) in run.snapshots.iter().enumerate() {
            let curve = frenet_reconstruct(&s.k, &Frame::identity());
            out.write(&out.formatted(&format!("curve_{i:04}")), &io::polyline(&curve, out.format)?)?;
        }
    }
    let drift = run.relative_drift();
    Ok(format!(
        "evolve n={n} t_end={t_end}: {} snapshots, relative drift rho1 {:.3e} rho2 {:.3e} rho3 {:.3e}",
        run.snapshots.len(),
        drift[0],
        drift[1],
        drift[2]
    ))
}

#[derive(Serialize)]
struct LoopSummary {
    modulus: Modulus,
    characteristic: String,
    wave_number: u32,
    closure_defect: f64,
    monodromy: Mat2,
    maslov: i64,
    period_function: f64,
}

fn stationary(common: &Common, e1: f64, e3: f64, e2: Option<f64>, case: CaseArg) -> CliResult<String> {
    let modulus = Modulus::new(case.into(), e1, e2, e3)?;
    let cfg = ClosureConfig { detect: common.detect()?, samples: common.samples(1024)?, ..Default::default() };
    let report = closure_quanta(&modulus, &cfg)?;
    let out = Output::new(&common.out, common.format.into())?;
    out.write("profile.csv", &io::profile_csv(&curvature_profile(&modulus, cfg.samples)?))?;

    let mut loop_summary = None;
    match (modulus.is_symmetric(), report.rational_pair) {
        (true, Some((_, q))) => {
            let snapped = snap_to_modular_curve(&modulus, q.to_f64())?;
            let lp = standard_phi_loop(&snapped, &cfg)?;
            out.curve_with_projections("loop", &lp.curve)?;
            loop_summary = Some(LoopSummary {
                modulus: snapped,
                characteristic: q.to_string(),
                wave_number: lp.wave_number,
                closure_defect: lp.closure_defect,
                monodromy: lp.monodromy,
                maslov: maslov_index(&lp.profile)?,
                period_function: time_periodicity_function(&snapped)?,
            });
        }
        _ => {
            let k = curvature_profile(&modulus, cfg.samples)?;
            let curve = frenet_reconstruct(&k, &standard_frame(&modulus)?);
            out.curve_with_projections("wavelength", &curve)?;
        }
    }
    #[derive(Serialize)]
    struct Report<'a> {
        closure: &'a legflow_core::stationary::ClosureReport,
        #[serde(rename = "loop")]
        standard_loop: Option<LoopSummary>,
    }
    let characteristic = report.rational_pair.map(|(_, q)| q.to_string());
    out.write("report.json", &io::json(&Report { closure: &report, standard_loop: loop_summary })?)?;
    Ok(format!(
        "stationary ({e1}, {e3}): phi2_regularized {:.10} closed {} characteristic {} exceptional {}",
        report.phi2_regularized,
        report.closed,
        characteristic.as_deref().unwrap_or("none"),
        report.exceptional
    ))
}

fn scan(common: &Common, q_num: i64, q_den: u64, e1_max: f64, e3_max: f64) -> CliResult<String> {
    if q_den == 0 {
        return Err(CliError::Validation("q_den must be positive".into()));
    }
    let q = q_num as f64 / q_den as f64;
    if q <= 0.5 {
        return Err(CliError::Validation(format!("q = {q_num}/{q_den} must exceed 1/2")));
    }
    let cfg = ScanConfig { e1_max, e3_max, ..Default::default() };
    let trace = scan_modular_curve(q, &cfg)?;
    let out = Output::new(&common.out, common.format.into())?;
    match out.format {
        Format::Csv => out.write("trace.csv", &io::modular_trace_csv(&trace.points))?,
        Format::Json => out.write("trace.json", &io::json(&trace.points)?)?,
    }
    let minimum = minimize_period_function(&trace).ok();
    #[derive(Serialize)]
    struct Summary<'a> {
        q: f64,
        points: usize,
        lower_limit: [f64; 2],
        upper_limit: Option<[f64; 2]>,
        exceptional: Option<[f64; 2]>,
        unbounded: bool,
        asymptotic_slope: Option<f64>,
        period_minimum: Option<&'a legflow_core::stationary::ModularPoint>,
    }
    out.write(
        "summary.json",
        &io::json(&Summary {
            q,
            points: trace.points.len(),
            lower_limit: trace.lower_limit,
            upper_limit: trace.upper_limit,
            exceptional: trace.exceptional,
            unbounded: trace.unbounded,
            asymptotic_slope: trace.asymptotic_slope,
            period_minimum: minimum.as_ref(),
        })?,
    )?;
    let upper = trace.upper_limit.map_or("none".to_string(), |p| format!("(0, {:.6})", p[1]));
    Ok(format!(
        "scan q={q_num}/{q_den}: {} points, lower (0, {:.6}), upper {upper}, unbounded {}",
        trace.points.len(),
        trace.lower_limit[1],
        trace.unbounded
    ))
}

fn run(cli: &Cli) -> CliResult<String> {
    let c = &cli.common;
    match &cli.command {
        Command::TorusKnot { m, n } => torus_knot(c, *m, *n),
        Command::Evolve { input, n, t_end, snapshots, curves } => evolve(c, input, *n, *t_end, *snapshots, *curves),
        Command::Stationary { e1, e3, e2, case } => stationary(c, *e1, *e3, *e2, *case),
        Command::Scan { q_num, q_den, e1_max, e3_max } => scan(c, *q_num, *q_den, *e1_max, *e3_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
