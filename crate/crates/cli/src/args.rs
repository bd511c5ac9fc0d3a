use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "leo-vn",
    version,
    about = "Virtual-node topology experiments for polar LEO constellations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Virtual-node cell table with bounds and region labels.
    Divide(DivideArgs),
    /// Physical ISL set at one instant.
    Snapshot(SnapshotArgs),
    /// Topology-change events of a VN method over time.
    Staticness(StaticnessArgs),
    /// Available H-ISLs over a range of phasing factors.
    SweepHisl(SweepArgs),
    /// Min-cost max-flow throughput sweep.
    Throughput(ThroughputArgs),
    /// Average shortest-path latency sweep.
    Latency(LatencyArgs),
    /// Closed-form minimum phase spread against exhaustive search.
    Theorem1Check(Theorem1Args),
    /// Run the analytic-versus-oracle checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// TOML constellation file; the flags below override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    /// Walker phasing factor F.
    #[arg(long = "f", alias = "F")]
    pub f: Option<usize>,
    /// Polar threshold in degrees (sweeps accept a comma list).
    #[arg(long, value_delimiter = ',')]
    pub polar_deg: Vec<f64>,
    #[arg(long)]
    pub altitude_km: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; defaults to a file in $LEO_VN_OUT_DIR (or ./results).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Conventional,
    Optimized,
}

impl From<ModeArg> for leo_vn::isl::IslMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Conventional => leo_vn::isl::IslMode::Conventional,
            ModeArg::Optimized => leo_vn::isl::IslMode::Optimized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    RowCell,
    RowInstant,
    PerSatellite,
}

impl From<RuleArg> for leo_vn::isl::ShutoffRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::RowCell => leo_vn::isl::ShutoffRule::RowCell,
            RuleArg::RowInstant => leo_vn::isl::ShutoffRule::RowInstant,
            RuleArg::PerSatellite => leo_vn::isl::ShutoffRule::PerSatellite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Grd1,
    Grd2,
    Csd,
}

impl From<MethodArg> for leo_vn::graph::VnMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Grd1 => leo_vn::graph::VnMethod::Grd1,
            MethodArg::Grd2 => leo_vn::graph::VnMethod::Grd2,
            MethodArg::Csd => leo_vn::graph::VnMethod::Csd,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DivideArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Stagger the cells to follow this ISL mode; omit for an unstaggered grid.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Time in seconds used for the longitude of each column.
    #[arg(long = "t-seconds", alias = "t", default_value_t = 0.0)]
    pub t: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SnapshotArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Optimized)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = RuleArg::RowCell)]
    pub rule: RuleArg,
    #[arg(long = "t-seconds", alias = "t", default_value_t = 0.0)]
    pub t: f64,
}

#[derive(Debug, Clone, Args)]
pub struct StaticnessArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Report file (JSON); the event log goes next to it as `.events.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Csd)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Optimized)]
    pub mode: ModeArg,
    /// Defaults to one orbital period.
    #[arg(long)]
    pub duration_s: Option<f64>,
    /// Defaults to 720 per orbital period.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Minimum elevation for GRD coverage.
    #[arg(long, default_value_t = 0.0)]
    pub sigma_min_deg: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 0)]
    pub f_min: usize,
    /// Defaults to n2 - 1.
    #[arg(long)]
    pub f_max: Option<usize>,
    /// Both modes when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// RNG seed (ChaCha8); required by `latency`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ThroughputArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, default_value_t = 16)]
    pub snapshots: usize,
    #[arg(long, default_value_t = 1.0)]
    pub isl_capacity_gbps: f64,
}

#[derive(Debug, Clone, Args)]
pub struct LatencyArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, default_value_t = 16)]
    pub snapshots: usize,
    #[arg(long, default_value_t = 10_000)]
    pub pairs: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Theorem1Args {
    #[arg(long)]
    pub n1: usize,
    /// Defaults to 2·n1.
    #[arg(long)]
    pub n2: Option<usize>,
    /// Check every F in 0..n2 when omitted.
    #[arg(long = "f", alias = "F")]
    pub f: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Division,
    Theorem1,
    Staticness,
    Counts,
    Flow,
    All,
}

impl From<SuiteArg> for leo_vn::verify::Suite {
    fn from(s: SuiteArg) -> Self {
        use leo_vn::verify::Suite;
        match s {
            SuiteArg::Division => Suite::Division,
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::Staticness => Suite::Staticness,
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Flow => Suite::Flow,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Report file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
