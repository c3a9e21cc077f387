//! `losim` command line: generate cities, simulate P_LoS curves, fit the
//! sigmoid models, compare curves, and dump the bundled reference table.
//!
//! Exit codes: 0 success, 2 validation failure, 3 generation/simulation
//! failure, 4 insufficient data.

mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use losim_core::citygen::{self, GenError, GenOptions};
use losim_core::fitting::{self, FitError, FitOptions, ModelKind};
use losim_core::montecarlo::{self, Binning, SimError, SimulationConfig};
use losim_core::reference;
use losim_core::{
    Axis, BuiltUpParams, CityModel, CurveError, Environment, Highway, Layout, PlosCurve,
};

use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "losim",
    version,
    about = "Urban layout and air-to-ground line-of-sight probability toolkit"
)]
struct Cli {
    /// Worker threads for simulation (0 = automatic). Never affects results.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one city and write it as JSON.
    Generate(GenerateArgs),
    /// Run the Monte Carlo estimation and write the curve CSV plus a run manifest.
    Simulate(SimulateArgs),
    /// Fit a sigmoid model to a curve CSV and write the fit JSON.
    Fit(FitArgs),
    /// Compare two curve CSVs over their shared angular support.
    Compare(CompareArgs),
    /// Emit a bundled reference coefficient curve as CSV.
    Table2(Table2Args),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Environment preset: suburban, urban, dense-urban or high-rise.
    #[arg(long)]
    env: Option<String>,
    /// Built area ratio in (0,1]; overrides the preset value.
    #[arg(long)]
    alpha: Option<f64>,
    /// Buildings per square kilometre; overrides the preset value.
    #[arg(long)]
    beta: Option<u32>,
    /// Rayleigh height scale in metres; overrides the preset value.
    #[arg(long)]
    gamma: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self, fallback: Option<BuiltUpParams>) -> Result<BuiltUpParams, CliError> {
        let preset = match &self.env {
            Some(name) => Some(
                name.parse::<Environment>()
                    .map_err(CliError::Validation)?
                    .params(),
            ),
            None => None,
        };
        let base = preset.or(fallback);
        let params = match base {
            Some(mut p) => {
                if let Some(a) = self.alpha {
                    p.alpha = a;
                }
                if let Some(b) = self.beta {
                    p.beta = b;
                }
                if let Some(g) = self.gamma {
                    p.gamma = g;
                }
                p
            }
            None => match (self.alpha, self.beta, self.gamma) {
                (Some(alpha), Some(beta), Some(gamma)) => BuiltUpParams::new(alpha, beta, gamma),
                _ => {
                    return Err(CliError::Validation(
                        "missing parameters: pass --env or all of --alpha/--beta/--gamma".into(),
                    ))
                }
            },
        };
        params.validate().map_err(CliError::Validation)?;
        Ok(params)
    }

    fn given(&self) -> bool {
        self.env.is_some() || self.alpha.is_some() || self.beta.is_some() || self.gamma.is_some()
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON config file; params, layout, seed and generation knobs apply.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    /// Layout: manhattan, rm, ru or rh.
    #[arg(long)]
    layout: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path for the city JSON.
    #[arg(long, default_value = "city.json")]
    out: PathBuf,
    /// Probability of sampling a square footprint.
    #[arg(long)]
    square_ratio: Option<f64>,
    /// Occupancy grid cells per side (ru/rh layouts).
    #[arg(long)]
    grid_res: Option<usize>,
    /// Highway strip as axis:offset:width:length (repeatable, rh layout).
    #[arg(long = "highway")]
    highways: Vec<String>,
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON config file mirroring the simulation config schema.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    layout: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Ground users per city.
    #[arg(long)]
    ues: Option<u32>,
    /// Number of independent cities.
    #[arg(long)]
    cities: Option<u32>,
    /// Maximum base station altitude in metres.
    #[arg(long = "habs-max")]
    habs_max: Option<f64>,
    #[arg(long)]
    ue_height: Option<f64>,
    /// Minimum per-bin count recorded for fit eligibility.
    #[arg(long)]
    min_count: Option<u32>,
    /// Angle binning: nearest or ceil.
    #[arg(long)]
    binning: Option<String>,
    /// Base station redraws per city.
    #[arg(long)]
    abs_repeats: Option<u32>,
    #[arg(long)]
    square_ratio: Option<f64>,
    #[arg(long)]
    grid_res: Option<usize>,
    /// Highway strip as axis:offset:width:length (repeatable, rh layout).
    #[arg(long = "highway")]
    highways: Vec<String>,
    /// Also write a highway-user curve (rh layout): <out>.street.csv and
    /// <out>.highway.csv.
    #[arg(long)]
    split_highway: bool,
    /// Simulate over a pre-generated city JSON instead of generating.
    #[arg(long)]
    city: Option<PathBuf>,
    /// Output path for the curve CSV.
    #[arg(long, default_value = "curve.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    /// Curve CSV to fit.
    curve: PathBuf,
    /// Model family: sig1 or sig2.
    #[arg(long, default_value = "sig2")]
    model: String,
    /// Bins with fewer observations are excluded.
    #[arg(long, default_value_t = 30)]
    min_count: u32,
    /// Output path for the fit JSON.
    #[arg(long, default_value = "fit.json")]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    curve_a: PathBuf,
    curve_b: PathBuf,
    /// Lower end of the compared angle range (degrees).
    #[arg(long, default_value_t = 0)]
    theta_min: usize,
    /// Upper end of the compared angle range (degrees).
    #[arg(long, default_value_t = 90)]
    theta_max: usize,
    /// Optional JSON output path for the metrics.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table2Args {
    /// Environment preset.
    #[arg(long)]
    env: String,
    /// Layout with reference coefficients: rm, ru or rh.
    #[arg(long)]
    layout: String,
    /// Model family: sig1 or sig2.
    #[arg(long)]
    model: String,
    /// Output path; prints to standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error carrying its process exit code.
enum CliError {
    /// Bad invocation or malformed input (exit 2).
    Validation(String),
    /// Generation or simulation failed at runtime (exit 3).
    Runtime(String),
    /// Not enough data to fit or compare (exit 4).
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 3,
            CliError::Data(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Runtime(m) | CliError::Data(m) => m,
        }
    }
}

impl From<SimError> for CliError {
    fn from(err: SimError) -> Self {
        match err {
            SimError::InvalidConfig(_) | SimError::NoHighways => {
                CliError::Validation(err.to_string())
            }
            SimError::Generation { .. } | SimError::PlacementExhausted { .. } => {
                CliError::Runtime(err.to_string())
            }
        }
    }
}

impl From<GenError> for CliError {
    fn from(err: GenError) -> Self {
        match err {
            GenError::InvalidParams(_)
            | GenError::HighwayOutOfBounds { .. }
            | GenError::HighwayOverlap { .. } => CliError::Validation(err.to_string()),
            _ => CliError::Runtime(err.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(err: CurveError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<FitError> for CliError {
    fn from(err: FitError) -> Self {
        CliError::Data(err.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn parse_layout(s: &str) -> Result<Layout, CliError> {
    s.parse::<Layout>().map_err(CliError::Validation)
}

fn parse_model(s: &str) -> Result<ModelKind, CliError> {
    s.parse::<ModelKind>().map_err(CliError::Validation)
}

/// Parse `axis:offset:width:length` into a highway strip.
fn parse_highway(s: &str) -> Result<Highway, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = |msg: &str| {
        CliError::Validation(format!(
            "bad highway spec `{s}`: {msg} (expected axis:offset:width:length)"
        ))
    };
    if parts.len() != 4 {
        return Err(bad("expected 4 fields"));
    }
    let axis = match parts[0] {
        "horizontal" | "h" => Axis::Horizontal,
        "vertical" | "v" => Axis::Vertical,
        _ => return Err(bad("axis must be horizontal or vertical")),
    };
    let num = |field: &str, name: &str| {
        field
            .parse::<f64>()
            .map_err(|_| bad(&format!("{name} is not a number")))
    };
    Ok(Highway {
        axis,
        offset: num(parts[1], "offset")?,
        width: num(parts[2], "width")?,
        length: num(parts[3], "length")?,
    })
}

fn gen_options(square_ratio: Option<f64>, grid_res: Option<usize>, base: GenOptions) -> GenOptions {
    GenOptions {
        square_ratio: square_ratio.unwrap_or(base.square_ratio),
        grid_resolution: grid_res.unwrap_or(base.grid_resolution),
        ..base
    }
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let file: ConfigFile = match &args.config {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))?,
        None => ConfigFile::default(),
    };
    let params = match file.params {
        Some(p) if !args.params.given() => {
            p.validate().map_err(CliError::Validation)?;
            p
        }
        fallback => args.params.resolve(fallback)?,
    };
    let layout = match (&args.layout, file.layout) {
        (Some(s), _) => parse_layout(s)?,
        (None, Some(l)) => l,
        (None, None) => {
            return Err(CliError::Validation(
                "missing --layout (or layout in the config file)".into(),
            ))
        }
    };
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let opts = gen_options(
        args.square_ratio,
        args.grid_res,
        file.gen.unwrap_or_default(),
    );
    let mut highways = if !args.highways.is_empty() {
        args.highways
            .iter()
            .map(|s| parse_highway(s))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        file.highways.unwrap_or_default()
    };
    if layout == Layout::Rh && highways.is_empty() {
        highways = Highway::default_preset();
    }

    let city = citygen::generate(layout, &params, &opts, &highways, seed, 0)?;
    write_file(&args.out, &city.to_json_string())?;
    println!(
        "wrote {} ({} buildings, {} dropped/clamped)",
        args.out.display(),
        city.buildings.len(),
        city.warnings.len()
    );
    println!(
        "achieved alpha: {:.4} (requested {:.4})",
        city.achieved_alpha, params.alpha
    );
    Ok(())
}

/// Partial simulation config as read from a JSON file; command-line
/// flags override any field.
#[derive(Default, serde::Deserialize)]
#[serde(default)]
struct ConfigFile {
    params: Option<BuiltUpParams>,
    layout: Option<Layout>,
    h_abs_max: Option<f64>,
    n_ue: Option<u32>,
    n_cities: Option<u32>,
    seed: Option<u64>,
    ue_height: Option<f64>,
    min_count_per_bin: Option<u32>,
    binning: Option<Binning>,
    abs_repeats: Option<u32>,
    highways: Option<Vec<Highway>>,
    gen: Option<GenOptions>,
}

fn resolve_config(args: &SimulateArgs, city: Option<&CityModel>) -> Result<SimulationConfig, CliError> {
    let file: ConfigFile = match &args.config {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))?,
        None => ConfigFile::default(),
    };

    let params = if args.params.given() {
        args.params.resolve(file.params)?
    } else {
        file.params
            .or_else(|| city.map(|c| c.params))
            .ok_or_else(|| {
                CliError::Validation(
                    "missing parameters: pass --env, --alpha/--beta/--gamma or a config file".into(),
                )
            })?
    };
    let layout = match (&args.layout, file.layout, city) {
        (Some(s), _, _) => parse_layout(s)?,
        (None, Some(l), _) => l,
        (None, None, Some(c)) => c.layout,
        (None, None, None) => {
            return Err(CliError::Validation(
                "missing --layout (or layout in the config file)".into(),
            ))
        }
    };
    let h_abs_max = args
        .habs_max
        .or(file.h_abs_max)
        .ok_or_else(|| CliError::Validation("missing --habs-max".into()))?;
    let n_ue = args
        .ues
        .or(file.n_ue)
        .ok_or_else(|| CliError::Validation("missing --ues".into()))?;
    let n_cities = args
        .cities
        .or(file.n_cities)
        .ok_or_else(|| CliError::Validation("missing --cities".into()))?;
    let seed = args
        .seed
        .or(file.seed)
        .or_else(|| city.map(|c| c.seed))
        .unwrap_or(0);

    let binning = match &args.binning {
        Some(s) => match s.as_str() {
            "nearest" => Binning::Nearest,
            "ceil" => Binning::Ceil,
            other => {
                return Err(CliError::Validation(format!(
                    "unknown binning `{other}` (expected nearest or ceil)"
                )))
            }
        },
        None => file.binning.unwrap_or_default(),
    };

    let mut highways = if !args.highways.is_empty() {
        args.highways
            .iter()
            .map(|s| parse_highway(s))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        file.highways.unwrap_or_default()
    };
    if layout == Layout::Rh && highways.is_empty() {
        highways = Highway::default_preset();
    }

    let mut config = SimulationConfig::new(params, layout, h_abs_max, n_ue, n_cities, seed);
    config.ue_height = args.ue_height.or(file.ue_height).unwrap_or(0.0);
    if let Some(mc) = args.min_count.or(file.min_count_per_bin) {
        config.min_count_per_bin = mc;
    }
    if let Some(reps) = args.abs_repeats.or(file.abs_repeats) {
        config.abs_repeats = reps;
    }
    config.binning = binning;
    config.highways = highways;
    config.gen = gen_options(
        args.square_ratio,
        args.grid_res,
        file.gen.unwrap_or_default(),
    );
    config.validate()?;
    Ok(config)
}

/// Split-output path: `curve.csv` becomes `curve.street.csv` / `curve.highway.csv`.
fn with_suffix(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "curve".into());
    out.with_file_name(format!("{stem}.{suffix}.csv"))
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let city = match &args.city {
        Some(path) => Some(CityModel::from_json_str(&read_file(path)?).map_err(|e| {
            CliError::Validation(format!("bad city file {}: {e}", path.display()))
        })?),
        None => None,
    };
    let config = resolve_config(args, city.as_ref())?;

    let (street, highway, cities) = match (&city, args.split_highway) {
        (Some(city), false) => {
            let out = montecarlo::run_on_city(&config, city, 0)?;
            (out.curve, None, out.cities)
        }
        (Some(city), true) => {
            let out = montecarlo::run_split_on_city(&config, city, 0)?;
            (out.street, Some(out.highway), out.cities)
        }
        (None, false) => {
            let out = montecarlo::run_full(&config)?;
            (out.curve, None, out.cities)
        }
        (None, true) => {
            let out = montecarlo::run_rh_split(&config)?;
            (out.street, Some(out.highway), out.cities)
        }
    };

    let duration = started.elapsed().as_secs_f64();
    let mut written = Vec::new();
    match &highway {
        None => {
            write_file(&args.out, &street.to_csv_string())?;
            written.push(args.out.clone());
        }
        Some(gw) => {
            let street_path = with_suffix(&args.out, "street");
            let highway_path = with_suffix(&args.out, "highway");
            write_file(&street_path, &street.to_csv_string())?;
            write_file(&highway_path, &gw.to_csv_string())?;
            written.push(street_path);
            written.push(highway_path);
        }
    }

    let manifest_path = with_suffix(&args.out, "manifest").with_extension("json");
    let manifest = RunManifest::new(&config, &cities, duration);
    write_file(&manifest_path, &manifest.to_json_string())?;

    for path in &written {
        println!("wrote {}", path.display());
    }
    println!("wrote {}", manifest_path.display());
    println!(
        "{} links across {} cities in {duration:.2}s",
        street.total_count() + highway.as_ref().map_or(0, PlosCurve::total_count),
        cities.len()
    );
    Ok(())
}

fn cmd_fit(args: &FitArgs) -> Result<(), CliError> {
    let curve = PlosCurve::read_csv(&args.curve)?;
    let model = parse_model(&args.model)?;
    let opts = FitOptions::with_min_count(args.min_count);
    let fit = fitting::fit(&curve, model, &opts)?;
    write_file(&args.out, &fit.to_json_string())?;
    if !fit.converged {
        eprintln!("warning: refinement stopped at the iteration budget");
    }
    println!("wrote {}", args.out.display());
    println!("rmse = {:.6} over {} bins", fit.rmse, fit.support.len());
    Ok(())
}

#[derive(serde::Serialize)]
struct CompareReport {
    rmse: f64,
    mae: f64,
    r2: f64,
    theta_min: usize,
    theta_max: usize,
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    if args.theta_min > args.theta_max || args.theta_max > 90 {
        return Err(CliError::Validation(format!(
            "bad angle range {}..{}",
            args.theta_min, args.theta_max
        )));
    }
    let a = PlosCurve::read_csv(&args.curve_a)?;
    let b = PlosCurve::read_csv(&args.curve_b)?;
    let metrics = fitting::compare(&a, &b, args.theta_min, args.theta_max)?;
    println!(
        "rmse = {:.6}\nmae = {:.6}\nr2 = {:.6}",
        metrics.rmse, metrics.mae, metrics.r2
    );
    if let Some(out) = &args.out {
        let report = CompareReport {
            rmse: metrics.rmse,
            mae: metrics.mae,
            r2: metrics.r2,
            theta_min: args.theta_min,
            theta_max: args.theta_max,
        };
        write_file(
            out,
            &serde_json::to_string_pretty(&report).expect("report serialization cannot fail"),
        )?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn cmd_table2(args: &Table2Args) -> Result<(), CliError> {
    let env = args
        .env
        .parse::<Environment>()
        .map_err(CliError::Validation)?;
    let layout = parse_layout(&args.layout)?;
    let model = parse_model(&args.model)?;
    let curve = reference::reference_curve(layout, env, model).ok_or_else(|| {
        CliError::Validation(format!(
            "no reference coefficients for layout {layout} (available: rm, ru, rh)"
        ))
    })?;
    match &args.out {
        Some(path) => {
            write_file(path, &curve.to_csv_string())?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", curve.to_csv_string()),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError::Runtime(format!("cannot configure thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Table2(args) => cmd_table2(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
