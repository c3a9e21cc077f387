//! Monte Carlo P_LoS estimation over randomly generated cities.
//!
//! Each city of a run gets its own derived random streams for
//! generation, aerial base station placement and user placement, so the
//! result is independent of execution order and worker count. Per-city
//! tallies are merged by city index.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::city::{CityModel, GenWarning, Highway, Layout};
use crate::citygen::{self, GenError, GenOptions};
use crate::curve::{CurveMeta, PlosCurve};
use crate::los::{elevation_angle_deg, is_los, Point3D};
use crate::params::BuiltUpParams;
use crate::rng::{stream_rng, Stream};

/// Rejection budget for collision-free placement.
const PLACE_ATTEMPTS: u32 = 100_000;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("city {city}: {source}")]
    Generation {
        city: u32,
        #[source]
        source: GenError,
    },
    #[error("city {city}: no collision-free spot for {what} within {attempts} attempts")]
    PlacementExhausted {
        city: u32,
        what: &'static str,
        attempts: u32,
    },
    #[error("layout has no highways")]
    NoHighways,
}

/// How a real-valued elevation angle maps to an integer-degree bin.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Binning {
    /// Round to the nearest degree (half away from zero).
    #[default]
    Nearest,
    /// Round up, matching accumulators that ceil the angle.
    Ceil,
}

impl Binning {
    pub fn bin(self, theta_deg: f64) -> usize {
        let v = match self {
            Binning::Nearest => theta_deg.round(),
            Binning::Ceil => theta_deg.ceil(),
        };
        v.clamp(0.0, 90.0) as usize
    }
}

fn default_min_count() -> u32 {
    30
}

fn default_abs_repeats() -> u32 {
    1
}

/// Full description of one Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub params: BuiltUpParams,
    pub layout: Layout,
    /// Upper bound of the uniformly drawn base station altitude (m).
    pub h_abs_max: f64,
    /// Ground users per city (per base station draw).
    pub n_ue: u32,
    pub n_cities: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub ue_height: f64,
    /// Bins need this many observations to be used by fitting.
    #[serde(default = "default_min_count")]
    pub min_count_per_bin: u32,
    #[serde(default)]
    pub binning: Binning,
    /// Extra base station draws per city, reusing the generated city.
    #[serde(default = "default_abs_repeats")]
    pub abs_repeats: u32,
    #[serde(default)]
    pub highways: Vec<Highway>,
    #[serde(default)]
    pub gen: GenOptions,
}

impl SimulationConfig {
    /// Minimal config with defaults for the optional knobs.
    pub fn new(params: BuiltUpParams, layout: Layout, h_abs_max: f64, n_ue: u32, n_cities: u32, seed: u64) -> Self {
        Self {
            params,
            layout,
            h_abs_max,
            n_ue,
            n_cities,
            seed,
            ue_height: 0.0,
            min_count_per_bin: default_min_count(),
            binning: Binning::default(),
            abs_repeats: default_abs_repeats(),
            highways: Vec::new(),
            gen: GenOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        self.params.validate().map_err(SimError::InvalidConfig)?;
        self.gen.validate().map_err(SimError::InvalidConfig)?;
        if !self.h_abs_max.is_finite() || self.h_abs_max <= 0.0 {
            return Err(SimError::InvalidConfig(format!(
                "h_abs_max must be > 0, got {}",
                self.h_abs_max
            )));
        }
        if self.n_ue < 1 {
            return Err(SimError::InvalidConfig("n_ue must be >= 1".into()));
        }
        if self.n_cities < 1 {
            return Err(SimError::InvalidConfig("n_cities must be >= 1".into()));
        }
        if self.abs_repeats < 1 {
            return Err(SimError::InvalidConfig("abs_repeats must be >= 1".into()));
        }
        if !self.ue_height.is_finite() || self.ue_height < 0.0 {
            return Err(SimError::InvalidConfig(format!(
                "ue_height must be >= 0, got {}",
                self.ue_height
            )));
        }
        if self.layout != Layout::Rh && !self.highways.is_empty() {
            return Err(SimError::InvalidConfig(format!(
                "highways are only valid with the rh layout, not {}",
                self.layout
            )));
        }
        citygen::validate_highways(&self.highways)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        Ok(())
    }

    /// Stable 64-bit FNV-1a hash of the canonical JSON form.
    pub fn config_hash(&self) -> u64 {
        let json = serde_json::to_string(self).expect("config serialization cannot fail");
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in json.as_bytes() {
            hash ^= *byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }

    fn meta(&self) -> CurveMeta {
        CurveMeta {
            seed: self.seed,
            config_hash: self.config_hash(),
        }
    }
}

/// Place the aerial base station: uniform over the city square at a
/// uniform altitude below `h_abs_max`, redrawn while it sits inside a
/// building prism.
pub fn place_abs<R: Rng + ?Sized>(
    city: &CityModel,
    h_abs_max: f64,
    rng: &mut R,
) -> Result<Point3D, PlacementFailure> {
    for _ in 0..PLACE_ATTEMPTS {
        let x = rng.gen::<f64>() * city.side;
        let y = rng.gen::<f64>() * city.side;
        let z = rng.gen::<f64>() * h_abs_max;
        let collides = city
            .buildings
            .iter()
            .any(|b| z < b.height && b.contains_xy(x, y));
        if !collides {
            return Ok(Point3D::new(x, y, z));
        }
    }
    Err(PlacementFailure {
        what: "aerial base station",
        attempts: PLACE_ATTEMPTS,
    })
}

/// Place `n` users uniformly over the square minus building footprints.
pub fn place_ues<R: Rng + ?Sized>(
    city: &CityModel,
    n: u32,
    ue_height: f64,
    rng: &mut R,
) -> Result<Vec<Point3D>, PlacementFailure> {
    let mut points = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut placed = false;
        for _ in 0..PLACE_ATTEMPTS {
            let x = rng.gen::<f64>() * city.side;
            let y = rng.gen::<f64>() * city.side;
            if !city.footprint_contains(x, y) {
                points.push(Point3D::new(x, y, ue_height));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(PlacementFailure {
                what: "ground user",
                attempts: PLACE_ATTEMPTS,
            });
        }
    }
    Ok(points)
}

/// Place `n` users uniformly over the union of highway strips, at ground
/// level. Strips are chosen proportionally to their area.
pub fn place_ues_highway<R: Rng + ?Sized>(
    city: &CityModel,
    n: u32,
    rng: &mut R,
) -> Result<Vec<Point3D>, SimError> {
    if city.highways.is_empty() {
        return Err(SimError::NoHighways);
    }
    let total: f64 = city.highways.iter().map(Highway::area).sum();
    let mut points = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut pick = rng.gen::<f64>() * total;
        let mut chosen = city.highways.len() - 1;
        for (i, hw) in city.highways.iter().enumerate() {
            if pick < hw.area() {
                chosen = i;
                break;
            }
            pick -= hw.area();
        }
        let (x0, y0, x1, y1) = city.highways[chosen].rect();
        let x = x0 + rng.gen::<f64>() * (x1 - x0);
        let y = y0 + rng.gen::<f64>() * (y1 - y0);
        points.push(Point3D::new(x, y, 0.0));
    }
    Ok(points)
}

/// A placement rejection budget ran out (pathological configurations).
#[derive(Debug, Clone, Copy)]
pub struct PlacementFailure {
    pub what: &'static str,
    pub attempts: u32,
}

impl PlacementFailure {
    fn at_city(self, city: u32) -> SimError {
        SimError::PlacementExhausted {
            city,
            what: self.what,
            attempts: self.attempts,
        }
    }
}

/// Per-city diagnostics surfaced to run manifests.
#[derive(Debug, Clone, Serialize)]
pub struct CityReport {
    pub index: u32,
    pub achieved_alpha: f64,
    pub warnings: Vec<GenWarning>,
}

/// A street curve together with per-city diagnostics.
#[derive(Debug, Clone)]
pub struct SimOutput {
    pub curve: PlosCurve,
    pub cities: Vec<CityReport>,
}

/// Street and highway curves from the same cities and base stations.
#[derive(Debug, Clone)]
pub struct SplitOutput {
    pub street: PlosCurve,
    pub highway: PlosCurve,
    pub cities: Vec<CityReport>,
}

struct CityTallies {
    street: PlosCurve,
    highway: Option<PlosCurve>,
    report: CityReport,
}

fn accumulate(curve: &mut PlosCurve, cfg: &SimulationConfig, city: &CityModel, abs: &Point3D, ues: &[Point3D]) {
    for ue in ues {
        let theta = elevation_angle_deg(abs, ue);
        let bin = cfg.binning.bin(theta);
        curve.record(bin, is_los(city, abs, ue));
    }
}

/// Simulate one city against an externally supplied model. Streams are
/// those of `city_index`, so feeding city 0 back in reproduces a
/// single-city run with the same master seed.
pub fn run_on_city(cfg: &SimulationConfig, city: &CityModel, city_index: u32) -> Result<SimOutput, SimError> {
    let tallies = simulate_prepared(cfg, city, city_index, false)?;
    Ok(SimOutput {
        curve: finalize(cfg, vec![tallies.street]),
        cities: vec![tallies.report],
    })
}

/// Split variant of [`run_on_city`] for cities with highways.
pub fn run_split_on_city(
    cfg: &SimulationConfig,
    city: &CityModel,
    city_index: u32,
) -> Result<SplitOutput, SimError> {
    if city.highways.is_empty() {
        return Err(SimError::NoHighways);
    }
    let tallies = simulate_prepared(cfg, city, city_index, true)?;
    Ok(SplitOutput {
        street: finalize(cfg, vec![tallies.street]),
        highway: finalize(cfg, vec![tallies.highway.expect("split tallies")]),
        cities: vec![tallies.report],
    })
}

fn simulate_city(cfg: &SimulationConfig, index: u32, split: bool) -> Result<CityTallies, SimError> {
    let city = citygen::generate(
        cfg.layout,
        &cfg.params,
        &cfg.gen,
        &cfg.highways,
        cfg.seed,
        index,
    )
    .map_err(|source| SimError::Generation { city: index, source })?;
    simulate_prepared(cfg, &city, index, split)
}

fn simulate_prepared(
    cfg: &SimulationConfig,
    city: &CityModel,
    index: u32,
    split: bool,
) -> Result<CityTallies, SimError> {
    if split && city.highways.is_empty() {
        return Err(SimError::NoHighways);
    }
    let mut abs_rng = stream_rng(cfg.seed, index, Stream::PlaceAbs);
    let mut ue_rng = stream_rng(cfg.seed, index, Stream::PlaceUe);
    let mut hue_rng = stream_rng(cfg.seed, index, Stream::PlaceHighwayUe);

    let mut street = PlosCurve::new();
    let mut highway = split.then(PlosCurve::new);
    for _ in 0..cfg.abs_repeats {
        let abs = place_abs(city, cfg.h_abs_max, &mut abs_rng).map_err(|e| e.at_city(index))?;
        let ues =
            place_ues(city, cfg.n_ue, cfg.ue_height, &mut ue_rng).map_err(|e| e.at_city(index))?;
        accumulate(&mut street, cfg, city, &abs, &ues);
        if let Some(hw_curve) = highway.as_mut() {
            let hues = place_ues_highway(city, cfg.n_ue, &mut hue_rng)?;
            accumulate(hw_curve, cfg, city, &abs, &hues);
        }
    }
    Ok(CityTallies {
        street,
        highway,
        report: CityReport {
            index,
            achieved_alpha: city.achieved_alpha,
            warnings: city.warnings.clone(),
        },
    })
}

fn finalize(cfg: &SimulationConfig, tallies: Vec<PlosCurve>) -> PlosCurve {
    let mut curve = PlosCurve::with_meta(cfg.meta());
    for t in &tallies {
        curve.merge(t);
    }
    curve
}

fn run_cities(cfg: &SimulationConfig, split: bool) -> Result<Vec<CityTallies>, SimError> {
    cfg.validate()?;
    let results: Vec<Result<CityTallies, SimError>> = (0..cfg.n_cities)
        .into_par_iter()
        .map(|i| simulate_city(cfg, i, split))
        .collect();
    // surface the lowest-indexed failure deterministically
    let mut out = Vec::with_capacity(results.len());
    for res in results {
        out.push(res?);
    }
    Ok(out)
}

/// Run the full estimation and return the street curve.
pub fn run(cfg: &SimulationConfig) -> Result<PlosCurve, SimError> {
    Ok(run_full(cfg)?.curve)
}

/// Run the full estimation, keeping per-city diagnostics.
pub fn run_full(cfg: &SimulationConfig) -> Result<SimOutput, SimError> {
    let tallies = run_cities(cfg, false)?;
    let cities = tallies.iter().map(|t| t.report.clone()).collect();
    Ok(SimOutput {
        curve: finalize(cfg, tallies.into_iter().map(|t| t.street).collect()),
        cities,
    })
}

/// Run the estimation under the `rh` layout twice over the same cities
/// and base stations: once for street users, once for highway users.
pub fn run_rh_split(cfg: &SimulationConfig) -> Result<SplitOutput, SimError> {
    if cfg.layout != Layout::Rh || cfg.highways.is_empty() {
        return Err(SimError::NoHighways);
    }
    let tallies = run_cities(cfg, true)?;
    let cities: Vec<CityReport> = tallies.iter().map(|t| t.report.clone()).collect();
    let mut street = Vec::with_capacity(tallies.len());
    let mut highway = Vec::with_capacity(tallies.len());
    for t in tallies {
        street.push(t.street);
        highway.push(t.highway.expect("split tallies"));
    }
    Ok(SplitOutput {
        street: finalize(cfg, street),
        highway: finalize(cfg, highway),
        cities,
    })
}
