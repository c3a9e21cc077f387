//! Procedural city generation under the four layout algorithms.
//!
//! All four generators share the built-up parameter triple: `alpha` fixes
//! the total built area, `beta` the building count, and `gamma` the
//! Rayleigh scale of the height distribution.
//!
//! * `manhattan` — a regular grid of identical squares.
//! * `rm` — the grid kept, but each building's area, shape and exact size
//!   jittered per block.
//! * `ru` — building areas drawn from a flat Dirichlet distribution and
//!   placed at random collision-free spots on an occupancy grid.
//! * `rh` — `ru` with highway strips excluded from placement.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::city::{
    Building, CityModel, GenWarning, Highway, Layout, Shape, WarningKind, CITY_AREA, CITY_SIDE,
};
use crate::grid::OccupancyGrid;
use crate::params::BuiltUpParams;
use crate::rng::{stream_rng, Stream};

/// Bounded resampling budget for the building-area cap.
const CAP_ATTEMPTS: u32 = 1000;
/// Random anchor attempts before falling back to an exhaustive scan.
const ANCHOR_ATTEMPTS: u32 = 1000;
/// Footprints are clamped to this fraction of their grid block.
const BLOCK_CLAMP: f64 = 0.95;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid built-up parameters: {0}")]
    InvalidParams(String),
    /// `alpha` is too large relative to `beta`: the grid pitch leaves no
    /// room for streets.
    #[error("non-positive street width ({street:.3} m) for alpha={alpha}, beta={beta}")]
    NonPositiveStreet { street: f64, alpha: f64, beta: u32 },
    #[error("building {index} cannot fit its grid block even after clamping")]
    DimensionOverflow { index: usize },
    #[error("area cap of {cap:.0} m^2 not satisfiable within {attempts} attempts")]
    CapUnsatisfiable { cap: f64, attempts: u32 },
    #[error("highway {index} lies outside the city square")]
    HighwayOutOfBounds { index: usize },
    #[error("highways {first} and {second} overlap")]
    HighwayOverlap { first: usize, second: usize },
}

/// Uniform building width and street width of the regular grid layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManhattanGridSpec {
    /// Building width in metres.
    pub building_width: f64,
    /// Street width in metres.
    pub street_width: f64,
    /// Buildings per side of the grid.
    pub blocks_per_side: usize,
}

/// Which total the per-building area cap is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AreaCap {
    /// Cap at a fraction of the full city area (the default, 0.03).
    FractionOfTotal(f64),
    /// Cap at a fraction of the built area `alpha * city area`.
    FractionOfBuildingArea(f64),
    Disabled,
}

impl Default for AreaCap {
    fn default() -> Self {
        AreaCap::FractionOfTotal(0.03)
    }
}

/// Tunable generation knobs with their standard defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenOptions {
    /// Probability that a building is sampled square rather than
    /// rectangular.
    pub square_ratio: f64,
    /// Occupancy grid cells per side for the `ru`/`rh` layouts.
    pub grid_resolution: usize,
    pub area_cap: AreaCap,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self {
            square_ratio: 0.5,
            grid_resolution: 50,
            area_cap: AreaCap::default(),
        }
    }
}

impl GenOptions {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.square_ratio) {
            return Err(format!(
                "square_ratio must be in [0,1], got {}",
                self.square_ratio
            ));
        }
        if self.grid_resolution < 1 {
            return Err("grid_resolution must be >= 1".into());
        }
        match self.area_cap {
            AreaCap::FractionOfTotal(f) | AreaCap::FractionOfBuildingArea(f) if f <= 0.0 => {
                Err(format!("area cap fraction must be > 0, got {f}"))
            }
            _ => Ok(()),
        }
    }
}

/// Uniform building and street widths from the built-up parameters:
/// `W = 1000 * sqrt(alpha / beta)`, `S = 1000 / sqrt(beta) - W`.
pub fn width_and_street(params: &BuiltUpParams) -> Result<ManhattanGridSpec, GenError> {
    params.validate().map_err(GenError::InvalidParams)?;
    let beta = params.beta as f64;
    let building_width = CITY_SIDE * (params.alpha / beta).sqrt();
    let street_width = CITY_SIDE / beta.sqrt() - building_width;
    if street_width <= 0.0 {
        return Err(GenError::NonPositiveStreet {
            street: street_width,
            alpha: params.alpha,
            beta: params.beta,
        });
    }
    let pitch = building_width + street_width;
    Ok(ManhattanGridSpec {
        building_width,
        street_width,
        blocks_per_side: (CITY_SIDE / pitch).floor() as usize,
    })
}

/// Rayleigh quantile function: `h = gamma * sqrt(-2 ln(1 - u))`.
pub fn rayleigh_inv_cdf(gamma: f64, u: f64) -> f64 {
    gamma * (-2.0 * (1.0 - u).ln()).sqrt()
}

/// Draw one building height from the Rayleigh distribution with scale
/// `gamma` by inverse transform sampling.
pub fn sample_height<R: Rng + ?Sized>(gamma: f64, rng: &mut R) -> f64 {
    rayleigh_inv_cdf(gamma, rng.gen::<f64>())
}

/// Jittered per-building area around the average: `B_avg * (0.6 + 0.8 r)`.
fn jittered_area(avg: f64, r: f64) -> f64 {
    avg * (0.6 + 0.8 * r)
}

/// Regular grid of identical square buildings separated by streets,
/// centred in the city square.
pub fn generate_manhattan<R: Rng + ?Sized>(
    params: &BuiltUpParams,
    _opts: &GenOptions,
    rng: &mut R,
) -> Result<CityModel, GenError> {
    let spec = width_and_street(params)?;
    let w = spec.building_width;
    let pitch = w + spec.street_width;
    let k = spec.blocks_per_side;
    // k buildings and k-1 streets per side, equal margins outside
    let span = k as f64 * pitch - spec.street_width;
    let margin = (CITY_SIDE - span) / 2.0;

    let mut buildings = Vec::with_capacity(k * k);
    for iy in 0..k {
        for ix in 0..k {
            buildings.push(Building {
                x: margin + ix as f64 * pitch,
                y: margin + iy as f64 * pitch,
                width: w,
                length: w,
                height: sample_height(params.gamma, rng),
                shape: Shape::Square,
            });
        }
    }
    Ok(finish(Layout::Manhattan, *params, buildings, Vec::new(), Vec::new()))
}

/// Random-Manhattan layout: one building per grid block with jittered
/// area and shape, centred in its block.
pub fn generate_rm<R: Rng + ?Sized>(
    params: &BuiltUpParams,
    opts: &GenOptions,
    rng: &mut R,
) -> Result<CityModel, GenError> {
    params.validate().map_err(GenError::InvalidParams)?;
    opts.validate().map_err(GenError::InvalidParams)?;
    let beta = params.beta as usize;
    let avg_area = params.alpha * CITY_AREA / params.beta as f64;
    let grid_x = (params.beta as f64).sqrt().ceil() as usize;
    let grid_y = (params.beta as f64 / grid_x as f64).ceil() as usize;
    let block_w = CITY_SIDE / grid_x as f64;
    let block_l = CITY_SIDE / grid_y as f64;
    let max_w = BLOCK_CLAMP * block_w;
    let max_l = BLOCK_CLAMP * block_l;

    let mut buildings = Vec::with_capacity(beta);
    let mut warnings = Vec::new();
    for i in 0..beta {
        let ix = i % grid_x;
        let iy = i / grid_x;
        let area = jittered_area(avg_area, rng.gen::<f64>());
        let shape = if rng.gen::<f64>() < opts.square_ratio {
            Shape::Square
        } else {
            Shape::Rectangle
        };
        let (sampled_w, sampled_l) = match shape {
            Shape::Square => {
                let side = area.sqrt();
                (side, side)
            }
            Shape::Rectangle => {
                let w = area.sqrt() * (0.5 + rng.gen::<f64>());
                (w, area / w)
            }
        };

        // Clamp to the block, recovering the area on the other side
        // while it has room.
        let mut w = sampled_w;
        let mut l = sampled_l;
        if w > max_w {
            w = max_w;
            l = area / w;
        }
        if l > max_l {
            l = max_l;
            w = (area / l).min(max_w);
        }
        if w != sampled_w || l != sampled_l {
            warnings.push(GenWarning {
                kind: WarningKind::ClampedFootprint,
                building: i,
            });
        }
        if !(w > 0.0 && l > 0.0 && w <= block_w && l <= block_l) {
            return Err(GenError::DimensionOverflow { index: i });
        }

        buildings.push(Building {
            x: ix as f64 * block_w + (block_w - w) / 2.0,
            y: iy as f64 * block_l + (block_l - l) / 2.0,
            width: w,
            length: l,
            height: sample_height(params.gamma, rng),
            shape,
        });
    }
    Ok(finish(Layout::Rm, *params, buildings, Vec::new(), warnings))
}

/// Draw `count` building areas summing to `total` from a flat Dirichlet
/// distribution (normalized i.i.d. standard exponentials), resampling
/// until every component respects `cap`.
pub fn sample_dirichlet_areas<R: Rng + ?Sized>(
    count: usize,
    total: f64,
    cap: Option<f64>,
    rng: &mut R,
) -> Result<Vec<f64>, GenError> {
    assert!(count >= 1 && total > 0.0);
    for _ in 0..CAP_ATTEMPTS {
        let draws: Vec<f64> = (0..count)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln())
            .collect();
        let sum: f64 = draws.iter().sum();
        if sum <= 0.0 {
            continue;
        }
        let areas: Vec<f64> = draws.into_iter().map(|e| e / sum * total).collect();
        match cap {
            Some(c) if areas.iter().any(|&a| a > c) => continue,
            _ => return Ok(areas),
        }
    }
    Err(GenError::CapUnsatisfiable {
        cap: cap.unwrap_or(f64::INFINITY),
        attempts: CAP_ATTEMPTS,
    })
}

/// Random-Urban layout: Dirichlet areas placed at uniformly random free
/// anchors of the occupancy grid.
pub fn generate_ru<R: Rng + ?Sized>(
    params: &BuiltUpParams,
    opts: &GenOptions,
    rng: &mut R,
) -> Result<CityModel, GenError> {
    let mut grid = OccupancyGrid::new(opts.grid_resolution, CITY_SIDE);
    let (buildings, warnings) = place_random(params, opts, &mut grid, rng)?;
    Ok(finish(Layout::Ru, *params, buildings, Vec::new(), warnings))
}

/// Random-Highway layout: highway strips are blocked off first, then
/// buildings are placed as in the Random-Urban layout.
pub fn generate_rh<R: Rng + ?Sized>(
    params: &BuiltUpParams,
    opts: &GenOptions,
    highways: &[Highway],
    rng: &mut R,
) -> Result<CityModel, GenError> {
    validate_highways(highways)?;
    let mut grid = OccupancyGrid::new(opts.grid_resolution, CITY_SIDE);
    for hw in highways {
        let (x0, y0, x1, y1) = hw.rect();
        grid.mark_rect(x0, y0, x1, y1);
    }
    let (buildings, warnings) = place_random(params, opts, &mut grid, rng)?;
    Ok(finish(
        Layout::Rh,
        *params,
        buildings,
        highways.to_vec(),
        warnings,
    ))
}

/// Check highway strips are inside the city and pairwise disjoint.
pub fn validate_highways(highways: &[Highway]) -> Result<(), GenError> {
    for (i, hw) in highways.iter().enumerate() {
        let (x0, y0, x1, y1) = hw.rect();
        let inside = hw.width > 0.0
            && hw.length > 0.0
            && x0 >= 0.0
            && y0 >= 0.0
            && x1 <= CITY_SIDE
            && y1 <= CITY_SIDE;
        if !inside {
            return Err(GenError::HighwayOutOfBounds { index: i });
        }
        for (j, other) in highways.iter().enumerate().take(i) {
            if hw.overlaps(other) {
                return Err(GenError::HighwayOverlap { first: j, second: i });
            }
        }
    }
    Ok(())
}

/// Shared placement core of the `ru` and `rh` layouts.
fn place_random<R: Rng + ?Sized>(
    params: &BuiltUpParams,
    opts: &GenOptions,
    grid: &mut OccupancyGrid,
    rng: &mut R,
) -> Result<(Vec<Building>, Vec<GenWarning>), GenError> {
    params.validate().map_err(GenError::InvalidParams)?;
    opts.validate().map_err(GenError::InvalidParams)?;
    let building_area = params.alpha * CITY_AREA;
    let cap = match opts.area_cap {
        AreaCap::FractionOfTotal(f) => Some(f * CITY_AREA),
        AreaCap::FractionOfBuildingArea(f) => Some(f * building_area),
        AreaCap::Disabled => None,
    };
    let areas = sample_dirichlet_areas(params.beta as usize, building_area, cap, rng)?;

    let resolution = grid.resolution();
    let cell = grid.cell_size();
    let mut buildings = Vec::with_capacity(areas.len());
    let mut warnings = Vec::new();
    for (i, &area) in areas.iter().enumerate() {
        let shape = if rng.gen::<f64>() < opts.square_ratio {
            Shape::Square
        } else {
            Shape::Rectangle
        };
        let (w, l) = match shape {
            Shape::Square => {
                let side = area.sqrt();
                (side, side)
            }
            Shape::Rectangle => {
                let w = 1.5 * area.sqrt();
                (w, area / w)
            }
        };
        let cw = (w / cell).ceil() as usize;
        let ch = (l / cell).ceil() as usize;

        let anchor = if cw > resolution || ch > resolution {
            None
        } else {
            let mut found = None;
            for _ in 0..ANCHOR_ATTEMPTS {
                let cx = rng.gen_range(0..=resolution - cw);
                let cy = rng.gen_range(0..=resolution - ch);
                if grid.block_free(cx, cy, cw, ch) {
                    found = Some((cx, cy));
                    break;
                }
            }
            found.or_else(|| {
                // Random anchors failed; a free spot may still exist.
                let anchors = grid.free_anchors(cw, ch);
                if anchors.is_empty() {
                    None
                } else {
                    Some(anchors[rng.gen_range(0..anchors.len())])
                }
            })
        };

        match anchor {
            Some((cx, cy)) => {
                grid.mark_block(cx, cy, cw, ch);
                buildings.push(Building {
                    x: cx as f64 * cell,
                    y: cy as f64 * cell,
                    width: w,
                    length: l,
                    height: sample_height(params.gamma, rng),
                    shape,
                });
            }
            None => warnings.push(GenWarning {
                kind: WarningKind::DroppedBuilding,
                building: i,
            }),
        }
    }
    Ok((buildings, warnings))
}

fn finish(
    layout: Layout,
    params: BuiltUpParams,
    buildings: Vec<Building>,
    highways: Vec<Highway>,
    warnings: Vec<GenWarning>,
) -> CityModel {
    let built: f64 = buildings.iter().map(Building::area).sum();
    CityModel {
        side: CITY_SIDE,
        layout,
        params,
        seed: 0,
        achieved_alpha: built / CITY_AREA,
        buildings,
        highways,
        warnings,
    }
}

/// Generate city `city_index` of a run with the given master seed.
///
/// The generator stream is derived from `(master_seed, city_index)`, so a
/// standalone city (index 0) matches city 0 of a multi-city simulation
/// with the same seed. For the `rh` layout an empty highway list is
/// allowed and behaves like `ru`.
pub fn generate(
    layout: Layout,
    params: &BuiltUpParams,
    opts: &GenOptions,
    highways: &[Highway],
    master_seed: u64,
    city_index: u32,
) -> Result<CityModel, GenError> {
    let mut rng = stream_rng(master_seed, city_index, Stream::Generate);
    let mut city = match layout {
        Layout::Manhattan => generate_manhattan(params, opts, &mut rng)?,
        Layout::Rm => generate_rm(params, opts, &mut rng)?,
        Layout::Ru => generate_ru(params, opts, &mut rng)?,
        Layout::Rh => generate_rh(params, opts, highways, &mut rng)?,
    };
    city.seed = master_seed;
    Ok(city)
}
