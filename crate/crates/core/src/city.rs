//! City model: axis-aligned building prisms and highway strips on a
//! fixed 1 km × 1 km ground square.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::params::BuiltUpParams;

/// Side length of the city square in metres.
pub const CITY_SIDE: f64 = 1000.0;
/// Ground area of the city square in square metres.
pub const CITY_AREA: f64 = CITY_SIDE * CITY_SIDE;

/// Footprint shape a building was sampled as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Square,
    Rectangle,
}

/// One axis-aligned rectangular building prism.
///
/// `(x, y)` is the lower-left corner of the footprint; all lengths are in
/// metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Building {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub length: f64,
    pub height: f64,
    pub shape: Shape,
}

impl Building {
    /// Footprint area in square metres.
    pub fn area(&self) -> f64 {
        self.width * self.length
    }

    /// Whether the (closed) footprint contains the ground point.
    pub fn contains_xy(&self, x: f64, y: f64) -> bool {
        x >= self.x && x <= self.x + self.width && y >= self.y && y <= self.y + self.length
    }

    /// Area of overlap between two footprints (0 when disjoint).
    pub fn overlap_area(&self, other: &Building) -> f64 {
        let ox = (self.x + self.width).min(other.x + other.width) - self.x.max(other.x);
        let oy = (self.y + self.length).min(other.y + other.length) - self.y.max(other.y);
        if ox > 0.0 && oy > 0.0 {
            ox * oy
        } else {
            0.0
        }
    }
}

/// Orientation of a highway strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// A building-free highway strip.
///
/// The strip starts at the city origin and runs `length` metres along its
/// axis; `offset` is the cross-axis position of its near edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Highway {
    pub axis: Axis,
    pub offset: f64,
    pub width: f64,
    pub length: f64,
}

impl Highway {
    /// Strip extent as `(x0, y0, x1, y1)`.
    pub fn rect(&self) -> (f64, f64, f64, f64) {
        match self.axis {
            Axis::Horizontal => (0.0, self.offset, self.length, self.offset + self.width),
            Axis::Vertical => (self.offset, 0.0, self.offset + self.width, self.length),
        }
    }

    pub fn area(&self) -> f64 {
        self.width * self.length
    }

    pub fn contains_xy(&self, x: f64, y: f64) -> bool {
        let (x0, y0, x1, y1) = self.rect();
        x >= x0 && x <= x1 && y >= y0 && y <= y1
    }

    /// Whether two strips overlap with positive area.
    pub fn overlaps(&self, other: &Highway) -> bool {
        let (ax0, ay0, ax1, ay1) = self.rect();
        let (bx0, by0, bx1, by1) = other.rect();
        ax0 < bx1 && bx0 < ax1 && ay0 < by1 && by0 < ay1
    }

    /// The default highway set: three full-length horizontal strips of
    /// 50 m width with evenly spaced centres.
    pub fn default_preset() -> Vec<Highway> {
        (1..=3)
            .map(|i| Highway {
                axis: Axis::Horizontal,
                offset: CITY_SIDE * i as f64 / 4.0 - 25.0,
                width: 50.0,
                length: CITY_SIDE,
            })
            .collect()
    }
}

/// Which generator produced a city.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    Manhattan,
    /// Random-Manhattan: grid-placed buildings with jittered sizes/shapes.
    Rm,
    /// Random-Urban: Dirichlet areas, random non-overlapping placement.
    Ru,
    /// Random-Highway: Random-Urban plus building-free highway strips.
    Rh,
}

impl Layout {
    pub const ALL: [Layout; 4] = [Layout::Manhattan, Layout::Rm, Layout::Ru, Layout::Rh];

    pub fn name(self) -> &'static str {
        match self {
            Layout::Manhattan => "manhattan",
            Layout::Rm => "rm",
            Layout::Ru => "ru",
            Layout::Rh => "rh",
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "manhattan" => Ok(Layout::Manhattan),
            "rm" => Ok(Layout::Rm),
            "ru" => Ok(Layout::Ru),
            "rh" => Ok(Layout::Rh),
            other => Err(format!(
                "unknown layout `{other}` (expected manhattan, rm, ru or rh)"
            )),
        }
    }
}

/// Category of a non-fatal event during generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    /// No free spot was found for the building; it was left out.
    DroppedBuilding,
    /// The sampled footprint exceeded its grid block and was shrunk.
    ClampedFootprint,
}

impl WarningKind {
    pub fn name(self) -> &'static str {
        match self {
            WarningKind::DroppedBuilding => "dropped_building",
            WarningKind::ClampedFootprint => "clamped_footprint",
        }
    }
}

/// A recorded generation event, by building index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenWarning {
    pub kind: WarningKind,
    pub building: usize,
}

/// A generated city: buildings, optional highways, and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CityModel {
    pub side: f64,
    pub layout: Layout,
    pub params: BuiltUpParams,
    pub seed: u64,
    /// Realized built area over the city area (after drops and clamps).
    pub achieved_alpha: f64,
    pub buildings: Vec<Building>,
    pub highways: Vec<Highway>,
    pub warnings: Vec<GenWarning>,
}

impl CityModel {
    /// Tallest building height, or 0 for an empty city.
    pub fn max_height(&self) -> f64 {
        self.buildings.iter().fold(0.0, |m, b| m.max(b.height))
    }

    /// Whether any building footprint contains the ground point.
    pub fn footprint_contains(&self, x: f64, y: f64) -> bool {
        self.buildings.iter().any(|b| b.contains_xy(x, y))
    }

    /// Serialize to the city interchange JSON document.
    pub fn to_json_string(&self) -> String {
        let doc = CityJson {
            side: self.side,
            layout: self.layout,
            params: self.params,
            seed: self.seed,
            achieved_alpha: self.achieved_alpha,
            buildings: self
                .buildings
                .iter()
                .map(|b| BuildingJson {
                    x: b.x,
                    y: b.y,
                    w: b.width,
                    l: b.length,
                    h: b.height,
                })
                .collect(),
            highways: self.highways.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("city serialization cannot fail")
    }

    /// Parse a city interchange JSON document.
    ///
    /// The shape tag is not part of the interchange format; it is
    /// reconstructed from the footprint proportions.
    pub fn from_json_str(s: &str) -> Result<Self, serde_json::Error> {
        let doc: CityJson = serde_json::from_str(s)?;
        Ok(CityModel {
            side: doc.side,
            layout: doc.layout,
            params: doc.params,
            seed: doc.seed,
            achieved_alpha: doc.achieved_alpha,
            buildings: doc
                .buildings
                .into_iter()
                .map(|b| Building {
                    x: b.x,
                    y: b.y,
                    width: b.w,
                    length: b.l,
                    height: b.h,
                    shape: if (b.w - b.l).abs() < 1e-9 {
                        Shape::Square
                    } else {
                        Shape::Rectangle
                    },
                })
                .collect(),
            highways: doc.highways,
            warnings: Vec::new(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CityJson {
    side: f64,
    layout: Layout,
    params: BuiltUpParams,
    seed: u64,
    achieved_alpha: f64,
    buildings: Vec<BuildingJson>,
    #[serde(default)]
    highways: Vec<Highway>,
}

#[derive(Serialize, Deserialize)]
struct BuildingJson {
    x: f64,
    y: f64,
    w: f64,
    l: f64,
    h: f64,
}
