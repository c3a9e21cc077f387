//! Exact line-of-sight test between two 3-D points over a city of
//! flat-roofed rectangular prisms.
//!
//! The 2-D ground segment is intersected with every footprint (slab
//! test against the open rectangle, so edge or corner grazing does not
//! count). The sight line's height is affine in ground distance, so over
//! a flat roof its minimum is attained at the entry or exit of the
//! crossing interval: the link is blocked iff that minimum fails to
//! clear the building height.

use thiserror::Error;

use crate::city::{Building, CityModel};

/// Blocked/clear ties within this margin (metres) resolve as blocked.
pub const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LosError {
    /// The two endpoints share a ground projection; there is no path to
    /// parametrize. Callers treat such links as unobstructed.
    #[error("degenerate link: zero horizontal distance")]
    DegenerateLink,
}

/// A point in city coordinates: `x`, `y` in metres on the ground plane,
/// `z` metres above it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3D {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Horizontal (ground-plane) distance to another point.
    pub fn ground_distance(&self, other: &Point3D) -> f64 {
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// One building crossed by the ground segment.
///
/// `enter` and `exit` are distances in metres from the aerial endpoint's
/// ground projection to where the segment enters and leaves the
/// footprint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathObstruction {
    pub building: usize,
    pub enter: f64,
    pub exit: f64,
}

/// Height of the sight line `r_i` metres from the aerial endpoint:
/// `h_abs - r_i * (h_abs - h_ue) / r`.
pub fn obstruction_height(h_abs: f64, h_ue: f64, r: f64, r_i: f64) -> Result<f64, LosError> {
    if r <= 0.0 {
        return Err(LosError::DegenerateLink);
    }
    Ok(line_height(h_abs, h_ue, r, r_i))
}

#[inline]
fn line_height(h_abs: f64, h_ue: f64, r: f64, r_i: f64) -> f64 {
    h_abs - r_i * (h_abs - h_ue) / r
}

/// Parameter interval in `(0, 1)` where the segment `p + t*d` crosses the
/// building's open footprint, or `None` if it misses (or merely grazes) it.
#[inline]
fn crossing_interval(px: f64, py: f64, dx: f64, dy: f64, b: &Building) -> Option<(f64, f64)> {
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for (p, d, lo, hi) in [
        (px, dx, b.x, b.x + b.width),
        (py, dy, b.y, b.y + b.length),
    ] {
        if d == 0.0 {
            // running parallel to this slab: must be strictly inside it
            if p <= lo || p >= hi {
                return None;
            }
        } else {
            let ta = (lo - p) / d;
            let tb = (hi - p) / d;
            let (ta, tb) = if ta <= tb { (ta, tb) } else { (tb, ta) };
            t0 = t0.max(ta);
            t1 = t1.min(tb);
            if t0 >= t1 {
                return None;
            }
        }
    }
    Some((t0, t1))
}

/// All buildings whose footprint the open ground segment crosses,
/// with crossing distances measured from the aerial endpoint.
pub fn buildings_on_path(city: &CityModel, abs: &Point3D, ue: &Point3D) -> Vec<PathObstruction> {
    let dx = ue.x - abs.x;
    let dy = ue.y - abs.y;
    let r = (dx * dx + dy * dy).sqrt();
    let mut out = Vec::new();
    if r <= 0.0 {
        return out;
    }
    for (index, b) in city.buildings.iter().enumerate() {
        if let Some((t0, t1)) = crossing_interval(abs.x, abs.y, dx, dy, b) {
            out.push(PathObstruction {
                building: index,
                enter: t0 * r,
                exit: t1 * r,
            });
        }
    }
    out
}

/// Whether the straight segment between `abs` and `ue` clears every
/// building. A link with zero horizontal distance is always clear.
pub fn is_los(city: &CityModel, abs: &Point3D, ue: &Point3D) -> bool {
    let dx = ue.x - abs.x;
    let dy = ue.y - abs.y;
    let r = (dx * dx + dy * dy).sqrt();
    if r <= 0.0 {
        return true;
    }
    for b in &city.buildings {
        if let Some((t0, t1)) = crossing_interval(abs.x, abs.y, dx, dy, b) {
            let h_enter = line_height(abs.z, ue.z, r, t0 * r);
            let h_exit = line_height(abs.z, ue.z, r, t1 * r);
            if h_enter.min(h_exit) <= b.height + TIE_EPS {
                return false;
            }
        }
    }
    true
}

/// Elevation angle in degrees of the `ue -> abs` direction above the
/// horizontal plane; 90 when the points are vertically aligned.
pub fn elevation_angle_deg(abs: &Point3D, ue: &Point3D) -> f64 {
    let dx = abs.x - ue.x;
    let dy = abs.y - ue.y;
    let r = (dx * dx + dy * dy).sqrt();
    if r <= 0.0 {
        return 90.0;
    }
    (abs.z - ue.z).atan2(r).to_degrees()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::city::{Building, Layout, Shape, CITY_SIDE};
    use crate::params::BuiltUpParams;

    fn city_with(buildings: Vec<Building>) -> CityModel {
        CityModel {
            side: CITY_SIDE,
            layout: Layout::Ru,
            params: BuiltUpParams::new(0.3, buildings.len().max(1) as u32, 15.0),
            seed: 0,
            achieved_alpha: 0.0,
            buildings,
            highways: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn block(x: f64, y: f64, w: f64, l: f64, h: f64) -> Building {
        Building {
            x,
            y,
            width: w,
            length: l,
            height: h,
            shape: Shape::Rectangle,
        }
    }

    #[test]
    fn obstruction_height_reference_case() {
        assert!((obstruction_height(100.0, 0.0, 200.0, 50.0).unwrap() - 75.0).abs() < 1e-12);
        // endpoints reproduce the two terminal heights exactly
        assert_eq!(obstruction_height(100.0, 7.0, 200.0, 0.0).unwrap(), 100.0);
        assert_eq!(obstruction_height(100.0, 7.0, 200.0, 200.0).unwrap(), 7.0);
        assert_eq!(
            obstruction_height(100.0, 0.0, 0.0, 0.0),
            Err(LosError::DegenerateLink)
        );
    }

    #[test]
    fn path_reports_crossing_span() {
        // 20 x 20 building centred on the segment y = 5
        let city = city_with(vec![block(90.0, -0.0, 20.0, 20.0, 30.0)]);
        let abs = Point3D::new(0.0, 5.0, 100.0);
        let ue = Point3D::new(200.0, 5.0, 0.0);
        let obs = buildings_on_path(&city, &abs, &ue);
        assert_eq!(obs.len(), 1);
        assert!((obs[0].enter - 90.0).abs() < 1e-9);
        assert!((obs[0].exit - 110.0).abs() < 1e-9);
        assert!(((obs[0].exit - obs[0].enter) - 20.0).abs() < 1e-9);
    }

    #[test]
    fn empty_when_segment_misses_everything() {
        let city = city_with(vec![block(500.0, 500.0, 20.0, 20.0, 30.0)]);
        let abs = Point3D::new(0.0, 0.0, 100.0);
        let ue = Point3D::new(100.0, 0.0, 0.0);
        assert!(buildings_on_path(&city, &abs, &ue).is_empty());
    }

    #[test]
    fn zero_length_segment_crosses_nothing() {
        let city = city_with(vec![block(0.0, 0.0, 50.0, 50.0, 30.0)]);
        let p = Point3D::new(25.0, 25.0, 80.0);
        let q = Point3D::new(25.0, 25.0, 0.0);
        assert!(buildings_on_path(&city, &p, &q).is_empty());
        assert!(is_los(&city, &p, &q));
    }

    #[test]
    fn grazing_edge_does_not_block() {
        let city = city_with(vec![block(100.0, 0.0, 20.0, 20.0, 500.0)]);
        // runs exactly along the footprint's y = 20 edge
        let abs = Point3D::new(0.0, 20.0, 100.0);
        let ue = Point3D::new(300.0, 20.0, 0.0);
        assert!(buildings_on_path(&city, &abs, &ue).is_empty());
        assert!(is_los(&city, &abs, &ue));
        // touching only the (100, 20) corner does not block either
        let corner_abs = Point3D::new(60.0, -20.0, 100.0);
        let corner_ue = Point3D::new(140.0, 60.0, 0.0);
        assert!(buildings_on_path(&city, &corner_abs, &corner_ue).is_empty());
    }

    #[test]
    fn clearance_depends_on_roof_height() {
        // line height 75 m at entry (r=50), 60 m at exit (r=80)
        let mk = |h: f64| city_with(vec![block(50.0, 0.0, 30.0, 10.0, h)]);
        let abs = Point3D::new(0.0, 5.0, 100.0);
        let ue = Point3D::new(200.0, 5.0, 0.0);
        assert!(is_los(&mk(50.0), &abs, &ue));
        assert!(!is_los(&mk(65.0), &abs, &ue));
        // an exact tie resolves as blocked
        assert!(!is_los(&mk(60.0), &abs, &ue));
    }

    #[test]
    fn vacuously_clear_without_buildings() {
        let city = city_with(Vec::new());
        let abs = Point3D::new(10.0, 10.0, 50.0);
        let ue = Point3D::new(900.0, 900.0, 0.0);
        assert!(is_los(&city, &abs, &ue));
    }

    #[test]
    fn elevation_angle_reference_values() {
        let ue = Point3D::new(0.0, 0.0, 0.0);
        assert_eq!(
            elevation_angle_deg(&Point3D::new(100.0, 0.0, 0.0), &ue),
            0.0
        );
        assert!((elevation_angle_deg(&Point3D::new(100.0, 0.0, 100.0), &ue) - 45.0).abs() < 1e-12);
        assert!(
            (elevation_angle_deg(&Point3D::new(173.205, 0.0, 100.0), &ue) - 30.0).abs() < 1e-3
        );
        assert_eq!(
            elevation_angle_deg(&Point3D::new(0.0, 0.0, 100.0), &ue),
            90.0
        );
    }
}
