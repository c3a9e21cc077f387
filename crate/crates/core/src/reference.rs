//! Bundled reference S-curve coefficients (the `table2` dataset).
//!
//! One row per random layout and standard environment, for both model
//! families, fitted on 40-city x 5000-user reference runs. The regular
//! `manhattan` layout has no reference rows.

use crate::city::Layout;
use crate::curve::PlosCurve;
use crate::fitting::{sig1_eval, sig2_eval, ModelKind, Sig1Params, Sig2Params};
use crate::params::Environment;

/// Reference coefficients for one (layout, environment) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceEntry {
    pub layout: Layout,
    pub env: Environment,
    pub sig1: Sig1Params,
    pub sig2: Sig2Params,
}

const fn entry(
    layout: Layout,
    env: Environment,
    a: f64,
    b: f64,
    x1: f64,
    x2: f64,
    x3: f64,
    x4: f64,
) -> ReferenceEntry {
    ReferenceEntry {
        layout,
        env,
        sig1: Sig1Params { a, b },
        sig2: Sig2Params { x1, x2, x3, x4 },
    }
}

/// The full coefficient table: 3 layouts x 4 environments x 2 models.
#[rustfmt::skip]
pub const REFERENCE_TABLE: [ReferenceEntry; 12] = [
    entry(Layout::Rm, Environment::Suburban,   3.44, 0.108,  -9.31,  20.71,  -16.64,  2.78),
    entry(Layout::Rm, Environment::Urban,      6.55, 0.069,  -4.933, 12.4,   -12.83,  4.049),
    entry(Layout::Rm, Environment::DenseUrban, 9.67, 0.064,  -4.253, 11.13,  -12.37,  4.827),
    entry(Layout::Rm, Environment::HighRise,  19.8,  0.067, -13.16,  37.89,  -37.91, 13.73),
    entry(Layout::Ru, Environment::Suburban,   2.96, 0.117, -16.54,  30.55,  -19.85,  2.668),
    entry(Layout::Ru, Environment::Urban,      4.42, 0.056,  -6.686, 16.24,  -14.42,  3.726),
    entry(Layout::Ru, Environment::DenseUrban, 7.06, 0.056,  -2.772,  8.748, -11.10,  4.276),
    entry(Layout::Ru, Environment::HighRise,  18.4,  0.071,  -6.721, 18.93,  -20.69,  8.675),
    entry(Layout::Rh, Environment::Suburban,   2.99, 0.124, -11.49,  23.93,  -17.67,  2.468),
    entry(Layout::Rh, Environment::Urban,      4.72, 0.068,  -7.536, 17.33,  -15.02,  3.709),
    entry(Layout::Rh, Environment::DenseUrban, 5.30, 0.063,  -5.589, 14.63,  -14.35,  4.083),
    entry(Layout::Rh, Environment::HighRise,   9.24, 0.048,  -7.308, 21.05,  -21.34,  7.568),
];

/// Look up the reference coefficients for a layout/environment pair.
pub fn reference_entry(layout: Layout, env: Environment) -> Option<&'static ReferenceEntry> {
    REFERENCE_TABLE
        .iter()
        .find(|e| e.layout == layout && e.env == env)
}

/// Sample a reference model as a 91-bin curve (unit counts) for
/// downstream comparison.
pub fn reference_curve(layout: Layout, env: Environment, model: ModelKind) -> Option<PlosCurve> {
    let entry = reference_entry(layout, env)?;
    Some(match model {
        ModelKind::Sig1 => PlosCurve::from_model(|deg| sig1_eval(&entry.sig1, deg)),
        ModelKind::Sig2 => PlosCurve::from_model(|deg| sig2_eval(&entry.sig2, deg.to_radians())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_covers_all_random_layout_environments() {
        for layout in [Layout::Rm, Layout::Ru, Layout::Rh] {
            for env in Environment::ALL {
                assert!(reference_entry(layout, env).is_some(), "{layout} {env}");
            }
        }
        assert!(reference_entry(Layout::Manhattan, Environment::Urban).is_none());
    }

    #[test]
    fn spot_check_rm_urban_row() {
        let e = reference_entry(Layout::Rm, Environment::Urban).unwrap();
        assert_eq!(e.sig1, Sig1Params { a: 6.55, b: 0.069 });
        assert_eq!(
            e.sig2,
            Sig2Params {
                x1: -4.933,
                x2: 12.4,
                x3: -12.83,
                x4: 4.049
            }
        );
    }

    #[test]
    fn reference_curves_stay_in_open_unit_interval() {
        for e in &REFERENCE_TABLE {
            for model in [ModelKind::Sig1, ModelKind::Sig2] {
                let curve = reference_curve(e.layout, e.env, model).unwrap();
                for t in 0..=90 {
                    let p = curve.plos(t).unwrap();
                    assert!(p > 0.0 && p < 1.0, "{} {} {t}", e.layout, e.env);
                }
            }
        }
    }

    #[test]
    fn rm_urban_sig2_terminal_value() {
        let curve = reference_curve(Layout::Rm, Environment::Urban, ModelKind::Sig2).unwrap();
        assert!((curve.plos(90).unwrap() - 0.9903).abs() < 1e-3);
        let sig1 = reference_curve(Layout::Rm, Environment::Urban, ModelKind::Sig1).unwrap();
        // theta = a identity: 1 / (1 + a)
        assert!((sig1.plos(7).unwrap() - 0.136).abs() < 0.01);
    }
}
