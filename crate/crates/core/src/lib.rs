//! Core library of the `losim` toolkit.
//!
//! Generates random 1 km² urban layouts from built-up parameters,
//! estimates the probability of line of sight between an aerial base
//! station and ground users by Monte Carlo over exact prism geometry,
//! and fits closed-form sigmoid models to the resulting curves.

pub mod city;
pub mod citygen;
pub mod curve;
pub mod fitting;
pub mod grid;
pub mod los;
pub mod montecarlo;
pub mod params;
pub mod reference;
pub mod rng;

pub use city::{Axis, Building, CityModel, GenWarning, Highway, Layout, Shape, WarningKind, CITY_AREA, CITY_SIDE};
pub use citygen::{AreaCap, GenError, GenOptions, ManhattanGridSpec};
pub use curve::{CurveError, CurveMeta, PlosCurve, BIN_COUNT, CSV_HEADER};
pub use fitting::{
    FitError, FitOptions, FitResult, FittedModel, Metrics, ModelKind, Sig1Params, Sig2Params,
};
pub use los::{Point3D, TIE_EPS};
pub use montecarlo::{
    Binning, CityReport, SimError, SimOutput, SimulationConfig, SplitOutput,
};
pub use params::{BuiltUpParams, Environment};
