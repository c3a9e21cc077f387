//! ITU-style built-up parameters and the four standard environment presets.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The built-up parameter triple describing an urban environment.
///
/// `alpha` is the fraction of land covered by buildings, `beta` the number
/// of buildings per square kilometre, and `gamma` the Rayleigh scale
/// parameter (metres) of the building height distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuiltUpParams {
    pub alpha: f64,
    pub beta: u32,
    pub gamma: f64,
}

impl BuiltUpParams {
    pub fn new(alpha: f64, beta: u32, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// Check the parameter ranges. Error messages name the offending field.
    pub fn validate(&self) -> Result<(), String> {
        if !self.alpha.is_finite() || self.alpha <= 0.0 || self.alpha > 1.0 {
            return Err(format!("alpha must be in (0,1], got {}", self.alpha));
        }
        if self.beta < 1 {
            return Err(format!("beta must be >= 1, got {}", self.beta));
        }
        if !self.gamma.is_finite() || self.gamma <= 0.0 {
            return Err(format!("gamma must be > 0, got {}", self.gamma));
        }
        Ok(())
    }
}

/// The four standard environments with their preset parameter triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Environment {
    Suburban,
    Urban,
    DenseUrban,
    HighRise,
}

impl Environment {
    pub const ALL: [Environment; 4] = [
        Environment::Suburban,
        Environment::Urban,
        Environment::DenseUrban,
        Environment::HighRise,
    ];

    /// The preset built-up parameters for this environment.
    pub fn params(self) -> BuiltUpParams {
        match self {
            Environment::Suburban => BuiltUpParams::new(0.1, 750, 8.0),
            Environment::Urban => BuiltUpParams::new(0.3, 500, 15.0),
            Environment::DenseUrban => BuiltUpParams::new(0.5, 300, 20.0),
            Environment::HighRise => BuiltUpParams::new(0.5, 300, 50.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Environment::Suburban => "suburban",
            Environment::Urban => "urban",
            Environment::DenseUrban => "dense-urban",
            Environment::HighRise => "high-rise",
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Environment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "suburban" => Ok(Environment::Suburban),
            "urban" => Ok(Environment::Urban),
            "dense-urban" | "dense_urban" => Ok(Environment::DenseUrban),
            "high-rise" | "high_rise" | "urban-high-rise" => Ok(Environment::HighRise),
            other => Err(format!(
                "unknown environment `{other}` (expected suburban, urban, dense-urban or high-rise)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_match_standard_table() {
        assert_eq!(
            Environment::Suburban.params(),
            BuiltUpParams::new(0.1, 750, 8.0)
        );
        assert_eq!(
            Environment::Urban.params(),
            BuiltUpParams::new(0.3, 500, 15.0)
        );
        assert_eq!(
            Environment::DenseUrban.params(),
            BuiltUpParams::new(0.5, 300, 20.0)
        );
        assert_eq!(
            Environment::HighRise.params(),
            BuiltUpParams::new(0.5, 300, 50.0)
        );
    }

    #[test]
    fn validation_names_the_field() {
        let err = BuiltUpParams::new(1.2, 500, 15.0).validate().unwrap_err();
        assert!(err.contains("alpha"), "{err}");
        let err = BuiltUpParams::new(0.3, 0, 15.0).validate().unwrap_err();
        assert!(err.contains("beta"), "{err}");
        let err = BuiltUpParams::new(0.3, 500, -1.0).validate().unwrap_err();
        assert!(err.contains("gamma"), "{err}");
        assert!(BuiltUpParams::new(1.0, 1, 0.1).validate().is_ok());
    }

    #[test]
    fn environment_round_trips_names() {
        for env in Environment::ALL {
            assert_eq!(env.name().parse::<Environment>().unwrap(), env);
        }
        assert!("downtown".parse::<Environment>().is_err());
    }
}
