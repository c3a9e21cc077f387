//! Run manifest written alongside every simulated curve: the config
//! echo, tool version, wall-clock duration, per-city achieved built
//! area, and any placement warnings.

use serde::Serialize;

use losim_core::montecarlo::{CityReport, SimulationConfig};

#[derive(Serialize)]
pub struct RunManifest<'a> {
    version: &'static str,
    config_hash: String,
    duration_seconds: f64,
    config: &'a SimulationConfig,
    cities: Vec<CityEntry>,
    warnings: Vec<WarningEntry>,
}

#[derive(Serialize)]
struct CityEntry {
    index: u32,
    achieved_alpha: f64,
}

#[derive(Serialize)]
struct WarningEntry {
    city: u32,
    category: &'static str,
    building: usize,
}

impl<'a> RunManifest<'a> {
    pub fn new(config: &'a SimulationConfig, cities: &[CityReport], duration_seconds: f64) -> Self {
        let mut warnings = Vec::new();
        for city in cities {
            for w in &city.warnings {
                warnings.push(WarningEntry {
                    city: city.index,
                    category: w.kind.name(),
                    building: w.building,
                });
            }
        }
        Self {
            version: env!("CARGO_PKG_VERSION"),
            config_hash: format!("{:016x}", config.config_hash()),
            duration_seconds,
            config,
            cities: cities
                .iter()
                .map(|c| CityEntry {
                    index: c.index,
                    achieved_alpha: c.achieved_alpha,
                })
                .collect(),
            warnings,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use losim_core::{Environment, GenWarning, Layout, WarningKind};

    #[test]
    fn manifest_carries_city_indexed_warnings() {
        let config = SimulationConfig::new(
            Environment::Urban.params(),
            Layout::Ru,
            500.0,
            100,
            2,
            7,
        );
        let cities = vec![
            CityReport {
                index: 0,
                achieved_alpha: 0.29,
                warnings: vec![GenWarning {
                    kind: WarningKind::DroppedBuilding,
                    building: 412,
                }],
            },
            CityReport {
                index: 1,
                achieved_alpha: 0.3,
                warnings: Vec::new(),
            },
        ];
        let json = RunManifest::new(&config, &cities, 1.5).to_json_string();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["warnings"][0]["city"], 0);
        assert_eq!(v["warnings"][0]["category"], "dropped_building");
        assert_eq!(v["warnings"][0]["building"], 412);
        assert_eq!(v["cities"][1]["achieved_alpha"], 0.3);
        assert_eq!(v["config"]["n_ue"], 100);
        assert!(v["config_hash"].as_str().unwrap().len() == 16);
    }
}
