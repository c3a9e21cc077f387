//! Shared fixtures for the criterion benchmarks.

use losim_core::citygen::{generate, GenOptions};
use losim_core::montecarlo::{place_abs, place_ues};
use losim_core::rng::{stream_rng, Stream};
use losim_core::{CityModel, Environment, Highway, Layout, Point3D};

/// A generated city for the given layout at the urban preset.
pub fn urban_city(layout: Layout, seed: u64) -> CityModel {
    let highways = if layout == Layout::Rh {
        Highway::default_preset()
    } else {
        Vec::new()
    };
    generate(
        layout,
        &Environment::Urban.params(),
        &GenOptions::default(),
        &highways,
        seed,
        0,
    )
    .expect("fixture city generates")
}

/// A batch of collision-free links over the city.
pub fn link_batch(city: &CityModel, n: u32, seed: u64) -> Vec<(Point3D, Point3D)> {
    let mut abs_rng = stream_rng(seed, 0, Stream::PlaceAbs);
    let mut ue_rng = stream_rng(seed, 0, Stream::PlaceUe);
    let abs = place_abs(city, 500.0, &mut abs_rng).expect("fixture abs places");
    place_ues(city, n, 0.0, &mut ue_rng)
        .expect("fixture ues place")
        .into_iter()
        .map(|ue| (abs, ue))
        .collect()
}
