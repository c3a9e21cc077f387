//! Seeded randomized invariant tests across the library modules.

use losim_core::citygen::{generate, GenOptions};
use losim_core::los::{is_los, Point3D};
use losim_core::montecarlo::{place_abs, place_ues, run, SimulationConfig};
use losim_core::rng::{stream_rng, Stream};
use losim_core::{CityModel, Environment, Highway, Layout, CITY_AREA, CITY_SIDE};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_city(i: u32) -> CityModel {
    let layout = Layout::ALL[(i % 4) as usize];
    let env = Environment::ALL[((i / 4) % 4) as usize];
    let highways = if layout == Layout::Rh {
        Highway::default_preset()
    } else {
        Vec::new()
    };
    generate(
        layout,
        &env.params(),
        &GenOptions::default(),
        &highways,
        7000 + i as u64,
        0,
    )
    .unwrap()
}

#[test]
fn footprints_and_highways_stay_inside_the_square() {
    for i in 0..32 {
        let city = random_city(i);
        for b in &city.buildings {
            assert!(b.x >= -1e-9 && b.x + b.width <= CITY_SIDE + 1e-9);
            assert!(b.y >= -1e-9 && b.y + b.length <= CITY_SIDE + 1e-9);
            assert!(b.width > 0.0 && b.length > 0.0 && b.height >= 0.0);
        }
        for hw in &city.highways {
            let (x0, y0, x1, y1) = hw.rect();
            assert!(x0 >= 0.0 && y0 >= 0.0 && x1 <= CITY_SIDE && y1 <= CITY_SIDE);
        }
    }
}

#[test]
fn generation_is_bit_identical_per_seed() {
    for i in 0..8 {
        let a = random_city(i);
        let b = random_city(i);
        assert_eq!(a, b);
    }
}

/// The LoS verdict must not depend on which endpoint is called the base
/// station: the segment is the same set of points either way.
#[test]
fn los_is_direction_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for i in 0..24 {
        let city = random_city(i);
        for _ in 0..60 {
            let p = Point3D::new(
                rng.gen::<f64>() * CITY_SIDE,
                rng.gen::<f64>() * CITY_SIDE,
                rng.gen::<f64>() * 500.0,
            );
            let q = Point3D::new(
                rng.gen::<f64>() * CITY_SIDE,
                rng.gen::<f64>() * CITY_SIDE,
                rng.gen::<f64>() * p.z,
            );
            assert_eq!(is_los(&city, &p, &q), is_los(&city, &q, &p));
        }
    }
}

/// Raising the base station never turns a clear link into a blocked one
/// (for links descending towards the user).
#[test]
fn los_is_monotone_in_abs_height() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for i in 0..24 {
        let city = random_city(i);
        let mut abs_rng = stream_rng(8000 + i as u64, 0, Stream::PlaceAbs);
        let mut ue_rng = stream_rng(8000 + i as u64, 0, Stream::PlaceUe);
        for _ in 0..40 {
            let abs = place_abs(&city, 500.0, &mut abs_rng).unwrap();
            let ue = &place_ues(&city, 1, 0.0, &mut ue_rng).unwrap()[0];
            if is_los(&city, &abs, ue) {
                let lift = rng.gen::<f64>() * 300.0;
                let raised = Point3D::new(abs.x, abs.y, abs.z + lift);
                assert!(
                    is_los(&city, &raised, ue),
                    "raising the base station blocked a clear link (lift {lift:.1})"
                );
            }
        }
    }
}

/// The jitter factor has unit mean, so the realized built area matches
/// the requested fraction on average.
#[test]
fn rm_area_law_over_100_seeds() {
    let params = Environment::Urban.params();
    let opts = GenOptions::default();
    let mut total = 0.0;
    for seed in 0..100u64 {
        let city = generate(Layout::Rm, &params, &opts, &[], seed, 0).unwrap();
        total += city.achieved_alpha * CITY_AREA;
    }
    let mean = total / 100.0;
    let expected = params.alpha * CITY_AREA;
    assert!(
        (mean - expected).abs() / expected < 0.02,
        "mean built area {mean:.0} vs expected {expected:.0}"
    );
}

/// Empirical first-draw rejection of uniform ground points equals the
/// covered-area fraction.
#[test]
fn ue_rejection_rate_matches_covered_area() {
    let city = generate(
        Layout::Ru,
        &Environment::Urban.params(),
        &GenOptions::default(),
        &[],
        11,
        0,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 100_000;
    let inside = (0..n)
        .filter(|_| {
            city.footprint_contains(rng.gen::<f64>() * CITY_SIDE, rng.gen::<f64>() * CITY_SIDE)
        })
        .count();
    let frac = inside as f64 / n as f64;
    assert!(
        (frac - city.achieved_alpha).abs() < 0.01,
        "covered fraction {frac:.4} vs achieved alpha {:.4}",
        city.achieved_alpha
    );
}

/// First-draw acceptance of the base station matches a quadrature
/// estimate of the collision probability: covered area times the chance
/// that a uniform altitude falls below a Rayleigh roof.
#[test]
fn abs_acceptance_matches_quadrature() {
    let params = Environment::Urban.params();
    let city = generate(Layout::Rm, &params, &GenOptions::default(), &[], 13, 0).unwrap();
    let h_max = 500.0;

    // Simpson quadrature of f(h) * min(h / h_max, 1) for the Rayleigh pdf
    let gamma = params.gamma;
    let pdf = |h: f64| h / (gamma * gamma) * (-h * h / (2.0 * gamma * gamma)).exp();
    let f = |h: f64| pdf(h) * (h / h_max).min(1.0);
    let steps = 20_000;
    let dh = 5.0 * h_max / steps as f64;
    let mut integral = f(0.0) + f(5.0 * h_max);
    for k in 1..steps {
        integral += f(k as f64 * dh) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    integral *= dh / 3.0;
    let expected_accept = 1.0 - city.achieved_alpha * integral;

    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let n = 10_000;
    let accepted = (0..n)
        .filter(|_| {
            let x = rng.gen::<f64>() * CITY_SIDE;
            let y = rng.gen::<f64>() * CITY_SIDE;
            let z = rng.gen::<f64>() * h_max;
            !city
                .buildings
                .iter()
                .any(|b| z < b.height && b.contains_xy(x, y))
        })
        .count();
    let rate = accepted as f64 / n as f64;
    assert!(
        (rate - expected_accept).abs() < 0.02,
        "acceptance {rate:.4} vs quadrature {expected_accept:.4}"
    );
}

/// Near-zenith links are almost always clear; the bin-90 estimate stays
/// at 1 whenever the run populates it.
#[test]
fn zenith_bin_is_clear_at_all_presets() {
    for (k, env) in Environment::ALL.into_iter().enumerate() {
        let cfg = SimulationConfig::new(env.params(), Layout::Rm, 500.0, 5000, 40, 50 + k as u64);
        let curve = run(&cfg).unwrap();
        if let Some(p) = curve.plos(90) {
            assert!(p >= 0.98, "{env}: plos[90] = {p} with {} samples", curve.los_count[90]);
        }
        // the completeness law holds regardless
        assert_eq!(curve.total_count(), 200_000);
    }
}
