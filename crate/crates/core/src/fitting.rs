//! The two empirical sigmoid P_LoS models, least-squares fitting, and
//! curve comparison metrics.
//!
//! `Sig1` is a logistic in the elevation angle in degrees with two
//! parameters; `Sig2` is a logistic of a cubic in the angle in
//! **radians** with four. The fitting layer converts degrees to radians
//! exactly once, at the point where bins are collected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::PlosCurve;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("insufficient data: {eligible} eligible bins, need at least {needed}")]
    InsufficientData { eligible: usize, needed: usize },
    #[error("curves share no populated bins on the requested range")]
    EmptySupport,
}

/// Parameters of the two-coefficient logistic model
/// `P(theta_deg) = 1 / (1 + a * exp(-b * (theta_deg - a)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sig1Params {
    pub a: f64,
    pub b: f64,
}

/// Coefficients of the cubic-logistic model
/// `P(theta_rad) = 1 / (1 + exp(x1 t^3 + x2 t^2 + x3 t + x4))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sig2Params {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

pub fn sig1_eval(p: &Sig1Params, theta_deg: f64) -> f64 {
    1.0 / (1.0 + p.a * (-p.b * (theta_deg - p.a)).exp())
}

pub fn sig2_eval(p: &Sig2Params, theta_rad: f64) -> f64 {
    let t = theta_rad;
    let c = ((p.x1 * t + p.x2) * t + p.x3) * t + p.x4;
    1.0 / (1.0 + c.exp())
}

/// Which model family a fit used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Sig1,
    Sig2,
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sig1" => Ok(ModelKind::Sig1),
            "sig2" => Ok(ModelKind::Sig2),
            other => Err(format!("unknown model `{other}` (expected sig1 or sig2)")),
        }
    }
}

/// A fitted model with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "lowercase")]
pub enum FittedModel {
    Sig1(Sig1Params),
    Sig2(Sig2Params),
}

impl FittedModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            FittedModel::Sig1(_) => ModelKind::Sig1,
            FittedModel::Sig2(_) => ModelKind::Sig2,
        }
    }

    /// Evaluate the model at an elevation angle given in degrees,
    /// converting for the radian-based family here and nowhere else.
    pub fn eval_deg(&self, theta_deg: f64) -> f64 {
        match self {
            FittedModel::Sig1(p) => sig1_eval(p, theta_deg),
            FittedModel::Sig2(p) => sig2_eval(p, theta_deg.to_radians()),
        }
    }
}

/// Outcome of a least-squares fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitResult {
    #[serde(flatten)]
    pub model: FittedModel,
    /// Root-mean-square residual over the fitted bins.
    pub rmse: f64,
    /// Integer degrees of the bins used.
    pub support: Vec<u32>,
    /// False when the iteration budget ran out before the tolerance.
    pub converged: bool,
}

impl FitResult {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("fit serialization cannot fail")
    }
}

/// Fitting knobs with the standard defaults.
#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    /// Bins below this count are excluded from the fit.
    pub min_count: u32,
    /// Minimum number of eligible bins.
    pub min_bins: usize,
    pub max_iter: usize,
    /// Stop when the relative RMSE improvement drops below this.
    pub rel_tol: f64,
    /// Probabilities are clamped into `[clamp, 1-clamp]` before the
    /// logit transform.
    pub logit_clamp: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            min_count: 30,
            min_bins: 5,
            max_iter: 500,
            rel_tol: 1e-9,
            logit_clamp: 1e-4,
        }
    }
}

impl FitOptions {
    pub fn with_min_count(min_count: u32) -> Self {
        Self {
            min_count,
            ..Self::default()
        }
    }
}

fn eligible_points(curve: &PlosCurve, opts: &FitOptions) -> Result<Vec<(u32, f64)>, FitError> {
    let bins = curve.eligible_bins(opts.min_count as u64, 0, 90);
    if bins.len() < opts.min_bins {
        return Err(FitError::InsufficientData {
            eligible: bins.len(),
            needed: opts.min_bins,
        });
    }
    Ok(bins
        .into_iter()
        .map(|t| (t as u32, curve.plos(t).expect("eligible bin")))
        .collect())
}

fn sse_of<F: Fn(f64) -> f64>(eval: F, pts: &[(f64, f64)]) -> f64 {
    pts.iter()
        .map(|&(t, p)| {
            let e = eval(t) - p;
            e * e
        })
        .sum()
}

/// Solve a small dense linear system by Gaussian elimination with
/// partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for (coeff, solved) in a[col][col + 1..].iter().zip(&x[col + 1..]) {
            acc -= coeff * solved;
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Linear least-squares fit of the cubic to the log-odds of the clamped
/// probabilities. Exact on noise-free model output away from the clamp.
fn sig2_logit_init(pts: &[(f64, f64)], clamp: f64) -> Sig2Params {
    let mut ata = vec![vec![0.0; 4]; 4];
    let mut atb = vec![0.0; 4];
    for &(t, p) in pts {
        let p = p.clamp(clamp, 1.0 - clamp);
        // P = 1/(1+e^c)  =>  c = ln((1-P)/P)
        let y = ((1.0 - p) / p).ln();
        let phi = [t * t * t, t * t, t, 1.0];
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] += phi[i] * phi[j];
            }
            atb[i] += phi[i] * y;
        }
    }
    match solve_linear(ata, atb) {
        Some(c) => Sig2Params {
            x1: c[0],
            x2: c[1],
            x3: c[2],
            x4: c[3],
        },
        None => Sig2Params {
            x1: 0.0,
            x2: 0.0,
            x3: 0.0,
            x4: 0.0,
        },
    }
}

/// Damped Gauss-Newton refinement on the untransformed residuals.
/// Only improving steps are accepted, so the reported RMSE never
/// exceeds the initialization's.
fn sig2_refine(init: Sig2Params, pts: &[(f64, f64)], opts: &FitOptions) -> (Sig2Params, f64, bool) {
    let n = pts.len() as f64;
    let mut params = init;
    let mut sse = sse_of(|t| sig2_eval(&params, t), pts);
    let mut lambda = 1e-3;
    let mut converged = false;

    for _ in 0..opts.max_iter {
        if sse == 0.0 {
            converged = true;
            break;
        }
        let mut jtj = [[0.0f64; 4]; 4];
        let mut jtr = [0.0f64; 4];
        for &(t, p_obs) in pts {
            let p = sig2_eval(&params, t);
            let slope = -p * (1.0 - p);
            let grad = [slope * t * t * t, slope * t * t, slope * t, slope];
            let residual = p - p_obs;
            for i in 0..4 {
                for j in 0..4 {
                    jtj[i][j] += grad[i] * grad[j];
                }
                jtr[i] += grad[i] * residual;
            }
        }
        let mut a = vec![vec![0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                a[i][j] = jtj[i][j];
            }
            a[i][i] += lambda * jtj[i][i].max(1e-12);
        }
        let rhs: Vec<f64> = jtr.iter().map(|g| -g).collect();
        let Some(delta) = solve_linear(a, rhs) else {
            lambda *= 10.0;
            continue;
        };
        let trial = Sig2Params {
            x1: params.x1 + delta[0],
            x2: params.x2 + delta[1],
            x3: params.x3 + delta[2],
            x4: params.x4 + delta[3],
        };
        let trial_sse = sse_of(|t| sig2_eval(&trial, t), pts);
        if trial_sse < sse {
            let improvement = (sse / n).sqrt() - (trial_sse / n).sqrt();
            let scale = (sse / n).sqrt();
            params = trial;
            sse = trial_sse;
            lambda = (lambda * 0.1).max(1e-12);
            if improvement <= opts.rel_tol * scale {
                converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if lambda > 1e14 {
                // no usable step left; treat as converged
                converged = true;
                break;
            }
        }
    }
    (params, (sse / n).sqrt(), converged)
}

/// Fit the cubic-logistic model to a curve's eligible bins.
pub fn fit_sig2(curve: &PlosCurve, opts: &FitOptions) -> Result<FitResult, FitError> {
    let bins = eligible_points(curve, opts)?;
    let support: Vec<u32> = bins.iter().map(|&(t, _)| t).collect();
    let pts: Vec<(f64, f64)> = bins
        .iter()
        .map(|&(t, p)| ((t as f64).to_radians(), p))
        .collect();
    let init = sig2_logit_init(&pts, opts.logit_clamp);
    let (params, rmse, converged) = sig2_refine(init, &pts, opts);
    Ok(FitResult {
        model: FittedModel::Sig2(params),
        rmse,
        support,
        converged,
    })
}

/// Standard Nelder-Mead on a 2-D objective; returns the best vertex.
fn nelder_mead_2d<F: Fn([f64; 2]) -> f64>(
    f: F,
    start: [f64; 2],
    step: f64,
    max_iter: usize,
    rel_tol: f64,
) -> ([f64; 2], f64) {
    let mut simplex = [
        (start, f(start)),
        ([start[0] + step, start[1]], f([start[0] + step, start[1]])),
        ([start[0], start[1] + step], f([start[0], start[1] + step])),
    ];
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0], simplex[2]);
        if (worst.1 - best.1).abs() <= rel_tol * best.1.abs().max(1e-30) {
            break;
        }
        let centroid = [
            (simplex[0].0[0] + simplex[1].0[0]) / 2.0,
            (simplex[0].0[1] + simplex[1].0[1]) / 2.0,
        ];
        let dir = [centroid[0] - worst.0[0], centroid[1] - worst.0[1]];
        let at = |s: f64| [centroid[0] + s * dir[0], centroid[1] + s * dir[1]];

        let reflected = at(1.0);
        let fr = f(reflected);
        if fr < best.1 {
            let expanded = at(2.0);
            let fe = f(expanded);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 { at(0.5) } else { at(-0.5) };
            let fc = f(contracted);
            if fc < worst.1.min(fr) {
                simplex[2] = (contracted, fc);
            } else {
                // shrink towards the best vertex
                for vertex in simplex.iter_mut().skip(1) {
                    let p = [
                        best.0[0] + 0.5 * (vertex.0[0] - best.0[0]),
                        best.0[1] + 0.5 * (vertex.0[1] - best.0[1]),
                    ];
                    *vertex = (p, f(p));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

/// Fit the two-parameter logistic model: coarse logarithmic grid search
/// followed by Nelder-Mead in log-parameter space.
pub fn fit_sig1(curve: &PlosCurve, opts: &FitOptions) -> Result<FitResult, FitError> {
    let bins = eligible_points(curve, opts)?;
    let support: Vec<u32> = bins.iter().map(|&(t, _)| t).collect();
    let pts: Vec<(f64, f64)> = bins.iter().map(|&(t, p)| (t as f64, p)).collect();

    let sse_at = |ln_a: f64, ln_b: f64| {
        let p = Sig1Params {
            a: ln_a.exp(),
            b: ln_b.exp(),
        };
        sse_of(|t| sig1_eval(&p, t), &pts)
    };

    const GRID: usize = 48;
    let (a_lo, a_hi) = (0.5f64.ln(), 50f64.ln());
    let (b_lo, b_hi) = (0.005f64.ln(), 0.5f64.ln());
    let mut best = ([0.0, 0.0], f64::INFINITY);
    for i in 0..GRID {
        let ln_a = a_lo + (a_hi - a_lo) * i as f64 / (GRID - 1) as f64;
        for j in 0..GRID {
            let ln_b = b_lo + (b_hi - b_lo) * j as f64 / (GRID - 1) as f64;
            let s = sse_at(ln_a, ln_b);
            if s < best.1 {
                best = ([ln_a, ln_b], s);
            }
        }
    }

    let (refined, sse) = nelder_mead_2d(
        |v| sse_at(v[0], v[1]),
        best.0,
        0.05,
        opts.max_iter,
        opts.rel_tol,
    );
    // the simplex keeps its best vertex, so refinement cannot regress
    let (point, sse) = if sse <= best.1 { (refined, sse) } else { best };
    let params = Sig1Params {
        a: point[0].exp(),
        b: point[1].exp(),
    };
    Ok(FitResult {
        model: FittedModel::Sig1(params),
        rmse: (sse / pts.len() as f64).sqrt(),
        support,
        converged: true,
    })
}

/// Fit dispatcher by model family.
pub fn fit(curve: &PlosCurve, model: ModelKind, opts: &FitOptions) -> Result<FitResult, FitError> {
    match model {
        ModelKind::Sig1 => fit_sig1(curve, opts),
        ModelKind::Sig2 => fit_sig2(curve, opts),
    }
}

/// Agreement metrics between a model curve and a reference curve over
/// their shared support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub rmse: f64,
    pub mae: f64,
    /// Coefficient of determination about the reference mean; can be
    /// negative for a bad model and is reported unclamped.
    pub r2: f64,
}

/// Compare two curves over bins populated in both, restricted to
/// `lo..=hi` degrees.
pub fn compare(
    model: &PlosCurve,
    reference: &PlosCurve,
    lo: usize,
    hi: usize,
) -> Result<Metrics, FitError> {
    let mut errors = Vec::new();
    let mut refs = Vec::new();
    for theta in lo..=hi.min(90) {
        if let (Some(m), Some(r)) = (model.plos(theta), reference.plos(theta)) {
            errors.push(m - r);
            refs.push(r);
        }
    }
    if errors.is_empty() {
        return Err(FitError::EmptySupport);
    }
    let n = errors.len() as f64;
    let ss_res: f64 = errors.iter().map(|e| e * e).sum();
    let rmse = (ss_res / n).sqrt();
    let mae = errors.iter().map(|e| e.abs()).sum::<f64>() / n;
    let mean_ref = refs.iter().sum::<f64>() / n;
    let ss_tot: f64 = refs.iter().map(|r| (r - mean_ref) * (r - mean_ref)).sum();
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res == 0.0 {
        1.0
    } else {
        f64::NEG_INFINITY
    };
    Ok(Metrics { rmse, mae, r2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const RM_URBAN_SIG1: Sig1Params = Sig1Params { a: 6.55, b: 0.069 };
    const RM_URBAN_SIG2: Sig2Params = Sig2Params {
        x1: -4.933,
        x2: 12.4,
        x3: -12.83,
        x4: 4.049,
    };

    fn curve_from_sig1(p: &Sig1Params) -> PlosCurve {
        let mut c = PlosCurve::from_model(|t| sig1_eval(p, t));
        c.los_count.iter_mut().for_each(|n| *n = 1000);
        for t in 0..91 {
            c.los_sum[t] = sig1_eval(p, t as f64) * 1000.0;
        }
        c
    }

    fn curve_from_sig2(p: &Sig2Params) -> PlosCurve {
        let mut c = PlosCurve::from_model(|t| sig2_eval(p, (t).to_radians()));
        c.los_count.iter_mut().for_each(|n| *n = 1000);
        for t in 0..91 {
            c.los_sum[t] = sig2_eval(p, (t as f64).to_radians()) * 1000.0;
        }
        c
    }

    #[test]
    fn sig1_identities() {
        // exponent vanishes at theta = a
        let p = RM_URBAN_SIG1;
        assert!((sig1_eval(&p, p.a) - 1.0 / (1.0 + p.a)).abs() < 1e-12);
        assert!((sig1_eval(&p, p.a) - 0.1325).abs() < 1e-3);
        assert!((sig1_eval(&p, 90.0) - 0.980).abs() < 1e-3);
        // saturation
        assert!(sig1_eval(&p, 1e4) > 0.999999);
    }

    #[test]
    fn sig2_identities() {
        let p = RM_URBAN_SIG2;
        // at zero only the constant term remains
        assert!((sig2_eval(&p, 0.0) - 0.0171).abs() < 2e-4);
        assert!((sig2_eval(&p, PI / 2.0) - 0.9903).abs() < 1e-3);
        let zero = Sig2Params {
            x1: 0.0,
            x2: 0.0,
            x3: 0.0,
            x4: 0.0,
        };
        assert_eq!(sig2_eval(&zero, 0.7), 0.5);
    }

    #[test]
    fn model_range_is_open_unit_interval() {
        for t in 0..=90 {
            let v1 = sig1_eval(&RM_URBAN_SIG1, t as f64);
            let v2 = sig2_eval(&RM_URBAN_SIG2, (t as f64).to_radians());
            assert!(v1 > 0.0 && v1 < 1.0);
            assert!(v2 > 0.0 && v2 < 1.0);
        }
    }

    #[test]
    fn sig2_recovers_its_own_curve() {
        let curve = curve_from_sig2(&RM_URBAN_SIG2);
        let fit = fit_sig2(&curve, &FitOptions::default()).unwrap();
        assert!(fit.rmse < 1e-6, "rmse {}", fit.rmse);
        let FittedModel::Sig2(p) = fit.model else {
            panic!("wrong family")
        };
        for t in 0..=90 {
            let t = (t as f64).to_radians();
            assert!((sig2_eval(&p, t) - sig2_eval(&RM_URBAN_SIG2, t)).abs() < 1e-5);
        }
    }

    #[test]
    fn sig1_recovers_its_own_parameters() {
        let curve = curve_from_sig1(&RM_URBAN_SIG1);
        let fit = fit_sig1(&curve, &FitOptions::default()).unwrap();
        assert!(fit.rmse < 1e-6, "rmse {}", fit.rmse);
        let FittedModel::Sig1(p) = fit.model else {
            panic!("wrong family")
        };
        assert!((p.a - 6.55).abs() / 6.55 < 0.01, "a = {}", p.a);
        assert!((p.b - 0.069).abs() / 0.069 < 0.01, "b = {}", p.b);
    }

    #[test]
    fn flat_half_curve_fits_with_zero_cubic() {
        let mut curve = PlosCurve::new();
        for t in 0..91 {
            curve.los_sum[t] = 50.0;
            curve.los_count[t] = 100;
        }
        let fit = fit_sig2(&curve, &FitOptions::default()).unwrap();
        assert!(fit.rmse < 1e-9);
        let FittedModel::Sig2(p) = fit.model else {
            panic!()
        };
        for c in [p.x1, p.x2, p.x3, p.x4] {
            assert!(c.abs() < 1e-6, "coefficient {c}");
        }
    }

    #[test]
    fn refinement_never_regresses_from_init() {
        // noisy-ish curve: deterministic wobble around a reference model
        let mut curve = PlosCurve::new();
        for t in 0..91 {
            let p = sig2_eval(&RM_URBAN_SIG2, (t as f64).to_radians());
            let wobble = 0.05 * ((t as f64) * 0.7).sin();
            let p = (p + wobble).clamp(0.01, 0.99);
            curve.los_count[t] = 1000;
            curve.los_sum[t] = p * 1000.0;
        }
        let opts = FitOptions::default();
        let pts: Vec<(f64, f64)> = (0..91usize)
            .map(|t| ((t as f64).to_radians(), curve.plos(t).unwrap()))
            .collect();
        let init = sig2_logit_init(&pts, opts.logit_clamp);
        let init_rmse = (sse_of(|t| sig2_eval(&init, t), &pts) / pts.len() as f64).sqrt();
        let fit = fit_sig2(&curve, &opts).unwrap();
        assert!(
            fit.rmse <= init_rmse + 1e-15,
            "refined {} vs init {init_rmse}",
            fit.rmse
        );
    }

    #[test]
    fn insufficient_bins_is_an_error() {
        let mut curve = PlosCurve::new();
        for t in 0..4 {
            curve.los_sum[t] = 40.0;
            curve.los_count[t] = 50;
        }
        let err = fit_sig2(&curve, &FitOptions::default()).unwrap_err();
        assert!(matches!(err, FitError::InsufficientData { eligible: 4, .. }));
    }

    #[test]
    fn min_count_filters_sparse_bins() {
        let mut curve = PlosCurve::new();
        for t in 0..91 {
            curve.los_sum[t] = 5.0;
            curve.los_count[t] = if t < 20 { 10 } else { 100 };
        }
        let fit = fit_sig2(&curve, &FitOptions::default()).unwrap();
        assert_eq!(fit.support.len(), 71);
        assert_eq!(fit.support[0], 20);
    }

    #[test]
    fn compare_identity_and_offset() {
        let curve = curve_from_sig2(&RM_URBAN_SIG2);
        let m = compare(&curve, &curve, 0, 90).unwrap();
        assert_eq!((m.rmse, m.mae, m.r2), (0.0, 0.0, 1.0));

        let mut offset = curve.clone();
        for t in 0..91 {
            offset.los_sum[t] += 0.1 * offset.los_count[t] as f64;
        }
        let m = compare(&offset, &curve, 0, 90).unwrap();
        assert!((m.rmse - 0.1).abs() < 1e-12);
        assert!((m.mae - 0.1).abs() < 1e-12);
        assert!(m.r2 < 1.0);
    }

    #[test]
    fn compare_constant_reference_reports_unclamped() {
        let constant = PlosCurve::from_model(|_| 0.5);
        let other = PlosCurve::from_model(|t| 0.5 + t / 900.0);
        let m = compare(&other, &constant, 0, 90).unwrap();
        assert!(m.r2 <= 0.0);
        let same = compare(&constant, &constant, 0, 90).unwrap();
        assert_eq!(same.r2, 1.0);
    }

    #[test]
    fn compare_empty_support() {
        let empty = PlosCurve::new();
        let curve = curve_from_sig2(&RM_URBAN_SIG2);
        assert_eq!(
            compare(&curve, &empty, 0, 90).unwrap_err(),
            FitError::EmptySupport
        );
        // disjoint ranges also yield empty support
        assert_eq!(
            compare(&curve, &curve, 91, 90).unwrap_err(),
            FitError::EmptySupport
        );
    }

    #[test]
    fn fit_json_schema() {
        let curve = curve_from_sig2(&RM_URBAN_SIG2);
        let fit = fit_sig2(&curve, &FitOptions::default()).unwrap();
        let json = fit.to_json_string();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["model"], "sig2");
        assert!(v["params"]["x1"].is_number());
        assert!(v["rmse"].is_number());
        assert!(v["support"].is_array());
        assert_eq!(v["converged"], true);
    }
}
