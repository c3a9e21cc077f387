//! Per-degree P_LoS accumulators and the curve CSV interchange format.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

/// Number of integer-degree bins (0 through 90 inclusive).
pub const BIN_COUNT: usize = 91;

/// Expected CSV header line.
pub const CSV_HEADER: &str = "theta_deg,plos,los_sum,los_count";

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("bad header: expected `{CSV_HEADER}`, found `{found}`")]
    BadHeader { found: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("expected 91 rows for theta 0..90, found {found}")]
    WrongRowCount { found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Provenance carried alongside a simulated curve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CurveMeta {
    pub seed: u64,
    pub config_hash: u64,
}

/// Line-of-sight tallies per integer elevation degree.
///
/// `plos(theta)` is `los_sum / los_count`, undefined (None) for empty
/// bins. Bins with no observations export as an empty `plos` field,
/// never as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PlosCurve {
    pub los_sum: Vec<f64>,
    pub los_count: Vec<u64>,
    pub meta: CurveMeta,
}

impl Default for PlosCurve {
    fn default() -> Self {
        Self::new()
    }
}

impl PlosCurve {
    pub fn new() -> Self {
        Self {
            los_sum: vec![0.0; BIN_COUNT],
            los_count: vec![0; BIN_COUNT],
            meta: CurveMeta::default(),
        }
    }

    pub fn with_meta(meta: CurveMeta) -> Self {
        Self {
            meta,
            ..Self::new()
        }
    }

    /// Build a curve by evaluating a closed-form model at every integer
    /// degree; each bin gets a unit count.
    pub fn from_model<F: Fn(f64) -> f64>(eval: F) -> Self {
        let mut curve = Self::new();
        for theta in 0..BIN_COUNT {
            curve.los_sum[theta] = eval(theta as f64);
            curve.los_count[theta] = 1;
        }
        curve
    }

    /// Record one link outcome in a bin.
    pub fn record(&mut self, bin: usize, los: bool) {
        self.los_sum[bin] += los as u64 as f64;
        self.los_count[bin] += 1;
    }

    /// Element-wise accumulate another curve's tallies.
    pub fn merge(&mut self, other: &PlosCurve) {
        for i in 0..BIN_COUNT {
            self.los_sum[i] += other.los_sum[i];
            self.los_count[i] += other.los_count[i];
        }
    }

    /// P_LoS estimate for a bin, if it has observations.
    pub fn plos(&self, theta: usize) -> Option<f64> {
        if self.los_count[theta] > 0 {
            Some(self.los_sum[theta] / self.los_count[theta] as f64)
        } else {
            None
        }
    }

    pub fn total_count(&self) -> u64 {
        self.los_count.iter().sum()
    }

    /// Bins with at least `min_count` observations, inside `lo..=hi`.
    pub fn eligible_bins(&self, min_count: u64, lo: usize, hi: usize) -> Vec<usize> {
        (lo..=hi.min(BIN_COUNT - 1))
            .filter(|&t| self.los_count[t] >= min_count.max(1))
            .collect()
    }

    /// Unweighted mean of the defined bin estimates inside `lo..=hi`.
    pub fn mean_plos(&self, lo: usize, hi: usize) -> Option<f64> {
        let vals: Vec<f64> = (lo..=hi.min(BIN_COUNT - 1))
            .filter_map(|t| self.plos(t))
            .collect();
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    }

    /// Render the curve CSV document (header plus 91 rows).
    pub fn to_csv_string(&self) -> String {
        let mut out = String::with_capacity(BIN_COUNT * 24);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for theta in 0..BIN_COUNT {
            match self.plos(theta) {
                Some(p) => {
                    let _ = writeln!(
                        out,
                        "{theta},{p},{},{}",
                        self.los_sum[theta], self.los_count[theta]
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "{theta},,{},{}",
                        self.los_sum[theta], self.los_count[theta]
                    );
                }
            }
        }
        out
    }

    pub fn write_csv<P: AsRef<Path>>(&self, path: P) -> Result<(), CurveError> {
        fs::write(path, self.to_csv_string())?;
        Ok(())
    }

    /// Parse a curve CSV document. The `plos` column is recomputed from
    /// the tallies rather than trusted.
    pub fn from_csv_str(text: &str) -> Result<Self, CurveError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| CurveError::BadHeader {
            found: String::new(),
        })?;
        if header.trim() != CSV_HEADER {
            return Err(CurveError::BadHeader {
                found: header.trim().to_string(),
            });
        }

        let mut curve = Self::new();
        let mut rows = 0usize;
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(CurveError::Malformed {
                    line: lineno,
                    message: format!("expected 4 fields, found {}", fields.len()),
                });
            }
            let theta: usize = fields[0].parse().map_err(|_| CurveError::Malformed {
                line: lineno,
                message: format!("bad theta_deg `{}`", fields[0]),
            })?;
            if theta != rows || theta >= BIN_COUNT {
                return Err(CurveError::Malformed {
                    line: lineno,
                    message: format!("expected theta_deg {rows}, found {theta}"),
                });
            }
            let sum: f64 = fields[2].parse().map_err(|_| CurveError::Malformed {
                line: lineno,
                message: format!("bad los_sum `{}`", fields[2]),
            })?;
            let count: u64 = fields[3].parse().map_err(|_| CurveError::Malformed {
                line: lineno,
                message: format!("bad los_count `{}`", fields[3]),
            })?;
            if count == 0 && !fields[1].is_empty() {
                return Err(CurveError::Malformed {
                    line: lineno,
                    message: "plos must be empty when los_count is 0".into(),
                });
            }
            curve.los_sum[theta] = sum;
            curve.los_count[theta] = count;
            rows += 1;
        }
        if rows != BIN_COUNT {
            return Err(CurveError::WrongRowCount { found: rows });
        }
        Ok(curve)
    }

    pub fn read_csv<P: AsRef<Path>>(path: P) -> Result<Self, CurveError> {
        Self::from_csv_str(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_and_ratio() {
        let mut curve = PlosCurve::new();
        curve.record(45, true);
        curve.record(45, true);
        curve.record(45, false);
        assert_eq!(curve.plos(45), Some(2.0 / 3.0));
        assert_eq!(curve.plos(44), None);
        assert_eq!(curve.total_count(), 3);
    }

    #[test]
    fn merge_adds_elementwise() {
        let mut a = PlosCurve::new();
        a.record(10, true);
        let mut b = PlosCurve::new();
        b.record(10, false);
        b.record(20, true);
        a.merge(&b);
        assert_eq!(a.plos(10), Some(0.5));
        assert_eq!(a.plos(20), Some(1.0));
    }

    #[test]
    fn csv_round_trip() {
        let mut curve = PlosCurve::new();
        for theta in 5..=85 {
            for k in 0..(theta as u64 + 3) {
                curve.record(theta, k % 3 != 0);
            }
        }
        let text = curve.to_csv_string();
        assert!(text.starts_with("theta_deg,plos,los_sum,los_count\n"));
        assert_eq!(text.lines().count(), 92);
        let back = PlosCurve::from_csv_str(&text).unwrap();
        assert_eq!(back.los_sum, curve.los_sum);
        assert_eq!(back.los_count, curve.los_count);
    }

    #[test]
    fn empty_bins_export_empty_plos_field() {
        let mut curve = PlosCurve::new();
        curve.record(1, true);
        let text = curve.to_csv_string();
        let line0 = text.lines().nth(1).unwrap();
        assert_eq!(line0, "0,,0,0");
        let line1 = text.lines().nth(2).unwrap();
        assert_eq!(line1, "1,1,1,1");
    }

    #[test]
    fn header_is_checked() {
        let err = PlosCurve::from_csv_str("theta,plos\n").unwrap_err();
        assert!(matches!(err, CurveError::BadHeader { .. }));
        assert!(err.to_string().contains(CSV_HEADER));
    }

    #[test]
    fn row_count_is_checked() {
        let text = "theta_deg,plos,los_sum,los_count\n0,,0,0\n";
        let err = PlosCurve::from_csv_str(text).unwrap_err();
        assert!(matches!(err, CurveError::WrongRowCount { found: 1 }));
    }

    #[test]
    fn model_curve_has_unit_counts() {
        let curve = PlosCurve::from_model(|t| t / 90.0);
        assert_eq!(curve.total_count(), 91);
        assert_eq!(curve.plos(45), Some(0.5));
    }
}
