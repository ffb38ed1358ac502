//! Polynomial growth-rate estimation for integer sequences.
//!
//! A sequence bounded by C n^(d-1) has log-log slope approaching d-1; the
//! estimator fits that slope by least squares and reports slope + 1. It is a
//! numeric heuristic for eyeballing the degree, not a certified bound, and
//! it is the only place the crate touches floating point.

use crate::error::Error;

#[derive(Clone, Debug)]
pub struct GrowthSequence {
    /// s_0..s_N.
    pub terms: Vec<i64>,
    pub estimated_gamma: f64,
    /// Inclusive index range the fit ran over.
    pub window: (usize, usize),
    /// Length bound the terms were computed under, for truncated sources.
    pub truncation_l: Option<u32>,
    /// Whether the terms agreed when recomputed at L+1 and L+2.
    pub stabilized: Option<bool>,
}

/// Least-squares slope of ln s_n against ln n over the window, plus 1.
/// Indices with s_n <= 0 (and n = 0) are skipped; at least 4 usable points
/// are required for the fit to mean anything.
pub fn estimate_gamma(terms: &[i64], window: (usize, usize)) -> Result<f64, Error> {
    let lo = window.0.max(1);
    let hi = window.1.min(terms.len().saturating_sub(1));
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&n| terms[n] > 0)
        .map(|n| ((n as f64).ln(), (terms[n] as f64).ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::Domain(format!(
            "gamma fit needs at least 4 positive terms in [{lo}, {hi}], found {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(sxy / sxx + 1.0)
}

/// Default fit window for a sequence of N+1 terms: early transients are
/// dropped but the window never starts past index 8.
pub fn default_window(n_max: usize) -> (usize, usize) {
    ((n_max / 2).min(8).max(1), n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence_has_gamma_one() {
        let s = vec![1i64; 201];
        assert_eq!(estimate_gamma(&s, (1, 200)).unwrap(), 1.0);
    }

    #[test]
    fn linear_sequence_has_gamma_two() {
        let s: Vec<i64> = (0..=200).collect();
        let g = estimate_gamma(&s, (1, 200)).unwrap();
        assert!((g - 2.0).abs() < 1e-9, "gamma = {g}");
    }

    #[test]
    fn quadratic_sequence_has_gamma_three() {
        let s: Vec<i64> = (0..=200).map(|n| n * n).collect();
        let g = estimate_gamma(&s, (1, 200)).unwrap();
        assert!((g - 3.0).abs() < 1e-9, "gamma = {g}");
    }

    #[test]
    fn sparse_window_is_rejected() {
        let s = vec![0i64, 0, 1, 1, 0, 0, 0, 0];
        assert!(matches!(estimate_gamma(&s, (1, 7)), Err(Error::Domain(_))));
    }
}
