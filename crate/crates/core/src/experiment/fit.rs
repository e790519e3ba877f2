//! Least-squares growth exponent of `log N` against `log B`.

use super::ExperimentError;

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(B, log N − fitted)` for every row used.
    pub residuals: Vec<(u64, f64)>,
}

/// Fits the last `max(3, ⌈fraction·n⌉)` rows of `(B, N)`, skipping `N = 0`.
pub fn fit_exponent(rows: &[(u64, u64)], tail_fraction: f64) -> Result<ExponentFit, ExperimentError> {
    let n = rows.len();
    let take = ((tail_fraction * n as f64).ceil() as usize).max(3).min(n);
    let tail: Vec<(u64, f64, f64)> = rows[n - take..]
        .iter()
        .filter(|(b, c)| *c > 0 && *b > 0)
        .map(|&(b, c)| (b, (b as f64).ln(), (c as f64).ln()))
        .collect();
    if tail.len() < 3 {
        return Err(ExperimentError::InsufficientData(format!(
            "{} nonzero rows in the tail of {take}; at least 3 are needed",
            tail.len()
        )));
    }
    let k = tail.len() as f64;
    let mx = tail.iter().map(|t| t.1).sum::<f64>() / k;
    let my = tail.iter().map(|t| t.2).sum::<f64>() / k;
    let sxx: f64 = tail.iter().map(|t| (t.1 - mx).powi(2)).sum();
    let sxy: f64 = tail.iter().map(|t| (t.1 - mx) * (t.2 - my)).sum();
    if sxx == 0.0 {
        return Err(ExperimentError::InsufficientData("all tail rows share one B".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = tail.iter().map(|&(b, x, y)| (b, y - (intercept + slope * x))).collect();
    Ok(ExponentFit { slope, intercept, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_data() {
        let rows: Vec<(u64, u64)> = [1, 2, 4, 8, 16].iter().map(|&b| (b, 3 * b)).collect();
        let fit = fit_exponent(&rows, 1.0).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zeros_are_insufficient() {
        let rows = [(1, 0), (2, 0), (4, 0), (8, 0)];
        assert!(matches!(fit_exponent(&rows, 1.0), Err(ExperimentError::InsufficientData(_))));
    }

    #[test]
    fn three_point_regression() {
        // hand oracle: ordinary least squares on the logarithms
        let fit = fit_exponent(&[(10, 21), (100, 465), (1000, 10002)], 1.0).unwrap();
        assert!((fit.slope - 1.3389337777388648).abs() < 1e-12);
        assert!((fit.slope - 1.337).abs() < 5e-3);
    }
}
