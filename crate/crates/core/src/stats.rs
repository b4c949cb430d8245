//! Small resampling helpers for Monte Carlo summaries.

use rand::Rng;

use crate::rng::rng_from_seed;

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Bootstrap standard error of the mean of `values`.
pub fn bootstrap_standard_error(values: &[f64], resamples: usize, seed: u64) -> f64 {
    if values.len() < 2 || resamples < 2 {
        return 0.0;
    }
    let mut rng = rng_from_seed(seed);
    let means: Vec<f64> = (0..resamples)
        .map(|_| {
            let sum: f64 = (0..values.len()).map(|_| values[rng.random_range(0..values.len())]).sum();
            sum / values.len() as f64
        })
        .collect();
    let m = mean(&means);
    let var = means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (means.len() - 1) as f64;
    var.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bootstrap_matches_analytic_standard_error() {
        let values: Vec<f64> = (0..50).map(|i| (i % 10) as f64).collect();
        let m = mean(&values);
        let sd = (values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / values.len() as f64).sqrt();
        let analytic = sd / (values.len() as f64).sqrt();
        let boot = bootstrap_standard_error(&values, 4000, 1);
        assert!((boot - analytic).abs() < 0.05 * analytic, "{boot} vs {analytic}");
        assert_eq!(bootstrap_standard_error(&[1.0], 100, 1), 0.0);
    }
}
