//! Goodness-of-fit helpers.

use alloc::vec::Vec;

/// CDF of the arcsine law, `F(u) = (2/π)·asin(√u)`, clamped outside `[0, 1]`.
pub fn arcsine_cdf(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        core::f64::consts::FRAC_2_PI * libm::asin(libm::sqrt(u))
    }
}

/// Kolmogorov–Smirnov distance between the empirical distribution of `samples`
/// and `cdf`. Sorts a copy of the samples; NaNs sort last.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    ks_distance_sorted(&sorted, cdf)
}

/// As [`ks_distance`] for samples already sorted ascending.
pub fn ks_distance_sorted<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .fold(0.0f64, |d, (i, &x)| {
            let f = cdf(x);
            let below = f - i as f64 / n;
            let above = (i + 1) as f64 / n - f;
            d.max(below).max(above)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcsine_cdf_endpoints_and_midpoint() {
        assert_eq!(arcsine_cdf(0.0), 0.0);
        assert_eq!(arcsine_cdf(1.0), 1.0);
        assert!((arcsine_cdf(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_of_uniform_grid_is_half_step() {
        let n = 1000;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_distance(&xs, |u| u.clamp(0.0, 1.0));
        assert!((d - 0.5 / n as f64).abs() < 1e-12);
    }

    #[test]
    fn ks_single_point() {
        assert!((ks_distance(&[0.25], |u| u) - 0.75).abs() < 1e-15);
        assert_eq!(ks_distance(&[], |u| u), 0.0);
    }
}
