use alloc::vec::Vec;

use super::matrix::{square_mul, TransitionMatrix};
use super::stationary::stationary_distribution;
use super::{MarkovError, Result};

/// Absolute slack covering roundoff in an exactly-zero deviation.
const BOUND_ABS_SLACK: f64 = 4.0 * f64::EPSILON;
const BOUND_REL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `|P^k_ij − π_j|`.
    pub deviation: f64,
    /// `(1 − ζ)^{k−1}`.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeometricBoundReport {
    pub zeta: f64,
    pub k_max: usize,
    pub pi: Vec<f64>,
    pub holds: bool,
    /// Smallest `k`, then `i`, then `j`.
    pub first_violation: Option<Violation>,
    /// Largest `|P^k_ij − π_j| − (1 − ζ)^{k−1}` seen; positive iff violated.
    pub max_gap: f64,
}

/// Checks `|P^k_ij − π_j| ≤ (1 − ζ)^{k−1}` for all `i, j` and `k = 1..=k_max`.
///
/// The deviations are taken from powers of `D = P − 𝟙π`, using
/// `P^k − 𝟙π = D^k`, which avoids cancellation once `P^k` is close to its
/// limit.
pub fn geometric_bound_check(p: &TransitionMatrix, zeta: f64, k_max: usize) -> Result<GeometricBoundReport> {
    if !(zeta > 0.0 && zeta <= 1.0) {
        return Err(MarkovError::InvalidParameter { name: "zeta", value: zeta, range: "(0, 1]" });
    }
    if k_max == 0 {
        return Err(MarkovError::InvalidParameter { name: "K", value: 0.0, range: "[1, inf)" });
    }
    let pi = stationary_distribution(p)?.pi;
    let s = p.size();
    let dev: Vec<f64> = (0..s * s).map(|idx| p.as_row_major()[idx] - pi[idx % s]).collect();
    let mut power = dev.clone();
    let mut first_violation = None;
    let mut max_gap = f64::NEG_INFINITY;
    for k in 1..=k_max {
        if k > 1 {
            power = square_mul(s, &power, &dev);
        }
        let bound = libm::pow(1.0 - zeta, (k - 1) as f64);
        for i in 0..s {
            for j in 0..s {
                let deviation = power[i * s + j].abs();
                max_gap = max_gap.max(deviation - bound);
                if first_violation.is_none() && deviation > bound * (1.0 + BOUND_REL_SLACK) + BOUND_ABS_SLACK {
                    first_violation = Some(Violation { i, j, k, deviation, bound });
                }
            }
        }
    }
    Ok(GeometricBoundReport {
        zeta,
        k_max,
        pi,
        holds: first_violation.is_none(),
        first_violation,
        max_gap,
    })
}

/// Population of `n` strings of length `L`, `n1` of them mutated at rate
/// `mu1` and the rest at `mu2`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZetaParams {
    pub n: u32,
    pub n1: u32,
    pub length: u32,
    pub mu1: f64,
    pub mu2: f64,
}

fn open_unit(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(MarkovError::InvalidParameter { name, value: v, range: "(0, 1)" })
    }
}

fn at_least_one(name: &'static str, v: u32) -> Result<()> {
    if v >= 1 {
        Ok(())
    } else {
        Err(MarkovError::InvalidParameter { name, value: f64::from(v), range: "[1, inf)" })
    }
}

impl ZetaParams {
    pub fn new(n: u32, n1: u32, length: u32, mu1: f64, mu2: f64) -> Result<Self> {
        at_least_one("n", n)?;
        at_least_one("L", length)?;
        if n1 > n {
            return Err(MarkovError::InvalidParameter { name: "n1", value: f64::from(n1), range: "[0, n]" });
        }
        open_unit("mu1", mu1)?;
        open_unit("mu2", mu2)?;
        Ok(Self { n, n1, length, mu1, mu2 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZetaValue {
    pub zeta: f64,
    pub ln_zeta: f64,
    /// `ζ ≥ 1`: the geometric bound is vacuous.
    pub degenerate: bool,
}

/// `ζ = 2^{nL} μ₁^{n₁L} μ₂^{(n−n₁)L}`, evaluated in the log domain.
pub fn zeta_two_group(params: &ZetaParams) -> ZetaValue {
    let ZetaParams { n, n1, length, mu1, mu2 } = *params;
    let nl = f64::from(n) * f64::from(length);
    let ln_zeta = nl * core::f64::consts::LN_2
        + f64::from(n1) * f64::from(length) * libm::log(mu1)
        + f64::from(n - n1) * f64::from(length) * libm::log(mu2);
    let zeta = libm::exp(ln_zeta);
    ZetaValue { zeta, ln_zeta, degenerate: zeta >= 1.0 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaBoundParams {
    pub zeta: f64,
    pub mu: f64,
    pub length: u32,
    pub n: u32,
}

impl GaBoundParams {
    pub fn new(zeta: f64, mu: f64, length: u32, n: u32) -> Result<Self> {
        open_unit("zeta", zeta)?;
        open_unit("mu", mu)?;
        at_least_one("L", length)?;
        at_least_one("n", n)?;
        Ok(Self { zeta, mu, length, n })
    }
}

/// `⌈ln(1−ζ) / ln(1 − min[(1−μ)^{Ln}, μ^{Ln}])⌉`.
///
/// Powers are formed in the log domain and `ln(1 − m)` through `log1p`.
/// Quotients within a relative `1e−12` of an integer are snapped to it
/// before taking the ceiling, so a last-ulp excess never adds an iteration.
pub fn ga_iteration_bound(params: &GaBoundParams) -> Result<u64> {
    let GaBoundParams { zeta, mu, length, n } = *params;
    open_unit("zeta", zeta)?;
    open_unit("mu", mu)?;
    let ln_n = f64::from(length) * f64::from(n);
    let ln_min = ln_n * libm::log1p(-mu).min(libm::log(mu));
    let neg_ln_fail = -libm::log1p(-zeta);
    // ln(1 − m) ≈ −m once m is below the resolution of log1p.
    let ln_ratio = if ln_min < -700.0 {
        libm::log(neg_ln_fail) - ln_min
    } else {
        let denom = -libm::log1p(-libm::exp(ln_min));
        if denom == 0.0 {
            return Err(MarkovError::InvalidParameter { name: "mu", value: mu, range: "(0, 1)" });
        }
        libm::log(neg_ln_fail / denom)
    };
    let ratio = libm::exp(ln_ratio);
    if !ratio.is_finite() || ratio >= 18_446_744_073_709_551_615.0 {
        return Err(MarkovError::Overflow);
    }
    let nearest = libm::round(ratio);
    let snapped = if (ratio - nearest).abs() <= BOUND_REL_SLACK * nearest.max(1.0) { nearest } else { ratio };
    Ok(libm::ceil(snapped) as u64)
}

/// Logarithmic cooling `T_k = A / ln(k + 1)` for `k ≥ 1`.
pub fn sa_temperature(a: f64, k: u64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(MarkovError::InvalidParameter { name: "A", value: a, range: "(0, inf)" });
    }
    if k == 0 {
        return Err(MarkovError::InvalidParameter { name: "k", value: 0.0, range: "[1, inf)" });
    }
    Ok(a / libm::log1p(k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chain() -> TransitionMatrix {
        TransitionMatrix::new(vec![vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap()
    }

    #[test]
    fn geometric_bound_examples() {
        let mix = TransitionMatrix::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        for zeta in [0.01, 0.5, 1.0] {
            assert!(geometric_bound_check(&mix, zeta, 50).unwrap().holds);
        }
        let r = geometric_bound_check(&chain(), 0.3, 100).unwrap();
        assert!(r.holds);
        assert!(r.max_gap < 0.0);
        let r = geometric_bound_check(&chain(), 0.9, 10).unwrap();
        assert!(!r.holds);
        let v = r.first_violation.unwrap();
        assert_eq!((v.i, v.j, v.k), (0, 0, 2));
        assert!((v.deviation - (0.83 - 2.0 / 3.0)).abs() < 1e-12);
        assert!((v.bound - 0.1).abs() < 1e-15);
    }

    #[test]
    fn geometric_bound_errors() {
        assert!(geometric_bound_check(&chain(), 0.0, 10).is_err());
        assert!(geometric_bound_check(&chain(), 1.5, 10).is_err());
        assert!(geometric_bound_check(&chain(), 0.5, 0).is_err());
        assert!(matches!(
            geometric_bound_check(&TransitionMatrix::identity(2), 0.5, 10),
            Err(MarkovError::NotRegular { .. })
        ));
    }

    #[test]
    fn zeta_examples() {
        let z = zeta_two_group(&ZetaParams::new(2, 1, 1, 0.1, 0.1).unwrap());
        assert!((z.zeta - 0.04).abs() < 1e-12);
        assert!(!z.degenerate);
        let z = zeta_two_group(&ZetaParams::new(1, 1, 1, 0.5, 0.5).unwrap());
        assert!((z.zeta - 1.0).abs() < 1e-12);
        assert!(z.degenerate);
        let z = zeta_two_group(&ZetaParams::new(2, 1, 2, 0.1, 0.2).unwrap());
        assert!((z.zeta - 0.0064).abs() < 1e-12);
        assert!(ZetaParams::new(2, 3, 1, 0.1, 0.1).is_err());
        assert!(ZetaParams::new(2, 1, 0, 0.1, 0.1).is_err());
        assert!(ZetaParams::new(2, 1, 1, 0.0, 0.1).is_err());
    }

    #[test]
    fn ga_bound_examples() {
        let t = |z, m, l, n| ga_iteration_bound(&GaBoundParams::new(z, m, l, n).unwrap()).unwrap();
        assert_eq!(t(0.5, 0.5, 1, 1), 1);
        assert_eq!(t(0.75, 0.5, 1, 1), 2);
        assert_eq!(t(0.99, 0.1, 2, 2), 46050);
        assert!(GaBoundParams::new(0.5, 0.0, 1, 1).is_err());
        assert!(GaBoundParams::new(0.5, 1.0, 1, 1).is_err());
        assert!(GaBoundParams::new(1.0, 0.5, 1, 1).is_err());
    }

    #[test]
    fn ga_bound_underflow_paths() {
        // μ^{Ln} = 10^{-400}: far below f64 range, bound far above u64.
        let p = GaBoundParams::new(0.9, 0.1, 20, 20).unwrap();
        assert_eq!(ga_iteration_bound(&p), Err(MarkovError::Overflow));
        // 0.5^{60} ≈ 8.7e-19: ln(0.1)/ln(1 − 8.7e-19) ≈ 2.65e18 fits.
        let p = GaBoundParams::new(0.9, 0.5, 6, 10).unwrap();
        let t = ga_iteration_bound(&p).unwrap();
        let expected = libm::log(10.0) * libm::pow(2.0, 60.0);
        assert!(((t as f64) - expected).abs() / expected < 1e-12);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn sa_schedule() {
        let t1 = sa_temperature(1.0, 1).unwrap();
        assert!((t1 - 1.4426950408889634).abs() < 1e-15);
        assert_eq!(sa_temperature(2.0, 1).unwrap(), 2.0 * t1);
        assert!(sa_temperature(0.0, 1).is_err());
        assert!(sa_temperature(1.0, 0).is_err());
        let mut prev = f64::INFINITY;
        for k in 1..=1_000_000u64 {
            let t = sa_temperature(1.0, k).unwrap();
            assert!(t < prev);
            prev = t;
        }
        assert!(prev < 0.073);
    }
}
