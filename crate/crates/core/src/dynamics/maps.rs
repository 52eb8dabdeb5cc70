use alloc::string::ToString;
use alloc::vec::Vec;
use core::str::FromStr;

use super::{DynamicsError, Result};

/// Residual `|f(u) − u|` below which the final iterate counts as a fixed point.
pub const FIXED_POINT_TOL: f64 = 1e-9;
/// Tolerance for matching a full cycle against the previous one.
pub const PERIOD_TOL: f64 = 1e-6;
pub const MAX_PERIOD: usize = 64;
/// Iterates beyond this magnitude are treated as divergence.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

/// `u ↦ u [1 − β₀ e^{−u²}]`.
pub fn firefly_map_step(u: f64, beta0: f64) -> f64 {
    u * (1.0 - beta0 * libm::exp(-(u * u)))
}

/// `y ↦ y − β₀ e^{−γ y²} y`, evaluated as `y [1 − β₀ e^{−γ y²}]` so that it is
/// the normalized map conjugated by `u = √γ·y` with identical operations.
pub fn firefly_raw_step(y: f64, beta0: f64, gamma_scale: f64) -> Result<f64> {
    if gamma_scale.is_nan() || gamma_scale <= 0.0 {
        return Err(DynamicsError::NonPositiveScale(gamma_scale));
    }
    Ok(raw_step(y, beta0, gamma_scale))
}

fn raw_step(y: f64, beta0: f64, gamma_scale: f64) -> f64 {
    y * (1.0 - beta0 * libm::exp(-(gamma_scale * (y * y))))
}

/// `u ↦ λu(1 − u)` on `u ∈ [0, 1]`, `λ ∈ [0, 4]`.
pub fn logistic_step(u: f64, lambda: f64) -> Result<f64> {
    check_logistic(u, lambda)?;
    Ok(logistic(u, lambda))
}

// λ·(u·(1−u)) rather than (λ·u)·(1−u): rounding is monotone and u(1−u) ≤ 1/4,
// so the image stays inside [0, 1].
fn logistic(u: f64, lambda: f64) -> f64 {
    lambda * (u * (1.0 - u))
}

fn check_logistic(u: f64, lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&u) {
        return Err(DynamicsError::OutOfDomain { name: "u", value: u, range: "[0, 1]" });
    }
    if !(0.0..=4.0).contains(&lambda) {
        return Err(DynamicsError::OutOfDomain { name: "lambda", value: lambda, range: "[0, 4]" });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum MapKind {
    FireflyNormalized,
    FireflyRaw,
    Logistic,
}

impl MapKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MapKind::FireflyNormalized => "firefly-normalized",
            MapKind::FireflyRaw => "firefly-raw",
            MapKind::Logistic => "logistic",
        }
    }
}

impl FromStr for MapKind {
    type Err = DynamicsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "firefly-normalized" | "firefly" => Ok(MapKind::FireflyNormalized),
            "firefly-raw" => Ok(MapKind::FireflyRaw),
            "logistic" => Ok(MapKind::Logistic),
            other => Err(DynamicsError::UnknownMap(other.to_string())),
        }
    }
}

/// A one-dimensional map with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "map"))]
pub enum IteratedMap {
    FireflyNormalized { beta0: f64 },
    FireflyRaw { beta0: f64, gamma_scale: f64 },
    Logistic { lambda: f64 },
}

impl IteratedMap {
    /// `param` is β₀ for the firefly maps and λ for the logistic map;
    /// `gamma_scale` is only read by the raw firefly map.
    pub fn new(kind: MapKind, param: f64, gamma_scale: f64) -> Result<Self> {
        let map = match kind {
            MapKind::FireflyNormalized => IteratedMap::FireflyNormalized { beta0: param },
            MapKind::FireflyRaw => IteratedMap::FireflyRaw { beta0: param, gamma_scale },
            MapKind::Logistic => IteratedMap::Logistic { lambda: param },
        };
        map.validate()?;
        Ok(map)
    }

    pub fn kind(&self) -> MapKind {
        match self {
            IteratedMap::FireflyNormalized { .. } => MapKind::FireflyNormalized,
            IteratedMap::FireflyRaw { .. } => MapKind::FireflyRaw,
            IteratedMap::Logistic { .. } => MapKind::Logistic,
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            IteratedMap::FireflyNormalized { beta0 } | IteratedMap::FireflyRaw { beta0, .. } => beta0,
            IteratedMap::Logistic { lambda } => lambda,
        }
    }

    /// Same map with its main parameter replaced.
    pub fn with_param(&self, param: f64) -> Result<Self> {
        let gamma_scale = match *self {
            IteratedMap::FireflyRaw { gamma_scale, .. } => gamma_scale,
            _ => 1.0,
        };
        Self::new(self.kind(), param, gamma_scale)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            IteratedMap::FireflyNormalized { beta0 } | IteratedMap::FireflyRaw { beta0, .. }
                if !(beta0 >= 0.0 && beta0.is_finite()) =>
            {
                Err(DynamicsError::OutOfDomain { name: "beta0", value: beta0, range: "[0, inf)" })
            }
            IteratedMap::FireflyRaw { gamma_scale, .. } if gamma_scale.is_nan() || gamma_scale <= 0.0 => {
                Err(DynamicsError::NonPositiveScale(gamma_scale))
            }
            IteratedMap::Logistic { lambda } => check_logistic(0.0, lambda),
            _ => Ok(()),
        }
    }

    fn validate_start(&self, u0: f64) -> Result<()> {
        match *self {
            IteratedMap::Logistic { lambda } => check_logistic(u0, lambda),
            _ if !u0.is_finite() => Err(DynamicsError::OutOfDomain { name: "u0", value: u0, range: "finite" }),
            _ => Ok(()),
        }
    }

    /// One application of the map, without domain checks.
    pub fn step(&self, u: f64) -> f64 {
        match *self {
            IteratedMap::FireflyNormalized { beta0 } => firefly_map_step(u, beta0),
            IteratedMap::FireflyRaw { beta0, gamma_scale } => raw_step(u, beta0, gamma_scale),
            IteratedMap::Logistic { lambda } => logistic(u, lambda),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "class", content = "period"))]
pub enum OrbitClass {
    FixedPoint,
    Periodic(usize),
    Aperiodic,
    Diverged,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MapOrbit {
    pub map: IteratedMap,
    pub u0: f64,
    pub transient: usize,
    /// Iterates after the transient, `u_{transient+1}, …`. Truncated at the
    /// first iterate beyond [`DIVERGENCE_LIMIT`].
    pub iterates: Vec<f64>,
    pub classification: OrbitClass,
}

/// Classifies a post-transient orbit of `map`.
///
/// Fixed point when the final iterate satisfies `|f(u) − u| < 1e−9`;
/// otherwise the smallest period `p ≤ 64` for which each of the last `p`
/// iterates is within `1e−6` of the iterate `p` steps earlier; otherwise
/// aperiodic.
pub fn classify_iterates(map: &IteratedMap, iterates: &[f64]) -> OrbitClass {
    let Some(&last) = iterates.last() else {
        return OrbitClass::Aperiodic;
    };
    if !last.is_finite() || last.abs() > DIVERGENCE_LIMIT {
        return OrbitClass::Diverged;
    }
    if (map.step(last) - last).abs() < FIXED_POINT_TOL {
        return OrbitClass::FixedPoint;
    }
    let n = iterates.len();
    (1..=MAX_PERIOD)
        .take_while(|&p| 2 * p <= n)
        .find(|&p| (0..p).all(|i| (iterates[n - 1 - i] - iterates[n - 1 - i - p]).abs() < PERIOD_TOL))
        .map_or(OrbitClass::Aperiodic, OrbitClass::Periodic)
}

/// Iterates `map` from `u0` for `steps` applications and keeps those after
/// the first `transient`.
pub fn orbit(map: IteratedMap, u0: f64, steps: usize, transient: usize) -> Result<MapOrbit> {
    map.validate()?;
    map.validate_start(u0)?;
    if steps <= transient {
        return Err(DynamicsError::InvalidSteps { steps, transient });
    }
    let mut iterates = Vec::with_capacity(steps - transient);
    let mut u = u0;
    let mut diverged = false;
    for t in 0..steps {
        u = map.step(u);
        if !u.is_finite() || u.abs() > DIVERGENCE_LIMIT {
            diverged = true;
            iterates.push(u);
            break;
        }
        if t >= transient {
            iterates.push(u);
        }
    }
    let classification = if diverged {
        OrbitClass::Diverged
    } else {
        classify_iterates(&map, &iterates)
    };
    Ok(MapOrbit { map, u0, transient, iterates, classification })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanRow {
    pub param: f64,
    /// The last `keep` iterates (fewer if the orbit diverged).
    pub samples: Vec<f64>,
    pub classification: OrbitClass,
}

/// Bifurcation-diagram data: `samples` evenly spaced parameters over
/// `[lo, hi]` (both ends included when `samples ≥ 2`).
#[allow(clippy::too_many_arguments)]
pub fn bifurcation_scan(
    map: IteratedMap,
    lo: f64,
    hi: f64,
    samples: usize,
    u0: f64,
    steps: usize,
    transient: usize,
    keep: usize,
) -> Result<Vec<ScanRow>> {
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(DynamicsError::InvalidScan("need lo < hi"));
    }
    if samples == 0 {
        return Err(DynamicsError::InvalidScan("need at least one sample"));
    }
    if steps <= transient {
        return Err(DynamicsError::InvalidSteps { steps, transient });
    }
    if keep > steps - transient {
        return Err(DynamicsError::InvalidScan("keep exceeds steps - transient"));
    }
    (0..samples)
        .map(|i| {
            let param = if samples == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (samples - 1) as f64
            };
            let o = orbit(map.with_param(param)?, u0, steps, transient)?;
            let start = o.iterates.len().saturating_sub(keep);
            Ok(ScanRow { param, samples: o.iterates[start..].to_vec(), classification: o.classification })
        })
        .collect()
}
