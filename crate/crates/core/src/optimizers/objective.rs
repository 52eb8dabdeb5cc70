use alloc::format;
use alloc::string::{String, ToString};

use super::{OptimizerError, Result, Sense};

/// `Σ xᵢ²`.
pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Number of set bits.
pub fn onemax(bits: &[bool]) -> f64 {
    bits.iter().filter(|&&b| b).count() as f64
}

/// 1 on the all-ones string, 0 elsewhere.
pub fn needle(bits: &[bool]) -> f64 {
    if bits.iter().all(|&b| b) {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase", tag = "kind"))]
pub enum ObjectiveDomain {
    /// `dim` reals, each in `[lo, hi]`.
    Real { dim: usize, lo: f64, hi: f64 },
    Bits { length: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ObjectiveKind {
    Sphere,
    OneMax,
    Needle,
}

/// A catalog entry with its known optimum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Objective {
    pub name: String,
    pub kind: ObjectiveKind,
    pub domain: ObjectiveDomain,
    pub sense: Sense,
    pub optimum: f64,
}

impl Objective {
    pub fn eval_real(&self, x: &[f64]) -> f64 {
        sphere(x)
    }

    pub fn eval_bits(&self, bits: &[bool]) -> f64 {
        match self.kind {
            ObjectiveKind::Needle => needle(bits),
            _ => onemax(bits),
        }
    }

    pub fn bounds(&self) -> Option<alloc::vec::Vec<(f64, f64)>> {
        match self.domain {
            ObjectiveDomain::Real { dim, lo, hi } => Some(alloc::vec![(lo, hi); dim]),
            ObjectiveDomain::Bits { .. } => None,
        }
    }
}

/// Looks up `sphere-D`, `onemax-L` or `needle-L`.
pub fn objective_catalog(name: &str) -> Result<Objective> {
    let unknown = || OptimizerError::UnknownObjective(name.to_string());
    let (family, size) = name.rsplit_once('-').ok_or_else(unknown)?;
    let size: usize = size.parse().map_err(|_| unknown())?;
    if size == 0 {
        return Err(unknown());
    }
    let (kind, domain, sense, optimum) = match family {
        "sphere" => (
            ObjectiveKind::Sphere,
            ObjectiveDomain::Real { dim: size, lo: -5.12, hi: 5.12 },
            Sense::Minimize,
            0.0,
        ),
        "onemax" => (ObjectiveKind::OneMax, ObjectiveDomain::Bits { length: size }, Sense::Maximize, size as f64),
        "needle" => (ObjectiveKind::Needle, ObjectiveDomain::Bits { length: size }, Sense::Maximize, 1.0),
        _ => return Err(unknown()),
    };
    Ok(Objective { name: format!("{family}-{size}"), kind, domain, sense, optimum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_values() {
        let s = objective_catalog("sphere-2").unwrap();
        assert_eq!(s.eval_real(&[0.0, 0.0]), 0.0);
        assert_eq!(s.eval_real(&[3.0, 4.0]), 25.0);
        let o = objective_catalog("onemax-4").unwrap();
        assert_eq!(o.eval_bits(&[true; 4]), 4.0);
        assert_eq!(o.optimum, 4.0);
        let n = objective_catalog("needle-3").unwrap();
        assert_eq!(n.eval_bits(&[true, false, true]), 0.0);
        assert_eq!(n.eval_bits(&[true; 3]), 1.0);
        for bad in ["rastrigin-2", "sphere", "sphere-0", "onemax-x"] {
            assert!(objective_catalog(bad).is_err(), "{bad}");
        }
    }
}
