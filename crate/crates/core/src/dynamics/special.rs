use core::f64::consts::PI;

use super::{DynamicsError, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `(n − 1)!` for integer `n` in `1..=20`, exact in `f64`.
fn integer_gamma(z: f64) -> Option<f64> {
    if (1.0..=20.0).contains(&z) && z == libm::trunc(z) {
        Some((1..z as u32).fold(1.0, |acc, i| acc * f64::from(i)))
    } else {
        None
    }
}

fn lanczos_sum(z: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64))
}

fn check_positive(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(DynamicsError::OutOfDomain { name: "z", value: z, range: "(0, inf)" })
    }
}

/// `Γ(z)` for `z > 0`: exact factorials for integers up to 20, otherwise the
/// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
pub fn gamma_function(z: f64) -> Result<f64> {
    check_positive(z)?;
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: f64) -> f64 {
    if let Some(g) = integer_gamma(z) {
        return g;
    }
    if z < 0.5 {
        return PI / (libm::sin(PI * z) * gamma_unchecked(1.0 - z));
    }
    let z = z - 1.0;
    let t = z + LANCZOS_G + 0.5;
    libm::sqrt(2.0 * PI) * libm::pow(t, z + 0.5) * libm::exp(-t) * lanczos_sum(z)
}

/// `ln Γ(z)` for `z > 0`.
pub fn ln_gamma(z: f64) -> Result<f64> {
    check_positive(z)?;
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: f64) -> f64 {
    if let Some(g) = integer_gamma(z) {
        return libm::log(g);
    }
    if z < 0.5 {
        return libm::log(PI / libm::sin(PI * z)) - ln_gamma_unchecked(1.0 - z);
    }
    let z = z - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * libm::log(2.0 * PI) + (z + 0.5) * libm::log(t) - t + libm::log(lanczos_sum(z))
}

/// Beta density `Γ(p+q)/(Γ(p)Γ(q)) u^{p−1} (1−u)^{q−1}`.
///
/// At `u ∈ {0, 1}` with the matching exponent negative the result is `+∞`.
pub fn beta_density(u: f64, p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(DynamicsError::OutOfDomain { name: "u", value: u, range: "[0, 1]" });
    }
    check_shape("p", p)?;
    check_shape("q", q)?;
    let ln_norm = ln_gamma_unchecked(p + q) - ln_gamma_unchecked(p) - ln_gamma_unchecked(q);
    Ok(libm::exp(ln_norm) * libm::pow(u, p - 1.0) * libm::pow(1.0 - u, q - 1.0))
}

fn check_shape(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(DynamicsError::OutOfDomain { name, value: v, range: "(0, inf)" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_function(5.0), Ok(24.0));
        assert_eq!(gamma_function(1.0), Ok(1.0));
        assert!(rel(gamma_function(0.5).unwrap(), libm::sqrt(PI)) < 1e-13);
        assert!(gamma_function(0.0).is_err());
        assert!(gamma_function(-1.5).is_err());
    }

    #[test]
    fn gamma_agrees_with_libm_on_grid() {
        let mut z = 0.01;
        while z <= 20.0 {
            let ours = gamma_function(z).unwrap();
            assert!(rel(ours, libm::tgamma(z)) < 1e-12, "z={z}");
            assert!(rel(ln_gamma(z).unwrap(), libm::lgamma(z)) < 1e-11 || libm::lgamma(z).abs() < 1e-3, "z={z}");
            z += 0.137;
        }
    }

    #[test]
    fn recurrence() {
        for z in [0.3, 1.7, 4.25, 11.5] {
            let a = gamma_function(z + 1.0).unwrap();
            let b = z * gamma_function(z).unwrap();
            assert!(rel(a, b) < 1e-12);
        }
    }

    #[test]
    fn beta_examples() {
        assert!((beta_density(0.5, 0.5, 0.5).unwrap() - 2.0 / PI).abs() < 1e-12);
        assert!((beta_density(0.25, 0.5, 0.5).unwrap() - 1.0 / (PI * libm::sqrt(0.1875))).abs() < 1e-12);
        for u in [0.0, 0.1, 0.5, 0.9, 1.0] {
            assert_eq!(beta_density(u, 1.0, 1.0), Ok(1.0));
        }
        assert_eq!(beta_density(0.0, 0.5, 0.5), Ok(f64::INFINITY));
        assert_eq!(beta_density(1.0, 2.0, 0.5), Ok(f64::INFINITY));
        assert_eq!(beta_density(0.0, 2.0, 2.0), Ok(0.0));
        assert!(beta_density(1.2, 0.5, 0.5).is_err());
        assert!(beta_density(0.5, 0.0, 0.5).is_err());
    }
}
