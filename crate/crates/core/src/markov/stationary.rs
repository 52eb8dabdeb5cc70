use alloc::vec::Vec;

use super::matrix::TransitionMatrix;
use super::{MarkovError, Result};

/// Required `‖πP − π‖∞` for a returned stationary distribution.
pub const STATIONARY_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegularityReport {
    pub regular: bool,
    /// Smallest `k` with `P^k > 0` entrywise.
    pub witness_power: Option<usize>,
    /// Powers checked; `regular = false` means "not within this horizon".
    pub max_power: usize,
}

impl TransitionMatrix {
    /// `s² + 1`, enough to certify primitivity of an `s`-state chain.
    pub fn default_regularity_horizon(&self) -> usize {
        self.size() * self.size() + 1
    }
}

/// Finds the smallest `k ≤ max_power` with `P^k` strictly positive.
///
/// Works on the zero pattern of `P`, so underflow in real-valued powers
/// cannot hide or invent positive entries.
pub fn is_regular(p: &TransitionMatrix, max_power: usize) -> RegularityReport {
    let s = p.size();
    let base: Vec<bool> = p.as_row_major().iter().map(|&v| v > 0.0).collect();
    let mut pattern = base.clone();
    for k in 1..=max_power {
        if pattern.iter().all(|&b| b) {
            return RegularityReport { regular: true, witness_power: Some(k), max_power };
        }
        let mut next = alloc::vec![false; s * s];
        for i in 0..s {
            for m in (0..s).filter(|&m| pattern[i * s + m]) {
                for j in 0..s {
                    next[i * s + j] |= base[m * s + j];
                }
            }
        }
        if next == pattern {
            break;
        }
        pattern = next;
    }
    RegularityReport { regular: false, witness_power: None, max_power }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StationaryDistribution {
    pub pi: Vec<f64>,
    /// `‖πP − π‖∞`.
    pub residual: f64,
}

fn residual(p: &TransitionMatrix, pi: &[f64]) -> f64 {
    p.left_mul(pi).iter().zip(pi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Solves `π = πP`, `Σπ = 1` for a regular chain.
///
/// The system `(Pᵀ − I)π = 0` with its last equation replaced by the
/// normalization is solved by Gaussian elimination with partial pivoting,
/// followed by one step of iterative refinement.
pub fn stationary_distribution(p: &TransitionMatrix) -> Result<StationaryDistribution> {
    let horizon = p.default_regularity_horizon();
    if !is_regular(p, horizon).regular {
        return Err(MarkovError::NotRegular { max_power: horizon });
    }
    let s = p.size();
    let mut a = alloc::vec![0.0; s * s];
    for i in 0..s {
        for j in 0..s {
            a[i * s + j] = p.get(j, i) - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..s {
        a[(s - 1) * s + j] = 1.0;
    }
    let mut rhs = alloc::vec![0.0; s];
    rhs[s - 1] = 1.0;
    let mut pi = solve(s, &a, &rhs)?;

    // r = b − A·π, then π += A⁻¹ r
    let r: Vec<f64> = (0..s)
        .map(|i| rhs[i] - (0..s).map(|j| a[i * s + j] * pi[j]).sum::<f64>())
        .collect();
    let delta = solve(s, &a, &r)?;
    for (x, d) in pi.iter_mut().zip(delta) {
        *x += d;
    }
    for x in pi.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let total: f64 = pi.iter().sum();
    for x in pi.iter_mut() {
        *x /= total;
    }
    let residual = residual(p, &pi);
    if residual > STATIONARY_RESIDUAL {
        return Err(MarkovError::Residual(residual));
    }
    Ok(StationaryDistribution { pi, residual })
}

fn solve(s: usize, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..s {
        let pivot = (col..s)
            .max_by(|&i, &j| m[i * s + col].abs().total_cmp(&m[j * s + col].abs()))
            .expect("non-empty range");
        if m[pivot * s + col].abs() < 1e-300 {
            return Err(MarkovError::Singular);
        }
        if pivot != col {
            for j in 0..s {
                m.swap(col * s + j, pivot * s + j);
            }
            x.swap(col, pivot);
        }
        let d = m[col * s + col];
        for i in col + 1..s {
            let f = m[i * s + col] / d;
            if f == 0.0 {
                continue;
            }
            for j in col..s {
                m[i * s + j] -= f * m[col * s + j];
            }
            x[i] -= f * x[col];
        }
    }
    for col in (0..s).rev() {
        let tail: f64 = (col + 1..s).map(|j| m[col * s + j] * x[j]).sum();
        x[col] = (x[col] - tail) / m[col * s + col];
    }
    Ok(x)
}

/// Iterates `v ← vP` from `start` (uniform if `None`) until successive
/// vectors differ by at most `tol` in the max norm.
pub fn stationary_by_power_iteration(
    p: &TransitionMatrix,
    start: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    let s = p.size();
    let mut v: Vec<f64> = match start {
        Some(v) => {
            let total: f64 = v.iter().sum();
            v.iter().map(|x| x / total).collect()
        }
        None => alloc::vec![1.0 / s as f64; s],
    };
    for _ in 0..max_iter {
        let next = p.left_mul(&v);
        let diff = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if diff <= tol {
            return Ok(v);
        }
    }
    Err(MarkovError::NoConvergence { iterations: max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(rows: Vec<Vec<f64>>) -> TransitionMatrix {
        TransitionMatrix::new(rows).unwrap()
    }

    #[test]
    fn regularity_examples() {
        let r = is_regular(&TransitionMatrix::identity(3), 10);
        assert_eq!(r, RegularityReport { regular: false, witness_power: None, max_power: 10 });
        assert!(!is_regular(&m(vec![vec![0.0, 1.0], vec![1.0, 0.0]]), 5).regular);
        let r = is_regular(&m(vec![vec![0.5, 0.5], vec![0.5, 0.5]]), 1);
        assert_eq!(r.witness_power, Some(1));
        // Needs two steps.
        let r = is_regular(&m(vec![vec![0.0, 1.0], vec![0.5, 0.5]]), 5);
        assert_eq!(r.witness_power, Some(2));
    }

    #[test]
    fn stationary_examples() {
        let s = stationary_distribution(&m(vec![vec![0.5, 0.5], vec![0.5, 0.5]])).unwrap();
        assert!((s.pi[0] - 0.5).abs() < 1e-15 && (s.pi[1] - 0.5).abs() < 1e-15);
        let s = stationary_distribution(&m(vec![vec![0.9, 0.1], vec![0.2, 0.8]])).unwrap();
        assert!((s.pi[0] - 2.0 / 3.0).abs() < 1e-10);
        assert!((s.pi[1] - 1.0 / 3.0).abs() < 1e-10);
        assert!(s.residual <= STATIONARY_RESIDUAL);
        assert_eq!(
            stationary_distribution(&TransitionMatrix::identity(2)),
            Err(MarkovError::NotRegular { max_power: 5 })
        );
    }

    #[test]
    fn power_iteration_matches() {
        let p = m(vec![vec![0.9, 0.1], vec![0.2, 0.8]]);
        let v = stationary_by_power_iteration(&p, Some(&[1.0, 0.0]), 1e-14, 10_000).unwrap();
        assert!((v[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            stationary_by_power_iteration(&p, Some(&[1.0, 0.0]), 0.0, 3),
            Err(MarkovError::NoConvergence { iterations: 3 })
        ));
    }
}
