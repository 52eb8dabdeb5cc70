use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::domain::{EnumerationCap, FiniteDomain, FunctionSpace, FunctionSubset, ObjectiveTable};
use super::policy::{Policy, SearchPolicy};
use super::trace::{run_policy, trace_distribution_full};
use super::{FunctionSpaceError, Result};

/// Attached to every equality report.
pub const DETERMINISTIC_NOTE: &str =
    "equality tested for deterministic (possibly seeded) policies only; stochastic policies are out of scope";

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NflReport {
    pub policy_a: String,
    pub policy_b: String,
    pub nx: usize,
    pub ny: u32,
    pub k: usize,
    pub functions: u64,
    pub equal: bool,
    /// Lexicographically first y-sequence with differing counts.
    pub first_divergence: Option<Vec<u32>>,
    /// Counts of the witness under `(a, b)`.
    pub divergence_counts: Option<(u64, u64)>,
    pub note: String,
}

fn require_non_revisiting<P: Policy + ?Sized>(p: &P) -> Result<()> {
    if p.revisits() {
        Err(FunctionSpaceError::RevisitingPolicy { policy: p.name() })
    } else {
        Ok(())
    }
}

/// Compares the y-trace multisets of two non-revisiting policies over the
/// whole function space.
pub fn nfl_equality<A, B>(
    policy_a: &A,
    policy_b: &B,
    domain: FiniteDomain,
    cap: EnumerationCap,
    k: usize,
) -> Result<NflReport>
where
    A: Policy + ?Sized,
    B: Policy + ?Sized,
{
    require_non_revisiting(policy_a)?;
    require_non_revisiting(policy_b)?;
    let functions = domain.check_budget(cap)?;
    let da = trace_distribution_full(policy_a, domain, cap, k)?;
    let db = trace_distribution_full(policy_b, domain, cap, k)?;
    let witness = da.first_divergence(&db);
    Ok(NflReport {
        policy_a: policy_a.name(),
        policy_b: policy_b.name(),
        nx: domain.nx(),
        ny: domain.ny(),
        k,
        functions,
        equal: witness.is_none(),
        divergence_counts: witness.as_ref().map(|(_, a, b)| (*a, *b)),
        first_divergence: witness.map(|(ys, _, _)| ys),
        note: DETERMINISTIC_NOTE.into(),
    })
}

/// Whether `f∘σ` is a member for every member `f` and permutation `σ`.
///
/// Checks closure under the transposition `(0 1)` and the cycle
/// `x ↦ x+1 mod nx`; together they generate the symmetric group.
pub fn is_closed_under_permutation(subset: &FunctionSubset) -> bool {
    let nx = subset.domain().nx();
    if nx == 1 {
        return true;
    }
    let members: BTreeSet<&[u32]> = subset.members().iter().map(|m| m.values()).collect();
    let mut image = alloc::vec![0u32; nx];
    subset.members().iter().all(|m| {
        let v = m.values();
        image.copy_from_slice(v);
        image.swap(0, 1);
        if !members.contains(image.as_slice()) {
            return false;
        }
        for x in 0..nx {
            image[x] = v[(x + 1) % nx];
        }
        members.contains(image.as_slice())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Winner {
    A,
    B,
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeLunchReport {
    pub policy_a: String,
    pub policy_b: String,
    pub k: usize,
    pub members: usize,
    pub mean_best_so_far_a: Vec<f64>,
    pub mean_best_so_far_b: Vec<f64>,
    /// Per step; decided on exact integer sums.
    pub winner_at: Vec<Winner>,
    pub subset_is_cup: bool,
    /// False only if the subset is c.u.p. yet the series differ.
    pub consistent: bool,
}

fn best_so_far_sums<'a, P, I>(policy: &P, tables: I, k: usize) -> Result<Vec<u64>>
where
    P: Policy + ?Sized,
    I: IntoIterator<Item = &'a ObjectiveTable>,
{
    let mut sums = alloc::vec![0u64; k];
    for t in tables {
        let trace = run_policy(policy, t, k)?;
        for (s, b) in sums.iter_mut().zip(trace.best_so_far()) {
            *s += u64::from(b);
        }
    }
    Ok(sums)
}

fn means(sums: &[u64], n: u64) -> Vec<f64> {
    sums.iter().map(|&s| s as f64 / n as f64).collect()
}

/// Mean best-so-far of two non-revisiting policies over `subset`.
pub fn free_lunch_report<A, B>(
    policy_a: &A,
    policy_b: &B,
    subset: &FunctionSubset,
    k: usize,
) -> Result<FreeLunchReport>
where
    A: Policy + ?Sized,
    B: Policy + ?Sized,
{
    if subset.is_empty() {
        return Err(FunctionSpaceError::EmptySubset);
    }
    require_non_revisiting(policy_a)?;
    require_non_revisiting(policy_b)?;
    let sa = best_so_far_sums(policy_a, subset.members(), k)?;
    let sb = best_so_far_sums(policy_b, subset.members(), k)?;
    let winner_at = sa
        .iter()
        .zip(&sb)
        .map(|(a, b)| match a.cmp(b) {
            core::cmp::Ordering::Greater => Winner::A,
            core::cmp::Ordering::Less => Winner::B,
            core::cmp::Ordering::Equal => Winner::Tie,
        })
        .collect();
    let n = subset.len() as u64;
    let cup = is_closed_under_permutation(subset);
    Ok(FreeLunchReport {
        policy_a: policy_a.name(),
        policy_b: policy_b.name(),
        k,
        members: subset.len(),
        mean_best_so_far_a: means(&sa, n),
        mean_best_so_far_b: means(&sb, n),
        winner_at,
        subset_is_cup: cup,
        consistent: !cup || sa == sb,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RevisitReport {
    pub nx: usize,
    pub ny: u32,
    pub k: usize,
    pub functions: u64,
    pub sweep_mean: Vec<f64>,
    pub stuck_mean: Vec<f64>,
    /// `sweep_mean − stuck_mean` per step.
    pub gap: Vec<f64>,
    /// Exact best-so-far totals behind the means.
    pub sweep_total: Vec<u64>,
    pub stuck_total: Vec<u64>,
}

/// Ascending sweep against a policy stuck at `x = 0`, over the whole space.
///
/// The sweep stops after `nx` distinct points; for `k > nx` its best-so-far
/// stays at the final value.
pub fn revisiting_demo(domain: FiniteDomain, cap: EnumerationCap, k: usize) -> Result<RevisitReport> {
    if k == 0 {
        return Err(FunctionSpaceError::InvalidHorizon { k, nx: domain.nx() });
    }
    let functions = domain.check_budget(cap)?;
    let sweep = SearchPolicy::ascending(&domain);
    let stuck = SearchPolicy::stuck_at(&domain, 0)?;
    let sweep_k = k.min(domain.nx());
    let mut sweep_total = alloc::vec![0u64; k];
    let mut stuck_total = alloc::vec![0u64; k];
    for t in FunctionSpace::range(domain, cap, 0..functions)? {
        let a = run_policy(&sweep, &t, sweep_k)?.best_so_far();
        let last = *a.last().expect("k >= 1");
        for (i, s) in sweep_total.iter_mut().enumerate() {
            *s += u64::from(a.get(i).copied().unwrap_or(last));
        }
        for (s, b) in stuck_total.iter_mut().zip(run_policy(&stuck, &t, k)?.best_so_far()) {
            *s += u64::from(b);
        }
    }
    let sweep_mean = means(&sweep_total, functions);
    let stuck_mean = means(&stuck_total, functions);
    let gap = sweep_mean.iter().zip(&stuck_mean).map(|(a, b)| a - b).collect();
    Ok(RevisitReport {
        nx: domain.nx(),
        ny: domain.ny(),
        k,
        functions,
        sweep_mean,
        stuck_mean,
        gap,
        sweep_total,
        stuck_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dom(nx: usize, ny: u32) -> FiniteDomain {
        FiniteDomain::new(nx, ny).unwrap()
    }

    const CAP: EnumerationCap = EnumerationCap::DEFAULT;

    #[test]
    fn sweeps_agree_on_full_spaces() {
        let d = dom(3, 2);
        let r = nfl_equality(&SearchPolicy::ascending(&d), &SearchPolicy::descending(&d), d, CAP, 3).unwrap();
        assert!(r.equal);
        assert_eq!(r.functions, 8);
        assert_eq!(r.first_divergence, None);

        let d = dom(4, 2);
        let shuffle = SearchPolicy::seeded_shuffle(&d, 7);
        assert!(nfl_equality(&SearchPolicy::ascending(&d), &shuffle, d, CAP, 4).unwrap().equal);
        let asc = SearchPolicy::ascending(&d);
        assert!(nfl_equality(&asc, &asc, d, CAP, 2).unwrap().equal);
    }

    #[test]
    fn revisiting_policies_are_rejected() {
        let d = dom(3, 2);
        let stuck = SearchPolicy::stuck_at(&d, 0).unwrap();
        assert!(matches!(
            nfl_equality(&SearchPolicy::ascending(&d), &stuck, d, CAP, 2),
            Err(FunctionSpaceError::RevisitingPolicy { .. })
        ));
    }

    #[test]
    fn cup_examples() {
        assert!(is_closed_under_permutation(&FunctionSubset::full(dom(2, 2), CAP).unwrap()));
        assert!(is_closed_under_permutation(
            &FunctionSubset::from_values(dom(2, 2), vec![vec![1, 1]]).unwrap()
        ));
        assert!(!is_closed_under_permutation(
            &FunctionSubset::from_values(dom(3, 2), vec![vec![1, 0, 0]]).unwrap()
        ));
        assert!(is_closed_under_permutation(
            &FunctionSubset::from_values(dom(3, 2), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
                .unwrap()
        ));
    }

    #[test]
    fn needle_free_lunch() {
        let d = dom(3, 2);
        let needle = FunctionSubset::from_values(d, vec![vec![1, 0, 0]]).unwrap();
        let r = free_lunch_report(&SearchPolicy::ascending(&d), &SearchPolicy::descending(&d), &needle, 1).unwrap();
        assert_eq!(r.mean_best_so_far_a, vec![1.0]);
        assert_eq!(r.mean_best_so_far_b, vec![0.0]);
        assert_eq!(r.winner_at, vec![Winner::A]);
        assert!(!r.subset_is_cup);
        assert!(r.consistent);
    }

    #[test]
    fn constant_subset_ties() {
        let d = dom(3, 2);
        let c = FunctionSubset::from_values(d, vec![vec![0, 0, 0]]).unwrap();
        let r = free_lunch_report(&SearchPolicy::ascending(&d), &SearchPolicy::greedy_adjacent(), &c, 3).unwrap();
        assert_eq!(r.mean_best_so_far_a, vec![0.0; 3]);
        assert_eq!(r.mean_best_so_far_b, vec![0.0; 3]);
        assert!(r.subset_is_cup);
        assert_eq!(r.winner_at, vec![Winner::Tie; 3]);
    }

    #[test]
    fn revisiting_demo_edges() {
        let r = revisiting_demo(dom(1, 2), CAP, 1).unwrap();
        assert_eq!(r.sweep_mean, r.stuck_mean);
        let r = revisiting_demo(dom(2, 1), CAP, 5).unwrap();
        assert_eq!(r.sweep_mean, vec![0.0; 5]);
        assert_eq!(r.sweep_mean, r.stuck_mean);
        assert!(revisiting_demo(dom(2, 2), CAP, 0).is_err());
    }
}
