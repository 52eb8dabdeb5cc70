use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;
use core::ops::Range;

use super::domain::{EnumerationCap, FiniteDomain, FunctionSpace, FunctionSubset, ObjectiveTable};
use super::policy::Policy;
use super::{FunctionSpaceError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Visit {
    pub x: usize,
    pub y: u32,
}

/// The time-ordered visited set `Q_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trace {
    entries: Vec<Visit>,
}

impl Trace {
    pub fn entries(&self) -> &[Visit] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn xs(&self) -> Vec<usize> {
        self.entries.iter().map(|v| v.x).collect()
    }

    pub fn ys(&self) -> Vec<u32> {
        self.entries.iter().map(|v| v.y).collect()
    }

    /// Running maximum of the y-entries.
    pub fn best_so_far(&self) -> Vec<u32> {
        self.entries
            .iter()
            .scan(0u32, |best, v| {
                *best = (*best).max(v.y);
                Some(*best)
            })
            .collect()
    }
}

/// Runs `policy` on `table` for `k` evaluations.
///
/// Non-revisiting policies need `1 ≤ k ≤ nx`; revisiting ones only `k ≥ 1`.
pub fn run_policy<P: Policy + ?Sized>(policy: &P, table: &ObjectiveTable, k: usize) -> Result<Trace> {
    let domain = table.domain();
    let nx = domain.nx();
    let revisits = policy.revisits();
    if k == 0 || (!revisits && k > nx) {
        return Err(FunctionSpaceError::InvalidHorizon { k, nx });
    }
    let mut entries = Vec::with_capacity(k);
    let mut visited = alloc::vec![false; nx];
    for step in 0..k {
        let x = policy.propose(&domain, &entries);
        if x >= nx {
            return Err(FunctionSpaceError::ProposalOutOfRange { policy: policy.name(), x, nx });
        }
        if visited[x] && !revisits {
            return Err(FunctionSpaceError::RevisitViolation { policy: policy.name(), step, x });
        }
        visited[x] = true;
        entries.push(Visit { x, y: table.eval(x) });
    }
    Ok(Trace { entries })
}

/// Multiset of length-`k` y-sequences, one per function run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceDistribution {
    k: usize,
    counts: BTreeMap<Vec<u32>, u64>,
}

impl TraceDistribution {
    pub fn new(k: usize) -> Self {
        Self { k, counts: BTreeMap::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.counts
    }

    pub fn count(&self, ys: &[u32]) -> u64 {
        self.counts.get(ys).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn insert(&mut self, ys: Vec<u32>) {
        *self.counts.entry(ys).or_insert(0) += 1;
    }

    /// Multiset union.
    pub fn merge(&mut self, other: TraceDistribution) {
        for (ys, c) in other.counts {
            match self.counts.entry(ys) {
                Entry::Occupied(mut e) => *e.get_mut() += c,
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
    }

    /// The lexicographically first y-sequence whose counts differ, with the
    /// two counts.
    pub fn first_divergence(&self, other: &TraceDistribution) -> Option<(Vec<u32>, u64, u64)> {
        let mut a = self.counts.iter().peekable();
        let mut b = other.counts.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some((ka, &ca)), None) => return Some(((*ka).clone(), ca, 0)),
                (None, Some((kb, &cb))) => return Some(((*kb).clone(), 0, cb)),
                (Some((ka, &ca)), Some((kb, &cb))) => match ka.cmp(kb) {
                    core::cmp::Ordering::Less => return Some(((*ka).clone(), ca, 0)),
                    core::cmp::Ordering::Greater => return Some(((*kb).clone(), 0, cb)),
                    core::cmp::Ordering::Equal => {
                        if ca != cb {
                            return Some(((*ka).clone(), ca, cb));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

fn accumulate<P, I>(policy: &P, tables: I, k: usize) -> Result<TraceDistribution>
where
    P: Policy + ?Sized,
    I: IntoIterator<Item = ObjectiveTable>,
{
    let mut dist = TraceDistribution::new(k);
    for t in tables {
        dist.insert(run_policy(policy, &t, k)?.ys());
    }
    Ok(dist)
}

/// Trace distribution of `policy` over an explicit subset.
pub fn trace_distribution<P: Policy + ?Sized>(
    policy: &P,
    subset: &FunctionSubset,
    k: usize,
) -> Result<TraceDistribution> {
    accumulate(policy, subset.members().iter().cloned(), k)
}

/// Trace distribution of `policy` over the whole function space.
pub fn trace_distribution_full<P: Policy + ?Sized>(
    policy: &P,
    domain: FiniteDomain,
    cap: EnumerationCap,
    k: usize,
) -> Result<TraceDistribution> {
    trace_distribution_range(policy, domain, cap, 0..u64::MAX, k)
}

/// Trace distribution over the tables with lexicographic index in `range`.
/// Distributions of disjoint ranges merge into the full-space result.
pub fn trace_distribution_range<P: Policy + ?Sized>(
    policy: &P,
    domain: FiniteDomain,
    cap: EnumerationCap,
    range: Range<u64>,
    k: usize,
) -> Result<TraceDistribution> {
    accumulate(policy, FunctionSpace::range(domain, cap, range)?, k)
}
