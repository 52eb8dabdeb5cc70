use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use super::domain::{is_permutation, FiniteDomain};
use super::trace::Visit;
use super::{FunctionSpaceError, Result};
use crate::seed;

/// A deterministic search algorithm on a finite domain.
///
/// `propose` must be a pure function of the domain and the trace so far.
/// Implementations returning `false` from [`Policy::revisits`] promise never
/// to propose a visited point; [`run_policy`](super::run_policy) enforces it.
pub trait Policy {
    fn name(&self) -> String;

    fn revisits(&self) -> bool;

    fn propose(&self, domain: &FiniteDomain, trace: &[Visit]) -> usize;
}

impl<P: Policy + ?Sized> Policy for &P {
    fn name(&self) -> String {
        (**self).name()
    }
    fn revisits(&self) -> bool {
        (**self).revisits()
    }
    fn propose(&self, domain: &FiniteDomain, trace: &[Visit]) -> usize {
        (**self).propose(domain, trace)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum PolicyKind {
    /// Visits points in a fixed order.
    Sweep { order: Vec<usize> },
    /// Visits points in an order drawn once from `seed`.
    SeededShuffle { seed: u64, order: Vec<usize> },
    /// Starts at `nx / 2`, then extends toward the unvisited neighbour whose
    /// visited neighbour has the highest value.
    GreedyAdjacent,
    /// Always proposes `x`. Revisits on purpose.
    StuckAt { x: usize },
}

/// The built-in policy family.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchPolicy {
    id: String,
    kind: PolicyKind,
}

impl SearchPolicy {
    pub fn ascending(domain: &FiniteDomain) -> Self {
        Self {
            id: "ascending".into(),
            kind: PolicyKind::Sweep { order: (0..domain.nx()).collect() },
        }
    }

    pub fn descending(domain: &FiniteDomain) -> Self {
        Self {
            id: "descending".into(),
            kind: PolicyKind::Sweep { order: (0..domain.nx()).rev().collect() },
        }
    }

    pub fn permutation(domain: &FiniteDomain, order: Vec<usize>) -> Result<Self> {
        if !is_permutation(&order, domain.nx()) {
            return Err(FunctionSpaceError::InvalidPermutation);
        }
        let id = format!(
            "perm:{}",
            order.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        Ok(Self { id, kind: PolicyKind::Sweep { order } })
    }

    pub fn seeded_shuffle(domain: &FiniteDomain, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..domain.nx()).collect();
        order.shuffle(&mut seed::stream(seed, "seeded-shuffle"));
        Self {
            id: format!("shuffle:{seed}"),
            kind: PolicyKind::SeededShuffle { seed, order },
        }
    }

    pub fn greedy_adjacent() -> Self {
        Self { id: "greedy".into(), kind: PolicyKind::GreedyAdjacent }
    }

    pub fn stuck_at(domain: &FiniteDomain, x: usize) -> Result<Self> {
        if x >= domain.nx() {
            return Err(FunctionSpaceError::ProposalOutOfRange {
                policy: format!("stuck:{x}"),
                x,
                nx: domain.nx(),
            });
        }
        Ok(Self { id: format!("stuck:{x}"), kind: PolicyKind::StuckAt { x } })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> &PolicyKind {
        &self.kind
    }
}

impl Policy for SearchPolicy {
    fn name(&self) -> String {
        self.id.clone()
    }

    fn revisits(&self) -> bool {
        matches!(self.kind, PolicyKind::StuckAt { .. })
    }

    fn propose(&self, domain: &FiniteDomain, trace: &[Visit]) -> usize {
        match &self.kind {
            PolicyKind::Sweep { order } | PolicyKind::SeededShuffle { order, .. } => {
                // Past the end of the order there is nothing left to visit;
                // `run_policy` rejects the horizon before this is reached.
                order.get(trace.len()).copied().unwrap_or(domain.nx())
            }
            PolicyKind::GreedyAdjacent => greedy_next(domain.nx(), trace),
            PolicyKind::StuckAt { x } => *x,
        }
    }
}

fn greedy_next(nx: usize, trace: &[Visit]) -> usize {
    if trace.is_empty() {
        return nx / 2;
    }
    let mut known: Vec<Option<u32>> = alloc::vec![None; nx];
    for v in trace {
        known[v.x] = Some(v.y);
    }
    let predicted = |x: usize| -> Option<u32> {
        if known[x].is_some() {
            return None;
        }
        let left = x.checked_sub(1).and_then(|l| known[l]);
        let right = known.get(x + 1).copied().flatten();
        left.max(right)
    };
    let mut best: Option<(usize, u32)> = None;
    for x in 0..nx {
        if let Some(p) = predicted(x) {
            if best.is_none_or(|(_, b)| p > b) {
                best = Some((x, p));
            }
        }
    }
    best.map(|(x, _)| x)
        .or_else(|| known.iter().position(Option::is_none))
        .unwrap_or(nx)
}

/// Parses a policy name as used on the command line.
///
/// `ascending`, `descending`, `greedy`, `shuffle` (uses `default_seed`),
/// `shuffle:SEED`, `stuck` (x = 0), `stuck:X`, `perm:I,J,…`.
pub fn parse_policy(spec: &str, domain: &FiniteDomain, default_seed: u64) -> Result<SearchPolicy> {
    let unknown = || FunctionSpaceError::UnknownPolicy(spec.to_string());
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match (head, arg) {
        ("ascending", None) => Ok(SearchPolicy::ascending(domain)),
        ("descending", None) => Ok(SearchPolicy::descending(domain)),
        ("greedy", None) => Ok(SearchPolicy::greedy_adjacent()),
        ("shuffle", None) => Ok(SearchPolicy::seeded_shuffle(domain, default_seed)),
        ("shuffle", Some(s)) => {
            let seed = s.trim().parse().map_err(|_| unknown())?;
            Ok(SearchPolicy::seeded_shuffle(domain, seed))
        }
        ("stuck", None) => SearchPolicy::stuck_at(domain, 0),
        ("stuck", Some(s)) => SearchPolicy::stuck_at(domain, s.trim().parse().map_err(|_| unknown())?),
        ("perm", Some(s)) => {
            let order = s
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<core::result::Result<Vec<_>, _>>()
                .map_err(|_| unknown())?;
            SearchPolicy::permutation(domain, order)
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    fn visits(pairs: &[(usize, u32)]) -> Vec<Visit> {
        pairs.iter().map(|&(x, y)| Visit { x, y }).collect()
    }

    #[test]
    fn shuffle_is_a_seeded_permutation() {
        let d = FiniteDomain::new(6, 2).unwrap();
        let a = SearchPolicy::seeded_shuffle(&d, 7);
        let b = SearchPolicy::seeded_shuffle(&d, 7);
        assert_eq!(a, b);
        let PolicyKind::SeededShuffle { order, .. } = a.kind() else { panic!() };
        assert!(is_permutation(order, 6));
    }

    #[test]
    fn greedy_follows_the_higher_neighbour() {
        let d = FiniteDomain::new(5, 3).unwrap();
        let g = SearchPolicy::greedy_adjacent();
        assert_eq!(g.propose(&d, &[]), 2);
        // Only one visited point: both neighbours tie, lower index wins.
        assert_eq!(g.propose(&d, &visits(&[(2, 1)])), 1);
        // Left end has value 0, right end value 2: go right.
        assert_eq!(g.propose(&d, &visits(&[(2, 2), (1, 0)])), 3);
        assert_eq!(g.propose(&d, &visits(&[(2, 0), (1, 2)])), 0);
        // Left edge exhausted: only the right neighbour remains.
        assert_eq!(g.propose(&d, &visits(&[(2, 0), (1, 2), (0, 2)])), 3);
    }

    #[test]
    fn parse_names() {
        let d = FiniteDomain::new(4, 2).unwrap();
        assert_eq!(parse_policy("ascending", &d, 0).unwrap(), SearchPolicy::ascending(&d));
        assert_eq!(parse_policy("shuffle", &d, 9).unwrap(), SearchPolicy::seeded_shuffle(&d, 9));
        assert_eq!(parse_policy("shuffle:3", &d, 9).unwrap().id(), "shuffle:3");
        assert_eq!(parse_policy("perm:3,1,0,2", &d, 0).unwrap().id(), "perm:3,1,0,2");
        assert!(parse_policy("perm:0,0,1,2", &d, 0).is_err());
        assert!(parse_policy("stuck:9", &d, 0).is_err());
        assert!(parse_policy("stuck", &d, 0).unwrap().revisits());
        assert_eq!(
            parse_policy("bogus", &d, 0),
            Err(FunctionSpaceError::UnknownPolicy("bogus".into()))
        );
    }
}
