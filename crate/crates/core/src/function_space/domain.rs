use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Range;

use super::{FunctionSpaceError, Result};

/// `X = {0, …, nx−1}` and `Y = {0, …, ny−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiniteDomain {
    nx: usize,
    ny: u32,
}

impl FiniteDomain {
    pub fn new(nx: usize, ny: u32) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(FunctionSpaceError::InvalidDomain { nx, ny });
        }
        Ok(Self { nx, ny })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> u32 {
        self.ny
    }

    /// `ny^nx`, or `None` if it does not fit in a `u64`.
    pub fn function_count(&self) -> Option<u64> {
        let exp = u32::try_from(self.nx).ok()?;
        u64::from(self.ny).checked_pow(exp)
    }

    pub fn check_budget(&self, cap: EnumerationCap) -> Result<u64> {
        match self.function_count() {
            Some(c) if c <= cap.0 => Ok(c),
            count => Err(FunctionSpaceError::BudgetExceeded {
                nx: self.nx,
                ny: self.ny,
                count,
                cap: cap.0,
            }),
        }
    }

    /// Decodes the `index`-th table in lexicographic order (base-`ny`, most
    /// significant digit at `x = 0`).
    pub fn table_at(&self, mut index: u64) -> ObjectiveTable {
        let mut values = alloc::vec![0u32; self.nx];
        let base = u64::from(self.ny);
        for slot in values.iter_mut().rev() {
            *slot = (index % base) as u32;
            index /= base;
        }
        ObjectiveTable { domain: *self, values }
    }
}

/// Upper bound on the number of tables an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnumerationCap(pub u64);

impl EnumerationCap {
    pub const DEFAULT: EnumerationCap = EnumerationCap(10_000_000);
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A total map `f: X → Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveTable {
    domain: FiniteDomain,
    values: Vec<u32>,
}

impl ObjectiveTable {
    pub fn new(domain: FiniteDomain, values: Vec<u32>) -> Result<Self> {
        if values.len() != domain.nx {
            return Err(FunctionSpaceError::LengthMismatch {
                expected: domain.nx,
                found: values.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= domain.ny) {
            return Err(FunctionSpaceError::ValueOutOfRange { index, value, ny: domain.ny });
        }
        Ok(Self { domain, values })
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// # Panics
    /// If `x` is outside the domain.
    pub fn eval(&self, x: usize) -> u32 {
        self.values[x]
    }

    /// Lexicographic index of this table within its function space.
    pub fn index(&self) -> u64 {
        let base = u64::from(self.domain.ny);
        self.values.iter().fold(0u64, |acc, &v| acc * base + u64::from(v))
    }

    /// The composed table `f∘σ`, i.e. `x ↦ f(σ(x))`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self> {
        if !is_permutation(sigma, self.domain.nx) {
            return Err(FunctionSpaceError::InvalidPermutation);
        }
        let values = sigma.iter().map(|&s| self.values[s]).collect();
        Ok(Self { domain: self.domain, values })
    }
}

pub(crate) fn is_permutation(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = alloc::vec![false; n];
    sigma.iter().all(|&s| s < n && !core::mem::replace(&mut seen[s], true))
}

/// Iterator over every table of a domain (or an index range of them), in
/// lexicographic order of `values`.
#[derive(Debug, Clone)]
pub struct FunctionSpace {
    current: ObjectiveTable,
    next: u64,
    end: u64,
}

impl FunctionSpace {
    /// Tables with lexicographic index in `range`, clipped to the space.
    pub fn range(domain: FiniteDomain, cap: EnumerationCap, range: Range<u64>) -> Result<Self> {
        let count = domain.check_budget(cap)?;
        let end = range.end.min(count);
        let start = range.start.min(end);
        Ok(Self { current: domain.table_at(start), next: start, end })
    }

    pub fn domain(&self) -> FiniteDomain {
        self.current.domain
    }

    fn advance(&mut self) {
        let ny = self.current.domain.ny;
        for v in self.current.values.iter_mut().rev() {
            *v += 1;
            if *v < ny {
                return;
            }
            *v = 0;
        }
    }
}

impl Iterator for FunctionSpace {
    type Item = ObjectiveTable;

    fn next(&mut self) -> Option<ObjectiveTable> {
        if self.next >= self.end {
            return None;
        }
        let out = self.current.clone();
        self.next += 1;
        if self.next < self.end {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (rem, Some(rem))
    }
}

/// Every table of `domain`, each exactly once, in lexicographic order.
pub fn enumerate_function_space(domain: FiniteDomain, cap: EnumerationCap) -> Result<FunctionSpace> {
    FunctionSpace::range(domain, cap, 0..u64::MAX)
}

/// An explicit, duplicate-free, non-empty set of tables over one domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSubset {
    domain: FiniteDomain,
    members: Vec<ObjectiveTable>,
}

impl FunctionSubset {
    pub fn new(members: Vec<ObjectiveTable>) -> Result<Self> {
        let domain = members.first().ok_or(FunctionSpaceError::EmptySubset)?.domain;
        let mut seen = BTreeSet::new();
        for (index, m) in members.iter().enumerate() {
            if m.domain != domain {
                return Err(FunctionSpaceError::MixedDomains);
            }
            if !seen.insert(m.values.as_slice()) {
                return Err(FunctionSpaceError::DuplicateMember { index });
            }
        }
        Ok(Self { domain, members })
    }

    /// Builds a subset from raw value arrays over `domain`.
    pub fn from_values(domain: FiniteDomain, rows: Vec<Vec<u32>>) -> Result<Self> {
        let members = rows
            .into_iter()
            .map(|v| ObjectiveTable::new(domain, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }

    /// The whole function space as an explicit subset.
    pub fn full(domain: FiniteDomain, cap: EnumerationCap) -> Result<Self> {
        let members = enumerate_function_space(domain, cap)?.collect();
        Ok(Self { domain, members })
    }

    pub fn domain(&self) -> FiniteDomain {
        self.domain
    }

    pub fn members(&self) -> &[ObjectiveTable] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, values: &[u32]) -> bool {
        self.members.iter().any(|m| m.values == values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dom(nx: usize, ny: u32) -> FiniteDomain {
        FiniteDomain::new(nx, ny).unwrap()
    }

    #[test]
    fn counts_match_powers() {
        for (nx, ny, n) in [(2, 2, 4), (4, 2, 16), (3, 3, 27)] {
            let it = enumerate_function_space(dom(nx, ny), EnumerationCap::DEFAULT).unwrap();
            assert_eq!(it.count(), n);
        }
    }

    #[test]
    fn order_is_lexicographic_and_indices_agree() {
        let tables: Vec<_> = enumerate_function_space(dom(3, 3), EnumerationCap::DEFAULT)
            .unwrap()
            .collect();
        for w in tables.windows(2) {
            assert!(w[0].values() < w[1].values());
        }
        for (i, t) in tables.iter().enumerate() {
            assert_eq!(t.index(), i as u64);
            assert_eq!(&dom(3, 3).table_at(i as u64), t);
        }
        assert_eq!(tables[0].values(), &[0, 0, 0]);
        assert_eq!(tables[26].values(), &[2, 2, 2]);
    }

    #[test]
    fn budget_error_names_the_count() {
        let err = enumerate_function_space(dom(10, 10), EnumerationCap::DEFAULT).unwrap_err();
        assert_eq!(
            err,
            FunctionSpaceError::BudgetExceeded { nx: 10, ny: 10, count: Some(10_000_000_000), cap: 10_000_000 }
        );
        let msg = alloc::format!("{err}");
        assert!(msg.contains("10000000000"));
        assert!(matches!(
            dom(100, 10).check_budget(EnumerationCap::DEFAULT),
            Err(FunctionSpaceError::BudgetExceeded { count: None, .. })
        ));
    }

    #[test]
    fn ranges_partition_the_space() {
        let d = dom(4, 2);
        let whole: Vec<_> = enumerate_function_space(d, EnumerationCap::DEFAULT).unwrap().collect();
        let mut parts = Vec::new();
        for r in [0..5, 5..11, 11..16, 16..40] {
            parts.extend(FunctionSpace::range(d, EnumerationCap::DEFAULT, r).unwrap());
        }
        assert_eq!(whole, parts);
    }

    #[test]
    fn invalid_domain_and_tables() {
        assert!(FiniteDomain::new(0, 2).is_err());
        assert!(FiniteDomain::new(2, 0).is_err());
        let d = dom(3, 2);
        assert!(matches!(
            ObjectiveTable::new(d, vec![0, 1]),
            Err(FunctionSpaceError::LengthMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(
            ObjectiveTable::new(d, vec![0, 2, 1]),
            Err(FunctionSpaceError::ValueOutOfRange { index: 1, value: 2, ny: 2 })
        ));
    }

    #[test]
    fn permutation_composition() {
        let t = ObjectiveTable::new(dom(3, 2), vec![1, 0, 0]).unwrap();
        assert_eq!(t.permuted(&[1, 0, 2]).unwrap().values(), &[0, 1, 0]);
        assert!(t.permuted(&[0, 0, 1]).is_err());
        assert!(t.permuted(&[0, 1]).is_err());
    }

    #[test]
    fn subset_validation() {
        let d = dom(2, 2);
        assert_eq!(FunctionSubset::new(vec![]), Err(FunctionSpaceError::EmptySubset));
        assert_eq!(
            FunctionSubset::from_values(d, vec![vec![1, 0], vec![1, 0]]),
            Err(FunctionSpaceError::DuplicateMember { index: 1 })
        );
        let a = ObjectiveTable::new(d, vec![1, 0]).unwrap();
        let b = ObjectiveTable::new(dom(3, 2), vec![1, 0, 0]).unwrap();
        assert_eq!(FunctionSubset::new(vec![a, b]), Err(FunctionSpaceError::MixedDomains));
    }
}
