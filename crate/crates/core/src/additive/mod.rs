//! Zero-sum combinatorics in finite abelian p-groups.
//!
//! The solver's support bound rests on one statement: a function φ from
//! the small subsets of a ground set H into a p-group G can be matched,
//! in total sum, by a subset U of size at most k·Σ(p^{α_j}−1). This
//! module implements that extraction ([`SetFunction::find_small_subset`]),
//! a Davenport-constant brute force that cross-checks the bound's group
//! constant, the construction showing the bound is exact, and a checker
//! for the Chevalley-type theorem the extraction's proof leans on.

mod brink;
mod davenport;

pub use brink::{brink_check, BrinkInstance, BrinkPoly, BrinkVerdict};
pub use davenport::davenport_constant;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ring::is_prime;
use crate::solver::next_combination;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdditiveError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group needs at least one summand, every exponent positive")]
    InvalidGroup,
    #[error("group order {0} exceeds the exhaustive-search cap of 64")]
    GroupTooLarge(u128),
    #[error("ground set of size {got} cannot hold {need} disjoint blocks of size {k}")]
    GroundSetTooSmall { got: usize, need: usize, k: usize },
    #[error("no proper subset matches the total above the bound — this contradicts the small-subset theorem and signals a bug")]
    DescentStuck,
    #[error("set {index} is not injective modulo {p}")]
    InjectivityViolated { index: usize, p: u64 },
    #[error("{size} tuples exceed the enumeration cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("instance file: {0}")]
    Format(String),
}

/// `Z/p^{α_1} ⊕ … ⊕ Z/p^{α_r}`, exponents nondecreasing. Elements are
/// coordinate vectors, entry j reduced mod `p^{α_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPGroup {
    p: u64,
    alphas: Vec<u32>,
    moduli: Vec<u64>,
}

pub type GroupElem = Vec<u64>;

impl AbelianPGroup {
    pub fn new(p: u64, alphas: &[u32]) -> Result<Self, AdditiveError> {
        if !is_prime(p) {
            return Err(AdditiveError::NotPrime(p));
        }
        if alphas.is_empty() || alphas.contains(&0) {
            return Err(AdditiveError::InvalidGroup);
        }
        let mut alphas = alphas.to_vec();
        alphas.sort_unstable();
        let moduli = alphas
            .iter()
            .map(|&a| p.checked_pow(a).ok_or(AdditiveError::InvalidGroup))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbelianPGroup { p, alphas, moduli })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.rank()]
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElem {
        self.moduli
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&m, (&x, &y))| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> GroupElem {
        self.moduli
            .iter()
            .zip(a)
            .map(|(&m, &x)| (m - x) % m)
            .collect()
    }

    /// Unit vector `e_j` (0-indexed summand).
    pub fn generator(&self, j: usize) -> GroupElem {
        let mut e = self.zero();
        e[j] = 1;
        e
    }

    /// `Σ_j (p^{α_j} − 1)`: the exact maximum length of a zero-sum-free
    /// sequence (Olson), and the group factor of the small-subset bound.
    pub fn zero_sum_free_bound(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize - 1).sum()
    }

    /// Mixed-radix index, first coordinate most significant; the zero
    /// vector maps to 0.
    pub fn index_of(&self, a: &[u64]) -> usize {
        self.moduli
            .iter()
            .zip(a)
            .fold(0usize, |acc, (&m, &x)| acc * m as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElem {
        let mut e = vec![0; self.rank()];
        for j in (0..self.rank()).rev() {
            let m = self.moduli[j] as usize;
            e[j] = (idx % m) as u64;
            idx /= m;
        }
        e
    }
}

/// A map φ from the subsets of `{0, …, ground_size−1}` of size ≤ k into
/// a p-group; unlisted subsets map to zero. Keys are sorted index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    group: AbelianPGroup,
    ground_size: usize,
    k: usize,
    table: BTreeMap<Vec<usize>, GroupElem>,
}

impl SetFunction {
    pub fn new(group: AbelianPGroup, ground_size: usize, k: usize) -> Self {
        SetFunction {
            group,
            ground_size,
            k,
            table: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &AbelianPGroup {
        &self.group
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Stored (subset, value) pairs, zero values omitted.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &[u64])> {
        self.table.iter().map(|(k, v)| (k.as_slice(), v.as_slice()))
    }

    /// Assigns φ(key) = value. The key is deduplicated and sorted; a
    /// zero value erases the entry (absent means zero).
    pub fn set(&mut self, key: &[usize], value: GroupElem) {
        let canonical: BTreeSet<usize> = key.iter().copied().collect();
        assert!(
            canonical.len() <= self.k,
            "key size {} exceeds the cap k = {}",
            canonical.len(),
            self.k
        );
        assert!(
            canonical.iter().all(|&i| i < self.ground_size),
            "key indices must lie in the ground set"
        );
        let canonical: Vec<usize> = canonical.into_iter().collect();
        if self.group.is_zero(&value) {
            self.table.remove(&canonical);
        } else {
            self.table.insert(canonical, value);
        }
    }

    /// `φ̄(U) = Σ φ(X)` over the stored keys `X ⊆ U`.
    pub fn phi_bar(&self, u: &BTreeSet<usize>) -> GroupElem {
        let mut acc = self.group.zero();
        for (key, value) in &self.table {
            if key.iter().all(|i| u.contains(i)) {
                acc = self.group.add(&acc, value);
            }
        }
        acc
    }

    /// `φ̄(H)`: the sum of every stored value.
    pub fn total(&self) -> GroupElem {
        let mut acc = self.group.zero();
        for value in self.table.values() {
            acc = self.group.add(&acc, value);
        }
        acc
    }

    fn ground_set(&self) -> BTreeSet<usize> {
        (0..self.ground_size).collect()
    }

    /// Extracts a subset U with `|U| ≤ k·Σ(p^{α_j}−1)` and
    /// `φ̄(U) = φ̄(H)` by descending through proper subsets: while the
    /// current set exceeds the bound, the first proper subset (by
    /// decreasing size, then lexicographic order) matching the total
    /// becomes the next set. The theorem guarantees each step succeeds,
    /// so `DescentStuck` signals an implementation bug, never an input
    /// condition.
    pub fn find_small_subset(&self) -> Result<BTreeSet<usize>, AdditiveError> {
        let bound = self.k * self.group.zero_sum_free_bound();
        let target = self.total();
        let mut current: Vec<usize> = self.ground_set().into_iter().collect();
        while current.len() > bound {
            let next = self
                .descend_once(&current, &target)
                .ok_or(AdditiveError::DescentStuck)?;
            current = next;
        }
        Ok(current.into_iter().collect())
    }

    /// First proper subset of `current` with φ̄ = target, searching by
    /// decreasing size, then lexicographically within a size.
    fn descend_once(&self, current: &[usize], target: &[u64]) -> Option<Vec<usize>> {
        for size in (0..current.len()).rev() {
            let mut comb: Vec<usize> = (0..size).collect();
            loop {
                let subset: Vec<usize> = comb.iter().map(|&i| current[i]).collect();
                let as_set: BTreeSet<usize> = subset.iter().copied().collect();
                if self.phi_bar(&as_set) == target {
                    return Some(subset);
                }
                if !next_combination(&mut comb, current.len()) {
                    break;
                }
            }
        }
        None
    }

    /// Exhaustively finds one smallest subset matching the total
    /// (smallest size, lexicographically first within it). Always
    /// succeeds since H itself matches. Cost 2^|H|.
    pub fn minimal_matching_subset(&self) -> (BTreeSet<usize>, usize) {
        let target = self.total();
        let n = self.ground_size;
        for size in 0..=n {
            let mut comb: Vec<usize> = (0..size).collect();
            loop {
                let as_set: BTreeSet<usize> = comb.iter().copied().collect();
                if self.phi_bar(&as_set) == target {
                    return (as_set, size);
                }
                if !next_combination(&mut comb, n) {
                    break;
                }
            }
        }
        unreachable!("the full ground set matches its own total");
    }
}

/// The instance on which the small-subset bound is exact: pairwise
/// disjoint k-blocks `H_{j,l}` (one per `1 ≤ l < p^{α_j}`, consecutive
/// indices) each carrying the generator `e_j`, zero elsewhere. Every U
/// matching the total must contain all the blocks, so the minimal match
/// has size exactly `k·Σ(p^{α_j}−1)`.
pub fn tightness_instance(
    group: &AbelianPGroup,
    k: usize,
    ground_size: usize,
) -> Result<SetFunction, AdditiveError> {
    assert!(k >= 1, "blocks must be nonempty");
    let blocks = group.zero_sum_free_bound();
    let need = k * blocks;
    if ground_size < need {
        return Err(AdditiveError::GroundSetTooSmall {
            got: ground_size,
            need: blocks,
            k,
        });
    }
    let mut phi = SetFunction::new(group.clone(), ground_size, k);
    let mut next = 0;
    for j in 0..group.rank() {
        for _ in 1..group.moduli[j] {
            let block: Vec<usize> = (next..next + k).collect();
            next += k;
            phi.set(&block, group.generator(j));
        }
    }
    Ok(phi)
}
