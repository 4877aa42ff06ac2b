//! Power ideals and the nilpotency class.
//!
//! `R^(1) = R` and `R^(i+1)` is the additive-subgroup closure of
//! `{a*b : a in R^(i), b in R}`, i.e. all finite sums of products of
//! `i+1` elements. The chain is monotone over a finite lattice, so it
//! either reaches `{zero}` (nilpotent, class = chain length) or
//! stabilizes at a nonzero set.

use std::collections::BTreeSet;

use super::FiniteRing;

/// Whether the power-ideal chain terminates at `{zero}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    /// Least `l` with `R^(l) = {zero}`.
    Class(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn class(&self) -> Option<usize> {
        match *self {
            Nilpotency::Class(l) => Some(l),
            Nilpotency::NotNilpotent => None,
        }
    }
}

/// The distinct prefix of the chain `R^(1) ⊋ R^(2) ⊋ …`.
///
/// Entry `i` holds `R^(i+1)`. For a nilpotent ring the last entry is
/// `{zero}`; otherwise the last entry is the nonzero set at which the
/// chain stabilized (listed once).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealChain {
    subsets: Vec<BTreeSet<usize>>,
    nilpotency: Nilpotency,
}

impl IdealChain {
    pub fn subsets(&self) -> &[BTreeSet<usize>] {
        &self.subsets
    }

    pub fn nilpotency(&self) -> Nilpotency {
        self.nilpotency
    }

    pub fn class(&self) -> Option<usize> {
        self.nilpotency.class()
    }
}

impl FiniteRing {
    /// Computes the power-ideal chain and the nilpotency class by
    /// iterating `R^(i+1) = closure(R^(i) * R)` until `{zero}` or
    /// stabilization. At most `order` iterations occur: the chain is
    /// strictly decreasing until it stops.
    pub fn power_ideals(&self) -> IdealChain {
        let zero_set: BTreeSet<usize> = [self.zero()].into();
        let mut subsets: Vec<BTreeSet<usize>> = vec![(0..self.order()).collect()];
        loop {
            let current = subsets.last().unwrap();
            if *current == zero_set {
                let l = subsets.len();
                return IdealChain {
                    subsets,
                    nilpotency: Nilpotency::Class(l),
                };
            }
            let products: BTreeSet<usize> = current
                .iter()
                .flat_map(|&a| (0..self.order()).map(move |b| self.mul(a, b)))
                .collect();
            let next = self.additive_closure(&products);
            if next == *current {
                return IdealChain {
                    subsets,
                    nilpotency: Nilpotency::NotNilpotent,
                };
            }
            subsets.push(next);
        }
    }

    /// Smallest additive subgroup containing `gens`: breadth-first
    /// closure under addition. Inverses come for free in a finite
    /// group, since -a is a repeated sum of a.
    fn additive_closure(&self, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.clone();
        set.insert(self.zero());
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let sums: Vec<usize> = set.iter().map(|&b| self.add(a, b)).collect();
            for s in sums {
                if set.insert(s) {
                    frontier.push(s);
                }
            }
        }
        set
    }
}
