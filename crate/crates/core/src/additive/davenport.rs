//! Exhaustive Davenport constant for small abelian p-groups.
//!
//! D(G) is the least d such that every length-d sequence over G has a
//! nonempty zero-sum subsequence; equivalently one more than the longest
//! zero-sum-free sequence. For p-groups that length is known to equal
//! Σ(p^{α_j}−1) exactly, which is why [`find_small_subset`] may stop at
//! `k` times that sum — this search re-derives the value from nothing
//! but the group table, so the two can be checked against each other.
//!
//! [`find_small_subset`]: super::SetFunction::find_small_subset

use super::{AbelianPGroup, AdditiveError};

/// Largest group order the subset-sum bitmask (one bit per element)
/// supports.
const MAX_ORDER: u128 = 64;

/// Computes D(G) by depth-first search over nondecreasing sequences of
/// nonzero elements, tracking the set of nonempty subsequence sums as a
/// bitmask over element indices. A branch dies when the zero bit
/// appears; the answer is the deepest surviving node plus one.
pub fn davenport_constant(group: &AbelianPGroup) -> Result<u64, AdditiveError> {
    let order = group.order();
    if order > MAX_ORDER {
        return Err(AdditiveError::GroupTooLarge(order));
    }
    let m = order as usize;
    let mut add = vec![0usize; m * m];
    for a in 0..m {
        let ea = group.element_at(a);
        for b in 0..m {
            add[a * m + b] = group.index_of(&group.add(&ea, &group.element_at(b)));
        }
    }
    // every zero-sum-free sequence gains a fresh sum per element, so the
    // true depth is at most Σ(p^{α_j}−1); one extra level would expose a
    // counterexample as a too-large result rather than stalling the search
    let depth_cap = group.zero_sum_free_bound() + 1;
    let mut longest = 0usize;

    struct Search<'a> {
        add: &'a [usize],
        m: usize,
        depth_cap: usize,
        longest: &'a mut usize,
    }

    impl Search<'_> {
        /// `sums` has bit s set iff some nonempty subsequence sums to
        /// the element with index s.
        fn extend(&mut self, first: usize, sums: u64, len: usize) {
            *self.longest = (*self.longest).max(len);
            if len == self.depth_cap {
                return;
            }
            for g in first..self.m {
                let mut next = sums | (1 << g);
                for s in 0..self.m {
                    if sums >> s & 1 == 1 {
                        next |= 1 << self.add[s * self.m + g];
                    }
                }
                if next & 1 == 0 {
                    self.extend(g, next, len + 1);
                }
            }
        }
    }

    Search {
        add: &add,
        m,
        depth_cap,
        longest: &mut longest,
    }
    .extend(1, 0, 0);

    Ok(longest as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: u64, alphas: &[u32]) -> u64 {
        davenport_constant(&AbelianPGroup::new(p, alphas).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_groups_have_davenport_equal_to_order() {
        assert_eq!(d(2, &[1]), 2);
        assert_eq!(d(2, &[2]), 4);
        assert_eq!(d(2, &[3]), 8);
        assert_eq!(d(3, &[1]), 3);
        assert_eq!(d(3, &[2]), 9);
        assert_eq!(d(5, &[1]), 5);
    }

    #[test]
    fn elementary_and_mixed_two_groups() {
        assert_eq!(d(2, &[1, 1]), 3);
        assert_eq!(d(2, &[1, 1, 1]), 4);
        assert_eq!(d(2, &[1, 2]), 5);
        assert_eq!(d(2, &[2, 2]), 7);
        assert_eq!(d(3, &[1, 1]), 5);
    }

    #[test]
    fn results_match_the_closed_form_for_p_groups() {
        let groups: [(u64, &[u32]); 5] =
            [(2, &[1, 1, 2]), (2, &[4]), (3, &[1, 2]), (5, &[1, 1]), (7, &[1])];
        for (p, alphas) in groups {
            let g = AbelianPGroup::new(p, alphas).unwrap();
            assert_eq!(
                davenport_constant(&g).unwrap(),
                g.zero_sum_free_bound() as u64 + 1,
                "p={p} alphas={alphas:?}"
            );
        }
    }

    #[test]
    fn oversized_groups_are_refused() {
        let g = AbelianPGroup::new(2, &[7]).unwrap(); // order 128
        assert_eq!(
            davenport_constant(&g).unwrap_err(),
            AdditiveError::GroupTooLarge(128)
        );
    }
}
