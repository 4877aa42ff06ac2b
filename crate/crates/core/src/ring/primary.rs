//! Primary decomposition of a finite ring.
//!
//! For `m = p_1^{b_1} ··· p_s^{b_s}`, the sets `R_i = {r : p_i^{b_i}·r = 0}`
//! are two-sided ideals with `|R_i| = p_i^{b_i}`, and `R = R_1 ⊕ … ⊕ R_s`.
//! The projection onto `R_i` is integer scaling `r ↦ a_i·r`, where `a_i`
//! is the CRT multiplier with `a_i ≡ 1 (mod p_i^{b_i})` and
//! `a_i ≡ 0 (mod m/p_i^{b_i})` — valid because `m·r = 0` for every `r`.

use std::collections::BTreeSet;

use super::{FiniteRing, RingError};

/// One prime-power block `R_i` together with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub prime: u64,
    pub exponent: u32,
    /// Element indices of `R_i`, i.e. the annihilator of `p^exponent`.
    pub members: BTreeSet<usize>,
    /// `projection[r] = a_i * r`; lands in `members` for every `r`.
    pub projection: Vec<usize>,
}

impl PrimaryComponent {
    /// `p^exponent = |R_i|`.
    pub fn block_order(&self) -> usize {
        (self.prime as usize).pow(self.exponent)
    }
}

/// All primary components, ordered by increasing prime.
///
/// An order-1 ring decomposes into zero components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    components: Vec<PrimaryComponent>,
    multipliers: Vec<u64>,
}

impl PrimaryDecomposition {
    pub fn components(&self) -> &[PrimaryComponent] {
        &self.components
    }

    /// The CRT integers `a_i` realizing the projections, in component order.
    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl FiniteRing {
    /// Splits the ring into its prime-power blocks with projections.
    ///
    /// Fails with `InternalInconsistency` only if a computed block has the
    /// wrong size, which cannot happen for tables that passed validation.
    pub fn primary_decomposition(&self) -> Result<PrimaryDecomposition, RingError> {
        let m = self.order() as u64;
        let mut components = Vec::new();
        let mut multipliers = Vec::new();
        for (p, b) in factorize(m) {
            let q = p.pow(b);
            let members: BTreeSet<usize> = (0..self.order())
                .filter(|&r| self.scalar_mul(q as u128, r) == self.zero())
                .collect();
            if members.len() != q as usize {
                return Err(RingError::InternalInconsistency(format!(
                    "annihilator of {q} has {} elements, expected {q}",
                    members.len()
                )));
            }
            let cofactor = m / q;
            let a = (0..m)
                .find(|&x| x % q == 1 % q && x % cofactor == 0)
                .ok_or_else(|| {
                    RingError::InternalInconsistency(format!(
                        "no multiplier for prime power {q} in order {m}"
                    ))
                })?;
            let projection: Vec<usize> = (0..self.order())
                .map(|r| self.scalar_mul(a as u128, r))
                .collect();
            if let Some(&bad) = projection.iter().find(|x| !members.contains(x)) {
                return Err(RingError::InternalInconsistency(format!(
                    "projection for {q} leaves its block at element {bad}"
                )));
            }
            components.push(PrimaryComponent {
                prime: p,
                exponent: b,
                members,
                projection,
            });
            multipliers.push(a);
        }
        Ok(PrimaryDecomposition {
            components,
            multipliers,
        })
    }
}

/// Prime factorization by trial division, ascending primes.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut b = 0;
            while n % p == 0 {
                n /= p;
                b += 1;
            }
            out.push((p, b));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
