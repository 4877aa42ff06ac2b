//! Finite rings presented by addition and multiplication tables.
//!
//! Elements are the indices `0..m-1`; all semantics live in the tables.
//! Index 0 is not required to be the zero element: the additive identity
//! is located during validation, as is the table of additive inverses.

mod ideal;
mod io;
mod primary;

pub use ideal::{IdealChain, Nilpotency};
pub use primary::{PrimaryComponent, PrimaryDecomposition};

use thiserror::Error;

/// Witness-carrying violations of the ring axioms, plus table-shape and
/// constructor errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("table is not {expected}x{expected} with entries in 0..{expected}")]
    MalformedTable { expected: usize },
    #[error("addition has no identity element")]
    NoAdditiveIdentity,
    #[error("addition is not commutative: add({a},{b}) != add({b},{a})")]
    AddNotCommutative { a: usize, b: usize },
    #[error("addition is not associative at ({a},{b},{c})")]
    AddNotAssociative { a: usize, b: usize, c: usize },
    #[error("element {a} has no additive inverse")]
    NotInvertible { a: usize },
    #[error("multiplication is not associative at ({a},{b},{c})")]
    NotAssociativeMul { a: usize, b: usize, c: usize },
    #[error("{side} distributivity fails at ({a},{b},{c})")]
    NotDistributive {
        side: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ring order must be positive")]
    EmptyRing,
    #[error("matrix dimension must be at least 2")]
    DimensionTooSmall,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("primary decomposition inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("ring file: {0}")]
    Format(String),
}

/// A finite ring of order `m`, elements indexed `0..m-1`.
///
/// Construction always runs the exhaustive `O(m^3)` axiom check, so a
/// value of this type is a valid ring. Immutable after construction and
/// safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    /// Row-major m*m addition table.
    add: Vec<usize>,
    /// Row-major m*m multiplication table.
    mul: Vec<usize>,
    /// Index of the additive identity.
    zero: usize,
    /// neg[i] is the unique j with add(i,j) = zero.
    neg: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteRing {
    /// Checks every ring axiom on the given tables and derives the zero
    /// element and the inverse table. Rows are indexed by the left operand.
    pub fn validate(
        order: usize,
        add_rows: &[Vec<usize>],
        mul_rows: &[Vec<usize>],
    ) -> Result<Self, RingError> {
        Self::validate_with_labels(order, add_rows, mul_rows, None)
    }

    /// As [`FiniteRing::validate`], attaching one label per element.
    pub fn validate_with_labels(
        order: usize,
        add_rows: &[Vec<usize>],
        mul_rows: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, RingError> {
        if order == 0 {
            return Err(RingError::EmptyRing);
        }
        let add = flatten_table(order, add_rows)?;
        let mul = flatten_table(order, mul_rows)?;
        if let Some(ref l) = labels {
            if l.len() != order {
                return Err(RingError::LabelCount {
                    expected: order,
                    got: l.len(),
                });
            }
            // labels are single whitespace-separated tokens in the file format
            if let Some(bad) = l.iter().find(|s| s.is_empty() || s.chars().any(char::is_whitespace)) {
                return Err(RingError::Format(format!(
                    "label `{bad}` is empty or contains whitespace"
                )));
            }
        }

        let m = order;
        let at = |a: usize, b: usize| add[a * m + b];
        let mt = |a: usize, b: usize| mul[a * m + b];

        for a in 0..m {
            for b in a + 1..m {
                if at(a, b) != at(b, a) {
                    return Err(RingError::AddNotCommutative { a, b });
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(RingError::AddNotAssociative { a, b, c });
                    }
                }
            }
        }
        let zero = (0..m)
            .find(|&e| (0..m).all(|a| at(e, a) == a))
            .ok_or(RingError::NoAdditiveIdentity)?;
        let mut neg = vec![usize::MAX; m];
        for a in 0..m {
            neg[a] = (0..m)
                .find(|&b| at(a, b) == zero)
                .ok_or(RingError::NotInvertible { a })?;
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mt(mt(a, b), c) != mt(a, mt(b, c)) {
                        return Err(RingError::NotAssociativeMul { a, b, c });
                    }
                    if mt(a, at(b, c)) != at(mt(a, b), mt(a, c)) {
                        return Err(RingError::NotDistributive {
                            side: "left",
                            a,
                            b,
                            c,
                        });
                    }
                    if mt(at(a, b), c) != at(mt(a, c), mt(b, c)) {
                        return Err(RingError::NotDistributive {
                            side: "right",
                            a,
                            b,
                            c,
                        });
                    }
                }
            }
        }

        Ok(FiniteRing {
            order,
            add,
            mul,
            zero,
            neg,
            labels,
        })
    }

    /// The ring `pZ/p^aZ`: multiples of `p` under arithmetic mod `p^a`.
    /// Order `p^(a-1)`, nilpotency class `a` for `a >= 2`.
    pub fn scaled_zmod(p: u64, a: u32) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        assert!(a >= 1, "exponent must be at least 1");
        let modulus = p.checked_pow(a).expect("p^a overflows u64");
        let m = (modulus / p) as usize;
        // element i represents the residue i*p
        let idx = |v: u64| ((v % modulus) / p) as usize;
        let mut add_rows = vec![vec![0usize; m]; m];
        let mut mul_rows = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let x = i as u64 * p;
                let y = j as u64 * p;
                add_rows[i][j] = idx((x + y) % modulus);
                mul_rows[i][j] = idx((x * y) % modulus);
            }
        }
        let labels = (0..m).map(|i| format!("{}", i as u64 * p)).collect();
        Self::validate_with_labels(m, &add_rows, &mul_rows, Some(labels))
    }

    /// Strictly upper triangular `t x t` matrices over the prime field of
    /// order `p`. Order `p^(t(t-1)/2)`, nilpotency class `t`.
    pub fn strict_upper(t: usize, p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if t < 2 {
            return Err(RingError::DimensionTooSmall);
        }
        // above-diagonal positions in row-major order
        let slots: Vec<(usize, usize)> = (0..t)
            .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
            .collect();
        let s = slots.len();
        let m = (p as usize)
            .checked_pow(s as u32)
            .expect("ring order overflows usize");

        let decode = |mut e: usize| -> Vec<Vec<u64>> {
            let mut mat = vec![vec![0u64; t]; t];
            for &(i, j) in &slots {
                mat[i][j] = (e % p as usize) as u64;
                e /= p as usize;
            }
            mat
        };
        let encode = |mat: &[Vec<u64>]| -> usize {
            let mut e = 0usize;
            for &(i, j) in slots.iter().rev() {
                e = e * p as usize + mat[i][j] as usize;
            }
            e
        };

        let mats: Vec<Vec<Vec<u64>>> = (0..m).map(decode).collect();
        let mut add_rows = vec![vec![0usize; m]; m];
        let mut mul_rows = vec![vec![0usize; m]; m];
        for x in 0..m {
            for y in 0..m {
                let mut sum = vec![vec![0u64; t]; t];
                let mut prod = vec![vec![0u64; t]; t];
                for &(i, j) in &slots {
                    sum[i][j] = (mats[x][i][j] + mats[y][i][j]) % p;
                }
                for &(i, j) in &slots {
                    let mut acc = 0u64;
                    for l in i + 1..j {
                        acc = (acc + mats[x][i][l] * mats[y][l][j]) % p;
                    }
                    prod[i][j] = acc;
                }
                add_rows[x][y] = encode(&sum);
                mul_rows[x][y] = encode(&prod);
            }
        }
        let labels = (0..m)
            .map(|e| {
                let mat = decode(e);
                let entries: Vec<String> = slots
                    .iter()
                    .map(|&(i, j)| mat[i][j].to_string())
                    .collect();
                entries.join(".")
            })
            .collect();
        Self::validate_with_labels(m, &add_rows, &mul_rows, Some(labels))
    }

    /// The additive group `Z/nZ` with every product equal to zero.
    /// Nilpotency class 2 for `n >= 2`, class 1 for `n = 1`.
    pub fn zero_mul(n: usize) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::EmptyRing);
        }
        let add_rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mul_rows = vec![vec![0usize; n]; n];
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::validate_with_labels(n, &add_rows, &mul_rows, Some(labels))
    }

    /// Componentwise direct sum, index pairs flattened row-major:
    /// the pair `(x, y)` becomes index `x * other.order + y`.
    pub fn direct_sum(&self, other: &FiniteRing) -> FiniteRing {
        let (m1, m2) = (self.order, other.order);
        let m = m1 * m2;
        let mut add = vec![0usize; m * m];
        let mut mul = vec![0usize; m * m];
        for x1 in 0..m1 {
            for x2 in 0..m2 {
                let x = x1 * m2 + x2;
                for y1 in 0..m1 {
                    for y2 in 0..m2 {
                        let y = y1 * m2 + y2;
                        add[x * m + y] = self.add(x1, y1) * m2 + other.add(x2, y2);
                        mul[x * m + y] = self.mul(x1, y1) * m2 + other.mul(x2, y2);
                    }
                }
            }
        }
        let zero = self.zero * m2 + other.zero;
        let mut neg = vec![0usize; m];
        for x1 in 0..m1 {
            for x2 in 0..m2 {
                neg[x1 * m2 + x2] = self.neg[x1] * m2 + other.neg[x2];
            }
        }
        let labels = Some(
            (0..m)
                .map(|x| format!("{}|{}", self.label_or_index(x / m2), other.label_or_index(x % m2)))
                .collect(),
        );
        FiniteRing {
            order: m,
            add,
            mul,
            zero,
            neg,
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `k * a` in the additive group, by binary doubling.
    pub fn scalar_mul(&self, k: u128, a: usize) -> usize {
        let mut acc = self.zero;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[i].as_str())
    }

    /// Label if present, otherwise the index rendered as text.
    pub fn label_or_index(&self, i: usize) -> String {
        match self.label(i) {
            Some(l) => l.to_string(),
            None => i.to_string(),
        }
    }
}

fn flatten_table(order: usize, rows: &[Vec<usize>]) -> Result<Vec<usize>, RingError> {
    if rows.len() != order {
        return Err(RingError::MalformedTable { expected: order });
    }
    let mut flat = Vec::with_capacity(order * order);
    for row in rows {
        if row.len() != order {
            return Err(RingError::MalformedTable { expected: order });
        }
        for &v in row {
            if v >= order {
                return Err(RingError::MalformedTable { expected: order });
            }
            flat.push(v);
        }
    }
    Ok(flat)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod4_field_like() -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        // Z/4Z with its usual multiplication (has an identity, not nilpotent)
        let add = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let mul = (0..4).map(|i| (0..4).map(|j| (i * j) % 4).collect()).collect();
        (add, mul)
    }

    #[test]
    fn order_one_ring_is_valid() {
        let r = FiniteRing::validate(1, &[vec![0]], &[vec![0]]).unwrap();
        assert_eq!(r.zero(), 0);
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn two_element_scaled_zmod_tables() {
        // 2Z/4Z: elements {0, 2}, 2+2=0, all products 0
        let r = FiniteRing::scaled_zmod(2, 2).unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.zero(), 0);
        assert_eq!(r.add(1, 1), 0);
        assert_eq!(r.mul(1, 1), 0);
        assert_eq!(r.label(1), Some("2"));
    }

    #[test]
    fn scaled_zmod_2_3_products() {
        // 2Z/8Z: 2*2=4, 2*6=4, 4*4=0
        let r = FiniteRing::scaled_zmod(2, 3).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.mul(1, 1), 2); // 2*2 = 4
        assert_eq!(r.mul(1, 3), 2); // 2*6 = 12 = 4 mod 8
        assert_eq!(r.mul(2, 2), 0); // 4*4 = 16 = 0 mod 8
    }

    #[test]
    fn scaled_zmod_3_2_products() {
        // 3Z/9Z: 3*3 = 0 mod 9
        let r = FiniteRing::scaled_zmod(3, 2).unwrap();
        assert_eq!(r.order(), 3);
        assert_eq!(r.mul(1, 1), 0);
        assert_eq!(r.add(1, 2), 0); // 3+6 = 0 mod 9
    }

    #[test]
    fn scaled_zmod_rejects_composite() {
        assert_eq!(FiniteRing::scaled_zmod(4, 2).unwrap_err(), RingError::NotPrime(4));
    }

    #[test]
    fn strict_upper_2_2_all_products_zero() {
        let r = FiniteRing::strict_upper(2, 2).unwrap();
        assert_eq!(r.order(), 2);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(r.mul(a, b), r.zero());
            }
        }
    }

    #[test]
    fn strict_upper_orders() {
        assert_eq!(FiniteRing::strict_upper(3, 2).unwrap().order(), 8);
        assert_eq!(FiniteRing::strict_upper(3, 3).unwrap().order(), 27);
    }

    #[test]
    fn corrupted_mul_entry_is_located() {
        let (add, mut mul) = zmod4_field_like();
        // valid before corruption
        FiniteRing::validate(4, &add, &mul).unwrap();
        mul[2][3] = (mul[2][3] + 1) % 4;
        let err = FiniteRing::validate(4, &add, &mul).unwrap_err();
        match err {
            RingError::NotAssociativeMul { a, b, c } | RingError::NotDistributive { a, b, c, .. } => {
                // re-check the reported triple against the corrupted tables
                let mt = |x: usize, y: usize| mul[x][y];
                let at = |x: usize, y: usize| add[x][y];
                let assoc = mt(mt(a, b), c) == mt(a, mt(b, c));
                let ldist = mt(a, at(b, c)) == at(mt(a, b), mt(a, c));
                let rdist = mt(at(a, b), c) == at(mt(a, c), mt(b, c));
                assert!(!(assoc && ldist && rdist), "witness triple does not violate anything");
            }
            other => panic!("expected a multiplicative violation, got {other:?}"),
        }
    }

    #[test]
    fn malformed_tables_rejected() {
        let e = FiniteRing::validate(2, &[vec![0, 1]], &[vec![0, 0], vec![0, 0]]);
        assert_eq!(e.unwrap_err(), RingError::MalformedTable { expected: 2 });
        let e = FiniteRing::validate(2, &[vec![0, 1], vec![1, 2]], &[vec![0, 0], vec![0, 0]]);
        assert_eq!(e.unwrap_err(), RingError::MalformedTable { expected: 2 });
    }

    #[test]
    fn non_group_addition_rejected() {
        // constant addition table: no identity
        let add = vec![vec![0, 0], vec![0, 0]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            FiniteRing::validate(2, &add, &mul),
            Err(RingError::NoAdditiveIdentity | RingError::AddNotCommutative { .. })
        ));
    }

    #[test]
    fn direct_sum_with_zero_ring_preserves_tables() {
        let zero = FiniteRing::zero_mul(1).unwrap();
        let r = FiniteRing::scaled_zmod(2, 3).unwrap();
        let s = zero.direct_sum(&r);
        assert_eq!(s.order(), r.order());
        for a in 0..r.order() {
            for b in 0..r.order() {
                assert_eq!(s.add(a, b), r.add(a, b));
                assert_eq!(s.mul(a, b), r.mul(a, b));
            }
        }
    }

    #[test]
    fn zero_detected_when_not_index_zero() {
        // relabel 2Z/4Z swapping indices 0 and 1: zero sits at index 1
        let add = vec![vec![1, 0], vec![0, 1]];
        let mul = vec![vec![1, 1], vec![1, 1]];
        let r = FiniteRing::validate(2, &add, &mul).unwrap();
        assert_eq!(r.zero(), 1);
        assert_eq!(r.neg(0), 0);
    }

    #[test]
    fn scalar_mul_matches_repeated_addition() {
        let r = FiniteRing::scaled_zmod(3, 2).unwrap();
        for a in 0..r.order() {
            let mut acc = r.zero();
            for k in 0..10u128 {
                assert_eq!(r.scalar_mul(k, a), acc);
                acc = r.add(acc, a);
            }
        }
    }
}
