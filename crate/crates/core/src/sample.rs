//! Seeded generators for stress tests and benchmarks.
//!
//! Everything here is driven by a caller-supplied RNG so that a fixed
//! seed reproduces the exact same instances across runs and platforms —
//! the test suites and the bench command both depend on that.

use rand::Rng;

use crate::additive::{AbelianPGroup, BrinkInstance, BrinkPoly, SetFunction};
use crate::poly::PolyExpr;
use crate::ring::FiniteRing;

/// Random expression of exactly the requested composite length (leaves
/// count zero, every negation and binary node counts one). Variables
/// are drawn from `x1 ..= x{n_max}`; with `n_max = 0` only constants
/// appear.
pub fn random_poly(
    ring: &FiniteRing,
    n_max: usize,
    length: usize,
    rng: &mut impl Rng,
) -> PolyExpr {
    if length == 0 {
        let want_var = n_max > 0 && rng.random_range(0..2) == 0;
        return if want_var {
            PolyExpr::var(rng.random_range(1..=n_max))
        } else {
            PolyExpr::constant(rng.random_range(0..ring.order()))
        };
    }
    match rng.random_range(0..5) {
        0 => PolyExpr::neg(random_poly(ring, n_max, length - 1, rng)),
        1 | 2 => {
            let left = rng.random_range(0..length);
            PolyExpr::add(
                random_poly(ring, n_max, left, rng),
                random_poly(ring, n_max, length - 1 - left, rng),
            )
        }
        _ => {
            let left = rng.random_range(0..length);
            PolyExpr::mul(
                random_poly(ring, n_max, left, rng),
                random_poly(ring, n_max, length - 1 - left, rng),
            )
        }
    }
}

/// The fixed expression the bench command times:
/// `x1*x2 + x2*x3 + … + x(n−1)*xn + xn`, so every variable appears and
/// the products give the expansion pruning something to do.
pub fn bench_poly(n: usize) -> PolyExpr {
    assert!(n >= 1, "the bench expression needs at least one variable");
    if n == 1 {
        return PolyExpr::var(1);
    }
    let mut acc = PolyExpr::mul(PolyExpr::var(1), PolyExpr::var(2));
    for i in 2..n {
        acc = PolyExpr::add(acc, PolyExpr::mul(PolyExpr::var(i), PolyExpr::var(i + 1)));
    }
    PolyExpr::add(acc, PolyExpr::var(n))
}

/// Random φ with `entries` assignments of random values (zero allowed,
/// which erases) to random keys of size ≤ k.
pub fn random_set_function(
    group: &AbelianPGroup,
    ground_size: usize,
    k: usize,
    entries: usize,
    rng: &mut impl Rng,
) -> SetFunction {
    let order = group.order() as usize;
    let mut phi = SetFunction::new(group.clone(), ground_size, k);
    for _ in 0..entries {
        let size = rng.random_range(0..=k.min(ground_size));
        let mut key = Vec::with_capacity(size);
        while key.len() < size {
            let i = rng.random_range(0..ground_size);
            if !key.contains(&i) {
                key.push(i);
            }
        }
        let value = group.element_at(rng.random_range(0..order));
        phi.set(&key, value);
    }
    phi
}

/// Random congruence system that satisfies the counting theorem's
/// hypothesis by construction: polynomial `j` gets modulus `p^alphas[j]`
/// and total degree at most `degrees[j]`, and the variable count is one
/// more than `Σ(p^{α_j}−1)·degrees[j]` with every A_i of size two — so
/// `Σ(|A_i|−1) = n` strictly exceeds the degree sum no matter which
/// monomials get drawn. Set elements are lifted off their residues by
/// random multiples of p.
pub fn random_brink_instance(
    p: u64,
    alphas: &[u32],
    degrees: &[usize],
    rng: &mut impl Rng,
) -> BrinkInstance {
    assert_eq!(alphas.len(), degrees.len());
    let moduli: Vec<u64> = alphas.iter().map(|&a| p.pow(a)).collect();
    let rhs: usize = moduli
        .iter()
        .zip(degrees)
        .map(|(&q, &d)| (q as usize - 1) * d)
        .sum();
    let n = rhs + 1;

    let sets = (0..n)
        .map(|_| {
            let r1 = rng.random_range(0..p);
            let mut r2 = rng.random_range(0..p - 1);
            if r2 >= r1 {
                r2 += 1;
            }
            [r1, r2]
                .into_iter()
                .map(|r| r as i64 + p as i64 * rng.random_range(-2..=2))
                .collect()
        })
        .collect();

    let polys = moduli
        .iter()
        .zip(alphas.iter().zip(degrees))
        .map(|(&q, (&alpha, &d))| {
            let monomials = (0..rng.random_range(1..=3))
                .map(|_| {
                    let coeff = rng.random_range(1..q) as i64;
                    let mut exps = vec![0u32; n];
                    for _ in 0..rng.random_range(0..=d) {
                        exps[rng.random_range(0..n)] += 1;
                    }
                    (coeff, exps)
                })
                .collect();
            BrinkPoly { alpha, monomials }
        })
        .collect();

    BrinkInstance { p, sets, polys }
}
