//! Exhaustive ground truth: evaluate over all of `R^n`.
//!
//! Deliberately naive — an independent baseline the restricted-support
//! solver must agree with, and a fallback for rings where that solver
//! refuses to run (non-nilpotent inputs). Hard-capped at 10^7
//! substitutions.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::poly::PolyExpr;
use crate::ring::FiniteRing;
use crate::solver::{RangeReport, SolveReport};

pub const MAX_SUBSTITUTIONS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{size} substitutions exceed the exhaustive-search cap of {MAX_SUBSTITUTIONS}")]
    SearchSpaceTooLarge { size: u128 },
}

/// All tuples of `0..order` of length `n`, odometer order (last
/// coordinate fastest), starting at the all-zero tuple.
struct Cube {
    order: usize,
    tuple: Vec<usize>,
    started: bool,
    done: bool,
}

impl Cube {
    fn new(order: usize, n: usize) -> Self {
        Cube {
            order,
            tuple: vec![0; n],
            started: false,
            done: false,
        }
    }
}

impl Iterator for Cube {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.tuple.clone());
        }
        for slot in self.tuple.iter_mut().rev() {
            *slot += 1;
            if *slot < self.order {
                return Some(self.tuple.clone());
            }
            *slot = 0;
        }
        self.done = true;
        None
    }
}

fn guard(ring: &FiniteRing, n: usize) -> Result<(), OracleError> {
    let size = (ring.order() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if size > MAX_SUBSTITUTIONS {
        return Err(OracleError::SearchSpaceTooLarge { size });
    }
    Ok(())
}

/// Exact range of `f` over every tuple in `R^n`. Works for any finite
/// ring. `n` must bind every variable of `f`.
pub fn brute_range(ring: &FiniteRing, f: &PolyExpr, n: usize) -> Result<RangeReport, OracleError> {
    assert!(n >= f.max_var(), "n must bind every variable");
    guard(ring, n)?;
    let mut values = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    let mut evaluations = 0u64;
    for point in Cube::new(ring.order(), n) {
        let v = f.evaluate(ring, &point).expect("cube binds every variable");
        evaluations += 1;
        if values.insert(v) {
            witnesses.insert(v, point);
        }
    }
    Ok(RangeReport {
        values,
        witnesses,
        evaluations_used: evaluations,
        k_used: n,
        n,
    })
}

/// Exhaustive version of the solvability decision: first root of
/// `f + (-g)` in odometer order, `g` defaulting to the zero constant.
pub fn brute_solvable(
    ring: &FiniteRing,
    f: &PolyExpr,
    g: Option<&PolyExpr>,
    n: usize,
) -> Result<SolveReport, OracleError> {
    let zero = PolyExpr::constant(ring.zero());
    let g = g.unwrap_or(&zero);
    let h = f.clone().add(g.clone().neg());
    assert!(n >= h.max_var(), "n must bind every variable");
    guard(ring, n)?;
    let mut evaluations = 0u64;
    for point in Cube::new(ring.order(), n) {
        evaluations += 1;
        let v = h.evaluate(ring, &point).expect("cube binds every variable");
        if v == ring.zero() {
            return Ok(SolveReport::Solvable {
                witness: point,
                evaluations_used: evaluations,
            });
        }
    }
    Ok(SolveReport::Unsolvable {
        evaluations_used: evaluations,
    })
}
