//! Expansion into a sum of signed monomials.
//!
//! Over a ring of nilpotency class `l`, every monomial with `l` or more
//! factors is identically zero (its value is a product of `l` ring
//! elements), so expansion prunes those away. No cancellation is
//! attempted across monomials — pointwise equivalence with the source
//! expression is the only contract.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{EvalError, PolyExpr};
use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("expansion exceeded the budget of {budget} monomials")]
    BudgetExceeded { budget: usize },
}

/// One monomial factor: a variable or a ring constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Var(usize),
    Const(usize),
}

/// A signed product `z1*z2*…*zt`, `t >= 1`, with no two adjacent
/// constants (adjacent constants are pre-multiplied away).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

impl Monomial {
    fn distinct_vars(&self) -> usize {
        self.factors
            .iter()
            .filter_map(|f| match f {
                Factor::Var(j) => Some(*j),
                Factor::Const(_) => None,
            })
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// A polynomial as a list of signed monomials; the empty list is the
/// zero function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardPoly {
    monomials: Vec<Monomial>,
}

impl StandardPoly {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Sum of the signed monomial values at `point`.
    pub fn evaluate(&self, ring: &FiniteRing, point: &[usize]) -> Result<usize, EvalError> {
        let mut acc = ring.zero();
        for mono in &self.monomials {
            let mut prod: Option<usize> = None;
            for factor in &mono.factors {
                let v = match factor {
                    Factor::Var(j) => point
                        .get(*j - 1)
                        .copied()
                        .ok_or(EvalError::UnboundVariable(*j))?,
                    Factor::Const(k) => *k,
                };
                prod = Some(match prod {
                    None => v,
                    Some(p) => ring.mul(p, v),
                });
            }
            let mut term = prod.expect("monomials are nonempty");
            if mono.negative {
                term = ring.neg(term);
            }
            acc = ring.add(acc, term);
        }
        Ok(acc)
    }

    /// Maximum number of distinct variables in any one monomial — the
    /// tightest admissible support bound k for this polynomial.
    pub fn max_distinct_vars(&self) -> usize {
        self.monomials
            .iter()
            .map(Monomial::distinct_vars)
            .max()
            .unwrap_or(0)
    }
}

impl PolyExpr {
    /// Distributes products over sums and pushes negations into signs,
    /// yielding a [`StandardPoly`] pointwise equivalent to `self` on
    /// `ring`. `class` is the ring's nilpotency class: monomials with
    /// `class` or more factors are dropped, as is any monomial whose
    /// collapsed constant is the zero element. `budget` caps the
    /// monomial count at every intermediate step.
    pub fn expand_standard(
        &self,
        ring: &FiniteRing,
        class: usize,
        budget: usize,
    ) -> Result<StandardPoly, ExpandError> {
        let monomials = expand(self, ring, class, budget)?;
        Ok(StandardPoly { monomials })
    }
}

fn expand(
    expr: &PolyExpr,
    ring: &FiniteRing,
    class: usize,
    budget: usize,
) -> Result<Vec<Monomial>, ExpandError> {
    let out = match expr {
        PolyExpr::Var(j) => normalize_one(
            Monomial {
                negative: false,
                factors: vec![Factor::Var(*j)],
            },
            ring,
            class,
        )
        .into_iter()
        .collect(),
        PolyExpr::Const(k) => normalize_one(
            Monomial {
                negative: false,
                factors: vec![Factor::Const(*k)],
            },
            ring,
            class,
        )
        .into_iter()
        .collect(),
        PolyExpr::Neg(c) => {
            let mut ms = expand(c, ring, class, budget)?;
            for m in &mut ms {
                m.negative = !m.negative;
            }
            ms
        }
        PolyExpr::Add(a, b) => {
            let mut ms = expand(a, ring, class, budget)?;
            ms.extend(expand(b, ring, class, budget)?);
            ms
        }
        PolyExpr::Mul(a, b) => {
            let left = expand(a, ring, class, budget)?;
            let right = expand(b, ring, class, budget)?;
            if left.len().saturating_mul(right.len()) > budget {
                return Err(ExpandError::BudgetExceeded { budget });
            }
            let mut ms = Vec::new();
            for la in &left {
                for rb in &right {
                    let mut factors =
                        Vec::with_capacity(la.factors.len() + rb.factors.len());
                    factors.extend_from_slice(&la.factors);
                    factors.extend_from_slice(&rb.factors);
                    let candidate = Monomial {
                        negative: la.negative != rb.negative,
                        factors,
                    };
                    ms.extend(normalize_one(candidate, ring, class));
                }
            }
            ms
        }
    };
    if out.len() > budget {
        return Err(ExpandError::BudgetExceeded { budget });
    }
    Ok(out)
}

/// Collapses adjacent constants, then drops the monomial if it carries
/// a zero constant (identically zero) or has `class` or more factors
/// (its value lies in R^(class) = {0}).
fn normalize_one(mono: Monomial, ring: &FiniteRing, class: usize) -> Option<Monomial> {
    let mut factors: Vec<Factor> = Vec::with_capacity(mono.factors.len());
    for f in mono.factors {
        match (factors.last_mut(), f) {
            (Some(Factor::Const(prev)), Factor::Const(k)) => {
                *prev = ring.mul(*prev, k);
            }
            (_, f) => factors.push(f),
        }
    }
    let has_zero_const = factors
        .iter()
        .any(|f| matches!(f, Factor::Const(k) if *k == ring.zero()));
    if has_zero_const || factors.len() >= class {
        return None;
    }
    Some(Monomial {
        negative: mono.negative,
        factors,
    })
}
