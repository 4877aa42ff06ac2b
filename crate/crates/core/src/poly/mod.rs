//! Non-commutative polynomial expressions over a table ring.
//!
//! A polynomial is a tree built from variables `x1, x2, …`, ring
//! constants, negation, addition, and multiplication. Nothing is
//! simplified at construction: the tree shape *is* the object, and
//! [`PolyExpr::length`] counts exactly the operations used to build it.

mod parse;
mod standard;

pub use parse::ParseError;
pub use standard::{ExpandError, Factor, Monomial, StandardPoly};

use std::fmt;

use thiserror::Error;

use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable x{0} has no value in the substitution point")]
    UnboundVariable(usize),
}

/// Expression tree; variables are 1-indexed, constants are ring element
/// indices (valid for the ring the expression was parsed against).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Var(usize),
    Const(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
}

impl PolyExpr {
    pub fn var(j: usize) -> Self {
        assert!(j >= 1, "variables are numbered from 1");
        PolyExpr::Var(j)
    }

    pub fn constant(k: usize) -> Self {
        PolyExpr::Const(k)
    }

    pub fn neg(self) -> Self {
        PolyExpr::Neg(Box::new(self))
    }

    pub fn add(self, rhs: Self) -> Self {
        PolyExpr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        PolyExpr::Mul(Box::new(self), Box::new(rhs))
    }

    /// Operation count: leaves are free, every `Neg`/`Add`/`Mul` costs 1.
    pub fn length(&self) -> usize {
        match self {
            PolyExpr::Var(_) | PolyExpr::Const(_) => 0,
            PolyExpr::Neg(c) => c.length() + 1,
            PolyExpr::Add(a, b) | PolyExpr::Mul(a, b) => a.length() + b.length() + 1,
        }
    }

    /// Largest variable index occurring, 0 if none. A point of this
    /// length binds every variable.
    pub fn max_var(&self) -> usize {
        match self {
            PolyExpr::Var(j) => *j,
            PolyExpr::Const(_) => 0,
            PolyExpr::Neg(c) => c.max_var(),
            PolyExpr::Add(a, b) | PolyExpr::Mul(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Bottom-up evaluation through the ring tables; `point[j-1]` is the
    /// value of `xj`.
    pub fn evaluate(&self, ring: &FiniteRing, point: &[usize]) -> Result<usize, EvalError> {
        match self {
            PolyExpr::Var(j) => point
                .get(*j - 1)
                .copied()
                .ok_or(EvalError::UnboundVariable(*j)),
            PolyExpr::Const(k) => Ok(*k),
            PolyExpr::Neg(c) => Ok(ring.neg(c.evaluate(ring, point)?)),
            PolyExpr::Add(a, b) => Ok(ring.add(a.evaluate(ring, point)?, b.evaluate(ring, point)?)),
            PolyExpr::Mul(a, b) => Ok(ring.mul(a.evaluate(ring, point)?, b.evaluate(ring, point)?)),
        }
    }

    /// Same tree with every constant replaced by `f(constant)`. Used to
    /// project coefficients through a primary-component map.
    pub fn map_consts(&self, f: &dyn Fn(usize) -> usize) -> PolyExpr {
        match self {
            PolyExpr::Var(j) => PolyExpr::Var(*j),
            PolyExpr::Const(k) => PolyExpr::Const(f(*k)),
            PolyExpr::Neg(c) => PolyExpr::Neg(Box::new(c.map_consts(f))),
            PolyExpr::Add(a, b) => {
                PolyExpr::Add(Box::new(a.map_consts(f)), Box::new(b.map_consts(f)))
            }
            PolyExpr::Mul(a, b) => {
                PolyExpr::Mul(Box::new(a.map_consts(f)), Box::new(b.map_consts(f)))
            }
        }
    }

    fn is_leaf(&self) -> bool {
        matches!(self, PolyExpr::Var(_) | PolyExpr::Const(_))
    }
}

/// Prints in the concrete grammar: leaves bare, every composite child
/// parenthesized, so the output reparses to a structurally identical tree.
impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(e: &PolyExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if e.is_leaf() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        }
        match self {
            PolyExpr::Var(j) => write!(f, "x{j}"),
            PolyExpr::Const(k) => write!(f, "e{k}"),
            PolyExpr::Neg(c) => {
                write!(f, "-")?;
                child(c, f)
            }
            PolyExpr::Add(a, b) => {
                child(a, f)?;
                write!(f, " + ")?;
                child(b, f)
            }
            PolyExpr::Mul(a, b) => {
                child(a, f)?;
                write!(f, "*")?;
                child(b, f)
            }
        }
    }
}
