//! Root finding and range computation for polynomial expressions over
//! finite nilpotent rings, without brute-forcing the full cube.
//!
//! The pieces, bottom up:
//!
//! - [`ring`]: finite rings as explicit operation tables, their power
//!   ideals and nilpotency class, and the decomposition into prime-power
//!   blocks that everything else leans on.
//! - [`poly`]: polynomial expressions over a ring — parsing, printing,
//!   evaluation, and expansion into a pruned standard form.
//! - [`solver`]: the point of the crate. Ranges, roots, and equivalence
//!   of expressions by enumerating only tuples of bounded support per
//!   prime-power block, which shrinks the search from m^n to a
//!   polynomial in n.
//! - [`oracle`]: the same questions answered by full enumeration, as an
//!   independent baseline.
//! - [`additive`]: the zero-sum combinatorics behind the support bound —
//!   small-subset extraction, Davenport constants, tightness, and a
//!   restricted-variable Chevalley checker.
//! - [`sample`]: seeded generators for stress tests and benchmarks.

pub mod additive;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod sample;
pub mod solver;

pub use additive::{
    brink_check, davenport_constant, tightness_instance, AbelianPGroup, AdditiveError,
    BrinkInstance, BrinkPoly, BrinkVerdict, GroupElem, SetFunction,
};
pub use oracle::{brute_range, brute_solvable, OracleError};
pub use poly::{EvalError, ExpandError, ParseError, PolyExpr, StandardPoly};
pub use ring::{FiniteRing, IdealChain, Nilpotency, PrimaryDecomposition, RingError};
pub use solver::{
    EquivReport, RangeReport, SolveReport, SolverError, SolverOptions, SupportProfile,
};
