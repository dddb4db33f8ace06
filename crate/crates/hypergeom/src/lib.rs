//! Evaluation and exact-algebra toolkit for a family of hypergeometric
//! period and regulator functions on the thrice-punctured line.
//!
//! What lives where:
//!
//! - [`scalar`], [`gamma`], [`series`] — exact rational scalars, complex
//!   gamma/beta/Pochhammer, and convergence-controlled `pFq` summation.
//! - [`functions`] — the named local solutions `f1, f2, f3` and the
//!   families `F_mu`, `G_mu`, `H_mu` with their derivative recurrences.
//! - [`poly`], [`ratfun`], [`diffop`] — exact polynomials, rational
//!   functions and differential-operator algebra (composition, right
//!   Euclidean division, basis changes, the named operators).
//! - [`quadrature`] — tanh-sinh integration, the independent oracle for
//!   every series identity.
//! - [`continuation`] — high-order adaptive continuation of solutions
//!   along paths avoiding `{0, 1}`, monodromy matrices and eigenvalues.
//! - [`theta`], [`periods`] — operator input data `(p0, p1)`, the
//!   coefficient families `a_i`, `b_i`, the weighted sums `P_m`, `Q_m`
//!   and the 2x2 period matrix.
//! - [`regulator`] — the exact contiguous-relation recursion `C_i, D_i`,
//!   its rational remainders, and the congruence checks for the
//!   regulator functions.
//! - [`report`], [`verify`], [`fixtures`], [`cli`] — machine-readable
//!   check records, the named verification suite, oracle-generated
//!   fixtures, and the command-line front end.
//!
//! Every runnable capability has a worked example under `examples/`:
//!
//! ```bash
//! cargo run --example evaluate_functions
//! cargo run --example kummer_relation
//! cargo run --example operator_algebra
//! cargo run --example integral_oracles
//! cargo run --example monodromy
//! cargo run --example period_matrix
//! cargo run --example regulator_recursion
//! ```

pub mod cli;
pub mod continuation;
pub mod diffop;
pub mod error;
pub mod fixtures;
pub mod functions;
pub mod gamma;
pub mod params;
pub mod periods;
pub mod poly;
pub mod quadrature;
pub mod ratfun;
pub mod regulator;
pub mod report;
pub mod scalar;
pub mod series;
pub mod theta;
pub mod verify;

pub use diffop::{DiffOperator, OpBasis};
pub use error::{Error, Result};
pub use params::HGParams;
pub use poly::Poly;
pub use ratfun::{RatFun, RatLam};
pub use scalar::{parse_rat, rat, rat_int, Rat, C64};
pub use series::{HGSeriesSpec, SeriesValue, TruncationPolicy};
pub use theta::ThetaData;
