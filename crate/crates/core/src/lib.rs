//! Exact weight distributions for a family of cyclic codes over finite fields.
//!
//! The codes are defined by traces, `c_i = Tr_{r/q}(Σ_j x_j γ^{a_j i})`, with the
//! exponents `a_j` drawn from an arithmetic progression of step `(r-1)/e`.
//! Their weight distributions are computed three independent ways:
//!
//! * [`weights::wd_naive`] — enumerate every codeword and count nonzero symbols;
//! * [`weights::wd_tsum`] — reduce each weight to a sum of modified Gaussian
//!   periods and tally the class profile of its arguments;
//! * [`weights::wd_closed`] — evaluate the closed-form tables that apply to the
//!   parameters (see [`weights::classify`]).
//!
//! Gaussian periods are computed exactly as cyclotomic integers from
//! trace-value tallies ([`cyclotomy::periods_exact`]), and in the solvable cases
//! also from closed formulas ([`cyclotomy::periods_closed_form`]).

pub mod codes;
pub mod corpus;
pub mod cyclotomy;
pub mod error;
pub mod exec;
pub mod gf;
pub mod nt;
pub mod weights;

pub use codes::{Code, CodeSpec, DerivedParams};
pub use error::{Error, Result};
pub use exec::Execution;
pub use gf::{Elem, FieldTower};
pub use weights::{Caps, WeightDistribution};
