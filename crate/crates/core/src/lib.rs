//! Exact evaluation of double sums of binomial-coefficient ratios, the
//! identities they satisfy, and the urn chains whose hitting times they
//! describe.

pub mod approx;
pub mod cli;
pub mod double_sum;
pub mod error;
pub mod hypergeom;
pub mod identities;
pub mod rational;
pub mod report;
pub mod special;
pub mod urn;

pub use approx::{ApproxValue, Value};
pub use double_sum::{eval_double_sum, DoubleSumSpec};
pub use error::{Error, Result};
pub use rational::Rational;
