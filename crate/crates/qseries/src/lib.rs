//! Exact workbench for q-series attached to the continued fractions of
//! order thirty-four and sixty-eight.
//!
//! Everything is computed over arbitrary-precision integers as truncated
//! Laurent series on a fixed exponent lattice (1/d)·Z; no floating point,
//! no symbolic algebra. The crate provides:
//!
//! - [`series`]: the truncated Laurent-series ring (the substrate);
//! - [`products`]: q-Pochhammer products and eta-quotient expansion;
//! - [`theta`]: Ramanujan theta functions by bilateral sum and by triple
//!   product, plus the classical two-variable splitting identities;
//! - [`cf`]: the sixteen named q-continued fractions, their convergents,
//!   and certificates that convergents match the product forms;
//! - [`identities`]: mechanical verification of the theta-function
//!   identities and modular relations for the named fractions;
//! - [`dissection`]: the Andrews–Bressoud w-dissection and
//!   vanishing-coefficient scans along arithmetic progressions;
//! - [`partitions`]: colored-partition counting by generating function and
//!   by exhaustive enumeration, and the resulting partition identities;
//! - [`report`]: machine-readable result types shared with the CLI.
//!
//! Verification here always means: both sides are expanded to a stated
//! truncation order and compared coefficient-by-coefficient, exactly.
//!
//! # Example
//!
//! ```
//! use qseries::{Monomial, ProductSpec, ThetaSpec};
//! use qseries::theta::{theta_product, theta_sum};
//!
//! // the first starred fraction, (q^8,q^26;q^34)/(q^9,q^25;q^34):
//! // its coefficient of q^6 vanishes
//! let spec = ProductSpec::quotient(1, &[8, 26], &[9, 25], 34);
//! let series = spec.expand(40)?;
//! assert_eq!(series.coefficient(6)?, 0.into());
//! assert_eq!(series.coefficient(8)?, (-1).into());
//!
//! // its numerator theta function agrees by both construction routes
//! let f = ThetaSpec::new(Monomial::neg_q(8, 1), Monomial::neg_q(26, 1))?;
//! assert!(theta_sum(&f, 60)?.eq_window(&theta_product(&f, 60)?)?);
//! # Ok::<(), qseries::Error>(())
//! ```

pub mod error;
pub mod series;
pub mod products;
pub mod theta;
pub mod cf;
pub mod identities;
pub mod dissection;
pub mod partitions;
pub mod report;

pub use error::{Error, Result};
pub use series::{LatticeSeries, Monomial};
pub use products::{pochhammer, ProductFactor, ProductSpec};
pub use theta::{theta_product, theta_sum, ThetaSpec};
pub use cf::{CfFamily, CfId, CfSpec, NamedCf};
