//! Welch Costas arrays, power permutations and their unions over F_p.
//!
//! The crate builds the six families (`W_p`, `W_p^l`, `W_p^el`, `P_p`,
//! `PW_p`, `PW_p^l`), computes exact aperiodic cross-correlation maxima by
//! exhaustive search, and checks closed-form bounds against those maxima.
//!
//! ```
//! use costas_core::arrays::{is_costas_grid, welch_exp};
//! use costas_core::numthy::PrimeContext;
//!
//! let ctx = PrimeContext::new(7).unwrap();
//! let f = welch_exp(&ctx, 3, 0).unwrap();
//! assert_eq!(f.to_string(), "1,3,2,6,4,5");
//! assert!(is_costas_grid(&f));
//! ```

pub mod arrays;
pub mod bounds;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod numthy;
pub mod report;
pub mod xcorr;

pub use error::{Error, Result};
