//! Exact p-adic construction of the metabelian Lie algebras `L_k(d)`, their
//! commensurability invariant, the uniform pro-p groups obtained from
//! `p^2 L_k(d)` through the Campbell–Hausdorff series, finite presentations
//! of those groups, and subgroup counts in their finite quotients.
//!
//! Everything is computed in fixed-precision p-adic arithmetic: an element of
//! `Q_p` is a valuation together with a unit known modulo `p^N`.  Equality of
//! p-adic numbers is therefore only ever decided "modulo `p^M`", and every
//! API that separates objects reports the precision at which it did so.
//!
//! Module map:
//!
//! - [`padic`]: scalars, contexts, dense matrices, determinant and exponential.
//! - [`lie`]: Lie algebras over `Z_p` by structure constants.
//! - [`family`]: the families `L_k(d)` and the invariant that separates them.
//! - [`bch`]: the Campbell–Hausdorff series with a certified truncation degree.
//! - [`group`]: the uniform group on `p^2 L_k(d)` with two group-law backends.
//! - [`quotient`], [`pseries`], [`growth`]: finite quotients `G/G^{p^j}`, the
//!   lower central p-series and subgroup counting.
//! - [`presentation`]: finite presentations with exponent vectors.
//! - [`io`]: algebra, group, presentation and growth file formats.
//! - [`cli`]: the command-line front end used by the `padic-uniform` binary.

pub mod bch;
pub mod cli;
pub mod error;
pub mod family;
pub mod group;
pub mod growth;
pub mod io;
pub mod lie;
pub mod padic;
pub mod presentation;
pub mod pseries;
pub mod quotient;

pub use error::{Error, Result};
pub use padic::{PAdic, PAdicContext, PAdicMatrix, PadicError};
