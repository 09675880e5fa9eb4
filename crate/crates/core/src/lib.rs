//! Exact symbolic computation on a finitely representable fragment of the
//! surreal numbers: dyadic sign-expansion arithmetic, Cantor/Conway normal
//! forms, the Gonshor exponential and logarithm, transseries structure, path
//! derivatives, and composition. Every operation is either exact or
//! explicitly truncated with a reported remainder bound.

pub mod coeff;
pub mod conway;
pub mod diffcomp;
pub mod dyadic;
pub mod error;
pub mod explog;
pub mod ordinal;
pub mod sign;
pub mod transstruct;
pub mod tseries;

pub use coeff::Coeff;
pub use conway::{Monomial, Surreal, TruncatedResult};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use diffcomp::Prederivation;
pub use ordinal::Ordinal;
pub use sign::SignExpansion;
pub use transstruct::{LadderAtom, Level, Path};
pub use tseries::{TMonomial, TSeries, TsTruncated};
