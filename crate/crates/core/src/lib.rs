//! Exact integer analysis of monomial rational maps.
//!
//! - [`monomial`]: exponent vectors, monomial sets, log-matrices, canonical
//!   restrictions and cohesiveness.
//! - [`inversion`]: birationality via minors, and the unique monomial Cremona
//!   inverse with its inversion vector.
//! - [`degree2`]: the graph of a degree-2 Cremona set, its normal form and
//!   the graph-theoretic formulas for the inverse.
//! - [`hilbert`]: bounded Hilbert-base and normality checks on lifted cones,
//!   and extraction of Cremona subsets.
//! - [`linalg`], [`lp`], [`permutation`]: exact integer matrices, rational
//!   feasibility, and equality up to row/column permutations.

pub mod degree2;
pub mod error;
pub mod hilbert;
pub mod inversion;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod permutation;

pub use error::{Error, Result};
pub use inversion::{invert, is_cremona, BirationalityReport, InversionData};
pub use linalg::IntMatrix;
pub use monomial::{check_canonical, is_cohesive, log_matrix, CanonicalReport, ExponentVector, LogMatrix, MonomialSet};
