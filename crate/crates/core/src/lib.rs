//! Exact multigraded polynomial algebra over ℚ and ℚ(i), a Buchberger engine,
//! multi-projective geometry, projective group actions, numerical intersection
//! bookkeeping on blow-ups, conic-bundle discriminants and a scenario runner.

pub mod catalog;
pub mod chow;
pub mod cli;
pub mod conicbundle;
pub mod error;
pub mod exactalg;
pub mod geometry;
pub mod groups;
pub mod ideals;

pub use error::{Error, Result};
pub use exactalg::{Ambient, Mono, MultiPoly, Scalar};
pub use ideals::{Ideal, MonomialOrder};
