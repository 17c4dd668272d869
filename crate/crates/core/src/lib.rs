//! Adelic heights over Q and Q(T1,...,Tn): exact places and Weil heights,
//! polynomial rings with Gauss norms and factorization, Mahler measures,
//! λ-twisted heights with Northcott enumeration, and resultant-based local
//! heights on the projective line.

pub mod adelic;
pub mod arith;
pub mod error;
pub mod mahler;
pub mod polyring;
pub mod qplaces;
pub mod resultant;

pub use arith::{LogRat, Rat};
pub use error::{Error, Result};
