//! Exact Chow-ring computations for Milnor hypersurfaces, quasi-split unitary
//! grassmannians and correspondences on them.
//!
//! Every ring here is modelled inside the integral Chow ring of a complete
//! type-A flag variety (see [`flag`]), or by an explicit monomial basis
//! ([`milnor`]). All arithmetic is exact.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bundle;
pub mod corr;
pub mod error;
pub mod exact;
pub mod flag;
pub mod milnor;
pub mod ranks;
pub mod report;
pub mod unitary;
pub mod wz;

pub use error::{Error, Result};
