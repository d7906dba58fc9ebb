//! Exact computations for the DJKM current algebra `sl(2) (x) R`, its
//! universal central extension, and its free-field realization on Fock space.
//!
//! `R = C[t, t^-1, u] / (u^2 - t^4 + 2ct^2 - 1)`. Everything is exact: the
//! parameter `c` is either kept symbolic in `Q[c]` or fixed to a rational `c0`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod arith;
pub mod error;
pub mod families;
pub mod fock;
pub mod realization;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
