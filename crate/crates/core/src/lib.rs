//! Exact algorithms for well-generated complex 2-reflection groups: cyclotomic
//! arithmetic, the noncrossing interval `[1, c]`, Hurwitz orbits and the dual
//! braid monoid.
//!
//! The crate is `no_std` with `alloc` when built without the `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

mod bitset;
pub mod cyclo;
pub mod error;
pub mod families;
pub mod garside;
pub mod hurwitz;
pub mod interval;
pub mod matrix;
pub mod modp;
pub mod perm;
pub mod reflgroup;

pub use cyclo::{CycNum, Cyclotomic};
pub use error::{CycloError, GarsideError, GroupError, HurwitzError, IntervalError};
pub use matrix::Matrix;
pub use perm::{ElemKey, Perm, RootSystem};
pub use reflgroup::{GroupCatalogEntry, GroupElement, Reflection, ReflectionGroup};
