//! Finite T0 spaces, their beat points and cores, and the semiflows they
//! carry.
//!
//! A finite T0 space is the same thing as a finite poset: open sets are the
//! lower sets and continuous maps are the order-preserving ones. A semiflow
//! on such a space is fixed by a single idempotent monotone map `r <= id`,
//! which makes every semiflow enumerable and countable.
//!
//! ```
//! use finflow::{families, semiflow};
//!
//! let x = families::example_3_1();
//! let flows = semiflow::enumerate_semiflows(&x).unwrap();
//! assert_eq!(flows.len(), 7);
//! ```

pub mod checks;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod families;
pub mod io;
pub mod maps;
pub mod poset;
pub mod reduction;
pub mod rng;
pub mod semiflow;
pub mod set;

pub use error::{Error, Result};
pub use maps::MonotoneMap;
pub use poset::Poset;
pub use reduction::RemovalSequence;
pub use semiflow::{CountReport, Semiflow};
pub use set::ElementSet;
