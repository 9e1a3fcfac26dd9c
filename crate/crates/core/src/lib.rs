//! Lifted CTL model checking for featured transition systems.
//!
//! A featured transition system (FTS) describes a whole family of transition
//! systems, one per valid feature configuration. [`verify`] checks a CTL
//! formula on all of them at once: it solves a three-valued model checking
//! game on the join abstraction of the family and, when the answer is
//! indefinite, splits the configuration space along the guard of the
//! transition responsible and recurses.

pub mod bench;
pub mod cli;
pub mod ctl;
pub mod error;
pub mod featexpr;
pub mod game;
pub mod models;
pub mod oracle;
pub mod verify;

pub use ctl::Ctl;
pub use error::{Error, Result};
pub use featexpr::{Config, ConfigSpace, FeatExpr};
pub use models::{Fts, Mts, Ts};
pub use verify::{verify, VerifyOptions, VerifyReport};
