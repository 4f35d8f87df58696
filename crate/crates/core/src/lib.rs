//! Exact sensitivity measures and classical adversary bounds of partial functions.
//!
//! Functions are explicit truth tables ([`PartialFunction`]); every measure is
//! an exact rational computed by the solvers in `ratlp`.

pub mod constructions;
pub mod error;
pub mod exec;
pub mod function;
pub mod measures;
pub mod report;
pub mod verify;
pub mod witness_file;

pub use error::{Error, Result};
pub use exec::Exec;
pub use function::{
    parse_archive, write_archive, Block, PartialFunction, SensitiveBlockFamily, Word,
};
pub use ratlp::Rational;
