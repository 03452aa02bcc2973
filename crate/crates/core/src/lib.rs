//! Reversible logic synthesis from classical logic networks down to
//! Clifford+T circuits, built around k-LUT mapping.

pub mod classify;
pub mod clifford;
pub mod error;
pub mod esop;
pub mod logic;
pub mod mapper;
pub mod pipeline;
pub mod rev;
pub mod synth;
pub mod tt;
pub mod verify;

pub use error::{Error, NetworkError, ParseError, Result, RevError};
