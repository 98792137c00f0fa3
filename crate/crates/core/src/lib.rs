//! Pliable index codes for consecutive side information over GF(2).
//!
//! Client `i` of an instance `(P, k)` knows the `k` messages
//! `x_{i-1}, ..., x_{i-k}` (indices mod `P`) and is satisfied by any other
//! message. [`constructions`] builds the codes, [`decoder`] simulates the
//! clients, [`verifier`] checks claims about the result and [`oracle`]
//! searches small instances exhaustively.

pub mod bitset;
pub mod constructions;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod model;
pub mod oracle;
pub mod verifier;

pub use bitset::IndexSet;
pub use decoder::{decode_client, decode_report, DecodeReport, DecodingSemantics};
pub use error::{Error, Result};
pub use model::{CodedSymbol, IndexCode, Origin, ProblemInstance, SideInfoWindow};
pub use oracle::Certificate;
pub use verifier::{Claim, VerificationOutcome};
