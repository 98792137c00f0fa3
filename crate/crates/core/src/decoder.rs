//! Client-side decoding of an index code.
//!
//! Three decoding rules are supported, from weakest to strongest:
//!
//! * `per_symbol`: one pass. A client decodes `m` from symbol `w` iff `m` is
//!   the only message of `w` outside its side information.
//! * `fixed_point`: the per-symbol rule iterated, with decoded messages added
//!   to the client's knowledge until nothing changes.
//! * `linear_closure`: `m` is decodable iff `e_m` lies in the GF(2) span of
//!   the symbols together with the client's side information.
//!
//! For every client and code, `per_symbol ⊆ fixed_point ⊆ linear_closure`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::gf2::Gf2Basis;
use crate::model::{IndexCode, ProblemInstance};

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum DecodingSemantics {
    PerSymbol,
    #[default]
    FixedPoint,
    LinearClosure,
}

impl DecodingSemantics {
    pub const ALL: [DecodingSemantics; 3] = [
        DecodingSemantics::PerSymbol,
        DecodingSemantics::FixedPoint,
        DecodingSemantics::LinearClosure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecodingSemantics::PerSymbol => "per_symbol",
            DecodingSemantics::FixedPoint => "fixed_point",
            DecodingSemantics::LinearClosure => "linear_closure",
        }
    }
}

impl fmt::Display for DecodingSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecodingSemantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "per_symbol" => Ok(DecodingSemantics::PerSymbol),
            "fixed_point" => Ok(DecodingSemantics::FixedPoint),
            "linear_closure" => Ok(DecodingSemantics::LinearClosure),
            other => Err(Error::Parse(format!(
                "unknown decoding semantics `{other}`"
            ))),
        }
    }
}

/// Messages a client with side information `known` decodes from `supports`.
///
/// The result never intersects `known`.
pub fn decode_known(
    supports: &[IndexSet],
    known: IndexSet,
    semantics: DecodingSemantics,
) -> IndexSet {
    match semantics {
        DecodingSemantics::PerSymbol => supports
            .iter()
            .map(|&s| s - known)
            .filter(|u| u.is_singleton())
            .fold(IndexSet::EMPTY, |acc, u| acc | u),
        DecodingSemantics::FixedPoint => {
            let mut knowledge = known;
            loop {
                let before = knowledge;
                for &s in supports {
                    let u = s - knowledge;
                    if u.is_singleton() {
                        knowledge |= u;
                    }
                }
                if knowledge == before {
                    break;
                }
            }
            knowledge - known
        }
        DecodingSemantics::LinearClosure => {
            // Quotient by the side information: drop known coordinates, then
            // a unit vector is reachable iff it is a row of the reduced basis.
            Gf2Basis::from_vectors(supports.iter().map(|&s| s - known)).unit_vectors()
        }
    }
}

/// Decoded sets for all `p` clients of `instance`.
pub fn decode_profile(
    instance: &ProblemInstance,
    supports: &[IndexSet],
    semantics: DecodingSemantics,
) -> Vec<IndexSet> {
    instance
        .clients()
        .map(|i| decode_known(supports, instance.known(i), semantics))
        .collect()
}

pub fn decode_client(code: &IndexCode, i: usize, semantics: DecodingSemantics) -> Result<IndexSet> {
    let instance = code.instance();
    instance.check_client(i)?;
    Ok(decode_known(&code.supports(), instance.known(i), semantics))
}

/// `(symbol position, message)` pairs a client decodes under the per-symbol rule.
pub fn per_symbol_sources(code: &IndexCode, i: usize) -> Result<Vec<(usize, usize)>> {
    let instance = code.instance();
    instance.check_client(i)?;
    let known = instance.known(i);
    Ok(code
        .symbols()
        .iter()
        .enumerate()
        .filter_map(|(n, s)| {
            let u = s.support() - known;
            u.is_singleton().then(|| (n, u.min().unwrap()))
        })
        .collect())
}

/// What every client decodes, and who decodes every message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    semantics: DecodingSemantics,
    decoded: Vec<IndexSet>,
    decoders: Vec<IndexSet>,
}

impl DecodeReport {
    pub fn from_profile(semantics: DecodingSemantics, decoded: Vec<IndexSet>) -> Self {
        let p = decoded.len();
        let mut decoders = vec![IndexSet::EMPTY; p];
        for (client, set) in decoded.iter().enumerate() {
            for m in set.iter() {
                decoders[m].insert(client);
            }
        }
        DecodeReport {
            semantics,
            decoded,
            decoders,
        }
    }

    pub fn semantics(&self) -> DecodingSemantics {
        self.semantics
    }

    /// Messages decoded by client `i`.
    pub fn decoded(&self, i: usize) -> IndexSet {
        self.decoded[i]
    }

    /// Clients (lacking `m`) that decode message `m`.
    pub fn decoders(&self, m: usize) -> IndexSet {
        self.decoders[m]
    }

    pub fn decoded_sets(&self) -> &[IndexSet] {
        &self.decoded
    }

    pub fn decoder_sets(&self) -> &[IndexSet] {
        &self.decoders
    }

    pub fn client_count(&self) -> usize {
        self.decoded.len()
    }

    /// Sum of decoded-set sizes over clients.
    pub fn total(&self) -> usize {
        self.decoded.iter().map(|s| s.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Wire<'a> {
            semantics: &'a str,
            decoded: BTreeMap<usize, Vec<usize>>,
            decoders: BTreeMap<usize, Vec<usize>>,
        }
        let wire = Wire {
            semantics: self.semantics.as_str(),
            decoded: self
                .decoded
                .iter()
                .enumerate()
                .map(|(i, s)| (i, s.to_vec()))
                .collect(),
            decoders: self
                .decoders
                .iter()
                .enumerate()
                .map(|(m, s)| (m, s.to_vec()))
                .collect(),
        };
        serde_json::to_value(wire).expect("report serialises")
    }
}

pub fn decode_report(code: &IndexCode, semantics: DecodingSemantics) -> DecodeReport {
    let profile = decode_profile(code.instance(), &code.supports(), semantics);
    DecodeReport::from_profile(semantics, profile)
}
