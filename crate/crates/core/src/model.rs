//! Problem model: the consecutive side-information instance, coded symbols
//! and index codes, plus the JSON interchange format for codes.
//!
//! All message-index arithmetic is modulo `p`. Construction formulas produce
//! raw (possibly negative or oversized) indices and reduce them here.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::bitset::{IndexSet, MAX_MESSAGES};
use crate::error::{Error, Result};

/// `(P, k, c)`: `P` messages, every client class knows `k` consecutive
/// messages, and an optional per-message decoder bound `c`.
///
/// There are exactly `P` effective clients, one per side-information window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProblemInstance {
    p: usize,
    k: usize,
    c: Option<usize>,
}

impl ProblemInstance {
    pub fn new(p: usize, k: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidInstance(format!(
                "p = {p} must be at least 2"
            )));
        }
        if p > MAX_MESSAGES {
            return Err(Error::InvalidInstance(format!(
                "p = {p} exceeds the supported maximum {MAX_MESSAGES}"
            )));
        }
        if k < 1 || k >= p {
            return Err(Error::InvalidInstance(format!(
                "k = {k} must satisfy 1 <= k <= p - 1 = {}",
                p - 1
            )));
        }
        Ok(ProblemInstance { p, k, c: None })
    }

    pub fn with_constraint(p: usize, k: usize, c: usize) -> Result<Self> {
        Self::new(p, k)?.constrained(Some(c))
    }

    /// Replaces the decoder bound.
    pub fn constrained(mut self, c: Option<usize>) -> Result<Self> {
        if c == Some(0) {
            return Err(Error::InvalidInstance("c must be at least 1".into()));
        }
        self.c = c;
        Ok(self)
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn c(&self) -> Option<usize> {
        self.c
    }

    /// Effective client indices `0..p`.
    #[inline]
    pub fn clients(&self) -> Range<usize> {
        0..self.p
    }

    /// `j mod p` in `[0, p)`, for any signed `j`.
    #[inline]
    pub fn normalize_index(&self, j: i64) -> usize {
        j.rem_euclid(self.p as i64) as usize
    }

    pub fn check_client(&self, i: usize) -> Result<()> {
        if i < self.p {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                p: self.p,
            })
        }
    }

    pub fn side_info(&self, i: usize) -> Result<SideInfoWindow> {
        self.check_client(i)?;
        Ok(SideInfoWindow {
            owner: i,
            members: self.known(i),
            p: self.p,
        })
    }

    /// `K_i = {i-1, ..., i-k}` as a bitset. Caller guarantees `i < p`.
    #[inline]
    pub fn known(&self, i: usize) -> IndexSet {
        let start = (i + self.p - self.k) % self.p;
        IndexSet::full(self.k).rotate(self.p, start)
    }

    /// `W_i`, the complement of `K_i`. Caller guarantees `i < p`.
    #[inline]
    pub fn wanted(&self, i: usize) -> IndexSet {
        IndexSet::full(self.p) - self.known(i)
    }

    pub fn all_messages(&self) -> IndexSet {
        IndexSet::full(self.p)
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={}, k={}", self.p, self.k)?;
        if let Some(c) = self.c {
            write!(f, ", c={c}")?;
        }
        Ok(())
    }
}

/// Side information of client class `owner`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideInfoWindow {
    pub owner: usize,
    pub members: IndexSet,
    p: usize,
}

impl SideInfoWindow {
    /// Members in window order `i-1, i-2, ..., i-k`.
    pub fn ordered(&self) -> Vec<usize> {
        let k = self.members.len();
        (1..=k)
            .map(|s| (self.owner + self.p - s) % self.p)
            .collect()
    }

    pub fn want_set(&self) -> IndexSet {
        IndexSet::full(self.p) - self.members
    }
}

/// XOR of raw message indices reduced modulo `p`.
///
/// Coincident indices cancel in pairs. Returns the surviving support and the
/// number of cancelled pairs.
pub fn xor_support<I>(instance: &ProblemInstance, indices: I) -> (IndexSet, usize)
where
    I: IntoIterator<Item = i64>,
{
    let mut support = IndexSet::EMPTY;
    let mut cancelled = 0;
    for j in indices {
        let m = instance.normalize_index(j);
        if support.contains(m) {
            cancelled += 1;
        }
        support.toggle(m);
    }
    (support, cancelled)
}

/// One broadcast transmission: the XOR of the messages in `support`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodedSymbol {
    support: IndexSet,
}

impl CodedSymbol {
    pub fn new(instance: &ProblemInstance, support: IndexSet) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidSymbol("support must be nonempty".into()));
        }
        if !support.is_subset(instance.all_messages()) {
            return Err(Error::InvalidSymbol(format!(
                "support {support} has indices outside [0, {})",
                instance.p()
            )));
        }
        Ok(CodedSymbol { support })
    }

    pub fn from_indices(instance: &ProblemInstance, indices: &[usize]) -> Result<Self> {
        let mut support = IndexSet::EMPTY;
        for &m in indices {
            if m >= instance.p() {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    p: instance.p(),
                });
            }
            if support.contains(m) {
                return Err(Error::InvalidSymbol(format!(
                    "index {m} repeated in support"
                )));
            }
            support.insert(m);
        }
        Self::new(instance, support)
    }

    #[inline]
    pub fn support(&self) -> IndexSet {
        self.support
    }
}

impl fmt::Display for CodedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|m| format!("x{m}")).collect();
        write!(f, "{}", parts.join(" ^ "))
    }
}

/// Which construction produced a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Case1,
    Case2,
    Case3,
    SingleQ0,
    MaxDecode,
    Constrained,
    External,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Case1 => "case1",
            Origin::Case2 => "case2",
            Origin::Case3 => "case3",
            Origin::SingleQ0 => "single_q0",
            Origin::MaxDecode => "max_decode",
            Origin::Constrained => "constrained",
            Origin::External => "external",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered list of coded symbols for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCode {
    instance: ProblemInstance,
    symbols: Vec<CodedSymbol>,
    origin: Origin,
}

impl IndexCode {
    pub fn new(
        instance: ProblemInstance,
        symbols: Vec<CodedSymbol>,
        origin: Origin,
    ) -> Result<Self> {
        for s in &symbols {
            if !s.support().is_subset(instance.all_messages()) {
                return Err(Error::InvalidSymbol(format!(
                    "support {} has indices outside [0, {})",
                    s.support(),
                    instance.p()
                )));
            }
        }
        Ok(IndexCode {
            instance,
            symbols,
            origin,
        })
    }

    /// Builds a code from raw supports, rejecting empty ones.
    pub fn from_supports(
        instance: ProblemInstance,
        supports: impl IntoIterator<Item = IndexSet>,
        origin: Origin,
    ) -> Result<Self> {
        let symbols = supports
            .into_iter()
            .map(|s| CodedSymbol::new(&instance, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(instance, symbols, origin)
    }

    pub fn empty(instance: ProblemInstance) -> Self {
        IndexCode {
            instance,
            symbols: Vec::new(),
            origin: Origin::External,
        }
    }

    #[inline]
    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    #[inline]
    pub fn symbols(&self) -> &[CodedSymbol] {
        &self.symbols
    }

    #[inline]
    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// Transmission count.
    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn supports(&self) -> Vec<IndexSet> {
        self.symbols.iter().map(|s| s.support()).collect()
    }

    /// Supports as sorted index lists, in symbol order.
    pub fn support_lists(&self) -> Vec<Vec<usize>> {
        self.symbols.iter().map(|s| s.support().to_vec()).collect()
    }

    /// Same code with every index shifted by `by` modulo `p`.
    pub fn shifted(&self, by: usize) -> Self {
        let p = self.instance.p();
        IndexCode {
            instance: self.instance,
            symbols: self
                .symbols
                .iter()
                .map(|s| CodedSymbol {
                    support: s.support().rotate(p, by),
                })
                .collect(),
            origin: self.origin,
        }
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub fn with_instance(mut self, instance: ProblemInstance) -> Result<Self> {
        if instance.p() != self.instance.p() {
            return Err(Error::InvalidInstance(format!(
                "cannot move a code over p = {} to p = {}",
                self.instance.p(),
                instance.p()
            )));
        }
        self.instance = instance;
        Ok(self)
    }

    /// Appends a symbol, keeping the origin.
    pub fn push(&mut self, symbol: CodedSymbol) -> Result<()> {
        if !symbol.support().is_subset(self.instance.all_messages()) {
            return Err(Error::InvalidSymbol(format!(
                "support {} out of range",
                symbol.support()
            )));
        }
        self.symbols.push(symbol);
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CodeFile::from(self)).expect("code file serialises")
    }

    /// Canonical single-line JSON.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&CodeFile::from(self)).expect("code file serialises")
    }

    /// Parses the interchange format. Rejects empty codes and empty supports.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: CodeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.try_into()
    }
}

impl fmt::Display for IndexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}:", self.origin, self.instance)?;
        for (n, s) in self.symbols.iter().enumerate() {
            write!(f, " w{} = {}", n + 1, s)?;
            if n + 1 < self.symbols.len() {
                write!(f, ";")?;
            }
        }
        Ok(())
    }
}

/// Wire form: `{"p", "k", "c", "origin", "symbols": [[int, ...], ...]}`.
#[derive(Debug, Serialize, Deserialize)]
struct CodeFile {
    p: usize,
    k: usize,
    #[serde(default)]
    c: Option<usize>,
    #[serde(default = "external")]
    origin: Origin,
    symbols: Vec<Vec<usize>>,
}

fn external() -> Origin {
    Origin::External
}

impl From<&IndexCode> for CodeFile {
    fn from(code: &IndexCode) -> Self {
        CodeFile {
            p: code.instance.p(),
            k: code.instance.k(),
            c: code.instance.c(),
            origin: code.origin,
            symbols: code.support_lists(),
        }
    }
}

impl TryFrom<CodeFile> for IndexCode {
    type Error = Error;

    fn try_from(file: CodeFile) -> Result<Self> {
        let instance = ProblemInstance::new(file.p, file.k)
            .and_then(|inst| inst.constrained(file.c))
            .map_err(|e| Error::Parse(e.to_string()))?;
        if file.symbols.is_empty() {
            return Err(Error::Parse("symbols must be nonempty".into()));
        }
        let mut symbols = Vec::with_capacity(file.symbols.len());
        for (n, raw) in file.symbols.iter().enumerate() {
            if raw.is_empty() {
                return Err(Error::Parse(format!("symbol {n} has an empty support")));
            }
            let s = CodedSymbol::from_indices(&instance, raw)
                .map_err(|e| Error::Parse(format!("symbol {n}: {e}")))?;
            symbols.push(s);
        }
        IndexCode::new(instance, symbols, file.origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn side_info_examples() {
        let inst = ProblemInstance::new(7, 3).unwrap();
        assert_eq!(inst.side_info(0).unwrap().ordered(), vec![6, 5, 4]);
        assert_eq!(inst.side_info(3).unwrap().ordered(), vec![2, 1, 0]);
        let inst = ProblemInstance::new(4, 2).unwrap();
        assert_eq!(inst.side_info(1).unwrap().members, set(&[0, 3]));
    }

    #[test]
    fn side_info_out_of_range() {
        let inst = ProblemInstance::new(7, 3).unwrap();
        assert_eq!(
            inst.side_info(7),
            Err(Error::IndexOutOfRange { index: 7, p: 7 })
        );
    }

    #[test]
    fn normalize_examples() {
        let p7 = ProblemInstance::new(7, 3).unwrap();
        let p9 = ProblemInstance::new(9, 4).unwrap();
        assert_eq!(p7.normalize_index(-1), 6);
        assert_eq!(p9.normalize_index(9), 0);
        // x_{i+P-k} with i = 3 in Example 1
        assert_eq!(p7.normalize_index(3 + 7 - 3), 0);
    }

    #[test]
    fn instance_validation() {
        assert!(ProblemInstance::new(1, 1).is_err());
        assert!(ProblemInstance::new(5, 0).is_err());
        assert!(ProblemInstance::new(5, 5).is_err());
        assert!(ProblemInstance::new(129, 3).is_err());
        assert!(ProblemInstance::with_constraint(9, 4, 0).is_err());
        assert_eq!(
            ProblemInstance::with_constraint(9, 4, 4).unwrap().c(),
            Some(4)
        );
    }

    #[test]
    fn xor_support_cancels_pairs() {
        let inst = ProblemInstance::new(5, 2).unwrap();
        let (s, cancelled) = xor_support(&inst, [0, 5, 2, 7, 7]);
        assert_eq!(s, set(&[2]));
        assert_eq!(cancelled, 2);
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let inst = ProblemInstance::with_constraint(9, 4, 4).unwrap();
        let code =
            IndexCode::from_supports(inst, [set(&[4, 0]), set(&[8, 3])], Origin::Constrained)
                .unwrap();
        let text = code.to_json_string();
        assert_eq!(
            text,
            r#"{"p":9,"k":4,"c":4,"origin":"constrained","symbols":[[0,4],[3,8]]}"#
        );
        assert_eq!(IndexCode::from_json_str(&text).unwrap(), code);
    }

    #[test]
    fn json_rejects_malformed_codes() {
        for bad in [
            r#"{"p":7,"k":3,"c":null,"origin":"external","symbols":[]}"#,
            r#"{"p":7,"k":3,"c":null,"origin":"external","symbols":[[]]}"#,
            r#"{"p":7,"k":3,"c":null,"origin":"external","symbols":[[0,7]]}"#,
            r#"{"p":7,"k":3,"c":null,"origin":"external","symbols":[[1,1]]}"#,
            r#"{"p":7,"k":7,"c":null,"origin":"external","symbols":[[1]]}"#,
            r#"{"p":7,"k":3,"c":null,"origin":"nope","symbols":[[1]]}"#,
        ] {
            assert!(
                matches!(IndexCode::from_json_str(bad), Err(Error::Parse(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn shifted_rotates_supports() {
        let inst = ProblemInstance::new(7, 3).unwrap();
        let code =
            IndexCode::from_supports(inst, [set(&[0, 4]), set(&[6])], Origin::External).unwrap();
        assert_eq!(code.shifted(3).support_lists(), vec![vec![0, 3], vec![2]]);
    }
}
