//! Exhaustive searches over small instances.
//!
//! Symbols are ordered by their bitmask value and a code by the ascending
//! list of its symbol masks. Every search returns the lexicographically
//! smallest witness in that order, whatever the thread count. Rotating a code
//! maps solutions to solutions, so the smallest symbol of the smallest
//! witness is always the minimum of its rotation orbit; searches only try
//! such first symbols.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bitset::IndexSet;
use crate::decoder::{decode_known, DecodingSemantics};
use crate::error::{Error, Result};
use crate::gf2::Gf2Basis;
use crate::model::{IndexCode, Origin, ProblemInstance};
use crate::verifier::{tally_decodes, verify_coverage, verify_exactly_one};

pub const MIN_LENGTH_MAX_P: usize = 14;
pub const MIN_LENGTH_MAX_L: usize = 3;
pub const EXACTLY_ONE_MAX_P: usize = 8;
pub const EXACTLY_ONE_MAX_P_LINEAR: usize = 10;
pub const MAX_TOTAL_MAX_P: usize = 10;
pub const MAX_TOTAL_MAX_L: usize = 2;
/// Largest `P` the unpruned reference search accepts.
pub const EXHAUSTIVE_MAX_P: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryKind {
    MinLength,
    ExactlyOneFeasible,
    MaxTotal,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::MinLength => "min_length",
            QueryKind::ExactlyOneFeasible => "exactly_one_feasible",
            QueryKind::MaxTotal => "max_total",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QueryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "min_length" => Ok(QueryKind::MinLength),
            "exactly_one" | "exactly_one_feasible" => Ok(QueryKind::ExactlyOneFeasible),
            "max_total" => Ok(QueryKind::MaxTotal),
            other => Err(Error::Parse(format!("unknown oracle query `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Query {
    pub kind: QueryKind,
    pub p: usize,
    pub k: usize,
    pub c: Option<usize>,
    pub semantics: DecodingSemantics,
    /// Length bound of the search; `None` when the search is unbounded.
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertResult {
    /// No code exists (within `bound`, when one is given).
    Infeasible,
    Found {
        witness: IndexCode,
        value: usize,
    },
}

impl Serialize for CertResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CertResult::Infeasible => s.serialize_str("infeasible"),
            CertResult::Found { witness, value } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("witness", &witness.support_lists())?;
                m.serialize_entry("value", value)?;
                m.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub query: Query,
    pub result: CertResult,
    pub nodes_explored: u64,
}

impl Certificate {
    pub fn is_infeasible(&self) -> bool {
        matches!(self.result, CertResult::Infeasible)
    }

    pub fn value(&self) -> Option<usize> {
        match &self.result {
            CertResult::Found { value, .. } => Some(*value),
            CertResult::Infeasible => None,
        }
    }

    pub fn witness(&self) -> Option<&IndexCode> {
        match &self.result {
            CertResult::Found { witness, .. } => Some(witness),
            CertResult::Infeasible => None,
        }
    }

    /// Same query and result; search effort may differ.
    pub fn same_verdict(&self, other: &Certificate) -> bool {
        self.query == other.query && self.result == other.result
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serialises")
    }
}

fn check_bound(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::BoundExceeded(format!(
            "{what} = {value} exceeds {limit}"
        )));
    }
    Ok(())
}

fn witness_code(instance: &ProblemInstance, symbols: &[IndexSet]) -> Result<IndexCode> {
    IndexCode::from_supports(*instance, symbols.iter().copied(), Origin::External)
}

/// All nonempty symbols that are the minimum of their rotation orbit.
fn canonical_symbols(p: usize) -> Vec<IndexSet> {
    (1u128..1 << p)
        .map(IndexSet::from_bits)
        .filter(|s| s.canonical_rotation(p) == *s)
        .collect()
}

/// Clients for which `s` leaves exactly one unknown.
fn cover_mask(instance: &ProblemInstance, s: IndexSet) -> IndexSet {
    instance
        .clients()
        .filter(|&i| (s - instance.known(i)).is_singleton())
        .collect()
}

fn covers_all(
    instance: &ProblemInstance,
    symbols: &[IndexSet],
    semantics: DecodingSemantics,
) -> bool {
    instance
        .clients()
        .all(|i| !decode_known(symbols, instance.known(i), semantics).is_empty())
}

/// Depth-first search for the smallest ascending tuple of `len` symbols,
/// whose first element is `first`, that satisfies coverage.
struct CoverSearch<'a> {
    instance: &'a ProblemInstance,
    semantics: DecodingSemantics,
    covers: &'a [IndexSet],
    max_cover: usize,
    len: usize,
    nodes: u64,
    stack: Vec<IndexSet>,
}

impl CoverSearch<'_> {
    fn run(&mut self, first: IndexSet) -> Option<Vec<IndexSet>> {
        self.stack.clear();
        self.stack.push(first);
        let covered = self.covers[first.bits() as usize];
        self.descend(first.bits() as usize + 1, covered)
    }

    fn descend(&mut self, next: usize, covered: IndexSet) -> Option<Vec<IndexSet>> {
        self.nodes += 1;
        let full = self.instance.all_messages();
        if self.stack.len() == self.len {
            let ok = match self.semantics {
                // a client gets something iff some symbol leaves it one unknown
                DecodingSemantics::PerSymbol | DecodingSemantics::FixedPoint => covered == full,
                DecodingSemantics::LinearClosure => {
                    covers_all(self.instance, &self.stack, self.semantics)
                }
            };
            return ok.then(|| self.stack.clone());
        }
        let slots = self.len - self.stack.len();
        if self.semantics != DecodingSemantics::LinearClosure
            && (full - covered).len() > slots * self.max_cover
        {
            return None;
        }
        for bits in next..self.covers.len() {
            let s = IndexSet::from_bits(bits as u128);
            self.stack.push(s);
            let found = self.descend(bits + 1, covered | self.covers[bits]);
            self.stack.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Blocks of first symbols searched in parallel; results are combined in
/// order so the winner and the node count do not depend on scheduling.
const BLOCK: usize = 32;

fn first_in_order<T, F>(firsts: &[IndexSet], search: F) -> (Option<T>, u64)
where
    T: Send,
    F: Fn(IndexSet) -> (Option<T>, u64) + Sync,
{
    let mut nodes = 0;
    for block in firsts.chunks(BLOCK) {
        let results: Vec<(Option<T>, u64)> = block.par_iter().map(|&s| search(s)).collect();
        for (found, n) in results {
            nodes += n;
            if found.is_some() {
                return (found, nodes);
            }
        }
    }
    (None, nodes)
}

/// Smallest `L <= l_max` for which some `L`-symbol code covers every client.
pub fn oracle_min_length(
    instance: &ProblemInstance,
    semantics: DecodingSemantics,
    l_max: usize,
) -> Result<Certificate> {
    let p = instance.p();
    check_bound("P", p, MIN_LENGTH_MAX_P)?;
    check_bound("L_max", l_max, MIN_LENGTH_MAX_L)?;
    let query = Query {
        kind: QueryKind::MinLength,
        p,
        k: instance.k(),
        c: instance.c(),
        semantics,
        bound: Some(l_max),
    };
    let covers: Vec<IndexSet> = (0u128..1 << p)
        .map(|b| cover_mask(instance, IndexSet::from_bits(b)))
        .collect();
    let max_cover = covers.iter().map(|c| c.len()).max().unwrap_or(0);
    let firsts = canonical_symbols(p);
    let mut nodes = 0;
    for len in 1..=l_max {
        let (found, n) = first_in_order(&firsts, |first| {
            let mut search = CoverSearch {
                instance,
                semantics,
                covers: &covers,
                max_cover,
                len,
                nodes: 0,
                stack: Vec::with_capacity(len),
            };
            let found = search.run(first);
            (found, search.nodes)
        });
        nodes += n;
        if let Some(symbols) = found {
            let witness = witness_code(instance, &symbols)?;
            debug_assert!(verify_coverage(&witness, semantics).holds);
            if !verify_coverage(&witness, semantics).holds {
                return Err(Error::InvalidSymbol(format!(
                    "min-length witness fails re-verification: {witness}"
                )));
            }
            return Ok(Certificate {
                query,
                result: CertResult::Found {
                    witness,
                    value: len,
                },
                nodes_explored: nodes,
            });
        }
    }
    Ok(Certificate {
        query,
        result: CertResult::Infeasible,
        nodes_explored: nodes,
    })
}

/// Symbols that, alone, leave client `c` exactly one unknown: `{m} ∪ A` with
/// `m` wanted by `c` and `A` inside its side information. Ascending.
fn source_symbols(instance: &ProblemInstance, c: usize) -> Vec<IndexSet> {
    let known = instance.known(c);
    let known_list = known.to_vec();
    let mut out = Vec::with_capacity(instance.wanted(c).len() << known_list.len());
    for m in instance.wanted(c) {
        for mask in 0u32..1 << known_list.len() {
            let mut s = IndexSet::singleton(m);
            for (bit, &x) in known_list.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    s.insert(x);
                }
            }
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Decoded-set sizes capped at 2, or `None` when some client exceeds one.
fn profile_at_most_one(
    instance: &ProblemInstance,
    symbols: &[IndexSet],
    semantics: DecodingSemantics,
) -> Option<Vec<IndexSet>> {
    let mut out = Vec::with_capacity(instance.p());
    for i in instance.clients() {
        let d = decode_known(symbols, instance.known(i), semantics);
        if d.len() > 1 {
            return None;
        }
        out.push(d);
    }
    Some(out)
}

/// Memo key for a partial code from which no exactly-one code is reachable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum MemoKey {
    Profile(Vec<IndexSet>),
    Symbols(Vec<IndexSet>),
    Span(Gf2Basis),
}

fn memo_key(
    instance: &ProblemInstance,
    symbols: &[IndexSet],
    profile: &[IndexSet],
    semantics: DecodingSemantics,
) -> MemoKey {
    let p = instance.p();
    match semantics {
        // per-symbol decoding is a union over symbols, so the future depends
        // only on the current decoded sets
        DecodingSemantics::PerSymbol => MemoKey::Profile(profile.to_vec()),
        DecodingSemantics::FixedPoint => {
            let best = (0..p)
                .map(|r| {
                    let mut v: Vec<IndexSet> = symbols.iter().map(|s| s.rotate(p, r)).collect();
                    v.sort();
                    v
                })
                .min()
                .expect("p >= 2");
            MemoKey::Symbols(best)
        }
        DecodingSemantics::LinearClosure => {
            let basis = Gf2Basis::from_vectors(symbols.iter().copied());
            let best = (0..p).map(|r| basis.rotated(p, r)).min().expect("p >= 2");
            MemoKey::Span(best)
        }
    }
}

struct FeasibilitySearch<'a> {
    instance: &'a ProblemInstance,
    semantics: DecodingSemantics,
    sources: Vec<Vec<IndexSet>>,
    dead: HashSet<MemoKey>,
    nodes: u64,
    stack: Vec<IndexSet>,
}

impl FeasibilitySearch<'_> {
    /// Extends `stack` to an exactly-one code if possible.
    ///
    /// Complete: in any exactly-one code each client decodes its message
    /// from a single source symbol for it (under linear closure, from some
    /// source vector of the span), so the lowest undecided client must
    /// eventually receive one of its source symbols. Overshoot is final
    /// because decoding is monotone in the symbol set.
    fn extend(&mut self, profile: &[IndexSet]) -> bool {
        self.nodes += 1;
        let Some(zero) = profile.iter().position(|d| d.is_empty()) else {
            return true;
        };
        let key = memo_key(self.instance, &self.stack, profile, self.semantics);
        if self.dead.contains(&key) {
            return false;
        }
        for idx in 0..self.sources[zero].len() {
            let s = self.sources[zero][idx];
            if self.stack.contains(&s) {
                continue;
            }
            self.stack.push(s);
            if let Some(next) = profile_at_most_one(self.instance, &self.stack, self.semantics) {
                if self.extend(&next) {
                    return true;
                }
            }
            self.stack.pop();
        }
        self.dead.insert(key);
        false
    }
}

/// Smallest exactly-one code drawn from `pool`, by iterative deepening over
/// length up to `l_max`.
fn smallest_exactly_one(
    instance: &ProblemInstance,
    semantics: DecodingSemantics,
    pool: &[IndexSet],
    l_max: usize,
    prune: bool,
) -> (Option<Vec<IndexSet>>, u64) {
    struct Walk<'a> {
        instance: &'a ProblemInstance,
        semantics: DecodingSemantics,
        pool: &'a [IndexSet],
        len: usize,
        prune: bool,
        nodes: u64,
        stack: Vec<IndexSet>,
    }
    impl Walk<'_> {
        fn go(&mut self, next: usize) -> Option<Vec<IndexSet>> {
            self.nodes += 1;
            if self.stack.len() == self.len {
                let profile = profile_at_most_one(self.instance, &self.stack, self.semantics)?;
                return profile
                    .iter()
                    .all(|d| d.len() == 1)
                    .then(|| self.stack.clone());
            }
            if self.prune
                && profile_at_most_one(self.instance, &self.stack, self.semantics).is_none()
            {
                return None;
            }
            for idx in next..self.pool.len() {
                self.stack.push(self.pool[idx]);
                let found = self.go(idx + 1);
                self.stack.pop();
                if found.is_some() {
                    return found;
                }
            }
            None
        }
    }

    let p = instance.p();
    let mut nodes = 0;
    for len in 1..=l_max {
        let firsts: Vec<usize> = (0..pool.len())
            .filter(|&n| pool[n].canonical_rotation(p) == pool[n])
            .collect();
        let mut found = None;
        for chunk in firsts.chunks(BLOCK) {
            let results: Vec<(Option<Vec<IndexSet>>, u64)> = chunk
                .par_iter()
                .map(|&n| {
                    let mut w = Walk {
                        instance,
                        semantics,
                        pool,
                        len,
                        prune,
                        nodes: 0,
                        stack: vec![pool[n]],
                    };
                    let f = w.go(n + 1);
                    (f, w.nodes)
                })
                .collect();
            for (f, n) in results {
                nodes += n;
                if f.is_some() {
                    found = f;
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        if found.is_some() {
            return (found, nodes);
        }
    }
    (None, nodes)
}

fn exactly_one_query(instance: &ProblemInstance, semantics: DecodingSemantics) -> Query {
    Query {
        kind: QueryKind::ExactlyOneFeasible,
        p: instance.p(),
        k: instance.k(),
        c: instance.c(),
        semantics,
        bound: None,
    }
}

fn exactly_one_certificate(
    instance: &ProblemInstance,
    semantics: DecodingSemantics,
    found: Option<Vec<IndexSet>>,
    nodes: u64,
) -> Result<Certificate> {
    let query = exactly_one_query(instance, semantics);
    let Some(symbols) = found else {
        return Ok(Certificate {
            query,
            result: CertResult::Infeasible,
            nodes_explored: nodes,
        });
    };
    let witness = witness_code(instance, &symbols)?;
    if !verify_exactly_one(&witness, semantics).holds {
        return Err(Error::InvalidSymbol(format!(
            "exactly-one witness fails re-verification: {witness}"
        )));
    }
    let value = witness.len();
    Ok(Certificate {
        query,
        result: CertResult::Found { witness, value },
        nodes_explored: nodes,
    })
}

/// Whether any code, of any length, gives every client exactly one message.
///
/// A feasible certificate carries the smallest shortest code built from
/// source symbols (see [`source_symbols`]); under per-symbol and fixed-point
/// decoding every shortest exactly-one code has that form.
pub fn oracle_exactly_one_feasible(
    instance: &ProblemInstance,
    semantics: DecodingSemantics,
) -> Result<Certificate> {
    let p = instance.p();
    let limit = if semantics == DecodingSemantics::LinearClosure {
        EXACTLY_ONE_MAX_P_LINEAR
    } else {
        EXACTLY_ONE_MAX_P
    };
    check_bound("P", p, limit)?;
    let sources: Vec<Vec<IndexSet>> = instance
        .clients()
        .map(|c| source_symbols(instance, c))
        .collect();
    let mut search = FeasibilitySearch {
        instance,
        semantics,
        sources,
        dead: HashSet::new(),
        nodes: 0,
        stack: Vec::new(),
    };
    let start = vec![IndexSet::EMPTY; p];
    let feasible = search.extend(&start);
    let mut nodes = search.nodes;
    if !feasible {
        return exactly_one_certificate(instance, semantics, None, nodes);
    }
    let upper = search.stack.len();
    let mut pool: Vec<IndexSet> = search.sources.concat();
    pool.sort();
    pool.dedup();
    let (found, n) = smallest_exactly_one(instance, semantics, &pool, upper, true);
    nodes += n;
    if found.is_none() {
        return Err(Error::InvalidSymbol(format!(
            "no witness of length <= {upper} found after a feasible verdict for {instance}"
        )));
    }
    exactly_one_certificate(instance, semantics, found, nodes)
}

/// Unpruned reference for [`oracle_exactly_one_feasible`]: every subset of
/// every nonempty symbol (source symbols only under linear closure), by
/// length then lexicographically, up to `P` symbols.
pub fn oracle_exactly_one_exhaustive(
    instance: &ProblemInstance,
    semantics: DecodingSemantics,
) -> Result<Certificate> {
    let p = instance.p();
    check_bound("P", p, EXHAUSTIVE_MAX_P)?;
    let mut pool: Vec<IndexSet> = if semantics == DecodingSemantics::LinearClosure {
        instance
            .clients()
            .flat_map(|c| source_symbols(instance, c))
            .collect()
    } else {
        (1u128..1 << p).map(IndexSet::from_bits).collect()
    };
    pool.sort();
    pool.dedup();
    let (found, nodes) = smallest_exactly_one(instance, semantics, &pool, p, false);
    exactly_one_certificate(instance, semantics, found, nodes)
}

/// Largest total number of decodes over all `l`-symbol codes.
pub fn oracle_max_total(
    instance: &ProblemInstance,
    l: usize,
    semantics: DecodingSemantics,
) -> Result<Certificate> {
    let p = instance.p();
    check_bound("P", p, MAX_TOTAL_MAX_P)?;
    check_bound("L", l, MAX_TOTAL_MAX_L)?;
    let query = Query {
        kind: QueryKind::MaxTotal,
        p,
        k: instance.k(),
        c: instance.c(),
        semantics,
        bound: Some(l),
    };
    if l == 0 {
        return Ok(Certificate {
            query,
            result: CertResult::Found {
                witness: IndexCode::empty(*instance),
                value: 0,
            },
            nodes_explored: 1,
        });
    }
    let total = |symbols: &[IndexSet]| -> usize {
        instance
            .clients()
            .map(|i| decode_known(symbols, instance.known(i), semantics).len())
            .sum()
    };
    let firsts = canonical_symbols(p);
    let all = 1u128 << p;
    // (total, reversed witness): max picks the smallest witness among ties
    type Best = Option<(usize, std::cmp::Reverse<Vec<IndexSet>>)>;
    let (best, nodes) = firsts
        .par_iter()
        .map(|&s1| {
            if l == 1 {
                return (Some((total(&[s1]), std::cmp::Reverse(vec![s1]))), 1u64);
            }
            let mut best: Best = None;
            let mut nodes = 0u64;
            for b in s1.bits() + 1..all {
                let pair = vec![s1, IndexSet::from_bits(b)];
                nodes += 1;
                let cand = Some((total(&pair), std::cmp::Reverse(pair)));
                if cand > best {
                    best = cand;
                }
            }
            (best, nodes)
        })
        .reduce(|| (None, 0), |(a, na), (b, nb)| (a.max(b), na + nb));
    let Some((value, std::cmp::Reverse(symbols))) = best else {
        return Err(Error::BoundExceeded(format!(
            "no {l}-symbol code exists for P = {p}"
        )));
    };
    if value > l * p {
        return Err(Error::BoundExceeded(format!(
            "total {value} exceeds L*P = {}",
            l * p
        )));
    }
    let witness = witness_code(instance, &symbols)?;
    if tally_decodes(&witness, semantics).total != value {
        return Err(Error::InvalidSymbol(format!(
            "max-total witness fails re-verification: {witness}"
        )));
    }
    Ok(Certificate {
        query,
        result: CertResult::Found { witness, value },
        nodes_explored: nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FP: DecodingSemantics = DecodingSemantics::FixedPoint;

    fn inst(p: usize, k: usize) -> ProblemInstance {
        ProblemInstance::new(p, k).unwrap()
    }

    #[test]
    fn min_length_examples() {
        let c = oracle_min_length(&inst(6, 3), FP, 2).unwrap();
        assert_eq!(c.value(), Some(1));
        assert_eq!(c.witness().unwrap().support_lists(), vec![vec![0, 3]]);
        assert_eq!(
            oracle_min_length(&inst(7, 4), FP, 2).unwrap().value(),
            Some(2)
        );
        let c = oracle_min_length(&inst(2, 1), FP, 1).unwrap();
        assert_eq!(c.witness().unwrap().support_lists(), vec![vec![0, 1]]);
    }

    #[test]
    fn min_length_bounds() {
        assert!(matches!(
            oracle_min_length(&inst(15, 3), FP, 2),
            Err(Error::BoundExceeded(_))
        ));
        assert!(matches!(
            oracle_min_length(&inst(6, 3), FP, 4),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn min_length_infeasible_below_bound() {
        let c = oracle_min_length(&inst(7, 4), FP, 1).unwrap();
        assert!(c.is_infeasible());
        assert_eq!(c.to_json()["result"], "infeasible");
    }

    #[test]
    fn source_symbols_leave_one_unknown() {
        let i = inst(6, 2);
        for c in i.clients() {
            let s = source_symbols(&i, c);
            assert_eq!(s.len(), 4 * 4);
            assert!(s.iter().all(|&x| (x - i.known(c)).is_singleton()));
        }
    }

    #[test]
    fn exactly_one_examples() {
        assert!(oracle_exactly_one_feasible(&inst(5, 1), FP)
            .unwrap()
            .is_infeasible());
        assert!(oracle_exactly_one_feasible(&inst(5, 3), FP)
            .unwrap()
            .is_infeasible());
        let c = oracle_exactly_one_feasible(&inst(6, 1), FP).unwrap();
        assert_eq!(c.value(), Some(3));
    }

    #[test]
    fn exhaustive_matches_pruned() {
        for p in 2..=4 {
            for k in 1..p {
                for sem in DecodingSemantics::ALL {
                    let i = inst(p, k);
                    let a = oracle_exactly_one_feasible(&i, sem).unwrap();
                    let b = oracle_exactly_one_exhaustive(&i, sem).unwrap();
                    assert!(a.same_verdict(&b), "P={p} k={k} {sem}");
                }
            }
        }
    }

    #[test]
    fn max_total_examples() {
        assert_eq!(
            oracle_max_total(&inst(6, 4), 2, FP).unwrap().value(),
            Some(12)
        );
        let c = oracle_max_total(&inst(6, 4), 0, FP).unwrap();
        assert_eq!(c.value(), Some(0));
        assert!(matches!(
            oracle_max_total(&inst(11, 4), 2, FP),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn certificate_json_shape() {
        let c = oracle_min_length(&inst(6, 3), FP, 2).unwrap();
        let j = c.to_json();
        assert_eq!(j["query"]["kind"], "min_length");
        assert_eq!(j["query"]["bound"], 2);
        assert_eq!(j["result"]["witness"], serde_json::json!([[0, 3]]));
        assert_eq!(j["result"]["value"], 1);
        assert!(j["nodes_explored"].as_u64().unwrap() > 0);
    }
}
