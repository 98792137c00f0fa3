//! Machine-checked decodability claims over decode reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::IndexSet;
use crate::constructions::{
    construct_constrained, construct_exactly_one, construct_max, exactly_one_case,
    Construction1Schedule, ExactlyOneCase, MaxBranch, SplitParams,
};
use crate::decoder::{decode_report, per_symbol_sources, DecodeReport, DecodingSemantics};
use crate::error::{Error, Result};
use crate::model::{IndexCode, ProblemInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    ExactlyOne,
    Coverage,
    CConstraint,
    MaxTally,
    ExpectedAssignment,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::ExactlyOne => "exactly_one",
            Claim::Coverage => "coverage",
            Claim::CConstraint => "c_constraint",
            Claim::MaxTally => "max_tally",
            Claim::ExpectedAssignment => "expected_assignment",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "exactly_one" => Ok(Claim::ExactlyOne),
            "coverage" => Ok(Claim::Coverage),
            "c_constraint" => Ok(Claim::CConstraint),
            "max_tally" => Ok(Claim::MaxTally),
            "expected_assignment" => Ok(Claim::ExpectedAssignment),
            other => Err(Error::Parse(format!("unknown claim `{other}`"))),
        }
    }
}

/// What a violation is about. Whole-code violations sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Code,
    Client,
    Message,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub subject: Subject,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub detail: String,
}

impl Violation {
    pub fn client(i: usize, detail: impl Into<String>) -> Self {
        Violation {
            subject: Subject::Client,
            index: Some(i),
            detail: detail.into(),
        }
    }

    pub fn message(m: usize, detail: impl Into<String>) -> Self {
        Violation {
            subject: Subject::Message,
            index: Some(m),
            detail: detail.into(),
        }
    }

    pub fn code(detail: impl Into<String>) -> Self {
        Violation {
            subject: Subject::Code,
            index: None,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.subject, self.index) {
            (Subject::Client, Some(i)) => write!(f, "client {i}: {}", self.detail),
            (Subject::Message, Some(m)) => write!(f, "message {m}: {}", self.detail),
            _ => write!(f, "code: {}", self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub claim: Claim,
    pub semantics: DecodingSemantics,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl VerificationOutcome {
    pub fn new(claim: Claim, semantics: DecodingSemantics, mut violations: Vec<Violation>) -> Self {
        violations.sort();
        VerificationOutcome {
            claim,
            semantics,
            holds: violations.is_empty(),
            violations,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("outcome serialises")
    }
}

fn exactly_one_in(report: &DecodeReport) -> Vec<Violation> {
    report
        .decoded_sets()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.len() != 1)
        .map(|(i, d)| Violation::client(i, format!("decodes {} messages {d}", d.len())))
        .collect()
}

fn coverage_in(report: &DecodeReport) -> Vec<Violation> {
    report
        .decoded_sets()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_empty())
        .map(|(i, _)| Violation::client(i, "decodes nothing"))
        .collect()
}

pub fn verify_exactly_one(code: &IndexCode, semantics: DecodingSemantics) -> VerificationOutcome {
    let report = decode_report(code, semantics);
    VerificationOutcome::new(Claim::ExactlyOne, semantics, exactly_one_in(&report))
}

pub fn verify_coverage(code: &IndexCode, semantics: DecodingSemantics) -> VerificationOutcome {
    let report = decode_report(code, semantics);
    VerificationOutcome::new(Claim::Coverage, semantics, coverage_in(&report))
}

/// Coverage, plus at most `c` decoders (clients lacking it) per message.
pub fn verify_c_constraint(
    code: &IndexCode,
    c: usize,
    semantics: DecodingSemantics,
) -> VerificationOutcome {
    let report = decode_report(code, semantics);
    let mut violations = coverage_in(&report);
    for (m, who) in report.decoder_sets().iter().enumerate() {
        if who.len() > c {
            violations.push(Violation::message(
                m,
                format!("decoded by {} clients {who}, bound is {c}", who.len()),
            ));
        }
    }
    VerificationOutcome::new(Claim::CConstraint, semantics, violations)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub count_zero: usize,
    pub count_one: usize,
    pub count_two: usize,
    /// Sum of decoded-set sizes over all clients.
    pub total: usize,
}

impl Tally {
    pub fn of(report: &DecodeReport) -> Self {
        let mut t = Tally::default();
        for d in report.decoded_sets() {
            match d.len() {
                0 => t.count_zero += 1,
                1 => t.count_one += 1,
                2 => t.count_two += 1,
                _ => {}
            }
            t.total += d.len();
        }
        t
    }
}

pub fn tally_decodes(code: &IndexCode, semantics: DecodingSemantics) -> Tally {
    Tally::of(&decode_report(code, semantics))
}

/// Counts the max-decode construction promises for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxTallyContract {
    pub branch: MaxBranch,
    pub count_one: usize,
    pub count_two: usize,
    pub total: usize,
}

impl MaxTallyContract {
    pub fn for_instance(instance: &ProblemInstance) -> Result<Self> {
        let (p, k) = (instance.p(), instance.k());
        let branch = MaxBranch::of(instance)?;
        let (count_one, count_two) = match branch {
            MaxBranch::Uncoded => (2 * k, p - 2 * k),
            MaxBranch::SingleSymbol => (p, 0),
            MaxBranch::LowRemainder | MaxBranch::HighRemainder => {
                let b = SplitParams::new(instance).b;
                (b, p - b)
            }
        };
        Ok(MaxTallyContract {
            branch,
            count_one,
            count_two,
            total: count_one + 2 * count_two,
        })
    }
}

pub fn verify_max_tally(
    code: &IndexCode,
    semantics: DecodingSemantics,
) -> Result<VerificationOutcome> {
    let expected = MaxTallyContract::for_instance(code.instance())?;
    let report = decode_report(code, semantics);
    let got = Tally::of(&report);
    let mut violations = Vec::new();
    if got.count_one != expected.count_one {
        violations.push(Violation::code(format!(
            "{} clients decode one message, expected {}",
            got.count_one, expected.count_one
        )));
    }
    if got.count_two != expected.count_two {
        violations.push(Violation::code(format!(
            "{} clients decode two messages, expected {}",
            got.count_two, expected.count_two
        )));
    }
    if got.total != expected.total {
        violations.push(Violation::code(format!(
            "total {} decodes, expected {}",
            got.total, expected.total
        )));
    }
    for (i, d) in report.decoded_sets().iter().enumerate() {
        if d.is_empty() || d.len() > 2 {
            violations.push(Violation::client(
                i,
                format!("decodes {} messages {d}", d.len()),
            ));
        }
    }
    Ok(VerificationOutcome::new(
        Claim::MaxTally,
        semantics,
        violations,
    ))
}

/// Which message each client should get, and from which symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedAssignment {
    p: usize,
    groups: BTreeMap<usize, (usize, usize)>,
}

impl ExpectedAssignment {
    /// Builds from `(client, message, symbol position)` triples. A client may
    /// appear only once.
    pub fn from_groups<I>(instance: &ProblemInstance, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let p = instance.p();
        let mut groups = BTreeMap::new();
        for (client, msg, symbol) in triples {
            instance.check_client(client)?;
            instance.check_client(msg)?;
            if groups.insert(client, (msg, symbol)).is_some() {
                return Err(Error::InvalidInstance(format!(
                    "client {client} assigned twice"
                )));
            }
        }
        Ok(ExpectedAssignment { p, groups })
    }

    pub fn get(&self, client: usize) -> Option<(usize, usize)> {
        self.groups.get(&client).copied()
    }

    pub fn groups(&self) -> &BTreeMap<usize, (usize, usize)> {
        &self.groups
    }

    pub fn is_partition(&self) -> bool {
        self.groups.len() == self.p
    }
}

/// Table of Construction 1: which client group gets which message from which symbol.
pub fn expected_assignment_case1(
    instance: &ProblemInstance,
    i: usize,
) -> Result<ExpectedAssignment> {
    let sched = Construction1Schedule::new(instance)?;
    instance.check_client(i)?;
    let (p, k) = (instance.p() as i64, instance.k() as i64);
    let at = |x: i64| instance.normalize_index(x);
    let i = i as i64;
    let mut triples = Vec::with_capacity(p as usize);
    for c in i - k + 1..=i {
        triples.push((at(c), at(i), 0));
    }
    for c in i + 1..=i + k {
        triples.push((at(c), at(i + p - k), 0));
    }
    let t = sched.t_count as i64;
    for j in 2..=t {
        let start = i + (j - 1) * k + 3 - j;
        let end = if j < t {
            i + j * k - j + 1
        } else {
            start + sched.r as i64
        };
        let msg = at(i + sched.message_offset(k as usize, j as usize));
        for c in start..=end {
            triples.push((at(c), msg, (j - 1) as usize));
        }
    }
    ExpectedAssignment::from_groups(instance, triples)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub client: usize,
    pub expected_message: usize,
    pub expected_symbol: usize,
    pub actual: IndexSet,
    /// Whether the expected symbol alone yields the expected message.
    pub source_ok: bool,
}

/// Clients whose decoding differs from `expected`; empty iff they all match.
pub fn report_discrepancies(
    code: &IndexCode,
    expected: &ExpectedAssignment,
    semantics: DecodingSemantics,
) -> Vec<Discrepancy> {
    let report = decode_report(code, semantics);
    let mut out = Vec::new();
    for (&client, &(msg, symbol)) in expected.groups() {
        if client >= report.client_count() {
            continue;
        }
        let actual = report.decoded(client);
        let source_ok = per_symbol_sources(code, client)
            .map(|v| v.contains(&(symbol, msg)))
            .unwrap_or(false);
        if actual != IndexSet::singleton(msg) || !source_ok {
            out.push(Discrepancy {
                client,
                expected_message: msg,
                expected_symbol: symbol,
                actual,
                source_ok,
            });
        }
    }
    out
}

pub fn verify_expected_assignment(
    code: &IndexCode,
    expected: &ExpectedAssignment,
    semantics: DecodingSemantics,
) -> VerificationOutcome {
    let mut violations: Vec<Violation> = report_discrepancies(code, expected, semantics)
        .into_iter()
        .map(|d| {
            Violation::client(
                d.client,
                format!(
                    "expected x{} from w{}, decodes {}{}",
                    d.expected_message,
                    d.expected_symbol + 1,
                    d.actual,
                    if d.source_ok {
                        ""
                    } else {
                        " (not from that symbol)"
                    }
                ),
            )
        })
        .collect();
    if !expected.is_partition() {
        violations.push(Violation::code(format!(
            "assignment covers {} of {} clients",
            expected.groups().len(),
            code.instance().p()
        )));
    }
    VerificationOutcome::new(Claim::ExpectedAssignment, semantics, violations)
}

/// A failed claim for one instance and anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub p: usize,
    pub k: usize,
    pub c: Option<usize>,
    pub anchor: usize,
    pub outcome: VerificationOutcome,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={} k={}", self.p, self.k)?;
        if let Some(c) = self.c {
            write!(f, " c={c}")?;
        }
        write!(
            f,
            " i={}: {} fails under {} ({} violations",
            self.anchor,
            self.outcome.claim,
            self.outcome.semantics,
            self.outcome.violations.len()
        )?;
        if let Some(v) = self.outcome.violations.first() {
            write!(f, ", first: {v}")?;
        }
        f.write_str(")")
    }
}

/// Runs `check` over every instance and anchor, keeping failures, sorted by
/// `(p, k, c, anchor)`.
fn audit<F>(instances: Vec<ProblemInstance>, check: F) -> Result<Vec<Finding>>
where
    F: Fn(&ProblemInstance, usize) -> Result<Option<VerificationOutcome>> + Sync,
{
    let per_instance: Vec<Result<Vec<Finding>>> = instances
        .par_iter()
        .map(|inst| {
            let mut found = Vec::new();
            for i in inst.clients() {
                if let Some(outcome) = check(inst, i)? {
                    if !outcome.holds {
                        found.push(Finding {
                            p: inst.p(),
                            k: inst.k(),
                            c: inst.c(),
                            anchor: i,
                            outcome,
                        });
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_instance {
        out.extend(r?);
    }
    Ok(out)
}

/// Exactly-one over every dispatched `(P, k)` with `2 <= P <= p_max`.
pub fn audit_exactly_one(p_max: usize, semantics: DecodingSemantics) -> Result<Vec<Finding>> {
    let instances = (2..=p_max)
        .flat_map(|p| (1..p).map(move |k| (p, k)))
        .map(|(p, k)| ProblemInstance::new(p, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|inst| {
            matches!(
                exactly_one_case(inst),
                ExactlyOneCase::Case1 | ExactlyOneCase::Case2 | ExactlyOneCase::Case3
            )
        })
        .collect();
    audit(instances, |inst, i| {
        let code = construct_exactly_one(inst, i)?;
        Ok(Some(verify_exactly_one(&code, semantics)))
    })
}

/// c-constraint over every `k <= c < P-k` with `P <= p_max`.
pub fn audit_c_constraint(p_max: usize, semantics: DecodingSemantics) -> Result<Vec<Finding>> {
    let mut instances = Vec::new();
    for p in 3..=p_max {
        for k in 1..p {
            for c in k..p.saturating_sub(k) {
                instances.push(ProblemInstance::with_constraint(p, k, c)?);
            }
        }
    }
    audit(instances, |inst, i| {
        let code = construct_constrained(inst, i)?;
        let c = inst.c().expect("constrained instance");
        Ok(Some(verify_c_constraint(&code, c, semantics)))
    })
}

/// Max-decode tallies over every `P <= p_max` with `P >= k+2`.
pub fn audit_max_tally(p_max: usize, semantics: DecodingSemantics) -> Result<Vec<Finding>> {
    let mut instances = Vec::new();
    for p in 3..=p_max {
        for k in 1..=p - 2 {
            instances.push(ProblemInstance::new(p, k)?);
        }
    }
    audit(instances, |inst, i| {
        let code = construct_max(inst, i)?;
        verify_max_tally(&code, semantics).map(Some)
    })
}
