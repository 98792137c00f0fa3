//! Command implementations behind the `picod` binary.
//!
//! Each command returns its standard output and an exit status, so the
//! binary stays a thin wrapper and tests can drive commands in-process.

use std::fmt;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use picod::constructions::{
    construct_case1, construct_case2, construct_case3, construct_constrained,
    construct_exactly_one, construct_max_with_j, construct_single_q0,
};
use picod::oracle::{oracle_exactly_one_feasible, oracle_max_total, oracle_min_length, QueryKind};
use picod::verifier::{
    expected_assignment_case1, report_discrepancies, tally_decodes, verify_c_constraint,
    verify_coverage, verify_exactly_one, verify_expected_assignment, verify_max_tally, Claim,
};
use picod::{DecodingSemantics, Error, IndexCode, Origin, ProblemInstance};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Usage = 1,
    Infeasible = 2,
    Unsupported = 3,
    VerificationFailed = 4,
    BoundExceeded = 5,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// A command that could not produce its normal output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Usage,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Infeasible(_) => Status::Infeasible,
            Error::Unsupported { .. } => Status::Unsupported,
            Error::BoundExceeded(_) => Status::BoundExceeded,
            _ => Status::Usage,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub status: Status,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            status: Status::Ok,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "picod",
    version,
    about = "Pliable index codes for consecutive side information"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and print it as JSON.
    Construct(ConstructArgs),
    /// Check a claim against a code file.
    Verify(VerifyArgs),
    /// Run an exhaustive search and print its certificate.
    Oracle(OracleArgs),
    /// Build and check codes over a grid of instances, as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    ExactlyOne,
    Case1,
    Case2,
    Case3,
    SingleQ0,
    Max,
    Constrained,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::ExactlyOne,
        Case::Case1,
        Case::Case2,
        Case::Case3,
        Case::SingleQ0,
        Case::Max,
        Case::Constrained,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Case::ExactlyOne => "exactly-one",
            Case::Case1 => "case1",
            Case::Case2 => "case2",
            Case::Case3 => "case3",
            Case::SingleQ0 => "single-q0",
            Case::Max => "max",
            Case::Constrained => "constrained",
        }
    }

    pub fn build(
        self,
        instance: &ProblemInstance,
        i: usize,
        j: Option<usize>,
    ) -> picod::Result<IndexCode> {
        if j.is_some() && self != Case::Max {
            return Err(Error::ParameterRange {
                construction: "cli",
                detail: "--j applies only to --case max".into(),
            });
        }
        match self {
            Case::ExactlyOne => construct_exactly_one(instance, i),
            Case::Case1 => construct_case1(instance, i),
            Case::Case2 => construct_case2(instance, i),
            Case::Case3 => construct_case3(instance, i),
            Case::SingleQ0 => construct_single_q0(instance, i),
            Case::Max => construct_max_with_j(instance, i, j),
            Case::Constrained => construct_constrained(instance, i),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().replace('_', "-");
        Case::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .ok_or_else(|| {
                let names: Vec<_> = Case::ALL.iter().map(|c| c.as_str()).collect();
                format!("unknown case `{s}` (expected one of {})", names.join(", "))
            })
    }
}

fn parse_semantics(s: &str) -> Result<DecodingSemantics, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long = "case", default_value = "exactly-one")]
    pub case: Case,
    /// Anchor index.
    #[arg(long, default_value_t = 0)]
    pub i: usize,
    /// Decode bound, required by `constrained`.
    #[arg(long)]
    pub c: Option<usize>,
    /// Second uncoded message for `max` when P > 3k.
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file in the JSON interchange format, or `-` for standard input.
    pub code: PathBuf,
    #[arg(long, value_parser = parse_claim)]
    pub claim: Claim,
    #[arg(long, value_parser = parse_semantics, default_value = "fixed_point")]
    pub semantics: DecodingSemantics,
    /// Bound for `c_constraint`; defaults to the code file's `c`.
    #[arg(long)]
    pub c: Option<usize>,
    /// Anchor the code was built with, for `expected_assignment`.
    #[arg(long, default_value_t = 0)]
    pub i: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleKind {
    MinLength,
    ExactlyOne,
    MaxTotal,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub kind: OracleKind,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long, value_parser = parse_semantics, default_value = "fixed_point")]
    pub semantics: DecodingSemantics,
    /// Largest code length tried by `min-length`.
    #[arg(long = "L-max", default_value_t = 2)]
    pub l_max: usize,
    /// Code length for `max-total`.
    #[arg(long = "L", default_value_t = 2)]
    pub l: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Message counts, as `A..B` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    pub p: RangeInclusive<usize>,
    /// Window lengths, comma separated or `A..B`; default is every k.
    #[arg(long, value_parser = parse_list)]
    pub k: Option<KList>,
    /// Comma-separated cases; an empty list writes only the header.
    #[arg(long = "case", default_value = "exactly-one")]
    pub cases: String,
    /// Comma-separated decoding semantics.
    #[arg(long = "semantics", default_value = "fixed_point")]
    pub semantics: String,
    /// Decode bound for `constrained` rows; defaults to k.
    #[arg(long)]
    pub c: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let r = if let Some((a, b)) = s.split_once("..=") {
        num(a)?..=num(b)?
    } else if let Some((a, b)) = s.split_once("..") {
        num(a)?..=num(b)?
    } else {
        let v = num(s)?;
        v..=v
    };
    if r.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(r)
}

/// Parsed `--k` value. A bare `Vec` would make clap expect repeated flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KList(pub Vec<usize>);

fn parse_list(s: &str) -> Result<KList, String> {
    if s.contains("..") {
        return parse_range(s).map(|r| KList(r.collect()));
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()
        .map(KList)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serialises");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Construct(a) => cmd_construct(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Sweep(a) => cmd_sweep(&a),
    }
}

pub fn cmd_construct(a: &ConstructArgs) -> Result<Output, Failure> {
    let instance = ProblemInstance::new(a.p, a.k)?.constrained(a.c)?;
    let code = a.case.build(&instance, a.i, a.j)?;
    let mut text = code.to_json_string();
    text.push('\n');
    Ok(Output::ok(text))
}

fn read_code(path: &Path) -> Result<IndexCode, Failure> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(IndexCode::from_json_str(&text)?)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Output, Failure> {
    let code = read_code(&a.code)?;
    let sem = a.semantics;
    let outcome = match a.claim {
        Claim::ExactlyOne => verify_exactly_one(&code, sem),
        Claim::Coverage => verify_coverage(&code, sem),
        Claim::CConstraint => {
            let c = a
                .c
                .or(code.instance().c())
                .ok_or_else(|| Failure::usage("c_constraint needs --c or a code file with c"))?;
            if c == 0 {
                return Err(Failure::usage("c must be at least 1"));
            }
            verify_c_constraint(&code, c, sem)
        }
        Claim::MaxTally => verify_max_tally(&code, sem)?,
        Claim::ExpectedAssignment => {
            let expected = expected_assignment_case1(code.instance(), a.i)?;
            verify_expected_assignment(&code, &expected, sem)
        }
    };
    let status = if outcome.holds {
        Status::Ok
    } else {
        Status::VerificationFailed
    };
    Ok(Output {
        stdout: json_line(&outcome),
        status,
    })
}

pub fn cmd_oracle(a: &OracleArgs) -> Result<Output, Failure> {
    let instance = ProblemInstance::new(a.p, a.k)?.constrained(a.c)?;
    let cert = match a.kind {
        OracleKind::MinLength => oracle_min_length(&instance, a.semantics, a.l_max)?,
        OracleKind::ExactlyOne => oracle_exactly_one_feasible(&instance, a.semantics)?,
        OracleKind::MaxTotal => oracle_max_total(&instance, a.l, a.semantics)?,
    };
    debug_assert_eq!(
        cert.query.kind,
        match a.kind {
            OracleKind::MinLength => QueryKind::MinLength,
            OracleKind::ExactlyOne => QueryKind::ExactlyOneFeasible,
            OracleKind::MaxTotal => QueryKind::MaxTotal,
        }
    );
    Ok(Output::ok(json_line(&cert)))
}

/// One CSV row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: usize,
    pub k: usize,
    pub case: String,
    pub semantics: String,
    pub len: usize,
    pub exactly_one: bool,
    pub coverage: bool,
    pub count_one: usize,
    pub count_two: usize,
    pub total: usize,
    pub c: Option<usize>,
    pub c_ok: Option<bool>,
    /// Clients deviating from the case-1 table; only for case-1 codes.
    pub discrepancies: Option<usize>,
}

/// Parameters of a sweep, independent of the command line.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub p: RangeInclusive<usize>,
    pub k: Option<Vec<usize>>,
    pub cases: Vec<Case>,
    pub semantics: Vec<DecodingSemantics>,
    pub c: Option<usize>,
}

fn rows_for(plan: &SweepPlan, p: usize, k: usize) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let Ok(base) = ProblemInstance::new(p, k) else {
        return rows;
    };
    for &case in &plan.cases {
        let c = match case {
            Case::Constrained => Some(plan.c.unwrap_or(k)),
            _ => plan.c,
        };
        let Ok(instance) = base.constrained(c) else {
            continue;
        };
        let code = match case.build(&instance, 0, None) {
            Ok(code) => code,
            Err(e) => {
                log::debug!("sweep skips P={p} k={k} {case}: {e}");
                continue;
            }
        };
        let expected = (code.origin() == Origin::Case1)
            .then(|| expected_assignment_case1(&instance, 0).ok())
            .flatten();
        for &sem in &plan.semantics {
            let tally = tally_decodes(&code, sem);
            rows.push(SweepRow {
                p,
                k,
                case: case.as_str().to_string(),
                semantics: sem.as_str().to_string(),
                len: code.len(),
                exactly_one: verify_exactly_one(&code, sem).holds,
                coverage: verify_coverage(&code, sem).holds,
                count_one: tally.count_one,
                count_two: tally.count_two,
                total: tally.total,
                c,
                c_ok: c.map(|c| verify_c_constraint(&code, c, sem).holds),
                discrepancies: expected
                    .as_ref()
                    .map(|e| report_discrepancies(&code, e, sem).len()),
            });
        }
    }
    rows
}

/// Rows sorted by `(p, k)`, then case and semantics in the order given.
pub fn sweep(plan: &SweepPlan) -> Vec<SweepRow> {
    let grid: Vec<(usize, usize)> = plan
        .p
        .clone()
        .flat_map(|p| {
            let ks: Vec<usize> = match &plan.k {
                Some(ks) => {
                    let mut ks: Vec<usize> =
                        ks.iter().copied().filter(|&k| 1 <= k && k < p).collect();
                    ks.sort_unstable();
                    ks.dedup();
                    ks
                }
                None => (1..p).collect(),
            };
            ks.into_iter().map(move |k| (p, k))
        })
        .collect();
    grid.par_iter()
        .flat_map_iter(|&(p, k)| rows_for(plan, p, k))
        .collect()
}

pub fn write_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Failure::usage(format!("csv: {e}"));
    if rows.is_empty() {
        w.write_record([
            "p",
            "k",
            "case",
            "semantics",
            "len",
            "exactly_one",
            "coverage",
            "count_one",
            "count_two",
            "total",
            "c",
            "c_ok",
            "discrepancies",
        ])
        .map_err(io)?;
    }
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::usage(format!("csv: {e}")))
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<Output, Failure> {
    let cases = split_list(&a.cases)
        .map(|t| t.parse::<Case>().map_err(Failure::usage))
        .collect::<Result<Vec<_>, _>>()?;
    let semantics = split_list(&a.semantics)
        .map(|t| parse_semantics(t).map_err(Failure::usage))
        .collect::<Result<Vec<_>, _>>()?;
    let plan = SweepPlan {
        p: a.p.clone(),
        k: a.k.as_ref().map(|k| k.0.clone()),
        cases,
        semantics,
        c: a.c,
    };
    let rows = sweep(&plan);
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    match &a.out {
        Some(path) => {
            std::fs::write(path, &buf)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(String::from_utf8(buf).expect("csv is utf-8"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("6..24").unwrap(), 6..=24);
        assert_eq!(parse_range("6..=24").unwrap(), 6..=24);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("9..3").is_err());
        assert_eq!(parse_list("3, 5,4").unwrap().0, vec![3, 5, 4]);
        assert_eq!(parse_list("2..4").unwrap().0, vec![2, 3, 4]);
    }

    #[test]
    fn case_names() {
        assert_eq!("single_q0".parse::<Case>().unwrap(), Case::SingleQ0);
        assert_eq!("exactly-one".parse::<Case>().unwrap(), Case::ExactlyOne);
        assert!("case4".parse::<Case>().is_err());
    }

    #[test]
    fn error_statuses() {
        assert_eq!(
            Failure::from(Error::Infeasible("x".into())).status,
            Status::Infeasible
        );
        assert_eq!(
            Failure::from(Error::Unsupported { p: 8, k: 4 }).status,
            Status::Unsupported
        );
        assert_eq!(
            Failure::from(Error::BoundExceeded("x".into())).status,
            Status::BoundExceeded
        );
        assert_eq!(
            Failure::from(Error::Parse("x".into())).status,
            Status::Usage
        );
    }

    #[test]
    fn empty_sweep_has_header_only() {
        let plan = SweepPlan {
            p: 6..=8,
            k: None,
            cases: vec![],
            semantics: vec![DecodingSemantics::FixedPoint],
            c: None,
        };
        let mut buf = Vec::new();
        write_csv(&sweep(&plan), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "p,k,case,semantics,len,exactly_one,coverage,count_one,count_two,total,c,c_ok,discrepancies\n"
        );
    }
}
