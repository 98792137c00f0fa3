//! Codes under which every client decodes exactly one wanted message.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ceil_div, Builder, SplitParams};
use crate::error::{Error, Result};
use crate::model::{IndexCode, Origin, ProblemInstance};

/// Offsets of Construction 1, all relative to the anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction1Schedule {
    pub t_count: usize,
    pub y: usize,
    pub r: usize,
    /// `V'_l` for `l` in `[2, T-1]`.
    pub vprime: BTreeMap<usize, usize>,
    /// `V''_l` for `l` in `[2, T-1]`.
    pub vdoubleprime: BTreeMap<usize, usize>,
    /// `V_T^(s)` for `s` in `[1, k-r]`, stored at position `s-1`.
    pub vtail: Vec<usize>,
}

impl Construction1Schedule {
    pub fn new(instance: &ProblemInstance) -> Result<Self> {
        let (p, k) = (instance.p(), instance.k());
        if !(3 <= k && k < ceil_div(p, 2)) {
            return Err(Error::range(
                "case1",
                format!("requires 3 <= k < ceil(P/2), got {instance}"),
            ));
        }
        let t_count = ceil_div(p - k - 1, k - 1);
        let y = p - 2 * k - 1;
        let r = y % (k - 1);

        let mut vprime = BTreeMap::new();
        let mut vdoubleprime = BTreeMap::new();
        if t_count >= 3 {
            vprime.insert(2, k - 1);
            vdoubleprime.insert(2, k);
            for l in 3..t_count {
                let prev = vdoubleprime[&(l - 1)];
                vprime.insert(l, prev + k - 2);
                vdoubleprime.insert(l, prev + k - 1);
            }
        }
        let first = if t_count == 2 {
            k
        } else {
            vdoubleprime[&(t_count - 1)] + k - 1
        };
        let vtail = (0..k - r).map(|s| first - s).collect();
        Ok(Construction1Schedule {
            t_count,
            y,
            r,
            vprime,
            vdoubleprime,
            vtail,
        })
    }

    /// Offset of the message that symbol `w_j` (j >= 2) delivers.
    pub fn message_offset(&self, k: usize, j: usize) -> i64 {
        let (j, k) = (j as i64, k as i64);
        if j <= k {
            j - k - 1
        } else {
            j - k
        }
    }
}

pub fn construct_case1(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    let sched = Construction1Schedule::new(instance)?;
    let (p, k) = (instance.p() as i64, instance.k() as i64);
    let mut b = Builder::new(instance, i, "case1")?;
    b.push([0, p - k])?;
    for j in 2..sched.t_count {
        b.push([
            sched.vprime[&j] as i64,
            sched.vdoubleprime[&j] as i64,
            sched.message_offset(k as usize, j),
        ])?;
    }
    let tail = sched.vtail.iter().map(|&v| v as i64);
    b.push(std::iter::once(sched.message_offset(k as usize, sched.t_count)).chain(tail))?;
    b.finish(Origin::Case1)
}

pub fn construct_case2(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    let (p, k) = (instance.p(), instance.k());
    if !(p / 2 < k && k + 4 <= p) {
        return Err(Error::range(
            "case2",
            format!("requires floor(P/2) < k <= P-4, got {instance}"),
        ));
    }
    let sp = SplitParams::new(instance);
    let (t, q, d) = (sp.t as i64, sp.q as i64, (p - k) as i64);
    let mut b = Builder::new(instance, i, "case2")?;
    if q == 0 {
        b.push((0..t).map(|g| g * d))?;
        return b.finish(Origin::Case2);
    }
    b.push((0..=t).map(|g| g * d))?;
    // x_{i+b(P-k)+a} for the middle blocks b in [1, t-2]
    let middle: Vec<i64> = (1..t - 1)
        .flat_map(|blk| (1..d).map(move |a| blk * d + a))
        .collect();
    if q == 1 {
        let ends = [1, d - 1, (t - 1) * d + 1, (t - 1) * d + 2];
        b.push(ends.into_iter().chain(middle))?;
    } else {
        let head = std::iter::once(1 - q).chain((1..=q).map(|s| d - s));
        let tail = (1..=q).map(|s| (t - 1) * d + s);
        b.push(head.chain(tail).chain(middle))?;
    }
    b.finish(Origin::Case2)
}

fn infeasible(instance: &ProblemInstance, why: &str) -> Error {
    Error::Infeasible(format!("{instance}: {why}"))
}

pub fn construct_case3(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    let (p, k) = (instance.p(), instance.k());
    let mut b = Builder::new(instance, i, "case3")?;
    let pi = p as i64;
    if k == p - 1 {
        b.push(0..pi)?;
    } else if k == 1 {
        if p % 2 == 1 {
            return Err(infeasible(
                instance,
                "k = 1 with P odd admits no exactly-one code",
            ));
        }
        for j in 1..=pi / 2 {
            b.push([2 * j - 2, 2 * j - 1])?;
        }
    } else if k == 2 {
        let (t, q) = (pi / 4, pi % 4);
        for g in 0..t {
            b.push([4 * g, 4 * g + 2])?;
        }
        match q {
            1 => b.push([1, 4 * t - 1, 4 * t])?,
            2 => b.push([4 * t - 1, 4 * t, 4 * t + 1])?,
            3 => {
                b.push([4 * t - 1, 4 * t, 4 * t + 1])?;
                b.push([1, 4 * t + 1, 4 * t + 2])?;
            }
            _ => {}
        }
    } else if k == p - 2 {
        if p % 2 == 1 {
            return Err(infeasible(
                instance,
                "k = P-2 with P odd admits no exactly-one code",
            ));
        }
        b.push((0..pi / 2).map(|j| 2 * j))?;
    } else if k + 3 == p {
        if p % 3 == 0 {
            b.push((0..pi / 3).map(|g| 3 * g))?;
        } else if p % 2 == 1 {
            b.push((0..=(pi - 1) / 2).map(|j| 2 * j))?;
            b.push((0..=(pi - 3) / 2).map(|j| 2 * j + 1))?;
        } else {
            b.push((0..pi / 2).map(|j| 2 * j))?;
            b.push((0..pi / 2).map(|j| 2 * j + 1))?;
        }
    } else {
        return Err(Error::range(
            "case3",
            format!("requires k in {{1, 2, P-3, P-2, P-1}}, got {instance}"),
        ));
    }
    b.finish(Origin::Case3)
}

/// Which construction `construct_exactly_one` uses for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactlyOneCase {
    Case1,
    Case2,
    Case3,
    Infeasible,
    Unsupported,
}

pub fn exactly_one_case(instance: &ProblemInstance) -> ExactlyOneCase {
    let (p, k) = (instance.p(), instance.k());
    if 3 <= k && k < ceil_div(p, 2) {
        ExactlyOneCase::Case1
    } else if p / 2 < k && k + 4 <= p {
        ExactlyOneCase::Case2
    } else if k == p - 1 || k == 2 || k + 3 == p {
        ExactlyOneCase::Case3
    } else if k == 1 || k + 2 == p {
        if p % 2 == 0 {
            ExactlyOneCase::Case3
        } else {
            ExactlyOneCase::Infeasible
        }
    } else {
        ExactlyOneCase::Unsupported
    }
}

pub fn construct_exactly_one(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    instance.check_client(i)?;
    match exactly_one_case(instance) {
        ExactlyOneCase::Case1 => construct_case1(instance, i),
        ExactlyOneCase::Case2 => construct_case2(instance, i),
        ExactlyOneCase::Case3 | ExactlyOneCase::Infeasible => construct_case3(instance, i),
        ExactlyOneCase::Unsupported => Err(Error::Unsupported {
            p: instance.p(),
            k: instance.k(),
        }),
    }
}

/// One symbol `x_i + x_{i+(P-k)} + ...` when `(P-k) | P`.
pub fn construct_single_q0(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    let (p, k) = (instance.p(), instance.k());
    let d = p - k;
    if p % d != 0 {
        return Err(Error::range(
            "single_q0",
            format!("P-k = {d} does not divide P = {p}"),
        ));
    }
    let mut b = Builder::new(instance, i, "single_q0")?;
    b.push((0..(p / d) as i64).map(|g| g * d as i64))?;
    b.finish(Origin::SingleQ0)
}
