//! Codes where each message is decoded by at most `c` clients (`c >= k`).

use super::{construct_max, Builder};
use crate::error::{Error, Result};
use crate::model::{IndexCode, Origin, ProblemInstance};

pub fn construct_constrained(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    let (p, k) = (instance.p(), instance.k());
    let c = instance
        .c()
        .ok_or_else(|| Error::range("constrained", "instance carries no decode bound c"))?;
    if c < k {
        return Err(Error::range(
            "constrained",
            format!("requires c >= k, got c = {c}, k = {k}"),
        ));
    }
    if p - k <= c {
        // the bound never binds; the max-decode code applies as is
        return construct_max(instance, i);
    }
    // p - k > c >= k, so p >= 2k + 1
    let (t, k) = (((p - 2 * k - 1) / k) as i64, k as i64);
    let mut b = Builder::new(instance, i, "constrained")?;
    if t % 2 == 0 {
        for j in 0..=t / 2 {
            b.push([2 * j * k, (2 * j + 1) * k])?;
        }
        let j = t / 2 + 1;
        b.push([2 * j * k, (2 * j - 1) * k - 1])?;
    } else {
        for j in 0..=t / 2 + 1 {
            b.push([2 * j * k, (2 * j + 1) * k])?;
        }
    }
    b.finish(Origin::Constrained)
}
