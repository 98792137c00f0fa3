//! Index-code constructions for consecutive side information.
//!
//! Every construction takes an anchor `i` in `[0, P)`; formulas are affine in
//! `i`, so the code for anchor `i` is the anchor-0 code rotated by `i`.
//! Raw indices are reduced modulo `P` when each symbol is built. If two terms
//! of one symbol coincide after reduction they cancel (XOR), and a warning is
//! logged: that only happens outside a formula's intended range.

mod constrained;
mod exactly_one;
mod max_decode;

pub use constrained::construct_constrained;
pub use exactly_one::{
    construct_case1, construct_case2, construct_case3, construct_exactly_one, construct_single_q0,
    exactly_one_case, Construction1Schedule, ExactlyOneCase,
};
pub use max_decode::{construct_max, construct_max_with_j, MaxBranch};

use serde::Serialize;

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::model::{xor_support, IndexCode, Origin, ProblemInstance};

/// Quotient/remainder splits shared by several constructions.
///
/// `P = t(P-k) + q`, with `(t1, q1) = (t, q)`, `k + q1 = t2(P-k) + q2` and
/// `b = min(q2, P-k-q2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitParams {
    pub t: usize,
    pub q: usize,
    pub t1: usize,
    pub q1: usize,
    pub t2: usize,
    pub q2: usize,
    pub b: usize,
}

impl SplitParams {
    pub fn new(instance: &ProblemInstance) -> Self {
        let (p, k) = (instance.p(), instance.k());
        let d = p - k;
        let (t, q) = (p / d, p % d);
        let (t2, q2) = ((k + q) / d, (k + q) % d);
        SplitParams {
            t,
            q,
            t1: t,
            q1: q,
            t2,
            q2,
            b: q2.min(d - q2),
        }
    }
}

/// Accumulates symbols for one anchored construction.
pub(crate) struct Builder {
    instance: ProblemInstance,
    anchor: i64,
    name: &'static str,
    supports: Vec<IndexSet>,
}

impl Builder {
    pub(crate) fn new(
        instance: &ProblemInstance,
        anchor: usize,
        name: &'static str,
    ) -> Result<Self> {
        instance.check_client(anchor)?;
        Ok(Builder {
            instance: *instance,
            anchor: anchor as i64,
            name,
            supports: Vec::new(),
        })
    }

    /// Pushes the XOR of `x_{i + o}` over the given offsets `o`.
    pub(crate) fn push<I: IntoIterator<Item = i64>>(&mut self, offsets: I) -> Result<()> {
        let anchor = self.anchor;
        let (support, cancelled) =
            xor_support(&self.instance, offsets.into_iter().map(|o| anchor + o));
        if cancelled > 0 {
            log::warn!(
                "{} ({}, i={}): symbol w{} lost {} coincident index pair(s) to XOR cancellation",
                self.name,
                self.instance,
                self.anchor,
                self.supports.len() + 1,
                cancelled
            );
        }
        if support.is_empty() {
            return Err(Error::range(
                self.name,
                format!(
                    "symbol w{} cancels to zero for {}",
                    self.supports.len() + 1,
                    self.instance
                ),
            ));
        }
        self.supports.push(support);
        Ok(())
    }

    pub(crate) fn finish(self, origin: Origin) -> Result<IndexCode> {
        IndexCode::from_supports(self.instance, self.supports, origin)
    }
}

#[inline]
pub(crate) fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}
