//! Two-transmission codes aimed at the largest total number of decodes.

use serde::Serialize;

use super::{Builder, SplitParams};
use crate::error::{Error, Result};
use crate::model::{IndexCode, Origin, ProblemInstance};

/// Branch of the max-decode construction an instance falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxBranch {
    /// `P > 3k`: two uncoded messages.
    Uncoded,
    /// `q1 = 0`: a single symbol.
    SingleSymbol,
    /// `q2 = 0` or `b = q2`.
    LowRemainder,
    /// `b = P-k-q2`.
    HighRemainder,
}

impl MaxBranch {
    pub fn of(instance: &ProblemInstance) -> Result<Self> {
        let (p, k) = (instance.p(), instance.k());
        if p < k + 2 {
            return Err(Error::range(
                "max_decode",
                format!("requires P >= k+2, got {instance}"),
            ));
        }
        if p > 3 * k {
            return Ok(MaxBranch::Uncoded);
        }
        let sp = SplitParams::new(instance);
        Ok(if sp.q1 == 0 {
            MaxBranch::SingleSymbol
        } else if sp.q2 == 0 || sp.b == sp.q2 {
            MaxBranch::LowRemainder
        } else {
            MaxBranch::HighRemainder
        })
    }
}

pub fn construct_max(instance: &ProblemInstance, i: usize) -> Result<IndexCode> {
    construct_max_with_j(instance, i, None)
}

/// As [`construct_max`], with the second uncoded message `x_j` chosen by the
/// caller when `P > 3k`. `j - i` (mod P) must lie in `[k+1, P-k+1]`.
pub fn construct_max_with_j(
    instance: &ProblemInstance,
    i: usize,
    j: Option<usize>,
) -> Result<IndexCode> {
    let branch = MaxBranch::of(instance)?;
    let (p, k) = (instance.p(), instance.k());
    let mut b = Builder::new(instance, i, "max_decode")?;
    if branch != MaxBranch::Uncoded && j.is_some() {
        return Err(Error::range(
            "max_decode",
            "j override applies only when P > 3k",
        ));
    }
    let sp = SplitParams::new(instance);
    let d = (p - k) as i64;
    match branch {
        MaxBranch::Uncoded => {
            let offset = match j {
                None => k + 1,
                Some(j) => {
                    instance.check_client(j)?;
                    let off = (j + p - i) % p;
                    if !(k < off && off <= p - k + 1) {
                        return Err(Error::range(
                            "max_decode",
                            format!("j - i = {off} (mod {p}) outside [{}, {}]", k + 1, p - k + 1),
                        ));
                    }
                    off
                }
            };
            b.push([0])?;
            b.push([offset as i64])?;
        }
        MaxBranch::SingleSymbol => {
            b.push((0..sp.t1 as i64).map(|j| j * d))?;
        }
        MaxBranch::LowRemainder | MaxBranch::HighRemainder => {
            let (q1, t2) = (sp.q1 as i64, sp.t2 as i64);
            b.push((0..=sp.t1 as i64).map(|j| j * d))?;
            let spread = (0..t2).map(|j| q1 + j * d);
            if branch == MaxBranch::LowRemainder {
                b.push(std::iter::once(0).chain(spread))?;
            } else {
                b.push([0, k as i64].into_iter().chain(spread))?;
            }
        }
    }
    b.finish(Origin::MaxDecode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(p: usize, k: usize) -> ProblemInstance {
        ProblemInstance::new(p, k).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            construct_max(&inst(10, 6), 0).unwrap().support_lists(),
            vec![vec![0, 4, 8], vec![0, 2, 6]]
        );
        assert_eq!(
            construct_max(&inst(20, 5), 0).unwrap().support_lists(),
            vec![vec![0], vec![6]]
        );
        assert_eq!(
            construct_max(&inst(12, 8), 0).unwrap().support_lists(),
            vec![vec![0, 4, 8]]
        );
    }

    #[test]
    fn j_override() {
        let c = construct_max_with_j(&inst(20, 5), 3, Some(19)).unwrap();
        assert_eq!(c.support_lists(), vec![vec![3], vec![19]]);
        assert!(construct_max_with_j(&inst(20, 5), 0, Some(17)).is_err());
        assert!(construct_max_with_j(&inst(20, 5), 0, Some(5)).is_err());
        assert!(construct_max_with_j(&inst(10, 6), 0, Some(7)).is_err());
    }

    #[test]
    fn needs_two_unknowns() {
        assert!(construct_max(&inst(7, 6), 0).is_err());
    }
}
