//! Weight functions and metrics: Hamming, rank, sum-rank over a length
//! partition, and composite (sum) weights including the extended metric that
//! appends a Hamming or rank tail block.

use crate::error::{Error, Result};
use crate::field::{Field, FqmElem, TowerRef};
use crate::linalg::rank_over_fq;

/// Uniform length partition (g, r): g blocks of length r, n = g·r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthPartition {
    pub blocks: usize,
    pub block_len: usize,
}

impl LengthPartition {
    pub fn new(blocks: usize, block_len: usize) -> Result<Self> {
        if blocks == 0 || block_len == 0 {
            return Err(Error::InvalidParameter(
                "length partition needs blocks >= 1 and block length >= 1".into(),
            ));
        }
        Ok(LengthPartition { blocks, block_len })
    }

    // a partition always has positive length, so there is no is_empty
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.blocks * self.block_len
    }
}

/// The tail metric appended by an extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailKind {
    Hamming,
    Rank,
}

/// A weight descriptor. All supported kinds are bounded by the Hamming
/// weight and invariant under nonzero F_{q^m}-scalar multiplication; both
/// facts are exercised by the axiom tests rather than assumed silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightFunction {
    Hamming { len: usize },
    Rank { len: usize },
    SumRank(LengthPartition),
    Composite(Vec<WeightFunction>),
}

impl WeightFunction {
    pub fn ambient_len(&self) -> usize {
        match self {
            WeightFunction::Hamming { len } | WeightFunction::Rank { len } => *len,
            WeightFunction::SumRank(p) => p.len(),
            WeightFunction::Composite(parts) => parts.iter().map(|p| p.ambient_len()).sum(),
        }
    }
}

/// Evaluates `w` on a vector over F_{q^m}. Always in [0, ambient length].
pub fn weight(tower: &TowerRef, w: &WeightFunction, c: &[FqmElem]) -> Result<usize> {
    if c.len() != w.ambient_len() {
        return Err(Error::LengthMismatch {
            expected: w.ambient_len(),
            got: c.len(),
        });
    }
    match w {
        WeightFunction::Hamming { .. } => {
            let k = tower.fqm();
            Ok(c.iter().filter(|x| !k.is_zero(x)).count())
        }
        WeightFunction::Rank { .. } => rank_over_fq(tower, c),
        WeightFunction::SumRank(p) => {
            let mut total = 0;
            for block in c.chunks(p.block_len) {
                total += rank_over_fq(tower, block)?;
            }
            Ok(total)
        }
        WeightFunction::Composite(parts) => {
            let mut total = 0;
            let mut offset = 0;
            for part in parts {
                let next = offset + part.ambient_len();
                total += weight(tower, part, &c[offset..next])?;
                offset = next;
            }
            Ok(total)
        }
    }
}

/// The metric on n + t coordinates putting `base` on the first n and the
/// chosen tail on the last t.
pub fn extended_metric(base: WeightFunction, tail: TailKind, t: usize) -> WeightFunction {
    let tail_part = match tail {
        TailKind::Hamming => WeightFunction::Hamming { len: t },
        TailKind::Rank => WeightFunction::Rank { len: t },
    };
    WeightFunction::Composite(vec![base, tail_part])
}

/// The Singleton bound value n − k + 1, valid for every weight bounded by
/// the Hamming weight.
pub fn min_distance_bound(n: usize, k: usize) -> usize {
    n - k + 1
}
