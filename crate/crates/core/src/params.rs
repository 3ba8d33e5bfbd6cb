//! Archimedean Langlands parameters and induced-representation descriptors.
//!
//! `D(ℓ)` is carried as an opaque label: only the integer `ℓ` matters here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::halfint::HalfInt;
use crate::{Error, Result, Scalar};

/// One summand of a parameter of the real or complex Weil group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ParamSummand<T> {
    /// `Ind_{C^×}^{W_R}(χ_ℓ)`, `χ_ℓ(z) = (z/z̄)^{ℓ/2}`.
    TwoDim { ell: T },
    /// `sgn^ε`.
    Sign { eps: u8 },
    /// `z^a z̄^b`.
    ComplexChar {
        #[serde(rename = "a_doubled")]
        a: HalfInt<T>,
        #[serde(rename = "b_doubled")]
        b: HalfInt<T>,
    },
}

impl<T> ParamSummand<T> {
    pub fn dimension(&self) -> usize {
        match self {
            ParamSummand::TwoDim { .. } => 2,
            ParamSummand::Sign { .. } | ParamSummand::ComplexChar { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArchParam<T> {
    pub summands: Vec<ParamSummand<T>>,
}

impl<T: Scalar> ArchParam<T> {
    pub fn dimension(&self) -> usize {
        self.summands.iter().map(ParamSummand::dimension).sum()
    }

    /// The `ℓ` of the two-dimensional summands, in order.
    pub fn ells(&self) -> Vec<T> {
        self.summands
            .iter()
            .filter_map(|s| match s {
                ParamSummand::TwoDim { ell } => Some(ell.clone()),
                _ => None,
            })
            .collect()
    }

    /// The matching block of the induced representation, summand by summand.
    pub fn to_induced(&self) -> InducedRep<T> {
        let blocks = self
            .summands
            .iter()
            .map(|s| match s {
                ParamSummand::TwoDim { ell } => Block::DiscSeries { ell: ell.clone() },
                ParamSummand::Sign { eps } => Block::SignChar { eps: *eps },
                ParamSummand::ComplexChar { a, b } => Block::ComplexChar { a: a.clone(), b: b.clone() },
            })
            .collect();
        InducedRep { blocks, tate_twist: HalfInt::zero() }
    }
}

/// Inducing data on one Levi block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Block<T> {
    /// `D(ℓ)` on a `GL(2, R)` block.
    DiscSeries { ell: T },
    /// `sgn^ε` on a `GL(1, R)` block.
    SignChar { eps: u8 },
    /// `z^a z̄^b` on a `GL(1, C)` block.
    ComplexChar {
        #[serde(rename = "a_doubled")]
        a: HalfInt<T>,
        #[serde(rename = "b_doubled")]
        b: HalfInt<T>,
    },
}

impl<T: Scalar> Block<T> {
    pub fn dimension(&self) -> usize {
        match self {
            Block::DiscSeries { .. } => 2,
            Block::SignChar { .. } | Block::ComplexChar { .. } => 1,
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Block::DiscSeries { .. } => 0,
            Block::SignChar { .. } => 1,
            Block::ComplexChar { .. } => 2,
        }
    }

    /// Canonical order: `D` blocks by decreasing `ℓ`, then sign blocks,
    /// then complex characters by decreasing `a`, ties by decreasing `b`.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Block::*;
        match (self, other) {
            (DiscSeries { ell: x }, DiscSeries { ell: y }) => y.cmp(x),
            (SignChar { eps: x }, SignChar { eps: y }) => x.cmp(y),
            (ComplexChar { a: a1, b: b1 }, ComplexChar { a: a2, b: b2 }) => a2.cmp(a1).then(b2.cmp(b1)),
            _ => self.kind_rank().cmp(&other.kind_rank()),
        }
    }
}

impl<T: Scalar> fmt::Display for Block<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::DiscSeries { ell } => write!(f, "D({ell})"),
            Block::SignChar { eps } => write!(f, "sgn^{eps}"),
            Block::ComplexChar { a, b } => write!(f, "z^({a}) zbar^({b})"),
        }
    }
}

/// A parabolically induced representation, described by its ordered block
/// list and a global Tate twist `|·|^t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedRep<T> {
    pub blocks: Vec<Block<T>>,
    #[serde(rename = "tate_twist_doubled")]
    pub tate_twist: HalfInt<T>,
}

impl<T: Scalar> InducedRep<T> {
    /// Validates the blocks: `D(ℓ)` needs `ℓ ≥ 0` and `sgn^ε` needs `ε ∈ {0, 1}`.
    /// `ℓ = 0` is accepted; see [`InducedRep::limit_blocks`].
    pub fn new(blocks: Vec<Block<T>>, tate_twist: HalfInt<T>) -> Result<Self> {
        for b in &blocks {
            match b {
                Block::DiscSeries { ell } if ell.is_negative() => {
                    return Err(Error::Shape(format!("D({ell}) has negative parameter")));
                }
                Block::SignChar { eps } if *eps > 1 => {
                    return Err(Error::Shape(format!("sign exponent {eps} is not 0 or 1")));
                }
                _ => {}
            }
        }
        Ok(InducedRep { blocks, tate_twist })
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Block::dimension).sum()
    }

    /// Indices of `D(0)` blocks: limits of discrete series rather than
    /// discrete series proper.
    pub fn limit_blocks(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| matches!(b, Block::DiscSeries { ell } if ell.is_zero()))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn canonical(&self) -> InducedRep<T> {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(Block::canonical_cmp);
        InducedRep { blocks, tate_twist: self.tate_twist.clone() }
    }

    pub fn with_twist(mut self, tate_twist: HalfInt<T>) -> Self {
        self.tate_twist = tate_twist;
        self
    }
}

impl<T: Scalar> fmt::Display for InducedRep<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "Ind({})", parts.join(" x "))?;
        if !self.tate_twist.doubled().is_zero() {
            write!(f, "({})", self.tate_twist)?;
        }
        Ok(())
    }
}
