//! The generic cohomological representation `J(μ)` of `GL_N(R)` or
//! `GL_N(C)`, and the check that a transferred representation is it.
//!
//! With `ρ = ((N-1)/2, …, (1-N)/2)`:
//!
//! * real place, `N = 2n`: `J = Ind_{P(2,…,2)}(D(ℓ_1) ⊗ … ⊗ D(ℓ_n))` where
//!   `ℓ = 2μ + 2ρ`; for `N = 2n+1` a final `sgn^{n mod 2}` block is appended.
//! * complex place: `J = Ind_B(z^{a_1} z̄^{b_1} ⊗ … ⊗ z^{a_N} z̄^{b_N})` with
//!   `a = μ^ι + ρ` and `b_j = (μ^ῑ + ρ)_{N+1-j}`, which is `-a` for weights
//!   of purity weight 0.
//!
//! Being cohomological is decided by parameter identity with `J(μ)`; no
//! `(g, K)`-cohomology is computed.

use serde::{Deserialize, Serialize};

use crate::archfield::ArchField;
use crate::halfint::{shift, HalfInt, HalfIntVector};
use crate::params::{Block, InducedRep};
use crate::weightcalc::{weakly_decreasing, Weight};
use crate::{Error, Result, Scalar};

/// Half sum of positive roots of `gl_N`: entries `(N + 1 - 2i)/2`.
pub fn gl_rho<T: Scalar>(big_n: usize) -> HalfIntVector<T> {
    (1..=big_n).map(|i| HalfInt::from_doubled(T::from_count(big_n + 1) - T::from_count(2 * i))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Real,
    Complex,
}

/// `Some(w)` if `c_i + c_{N+1-i} = w` for all `i`.
fn self_dual_weight<T: Scalar>(c: &[T]) -> Option<T> {
    let n = c.len();
    let w = c[0].clone() + c[n - 1].clone();
    (0..n).all(|i| c[i].clone() + c[n - 1 - i].clone() == w).then_some(w)
}

/// `J(μ_v)` at a real place for a component of purity weight 0.
pub fn cohomological_rep_real<T: Scalar>(component: &[T]) -> Result<InducedRep<T>> {
    let rep = cohomological_rep_real_twisted(component)?;
    if !rep.tate_twist.doubled().is_zero() {
        return Err(Error::NonZeroPurity(rep.tate_twist.doubled().to_string()));
    }
    Ok(rep)
}

/// `J(μ_v)` at a real place for a component of any purity weight `w`:
/// the `w = 0` construction applied to `μ - w/2`, twisted by `|·|^{w/2}`.
/// So `ℓ_i = 2μ_i - w + 2ρ_i`.
pub fn cohomological_rep_real_twisted<T: Scalar>(component: &[T]) -> Result<InducedRep<T>> {
    if component.is_empty() {
        return Err(Error::InvalidWeight("empty component".into()));
    }
    if !weakly_decreasing(component) {
        return Err(Error::NotDominant { embedding: 0 });
    }
    let w = self_dual_weight(component).ok_or(Error::NotPure)?;
    let big_n = component.len();
    let half = big_n / 2;
    let rho = gl_rho::<T>(big_n);
    let mut blocks: Vec<Block<T>> = shift(&component[..half], &rho[..half])
        .into_iter()
        .map(|lam| Block::DiscSeries { ell: lam.into_doubled() - w.clone() })
        .collect();
    if big_n % 2 == 1 {
        blocks.push(Block::SignChar { eps: (half % 2) as u8 });
    }
    InducedRep::new(blocks, HalfInt::from_doubled(w))
}

/// `J(μ_v)` at a complex place from the pair `(μ^ι, μ^ῑ)`, which must satisfy
/// `μ^ῑ_i + μ^ι_{N+1-i} = 0`.
pub fn cohomological_rep_complex<T: Scalar>(iota: &[T], iota_bar: &[T]) -> Result<InducedRep<T>> {
    let big_n = iota.len();
    if big_n == 0 || iota_bar.len() != big_n {
        return Err(Error::InvalidWeight("complex place needs two components of equal length".into()));
    }
    if !weakly_decreasing(iota) || !weakly_decreasing(iota_bar) {
        return Err(Error::NotDominant { embedding: 0 });
    }
    let w = iota_bar[0].clone() + iota[big_n - 1].clone();
    if (0..big_n).any(|i| iota_bar[i].clone() + iota[big_n - 1 - i].clone() != w) {
        return Err(Error::NotPure);
    }
    if !w.is_zero() {
        return Err(Error::NonZeroPurity(w.to_string()));
    }
    let rho = gl_rho::<T>(big_n);
    let a = shift(iota, &rho);
    let mut b = shift(iota_bar, &rho);
    b.reverse();
    let mut blocks: Vec<Block<T>> = a.into_iter().zip(b).map(|(a, b)| Block::ComplexChar { a, b }).collect();
    blocks.sort_by(Block::canonical_cmp);
    InducedRep::new(blocks, HalfInt::zero())
}

/// `J(μ)` at the place of `embedding`: real if the embedding is fixed by
/// conjugation, otherwise the complex place with `ι = embedding`.
pub fn generic_cohomological_rep<T: Scalar>(
    field: &ArchField,
    mu: &Weight<T>,
    embedding: usize,
) -> Result<(Place, InducedRep<T>)> {
    field.check_embedding(embedding)?;
    if mu.embeddings() != field.degree() {
        return Err(Error::EmbeddingMismatch { expected: field.degree(), got: mu.embeddings() });
    }
    if let Some(bad) = mu.first_non_dominant() {
        return Err(Error::NotDominant { embedding: bad });
    }
    if field.is_real(embedding) {
        Ok((Place::Real, cohomological_rep_real(mu.component(embedding))?))
    } else {
        let bar = field.conj(embedding);
        Ok((Place::Complex, cohomological_rep_complex(mu.component(embedding), mu.component(bar))?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BlockDiff<T> {
    /// Both sides are `D` blocks with different parameters.
    Ell { block: usize, ell_expected: T, ell_got: T },
    /// Anything else; a missing side is `null`.
    Other { block: usize, expected: Option<Block<T>>, got: Option<Block<T>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistDiff<T> {
    #[serde(rename = "expected_doubled")]
    pub expected: HalfInt<T>,
    #[serde(rename = "got_doubled")]
    pub got: HalfInt<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport<T> {
    #[serde(rename = "match")]
    pub matched: bool,
    pub diffs: Vec<BlockDiff<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tate_twist: Option<TwistDiff<T>>,
}

impl<T: Scalar> MatchReport<T> {
    /// `expected - got` for each mismatched pair of `D` blocks.
    pub fn ell_shift(&self) -> Vec<T> {
        self.diffs
            .iter()
            .filter_map(|d| match d {
                BlockDiff::Ell { ell_expected, ell_got, .. } => Some(ell_expected.clone() - ell_got.clone()),
                BlockDiff::Other { .. } => None,
            })
            .collect()
    }
}

/// Compares `J` (expected) with a candidate `π` block by block after
/// putting both in canonical order. Unequal total dimensions are an error.
pub fn matches_transfer<T: Scalar>(j: &InducedRep<T>, pi: &InducedRep<T>) -> Result<MatchReport<T>> {
    if j.dimension() != pi.dimension() {
        return Err(Error::DimensionMismatch { left: j.dimension(), right: pi.dimension() });
    }
    let (j, pi) = (j.canonical(), pi.canonical());
    let len = j.blocks.len().max(pi.blocks.len());
    let mut diffs = Vec::new();
    for k in 0..len {
        let (e, g) = (j.blocks.get(k), pi.blocks.get(k));
        if e == g {
            continue;
        }
        diffs.push(match (e, g) {
            (Some(Block::DiscSeries { ell: x }), Some(Block::DiscSeries { ell: y })) => {
                BlockDiff::Ell { block: k, ell_expected: x.clone(), ell_got: y.clone() }
            }
            _ => BlockDiff::Other { block: k, expected: e.cloned(), got: g.cloned() },
        });
    }
    let tate_twist = (j.tate_twist != pi.tate_twist)
        .then(|| TwistDiff { expected: j.tate_twist.clone(), got: pi.tate_twist.clone() });
    Ok(MatchReport { matched: diffs.is_empty() && tate_twist.is_none(), diffs, tate_twist })
}
