//! Archimedean bookkeeping for automorphic induction, and the Tate-twist
//! repair of `GL(2) x GL(2) -> GL(4)`.

use serde::Serialize;

use crate::cohomrep::{cohomological_rep_real_twisted, Place};
use crate::halfint::HalfInt;
use crate::params::{Block, InducedRep};
use crate::weightcalc::{is_parallel, weakly_decreasing, Weight};
use crate::{Error, Result, Scalar};

/// Infinity type `∏_j (z_j/z̄_j)^{f_j/2}` of a Hecke character of a CM
/// field with `n` complex places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeInfinityType<T> {
    pub f: Vec<T>,
}

/// The common component of a parallel weight of purity 0 and rank `2n`.
fn parallel_component<T: Scalar>(mu: &Weight<T>) -> Result<&[T]> {
    mu.require_dominant()?;
    if !is_parallel(mu) {
        return Err(Error::NotParallel);
    }
    let c = mu.component(0);
    if !c.len().is_multiple_of(2) {
        return Err(Error::Shape(format!("automorphic induction targets GL(2n); rank is {}", c.len())));
    }
    let w = c[0].clone() + c[c.len() - 1].clone();
    if !w.is_zero() {
        return Err(Error::NonZeroPurity(w.to_string()));
    }
    Ok(c)
}

/// `ℓ_i = 2μ_i + 2n - 2i + 1` for `i = 1..2n`, written out directly.
fn ell_full<T: Scalar>(c: &[T]) -> Vec<T> {
    let two_n = c.len();
    c.iter()
        .enumerate()
        .map(|(k, m)| m.clone() * T::two() + T::from_count(two_n + 1) - T::from_count(2 * (k + 1)))
        .collect()
}

/// `f = (ℓ_1, …, ℓ_n)`: odd, positive, strictly decreasing.
pub fn hecke_infinity_type<T: Scalar>(mu: &Weight<T>) -> Result<HeckeInfinityType<T>> {
    let c = parallel_component(mu)?;
    let mut ell = ell_full(c);
    ell.truncate(c.len() / 2);
    Ok(HeckeInfinityType { f: ell })
}

/// The archimedean component of the induced representation `π(χ)` at a real
/// or complex place, built from the `ℓ` formula rather than through
/// [`crate::cohomrep`].
pub fn induced_pi_infinity<T: Scalar>(mu: &Weight<T>, place: Place) -> Result<InducedRep<T>> {
    let c = parallel_component(mu)?;
    let ell = ell_full(c);
    let two_n = ell.len();
    if (0..two_n).any(|i| ell[two_n - 1 - i] != -ell[i].clone()) {
        return Err(Error::Shape("ℓ is not antisymmetric".into()));
    }
    let blocks = match place {
        Place::Real => ell[..two_n / 2].iter().map(|l| Block::DiscSeries { ell: l.clone() }).collect(),
        // a = μ + ρ has doubled entries ℓ; b = -a
        Place::Complex => ell
            .iter()
            .map(|l| Block::ComplexChar { a: HalfInt::from_doubled(l.clone()), b: HalfInt::from_doubled(-l.clone()) })
            .collect(),
    };
    InducedRep::new(blocks, HalfInt::zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Congruence<T> {
    /// Human-readable form of the required equation.
    pub equation: String,
    /// Value the even left-hand side would have to take.
    pub required: T,
    pub residue_mod_2: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityObstruction<T> {
    pub fires: bool,
    /// `w` forced by matching the untwisted Tate twist.
    pub w_required: T,
    pub congruences: Vec<Congruence<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistSolution<T: Scalar + Serialize> {
    pub w: T,
    pub mu: [T; 4],
    pub dominant: bool,
    pub pure: bool,
    /// `2μ_1 + 3 - w = k_1 + k_2 - 2` and `2μ_2 + 1 - w = k_1 - k_2`.
    pub identities_hold: bool,
    /// The twisted blocks equal `J(μ)` computed independently.
    pub matches_cohomological: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamakrishnanReport<T: Scalar + Serialize> {
    pub k1: T,
    pub k2: T,
    pub eps1: u8,
    pub eps2: u8,
    pub untwisted_blocks: InducedRep<T>,
    pub twisted_blocks: InducedRep<T>,
    pub parity_obstruction: ParityObstruction<T>,
    pub solution: Option<TwistSolution<T>>,
}

/// Archimedean side of `π_1 ⊠ π_2` for holomorphic forms of weights
/// `k1 > k2 ≥ 2`, with `π_j` twisted by `|·|^{ε_j/2}` to be cohomological.
///
/// Untwisted: `(D(k1+k2-2) × D(k1-k2))((ε1+ε2)/2)` would need
/// `2μ_1 = k1+k2-5+ε1+ε2`, which is odd. Twisted by a further `1/2` it is
/// cohomological for `w = ε1+ε2+1`, `μ_1 = (k1+k2+ε1+ε2)/2 - 2`,
/// `μ_2 = (k1-k2+ε1+ε2)/2`, completed by purity to
/// `(μ_1, μ_2, w-μ_2, w-μ_1)`.
pub fn ramakrishnan_transfer<T: Scalar + Serialize>(k1: T, k2: T) -> Result<RamakrishnanReport<T>> {
    if k2 < T::two() {
        return Err(Error::ModularWeights(format!("k2 = {k2} must be at least 2")));
    }
    if k1 <= k2 {
        return Err(Error::ModularWeights(format!("need k1 > k2, got k1 = {k1}, k2 = {k2}")));
    }
    let one = T::one();
    let two = T::two();
    let (eps1, eps2) = (k1.parity(), k2.parity());
    let eps_sum = T::from_count(usize::from(eps1 + eps2));

    let blocks = vec![
        Block::DiscSeries { ell: k1.clone() + k2.clone() - two.clone() },
        Block::DiscSeries { ell: k1.clone() - k2.clone() },
    ];
    let untwisted_blocks = InducedRep::new(blocks.clone(), HalfInt::from_doubled(eps_sum.clone()))?;
    let twisted_blocks = InducedRep::new(blocks, HalfInt::from_doubled(eps_sum.clone() + one.clone()))?;

    // untwisted: w = ε1 + ε2 and 2μ_1 + 3 - w = k1 + k2 - 2, 2μ_2 + 1 - w = k1 - k2
    let w0 = eps_sum.clone();
    let lhs1 = k1.clone() + k2.clone() - T::from_count(5) + w0.clone();
    let lhs2 = k1.clone() - k2.clone() - one.clone() + w0.clone();
    let congruences = vec![
        Congruence { equation: "2*mu1 = k1 + k2 - 5 + w".into(), residue_mod_2: lhs1.parity(), required: lhs1 },
        Congruence { equation: "2*mu2 = k1 - k2 - 1 + w".into(), residue_mod_2: lhs2.parity(), required: lhs2 },
    ];
    let parity_obstruction =
        ParityObstruction { fires: congruences.iter().any(|c| c.residue_mod_2 == 1), w_required: w0, congruences };

    let w = eps_sum.clone() + one.clone();
    let mu1 = (k1.clone() + k2.clone() + eps_sum.clone()) / two.clone() - two.clone();
    let mu2 = (k1.clone() - k2.clone() + eps_sum) / two.clone();
    let mu = [mu1.clone(), mu2.clone(), w.clone() - mu2.clone(), w.clone() - mu1.clone()];
    let three = T::from_count(3);
    let identities_hold = mu1.clone() * two.clone() + three - w.clone() == k1.clone() + k2.clone() - two.clone()
        && mu2.clone() * two + one - w.clone() == k1.clone() - k2.clone();
    let dominant = weakly_decreasing(&mu);
    let pure = mu[0].clone() + mu[3].clone() == w && mu[1].clone() + mu[2].clone() == w;
    let matches_cohomological = dominant
        && cohomological_rep_real_twisted(&mu).map(|j| j.canonical() == twisted_blocks.canonical()).unwrap_or(false);

    Ok(RamakrishnanReport {
        k1,
        k2,
        eps1,
        eps2,
        untwisted_blocks,
        twisted_blocks,
        parity_obstruction,
        solution: Some(TwistSolution { w, mu, dominant, pure, identities_hold, matches_cohomological }),
    })
}
