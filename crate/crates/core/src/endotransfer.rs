//! Weight transfer from classical groups to `GL(N)` at one archimedean place.
//!
//! | case      | endoscopy group | `N`    | `ρ'`                         |
//! |-----------|-----------------|--------|------------------------------|
//! | `Sp2n`    | `Sp(2n)`        | `2n+1` | `(n, n-1, …, 1)`             |
//! | `SoOdd`   | `SO(2n+1)`      | `2n`   | `(n-1/2, …, 1/2)`            |
//! | `Unitary` | `U(n)`          | `n`    | `((n-1)/2, …, (1-n)/2)`      |
//! | `SoEven`  | `SO(2n)`        | `2n`   | `(n-1, …, 1, 0)`             |
//!
//! In every case `μ'` is the first `n` entries of the component,
//! `Λ' = μ' + ρ'` is the Harish-Chandra parameter of the discrete series, and
//! `ℓ = 2Λ'` gives the exponents of its Langlands parameter. The even
//! orthogonal case is kept for its obstruction: its `ℓ'` misses the
//! cohomological `ℓ` by one in every coordinate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::archfield::ArchField;
use crate::cohomrep::{generic_cohomological_rep, gl_rho, matches_transfer, MatchReport};
use crate::halfint::{doubled_all, shift, strictly_decreasing, HalfInt, HalfIntVector};
use crate::params::{ArchParam, InducedRep, ParamSummand};
use crate::weightcalc::{purity_weight, Weight};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseKind {
    Sp2n,
    SoOdd,
    Unitary,
    SoEven,
}

impl CaseKind {
    pub const ALL: [CaseKind; 4] = [CaseKind::Sp2n, CaseKind::SoOdd, CaseKind::Unitary, CaseKind::SoEven];

    /// `N` for an endoscopy group of rank `n`.
    pub fn total_rank(self, n: usize) -> usize {
        match self {
            CaseKind::Sp2n => 2 * n + 1,
            CaseKind::SoOdd | CaseKind::SoEven => 2 * n,
            CaseKind::Unitary => n,
        }
    }

    fn needs_real_place(self) -> bool {
        !matches!(self, CaseKind::Unitary)
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseKind::Sp2n => "Sp2n",
            CaseKind::SoOdd => "SOodd",
            CaseKind::Unitary => "Unitary",
            CaseKind::SoEven => "SOeven",
        };
        f.write_str(s)
    }
}

/// A transfer case together with the rank `n` of the endoscopy group's weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransferCase {
    pub kind: CaseKind,
    pub n: usize,
}

impl TransferCase {
    pub fn new(kind: CaseKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::CaseMismatch(format!("{kind} needs rank n >= 1")));
        }
        Ok(TransferCase { kind, n })
    }

    /// The case whose target is `GL(N)`; fails when `N` has the wrong parity.
    pub fn for_total_rank(kind: CaseKind, big_n: usize) -> Result<Self> {
        let n = match kind {
            CaseKind::Sp2n if big_n % 2 == 1 => (big_n - 1) / 2,
            CaseKind::SoOdd | CaseKind::SoEven if big_n.is_multiple_of(2) => big_n / 2,
            CaseKind::Unitary => big_n,
            _ => {
                return Err(Error::CaseMismatch(format!("{kind} cannot transfer to GL({big_n})")));
            }
        };
        TransferCase::new(kind, n)
    }

    pub fn total_rank(&self) -> usize {
        self.kind.total_rank(self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteSeriesDatum<T> {
    pub mu_prime: Vec<T>,
    #[serde(rename = "rho_prime_doubled")]
    pub rho_prime: HalfIntVector<T>,
    #[serde(rename = "lambda_prime_doubled")]
    pub lambda_prime: HalfIntVector<T>,
    pub middle_degree: u64,
}

/// Half sum of positive roots of the endoscopy group.
pub fn rho_prime<T: Scalar>(case: TransferCase) -> HalfIntVector<T> {
    let n = case.n;
    (1..=n)
        .map(|j| {
            let doubled = match case.kind {
                CaseKind::Sp2n => 2 * (n + 1 - j) as i64,
                CaseKind::SoOdd => (2 * n + 1) as i64 - 2 * j as i64,
                CaseKind::Unitary => (n + 1) as i64 - 2 * j as i64,
                CaseKind::SoEven => 2 * (n - j) as i64,
            };
            HalfInt::from_doubled(T::from_i64(doubled).expect("rank fits in scalar"))
        })
        .collect()
}

/// Half the dimension of `G'(R)/K'`: the only degree in which a discrete
/// series of `G'(R)` has cohomology.
///
/// `Sp(2n, R)` and `SO(n, n+1)` both give `(n² + n)/2`; `U(p, q)` with
/// `(p, q) = (⌈n/2⌉, ⌊n/2⌋)` gives `pq`; `SO(n, n)` (n even) or
/// `SO(n-1, n+1)` (n odd) gives `pq/2`.
pub fn middle_degree(case: TransferCase) -> u64 {
    let n = case.n as u64;
    match case.kind {
        CaseKind::Sp2n | CaseKind::SoOdd => (n * n + n) / 2,
        CaseKind::Unitary => n.div_ceil(2) * (n / 2),
        CaseKind::SoEven => {
            let (p, q) = if n.is_multiple_of(2) { (n, n) } else { (n - 1, n + 1) };
            p * q / 2
        }
    }
}

/// Checks the preconditions shared by all transfer operations and returns
/// the component(s) at `embedding`.
fn local_data<'a, T: Scalar>(
    case: TransferCase,
    field: &ArchField,
    mu: &'a Weight<T>,
    embedding: usize,
) -> Result<(&'a [T], Option<&'a [T]>)> {
    field.check_embedding(embedding)?;
    if mu.rank() != case.total_rank() {
        return Err(Error::CaseMismatch(format!(
            "{} with n = {} targets GL({}), weight has rank {}",
            case.kind,
            case.n,
            case.total_rank(),
            mu.rank()
        )));
    }
    mu.require_dominant()?;
    match purity_weight(field, mu)? {
        None => return Err(Error::NotPure),
        Some(w) if !w.is_zero() => return Err(Error::NonZeroPurity(w.to_string())),
        Some(_) => {}
    }
    let c = mu.component(embedding);
    let big_n = c.len();
    if case.kind.needs_real_place() {
        if !field.is_real(embedding) {
            return Err(Error::PlaceKind { embedding, expected: "real" });
        }
        // μ_1 ≥ … ≥ μ_n ≥ 0 ≥ -μ_n ≥ … ≥ -μ_1
        if (0..big_n).any(|i| c[i].clone() + c[big_n - 1 - i].clone() != T::zero()) || c[case.n - 1].is_negative() {
            return Err(Error::Shape(format!("component at {embedding} is not of the form (μ', [0], -rev μ')")));
        }
        Ok((c, None))
    } else {
        if field.is_real(embedding) {
            return Err(Error::PlaceKind { embedding, expected: "complex" });
        }
        let bar = mu.component(field.conj(embedding));
        // μ*_j = -μ_{n-j+1}
        if (0..big_n).any(|j| bar[j].clone() != -c[big_n - 1 - j].clone()) {
            return Err(Error::Shape(format!("pair at {embedding} violates μ*_j = -μ_(n-j+1)")));
        }
        Ok((c, Some(bar)))
    }
}

/// `μ'`: the first `n` entries of the component at `embedding`.
pub fn transfer_weight<T: Scalar>(
    case: TransferCase,
    field: &ArchField,
    mu: &Weight<T>,
    embedding: usize,
) -> Result<Vec<T>> {
    let (c, _) = local_data(case, field, mu, embedding)?;
    Ok(c[..case.n].to_vec())
}

pub fn harish_chandra_param<T: Scalar>(
    case: TransferCase,
    field: &ArchField,
    mu: &Weight<T>,
    embedding: usize,
) -> Result<DiscreteSeriesDatum<T>> {
    let mu_prime = transfer_weight(case, field, mu, embedding)?;
    let rho_prime = rho_prime::<T>(case);
    let lambda_prime = shift(&mu_prime, &rho_prime);
    if case.kind != CaseKind::SoEven {
        debug_assert!(strictly_decreasing(&lambda_prime), "Λ' must be regular");
    }
    Ok(DiscreteSeriesDatum { mu_prime, rho_prime, lambda_prime, middle_degree: middle_degree(case) })
}

/// `ℓ = 2Λ'`.
pub fn ell_param<T: Scalar>(case: TransferCase, field: &ArchField, mu: &Weight<T>, embedding: usize) -> Result<Vec<T>> {
    Ok(doubled_all(&harish_chandra_param(case, field, mu, embedding)?.lambda_prime))
}

fn param_from_datum<T: Scalar>(case: TransferCase, datum: &DiscreteSeriesDatum<T>) -> ArchParam<T> {
    let mut summands: Vec<ParamSummand<T>> = match case.kind {
        CaseKind::Sp2n | CaseKind::SoOdd | CaseKind::SoEven => {
            datum.lambda_prime.iter().map(|lam| ParamSummand::TwoDim { ell: lam.doubled().clone() }).collect()
        }
        CaseKind::Unitary => {
            datum.lambda_prime.iter().map(|lam| ParamSummand::ComplexChar { a: lam.clone(), b: -lam.clone() }).collect()
        }
    };
    if case.kind == CaseKind::Sp2n {
        // determinant 1 forces sgn^n
        summands.push(ParamSummand::Sign { eps: (case.n % 2) as u8 });
    }
    ArchParam { summands }
}

/// The Langlands parameter `τ_{Λ'}` of the discrete series, viewed in `GL(N)`.
///
/// Unitary exponents are stored as `z^{Λ'_j} z̄^{-Λ'_j}` with `Λ'_j` a
/// half-integer; its doubled value is the integer `a_j = 2Λ'_j`.
pub fn arch_langlands_param<T: Scalar>(
    case: TransferCase,
    field: &ArchField,
    mu: &Weight<T>,
    embedding: usize,
) -> Result<ArchParam<T>> {
    let datum = harish_chandra_param(case, field, mu, embedding)?;
    Ok(param_from_datum(case, &datum))
}

/// The representation `π_μ` of `GL_N` whose parameter is `τ_{Λ'}`.
pub fn transferred_rep<T: Scalar>(
    case: TransferCase,
    field: &ArchField,
    mu: &Weight<T>,
    embedding: usize,
) -> Result<InducedRep<T>> {
    Ok(arch_langlands_param(case, field, mu, embedding)?.to_induced())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction<T> {
    /// `ℓ' = 2Λ'` from `SO(2n)`.
    pub ell_prime: Vec<T>,
    /// First `n` entries of `2μ + 2ρ` for `GL(2n)`.
    pub ell_required: Vec<T>,
    /// `ell_required - ell_prime`.
    pub mismatch: Vec<T>,
}

/// Compares the even orthogonal transfer with the cohomological parameter
/// at a real place of a weight for `GL(2n)`.
pub fn so2n_obstruction<T: Scalar>(field: &ArchField, mu: &Weight<T>, embedding: usize) -> Result<Obstruction<T>> {
    let case = TransferCase::for_total_rank(CaseKind::SoEven, mu.rank())?;
    let ell_prime = ell_param(case, field, mu, embedding)?;
    let rho = gl_rho::<T>(mu.rank());
    let ell_required = doubled_all(&shift(&mu.component(embedding)[..case.n], &rho[..case.n]));
    let mismatch = ell_required.iter().zip(&ell_prime).map(|(r, p)| r.clone() - p.clone()).collect();
    Ok(Obstruction { ell_prime, ell_required, mismatch })
}

/// Everything about one case at one place, including the comparison with
/// `J(μ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport<T> {
    pub case: CaseKind,
    pub n: usize,
    pub embedding: usize,
    #[serde(flatten)]
    pub datum: DiscreteSeriesDatum<T>,
    pub ell: Vec<T>,
    pub param: ArchParam<T>,
    pub transferred: InducedRep<T>,
    pub cohomological: InducedRep<T>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub comparison: MatchReport<T>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl<T: Scalar> TransferReport<T> {
    pub fn compute(kind: CaseKind, field: &ArchField, mu: &Weight<T>, embedding: usize) -> Result<Self> {
        let case = TransferCase::for_total_rank(kind, mu.rank())?;
        let datum = harish_chandra_param(case, field, mu, embedding)?;
        let param = param_from_datum(case, &datum);
        let transferred = param.to_induced();
        let (_, cohomological) = generic_cohomological_rep(field, mu, embedding)?;
        let comparison = matches_transfer(&cohomological, &transferred)?;
        let warnings = transferred
            .limit_blocks()
            .into_iter()
            .map(|b| format!("block {b} is D(0): limit of discrete series"))
            .collect();
        Ok(TransferReport {
            case: kind,
            n: case.n,
            embedding,
            ell: doubled_all(&datum.lambda_prime),
            datum,
            param,
            transferred,
            cohomological,
            matched: comparison.matched,
            comparison,
            warnings,
        })
    }

    /// One report per relevant place: every real embedding for the
    /// orthogonal and symplectic cases, every `ι_v` for the unitary case.
    pub fn for_field(kind: CaseKind, field: &ArchField, mu: &Weight<T>) -> Result<Vec<Self>> {
        let places: Vec<usize> =
            if kind.needs_real_place() { field.real_embeddings().collect() } else { field.complex_places().collect() };
        if places.is_empty() {
            let expected = if kind.needs_real_place() { "real" } else { "complex" };
            return Err(Error::CaseMismatch(format!("{kind} needs a {expected} place; field has none")));
        }
        places.into_iter().map(|e| Self::compute(kind, field, mu, e)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Block;

    fn real1(c: &[i64]) -> (ArchField, Weight<i64>) {
        (ArchField::totally_real(1).unwrap(), Weight::new(c.len(), vec![c.to_vec()]).unwrap())
    }

    fn case(kind: CaseKind, n: usize) -> TransferCase {
        TransferCase::new(kind, n).unwrap()
    }

    #[test]
    fn rho_prime_values() {
        assert_eq!(doubled_all(&rho_prime::<i64>(case(CaseKind::Sp2n, 2))), vec![4, 2]);
        assert_eq!(doubled_all(&rho_prime::<i64>(case(CaseKind::SoOdd, 2))), vec![3, 1]);
        assert_eq!(doubled_all(&rho_prime::<i64>(case(CaseKind::Unitary, 3))), vec![2, 0, -2]);
        assert_eq!(doubled_all(&rho_prime::<i64>(case(CaseKind::SoEven, 2))), vec![2, 0]);
    }

    #[test]
    fn case_parity() {
        assert!(TransferCase::for_total_rank(CaseKind::Sp2n, 4).is_err());
        assert!(TransferCase::for_total_rank(CaseKind::SoOdd, 5).is_err());
        assert!(TransferCase::for_total_rank(CaseKind::SoEven, 3).is_err());
        assert_eq!(TransferCase::for_total_rank(CaseKind::Sp2n, 5).unwrap().n, 2);
        assert_eq!(TransferCase::for_total_rank(CaseKind::Unitary, 3).unwrap().n, 3);
        assert!(TransferCase::for_total_rank(CaseKind::Sp2n, 1).is_err());
    }

    #[test]
    fn sp2n_example() {
        let (f, mu) = real1(&[3, 1, 0, -1, -3]);
        let c = case(CaseKind::Sp2n, 2);
        assert_eq!(transfer_weight(c, &f, &mu, 0).unwrap(), vec![3, 1]);
        let d = harish_chandra_param(c, &f, &mu, 0).unwrap();
        assert_eq!(doubled_all(&d.lambda_prime), vec![10, 4]);
        assert_eq!(ell_param(c, &f, &mu, 0).unwrap(), vec![10, 4]);
        let p = arch_langlands_param(c, &f, &mu, 0).unwrap();
        assert_eq!(
            p.summands,
            vec![ParamSummand::TwoDim { ell: 10 }, ParamSummand::TwoDim { ell: 4 }, ParamSummand::Sign { eps: 0 }]
        );
        let rep = transferred_rep(c, &f, &mu, 0).unwrap();
        assert_eq!(rep.dimension(), 5);
    }

    #[test]
    fn sp2n_odd_rank_sign() {
        let (f, mu) = real1(&[0; 7]);
        let p = arch_langlands_param(case(CaseKind::Sp2n, 3), &f, &mu, 0).unwrap();
        assert_eq!(p.summands.last(), Some(&ParamSummand::Sign { eps: 1 }));
        // ρ' = (3, 2, 1), so ℓ_n = 2μ_n + 2 never vanishes
        assert_eq!(p.ells(), vec![6, 4, 2]);
        let r = TransferReport::compute(CaseKind::Sp2n, &f, &mu, 0).unwrap();
        assert!(r.warnings.is_empty());
        assert!(r.matched);
    }

    #[test]
    fn so_odd_example() {
        let (f, mu) = real1(&[2, 1, -1, -2]);
        let c = case(CaseKind::SoOdd, 2);
        assert_eq!(transfer_weight(c, &f, &mu, 0).unwrap(), vec![2, 1]);
        let d = harish_chandra_param(c, &f, &mu, 0).unwrap();
        assert_eq!(d.lambda_prime, vec![HalfInt::from_doubled(7), HalfInt::from_doubled(3)]);
        assert_eq!(ell_param(c, &f, &mu, 0).unwrap(), vec![7, 3]);
        let rep = transferred_rep(c, &f, &mu, 0).unwrap();
        assert_eq!(rep.blocks, vec![Block::DiscSeries { ell: 7 }, Block::DiscSeries { ell: 3 }]);
    }

    #[test]
    fn unitary_example() {
        let f = ArchField::cm(2).unwrap();
        let mu = Weight::new(3, vec![vec![1i64, 0, -1], vec![1, 0, -1]]).unwrap();
        let c = case(CaseKind::Unitary, 3);
        assert_eq!(transfer_weight(c, &f, &mu, 0).unwrap(), vec![1, 0, -1]);
        let d = harish_chandra_param(c, &f, &mu, 0).unwrap();
        assert_eq!(doubled_all(&d.lambda_prime), vec![4, 0, -4]);
        assert_eq!(ell_param(c, &f, &mu, 0).unwrap(), vec![4, 0, -4]);
        let p = arch_langlands_param(c, &f, &mu, 0).unwrap();
        let h = |x| HalfInt::from_doubled(x);
        assert_eq!(
            p.summands,
            vec![
                ParamSummand::ComplexChar { a: h(4), b: h(-4) },
                ParamSummand::ComplexChar { a: h(0), b: h(0) },
                ParamSummand::ComplexChar { a: h(-4), b: h(4) },
            ]
        );
        assert_eq!(transferred_rep(c, &f, &mu, 0).unwrap().blocks.len(), 3);
        let r = TransferReport::compute(CaseKind::Unitary, &f, &mu, 0).unwrap();
        assert!(r.matched);
    }

    #[test]
    fn so_even_obstruction() {
        let (f, mu) = real1(&[1, 0, 0, -1]);
        assert_eq!(ell_param(case(CaseKind::SoEven, 2), &f, &mu, 0).unwrap(), vec![4, 0]);
        let o = so2n_obstruction(&f, &mu, 0).unwrap();
        assert_eq!((o.ell_prime, o.ell_required, o.mismatch), (vec![4, 0], vec![5, 1], vec![1, 1]));

        let (f, mu) = real1(&[0, 0]);
        let o = so2n_obstruction(&f, &mu, 0).unwrap();
        assert_eq!((o.ell_prime, o.ell_required, o.mismatch), (vec![0], vec![1], vec![1]));

        let (f, mu) = real1(&[2, 1, 0, 0, -1, -2]);
        assert_eq!(so2n_obstruction(&f, &mu, 0).unwrap().mismatch, vec![1, 1, 1]);

        let r = TransferReport::compute(CaseKind::SoEven, &f, &mu, 0).unwrap();
        assert!(!r.matched);
        assert_eq!(r.warnings.len(), 1, "ℓ'_3 = 2μ_3 = 0");
        assert_eq!(r.comparison.ell_shift(), vec![1, 1, 1]);
    }

    #[test]
    fn middle_degrees() {
        assert_eq!(middle_degree(case(CaseKind::Sp2n, 2)), 3);
        assert_eq!(middle_degree(case(CaseKind::SoOdd, 2)), 3);
        assert_eq!(middle_degree(case(CaseKind::Unitary, 3)), 2);
        assert_eq!(middle_degree(case(CaseKind::Unitary, 4)), 4);
        assert_eq!(middle_degree(case(CaseKind::Sp2n, 1)), 1);
        // SO(2, 2) and SO(2, 4)
        assert_eq!(middle_degree(case(CaseKind::SoEven, 2)), 2);
        assert_eq!(middle_degree(case(CaseKind::SoEven, 3)), 4);
    }

    #[test]
    fn precondition_errors() {
        let (f, mu) = real1(&[2, 1, -1]);
        assert_eq!(transfer_weight(case(CaseKind::Sp2n, 1), &f, &mu, 0), Err(Error::NotPure));
        let (f, mu) = real1(&[2, 2, 0, 0]);
        assert!(matches!(transfer_weight(case(CaseKind::SoOdd, 2), &f, &mu, 0), Err(Error::NonZeroPurity(_))));
        let (f, mu) = real1(&[1, 0, -1]);
        assert!(matches!(transfer_weight(case(CaseKind::SoOdd, 2), &f, &mu, 0), Err(Error::CaseMismatch(_))));
        assert!(matches!(
            transfer_weight(case(CaseKind::Unitary, 3), &f, &mu, 0),
            Err(Error::PlaceKind { expected: "complex", .. })
        ));
        let k = ArchField::cm(2).unwrap();
        let mu = Weight::new(2, vec![vec![1i64, -1], vec![1, -1]]).unwrap();
        assert!(matches!(
            transfer_weight(case(CaseKind::SoOdd, 1), &k, &mu, 0),
            Err(Error::PlaceKind { expected: "real", .. })
        ));
        assert_eq!(transfer_weight(case(CaseKind::Unitary, 2), &k, &mu, 5), Err(Error::NoSuchEmbedding(5)));
    }

    #[test]
    fn report_json() {
        let (f, mu) = real1(&[3, 1, 0, -1, -3]);
        let r = TransferReport::compute(CaseKind::Sp2n, &f, &mu, 0).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(
            r#"{"case":"Sp2n","n":2,"embedding":0,"mu_prime":[3,1],"rho_prime_doubled":[4,2],"lambda_prime_doubled":[10,4],"middle_degree":3,"ell":[10,4],"param":[{"type":"TwoDim","ell":10},{"type":"TwoDim","ell":4},{"type":"Sign","eps":0}]"#
        ), "{s}");
        assert!(s.contains(r#""match":true"#));
    }
}
