//! Dominant integral weights and their purity properties.
//!
//! A weight `μ = (μ^ι)_ι` carries one integer `n`-vector per embedding.
//! It is *pure* with purity weight `w` when
//!
//! ```text
//! μ^ι_i + μ^ι_{n+1-i} = w      at every real embedding ι,
//! μ^ῑ_i + μ^ι_{n+1-i} = w      at every conjugate pair (ι, ῑ),
//! ```
//!
//! and *strongly pure* when every `Aut(C)`-conjugate `^σμ`, given by
//! `(^σμ)^ι = μ^{σ^{-1}(ι)}`, is pure as well.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::archfield::{closure_of, ArchField, FieldMode, GaloisElement, DEFAULT_CLOSURE_CAP};
use crate::{Error, Result, Scalar};

/// Largest number of candidate weights [`enumerate_strongly_pure`] scans by
/// default.
pub const DEFAULT_SEARCH_CAP: u128 = 10_000_000;

/// An integral weight: `d` components, each an integer vector of length `n`.
///
/// Construction checks shape only. Dominance is a property
/// ([`Weight::is_dominant`]); operations that need it report
/// [`Error::NotDominant`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Weight<T> {
    pub fn new(n: usize, components: Vec<Vec<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeight("rank must be at least 1".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidWeight("weight needs at least one embedding".into()));
        }
        let mut data = Vec::with_capacity(n * components.len());
        for (i, c) in components.into_iter().enumerate() {
            if c.len() != n {
                return Err(Error::InvalidWeight(format!("component {i} has length {}, expected {n}", c.len())));
            }
            data.extend(c);
        }
        Ok(Weight { n, data })
    }

    /// The same vector at each of `d` embeddings.
    pub fn parallel(d: usize, component: Vec<T>) -> Result<Self> {
        Weight::new(component.len(), vec![component; d])
    }

    pub fn zero(n: usize, d: usize) -> Result<Self> {
        Weight::new(n, vec![vec![T::zero(); n]; d])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn embeddings(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn component(&self, embedding: usize) -> &[T] {
        &self.data[embedding * self.n..(embedding + 1) * self.n]
    }

    pub fn components(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    /// Overwrites one component in place; the new vector must have length `n`.
    pub fn set_component(&mut self, embedding: usize, values: &[T]) -> Result<()> {
        if values.len() != self.n {
            return Err(Error::InvalidWeight(format!("component has length {}, expected {}", values.len(), self.n)));
        }
        if embedding >= self.embeddings() {
            return Err(Error::NoSuchEmbedding(embedding));
        }
        self.data[embedding * self.n..(embedding + 1) * self.n].clone_from_slice(values);
        Ok(())
    }

    /// Concatenation of all components, in embedding order.
    pub fn flat(&self) -> &[T] {
        &self.data
    }

    pub fn is_dominant(&self) -> bool {
        self.first_non_dominant().is_none()
    }

    pub fn first_non_dominant(&self) -> Option<usize> {
        self.components().position(|c| !weakly_decreasing(c))
    }

    pub fn require_dominant(&self) -> Result<()> {
        match self.first_non_dominant() {
            Some(embedding) => Err(Error::NotDominant { embedding }),
            None => Ok(()),
        }
    }

    fn check_field(&self, field: &ArchField) -> Result<()> {
        if self.embeddings() != field.degree() {
            return Err(Error::EmbeddingMismatch { expected: field.degree(), got: self.embeddings() });
        }
        Ok(())
    }
}

pub fn weakly_decreasing<T: Ord>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

pub fn is_dominant<T: Scalar>(mu: &Weight<T>) -> bool {
    mu.is_dominant()
}

/// Wire form: `{"n":3,"components":{"0":[2,0,-2],"1":[1,0,-1]}}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightSpec<T> {
    n: usize,
    components: BTreeMap<String, Vec<T>>,
}

impl<T: Scalar> TryFrom<WeightSpec<T>> for Weight<T> {
    type Error = Error;

    fn try_from(spec: WeightSpec<T>) -> Result<Self> {
        let mut indexed = Vec::with_capacity(spec.components.len());
        for (key, v) in spec.components {
            let i: usize =
                key.parse().map_err(|_| Error::InvalidWeight(format!("embedding key {key:?} is not an index")))?;
            indexed.push((i, v));
        }
        indexed.sort_by_key(|(i, _)| *i);
        for (pos, (i, _)) in indexed.iter().enumerate() {
            if *i != pos {
                return Err(Error::InvalidWeight(format!("embedding keys must be exactly 0..{}", indexed.len())));
            }
        }
        Weight::new(spec.n, indexed.into_iter().map(|(_, v)| v).collect())
    }
}

impl<'de, T> Deserialize<'de> for Weight<T>
where
    T: Scalar + Deserialize<'de>,
{
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let spec = WeightSpec::<T>::deserialize(de)?;
        Weight::try_from(spec).map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar + Serialize> Serialize for Weight<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        struct Components<'a, T>(&'a Weight<T>);
        impl<T: Scalar + Serialize> Serialize for Components<'_, T> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                use serde::ser::SerializeMap;
                let mut map = ser.serialize_map(Some(self.0.embeddings()))?;
                for (i, c) in self.0.components().enumerate() {
                    map.serialize_entry(&i.to_string(), c)?;
                }
                map.end()
            }
        }
        let mut st = ser.serialize_struct("Weight", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("components", &Components(self))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness<T: Scalar + Serialize> {
    pub sigma: GaloisElement,
    pub weight: Weight<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityReport<T: Scalar + Serialize> {
    pub is_pure: bool,
    #[serde(rename = "w", skip_serializing_if = "Option::is_none")]
    pub purity_weight: Option<T>,
    pub strongly_pure: Verdict,
    pub is_parallel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Purity test on a weight whose component at `ι` is `comp(ι)`.
///
/// The candidate `w` is read off the first embedding and then checked at
/// every embedding; for a pair `(ι, ῑ)` checking one side suffices, since
/// the condition at `ῑ` is the condition at `ι` with `i ↦ n+1-i`.
fn purity_via<'a, T: Scalar>(field: &ArchField, n: usize, comp: impl Fn(usize) -> &'a [T]) -> Option<T> {
    let w = comp(field.conj(0))[0].clone() + comp(0)[n - 1].clone();
    for iota in 0..field.degree() {
        let bar = field.conj(iota);
        if bar < iota {
            continue;
        }
        let (a, b) = (comp(bar), comp(iota));
        for i in 0..n {
            if a[i].clone() + b[n - 1 - i].clone() != w {
                return None;
            }
        }
    }
    Some(w)
}

/// `Some(w)` if `μ` is pure with purity weight `w`.
pub fn purity_weight<T: Scalar>(field: &ArchField, mu: &Weight<T>) -> Result<Option<T>> {
    mu.check_field(field)?;
    Ok(purity_via(field, mu.rank(), |i| mu.component(i)))
}

/// The purity half of a [`PurityReport`]. Strong purity is only decided
/// here in the negative (an impure weight is not strongly pure); otherwise
/// it is left as `unknown`. Use [`strong_purity`] for the full report.
pub fn purity<T: Scalar + Serialize>(field: &ArchField, mu: &Weight<T>) -> Result<PurityReport<T>> {
    mu.require_dominant()?;
    let w = purity_weight(field, mu)?;
    let is_parallel = is_parallel(mu);
    Ok(match w {
        Some(w) => PurityReport {
            is_pure: true,
            purity_weight: Some(w),
            strongly_pure: Verdict::Unknown,
            is_parallel,
            witness: None,
            note: None,
        },
        None => impure_report(field, mu, is_parallel),
    })
}

fn impure_report<T: Scalar + Serialize>(field: &ArchField, mu: &Weight<T>, is_parallel: bool) -> PurityReport<T> {
    PurityReport {
        is_pure: false,
        purity_weight: None,
        strongly_pure: Verdict::No,
        is_parallel,
        witness: Some(Witness { sigma: GaloisElement::identity(field.degree()), weight: mu.clone() }),
        note: None,
    }
}

/// `^σμ`, with `(^σμ)^ι = μ^{σ^{-1}(ι)}`.
pub fn conjugate_weight<T: Scalar>(field: &ArchField, sigma: &GaloisElement, mu: &Weight<T>) -> Result<Weight<T>> {
    mu.check_field(field)?;
    if sigma.degree() != field.degree() {
        return Err(Error::InvalidPermutation(format!("{sigma} does not act on {} embeddings", field.degree())));
    }
    let inv = sigma.inverse();
    let mut data = Vec::with_capacity(mu.data.len());
    for iota in 0..field.degree() {
        data.extend_from_slice(mu.component(inv.apply(iota)));
    }
    Ok(Weight { n: mu.n, data })
}

/// Strong-purity decision procedure for one field, reusable across weights.
///
/// Totally real and CM models delegate to purity. A general model with
/// Galois generators tests every element of the generated group; without
/// generators only parallel weights can be certified.
#[derive(Debug, Clone)]
pub struct StrongPurity<'a> {
    field: &'a ArchField,
    /// `(σ, σ^{-1})` for each group element, in canonical order.
    group: Option<Vec<(GaloisElement, GaloisElement)>>,
}

impl<'a> StrongPurity<'a> {
    pub fn new(field: &'a ArchField) -> Result<Self> {
        Self::with_cap(field, DEFAULT_CLOSURE_CAP)
    }

    pub fn with_cap(field: &'a ArchField, cap: usize) -> Result<Self> {
        let group = match (field.mode(), field.galois_generators()) {
            (FieldMode::General, Some(gens)) => Some(
                closure_of(field.degree(), gens, cap)?
                    .into_iter()
                    .map(|g| {
                        let inv = g.inverse();
                        (g, inv)
                    })
                    .collect(),
            ),
            _ => None,
        };
        Ok(StrongPurity { field, group })
    }

    pub fn group_order(&self) -> Option<usize> {
        self.group.as_ref().map(Vec::len)
    }

    /// Verdict only, without building witness weights.
    pub fn verdict<T: Scalar>(&self, mu: &Weight<T>) -> Result<Verdict> {
        mu.require_dominant()?;
        mu.check_field(self.field)?;
        if purity_via(self.field, mu.n, |i| mu.component(i)).is_none() {
            return Ok(Verdict::No);
        }
        Ok(match &self.group {
            Some(group) => {
                if self.first_failure(mu, group).is_some() {
                    Verdict::No
                } else {
                    Verdict::Yes
                }
            }
            None => self.delegated(mu),
        })
    }

    pub fn check<T: Scalar + Serialize>(&self, mu: &Weight<T>) -> Result<PurityReport<T>> {
        mu.require_dominant()?;
        mu.check_field(self.field)?;
        let is_parallel = is_parallel(mu);
        let Some(w) = purity_via(self.field, mu.n, |i| mu.component(i)) else {
            return Ok(impure_report(self.field, mu, is_parallel));
        };
        let mut report = PurityReport {
            is_pure: true,
            purity_weight: Some(w),
            strongly_pure: Verdict::Yes,
            is_parallel,
            witness: None,
            note: self.field.untrusted().map(str::to_owned),
        };
        match &self.group {
            Some(group) => {
                if let Some(sigma) = self.first_failure(mu, group) {
                    report.strongly_pure = Verdict::No;
                    report.witness =
                        Some(Witness { sigma: sigma.clone(), weight: conjugate_weight(self.field, sigma, mu)? });
                }
            }
            None => report.strongly_pure = self.delegated(mu),
        }
        Ok(report)
    }

    /// For a pure weight when no group is available.
    fn delegated<T: Scalar>(&self, mu: &Weight<T>) -> Verdict {
        match self.field.mode() {
            FieldMode::TotallyReal | FieldMode::Cm => Verdict::Yes,
            FieldMode::General if is_parallel(mu) => Verdict::Yes,
            FieldMode::General => Verdict::Unknown,
        }
    }

    fn first_failure<'g, T: Scalar>(
        &self,
        mu: &Weight<T>,
        group: &'g [(GaloisElement, GaloisElement)],
    ) -> Option<&'g GaloisElement> {
        group
            .iter()
            .find(|(_, inv)| purity_via(self.field, mu.n, |i| mu.component(inv.apply(i))).is_none())
            .map(|(g, _)| g)
    }
}

pub fn strong_purity<T: Scalar + Serialize>(field: &ArchField, mu: &Weight<T>) -> Result<PurityReport<T>> {
    StrongPurity::new(field)?.check(mu)
}

/// All components equal to one vector `a` with `a_j + a_{n+1-j}` constant.
pub fn is_parallel<T: Scalar>(mu: &Weight<T>) -> bool {
    let first = mu.component(0);
    if !mu.components().all(|c| c == first) {
        return false;
    }
    let n = first.len();
    let w = first[0].clone() + first[n - 1].clone();
    (0..n).all(|j| first[j].clone() + first[n - 1 - j].clone() == w)
}

/// Highest weight of the contragredient: `(a_1,…,a_n) ↦ (-a_n,…,-a_1)`
/// at every embedding.
pub fn dual_weight<T: Scalar>(mu: &Weight<T>) -> Weight<T> {
    let mut data = Vec::with_capacity(mu.data.len());
    for c in mu.components() {
        data.extend(c.iter().rev().map(|x| -x.clone()));
    }
    Weight { n: mu.n, data }
}

/// Lift to an extension: the component at embedding `j` of the extension
/// is the component of `μ` at `restriction[j]`.
pub fn base_change_lift<T: Scalar>(mu: &Weight<T>, restriction: &[usize]) -> Result<Weight<T>> {
    if restriction.is_empty() {
        return Err(Error::InvalidWeight("restriction map is empty".into()));
    }
    let mut data = Vec::with_capacity(mu.n * restriction.len());
    for &base in restriction {
        if base >= mu.embeddings() {
            return Err(Error::NoSuchEmbedding(base));
        }
        data.extend_from_slice(mu.component(base));
    }
    let lifted = Weight { n: mu.n, data };
    debug_assert!(!is_parallel(mu) || is_parallel(&lifted));
    Ok(lifted)
}

/// Per embedding, the sum of the component's entries mod 2.
///
/// For `F = Q`, `n = 2` and full level the sheaf attached to `μ = (a, b)` is
/// nonzero exactly when this is 0, i.e. `(-1)^{a+b} = 1`.
pub fn central_parity<T: Scalar>(mu: &Weight<T>) -> Vec<u8> {
    mu.components().map(|c| c.iter().fold(T::zero(), |acc, x| acc + x.clone()).parity()).collect()
}

/// Dominant vectors of length `n` with entries in `[-bound, bound]`, in
/// ascending lexicographic order.
pub fn dominant_vectors<T: Scalar>(n: usize, bound: u32) -> Vec<Vec<T>> {
    fn go<T: Scalar>(n: usize, lo: i64, hi: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<T>>) {
        if prefix.len() == n {
            out.push(prefix.iter().map(|&x| T::from_i64(x).expect("bound fits in scalar")).collect());
            return;
        }
        let ceiling = prefix.last().copied().unwrap_or(hi);
        for x in lo..=ceiling {
            prefix.push(x);
            go(n, lo, hi, prefix, out);
            prefix.pop();
        }
    }
    let b = i64::from(bound);
    let mut out = Vec::new();
    go(n, -b, b, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of dominant vectors of length `n` with entries in `[-bound, bound]`,
/// i.e. multisets of size `n` from `2·bound+1` values.
pub fn count_dominant_vectors(n: usize, bound: u32) -> u128 {
    let m = 2 * u128::from(bound) + 1;
    // C(m + n - 1, n)
    let mut acc: u128 = 1;
    for k in 0..n as u128 {
        acc = acc * (m + k) / (k + 1);
    }
    acc
}

/// Every strongly pure dominant weight with coordinates in `[-bound, bound]`
/// and purity weight `w`, in lexicographic order of the concatenated
/// components. Fails if more than `cap` candidates would be scanned.
pub fn enumerate_strongly_pure<T: Scalar>(
    field: &ArchField,
    n: usize,
    bound: u32,
    w: &T,
    cap: u128,
) -> Result<Vec<Weight<T>>> {
    if n == 0 {
        return Err(Error::InvalidWeight("rank must be at least 1".into()));
    }
    let d = field.degree();
    let per = count_dominant_vectors(n, bound);
    let size = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(per)).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::SearchCap { size, cap });
    }
    let checker = StrongPurity::new(field)?;
    let vectors = dominant_vectors::<T>(n, bound);
    let mut odometer = vec![0usize; d];
    let mut mu = Weight::new(n, vec![vectors[0].clone(); d])?;
    let mut out = Vec::new();
    loop {
        if checker.verdict(&mu)? == Verdict::Yes && purity_via(field, n, |i| mu.component(i)).as_ref() == Some(w) {
            out.push(mu.clone());
        }
        // advance the last embedding fastest
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            odometer[k] += 1;
            if odometer[k] < vectors.len() {
                mu.set_component(k, &vectors[odometer[k]])?;
                break;
            }
            odometer[k] = 0;
            mu.set_component(k, &vectors[0])?;
        }
    }
}
