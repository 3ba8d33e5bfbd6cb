//! Archimedean data of a number field.
//!
//! Embeddings are abstract indices `0..d`. A field model records which of
//! them are real, how complex conjugation pairs the rest, and optionally a
//! set of permutations generating the image of `Aut(C)` acting on the
//! embeddings. The field itself is never represented.
//!
//! For complex places the first index of each conjugate pair plays the role
//! of `ι_v`; swapping the pair swaps `μ^{ι_v}` and `μ^{ῑ_v}`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest group [`group_closure`] builds unless told otherwise.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A permutation of embedding indices, `perm[i]` being the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct GaloisElement {
    perm: Vec<usize>,
}

impl GaloisElement {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
            }
            seen[p] = true;
        }
        Ok(GaloisElement { perm })
    }

    pub fn identity(d: usize) -> Self {
        GaloisElement { perm: (0..d).collect() }
    }

    /// Builds a permutation of `0..d` from disjoint cycles.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut perm: Vec<usize> = (0..d).collect();
        let mut touched = vec![false; d];
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                if i >= d || touched[i] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?} on {d} points")));
                }
                touched[i] = true;
                perm[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(GaloisElement { perm })
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GaloisElement) -> GaloisElement {
        debug_assert_eq!(self.degree(), other.degree());
        GaloisElement { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> GaloisElement {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        GaloisElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn fixed_points(&self) -> usize {
        self.perm.iter().enumerate().filter(|(i, p)| i == *p).count()
    }
}

impl TryFrom<Vec<usize>> for GaloisElement {
    type Error = Error;
    fn try_from(perm: Vec<usize>) -> Result<Self> {
        GaloisElement::new(perm)
    }
}

impl From<GaloisElement> for Vec<usize> {
    fn from(g: GaloisElement) -> Vec<usize> {
        g.perm
    }
}

impl fmt::Display for GaloisElement {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.perm.len()];
        let mut wrote = false;
        for start in 0..self.perm.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldMode {
    TotallyReal,
    Cm,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct ArchField {
    mode: FieldMode,
    conjugation: GaloisElement,
    r1: usize,
    r2: usize,
    galois_generators: Option<Vec<GaloisElement>>,
    /// Set when the supplied group fails a sanity check that is not fatal
    /// (currently: non-transitive action).
    untrusted: Option<String>,
}

/// Wire form of [`ArchField`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub mode: FieldMode,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois_generators: Option<Vec<Vec<usize>>>,
}

impl ArchField {
    pub fn totally_real(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        Ok(ArchField {
            mode: FieldMode::TotallyReal,
            conjugation: GaloisElement::identity(d),
            r1: d,
            r2: 0,
            galois_generators: None,
            untrusted: None,
        })
    }

    /// CM model with embeddings ordered `(ι_1, ῑ_1, ι_2, ῑ_2, …)`.
    pub fn cm(d: usize) -> Result<Self> {
        if d == 0 || !d.is_multiple_of(2) {
            return Err(Error::InvalidField(format!("CM degree must be even and positive, got {d}")));
        }
        let perm = (0..d).map(|i| i ^ 1).collect();
        Ok(ArchField {
            mode: FieldMode::Cm,
            conjugation: GaloisElement { perm },
            r1: 0,
            r2: d / 2,
            galois_generators: None,
            untrusted: None,
        })
    }

    pub fn general(d: usize, conjugation: Vec<usize>, galois_generators: Option<Vec<Vec<usize>>>) -> Result<Self> {
        Self::general_with_cap(d, conjugation, galois_generators, DEFAULT_CLOSURE_CAP)
    }

    /// Validates a user-supplied model. When generators are present their
    /// closure is built (bounded by `cap`) to check that it contains the
    /// conjugation. A non-transitive group is accepted but marked untrusted.
    pub fn general_with_cap(
        d: usize,
        conjugation: Vec<usize>,
        galois_generators: Option<Vec<Vec<usize>>>,
        cap: usize,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        if conjugation.len() != d {
            return Err(Error::InvalidField(format!(
                "conjugation acts on {} points, field degree is {d}",
                conjugation.len()
            )));
        }
        let conjugation = GaloisElement::new(conjugation)?;
        if !conjugation.compose(&conjugation).is_identity() {
            return Err(Error::InvalidField(format!("conjugation {conjugation} is not an involution")));
        }
        let r1 = conjugation.fixed_points();
        let r2 = (d - r1) / 2;

        let mut field =
            ArchField { mode: FieldMode::General, conjugation, r1, r2, galois_generators: None, untrusted: None };
        if let Some(gens) = galois_generators {
            let gens = gens
                .into_iter()
                .map(|g| {
                    if g.len() != d {
                        Err(Error::InvalidField(format!("generator {g:?} does not act on {d} points")))
                    } else {
                        GaloisElement::new(g)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let group = closure_of(d, &gens, cap)?;
            if group.binary_search(&field.conjugation).is_err() {
                return Err(Error::InvalidField(format!(
                    "generated group does not contain conjugation {}",
                    field.conjugation
                )));
            }
            if !is_transitive(d, &gens) {
                field.untrusted = Some("generated group is not transitive on embeddings".into());
            }
            field.galois_generators = Some(gens);
        }
        Ok(field)
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn degree(&self) -> usize {
        self.conjugation.degree()
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    pub fn conjugation(&self) -> &GaloisElement {
        &self.conjugation
    }

    pub fn conj(&self, embedding: usize) -> usize {
        self.conjugation.apply(embedding)
    }

    pub fn is_real(&self, embedding: usize) -> bool {
        self.conj(embedding) == embedding
    }

    pub fn galois_generators(&self) -> Option<&[GaloisElement]> {
        self.galois_generators.as_deref()
    }

    pub fn untrusted(&self) -> Option<&str> {
        self.untrusted.as_deref()
    }

    pub fn real_embeddings(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).filter(move |&i| self.is_real(i))
    }

    /// The distinguished embedding `ι_v` of each complex place: the smaller
    /// index of each conjugate pair.
    pub fn complex_places(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).filter(move |&i| self.conj(i) > i)
    }

    pub fn check_embedding(&self, embedding: usize) -> Result<()> {
        if embedding < self.degree() {
            Ok(())
        } else {
            Err(Error::NoSuchEmbedding(embedding))
        }
    }
}

impl TryFrom<FieldSpec> for ArchField {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        ArchField::from_spec(spec, DEFAULT_CLOSURE_CAP)
    }
}

impl ArchField {
    /// Builds a field from its JSON form, bounding any group closure by `cap`.
    pub fn from_spec(spec: FieldSpec, cap: usize) -> Result<Self> {
        let field = match spec.mode {
            FieldMode::TotallyReal => ArchField::totally_real(spec.d)?,
            FieldMode::Cm => ArchField::cm(spec.d)?,
            FieldMode::General => {
                let conj = spec
                    .conjugation
                    .clone()
                    .ok_or_else(|| Error::InvalidField("general mode requires a conjugation".into()))?;
                return ArchField::general_with_cap(spec.d, conj, spec.galois_generators, cap);
            }
        };
        if let Some(conj) = spec.conjugation {
            if conj != field.conjugation.as_slice() {
                return Err(Error::InvalidField(format!(
                    "conjugation {conj:?} disagrees with the {:?} model",
                    spec.mode
                )));
            }
        }
        if spec.galois_generators.is_some() {
            return Err(Error::InvalidField("galois_generators are only accepted in general mode".into()));
        }
        Ok(field)
    }
}

impl From<ArchField> for FieldSpec {
    fn from(f: ArchField) -> FieldSpec {
        FieldSpec {
            mode: f.mode,
            d: f.degree(),
            conjugation: Some(f.conjugation.into()),
            galois_generators: f.galois_generators.map(|gs| gs.into_iter().map(Vec::from).collect()),
        }
    }
}

/// The finite permutation group generated by the field's Galois
/// generators, sorted lexicographically.
pub fn group_closure(field: &ArchField, cap: usize) -> Result<Vec<GaloisElement>> {
    let gens =
        field.galois_generators().ok_or_else(|| Error::InvalidField("field carries no Galois generators".into()))?;
    closure_of(field.degree(), gens, cap)
}

/// Breadth-first closure of `generators` inside `Sym(d)`.
pub fn closure_of(d: usize, generators: &[GaloisElement], cap: usize) -> Result<Vec<GaloisElement>> {
    let id = GaloisElement::identity(d);
    let mut seen: HashSet<GaloisElement> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.compose(s);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::ClosureOverflow { cap });
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut group: Vec<GaloisElement> = seen.into_iter().collect();
    group.sort();
    Ok(group)
}

fn is_transitive(d: usize, generators: &[GaloisElement]) -> bool {
    let mut reached = vec![false; d];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(i) = stack.pop() {
        for g in generators {
            let j = g.apply(i);
            if !reached[j] {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.into_iter().all(|r| r)
}
