//! Evaluation of free-group words on tuples of group elements, the induced
//! map on `G^n`, fixed sets, and concrete checks of the structural laws of
//! word-defined mappings.

use thiserror::Error;

use crate::endomorphism::Endomorphism;
use crate::free_group::ReducedWord;
use crate::group_backend::{Group, GroupElement, GroupError};

#[derive(Debug, Error)]
pub enum WordMapError {
    #[error("word rank {rank} does not match tuple length {len}")]
    RankMismatch { rank: usize, len: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("element does not belong to the group")]
    ForeignElement,
}

/// A point of `G^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    entries: Vec<GroupElement>,
}

impl Tuple {
    pub fn new(group: &Group, entries: Vec<GroupElement>) -> Result<Self, WordMapError> {
        if entries.is_empty() || entries.iter().any(|g| !group.contains(g)) {
            return Err(WordMapError::ForeignElement);
        }
        Ok(Tuple { entries })
    }

    pub fn identity(group: &Group, n: usize) -> Self {
        Tuple { entries: vec![group.identity(); n] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[GroupElement] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &GroupElement {
        &self.entries[i - 1]
    }

    /// Diagonal conjugation `g · x · g^-1`.
    pub fn conjugate(&self, group: &Group, g: &GroupElement) -> Result<Tuple, WordMapError> {
        let entries = self
            .entries
            .iter()
            .map(|gi| group.conjugate(g, gi))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tuple { entries })
    }

    /// Coordinate-wise product.
    pub fn multiply(&self, group: &Group, other: &Tuple) -> Tuple {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| group.multiply(a, b))
            .collect();
        Tuple { entries }
    }
}

/// Evaluate `w` at `x`: the image of `w` under `F_n -> G`, `f_j ↦ x_j`.
///
/// Syllable exponents are handled by square-and-multiply, so tower words
/// with huge letter length but few syllables evaluate fast.
pub fn evaluate(group: &Group, w: &ReducedWord, x: &Tuple) -> Result<GroupElement, WordMapError> {
    if w.rank() != x.len() {
        return Err(WordMapError::RankMismatch { rank: w.rank(), len: x.len() });
    }
    let mut acc = group.identity();
    for s in w.syllables() {
        let factor = group.power(x.entry(s.index), s.exponent)?;
        acc = group.multiply(&acc, &factor);
    }
    Ok(acc)
}

/// The induced map on `G^n`: coordinate-wise evaluation of the images.
pub fn apply(group: &Group, sigma: &Endomorphism, x: &Tuple) -> Result<Tuple, WordMapError> {
    if sigma.rank() != x.len() {
        return Err(WordMapError::RankMismatch { rank: sigma.rank(), len: x.len() });
    }
    let entries = sigma
        .images()
        .iter()
        .map(|w| evaluate(group, w, x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Tuple { entries })
}

/// Membership in the fixed set `X_{w,a,i} = {x : w(x) a^-1 x_i^-1 a = e}`.
pub fn fixed_set_membership(
    group: &Group,
    w: &ReducedWord,
    a: &GroupElement,
    i: usize,
    x: &Tuple,
) -> Result<bool, WordMapError> {
    let wx = evaluate(group, w, x)?;
    let a_inv = group.invert(a)?;
    let xi_inv = group.invert(x.entry(i))?;
    let product = group.multiply(&group.multiply(&wx, &a_inv), &group.multiply(&xi_inv, a));
    Ok(product == group.identity())
}

/// Iterate all of `G^n` by a mixed-radix counter over element indices.
pub struct TupleIter<'a> {
    group: &'a Group,
    n: usize,
    indices: Vec<usize>,
    done: bool,
}

impl<'a> TupleIter<'a> {
    pub fn new(group: &'a Group, n: usize) -> Self {
        TupleIter { group, n, indices: vec![0; n], done: n == 0 }
    }

    pub fn count_total(group: &Group, n: usize) -> u64 {
        (group.order() as u64).pow(n as u32)
    }
}

impl<'a> Iterator for TupleIter<'a> {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        if self.done {
            return None;
        }
        let entries = self
            .indices
            .iter()
            .map(|&i| self.group.elements()[i].clone())
            .collect();
        // advance odometer (last coordinate fastest, so tuples come out in
        // lexicographic order of the sorted element table)
        let order = self.group.order();
        let mut k = self.n;
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.indices[k] += 1;
            if self.indices[k] < order {
                break;
            }
            self.indices[k] = 0;
        }
        Some(Tuple { entries })
    }
}

/// Law (a): `apply(compose(σ,τ), x) = apply(τ, apply(σ, x))`.
pub fn check_law_a(
    group: &Group,
    sigma: &Endomorphism,
    tau: &Endomorphism,
    x: &Tuple,
) -> Result<bool, WordMapError> {
    let composed = crate::endomorphism::compose(sigma, tau)
        .map_err(|_| WordMapError::RankMismatch { rank: sigma.rank(), len: tau.rank() })?;
    let lhs = apply(group, &composed, x)?;
    let rhs = apply(group, tau, &apply(group, sigma, x)?)?;
    Ok(lhs == rhs)
}

/// Law (b): the identity endomorphism acts as the identity map.
pub fn check_law_b(group: &Group, x: &Tuple) -> Result<bool, WordMapError> {
    let id = Endomorphism::identity(x.len());
    Ok(apply(group, &id, x)? == *x)
}

/// Law (c): tuples with entries in a subgroup stay in it.
pub fn check_law_c(
    group: &Group,
    subgroup: &[GroupElement],
    sigma: &Endomorphism,
    x: &Tuple,
) -> Result<bool, WordMapError> {
    let image = apply(group, sigma, x)?;
    let set: std::collections::HashSet<&GroupElement> = subgroup.iter().collect();
    Ok(image.entries().iter().all(|g| set.contains(g)))
}

/// Law (e): for a homomorphism `γ : G -> H`, the coordinate-wise map
/// commutes with the induced maps on both sides.
pub fn check_law_e<F>(
    domain: &Group,
    codomain: &Group,
    gamma: F,
    sigma: &Endomorphism,
    x: &Tuple,
) -> Result<bool, WordMapError>
where
    F: Fn(&GroupElement) -> GroupElement,
{
    let lhs_entries: Vec<GroupElement> =
        apply(domain, sigma, x)?.entries().iter().map(&gamma).collect();
    let mapped = Tuple::new(codomain, x.entries().iter().map(&gamma).collect())?;
    let rhs = apply(codomain, sigma, &mapped)?;
    Ok(lhs_entries == rhs.entries())
}

/// Law (f): `apply(σ, x·z) = apply(σ,x) · apply(σ,z)` for central `z`.
pub fn check_law_f(
    group: &Group,
    sigma: &Endomorphism,
    x: &Tuple,
    z: &Tuple,
) -> Result<bool, WordMapError> {
    debug_assert!(z.entries().iter().all(|g| group.is_central(g)));
    let lhs = apply(group, sigma, &x.multiply(group, z))?;
    let rhs = apply(group, sigma, x)?.multiply(group, &apply(group, sigma, z)?);
    Ok(lhs == rhs)
}

/// Law (g): `apply(σ, g·x·g^-1) = g · apply(σ,x) · g^-1`.
pub fn check_law_g(
    group: &Group,
    sigma: &Endomorphism,
    g: &GroupElement,
    x: &Tuple,
) -> Result<bool, WordMapError> {
    let lhs = apply(group, sigma, &x.conjugate(group, g)?)?;
    let rhs = apply(group, sigma, x)?.conjugate(group, g)?;
    Ok(lhs == rhs)
}

/// Law (d), exhaustively: the set of tuples fixed by every given
/// automorphism. The caller bounds `|G|^n`.
pub fn common_fixed_set(
    group: &Group,
    n: usize,
    generators: &[Endomorphism],
) -> Result<Vec<Tuple>, WordMapError> {
    let mut fixed = Vec::new();
    for x in TupleIter::new(group, n) {
        let mut all_fix = true;
        for sigma in generators {
            if apply(group, sigma, &x)? != x {
                all_fix = false;
                break;
            }
        }
        if all_fix {
            fixed.push(x);
        }
    }
    Ok(fixed)
}
