//! `End(F_n)` and `Aut(F_n)` as tuples of reduced words.
//!
//! An endomorphism is determined by the images of the generators.
//! Automorphism status is witness-based: constructors that produce
//! automorphisms store the inverse image tuple, and the witness is
//! verified by composing both ways.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::free_group::{
    self, derived_word, invert, multiply, reduce, theta, ReducedWord, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndoError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("expected {rank} images, got {got}")]
    WrongImageCount { rank: usize, got: usize },
    #[error("transvection requires distinct indices in 1..={rank}, got i={i}, j={j}")]
    BadTransvection { rank: usize, i: usize, j: usize },
    #[error("rank must be at least {needed}, got {got}")]
    RankTooSmall { needed: usize, got: usize },
    #[error("braid generator index must lie in 1..={max}, got {got}")]
    BadBraidIndex { max: usize, got: usize },
    #[error("claimed inverse witness fails to compose to the identity")]
    BadWitness,
    #[error("endomorphism has no inverse witness")]
    NoWitness,
    #[error("cannot parse endomorphism: {0}")]
    Parse(String),
}

/// An element of `End(F_n)`: `images[i]` is the image of `f_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<ReducedWord>,
    /// Image tuple of a two-sided inverse, when this is a certified automorphism.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    inverse_images: Option<Vec<ReducedWord>>,
}

impl Endomorphism {
    pub fn identity(rank: usize) -> Self {
        let images: Vec<ReducedWord> = (1..=rank)
            .map(|i| ReducedWord::generator(rank, i).expect("index in range"))
            .collect();
        Endomorphism { rank, images: images.clone(), inverse_images: Some(images) }
    }

    /// Build from images without any automorphism claim.
    pub fn from_images(rank: usize, images: Vec<ReducedWord>) -> Result<Self, EndoError> {
        if images.len() != rank {
            return Err(EndoError::WrongImageCount { rank, got: images.len() });
        }
        for img in &images {
            if img.rank() != rank {
                return Err(EndoError::RankMismatch { left: rank, right: img.rank() });
            }
        }
        Ok(Endomorphism { rank, images, inverse_images: None })
    }

    /// Build with an inverse witness; fails if the witness does not compose
    /// to the identity on both sides.
    pub fn with_witness(
        rank: usize,
        images: Vec<ReducedWord>,
        inverse_images: Vec<ReducedWord>,
    ) -> Result<Self, EndoError> {
        let sigma = Endomorphism::from_images(rank, images)?;
        let tau = Endomorphism::from_images(rank, inverse_images)?;
        let st = compose(&sigma, &tau)?;
        let ts = compose(&tau, &sigma)?;
        let id = Endomorphism::identity(rank);
        if st.images != id.images || ts.images != id.images {
            return Err(EndoError::BadWitness);
        }
        Ok(Endomorphism { rank, images: sigma.images, inverse_images: Some(tau.images) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    /// Image of `f_i` (1-based).
    pub fn image(&self, i: usize) -> &ReducedWord {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images == Endomorphism::identity(self.rank).images
    }

    pub fn has_witness(&self) -> bool {
        self.inverse_images.is_some()
    }

    /// The inverse automorphism, when a witness is stored.
    pub fn inverse(&self) -> Result<Endomorphism, EndoError> {
        let inv = self.inverse_images.clone().ok_or(EndoError::NoWitness)?;
        Ok(Endomorphism {
            rank: self.rank,
            images: inv,
            inverse_images: Some(self.images.clone()),
        })
    }

    /// Textual form `[f1 f2 f1^-1, f1, f3]`.
    pub fn parse(rank: usize, input: &str) -> Result<Self, EndoError> {
        let trimmed = input.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| EndoError::Parse("expected [w1, ..., wn]".into()))?;
        let images = inner
            .split(',')
            .map(|part| free_group::parse(rank, part))
            .collect::<Result<Vec<_>, _>>()?;
        Endomorphism::from_images(rank, images)
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, img) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{img}")?;
        }
        write!(f, "]")
    }
}

/// Substitute `sigma(f_j)` for each `f_j` occurring in `word`, then reduce.
pub fn substitute(sigma: &Endomorphism, word: &ReducedWord) -> Result<ReducedWord, EndoError> {
    if sigma.rank != word.rank() {
        return Err(EndoError::RankMismatch { left: sigma.rank, right: word.rank() });
    }
    let mut acc = ReducedWord::identity(sigma.rank);
    for s in word.syllables() {
        let base = sigma.image(s.index);
        let (base, count) = if s.exponent < 0 {
            (invert(base), s.exponent.unsigned_abs())
        } else {
            (base.clone(), s.exponent.unsigned_abs())
        };
        if count > free_group::DEFAULT_SYLLABLE_CAP as u64 {
            return Err(WordError::TooLong { cap: free_group::DEFAULT_SYLLABLE_CAP }.into());
        }
        for _ in 0..count {
            acc = multiply(&acc, &base)?;
        }
    }
    Ok(acc)
}

/// Composition `sigma ∘ tau`: the image of `f_i` is `tau(f_i)` with every
/// `f_j` replaced by `sigma(f_j)`. Witnesses compose in reverse order.
pub fn compose(sigma: &Endomorphism, tau: &Endomorphism) -> Result<Endomorphism, EndoError> {
    if sigma.rank != tau.rank {
        return Err(EndoError::RankMismatch { left: sigma.rank, right: tau.rank });
    }
    let images = tau
        .images
        .iter()
        .map(|w| substitute(sigma, w))
        .collect::<Result<Vec<_>, _>>()?;
    let inverse_images = match (&sigma.inverse_images, &tau.inverse_images) {
        (Some(si), Some(ti)) => {
            // (sigma ∘ tau)^-1 = tau^-1 ∘ sigma^-1
            let tau_inv = Endomorphism {
                rank: tau.rank,
                images: ti.clone(),
                inverse_images: None,
            };
            Some(
                si.iter()
                    .map(|w| substitute(&tau_inv, w))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
        _ => None,
    };
    Ok(Endomorphism { rank: sigma.rank, images, inverse_images })
}

/// The transvection `σ_ij`: `f_i ↦ f_i f_j`, other generators fixed.
pub fn transvection(rank: usize, i: usize, j: usize) -> Result<Endomorphism, EndoError> {
    if rank < 2 {
        return Err(EndoError::RankTooSmall { needed: 2, got: rank });
    }
    if i == j || i == 0 || j == 0 || i > rank || j > rank {
        return Err(EndoError::BadTransvection { rank, i, j });
    }
    let mut images = Vec::with_capacity(rank);
    let mut inverse_images = Vec::with_capacity(rank);
    for l in 1..=rank {
        if l == i {
            images.push(reduce(rank, &[(i, 1), (j, 1)])?);
            inverse_images.push(reduce(rank, &[(i, 1), (j, -1)])?);
        } else {
            let g = ReducedWord::generator(rank, l)?;
            images.push(g.clone());
            inverse_images.push(g);
        }
    }
    Ok(Endomorphism { rank, images, inverse_images: Some(inverse_images) })
}

/// The mutually inverse pair fixing `f_1..f_{n-1}` and sending
/// `f_n ↦ f_n θ_s` (resp. `f_n θ_s^-1`). Requires rank ≥ 3 so that the
/// tower word (in `f_1, f_2` only) is untouched by the `f_n` twist.
pub fn theta_kernel_pair(
    rank: usize,
    s: usize,
) -> Result<(Endomorphism, Endomorphism), EndoError> {
    if rank < 3 {
        return Err(EndoError::RankTooSmall { needed: 3, got: rank });
    }
    let tower = theta(rank, s)?;
    let fn_gen = ReducedWord::generator(rank, rank)?;
    let mut sigma_images = Vec::with_capacity(rank);
    let mut tau_images = Vec::with_capacity(rank);
    for l in 1..rank {
        let g = ReducedWord::generator(rank, l)?;
        sigma_images.push(g.clone());
        tau_images.push(g);
    }
    sigma_images.push(multiply(&fn_gen, &tower)?);
    tau_images.push(multiply(&fn_gen, &invert(&tower))?);
    let sigma = Endomorphism::with_witness(rank, sigma_images, tau_images.clone())?;
    let tau = sigma.inverse()?;
    Ok((sigma, tau))
}

/// Like `theta_kernel_pair` but twisting `f_n` by the derived-subgroup
/// word `delta_s`, which vanishes on every group of derived length ≤ s.
/// This is the pair behind the solvable-group kernel witness.
pub fn derived_kernel_pair(
    rank: usize,
    s: usize,
) -> Result<(Endomorphism, Endomorphism), EndoError> {
    if rank < 3 {
        return Err(EndoError::RankTooSmall { needed: 3, got: rank });
    }
    let tower = derived_word(rank, s)?;
    let fn_gen = ReducedWord::generator(rank, rank)?;
    let mut sigma_images = Vec::with_capacity(rank);
    let mut tau_images = Vec::with_capacity(rank);
    for l in 1..rank {
        let g = ReducedWord::generator(rank, l)?;
        sigma_images.push(g.clone());
        tau_images.push(g);
    }
    sigma_images.push(multiply(&fn_gen, &tower)?);
    tau_images.push(multiply(&fn_gen, &invert(&tower))?);
    let sigma = Endomorphism::with_witness(rank, sigma_images, tau_images.clone())?;
    let tau = sigma.inverse()?;
    Ok((sigma, tau))
}

/// The mutually inverse pair `σ(f_i) = f_1 f_i f_1^-1` (i > 1) and its
/// `f_1^-1 (·) f_1` companion.
pub fn conjugation_pair(rank: usize) -> Result<(Endomorphism, Endomorphism), EndoError> {
    if rank < 2 {
        return Err(EndoError::RankTooSmall { needed: 2, got: rank });
    }
    let mut sigma_images = vec![ReducedWord::generator(rank, 1)?];
    let mut tau_images = vec![ReducedWord::generator(rank, 1)?];
    for i in 2..=rank {
        sigma_images.push(reduce(rank, &[(1, 1), (i, 1), (1, -1)])?);
        tau_images.push(reduce(rank, &[(1, -1), (i, 1), (1, 1)])?);
    }
    let sigma = Endomorphism::with_witness(rank, sigma_images, tau_images)?;
    let tau = sigma.inverse()?;
    Ok((sigma, tau))
}

/// The classical Nielsen generating set of `Aut(F_n)`: generator inversion,
/// the swap and the cycle of generators (rank ≥ 2), and the transvection
/// `f_1 ↦ f_1 f_2` (rank ≥ 2). For rank 1 only the inversion.
pub fn nielsen_generators(rank: usize) -> Result<Vec<Endomorphism>, EndoError> {
    assert!(rank >= 1);
    let mut gens = Vec::new();

    // inversion f1 -> f1^-1, self-inverse
    let mut inv_images = vec![reduce(rank, &[(1, -1)])?];
    for l in 2..=rank {
        inv_images.push(ReducedWord::generator(rank, l)?);
    }
    gens.push(Endomorphism::with_witness(rank, inv_images.clone(), inv_images)?);

    if rank >= 2 {
        // swap f1 <-> f2, self-inverse
        let mut swap_images = vec![
            ReducedWord::generator(rank, 2)?,
            ReducedWord::generator(rank, 1)?,
        ];
        for l in 3..=rank {
            swap_images.push(ReducedWord::generator(rank, l)?);
        }
        gens.push(Endomorphism::with_witness(rank, swap_images.clone(), swap_images)?);

        // cycle f1 -> f2 -> ... -> fn -> f1
        let cycle_images: Vec<ReducedWord> = (1..=rank)
            .map(|l| ReducedWord::generator(rank, l % rank + 1))
            .collect::<Result<Vec<_>, _>>()?;
        let cycle_inverse: Vec<ReducedWord> = (1..=rank)
            .map(|l| ReducedWord::generator(rank, (l + rank - 2) % rank + 1))
            .collect::<Result<Vec<_>, _>>()?;
        gens.push(Endomorphism::with_witness(rank, cycle_images, cycle_inverse)?);

        gens.push(transvection(rank, 1, 2)?);
    }
    Ok(gens)
}

/// The Artin braid generator `σ_i` acting on `F_rank`:
/// `f_i ↦ f_i f_{i+1} f_i^-1`, `f_{i+1} ↦ f_i`, others fixed.
pub fn braid_generator(rank: usize, i: usize) -> Result<Endomorphism, EndoError> {
    if rank < 2 {
        return Err(EndoError::RankTooSmall { needed: 2, got: rank });
    }
    if i == 0 || i >= rank {
        return Err(EndoError::BadBraidIndex { max: rank - 1, got: i });
    }
    let mut images = Vec::with_capacity(rank);
    let mut inverse_images = Vec::with_capacity(rank);
    for l in 1..=rank {
        if l == i {
            images.push(reduce(rank, &[(i, 1), (i + 1, 1), (i, -1)])?);
            inverse_images.push(ReducedWord::generator(rank, i + 1)?);
        } else if l == i + 1 {
            images.push(ReducedWord::generator(rank, i)?);
            inverse_images.push(reduce(rank, &[(i + 1, -1), (i, 1), (i + 1, 1)])?);
        } else {
            let g = ReducedWord::generator(rank, l)?;
            images.push(g.clone());
            inverse_images.push(g);
        }
    }
    Endomorphism::with_witness(rank, images, inverse_images)
}

/// Embed an endomorphism of `F_s` into `F_n` (n ≥ s), fixing the new
/// generators. Preserves composition and witnesses.
pub fn embed_aut(sigma: &Endomorphism, target_rank: usize) -> Result<Endomorphism, EndoError> {
    if target_rank < sigma.rank {
        return Err(EndoError::RankTooSmall { needed: sigma.rank, got: target_rank });
    }
    let embed_images = |imgs: &[ReducedWord]| -> Result<Vec<ReducedWord>, WordError> {
        let mut out = Vec::with_capacity(target_rank);
        for img in imgs {
            out.push(img.embed(target_rank)?);
        }
        for l in sigma.rank + 1..=target_rank {
            out.push(ReducedWord::generator(target_rank, l)?);
        }
        Ok(out)
    };
    let images = embed_images(&sigma.images)?;
    let inverse_images = match &sigma.inverse_images {
        Some(inv) => Some(embed_images(inv)?),
        None => None,
    };
    Ok(Endomorphism { rank: target_rank, images, inverse_images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_examples() {
        let id1 = Endomorphism::identity(1);
        assert_eq!(id1.images(), &[ReducedWord::generator(1, 1).unwrap()]);
        let id3 = Endomorphism::identity(3);
        assert_eq!(id3.to_string(), "[f1, f2, f3]");
    }

    #[test]
    fn compose_identity_neutral() {
        let sigma = transvection(3, 2, 3).unwrap();
        let id = Endomorphism::identity(3);
        assert_eq!(compose(&sigma, &id).unwrap().images(), sigma.images());
        assert_eq!(compose(&id, &sigma).unwrap().images(), sigma.images());
    }

    #[test]
    fn compose_substitution_example() {
        // sigma = (f1, f1 f2), tau = (f2, f1): sigma∘tau = (f1 f2, f1)
        let sigma = Endomorphism::from_images(2, vec![
            free_group::parse(2, "f1").unwrap(),
            free_group::parse(2, "f1 f2").unwrap(),
        ])
        .unwrap();
        let tau = Endomorphism::from_images(2, vec![
            free_group::parse(2, "f2").unwrap(),
            free_group::parse(2, "f1").unwrap(),
        ])
        .unwrap();
        let st = compose(&sigma, &tau).unwrap();
        assert_eq!(st.to_string(), "[f1 f2, f1]");
    }

    #[test]
    fn theta_kernel_pair_composes_to_identity() {
        for s in 1..=3 {
            let (sigma, tau) = theta_kernel_pair(3, s).unwrap();
            assert!(compose(&sigma, &tau).unwrap().is_identity());
            assert!(compose(&tau, &sigma).unwrap().is_identity());
            assert!(!sigma.is_identity());
            // only the last image differs from the identity
            for i in 1..3 {
                assert_eq!(sigma.image(i), &ReducedWord::generator(3, i).unwrap());
            }
        }
        let (sigma, _) = theta_kernel_pair(3, 1).unwrap();
        assert_eq!(sigma.to_string(), "[f1, f2, f3 f1 f2 f1^-1 f2^-1]");
        assert!(matches!(theta_kernel_pair(2, 1), Err(EndoError::RankTooSmall { .. })));
    }

    #[test]
    fn derived_kernel_pair_composes_to_identity() {
        for s in 1..=3 {
            let (sigma, tau) = derived_kernel_pair(3, s).unwrap();
            assert!(compose(&sigma, &tau).unwrap().is_identity());
            assert!(compose(&tau, &sigma).unwrap().is_identity());
            assert!(!sigma.is_identity());
        }
        // level 1 coincides with the theta pair
        let (a, _) = derived_kernel_pair(3, 1).unwrap();
        let (b, _) = theta_kernel_pair(3, 1).unwrap();
        assert_eq!(a.images(), b.images());
        assert!(matches!(derived_kernel_pair(2, 1), Err(EndoError::RankTooSmall { .. })));
    }

    #[test]
    fn theta_kernel_twist_lives_in_first_two_generators() {
        let (sigma, _) = theta_kernel_pair(4, 3).unwrap();
        // f_n image is f_n followed by a word in f1, f2
        let img = sigma.image(4);
        let tail: Vec<usize> = img.syllables()[1..].iter().map(|s| s.index).collect();
        assert_eq!(img.syllables()[0].index, 4);
        assert!(tail.iter().all(|&g| g == 1 || g == 2));
    }

    #[test]
    fn conjugation_pair_examples() {
        let (sigma, tau) = conjugation_pair(2).unwrap();
        assert_eq!(sigma.to_string(), "[f1, f1 f2 f1^-1]");
        assert!(compose(&sigma, &tau).unwrap().is_identity());
        assert!(compose(&tau, &sigma).unwrap().is_identity());

        let (sigma3, _) = conjugation_pair(3).unwrap();
        assert_eq!(sigma3.to_string(), "[f1, f1 f2 f1^-1, f1 f3 f1^-1]");
    }

    #[test]
    fn transvection_examples() {
        let s12 = transvection(2, 1, 2).unwrap();
        assert_eq!(s12.to_string(), "[f1 f2, f2]");
        assert!(compose(&s12, &s12.inverse().unwrap()).unwrap().is_identity());

        let s31 = transvection(3, 3, 1).unwrap();
        assert_eq!(s31.to_string(), "[f1, f2, f3 f1]");
        assert!(transvection(3, 2, 2).is_err());
        assert!(transvection(3, 4, 1).is_err());
    }

    #[test]
    fn nielsen_generator_set() {
        let g1 = nielsen_generators(1).unwrap();
        assert_eq!(g1.len(), 1);
        assert_eq!(g1[0].to_string(), "[f1^-1]");

        let g2 = nielsen_generators(2).unwrap();
        assert_eq!(g2.len(), 4);
        for g in &g2 {
            let inv = g.inverse().unwrap();
            assert!(compose(g, &inv).unwrap().is_identity());
            assert!(compose(&inv, g).unwrap().is_identity());
        }
    }

    #[test]
    fn braid_generator_formulas() {
        let s1 = braid_generator(3, 1).unwrap();
        assert_eq!(s1.to_string(), "[f1 f2 f1^-1, f1, f3]");
        assert!(compose(&s1, &s1.inverse().unwrap()).unwrap().is_identity());
        assert!(braid_generator(3, 3).is_err());
        assert!(braid_generator(3, 0).is_err());
    }

    #[test]
    fn braid_relations() {
        // adjacent: s1 s2 s1 = s2 s1 s2 in Aut(F_3)
        let s1 = braid_generator(3, 1).unwrap();
        let s2 = braid_generator(3, 2).unwrap();
        let lhs = compose(&compose(&s1, &s2).unwrap(), &s1).unwrap();
        let rhs = compose(&compose(&s2, &s1).unwrap(), &s2).unwrap();
        assert_eq!(lhs.images(), rhs.images());

        // distant: s1 s3 = s3 s1 in Aut(F_4)
        let t1 = braid_generator(4, 1).unwrap();
        let t3 = braid_generator(4, 3).unwrap();
        assert_eq!(
            compose(&t1, &t3).unwrap().images(),
            compose(&t3, &t1).unwrap().images()
        );
    }

    #[test]
    fn embed_aut_examples() {
        let id2 = Endomorphism::identity(2);
        assert_eq!(embed_aut(&id2, 4).unwrap().images(), Endomorphism::identity(4).images());

        let s = transvection(2, 1, 2).unwrap();
        let embedded = embed_aut(&s, 3).unwrap();
        assert_eq!(embedded.images(), transvection(3, 1, 2).unwrap().images());
        assert!(embed_aut(&embedded, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let sigma = braid_generator(3, 1).unwrap();
        let json = serde_json::to_string(&sigma).unwrap();
        let back: Endomorphism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sigma);
    }

    #[test]
    fn parse_text_form() {
        let sigma = Endomorphism::parse(3, "[f1 f2 f1^-1, f1, f3]").unwrap();
        assert_eq!(sigma.images(), braid_generator(3, 1).unwrap().images());
        assert!(Endomorphism::parse(3, "f1, f2").is_err());
        assert!(Endomorphism::parse(3, "[f1, f2]").is_err());
    }

    #[test]
    fn bad_witness_rejected() {
        let images = vec![
            free_group::parse(2, "f1 f2").unwrap(),
            free_group::parse(2, "f2").unwrap(),
        ];
        let wrong_inverse = vec![
            free_group::parse(2, "f1").unwrap(),
            free_group::parse(2, "f2").unwrap(),
        ];
        assert!(matches!(
            Endomorphism::with_witness(2, images, wrong_inverse),
            Err(EndoError::BadWitness)
        ));
    }

    fn small_endo_strategy(rank: usize) -> impl Strategy<Value = Endomorphism> {
        prop::collection::vec(
            prop::collection::vec((1..=rank, -2i64..=2), 0..6),
            rank..=rank,
        )
        .prop_map(move |raws| {
            let images = raws
                .into_iter()
                .map(|raw| {
                    let raw: Vec<(usize, i64)> =
                        raw.into_iter().filter(|&(_, e)| e != 0).collect();
                    reduce(rank, &raw).unwrap()
                })
                .collect();
            Endomorphism::from_images(rank, images).unwrap()
        })
    }

    proptest! {
        #[test]
        fn composition_associative(
            a in small_endo_strategy(3),
            b in small_endo_strategy(3),
            c in small_endo_strategy(3),
        ) {
            let ab_c = compose(&compose(&a, &b).unwrap(), &c).unwrap();
            let a_bc = compose(&a, &compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c.images(), a_bc.images());
        }

        #[test]
        fn embed_preserves_composition(
            a in small_endo_strategy(2),
            b in small_endo_strategy(2),
        ) {
            let lhs = embed_aut(&compose(&a, &b).unwrap(), 4).unwrap();
            let rhs = compose(&embed_aut(&a, 4).unwrap(), &embed_aut(&b, 4).unwrap()).unwrap();
            prop_assert_eq!(lhs.images(), rhs.images());
        }
    }
}
