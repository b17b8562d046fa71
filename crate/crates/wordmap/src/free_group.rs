//! Exact arithmetic in the free group `F_n`.
//!
//! Elements are reduced words stored as syllables `(generator, exponent)`,
//! i.e. run-length encoded: the commutator towers built here grow
//! exponentially in letter count but stay small as syllable sequences.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default limit on the syllable count of any produced word.
pub const DEFAULT_SYLLABLE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} out of range 1..={rank}")]
    InvalidGenerator { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("word exceeds syllable cap {cap}")]
    TooLong { cap: usize },
    #[error("rank must be at least {needed}, got {got}")]
    RankTooSmall { needed: usize, got: usize },
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// One maximal run `f_index^exponent` of a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub index: usize,
    pub exponent: i64,
}

/// A reduced word in `F_rank`: adjacent syllables have distinct generator
/// indices and every exponent is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    rank: usize,
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    /// The empty word (identity of `F_rank`).
    pub fn identity(rank: usize) -> Self {
        ReducedWord { rank, syllables: Vec::new() }
    }

    /// The generator `f_i` (1-based).
    pub fn generator(rank: usize, i: usize) -> Result<Self, WordError> {
        if i == 0 || i > rank {
            return Err(WordError::InvalidGenerator { index: i, rank });
        }
        Ok(ReducedWord { rank, syllables: vec![Syllable { index: i, exponent: 1 }] })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total letter length `sum |exponent|`, saturating.
    pub fn letter_len(&self) -> u64 {
        self.syllables
            .iter()
            .fold(0u64, |acc, s| acc.saturating_add(s.exponent.unsigned_abs()))
    }

    /// Re-rank a word into a larger free group, keeping the same letters.
    pub fn embed(&self, target_rank: usize) -> Result<Self, WordError> {
        if target_rank < self.rank {
            return Err(WordError::RankTooSmall { needed: self.rank, got: target_rank });
        }
        Ok(ReducedWord { rank: target_rank, syllables: self.syllables.clone() })
    }

    /// Generator indices actually used by this word.
    pub fn support(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.syllables.iter().map(|s| s.index).collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    fn check_ranks(&self, other: &ReducedWord) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }
}

/// Reduce a raw syllable sequence to normal form.
pub fn reduce(rank: usize, raw: &[(usize, i64)]) -> Result<ReducedWord, WordError> {
    reduce_capped(rank, raw, DEFAULT_SYLLABLE_CAP)
}

/// Reduce with an explicit syllable cap on the result.
pub fn reduce_capped(
    rank: usize,
    raw: &[(usize, i64)],
    cap: usize,
) -> Result<ReducedWord, WordError> {
    let mut stack: Vec<Syllable> = Vec::new();
    for &(index, exponent) in raw {
        if index == 0 || index > rank {
            return Err(WordError::InvalidGenerator { index, rank });
        }
        push_syllable(&mut stack, index, exponent);
        if stack.len() > cap {
            return Err(WordError::TooLong { cap });
        }
    }
    Ok(ReducedWord { rank, syllables: stack })
}

// Push one syllable onto a reduced stack, merging and cancelling as needed.
// The stack stays reduced after every call.
fn push_syllable(stack: &mut Vec<Syllable>, index: usize, exponent: i64) {
    if exponent == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.index == index => {
            top.exponent += exponent;
            if top.exponent == 0 {
                stack.pop();
            }
        }
        _ => stack.push(Syllable { index, exponent }),
    }
}

/// Reduced concatenation `u v`.
pub fn multiply(u: &ReducedWord, v: &ReducedWord) -> Result<ReducedWord, WordError> {
    u.check_ranks(v)?;
    let mut stack = u.syllables.clone();
    for s in &v.syllables {
        push_syllable(&mut stack, s.index, s.exponent);
        if stack.len() > DEFAULT_SYLLABLE_CAP {
            return Err(WordError::TooLong { cap: DEFAULT_SYLLABLE_CAP });
        }
    }
    Ok(ReducedWord { rank: u.rank, syllables: stack })
}

/// Inverse: reversed syllables with negated exponents.
pub fn invert(u: &ReducedWord) -> ReducedWord {
    let syllables = u
        .syllables
        .iter()
        .rev()
        .map(|s| Syllable { index: s.index, exponent: -s.exponent })
        .collect();
    ReducedWord { rank: u.rank, syllables }
}

/// Commutator `a b a^-1 b^-1`, reduced.
pub fn commutator(a: &ReducedWord, b: &ReducedWord) -> Result<ReducedWord, WordError> {
    a.check_ranks(b)?;
    let ab = multiply(a, b)?;
    let aba = multiply(&ab, &invert(a))?;
    multiply(&aba, &invert(b))
}

/// The commutator tower: `theta_1 = [f1, f2]`,
/// `theta_i = [theta_{i-1}, f_d]` with `d = 1` for even `i`, `d = 2` for odd.
///
/// Always a nonempty reduced word in `f1` and `f2` only.
pub fn theta(rank: usize, i: usize) -> Result<ReducedWord, WordError> {
    if rank < 2 {
        return Err(WordError::RankTooSmall { needed: 2, got: rank });
    }
    assert!(i >= 1, "theta index must be positive");
    let f1 = ReducedWord::generator(rank, 1)?;
    let f2 = ReducedWord::generator(rank, 2)?;
    let mut current = commutator(&f1, &f2)?;
    for level in 2..=i {
        let d = if level % 2 == 0 { &f1 } else { &f2 };
        current = commutator(&current, d)?;
    }
    Ok(current)
}

/// A nonempty word in `f1, f2` lying in the `s`-th derived subgroup of the
/// free group: `delta_1 = [f1, f2]`,
/// `delta_i = [delta_{i-1}, f1 delta_{i-1} f1^-1]`.
///
/// Both commutator arguments at step `i` lie in the `(i-1)`-st derived
/// subgroup (which is normal), so `delta_i` lands one level deeper; hence
/// `delta_s` evaluates to the identity in every group of derived length
/// at most `s`. The tower `theta` does not have this property: its
/// vanishing tracks nilpotency class, not derived length (for instance
/// `theta_2 = [[f1,f2],f1]` survives in the non-nilpotent metabelian
/// group of invertible upper-triangular 2x2 matrices).
pub fn derived_word(rank: usize, s: usize) -> Result<ReducedWord, WordError> {
    if rank < 2 {
        return Err(WordError::RankTooSmall { needed: 2, got: rank });
    }
    assert!(s >= 1, "derived_word index must be positive");
    let f1 = ReducedWord::generator(rank, 1)?;
    let f2 = ReducedWord::generator(rank, 2)?;
    let mut current = commutator(&f1, &f2)?;
    for _ in 2..=s {
        let conjugated = multiply(&multiply(&f1, &current)?, &invert(&f1))?;
        current = commutator(&current, &conjugated)?;
        assert!(!current.is_identity(), "the derived tower stays nontrivial in a free group");
    }
    Ok(current)
}

impl fmt::Display for ReducedWord {
    /// Grammar: whitespace-separated `f<k>` or `f<k>^<e>`; the empty word is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for s in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if s.exponent == 1 {
                write!(f, "f{}", s.index)?;
            } else {
                write!(f, "f{}^{}", s.index, s.exponent)?;
            }
        }
        Ok(())
    }
}

/// Parse the word grammar at a given rank.
pub fn parse(rank: usize, input: &str) -> Result<ReducedWord, WordError> {
    let trimmed = input.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(ReducedWord::identity(rank));
    }
    let mut raw = Vec::new();
    for token in trimmed.split_whitespace() {
        let rest = token
            .strip_prefix('f')
            .ok_or_else(|| WordError::Parse(format!("expected f<k>, got `{token}`")))?;
        let (idx_str, exp) = match rest.split_once('^') {
            Some((i, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| WordError::Parse(format!("bad exponent in `{token}`")))?;
                (i, exp)
            }
            None => (rest, 1),
        };
        if exp == 0 {
            return Err(WordError::Parse(format!("zero exponent in `{token}`")));
        }
        let index: usize = idx_str
            .parse()
            .map_err(|_| WordError::Parse(format!("bad generator index in `{token}`")))?;
        raw.push((index, exp));
    }
    reduce(rank, &raw)
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(rank: usize, raw: &[(usize, i64)]) -> ReducedWord {
        reduce(rank, raw).unwrap()
    }

    #[test]
    fn reduce_cancels_to_identity() {
        assert!(w(2, &[(1, 1), (1, -1)]).is_identity());
    }

    #[test]
    fn reduce_merges_exponents() {
        let word = w(2, &[(1, 2), (1, 3), (2, 1)]);
        assert_eq!(word.syllables(), &[
            Syllable { index: 1, exponent: 5 },
            Syllable { index: 2, exponent: 1 }
        ]);
    }

    #[test]
    fn reduce_cascading_cancellation() {
        // hand cancellation, matches the stack oracle
        let raw = [(1, 1), (2, 1), (2, -1), (1, 1)];
        let word = w(2, &raw);
        assert_eq!(word.syllables(), &[Syllable { index: 1, exponent: 2 }]);
        let oracle = oracle::stack_reduce(&raw);
        assert_eq!(oracle, vec![(1, 2)]);
    }

    #[test]
    fn reduce_rejects_bad_index() {
        assert!(matches!(
            reduce(2, &[(3, 1)]),
            Err(WordError::InvalidGenerator { index: 3, rank: 2 })
        ));
        assert!(matches!(reduce(2, &[(0, 1)]), Err(WordError::InvalidGenerator { .. })));
    }

    #[test]
    fn multiply_examples() {
        let f1 = ReducedWord::generator(2, 1).unwrap();
        assert!(multiply(&f1, &invert(&f1)).unwrap().is_identity());

        // f1 f2 * f2^-1 f1 = f1^2 (stack oracle agrees)
        let u = w(2, &[(1, 1), (2, 1)]);
        let v = w(2, &[(2, -1), (1, 1)]);
        let prod = multiply(&u, &v).unwrap();
        assert_eq!(prod, w(2, &[(1, 2)]));
        assert_eq!(
            oracle::stack_reduce(&[(1, 1), (2, 1), (2, -1), (1, 1)]),
            vec![(1, 2)]
        );

        let e = ReducedWord::identity(2);
        assert_eq!(multiply(&e, &u).unwrap(), u);
    }

    #[test]
    fn multiply_rank_mismatch() {
        let u = ReducedWord::identity(2);
        let v = ReducedWord::identity(3);
        assert!(matches!(multiply(&u, &v), Err(WordError::RankMismatch { .. })));
    }

    #[test]
    fn invert_examples() {
        let u = w(2, &[(1, 1), (2, -1)]);
        assert_eq!(invert(&u), w(2, &[(2, 1), (1, -1)]));
        assert!(invert(&ReducedWord::identity(2)).is_identity());
        let v = w(2, &[(1, 2), (2, 1)]);
        assert_eq!(invert(&v), w(2, &[(2, -1), (1, -2)]));
    }

    #[test]
    fn commutator_examples() {
        let f1 = ReducedWord::generator(2, 1).unwrap();
        let f2 = ReducedWord::generator(2, 2).unwrap();
        assert!(commutator(&f1, &f1).unwrap().is_identity());
        assert_eq!(
            commutator(&f1, &f2).unwrap(),
            w(2, &[(1, 1), (2, 1), (1, -1), (2, -1)])
        );
        // [f1 f2, f2] via the stack oracle
        let a = w(2, &[(1, 1), (2, 1)]);
        let got = commutator(&a, &f2).unwrap();
        let raw = [(1, 1), (2, 1), (2, 1), (2, -1), (1, -1), (2, -1)];
        let expected: Vec<Syllable> = oracle::stack_reduce(&raw)
            .into_iter()
            .map(|(index, exponent)| Syllable { index, exponent })
            .collect();
        assert_eq!(got.syllables(), expected.as_slice());
    }

    #[test]
    fn theta_examples() {
        let t1 = theta(2, 1).unwrap();
        assert_eq!(t1, w(2, &[(1, 1), (2, 1), (1, -1), (2, -1)]));

        // theta_2 = [theta_1, f1]
        let f1 = ReducedWord::generator(2, 1).unwrap();
        assert_eq!(theta(2, 2).unwrap(), commutator(&t1, &f1).unwrap());

        // theta_3 = [[theta_1, f1], f2], nonempty reduced, cross-checked by oracle
        let t3 = theta(2, 3).unwrap();
        assert!(!t3.is_identity());
        let raw: Vec<(usize, i64)> =
            t3.syllables().iter().map(|s| (s.index, s.exponent)).collect();
        let oracle_form = oracle::stack_reduce(&raw);
        assert_eq!(
            t3.syllables()
                .iter()
                .map(|s| (s.index, s.exponent))
                .collect::<Vec<_>>(),
            oracle_form
        );
    }

    #[test]
    fn theta_needs_rank_two() {
        assert!(matches!(theta(1, 1), Err(WordError::RankTooSmall { .. })));
    }

    #[test]
    fn theta_uses_only_first_two_generators() {
        for i in 1..=6 {
            let t = theta(4, i).unwrap();
            assert!(!t.is_identity());
            assert!(t.support().iter().all(|&g| g == 1 || g == 2));
        }
    }

    #[test]
    fn derived_word_examples() {
        // level 1 agrees with the commutator tower
        assert_eq!(derived_word(2, 1).unwrap(), theta(2, 1).unwrap());

        // delta_2 = [delta_1, f1 delta_1 f1^-1]
        let d1 = derived_word(2, 1).unwrap();
        let f1 = ReducedWord::generator(2, 1).unwrap();
        let conj = multiply(&multiply(&f1, &d1).unwrap(), &invert(&f1)).unwrap();
        assert_eq!(derived_word(2, 2).unwrap(), commutator(&d1, &conj).unwrap());

        for s in 1..=4 {
            let d = derived_word(4, s).unwrap();
            assert!(!d.is_identity());
            assert!(d.support().iter().all(|&g| g == 1 || g == 2));
        }
        assert!(matches!(derived_word(1, 1), Err(WordError::RankTooSmall { .. })));
    }

    #[test]
    fn parse_and_print_round_trip() {
        let word = parse(3, "f1 f2^-1 f1^2").unwrap();
        assert_eq!(word.to_string(), "f1 f2^-1 f1^2");
        assert_eq!(parse(3, "1").unwrap(), ReducedWord::identity(3));
        assert_eq!(ReducedWord::identity(3).to_string(), "1");
        // parsing reduces
        assert_eq!(parse(2, "f1 f1^-1").unwrap(), ReducedWord::identity(2));
        assert!(parse(2, "f3").is_err());
        assert!(parse(2, "x1").is_err());
    }

    fn raw_word_strategy(rank: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
        prop::collection::vec((1..=rank, -4i64..=4), 0..40)
            .prop_map(|v| v.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    proptest! {
        #[test]
        fn reduction_idempotent(raw in raw_word_strategy(3)) {
            let once = reduce(3, &raw).unwrap();
            let again = reduce(
                3,
                &once.syllables().iter().map(|s| (s.index, s.exponent)).collect::<Vec<_>>(),
            )
            .unwrap();
            prop_assert_eq!(once, again);
        }

        #[test]
        fn oracle_agreement(raw in raw_word_strategy(3)) {
            let fast = reduce(3, &raw).unwrap();
            let slow = oracle::stack_reduce(&raw);
            prop_assert_eq!(
                fast.syllables().iter().map(|s| (s.index, s.exponent)).collect::<Vec<_>>(),
                slow
            );
        }

        #[test]
        fn group_laws(
            a in raw_word_strategy(3),
            b in raw_word_strategy(3),
            c in raw_word_strategy(3),
        ) {
            let a = reduce(3, &a).unwrap();
            let b = reduce(3, &b).unwrap();
            let c = reduce(3, &c).unwrap();
            let ab_c = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);

            let e = ReducedWord::identity(3);
            prop_assert_eq!(&multiply(&a, &e).unwrap(), &a);
            prop_assert_eq!(&multiply(&e, &a).unwrap(), &a);
            prop_assert!(multiply(&a, &invert(&a)).unwrap().is_identity());
            prop_assert!(multiply(&invert(&a), &a).unwrap().is_identity());
        }
    }
}
