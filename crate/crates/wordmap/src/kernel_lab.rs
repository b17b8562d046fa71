//! Kernel and faithfulness experiments for the action of `Aut(F_n)` on
//! `G^n`: a constructive non-faithfulness witness for solvable `G` via the
//! commutator tower, and witness search for the nonsolvable direction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::endomorphism::{derived_kernel_pair, EndoError, Endomorphism};
use crate::free_group::{derived_word, WordError};
use crate::group_backend::{DerivedLength, Group};
use crate::word_map::{apply, evaluate, Tuple, TupleIter, WordMapError};

/// Default bound on `|G|^n` for exhaustive tuple scans.
pub const DEFAULT_TUPLE_CAP: u64 = 10_000_000;

/// Default sample count when a scan is too large to run exhaustively.
pub const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Debug, Error)]
pub enum KernelLabError {
    #[error("group is nonsolvable; the tower witness needs a solvable group")]
    Nonsolvable,
    #[error("tuple length must be at least 3, got {0}")]
    RankTooSmall(usize),
    #[error("sigma is the identity; nothing to search for")]
    IdentitySigma,
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    WordMap(#[from] WordMapError),
}

/// Whether a verdict was established by full enumeration or by sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive { tuples: u64 },
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelWitnessReport {
    pub derived_length: usize,
    pub mode: SearchMode,
    /// Every scanned tuple was fixed by the witness.
    pub all_fixed: bool,
    /// The tower word evaluated to `e` on every scanned tuple.
    pub tower_vanishes: bool,
    pub sigma_is_identity: bool,
}

/// Build the non-faithfulness witness for a solvable group: the
/// automorphism twisting `f_n` by the tower word at the derived length.
/// Verifies, exhaustively when `|G|^n` fits the cap, that it acts as the
/// identity on `G^n` and that the tower word vanishes on every tuple.
pub fn kernel_witness_solvable(
    group: &Group,
    n: usize,
    tuple_cap: u64,
    seed: u64,
) -> Result<(Endomorphism, KernelWitnessReport), KernelLabError> {
    if n < 3 {
        return Err(KernelLabError::RankTooSmall(n));
    }
    let s = match group.derived_length() {
        DerivedLength::Solvable(s) => s,
        DerivedLength::Nonsolvable => return Err(KernelLabError::Nonsolvable),
    };
    let (sigma, _tau) = derived_kernel_pair(n, s)?;
    let tower = derived_word(n, s)?;

    let total = TupleIter::count_total(group, n);
    let mut all_fixed = true;
    let mut tower_vanishes = true;
    let id = group.identity();
    let mode = if total <= tuple_cap {
        for x in TupleIter::new(group, n) {
            if evaluate(group, &tower, &x)? != id {
                tower_vanishes = false;
            }
            if apply(group, &sigma, &x)? != x {
                all_fixed = false;
            }
            if !all_fixed && !tower_vanishes {
                break;
            }
        }
        SearchMode::Exhaustive { tuples: total }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..DEFAULT_SAMPLES {
            let x = random_tuple(group, n, &mut rng);
            if evaluate(group, &tower, &x)? != id {
                tower_vanishes = false;
            }
            if apply(group, &sigma, &x)? != x {
                all_fixed = false;
            }
        }
        SearchMode::Sampled { samples: DEFAULT_SAMPLES, seed }
    };

    let report = KernelWitnessReport {
        derived_length: s,
        mode,
        all_fixed,
        tower_vanishes,
        sigma_is_identity: sigma.is_identity(),
    };
    Ok((sigma, report))
}

fn random_tuple<R: Rng>(group: &Group, n: usize, rng: &mut R) -> Tuple {
    Tuple::new(group, (0..n).map(|_| group.random_element(rng)).collect())
        .expect("elements drawn from the group")
}

/// Outcome of a faithfulness search.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// A tuple moved by the map; re-verified before being returned.
    Witness {
        #[serde(serialize_with = "serialize_tuple")]
        tuple: Tuple,
        mode: SearchMode,
    },
    /// No moved tuple found. Under sampling this is not a proof.
    NoneFound { mode: SearchMode },
}

fn serialize_tuple<S: serde::Serializer>(t: &Tuple, ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(t.len()))?;
    for g in t.entries() {
        seq.serialize_element(&g.rows())?;
    }
    seq.end()
}

/// Search for a tuple with `σ_X(x) ≠ x`. Exhaustive when `|G|^n` is at
/// most the cap, otherwise seeded random sampling within the budget.
pub fn faithfulness_search(
    group: &Group,
    sigma: &Endomorphism,
    budget: u64,
    tuple_cap: u64,
    seed: u64,
) -> Result<SearchOutcome, KernelLabError> {
    if sigma.is_identity() {
        return Err(KernelLabError::IdentitySigma);
    }
    let n = sigma.rank();
    let total = TupleIter::count_total(group, n);
    if total <= tuple_cap {
        for (scanned, x) in TupleIter::new(group, n).enumerate() {
            if apply(group, sigma, &x)? != x {
                debug_assert!(apply(group, sigma, &x)? != x);
                return Ok(SearchOutcome::Witness {
                    tuple: x,
                    mode: SearchMode::Exhaustive { tuples: scanned as u64 + 1 },
                });
            }
        }
        Ok(SearchOutcome::NoneFound { mode: SearchMode::Exhaustive { tuples: total } })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let x = random_tuple(group, n, &mut rng);
            if apply(group, sigma, &x)? != x {
                return Ok(SearchOutcome::Witness {
                    tuple: x,
                    mode: SearchMode::Sampled { samples: budget, seed },
                });
            }
        }
        Ok(SearchOutcome::NoneFound { mode: SearchMode::Sampled { samples: budget, seed } })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSearchEntry {
    pub generator: String,
    #[serde(flatten)]
    pub outcome: SearchOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<GeneratorSearchEntry>,
    /// True when every generator has a moved-tuple witness.
    pub all_act_nontrivially: bool,
}

/// Run `faithfulness_search` over a family of generators and aggregate.
pub fn generator_faithfulness_suite(
    group: &Group,
    generators: &[Endomorphism],
    budget: u64,
    tuple_cap: u64,
    seed: u64,
) -> Result<SuiteReport, KernelLabError> {
    assert!(!generators.is_empty(), "generator list must be nonempty");
    let mut entries = Vec::new();
    let mut all = true;
    for sigma in generators {
        let outcome = faithfulness_search(group, sigma, budget, tuple_cap, seed)?;
        if matches!(outcome, SearchOutcome::NoneFound { .. }) {
            all = false;
        }
        entries.push(GeneratorSearchEntry { generator: sigma.to_string(), outcome });
    }
    Ok(SuiteReport { entries, all_act_nontrivially: all })
}

/// The `n = 1` special case: the only nontrivial automorphism inverts the
/// generator, so it fixes exactly the involutions. Returns the number of
/// elements with `g^2 ≠ e`; zero means the `n = 1` action is trivial.
pub fn count_non_involutions(group: &Group) -> usize {
    let id = group.identity();
    group
        .elements()
        .iter()
        .filter(|g| group.multiply(g, g) != id)
        .count()
}
