//! Root systems of the irreducible types in their standard coordinates,
//! the longest Weyl element, and the `-1 ∈ W` classification.
//!
//! All arithmetic is exact over rationals (the E-series needs
//! half-integers); no floating point anywhere.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

type Coord = Ratio<i64>;
type Vector = Vec<Coord>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("invalid irreducible type/rank pair: {0}{1}")]
    InvalidPair(char, usize),
    #[error("cannot parse root-system factor: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// One irreducible factor, e.g. `A2` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Factor {
    pub root_type: RootType,
    pub rank: usize,
}

impl Factor {
    pub fn new(root_type: RootType, rank: usize) -> Result<Self, WeylError> {
        let valid = match root_type {
            RootType::A => rank >= 1,
            RootType::B => rank >= 2,
            RootType::C => rank >= 3,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        };
        if !valid {
            let c = root_type.to_string().chars().next().unwrap();
            return Err(WeylError::InvalidPair(c, rank));
        }
        Ok(Factor { root_type, rank })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.root_type, self.rank)
    }
}

impl FromStr for Factor {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, WeylError> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| WeylError::Parse(s.to_string()))?;
        let root_type = match letter {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            _ => return Err(WeylError::Parse(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| WeylError::Parse(s.to_string()))?;
        Factor::new(root_type, rank)
    }
}

/// A root system in its standard ambient coordinates.
pub struct RootSystem {
    pub factor: Factor,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vector>,
    pub positive_roots: Vec<Vector>,
}

fn ratio(n: i64) -> Coord {
    Ratio::from_integer(n)
}

fn half(n: i64) -> Coord {
    Ratio::new(n, 2)
}

fn dot(a: &[Coord], b: &[Coord]) -> Coord {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn simple_roots_for(factor: Factor) -> (usize, Vec<Vector>) {
    let l = factor.rank;
    let unit = |dim: usize, i: usize| -> Vector {
        let mut v = vec![ratio(0); dim];
        v[i] = ratio(1);
        v
    };
    match factor.root_type {
        RootType::A => {
            // sum-zero hyperplane of dimension l+1: alpha_i = e_i - e_{i+1}
            let dim = l + 1;
            let roots = (0..l)
                .map(|i| {
                    let mut v = vec![ratio(0); dim];
                    v[i] = ratio(1);
                    v[i + 1] = ratio(-1);
                    v
                })
                .collect();
            (dim, roots)
        }
        RootType::B => {
            let dim = l;
            let mut roots: Vec<Vector> = (0..l - 1)
                .map(|i| {
                    let mut v = vec![ratio(0); dim];
                    v[i] = ratio(1);
                    v[i + 1] = ratio(-1);
                    v
                })
                .collect();
            roots.push(unit(dim, l - 1));
            (dim, roots)
        }
        RootType::C => {
            let dim = l;
            let mut roots: Vec<Vector> = (0..l - 1)
                .map(|i| {
                    let mut v = vec![ratio(0); dim];
                    v[i] = ratio(1);
                    v[i + 1] = ratio(-1);
                    v
                })
                .collect();
            let mut last = vec![ratio(0); dim];
            last[l - 1] = ratio(2);
            roots.push(last);
            (dim, roots)
        }
        RootType::D => {
            let dim = l;
            let mut roots: Vec<Vector> = (0..l - 1)
                .map(|i| {
                    let mut v = vec![ratio(0); dim];
                    v[i] = ratio(1);
                    v[i + 1] = ratio(-1);
                    v
                })
                .collect();
            let mut last = vec![ratio(0); dim];
            last[l - 2] = ratio(1);
            last[l - 1] = ratio(1);
            roots.push(last);
            (dim, roots)
        }
        RootType::E => {
            // E8 simple roots in dimension 8; E7 and E6 take the first 7 / 6
            let dim = 8;
            let mut alpha1 = vec![half(-1); 8];
            alpha1[0] = half(1);
            alpha1[7] = half(1);
            let mut alpha2 = vec![ratio(0); 8];
            alpha2[0] = ratio(1);
            alpha2[1] = ratio(1);
            let mut roots = vec![alpha1, alpha2];
            for i in 0..6 {
                // alpha_{i+3} = e_{i+1} - e_i
                let mut v = vec![ratio(0); 8];
                v[i] = ratio(-1);
                v[i + 1] = ratio(1);
                roots.push(v);
            }
            roots.truncate(l);
            (dim, roots)
        }
        RootType::F => {
            let dim = 4;
            let roots = vec![
                {
                    let mut v = vec![ratio(0); 4];
                    v[1] = ratio(1);
                    v[2] = ratio(-1);
                    v
                },
                {
                    let mut v = vec![ratio(0); 4];
                    v[2] = ratio(1);
                    v[3] = ratio(-1);
                    v
                },
                unit(4, 3),
                vec![half(1), half(-1), half(-1), half(-1)],
            ];
            (dim, roots)
        }
        RootType::G => {
            // ambient dimension 3, sum-zero plane
            let dim = 3;
            let roots = vec![
                vec![ratio(1), ratio(-1), ratio(0)],
                vec![ratio(-2), ratio(1), ratio(1)],
            ];
            (dim, roots)
        }
    }
}

/// Build the root system: simple roots in standard coordinates and the full
/// positive-root list generated by closing under simple reflections.
pub fn build_root_system(factor: Factor) -> RootSystem {
    let (ambient_dim, simple_roots) = simple_roots_for(factor);
    let rank = factor.rank;

    // track each root both in ambient coordinates and in the simple-root
    // basis (integer coefficients); the sign of the latter decides positivity
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<(Vector, Vec<i64>)> = VecDeque::new();
    let mut all: Vec<(Vector, Vec<i64>)> = Vec::new();
    for (i, alpha) in simple_roots.iter().enumerate() {
        let mut coeffs = vec![0i64; rank];
        coeffs[i] = 1;
        if seen.insert(coeffs.clone()) {
            queue.push_back((alpha.clone(), coeffs.clone()));
            all.push((alpha.clone(), coeffs));
        }
    }
    while let Some((v, coeffs)) = queue.pop_front() {
        for (j, alpha_j) in simple_roots.iter().enumerate() {
            // Cartan integer <v, alpha_j^vee>
            let k = ratio(2) * dot(&v, alpha_j) / dot(alpha_j, alpha_j);
            debug_assert!(k.is_integer());
            let k_int = k.to_integer();
            let image: Vector = v
                .iter()
                .zip(alpha_j)
                .map(|(x, a)| x - ratio(k_int) * a)
                .collect();
            let mut image_coeffs = coeffs.clone();
            image_coeffs[j] -= k_int;
            if seen.insert(image_coeffs.clone()) {
                queue.push_back((image.clone(), image_coeffs.clone()));
                all.push((image, image_coeffs));
            }
        }
    }

    let mut positive_roots: Vec<Vector> = all
        .into_iter()
        .filter(|(_, coeffs)| coeffs.iter().all(|&c| c >= 0))
        .map(|(v, _)| v)
        .collect();
    positive_roots.sort();
    RootSystem { factor, ambient_dim, simple_roots, positive_roots }
}

/// An element of the Weyl group: its matrix on the ambient space and a
/// reduced word in simple-reflection indices (1-based).
pub struct WeylElement {
    pub matrix: Vec<Vector>,
    pub word: Vec<usize>,
}

fn identity_matrix(dim: usize) -> Vec<Vector> {
    (0..dim)
        .map(|i| {
            let mut row = vec![ratio(0); dim];
            row[i] = ratio(1);
            row
        })
        .collect()
}

fn apply_matrix(m: &[Vector], v: &[Coord]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Reflection matrix in the hyperplane orthogonal to `alpha`.
fn reflection_matrix(dim: usize, alpha: &[Coord]) -> Vec<Vector> {
    let norm = dot(alpha, alpha);
    (0..dim)
        .map(|i| {
            let mut e = vec![ratio(0); dim];
            e[i] = ratio(1);
            let k = ratio(2) * dot(&e, alpha) / norm;
            e.iter()
                .zip(alpha)
                .map(|(x, a)| x - k * a)
                .collect()
        })
        .collect()
}

fn matrix_product(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    // rows of (a·b): (a·b) v = a (b v)
    let dim = a.len();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| (0..dim).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy)]
enum TieBreak {
    Lowest,
    Highest,
}

fn longest_element_with_policy(rs: &RootSystem, policy: TieBreak) -> WeylElement {
    let dim = rs.ambient_dim;
    let reflections: Vec<Vec<Vector>> = rs
        .simple_roots
        .iter()
        .map(|alpha| reflection_matrix(dim, alpha))
        .collect();
    let positive: HashSet<Vector> = rs.positive_roots.iter().cloned().collect();

    let mut w = identity_matrix(dim);
    let mut word = Vec::new();
    loop {
        let indices: Vec<usize> = match policy {
            TieBreak::Lowest => (0..rs.simple_roots.len()).collect(),
            TieBreak::Highest => (0..rs.simple_roots.len()).rev().collect(),
        };
        // pick a simple root still sent to a positive root; appending its
        // reflection increases the length by one
        let next = indices
            .into_iter()
            .find(|&i| positive.contains(&apply_matrix(&w, &rs.simple_roots[i])));
        match next {
            Some(i) => {
                w = matrix_product(&w, &reflections[i]);
                word.push(i + 1);
            }
            None => break,
        }
    }
    WeylElement { matrix: w, word }
}

/// The longest element `w0`, computed greedily. The result is checked to be
/// independent of the greedy tie-breaking order, and its word length equals
/// the number of positive roots.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let low = longest_element_with_policy(rs, TieBreak::Lowest);
    let high = longest_element_with_policy(rs, TieBreak::Highest);
    assert_eq!(low.matrix, high.matrix, "w0 must not depend on greedy choices");
    assert_eq!(low.word.len(), rs.positive_roots.len());
    low
}

/// Is `-1` in the Weyl group, i.e. does `w0` act as `-id` on the root span?
///
/// The test runs on the span of the simple roots (for the A-series the
/// ambient space has a fixed vector outside the span), so it checks
/// `w0(alpha_i) = -alpha_i` for every simple root.
pub fn minus_one_in_weyl(factor: Factor) -> bool {
    let rs = build_root_system(factor);
    let w0 = longest_element(&rs);
    rs.simple_roots.iter().all(|alpha| {
        let image = apply_matrix(&w0.matrix, alpha);
        image.iter().zip(alpha).all(|(x, a)| *x == -a)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRow {
    pub factor: String,
    pub minus_one: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub rows: Vec<ClassificationRow>,
    /// The `n = 1` quotient action embeds iff some factor fails `-1 ∈ W`.
    pub embedding_for_n1: bool,
    pub witnessing_factor: Option<String>,
}

/// Classify a semisimple group by its simple factors: the `n = 1` action on
/// the conjugation quotient is an embedding iff some factor has `w0 ≠ -1`.
pub fn classify_semisimple_factors(factors: &[Factor]) -> Classification {
    assert!(!factors.is_empty(), "factor list must be nonempty");
    let mut rows = Vec::new();
    let mut witness = None;
    for &factor in factors {
        let minus_one = minus_one_in_weyl(factor);
        if !minus_one && witness.is_none() {
            witness = Some(factor.to_string());
        }
        rows.push(ClassificationRow { factor: factor.to_string(), minus_one });
    }
    Classification {
        rows,
        embedding_for_n1: witness.is_some(),
        witnessing_factor: witness,
    }
}

/// All valid irreducible pairs up to a rank bound.
pub fn all_factors(max_rank: usize) -> Vec<Factor> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for t in [RootType::A, RootType::B, RootType::C, RootType::D, RootType::E, RootType::F, RootType::G] {
            if let Ok(f) = Factor::new(t, rank) {
                out.push(f);
            }
        }
    }
    out
}

/// Closed-form number of positive roots, for cross-checking enumeration.
pub fn expected_positive_count(factor: Factor) -> usize {
    let l = factor.rank;
    match factor.root_type {
        RootType::A => l * (l + 1) / 2,
        RootType::B | RootType::C => l * l,
        RootType::D => l * (l - 1),
        RootType::E => match l {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        RootType::F => 24,
        RootType::G => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Factor {
        s.parse().unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for factor in all_factors(8) {
            let rs = build_root_system(factor);
            assert_eq!(
                rs.positive_roots.len(),
                expected_positive_count(factor),
                "positive count for {factor}"
            );
            assert_eq!(rs.simple_roots.len(), factor.rank);
        }
    }

    #[test]
    fn specific_counts() {
        assert_eq!(build_root_system(f("A2")).positive_roots.len(), 3);
        assert_eq!(build_root_system(f("G2")).positive_roots.len(), 6);
        assert_eq!(build_root_system(f("E6")).positive_roots.len(), 36);
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(Factor::new(RootType::C, 2).is_err());
        assert!(Factor::new(RootType::D, 3).is_err());
        assert!(Factor::new(RootType::E, 9).is_err());
        assert!(Factor::new(RootType::F, 3).is_err());
        assert!(Factor::new(RootType::G, 3).is_err());
        assert!("H4".parse::<Factor>().is_err());
        assert!("A".parse::<Factor>().is_err());
    }

    #[test]
    fn longest_element_properties() {
        for factor in all_factors(6) {
            let rs = build_root_system(factor);
            let w0 = longest_element(&rs);
            // word length = number of positive roots (asserted internally too)
            assert_eq!(w0.word.len(), rs.positive_roots.len());
            // w0^2 = 1
            let square = matrix_product(&w0.matrix, &w0.matrix);
            assert_eq!(square, identity_matrix(rs.ambient_dim));
            // w0 sends every positive root to a negative root
            let positive: HashSet<Vector> = rs.positive_roots.iter().cloned().collect();
            for root in &rs.positive_roots {
                let image = apply_matrix(&w0.matrix, root);
                let neg: Vector = image.iter().map(|x| -x).collect();
                assert!(!positive.contains(&image));
                assert!(positive.contains(&neg));
            }
        }
    }

    #[test]
    fn rank_one_longest_is_reflection() {
        let rs = build_root_system(f("A1"));
        let w0 = longest_element(&rs);
        assert_eq!(w0.word, vec![1]);
        assert!(minus_one_in_weyl(f("A1")));
    }

    #[test]
    fn a2_longest_is_diagram_flip() {
        // w0 of A2 is not -1: it is -1 composed with the diagram automorphism,
        // so it swaps the two simple roots up to sign
        let rs = build_root_system(f("A2"));
        let w0 = longest_element(&rs);
        let alpha1 = &rs.simple_roots[0];
        let alpha2 = &rs.simple_roots[1];
        let neg = |v: &Vector| -> Vector { v.iter().map(|x| -x).collect() };
        assert_eq!(apply_matrix(&w0.matrix, alpha1), neg(alpha2));
        assert_eq!(apply_matrix(&w0.matrix, alpha2), neg(alpha1));
        assert!(!minus_one_in_weyl(f("A2")));
    }

    #[test]
    fn b2_longest_is_minus_one() {
        let rs = build_root_system(f("B2"));
        let w0 = longest_element(&rs);
        assert_eq!(w0.word.len(), 4);
        assert!(minus_one_in_weyl(f("B2")));
    }

    #[test]
    fn minus_one_spot_checks() {
        assert!(!minus_one_in_weyl(f("A2")));
        assert!(!minus_one_in_weyl(f("D5")));
        assert!(minus_one_in_weyl(f("D4")));
        assert!(!minus_one_in_weyl(f("E6")));
        assert!(minus_one_in_weyl(f("E7")));
        assert!(minus_one_in_weyl(f("E8")));
        assert!(minus_one_in_weyl(f("F4")));
        assert!(minus_one_in_weyl(f("G2")));
    }

    #[test]
    fn full_truth_table() {
        // -1 ∈ W fails exactly for A_l (l ≥ 2), D_l (odd l), E6
        for factor in all_factors(8) {
            let expected = match factor.root_type {
                RootType::A => factor.rank == 1,
                RootType::D => factor.rank % 2 == 0,
                RootType::E => factor.rank != 6,
                _ => true,
            };
            assert_eq!(minus_one_in_weyl(factor), expected, "factor {factor}");
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify_semisimple_factors(&[f("A1")]);
        assert!(!c.embedding_for_n1);

        let c = classify_semisimple_factors(&[f("A2")]);
        assert!(c.embedding_for_n1);
        assert_eq!(c.witnessing_factor.as_deref(), Some("A2"));

        let c = classify_semisimple_factors(&[f("B3"), f("E6")]);
        assert!(c.embedding_for_n1);
        assert_eq!(c.witnessing_factor.as_deref(), Some("E6"));
    }
}
