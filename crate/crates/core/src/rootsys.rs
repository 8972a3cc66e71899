//! Finite root systems: Cartan integers, weights in fundamental coordinates,
//! simple reflections and reduced-word tests.
//!
//! Convention used throughout the crate: `cartan[i][j] = <alpha_j, alpha_i^vee>`
//! (0-based storage, 1-based letters in the public API). Node labels follow
//! Bourbaki.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Domain(format!(
                "unknown root-system family {other:?}"
            ))),
        }
    }
}

/// Cartan matrix of a finite root system, `c[i][j] = <alpha_j, alpha_i^vee>`.
pub fn cartan_matrix(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let admissible = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !admissible {
        return Err(Error::Domain(format!(
            "rank {rank} is not admissible for type {family}"
        )));
    }

    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    // (a, b, c[a][b], c[b][a]) with 1-based nodes
    let mut bond = |a: usize, b: usize, ab: i64, ba: i64| {
        c[a - 1][b - 1] = ab;
        c[b - 1][a - 1] = ba;
    };
    match family {
        Family::A => {
            for i in 1..rank {
                bond(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 1..rank - 1 {
                bond(i, i + 1, -1, -1);
            }
            // alpha_n short
            bond(rank - 1, rank, -1, -2);
        }
        Family::C => {
            for i in 1..rank - 1 {
                bond(i, i + 1, -1, -1);
            }
            // alpha_n long
            bond(rank - 1, rank, -2, -1);
        }
        Family::D => {
            for i in 1..rank - 1 {
                bond(i, i + 1, -1, -1);
            }
            bond(rank - 2, rank, -1, -1);
        }
        Family::E => {
            bond(1, 3, -1, -1);
            bond(2, 4, -1, -1);
            for i in 3..rank {
                bond(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            bond(1, 2, -1, -1);
            bond(2, 3, -1, -2);
            bond(3, 4, -1, -1);
        }
        Family::G => {
            // alpha_2 long
            bond(1, 2, -3, -1);
        }
    }
    Ok(c)
}

/// A weight in fundamental-weight coordinates: `lambda = sum coords[i] * varpi_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![0; rank],
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&l| l >= 0)
    }
}

/// A word in the simple reflections; letters are 1-based node labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `pos`.
    pub fn letter(&self, pos: usize) -> usize {
        self.letters[pos - 1]
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Positive roots in the simple-root basis.
    positive_roots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(family, rank)?;
        let positive_roots = positive_roots_of(&cartan);
        Ok(RootDatum {
            family,
            rank,
            cartan,
            positive_roots,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `<alpha_b, alpha_a^vee>` for 1-based letters `a`, `b`.
    #[inline]
    pub fn pairing_roots(&self, a: usize, b: usize) -> i64 {
        self.cartan[a - 1][b - 1]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            });
        }
        Ok(())
    }

    fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.coords.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: lambda.coords.len(),
            });
        }
        Ok(())
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        for &l in word.letters() {
            self.check_index(l)?;
        }
        Ok(())
    }

    /// `<lambda, alpha_i^vee>`, which is the i-th fundamental coordinate.
    pub fn pairing(&self, lambda: &Weight, i: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_weight(lambda)?;
        Ok(lambda.coords[i - 1])
    }

    /// Converts a vector in the simple-root basis to fundamental-weight coordinates.
    pub fn root_to_weight_coords(&self, a: &[i64]) -> Result<Weight> {
        if a.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: a.len(),
            });
        }
        let coords = self
            .cartan
            .iter()
            .map(|row| row.iter().zip(a).map(|(c, x)| c * x).sum())
            .collect();
        Ok(Weight { coords })
    }

    /// `s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i`.
    pub fn apply_simple_reflection(&self, i: usize, lambda: &Weight) -> Result<Weight> {
        let p = self.pairing(lambda, i)?;
        let coords = lambda
            .coords
            .iter()
            .enumerate()
            .map(|(j, l)| l - p * self.cartan[j][i - 1])
            .collect();
        Ok(Weight { coords })
    }

    /// Reflects a root-basis vector in place by `s_i`.
    fn reflect_root(&self, i: usize, beta: &mut [i64]) {
        let p: i64 = self.cartan[i - 1]
            .iter()
            .zip(beta.iter())
            .map(|(c, b)| c * b)
            .sum();
        beta[i - 1] -= p;
    }

    /// True iff `s_{i_1} ... s_{i_n}` is a reduced expression: every prefix
    /// product sends the next simple root to a positive root.
    pub fn is_reduced(&self, word: &Word) -> bool {
        if self.check_word(word).is_err() {
            return false;
        }
        let letters = word.letters();
        for j in 0..letters.len() {
            let mut beta = vec![0i64; self.rank];
            beta[letters[j] - 1] = 1;
            for &l in letters[..j].iter().rev() {
                self.reflect_root(l, &mut beta);
            }
            if beta.iter().any(|&b| b < 0) {
                return false;
            }
        }
        true
    }

    pub fn is_reduced_for_longest(&self, word: &Word) -> bool {
        word.len() == self.num_positive_roots() && self.is_reduced(word)
    }

    /// Dimension of the irreducible representation of highest weight `lambda`
    /// (Weyl dimension formula over the positive coroots).
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u128> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::Domain(format!(
                "weight {:?} is not dominant",
                lambda.coords
            )));
        }
        let transposed: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[j][i]).collect())
            .collect();
        let mut dim = BigRational::one();
        for coroot in positive_roots_of(&transposed) {
            let num: i64 = coroot
                .iter()
                .zip(&lambda.coords)
                .map(|(b, l)| b * (l + 1))
                .sum();
            let den: i64 = coroot.iter().sum();
            dim *= BigRational::new(num.into(), den.into());
        }
        debug_assert!(dim.is_integer());
        dim.to_integer()
            .to_u128()
            .ok_or_else(|| Error::Domain("representation dimension overflows u128".into()))
    }
}

/// Positive roots (simple-root coordinates) of the finite root system with
/// Cartan matrix `c`, generated from the simple roots by simple reflections.
fn positive_roots_of(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = c.len();
    let mut roots: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut e = vec![0; rank];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let beta = roots[cursor].clone();
        cursor += 1;
        for i in 0..rank {
            let p: i64 = c[i].iter().zip(&beta).map(|(x, b)| x * b).sum();
            if p >= 0 {
                continue;
            }
            let mut next = beta.clone();
            next[i] -= p;
            if seen.insert(next.clone()) {
                roots.push(next);
            }
        }
    }
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}
