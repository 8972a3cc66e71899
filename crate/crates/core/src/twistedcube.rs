//! Twisted cubes `P_{i,m}`, their Cartier data and condition (P).
//!
//! Positions in a word are 1-based in the public API (`k`, `j`, `l` below
//! refer to positions `1..=n`); vectors are stored 0-based.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyhedra::{HPolytope, Halfspace};
use crate::rational::{rat, Rational};
use crate::rootsys::{RootDatum, Word};

/// Default number of scanned grid nodes before [`direct_p_oracle`] gives up.
pub const DEFAULT_SCAN_CAP: u128 = 50_000_000;

/// A word together with a non-negative multiplicity list of the same length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMult {
    datum: RootDatum,
    word: Word,
    mult: Vec<i64>,
}

impl WordMult {
    pub fn new(datum: RootDatum, word: Word, mult: Vec<i64>) -> Result<Self> {
        datum.check_word(&word)?;
        if mult.len() != word.len() {
            return Err(Error::DimensionMismatch {
                expected: word.len(),
                got: mult.len(),
            });
        }
        if let Some(pos) = mult.iter().position(|&m| m < 0) {
            return Err(Error::Domain(format!(
                "multiplicity m_{} = {} is negative",
                pos + 1,
                mult[pos]
            )));
        }
        Ok(WordMult { datum, word, mult })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn mult(&self) -> &[i64] {
        &self.mult
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `(i, k * m)`
    pub fn scaled(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::Domain("scaling factor must be non-negative".into()));
        }
        let mult = self.mult.iter().map(|m| m * k).collect();
        Ok(WordMult {
            datum: self.datum.clone(),
            word: self.word.clone(),
            mult,
        })
    }

    pub fn with_mult(&self, mult: Vec<i64>) -> Result<Self> {
        WordMult::new(self.datum.clone(), self.word.clone(), mult)
    }

    /// `<beta_s, beta_k^vee>` for positions `s`, `k`.
    #[inline]
    pub(crate) fn pairing_at(&self, s: usize, k: usize) -> i64 {
        self.datum
            .pairing_roots(self.word.letter(k), self.word.letter(s))
    }
}

/// `A(x) = constant + sum_l coeffs[l] * x_{l+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

impl AffineForm {
    pub fn eval_int(&self, x: &[i64]) -> i64 {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant, |acc, (a, b)| acc + a * b)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(a, _)| **a != 0)
            .fold(rat(self.constant), |acc, (a, b)| acc + b * rat(*a))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (l, &a) in self.coeffs.iter().enumerate() {
            match a {
                0 => {}
                1 => write!(f, " + x{}", l + 1)?,
                -1 => write!(f, " - x{}", l + 1)?,
                a if a > 0 => write!(f, " + {}x{}", a, l + 1)?,
                a => write!(f, " - {}x{}", -a, l + 1)?,
            }
        }
        Ok(())
    }
}

/// The upper-bound functions `A_1, ..., A_n`; `A_j` only involves `x_{j+1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineFormList {
    forms: Vec<AffineForm>,
}

impl AffineFormList {
    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    /// `A_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> &AffineForm {
        &self.forms[j - 1]
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// `A_j(x) = m_j + sum_{l>j, i_l = i_j} m_l - sum_{l>j} <beta_l, beta_j^vee> x_l`.
pub fn a_forms(wm: &WordMult) -> AffineFormList {
    let n = wm.len();
    let letters = wm.word.letters();
    let forms = (1..=n)
        .map(|j| {
            let constant = wm.mult[j - 1]
                + (j + 1..=n)
                    .filter(|&l| letters[l - 1] == letters[j - 1])
                    .map(|l| wm.mult[l - 1])
                    .sum::<i64>();
            let mut coeffs = vec![0i64; n];
            for l in j + 1..=n {
                coeffs[l - 1] = -wm.pairing_at(l, j);
            }
            AffineForm { constant, coeffs }
        })
        .collect();
    AffineFormList { forms }
}

/// `P_{i,m} = { x : 0 <= x_j <= A_j(x_{j+1}, ..., x_n) }`.
pub fn twisted_cube(wm: &WordMult) -> HPolytope {
    let n = wm.len();
    let forms = a_forms(wm);
    let mut hs = Vec::with_capacity(2 * n);
    for j in 1..=n {
        let mut lower = vec![0i64; n];
        lower[j - 1] = -1;
        hs.push(Halfspace::from_i64(&lower, rat(0)).expect("unit normal"));
        // x_j - (linear part of A_j) <= constant of A_j
        let a = forms.get(j);
        let normal: Vec<BigInt> = (0..n)
            .map(|l| BigInt::from(if l == j - 1 { 1 } else { -a.coeffs[l] }))
            .collect();
        hs.push(Halfspace::new(normal, rat(a.constant)).expect("x_j has coefficient 1"));
    }
    // bounded: 0 <= x_n <= m_n, then each x_j is sandwiched by bounded forms
    HPolytope::new_bounded(n, hs).expect("consistent dimensions")
}

/// `P^op`: coordinates of `P` in reverse order.
pub fn reverse_coords(p: &HPolytope) -> HPolytope {
    p.reverse_coords()
}

/// `-P`.
pub fn negate_coords(p: &HPolytope) -> HPolytope {
    p.negate_coords()
}

/// All lattice points of `dilate * P_{i,m} = P_{i, dilate*m}`, enumerated
/// coordinate by coordinate from `x_n` down to `x_1`. Output is sorted.
pub fn twisted_cube_lattice_points(wm: &WordMult, dilate: i64, cap: u128) -> Result<Vec<Vec<i64>>> {
    let scaled = wm.scaled(dilate)?;
    let forms = a_forms(&scaled);
    let n = scaled.len();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut visited: u128 = 0;
    fill_box(&forms, n, &mut x, &mut out, &mut visited, cap)?;
    out.sort_unstable();
    Ok(out)
}

fn fill_box(
    forms: &AffineFormList,
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    visited: &mut u128,
    cap: u128,
) -> Result<()> {
    if level == 0 {
        *visited += 1;
        if *visited > cap {
            return Err(Error::Resource {
                what: "twisted-cube lattice points".into(),
                requested: *visited,
                cap,
            });
        }
        out.push(x.clone());
        return Ok(());
    }
    let upper = forms.get(level).eval_int(x);
    for v in 0..=upper {
        x[level - 1] = v;
        fill_box(forms, level - 1, x, out, visited, cap)?;
    }
    x[level - 1] = 0;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    /// Ordered first: lexicographic order on sign vectors uses `- < +`.
    Minus,
    Plus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

pub fn format_signs(sigma: &[Sign]) -> String {
    sigma.iter().map(|s| s.to_string()).collect()
}

/// Sign vector number `idx` in lexicographic order (`- < +`).
fn sign_vector(n: usize, idx: u64) -> Vec<Sign> {
    (0..n)
        .map(|i| {
            if (idx >> (n - 1 - i)) & 1 == 0 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .collect()
}

/// Cartier vector `r_sigma`, computed from the last coordinate down.
pub(crate) fn cartier_vector(forms: &AffineFormList, sigma: &[Sign]) -> Vec<i64> {
    let n = sigma.len();
    let mut r = vec![0i64; n];
    for i in (1..=n).rev() {
        if sigma[i - 1] == Sign::Minus {
            r[i - 1] = forms.get(i).eval_int(&r);
        }
    }
    r
}

/// `r_sigma` for every `sigma in {+,-}^n`, in lexicographic order of `sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartierTable {
    entries: Vec<(Vec<Sign>, Vec<i64>)>,
}

impl CartierTable {
    pub fn entries(&self) -> &[(Vec<Sign>, Vec<i64>)] {
        &self.entries
    }

    pub fn get(&self, sigma: &[Sign]) -> Option<&[i64]> {
        self.entries
            .binary_search_by(|(s, _)| s.as_slice().cmp(sigma))
            .ok()
            .map(|i| self.entries[i].1.as_slice())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.iter().all(|&x| x >= 0))
    }

    /// First pair of sign vectors with equal Cartier vectors.
    pub fn first_collision(&self) -> Option<(&[Sign], &[Sign])> {
        let mut sorted: Vec<&(Vec<Sign>, Vec<i64>)> = self.entries.iter().collect();
        sorted.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        sorted
            .windows(2)
            .find(|w| w[0].1 == w[1].1)
            .map(|w| (w[0].0.as_slice(), w[1].0.as_slice()))
    }

    /// `max_sigma r_{sigma, l}` for 1-based `l`.
    pub fn max_at(&self, l: usize) -> i64 {
        self.entries
            .iter()
            .map(|(_, r)| r[l - 1])
            .max()
            .unwrap_or(0)
    }
}

pub fn cartier_data(wm: &WordMult) -> CartierTable {
    let n = wm.len();
    let forms = a_forms(wm);
    let entries = (0..1u64 << n)
        .into_par_iter()
        .map(|idx| {
            let sigma = sign_vector(n, idx);
            let r = cartier_vector(&forms, &sigma);
            (sigma, r)
        })
        .collect();
    CartierTable { entries }
}

/// A point `(x_{k+1}, ..., x_n)` of the partially cut region where `A_k < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PWitness {
    pub k: usize,
    pub sigma: Vec<Sign>,
    pub suffix: Vec<i64>,
    pub value: i64,
}

impl fmt::Display for PWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.suffix.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "k={} x=({}) A_{}={}",
            self.k,
            xs.join(","),
            self.k,
            self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionPCertificate {
    pub holds: bool,
    pub witness: Option<PWitness>,
    /// The full Cartier table; every entry is `>= 0` when `holds`.
    pub table: CartierTable,
}

/// Decides condition (P) by the criterion `r_{sigma,i} >= 0` for all
/// `sigma`, `i`. On failure the witness is taken from the largest violating
/// position `k` and the lexicographically first `sigma` violating there.
pub fn satisfies_p(wm: &WordMult) -> ConditionPCertificate {
    let table = cartier_data(wm);
    let mut best: Option<(usize, &Vec<Sign>, &Vec<i64>)> = None;
    for (sigma, r) in table.entries() {
        if let Some(k) = (1..=r.len()).rev().find(|&i| r[i - 1] < 0) {
            // entries are in lexicographic order, so strict > keeps the first sigma
            if best.is_none_or(|(bk, _, _)| k > bk) {
                best = Some((k, sigma, r));
            }
        }
    }
    let witness = best.map(|(k, sigma, r)| PWitness {
        k,
        sigma: sigma.clone(),
        suffix: r[k..].to_vec(),
        value: r[k - 1],
    });
    ConditionPCertificate {
        holds: witness.is_none(),
        witness,
        table,
    }
}

/// Checks (P-k) for every `k` directly on the grid `(1/denominator) Z^n`:
/// walks the region `0 <= x_l <= A_l(x_{l+1..n})` from `l = n` down and
/// fails as soon as some `A_k` is negative at a reached grid point.
pub fn direct_p_oracle(wm: &WordMult, denominator: i64) -> Result<bool> {
    direct_p_oracle_capped(wm, denominator, DEFAULT_SCAN_CAP)
}

pub fn direct_p_oracle_capped(wm: &WordMult, denominator: i64, cap: u128) -> Result<bool> {
    if denominator <= 0 {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    // with y = denominator * x, every bound scales by the same factor
    let scaled = wm.scaled(denominator)?;
    let forms = a_forms(&scaled);
    let n = wm.len();
    let mut y = vec![0i64; n];
    let mut visited = 0u128;
    scan_region(&forms, n, &mut y, &mut visited, cap)
}

fn scan_region(
    forms: &AffineFormList,
    level: usize,
    y: &mut Vec<i64>,
    visited: &mut u128,
    cap: u128,
) -> Result<bool> {
    if level == 0 {
        return Ok(true);
    }
    *visited += 1;
    if *visited > cap {
        return Err(Error::Resource {
            what: "condition (P) grid scan".into(),
            requested: *visited,
            cap,
        });
    }
    let bound = forms.get(level).eval_int(y);
    if bound < 0 {
        return Ok(false);
    }
    if level == 1 {
        return Ok(true);
    }
    for v in 0..=bound {
        y[level - 1] = v;
        if !scan_region(forms, level - 1, y, visited, cap)? {
            return Ok(false);
        }
    }
    y[level - 1] = 0;
    Ok(true)
}
