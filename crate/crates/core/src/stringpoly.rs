//! Generalized string polytopes `Δ_{i,m}`.
//!
//! Membership runs the `x^(k)` / `Ψ^(k)` recursion, which is piecewise
//! linear, so it is evaluated verbatim over exact rationals (and over `i64`
//! on lattice points). No facet description of `Δ` is ever derived.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyhedra::DEFAULT_LATTICE_CAP;
use crate::rational::{format_point, rat, Rational};
use crate::rootsys::{RootDatum, Weight, Word};
use crate::twistedcube::{a_forms, satisfies_p, twisted_cube, AffineFormList, WordMult};

/// Ordered ring elements the recursion can run on.
pub trait Scalar:
    Clone + Ord + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

/// One value `s(i,j,k)` of the recursion (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SValue<T> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: T,
}

/// Full record of the recursion for one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTrace<T> {
    /// `levels[n - k]` is `x^(k)`, of length `k`.
    levels: Vec<Vec<T>>,
    /// `psi[n - k]` holds `Ψ^(k)(1..k-1)` for `k = n, ..., 2`.
    psi: Vec<Vec<T>>,
    pub s_values: Vec<SValue<T>>,
}

impl<T> PsiTrace<T> {
    pub fn n(&self) -> usize {
        self.levels.len()
    }

    /// `x^(k)` for `1 <= k <= n`.
    pub fn level(&self, k: usize) -> &[T] {
        &self.levels[self.n() - k]
    }

    /// `Ψ^(k)(i)` for `2 <= k <= n`, `1 <= i < k`.
    pub fn psi(&self, k: usize, i: usize) -> &T {
        &self.psi[self.n() - k][i - 1]
    }
}

/// `Ψ^(k)(i)` given `x^(k)`; pushes the `s(i,j,k)` values it used.
fn psi_value<T: Scalar>(
    wm: &WordMult,
    xk: &[T],
    i: usize,
    k: usize,
    mut record: Option<&mut Vec<SValue<T>>>,
) -> T {
    let letters = wm.word().letters();
    let m = wm.mult();
    let letter_k = letters[k - 1];
    if letters[i - 1] != letter_k {
        return xk[i - 1].clone();
    }
    let mut best: Option<T> = None;
    // running sums over s in (i, j] and s in [i, j)
    let mut pair_sum = T::from_i64(0);
    let mut mult_sum = T::from_i64(0);
    for j in i + 1..=k {
        pair_sum = pair_sum + T::from_i64(wm.pairing_at(j, k)) * xk[j - 1].clone();
        if letters[j - 2] == letter_k {
            mult_sum = mult_sum + T::from_i64(m[j - 2]);
        }
        if letters[j - 1] != letter_k {
            continue;
        }
        let s = xk[j - 1].clone() - pair_sum.clone() + mult_sum.clone();
        if let Some(rec) = record.as_deref_mut() {
            rec.push(SValue {
                i,
                j,
                k,
                value: s.clone(),
            });
        }
        best = Some(match best {
            Some(b) if b >= s => b,
            _ => s,
        });
    }
    best.expect("j = k is always admissible")
}

pub fn psi_trace<T: Scalar>(wm: &WordMult, x: &[T]) -> Result<PsiTrace<T>> {
    let n = wm.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let mut levels = vec![x.to_vec()];
    let mut psi = Vec::new();
    let mut s_values = Vec::new();
    for k in (2..=n).rev() {
        let xk = levels.last().unwrap().clone();
        let values: Vec<T> = (1..k)
            .map(|i| psi_value(wm, &xk, i, k, Some(&mut s_values)))
            .collect();
        let next = (0..k - 1)
            .map(|i| std::cmp::min(xk[i].clone(), values[i].clone()))
            .collect();
        psi.push(values);
        levels.push(next);
    }
    Ok(PsiTrace {
        levels,
        psi,
        s_values,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `0 <= x_j` fails (`lower`) or `x_j <= A_j` fails.
    Box { j: usize, lower: bool },
    /// `Ψ^(k)(i) < 0`.
    Psi { k: usize, i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Box { j, lower: true } => write!(f, "x_{j} < 0"),
            Violation::Box { j, lower: false } => write!(f, "x_{j} > A_{j}"),
            Violation::Psi { k, i } => write!(f, "Psi^({k})({i}) < 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringMembership {
    pub inside: bool,
    pub first_violation: Option<Violation>,
}

fn membership_generic<T: Scalar>(
    wm: &WordMult,
    x: &[T],
    eval_a: impl Fn(usize, &[T]) -> T,
) -> StringMembership {
    let zero = T::from_i64(0);
    let violation = (1..=wm.len())
        .rev()
        .find_map(|j| {
            if x[j - 1] < zero {
                Some(Violation::Box { j, lower: true })
            } else if x[j - 1] > eval_a(j, x) {
                Some(Violation::Box { j, lower: false })
            } else {
                None
            }
        })
        .or_else(|| psi_violation(wm, x));
    StringMembership {
        inside: violation.is_none(),
        first_violation: violation,
    }
}

/// First `(k, i)` with `Ψ^(k)(i) < 0`, in recursion order.
fn psi_violation<T: Scalar>(wm: &WordMult, x: &[T]) -> Option<Violation> {
    let zero = T::from_i64(0);
    let mut xk = x.to_vec();
    for k in (2..=wm.len()).rev() {
        let mut next = Vec::with_capacity(k - 1);
        for i in 1..k {
            let v = psi_value(wm, &xk, i, k, None);
            if v < zero {
                return Some(Violation::Psi { k, i });
            }
            next.push(std::cmp::min(xk[i - 1].clone(), v));
        }
        xk = next;
    }
    None
}

/// Membership in `Δ_{i,m}`: all box inequalities, then all `Ψ^(k)(i) >= 0`.
pub fn in_delta(wm: &WordMult, x: &[Rational]) -> Result<StringMembership> {
    if x.len() != wm.len() {
        return Err(Error::DimensionMismatch {
            expected: wm.len(),
            got: x.len(),
        });
    }
    let forms = a_forms(wm);
    Ok(membership_generic(wm, x, |j, p| forms.get(j).eval(p)))
}

/// [`in_delta`] on an integer point.
pub fn in_delta_int(wm: &WordMult, x: &[i64]) -> Result<StringMembership> {
    if x.len() != wm.len() {
        return Err(Error::DimensionMismatch {
            expected: wm.len(),
            got: x.len(),
        });
    }
    let forms = a_forms(wm);
    Ok(membership_generic(wm, x, |j, p| forms.get(j).eval_int(p)))
}

/// Puts `lambda_a` at the rightmost occurrence of each letter `a`, zero elsewhere.
pub fn m_of_lambda(datum: &RootDatum, word: &Word, lambda: &Weight) -> Result<Vec<i64>> {
    datum.check_word(word)?;
    if lambda.coords.len() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: lambda.coords.len(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!(
            "weight {:?} is not dominant",
            lambda.coords
        )));
    }
    let letters = word.letters();
    let mut m = vec![0i64; letters.len()];
    for a in 1..=datum.rank() {
        if let Some(pos) = letters.iter().rposition(|&l| l == a) {
            m[pos] = lambda.coords[a - 1];
        }
    }
    Ok(m)
}

/// Lattice points of `dilate * Δ_{i,m}`, sorted.
pub fn delta_lattice_points(wm: &WordMult, dilate: i64) -> Result<Vec<Vec<i64>>> {
    delta_lattice_points_capped(wm, dilate, DEFAULT_LATTICE_CAP)
}

pub fn delta_lattice_points_capped(wm: &WordMult, dilate: i64, cap: u128) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_delta_point(wm, dilate, cap, |x| out.push(x.to_vec()))?;
    out.sort_unstable();
    Ok(out)
}

/// Calls `f` on every lattice point of `dilate * Δ_{i,m}` without storing them.
pub fn for_each_delta_point(
    wm: &WordMult,
    dilate: i64,
    cap: u128,
    mut f: impl FnMut(&[i64]),
) -> Result<()> {
    let scaled = scaled_checked(wm, dilate)?;
    let mut walk = Walker::new(&scaled, cap);
    if walk.n > 0 {
        walk.visit(walk.n, &mut f)
    } else {
        f(&[]);
        Ok(())
    }
}

/// Lattice point counts of `dilate * Δ_{i,m}` and `dilate * P_{i,m}`.
pub fn lattice_counts(wm: &WordMult, dilate: i64) -> Result<DilateCount> {
    lattice_counts_capped(wm, dilate, DEFAULT_LATTICE_CAP)
}

pub fn lattice_counts_capped(wm: &WordMult, dilate: i64, cap: u128) -> Result<DilateCount> {
    let scaled = scaled_checked(wm, dilate)?;
    let mut walk = Walker::new(&scaled, cap);
    let (p, d) = if walk.n > 0 {
        walk.count(walk.n, true)?
    } else {
        (1, 1)
    };
    Ok(DilateCount {
        dilate,
        delta: d as usize,
        twisted_cube: p as usize,
    })
}

fn scaled_checked(wm: &WordMult, dilate: i64) -> Result<WordMult> {
    if dilate <= 0 {
        return Err(Error::Domain("dilate must be positive".into()));
    }
    wm.scaled(dilate)
}

/// Depth-first walk over the lattice points of `P_{i,m}`, fixing `x_n`
/// first. `x^(k)_s` only depends on `x_s, ..., x_n`, and for `i_k = i_s`
/// the value `Ψ^(k)(s)` does not involve `x_s` at all; every other
/// `Ψ^(k)(s)` is a minimum of `x_s` and such values. So whether the
/// `Ψ`-inequalities at index `s` hold is decided once `x_{s+1..n}` are fixed,
/// and the innermost coordinate `x_1` never has to be enumerated for counting.
struct Walker<'a> {
    n: usize,
    letters: &'a [usize],
    mult: &'a [i64],
    forms: AffineFormList,
    /// `pair[j - 1][k - 1] = <beta_j, beta_k^vee>`
    pair: Vec<Vec<i64>>,
    x: Vec<i64>,
    /// `lev[k - 1][s - 1] = x^(k)_s` for `s <= k`
    lev: Vec<Vec<i64>>,
    psi: Vec<Vec<i64>>,
    nodes: u128,
    cap: u128,
}

impl<'a> Walker<'a> {
    fn new(wm: &'a WordMult, cap: u128) -> Self {
        let n = wm.len();
        Walker {
            n,
            letters: wm.word().letters(),
            mult: wm.mult(),
            forms: a_forms(wm),
            pair: (1..=n)
                .map(|j| (1..=n).map(|k| wm.pairing_at(j, k)).collect())
                .collect(),
            x: vec![0; n],
            lev: vec![vec![0; n]; n],
            psi: vec![vec![i64::MAX; n]; n],
            nodes: 0,
            cap,
        }
    }

    fn tick(&mut self, by: u128) -> Result<()> {
        self.nodes += by;
        if self.nodes > self.cap {
            return Err(Error::Resource {
                what: "string-polytope lattice walk".into(),
                requested: self.nodes,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Stores `Ψ^(k)(s)` for each `k > s` with `i_k = i_s` in `psi[s - 1][k - 1]`
    /// (`i64::MAX` elsewhere) and returns whether all of them are `>= 0`.
    fn same_letter_psi(&mut self, s: usize) -> bool {
        let letter = self.letters[s - 1];
        let mut ok = true;
        for k in s + 1..=self.n {
            if self.letters[k - 1] != letter {
                self.psi[s - 1][k - 1] = i64::MAX;
                continue;
            }
            let xk = &self.lev[k - 1];
            let mut best = i64::MIN;
            let mut pair_sum = 0i64;
            let mut mult_sum = 0i64;
            for j in s + 1..=k {
                pair_sum += self.pair[j - 1][k - 1] * xk[j - 1];
                if self.letters[j - 2] == letter {
                    mult_sum += self.mult[j - 2];
                }
                if self.letters[j - 1] == letter {
                    best = best.max(xk[j - 1] - pair_sum + mult_sum);
                }
            }
            self.psi[s - 1][k - 1] = best;
            ok &= best >= 0;
        }
        ok
    }

    /// Sets `x_s = v` and fills the column `x^(k)_s`, `k = n, ..., s`.
    fn set(&mut self, s: usize, v: i64) {
        self.x[s - 1] = v;
        let mut cur = v;
        self.lev[self.n - 1][s - 1] = v;
        for k in (s + 1..=self.n).rev() {
            cur = cur.min(self.psi[s - 1][k - 1]);
            self.lev[k - 2][s - 1] = cur;
        }
    }

    /// `(|P|, |Δ|)` below the current suffix; `ok` says the suffix passed
    /// every `Ψ`-inequality at indices `> s`.
    fn count(&mut self, s: usize, ok: bool) -> Result<(u128, u128)> {
        let upper = self.forms.get(s).eval_int(&self.x);
        if upper < 0 {
            return Ok((0, 0));
        }
        let ok = ok && self.same_letter_psi(s);
        if s == 1 {
            let c = upper as u128 + 1;
            return Ok((c, if ok { c } else { 0 }));
        }
        self.tick(upper as u128 + 1)?;
        if s == 2 {
            return Ok(self.count_last_two(upper, ok));
        }
        let (mut p, mut d) = (0, 0);
        for v in 0..=upper {
            if ok {
                self.set(s, v);
            } else {
                self.x[s - 1] = v;
            }
            let (a, b) = self.count(s - 1, ok)?;
            p += a;
            d += b;
        }
        self.x[s - 1] = 0;
        Ok((p, d))
    }

    /// `count(2, ok)` without recursing: for fixed `x_3, ..., x_n`, `A_1` is
    /// affine in `x_2`, and each `Ψ^(k)(1)` with `i_k = i_1` is a maximum of
    /// affine functions of `x^(k)_2 = min(x_2, t_k)`.
    fn count_last_two(&mut self, upper: i64, ok: bool) -> (u128, u128) {
        self.x[1] = 0;
        let base = self.forms.get(1).eval_int(&self.x);
        let slope = self.forms.get(1).coeffs[1];
        // (t_k, [(alpha, beta)]) per relevant k
        let mut pieces: Vec<(i64, Vec<(i64, i64)>)> = Vec::new();
        if ok {
            let letter = self.letters[0];
            let mut clamp = i64::MAX;
            for k in (2..=self.n).rev() {
                if self.letters[k - 1] == letter {
                    let xk = &self.lev[k - 1];
                    let mut lines = Vec::new();
                    let mut fixed = 0i64;
                    let mut mult_sum = 0i64;
                    for j in 2..=k {
                        if j > 2 {
                            fixed -= self.pair[j - 1][k - 1] * xk[j - 1];
                        }
                        if self.letters[j - 2] == letter {
                            mult_sum += self.mult[j - 2];
                        }
                        if self.letters[j - 1] == letter {
                            let own = if j == 2 { 1 } else { 0 };
                            let alpha = fixed + mult_sum + if j > 2 { xk[j - 1] } else { 0 };
                            lines.push((alpha, own - self.pair[1][k - 1]));
                        }
                    }
                    pieces.push((clamp, lines));
                }
                clamp = clamp.min(self.psi[1][k - 1]);
            }
        }
        let (mut p, mut d) = (0u128, 0u128);
        for v in 0..=upper {
            let a1 = base + slope * v;
            if a1 < 0 {
                continue;
            }
            p += a1 as u128 + 1;
            if ok
                && pieces.iter().all(|(t, lines)| {
                    let y = v.min(*t);
                    lines.iter().any(|(a, b)| a + b * y >= 0)
                })
            {
                d += a1 as u128 + 1;
            }
        }
        (p, d)
    }

    fn visit(&mut self, s: usize, f: &mut impl FnMut(&[i64])) -> Result<()> {
        let upper = self.forms.get(s).eval_int(&self.x);
        if upper < 0 || !self.same_letter_psi(s) {
            return Ok(());
        }
        self.tick(upper as u128 + 1)?;
        for v in 0..=upper {
            if s == 1 {
                self.x[0] = v;
                f(&self.x);
            } else {
                self.set(s, v);
                self.visit(s - 1, f)?;
            }
        }
        self.x[s - 1] = 0;
        Ok(())
    }
}

/// Per-dilate lattice counts of `Δ` and `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilateCount {
    pub dilate: i64,
    pub delta: usize,
    pub twisted_cube: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaEqualsEvidence {
    pub equal: bool,
    pub vertices_in_delta: bool,
    /// First vertex of `P` outside `Δ`, as `(x_1,...)` text.
    pub offending_vertex: Option<String>,
    pub counts: Vec<DilateCount>,
}

/// `Δ_{i,m} = P_{i,m}` checked by vertex membership plus equal lattice
/// counts at dilates `1..=3`. Requires condition (P).
pub fn delta_equals_p(wm: &WordMult) -> Result<DeltaEqualsEvidence> {
    delta_equals_p_upto(wm, 3)
}

pub fn delta_equals_p_upto(wm: &WordMult, max_dilate: i64) -> Result<DeltaEqualsEvidence> {
    let cert = satisfies_p(wm);
    if let Some(w) = &cert.witness {
        return Err(Error::Precondition(format!("condition (P) fails: {w}")));
    }
    let vertices = twisted_cube(wm).vertices()?;
    let mut offending_vertex = None;
    for v in vertices.points() {
        if !in_delta(wm, v)?.inside {
            offending_vertex = Some(format_point(v));
            break;
        }
    }
    let counts = (1..=max_dilate)
        .map(|dilate| lattice_counts(wm, dilate))
        .collect::<Result<Vec<_>>>()?;
    let vertices_in_delta = offending_vertex.is_none();
    let equal = vertices_in_delta && counts.iter().all(|c| c.delta == c.twisted_cube);
    Ok(DeltaEqualsEvidence {
        equal,
        vertices_in_delta,
        offending_vertex,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::rootsys::Family;

    fn a2() -> RootDatum {
        RootDatum::new(Family::A, 2).unwrap()
    }

    fn wm(word: &[usize], mult: &[i64]) -> WordMult {
        WordMult::new(a2(), Word::new(word.to_vec()), mult.to_vec()).unwrap()
    }

    fn q(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(a, b)| ratio(a, b)).collect()
    }

    #[test]
    fn trace_examples() {
        let w = wm(&[1, 2, 1], &[0, 1, 1]);
        let t = psi_trace(&w, &q(&[(0, 1), (1, 1), (1, 1)])).unwrap();
        assert_eq!(t.psi(3, 1), &rat(0));
        assert_eq!(t.psi(3, 2), &rat(1));
        assert_eq!(t.psi(2, 1), &rat(0));
        assert_eq!(t.level(3), q(&[(0, 1), (1, 1), (1, 1)]).as_slice());
        assert_eq!(t.level(2), q(&[(0, 1), (1, 1)]).as_slice());
        assert_eq!(
            t.s_values,
            vec![SValue {
                i: 1,
                j: 3,
                k: 3,
                value: rat(0)
            }]
        );

        let half = psi_trace(&w, &q(&[(0, 1), (0, 1), (1, 2)])).unwrap();
        assert_eq!(half.psi(3, 1), &ratio(-1, 2));
    }

    #[test]
    fn trace_levels_follow_min_rule() {
        let d = RootDatum::new(Family::A, 3).unwrap();
        let w =
            WordMult::new(d, Word::new(vec![1, 2, 1, 3, 2, 1]), vec![1, 2, 0, 1, 1, 2]).unwrap();
        let x = q(&[(1, 1), (3, 2), (2, 1), (0, 1), (1, 3), (1, 1)]);
        let t = psi_trace(&w, &x).unwrap();
        assert_eq!(t.level(6), x.as_slice());
        for k in (2..=6).rev() {
            for i in 1..k {
                let expect = std::cmp::min(t.level(k)[i - 1].clone(), t.psi(k, i).clone());
                assert_eq!(t.level(k - 1)[i - 1], expect);
            }
        }
    }

    #[test]
    fn zero_is_inside() {
        let w = wm(&[1, 2, 1], &[0, 1, 1]);
        let t = psi_trace(&w, &[rat(0), rat(0), rat(0)]).unwrap();
        assert!(t.s_values.iter().all(|s| s.value >= rat(0)));
        assert!(in_delta(&w, &[rat(0), rat(0), rat(0)]).unwrap().inside);
    }

    #[test]
    fn membership_examples() {
        let w = wm(&[1, 2, 1], &[0, 1, 1]);
        assert!(in_delta(&w, &q(&[(0, 1), (1, 1), (1, 1)])).unwrap().inside);
        let m = in_delta(&w, &q(&[(0, 1), (0, 1), (1, 2)])).unwrap();
        assert!(!m.inside);
        assert_eq!(m.first_violation, Some(Violation::Psi { k: 3, i: 1 }));
        let neg = in_delta(&w, &q(&[(-1, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(
            neg.first_violation,
            Some(Violation::Box { j: 1, lower: true })
        );
        assert!(in_delta(&w, &[rat(0)]).is_err());
    }

    #[test]
    fn m_of_lambda_examples() {
        let d = a2();
        let l = Weight::new(vec![1, 1]);
        assert_eq!(
            m_of_lambda(&d, &Word::new(vec![1, 2, 1]), &l).unwrap(),
            vec![0, 1, 1]
        );
        assert_eq!(
            m_of_lambda(&d, &Word::new(vec![2, 1, 2]), &l).unwrap(),
            vec![0, 1, 1]
        );
        assert_eq!(
            m_of_lambda(&d, &Word::new(vec![2, 2]), &Weight::new(vec![4, 0])).unwrap(),
            vec![0, 0]
        );
        assert!(matches!(
            m_of_lambda(&d, &Word::new(vec![1]), &Weight::new(vec![-1, 0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn delta_counts() {
        let w = wm(&[1, 2, 1], &[0, 1, 1]);
        assert_eq!(delta_lattice_points(&w, 1).unwrap().len(), 8);
        assert_eq!(delta_lattice_points(&w, 2).unwrap().len(), 27);
        let z = wm(&[1, 2, 1], &[0, 0, 0]);
        assert_eq!(delta_lattice_points(&z, 1).unwrap(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn walker_matches_pointwise_filter() {
        use crate::twistedcube::twisted_cube_lattice_points;
        let d = RootDatum::new(Family::A, 3).unwrap();
        let word = Word::new(vec![1, 2, 1, 3, 2, 1]);
        for m in [[0, 0, 1, 0, 1, 1], [1, 2, 0, 1, 1, 2], [2, 0, 1, 1, 0, 1]] {
            let w = WordMult::new(d.clone(), word.clone(), m.to_vec()).unwrap();
            for dilate in 1..=2 {
                let scaled = w.scaled(dilate).unwrap();
                let p = twisted_cube_lattice_points(&w, dilate, DEFAULT_LATTICE_CAP).unwrap();
                let inside: Vec<Vec<i64>> = p
                    .iter()
                    .filter(|x| in_delta_int(&scaled, x).unwrap().inside)
                    .cloned()
                    .collect();
                assert_eq!(delta_lattice_points(&w, dilate).unwrap(), inside);
                let c = lattice_counts(&w, dilate).unwrap();
                assert_eq!((c.twisted_cube, c.delta), (p.len(), inside.len()));
            }
        }
    }

    #[test]
    fn walker_cap() {
        let w = wm(&[1, 2, 1], &[5, 5, 5]);
        assert!(matches!(
            lattice_counts_capped(&w, 3, 10),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn delta_equals_p_examples() {
        for m in [[1, 1, 1], [2, 1, 1]] {
            let ev = delta_equals_p(&wm(&[1, 2, 1], &m)).unwrap();
            assert!(ev.equal, "{m:?}: {ev:?}");
            assert_eq!(ev.counts.len(), 3);
        }
        assert!(matches!(
            delta_equals_p(&wm(&[1, 2, 1], &[0, 1, 1])),
            Err(Error::Precondition(_))
        ));
    }
}
