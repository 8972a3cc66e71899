//! Construction of multiplicity lists whose twisted cube is a smooth lattice
//! polytope containing the string polytope of `m(lambda)`, and the report
//! that certifies it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyhedra::Incidence;
use crate::polyhedra::DEFAULT_LATTICE_CAP;
use crate::rational::format_point;
use crate::rootsys::{Family, RootDatum, Weight, Word};
use crate::stringpoly::{delta_equals_p_upto, for_each_delta_point, in_delta_int, m_of_lambda};
use crate::twistedcube::{
    a_forms, cartier_vector, format_signs, satisfies_p, twisted_cube, Sign, WordMult,
};

/// Default number of dilates used by the lattice-level checks.
pub const DEFAULT_DILATES: i64 = 3;

/// `M_l = max_sigma r_{sigma,l}` for `l > k`, from sign vectors on the suffix
/// `k+1..n` only (`r_{sigma,l}` depends on `sigma_l..sigma_n` and `m_l..m_n`).
/// Returned vector is indexed by `l - 1`; entries `<= k` are zero.
fn suffix_maxima(wm: &WordMult, k: usize) -> Vec<i64> {
    let n = wm.len();
    let forms = a_forms(wm);
    let mut max = vec![0i64; n];
    let free = n - k;
    for bits in 0..1u64 << free {
        let mut sigma = vec![Sign::Plus; n];
        for t in 0..free {
            if (bits >> t) & 1 == 1 {
                sigma[k + t] = Sign::Minus;
            }
        }
        let r = cartier_vector(&forms, &sigma);
        for l in k + 1..=n {
            max[l - 1] = max[l - 1].max(r[l - 1]);
        }
    }
    max
}

/// Lower bound for `m_k` once `m_{k+1..n}` are fixed:
/// `max{ m(lambda)_k, 1, 1 - sum_{l>k, i_l = i_k} (m_l - 2 M_l) }`.
/// Only `m_{k+1..n}` of `wm` are read.
pub fn recursion_bound(wm: &WordMult, m_lambda: &[i64], k: usize) -> i64 {
    let n = wm.len();
    let letters = wm.word().letters();
    let maxima = suffix_maxima(wm, k);
    let tail: i64 = (k + 1..=n)
        .filter(|&l| letters[l - 1] == letters[k - 1])
        .map(|l| wm.mult()[l - 1] - 2 * maxima[l - 1])
        .sum();
    m_lambda[k - 1].max(1).max(1 - tail)
}

/// Minimal multiplicity list produced by the inductive construction.
pub fn construct_m(datum: &RootDatum, word: &Word, lambda: &Weight) -> Result<Vec<i64>> {
    construct_m_with_offset(datum, word, lambda, &vec![0; word.len()])
}

/// As [`construct_m`], with `offset[k]` added to each chosen `m_k` before the
/// induction moves on.
pub fn construct_m_with_offset(
    datum: &RootDatum,
    word: &Word,
    lambda: &Weight,
    offset: &[i64],
) -> Result<Vec<i64>> {
    if !datum.is_reduced(word) {
        return Err(Error::Domain(format!("word {word} is not reduced")));
    }
    if offset.len() != word.len() {
        return Err(Error::DimensionMismatch {
            expected: word.len(),
            got: offset.len(),
        });
    }
    if offset.iter().any(|&o| o < 0) {
        return Err(Error::Domain("offsets must be non-negative".into()));
    }
    let m_lambda = m_of_lambda(datum, word, lambda)?;
    let n = word.len();
    let mut wm = WordMult::new(datum.clone(), word.clone(), vec![0; n])?;
    for k in (1..=n).rev() {
        let bound = recursion_bound(&wm, &m_lambda, k);
        let mut m = wm.mult().to_vec();
        m[k - 1] = bound + offset[k - 1];
        wm = wm.with_mult(m)?;
    }
    Ok(wm.mult().to_vec())
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &'static str, pass: bool, witness: Option<String>) -> Self {
        Check {
            name,
            pass,
            witness: if pass { None } else { witness },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentRow {
    pub dilate: i64,
    /// Lattice points of `dilate * Δ_small`.
    pub small_points: usize,
    /// How many of them are not in `dilate * Δ_big`.
    pub missing: usize,
    pub first_missing: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    /// Informational: `m_small <= m_big` componentwise.
    pub componentwise_le: bool,
    /// Always "lattice-level, dilates <= K".
    pub scope: String,
    pub rows: Vec<ContainmentRow>,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.missing == 0)
    }
}

/// Counts, per dilate `k <= max_dilate`, the lattice points of `k Δ_{i,m_small}`
/// missing from `k Δ_{i,m_big}`.
pub fn containment_check(
    datum: &RootDatum,
    word: &Word,
    m_small: &[i64],
    m_big: &[i64],
    max_dilate: i64,
) -> Result<ContainmentReport> {
    let small = WordMult::new(datum.clone(), word.clone(), m_small.to_vec())?;
    let big = WordMult::new(datum.clone(), word.clone(), m_big.to_vec())?;
    let mut rows = Vec::new();
    for dilate in 1..=max_dilate {
        let big_k = big.scaled(dilate)?;
        let mut small_points = 0;
        let mut missing = 0;
        let mut first_missing: Option<Vec<i64>> = None;
        let mut failure = None;
        for_each_delta_point(&small, dilate, DEFAULT_LATTICE_CAP, |x| {
            small_points += 1;
            match in_delta_int(&big_k, x) {
                Ok(r) if !r.inside => {
                    missing += 1;
                    first_missing.get_or_insert_with(|| x.to_vec());
                }
                Ok(_) => {}
                Err(e) => failure = Some(e),
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        rows.push(ContainmentRow {
            dilate,
            small_points,
            missing,
            first_missing,
        });
    }
    Ok(ContainmentReport {
        componentwise_le: m_small.iter().zip(m_big).all(|(a, b)| a <= b),
        scope: format!("lattice-level, dilates <= {max_dilate}"),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportInput {
    pub family: Family,
    pub rank: usize,
    pub word: Vec<usize>,
    pub weight: Vec<i64>,
}

/// Shape verdicts for the twisted cube of `m(lambda)`; reported, not judged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeShape {
    pub lattice: bool,
    pub simple: bool,
    /// `None` when the polytope is not a lattice polytope.
    pub smooth: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub input: ReportInput,
    pub m_lambda: Vec<i64>,
    pub m: Vec<i64>,
    /// Fixed order: M1, M2, M3, M4, conditionP, lattice, simple, smooth,
    /// delta_equals_P, containment.
    pub checks: Vec<Check>,
    /// Vertices of `P_{i,m}`, one row of `"p/q"` strings each.
    pub vertices: Vec<Vec<String>>,
    /// Lattice points of `k Δ_{i,m}` for `k = 1..=dilates` (when (P) holds).
    pub lattice_counts: Vec<(i64, usize)>,
    pub containment: Option<ContainmentReport>,
    pub m_lambda_shape: Option<PolytopeShape>,
}

impl ResolutionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn shape_of(wm: &WordMult) -> Result<PolytopeShape> {
    let inc = Incidence::of(&twisted_cube(wm))?;
    let lattice = inc.vertices.is_lattice_polytope();
    let simple = inc.is_simple();
    let smooth = lattice.then(|| simple && inc.non_unimodular_vertex().is_none());
    Ok(PolytopeShape {
        lattice,
        simple,
        smooth,
    })
}

pub fn verify_resolution(
    datum: &RootDatum,
    word: &Word,
    lambda: &Weight,
    m: &[i64],
) -> Result<ResolutionReport> {
    verify_resolution_with(datum, word, lambda, m, DEFAULT_DILATES)
}

/// Runs every check on `(i, m)`; failures are recorded, not raised. Errors
/// only for malformed input or when an enumeration hits its resource cap.
pub fn verify_resolution_with(
    datum: &RootDatum,
    word: &Word,
    lambda: &Weight,
    m: &[i64],
    dilates: i64,
) -> Result<ResolutionReport> {
    let m_lambda = m_of_lambda(datum, word, lambda)?;
    let wm = WordMult::new(datum.clone(), word.clone(), m.to_vec())?;
    let n = word.len();
    let mut checks = Vec::new();

    let m1_fail = (0..n).find(|&i| m_lambda[i] > m[i]);
    checks.push(Check::new(
        "M1",
        m1_fail.is_none(),
        m1_fail.map(|i| {
            format!(
                "m(lambda)_{} = {} > m_{} = {}",
                i + 1,
                m_lambda[i],
                i + 1,
                m[i]
            )
        }),
    ));
    let m2_fail = (0..n).find(|&i| m[i] <= 0);
    checks.push(Check::new(
        "M2",
        m2_fail.is_none(),
        m2_fail.map(|i| format!("m_{} = {}", i + 1, m[i])),
    ));

    let cert = satisfies_p(&wm);
    let table = &cert.table;
    let m3_fail = table
        .entries()
        .iter()
        .find_map(|(s, r)| r.iter().position(|&x| x < 0).map(|i| (s, i, r[i])));
    checks.push(Check::new(
        "M3",
        m3_fail.is_none(),
        m3_fail.map(|(s, i, v)| format!("r_{{{}, {}}} = {}", format_signs(s), i + 1, v)),
    ));
    let collision = table.first_collision();
    checks.push(Check::new(
        "M4",
        collision.is_none(),
        collision.map(|(a, b)| {
            format!(
                "r_{} = r_{} = {:?}",
                format_signs(a),
                format_signs(b),
                table.get(a).unwrap()
            )
        }),
    ));
    checks.push(Check::new(
        "conditionP",
        cert.holds,
        cert.witness.as_ref().map(|w| w.to_string()),
    ));

    let inc = Incidence::of(&twisted_cube(&wm))?;
    let lattice = inc.vertices.is_lattice_polytope();
    let non_lattice = inc
        .vertices
        .points()
        .iter()
        .find(|p| p.iter().any(|x| !x.is_integer()));
    checks.push(Check::new(
        "lattice",
        lattice,
        non_lattice.map(|p| format!("vertex {}", format_point(p))),
    ));
    let simple = inc.is_simple();
    let non_simple = (0..inc.vertex_facets.len())
        .find(|&v| inc.vertex_facets[v].len() != inc.affine_dim)
        .map(|v| {
            format!(
                "vertex {} lies on {} facets, dimension {}",
                format_point(&inc.vertices.points()[v]),
                inc.vertex_facets[v].len(),
                inc.affine_dim
            )
        });
    checks.push(Check::new("simple", simple, non_simple));
    let (smooth, smooth_witness) = if !lattice {
        (false, Some("not a lattice polytope".to_string()))
    } else if !simple {
        (false, Some("not simple".to_string()))
    } else {
        match inc.non_unimodular_vertex() {
            None => (true, None),
            Some(v) => (
                false,
                Some(format!(
                    "edge directions at {} are not a lattice basis",
                    format_point(&inc.vertices.points()[v])
                )),
            ),
        }
    };
    checks.push(Check::new("smooth", smooth, smooth_witness));

    let mut lattice_counts = Vec::new();
    match delta_equals_p_upto(&wm, dilates) {
        Ok(ev) => {
            lattice_counts = ev.counts.iter().map(|c| (c.dilate, c.delta)).collect();
            let witness = if let Some(v) = &ev.offending_vertex {
                Some(format!("vertex {v} of P is outside Delta"))
            } else {
                ev.counts
                    .iter()
                    .find(|c| c.delta != c.twisted_cube)
                    .map(|c| {
                        format!(
                            "dilate {}: |Delta| = {} != |P| = {}",
                            c.dilate, c.delta, c.twisted_cube
                        )
                    })
            };
            checks.push(Check::new("delta_equals_P", ev.equal, witness));
        }
        Err(Error::Precondition(msg)) => {
            checks.push(Check::new("delta_equals_P", false, Some(msg)))
        }
        Err(e) => return Err(e),
    }

    let containment = containment_check(datum, word, &m_lambda, m, dilates)?;
    let missing_row = containment.rows.iter().find(|r| r.missing > 0);
    checks.push(Check::new(
        "containment",
        containment.holds(),
        missing_row.map(|r| {
            format!(
                "dilate {}: {} of {} points missing, e.g. {:?}",
                r.dilate,
                r.missing,
                r.small_points,
                r.first_missing.as_ref().unwrap()
            )
        }),
    ));

    let m_lambda_shape = {
        let wml = WordMult::new(datum.clone(), word.clone(), m_lambda.clone())?;
        Some(shape_of(&wml)?)
    };

    Ok(ResolutionReport {
        input: ReportInput {
            family: datum.family(),
            rank: datum.rank(),
            word: word.letters().to_vec(),
            weight: lambda.coords.clone(),
        },
        m_lambda,
        m: m.to_vec(),
        checks,
        vertices: inc.vertices.to_pq_rows(),
        lattice_counts,
        containment: Some(containment),
        m_lambda_shape,
    })
}
