//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every comparison is exact.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use twistcube_core::polyhedra::DEFAULT_LATTICE_CAP;
use twistcube_core::rational::{point_from_ints, rat, ratio};
use twistcube_core::twistedcube::twisted_cube_lattice_points;
use twistcube_core::*;

/// Instances drawn for criterion 8, per sub-criterion.
const CASES: usize = 200;
/// Largest multiplicity entry, and largest weight coordinate for 8(e).
const MAX_ENTRY: i64 = 3;
const MAX_WORD_LEN: usize = 6;
const SEED: [u8; 32] = *b"twisted cubes and string polytop";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a2() -> RootDatum {
    RootDatum::new(Family::A, 2).unwrap()
}

fn w121() -> Word {
    Word::new(vec![1, 2, 1])
}

fn a2_wm(m: &[i64]) -> WordMult {
    WordMult::new(a2(), w121(), m.to_vec()).unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistcube"))
        .args(args)
        .output()
        .expect("run twistcube");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

const A2_121: [&str; 6] = ["--family", "A", "--rank", "2", "--word", "1,2,1"];

fn criterion_1() -> Outcome {
    let cert = satisfies_p(&a2_wm(&[0, 1, 1]));
    ensure(!cert.holds, || "condition (P) reported true".into())?;
    let w = cert.witness.ok_or("no witness")?;
    ensure(w.k == 1 && w.suffix == [0, 1] && w.value == -1, || {
        format!("witness {w}")
    })?;
    // A_1(x_2, x_3) = m_1 + m_3 + x_2 - 2 x_3 written out by hand
    let (m1, m3, x2, x3) = (0, 1, w.suffix[0], w.suffix[1]);
    ensure(m1 + m3 + x2 - 2 * x3 == -1, || {
        "hand-evaluated A_1 differs".into()
    })?;
    let mut args = vec!["check-p"];
    args.extend(A2_121);
    args.extend(["--mult", "0,1,1"]);
    let (code, out) = cli(&args);
    ensure(code == 1, || format!("check-p exit code {code}"))?;
    ensure(out.contains("k=1 x=(0,1) A_1=-1"), || {
        format!("check-p printed {out:?}")
    })?;
    Ok("witness k=1 x=(0,1) A_1=-1, exit 1".into())
}

fn criterion_2() -> Outcome {
    let v = twisted_cube(&a2_wm(&[0, 1, 1]))
        .vertices()
        .map_err(|e| e.to_string())?;
    let fractional: Vec<String> = v
        .points()
        .iter()
        .filter(|p| p.iter().any(|x| !x.is_integer()))
        .map(|p| twistcube_core::rational::format_point(p))
        .collect();
    ensure(fractional == ["(0,0,1/2)"], || {
        format!("non-lattice vertices {fractional:?}")
    })?;
    ensure(v.contains(&[rat(0), rat(0), ratio(1, 2)]), || {
        "missing (0,0,1/2)".into()
    })?;
    ensure(!v.is_lattice_polytope(), || {
        "reported as lattice polytope".into()
    })?;
    Ok(format!(
        "{} vertices, only non-integral one (0,0,1/2)",
        v.len()
    ))
}

fn criterion_3() -> Outcome {
    let m = m_of_lambda(&a2(), &w121(), &Weight::new(vec![1, 1])).map_err(|e| e.to_string())?;
    ensure(m == [0, 1, 1], || format!("m(lambda) = {m:?}"))?;
    let mut args = vec!["m-of-lambda"];
    args.extend(A2_121);
    args.extend(["--weight", "1,1"]);
    let (code, out) = cli(&args);
    ensure(code == 0 && out.trim() == "(0,1,1)", || {
        format!("cli gave {code} {out:?}")
    })?;
    Ok("m(lambda) = (0,1,1)".into())
}

fn criterion_4() -> Outcome {
    let lambda = Weight::new(vec![1, 1]);
    let m = construct_m(&a2(), &w121(), &lambda).map_err(|e| e.to_string())?;
    ensure(m == [2, 1, 1], || format!("construct_m = {m:?}"))?;
    // with m_2 = m_3 = 1 the largest r_{sigma,3} is m_3, so the bound on m_1 is 1 - m_3 + 2 m_3
    let tail = a2_wm(&[0, 1, 1]);
    let m3_max = cartier_data(&tail).max_at(3);
    ensure(m3_max == 1, || format!("M_3 = {m3_max}"))?;
    let m3 = tail.mult()[2];
    let bound = 1 - m3 + 2 * m3_max;
    ensure(bound == 1 + m3 && bound == 2, || {
        format!("bound on m_1 is {bound}")
    })?;
    let lower =
        verify_resolution(&a2(), &w121(), &lambda, &[1, 1, 1]).map_err(|e| e.to_string())?;
    ensure(!lower.all_pass(), || {
        "m_1 = 1 also passes every check".into()
    })?;
    Ok("construct_m = (2,1,1); m_1 = 1 fails".into())
}

fn criterion_5() -> Outcome {
    let wm = a2_wm(&[1, 1, 1]);
    ensure(satisfies_p(&wm).holds, || "(P) fails".into())?;
    let p = twisted_cube(&wm);
    let v = p.vertices().map_err(|e| e.to_string())?;
    ensure(v.is_lattice_polytope(), || "not a lattice polytope".into())?;
    ensure(!is_simple(&p).map_err(|e| e.to_string())?, || {
        "reported simple".into()
    })?;
    Ok("(P) holds, lattice, not simple".into())
}

/// Independent unimodularity check for a 3-polytope given by its
/// half-spaces: edges join vertices sharing two tight inequalities.
fn unimodular_cones(p: &HPolytope, vertices: &VertexSet) -> Result<(), String> {
    let pts: Vec<Vec<i64>> = vertices
        .points()
        .iter()
        .map(|q| {
            q.iter()
                .map(|x| x.to_integer().try_into().unwrap())
                .collect()
        })
        .collect();
    let tight: Vec<BTreeSet<usize>> = vertices
        .points()
        .iter()
        .map(|q| {
            (0..p.halfspaces().len())
                .filter(|&h| p.halfspaces()[h].is_tight(q))
                .collect()
        })
        .collect();
    for (i, v) in pts.iter().enumerate() {
        let edges: Vec<Vec<i64>> = (0..pts.len())
            .filter(|&j| j != i && tight[i].intersection(&tight[j]).count() >= 2)
            .map(|j| (0..3).map(|c| pts[j][c] - v[c]).collect())
            .collect();
        if edges.len() != 3 {
            return Err(format!("vertex {v:?} has {} edges", edges.len()));
        }
        let primitive: Vec<Vec<i64>> = edges
            .iter()
            .map(|e| {
                let g = e.iter().fold(0i64, |a, &b| num_gcd(a, b.abs()));
                e.iter().map(|x| x / g).collect()
            })
            .collect();
        let [a, b, c] = [&primitive[0], &primitive[1], &primitive[2]];
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        if det.abs() != 1 {
            return Err(format!("vertex {v:?} cone determinant {det}"));
        }
    }
    Ok(())
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn criterion_6() -> Outcome {
    let wm = a2_wm(&[2, 1, 1]);
    let p = twisted_cube(&wm);
    let v = p.vertices().map_err(|e| e.to_string())?;
    ensure(v.is_lattice_polytope(), || "not a lattice polytope".into())?;
    ensure(is_smooth(&p).map_err(|e| e.to_string())?, || {
        "is_smooth false".into()
    })?;
    unimodular_cones(&p, &v)?;
    let ev = delta_equals_p(&wm).map_err(|e| e.to_string())?;
    ensure(ev.equal, || format!("delta_equals_P failed: {ev:?}"))?;
    let counts: Vec<usize> = ev.counts.iter().map(|c| c.delta).collect();
    Ok(format!(
        "smooth lattice polytope, Delta = P with counts {counts:?}"
    ))
}

/// Brute force over the integer box `[0, bound]^3`.
fn brute_counts(wm: &WordMult, dilate: i64, bound: i64) -> (usize, usize) {
    let scaled = wm.scaled(dilate).unwrap();
    let p = twisted_cube(&scaled);
    let (mut in_delta_count, mut in_p) = (0, 0);
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                let x = point_from_ints(&[a, b, c]);
                if in_delta(&scaled, &x).unwrap().inside {
                    in_delta_count += 1;
                }
                if p.contains(&x).unwrap() {
                    in_p += 1;
                }
            }
        }
    }
    (in_delta_count, in_p)
}

fn criterion_7() -> Outcome {
    let wm = a2_wm(&[0, 1, 1]);
    let d = a2();
    let dim1 = d
        .weyl_dim(&Weight::new(vec![1, 1]))
        .map_err(|e| e.to_string())?;
    let dim2 = d
        .weyl_dim(&Weight::new(vec![2, 2]))
        .map_err(|e| e.to_string())?;
    ensure(dim1 == 8 && dim2 == 27, || {
        format!("weyl_dim gave {dim1}, {dim2}")
    })?;
    let (b_delta1, b_p1) = brute_counts(&wm, 1, 4);
    let (b_delta2, b_p2) = brute_counts(&wm, 2, 8);
    ensure(b_delta1 == 8 && b_delta2 == 27, || {
        format!("brute-force Delta counts {b_delta1}, {b_delta2}")
    })?;
    ensure(b_p1 == 8 && b_p2 > 27, || {
        format!("brute-force P counts {b_p1}, {b_p2}")
    })?;
    let l1 = delta_lattice_points(&wm, 1)
        .map_err(|e| e.to_string())?
        .len();
    let l2 = delta_lattice_points(&wm, 2)
        .map_err(|e| e.to_string())?
        .len();
    ensure(l1 == 8 && l2 == 27, || {
        format!("library Delta counts {l1}, {l2}")
    })?;
    let p2 = twisted_cube_lattice_points(&wm, 2, DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())?;
    ensure(p2.len() == b_p2, || {
        format!("library P count {} vs {b_p2}", p2.len())
    })?;
    Ok(format!("|Delta| = 8, 27 = weyl_dim; |P| = 8, {b_p2}"))
}

const TYPES: [(Family, usize); 4] = [
    (Family::A, 2),
    (Family::A, 3),
    (Family::B, 2),
    (Family::G, 2),
];

/// Greedy reduced word: keep each proposed letter that leaves the word reduced.
fn reduced_word(d: &RootDatum, proposals: &[usize], len: usize) -> Word {
    let mut letters = Vec::new();
    for &p in proposals {
        if letters.len() == len {
            break;
        }
        letters.push(1 + p % d.rank());
        if !d.is_reduced(&Word::new(letters.clone())) {
            letters.pop();
        }
    }
    Word::new(letters)
}

/// `(type, proposals, target length, entries)`; the length is capped by the
/// length of the longest element.
fn raw_instance() -> impl Strategy<Value = (usize, Vec<usize>, usize, Vec<i64>)> {
    (
        0..TYPES.len(),
        prop::collection::vec(0usize..12, 24),
        1..=MAX_WORD_LEN,
        prop::collection::vec(0..=MAX_ENTRY, MAX_WORD_LEN),
    )
}

fn draw<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).expect("strategy draws").current()
}

fn word_mult_instances(runner: &mut TestRunner) -> Vec<WordMult> {
    let strategy = raw_instance();
    (0..CASES)
        .map(|_| {
            let (t, proposals, len, mult) = draw(runner, &strategy);
            let (f, r) = TYPES[t];
            let d = RootDatum::new(f, r).unwrap();
            let word = reduced_word(&d, &proposals, len);
            let n = word.len();
            WordMult::new(d, word, mult[..n].to_vec()).unwrap()
        })
        .collect()
}

fn describe(wm: &WordMult) -> String {
    format!(
        "{}{} {} m={:?}",
        wm.datum().family(),
        wm.datum().rank(),
        wm.word(),
        wm.mult()
    )
}

fn criterion_8a(cases: &[WordMult]) -> Outcome {
    let mut holds = 0;
    for wm in cases {
        let a = satisfies_p(wm).holds;
        let b = direct_p_oracle(wm, 2).map_err(|e| format!("{}: {e}", describe(wm)))?;
        ensure(a == b, || {
            format!("{}: criterion {a}, grid scan {b}", describe(wm))
        })?;
        holds += a as usize;
    }
    Ok(format!("{} instances, (P) holds in {holds}", cases.len()))
}

fn criterion_8b(cases: &[WordMult]) -> Outcome {
    let mut checked = 0;
    for wm in cases.iter().filter(|wm| satisfies_p(wm).holds) {
        let name = describe(wm);
        let v = twisted_cube(wm)
            .vertices()
            .map_err(|e| format!("{name}: {e}"))?;
        let got: BTreeSet<Point> = v.points().iter().cloned().collect();
        let cartier: BTreeSet<Point> = cartier_data(wm)
            .entries()
            .iter()
            .map(|(_, r)| point_from_ints(r))
            .collect();
        ensure(got == cartier, || {
            format!("{name}: vertices differ from Cartier points")
        })?;
        ensure(v.is_lattice_polytope(), || {
            format!("{name}: not a lattice polytope")
        })?;
        let ev = delta_equals_p(wm).map_err(|e| format!("{name}: {e}"))?;
        ensure(ev.equal, || format!("{name}: delta_equals_P failed {ev:?}"))?;
        checked += 1;
    }
    ensure(checked > 0, || "no instance satisfied (P)".into())?;
    Ok(format!("{checked} instances with (P)"))
}

fn criterion_8c(cases: &[WordMult]) -> Outcome {
    let mut checked = 0;
    for wm in cases.iter().filter(|wm| satisfies_p(wm).holds) {
        for k in [2, 3] {
            let scaled = wm.scaled(k).unwrap();
            ensure(satisfies_p(&scaled).holds, || {
                format!("{}: fails at {k}m", describe(wm))
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} instances, dilates 2 and 3"))
}

fn criterion_8d(cases: &[WordMult], runner: &mut TestRunner) -> Outcome {
    let coords = prop::collection::vec((-2i64..10, 1i64..4), MAX_WORD_LEN);
    let mut sampled = 0;
    let mut inside = 0;
    for wm in cases {
        let name = describe(wm);
        let n = wm.len();
        let p = twisted_cube(wm);
        for _ in 0..4 {
            let raw = draw(runner, &coords);
            let x: Vec<Rational> = raw[..n].iter().map(|&(a, b)| ratio(a, b)).collect();
            let member = in_delta(wm, &x).map_err(|e| e.to_string())?.inside;
            for k in [2, 3] {
                let kx: Vec<Rational> = x.iter().map(|v| v * rat(k)).collect();
                let scaled = wm.scaled(k).unwrap();
                let again = in_delta(&scaled, &kx).map_err(|e| e.to_string())?.inside;
                ensure(member == again, || {
                    format!("{name}: homogeneity fails at {x:?}, k={k}")
                })?;
            }
            if member {
                ensure(p.contains(&x).unwrap(), || {
                    format!("{name}: {x:?} in Delta but not P")
                })?;
                inside += 1;
            }
            sampled += 1;
        }
        // a grid point of P at dilate 2, when P is non-empty there
        let grid =
            twisted_cube_lattice_points(wm, 2, DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())?;
        let scaled = wm.scaled(2).unwrap();
        for y in grid.iter().step_by(grid.len().div_ceil(8).max(1)) {
            let x: Vec<Rational> = y.iter().map(|&v| ratio(v, 2)).collect();
            let member = in_delta(wm, &x).map_err(|e| e.to_string())?.inside;
            let lattice = in_delta_int(&scaled, y).map_err(|e| e.to_string())?.inside;
            ensure(member == lattice, || {
                format!("{name}: homogeneity fails at {y:?}/2")
            })?;
            if member {
                inside += 1;
            }
            sampled += 1;
        }
    }
    Ok(format!("{sampled} points, {inside} inside Delta"))
}

fn criterion_8e(runner: &mut TestRunner) -> Outcome {
    let strategy = (
        0..TYPES.len(),
        prop::collection::vec(0usize..12, 24),
        1..=MAX_WORD_LEN,
        prop::collection::vec(0..=MAX_ENTRY, 3),
    );
    for _ in 0..CASES {
        let (t, proposals, len, lambda) = draw(runner, &strategy);
        let (f, r) = TYPES[t];
        let d = RootDatum::new(f, r).unwrap();
        let word = reduced_word(&d, &proposals, len);
        let lambda = Weight::new(lambda[..r].to_vec());
        let name = format!("{f}{r} {word} lambda={:?}", lambda.coords);
        let m = construct_m(&d, &word, &lambda).map_err(|e| format!("{name}: {e}"))?;
        let report =
            verify_resolution(&d, &word, &lambda, &m).map_err(|e| format!("{name}: {e}"))?;
        if let Some(c) = report.checks.iter().find(|c| !c.pass) {
            return Err(format!(
                "{name} m={m:?}: {} failed ({:?})",
                c.name, c.witness
            ));
        }
    }
    Ok(format!("{CASES} constructions, all checks green"))
}

fn main() {
    let start = Instant::now();
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::from_seed(RngAlgorithm::ChaCha, &SEED),
    );
    let cases = word_mult_instances(&mut runner);

    let results: Vec<(&str, &str, Outcome)> = vec![
        ("1", "condition (P) fails with witness", criterion_1()),
        ("2", "non-lattice vertex (0,0,1/2)", criterion_2()),
        ("3", "m(lambda) rule", criterion_3()),
        ("4", "construct_m minimal choice", criterion_4()),
        ("5", "(P) without simplicity", criterion_5()),
        ("6", "smooth case and Delta = P", criterion_6()),
        ("7", "lattice counts vs Weyl dimension", criterion_7()),
        ("8a", "satisfies_P = direct oracle", criterion_8a(&cases)),
        (
            "8b",
            "vertices, lattice, Delta = P under (P)",
            criterion_8b(&cases),
        ),
        ("8c", "(P) stable under 2m, 3m", criterion_8c(&cases)),
        (
            "8d",
            "homogeneity and Delta in P",
            criterion_8d(&cases, &mut runner),
        ),
        (
            "8e",
            "construct_m passes verify_resolution",
            criterion_8e(&mut runner),
        ),
    ];

    let mut failed = 0;
    for (id, what, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {id:<3} {what}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:<3} {what}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        results.len() - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
