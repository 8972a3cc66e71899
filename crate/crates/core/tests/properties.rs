use std::collections::BTreeSet;

use proptest::prelude::*;
use twistcube_core::polyhedra::DEFAULT_LATTICE_CAP;
use twistcube_core::rational::{point_from_ints, rat, ratio};
use twistcube_core::resolve::recursion_bound;
use twistcube_core::stringpoly::lattice_counts;
use twistcube_core::twistedcube::twisted_cube_lattice_points;
use twistcube_core::*;

const TYPES: [(Family, usize); 4] = [
    (Family::A, 2),
    (Family::A, 3),
    (Family::B, 2),
    (Family::G, 2),
];

/// Greedy reduced word: keep each proposed letter that leaves the word reduced.
fn reduced_word(d: &RootDatum, proposals: &[usize], max_len: usize) -> Word {
    let mut letters = Vec::new();
    for &p in proposals {
        if letters.len() == max_len {
            break;
        }
        letters.push(1 + p % d.rank());
        if !d.is_reduced(&Word::new(letters.clone())) {
            letters.pop();
        }
    }
    Word::new(letters)
}

fn instance(max_len: usize, max_m: i64) -> impl Strategy<Value = WordMult> {
    (
        0..TYPES.len(),
        prop::collection::vec(0usize..4, 1..16),
        prop::collection::vec(0..=max_m, max_len),
    )
        .prop_map(move |(t, proposals, mult)| {
            let (f, r) = TYPES[t];
            let d = RootDatum::new(f, r).unwrap();
            let word = reduced_word(&d, &proposals, max_len);
            let n = word.len();
            WordMult::new(d, word, mult[..n].to_vec()).unwrap()
        })
        .prop_filter("non-empty word", |wm| !wm.is_empty())
}

fn dominant_instance() -> impl Strategy<Value = (RootDatum, Word, Weight)> {
    (
        0..TYPES.len(),
        prop::collection::vec(0usize..4, 1..16),
        prop::collection::vec(0i64..=3, 3),
    )
        .prop_map(|(t, proposals, lambda)| {
            let (f, r) = TYPES[t];
            let d = RootDatum::new(f, r).unwrap();
            let word = reduced_word(&d, &proposals, 6);
            (d, word, Weight::new(lambda[..r].to_vec()))
        })
        .prop_filter("non-empty word", |(_, w, _)| !w.is_empty())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-2i64..12, 1i64..4).prop_map(|(a, b)| ratio(a, b))
}

fn cartier_set(wm: &WordMult) -> BTreeSet<Point> {
    cartier_data(wm)
        .entries()
        .iter()
        .map(|(_, r)| point_from_ints(r))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn criterion_agrees_with_grid_scan(wm in instance(6, 3)) {
        prop_assert_eq!(satisfies_p(&wm).holds, direct_p_oracle(&wm, 2).unwrap());
    }

    #[test]
    fn under_p_vertices_are_cartier_points(wm in instance(5, 3)) {
        let cert = satisfies_p(&wm);
        prop_assume!(cert.holds);
        let v = twisted_cube(&wm).vertices().unwrap();
        let got: BTreeSet<Point> = v.points().iter().cloned().collect();
        prop_assert_eq!(got, cartier_set(&wm));
        prop_assert!(v.is_lattice_polytope());
    }

    #[test]
    fn condition_p_survives_dilation(wm in instance(6, 3)) {
        prop_assume!(satisfies_p(&wm).holds);
        for k in [2, 3] {
            prop_assert!(satisfies_p(&wm.scaled(k).unwrap()).holds);
        }
    }

    #[test]
    fn m3_is_condition_p(wm in instance(6, 3)) {
        prop_assert_eq!(cartier_data(&wm).all_nonnegative(), satisfies_p(&wm).holds);
    }

    #[test]
    fn witness_is_a_negative_value(wm in instance(6, 3)) {
        if let Some(w) = satisfies_p(&wm).witness {
            let forms = a_forms(&wm);
            let mut x = vec![0i64; wm.len()];
            x[w.k..].copy_from_slice(&w.suffix);
            prop_assert_eq!(forms.get(w.k).eval_int(&x), w.value);
            prop_assert!(w.value < 0);
        }
    }

    #[test]
    fn membership_is_homogeneous(
        wm in instance(5, 3),
        x in prop::collection::vec(small_rational(), 6),
        k in 2i64..4,
    ) {
        let x = &x[..wm.len()];
        let kx: Vec<Rational> = x.iter().map(|v| v * rat(k)).collect();
        let scaled = wm.scaled(k).unwrap();
        prop_assert_eq!(
            in_delta(&wm, x).unwrap().inside,
            in_delta(&scaled, &kx).unwrap().inside
        );
        prop_assert_eq!(
            twisted_cube(&wm).contains(x).unwrap(),
            twisted_cube(&scaled).contains(&kx).unwrap()
        );
    }

    #[test]
    fn delta_lies_in_p(wm in instance(6, 3), x in prop::collection::vec(small_rational(), 6)) {
        let x = &x[..wm.len()];
        if in_delta(&wm, x).unwrap().inside {
            prop_assert!(twisted_cube(&wm).contains(x).unwrap());
        }
        if x.iter().any(|v| *v < rat(0)) {
            prop_assert!(!in_delta(&wm, x).unwrap().inside);
        }
    }

    #[test]
    fn walker_counts_match_pointwise_filter(wm in instance(5, 2), dilate in 1i64..3) {
        let scaled = wm.scaled(dilate).unwrap();
        let p = twisted_cube_lattice_points(&wm, dilate, DEFAULT_LATTICE_CAP).unwrap();
        let inside: Vec<Vec<i64>> = p
            .iter()
            .filter(|x| in_delta_int(&scaled, x).unwrap().inside)
            .cloned()
            .collect();
        let c = lattice_counts(&wm, dilate).unwrap();
        prop_assert_eq!(c.twisted_cube, p.len());
        prop_assert_eq!(c.delta, inside.len());
        prop_assert_eq!(delta_lattice_points(&wm, dilate).unwrap(), inside);
    }

    #[test]
    fn counts_grow_with_multiplicity(wm in instance(4, 2), j in 0usize..4) {
        let j = j % wm.len();
        let mut bigger = wm.mult().to_vec();
        bigger[j] += 1;
        let big = wm.with_mult(bigger).unwrap();
        for dilate in 1..=2 {
            prop_assert!(
                lattice_counts(&wm, dilate).unwrap().delta
                    <= lattice_counts(&big, dilate).unwrap().delta
            );
        }
    }

    #[test]
    fn lattice_points_agree_with_generic_scan(wm in instance(4, 2)) {
        let generic = twisted_cube(&wm).lattice_points().unwrap();
        let nested = twisted_cube_lattice_points(&wm, 1, DEFAULT_LATTICE_CAP).unwrap();
        prop_assert_eq!(generic, nested);
    }

    #[test]
    fn smooth_implies_simple(wm in instance(4, 3)) {
        let p = twisted_cube(&wm);
        if p.vertices().unwrap().is_lattice_polytope() && is_smooth(&p).unwrap() {
            prop_assert!(is_simple(&p).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn construction_is_green((d, word, lambda) in dominant_instance()) {
        let m = construct_m(&d, &word, &lambda).unwrap();
        let report = verify_resolution(&d, &word, &lambda, &m).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report.checks);
    }

    #[test]
    fn construction_takes_the_recursion_bound(
        (d, word, lambda) in dominant_instance(),
        offset in prop::collection::vec(0i64..3, 6),
    ) {
        let n = word.len();
        let offset = &offset[..n];
        let m = construct_m_with_offset(&d, &word, &lambda, offset).unwrap();
        let m_lambda = m_of_lambda(&d, &word, &lambda).unwrap();
        for k in 1..=n {
            let mut partial = vec![0; n];
            partial[k..].copy_from_slice(&m[k..]);
            let wm = WordMult::new(d.clone(), word.clone(), partial).unwrap();
            prop_assert_eq!(m[k - 1], recursion_bound(&wm, &m_lambda, k) + offset[k - 1]);
        }
        let wm = WordMult::new(d.clone(), word.clone(), m).unwrap();
        prop_assert!(satisfies_p(&wm).holds);
    }
}

mod polytopes {
    use super::*;

    fn lattice_simplex() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (2usize..4)
            .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..4, n), n + 1))
    }

    proptest! {
        #[test]
        fn from_vertices_round_trip(pts in lattice_simplex()) {
            let v = VertexSet::from_points(pts.iter().map(|p| point_from_ints(p)).collect());
            prop_assume!(v.affine_dim() == v.ambient_dim());
            let h = HPolytope::from_vertices(&v).unwrap();
            prop_assert_eq!(h.vertices().unwrap(), v);
        }

        #[test]
        fn volume_is_translation_invariant_and_scales(
            pts in lattice_simplex(),
            t in prop::collection::vec(-5i64..5, 3),
            k in 1i64..4,
        ) {
            let v = VertexSet::from_points(pts.iter().map(|p| point_from_ints(p)).collect());
            let n = v.ambient_dim();
            let shift = point_from_ints(&t[..n]);
            prop_assert_eq!(v.translate(&shift).volume(), v.volume());
            prop_assert_eq!(v.scale(&rat(k)).volume(), v.volume() * rat(k.pow(n as u32)));
        }

        #[test]
        fn box_counts(n in 1usize..4, k in 1i64..5) {
            let cube = HPolytope::unit_cube(n).dilate(&rat(k)).unwrap();
            prop_assert_eq!(
                cube.lattice_points().unwrap().len() as i64,
                (k + 1).pow(n as u32)
            );
        }
    }
}
