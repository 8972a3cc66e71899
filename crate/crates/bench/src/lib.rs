//! Shared workloads for the criterion benches.

use twistcube_core::{construct_m, Family, RootDatum, Weight, Word, WordMult};

/// A named `(i, m)` instance.
pub struct Workload {
    pub name: &'static str,
    pub wm: WordMult,
}

fn make(family: Family, rank: usize, word: &[usize], mult: &[i64]) -> WordMult {
    let d = RootDatum::new(family, rank).expect("admissible datum");
    WordMult::new(d, Word::new(word.to_vec()), mult.to_vec()).expect("valid word")
}

/// Output of the multiplicity construction for a reduced word and weight.
fn resolved(family: Family, rank: usize, word: &[usize], weight: &[i64]) -> WordMult {
    let d = RootDatum::new(family, rank).expect("admissible datum");
    let w = Word::new(word.to_vec());
    let m = construct_m(&d, &w, &Weight::new(weight.to_vec())).expect("reduced word");
    WordMult::new(d, w, m).expect("valid word")
}

pub fn workloads() -> Vec<Workload> {
    vec![
        Workload {
            name: "A2 121 m=011",
            wm: make(Family::A, 2, &[1, 2, 1], &[0, 1, 1]),
        },
        Workload {
            name: "A2 121 m=211",
            wm: make(Family::A, 2, &[1, 2, 1], &[2, 1, 1]),
        },
        Workload {
            name: "B2 1212 resolved",
            wm: resolved(Family::B, 2, &[1, 2, 1, 2], &[1, 1]),
        },
        Workload {
            name: "A3 121321 resolved",
            wm: resolved(Family::A, 3, &[1, 2, 1, 3, 2, 1], &[1, 0, 1]),
        },
    ]
}
