#![allow(dead_code)]

use cremona::degree2::random_cremona_degree2;
use cremona::MonomialSet;

pub const ROOTS: [usize; 4] = [1, 3, 5, 7];

/// Seeded random degree-2 Cremona sets: every feasible `(n, r)` with
/// `n <= 12` and `r` in {1, 3, 5, 7}, several seeds each.
pub fn degree2_corpus() -> Vec<(usize, usize, MonomialSet)> {
    let mut out = Vec::new();
    for n in 3..=12 {
        for r in ROOTS.into_iter().filter(|&r| r <= n) {
            for seed in 0..16u64 {
                let set = random_cremona_degree2(n, r, seed * 1009 + (n * 31 + r) as u64).unwrap();
                out.push((n, r, set));
            }
        }
    }
    out
}

pub fn parse(text: &str) -> MonomialSet {
    MonomialSet::parse(text).unwrap()
}

pub fn fixed_examples() -> Vec<MonomialSet> {
    [
        "x1*x2\nx1*x3\nx2*x3",
        "x1*x2\nx2*x3\nx3*x4\nx4*x5\nx5*x1",
        "x1^2\nx1*x2\nx2*x3",
        "x1*x2\nx1*x3\nx2*x3\nx3*x4\nx4*x5",
        "x1^2\nx1*x2\nx1*x3\nx3*x4",
        "x2\nx3\nx1",
    ]
    .into_iter()
    .map(parse)
    .collect()
}

/// Fixed examples plus the degree-2 corpus and the inverses of its first
/// hundred members (which have higher degree).
pub fn full_corpus() -> Vec<MonomialSet> {
    let degree2: Vec<MonomialSet> = degree2_corpus().into_iter().map(|(_, _, s)| s).collect();
    let inverses: Vec<MonomialSet> = degree2
        .iter()
        .take(100)
        .map(|s| cremona::invert(s).unwrap().inverse_set(s.variables()))
        .collect();
    fixed_examples().into_iter().chain(degree2).chain(inverses).collect()
}
