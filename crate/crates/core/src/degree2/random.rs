use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monomial::{default_variables, ExponentVector, MonomialSet};

/// Random degree-2 Cremona set on `n` variables whose root is an odd circuit
/// of length `r`, or a loop when `r == 1`. The same `(n, r, seed)` always
/// gives the same set.
pub fn random_cremona_degree2(n: usize, r: usize, seed: u64) -> Result<MonomialSet> {
    let infeasible = |reason| Err(Error::InfeasibleShape { n, r, reason });
    if r.is_multiple_of(2) {
        return infeasible("the root circuit must have odd length");
    }
    if r > n {
        return infeasible("the root circuit is longer than the number of variables");
    }
    if r == 1 && n < 3 {
        // with two variables the only loop graph is {x^2, xy}, which is not canonical
        return infeasible("a loop needs at least three variables");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = if r == 1 {
        vec![(0, 0)]
    } else {
        (0..r).map(|k| (k, (k + 1) % r)).collect()
    };
    let mut away_from_loop = false;
    for v in r..n {
        let parent = if r == 1 && v == n - 1 && !away_from_loop {
            rng.gen_range(1..v)
        } else if rng.gen_bool(0.5) {
            v - 1
        } else {
            rng.gen_range(0..v)
        };
        away_from_loop |= parent != 0;
        edges.push((parent, v));
    }

    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    edges.shuffle(&mut rng);
    let vectors = edges
        .into_iter()
        .map(|(a, b)| {
            let mut e = vec![0u64; n];
            e[labels[a]] += 1;
            e[labels[b]] += 1;
            ExponentVector::new(e)
        })
        .collect();
    MonomialSet::new(default_variables(n), vectors)
}
