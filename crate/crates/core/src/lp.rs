//! Exact linear feasibility over the rationals.

use num::{BigRational, Signed, Zero};

/// A nonnegative solution of `a x = b`, if any, found by phase one of the
/// simplex method with Bland's rule. `a` is given by rows.
pub fn nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "one right-hand side per row");
    let k = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![BigRational::zero(); k]);
    }
    let width = k + m + 1;
    let rhs = k + m;

    let mut tab: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = vec![BigRational::zero(); width];
            for j in 0..k {
                row[j] = if flip { -&a[i][j] } else { a[i][j].clone() };
            }
            row[k + i] = BigRational::from_integer(1.into());
            row[rhs] = b[i].abs();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // reduced costs of the phase-one objective (sum of artificials), negated
    let mut obj: Vec<BigRational> = (0..width)
        .map(|j| {
            if j < k || j == rhs {
                tab.iter().map(|row| &row[j]).sum()
            } else {
                BigRational::zero()
            }
        })
        .collect();

    while let Some(enter) = (0..k).find(|&j| obj[j].is_positive()) {
        let leave = (0..m)
            .filter(|&i| tab[i][enter].is_positive())
            .min_by(|&i, &l| {
                let ri = &tab[i][rhs] / &tab[i][enter];
                let rl = &tab[l][rhs] / &tab[l][enter];
                ri.cmp(&rl).then(basis[i].cmp(&basis[l]))
            })
            .expect("phase-one objective is bounded below");
        pivot(&mut tab, &mut obj, leave, enter);
        basis[leave] = enter;
    }
    if !obj[rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &j) in basis.iter().enumerate() {
        if j < k {
            x[j] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<BigRational>], obj: &mut [BigRational], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for v in tab[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[r].clone();
    let eliminate = |row: &mut [BigRational]| {
        let f = row[c].clone();
        if !f.is_zero() {
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(obj);
}
