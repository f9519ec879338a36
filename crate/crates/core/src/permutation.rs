//! Equality of matrices up to independent row and column permutations.
//!
//! Monomial sets are compared "up to permutation of the variables and of the
//! monomials", which on log-matrices is exactly this equivalence. Sorting
//! rows and columns by a signature is only an invariant (it can separate
//! non-equivalent matrices but not prove equivalence), so the decision is
//! made by a pruned backtracking search that also returns the witness.

use num::BigInt;

use crate::linalg::IntMatrix;
use crate::monomial::{log_matrix, MonomialSet};

/// Witness of `b[(i, j)] == a[(rows[i], cols[j])]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Invariant of the permutation class: sorted row multisets plus sorted
/// column multisets. Equal classes have equal signatures.
pub fn permutation_signature(m: &IntMatrix) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Vec<BigInt>> = m.to_rows().into_iter().map(sorted).collect();
    rows.sort();
    let mut cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| sorted(m.column(j))).collect();
    cols.sort();
    (rows, cols)
}

fn sorted(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v
}

pub fn find_equivalence(a: &IntMatrix, b: &IntMatrix) -> Option<Equivalence> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    if permutation_signature(a) != permutation_signature(b) {
        return None;
    }
    let mut search = Search {
        a,
        b,
        a_row_keys: a.to_rows().into_iter().map(sorted).collect(),
        b_row_keys: b.to_rows().into_iter().map(sorted).collect(),
        used: vec![false; a.rows()],
        assignment: Vec::with_capacity(a.rows()),
        a_prefix: vec![Vec::new(); a.cols()],
        b_prefix: vec![Vec::new(); b.cols()],
    };
    if !search.extend() {
        return None;
    }
    let mut taken = vec![false; a.cols()];
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let k = (0..a.cols()).find(|&k| !taken[k] && search.a_prefix[k] == search.b_prefix[j])?;
        taken[k] = true;
        cols.push(k);
    }
    Some(Equivalence {
        rows: search.assignment,
        cols,
    })
}

/// Whether two monomial sets agree up to renaming variables and reordering monomials.
pub fn equivalent_sets(a: &MonomialSet, b: &MonomialSet) -> bool {
    find_equivalence(log_matrix(a).matrix(), log_matrix(b).matrix()).is_some()
}

struct Search<'m> {
    a: &'m IntMatrix,
    b: &'m IntMatrix,
    a_row_keys: Vec<Vec<BigInt>>,
    b_row_keys: Vec<Vec<BigInt>>,
    used: Vec<bool>,
    assignment: Vec<usize>,
    a_prefix: Vec<Vec<BigInt>>,
    b_prefix: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let i = self.assignment.len();
        if i == self.b.rows() {
            return true;
        }
        for j in 0..self.b.cols() {
            self.b_prefix[j].push(self.b[(i, j)].clone());
        }
        let mut b_cols = self.b_prefix.clone();
        b_cols.sort();
        for r in 0..self.a.rows() {
            if self.used[r] || self.a_row_keys[r] != self.b_row_keys[i] {
                continue;
            }
            for j in 0..self.a.cols() {
                self.a_prefix[j].push(self.a[(r, j)].clone());
            }
            let mut a_cols = self.a_prefix.clone();
            a_cols.sort();
            if a_cols == b_cols {
                self.used[r] = true;
                self.assignment.push(r);
                if self.extend() {
                    return true;
                }
                self.assignment.pop();
                self.used[r] = false;
            }
            for col in self.a_prefix.iter_mut() {
                col.pop();
            }
        }
        for col in self.b_prefix.iter_mut() {
            col.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn witness_is_valid() {
        let a = m(&[&[2, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let b = m(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 2]]);
        let e = find_equivalence(&a, &b).expect("equivalent");
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b[(i, j)], a[(e.rows[i], e.cols[j])]);
            }
        }
    }

    #[test]
    fn rejects_same_signature_non_equivalent() {
        // two 6-cycles vs. two triangles have the same row/column multisets
        let hexagon = {
            let mut rows = vec![vec![0i64; 6]; 6];
            for k in 0..6 {
                rows[k][k] = 1;
                rows[(k + 1) % 6][k] = 1;
            }
            IntMatrix::from_rows(&rows)
        };
        let triangles = {
            let mut rows = vec![vec![0i64; 6]; 6];
            for base in [0, 3] {
                for k in 0..3 {
                    rows[base + k][base + k] = 1;
                    rows[base + (k + 1) % 3][base + k] = 1;
                }
            }
            IntMatrix::from_rows(&rows)
        };
        assert_eq!(permutation_signature(&hexagon), permutation_signature(&triangles));
        assert!(find_equivalence(&hexagon, &triangles).is_none());
        assert!(find_equivalence(&hexagon, &hexagon).is_some());
    }

    #[test]
    fn set_level_equivalence() {
        let a = MonomialSet::parse("x*y\nx*z\ny*z").unwrap();
        let b = MonomialSet::parse("b*c\na*b\na*c").unwrap();
        assert!(equivalent_sets(&a, &b));
        let c = MonomialSet::parse("x^2\nx*y\ny*z").unwrap();
        assert!(!equivalent_sets(&a, &c));
    }
}
