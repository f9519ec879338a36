//! Birationality test and the monomial Cremona inverse.
//!
//! For a `d`-stochastic `n x n` log-matrix `A` with `|det A| = d` there is a
//! unique nonnegative integer matrix `W` satisfying the canonical
//! restrictions and a vector `gamma` with `A * W = [gamma | ... | gamma] + I`.
//! We get it from the adjugate: `M = d * A^{-1}` is integral, each column
//! `M e_j / d` solves `A x = e_j`, and shifting every row of `M / d` so its
//! minimum is zero adds the same vector to all columns, which is exactly the
//! `gamma` term.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::monomial::{check_canonical, log_matrix, ExponentVector, LogMatrix, MonomialSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalityReport {
    pub d: u64,
    pub minor_gcd: BigInt,
    pub is_birational_onto_image: bool,
    pub is_cremona: bool,
    /// `det A_F` when `q = n`.
    pub determinant: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionData {
    inverse_matrix: IntMatrix,
    gamma: ExponentVector,
    delta: u64,
}

impl InversionData {
    /// The Cremona inverse matrix `A_{F^{-1}}`; column `j` is the `j`-th
    /// inverse monomial, row `k` corresponds to the `k`-th monomial of `F`.
    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse_matrix
    }

    pub fn inverse_vectors(&self) -> Vec<ExponentVector> {
        (0..self.inverse_matrix.cols())
            .map(|j| ExponentVector::from_bigint(&self.inverse_matrix.column(j)).expect("checked nonnegative"))
            .collect()
    }

    /// The inverse monomials written in the given variable names.
    pub fn inverse_set(&self, variables: &[String]) -> MonomialSet {
        MonomialSet::new(variables.to_vec(), self.inverse_vectors()).expect("inverse satisfies the set invariants")
    }

    /// Inversion vector `gamma`.
    pub fn gamma(&self) -> &ExponentVector {
        &self.gamma
    }

    /// Degree of the inverse map.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// Exponents of the inversion factor `x^gamma` (the same vector as `gamma`).
    pub fn inversion_factor(&self) -> &ExponentVector {
        &self.gamma
    }

    /// Builds inversion data from explicit parts, e.g. a candidate to be checked
    /// with [`verify_inversion`]. No invariant is checked here.
    pub fn from_parts(inverse: &[ExponentVector], gamma: ExponentVector, delta: u64) -> Self {
        let cols: Vec<Vec<u64>> = inverse.iter().map(|v| v.as_slice().to_vec()).collect();
        InversionData {
            inverse_matrix: IntMatrix::from_columns(&cols),
            gamma,
            delta,
        }
    }
}

/// gcd of the absolute values of all `n x n` minors, `0` when they all vanish.
pub fn minor_gcd(matrix: &LogMatrix) -> Result<BigInt> {
    let (n, q) = (matrix.rows(), matrix.cols());
    if q < n {
        return Err(Error::TooFewColumns { q, n });
    }
    let d = BigInt::from(matrix.degree().ok_or(Error::NotStochastic)?);
    let m = matrix.matrix();
    let mut g = BigInt::zero();
    // every minor is a multiple of d, so reaching d is final
    for cols in (0..q).combinations(n) {
        let det = m.select_columns(&cols).determinant();
        g = g.gcd(&det);
        if g == d {
            break;
        }
    }
    Ok(g)
}

pub fn is_cremona(set: &MonomialSet) -> Result<BirationalityReport> {
    let canonical = check_canonical(set);
    if !canonical.holds() {
        return Err(Error::CanonicalViolated(canonical));
    }
    let lm = log_matrix(set);
    let d = lm.degree().ok_or(Error::NotStochastic)?;
    let (n, q) = (set.n(), set.q());
    if q < n {
        return Ok(BirationalityReport {
            d,
            minor_gcd: BigInt::zero(),
            is_birational_onto_image: false,
            is_cremona: false,
            determinant: None,
        });
    }
    let g = minor_gcd(&lm)?;
    let determinant = (q == n).then(|| lm.matrix().determinant());
    let target = BigInt::from(d);
    Ok(BirationalityReport {
        d,
        is_birational_onto_image: g == target,
        is_cremona: determinant.as_ref().is_some_and(|det| det.abs() == target),
        minor_gcd: g,
        determinant,
    })
}

pub fn invert(set: &MonomialSet) -> Result<InversionData> {
    let report = is_cremona(set)?;
    let lm = log_matrix(set);
    let n = set.n();
    if !report.is_cremona {
        return Err(Error::NotCremona {
            det: report
                .determinant
                .map_or_else(|| "n/a".to_string(), |d| d.abs().to_string()),
            degree: report.d,
            q: set.q(),
            n,
        });
    }
    let a = lm.matrix();
    let d = BigInt::from(report.d);
    let (det, adj) = a.adjugate().ok_or_else(|| Error::InversionInvariant("singular log-matrix".into()))?;
    let flip = det.is_negative();

    let mut w = IntMatrix::zeros(n, n);
    for i in 0..n {
        let row: Vec<BigInt> = adj.row(i).iter().map(|e| if flip { -e } else { e.clone() }).collect();
        let min = row.iter().min().expect("n >= 2").clone();
        for (j, e) in row.iter().enumerate() {
            let (q, r) = (e - &min).div_rem(&d);
            if !r.is_zero() {
                return Err(Error::InversionInvariant(format!(
                    "row {i} of the scaled inverse is not integral after shifting"
                )));
            }
            w[(i, j)] = q;
        }
    }

    let first = a.mul_vec(&w.column(0));
    let gamma: Vec<BigInt> = first
        .iter()
        .enumerate()
        .map(|(i, e)| if i == 0 { e - 1 } else { e.clone() })
        .collect();
    let gamma = ExponentVector::from_bigint(&gamma)
        .ok_or_else(|| Error::InversionInvariant("inversion vector has a negative entry".into()))?;

    let total = gamma.degree() + 1;
    if total % report.d != 0 {
        return Err(Error::InversionInvariant(format!(
            "|gamma| + 1 = {total} is not divisible by d = {}",
            report.d
        )));
    }
    let data = InversionData {
        inverse_matrix: w,
        gamma,
        delta: total / report.d,
    };
    check_inversion_invariants(&lm, &data)?;
    Ok(data)
}

fn check_inversion_invariants(lm: &LogMatrix, inv: &InversionData) -> Result<()> {
    let fail = |what: &str| Err(Error::InversionInvariant(what.to_string()));
    let w = &inv.inverse_matrix;
    let n = w.rows();
    if w.entries().any(Signed::is_negative) {
        return fail("negative entry in the inverse matrix");
    }
    if !matrix_identity_holds(lm.matrix(), w, &inv.gamma) {
        return fail("A_F * A_inv != Gamma + I");
    }
    let delta = BigInt::from(inv.delta);
    if w.column_sums().iter().any(|s| *s != delta) {
        return fail("inverse matrix is not delta-stochastic");
    }
    for i in 0..n {
        let row = w.row(i);
        if !row.iter().any(Zero::is_zero) || row.iter().all(Zero::is_zero) {
            return fail("inverse matrix violates the canonical restrictions");
        }
    }
    if w.determinant().abs() != delta {
        return fail("|det| of the inverse matrix differs from delta");
    }
    Ok(())
}

fn matrix_identity_holds(a: &IntMatrix, w: &IntMatrix, gamma: &ExponentVector) -> bool {
    let n = a.rows();
    if !a.is_square() || w.rows() != n || w.cols() != n || gamma.len() != n {
        return false;
    }
    let product = a * w;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = BigInt::from(gamma[i]) + if i == j { BigInt::one() } else { BigInt::zero() };
            product[(i, j)] == expected
        })
    })
}

/// Checks `A_F * A_inv = Gamma + I_n` as a matrix identity.
pub fn verify_by_matrix(set: &MonomialSet, inv: &InversionData) -> bool {
    matrix_identity_holds(log_matrix(set).matrix(), &inv.inverse_matrix, &inv.gamma)
}

/// Composes the two monomial maps by substitution: coordinate `j` of the
/// composite must be `x_j * x^gamma`.
pub fn verify_by_substitution(set: &MonomialSet, inv: &InversionData) -> bool {
    let n = set.n();
    let w = &inv.inverse_matrix;
    if set.q() != n || w.rows() != n || w.cols() != n || inv.gamma.len() != n {
        return false;
    }
    let forward: Vec<Monomial> = set.vectors().iter().map(Monomial::from_vector).collect();
    (0..n).all(|j| {
        let mut composite = Monomial::one();
        for (k, f) in forward.iter().enumerate() {
            let Ok(times) = u64::try_from(&w[(k, j)]) else {
                return false;
            };
            for _ in 0..times {
                composite = composite.times(f);
            }
        }
        let expected = Monomial::from_vector(&inv.gamma).times(&Monomial::variable(j));
        composite == expected
    })
}

/// True iff both independent checks accept.
pub fn verify_inversion(set: &MonomialSet, inv: &InversionData) -> bool {
    verify_by_matrix(set, inv) && verify_by_substitution(set, inv)
}

/// Renders the inversion factor `x^gamma`.
pub fn inversion_factor(inv: &InversionData, variables: &[String]) -> String {
    inv.gamma.render(variables)
}

/// Sparse monomial used by the substitution check.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Monomial(BTreeMap<usize, u64>);

impl Monomial {
    fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    fn variable(i: usize) -> Self {
        Monomial(BTreeMap::from([(i, 1)]))
    }

    fn from_vector(v: &ExponentVector) -> Self {
        Monomial(
            v.as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
        )
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&var, &e) in &other.0 {
            *out.entry(var).or_insert(0) += e;
        }
        Monomial(out)
    }
}
