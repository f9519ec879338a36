//! Bounded Hilbert-base and normality checks on lifted monomial cones, and
//! extraction of Cremona subsets from the columns of a monomial set.
//!
//! Both checks enumerate lattice points level by level (the level being the
//! last coordinate), so a "holds" verdict is only complete up to the bound
//! and every report carries it.

use std::collections::HashSet;
use std::ops::ControlFlow;

use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::inversion::is_cremona;
use crate::linalg::IntMatrix;
use crate::lp::nonnegative_solution;
use crate::monomial::{log_matrix, MonomialSet};
use crate::permutation::find_equivalence;

pub const DEFAULT_BOUND: u64 = 3;

/// Checks give up (verdict inconclusive) rather than enumerate more box
/// points than this.
pub const MAX_POINTS: u128 = 20_000_000;

const BATCH: usize = 2048;

/// Generators `(v_j, 1)` of the cone over a stochastic monomial set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedCone {
    generators: Vec<Vec<i64>>,
    degree: u64,
}

impl LiftedCone {
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Ambient dimension `n + 1`.
    pub fn dimension(&self) -> usize {
        self.generators[0].len()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }
}

pub fn lift(set: &MonomialSet) -> Result<LiftedCone> {
    let degree = set.degree().ok_or(Error::NotStochastic)?;
    let generators: Vec<Vec<i64>> = set
        .vectors()
        .iter()
        .map(|v| v.as_slice().iter().map(|&e| e as i64).chain([1]).collect())
        .collect();
    debug_assert!(is_pointed(&generators), "lifted generators span a pointed cone");
    Ok(LiftedCone { generators, degree })
}

/// Whether the cone spanned by `generators` contains no line, i.e. no
/// nonzero nonnegative combination of the nonzero generators vanishes.
pub fn is_pointed(generators: &[Vec<i64>]) -> bool {
    let nonzero: Vec<&Vec<i64>> = generators.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    let Some(first) = nonzero.first() else {
        return true;
    };
    let mut rows: Vec<Vec<BigRational>> = (0..first.len())
        .map(|i| nonzero.iter().map(|g| rational(g[i])).collect())
        .collect();
    rows.push(vec![BigRational::one(); nonzero.len()]);
    let mut rhs = vec![BigRational::zero(); first.len()];
    rhs.push(BigRational::one());
    nonnegative_solution(&rows, &rhs).is_none()
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Nonnegative rational `λ` with `Σ λ_j g_j = z`, if `z` lies in the cone.
pub fn cone_coefficients(generators: &[Vec<i64>], z: &[i64]) -> Option<Vec<BigRational>> {
    let rows: Vec<Vec<BigRational>> = (0..z.len())
        .map(|i| generators.iter().map(|g| rational(g[i])).collect())
        .collect();
    let rhs: Vec<BigRational> = z.iter().map(|&v| rational(v)).collect();
    nonnegative_solution(&rows, &rhs)
}

fn check_dimension(cone: &LiftedCone, z: &[i64]) -> Result<()> {
    if z.len() != cone.dimension() {
        return Err(Error::DimensionMismatch {
            expected: cone.dimension(),
            found: z.len(),
        });
    }
    Ok(())
}

pub fn cone_contains(cone: &LiftedCone, z: &[i64]) -> Result<bool> {
    check_dimension(cone, z)?;
    Ok(cone_coefficients(&cone.generators, z).is_some())
}

/// Whether `z` is a sum of exactly `z_{n+1}` generators.
pub fn semigroup_contains(cone: &LiftedCone, z: &[i64]) -> Result<bool> {
    check_dimension(cone, z)?;
    let t = *z.last().expect("dimension is at least 3");
    if t < 0 {
        return Err(Error::NegativeLevel(t));
    }
    Ok(sum_of_generators(&cone.generators, z, t as usize, true))
}

/// Searches `t` generators (as a nondecreasing index multiset) whose sum
/// equals `target` (`exact`) or is componentwise at most `target`.
fn sum_of_generators(generators: &[Vec<i64>], target: &[i64], t: usize, exact: bool) -> bool {
    struct Search<'g> {
        generators: &'g [Vec<i64>],
        exact: bool,
        failed: HashSet<(usize, usize, Vec<i64>)>,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, left: usize, residual: &mut Vec<i64>) -> bool {
            if left == 0 {
                return !self.exact || residual.iter().all(|&r| r == 0);
            }
            if self.failed.contains(&(start, left, residual.clone())) {
                return false;
            }
            for j in start..self.generators.len() {
                let g = &self.generators[j];
                if residual.iter().zip(g).any(|(r, x)| r < x) {
                    continue;
                }
                for (r, x) in residual.iter_mut().zip(g) {
                    *r -= x;
                }
                let found = self.run(j, left - 1, residual);
                for (r, x) in residual.iter_mut().zip(g) {
                    *r += x;
                }
                if found {
                    return true;
                }
            }
            self.failed.insert((start, left, residual.clone()));
            false
        }
    }

    if target.iter().any(|&x| x < 0) {
        return false;
    }
    Search {
        generators,
        exact,
        failed: HashSet::new(),
    }
    .run(0, t, &mut target.to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// The enumeration box grew past [`MAX_POINTS`] before reaching the bound.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub verdict: Verdict,
    pub bound: u64,
    /// True only for "holds": every level up to the bound was enumerated.
    pub complete_up_to_bound: bool,
    pub levels_checked: u64,
    pub points_checked: u64,
    /// A lattice point of the cone outside the semigroup.
    pub counterexample: Option<Vec<i64>>,
    /// Nonnegative rational coefficients placing the counterexample in the cone.
    #[serde(serialize_with = "serialize_rationals")]
    pub cone_coefficients: Option<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    #[serde(flatten)]
    pub check: HilbertReport,
    /// First-block part `y` of the counterexample `(y, t)`: `x^y` is integral
    /// over `I^t` without lying in it.
    pub witness_exponent: Option<Vec<i64>>,
}

impl NormalityReport {
    pub fn verdict(&self) -> Verdict {
        self.check.verdict
    }
}

fn serialize_rationals<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|xs| xs.iter().map(ToString::to_string).collect::<Vec<_>>())
        .serialize(s)
}

/// One level of the enumeration: first-block box and range of its coordinate sum.
struct Level {
    lo: Vec<i64>,
    hi: Vec<i64>,
    min_sum: i64,
    max_sum: i64,
}

impl Level {
    fn box_size(&self) -> u128 {
        self.lo
            .iter()
            .zip(&self.hi)
            .fold(1u128, |acc, (l, h)| acc.saturating_mul((h - l + 1).max(0) as u128))
    }
}

/// Calls `f` on every point of the level in lexicographic order.
fn for_each_point(level: &Level, f: &mut impl FnMut(&[i64]) -> ControlFlow<()>) -> ControlFlow<()> {
    let n = level.lo.len();
    let mut lo_suffix = vec![0i64; n + 1];
    let mut hi_suffix = vec![0i64; n + 1];
    for i in (0..n).rev() {
        lo_suffix[i] = lo_suffix[i + 1] + level.lo[i];
        hi_suffix[i] = hi_suffix[i + 1] + level.hi[i];
    }

    fn go(
        i: usize,
        sum: i64,
        point: &mut Vec<i64>,
        level: &Level,
        suffix: (&[i64], &[i64]),
        f: &mut impl FnMut(&[i64]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == level.lo.len() {
            return f(point);
        }
        for v in level.lo[i]..=level.hi[i] {
            let s = sum + v;
            if s + suffix.1[i + 1] < level.min_sum {
                continue;
            }
            if s + suffix.0[i + 1] > level.max_sum {
                break;
            }
            point.push(v);
            let flow = go(i + 1, s, point, level, suffix, f);
            point.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    go(0, 0, &mut Vec::with_capacity(n), level, (&lo_suffix, &hi_suffix), f)
}

type Failure = (Vec<i64>, Vec<BigRational>);

/// Runs `test` on every point `(y, t)` for `t = 1..=bound`; the first point
/// (in enumeration order) where it returns cone coefficients is the
/// counterexample. Batches are tested in parallel with `find_map_first`, so
/// the answer does not depend on the number of workers.
fn scan<T>(bound: u64, level: impl Fn(i64) -> Level, test: T) -> HilbertReport
where
    T: Fn(&[i64]) -> Option<Vec<BigRational>> + Sync,
{
    let mut report = HilbertReport {
        verdict: Verdict::Holds,
        bound,
        complete_up_to_bound: false,
        levels_checked: 0,
        points_checked: 0,
        counterexample: None,
        cone_coefficients: None,
    };
    let mut budget: u128 = 0;
    for t in 1..=bound as i64 {
        let lvl = level(t);
        budget = budget.saturating_add(lvl.box_size());
        if budget > MAX_POINTS {
            report.verdict = Verdict::Inconclusive;
            return report;
        }

        let mut batch: Vec<Vec<i64>> = Vec::with_capacity(BATCH);
        let mut found: Option<Failure> = None;
        let flush = |batch: &mut Vec<Vec<i64>>, found: &mut Option<Failure>, checked: &mut u64| {
            *found = batch.par_iter().find_map_first(|z| test(z).map(|c| (z.clone(), c)));
            *checked += match found {
                Some((z, _)) => batch.iter().position(|p| p == z).expect("found in batch") as u64 + 1,
                None => batch.len() as u64,
            };
            batch.clear();
        };
        let flow = for_each_point(&lvl, &mut |y| {
            batch.push(y.iter().copied().chain([t]).collect());
            if batch.len() == BATCH {
                flush(&mut batch, &mut found, &mut report.points_checked);
                if found.is_some() {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if flow.is_continue() && !batch.is_empty() {
            flush(&mut batch, &mut found, &mut report.points_checked);
        }
        if let Some((z, coefficients)) = found {
            report.verdict = Verdict::Fails;
            report.counterexample = Some(z);
            report.cone_coefficients = Some(coefficients);
            return report;
        }
        report.levels_checked = t as u64;
    }
    report.complete_up_to_bound = true;
    report
}

/// Checks `Z^{n+1} ∩ R_+H = NH` for all lattice points with last coordinate
/// in `1..=bound`.
pub fn is_hilbert_base(cone: &LiftedCone, bound: u64) -> Result<HilbertReport> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let n = cone.dimension() - 1;
    let lo: Vec<i64> = (0..n).map(|i| cone.generators.iter().map(|g| g[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|i| cone.generators.iter().map(|g| g[i]).max().unwrap()).collect();
    let d = cone.degree as i64;
    let gens = &cone.generators;
    Ok(scan(
        bound,
        |t| Level {
            lo: lo.iter().map(|x| x * t).collect(),
            hi: hi.iter().map(|x| x * t).collect(),
            min_sum: t * d,
            max_sum: t * d,
        },
        |z| {
            let t = z[n] as usize;
            if sum_of_generators(gens, z, t, true) {
                None
            } else {
                cone_coefficients(gens, z)
            }
        },
    ))
}

/// Bounded normality check of the ideal generated by `set`, through the cone
/// over `{(e_i, 0)} ∪ {(v_j, 1)}`.
pub fn is_normal_ideal(set: &MonomialSet, bound: u64) -> Result<NormalityReport> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let cone = lift(set)?;
    let n = set.n();
    let d = cone.degree as i64;
    let lifted = &cone.generators;
    let extended: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            e
        })
        .chain(lifted.iter().cloned())
        .collect();
    let top = bound as i64 * d + bound as i64;
    let check = scan(
        bound,
        |t| Level {
            lo: vec![0; n],
            hi: vec![top; n],
            min_sum: t * d,
            max_sum: n as i64 * top,
        },
        |z| {
            let t = z[n] as usize;
            if sum_of_generators(lifted, z, t, false) {
                None
            } else {
                cone_coefficients(&extended, z)
            }
        },
    );
    let witness_exponent = check.counterexample.as_ref().map(|z| z[..n].to_vec());
    Ok(NormalityReport {
        check,
        witness_exponent,
    })
}

/// `|Z^n / span|` for `n` integer vectors in `Z^n`, or `0` when they are
/// linearly dependent.
pub fn smith_lattice_index(vectors: &[Vec<i64>]) -> Result<BigInt> {
    let n = vectors.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let invariants = IntMatrix::from_columns(vectors).smith_invariants();
    if invariants.len() < n {
        return Ok(BigInt::zero());
    }
    Ok(invariants.iter().product())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CremonaSubset {
    pub columns: Vec<usize>,
    pub monomials: Vec<String>,
    /// The monomials share a factor; the Cremona set is their quotient by it.
    pub has_common_factor: bool,
}

/// All `n`-subsets of columns with `|det| = d`, in lexicographic order, with
/// their classes up to permutation of variables and monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CremonaSubsets {
    pub degree: u64,
    pub subsets: Vec<CremonaSubset>,
    /// Classes of subsets without a common factor, as indices into `subsets`;
    /// the first index of each class is its representative.
    pub proper_classes: Vec<Vec<usize>>,
    pub common_factor_classes: Vec<Vec<usize>>,
}

impl CremonaSubsets {
    pub fn proper(&self) -> impl Iterator<Item = &CremonaSubset> {
        self.subsets.iter().filter(|s| !s.has_common_factor)
    }

    pub fn proper_representatives(&self) -> Vec<&CremonaSubset> {
        self.proper_classes.iter().map(|c| &self.subsets[c[0]]).collect()
    }
}

pub fn find_cremona_subsets(set: &MonomialSet) -> Result<CremonaSubsets> {
    let (n, q) = (set.n(), set.q());
    let degree = set.degree().ok_or(Error::NotStochastic)?;
    if q < n {
        return Err(Error::TooFewColumns { q, n });
    }
    let matrix = log_matrix(set).matrix().clone();
    let rank = matrix.rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, n });
    }
    let d = BigInt::from(degree);

    let candidates: Vec<Vec<usize>> = (0..q).combinations(n).collect();
    let hits: Vec<Vec<usize>> = candidates
        .into_par_iter()
        .filter(|cols| matrix.select_columns(cols).determinant().magnitude() == d.magnitude())
        .collect();

    let mut subsets = Vec::with_capacity(hits.len());
    for columns in hits {
        let sub = set.select(&columns)?;
        let vectors: Vec<Vec<i64>> = sub
            .vectors()
            .iter()
            .map(|v| v.as_slice().iter().map(|&e| e as i64).collect())
            .collect();
        let index = smith_lattice_index(&vectors)?;
        if index != d {
            return Err(Error::CrossCheck(format!(
                "columns {columns:?}: |det| = {d} but lattice index {index}"
            )));
        }
        let has_common_factor = !sub.common_factor().is_zero();
        let checked = if has_common_factor { sub.reduced()? } else { sub.clone() };
        if !is_cremona(&checked)?.is_cremona {
            return Err(Error::CrossCheck(format!(
                "columns {columns:?}: |det| = {d} but {checked} is not Cremona"
            )));
        }
        subsets.push(CremonaSubset {
            columns,
            monomials: sub.rendered(),
            has_common_factor,
        });
    }

    let matrices: Vec<IntMatrix> = subsets.iter().map(|s| matrix.select_columns(&s.columns)).collect();
    let mut proper_classes: Vec<Vec<usize>> = Vec::new();
    let mut common_factor_classes: Vec<Vec<usize>> = Vec::new();
    for (k, s) in subsets.iter().enumerate() {
        let classes = if s.has_common_factor {
            &mut common_factor_classes
        } else {
            &mut proper_classes
        };
        match classes
            .iter_mut()
            .find(|c| find_equivalence(&matrices[c[0]], &matrices[k]).is_some())
        {
            Some(class) => class.push(k),
            None => classes.push(vec![k]),
        }
    }
    Ok(CremonaSubsets {
        degree,
        subsets,
        proper_classes,
        common_factor_classes,
    })
}

/// First Cremona subset (lexicographic columns, no common factor) of a set
/// generating an ideal that is normal up to `bound`.
pub fn cremona_from_normal(set: &MonomialSet, bound: u64) -> Result<MonomialSet> {
    let normality = is_normal_ideal(set, bound)?;
    if normality.verdict() == Verdict::Fails {
        return Err(Error::NotNormal(normality.check.counterexample.unwrap_or_default()));
    }
    let found = find_cremona_subsets(set)?;
    let first = found.proper().next().ok_or(Error::NoCremonaSubset)?;
    set.select(&first.columns)
}
