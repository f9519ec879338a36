//! Exponent vectors, monomial sets and their log-matrices.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Exponents of a monomial `x^a = x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    /// Total degree `|a|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&a| a <= 1)
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&a| BigInt::from(a)).collect()
    }

    /// Converts exact integers back to exponents; `None` if any is negative or too large.
    pub fn from_bigint(entries: &[BigInt]) -> Option<Self> {
        entries
            .iter()
            .map(|e| u64::try_from(e).ok())
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Renders `x^a` over the given variable names, `"1"` for the zero vector.
    pub fn render(&self, variables: &[String]) -> String {
        let factors: Vec<String> = self
            .0
            .iter()
            .zip(variables)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, name)| if a == 1 { name.clone() } else { format!("{name}^{a}") })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        ExponentVector(v)
    }
}

/// An ordered set `F = {x^{v_1}, ..., x^{v_q}}` over named variables.
///
/// Both the variable order and the monomial order are significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    variables: Vec<String>,
    vectors: Vec<ExponentVector>,
}

/// JSON exchange format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialSetJson {
    #[serde(default)]
    pub variables: Vec<String>,
    pub monomials: Vec<Vec<u64>>,
}

impl MonomialSet {
    pub fn new(variables: Vec<String>, vectors: Vec<ExponentVector>) -> Result<Self> {
        if variables.len() < 2 {
            return Err(Error::TooFewVariables(variables.len()));
        }
        if vectors.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut names = HashSet::new();
        for v in &variables {
            if !names.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != variables.len() {
                return Err(Error::DimensionMismatch {
                    expected: variables.len(),
                    found: v.len(),
                });
            }
            if !seen.insert(v) {
                return Err(Error::DuplicateMonomial {
                    line: j + 1,
                    text: v.render(&variables),
                });
            }
        }
        Ok(MonomialSet { variables, vectors })
    }

    /// Uses the variable names `x1, ..., xn`.
    pub fn from_vectors(vectors: Vec<Vec<u64>>) -> Result<Self> {
        let n = vectors.first().map_or(0, Vec::len);
        Self::new(
            default_variables(n),
            vectors.into_iter().map(ExponentVector).collect(),
        )
    }

    /// Parses the text format: one monomial per line (`,`, `;` and `/` also
    /// separate monomials), factors `name` or `name^k` joined by `*`, `#`
    /// starts a comment, and an optional `vars: a, b, c` line fixes the
    /// variable order. Without it variables are ordered by first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<Vec<String>> = None;
        let mut order: Vec<String> = Vec::new();
        let mut parsed: Vec<(usize, String, BTreeMap<String, u64>)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = strip_declaration(line) {
                let names: Vec<String> = rest
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                for name in &names {
                    if !is_identifier(name) {
                        return Err(Error::MalformedToken {
                            line: line_no,
                            token: name.clone(),
                        });
                    }
                }
                declared = Some(names);
                continue;
            }
            for expr in line.split([',', ';', '/']) {
                let expr = expr.trim();
                if expr.is_empty() {
                    continue;
                }
                let factors = parse_monomial(expr, line_no)?;
                for name in factors.keys() {
                    if let Some(vars) = &declared {
                        if !vars.contains(name) {
                            return Err(Error::UnknownVariable(name.clone()));
                        }
                    } else if !order.contains(name) {
                        order.push(name.clone());
                    }
                }
                parsed.push((line_no, expr.to_string(), factors));
            }
        }

        let variables = declared.unwrap_or(order);
        if variables.len() < 2 {
            return Err(Error::TooFewVariables(variables.len()));
        }
        let mut seen = HashSet::new();
        let mut vectors = Vec::with_capacity(parsed.len());
        for (line, text, factors) in parsed {
            let v = ExponentVector(
                variables
                    .iter()
                    .map(|name| factors.get(name).copied().unwrap_or(0))
                    .collect(),
            );
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateMonomial { line, text });
            }
            vectors.push(v);
        }
        Self::new(variables, vectors)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MonomialSetJson = serde_json::from_str(text)?;
        Self::from_json_value(raw)
    }

    pub fn from_json_value(raw: MonomialSetJson) -> Result<Self> {
        let n = raw.monomials.first().map_or(raw.variables.len(), Vec::len);
        let variables = if raw.variables.is_empty() {
            default_variables(n)
        } else {
            raw.variables
        };
        Self::new(variables, raw.monomials.into_iter().map(ExponentVector).collect())
    }

    pub fn to_json_value(&self) -> MonomialSetJson {
        MonomialSetJson {
            variables: self.variables.clone(),
            monomials: self.vectors.iter().map(|v| v.0.clone()).collect(),
        }
    }

    /// Text format with a `vars:` header, so that it parses back to `self`.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(", "));
        for v in &self.vectors {
            out.push_str(&v.render(&self.variables));
            out.push('\n');
        }
        out
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn vectors(&self) -> &[ExponentVector] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &ExponentVector {
        &self.vectors[j]
    }

    /// Number of variables `n`.
    pub fn n(&self) -> usize {
        self.variables.len()
    }

    /// Number of monomials `q`.
    pub fn q(&self) -> usize {
        self.vectors.len()
    }

    pub fn render(&self, j: usize) -> String {
        self.vectors[j].render(&self.variables)
    }

    pub fn rendered(&self) -> Vec<String> {
        (0..self.q()).map(|j| self.render(j)).collect()
    }

    /// Common degree `d` if every monomial has the same degree.
    pub fn degree(&self) -> Option<u64> {
        let d = self.vectors[0].degree();
        self.vectors.iter().all(|v| v.degree() == d).then_some(d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.vectors.iter().all(ExponentVector::is_squarefree)
    }

    /// The sub-set made of the given columns, in the given order.
    pub fn select(&self, columns: &[usize]) -> Result<Self> {
        Self::new(
            self.variables.clone(),
            columns.iter().map(|&j| self.vectors[j].clone()).collect(),
        )
    }

    /// Exponents of the greatest common divisor of all monomials.
    pub fn common_factor(&self) -> ExponentVector {
        ExponentVector(
            (0..self.n())
                .map(|i| self.vectors.iter().map(|v| v[i]).min().unwrap_or(0))
                .collect(),
        )
    }

    /// Divides every monomial by the common factor.
    pub fn reduced(&self) -> Result<Self> {
        let g = self.common_factor();
        Self::new(
            self.variables.clone(),
            self.vectors
                .iter()
                .map(|v| ExponentVector(v.0.iter().zip(&g.0).map(|(a, b)| a - b).collect()))
                .collect(),
        )
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.rendered().join(", "))
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.rendered().join(", "))
    }
}

pub fn default_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn strip_declaration(line: &str) -> Option<&str> {
    ["vars:", "variables:"]
        .iter()
        .find_map(|prefix| line.strip_prefix(prefix))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_monomial(expr: &str, line: usize) -> Result<BTreeMap<String, u64>> {
    let mut factors = BTreeMap::new();
    if expr == "1" {
        return Ok(factors);
    }
    for token in expr.split(|c: char| c == '*' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        let malformed = || Error::MalformedToken {
            line,
            token: token.to_string(),
        };
        let (name, exp) = match token.split_once('^') {
            Some((name, exp)) => {
                let exp = exp.trim();
                if exp.starts_with('-') && exp[1..].chars().all(|c| c.is_ascii_digit()) && exp.len() > 1 {
                    return Err(Error::NegativeExponent {
                        line,
                        token: token.to_string(),
                    });
                }
                let exp: u64 = exp.parse().map_err(|_| malformed())?;
                (name, exp)
            }
            None => (token, 1),
        };
        if !is_identifier(name) {
            return Err(malformed());
        }
        *factors.entry(name.to_string()).or_insert(0) += exp;
    }
    factors.retain(|_, e| *e > 0);
    Ok(factors)
}

/// The `n x q` log-matrix `A_F` whose columns are the exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogMatrix {
    matrix: IntMatrix,
    degree: Option<u64>,
}

impl LogMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Common column sum `d`, when it exists.
    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Reads the columns back as exponent vectors.
    pub fn columns(&self) -> Vec<ExponentVector> {
        (0..self.cols())
            .map(|j| ExponentVector::from_bigint(&self.matrix.column(j)).expect("log-matrix entries are exponents"))
            .collect()
    }
}

pub fn log_matrix(set: &MonomialSet) -> LogMatrix {
    let cols: Vec<Vec<u64>> = set.vectors.iter().map(|v| v.0.clone()).collect();
    LogMatrix {
        matrix: IntMatrix::from_columns(&cols),
        degree: set.degree(),
    }
}

/// Which of the two canonical restrictions hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    /// Every row of the log-matrix has a zero entry.
    pub no_common_factor: bool,
    /// No row of the log-matrix is identically zero.
    pub every_variable_appears: bool,
    /// Rows breaking either restriction, ascending.
    pub offending_rows: Vec<usize>,
}

impl CanonicalReport {
    pub fn holds(&self) -> bool {
        self.no_common_factor && self.every_variable_appears
    }
}

pub fn check_canonical(set: &MonomialSet) -> CanonicalReport {
    let mut offending_rows = Vec::new();
    let mut no_common_factor = true;
    let mut every_variable_appears = true;
    for i in 0..set.n() {
        let has_zero = set.vectors.iter().any(|v| v[i] == 0);
        let has_nonzero = set.vectors.iter().any(|v| v[i] != 0);
        no_common_factor &= has_zero;
        every_variable_appears &= has_nonzero;
        if !has_zero || !has_nonzero {
            offending_rows.push(i);
        }
    }
    CanonicalReport {
        no_common_factor,
        every_variable_appears,
        offending_rows,
    }
}

/// Connectivity of the bipartite row/column incidence of the log-matrix,
/// ignoring zero rows.
pub fn is_cohesive(set: &MonomialSet) -> bool {
    let (n, q) = (set.n(), set.q());
    // rows are nodes 0..n, columns n..n+q
    let mut uf = UnionFind::new(n + q);
    for (j, v) in set.vectors.iter().enumerate() {
        for i in 0..n {
            if v[i] != 0 {
                uf.union(i, n + j);
            }
        }
    }
    let root = uf.find(n);
    (0..q).all(|j| uf.find(n + j) == root)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
