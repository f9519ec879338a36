//! Degree-2 monomial Cremona maps through their graphs.
//!
//! A set of degree-2 monomials is a graph on the variables (a square is a
//! loop). It is Cremona exactly when the graph is connected with one odd
//! circuit or one loop; the inverse is then read off the circuit and the
//! neighborhoods around it.

mod graph;
mod random;

use num::{BigInt, One, Zero};
use serde::Serialize;

pub use graph::{
    build_graph, diameter, edge_graph, edge_graph_dot, is_cremona_degree2, CremonaGraph, Edge, RootStructure,
    SimpleGraph,
};
pub use random::random_cremona_degree2;

use crate::error::{Error, Result};
use crate::inversion::invert;
use crate::linalg::IntMatrix;
use crate::monomial::{log_matrix, ExponentVector, MonomialSet};
use crate::permutation::find_equivalence;

/// Log-matrix with rows ordered as circuit then `N_1, N_2, ...` and columns
/// as circuit edges then the edges reaching each neighborhood vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub matrix: IntMatrix,
    /// Row `a` of `matrix` is variable `row_permutation[a]`.
    pub row_permutation: Vec<usize>,
    /// Column `b` of `matrix` is monomial `column_permutation[b]`.
    pub column_permutation: Vec<usize>,
    pub root_size: usize,
    pub layer_sizes: Vec<usize>,
}

impl NormalForm {
    fn block_start(&self, j: usize) -> usize {
        self.root_size + self.layer_sizes[..j - 1].iter().sum::<usize>()
    }

    fn range(&self, j: usize) -> std::ops::Range<usize> {
        if j == 0 {
            0..self.root_size
        } else {
            let start = self.block_start(j);
            start..start + self.layer_sizes[j - 1]
        }
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IntMatrix {
        let rows: Vec<usize> = rows.collect();
        let cols: Vec<usize> = cols.collect();
        self.matrix.permuted(&rows, &cols)
    }

    /// Circuit (or loop) block.
    pub fn root_block(&self) -> IntMatrix {
        self.block(self.range(0), self.range(0))
    }

    /// Block joining layer `j - 1` (the root for `j = 1`) to layer `j`.
    pub fn connector_block(&self, j: usize) -> IntMatrix {
        self.block(self.range(j - 1), self.range(j))
    }

    /// Diagonal block of layer `j >= 1`.
    pub fn identity_block(&self, j: usize) -> IntMatrix {
        self.block(self.range(j), self.range(j))
    }

    /// Checks the block shape: root block of a circuit or loop, identity
    /// diagonal blocks, connectors with a single 1 per column and zeros
    /// everywhere else.
    pub fn has_block_shape(&self) -> bool {
        let one = BigInt::one();
        let root = self.root_block();
        let root_ok = if self.root_size == 1 {
            root[(0, 0)] == BigInt::from(2)
        } else {
            (0..self.root_size).all(|b| {
                let col = root.column(b);
                col.iter().filter(|&x| *x == one).count() == 2 && col.iter().all(|x| x.is_zero() || *x == one)
            })
        };
        if !root_ok {
            return false;
        }
        for j in 1..=self.layer_sizes.len() {
            if self.identity_block(j) != IntMatrix::identity(self.layer_sizes[j - 1]) {
                return false;
            }
            let conn = self.connector_block(j);
            for b in 0..conn.cols() {
                let col = conn.column(b);
                if col.iter().filter(|&x| *x == one).count() != 1 || !col.iter().all(|x| x.is_zero() || *x == one) {
                    return false;
                }
            }
        }
        let layer_of = |k: usize| -> usize {
            let mut bound = self.root_size;
            if k < bound {
                return 0;
            }
            for (j, size) in self.layer_sizes.iter().enumerate() {
                bound += size;
                if k < bound {
                    return j + 1;
                }
            }
            unreachable!("index within matrix")
        };
        (0..self.matrix.rows()).all(|a| {
            (0..self.matrix.cols()).all(|b| {
                let (ra, cb) = (layer_of(a), layer_of(b));
                let allowed = ra == cb || (cb >= 1 && ra + 1 == cb);
                allowed || self.matrix[(a, b)].is_zero()
            })
        })
    }
}

/// Row and column orders realizing the normal form, from a graph with a root.
pub fn normal_form_of(set: &MonomialSet, graph: &CremonaGraph) -> Result<NormalForm> {
    let root = graph.require_root()?;
    let mut rows = root.circuit.clone();
    let mut cols = root.circuit_edges.clone();
    for layer in &root.layers {
        for &x in layer {
            rows.push(x);
            cols.push(root.parent_edge[x].expect("off-circuit vertices have a parent edge"));
        }
    }
    Ok(NormalForm {
        matrix: log_matrix(set).matrix().permuted(&rows, &cols),
        row_permutation: rows,
        column_permutation: cols,
        root_size: root.r(),
        layer_sizes: root.layer_sizes(),
    })
}

pub fn normal_form(set: &MonomialSet) -> Result<NormalForm> {
    let graph = build_graph(set)?;
    normal_form_of(set, &graph)
}

/// Degree of the inverse: `(r + 1) / 2 + s`.
pub fn inverse_degree(graph: &CremonaGraph) -> Result<u64> {
    let root = graph.require_root()?;
    Ok((root.r().div_ceil(2) + root.s) as u64)
}

/// Inversion vector from the graph: the circuit (or loop vertex) plus every
/// off-circuit edge that survives deleting the degree-1 vertices.
pub fn inversion_factor_degree2(graph: &CremonaGraph) -> Result<ExponentVector> {
    let root = graph.require_root()?;
    let mut gamma = vec![0u64; graph.vertex_count()];
    for &c in &root.circuit {
        gamma[c] += 1;
    }
    for (j, e) in graph.edges().iter().enumerate() {
        if root.circuit_edges.contains(&j) || graph.degree(e.u) < 2 || graph.degree(e.v) < 2 {
            continue;
        }
        gamma[e.u] += 1;
        gamma[e.v] += 1;
    }
    Ok(ExponentVector::new(gamma))
}

/// Entry pattern of the inverse matrix in coordinates aligned with the
/// normal form: aligned row `a` is the inverse matrix row of monomial
/// `column_permutation[a]`, aligned column `b` the inverse monomial of
/// variable `row_permutation[b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryProfile {
    pub entries_in_0_1_2: bool,
    pub diagonal_nonzero: bool,
    /// Vertices whose aligned row contains a 2.
    pub rows_with_two: Vec<usize>,
    /// Off-circuit vertices of degree at least 2.
    pub expected_rows_with_two: Vec<usize>,
    pub squarefree_inverse: bool,
    pub second_neighborhood_empty: bool,
}

impl EntryProfile {
    pub fn holds(&self) -> bool {
        self.entries_in_0_1_2
            && self.diagonal_nonzero
            && self.rows_with_two == self.expected_rows_with_two
            && self.squarefree_inverse == self.second_neighborhood_empty
    }
}

pub fn inverse_entry_profile(set: &MonomialSet) -> Result<EntryProfile> {
    let graph = build_graph(set)?;
    let nf = normal_form_of(set, &graph)?;
    let root = graph.require_root()?;
    let inv = invert(set)?;
    let w = inv.inverse_matrix();
    let n = set.n();
    let aligned = IntMatrix::from_fn(n, n, |a, b| w[(nf.column_permutation[a], nf.row_permutation[b])].clone());

    let two = BigInt::from(2);
    let mut rows_with_two: Vec<usize> = (0..n)
        .filter(|&a| aligned.row(a).contains(&two))
        .map(|a| nf.row_permutation[a])
        .collect();
    rows_with_two.sort_unstable();
    let expected_rows_with_two: Vec<usize> = (0..n)
        .filter(|&x| !root.on_circuit(x) && graph.degree(x) >= 2)
        .collect();
    let entries_in_0_1_2 = aligned.entries().all(|x| *x >= BigInt::zero() && *x <= two);
    let squarefree_inverse = aligned.entries().all(|x| *x <= BigInt::one());
    Ok(EntryProfile {
        entries_in_0_1_2,
        diagonal_nonzero: (0..n).all(|a| !aligned[(a, a)].is_zero()),
        rows_with_two,
        expected_rows_with_two,
        squarefree_inverse,
        second_neighborhood_empty: root.p() <= 1,
    })
}

/// Lower bound `(r - 1) / 2 + p` for the diameter of the edge graph.
pub fn diameter_lower_bound(root: &RootStructure) -> usize {
    (root.r() - 1) / 2 + root.p()
}

/// Structural test for an inverse defined by linear forms up to the factor:
/// a loop with `s <= 1` and nothing beyond `N_2`, a triangle with nothing
/// beyond `N_1`, or a bare pentagon.
pub fn structural_linear_type(root: &RootStructure) -> bool {
    let empty_from = |j: usize| (j..=root.p()).all(|k| root.s_j(k) == 0);
    match root.r() {
        1 => empty_from(3) && root.s <= 1,
        3 => empty_from(2),
        5 => empty_from(1),
        _ => false,
    }
}

/// Linear type of the inverse, decided structurally and cross-checked against
/// edge-graph diameter at most 2.
pub fn is_inverse_linear_type(graph: &CremonaGraph) -> Result<bool> {
    let root = graph.require_root()?;
    let structural = structural_linear_type(root);
    let by_diameter = diameter(&edge_graph(graph))? <= 2;
    if structural != by_diameter {
        return Err(Error::CrossCheck(format!(
            "linear type: structural test says {structural}, edge-graph diameter test says {by_diameter}"
        )));
    }
    Ok(structural)
}

/// `(r = 3, p <= 1)` or `(r = 1, s = 1)`.
pub fn structural_p_involution(root: &RootStructure) -> bool {
    (root.r() == 3 && root.p() <= 1) || (root.r() == 1 && root.s == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CremonaType {
    /// At most one neighborhood around the root.
    Short,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degree2Classification {
    #[serde(rename = "type")]
    pub kind: CremonaType,
    pub p_involution: bool,
    pub inverse_degree: u64,
    pub r: usize,
    pub s: usize,
    pub p: usize,
    pub layer_sizes: Vec<usize>,
    /// The inverse has a non-squarefree monomial.
    pub apocryphal: bool,
    pub doubly_stochastic: bool,
    pub inverse_linear_type: bool,
    pub edge_graph_diameter: usize,
}

/// Classifies a degree-2 Cremona set. Graph formulas are cross-checked
/// against the matrix inverse; disagreement is an error, not a verdict.
pub fn classify(set: &MonomialSet) -> Result<Degree2Classification> {
    let graph = build_graph(set)?;
    let root = graph.require_root()?;
    let inv = invert(set)?;

    let delta = inverse_degree(&graph)?;
    if delta != inv.delta() {
        return Err(Error::CrossCheck(format!(
            "inverse degree: graph formula gives {delta}, matrix inverse has {}",
            inv.delta()
        )));
    }
    let gamma = inversion_factor_degree2(&graph)?;
    if &gamma != inv.gamma() {
        return Err(Error::CrossCheck("inversion vector: graph formula disagrees with matrix inverse".into()));
    }
    let p_involution = structural_p_involution(root);
    let permutation_match = find_equivalence(log_matrix(set).matrix(), inv.inverse_matrix()).is_some();
    if p_involution != (delta == 2) || p_involution != permutation_match {
        return Err(Error::CrossCheck(format!(
            "p-involution: structural {p_involution}, degree two {}, permutation match {permutation_match}",
            delta == 2
        )));
    }
    let inverse_linear_type = is_inverse_linear_type(&graph)?;
    let edge_graph_diameter = diameter(&edge_graph(&graph))?;
    let apocryphal = !inv.inverse_vectors().iter().all(ExponentVector::is_squarefree);
    Ok(Degree2Classification {
        kind: if root.p() <= 1 { CremonaType::Short } else { CremonaType::General },
        p_involution,
        inverse_degree: delta,
        r: root.r(),
        s: root.s,
        p: root.p(),
        layer_sizes: root.layer_sizes(),
        apocryphal,
        doubly_stochastic: set.is_squarefree() && (0..set.n()).all(|x| graph.degree(x) == 2),
        inverse_linear_type,
        edge_graph_diameter,
    })
}
