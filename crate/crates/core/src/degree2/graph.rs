use std::collections::VecDeque;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::monomial::MonomialSet;

/// One monomial of degree 2 seen as an edge; `u == v` for a pure square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Root circuit (or loop) of a Cremona graph with its BFS neighborhoods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootStructure {
    /// Circuit vertices in cyclic order starting from the smallest index, or
    /// the single loop vertex.
    pub circuit: Vec<usize>,
    /// Edge indices `c1c2, c2c3, ..., c_r c1`, or the loop edge.
    pub circuit_edges: Vec<usize>,
    /// Neighborhoods `N_1, ..., N_p`, each ascending by vertex index.
    pub layers: Vec<Vec<usize>>,
    /// For off-circuit vertices, the edge towards the previous layer.
    pub parent_edge: Vec<Option<usize>>,
    /// Number of off-circuit vertices of degree at least 2.
    pub s: usize,
}

impl RootStructure {
    pub fn r(&self) -> usize {
        self.circuit.len()
    }

    pub fn p(&self) -> usize {
        self.layers.len()
    }

    /// `s_j` for `j >= 1`: edges joining layer `j - 1` to layer `j`.
    pub fn s_j(&self, j: usize) -> usize {
        assert!(j >= 1, "layers are numbered from 1");
        self.layers.get(j - 1).map_or(0, Vec::len)
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn is_loop(&self) -> bool {
        self.circuit.len() == 1
    }

    pub fn on_circuit(&self, x: usize) -> bool {
        self.circuit.contains(&x)
    }
}

/// The graph `G_F` of a degree-2 monomial set: vertices are variables and
/// edge `j` is the `j`-th monomial.
#[derive(Clone, Debug)]
pub struct CremonaGraph {
    variables: Vec<String>,
    edges: Vec<Edge>,
    /// `(neighbor, edge index)`; a loop is listed once.
    adjacency: Vec<Vec<(usize, usize)>>,
    degree: Vec<usize>,
    root: std::result::Result<RootStructure, String>,
}

impl CremonaGraph {
    pub fn vertex_count(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, usize)] {
        &self.adjacency[x]
    }

    /// Vertex degree; a loop counts twice.
    pub fn degree(&self, x: usize) -> usize {
        self.degree[x]
    }

    /// Root structure if the graph is a degree-2 Cremona graph.
    pub fn root(&self) -> Option<&RootStructure> {
        self.root.as_ref().ok()
    }

    /// Why the root structure is missing.
    pub fn failure(&self) -> Option<&str> {
        self.root.as_ref().err().map(String::as_str)
    }

    pub(crate) fn require_root(&self) -> Result<&RootStructure> {
        self.root
            .as_ref()
            .map_err(|reason| Error::NotCremonaGraph(reason.clone()))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency[a].iter().find(|&&(y, _)| y == b).map(|&(_, e)| e)
    }

    /// DOT rendering with nodes in variable order and edges sorted by endpoints.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G_F {\n");
        for name in &self.variables {
            let _ = writeln!(out, "  \"{name}\";");
        }
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        edges.sort_unstable();
        for (a, b) in edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.variables[a], self.variables[b]);
        }
        out.push_str("}\n");
        out
    }

    fn find_root(&self) -> std::result::Result<RootStructure, String> {
        let n = self.vertex_count();
        if !self.is_connected() {
            return Err("graph is not connected".into());
        }
        if self.edges.len() != n {
            return Err(format!(
                "{} edges on {n} vertices; a unique circuit needs exactly n edges",
                self.edges.len()
            ));
        }

        // Strip leaves; a connected graph with n edges keeps exactly its cycle.
        let mut deg = self.degree.clone();
        let mut removed = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| deg[x] == 1).collect();
        while let Some(x) = queue.pop_front() {
            if removed[x] {
                continue;
            }
            removed[x] = true;
            for &(y, _) in &self.adjacency[x] {
                if !removed[y] {
                    deg[y] -= 1;
                    if deg[y] == 1 {
                        queue.push_back(y);
                    }
                }
            }
        }
        let core: Vec<usize> = (0..n).filter(|&x| !removed[x]).collect();

        let (circuit, circuit_edges) = if core.len() == 1 {
            let x = core[0];
            let lp = self.edge_between(x, x).ok_or("degenerate core without a loop")?;
            (vec![x], vec![lp])
        } else {
            if core.len().is_multiple_of(2) {
                return Err(format!("unique circuit has even length {}", core.len()));
            }
            let on_core = |y: usize| !removed[y];
            let start = core[0];
            let mut circuit = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next = self.adjacency[cur]
                    .iter()
                    .map(|&(y, _)| y)
                    .filter(|&y| on_core(y) && y != prev && y != cur)
                    .min()
                    .ok_or("circuit walk stalled")?;
                if next == start {
                    break;
                }
                circuit.push(next);
                prev = cur;
                cur = next;
                if circuit.len() > core.len() {
                    return Err("circuit walk did not close".into());
                }
            }
            if circuit.len() != core.len() {
                return Err("core is not a single circuit".into());
            }
            let r = circuit.len();
            let edges = (0..r)
                .map(|a| self.edge_between(circuit[a], circuit[(a + 1) % r]).expect("consecutive circuit vertices are adjacent"))
                .collect();
            (circuit, edges)
        };

        let mut depth = vec![usize::MAX; n];
        let mut parent_edge = vec![None; n];
        let mut queue: VecDeque<usize> = circuit.iter().copied().collect();
        for &c in &circuit {
            depth[c] = 0;
        }
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.adjacency[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent_edge[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        let p = depth.iter().copied().max().unwrap_or(0);
        let layers: Vec<Vec<usize>> = (1..=p)
            .map(|j| (0..n).filter(|&x| depth[x] == j).collect())
            .collect();
        let s = (0..n)
            .filter(|&x| depth[x] > 0 && self.degree[x] >= 2)
            .count();

        Ok(RootStructure {
            circuit,
            circuit_edges,
            layers,
            parent_edge,
            s,
        })
    }
}

/// Builds `G_F`. The root structure is left unset (with a reason) when the
/// graph is not that of a degree-2 Cremona set.
pub fn build_graph(set: &MonomialSet) -> Result<CremonaGraph> {
    let degree = set.degree();
    if degree != Some(2) {
        return Err(Error::DegreeNotTwo(degree));
    }
    let n = set.n();
    let mut edges = Vec::with_capacity(set.q());
    let mut adjacency = vec![Vec::new(); n];
    let mut deg = vec![0; n];
    for (j, v) in set.vectors().iter().enumerate() {
        let support: Vec<usize> = (0..n).filter(|&i| v[i] > 0).collect();
        let edge = match support.as_slice() {
            [x] => Edge { u: *x, v: *x },
            [x, y] => Edge { u: *x, v: *y },
            _ => unreachable!("degree-2 exponent vectors have one or two nonzero entries"),
        };
        deg[edge.u] += 1;
        deg[edge.v] += 1;
        adjacency[edge.u].push((edge.v, j));
        if !edge.is_loop() {
            adjacency[edge.v].push((edge.u, j));
        }
        edges.push(edge);
    }
    let mut graph = CremonaGraph {
        variables: set.variables().to_vec(),
        edges,
        adjacency,
        degree: deg,
        root: Err(String::new()),
    };
    graph.root = graph.find_root();
    Ok(graph)
}

/// Whether `G_F` has a unique odd circuit and no loop, or is a tree plus one loop.
pub fn is_cremona_degree2(graph: &CremonaGraph) -> bool {
    graph.root().is_some()
}

/// A simple undirected graph given by sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b && !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
        }
        SimpleGraph { adjacency }
    }

    fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].expect("queued vertices have a distance");
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// The edge graph: one vertex per edge of `G`, adjacent when the edges meet.
pub fn edge_graph(graph: &CremonaGraph) -> SimpleGraph {
    let edges = graph.edges();
    let mut pairs = Vec::new();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (e, f) = (edges[a], edges[b]);
            if e.touches(f.u) || e.touches(f.v) {
                pairs.push((a, b));
            }
        }
    }
    SimpleGraph::from_edges(edges.len(), &pairs)
}

pub fn edge_graph_dot(graph: &CremonaGraph, labels: &[String]) -> String {
    let eg = edge_graph(graph);
    let mut out = String::from("graph edge_graph {\n");
    for label in labels {
        let _ = writeln!(out, "  \"{label}\";");
    }
    for (a, list) in eg.adjacency.iter().enumerate() {
        for &b in list.iter().filter(|&&b| b > a) {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", labels[a], labels[b]);
        }
    }
    out.push_str("}\n");
    out
}

/// Largest shortest-path distance; `0` for zero or one vertex.
pub fn diameter(graph: &SimpleGraph) -> Result<usize> {
    let mut best = 0;
    for x in 0..graph.vertex_count() {
        for d in graph.distances_from(x) {
            best = best.max(d.ok_or(Error::Disconnected)?);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(text: &str) -> CremonaGraph {
        build_graph(&MonomialSet::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn triangle_root() {
        let g = graph("x1*x2\nx1*x3\nx2*x3");
        let root = g.root().unwrap();
        assert_eq!(root.circuit, vec![0, 1, 2]);
        assert_eq!(root.circuit_edges, vec![0, 2, 1]);
        assert_eq!((root.r(), root.s, root.p()), (3, 0, 0));
    }

    #[test]
    fn loop_path_root() {
        let g = graph("x1^2\nx1*x2\nx2*x3");
        let root = g.root().unwrap();
        assert!(root.is_loop());
        assert_eq!(root.circuit, vec![0]);
        assert_eq!((root.r(), root.s, root.p()), (1, 1, 2));
        assert_eq!(root.layers, vec![vec![1], vec![2]]);
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn degree_must_be_two() {
        assert!(matches!(
            build_graph(&MonomialSet::parse("vars: x1, x2, x3\nx1*x3^2").unwrap()),
            Err(Error::DegreeNotTwo(Some(3)))
        ));
        assert!(matches!(
            build_graph(&MonomialSet::parse("x1*x3\nx2").unwrap()),
            Err(Error::DegreeNotTwo(None))
        ));
    }

    #[test]
    fn cremona_graph_recognition() {
        assert!(is_cremona_degree2(&graph("x1*x2\nx2*x3\nx3*x4\nx4*x5\nx5*x1")));
        let c4 = graph("x1*x2\nx2*x3\nx3*x4\nx4*x1");
        assert!(!is_cremona_degree2(&c4));
        assert!(c4.failure().unwrap().contains("even"));
        // two triangles sharing the edge x2x3
        assert!(!is_cremona_degree2(&graph("x1*x2\nx1*x3\nx2*x3\nx2*x4\nx3*x4")));
        assert!(!is_cremona_degree2(&graph("x1*x2\nx3*x4")));
        assert!(is_cremona_degree2(&graph("x1^2\nx1*x2")));
    }

    #[test]
    fn edge_graphs_and_diameters() {
        let pentagon = graph("x1*x2\nx2*x3\nx3*x4\nx4*x5\nx5*x1");
        let eg = edge_graph(&pentagon);
        assert_eq!(eg.vertex_count(), 5);
        assert_eq!(eg.edge_count(), 5);
        assert!(eg.adjacency.iter().all(|l| l.len() == 2));
        assert_eq!(diameter(&eg).unwrap(), 2);

        let eg = edge_graph(&graph("x1*x2\nx1*x3\nx2*x3"));
        assert_eq!((eg.vertex_count(), eg.edge_count()), (3, 3));

        let star = graph("vars: c, a, b, d\nc*a\nc*b\nc*d");
        let eg = edge_graph(&star);
        assert_eq!((eg.vertex_count(), eg.edge_count()), (3, 3));

        let eg = edge_graph(&graph("x1^2\nx1*x2\nx2*x3"));
        assert_eq!(eg.adjacency, vec![vec![1], vec![0, 2], vec![1]]);
    }

    #[test]
    fn diameter_edge_cases() {
        assert_eq!(diameter(&SimpleGraph::from_edges(1, &[])).unwrap(), 0);
        assert_eq!(diameter(&SimpleGraph::from_edges(3, &[(0, 1), (1, 2)])).unwrap(), 2);
        assert!(matches!(
            diameter(&SimpleGraph::from_edges(2, &[])),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn dot_output_is_sorted() {
        let g = graph("vars: x1, x2, x3\nx2*x3\nx1^2\nx1*x2");
        assert_eq!(
            g.to_dot(),
            "graph G_F {\n  \"x1\";\n  \"x2\";\n  \"x3\";\n  \"x1\" -- \"x1\";\n  \"x1\" -- \"x2\";\n  \"x2\" -- \"x3\";\n}\n"
        );
    }
}
