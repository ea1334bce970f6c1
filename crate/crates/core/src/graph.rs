//! Simple undirected graphs, the standard families used throughout the crate,
//! incidence and Laplacian matrices, and the total-graph construction.
//!
//! Every [`Graph`] is connected, loop-free and has a sorted edge list. The edge
//! order fixes the column order of the incidence matrix and therefore the
//! vertex order of the total graph, so it must be deterministic.

use std::collections::VecDeque;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

/// What a vertex of a total graph stands for in the base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    BaseVertex(usize),
    /// Index into the base graph's edge list.
    BaseEdge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalGraphLabel {
    pub index: usize,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    X1,
    X2,
}

/// A proper 2-colouring. Vertex 0 is always on side `X1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_of: Vec<Side>,
}

impl Bipartition {
    pub fn side_of(&self, v: usize) -> Side {
        self.side_of[v]
    }

    pub fn same_side(&self, a: usize, b: usize) -> bool {
        self.side_of[a] == self.side_of[b]
    }

    pub fn members(&self, side: Side) -> Vec<usize> {
        (0..self.side_of.len())
            .filter(|&v| self.side_of[v] == side)
            .collect()
    }

    /// `+1` on `X1`, `-1` on `X2`.
    pub fn sign(&self, v: usize) -> f64 {
        match self.side_of[v] {
            Side::X1 => 1.0,
            Side::X2 => -1.0,
        }
    }
}

impl Graph {
    /// Builds a graph from an arbitrary list of endpoint pairs.
    ///
    /// Pairs are normalised to `(min, max)` and sorted. Self-loops, repeated
    /// edges, out-of-range endpoints and disconnected results are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(invalid("graph must have at least one vertex"));
        }
        let mut normalised = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            normalised.push((u.min(v), u.max(v)));
        }
        normalised.sort_unstable();
        if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }

        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &normalised {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        let graph = Graph {
            n,
            edges: normalised,
            neighbors,
        };
        if !graph.is_connected() {
            return Err(invalid("graph is disconnected"));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Position of the edge `{u, v}` in the edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    pub fn degree_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.degree(i) as f64
            } else {
                0.0
            }
        })
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            l[(v, v)] = self.degree(v) as f64;
        }
        for &(u, v) in &self.edges {
            l[(u, v)] = -1.0;
            l[(v, u)] = -1.0;
        }
        l
    }

    /// Computes `L * M` using the adjacency lists instead of a dense product.
    pub fn laplacian_times(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(m.nrows(), self.n, "row count must match vertex count");
        let mut out = DMatrix::zeros(self.n, m.ncols());
        for col in 0..m.ncols() {
            for v in 0..self.n {
                let mut acc = self.degree(v) as f64 * m[(v, col)];
                for &w in &self.neighbors[v] {
                    acc -= m[(w, col)];
                }
                out[(v, col)] = acc;
            }
        }
        out
    }

    /// Vertex-edge incidence matrix, `n x m`, with columns in edge-list order.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut r = DMatrix::zeros(self.n, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            r[(u, j)] = 1.0;
            r[(v, j)] = 1.0;
        }
        r
    }

    /// Breadth-first 2-colouring from vertex 0, or `None` when an odd cycle exists.
    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        side[0] = Some(Side::X1);
        queue.push_back(0);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].expect("queued vertices are coloured");
            let other = match sv {
                Side::X1 => Side::X2,
                Side::X2 => Side::X1,
            };
            for &w in &self.neighbors[v] {
                match side[w] {
                    None => {
                        side[w] = Some(other);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
        Some(Bipartition {
            side_of: side.into_iter().map(|s| s.expect("graph is connected")).collect(),
        })
    }

    /// The total graph, with vertices ordered as all base vertices followed by
    /// all base edges in edge-list order.
    ///
    /// Built from the block form `[[A, R], [R^T, R^T R - 2I]]`: two edge-vertices
    /// are adjacent when their base edges share an endpoint.
    pub fn total_graph(&self) -> (Graph, Vec<TotalGraphLabel>) {
        let n = self.n;
        let m = self.edges.len();
        let mut edges = Vec::with_capacity(m + 2 * m + self.pairs_of_incident_edges());
        edges.extend(self.edges.iter().copied());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            edges.push((u, n + j));
            edges.push((v, n + j));
        }
        for v in 0..n {
            let incident: Vec<usize> = self.neighbors[v]
                .iter()
                .map(|&w| self.edge_index(v, w).expect("neighbour edge exists"))
                .collect();
            for (i, &e1) in incident.iter().enumerate() {
                for &e2 in &incident[i + 1..] {
                    edges.push((n + e1, n + e2));
                }
            }
        }
        let total = Graph::from_edges(n + m, &edges)
            .expect("total graph of a connected simple graph is connected and simple");

        let labels = (0..n)
            .map(|v| TotalGraphLabel {
                index: v,
                origin: Origin::BaseVertex(v),
            })
            .chain((0..m).map(|j| TotalGraphLabel {
                index: n + j,
                origin: Origin::BaseEdge(j),
            }))
            .collect();
        (total, labels)
    }

    fn pairs_of_incident_edges(&self) -> usize {
        (0..self.n)
            .map(|v| {
                let d = self.degree(v);
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }

    /// Text form: a header line `n m` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list text form. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;

        let mut edges = Vec::with_capacity(m);
        for (line, content) in lines {
            edges.push(parse_pair(line, content)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header declares {m} edges but {} were listed", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    let bad = |message: String| Error::Parse { line, message };
    if fields.len() != 2 {
        return Err(bad(format!("expected two integers, found {:?}", content)));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("not a non-negative integer: {s:?}")))
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("complete graph needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// `Cay(Z_n, S)`. The connection set may contain negative residues; it is
/// reduced mod `n` first.
pub fn circulant(n: usize, connection_set: &[i64]) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("circulant graph needs n >= 2, got {n}")));
    }
    let modulus = n as i64;
    let mut set: Vec<usize> = connection_set
        .iter()
        .map(|s| s.rem_euclid(modulus) as usize)
        .collect();
    set.sort_unstable();
    set.dedup();
    if set.contains(&0) {
        return Err(invalid("connection set contains 0"));
    }
    if let Some(s) = set.iter().find(|&&s| set.binary_search(&((n - s) % n)).is_err()) {
        return Err(invalid(format!("connection set is not closed under negation: {s}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for &s in &set {
            let j = (i + s) % n;
            if i < j {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    circulant(n, &[1, -1])
}

/// Complement of `m` disjoint edges, realised as `Cay(Z_2m, Z_2m \ {0, m})`.
pub fn cocktail_party(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(invalid(format!("cocktail party graph needs m >= 2, got {m}")));
    }
    let set: Vec<i64> = (1..2 * m as i64).filter(|&s| s != m as i64).collect();
    circulant(2 * m, &set)
}

/// `Q_d` on bit strings `0..2^d`, adjacent when they differ in one bit.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d < 1 {
        return Err(invalid("hypercube needs d >= 1"));
    }
    if d > 20 {
        return Err(Error::TooLarge(format!("hypercube of dimension {d}")));
    }
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(n * d / 2);
    for v in 0..n {
        for k in 0..d {
            let w = v ^ (1 << k);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Outer 5-cycle on 0..5, spokes `i -- i+5`, inner pentagram on 5..10.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("Petersen graph is valid")
}
