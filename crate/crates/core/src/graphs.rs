//! Simple graphs on labeled vertices 1..n, sequences of such graphs, and
//! the diagonal machinery: picking one edge from each member graph and
//! asking whether every such pick is acyclic.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Undirected edge, stored as (min, max), 1-based endpoints.
pub type Edge = (u8, u8);

fn normalize_edge(u: u8, v: u8) -> Edge {
    (u.min(v), u.max(v))
}

/// All possible edges on n vertices in lexicographic order.
pub fn all_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for u in 1..=n as u8 {
        for v in (u + 1)..=n as u8 {
            out.push((u, v));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>, // normalized, sorted, no duplicates
}

impl Graph {
    pub fn new(n: usize, edges: &[(u8, u8)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("graph must have at least one vertex"));
        }
        if n > 64 {
            return Err(Error::input(format!("vertex count {n} out of range")));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            if u < 1 || v < 1 || u as usize > n || v as usize > n {
                return Err(Error::input(format!(
                    "edge ({u},{v}) has an endpoint outside 1..{n}"
                )));
            }
            normalized.push(normalize_edge(u, v));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("duplicate edge in graph"));
        }
        Ok(Graph { n, edges: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Bitmasks (bit v−1 set for vertex v) of both endpoints, one per edge.
    pub fn edge_masks(&self) -> Vec<u64> {
        self.edges
            .iter()
            .map(|&(u, v)| (1u64 << (u - 1)) | (1u64 << (v - 1)))
            .collect()
    }

    /// Set union of edge sets; all graphs must share the vertex count.
    pub fn union(graphs: &[&Graph]) -> Result<Graph> {
        let Some(first) = graphs.first() else {
            return Err(Error::input("union of an empty collection of graphs"));
        };
        let n = first.n;
        let mut edges = BTreeSet::new();
        for g in graphs {
            if g.n != n {
                return Err(Error::input(format!(
                    "union over mismatched vertex counts {n} and {}",
                    g.n
                )));
            }
            edges.extend(g.edges.iter().copied());
        }
        Ok(Graph {
            n,
            edges: edges.into_iter().collect(),
        })
    }

    /// Connectivity over all n vertices (isolated vertices disconnect).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.join(u as usize - 1, v as usize - 1);
        }
        let root = uf.find(0);
        (1..self.n).all(|v| uf.find(v) == root)
    }

    /// Exact count of acyclic orientations by enumerating all 2^|E|
    /// orientations and discarding those with a directed cycle.
    pub fn count_acyclic_orientations(&self, max_edges: usize) -> Result<u64> {
        let m = self.edges.len();
        if m > max_edges {
            return Err(Error::budget(format!(
                "orientation enumeration over {m} edges exceeds the {max_edges}-edge guard"
            )));
        }
        let mut count = 0u64;
        let mut indegree = vec![0u8; self.n];
        let mut out_adj: Vec<Vec<u8>> = vec![Vec::new(); self.n];
        for mask in 0u64..(1u64 << m) {
            indegree.iter_mut().for_each(|d| *d = 0);
            out_adj.iter_mut().for_each(|a| a.clear());
            for (i, &(u, v)) in self.edges.iter().enumerate() {
                let (from, to) = if mask >> i & 1 == 0 { (u, v) } else { (v, u) };
                out_adj[from as usize - 1].push(to - 1);
                indegree[to as usize - 1] += 1;
            }
            if is_dag(&out_adj, &mut indegree) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Kahn's algorithm; consumes the indegree scratch buffer.
fn is_dag(out_adj: &[Vec<u8>], indegree: &mut [u8]) -> bool {
    let n = out_adj.len();
    let mut stack: Vec<u8> = (0..n as u8).filter(|&v| indegree[v as usize] == 0).collect();
    let mut removed = 0usize;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &w in &out_adj[v as usize] {
            indegree[w as usize] -= 1;
            if indegree[w as usize] == 0 {
                stack.push(w);
            }
        }
    }
    removed == n
}

impl fmt::Display for Graph {
    /// Edges joined by '+', e.g. "1-2+3-4"; an edgeless graph prints "()".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphSequence {
    n: usize,
    graphs: Vec<Graph>,
}

impl GraphSequence {
    pub fn new(graphs: Vec<Graph>) -> Result<Self> {
        let Some(first) = graphs.first() else {
            return Err(Error::input("a graph sequence needs at least one member"));
        };
        let n = first.n();
        for (i, g) in graphs.iter().enumerate() {
            if g.n() != n {
                return Err(Error::input(format!(
                    "graph {} has vertex count {} but the sequence uses {n}",
                    i + 1,
                    g.n()
                )));
            }
            if g.edge_count() == 0 {
                return Err(Error::input(format!(
                    "graph {} is empty; every member of a sequence must have an edge",
                    i + 1
                )));
            }
        }
        Ok(GraphSequence { n, graphs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // m ≥ 1 by construction
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn union_all(&self) -> Graph {
        let refs: Vec<&Graph> = self.graphs.iter().collect();
        Graph::union(&refs).expect("members share a vertex count by construction")
    }
}

impl fmt::Display for GraphSequence {
    /// Member graphs joined by '|', e.g. "1-2|3-4".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.graphs.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// One edge chosen from each member graph, in sequence order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagonal {
    pub edges: Vec<Edge>,
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// All diagonals in lexicographic order of edge indices: exactly
/// ∏ᵢ |E(Gᵢ)| of them.
pub fn diagonals(seq: &GraphSequence) -> impl Iterator<Item = Diagonal> + '_ {
    let m = seq.len();
    let mut indices = vec![0usize; m];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let item = Diagonal {
            edges: indices
                .iter()
                .enumerate()
                .map(|(i, &e)| seq.graphs()[i].edges()[e])
                .collect(),
        };
        // Odometer increment, last position fastest.
        let mut pos = m;
        loop {
            if pos == 0 {
                done = true;
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < seq.graphs()[pos].edge_count() {
                break;
            }
            indices[pos] = 0;
        }
        Some(item)
    })
}

pub fn diagonal_count(seq: &GraphSequence) -> u128 {
    seq.graphs()
        .iter()
        .map(|g| g.edge_count() as u128)
        .product()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DcfVerdict {
    Free,
    /// Two member graphs share an edge (1-based graph positions).
    SharedEdge { graph_a: usize, graph_b: usize, edge: Edge },
    /// A specific diagonal whose edges contain a cycle.
    CyclicDiagonal { diagonal: Diagonal },
}

impl DcfVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, DcfVerdict::Free)
    }

    pub fn witness(&self) -> Option<String> {
        match self {
            DcfVerdict::Free => None,
            DcfVerdict::SharedEdge { graph_a, graph_b, edge } => Some(format!(
                "graphs {graph_a} and {graph_b} share edge {}-{}",
                edge.0, edge.1
            )),
            DcfVerdict::CyclicDiagonal { diagonal } => {
                Some(format!("diagonal {diagonal} contains a cycle"))
            }
        }
    }
}

/// Diagonal cycle-freeness: edge sets pairwise disjoint and every diagonal
/// acyclic. Stops at the first counterexample and returns it.
pub fn is_diagonally_cycle_free(seq: &GraphSequence) -> DcfVerdict {
    let mut seen: std::collections::HashMap<Edge, usize> = std::collections::HashMap::new();
    for (i, g) in seq.graphs().iter().enumerate() {
        for &e in g.edges() {
            if let Some(&first) = seen.get(&e) {
                return DcfVerdict::SharedEdge {
                    graph_a: first + 1,
                    graph_b: i + 1,
                    edge: e,
                };
            }
            seen.insert(e, i);
        }
    }
    for diag in diagonals(seq) {
        let mut uf = UnionFind::new(seq.n());
        for &(u, v) in &diag.edges {
            if !uf.join(u as usize - 1, v as usize - 1) {
                return DcfVerdict::CyclicDiagonal { diagonal: diag };
            }
        }
    }
    DcfVerdict::Free
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when x and y were already connected (a cycle edge).
    fn join(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(u8, u8)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn seq(graphs: Vec<Graph>) -> GraphSequence {
        GraphSequence::new(graphs).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 4)]).is_err());
        assert!(Graph::new(3, &[(0, 2)]).is_err());
        assert!(Graph::new(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(0, &[]).is_err());
        assert_eq!(g(3, &[(3, 1)]).edges(), &[(1, 3)]);
    }

    #[test]
    fn union_examples() {
        let a = g(4, &[(1, 2)]);
        let b = g(4, &[(3, 4)]);
        assert_eq!(
            Graph::union(&[&a, &b]).unwrap().edges(),
            &[(1, 2), (3, 4)]
        );
        assert_eq!(Graph::union(&[&a, &a]).unwrap(), a);
        let k3 = g(3, &[(1, 2), (1, 3), (2, 3)]);
        let e12 = g(3, &[(1, 2)]);
        assert_eq!(Graph::union(&[&k3, &e12]).unwrap(), k3);
        let other_n = g(5, &[(1, 2)]);
        assert!(Graph::union(&[&a, &other_n]).is_err());
    }

    #[test]
    fn sequence_validation() {
        assert!(GraphSequence::new(vec![]).is_err());
        assert!(GraphSequence::new(vec![g(3, &[(1, 2)]), g(4, &[(1, 2)])]).is_err());
        let empty = Graph::new(3, &[]).unwrap();
        assert!(GraphSequence::new(vec![g(3, &[(1, 2)]), empty]).is_err());
    }

    #[test]
    fn diagonal_enumeration() {
        let s = seq(vec![g(4, &[(1, 2)]), g(4, &[(3, 4)])]);
        let d: Vec<Diagonal> = diagonals(&s).collect();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].edges, vec![(1, 2), (3, 4)]);

        let s2 = seq(vec![g(4, &[(1, 2), (1, 3)]), g(4, &[(3, 4)])]);
        assert_eq!(diagonals(&s2).count(), 2);
        assert_eq!(diagonal_count(&s2), 2);

        let tri = seq(vec![g(3, &[(1, 2)]), g(3, &[(2, 3)]), g(3, &[(1, 3)])]);
        assert_eq!(diagonals(&tri).count(), 1);
    }

    #[test]
    fn diagonal_order_is_lexicographic() {
        let s = seq(vec![g(4, &[(1, 2), (3, 4)]), g(4, &[(1, 3), (2, 4)])]);
        let d: Vec<Vec<Edge>> = diagonals(&s).map(|d| d.edges).collect();
        assert_eq!(
            d,
            vec![
                vec![(1, 2), (1, 3)],
                vec![(1, 2), (2, 4)],
                vec![(3, 4), (1, 3)],
                vec![(3, 4), (2, 4)],
            ]
        );
    }

    #[test]
    fn dcf_verdicts() {
        let free = seq(vec![g(4, &[(1, 2)]), g(4, &[(3, 4)])]);
        assert!(is_diagonally_cycle_free(&free).is_free());

        let shared = seq(vec![g(2, &[(1, 2)]), g(2, &[(1, 2)])]);
        match is_diagonally_cycle_free(&shared) {
            DcfVerdict::SharedEdge { graph_a, graph_b, edge } => {
                assert_eq!((graph_a, graph_b, edge), (1, 2, (1, 2)));
            }
            v => panic!("expected shared-edge verdict, got {v:?}"),
        }

        let tri = seq(vec![g(3, &[(1, 2)]), g(3, &[(2, 3)]), g(3, &[(1, 3)])]);
        match is_diagonally_cycle_free(&tri) {
            DcfVerdict::CyclicDiagonal { diagonal } => {
                assert_eq!(diagonal.edges, vec![(1, 2), (2, 3), (1, 3)]);
            }
            v => panic!("expected cyclic-diagonal verdict, got {v:?}"),
        }
    }

    #[test]
    fn acyclic_orientation_counts() {
        assert_eq!(g(3, &[]).count_acyclic_orientations(24).unwrap(), 1);
        assert_eq!(g(2, &[(1, 2)]).count_acyclic_orientations(24).unwrap(), 2);
        let k3 = g(3, &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(k3.count_acyclic_orientations(24).unwrap(), 6);
        let c4 = g(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(c4.count_acyclic_orientations(24).unwrap(), 14);
        assert!(matches!(
            k3.count_acyclic_orientations(2),
            Err(crate::error::Error::Budget(_))
        ));
    }

    #[test]
    fn connectivity() {
        assert!(g(1, &[]).is_connected());
        assert!(!g(2, &[]).is_connected());
        assert!(g(3, &[(1, 2), (2, 3)]).is_connected());
        assert!(!g(4, &[(1, 2), (3, 4)]).is_connected());
    }

    #[test]
    fn all_edges_order() {
        assert_eq!(all_edges(3), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(all_edges(1), vec![]);
    }
}
