//! Weighted undirected graphs with exact weights and vertex measures.

mod generators;
mod io;
mod params;
mod vertex_set;

pub use generators::{complete, cycle, path, petersen, random_connected, star, star_triangle};
pub use io::{
    emit_graph, emit_measure, emit_vector, graph_from_json, graph_to_json, parse_graph, parse_measure,
    parse_vector,
};
pub use params::{
    edge_cover_number, graph_params, independence_number, is_bipartite, is_forest, maximum_matching,
    GraphParams,
};
pub use vertex_set::{SetPair, VertexSet};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: Rational,
}

/// An undirected graph on vertices `0..n` with positive rational edge weights
/// and a nonnegative vertex measure `mu` (the weighted degree unless overridden).
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    mu: Vec<Rational>,
    degree: Vec<Rational>,
    degree_measure: bool,
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.mu == other.mu
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from `(u, v, w)` triples. Parallel edges are merged by
    /// summing weights; self-loops and nonpositive weights are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut merged: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (idx, (u, v, w)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: idx + 1, vertex: u });
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight { line: idx + 1 });
            }
            *merged.entry((u.min(v), u.max(v))).or_default() += w;
        }
        let edges: Vec<Edge> = merged.into_iter().map(|((u, v), w)| Edge { u, v, w }).collect();
        Ok(Self::from_sorted_edges(n, edges))
    }

    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = vec![Rational::zero(); n];
        let mut adj = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            degree[e.u] += &e.w;
            degree[e.v] += &e.w;
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, mu: degree.clone(), degree, degree_measure: true, adj }
    }

    /// Unit-weight graph from an edge list.
    pub fn unit<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new(n, edges.into_iter().map(|(u, v)| (u, v, Rational::one())))
    }

    /// Replaces the vertex measure.
    pub fn with_measure(mut self, mu: Vec<Rational>) -> Result<Self> {
        if mu.len() != self.n {
            return Err(Error::LengthMismatch { got: mu.len(), n: self.n });
        }
        if let Some(i) = mu.iter().position(Rational::is_negative) {
            return Err(Error::NegativeMeasure { line: i + 1 });
        }
        self.degree_measure = mu == self.degree;
        self.mu = mu;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    pub fn degree(&self, i: usize) -> &Rational {
        &self.degree[i]
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degree
    }

    /// True when the measure is the weighted degree.
    pub fn has_degree_measure(&self) -> bool {
        self.degree_measure
    }

    /// Neighbours of `i` as `(j, edge index)`, sorted by `j`.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adj[i]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn vol(&self, s: &VertexSet) -> Rational {
        s.iter().map(|i| &self.mu[i]).sum()
    }

    pub fn vol_all(&self) -> Rational {
        self.mu.iter().sum()
    }

    /// `e`: twice the total edge weight.
    pub fn twice_edge_weight(&self) -> Rational {
        let total: Rational = self.edges.iter().map(|e| &e.w).sum();
        &total + &total
    }

    /// Degree volume of `s`, independent of the measure.
    pub fn degree_vol(&self, s: &VertexSet) -> Rational {
        s.iter().map(|i| &self.degree[i]).sum()
    }

    /// Total weight of edges with one end in `a` and the other in `b`.
    pub fn cut_weight(&self, a: &VertexSet, b: &VertexSet) -> Result<Rational> {
        if !a.is_disjoint(b) {
            return Err(Error::OverlappingSets);
        }
        Ok(self.cross_weight(a, b))
    }

    fn cross_weight(&self, a: &VertexSet, b: &VertexSet) -> Rational {
        let mut total = Rational::zero();
        for e in &self.edges {
            if (a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u)) {
                total += &e.w;
            }
        }
        total
    }

    /// `|∂A|`, the weight of edges leaving `a`.
    pub fn boundary(&self, a: &VertexSet) -> Rational {
        let mut total = Rational::zero();
        for e in &self.edges {
            if a.contains(e.u) != a.contains(e.v) {
                total += &e.w;
            }
        }
        total
    }

    /// Total weight of edges with both ends in `a`.
    pub fn internal_weight(&self, a: &VertexSet) -> Rational {
        let mut total = Rational::zero();
        for e in &self.edges {
            if a.contains(e.u) && a.contains(e.v) {
                total += &e.w;
            }
        }
        total
    }

    /// Components of the subgraph induced by `s`, ordered by smallest vertex.
    pub fn connected_components(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in s.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &(v, k) in &self.adj[u] {
                    if !seen[v] && s.contains(v) && self.edges[k].w.is_positive() {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.connected_components(&self.vertices()).len()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.adj[i].is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn volumes() {
        let p3 = path(3);
        assert_eq!(p3.vol(&set(&[1])), Rational::from_integer(2));
        assert_eq!(p3.vol(&VertexSet::new()), Rational::zero());
        assert_eq!(cycle(4).vol_all(), Rational::from_integer(8));
    }

    #[test]
    fn cut_weights() {
        let p3 = path(3);
        assert_eq!(p3.cut_weight(&set(&[0]), &set(&[2])).unwrap(), Rational::zero());
        assert_eq!(p3.cut_weight(&set(&[1]), &set(&[0, 2])).unwrap(), Rational::from_integer(2));
        assert_eq!(p3.cut_weight(&set(&[0, 1]), &set(&[1])), Err(Error::OverlappingSets));
        let pet = petersen();
        let outer = set(&[0, 1, 2, 3, 4]);
        let inner = outer.complement(10);
        assert_eq!(pet.cut_weight(&outer, &inner).unwrap(), Rational::from_integer(5));
    }

    #[test]
    fn components() {
        let p3 = path(3);
        assert_eq!(p3.connected_components(&set(&[0, 2])), vec![set(&[0]), set(&[2])]);
        assert_eq!(p3.connected_components(&set(&[0, 1, 2])), vec![set(&[0, 1, 2])]);
        let c4 = cycle(4);
        assert_eq!(c4.connected_components(&set(&[0, 1, 3])), vec![set(&[0, 1, 3])]);
    }

    #[test]
    fn merges_parallel_edges_and_rejects_loops() {
        let g = Graph::unit(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges()[0].w, Rational::from_integer(2));
        assert!(matches!(Graph::unit(2, [(1, 1)]), Err(Error::SelfLoop { .. })));
        assert!(matches!(
            Graph::new(2, [(0, 1, Rational::new(-1, 2))]),
            Err(Error::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn twice_edge_weight_equals_degree_volume() {
        let g = star_triangle(2);
        assert_eq!(g.twice_edge_weight(), g.vol_all());
        assert_eq!(g.twice_edge_weight(), Rational::from_integer(12));
    }
}
