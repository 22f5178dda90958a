//! Simple digraphs with mirrored adjacency, vertex sets, and the basic
//! neighbourhood queries the solver is built on.
//!
//! Vertices are dense ids `0..n`. Adjacency lists are kept sorted and free of
//! duplicates, so every iteration order in the crate is ascending by id.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge on vertex {0}")]
    LoopEdge(Vertex),
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// A set of vertex ids drawn from a fixed universe `0..universe`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    /// Builds a set, rejecting members outside the universe.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = VertexSet::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: universe,
                });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Inserts `v`, growing the universe if needed. Returns true if newly added.
    pub fn insert(&mut self, v: Vertex) -> bool {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < self.bits.len() {
            self.bits.set(v, false);
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.bits.len() > self.bits.len() {
            self.bits.grow(other.bits.len());
        }
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn max(&self) -> Option<Vertex> {
        self.bits.maximum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<Vertex>::deserialize(deserializer)?;
        let universe = members.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_vertices(universe, members).expect("universe covers all members"))
    }
}

/// Shortest directed path length, or `Infinite` when there is no path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_within(self, radius: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= radius)
    }
}

/// Maps vertex ids of an induced subgraph back to the graph it was cut from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    to_parent: Vec<Vertex>,
    from_parent: Vec<Option<Vertex>>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            to_parent: (0..n).collect(),
            from_parent: (0..n).map(Some).collect(),
        }
    }

    pub fn to_parent(&self, v: Vertex) -> Vertex {
        self.to_parent[v]
    }

    pub fn from_parent(&self, v: Vertex) -> Option<Vertex> {
        self.from_parent.get(v).copied().flatten()
    }

    /// New id -> parent id, indexed by new id.
    pub fn parent_ids(&self) -> &[Vertex] {
        &self.to_parent
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// Builds a digraph from ordered pairs. Repeated pairs collapse to one edge.
    pub fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        for list in &out_adj {
            edge_count += list.len();
        }
        Ok(Digraph {
            out_adj,
            in_adj,
            edge_count,
        })
    }

    pub fn empty(n: usize) -> Self {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// All edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn sources(&self) -> VertexSet {
        let n = self.n();
        VertexSet::from_vertices(n, self.vertices().filter(|&v| self.in_degree(v) == 0))
            .expect("ids in range")
    }

    pub fn sinks(&self) -> VertexSet {
        let n = self.n();
        VertexSet::from_vertices(n, self.vertices().filter(|&v| self.out_degree(v) == 0))
            .expect("ids in range")
    }

    pub fn is_sourceless(&self) -> bool {
        self.in_adj.iter().all(|ins| !ins.is_empty())
    }

    pub fn first_source(&self) -> Option<Vertex> {
        self.vertices().find(|&v| self.in_degree(v) == 0)
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.max() {
            Some(v) if v >= self.n() => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            }),
            _ => Ok(()),
        }
    }

    /// N⁺[X]: the members of `set` together with all their out-neighbours.
    pub fn closed_out_neighborhood(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_set(set)?;
        let mut closed = VertexSet::new(self.n());
        for x in set.iter() {
            closed.insert(x);
            for &y in self.out_neighbors(x) {
                closed.insert(y);
            }
        }
        Ok(closed)
    }

    /// Sources of `D - N⁺[X]`.
    pub fn s_of(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        let removed = self.closed_out_neighborhood(set)?;
        let mut out = VertexSet::new(self.n());
        for u in self.vertices().filter(|&u| !removed.contains(u)) {
            if self.in_neighbors(u).iter().all(|&w| removed.contains(w)) {
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// Isolated vertices of `D - N⁺[X]`.
    pub fn t_of(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        let removed = self.closed_out_neighborhood(set)?;
        let mut out = VertexSet::new(self.n());
        for u in self.vertices().filter(|&u| !removed.contains(u)) {
            let isolated = self.in_neighbors(u).iter().all(|&w| removed.contains(w))
                && self.out_neighbors(u).iter().all(|&w| removed.contains(w));
            if isolated {
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// BFS distances from `v` to every vertex.
    pub fn distances_from(&self, v: Vertex) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n()];
        let mut queue = VecDeque::new();
        dist[v] = Distance::Finite(0);
        queue.push_back((v, 0));
        while let Some((x, d)) = queue.pop_front() {
            for &y in self.out_neighbors(x) {
                if dist[y] == Distance::Infinite {
                    dist[y] = Distance::Finite(d + 1);
                    queue.push_back((y, d + 1));
                }
            }
        }
        dist
    }

    pub fn dist(&self, v: Vertex, u: Vertex) -> Distance {
        if v == u {
            return Distance::Finite(0);
        }
        self.distances_from(v)[u]
    }

    /// Every vertex within directed distance 2 of `v`, including `v`.
    pub fn ball2(&self, v: Vertex) -> VertexSet {
        let mut ball = VertexSet::new(self.n());
        ball.insert(v);
        for &x in self.out_neighbors(v) {
            ball.insert(x);
            for &y in self.out_neighbors(x) {
                ball.insert(y);
            }
        }
        ball
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        if self.check_set(set).is_err() {
            return false;
        }
        set.iter()
            .all(|x| self.out_neighbors(x).iter().all(|&y| !set.contains(y)))
    }

    /// Vertices not within distance 2 of any member of `set`.
    pub fn uncovered_by(&self, set: &VertexSet) -> VertexSet {
        let mut covered = VertexSet::new(self.n());
        for x in set.iter().filter(|&x| x < self.n()) {
            covered.union_with(&self.ball2(x));
        }
        let mut missing = VertexSet::new(self.n());
        for v in self.vertices().filter(|&v| !covered.contains(v)) {
            missing.insert(v);
        }
        missing
    }

    pub fn is_quasi_kernel(&self, set: &VertexSet) -> bool {
        self.is_independent(set) && self.uncovered_by(set).is_empty()
    }

    pub fn is_kernel(&self, set: &VertexSet) -> bool {
        self.is_independent(set)
            && self
                .vertices()
                .all(|v| set.contains(v) || self.in_neighbors(v).iter().any(|&w| set.contains(w)))
    }

    /// The induced subgraph on `V(D) \ X`, re-indexed densely in ascending order.
    pub fn induced_delete(&self, removed: &VertexSet) -> Result<(Digraph, IdMap), GraphError> {
        self.check_set(removed)?;
        let mut to_parent = Vec::with_capacity(self.n());
        let mut from_parent = vec![None; self.n()];
        for v in self.vertices().filter(|&v| !removed.contains(v)) {
            from_parent[v] = Some(to_parent.len());
            to_parent.push(v);
        }
        let k = to_parent.len();
        let mut out_adj = Vec::with_capacity(k);
        let mut in_adj = Vec::with_capacity(k);
        let mut edge_count = 0;
        for &old in &to_parent {
            let outs: Vec<Vertex> = self.out_adj[old]
                .iter()
                .filter_map(|&w| from_parent[w])
                .collect();
            let ins: Vec<Vertex> = self.in_adj[old]
                .iter()
                .filter_map(|&w| from_parent[w])
                .collect();
            edge_count += outs.len();
            out_adj.push(outs);
            in_adj.push(ins);
        }
        Ok((
            Digraph {
                out_adj,
                in_adj,
                edge_count,
            },
            IdMap {
                to_parent,
                from_parent,
            },
        ))
    }

    /// Graphviz rendering; members of `highlight` are filled.
    pub fn to_dot(&self, highlight: Option<&VertexSet>) -> String {
        let mut out = String::from("digraph D {\n");
        for v in self.vertices() {
            if highlight.is_some_and(|h| h.contains(v)) {
                out.push_str(&format!("  {v} [style=filled, fillcolor=lightblue];\n"));
            } else {
                out.push_str(&format!("  {v};\n"));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -> {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Digraph {
        Digraph::build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn set(n: usize, vs: &[Vertex]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn build_cycle_and_dedup() {
        let d = c4();
        assert_eq!(d.m(), 4);
        assert!(d
            .vertices()
            .all(|v| d.out_degree(v) == 1 && d.in_degree(v) == 1));

        let digon = Digraph::build(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(digon.m(), 2);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Digraph::build(3, [(0, 0)]).unwrap_err(),
            GraphError::LoopEdge(0)
        );
        assert_eq!(
            Digraph::build(3, [(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn sources_and_sinks() {
        let d = c4();
        assert!(d.sources().is_empty() && d.sinks().is_empty());
        let path = Digraph::build(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.sources().to_vec(), vec![0]);
        assert_eq!(path.sinks().to_vec(), vec![2]);
        assert_eq!(Digraph::empty(3).sources().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn s_and_t_on_cycle() {
        let d = c4();
        assert_eq!(d.s_of(&set(4, &[0])).unwrap().to_vec(), vec![2]);
        assert!(d.s_of(&set(4, &[0, 2])).unwrap().is_empty());
        assert!(d.t_of(&set(4, &[0])).unwrap().is_empty());
        assert!(d.t_of(&VertexSet::full(4)).unwrap().is_empty());
        assert!(matches!(
            d.s_of(&set(9, &[7])),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn distances() {
        let d = c4();
        assert_eq!(d.dist(0, 3), Distance::Finite(3));
        assert_eq!(d.dist(2, 2), Distance::Finite(0));
        let digons = Digraph::build(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert_eq!(digons.dist(0, 2), Distance::Infinite);
        assert!(Distance::Finite(usize::MAX) < Distance::Infinite);
    }

    #[test]
    fn balls() {
        assert_eq!(c4().ball2(0).to_vec(), vec![0, 1, 2]);
        let c3 = Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c3.ball2(0).to_vec(), vec![0, 1, 2]);
        assert_eq!(Digraph::empty(2).ball2(1).to_vec(), vec![1]);
    }

    #[test]
    fn independence_and_kernels() {
        let d = c4();
        assert!(d.is_independent(&set(4, &[0, 2])));
        assert!(!d.is_independent(&set(4, &[0, 1])));
        assert!(d.is_independent(&VertexSet::new(4)));

        assert!(d.is_quasi_kernel(&set(4, &[0, 2])));
        assert!(!d.is_quasi_kernel(&set(4, &[0])));
        assert!(!d.is_quasi_kernel(&set(4, &[0, 1])));

        assert!(d.is_kernel(&set(4, &[0, 2])));
        let c3 = Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        for v in 0..3 {
            assert!(!c3.is_kernel(&set(3, &[v])));
        }
        let edge = Digraph::build(2, [(0, 1)]).unwrap();
        assert!(edge.is_kernel(&set(2, &[0])));
        assert!(!edge.is_kernel(&set(2, &[1])));
    }

    #[test]
    fn induced_deletion() {
        let d = c4();
        let (h, map) = d.induced_delete(&set(4, &[0, 1])).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.to_parent(0), 2);
        assert_eq!(map.from_parent(3), Some(1));
        assert_eq!(map.from_parent(0), None);

        let (same, map) = d.induced_delete(&VertexSet::new(4)).unwrap();
        assert_eq!(same, d);
        assert_eq!(map, IdMap::identity(4));

        let (gone, _) = d.induced_delete(&VertexSet::full(4)).unwrap();
        assert_eq!(gone.n(), 0);
    }
}
