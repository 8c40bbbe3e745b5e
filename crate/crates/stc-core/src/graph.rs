//! Double-weighted multigraphs, cut shores, spanning trees and congestion.
//!
//! An edge carries a pair of weights `(light:heavy)`. When the edge crosses
//! the cut induced by some *other* tree edge it contributes its light weight;
//! when it is itself the tree edge inducing the cut it contributes its heavy
//! weight. Unit edges are `(1:1)`.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge {edge} out of range (graph has {count} edges)")]
    EdgeOutOfRange { edge: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid weight ({light}:{heavy}): need 1 <= light <= heavy")]
    InvalidWeight { light: u64, heavy: u64 },
    #[error("invalid shore: {0}")]
    InvalidShore(String),
    #[error("not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("edge {0} is not in the tree")]
    EdgeNotInTree(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least {0} vertices")]
    TooFewVertices(usize),
}

/// Light/heavy weight pair of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleWeight {
    light: u64,
    heavy: u64,
}

impl DoubleWeight {
    pub const UNIT: DoubleWeight = DoubleWeight { light: 1, heavy: 1 };

    pub fn new(light: u64, heavy: u64) -> Result<Self, GraphError> {
        if light == 0 || heavy < light {
            return Err(GraphError::InvalidWeight { light, heavy });
        }
        Ok(DoubleWeight { light, heavy })
    }

    /// `(c:c)`, equivalent to `c` parallel unit edges.
    pub fn uniform(c: u64) -> Result<Self, GraphError> {
        Self::new(c, c)
    }

    pub fn light(self) -> u64 {
        self.light
    }

    pub fn heavy(self) -> u64 {
        self.heavy
    }

    pub fn is_unit(self) -> bool {
        self == Self::UNIT
    }

    pub fn is_uniform(self) -> bool {
        self.light == self.heavy
    }
}

impl fmt::Display for DoubleWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.light, self.heavy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: DoubleWeight,
}

impl Edge {
    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn has_endpoint(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn crosses(&self, side: &FixedBitSet) -> bool {
        side.contains(self.u) != side.contains(self.v)
    }
}

/// Undirected multigraph with double weights. Edge identity is list position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleWeightedGraph {
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    vertex_labels: Vec<Option<String>>,
    edge_labels: Vec<Option<String>>,
}

impl DoubleWeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        DoubleWeightedGraph {
            edges: Vec::new(),
            incidence: vec![Vec::new(); vertex_count],
            vertex_labels: vec![None; vertex_count],
            edge_labels: Vec::new(),
        }
    }

    /// Builds a graph of unit edges.
    pub fn from_unit_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v, DoubleWeight::UNIT)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.incidence.push(Vec::new());
        self.vertex_labels.push(None);
        self.incidence.len() - 1
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> usize {
        let v = self.add_vertex();
        self.vertex_labels[v] = Some(label.into());
        v
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: DoubleWeight) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, weight });
        self.edge_labels.push(None);
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        Ok(id)
    }

    pub fn add_unit_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        self.add_edge(u, v, DoubleWeight::UNIT)
    }

    pub fn set_vertex_label(&mut self, v: usize, label: impl Into<String>) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.vertex_labels[v] = Some(label.into());
        Ok(())
    }

    pub fn set_edge_label(&mut self, e: usize, label: impl Into<String>) -> Result<(), GraphError> {
        self.check_edge(e)?;
        self.edge_labels[e] = Some(label.into());
        Ok(())
    }

    pub fn vertex_label(&self, v: usize) -> Option<&str> {
        self.vertex_labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn edge_label(&self, e: usize) -> Option<&str> {
        self.edge_labels.get(e).and_then(|l| l.as_deref())
    }

    /// Finds the vertex carrying exactly this label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Indices of the edges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Distinct neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.incidence[v].iter().map(|&e| self.edges[e].other(v)).collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, count: self.vertex_count() })
        }
    }

    pub fn check_edge(&self, e: usize) -> Result<(), GraphError> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(GraphError::EdgeOutOfRange { edge: e, count: self.edge_count() })
        }
    }

    /// Sum of light weights of the edges at `v`.
    pub fn weighted_degree(&self, v: usize) -> Result<u64, GraphError> {
        self.check_vertex(v)?;
        Ok(self.incidence[v].iter().map(|&e| self.edges[e].weight.light()).sum())
    }

    pub fn max_weighted_degree(&self) -> u64 {
        (0..self.vertex_count())
            .map(|v| self.incidence[v].iter().map(|&e| self.edges[e].weight.light()).sum())
            .max()
            .unwrap_or(0)
    }

    /// Every edge has `light == heavy`.
    pub fn is_canonical(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_uniform())
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_unit())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(x) = stack.pop() {
            for &e in &self.incidence[x] {
                let y = self.edges[e].other(x);
                if !seen.put(y) {
                    stack.push(y);
                }
            }
        }
        seen.count_ones(..) == n
    }

    /// Lowest-index edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incidence
            .get(u)?
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .min()
    }

    /// Relabels vertex `v` as `perm[v]`, keeping edge order.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.vertex_count();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(GraphError::InvalidShore("not a permutation".into()));
        }
        let mut g = Self::new(n);
        for e in &self.edges {
            g.add_edge(perm[e.u], perm[e.v], e.weight)?;
        }
        Ok(g)
    }

    /// Replaces each `(c:c)` edge by `c` parallel unit edges.
    pub fn split_uniform_edges(&self) -> Self {
        let mut g = Self::new(self.vertex_count());
        g.vertex_labels = self.vertex_labels.clone();
        for e in &self.edges {
            let copies = if e.weight.is_uniform() { e.weight.light() } else { 1 };
            let w = if e.weight.is_uniform() { DoubleWeight::UNIT } else { e.weight };
            for _ in 0..copies {
                g.add_edge(e.u, e.v, w).expect("endpoints already validated");
            }
        }
        g
    }
}

/// A nonempty proper vertex subset, one side of a cut.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutShore(FixedBitSet);

impl CutShore {
    pub fn new(vertex_count: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut set = FixedBitSet::with_capacity(vertex_count);
        for v in vertices {
            if v >= vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: v, count: vertex_count });
            }
            set.insert(v);
        }
        Self::from_bitset(set)
    }

    pub fn from_bitset(set: FixedBitSet) -> Result<Self, GraphError> {
        if set.is_clear() {
            return Err(GraphError::InvalidShore("shore is empty".into()));
        }
        if set.is_full() {
            return Err(GraphError::InvalidShore("shore is the whole vertex set".into()));
        }
        Ok(CutShore(set))
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn complement(&self) -> CutShore {
        let mut c = self.0.clone();
        c.toggle_range(..);
        CutShore(c)
    }

    /// The side of this cut that does not contain `v`.
    pub fn excluding(&self, v: usize) -> CutShore {
        if self.contains(v) {
            self.complement()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for CutShore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

fn check_shore(g: &DoubleWeightedGraph, x: &CutShore) -> Result<(), GraphError> {
    if x.vertex_count() != g.vertex_count() {
        return Err(GraphError::InvalidShore(format!(
            "shore built for {} vertices, graph has {}",
            x.vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Edges with exactly one endpoint in `x`, ascending.
pub fn cut_edges(g: &DoubleWeightedGraph, x: &CutShore) -> Result<Vec<usize>, GraphError> {
    check_shore(g, x)?;
    Ok(bitset_cut_edges(g, x.as_bitset()))
}

pub(crate) fn bitset_cut_edges(g: &DoubleWeightedGraph, side: &FixedBitSet) -> Vec<usize> {
    (0..g.edge_count()).filter(|&e| g.edge(e).crosses(side)).collect()
}

/// Light weight of the cut around `x`.
pub fn weighted_cut_size(g: &DoubleWeightedGraph, x: &CutShore) -> Result<u64, GraphError> {
    check_shore(g, x)?;
    Ok(bitset_cut_size(g, x.as_bitset()))
}

pub(crate) fn bitset_cut_size(g: &DoubleWeightedGraph, side: &FixedBitSet) -> u64 {
    g.edges().iter().filter(|e| e.crosses(side)).map(|e| e.weight.light()).sum()
}

/// Edge subset of a graph forming a spanning tree. Indices are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    edges: Vec<usize>,
}

impl SpanningTree {
    pub fn new(g: &DoubleWeightedGraph, edges: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut edges: Vec<usize> = edges.into_iter().collect();
        edges.sort_unstable();
        let n = g.vertex_count();
        if n == 0 {
            return Err(GraphError::TooFewVertices(1));
        }
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::NotASpanningTree("repeated edge index".into()));
        }
        for &e in &edges {
            g.check_edge(e)?;
        }
        if edges.len() != n - 1 {
            return Err(GraphError::NotASpanningTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut uf = UnionFind::new(n);
        for &e in &edges {
            let ed = g.edge(e);
            if !uf.union(ed.u, ed.v) {
                return Err(GraphError::NotASpanningTree(format!("edge {e} closes a cycle")));
            }
        }
        Ok(SpanningTree { edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Tree rooted at vertex 0 with preorder intervals, so the shore below any
/// tree edge is an interval test.
struct RootedTree {
    /// Tree edge towards the parent, per vertex.
    parent_edge: Vec<Option<usize>>,
    enter: Vec<usize>,
    exit: Vec<usize>,
}

impl RootedTree {
    fn new(g: &DoubleWeightedGraph, t: &SpanningTree) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for &e in t.edges() {
            let ed = g.edge(e);
            adj[ed.u].push(e);
            adj[ed.v].push(e);
        }
        let mut parent_edge = vec![None; n];
        let mut enter = vec![0; n];
        let mut exit = vec![0; n];
        let mut clock = 0;
        // (vertex, next adjacency slot)
        let mut stack = vec![(0usize, 0usize)];
        enter[0] = 0;
        clock += 1;
        while let Some(top) = stack.last_mut() {
            let (x, slot) = *top;
            if slot < adj[x].len() {
                let e = adj[x][slot];
                top.1 += 1;
                if parent_edge[x] == Some(e) {
                    continue;
                }
                let y = g.edge(e).other(x);
                parent_edge[y] = Some(e);
                enter[y] = clock;
                clock += 1;
                stack.push((y, 0));
            } else {
                exit[x] = clock;
                stack.pop();
            }
        }
        RootedTree { parent_edge, enter, exit }
    }

    fn below(&self, child: usize, x: usize) -> bool {
        self.enter[child] <= self.enter[x] && self.enter[x] < self.exit[child]
    }

    /// The endpoint of tree edge `e` farther from the root.
    fn child_of(&self, g: &DoubleWeightedGraph, e: usize) -> usize {
        let ed = g.edge(e);
        if self.parent_edge[ed.u] == Some(e) {
            ed.u
        } else {
            ed.v
        }
    }
}

/// Components of `T − e`: first the side holding `e.u`, then the side holding `e.v`.
pub fn tree_shores(
    g: &DoubleWeightedGraph,
    t: &SpanningTree,
    e: usize,
) -> Result<(CutShore, CutShore), GraphError> {
    if !t.contains(e) {
        return Err(GraphError::EdgeNotInTree(e));
    }
    let rooted = RootedTree::new(g, t);
    let child = rooted.child_of(g, e);
    let mut below = FixedBitSet::with_capacity(g.vertex_count());
    for x in 0..g.vertex_count() {
        if rooted.below(child, x) {
            below.insert(x);
        }
    }
    let below = CutShore::from_bitset(below)?;
    if below.contains(g.edge(e).u) {
        let other = below.complement();
        Ok((below, other))
    } else {
        Ok((below.complement(), below))
    }
}

/// Heavy weight of `e` plus the light weights of every other edge crossing
/// the cut that `e` induces in `t`.
pub fn edge_congestion(g: &DoubleWeightedGraph, t: &SpanningTree, e: usize) -> Result<u64, GraphError> {
    if !t.contains(e) {
        return Err(GraphError::EdgeNotInTree(e));
    }
    let rooted = RootedTree::new(g, t);
    Ok(congestion_below(g, &rooted, e))
}

fn congestion_below(g: &DoubleWeightedGraph, rooted: &RootedTree, e: usize) -> u64 {
    let child = rooted.child_of(g, e);
    let mut total = g.edge(e).weight.heavy();
    for (i, ed) in g.edges().iter().enumerate() {
        if i != e && rooted.below(child, ed.u) != rooted.below(child, ed.v) {
            total += ed.weight.light();
        }
    }
    total
}

/// Congestion of every tree edge, in the tree's edge order.
pub fn edge_congestions(g: &DoubleWeightedGraph, t: &SpanningTree) -> Vec<(usize, u64)> {
    let rooted = RootedTree::new(g, t);
    t.edges().iter().map(|&e| (e, congestion_below(g, &rooted, e))).collect()
}

/// Maximum edge congestion of `t`; 0 for a single vertex.
pub fn tree_congestion(g: &DoubleWeightedGraph, t: &SpanningTree) -> u64 {
    edge_congestions(g, t).into_iter().map(|(_, c)| c).max().unwrap_or(0)
}

/// Minimum light-weight cut value (Stoer–Wagner). 0 when disconnected.
pub fn edge_connectivity(g: &DoubleWeightedGraph) -> Result<u64, GraphError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(GraphError::TooFewVertices(2));
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut w = vec![vec![0u64; n]; n];
    for e in g.edges() {
        w[e.u][e.v] += e.weight.light();
        w[e.v][e.u] += e.weight.light();
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let k = active.len();
        let mut added = vec![false; k];
        let mut key = vec![0u64; k];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..k {
            let mut pick = usize::MAX;
            for i in 0..k {
                if !added[i] && (pick == usize::MAX || key[i] > key[pick]) {
                    pick = i;
                }
            }
            added[pick] = true;
            if step == k - 1 {
                best = best.min(key[pick]);
                last = pick;
            } else {
                prev = pick;
                for i in 0..k {
                    if !added[i] {
                        key[i] += w[active[pick]][active[i]];
                    }
                }
            }
        }
        let (s, t) = (active[prev], active[last]);
        for &x in &active {
            w[s][x] += w[t][x];
            w[x][s] = w[s][x];
        }
        w[s][s] = 0;
        active.remove(last);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> DoubleWeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        DoubleWeightedGraph::from_unit_edges(n, &edges).unwrap()
    }

    fn clique(n: usize) -> DoubleWeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        DoubleWeightedGraph::from_unit_edges(n, &edges).unwrap()
    }

    /// Oracle: the shore and its complement, counted by scanning every edge.
    fn brute_cut(g: &DoubleWeightedGraph, mask: u32) -> (Vec<usize>, u64) {
        let inside = |v: usize| mask >> v & 1 == 1;
        let mut es = Vec::new();
        let mut w = 0;
        for (i, e) in g.edges().iter().enumerate() {
            if inside(e.u) ^ inside(e.v) {
                es.push(i);
                w += e.weight.light();
            }
        }
        (es, w)
    }

    #[test]
    fn weights_reject_bad_order() {
        assert!(DoubleWeight::new(0, 1).is_err());
        assert!(DoubleWeight::new(3, 2).is_err());
        assert!(DoubleWeight::new(2, 5).is_ok());
        assert!(DoubleWeight::UNIT.is_unit());
    }

    #[test]
    fn rejects_self_loops_and_bad_vertices() {
        let mut g = DoubleWeightedGraph::new(2);
        assert_eq!(g.add_unit_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.add_unit_edge(0, 2), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn triangle_trivial_cut() {
        let g = cycle(3);
        let x = CutShore::new(3, [0]).unwrap();
        let es = cut_edges(&g, &x).unwrap();
        let ends: Vec<_> = es.iter().map(|&e| (g.edge(e).u, g.edge(e).v)).collect();
        assert_eq!(ends, vec![(0, 1), (2, 0)]);
        assert_eq!(weighted_cut_size(&g, &x).unwrap(), 2);
    }

    #[test]
    fn path_bridge_cut() {
        let g = DoubleWeightedGraph::from_unit_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let x = CutShore::new(3, [0, 1]).unwrap();
        assert_eq!(cut_edges(&g, &x).unwrap(), vec![1]);
    }

    #[test]
    fn four_cycle_cuts_match_brute_force() {
        let g = cycle(4);
        for mask in 1u32..15 {
            let x = CutShore::new(4, (0..4).filter(|v| mask >> v & 1 == 1)).unwrap();
            let (es, w) = brute_cut(&g, mask);
            assert_eq!(cut_edges(&g, &x).unwrap(), es);
            assert_eq!(weighted_cut_size(&g, &x).unwrap(), w);
            assert_eq!(cut_edges(&g, &x.complement()).unwrap(), es);
        }
        let x = CutShore::new(4, [0, 1]).unwrap();
        assert_eq!(cut_edges(&g, &x).unwrap().len(), 2);
    }

    #[test]
    fn shores_must_be_proper() {
        assert!(CutShore::new(3, []).is_err());
        assert!(CutShore::new(3, [0, 1, 2]).is_err());
        assert!(CutShore::new(3, [3]).is_err());
    }

    #[test]
    fn light_weight_counts_in_cuts() {
        let mut g = DoubleWeightedGraph::new(2);
        g.add_edge(0, 1, DoubleWeight::new(2, 5).unwrap()).unwrap();
        let x = CutShore::new(2, [0]).unwrap();
        assert_eq!(weighted_cut_size(&g, &x).unwrap(), 2);
        assert_eq!(g.weighted_degree(0).unwrap(), 2);
    }

    #[test]
    fn isolated_vertex_degree_zero() {
        let g = DoubleWeightedGraph::new(3);
        assert_eq!(g.weighted_degree(2).unwrap(), 0);
        assert!(g.weighted_degree(3).is_err());
    }

    #[test]
    fn heavy_weight_counts_for_the_tree_edge() {
        let mut g = DoubleWeightedGraph::new(2);
        g.add_edge(0, 1, DoubleWeight::new(1, 7).unwrap()).unwrap();
        let t = SpanningTree::new(&g, [0]).unwrap();
        assert_eq!(edge_congestion(&g, &t, 0).unwrap(), 7);
        assert_eq!(tree_congestion(&g, &t), 7);
    }

    #[test]
    fn clique_star_congestion() {
        for n in 3..=7 {
            let g = clique(n);
            // star at 0: edges (0,i) are the first n-1 edges
            let t = SpanningTree::new(&g, 0..n - 1).unwrap();
            assert_eq!(edge_congestion(&g, &t, 0).unwrap(), (n - 1) as u64);
        }
    }

    #[test]
    fn star_and_path_shores() {
        let g = DoubleWeightedGraph::from_unit_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = SpanningTree::new(&g, [0, 1, 2]).unwrap();
        let (a, b) = tree_shores(&g, &t, 1).unwrap();
        assert_eq!(a.vertices().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(b.vertices().collect::<Vec<_>>(), vec![2]);

        let p = DoubleWeightedGraph::from_unit_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = SpanningTree::new(&p, [0, 1, 2]).unwrap();
        let (a, b) = tree_shores(&p, &t, 1).unwrap();
        assert_eq!(a.vertices().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(b.vertices().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(tree_congestion(&p, &t), 1);
    }

    #[test]
    fn tree_validation() {
        let g = cycle(4);
        assert!(SpanningTree::new(&g, [0, 1]).is_err());
        assert!(SpanningTree::new(&g, [0, 0, 1]).is_err());
        assert!(SpanningTree::new(&g, [0, 1, 9]).is_err());
        let mut h = DoubleWeightedGraph::new(3);
        h.add_unit_edge(0, 1).unwrap();
        h.add_unit_edge(0, 1).unwrap();
        h.add_unit_edge(1, 2).unwrap();
        assert!(SpanningTree::new(&h, [0, 1]).is_err());
        let t = SpanningTree::new(&g, [0, 1, 2]).unwrap();
        assert_eq!(edge_congestion(&g, &t, 3), Err(GraphError::EdgeNotInTree(3)));
    }

    #[test]
    fn cycle_trees_have_congestion_two() {
        let g = cycle(6);
        let t = SpanningTree::new(&g, [0, 1, 2, 3, 4]).unwrap();
        assert_eq!(tree_congestion(&g, &t), 2);
    }

    #[test]
    fn connectivity_small_cases() {
        assert_eq!(edge_connectivity(&cycle(5)).unwrap(), 2);
        assert_eq!(edge_connectivity(&clique(4)).unwrap(), 3);
        let g = DoubleWeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&g).unwrap(), 0);
        assert!(edge_connectivity(&DoubleWeightedGraph::new(1)).is_err());
    }

    #[test]
    fn uniform_weight_matches_parallel_edges() {
        let mut a = DoubleWeightedGraph::new(3);
        a.add_edge(0, 1, DoubleWeight::uniform(3).unwrap()).unwrap();
        a.add_unit_edge(1, 2).unwrap();
        a.add_unit_edge(2, 0).unwrap();
        let b = a.split_uniform_edges();
        assert_eq!(b.edge_count(), 5);
        assert_eq!(edge_connectivity(&a).unwrap(), edge_connectivity(&b).unwrap());
        for mask in 1u32..7 {
            assert_eq!(brute_cut(&a, mask).1, brute_cut(&b, mask).1);
        }
    }
}
