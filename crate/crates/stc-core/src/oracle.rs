//! Exact spanning-tree congestion by exhaustive branch and bound.
//!
//! Trees are grown Prim-style from a root vertex. At every node the search
//! branches on the lowest-index edge leaving the partial tree: first taking
//! it, then forbidding it. This fixes a canonical order on spanning trees,
//! shared by [`enumerate_spanning_trees`] and the optimizing searches.
//!
//! For a partial tree edge `e` with `A` on the root side and `B` below it,
//! every completion induces a cut separating `A` from `B`, so
//! `heavy(e) + maxflow_{G-e}(A, B)` bounds its final congestion from below.
//! Once nothing can attach to `B` any more the bound is the exact value.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{edge_congestions, DoubleWeightedGraph, GraphError, SpanningTree};

/// Default cap on search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("gates must be two distinct vertices")]
    SameGates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: u64,
    /// Worker count; 1 keeps everything on the calling thread.
    pub jobs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: DEFAULT_NODE_BUDGET, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StcResult {
    pub value: u64,
    pub witness: SpanningTree,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Lazily yields every spanning tree once, in canonical order.
pub struct SpanningTrees<'g> {
    g: &'g DoubleWeightedGraph,
    stack: Vec<Frame>,
    disconnected: bool,
}

#[derive(Clone)]
struct Frame {
    in_tree: FixedBitSet,
    excluded: FixedBitSet,
    tree: Vec<usize>,
}

impl SpanningTrees<'_> {
    /// True when the graph had no spanning tree because it is disconnected.
    pub fn is_disconnected(&self) -> bool {
        self.disconnected
    }
}

impl Iterator for SpanningTrees<'_> {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        let n = self.g.vertex_count();
        while let Some(mut f) = self.stack.pop() {
            if f.tree.len() + 1 == n {
                let t = SpanningTree::new(self.g, f.tree).expect("search only builds trees");
                return Some(t);
            }
            let Some(e) = branch_edge(self.g, &f.in_tree, &f.excluded) else {
                continue;
            };
            let mut skip = f.clone();
            skip.excluded.insert(e);
            if spans(self.g, &skip.in_tree, &skip.excluded) {
                self.stack.push(skip);
            }
            let ed = self.g.edge(e);
            let x = if f.in_tree.contains(ed.u) { ed.v } else { ed.u };
            f.in_tree.insert(x);
            f.tree.push(e);
            self.stack.push(f);
        }
        None
    }
}

pub fn enumerate_spanning_trees(g: &DoubleWeightedGraph) -> SpanningTrees<'_> {
    let n = g.vertex_count();
    let disconnected = n == 0 || !g.is_connected();
    let mut stack = Vec::new();
    if !disconnected {
        let mut in_tree = FixedBitSet::with_capacity(n);
        in_tree.insert(0);
        stack.push(Frame { in_tree, excluded: FixedBitSet::with_capacity(g.edge_count()), tree: Vec::new() });
    }
    SpanningTrees { g, stack, disconnected }
}

fn branch_edge(g: &DoubleWeightedGraph, in_tree: &FixedBitSet, excluded: &FixedBitSet) -> Option<usize> {
    g.edges()
        .iter()
        .enumerate()
        .find(|(i, e)| !excluded.contains(*i) && e.crosses(in_tree))
        .map(|(i, _)| i)
}

/// Whether the edges not yet forbidden still connect every vertex.
fn spans(g: &DoubleWeightedGraph, in_tree: &FixedBitSet, excluded: &FixedBitSet) -> bool {
    let n = g.vertex_count();
    let mut seen = in_tree.clone();
    let mut stack: Vec<usize> = in_tree.ones().collect();
    while let Some(x) = stack.pop() {
        for &e in g.incident(x) {
            if excluded.contains(e) {
                continue;
            }
            let y = g.edge(e).other(x);
            if !seen.put(y) {
                stack.push(y);
            }
        }
    }
    seen.count_ones(..) == n
}

/// Shared node counter so parallel workers respect one budget.
struct Budget {
    limit: u64,
    used: AtomicU64,
    blown: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), blown: AtomicBool::new(false) }
    }

    fn tick(&self) -> Result<(), OracleError> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.limit || self.blown.load(Ordering::Relaxed) {
            self.blown.store(true, Ordering::Relaxed);
            return Err(OracleError::BudgetExceeded(self.limit));
        }
        Ok(())
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

enum Goal<'a> {
    /// Smallest congestion; the first optimum in canonical order wins.
    Minimize { best: Option<(u64, Vec<usize>)>, shared: &'a AtomicU64 },
    /// Any tree of congestion at most `k`.
    AtMost { k: u64, found: Option<Vec<usize>>, stop: Option<(&'a AtomicUsize, usize)> },
    /// A tree whose `root`–`target` path has every congestion below `w`.
    CalmPath { target: usize, w: u64, found: Option<Vec<usize>> },
}

#[derive(Clone)]
struct Snapshot {
    in_tree: FixedBitSet,
    excluded: FixedBitSet,
    /// Vertices in the order they joined; `order[0]` is the root.
    order: Vec<usize>,
    parent_edge: Vec<usize>,
}

const NONE: usize = usize::MAX;

struct Search<'g> {
    g: &'g DoubleWeightedGraph,
    n: usize,
    s: Snapshot,
    net: FlowNetwork,
    below: Vec<FixedBitSet>,
    open: Vec<bool>,
    budget: &'g Budget,
}

impl<'g> Search<'g> {
    fn new(g: &'g DoubleWeightedGraph, root: usize, budget: &'g Budget) -> Self {
        let n = g.vertex_count();
        let mut in_tree = FixedBitSet::with_capacity(n);
        in_tree.insert(root);
        let s = Snapshot {
            in_tree,
            excluded: FixedBitSet::with_capacity(g.edge_count()),
            order: vec![root],
            parent_edge: vec![NONE; n],
        };
        Self::resume(g, s, budget)
    }

    fn resume(g: &'g DoubleWeightedGraph, s: Snapshot, budget: &'g Budget) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            n,
            s,
            net: FlowNetwork::new(g),
            below: vec![FixedBitSet::with_capacity(n); n],
            open: vec![false; n],
            budget,
        }
    }

    fn tree_edges(&self) -> Vec<usize> {
        self.s.order[1..].iter().map(|&x| self.s.parent_edge[x]).collect()
    }

    fn include(&mut self, e: usize) -> usize {
        let ed = self.g.edge(e);
        let x = if self.s.in_tree.contains(ed.u) { ed.v } else { ed.u };
        self.s.in_tree.insert(x);
        self.s.parent_edge[x] = e;
        self.s.order.push(x);
        x
    }

    fn retract(&mut self, x: usize) {
        self.s.in_tree.set(x, false);
        self.s.parent_edge[x] = NONE;
        self.s.order.pop();
    }

    /// Fills `below[x]` (tree vertices under `x`) and `open[x]` (whether
    /// anything may still attach under `x`) for every tree vertex.
    fn refresh_subtrees(&mut self) {
        for &x in &self.s.order {
            self.below[x].clear();
            self.below[x].insert(x);
            self.open[x] = self.g.incident(x).iter().any(|&e| {
                !self.s.excluded.contains(e) && !self.s.in_tree.contains(self.g.edge(e).other(x))
            });
        }
        for i in (1..self.s.order.len()).rev() {
            let x = self.s.order[i];
            let p = self.g.edge(self.s.parent_edge[x]).other(x);
            let (lo, hi) = if p < x { self.below.split_at_mut(x) } else { self.below.split_at_mut(p) };
            let (px, xx) = if p < x { (&mut lo[p], &hi[0]) } else { (&mut hi[0], &lo[x]) };
            px.union_with(xx);
            self.open[p] |= self.open[x];
        }
    }

    /// Whether the tree edge above `x` must end with congestion above `limit`.
    /// Needs a fresh [`Self::refresh_subtrees`].
    fn forced_above(&mut self, x: usize, limit: u64) -> bool {
        let e = self.s.parent_edge[x];
        let heavy = self.g.edge(e).weight.heavy();
        if heavy > limit {
            return true;
        }
        let b = &self.below[x];
        if !self.open[x] {
            let mut total = heavy;
            for (i, ed) in self.g.edges().iter().enumerate() {
                if i != e && ed.crosses(b) {
                    total += ed.weight.light();
                }
            }
            return total > limit;
        }
        let mut a = self.s.in_tree.clone();
        a.difference_with(b);
        let room = limit - heavy;
        self.net.flow(&a, b, Some(e), room) > room
    }

    fn prune(&mut self, goal: &Goal) -> bool {
        match goal {
            Goal::Minimize { best, shared } => {
                let local = best.as_ref().map_or(u64::MAX, |(v, _)| v - 1);
                let limit = local.min(shared.load(Ordering::Relaxed));
                self.any_forced_above(limit)
            }
            Goal::AtMost { k, stop, .. } => {
                if let Some((flag, me)) = stop {
                    if flag.load(Ordering::Relaxed) < *me {
                        return true;
                    }
                }
                self.any_forced_above(*k)
            }
            Goal::CalmPath { target, w, .. } => {
                if !self.s.in_tree.contains(*target) {
                    return false;
                }
                self.refresh_subtrees();
                let mut x = *target;
                while self.s.parent_edge[x] != NONE {
                    if self.forced_above(x, w - 1) {
                        return true;
                    }
                    x = self.g.edge(self.s.parent_edge[x]).other(x);
                }
                false
            }
        }
    }

    fn any_forced_above(&mut self, limit: u64) -> bool {
        if limit == u64::MAX {
            return false;
        }
        self.refresh_subtrees();
        // Newest edges first: they are the ones whose shores just changed most.
        for i in (1..self.s.order.len()).rev() {
            let x = self.s.order[i];
            if self.forced_above(x, limit) {
                return true;
            }
        }
        false
    }

    fn leaf(&self, goal: &mut Goal) -> ControlFlow<()> {
        let edges = self.tree_edges();
        let tree = SpanningTree::new(self.g, edges.iter().copied()).expect("search only builds trees");
        let congestions = edge_congestions(self.g, &tree);
        match goal {
            Goal::Minimize { best, shared } => {
                let value = congestions.iter().map(|&(_, c)| c).max().unwrap_or(0);
                if best.as_ref().is_none_or(|(v, _)| value < *v) {
                    *best = Some((value, edges));
                    // A later tree of equal value cannot displace this one, so
                    // other workers may prune anything strictly worse.
                    shared.fetch_min(value, Ordering::Relaxed);
                }
                ControlFlow::Continue(())
            }
            Goal::AtMost { k, found, .. } => {
                if congestions.iter().all(|&(_, c)| c <= *k) {
                    *found = Some(edges);
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            }
            Goal::CalmPath { target, w, found } => {
                let mut x = *target;
                while self.s.parent_edge[x] != NONE {
                    let e = self.s.parent_edge[x];
                    let c = congestions.iter().find(|&&(te, _)| te == e).map(|&(_, c)| c).unwrap_or(0);
                    if c >= *w {
                        return ControlFlow::Continue(());
                    }
                    x = self.g.edge(e).other(x);
                }
                *found = Some(edges);
                ControlFlow::Break(())
            }
        }
    }

    fn explore(&mut self, goal: &mut Goal) -> Result<ControlFlow<()>, OracleError> {
        self.budget.tick()?;
        if self.s.order.len() == self.n {
            return Ok(self.leaf(goal));
        }
        if self.prune(goal) {
            return Ok(ControlFlow::Continue(()));
        }
        let Some(e) = branch_edge(self.g, &self.s.in_tree, &self.s.excluded) else {
            return Ok(ControlFlow::Continue(()));
        };
        let x = self.include(e);
        let flow = self.explore(goal)?;
        self.retract(x);
        if flow.is_break() {
            return Ok(flow);
        }
        self.s.excluded.insert(e);
        let flow = if spans(self.g, &self.s.in_tree, &self.s.excluded) {
            self.explore(goal)?
        } else {
            ControlFlow::Continue(())
        };
        self.s.excluded.set(e, false);
        Ok(flow)
    }

    /// Unpruned states at `depth` branchings, in canonical order.
    fn frontier(&mut self, depth: usize, out: &mut Vec<Snapshot>) {
        if depth == 0 || self.s.order.len() == self.n {
            out.push(self.s.clone());
            return;
        }
        let Some(e) = branch_edge(self.g, &self.s.in_tree, &self.s.excluded) else {
            return;
        };
        let x = self.include(e);
        self.frontier(depth - 1, out);
        self.retract(x);
        self.s.excluded.insert(e);
        if spans(self.g, &self.s.in_tree, &self.s.excluded) {
            self.frontier(depth - 1, out);
        }
        self.s.excluded.set(e, false);
    }
}

fn check_searchable(g: &DoubleWeightedGraph) -> Result<(), OracleError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::TooFewVertices(1).into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    Ok(())
}

/// Splits the search into enough canonical-order pieces to feed `jobs` workers.
fn split(g: &DoubleWeightedGraph, budget: &Budget, jobs: usize) -> Vec<Snapshot> {
    let want = jobs * 8;
    let mut depth = 1;
    loop {
        let mut out = Vec::new();
        Search::new(g, 0, budget).frontier(depth, &mut out);
        if out.len() >= want || depth >= g.edge_count() {
            return out;
        }
        depth += 1;
    }
}

/// Minimum congestion over all spanning trees, with the first optimal tree in
/// canonical order as witness.
pub fn stc_exact(g: &DoubleWeightedGraph) -> Result<StcResult, OracleError> {
    stc_exact_with(g, SearchLimits::default())
}

pub fn stc_exact_with(g: &DoubleWeightedGraph, limits: SearchLimits) -> Result<StcResult, OracleError> {
    check_searchable(g)?;
    let budget = Budget::new(limits.node_budget);
    let shared = AtomicU64::new(u64::MAX);
    let best = if limits.jobs <= 1 {
        let mut goal = Goal::Minimize { best: None, shared: &shared };
        let _ = Search::new(g, 0, &budget).explore(&mut goal)?;
        match goal {
            Goal::Minimize { best, .. } => best,
            _ => unreachable!(),
        }
    } else {
        let pieces = split(g, &budget, limits.jobs);
        let results: Vec<Option<(u64, Vec<usize>)>> = pool(limits.jobs).install(|| {
            pieces
                .into_par_iter()
                .map(|snap| {
                    let mut goal = Goal::Minimize { best: None, shared: &shared };
                    let _ = Search::resume(g, snap, &budget).explore(&mut goal)?;
                    match goal {
                        Goal::Minimize { best, .. } => Ok(best),
                        _ => unreachable!(),
                    }
                })
                .collect::<Result<_, OracleError>>()
        })?;
        // Pieces are in canonical order, so the first minimal piece holds the
        // canonical witness.
        results.into_iter().flatten().fold(None, |acc: Option<(u64, Vec<usize>)>, cur| match acc {
            Some(a) if a.0 <= cur.0 => Some(a),
            _ => Some(cur),
        })
    };
    let (value, edges) = best.expect("a connected graph has a spanning tree");
    Ok(StcResult { value, witness: SpanningTree::new(g, edges)?, nodes: budget.used() })
}

/// Some spanning tree has congestion at most `k`; returns the first such tree
/// in canonical order.
pub fn stc_decide(g: &DoubleWeightedGraph, k: u64) -> Result<Option<SpanningTree>, OracleError> {
    stc_decide_with(g, k, SearchLimits::default())
}

pub fn stc_decide_with(
    g: &DoubleWeightedGraph,
    k: u64,
    limits: SearchLimits,
) -> Result<Option<SpanningTree>, OracleError> {
    check_searchable(g)?;
    let budget = Budget::new(limits.node_budget);
    let found = if limits.jobs <= 1 {
        let mut goal = Goal::AtMost { k, found: None, stop: None };
        let _ = Search::new(g, 0, &budget).explore(&mut goal)?;
        match goal {
            Goal::AtMost { found, .. } => found,
            _ => unreachable!(),
        }
    } else {
        let pieces = split(g, &budget, limits.jobs);
        let earliest = AtomicUsize::new(usize::MAX);
        let results: Vec<Option<Vec<usize>>> = pool(limits.jobs).install(|| {
            pieces
                .into_par_iter()
                .enumerate()
                .map(|(i, snap)| {
                    let mut goal = Goal::AtMost { k, found: None, stop: Some((&earliest, i)) };
                    let _ = Search::resume(g, snap, &budget).explore(&mut goal)?;
                    match goal {
                        Goal::AtMost { found, .. } => {
                            if found.is_some() {
                                earliest.fetch_min(i, Ordering::Relaxed);
                            }
                            Ok(found)
                        }
                        _ => unreachable!(),
                    }
                })
                .collect::<Result<_, OracleError>>()
        })?;
        results.into_iter().flatten().next()
    };
    found.map(|edges| SpanningTree::new(g, edges)).transpose().map_err(Into::into)
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

/// True iff in every spanning tree the `s`–`t` path has an edge of
/// congestion at least `w`.
pub fn bottleneck_path_property(g: &DoubleWeightedGraph, s: usize, t: usize, w: u64) -> Result<bool, OracleError> {
    bottleneck_path_property_with(g, s, t, w, SearchLimits::default())
}

pub fn bottleneck_path_property_with(
    g: &DoubleWeightedGraph,
    s: usize,
    t: usize,
    w: u64,
    limits: SearchLimits,
) -> Result<bool, OracleError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(OracleError::SameGates);
    }
    check_searchable(g)?;
    if w == 0 {
        return Ok(true);
    }
    let budget = Budget::new(limits.node_budget);
    let mut goal = Goal::CalmPath { target: t, w, found: None };
    let _ = Search::new(g, s, &budget).explore(&mut goal)?;
    match goal {
        Goal::CalmPath { found, .. } => Ok(found.is_none()),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tree_congestion;

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

    /// Oracle: every (n-1)-subset of edges that forms a tree.
    fn all_trees_by_subsets(g: &DoubleWeightedGraph) -> Vec<SpanningTree> {
        let m = g.edge_count();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize + 1 != g.vertex_count() {
                continue;
            }
            if let Ok(t) = SpanningTree::new(g, (0..m).filter(|i| mask >> i & 1 == 1)) {
                out.push(t);
            }
        }
        out
    }

    #[test]
    fn small_tree_counts() {
        assert_eq!(enumerate_spanning_trees(&cycle(3)).count(), 3);
        assert_eq!(enumerate_spanning_trees(&clique(4)).count(), 16);
        assert_eq!(enumerate_spanning_trees(&cycle(4)).count(), 4);
        assert_eq!(enumerate_spanning_trees(&clique(5)).count(), 125);
    }

    #[test]
    fn enumeration_matches_subset_scan() {
        let mut g = DoubleWeightedGraph::from_unit_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 4)]).unwrap();
        g.add_unit_edge(1, 2).unwrap();
        let mut a: Vec<_> = enumerate_spanning_trees(&g).collect();
        let mut b = all_trees_by_subsets(&g);
        b.sort();
        let len = a.len();
        a.sort();
        a.dedup();
        assert_eq!(a.len(), len, "a tree was produced twice");
        assert_eq!(a, b);
    }

    #[test]
    fn disconnected_enumeration_is_flagged() {
        let g = DoubleWeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let mut it = enumerate_spanning_trees(&g);
        assert!(it.is_disconnected());
        assert!(it.next().is_none());
        assert!(matches!(stc_exact(&g), Err(OracleError::Graph(GraphError::Disconnected))));
    }

    #[test]
    fn clique_values() {
        for n in 3..=6 {
            let r = stc_exact(&clique(n)).unwrap();
            assert_eq!(r.value, (n - 1) as u64);
            assert_eq!(tree_congestion(&clique(n), &r.witness), r.value);
        }
    }

    #[test]
    fn cycle_values() {
        for n in 3..=8 {
            assert_eq!(stc_exact(&cycle(n)).unwrap().value, 2);
        }
    }

    #[test]
    fn decide_on_k4() {
        let g = clique(4);
        let t = stc_decide(&g, 3).unwrap().expect("K4 has a congestion-3 tree");
        assert!(tree_congestion(&g, &t) <= 3);
        assert!(stc_decide(&g, 2).unwrap().is_none());
    }

    #[test]
    fn witness_is_first_optimum_in_enumeration_order() {
        let mut g = clique(5);
        g.add_unit_edge(0, 1).unwrap();
        g.add_unit_edge(3, 4).unwrap();
        let r = stc_exact(&g).unwrap();
        let first = enumerate_spanning_trees(&g)
            .min_by_key(|t| tree_congestion(&g, t))
            .unwrap();
        // min_by_key keeps the first minimum
        assert_eq!(r.witness, first);
        assert_eq!(r.value, tree_congestion(&g, &first));
    }

    #[test]
    fn parallel_matches_sequential() {
        let mut g = clique(6);
        g.add_unit_edge(0, 5).unwrap();
        let seq = stc_exact(&g).unwrap();
        let par = stc_exact_with(&g, SearchLimits { jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(seq.value, par.value);
        assert_eq!(seq.witness, par.witness);
        let d1 = stc_decide(&g, 6).unwrap();
        let d4 = stc_decide_with(&g, 6, SearchLimits { jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(d1, d4);
    }

    #[test]
    fn budget_is_reported() {
        let limits = SearchLimits { node_budget: 5, jobs: 1 };
        assert_eq!(stc_exact_with(&clique(6), limits), Err(OracleError::BudgetExceeded(5)));
    }

    #[test]
    fn path_property_on_single_edge() {
        let g = DoubleWeightedGraph::from_unit_edges(2, &[(0, 1)]).unwrap();
        assert!(!bottleneck_path_property(&g, 0, 1, 2).unwrap());
        assert!(bottleneck_path_property(&g, 0, 1, 1).unwrap());
        assert_eq!(bottleneck_path_property(&g, 1, 1, 1), Err(OracleError::SameGates));
    }

    #[test]
    fn heavy_edges_respected() {
        // Triangle where edge 0 is (1:5): the best tree avoids it.
        let mut g = DoubleWeightedGraph::new(3);
        g.add_edge(0, 1, crate::graph::DoubleWeight::new(1, 5).unwrap()).unwrap();
        g.add_unit_edge(1, 2).unwrap();
        g.add_unit_edge(2, 0).unwrap();
        let r = stc_exact(&g).unwrap();
        assert_eq!(r.value, 2);
        assert!(!r.witness.contains(0));
    }
}
