//! Degree-bounded building blocks: flowers, bottlenecks and the
//! double-weight gadget that replaces an `(a:b)` edge by unit edges.

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{tree_congestion, tree_shores, DoubleWeight, DoubleWeightedGraph, GraphError, SpanningTree};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("flower needs at least 3 terminals, got {0}")]
    FlowerTooSmall(usize),
    #[error("integrality must be at least 3, got {0}")]
    IntegralityTooSmall(u64),
    #[error("bottleneck width must be at least 3, got {0}")]
    BottleneckTooSmall(usize),
    #[error("weight gadget needs a >= 1 and b - a >= 2, got a={a}, b={b}")]
    WeightGadgetParams { a: u64, b: u64 },
    #[error("double-weight expansion hypotheses violated: {}", list(.0))]
    Hypothesis(Vec<WeightViolation>),
    #[error("malformed flower embedding: {0}")]
    Embedding(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn list(vs: &[WeightViolation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightViolation {
    pub edge: usize,
    pub weight: DoubleWeight,
    pub reason: &'static str,
}

impl fmt::Display for WeightViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {} {}: {}", self.edge, self.weight, self.reason)
    }
}

/// Where a flower sits inside some host graph. Index `i` is the 0-based
/// position around the flower; position 0 holds the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowerEmbedding {
    pub k: u64,
    pub core: Vec<usize>,
    pub dummy: Vec<usize>,
    pub terminal: Vec<usize>,
    /// `(core[i], core[i+1])`
    pub ring_edges: Vec<usize>,
    /// `(terminal[i], dummy[i])`
    pub left_edges: Vec<usize>,
    /// `(terminal[i], dummy[i+1])`
    pub right_edges: Vec<usize>,
    /// `(core[i], dummy[i])`, heavy except at the center
    pub spoke_edges: Vec<usize>,
}

impl FlowerEmbedding {
    pub fn terminals(&self) -> usize {
        self.terminal.len()
    }

    pub fn center(&self) -> usize {
        self.core[0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.core.iter().chain(&self.dummy).chain(&self.terminal).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.ring_edges
            .iter()
            .chain(&self.left_edges)
            .chain(&self.right_edges)
            .chain(&self.spoke_edges)
            .copied()
    }

    /// Unit edges forming a spanning tree of the flower whose congestion,
    /// standalone, is one more than the number of terminals.
    pub fn canonical_tree_edges(&self) -> Vec<usize> {
        let l = self.terminals();
        let mut out = Vec::with_capacity(3 * l - 1);
        for i in 0..l - 1 {
            out.push(self.ring_edges[i]);
            out.push(self.left_edges[i]);
            out.push(self.right_edges[i]);
        }
        out.push(self.left_edges[l - 1]);
        out.push(self.spoke_edges[0]);
        out.sort_unstable();
        out
    }
}

/// Appends a flower with `l` terminals and integrality `k` to `g`. Vertex
/// labels are `prefix` followed by `c<i>`, `d<i>` or `t<i>` (1-based).
pub fn append_flower(
    g: &mut DoubleWeightedGraph,
    l: usize,
    k: u64,
    prefix: &str,
) -> Result<FlowerEmbedding, GadgetError> {
    if l < 3 {
        return Err(GadgetError::FlowerTooSmall(l));
    }
    if k < 3 {
        return Err(GadgetError::IntegralityTooSmall(k));
    }
    let core: Vec<usize> = (1..=l).map(|i| g.add_labeled_vertex(format!("{prefix}c{i}"))).collect();
    let dummy: Vec<usize> = (1..=l).map(|i| g.add_labeled_vertex(format!("{prefix}d{i}"))).collect();
    let terminal: Vec<usize> = (1..=l).map(|i| g.add_labeled_vertex(format!("{prefix}t{i}"))).collect();
    let heavy = DoubleWeight::new(1, k - 1)?;
    let mut emb = FlowerEmbedding {
        k,
        core,
        dummy,
        terminal,
        ring_edges: Vec::with_capacity(l),
        left_edges: Vec::with_capacity(l),
        right_edges: Vec::with_capacity(l),
        spoke_edges: Vec::with_capacity(l),
    };
    for i in 0..l {
        let j = (i + 1) % l;
        emb.ring_edges.push(g.add_unit_edge(emb.core[i], emb.core[j])?);
        emb.left_edges.push(g.add_unit_edge(emb.terminal[i], emb.dummy[i])?);
        emb.right_edges.push(g.add_unit_edge(emb.terminal[i], emb.dummy[j])?);
        let w = if i == 0 { DoubleWeight::UNIT } else { heavy };
        emb.spoke_edges.push(g.add_edge(emb.core[i], emb.dummy[i], w)?);
    }
    Ok(emb)
}

/// A standalone flower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flower {
    pub graph: DoubleWeightedGraph,
    pub embedding: FlowerEmbedding,
}

pub fn build_flower(l: usize, k: u64) -> Result<Flower, GadgetError> {
    let mut graph = DoubleWeightedGraph::new(0);
    let embedding = append_flower(&mut graph, l, k, "")?;
    Ok(Flower { graph, embedding })
}

pub fn canonical_flower_tree(f: &Flower) -> SpanningTree {
    SpanningTree::new(&f.graph, f.embedding.canonical_tree_edges()).expect("canonical flower tree spans the flower")
}

/// Whether all core vertices of the embedded flower stay on one side of the
/// cut induced by tree edge `e`, which must not be a flower edge.
pub fn check_core_integrity(
    g: &DoubleWeightedGraph,
    flower: &FlowerEmbedding,
    t: &SpanningTree,
    e: usize,
) -> Result<bool, GadgetError> {
    let mut inside = FixedBitSet::with_capacity(g.vertex_count());
    for v in flower.vertices() {
        g.check_vertex(v)?;
        inside.insert(v);
    }
    let mut boundary = vec![0usize; g.vertex_count()];
    for ed in g.edges() {
        if ed.crosses(&inside) {
            let v = if inside.contains(ed.u) { ed.u } else { ed.v };
            boundary[v] += 1;
        }
    }
    for v in flower.vertices() {
        let is_terminal = flower.terminal.contains(&v);
        if (!is_terminal && boundary[v] > 0) || boundary[v] > 1 {
            return Err(GadgetError::Embedding(format!(
                "vertex {v} has {} edges leaving the flower",
                boundary[v]
            )));
        }
    }
    if !t.contains(e) {
        return Err(GraphError::EdgeNotInTree(e).into());
    }
    if flower.edges().any(|fe| fe == e) {
        return Err(GadgetError::Precondition(format!("edge {e} belongs to the flower")));
    }
    let c = tree_congestion(g, t);
    if c > flower.k {
        return Err(GadgetError::Precondition(format!("tree congestion {c} exceeds {}", flower.k)));
    }
    let (side, _) = tree_shores(g, t, e)?;
    let first = side.contains(flower.core[0]);
    Ok(flower.core.iter().all(|&c| side.contains(c) == first))
}

/// A bottleneck copy inside some host graph. Rows run bottom to top; each
/// row is slanted one column to the right of the row below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottleneckEmbedding {
    pub width: usize,
    pub s: usize,
    pub t: usize,
    /// `(row, column)` of each vertex, indexed from `first`.
    pub coords: Vec<(usize, usize)>,
    pub first: usize,
    pub edges: Vec<usize>,
}

impl BottleneckEmbedding {
    pub fn vertex_at(&self, row: usize, col: usize) -> Option<usize> {
        self.coords.iter().position(|&rc| rc == (row, col)).map(|i| i + self.first)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.coords.len()
    }
}

/// Column range of vertex row `j` in a width-`w` wall.
fn row_span(w: usize, j: usize) -> (usize, usize) {
    let lo = if j == 0 { 0 } else { j - 1 };
    let hi = if j == 0 {
        2 * w - 2
    } else if j == w - 1 {
        3 * w - 4
    } else {
        j + 2 * w - 2
    };
    (lo, hi)
}

/// Appends a width-`w` brick wall. Labels are `prefix` plus `r<row>c<col>`.
pub fn append_bottleneck(
    g: &mut DoubleWeightedGraph,
    w: usize,
    prefix: &str,
) -> Result<BottleneckEmbedding, GadgetError> {
    if w < 3 {
        return Err(GadgetError::BottleneckTooSmall(w));
    }
    let first = g.vertex_count();
    let mut coords = Vec::new();
    for j in 0..w {
        let (lo, hi) = row_span(w, j);
        for c in lo..=hi {
            g.add_labeled_vertex(format!("{prefix}r{j}c{c}"));
            coords.push((j, c));
        }
    }
    let at = |j: usize, c: usize| first + coords.iter().position(|&rc| rc == (j, c)).expect("cell exists");
    let mut edges = Vec::new();
    for j in 0..w {
        let (lo, hi) = row_span(w, j);
        for c in lo..hi {
            edges.push(g.add_unit_edge(at(j, c), at(j, c + 1))?);
        }
    }
    for j in 0..w - 1 {
        for k in 0..w {
            let c = j + 2 * k;
            edges.push(g.add_unit_edge(at(j, c), at(j + 1, c))?);
        }
    }
    let s = at(0, 0);
    let t = at(w - 1, 3 * w - 4);
    Ok(BottleneckEmbedding { width: w, s, t, coords, first, edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bottleneck {
    pub graph: DoubleWeightedGraph,
    pub embedding: BottleneckEmbedding,
}

impl Bottleneck {
    pub fn s(&self) -> usize {
        self.embedding.s
    }

    pub fn t(&self) -> usize {
        self.embedding.t
    }

    pub fn width(&self) -> usize {
        self.embedding.width
    }
}

pub fn build_bottleneck(w: usize) -> Result<Bottleneck, GadgetError> {
    let mut graph = DoubleWeightedGraph::new(0);
    let embedding = append_bottleneck(&mut graph, w, "")?;
    Ok(Bottleneck { graph, embedding })
}

/// Full paths along the middle row(s), with staircase branches climbing up
/// and right from the upper middle row and down and left from the lower one.
/// For even widths the two middle rows are joined by the left vertical of
/// the central brick.
pub fn canonical_bottleneck_tree(b: &Bottleneck) -> SpanningTree {
    let g = &b.graph;
    let emb = &b.embedding;
    let w = emb.width;
    let edge = |p: (usize, usize), q: (usize, usize)| {
        let (x, y) = (emb.vertex_at(p.0, p.1), emb.vertex_at(q.0, q.1));
        g.edge_between(x.expect("cell"), y.expect("cell")).expect("adjacent cells")
    };
    let exists = |j: usize, c: usize| emb.vertex_at(j, c).is_some();
    let (low, high) = if w % 2 == 1 { ((w - 1) / 2, (w - 1) / 2) } else { (w / 2 - 1, w / 2) };
    let mut tree = Vec::new();
    for m in [low, high] {
        let (lo, hi) = row_span(w, m);
        for c in lo..hi {
            tree.push(edge((m, c), (m, c + 1)));
        }
        if low == high {
            break;
        }
    }
    if low != high {
        let c = low + w - 2;
        tree.push(edge((low, c), (high, c)));
    }
    let (lo, hi) = row_span(w, high);
    for c in (lo..=hi).filter(|c| (c + high) % 2 == 0) {
        let (mut r, mut cc) = (high, c);
        while r + 1 < w && exists(r + 1, cc) {
            tree.push(edge((r, cc), (r + 1, cc)));
            r += 1;
            if !exists(r, cc + 1) {
                break;
            }
            tree.push(edge((r, cc), (r, cc + 1)));
            cc += 1;
        }
    }
    let (lo, hi) = row_span(w, low);
    for c in (lo..=hi).filter(|c| (c + low) % 2 == 1) {
        let (mut r, mut cc) = (low, c);
        while r > 0 && exists(r - 1, cc) {
            tree.push(edge((r, cc), (r - 1, cc)));
            r -= 1;
            if cc == 0 || !exists(r, cc - 1) {
                break;
            }
            tree.push(edge((r, cc), (r, cc - 1)));
            cc -= 1;
        }
    }
    SpanningTree::new(g, tree).expect("canonical bottleneck tree spans the wall")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGadget {
    pub graph: DoubleWeightedGraph,
    pub s_port: usize,
    pub t_port: usize,
    pub a: u64,
    pub b: u64,
    pub copies: Vec<BottleneckEmbedding>,
}

fn check_weight_params(a: u64, b: u64) -> Result<usize, GadgetError> {
    if a < 1 || b < a + 2 {
        return Err(GadgetError::WeightGadgetParams { a, b });
    }
    Ok((b - a + 1) as usize)
}

/// `a` bottlenecks of width `b-a+1` between two ports. Ports are vertices 0
/// and 1.
pub fn build_weight_gadget(a: u64, b: u64) -> Result<WeightGadget, GadgetError> {
    let width = check_weight_params(a, b)?;
    let mut graph = DoubleWeightedGraph::new(0);
    let s_port = graph.add_labeled_vertex("s*");
    let t_port = graph.add_labeled_vertex("t*");
    let copies = attach_bottlenecks(&mut graph, s_port, t_port, a, width, "b")?;
    Ok(WeightGadget { graph, s_port, t_port, a, b, copies })
}

fn attach_bottlenecks(
    g: &mut DoubleWeightedGraph,
    s_port: usize,
    t_port: usize,
    copies: u64,
    width: usize,
    prefix: &str,
) -> Result<Vec<BottleneckEmbedding>, GadgetError> {
    let mut out = Vec::new();
    for i in 0..copies {
        let emb = append_bottleneck(g, width, &format!("{prefix}{i}."))?;
        g.add_unit_edge(s_port, emb.s)?;
        g.add_unit_edge(t_port, emb.t)?;
        out.push(emb);
    }
    Ok(out)
}

/// How a `(c:c)` edge with `c > 1` is turned into unit edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UniformEdges {
    /// `c` parallel unit edges.
    #[default]
    Parallel,
    /// `c` internally disjoint paths of length two, keeping degrees at most 3.
    Subdivide,
}

/// Replaces every weighted edge by unit edges: `(a:b)` with `a < b` becomes
/// `a` bottlenecks of width `b-a+1` between the endpoints. Original vertices
/// keep their ids and labels; new vertices follow.
pub fn expand_double_weights(
    g: &DoubleWeightedGraph,
    k: u64,
    uniform: UniformEdges,
) -> Result<DoubleWeightedGraph, GadgetError> {
    if k < 3 {
        return Err(GadgetError::IntegralityTooSmall(k));
    }
    let mut bad = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e.weight.light(), e.weight.heavy());
        if a < b {
            if b - a < 2 {
                bad.push(WeightViolation { edge: i, weight: e.weight, reason: "heavy - light must be at least 2" });
            } else if b - a > k - 2 {
                bad.push(WeightViolation { edge: i, weight: e.weight, reason: "heavy - light must be at most K - 2" });
            }
        }
    }
    if !bad.is_empty() {
        return Err(GadgetError::Hypothesis(bad));
    }
    let mut out = DoubleWeightedGraph::new(g.vertex_count());
    for v in 0..g.vertex_count() {
        if let Some(l) = g.vertex_label(v) {
            out.set_vertex_label(v, l)?;
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e.weight.light(), e.weight.heavy());
        if a < b {
            attach_bottlenecks(&mut out, e.u, e.v, a, (b - a + 1) as usize, &format!("e{i}.b"))?;
        } else if a == 1 || uniform == UniformEdges::Parallel {
            for _ in 0..a {
                out.add_unit_edge(e.u, e.v)?;
            }
        } else {
            for j in 0..a {
                let mid = out.add_labeled_vertex(format!("e{i}.p{j}"));
                out.add_unit_edge(e.u, mid)?;
                out.add_unit_edge(mid, e.v)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_connectivity, tree_congestion};

    fn degree(g: &DoubleWeightedGraph, v: usize) -> usize {
        g.incident(v).len()
    }

    #[test]
    fn flower_shape() {
        let f = build_flower(4, 8).unwrap();
        assert_eq!(f.graph.vertex_count(), 12);
        assert_eq!(f.graph.edge_count(), 16);
        let e = &f.embedding;
        for i in 0..4 {
            assert_eq!(f.graph.weighted_degree(e.core[i]).unwrap(), 3);
            assert_eq!(f.graph.weighted_degree(e.dummy[i]).unwrap(), 3);
            assert_eq!(f.graph.weighted_degree(e.terminal[i]).unwrap(), 2);
        }
        assert_eq!(f.graph.edge(e.spoke_edges[0]).weight, DoubleWeight::UNIT);
        assert_eq!(f.graph.edge(e.spoke_edges[1]).weight, DoubleWeight::new(1, 7).unwrap());
        assert_eq!(f.graph.vertex_label(e.terminal[2]), Some("t3"));
    }

    #[test]
    fn flower_parameter_errors() {
        assert_eq!(build_flower(2, 5), Err(GadgetError::FlowerTooSmall(2)));
        assert_eq!(build_flower(4, 2), Err(GadgetError::IntegralityTooSmall(2)));
    }

    #[test]
    fn canonical_flower_congestion() {
        for l in 3..=8 {
            let f = build_flower(l, 9).unwrap();
            assert_eq!(tree_congestion(&f.graph, &canonical_flower_tree(&f)), l as u64 + 1);
        }
    }

    #[test]
    fn heavy_spoke_in_tree_is_expensive() {
        let f = build_flower(4, 8).unwrap();
        let e = &f.embedding;
        // swap (t1,d2) for the heavy spoke (c2,d2)
        let mut edges = e.canonical_tree_edges();
        edges.retain(|&x| x != e.right_edges[0]);
        edges.push(e.spoke_edges[1]);
        let t = SpanningTree::new(&f.graph, edges).unwrap();
        assert!(crate::graph::edge_congestion(&f.graph, &t, e.spoke_edges[1]).unwrap() > 8);
    }

    #[test]
    fn core_integrity_on_flower_with_pendant() {
        let mut g = DoubleWeightedGraph::new(0);
        let emb = append_flower(&mut g, 4, 8, "f.").unwrap();
        let extra = g.add_vertex();
        let pend = g.add_unit_edge(emb.terminal[0], extra).unwrap();
        let mut edges = emb.canonical_tree_edges();
        edges.push(pend);
        let t = SpanningTree::new(&g, edges).unwrap();
        assert!(check_core_integrity(&g, &emb, &t, pend).unwrap());
        assert!(matches!(
            check_core_integrity(&g, &emb, &t, emb.ring_edges[0]),
            Err(GadgetError::Precondition(_))
        ));
    }

    #[test]
    fn bottleneck_counts_and_degrees() {
        for (w, nv, ne) in [(3, 16, 19), (4, 30, 38), (5, 48, 63), (6, 70, 94)] {
            let b = build_bottleneck(w).unwrap();
            assert_eq!(b.graph.vertex_count(), nv);
            assert_eq!(b.graph.edge_count(), ne);
            assert_eq!(degree(&b.graph, b.s()), 2);
            assert_eq!(degree(&b.graph, b.t()), 2);
            assert!((0..nv).all(|v| degree(&b.graph, v) <= 3 && degree(&b.graph, v) >= 2));
            assert_eq!(edge_connectivity(&b.graph).unwrap(), 2);
        }
        assert_eq!(build_bottleneck(2), Err(GadgetError::BottleneckTooSmall(2)));
    }

    /// Euler's formula for the plane wall: every inner face is a brick, so
    /// faces = m - n + 2 counts (w-1) rows of w-1 bricks plus the outer face.
    #[test]
    fn bottleneck_faces_are_bricks() {
        for w in 3..=7 {
            let b = build_bottleneck(w).unwrap();
            let faces = b.graph.edge_count() + 2 - b.graph.vertex_count();
            assert_eq!(faces, (w - 1) * (w - 1) + 1);
            // each vertical pair in a brick row spans exactly two horizontal steps
            for j in 0..w - 1 {
                let cols: Vec<usize> = (0..w).map(|k| j + 2 * k).collect();
                for pair in cols.windows(2) {
                    assert_eq!(pair[1] - pair[0], 2);
                    for c in pair[0]..=pair[1] {
                        assert!(b.embedding.vertex_at(j, c).is_some());
                        assert!(b.embedding.vertex_at(j + 1, c).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_bottleneck_congestion() {
        for w in 3..=8 {
            let b = build_bottleneck(w).unwrap();
            let t = canonical_bottleneck_tree(&b);
            assert_eq!(tree_congestion(&b.graph, &t), w as u64, "width {w}");
        }
    }

    #[test]
    fn weight_gadget_ports() {
        let g = build_weight_gadget(2, 4).unwrap();
        assert_eq!(g.copies.len(), 2);
        assert_eq!(g.graph.vertex_count(), 2 + 2 * 16);
        assert_eq!(degree(&g.graph, g.s_port), 2);
        let g = build_weight_gadget(3, 5).unwrap();
        assert_eq!(degree(&g.graph, g.t_port), 3);
        assert!(build_weight_gadget(1, 3).is_ok());
        assert!(build_weight_gadget(2, 3).is_err());
        assert!(build_weight_gadget(0, 3).is_err());
    }

    #[test]
    fn expansion_keeps_original_degrees() {
        let mut g = DoubleWeightedGraph::new(4);
        g.add_edge(0, 1, DoubleWeight::new(1, 3).unwrap()).unwrap();
        g.add_edge(1, 2, DoubleWeight::uniform(2).unwrap()).unwrap();
        g.add_unit_edge(2, 3).unwrap();
        g.add_edge(3, 0, DoubleWeight::new(2, 4).unwrap()).unwrap();
        for mode in [UniformEdges::Parallel, UniformEdges::Subdivide] {
            let x = expand_double_weights(&g, 4, mode).unwrap();
            assert!(x.is_unweighted());
            for v in 0..4 {
                assert_eq!(x.weighted_degree(v).unwrap(), g.weighted_degree(v).unwrap());
            }
            assert!((4..x.vertex_count()).all(|v| degree(&x, v) <= 3));
        }
    }

    #[test]
    fn expansion_of_unit_graph_is_identity() {
        let g = DoubleWeightedGraph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(expand_double_weights(&g, 5, UniformEdges::Parallel).unwrap(), g);
    }

    #[test]
    fn expansion_reports_every_violation() {
        let mut g = DoubleWeightedGraph::new(3);
        g.add_edge(0, 1, DoubleWeight::new(1, 2).unwrap()).unwrap();
        g.add_edge(1, 2, DoubleWeight::new(1, 9).unwrap()).unwrap();
        g.add_edge(2, 0, DoubleWeight::new(1, 3).unwrap()).unwrap();
        match expand_double_weights(&g, 5, UniformEdges::Parallel) {
            Err(GadgetError::Hypothesis(v)) => {
                assert_eq!(v.iter().map(|x| x.edge).collect::<Vec<_>>(), vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
