//! Deciding whether a K-edge-connected graph has spanning tree congestion K.
//!
//! A rooted tree `(T, w)` in the graph is safe when every edge of `T` cuts
//! off, on the side away from `w`, a vertex set whose cut has size K. A
//! boundary vertex `w` of a basic cut `Z` is a hub of `Z` when some spanning
//! tree of `Z ∪ {w}` is safe at `w`. Hub sets are computed bottom-up over the
//! rooted basic-cut tree; the graph has congestion K exactly when the root
//! vertex is a hub of everything else.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::cactus::{build_cactus, check_preimage_condition, enumerate_min_cuts, root_cut_tree, CactusError, CutKind, NodeType, RootedCutTree};
use crate::graph::{bitset_cut_edges, bitset_cut_size, DoubleWeightedGraph, GraphError, SpanningTree};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HubError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cactus(#[from] CactusError),
    #[error("edge {0} has unequal light and heavy weights")]
    NonCanonical(usize),
    #[error("entry {entry} is not a {expected}")]
    TypeMismatch { entry: usize, expected: &'static str },
    #[error("cycle with {0} nodes is too short")]
    CycleTooShort(usize),
    #[error("no witness: the decision was NO ({0})")]
    NotYes(NoReason),
    #[error("hub provenance is missing for vertex {vertex} at entry {entry}")]
    MissingProvenance { entry: usize, vertex: usize },
    #[error("brute-force hub search supports at most 64 vertices, got {0}")]
    TooLarge(usize),
}

/// How a hub's witness tree is assembled from its children's witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// The lone vertex of an external node.
    Single,
    /// An out-hub reached over `edge` from the in-hub `via`.
    Edge { via: usize, edge: usize },
    /// The union of this vertex's witnesses for every child.
    Children,
    /// In-hub at the end of a back spine `w_2, ..., w_{ℓ-1}`.
    BackSpine(Vec<usize>),
    /// In-hub at the start of a front spine `w_1, ..., w_{ℓ-2}`.
    FrontSpine(Vec<usize>),
    /// Out-hub joining a front spine `w_0, ..., w_{g-2}` and a back spine
    /// `w_{g+1}, ..., w_ℓ` with `w_0 = w_ℓ`.
    Spines { g: usize, front: Vec<usize>, back: Vec<usize> },
}

/// Hubs of one basic cut, each with the rule that admitted it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HubSet {
    hubs: BTreeMap<usize, Provenance>,
}

impl HubSet {
    pub fn contains(&self, v: usize) -> bool {
        self.hubs.contains_key(&v)
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.hubs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.hubs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hubs.is_empty()
    }

    pub fn provenance(&self, v: usize) -> Option<&Provenance> {
        self.hubs.get(&v)
    }

    fn add(&mut self, v: usize, p: Provenance) {
        self.hubs.entry(v).or_insert(p);
    }
}

fn boundary(g: &DoubleWeightedGraph, side: &FixedBitSet) -> BTreeSet<usize> {
    bitset_cut_edges(g, side)
        .into_iter()
        .flat_map(|e| {
            let e = g.edge(e);
            [e.u, e.v]
        })
        .collect()
}

/// Adds every neighbour of `from` outside `side`, reached from `from`.
fn add_outside_neighbours(g: &DoubleWeightedGraph, side: &FixedBitSet, from: usize, out: &mut HubSet) {
    for u in g.neighbors(from) {
        if !side.contains(u) {
            let edge = g.edge_between(from, u).expect("neighbours share an edge");
            out.add(u, Provenance::Edge { via: from, edge });
        }
    }
}

fn entry_node(tree: &RootedCutTree, entry: usize, want: NodeType, name: &'static str) -> Result<(), HubError> {
    match (&tree.entries[entry].kind, tree.entries[entry].node_type) {
        (CutKind::Node(_), Some(t)) if t == want => Ok(()),
        _ => Err(HubError::TypeMismatch { entry, expected: name }),
    }
}

/// An external node with preimage `v`: `v` itself and all its neighbours.
pub fn hubs_leaf(g: &DoubleWeightedGraph, tree: &RootedCutTree, entry: usize) -> Result<HubSet, HubError> {
    entry_node(tree, entry, NodeType::External, "external node")?;
    let v = tree.entries[entry].vertex.expect("external nodes carry a vertex");
    let mut out = HubSet::default();
    out.add(v, Provenance::Single);
    add_outside_neighbours(g, tree.entries[entry].shore.as_bitset(), v, &mut out);
    Ok(out)
}

/// A Type-1 node with preimage `v`: nonempty only if `v` is a hub of every child.
pub fn hubs_type1(
    g: &DoubleWeightedGraph,
    tree: &RootedCutTree,
    entry: usize,
    hubs: &[HubSet],
) -> Result<HubSet, HubError> {
    entry_node(tree, entry, NodeType::InternalType1, "Type-1 node")?;
    let e = &tree.entries[entry];
    let v = e.vertex.expect("Type-1 nodes carry a vertex");
    let mut out = HubSet::default();
    if e.children.iter().all(|&c| hubs[c].contains(v)) {
        out.add(v, Provenance::Children);
        add_outside_neighbours(g, e.shore.as_bitset(), v, &mut out);
    }
    Ok(out)
}

/// A Type-0 node: common hubs of all children on the cut boundary, plus
/// outside neighbours of the inner ones.
pub fn hubs_type0(
    g: &DoubleWeightedGraph,
    tree: &RootedCutTree,
    entry: usize,
    hubs: &[HubSet],
) -> Result<HubSet, HubError> {
    entry_node(tree, entry, NodeType::InternalType0, "Type-0 node")?;
    let e = &tree.entries[entry];
    let side = e.shore.as_bitset();
    let common: Vec<usize> = boundary(g, side)
        .into_iter()
        .filter(|&w| e.children.iter().all(|&c| hubs[c].contains(w)))
        .collect();
    let mut out = HubSet::default();
    for &w in &common {
        out.add(w, Provenance::Children);
    }
    for &w in common.iter().filter(|&&w| side.contains(w)) {
        add_outside_neighbours(g, side, w, &mut out);
    }
    Ok(out)
}

/// Spine values along one direction: the best reachable start index and
/// the predecessor that achieves it.
#[derive(Debug, Default)]
struct Spine {
    value: BTreeMap<usize, (usize, Option<usize>)>,
}

impl Spine {
    fn chain(&self, mut w: usize) -> Vec<usize> {
        let mut out = vec![w];
        while let Some(&(_, Some(p))) = self.value.get(&w) {
            out.push(p);
            w = p;
        }
        out
    }
}

/// A non-trivial cycle with children `Z_1, ..., Z_{ℓ-1}` in cycle order.
pub fn hubs_cycle(
    g: &DoubleWeightedGraph,
    tree: &RootedCutTree,
    entry: usize,
    hubs: &[HubSet],
) -> Result<HubSet, HubError> {
    let e = &tree.entries[entry];
    if !matches!(e.kind, CutKind::Cycle(_)) {
        return Err(HubError::TypeMismatch { entry, expected: "cycle" });
    }
    let l = e.children.len() + 1;
    if l < 3 {
        return Err(HubError::CycleTooShort(l));
    }
    let wc = e.shore.as_bitset();
    let outer = boundary(g, wc);
    // z[i] for 1 <= i < l; positions 0 and l stand for the outside boundary
    let z: Vec<Option<&FixedBitSet>> = std::iter::once(None)
        .chain(e.children.iter().map(|&c| Some(tree.entries[c].shore.as_bitset())))
        .collect();
    let h = |i: usize| &hubs[e.children[i - 1]];
    let in_z = |i: usize, w: usize| z[i].is_some_and(|s| s.contains(w));
    let outside = |set: &HubSet| -> BTreeSet<usize> { set.vertices().into_iter().filter(|&w| !wc.contains(w)).collect() };

    let mut back_u: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); l + 1];
    back_u[l] = outside(h(l - 1));
    for (i, u) in back_u.iter_mut().enumerate().take(l).skip(2) {
        *u = h(i).vertices().into_iter().filter(|&w| in_z(i, w) && h(i - 1).contains(w)).collect();
    }
    let mut back = Spine::default();
    for i in 2..=l {
        for &w in &back_u[i] {
            let mut best = (i, None);
            for v in g.neighbors(w) {
                if back_u[i - 1].contains(&v) {
                    let s = back.value[&v].0;
                    if s < best.0 {
                        best = (s, Some(v));
                    }
                }
            }
            back.value.insert(w, best);
        }
    }

    let mut front_u: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); l];
    front_u[0] = outside(h(1));
    for (i, u) in front_u.iter_mut().enumerate().take(l - 1).skip(1) {
        *u = h(i).vertices().into_iter().filter(|&w| in_z(i, w) && h(i + 1).contains(w)).collect();
    }
    let mut front = Spine::default();
    for i in (0..l - 1).rev() {
        for &w in &front_u[i] {
            let mut best = (i, None);
            for v in g.neighbors(w) {
                if front_u[i + 1].contains(&v) {
                    let s = front.value[&v].0;
                    if s > best.0 {
                        best = (s, Some(v));
                    }
                }
            }
            front.value.insert(w, best);
        }
    }
    let back_at = |w: usize| back.value[&w].0;
    let front_at = |w: usize| front.value[&w].0;

    let mut out = HubSet::default();
    for &w in front_u[0].intersection(&back_u[l]) {
        let (f, b) = (front_at(w), back_at(w));
        if f + 3 >= b {
            let gap = b.saturating_sub(1).max(2);
            let mut fr = front.chain(w);
            fr.truncate(gap - 1);
            let mut bk = back.chain(w);
            bk.truncate(l - gap);
            bk.reverse();
            out.add(w, Provenance::Spines { g: gap, front: fr, back: bk });
        }
    }
    let minus: Vec<usize> = back_u[l - 1].iter().copied().filter(|&w| outer.contains(&w) && back_at(w) == 2).collect();
    let plus: Vec<usize> = front_u[1].iter().copied().filter(|&w| outer.contains(&w) && front_at(w) == l - 2).collect();
    for &w in &minus {
        let mut chain = back.chain(w);
        chain.reverse();
        out.add(w, Provenance::BackSpine(chain));
    }
    for &w in &plus {
        out.add(w, Provenance::FrontSpine(front.chain(w)));
    }
    for &w in minus.iter().chain(plus.iter()) {
        add_outside_neighbours(g, wc, w, &mut out);
    }
    Ok(out)
}

/// Why the answer is NO.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoReason {
    /// Some cactus node carries two or more vertices.
    PreimageViolation,
    /// No vertex has weighted degree K.
    NoRoot,
    /// The dynamic program never made the root a hub.
    RootNotHub,
}

impl NoReason {
    pub fn code(self) -> &'static str {
        match self {
            NoReason::PreimageViolation => "preimage-violation",
            NoReason::NoRoot => "no-root",
            NoReason::RootNotHub => "root-not-hub",
        }
    }
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Hub sets of every basic cut, kept for witness reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubRun {
    pub tree: RootedCutTree,
    pub hubs: Vec<HubSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub k: u64,
    pub answer: Result<(), NoReason>,
    /// Present whenever the hub program ran.
    pub run: Option<HubRun>,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        self.answer.is_ok()
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.answer {
            Ok(()) => f.write_str("YES"),
            Err(reason) => write!(f, "NO {reason}"),
        }
    }
}

/// Hub sets for every entry of a rooted basic-cut tree, children first.
pub fn compute_hubs(g: &DoubleWeightedGraph, tree: &RootedCutTree) -> Result<Vec<HubSet>, HubError> {
    let mut hubs = vec![HubSet::default(); tree.entries.len()];
    for &i in &tree.order {
        let e = &tree.entries[i];
        hubs[i] = match (e.kind, e.node_type) {
            (CutKind::Cycle(_), _) => hubs_cycle(g, tree, i, &hubs)?,
            (_, Some(NodeType::External)) => hubs_leaf(g, tree, i)?,
            (_, Some(NodeType::InternalType1)) => hubs_type1(g, tree, i, &hubs)?,
            _ => hubs_type0(g, tree, i, &hubs)?,
        };
    }
    Ok(hubs)
}

/// Decides whether the congestion equals the edge connectivity K.
pub fn decide_stc_equals_k(g: &DoubleWeightedGraph) -> Result<Decision, HubError> {
    if let Some(e) = g.edges().iter().position(|e| !e.weight.is_uniform()) {
        return Err(HubError::NonCanonical(e));
    }
    let family = enumerate_min_cuts(g)?;
    let k = family.k();
    let cactus = build_cactus(g, &family)?;
    if !check_preimage_condition(&cactus) {
        return Ok(Decision { k, answer: Err(NoReason::PreimageViolation), run: None });
    }
    let tree = match root_cut_tree(g, &cactus) {
        Ok(t) => t,
        Err(CactusError::NoRoot(_)) => return Ok(Decision { k, answer: Err(NoReason::NoRoot), run: None }),
        Err(e) => return Err(e.into()),
    };
    let hubs = compute_hubs(g, &tree)?;
    let answer = if hubs[tree.top].contains(tree.root_vertex) { Ok(()) } else { Err(NoReason::RootNotHub) };
    Ok(Decision { k, answer, run: Some(HubRun { tree, hubs }) })
}

/// A spanning tree of congestion K rebuilt from the hub provenance.
pub fn reconstruct_witness_tree(g: &DoubleWeightedGraph, decision: &Decision) -> Result<SpanningTree, HubError> {
    if let Err(reason) = decision.answer {
        return Err(HubError::NotYes(reason));
    }
    let run = decision.run.as_ref().expect("YES decisions keep their run");
    let mut edges = Vec::new();
    witness(g, run, run.tree.top, run.tree.root_vertex, &mut edges)?;
    Ok(SpanningTree::new(g, edges)?)
}

/// Pushes the edges of a witness tree for hub `w` of entry `entry`.
fn witness(g: &DoubleWeightedGraph, run: &HubRun, entry: usize, w: usize, out: &mut Vec<usize>) -> Result<(), HubError> {
    let e = &run.tree.entries[entry];
    let p = run.hubs[entry].provenance(w).ok_or(HubError::MissingProvenance { entry, vertex: w })?;
    let link = |a: usize, b: usize| g.edge_between(a, b).expect("spine vertices are adjacent");
    match p {
        Provenance::Single => {}
        Provenance::Edge { via, edge } => {
            out.push(*edge);
            witness(g, run, entry, *via, out)?;
        }
        Provenance::Children => {
            for &c in &e.children {
                witness(g, run, c, w, out)?;
            }
        }
        Provenance::BackSpine(chain) => {
            // chain[j] sits in Z_{j+2}; Z_1 hangs off the first vertex
            witness(g, run, e.children[0], chain[0], out)?;
            for (j, &x) in chain.iter().enumerate() {
                witness(g, run, e.children[j + 1], x, out)?;
            }
            out.extend(chain.windows(2).map(|p| link(p[0], p[1])));
        }
        Provenance::FrontSpine(chain) => {
            // chain[j] sits in Z_{j+1}; Z_{ℓ-1} hangs off the last vertex
            for (j, &x) in chain.iter().enumerate() {
                witness(g, run, e.children[j], x, out)?;
            }
            let last = *chain.last().expect("spines are nonempty");
            witness(g, run, e.children[chain.len()], last, out)?;
            out.extend(chain.windows(2).map(|p| link(p[0], p[1])));
        }
        Provenance::Spines { g: gap, front, back } => {
            let l = e.children.len() + 1;
            // front[j] is w_j, so it roots Z_j for j >= 1
            for (j, &x) in front.iter().enumerate().skip(1) {
                witness(g, run, e.children[j - 1], x, out)?;
            }
            witness(g, run, e.children[gap - 2], *front.last().expect("front holds w_0"), out)?;
            // back[j] is w_{g+1+j}; the last one is w_ℓ = w
            for (j, &x) in back.iter().enumerate().take(back.len() - 1) {
                witness(g, run, e.children[gap + j], x, out)?;
            }
            witness(g, run, e.children[gap - 1], back[0], out)?;
            debug_assert_eq!(back.len(), l - gap);
            out.extend(front.windows(2).map(|p| link(p[0], p[1])));
            out.extend(back.windows(2).map(|p| link(p[0], p[1])));
        }
    }
    Ok(())
}

/// Whether the edge set is a tree containing `root` whose every edge cuts
/// off, away from the root, a set with cut size exactly `k`.
pub fn is_safe_tree(g: &DoubleWeightedGraph, k: u64, edges: &[usize], root: usize) -> Result<bool, HubError> {
    g.check_vertex(root)?;
    let mut adj: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    adj.entry(root).or_default();
    for &e in edges {
        g.check_edge(e)?;
        let ed = g.edge(e);
        adj.entry(ed.u).or_default().push((ed.v, e));
        adj.entry(ed.v).or_default().push((ed.u, e));
    }
    if edges.len() + 1 != adj.len() {
        return Ok(false);
    }
    // parent links by DFS; unreachable vertices mean a cycle elsewhere
    let mut parent: HashMap<usize, Option<usize>> = HashMap::from([(root, None)]);
    let mut order = vec![root];
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &(y, e) in &adj[&x] {
            if parent.get(&x) == Some(&Some(e)) {
                continue;
            }
            if parent.contains_key(&y) {
                return Ok(false);
            }
            parent.insert(y, Some(e));
            order.push(y);
            stack.push(y);
        }
    }
    if parent.len() != adj.len() {
        return Ok(false);
    }
    let n = g.vertex_count();
    let mut below: HashMap<usize, FixedBitSet> = HashMap::new();
    for &x in order.iter().rev() {
        let mut own = below.remove(&x).unwrap_or_else(|| FixedBitSet::with_capacity(n));
        own.insert(x);
        if let Some(e) = parent[&x] {
            if bitset_cut_size(g, &own) != k {
                return Ok(false);
            }
            let up = g.edge(e).other(x);
            below.entry(up).or_insert_with(|| FixedBitSet::with_capacity(n)).union_with(&own);
        }
    }
    Ok(true)
}

/// Brute-force hub test: searches every spanning tree of `Z ∪ {w}` for one
/// that is safe at `w`, returning its edges. Exponential in `|Z|`.
pub fn hub_oracle(
    g: &DoubleWeightedGraph,
    k: u64,
    z: &crate::graph::CutShore,
    w: usize,
) -> Result<Option<Vec<usize>>, HubError> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(HubError::TooLarge(n));
    }
    g.check_vertex(w)?;
    if !boundary(g, z.as_bitset()).contains(&w) {
        return Ok(None);
    }
    let mut search = SafeSearch::new(g, k);
    let all = z.vertices().fold(1u64 << w, |m, v| m | 1 << v);
    if search.roots(all) & (1 << w) == 0 {
        return Ok(None);
    }
    let mut edges = Vec::new();
    search.build(all, w, &mut edges);
    Ok(Some(edges))
}

/// Memoised search over vertex subsets as bitmasks: a root `c` of `X` is
/// safe iff `X \ {c}` splits into K-cut blocks, each with a safe root
/// adjacent to `c`.
struct SafeSearch<'a> {
    g: &'a DoubleWeightedGraph,
    k: u64,
    nbr: Vec<u64>,
    roots: HashMap<u64, u64>,
    split: HashMap<(u64, usize), bool>,
    cuts: HashMap<u64, u64>,
}

impl<'a> SafeSearch<'a> {
    fn new(g: &'a DoubleWeightedGraph, k: u64) -> Self {
        let nbr = (0..g.vertex_count()).map(|v| g.neighbors(v).into_iter().fold(0u64, |m, u| m | 1 << u)).collect();
        SafeSearch { g, k, nbr, roots: HashMap::new(), split: HashMap::new(), cuts: HashMap::new() }
    }

    fn cut(&mut self, x: u64) -> u64 {
        if let Some(&c) = self.cuts.get(&x) {
            return c;
        }
        let c = self
            .g
            .edges()
            .iter()
            .filter(|e| (x >> e.u & 1) != (x >> e.v & 1))
            .map(|e| e.weight.light())
            .sum();
        self.cuts.insert(x, c);
        c
    }

    fn roots(&mut self, x: u64) -> u64 {
        if let Some(&r) = self.roots.get(&x) {
            return r;
        }
        let mut r = 0;
        let mut rest = x;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.splits(x & !(1 << c), c) {
                r |= 1 << c;
            }
        }
        self.roots.insert(x, r);
        r
    }

    /// A block for `c` is a K-cut whose safe roots include a neighbour of `c`.
    fn good_block(&mut self, y: u64, c: usize) -> bool {
        self.cut(y) == self.k && self.roots(y) & self.nbr[c] != 0
    }

    fn splits(&mut self, s: u64, c: usize) -> bool {
        if s == 0 {
            return true;
        }
        if let Some(&b) = self.split.get(&(s, c)) {
            return b;
        }
        let lo = s & s.wrapping_neg();
        let others = s & !lo;
        let mut sub = others;
        let mut found = false;
        loop {
            let y = sub | lo;
            if self.good_block(y, c) && self.splits(s & !y, c) {
                found = true;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        self.split.insert((s, c), found);
        found
    }

    fn build(&mut self, x: u64, c: usize, out: &mut Vec<usize>) {
        let mut s = x & !(1 << c);
        while s != 0 {
            let lo = s & s.wrapping_neg();
            let others = s & !lo;
            let mut sub = others;
            loop {
                let y = sub | lo;
                if self.good_block(y, c) && self.splits(s & !y, c) {
                    let choices = self.roots(y) & self.nbr[c];
                    let r = choices.trailing_zeros() as usize;
                    out.push(self.g.edge_between(c, r).expect("adjacent"));
                    self.build(y, r, out);
                    s &= !y;
                    break;
                }
                assert!(sub != 0, "a split was recorded for this set");
                sub = (sub - 1) & others;
            }
        }
    }
}
