//! Minimum cuts, their cactus representation and the rooted tree of basic
//! cuts that the hub dynamic program walks.
//!
//! The cactus is assembled from the explicit cut family. Cuts that cross
//! nothing form a laminar tree; each class of mutually crossing cuts is one
//! cycle whose pieces are the atoms cut out by the class. The result is
//! checked by pulling every cactus 2-cut back to the graph and comparing
//! with the family.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{bitset_cut_size, edge_connectivity, CutShore, DoubleWeightedGraph, GraphError, UnionFind};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CactusError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cut family does not form a cactus: {0}")]
    Inconsistent(String),
    #[error("no vertex has weighted degree {0}")]
    NoRoot(u64),
    #[error("node {node} has {} preimage vertices", .vertices.len())]
    PreimageViolation { node: usize, vertices: Vec<usize> },
}

/// All minimum cuts of a connected graph, each stored as the shore that
/// avoids vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCutFamily {
    k: u64,
    vertex_count: usize,
    shores: BTreeSet<CutShore>,
}

impl MinCutFamily {
    pub fn new(k: u64, vertex_count: usize, shores: impl IntoIterator<Item = CutShore>) -> Self {
        let shores = shores.into_iter().map(|s| s.excluding(0)).collect();
        MinCutFamily { k, vertex_count, shores }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn shores(&self) -> impl Iterator<Item = &CutShore> {
        self.shores.iter()
    }

    pub fn len(&self) -> usize {
        self.shores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shores.is_empty()
    }

    /// Either side of the cut may be given.
    pub fn contains(&self, shore: &CutShore) -> bool {
        self.shores.contains(&shore.excluding(0))
    }

    /// Pairs of members that cross, by position in [`Self::shores`].
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let list: Vec<&CutShore> = self.shores.iter().collect();
        let mut out = Vec::new();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if cross(list[i].as_bitset(), list[j].as_bitset()) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Canonical shores avoid vertex 0, so their union never covers everything
/// and crossing reduces to three nonempty regions.
fn cross(x: &FixedBitSet, y: &FixedBitSet) -> bool {
    !x.is_disjoint(y) && !x.is_subset(y) && !y.is_subset(x)
}

/// Every minimum cut, found from the residual graphs of the flows from
/// vertex 0 to each other vertex.
pub fn enumerate_min_cuts(g: &DoubleWeightedGraph) -> Result<MinCutFamily, CactusError> {
    let n = g.vertex_count();
    let k = edge_connectivity(g)?;
    if k == 0 {
        return Err(GraphError::Disconnected.into());
    }
    let mut shores = BTreeSet::new();
    let mut net = FlowNetwork::new(g);
    let mut source = FixedBitSet::with_capacity(n);
    source.insert(0);
    for t in 1..n {
        let mut sink = FixedBitSet::with_capacity(n);
        sink.insert(t);
        if net.flow(&source, &sink, None, k) != k {
            continue;
        }
        let mut out = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        for (a, b) in net.residual_arcs() {
            out[a].push(b);
            into[b].push(a);
        }
        let forced_in = reach(&out, 0);
        let forced_out = reach(&into, t);
        let mut free = FixedBitSet::with_capacity(n);
        free.insert_range(..);
        free.difference_with(&forced_in);
        free.difference_with(&forced_out);
        let comps = strong_components(&out, &free);
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps.len()];
        let mut comp_of = vec![usize::MAX; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                for &y in &out[v] {
                    if free.contains(y) && comp_of[y] != i {
                        succ[i].insert(comp_of[y]);
                    }
                }
            }
        }
        let mut chosen = vec![false; comps.len()];
        closures(0, &comps, &succ, &mut chosen, &forced_in, &mut |side| {
            let mut shore = side.clone();
            shore.toggle_range(..);
            shores.insert(CutShore::from_bitset(shore).expect("source and sink split"));
        });
    }
    Ok(MinCutFamily { k, vertex_count: n, shores })
}

fn reach(adj: &[Vec<usize>], from: usize) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(adj.len());
    seen.insert(from);
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen.put(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Tarjan's algorithm restricted to `within`; components come out sinks first.
fn strong_components(adj: &[Vec<usize>], within: &FixedBitSet) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        within: &'a FixedBitSet,
        index: Vec<usize>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut State, v: usize) {
        s.index[v] = s.next;
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for i in 0..s.adj[v].len() {
            let y = s.adj[v][i];
            if !s.within.contains(y) {
                continue;
            }
            if s.index[y] == usize::MAX {
                visit(s, y);
                s.low[v] = s.low[v].min(s.low[y]);
            } else if s.on_stack[y] {
                s.low[v] = s.low[v].min(s.index[y]);
            }
        }
        if s.low[v] == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let x = s.stack.pop().expect("component root is on the stack");
                s.on_stack[x] = false;
                comp.push(x);
                if x == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        within,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in within.ones() {
        if s.index[v] == usize::MAX {
            visit(&mut s, v);
        }
    }
    s.out
}

/// Every successor-closed choice of components, each emitted together with
/// `base`. Components are decided sinks first, so a component can be taken
/// exactly when all its successors already were.
fn closures(
    i: usize,
    comps: &[Vec<usize>],
    succ: &[BTreeSet<usize>],
    chosen: &mut Vec<bool>,
    base: &FixedBitSet,
    emit: &mut impl FnMut(&FixedBitSet),
) {
    if i == comps.len() {
        let mut side = base.clone();
        for (c, &on) in comps.iter().zip(chosen.iter()) {
            if on {
                side.extend(c.iter().copied());
            }
        }
        emit(&side);
        return;
    }
    closures(i + 1, comps, succ, chosen, base, emit);
    if succ[i].iter().all(|&j| chosen[j]) {
        chosen[i] = true;
        closures(i + 1, comps, succ, chosen, base, emit);
        chosen[i] = false;
    }
}

/// Cactus with node preimages. A cycle is a node sequence; two nodes make a
/// trivial cycle (two parallel links).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cactus {
    k: u64,
    preimage: Vec<Vec<usize>>,
    cycles: Vec<Vec<usize>>,
    phi: Vec<usize>,
}

impl Cactus {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.preimage.len()
    }

    pub fn preimage(&self, node: usize) -> &[usize] {
        &self.preimage[node]
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn is_trivial(&self, cycle: usize) -> bool {
        self.cycles[cycle].len() == 2
    }

    pub fn phi(&self, v: usize) -> usize {
        self.phi[v]
    }

    /// Links as `(node, node, cycle)`.
    pub fn links(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (c, cyc) in self.cycles.iter().enumerate() {
            for i in 0..cyc.len() {
                out.push((cyc[i], cyc[(i + 1) % cyc.len()], c));
            }
        }
        out
    }

    /// Cycles through each node.
    pub fn node_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for (c, cyc) in self.cycles.iter().enumerate() {
            for &b in cyc {
                out[b].push(c);
            }
        }
        out
    }

    /// External nodes lie on exactly one cycle.
    pub fn is_external(&self, node: usize) -> bool {
        self.cycles.iter().filter(|c| c.contains(&node)).count() == 1
    }

    /// Every 2-cut of the cactus pulled back to a vertex shore.
    pub fn pullback_shores(&self) -> BTreeSet<CutShore> {
        let n = self.phi.len();
        let node_cycles = self.node_cycles();
        let mut out = BTreeSet::new();
        for (c, cyc) in self.cycles.iter().enumerate() {
            // vertices hanging off each cycle node once this cycle is cut away
            let hang: Vec<FixedBitSet> = cyc.iter().map(|&b| self.hanging(b, c, &node_cycles)).collect();
            let l = cyc.len();
            for i in 0..l {
                for j in i + 1..l {
                    // cutting the links leaving positions i and j isolates i+1..=j
                    let mut side = FixedBitSet::with_capacity(n);
                    for h in &hang[i + 1..=j] {
                        side.union_with(h);
                    }
                    if let Ok(s) = CutShore::from_bitset(side) {
                        out.insert(s.excluding(0));
                    }
                }
            }
        }
        out
    }

    fn hanging(&self, start: usize, skip: usize, node_cycles: &[Vec<usize>]) -> FixedBitSet {
        let mut seen_nodes = vec![false; self.node_count()];
        seen_nodes[start] = true;
        let mut stack = vec![start];
        let mut side = FixedBitSet::with_capacity(self.phi.len());
        while let Some(b) = stack.pop() {
            side.extend(self.preimage[b].iter().copied());
            for &c in &node_cycles[b] {
                if c == skip {
                    continue;
                }
                for &a in &self.cycles[c] {
                    if !seen_nodes[a] {
                        seen_nodes[a] = true;
                        stack.push(a);
                    }
                }
            }
        }
        side
    }

    /// First node with more than one preimage vertex.
    pub fn preimage_violation(&self) -> Option<(usize, Vec<usize>)> {
        self.preimage.iter().enumerate().find(|(_, p)| p.len() > 1).map(|(b, p)| (b, p.clone()))
    }

    /// One line per node (`node <id> type <0|1|ext> pre <vertices|->`), then
    /// one per cycle (`cycle <node ids>`).
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for b in 0..self.node_count() {
            let kind = if self.is_external(b) { "ext".to_string() } else { self.preimage[b].len().to_string() };
            let pre = if self.preimage[b].is_empty() {
                "-".to_string()
            } else {
                self.preimage[b].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            };
            writeln!(s, "node {b} type {kind} pre {pre}").expect("string write");
        }
        for cyc in &self.cycles {
            let ids: Vec<String> = cyc.iter().map(|b| b.to_string()).collect();
            writeln!(s, "cycle {}", ids.join(" ")).expect("string write");
        }
        s
    }
}

/// True iff every node has at most one preimage vertex.
pub fn check_preimage_condition(cactus: &Cactus) -> bool {
    cactus.preimage_violation().is_none()
}

fn inconsistent(msg: impl Into<String>) -> CactusError {
    CactusError::Inconsistent(msg.into())
}

/// Builds the cactus of a complete minimum-cut family.
pub fn build_cactus(g: &DoubleWeightedGraph, family: &MinCutFamily) -> Result<Cactus, CactusError> {
    let n = g.vertex_count();
    if family.vertex_count() != n {
        return Err(inconsistent("family built for a different vertex count"));
    }
    let sets: Vec<FixedBitSet> = family.shores().map(|s| s.as_bitset().clone()).collect();
    let index: HashMap<&FixedBitSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let lookup = |s: &FixedBitSet| -> Option<usize> {
        if s.contains(0) {
            let mut c = s.clone();
            c.toggle_range(..);
            index.get(&c).copied()
        } else {
            index.get(s).copied()
        }
    };

    let mut uf = UnionFind::new(sets.len());
    let mut crossing = vec![false; sets.len()];
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if cross(&sets[i], &sets[j]) {
                uf.union(i, j);
                crossing[i] = true;
                crossing[j] = true;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in (0..sets.len()).filter(|&i| crossing[i]) {
        classes.entry(uf.find(i)).or_default().push(i);
    }

    // Each crossing class becomes a cycle of atoms, listed from the atom
    // holding vertex 0.
    struct Ring {
        union: usize,
        parts: Vec<usize>,
    }
    let mut rings = Vec::new();
    for members in classes.values() {
        let mut atoms: BTreeMap<Vec<bool>, FixedBitSet> = BTreeMap::new();
        for v in 0..n {
            let sig: Vec<bool> = members.iter().map(|&i| sets[i].contains(v)).collect();
            atoms.entry(sig).or_insert_with(|| FixedBitSet::with_capacity(n)).insert(v);
        }
        let atoms: Vec<FixedBitSet> = atoms.into_values().collect();
        let l = atoms.len();
        if l < 4 {
            return Err(inconsistent(format!("crossing class with only {l} atoms")));
        }
        let mut adj = vec![Vec::new(); l];
        for a in 0..l {
            for b in a + 1..l {
                let mut u = atoms[a].clone();
                u.union_with(&atoms[b]);
                if lookup(&u).is_some() {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        if adj.iter().any(|x| x.len() != 2) {
            return Err(inconsistent("crossing class atoms do not form a cycle"));
        }
        let start = atoms.iter().position(|a| a.contains(0)).expect("atoms cover vertex 0");
        let first_step = *adj[start]
            .iter()
            .min_by_key(|&&b| atoms[b].minimum())
            .expect("two neighbours");
        let mut walk = vec![start, first_step];
        while walk.len() < l {
            let (prev, cur) = (walk[walk.len() - 2], walk[walk.len() - 1]);
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            if next == start {
                return Err(inconsistent("crossing class atoms form several cycles"));
            }
            walk.push(next);
        }
        let mut union = atoms[start].clone();
        union.toggle_range(..);
        let union = lookup(&union).ok_or_else(|| inconsistent("cycle union is not a minimum cut"))?;
        let mut parts = Vec::new();
        for &a in &walk[1..] {
            parts.push(lookup(&atoms[a]).ok_or_else(|| inconsistent("cycle atom is not a minimum cut"))?);
        }
        if std::iter::once(union).chain(parts.iter().copied()).any(|i| crossing[i]) {
            return Err(inconsistent("cycle atom or union crosses another cut"));
        }
        rings.push(Ring { union, parts });
    }

    // Laminar tree over the cuts that cross nothing; None stands for V.
    let plain: Vec<usize> = (0..sets.len()).filter(|&i| !crossing[i]).collect();
    let mut parent: Vec<Option<usize>> = vec![None; sets.len()];
    for &i in &plain {
        let size = sets[i].count_ones(..);
        parent[i] = plain
            .iter()
            .copied()
            .filter(|&j| j != i && sets[i].is_subset(&sets[j]) && sets[j].count_ones(..) > size)
            .min_by_key(|&j| (sets[j].count_ones(..), j));
    }
    let mut ring_of_union = vec![None; sets.len()];
    for (r, ring) in rings.iter().enumerate() {
        ring_of_union[ring.union] = Some(r);
        for &p in &ring.parts {
            if parent[p] != Some(ring.union) {
                return Err(inconsistent("cycle atom is not directly below its union"));
            }
        }
    }
    let is_union = |i: Option<usize>| i.is_some_and(|i| ring_of_union[i].is_some());

    // Node 0 is V; a cycle union disappears unless it is itself an atom of
    // an enclosing cycle, in which case it stays as an empty node.
    let mut node_of: Vec<Option<usize>> = vec![None; sets.len()];
    let mut node_sets: Vec<Option<usize>> = vec![None];
    for &i in &plain {
        if ring_of_union[i].is_some() && !is_union(parent[i]) {
            continue;
        }
        node_of[i] = Some(node_sets.len());
        node_sets.push(Some(i));
    }
    let node_for = |i: Option<usize>| -> usize {
        match i {
            None => 0,
            Some(i) => node_of[i].expect("kept set"),
        }
    };

    let mut covered: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); node_sets.len()];
    let mut covered_by_set: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); sets.len()];
    let mut root_covered = FixedBitSet::with_capacity(n);
    for &i in &plain {
        match parent[i] {
            Some(p) => covered_by_set[p].union_with(&sets[i]),
            None => root_covered.union_with(&sets[i]),
        }
    }
    covered[0] = root_covered;
    let mut preimage = Vec::with_capacity(node_sets.len());
    for (b, s) in node_sets.iter().enumerate() {
        let mut own = match s {
            None => {
                let mut all = FixedBitSet::with_capacity(n);
                all.insert_range(..);
                all
            }
            Some(i) => {
                covered[b] = covered_by_set[*i].clone();
                sets[*i].clone()
            }
        };
        own.difference_with(&covered[b]);
        preimage.push(own.ones().collect::<Vec<_>>());
    }
    for &i in &plain {
        if ring_of_union[i].is_some() && node_of[i].is_none() && !covered_by_set[i].eq(&sets[i]) {
            return Err(inconsistent("vanishing cycle union owns vertices"));
        }
    }

    let mut cycles = Vec::new();
    for &i in &plain {
        if node_of[i].is_some() && !is_union(parent[i]) {
            cycles.push(vec![node_for(parent[i]), node_for(Some(i))]);
        }
    }
    for ring in &rings {
        let head = if node_of[ring.union].is_some() { node_for(Some(ring.union)) } else { node_for(parent[ring.union]) };
        let mut cyc = vec![head];
        cyc.extend(ring.parts.iter().map(|&p| node_for(Some(p))));
        cycles.push(cyc);
    }

    let mut phi = vec![usize::MAX; n];
    for (b, pre) in preimage.iter().enumerate() {
        for &v in pre {
            phi[v] = b;
        }
    }
    if phi.contains(&usize::MAX) {
        return Err(inconsistent("node preimages do not cover every vertex"));
    }

    let cactus = Cactus { k: family.k(), preimage, cycles, phi };
    let family_set: BTreeSet<CutShore> = family.shores().cloned().collect();
    if cactus.pullback_shores() != family_set {
        return Err(inconsistent("cactus 2-cuts differ from the cut family"));
    }
    Ok(cactus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    /// The shore below a cactus node.
    Node(usize),
    /// The union of shores below a non-trivial cycle's non-head nodes.
    Cycle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeType {
    External,
    InternalType1,
    InternalType0,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutEntry {
    pub kind: CutKind,
    /// Side not containing the root vertex.
    pub shore: CutShore,
    pub node_type: Option<NodeType>,
    /// The preimage vertex of a Type-1 node.
    pub vertex: Option<usize>,
    pub parent: Option<usize>,
    /// For cycles, listed along the cycle starting after the head.
    pub children: Vec<usize>,
    /// Head node of a cycle entry.
    pub head: Option<usize>,
}

/// The basic cuts seen from a degree-K root vertex, ordered so that every
/// child comes before its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedCutTree {
    pub k: u64,
    pub root_vertex: usize,
    pub root_node: usize,
    pub entries: Vec<CutEntry>,
    pub order: Vec<usize>,
    /// The entry whose shore is everything but the root vertex.
    pub top: usize,
}

pub fn root_cut_tree(g: &DoubleWeightedGraph, cactus: &Cactus) -> Result<RootedCutTree, CactusError> {
    let n = g.vertex_count();
    if cactus.phi.len() != n {
        return Err(inconsistent("cactus built for a different graph"));
    }
    let k = cactus.k();
    let mut r = None;
    for v in 0..n {
        if g.weighted_degree(v)? == k {
            r = Some(v);
            break;
        }
    }
    let r = r.ok_or(CactusError::NoRoot(k))?;
    if let Some((node, vertices)) = cactus.preimage_violation() {
        return Err(CactusError::PreimageViolation { node, vertices });
    }
    let rho = cactus.phi(r);
    let node_cycles = cactus.node_cycles();
    if node_cycles[rho].len() != 1 {
        return Err(inconsistent("root vertex maps to an internal node"));
    }

    let nodes = cactus.node_count();
    let mut head = vec![usize::MAX; cactus.cycles.len()];
    let mut above = vec![usize::MAX; nodes];
    let mut discovered = vec![rho];
    let mut stack = vec![rho];
    let mut seen = vec![false; nodes];
    seen[rho] = true;
    while let Some(b) = stack.pop() {
        for &c in &node_cycles[b] {
            if head[c] != usize::MAX {
                continue;
            }
            head[c] = b;
            for &a in &cactus.cycles[c] {
                if a != b {
                    if seen[a] {
                        return Err(inconsistent("cactus cycles do not form a tree"));
                    }
                    seen[a] = true;
                    above[a] = c;
                    discovered.push(a);
                    stack.push(a);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(inconsistent("cactus is disconnected"));
    }

    let mut below: Vec<FixedBitSet> = (0..nodes)
        .map(|b| cactus.preimage(b).iter().copied().collect::<FixedBitSet>())
        .map(|mut s| {
            s.grow(n);
            s
        })
        .collect();
    for &a in discovered.iter().rev() {
        if a == rho {
            continue;
        }
        let h = head[above[a]];
        let (src, dst) = (below[a].clone(), &mut below[h]);
        dst.union_with(&src);
    }

    let mut entries: Vec<CutEntry> = Vec::new();
    let mut node_entry = vec![usize::MAX; nodes];
    let mut cycle_entry = vec![usize::MAX; cactus.cycles.len()];
    for b in 0..nodes {
        if b == rho {
            continue;
        }
        let pre = cactus.preimage(b);
        let node_type = match (node_cycles[b].len(), pre.len()) {
            (1, 1) => NodeType::External,
            (1, _) => return Err(inconsistent("external node without a preimage")),
            (_, 1) => NodeType::InternalType1,
            _ => NodeType::InternalType0,
        };
        node_entry[b] = entries.len();
        entries.push(CutEntry {
            kind: CutKind::Node(b),
            shore: CutShore::from_bitset(below[b].clone())?,
            node_type: Some(node_type),
            vertex: pre.first().copied(),
            parent: None,
            children: Vec::new(),
            head: None,
        });
    }
    for (c, cyc) in cactus.cycles.iter().enumerate() {
        if cyc.len() == 2 {
            continue;
        }
        let mut shore = FixedBitSet::with_capacity(n);
        for &a in cyc {
            if a != head[c] {
                shore.union_with(&below[a]);
            }
        }
        cycle_entry[c] = entries.len();
        entries.push(CutEntry {
            kind: CutKind::Cycle(c),
            shore: CutShore::from_bitset(shore)?,
            node_type: None,
            vertex: None,
            parent: None,
            children: Vec::new(),
            head: Some(head[c]),
        });
    }
    let parent_of_cycle = |c: usize| (head[c] != rho).then(|| node_entry[head[c]]);
    for b in 0..nodes {
        if b == rho {
            continue;
        }
        let c = above[b];
        entries[node_entry[b]].parent = if cactus.cycles[c].len() == 2 { parent_of_cycle(c) } else { Some(cycle_entry[c]) };
    }
    for (c, cyc) in cactus.cycles.iter().enumerate() {
        if cyc.len() == 2 {
            continue;
        }
        entries[cycle_entry[c]].parent = parent_of_cycle(c);
        let at = cyc.iter().position(|&a| a == head[c]).expect("head on its cycle");
        let l = cyc.len();
        entries[cycle_entry[c]].children = (1..l).map(|i| node_entry[cyc[(at + i) % l]]).collect();
    }
    for b in 0..nodes {
        for &c in &node_cycles[b] {
            if head[c] != b || b == rho {
                continue;
            }
            let child = if cactus.cycles[c].len() == 2 {
                let other = cactus.cycles[c].iter().copied().find(|&a| a != b).expect("two nodes");
                node_entry[other]
            } else {
                cycle_entry[c]
            };
            entries[node_entry[b]].children.push(child);
        }
    }
    let tops: Vec<usize> = (0..entries.len()).filter(|&i| entries[i].parent.is_none()).collect();
    if tops.len() != 1 {
        return Err(inconsistent("root node does not hang off a single cycle"));
    }
    let top = tops[0];

    let mut order = Vec::with_capacity(entries.len());
    let mut stack = vec![(top, false)];
    while let Some((e, done)) = stack.pop() {
        if done {
            order.push(e);
            continue;
        }
        stack.push((e, true));
        for &c in entries[e].children.iter().rev() {
            stack.push((c, false));
        }
    }
    Ok(RootedCutTree { k, root_vertex: r, root_node: rho, entries, order, top })
}

/// Edge weight between every pair of quadrants of two crossing cuts must
/// follow the even-K pattern: K/2 between neighbouring quadrants, nothing
/// across the diagonals. Returns offending member pairs.
pub fn quadrant_violations(g: &DoubleWeightedGraph, family: &MinCutFamily) -> Vec<(usize, usize)> {
    let list: Vec<&CutShore> = family.shores().collect();
    let n = g.vertex_count();
    let k = family.k();
    family
        .crossing_pairs()
        .into_iter()
        .filter(|&(i, j)| {
            if k % 2 == 1 {
                return true;
            }
            let (x, y) = (list[i].as_bitset(), list[j].as_bitset());
            let mut q = vec![FixedBitSet::with_capacity(n); 4];
            for v in 0..n {
                q[usize::from(x.contains(v)) * 2 + usize::from(y.contains(v))].insert(v);
            }
            let between = |a: usize, b: usize| -> u64 {
                g.edges()
                    .iter()
                    .filter(|e| (q[a].contains(e.u) && q[b].contains(e.v)) || (q[a].contains(e.v) && q[b].contains(e.u)))
                    .map(|e| e.weight.light())
                    .sum()
            };
            // quadrants: 0 outside both, 1 only Y, 2 only X, 3 both
            let sides_ok = [(0, 1), (0, 2), (1, 3), (2, 3)].iter().all(|&(a, b)| 2 * between(a, b) == k);
            let diagonals_ok = between(0, 3) == 0 && between(1, 2) == 0;
            !(sides_ok && diagonals_ok)
        })
        .collect()
}

/// Whether every stored shore has cut size exactly `k`.
pub fn family_cut_sizes_ok(g: &DoubleWeightedGraph, family: &MinCutFamily) -> bool {
    family.shores().all(|s| bitset_cut_size(g, s.as_bitset()) == family.k())
}
