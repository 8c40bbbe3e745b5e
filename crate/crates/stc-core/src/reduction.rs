//! (M2P1N)-SAT instances and the two reductions to spanning tree congestion:
//! one to double-weighted graphs of degree 3 (flowers for the root and the
//! negative clauses, 4-cycles for variables) and one to graphs of degree 4
//! (a root cycle of triangles).
//!
//! Every vertex gets a role label that names the clause or variable it
//! belongs to, so an artifact can be rebuilt from its labelled graph alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gadgets::{append_flower, FlowerEmbedding, GadgetError};
use crate::graph::{tree_congestion, tree_shores, DoubleWeight, DoubleWeightedGraph, GraphError, SpanningTree};

/// Variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    ThreeP([usize; 3]),
    TwoP([usize; 2]),
    TwoN([usize; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseKind {
    ThreeP,
    TwoP,
    TwoN,
}

impl ClauseKind {
    pub const ALL: [ClauseKind; 3] = [ClauseKind::ThreeP, ClauseKind::TwoP, ClauseKind::TwoN];

    pub fn tag(self) -> &'static str {
        match self {
            ClauseKind::ThreeP => "3p",
            ClauseKind::TwoP => "2p",
            ClauseKind::TwoN => "2n",
        }
    }
}

impl Clause {
    pub fn kind(&self) -> ClauseKind {
        match self {
            Clause::ThreeP(_) => ClauseKind::ThreeP,
            Clause::TwoP(_) => ClauseKind::TwoP,
            Clause::TwoN(_) => ClauseKind::TwoN,
        }
    }

    pub fn vars(&self) -> &[usize] {
        match self {
            Clause::ThreeP(v) => v,
            Clause::TwoP(v) | Clause::TwoN(v) => v,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Clause::TwoN(_))
    }

    /// `values[x - 1]` is the value of variable `x`.
    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        self.vars().iter().any(|&x| values[x - 1] != self.is_negative())
    }

    fn from_parts(kind: ClauseKind, vars: &[usize]) -> Option<Clause> {
        match (kind, vars) {
            (ClauseKind::ThreeP, &[a, b, c]) => Some(Clause::ThreeP([a, b, c])),
            (ClauseKind::TwoP, &[a, b]) => Some(Clause::TwoP([a, b])),
            (ClauseKind::TwoN, &[a, b]) => Some(Clause::TwoN([a, b])),
            _ => None,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.vars().iter().map(|v| v.to_string()).collect();
        write!(f, "{}({})", self.kind().tag(), vars.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    pub n: usize,
    pub clauses: Vec<Clause>,
}

impl SatInstance {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Self {
        SatInstance { n, clauses }
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn count(&self, kind: ClauseKind) -> usize {
        self.clauses.iter().filter(|c| c.kind() == kind).count()
    }

    /// First clause not satisfied, by index.
    pub fn first_unsatisfied(&self, values: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.satisfied_by(values))
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        values.len() == self.n && self.first_unsatisfied(values).is_none()
    }

    /// Index of the clause of `kind` containing variable `x`.
    pub fn clause_of(&self, x: usize, kind: ClauseKind) -> Option<usize> {
        self.clauses.iter().position(|c| c.kind() == kind && c.vars().contains(&x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatViolation {
    OutOfRange { clause: usize, var: usize },
    RepeatedInClause { clause: usize, var: usize },
    TypeMultiplicity { var: usize, kind: ClauseKind, count: usize },
    SharedPair { first: usize, second: usize },
}

impl fmt::Display for SatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatViolation::OutOfRange { clause, var } => write!(f, "out of range: clause {clause} names variable {var}"),
            SatViolation::RepeatedInClause { clause, var } => {
                write!(f, "repeated variable: clause {clause} lists {var} twice")
            }
            SatViolation::TypeMultiplicity { var, kind, count } => write!(
                f,
                "type multiplicity: variable {var} appears {count} times in {} clauses",
                kind.tag().to_uppercase()
            ),
            SatViolation::SharedPair { first, second } => {
                write!(f, "shared pair: clauses {first} and {second} share two variables")
            }
        }
    }
}

/// Every rule violation, with clauses numbered from 1.
pub fn validate_sat(inst: &SatInstance) -> Result<(), Vec<SatViolation>> {
    let mut out = Vec::new();
    for (i, c) in inst.clauses.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &x in c.vars() {
            if x == 0 || x > inst.n {
                out.push(SatViolation::OutOfRange { clause: i + 1, var: x });
            } else if !seen.insert(x) {
                out.push(SatViolation::RepeatedInClause { clause: i + 1, var: x });
            }
        }
    }
    for x in 1..=inst.n {
        for kind in ClauseKind::ALL {
            let count = inst.clauses.iter().filter(|c| c.kind() == kind && c.vars().contains(&x)).count();
            if count != 1 {
                out.push(SatViolation::TypeMultiplicity { var: x, kind, count });
            }
        }
    }
    for i in 0..inst.m() {
        for j in i + 1..inst.m() {
            let a: BTreeSet<usize> = inst.clauses[i].vars().iter().copied().collect();
            if inst.clauses[j].vars().iter().filter(|x| a.contains(x)).count() >= 2 {
                out.push(SatViolation::SharedPair { first: i + 1, second: j + 1 });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<SatViolation>),
    #[error("assignment has {got} values, instance has {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("assignment leaves clause {index} {clause} unsatisfied")]
    Unsatisfied { index: usize, clause: Clause },
    #[error("tree congestion {got} exceeds K = {k}")]
    CongestionTooHigh { got: u64, k: u64 },
    #[error("no valid instance after {0} attempts")]
    GenerationFailed(usize),
    #[error("labels do not describe a reduction: {0}")]
    Labels(String),
    #[error("graph differs from the reduction of its labelled instance")]
    Mismatch,
    #[error("variable count must be a positive multiple of 6, got {0}")]
    BadSize(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// Maximum degree 3, K = 2|E|.
    Degree3,
    /// Maximum degree 4, K = 3m + 5.
    Degree4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRole {
    /// Inside the root gadget, a clause gadget or a variable gadget.
    Internal,
    RootVariable { var: usize },
    RootClause { clause: usize },
    ClauseVariable { clause: usize, var: usize },
    /// Degree-4 root cycle, including the unit edges of each triangle.
    RootCycle,
    /// Degree-4 edges from the root cycle to a terminal vertex.
    RootTerminal,
}

impl EdgeRole {
    pub fn is_external(self) -> bool {
        matches!(self, EdgeRole::RootVariable { .. } | EdgeRole::RootClause { .. } | EdgeRole::ClauseVariable { .. })
    }
}

/// A reduction output together with the role of every edge and vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub kind: ReductionKind,
    pub instance: SatInstance,
    pub graph: DoubleWeightedGraph,
    pub k: u64,
    pub edge_roles: Vec<EdgeRole>,
    /// Root flower then one flower per 2N clause (degree 3 only).
    pub flowers: Vec<FlowerEmbedding>,
    /// Clause index to its flower's index in `flowers`.
    pub clause_flower: BTreeMap<usize, usize>,
    /// Per clause: the center vertex.
    pub centers: Vec<usize>,
    /// Per variable (index `x - 1`): gadget vertices. Degree 3 lists
    /// `x^2N, x^2P, x^R, x^3P`; degree 4 just the variable vertex.
    pub variable_gadgets: Vec<Vec<usize>>,
    /// Per clause: `(var, clause-variable edge)` in clause order.
    pub clause_edges: Vec<Vec<(usize, usize)>>,
    /// Per variable: the root-variable edge.
    pub root_variable_edges: Vec<usize>,
    /// Root cycle vertices in cycle order (degree 4 only).
    pub root_vertices: Vec<usize>,
}

fn clause_label(j: usize, c: &Clause) -> String {
    let vars: Vec<String> = c.vars().iter().map(|v| v.to_string()).collect();
    format!("{}{}({})", c.kind().tag(), j + 1, vars.join(","))
}

fn check(inst: &SatInstance) -> Result<(), ReductionError> {
    validate_sat(inst).map_err(ReductionError::Invalid)
}

/// Degree-3 reduction. K is twice the edge count, which does not depend on
/// the K used for the heavy weights.
pub fn reduce_degree3(inst: &SatInstance) -> Result<ReductionArtifact, ReductionError> {
    check(inst)?;
    let probe = build_degree3(inst, 6)?;
    let k = 2 * probe.graph.edge_count() as u64;
    build_degree3(inst, k)
}

/// The degree-3 construction with the heavy weights instantiated for `k`.
pub fn build_degree3(inst: &SatInstance, k: u64) -> Result<ReductionArtifact, ReductionError> {
    check(inst)?;
    let n = inst.n;
    let mut g = DoubleWeightedGraph::new(0);
    let mut roles: Vec<EdgeRole> = Vec::new();
    let push_role = |g: &DoubleWeightedGraph, roles: &mut Vec<EdgeRole>, role: EdgeRole| {
        roles.resize(g.edge_count(), EdgeRole::Internal);
        if let Some(last) = roles.last_mut() {
            *last = role;
        }
    };

    // root terminals: variables, then clauses in order (one per 2P, two per 2N)
    let mut root_slots: Vec<(Option<usize>, Option<usize>)> = (1..=n).map(|x| (Some(x), None)).collect();
    for (j, c) in inst.clauses.iter().enumerate() {
        match c.kind() {
            ClauseKind::TwoP => root_slots.push((None, Some(j))),
            ClauseKind::TwoN => {
                root_slots.push((None, Some(j)));
                root_slots.push((None, Some(j)));
            }
            ClauseKind::ThreeP => {}
        }
    }
    let root = append_flower(&mut g, root_slots.len(), k, "R.")?;
    let mut flowers = vec![root];
    let mut clause_flower = BTreeMap::new();
    let mut centers = vec![usize::MAX; inst.m()];
    for (j, c) in inst.clauses.iter().enumerate() {
        let label = clause_label(j, c);
        if c.is_negative() {
            let f = append_flower(&mut g, 4, k, &format!("{label}."))?;
            centers[j] = f.center();
            clause_flower.insert(j, flowers.len());
            flowers.push(f);
        } else {
            centers[j] = g.add_labeled_vertex(label);
        }
    }
    roles.resize(g.edge_count(), EdgeRole::Internal);

    let mut variable_gadgets = Vec::with_capacity(n);
    for x in 1..=n {
        let vs: Vec<usize> = ["2N", "2P", "R", "3P"].iter().map(|s| g.add_labeled_vertex(format!("x{x}.{s}"))).collect();
        for i in 0..4 {
            g.add_unit_edge(vs[i], vs[(i + 1) % 4])?;
        }
        variable_gadgets.push(vs);
    }
    roles.resize(g.edge_count(), EdgeRole::Internal);

    let rv = DoubleWeight::new(1, k - 5)?;
    let rc = DoubleWeight::new(1, k - 1)?;
    let mut root_variable_edges = Vec::with_capacity(n);
    for x in 1..=n {
        g.add_edge(variable_gadgets[x - 1][2], flowers[0].terminal[x - 1], rv)?;
        push_role(&g, &mut roles, EdgeRole::RootVariable { var: x });
        root_variable_edges.push(g.edge_count() - 1);
    }
    let mut clause_edges = vec![Vec::new(); inst.m()];
    for (j, c) in inst.clauses.iter().enumerate() {
        for (p, &x) in c.vars().iter().enumerate() {
            let (from, to) = match c.kind() {
                // flower terminals 3 and 4 face the variables
                ClauseKind::TwoN => (flowers[clause_flower[&j]].terminal[2 + p], variable_gadgets[x - 1][0]),
                ClauseKind::TwoP => (centers[j], variable_gadgets[x - 1][1]),
                ClauseKind::ThreeP => (centers[j], variable_gadgets[x - 1][3]),
            };
            g.add_unit_edge(from, to)?;
            push_role(&g, &mut roles, EdgeRole::ClauseVariable { clause: j, var: x });
            clause_edges[j].push((x, g.edge_count() - 1));
        }
    }
    let mut slot_used = BTreeMap::<usize, usize>::new();
    for (slot, &(_, clause)) in root_slots.iter().enumerate() {
        let Some(j) = clause else { continue };
        let root_terminal = flowers[0].terminal[slot];
        let from = if inst.clauses[j].is_negative() {
            let used = slot_used.entry(j).or_insert(0);
            *used += 1;
            flowers[clause_flower[&j]].terminal[*used - 1]
        } else {
            centers[j]
        };
        g.add_edge(from, root_terminal, rc)?;
        push_role(&g, &mut roles, EdgeRole::RootClause { clause: j });
    }

    Ok(ReductionArtifact {
        kind: ReductionKind::Degree3,
        instance: inst.clone(),
        graph: g,
        k,
        edge_roles: roles,
        flowers,
        clause_flower,
        centers,
        variable_gadgets,
        clause_edges,
        root_variable_edges,
        root_vertices: Vec::new(),
    })
}

/// Degree-4 reduction with K = 3m + 5.
pub fn reduce_degree4(inst: &SatInstance) -> Result<ReductionArtifact, ReductionError> {
    check(inst)?;
    let n = inst.n;
    let k = 3 * inst.m() as u64 + 5;
    let mut g = DoubleWeightedGraph::new(0);
    let mut roles = Vec::new();
    let var_vertices: Vec<usize> = (1..=n).map(|x| g.add_labeled_vertex(format!("x{x}"))).collect();
    let centers: Vec<usize> =
        inst.clauses.iter().enumerate().map(|(j, c)| g.add_labeled_vertex(clause_label(j, c))).collect();

    // owners of root triangles: variables, then 2P/2N clauses in order
    let mut owners: Vec<(usize, String)> = var_vertices.iter().map(|&v| (v, g.vertex_label(v).unwrap_or("").to_string())).collect();
    for (j, c) in inst.clauses.iter().enumerate() {
        if c.kind() != ClauseKind::ThreeP {
            owners.push((centers[j], clause_label(j, c)));
        }
    }
    let mut tri = Vec::with_capacity(owners.len());
    for (_, name) in &owners {
        let r1 = g.add_labeled_vertex(format!("{name}.r1"));
        let r2 = g.add_labeled_vertex(format!("{name}.r2"));
        let t = g.add_labeled_vertex(format!("{name}.t"));
        g.add_unit_edge(r1, r2)?;
        roles.push(EdgeRole::RootCycle);
        g.add_unit_edge(r1, t)?;
        roles.push(EdgeRole::RootTerminal);
        g.add_unit_edge(r2, t)?;
        roles.push(EdgeRole::RootTerminal);
        tri.push((r1, r2, t));
    }
    let two = DoubleWeight::uniform(2)?;
    for i in 0..tri.len() {
        let next = tri[(i + 1) % tri.len()].0;
        g.add_edge(tri[i].1, next, two)?;
        roles.push(EdgeRole::RootCycle);
    }
    let mut root_variable_edges = Vec::with_capacity(n);
    for x in 1..=n {
        root_variable_edges.push(g.add_edge(var_vertices[x - 1], tri[x - 1].2, DoubleWeight::new(1, k - 5)?)?);
        roles.push(EdgeRole::RootVariable { var: x });
    }
    let mut owner_slot = n;
    for (j, c) in inst.clauses.iter().enumerate() {
        let w = match c.kind() {
            ClauseKind::ThreeP => continue,
            ClauseKind::TwoP => DoubleWeight::new(1, k - 1)?,
            ClauseKind::TwoN => DoubleWeight::new(2, k - 1)?,
        };
        g.add_edge(centers[j], tri[owner_slot].2, w)?;
        roles.push(EdgeRole::RootClause { clause: j });
        owner_slot += 1;
    }
    let mut clause_edges = vec![Vec::new(); inst.m()];
    for (j, c) in inst.clauses.iter().enumerate() {
        let w = if c.is_negative() { DoubleWeight::new(1, k - 3)? } else { DoubleWeight::new(1, k - 2)? };
        for &x in c.vars() {
            let e = g.add_edge(centers[j], var_vertices[x - 1], w)?;
            roles.push(EdgeRole::ClauseVariable { clause: j, var: x });
            clause_edges[j].push((x, e));
        }
    }
    let root_vertices = tri.iter().flat_map(|&(r1, r2, _)| [r1, r2]).collect();
    Ok(ReductionArtifact {
        kind: ReductionKind::Degree4,
        instance: inst.clone(),
        graph: g,
        k,
        edge_roles: roles,
        flowers: Vec::new(),
        clause_flower: BTreeMap::new(),
        centers,
        variable_gadgets: var_vertices.into_iter().map(|v| vec![v]).collect(),
        clause_edges,
        root_variable_edges,
        root_vertices,
    })
}

impl ReductionArtifact {
    fn check_assignment(&self, values: &[bool]) -> Result<(), ReductionError> {
        if values.len() != self.instance.n {
            return Err(ReductionError::AssignmentLength { got: values.len(), want: self.instance.n });
        }
        if let Some(j) = self.instance.first_unsatisfied(values) {
            return Err(ReductionError::Unsatisfied { index: j + 1, clause: self.instance.clauses[j] });
        }
        Ok(())
    }

    /// For each clause, the lowest satisfying variable and its edge.
    fn chosen_clause_edges(&self, values: &[bool]) -> Vec<usize> {
        self.instance
            .clauses
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let (_, e) = *self.clause_edges[j]
                    .iter()
                    .filter(|&&(x, _)| values[x - 1] != c.is_negative())
                    .min_by_key(|&&(x, _)| x)
                    .expect("clause is satisfied");
                e
            })
            .collect()
    }

    fn check_congestion(&self, t: &SpanningTree) -> Result<(), ReductionError> {
        let got = tree_congestion(&self.graph, t);
        if got > self.k {
            return Err(ReductionError::CongestionTooHigh { got, k: self.k });
        }
        Ok(())
    }
}

/// Spanning tree built from a satisfying assignment.
pub fn assignment_to_tree(art: &ReductionArtifact, values: &[bool]) -> Result<SpanningTree, ReductionError> {
    art.check_assignment(values)?;
    let g = &art.graph;
    let mut edges: Vec<usize> = art.root_variable_edges.clone();
    edges.extend(art.chosen_clause_edges(values));
    match art.kind {
        ReductionKind::Degree3 => {
            for f in &art.flowers {
                edges.extend(f.canonical_tree_edges());
            }
            for vs in &art.variable_gadgets {
                for i in 0..3 {
                    edges.push(g.edge_between(vs[i], vs[i + 1]).expect("gadget cycle edge"));
                }
            }
        }
        ReductionKind::Degree4 => {
            let cycle: Vec<usize> = (0..g.edge_count()).filter(|&e| art.edge_roles[e] == EdgeRole::RootCycle).collect();
            let dropped = *cycle.iter().rev().find(|&&e| g.edge(e).weight.light() == 2).expect("root cycle has weight-2 edges");
            edges.extend(cycle.into_iter().filter(|&e| e != dropped));
            for pair in art.root_vertices.chunks(2) {
                let r1 = pair[0];
                let t = g
                    .incident(r1)
                    .iter()
                    .find(|&&e| art.edge_roles[e] == EdgeRole::RootTerminal)
                    .copied()
                    .expect("triangle edge");
                edges.push(t);
            }
        }
    }
    Ok(SpanningTree::new(g, edges)?)
}

struct TreeView<'a> {
    art: &'a ReductionArtifact,
    adj: Vec<Vec<(usize, usize)>>,
    in_tree: FixedBitSet,
}

impl<'a> TreeView<'a> {
    fn new(art: &'a ReductionArtifact, t: &SpanningTree) -> Self {
        let g = &art.graph;
        let mut adj = vec![Vec::new(); g.vertex_count()];
        let mut in_tree = FixedBitSet::with_capacity(g.edge_count());
        for &e in t.edges() {
            let ed = g.edge(e);
            adj[ed.u].push((ed.v, e));
            adj[ed.v].push((ed.u, e));
            in_tree.insert(e);
        }
        TreeView { art, adj, in_tree }
    }

    /// Tree edges on the path from `a` to `b`.
    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.adj.len();
        let mut pred = vec![None; n];
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(a);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if x == b {
                break;
            }
            for &(y, e) in &self.adj[x] {
                if !seen.put(y) {
                    pred[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut y = b;
        while let Some((x, e)) = pred[y] {
            out.push(e);
            y = x;
        }
        out.reverse();
        out
    }

    /// Whether the tree has a path from the clause center entering variable
    /// `x`'s gadget over the clause-variable edge and leaving it over another
    /// external edge, with no further external edges.
    fn traverses(&self, clause: usize, x: usize) -> bool {
        let art = self.art;
        let g = &art.graph;
        let Some(&(_, enter)) = art.clause_edges[clause].iter().find(|&&(v, _)| v == x) else { return false };
        if !self.in_tree.contains(enter) {
            return false;
        }
        let gadget: BTreeSet<usize> = art.variable_gadgets[x - 1].iter().copied().collect();
        let ed = g.edge(enter);
        let (outer, inner) = if gadget.contains(&ed.v) { (ed.u, ed.v) } else { (ed.v, ed.u) };
        if self.path(art.centers[clause], outer).iter().any(|&e| art.edge_roles[e].is_external()) {
            return false;
        }
        let mut seen = BTreeSet::from([inner]);
        let mut stack = vec![inner];
        while let Some(v) = stack.pop() {
            for &(y, e) in &self.adj[v] {
                if e == enter {
                    continue;
                }
                if art.edge_roles[e].is_external() {
                    return true;
                }
                if gadget.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        false
    }

    fn negative_traversal(&self, x: usize) -> bool {
        match self.art.kind {
            ReductionKind::Degree3 => self.art.instance.clause_of(x, ClauseKind::TwoN).is_some_and(|a| self.traverses(a, x)),
            ReductionKind::Degree4 => self.linked(x, ClauseKind::TwoN),
        }
    }

    fn positive_traversal(&self, x: usize) -> bool {
        [ClauseKind::ThreeP, ClauseKind::TwoP].into_iter().any(|kind| match self.art.kind {
            ReductionKind::Degree3 => self.art.instance.clause_of(x, kind).is_some_and(|p| self.traverses(p, x)),
            ReductionKind::Degree4 => self.linked(x, kind),
        })
    }

    /// Degree 4: the tree holds the edge between `x` and its clause of `kind`.
    fn linked(&self, x: usize, kind: ClauseKind) -> bool {
        let Some(j) = self.art.instance.clause_of(x, kind) else { return false };
        self.art.clause_edges[j].iter().any(|&(v, e)| v == x && self.in_tree.contains(e))
    }
}

/// Reads an assignment off a tree of congestion at most K: a variable is
/// false exactly when the tree reaches it from its negative clause.
pub fn tree_to_assignment(art: &ReductionArtifact, t: &SpanningTree) -> Result<Vec<bool>, ReductionError> {
    art.check_congestion(t)?;
    let view = TreeView::new(art, t);
    Ok((1..=art.instance.n).map(|x| !view.negative_traversal(x)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<(&'static str, bool)>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{} {name}", if *ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// Checks the structural facts every congestion-K tree must have.
pub fn audit_structural_lemmas(art: &ReductionArtifact, t: &SpanningTree) -> Result<AuditReport, ReductionError> {
    art.check_congestion(t)?;
    let g = &art.graph;
    let view = TreeView::new(art, t);
    let mut checks = Vec::new();
    let no_root_clause = t.edges().iter().all(|&e| !matches!(art.edge_roles[e], EdgeRole::RootClause { .. }));
    checks.push(("no root-clause edge in the tree", no_root_clause));
    let exclusive = (1..=art.instance.n).all(|x| !(view.negative_traversal(x) && view.positive_traversal(x)));
    checks.push(("no variable reached from both a negative and a positive clause", exclusive));
    match art.kind {
        ReductionKind::Degree3 => {
            let mut flower_edges = FixedBitSet::with_capacity(g.edge_count());
            for f in &art.flowers {
                flower_edges.extend(f.edges());
            }
            let mut intact = true;
            for &e in t.edges().iter().filter(|&&e| !flower_edges.contains(e)) {
                let (side, _) = tree_shores(g, t, e)?;
                intact &= art.flowers.iter().all(|f| {
                    let first = side.contains(f.core[0]);
                    f.core.iter().all(|&c| side.contains(c) == first)
                });
            }
            checks.push(("flower cores never split by a non-flower tree edge", intact));
        }
        ReductionKind::Degree4 => {
            // tree paths are unique, so connectivity inside the root edges
            // is the same as every root-to-root path staying there
            let mut uf = crate::graph::UnionFind::new(g.vertex_count());
            for &e in t.edges() {
                if matches!(art.edge_roles[e], EdgeRole::RootCycle | EdgeRole::RootTerminal) {
                    uf.union(g.edge(e).u, g.edge(e).v);
                }
            }
            let first = uf.find(art.root_vertices[0]);
            let joined = art.root_vertices.iter().all(|&r| uf.find(r) == first);
            checks.push(("root vertices joined through root edges only", joined));
        }
    }
    let values: Vec<bool> = (1..=art.instance.n).map(|x| !view.negative_traversal(x)).collect();
    checks.push(("extracted assignment satisfies the instance", art.instance.is_satisfied_by(&values)));
    Ok(AuditReport { checks })
}

/// Rebuilds the artifact from a labelled graph and checks the graph is
/// exactly what the reduction produces.
pub fn recover_artifact(g: &DoubleWeightedGraph) -> Result<ReductionArtifact, ReductionError> {
    let mut clauses: BTreeMap<usize, Clause> = BTreeMap::new();
    let mut n = 0;
    let mut degree3 = false;
    for v in 0..g.vertex_count() {
        let Some(label) = g.vertex_label(v) else { continue };
        if label == "R.c1" {
            degree3 = true;
        }
        if let Some(rest) = label.strip_prefix('x') {
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            if let Ok(x) = digits.parse::<usize>() {
                n = n.max(x);
            }
        }
        if let Some((j, c)) = parse_clause_label(label) {
            if clauses.insert(j, c).is_some_and(|old| old != c) {
                return Err(ReductionError::Labels(format!("clause {} has two descriptions", j + 1)));
            }
        }
    }
    let m = clauses.len();
    if m == 0 || clauses.keys().copied().ne(0..m) {
        return Err(ReductionError::Labels("clause numbering has gaps".into()));
    }
    let inst = SatInstance::new(n, clauses.into_values().collect());
    let art = if degree3 { reduce_degree3(&inst)? } else { reduce_degree4(&inst)? };
    let same = art.graph.vertex_count() == g.vertex_count()
        && art.graph.edges() == g.edges()
        && (0..g.vertex_count()).all(|v| art.graph.vertex_label(v) == g.vertex_label(v));
    if !same {
        return Err(ReductionError::Mismatch);
    }
    Ok(art)
}

/// `3p2(1,4,6)` style label, possibly followed by `.suffix`.
fn parse_clause_label(label: &str) -> Option<(usize, Clause)> {
    let kind = ClauseKind::ALL.into_iter().find(|k| label.starts_with(k.tag()))?;
    let rest = &label[2..];
    let open = rest.find('(')?;
    let close = rest.find(')')?;
    let j: usize = rest[..open].parse().ok()?;
    let vars: Vec<usize> = rest[open + 1..close].split(',').map(|s| s.parse().ok()).collect::<Option<_>>()?;
    Some((j.checked_sub(1)?, Clause::from_parts(kind, &vars)?))
}

/// A random valid instance on `n` variables (`n` a multiple of 6), built by
/// shuffling variables into triples and two perfect matchings until no two
/// clauses share a pair.
pub fn random_m2p1n(n: usize, seed: u64) -> Result<SatInstance, ReductionError> {
    const ATTEMPTS: usize = 10_000;
    if n == 0 || !n.is_multiple_of(6) {
        return Err(ReductionError::BadSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars: Vec<usize> = (1..=n).collect();
    for _ in 0..ATTEMPTS {
        let mut clauses = Vec::with_capacity(n / 3 + n);
        vars.shuffle(&mut rng);
        clauses.extend(vars.chunks(3).map(|c| {
            let mut c = [c[0], c[1], c[2]];
            c.sort_unstable();
            Clause::ThreeP(c)
        }));
        for negative in [false, true] {
            vars.shuffle(&mut rng);
            clauses.extend(vars.chunks(2).map(|c| {
                let p = [c[0].min(c[1]), c[0].max(c[1])];
                if negative {
                    Clause::TwoN(p)
                } else {
                    Clause::TwoP(p)
                }
            }));
        }
        let inst = SatInstance::new(n, clauses);
        if validate_sat(&inst).is_ok() {
            return Ok(inst);
        }
    }
    Err(ReductionError::GenerationFailed(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SatInstance {
        SatInstance::new(
            6,
            vec![
                Clause::ThreeP([1, 2, 3]),
                Clause::ThreeP([4, 5, 6]),
                Clause::TwoP([1, 4]),
                Clause::TwoP([2, 5]),
                Clause::TwoP([3, 6]),
                Clause::TwoN([1, 5]),
                Clause::TwoN([2, 6]),
                Clause::TwoN([3, 4]),
            ],
        )
    }

    /// Exhaustive scan, lowest assignment in binary order first.
    fn first_model(inst: &SatInstance) -> Option<Vec<bool>> {
        (0u32..1 << inst.n)
            .map(|mask| (0..inst.n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .find(|v| inst.is_satisfied_by(v))
    }

    #[test]
    fn sample_is_valid() {
        assert_eq!(validate_sat(&sample()), Ok(()));
    }

    #[test]
    fn violations_are_named() {
        let mut bad = sample();
        bad.clauses[1] = Clause::ThreeP([1, 5, 6]);
        let errs = validate_sat(&bad).unwrap_err();
        assert!(errs.iter().any(|e| e.to_string().starts_with("type multiplicity")));
        let mut shared = sample();
        shared.clauses[5] = Clause::TwoN([1, 4]);
        shared.clauses[7] = Clause::TwoN([3, 5]);
        let errs = validate_sat(&shared).unwrap_err();
        assert!(errs.contains(&SatViolation::SharedPair { first: 3, second: 6 }), "{errs:?}");
    }

    #[test]
    fn degree3_counts_and_degrees() {
        let inst = sample();
        let art = reduce_degree3(&inst).unwrap();
        let (n, m1, m2, m3) = (6, 3, 3, 2);
        let vertices = 3 * (2 * m1 + m2 + n) + 12 * m1 + (m2 + m3) + 4 * n;
        assert_eq!(art.graph.vertex_count(), vertices);
        // every vertex has degree 3, so edges = 3|V|/2
        assert_eq!(art.graph.edge_count() * 2, 3 * vertices);
        assert_eq!(art.k, 2 * art.graph.edge_count() as u64);
        assert!((0..vertices).all(|v| art.graph.weighted_degree(v).unwrap() == 3));
        assert!(art.graph.edges().iter().all(|e| e.weight.light() == 1));
        let heavy = |h: u64| art.graph.edges().iter().filter(|e| e.weight.heavy() == h).count();
        assert_eq!(heavy(art.k - 5), n);
        let flower_spokes = (2 * m1 + m2 + n - 1) + 3 * m1;
        assert_eq!(heavy(art.k - 1), m2 + 2 * m1 + flower_spokes);
        assert_eq!(build_degree3(&inst, 40).unwrap().graph.edge_count(), art.graph.edge_count());
    }

    #[test]
    fn degree4_weights() {
        let art = reduce_degree4(&sample()).unwrap();
        assert_eq!(art.k, 29);
        assert_eq!(art.graph.max_weighted_degree(), 4);
        for x in 1..=6 {
            assert_eq!(art.graph.weighted_degree(art.variable_gadgets[x - 1][0]).unwrap(), 4);
        }
        for (j, c) in art.instance.clauses.iter().enumerate() {
            let want = match c.kind() {
                ClauseKind::ThreeP => 3,
                ClauseKind::TwoP => 3,
                ClauseKind::TwoN => 4,
            };
            assert_eq!(art.graph.weighted_degree(art.centers[j]).unwrap(), want);
        }
    }

    #[test]
    fn six_variable_sample_is_unsatisfiable() {
        assert_eq!(first_model(&sample()), None);
    }

    #[test]
    fn round_trip_both_reductions() {
        let (inst, model) = (0..)
            .map(|seed| random_m2p1n(12, seed).unwrap())
            .find_map(|inst| first_model(&inst).map(|m| (inst, m)))
            .unwrap();
        for art in [reduce_degree3(&inst).unwrap(), reduce_degree4(&inst).unwrap()] {
            let t = assignment_to_tree(&art, &model).unwrap();
            assert!(tree_congestion(&art.graph, &t) <= art.k);
            let back = tree_to_assignment(&art, &t).unwrap();
            assert!(inst.is_satisfied_by(&back));
            let report = audit_structural_lemmas(&art, &t).unwrap();
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn unsatisfying_assignment_is_refused() {
        let art = reduce_degree3(&sample()).unwrap();
        let err = assignment_to_tree(&art, &[true; 6]).unwrap_err();
        assert!(matches!(err, ReductionError::Unsatisfied { clause: Clause::TwoN(_), .. }));
    }

    #[test]
    fn labels_recover_the_artifact() {
        for art in [reduce_degree3(&sample()).unwrap(), reduce_degree4(&sample()).unwrap()] {
            assert_eq!(recover_artifact(&art.graph).unwrap(), art);
        }
    }

    #[test]
    fn generator_is_valid_and_seeded() {
        for n in [6, 12] {
            for seed in 0..5 {
                let a = random_m2p1n(n, seed).unwrap();
                assert_eq!(validate_sat(&a), Ok(()));
                assert_eq!(a, random_m2p1n(n, seed).unwrap());
            }
        }
        assert_eq!(random_m2p1n(8, 0), Err(ReductionError::BadSize(8)));
    }
}
