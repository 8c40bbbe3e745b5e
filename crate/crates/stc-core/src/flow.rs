//! Augmenting-path max flow on the light weights of an undirected multigraph.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::graph::DoubleWeightedGraph;

/// Arc `2e` runs `u→v` and arc `2e+1` runs `v→u` for edge `e`; each starts
/// with the edge's light weight as capacity.
pub(crate) struct FlowNetwork {
    head: Vec<usize>,
    base: Vec<u64>,
    residual: Vec<u64>,
    out: Vec<Vec<usize>>,
    pred: Vec<usize>,
}

impl FlowNetwork {
    pub(crate) fn new(g: &DoubleWeightedGraph) -> Self {
        let mut head = Vec::with_capacity(2 * g.edge_count());
        let mut base = Vec::with_capacity(2 * g.edge_count());
        let mut out = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            head.push(e.v);
            head.push(e.u);
            base.push(e.weight.light());
            base.push(e.weight.light());
            out[e.u].push(2 * i);
            out[e.v].push(2 * i + 1);
        }
        let residual = base.clone();
        FlowNetwork { head, base, residual, out, pred: vec![usize::MAX; g.vertex_count()] }
    }

    /// Max flow from `sources` to `sinks` with edge `skip` removed, stopping
    /// as soon as the value exceeds `limit`. Leaves the residual in place.
    pub(crate) fn flow(
        &mut self,
        sources: &FixedBitSet,
        sinks: &FixedBitSet,
        skip: Option<usize>,
        limit: u64,
    ) -> u64 {
        self.residual.copy_from_slice(&self.base);
        if let Some(e) = skip {
            self.residual[2 * e] = 0;
            self.residual[2 * e + 1] = 0;
        }
        let n = self.out.len();
        let mut value = 0u64;
        let mut queue = VecDeque::new();
        while value <= limit {
            self.pred.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            let mut seen = FixedBitSet::with_capacity(n);
            for s in sources.ones() {
                seen.insert(s);
                queue.push_back(s);
            }
            let mut reached = None;
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    if self.residual[a] == 0 {
                        continue;
                    }
                    let y = self.head[a];
                    if seen.put(y) {
                        continue;
                    }
                    self.pred[y] = a;
                    if sinks.contains(y) {
                        reached = Some(y);
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
            let Some(end) = reached else { break };
            let mut push = u64::MAX;
            let mut y = end;
            while self.pred[y] != usize::MAX {
                let a = self.pred[y];
                push = push.min(self.residual[a]);
                y = self.head[a ^ 1];
            }
            let mut y = end;
            while self.pred[y] != usize::MAX {
                let a = self.pred[y];
                self.residual[a] -= push;
                self.residual[a ^ 1] += push;
                y = self.head[a ^ 1];
            }
            value += push;
        }
        value
    }

    /// Residual arcs `(from, to)` with positive capacity after the last flow.
    pub(crate) fn residual_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.head.len())
            .filter(|&a| self.residual[a] > 0)
            .map(|a| (self.head[a ^ 1], self.head[a]))
    }
}
