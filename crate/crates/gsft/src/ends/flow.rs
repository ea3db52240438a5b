//! Unit-capacity max-flow (Dinic) on a vertex-split ball graph, giving
//! exact Menger numbers: max vertex-disjoint path count = min vertex cut.

/// Directed edge in the residual graph; `cap` is the remaining capacity and
/// `twin` indexes the reverse edge.
struct Arc {
    to: usize,
    cap: u32,
    twin: usize,
}

pub struct FlowNet {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl FlowNet {
    pub fn new(nodes: usize) -> FlowNet {
        FlowNet {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let a = self.arcs.len();
        self.arcs.push(Arc { to, cap, twin: a + 1 });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            twin: a,
        });
        self.adj[from].push(a);
        self.adj[to].push(a + 1);
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] == u32::MAX {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        (level[t] != u32::MAX).then_some(level)
    }

    fn augment(
        &mut self,
        u: usize,
        t: usize,
        level: &[u32],
        iter: &mut [usize],
    ) -> bool {
        if u == t {
            return true;
        }
        while iter[u] < self.adj[u].len() {
            let a = self.adj[u][iter[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 && self.augment(to, t, level, iter) {
                self.arcs[a].cap -= 1;
                let twin = self.arcs[a].twin;
                self.arcs[twin].cap += 1;
                return true;
            }
            iter[u] += 1;
        }
        false
    }

    /// Max flow from s to t; all arcs are unit here so one augment = one
    /// unit.
    pub fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        while let Some(level) = self.levels(s, t) {
            let mut iter = vec![0usize; self.adj.len()];
            while self.augment(s, t, &level, &mut iter) {
                total += 1;
            }
        }
        total
    }
}

/// Maximum number of vertex-disjoint paths from `sources` to `sinks` inside
/// the graph given by `adjacency`, restricted to `allowed` vertices.
/// Endpoints count as used vertices, so the answer is bounded by both set
/// sizes.
pub fn disjoint_path_count(
    adjacency: &[Vec<usize>],
    allowed: &[bool],
    sources: &[usize],
    sinks: &[usize],
) -> usize {
    let n = adjacency.len();
    // in(v) = 2v, out(v) = 2v + 1, source = 2n, sink = 2n + 1.
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        if !allowed[v] {
            continue;
        }
        net.add_arc(2 * v, 2 * v + 1, 1);
        for &u in &adjacency[v] {
            if allowed[u] {
                net.add_arc(2 * v + 1, 2 * u, 1);
            }
        }
    }
    for &a in sources {
        debug_assert!(allowed[a]);
        net.add_arc(2 * n, 2 * a, 1);
    }
    for &b in sinks {
        debug_assert!(allowed[b]);
        net.add_arc(2 * b + 1, 2 * n + 1, 1);
    }
    net.max_flow(2 * n, 2 * n + 1)
}
