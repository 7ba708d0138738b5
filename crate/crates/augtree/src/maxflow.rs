//! Dinic max-flow over `i64` capacities, used as the cut oracle inside the
//! exact density search. The networks built there are three layers deep
//! (source, edge nodes, vertex nodes, sink), so the phase count stays tiny.

pub struct Dinic {
    to: Vec<u32>,
    cap: Vec<i64>,
    adj: Vec<Vec<u32>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    pub fn new(n: usize) -> Dinic {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    /// Adds a directed arc and its zero-capacity reverse; returns the arc id.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.to.push(v as u32);
        self.cap.push(cap);
        self.adj[u].push(id as u32);
        self.to.push(u as u32);
        self.cap.push(0);
        self.adj[v].push(id as u32 + 1);
        id
    }

    pub fn set_cap(&mut self, arc: usize, cap: i64) {
        self.cap[arc] = cap;
        self.cap[arc ^ 1] = 0;
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a as usize] as usize;
                if self.cap[a as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.adj[u].len() {
            let a = self.adj[u][self.iter[u]] as usize;
            let v = self.to[a] as usize;
            if self.cap[a] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, pushed.min(self.cap[a]));
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// After `max_flow`, the nodes still reachable from `s` in the residual
    /// network: the source side of a minimum cut.
    pub fn min_cut_source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let v = self.to[a as usize] as usize;
                if self.cap[a as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
