use std::collections::VecDeque;

use crate::construct::CayleyBall;
use crate::presentation::Word;

/// Reusable reachability scratch over a ball with some vertices and edges blocked.
pub(crate) struct Reach<'a> {
    b: &'a CayleyBall,
    mark: Vec<u32>,
    blocked_v: Vec<u32>,
    blocked_e: Vec<u32>,
    stamp: u32,
    queue: Vec<usize>,
}

impl<'a> Reach<'a> {
    pub fn new(b: &'a CayleyBall) -> Reach<'a> {
        Reach {
            b,
            mark: vec![0; b.len()],
            blocked_v: vec![0; b.len()],
            blocked_e: vec![0; b.edges().len()],
            stamp: 0,
            queue: Vec::new(),
        }
    }

    fn block(&mut self, vs: &[usize], es: &[usize]) {
        self.stamp += 1;
        for &v in vs {
            self.blocked_v[v] = self.stamp;
        }
        for &e in es {
            self.blocked_e[e] = self.stamp;
        }
    }

    fn is_blocked(&self, v: usize) -> bool {
        self.blocked_v[v] == self.stamp
    }

    fn flood(&mut self, start: usize) {
        self.mark[start] = self.stamp;
        self.queue.clear();
        self.queue.push(start);
        while let Some(u) = self.queue.pop() {
            for (_, e) in self.b.incident(u) {
                if self.blocked_e[e] == self.stamp {
                    continue;
                }
                let w = self.b.other_end(e, u);
                if self.mark[w] != self.stamp && self.blocked_v[w] != self.stamp {
                    self.mark[w] = self.stamp;
                    self.queue.push(w);
                }
            }
        }
    }

    /// Vertices next to the removed objects: neighbours of removed vertices and ends of
    /// removed edges, excluding removed vertices.
    fn witnesses(&self, vs: &[usize], es: &[usize]) -> Vec<usize> {
        let mut w: Vec<usize> = Vec::new();
        for &v in vs {
            for (_, e) in self.b.incident(v) {
                w.push(self.b.other_end(e, v));
            }
        }
        for &e in es {
            let edge = self.b.edge(e);
            w.extend([edge.u, edge.v]);
        }
        w.retain(|&x| !self.is_blocked(x));
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Whether removing the objects leaves their neighbourhood in two or more components.
    pub fn separates(&mut self, vs: &[usize], es: &[usize]) -> bool {
        self.block(vs, es);
        let w = self.witnesses(vs, es);
        if w.len() < 2 {
            return false;
        }
        self.flood(w[0]);
        w[1..].iter().any(|&x| self.mark[x] != self.stamp)
    }

    /// Whether some vertex of `from` reaches some vertex of `to` after the removal.
    pub fn connects(&mut self, vs: &[usize], es: &[usize], from: &[usize], to: &[usize]) -> bool {
        self.block(vs, es);
        for &s in from {
            if !self.is_blocked(s) && self.mark[s] != self.stamp {
                self.flood(s);
            }
        }
        to.iter().any(|&t| !self.is_blocked(t) && self.mark[t] == self.stamp)
    }

    /// Components of the ball after removing `vs`, each sorted, in order of least vertex.
    pub fn components(&mut self, vs: &[usize]) -> Vec<Vec<usize>> {
        self.block(vs, &[]);
        let stamp = self.stamp;
        let mut comp = vec![usize::MAX; self.b.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.b.len() {
            if self.is_blocked(s) || comp[s] != usize::MAX {
                continue;
            }
            self.flood(s);
            let mut c = Vec::new();
            #[allow(clippy::needless_range_loop)]
            for v in s..self.b.len() {
                if self.mark[v] == stamp && comp[v] == usize::MAX {
                    comp[v] = out.len();
                    c.push(v);
                }
            }
            out.push(c);
        }
        out
    }
}

/// BFS distances from `s` over the whole ball.
pub(crate) fn distances(b: &CayleyBall, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; b.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for (_, e) in b.incident(u) {
            let w = b.other_end(e, u);
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Shortest path from `x` to `y` whose label is least in shortlex order, with its label.
pub(crate) fn shortlex_path(b: &CayleyBall, x: usize, y: usize) -> Option<(Vec<usize>, Word)> {
    let mut parent = vec![None; b.len()];
    let mut seen = vec![false; b.len()];
    seen[x] = true;
    let mut q = VecDeque::from([x]);
    while let Some(u) = q.pop_front() {
        if u == y {
            break;
        }
        for c in 0..b.columns().len() {
            if let Some(w) = b.neighbour(u, c) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, c));
                    q.push_back(w);
                }
            }
        }
    }
    if !seen[y] {
        return None;
    }
    let mut verts = vec![y];
    let mut cols = Vec::new();
    let mut cur = y;
    while let Some((p, c)) = parent[cur] {
        verts.push(p);
        cols.push(c);
        cur = p;
    }
    verts.reverse();
    cols.reverse();
    let word = Word::new(cols.into_iter().map(|c| b.columns()[c]).collect());
    Some((verts, word))
}

/// Maximum number of internally disjoint `x`–`y` paths (unit vertex capacities).
pub(crate) fn vertex_disjoint_paths(b: &CayleyBall, x: usize, y: usize) -> usize {
    // Node 2v is v_in, 2v+1 is v_out.
    let n = 2 * b.len();
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut to: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    let mut add = |head: &mut Vec<Vec<usize>>, a: usize, z: usize, c: i32| {
        head[a].push(to.len());
        to.push(z);
        cap.push(c);
        head[z].push(to.len());
        to.push(a);
        cap.push(0);
    };
    let big = 1 << 20;
    for v in 0..b.len() {
        let c = if v == x || v == y { big } else { 1 };
        add(&mut head, 2 * v, 2 * v + 1, c);
    }
    for e in b.edges() {
        if e.u == e.v {
            continue;
        }
        // A direct x–y edge counts as one path; parallel edges do not add vertex-disjoint
        // paths beyond the first, but each is internally disjoint from the rest.
        add(&mut head, 2 * e.u + 1, 2 * e.v, 1);
        add(&mut head, 2 * e.v + 1, 2 * e.u, 1);
    }
    let (s, t) = (2 * x + 1, 2 * y);
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if u == t {
                break;
            }
            for &a in &head[u] {
                if cap[a] > 0 && !seen[to[a]] {
                    seen[to[a]] = true;
                    prev[to[a]] = a;
                    q.push_back(to[a]);
                }
            }
        }
        if !seen[t] {
            return flow;
        }
        let mut v = t;
        while v != s {
            let a = prev[v];
            cap[a] -= 1;
            cap[a ^ 1] += 1;
            v = to[a ^ 1];
        }
        flow += 1;
    }
}

/// Articulation points of the ball's underlying graph (iterative lowpoint search).
pub(crate) fn articulation_points(b: &CayleyBall) -> Vec<bool> {
    let n = b.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        let inc = |v: usize| b.incident(v).map(|(_, e)| e).collect::<Vec<usize>>();
        // (vertex, parent edge, incident edges, next index)
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = vec![(root, usize::MAX, inc(root), 0)];
        while let Some(top) = stack.last_mut() {
            let (v, pe) = (top.0, top.1);
            if top.3 < top.2.len() {
                let e = top.2[top.3];
                top.3 += 1;
                if e == pe {
                    continue;
                }
                let w = b.other_end(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, e, inc(w), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let u = parent.0;
                    low[u] = low[u].min(low[v]);
                    if u != root && low[v] >= disc[u] {
                        cut[u] = true;
                    }
                }
            }
        }
        cut[root] = root_children > 1;
    }
    cut
}
