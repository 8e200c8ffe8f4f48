//! Left-right planarity test with embedding, Kuratowski witnesses by edge deletion, and
//! degree-two suppression.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::construct::CayleyBall;

/// Undirected multigraph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UGraph {
    pub fn new(n: usize) -> UGraph {
        UGraph { n, edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> UGraph {
        let mut g = UGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Underlying multigraph of a ball; edge ids are the ball's.
    pub fn from_ball(b: &CayleyBall) -> UGraph {
        UGraph::from_edges(b.len(), &b.endpoint_pairs())
    }

    pub fn complete(n: usize) -> UGraph {
        let mut g = UGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Incident (neighbour, edge id) pairs per vertex, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            if u != v {
                adj[v].push((u, i));
            }
        }
        adj
    }

    fn without_edges(&self, dropped: &[bool]) -> UGraph {
        let edges: Vec<(usize, usize)> =
            self.edges.iter().enumerate().filter(|(i, _)| !dropped[*i]).map(|(_, &e)| e).collect();
        UGraph { n: self.n, edges }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Subdivision of K5 or K3,3 inside a graph: branch vertices and the vertex sequences of
/// the subdivided edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

/// Rotation system (edge ids in cyclic order per vertex) whose face count satisfies
/// Euler's formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarCertificate {
    pub rotation: Vec<Vec<usize>>,
    pub faces: usize,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(PlanarCertificate),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

const STACK: usize = 512 << 20;

/// Runs deep recursions on a thread with a large stack.
fn with_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(STACK)
            .spawn_scoped(s, f)
            .expect("spawn planarity thread")
            .join()
            .expect("planarity thread panicked")
    })
}

/// Planar certificate or Kuratowski witness. Loops are ignored; they never affect planarity.
pub fn planarity_check(g: &UGraph) -> Planarity {
    with_stack(|| match lr_embedding(g) {
        Some(rotation) => {
            let faces = count_faces(g, &rotation);
            Planarity::Planar(PlanarCertificate { rotation, faces, components: components(g) })
        }
        None => Planarity::NonPlanar(kuratowski(g)),
    })
}

/// Boolean left-right test.
pub fn is_planar(g: &UGraph) -> bool {
    with_stack(|| lr_embedding(g).is_some())
}

pub fn components(g: &UGraph) -> usize {
    let mut uf: Vec<usize> = (0..g.n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut count = g.n;
    for &(u, v) in &g.edges {
        let (a, b) = (find(&mut uf, u), find(&mut uf, v));
        if a != b {
            uf[a] = b;
            count -= 1;
        }
    }
    count
}

/// Faces of a rotation system (isolated vertices count one face each).
pub fn count_faces(g: &UGraph, rotation: &[Vec<usize>]) -> usize {
    face_walks(g, rotation).len() + (0..g.n).filter(|&v| rotation[v].is_empty()).count()
}

/// Face walks as dart sequences; dart `2e` runs from the first endpoint of edge `e`.
pub fn face_walks(g: &UGraph, rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pos: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); g.n];
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &e) in rot.iter().enumerate() {
            pos[v].insert(e, i);
        }
    }
    let head = |d: usize| {
        let (u, v) = g.edges[d / 2];
        if d.is_multiple_of(2) {
            v
        } else {
            u
        }
    };
    let dart_from = |v: usize, e: usize| if g.edges[e].0 == v { 2 * e } else { 2 * e + 1 };
    let next = |d: usize| {
        let w = head(d);
        let e = d / 2;
        let rot = &rotation[w];
        let f = rot[(pos[w][&e] + 1) % rot.len()];
        dart_from(w, f)
    };
    let mut seen = vec![false; 2 * g.edges.len()];
    let mut faces = Vec::new();
    for d0 in 0..2 * g.edges.len() {
        let (u, v) = g.edges[d0 / 2];
        if seen[d0] || u == v {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = d0;
        while !seen[d] {
            seen[d] = true;
            walk.push(d);
            d = next(d);
        }
        faces.push(walk);
    }
    faces
}

/// Euler's formula V - E + F = 2C for a rotation system, loops excluded.
pub fn euler_consistent(g: &UGraph, rotation: &[Vec<usize>]) -> bool {
    let loops = g.edges.iter().filter(|(u, v)| u == v).count();
    let e = g.edges.len() - loops;
    g.n + count_faces(g, rotation) == 2 * components(g) + e
}

struct Lr<'a> {
    adj: &'a [Vec<(usize, usize)>],
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    out: Vec<Vec<usize>>,
    refs: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    left_ref: Vec<Option<usize>>,
    right_ref: Vec<Option<usize>>,
    // Rotation as a circular list of half-edges; half-edge 2e+1 sits at dst[e].
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

const NONE: usize = usize::MAX;

impl<'a> Lr<'a> {
    fn new(n: usize, m: usize, adj: &'a [Vec<(usize, usize)>]) -> Lr<'a> {
        Lr {
            adj,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out: vec![Vec::new(); n],
            refs: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![None; m],
            left_ref: vec![None; n],
            right_ref: vec![None; n],
            cw: vec![NONE; 2 * m],
            ccw: vec![NONE; 2 * m],
            first: vec![None; n],
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high.expect("non-empty interval")] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for &(w, vw) in &self.adj[v] {
            if self.oriented[vw] {
                continue;
            }
            self.oriented[vw] = true;
            self.src[vw] = v;
            self.dst[vw] = w;
            self.out[v].push(vw);
            self.lowpt[vw] = self.height[v];
            self.lowpt2[vw] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting_depth[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = self.out[v].clone();
        for (i, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if Some(ei) == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("return edges imply a parent edge");
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qrl = q.right.low.expect("non-empty right interval");
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qrl] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.refs[prl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.refs[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refs[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edges remain");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        while let Some(r) = self.refs[*chain.last().unwrap()] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let (x, r) = (chain[i], chain[i + 1]);
            self.side[x] *= self.side[r];
            self.refs[x] = None;
        }
        self.side[e]
    }

    fn half(&self, v: usize, e: usize) -> usize {
        if self.src[e] == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// Inserts edge `e` at `v` clockwise right after `reference`.
    fn add_cw(&mut self, v: usize, e: usize, reference: Option<usize>) {
        let h = self.half(v, e);
        match reference {
            None => {
                self.cw[h] = h;
                self.ccw[h] = h;
                self.first[v] = Some(h);
            }
            Some(r) => {
                let r = self.half(v, r);
                let n = self.cw[r];
                self.cw[r] = h;
                self.ccw[h] = r;
                self.cw[h] = n;
                self.ccw[n] = h;
            }
        }
    }

    /// Inserts edge `e` at `v` counterclockwise right before `reference`.
    fn add_ccw(&mut self, v: usize, e: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, e, None),
            Some(r) => {
                let rh = self.half(v, r);
                let before = self.ccw[rh] / 2;
                self.add_cw(v, e, Some(before));
                if self.first[v] == Some(rh) {
                    self.first[v] = Some(self.half(v, e));
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, e: usize) {
        let reference = self.first[v].map(|h| h / 2);
        self.add_ccw(v, e, reference);
    }

    fn embed_dfs(&mut self, v: usize) {
        let out = self.out[v].clone();
        for ei in out {
            let w = self.dst[ei];
            if Some(ei) == self.parent_edge[w] {
                self.add_first(w, ei);
                self.left_ref[v] = Some(ei);
                self.right_ref[v] = Some(ei);
                self.embed_dfs(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.add_cw(w, ei, r);
            } else {
                let l = self.left_ref[w];
                self.add_ccw(w, ei, l);
                self.left_ref[w] = Some(ei);
            }
        }
    }
}

/// Left-right planarity with embedding; `None` if not planar. The rotation lists edge
/// ids of `g` clockwise around each vertex.
fn lr_embedding(g: &UGraph) -> Option<Vec<Vec<usize>>> {
    // Simple graph: first edge of each parallel class, loops dropped.
    let mut class: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut simple: Vec<(usize, usize)> = Vec::new();
    let mut rep: Vec<usize> = Vec::new();
    let mut parallels: Vec<Vec<usize>> = Vec::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        match class.get(&key) {
            Some(&s) => parallels[s].push(i),
            None => {
                class.insert(key, simple.len());
                simple.push((u, v));
                rep.push(i);
                parallels.push(Vec::new());
            }
        }
    }
    let n = g.n;
    let m = simple.len();
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in simple.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut lr = Lr::new(n, m, &adj);
    let mut roots = Vec::new();
    for v in 0..n {
        if lr.height[v] == NONE {
            lr.height[v] = 0;
            roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting_depth[e]);
        lr.out[v] = out;
    }
    for &r in &roots {
        if !lr.test(r) {
            return None;
        }
    }
    for e in 0..m {
        let s = lr.sign(e);
        lr.nesting_depth[e] *= s;
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting_depth[e]);
        let mut prev = None;
        for &e in &out {
            lr.add_cw(v, e, prev);
            prev = Some(e);
        }
        lr.out[v] = out;
    }
    for &r in &roots {
        lr.embed_dfs(r);
    }
    // Read off the rotations, placing each parallel copy next to its representative so
    // that they bound a digon.
    let mut rotation = vec![Vec::new(); n];
    #[allow(clippy::needless_range_loop)]
    for v in 0..n {
        let Some(h0) = lr.first[v] else { continue };
        let mut h = h0;
        loop {
            let s = h / 2;
            let (a, _) = simple[s];
            if a == v {
                rotation[v].push(rep[s]);
                rotation[v].extend(parallels[s].iter().copied());
            } else {
                rotation[v].extend(parallels[s].iter().rev().copied());
                rotation[v].push(rep[s]);
            }
            h = lr.cw[h];
            if h == h0 {
                break;
            }
        }
    }
    Some(rotation)
}

/// Minimal non-planar subgraph by edge deletion, read as a subdivision of K5 or K3,3.
fn kuratowski(g: &UGraph) -> KuratowskiWitness {
    let mut dropped = vec![false; g.edges.len()];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            dropped[i] = true;
        }
    }
    for i in 0..g.edges.len() {
        if dropped[i] {
            continue;
        }
        dropped[i] = true;
        if lr_embedding(&g.without_edges(&dropped)).is_some() {
            dropped[i] = false;
        }
    }
    let h = g.without_edges(&dropped);
    let kept: Vec<usize> = (0..g.edges.len()).filter(|&i| !dropped[i]).collect();
    let adj = h.adjacency();
    let branch: Vec<usize> = (0..h.n).filter(|&v| adj[v].len() >= 3).collect();
    let mut paths = Vec::new();
    let mut used = BTreeSet::new();
    for &s in &branch {
        for &(w, e) in &adj[s] {
            if used.contains(&kept[e]) {
                continue;
            }
            used.insert(kept[e]);
            let mut path = vec![s, w];
            let (mut prev_e, mut cur) = (e, w);
            while adj[cur].len() == 2 {
                let &(nx, ne) = adj[cur].iter().find(|&&(_, x)| x != prev_e).expect("degree two");
                used.insert(kept[ne]);
                path.push(nx);
                prev_e = ne;
                cur = nx;
            }
            paths.push(path);
        }
    }
    let kind = if branch.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    KuratowskiWitness { kind, branch, paths }
}

/// Checks that a witness really is a subdivided K5 or K3,3 inside `g`.
pub fn verify_witness(g: &UGraph, w: &KuratowskiWitness) -> bool {
    let branch: BTreeSet<usize> = w.branch.iter().copied().collect();
    let (nb, np) = match w.kind {
        KuratowskiKind::K5 => (5, 10),
        KuratowskiKind::K33 => (6, 9),
    };
    if branch.len() != nb || w.branch.len() != nb || w.paths.len() != np {
        return false;
    }
    let mut avail: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in &g.edges {
        *avail.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    let mut inner_seen = BTreeSet::new();
    let mut ends = BTreeSet::new();
    for p in &w.paths {
        if p.len() < 2 {
            return false;
        }
        let (a, z) = (p[0], p[p.len() - 1]);
        if a == z || !branch.contains(&a) || !branch.contains(&z) || !ends.insert((a.min(z), a.max(z))) {
            return false;
        }
        for &x in &p[1..p.len() - 1] {
            if branch.contains(&x) || !inner_seen.insert(x) {
                return false;
            }
        }
        for s in p.windows(2) {
            match avail.get_mut(&(s[0].min(s[1]), s[0].max(s[1]))) {
                Some(k) if *k > 0 => *k -= 1,
                _ => return false,
            }
        }
    }
    match w.kind {
        KuratowskiKind::K5 => true,
        KuratowskiKind::K33 => {
            // Two-colour the branch vertices along the paths: every path must cross sides.
            let b: Vec<usize> = w.branch.clone();
            let mut side: BTreeMap<usize, bool> = BTreeMap::from([(b[0], false)]);
            for _ in 0..b.len() {
                for &(x, y) in &ends {
                    match (side.get(&x).copied(), side.get(&y).copied()) {
                        (Some(s), None) => {
                            side.insert(y, !s);
                        }
                        (None, Some(s)) => {
                            side.insert(x, !s);
                        }
                        _ => {}
                    }
                }
            }
            side.len() == 6
                && side.values().filter(|&&s| s).count() == 3
                && ends.iter().all(|(x, y)| side[x] != side[y])
        }
    }
}

/// Result of suppressing degree-two vertices, with the original id of each kept vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suppressed {
    pub graph: UGraph,
    pub original: Vec<usize>,
}

/// Repeatedly replaces a degree-two vertex and its two edges by one edge. A vertex whose
/// two edges go to the same neighbour is kept, since suppressing it would create a loop.
pub fn suppress_degree_two(g: &UGraph) -> Suppressed {
    let mut edges: Vec<Option<(usize, usize)>> = g.edges.iter().map(|&e| Some(e)).collect();
    let mut alive = vec![true; g.n];
    let mut inc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        inc[u].insert(i);
        inc[v].insert(i);
    }
    let other = |e: (usize, usize), v: usize| if e.0 == v { e.1 } else { e.0 };
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..g.n {
            if !alive[v] || inc[v].len() != 2 {
                continue;
            }
            let es: Vec<usize> = inc[v].iter().copied().collect();
            let (e1, e2) = (edges[es[0]].unwrap(), edges[es[1]].unwrap());
            if e1.0 == e1.1 || e2.0 == e2.1 {
                continue;
            }
            let (a, b) = (other(e1, v), other(e2, v));
            if a == b {
                continue;
            }
            edges[es[0]] = Some((a, b));
            edges[es[1]] = None;
            inc[v].clear();
            inc[b].remove(&es[1]);
            inc[b].insert(es[0]);
            alive[v] = false;
            changed = true;
        }
    }
    let original: Vec<usize> = (0..g.n).filter(|&v| alive[v]).collect();
    let index: BTreeMap<usize, usize> = original.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut graph = UGraph::new(original.len());
    for (u, v) in edges.into_iter().flatten() {
        graph.add_edge(index[&u], index[&v]);
    }
    Suppressed { graph, original }
}

/// Exact isomorphism test for small graphs (by permutation search with degree pruning).
pub fn small_isomorphic(a: &UGraph, b: &UGraph) -> bool {
    if a.n != b.n || a.edges.len() != b.edges.len() || a.n > 10 {
        return a.n == b.n && a.edges.len() == b.edges.len() && a.n == 0;
    }
    let mult = |g: &UGraph| {
        let mut m = vec![vec![0usize; g.n]; g.n];
        for &(u, v) in &g.edges {
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    };
    let (ma, mb) = (mult(a), mult(b));
    let da: Vec<usize> = (0..a.n).map(|v| a.degree(v)).collect();
    let db: Vec<usize> = (0..b.n).map(|v| b.degree(v)).collect();
    fn extend(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
        da: &[usize],
        db: &[usize],
    ) -> bool {
        if i == ma.len() {
            return true;
        }
        for j in 0..mb.len() {
            if used[j] || da[i] != db[j] || ma[i][i] != mb[j][j] {
                continue;
            }
            if (0..i).all(|k| ma[i][k] == mb[j][map[k]]) {
                map.push(j);
                used[j] = true;
                if extend(i + 1, map, used, ma, mb, da, db) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(0, &mut Vec::new(), &mut vec![false; b.n], &ma, &mb, &da, &db)
}

/// Complete bipartite graph K3,3 with parts {0,1,2} and {3,4,5}.
pub fn k33() -> UGraph {
    let mut g = UGraph::new(6);
    for u in 0..3 {
        for v in 3..6 {
            g.add_edge(u, v);
        }
    }
    g
}

/// First step of the embedding construction for three-involution graphs whose shortest
/// separating path is `cbc`, with bc-cycles of length 2k: one bc-cycle, and d-paths of
/// length two from each x to x·cbc through a contracted middle vertex.
pub fn cbc_scaffold(k: usize) -> UGraph {
    let len = 2 * k;
    let mut g = UGraph::new(len);
    for i in 0..len {
        g.add_edge(i, (i + 1) % len);
    }
    // Vertices 0, 2, 4, ... start a c edge; x·cbc is three steps along the cycle.
    let mut taken = vec![false; len];
    for x in 0..len {
        let y = if x % 2 == 0 { (x + 3) % len } else { (x + len - 3) % len };
        if taken[x] || taken[y] {
            continue;
        }
        taken[x] = true;
        taken[y] = true;
        let mid = g.n;
        g.n += 1;
        g.add_edge(x, mid);
        g.add_edge(mid, y);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_planar(&UGraph::complete(4)));
        assert!(!is_planar(&UGraph::complete(5)));
        assert!(!is_planar(&k33()));
        let mut c4 = UGraph::new(4);
        for i in 0..4 {
            c4.add_edge(i, (i + 1) % 4);
        }
        match planarity_check(&c4) {
            Planarity::Planar(c) => assert_eq!(c.faces, 2),
            _ => panic!("cycle is planar"),
        }
    }
}
