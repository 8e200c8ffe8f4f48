//! Path-addition planarity test (Demoucron–Malgrange–Pertuiset), used as an independent
//! cross-check of the left-right test.

use std::collections::{BTreeSet, VecDeque};

use super::planarity::UGraph;

/// Planarity by path addition on each biconnected block. Loops and parallel edges are
/// irrelevant to planarity and are dropped.
pub fn is_planar_path_addition(g: &UGraph) -> bool {
    let mut simple = BTreeSet::new();
    for &(u, v) in g.edges() {
        if u != v {
            simple.insert((u.min(v), u.max(v)));
        }
    }
    let n = g.len();
    if n >= 3 && simple.len() > 3 * n - 6 {
        return false;
    }
    let edges: Vec<(usize, usize)> = simple.into_iter().collect();
    blocks(n, &edges).into_iter().all(|b| {
        let es: Vec<(usize, usize)> = b.iter().map(|&i| edges[i]).collect();
        block_planar(&es)
    })
}

/// Edge sets of the biconnected blocks (iterative Hopcroft–Tarjan).
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(v, pe, i)) = stack.last() {
            if i < adj[v].len() {
                let (w, e) = adj[v][i];
                stack.last_mut().expect("non-empty").2 += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(x) = estack.pop() {
                            block.push(x);
                            if x == pe {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_planar(edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let n = verts.len();
    if edges.len() <= n || n <= 4 {
        // A single edge, a cycle, or a block on at most four vertices.
        return true;
    }
    let idx = |x: usize| verts.binary_search(&x).expect("block vertex");
    let es: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect();
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in es.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }

    // Initial cycle: a non-tree edge of a BFS tree closed through the tree.
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut seen = vec![false; n];
    let mut order = VecDeque::from([0]);
    seen[0] = true;
    let mut tree = vec![false; es.len()];
    while let Some(v) = order.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = (v, e);
                tree[e] = true;
                order.push_back(w);
            }
        }
    }
    let chord = (0..es.len()).find(|&e| !tree[e]).expect("block has a cycle");
    let (a, b) = es[chord];
    let up = |mut x: usize| {
        let mut p = vec![x];
        while parent[x].0 != usize::MAX {
            x = parent[x].0;
            p.push(x);
        }
        p
    };
    let (pa, pb) = (up(a), up(b));
    let lca = *pa.iter().find(|x| pb.contains(x)).expect("common ancestor");
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let tail: Vec<usize> = pb.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(tail.into_iter().rev());

    let mut emb_v = vec![false; n];
    let mut emb_e = vec![false; es.len()];
    for w in cycle.windows(2) {
        let e = adj[w[0]].iter().find(|&&(x, _)| x == w[1]).expect("tree edge").1;
        emb_e[e] = true;
    }
    emb_e[chord] = true;
    for &v in &cycle {
        emb_v[v] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    loop {
        let frags = fragments(&adj, &es, &emb_v, &emb_e);
        if frags.is_empty() {
            return true;
        }
        let mut choice = None;
        for (fi, f) in frags.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&k| f.attach.iter().all(|x| faces[k].contains(x))).collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("some fragment");
        let path = fragment_path(&adj, &frags[fi], &emb_v);
        for w in path.windows(2) {
            let e = adj[w[0]]
                .iter()
                .find(|&&(x, e)| x == w[1] && !emb_e[e] && frags[fi].edges.contains(&e))
                .expect("fragment edge")
                .1;
            emb_e[e] = true;
        }
        for &v in &path {
            emb_v[v] = true;
        }
        let f = faces.swap_remove(face);
        let (s, t) = (path[0], path[path.len() - 1]);
        let i = f.iter().position(|&x| x == s).expect("attachment on face");
        let j = f.iter().position(|&x| x == t).expect("attachment on face");
        let arc = |from: usize, to: usize| {
            let mut out = vec![f[from]];
            let mut k = from;
            while k != to {
                k = (k + 1) % f.len();
                out.push(f[k]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut f1 = arc(i, j);
        f1.extend(inner.iter().rev());
        let mut f2 = arc(j, i);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }
}

struct Fragment {
    edges: BTreeSet<usize>,
    inner: BTreeSet<usize>,
    attach: BTreeSet<usize>,
}

fn fragments(adj: &[Vec<(usize, usize)>], es: &[(usize, usize)], emb_v: &[bool], emb_e: &[bool]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (e, &(u, v)) in es.iter().enumerate() {
        if !emb_e[e] && emb_v[u] && emb_v[v] {
            out.push(Fragment { edges: BTreeSet::from([e]), inner: BTreeSet::new(), attach: BTreeSet::from([u, v]) });
        }
    }
    let mut seen = vec![false; adj.len()];
    for s in 0..adj.len() {
        if emb_v[s] || seen[s] {
            continue;
        }
        let mut f = Fragment { edges: BTreeSet::new(), inner: BTreeSet::new(), attach: BTreeSet::new() };
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            f.inner.insert(v);
            for &(w, e) in &adj[v] {
                f.edges.insert(e);
                if emb_v[w] {
                    f.attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(f);
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<(usize, usize)>], f: &Fragment, emb_v: &[bool]) -> Vec<usize> {
    if f.inner.is_empty() {
        return f.attach.iter().copied().collect();
    }
    let s = *f.attach.iter().next().expect("blocks attach at two vertices");
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &(w, e) in &adj[s] {
        if f.edges.contains(&e) && f.inner.contains(&w) && prev[w] == usize::MAX {
            prev[w] = s;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !f.edges.contains(&e) {
                continue;
            }
            if emb_v[w] && w != s {
                let mut path = vec![w, v];
                let mut x = v;
                while prev[x] != s {
                    x = prev[x];
                    path.push(x);
                }
                path.push(s);
                path.reverse();
                return path;
            }
            if !emb_v[w] && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a block has two attachments")
}
