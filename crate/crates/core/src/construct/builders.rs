//! Explicit constructions of the nine families.
//!
//! Two lazy builders cover the infinite families:
//! - a glue tree of relator polygons sharing hinge edges (I, II, VI, VIII);
//! - port rings: blocks (4-cycles, 4n-cycles or double rays) whose ports {x, xz} are
//!   joined cyclically by ring edges into rings of fixed size (III, IV, V, VII).
//!
//! Both grow on demand, so a ball of any radius can be read off by BFS.

use std::collections::HashMap;

use crate::presentation::{Letter, Presentation};

use super::ball::NeighbourSource;
use super::{GraphType, TypeParams};

const NONE: u32 = u32::MAX;

struct Lazy {
    ncols: usize,
    inv: Vec<usize>,
    adj: Vec<u32>,
}

impl Lazy {
    fn new(p: &Presentation) -> Lazy {
        let alphabet = p.alphabet();
        let columns = alphabet.columns();
        let inv = columns.iter().map(|&l| alphabet.column_of(alphabet.inverse(l))).collect();
        Lazy { ncols: columns.len(), inv, adj: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        let v = self.adj.len() / self.ncols;
        self.adj.extend(std::iter::repeat_n(NONE, self.ncols));
        v
    }

    fn get(&self, v: usize, c: usize) -> Option<usize> {
        let x = self.adj[v * self.ncols + c];
        (x != NONE).then_some(x as usize)
    }

    fn connect(&mut self, u: usize, c: usize, v: usize) {
        let ic = self.inv[c];
        for (a, col, b) in [(u, c, v), (v, ic, u)] {
            let slot = &mut self.adj[a * self.ncols + col];
            assert!(*slot == NONE || *slot == b as u32, "builder tried to reuse slot {col} of vertex {a}");
            *slot = b as u32;
        }
    }
}

/// Relator polygons glued along hinge edges, expanded breadth-first on demand.
pub(crate) struct GlueTree {
    g: Lazy,
    hinge: usize,
    corners: Vec<Option<Vec<usize>>>,
}

impl GlueTree {
    /// `hinge` is the column every polygon corner shares; each other column `s` gets the
    /// rotation/inversion of a relator that starts with `s` and ends with the hinge.
    pub(crate) fn new(p: &Presentation, hinge: Letter) -> GlueTree {
        let alphabet = p.alphabet();
        let g = Lazy::new(p);
        let hinge = alphabet.column_of(hinge);
        let mut corners = vec![None; g.ncols];
        for r in p.essential_relators() {
            for w in [r.clone(), r.inverse(alphabet)] {
                let cols: Vec<usize> = w.letters().iter().map(|&l| alphabet.column_of(l)).collect();
                for k in 0..cols.len() {
                    let mut rot = cols[k..].to_vec();
                    rot.extend_from_slice(&cols[..k]);
                    let (first, last) = (rot[0], rot[rot.len() - 1]);
                    if first != hinge && last == hinge && corners[first].is_none() {
                        corners[first] = Some(rot);
                    }
                }
            }
        }
        let mut t = GlueTree { g, hinge, corners };
        let root = t.g.add_vertex();
        let first = (0..t.g.ncols).find(|&c| c != t.hinge).expect("at least two slots");
        t.attach(root, first);
        t
    }

    fn attach(&mut self, v: usize, s: usize) {
        let w = self.corners[s].clone().expect("every non-hinge slot has a corner relator");
        let l = w.len();
        let mut prev = v;
        for (k, &c) in w.iter().enumerate().take(l - 1) {
            let next = if k + 1 == l - 1 {
                match self.g.get(v, self.hinge) {
                    Some(x) => x,
                    None => self.g.add_vertex(),
                }
            } else {
                self.g.add_vertex()
            };
            self.g.connect(prev, c, next);
            prev = next;
        }
        self.g.connect(prev, w[l - 1], v);
    }
}

impl NeighbourSource for GlueTree {
    fn root(&mut self) -> usize {
        0
    }

    fn neighbour(&mut self, v: usize, column: usize) -> Option<usize> {
        if self.g.get(v, column).is_none() {
            self.attach(v, column);
        }
        self.g.get(v, column)
    }
}

/// Shape of a block: its length (None for a double ray), how block columns move along
/// it, and the port partner of each position.
struct BlockShape {
    len: Option<i64>,
    step: Box<dyn Fn(i64, usize) -> Option<i64>>,
    partner: Box<dyn Fn(i64) -> i64>,
}

pub(crate) struct PortRings {
    g: Lazy,
    shape: BlockShape,
    ring: usize,
    ring_size: usize,
    blocks: Vec<HashMap<i64, usize>>,
    place: Vec<(usize, i64)>,
}

impl PortRings {
    fn new(p: &Presentation, shape: BlockShape, ring: usize, ring_size: usize) -> PortRings {
        let mut r = PortRings { g: Lazy::new(p), shape, ring, ring_size, blocks: Vec::new(), place: Vec::new() };
        r.new_block();
        r.vertex(0, 0);
        r
    }

    fn new_block(&mut self) -> usize {
        self.blocks.push(HashMap::new());
        self.blocks.len() - 1
    }

    fn vertex(&mut self, block: usize, pos: i64) -> usize {
        let pos = match self.shape.len {
            Some(l) => pos.rem_euclid(l),
            None => pos,
        };
        if let Some(&v) = self.blocks[block].get(&pos) {
            return v;
        }
        let v = self.g.add_vertex();
        self.blocks[block].insert(pos, v);
        self.place.push((block, pos));
        v
    }

    fn attach_ring(&mut self, v: usize) {
        let (block, pos) = self.place[v];
        let mut ports = vec![(v, self.vertex(block, (self.shape.partner)(pos)))];
        for _ in 1..self.ring_size {
            let b = self.new_block();
            let s = self.vertex(b, 0);
            let t = self.vertex(b, (self.shape.partner)(0));
            ports.push((s, t));
        }
        let m = ports.len();
        for j in 0..m {
            let (_, t) = ports[j];
            let (s, _) = ports[(j + 1) % m];
            self.g.connect(t, self.ring, s);
        }
    }
}

impl NeighbourSource for PortRings {
    fn root(&mut self) -> usize {
        0
    }

    fn neighbour(&mut self, v: usize, column: usize) -> Option<usize> {
        if let Some(w) = self.g.get(v, column) {
            return Some(w);
        }
        if column == self.ring {
            self.attach_ring(v);
        } else {
            let (block, pos) = self.place[v];
            let next = (self.shape.step)(pos, column)?;
            let w = self.vertex(block, next);
            self.g.connect(v, column, w);
        }
        self.g.get(v, column)
    }
}

/// Fully known finite table.
pub(crate) struct Finite {
    g: Lazy,
}

impl NeighbourSource for Finite {
    fn root(&mut self) -> usize {
        0
    }

    fn neighbour(&mut self, v: usize, column: usize) -> Option<usize> {
        self.g.get(v, column)
    }
}

pub(crate) enum Builder {
    Glue(GlueTree),
    Rings(PortRings),
    Finite(Finite),
}

impl NeighbourSource for Builder {
    fn root(&mut self) -> usize {
        0
    }

    fn neighbour(&mut self, v: usize, column: usize) -> Option<usize> {
        match self {
            Builder::Glue(b) => b.neighbour(v, column),
            Builder::Rings(b) => b.neighbour(v, column),
            Builder::Finite(b) => b.neighbour(v, column),
        }
    }
}

/// Alternating block: edge (i, i+1) carries `even` when i is even and `odd` otherwise.
fn alternating(len: Option<i64>, even: usize, odd: usize, partner: Box<dyn Fn(i64) -> i64>) -> BlockShape {
    let step = move |i: i64, c: usize| -> Option<i64> {
        let fwd = if i.rem_euclid(2) == 0 { even } else { odd };
        let back = if (i - 1).rem_euclid(2) == 0 { even } else { odd };
        if c == fwd {
            Some(i + 1)
        } else if c == back {
            Some(i - 1)
        } else {
            None
        }
    };
    BlockShape { len, step: Box::new(step), partner }
}

pub(crate) fn builder(tp: &TypeParams, p: &Presentation) -> Builder {
    let alphabet = p.alphabet();
    let col = |name: &str, inverse: bool| {
        alphabet.column_of(Letter::new(alphabet.find(name).expect("family generator"), inverse))
    };
    let n = tp.n.unwrap_or(0) as i64;
    let m = tp.m.unwrap_or(0) as usize;
    match tp.kind {
        GraphType::I | GraphType::II | GraphType::VI | GraphType::VIII => {
            let b = Letter::pos(alphabet.find("b").expect("b"));
            Builder::Glue(GlueTree::new(p, b))
        }
        GraphType::III => {
            let (a, ai) = (col("a", false), col("a", true));
            let step = move |i: i64, c: usize| {
                if c == a {
                    Some(i + 1)
                } else if c == ai {
                    Some(i - 1)
                } else {
                    None
                }
            };
            let shape = BlockShape { len: Some(4), step: Box::new(step), partner: Box::new(|i| i + 2) };
            Builder::Rings(PortRings::new(p, shape, col("b", false), n as usize))
        }
        GraphType::IV => {
            let shape = alternating(Some(4), col("b", false), col("c", false), Box::new(|i| i + 2));
            Builder::Rings(PortRings::new(p, shape, col("d", false), m))
        }
        GraphType::V => {
            let partner = |i: i64| if i.rem_euclid(2) == 0 { i + 3 } else { i - 3 };
            let shape = alternating(Some(4 * n), col("c", false), col("b", false), Box::new(partner));
            Builder::Rings(PortRings::new(p, shape, col("d", false), m))
        }
        GraphType::VII => {
            let z = 2 * n + 1;
            let partner = move |i: i64| if i.rem_euclid(2) == 0 { i + z } else { i - z };
            let shape = alternating(None, col("b", false), col("c", false), Box::new(partner));
            Builder::Rings(PortRings::new(p, shape, col("d", false), m))
        }
        GraphType::IX => {
            let (b, c, d) = (col("b", false), col("c", false), col("d", false));
            let mut g = Lazy::new(p);
            let len = 2 * n as usize;
            for _ in 0..len {
                g.add_vertex();
            }
            for i in (0..len).step_by(2) {
                let j = (i + 1) % len;
                let k = (i + 2) % len;
                g.connect(i, b, j);
                g.connect(j, c, k);
                g.connect(j, d, k);
            }
            Builder::Finite(Finite { g })
        }
    }
}
