use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Letter, Presentation, PresentationError, Word};

/// One edge object. Involution edges are stored once and undirected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub colour: usize,
    pub directed: bool,
}

#[derive(Debug, Error)]
pub enum BallError {
    #[error("invalid ball JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("inconsistent ball: {0}")]
    Invalid(String),
}

/// A lazily or eagerly known Cayley graph rooted at the identity.
pub(crate) trait NeighbourSource {
    fn root(&mut self) -> usize;
    /// Image of vertex `v` under slot `column`, if known.
    fn neighbour(&mut self, v: usize, column: usize) -> Option<usize>;
}

#[derive(Debug)]
pub(crate) enum Undefined {
    /// Vertex at the given depth below the radius has no image under `column`.
    Slot {
        word: Word,
        column: usize,
    },
    Asymmetric {
        word: Word,
        column: usize,
    },
}

/// Finite ball of a Cayley graph around the identity.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    presentation: Presentation,
    columns: Vec<Letter>,
    inv_col: Vec<usize>,
    radius: usize,
    complete: bool,
    words: Vec<Word>,
    depth: Vec<usize>,
    edges: Vec<Edge>,
    slots: Vec<Vec<Option<usize>>>,
    interior: Vec<bool>,
}

impl CayleyBall {
    pub(crate) fn from_source(
        presentation: &Presentation,
        src: &mut impl NeighbourSource,
        radius: usize,
    ) -> Result<CayleyBall, Undefined> {
        let alphabet = presentation.alphabet();
        let columns = alphabet.columns();
        let ncols = columns.len();
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut keys: Vec<usize> = Vec::new();
        let mut words: Vec<Word> = Vec::new();
        let mut depth: Vec<usize> = Vec::new();
        let mut raw: Vec<Vec<Option<usize>>> = Vec::new();

        let root = src.root();
        ids.insert(root, 0);
        keys.push(root);
        words.push(Word::empty());
        depth.push(0);

        let mut next = 0;
        while next < keys.len() {
            let key = keys[next];
            let d = depth[next];
            let mut row = Vec::with_capacity(ncols);
            #[allow(clippy::needless_range_loop)]
            for c in 0..ncols {
                let nb = src.neighbour(key, c);
                if nb.is_none() && d < radius {
                    return Err(Undefined::Slot { word: words[next].clone(), column: c });
                }
                if let Some(k) = nb {
                    if d < radius && !ids.contains_key(&k) {
                        ids.insert(k, keys.len());
                        keys.push(k);
                        let mut w = words[next].clone();
                        w.push(columns[c]);
                        words.push(w);
                        depth.push(d + 1);
                    }
                }
                row.push(nb);
            }
            raw.push(row);
            next += 1;
        }

        let inv_col: Vec<usize> = columns.iter().map(|&l| alphabet.column_of(alphabet.inverse(l))).collect();
        let n = keys.len();
        let mut nbr = vec![vec![None; ncols]; n];
        let mut complete = true;
        for u in 0..n {
            for c in 0..ncols {
                match raw[u][c] {
                    Some(k) => match ids.get(&k) {
                        Some(&v) => nbr[u][c] = Some(v),
                        None => complete = false,
                    },
                    None => complete = false,
                }
            }
        }
        for u in 0..n {
            for c in 0..ncols {
                if let Some(v) = nbr[u][c] {
                    if nbr[v][inv_col[c]] != Some(u) {
                        return Err(Undefined::Asymmetric { word: words[u].clone(), column: c });
                    }
                }
            }
        }

        let radius = if complete { depth.iter().copied().max().unwrap_or(0) } else { radius };
        let interior = (0..n).map(|v| complete || depth[v] < radius).collect();
        let (edges, slots) = edges_from_neighbours(presentation, &columns, &nbr);
        Ok(CayleyBall {
            presentation: presentation.clone(),
            columns,
            inv_col,
            radius,
            complete,
            words,
            depth,
            edges,
            slots,
            interior,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn columns(&self) -> &[Letter] {
        &self.columns
    }

    pub fn column_of(&self, l: Letter) -> usize {
        self.presentation.alphabet().column_of(l)
    }

    pub fn inverse_column(&self, c: usize) -> usize {
        self.inv_col[c]
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// The ball is the whole (finite) Cayley graph.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn center(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.words[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.interior[v])
    }

    /// Edge occupying slot `column` at `v`.
    pub fn slot(&self, v: usize, column: usize) -> Option<usize> {
        self.slots[v][column]
    }

    pub fn neighbour(&self, v: usize, column: usize) -> Option<usize> {
        let e = self.slots[v][column]?;
        let edge = self.edges[e];
        if edge.u == edge.v {
            return Some(v);
        }
        Some(if edge.u == v { edge.v } else { edge.u })
    }

    /// Incident edges in slot order (a loop appears once per slot it occupies).
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.columns.len()).filter_map(move |c| self.slots[v][c].map(|e| (c, e)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.slots[v].iter().filter(|s| s.is_some()).count()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let edge = self.edges[e];
        if edge.u == v {
            edge.v
        } else {
            edge.u
        }
    }

    /// Vertex reached by reading `w` from `v`, if it stays in the ball.
    pub fn trace(&self, v: usize, w: &Word) -> Option<usize> {
        let mut cur = v;
        for &l in w.letters() {
            cur = self.neighbour(cur, self.column_of(l))?;
        }
        Some(cur)
    }

    /// Vertices and edges of the walk reading `w` from `v`.
    pub fn trace_walk(&self, v: usize, w: &Word) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut verts = vec![v];
        let mut edges = Vec::with_capacity(w.len());
        let mut cur = v;
        for &l in w.letters() {
            let c = self.column_of(l);
            let e = self.slots[cur][c]?;
            cur = self.neighbour(cur, c)?;
            verts.push(cur);
            edges.push(e);
        }
        Some((verts, edges))
    }

    /// Left translate `g·v`, found by reading `g` then the label of `v` from the center.
    pub fn left_translate(&self, g: Letter, v: usize) -> Option<usize> {
        let first = self.neighbour(self.center(), self.column_of(g))?;
        self.trace(first, &self.words[v])
    }

    pub fn colour_name(&self, colour: usize) -> &str {
        self.presentation.alphabet().name(colour)
    }

    /// Undirected underlying multigraph as endpoint pairs, indexed like `edges()`.
    pub fn endpoint_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// Same ball with one edge deleted; interior marking is kept, so the hole is visible
    /// to certification.
    pub fn without_edge(&self, e: usize) -> CayleyBall {
        let mut edges = self.edges.clone();
        edges.remove(e);
        let mut b = self.clone();
        b.edges = edges;
        b.complete = false;
        b.slots = slots_from_edges(&self.presentation, &self.columns, self.len(), &b.edges)
            .expect("deleting an edge keeps slots disjoint");
        b
    }

    pub fn to_json(&self) -> BallJson {
        let alphabet = self.presentation.alphabet();
        BallJson {
            presentation: self.presentation.to_string(),
            center: self.center(),
            radius: self.radius,
            vertices: (0..self.len())
                .map(|v| VertexJson { id: v, word: self.presentation.format_word(&self.words[v]) })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { u: e.u, v: e.v, colour: alphabet.name(e.colour).to_string(), directed: e.directed })
                .collect(),
            interior: self.interior().collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("ball JSON serialises")
    }

    pub fn from_json_str(s: &str) -> Result<CayleyBall, BallError> {
        let j: BallJson = serde_json::from_str(s)?;
        CayleyBall::from_json(&j)
    }

    pub fn from_json(j: &BallJson) -> Result<CayleyBall, BallError> {
        let presentation = Presentation::parse(&j.presentation)?;
        let alphabet = presentation.alphabet();
        let columns = alphabet.columns();
        let n = j.vertices.len();
        let mut words = vec![Word::empty(); n];
        for (i, vj) in j.vertices.iter().enumerate() {
            if vj.id != i {
                return Err(BallError::Invalid(format!("vertex ids must be 0..{n} in order")));
            }
            words[i] = presentation.parse_word(&vj.word)?;
        }
        if j.center != 0 || n == 0 {
            return Err(BallError::Invalid("center must be vertex 0".into()));
        }
        let mut edges = Vec::with_capacity(j.edges.len());
        for ej in &j.edges {
            let colour = alphabet
                .find(&ej.colour)
                .ok_or_else(|| BallError::Invalid(format!("unknown colour `{}`", ej.colour)))?;
            if ej.u >= n || ej.v >= n {
                return Err(BallError::Invalid(format!("edge {}-{} out of range", ej.u, ej.v)));
            }
            if ej.directed == alphabet.is_involution(colour) {
                return Err(BallError::Invalid(format!(
                    "edge {}-{} of colour {} has wrong orientation flag",
                    ej.u, ej.v, ej.colour
                )));
            }
            edges.push(Edge { u: ej.u, v: ej.v, colour, directed: ej.directed });
        }
        let slots = slots_from_edges(&presentation, &columns, n, &edges).map_err(BallError::Invalid)?;
        let inv_col: Vec<usize> = columns.iter().map(|&l| alphabet.column_of(alphabet.inverse(l))).collect();

        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for e in slots[u].iter().flatten() {
                let edge = edges[*e];
                let w = if edge.u == u { edge.v } else { edge.u };
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(BallError::Invalid("ball is not connected".into()));
        }
        let mut interior = vec![false; n];
        for &v in &j.interior {
            if v >= n {
                return Err(BallError::Invalid(format!("interior vertex {v} out of range")));
            }
            interior[v] = true;
        }
        let complete = slots.iter().all(|row| row.iter().all(Option::is_some));
        Ok(CayleyBall {
            presentation,
            columns,
            inv_col,
            radius: j.radius,
            complete,
            words,
            depth,
            edges,
            slots,
            interior,
        })
    }
}

fn edges_from_neighbours(
    presentation: &Presentation,
    columns: &[Letter],
    nbr: &[Vec<Option<usize>>],
) -> (Vec<Edge>, Vec<Vec<Option<usize>>>) {
    let alphabet = presentation.alphabet();
    let mut edges = Vec::new();
    for (u, row) in nbr.iter().enumerate() {
        for (c, &l) in columns.iter().enumerate() {
            let Some(v) = row[c] else { continue };
            if alphabet.is_involution(l.generator) {
                if u <= v {
                    edges.push(Edge { u, v, colour: l.generator, directed: false });
                }
            } else if !l.inverse {
                edges.push(Edge { u, v, colour: l.generator, directed: true });
            }
        }
    }
    let slots = slots_from_edges(presentation, columns, nbr.len(), &edges)
        .expect("symmetric neighbour table yields disjoint slots");
    (edges, slots)
}

fn slots_from_edges(
    presentation: &Presentation,
    columns: &[Letter],
    n: usize,
    edges: &[Edge],
) -> Result<Vec<Vec<Option<usize>>>, String> {
    let alphabet = presentation.alphabet();
    let mut slots = vec![vec![None; columns.len()]; n];
    let mut put = |v: usize, c: usize, e: usize| -> Result<(), String> {
        match slots[v][c] {
            Some(old) if old != e => Err(format!("vertex {v} has two edges in slot {c}")),
            _ => {
                slots[v][c] = Some(e);
                Ok(())
            }
        }
    };
    for (i, e) in edges.iter().enumerate() {
        if e.directed {
            put(e.u, alphabet.column_of(Letter::pos(e.colour)), i)?;
            put(e.v, alphabet.column_of(Letter::new(e.colour, true)), i)?;
        } else {
            let c = alphabet.column_of(Letter::pos(e.colour));
            put(e.u, c, i)?;
            put(e.v, c, i)?;
        }
    }
    Ok(slots)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub colour: String,
    pub directed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub presentation: String,
    pub center: usize,
    pub radius: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub interior: Vec<usize>,
}
