//! Spin embeddings of Cayley balls as rotation systems, face tracing, and planarity.
//!
//! A vertex's spin picks one of the two cyclic orders of its slots: positive is the
//! column order (`a, a^-1, b` or `b, c, d`), negative the reverse. An edge colour
//! *preserves* spin when its endpoints always have equal spin.

mod dmp;
mod planarity;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analyze::relator_circuits;
use crate::construct::{CayleyBall, GraphType, TypeParams};
use crate::presentation::Letter;

pub use dmp::is_planar_path_addition;
pub use planarity::{
    cbc_scaffold, components, count_faces, euler_consistent, face_walks, is_planar, k33, planarity_check,
    small_isomorphic, suppress_degree_two, verify_witness, KuratowskiKind, KuratowskiWitness, PlanarCertificate,
    Planarity, Suppressed, UGraph,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("no spin assignment realises the pattern: {0}")]
    SpinConflict(String),
    #[error("embedding is not of the expected type: {0}")]
    WrongType(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColourSpin {
    Preserving,
    Reversing,
}

impl ColourSpin {
    fn flips(self) -> bool {
        self == ColourSpin::Reversing
    }
}

/// Declared spin behaviour per generator name, or any planar pattern for the finite type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinPattern {
    Fixed(Vec<(String, ColourSpin)>),
    AnyPlanar,
}

pub fn spin_table(tp: &TypeParams) -> SpinPattern {
    use ColourSpin::{Preserving as P, Reversing as R};
    let pattern: &[(&str, ColourSpin)] = match tp.kind {
        GraphType::I => &[("a", P), ("b", P)],
        GraphType::II => &[("a", P), ("b", R)],
        GraphType::III => &[("a", R), ("b", P)],
        GraphType::IV | GraphType::VII => &[("b", P), ("c", P), ("d", P)],
        GraphType::V => &[("b", R), ("c", P), ("d", R)],
        GraphType::VI => &[("b", R), ("c", R), ("d", R)],
        GraphType::VIII => &[("b", P), ("c", R), ("d", R)],
        GraphType::IX => return SpinPattern::AnyPlanar,
    };
    SpinPattern::Fixed(pattern.iter().map(|&(g, s)| (g.to_string(), s)).collect())
}

/// Whether the type admits an embedding without vertex-accumulation points.
pub fn vap_free(kind: GraphType) -> bool {
    !matches!(kind, GraphType::III | GraphType::IV | GraphType::V | GraphType::VII)
}

/// Rotation system on a ball given by a spin bit per vertex.
#[derive(Clone, Debug)]
pub struct RotationEmbedding<'a> {
    ball: &'a CayleyBall,
    params: Option<TypeParams>,
    spin: Vec<bool>,
    colour_spin: Vec<ColourSpin>,
}

/// Embeds a ball with the spin pattern of its type. For type IX every planar one of the
/// eight patterns is allowed; the one with fewest closed faces that are not relator
/// circuits is taken (first in pattern order on ties).
pub fn embed<'a>(b: &'a CayleyBall, tp: &TypeParams) -> Result<RotationEmbedding<'a>, EmbedError> {
    if b.presentation().canonical_form() != tp.presentation().canonical_form() {
        return Err(EmbedError::Precondition(format!("ball presentation {} is not {tp}", b.presentation())));
    }
    let k = b.presentation().alphabet().len();
    let mut e = match spin_table(tp) {
        SpinPattern::Fixed(pattern) => {
            let alphabet = b.presentation().alphabet();
            let mut spins = vec![ColourSpin::Preserving; k];
            for (name, s) in pattern {
                let g = alphabet.find(&name).ok_or_else(|| EmbedError::Precondition(format!("no generator {name}")))?;
                spins[g] = s;
            }
            embed_with_pattern(b, &spins)?
        }
        SpinPattern::AnyPlanar => {
            let mut best: Option<(usize, RotationEmbedding)> = None;
            for mask in 0..1usize << k {
                let spins: Vec<ColourSpin> = (0..k)
                    .map(|g| if mask >> g & 1 == 1 { ColourSpin::Reversing } else { ColourSpin::Preserving })
                    .collect();
                if let Ok(e) = embed_with_pattern(b, &spins) {
                    let extra = face_relator_correspondence(&e).extra_faces.len();
                    if best.as_ref().is_none_or(|(x, _)| extra < *x) {
                        best = Some((extra, e));
                    }
                }
            }
            best.map(|(_, e)| e).ok_or_else(|| EmbedError::SpinConflict("no planar spin pattern".into()))?
        }
    };
    e.params = Some(*tp);
    Ok(e)
}

/// Propagates spins from the center (positive) by the per-generator pattern, then checks
/// that the induced rotation system of the whole ball is planar.
pub fn embed_with_pattern<'a>(b: &'a CayleyBall, pattern: &[ColourSpin]) -> Result<RotationEmbedding<'a>, EmbedError> {
    if pattern.len() != b.presentation().alphabet().len() {
        return Err(EmbedError::Precondition("one spin value per generator required".into()));
    }
    let mut spin: Vec<Option<bool>> = vec![None; b.len()];
    spin[b.center()] = Some(true);
    let mut queue = VecDeque::from([b.center()]);
    while let Some(v) = queue.pop_front() {
        let s = spin[v].expect("queued vertices have spin");
        for (_, e) in b.incident(v) {
            let edge = b.edge(e);
            let w = b.other_end(e, v);
            let want = s ^ pattern[edge.colour].flips();
            match spin[w] {
                None => {
                    spin[w] = Some(want);
                    queue.push_back(w);
                }
                Some(t) if t != want => {
                    return Err(EmbedError::SpinConflict(format!(
                        "edge {e} ({}) closes an odd cycle of reversing edges",
                        b.colour_name(edge.colour)
                    )))
                }
                _ => {}
            }
        }
    }
    let e = RotationEmbedding {
        ball: b,
        params: None,
        spin: spin.into_iter().map(|s| s.unwrap_or(true)).collect(),
        colour_spin: pattern.to_vec(),
    };
    let g = e.genus();
    if g != 0 {
        return Err(EmbedError::SpinConflict(format!("induced rotation system has genus {g}")));
    }
    Ok(e)
}

impl<'a> RotationEmbedding<'a> {
    /// Embedding with explicitly given spins; the colour pattern is read off the center's
    /// edges.
    pub fn from_spins(ball: &'a CayleyBall, spin: Vec<bool>) -> RotationEmbedding<'a> {
        assert_eq!(spin.len(), ball.len(), "one spin per vertex");
        let mut colour_spin = vec![ColourSpin::Preserving; ball.presentation().alphabet().len()];
        for (_, e) in ball.incident(ball.center()) {
            let edge = ball.edge(e);
            if spin[edge.u] != spin[edge.v] {
                colour_spin[edge.colour] = ColourSpin::Reversing;
            }
        }
        RotationEmbedding { ball, params: None, spin, colour_spin }
    }

    pub fn ball(&self) -> &'a CayleyBall {
        self.ball
    }

    pub fn params(&self) -> Option<TypeParams> {
        self.params
    }

    pub fn kind(&self) -> Option<GraphType> {
        self.params.map(|p| p.kind)
    }

    pub fn spin(&self, v: usize) -> bool {
        self.spin[v]
    }

    pub fn spins(&self) -> &[bool] {
        &self.spin
    }

    pub fn colour_spin(&self) -> &[ColourSpin] {
        &self.colour_spin
    }

    /// Same embedding with one vertex's rotation reversed.
    pub fn with_flipped(&self, v: usize) -> RotationEmbedding<'a> {
        let mut e = self.clone();
        e.spin[v] = !e.spin[v];
        e
    }

    /// Occupied columns of `v` in cyclic order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let k = self.ball.columns().len();
        let order: Vec<usize> = if self.spin[v] { (0..k).collect() } else { (0..k).rev().collect() };
        order.into_iter().filter(|&c| self.ball.slot(v, c).is_some()).collect()
    }

    pub fn rotation_edges(&self, v: usize) -> Vec<usize> {
        self.rotation(v).into_iter().map(|c| self.ball.slot(v, c).expect("occupied")).collect()
    }

    fn step(&self, v: usize, c: usize, forward: bool) -> usize {
        let rot = self.rotation(v);
        let i = rot.iter().position(|&x| x == c).expect("column occupied");
        let n = rot.len();
        rot[if forward { (i + 1) % n } else { (i + n - 1) % n }]
    }

    /// Next dart of the face to the left of dart `(v, c)`.
    pub fn next_dart(&self, v: usize, c: usize) -> Option<(usize, usize)> {
        let w = self.ball.neighbour(v, c)?;
        let arrival = self.ball.inverse_column(c);
        self.ball.slot(w, arrival)?;
        Some((w, self.step(w, arrival, true)))
    }

    /// Inverse of [`next_dart`](Self::next_dart).
    pub fn prev_dart(&self, v: usize, c: usize) -> Option<(usize, usize)> {
        let p = self.step(v, c, false);
        let u = self.ball.neighbour(v, p)?;
        Some((u, self.ball.inverse_column(p)))
    }

    /// Rotation system of the whole ball over its underlying multigraph.
    pub fn rotation_system(&self) -> Vec<Vec<usize>> {
        (0..self.ball.len()).map(|v| self.rotation_edges(v)).collect()
    }

    /// Genus of the induced rotation system on the (connected) ball.
    pub fn genus(&self) -> usize {
        let g = UGraph::from_ball(self.ball);
        let loops = g.edges().iter().filter(|(u, v)| u == v).count();
        let chi = g.len() as i64 - (g.edges().len() - loops) as i64 + count_faces(&g, &self.rotation_system()) as i64;
        ((2 - chi) / 2).max(0) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceLength {
    Closed(usize),
    /// Reaches the ball boundary in both directions; length of the traced segment.
    Truncated(usize),
    Unbounded {
        bound: usize,
    },
}

/// Face walk as a sequence of darts `(vertex, column)` at interior vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<(usize, usize)>,
    pub edges: Vec<usize>,
    pub closed: bool,
    pub length: FaceLength,
    /// Closed, and its circuit is the circuit of a relator trace.
    pub relator_match: bool,
}

impl FaceWalk {
    /// Edges used an odd number of times, sorted.
    pub fn circuit(&self) -> Vec<usize> {
        odd_edges(&self.edges)
    }

    pub fn colours(&self, b: &CayleyBall) -> BTreeSet<usize> {
        self.edges.iter().map(|&e| b.edge(e).colour).collect()
    }
}

fn odd_edges(edges: &[usize]) -> Vec<usize> {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in edges {
        *count.entry(e).or_default() += 1;
    }
    count.into_iter().filter(|&(_, k)| k % 2 == 1).map(|(e, _)| e).collect()
}

/// All face walks through interior darts, with a dart index.
#[derive(Clone, Debug)]
pub struct FaceSet {
    pub walks: Vec<FaceWalk>,
    by_dart: HashMap<(usize, usize), usize>,
}

impl FaceSet {
    pub fn face_of(&self, v: usize, c: usize) -> Option<&FaceWalk> {
        self.by_dart.get(&(v, c)).map(|&i| &self.walks[i])
    }

    pub fn closed(&self) -> impl Iterator<Item = &FaceWalk> {
        self.walks.iter().filter(|f| f.closed)
    }
}

/// Default step bound: no face of the ball can be longer.
pub fn default_face_bound(b: &CayleyBall) -> usize {
    2 * b.edges().len() + 1
}

/// Traces every face through darts at interior vertices. A walk that reaches a
/// non-interior vertex is followed backwards too, and marked truncated.
pub fn trace_faces(e: &RotationEmbedding, bound: usize) -> FaceSet {
    let b = e.ball;
    let relator: BTreeSet<Vec<usize>> =
        relator_circuits(b, b.presentation()).map(|g| g.circuits.into_iter().collect()).unwrap_or_default();
    let mut by_dart: HashMap<(usize, usize), usize> = HashMap::new();
    let mut walks = Vec::new();
    for v in b.interior() {
        for c in e.rotation(v) {
            if by_dart.contains_key(&(v, c)) {
                continue;
            }
            let id = walks.len();
            let start = (v, c);
            let mut darts = vec![start];
            by_dart.insert(start, id);
            let mut end = None;
            let mut cur = start;
            while end.is_none() {
                let next = e.next_dart(cur.0, cur.1).expect("interior darts have successors");
                if next == start {
                    end = Some(FaceLength::Closed(darts.len()));
                } else if !b.is_interior(next.0) || by_dart.contains_key(&next) {
                    end = Some(FaceLength::Truncated(0));
                } else if darts.len() >= bound {
                    end = Some(FaceLength::Unbounded { bound });
                } else {
                    darts.push(next);
                    by_dart.insert(next, id);
                    cur = next;
                }
            }
            let mut length = end.expect("walk ended");
            if length == FaceLength::Truncated(0) {
                let mut back = Vec::new();
                let mut cur = start;
                while let Some(p) = e.prev_dart(cur.0, cur.1) {
                    if !b.is_interior(p.0) || by_dart.contains_key(&p) {
                        break;
                    }
                    if darts.len() + back.len() >= bound {
                        length = FaceLength::Unbounded { bound };
                        break;
                    }
                    by_dart.insert(p, id);
                    back.push(p);
                    cur = p;
                }
                back.reverse();
                back.extend(darts);
                darts = back;
                if length == FaceLength::Truncated(0) {
                    length = FaceLength::Truncated(darts.len());
                }
            }
            let edges: Vec<usize> = darts.iter().map(|&(v, c)| b.slot(v, c).expect("occupied")).collect();
            let closed = matches!(length, FaceLength::Closed(_));
            let relator_match = closed && relator.contains(&odd_edges(&edges));
            walks.push(FaceWalk { darts, edges, closed, length, relator_match });
        }
    }
    FaceSet { walks, by_dart }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Observed behaviour per generator on interior edges.
    pub colour_spin: Vec<Option<ColourSpin>>,
    /// First interior edge disagreeing with its colour's behaviour.
    pub witness_edge: Option<usize>,
    pub translations_checked: usize,
    /// A (generator, face edges) pair whose translate is not a face.
    pub translation_failure: Option<(usize, Vec<usize>)>,
}

/// Every colour uniformly preserving or reversing on interior edges, and left
/// translates of closed faces are faces where the ball allows checking.
pub fn check_consistency(e: &RotationEmbedding) -> ConsistencyReport {
    let b = e.ball;
    let k = b.presentation().alphabet().len();
    let behaviour = |edge: &crate::construct::Edge| {
        if e.spin[edge.u] == e.spin[edge.v] {
            ColourSpin::Preserving
        } else {
            ColourSpin::Reversing
        }
    };
    let interior_edges: Vec<usize> = (0..b.edges().len())
        .filter(|&i| {
            let x = b.edge(i);
            x.u != x.v && b.is_interior(x.u) && b.is_interior(x.v)
        })
        .collect();
    // Majority behaviour per colour, so a single flipped vertex is what gets reported.
    let mut votes = vec![(0usize, 0usize); k];
    for &i in &interior_edges {
        let x = b.edge(i);
        match behaviour(&x) {
            ColourSpin::Preserving => votes[x.colour].0 += 1,
            ColourSpin::Reversing => votes[x.colour].1 += 1,
        }
    }
    let colour_spin: Vec<Option<ColourSpin>> = votes
        .iter()
        .map(|&(p, r)| match (p, r) {
            (0, 0) => None,
            _ if p >= r => Some(ColourSpin::Preserving),
            _ => Some(ColourSpin::Reversing),
        })
        .collect();
    let witness_edge = interior_edges.iter().copied().find(|&i| {
        let x = b.edge(i);
        Some(behaviour(&x)) != colour_spin[x.colour]
    });
    let faces = trace_faces(e, default_face_bound(b));
    let face_sets: BTreeSet<Vec<usize>> = faces.closed().map(FaceWalk::circuit).collect();
    let mut translations_checked = 0;
    let mut translation_failure = None;
    'outer: for g in 0..k {
        'face: for f in faces.closed() {
            let mut moved = Vec::with_capacity(f.darts.len());
            for &(v, c) in &f.darts {
                match b.left_translate(Letter::pos(g), v) {
                    Some(w) if b.is_interior(w) => moved.push(b.slot(w, c).expect("interior slot")),
                    _ => continue 'face,
                }
            }
            translations_checked += 1;
            if !face_sets.contains(&odd_edges(&moved)) {
                translation_failure = Some((g, f.circuit()));
                break 'outer;
            }
        }
    }
    ConsistencyReport {
        consistent: witness_edge.is_none() && translation_failure.is_none(),
        colour_spin,
        witness_edge,
        translations_checked,
        translation_failure,
    }
}

/// No closed face is bounded by a two-coloured cycle (types IV and V only).
pub fn two_coloured_face_check(e: &RotationEmbedding) -> Result<bool, EmbedError> {
    match e.kind() {
        Some(GraphType::IV) | Some(GraphType::V) => {}
        other => {
            return Err(EmbedError::WrongType(format!(
                "two-coloured face check applies to types IV and V, not {}",
                other.map_or("an untyped embedding".to_string(), |k| k.to_string())
            )))
        }
    }
    let faces = trace_faces(e, default_face_bound(e.ball));
    let ok = faces.closed().all(|f| f.colours(e.ball).len() != 2);
    Ok(ok)
}

/// Closed faces against relator circuits based deep in the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCorrespondence {
    pub closed_faces: usize,
    /// Circuits of closed faces that are not relator circuits.
    pub extra_faces: Vec<Vec<usize>>,
    /// Essential relator circuits traced from deep vertices.
    pub deep_relator_circuits: usize,
    /// Those of them that are not faces.
    pub missing_faces: Vec<Vec<usize>>,
}

impl FaceCorrespondence {
    pub fn exact(&self) -> bool {
        self.extra_faces.is_empty() && self.missing_faces.is_empty()
    }
}

/// Compares closed faces with relator circuits; a relator circuit is required to be a
/// face when traced from a vertex whose walks of half a relator stay interior.
pub fn face_relator_correspondence(e: &RotationEmbedding) -> FaceCorrespondence {
    let b = e.ball;
    let p = b.presentation();
    let faces = trace_faces(e, default_face_bound(b));
    let all: BTreeSet<Vec<usize>> =
        relator_circuits(b, p).map(|g| g.circuits.into_iter().collect()).unwrap_or_default();
    let face_set: BTreeSet<Vec<usize>> = faces.closed().map(FaceWalk::circuit).collect();
    let extra_faces: Vec<Vec<usize>> = face_set.iter().filter(|f| !all.contains(*f)).cloned().collect();
    let reach = p.max_relator_len().div_ceil(2);
    let mut deep = BTreeSet::new();
    for v in (0..b.len()).filter(|&v| b.is_complete() || b.depth(v) + reach < b.radius()) {
        for r in p.essential_relators() {
            if let Some((verts, edges)) = b.trace_walk(v, r) {
                let c = odd_edges(&edges);
                if verts.last() == Some(&v) && !c.is_empty() {
                    deep.insert(c);
                }
            }
        }
    }
    let missing_faces = deep.iter().filter(|c| !face_set.contains(*c)).cloned().collect();
    FaceCorrespondence { closed_faces: face_set.len(), extra_faces, deep_relator_circuits: deep.len(), missing_faces }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRotationJson {
    pub id: usize,
    pub spin: i8,
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub edges: Vec<usize>,
    pub closed: bool,
    pub relator_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub vertex: Vec<VertexRotationJson>,
    pub colour_spin: BTreeMap<String, ColourSpin>,
    pub faces: Vec<FaceJson>,
}

impl RotationEmbedding<'_> {
    pub fn to_json(&self) -> EmbeddingJson {
        let b = self.ball;
        let vertex = (0..b.len())
            .map(|v| VertexRotationJson {
                id: v,
                spin: if self.spin[v] { 1 } else { -1 },
                rotation: self.rotation_edges(v),
            })
            .collect();
        let colour_spin =
            self.colour_spin.iter().enumerate().map(|(g, &s)| (b.colour_name(g).to_string(), s)).collect();
        let faces = trace_faces(self, default_face_bound(b))
            .walks
            .into_iter()
            .map(|f| FaceJson { edges: f.edges, closed: f.closed, relator_match: f.relator_match })
            .collect();
        EmbeddingJson { vertex, colour_spin, faces }
    }
}

/// Faces met at type V vertices far enough from the boundary for their two short faces
/// to be traced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceProfile {
    pub checked: usize,
    /// First vertex not touching exactly two closed (cbcd)^m faces and one open walk.
    pub failure: Option<usize>,
}

pub fn type_v_face_profile(e: &RotationEmbedding) -> Result<FaceProfile, EmbedError> {
    let Some(tp) = e.params.filter(|p| p.kind == GraphType::V) else {
        return Err(EmbedError::WrongType("face profile applies to type V embeddings".into()));
    };
    let b = e.ball;
    let m = tp.m.expect("type V has m") as usize;
    let faces = trace_faces(e, default_face_bound(b));
    let mut checked = 0;
    for v in (0..b.len()).filter(|&v| b.depth(v) + 2 * m < b.radius()) {
        checked += 1;
        let (mut short, mut open) = (0, 0);
        for c in e.rotation(v) {
            let f = faces.face_of(v, c).expect("interior dart");
            if f.closed && f.relator_match && f.darts.len() == 4 * m && f.colours(b).len() == 3 {
                short += 1;
            } else if !f.closed {
                open += 1;
            }
        }
        if (short, open) != (2, 1) {
            return Ok(FaceProfile { checked, failure: Some(v) });
        }
    }
    Ok(FaceProfile { checked, failure: None })
}
