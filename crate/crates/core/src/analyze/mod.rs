//! Structural diagnostics on finite balls: cut vertices, 2-separators, hinges,
//! alternating orders, independent paths and cycle-space checks.
//!
//! Anything near the boundary of a truncated ball may be an artefact of the truncation,
//! so results are restricted to the *core*: vertices at depth at most `radius - margin`
//! (every vertex when the ball is the whole graph).

mod cycles;
pub mod gf2;
mod graph;
mod nos;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::construct::CayleyBall;
use crate::presentation::{Presentation, Word};

pub use cycles::{
    cycle_space_span_check, cycle_space_span_check_with_margin, relator_circuits, two_basis_check, CycleSpaceReport,
    Gf2CycleBasis, TwoBasisReport,
};
pub use nos::{nos_properties_check, NosItem, NosReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("ball too small: {0}")]
    BallTooSmall(String),
    #[error("no separating pair among core vertices of the radius-{radius} ball")]
    NoSeparatorFound { radius: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ball is not of the expected type: {0}")]
    WrongType(String),
}

/// Margin used for separation results: half the longest relator, at least 1.
pub fn analysis_margin(p: &Presentation) -> usize {
    p.max_relator_len().div_ceil(2).max(1)
}

/// Smallest radius whose core contains a vertex at distance `reach` from the center.
pub fn radius_for(p: &Presentation, reach: usize) -> usize {
    (reach + analysis_margin(p)).max(3)
}

/// Core membership for the given margin.
pub fn core_mask(b: &CayleyBall, margin: usize) -> Vec<bool> {
    (0..b.len()).map(|v| b.is_complete() || b.depth(v) + margin <= b.radius()).collect()
}

fn checked_core(b: &CayleyBall) -> Result<Vec<bool>, AnalyzeError> {
    if !b.is_complete() && b.radius() < 3 {
        return Err(AnalyzeError::BallTooSmall(format!("radius {} < 3", b.radius())));
    }
    let margin = analysis_margin(b.presentation());
    let core = core_mask(b, margin);
    if !core.iter().any(|&c| c) {
        return Err(AnalyzeError::BallTooSmall(format!(
            "radius {} leaves no vertex with margin {margin} to the boundary",
            b.radius()
        )));
    }
    Ok(core)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub x: usize,
    pub y: usize,
    /// Components of the ball minus {x, y}.
    pub components: Vec<Vec<usize>>,
    pub path: Vec<usize>,
    pub z: Word,
    /// Tracing z twice from x returns to x; `None` if the trace leaves the ball.
    pub z_squared_trivial: Option<bool>,
}

impl SeparationCertificate {
    pub fn path_len(&self) -> usize {
        self.path.len() - 1
    }

    /// Distinct generators on the path.
    pub fn colours(&self) -> Vec<usize> {
        self.z.support()
    }
}

fn certificate(b: &CayleyBall, reach: &mut graph::Reach, x: usize, y: usize) -> SeparationCertificate {
    let (path, z) = graph::shortlex_path(b, x, y).expect("balls are connected");
    let z_squared_trivial = b.trace(x, &z).and_then(|m| b.trace(m, &z)).map(|end| end == x);
    SeparationCertificate { x, y, components: reach.components(&[x, y]), path, z, z_squared_trivial }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub has_interior_cutvertex: bool,
    pub cutvertices: Vec<usize>,
    /// All separating core pairs, by path length and then by endpoints.
    pub two_separators: Vec<SeparationCertificate>,
    pub core_size: usize,
    pub margin: usize,
}

/// Core pairs ordered by distance, then lexicographically.
fn core_pairs(b: &CayleyBall, core: &[bool]) -> Vec<(usize, usize, usize)> {
    let mut pairs = Vec::new();
    for x in (0..b.len()).filter(|&v| core[v]) {
        let d = graph::distances(b, x);
        for y in (x + 1..b.len()).filter(|&v| core[v]) {
            pairs.push((d[y], x, y));
        }
    }
    pairs.sort_unstable();
    pairs
}

pub fn connectivity_diagnostics(b: &CayleyBall) -> Result<ConnectivityReport, AnalyzeError> {
    let core = checked_core(b)?;
    let mut reach = graph::Reach::new(b);
    let cutvertices: Vec<usize> = (0..b.len()).filter(|&v| core[v] && reach.separates(&[v], &[])).collect();
    let mut two_separators = Vec::new();
    for (_, x, y) in core_pairs(b, &core) {
        if reach.separates(&[x, y], &[]) {
            two_separators.push(certificate(b, &mut reach, x, y));
        }
    }
    Ok(ConnectivityReport {
        has_interior_cutvertex: !cutvertices.is_empty(),
        cutvertices,
        two_separators,
        core_size: core.iter().filter(|&&c| c).count(),
        margin: analysis_margin(b.presentation()),
    })
}

/// Core vertices whose removal disconnects the ball.
pub fn core_cutvertices(b: &CayleyBall) -> Result<Vec<usize>, AnalyzeError> {
    let core = checked_core(b)?;
    let cut = graph::articulation_points(b);
    Ok((0..b.len()).filter(|&v| core[v] && cut[v]).collect())
}

/// Core edges whose endpoint pair separates.
pub fn find_hinges(b: &CayleyBall) -> Result<Vec<usize>, AnalyzeError> {
    let core = checked_core(b)?;
    let mut reach = graph::Reach::new(b);
    Ok((0..b.edges().len())
        .filter(|&e| {
            let edge = b.edge(e);
            edge.u != edge.v && core[edge.u] && core[edge.v] && reach.separates(&[edge.u, edge.v], &[])
        })
        .collect())
}

/// Separating core pair at least distance, with the shortlex least path between them.
pub fn shortest_separating_path(b: &CayleyBall) -> Result<SeparationCertificate, AnalyzeError> {
    let core = checked_core(b)?;
    let mut reach = graph::Reach::new(b);
    core_pairs(b, &core)
        .into_iter()
        .find(|&(_, x, y)| reach.separates(&[x, y], &[]))
        .map(|(_, x, y)| certificate(b, &mut reach, x, y))
        .ok_or(AnalyzeError::NoSeparatorFound { radius: b.radius() })
}

/// Maximum number of internally disjoint `x`–`y` paths inside the ball.
pub fn independent_paths(b: &CayleyBall, x: usize, y: usize) -> Result<usize, AnalyzeError> {
    if x == y {
        return Err(AnalyzeError::Precondition("independent_paths needs x != y".into()));
    }
    if x >= b.len() || y >= b.len() {
        return Err(AnalyzeError::Precondition(format!("vertex out of range (ball has {})", b.len())));
    }
    Ok(graph::vertex_disjoint_paths(b, x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    Finite(usize),
    /// No closure within `bound`.
    Infinite {
        bound: usize,
    },
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite { .. } => None,
        }
    }
}

/// Order of the element labelled `w`, read at `v`, counted in repetitions of `w`.
///
/// Walks `w` forwards and `w^-1` backwards; a meeting after `i` and `j` repetitions means
/// `w^(i+j) = 1`. Without a meeting, the bound is the number of repetitions covered.
pub fn word_order(b: &CayleyBall, v: usize, w: &Word, max_reps: usize) -> Order {
    let alphabet = b.presentation().alphabet();
    let walk = |w: &Word| {
        let mut pts = vec![v];
        let mut cur = v;
        while pts.len() <= max_reps {
            match b.trace(cur, w) {
                Some(next) => {
                    cur = next;
                    pts.push(cur);
                    if cur == v {
                        break;
                    }
                }
                None => break,
            }
        }
        pts
    };
    let fwd = walk(w);
    if let Some(k) = fwd.iter().skip(1).position(|&p| p == v) {
        return Order::Finite(k + 1);
    }
    let bwd = walk(&w.inverse(alphabet));
    let at: HashMap<usize, usize> = fwd.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let best = bwd.iter().enumerate().filter_map(|(j, p)| at.get(p).map(|&i| i + j)).filter(|&k| k > 0).min();
    match best {
        Some(k) => Order::Finite(k),
        None => Order::Infinite { bound: ((fwd.len() - 1) + (bwd.len() - 1)).min(max_reps) },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourPairOrder {
    pub pair: (usize, usize),
    /// Finite(k): the alternating walk closes after 2k edges. Infinite(bound): no closure
    /// within `bound` edges.
    pub order: Order,
}

/// Alternating orbits from the center for every pair of involution colours.
pub fn colour_pair_orders(b: &CayleyBall, bound: usize) -> Vec<ColourPairOrder> {
    let alphabet = b.presentation().alphabet();
    let inv: Vec<usize> = (0..alphabet.len()).filter(|&g| alphabet.is_involution(g)).collect();
    let mut out = Vec::new();
    for (i, &g) in inv.iter().enumerate() {
        for &h in &inv[i + 1..] {
            let w = Word::new(vec![crate::presentation::Letter::pos(g), crate::presentation::Letter::pos(h)]);
            let order = match word_order(b, b.center(), &w, bound.div_ceil(2)) {
                Order::Finite(k) => Order::Finite(k),
                Order::Infinite { bound: reps } => Order::Infinite { bound: (2 * reps).min(bound) },
            };
            out.push(ColourPairOrder { pair: (g, h), order });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EdgeRef {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub colour: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeparatorJson {
    pub x: usize,
    pub y: usize,
    pub z_word: String,
    pub path_len: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ColourOrderJson {
    pub pair: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CycleSpaceJson {
    pub spanned: bool,
    pub rank: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TwoBasisJson {
    pub ok: bool,
    pub max_multiplicity: usize,
}

/// Diagnostic report, as serialised by the command line.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Diagnostics {
    pub hinges: Vec<EdgeRef>,
    pub cutvertex: bool,
    pub separators: Vec<SeparatorJson>,
    pub colour_orders: Vec<ColourOrderJson>,
    pub cycle_space: CycleSpaceJson,
    pub two_basis: TwoBasisJson,
}

pub fn edge_ref(b: &CayleyBall, e: usize) -> EdgeRef {
    let edge = b.edge(e);
    EdgeRef { id: e, u: edge.u, v: edge.v, colour: b.colour_name(edge.colour).to_string() }
}

pub fn colour_order_json(b: &CayleyBall, o: &ColourPairOrder) -> ColourOrderJson {
    let pair = [b.colour_name(o.pair.0).to_string(), b.colour_name(o.pair.1).to_string()];
    match o.order {
        Order::Finite(k) => ColourOrderJson { pair, order: Some(k), bound: None },
        Order::Infinite { bound } => ColourOrderJson { pair, order: None, bound: Some(bound) },
    }
}

/// Every diagnostic on one ball, against its own presentation.
pub fn diagnose(b: &CayleyBall) -> Result<Diagnostics, AnalyzeError> {
    let conn = connectivity_diagnostics(b)?;
    let hinges = find_hinges(b)?;
    let p = b.presentation();
    let cycle = cycle_space_span_check(b, p)?;
    let two = two_basis_check(b, p)?;
    let bound = if b.is_complete() { 2 * b.len() } else { 2 * b.radius() };
    Ok(Diagnostics {
        hinges: hinges.iter().map(|&e| edge_ref(b, e)).collect(),
        cutvertex: conn.has_interior_cutvertex,
        separators: conn
            .two_separators
            .iter()
            .map(|s| SeparatorJson { x: s.x, y: s.y, z_word: p.format_word(&s.z), path_len: s.path_len() })
            .collect(),
        colour_orders: colour_pair_orders(b, bound).iter().map(|o| colour_order_json(b, o)).collect(),
        cycle_space: CycleSpaceJson { spanned: cycle.spanned, rank: cycle.rank, edges: cycle.edges },
        two_basis: TwoBasisJson { ok: two.ok, max_multiplicity: two.max_multiplicity },
    })
}
