use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::construct::CayleyBall;
use crate::presentation::Presentation;

use super::gf2::{Basis, BitRow};
use super::{core_mask, AnalyzeError};

/// Relator circuits as edge sets, with the rank of their span.
#[derive(Clone, Debug)]
pub struct Gf2CycleBasis {
    pub circuits: Vec<Vec<usize>>,
    pub rank: usize,
}

fn same_alphabet(b: &CayleyBall, p: &Presentation) -> Result<(), AnalyzeError> {
    if b.presentation().generators() != p.generators() {
        return Err(AnalyzeError::Precondition("presentation generators differ from the ball's".into()));
    }
    Ok(())
}

/// Distinct non-empty circuits (edges used an odd number of times) of relator walks
/// from every vertex whose walk stays in the ball and closes.
pub fn relator_circuits(b: &CayleyBall, p: &Presentation) -> Result<Gf2CycleBasis, AnalyzeError> {
    same_alphabet(b, p)?;
    let mut set = BTreeSet::new();
    for v in 0..b.len() {
        for r in p.relators() {
            let Some((verts, edges)) = b.trace_walk(v, r) else { continue };
            if verts.last() != Some(&v) {
                continue;
            }
            let mut count: BTreeMap<usize, usize> = BTreeMap::new();
            for e in edges {
                *count.entry(e).or_default() += 1;
            }
            let c: Vec<usize> = count.into_iter().filter(|&(_, k)| k % 2 == 1).map(|(e, _)| e).collect();
            if !c.is_empty() {
                set.insert(c);
            }
        }
    }
    let circuits: Vec<Vec<usize>> = set.into_iter().collect();
    let mut basis = Basis::new();
    for c in &circuits {
        basis.insert(BitRow::from_indices(b.edges().len(), c));
    }
    Ok(Gf2CycleBasis { rank: basis.rank(), circuits })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpaceReport {
    pub spanned: bool,
    /// Rank of the relator circuits.
    pub rank: usize,
    /// Edges of the target subgraph.
    pub edges: usize,
    /// Dimension of the target subgraph's cycle space.
    pub dimension: usize,
    /// Non-tree edge whose fundamental circuit is not spanned.
    pub unspanned_edge: Option<usize>,
}

/// Relator circuits span every fundamental circuit of the interior subgraph.
pub fn cycle_space_span_check(b: &CayleyBall, p: &Presentation) -> Result<CycleSpaceReport, AnalyzeError> {
    cycle_space_span_check_with_margin(b, p, 1)
}

/// As [`cycle_space_span_check`], with the target subgraph on vertices at depth at most
/// `radius - margin`.
pub fn cycle_space_span_check_with_margin(
    b: &CayleyBall,
    p: &Presentation,
    margin: usize,
) -> Result<CycleSpaceReport, AnalyzeError> {
    same_alphabet(b, p)?;
    let target = core_mask(b, margin);
    if !target.iter().any(|&t| t) {
        return Err(AnalyzeError::BallTooSmall(format!("radius {} with margin {margin}", b.radius())));
    }
    let gens = relator_circuits(b, p)?;
    let ne = b.edges().len();
    let mut basis = Basis::new();
    for c in &gens.circuits {
        basis.insert(BitRow::from_indices(ne, c));
    }

    // BFS forest of the target subgraph.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; b.len()];
    let mut depth = vec![usize::MAX; b.len()];
    let mut tree_edge = vec![false; ne];
    let mut components = 0;
    for s in (0..b.len()).filter(|&v| target[v]) {
        if depth[s] != usize::MAX {
            continue;
        }
        components += 1;
        depth[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for (_, e) in b.incident(u) {
                let w = b.other_end(e, u);
                if target[w] && depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((u, e));
                    tree_edge[e] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let target_edges: Vec<usize> = (0..ne).filter(|&e| target[b.edge(e).u] && target[b.edge(e).v]).collect();
    let nv = target.iter().filter(|&&t| t).count();
    let mut unspanned_edge = None;
    for &e in target_edges.iter().filter(|&&e| !tree_edge[e]) {
        let edge = b.edge(e);
        let mut row = BitRow::zeros(ne);
        row.flip(e);
        let (mut x, mut y) = (edge.u, edge.v);
        while x != y {
            if depth[x] >= depth[y] {
                let (px, pe) = parent[x].expect("non-root has a parent");
                row.flip(pe);
                x = px;
            } else {
                let (py, pe) = parent[y].expect("non-root has a parent");
                row.flip(pe);
                y = py;
            }
        }
        if !basis.contains(&row) {
            unspanned_edge = Some(e);
            break;
        }
    }
    Ok(CycleSpaceReport {
        spanned: unspanned_edge.is_none(),
        rank: gens.rank,
        edges: target_edges.len(),
        dimension: target_edges.len() + components - nv,
        unspanned_edge,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBasisReport {
    pub ok: bool,
    pub max_multiplicity: usize,
    pub witness_edge: Option<usize>,
    /// Per colour name: (least, greatest) multiplicity over counted edges.
    pub per_colour: BTreeMap<String, (usize, usize)>,
    pub counted_edges: usize,
}

/// Counts, for each core edge, the distinct relator circuits through it.
pub fn two_basis_check(b: &CayleyBall, p: &Presentation) -> Result<TwoBasisReport, AnalyzeError> {
    let gens = relator_circuits(b, p)?;
    let margin = p.max_relator_len().div_ceil(2).max(1);
    let core = core_mask(b, margin);
    let mut mult = vec![0usize; b.edges().len()];
    for c in &gens.circuits {
        for &e in c {
            mult[e] += 1;
        }
    }
    let counted: Vec<usize> = (0..b.edges().len()).filter(|&e| core[b.edge(e).u] && core[b.edge(e).v]).collect();
    let mut per_colour: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for &e in &counted {
        let name = b.colour_name(b.edge(e).colour).to_string();
        let entry = per_colour.entry(name).or_insert((usize::MAX, 0));
        entry.0 = entry.0.min(mult[e]);
        entry.1 = entry.1.max(mult[e]);
    }
    let max_multiplicity = counted.iter().map(|&e| mult[e]).max().unwrap_or(0);
    let witness_edge = counted.iter().copied().find(|&e| mult[e] > 2);
    Ok(TwoBasisReport {
        ok: witness_edge.is_none(),
        max_multiplicity,
        witness_edge,
        per_colour,
        counted_edges: counted.len(),
    })
}
