use std::collections::BTreeSet;

use crate::construct::{CayleyBall, GraphType, TypeParams};
use crate::presentation::Word;

use super::graph::Reach;
use super::{analysis_margin, core_mask, AnalyzeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NosItem {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NosReport {
    pub params: TypeParams,
    pub items: Vec<NosItem>,
}

impl NosReport {
    pub fn conforming(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&NosItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

/// Recovers (n, m) when the ball's presentation is literally a type V presentation.
fn type_v_params(b: &CayleyBall) -> Option<TypeParams> {
    let p = b.presentation();
    let lens: Vec<usize> = p.essential_relators().map(Word::len).collect();
    if lens.len() != 2 || lens.iter().any(|l| l % 4 != 0) {
        return None;
    }
    let canon = p.canonical_form();
    [(lens[0], lens[1]), (lens[1], lens[0])].into_iter().find_map(|(l1, l2)| {
        let tp = TypeParams::new(GraphType::V, Some(l1 as u32 / 4), Some(l2 as u32 / 4)).ok()?;
        (tp.presentation().canonical_form() == canon).then_some(tp)
    })
}

struct Cycle {
    verts: Vec<usize>,
    edges: Vec<usize>,
}

/// Distinct cycles traced by `r`, keyed by vertex set.
fn relator_cycles(b: &CayleyBall, r: &Word) -> Vec<Cycle> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 0..b.len() {
        let Some((mut verts, edges)) = b.trace_walk(v, r) else { continue };
        if verts.last() != Some(&v) {
            continue;
        }
        verts.pop();
        let mut key = verts.clone();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(Cycle { verts, edges });
        }
    }
    out
}

/// Checks the structural properties of type V balls on core witnesses:
/// two-edge cuts, separating pairs on (cbcd)^m cycles, hinges, escape paths for b edges,
/// and connections between cycles sharing an edge.
pub fn nos_properties_check(b: &CayleyBall) -> Result<NosReport, AnalyzeError> {
    let params = type_v_params(b)
        .ok_or_else(|| AnalyzeError::WrongType(format!("{} is not a type V presentation", b.presentation())))?;
    let p = b.presentation();
    let m = params.m.expect("type V has m") as usize;
    let margin = analysis_margin(p);
    if !b.is_complete() && b.radius() < 4 * m + 2 {
        return Err(AnalyzeError::BallTooSmall(format!(
            "radius {} < {} (one (cbcd)^m cycle plus 2)",
            b.radius(),
            4 * m + 2
        )));
    }
    let core = core_mask(b, margin);
    let alphabet = p.alphabet();
    let (gb, gd) = (alphabet.find("b").expect("b"), alphabet.find("d").expect("d"));
    let long = p.essential_relators().find(|r| r.support().contains(&gd)).expect("type V has a relator with d").clone();
    let in_core = |c: &Cycle| c.verts.iter().all(|&v| core[v]);
    let long_cycles = relator_cycles(b, &long);
    let all_cycles: Vec<Cycle> = p.essential_relators().flat_map(|r| relator_cycles(b, r)).collect();
    let core_edges: Vec<usize> = (0..b.edges().len())
        .filter(|&e| {
            let x = b.edge(e);
            x.u != x.v && core[x.u] && core[x.v]
        })
        .collect();
    let mut reach = Reach::new(b);
    let mut items = Vec::new();

    // Two edges, not both d, never separate.
    let mut checked = 0;
    let mut witness = None;
    'ii: for (i, &e) in core_edges.iter().enumerate() {
        for &f in &core_edges[i + 1..] {
            if b.edge(e).colour == gd && b.edge(f).colour == gd {
                continue;
            }
            checked += 1;
            if reach.separates(&[], &[e, f]) {
                witness = Some(format!("edges {e} and {f}"));
                break 'ii;
            }
        }
    }
    items.push(NosItem { name: "two_edge_cuts", passed: witness.is_none(), checked, witness });

    // A separating pair on a (cbcd)^m cycle consists of ends of d edges of that cycle.
    let mut checked = 0;
    let mut witness = None;
    'iii: for c in long_cycles.iter().filter(|c| in_core(c)) {
        let on_d: BTreeSet<usize> =
            c.edges.iter().filter(|&&e| b.edge(e).colour == gd).flat_map(|&e| [b.edge(e).u, b.edge(e).v]).collect();
        for (i, &s) in c.verts.iter().enumerate() {
            for &t in &c.verts[i + 1..] {
                checked += 1;
                if reach.separates(&[s, t], &[]) && !(on_d.contains(&s) && on_d.contains(&t)) {
                    witness = Some(format!("pair {s}, {t}"));
                    break 'iii;
                }
            }
        }
    }
    items.push(NosItem { name: "cycle_separators_on_d", passed: witness.is_none(), checked, witness });

    // No hinge.
    let hinge = core_edges.iter().copied().find(|&e| reach.separates(&[b.edge(e).u, b.edge(e).v], &[]));
    items.push(NosItem {
        name: "no_hinge",
        passed: hinge.is_none(),
        checked: core_edges.len(),
        witness: hinge.map(|e| format!("edge {e}")),
    });

    // Each b edge vw of a (cbcd)^m cycle C has a v-w path meeting C only at v, w.
    let mut checked = 0;
    let mut witness = None;
    'vi: for c in long_cycles.iter().filter(|c| in_core(c)) {
        for &e in c.edges.iter().filter(|&&e| b.edge(e).colour == gb) {
            let (v, w) = (b.edge(e).u, b.edge(e).v);
            let others: Vec<usize> = c.verts.iter().copied().filter(|&x| x != v && x != w).collect();
            checked += 1;
            if !reach.connects(&others, &c.edges, &[v], &[w]) {
                witness = Some(format!("b edge {e}"));
                break 'vi;
            }
        }
    }
    items.push(NosItem { name: "b_edge_detours", passed: witness.is_none(), checked, witness });

    // Relator cycles sharing an edge uv are joined in G - {u, v}.
    let mut checked = 0;
    let mut witness = None;
    let core_cycles: Vec<&Cycle> = all_cycles.iter().filter(|c| in_core(c)).collect();
    'v: for (i, c) in core_cycles.iter().enumerate() {
        for d in &core_cycles[i + 1..] {
            for &e in c.edges.iter().filter(|e| d.edges.contains(e)) {
                let (u, v) = (b.edge(e).u, b.edge(e).v);
                let from: Vec<usize> = c.verts.iter().copied().filter(|&x| x != u && x != v).collect();
                let to: Vec<usize> = d.verts.iter().copied().filter(|&x| x != u && x != v).collect();
                checked += 1;
                if !reach.connects(&[u, v], &[], &from, &to) {
                    witness = Some(format!("shared edge {e}"));
                    break 'v;
                }
            }
        }
    }
    items.push(NosItem { name: "shared_edge_connections", passed: witness.is_none(), checked, witness });

    Ok(NosReport { params, items })
}
