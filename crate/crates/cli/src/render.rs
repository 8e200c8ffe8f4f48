//! Deterministic drawings of ball neighbourhoods: radial, tree and concentric layouts
//! that follow the embedding's rotation system, written out as SVG or DOT.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::TAU;
use std::fmt::Write as _;

use clap::ValueEnum;
use planar_cayley::construct::{CayleyBall, GraphType};
use planar_cayley::embed::RotationEmbedding;

use crate::CliError;

/// Largest number of drawn vertices that still fits the canvas legibly.
pub const MAX_DRAWN: usize = 20_000;

const PALETTE: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    Radial,
    Tree,
    Concentric,
    /// Concentric for types III and IV, radial otherwise.
    Auto,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub layout: Layout,
    pub depth: usize,
    /// One colour per generator, in generator order.
    pub palette: Vec<String>,
    pub width: f64,
    pub height: f64,
    /// Rotates radial and concentric drawings by `seed mod 360` degrees.
    pub seed: u64,
}

impl RenderSpec {
    pub fn new(layout: Layout, depth: usize, seed: u64) -> RenderSpec {
        RenderSpec {
            layout,
            depth,
            palette: PALETTE.iter().map(|s| s.to_string()).collect(),
            width: 800.0,
            height: 800.0,
            seed,
        }
    }

    fn offset(&self) -> f64 {
        (self.seed % 360) as f64 * TAU / 360.0
    }
}

/// Spanning tree of the drawn vertices, children in rotation order after the parent edge.
struct PlaneTree {
    children: Vec<Vec<usize>>,
    drawn: Vec<bool>,
    preorder: Vec<usize>,
}

fn plane_tree(e: &RotationEmbedding, depth: usize) -> PlaneTree {
    let b = e.ball();
    let drawn: Vec<bool> = (0..b.len()).map(|v| b.depth(v) <= depth).collect();
    let mut parent_col: Vec<Option<usize>> = vec![None; b.len()];
    let mut seen = vec![false; b.len()];
    let mut children = vec![Vec::new(); b.len()];
    let root = b.center();
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let rot = e.rotation(v);
        let start = parent_col[v].and_then(|c| rot.iter().position(|&x| x == c)).map_or(0, |i| i + 1);
        for k in 0..rot.len() {
            let c = rot[(start + k) % rot.len()];
            let Some(w) = b.neighbour(v, c) else { continue };
            if drawn[w] && !seen[w] {
                seen[w] = true;
                parent_col[w] = Some(b.inverse_column(c));
                children[v].push(w);
                queue.push_back(w);
            }
        }
    }
    let mut preorder = Vec::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        preorder.push(v);
        stack.extend(children[v].iter().rev());
    }
    PlaneTree { children, drawn, preorder }
}

fn leaf_counts(t: &PlaneTree) -> Vec<usize> {
    let mut leaves = vec![1; t.children.len()];
    for &v in t.preorder.iter().rev() {
        if !t.children[v].is_empty() {
            leaves[v] = t.children[v].iter().map(|&c| leaves[c]).sum();
        }
    }
    leaves
}

fn resolve(layout: Layout, kind: Option<GraphType>) -> Layout {
    match (layout, kind) {
        (Layout::Auto, Some(GraphType::III | GraphType::IV)) => Layout::Concentric,
        (Layout::Auto, _) => Layout::Radial,
        (l, _) => l,
    }
}

/// Vertex positions for the drawn part of the ball.
pub fn layout(e: &RotationEmbedding, spec: &RenderSpec) -> Result<Vec<Option<(f64, f64)>>, CliError> {
    let b = e.ball();
    if spec.depth > b.radius() && !b.is_complete() {
        return Err(CliError::Render(format!("depth {} exceeds the ball radius {}", spec.depth, b.radius())));
    }
    let t = plane_tree(e, spec.depth);
    let count = t.preorder.len();
    if count > MAX_DRAWN {
        return Err(CliError::Render(format!("{count} vertices at depth {} overflow the canvas", spec.depth)));
    }
    let max_depth = t.preorder.iter().map(|&v| b.depth(v)).max().unwrap_or(0).max(1) as f64;
    let (cx, cy) = (spec.width / 2.0, spec.height / 2.0);
    let ring = (spec.width.min(spec.height) / 2.0 - 40.0) / max_depth;
    let polar = |d: usize, angle: f64| {
        let r = d as f64 * ring;
        (cx + r * angle.cos(), cy + r * angle.sin())
    };
    let mut pos = vec![None; b.len()];
    match resolve(spec.layout, e.kind()) {
        Layout::Radial | Layout::Auto => {
            let leaves = leaf_counts(&t);
            let mut sector = vec![(0.0, TAU); b.len()];
            for &v in &t.preorder {
                let (a0, a1) = sector[v];
                pos[v] = Some(polar(b.depth(v), spec.offset() + (a0 + a1) / 2.0));
                let mut a = a0;
                for &c in &t.children[v] {
                    let span = (a1 - a0) * leaves[c] as f64 / leaves[v] as f64;
                    sector[c] = (a, a + span);
                    a += span;
                }
            }
        }
        Layout::Concentric if nested_colours(e).is_some() => {
            nested(e, spec, &t, &mut pos);
        }
        Layout::Concentric => {
            let mut rings: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &v in &t.preorder {
                rings.entry(b.depth(v)).or_default().push(v);
            }
            for (d, vs) in rings {
                for (i, &v) in vs.iter().enumerate() {
                    let angle = spec.offset() + TAU * (i as f64 + 0.5) / vs.len() as f64;
                    pos[v] = Some(if d == 0 { (cx, cy) } else { polar(d, angle) });
                }
            }
        }
        Layout::Tree => {
            let leaves = leaf_counts(&t);
            let width = spec.width - 80.0;
            let layer = (spec.height - 80.0) / max_depth;
            let mut span = vec![(0.0, 1.0); b.len()];
            for &v in &t.preorder {
                let (x0, x1) = span[v];
                pos[v] = Some((40.0 + width * (x0 + x1) / 2.0, 40.0 + layer * b.depth(v) as f64));
                let mut x = x0;
                for &c in &t.children[v] {
                    let w = (x1 - x0) * leaves[c] as f64 / leaves[v] as f64;
                    span[c] = (x, x + w);
                    x += w;
                }
            }
        }
    }
    debug_assert!(t.drawn.iter().zip(&pos).all(|(&d, p)| !d || p.is_some()));
    Ok(pos)
}

/// Colours of the short cycles that nest inside one another: the `a`-squares of type
/// III and the `bc`-squares of type IV.
fn nested_colours(e: &RotationEmbedding) -> Option<Vec<usize>> {
    let names: &[&str] = match e.kind()? {
        GraphType::III => &["a"],
        GraphType::IV => &["b", "c"],
        _ => return None,
    };
    let alphabet = e.ball().presentation().alphabet();
    names.iter().map(|n| alphabet.find(n)).collect()
}

/// The short cycle through `v`, walked from `v`; `None` if it leaves the ball.
fn short_cycle(b: &CayleyBall, v: usize, cols: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    let mut x = v;
    for j in 0..64 {
        let col = cols[j % cols.len()];
        out.push((x, col));
        x = b.neighbour(x, col)?;
        if x == v && (j + 1) % cols.len() == 0 {
            return Some(out);
        }
    }
    None
}

/// Each short cycle is a regular polygon. A connecting edge leaves its cycle on the
/// side the rotation at its endpoint dictates, and the cycle it reaches is drawn smaller,
/// inside or outside accordingly, with its entry vertex facing back.
fn nested(e: &RotationEmbedding, spec: &RenderSpec, t: &PlaneTree, pos: &mut [Option<(f64, f64)>]) {
    let b = e.ball();
    let colours = nested_colours(e).expect("nested type");
    let col_of = |c: usize| b.column_of(planar_cayley::presentation::Letter::pos(c));
    let cycle_cols: Vec<usize> = colours.iter().map(|&c| col_of(c)).collect();
    let is_cycle_col = |c: usize| cycle_cols.contains(&c) || cycle_cols.iter().any(|&k| b.inverse_column(k) == c);
    let seen_drawn: Vec<usize> = t.preorder.clone();
    let mut placed = vec![false; b.len()];
    // (entry vertex, centre, radius, angle of the entry vertex, orientation)
    let scale = spec.width.min(spec.height) / 2.0 - 20.0;
    let root_r = scale / 2.5;
    let mut queue =
        VecDeque::from([(b.center(), (spec.width / 2.0, spec.height / 2.0), root_r, spec.offset(), None::<f64>)]);
    let ccw = |v: usize, first: usize, second: usize, third: usize| {
        let rot = e.rotation(v);
        let i = rot.iter().position(|&c| c == first);
        i.is_some_and(|i| rot[(i + 1) % rot.len()] == second && rot[(i + 2) % rot.len()] == third)
    };
    while let Some((w, (cx, cy), r, angle, orient)) = queue.pop_front() {
        if placed[w] {
            continue;
        }
        let Some(cycle) = short_cycle(b, w, &cycle_cols) else {
            continue;
        };
        if cycle.iter().any(|&(x, _)| placed[x]) {
            continue;
        }
        let k = cycle.len();
        let link = |x: usize| (0..b.columns().len()).find(|&c| !is_cycle_col(c) && b.slot(x, c).is_some());
        let prev_col = |j: usize| b.inverse_column(cycle[(j + k - 1) % k].1);
        // Orientation making the drawn order at the entry vertex match its rotation; the
        // entry edge always points out of this polygon.
        let o = orient.unwrap_or_else(|| {
            let ok = link(w).is_some_and(|l| ccw(w, l, cycle[0].1, prev_col(0)));
            if ok {
                1.0
            } else {
                -1.0
            }
        });
        let step = TAU / k as f64;
        for (j, &(x, _)) in cycle.iter().enumerate() {
            let a = angle + o * step * j as f64;
            placed[x] = true;
            pos[x] = Some((cx + r * a.cos(), cy + r * a.sin()));
            let Some(l) = link(x) else { continue };
            let Some(y) = b.neighbour(x, l) else { continue };
            if placed[y] || !t.drawn[y] && !t.drawn[x] {
                continue;
            }
            // (link, succ, pred) counter-clockwise with o = +1 means the link points out.
            let outward = ccw(x, l, cycle[j].1, prev_col(j)) == (o > 0.0);
            let cr = r * 0.38;
            let gap = r * 0.12;
            let (dist, entry) = if outward { (r + gap + cr, a + std::f64::consts::PI) } else { (r - gap - cr, a) };
            let centre = (cx + dist * a.cos(), cy + dist * a.sin());
            queue.push_back((y, centre, cr, entry, None));
        }
    }
    // Anything the nesting could not reach keeps a ring position.
    for v in seen_drawn {
        if pos[v].is_none() {
            let d = b.depth(v) as f64;
            let a = spec.offset() + v as f64;
            pos[v] = Some((spec.width / 2.0 + 30.0 * d * a.cos(), spec.height / 2.0 + 30.0 * d * a.sin()));
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn word_label(b: &CayleyBall, v: usize) -> String {
    let w = b.word(v);
    if w.is_empty() {
        "1".into()
    } else {
        b.presentation().format_word(w)
    }
}

/// Drawn edges grouped by unordered endpoint pair, so parallel edges can be bent apart.
fn drawn_edges(b: &CayleyBall, pos: &[Option<(f64, f64)>]) -> Vec<(usize, usize, usize)> {
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, e) in b.edges().iter().enumerate() {
        if pos[e.u].is_none() || pos[e.v].is_none() {
            continue;
        }
        let k = seen.entry((e.u.min(e.v), e.u.max(e.v))).or_insert(0);
        out.push((i, *k, 0));
        *k += 1;
    }
    for t in &mut out {
        let e = b.edge(t.0);
        t.2 = seen[&(e.u.min(e.v), e.u.max(e.v))];
    }
    out
}

pub fn svg(e: &RotationEmbedding, spec: &RenderSpec) -> Result<String, CliError> {
    let b = e.ball();
    let pos = layout(e, spec)?;
    let gens = b.presentation().generators();
    if spec.palette.len() < gens.len() {
        return Err(CliError::Render(format!(
            "palette has {} colours for {} generators",
            spec.palette.len(),
            gens.len()
        )));
    }
    let mut s = String::new();
    let (w, h) = (spec.width, spec.height);
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, "<title>{}</title>", escape(&b.presentation().to_string())).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    s.push_str("<defs>\n");
    for (g, colour) in spec.palette.iter().enumerate().take(gens.len()) {
        writeln!(
            s,
            r#"<marker id="arrow{g}" viewBox="0 0 10 10" refX="16" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="{colour}"/></marker>"#
        )
        .unwrap();
    }
    s.push_str("</defs>\n<g fill=\"none\" stroke-width=\"1.5\">\n");
    for (i, k, total) in drawn_edges(b, &pos) {
        let edge = b.edge(i);
        let (x1, y1) = pos[edge.u].expect("drawn");
        let (x2, y2) = pos[edge.v].expect("drawn");
        let colour = &spec.palette[edge.colour];
        let arrow = if edge.directed { format!(r#" marker-end="url(#arrow{})""#, edge.colour) } else { String::new() };
        let name = gens[edge.colour].name.as_str();
        if edge.u == edge.v {
            let r = 8.0 + 4.0 * k as f64;
            writeln!(
                s,
                r#"<circle class="edge-{name}" cx="{:.2}" cy="{:.2}" r="{r:.2}" stroke="{colour}"/>"#,
                x1,
                y1 - r
            )
            .unwrap();
        } else if total == 1 {
            writeln!(
                s,
                r#"<line class="edge-{name}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{colour}"{arrow}/>"#
            )
            .unwrap();
        } else {
            // Bend parallel edges symmetrically about the straight segment.
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            // The perpendicular flips with the edge's direction; undo that.
            let sign = if edge.u < edge.v { 1.0 } else { -1.0 };
            let bend = sign * 18.0 * (k as f64 - (total - 1) as f64 / 2.0);
            let (qx, qy) = (mx - dy / len * bend, my + dx / len * bend);
            writeln!(
                s,
                r#"<path class="edge-{name}" d="M{x1:.2},{y1:.2} Q{qx:.2},{qy:.2} {x2:.2},{y2:.2}" stroke="{colour}"{arrow}/>"#
            )
            .unwrap();
        }
    }
    s.push_str("</g>\n<g stroke=\"#222\" stroke-width=\"1\">\n");
    for (v, p) in pos.iter().enumerate() {
        let Some((x, y)) = p else { continue };
        let fill = if v == b.center() { "#222" } else { "white" };
        writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{fill}"><title>{}</title></circle>"#,
            escape(&word_label(b, v))
        )
        .unwrap();
    }
    s.push_str("</g>\n<g font-family=\"sans-serif\" font-size=\"14\">\n");
    for (g, sym) in gens.iter().enumerate() {
        writeln!(s, r#"<text x="12" y="{}" fill="{}">{}</text>"#, 22 + 18 * g, spec.palette[g], escape(&sym.name))
            .unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

/// DOT export: one statement per edge object; involution edges carry `dir=none`.
pub fn dot(b: &CayleyBall, depth: Option<usize>, palette: &[String]) -> String {
    let gens = b.presentation().generators();
    let keep = |v: usize| depth.is_none_or(|d| b.depth(v) <= d);
    let mut s = String::new();
    s.push_str("digraph cayley {\n");
    writeln!(s, "  label=\"{}\";", b.presentation().to_string().replace('"', "\\\"")).unwrap();
    s.push_str("  node [shape=point, width=0.08];\n");
    for v in (0..b.len()).filter(|&v| keep(v)) {
        writeln!(s, "  {v} [tooltip=\"{}\"];", word_label(b, v)).unwrap();
    }
    for e in b.edges().iter().filter(|e| keep(e.u) && keep(e.v)) {
        let colour = &palette[e.colour % palette.len()];
        let name = &gens[e.colour].name;
        let dir = if e.directed { "" } else { ", dir=none" };
        writeln!(s, "  {} -> {} [color=\"{colour}\", label=\"{name}\"{dir}];", e.u, e.v).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn default_palette() -> Vec<String> {
    PALETTE.iter().map(|s| s.to_string()).collect()
}
