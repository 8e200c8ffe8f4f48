//! End-to-end acceptance: each criterion prints one PASS/FAIL line on stderr.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use planar_cayley::analyze::{
    colour_pair_orders, cycle_space_span_check_with_margin, find_hinges, independent_paths, shortest_separating_path,
    two_basis_check, AnalyzeError, Order,
};
use planar_cayley::classify::{
    blind_radius, catalogue_matches, classify_ball, classify_presentation, finite_case_report,
};
use planar_cayley::construct::{
    certify_ball, construct, cross_check_with_cap, CayleyBall, ConstructError, GraphType, TypeParams, DEFAULT_CAP,
};
use planar_cayley::embed::{
    cbc_scaffold, check_consistency, embed, face_relator_correspondence, is_planar_path_addition, k33, planarity_check,
    small_isomorphic, suppress_degree_two, two_coloured_face_check, type_v_face_profile, ColourSpin, UGraph,
};
use planar_cayley::Presentation;
use planar_cayley_cli::verify::smoke_cells;
use rayon::prelude::*;

use GraphType::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn grid() -> Vec<TypeParams> {
    smoke_cells()
}

fn ball(t: &TypeParams, r: usize) -> Result<CayleyBall, String> {
    construct(t, r).map_err(|e| format!("{t}: {e}"))
}

fn colour(b: &CayleyBall, name: &str) -> usize {
    b.presentation().alphabet().find(name).expect("family colour")
}

/// Components left after deleting `removed`, by breadth-first search over neighbour slots.
fn components_without(b: &CayleyBall, removed: &[usize]) -> usize {
    let mut seen = vec![false; b.len()];
    for &v in removed {
        seen[v] = true;
    }
    let mut count = 0;
    for s in 0..b.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for c in 0..b.columns().len() {
                if let Some(w) = b.neighbour(v, c) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    count
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for t in grid() {
        let b = ball(&t, 6)?;
        let c = certify_ball(&b, &t.presentation()).map_err(|v| format!("{t}: {}", v[0]))?;
        ensure!(b.len() == c.vertices, "{t}: certificate vertex count");
        if t.kind.is_finite() {
            ensure!(b.is_complete(), "{t}: finite type not built whole");
        } else {
            ensure!(c.interior > 0 && !b.is_complete(), "{t}: no interior");
        }
        match cross_check_with_cap(&t, 6, DEFAULT_CAP) {
            Ok(ok) => ensure!(ok, "{t}: construction differs from the enumeration ball"),
            Err(ConstructError::OracleInconclusive(_)) => {
                let cap = 4 * DEFAULT_CAP;
                let ok = cross_check_with_cap(&t, 6, cap).map_err(|e| format!("{t}: {e}"))?;
                ensure!(ok, "{t}: construction differs from the enumeration ball at cap {cap}");
                notes.push(format!("{t} needed cap {cap}"));
            }
            Err(e) => return Err(format!("{t}: {e}")),
        }
    }
    Ok(format!("18 cells certified and cross-checked at radius 6; {}", notes.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut detail = Vec::new();
    for t in grid() {
        if t.kind == IX {
            // The whole graph is tiny: the library must agree with the exhaustive pair search.
            let b = ball(&t, 6)?;
            let separating: Vec<(usize, usize)> = (0..b.len())
                .flat_map(|x| (x + 1..b.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| components_without(&b, &[x, y]) >= 2)
                .collect();
            match shortest_separating_path(&b) {
                Ok(s) => {
                    ensure!(separating.contains(&(s.x.min(s.y), s.x.max(s.y))), "{t}: pair not separating");
                    ensure!(s.z_squared_trivial == Some(true), "{t}: z^2 does not close");
                    detail.push(format!("{t}: {} of {} pairs separate", separating.len(), b.len() * (b.len() - 1) / 2));
                }
                Err(AnalyzeError::NoSeparatorFound { .. }) => {
                    ensure!(separating.is_empty(), "{t}: missed {} separating pairs", separating.len());
                    detail.push(format!("{t}: {} vertices, no separating pair", b.len()));
                }
                Err(e) => return Err(format!("{t}: {e}")),
            }
            continue;
        }
        let mut r = 6;
        let (b, s) = loop {
            let b = ball(&t, r)?;
            match shortest_separating_path(&b) {
                Ok(s) => break (b, s),
                Err(AnalyzeError::NoSeparatorFound { .. } | AnalyzeError::BallTooSmall(_)) if r < 16 => r += 1,
                Err(e) => return Err(format!("{t} at radius {r}: {e}")),
            }
        };
        // z^2 = 1, traced independently of the certificate.
        let end = b.trace(s.x, &s.z).and_then(|m| b.trace(m, &s.z));
        ensure!(end == Some(s.x), "{t}: z^2 does not close at radius {r}");
        ensure!(s.z_squared_trivial == Some(true), "{t}: certificate disagrees on z^2");
        ensure!(components_without(&b, &[s.x, s.y]) >= 2, "{t}: pair does not separate");
        let colours = s.colours().len();
        match t.kind {
            I | II | III => ensure!(colours == 1, "{t}: P uses {colours} colours"),
            IV | V | VII => ensure!(colours == 2, "{t}: P uses {colours} colours"),
            _ => {}
        }
        let k = independent_paths(&b, s.x, s.y).map_err(|e| e.to_string())?;
        ensure!(k >= 3, "{t}: only {k} independent paths");
        if r > 6 {
            detail.push(format!("{t}: r={r}"));
        }
    }
    Ok(format!("separators with z^2 = 1 on all cells ({})", detail.join("; ")))
}

/// Involution pair orders implied by the relators.
fn expected_pair_orders(t: &TypeParams) -> Vec<(&'static str, &'static str, Option<usize>)> {
    let n = t.n.map(|v| v as usize);
    let m = t.m.map(|v| v as usize);
    match t.kind {
        IV => vec![("b", "c", Some(2)), ("b", "d", None), ("c", "d", None)],
        V => vec![("b", "c", n.map(|n| 2 * n)), ("b", "d", None), ("c", "d", None)],
        VI => vec![("b", "c", n), ("b", "d", m), ("c", "d", None)],
        VII | VIII => vec![("b", "c", None), ("b", "d", None), ("c", "d", None)],
        IX => vec![("b", "c", n), ("b", "d", n), ("c", "d", Some(1))],
        I | II | III => Vec::new(),
    }
}

fn criterion_3() -> Outcome {
    let mut hinged = BTreeSet::new();
    for t in grid() {
        let b = ball(&t, 6)?;
        if t.kind != IX {
            // Grow the ball until its core is non-empty.
            let mut r = 6;
            let hinges = loop {
                match find_hinges(&ball(&t, r)?) {
                    Err(AnalyzeError::BallTooSmall(_)) if r < 16 => r += 1,
                    h => break h.map_err(|e| format!("{t}: {e}"))?,
                }
            };
            let b = ball(&t, r)?;
            let want = matches!(t.kind, I | II | VI | VIII);
            if want {
                ensure!(!hinges.is_empty(), "{t}: no hinge found");
                let bc = colour(&b, "b");
                ensure!(hinges.iter().all(|&e| b.edge(e).colour == bc), "{t}: hinge off the b edges");
                hinged.insert(format!("{:?}", t.kind));
            } else if matches!(t.kind, IV | V | VII) {
                ensure!(hinges.is_empty(), "{t}: unexpected hinge");
            }
        }
        let bound = if b.is_complete() { 2 * b.len() } else { 2 * b.radius() };
        let orders = colour_pair_orders(&b, bound);
        for (x, y, want) in expected_pair_orders(&t) {
            let (i, j) = (colour(&b, x), colour(&b, y));
            let got = orders.iter().find(|o| o.pair == (i.min(j), i.max(j))).map(|o| o.order);
            let ok = match (want, got) {
                (Some(k), Some(Order::Finite(g))) => k == g,
                (None, Some(Order::Infinite { .. })) => true,
                _ => false,
            };
            ensure!(ok, "{t}: order of {x}{y} is {got:?}, expected {want:?}");
        }
    }
    Ok(format!("hinges exactly on b edges of {hinged:?}; pair orders match exponents"))
}

/// Preserving colours quoted from the tables.
fn quoted_preserving(kind: GraphType) -> Option<&'static [&'static str]> {
    Some(match kind {
        I => &["a", "b"],
        II => &["a"],
        III => &["b"],
        IV => &["b", "c", "d"],
        V => &["c"],
        VI => &[],
        VII => &["b", "c", "d"],
        VIII => &["b"],
        IX => return None,
    })
}

fn criterion_4() -> Outcome {
    let mut edges = 0;
    for t in grid() {
        let b = ball(&t, 6)?;
        let e = embed(&b, &t).map_err(|e| format!("{t}: {e}"))?;
        let c = check_consistency(&e);
        ensure!(c.consistent, "{t}: inconsistent embedding");
        let Some(preserving) = quoted_preserving(t.kind) else { continue };
        let preserving: BTreeSet<usize> = preserving.iter().map(|n| colour(&b, n)).collect();
        for (id, edge) in b.edges().iter().enumerate() {
            if !(b.is_interior(edge.u) && b.is_interior(edge.v)) {
                continue;
            }
            let same = e.spin(edge.u) == e.spin(edge.v);
            ensure!(same == preserving.contains(&edge.colour), "{t}: edge {id} breaks the spin table");
            edges += 1;
        }
        for (g, s) in c.colour_spin.iter().enumerate() {
            let want = if preserving.contains(&g) { ColourSpin::Preserving } else { ColourSpin::Reversing };
            ensure!(*s == Some(want), "{t}: colour {g} observed {s:?}");
        }
    }
    Ok(format!("{edges} interior edges agree with the quoted tables; all embeddings consistent"))
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    for t in grid() {
        let r = (t.presentation().max_relator_len().div_ceil(2) + 2).max(6);
        let b = ball(&t, r)?;
        let e = embed(&b, &t).map_err(|e| format!("{t}: {e}"))?;
        match t.kind {
            I | II | VI | VIII => {
                let f = face_relator_correspondence(&e);
                ensure!(f.exact(), "{t}: {} extra, {} missing faces", f.extra_faces.len(), f.missing_faces.len());
                ensure!(f.deep_relator_circuits > 0, "{t}: no deep relator circuit");
            }
            IX => {
                // The whole graph also bounds one (bd)^n face that is not a relator.
                let f = face_relator_correspondence(&e);
                ensure!(f.missing_faces.is_empty() && f.extra_faces.len() == 1, "{t}: face correspondence");
            }
            V => {
                let p = type_v_face_profile(&e).map_err(|e| e.to_string())?;
                ensure!(p.checked > 0 && p.failure.is_none(), "{t}: face profile fails at {:?}", p.failure);
                detail.push(format!("{t}: {} vertices profiled", p.checked));
            }
            _ => {}
        }
        if matches!(t.kind, IV | V) {
            ensure!(two_coloured_face_check(&e).map_err(|e| e.to_string())?, "{t}: two-coloured face");
        }
    }
    Ok(format!("face correspondence for VAP-free types; {}; no two-coloured faces in IV, V", detail.join(", ")))
}

fn criterion_6() -> Outcome {
    for t in grid() {
        let b = ball(&t, 6)?;
        let g = UGraph::from_ball(&b);
        ensure!(planarity_check(&g).is_planar(), "{t}: left-right test says non-planar");
        ensure!(is_planar_path_addition(&g), "{t}: path-addition test says non-planar");
    }
    let s = suppress_degree_two(&cbc_scaffold(3));
    ensure!(s.graph.len() == 6 && s.graph.edges().len() == 9, "scaffold has wrong size");
    ensure!(small_isomorphic(&s.graph, &k33()), "scaffold is not K3,3");
    Ok("all grid balls planar; scaffold reduces to K3,3".into())
}

fn criterion_7() -> Outcome {
    let bcd = Presentation::parse("<b,c,d | b^2, c^2, d^2, (bc)^2, bcd>").unwrap();
    let f = finite_case_report(&bcd, 1000).map_err(|e| e.to_string())?;
    ensure!(f.order == 4 && !f.two_separator, "bcd group: {f:?}");
    let ix = TypeParams::new(IX, Some(2), None).unwrap().presentation();
    let g = finite_case_report(&ix, 1000).map_err(|e| e.to_string())?;
    ensure!(g.order == 4 && g.parallel_edges && g.two_separator, "IX n=2: {g:?}");
    Ok("order 4 without separator; IX n=2 order 4 with parallel edges and a 2-separator".into())
}

/// Largest ball the non-vacuous cycle-space search will build.
const CYCLE_BUDGET: usize = 200_000;

fn criterion_8() -> Outcome {
    let mut vacuous = Vec::new();
    let mut deeper = Vec::new();
    for t in grid() {
        let p = t.presentation();
        let l = p.max_relator_len();
        // Literal reading: radius 6, margin the longest relator.
        match cycle_space_span_check_with_margin(&ball(&t, 6)?, &p, l) {
            Ok(rep) => {
                ensure!(rep.spanned, "{t}: radius 6 unspanned");
                if rep.dimension == 0 {
                    vacuous.push(t.to_string());
                }
            }
            Err(AnalyzeError::BallTooSmall(_)) => vacuous.push(t.to_string()),
            Err(e) => return Err(format!("{t}: {e}")),
        }
        if t.kind.is_finite() {
            continue;
        }
        // Non-vacuous: least radius whose target holds a cycle, core margin as fallback.
        let mut found = None;
        'margins: for margin in [l, l.div_ceil(2)] {
            for r in 6.. {
                let b = ball(&t, r)?;
                if b.len() > CYCLE_BUDGET {
                    break;
                }
                match cycle_space_span_check_with_margin(&b, &p, margin) {
                    Ok(rep) if rep.dimension > 0 => {
                        ensure!(rep.spanned, "{t}: radius {r} margin {margin} unspanned");
                        found = Some((r, margin, rep.dimension));
                        break 'margins;
                    }
                    Ok(_) | Err(AnalyzeError::BallTooSmall(_)) => {}
                    Err(e) => return Err(format!("{t}: {e}")),
                }
            }
        }
        let (r, margin, dim) = found.ok_or(format!("{t}: no cycle within {CYCLE_BUDGET} vertices"))?;
        deeper.push(format!("{t}@r{r}/m{margin}:{dim}"));
    }
    for t in grid().into_iter().filter(|t| matches!(t.kind, I | IV)) {
        let b = ball(&t, 6)?;
        let rep = two_basis_check(&b, &t.presentation()).map_err(|e| e.to_string())?;
        ensure!(rep.counted_edges > 0, "{t}: no core edges");
        if t.kind == I {
            let want: BTreeMap<String, (usize, usize)> = [("a".to_string(), (1, 1)), ("b".to_string(), (2, 2))].into();
            ensure!(rep.per_colour == want, "{t}: multiplicities {:?}", rep.per_colour);
        } else {
            ensure!(rep.max_multiplicity >= 3, "{t}: max multiplicity {}", rep.max_multiplicity);
        }
    }
    Ok(format!(
        "spanned everywhere; vacuous at radius 6: {}; non-vacuous: {}; two-basis multiplicities hold",
        vacuous.join(" "),
        deeper.join(" ")
    ))
}

fn criterion_9() -> Outcome {
    let cells = grid();
    for t in &cells {
        let p = t.presentation();
        let c = classify_presentation(&p).map_err(|e| format!("{t}: {e}"))?;
        ensure!(c.params() == Some(*t), "{t}: presentation classified as {:?}", c.params());
        let kinds: BTreeSet<GraphType> = catalogue_matches(&p).iter().map(|(m, _)| m.kind).collect();
        ensure!(kinds.len() == 1, "{t}: matches {kinds:?}");
        let br = blind_radius(&p);
        let blind = classify_ball(&ball(t, br)?).map_err(|e| format!("{t}: {e}"))?;
        ensure!(blind.params() == Some(*t), "{t}: ball classified as {:?} at radius {br}", blind.params());
    }
    let forms: BTreeSet<String> = cells.iter().map(|t| t.presentation().canonical_form()).collect();
    ensure!(forms.len() == cells.len(), "canonical forms collide");
    Ok("presentation and blind classification recover all 18 cells; canonical forms pairwise distinct".into())
}

fn files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let run = || -> Result<BTreeMap<String, Vec<u8>>, String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let status = Command::new(env!("CARGO_BIN_EXE_pcayley"))
            .args(["verify", "--grid", "smoke", "-o"])
            .arg(dir.path())
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure!(status.success(), "verify --grid smoke exited with {status}");
        Ok(files(dir.path()))
    };
    let (a, b) = (run()?, run()?);
    ensure!(a.keys().eq(b.keys()), "different file sets");
    for (name, bytes) in &a {
        ensure!(bytes == &b[name], "{name} differs between runs");
    }
    ensure!(a.contains_key("smoke.json") && a.keys().filter(|k| k.ends_with(".svg")).count() == 18, "missing outputs");
    Ok(format!("{} files byte-identical across two runs", a.len()))
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let results: Vec<Outcome> = criteria
        .par_iter()
        .map(|f| catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into())))
        .collect();
    // Written straight to stderr so the lines show without --nocapture.
    let mut err = std::io::stderr();
    for (i, r) in results.iter().enumerate() {
        let line = match r {
            Ok(d) => format!("acceptance criterion {:>2}: PASS — {d}", i + 1),
            Err(d) => format!("acceptance criterion {:>2}: FAIL — {d}", i + 1),
        };
        writeln!(err, "{line}").unwrap();
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| r.is_err()).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
