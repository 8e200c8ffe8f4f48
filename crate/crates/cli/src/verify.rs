//! Machine-readable verification: the smoke grid and single named checks.

use clap::ValueEnum;
use planar_cayley::analyze::{
    colour_pair_orders, cycle_space_span_check, nos_properties_check, shortest_separating_path, two_basis_check, Order,
};
use planar_cayley::classify::{blind_radius, classify_ball, classify_presentation};
use planar_cayley::construct::{
    certify_ball, construct, cross_check_with_cap, CayleyBall, ConstructError, GraphType, TypeParams,
};
use planar_cayley::embed::{
    cbc_scaffold, check_consistency, embed, face_relator_correspondence, is_planar_path_addition, k33, planarity_check,
    small_isomorphic, spin_table, suppress_degree_two, two_coloured_face_check, type_v_face_profile, SpinPattern,
    UGraph,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::render::{svg, Layout, RenderSpec};
use crate::{embedding_for, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// Two smallest parameter choices of every type.
    Smoke,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    K33Scaffold,
    SeparatorInvolution,
    Planarity,
    SpinConsistency,
    CycleSpace,
    TwoBasis,
    NosProperties,
    FaceCorrespondence,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::K33Scaffold => "k33-scaffold",
            Check::SeparatorInvolution => "separator-involution",
            Check::Planarity => "planarity",
            Check::SpinConsistency => "spin-consistency",
            Check::CycleSpace => "cycle-space",
            Check::TwoBasis => "two-basis",
            Check::NosProperties => "nos-properties",
            Check::FaceCorrespondence => "face-correspondence",
        }
    }

    pub fn needs_ball(self) -> bool {
        self != Check::K33Scaffold
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> CheckResult {
        CheckResult { name: name.into(), pass, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<(bool, String), String>) -> CheckResult {
        match r {
            Ok((pass, detail)) => CheckResult::new(name, pass, detail),
            Err(e) => CheckResult::new(name, false, e),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub cell: String,
    pub params: TypeParams,
    pub radius: usize,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub svg: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub grid: &'static str,
    pub pass: bool,
    pub cells: Vec<CellReport>,
}

impl GridReport {
    pub fn first_failure(&self) -> Option<(String, &CheckResult)> {
        self.cells.iter().find_map(|c| c.checks.iter().find(|r| !r.pass).map(|r| (c.cell.clone(), r)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

/// The construction grid: the two smallest parameter choices of every type.
pub fn smoke_cells() -> Vec<TypeParams> {
    use GraphType::*;
    let tp = |k, n, m| TypeParams::new(k, n, m).expect("grid parameters are valid");
    vec![
        tp(I, Some(2), None),
        tp(I, Some(3), None),
        tp(II, Some(1), None),
        tp(II, Some(2), None),
        tp(III, Some(2), None),
        tp(III, Some(3), None),
        tp(IV, None, Some(2)),
        tp(IV, None, Some(3)),
        tp(V, Some(2), Some(2)),
        tp(V, Some(2), Some(3)),
        tp(VI, Some(2), Some(2)),
        tp(VI, Some(2), Some(3)),
        tp(VII, Some(2), Some(2)),
        tp(VII, Some(3), Some(2)),
        tp(VIII, None, Some(1)),
        tp(VIII, None, Some(2)),
        tp(IX, Some(1), None),
        tp(IX, Some(2), None),
    ]
}

/// File-name form of a cell, e.g. `V_n2_m3`.
pub fn cell_slug(t: &TypeParams) -> String {
    let mut s = t.kind.to_string();
    if let Some(n) = t.n {
        s += &format!("_n{n}");
    }
    if let Some(m) = t.m {
        s += &format!("_m{m}");
    }
    s
}

/// Enumeration cross-check, escalating the cap fourfold once if the oracle cannot decide.
pub fn cross_check_escalating(t: &TypeParams, radius: usize, cap: usize) -> Result<(bool, usize), ConstructError> {
    match cross_check_with_cap(t, radius, cap) {
        Ok(ok) => Ok((ok, cap)),
        Err(ConstructError::OracleInconclusive(_)) => {
            let big = cap.saturating_mul(4);
            cross_check_with_cap(t, radius, big).map(|ok| (ok, big))
        }
        Err(e) => Err(e),
    }
}

pub fn run_cell(t: TypeParams, radius: usize, cap: usize, render: bool) -> CellReport {
    let mut checks = Vec::new();
    let b = match construct(&t, radius) {
        Ok(b) => b,
        Err(e) => {
            checks.push(CheckResult::new("construct", false, e.to_string()));
            return CellReport { cell: t.to_string(), params: t, radius, checks, svg: None };
        }
    };
    let p = t.presentation();
    checks.push(CheckResult::from_result(
        "construct",
        certify_ball(&b, &p)
            .map(|c| (true, format!("{} vertices, {} edges, {} interior", c.vertices, c.edges, c.interior)))
            .map_err(|v| v[0].to_string()),
    ));
    checks.push(CheckResult::from_result(
        "cross-check",
        cross_check_escalating(&t, radius, cap)
            .map(|(ok, used)| (ok, format!("rooted colour isomorphic to the enumeration ball (cap {used})")))
            .map_err(|e| e.to_string()),
    ));
    checks.push(planarity(&b));
    let embedding = embed(&b, &t);
    checks.push(CheckResult::from_result(
        "spin-consistency",
        embedding.as_ref().map_err(|e| e.to_string()).map(|e| {
            let c = check_consistency(e);
            let table_ok = match spin_table(&t) {
                SpinPattern::Fixed(v) => v.iter().all(|(name, s)| {
                    c.colour_spin[b.presentation().alphabet().find(name).expect("family colour")] == Some(*s)
                }),
                SpinPattern::AnyPlanar => true,
            };
            (c.consistent && table_ok, format!("consistent={}, table pattern realised={table_ok}", c.consistent))
        }),
    ));
    if let Ok(e) = &embedding {
        if !matches!(t.kind, GraphType::III | GraphType::IV | GraphType::V | GraphType::VII) {
            let f = face_relator_correspondence(e);
            let ok = if t.kind == GraphType::IX {
                f.missing_faces.is_empty() && f.extra_faces.len() == 1
            } else {
                f.exact()
            };
            checks.push(CheckResult::new(
                "face-correspondence",
                ok,
                format!(
                    "{} closed faces, {} extra, {} missing",
                    f.closed_faces,
                    f.extra_faces.len(),
                    f.missing_faces.len()
                ),
            ));
        }
        if matches!(t.kind, GraphType::IV | GraphType::V) {
            checks.push(CheckResult::from_result(
                "two-coloured-faces",
                two_coloured_face_check(e)
                    .map(|ok| (ok, "no closed face uses only two colours".to_string()))
                    .map_err(|e| e.to_string()),
            ));
        }
    }
    checks.push(CheckResult::from_result(
        "cycle-space",
        cycle_space_span_check(&b, &p)
            .map(|r| (r.spanned, format!("rank {}, target dimension {}", r.rank, r.dimension)))
            .map_err(|e| e.to_string()),
    ));
    checks.push(CheckResult::from_result("colour-orders", Ok(colour_orders_match(&b, &t))));
    checks.push(CheckResult::from_result(
        "classify-presentation",
        classify_presentation(&p).map_err(|e| e.to_string()).map(|c| match c.params() {
            Some(got) => (got == t, format!("{got}")),
            None => (false, "not in catalogue".into()),
        }),
    ));
    let br = blind_radius(&p);
    checks.push(CheckResult::from_result(
        "classify-blind",
        construct(&t, br).map_err(|e| e.to_string()).and_then(|bb| classify_ball(&bb).map_err(|e| e.to_string())).map(
            |c| match c.params() {
                Some(got) => (got == t, format!("{got} at radius {br}")),
                None => (false, format!("not in catalogue at radius {br}")),
            },
        ),
    ));
    let svg = if render {
        Some(match &embedding {
            Ok(e) => svg(e, &RenderSpec::new(Layout::Auto, 3.min(radius), 0)).unwrap_or_else(|e| e.to_string()),
            Err(e) => e.to_string(),
        })
    } else {
        None
    };
    CellReport { cell: t.to_string(), params: t, radius, checks, svg }
}

/// Alternating orders of involution pairs against the relator exponents.
fn colour_orders_match(b: &CayleyBall, t: &TypeParams) -> (bool, String) {
    use GraphType::*;
    if t.kind.generator_count() == 2 {
        return (true, "two generators: no involution pairs".into());
    }
    let steps = if b.is_complete() { 2 * b.len() } else { 2 * b.radius() };
    let orders = colour_pair_orders(b, steps);
    let get = |x: &str, y: &str| {
        let a = b.presentation().alphabet();
        let (i, j) = (a.find(x).expect("colour"), a.find(y).expect("colour"));
        orders.iter().find(|o| o.pair == (i.min(j), i.max(j))).map(|o| o.order)
    };
    let n = t.n.map(|v| v as usize);
    let m = t.m.map(|v| v as usize);
    let expected: Vec<(&str, &str, Option<usize>)> = match t.kind {
        IV => vec![("b", "c", Some(2)), ("b", "d", None), ("c", "d", None)],
        V => vec![("b", "c", n.map(|n| 2 * n)), ("b", "d", None), ("c", "d", None)],
        VI => vec![("b", "c", n), ("b", "d", m), ("c", "d", None)],
        VII | VIII => vec![("b", "c", None), ("b", "d", None), ("c", "d", None)],
        IX => vec![("b", "c", n), ("b", "d", n), ("c", "d", Some(1))],
        I | II | III => Vec::new(),
    };
    let mut detail = Vec::new();
    let mut ok = true;
    for (x, y, want) in expected {
        let got = get(x, y);
        let good = match (want, got) {
            (Some(k), Some(Order::Finite(g))) => k == g,
            (None, Some(Order::Infinite { .. })) => true,
            _ => false,
        };
        ok &= good;
        detail.push(format!(
            "{x}{y}:{}",
            got.map_or("?".to_string(), |o| match o {
                Order::Finite(k) => k.to_string(),
                Order::Infinite { .. } => "inf".into(),
            })
        ));
    }
    (ok, detail.join(" "))
}

pub fn planarity(b: &CayleyBall) -> CheckResult {
    let g = UGraph::from_ball(b);
    let lr = planarity_check(&g).is_planar();
    let dmp = is_planar_path_addition(&g);
    CheckResult::new("planarity", lr && dmp, format!("left-right planar={lr}, path-addition planar={dmp}"))
}

pub fn run_grid(grid: Grid, cap: usize, render: bool) -> GridReport {
    let cells = match grid {
        Grid::Smoke => smoke_cells(),
    };
    let reports: Vec<CellReport> = cells.into_par_iter().map(|t| run_cell(t, 6, cap, render)).collect();
    GridReport { grid: "smoke", pass: reports.iter().all(|c| c.checks.iter().all(|r| r.pass)), cells: reports }
}

pub fn k33_scaffold() -> CheckResult {
    let s = suppress_degree_two(&cbc_scaffold(3));
    let ok = small_isomorphic(&s.graph, &k33());
    CheckResult::new(
        "k33-scaffold",
        ok,
        format!(
            "{} vertices and {} edges after suppression; isomorphic to K3,3: {ok}",
            s.graph.len(),
            s.graph.edges().len()
        ),
    )
}

pub fn run_check(check: Check, ball: Option<&CayleyBall>) -> Result<CheckResult, CliError> {
    let need = || ball.ok_or_else(|| CliError::InvalidParams(format!("check {} needs a ball", check.name())));
    Ok(match check {
        Check::K33Scaffold => k33_scaffold(),
        Check::SeparatorInvolution => {
            let b = need()?;
            let s = shortest_separating_path(b)?;
            let word = b.presentation().format_word(&s.z);
            match s.z_squared_trivial {
                Some(ok) => CheckResult::new(
                    check.name(),
                    ok,
                    format!(
                        "separator {{{}, {}}} with z = {word} (length {}); z^2 closes: {ok}",
                        s.x,
                        s.y,
                        s.path_len()
                    ),
                ),
                None => return Err(CliError::Inconclusive(format!("tracing z = {word} twice leaves the ball"))),
            }
        }
        Check::Planarity => planarity(need()?),
        Check::SpinConsistency => {
            let b = need()?;
            let e = embedding_for(b)?;
            let c = check_consistency(&e);
            CheckResult::new(check.name(), c.consistent, format!("{} translations checked", c.translations_checked))
        }
        Check::CycleSpace => {
            let b = need()?;
            let r = cycle_space_span_check(b, b.presentation())?;
            CheckResult::new(check.name(), r.spanned, format!("rank {}, target dimension {}", r.rank, r.dimension))
        }
        Check::TwoBasis => {
            let b = need()?;
            let r = two_basis_check(b, b.presentation())?;
            let per: Vec<String> = r.per_colour.iter().map(|(c, (lo, hi))| format!("{c}:{lo}..{hi}")).collect();
            CheckResult::new(check.name(), r.ok, format!("max multiplicity {} ({})", r.max_multiplicity, per.join(" ")))
        }
        Check::NosProperties => {
            let b = need()?;
            let r = nos_properties_check(b)?;
            let failed: Vec<&str> = r.items.iter().filter(|i| !i.passed).map(|i| i.name).collect();
            let detail = if failed.is_empty() {
                format!("{} items hold", r.items.len())
            } else {
                format!("failed: {}", failed.join(", "))
            };
            let mut res = CheckResult::new(check.name(), r.conforming(), detail);
            if r.params.kind == GraphType::V {
                if let Ok(e) = embedding_for(b) {
                    if let Ok(p) = type_v_face_profile(&e) {
                        res.pass &= p.failure.is_none();
                        res.detail += &format!("; face profile at {} vertices", p.checked);
                    }
                }
            }
            res
        }
        Check::FaceCorrespondence => {
            let b = need()?;
            let e = embedding_for(b)?;
            let f = face_relator_correspondence(&e);
            CheckResult::new(
                check.name(),
                f.exact(),
                format!(
                    "{} closed faces, {} extra, {} missing of {} deep relator circuits",
                    f.closed_faces,
                    f.extra_faces.len(),
                    f.missing_faces.len(),
                    f.deep_relator_circuits
                ),
            )
        }
    })
}
