//! Recognising the nine families: by matching a presentation against the catalogue, and
//! blind, from the structure of a ball alone.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::analyze::{
    analysis_margin, colour_order_json, colour_pair_orders, connectivity_diagnostics, core_cutvertices, core_mask,
    edge_ref, find_hinges, shortest_separating_path, word_order, AnalyzeError, ColourOrderJson, EdgeRef, Order,
    SeparatorJson,
};
use crate::construct::{
    ball_from_table, enumerate_cosets, enumerated_ball, CayleyBall, ConstructError, GraphType, TypeParams,
};
use crate::embed::{
    k33, planarity_check, small_isomorphic, spin_table, suppress_degree_two, vap_free, ColourSpin, KuratowskiKind,
    Planarity, SpinPattern, UGraph,
};
use crate::presentation::{Alphabet, GeneratorSymbol, Letter, Presentation, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("not a cubic presentation: {0}")]
    NotCubic(String),
    #[error("inconclusive: cannot decide {attribute}: {detail}")]
    Inconclusive { attribute: String, detail: String },
    #[error("coset enumeration overflowed: {0}")]
    Overflow(String),
    #[error("enumeration oracle inconclusive: {0}")]
    OracleInconclusive(String),
}

/// Generator renaming from the input onto the family's names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Renaming {
    /// (input name, family name), in input order.
    pub names: Vec<(String, String)>,
    /// The non-involution generator is read as the inverse of `a`.
    pub inverted: bool,
}

impl Renaming {
    pub fn is_identity(&self) -> bool {
        !self.inverted && self.names.iter().all(|(a, b)| a == b)
    }
}

impl fmt::Display for Renaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .names
            .iter()
            .map(
                |(from, to)| if self.inverted && to == "a" { format!("{from}->a^-1") } else { format!("{from}->{to}") },
            )
            .collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AOrder {
    Finite(usize),
    /// Infinite by the classification, or no relation seen within `bound` steps.
    Infinite {
        bound: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceLevel {
    BallVerified,
    TableLookup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KappaClaim {
    pub kappa: u8,
    pub evidence: EvidenceLevel,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub separator: Option<SeparatorJson>,
    pub hinge_edges: Vec<EdgeRef>,
    pub colour_orders: Vec<ColourOrderJson>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub params: TypeParams,
    pub generator_count: usize,
    /// Two-generator types only.
    pub a_order: Option<AOrder>,
    pub hinge: bool,
    /// Three-generator types only: some two colours alternate around a cycle.
    pub two_coloured_cycle: Option<bool>,
    pub vap_free: bool,
    /// `None` for type IX, where any planar pattern is allowed.
    pub colour_spin: Option<BTreeMap<String, ColourSpin>>,
    pub presentation_canonical: String,
    pub renaming: Renaming,
    pub kappa_claim: KappaClaim,
    pub evidence: Evidence,
    /// Blind classification only: whether the ball's own presentation classifies the same.
    pub presentation_agrees: Option<bool>,
}

/// Why a presentation (or ball) is outside the catalogue, and what it resembles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogueHint {
    pub nearest: Option<GraphType>,
    /// Matching pattern of the known non-planar shapes (1: `b^2, a^n, ..., n > 2`;
    /// 2: a hinge-free `(bc)^k, k >= 3`).
    pub cornp_case: Option<u8>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Catalogue(Box<ClassificationReport>),
    NotInCatalogue(CatalogueHint),
}

impl Classification {
    pub fn report(&self) -> Option<&ClassificationReport> {
        match self {
            Classification::Catalogue(r) => Some(r),
            Classification::NotInCatalogue(_) => None,
        }
    }

    pub fn params(&self) -> Option<TypeParams> {
        self.report().map(|r| r.params)
    }
}

fn family_names(count: usize) -> &'static [&'static str] {
    if count == 2 {
        &["a", "b"]
    } else {
        &["b", "c", "d"]
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Renamings of a cubic presentation's generators onto family names: the
/// non-involution becomes `a` (either way round), or the three involutions are permuted.
fn renamings(p: &Presentation) -> Vec<(Vec<usize>, bool)> {
    let gens = p.generators();
    if gens.len() == 2 {
        let a = gens.iter().position(|g| !g.involution).expect("one non-involution");
        let map = if a == 0 { vec![0, 1] } else { vec![1, 0] };
        vec![(map.clone(), false), (map, true)]
    } else {
        permutations(3).into_iter().map(|m| (m, false)).collect()
    }
}

fn rename(p: &Presentation, map: &[usize], inverted: bool) -> Presentation {
    let count = map.len();
    let names = family_names(count);
    let alphabet = Alphabet::new(
        (0..count)
            .map(|t| GeneratorSymbol { name: names[t].to_string(), involution: !(count == 2 && t == 0) })
            .collect(),
    );
    let words: Vec<Word> = p
        .relators()
        .iter()
        .map(|r| {
            Word::new(
                r.letters()
                    .iter()
                    .map(|l| {
                        let t = map[l.generator];
                        let flip = inverted && !p.alphabet().is_involution(l.generator);
                        Letter::new(t, l.inverse ^ flip)
                    })
                    .collect(),
            )
        })
        .collect();
    Presentation::from_raw(alphabet, words).expect("renaming keeps relators non-trivial")
}

fn renaming_record(p: &Presentation, map: &[usize], inverted: bool) -> Renaming {
    let names = family_names(map.len());
    Renaming {
        names: p.generators().iter().zip(map).map(|(g, &t)| (g.name.clone(), names[t].to_string())).collect(),
        inverted,
    }
}

/// Parameter values a family presentation matching `p` could have: every family
/// parameter is a relator exponent, half of one, or read off a primitive root's length.
fn candidate_parameters(p: &Presentation) -> BTreeSet<u32> {
    let mut out = BTreeSet::from([1, 2]);
    for r in p.essential_relators() {
        let (root, k) = r.primitive_root();
        let len = root.len();
        for v in [k, k / 2, len / 2, len.saturating_sub(2) / 2] {
            if (1..=64).contains(&v) {
                out.insert(v as u32);
            }
        }
    }
    out
}

/// Family presentations over the candidate parameters, keyed by canonical form.
fn catalogue(count: usize, values: &BTreeSet<u32>) -> HashMap<String, TypeParams> {
    let mut out = HashMap::new();
    for kind in GraphType::ALL.into_iter().filter(|k| k.generator_count() == count) {
        let (uses_n, uses_m) = kind.parameters();
        let ns: Vec<Option<u32>> = if uses_n { values.iter().copied().map(Some).collect() } else { vec![None] };
        let ms: Vec<Option<u32>> = if uses_m { values.iter().copied().map(Some).collect() } else { vec![None] };
        for &n in &ns {
            for &m in &ms {
                if let Ok(tp) = TypeParams::new(kind, n, m) {
                    out.entry(tp.presentation().canonical_form()).or_insert(tp);
                }
            }
        }
    }
    out
}

/// Every (family, renaming) whose presentation equals `p` up to relator reordering,
/// rotation and inversion.
pub fn catalogue_matches(p: &Presentation) -> Vec<(TypeParams, Renaming)> {
    if !p.is_cubic_eligible() {
        return Vec::new();
    }
    let table = catalogue(p.generators().len(), &candidate_parameters(p));
    let mut out: Vec<(TypeParams, Renaming)> = Vec::new();
    for (map, inverted) in renamings(p) {
        let q = rename(p, &map, inverted);
        if let Some(&tp) = table.get(&q.canonical_form()) {
            out.push((tp, renaming_record(p, &map, inverted)));
        }
    }
    out
}

/// Report carrying only what the classification tables say about a family.
pub fn table_report(tp: TypeParams, renaming: Renaming) -> ClassificationReport {
    use GraphType::*;
    let two = tp.kind.generator_count() == 2;
    let a_order = match tp.kind {
        I | II => Some(AOrder::Infinite { bound: None }),
        III => Some(AOrder::Finite(4)),
        _ => None,
    };
    let colour_spin = match spin_table(&tp) {
        SpinPattern::Fixed(v) => Some(v.into_iter().collect()),
        SpinPattern::AnyPlanar => None,
    };
    ClassificationReport {
        params: tp,
        generator_count: tp.kind.generator_count(),
        a_order,
        hinge: matches!(tp.kind, I | II | VI | VIII),
        two_coloured_cycle: (!two).then_some(matches!(tp.kind, IV | V | VI | IX)),
        vap_free: vap_free(tp.kind),
        colour_spin,
        presentation_canonical: tp.presentation().canonical_form(),
        renaming,
        kappa_claim: KappaClaim { kappa: 2, evidence: EvidenceLevel::TableLookup },
        evidence: Evidence::default(),
        presentation_agrees: None,
    }
}

fn cubic(p: &Presentation) -> Result<(), ClassifyError> {
    if p.is_cubic_eligible() {
        return Ok(());
    }
    Err(ClassifyError::NotCubic(format!(
        "{} generators with {} involutions; need 2 with one involution or 3 involutions",
        p.generators().len(),
        p.involution_count()
    )))
}

/// Type and parameters by matching the relator multiset against the catalogue, up to
/// generator renaming. Matches always share one type; type VI can match with its two
/// parameters either way round (exchanging c and d), and the identity renaming wins.
pub fn classify_presentation(p: &Presentation) -> Result<Classification, ClassifyError> {
    cubic(p)?;
    let matches = catalogue_matches(p);
    debug_assert!(matches.windows(2).all(|w| w[0].0.kind == w[1].0.kind), "several types: {matches:?}");
    match matches.into_iter().next() {
        Some((tp, renaming)) => Ok(Classification::Catalogue(Box::new(table_report(tp, renaming)))),
        None => Ok(Classification::NotInCatalogue(hint(p))),
    }
}

/// Primitive roots of the essential relators, each up to rotation and inversion.
fn shape(p: &Presentation) -> BTreeSet<Word> {
    p.essential_relators().map(|r| r.primitive_root().0.cyclic_canonical(p.alphabet())).collect()
}

fn hint(p: &Presentation) -> CatalogueHint {
    let alphabet = p.alphabet();
    let mut cornp_case = None;
    let mut reason = String::from("relators match no family of the catalogue");
    for r in p.essential_relators() {
        let (root, k) = r.primitive_root();
        let support = root.support();
        if p.generators().len() == 2 && root.len() == 1 && !alphabet.is_involution(root.letters()[0].generator) && k > 2
        {
            cornp_case = Some(1);
            reason = format!("relator {} makes the non-involution of order {k} > 2", alphabet.format_word(r));
        }
        if p.generators().len() == 3 && root.len() == 2 && support.len() == 2 && k >= 3 {
            cornp_case = Some(2);
            reason = format!("two-coloured relator {} with exponent {k} >= 3", alphabet.format_word(r));
        }
    }
    // Nearest family: most shared relator shapes under some renaming.
    let mut nearest: Option<(usize, GraphType)> = None;
    if p.is_cubic_eligible() {
        for kind in GraphType::ALL.into_iter().filter(|k| k.generator_count() == p.generators().len()) {
            let (uses_n, uses_m) = kind.parameters();
            let Ok(tp) = TypeParams::new(kind, uses_n.then_some(2), uses_m.then_some(2)) else { continue };
            let fam = shape(&tp.presentation());
            for (map, inverted) in renamings(p) {
                let score = shape(&rename(p, &map, inverted)).intersection(&fam).count();
                if score > 0 && nearest.is_none_or(|(s, _)| score > s) {
                    nearest = Some((score, kind));
                }
            }
        }
    }
    CatalogueHint { nearest: nearest.map(|(_, k)| k), cornp_case, reason }
}

/// Smallest radius (at least 6) at which blind classification of a ball of this
/// presentation is expected to be conclusive: its core must contain edges.
pub fn blind_radius(p: &Presentation) -> usize {
    (analysis_margin(p) + 1).max(6)
}

fn inconclusive(attribute: &str, detail: impl Into<String>) -> ClassifyError {
    ClassifyError::Inconclusive { attribute: attribute.into(), detail: detail.into() }
}

fn analysis(attribute: &str, e: AnalyzeError) -> ClassifyError {
    inconclusive(attribute, e.to_string())
}

/// Parameters read off a ball, the generator assignment onto family colours, and whether
/// the names were inverted.
type Found = (TypeParams, Vec<usize>, bool);

/// Type from structure alone: generator count, the order of `a`, hinges, alternating
/// orders and the order of the remaining relator word. The presentation is consulted
/// only afterwards, as a cross-check.
pub fn classify_ball(b: &CayleyBall) -> Result<Classification, ClassifyError> {
    let p = b.presentation();
    cubic(p)?;
    if !b.is_complete() && b.radius() < 3 {
        return Err(inconclusive("hinge", format!("radius {} < 3", b.radius())));
    }
    let core = core_mask(b, analysis_margin(p));
    let k = p.generators().len();
    let colours_in_core: BTreeSet<usize> =
        b.edges().iter().filter(|e| e.u != e.v && core[e.u] && core[e.v]).map(|e| e.colour).collect();
    if colours_in_core.len() < k {
        return Err(inconclusive(
            "hinge",
            format!("core of the radius-{} ball has no edge of some colour", b.radius()),
        ));
    }
    let hinges = find_hinges(b).map_err(|e| analysis("hinge", e))?;
    let hinge_colours: BTreeSet<usize> = hinges.iter().map(|&e| b.edge(e).colour).collect();
    let steps = if b.is_complete() { 2 * b.len() } else { 2 * b.radius() };
    let order = |letters: &[Letter]| {
        let w = Word::new(letters.to_vec());
        word_order(b, b.center(), &w, steps.div_ceil(w.len()).max(1))
    };
    let pos = Letter::pos;
    let not_in =
        |reason: String| Classification::NotInCatalogue(CatalogueHint { nearest: None, cornp_case: None, reason });

    let (found, a_order): (Option<Found>, Option<AOrder>) = if k == 2 {
        let a = (0..2).find(|&g| !p.alphabet().is_involution(g)).expect("non-involution");
        let bb = 1 - a;
        let map = if a == 0 { vec![0, 1] } else { vec![1, 0] };
        let ao = order(&[pos(a)]);
        let a_order = Some(match ao {
            Order::Finite(n) => AOrder::Finite(n),
            Order::Infinite { bound } => AOrder::Infinite { bound: Some(bound) },
        });
        let found = match ao {
            Order::Finite(4) => order(&[pos(a), pos(a), pos(bb)])
                .finite()
                .and_then(|n| TypeParams::new(GraphType::III, Some(n as u32), None).ok()),
            Order::Finite(_) => None,
            Order::Infinite { .. } if hinge_colours == BTreeSet::from([bb]) => order(&[pos(a), pos(bb)])
                .finite()
                .and_then(|n| TypeParams::new(GraphType::I, Some(n as u32), None).ok())
                .or_else(|| {
                    order(&[pos(a), pos(bb), Letter::new(a, true), pos(bb)])
                        .finite()
                        .and_then(|n| TypeParams::new(GraphType::II, Some(n as u32), None).ok())
                }),
            Order::Infinite { .. } => None,
        };
        (found.map(|tp| (tp, map, false)), a_order)
    } else {
        let pairs = colour_pair_orders(b, steps);
        let pair_order = |x: usize, y: usize| {
            pairs.iter().find(|o| o.pair == (x.min(y), x.max(y))).map(|o| o.order).expect("involution pair")
        };
        // map[input colour] = family index (0 = b, 1 = c, 2 = d)
        let assign = |bc: usize, c: usize, d: usize| {
            let mut m = vec![0; 3];
            m[bc] = 0;
            m[c] = 1;
            m[d] = 2;
            m
        };
        let parallel = pairs.iter().find(|o| o.order == Order::Finite(1));
        let found = if let Some(parallel) = parallel.filter(|_| b.is_complete()) {
            let (c, d) = parallel.pair;
            let s = (0..3).find(|&x| x != c && x != d).unwrap_or(0);
            let (s, c, d) = if c == s { (c, d, (0..3).find(|&x| x != c && x != d).unwrap_or(2)) } else { (s, c, d) };
            pair_order(s, c)
                .finite()
                .and_then(|n| TypeParams::new(GraphType::IX, Some(n as u32), None).ok())
                .map(|tp| (tp, assign(s, c, d), false))
        } else if hinge_colours.len() == 1 {
            let s = *hinge_colours.iter().next().unwrap();
            let rest: Vec<usize> = (0..3).filter(|&x| x != s).collect();
            let (x, y) = (rest[0], rest[1]);
            match (pair_order(s, x).finite(), pair_order(s, y).finite()) {
                (Some(n), Some(m)) => TypeParams::new(GraphType::VI, Some(n as u32), Some(m as u32))
                    .ok()
                    .map(|tp| (tp, assign(s, x, y), false)),
                (None, None) => order(&[pos(s), pos(x), pos(s), pos(y)])
                    .finite()
                    .and_then(|m| TypeParams::new(GraphType::VIII, None, Some(m as u32)).ok())
                    .map(|tp| (tp, assign(s, x, y), false)),
                _ => None,
            }
        } else if hinge_colours.is_empty() {
            let finite: Vec<(usize, usize, usize)> =
                pairs.iter().filter_map(|o| o.order.finite().map(|k| (o.pair.0, o.pair.1, k))).collect();
            match finite.as_slice() {
                [(x, y, 2)] => {
                    let z = 3 - x - y;
                    order(&[pos(*x), pos(*y), pos(z)])
                        .finite()
                        .and_then(|m| TypeParams::new(GraphType::IV, None, Some(m as u32)).ok())
                        .map(|tp| (tp, assign(*x, *y, z), false))
                }
                [(x, y, k)] if k % 2 == 0 => {
                    let z = 3 - x - y;
                    [(*y, *x), (*x, *y)].into_iter().find_map(|(bb, c)| {
                        order(&[pos(c), pos(bb), pos(c), pos(z)])
                            .finite()
                            .and_then(|m| TypeParams::new(GraphType::V, Some(*k as u32 / 2), Some(m as u32)).ok())
                            .map(|tp| (tp, assign(bb, c, z), false))
                    })
                }
                [(_, _, k)] if k % 2 == 1 => {
                    return Ok(Classification::NotInCatalogue(CatalogueHint {
                        nearest: Some(GraphType::V),
                        cornp_case: Some(2),
                        reason: format!("hinge-free with an alternating cycle of odd length {}", 2 * k),
                    }))
                }
                [] => {
                    let mut hit = None;
                    'search: for perm in permutations(3) {
                        let (bb, c, d) = (perm[0], perm[1], perm[2]);
                        for n in 2.. {
                            let mut w = vec![pos(bb)];
                            for _ in 0..n {
                                w.extend([pos(c), pos(bb)]);
                            }
                            w.push(pos(d));
                            if w.len() > steps {
                                break;
                            }
                            if let Some(m) = order(&w).finite() {
                                if let Ok(tp) = TypeParams::new(GraphType::VII, Some(n as u32), Some(m as u32)) {
                                    hit = Some((tp, assign(bb, c, d), false));
                                    break 'search;
                                }
                            }
                        }
                    }
                    if hit.is_none() {
                        return Err(inconclusive(
                            "relator",
                            format!("no relation of the form b(cb)^n d closes within {steps} steps"),
                        ));
                    }
                    hit
                }
                _ => None,
            }
        } else {
            None
        };
        (found, None)
    };

    let Some((tp, map, inverted)) = found else {
        return Ok(not_in(format!(
            "structure (hinge colours {:?}, a-order {:?}) matches no family",
            hinge_colours.iter().map(|&c| b.colour_name(c)).collect::<Vec<_>>(),
            a_order
        )));
    };
    let mut report = table_report(tp, renaming_record(p, &map, inverted));
    report.a_order = a_order;
    if k == 3 {
        report.two_coloured_cycle = Some(colour_pair_orders(b, steps).iter().any(|o| o.order.finite().is_some()));
    }
    report.hinge = !hinges.is_empty();
    let separator = shortest_separating_path(b).ok();
    let cut = core_cutvertices(b).map_err(|e| analysis("cut vertex", e))?;
    report.kappa_claim.evidence =
        if separator.is_some() && cut.is_empty() { EvidenceLevel::BallVerified } else { EvidenceLevel::TableLookup };
    report.evidence = Evidence {
        separator: separator.map(|s| SeparatorJson {
            x: s.x,
            y: s.y,
            z_word: p.format_word(&s.z),
            path_len: s.path_len(),
        }),
        hinge_edges: hinges.iter().map(|&e| edge_ref(b, e)).collect(),
        colour_orders: colour_pair_orders(b, steps).iter().map(|o| colour_order_json(b, o)).collect(),
    };
    report.presentation_agrees = Some(classify_presentation(p)?.params() == Some(tp));
    Ok(Classification::Catalogue(Box::new(report)))
}

/// Ball-level planarity evidence for a presentation outside the catalogue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BallEvidence {
    Planar { radius: usize, vertices: usize },
    NonPlanar { radius: usize, witness: KuratowskiKind, branch: Vec<usize>, suppressed_isomorphic: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    /// The presentation is in the catalogue, so the screen does not apply.
    pub excluded: Option<TypeParams>,
    pub cornp_case: Option<u8>,
    pub reason: String,
    pub ball: Option<BallEvidence>,
}

/// Syntactic match against the non-planarity patterns, plus planarity of a certified
/// ball of the given radius when enumeration within `cap` can certify one.
pub fn nonplanar_screen(p: &Presentation, radius: usize, cap: usize) -> Result<ScreenReport, ClassifyError> {
    cubic(p)?;
    if let Classification::Catalogue(r) = classify_presentation(p)? {
        return Ok(ScreenReport {
            excluded: Some(r.params),
            cornp_case: None,
            reason: format!("in the catalogue as type {}", r.params),
            ball: None,
        });
    }
    let h = hint(p);
    let b = enumerated_ball(p, radius, cap).map_err(|e| match e {
        ConstructError::OracleInconclusive(s) => ClassifyError::OracleInconclusive(s),
        other => ClassifyError::OracleInconclusive(other.to_string()),
    })?;
    let g = UGraph::from_ball(&b);
    let ball = match planarity_check(&g) {
        Planarity::Planar(_) => BallEvidence::Planar { radius: b.radius(), vertices: b.len() },
        Planarity::NonPlanar(w) => {
            let mut sub = UGraph::new(g.len());
            for path in &w.paths {
                for s in path.windows(2) {
                    sub.add_edge(s[0], s[1]);
                }
            }
            let s = suppress_degree_two(&sub);
            let keep: Vec<usize> = (0..s.graph.len()).filter(|&v| s.graph.degree(v) > 0).collect();
            let mut compact = UGraph::new(keep.len());
            for &(u, v) in s.graph.edges() {
                compact.add_edge(keep.binary_search(&u).unwrap(), keep.binary_search(&v).unwrap());
            }
            let target = match w.kind {
                KuratowskiKind::K33 => k33(),
                KuratowskiKind::K5 => UGraph::complete(5),
            };
            BallEvidence::NonPlanar {
                radius: b.radius(),
                witness: w.kind,
                branch: w.branch.clone(),
                suppressed_isomorphic: small_isomorphic(&compact, &target),
            }
        }
    };
    Ok(ScreenReport { excluded: None, cornp_case: h.cornp_case, reason: h.reason, ball: Some(ball) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteCaseReport {
    pub order: usize,
    pub parallel_edges: bool,
    pub cutvertex: bool,
    pub two_separator: bool,
    /// Type IX parameters, if the relators match.
    pub type_ix: Option<TypeParams>,
}

/// Whole-group facts for a presentation whose coset enumeration completes within `cap`.
pub fn finite_case_report(p: &Presentation, cap: usize) -> Result<FiniteCaseReport, ClassifyError> {
    let e = enumerate_cosets(p, cap);
    if !e.is_complete() {
        return Err(ClassifyError::Overflow(format!("more than {cap} cosets")));
    }
    let b = ball_from_table(e.table(), usize::MAX / 4).map_err(|e| ClassifyError::Overflow(e.to_string()))?;
    let mut pairs: Vec<(usize, usize)> = b.endpoint_pairs().into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    pairs.sort_unstable();
    let parallel_edges = pairs.windows(2).any(|w| w[0] == w[1]);
    let conn = connectivity_diagnostics(&b).map_err(|e| analysis("connectivity", e))?;
    let type_ix = catalogue_matches(p).into_iter().map(|(tp, _)| tp).find(|tp| tp.kind == GraphType::IX);
    Ok(FiniteCaseReport {
        order: b.len(),
        parallel_edges,
        cutvertex: conn.has_interior_cutvertex,
        two_separator: !conn.two_separators.is_empty(),
        type_ix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsJson {
    pub n: Option<u32>,
    pub m: Option<u32>,
    /// Type V: the exponent of `bc`, twice `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc_exponent: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagsJson {
    pub hinge: bool,
    pub two_coloured: Option<bool>,
    pub vap_free: bool,
}

/// Report JSON, as printed by the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    #[serde(rename = "type")]
    pub kind: GraphType,
    pub params: ParamsJson,
    pub flags: FlagsJson,
    pub colour_spin: Option<BTreeMap<String, ColourSpin>>,
    pub evidence: Evidence,
    pub presentation_canonical: String,
    pub generator_count: usize,
    pub a_order: Option<AOrder>,
    pub kappa_claim: KappaClaim,
    pub renaming: Renaming,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation_agrees: Option<bool>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> ReportJson {
        let tp = self.params;
        ReportJson {
            kind: tp.kind,
            params: ParamsJson {
                n: tp.n,
                m: tp.m,
                bc_exponent: (tp.kind == GraphType::V).then(|| 2 * tp.n.expect("type V has n")),
            },
            flags: FlagsJson { hinge: self.hinge, two_coloured: self.two_coloured_cycle, vap_free: self.vap_free },
            colour_spin: self.colour_spin.clone(),
            evidence: self.evidence.clone(),
            presentation_canonical: self.presentation_canonical.clone(),
            generator_count: self.generator_count,
            a_order: self.a_order,
            kappa_claim: self.kappa_claim,
            renaming: self.renaming.clone(),
            presentation_agrees: self.presentation_agrees,
        }
    }
}
