//! Certified finite balls of the nine families, by explicit construction and by coset
//! enumeration (the independent oracle).

mod ball;
mod builders;
mod certify;
mod coset;
mod iso;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::Presentation;

pub use ball::{BallError, BallJson, CayleyBall, Edge, EdgeJson, VertexJson};
pub use certify::{certify_ball, Certificate, Violation, ViolationKind};
pub use coset::{enumerate_cosets, CosetEvent, CosetTable, Enumeration};
pub use iso::rooted_colour_isomorphic;

pub const DEFAULT_CAP: usize = 100_000;

/// Radius large enough to take in any finite graph we handle.
const WHOLE: usize = usize::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl GraphType {
    pub const ALL: [GraphType; 9] = [
        GraphType::I,
        GraphType::II,
        GraphType::III,
        GraphType::IV,
        GraphType::V,
        GraphType::VI,
        GraphType::VII,
        GraphType::VIII,
        GraphType::IX,
    ];

    pub fn generator_count(self) -> usize {
        match self {
            GraphType::I | GraphType::II | GraphType::III => 2,
            _ => 3,
        }
    }

    pub fn is_finite(self) -> bool {
        self == GraphType::IX
    }

    /// (uses n, uses m)
    pub fn parameters(self) -> (bool, bool) {
        match self {
            GraphType::I | GraphType::II | GraphType::III | GraphType::IX => (true, false),
            GraphType::IV | GraphType::VIII => (false, true),
            GraphType::V | GraphType::VI | GraphType::VII => (true, true),
        }
    }

    fn min_n(self) -> u32 {
        match self {
            GraphType::II | GraphType::IX => 1,
            _ => 2,
        }
    }

    fn min_m(self) -> u32 {
        match self {
            GraphType::VIII => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GraphType {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        GraphType::ALL
            .into_iter()
            .find(|g| g.to_string() == t)
            .ok_or_else(|| ConstructError::InvalidParams(format!("unknown type `{s}`")))
    }
}

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("construction could not be certified at radius {radius}: {first}")]
    ConstructionIncomplete { radius: usize, first: String, violations: Vec<Violation> },
    #[error("enumeration oracle inconclusive: {0}")]
    OracleInconclusive(String),
}

/// Type plus parameters, validated against the domains of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeParams {
    pub kind: GraphType,
    pub n: Option<u32>,
    pub m: Option<u32>,
}

impl TypeParams {
    /// Type III has a single parameter; it is accepted under either name.
    pub fn new(kind: GraphType, n: Option<u32>, m: Option<u32>) -> Result<TypeParams, ConstructError> {
        let (n, m) = if kind == GraphType::III && n.is_none() { (m, None) } else { (n, m) };
        let (uses_n, uses_m) = kind.parameters();
        let check = |name: &str, used: bool, value: Option<u32>, min: u32| match (used, value) {
            (true, None) => Err(ConstructError::InvalidParams(format!("type {kind} requires {name}"))),
            (false, Some(_)) => Err(ConstructError::InvalidParams(format!("type {kind} takes no {name}"))),
            (true, Some(v)) if v < min => {
                Err(ConstructError::InvalidParams(format!("type {kind} requires {name} >= {min}, got {v}")))
            }
            (true, Some(v)) if v > 64 => {
                Err(ConstructError::InvalidParams(format!("{name} = {v} exceeds the supported maximum 64")))
            }
            _ => Ok(()),
        };
        check("n", uses_n, n, kind.min_n())?;
        check("m", uses_m, m, kind.min_m())?;
        Ok(TypeParams { kind, n, m })
    }

    pub fn presentation_text(&self) -> String {
        let n = self.n.unwrap_or(0);
        let m = self.m.unwrap_or(0);
        let inv3 = "b^2, c^2, d^2";
        match self.kind {
            GraphType::I => format!("<a,b | b^2, (ab)^{n}>"),
            GraphType::II => format!("<a,b | b^2, (aba^-1b^-1)^{n}>"),
            GraphType::III => format!("<a,b | b^2, a^4, (a^2b)^{n}>"),
            GraphType::IV => format!("<b,c,d | {inv3}, (bc)^2, (bcd)^{m}>"),
            GraphType::V => format!("<b,c,d | {inv3}, (bc)^{}, (cbcd)^{m}>", 2 * n),
            GraphType::VI => format!("<b,c,d | {inv3}, (bc)^{n}, (bd)^{m}>"),
            GraphType::VII => format!("<b,c,d | {inv3}, (b(cb)^{n}d)^{m}>"),
            GraphType::VIII => format!("<b,c,d | {inv3}, (bcbd)^{m}>"),
            GraphType::IX => format!("<b,c,d | {inv3}, (bc)^{n}, cd>"),
        }
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::parse(&self.presentation_text()).expect("family presentations parse")
    }
}

impl fmt::Display for TypeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        Ok(())
    }
}

/// Certified ball of radius `radius` from the explicit construction.
pub fn construct(tp: &TypeParams, radius: usize) -> Result<CayleyBall, ConstructError> {
    let tp = TypeParams::new(tp.kind, tp.n, tp.m)?;
    if radius == 0 {
        return Err(ConstructError::InvalidParams("radius must be at least 1".into()));
    }
    let p = tp.presentation();
    let mut src = builders::builder(&tp, &p);
    let r = if tp.kind.is_finite() { WHOLE } else { radius };
    let ball = CayleyBall::from_source(&p, &mut src, r).map_err(|e| ConstructError::ConstructionIncomplete {
        radius,
        first: format!("{e:?}"),
        violations: Vec::new(),
    })?;
    certified(ball, &p, radius)
}

fn certified(ball: CayleyBall, p: &Presentation, radius: usize) -> Result<CayleyBall, ConstructError> {
    match certify_ball(&ball, p) {
        Ok(_) => Ok(ball),
        Err(violations) => {
            Err(ConstructError::ConstructionIncomplete { radius, first: violations[0].to_string(), violations })
        }
    }
}

#[derive(Debug, Error)]
pub enum TableBallError {
    #[error("undefined generator image within the interior (word {word}, column {column})")]
    UndefinedInterior { word: String, column: usize },
}

/// BFS ball around the identity coset. A complete table yields the whole graph.
pub fn ball_from_table(t: &CosetTable, radius: usize) -> Result<CayleyBall, TableBallError> {
    let p = t.presentation();
    CayleyBall::from_source(p, &mut coset::TableSource(t), radius).map_err(|e| match e {
        ball::Undefined::Slot { word, column } | ball::Undefined::Asymmetric { word, column } => {
            TableBallError::UndefinedInterior { word: p.format_word(&word), column }
        }
    })
}

/// Ball certified by coset enumeration alone: either the enumeration completes, or the
/// truncated ball is certified and unchanged when the cap is doubled.
pub fn enumerated_ball(p: &Presentation, radius: usize, cap: usize) -> Result<CayleyBall, ConstructError> {
    let first = enumerate_cosets(p, cap);
    if let Enumeration::Complete(t) = &first {
        let b = ball_from_table(t, WHOLE).map_err(|e| ConstructError::OracleInconclusive(e.to_string()))?;
        return certified(b, p, radius);
    }
    let inconclusive = |why: String| ConstructError::OracleInconclusive(format!("cap {cap}: {why}"));
    let b1 = ball_from_table(first.table(), radius).map_err(|e| inconclusive(e.to_string()))?;
    drop(first);
    let second = enumerate_cosets(p, cap.saturating_mul(2));
    let b2 = ball_from_table(second.table(), radius).map_err(|e| inconclusive(e.to_string()))?;
    if !rooted_colour_isomorphic(&b1, &b2) {
        return Err(inconclusive("ball changed when the cap was doubled".into()));
    }
    certify_ball(&b1, p).map_err(|v| inconclusive(format!("truncated ball fails certification: {}", v[0])))?;
    Ok(b1)
}

pub fn cross_check(tp: &TypeParams, radius: usize) -> Result<bool, ConstructError> {
    cross_check_with_cap(tp, radius, DEFAULT_CAP)
}

/// Explicit construction versus the enumeration oracle, rooted at the identity.
pub fn cross_check_with_cap(tp: &TypeParams, radius: usize, cap: usize) -> Result<bool, ConstructError> {
    let built = construct(tp, radius)?;
    let oracle = enumerated_ball(&tp.presentation(), radius, cap)?;
    Ok(rooted_colour_isomorphic(&built, &oracle))
}
