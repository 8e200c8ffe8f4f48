use std::fmt;

use crate::presentation::Presentation;

use super::ball::CayleyBall;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// The ball and the presentation disagree on the generator list.
    AlphabetMismatch,
    /// An interior vertex lacks the slot for `column`.
    MissingSlot { column: usize },
    /// The trace reached an interior vertex with a missing slot.
    BrokenTrace { at: usize },
    /// The trace stayed in the ball but did not return to its start.
    OpenTrace { end: usize },
    /// The trace revisited a vertex after `step` letters, before the end of the relator.
    FoldedTrace { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    pub relator: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex {}", self.vertex)?;
        if let Some(r) = self.relator {
            write!(f, ", relator {r}")?;
        }
        match &self.kind {
            ViolationKind::AlphabetMismatch => write!(f, ": generators differ from the presentation"),
            ViolationKind::MissingSlot { column } => write!(f, ": interior vertex missing slot {column}"),
            ViolationKind::BrokenTrace { at } => write!(f, ": open trace, interior vertex {at} lacks the next edge"),
            ViolationKind::OpenTrace { end } => write!(f, ": open trace ending at {end}"),
            ViolationKind::FoldedTrace { step } => {
                write!(f, ": trace revisits a vertex after {step} letters (relator not simple here)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub vertices: usize,
    pub edges: usize,
    pub interior: usize,
    pub traces_closed: usize,
    pub complete: bool,
}

/// Checks full interior degree, closure of every relator trace that stays in the ball,
/// and that no trace folds back on itself before its end.
pub fn certify_ball(b: &CayleyBall, p: &Presentation) -> Result<Certificate, Vec<Violation>> {
    let same_alphabet = b.presentation().generators() == p.generators();
    if !same_alphabet {
        return Err(vec![Violation { vertex: b.center(), relator: None, kind: ViolationKind::AlphabetMismatch }]);
    }
    let alphabet = p.alphabet();
    let ncols = b.columns().len();
    let mut violations = Vec::new();
    for v in b.interior() {
        for c in 0..ncols {
            if b.slot(v, c).is_none() {
                violations.push(Violation { vertex: v, relator: None, kind: ViolationKind::MissingSlot { column: c } });
            }
        }
    }
    let rels: Vec<Vec<usize>> =
        p.relators().iter().map(|r| r.letters().iter().map(|&l| alphabet.column_of(l)).collect()).collect();
    let mut closed = 0;
    let mut visited: Vec<usize> = Vec::new();
    for v in 0..b.len() {
        'rel: for (ri, r) in rels.iter().enumerate() {
            visited.clear();
            let mut cur = v;
            for (k, &c) in r.iter().enumerate() {
                if k > 0 && visited.contains(&cur) {
                    violations.push(Violation {
                        vertex: v,
                        relator: Some(ri),
                        kind: ViolationKind::FoldedTrace { step: k },
                    });
                    continue 'rel;
                }
                visited.push(cur);
                match b.neighbour(cur, c) {
                    Some(w) => cur = w,
                    None => {
                        if b.is_interior(cur) {
                            violations.push(Violation {
                                vertex: v,
                                relator: Some(ri),
                                kind: ViolationKind::BrokenTrace { at: cur },
                            });
                        }
                        continue 'rel;
                    }
                }
            }
            if cur != v {
                violations.push(Violation {
                    vertex: v,
                    relator: Some(ri),
                    kind: ViolationKind::OpenTrace { end: cur },
                });
            } else {
                closed += 1;
            }
        }
    }
    if violations.is_empty() {
        Ok(Certificate {
            vertices: b.len(),
            edges: b.edges().len(),
            interior: b.interior().count(),
            traces_closed: closed,
            complete: b.is_complete(),
        })
    } else {
        Err(violations)
    }
}
