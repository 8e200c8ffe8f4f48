//! Todd–Coxeter coset enumeration (HLT with a deduction stack) over the trivial subgroup.

use crate::presentation::{Letter, Presentation};

use super::ball::NeighbourSource;

const NONE: u32 = u32::MAX;
const MAX_DEDUCTIONS: usize = 4096;

/// Why a table entry or merge exists. Coset ids are those of the running enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetEvent {
    Define {
        coset: u32,
        column: u32,
        new: u32,
    },
    /// Scanning cyclic conjugate `conj` from `base` left exactly one gap, at `coset`·`column` = `target`.
    Deduce {
        conj: u32,
        base: u32,
        coset: u32,
        column: u32,
        target: u32,
    },
    /// Scanning `conj` from `base` closed up with the two ends at different cosets.
    Coincide {
        conj: u32,
        base: u32,
        a: u32,
        b: u32,
    },
}

/// A (possibly partial) coset table for the trivial subgroup; row 0 is the identity.
#[derive(Clone, Debug)]
pub struct CosetTable {
    presentation: Presentation,
    columns: Vec<Letter>,
    table: Vec<u32>,
    rows: usize,
    complete: bool,
    log: Vec<CosetEvent>,
}

#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete(CosetTable),
    /// The cap was hit; the table holds only consequences of the relators.
    Overflow(CosetTable),
}

impl Enumeration {
    pub fn table(&self) -> &CosetTable {
        match self {
            Enumeration::Complete(t) | Enumeration::Overflow(t) => t,
        }
    }

    pub fn into_table(self) -> CosetTable {
        match self {
            Enumeration::Complete(t) | Enumeration::Overflow(t) => t,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Enumeration::Complete(_))
    }
}

pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> Enumeration {
    let mut e = Engine::new(p, max_cosets.max(1), true);
    let complete = e.run().is_ok();
    let (table, rows) = e.compact();
    let t = CosetTable { presentation: p.clone(), columns: p.alphabet().columns(), table, rows, complete, log: e.log };
    if complete {
        Enumeration::Complete(t)
    } else {
        Enumeration::Overflow(t)
    }
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn columns(&self) -> &[Letter] {
        &self.columns
    }

    pub fn entry(&self, coset: usize, column: usize) -> Option<usize> {
        let x = self.table[coset * self.columns.len() + column];
        (x != NONE).then_some(x as usize)
    }

    pub fn log(&self) -> &[CosetEvent] {
        &self.log
    }

    /// Re-derives the table from the event log alone, checking that every deduction and
    /// every primary coincidence is forced by the relator scan it cites.
    pub fn replay_verify(&self) -> Result<(), String> {
        let mut e = Engine::new(&self.presentation, usize::MAX, false);
        for (i, ev) in self.log.iter().enumerate() {
            match *ev {
                CosetEvent::Define { coset, column, new } => {
                    if e.get(coset, column as usize) != NONE || new as usize != e.count() {
                        return Err(format!("event {i}: definition does not fill a gap"));
                    }
                    e.define(coset, column as usize).map_err(|_| "cap".to_string())?;
                }
                CosetEvent::Deduce { conj, base, coset, column, target } => match e.scan(base, conj as usize) {
                    Scan::Gap { f, col, b } if f == coset && col == column as usize && b == target => {
                        e.set(f, col, b);
                    }
                    other => return Err(format!("event {i}: deduction not forced ({other:?})")),
                },
                CosetEvent::Coincide { conj, base, a, b } => match e.scan(base, conj as usize) {
                    Scan::Meet { f, b: bb } if (f, bb) == (a, b) => e.coincidence(a, b),
                    other => return Err(format!("event {i}: coincidence not forced ({other:?})")),
                },
            }
        }
        let (table, rows) = e.compact();
        if rows != self.rows || table != self.table {
            return Err("replayed table differs from the recorded one".into());
        }
        Ok(())
    }
}

pub(crate) struct TableSource<'a>(pub &'a CosetTable);

impl NeighbourSource for TableSource<'_> {
    fn root(&mut self) -> usize {
        0
    }

    fn neighbour(&mut self, v: usize, column: usize) -> Option<usize> {
        self.0.entry(v, column)
    }
}

#[derive(Debug)]
enum Scan {
    Closed,
    Meet { f: u32, b: u32 },
    Gap { f: u32, col: usize, b: u32 },
    Open { f: u32, i: usize },
}

struct Overflow;

struct Engine {
    ncols: usize,
    inv: Vec<usize>,
    conj: Vec<Vec<usize>>,
    by_first: Vec<Vec<usize>>,
    hlt: Vec<usize>,
    table: Vec<u32>,
    parent: Vec<u32>,
    cap: usize,
    logging: bool,
    log: Vec<CosetEvent>,
    deductions: Vec<(u32, usize)>,
}

impl Engine {
    fn new(p: &Presentation, cap: usize, logging: bool) -> Engine {
        let alphabet = p.alphabet();
        let columns = alphabet.columns();
        let ncols = columns.len();
        let inv = columns.iter().map(|&l| alphabet.column_of(alphabet.inverse(l))).collect();
        let mut conj: Vec<Vec<usize>> = Vec::new();
        let mut hlt = Vec::new();
        for r in p.essential_relators() {
            let cols: Vec<usize> = r.letters().iter().map(|&l| alphabet.column_of(l)).collect();
            let inv_cols: Vec<usize> = r.inverse(alphabet).letters().iter().map(|&l| alphabet.column_of(l)).collect();
            for w in [&cols, &inv_cols] {
                for k in 0..w.len() {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    if !conj.contains(&rot) {
                        conj.push(rot);
                    }
                }
            }
            let first = conj.iter().position(|w| *w == cols).expect("relator is its own conjugate");
            if !hlt.contains(&first) {
                hlt.push(first);
            }
        }
        let mut by_first = vec![Vec::new(); ncols];
        for (i, w) in conj.iter().enumerate() {
            by_first[w[0]].push(i);
        }
        Engine {
            ncols,
            inv,
            conj,
            by_first,
            hlt,
            table: vec![NONE; ncols],
            parent: vec![0],
            cap,
            logging,
            log: Vec::new(),
            deductions: Vec::new(),
        }
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn put(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.put(c, x, d);
        let ix = self.inv[x];
        self.put(d, ix, c);
        self.push_deduction(c, x);
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() < MAX_DEDUCTIONS {
            self.deductions.push((c, x));
        }
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Overflow> {
        if self.count() >= self.cap {
            return Err(Overflow);
        }
        let new = self.count() as u32;
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        if self.logging {
            self.log.push(CosetEvent::Define { coset: c, column: x as u32, new });
        }
        self.set(c, x, new);
        Ok(new)
    }

    /// Scans `conj` from `base` in both directions without defining anything.
    fn scan(&self, base: u32, conj: usize) -> Scan {
        let w = &self.conj[conj];
        let r = w.len();
        let (mut f, mut i) = (base, 0);
        while i < r {
            let n = self.get(f, w[i]);
            if n == NONE {
                break;
            }
            f = n;
            i += 1;
        }
        if i == r {
            return if f == base { Scan::Closed } else { Scan::Meet { f, b: base } };
        }
        let (mut b, mut j) = (base, r);
        while j > i {
            let n = self.get(b, self.inv[w[j - 1]]);
            if n == NONE {
                break;
            }
            b = n;
            j -= 1;
        }
        if j == i {
            if f == b {
                Scan::Closed
            } else {
                Scan::Meet { f, b }
            }
        } else if j == i + 1 {
            Scan::Gap { f, col: w[i], b }
        } else {
            Scan::Open { f, i }
        }
    }

    /// Acts on a scan: records a deduction or a coincidence; an open scan yields the
    /// first undefined position.
    fn apply(&mut self, base: u32, conj: usize, s: Scan) -> Option<(u32, usize)> {
        match s {
            Scan::Closed => None,
            Scan::Meet { f, b } => {
                if self.logging {
                    self.log.push(CosetEvent::Coincide { conj: conj as u32, base, a: f, b });
                }
                self.coincidence(f, b);
                None
            }
            Scan::Gap { f, col, b } => {
                if self.logging {
                    self.log.push(CosetEvent::Deduce {
                        conj: conj as u32,
                        base,
                        coset: f,
                        column: col as u32,
                        target: b,
                    });
                }
                self.set(f, col, b);
                None
            }
            Scan::Open { f, i } => Some((f, self.conj[conj][i])),
        }
    }

    fn scan_and_fill(&mut self, base: u32, conj: usize) -> Result<(), Overflow> {
        loop {
            if !self.live(base) {
                return Ok(());
            }
            let s = self.scan(base, conj);
            match self.apply(base, conj, s) {
                None => return Ok(()),
                Some((f, x)) => {
                    self.define(f, x)?;
                }
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.live(c) {
                continue;
            }
            for k in 0..self.by_first[x].len() {
                if !self.live(c) {
                    break;
                }
                let conj = self.by_first[x][k];
                let s = self.scan(c, conj);
                if !matches!(s, Scan::Open { .. }) {
                    self.apply(c, conj, s);
                }
            }
            if !self.live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == NONE {
                continue;
            }
            let ix = self.inv[x];
            for k in 0..self.by_first[ix].len() {
                if !self.live(d) {
                    break;
                }
                let conj = self.by_first[ix][k];
                let s = self.scan(d, conj);
                if !matches!(s, Scan::Open { .. }) {
                    self.apply(d, conj, s);
                }
            }
        }
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let (p, q) = (self.rep(k), self.rep(l));
        if p != q {
            let (lo, hi) = (p.min(q), p.max(q));
            self.parent[hi as usize] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let ix = self.inv[x];
                self.put(d, ix, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx, &mut queue);
                    continue;
                }
                let nix = self.get(nu, ix);
                if nix != NONE {
                    self.merge(mu, nix, &mut queue);
                    continue;
                }
                self.set(mu, x, nu);
            }
        }
    }

    fn run(&mut self) -> Result<(), Overflow> {
        let mut alpha: u32 = 0;
        while (alpha as usize) < self.count() {
            for k in 0..self.hlt.len() {
                if !self.live(alpha) {
                    break;
                }
                let conj = self.hlt[k];
                self.scan_and_fill(alpha, conj)?;
                self.process_deductions();
            }
            if self.live(alpha) {
                for x in 0..self.ncols {
                    if self.live(alpha) && self.get(alpha, x) == NONE {
                        self.define(alpha, x)?;
                        self.process_deductions();
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Live rows renumbered in index order; row 0 stays the identity.
    fn compact(&mut self) -> (Vec<u32>, usize) {
        let n = self.count();
        let mut id = vec![NONE; n];
        let mut rows = 0u32;
        for c in 0..n as u32 {
            if self.live(c) {
                id[c as usize] = rows;
                rows += 1;
            }
        }
        let mut out = Vec::with_capacity(rows as usize * self.ncols);
        for c in 0..n as u32 {
            if !self.live(c) {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.get(c, x);
                out.push(if d == NONE { NONE } else { id[self.rep(d) as usize] });
            }
        }
        (out, rows as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> Option<usize> {
        match enumerate_cosets(&Presentation::parse(text).unwrap(), 10_000) {
            Enumeration::Complete(t) => Some(t.len()),
            Enumeration::Overflow(_) => None,
        }
    }

    #[test]
    fn small_finite_groups() {
        assert_eq!(order("<b,c | b^2, c^2, (bc)^3>"), Some(6));
        assert_eq!(order("<b,c,d | b^2, c^2, d^2, (bc)^2, bcd>"), Some(4));
        assert_eq!(order("<b,c,d | b^2, c^2, d^2, (bc)^2, cd>"), Some(4));
        assert_eq!(order("<a,b | b^2, a^3, (ab)^2>"), Some(6));
        assert_eq!(order("<a,b | a^3, b^2, (ab)^3>"), Some(12));
        assert_eq!(order("<a,b | a^4, b^2, (ab)^3>"), Some(24));
        assert_eq!(order("<a,b | a^5, b^2, (ab)^3>"), Some(60));
        assert_eq!(order("<a | a^7>"), Some(7));
    }

    #[test]
    fn infinite_group_overflows() {
        assert_eq!(order("<a,b | b^2, (ab)^2>"), None);
    }

    #[test]
    fn log_replays() {
        for text in ["<a,b | a^5, b^2, (ab)^3>", "<a,b | b^2, (ab)^3>", "<b,c,d | b^2, c^2, d^2, (bc)^2, (bcd)^2>"] {
            let e = enumerate_cosets(&Presentation::parse(text).unwrap(), 2000);
            e.table().replay_verify().unwrap();
        }
    }

    #[test]
    fn complete_tables_are_permutations() {
        let e = enumerate_cosets(&Presentation::parse("<a,b | a^4, b^2, (ab)^3>").unwrap(), 1000);
        let t = e.table();
        for x in 0..t.columns().len() {
            let mut seen = vec![false; t.len()];
            for c in 0..t.len() {
                let d = t.entry(c, x).unwrap();
                assert!(!seen[d]);
                seen[d] = true;
            }
        }
    }
}
