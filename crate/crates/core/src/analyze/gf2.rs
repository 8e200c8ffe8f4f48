/// Row over GF(2) stored as packed bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow(Vec<u64>);

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow(vec![0; len.div_ceil(64)])
    }

    pub fn from_indices(len: usize, idx: &[usize]) -> BitRow {
        let mut r = BitRow::zeros(len);
        for &i in idx {
            r.flip(i);
        }
        r
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn leading(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Echelon basis, kept reduced on insertion.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    rows: Vec<(usize, BitRow)>,
}

impl Basis {
    pub fn new() -> Basis {
        Basis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut r: BitRow) -> BitRow {
        for (pivot, row) in &self.rows {
            if r.get(*pivot) {
                r.xor(row);
            }
        }
        r
    }

    /// Adds `r`; returns false if it was already in the span.
    pub fn insert(&mut self, r: BitRow) -> bool {
        let r = self.reduce(r);
        match r.leading() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }

    pub fn contains(&self, r: &BitRow) -> bool {
        self.reduce(r.clone()).is_zero()
    }
}
