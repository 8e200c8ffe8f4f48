use std::fmt::Write as _;

/// A signed generator. Involution letters always carry `inverse == false`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub involution: bool,
}

/// Generator list shared by a presentation and everything built from it.
///
/// Columns are the slots of a vertex in the Cayley graph: one per involution,
/// two (`g`, `g^-1`) per other generator, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<GeneratorSymbol>,
}

impl Alphabet {
    pub fn new(generators: Vec<GeneratorSymbol>) -> Self {
        Alphabet { generators }
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.generators[generator].name
    }

    pub fn is_involution(&self, generator: usize) -> bool {
        self.generators[generator].involution
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn normalise(&self, l: Letter) -> Letter {
        if self.is_involution(l.generator) {
            Letter::pos(l.generator)
        } else {
            l
        }
    }

    pub fn inverse(&self, l: Letter) -> Letter {
        if self.is_involution(l.generator) {
            l
        } else {
            Letter::new(l.generator, !l.inverse)
        }
    }

    /// Slot letters in canonical order: `g` before `g^-1`, generators in declaration order.
    pub fn columns(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            out.push(Letter::pos(i));
            if !g.involution {
                out.push(Letter::new(i, true));
            }
        }
        out
    }

    pub fn column_of(&self, l: Letter) -> usize {
        let l = self.normalise(l);
        let mut col = 0;
        for (i, g) in self.generators.iter().enumerate() {
            if i == l.generator {
                return col + usize::from(l.inverse);
            }
            col += if g.involution { 1 } else { 2 };
        }
        panic!("letter references generator {} outside the alphabet", l.generator)
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.name(l.generator))
        } else {
            self.name(l.generator).to_string()
        }
    }

    /// Compact rendering: a bare letter string, or `(u)^k` / `x^k` for proper powers.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::new();
        }
        let (root, k) = w.primitive_root();
        if k > 1 {
            if root.len() == 1 {
                let l = root.letters()[0];
                let name = self.name(l.generator);
                return if l.inverse { format!("{name}^-{k}") } else { format!("{name}^{k}") };
            }
            return format!("({})^{k}", self.format_plain(&root));
        }
        self.format_plain(w)
    }

    pub fn format_plain(&self, w: &Word) -> String {
        let mut s = String::new();
        for &l in w.letters() {
            let _ = write!(s, "{}", self.format_letter(l));
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn inverse(&self, alphabet: &Alphabet) -> Word {
        Word(self.0.iter().rev().map(|&l| alphabet.inverse(l)).collect())
    }

    pub fn rotation(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Smallest `u` with `self == u^k`; returns `(u, k)`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.0.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return (Word(self.0[..p].to_vec()), n / p);
            }
        }
        (self.clone(), 1)
    }

    /// Generators used, in order of first appearance.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for l in &self.0 {
            if !out.contains(&l.generator) {
                out.push(l.generator);
            }
        }
        out
    }

    /// Minimum over all rotations of the word and of its inverse.
    pub fn cyclic_canonical(&self, alphabet: &Alphabet) -> Word {
        let inv = self.inverse(alphabet);
        (0..self.len().max(1)).flat_map(|k| [self.rotation(k), inv.rotation(k)]).min().unwrap_or_default()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Free reduction with involution cancellation; signs of involution letters normalised.
pub fn free_reduce(w: &Word, alphabet: &Alphabet) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let l = alphabet.normalise(l);
        match out.last() {
            Some(&top) if top == alphabet.inverse(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// Whether `w` is a contiguous subword of some rotation of `r` or of `r^-1`.
pub fn subword_in_closure(w: &Word, r: &Word, alphabet: &Alphabet) -> bool {
    if w.is_empty() {
        return true;
    }
    if w.len() > r.len() {
        return false;
    }
    let inv = r.inverse(alphabet);
    [r, &inv].iter().any(|cand| {
        let c = cand.letters();
        let n = c.len();
        (0..n).any(|start| (0..w.len()).all(|i| c[(start + i) % n] == w.letters()[i]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(vec![
            GeneratorSymbol { name: "a".into(), involution: false },
            GeneratorSymbol { name: "b".into(), involution: true },
        ])
    }

    fn free2() -> Alphabet {
        Alphabet::new(vec![
            GeneratorSymbol { name: "a".into(), involution: false },
            GeneratorSymbol { name: "b".into(), involution: false },
        ])
    }

    const A: Letter = Letter::pos(0);
    const AI: Letter = Letter::new(0, true);
    const B: Letter = Letter::pos(1);
    const BI: Letter = Letter::new(1, true);

    #[test]
    fn reduction_examples() {
        let al = ab();
        assert_eq!(free_reduce(&Word::new(vec![A, AI, B]), &al), Word::new(vec![B]));
        assert!(free_reduce(&Word::new(vec![B, B]), &al).is_empty());
        let abab = Word::new(vec![A, B, A, B]);
        assert_eq!(free_reduce(&abab, &al), abab);
        assert_eq!(free_reduce(&Word::new(vec![BI]), &al), Word::new(vec![B]));
    }

    #[test]
    fn closure_examples() {
        let al = free2();
        let abab = Word::new(vec![A, B, A, B]);
        assert!(subword_in_closure(&Word::new(vec![B, A]), &abab, &al));
        assert!(!subword_in_closure(&Word::new(vec![A, A]), &abab, &al));
        let inv = Word::new(vec![BI, AI, BI, AI]);
        assert!(subword_in_closure(&Word::new(vec![A, B]), &inv, &al));
    }

    #[test]
    fn columns_and_format() {
        let al = ab();
        assert_eq!(al.columns(), vec![A, AI, B]);
        assert_eq!(al.column_of(B), 2);
        assert_eq!(al.format_word(&Word::new(vec![A, B, A, B, A, B])), "(ab)^3");
        assert_eq!(al.format_word(&Word::new(vec![AI, AI])), "a^-2");
        assert_eq!(al.format_word(&Word::new(vec![A, B, AI, B])), "aba^-1b");
    }
}
