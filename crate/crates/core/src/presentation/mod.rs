//! Group presentations over involution-aware alphabets.

mod parse;
mod word;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use word::{free_reduce, subword_in_closure, Alphabet, GeneratorSymbol, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown generator `{name}` at offset {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("relator {index} reduces to the empty word")]
    EmptyRelator { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let parsed = parse::parse(text)?;
        let mut names: Vec<String> = Vec::new();
        for (name, position) in &parsed.generators {
            if names.contains(name) {
                return Err(PresentationError::Parse {
                    position: *position,
                    message: format!("duplicate generator `{name}`"),
                });
            }
            names.push(name.clone());
        }
        let mut raw = Vec::with_capacity(parsed.relators.len());
        for rel in &parsed.relators {
            let mut letters = Vec::with_capacity(rel.len());
            for (name, inverse, position) in rel {
                let g = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| PresentationError::UnknownGenerator { name: name.clone(), position: *position })?;
                letters.push(Letter::new(g, *inverse));
            }
            raw.push(letters);
        }
        let involution: Vec<bool> =
            (0..names.len()).map(|g| raw.iter().any(|r| r.len() == 2 && r[0].generator == g && r[0] == r[1])).collect();
        let alphabet = Alphabet::new(
            names.into_iter().zip(involution).map(|(name, involution)| GeneratorSymbol { name, involution }).collect(),
        );
        Self::from_raw(alphabet, raw.into_iter().map(Word::new).collect())
    }

    /// Builds a presentation from already-resolved words. Squares of involutions are kept
    /// verbatim; every other relator is freely reduced.
    pub fn from_raw(alphabet: Alphabet, raw: Vec<Word>) -> Result<Self, PresentationError> {
        let mut relators = Vec::with_capacity(raw.len());
        for (index, w) in raw.into_iter().enumerate() {
            let l = w.letters();
            if l.len() == 2
                && l[0].generator == l[1].generator
                && alphabet.is_involution(l[0].generator)
                && l[0] == l[1]
            {
                let g = Letter::pos(l[0].generator);
                relators.push(Word::new(vec![g, g]));
                continue;
            }
            let r = free_reduce(&w, &alphabet);
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator { index });
            }
            relators.push(r);
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        self.alphabet.generators()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_involution_square(&self, w: &Word) -> bool {
        let l = w.letters();
        l.len() == 2 && l[0] == l[1] && self.alphabet.is_involution(l[0].generator)
    }

    /// Relators other than the squares declaring involutions.
    pub fn essential_relators(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().filter(|w| !self.is_involution_square(w))
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn involution_count(&self) -> usize {
        self.generators().iter().filter(|g| g.involution).count()
    }

    /// Two generators with exactly one involution, or three involutions.
    pub fn is_cubic_eligible(&self) -> bool {
        matches!((self.generators().len(), self.involution_count()), (2, 1) | (3, 3))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let raw = parse::parse_word(text)?;
        let mut w = Word::empty();
        for (name, inverse, position) in raw {
            let g = self.alphabet.find(&name).ok_or(PresentationError::UnknownGenerator { name, position })?;
            w.push(self.alphabet.normalise(Letter::new(g, inverse)));
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format_plain(w)
    }

    /// Key that is invariant under relator reordering, rotation and inversion.
    pub fn canonical_form(&self) -> String {
        let mut rels: Vec<Word> = self.relators.iter().map(|r| r.cyclic_canonical(&self.alphabet)).collect();
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        rels.dedup();
        render(&self.alphabet, &rels)
    }
}

/// Alias matching the operation name used throughout the docs.
pub fn relator_multiset_normal_form(p: &Presentation) -> String {
    p.canonical_form()
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Presentation::parse(text)
}

fn render(alphabet: &Alphabet, rels: &[Word]) -> String {
    let gens: Vec<&str> = alphabet.generators().iter().map(|g| g.name.as_str()).collect();
    let rels: Vec<String> = rels.iter().map(|r| alphabet.format_word(r)).collect();
    format!("<{} | {}>", gens.join(","), rels.join(", "))
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.alphabet, &self.relators))
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_type_one() {
        let p = Presentation::parse("<a,b | b^2, (ab)^3>").unwrap();
        assert_eq!(p.generators().len(), 2);
        assert!(!p.generators()[0].involution);
        assert!(p.generators()[1].involution);
        let shown: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
        assert_eq!(shown, ["bb", "ababab"]);
        assert!(p.is_cubic_eligible());
    }

    #[test]
    fn parses_three_involutions() {
        let p = Presentation::parse("<b,c,d | b^2, c^2, d^2, (bc)^2, (bcd)^2>").unwrap();
        assert_eq!(p.involution_count(), 3);
        let shown: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
        assert_eq!(shown, ["bb", "cc", "dd", "bcbc", "bcdbcd"]);
    }

    #[test]
    fn parse_errors() {
        match Presentation::parse("<a,b | b^2, (ab)") {
            Err(PresentationError::Parse { position, .. }) => assert_eq!(position, 16),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Presentation::parse("<a,b | b^2, c^3>"), Err(PresentationError::UnknownGenerator { .. })));
        assert!(matches!(Presentation::parse("<a,b | b^2, aa^-1>"), Err(PresentationError::EmptyRelator { index: 1 })));
        assert!(matches!(Presentation::parse("<a,a | a^2>"), Err(PresentationError::Parse { .. })));
        assert!(matches!(Presentation::parse("<a,b | >"), Err(PresentationError::Parse { .. })));
    }

    #[test]
    fn inverse_of_involution_is_normalised() {
        let p = Presentation::parse("<a,b | b^2, (aba^-1b^-1)^2>").unwrap();
        assert_eq!(p.format_word(&p.relators()[1]), "aba^-1baba^-1b");
        assert_eq!(p.to_string(), "<a,b | b^2, (aba^-1b)^2>");
    }

    #[test]
    fn canonical_form_invariances() {
        let key = |s: &str| Presentation::parse(s).unwrap().canonical_form();
        assert_eq!(key("<a,b | b^2, (ab)^2>"), key("<a,b | (ab)^2, b^2>"));
        assert_eq!(key("<a,b | b^2, (ab)^3>"), key("<a,b | b^2, (ba)^3>"));
        assert_eq!(key("<a,b | b^2, (aba^-1b)^2>"), key("<a,b | b^2, (bab^-1a^-1)^2>"));
        assert_ne!(key("<a,b | b^2, (ab)^3>"), key("<a,b | b^2, (ab)^4>"));
    }

    #[test]
    fn words_round_trip() {
        let p = Presentation::parse("<a,b | b^2, (ab)^3>").unwrap();
        let w = p.parse_word("a^-1b(ab)^2").unwrap();
        assert_eq!(p.format_word(&w), "a^-1babab");
        assert_eq!(p.parse_word(&p.format_word(&w)).unwrap(), w);
        assert!(p.parse_word("").unwrap().is_empty());
    }
}
