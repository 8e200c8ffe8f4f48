use super::PresentationError;

/// A relator before generator resolution: (name, exponent sign, position) triples.
pub(super) type RawLetter = (String, bool, usize);

pub(super) struct Parsed {
    pub generators: Vec<(String, usize)>,
    pub relators: Vec<Vec<RawLetter>>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(text: &str) -> Result<Parsed, PresentationError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.expect(b'<')?;
    let mut generators = vec![p.ident()?];
    while p.eat(b',') {
        generators.push(p.ident()?);
    }
    p.expect(b'|')?;
    let mut relators = vec![p.relator()?];
    while p.eat(b',') {
        relators.push(p.relator()?);
    }
    p.expect(b'>')?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("trailing input after `>`"));
    }
    Ok(Parsed { generators, relators })
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PresentationError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, message: &str) -> PresentationError {
        let found = match self.src.get(self.pos) {
            Some(&c) => format!("`{}`", c as char),
            None => "end of input".to_string(),
        };
        PresentationError::Parse { position: self.pos, message: format!("{message}, found {found}") }
    }

    /// Identifier: one ASCII letter followed by optional digits, so `ab` reads as two letters.
    fn ident(&mut self) -> Result<(String, usize), PresentationError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Ok((name, start))
            }
            _ => Err(self.error("expected generator name")),
        }
    }

    fn int(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected integer exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse()
            .map_err(|_| PresentationError::Parse { position: start, message: format!("exponent `{s}` out of range") })
    }

    fn relator(&mut self) -> Result<Vec<RawLetter>, PresentationError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'(' => self.relator_allow_empty(),
            _ => Err(self.error("expected relator")),
        }
    }

    fn factor(&mut self) -> Result<Vec<RawLetter>, PresentationError> {
        let base = if self.eat(b'(') {
            let inner = self.relator_allow_empty()?;
            self.expect(b')')?;
            inner
        } else {
            let (name, pos) = self.ident()?;
            vec![(name, false, pos)]
        };
        if !self.eat(b'^') {
            return Ok(base);
        }
        let k = self.int()?;
        if k.unsigned_abs() > 1_000_000 {
            return Err(self.error("exponent too large"));
        }
        let unit: Vec<RawLetter> =
            if k < 0 { base.iter().rev().map(|(n, inv, p)| (n.clone(), !inv, *p)).collect() } else { base };
        let k = k.unsigned_abs() as usize;
        Ok(unit.iter().cycle().take(unit.len() * k).cloned().collect())
    }

    fn relator_allow_empty(&mut self) -> Result<Vec<RawLetter>, PresentationError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() || c == b'(' {
                out.extend(self.factor()?);
            } else {
                break;
            }
        }
        Ok(out)
    }
}

/// Parses a bare word such as `ab^-1(cb)^2`; the empty string is the empty word.
pub(super) fn parse_word(text: &str) -> Result<Vec<RawLetter>, PresentationError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.relator_allow_empty()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected symbol in word"));
    }
    Ok(out)
}
