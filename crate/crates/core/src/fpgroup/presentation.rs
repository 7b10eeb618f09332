use std::fmt;

use super::word::{Letter, Word};
use super::FpError;

/// A finite presentation: generator count, names and cyclically reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ngens: usize,
    names: Vec<String>,
    relators: Vec<Word>,
}

/// Position-tagged parse failure.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Presentation {
    /// Builds a presentation, cyclically reducing the relators. Generator names
    /// default to `a`, `b`, `c`, ...
    pub fn new(ngens: usize, relators: Vec<Word>) -> Result<Self, FpError> {
        let names = default_names(ngens);
        Presentation::with_names(names, relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        let ngens = names.len();
        if ngens == 0 {
            return Err(FpError::Domain("a presentation needs at least one generator".into()));
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_generator() as usize > ngens {
                return Err(FpError::Domain(format!(
                    "relator {r:?} uses a generator beyond {ngens}"
                )));
            }
            let c = r.cyclically_reduce();
            if c.is_empty() {
                return Err(FpError::Domain("relator reduces to the empty word".into()));
            }
            reduced.push(c);
        }
        Ok(Presentation { ngens, names, relators: reduced })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Returns a copy with relator `index` replaced.
    pub fn replace_relator(&self, index: usize, relator: Word) -> Result<Self, FpError> {
        if index >= self.relators.len() {
            return Err(FpError::Domain(format!("no relator at index {index}")));
        }
        let mut rels = self.relators.clone();
        rels[index] = relator;
        Presentation::with_names(self.names.clone(), rels)
    }

    /// Text form accepted by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.names.join(" "));
        for r in &self.relators {
            out.push_str(&r.display_with(&self.names));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.display_with(&self.names)).collect();
        write!(f, "< {} | {} >", self.names.join(", "), rels.join(", "))
    }
}

pub(crate) fn default_names(ngens: usize) -> Vec<String> {
    (0..ngens)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{}", i + 1)
            }
        })
        .collect()
}

struct RelatorParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    names: &'a [String],
}

impl RelatorParser<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: column + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    // expr := term*
    fn expr(&mut self, nested: bool) -> Result<Vec<Letter>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None => {
                    return Ok(out);
                }
                Some(')') if nested => return Ok(out),
                Some(')') => return Err(self.err(self.pos, "unbalanced ')'")),
                Some(_) => out.extend(self.term()?),
            }
        }
    }

    // term := atom postfix*
    fn term(&mut self) -> Result<Vec<Letter>, ParseError> {
        let start = self.pos;
        let mut body = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr(true)?;
                if self.peek() != Some(')') {
                    return Err(self.err(start, "unbalanced '('"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                let idx = self
                    .names
                    .iter()
                    .position(|n| n.len() == 1 && n.starts_with(c))
                    .ok_or_else(|| self.err(start, format!("unknown generator '{c}'")))?;
                vec![idx as Letter + 1]
            }
            Some(c) => return Err(self.err(self.pos, format!("unexpected character '{c}'"))),
            None => unreachable!("term called at end of input"),
        };
        loop {
            match self.peek() {
                Some('\'') => {
                    self.pos += 1;
                    body = body.iter().rev().map(|x| -x).collect();
                }
                Some('^') => {
                    let caret = self.pos;
                    self.pos += 1;
                    let k = self.exponent(caret)?;
                    let w = Word::new(body.iter().copied()).pow(k);
                    body = w.letters().to_vec();
                }
                _ => return Ok(body),
            }
        }
    }

    fn exponent(&mut self, caret: usize) -> Result<i64, ParseError> {
        self.skip_ws();
        let mut neg = false;
        if self.chars.get(self.pos) == Some(&'-') {
            neg = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.err(caret, "expected an integer exponent after '^'"));
        }
        let text: String = self.chars[digits_start..self.pos].iter().collect();
        let k: i64 = text
            .parse()
            .map_err(|_| self.err(digits_start, format!("exponent '{text}' out of range")))?;
        if k == 0 {
            return Err(self.err(caret, "zero exponent"));
        }
        if k > 1_000_000 {
            return Err(self.err(digits_start, format!("exponent '{text}' out of range")));
        }
        Ok(if neg { -k } else { k })
    }
}

/// Parses one relator expression against a list of generator names.
pub fn parse_word(text: &str, names: &[String], line: usize) -> Result<Word, ParseError> {
    let mut p = RelatorParser { chars: text.chars().collect(), pos: 0, line, names };
    let letters = p.expr(false)?;
    Ok(Word::new(letters))
}

/// Parses the presentation text format:
///
/// ```text
/// gens: a b
/// a^7
/// b^2
/// (ab)^3
/// (a^3 b a^5 b a^3 b)^2
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(gen_names) = &names else {
            let header = trimmed.strip_prefix("gens:").ok_or_else(|| ParseError {
                line: line_no,
                column: 1,
                message: "expected header 'gens: <names>'".into(),
            })?;
            let offset = line.find("gens:").unwrap_or(0) + 5;
            let mut list = Vec::new();
            for tok in header.split_whitespace() {
                let col = offset + header.find(tok).unwrap_or(0) + 1;
                if tok.len() != 1 || !tok.chars().all(|c| c.is_ascii_lowercase()) {
                    return Err(ParseError {
                        line: line_no,
                        column: col,
                        message: format!("generator name '{tok}' must be a single lowercase letter"),
                    });
                }
                if list.iter().any(|n: &String| n == tok) {
                    return Err(ParseError {
                        line: line_no,
                        column: col,
                        message: format!("duplicate generator '{tok}'"),
                    });
                }
                list.push(tok.to_string());
            }
            if list.is_empty() {
                return Err(ParseError {
                    line: line_no,
                    column: 1,
                    message: "no generators declared".into(),
                });
            }
            names = Some(list);
            continue;
        };
        let w = parse_word(line, gen_names, line_no)?.cyclically_reduce();
        if w.is_empty() {
            return Err(ParseError {
                line: line_no,
                column: line.len() - line.trim_start().len() + 1,
                message: "relator reduces to the empty word".into(),
            });
        }
        relators.push(w);
    }
    let names = names.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing 'gens:' header".into(),
    })?;
    Ok(Presentation::with_names(names, relators).expect("relators validated during parsing"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P504: &str = "gens: a b\na^7\nb^2\n(ab)^3\n(a^3 b a^5 b a^3 b)^2";

    #[test]
    fn parses_burnside_504() {
        let p = parse_presentation(P504).unwrap();
        assert_eq!(p.ngens(), 2);
        let lens: Vec<usize> = p.relators().iter().map(Word::len).collect();
        assert_eq!(lens, vec![7, 2, 6, 28]);
    }

    #[test]
    fn parses_pq_presentation() {
        let p = parse_presentation("gens: p q\np^3\nq^3\n(pq)^3").unwrap();
        assert_eq!(p.ngens(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.names(), &["p".to_string(), "q".to_string()]);
    }

    #[test]
    fn empty_relator_rejected() {
        let e = parse_presentation("gens: a\na a'").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("empty"));
    }

    #[test]
    fn error_positions() {
        let e = parse_presentation("gens: a b\n(ab^2").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_presentation("gens: a b\nab)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_presentation("gens: a b\na c").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_presentation("gens: a b\n\na^0").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        assert!(e.message.contains("zero exponent"));
        assert!(parse_presentation("a^2").is_err());
        assert!(parse_presentation("gens: ab").is_err());
    }

    #[test]
    fn inverse_and_negative_powers() {
        let names = default_names(2);
        let w = parse_word("(ab)'", &names, 1).unwrap();
        assert_eq!(w.letters(), &[-2, -1]);
        let w = parse_word("a^-2 b", &names, 1).unwrap();
        assert_eq!(w.letters(), &[-1, -1, 2]);
        let w = parse_word("b a b'", &names, 1).unwrap();
        assert_eq!(w.letters(), &[2, 1, -2]);
    }

    #[test]
    fn crlf_and_comments() {
        let p = parse_presentation("# cyclic\r\ngens: a\r\n\r\na^5\r\n").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 5);
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        let p = parse_presentation("gens: a b\nb a^3 b'").unwrap();
        assert_eq!(p.relators()[0].letters(), &[1, 1, 1]);
    }

    #[test]
    fn text_round_trip() {
        let p = parse_presentation(P504).unwrap();
        let q = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, q);
    }
}
