use thiserror::Error;

use super::{Identity, Var, Word, MAX_WORD_LEN};

/// Positions are byte offsets into the parsed line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: expected {expected}")]
    Syntax {
        position: usize,
        expected: &'static str,
    },
    #[error("empty word at {position}")]
    EmptyWord { position: usize },
    #[error("bad exponent {value} at {position}: exponents are positive integers")]
    BadExponent { position: usize, value: String },
    #[error("word starting at {position} exceeds {MAX_WORD_LEN} letters")]
    TooLong { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct IdentityFileError {
    pub line: usize,
    pub error: ParseError,
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        // Comments run to the end of the line.
        let end = text.find('#').unwrap_or(text.len());
        Cursor {
            text: &text.as_bytes()[..end],
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected,
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(b'a'..=b'z') => self.pos += 1,
            _ => return Err(self.syntax("variable")),
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_lowercase() || b.is_ascii_digit()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii slice");
        Ok(Var::new(name))
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("exponent digits"));
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii slice");
        match digits.parse::<usize>() {
            Ok(0) => Err(ParseError::BadExponent {
                position: start,
                value: digits.to_string(),
            }),
            Ok(k) if k <= MAX_WORD_LEN => Ok(k),
            _ => Err(ParseError::TooLong { position: start }),
        }
    }

    /// A word, stopping before `=` or the end of input.
    fn word(&mut self) -> Result<Word, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.at_end() || self.peek() == Some(b'=') {
            return Err(ParseError::EmptyWord { position: start });
        }
        let mut letters: Vec<Var> = Vec::new();
        loop {
            let v = self.var()?;
            let mut k = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                k = self.exponent()?;
            }
            if letters.len() + k > MAX_WORD_LEN {
                return Err(ParseError::TooLong { position: start });
            }
            letters.extend(std::iter::repeat_n(v, k));

            let spaced = self.skip_ws();
            match self.peek() {
                None | Some(b'=') => break,
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(_) if spaced => {}
                Some(_) => return Err(self.syntax("'*', whitespace, '=' or end of input")),
            }
        }
        Ok(Word::new(letters).expect("at least one factor parsed"))
    }
}

pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut c = Cursor::new(text);
    let w = c.word()?;
    if !c.at_end() {
        return Err(c.syntax("end of word"));
    }
    Ok(w)
}

pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut c = Cursor::new(text);
    let lhs = c.word()?;
    if c.peek() != Some(b'=') {
        return Err(c.syntax("'='"));
    }
    c.pos += 1;
    c.skip_ws();
    if c.peek() == Some(b'0') {
        c.pos += 1;
        c.skip_ws();
        if !c.at_end() {
            return Err(c.syntax("end of identity after '0'"));
        }
        return Ok(Identity::Zero(lhs));
    }
    let rhs = c.word()?;
    if !c.at_end() {
        return Err(c.syntax("end of identity"));
    }
    Ok(Identity::Pair(lhs, rhs))
}

/// One identity per line; blank and comment-only lines are skipped.
/// Line numbers in errors are 1-based.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>, IdentityFileError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_identity(line).map_err(|error| IdentityFileError { line: i + 1, error })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(names: &[&str]) -> Word {
        Word::new(names.iter().map(|n| Var::new(n)).collect()).unwrap()
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("x*y*x").unwrap(), word(&["x", "y", "x"]));
        assert_eq!(parse_word("  x y\tx ").unwrap(), word(&["x", "y", "x"]));
        assert_eq!(parse_word("x^3").unwrap(), word(&["x", "x", "x"]));
        assert_eq!(parse_word("ab1 * c").unwrap(), word(&["ab1", "c"]));
        // No separator: one variable.
        assert_eq!(parse_word("xy").unwrap(), word(&["xy"]));
    }

    #[test]
    fn identities() {
        assert_eq!(
            parse_identity("x^2*y = 0").unwrap(),
            Identity::Zero(word(&["x", "x", "y"]))
        );
        assert_eq!(
            parse_identity("x1*x2 = x2*x1").unwrap(),
            Identity::Pair(word(&["x1", "x2"]), word(&["x2", "x1"]))
        );
        assert_eq!(
            parse_identity("x = x^2   # idempotent").unwrap(),
            Identity::Pair(word(&["x"]), word(&["x", "x"]))
        );
    }

    #[test]
    fn errors() {
        assert_eq!(parse_word(""), Err(ParseError::EmptyWord { position: 0 }));
        assert_eq!(parse_identity(" = y"), Err(ParseError::EmptyWord { position: 1 }));
        assert_eq!(parse_identity("x = "), Err(ParseError::EmptyWord { position: 4 }));
        assert!(matches!(
            parse_word("x^0"),
            Err(ParseError::BadExponent { position: 2, .. })
        ));
        assert!(matches!(parse_word("x**y"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_word("x*"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_word("X"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse_word("x^"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_word("x ^2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_identity("0 = x"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse_identity("x = 0 y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_identity("x = y = z"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_identity("x y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_word("x^99999999999999999999"),
            Err(ParseError::TooLong { .. })
        ));
        assert!(matches!(parse_word("x^40000*y^40000"), Err(ParseError::TooLong { .. })));
    }

    #[test]
    fn files() {
        let text = "# the variety W\nx^2*y = 0\n\n  x*y = y*x # commutative\n";
        let ids = parse_identities(text).unwrap();
        assert_eq!(ids.len(), 2);
        let err = parse_identities("x = y\nx = \n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
