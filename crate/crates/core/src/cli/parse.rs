//! Multisegment expressions:
//!
//! ```text
//! multisegment := "{" [ seg ("," seg)* ] "}"
//! seg          := "[" rat [ ".." rat ] "]" [ "@" name ]
//! rat          := ["-"] digits [ "/" digits ]
//! ```
//!
//! Whitespace between tokens is ignored.

use std::collections::BTreeMap;

use crate::rat::Rat;
use crate::segments::{CuspLabel, Multisegment, Point, Segment};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown label {name:?} at {pos}")]
    UnknownLabel { pos: usize, name: String },
    #[error("segment at {pos}: length from {begin} to {end} is not a non-negative integer")]
    BadLength { pos: usize, begin: Rat, end: Rat },
    #[error("bad label declaration {0:?}: expected name:deg:dualname")]
    BadDeclaration(String),
    #[error("label {0:?} declared twice with different data")]
    Conflict(String),
}

/// Declared cuspidal labels; the unramified label is always present.
#[derive(Clone, Debug)]
pub struct LabelSet {
    labels: BTreeMap<String, CuspLabel>,
}

impl Default for LabelSet {
    fn default() -> Self {
        let unr = CuspLabel::unr();
        LabelSet { labels: BTreeMap::from([(unr.name().to_string(), unr)]) }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl LabelSet {
    fn add(&mut self, label: CuspLabel) -> Result<(), ParseError> {
        match self.labels.get(label.name()) {
            Some(old) if *old != label => Err(ParseError::Conflict(label.name().to_string())),
            Some(_) => Ok(()),
            None => {
                self.labels.insert(label.name().to_string(), label);
                Ok(())
            }
        }
    }

    /// Registers `name:deg:dualname` together with its dual.
    pub fn declare(&mut self, decl: &str) -> Result<CuspLabel, ParseError> {
        let bad = || ParseError::BadDeclaration(decl.to_string());
        let parts: Vec<&str> = decl.split(':').map(str::trim).collect();
        let [name, deg, dual] = parts[..] else { return Err(bad()) };
        let valid = |s: &str| !s.is_empty() && s.chars().all(is_name_char);
        let deg: usize = deg.parse().map_err(|_| bad())?;
        if !valid(name) || !valid(dual) || deg == 0 {
            return Err(bad());
        }
        let label = CuspLabel::new(name, deg, dual);
        self.add(label.clone())?;
        self.add(label.dual())?;
        Ok(label)
    }

    pub fn get(&self, name: &str) -> Option<&CuspLabel> {
        self.labels.get(name)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    fn error(&self, msg: String) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn rat(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        self.skip_ws();
        let p = self.take_while(|c| c.is_ascii_digit());
        if p.is_empty() {
            return Err(ParseError::Syntax { pos: start, msg: "expected a rational".into() });
        }
        let mut text = format!("{}{p}", if neg { "-" } else { "" });
        if self.eat("/") {
            self.skip_ws();
            let q = self.take_while(|c| c.is_ascii_digit());
            text.push('/');
            text.push_str(q);
        }
        text.parse()
            .map_err(|e: crate::rat::ParseRatError| ParseError::Syntax { pos: start, msg: e.to_string() })
    }

    fn label(&mut self, labels: &LabelSet) -> Result<CuspLabel, ParseError> {
        if !self.eat("@") {
            return Ok(CuspLabel::unr());
        }
        self.skip_ws();
        let pos = self.pos;
        let name = self.take_while(is_name_char);
        if name.is_empty() {
            return Err(self.error("expected a label name".into()));
        }
        labels
            .get(name)
            .cloned()
            .ok_or_else(|| ParseError::UnknownLabel { pos, name: name.to_string() })
    }

    fn segment(&mut self, labels: &LabelSet) -> Result<Segment, ParseError> {
        self.skip_ws();
        let pos = self.pos;
        self.expect("[")?;
        let begin = self.rat()?;
        let end = if self.eat("..") { self.rat()? } else { begin };
        self.expect("]")?;
        let cusp = self.label(labels)?;
        Segment::new(cusp, begin, end).map_err(|_| ParseError::BadLength { pos, begin, end })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error("trailing input".into()));
        }
        Ok(())
    }
}

pub fn parse_multisegment(text: &str, labels: &LabelSet) -> Result<Multisegment, ParseError> {
    let mut cur = Cursor { src: text, pos: 0 };
    cur.expect("{")?;
    let mut entries = Vec::new();
    if !cur.eat("}") {
        loop {
            entries.push(cur.segment(labels)?);
            if cur.eat("}") {
                break;
            }
            cur.expect(",")?;
        }
    }
    cur.finish()?;
    Ok(Multisegment::new(entries))
}

/// A cuspidal point `rat [@name]`.
pub fn parse_point(text: &str, labels: &LabelSet) -> Result<Point, ParseError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let at = cur.rat()?;
    let cusp = cur.label(labels)?;
    cur.finish()?;
    Ok(Point::new(cusp, at))
}
