//! Cuspidal labels, segments on a ν-line and multisegments.
//!
//! A segment is an arithmetic progression `begin, begin+1, ..., end` of
//! exponents over a unitary cuspidal label. A multisegment is kept in the
//! canonical order (begin descending, end descending, label name ascending),
//! which is also the ranged order used to form standard modules.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// An abstract unitary cuspidal representation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspLabel {
    name: String,
    deg: usize,
    dual_name: String,
}

impl CuspLabel {
    pub const UNR_NAME: &'static str = "1";

    pub fn new(name: impl Into<String>, deg: usize, dual_name: impl Into<String>) -> CuspLabel {
        assert!(deg > 0, "cuspidal degree must be positive");
        CuspLabel { name: name.into(), deg, dual_name: dual_name.into() }
    }

    /// The trivial character of G_1; its twists are the unramified ν-line.
    pub fn unr() -> CuspLabel {
        CuspLabel::new(Self::UNR_NAME, 1, Self::UNR_NAME)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn dual_name(&self) -> &str {
        &self.dual_name
    }

    pub fn is_unr(&self) -> bool {
        self.name == Self::UNR_NAME
    }

    pub fn is_self_dual(&self) -> bool {
        self.name == self.dual_name
    }

    pub fn dual(&self) -> CuspLabel {
        CuspLabel { name: self.dual_name.clone(), deg: self.deg, dual_name: self.name.clone() }
    }
}

impl fmt::Debug for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.name, self.deg, self.dual_name)
    }
}

/// A cuspidal point `ν^at · cusp`, i.e. a segment of length one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub cusp: CuspLabel,
    pub at: Rat,
}

impl Point {
    pub fn new(cusp: CuspLabel, at: Rat) -> Point {
        Point { cusp, at }
    }

    pub fn unr(at: impl Into<Rat>) -> Point {
        Point::new(CuspLabel::unr(), at.into())
    }

    pub fn dual(&self) -> Point {
        Point::new(self.cusp.dual(), -self.at)
    }

    pub fn twist(&self, k: Rat) -> Point {
        Point::new(self.cusp.clone(), self.at + k)
    }

    pub fn to_segment(&self) -> Segment {
        Segment { cusp: self.cusp.clone(), begin: self.at, end: self.at }
    }

    pub fn line(&self) -> (&str, Rat) {
        (self.cusp.name(), self.at.fract())
    }
}

impl TryFrom<&Segment> for Point {
    type Error = Error;

    fn try_from(s: &Segment) -> Result<Point> {
        if s.begin != s.end {
            return Err(Error::NotAPoint(s.length()));
        }
        Ok(Point::new(s.cusp.clone(), s.begin))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    cusp: CuspLabel,
    begin: Rat,
    end: Rat,
}

impl Segment {
    pub fn new(cusp: CuspLabel, begin: Rat, end: Rat) -> Result<Segment> {
        let len = end - begin;
        if !len.is_integer() || len < Rat::ZERO {
            return Err(Error::BadSegment { begin, end });
        }
        Ok(Segment { cusp, begin, end })
    }

    pub fn unr(begin: impl Into<Rat>, end: impl Into<Rat>) -> Result<Segment> {
        Segment::new(CuspLabel::unr(), begin.into(), end.into())
    }

    pub fn cusp(&self) -> &CuspLabel {
        &self.cusp
    }

    pub fn begin(&self) -> Rat {
        self.begin
    }

    pub fn end(&self) -> Rat {
        self.end
    }

    /// Number of cuspidal points, `end - begin + 1`.
    pub fn length(&self) -> Rat {
        self.end - self.begin + Rat::ONE
    }

    pub fn len(&self) -> usize {
        self.length().to_integer().expect("segment length is integral") as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Size of the general linear group this segment lives on.
    pub fn group_size(&self) -> usize {
        self.len() * self.cusp.deg
    }

    /// `(name, begin mod 1)`: segments on different lines never interact.
    pub fn line(&self) -> (&str, Rat) {
        (self.cusp.name(), self.begin.fract())
    }

    pub fn dual(&self) -> Segment {
        Segment { cusp: self.cusp.dual(), begin: -self.end, end: -self.begin }
    }

    pub fn twist(&self, k: Rat) -> Segment {
        Segment { cusp: self.cusp.clone(), begin: self.begin + k, end: self.end + k }
    }

    /// Segment with a new end; `None` when it would be empty.
    pub(crate) fn with_end(&self, end: Rat) -> Option<Segment> {
        (end >= self.begin).then(|| Segment { cusp: self.cusp.clone(), begin: self.begin, end })
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.begin == self.end {
            write!(f, "[{}]", self.begin)?;
        } else {
            write!(f, "[{}..{}]", self.begin, self.end)?;
        }
        if !self.cusp.is_unr() {
            write!(f, "@{}", self.cusp.name)?;
        }
        Ok(())
    }
}

/// Begin descending, then end descending, then label name ascending.
pub fn canonical_cmp(a: &Segment, b: &Segment) -> Ordering {
    b.begin
        .cmp(&a.begin)
        .then_with(|| b.end.cmp(&a.end))
        .then_with(|| a.cusp.cmp(&b.cusp))
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(self, other)
    }
}

pub fn dual_segment(s: &Segment) -> Segment {
    s.dual()
}

pub fn twist_segment(s: &Segment, k: Rat) -> Segment {
    s.twist(k)
}

/// Finite multiset of segments, stored in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Multisegment {
    entries: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut entries: Vec<Segment>) -> Multisegment {
        entries.sort();
        Multisegment { entries }
    }

    pub fn empty() -> Multisegment {
        Multisegment::default()
    }

    pub fn entries(&self) -> &[Segment] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, s: Segment) {
        let pos = self.entries.partition_point(|e| e <= &s);
        self.entries.insert(pos, s);
    }

    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Multisegment::new(entries)
    }

    pub fn group_size(&self) -> usize {
        self.entries.iter().map(Segment::group_size).sum()
    }

    pub fn dual(&self) -> Multisegment {
        Multisegment::new(self.entries.iter().map(Segment::dual).collect())
    }

    pub fn twist(&self, k: Rat) -> Multisegment {
        // a common shift preserves the canonical order
        Multisegment { entries: self.entries.iter().map(|s| s.twist(k)).collect() }
    }

    /// Segments lying on the same line as `p`, in ranged order.
    pub fn on_line<'a>(&'a self, p: &'a Point) -> impl Iterator<Item = &'a Segment> + 'a {
        self.entries.iter().filter(move |s| s.line() == p.line())
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Multisegment {
    type Item = &'a Segment;
    type IntoIter = std::slice::Iter<'a, Segment>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s:?}")?;
        }
        f.write_str("}")
    }
}

pub fn dual_multisegment(m: &Multisegment) -> Multisegment {
    m.dual()
}

pub fn twist_multisegment(m: &Multisegment, k: Rat) -> Multisegment {
    m.twist(k)
}

pub fn group_size(m: &Multisegment) -> usize {
    m.group_size()
}

/// Entries as `Δ_1, ..., Δ_N` with non-increasing begins.
pub fn ranged_sort(m: &Multisegment) -> Vec<Segment> {
    m.entries.clone()
}

/// Necessary condition for `Jac_χ ≠ 0`: `χ ≥ e(Δ_N)` on χ's line, where
/// `Δ_N` is the last segment there in ranged order.
///
/// The bound only looks at the segment with the smallest begin; a short
/// segment nested inside a longer one can still be a Jacquet point below it
/// (`{[0..2],[1]}` at `ν^1`).
pub fn jac_left_necessary(m: &Multisegment, chi: &Point) -> bool {
    match m.on_line(chi).last() {
        Some(last) => chi.at >= last.end(),
        None => false,
    }
}

/// Mirror bound for right Jacquet points: `χ ≤ b(Δ_1)` on χ's line.
pub fn jac_right_necessary(m: &Multisegment, chi: &Point) -> bool {
    match m.on_line(chi).next() {
        Some(first) => chi.at <= first.begin(),
        None => false,
    }
}
