//! Langlands data: standard-module orderings, and the strip/socle rules for a
//! product of a cuspidal point with `⟨M⟩^t`.
//!
//! Stripping and socles use the bracket rule. Fix a point `x` on a line and
//! list the segments ending at `x` (closers) and at `x-1` (openers) by
//! increasing begin, closers before openers on equal begins. Every closer is
//! matched with the nearest unmatched opener to its left, i.e. with a linked
//! `(x-1)`-segment that starts strictly earlier. Only unmatched closers can be
//! stripped, and a socle turns the leftmost unmatched opener into a closer.
//! Counting every segment ending at `x` is not enough: `[1..2]` next to `[1]`
//! is fine, but `{[1], [2]}` has no left Jacquet factor `ν^2`.

use std::cmp::Ordering;

use crate::rat::Rat;
use crate::segments::{canonical_cmp, Multisegment, Point, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Begins non-increasing (the standard-module order used throughout).
    Ranged,
    /// Square-integrabilizing twists non-increasing.
    Alpha,
}

/// `⟨Δ_1, ..., Δ_N⟩^t`; only the multiset matters, the convention only
/// changes how the factors are listed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LanglandsDatum {
    pub data: Multisegment,
    pub convention: Convention,
}

impl LanglandsDatum {
    pub fn new(data: Multisegment, convention: Convention) -> LanglandsDatum {
        LanglandsDatum { data, convention }
    }

    pub fn factors(&self) -> Vec<Segment> {
        match self.convention {
            Convention::Ranged => self.data.entries().to_vec(),
            Convention::Alpha => alpha_order(&self.data),
        }
    }
}

/// The twist making `Δ` square-integrable: `-(b + e) / 2`.
pub fn alpha(s: &Segment) -> Rat {
    -(s.begin() + s.end()).halve()
}

pub fn alpha_order(m: &Multisegment) -> Vec<Segment> {
    let mut v = m.entries().to_vec();
    v.sort_by(|x, y| alpha(y).cmp(&alpha(x)).then_with(|| canonical_cmp(x, y)));
    v
}

struct Matching {
    /// Entry indices of closers (end = x) left unmatched.
    closers: Vec<usize>,
    /// Entry indices of openers (end = x-1) left unmatched, by increasing begin.
    openers: Vec<usize>,
}

fn match_left(chi: &Point, m: &Multisegment) -> Matching {
    let prev = chi.at - Rat::ONE;
    // (begin, is_opener, index); closers sort first on equal begins
    let mut seq: Vec<(Rat, bool, usize)> = m
        .iter()
        .enumerate()
        .filter(|(_, s)| s.cusp() == &chi.cusp)
        .filter_map(|(i, s)| {
            if s.end() == chi.at {
                Some((s.begin(), false, i))
            } else if s.end() == prev {
                Some((s.begin(), true, i))
            } else {
                None
            }
        })
        .collect();
    seq.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut open: Vec<usize> = Vec::new();
    let mut closers = Vec::new();
    for (_, is_opener, i) in seq {
        if is_opener {
            open.push(i);
        } else if open.pop().is_none() {
            closers.push(i);
        }
    }
    Matching { closers, openers: open }
}

/// Largest `a` with `⟨M⟩^t ↪ χ × ... × χ × ρ`, and the remainder `ρ`.
pub fn left_strip(chi: &Point, m: &Multisegment) -> (usize, Multisegment) {
    let matching = match_left(chi, m);
    if matching.closers.is_empty() {
        return (0, m.clone());
    }
    let rest = m
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            if matching.closers.contains(&i) {
                s.with_end(s.end() - Rat::ONE)
            } else {
                Some(s.clone())
            }
        })
        .collect();
    (matching.closers.len(), rest)
}

/// Number of times `χ` can be split off on the left.
pub fn left_strip_count(chi: &Point, m: &Multisegment) -> usize {
    match_left(chi, m).closers.len()
}

/// Data of the unique irreducible subrepresentation of `χ × ⟨M⟩^t`.
pub fn left_soc(chi: &Point, m: &Multisegment) -> Multisegment {
    let matching = match_left(chi, m);
    let mut entries = m.entries().to_vec();
    match matching.openers.first() {
        Some(&i) => {
            entries[i] = entries[i].with_end(chi.at).expect("extension is non-empty");
        }
        None => entries.push(chi.to_segment()),
    }
    Multisegment::new(entries)
}

/// Mirror of [`left_strip`] through the contragredient.
pub fn right_strip(m: &Multisegment, chi: &Point) -> (usize, Multisegment) {
    let (a, rest) = left_strip(&chi.dual(), &m.dual());
    (a, rest.dual())
}

pub fn right_strip_count(m: &Multisegment, chi: &Point) -> usize {
    left_strip_count(&chi.dual(), &m.dual())
}

/// Data of the unique irreducible subrepresentation of `⟨M⟩^t × χ`.
pub fn right_soc(m: &Multisegment, chi: &Point) -> Multisegment {
    left_soc(&chi.dual(), &m.dual()).dual()
}

fn strippable(m: &Multisegment, endpoint: impl Fn(&Segment) -> Rat, count: impl Fn(&Point) -> usize) -> Vec<Point> {
    let mut pts: Vec<Point> = m.iter().map(|s| Point::new(s.cusp().clone(), endpoint(s))).collect();
    pts.sort_by(point_cmp);
    pts.dedup();
    pts.retain(|p| count(p) > 0);
    pts
}

/// Cuspidal points `χ` with `Jac_χ ≠ 0` in the strip model.
pub fn left_strippable(m: &Multisegment) -> Vec<Point> {
    strippable(m, Segment::end, |p| left_strip_count(p, m))
}

/// Cuspidal points splittable off on the right.
pub fn right_strippable(m: &Multisegment) -> Vec<Point> {
    strippable(m, Segment::begin, |p| right_strip_count(m, p))
}

/// Coordinate descending, then label name.
pub fn point_cmp(x: &Point, y: &Point) -> Ordering {
    y.at.cmp(&x.at).then_with(|| x.cusp.cmp(&y.cusp))
}

/// Singletons at `-(k-1)/2, ..., (k-1)/2`: the trivial representation of `G_k`.
pub fn trivial_rep_data(k: usize) -> Multisegment {
    let k = k as i64;
    (0..k)
        .map(|j| Point::unr(Rat::half(-(k - 1) + 2 * j)).to_segment())
        .collect()
}
