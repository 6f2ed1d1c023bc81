//! Boundary membership and the exceptional-point classification.

use crate::error::{Error, Result};
use crate::langlands::left_strippable;
use crate::rat::Rat;
use crate::segments::{Multisegment, Point};

/// The unramified point `ν^{(-n+2k+1)/2}` whose Jacquet factor a boundary
/// contribution of rank `k` would force.
pub fn boundary_cuspidal(k: usize, n: usize) -> Result<Point> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("boundary rank k={k} exceeds n={n}")));
    }
    Ok(Point::unr(Rat::half(2 * k as i64 - n as i64 + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryProbe {
    pub k: usize,
    pub test_point: Point,
    pub possible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryReport {
    /// True when no rank `k < n` piece can reach the representation.
    pub excluded: bool,
    pub per_k: Vec<BoundaryProbe>,
}

pub(crate) fn check_size(pi: &Multisegment, n: usize) -> Result<()> {
    let found = pi.group_size();
    if found != n {
        return Err(Error::SizeMismatch { expected: n, found });
    }
    Ok(())
}

pub fn boundary_excluded(pi: &Multisegment, n: usize, _m: usize) -> Result<BoundaryReport> {
    check_size(pi, n)?;
    let strippable = left_strippable(pi);
    let per_k: Vec<BoundaryProbe> = (0..n)
        .map(|k| {
            let test_point = boundary_cuspidal(k, n).expect("k < n");
            let possible = strippable.contains(&test_point);
            BoundaryProbe { k, test_point, possible }
        })
        .collect();
    let excluded = per_k.iter().all(|p| !p.possible);
    Ok(BoundaryReport { excluded, per_k })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JHKind {
    Generic,
    /// Every strippable point is one of the two exceptional points.
    J,
    /// Every strippable point is the upper exceptional point.
    H,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JHClass {
    pub class: JHKind,
    pub strippable: Vec<Point>,
}

/// `ν^{(n+1)/2}`: the point where the lower filtration factor also contributes.
pub fn lower_exceptional(n: usize) -> Point {
    Point::unr(Rat::half(n as i64 + 1))
}

/// `ν^{(2m-n+1)/2}`.
pub fn upper_exceptional(n: usize, m: usize) -> Point {
    Point::unr(Rat::half(2 * m as i64 - n as i64 + 1))
}

pub fn jh_classify(pi: &Multisegment, n: usize, m: usize) -> Result<JHClass> {
    check_size(pi, n)?;
    let strippable = left_strippable(pi);
    let upper = upper_exceptional(n, m);
    let lower = lower_exceptional(n);
    let class = if strippable.iter().all(|p| *p == upper) {
        JHKind::H
    } else if strippable.iter().all(|p| *p == upper || *p == lower) {
        JHKind::J
    } else {
        JHKind::Generic
    };
    Ok(JHClass { class, strippable })
}
