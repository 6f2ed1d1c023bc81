//! Exhaustive enumeration of small multisegments, for the self-test harness
//! and the property suites.

use crate::rat::Rat;
use crate::segments::{CuspLabel, Multisegment, Point, Segment};

/// Every segment on `cusp` with both ends in `{-w, -w+1/2, ..., w}`.
pub fn segments_in_window(cusp: &CuspLabel, window: Rat) -> Vec<Segment> {
    let lo = -window;
    let mut grid = Vec::new();
    let mut x = lo;
    while x <= window {
        grid.push(x);
        x = x + Rat::half(1);
    }
    let mut out = Vec::new();
    for &b in &grid {
        let mut e = b;
        while e <= window {
            out.push(Segment::new(cusp.clone(), b, e).expect("integral length"));
            e = e + Rat::ONE;
        }
    }
    out
}

/// All multisets drawn from `pool` of total group size at most `max_size`,
/// the empty one included, grouped by nothing in particular.
pub fn multisets(pool: &[Segment], max_size: usize) -> Vec<Multisegment> {
    fn go(pool: &[Segment], from: usize, room: usize, cur: &mut Vec<Segment>, out: &mut Vec<Multisegment>) {
        out.push(Multisegment::new(cur.clone()));
        for j in from..pool.len() {
            let size = pool[j].group_size();
            if size <= room {
                cur.push(pool[j].clone());
                go(pool, j, room - size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(pool, 0, max_size, &mut Vec::new(), &mut out);
    out.sort_by_key(|m| m.group_size());
    out
}

/// Unramified multisegments with group size `≤ max_n` and ends in the window.
pub fn unr_multisegments(max_n: usize, window: Rat) -> Vec<Multisegment> {
    multisets(&segments_in_window(&CuspLabel::unr(), window), max_n)
}

/// A small mixed set: a non-self-dual degree-2 label, a self-dual degree-1
/// ramified label, and their combinations with unramified points.
pub fn labeled_samples(max_n: usize) -> Vec<Multisegment> {
    let rho = CuspLabel::new("rho", 2, "rhov");
    let chi = CuspLabel::new("chi", 1, "chi");
    let mut pool = Vec::new();
    for x in [-1, 0, 1] {
        pool.push(Point::new(rho.clone(), Rat::half(x)).to_segment());
        pool.push(Point::new(chi.clone(), Rat::int(x)).to_segment());
    }
    pool.push(Segment::new(chi, Rat::ZERO, Rat::ONE).expect("valid"));
    pool.push(Point::unr(0).to_segment());
    pool.push(Point::unr(1).to_segment());
    multisets(&pool, max_n)
        .into_iter()
        .filter(|m| m.iter().any(|s| !s.cusp().is_unr()))
        .collect()
}
