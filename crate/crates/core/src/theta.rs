//! The explicit lift for `(GL_n, GL_m)`, `n ≤ m`: the closed form, its
//! normalized variant, and an independent recursive computation that peels
//! one cuspidal point at a time.

use crate::boundary::{check_size, jh_classify, lower_exceptional, upper_exceptional, JHKind};
use crate::error::{Error, Result};
use crate::langlands::{left_strip, left_strippable, right_soc, right_strip, trivial_rep_data};
use crate::rat::Rat;
use crate::segments::{Multisegment, Point};

fn check(pi: &Multisegment, n: usize, m: usize) -> Result<()> {
    check_size(pi, n)?;
    if m < n {
        return Err(Error::UnsupportedRange { n, m });
    }
    Ok(())
}

fn half(k: usize) -> Rat {
    Rat::half(k as i64)
}

/// Lift in the unnormalized model: `m-n` characters `ν^{(-m+1)/2}, ...,
/// ν^{(m-2n-1)/2}` together with `ν^{(m-n)/2} π̃`.
pub fn theta_star(pi: &Multisegment, n: usize, m: usize) -> Result<Multisegment> {
    check(pi, n, m)?;
    let (n, m) = (n as i64, m as i64);
    let singles = (0..m - n).map(|j| Point::unr(Rat::half(-m + 1 + 2 * j)).to_segment());
    let shifted = pi.dual().twist(Rat::half(m - n));
    Ok(singles.chain(shifted.entries().iter().cloned()).collect())
}

/// Lift in the normalized model: trivial data of size `m-n` plus `π̃`.
pub fn theta_omega(pi: &Multisegment, n: usize, m: usize) -> Result<Multisegment> {
    check(pi, n, m)?;
    Ok(trivial_rep_data(m - n).union(&pi.dual()))
}

/// The normalized lift computed through the unnormalized one by the central
/// twists relating the two models.
pub fn convention_bridge(pi: &Multisegment, n: usize, m: usize) -> Result<Multisegment> {
    let lifted = theta_star(&pi.twist(half(m)), n, m)?;
    Ok(lifted.twist(half(n)))
}

/// True for the two points where the lower filtration factors can interfere.
/// When `m = n` the argument needs no exception.
pub fn is_exceptional(chi: &Point, n: usize, m: usize) -> bool {
    m != n && (*chi == lower_exceptional(n) || *chi == upper_exceptional(n, m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Strip `a` copies of a generic point and re-socle them on the partner.
    Generic { n: usize, m: usize, chi: Point, a: usize },
    /// Strip `a ≥ 0` copies of `ν^{(n+1)/2}`; the partner gains `a+1`
    /// characters `ν^{(m-2n-1)/2}`. With `a = 0` this is the only move left
    /// when `ν^{(2m-n+1)/2}` is the sole strippable point.
    Lower { n: usize, m: usize, a: usize },
    /// No reduction available: the closed form was used.
    Fallback { n: usize, m: usize },
    Base { m: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Recursion {
    pub result: Multisegment,
    pub trace: Vec<Step>,
    pub generic_steps: usize,
    pub lower_steps: usize,
    /// Lower steps taken from an instance whose only strippable point was
    /// `ν^{(2m-n+1)/2}`.
    pub upper_only_steps: usize,
    /// Times the closed form had to stand in for a reduction.
    pub fallbacks: usize,
}

impl Recursion {
    pub fn exceptional_steps(&self) -> usize {
        self.lower_steps + self.fallbacks
    }
}

pub fn theta_recursive(pi: &Multisegment, n: usize, m: usize) -> Result<Multisegment> {
    Ok(theta_recursive_traced(pi, n, m)?.result)
}

pub fn theta_recursive_traced(pi: &Multisegment, n: usize, m: usize) -> Result<Recursion> {
    check(pi, n, m)?;
    let mut rec = Recursion::default();
    rec.result = descend(pi, n, m, &mut rec)?;
    Ok(rec)
}

/// Generic points first, highest coordinate first, unramified line last.
fn pick_generic(points: &[Point], n: usize, m: usize) -> Option<&Point> {
    points
        .iter()
        .filter(|p| !is_exceptional(p, n, m))
        .min_by(|x, y| {
            (x.cusp.is_unr(), -x.at, x.cusp.name()).cmp(&(y.cusp.is_unr(), -y.at, y.cusp.name()))
        })
}

fn descend(pi: &Multisegment, n: usize, m: usize, rec: &mut Recursion) -> Result<Multisegment> {
    if n == 0 {
        rec.trace.push(Step::Base { m });
        return theta_star(pi, 0, m);
    }
    let points = left_strippable(pi);
    if points.is_empty() {
        return Err(Error::NoStrippablePoint(n));
    }

    if let Some(chi) = pick_generic(&points, n, m) {
        let (a, rho) = left_strip(chi, pi);
        let ra = chi.cusp.deg() * a;
        rec.trace.push(Step::Generic { n, m, chi: chi.clone(), a });
        rec.generic_steps += 1;
        let shift = half(ra);
        let inner = descend(&rho.twist(-shift), n - ra, m - ra, rec)?;
        let target = Point::new(chi.cusp.dual(), half(m - n) - chi.at);
        let mut out = inner.twist(-shift);
        for _ in 0..a {
            out = right_soc(&out, &target);
        }
        return Ok(out);
    }

    // every strippable point is exceptional, so m > n; partners then
    // satisfy b = a + 1 for the lower point, including when a = 0
    if m > n {
        let (a, rho) = left_strip(&lower_exceptional(n), pi);
        rec.trace.push(Step::Lower { n, m, a });
        rec.lower_steps += 1;
        if a == 0 {
            rec.upper_only_steps += 1;
        }
        let inner = descend(&rho.twist(-half(a) - Rat::ONE), n - a, m - a - 1, rec)?;
        let target = Point::unr(Rat::half(m as i64 - 2 * n as i64 - 1));
        let mut out = inner.twist(-half(a + 1));
        for _ in 0..=a {
            out = right_soc(&out, &target);
        }
        return Ok(out);
    }

    rec.trace.push(Step::Fallback { n, m });
    rec.fallbacks += 1;
    theta_star(pi, n, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub n: usize,
    pub m: usize,
    pub a: usize,
    /// `ν^{-ra/2} ρ`.
    pub rho: Multisegment,
    /// `ν^{ra/2} ρ'`.
    pub rho_prime: Multisegment,
}

/// Strip `χ` from `π` and `ν^{(m-n)/2} χ̃` from `π'`, returning the smaller
/// instance the pair must again satisfy. Partners always strip equally often.
pub fn reduce_instance(
    pi: &Multisegment,
    pi_prime: &Multisegment,
    n: usize,
    m: usize,
    chi: &Point,
) -> Result<Reduction> {
    check(pi, n, m)?;
    check_size(pi_prime, m)?;
    if is_exceptional(chi, n, m) {
        return Err(Error::ExceptionalPoint(chi.at));
    }
    let (a, rho) = left_strip(chi, pi);
    let target = Point::new(chi.cusp.dual(), half(m - n) - chi.at);
    let (b, rho_prime) = right_strip(pi_prime, &target);
    if a != b {
        return Err(Error::StripMismatch { a, b });
    }
    let ra = chi.cusp.deg() * a;
    Ok(Reduction {
        n: n - ra,
        m: m - ra,
        a,
        rho: rho.twist(-half(ra)),
        rho_prime: rho_prime.twist(half(ra)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVerdict {
    pub partner: Multisegment,
    /// `(-m-1)/2`: every begin of an H-type partner would have to sit at or below it.
    pub bound: Rat,
    /// Least begin of the partner above the bound.
    pub witness: Option<Rat>,
}

impl HVerdict {
    pub fn impossible(&self) -> bool {
        self.witness.is_some()
    }
}

/// For `π` whose only strippable point is `ν^{(2m-n+1)/2}`, shows that the
/// partner violates the constraint such a configuration would impose.
pub fn check_h_nonexistence(pi: &Multisegment, n: usize, m: usize) -> Result<HVerdict> {
    check(pi, n, m)?;
    if m <= n || jh_classify(pi, n, m)?.class != JHKind::H {
        return Err(Error::NotHClass { n, m });
    }
    let partner = theta_star(pi, n, m)?;
    let bound = Rat::half(-(m as i64) - 1);
    let witness = partner.iter().map(|s| s.begin()).filter(|&b| b > bound).min();
    Ok(HVerdict { partner, bound, witness })
}
