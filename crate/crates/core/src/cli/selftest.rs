//! Exhaustive self-test over a bounded family of instances.
//!
//! Instances are sharded across a rayon pool; every suite keeps the
//! counterexample with the smallest case key, so the report does not depend
//! on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::boundary::{boundary_excluded, jh_classify, JHKind};
use crate::cli::parse::{parse_multisegment, LabelSet};
use crate::cli::render::multisegment_text;
use crate::enumerate::{labeled_samples, unr_multisegments};
use crate::error::Result;
use crate::kudla::{derive_xi, jacquet_factors, lima_classifier_left, lima_classifier_right, FiltrationFactor, Side};
use crate::langlands::left_strippable;
use crate::rat::Rat;
use crate::segments::{Multisegment, Point};
use crate::theta::{
    check_h_nonexistence, convention_bridge, is_exceptional, reduce_instance, theta_omega, theta_recursive_traced,
    theta_star,
};

/// Source of the stored exponent tables; swappable so the harness itself
/// can be checked against a corrupted table.
pub type XiSource = fn(usize, usize, usize, Side) -> Result<Vec<FiltrationFactor>>;

#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_n: usize,
    /// Coordinates range over `{-window, ..., window}` in steps of 1/2.
    pub window: Rat,
    pub max_gap: usize,
    pub jobs: Option<usize>,
}

pub const SUITES: [&str; 10] = [
    "duality",
    "degree",
    "bridge",
    "recursion",
    "xi-reconstruction",
    "lima",
    "reduction",
    "h-nonexistence",
    "boundary-shadow",
    "round-trip",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteResult {
    pub cases: usize,
    pub failures: usize,
    /// Cases seen but outside the suite's hypothesis (e.g. fallback paths).
    pub skipped: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn merge(mut self, other: SuiteResult) -> SuiteResult {
        self.cases += other.cases;
        self.failures += other.failures;
        self.skipped += other.skipped;
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suites: BTreeMap<&'static str, SuiteResult>,
}

impl Report {
    fn record(&mut self, suite: &'static str, ok: bool, key: impl FnOnce() -> String) {
        let r = self.suites.entry(suite).or_default();
        r.cases += 1;
        if !ok {
            r.failures += 1;
            let k = key();
            r.first_failure = Some(match r.first_failure.take() {
                Some(old) => old.min(k),
                None => k,
            });
        }
    }

    fn skip(&mut self, suite: &'static str) {
        self.suites.entry(suite).or_default().skipped += 1;
    }

    fn merge(mut self, other: Report) -> Report {
        for (k, v) in other.suites {
            let cur = self.suites.remove(k).unwrap_or_default();
            self.suites.insert(k, cur.merge(v));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.suites.values().all(SuiteResult::passed)
    }

    pub fn get(&self, suite: &str) -> Option<&SuiteResult> {
        self.suites.get(suite)
    }
}

fn key(pi: &Multisegment, n: usize, m: usize) -> String {
    format!("n={n} m={m} pi={}", multisegment_text(pi))
}

fn check_instance(pi: &Multisegment, n: usize, m: usize, report: &mut Report) {
    let k = || key(pi, n, m);
    let Ok(star) = theta_star(pi, n, m) else {
        report.record("degree", false, k);
        return;
    };
    if m == n {
        report.record("duality", star == pi.dual(), k);
    }
    let omega = theta_omega(pi, n, m);
    let sizes_ok = star.group_size() == m && omega.as_ref().is_ok_and(|o| o.group_size() == m);
    report.record("degree", sizes_ok, k);
    report.record("bridge", convention_bridge(pi, n, m).ok() == omega.ok(), k);

    match theta_recursive_traced(pi, n, m) {
        Ok(rec) if rec.fallbacks > 0 => report.skip("recursion"),
        Ok(rec) => report.record("recursion", rec.result == star, k),
        Err(_) => report.record("recursion", false, k),
    }

    let strippable = left_strippable(pi);
    for chi in strippable.iter().filter(|p| !is_exceptional(p, n, m)) {
        let ok = reduce_instance(pi, &star, n, m, chi)
            .and_then(|r| Ok(theta_star(&r.rho, r.n, r.m)? == r.rho_prime))
            .unwrap_or(false);
        report.record("reduction", ok, || format!("{} chi={}", k(), chi.at));
    }

    if let Ok(class) = jh_classify(pi, n, m) {
        if class.class == JHKind::H && m > n {
            let ok = check_h_nonexistence(pi, n, m).is_ok_and(|v| v.impossible());
            report.record("h-nonexistence", ok, k);
        }
    }

    if boundary_excluded(pi, n, m).is_ok_and(|r| r.excluded) {
        // the lower-point reduction is a licensed step; only the fallback counts
        let ok = theta_recursive_traced(pi, n, m).is_ok_and(|r| r.fallbacks == 0 && r.result == star);
        report.record("boundary-shadow", ok, k);
    }
}

fn check_round_trip(pi: &Multisegment, labels: &LabelSet, report: &mut Report) {
    let k = || format!("pi={}", multisegment_text(pi));
    let x = Rat::half(3);
    let ok = pi.dual().dual() == *pi
        && pi.twist(x).twist(-x) == *pi
        && parse_multisegment(&multisegment_text(pi), labels).ok().as_ref() == Some(pi);
    report.record("round-trip", ok, k);
}

fn support_is_constant(s: Rat, k: usize, target: &Point) -> bool {
    k == 0
        || target.cusp.is_unr() && (0..k as i64).all(|j| s - Rat::half(k as i64 - 1) + Rat::int(j) == target.at)
}

fn check_tables(bounds: &Bounds, xi: XiSource, report: &mut Report) {
    let max_m = bounds.max_n + bounds.max_gap;
    for n in 0..=bounds.max_n {
        for m in n..=max_m {
            for side in [Side::Left, Side::Right] {
                let outer = if side == Side::Left { n } else { m };
                for t in 1..=outer {
                    let stored = xi(n, m, t, side).unwrap_or_default();
                    let top = t.min(if side == Side::Left { m } else { n });
                    for i in 0..=top {
                        let derived = derive_xi(n, m, t, i, side).ok();
                        let ok = stored.get(i).is_some() && derived.as_ref() == stored.get(i);
                        report.record("xi-reconstruction", ok, || {
                            format!("n={n} m={m} t={t} i={i} side={side}")
                        });
                    }
                    if stored.len() != top + 1 {
                        report.record("xi-reconstruction", false, || {
                            format!("n={n} m={m} t={t} side={side} count={}", stored.len())
                        });
                    }
                }
            }
        }
    }
}

fn check_lima(bounds: &Bounds, report: &mut Report) {
    let max_m = bounds.max_n + bounds.max_gap;
    let points: Vec<Rat> = (-8..=8).map(Rat::half).collect();
    for n in 0..=bounds.max_n {
        for m in n..=max_m {
            for &x in &points {
                let chi = Point::unr(x);
                for a in 0..=3usize.min(n) {
                    let oracle = (0..=a)
                        .filter(|&i| support_is_constant(Rat::half(2 * m as i64 - n as i64 + (a - i) as i64), a - i, &chi))
                        .collect();
                    let ok = lima_classifier_left(n, m, 1, a, &chi).is_ok_and(|s| s == oracle);
                    report.record("lima", ok, || format!("left n={n} m={m} a={a} chi={x}"));
                    for b in a..=(a + n).min(m) {
                        let t = b - a;
                        let target = Point::unr(Rat::half(m as i64 - n as i64) - x);
                        let oracle = (0..=t.min(n))
                            .filter(|&i| {
                                let s = Rat::half(m as i64 - 2 * n as i64 - t as i64 + i as i64);
                                support_is_constant(s, t - i, &target)
                            })
                            .collect();
                        let ok = lima_classifier_right(n, m, 1, a, b, &chi).is_ok_and(|s| s == oracle);
                        report.record("lima", ok, || format!("right n={n} m={m} a={a} b={b} chi={x}"));
                    }
                }
            }
        }
    }
}

pub fn run_selftest(bounds: &Bounds) -> Report {
    run_selftest_with(bounds, jacquet_factors)
}

pub fn run_selftest_with(bounds: &Bounds, xi: XiSource) -> Report {
    let mut labels = LabelSet::default();
    for decl in ["rho:2:rhov", "chi:1:chi"] {
        labels.declare(decl).expect("fixed declarations are valid");
    }
    let mut family = unr_multisegments(bounds.max_n, bounds.window);
    family.extend(labeled_samples(bounds.max_n));

    let work = || {
        family
            .par_iter()
            .map(|pi| {
                let mut r = Report::default();
                let n = pi.group_size();
                for m in n..=n + bounds.max_gap {
                    check_instance(pi, n, m, &mut r);
                }
                check_round_trip(pi, &labels, &mut r);
                r
            })
            .reduce(Report::default, Report::merge)
    };
    let mut report = match bounds.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    };
    check_tables(bounds, xi, &mut report);
    check_lima(bounds, &mut report);
    for s in SUITES {
        report.suites.entry(s).or_default();
    }
    report
}
