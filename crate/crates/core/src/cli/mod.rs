//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 parse or usage error, 3 self-test
//! failure.

pub mod parse;
pub mod render;
pub mod selftest;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boundary::{boundary_excluded, jh_classify, JHKind};
use crate::error::Error;
use crate::kudla::{self, FiltrationFactor, Side};
use crate::langlands::alpha_order;
use crate::rat::Rat;
use crate::segments::{ranged_sort, Multisegment, Point, Segment};
use crate::theta::{self, Step};
use parse::{parse_multisegment, parse_point, LabelSet, ParseError};
use render::{multisegment_json, multisegment_text, point_json, point_text, rat_json, segment_json, segment_text};

#[derive(Debug, Parser)]
#[command(name = "howe", version, about = "Explicit theta correspondence for (GL_n, GL_m) on multisegments")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Declare a cuspidal label (its dual is declared too).
    #[arg(long = "label", value_name = "NAME:DEG:DUAL", global = true)]
    pub labels: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Sigma,
    Omega,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Ranged,
    Alpha,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Multisegment expression, e.g. "{[0..1], [1/2]@rho}".
    #[arg(long, allow_hyphen_values = true)]
    pub pi: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form lift.
    Theta {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value = "sigma")]
        convention: ConventionArg,
    },
    /// Lift computed by peeling cuspidal points.
    ThetaRecursive {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        trace: bool,
    },
    /// Contragredient.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
    },
    /// Standard-module order of the segments.
    Sort {
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
        #[arg(long, value_enum, default_value = "ranged")]
        order: OrderArg,
    },
    /// Jacquet-module factors with their exponent tables.
    Kudla {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Pieces of the rank filtration.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Factors that can carry the Jacquet factor χ ⊗ ... ⊗ χ.
    Lima {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Whether the representation can lie in the boundary.
    Boundary {
        #[command(flatten)]
        inst: Instance,
    },
    /// Generic / J / H classification of the strippable points.
    Classify {
        #[command(flatten)]
        inst: Instance,
    },
    /// Strip a generic point from a candidate pair.
    Reduce {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, allow_hyphen_values = true)]
        pip: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Show that an H-class representation has no H-type partner.
    CheckH {
        #[command(flatten)]
        inst: Instance,
    },
    /// Run every check over an exhaustive family of small instances.
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 2)]
        max_gap: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("self-test failed")]
    SelftestFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
            CliError::SelftestFailed(_) => 3,
        }
    }
}

struct Output {
    text: String,
    json: Value,
}

fn envelope(entries: Value, group_size: Option<usize>, meta: Value) -> Value {
    json!({ "entries": entries, "group_size": group_size, "meta": meta })
}

fn ms_output(m: &Multisegment, meta: Value) -> Output {
    Output { text: multisegment_text(m), json: multisegment_json(m, meta) }
}

fn step_text(s: &Step) -> String {
    match s {
        Step::Generic { n, m, chi, a } => format!("generic n={n} m={m} chi={} a={a}", point_text(chi)),
        Step::Lower { n, m, a } => format!("lower-point n={n} m={m} a={a}"),
        Step::Fallback { n, m } => format!("closed-form fallback n={n} m={m}"),
        Step::Base { m } => format!("base m={m}"),
    }
}

fn factor_text(f: &FiltrationFactor) -> String {
    let mut s = format!("i={} inner=({},{})", f.i, f.inner.0, f.inner.1);
    for (role, e) in &f.blocks {
        s.push_str(&format!(" {}[{}]={}", role.label, role.size, e));
    }
    if f.carries_rho {
        s.push_str(" +regular");
    }
    s
}

fn factor_json(f: &FiltrationFactor) -> Value {
    json!({
        "i": f.i,
        "inner": [f.inner.0, f.inner.1],
        "carries_rho": f.carries_rho,
        "blocks": f.blocks.iter().map(|(r, e)| json!({
            "block": r.label.to_string(),
            "size": r.size,
            "exponent": rat_json(*e),
        })).collect::<Vec<_>>(),
    })
}

fn seq_output(v: &[Segment], meta: Value) -> Output {
    Output {
        text: v.iter().map(segment_text).collect::<Vec<_>>().join(", "),
        json: envelope(v.iter().map(segment_json).collect(), Some(v.iter().map(Segment::group_size).sum()), meta),
    }
}

fn points_text(v: &[Point]) -> String {
    format!("{{{}}}", v.iter().map(point_text).collect::<Vec<_>>().join(", "))
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let mut labels = LabelSet::default();
    for decl in &cli.labels {
        labels.declare(decl)?;
    }
    let ms = |s: &str| parse_multisegment(s, &labels);

    let out = match &cli.command {
        Command::Theta { inst, convention } => {
            let pi = ms(&inst.pi)?;
            let (res, name) = match convention {
                ConventionArg::Sigma => (theta::theta_star(&pi, inst.n, inst.m)?, "sigma"),
                ConventionArg::Omega => (theta::theta_omega(&pi, inst.n, inst.m)?, "omega"),
            };
            ms_output(&res, json!({ "verb": "theta", "n": inst.n, "m": inst.m, "convention": name }))
        }
        Command::ThetaRecursive { inst, trace } => {
            let pi = ms(&inst.pi)?;
            let rec = theta::theta_recursive_traced(&pi, inst.n, inst.m)?;
            let steps: Vec<String> = rec.trace.iter().map(step_text).collect();
            let mut meta = json!({
                "verb": "theta-recursive",
                "n": inst.n,
                "m": inst.m,
                "generic_steps": rec.generic_steps,
                "lower_steps": rec.lower_steps,
                "upper_only_steps": rec.upper_only_steps,
                "fallbacks": rec.fallbacks,
            });
            let mut text = String::new();
            if *trace {
                meta["trace"] = json!(steps);
                for s in &steps {
                    text.push_str(s);
                    text.push('\n');
                }
            }
            text.push_str(&multisegment_text(&rec.result));
            if rec.fallbacks > 0 {
                text.push_str("\n(closed form used: no licensed reduction step)");
            }
            Output { text, json: multisegment_json(&rec.result, meta) }
        }
        Command::Dual { pi } => ms_output(&ms(pi)?.dual(), json!({ "verb": "dual" })),
        Command::Sort { pi, order } => {
            let pi = ms(pi)?;
            match order {
                OrderArg::Ranged => seq_output(&ranged_sort(&pi), json!({ "verb": "sort", "order": "ranged" })),
                OrderArg::Alpha => seq_output(&alpha_order(&pi), json!({ "verb": "sort", "order": "alpha" })),
            }
        }
        Command::Kudla { n, m, t, side } => {
            let side: Side = (*side).into();
            let fs = kudla::jacquet_factors(*n, *m, *t, side)?;
            Output {
                text: fs.iter().map(factor_text).collect::<Vec<_>>().join("\n"),
                json: envelope(
                    fs.iter().map(factor_json).collect(),
                    None,
                    json!({ "verb": "kudla", "n": n, "m": m, "t": t, "side": side.to_string() }),
                ),
            }
        }
        Command::Rank { n, m } => {
            let fs = kudla::rank_factors(*n, *m);
            let text = fs
                .iter()
                .map(|f| {
                    format!(
                        "k={} left=lower({},{}) right=({},{})",
                        f.k, f.left_parabolic.0, f.left_parabolic.1, f.right_parabolic.0, f.right_parabolic.1
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let entries = fs
                .iter()
                .map(|f| {
                    json!({
                        "k": f.k,
                        "left_parabolic": [f.left_parabolic.0, f.left_parabolic.1],
                        "left_lower": f.left_lower,
                        "right_parabolic": [f.right_parabolic.0, f.right_parabolic.1],
                    })
                })
                .collect();
            Output { text, json: envelope(entries, None, json!({ "verb": "rank", "n": n, "m": m })) }
        }
        Command::Lima { n, m, r, a, b, chi, side } => {
            let chi = parse_point(chi, &labels)?;
            let set = match side {
                SideArg::Left => kudla::lima_classifier_left(*n, *m, *r, *a, &chi)?,
                SideArg::Right => {
                    let b = b.ok_or_else(|| Error::IndexOutOfRange("--b is required for --side right".into()))?;
                    kudla::lima_classifier_right(*n, *m, *r, *a, b, &chi)?
                }
            };
            let items: Vec<String> = set.iter().map(usize::to_string).collect();
            Output {
                text: format!("{{{}}}", items.join(", ")),
                json: envelope(json!(set), None, json!({ "verb": "lima", "chi": point_json(&chi) })),
            }
        }
        Command::Boundary { inst } => {
            let pi = ms(&inst.pi)?;
            let r = boundary_excluded(&pi, inst.n, inst.m)?;
            let mut text = String::from(if r.excluded { "excluded" } else { "not excluded" });
            for p in &r.per_k {
                text.push_str(&format!("\nk={} point={} possible={}", p.k, point_text(&p.test_point), p.possible));
            }
            let entries = r
                .per_k
                .iter()
                .map(|p| json!({ "k": p.k, "test_point": point_json(&p.test_point), "possible": p.possible }))
                .collect();
            Output {
                text,
                json: envelope(entries, Some(pi.group_size()), json!({ "verb": "boundary", "excluded": r.excluded })),
            }
        }
        Command::Classify { inst } => {
            let pi = ms(&inst.pi)?;
            let c = jh_classify(&pi, inst.n, inst.m)?;
            let class = match c.class {
                JHKind::Generic => "generic",
                JHKind::J => "J",
                JHKind::H => "H",
            };
            Output {
                text: format!("{class} strippable={}", points_text(&c.strippable)),
                json: envelope(
                    c.strippable.iter().map(point_json).collect(),
                    Some(pi.group_size()),
                    json!({ "verb": "classify", "class": class }),
                ),
            }
        }
        Command::Reduce { inst, pip, chi } => {
            let pi = ms(&inst.pi)?;
            let pip = ms(pip)?;
            let chi = parse_point(chi, &labels)?;
            let r = theta::reduce_instance(&pi, &pip, inst.n, inst.m, &chi)?;
            Output {
                text: format!(
                    "n={} m={} a={} rho={} rho'={}",
                    r.n,
                    r.m,
                    r.a,
                    multisegment_text(&r.rho),
                    multisegment_text(&r.rho_prime)
                ),
                json: envelope(
                    json!([multisegment_json(&r.rho, json!({})), multisegment_json(&r.rho_prime, json!({}))]),
                    None,
                    json!({ "verb": "reduce", "n": r.n, "m": r.m, "a": r.a }),
                ),
            }
        }
        Command::CheckH { inst } => {
            let pi = ms(&inst.pi)?;
            let v = theta::check_h_nonexistence(&pi, inst.n, inst.m)?;
            let verdict = if v.impossible() { "impossible" } else { "not refuted" };
            let witness = v.witness.map(|w| w.to_string()).unwrap_or_else(|| "none".into());
            Output {
                text: format!("{verdict} witness={witness} bound={} partner={}", v.bound, multisegment_text(&v.partner)),
                json: multisegment_json(
                    &v.partner,
                    json!({
                        "verb": "check-h",
                        "verdict": verdict,
                        "witness": v.witness.map(rat_json),
                        "bound": rat_json(v.bound),
                    }),
                ),
            }
        }
        Command::Selftest { max_n, window, max_gap, jobs } => {
            let window: Rat = window
                .parse()
                .map_err(|e: crate::rat::ParseRatError| ParseError::Syntax { pos: 0, msg: e.to_string() })?;
            let bounds = selftest::Bounds { max_n: *max_n, window, max_gap: *max_gap, jobs: *jobs };
            let report = selftest::run_selftest(&bounds);
            let mut lines = Vec::new();
            let mut entries = Vec::new();
            for (name, s) in &report.suites {
                let status = if s.passed() { "PASS" } else { "FAIL" };
                let mut line = format!("{name}: {status} cases={} failures={}", s.cases, s.failures);
                if s.skipped > 0 {
                    line.push_str(&format!(" skipped={}", s.skipped));
                }
                if let Some(f) = &s.first_failure {
                    line.push_str(&format!(" first: {f}"));
                }
                lines.push(line);
                entries.push(json!({
                    "suite": name,
                    "passed": s.passed(),
                    "cases": s.cases,
                    "failures": s.failures,
                    "skipped": s.skipped,
                    "first_failure": s.first_failure,
                }));
            }
            let out = Output {
                text: lines.join("\n"),
                json: envelope(json!(entries), None, json!({ "verb": "selftest", "passed": report.passed() })),
            };
            if !report.passed() {
                let rendered = if cli.json { out.json.to_string() } else { out.text };
                return Err(CliError::SelftestFailed(rendered));
            }
            out
        }
    };
    Ok(out)
}

/// Runs the CLI on `args`, returning the exit code, stdout and stderr.
pub fn run<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 { (0, rendered, String::new()) } else { (code, String::new(), rendered) };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let body = if cli.json { out.json.to_string() } else { out.text };
            (0, body + "\n", String::new())
        }
        Err(CliError::SelftestFailed(report)) => (3, report + "\n", "self-test failed\n".into()),
        Err(e) => {
            let kind = if matches!(e, CliError::Parse(_)) { "parse error" } else { "error" };
            (e.exit_code(), String::new(), format!("{kind}: {e}\n"))
        }
    }
}

pub fn main() -> ExitCode {
    let (code, out, err) = run(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code)
}
