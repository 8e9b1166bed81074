//! The `dualbraid` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dualbraid_core::garside::{dual_presentation, normal_form, parse_simple, tau, BraidElement};
use dualbraid_core::hurwitz::DEFAULT_ORBIT_CAP;
use dualbraid_core::hurwitz::{hurwitz_orbit, ConjugationTable, ReflTuple};
use dualbraid_core::interval::{build_interval, IntervalPoset};
use serde::Serialize;

use crate::catalog::CatalogSource;
use crate::export::{self, Format};
use crate::report::{hurwitz_check, verify, Level, RunReport, Session, HUGE_ORBIT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LOAD: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "dualbraid",
    version,
    about = "Noncrossing intervals and dual braid monoids of well-generated reflection groups"
)]
struct Cli {
    /// Catalog directory or file (overrides DUALBRAID_CATALOG).
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    /// Upper bound on enumerated Hurwitz orbits and decompositions.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    report: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GroupArg {
    /// Group name: H3, G24, E8, A4, B3, D5, I2(7), G(4,4,3), ...
    #[arg(long, short)]
    group: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degrees, codegrees, Coxeter number, |W|, |R| and Cat(W).
    Info(GroupArg),
    /// Build the interval and run the checks of a level.
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
    },
    /// Write a poset, presentation or Hurwitz orbit.
    Export {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file (default: standard output).
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Element whose orbit is exported.
        #[arg(long, default_value = "top")]
        element: String,
    },
    /// Hurwitz transitivity on the reduced decompositions of an element.
    Hurwitz {
        #[command(flatten)]
        group: GroupArg,
        /// `top` or `atom:<i>` (1-based, canonical atom order).
        #[arg(long, default_value = "top")]
        element: String,
        /// Allow orbits up to 5×10⁷ tuples (E8).
        #[arg(long)]
        huge: bool,
    },
    /// Normal form of a word of simples.
    Nf {
        #[command(flatten)]
        group: GroupArg,
        /// Comma-separated simples: poset indices, atom names `r<i>`, or
        /// `delta`; a leading `-` inverts.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Second word to compare with.
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Poset,
    Presentation,
    Orbit,
}

/// Outcome of a subcommand: output text plus exit code.
struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // fails only if a pool already exists, e.g. in repeated in-process runs
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let outcome = dispatch(&cli);
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}

fn dispatch(cli: &Cli) -> Outcome {
    let source = CatalogSource::resolve(cli.catalog.as_deref());
    let name = match &cli.command {
        Command::Info(g) => &g.group,
        Command::Verify { group, .. }
        | Command::Export { group, .. }
        | Command::Hurwitz { group, .. }
        | Command::Nf { group, .. } => &group.group,
    };
    let session = match Session::open(name, &source) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_LOAD, e),
    };
    match &cli.command {
        Command::Info(_) => Outcome::ok(render(&RunReport::info(&session, "info"), cli.report)),
        Command::Verify { level, .. } => {
            let cap = cli.cap.unwrap_or(DEFAULT_ORBIT_CAP);
            let (report, _) = verify(&session, *level, cap);
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY };
            Outcome {
                code,
                stdout: render(&report, cli.report),
                stderr: String::new(),
            }
        }
        Command::Export {
            what,
            format,
            output,
            element,
            ..
        } => cmd_export(&session, *what, *format, output.as_ref(), element, cli.cap),
        Command::Hurwitz { element, huge, .. } => cmd_hurwitz(&session, element, *huge, cli.cap, cli.report),
        Command::Nf { word, compare, .. } => cmd_nf(&session, word, compare.as_deref(), cli.report),
    }
}

fn render(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    }
}

fn interval(session: &Session) -> Result<IntervalPoset, Outcome> {
    build_interval(&session.group).map_err(|e| Outcome::fail(EXIT_VERIFY, e))
}

fn parse_element(p: &IntervalPoset, s: &str) -> Result<usize, Outcome> {
    let bad = || {
        Outcome::fail(
            EXIT_USAGE,
            format!(
                "element must be `top` or `atom:<i>` with 1 ≤ i ≤ {}, got {s:?}",
                p.atoms().len()
            ),
        )
    };
    if s == "top" {
        return Ok(p.top());
    }
    let i: usize = s.strip_prefix("atom:").and_then(|i| i.parse().ok()).ok_or_else(bad)?;
    p.atoms().get(i.wrapping_sub(1)).copied().ok_or_else(bad)
}

/// Reflection indices of one reduced decomposition of `u`, read off a
/// descending chain of covers.
pub fn first_decomposition(p: &IntervalPoset, u: usize) -> Vec<usize> {
    let mut word = Vec::new();
    let mut v = u;
    while v != p.bottom() {
        let cover = p.lower_covers(v)[0];
        word.push(cover.right as usize);
        v = cover.below as usize;
    }
    word.reverse();
    word
}

fn cmd_export(
    session: &Session,
    what: What,
    format: Format,
    output: Option<&PathBuf>,
    element: &str,
    cap: Option<usize>,
) -> Outcome {
    let p = match interval(session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let checksum = session.checksum();
    let text = match what {
        What::Poset => export::poset(&p, checksum, format),
        What::Presentation => {
            let conj = ConjugationTable::new(&session.group);
            match dual_presentation(&p, &conj) {
                Ok(pres) => export::presentation(&p, &pres, checksum, format),
                Err(e) => return Outcome::fail(EXIT_VERIFY, e),
            }
        }
        What::Orbit => {
            let u = match parse_element(&p, element) {
                Ok(u) => u,
                Err(o) => return o,
            };
            let cap = cap.unwrap_or(DEFAULT_ORBIT_CAP);
            let size = p.chains_below(u);
            if size > cap as u128 {
                return Outcome::fail(EXIT_CAP, format!("orbit of {size} tuples exceeds cap {cap}"));
            }
            let conj = ConjugationTable::new(&session.group);
            let start = ReflTuple::new(first_decomposition(&p, u));
            match hurwitz_orbit(&conj, &start, cap) {
                Ok(orbit) => export::orbit(&p, &orbit, element, checksum, format),
                Err(e) => return Outcome::fail(EXIT_CAP, e),
            }
        }
    };
    match output {
        None => Outcome::ok(text),
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::fail(EXIT_LOAD, format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn cmd_hurwitz(session: &Session, element: &str, huge: bool, cap: Option<usize>, format: Format) -> Outcome {
    let p = match interval(session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let u = match parse_element(&p, element) {
        Ok(u) => u,
        Err(o) => return o,
    };
    let mut cap = cap.unwrap_or(DEFAULT_ORBIT_CAP);
    if huge {
        cap = cap.max(HUGE_ORBIT_CAP);
    }
    let size = p.chains_below(u);
    if size > cap as u128 {
        let hint = if huge { "" } else { "; pass --huge to raise it" };
        return Outcome::fail(
            EXIT_CAP,
            format!("{size} reduced decompositions exceed cap {cap}{hint}"),
        );
    }
    let mut report = RunReport::info(session, "hurwitz");
    report.chains = Some(size);
    let conj = ConjugationTable::new(&session.group);
    report.hurwitz = hurwitz_check(&mut report, &p, &conj, u, element, cap);
    Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_VERIFY },
        stdout: render(&report, format),
        stderr: String::new(),
    }
}

#[derive(Serialize)]
struct NfReport {
    schema_version: u32,
    group: String,
    word: Vec<String>,
    delta_power: i64,
    factors: Vec<usize>,
    factor_ranks: Vec<usize>,
    atom_names: Vec<Option<String>>,
    equal: Option<bool>,
}

fn parse_word(p: &IntervalPoset, word: &str) -> Result<BraidElement, Outcome> {
    let mut acc = BraidElement::identity();
    for token in word.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (inverse, body) = match token.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        let s = if body == "delta" {
            p.top()
        } else {
            parse_simple(p, body).map_err(|e| Outcome::fail(EXIT_USAGE, e))?
        };
        let x = if inverse {
            // s⁻¹ = δ⁻¹ τ(∂s)
            BraidElement::delta(-1).multiply(
                p,
                &BraidElement::from_monoid(p, normal_form(p, &[tau(p, p.kreweras(s))])),
            )
        } else {
            BraidElement::from_monoid(p, normal_form(p, &[s]))
        };
        acc = acc.multiply(p, &x);
    }
    Ok(acc)
}

fn cmd_nf(session: &Session, word: &str, compare: Option<&str>, format: Format) -> Outcome {
    let p = match interval(session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let x = match parse_word(&p, word) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let equal = match compare.map(|w| parse_word(&p, w)) {
        None => None,
        Some(Ok(y)) => Some(x == y),
        Some(Err(o)) => return o,
    };
    let factors = x.positive.factors.clone();
    let report = NfReport {
        schema_version: export::SCHEMA_VERSION,
        group: session.group.name().to_string(),
        word: word
            .split(',')
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .collect(),
        delta_power: x.delta_power,
        factor_ranks: factors.iter().map(|&s| p.rank_of(s)).collect(),
        atom_names: factors
            .iter()
            .map(|&s| (p.rank_of(s) == 1).then(|| export::atom_name(&p, s)))
            .collect(),
        factors,
        equal,
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => {
            let shown: Vec<String> = report
                .factors
                .iter()
                .zip(&report.atom_names)
                .map(|(s, n)| n.clone().unwrap_or_else(|| s.to_string()))
                .collect();
            let mut t = format!("delta^{} · [{}]\n", report.delta_power, shown.join(", "));
            if let Some(eq) = equal {
                t.push_str(if eq { "equal: yes\n" } else { "equal: no\n" });
            }
            t
        }
    };
    Outcome::ok(text)
}
