//! Verification runs and their machine-readable reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use dualbraid_core::garside::{center_exponent, dual_presentation};
use dualbraid_core::hurwitz::{verify_transitivity, ConjugationTable};
use dualbraid_core::interval::{build_interval, catalan_number, reduced_decomposition_formula, IntervalPoset};
use dualbraid_core::{GroupError, ReflectionGroup};
use serde::Serialize;

use crate::catalog::{load_group, CatalogSource, LoadError, LoadedEntry};
use crate::export::SCHEMA_VERSION;

/// Orbit cap applied by `verify huge` and `hurwitz --huge`; E8 needs about
/// 3.8×10⁷ tuples.
pub const HUGE_ORBIT_CAP: usize = 50_000_000;

/// A loaded group with its reflection data.
pub struct Session {
    pub loaded: LoadedEntry,
    pub group: Arc<ReflectionGroup>,
    pub load_ms: u64,
}

impl Session {
    pub fn open(name: &str, source: &CatalogSource) -> Result<Session, LoadError> {
        let start = Instant::now();
        let loaded = load_group(name, source)?;
        let group = Arc::new(ReflectionGroup::new(loaded.entry.clone())?);
        Ok(Session {
            loaded,
            group,
            load_ms: start.elapsed().as_millis() as u64,
        })
    }

    pub fn checksum(&self) -> &str {
        &self.loaded.checksum
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
    Huge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not run because its input exceeds a cap; does not fail the report.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub ms: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HurwitzSummary {
    pub element: String,
    pub decompositions: usize,
    pub orbit: usize,
    pub depth: usize,
    pub formula: Option<u128>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub group: String,
    pub catalog_checksum: String,
    pub catalog_source: String,
    pub level: Option<String>,
    pub rank: usize,
    pub real: bool,
    pub degrees: Vec<u32>,
    pub codegrees: Vec<u32>,
    pub coxeter_number: u32,
    pub order: u128,
    pub reflection_count: usize,
    pub catalan: Option<u128>,
    pub poincare: Vec<u128>,
    pub chains: Option<u128>,
    pub zeta: BTreeMap<u32, u128>,
    pub center_exponent: Option<u32>,
    pub atom_count: Option<usize>,
    pub relation_count: Option<usize>,
    pub lattice_pairs: Option<u64>,
    pub hurwitz: Option<HurwitzSummary>,
    pub checks: Vec<Check>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunReport {
    /// The `info` fragment: data read off the catalog entry.
    pub fn info(session: &Session, command: &str) -> RunReport {
        let e = &session.loaded.entry;
        let mut r = RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            group: e.name.clone(),
            catalog_checksum: session.loaded.checksum.clone(),
            catalog_source: session.loaded.source.clone(),
            rank: e.rank,
            real: session.loaded.real,
            degrees: e.degrees.clone(),
            codegrees: e.codegrees.clone(),
            coxeter_number: e.coxeter_number,
            order: e.order,
            reflection_count: e.reflection_count,
            catalan: catalan_number(e).ok(),
            ..RunReport::default()
        };
        r.timings_ms.insert("load".into(), session.load_ms);
        r
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn skip(&mut self, name: &str, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Skipped,
            detail,
            ms: 0,
        });
    }

    /// Runs `f` as a named check, recording its outcome and duration.
    pub fn check<T>(&mut self, name: &str, f: impl FnOnce(&mut RunReport) -> Result<T, String>) -> Option<T> {
        let start = Instant::now();
        let out = f(self);
        let ms = start.elapsed().as_millis() as u64;
        let (status, detail, value) = match out {
            Ok(v) => (Status::Pass, String::new(), Some(v)),
            Err(e) => (Status::Fail, e, None),
        };
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail,
            ms,
        });
        value
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.group);
        let _ = writeln!(s, "catalog: {} ({})", self.catalog_checksum, self.catalog_source);
        if let Some(level) = &self.level {
            let _ = writeln!(s, "level: {level}");
        }
        let _ = writeln!(s, "rank: {}", self.rank);
        let _ = writeln!(s, "degrees: {}", join(&self.degrees));
        let _ = writeln!(s, "codegrees: {}", join(&self.codegrees));
        let _ = writeln!(s, "coxeter number: {}", self.coxeter_number);
        let _ = writeln!(s, "|W|: {}", self.order);
        let _ = writeln!(s, "|R|: {}", self.reflection_count);
        if let Some(cat) = self.catalan {
            let _ = writeln!(s, "Cat(W): {cat}");
        }
        if !self.poincare.is_empty() {
            let _ = writeln!(s, "Poin: {}", join(&self.poincare));
        }
        if let Some(c) = self.chains {
            let _ = writeln!(s, "maximal chains: {c}");
        }
        for (n, z) in &self.zeta {
            let _ = writeln!(s, "Z({n}): {z}");
        }
        if let Some(a) = self.center_exponent {
            let _ = writeln!(s, "center exponent: {a}");
        }
        if let Some(k) = self.atom_count {
            let _ = writeln!(s, "atoms: {k}");
        }
        if let Some(k) = self.relation_count {
            let _ = writeln!(s, "relations: {k}");
        }
        if let Some(k) = self.lattice_pairs {
            let _ = writeln!(s, "lattice pairs checked: {k}");
        }
        if let Some(h) = &self.hurwitz {
            let _ = writeln!(
                s,
                "hurwitz orbit of {}: {} tuples, {} decompositions, depth {}",
                h.element, h.orbit, h.decompositions, h.depth
            );
        }
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
            };
            let _ = write!(s, "check {}: {status} ({} ms)", c.name, c.ms);
            if !c.detail.is_empty() {
                let _ = write!(s, " {}", c.detail);
            }
            s.push('\n');
        }
        s
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, found: T, expected: T) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("{what}: computed {found}, expected {expected}"))
    }
}

/// Runs the checks of `level`. `cap` bounds the Hurwitz orbit at the full
/// level; `huge` raises it to [`HUGE_ORBIT_CAP`].
pub fn verify(session: &Session, level: Level, cap: usize) -> (RunReport, Option<IntervalPoset>) {
    let mut r = RunReport::info(session, "verify");
    r.level = Some(format!("{level:?}").to_lowercase());
    let entry = session.loaded.entry.clone();
    let group = session.group.clone();

    r.check("duality", |_| {
        let h = entry.coxeter_number;
        for (d, dstar) in entry.degrees.iter().zip(&entry.codegrees) {
            expect_eq("d_i + d_i*", d + dstar, h)?;
        }
        // each reflection has order 2, so hyperplanes and reflections match
        let hyperplanes: usize = entry.codegrees.iter().map(|&c| c as usize + 1).sum();
        expect_eq("Σ(d_i* + 1)", hyperplanes, group.reflections().len())
    });
    r.check("coxeter spectrum", |_| {
        entry.coxeter_element().map(|_| ()).map_err(|e| e.to_string())
    });
    r.check("catalan integrality", |_| {
        catalan_number(&entry).map(|_| ()).map_err(|e| e.to_string())
    });

    let built = Instant::now();
    let poset = r.check("interval", |_| build_interval(&group).map_err(|e| e.to_string()));
    r.timings_ms
        .insert("interval".into(), built.elapsed().as_millis() as u64);
    let Some(p) = poset else {
        return (r, None);
    };

    r.poincare = p.poincare_polynomial();
    r.check("poincare palindromic", |r| {
        if r.poincare.iter().eq(r.poincare.iter().rev()) {
            Ok(())
        } else {
            Err("coefficients are not palindromic".into())
        }
    });
    r.chains = r.check("maximal chains", |_| {
        p.count_maximal_chains().map_err(|e| e.to_string())
    });
    for n in 1..=4 {
        if let Some(z) = r.check(&format!("zeta Z({n})"), |_| p.zeta_count(n).map_err(|e| e.to_string())) {
            r.zeta.insert(n, z);
        }
    }
    r.center_exponent = r.check("center exponent", |_| {
        let a = center_exponent(&entry, group.coxeter_element()).map_err(|e: GroupError| e.to_string())?;
        if entry.coxeter_number.is_multiple_of(a) {
            Ok(a)
        } else {
            Err(format!("exponent {a} does not divide h = {}", entry.coxeter_number))
        }
    });
    let conj = ConjugationTable::new(&group);
    r.check("presentation", |r| {
        let pres = dual_presentation(&p, &conj).map_err(|e| e.to_string())?;
        r.atom_count = Some(pres.generators.len());
        r.relation_count = Some(pres.relations.len());
        expect_eq("|atoms|", pres.generators.len() as u128, r.poincare[1])?;
        let by_chains: u128 = (0..p.len())
            .filter(|&u| p.rank_of(u) == 2)
            .map(|u| p.chains_below(u))
            .sum();
        expect_eq("relations", pres.relations.len() as u128, by_chains)
    });
    r.check("reflections in [1,c]", |r| {
        let atoms = p.atoms().len();
        let all = group.reflections().len();
        match (r.real, atoms == all) {
            (true, true) | (false, false) => Ok(()),
            (true, false) => Err(format!("real group with {atoms} of {all} reflections below c")),
            (false, true) => Err("non-real group with every reflection below c".into()),
        }
    });

    if level >= Level::Full {
        r.lattice_pairs = r.check("lattice", |_| {
            let report = p.verify_lattice();
            match report.failures.first() {
                None => Ok(report.pairs),
                Some(f) => Err(format!("{} failures, first {f:?}", report.failures.len())),
            }
        });
        let cap = if level == Level::Huge {
            cap.max(HUGE_ORBIT_CAP)
        } else {
            cap
        };
        match r.chains {
            Some(n) if n > cap as u128 => r.skip("hurwitz", format!("{n} decompositions exceed cap {cap}")),
            _ => r.hurwitz = hurwitz_check(&mut r, &p, &conj, p.top(), "top", cap),
        }
    }
    (r, Some(p))
}

/// Transitivity of the Hurwitz action on `Red_R(u)`, recorded as a check
/// named `hurwitz`. Exceeding `cap` fails the check.
pub fn hurwitz_check(
    r: &mut RunReport,
    p: &IntervalPoset,
    conj: &ConjugationTable,
    u: usize,
    label: &str,
    cap: usize,
) -> Option<HurwitzSummary> {
    let start = Instant::now();
    let out = r.check("hurwitz", |_| {
        let t = verify_transitivity(p, conj, u, cap).map_err(|e| e.to_string())?;
        let formula = if u == p.top() {
            let f = reduced_decomposition_formula(p.group().entry()).map_err(|e| e.to_string())?;
            expect_eq("orbit vs n!h^n/|W|", t.orbit as u128, f)?;
            Some(f)
        } else {
            None
        };
        expect_eq("orbit vs chains", t.orbit as u128, p.chains_below(u))?;
        Ok(HurwitzSummary {
            element: label.to_string(),
            decompositions: t.decompositions,
            orbit: t.orbit,
            depth: t.depth,
            formula,
        })
    });
    r.timings_ms
        .insert("hurwitz".into(), start.elapsed().as_millis() as u64);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_fail_the_report() {
        let session = Session::open("A2", &CatalogSource::Embedded).unwrap();
        let mut r = RunReport::info(&session, "verify");
        r.check("fine", |_| Ok(()));
        r.skip("big", "over cap".into());
        assert!(r.passed());
        r.check::<()>("broken", |_| Err("no".into()));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_text().contains("check broken: FAIL"));
        assert!(r.to_text().contains("check big: SKIPPED"));
    }

    #[test]
    fn quick_verification_of_a_family() {
        let session = Session::open("G(4,4,3)", &CatalogSource::Embedded).unwrap();
        let (r, p) = verify(&session, Level::Full, 1000);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(p.unwrap().len() as u128, r.catalan.unwrap());
        assert!(!r.real);
    }
}
