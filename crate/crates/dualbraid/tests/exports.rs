//! Poset exports against checked-in summaries. Regenerate the summaries
//! with `DUALBRAID_BLESS=1 cargo test -p dualbraid --test exports`.

use std::path::PathBuf;
use std::sync::Arc;

use dualbraid::catalog::{load_group, CatalogSource};
use dualbraid::export::{self, sha256_hex, Format};
use dualbraid_core::garside::dual_presentation;
use dualbraid_core::hurwitz::{hurwitz_orbit, ConjugationTable, ReflTuple};
use dualbraid_core::interval::{build_interval, IntervalPoset};
use dualbraid_core::ReflectionGroup;

const GOLDEN: &[&str] = &["H3", "G24", "G27", "F4", "G29", "H4", "G33", "E6"];

fn poset(name: &str) -> (IntervalPoset, String) {
    let loaded = load_group(name, &CatalogSource::Embedded).unwrap();
    let g = Arc::new(ReflectionGroup::new(loaded.entry).unwrap());
    (build_interval(&g).unwrap(), loaded.checksum)
}

fn summary(p: &IntervalPoset, json: &str) -> String {
    let ranks: Vec<String> = p.rank_vector().iter().map(u128::to_string).collect();
    format!(
        "nodes {}\nrank_vector {}\ncovers {}\nsha256 {}\n",
        p.len(),
        ranks.join(" "),
        p.covers().len(),
        sha256_hex(json)
    )
}

#[test]
fn poset_exports_match_golden_summaries() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("DUALBRAID_BLESS").is_some();
    for name in GOLDEN {
        let (p, checksum) = poset(name);
        let json = export::poset(&p, &checksum, Format::Json);
        let got = summary(&p, &json);
        let path = dir.join(format!("{name}.poset.summary"));
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn exports_are_deterministic() {
    for name in ["H3", "G24"] {
        let (a, ca) = poset(name);
        let (b, cb) = poset(name);
        for format in [Format::Json, Format::Text] {
            assert_eq!(export::poset(&a, &ca, format), export::poset(&b, &cb, format));
            let pa = dual_presentation(&a, &ConjugationTable::new(a.group())).unwrap();
            let pb = dual_presentation(&b, &ConjugationTable::new(b.group())).unwrap();
            assert_eq!(
                export::presentation(&a, &pa, &ca, format),
                export::presentation(&b, &pb, &cb, format)
            );
        }
    }
}

#[test]
fn poset_json_shape() {
    let (p, checksum) = poset("H3");
    let doc: serde_json::Value = serde_json::from_str(&export::poset(&p, &checksum, Format::Json)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["kind"], "poset");
    assert_eq!(doc["nodes"], 32);
    assert_eq!(doc["rank_vector"], serde_json::json!([1, 15, 15, 1]));
    assert_eq!(doc["atoms"].as_array().unwrap().len(), 15);
    let covers = doc["covers"].as_array().unwrap();
    for c in covers {
        let (a, b) = (c[0].as_u64().unwrap() as usize, c[1].as_u64().unwrap() as usize);
        assert_eq!(p.rank_of(a) + 1, p.rank_of(b));
        assert!(p.leq(a, b));
    }
    let text = export::poset(&p, &checksum, Format::Text);
    assert_eq!(text.lines().filter(|l| l.starts_with("cover ")).count(), covers.len());
}

#[test]
fn presentation_and_orbit_exports() {
    let (p, checksum) = poset("A2");
    let conj = ConjugationTable::new(p.group());
    let pres = dual_presentation(&p, &conj).unwrap();
    let text = export::presentation(&p, &pres, &checksum, Format::Text);
    assert!(text.contains("generators r1 r2 r3\n"));
    assert_eq!(text.lines().filter(|l| l.contains(" = ")).count(), 3);

    let (p, checksum) = poset("G24");
    let conj = ConjugationTable::new(p.group());
    let start = ReflTuple::new(dualbraid::cli::first_decomposition(&p, p.top()));
    let orbit = hurwitz_orbit(&conj, &start, 1000).unwrap();
    let doc: serde_json::Value =
        serde_json::from_str(&export::orbit(&p, &orbit, "top", &checksum, Format::Json)).unwrap();
    assert_eq!(doc["size"], 49);
    assert_eq!(doc["tuples"].as_array().unwrap().len(), 49);
}
