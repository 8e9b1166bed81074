//! Byte-deterministic exports of posets, presentations and Hurwitz orbits.

use std::fmt::Write as _;

use dualbraid_core::garside::Presentation;
use dualbraid_core::hurwitz::HurwitzOrbit;
use dualbraid_core::interval::IntervalPoset;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct PosetDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    group: &'a str,
    catalog_checksum: &'a str,
    nodes: usize,
    rank_vector: Vec<u128>,
    ranks: Vec<usize>,
    atoms: Vec<usize>,
    covers: Vec<(usize, usize)>,
}

/// Nodes are the simples in canonical order; covers are `(below, above)`.
pub fn poset(p: &IntervalPoset, checksum: &str, format: Format) -> String {
    let group = p.group().name();
    let ranks: Vec<usize> = (0..p.len()).map(|u| p.rank_of(u)).collect();
    let covers = p.covers();
    match format {
        Format::Json => {
            let doc = PosetDoc {
                schema_version: SCHEMA_VERSION,
                kind: "poset",
                group,
                catalog_checksum: checksum,
                nodes: p.len(),
                rank_vector: p.rank_vector(),
                ranks,
                atoms: p.atoms().to_vec(),
                covers,
            };
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "schema_version {SCHEMA_VERSION}");
            let _ = writeln!(s, "kind poset");
            let _ = writeln!(s, "group {group}");
            let _ = writeln!(s, "catalog_checksum {checksum}");
            let _ = writeln!(s, "nodes {}", p.len());
            let _ = writeln!(s, "rank_vector {}", join(p.rank_vector()));
            let _ = writeln!(s, "ranks {}", join(ranks));
            for (a, b) in covers {
                let _ = writeln!(s, "cover {a} {b}");
            }
            s
        }
    }
}

/// Atom names `r1..rk` in canonical atom order.
pub fn atom_name(p: &IntervalPoset, atom: usize) -> String {
    let i = p.atoms().binary_search(&atom).expect("an atom");
    format!("r{}", i + 1)
}

#[derive(Serialize)]
struct PresentationDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    group: &'a str,
    catalog_checksum: &'a str,
    generators: Vec<String>,
    generator_simples: Vec<usize>,
    generator_reflections: Vec<usize>,
    relations: Vec<[[String; 2]; 2]>,
}

pub fn presentation(p: &IntervalPoset, pres: &Presentation, checksum: &str, format: Format) -> String {
    let group = p.group().name();
    let name = |a: usize| atom_name(p, a);
    let relations: Vec<[[String; 2]; 2]> = pres
        .relations
        .iter()
        .map(|(l, r)| [[name(l[0]), name(l[1])], [name(r[0]), name(r[1])]])
        .collect();
    match format {
        Format::Json => {
            let doc = PresentationDoc {
                schema_version: SCHEMA_VERSION,
                kind: "presentation",
                group,
                catalog_checksum: checksum,
                generators: pres.generators.iter().map(|&a| name(a)).collect(),
                generator_simples: pres.generators.clone(),
                generator_reflections: pres.generators.iter().map(|&a| p.atom_reflection(a)).collect(),
                relations,
            };
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "# dual braid presentation of {group} ({checksum})");
            let _ = writeln!(
                s,
                "generators {}",
                pres.generators.iter().map(|&a| name(a)).collect::<Vec<_>>().join(" ")
            );
            for [[a, b], [c, d]] in relations {
                let _ = writeln!(s, "{a} {b} = {c} {d}");
            }
            s
        }
    }
}

#[derive(Serialize)]
struct OrbitDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    group: &'a str,
    catalog_checksum: &'a str,
    element: &'a str,
    size: usize,
    depth: usize,
    tuples: Vec<Vec<usize>>,
}

/// Tuples hold reflection indices in canonical reflection order.
pub fn orbit(p: &IntervalPoset, orbit: &HurwitzOrbit, element: &str, checksum: &str, format: Format) -> String {
    let group = p.group().name();
    match format {
        Format::Json => {
            let doc = OrbitDoc {
                schema_version: SCHEMA_VERSION,
                kind: "orbit",
                group,
                catalog_checksum: checksum,
                element,
                size: orbit.len(),
                depth: orbit.depth,
                tuples: orbit.iter().map(|t| t.entries).collect(),
            };
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "# Hurwitz orbit in {group} of {element} ({checksum})");
            let _ = writeln!(s, "size {}", orbit.len());
            let _ = writeln!(s, "depth {}", orbit.depth);
            for t in orbit.iter() {
                let _ = writeln!(s, "{}", join(t.entries));
            }
            s
        }
    }
}

pub fn sha256_hex(data: &str) -> String {
    hex::encode(Sha256::digest(data.as_bytes()))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
