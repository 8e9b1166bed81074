//! Group catalog files: parsing, checksums and the embedded defaults.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use dualbraid_core::cyclo::CycNum;
use dualbraid_core::families::GroupName;
use dualbraid_core::{Cyclotomic, GroupCatalogEntry, GroupError, Matrix};
use serde::Deserialize;
use sha2::{Digest, Sha256};

/// Environment variable naming the default catalog directory.
pub const CATALOG_ENV: &str = "DUALBRAID_CATALOG";

pub const FORMAT_VERSION: u32 = 1;

const EMBEDDED: &[(&str, &str)] = &[
    ("E6", include_str!("../../../catalog/E6.toml")),
    ("E7", include_str!("../../../catalog/E7.toml")),
    ("E8", include_str!("../../../catalog/E8.toml")),
    ("F4", include_str!("../../../catalog/F4.toml")),
    ("G24", include_str!("../../../catalog/G24.toml")),
    ("G27", include_str!("../../../catalog/G27.toml")),
    ("G29", include_str!("../../../catalog/G29.toml")),
    ("G33", include_str!("../../../catalog/G33.toml")),
    ("G34", include_str!("../../../catalog/G34.toml")),
    ("H3", include_str!("../../../catalog/H3.toml")),
    ("H4", include_str!("../../../catalog/H4.toml")),
];

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed catalog file for {name}: {source}")]
    Parse { name: String, source: toml::de::Error },
    #[error("unsupported catalog format_version {0}")]
    FormatVersion(u32),
    #[error("checksum mismatch for {name}: file says {declared}, contents hash to {actual}")]
    Checksum {
        name: String,
        declared: String,
        actual: String,
    },
    #[error("catalog file declares {declared:?} where {expected:?} was requested")]
    NameMismatch { declared: String, expected: String },
    #[error("catalog field {field} of {name} disagrees with the data: {detail}")]
    Field {
        name: String,
        field: &'static str,
        detail: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    format_version: u32,
    name: String,
    rank: usize,
    conductor: u32,
    degrees: Vec<u32>,
    order: u64,
    reflection_count: usize,
    checksum: String,
    generators: Vec<GeneratorDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    rows: Vec<Vec<Vec<String>>>,
}

/// A validated catalog entry together with the checksum of its serialized
/// form and where it came from.
#[derive(Clone, Debug)]
pub struct LoadedEntry {
    pub entry: GroupCatalogEntry,
    pub checksum: String,
    pub source: String,
    pub real: bool,
}

/// Where exceptional groups are read from.
#[derive(Clone, Debug, Default)]
pub enum CatalogSource {
    /// The copies compiled into the binary.
    #[default]
    Embedded,
    /// A directory of `<NAME>.toml` files, or a single file.
    Path(PathBuf),
}

impl CatalogSource {
    /// `--catalog` if given, else the environment variable, else embedded.
    pub fn resolve(flag: Option<&Path>) -> CatalogSource {
        match flag {
            Some(p) => CatalogSource::Path(p.to_path_buf()),
            None => match std::env::var_os(CATALOG_ENV) {
                Some(p) if !p.is_empty() => CatalogSource::Path(PathBuf::from(p)),
                _ => CatalogSource::Embedded,
            },
        }
    }

    fn read(&self, name: &str) -> Result<(String, String), LoadError> {
        match self {
            CatalogSource::Embedded => EMBEDDED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| (text.to_string(), format!("embedded:{name}.toml")))
                .ok_or_else(|| GroupError::UnknownGroup(name.to_string()).into()),
            CatalogSource::Path(p) => {
                let path = if p.is_dir() {
                    p.join(format!("{name}.toml"))
                } else {
                    p.clone()
                };
                let text = std::fs::read_to_string(&path).map_err(|source| LoadError::Io {
                    path: path.clone(),
                    source,
                })?;
                Ok((text, path.display().to_string()))
            }
        }
    }
}

/// Loads and validates a group by name. Exceptional types come from the
/// catalog; the infinite families are generated.
pub fn load_group(spec: &str, source: &CatalogSource) -> Result<LoadedEntry, LoadError> {
    let name = GroupName::parse(spec)?;
    let real = name.is_real();
    if let GroupName::Exceptional(canonical) = name {
        let (text, origin) = source.read(canonical)?;
        let entry = parse_entry(&text, canonical)?;
        let checksum = declared_checksum(&text)?;
        Ok(LoadedEntry {
            entry,
            checksum,
            source: origin,
            real,
        })
    } else {
        let entry = name.build()?;
        let text = render_entry(&entry, "Generated programmatically.");
        Ok(LoadedEntry {
            checksum: declared_checksum(&text)?,
            entry,
            source: "generated".to_string(),
            real,
        })
    }
}

/// SHA-256 of the file with its `checksum = ...` line removed.
pub fn content_digest(text: &str) -> String {
    let mut h = Sha256::new();
    for line in text.split_inclusive('\n') {
        if !line.starts_with("checksum = ") {
            h.update(line.as_bytes());
        }
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}

fn declared_checksum(text: &str) -> Result<String, LoadError> {
    #[derive(Deserialize)]
    struct Head {
        name: String,
        checksum: String,
    }
    let head: Head = toml::from_str(text).map_err(|source| LoadError::Parse {
        name: "<catalog>".to_string(),
        source,
    })?;
    let actual = content_digest(text);
    if head.checksum != actual {
        return Err(LoadError::Checksum {
            name: head.name,
            declared: head.checksum,
            actual,
        });
    }
    Ok(actual)
}

/// Parses and validates one catalog document.
pub fn parse_entry(text: &str, expected_name: &str) -> Result<GroupCatalogEntry, LoadError> {
    let doc: CatalogFile = toml::from_str(text).map_err(|source| LoadError::Parse {
        name: expected_name.to_string(),
        source,
    })?;
    if doc.format_version != FORMAT_VERSION {
        return Err(LoadError::FormatVersion(doc.format_version));
    }
    if doc.name != expected_name {
        return Err(LoadError::NameMismatch {
            declared: doc.name,
            expected: expected_name.to_string(),
        });
    }
    let actual = content_digest(text);
    if doc.checksum != actual {
        return Err(LoadError::Checksum {
            name: doc.name,
            declared: doc.checksum,
            actual,
        });
    }
    let field_err = |field: &'static str, detail: String| LoadError::Field {
        name: doc.name.clone(),
        field,
        detail,
    };
    if doc.rank != doc.degrees.len() {
        return Err(field_err(
            "rank",
            format!("rank {} but {} degrees", doc.rank, doc.degrees.len()),
        ));
    }
    let field = Cyclotomic::new(doc.conductor);
    let mut gens = Vec::with_capacity(doc.generators.len());
    for (gi, g) in doc.generators.iter().enumerate() {
        if g.rows.len() != doc.rank {
            return Err(field_err(
                "generators",
                format!("generator {gi} has {} rows", g.rows.len()),
            ));
        }
        let rows = g
            .rows
            .iter()
            .map(|row| {
                if row.len() != doc.rank {
                    return Err(field_err(
                        "generators",
                        format!("generator {gi} has a row of length {}", row.len()),
                    ));
                }
                row.iter()
                    .map(|e| CycNum::from_strings(&field, e).map_err(|e| LoadError::Group(e.into())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        gens.push(Matrix::from_rows(rows)?);
    }
    let entry = GroupCatalogEntry::new(doc.name.clone(), field, gens, doc.degrees.clone())?;
    entry.check_declared(u128::from(doc.order), doc.reflection_count)?;
    Ok(entry)
}

/// Serializes an entry in the catalog format, checksum included.
pub fn render_entry(entry: &GroupCatalogEntry, note: &str) -> String {
    let mut lines: Vec<String> = vec![
        "# Generator data for one irreducible well-generated 2-reflection group.".into(),
        format!("# {note}"),
        "# Matrix entries are coefficient lists in the power basis of zeta_m,".into(),
        "# reduced modulo the m-th cyclotomic polynomial.".into(),
        format!("format_version = {FORMAT_VERSION}"),
        format!("name = \"{}\"", entry.name),
        format!("rank = {}", entry.rank),
        format!("conductor = {}", entry.field.conductor()),
        format!(
            "degrees = [{}]",
            entry.degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
        ),
        format!("order = {}", entry.order),
        format!("reflection_count = {}", entry.reflection_count),
    ];
    for g in &entry.generators {
        lines.push(String::new());
        lines.push("[[generators]]".into());
        lines.push("rows = [".into());
        for row in g.matrix().rows() {
            let mut s = String::from("  [");
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    s.push_str(", ");
                }
                s.push('[');
                for (k, q) in x.to_strings().iter().enumerate() {
                    if k > 0 {
                        s.push_str(", ");
                    }
                    let _ = write!(s, "\"{q}\"");
                }
                s.push(']');
            }
            s.push_str("],");
            lines.push(s);
        }
        lines.push("]".into());
    }
    let body = lines.join("\n") + "\n";
    let digest = content_digest(&body);
    let at = lines
        .iter()
        .position(|l| l.starts_with("reflection_count"))
        .expect("present")
        + 1;
    lines.insert(at, format!("checksum = \"{digest}\""));
    lines.join("\n") + "\n"
}

/// Names of the exceptional types shipped with the crate.
pub fn embedded_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}
