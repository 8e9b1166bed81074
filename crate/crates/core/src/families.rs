//! Programmatic construction of the infinite families and name parsing.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::Cyclotomic;
use crate::error::GroupError;
use crate::matrix::Matrix;
use crate::reflgroup::GroupCatalogEntry;

/// A parsed group name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupName {
    A(usize),
    B(usize),
    D(usize),
    I2(u32),
    /// `G(e,e,n)` with `e ≥ 3, n ≥ 3`.
    Geen(u32, usize),
    /// An exceptional type, by its catalog name.
    Exceptional(&'static str),
}

/// Exceptional types shipped as catalog files, with Shephard–Todd aliases.
pub const EXCEPTIONAL: &[(&str, &[&str])] = &[
    ("H3", &["G23"]),
    ("G24", &[]),
    ("G27", &[]),
    ("F4", &["G28"]),
    ("G29", &[]),
    ("H4", &["G30"]),
    ("G33", &[]),
    ("G34", &[]),
    ("E6", &["G35"]),
    ("E7", &["G36"]),
    ("E8", &["G37"]),
];

fn unknown(s: &str) -> GroupError {
    GroupError::UnknownGroup(s.to_string())
}

impl GroupName {
    /// Parses `A4`, `B3`, `D5`, `I2(5)`, `G(3,3,4)`, `H3`, `G24`, `G37`, ...
    /// Coincidences are normalized (`G(2,2,n)` is `D_n`, `G(e,e,2)` is
    /// `I2(e)`, `I2(3)` is `A2`, `I2(4)` is `B2`, `D3` is `A3`); reducible or
    /// degenerate names are rejected.
    pub fn parse(s: &str) -> Result<GroupName, GroupError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.to_ascii_uppercase();
        for (name, aliases) in EXCEPTIONAL {
            if t == *name || aliases.contains(&t.as_str()) {
                return Ok(GroupName::Exceptional(name));
            }
        }
        let num = |x: &str| x.parse::<u32>().ok().filter(|&v| v > 0);
        let parsed = if let Some(inner) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let e = num(inner).ok_or_else(|| unknown(s))?;
            GroupName::dihedral(e)
        } else if let Some(inner) = t.strip_prefix("G(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 || parts[0] != parts[1] {
                return Err(unknown(s));
            }
            let e = num(parts[0]).ok_or_else(|| unknown(s))?;
            let n = num(parts[2]).ok_or_else(|| unknown(s))? as usize;
            match (e, n) {
                (1, _) | (_, 1) | (2, 2) => return Err(unknown(s)),
                (2, n) => GroupName::type_d(n),
                (e, 2) => GroupName::dihedral(e),
                (e, n) => Some(GroupName::Geen(e, n)),
            }
        } else if let Some(rest) = t.strip_prefix('A') {
            num(rest).map(|n| GroupName::A(n as usize))
        } else if let Some(rest) = t.strip_prefix('B') {
            num(rest).map(|n| match n {
                1 => GroupName::A(1),
                n => GroupName::B(n as usize),
            })
        } else if let Some(rest) = t.strip_prefix('D') {
            num(rest).and_then(|n| GroupName::type_d(n as usize))
        } else {
            None
        };
        let parsed = parsed.ok_or_else(|| unknown(s))?;
        if parsed.rank() > 8 {
            return Err(GroupError::RankTooLarge(parsed.rank()));
        }
        Ok(parsed)
    }

    fn dihedral(e: u32) -> Option<GroupName> {
        match e {
            0..=2 => None,
            3 => Some(GroupName::A(2)),
            4 => Some(GroupName::B(2)),
            e => Some(GroupName::I2(e)),
        }
    }

    fn type_d(n: usize) -> Option<GroupName> {
        match n {
            0..=2 => None,
            3 => Some(GroupName::A(3)),
            n => Some(GroupName::D(n)),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            GroupName::A(n) | GroupName::B(n) | GroupName::D(n) | GroupName::Geen(_, n) => n,
            GroupName::I2(_) => 2,
            GroupName::Exceptional(name) => match name {
                "H3" | "G24" | "G27" => 3,
                "F4" | "G29" | "H4" => 4,
                "G33" => 5,
                "G34" | "E6" => 6,
                "E7" => 7,
                _ => 8,
            },
        }
    }

    /// Canonical display name.
    pub fn canonical(&self) -> String {
        match *self {
            GroupName::A(n) => format!("A{n}"),
            GroupName::B(n) => format!("B{n}"),
            GroupName::D(n) => format!("D{n}"),
            GroupName::I2(e) => format!("I2({e})"),
            GroupName::Geen(e, n) => format!("G({e},{e},{n})"),
            GroupName::Exceptional(name) => name.to_string(),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, GroupName::Exceptional(_))
    }

    /// Whether `W` is a real (Coxeter) group.
    pub fn is_real(&self) -> bool {
        match *self {
            GroupName::Geen(..) => false,
            GroupName::Exceptional(name) => !name.starts_with('G'),
            _ => true,
        }
    }

    /// Builds the catalog entry of a non-exceptional type.
    pub fn build(&self) -> Result<GroupCatalogEntry, GroupError> {
        let name = self.canonical();
        match *self {
            GroupName::A(n) => type_a(&name, n),
            GroupName::B(n) => type_b(&name, n),
            GroupName::D(n) => geen(&name, 2, n),
            GroupName::I2(e) => geen(&name, e, 2),
            GroupName::Geen(e, n) => geen(&name, e, n),
            GroupName::Exceptional(_) => Err(GroupError::UnknownGroup(format!(
                "{name} is loaded from the catalog, not generated"
            ))),
        }
    }
}

/// `A_n` acting on the root lattice: `s_i(α_j) = α_j - a_ij α_i`.
fn type_a(name: &str, n: usize) -> Result<GroupCatalogEntry, GroupError> {
    let field = Cyclotomic::new(1);
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    };
    let gens = (0..n)
        .map(|i| {
            let rows = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            let id = i64::from(r == c);
                            field.integer(if r == i { id - cartan(i, c) } else { id })
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows(rows)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = (2..=n as u32 + 1).collect();
    GroupCatalogEntry::new(name, field, gens, degrees)
}

/// `B_n` as signed permutations: the sign change of `x_1`, then the
/// transpositions `(i, i+1)`.
fn type_b(name: &str, n: usize) -> Result<GroupCatalogEntry, GroupError> {
    let field = Cyclotomic::new(1);
    let mut gens = Vec::with_capacity(n);
    let mut flip = vec![vec![0i64; n]; n];
    for (i, row) in flip.iter_mut().enumerate() {
        row[i] = if i == 0 { -1 } else { 1 };
    }
    gens.push(flip);
    for i in 0..n - 1 {
        gens.push(transposition(n, i));
    }
    let gens = gens
        .into_iter()
        .map(|m| {
            Matrix::from_rows(
                m.into_iter()
                    .map(|r| r.into_iter().map(|x| field.integer(x)).collect())
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = (1..=n as u32).map(|k| 2 * k).collect();
    GroupCatalogEntry::new(name, field, gens, degrees)
}

fn transposition(n: usize, i: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (r, row) in m.iter_mut().enumerate() {
        let c = if r == i {
            i + 1
        } else if r == i + 1 {
            i
        } else {
            r
        };
        row[c] = 1;
    }
    m
}

/// `G(e,e,n)` as monomial matrices with generators in the order
/// `s_1, s', s_2, …, s_{n-1}`, where `s_i = (i, i+1)` and
/// `s'(x_1, x_2) = (ζ_e x_2, ζ_e^{-1} x_1)`. This order makes the product a
/// Coxeter element for every `e` (other placements of `s'` give a conjugate
/// of `c^{-1}` once `e ≥ 3, n ≥ 3`).
fn geen(name: &str, e: u32, n: usize) -> Result<GroupCatalogEntry, GroupError> {
    let field = Cyclotomic::new(if e <= 2 { 1 } else { e });
    let to_matrix = |m: Vec<Vec<i64>>| {
        Matrix::from_rows(
            m.into_iter()
                .map(|r| r.into_iter().map(|x| field.integer(x)).collect())
                .collect(),
        )
    };
    // Q(ζ_2) = Q, so ζ_2 = -1 is written out rather than taken as a root
    let (zeta, zeta_inv) = if e == 2 {
        (field.integer(-1), field.integer(-1))
    } else {
        (field.root(1), field.root(-1))
    };
    let mut s_prime = Vec::with_capacity(n);
    for r in 0..n {
        let row = (0..n)
            .map(|c| match (r, c) {
                (0, 1) => zeta.clone(),
                (1, 0) => zeta_inv.clone(),
                (r, c) if r == c && r >= 2 => field.one(),
                _ => field.zero(),
            })
            .collect();
        s_prime.push(row);
    }
    let mut gens = vec![to_matrix(transposition(n, 0))?, Matrix::from_rows(s_prime)?];
    for i in 1..n - 1 {
        gens.push(to_matrix(transposition(n, i))?);
    }
    let mut degrees: Vec<u32> = (1..n as u32).map(|k| k * e).collect();
    degrees.push(n as u32);
    degrees.sort_unstable();
    GroupCatalogEntry::new(name, field, gens, degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(GroupName::parse("a4").unwrap(), GroupName::A(4));
        assert_eq!(GroupName::parse("G(2,2,4)").unwrap(), GroupName::D(4));
        assert_eq!(GroupName::parse("G(5,5,2)").unwrap(), GroupName::I2(5));
        assert_eq!(GroupName::parse("I2(4)").unwrap(), GroupName::B(2));
        assert_eq!(GroupName::parse("G37").unwrap(), GroupName::Exceptional("E8"));
        assert_eq!(GroupName::parse("G(3,3,3)").unwrap(), GroupName::Geen(3, 3));
        for bad in ["G(1,1,3)", "G(2,2,2)", "D2", "I2(2)", "G31", "X5", "G(4,2,2)"] {
            assert!(GroupName::parse(bad).is_err(), "{bad}");
        }
        assert!(matches!(GroupName::parse("A9"), Err(GroupError::RankTooLarge(9))));
    }

    #[test]
    fn families_validate() {
        for name in [
            "A1", "A2", "A5", "B2", "B5", "D4", "D5", "I2(5)", "I2(12)", "G(3,3,3)", "G(4,4,4)", "G(5,5,3)",
        ] {
            let entry = GroupName::parse(name).unwrap().build().unwrap();
            entry.coxeter_element().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(
                entry.enumerate_reflections().unwrap().len(),
                entry.reflection_count,
                "{name}"
            );
        }
    }
}
