//! The dual braid monoid on the simples `[1, c]`: greedy normal forms, the
//! word problem, divisibility, the dual presentation, and braid-group
//! elements as `δ^k · x`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{GarsideError, GroupError};
use crate::hurwitz::ConjugationTable;
use crate::interval::IntervalPoset;
use crate::reflgroup::{multiply as group_multiply, GroupCatalogEntry, GroupElement};

/// A positive element in left-greedy normal form; factors are simple
/// indices, none of them the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonoidElement {
    pub factors: Vec<usize>,
}

impl MonoidElement {
    pub fn identity() -> MonoidElement {
        MonoidElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of normal-form factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// `a · b` when the lengths add and the product is simple.
pub fn simple_product(p: &IntervalPoset, a: usize, b: usize) -> Option<usize> {
    let (pa, pb) = (p.element(a), p.element(b));
    let ab = p.lookup(|x| pa.apply(pb.apply(x)))?;
    (p.rank_of(a) + p.rank_of(b) == p.rank_of(ab)).then_some(ab)
}

/// `m⁻¹ b` for simples `m ≼ b`.
fn left_quotient(p: &IntervalPoset, m: usize, b: usize) -> usize {
    let (minv, pb) = (p.inverse_element(m), p.element(b));
    p.lookup(|x| minv.apply(pb.apply(x)))
        .expect("left quotients of simples are simple")
}

fn meet(p: &IntervalPoset, a: usize, b: usize) -> usize {
    p.meet(a, b).expect("[1, c] is a lattice")
}

/// Makes `(a, b)` left-weighted: moves `meet(∂a, b)` from `b` onto `a`.
fn weight_pair(p: &IntervalPoset, a: usize, b: usize) -> Option<(usize, usize)> {
    let m = meet(p, p.kreweras(a), b);
    if m == p.bottom() {
        return None;
    }
    let a2 = simple_product(p, a, m).expect("a · m is simple for m ≼ ∂a");
    Some((a2, left_quotient(p, m, b)))
}

/// Whether `(a, b)` is left-weighted, i.e. `meet(∂a, b) = 1`.
pub fn is_left_weighted(p: &IntervalPoset, a: usize, b: usize) -> bool {
    meet(p, p.kreweras(a), b) == p.bottom()
}

/// Left-greedy normal form of a word of simples.
pub fn normal_form(p: &IntervalPoset, word: &[usize]) -> MonoidElement {
    let bottom = p.bottom();
    let mut f: Vec<usize> = Vec::with_capacity(word.len());
    for &s in word {
        if s == bottom {
            continue;
        }
        f.push(s);
        let mut i = f.len() - 1;
        while i > 0 {
            match weight_pair(p, f[i - 1], f[i]) {
                Some((a, b)) => {
                    f[i - 1] = a;
                    f[i] = b;
                }
                None => break,
            }
            i -= 1;
        }
        f.retain(|&x| x != bottom);
    }
    // sweep to a fixed point; a single insertion pass already suffices, so
    // this loop only confirms it
    loop {
        let mut changed = false;
        for i in 1..f.len() {
            if let Some((a, b)) = weight_pair(p, f[i - 1], f[i]) {
                f[i - 1] = a;
                f[i] = b;
                changed = true;
            }
        }
        f.retain(|&x| x != bottom);
        if !changed {
            break;
        }
    }
    MonoidElement { factors: f }
}

/// `x · y`.
pub fn multiply(p: &IntervalPoset, x: &MonoidElement, y: &MonoidElement) -> MonoidElement {
    let mut word = x.factors.clone();
    word.extend_from_slice(&y.factors);
    normal_form(p, &word)
}

pub fn word_equal(p: &IntervalPoset, w1: &[usize], w2: &[usize]) -> bool {
    normal_form(p, w1) == normal_form(p, w2)
}

/// Whether `x z = y` for some `z`, by peeling the factors of `x` off the
/// front of `y` one at a time.
pub fn left_divides(p: &IntervalPoset, x: &MonoidElement, y: &MonoidElement) -> bool {
    let mut rest = y.factors.clone();
    for &s in &x.factors {
        match rest.first() {
            Some(&head) if p.leq(s, head) => {
                rest[0] = left_quotient(p, s, head);
                rest = normal_form(p, &rest).factors;
            }
            _ => return false,
        }
    }
    true
}

/// `δ` as a monoid element.
pub fn delta(p: &IntervalPoset) -> MonoidElement {
    MonoidElement { factors: vec![p.top()] }
}

/// `τ(s) = δ s δ⁻¹`, i.e. `c s c⁻¹` in `W`.
pub fn tau(p: &IntervalPoset, s: usize) -> usize {
    let (c, cinv, ps) = (p.element(p.top()), p.inverse_element(p.top()), p.element(s));
    p.lookup(|x| c.apply(ps.apply(cinv.apply(x))))
        .expect("conjugation by c preserves [1, c]")
}

/// `τ⁻¹(s) = δ⁻¹ s δ`.
pub fn tau_inverse(p: &IntervalPoset, s: usize) -> usize {
    let (c, cinv, ps) = (p.element(p.top()), p.inverse_element(p.top()), p.element(s));
    p.lookup(|x| cinv.apply(ps.apply(c.apply(x))))
        .expect("conjugation by c preserves [1, c]")
}

/// `τ^k(s)` for any integer `k`.
pub fn tau_pow(p: &IntervalPoset, s: usize, k: i64) -> usize {
    let mut s = s;
    for _ in 0..k.unsigned_abs() {
        s = if k > 0 { tau(p, s) } else { tau_inverse(p, s) };
    }
    s
}

/// Smallest `a ≥ 1` such that `c^a` commutes with every generator.
pub fn center_exponent(entry: &GroupCatalogEntry, c: &GroupElement) -> Result<u32, GroupError> {
    let mut power = c.clone();
    for a in 1..=entry.coxeter_number {
        let mut central = true;
        for g in &entry.generators {
            if group_multiply(&power, g)? != group_multiply(g, &power)? {
                central = false;
                break;
            }
        }
        if central {
            return Ok(a);
        }
        power = group_multiply(&power, c)?;
    }
    Err(GroupError::OrderBoundExceeded {
        bound: u64::from(entry.coxeter_number),
    })
}

/// `⟨R_c | r r' = r' r''⟩` with atoms and relation sides given as poset
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub relations: Vec<([usize; 2], [usize; 2])>,
}

/// One relation `r r' = r' r''` per ordered pair of distinct atoms whose
/// product is simple, with `r'' = r'⁻¹ r r'`; sorted, exact duplicates
/// removed.
pub fn dual_presentation(p: &IntervalPoset, conj: &ConjugationTable) -> Result<Presentation, GarsideError> {
    let generators = p.atoms().to_vec();
    let mut relations = Vec::new();
    for &a in &generators {
        for &b in &generators {
            if a == b || simple_product(p, a, b).is_none() {
                continue;
            }
            let (ra, rb) = (p.atom_reflection(a), p.atom_reflection(b));
            let rc = conj.conj(ra, rb);
            let c = p.reflection_atom(rc).ok_or(GarsideError::AtomResolutionFailure {
                left: ra,
                right: rb,
                conjugate: rc,
            })?;
            relations.push(([a, b], [b, c]));
        }
    }
    relations.sort_unstable();
    relations.dedup();
    Ok(Presentation { generators, relations })
}

/// Parses a simple given as a poset index (`17`) or an atom name (`r3`,
/// 1-based in canonical atom order).
pub fn parse_simple(p: &IntervalPoset, token: &str) -> Result<usize, GarsideError> {
    let t = token.trim();
    let bad = || GarsideError::UnknownSimple(t.to_string());
    if let Some(rest) = t.strip_prefix('r') {
        let i: usize = rest.parse().map_err(|_| bad())?;
        return p.atoms().get(i.wrapping_sub(1)).copied().ok_or_else(bad);
    }
    let i: usize = t.parse().map_err(|_| bad())?;
    (i < p.len()).then_some(i).ok_or_else(bad)
}

/// An element `δ^k · x` of the braid group, `x` positive and not
/// left-divisible by `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BraidElement {
    pub delta_power: i64,
    pub positive: MonoidElement,
}

impl BraidElement {
    pub fn identity() -> BraidElement {
        BraidElement::default()
    }

    /// Absorbs leading `δ` factors into the exponent.
    pub fn from_monoid(p: &IntervalPoset, x: MonoidElement) -> BraidElement {
        let lead = x.factors.iter().take_while(|&&s| s == p.top()).count();
        BraidElement {
            delta_power: lead as i64,
            positive: MonoidElement {
                factors: x.factors[lead..].to_vec(),
            },
        }
    }

    /// `δ^k`.
    pub fn delta(k: i64) -> BraidElement {
        BraidElement {
            delta_power: k,
            positive: MonoidElement::identity(),
        }
    }

    /// `(δ^k x)(δ^l y) = δ^{k+l} τ^{-l}(x) y`.
    pub fn multiply(&self, p: &IntervalPoset, other: &BraidElement) -> BraidElement {
        let l = other.delta_power;
        let mut word: Vec<usize> = self.positive.factors.iter().map(|&s| tau_pow(p, s, -l)).collect();
        word.extend_from_slice(&other.positive.factors);
        let mut out = BraidElement::from_monoid(p, normal_form(p, &word));
        out.delta_power += self.delta_power + l;
        out
    }

    /// Uses `s⁻¹ = ∂s · δ⁻¹ = δ⁻¹ τ(∂s)` with `∂s = s⁻¹ δ`.
    pub fn inverse(&self, p: &IntervalPoset) -> BraidElement {
        let mut acc = BraidElement::identity();
        for &s in self.positive.factors.iter().rev() {
            let inv = BraidElement {
                delta_power: -1,
                positive: normal_form(p, &[tau(p, p.kreweras(s))]),
            };
            acc = acc.multiply(p, &inv);
        }
        acc.multiply(p, &BraidElement::delta(-self.delta_power))
    }

    /// Image in `W` as a permutation of the roots.
    pub fn to_perm(&self, p: &IntervalPoset) -> crate::perm::Perm {
        let group = p.group();
        let c = p.element(p.top());
        let cpow = if self.delta_power >= 0 {
            (0..self.delta_power).fold(group.roots().identity(), |acc, _| acc.compose(c))
        } else {
            let cinv = p.inverse_element(p.top());
            (0..-self.delta_power).fold(group.roots().identity(), |acc, _| acc.compose(cinv))
        };
        self.positive
            .factors
            .iter()
            .fold(cpow, |acc, &s| acc.compose(p.element(s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::GroupName;
    use crate::interval::build_interval;
    use crate::reflgroup::ReflectionGroup;
    use alloc::sync::Arc;

    fn poset(name: &str) -> IntervalPoset {
        let entry = GroupName::parse(name).unwrap().build().unwrap();
        build_interval(&Arc::new(ReflectionGroup::new(entry).unwrap())).unwrap()
    }

    #[test]
    fn a2_monoid() {
        let p = poset("A2");
        let atoms = p.atoms().to_vec();
        let (r, top) = (atoms[0], p.top());
        assert_eq!(simple_product(&p, r, r), None);
        assert_eq!(simple_product(&p, r, p.kreweras(r)), Some(top));
        assert_eq!(normal_form(&p, &[r, p.kreweras(r)]).factors, [top]);
        assert_eq!(normal_form(&p, &[]).factors, Vec::<usize>::new());
        assert_eq!(normal_form(&p, &[r, top]).factors, [top, tau_inverse(&p, r)]);
        let pres = dual_presentation(&p, &ConjugationTable::new(p.group())).unwrap();
        assert_eq!((pres.generators.len(), pres.relations.len()), (3, 3));
        for (l, r) in &pres.relations {
            assert!(word_equal(&p, l, r));
        }
        let (a, b) = (atoms[0], atoms[1]);
        assert!(!word_equal(&p, &[a, b], &[b, a]));
    }

    #[test]
    fn braid_inverse() {
        let p = poset("B3");
        let x = BraidElement::from_monoid(&p, normal_form(&p, &[p.atoms()[1], p.atoms()[4], 3]));
        let y = x.inverse(&p);
        assert_eq!(x.multiply(&p, &y), BraidElement::identity());
        assert_eq!(y.multiply(&p, &x), BraidElement::identity());
        assert!(y.to_perm(&p).compose(&x.to_perm(&p)).is_identity());
    }

    #[test]
    fn center_exponents() {
        for (name, a) in [("A2", 3), ("I2(6)", 3), ("I2(5)", 5), ("B3", 3)] {
            let entry = GroupName::parse(name).unwrap().build().unwrap();
            let c = entry.coxeter_element().unwrap();
            assert_eq!(center_exponent(&entry, &c).unwrap(), a, "{name}");
        }
    }
}
