//! The interval `[1, c]` of the absolute order: construction, lattice
//! verification and enumerative invariants.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::bitset::{highest, lowest, ones, BitMatrix};
use crate::error::IntervalError;
use crate::perm::{ElemKey, Perm};
use crate::reflgroup::{fixed_space_codim, GroupCatalogEntry, GroupElement, ReflectionGroup};

/// Default cap on enumerated reduced decompositions.
pub const DEFAULT_DECOMPOSITION_CAP: u128 = 10_000_000;

/// A cover relation `below ⋖ above`, with `above = left · below` and
/// `above = below · right` for reflections `left` and `right` (indices into
/// the group's reflection list).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cover {
    pub below: u32,
    pub left: u32,
    pub right: u32,
}

/// The simples `S ≅ [1, c]` ordered by `≼_R`.
#[derive(Debug)]
pub struct IntervalPoset {
    group: Arc<ReflectionGroup>,
    elements: Vec<Perm>,
    inverses: Vec<Perm>,
    keys: Vec<ElemKey>,
    index: HashMap<ElemKey, u32>,
    rank_of: Vec<u8>,
    /// `down.row(w)` holds every `u ≼ w`.
    down: BitMatrix,
    /// `up.row(u)` holds every `w ≽ u`.
    up: BitMatrix,
    lower: Vec<Vec<Cover>>,
    upper: Vec<Vec<u32>>,
    atoms: Vec<usize>,
    kreweras: Vec<u32>,
    chains: Vec<u128>,
}

/// `l_R(u) + l_R(u⁻¹w) = l_R(w)` with lengths read as `codim fix`. Only
/// meaningful for elements below a Coxeter element.
pub fn absolute_leq(u: &GroupElement, w: &GroupElement) -> bool {
    let uw = crate::reflgroup::multiply(&u.inverse(), w).expect("same dimension");
    fixed_space_codim(u) + fixed_space_codim(&uw) == fixed_space_codim(w)
}

/// `Cat(W) = ∏ (d_i + h) / d_i`.
pub fn catalan_number(entry: &GroupCatalogEntry) -> Result<u128, IntervalError> {
    fuss_product(entry, 1, "Cat(W)")
}

/// `Z_W(N) = ∏ (d_i + N h) / d_i`.
pub fn zeta_formula(entry: &GroupCatalogEntry, n: u32) -> Result<u128, IntervalError> {
    fuss_product(entry, n, "Z_W(N)")
}

fn fuss_product(entry: &GroupCatalogEntry, n: u32, what: &'static str) -> Result<u128, IntervalError> {
    let h = u128::from(entry.coxeter_number);
    let mut num = 1u128;
    let mut den = 1u128;
    for &d in &entry.degrees {
        let d = u128::from(d);
        num = num
            .checked_mul(d + u128::from(n) * h)
            .ok_or(IntervalError::Overflow(what))?;
        den *= d;
    }
    if !num.is_multiple_of(den) {
        return Err(IntervalError::NonInteger { what });
    }
    Ok(num / den)
}

/// `|Red_R(c)| = n! h^n / |W|`.
pub fn reduced_decomposition_formula(entry: &GroupCatalogEntry) -> Result<u128, IntervalError> {
    let what = "n! h^n / |W|";
    let n = entry.rank as u32;
    let h = u128::from(entry.coxeter_number);
    let fact: u128 = (1..=u128::from(n)).product();
    let num = h
        .checked_pow(n)
        .and_then(|p| p.checked_mul(fact))
        .ok_or(IntervalError::Overflow(what))?;
    if num % entry.order != 0 {
        return Err(IntervalError::NonInteger { what });
    }
    Ok(num / entry.order)
}

/// Builds `[1, c]` by downward search from the group's Coxeter element.
pub fn build_interval(group: &Arc<ReflectionGroup>) -> Result<IntervalPoset, IntervalError> {
    IntervalPoset::build(group.clone())
}

impl IntervalPoset {
    /// Downward breadth-first search from `c`: the lower covers of `u` are
    /// the `r u` (`r ∈ R`) whose fixed space is one dimension larger.
    pub fn build(group: Arc<ReflectionGroup>) -> Result<IntervalPoset, IntervalError> {
        let entry = group.entry();
        let expected = catalan_number(entry)?;
        let n = group.rank();
        let roots = group.roots();
        let refl = group.reflection_perms();
        let c = group.coxeter_perm().clone();
        let top_rank = roots.codim(&c);
        if top_rank != n {
            return Err(IntervalError::FormulaMismatch {
                what: "codim fix(c)",
                found: top_rank as u128,
                expected: n as u128,
            });
        }

        // levels[k] lists the elements of rank k in discovery order
        let mut levels: Vec<Vec<Perm>> = vec![Vec::new(); n + 1];
        // (upper position, lower position, left reflection) per level
        let mut edges: Vec<Vec<(u32, u32, u32)>> = vec![Vec::new(); n + 1];
        levels[n].push(c);
        let mut total = 1usize;
        for k in (1..=n).rev() {
            let mut seen: HashMap<ElemKey, Option<u32>> = HashMap::new();
            let mut next: Vec<Perm> = Vec::new();
            for (ui, u) in levels[k].iter().enumerate() {
                for (ri, r) in refl.iter().enumerate() {
                    let f = |x: u16| r.apply(u.apply(x));
                    let key = roots.key_of(f);
                    let slot = match seen.get(&key) {
                        Some(&s) => s,
                        None => {
                            let s = (roots.codim_of(f) == k - 1).then(|| {
                                next.push(r.compose(u));
                                (next.len() - 1) as u32
                            });
                            seen.insert(key, s);
                            s
                        }
                    };
                    if let Some(vi) = slot {
                        edges[k].push((ui as u32, vi, ri as u32));
                    }
                }
            }
            total += next.len();
            if total as u128 > expected {
                return Err(IntervalError::CardinalMismatch { found: total, expected });
            }
            levels[k - 1] = next;
        }
        if total as u128 != expected {
            return Err(IntervalError::CardinalMismatch { found: total, expected });
        }

        // sort by (rank, key) and renumber
        let mut order: Vec<(u8, ElemKey, usize, usize)> = Vec::with_capacity(total);
        for (k, level) in levels.iter().enumerate() {
            for (i, p) in level.iter().enumerate() {
                order.push((k as u8, roots.key(p), k, i));
            }
        }
        order.sort_unstable();
        let mut position: Vec<Vec<u32>> = levels.iter().map(|l| vec![0; l.len()]).collect();
        for (new, &(_, _, k, i)) in order.iter().enumerate() {
            position[k][i] = new as u32;
        }
        let mut slots: Vec<Vec<Option<Perm>>> = levels.into_iter().map(|l| l.into_iter().map(Some).collect()).collect();
        let elements: Vec<Perm> = order
            .iter()
            .map(|&(_, _, k, i)| slots[k][i].take().expect("each element placed once"))
            .collect();
        let keys: Vec<ElemKey> = order.iter().map(|o| o.1).collect();
        let rank_of: Vec<u8> = order.iter().map(|o| o.0).collect();
        let index: HashMap<ElemKey, u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let inverses: Vec<Perm> = elements.iter().map(Perm::inverse).collect();

        let mut lower: Vec<Vec<Cover>> = vec![Vec::new(); total];
        let mut upper: Vec<Vec<u32>> = vec![Vec::new(); total];
        for (k, level_edges) in edges.iter().enumerate() {
            for &(ui, vi, left) in level_edges {
                let u = position[k][ui as usize] as usize;
                let v = position[k - 1][vi as usize];
                // right factor v⁻¹u = u⁻¹ r u
                let uinv = &inverses[u];
                let r = &refl[left as usize];
                let key = roots.key_of(|x| uinv.apply(r.apply(elements[u].apply(x))));
                let right = group
                    .reflection_by_key(key)
                    .expect("conjugates of reflections are reflections") as u32;
                lower[u].push(Cover { below: v, left, right });
                upper[v as usize].push(u as u32);
            }
        }
        for l in &mut lower {
            l.sort_unstable_by_key(|c| (c.below, c.left));
        }
        for u in &mut upper {
            u.sort_unstable();
        }

        let mut down = BitMatrix::new(total);
        for u in 0..total {
            down.set(u, u);
            for cov in &lower[u] {
                down.or_row(u, cov.below as usize);
            }
        }
        let mut up = BitMatrix::new(total);
        for v in (0..total).rev() {
            up.set(v, v);
            for &u in &upper[v] {
                up.or_row(v, u as usize);
            }
        }

        let top = total - 1;
        let c = &elements[top];
        let kreweras = inverses
            .iter()
            .map(|uinv| {
                let key = roots.key_of(|x| uinv.apply(c.apply(x)));
                index.get(&key).copied().ok_or(IntervalError::NotALattice {
                    u: 0,
                    w: top,
                    kind: "Kreweras complement",
                    candidates: Vec::new(),
                })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        let mut chains = vec![0u128; total];
        chains[0] = 1;
        for u in 1..total {
            let mut acc = 0u128;
            for cov in &lower[u] {
                acc = acc
                    .checked_add(chains[cov.below as usize])
                    .ok_or(IntervalError::Overflow("maximal chains"))?;
            }
            chains[u] = acc;
        }
        let atoms = (0..total).filter(|&i| rank_of[i] == 1).collect();
        Ok(IntervalPoset {
            group,
            elements,
            inverses,
            keys,
            index,
            rank_of,
            down,
            up,
            lower,
            upper,
            atoms,
            kreweras,
            chains,
        })
    }

    pub fn group(&self) -> &Arc<ReflectionGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn rank_of(&self, u: usize) -> usize {
        usize::from(self.rank_of[u])
    }

    pub fn element(&self, u: usize) -> &Perm {
        &self.elements[u]
    }

    pub fn inverse_element(&self, u: usize) -> &Perm {
        &self.inverses[u]
    }

    pub fn key(&self, u: usize) -> ElemKey {
        self.keys[u]
    }

    /// The simple as a matrix.
    pub fn group_element(&self, u: usize) -> GroupElement {
        self.group.element_of(&self.elements[u])
    }

    /// Index of the element acting on roots as `f`, if it lies in `[1, c]`.
    pub fn lookup(&self, f: impl Fn(u16) -> u16) -> Option<usize> {
        let key = self.group.roots().key_of(f);
        self.index.get(&key).map(|&i| i as usize)
    }

    pub fn index_of_key(&self, key: ElemKey) -> Option<usize> {
        self.index.get(&key).map(|&i| i as usize)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index_of_key(self.group.key(p))
    }

    pub fn index_of_element(&self, g: &GroupElement) -> Option<usize> {
        self.index_of(&self.group.perm_of(g)?)
    }

    /// Rank-1 elements, i.e. `R_c = R ∩ [1, c]`.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Reflection index of an atom.
    pub fn atom_reflection(&self, atom: usize) -> usize {
        self.group
            .reflection_by_key(self.keys[atom])
            .expect("atoms are reflections")
    }

    /// Poset index of reflection `r`, if `r ≼ c`.
    pub fn reflection_atom(&self, r: usize) -> Option<usize> {
        self.index_of(self.group.reflection_perm(r))
    }

    #[inline]
    pub fn leq(&self, u: usize, w: usize) -> bool {
        self.down.get(w, u)
    }

    pub fn lower_covers(&self, u: usize) -> &[Cover] {
        &self.lower[u]
    }

    pub fn upper_covers(&self, u: usize) -> &[u32] {
        &self.upper[u]
    }

    /// All cover relations `(below, above)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .lower
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |c| (c.below as usize, u)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of elements of each rank.
    pub fn rank_vector(&self) -> Vec<u128> {
        let mut v = vec![0u128; self.rank() + 1];
        for &r in &self.rank_of {
            v[usize::from(r)] += 1;
        }
        v
    }

    /// Index of `u⁻¹ c`.
    pub fn kreweras(&self, u: usize) -> usize {
        self.kreweras[u] as usize
    }

    /// Greatest common lower bound.
    pub fn meet(&self, u: usize, w: usize) -> Result<usize, IntervalError> {
        bound(&self.down, u, w, true).map_err(|candidates| IntervalError::NotALattice {
            u,
            w,
            kind: "meet",
            candidates,
        })
    }

    /// Least common upper bound.
    pub fn join(&self, u: usize, w: usize) -> Result<usize, IntervalError> {
        bound(&self.up, u, w, false).map_err(|candidates| IntervalError::NotALattice {
            u,
            w,
            kind: "join",
            candidates,
        })
    }

    /// Checks meet and join on every unordered pair (diagonal included).
    pub fn verify_lattice(&self) -> LatticeReport {
        #[cfg(feature = "std")]
        let start = std::time::Instant::now();
        let len = self.len();
        let check_row = |u: usize| -> (u64, Vec<IntervalError>) {
            let mut failures = Vec::new();
            for w in u..len {
                if let Err(e) = self.meet(u, w) {
                    failures.push(e);
                }
                if let Err(e) = self.join(u, w) {
                    failures.push(e);
                }
            }
            ((len - u) as u64, failures)
        };
        #[cfg(feature = "parallel")]
        let rows: Vec<(u64, Vec<IntervalError>)> = {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(check_row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<(u64, Vec<IntervalError>)> = (0..len).map(check_row).collect();
        let mut pairs = 0;
        let mut failures = Vec::new();
        for (p, f) in rows {
            pairs += p;
            failures.extend(f);
        }
        LatticeReport {
            elements: len,
            pairs,
            failures,
            #[cfg(feature = "std")]
            elapsed_ms: Some(start.elapsed().as_millis()),
            #[cfg(not(feature = "std"))]
            elapsed_ms: None,
        }
    }

    /// Number of weak chains `s_1 ≼ … ≼ s_N`, checked against
    /// `∏ (d_i + N h) / d_i`.
    pub fn zeta_count(&self, n: u32) -> Result<u128, IntervalError> {
        let found = self.zeta_count_unchecked(n)?;
        let expected = zeta_formula(self.group.entry(), n)?;
        if found != expected {
            return Err(IntervalError::FormulaMismatch {
                what: "Z_W(N)",
                found,
                expected,
            });
        }
        Ok(found)
    }

    /// Weak chain count by iterated vector-table products.
    pub fn zeta_count_unchecked(&self, n: u32) -> Result<u128, IntervalError> {
        if n == 0 {
            return Ok(1);
        }
        let mut f = vec![1u128; self.len()];
        for _ in 1..n {
            let mut g = vec![0u128; self.len()];
            for (t, slot) in g.iter_mut().enumerate() {
                let mut acc = 0u128;
                for s in ones(self.down.row(t)) {
                    acc = acc.checked_add(f[s]).ok_or(IntervalError::Overflow("Z_W(N)"))?;
                }
                *slot = acc;
            }
            f = g;
        }
        f.iter()
            .try_fold(0u128, |a, &b| a.checked_add(b))
            .ok_or(IntervalError::Overflow("Z_W(N)"))
    }

    /// Number of comparable pairs `u ≼ w`.
    pub fn relation_count(&self) -> u64 {
        self.down.count_ones()
    }

    /// Coefficients of `Σ_{s ∈ S} t^{l(s)}`.
    pub fn poincare_polynomial(&self) -> Vec<u128> {
        self.rank_vector()
    }

    /// Maximal chains of `[1, c]`, checked against `n! h^n / |W|`.
    pub fn count_maximal_chains(&self) -> Result<u128, IntervalError> {
        let found = self.chains[self.top()];
        let expected = reduced_decomposition_formula(self.group.entry())?;
        if found != expected {
            return Err(IntervalError::FormulaMismatch {
                what: "maximal chains",
                found,
                expected,
            });
        }
        Ok(found)
    }

    /// Maximal chains of `[1, u]`, i.e. `|Red_R(u)|`.
    pub fn chains_below(&self, u: usize) -> u128 {
        self.chains[u]
    }

    /// Calls `f` on every reduced decomposition of `u` (reflection indices,
    /// partial products climbing a maximal chain of `[1, u]`). Fails before
    /// enumerating anything if there are more than `cap`.
    pub fn for_each_reduced_decomposition(
        &self,
        u: usize,
        cap: u128,
        mut f: impl FnMut(&[usize]),
    ) -> Result<(), IntervalError> {
        let count = self.chains[u];
        if count > cap {
            return Err(IntervalError::CapExceeded { count, cap });
        }
        let mut buf = vec![0usize; self.rank_of(u)];
        self.descend(u, buf.len(), &mut buf, &mut f);
        Ok(())
    }

    fn descend(&self, u: usize, pos: usize, buf: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if pos == 0 {
            f(buf);
            return;
        }
        for cov in &self.lower[u] {
            buf[pos - 1] = cov.right as usize;
            self.descend(cov.below as usize, pos - 1, buf, f);
        }
    }

    pub fn reduced_decompositions(&self, u: usize, cap: u128) -> Result<Vec<Vec<usize>>, IntervalError> {
        let mut out = Vec::new();
        self.for_each_reduced_decomposition(u, cap, |d| out.push(d.to_vec()))?;
        Ok(out)
    }
}

/// Greatest element of `row(u) ∧ row(w)` in the order encoded by `table`
/// (highest index for down-sets, lowest for up-sets). On failure returns the
/// maximal (resp. minimal) common bounds.
fn bound(table: &BitMatrix, u: usize, w: usize, down: bool) -> Result<usize, Vec<usize>> {
    let (a, b) = (table.row(u), table.row(w));
    let common: Vec<u64> = a.iter().zip(b).map(|(x, y)| x & y).collect();
    let candidate = if down { highest(&common) } else { lowest(&common) };
    if let Some(m) = candidate {
        let dominated = table.row(m);
        if common.iter().zip(dominated).all(|(c, d)| c & !d == 0) {
            return Ok(m);
        }
    }
    // extremal common bounds: those not strictly below (above) another
    let members: Vec<usize> = ones(&common).collect();
    Err(members
        .iter()
        .copied()
        .filter(|&x| !members.iter().any(|&y| y != x && table.get(y, x)))
        .collect())
}

/// Outcome of [`IntervalPoset::verify_lattice`].
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub elements: usize,
    pub pairs: u64,
    pub failures: Vec<IntervalError>,
    pub elapsed_ms: Option<u128>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::GroupName;

    fn poset(name: &str) -> IntervalPoset {
        let entry = GroupName::parse(name).unwrap().build().unwrap();
        build_interval(&Arc::new(ReflectionGroup::new(entry).unwrap())).unwrap()
    }

    #[test]
    fn a2_is_nc3() {
        let p = poset("A2");
        assert_eq!(p.len(), 5);
        assert_eq!(p.poincare_polynomial(), [1, 3, 1]);
        assert_eq!(p.count_maximal_chains().unwrap(), 3);
        let (a, b) = (p.atoms()[0], p.atoms()[1]);
        assert_eq!(p.meet(a, b).unwrap(), p.bottom());
        assert_eq!(p.join(a, b).unwrap(), p.top());
        assert_eq!(p.kreweras(p.bottom()), p.top());
        let report = p.verify_lattice();
        assert_eq!((report.pairs, report.failures.len()), (15, 0));
        assert_eq!(p.reduced_decompositions(p.top(), 100).unwrap().len(), 3);
    }

    #[test]
    fn families_match_formulas() {
        for name in ["A4", "B4", "D4", "I2(7)", "G(3,3,3)", "G(4,4,3)"] {
            let p = poset(name);
            p.count_maximal_chains().unwrap();
            for n in 1..=4 {
                p.zeta_count(n).unwrap();
            }
            assert!(p.verify_lattice().passed(), "{name}");
        }
    }
}
