//! Well-generated 2-reflection groups given by generator matrices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_integer::Integer;

use crate::cyclo::{CycNum, Cyclotomic};
use crate::error::GroupError;
use crate::matrix::{Matrix, Vector};
use crate::perm::{ElemKey, Perm, RootSystem};

/// An element of `W ⊂ GL(V)` as a matrix in the catalog basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement(Matrix);

impl GroupElement {
    pub fn new(m: Matrix) -> GroupElement {
        GroupElement(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.dim()
    }

    pub fn identity(field: &Arc<Cyclotomic>, n: usize) -> GroupElement {
        GroupElement(Matrix::identity(field, n))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement(self.0.inverse().expect("group elements are invertible"))
    }
}

/// Matrix product `a · b`.
pub fn multiply(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
    a.0.mul(&b.0).map(GroupElement)
}

/// `codim ker(g - 1)`, by exact Gaussian elimination.
pub fn fixed_space_codim(g: &GroupElement) -> usize {
    let id = Matrix::identity(g.0.field(), g.rank());
    g.0.sub(&id).expect("square").rank()
}

/// Smallest `k ≥ 1` with `g^k = 1`, searching up to `bound`.
pub fn element_order(g: &GroupElement, bound: u64) -> Result<u64, GroupError> {
    let mut acc = g.0.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(&g.0)?;
    }
    Err(GroupError::OrderBoundExceeded { bound })
}

/// A reflection of `W`, with its position in the canonical list.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub index: usize,
    pub element: GroupElement,
    /// Basis of the reflecting hyperplane `ker(r - 1)`.
    pub hyperplane: Vec<Vector>,
}

/// Validated data for one irreducible well-generated 2-reflection group.
#[derive(Clone, Debug)]
pub struct GroupCatalogEntry {
    pub name: String,
    pub rank: usize,
    pub field: Arc<Cyclotomic>,
    pub generators: Vec<GroupElement>,
    pub degrees: Vec<u32>,
    pub coxeter_number: u32,
    pub codegrees: Vec<u32>,
    pub order: u128,
    pub reflection_count: usize,
}

impl GroupCatalogEntry {
    /// Checks every structural invariant except those needing the
    /// reflection closure and the Coxeter spectrum (see
    /// [`ReflectionGroup::new`]).
    pub fn new(
        name: impl Into<String>,
        field: Arc<Cyclotomic>,
        generators: Vec<Matrix>,
        degrees: Vec<u32>,
    ) -> Result<GroupCatalogEntry, GroupError> {
        let name = name.into();
        let fail = |check: &'static str, detail: String| GroupError::CatalogValidation {
            group: name.clone(),
            check,
            detail,
        };
        let rank = degrees.len();
        if rank == 0 {
            return Err(fail("rank", "no degrees given".into()));
        }
        if rank > 8 {
            return Err(GroupError::RankTooLarge(rank));
        }
        if generators.len() != rank {
            return Err(fail(
                "generator count",
                format!("{} generators for rank {rank}", generators.len()),
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) || degrees[0] < 2 {
            return Err(fail("degrees", format!("{degrees:?} must be sorted and at least 2")));
        }
        let id = Matrix::identity(&field, rank);
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != rank {
                return Err(fail("generator dimension", format!("generator {i} is {}x{0}", g.dim())));
            }
            if g.field().conductor() != field.conductor() {
                return Err(fail(
                    "conductor",
                    format!("generator {i} lives at conductor {}", g.field().conductor()),
                ));
            }
            if !g.mul(g)?.is_identity() {
                return Err(fail("generator order", format!("generator {i} does not square to 1")));
            }
            let codim = g.sub(&id)?.rank();
            if codim != 1 {
                return Err(fail(
                    "generator is a reflection",
                    format!("generator {i} has codim fix = {codim}"),
                ));
            }
        }
        if !is_irreducible(&generators) {
            return Err(fail(
                "irreducible",
                "the generators split into commuting blocks or fix a vector".into(),
            ));
        }
        let h = degrees[rank - 1];
        let codegrees: Vec<u32> = degrees.iter().map(|d| h - d).collect();
        let reflection_count: usize = degrees.iter().map(|&d| d as usize - 1).sum();
        // Well-generated duality: with d_i* = h - d_i, the hyperplane count
        // Σ(d_i* + 1) must equal the reflection count Σ(d_i - 1), since each
        // hyperplane carries exactly one reflection of order 2.
        let hyperplanes: usize = codegrees.iter().map(|&c| c as usize + 1).sum();
        if hyperplanes != reflection_count {
            return Err(fail(
                "duality d_i + d_i* = d_n",
                format!("Σ(d_i*+1) = {hyperplanes} but Σ(d_i-1) = {reflection_count}"),
            ));
        }
        let order = degrees.iter().map(|&d| u128::from(d)).product();
        Ok(GroupCatalogEntry {
            name,
            rank,
            field,
            generators: generators.into_iter().map(GroupElement).collect(),
            degrees,
            coxeter_number: h,
            codegrees,
            order,
            reflection_count,
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(&self.field, self.rank)
    }

    /// Checks a catalog's declared `|W|` and `|R|` against the degrees.
    pub fn check_declared(&self, order: u128, reflections: usize) -> Result<(), GroupError> {
        if order != self.order || reflections != self.reflection_count {
            return Err(GroupError::CatalogValidation {
                group: self.name.clone(),
                check: "declared counts",
                detail: format!(
                    "declared |W| = {order}, |R| = {reflections}; degrees give {}, {}",
                    self.order, self.reflection_count
                ),
            });
        }
        Ok(())
    }

    /// All reflections: the closure of the generators under conjugation by
    /// the generators, sorted by matrix.
    pub fn enumerate_reflections(&self) -> Result<Vec<Reflection>, GroupError> {
        let closure = reflection_closure(self)?;
        Ok(closure
            .matrices
            .into_iter()
            .enumerate()
            .map(|(index, m)| {
                let id = Matrix::identity(&self.field, self.rank);
                let hyperplane = m.sub(&id).expect("square").kernel();
                Reflection {
                    index,
                    element: GroupElement(m),
                    hyperplane,
                }
            })
            .collect())
    }

    /// Product of the generators in catalog order, checked to have
    /// eigenvalues `ζ_h^{1-d_i}` (as a multiset).
    pub fn coxeter_element(&self) -> Result<GroupElement, GroupError> {
        let mut c = self.identity().0;
        for g in &self.generators {
            c = c.mul(&g.0)?;
        }
        self.check_coxeter_spectrum(&c)?;
        Ok(GroupElement(c))
    }

    fn check_coxeter_spectrum(&self, c: &Matrix) -> Result<(), GroupError> {
        let h = self.coxeter_number;
        let big = Cyclotomic::new(self.field.conductor().lcm(&h));
        let cp = c.embed(&big)?.char_poly();
        // ∏ (x - ζ_h^{1-d_i}), lowest degree first
        let step = i64::from(big.conductor() / h);
        let mut want: Vec<CycNum> = alloc::vec![big.one()];
        for &d in &self.degrees {
            let root = big.root((1 - i64::from(d)) * step);
            let mut next = alloc::vec![big.zero(); want.len() + 1];
            for (k, a) in want.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] - &(a * &root);
            }
            want = next;
        }
        if cp != want {
            return Err(GroupError::NotCoxeter {
                group: self.name.clone(),
                detail: "characteristic polynomial differs from ∏(x - ζ_h^{1-d_i})".to_string(),
            });
        }
        Ok(())
    }
}

/// Irreducible iff the roots span `V` and the non-commutation graph of the
/// generators is connected.
fn is_irreducible(generators: &[Matrix]) -> bool {
    let n = generators.len();
    let field = generators[0].field().clone();
    let id = Matrix::identity(&field, n);
    let roots: Vec<Vector> = generators
        .iter()
        .filter_map(|g| {
            let d = g.sub(&id).ok()?;
            (0..n).map(|j| d.column(j)).find(|c| c.iter().any(|x| !x.is_zero()))
        })
        .collect();
    if roots.len() != n || Matrix::from_columns(&roots).map(|m| m.rank()) != Ok(n) {
        return false;
    }
    let mut seen = alloc::vec![false; n];
    let mut stack = alloc::vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] {
                let ab = generators[i].mul(&generators[j]).expect("same dim");
                let ba = generators[j].mul(&generators[i]).expect("same dim");
                if ab != ba {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

struct Closure {
    /// Sorted reflection matrices.
    matrices: Vec<Matrix>,
    /// For each sorted reflection, `None` for a generator or the
    /// `(sorted parent, generator)` pair it was reached from.
    provenance: Vec<Result<usize, (usize, usize)>>,
}

fn reflection_closure(entry: &GroupCatalogEntry) -> Result<Closure, GroupError> {
    let bound = 2 * entry.reflection_count;
    let gens: Vec<&Matrix> = entry.generators.iter().map(|g| &g.0).collect();
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    let mut found: Vec<Matrix> = Vec::new();
    let mut prov: Vec<Result<usize, (usize, usize)>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !index.contains_key(*g) {
            index.insert((*g).clone(), found.len());
            found.push((*g).clone());
            prov.push(Ok(i));
        }
    }
    let mut next = 0;
    while next < found.len() {
        for (gi, g) in gens.iter().enumerate() {
            // generators are involutions: g^{-1} r g = g r g
            let c = g.mul(&found[next])?.mul(g)?;
            if !index.contains_key(&c) {
                if found.len() >= bound {
                    return Err(GroupError::ClosureBoundExceeded { bound });
                }
                index.insert(c.clone(), found.len());
                found.push(c);
                prov.push(Err((next, gi)));
            }
        }
        next += 1;
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].cmp(&found[b]));
    let mut new_of = alloc::vec![0usize; found.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let provenance = order
        .iter()
        .map(|&old| match prov[old] {
            Ok(g) => Ok(g),
            Err((parent, g)) => Err((new_of[parent], g)),
        })
        .collect();
    let mut slots: Vec<Option<Matrix>> = found.into_iter().map(Some).collect();
    let matrices = order.iter().map(|&old| slots[old].take().unwrap()).collect();
    Ok(Closure { matrices, provenance })
}

/// A validated group with its reflections, Coxeter element and the
/// permutation representation used by every combinatorial algorithm.
#[derive(Debug)]
pub struct ReflectionGroup {
    entry: GroupCatalogEntry,
    reflections: Vec<Reflection>,
    coxeter: GroupElement,
    roots: RootSystem,
    reflection_perms: Vec<Perm>,
    reflection_index: HashMap<ElemKey, usize>,
    coxeter_perm: Perm,
}

impl ReflectionGroup {
    /// Finishes validation: the reflection closure must have exactly
    /// `Σ(d_i - 1)` elements, all of order 2 with codim-1 fixed space, and
    /// the generator product must pass the Coxeter spectrum check.
    pub fn new(entry: GroupCatalogEntry) -> Result<ReflectionGroup, GroupError> {
        let fail = |check: &'static str, detail: String| GroupError::CatalogValidation {
            group: entry.name.clone(),
            check,
            detail,
        };
        let closure = reflection_closure(&entry)?;
        if closure.matrices.len() != entry.reflection_count {
            return Err(fail(
                "reflection count",
                format!(
                    "closure has {} reflections, degrees give {}",
                    closure.matrices.len(),
                    entry.reflection_count
                ),
            ));
        }
        let roots = RootSystem::new(&entry.generators.iter().map(|g| g.0.clone()).collect::<Vec<_>>()).map_err(
            |e| match e {
                GroupError::CatalogValidation { check, detail, .. } => fail(check, detail),
                other => other,
            },
        )?;
        let gens = roots.generator_perms();
        // permutations in dependency order: parents before children
        let mut perms: Vec<Option<Perm>> = alloc::vec![None; closure.matrices.len()];
        let mut pending: Vec<usize> = (0..perms.len()).collect();
        while !pending.is_empty() {
            let before = pending.len();
            pending.retain(|&i| match closure.provenance[i] {
                Ok(g) => {
                    perms[i] = Some(gens[g].clone());
                    false
                }
                Err((parent, g)) => match &perms[parent] {
                    Some(p) => {
                        perms[i] = Some(gens[g].compose(p).compose(&gens[g]));
                        false
                    }
                    None => true,
                },
            });
            assert!(pending.len() < before, "closure provenance is acyclic");
        }
        let reflection_perms: Vec<Perm> = perms.into_iter().map(Option::unwrap).collect();
        let id = Matrix::identity(&entry.field, entry.rank);
        let mut reflections = Vec::with_capacity(closure.matrices.len());
        for (index, m) in closure.matrices.into_iter().enumerate() {
            let d = m.sub(&id)?;
            if d.rank() != 1 || !m.mul(&m)?.is_identity() {
                return Err(fail(
                    "reflection closure",
                    format!("conjugate {index} is not a 2-reflection"),
                ));
            }
            reflections.push(Reflection {
                index,
                element: GroupElement(m),
                hyperplane: d.kernel(),
            });
        }
        let reflection_index = reflection_perms
            .iter()
            .enumerate()
            .map(|(i, p)| (roots.key(p), i))
            .collect::<HashMap<_, _>>();
        if reflection_index.len() != reflection_perms.len() {
            return Err(fail(
                "reflection closure",
                "distinct reflections share a permutation".into(),
            ));
        }
        let coxeter = entry.coxeter_element()?;
        let coxeter_perm = gens.iter().fold(roots.identity(), |acc, g| acc.compose(g));
        Ok(ReflectionGroup {
            entry,
            reflections,
            coxeter,
            roots,
            reflection_perms,
            reflection_index,
            coxeter_perm,
        })
    }

    pub fn entry(&self) -> &GroupCatalogEntry {
        &self.entry
    }

    pub fn name(&self) -> &str {
        &self.entry.name
    }

    pub fn rank(&self) -> usize {
        self.entry.rank
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn coxeter_element(&self) -> &GroupElement {
        &self.coxeter
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn reflection_perm(&self, i: usize) -> &Perm {
        &self.reflection_perms[i]
    }

    pub fn reflection_perms(&self) -> &[Perm] {
        &self.reflection_perms
    }

    pub fn coxeter_perm(&self) -> &Perm {
        &self.coxeter_perm
    }

    pub fn key(&self, p: &Perm) -> ElemKey {
        self.roots.key(p)
    }

    /// Index of the reflection with this permutation, if it is one.
    pub fn reflection_of(&self, p: &Perm) -> Option<usize> {
        self.reflection_index.get(&self.roots.key(p)).copied()
    }

    pub fn reflection_by_key(&self, k: ElemKey) -> Option<usize> {
        self.reflection_index.get(&k).copied()
    }

    pub fn codim(&self, p: &Perm) -> usize {
        self.roots.codim(p)
    }

    pub fn perm_of(&self, g: &GroupElement) -> Option<Perm> {
        self.roots.perm_of(g.matrix())
    }

    pub fn element_of(&self, p: &Perm) -> GroupElement {
        GroupElement(self.roots.matrix_of(p))
    }

    /// Default search bound for [`element_order`].
    pub fn order_bound(&self) -> u64 {
        2 * u64::from(self.entry.coxeter_number)
    }

    /// Every element of `W`, by breadth-first search over the generators.
    /// Fails once more than `cap` elements are found.
    pub fn enumerate_elements(&self, cap: usize) -> Option<Vec<Perm>> {
        let gens = self.roots.generator_perms();
        let id = self.roots.identity();
        let mut seen: hashbrown::HashSet<ElemKey> = hashbrown::HashSet::new();
        seen.insert(self.key(&id));
        let mut all = alloc::vec![id];
        let mut next = 0;
        while next < all.len() {
            for g in gens {
                let p = g.compose(&all[next]);
                if seen.insert(self.key(&p)) {
                    if all.len() >= cap {
                        return None;
                    }
                    all.push(p);
                }
            }
            next += 1;
        }
        Some(all)
    }
}
