//! Permutation representation of `W` on a finite root orbit.
//!
//! `W` permutes the orbit `Φ = W·{α_1, …, α_n}` of the generator roots, and
//! since `Φ` spans `V` the action is faithful. Elements are stored as
//! permutations of `Φ`, so products, inverses and equality tests are integer
//! operations. An element is identified by the images of a fixed basis
//! `b_1, …, b_n ⊂ Φ`.
//!
//! The fixed-space dimension is read off exactly from the averaging
//! identity `dim fix(w) = (1/|w|) Σ_k tr(w^k)`. Per basis root the sum folds
//! into one cycle, so with `ℓ_i` the length of the cycle through `b_i`,
//! `dim fix(w) = Σ_i (1/ℓ_i) Σ_{k<ℓ_i} coord_i(w^k b_i)`. The right-hand side
//! is evaluated in a prime field into which the root coordinates reduce; the
//! value is an integer in `[0, n]`, far below the modulus, so the reduction
//! determines it.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::GroupError;
use crate::matrix::{Matrix, Vector};
use crate::modp::PrimeField;

/// Upper bound on `|Φ|`; indices are stored as `u16`.
pub const MAX_ROOTS: usize = u16::MAX as usize;

/// A permutation of the root orbit; `self[x]` is the image of root `x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(len: usize) -> Perm {
        Perm((0..len as u16).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Perm {
        Perm(images)
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u16) -> u16 {
        self.0[x as usize]
    }

    /// `self ∘ other`: first `other`, then `self`. This is the permutation of
    /// the matrix product `self · other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut acc = 1u64;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            acc = num_integer::lcm(acc, len);
        }
        acc
    }
}

/// Canonical identifier of an element: images of the basis roots, packed
/// 16 bits each.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElemKey(u128);

impl ElemKey {
    fn pack(images: impl Iterator<Item = u16>) -> ElemKey {
        ElemKey(images.fold(0u128, |acc, x| (acc << 16) | u128::from(x)))
    }
}

/// The root orbit, the basis, and root coordinates reduced mod p.
#[derive(Debug, Clone)]
pub struct RootSystem {
    rank: usize,
    roots: Vec<Vector>,
    basis: Vec<u16>,
    /// `coords[root * rank + i]` is coordinate `i` of the root in the basis.
    coords: Vec<u64>,
    prime: PrimeField,
    generators: Vec<Perm>,
    basis_inverse: Matrix,
}

impl RootSystem {
    /// Builds `Φ` from the generator matrices, all of which must be
    /// reflections (`g - 1` of rank one).
    pub fn new(generators: &[Matrix]) -> Result<RootSystem, GroupError> {
        let rank = generators.first().map_or(0, Matrix::dim);
        if rank > 8 {
            return Err(GroupError::RankTooLarge(rank));
        }
        let field = generators[0].field().clone();
        let id = Matrix::identity(&field, rank);
        let mut index: HashMap<Vector, usize> = HashMap::new();
        let mut roots: Vec<Vector> = Vec::new();
        for g in generators {
            let d = g.sub(&id)?;
            let col = (0..rank)
                .map(|j| d.column(j))
                .find(|c| c.iter().any(|x| !x.is_zero()))
                .ok_or(GroupError::CatalogValidation {
                    group: alloc::string::String::new(),
                    check: "generator is a reflection",
                    detail: "generator is the identity".into(),
                })?;
            if !index.contains_key(&col) {
                index.insert(col.clone(), roots.len());
                roots.push(col);
            }
        }
        // closure under the generators, recording images
        let mut images: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
        let mut next = 0;
        while next < roots.len() {
            for (gi, g) in generators.iter().enumerate() {
                let img = g.apply(&roots[next]);
                let id = match index.get(&img) {
                    Some(&i) => i,
                    None => {
                        if roots.len() >= MAX_ROOTS {
                            return Err(GroupError::RootBoundExceeded { bound: MAX_ROOTS });
                        }
                        index.insert(img.clone(), roots.len());
                        roots.push(img);
                        roots.len() - 1
                    }
                };
                images[gi].push(id);
            }
            next += 1;
        }
        // canonical order of roots
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by(|&a, &b| roots[a].cmp(&roots[b]));
        let mut rank_of = vec![0usize; roots.len()];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new;
        }
        let generators_perm: Vec<Perm> = images
            .iter()
            .map(|img| {
                let mut p = vec![0u16; roots.len()];
                for (old, &im) in img.iter().enumerate() {
                    p[rank_of[old]] = rank_of[im] as u16;
                }
                Perm(p)
            })
            .collect();
        let roots: Vec<Vector> = order.iter().map(|&i| roots[i].clone()).collect();

        // greedy basis in canonical order
        let mut basis: Vec<u16> = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            let mut cols: Vec<Vector> = basis.iter().map(|&b| roots[b as usize].clone()).collect();
            cols.push(r.clone());
            while cols.len() < rank {
                cols.push(vec![field.zero(); rank]);
            }
            if Matrix::from_columns(&cols)?.rank() == basis.len() + 1 {
                basis.push(i as u16);
                if basis.len() == rank {
                    break;
                }
            }
        }
        if basis.len() != rank {
            return Err(GroupError::CatalogValidation {
                group: alloc::string::String::new(),
                check: "roots span V",
                detail: alloc::format!("roots span a space of dimension {}", basis.len()),
            });
        }
        let bmat = Matrix::from_columns(&basis.iter().map(|&b| roots[b as usize].clone()).collect::<Vec<_>>())?;
        let basis_inverse = bmat.inverse().expect("basis is independent");
        let exact: Vec<Vector> = roots.iter().map(|r| basis_inverse.apply(r)).collect();
        let m = field.conductor();
        let mut found = None;
        for prime in PrimeField::candidates(m).take(16) {
            let reduced: Result<Vec<u64>, _> = exact.iter().flat_map(|c| c.iter().map(|x| prime.reduce(x))).collect();
            if let Ok(coords) = reduced {
                found = Some((prime, coords));
                break;
            }
        }
        let (prime, coords) = found.ok_or(GroupError::NoModularImage(m))?;
        Ok(RootSystem {
            rank,
            roots,
            basis,
            coords,
            prime,
            generators: generators_perm,
            basis_inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn basis(&self) -> &[u16] {
        &self.basis
    }

    pub fn generator_perms(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.roots.len())
    }

    pub fn key(&self, p: &Perm) -> ElemKey {
        ElemKey::pack(self.basis.iter().map(|&b| p.apply(b)))
    }

    /// Key of the element `x ↦ f(x)` without materializing it.
    pub fn key_of(&self, f: impl Fn(u16) -> u16) -> ElemKey {
        ElemKey::pack(self.basis.iter().map(|&b| f(b)))
    }

    /// `dim ker(w - 1)` for the element acting as `f` on root indices.
    pub fn fixed_dim_of(&self, f: impl Fn(u16) -> u16) -> usize {
        let pf = &self.prime;
        let mut total = 0u64;
        for (i, &b) in self.basis.iter().enumerate() {
            let mut sum = 0u64;
            let mut len = 0u64;
            let mut x = b;
            loop {
                sum = pf.add(sum, self.coords[x as usize * self.rank + i]);
                len += 1;
                x = f(x);
                if x == b {
                    break;
                }
            }
            let inv = pf.inv(len).expect("cycle length below modulus");
            total = pf.add(total, pf.mul(sum, inv));
        }
        debug_assert!(total as usize <= self.rank, "fixed-space dimension out of range");
        total as usize
    }

    pub fn fixed_dim(&self, p: &Perm) -> usize {
        self.fixed_dim_of(|x| p.apply(x))
    }

    /// `codim ker(w - 1)`.
    pub fn codim(&self, p: &Perm) -> usize {
        self.rank - self.fixed_dim(p)
    }

    pub fn codim_of(&self, f: impl Fn(u16) -> u16) -> usize {
        self.rank - self.fixed_dim_of(f)
    }

    /// Permutation induced by a matrix; fails if the matrix does not
    /// permute `Φ`.
    pub fn perm_of(&self, m: &Matrix) -> Option<Perm> {
        let index: HashMap<&Vector, u16> = self.roots.iter().enumerate().map(|(i, r)| (r, i as u16)).collect();
        self.roots
            .iter()
            .map(|r| index.get(&m.apply(r)).copied())
            .collect::<Option<Vec<_>>>()
            .map(Perm)
    }

    /// The matrix of an element, `B' B^{-1}` with `B'` the images of the basis.
    pub fn matrix_of(&self, p: &Perm) -> Matrix {
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .map(|&b| self.roots[p.apply(b) as usize].clone())
            .collect();
        Matrix::from_columns(&cols)
            .expect("square")
            .mul(&self.basis_inverse)
            .expect("same dimension")
    }
}
