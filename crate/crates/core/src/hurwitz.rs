//! Hurwitz action of the braid group `B_n` on tuples of reflections.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::error::HurwitzError;
use crate::interval::IntervalPoset;
use crate::reflgroup::ReflectionGroup;

/// Default cap on orbit sizes.
pub const DEFAULT_ORBIT_CAP: usize = 2_000_000;

/// `table[r][s]` is the index of `s⁻¹ r s`.
#[derive(Clone, Debug)]
pub struct ConjugationTable {
    len: usize,
    table: Vec<u16>,
}

impl ConjugationTable {
    pub fn new(group: &ReflectionGroup) -> ConjugationTable {
        let perms = group.reflection_perms();
        let len = perms.len();
        let roots = group.roots();
        let mut table = Vec::with_capacity(len * len);
        for r in perms {
            for s in perms {
                // reflections are involutions: s⁻¹ r s = s r s
                let key = roots.key_of(|x| s.apply(r.apply(s.apply(x))));
                let idx = group
                    .reflection_by_key(key)
                    .expect("the reflection set is closed under conjugation");
                table.push(idx as u16);
            }
        }
        ConjugationTable { len, table }
    }

    /// Index of `s⁻¹ r s`.
    #[inline]
    pub fn conj(&self, r: usize, s: usize) -> usize {
        usize::from(self.table[r * self.len + s])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// A tuple of reflection indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReflTuple {
    pub entries: Vec<usize>,
}

impl ReflTuple {
    pub fn new(entries: Vec<usize>) -> ReflTuple {
        ReflTuple { entries }
    }
}

/// `σ_i` (or `σ_i⁻¹`) at 1-based position `i`: the forward move replaces
/// `(g_i, g_{i+1})` by `(g_{i+1}, g_{i+1}⁻¹ g_i g_{i+1})`.
pub fn hurwitz_move(
    conj: &ConjugationTable,
    t: &ReflTuple,
    i: usize,
    inverse: bool,
) -> Result<ReflTuple, HurwitzError> {
    if i == 0 || i >= t.entries.len() {
        return Err(HurwitzError::BadPosition(i));
    }
    let mut out = t.clone();
    let (a, b) = (t.entries[i - 1], t.entries[i]);
    if inverse {
        out.entries[i - 1] = conj.conj(b, a);
        out.entries[i] = a;
    } else {
        out.entries[i - 1] = b;
        out.entries[i] = conj.conj(a, b);
    }
    Ok(out)
}

/// Fixed-width packing of tuples into one `u64`.
#[derive(Clone, Copy, Debug)]
pub struct TupleCodec {
    width: usize,
    bits: u32,
}

impl TupleCodec {
    pub fn new(width: usize, alphabet: usize) -> Result<TupleCodec, HurwitzError> {
        let bits = usize::BITS - alphabet.saturating_sub(1).leading_zeros();
        let bits = bits.max(1);
        if width as u32 * bits > 64 {
            return Err(HurwitzError::TupleTooWide { width, bits });
        }
        Ok(TupleCodec { width, bits })
    }

    pub fn pack(&self, entries: &[usize]) -> u64 {
        entries.iter().fold(0u64, |acc, &e| (acc << self.bits) | e as u64)
    }

    pub fn unpack(&self, key: u64) -> Vec<usize> {
        let mask = (1u64 << self.bits) - 1;
        (0..self.width)
            .rev()
            .map(|k| ((key >> (k as u32 * self.bits)) & mask) as usize)
            .collect()
    }

    #[inline]
    fn get(&self, key: u64, pos: usize) -> usize {
        let shift = (self.width - 1 - pos) as u32 * self.bits;
        ((key >> shift) & ((1u64 << self.bits) - 1)) as usize
    }

    #[inline]
    fn set_pair(&self, key: u64, pos: usize, a: usize, b: usize) -> u64 {
        let mask = (1u64 << self.bits) - 1;
        let sa = (self.width - 1 - pos) as u32 * self.bits;
        let sb = sa - self.bits;
        let cleared = key & !(mask << sa) & !(mask << sb);
        cleared | (a as u64) << sa | (b as u64) << sb
    }
}

/// A Hurwitz orbit: sorted packed tuples plus BFS statistics.
#[derive(Clone, Debug)]
pub struct HurwitzOrbit {
    pub codec: TupleCodec,
    /// Packed tuples in ascending order.
    pub tuples: Vec<u64>,
    /// Number of BFS levels beyond the start.
    pub depth: usize,
}

impl HurwitzOrbit {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &ReflTuple) -> bool {
        self.tuples.binary_search(&self.codec.pack(&t.entries)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ReflTuple> + '_ {
        self.tuples.iter().map(|&k| ReflTuple::new(self.codec.unpack(k)))
    }
}

/// Breadth-first closure of `start` under all `σ_i^{±1}`, processed in
/// sorted level batches. Fails once more than `cap` tuples are seen.
pub fn hurwitz_orbit(conj: &ConjugationTable, start: &ReflTuple, cap: usize) -> Result<HurwitzOrbit, HurwitzError> {
    let width = start.entries.len();
    let codec = TupleCodec::new(width, conj.len())?;
    let first = codec.pack(&start.entries);
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(first);
    let mut frontier = vec![first];
    let mut depth = 0;
    let expand = |key: u64, out: &mut Vec<u64>| {
        for pos in 0..width.saturating_sub(1) {
            let a = codec.get(key, pos);
            let b = codec.get(key, pos + 1);
            out.push(codec.set_pair(key, pos, b, conj.conj(a, b)));
            out.push(codec.set_pair(key, pos, conj.conj(b, a), a));
        }
    };
    while !frontier.is_empty() {
        #[cfg(feature = "parallel")]
        let candidates: Vec<u64> = {
            use rayon::prelude::*;
            frontier
                .par_chunks(4096)
                .flat_map_iter(|chunk| {
                    let mut out = Vec::with_capacity(chunk.len() * 2 * width);
                    for &k in chunk {
                        expand(k, &mut out);
                    }
                    out
                })
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let candidates: Vec<u64> = {
            let mut out = Vec::with_capacity(frontier.len() * 2 * width);
            for &k in &frontier {
                expand(k, &mut out);
            }
            out
        };
        let mut next = Vec::new();
        for k in candidates {
            if seen.insert(k) {
                if seen.len() > cap {
                    return Err(HurwitzError::CapExceeded { cap });
                }
                next.push(k);
            }
        }
        next.sort_unstable();
        if !next.is_empty() {
            depth += 1;
        }
        frontier = next;
    }
    let mut tuples: Vec<u64> = seen.into_iter().collect();
    tuples.sort_unstable();
    Ok(HurwitzOrbit { codec, tuples, depth })
}

/// Both cardinals compared by [`verify_transitivity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub element: usize,
    pub decompositions: usize,
    pub orbit: usize,
    pub depth: usize,
}

/// Checks that `Red_R(u)` is a single Hurwitz orbit.
pub fn verify_transitivity(
    p: &IntervalPoset,
    conj: &ConjugationTable,
    u: usize,
    cap: usize,
) -> Result<TransitivityReport, HurwitzError> {
    let width = p.rank_of(u);
    let codec = TupleCodec::new(width.max(1), conj.len())?;
    let mut red: Vec<u64> = Vec::new();
    let mut first: Option<Vec<usize>> = None;
    p.for_each_reduced_decomposition(u, cap as u128, |d| {
        if first.is_none() {
            first = Some(d.to_vec());
        }
        red.push(codec.pack(d));
    })?;
    red.sort_unstable();
    let start = first.expect("every simple has a reduced decomposition");
    let orbit = hurwitz_orbit(conj, &ReflTuple::new(start), cap)?;
    if width > 0 && orbit.tuples != red {
        return Err(HurwitzError::TransitivityFailure {
            orbit: orbit.len(),
            expected: red.len(),
        });
    }
    Ok(TransitivityReport {
        element: u,
        decompositions: red.len(),
        orbit: orbit.len(),
        depth: orbit.depth,
    })
}
