//! Reduction of `Z_(p)[ζ_m]` into a prime field `F_p` with `p ≡ 1 (mod m)`.
//!
//! The map `ζ_m ↦ ω`, `ω` a primitive `m`-th root of unity mod `p`, is a ring
//! homomorphism on every element whose denominators are prime to `p`. It is
//! used to evaluate identities whose value is a small integer, such as
//! `dim fix(w) = (1/|w|) Σ_k tr(w^k)`, after which the integer is read back
//! exactly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclo::CycNum;
use crate::error::GroupError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    omega: u64,
    conductor: u32,
}

impl PrimeField {
    /// Largest prime below `2^61` congruent to 1 mod `m`, with a primitive
    /// `m`-th root of unity.
    pub fn for_conductor(m: u32) -> PrimeField {
        Self::candidates(m).next().expect("primes ≡ 1 mod m exist")
    }

    /// Successive usable primes, largest first.
    pub fn candidates(m: u32) -> impl Iterator<Item = PrimeField> {
        let m64 = u64::from(m);
        let top = (1u64 << 61) / m64;
        (1..top).rev().filter_map(move |k| {
            let p = k * m64 + 1;
            if !is_prime(p) {
                return None;
            }
            let omega = primitive_root_of_unity(p, m64)?;
            Some(PrimeField { p, omega, conductor: m })
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| pow_mod(a, self.p - 2, self.p))
    }

    pub fn from_int(&self, k: i64) -> u64 {
        (i128::from(k).rem_euclid(i128::from(self.p))) as u64
    }

    fn residue(&self, z: &BigInt) -> u64 {
        let r = (z % BigInt::from(self.p)).to_i128().expect("reduced residue");
        r.rem_euclid(i128::from(self.p)) as u64
    }

    /// Image of a cyclotomic number. Fails if a denominator vanishes mod p.
    pub fn reduce(&self, x: &CycNum) -> Result<u64, GroupError> {
        let m = x.conductor();
        if !self.conductor.is_multiple_of(m) {
            return Err(GroupError::NoModularImage(m));
        }
        let root = self.pow(self.omega, u64::from(self.conductor / m));
        let mut acc = 0u64;
        let mut zk = 1u64;
        for c in x.coeffs() {
            if !c.is_zero() {
                let den = self.residue(c.denom());
                let inv = self.inv(den).ok_or(GroupError::NoModularImage(m))?;
                let mut num = self.residue(&c.numer().abs());
                if c.is_negative() {
                    num = (self.p - num) % self.p;
                }
                acc = self.add(acc, self.mul(self.mul(num, inv), zk));
            }
            zk = self.mul(zk, root);
        }
        Ok(acc)
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((u128::from(acc) * u128::from(a)) % u128::from(p)) as u64;
        }
        a = ((u128::from(a) * u128::from(a)) % u128::from(p)) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((u128::from(x) * u128::from(x)) % u128::from(n)) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root_of_unity(p: u64, m: u64) -> Option<u64> {
    let qs = prime_factors(m);
    (2..200).find_map(|g| {
        let w = pow_mod(g, (p - 1) / m, p);
        qs.iter().all(|&q| pow_mod(w, m / q, p) != 1).then_some(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(561));
        assert!(!is_prime(1 << 40));
    }

    #[test]
    fn reduction_is_a_ring_map() {
        for m in [1u32, 3, 4, 5, 7, 12, 15, 30, 42] {
            let pf = PrimeField::for_conductor(m);
            assert_eq!(pf.modulus() % u64::from(m), 1 % u64::from(m));
            let f = Cyclotomic::new(m);
            let a = &f.root(1) + &f.rational(num_rational::BigRational::new(3.into(), 7.into()));
            let b = &f.root(2) - &f.integer(5);
            let ra = pf.reduce(&a).unwrap();
            let rb = pf.reduce(&b).unwrap();
            assert_eq!(pf.reduce(&(&a * &b)).unwrap(), pf.mul(ra, rb));
            assert_eq!(pf.reduce(&(&a + &b)).unwrap(), pf.add(ra, rb));
            assert_eq!(pf.reduce(&f.root(i64::from(m))).unwrap(), 1);
        }
    }
}
