//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored as its coefficient vector in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}`, reduced modulo the cyclotomic polynomial `Φ_m`.
//! That representative is unique, so field equality is coefficient equality.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CycloError;

/// The field `Q(ζ_m)`: conductor plus the coefficients of `Φ_m`.
#[derive(Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: u32,
    /// Monic `Φ_m`, lowest degree first.
    phi: Vec<BigInt>,
}

impl Cyclotomic {
    /// Builds `Q(ζ_m)`.
    ///
    /// With the `std` feature the field is interned, so each conductor's
    /// cyclotomic polynomial is computed once per process.
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        #[cfg(feature = "std")]
        {
            use std::collections::HashMap;
            use std::sync::{Mutex, OnceLock};
            static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
            let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
            let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
            guard
                .entry(conductor)
                .or_insert_with(|| Arc::new(Self::compute(conductor)))
                .clone()
        }
        #[cfg(not(feature = "std"))]
        {
            Arc::new(Self::compute(conductor))
        }
    }

    fn compute(conductor: u32) -> Self {
        Cyclotomic {
            conductor,
            phi: cyclotomic_polynomial(conductor),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Φ_m`, lowest degree first.
    pub fn cyclotomic_poly(&self) -> &[BigInt] {
        &self.phi
    }

    pub fn zero(self: &Arc<Self>) -> CycNum {
        CycNum {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycNum {
        self.rational(BigRational::one())
    }

    pub fn rational(self: &Arc<Self>, q: BigRational) -> CycNum {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    pub fn integer(self: &Arc<Self>, k: i64) -> CycNum {
        self.rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// `ζ_m^k`, with `k` taken modulo `m`.
    pub fn root(self: &Arc<Self>, k: i64) -> CycNum {
        let m = i64::from(self.conductor);
        let k = k.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        self.reduce(poly)
    }

    /// Reduces an arbitrary polynomial in `ζ_m` to canonical form.
    pub fn from_poly(self: &Arc<Self>, poly: Vec<BigRational>) -> CycNum {
        self.reduce(poly)
    }

    fn reduce(self: &Arc<Self>, mut poly: Vec<BigRational>) -> CycNum {
        let d = self.degree();
        if poly.len() > d {
            for k in (d..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = core::mem::replace(&mut poly[k], BigRational::zero());
                for (j, pj) in self.phi[..d].iter().enumerate() {
                    if !pj.is_zero() {
                        poly[k - d + j] -= &c * BigRational::from_integer(pj.clone());
                    }
                }
            }
            poly.truncate(d);
        }
        poly.resize(d, BigRational::zero());
        CycNum {
            field: self.clone(),
            coeffs: poly,
        }
    }
}

/// Integer coefficients of `Φ_m`, lowest degree first, by dividing `x^m - 1`
/// by every `Φ_d` with `d | m`, `d < m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    fn divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        // den is monic
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        let mut quot = vec![BigInt::zero(); num.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        debug_assert!(rem.iter().all(Zero::is_zero));
        quot
    }
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = divide(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

/// An exact element of `Q(ζ_m)` in canonical reduced form.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<Cyclotomic>,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn field(&self) -> &Arc<Cyclotomic> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Power-basis coefficients; always `φ(m)` entries.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// Re-reduces the coefficient vector. Values built through this module
    /// are already canonical, so this is the identity on them.
    pub fn canonicalize(&self) -> CycNum {
        self.field.reduce(self.coeffs.clone())
    }

    /// Image under the embedding `Q(ζ_m) → Q(ζ_{m'})`, `ζ_m ↦ ζ_{m'}^{m'/m}`.
    pub fn embed(&self, target: &Arc<Cyclotomic>) -> Result<CycNum, CycloError> {
        let m = self.conductor();
        let mt = target.conductor;
        if !mt.is_multiple_of(m) {
            return Err(CycloError::NotASubfield { from: m, to: mt });
        }
        if mt == m {
            return Ok(CycNum {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        let step = (mt / m) as usize;
        let mut poly = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(target.reduce(poly))
    }

    /// Brings two operands into the field of conductor `lcm(m, m')`.
    fn coerce(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let m = a.conductor().lcm(&b.conductor());
        let f = Cyclotomic::new(m);
        (
            a.embed(&f).expect("lcm is a multiple"),
            b.embed(&f).expect("lcm is a multiple"),
        )
    }

    fn same_field(&self, other: &CycNum) -> bool {
        self.field.conductor == other.field.conductor
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        let m = self.conductor() as usize;
        let mut poly = vec![BigRational::zero(); m.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(m - k) % m] += c;
            }
        }
        self.field.reduce(poly)
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let d = self.coeffs.len();
        if d == 1 {
            return CycNum {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut poly = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        self.field.reduce(poly)
    }

    /// Multiplicative inverse, by solving `a · x = 1` in the power basis.
    pub fn inv(&self) -> Result<CycNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::ZeroDivision);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.rational(q.recip()));
        }
        let d = self.coeffs.len();
        // column j = coefficients of self * ζ^j
        let cols: Vec<CycNum> = (0..d).map(|j| self.mul_same(&self.field.root(j as i64))).collect();
        let mut aug: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(CycloError::ZeroDivision)?;
            aug.swap(col, piv);
            let p = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &p;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=d {
                        let v = &aug[col][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs: aug.into_iter().map(|mut row| row.pop().unwrap()).collect(),
        })
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value under `ζ_m ↦ e^{2πi/m}`; debugging aid only.
    #[cfg(feature = "std")]
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let m = f64::from(self.conductor());
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * core::f64::consts::PI * k as f64 / m;
            (re + v * t.cos(), im + v * t.sin())
        })
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

/// Lexicographic order on (conductor, coefficients). It is not a field
/// order; it only gives deterministic sorting.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor
            .cmp(&other.field.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints e.g. `1 - 2/3*z^2` where `z = ζ_m`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{a}*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if self.conductor() > 2 && self.coeffs.len() > 1 {
            write!(f, " [m={}]", self.conductor())?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        if !self.same_field(rhs) {
            let (a, b) = CycNum::coerce(self, rhs);
            return &a + &b;
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        if !self.same_field(rhs) {
            let (a, b) = CycNum::coerce(self, rhs);
            return &a - &b;
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        if !self.same_field(rhs) {
            let (a, b) = CycNum::coerce(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// `ζ_m^k` in canonical form.
pub fn cyc_from_root(m: u32, k: i64) -> CycNum {
    Cyclotomic::new(m).root(k)
}

pub fn cyc_add(a: &CycNum, b: &CycNum) -> CycNum {
    a + b
}

pub fn cyc_mul(a: &CycNum, b: &CycNum) -> CycNum {
    a * b
}

pub fn cyc_inv(a: &CycNum) -> Result<CycNum, CycloError> {
    a.inv()
}

/// Parses a rational written as `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<BigRational, CycloError> {
    let s = s.trim();
    let bad = || CycloError::BadRational(s.into());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> alloc::string::String {
    use alloc::string::ToString;
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

impl CycNum {
    /// Builds an element from its serialized coefficient strings.
    pub fn from_strings<S: AsRef<str>>(field: &Arc<Cyclotomic>, coeffs: &[S]) -> Result<CycNum, CycloError> {
        if coeffs.len() != field.degree() {
            return Err(CycloError::WrongLength {
                expected: field.degree(),
                found: coeffs.len(),
            });
        }
        let poly = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(field.from_poly(poly))
    }

    pub fn to_strings(&self) -> Vec<alloc::string::String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i = |m| {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| i64::try_from(c.clone()).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i(1), [-1, 1]);
        assert_eq!(as_i(2), [1, 1]);
        assert_eq!(as_i(3), [1, 1, 1]);
        assert_eq!(as_i(4), [1, 0, 1]);
        assert_eq!(as_i(6), [1, -1, 1]);
        assert_eq!(as_i(8), [1, 0, 0, 0, 1]);
        assert_eq!(as_i(12), [1, 0, -1, 0, 1]);
        assert_eq!(as_i(15), [1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn roots_of_unity() {
        assert!(cyc_from_root(1, 0).is_one());
        assert_eq!(cyc_from_root(4, 2), Cyclotomic::new(4).integer(-1));
        let s = cyc_add(&cyc_from_root(3, 1), &cyc_from_root(3, 2));
        assert_eq!(s, Cyclotomic::new(3).integer(-1));
        assert_eq!(cyc_from_root(7, 9), cyc_from_root(7, 2));
        assert_eq!(cyc_from_root(7, -1), cyc_from_root(7, 6));
    }

    #[test]
    fn golden_section_in_q_zeta5() {
        let f = Cyclotomic::new(5);
        let x = &f.root(1) + &f.root(4);
        // x = (-1 + sqrt 5)/2 satisfies x^2 + x - 1 = 0
        let lhs = &(&(&x * &x) + &x) - &f.one();
        assert!(lhs.is_zero());
        // power-basis form: ζ + ζ^4 = -1 - ζ^2 - ζ^3
        let expected: Vec<_> = [q(-1, 1), q(0, 1), q(-1, 1), q(-1, 1)].to_vec();
        assert_eq!(x.coeffs(), &expected[..]);
    }

    #[test]
    fn real_parts() {
        let f6 = Cyclotomic::new(6);
        assert!((&f6.root(1) + &f6.root(-1)).is_one());
        let f8 = Cyclotomic::new(8);
        let s = &f8.root(1) + &f8.root(-1);
        assert_eq!(&s * &s, f8.integer(2));
    }

    #[test]
    fn inverses() {
        let f = Cyclotomic::new(5);
        assert!(f.one().inv().unwrap().is_one());
        assert_eq!(f.root(2).inv().unwrap(), f.root(3));
        assert_eq!(f.integer(2).inv().unwrap(), f.rational(q(1, 2)));
        let a = &f.integer(3) + &f.root(1);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(f.zero().inv().unwrap_err(), CycloError::ZeroDivision);
    }

    #[test]
    fn mixed_conductors_coerce_to_lcm() {
        let a = cyc_from_root(3, 1);
        let b = cyc_from_root(4, 1);
        let p = &a * &b;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, cyc_from_root(12, 4 + 3));
        assert_eq!(a.embed(&Cyclotomic::new(12)).unwrap(), cyc_from_root(12, 4));
        assert!(a.embed(&Cyclotomic::new(8)).is_err());
    }

    #[test]
    fn conjugation_and_strings() {
        let f = Cyclotomic::new(7);
        assert_eq!(f.root(2).conj(), f.root(5));
        let x = &f.rational(q(-3, 4)) + &f.root(3);
        let s = x.to_strings();
        assert_eq!(s[0], "-3/4");
        assert_eq!(CycNum::from_strings(&f, &s).unwrap(), x);
        assert!(CycNum::from_strings(&f, &["1"]).is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
