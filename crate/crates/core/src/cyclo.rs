//! Exact arithmetic in cyclotomic fields Q(ζ_E).
//!
//! An element is a rational coefficient vector of length φ(E) in the power
//! basis 1, ζ, …, ζ^{φ(E)-1} of Q[x]/(Φ_E). Every operation reduces modulo
//! Φ_E, so equality of elements is equality of vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, euler_phi, gcd, lcm, mobius};
use crate::error::{Error, Result};

/// Precomputed data for one conductor.
pub struct CycloField {
    conductor: u32,
    phi: usize,
    /// Φ_E, constant term first.
    cyclotomic: Vec<i64>,
    /// `powers[j]` = x^j mod Φ_E for 0 <= j < E.
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    fn build(e: u32) -> Self {
        let cyclotomic = cyclotomic_poly(e as u64);
        let phi = cyclotomic.len() - 1;
        let mut powers = Vec::with_capacity(e as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..e {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow term with the monic Φ_E
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * cyclotomic[i];
                }
            }
        }
        Self { conductor: e, phi, cyclotomic, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.cyclotomic
    }
}

/// Shared, cached field data for conductor `e` (`e >= 1`).
pub fn cyclo_field(e: u32) -> Arc<CycloField> {
    assert!(e >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&e) {
        return f.clone();
    }
    let built = Arc::new(CycloField::build(e));
    cache.lock().unwrap().entry(e).or_insert(built).clone()
}

/// Φ_n by exact division of x^n - 1 by Φ_d for the proper divisors d of n.
fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_poly(d));
    }
    num
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i];
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i - db + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "cyclotomic division must be exact");
    q
}

/// Ramanujan's sum c_E(j) = Tr_{Q(ζ_E)/Q}(ζ_E^j).
fn ramanujan_sum(e: u64, j: u64) -> i64 {
    let g = gcd(j % e, e);
    let g = if g == 0 { e } else { g };
    let n = e / g;
    mobius(n) as i64 * (euler_phi(e) / euler_phi(n)) as i64
}

/// An exact element of Q(ζ_E).
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(e: u32) -> Self {
        let field = cyclo_field(e);
        let coeffs = vec![BigRational::zero(); field.phi];
        Self { field, coeffs }
    }

    pub fn one(e: u32) -> Self {
        Self::from_int(e, 1)
    }

    pub fn from_int(e: u32, n: impl Into<BigInt>) -> Self {
        Self::from_rational(e, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(e: u32, r: BigRational) -> Self {
        let mut z = Self::zero(e);
        z.coeffs[0] = r;
        z
    }

    /// ζ_E^s.
    pub fn root(e: u32, s: i64) -> Self {
        let field = cyclo_field(e);
        let j = s.rem_euclid(e as i64) as usize;
        let coeffs = field.powers[j].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self { field, coeffs }
    }

    /// Σ_t counts[t] ζ_E^t for an arbitrary-length exponent histogram.
    pub fn from_exponent_counts(e: u32, counts: &[BigInt]) -> Self {
        let field = cyclo_field(e);
        let mut acc = vec![BigInt::zero(); field.phi];
        for (t, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&field.powers[t % e as usize]) {
                if p != 0 {
                    *a += c * p;
                }
            }
        }
        Self { field, coeffs: acc.into_iter().map(BigRational::from_integer).collect() }
    }

    /// Builds from power-basis coordinates (length φ(E)).
    pub fn from_coeffs(e: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let field = cyclo_field(e);
        if coeffs.len() != field.phi {
            return Err(Error::InvalidArgument(format!(
                "Q(ζ_{e}) elements need {} coordinates, got {}",
                field.phi,
                coeffs.len()
            )));
        }
        Ok(Self { field, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// In the power basis Z[ζ] is the full ring of integers, so integrality
    /// is integrality of every coordinate.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Reduces a coefficient vector on the monomials x^0, x^1, … (any length).
    fn reduce(field: &Arc<CycloField>, raw: Vec<BigRational>) -> Self {
        let phi = field.phi;
        let e = field.conductor as usize;
        let mut out: Vec<BigRational> = vec![BigRational::zero(); phi];
        for (j, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < phi {
                out[j] += c;
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&field.powers[j % e]) {
                if p != 0 {
                    *o += &c * BigRational::from_integer(p.into());
                }
            }
        }
        Self { field: field.clone(), coeffs: out }
    }

    /// Re-expresses the element in Q(ζ_{e2}); `e2` must be a multiple of E.
    pub fn promote(&self, e2: u32) -> Result<Self> {
        let e = self.conductor();
        if !e2.is_multiple_of(e) {
            return Err(Error::InvalidArgument(format!("Q(ζ_{e}) does not embed in Q(ζ_{e2})")));
        }
        if e2 == e {
            return Ok(self.clone());
        }
        let step = (e2 / e) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::reduce(&cyclo_field(e2), raw))
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.field, &other.field) || self.conductor() == other.conductor() {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.conductor() as u64, other.conductor() as u64) as u32;
        (self.promote(l).unwrap(), other.promote(l).unwrap())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    /// Multiplies by ζ_E^s.
    pub fn mul_root(&self, s: i64) -> Self {
        let e = self.conductor() as i64;
        let shift = s.rem_euclid(e) as usize;
        let mut raw = vec![BigRational::zero(); self.coeffs.len() + shift];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i + shift] = c.clone();
        }
        Self::reduce(&self.field, raw)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The automorphism σ_l: ζ ↦ ζ^l.
    pub fn galois(&self, l: i64) -> Result<Self> {
        let e = self.conductor() as i64;
        if gcd(l.rem_euclid(e) as u64, e as u64) != 1 {
            return Err(Error::InvalidArgument(format!("σ_{l} is not an automorphism of Q(ζ_{e})")));
        }
        let l = l.rem_euclid(e) as usize;
        let e = e as usize;
        let mut out: Vec<BigRational> = vec![BigRational::zero(); self.field.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.field.powers[(i * l) % e]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Ok(Self { field: self.field.clone(), coeffs: out })
    }

    /// Complex conjugation σ_{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// Tr_{Q(ζ_E)/Q}, evaluated with Ramanujan sums.
    pub fn trace(&self) -> BigRational {
        let e = self.conductor() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * BigRational::from_integer(ramanujan_sum(e, i as u64).into()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_E.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> = self.field.cyclotomic.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let (g, s) = qpoly_ext_gcd(trim(self.coeffs.clone()), modulus);
        // g is a nonzero constant since Φ_E is irreducible
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let raw: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        Some(Self::reduce(&self.field, raw))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.unify(other);
        b.inverse().map(|inv| &a * &inv)
    }

    /// Embedding ζ_E ↦ exp(2πi/E). Diagnostics only.
    pub fn to_complex(&self) -> Complex64 {
        let e = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / e;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (vec![BigRational::zero()], a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len() - db];
    let lead = b[db].clone();
    for i in (db..a.len()).rev() {
        let c = &r[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn is_zero_poly(a: &[BigRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Returns (g, s) with s·a ≡ g (mod m), g = gcd(a, m).
fn qpoly_ext_gcd(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !is_zero_poly(&r1) {
        let (q, r) = qpoly_divmod(&r0, &r1);
        let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = self.unify(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloNum { field: a.field, coeffs }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = self.unify(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CycloNum { field: a.field, coeffs }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = self.unify(rhs);
        let nz_a: Vec<(usize, &BigRational)> = a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let nz_b: Vec<(usize, &BigRational)> = b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if nz_a.is_empty() || nz_b.is_empty() {
            return CycloNum::zero(a.conductor());
        }
        let mut raw = vec![BigRational::zero(); 2 * a.coeffs.len() - 1];
        for &(i, x) in &nz_a {
            for &(j, y) in &nz_b {
                raw[i + j] += x * y;
            }
        }
        CycloNum::reduce(&a.field, raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(mut iter: I) -> CycloNum {
        let first = iter.next().unwrap_or_else(|| CycloNum::zero(1));
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.conductor();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("z{e}"),
                _ => format!("z{e}^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q(z{})", self.conductor())
    }
}

/// Serialized as `{"E": 7, "coeffs": ["-1", "-1", "0", ...]}`.
impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycloNum", 2)?;
        st.serialize_field("E", &self.conductor())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(e: u32, s: i64) -> CycloNum {
        CycloNum::root(e, s)
    }

    fn int(e: u32, n: i64) -> CycloNum {
        CycloNum::from_int(e, n)
    }

    fn alpha7() -> CycloNum {
        [2, 4, 5, 6].iter().map(|&s| z(7, s)).sum()
    }

    fn alpha8() -> CycloNum {
        [2, 3, 5].iter().map(|&s| z(8, s)).sum()
    }

    fn sqrt_m3() -> CycloNum {
        &int(6, 2) * &z(6, 1) - int(6, 1)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclo_field(1).cyclotomic_poly(), &[-1, 1]);
        assert_eq!(cyclo_field(3).cyclotomic_poly(), &[1, 1, 1]);
        assert_eq!(cyclo_field(6).cyclotomic_poly(), &[1, -1, 1]);
        assert_eq!(cyclo_field(8).cyclotomic_poly(), &[1, 0, 0, 0, 1]);
        assert_eq!(cyclo_field(26).degree(), 12);
    }

    #[test]
    fn basic_relations() {
        assert_eq!(&z(3, 1) + &z(3, 2), int(3, -1));
        assert_eq!(z(7, 7), int(7, 1));
        assert_eq!(z(2, 1), int(2, -1));
        assert_eq!(z(1, 5), int(1, 1));
        assert_eq!(alpha7(), &(&int(7, -1) - &z(7, 1)) - &z(7, 3));
    }

    #[test]
    fn norms_of_reference_alphas() {
        let a7 = alpha7();
        assert_eq!(&a7 * &a7.conj(), int(7, 2));
        let a8 = alpha8();
        assert_eq!(&a8 * &a8.conj(), int(8, 3));
        assert!((a7.to_complex().norm() - 2f64.sqrt()).abs() < 1e-9);
        assert!((a8.to_complex().norm() - 3f64.sqrt()).abs() < 1e-9);
        let i = z(4, 1).to_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn galois_relations() {
        let a7 = alpha7();
        assert_eq!(a7.galois(2).unwrap(), a7.mul_root(-1));
        assert_eq!(a7.galois(4).unwrap(), a7.mul_root(-3));
        let a8 = alpha8();
        assert_eq!(a8.galois(3).unwrap(), -&a8);
        assert_eq!(a8.galois(3).unwrap(), a8.mul_root(4));
        let s = sqrt_m3();
        assert_eq!(&s * &s, int(6, -3));
        assert_eq!(s.galois(5).unwrap(), s.mul_root(3));
        assert_eq!(s.galois(5).unwrap(), s.conj());
        assert_eq!(s.trace(), BigRational::zero());
        assert_eq!(a7.galois(1).unwrap(), a7);
        assert!(a7.galois(7).is_err());
        assert!(s.galois(2).is_err());
    }

    #[test]
    fn traces() {
        assert_eq!(z(7, 1).trace(), BigRational::from_integer((-1).into()));
        assert_eq!(int(12, 1).trace(), BigRational::from_integer(4.into()));
        // α7 = -1 - ζ - ζ^3 has trace -6 + 1 + 1
        assert_eq!(alpha7().trace(), BigRational::from_integer((-4).into()));
    }

    #[test]
    fn trace_equals_sum_of_conjugates() {
        for e in [1u32, 2, 3, 4, 6, 7, 8, 9, 12, 15, 26] {
            for s in 0..e as i64 {
                let x = &z(e, s) + &int(e, 3).mul_root(2 * s + 1);
                let by_galois: CycloNum =
                    (1..=e as i64).filter(|l| gcd(*l as u64, e as u64) == 1).map(|l| x.galois(l).unwrap()).sum();
                assert_eq!(by_galois.as_rational().unwrap(), x.trace(), "e={e} s={s}");
            }
        }
    }

    #[test]
    fn rationality_and_promotion() {
        let x = &z(3, 1) + &z(3, 2);
        assert!(x.is_rational());
        assert_eq!(x.as_integer(), Some(BigInt::from(-1)));
        let p = z(3, 1).promote(6).unwrap();
        assert_eq!(p, z(6, 2));
        assert_eq!(&z(3, 1) + &z(2, 1), &z(6, 2) - &int(6, 1));
        assert!(z(3, 1).promote(4).is_err());
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn serialization() {
        let json = serde_json::to_string(&alpha7()).unwrap();
        assert_eq!(json, r#"{"E":7,"coeffs":["-1","-1","0","-1","0","0"]}"#);
        assert_eq!(alpha7().to_string(), "-1-z7-z7^3");
        assert_eq!(int(5, 0).to_string(), "0");
    }

    fn arb(e: u32) -> impl Strategy<Value = CycloNum> {
        let phi = cyclo_field(e).degree();
        proptest::collection::vec((-5i64..6, 1i64..4), phi).prop_map(move |v| {
            let coeffs = v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
            CycloNum::from_coeffs(e, coeffs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_and_galois_laws((x, y) in prop::sample::select(vec![3u32, 5, 7, 8, 12]).prop_flat_map(|e| (arb(e), arb(e)))) {
            let e = x.conductor();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) * &y.inverse().unwrap(), x.clone());
            }
            for l in (1..e as i64).filter(|l| gcd(*l as u64, e as u64) == 1) {
                prop_assert_eq!((&x * &y).galois(l).unwrap(), &x.galois(l).unwrap() * &y.galois(l).unwrap());
                prop_assert_eq!(x.galois(l).unwrap().trace(), x.trace());
                for k in (1..e as i64).filter(|k| gcd(*k as u64, e as u64) == 1) {
                    prop_assert_eq!(x.galois(k).unwrap().galois(l).unwrap(), x.galois(k * l).unwrap());
                }
            }
            prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
        }
    }
}
