//! Dense univariate polynomials over F_q.
//!
//! Coefficients are stored constant-term first with no trailing zeros, so the
//! zero polynomial is the empty vector. The canonical order compares degree
//! first and then the coefficient vectors most-significant first, which is
//! the same as comparing base-q indices (see [`Poly::to_index`]).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, 1)
    }

    /// The indeterminate T.
    pub fn t(field: &FieldSpec) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: &FieldSpec, c: FieldElement, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::new(field, coeffs)
    }

    /// Polynomial whose coefficients of T^0..T^{len-1} are the base-q digits
    /// of `index`, least significant first.
    pub fn from_index(field: &FieldSpec, mut index: u64, len: usize) -> Self {
        let q = field.order() as u64;
        let mut coeffs = Vec::with_capacity(len);
        for _ in 0..len {
            coeffs.push((index % q) as FieldElement);
            index /= q;
        }
        Self::new(field, coeffs)
    }

    /// The monic polynomial T^n + (polynomial with index `index`).
    pub fn monic_from_index(field: &FieldSpec, n: usize, index: u64) -> Self {
        let mut p = Self::from_index(field, index, n);
        p.coeffs.resize(n + 1, 0);
        p.coeffs[n] = 1;
        p
    }

    /// Base-q integer of the coefficient vector (constant term least
    /// significant). Increasing index is the canonical order among
    /// polynomials of bounded degree.
    pub fn to_index(&self) -> u64 {
        let q = self.field.order() as u64;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.lc()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::new(f, out))
    }

    /// Quotient and remainder with `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_field(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(g.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0; r.len() - dg];
        for i in (dg..r.len()).rev() {
            let c = f.mul(r[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dg] = c;
            for (j, &b) in g.coeffs.iter().enumerate() {
                let k = i - dg + j;
                r[k] = f.sub(r[k], f.mul(c, b));
            }
        }
        r.truncate(dg);
        Ok((Self::new(f, quot), Self::new(f, r)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divmod(g)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.checked_mul(other)?.rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Parses the literal grammar: terms `c*T^e`, `T^e`, `c*T`, `T`, `c`
    /// joined by `+` (or `-`). Over a prime field integer coefficients are
    /// reduced mod p; over an extension field a coefficient must be an element
    /// encoding `< q`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Self::zero(field);
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(Error::Parse(format!("unexpected text in {s:?}"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let mut t = parse_term(field, term, s)?;
            if negative {
                t = -&t;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

fn parse_coefficient(field: &FieldSpec, text: &str, whole: &str) -> Result<FieldElement> {
    let n: u64 = text.parse().map_err(|_| Error::Parse(format!("bad coefficient {text:?} in {whole:?}")))?;
    if field.extension_degree() == 1 {
        Ok((n % field.order() as u64) as FieldElement)
    } else if n < field.order() as u64 {
        Ok(n as FieldElement)
    } else {
        Err(Error::Parse(format!("coefficient {n} is not an element encoding of {field}")))
    }
}

fn parse_term(field: &FieldSpec, term: &str, whole: &str) -> Result<Poly> {
    if term.is_empty() {
        return Err(Error::Parse(format!("empty term in {whole:?}")));
    }
    let Some(pos) = term.find(['T', 't']) else {
        return Ok(Poly::constant(field, parse_coefficient(field, term, whole)?));
    };
    let (coef_text, var) = term.split_at(pos);
    let coef_text = coef_text.strip_suffix('*').unwrap_or(coef_text);
    let c = if coef_text.is_empty() { 1 } else { parse_coefficient(field, coef_text, whole)? };
    let exp_text = &var[1..];
    let e = if exp_text.is_empty() {
        1
    } else {
        exp_text
            .strip_prefix('^')
            .and_then(|x| x.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in term {term:?}")))?
    };
    if e > 4096 {
        return Err(Error::Parse(format!("exponent {e} too large")));
    }
    Ok(Poly::monomial(field, c, e))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "{c}*T")?,
                (_, 1) => write!(f, "T^{e}")?,
                _ => write!(f, "{c}*T^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.field)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator forms panic on a field mismatch; the `checked_*` methods report it.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

/// Arithmetic kinds accepted by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
}

/// Result of [`poly_arith`]: a single polynomial, or quotient and remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArith {
    Single(Poly),
    QuotRem(Poly, Poly),
}

pub fn poly_arith(f: &Poly, g: &Poly, kind: PolyOp) -> Result<PolyArith> {
    Ok(match kind {
        PolyOp::Add => PolyArith::Single(f.checked_add(g)?),
        PolyOp::Sub => PolyArith::Single(f.checked_sub(g)?),
        PolyOp::Mul => PolyArith::Single(f.checked_mul(g)?),
        PolyOp::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyArith::QuotRem(q, r)
        }
        PolyOp::Gcd => PolyArith::Single(f.gcd(g)?),
    })
}

fn require_monic_nonconstant(f: &Poly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => Ok(d),
        Some(d) if d >= 1 => Err(Error::InvalidArgument(format!("{f} is not monic"))),
        _ => Err(Error::InvalidArgument(format!("{f} is constant"))),
    }
}

/// Rabin's test: `T^{q^n} ≡ T (mod f)` and `gcd(T^{q^{n/l}} - T, f) = 1`
/// for every prime `l | n`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = require_monic_nonconstant(f)?;
    let field = f.field();
    let q = field.order() as u64;
    let t = Poly::t(field).rem(f)?;
    // frob[i] = T^{q^i} mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(t.clone());
    for i in 1..=n {
        let next = frob[i - 1].pow_mod(q, f)?;
        frob.push(next);
    }
    if frob[n] != t {
        return Ok(false);
    }
    for l in prime_divisors(n as u64) {
        let h = &frob[n / l as usize] - &t;
        if !h.gcd(f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complete factorization into monic irreducibles with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    /// Sorted by degree, then canonical order.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, field: &FieldSpec) -> Poly {
        self.factors.iter().fold(Poly::constant(field, self.unit), |acc, (p, e)| &acc * &p.pow(*e as u64))
    }

    /// Distinct irreducible factors.
    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Distinct-degree splitting with `gcd(T^{q^d} - T, f)`, then exhaustive
/// search among monic polynomials of degree d for the equal-degree factors.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    match f.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::InvalidArgument(format!("cannot factor the constant {f}"))),
    }
    let field = f.field().clone();
    let q = field.order() as u64;
    let unit = f.lc();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let t = Poly::t(&field);
    let mut frob = t.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        frob = frob.pow_mod(q, &rest)?;
        let g = (&frob - &t).gcd(&rest)?;
        if !g.is_one() {
            let mut found = Vec::new();
            for cand in enumerate_monic(&field, d) {
                if g.rem(&cand)?.is_zero() {
                    found.push(cand);
                }
            }
            for p in found {
                let mut mult = 0;
                loop {
                    let (quot, r) = rest.divmod(&p)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = quot;
                    mult += 1;
                }
                factors.push((p, mult));
            }
            frob = frob.rem(&rest)?;
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        factors.push((rest, 1));
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// All `q^n` monic polynomials of degree `n` in canonical order.
pub fn enumerate_monic(field: &FieldSpec, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let total = (field.order() as u64).pow(n as u32);
    (0..total).map(move |i| Poly::monic_from_index(field, n, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn p(field: &FieldSpec, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = f(2);
        let a = p(&f2, "T+1");
        assert_eq!(&a * &a, p(&f2, "T^2+1"));
        let f3 = f(3);
        assert!(p(&f3, "T^2+1").gcd(&p(&f3, "T^2")).unwrap().is_one());
        let m = p(&f2, "T^3+T+1");
        // T^4 = T*(T+1) = T^2+T, so T^4+T leaves T^2.
        assert_eq!(p(&f2, "T^4").rem(&m).unwrap(), p(&f2, "T^2+T"));
        let (quot, r) = p(&f2, "T^4+T").divmod(&m).unwrap();
        assert_eq!(r, p(&f2, "T^2"));
        assert_eq!(quot, p(&f2, "T"));
    }

    #[test]
    fn arith_errors() {
        let f2 = f(2);
        let f3 = f(3);
        let a = p(&f2, "T");
        assert!(matches!(a.divmod(&Poly::zero(&f2)), Err(Error::DivisionByZero)));
        assert!(matches!(poly_arith(&a, &p(&f3, "T"), PolyOp::Add), Err(Error::FieldMismatch)));
        assert!(matches!(poly_arith(&a, &p(&f3, "T"), PolyOp::Gcd), Err(Error::FieldMismatch)));
        let PolyArith::QuotRem(q, r) = poly_arith(&p(&f2, "T^2"), &a, PolyOp::DivMod).unwrap() else { panic!() };
        assert_eq!((q, r), (a.clone(), Poly::zero(&f2)));
    }

    #[test]
    fn parse_and_display() {
        let f3 = f(3);
        assert_eq!(p(&f3, "2*T+1").to_string(), "2*T+1");
        assert_eq!(p(&f3, "T^3 + 2T + 2").to_string(), "T^3+2*T+2");
        assert_eq!(p(&f3, "T^3-T-1").to_string(), "T^3+2*T+2");
        assert_eq!(p(&f3, "4*T^2+3").to_string(), "T^2");
        assert_eq!(p(&f3, "T+T").to_string(), "2*T");
        assert_eq!(p(&f3, "0").to_string(), "0");
        assert!(Poly::parse(&f3, "T^").is_err());
        assert!(Poly::parse(&f3, "").is_err());
        assert!(Poly::parse(&f3, "T++1").is_err());
        assert!(Poly::parse(&f3, "x+1").is_err());
        let f4 = f(4);
        assert_eq!(p(&f4, "3*T+2").to_string(), "3*T+2");
        assert!(Poly::parse(&f4, "5*T").is_err());
    }

    #[test]
    fn canonical_order_matches_index() {
        let f3 = f(3);
        let mut all: Vec<Poly> = (0..81).map(|i| Poly::from_index(&f3, i, 4)).collect();
        let sorted = {
            let mut s = all.clone();
            s.sort();
            s
        };
        assert_eq!(all, sorted);
        all.reverse();
        assert_eq!(all[0].to_index(), 80);
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = f(2);
        let f3 = f(3);
        assert!(is_irreducible(&p(&f2, "T^2+T+1")).unwrap());
        assert!(is_irreducible(&p(&f3, "T^2+1")).unwrap());
        assert!(!is_irreducible(&p(&f2, "T^2+1")).unwrap());
        for q in [2u32, 3, 5, 7] {
            let fq = f(q);
            for a in 1..q {
                let m = &(&Poly::monomial(&fq, 1, q as usize) - &Poly::t(&fq)) - &Poly::constant(&fq, a as u8);
                assert!(is_irreducible(&m).unwrap(), "Artin-Schreier {m}");
            }
        }
        assert!(matches!(is_irreducible(&p(&f3, "2*T+1")), Err(Error::InvalidArgument(_))));
        assert!(matches!(is_irreducible(&p(&f3, "1")), Err(Error::InvalidArgument(_))));
    }

    fn irreducible_by_trial_division(g: &Poly) -> bool {
        let n = g.degree().unwrap();
        (1..=n / 2).all(|d| enumerate_monic(g.field(), d).all(|h| !g.rem(&h).unwrap().is_zero()))
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for (q, nmax) in [(2u32, 8usize), (3, 6), (4, 4), (5, 4)] {
            let fq = f(q);
            for n in 1..=nmax {
                for g in enumerate_monic(&fq, n) {
                    assert_eq!(is_irreducible(&g).unwrap(), irreducible_by_trial_division(&g), "{g:?}");
                }
            }
        }
    }

    fn gauss_count(q: u64, n: u64) -> i128 {
        let s: i128 = crate::arith::divisors(n)
            .into_iter()
            .map(|d| crate::arith::mobius(d) as i128 * (q as i128).pow((n / d) as u32))
            .sum();
        s / n as i128
    }

    #[test]
    fn irreducible_counts_follow_gauss() {
        for (q, nmax) in [(2u32, 12usize), (3, 8), (5, 5), (4, 5)] {
            let fq = f(q);
            for n in 1..=nmax {
                let c = enumerate_monic(&fq, n).filter(|g| is_irreducible(g).unwrap()).count();
                assert_eq!(c as i128, gauss_count(q as u64, n as u64), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn factorize_examples() {
        let f2 = f(2);
        let f3 = f(3);
        assert_eq!(factorize(&p(&f3, "T^2")).unwrap().factors, vec![(p(&f3, "T"), 2)]);
        assert_eq!(factorize(&p(&f2, "T^3+T+1")).unwrap().factors, vec![(p(&f2, "T^3+T+1"), 1)]);
        assert_eq!(factorize(&p(&f2, "T^4+T^2")).unwrap().factors, vec![(p(&f2, "T"), 2), (p(&f2, "T+1"), 2)]);
        let nm = factorize(&p(&f3, "2*T^2+2")).unwrap();
        assert_eq!(nm.unit, 2);
        assert_eq!(nm.product(&f3), p(&f3, "2*T^2+2"));
        assert!(factorize(&p(&f3, "2")).is_err());
    }

    #[test]
    fn enumeration_order() {
        let f2 = f(2);
        let got: Vec<String> = enumerate_monic(&f2, 1).map(|g| g.to_string()).collect();
        assert_eq!(got, ["T", "T+1"]);
        let f3 = f(3);
        let got: Vec<String> = enumerate_monic(&f3, 1).map(|g| g.to_string()).collect();
        assert_eq!(got, ["T", "T+1", "T+2"]);
        let deg3: Vec<Poly> = enumerate_monic(&f2, 3).collect();
        assert_eq!(deg3.len(), 8);
        assert_eq!(deg3.iter().filter(|g| is_irreducible(g).unwrap()).count(), 2);
        assert_eq!(enumerate_monic(&f2, 0).collect::<Vec<_>>(), vec![Poly::one(&f2)]);
    }

    fn irreducibles(field: &FieldSpec, n: usize) -> Vec<Poly> {
        enumerate_monic(field, n).filter(|g| is_irreducible(g).unwrap()).collect()
    }

    proptest! {
        #[test]
        fn factorize_inverts_multiplication(picks in proptest::collection::vec((1usize..4, 0usize..1000, 1u32..3), 1..4), q in prop::sample::select(vec![2u32, 3, 4])) {
            let fq = f(q);
            let mut expected: Vec<(Poly, u32)> = Vec::new();
            for (deg, which, mult) in picks {
                let pool = irreducibles(&fq, deg);
                let pr = pool[which % pool.len()].clone();
                match expected.iter_mut().find(|(x, _)| *x == pr) {
                    Some(e) => e.1 += mult,
                    None => expected.push((pr, mult)),
                }
            }
            expected.sort_by(|a, b| a.0.cmp(&b.0));
            let product = expected.iter().fold(Poly::one(&fq), |acc, (pr, e)| &acc * &pr.pow(*e as u64));
            let fact = factorize(&product).unwrap();
            prop_assert_eq!(&fact.factors, &expected);
            prop_assert_eq!(fact.product(&fq), product);
        }

        #[test]
        fn divmod_reconstructs(a in proptest::collection::vec(0u8..3, 0..12), b in proptest::collection::vec(0u8..3, 1..6)) {
            let f3 = f(3);
            let a = Poly::new(&f3, a);
            let b = Poly::new(&f3, b);
            prop_assume!(!b.is_zero());
            let (qq, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&qq * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn display_parse_roundtrip(a in proptest::collection::vec(0u8..5, 0..10)) {
            let f5 = f(5);
            let g = Poly::new(&f5, a);
            prop_assert_eq!(Poly::parse(&f5, &g.to_string()).unwrap(), g);
        }
    }
}
