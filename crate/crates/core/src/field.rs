//! Finite fields F_q, q = p^k, backed by full lookup tables.
//!
//! Elements are encoded as integers `0..q`: the base-p digits of an element
//! are its coordinates in the power basis of F_p[x]/(modulus). For k = 1 this
//! is the usual residue representation. The integer encoding doubles as the
//! canonical total order used for enumeration everywhere downstream.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};

/// A field element, encoded as an integer in `0..q`.
pub type FieldElement = u8;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

/// Arithmetic kinds accepted by [`FieldSpec::op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Handle to an immutable table-backed finite field. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl FieldSpec {
    /// Builds F_{p^k}. For k > 1 the modulus is the smallest monic irreducible
    /// of degree k over F_p in canonical order.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{k} exceeds the supported order {MAX_ORDER}")))?
            as u32;

        let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p, k as usize) };
        let qs = q as usize;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = vec![0; k as usize];
            let mut x = x;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u8;
                let prod = if k == 1 { vec![(a * b) % p] } else { mul_mod_poly(&da, &db, &modulus, p) };
                mul[(a * q + b) as usize] = encode(&prod) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).expect("additive inverse") as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("multiplicative inverse") as u8;
            }
        }
        Ok(Self { t: Arc::new(Tables { p, k, q, modulus, add, mul, neg, inv }) })
    }

    /// Builds F_q from its order, choosing the canonical modulus.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q as u64).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p as u32, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.t.k
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Coefficients (constant term first) of the defining polynomial over F_p,
    /// without its leading 1. Empty for prime fields.
    pub fn modulus_poly(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.t.q).map(|x| x as FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.t.q).map(|x| x as FieldElement)
    }

    /// Maps an integer into the prime subfield (reduces mod p).
    pub fn from_int(&self, n: i64) -> FieldElement {
        n.rem_euclid(self.t.p as i64) as FieldElement
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.t.add[a as usize * self.t.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.t.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.t.mul[a as usize * self.t.q as usize + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != 0).then(|| self.t.inv[a as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    pub fn op(&self, a: FieldElement, b: FieldElement, kind: FieldOp) -> Result<FieldElement> {
        let q = self.t.q;
        if a as u32 >= q || b as u32 >= q {
            return Err(Error::InvalidArgument(format!("element out of range for F_{q}")));
        }
        Ok(match kind {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
        })
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.p == other.t.p && self.t.k == other.t.k)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.t.q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.t.q)
    }
}

/// Parses `F2`, `F4`, `F9`, ... (also accepts `GF4`).
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidField(format!("expected a field like F2, got {s:?}")))?;
        let q: u32 = digits.parse().map_err(|_| Error::InvalidField(format!("expected a field like F2, got {s:?}")))?;
        Self::with_order(q)
    }
}

// Polynomials over F_p as digit vectors (constant term first), used only to
// build the extension-field tables.

fn mul_mod_poly(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^k = -(modulus[0] + ... + modulus[k-1] x^{k-1})
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate() {
            prod[i - k + j] = (prod[i - k + j] + (p - m) * c) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn poly_rem_fp(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = (1..p).find(|&x| x * b[db] % p == 1).unwrap();
    while r.len() > db {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - db;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - bj) * c) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Smallest monic irreducible of degree k over F_p (coefficients below the
/// leading one, constant first), by trial division.
fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as u64).pow(k as u32);
    let expand = |mut idx: u64, len: usize| -> Vec<u32> {
        let mut v = Vec::with_capacity(len + 1);
        for _ in 0..len {
            v.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        v
    };
    'candidates: for idx in 0..count {
        let low = expand(idx, k);
        let mut full = low.clone();
        full.push(1);
        for d in 1..=k / 2 {
            for j in 0..(p as u64).pow(d as u32) {
                let mut div = expand(j, d);
                div.push(1);
                if poly_rem_fp(&full, &div, p).is_empty() {
                    continue 'candidates;
                }
            }
        }
        return low;
    }
    unreachable!("irreducible polynomials exist in every degree")
}
