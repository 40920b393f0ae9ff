//! Brute-force counting of irreducibles by residue class.
//!
//! Monic degree-N polynomials are indexed by their lower N coefficients as a
//! base-q integer. A composite bitmap is filled by marking every product P·g
//! with P irreducible of degree <= N/2; the survivors are walked in index
//! order while the residue mod m is updated digit by digit.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{divisors, mobius};
use crate::characters::{Character, UnitGroup};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{is_irreducible, Poly};

/// Hard ceiling on the bitmap size (bits).
const MAX_SPACE: u64 = 1 << 28;
const BLOCK: u64 = 1 << 16;

/// Default largest degree handled by the sieve; above it callers should use
/// the explicit formula.
pub fn sieve_cutoff(q: u32) -> usize {
    match q {
        2 => 24,
        3 => 14,
        5 => 9,
        _ => {
            let mut n = 1;
            while (q as u64).pow(n as u32 + 1) <= 1 << 22 {
                n += 1;
            }
            n
        }
    }
}

/// Gauss's count of monic irreducibles of degree n over F_q.
pub fn gauss_count(q: u32, n: usize) -> u128 {
    assert!(n >= 1);
    let s: i128 = divisors(n as u64).into_iter().map(|d| mobius(d) as i128 * (q as i128).pow((n as u64 / d) as u32)).sum();
    (s / n as i128) as u128
}

/// π(N; m, c) for every unit class c, in the group's canonical class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub modulus: Poly,
    pub degree: usize,
    pub classes: Vec<Poly>,
    pub counts: Vec<u128>,
    /// Irreducibles of degree N dividing m (they lie in no unit class).
    pub excluded: u128,
}

impl CountTable {
    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    pub fn get(&self, class: &Poly) -> Option<u128> {
        let r = class.rem(&self.modulus).ok()?;
        self.classes.iter().position(|c| *c == r).map(|i| self.counts[i])
    }
}

fn pow_table(q: u64, n: usize) -> Vec<u64> {
    let mut v = vec![1u64; n + 1];
    for i in 1..=n {
        v[i] = v[i - 1] * q;
    }
    v
}

fn space_size(field: &FieldSpec, n: usize) -> Result<u64> {
    let q = field.order() as u128;
    let size = q.checked_pow(n as u32).filter(|&s| s <= MAX_SPACE as u128);
    size.map(|s| s as u64).ok_or_else(|| {
        Error::InvalidArgument(format!("degree {n} over {field} is beyond the sieve's reach; use the explicit formula"))
    })
}

fn digits_of(index: u64, q: u64, len: usize) -> Vec<FieldElement> {
    let mut idx = index;
    (0..len)
        .map(|_| {
            let d = (idx % q) as FieldElement;
            idx /= q;
            d
        })
        .collect()
}

/// Bitmap with bit i set iff the monic polynomial of degree n with index i is reducible.
pub struct CompositeMap {
    words: Vec<u64>,
    len: u64,
}

impl CompositeMap {
    pub fn is_composite(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_prime(&self) -> u64 {
        let ones: u64 = self.words.iter().map(|w| w.count_ones() as u64).sum();
        self.len - ones
    }
}

/// Monic irreducibles of degree d by Rabin's test (d small).
fn small_irreducibles(field: &FieldSpec, d: usize) -> Vec<Poly> {
    let total = (field.order() as u64).pow(d as u32);
    (0..total)
        .map(|i| Poly::monic_from_index(field, d, i))
        .filter(|p| is_irreducible(p).expect("monic, positive degree"))
        .collect()
}

pub fn composite_map(field: &FieldSpec, n: usize) -> Result<CompositeMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let size = space_size(field, n)?;
    let q = field.order() as u64;
    let pw = pow_table(q, n);
    let words: Vec<AtomicU64> = (0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();

    let mut tasks: Vec<(Poly, u64, u64)> = Vec::new();
    for d in 1..=n / 2 {
        let span = pw[n - d];
        for p in small_irreducibles(field, d) {
            let mut start = 0;
            while start < span {
                let len = BLOCK.min(span - start);
                tasks.push((p.clone(), start, len));
                start += len;
            }
        }
    }

    tasks.par_iter().for_each(|(p, start, len)| {
        let d = p.degree().unwrap();
        let k = n - d;
        let pc = p.coeffs();
        // f = P·g with g = T^k + (digits of start)
        let mut g = digits_of(*start, q, k);
        let prod = Poly::monic_from_index(field, k, *start).checked_mul(p).unwrap();
        let mut f: Vec<FieldElement> = (0..n).map(|j| prod.coeff(j)).collect();
        let mut idx: u64 = f.iter().enumerate().map(|(j, &c)| c as u64 * pw[j]).sum();
        for step in 0..*len {
            words[(idx >> 6) as usize].fetch_or(1 << (idx & 63), Ordering::Relaxed);
            if step + 1 == *len {
                break;
            }
            // increment g as a base-q counter; each changed digit i shifts f by delta·P·T^i
            let mut i = 0;
            loop {
                let old = g[i];
                let new = if old as u64 + 1 == q { 0 } else { old + 1 };
                g[i] = new;
                let delta = field.sub(new, old);
                for (j, &c) in pc.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let pos = i + j;
                    let before = f[pos];
                    let after = field.add(before, field.mul(delta, c));
                    f[pos] = after;
                    idx = idx + after as u64 * pw[pos] - before as u64 * pw[pos];
                }
                if new != 0 {
                    break;
                }
                i += 1;
            }
        }
    });

    Ok(CompositeMap { words: words.into_iter().map(AtomicU64::into_inner).collect(), len: size })
}

/// Walks monic degree-n polynomials from `start`, keeping f mod m up to date.
pub struct ResidueWalker<'a> {
    field: &'a FieldSpec,
    q: u64,
    reductions: Vec<Vec<FieldElement>>,
    mpw: Vec<u64>,
    digits: Vec<FieldElement>,
    residue: Vec<FieldElement>,
    residue_index: u64,
}

impl<'a> ResidueWalker<'a> {
    pub fn new(field: &'a FieldSpec, m: &Poly, n: usize, start: u64) -> Result<Self> {
        let md = m.degree().filter(|&d| d >= 1).ok_or_else(|| Error::InvalidArgument("modulus must have degree >= 1".into()))?;
        let q = field.order() as u64;
        // reductions[j] = T^j mod m
        let mut reductions = Vec::with_capacity(n + 1);
        let mut cur = Poly::one(field).rem(m)?;
        for _ in 0..=n {
            reductions.push((0..md).map(|k| cur.coeff(k)).collect::<Vec<_>>());
            cur = cur.mul_mod(&Poly::t(field), m)?;
        }
        let digits = digits_of(start, q, n);
        let mut residue = reductions[n].clone();
        for (j, &c) in digits.iter().enumerate() {
            if c != 0 {
                for (r, &t) in residue.iter_mut().zip(&reductions[j]) {
                    *r = field.add(*r, field.mul(c, t));
                }
            }
        }
        let mpw = pow_table(q, md);
        let residue_index = residue.iter().enumerate().map(|(k, &c)| c as u64 * mpw[k]).sum();
        Ok(Self { field, q, reductions, mpw, digits, residue, residue_index })
    }

    pub fn residue_index(&self) -> u64 {
        self.residue_index
    }

    pub fn residue(&self) -> &[FieldElement] {
        &self.residue
    }

    pub fn advance(&mut self) {
        let field = self.field;
        let mut i = 0;
        while i < self.digits.len() {
            let old = self.digits[i];
            let new = if old as u64 + 1 == self.q { 0 } else { old + 1 };
            self.digits[i] = new;
            let delta = field.sub(new, old);
            for (k, &t) in self.reductions[i].iter().enumerate() {
                if t == 0 {
                    continue;
                }
                let before = self.residue[k];
                let after = field.add(before, field.mul(delta, t));
                self.residue[k] = after;
                self.residue_index = self.residue_index + after as u64 * self.mpw[k] - before as u64 * self.mpw[k];
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
    }
}

/// π(N; m, c) for all unit classes c, by enumeration.
pub fn sieve_count(group: &UnitGroup, n: usize) -> Result<CountTable> {
    let field = group.field();
    let comp = composite_map(field, n)?;
    let size = comp.len();
    let table = group.ordinal_table();
    let nclass = group.order();
    let blocks: Vec<u64> = (0..size.div_ceil(BLOCK)).collect();
    let partial: Result<Vec<(Vec<u64>, u64)>> = blocks
        .par_iter()
        .map(|&b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(size);
            let mut walker = ResidueWalker::new(field, group.modulus(), n, start)?;
            let mut tally = vec![0u64; nclass];
            let mut excluded = 0u64;
            for i in start..end {
                if !comp.is_composite(i) {
                    match table[walker.residue_index() as usize] {
                        u32::MAX => excluded += 1,
                        o => tally[o as usize] += 1,
                    }
                }
                if i + 1 < end {
                    walker.advance();
                }
            }
            Ok((tally, excluded))
        })
        .collect();
    let mut counts = vec![0u128; nclass];
    let mut excluded = 0u128;
    for (tally, ex) in partial? {
        for (c, t) in counts.iter_mut().zip(tally) {
            *c += t as u128;
        }
        excluded += ex as u128;
    }
    Ok(CountTable { modulus: group.modulus().clone(), degree: n, classes: group.units().to_vec(), counts, excluded })
}

/// `scalar[λ-1][o]` = ordinal of λ·u_o, for λ = 1..q-1.
fn scalar_action(group: &UnitGroup) -> Vec<Vec<usize>> {
    let field = group.field();
    field
        .units()
        .map(|lam| {
            (0..group.order())
                .map(|o| group.ordinal_of_poly(&group.unit(o).scale(lam)).expect("scalar multiple of a unit"))
                .collect()
        })
        .collect()
}

/// π̃(N; m, c): irreducibles of degree N with any nonzero leading coefficient.
/// Every such polynomial is λ·f with f monic irreducible, so
/// π̃(N; m, c) = Σ_λ π(N; m, λ^{-1}c).
pub fn sieve_count_nonmonic(group: &UnitGroup, n: usize) -> Result<CountTable> {
    let monic = sieve_count(group, n)?;
    Ok(nonmonic_from_monic(group, &monic))
}

pub fn nonmonic_from_monic(group: &UnitGroup, monic: &CountTable) -> CountTable {
    let mut counts = vec![0u128; group.order()];
    for row in scalar_action(group) {
        for (o, &target) in row.iter().enumerate() {
            counts[target] += monic.counts[o];
        }
    }
    let units = group.field().order() as u128 - 1;
    CountTable { counts, excluded: monic.excluded * units, ..monic.clone() }
}

/// A_χ(n) = Σ_c π(n; m, c) χ(c).
pub fn weighted_count_a(group: &UnitGroup, chi: &Character, n: usize) -> Result<CycloNum> {
    Ok(weighted_from_table(&sieve_count(group, n)?, chi))
}

pub fn weighted_from_table(table: &CountTable, chi: &Character) -> CycloNum {
    let e = chi.group().exponent();
    let mut hist = vec![BigInt::from(0); e as usize];
    for (o, &c) in table.counts.iter().enumerate() {
        hist[chi.exp_at(o) as usize] += BigInt::from(c);
    }
    CycloNum::from_exponent_counts(e as u32, &hist)
}

/// Running sums Σ_{n<=N} π(n; m, c), one row per N = 1..=n_max.
pub fn cumulative_count(group: &UnitGroup, n_max: usize) -> Result<Vec<Vec<u128>>> {
    let mut rows = Vec::with_capacity(n_max);
    let mut acc = vec![0u128; group.order()];
    for n in 1..=n_max {
        let t = sieve_count(group, n)?;
        for (a, c) in acc.iter_mut().zip(&t.counts) {
            *a += c;
        }
        rows.push(acc.clone());
    }
    Ok(rows)
}
