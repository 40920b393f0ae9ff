//! Dirichlet L-polynomials, power sums of inverse zeros, and Galois
//! relations between the inverse-zero multisets of different characters.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{divisors, gcd};
use crate::characters::{all_characters, Character, UnitGroup};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::sieve::{sieve_count, weighted_from_table, CountTable};

/// `dist[n][o]` = number of monic f of degree n in unit class o, n = 0..=M.
pub fn class_distribution(group: &UnitGroup) -> Vec<Vec<u64>> {
    let field = group.field();
    let m = group.modulus();
    let md = group.modulus_degree();
    let q = field.order() as u64;
    (0..=md)
        .map(|n| {
            let mut row = vec![0u64; group.order()];
            for i in 0..q.pow(n as u32) {
                let f = Poly::monic_from_index(field, n, i);
                let r = if n < md { f } else { &f - m };
                if let Some(o) = group.ordinal_of_index(r.to_index()) {
                    row[o] += 1;
                }
            }
            row
        })
        .collect()
}

fn char_sum(chi: &Character, row: &[u64]) -> CycloNum {
    let e = chi.group().exponent();
    let mut hist = vec![BigInt::zero(); e as usize];
    for (o, &c) in row.iter().enumerate() {
        if c != 0 {
            hist[chi.exp_at(o) as usize] += c;
        }
    }
    CycloNum::from_exponent_counts(e as u32, &hist)
}

#[derive(Clone, Debug)]
pub struct LPolynomial {
    chi: Character,
    coeffs: Vec<CycloNum>,
    degree_m_sum: CycloNum,
}

pub fn l_polynomial(chi: &Character) -> Result<LPolynomial> {
    let dist = class_distribution(chi.group());
    l_polynomial_from(chi, &dist)
}

pub fn l_polynomial_from(chi: &Character, dist: &[Vec<u64>]) -> Result<LPolynomial> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let md = chi.group().modulus_degree();
    let mut coeffs: Vec<CycloNum> = (0..md).map(|n| char_sum(chi, &dist[n])).collect();
    let degree_m_sum = char_sum(chi, &dist[md]);
    while coeffs.len() > 1 && coeffs.last().is_some_and(CycloNum::is_zero) {
        coeffs.pop();
    }
    Ok(LPolynomial { chi: chi.clone(), coeffs, degree_m_sum })
}

/// L-polynomials of every nontrivial character, in `all_characters` order.
pub fn all_l_polynomials(group: &Arc<UnitGroup>) -> Vec<LPolynomial> {
    let dist = class_distribution(group);
    all_characters(group).iter().filter(|c| !c.is_trivial()).map(|c| l_polynomial_from(c, &dist).expect("nontrivial")).collect()
}

impl LPolynomial {
    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    /// d(χ).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn conductor(&self) -> u32 {
        self.chi.group().exponent() as u32
    }

    /// The character sum over all monic f of degree M; zero for nontrivial χ.
    pub fn degree_m_sum(&self) -> &CycloNum {
        &self.degree_m_sum
    }

    pub fn is_complete(&self) -> bool {
        self.degree_m_sum.is_zero()
    }

    /// c_n(χ) = -Σ_j α_j^n for n = 1..=n_max.
    pub fn power_sums(&self, n_max: usize) -> Vec<CycloNum> {
        newton_power_sums(&self.coeffs, n_max).into_iter().map(|p| -&p).collect()
    }

    /// Divides out every factor (1 - u). Returns the quotient and the number of factors removed.
    pub fn reduced(&self) -> (Vec<CycloNum>, usize) {
        let mut cur = self.coeffs.clone();
        let mut k = 0;
        while cur.len() > 1 {
            let at_one: CycloNum = cur.iter().cloned().sum();
            if !at_one.is_zero() {
                break;
            }
            // synthetic division by (1 - u): b_0 = a_0, b_i = a_i + b_{i-1}
            let mut out = Vec::with_capacity(cur.len() - 1);
            let mut acc = CycloNum::zero(self.conductor());
            for a in &cur[..cur.len() - 1] {
                acc = &acc + a;
                out.push(acc.clone());
            }
            cur = out;
            k += 1;
        }
        (cur, k)
    }

    /// Numerical inverse roots α_j (roots of u^d 𝓛(1/u)).
    pub fn inverse_roots(&self) -> Vec<Complex64> {
        let c: Vec<Complex64> = self.coeffs.iter().map(CycloNum::to_complex).collect();
        durand_kerner(&c)
    }

    /// Every inverse root has |α| = 1 or |α| = √q within `tol`.
    pub fn weil_check(&self, tol: f64) -> bool {
        let sq = (self.chi.group().field().order() as f64).sqrt();
        self.inverse_roots().iter().all(|a| (a.norm() - 1.0).abs() < tol || (a.norm() - sq).abs() < tol)
    }
}

/// Newton's identities for the inverse roots of 1 + a_1 u + … + a_d u^d:
/// p_n = -(n·a_n + Σ_{i=1}^{min(n-1,d)} a_i p_{n-i}), with a_n = 0 for n > d.
pub fn newton_power_sums(a: &[CycloNum], n_max: usize) -> Vec<CycloNum> {
    let e = a[0].conductor();
    let d = a.len() - 1;
    let mut p: Vec<CycloNum> = Vec::with_capacity(n_max + 1);
    p.push(CycloNum::zero(e));
    for n in 1..=n_max {
        let mut s = if n <= d { a[n].scale_int(&BigInt::from(n)) } else { CycloNum::zero(e) };
        for i in 1..=d.min(n - 1) {
            s = &s + &(&a[i] * &p[n - i]);
        }
        p.push(-&s);
    }
    p.remove(0);
    p
}

/// Roots of 1 + c_1 x + … + c_d x^d reversed, i.e. of x^d + c_1 x^{d-1} + … + c_d.
fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let eval = |x: Complex64| c.iter().fold(Complex64::zero(), |acc, &ci| acc * x + ci);
    let bound = 1.0 + c[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish each root with a few Newton steps on the full polynomial
    let deriv: Vec<Complex64> = (0..d).map(|i| c[i] * (d - i) as f64).collect();
    let eval_d = |x: Complex64| deriv.iter().fold(Complex64::zero(), |acc, &ci| acc * x + ci);
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let dv = eval_d(*r);
            if dv.norm() > 1e-300 {
                *r -= eval(*r) / dv;
            }
        }
    }
    roots
}

/// First n in 1..=n_max where Newton's c_n(χ) differs from Σ_{d|n} d·A_{χ^{n/d}}(d).
pub fn verify_power_sums_vs_sieve(l: &LPolynomial, n_max: usize) -> Result<()> {
    let chi = l.character();
    let group = chi.group();
    let tables: Vec<CountTable> = (1..=n_max).map(|n| sieve_count(group, n)).collect::<Result<_>>()?;
    let newton = l.power_sums(n_max);
    for n in 1..=n_max {
        let side: CycloNum = divisors(n as u64)
            .into_iter()
            .map(|d| weighted_from_table(&tables[d as usize - 1], &chi.pow(n as u64 / d)).scale_int(&BigInt::from(d)))
            .sum();
        if side != newton[n - 1] {
            return Err(Error::Consistency(format!(
                "power sum c_{n} for {chi:?}: Newton gives {}, sieve gives {side}",
                newton[n - 1]
            )));
        }
    }
    Ok(())
}

/// σ_l maps the inverse-zero multiset of χ onto ζ_E^t times that of χ'.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateRelation {
    pub chi: String,
    pub chi_prime: String,
    pub l: u64,
    pub t: u64,
    /// Found on the multisets with the roots α = 1 removed.
    pub reduced: bool,
}

fn matches(src: &[CycloNum], dst: &[CycloNum], t: u64) -> bool {
    src.iter().zip(dst).enumerate().all(|(i, (s, d))| *s == d.mul_root((t * (i as u64 + 1)) as i64))
}

pub fn find_conjugate_relations(ls: &[LPolynomial]) -> Vec<ConjugateRelation> {
    let Some(first) = ls.first() else { return Vec::new() };
    let e = first.character().group().exponent();
    let full: Vec<Vec<CycloNum>> = ls.iter().map(|l| newton_power_sums(l.coeffs(), l.degree())).collect();
    let reduced: Vec<(Vec<CycloNum>, usize)> = ls
        .iter()
        .map(|l| {
            let (r, k) = l.reduced();
            (newton_power_sums(&r, r.len() - 1), k)
        })
        .collect();
    let units: Vec<u64> = (1..=e).filter(|&l| gcd(l % e, e) == 1).map(|l| l % e).collect();
    let mut out = Vec::new();
    for (i, li) in ls.iter().enumerate() {
        for &l in &units {
            let img: Vec<CycloNum> = full[i].iter().map(|p| p.galois(l as i64).unwrap()).collect();
            let rimg: Vec<CycloNum> = reduced[i].0.iter().map(|p| p.galois(l as i64).unwrap()).collect();
            for (j, lj) in ls.iter().enumerate() {
                let label = |reduced: bool, t: u64| ConjugateRelation {
                    chi: li.character().label(),
                    chi_prime: lj.character().label(),
                    l,
                    t,
                    reduced,
                };
                if !img.is_empty() && img.len() == full[j].len() {
                    for t in 0..e {
                        if matches(&img, &full[j], t) {
                            out.push(label(false, t));
                        }
                    }
                }
                let removed = reduced[i].1 + reduced[j].1 > 0;
                if removed && !rimg.is_empty() && rimg.len() == reduced[j].0.len() {
                    for t in 1..e {
                        if matches(&rimg, &reduced[j].0, t) {
                            out.push(label(true, t));
                        }
                    }
                }
            }
        }
    }
    out
}
