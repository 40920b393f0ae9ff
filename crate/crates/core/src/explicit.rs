//! Exact prime counts from L-function data, with no enumeration of degree-N
//! polynomials.
//!
//! π(N; m, a) = (1/N) Σ_{d|N} [ Z̃(d)_{a,χ0} (q^{N/d} - s_{m,N/d})
//!                             + Σ_{χ≠χ0} Z̃(d)_{a,χ} c_{N/d}(χ) ]
//! where c_n(χ) = -Σ_j α_j(χ)^n, so the zero contribution enters with a plus
//! sign here.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{divisors, gcd, mobius, mod_inverse};
use crate::characters::{all_characters, Character, UnitGroup};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::lfunc::{class_distribution, l_polynomial_from, LPolynomial};
use crate::poly::{factorize, Factorization, Poly};

/// s_{m,n} = Σ deg P over distinct irreducible P | m with deg P | n.
pub fn s_value(fac: &Factorization, n: u64) -> u64 {
    fac.primes().map(|p| p.degree().unwrap() as u64).filter(|&d| n.is_multiple_of(d)).sum()
}

/// Z(n)_{χ,a} = χ(a)^n, rows in character order, columns in class order.
pub fn zmatrix(group: &UnitGroup, chars: &[Character], n: u64) -> Vec<Vec<CycloNum>> {
    let e = group.exponent();
    chars
        .iter()
        .map(|chi| {
            (0..group.order()).map(|a| CycloNum::root(e as u32, (chi.exp_at(a) as u128 * n as u128 % e as u128) as i64)).collect()
        })
        .collect()
}

/// Z̃(n)_{a,χ} = (μ(n)/M') Σ_{b^n = a} χ(b)^{-1}.
#[derive(Clone, Debug)]
pub struct ZMatrixInverse {
    pub n: u64,
    /// entries[a][χ]
    pub entries: Vec<Vec<CycloNum>>,
}

pub fn zmatrix_inverse(group: &UnitGroup, chars: &[Character], n: u64) -> ZMatrixInverse {
    let e = group.exponent() as usize;
    let size = group.order();
    let mu = mobius(n);
    if mu == 0 {
        return ZMatrixInverse { n, entries: vec![vec![CycloNum::zero(e as u32); chars.len()]; size] };
    }
    // hist[a][χ][t] = #{b : b^n = a, χ(b)^{-1} = ζ^t}
    let mut hist = vec![vec![vec![BigInt::zero(); e]; chars.len()]; size];
    let exps: Vec<Vec<u64>> = chars.iter().map(Character::exp_table).collect();
    for b in 0..size {
        let a = group.pow_fast(b, n);
        for (ci, t) in exps.iter().enumerate() {
            hist[a][ci][(e - t[b] as usize) % e] += 1;
        }
    }
    let scale = BigRational::new(BigInt::from(mu), BigInt::from(size));
    let entries = hist
        .into_iter()
        .map(|row| row.into_iter().map(|h| CycloNum::from_exponent_counts(e as u32, &h).scale(&scale)).collect())
        .collect();
    ZMatrixInverse { n, entries }
}

fn mat_mul(a: &[Vec<CycloNum>], b: &[Vec<CycloNum>], e: u32) -> Vec<Vec<CycloNum>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols).map(|j| row.iter().zip(b).fold(CycloNum::zero(e), |acc, (x, brow)| &acc + &(x * &brow[j]))).collect()
        })
        .collect()
}

/// Checks Z̃(1)Z(1) = I and Σ_{d|n} Z̃(d)Z(n/d) = 0 for 2 <= n <= n_max.
pub fn check_mobius_relations(group: &Arc<UnitGroup>, n_max: u64) -> Result<()> {
    let chars = all_characters(group);
    let e = group.exponent() as u32;
    let size = group.order();
    for n in 1..=n_max {
        let mut acc = vec![vec![CycloNum::zero(e); size]; size];
        for d in divisors(n) {
            let zt = zmatrix_inverse(group, &chars, d);
            if mobius(d) == 0 {
                continue;
            }
            let prod = mat_mul(&zt.entries, &zmatrix(group, &chars, n / d), e);
            for (ar, pr) in acc.iter_mut().zip(prod) {
                for (x, y) in ar.iter_mut().zip(pr) {
                    *x = &*x + &y;
                }
            }
        }
        for (i, row) in acc.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if n == 1 && i == j { 1 } else { 0 };
                if *x != CycloNum::from_int(e, want) {
                    return Err(Error::Consistency(format!("Möbius relation fails at n={n}, entry ({i},{j}): {x}")));
                }
            }
        }
    }
    Ok(())
}

/// One (d, χ) contribution to a class count, already divided by N.
#[derive(Clone, Debug, Serialize)]
pub struct BreakdownTerm {
    pub d: u64,
    pub class: String,
    pub character: String,
    pub term: CycloNum,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplicitCount {
    #[serde(serialize_with = "ser_display")]
    pub modulus: Poly,
    pub degree: usize,
    #[serde(serialize_with = "ser_display_vec")]
    pub classes: Vec<Poly>,
    pub counts: Vec<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<BreakdownTerm>>,
    pub source: &'static str,
}

fn ser_display<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_display_vec<S: serde::Serializer>(v: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

/// Holds the L-function data of one modulus and evaluates the formula for any N.
pub struct ExplicitFormula {
    group: Arc<UnitGroup>,
    chars: Vec<Character>,
    lpolys: Vec<Option<LPolynomial>>,
    factorization: Factorization,
    /// power_sums[χ][n-1] = c_n(χ) for nontrivial χ
    power_sums: Mutex<Vec<Vec<CycloNum>>>,
    zinv: Mutex<HashMap<u64, Arc<ZMatrixInverse>>>,
}

impl ExplicitFormula {
    pub fn new(group: &Arc<UnitGroup>) -> Result<Self> {
        let chars = all_characters(group);
        let dist = class_distribution(group);
        let lpolys = chars
            .iter()
            .map(|c| if c.is_trivial() { Ok(None) } else { l_polynomial_from(c, &dist).map(Some) })
            .collect::<Result<Vec<_>>>()?;
        for l in lpolys.iter().flatten() {
            if !l.is_complete() {
                return Err(Error::Consistency(format!(
                    "degree-M character sum for {:?} is {}, not 0",
                    l.character(),
                    l.degree_m_sum()
                )));
            }
        }
        let factorization = factorize(group.modulus())?;
        Ok(Self {
            group: group.clone(),
            power_sums: Mutex::new(vec![Vec::new(); chars.len()]),
            chars,
            lpolys,
            factorization,
            zinv: Mutex::new(HashMap::new()),
        })
    }

    pub fn for_modulus(m: &Poly) -> Result<Self> {
        Self::new(&Arc::new(UnitGroup::new(m)?))
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    pub fn l_polynomials(&self) -> impl Iterator<Item = &LPolynomial> {
        self.lpolys.iter().flatten()
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn s(&self, n: u64) -> u64 {
        s_value(&self.factorization, n)
    }

    /// c_n(χ) for character index `ci`; for χ0 this is q^n - s_{m,n}.
    pub fn spectral(&self, ci: usize, n: usize) -> CycloNum {
        let e = self.group.exponent() as u32;
        match &self.lpolys[ci] {
            None => {
                let q = BigInt::from(self.group.field().order());
                CycloNum::from_int(e, num_traits::pow(q, n) - BigInt::from(self.s(n as u64)))
            }
            Some(l) => {
                let mut cache = self.power_sums.lock().unwrap();
                if cache[ci].len() < n {
                    cache[ci] = l.power_sums(n.max(2 * cache[ci].len()));
                }
                cache[ci][n - 1].clone()
            }
        }
    }

    pub fn zinv(&self, d: u64) -> Arc<ZMatrixInverse> {
        if let Some(z) = self.zinv.lock().unwrap().get(&d) {
            return z.clone();
        }
        let z = Arc::new(zmatrix_inverse(&self.group, &self.chars, d));
        self.zinv.lock().unwrap().entry(d).or_insert(z).clone()
    }

    /// Σ_χ Z̃(d)_{a,χ} c_{n}(χ) for every class a, before division by N.
    fn divisor_terms(&self, d: u64, n: usize) -> Vec<Vec<CycloNum>> {
        let zt = self.zinv(d);
        let spectral: Vec<CycloNum> = (0..self.chars.len()).map(|ci| self.spectral(ci, n)).collect();
        zt.entries.iter().map(|row| row.iter().zip(&spectral).map(|(z, c)| z * c).collect()).collect()
    }

    fn assemble(&self, n: usize, breakdown: bool) -> Result<ExplicitCount> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        let e = self.group.exponent() as u32;
        let size = self.group.order();
        let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
        let mut totals = vec![CycloNum::zero(e); size];
        let mut terms = Vec::new();
        for d in divisors(n as u64) {
            if mobius(d) == 0 {
                continue;
            }
            for (a, row) in self.divisor_terms(d, n / d as usize).into_iter().enumerate() {
                for (ci, t) in row.into_iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    if breakdown {
                        terms.push(BreakdownTerm {
                            d,
                            class: self.group.unit(a).to_string(),
                            character: self.chars[ci].label(),
                            term: t.scale(&inv_n),
                        });
                    }
                    totals[a] = &totals[a] + &t;
                }
            }
        }
        let counts = totals
            .into_iter()
            .enumerate()
            .map(|(a, t)| {
                let v = t.scale(&inv_n);
                let bad =
                    || Error::Consistency(format!("π({n}; {}, {}) assembled to {v}", self.group.modulus(), self.group.unit(a)));
                let z = v.as_integer().ok_or_else(bad)?;
                if z.is_negative() {
                    return Err(bad());
                }
                z.to_u128().ok_or_else(bad)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExplicitCount {
            modulus: self.group.modulus().clone(),
            degree: n,
            classes: self.group.units().to_vec(),
            counts,
            breakdown: breakdown.then_some(terms),
            source: "explicit",
        })
    }

    pub fn count(&self, n: usize) -> Result<ExplicitCount> {
        self.assemble(n, false)
    }

    pub fn count_with_breakdown(&self, n: usize) -> Result<ExplicitCount> {
        self.assemble(n, true)
    }

    /// π_g(N; m, a) for every g | M', split by gcd(d, M') = g over the general Z̃ route.
    pub fn pi_g_split(&self, n: usize, class: usize) -> Vec<(u64, BigRational)> {
        let mp = self.group.order() as u64;
        let mut parts: Vec<(u64, CycloNum)> =
            divisors(mp).into_iter().map(|g| (g, CycloNum::zero(self.group.exponent() as u32))).collect();
        for d in divisors(n as u64) {
            if mobius(d) == 0 {
                continue;
            }
            let g = gcd(d, mp);
            let slot = parts.iter_mut().find(|(h, _)| *h == g).unwrap();
            for t in &self.divisor_terms(d, n / d as usize)[class] {
                slot.1 = &slot.1 + t;
            }
        }
        let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
        parts
            .into_iter()
            .map(|(g, v)| (g, v.as_rational().expect("class sums over full character rows are rational") * &inv_n))
            .collect()
    }

    /// π_g(N; m, c^k) for cyclic 𝒰_m via the closed form
    /// g·[g|k]/(M'N) Σ_{d|N, gcd(d,M')=g} μ(d) (q^{N/d} - s + Σ_{j=1}^{M'/g-1} ζ_{M'}^{-kj(d/g)^{-1}} c_{N/d}(χ₁^{gj})).
    pub fn pi_g_decomposition(&self, n: usize, class: usize) -> Result<Vec<(u64, BigRational)>> {
        if !self.group.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        let mp = self.group.order() as u64;
        let e = mp as u32;
        let k = self.group.dlog(class).first().copied().unwrap_or(0);
        let mut out = Vec::new();
        for g in divisors(mp) {
            let mut acc = CycloNum::zero(e);
            if k % g == 0 {
                let h = mp / g;
                for d in divisors(n as u64).into_iter().filter(|&d| gcd(d, mp) == g) {
                    let mu = mobius(d);
                    if mu == 0 {
                        continue;
                    }
                    let inv = mod_inverse(((d / g) % h) as i64, h as i64).expect("d/g is a unit mod M'/g") as u64;
                    let mut inner = self.spectral(0, n / d as usize);
                    for j in 1..h {
                        let ci = (g * j) as usize; // cyclic: character index = exponent of χ₁
                        let expo = -((k as i128 * j as i128 * inv as i128) % mp as i128) as i64;
                        inner = &inner + &self.spectral(ci, n / d as usize).mul_root(expo);
                    }
                    acc = &acc + &inner.scale_int(&BigInt::from(mu));
                }
            }
            let scale = BigRational::new(BigInt::from(g), BigInt::from(mp * n as u64));
            let v = acc
                .scale(&scale)
                .as_rational()
                .ok_or_else(|| Error::Consistency(format!("π_{g}({n}) for class {} is not rational", self.group.unit(class))))?;
            out.push((g, v));
        }
        Ok(out)
    }
}

pub fn explicit_count(m: &Poly, n: usize) -> Result<ExplicitCount> {
    ExplicitFormula::for_modulus(m)?.count(n)
}

/// (Σ_{d|N, p∤d} μ(d), Σ_{d|N} μ(d)(-1)^{N/d}).
pub fn mobius_helpers(n: u64, p: u64) -> (i64, i64) {
    let mut a = 0i64;
    let mut b = 0i64;
    for d in divisors(n) {
        let mu = mobius(d) as i64;
        if d % p != 0 {
            a += mu;
        }
        b += if (n / d).is_multiple_of(2) { mu } else { -mu };
    }
    (a, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct BiasRow {
    pub degree: usize,
    pub a: u128,
    pub b: u128,
    /// π(N; m, a) - π(N; m, b), as a decimal string
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BiasReport {
    pub a: String,
    pub b: String,
    pub rows: Vec<BiasRow>,
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    /// Degrees where the sign differs from the expected one.
    pub violations: Vec<usize>,
}

pub fn bias_report(
    engine: &ExplicitFormula,
    a: &Poly,
    b: &Poly,
    degrees: impl IntoIterator<Item = usize>,
    expected: Option<std::cmp::Ordering>,
) -> Result<BiasReport> {
    let g = engine.group();
    let (ia, ib) = (g.class_of(a)?, g.class_of(b)?);
    let mut rep = BiasReport {
        a: g.unit(ia).to_string(),
        b: g.unit(ib).to_string(),
        rows: Vec::new(),
        positive: 0,
        zero: 0,
        negative: 0,
        violations: Vec::new(),
    };
    for n in degrees {
        let c = engine.count(n)?;
        let (x, y) = (c.counts[ia], c.counts[ib]);
        let ord = x.cmp(&y);
        match ord {
            std::cmp::Ordering::Greater => rep.positive += 1,
            std::cmp::Ordering::Equal => rep.zero += 1,
            std::cmp::Ordering::Less => rep.negative += 1,
        }
        if expected.is_some_and(|e| e != ord) {
            rep.violations.push(n);
        }
        let diff = BigInt::from(x) - BigInt::from(y);
        rep.rows.push(BiasRow { degree: n, a: x, b: y, difference: diff.to_string() });
    }
    Ok(rep)
}
