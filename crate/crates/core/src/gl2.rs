//! The GL₂(F_q) slash action on polynomials and tie certificates built from
//! matrices that fix the modulus up to a scalar.

use std::fmt;

use serde::Serialize;

use crate::arith::gcd;
use crate::characters::UnitGroup;
use crate::error::{Error, Result};
use crate::explicit::ExplicitFormula;
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{is_irreducible, Poly};
use crate::sieve::{nonmonic_from_monic, sieve_count, sieve_cutoff};

/// (α β; γ δ) over F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

impl Mat2 {
    pub fn new(
        field: &FieldSpec,
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
        delta: FieldElement,
    ) -> Result<Self> {
        let m = Self { alpha, beta, gamma, delta };
        if m.det(field) == 0 {
            return Err(Error::InvalidArgument(format!("matrix {m} is singular")));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self { alpha: 1, beta: 0, gamma: 0, delta: 1 }
    }

    pub fn det(&self, field: &FieldSpec) -> FieldElement {
        field.sub(field.mul(self.alpha, self.delta), field.mul(self.beta, self.gamma))
    }

    pub fn mul(&self, other: &Self, f: &FieldSpec) -> Self {
        let dot = |a, b, c, d| f.add(f.mul(a, b), f.mul(c, d));
        Self {
            alpha: dot(self.alpha, other.alpha, self.beta, other.gamma),
            beta: dot(self.alpha, other.beta, self.beta, other.delta),
            gamma: dot(self.gamma, other.alpha, self.delta, other.gamma),
            delta: dot(self.gamma, other.beta, self.delta, other.delta),
        }
    }

    pub fn inverse(&self, f: &FieldSpec) -> Self {
        let inv = f.inv(self.det(f)).expect("invertible");
        Self {
            alpha: f.mul(inv, self.delta),
            beta: f.mul(inv, f.neg(self.beta)),
            gamma: f.mul(inv, f.neg(self.gamma)),
            delta: f.mul(inv, self.alpha),
        }
    }

    /// γT + δ.
    pub fn denominator(&self, field: &FieldSpec) -> Poly {
        Poly::new(field, vec![self.delta, self.gamma])
    }

    /// Every invertible matrix, (α, β, γ, δ) in lexicographic encoding order.
    pub fn all(field: &FieldSpec) -> Vec<Self> {
        let q = field.order();
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = Self { alpha: a as u8, beta: b as u8, gamma: c as u8, delta: d as u8 };
                        if m.det(field) != 0 {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {};{} {})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// f|_n B = Σ a_i (αT+β)^i (γT+δ)^{n-i}.
pub fn slash_action(f: &Poly, n: usize, b: &Mat2) -> Result<Poly> {
    let field = f.field();
    if f.degree().is_some_and(|d| d > n) {
        return Err(Error::InvalidArgument(format!("slash weight {n} is below deg {f}")));
    }
    let num = Poly::new(field, vec![b.beta, b.alpha]);
    let den = b.denominator(field);
    let num_pows: Vec<Poly> = std::iter::successors(Some(Poly::one(field)), |p| Some(p * &num)).take(n + 1).collect();
    let den_pows: Vec<Poly> = std::iter::successors(Some(Poly::one(field)), |p| Some(p * &den)).take(n + 1).collect();
    let mut acc = Poly::zero(field);
    for (i, &a) in f.coeffs().iter().enumerate() {
        if a != 0 {
            acc = &acc + &(&num_pows[i] * &den_pows[n - i]).scale(a);
        }
    }
    Ok(acc)
}

/// f|_n(B₁B₂) = (f|_n B₁)|_n B₂.
pub fn action_law_check(f: &Poly, n: usize, b1: &Mat2, b2: &Mat2) -> Result<bool> {
    let field = f.field();
    let lhs = slash_action(f, n, &b1.mul(b2, field))?;
    let rhs = slash_action(&slash_action(f, n, b1)?, n, b2)?;
    Ok(lhs == rhs)
}

/// λ with m|_M B = λ·m, if any.
pub fn stabilizer_scalar(m: &Poly, b: &Mat2) -> Option<FieldElement> {
    let md = m.degree()?;
    let h = slash_action(m, md, b).ok()?;
    let lam = h.coeff(md);
    (lam != 0 && h == m.scale(lam)).then_some(lam)
}

pub fn stabilizer_search(m: &Poly) -> Vec<(Mat2, FieldElement)> {
    Mat2::all(m.field()).into_iter().filter_map(|b| stabilizer_scalar(m, &b).map(|l| (b, l))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonicJustification {
    /// Over F_2 every polynomial is monic.
    Q2,
    /// γ = 0 and ord(α) | gcd(e, N₀), so α^N = 1 for every certified N.
    Gamma0AlphaOrder,
    None,
}

#[derive(Clone, Debug)]
pub struct TieCertificate {
    pub modulus: Poly,
    pub matrix: Mat2,
    pub lambda: FieldElement,
    /// N₀ = order of γT+δ in 𝒰_m.
    pub period: u64,
    /// The residue as requested.
    pub residue: u64,
    /// Weight actually used, e ≥ M-1 and e ≡ residue (mod N₀).
    pub e: u64,
    /// `map[o]` = ordinal of c_o|_e B mod m.
    pub map: Vec<usize>,
    /// Orbits of `map`, each starting at its smallest class and following the map.
    pub orbits: Vec<Vec<usize>>,
    pub monic_certified: bool,
    pub justification: MonicJustification,
    classes: Vec<Poly>,
}

impl TieCertificate {
    pub fn class(&self, o: usize) -> &Poly {
        &self.classes[o]
    }

    /// Degrees N the certificate speaks about: N ≡ e (mod N₀), N ≥ max(2, M-1).
    pub fn covers(&self, n: usize) -> bool {
        let lo = 2.max(self.modulus.degree().unwrap().saturating_sub(1));
        n >= lo && (n as u64 % self.period) == (self.e % self.period)
    }

    pub fn orbit_labels(&self) -> Vec<Vec<String>> {
        self.orbits.iter().map(|o| o.iter().map(|&c| self.classes[c].to_string()).collect()).collect()
    }
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    modulus: String,
    matrix: [[FieldElement; 2]; 2],
    lambda: FieldElement,
    period: u64,
    residue: u64,
    e: u64,
    lifted: bool,
    map: Vec<[String; 2]>,
    orbits: Vec<Vec<String>>,
    monic_certified: bool,
    justification: &'a MonicJustification,
}

impl Serialize for TieCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let b = &self.matrix;
        CertificateJson {
            modulus: self.modulus.to_string(),
            matrix: [[b.alpha, b.beta], [b.gamma, b.delta]],
            lambda: self.lambda,
            period: self.period,
            residue: self.residue,
            e: self.e,
            lifted: self.e != self.residue,
            map: self.map.iter().enumerate().map(|(i, &j)| [self.classes[i].to_string(), self.classes[j].to_string()]).collect(),
            orbits: self.orbit_labels(),
            monic_certified: self.monic_certified,
            justification: &self.justification,
        }
        .serialize(s)
    }
}

pub fn certify_ties(group: &UnitGroup, b: &Mat2, lambda: FieldElement, residue: u64) -> Result<TieCertificate> {
    let m = group.modulus();
    let field = group.field();
    if stabilizer_scalar(m, b) != Some(lambda) {
        return Err(Error::NotAStabilizer(format!("{b} with λ={lambda} does not fix {m}")));
    }
    let den = b.denominator(field);
    let den_class = group.class_of(&den)?;
    let period = group.element_order(den_class);
    let md = group.modulus_degree() as u64;
    let mut e = residue;
    while e + 1 < md {
        e += period;
    }

    let image = |c: &Poly, w: u64| -> Result<usize> {
        let h = slash_action(c, w as usize, b)?;
        group.class_of(&h).map_err(|_| Error::Consistency(format!("{c}|_{w} {b} left the unit group")))
    };
    let n = group.order();
    let map: Vec<usize> = (0..n).map(|o| image(group.unit(o), e)).collect::<Result<_>>()?;
    let mut seen = vec![false; n];
    for &t in &map {
        if std::mem::replace(&mut seen[t], true) {
            return Err(Error::Consistency(format!("orbit map of {b} is not a permutation")));
        }
    }
    for (o, &t) in map.iter().enumerate() {
        if image(group.unit(o), e + period)? != t {
            return Err(Error::Consistency(format!("orbit map of {b} is not {period}-periodic")));
        }
    }
    let mut orbits = Vec::new();
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut c = start;
        while !done[c] {
            done[c] = true;
            orbit.push(c);
            c = map[c];
        }
        orbits.push(orbit);
    }

    let alpha_order = field.mult_order(b.alpha);
    let justification = if field.order() == 2 {
        MonicJustification::Q2
    } else if b.gamma == 0 && alpha_order.is_some_and(|k| gcd(e, period).is_multiple_of(k)) {
        MonicJustification::Gamma0AlphaOrder
    } else {
        MonicJustification::None
    };
    Ok(TieCertificate {
        modulus: m.clone(),
        matrix: *b,
        lambda,
        period,
        residue,
        e,
        map,
        orbits,
        monic_certified: justification != MonicJustification::None,
        justification,
        classes: group.units().to_vec(),
    })
}

/// Checks every certified equality for covered N ≤ n_max; returns the degrees checked.
/// Degrees above the sieve cutoff need `engine`.
pub fn verify_certificate_empirically(
    group: &UnitGroup,
    cert: &TieCertificate,
    engine: Option<&ExplicitFormula>,
    n_max: usize,
) -> Result<Vec<usize>> {
    let cutoff = sieve_cutoff(group.field().order());
    let mut checked = Vec::new();
    for n in 1..=n_max {
        if !cert.covers(n) {
            continue;
        }
        let monic = if n <= cutoff {
            sieve_count(group, n)?.counts
        } else {
            let engine = engine.ok_or_else(|| Error::InvalidArgument(format!("degree {n} needs the explicit formula")))?;
            engine.count(n)?.counts
        };
        let counts = if cert.monic_certified {
            monic
        } else {
            let table = crate::sieve::CountTable {
                modulus: group.modulus().clone(),
                degree: n,
                classes: group.units().to_vec(),
                counts: monic,
                excluded: 0,
            };
            nonmonic_from_monic(group, &table).counts
        };
        for (c, &t) in cert.map.iter().enumerate() {
            if counts[c] != counts[t] {
                return Err(Error::Consistency(format!(
                    "certificate {} fails at N={n}: {} has {}, {} has {}",
                    cert.matrix,
                    cert.class(c),
                    counts[c],
                    cert.class(t),
                    counts[t]
                )));
            }
        }
        checked.push(n);
    }
    Ok(checked)
}

/// Random irreducibles f of degree n coprime to m: checks that f|_n B keeps degree n,
/// stays irreducible, lands in the class the certificate predicts, and that B⁻¹ undoes it.
/// Returns how many irreducibles were tested.
pub fn sampled_transport_check<R: rand::Rng>(
    group: &UnitGroup,
    cert: &TieCertificate,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<usize> {
    if !cert.covers(n) {
        return Err(Error::InvalidArgument(format!("degree {n} is not covered by {}", cert.matrix)));
    }
    let field = group.field();
    let space =
        (field.order() as u64).checked_pow(n as u32).ok_or_else(|| Error::InvalidArgument(format!("degree {n} too large")))?;
    let inv = cert.matrix.inverse(field);
    let mut tested = 0;
    for _ in 0..samples {
        let f = Poly::monic_from_index(field, n, rng.gen_range(0..space));
        let Some(c) = group.ordinal_of_poly(&f) else { continue };
        if !is_irreducible(&f)? {
            continue;
        }
        let h = slash_action(&f, n, &cert.matrix)?;
        let fail = |why: &str| Error::Consistency(format!("{f}|_{n} {} = {h}: {why}", cert.matrix));
        if h.degree() != Some(n) {
            return Err(fail("degree changed"));
        }
        if !is_irreducible(&h.monic())? {
            return Err(fail("not irreducible"));
        }
        if group.ordinal_of_poly(&h) != Some(cert.map[c]) {
            return Err(fail("wrong class"));
        }
        if slash_action(&h, n, &inv)? != f {
            return Err(fail("inverse matrix does not undo the action"));
        }
        tested += 1;
    }
    Ok(tested)
}
