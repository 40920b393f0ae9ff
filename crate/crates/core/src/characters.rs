//! The unit group (F_q[T]/m)^× and its Dirichlet characters.
//!
//! Residues are addressed by their base-q index (constant term least
//! significant), which coincides with the canonical polynomial order on
//! residues of degree < deg m. Units get a dense ordinal 0..M' in that order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{gcd, lcm};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Poly;

/// Largest residue space q^M we are willing to tabulate.
const MAX_RESIDUES: u64 = 1 << 24;
const NOT_A_UNIT: u32 = u32::MAX;

pub struct UnitGroup {
    modulus: Poly,
    field: FieldSpec,
    m_deg: usize,
    units: Vec<Poly>,
    unit_index: Vec<u64>,
    /// residue index -> unit ordinal, or NOT_A_UNIT
    ordinal: Vec<u32>,
    generators: Vec<Poly>,
    orders: Vec<u64>,
    exponent: u64,
    dlogs: Vec<Vec<u64>>,
    /// mixed-radix dlog code -> unit ordinal
    by_code: Vec<u32>,
}

impl UnitGroup {
    pub fn new(m: &Poly) -> Result<Self> {
        let field = m.field().clone();
        let m_deg = match m.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidArgument("modulus must have degree >= 1".into())),
        };
        if !m.is_monic() {
            return Err(Error::InvalidArgument(format!("modulus {m} is not monic")));
        }
        let q = field.order() as u64;
        let size = (q as u128).pow(m_deg as u32);
        if size > MAX_RESIDUES as u128 {
            return Err(Error::InvalidArgument(format!("residue ring of {m} is too large to tabulate")));
        }
        let size = size as u64;
        let mut units = Vec::new();
        let mut unit_index = Vec::new();
        let mut ordinal = vec![NOT_A_UNIT; size as usize];
        for idx in 0..size {
            let r = Poly::from_index(&field, idx, m_deg);
            if !r.is_zero() && r.gcd(m)?.is_one() {
                ordinal[idx as usize] = units.len() as u32;
                units.push(r);
                unit_index.push(idx);
            }
        }
        let n = units.len();

        let mut group = Self {
            modulus: m.clone(),
            field,
            m_deg,
            units,
            unit_index,
            ordinal,
            generators: Vec::new(),
            orders: Vec::new(),
            exponent: 1,
            dlogs: Vec::new(),
            by_code: Vec::new(),
        };
        let one = group.ordinal_of_poly(&Poly::one(&group.field)).expect("1 is a unit");

        // Peel off cyclic subgroups of maximal order. `h` maps members of the
        // subgroup generated so far to their exponent vectors.
        let mut h: HashMap<usize, Vec<u64>> = HashMap::from([(one, Vec::new())]);
        let mut gens: Vec<usize> = Vec::new();
        let mut ords: Vec<u64> = Vec::new();
        while h.len() < n {
            let mut best = (0u64, 0usize, 0usize);
            for x in 0..n {
                let (mut y, mut k) = (x, 1u64);
                while !h.contains_key(&y) {
                    y = group.mul(y, x);
                    k += 1;
                }
                if k > best.0 {
                    best = (k, x, y);
                }
            }
            let (k, x, xk) = best;
            // x^k = Π g_i^{a_i}; maximality of k forces k | a_i
            let mut adj = x;
            for (i, &a) in h[&xk].iter().enumerate() {
                debug_assert_eq!(a % k, 0);
                let inv_exp = (ords[i] - (a / k) % ords[i]) % ords[i];
                adj = group.mul(adj, group.pow(gens[i], inv_exp));
            }
            let mut grown = HashMap::with_capacity(h.len() * k as usize);
            for (&member, exps) in &h {
                let mut y = member;
                for j in 0..k {
                    let mut e = exps.clone();
                    e.push(j);
                    grown.insert(y, e);
                    y = group.mul(y, adj);
                }
            }
            h = grown;
            gens.push(adj);
            ords.push(k);
        }

        // invariant-factor order d_1 | d_2 | ... | d_r
        gens.reverse();
        ords.reverse();
        let r = gens.len();
        group.dlogs = vec![Vec::new(); n];
        for (member, mut exps) in h {
            exps.reverse();
            group.dlogs[member] = exps;
        }
        debug_assert!(group.dlogs.iter().all(|e| e.len() == r));
        group.generators = gens.iter().map(|&g| group.units[g].clone()).collect();
        group.exponent = ords.iter().fold(1, |a, &d| lcm(a, d));
        group.orders = ords;
        group.by_code = vec![NOT_A_UNIT; n];
        for u in 0..n {
            let c = group.code(&group.dlogs[u]);
            group.by_code[c] = u as u32;
        }
        Ok(group)
    }

    fn code(&self, exps: &[u64]) -> usize {
        exps.iter().zip(&self.orders).fold(0usize, |acc, (&e, &d)| acc * d as usize + (e % d) as usize)
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// deg m.
    pub fn modulus_degree(&self) -> usize {
        self.m_deg
    }

    /// M' = Φ(m).
    pub fn order(&self) -> usize {
        self.units.len()
    }

    /// E, the exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Invariant factors d_1 | … | d_r.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.orders
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.len() <= 1
    }

    /// Unit residues in canonical order.
    pub fn units(&self) -> &[Poly] {
        &self.units
    }

    pub fn unit(&self, ordinal: usize) -> &Poly {
        &self.units[ordinal]
    }

    /// Base-q index of the residue with the given ordinal.
    pub fn unit_residue_index(&self, ordinal: usize) -> u64 {
        self.unit_index[ordinal]
    }

    /// Residue index -> unit ordinal, `u32::MAX` for non-units. Length q^M.
    pub fn ordinal_table(&self) -> &[u32] {
        &self.ordinal
    }

    pub fn ordinal_of_index(&self, residue_index: u64) -> Option<usize> {
        match self.ordinal.get(residue_index as usize) {
            Some(&o) if o != NOT_A_UNIT => Some(o as usize),
            _ => None,
        }
    }

    /// Ordinal of the class of an arbitrary polynomial, if it is a unit mod m.
    pub fn ordinal_of_poly(&self, f: &Poly) -> Option<usize> {
        let r = f.rem(&self.modulus).ok()?;
        self.ordinal_of_index(r.to_index())
    }

    pub fn class_of(&self, f: &Poly) -> Result<usize> {
        self.ordinal_of_poly(f).ok_or_else(|| Error::NotAUnit(format!("{f} is not a unit modulo {}", self.modulus)))
    }

    pub fn dlog(&self, ordinal: usize) -> &[u64] {
        &self.dlogs[ordinal]
    }

    pub fn from_dlog(&self, exps: &[u64]) -> usize {
        self.by_code[self.code(exps)] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.units[a].mul_mod(&self.units[b], &self.modulus).expect("same field");
        self.ordinal_of_index(p.to_index()).expect("units are closed under multiplication")
    }

    /// Multiplication through discrete logs; needs the group structure to be built.
    pub fn mul_fast(&self, a: usize, b: usize) -> usize {
        let exps: Vec<u64> = self.dlogs[a].iter().zip(&self.dlogs[b]).map(|(x, y)| x + y).collect();
        self.from_dlog(&exps)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = self.ordinal_of_poly(&Poly::one(&self.field)).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn pow_fast(&self, a: usize, e: u64) -> usize {
        let exps: Vec<u64> =
            self.dlogs[a].iter().zip(&self.orders).map(|(&x, &d)| (x as u128 * e as u128 % d as u128) as u64).collect();
        self.from_dlog(&exps)
    }

    pub fn inverse(&self, a: usize) -> usize {
        let exps: Vec<u64> = self.dlogs[a].iter().zip(&self.orders).map(|(&x, &d)| (d - x) % d).collect();
        self.from_dlog(&exps)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.dlogs[a].iter().zip(&self.orders).fold(1, |acc, (&x, &d)| lcm(acc, d / gcd(x, d)))
    }

    pub fn identity(&self) -> usize {
        self.from_dlog(&vec![0; self.orders.len()])
    }
}

impl fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitGroup(mod {} over {}, factors {:?}, gens [", self.modulus, self.field, self.orders)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// χ with χ(g_i) = ζ_{d_i}^{k_i}.
#[derive(Clone)]
pub struct Character {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl Character {
    pub fn new(group: &Arc<UnitGroup>, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != group.orders.len() {
            return Err(Error::InvalidArgument(format!("character needs {} exponents, got {}", group.orders.len(), exps.len())));
        }
        let exps = exps.iter().zip(&group.orders).map(|(&k, &d)| k % d).collect();
        Ok(Self { group: group.clone(), exps })
    }

    pub fn trivial(group: &Arc<UnitGroup>) -> Self {
        Self { group: group.clone(), exps: vec![0; group.orders.len()] }
    }

    /// Parses `1` or `1,0`.
    pub fn parse(group: &Arc<UnitGroup>, s: &str) -> Result<Self> {
        let exps: std::result::Result<Vec<u64>, _> =
            s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse::<u64>()).collect();
        let exps = exps.map_err(|e| Error::Parse(format!("bad character exponent list {s:?}: {e}")))?;
        Self::new(group, exps)
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    pub fn order(&self) -> u64 {
        self.exps.iter().zip(&self.group.orders).fold(1, |acc, (&k, &d)| lcm(acc, d / gcd(k, d)))
    }

    /// Exponent t with χ(a) = ζ_E^t, for a unit ordinal.
    pub fn exp_at(&self, ordinal: usize) -> u64 {
        let e = self.group.exponent;
        let dl = &self.group.dlogs[ordinal];
        let mut t = 0u64;
        for ((&k, &x), &d) in self.exps.iter().zip(dl).zip(&self.group.orders) {
            t = (t + k * x % d * (e / d)) % e;
        }
        t
    }

    /// χ(a) as an exponent of ζ_E; `None` when a is not a unit.
    pub fn value_exp(&self, f: &Poly) -> Option<u64> {
        self.group.ordinal_of_poly(f).map(|o| self.exp_at(o))
    }

    pub fn value(&self, f: &Poly) -> Result<CycloNum> {
        let o = self.group.class_of(f)?;
        Ok(CycloNum::root(self.group.exponent as u32, self.exp_at(o) as i64))
    }

    /// `table[o]` = exponent of χ at unit ordinal o.
    pub fn exp_table(&self) -> Vec<u64> {
        (0..self.group.order()).map(|o| self.exp_at(o)).collect()
    }

    pub fn pow(&self, l: u64) -> Self {
        let exps = self.exps.iter().zip(&self.group.orders).map(|(&k, &d)| (k as u128 * l as u128 % d as u128) as u64).collect();
        Self { group: self.group.clone(), exps }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let exps = self.exps.iter().zip(&other.exps).zip(&self.group.orders).map(|((&a, &b), &d)| (a + b) % d).collect();
        Self { group: self.group.clone(), exps }
    }

    pub fn conj(&self) -> Self {
        let exps = self.exps.iter().zip(&self.group.orders).map(|(&k, &d)| (d - k) % d).collect();
        Self { group: self.group.clone(), exps }
    }

    /// `1` or `1,0`, the CLI addressing form.
    pub fn label(&self) -> String {
        self.exps.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.exps == other.exps
    }
}

impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}]", self.label())
    }
}

/// All M' characters, exponent vectors in lexicographic order.
pub fn all_characters(group: &Arc<UnitGroup>) -> Vec<Character> {
    let orders = group.invariant_factors();
    let mut out = Vec::with_capacity(group.order());
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(Character { group: group.clone(), exps: exps.clone() });
        let mut i = orders.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

pub fn unit_group(m: &Poly) -> Result<Arc<UnitGroup>> {
    UnitGroup::new(m).map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn group(q: u32, m: &str) -> Arc<UnitGroup> {
        let f = FieldSpec::with_order(q).unwrap();
        unit_group(&Poly::parse(&f, m).unwrap()).unwrap()
    }

    fn p(g: &UnitGroup, s: &str) -> Poly {
        Poly::parse(g.field(), s).unwrap()
    }

    #[test]
    fn reference_generators() {
        for (q, m, order, gen) in
            [(2, "T^2+T+1", 3, "T"), (3, "T^2+1", 8, "T+1"), (2, "T^2", 2, "T+1"), (2, "T^3+T+1", 7, "T"), (3, "T^2", 6, "T+2")]
        {
            let g = group(q, m);
            assert_eq!(g.order(), order, "{m}");
            assert!(g.is_cyclic());
            assert_eq!(g.generators(), &[p(&g, gen)], "{m}");
            assert_eq!(g.exponent(), order as u64);
        }
        // T is not a generator modulo T^2+1 over F_3
        let g = group(3, "T^2+1");
        assert_eq!(g.element_order(g.class_of(&p(&g, "T")).unwrap()), 4);
    }

    #[test]
    fn non_cyclic_structure() {
        let g = group(3, "T^2+T");
        assert_eq!(g.order(), 4);
        assert_eq!(g.invariant_factors(), &[2, 2]);
        let g = group(2, "T^4");
        assert_eq!(g.invariant_factors(), &[2, 4]);
        assert_eq!(g.exponent(), 4);
        let g = group(2, "T^5+T^4");
        assert_eq!(g.order(), 8);
        assert_eq!(g.invariant_factors().iter().product::<u64>(), 8);
        // T as modulus over F_2: trivial group
        let g = group(2, "T");
        assert_eq!(g.order(), 1);
        assert_eq!(all_characters(&g).len(), 1);
    }

    #[test]
    fn group_invariants() {
        for (q, m) in [(2, "T^4"), (3, "T^2+T"), (3, "T^3+2*T+2"), (5, "T^2+2"), (4, "T^2+T+2"), (2, "T^3+T^2"), (3, "T^3")] {
            let g = group(q, m);
            let prod: u64 = g.invariant_factors().iter().product();
            assert_eq!(prod as usize, g.order());
            for w in g.invariant_factors().windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
            for (gen, &d) in g.generators().iter().zip(g.invariant_factors()) {
                let o = g.class_of(gen).unwrap();
                assert_eq!(g.element_order(o), d);
                assert_eq!(g.pow(o, d), g.identity());
            }
            for u in 0..g.order() {
                // reconstruct from the dlog vector with plain polynomial arithmetic
                let mut acc = Poly::one(g.field());
                for (gen, &e) in g.generators().iter().zip(g.dlog(u)) {
                    acc = acc.mul_mod(&gen.pow_mod(e, g.modulus()).unwrap(), g.modulus()).unwrap();
                }
                assert_eq!(&acc, g.unit(u));
                assert_eq!(g.mul(u, g.inverse(u)), g.identity());
            }
            assert_eq!(g.order() as u64 % g.exponent(), 0);
        }
    }

    #[test]
    fn character_values() {
        let g = group(2, "T^2+T+1");
        let chi = Character::new(&g, vec![1]).unwrap();
        assert_eq!(chi.value(&p(&g, "T")).unwrap(), CycloNum::root(3, 1));
        assert!(chi.value(&p(&g, "T^2+T+1")).is_err());
        let g = group(3, "T^2+1");
        let chi = Character::parse(&g, "1").unwrap();
        assert_eq!(chi.value(&p(&g, "T+1")).unwrap(), CycloNum::root(8, 1));
        assert_eq!(chi.order(), 8);
        assert_eq!(chi.pow(2).order(), 4);
        assert!(Character::trivial(&g).value(&p(&g, "T")).unwrap() == CycloNum::one(8));
        assert_eq!(all_characters(&g).len(), 8);
        assert_eq!(all_characters(&g)[3], chi.pow(3));
    }

    #[test]
    fn multiplicativity_and_orthogonality() {
        for (q, m) in [(2, "T^2+T+1"), (3, "T^2+1"), (3, "T^2+T"), (2, "T^4"), (3, "T^2")] {
            let g = group(q, m);
            let e = g.exponent() as u32;
            let n = g.order();
            let chars = all_characters(&g);
            assert_eq!(chars.len(), n);
            for chi in &chars {
                assert_eq!(g.exponent() % chi.order(), 0);
                assert!(chi.pow(n as u64).is_trivial());
                let t = chi.exp_table();
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(t[g.mul(a, b)], (t[a] + t[b]) % g.exponent());
                        assert_eq!(g.mul(a, b), g.mul_fast(a, b));
                    }
                }
                let s: CycloNum = (0..n).map(|a| CycloNum::root(e, t[a] as i64)).sum();
                assert_eq!(s.is_zero(), !chi.is_trivial());
            }
            // Σ_χ χ(b^{-1}c) = M'·[b = c]
            for b in 0..n {
                for c in 0..n {
                    let x = g.mul(g.inverse(b), c);
                    let s: CycloNum = chars.iter().map(|chi| CycloNum::root(e, chi.exp_at(x) as i64)).sum();
                    let want = if b == c { n as i64 } else { 0 };
                    assert_eq!(s, CycloNum::from_int(e, want));
                }
            }
            // Σ_a χ(a)ψ(a)^{-1} = M'·[χ = ψ]
            for chi in &chars {
                for psi in &chars {
                    let s: CycloNum = (0..n).map(|a| CycloNum::root(e, chi.exp_at(a) as i64 - psi.exp_at(a) as i64)).sum();
                    if chi == psi {
                        assert_eq!(s, CycloNum::from_int(e, n as i64));
                    } else {
                        assert!(s.is_zero());
                    }
                }
            }
        }
        let _ = CycloNum::zero(1).coeffs()[0].is_zero();
    }
}
