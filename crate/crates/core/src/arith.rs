//! Small integer number theory: primality, factorization, Möbius, divisors.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// `(p, k)` with `n = p^k`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factor(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Inverse of `a` modulo `m` (with `m = 1` everything is 0).
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(euler_phi(26), 12);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 8), None);
        assert_eq!(mod_inverse(5, 1), Some(0));
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 2..200u64 {
            let s: i32 = divisors(n).into_iter().map(mobius).sum();
            assert_eq!(s, 0, "n = {n}");
        }
    }
}
