//! Integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a/b"` or `"a"` exactly.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| crate::Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn checked_pow(p: u64, k: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}

/// Multiplicative order of `p` modulo `n` (`n >= 1`, `gcd(p, n) = 1`); `ord_1 p = 1`.
pub fn mult_order(p: u64, n: u64) -> u64 {
    assert!(n >= 1, "modulus must be positive");
    if n == 1 {
        return 1;
    }
    assert_eq!(gcd(p % n, n), 1, "p must be a unit mod n");
    let n = n as u128;
    let base = (p as u128) % n;
    let mut acc = base;
    let mut k = 1u64;
    while acc != 1 {
        acc = acc * base % n;
        k += 1;
    }
    k
}

/// Splits `n` as `p^v * u` with `p ∤ u`, returning `(v, u)`. Panics on zero.
pub fn split_p_part(n: &BigInt, p: u64) -> (i64, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        u = q;
        v += 1;
    }
    (v, u)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Representative of `q mod 1` in `[0, 1)`.
pub fn fract(q: &Rational) -> Rational {
    q - q.floor()
}

/// The prime-to-`p` part of the reduced denominator of `q`.
pub fn p_free_denominator(q: &Rational, p: u64) -> BigInt {
    let den = q.denom().abs();
    split_p_part(&den, p).1
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// Positive number of digits `⌈hi − lo⌉` between two exponents, saturating at zero.
pub fn digit_count(hi: &Rational, lo: &Rational) -> u32 {
    let d = ceil(&(hi - lo));
    if d.is_positive() {
        d.to_u32().expect("digit count fits in u32")
    } else {
        0
    }
}

/// Reduces an integer into `[0, m)`.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

/// Modular inverse of `a` modulo `m` for coprime inputs.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(base: u64, mut e: u128, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_orders() {
        assert!(is_prime(3) && is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(mult_order(3, 8), 2);
        assert_eq!(mult_order(3, 4), 2);
        assert_eq!(mult_order(5, 1), 1);
        assert_eq!(factorize(80), vec![(2, 4), (5, 1)]);
    }

    #[test]
    fn denominators_strip_p() {
        assert_eq!(p_free_denominator(&rat(1, 3), 3), BigInt::one());
        assert_eq!(p_free_denominator(&rat(5, 6), 3), BigInt::from(2));
        assert_eq!(p_free_denominator(&rat(-7, 18), 3), BigInt::from(2));
    }

    #[test]
    fn digit_counts() {
        assert_eq!(digit_count(&rat(3, 1), &rat(0, 1)), 3);
        assert_eq!(digit_count(&rat(3, 2), &rat(1, 2)), 1);
        assert_eq!(digit_count(&rat(5, 3), &rat(1, 2)), 2);
        assert_eq!(digit_count(&rat(0, 1), &rat(1, 2)), 0);
        assert_eq!(fract(&rat(-1, 3)), rat(2, 3));
        assert_eq!(binomial(5, 2), BigInt::from(10));
    }
}
