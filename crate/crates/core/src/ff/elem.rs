use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use super::Field;
use crate::error::{Error, Result};

/// Element of `F_{p^k}` in power-basis coordinates.
#[derive(Clone)]
pub struct FFElem {
    field: Field,
    coords: Vec<u64>,
}

impl FFElem {
    pub(crate) fn from_coords(field: Field, coords: Vec<u64>) -> Self {
        debug_assert_eq!(coords.len(), field.degree());
        FFElem { field, coords }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        self.coords[1..].iter().all(|&c| c == 0).then_some(self.coords[0])
    }

    fn check(&self, other: &FFElem) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else if self.p() != other.p() {
            Err(Error::PrimeMismatch(self.p(), other.p()))
        } else {
            Err(Error::FieldMismatch {
                p: self.p(),
                a: self.field.degree(),
                b: other.field.degree(),
            })
        }
    }

    pub fn add(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn div(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub(crate) fn add_unchecked(&self, other: &FFElem) -> FFElem {
        let p = self.p();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FFElem::from_coords(self.field.clone(), coords)
    }

    pub(crate) fn sub_unchecked(&self, other: &FFElem) -> FFElem {
        self.add_unchecked(&other.neg())
    }

    pub fn neg(&self) -> FFElem {
        let p = self.p();
        let coords = self.coords.iter().map(|&a| (p - a) % p).collect();
        FFElem::from_coords(self.field.clone(), coords)
    }

    pub(crate) fn mul_unchecked(&self, other: &FFElem) -> FFElem {
        let p = self.p();
        let k = self.coords.len();
        if k == 1 {
            return FFElem::from_coords(self.field.clone(), vec![self.coords[0] * other.coords[0] % p]);
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let m = self.field.modulus();
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..k {
                let t = d - k + i;
                prod[t] = (prod[t] + (p - c) * m[i]) % p;
            }
        }
        prod.truncate(k);
        FFElem::from_coords(self.field.clone(), prod)
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, n: i64) -> FFElem {
        let p = self.p();
        let s = n.rem_euclid(p as i64) as u64;
        let coords = self.coords.iter().map(|&a| a * s % p).collect();
        FFElem::from_coords(self.field.clone(), coords)
    }

    pub fn pow(&self, e: u128) -> FFElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> FFElem {
        let mut acc = self.field.one();
        for bit in (0..e.bits()).rev() {
            acc = acc.mul_unchecked(&acc);
            if e.bit(bit) {
                acc = acc.mul_unchecked(self);
            }
        }
        acc
    }

    /// Integer power with a possibly negative exponent.
    pub fn pow_signed(&self, e: &num_bigint::BigInt) -> Result<FFElem> {
        use num_bigint::Sign;
        let (sign, mag) = e.clone().into_parts();
        if sign == Sign::Minus {
            Ok(self.inv()?.pow_big(&mag))
        } else {
            Ok(self.pow_big(&mag))
        }
    }

    pub fn inv(&self) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// `a^(p^t)`.
    pub fn frobenius(&self, t: usize) -> FFElem {
        let t = t % self.field.degree();
        let mut acc = self.clone();
        for _ in 0..t {
            acc = acc.pow(self.p() as u128);
        }
        acc
    }

    /// Inverse Frobenius `a^(p^(-t))`.
    pub fn frobenius_inv(&self, t: usize) -> FFElem {
        let k = self.field.degree();
        self.frobenius((k - t % k) % k)
    }

    /// Least `d` with `a^(p^d) = a`.
    pub fn subfield_degree(&self) -> usize {
        let k = self.field.degree();
        let mut acc = self.clone();
        for d in 1..=k {
            acc = acc.pow(self.p() as u128);
            if k % d == 0 && acc == *self {
                return d;
            }
        }
        unreachable!("a^(p^k) = a in F_(p^k)")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut n = self.field.order() - 1;
        for &r in self.field.order_primes() {
            while n % r == 0 && self.pow(n / r).is_one() {
                n /= r;
            }
        }
        Ok(n)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && {
            let n = self.field.order() - 1;
            self.field.order_primes().iter().all(|&r| !self.pow(n / r).is_one())
        }
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coords == other.coords
    }
}

impl Eq for FFElem {}

impl Hash for FFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p().hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates (degree first when fields differ).
impl Ord for FFElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p(), self.field.degree(), &self.coords).cmp(&(
            other.p(),
            other.field.degree(),
            &other.coords,
        ))
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial notation in the power-basis generator `x`, e.g. `2x+1`.
impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}
