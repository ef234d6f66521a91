//! Finite fields `F_{p^k}` for odd primes `p`.
//!
//! Every field is a power-basis quotient `F_p[x]/(m(x))` where `m` is the
//! lexicographically smallest monic irreducible of degree `k` (coefficients
//! compared constant-first). Fields are interned: the same `(p, k)` always
//! yields the same [`Field`] handle.

mod elem;
mod embed;
mod poly;

pub use elem::FFElem;
pub use embed::{embed, generator, restrict};
pub use poly::{poly_roots, poly_roots_exhaustive, splitting_degree, FFPoly};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{checked_pow, divisors, factorize, is_prime};
use crate::error::{Error, Result};

pub type Field = Arc<FieldDesc>;

pub struct FieldDesc {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    q: u128,
    order_primes: Vec<u128>,
    generator: OnceLock<Vec<u64>>,
    // image of the power-basis generator of F_{p^d}, keyed by d
    embeddings: Mutex<HashMap<usize, Vec<u64>>>,
    // Teichmüller lift cache: coords -> (precision, lifted coords)
    pub(crate) lifts: Mutex<HashMap<Vec<u64>, (u32, Vec<u64>)>>,
}

impl FieldDesc {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Modulus coefficients `c_0..c_{k-1}`; the leading `1` is implicit.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size `p^k`.
    pub fn order(&self) -> u128 {
        self.q
    }

    pub(crate) fn order_primes(&self) -> &[u128] {
        &self.order_primes
    }

    /// Element with the given power-basis coordinates (reduced mod `p`).
    pub fn elem(self: &Arc<Self>, coords: &[u64]) -> Result<FFElem> {
        if coords.len() != self.k {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.k,
                coords.len()
            )));
        }
        Ok(FFElem::from_coords(self.clone(), coords.iter().map(|c| c % self.p).collect()))
    }

    pub fn zero(self: &Arc<Self>) -> FFElem {
        FFElem::from_coords(self.clone(), vec![0; self.k])
    }

    pub fn one(self: &Arc<Self>) -> FFElem {
        self.scalar(1)
    }

    /// Image of the integer `n` under `Z -> F_p -> F_{p^k}`.
    pub fn scalar(self: &Arc<Self>, n: i64) -> FFElem {
        let mut coords = vec![0; self.k];
        coords[0] = n.rem_euclid(self.p as i64) as u64;
        FFElem::from_coords(self.clone(), coords)
    }

    /// The class of `x` in `F_p[x]/(m)` (equal to `-c_0` when `k = 1`).
    pub fn gen(self: &Arc<Self>) -> FFElem {
        if self.k == 1 {
            return self.scalar(-(self.modulus[0] as i64));
        }
        let mut coords = vec![0; self.k];
        coords[1] = 1;
        FFElem::from_coords(self.clone(), coords)
    }

    /// Element number `index` in the lexicographic enumeration (coordinate 0 most significant).
    pub fn from_index(self: &Arc<Self>, mut index: u128) -> FFElem {
        let mut coords = vec![0; self.k];
        for c in coords.iter_mut().rev() {
            *c = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        FFElem::from_coords(self.clone(), coords)
    }

    /// All field elements in lexicographic order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    pub fn same(&self, other: &FieldDesc) -> bool {
        self.p == other.p && self.k == other.k
    }

    pub(crate) fn cached_embedding(&self, d: usize) -> Option<Vec<u64>> {
        self.embeddings.lock().unwrap().get(&d).cloned()
    }

    pub(crate) fn store_embedding(&self, d: usize, image: Vec<u64>) {
        self.embeddings.lock().unwrap().insert(d, image);
    }

    pub(crate) fn generator_cell(&self) -> &OnceLock<Vec<u64>> {
        &self.generator
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldDesc {}

fn registry() -> &'static Mutex<HashMap<(u64, usize), Field>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The field `F_{p^k}` with its canonical modulus.
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    if p == 2 || !is_prime(p) || p >= 1 << 31 {
        return Err(Error::CompositeP(p));
    }
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let q = checked_pow(p, k).ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} too large")))?;
    let modulus = smallest_irreducible(p, k);
    let order_primes = factorize(q - 1).into_iter().map(|(r, _)| r).collect();
    let field = Arc::new(FieldDesc {
        p,
        k,
        modulus,
        q,
        order_primes,
        generator: OnceLock::new(),
        embeddings: Mutex::new(HashMap::new()),
        lifts: Mutex::new(HashMap::new()),
    });
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p, k)).or_insert(field).clone())
}

/// Field for a degree/modulus pair read from a file; the modulus must be the canonical one.
pub fn field_from_modulus(p: u64, k: usize, modulus: &[u64]) -> Result<Field> {
    let f = make_field(p, k)?;
    if f.modulus() != modulus {
        return Err(Error::Parse(format!(
            "modulus {modulus:?} is not the canonical modulus {:?} of F_{p}^{k}",
            f.modulus()
        )));
    }
    Ok(f)
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0];
    }
    let total = checked_pow(p, k).expect("checked by caller");
    for idx in 0..total {
        let mut coeffs = vec![0u64; k];
        let mut rest = idx;
        for c in coeffs.iter_mut().rev() {
            *c = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let mut f = coeffs.clone();
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

/// Dense polynomials over the prime field, used before any extension field exists.
pub(crate) mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let inv_lead = crate::arith::inv_mod(m[dm], p).expect("nonzero leading coefficient");
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] * inv_lead % p;
            for i in 0..=dm {
                a[da - dm + i] = (a[da - dm + i] + p - c * m[i] % p) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^d) mod m`.
    pub fn frobenius_power_of_x(m: &[u64], p: u64, d: usize) -> Vec<u64> {
        let mut acc = rem(&[0, 1], m, p);
        for _ in 0..d {
            let mut result = vec![1];
            let mut base = acc.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    result = mulmod(&result, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                e >>= 1;
            }
            acc = result;
        }
        acc
    }

    /// Rabin's test: `x^(p^k) ≡ x` and `gcd(x^(p^d) − x, f) = 1` for all proper divisors `d` of `k`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        let x = rem(&[0, 1], f, p);
        if frobenius_power_of_x(f, p, k) != x {
            return false;
        }
        super::divisors(k).into_iter().filter(|&d| d < k).all(|d| {
            let h = sub(&frobenius_power_of_x(f, p, d), &x, p);
            gcd(f, &h, p).len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        // no monic factor of degree 1..=deg/2 divides f
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut g: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
                g.push(1);
                if fp::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(make_field(3, 1).unwrap().modulus(), &[0]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0]);
        assert_eq!(make_field(2, 1).unwrap_err(), Error::CompositeP(2));
        assert_eq!(make_field(9, 1).unwrap_err(), Error::CompositeP(9));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn modulus_is_lex_smallest_irreducible() {
        for (p, k) in [(3u64, 2usize), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let field = make_field(p, k).unwrap();
            let mut first = None;
            for idx in 0..p.pow(k as u32) {
                let coeffs: Vec<u64> =
                    (0..k).map(|i| idx / p.pow((k - 1 - i) as u32) % p).collect();
                let mut f = coeffs.clone();
                f.push(1);
                if brute_irreducible(&f, p) {
                    first = Some(coeffs);
                    break;
                }
            }
            assert_eq!(field.modulus(), first.unwrap().as_slice(), "p={p} k={k}");
        }
    }

    #[test]
    fn rabin_rejects_products_of_coprime_degrees() {
        // (x^2+1)(x^3+2x+1) over F_3 has no factor of degree dividing 5
        let a = [1u64, 0, 1];
        let b = [1u64, 2, 0, 1];
        let mut prod = vec![0u64; 6];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % 3;
            }
        }
        assert!(!fp::is_irreducible(&prod, 3));
    }

    #[test]
    fn interning_returns_same_handle() {
        let a = make_field(5, 2).unwrap();
        let b = make_field(5, 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
