//! The Galois ring `W(F_{p^k})/p^N` with Teichmüller lifts and digit decomposition.

use crate::arith::inv_mod;
use crate::error::{Error, Result};
use crate::ff::{Field, FFElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRElem {
    field: Field,
    n: u32,
    modulus: u64,
    coords: Vec<u64>,
}

/// `p^n`, or an overflow error beyond 63 bits.
pub fn prime_power(p: u64, n: u32) -> Result<u64> {
    p.checked_pow(n)
        .filter(|&m| m < 1 << 63)
        .ok_or(Error::Overflow { p, n })
}

impl GRElem {
    pub fn new(field: &Field, n: u32, coords: &[u64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Galois ring precision must be at least 1".into()));
        }
        if coords.len() != field.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        let modulus = prime_power(field.p(), n)?;
        Ok(GRElem {
            field: field.clone(),
            n,
            modulus,
            coords: coords.iter().map(|c| c % modulus).collect(),
        })
    }

    pub fn zero(field: &Field, n: u32) -> Result<Self> {
        GRElem::new(field, n, &vec![0; field.degree()])
    }

    /// Image of an integer.
    pub fn from_int(field: &Field, n: u32, value: i128) -> Result<Self> {
        let mut g = GRElem::zero(field, n)?;
        g.coords[0] = value.rem_euclid(g.modulus as i128) as u64;
        Ok(g)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &GRElem) -> Result<()> {
        if !self.field.same(&other.field) {
            return Err(Error::FieldMismatch {
                p: self.field.p(),
                a: self.field.degree(),
                b: other.field.degree(),
            });
        }
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "precision mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    fn with_coords(&self, coords: Vec<u64>) -> GRElem {
        GRElem { field: self.field.clone(), n: self.n, modulus: self.modulus, coords }
    }

    pub fn add(&self, other: &GRElem) -> Result<GRElem> {
        self.check(other)?;
        let m = self.modulus as u128;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| ((a as u128 + b as u128) % m) as u64)
                .collect(),
        ))
    }

    pub fn neg(&self) -> GRElem {
        let m = self.modulus;
        self.with_coords(self.coords.iter().map(|&a| (m - a) % m).collect())
    }

    pub fn sub(&self, other: &GRElem) -> Result<GRElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GRElem) -> Result<GRElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &GRElem) -> GRElem {
        let m = self.modulus as u128;
        let k = self.coords.len();
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u128 * b as u128) % m;
            }
        }
        let lifted = self.field.modulus();
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &mi) in lifted.iter().enumerate() {
                let t = d - k + i;
                prod[t] = (prod[t] + (m - c) * mi as u128) % m;
            }
        }
        self.with_coords(prod[..k].iter().map(|&c| c as u64).collect())
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, s: i128) -> GRElem {
        let m = self.modulus as u128;
        let s = s.rem_euclid(m as i128) as u128;
        self.with_coords(self.coords.iter().map(|&a| (a as u128 * s % m) as u64).collect())
    }

    pub fn pow(&self, mut e: u128) -> GRElem {
        let mut acc = GRElem::from_int(&self.field, self.n, 1).expect("valid ring");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduction modulo `p`.
    pub fn residue(&self) -> FFElem {
        self.field.elem(&self.coords).expect("matching degree")
    }

    pub fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    /// Inverse of a unit, by Newton iteration from the residue inverse.
    pub fn inv(&self) -> Result<GRElem> {
        let r = self.residue();
        if r.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut x = GRElem::new(&self.field, self.n, r.inv()?.coords())?;
        let two = GRElem::from_int(&self.field, self.n, 2)?;
        let mut correct = 1;
        while correct < self.n {
            x = x.mul_unchecked(&two.sub(&self.mul_unchecked(&x))?);
            correct *= 2;
        }
        Ok(x)
    }

    /// Exact division by `p`; the result has precision `N − 1`.
    pub fn div_p(&self) -> Result<GRElem> {
        let p = self.field.p();
        if self.coords.iter().any(|c| c % p != 0) {
            return Err(Error::InvalidArgument("element is not divisible by p".into()));
        }
        GRElem::new(&self.field, self.n - 1, &self.coords.iter().map(|c| c / p).collect::<Vec<_>>())
    }

    /// Multiplication by `p^j`, keeping precision.
    pub fn mul_p_power(&self, j: u32) -> GRElem {
        if j >= self.n {
            return GRElem::zero(&self.field, self.n).expect("valid ring");
        }
        self.scale(self.field.p().pow(j) as i128)
    }

    /// Reduction to a lower precision.
    pub fn truncate(&self, n: u32) -> Result<GRElem> {
        if n > self.n {
            return Err(Error::InvalidArgument(format!("cannot raise precision {} to {n}", self.n)));
        }
        GRElem::new(&self.field, n, &self.coords)
    }
}

/// The Teichmüller representative `[r]` modulo `p^N`.
pub fn teichmuller_lift(r: &FFElem, n: u32) -> Result<GRElem> {
    let field = r.field();
    let key = r.coords().to_vec();
    let cached = field.lifts.lock().unwrap().get(&key).cloned();
    let (start_n, start) = match cached {
        Some((cn, coords)) if cn >= n => {
            return GRElem::new(field, n, &coords);
        }
        Some((cn, coords)) => (cn, coords),
        None => (1, key.clone()),
    };
    let q = field.order();
    let mut t = GRElem::new(field, n, &start)?;
    for _ in start_n..n {
        t = t.pow(q);
    }
    assert_eq!(t.pow(q), t, "Teichmüller iteration must reach a fixed point");
    field.lifts.lock().unwrap().insert(key, (n, t.coords.clone()));
    Ok(t)
}

/// Digits `(r_0, …, r_{N−1})` with `a = Σ [r_i] p^i mod p^N`.
pub fn teichmuller_decompose(a: &GRElem) -> Result<Vec<FFElem>> {
    let mut digits = Vec::with_capacity(a.n as usize);
    let mut rest = a.clone();
    loop {
        let r = rest.residue();
        digits.push(r.clone());
        if rest.n == 1 {
            break;
        }
        let lift = teichmuller_lift(&r, rest.n)?;
        rest = rest.sub(&lift)?.div_p()?;
    }
    Ok(digits)
}

/// `Σ [r_i] p^i mod p^N` for the given digits (`N` = number of digits).
pub fn teichmuller_sum(digits: &[FFElem]) -> Result<GRElem> {
    let field = digits
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty digit list".into()))?
        .field()
        .clone();
    let n = digits.len() as u32;
    let mut acc = GRElem::zero(&field, n)?;
    for (i, r) in digits.iter().enumerate() {
        acc = acc.add(&teichmuller_lift(r, n)?.mul_p_power(i as u32))?;
    }
    Ok(acc)
}

/// Inverse of an integer unit modulo `p^n`, as an element of `Z/p^n`.
pub fn inv_mod_prime_power(a: u64, p: u64, n: u32) -> Result<u64> {
    let m = prime_power(p, n)?;
    inv_mod(a % m, m).ok_or(Error::NotAUnit)
}
