use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{embed, Field, FFElem};
use crate::arith::lcm;
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5eed_f1e1d;

/// Dense univariate polynomial over one finite field, constant coefficient first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFPoly {
    field: Field,
    coeffs: Vec<FFElem>,
}

impl FFPoly {
    pub fn new(field: &Field, coeffs: Vec<FFElem>) -> Self {
        let mut p = FFPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> Self {
        FFPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FFElem) -> Self {
        let field = c.field().clone();
        FFPoly::new(&field, vec![c])
    }

    /// `T − c`.
    pub fn linear(c: &FFElem) -> Self {
        let field = c.field().clone();
        FFPoly::new(&field, vec![c.neg(), field.one()])
    }

    pub fn x(field: &Field) -> Self {
        FFPoly::new(field, vec![field.zero(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &FFPoly) -> FFPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add_unchecked(&other.coeff(i))).collect();
        FFPoly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &FFPoly) -> FFPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub_unchecked(&other.coeff(i))).collect();
        FFPoly::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &FFPoly) -> FFPoly {
        if self.is_zero() || other.is_zero() {
            return FFPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_unchecked(&a.mul_unchecked(b));
            }
        }
        FFPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FFElem) -> FFPoly {
        FFPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul_unchecked(c)).collect())
    }

    pub fn monic(&self) -> FFPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn divrem(&self, divisor: &FFPoly) -> Result<(FFPoly, FFPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = divisor.lead().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FFPoly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].mul_unchecked(&inv_lead);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].sub_unchecked(&c.mul_unchecked(d));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((FFPoly::new(&self.field, quot), FFPoly::new(&self.field, rem)))
    }

    pub fn rem(&self, divisor: &FFPoly) -> Result<FFPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &FFPoly) -> FFPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &FFPoly) -> Result<FFPoly> {
        let base = self.rem(m)?;
        let mut acc = FFPoly::constant(self.field.one()).rem(m)?;
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if e.bit(bit) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> FFPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale((i as u64 % self.field.p()) as i64))
            .collect();
        FFPoly::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc.mul_unchecked(x).add_unchecked(c))
    }

    /// `T^(q^t) mod m` where `q` is the size of the coefficient field.
    fn frobenius_of_x(m: &FFPoly, t: usize) -> Result<FFPoly> {
        let q = BigUint::from(m.field.order());
        let mut acc = FFPoly::x(&m.field).rem(m)?;
        for _ in 0..t {
            acc = acc.powmod(&q, m)?;
        }
        Ok(acc)
    }
}

fn to_ambient(coeffs: &[FFElem], ambient: &Field) -> Result<FFPoly> {
    let lifted = coeffs.iter().map(|c| embed(c, ambient)).collect::<Result<Vec<_>>>()?;
    let poly = FFPoly::new(ambient, lifted);
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(poly)
}

/// Splits a monic squarefree product of distinct linear factors into its roots.
fn split_linear(f: &FFPoly, rng: &mut ChaCha8Rng, out: &mut Vec<FFElem>) -> Result<()> {
    match f.degree() {
        Some(0) | None => return Ok(()),
        Some(1) => {
            out.push(f.coeffs[0].neg());
            return Ok(());
        }
        _ => {}
    }
    let field = f.field.clone();
    let half = (BigUint::from(field.order()) - BigUint::one()) >> 1;
    loop {
        let shift = field.from_index(rng.gen_range(0..field.order()));
        let t = FFPoly::new(&field, vec![shift, field.one()]);
        let h = t.powmod(&half, f)?.sub(&FFPoly::constant(field.one()));
        let g = f.gcd(&h);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < f.degree().unwrap() {
            let (cofactor, _) = f.divrem(&g)?;
            split_linear(&g, rng, out)?;
            split_linear(&cofactor.monic(), rng, out)?;
            return Ok(());
        }
    }
}

fn with_multiplicities(f: &FFPoly, distinct: Vec<FFElem>) -> Result<Vec<FFElem>> {
    let mut out = Vec::new();
    for r in distinct {
        let lin = FFPoly::linear(&r);
        let mut g = f.clone();
        loop {
            let (q, rem) = g.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            g = q;
        }
    }
    out.sort();
    Ok(out)
}

/// Roots in `F_{p^K}` of the polynomial with the given coefficients (constant first),
/// repeated by multiplicity and sorted lexicographically.
pub fn poly_roots(coeffs: &[FFElem], ambient: &Field) -> Result<Vec<FFElem>> {
    let f = to_ambient(coeffs, ambient)?.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let x = FFPoly::x(ambient);
    let xq = FFPoly::frobenius_of_x(&f, 1)?;
    let g = f.gcd(&xq.sub(&x));
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut distinct = Vec::new();
    split_linear(&g, &mut rng, &mut distinct)?;
    with_multiplicities(&f, distinct)
}

/// Roots by trying every element of `F_{p^K}`; same output contract as [`poly_roots`].
pub fn poly_roots_exhaustive(coeffs: &[FFElem], ambient: &Field) -> Result<Vec<FFElem>> {
    let f = to_ambient(coeffs, ambient)?;
    let distinct: Vec<FFElem> = ambient.elements().filter(|a| f.eval(a).is_zero()).collect();
    with_multiplicities(&f, distinct)
}

/// Squarefree part of a monic polynomial over a perfect field.
fn radical(f: &FFPoly) -> FFPoly {
    if f.degree().unwrap_or(0) == 0 {
        return f.clone();
    }
    let d = f.derivative();
    if d.is_zero() {
        // f(T) = g(T^p); over a perfect field f = h^p with h the p-th root of g
        let p = f.field.p() as usize;
        let coeffs = f.coeffs.iter().step_by(p).map(|c| c.frobenius_inv(1)).collect();
        return radical(&FFPoly::new(&f.field, coeffs).monic());
    }
    let g = f.gcd(&d);
    let (core, _) = f.divrem(&g).expect("gcd divides f");
    // factors whose multiplicity is divisible by p survive only in g
    let rest = radical(&g);
    let common = core.gcd(&rest);
    let (extra, _) = rest.divrem(&common).expect("gcd divides rest");
    core.mul(&extra).monic()
}

/// Least `D` such that every root of the polynomial lies in `F_{q^D}`, `q` the size of the
/// coefficient field.
pub fn splitting_degree(coeffs: &[FFElem], field: &Field) -> Result<usize> {
    let f = to_ambient(coeffs, field)?.monic();
    let mut f = radical(&f);
    let mut degree = 1u64;
    let mut t = 1;
    while f.degree().unwrap_or(0) > 0 {
        let deg = f.degree().unwrap();
        if 2 * t > deg {
            degree = lcm(degree, deg as u64);
            break;
        }
        let x = FFPoly::x(field);
        let xq = FFPoly::frobenius_of_x(&f, t)?;
        let g = f.gcd(&xq.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            degree = lcm(degree, t as u64);
            f = f.divrem(&g)?.0.monic();
        }
        t += 1;
    }
    Ok(degree as usize)
}

#[cfg(test)]
mod tests {
    use super::super::make_field;
    use super::*;

    fn consts(field: &Field, cs: &[i64]) -> Vec<FFElem> {
        cs.iter().map(|&c| field.scalar(c)).collect()
    }

    #[test]
    fn small_root_sets() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(poly_roots(&consts(&f3, &[1, 1, 1]), &f3).unwrap(), consts(&f3, &[1, 1]));
        assert_eq!(poly_roots(&consts(&f3, &[-2, 1]), &f3).unwrap(), consts(&f3, &[2]));
        let x = f9.gen();
        assert_eq!(poly_roots(&consts(&f3, &[1, 0, 1]), &f9).unwrap(), vec![x.clone(), x.scale(2)]);
        assert!(poly_roots(&consts(&f3, &[1, 0, 1]), &f3).unwrap().is_empty());
        assert_eq!(poly_roots(&consts(&f3, &[0, 0]), &f3).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn equal_degree_splitting_matches_search() {
        let f = make_field(5, 2).unwrap();
        // (T^24 − 1)(T − x)^2 style mixtures: every element is a root of T^25 − T
        let mut coeffs = vec![f.zero(); 26];
        coeffs[1] = f.scalar(-1);
        coeffs[25] = f.one();
        let fast = poly_roots(&coeffs, &f).unwrap();
        let slow = poly_roots_exhaustive(&coeffs, &f).unwrap();
        assert_eq!(fast.len(), 25);
        assert_eq!(fast, slow);
        let sq = FFPoly::new(&f, coeffs.clone()).mul(&FFPoly::linear(&f.gen()));
        assert_eq!(
            poly_roots(sq.coeffs(), &f).unwrap(),
            poly_roots_exhaustive(sq.coeffs(), &f).unwrap()
        );
    }

    #[test]
    fn splitting_degrees() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(splitting_degree(&consts(&f3, &[1, 0, 1]), &f3).unwrap(), 2);
        // T^3 − T − 1 is irreducible over F_3
        assert_eq!(splitting_degree(&consts(&f3, &[-1, -1, 0, 1]), &f3).unwrap(), 3);
        // (T^2+1)(T^3−T−1): lcm(2, 3)
        let a = FFPoly::new(&f3, consts(&f3, &[1, 0, 1]));
        let b = FFPoly::new(&f3, consts(&f3, &[-1, -1, 0, 1]));
        assert_eq!(splitting_degree(a.mul(&b).coeffs(), &f3).unwrap(), 6);
        // T^3 − 1 = (T − 1)^3 has all roots in F_3
        assert_eq!(splitting_degree(&consts(&f3, &[-1, 0, 0, 1]), &f3).unwrap(), 1);
        // (T^2+1)^3 exercises the p-th root branch
        let cube = a.mul(&a).mul(&a);
        assert_eq!(splitting_degree(cube.coeffs(), &f3).unwrap(), 2);
    }
}
