//! Truncated Mal'cev-Neumann series `Σ [r_q] p^q + O(p^V)` over `F_{p^K}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{digit_count, fract, lcm, mod_u64, rat_int, split_p_part, Rational};
use crate::error::{Error, Result};
use crate::ff::{embed, make_field, FFElem, Field};
use crate::galois_ring::{prime_power, teichmuller_decompose, teichmuller_lift, GRElem};

/// Valuation of a truncated series: exact when some term survives, otherwise a lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(Rational),
    AtLeast(Rational),
}

impl Valuation {
    /// The exact value, or the bound.
    pub fn value(&self) -> &Rational {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// A series known modulo terms of exponent `>= prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct MNSeries {
    field: Field,
    terms: Vec<(Rational, FFElem)>,
    prec: Rational,
}

impl MNSeries {
    pub fn zero(field: &Field, prec: Rational) -> Self {
        MNSeries { field: field.clone(), terms: Vec::new(), prec }
    }

    pub fn one(field: &Field, prec: Rational) -> Self {
        MNSeries::monomial(&field.one(), Rational::zero(), prec)
    }

    /// `[c] p^exp + O(p^prec)` (empty when `c = 0` or `exp >= prec`).
    pub fn monomial(c: &FFElem, exp: Rational, prec: Rational) -> Self {
        let field = c.field().clone();
        let terms = if c.is_zero() || exp >= prec { Vec::new() } else { vec![(exp, c.clone())] };
        MNSeries { field, terms, prec }
    }

    /// Builds a series from terms that are already canonical (strictly increasing exponents,
    /// nonzero coefficients in `field`, all below `prec`).
    pub fn from_canonical(field: &Field, terms: Vec<(Rational, FFElem)>, prec: Rational) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidArgument("exponents must strictly increase".into()));
            }
        }
        for (e, c) in &terms {
            if c.is_zero() || *e >= prec || !c.field().same(field) {
                return Err(Error::InvalidArgument(format!("term at {e} violates the canonical form")));
            }
        }
        Ok(MNSeries { field: field.clone(), terms, prec })
    }

    /// Canonical form of `Σ [c] p^e` over arbitrary raw terms, with carries.
    pub fn normalize(field: &Field, raw: Vec<(Rational, FFElem)>, prec: Rational) -> Result<Self> {
        let mut classes: BTreeMap<Rational, Vec<(Rational, FFElem)>> = BTreeMap::new();
        for (e, c) in raw {
            if c.is_zero() || e >= prec {
                continue;
            }
            let c = embed(&c, field)?;
            classes.entry(fract(&e)).or_default().push((e, c));
        }
        let mut terms = Vec::new();
        for (_, mut members) in classes {
            members.sort_by(|a, b| a.0.cmp(&b.0));
            let distinct = members.windows(2).all(|w| w[0].0 != w[1].0);
            if distinct {
                terms.extend(members);
                continue;
            }
            let base = members[0].0.clone();
            let n = digit_count(&prec, &base);
            let mut acc = GRElem::zero(field, n)?;
            for (e, c) in &members {
                let j = (e - &base).to_integer().to_u32().expect("small exponent gap");
                if j < n {
                    acc = acc.add(&teichmuller_lift(c, n)?.mul_p_power(j))?;
                }
            }
            push_digits(&mut terms, &base, &teichmuller_decompose(&acc)?);
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(MNSeries { field: field.clone(), terms, prec })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(Rational, FFElem)] {
        &self.terms
    }

    pub fn prec(&self) -> &Rational {
        &self.prec
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Rational> {
        self.terms.iter().map(|(e, _)| e)
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Exact(e.clone()),
            None => Valuation::AtLeast(self.prec.clone()),
        }
    }

    /// The valuation, or the precision for a series with no surviving terms.
    pub fn val_or_prec(&self) -> Rational {
        self.valuation().value().clone()
    }

    /// Leading coefficient `C_v(a)`, if any term survives.
    pub fn lead(&self) -> Option<&FFElem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// `C_s(a)`: the coefficient at exponent `s`.
    pub fn coeff(&self, s: &Rational) -> Result<FFElem> {
        if *s >= self.prec {
            return Err(Error::InsufficientPrecision(format!(
                "coefficient at {s} requested from a series known below {}",
                self.prec
            )));
        }
        Ok(self
            .terms
            .binary_search_by(|(e, _)| e.cmp(s))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero()))
    }

    /// Drops the terms at or above a lower precision.
    pub fn truncate(&self, prec: &Rational) -> MNSeries {
        if *prec >= self.prec {
            return self.clone();
        }
        MNSeries {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(e, _)| e < prec).cloned().collect(),
            prec: prec.clone(),
        }
    }

    /// Re-expresses the coefficients in a larger field.
    pub fn embed_into(&self, field: &Field) -> Result<MNSeries> {
        if field.same(&self.field) {
            return Ok(self.clone());
        }
        if field.p() != self.p() {
            return Err(Error::PrimeMismatch(self.p(), field.p()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), embed(c, field)?)))
            .collect::<Result<_>>()?;
        Ok(MNSeries { field: field.clone(), terms, prec: self.prec.clone() })
    }

    /// Least common field of two series and both series embedded into it.
    pub fn unify(a: &MNSeries, b: &MNSeries) -> Result<(MNSeries, MNSeries)> {
        if a.p() != b.p() {
            return Err(Error::PrimeMismatch(a.p(), b.p()));
        }
        if a.field.same(&b.field) {
            return Ok((a.clone(), b.clone()));
        }
        let k = lcm(a.field.degree() as u64, b.field.degree() as u64) as usize;
        let field = make_field(a.p(), k)?;
        Ok((a.embed_into(&field)?, b.embed_into(&field)?))
    }

    pub fn add(&self, other: &MNSeries) -> Result<MNSeries> {
        let (a, b) = MNSeries::unify(self, other)?;
        let prec = a.prec.clone().min(b.prec.clone());
        let raw = a.terms.into_iter().chain(b.terms).collect();
        MNSeries::normalize(&a.field, raw, prec)
    }

    pub fn neg(&self) -> MNSeries {
        MNSeries {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, other: &MNSeries) -> Result<MNSeries> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MNSeries) -> Result<MNSeries> {
        let (a, b) = MNSeries::unify(self, other)?;
        let prec = (&a.prec + b.val_or_prec()).min(&b.prec + a.val_or_prec());
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea + eb;
                if e < prec {
                    raw.push((e, ca.mul_unchecked(cb)));
                }
            }
        }
        MNSeries::normalize(&a.field, raw, prec)
    }

    /// Exact product with the monomial `[c] p^q`.
    pub fn mul_monomial(&self, c: &FFElem, q: &Rational) -> Result<MNSeries> {
        let k = lcm(self.field.degree() as u64, c.field().degree() as u64) as usize;
        let a = self.embed_into(&make_field(self.p(), k)?)?;
        let c = embed(c, &a.field)?;
        if c.is_zero() {
            return Ok(MNSeries::zero(&a.field, &a.prec + q));
        }
        Ok(MNSeries {
            terms: a.terms.iter().map(|(e, x)| (e + q, x.mul_unchecked(&c))).collect(),
            prec: &a.prec + q,
            field: a.field,
        })
    }

    /// Exact product with an integer.
    pub fn mul_integer(&self, m: &BigInt) -> Result<MNSeries> {
        if m.is_zero() {
            return Ok(MNSeries::zero(&self.field, self.prec.clone()));
        }
        let (v, u) = split_p_part(m, self.p());
        let shift = rat_int(v);
        let mut classes: BTreeMap<Rational, Vec<&(Rational, FFElem)>> = BTreeMap::new();
        for t in &self.terms {
            classes.entry(fract(&t.0)).or_default().push(t);
        }
        let mut terms = Vec::new();
        for (_, members) in classes {
            let base = members[0].0.clone();
            let n = digit_count(&self.prec, &base);
            let modulus = prime_power(self.p(), n)?;
            let mut acc = GRElem::zero(&self.field, n)?;
            for (e, c) in members {
                let j = (e - &base).to_integer().to_u32().expect("small exponent gap");
                acc = acc.add(&teichmuller_lift(c, n)?.mul_p_power(j))?;
            }
            let acc = acc.scale(mod_u64(&u, modulus) as i128);
            push_digits(&mut terms, &(&base + &shift), &teichmuller_decompose(&acc)?);
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(MNSeries { field: self.field.clone(), terms, prec: &self.prec + shift })
    }

    /// Multiplicative inverse, known to precision `V − 2v`.
    pub fn invert(&self) -> Result<MNSeries> {
        let (v, lead) = match self.terms.first() {
            Some((v, c)) => (v.clone(), c.clone()),
            None => return Err(Error::ZeroDivisor),
        };
        let inv_lead = lead.inv()?;
        let minus_v = -v.clone();
        // z = [lead^{-1}] p^{-v}; z·a = 1 − u with v(u) > 0
        let za = self.mul_monomial(&inv_lead, &minus_v)?;
        let r = za.prec.clone();
        let u = MNSeries::one(&self.field, r.clone()).sub(&za)?;
        let mut s = MNSeries::one(&self.field, r.clone());
        if let Valuation::Exact(vu) = u.valuation() {
            let steps = ceil_div(&r, &vu);
            for _ in 0..steps {
                s = MNSeries::one(&self.field, r.clone()).add(&u.mul(&s)?)?;
            }
        }
        s.mul_monomial(&inv_lead, &minus_v)
    }

    /// `a^n` for `n >= 0` by repeated squaring, starting from an exact one.
    pub fn pow(&self, n: u64) -> Result<MNSeries> {
        let mut acc: Option<MNSeries> = None;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base)?,
                    None => base.clone(),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.unwrap_or_else(|| MNSeries::one(&self.field, far_precision(&self.prec))))
    }

    /// Coefficientwise Frobenius `Σ [r^p] p^q`.
    pub fn frobenius(&self) -> MNSeries {
        self.galois_action(1)
    }

    /// Coefficientwise `r ↦ r^(p^t)`.
    pub fn galois_action(&self, t: usize) -> MNSeries {
        self.map_coeffs(|c| c.frobenius(t))
    }

    /// Coefficientwise `r ↦ r^(p^(-t))`.
    pub fn galois_action_inv(&self, t: usize) -> MNSeries {
        self.map_coeffs(|c| c.frobenius_inv(t))
    }

    fn map_coeffs(&self, f: impl Fn(&FFElem) -> FFElem) -> MNSeries {
        MNSeries {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
            prec: self.prec.clone(),
        }
    }

    /// `λ_ξ`: multiplies each coefficient `r_q` by `ξ(q mod 1)`.
    pub fn apply_character(&self, xi: &Character) -> Result<MNSeries> {
        let Some(w) = xi.generator_value()? else {
            if let Some((e, _)) = self.terms.iter().find(|(e, _)| !e.is_integer()) {
                return Err(Error::UnassignedClass(e.to_string()));
            }
            return Ok(self.clone());
        };
        let k = lcm(self.field.degree() as u64, w.field().degree() as u64) as usize;
        let field = make_field(self.p(), k)?;
        let a = self.embed_into(&field)?;
        let w = embed(&w, &field)?;
        let mut terms = Vec::with_capacity(a.terms.len());
        for (e, c) in &a.terms {
            let t = xi.index_of(e)?;
            terms.push((e.clone(), c.mul_unchecked(&w.pow(t as u128))));
        }
        Ok(MNSeries { field, terms, prec: a.prec })
    }

    /// Canonical expansion of `num/den`.
    pub fn from_rational(num: &BigInt, den: &BigInt, field: &Field, prec: Rational) -> Result<MNSeries> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(MNSeries::zero(field, prec));
        }
        let p = field.p();
        let (vn, un) = split_p_part(num, p);
        let (vd, ud) = split_p_part(den, p);
        let v = rat_int(vn - vd);
        let n = digit_count(&prec, &v);
        if n == 0 {
            return Ok(MNSeries::zero(field, prec));
        }
        let m = prime_power(p, n)?;
        let un = mod_u64(&un, m);
        let ud = crate::arith::inv_mod(mod_u64(&ud, m), m).ok_or(Error::NotAUnit)?;
        let unit = GRElem::from_int(field, n, (un as u128 * ud as u128 % m as u128) as i128)?;
        let mut terms = Vec::new();
        push_digits(&mut terms, &v, &teichmuller_decompose(&unit)?);
        Ok(MNSeries { field: field.clone(), terms, prec })
    }

    pub fn from_integer(n: i64, field: &Field, prec: Rational) -> Result<MNSeries> {
        MNSeries::from_rational(&BigInt::from(n), &BigInt::one(), field, prec)
    }

    /// Least field degree containing every coefficient.
    pub fn coefficient_degree(&self) -> usize {
        self.terms
            .iter()
            .fold(1u64, |acc, (_, c)| lcm(acc, c.subfield_degree() as u64)) as usize
    }

    /// Replaces the precision bound, dropping terms at or above it. Raising the bound
    /// asserts the extra digits are known to vanish.
    pub fn with_exact_prec(&self, prec: Rational) -> MNSeries {
        let mut s = self.truncate(&prec);
        s.prec = prec;
        s
    }
}

fn push_digits(terms: &mut Vec<(Rational, FFElem)>, base: &Rational, digits: &[FFElem]) {
    for (i, d) in digits.iter().enumerate() {
        if !d.is_zero() {
            terms.push((base + rat_int(i as i64), d.clone()));
        }
    }
}

/// `⌈a / b⌉` for positive rationals.
fn ceil_div(a: &Rational, b: &Rational) -> u64 {
    let q = a / b;
    let c = q.numer().div_ceil(q.denom());
    if c.is_negative() {
        0
    } else {
        c.to_u64().expect("iteration count fits")
    }
}

/// A precision far enough above `prec` to act as exact in products with that series.
fn far_precision(prec: &Rational) -> Rational {
    prec.abs() * rat_int(2) + rat_int(1)
}

impl fmt::Debug for MNSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[c]p^(e) + … + O(p^(V))`.
impl fmt::Display for MNSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            write!(f, "[{c}]p^({e}) + ")?;
        }
        write!(f, "O(p^({}))", self.prec)
    }
}

/// A character `ξ: Q/Z → F̄_p^*` given on finitely many classes.
#[derive(Clone, Debug)]
pub struct Character {
    assignments: Vec<(Rational, FFElem)>,
}

impl Character {
    pub fn new(assignments: Vec<(Rational, FFElem)>) -> Self {
        Character {
            assignments: assignments.into_iter().map(|(q, y)| (fract(&q), y)).collect(),
        }
    }

    pub fn assignments(&self) -> &[(Rational, FFElem)] {
        &self.assignments
    }

    /// `N` with the generated subgroup `⟨1/N⟩`, and each key as `a_i / N`.
    fn lattice(&self) -> (BigInt, Vec<BigInt>) {
        let mut denom = BigInt::one();
        for (q, _) in &self.assignments {
            denom = denom.lcm(q.denom());
        }
        let nums: Vec<BigInt> =
            self.assignments.iter().map(|(q, _)| (q * Rational::from_integer(denom.clone())).to_integer()).collect();
        let mut g = denom.clone();
        for a in &nums {
            g = g.gcd(a);
        }
        let order = &denom / &g;
        (order, nums.into_iter().map(|a| a / &g).collect())
    }

    /// The value of `ξ` on the generator `1/M` of the domain, after checking consistency.
    fn generator_value(&self) -> Result<Option<FFElem>> {
        let (order, coeffs) = self.lattice();
        let Some((_, first)) = self.assignments.first() else {
            return Ok(None);
        };
        let p = first.p();
        let mut k = 1u64;
        for (_, y) in &self.assignments {
            if y.p() != p {
                return Err(Error::PrimeMismatch(p, y.p()));
            }
            if y.is_zero() {
                return Err(Error::InconsistentCharacter("ξ takes the value 0".into()));
            }
            k = lcm(k, y.field().degree() as u64);
        }
        let field = make_field(p, k as usize)?;
        let ys: Vec<FFElem> = self.assignments.iter().map(|(_, y)| embed(y, &field)).collect::<Result<_>>()?;
        // Bezout: Σ c_i a_i ≡ 1 (mod M)
        let mut g = order.clone();
        let mut combo: Vec<BigInt> = vec![BigInt::zero(); coeffs.len()];
        for (i, a) in coeffs.iter().enumerate() {
            let e = g.extended_gcd(a);
            for c in combo.iter_mut() {
                *c = &*c * &e.x;
            }
            combo[i] = e.y;
            g = e.gcd;
        }
        let mut w = field.one();
        for (c, y) in combo.iter().zip(&ys) {
            w = w.mul_unchecked(&y.pow_signed(c)?);
        }
        let ord = order.to_u128().ok_or_else(|| Error::InvalidArgument("character domain too large".into()))?;
        if !w.pow(ord).is_one() {
            return Err(Error::InconsistentCharacter(format!(
                "the values do not have order dividing {order}"
            )));
        }
        for ((q, _), (a, y)) in self.assignments.iter().zip(coeffs.iter().zip(&ys)) {
            let a = a.mod_floor(&order).to_u128().unwrap();
            if w.pow(a) != *y {
                return Err(Error::InconsistentCharacter(format!("value at {q}")));
            }
        }
        Ok(Some(w))
    }

    /// `t` with `q ≡ t / M (mod 1)`, or `UnassignedClass`.
    fn index_of(&self, q: &Rational) -> Result<u64> {
        let (order, _) = self.lattice();
        let scaled = fract(q) * Rational::from_integer(order.clone());
        if !scaled.is_integer() {
            return Err(Error::UnassignedClass(q.to_string()));
        }
        Ok(scaled.to_integer().to_u64().expect("index below the domain order"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn f(p: u64, k: usize) -> Field {
        make_field(p, k).unwrap()
    }

    fn digits(s: &MNSeries) -> Vec<(Rational, Vec<u64>)> {
        s.terms().iter().map(|(e, c)| (e.clone(), c.coords().to_vec())).collect()
    }

    #[test]
    fn normalize_carries() {
        let f3 = f(3, 1);
        let one = f3.one();
        let s = MNSeries::normalize(&f3, vec![(rat(0, 1), one.clone()), (rat(0, 1), one.clone())], rat(3, 1)).unwrap();
        assert_eq!(digits(&s), vec![(rat(0, 1), vec![2]), (rat(1, 1), vec![1])]);
        let s = MNSeries::normalize(&f3, vec![(rat(1, 2), one.clone()), (rat(1, 2), f3.scalar(2))], rat(3, 1)).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.prec(), &rat(3, 1));
        let s = MNSeries::normalize(&f3, vec![(rat(0, 1), one)], rat(2, 1)).unwrap();
        assert_eq!(digits(&s), vec![(rat(0, 1), vec![1])]);
    }

    #[test]
    fn ring_operations() {
        let f3 = f(3, 1);
        let prec = rat(3, 1);
        let one = MNSeries::one(&f3, prec.clone());
        assert_eq!(digits(&one.add(&one).unwrap()), vec![(rat(0, 1), vec![2]), (rat(1, 1), vec![1])]);
        let h = MNSeries::monomial(&f3.one(), rat(1, 2), prec.clone());
        assert_eq!(digits(&h.mul(&h).unwrap()), vec![(rat(1, 1), vec![1])]);
        let four = MNSeries::from_integer(4, &f3, prec.clone()).unwrap();
        let seven = MNSeries::from_integer(7, &f3, prec.clone()).unwrap();
        let prod = four.mul(&seven).unwrap();
        assert_eq!(digits(&prod), vec![(rat(0, 1), vec![1])]);
        assert_eq!(prod.prec(), &rat(3, 1));
        let z = seven.add(&seven.neg()).unwrap();
        assert_eq!(z.valuation(), Valuation::AtLeast(rat(3, 1)));
    }

    #[test]
    fn inverses() {
        let f3 = f(3, 1);
        let a = MNSeries::monomial(&f3.one(), rat(1, 2), rat(5, 1));
        let inv = a.invert().unwrap();
        assert_eq!(digits(&inv), vec![(rat(-1, 2), vec![1])]);
        let four = MNSeries::from_integer(4, &f3, rat(4, 1)).unwrap();
        let inv = four.invert().unwrap();
        let expect: Vec<_> = [1, 2, 1, 2].iter().enumerate().map(|(i, &d)| (rat(i as i64, 1), vec![d])).collect();
        assert_eq!(digits(&inv), expect);
        assert_eq!(inv, MNSeries::from_rational(&1.into(), &4.into(), &f3, rat(4, 1)).unwrap());
        assert_eq!(MNSeries::zero(&f3, rat(1, 1)).invert().unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn rationals_and_coefficients() {
        let f3 = f(3, 1);
        let two = MNSeries::from_integer(2, &f3, rat(3, 1)).unwrap();
        assert_eq!(digits(&two), vec![(rat(0, 1), vec![2]), (rat(1, 1), vec![1])]);
        for p in [3u64, 5, 7] {
            let m1 = MNSeries::from_integer(-1, &f(p, 1), rat(6, 1)).unwrap();
            assert_eq!(digits(&m1), vec![(rat(0, 1), vec![p - 1])]);
        }
        let f9 = f(3, 2);
        let a = MNSeries::monomial(&f9.gen(), rat(1, 2), rat(2, 1));
        assert_eq!(a.coeff(&rat(1, 2)).unwrap(), f9.gen());
        assert!(a.coeff(&rat(0, 1)).unwrap().is_zero());
        assert!(matches!(a.coeff(&rat(2, 1)), Err(Error::InsufficientPrecision(_))));
        assert_eq!(a.frobenius().lead().unwrap(), &f9.gen().scale(2));
        assert_eq!(a.galois_action(2), a);
        assert_eq!(a.galois_action(0), a);
    }

    #[test]
    fn characters() {
        let f3 = f(3, 1);
        let a = MNSeries::monomial(&f3.one(), rat(1, 2), rat(3, 1));
        let xi = Character::new(vec![(rat(1, 2), f3.scalar(-1))]);
        assert_eq!(a.apply_character(&xi).unwrap().lead().unwrap(), &f3.scalar(2));
        let trivial = Character::new(vec![(rat(1, 2), f3.one())]);
        assert_eq!(a.apply_character(&trivial).unwrap(), a);
        let b = MNSeries::monomial(&f3.one(), rat(1, 3), rat(3, 1));
        assert!(matches!(b.apply_character(&xi), Err(Error::UnassignedClass(_))));
        let bad = Character::new(vec![(rat(1, 2), f3.one()), (rat(1, 4), f(3, 2).gen())]);
        let c = MNSeries::monomial(&f3.one(), rat(1, 4), rat(3, 1));
        // ξ(1/4)^2 = x^2 = −1 ≠ ξ(1/2) = 1
        assert!(matches!(c.apply_character(&bad), Err(Error::InconsistentCharacter(_))));
        let good = Character::new(vec![(rat(1, 2), f3.scalar(-1)), (rat(1, 4), f(3, 2).gen())]);
        let d = c.apply_character(&good).unwrap();
        assert_eq!(d.lead().unwrap(), &f(3, 2).gen());
        let int = MNSeries::from_integer(5, &f3, rat(3, 1)).unwrap();
        assert_eq!(int.apply_character(&good).unwrap().embed_into(&f(3, 2)).unwrap(), int.embed_into(&f(3, 2)).unwrap());
    }
}
