//! Expansions of roots of unity: the closed form for `ζ_p`, Newton-based `ζ_{p^n}`,
//! roots of unity of order prime to `p`, and the primitive `p²`-th root census.

use num_bigint::BigInt;

use crate::arith::{gcd, inv_mod, rat, rat_int, Rational};
use crate::error::{Error, Result};
use crate::ff::{embed, make_field, FFElem};
use crate::invariants::canonical_root_of_unity;
use crate::newton::{newton_all_roots, newton_root, MNPoly, NewtonBranchResult};
use crate::series::MNSeries;

/// Which root a Newton-based expansion follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchPolicy {
    /// The least residue root at every step.
    Minimal,
    /// The `i`-th branch of the full enumeration, in branch order.
    Branch(usize),
}

/// `ζ̃^(2j+1)` for the canonical element `ζ̃` of order `2(p−1)` in `F_{p²}`.
pub fn seed_root(p: u64, choice: usize) -> Result<FFElem> {
    if choice as u64 >= p - 1 {
        return Err(Error::InvalidArgument(format!("choice {choice} is out of range 0..{}", p - 1)));
    }
    let base = canonical_root_of_unity(p, 2 * (p - 1))?;
    let f = make_field(p, 2)?;
    Ok(embed(&base, &f)?.pow(2 * choice as u128 + 1))
}

fn inv_factorial(k: u64, p: u64) -> u64 {
    let f = (1..=k).fold(1u64, |acc, i| acc * i % p);
    inv_mod(f, p).expect("k < p")
}

/// `Σ_{k<p} [ζ^k / k!] p^(k/(p−1))`, valid below exponent `p/(p−1)`.
pub fn zeta_p_closed_form(p: u64, choice: usize, prec: &Rational) -> Result<MNSeries> {
    let limit = rat(p as i64, p as i64 - 1);
    if *prec > limit {
        return Err(Error::PrecisionBeyondFormula(format!("{prec} > {limit}")));
    }
    let zeta = seed_root(p, choice)?;
    let field = zeta.field().clone();
    let mut terms = Vec::new();
    for k in 0..p {
        let exp = rat(k as i64, p as i64 - 1);
        if exp >= *prec {
            break;
        }
        let c = zeta.pow(k as u128).scale(inv_factorial(k, p) as i64);
        terms.push((exp, c));
    }
    MNSeries::from_canonical(&field, terms, prec.clone())
}

/// `Φ_{p^n}(T) = Σ_{i<p} T^(i p^(n−1))` with integer coefficients at precision `prec`.
pub fn cyclotomic_poly(p: u64, n: u32, prec: &Rational) -> Result<MNPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let step = p.pow(n - 1) as usize;
    let mut coeffs = vec![0i64; step * (p as usize - 1) + 1];
    for i in 0..p as usize {
        coeffs[i * step] = 1;
    }
    MNPoly::from_integers(&coeffs, p, prec.clone())
}

fn follow(poly: &MNPoly, target: &Rational, max_steps: usize, policy: BranchPolicy) -> Result<NewtonBranchResult> {
    match policy {
        BranchPolicy::Minimal => newton_root(poly, target, max_steps),
        BranchPolicy::Branch(i) => {
            let all = newton_all_roots(poly, target, max_steps, 10_000)?;
            let n = all.len();
            all.into_iter()
                .nth(i)
                .ok_or_else(|| Error::InvalidArgument(format!("branch {i} out of range 0..{n}")))
        }
    }
}

/// A primitive `p^n`-th root of unity to precision `prec`: Newton on `Φ_p` for `n = 1`, and
/// on `T^p − ζ_{p^(n−1)}` for `n ≥ 2`. The policy applies to the outermost polynomial.
pub fn zeta_prime_power(
    p: u64,
    n: u32,
    prec: &Rational,
    policy: BranchPolicy,
    max_steps: usize,
) -> Result<NewtonBranchResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n == 1 {
        let poly = cyclotomic_poly(p, 1, &(prec + rat_int(p as i64)))?;
        return follow(&poly, prec, max_steps, policy);
    }
    // the p roots of T^p − α move by v(δ) − 1 when α moves by δ
    let inner_prec = prec + rat_int(2);
    let inner = zeta_prime_power(p, n - 1, &inner_prec, BranchPolicy::Minimal, max_steps)?;
    let alpha = inner.root;
    let field = alpha.field().clone();
    let exact = alpha.prec() + rat_int(p as i64);
    let mut coeffs = vec![MNSeries::zero(&field, exact.clone()); p as usize + 1];
    coeffs[0] = alpha.neg();
    coeffs[p as usize] = MNSeries::one(&field, exact);
    let poly = MNPoly::new(coeffs)?;
    follow(&poly, prec, max_steps, policy)
}

/// The explicitly known digits of a `p^n`-th root of unity (`n ≥ 2`) seeded by choice `j`,
/// restricted to exponents below `prec`: the leading sum and the first tail terms
/// `[(−1)^n ζ] p^(1/(p^(n−2)(p−1)) − 1/p^l)` for `l = n..n+2`.
pub fn zeta_pn_partial_terms(p: u64, n: u32, choice: usize, prec: &Rational) -> Result<Vec<(Rational, FFElem)>> {
    if n < 2 {
        return Err(Error::InvalidArgument("partial terms are listed for n >= 2".into()));
    }
    let zeta = seed_root(p, choice)?;
    let pn1 = BigInt::from(p).pow(n - 1) * BigInt::from(p - 1);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut out = Vec::new();
    for k in 0..p {
        let exp = Rational::new(BigInt::from(k), pn1.clone());
        let s = if (n as u64 * k) % 2 == 0 { 1 } else { -1 };
        out.push((exp, zeta.pow(k as u128).scale(s * inv_factorial(k, p) as i64)));
    }
    let head = Rational::new(BigInt::from(1), BigInt::from(p).pow(n - 2) * BigInt::from(p - 1));
    for l in n..n + 3 {
        let exp = &head - Rational::new(BigInt::from(1), BigInt::from(p).pow(l));
        out.push((exp, zeta.scale(sign)));
    }
    out.retain(|(e, c)| e < prec && !c.is_zero());
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

/// `[ζ_r] p^0` with `ζ_r` the canonical element of order `r`.
pub fn zeta_coprime(r: u64, p: u64, prec: &Rational) -> Result<MNSeries> {
    if r == 0 || gcd(r, p) != 1 {
        return Err(Error::InvalidArgument(format!("order {r} is not prime to {p}")));
    }
    let z = canonical_root_of_unity(p, r)?;
    Ok(MNSeries::monomial(&z, Rational::from_integer(0.into()), prec.clone()))
}

/// A branch of `Φ_{p²}` with its coefficients at `1/(p(p−1))` and `1/(p−1)`, when known.
#[derive(Clone, Debug)]
pub struct ClassifiedRoot {
    pub branch: NewtonBranchResult,
    pub first: Option<FFElem>,
    pub accumulation: Option<FFElem>,
}

/// All branches of Newton on `Φ_{p²}`, each classified by its two distinguished coefficients.
pub fn enumerate_primitive_p2_roots(
    p: u64,
    target: &Rational,
    max_steps: usize,
    node_budget: usize,
) -> Result<Vec<ClassifiedRoot>> {
    let poly = cyclotomic_poly(p, 2, &(target + rat_int(p as i64)))?;
    let branches = newton_all_roots(&poly, target, max_steps, node_budget)?;
    let first = rat(1, (p * (p - 1)) as i64);
    let accum = rat(1, p as i64 - 1);
    Ok(branches
        .into_iter()
        .map(|b| ClassifiedRoot {
            first: b.root.coeff(&first).ok(),
            accumulation: b.root.coeff(&accum).ok(),
            branch: b,
        })
        .collect())
}

/// Agreement between the closed form for one choice and the best-matching Newton branch.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub choice: usize,
    pub branch: Option<usize>,
    pub agreeing: Vec<Rational>,
    pub disagreeing: Vec<Rational>,
}

impl CompareReport {
    pub fn all_agree(&self) -> bool {
        self.branch.is_some() && self.disagreeing.is_empty()
    }
}

/// Compares every closed-form choice of `ζ_p` against the Newton branches of `Φ_p`.
pub fn compare_closed_form(p: u64, prec: &Rational, max_steps: usize) -> Result<Vec<CompareReport>> {
    let poly = cyclotomic_poly(p, 1, &(prec + rat_int(p as i64)))?;
    let branches = newton_all_roots(&poly, prec, max_steps, 10_000)?;
    let mut reports = Vec::new();
    for choice in 0..(p - 1) as usize {
        let closed = zeta_p_closed_form(p, choice, prec)?;
        let mut best: Option<CompareReport> = None;
        for (i, b) in branches.iter().enumerate() {
            let (c, r) = MNSeries::unify(&closed, &b.root)?;
            let mut report = CompareReport { choice, branch: Some(i), agreeing: Vec::new(), disagreeing: Vec::new() };
            for (e, coeff) in c.terms() {
                match r.coeff(e) {
                    Ok(x) if x == *coeff => report.agreeing.push(e.clone()),
                    _ => report.disagreeing.push(e.clone()),
                }
            }
            // terms of the branch the closed form does not predict
            for (e, _) in r.terms() {
                if e < c.prec() && c.coeff(e).map_or(true, |x| x.is_zero()) {
                    report.disagreeing.push(e.clone());
                }
            }
            if best.as_ref().map_or(true, |b| report.disagreeing.len() < b.disagreeing.len()) {
                best = Some(report);
            }
        }
        reports.push(best.unwrap_or(CompareReport {
            choice,
            branch: None,
            agreeing: Vec::new(),
            disagreeing: closed.support().cloned().collect(),
        }));
    }
    Ok(reports)
}
