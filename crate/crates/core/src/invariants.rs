//! Denominator and residue-field invariants of truncated series, and the tame criterion.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd, lcm, mult_order, p_free_denominator, rat_int, Rational};
use crate::error::{Error, Result};
use crate::ff::{embed, make_field, FFElem, Field};
use crate::newton::{newton_all_roots, MNPoly};
use crate::series::MNSeries;

/// Least `e` with every observed exponent in `(1/e) Z[1/p]`.
pub fn tame_index_estimate(a: &MNSeries) -> u64 {
    let e = a.support().fold(1u64, |acc, q| {
        let w = p_free_denominator(q, a.p()).to_u64().expect("denominator fits in u64");
        lcm(acc, w)
    });
    debug_assert_eq!(gcd(e, a.p()), 1);
    e
}

/// Least `f` with every observed coefficient in `F_{p^f}`.
pub fn inertia_index_estimate(a: &MNSeries) -> u64 {
    a.coefficient_degree() as u64
}

/// Both estimates for one truncation; always lower bounds for the exact element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub tame_index: u64,
    pub inertia_index: u64,
    pub precision_used: Rational,
    pub lower_bound_only: bool,
}

pub fn invariant_report(a: &MNSeries) -> InvariantReport {
    InvariantReport {
        tame_index: tame_index_estimate(a),
        inertia_index: inertia_index_estimate(a),
        precision_used: a.prec().clone(),
        lower_bound_only: true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameVerdict {
    /// Every observed exponent times `e` is an integer.
    pub tame: bool,
    pub e: u64,
    /// `ord_{lcm(e, p^f − 1)} p` for the supplied `f`, when tame.
    pub c: Option<u64>,
    /// The inertia estimate divides `c`.
    pub inertia_divides_c: Option<bool>,
    /// The supplied `f` divides the inertia estimate.
    pub known_f_divides_inertia: Option<bool>,
}

impl TameVerdict {
    /// Both divisibility conditions, when they were evaluated.
    pub fn divisibility_ok(&self) -> Option<bool> {
        Some(self.inertia_divides_c? && self.known_f_divides_inertia?)
    }
}

pub fn tame_criterion(a: &MNSeries, known_f: Option<u64>) -> Result<TameVerdict> {
    let p = a.p();
    let e = tame_index_estimate(a);
    let tame = a.support().all(|q| (q * rat_int(e as i64)).is_integer());
    let mut verdict = TameVerdict { tame, e, c: None, inertia_divides_c: None, known_f_divides_inertia: None };
    if let (true, Some(f)) = (tame, known_f) {
        if f == 0 {
            return Err(Error::InvalidArgument("known f must be positive".into()));
        }
        let q_minus_1 = p
            .checked_pow(f as u32)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{f} overflows")))?
            - 1;
        let c = mult_order(p, lcm(e, q_minus_1));
        let inertia = inertia_index_estimate(a);
        verdict.c = Some(c);
        verdict.inertia_divides_c = Some(c % inertia == 0);
        verdict.known_f_divides_inertia = Some(inertia % f == 0);
    }
    Ok(verdict)
}

/// The lexicographically least element of multiplicative order `e` in `F_{p^(ord_e p)}`.
pub fn canonical_root_of_unity(p: u64, e: u64) -> Result<FFElem> {
    if e == 0 || gcd(e, p) != 1 {
        return Err(Error::InvalidArgument(format!("order {e} is not prime to {p}")));
    }
    let field = make_field(p, mult_order(p, e) as usize)?;
    let found = field
        .elements()
        .skip(1)
        .find(|z| z.multiplicative_order().ok() == Some(e as u128));
    found.ok_or_else(|| Error::InvalidArgument(format!("no element of order {e}")))
}

/// `Σ_k Σ_i [c_i^(k) ζ_e^k] p^(i + k/e)` with digits `c` drawn from `F_{p^f}`.
pub fn random_tame_element(p: u64, e: u64, f: usize, prec: &Rational, seed: u64) -> Result<MNSeries> {
    if f == 0 {
        return Err(Error::ZeroDegree);
    }
    let zeta = canonical_root_of_unity(p, e)?;
    let k = lcm(f as u64, zeta.field().degree() as u64) as usize;
    let field: Field = make_field(p, k)?;
    let digits_field = make_field(p, f)?;
    let zeta = embed(&zeta, &field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    let mut i = 0i64;
    loop {
        let mut any = false;
        for j in 0..e {
            let exp = rat_int(i) + Rational::new(j.into(), e.into());
            if exp >= *prec {
                continue;
            }
            any = true;
            let c = digits_field.from_index(rng.gen_range(0..digits_field.order()));
            let c = embed(&c, &field)?.mul(&zeta.pow(j as u128))?;
            if !c.is_zero() {
                terms.push((exp, c));
            }
        }
        if !any {
            break;
        }
        i += 1;
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    MNSeries::from_canonical(&field, terms, prec.clone())
}

/// `(tame index, inertia index)` of every root branch, in branch order.
pub fn invariant_profile(
    poly: &MNPoly,
    target: &Rational,
    max_steps: usize,
    node_budget: usize,
) -> Result<Vec<(u64, u64)>> {
    let roots = newton_all_roots(poly, target, max_steps, node_budget)?;
    let mut out = Vec::new();
    for r in roots {
        let inv = (tame_index_estimate(&r.root), inertia_index_estimate(&r.root));
        out.extend(std::iter::repeat(inv).take(r.multiplicity));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn support_series(p: u64, exps: &[(i64, i64)]) -> MNSeries {
        let f = make_field(p, 1).unwrap();
        let terms = exps.iter().map(|&(n, d)| (rat(n, d), f.one())).collect();
        MNSeries::from_canonical(&f, terms, rat(10, 1)).unwrap()
    }

    #[test]
    fn tame_indices() {
        assert_eq!(tame_index_estimate(&support_series(3, &[(1, 3)])), 1);
        assert_eq!(tame_index_estimate(&support_series(3, &[(0, 1), (1, 2), (1, 1)])), 2);
        let a = support_series(7, &[(1, 10), (1, 6)]);
        let brute = (1..=30u64)
            .find(|&e| a.support().all(|q| (q * rat_int(e as i64)).is_integer()))
            .unwrap();
        assert_eq!(tame_index_estimate(&a), brute);
        assert_eq!(brute, 30);
        assert_eq!(tame_index_estimate(&MNSeries::zero(&make_field(3, 1).unwrap(), rat(1, 1))), 1);
    }

    #[test]
    fn inertia_indices() {
        let f6 = make_field(3, 6).unwrap();
        let x2 = embed(&make_field(3, 2).unwrap().gen(), &f6).unwrap();
        let x3 = embed(&make_field(3, 3).unwrap().gen(), &f6).unwrap();
        let a = MNSeries::from_canonical(&f6, vec![(rat(0, 1), x2), (rat(1, 1), x3)], rat(2, 1)).unwrap();
        assert_eq!(inertia_index_estimate(&a), 6);
        assert_eq!(inertia_index_estimate(&support_series(3, &[(0, 1)])), 1);
    }

    #[test]
    fn tame_verdicts() {
        let v = tame_criterion(&support_series(3, &[(1, 3)]), None).unwrap();
        assert!(!v.tame);
        assert_eq!(v.e, 1);
        let f9 = make_field(3, 2).unwrap();
        let a = MNSeries::from_canonical(
            &f9,
            vec![(rat(1, 2), f9.one()), (rat(3, 2), f9.gen())],
            rat(2, 1),
        )
        .unwrap();
        let v = tame_criterion(&a, Some(2)).unwrap();
        assert!(v.tame);
        assert_eq!((v.e, v.c), (2, Some(2)));
        assert_eq!(v.divisibility_ok(), Some(true));
    }

    #[test]
    fn tame_elements() {
        let a = random_tame_element(3, 2, 1, &rat(3, 1), 7).unwrap();
        assert!(a.support().all(|q| (q * rat_int(2)).is_integer()));
        assert_eq!(a.field().degree(), 1);
        let a = random_tame_element(3, 1, 2, &rat(3, 1), 7).unwrap();
        assert!(a.support().all(|q| q.is_integer()));
        let a = random_tame_element(3, 4, 2, &rat(3, 1), 7).unwrap();
        let v = tame_criterion(&a, Some(2)).unwrap();
        assert!(v.tame && 4 % v.e == 0);
        assert_eq!(v.c, Some(2));
        assert!(random_tame_element(3, 3, 1, &rat(1, 1), 0).is_err());
        assert_eq!(canonical_root_of_unity(3, 2).unwrap(), make_field(3, 1).unwrap().scalar(2));
    }

    #[test]
    fn profiles() {
        let prec = rat(6, 1);
        let cube = MNPoly::from_integers(&[-3, 0, 0, 1], 3, prec.clone()).unwrap();
        let mut prof = invariant_profile(&cube, &rat(2, 1), 30, 1000).unwrap();
        prof.sort();
        assert_eq!(prof, vec![(1, 1), (2, 2), (2, 2)]);
        let sq = MNPoly::from_integers(&[-3, 0, 1], 3, prec.clone()).unwrap();
        assert_eq!(invariant_profile(&sq, &rat(3, 1), 30, 1000).unwrap(), vec![(2, 1), (2, 1)]);
        let lin = MNPoly::from_integers(&[-2, 1], 3, prec).unwrap();
        assert_eq!(invariant_profile(&lin, &rat(3, 1), 30, 1000).unwrap(), vec![(1, 1)]);
    }
}
