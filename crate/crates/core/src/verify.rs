//! Seeded property batteries. The registry order is fixed; `run_suite` may evaluate
//! properties in parallel but always reports in registry order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{inv_mod, lcm, mult_order, rat, rat_int, Rational};
use crate::cyclotomic::{zeta_coprime, zeta_prime_power, BranchPolicy};
use crate::error::Result;
use crate::ff::{embed, make_field, poly_roots, poly_roots_exhaustive, splitting_degree, FFElem, Field};
use crate::galois_ring::{prime_power, teichmuller_decompose, teichmuller_lift, teichmuller_sum, GRElem};
use crate::invariants::{inertia_index_estimate, random_tame_element, tame_criterion, tame_index_estimate};
use crate::json::{series_from_json, series_to_json};
use crate::newton::{
    certify_root, evaluate_at_root, newton_all_roots, newton_polygon, newton_root, newton_step, segment_residue, MNPoly,
};
use crate::series::{Character, MNSeries};

/// Random inputs shared by the property batteries and the test suites.
pub mod sample {
    use super::*;

    pub fn prime<R: Rng>(rng: &mut R) -> u64 {
        [3, 5, 7][rng.gen_range(0..3)]
    }

    pub fn elem<R: Rng>(rng: &mut R, field: &Field) -> FFElem {
        field.from_index(rng.gen_range(0..field.order()))
    }

    pub fn nonzero<R: Rng>(rng: &mut R, field: &Field) -> FFElem {
        field.from_index(rng.gen_range(1..field.order()))
    }

    /// Up to `max_terms` terms at exponents `m/d` in `[0, prec)` with `d` drawn from `dens`.
    pub fn series<R: Rng>(rng: &mut R, field: &Field, dens: &[u64], prec: &Rational, max_terms: usize) -> MNSeries {
        let mut terms = BTreeMap::new();
        for _ in 0..rng.gen_range(0..=max_terms) {
            let d = dens[rng.gen_range(0..dens.len())];
            let top = (prec * rat_int(d as i64)).ceil().to_integer();
            let top: i64 = top.try_into().expect("small precision");
            let exp = rat(rng.gen_range(0..top.max(1)), d as i64);
            if exp < *prec {
                terms.insert(exp, nonzero(rng, field));
            }
        }
        MNSeries::from_canonical(field, terms.into_iter().collect(), prec.clone()).expect("canonical by construction")
    }

    /// A series with a nonzero constant digit.
    pub fn unit_series<R: Rng>(rng: &mut R, field: &Field, dens: &[u64], prec: &Rational, max_terms: usize) -> MNSeries {
        let rest = series(rng, field, dens, prec, max_terms);
        let mut terms: Vec<_> = rest.terms().iter().filter(|(e, _)| *e != rat(0, 1)).cloned().collect();
        terms.insert(0, (rat(0, 1), nonzero(rng, field)));
        MNSeries::from_canonical(field, terms, prec.clone()).expect("canonical by construction")
    }

    /// A monic integer polynomial `Π (T − a_i)` and its roots `a_i = u p^v`.
    pub fn linear_product<R: Rng>(rng: &mut R, p: u64, degree: usize, max_val: u32) -> (Vec<i64>, Vec<i64>) {
        let roots: Vec<i64> = (0..degree)
            .map(|_| {
                let u = rng.gen_range(1..p as i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                u * (p as i64).pow(rng.gen_range(0..=max_val))
            })
            .collect();
        let mut coeffs = vec![1i64];
        for a in &roots {
            let mut next = vec![0i64; coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= a * c;
            }
            coeffs = next;
        }
        (coeffs, roots)
    }
}

type Outcome = std::result::Result<usize, String>;

trait Check<T> {
    fn ck(self, what: &str) -> std::result::Result<T, String>;
}

impl<T> Check<T> for Result<T> {
    fn ck(self, what: &str) -> std::result::Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub struct Property {
    pub name: &'static str,
    /// Fraction of the configured sample count this property draws.
    divisor: usize,
    check: fn(&mut ChaCha8Rng, usize) -> Outcome,
}

impl Property {
    pub fn samples_for(&self, configured: usize) -> usize {
        (configured / self.divisor).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    pub samples: usize,
    pub counterexample: Option<String>,
}

pub const DEFAULT_SEED: u64 = 0x6d61_6c63_6576;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const QUICK_SAMPLES: usize = 100;

pub fn registry() -> &'static [Property] {
    &REGISTRY
}

fn property_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a, so a property's stream does not depend on its registry position
    name.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn run_property(prop: &Property, seed: u64, configured: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(property_seed(seed, prop.name));
    let samples = prop.samples_for(configured);
    match (prop.check)(&mut rng, samples) {
        Ok(n) => PropertyReport { name: prop.name, passed: true, samples: n, counterexample: None },
        Err(msg) => PropertyReport { name: prop.name, passed: false, samples, counterexample: Some(msg) },
    }
}

/// Runs every property whose name contains `filter` (all when `None`).
pub fn run_suite(seed: u64, configured: usize, filter: Option<&str>) -> Vec<PropertyReport> {
    registry()
        .par_iter()
        .filter(|p| filter.map_or(true, |f| p.name.contains(f)))
        .map(|p| run_property(p, seed, configured))
        .collect()
}

pub fn find_property(name: &str) -> Option<&'static Property> {
    registry().iter().find(|p| p.name == name)
}

static REGISTRY: [Property; 28] = [
    Property { name: "ff.frobenius_is_additive_and_multiplicative", divisor: 1, check: ff_frobenius },
    Property { name: "ff.roots_substitute_to_zero_and_match_search", divisor: 1, check: ff_roots },
    Property { name: "ff.subfield_degree_divides_and_is_frobenius_stable", divisor: 1, check: ff_subfield_degree },
    Property { name: "ff.embedding_is_injective_and_multiplicative", divisor: 1, check: ff_embedding },
    Property { name: "gr.decomposition_round_trips_through_lifts", divisor: 1, check: gr_round_trip },
    Property { name: "gr.teichmuller_lift_is_multiplicative", divisor: 1, check: gr_lift_multiplicative },
    Property { name: "gr.decomposition_matches_digit_search", divisor: 1, check: gr_digit_search },
    Property { name: "series.integer_arithmetic_matches_residues", divisor: 1, check: series_integer_oracle },
    Property { name: "series.frobenius_galois_and_character_are_homomorphisms", divisor: 1, check: series_homomorphisms },
    Property { name: "series.normalization_is_idempotent", divisor: 1, check: series_normalize_idempotent },
    Property { name: "series.valuation_laws", divisor: 1, check: series_valuation_laws },
    Property { name: "series.inverse_times_series_is_one", divisor: 1, check: series_inverse },
    Property { name: "series.json_round_trip_is_byte_exact", divisor: 1, check: series_json_round_trip },
    Property { name: "newton.polygon_slopes_match_root_valuations", divisor: 10, check: newton_slopes },
    Property { name: "newton.every_root_satisfies_its_certificate", divisor: 10, check: newton_certificates },
    Property { name: "newton.residue_degree_and_constant_term", divisor: 1, check: newton_residue_shape },
    Property { name: "newton.constant_valuation_increases_each_step", divisor: 10, check: newton_progress },
    Property { name: "newton.runs_are_deterministic", divisor: 10, check: newton_determinism },
    Property { name: "invariants.tame_index_is_prime_to_p", divisor: 1, check: inv_coprime },
    Property { name: "invariants.estimates_grow_with_precision", divisor: 1, check: inv_monotone },
    Property { name: "invariants.field_operations_divide_lcm_and_inversion_preserves", divisor: 1, check: inv_field_laws },
    Property { name: "invariants.bounded_subfield_is_closed", divisor: 1, check: inv_closure },
    Property { name: "invariants.root_indices_bounded_by_degree", divisor: 20, check: inv_degree_bound },
    Property { name: "invariants.tame_elements_satisfy_criterion", divisor: 1, check: inv_tame_round_trip },
    Property { name: "invariants.pth_root_inertia_refinement", divisor: 1, check: inv_pth_root },
    Property { name: "cyclotomic.frobenius_inverts_prime_power_roots", divisor: usize::MAX, check: cyc_frobenius },
    Property { name: "cyclotomic.prime_power_root_has_order_dividing_pn", divisor: usize::MAX, check: cyc_order },
    Property { name: "cyclotomic.coprime_product_inertia_divides_lcm", divisor: 10, check: cyc_coprime_product },
];

fn small_field(rng: &mut ChaCha8Rng) -> Field {
    let p = sample::prime(rng);
    let k = rng.gen_range(1..=if p == 3 { 4 } else { 2 });
    make_field(p, k).expect("small field")
}

fn ff_frobenius(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let f = small_field(rng);
        let (a, b) = (sample::elem(rng, &f), sample::elem(rng, &f));
        let p = f.p() as u128;
        let lhs = a.add(&b).ck("add")?.pow(p);
        ensure!(lhs == a.pow(p).add(&b.pow(p)).ck("add")?, "(a+b)^p != a^p+b^p for a={a}, b={b} in F_{}^{}", f.p(), f.degree());
        ensure!(a.mul(&b).ck("mul")?.frobenius(1) == a.frobenius(1).mul(&b.frobenius(1)).ck("mul")?, "frobenius not multiplicative at {a}, {b}");
    }
    Ok(n)
}

fn ff_roots(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = [3u64, 5][rng.gen_range(0..2)];
        let f = make_field(p, rng.gen_range(1..=2)).expect("field");
        let degree = rng.gen_range(1..=4);
        let mut coeffs: Vec<FFElem> = (0..degree).map(|_| sample::elem(rng, &f)).collect();
        coeffs.push(sample::nonzero(rng, &f));
        let ambient = make_field(p, f.degree() * rng.gen_range(1..=2)).expect("field");
        let roots = poly_roots(&coeffs, &ambient).ck("poly_roots")?;
        ensure!(roots.len() <= degree, "{} roots for degree {degree}", roots.len());
        for r in &roots {
            let mut acc = ambient.zero();
            for c in coeffs.iter().rev() {
                acc = acc.mul(r).ck("mul")?.add(&embed(c, &ambient).ck("embed")?).ck("add")?;
            }
            ensure!(acc.is_zero(), "root {r} does not annihilate {coeffs:?}");
        }
        let oracle = poly_roots_exhaustive(&coeffs, &ambient).ck("search")?;
        ensure!(roots == oracle, "splitting found {roots:?}, search found {oracle:?}");
    }
    Ok(n)
}

fn ff_subfield_degree(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let f = small_field(rng);
        let a = sample::elem(rng, &f);
        let d = a.subfield_degree();
        ensure!(f.degree() % d == 0, "subfield degree {d} of {a} does not divide {}", f.degree());
        ensure!(a.frobenius(1).subfield_degree() == d, "frobenius changed the subfield degree of {a}");
    }
    Ok(n)
}

fn ff_embedding(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    const PAIRS: [(u64, usize, usize); 5] = [(3, 1, 2), (3, 2, 4), (3, 2, 6), (3, 3, 6), (5, 1, 2)];
    for _ in 0..n {
        let (p, d, k) = PAIRS[rng.gen_range(0..PAIRS.len())];
        let (sub, sup) = (make_field(p, d).expect("field"), make_field(p, k).expect("field"));
        let (a, b) = (sample::elem(rng, &sub), sample::elem(rng, &sub));
        let (ea, eb) = (embed(&a, &sup).ck("embed")?, embed(&b, &sup).ck("embed")?);
        ensure!(embed(&a.mul(&b).ck("mul")?, &sup).ck("embed")? == ea.mul(&eb).ck("mul")?, "embedding not multiplicative at {a}, {b}");
        ensure!(embed(&a.add(&b).ck("add")?, &sup).ck("embed")? == ea.add(&eb).ck("add")?, "embedding not additive at {a}, {b}");
        ensure!((a == b) == (ea == eb), "embedding not injective at {a}, {b}");
    }
    Ok(n)
}

fn random_gr(rng: &mut ChaCha8Rng, field: &Field, n: u32) -> GRElem {
    let m = prime_power(field.p(), n).expect("small ring");
    let coords: Vec<u64> = (0..field.degree()).map(|_| rng.gen_range(0..m)).collect();
    GRElem::new(field, n, &coords).expect("valid coordinates")
}

fn gr_round_trip(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    const RINGS: [(u64, usize, u32); 3] = [(3, 1, 5), (3, 2, 4), (5, 2, 3)];
    for _ in 0..n {
        let (p, k, prec) = RINGS[rng.gen_range(0..3)];
        let a = random_gr(rng, &make_field(p, k).expect("field"), prec);
        let digits = teichmuller_decompose(&a).ck("decompose")?;
        ensure!(digits[0] == a.residue(), "digit 0 of {:?} is not its residue", a.coords());
        ensure!(teichmuller_sum(&digits).ck("sum")? == a, "round trip failed for {:?}", a.coords());
    }
    Ok(n)
}

fn gr_lift_multiplicative(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let f = make_field([3, 5][rng.gen_range(0..2)], rng.gen_range(1..=2)).expect("field");
        let prec = rng.gen_range(1..=5);
        let (a, b) = (sample::elem(rng, &f), sample::elem(rng, &f));
        let lhs = teichmuller_lift(&a, prec).ck("lift")?.mul(&teichmuller_lift(&b, prec).ck("lift")?).ck("mul")?;
        ensure!(lhs == teichmuller_lift(&a.mul(&b).ck("mul")?, prec).ck("lift")?, "[a][b] != [ab] for {a}, {b} at N={prec}");
    }
    Ok(n)
}

fn gr_digit_search(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let f3 = make_field(3, 1).expect("field");
    for _ in 0..n {
        let prec = rng.gen_range(1..=6u32);
        let m = 3u64.pow(prec);
        let v = rng.gen_range(0..m);
        let lifts: Vec<u64> = (0..3)
            .map(|r| teichmuller_lift(&f3.scalar(r), prec).map(|l| l.coords()[0]))
            .collect::<Result<_>>()
            .ck("lift")?;
        let found = (0..m).find(|idx| {
            let (mut acc, mut pw, mut rest) = (0u64, 1u64, *idx);
            for _ in 0..prec {
                acc = (acc + lifts[(rest % 3) as usize] * pw) % m;
                rest /= 3;
                pw *= 3;
            }
            acc == v
        });
        let Some(mut rest) = found else {
            return Err(format!("no digit vector sums to {v} mod {m}"));
        };
        let digits = teichmuller_decompose(&GRElem::new(&f3, prec, &[v]).ck("ring")?).ck("decompose")?;
        for d in digits {
            ensure!(d.coords()[0] == rest % 3, "decomposition of {v} mod {m} disagrees with the search");
            rest /= 3;
        }
    }
    Ok(n)
}

fn residue_digits(value: u64, field: &Field, prec: u32) -> Result<Vec<(Rational, FFElem)>> {
    let digits = teichmuller_decompose(&GRElem::from_int(field, prec, value as i128)?)?;
    Ok(digits
        .into_iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| (rat_int(i as i64), d))
        .collect())
}

fn series_integer_oracle(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = sample::prime(rng);
        let prec = rng.gen_range(1..=6u32);
        let m = p.pow(prec);
        let f = make_field(p, 1).expect("field");
        let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
        let sa = MNSeries::from_integer(a as i64, &f, rat_int(prec as i64)).ck("from_integer")?;
        let sb = MNSeries::from_integer(b as i64, &f, rat_int(prec as i64)).ck("from_integer")?;
        let op = rng.gen_range(0..6);
        let (got, expected) = match op {
            0 => (sa.add(&sb).ck("add")?, (a + b) % m),
            1 => (sa.sub(&sb).ck("sub")?, (a + m - b) % m),
            2 => (sa.mul(&sb).ck("mul")?, ((a as u128 * b as u128) % m as u128) as u64),
            3 => (sa.neg(), (m - a) % m),
            4 => (sa.mul_integer(&BigInt::from(b)).ck("mul_integer")?, ((a as u128 * b as u128) % m as u128) as u64),
            _ => {
                if a % p == 0 {
                    continue;
                }
                (sa.invert().ck("invert")?, inv_mod(a, m).expect("unit"))
            }
        };
        // products can be known beyond p^N (precision grows with the factors' valuations)
        ensure!(*got.prec() >= rat_int(prec as i64), "op {op} on {a}, {b} lost precision: {got}");
        let got = got.truncate(&rat_int(prec as i64));
        let want = residue_digits(expected, &f, prec).ck("digits")?;
        ensure!(
            got.terms() == want.as_slice() && *got.prec() == rat_int(prec as i64),
            "op {op} on {a}, {b} mod {p}^{prec}: got {got}, expected digits of {expected}"
        );
    }
    Ok(n)
}

fn roots_of_unity(field: &Field, order: u128) -> Vec<FFElem> {
    field.elements().filter(|w| w.pow(order).is_one()).collect()
}

fn series_homomorphisms(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let f9 = make_field(3, 2).expect("field");
    let fourth = roots_of_unity(&f9, 4);
    for _ in 0..n {
        let prec = rat(rng.gen_range(2..=8), 2);
        let a = sample::series(rng, &f9, &[1, 2, 4], &prec, 4);
        let b = sample::series(rng, &f9, &[1, 2, 4], &prec, 4);
        let sum = a.add(&b).ck("add")?;
        let prod = a.mul(&b).ck("mul")?;
        let t = rng.gen_range(0..3);
        let w = fourth[rng.gen_range(0..fourth.len())].clone();
        let xi = Character::new(vec![(rat(1, 4), w.clone())]);
        let maps: [(&str, Box<dyn Fn(&MNSeries) -> Result<MNSeries>>); 3] = [
            ("frobenius", Box::new(|s: &MNSeries| Ok(s.frobenius()))),
            ("galois", Box::new(move |s: &MNSeries| Ok(s.galois_action(t)))),
            ("character", Box::new(move |s: &MNSeries| s.apply_character(&xi))),
        ];
        for (name, g) in &maps {
            let (ga, gb) = (g(&a).ck(name)?, g(&b).ck(name)?);
            ensure!(g(&sum).ck(name)? == ga.add(&gb).ck("add")?, "{name} not additive on {a} and {b}");
            ensure!(g(&prod).ck(name)? == ga.mul(&gb).ck("mul")?, "{name} not multiplicative on {a} and {b} (w={w}, t={t})");
        }
    }
    Ok(n)
}

fn random_series(rng: &mut ChaCha8Rng) -> MNSeries {
    let f = small_field(rng);
    let p = f.p();
    let dens = [1, 2, p, 2 * p, 4];
    let prec = rat(rng.gen_range(1..=12), 2);
    let a = sample::series(rng, &f, &dens, &prec, 5);
    if rng.gen_bool(0.3) {
        a.mul_monomial(&f.one(), &rat(-rng.gen_range(0..3), 2)).expect("monomial shift")
    } else {
        a
    }
}

fn series_normalize_idempotent(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let a = random_series(rng);
        let b = MNSeries::normalize(a.field(), a.terms().to_vec(), a.prec().clone()).ck("normalize")?;
        ensure!(a == b, "normalize changed {a} into {b}");
    }
    Ok(n)
}

fn series_valuation_laws(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let a = random_series(rng);
        let b = random_series(rng);
        let (a, b) = match MNSeries::unify(&a, &b) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let (va, vb) = (a.val_or_prec(), b.val_or_prec());
        let prod = a.mul(&b).ck("mul")?;
        if !a.is_empty() && !b.is_empty() {
            ensure!(prod.val_or_prec() == &va + &vb && !prod.is_empty(), "v(ab) != v(a)+v(b) for {a} and {b}: {prod}");
        }
        let sum = a.add(&b).ck("add")?;
        let low = va.clone().min(vb.clone());
        ensure!(sum.val_or_prec() >= low.clone().min(sum.prec().clone()), "v(a+b) < min for {a} and {b}");
        if va != vb && low < *sum.prec() {
            ensure!(sum.val_or_prec() == low, "v(a+b) != min(v(a), v(b)) for {a} and {b}");
        }
    }
    Ok(n)
}

fn series_inverse(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let a = random_series(rng);
        if a.is_empty() {
            continue;
        }
        let inv = a.invert().ck("invert")?;
        let prod = a.mul(&inv).ck("mul")?;
        let diff = prod.sub(&MNSeries::one(a.field(), prod.prec().clone())).ck("sub")?;
        ensure!(diff.is_empty(), "a * a^-1 = {prod} for a = {a}");
    }
    Ok(n)
}

fn series_json_round_trip(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let a = random_series(rng);
        let text = series_to_json(&a);
        let b = series_from_json(&text).ck("parse")?;
        ensure!(a == b && series_to_json(&b) == text, "round trip changed {text}");
    }
    Ok(n)
}

fn newton_slopes(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = [3u64, 5][rng.gen_range(0..2)];
        let degree = rng.gen_range(1..=4);
        let (coeffs, roots) = sample::linear_product(rng, p, degree, 2);
        let poly = MNPoly::from_integers(&coeffs, p, rat_int(12)).ck("poly")?;
        let polygon = newton_polygon(&poly).ck("polygon")?;
        ensure!(polygon.trailing.is_none(), "unexpected uncertain constant for roots {roots:?}");
        let mut slopes: Vec<Rational> = polygon
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat(s.slope.clone()).take(s.length()))
            .collect();
        let mut vals: Vec<Rational> = roots
            .iter()
            .map(|a| {
                let mut v = 0;
                let mut a = a.abs();
                while a % p as i64 == 0 {
                    a /= p as i64;
                    v += 1;
                }
                rat_int(v)
            })
            .collect();
        slopes.sort();
        vals.sort();
        ensure!(slopes == vals, "slopes {slopes:?} vs root valuations {vals:?} for roots {roots:?}");
    }
    Ok(n)
}

fn random_integer_poly(rng: &mut ChaCha8Rng) -> (u64, Vec<i64>) {
    let p = [3u64, 5][rng.gen_range(0..2)];
    if rng.gen_bool(0.5) {
        let degree = rng.gen_range(1..=3);
        (p, sample::linear_product(rng, p, degree, 2).0)
    } else {
        let degree = rng.gen_range(1..=3);
        let mut c: Vec<i64> = (0..degree).map(|_| rng.gen_range(-9..=9)).collect();
        if c[0] == 0 {
            c[0] = p as i64;
        }
        c.push(1);
        (p, c)
    }
}

fn newton_certificates(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let (p, coeffs) = random_integer_poly(rng);
        let target = rat(rng.gen_range(1..=4), 2);
        let poly = MNPoly::from_integers(&coeffs, p, &target + rat_int(12)).ck("poly")?;
        let roots = newton_all_roots(&poly, &target, 20, 2000).ck("all_roots")?;
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        ensure!(total == poly.degree(), "multiplicities sum to {total} for {coeffs:?}");
        for r in &roots {
            ensure!(certify_root(&poly, &r.root).ck("certify")?, "root {} of {coeffs:?} fails its certificate", r.root);
            // the same bound with the digits taken as exact
            let value = evaluate_at_root(&poly, &r.root).ck("evaluate")?;
            ensure!(value.val_or_prec() >= *r.root.prec(), "P(r) = {value} for r = {} of {coeffs:?}", r.root);
        }
        let single = newton_root(&poly, &target, 20).ck("newton_root")?;
        ensure!(certify_root(&poly, &single.root).ck("certify")?, "single branch of {coeffs:?} fails its certificate");
    }
    Ok(n)
}

fn newton_residue_shape(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let mut checked = 0;
    for _ in 0..n {
        let f = make_field([3, 5][rng.gen_range(0..2)], rng.gen_range(1..=2)).expect("field");
        let prec = rat_int(6);
        let degree = rng.gen_range(1..=4);
        let mut coeffs: Vec<MNSeries> = (0..degree).map(|_| sample::series(rng, &f, &[1, 2], &prec, 3)).collect();
        coeffs.push(sample::unit_series(rng, &f, &[1, 2], &prec, 2));
        let poly = MNPoly::new(coeffs).ck("poly")?;
        let polygon = match newton_polygon(&poly) {
            Ok(pg) => pg,
            Err(_) => continue,
        };
        for seg in &polygon.segments {
            let res = segment_residue(&poly, seg).ck("residue")?;
            ensure!(res.degree() == Some(seg.length()), "residue degree {:?} for segment length {}", res.degree(), seg.length());
            ensure!(!res.coeffs()[0].is_zero(), "residue has zero constant term on {seg:?}");
        }
        checked += 1;
    }
    Ok(checked)
}

fn newton_progress(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let (p, coeffs) = random_integer_poly(rng);
        let mut phi = MNPoly::from_integers(&coeffs, p, rat_int(10)).ck("poly")?;
        for _ in 0..4 {
            let polygon = newton_polygon(&phi).ck("polygon")?;
            let Some(seg) = polygon.segments.last().filter(|_| polygon.trailing.is_none()) else {
                break;
            };
            let res = segment_residue(&phi, seg).ck("residue")?;
            let k = splitting_degree(res.coeffs(), phi.field()).ck("splitting")? * phi.field().degree();
            let field = make_field(p, k).ck("field")?;
            phi = phi.embed_into(&field).ck("embed")?;
            let roots = poly_roots(res.coeffs(), &field).ck("roots")?;
            let before = phi.coeffs()[0].val_or_prec();
            let (_, next) = newton_step(&phi, &roots[rng.gen_range(0..roots.len())]).ck("step")?;
            let after = next.coeffs()[0].val_or_prec();
            ensure!(after > before, "v(Φ(0)) went from {before} to {after} on {coeffs:?}");
            phi = next;
        }
    }
    Ok(n)
}

fn newton_determinism(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let (p, coeffs) = random_integer_poly(rng);
        let poly = MNPoly::from_integers(&coeffs, p, rat_int(8)).ck("poly")?;
        let a = newton_all_roots(&poly, &rat_int(2), 20, 2000).ck("all_roots")?;
        let b = newton_all_roots(&poly, &rat_int(2), 20, 2000).ck("all_roots")?;
        ensure!(a.len() == b.len(), "branch counts differ for {coeffs:?}");
        for (x, y) in a.iter().zip(&b) {
            ensure!(x.branch_path == y.branch_path && x.root == y.root && x.status == y.status, "runs differ on {coeffs:?}");
        }
    }
    Ok(n)
}

fn inv_coprime(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = sample::prime(rng);
        let f = make_field(p, 1).expect("field");
        let dens = [1, 2, 4, p, p * p, 2 * p, 3 * p, 10];
        let a = sample::series(rng, &f, &dens, &rat_int(3), 6);
        let e = tame_index_estimate(&a);
        ensure!(e % p != 0, "tame index {e} of {a} is divisible by {p}");
    }
    Ok(n)
}

fn inv_monotone(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let a = random_series(rng);
        let lower = a.prec() * rat(rng.gen_range(0..=4), 4);
        let t = a.truncate(&lower);
        let (e, et) = (tame_index_estimate(&a), tame_index_estimate(&t));
        let (f, ft) = (inertia_index_estimate(&a), inertia_index_estimate(&t));
        ensure!(e % et == 0 && f % ft == 0, "truncating {a} to {lower} gave ({et}, {ft}) not dividing ({e}, {f})");
    }
    Ok(n)
}

fn bounded_pair(rng: &mut ChaCha8Rng) -> (MNSeries, MNSeries) {
    let p = [3u64, 5][rng.gen_range(0..2)];
    let field_a = make_field(p, rng.gen_range(1..=2)).expect("field");
    let field_b = make_field(p, rng.gen_range(1..=2)).expect("field");
    let choices: [Vec<u64>; 4] = [vec![1, 2], vec![1, 4], vec![1, 2, p], vec![3, 1]];
    let dens_a = &choices[rng.gen_range(0..4)];
    let dens_b = &choices[rng.gen_range(0..4)];
    let prec = rat(rng.gen_range(2..=6), 2);
    let a = sample::unit_series(rng, &field_a, dens_a, &prec, 4);
    let b = sample::unit_series(rng, &field_b, dens_b, &prec, 4);
    (a, b)
}

fn inv_field_laws(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let (a, b) = bounded_pair(rng);
        let (ea, eb) = (tame_index_estimate(&a), tame_index_estimate(&b));
        let (fa, fb) = (inertia_index_estimate(&a), inertia_index_estimate(&b));
        let (ua, ub) = MNSeries::unify(&a, &b).ck("unify")?;
        for (name, c) in [("sum", ua.add(&ub).ck("add")?), ("product", ua.mul(&ub).ck("mul")?)] {
            let (ec, fc) = (tame_index_estimate(&c), inertia_index_estimate(&c));
            ensure!(lcm(ea, eb) % ec == 0, "tame index {ec} of the {name} does not divide lcm({ea}, {eb}) for {a}, {b}");
            ensure!(lcm(fa, fb) % fc == 0, "inertia index {fc} of the {name} does not divide lcm({fa}, {fb}) for {a}, {b}");
        }
        let inv = a.invert().ck("invert")?;
        ensure!(inv.prec() == a.prec(), "inverse of a unit lost precision");
        ensure!(
            tame_index_estimate(&inv) == ea && inertia_index_estimate(&inv) == fa,
            "inversion changed the estimates of {a}: {inv}"
        );
    }
    Ok(n)
}

fn inv_closure(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = [3u64, 5][rng.gen_range(0..2)];
        let e = [1u64, 2, 4][rng.gen_range(0..3)];
        let f = rng.gen_range(1..=2);
        let field = make_field(p, f).expect("field");
        let dens: Vec<u64> = [1, 2, 4].iter().filter(|d| e % **d == 0).flat_map(|d| [*d, d * p]).collect();
        let prec = rat(rng.gen_range(2..=6), 2);
        let a = sample::unit_series(rng, &field, &dens, &prec, 4);
        let b = sample::series(rng, &field, &dens, &prec, 4);
        for (name, c) in [("sum", a.add(&b).ck("add")?), ("product", a.mul(&b).ck("mul")?), ("inverse", a.invert().ck("invert")?)] {
            let (ec, fc) = (tame_index_estimate(&c), inertia_index_estimate(&c) as usize);
            ensure!(e % ec == 0 && f % fc == 0, "{name} of {a} and {b} left the subfield (e={e}, f={f}): ({ec}, {fc})");
        }
    }
    Ok(n)
}

fn inv_degree_bound(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = [3u64, 5][rng.gen_range(0..2)];
        let (coeffs, degree) = if rng.gen_bool(0.2) {
            (vec![1i64; p as usize], p as usize - 1)
        } else {
            let degree = rng.gen_range(2..=3);
            let mut c: Vec<i64> = (0..degree).map(|_| p as i64 * rng.gen_range(-2..=2)).collect();
            c[0] = p as i64 * rng.gen_range(1..p as i64);
            c.push(1);
            (c, degree)
        };
        let poly = MNPoly::from_integers(&coeffs, p, rat_int(6)).ck("poly")?;
        let roots = newton_all_roots(&poly, &rat(3, 2), 12, 2000).ck("all_roots")?;
        for r in &roots {
            let (e, f) = (tame_index_estimate(&r.root), inertia_index_estimate(&r.root));
            ensure!(e as usize <= degree && f as usize <= degree, "root {} of {coeffs:?} has indices ({e}, {f}) above {degree}", r.root);
        }
    }
    Ok(n)
}

fn inv_tame_round_trip(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    const CASES: [(u64, u64, usize); 3] = [(3, 2, 1), (3, 4, 2), (5, 4, 2)];
    for _ in 0..n {
        let (p, e, f) = CASES[rng.gen_range(0..3)];
        let a = random_tame_element(p, e, f, &rat_int(3), rng.gen()).ck("tame element")?;
        let v = tame_criterion(&a, Some(f as u64)).ck("criterion")?;
        ensure!(v.tame && e % v.e == 0, "({p},{e},{f}) element {a} judged {v:?}");
        ensure!(v.inertia_divides_c == Some(true), "inertia of {a} does not divide c: {v:?}");
    }
    Ok(n)
}

fn inv_pth_root(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    const CASES: [(u64, usize); 3] = [(3, 1), (3, 2), (5, 1)];
    for _ in 0..n {
        let (p, f) = CASES[rng.gen_range(0..3)];
        let field = make_field(p, f).expect("field");
        let exact = rat_int(6);
        let alpha = sample::unit_series(rng, &field, &[1, 2], &rat(3, 2), 2).with_exact_prec(exact.clone());
        let mut coeffs = vec![MNSeries::zero(&field, exact.clone()); p as usize + 1];
        coeffs[0] = alpha.neg();
        coeffs[p as usize] = MNSeries::one(&field, exact);
        let poly = MNPoly::new(coeffs).ck("poly")?;
        let beta = newton_root(&poly, &rat(3, 2), 8).ck("newton_root")?.root;
        let (fa, fb) = (inertia_index_estimate(&alpha), inertia_index_estimate(&beta));
        let threshold = rat(1, p as i64 - 1);
        let within = *beta.prec() <= threshold || beta.coeff(&threshold).map_or(false, |c| c.is_zero());
        let bound = if within { fa } else { p * fa };
        ensure!(bound % fb == 0, "p-th root {beta} of {alpha} has inertia {fb}, expected a divisor of {bound}");
    }
    Ok(n)
}

fn cyc_frobenius(_: &mut ChaCha8Rng, _: usize) -> Outcome {
    let mut count = 0;
    for (p, n) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2)] {
        let prec = rat(2, p as i64 - 1);
        let z = zeta_prime_power(p, n, &prec, BranchPolicy::Minimal, 12).ck("zeta")?.root;
        let prod = z.frobenius().mul(&z).ck("mul")?;
        let diff = prod.sub(&MNSeries::one(z.field(), prod.prec().clone())).ck("sub")?;
        ensure!(diff.is_empty(), "φ(ζ)ζ = {prod} for p={p}, n={n}");
        count += 1;
    }
    Ok(count)
}

fn cyc_order(_: &mut ChaCha8Rng, _: usize) -> Outcome {
    let mut count = 0;
    for (p, n) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let z = zeta_prime_power(p, n, &rat(3, 2), BranchPolicy::Minimal, 12).ck("zeta")?.root;
        let power = z.pow(p.pow(n)).ck("pow")?;
        let diff = power.sub(&MNSeries::one(z.field(), power.prec().clone())).ck("sub")?;
        ensure!(diff.is_empty(), "ζ^(p^n) = {power} for p={p}, n={n}");
        count += 1;
    }
    Ok(count)
}

fn cyc_coprime_product(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    for _ in 0..n {
        let p = [3u64, 5][rng.gen_range(0..2)];
        let r = loop {
            let r = rng.gen_range(1..=13u64);
            if r % p != 0 {
                break r;
            }
        };
        let prec = rat(p as i64, p as i64 - 1);
        let z = zeta_prime_power(p, 1, &prec, BranchPolicy::Minimal, 12).ck("zeta")?.root;
        let w = zeta_coprime(r, p, &prec).ck("coprime root")?;
        let (zu, wu) = MNSeries::unify(&z, &w).ck("unify")?;
        let prod = zu.mul(&wu).ck("mul")?;
        let bound = lcm(mult_order(p, r), inertia_index_estimate(&z));
        let got = inertia_index_estimate(&prod);
        ensure!(bound % got == 0, "ζ_{r}·ζ_{p} has inertia {got}, not dividing {bound}");
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|p| p.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), registry().len());
    }

    #[test]
    fn quick_suite_is_reproducible() {
        let a = run_suite(7, 5, Some("series."));
        let b = run_suite(7, 5, Some("series."));
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.passed), "{a:?}");
    }
}
