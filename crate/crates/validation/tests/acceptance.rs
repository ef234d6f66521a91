//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use malcev::arith::{rat, rat_int};
use malcev::cyclotomic::{
    compare_closed_form, cyclotomic_poly, enumerate_primitive_p2_roots, zeta_p_closed_form, zeta_prime_power,
    BranchPolicy,
};
use malcev::ff::make_field;
use malcev::invariants::{
    inertia_index_estimate, invariant_profile, random_tame_element, tame_criterion, tame_index_estimate,
};
use malcev::newton::{certify_root, newton_all_roots, MNPoly};
use malcev::series::MNSeries;
use malcev::verify::{find_property, run_property, DEFAULT_SEED};

const STEPS: usize = 12;
const BUDGET: usize = 10_000;

type Verdict = Result<String, String>;

/// Roots produced while checking criteria 1 to 6, certified together under criterion 9.
struct Emitted(Vec<(String, MNPoly, MNSeries)>);

impl Emitted {
    fn push(&mut self, label: String, poly: &MNPoly, root: &MNSeries) {
        self.0.push((label, poly.clone(), root.clone()));
    }
}

fn closed_form_reproduction(emitted: &mut Emitted) -> Verdict {
    let mut notes = Vec::new();
    for p in [3u64, 5, 7] {
        let prec = rat(p as i64, p as i64 - 1);
        let poly = cyclotomic_poly(p, 1, &(&prec + rat_int(p as i64))).map_err(|e| e.to_string())?;
        for b in newton_all_roots(&poly, &prec, STEPS, BUDGET).map_err(|e| e.to_string())? {
            emitted.push(format!("Φ_{p} branch"), &poly, &b.root);
        }
        let reports = compare_closed_form(p, &prec, STEPS).map_err(|e| e.to_string())?;
        for r in &reports {
            if !r.all_agree() || r.agreeing.len() != p as usize {
                return Err(format!("p={p} choice {}: agreeing {:?}, disagreeing {:?}", r.choice, r.agreeing, r.disagreeing));
            }
        }
        notes.push(format!("p={p}: {} choices matched on {} terms", reports.len(), p));
    }
    let f9 = make_field(3, 2).unwrap();
    let x = f9.gen();
    for (choice, sign) in [(0, x.clone()), (1, x.neg())] {
        let z = zeta_p_closed_form(3, choice, &rat(3, 2)).map_err(|e| e.to_string())?;
        let want = vec![(rat(0, 1), f9.one()), (rat(1, 2), sign), (rat(1, 1), f9.one())];
        if z.terms() != want.as_slice() {
            return Err(format!("p=3 choice {choice} closed form is {z}"));
        }
    }
    notes.push("p=3 terms (0:1, 1/2:±x, 1:1)".into());
    Ok(notes.join("; "))
}

fn prime_power_invariants(emitted: &mut Emitted) -> Verdict {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for p in [3u64, 5] {
        for n in [1u32, 2] {
            let need = rat(2, p as i64 - 1);
            let z = zeta_prime_power(p, n, &need, BranchPolicy::Minimal, STEPS).map_err(|e| e.to_string())?;
            let poly = cyclotomic_poly(p, n, &rat_int(4)).map_err(|e| e.to_string())?;
            emitted.push(format!("ζ_{p}^{n}"), &poly, &z.root);
            let (t, f) = (tame_index_estimate(&z.root), inertia_index_estimate(&z.root));
            let line = format!("p={p} n={n}: precision {} ({}), T={t}, F={f}", z.root.prec(), z.status);
            if *z.root.prec() >= need && t == p - 1 && f == 2 {
                notes.push(line);
            } else {
                failures.push(format!("{line}, needs precision >= {need}, T = {}, F = 2", p - 1));
            }
        }
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn primitive_p2_enumeration(emitted: &mut Emitted) -> Verdict {
    let p = 3u64;
    let roots = enumerate_primitive_p2_roots(p, &rat_int(1), STEPS, BUDGET).map_err(|e| e.to_string())?;
    let poly = cyclotomic_poly(p, 2, &rat_int(4)).map_err(|e| e.to_string())?;
    for r in &roots {
        emitted.push("Φ_9 branch".into(), &poly, &r.branch.root);
    }
    let pairs: Vec<_> = roots.iter().map(|r| (r.first.clone(), r.accumulation.clone())).collect();
    let mut distinct = pairs.clone();
    distinct.sort();
    distinct.dedup();
    let unknown = pairs.iter().filter(|(_, acc)| acc.is_none()).count();
    let zero_acc = pairs.iter().filter(|(_, acc)| acc.as_ref().map_or(false, |c| c.is_zero())).count();
    let summary = format!(
        "{} branches (multiplicities {:?}, statuses {:?}), {} distinct pairs, {} with C_1/2 = 0, {} with C_1/2 undetermined",
        roots.len(),
        roots.iter().map(|r| r.branch.multiplicity).collect::<Vec<_>>(),
        roots.iter().map(|r| r.branch.status.to_string()).collect::<Vec<_>>(),
        distinct.len(),
        zero_acc,
        unknown,
    );
    if roots.len() == 6 && distinct.len() == 6 && unknown == 0 && zero_acc == 2 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn frobenius_inversion(emitted: &mut Emitted) -> Verdict {
    let mut notes = Vec::new();
    for p in [3u64, 5] {
        for n in [1u32, 2] {
            let z = zeta_prime_power(p, n, &rat(2, p as i64 - 1), BranchPolicy::Minimal, STEPS)
                .map_err(|e| e.to_string())?
                .root;
            let poly = cyclotomic_poly(p, n, &rat_int(4)).map_err(|e| e.to_string())?;
            emitted.push(format!("ζ_{p}^{n}"), &poly, &z);
            let prod = z.frobenius().mul(&z).map_err(|e| e.to_string())?;
            let diff = prod.sub(&MNSeries::one(z.field(), prod.prec().clone())).map_err(|e| e.to_string())?;
            if !diff.is_empty() {
                return Err(format!("p={p} n={n}: φ(ζ)ζ = {prod}"));
            }
            notes.push(format!("p={p} n={n} at {}", prod.prec()));
        }
    }
    Ok(notes.join("; "))
}

fn tame_round_trip() -> Verdict {
    let mut seen = 0;
    for (p, e, f) in [(3u64, 2u64, 1usize), (3, 4, 2), (5, 4, 2)] {
        for seed in 0..100u64 {
            let a = random_tame_element(p, e, f, &rat_int(3), seed).map_err(|e| e.to_string())?;
            let v = tame_criterion(&a, Some(f as u64)).map_err(|e| e.to_string())?;
            let c = v.c.ok_or("no c for a tame element")?;
            if !v.tame || e % v.e != 0 || c % inertia_index_estimate(&a) != 0 {
                return Err(format!("({p},{e},{f}) seed {seed}: {v:?}"));
            }
            seen += 1;
        }
    }
    let mut wild = Vec::new();
    for p in [3u64, 5] {
        let fp = make_field(p, 1).unwrap();
        let root = MNSeries::monomial(&fp.one(), rat(1, p as i64), rat_int(2));
        let zeta = zeta_prime_power(p, 2, &rat(2, p as i64 - 1), BranchPolicy::Minimal, STEPS)
            .map_err(|e| e.to_string())?
            .root;
        for (name, w) in [("p^(1/p)", root), ("ζ_{p²}", zeta)] {
            let v = tame_criterion(&w, None).map_err(|e| e.to_string())?;
            if v.tame {
                return Err(format!("{name} at p={p} judged tame"));
            }
            wild.push(format!("{name}@{p}"));
        }
    }
    Ok(format!("{seen} tame draws accepted; wild: {}", wild.join(", ")))
}

fn invariant_profile_fixture(emitted: &mut Emitted) -> Verdict {
    let poly = MNPoly::from_integers(&[-3, 0, 0, 1], 3, rat_int(6)).map_err(|e| e.to_string())?;
    for b in newton_all_roots(&poly, &rat_int(2), 30, BUDGET).map_err(|e| e.to_string())? {
        emitted.push("T^3 - 3 branch".into(), &poly, &b.root);
    }
    let mut profile = invariant_profile(&poly, &rat_int(2), 30, BUDGET).map_err(|e| e.to_string())?;
    profile.sort();
    if profile == [(1, 1), (2, 2), (2, 2)] {
        Ok(format!("{profile:?}"))
    } else {
        Err(format!("{profile:?}"))
    }
}

fn run_named(names: &[&str], samples: usize) -> Verdict {
    let mut notes = Vec::new();
    for name in names {
        let prop = find_property(name).ok_or_else(|| format!("unknown property {name}"))?;
        let r = run_property(prop, DEFAULT_SEED, samples);
        if !r.passed {
            return Err(format!("{name}: {}", r.counterexample.unwrap_or_default()));
        }
        notes.push(format!("{name} ({} samples)", r.samples));
    }
    Ok(notes.join("; "))
}

fn oracle_equivalence() -> Verdict {
    run_named(&["series.integer_arithmetic_matches_residues", "gr.decomposition_matches_digit_search"], 1000)
}

fn lemma_suites() -> Verdict {
    run_named(
        &[
            "invariants.tame_index_is_prime_to_p",
            "invariants.field_operations_divide_lcm_and_inversion_preserves",
            "invariants.bounded_subfield_is_closed",
            "invariants.pth_root_inertia_refinement",
        ],
        1000,
    )
}

fn root_certificates(emitted: &Emitted) -> Verdict {
    for (label, poly, root) in &emitted.0 {
        if !certify_root(poly, root).map_err(|e| e.to_string())? {
            return Err(format!("{label}: v(P(r)) below the root precision {} for r = {root}", root.prec()));
        }
    }
    let props = run_named(&["newton.every_root_satisfies_its_certificate", "newton.polygon_slopes_match_root_valuations"], 1000)?;
    Ok(format!("{} emitted roots certified; {props}", emitted.0.len()))
}

fn main() -> ExitCode {
    let mut emitted = Emitted(Vec::new());
    let mut results: Vec<(&str, Verdict, f64)> = Vec::new();
    macro_rules! criterion {
        ($label:expr, $body:expr) => {{
            let start = Instant::now();
            let v = $body;
            results.push(($label, v, start.elapsed().as_secs_f64()));
            let (label, v, secs) = results.last().unwrap();
            match v {
                Ok(msg) => println!("PASS  {label} [{secs:.1}s]: {msg}"),
                Err(msg) => println!("FAIL  {label} [{secs:.1}s]: {msg}"),
            }
        }};
    }
    criterion!("1 closed-form ζ_p reproduction", closed_form_reproduction(&mut emitted));
    criterion!("2 invariants of ζ_{p^n}", prime_power_invariants(&mut emitted));
    criterion!("3 primitive p²-root enumeration", primitive_p2_enumeration(&mut emitted));
    criterion!("4 Frobenius inversion", frobenius_inversion(&mut emitted));
    criterion!("5 tame criterion round trip", tame_round_trip());
    criterion!("6 invariant-profile fixture", invariant_profile_fixture(&mut emitted));
    criterion!("7 oracle equivalence", oracle_equivalence());
    criterion!("8 lemma suites", lemma_suites());
    criterion!("9 root certificates", root_certificates(&emitted));
    let failed = results.iter().filter(|(_, v, _)| v.is_err()).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
