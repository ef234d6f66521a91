use malcev::arith::{rat, rat_int};
use malcev::cyclotomic::{
    enumerate_primitive_p2_roots, zeta_p_closed_form, zeta_pn_partial_terms, zeta_prime_power, BranchPolicy,
};
use malcev::ff::make_field;
use malcev::invariants::{inertia_index_estimate, tame_index_estimate};
use malcev::newton::{newton_all_roots, MNPoly};
use malcev::series::MNSeries;

#[test]
fn closed_form_choices_are_the_cube_roots() {
    let poly = MNPoly::from_integers(&[1, 1, 1], 3, rat(7, 2)).unwrap();
    let branches = newton_all_roots(&poly, &rat(3, 2), 20, 100).unwrap();
    assert_eq!(branches.len(), 2);
    let mut closed: Vec<_> = (0..2).map(|j| zeta_p_closed_form(3, j, &rat(3, 2)).unwrap()).collect();
    let mut found: Vec<_> = branches.iter().map(|b| b.root.truncate(&rat(3, 2))).collect();
    closed.sort_by_key(|s| s.to_string());
    found.sort_by_key(|s| s.to_string());
    assert_eq!(closed, found);
}

#[test]
fn ninth_root_leading_terms() {
    let z = zeta_prime_power(3, 2, &rat(2, 3), BranchPolicy::Minimal, 6).unwrap();
    let exps: Vec<_> = z.root.support().take(3).cloned().collect();
    assert_eq!(exps, vec![rat(0, 1), rat(1, 6), rat(1, 3)]);
    assert_eq!(tame_index_estimate(&z.root), 2);
    assert_eq!(inertia_index_estimate(&z.root), 2);
    let power = z.root.pow(9).unwrap();
    assert!(power.sub(&MNSeries::one(power.field(), power.prec().clone())).unwrap().is_empty());
}

#[test]
fn partial_terms_hold_on_some_branch() {
    let roots = enumerate_primitive_p2_roots(3, &rat_int(1), 8, 1000).unwrap();
    for choice in 0..2 {
        let matched = roots.iter().any(|r| {
            let root = &r.branch.root;
            let terms = zeta_pn_partial_terms(3, 2, choice, root.prec()).unwrap();
            terms.len() >= 5 && terms.iter().all(|(e, c)| root.coeff(e).ok().as_ref() == Some(c))
        });
        assert!(matched, "choice {choice} matches no branch");
    }
    let minimal = zeta_prime_power(3, 2, &rat(1, 2), BranchPolicy::Minimal, 8).unwrap().root;
    assert!((0..2).any(|j| {
        zeta_pn_partial_terms(3, 2, j, minimal.prec())
            .unwrap()
            .iter()
            .all(|(e, c)| minimal.coeff(e).ok().as_ref() == Some(c))
    }));
}

#[test]
fn enumeration_clusters_share_digits_below_the_accumulation_point() {
    let roots = enumerate_primitive_p2_roots(3, &rat_int(1), 8, 1000).unwrap();
    assert_eq!(roots.iter().map(|r| r.branch.multiplicity).sum::<usize>(), 6);
    let f9 = make_field(3, 2).unwrap();
    let firsts: Vec<_> = roots.iter().map(|r| r.first.clone().unwrap()).collect();
    assert_eq!(firsts, vec![f9.gen(), f9.gen().neg()]);
    assert!(roots.iter().all(|r| r.accumulation.is_none() && *r.branch.root.prec() < rat(1, 2)));
}

#[test]
fn branch_policy_selects_enumerated_roots() {
    let first = zeta_prime_power(3, 1, &rat(3, 2), BranchPolicy::Branch(0), 20).unwrap();
    let second = zeta_prime_power(3, 1, &rat(3, 2), BranchPolicy::Branch(1), 20).unwrap();
    assert_ne!(first.root, second.root);
    assert_eq!(first.root.frobenius(), second.root);
    assert!(zeta_prime_power(3, 1, &rat(3, 2), BranchPolicy::Branch(2), 20).is_err());
}
