use std::collections::BTreeSet;

use mll_core::lattice::FinPoset;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Family = BTreeSet<BTreeSet<u8>>;

fn random_family<R: Rng>(rng: &mut R, base: u8) -> Family {
    let count = rng.gen_range(1..=6);
    (0..count)
        .map(|_| (0..base).filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

/// Adds the full set and closes under intersection: a closure system, hence
/// a lattice, and often not a distributive one.
fn closure_system(mut fam: Family, base: u8) -> Family {
    fam.insert((0..base).collect());
    loop {
        let pairs: Vec<BTreeSet<u8>> = fam
            .iter()
            .flat_map(|a| fam.iter().map(move |b| a & b))
            .filter(|x| !fam.contains(x))
            .collect();
        if pairs.is_empty() {
            return fam;
        }
        fam.extend(pairs);
    }
}

fn ring_of_sets(mut fam: Family) -> Family {
    loop {
        let new: Vec<BTreeSet<u8>> = fam
            .iter()
            .flat_map(|a| fam.iter().flat_map(move |b| [a & b, a | b]))
            .filter(|x| !fam.contains(x))
            .collect();
        if new.is_empty() {
            return fam;
        }
        fam.extend(new);
    }
}

fn poset(fam: &Family) -> FinPoset {
    let sets: Vec<Vec<String>> = fam.iter().map(|s| s.iter().map(u8::to_string).collect()).collect();
    FinPoset::from_family(&sets).unwrap()
}

fn check_laws(p: &FinPoset) -> Result<(), TestCaseError> {
    let n = p.size();
    let m = |a, b| p.meet_idx(a, b).unwrap();
    let j = |a, b| p.join_idx(a, b).unwrap();
    for x in 0..n {
        prop_assert_eq!(m(x, x), x);
        prop_assert_eq!(j(x, x), x);
        for y in 0..n {
            prop_assert_eq!(m(x, y), m(y, x));
            prop_assert_eq!(j(x, y), j(y, x));
            prop_assert_eq!(m(x, j(x, y)), x);
            prop_assert_eq!(j(x, m(x, y)), x);
            for z in 0..n {
                prop_assert_eq!(m(x, m(y, z)), m(m(x, y), z));
                prop_assert_eq!(j(x, j(y, z)), j(j(x, y), z));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rings_of_sets_are_distributive_lattices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = poset(&ring_of_sets(random_family(&mut rng, 5)));
        let prof = p.classify();
        prop_assert!(prof.is_lattice && prof.is_distributive && prof.is_modular);
        check_laws(&p)?;
    }

    #[test]
    fn closure_systems_obey_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = poset(&closure_system(random_family(&mut rng, 4), 4));
        let prof = p.classify();
        prop_assert!(prof.is_lattice);
        check_laws(&p)?;
        // flag consistency
        prop_assert!(!prof.is_boolean || (prof.is_distributive && prof.is_lattice));
        prop_assert!(!prof.is_linear || prof.is_lattice);
        prop_assert!(!prof.is_distributive || prof.is_modular);
        // the triple law and the forbidden-sublattice search agree
        prop_assert_eq!(prof.is_distributive, p.forbidden_sublattice().is_none());
    }

    #[test]
    fn covers_regenerate_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = poset(&random_family(&mut rng, 5));
        let q = FinPoset::from_relation(p.labels().to_vec(), &p.hasse()).unwrap();
        prop_assert_eq!(&q, &p);
        let dot = FinPoset::from_dot(&p.to_dot()).unwrap();
        prop_assert!(dot.isomorphic(&p).unwrap());
    }

    #[test]
    fn products_of_lattices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = poset(&closure_system(random_family(&mut rng, 3), 3));
        let b = poset(&closure_system(random_family(&mut rng, 3), 3));
        let (pa, pb) = (a.classify(), b.classify());
        let prod = a.product(&b).classify();
        prop_assert!(prod.is_lattice);
        prop_assert_eq!(prod.is_distributive, pa.is_distributive && pb.is_distributive);
        prop_assert_eq!(prod.size, pa.size * pb.size);
    }

    #[test]
    fn isomorphism_survives_relabelling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = poset(&closure_system(random_family(&mut rng, 4), 4));
        // reverse the element order and rename
        let n = p.size();
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let pairs: Vec<(String, String)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (labels[n - 1 - a].clone(), labels[n - 1 - b].clone()))
            .collect();
        let q = FinPoset::from_relation(labels, &pairs).unwrap();
        let map = p.isomorphism(&q).unwrap().expect("relabelled copy");
        for (a, fa) in &map {
            for (b, fb) in &map {
                prop_assert_eq!(p.leq_labels(a, b).unwrap(), q.leq_labels(fa, fb).unwrap());
            }
        }
    }
}

#[test]
fn chain_products_linear_only_with_trivial_factor() {
    for a in 1..=4 {
        for b in 1..=4 {
            let p = FinPoset::chain(a).unwrap().product(&FinPoset::chain(b).unwrap());
            let prof = p.classify();
            assert!(prof.is_lattice && prof.is_distributive);
            assert_eq!(prof.is_linear, a == 1 || b == 1, "{a} x {b}");
        }
    }
}

#[test]
fn classic_shapes() {
    let two = FinPoset::chain(2).unwrap();
    let three = FinPoset::chain(3).unwrap();
    let grid = two.product(&three);
    assert_eq!(grid.size(), 6);
    assert_eq!(grid.covers().len(), 7);
    let diamond = poset(&[BTreeSet::new(), [1].into(), [2].into(), [1, 2].into()].into());
    assert!(two.product(&two).isomorphic(&diamond).unwrap());
    let pent = FinPoset::pentagon().classify();
    assert!(pent.is_lattice && !pent.is_modular && !pent.is_distributive);
}
