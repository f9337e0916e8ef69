mod common;

use std::sync::Arc;

use dblcat::cat::{all_functors, chain_category, coproduct, iso_check, product, pullback, FinFunctor, FinPoset};
use dblcat::error::Axiom;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_poset(seed: u64, n: usize) -> FinPoset {
    common::random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4)
}

#[test]
fn functors_between_chains_are_monotone_maps() {
    for m in 0..=2 {
        for n in 0..=3 {
            let f = all_functors(&Arc::new(chain_category(m)), &Arc::new(chain_category(n)));
            assert_eq!(f.len(), common::binomial(m + n + 1, m + 1), "[{m}] → [{n}]");
        }
    }
}

#[test]
fn a_poset_and_its_opposite_differ() {
    let v = FinPoset::from_generators(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]).unwrap();
    let c = Arc::new(v.as_category().unwrap());
    let op = Arc::new(c.opposite());
    assert_eq!((c.object_count(), c.morphism_count()), (op.object_count(), op.morphism_count()));
    assert!(!iso_check(&c, &op).is_found());
    assert!(iso_check(&c, &Arc::new(op.opposite())).is_found());
}

#[test]
fn a_misrouted_composite_is_caught() {
    let mut c = chain_category(2);
    let arrow = |a: usize, b: usize| c.hom(a, b).next().unwrap();
    let (f, g) = (arrow(0, 1), arrow(1, 2));
    c.override_composite(g, f, c.identity(0)).unwrap();
    assert!(c.validate().iter().any(|v| v.axiom == Axiom::Endpoints));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn posets_are_valid_categories(seed in any::<u64>(), n in 1usize..7) {
        let p = random_poset(seed, n);
        let c = p.as_category().unwrap();
        prop_assert!(c.validate().is_empty());
        prop_assert!(c.is_thin());
        prop_assert_eq!(c.morphism_count(), p.relation_count());
        prop_assert_eq!(c.morphism_count(), common::weak_chains(&p, 1));
    }

    #[test]
    fn products_and_coproducts_count_cells(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let c = random_poset(s1, n).as_category().unwrap();
        let d = random_poset(s2, m).as_category().unwrap();
        let cd = product(&c, &d).unwrap();
        prop_assert!(cd.validate().is_empty());
        prop_assert_eq!(cd.object_count(), c.object_count() * d.object_count());
        prop_assert_eq!(cd.morphism_count(), c.morphism_count() * d.morphism_count());
        let sum = coproduct(&c, &d).unwrap();
        prop_assert_eq!(sum.morphism_count(), c.morphism_count() + d.morphism_count());
        prop_assert!(iso_check(&Arc::new(cd), &Arc::new(product(&d, &c).unwrap())).is_found());
    }

    #[test]
    fn relabelled_posets_are_isomorphic(seed in any::<u64>(), n in 1usize..6, shift in 0usize..6) {
        let p = random_poset(seed, n);
        // rotate the elements: new element i is old element (i + shift) mod n
        let old = |i: usize| (i + shift) % n;
        let labels = (0..n).map(|i| p.label(old(i)).to_string()).collect();
        let q = FinPoset::from_fn(labels, |a, b| p.leq(old(a), old(b))).unwrap();
        let (c, d) = (Arc::new(p.as_category().unwrap()), Arc::new(q.as_category().unwrap()));
        let iso = iso_check(&c, &d).functor();
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().validate().is_empty());
    }

    #[test]
    fn pulling_back_along_an_identity_changes_nothing(seed in any::<u64>(), n in 1usize..6) {
        let c = Arc::new(random_poset(seed, n).as_category().unwrap());
        let id = FinFunctor::identity(c.clone());
        let pb = pullback(&id, &id).unwrap();
        prop_assert!(iso_check(pb.cat(), &c).is_found());
        prop_assert!(id.then(&id).unwrap().validate().is_empty());
    }
}
