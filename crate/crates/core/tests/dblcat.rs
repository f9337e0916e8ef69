mod common;

use std::sync::Arc;

use dblcat::cat::{discrete, iso_check, product, FinCat, FinPoset};
use dblcat::dblcat::{box_product, double_nerve, h_embed, horizontal_nerve_level, v_embed, DblFunctor};
use dblcat::sset::{diag, nerve};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_poset(seed: u64, n: usize) -> FinPoset {
    common::random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4)
}

fn points(n: usize) -> FinCat {
    discrete((0..n).map(|i| format!("x{i}")).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn box_products_count_cells(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let (p, q) = (random_poset(s1, n), random_poset(s2, m));
        let (c, d) = (p.as_category().unwrap(), q.as_category().unwrap());
        let a = box_product(&c, &d).unwrap();
        prop_assert!(a.validate().is_empty());
        prop_assert_eq!(a.object_count(), n * m);
        prop_assert_eq!(a.horizontal_count(), c.morphism_count() * m);
        prop_assert_eq!(a.vertical_count(), n * d.morphism_count());
        prop_assert_eq!(a.square_count(), c.morphism_count() * d.morphism_count());
    }

    #[test]
    fn box_product_nerves_split(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let (p, q) = (random_poset(s1, n), random_poset(s2, m));
        let (c, d) = (p.as_category().unwrap(), q.as_category().unwrap());
        let a = box_product(&c, &d).unwrap();
        // level m of the horizontal nerve is N(C)_m × D
        for level in 0..=2 {
            let expected = product(&points(common::weak_chains(&p, level)), &d).unwrap();
            let got = horizontal_nerve_level(&a, level).unwrap();
            prop_assert!(iso_check(&Arc::new(got), &Arc::new(expected)).is_found());
        }
        let b = double_nerve(&a, 2, 2).unwrap();
        prop_assert!(b.validate().is_empty());
        for i in 0..=2 {
            for j in 0..=2 {
                prop_assert_eq!(b.count(i, j), common::weak_chains(&p, i) * common::weak_chains(&q, j));
            }
        }
        // the diagonal is the nerve of C × D
        let cd = nerve(&product(&c, &d).unwrap(), 2).unwrap();
        prop_assert_eq!(diag(&b).unwrap().counts(), cd.counts());
    }

    #[test]
    fn embeddings_put_a_category_on_one_axis(seed in any::<u64>(), n in 1usize..5) {
        let p = random_poset(seed, n);
        let c = Arc::new(p.as_category().unwrap());
        let h = h_embed(&c).unwrap();
        let v = v_embed(&c).unwrap();
        prop_assert!(h.validate().is_empty() && v.validate().is_empty());
        for level in 0..=2 {
            let hl = horizontal_nerve_level(&h, level).unwrap();
            prop_assert_eq!(hl.object_count(), common::weak_chains(&p, level));
            prop_assert_eq!(hl.morphism_count(), hl.object_count());
            prop_assert!(iso_check(&Arc::new(horizontal_nerve_level(&v, level).unwrap()), &c).is_found());
        }
    }

    #[test]
    fn products_of_double_categories_multiply(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..3, m in 1usize..3) {
        let a = box_product(&random_poset(s1, n).as_category().unwrap(), &random_poset(s2, m).as_category().unwrap()).unwrap();
        let b = h_embed(&random_poset(s2, m).as_category().unwrap()).unwrap();
        let ab = dblcat::dblcat::product(&a, &b).unwrap();
        prop_assert!(ab.validate().is_empty());
        prop_assert_eq!(ab.object_count(), a.object_count() * b.object_count());
        prop_assert_eq!(ab.square_count(), a.square_count() * b.square_count());
        let id = DblFunctor::identity(Arc::new(ab));
        prop_assert!(id.validate().is_empty());
        prop_assert!(id.then(&id).unwrap().validate().is_empty());
    }
}
