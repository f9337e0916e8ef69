//! Property tests for the linear algebra, the homology reports and the JSON
//! round trips.

mod common;

use std::sync::Arc;

use dblcat::cat::{FinFunctor, FinPoset};
use dblcat::dblcat::box_product;
use dblcat::homology::{
    betti, chain_complex, invariant_factors, rank_mod2, rank_rational, we_witness, Ring, SparseMatrix,
};
use dblcat::json::Json;
use dblcat::sset::poset_nerve;
use dblcat::{FinCat, FinDblCat, TruncSSet};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(rows, cols)| (Just(rows), prop::collection::vec(prop::collection::vec(-3i64..=3, rows), cols)))
}

fn sparse(rows: usize, dense_columns: &[Vec<i64>]) -> SparseMatrix {
    let columns = dense_columns
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect())
        .collect();
    SparseMatrix::from_columns(rows, columns)
}

/// Rank by Gaussian elimination over exact fractions kept as `i128`
/// numerator rows scaled by Bareiss steps.
fn bareiss_rank(rows: usize, columns: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = (0..rows).map(|i| columns.iter().map(|c| c[i] as i128).collect()).collect();
    let cols = columns.len();
    let (mut rank, mut prev) = (0, 1i128);
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn cone(p: &FinPoset) -> FinPoset {
    let n = p.len();
    let mut labels = p.labels().to_vec();
    labels.push("top".into());
    FinPoset::from_fn(labels, |a, b| b == n || (a < n && b < n && p.leq(a, b))).unwrap()
}

fn into_cone(p: &FinPoset) -> FinFunctor {
    let c = cone(p);
    let mut morphisms = vec![0; p.relation_count()];
    for (a, b) in p.relation() {
        morphisms[p.morphism_of(a, b).unwrap()] = c.morphism_of(a, b).unwrap();
    }
    FinFunctor::new(
        Arc::new(p.as_category().unwrap()),
        Arc::new(c.as_category().unwrap()),
        (0..p.len()).collect(),
        morphisms,
    )
    .unwrap()
}

fn random_poset(seed: u64, n: usize) -> FinPoset {
    common::random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.45)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_rank_matches_an_independent_elimination((rows, cols) in matrix()) {
        prop_assert_eq!(rank_rational(&sparse(rows, &cols)), bareiss_rank(rows, &cols));
    }

    #[test]
    fn invariant_factors_form_a_divisibility_chain((rows, cols) in matrix()) {
        let m = sparse(rows, &cols);
        let d = invariant_factors(&m);
        prop_assert_eq!(d.len(), rank_rational(&m));
        prop_assert!(d.iter().all(|x| x.is_positive()));
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        // reducing mod 2 keeps exactly the odd invariant factors
        let odd = d.iter().filter(|x| (*x % BigInt::from(2)) != BigInt::zero()).count();
        prop_assert_eq!(rank_mod2(&m), odd);
    }

    #[test]
    fn integer_rational_and_mod2_betti_numbers_agree(seed in any::<u64>(), n in 1usize..6) {
        let x = poset_nerve(&random_poset(seed, n), 3).unwrap();
        let q = betti(&x, Ring::Rationals);
        let z = betti(&x, Ring::Integers);
        prop_assert_eq!(q.known_betti(), z.known_betti());
        if !z.has_torsion() {
            prop_assert_eq!(betti(&x, Ring::Mod2).known_betti(), q.known_betti());
        }
    }

    #[test]
    fn euler_characteristic_counts_cells_up_to_the_top_boundary(seed in any::<u64>(), n in 1usize..6, d in 1usize..4) {
        let x = poset_nerve(&random_poset(seed, n), d).unwrap();
        let c = chain_complex(&x);
        let cells: i64 = c.dims()[..d].iter().enumerate().map(|(k, &m)| if k % 2 == 0 { m as i64 } else { -(m as i64) }).sum();
        let top = rank_rational(c.boundary(d)) as i64;
        let correction = if d % 2 == 0 { top } else { -top };
        prop_assert_eq!(betti(&x, Ring::Rationals).euler_characteristic(), cells + correction);
    }

    #[test]
    fn coning_off_passes_the_witness_exactly_when_the_poset_is_acyclic(seed in any::<u64>(), n in 1usize..6) {
        let p = random_poset(seed, n);
        let x = poset_nerve(&p, 3).unwrap();
        let acyclic = betti(&x, Ring::Rationals).known_betti() == vec![1, 0, 0];
        let v = we_witness(&into_cone(&p), 3).unwrap();
        prop_assert_eq!(v.passes(), acyclic);
        prop_assert!(v.degrees.iter().all(|c| c.target_betti == usize::from(c.degree == 0)));
    }

    #[test]
    fn posets_and_their_nerves_round_trip(seed in any::<u64>(), n in 1usize..6) {
        let p = random_poset(seed, n);
        prop_assert_eq!(FinPoset::from_json(&p.to_json()).unwrap(), p.clone());
        let c = p.as_category().unwrap();
        prop_assert!(FinCat::from_json(&c.to_json()).unwrap() == c);
        let x = poset_nerve(&p, 2).unwrap();
        let back = TruncSSet::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back.counts(), x.counts());
        prop_assert_eq!(back.to_json(), x.to_json());
    }

    #[test]
    fn box_products_round_trip(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let a = random_poset(seed, n).as_category().unwrap();
        let b = random_poset(seed.wrapping_add(1), m).as_category().unwrap();
        let d = box_product(&a, &b).unwrap();
        let back = FinDblCat::from_json(&d.to_json()).unwrap();
        prop_assert!(back.validate().is_empty());
        prop_assert!(back == d);
    }
}
