use std::sync::Arc;

use super::*;
use crate::cat::{chain_category, FinCat, FinPoset};
use crate::sset::{beta, csd2_poset, poset_nerve, standard, Shape};

fn circle(d: usize) -> TruncSSet {
    standard(Shape::Boundary, 2, d).unwrap()
}

fn cyclic_group_of_order_two() -> FinCat {
    let triples = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)];
    FinCat::from_table(vec!["*".into()], vec![("1".into(), 0, 0), ("g".into(), 0, 0)], vec![0], &triples).unwrap()
}

fn inclusion(from: TruncSSet, to: TruncSSet) -> SimplicialMap {
    SimplicialMap::from_keys(Arc::new(from), Arc::new(to), |_, key| key.to_vec()).unwrap()
}

#[test]
fn point_has_one_generator() {
    let c = chain_complex(&TruncSSet::point(3));
    assert_eq!(c.dims(), vec![1, 0, 0, 0]);
    assert!((0..=3).all(|k| c.boundary(k).is_zero()));
    assert_eq!(betti(&TruncSSet::point(3), Ring::Integers).known_betti(), vec![1, 0, 0]);
}

#[test]
fn circle_boundary_is_the_cycle_matrix() {
    let x = circle(2);
    let c = chain_complex(&x);
    assert_eq!(c.dims(), vec![3, 3, 0]);
    // an edge a → b has boundary b − a
    let vertex = |v: usize| c.basis(0).iter().position(|&s| x.key(0, s) == [v]).unwrap();
    for (j, &e) in c.basis(1).iter().enumerate() {
        let key = x.key(1, e);
        let mut expected = vec![(vertex(key[0]), -1), (vertex(key[1]), 1)];
        expected.sort();
        assert_eq!(c.boundary(1).column(j), expected.as_slice());
    }
    assert_eq!(rank_rational(c.boundary(1)), 2);
}

#[test]
fn boundaries_square_to_zero() {
    let fixtures = [
        poset_nerve(&FinPoset::chain(2), 3).unwrap(),
        circle(3),
        standard(Shape::Simplex, 3, 3).unwrap(),
        nerve(&cyclic_group_of_order_two(), 4).unwrap(),
        poset_nerve(&csd2_poset(Shape::Simplex, 2).unwrap(), 3).unwrap(),
    ];
    for x in &fixtures {
        assert!(chain_complex(x).square_zero_failures().is_empty());
    }
}

#[test]
fn circle_has_one_loop() {
    for ring in [Ring::Rationals, Ring::Integers, Ring::Mod2] {
        let h = betti(&circle(2), ring);
        assert_eq!(h.known_betti(), vec![1, 1]);
        assert_eq!(h.valid_through, Some(1));
        assert_eq!(h.betti(2), None);
        assert!(!h.has_torsion());
    }
}

#[test]
fn classifying_space_of_z2_has_torsion() {
    // H_1 = Z/2 and H_2 = 0 integrally; over GF(2) every degree is one-dimensional
    let x = nerve(&cyclic_group_of_order_two(), 4).unwrap();
    let z = betti(&x, Ring::Integers);
    assert_eq!(z.known_betti(), vec![1, 0, 0, 0]);
    assert_eq!(z.degrees[1].torsion, vec![BigInt::from(2)]);
    assert!(z.degrees[2].torsion.is_empty());
    assert_eq!(betti(&x, Ring::Rationals).known_betti(), vec![1, 0, 0, 0]);
    assert_eq!(betti(&x, Ring::Mod2).known_betti(), vec![1, 1, 1, 1]);
}

#[test]
fn truncation_zero_knows_nothing() {
    let h = betti(&TruncSSet::point(0), Ring::Rationals);
    assert_eq!(h.valid_through, None);
    assert!(h.known_betti().is_empty());
}

#[test]
fn horns_and_simplices_are_acyclic() {
    for x in [standard(Shape::Simplex, 2, 3).unwrap(), standard(Shape::Horn(1), 2, 3).unwrap()] {
        assert_eq!(betti(&x, Ring::Integers).known_betti(), vec![1, 0, 0]);
    }
}

#[test]
fn report_json_marks_the_top_degree_unknown() {
    let v = betti(&circle(2), Ring::Rationals).to_json();
    assert_eq!(v["degrees"][2]["betti"], "unknown");
    assert_eq!(v["degrees"][1]["betti"], 1);
    assert_eq!(v["ring"], "q");
}

#[test]
fn identity_passes_everywhere() {
    let x = Arc::new(circle(3));
    let v = we_witness(&SimplicialMap::identity(x), 3).unwrap();
    assert_eq!(v.valid_through, Some(2));
    assert!(v.passes());
    let c = Arc::new(chain_category(2));
    assert!(we_witness(&FinFunctor::identity(c), 3).unwrap().passes());
}

#[test]
fn filling_the_circle_fails_in_degree_one() {
    let f = inclusion(circle(3), standard(Shape::Simplex, 2, 3).unwrap());
    let v = we_witness(&f, 3).unwrap();
    assert_eq!(v.first_failure(), Some(1));
    assert_eq!((v.degrees[1].source_betti, v.degrees[1].target_betti, v.degrees[1].induced_rank), (1, 0, 0));
    assert!(v.degrees[0].is_iso());
}

#[test]
fn horn_inclusion_passes() {
    let f = inclusion(standard(Shape::Horn(1), 2, 3).unwrap(), standard(Shape::Simplex, 2, 3).unwrap());
    assert!(we_witness(&f, 3).unwrap().passes());
}

#[test]
fn folding_the_circle_onto_an_edge_kills_the_loop() {
    // 2 ↦ 1 collapses the edge 1 → 2
    let to = standard(Shape::Simplex, 1, 2).unwrap();
    let f =
        SimplicialMap::from_keys(Arc::new(circle(2)), Arc::new(to), |_, key| key.iter().map(|&v| v.min(1)).collect())
            .unwrap();
    let v = we_witness(&f, 2).unwrap();
    assert_eq!(v.degrees[1].induced_rank, 0);
    assert_eq!(v.first_failure(), Some(1));
}

#[test]
fn beta_is_a_homology_iso_on_small_shapes() {
    for x in [standard(Shape::Simplex, 2, 2).unwrap(), circle(2), standard(Shape::Horn(1), 2, 2).unwrap()] {
        let b = beta(&x, 2).unwrap();
        let v = we_witness(&b, 2).unwrap();
        assert_eq!(v.valid_through, Some(1));
        assert!(v.passes(), "{v:?}");
    }
}

#[test]
fn double_functor_witness_uses_the_diagonal() {
    let (_, comparison) = crate::groth::spine_source(2).unwrap();
    let v = we_witness(&comparison, 2).unwrap();
    assert_eq!(v.degrees[0].source_betti, 1);
    assert_eq!(v.degrees[0].target_betti, 1);
}

#[test]
fn ring_names_round_trip() {
    for r in [Ring::Rationals, Ring::Integers, Ring::Mod2] {
        assert_eq!(r.to_string().parse::<Ring>().unwrap(), r);
    }
    assert!("r".parse::<Ring>().is_err());
}
