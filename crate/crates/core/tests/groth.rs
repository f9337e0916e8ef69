mod common;

use std::sync::Arc;

use dblcat::cat::{chain_category, iso_check, product, FinCat, FinFunctor};
use dblcat::dblcat::{h_embed, horizontal_nerve, HorizontalNerve};
use dblcat::groth::{
    check_pullback_preservation, completeness_source, grothendieck_cat, grothendieck_dbl, spine_source, zigzag_shape,
    DblDiagram, Diagram,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn constant_point_gives_the_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let j = common::random_shape(&mut rng, 5);
        let g = grothendieck_cat(&Diagram::constant(j.clone(), Arc::new(chain_category(0)))).unwrap();
        assert!(iso_check(&g.cat, &j).is_found());
        assert!(g.projection(&j).unwrap().is_bijective());
    }
}

#[test]
fn constant_diagram_gives_a_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..3 {
        let j = common::random_shape(&mut rng, 4);
        let c = Arc::new(chain_category(k));
        let g = grothendieck_cat(&Diagram::constant(j.clone(), c.clone())).unwrap();
        assert!(iso_check(&g.cat, &Arc::new(product(&j, &c).unwrap())).is_found());
    }
}

#[test]
fn point_into_arrow() {
    // J = [1], F(0) = [0], F(1) = [1], action d¹
    let j = Arc::new(chain_category(1));
    let (p, a) = (Arc::new(chain_category(0)), Arc::new(chain_category(1)));
    let d1 = FinFunctor::new(p.clone(), a.clone(), vec![0], vec![0]).unwrap();
    let d = Diagram::new(j, vec![p.clone(), a.clone()], vec![FinFunctor::identity(p), d1, FinFunctor::identity(a)])
        .unwrap();
    let g = grothendieck_cat(&d).unwrap();
    // oracle: pairs (s, u) with u out of Fs(x): identities 1 + 3, plus s = 0 → 1 from 0 ↦ 0: two
    assert_eq!((g.cat.object_count(), g.cat.morphism_count()), (3, 6));
}

#[test]
fn counts_match_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let c = common::random_cospan(&mut rng);
        let d = &c.d1;
        let g = grothendieck_cat(d).unwrap();
        let shape = d.shape();
        let objects: usize = (0..shape.object_count()).map(|j| d.value(j).object_count()).sum();
        let morphisms: usize = (0..shape.morphism_count())
            .map(|s| {
                let (j, j2) = (shape.src(s), shape.tgt(s));
                (0..d.value(j).object_count())
                    .map(|x| d.value(j2).outgoing(d.action(s).on_object(x)).len())
                    .sum::<usize>()
            })
            .sum();
        assert_eq!((g.cat.object_count(), g.cat.morphism_count()), (objects, morphisms));
        assert!(g.projection(shape).unwrap().validate().is_empty());
    }
}

#[test]
fn random_cospans_preserve_pullbacks() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let c = common::random_cospan(&mut rng);
        let v = check_pullback_preservation(&c.d1, &c.d2, &c.d3, &c.alpha, &c.beta).unwrap();
        assert!(v.isomorphic, "{:?}", v.counterexample);
    }
}

#[test]
fn non_natural_cospans_are_rejected() {
    let j = Arc::new(chain_category(1));
    let a = Arc::new(chain_category(1));
    let d = Diagram::constant(j, a.clone());
    let flip = FinFunctor::new(a.clone(), a.clone(), vec![1, 1], vec![2, 2, 2]).unwrap();
    let alpha = vec![FinFunctor::identity(a.clone()), flip];
    assert!(check_pullback_preservation(&d, &d, &d, &alpha, &alpha).is_err());
}

#[test]
fn constant_arrow_over_arrow_is_a_box() {
    let j = Arc::new(chain_category(1));
    let h1 = Arc::new(h_embed(&chain_category(1)).unwrap());
    let g = grothendieck_dbl(&DblDiagram::constant(j, h1)).unwrap();
    assert!(g.dbl.validate().is_empty());
    // one non-degenerate square: the arrow moved along J
    assert_eq!(g.dbl.counts(), (4, 2, 2, 1));
}

#[test]
fn diagram_over_a_point_is_its_value() {
    let j = Arc::new(chain_category(0));
    let a = Arc::new(dblcat::fixtures::parity_squares());
    let g = grothendieck_dbl(&DblDiagram::constant(j, a.clone())).unwrap();
    assert_eq!(g.dbl.counts(), a.counts());
    assert_eq!(g.dbl.square_count(), a.square_count());
}

#[test]
fn spine_sources() {
    let (a, f) = spine_source(2).unwrap();
    assert_eq!(a.counts(), (5, 2, 2, 0));
    assert!(f.collapses_verticals());
    for n in 2..=6 {
        let (a, f) = spine_source(n).unwrap();
        // fibres: n copies of [1] and n - 1 points
        assert_eq!(a.object_count(), 2 * n + (n - 1));
        assert!(a.validate().is_empty() && f.validate().is_empty() && f.collapses_verticals());
    }
    assert!(spine_source(1).is_err());
}

#[test]
fn completeness_source_counts() {
    let (a, f) = completeness_source().unwrap();
    // fibres [0], [1], [3], [1], [0]
    assert_eq!(a.object_count(), 1 + 2 + 4 + 2 + 1);
    assert_eq!(a.counts(), (10, 8, 8, 4));
    assert!(f.collapses_verticals() && f.validate().is_empty());
}

#[test]
fn zigzag_arrows_must_not_compose() {
    let o: Vec<String> = (0..3).map(|i| i.to_string()).collect();
    assert!(zigzag_shape(o.clone(), vec![("a".into(), 0, 1), ("b".into(), 1, 2)]).is_err());
    assert!(zigzag_shape(o, vec![("a".into(), 1, 0), ("b".into(), 1, 2)]).is_ok());
}

/// `N^h(∫F)_m ≅ ∫ (j ↦ N^h(F j)_m)`.
#[test]
fn horizontal_nerve_commutes_with_grothendieck() {
    let (j, arrows) = (3, vec![("a".to_string(), 1, 0), ("b".to_string(), 1, 2)]);
    let shape = Arc::new(zigzag_shape((0..j).map(|i| i.to_string()).collect(), arrows).unwrap());
    let h2 = Arc::new(h_embed(&chain_category(2)).unwrap());
    let par = Arc::new(dblcat::fixtures::parity_squares());
    // both outer values are the parity squares, the middle one H[2] mapped identically on objects
    let to_par = dblcat::dblcat::DblFunctor::from_maps(
        h2.clone(),
        par.clone(),
        vec![0, 1, 2],
        vec![0, 1, 2],
        vec![0, 3, 5, 1, 4, 2],
        vec![0, 3, 5, 1, 4, 2],
    )
    .unwrap();
    let values = vec![par.clone(), h2.clone(), par.clone()];
    let mut action: Vec<_> = values.iter().map(|v| dblcat::dblcat::DblFunctor::identity(v.clone())).collect();
    action.push(to_par.clone());
    action.push(to_par);
    let d = DblDiagram::new(shape.clone(), values.clone(), action).unwrap();
    let g = grothendieck_dbl(&d).unwrap();
    assert!(g.dbl.validate().is_empty());
    let m_max = 2;
    let nerves: Vec<HorizontalNerve> = values.iter().map(|v| horizontal_nerve(v, m_max).unwrap()).collect();
    let total = horizontal_nerve(&g.dbl, m_max).unwrap();
    for m in 0..=m_max {
        let level_values: Vec<Arc<FinCat>> = nerves.iter().map(|n| n.levels[m].cat.clone()).collect();
        let level_action: Vec<FinFunctor> = (0..shape.morphism_count())
            .map(|s| {
                HorizontalNerve::map_levels(d.action(s), &nerves[shape.src(s)], &nerves[shape.tgt(s)]).unwrap()[m]
                    .clone()
            })
            .collect();
        let levelwise = grothendieck_cat(&Diagram::new(shape.clone(), level_values, level_action).unwrap()).unwrap();
        assert!(iso_check(&total.levels[m].cat, &levelwise.cat).is_found(), "level {m}");
    }
}
