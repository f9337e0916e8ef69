//! Small hand-built structures used by tests, the CLI and the Python bindings.

use std::sync::Arc;

use crate::cat::{chain_category, discrete, FinCat, FinFunctor, FinPoset, PosetInclusion};
use crate::dblcat::{box_functor, box_product, DblFunctor, FinDblCat, SquareData, SquareSpec};
use crate::error::Result;
use crate::pushout::DblSievePushoutSpec;
use crate::sset::{csd2_inclusion, Shape};

/// Objects `0, 1, 2` with trivial verticals, horizontals `f: 0 → 1`,
/// `g: 1 → 2` and `gf`, and one extra square on each of `f, g, gf`
/// (`e`, `e'`, `E`) squaring to the identity. Horizontal pasting adds the
/// extra squares mod 2, so `e` next to `e'` is the identity on `gf`.
///
/// Its squares between a fixed boundary are not unique, which makes it a
/// good target for corruptions that keep every boundary intact.
pub fn parity_squares() -> FinDblCat {
    let vertical = Arc::new(discrete(vec!["0".into(), "1".into(), "2".into()]));
    let horizontals: Vec<(String, usize, usize)> = vec![
        ("1_0".into(), 0, 0),
        ("1_1".into(), 1, 1),
        ("1_2".into(), 2, 2),
        ("f".into(), 0, 1),
        ("g".into(), 1, 2),
        ("gf".into(), 0, 2),
    ];
    let mut squares: Vec<SquareSpec> =
        horizontals.iter().enumerate().map(|(h, (l, s, t))| SquareSpec::new(format!("1_{l}"), h, h, *s, *t)).collect();
    for (label, h) in [("e", 3), ("e'", 4), ("E", 5)] {
        let (_, s, t) = horizontals[h];
        squares.push(SquareSpec::new(label, h, h, s, t));
    }
    // square q sits on horizontal `on(q)` with parity `par(q)`
    let on = |q: usize| if q < 6 { q } else { q - 3 };
    let par = |q: usize| usize::from(q >= 6);
    let square = |h: usize, p: usize| if p == 0 { h } else { h + 3 };
    let hcomp = |h1: usize, h2: usize| match (h1, h2) {
        (x, y) if x < 3 => y,
        (x, y) if y < 3 => x,
        (3, 4) => 5,
        _ => unreachable!("only f then g composes non-trivially"),
    };
    let data = SquareData {
        vertical,
        h_identities: vec![0, 1, 2],
        v_identity_squares: (0..6).collect(),
        h_identity_squares: vec![0, 1, 2],
        horizontals,
        squares,
    };
    FinDblCat::from_squares(
        data,
        |u, l| Ok(square(on(u), par(u) ^ par(l))),
        |h1, h2| Ok(hcomp(h1, h2)),
        |l, r| Ok(square(hcomp(on(l), on(r)), par(l) ^ par(r))),
    )
    .expect("parity squares form a double category")
}

/// `C = [0]`, `P = {0} ⊆ Q = [1]`, `A = [1] ⊠ [0]` and `F = d¹ ⊠ id`: a
/// horizontal arrow `0 → 1` with a new vertical arrow glued below `0`.
/// Every level of its horizontal nerve is some isolated points plus one arrow.
pub fn glued_vertical_pushout() -> DblSievePushoutSpec {
    let point = Arc::new(chain_category(0));
    let arrow = Arc::new(chain_category(1));
    let q = Arc::new(FinPoset::chain(1));
    let inc = PosetInclusion::induced(q, vec![0]).expect("initial segment");
    let p_cat = Arc::new(inc.sub().as_category().expect("one element"));
    // d¹ misses 1
    let d1 = FinFunctor::new(point.clone(), arrow.clone(), vec![0], vec![arrow.identity(0)]).expect("coface");
    let f = box_functor(&d1, &FinFunctor::identity(p_cat)).expect("box of functors");
    DblSievePushoutSpec::new(point, inc, f).expect("weakly solid sieve")
}

fn identity_box_spec(c: FinCat, inc: PosetInclusion) -> Result<DblSievePushoutSpec> {
    let c = Arc::new(c);
    let p_cat = Arc::new(inc.sub().as_category()?);
    let f = box_functor(&FinFunctor::identity(c.clone()), &FinFunctor::identity(p_cat))?;
    DblSievePushoutSpec::new(c, inc, f)
}

pub const PUSHOUT_SPEC_NAMES: [&str; 6] =
    ["glued-vertical", "csd2-edge", "csd2-triangle", "csd2-horn", "no-new-cells", "parity-arrow"];

/// One of the specs named in [`PUSHOUT_SPEC_NAMES`], or `None` for an
/// unknown name.
pub fn pushout_spec(name: &str) -> Result<Option<DblSievePushoutSpec>> {
    let spec = match name {
        "glued-vertical" => glued_vertical_pushout(),
        "csd2-edge" => identity_box_spec(chain_category(1), csd2_inclusion(Shape::Boundary, 1)?)?,
        "csd2-triangle" => identity_box_spec(chain_category(0), csd2_inclusion(Shape::Boundary, 2)?)?,
        "csd2-horn" => identity_box_spec(chain_category(1), csd2_inclusion(Shape::Horn(0), 2)?)?,
        "no-new-cells" => identity_box_spec(chain_category(1), PosetInclusion::identity(Arc::new(FinPoset::chain(1))))?,
        "parity-arrow" => {
            // the arrow 0 → 1 sent to `f` in the parity squares, glued along {0} ⊆ [2]
            let parity = Arc::new(parity_squares());
            let inc = PosetInclusion::induced(Arc::new(FinPoset::chain(2)), vec![0])?;
            let source = Arc::new(box_product(&chain_category(1), &inc.sub().as_category()?)?);
            let f = DblFunctor::from_maps(source, parity, vec![0, 1], vec![0, 1], vec![0, 3, 1], vec![0, 3, 1])?;
            DblSievePushoutSpec::new(Arc::new(chain_category(1)), inc, f)?
        }
        _ => return Ok(None),
    };
    Ok(Some(spec))
}

/// Every spec in [`PUSHOUT_SPEC_NAMES`]: pushouts along weakly solid
/// sieves used to exercise the nerve comparison. The first is
/// [`glued_vertical_pushout`].
pub fn pushout_specs() -> Vec<(&'static str, DblSievePushoutSpec)> {
    PUSHOUT_SPEC_NAMES.iter().map(|&n| (n, pushout_spec(n).expect("fixture builds").expect("known name"))).collect()
}

pub const PARITY_CORRUPTIONS: [&str; 5] = ["interchange", "unit", "source", "target", "identity"];

/// [`parity_squares`] with one structure map entry changed. Each name
/// breaks the law it is named after: `e | e' ↦ E`, `1_{id_0} | e ↦ 1_f`,
/// `s(e) = id_1`, `t(e') = id_0` and `i(id_1) = e`.
pub fn corrupted_parity(name: &str) -> Option<FinDblCat> {
    let mut a = parity_squares();
    let sq = |l: &str| a.a1().find_morphism(l).expect("parity square");
    let vert = |l: &str| a.a0().find_morphism(l).expect("parity vertical");
    let (e, e2, big, id0, id1) = (sq("e"), sq("e'"), sq("E"), vert("id_0"), vert("id_1"));
    let unit = a.i().on_morphism(id0);
    let id_f = a.a1().identity(a.a1().find_object("f").expect("horizontal f"));
    match name {
        "interchange" => a.override_hpaste(e, e2, big).ok()?,
        "unit" => a.override_hpaste(unit, e, id_f).ok()?,
        "source" => a.override_s(e, id1),
        "target" => a.override_t(e2, id0),
        "identity" => a.override_i(id1, e),
        _ => return None,
    }
    Some(a)
}
