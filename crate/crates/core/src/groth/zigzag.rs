use std::sync::Arc;

use super::{grothendieck_dbl, DblDiagram};
use crate::cat::{chain_category, FinCat, FinFunctor};
use crate::dblcat::{h_embed, h_functor, DblFunctor, FinDblCat};
use crate::error::{Error, Result};

/// A shape whose only non-identity morphisms are the given arrows
/// `(label, source, target)`; no two of them compose.
pub fn zigzag_shape(objects: Vec<String>, arrows: Vec<(String, usize, usize)>) -> Result<FinCat> {
    if arrows.iter().any(|&(_, s, t)| s == t || arrows.iter().any(|&(_, s2, _)| s2 == t)) {
        return Err(Error::pre("zigzag arrows must not compose"));
    }
    let n = objects.len();
    let mut morphisms: Vec<(String, usize, usize)> =
        objects.iter().enumerate().map(|(i, l)| (format!("id_{l}"), i, i)).collect();
    morphisms.extend(arrows);
    FinCat::from_fn(objects, morphisms, (0..n).collect(), |g, f| Ok(if g < n { f } else { g }))
}

/// `H` of the monotone map `[m] → [n]` listed by its values.
fn h_map(m: usize, n: usize, values: &[usize]) -> Result<DblFunctor> {
    let (a, b) = (chain_category(m), chain_category(n));
    let poset = crate::cat::FinPoset::chain(n);
    let morphisms = (0..a.morphism_count())
        .map(|f| poset.morphism_of(values[a.src(f)], values[a.tgt(f)]).ok_or_else(|| Error::pre("map is not monotone")))
        .collect::<Result<Vec<_>>>()?;
    h_functor(&FinFunctor::new(Arc::new(a), Arc::new(b), values.to_vec(), morphisms)?)
}

fn arrow(s: usize, t: usize) -> (String, usize, usize) {
    (format!("{s}->{t}"), s, t)
}

/// The Grothendieck construction of `H[1] ← H[0] → H[1] ← ⋯ → H[1]`
/// (`n` copies of `H[1]` glued end to start) and its comparison map to
/// `H[n]`, which collapses every vertical.
pub fn spine_source(n: usize) -> Result<(FinDblCat, DblFunctor)> {
    if n < 2 {
        return Err(Error::pre("the spine needs n ≥ 2"));
    }
    // H[1] at even positions, H[0] at odd ones
    let count = 2 * n - 1;
    let objects: Vec<String> = (0..count).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, usize, usize)> =
        (0..n - 1).flat_map(|i| [arrow(2 * i + 1, 2 * i), arrow(2 * i + 1, 2 * i + 2)]).collect();
    let shape = Arc::new(zigzag_shape(objects, arrows.clone())?);
    let (h0, h1) = (Arc::new(h_embed(&chain_category(0))?), Arc::new(h_embed(&chain_category(1))?));
    let values = (0..count).map(|i| if i % 2 == 0 { h1.clone() } else { h0.clone() }).collect();
    let mut action: Vec<DblFunctor> =
        (0..count).map(|i| DblFunctor::identity(if i % 2 == 0 { h1.clone() } else { h0.clone() })).collect();
    for (_, s, t) in &arrows {
        // into the copy on the left the point is the target, on the right the source
        action.push(h_map(0, 1, &[if t < s { 1 } else { 0 }])?);
    }
    let d = DblDiagram::new(shape, values, action)?;
    let g = grothendieck_dbl(&d)?;
    let target = Arc::new(h_embed(&chain_category(n))?);
    let legs = (0..count)
        .map(|i| if i % 2 == 0 { h_map(1, n, &[i / 2, i / 2 + 1]) } else { h_map(0, n, &[i / 2 + 1]) })
        .collect::<Result<Vec<_>>>()?;
    let comparison = g.induced(&d, &target, &legs)?;
    Ok(((*g.dbl).clone(), comparison))
}

/// The Grothendieck construction of
/// `H[0] ← H[1] → H[3] ← H[1] → H[0]` with actions `!, d³d¹, d⁰d¹, !`, and
/// its map to `H[0]`.
pub fn completeness_source() -> Result<(FinDblCat, DblFunctor)> {
    let objects: Vec<String> = (0..5).map(|i| i.to_string()).collect();
    let arrows = vec![arrow(1, 0), arrow(1, 2), arrow(3, 2), arrow(3, 4)];
    let shape = Arc::new(zigzag_shape(objects, arrows)?);
    let h = |n: usize| h_embed(&chain_category(n)).map(Arc::new);
    let (h0, h1, h3) = (h(0)?, h(1)?, h(3)?);
    let values = vec![h0.clone(), h1.clone(), h3.clone(), h1.clone(), h0.clone()];
    let mut action: Vec<DblFunctor> = values.iter().map(|v| DblFunctor::identity(v.clone())).collect();
    // d³d¹ hits 0 and 2, d⁰d¹ hits 1 and 3
    action.push(h_map(1, 0, &[0, 0])?);
    action.push(h_map(1, 3, &[0, 2])?);
    action.push(h_map(1, 3, &[1, 3])?);
    action.push(h_map(1, 0, &[0, 0])?);
    let d = DblDiagram::new(shape, values.clone(), action)?;
    let g = grothendieck_dbl(&d)?;
    let legs = [0, 1, 3, 1, 0].iter().map(|&n| h_map(n, 0, &vec![0; n + 1])).collect::<Result<Vec<_>>>()?;
    let comparison = g.induced(&d, &h0, &legs)?;
    Ok(((*g.dbl).clone(), comparison))
}
