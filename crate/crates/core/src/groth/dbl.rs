use std::collections::HashMap;
use std::sync::Arc;

use super::{grothendieck_cat, Diagram, Grothendieck};
use crate::cat::FinCat;
use crate::dblcat::{DblFunctor, FinDblCat, SquareData, SquareSpec};
use crate::error::{Error, Result};

fn same(f: &DblFunctor, g: &DblFunctor) -> bool {
    super::same_maps(f.f0(), g.f0()) && super::same_maps(f.f1(), g.f1())
}

/// A functor `J → DblCat`.
#[derive(Clone, Debug)]
pub struct DblDiagram {
    shape: Arc<FinCat>,
    values: Vec<Arc<FinDblCat>>,
    action: Vec<DblFunctor>,
}

impl DblDiagram {
    pub fn new(shape: Arc<FinCat>, values: Vec<Arc<FinDblCat>>, action: Vec<DblFunctor>) -> Result<Self> {
        if values.len() != shape.object_count() || action.len() != shape.morphism_count() {
            return Err(Error::invalid("diagram does not cover its shape"));
        }
        for (s, f) in action.iter().enumerate() {
            if **f.source() != *values[shape.src(s)] || **f.target() != *values[shape.tgt(s)] {
                return Err(Error::invalid(format!("action of {} has the wrong ends", shape.morphism_label(s))));
            }
        }
        for j in 0..shape.object_count() {
            if !same(&action[shape.identity(j)], &DblFunctor::identity(values[j].clone())) {
                return Err(Error::invalid(format!("identity of {} acts non-trivially", shape.object_label(j))));
            }
        }
        for (g, f) in shape.composable_pairs() {
            let gf = shape.compose(g, f).expect("composable");
            if !same(&action[f].then(&action[g])?, &action[gf]) {
                return Err(Error::invalid(format!(
                    "action does not preserve ({}, {})",
                    shape.morphism_label(g),
                    shape.morphism_label(f)
                )));
            }
        }
        Ok(DblDiagram { shape, values, action })
    }

    pub fn constant(shape: Arc<FinCat>, value: Arc<FinDblCat>) -> Self {
        let values = vec![value.clone(); shape.object_count()];
        let action = vec![DblFunctor::identity(value); shape.morphism_count()];
        DblDiagram { shape, values, action }
    }

    pub fn shape(&self) -> &Arc<FinCat> {
        &self.shape
    }

    pub fn value(&self, j: usize) -> &Arc<FinDblCat> {
        &self.values[j]
    }

    pub fn action(&self, s: usize) -> &DblFunctor {
        &self.action[s]
    }

    /// The diagram of vertical categories `j ↦ (F j)_0`.
    pub fn vertical_part(&self) -> Diagram {
        Diagram {
            shape: self.shape.clone(),
            values: self.values.iter().map(|v| v.a0().clone()).collect(),
            action: self.action.iter().map(|f| f.f0().clone()).collect(),
        }
    }
}

/// `∫_J F` for a diagram of double categories, with the data behind its cells.
#[derive(Clone, Debug)]
pub struct DblGrothendieck {
    pub dbl: Arc<FinDblCat>,
    /// objects and verticals, from the vertical parts
    pub vertical: Grothendieck,
    /// `(j, f)` for a horizontal `f` of `F j`
    pub horizontals: Vec<(usize, usize)>,
    /// `(s, f, θ)`: `f` a horizontal of `F j`, `θ` a square of `F j'` with top `Fs(f)`
    pub squares: Vec<(usize, usize, usize)>,
}

impl DblGrothendieck {
    /// The double functor out of `∫` induced by a cocone `F j → T`,
    /// collapsing every vertical `(s, u)` onto `u`'s image.
    pub fn induced(&self, d: &DblDiagram, target: &Arc<FinDblCat>, legs: &[DblFunctor]) -> Result<DblFunctor> {
        let shape = &d.shape;
        for s in 0..shape.morphism_count() {
            if !same(&d.action[s].then(&legs[shape.tgt(s)])?, &legs[shape.src(s)]) {
                return Err(Error::pre(format!("legs do not form a cocone at {}", shape.morphism_label(s))));
            }
        }
        let g = &self.vertical;
        DblFunctor::from_maps(
            self.dbl.clone(),
            target.clone(),
            g.objects.iter().map(|&(j, x)| legs[j].on_object(x)).collect(),
            g.morphisms.iter().map(|&(s, _, u)| legs[shape.tgt(s)].on_vertical(u)).collect(),
            self.horizontals.iter().map(|&(j, f)| legs[j].on_horizontal(f)).collect(),
            self.squares.iter().map(|&(s, _, q)| legs[shape.tgt(s)].on_square(q)).collect(),
        )
    }
}

/// Objects and verticals as in `∫` of the vertical parts; horizontals stay
/// in their fibre; a square over `s: j → j'` is a square of `F j'` whose top
/// is `Fs` of a horizontal of `F j`.
pub fn grothendieck_dbl(d: &DblDiagram) -> Result<DblGrothendieck> {
    let shape = &d.shape;
    let vertical = grothendieck_cat(&d.vertical_part())?;
    let horizontals: Vec<(usize, usize)> =
        (0..shape.object_count()).flat_map(|j| (0..d.values[j].horizontal_count()).map(move |f| (j, f))).collect();
    let h_index: HashMap<(usize, usize), usize> = horizontals.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut squares = Vec::new();
    for s in 0..shape.morphism_count() {
        let (j, j2) = (shape.src(s), shape.tgt(s));
        let target = &d.values[j2];
        for f in 0..d.values[j].horizontal_count() {
            for &q in target.a1().outgoing(d.action[s].on_horizontal(f)) {
                squares.push((s, f, q));
            }
        }
        crate::limits::check(|| "Grothendieck construction squares".into(), squares.len())?;
    }
    let s_index: HashMap<(usize, usize, usize), usize> = squares.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let vert = |s: usize, x: usize, u: usize| vertical.morphism_of(s, x, u).expect("vertical of ∫");
    let data = SquareData {
        vertical: vertical.cat.clone(),
        horizontals: horizontals
            .iter()
            .map(|&(j, f)| {
                let v = &d.values[j];
                (
                    format!("({},{})", shape.object_label(j), v.horizontal_label(f)),
                    vertical.object_of(j, v.h_source(f)).unwrap(),
                    vertical.object_of(j, v.h_target(f)).unwrap(),
                )
            })
            .collect(),
        h_identities: vertical.objects.iter().map(|&(j, x)| h_index[&(j, d.values[j].h_identity(x))]).collect(),
        squares: squares
            .iter()
            .map(|&(s, f, q)| {
                let (j, j2) = (shape.src(s), shape.tgt(s));
                let v = &d.values[j2];
                let (_, bottom, l, r) = v.boundary(q);
                let src = &d.values[j];
                SquareSpec::new(
                    format!("({},{})", shape.morphism_label(s), v.square_label(q)),
                    h_index[&(j, f)],
                    h_index[&(j2, bottom)],
                    vert(s, src.h_source(f), l),
                    vert(s, src.h_target(f), r),
                )
            })
            .collect(),
        v_identity_squares: horizontals
            .iter()
            .map(|&(j, f)| s_index[&(shape.identity(j), f, d.values[j].a1().identity(f))])
            .collect(),
        h_identity_squares: vertical
            .morphisms
            .iter()
            .map(|&(s, x, u)| {
                let j = shape.src(s);
                s_index[&(s, d.values[j].h_identity(x), d.values[shape.tgt(s)].i().on_morphism(u))]
            })
            .collect(),
    };
    let missing = || Error::invalid("composite square missing");
    let dbl = FinDblCat::from_squares(
        data,
        |upper, lower| {
            let ((s, f, q), (s2, _, q2)) = (squares[upper], squares[lower]);
            let v = &d.values[shape.tgt(s2)];
            let moved = d.action[s2].on_square(q);
            let q21 = v.vpaste(moved, q2).ok_or_else(missing)?;
            s_index.get(&(shape.compose(s2, s).ok_or_else(missing)?, f, q21)).copied().ok_or_else(missing)
        },
        |h1, h2| {
            let ((j, f1), (_, f2)) = (horizontals[h1], horizontals[h2]);
            let f = d.values[j].hcompose(f1, f2).ok_or_else(missing)?;
            Ok(h_index[&(j, f)])
        },
        |l, r| {
            let ((s, f1, q1), (_, f2, q2)) = (squares[l], squares[r]);
            let (j, j2) = (shape.src(s), shape.tgt(s));
            let f = d.values[j].hcompose(f1, f2).ok_or_else(missing)?;
            let q = d.values[j2].hpaste(q1, q2).ok_or_else(missing)?;
            s_index.get(&(s, f, q)).copied().ok_or_else(missing)
        },
    )?;
    Ok(DblGrothendieck { dbl: Arc::new(dbl), vertical, horizontals, squares })
}
