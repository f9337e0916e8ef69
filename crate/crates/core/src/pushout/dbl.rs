//! Pushouts of double categories along `C ⊠ P → C ⊠ Q` for a weakly solid
//! sieve `P ⊆ Q`.
//!
//! Formal verticals `a → F(c, p) → (c, q)` and formal squares `θ` pasted
//! with `(f, p ≤ q)` are stored at `p = top(q)`, the greatest element of `P`
//! below `q`, which exists by weak solidity. Sliding any presentation up to
//! `top(q)` is constant on the classes the pushout identifies, so these
//! normal forms are in bijection with the cells.

use std::collections::HashMap;
use std::sync::Arc;

use super::cat::SievePushoutSpec;
use crate::cat::{FinCat, PosetInclusion};
use crate::dblcat::{box_product, DblFunctor, FinDblCat, SquareData, SquareSpec};
use crate::error::{Error, Result};

/// A double functor `F: C ⊠ P → A` with `P ⊆ Q` a weakly solid sieve.
///
/// The source of `F` must be `box_product(C, P)`.
#[derive(Clone, Debug)]
pub struct DblSievePushoutSpec {
    pub c: Arc<FinCat>,
    pub inc: PosetInclusion,
    pub f: DblFunctor,
}

impl DblSievePushoutSpec {
    pub fn new(c: Arc<FinCat>, inc: PosetInclusion, f: DblFunctor) -> Result<Self> {
        let spec = DblSievePushoutSpec { c, inc, f };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        if !self.inc.is_weakly_solid()? {
            return Err(Error::pre("P ⊆ Q is not weakly solid"));
        }
        if **self.f.source() != box_product(&self.c, &self.inc.sub().as_category()?)? {
            return Err(Error::pre("F must start at C ⊠ P"));
        }
        Ok(())
    }

    pub fn a(&self) -> &Arc<FinDblCat> {
        self.f.target()
    }

    pub fn f_object(&self, c: usize, p: usize) -> usize {
        self.f.on_object(c * self.inc.sub().len() + p)
    }

    pub fn f_vertical(&self, c: usize, p: usize, p2: usize) -> usize {
        let sub = self.inc.sub();
        self.f.on_vertical(c * sub.relation_count() + sub.morphism_of(p, p2).expect("p ≤ p2"))
    }

    pub fn f_horizontal(&self, f: usize, p: usize) -> usize {
        self.f.on_horizontal(f * self.inc.sub().len() + p)
    }

    pub fn f_square(&self, f: usize, p: usize, p2: usize) -> usize {
        let sub = self.inc.sub();
        self.f.on_square(f * sub.relation_count() + sub.morphism_of(p, p2).expect("p ≤ p2"))
    }

    /// `C ⊠ Q`
    pub fn c_box_q(&self) -> Result<FinDblCat> {
        box_product(&self.c, &self.inc.ambient().as_category()?)
    }

    /// The vertical part: `A0 ← Ob C × P → Ob C × Q`.
    pub fn vertical_spec(&self) -> Result<SievePushoutSpec> {
        SievePushoutSpec::new(self.c.object_labels().to_vec(), self.inc.clone(), self.f.f0().clone())
    }
}

/// Origin of a vertical morphism of the pushout. `q` indexes the ambient
/// poset; formal cells live at the greatest sub-element below `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerticalCell {
    FromA(usize),
    Adjoined { c: usize, q: usize, q2: usize },
    Formal { c: usize, q: usize, alpha: usize },
}

/// Origin of a square of the pushout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareCell {
    FromA(usize),
    Adjoined { f: usize, q: usize, q2: usize },
    Formal { f: usize, q: usize, theta: usize },
}

#[derive(Clone, Debug)]
pub struct DblPushout {
    pub dbl: Arc<FinDblCat>,
    /// `A → pushout`
    pub from_a: DblFunctor,
    /// `C ⊠ Q → pushout`
    pub from_cq: DblFunctor,
    pub verticals: Vec<VerticalCell>,
    pub squares: Vec<SquareCell>,
}

/// The pushout of `A ← C ⊠ P → C ⊠ Q` with both comparison double functors.
pub fn pushout_dbl_box_sieve(spec: &DblSievePushoutSpec) -> Result<DblPushout> {
    spec.check()?;
    let a = spec.a().clone();
    let c = &spec.c;
    let (sub, amb) = (spec.inc.sub(), spec.inc.ambient());
    let top = spec.inc.greatest_below_all().expect("weakly solid");
    let comp = spec.inc.complement();
    let nc = comp.len();
    let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let (a0, a1) = (a.a0().clone(), a.a1().clone());
    let obj = |x: usize, q: usize| a.object_count() + x * nc + pos[&q];
    let hor = |f: usize, q: usize| a.horizontal_count() + f * nc + pos[&q];
    let missing = || Error::invalid("pushout composite missing");

    // verticals
    let mut verticals: Vec<VerticalCell> = (0..a.vertical_count()).map(VerticalCell::FromA).collect();
    for x in 0..c.object_count() {
        for &q in &comp {
            for &q2 in &comp {
                if amb.leq(q, q2) {
                    verticals.push(VerticalCell::Adjoined { c: x, q, q2 });
                }
            }
        }
    }
    for x in 0..c.object_count() {
        for &q in &comp {
            if let Some(p) = top[q] {
                for &alpha in a0.incoming(spec.f_object(x, p)) {
                    verticals.push(VerticalCell::Formal { c: x, q, alpha });
                }
            }
        }
    }
    let v_index: HashMap<VerticalCell, usize> = verticals.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut objects: Vec<String> = a0.object_labels().to_vec();
    for x in 0..c.object_count() {
        for &q in &comp {
            objects.push(format!("({},{})", c.object_label(x), amb.label(q)));
        }
    }
    let v_specs = verticals
        .iter()
        .map(|v| match *v {
            VerticalCell::FromA(m) => (a0.morphism_label(m).to_string(), a0.src(m), a0.tgt(m)),
            VerticalCell::Adjoined { c: x, q, q2 } => {
                (format!("({},{}<={})", c.object_label(x), amb.label(q), amb.label(q2)), obj(x, q), obj(x, q2))
            }
            VerticalCell::Formal { c: x, q, alpha } => (
                format!(
                    "({},{}<={})*{}",
                    c.object_label(x),
                    sub.label(top[q].unwrap()),
                    amb.label(q),
                    a0.morphism_label(alpha)
                ),
                a0.src(alpha),
                obj(x, q),
            ),
        })
        .collect();
    let v_identities = (0..a.object_count())
        .map(|x| a0.identity(x))
        .chain(
            (0..c.object_count())
                .flat_map(|x| comp.iter().map(move |&q| (x, q)))
                .map(|(x, q)| v_index[&VerticalCell::Adjoined { c: x, q, q2: q }]),
        )
        .collect();
    let vertical = Arc::new(FinCat::from_fn(objects, v_specs, v_identities, |g, f| {
        let cell = match (verticals[g], verticals[f]) {
            (VerticalCell::FromA(g), VerticalCell::FromA(f)) => {
                VerticalCell::FromA(a0.compose(g, f).ok_or_else(missing)?)
            }
            (VerticalCell::Formal { c, q, alpha }, VerticalCell::FromA(f)) => {
                VerticalCell::Formal { c, q, alpha: a0.compose(alpha, f).ok_or_else(missing)? }
            }
            (VerticalCell::Adjoined { q2, .. }, VerticalCell::Formal { c, q, alpha }) => {
                let slide = spec.f_vertical(c, top[q].unwrap(), top[q2].unwrap());
                VerticalCell::Formal { c, q: q2, alpha: a0.compose(slide, alpha).ok_or_else(missing)? }
            }
            (VerticalCell::Adjoined { q2, .. }, VerticalCell::Adjoined { c, q, .. }) => {
                VerticalCell::Adjoined { c, q, q2 }
            }
            _ => return Err(missing()),
        };
        v_index.get(&cell).copied().ok_or_else(missing)
    })?);

    // horizontals
    let mut horizontals: Vec<(String, usize, usize)> =
        (0..a.horizontal_count()).map(|h| (a.horizontal_label(h).to_string(), a.h_source(h), a.h_target(h))).collect();
    for f in 0..c.morphism_count() {
        for &q in &comp {
            horizontals.push((
                format!("({},{})", c.morphism_label(f), amb.label(q)),
                obj(c.src(f), q),
                obj(c.tgt(f), q),
            ));
        }
    }
    let h_identities: Vec<usize> = (0..a.object_count())
        .map(|x| a.h_identity(x))
        .chain((0..c.object_count()).flat_map(|x| comp.iter().map(move |&q| hor(c.identity(x), q))))
        .collect();
    let n_ha = a.horizontal_count();
    // (f, q) for an adjoined horizontal
    let adjoined_h = |h: usize| {
        let k = h - n_ha;
        (k / nc, comp[k % nc])
    };

    // squares
    let mut squares: Vec<SquareCell> = (0..a.square_count()).map(SquareCell::FromA).collect();
    for f in 0..c.morphism_count() {
        for &q in &comp {
            for &q2 in &comp {
                if amb.leq(q, q2) {
                    squares.push(SquareCell::Adjoined { f, q, q2 });
                }
            }
        }
    }
    for f in 0..c.morphism_count() {
        for &q in &comp {
            if let Some(p) = top[q] {
                for &theta in a1.incoming(spec.f_horizontal(f, p)) {
                    squares.push(SquareCell::Formal { f, q, theta });
                }
            }
        }
    }
    let s_index: HashMap<SquareCell, usize> = squares.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let square_specs = squares
        .iter()
        .map(|s| match *s {
            SquareCell::FromA(m) => {
                let (t, b, l, r) = a.boundary(m);
                SquareSpec::new(a1.morphism_label(m), t, b, l, r)
            }
            SquareCell::Adjoined { f, q, q2 } => SquareSpec::new(
                format!("({},{}<={})", c.morphism_label(f), amb.label(q), amb.label(q2)),
                hor(f, q),
                hor(f, q2),
                v_index[&VerticalCell::Adjoined { c: c.src(f), q, q2 }],
                v_index[&VerticalCell::Adjoined { c: c.tgt(f), q, q2 }],
            ),
            SquareCell::Formal { f, q, theta } => {
                let (t, _, l, r) = a.boundary(theta);
                SquareSpec::new(
                    format!(
                        "({},{}<={})*{}",
                        c.morphism_label(f),
                        sub.label(top[q].unwrap()),
                        amb.label(q),
                        a1.morphism_label(theta)
                    ),
                    t,
                    hor(f, q),
                    v_index[&VerticalCell::Formal { c: c.src(f), q, alpha: l }],
                    v_index[&VerticalCell::Formal { c: c.tgt(f), q, alpha: r }],
                )
            }
        })
        .collect();
    let v_identity_squares = (0..horizontals.len())
        .map(|h| {
            if h < n_ha {
                a1.identity(h)
            } else {
                let (f, q) = adjoined_h(h);
                s_index[&SquareCell::Adjoined { f, q, q2: q }]
            }
        })
        .collect();
    let h_identity_squares = verticals
        .iter()
        .map(|v| match *v {
            VerticalCell::FromA(m) => a.i().on_morphism(m),
            VerticalCell::Adjoined { c: x, q, q2 } => s_index[&SquareCell::Adjoined { f: c.identity(x), q, q2 }],
            VerticalCell::Formal { c: x, q, alpha } => {
                s_index[&SquareCell::Formal { f: c.identity(x), q, theta: a.i().on_morphism(alpha) }]
            }
        })
        .collect();
    let data = SquareData {
        vertical,
        horizontals,
        h_identities,
        squares: square_specs,
        v_identity_squares,
        h_identity_squares,
    };
    let find = |cell: SquareCell| s_index.get(&cell).copied().ok_or_else(missing);
    let dbl = FinDblCat::from_squares(
        data,
        |upper, lower| match (squares[upper], squares[lower]) {
            (SquareCell::FromA(u), SquareCell::FromA(l)) => {
                find(SquareCell::FromA(a.vpaste(u, l).ok_or_else(missing)?))
            }
            (SquareCell::FromA(u), SquareCell::Formal { f, q, theta }) => {
                find(SquareCell::Formal { f, q, theta: a.vpaste(u, theta).ok_or_else(missing)? })
            }
            (SquareCell::Formal { f, q, theta }, SquareCell::Adjoined { q2, .. }) => {
                let slide = spec.f_square(f, top[q].unwrap(), top[q2].unwrap());
                find(SquareCell::Formal { f, q: q2, theta: a.vpaste(theta, slide).ok_or_else(missing)? })
            }
            (SquareCell::Adjoined { f, q, .. }, SquareCell::Adjoined { q2, .. }) => {
                find(SquareCell::Adjoined { f, q, q2 })
            }
            _ => Err(missing()),
        },
        |h1, h2| match (h1 < n_ha, h2 < n_ha) {
            (true, true) => a.hcompose(h1, h2).ok_or_else(missing),
            (false, false) => {
                let ((f1, q), (f2, _)) = (adjoined_h(h1), adjoined_h(h2));
                Ok(hor(c.compose(f2, f1).ok_or_else(missing)?, q))
            }
            _ => Err(missing()),
        },
        |l, r| match (squares[l], squares[r]) {
            (SquareCell::FromA(l), SquareCell::FromA(r)) => {
                find(SquareCell::FromA(a.hpaste(l, r).ok_or_else(missing)?))
            }
            (SquareCell::Adjoined { f: f1, q, q2 }, SquareCell::Adjoined { f: f2, .. }) => {
                find(SquareCell::Adjoined { f: c.compose(f2, f1).ok_or_else(missing)?, q, q2 })
            }
            (SquareCell::Formal { f: f1, q, theta: t1 }, SquareCell::Formal { f: f2, theta: t2, .. }) => {
                find(SquareCell::Formal {
                    f: c.compose(f2, f1).ok_or_else(missing)?,
                    q,
                    theta: a.hpaste(t1, t2).ok_or_else(missing)?,
                })
            }
            _ => Err(missing()),
        },
    )?;
    let dbl = Arc::new(dbl);

    let from_a = DblFunctor::from_maps(
        a.clone(),
        dbl.clone(),
        (0..a.object_count()).collect(),
        (0..a.vertical_count()).collect(),
        (0..a.horizontal_count()).collect(),
        (0..a.square_count()).collect(),
    )?;

    let cq = Arc::new(spec.c_box_q()?);
    let pre = spec.inc.preimages();
    let nmq = amb.relation_count();
    let amb_cat = amb.as_category()?;
    let mut objects = Vec::with_capacity(cq.object_count());
    for x in 0..c.object_count() {
        for (q, &below) in pre.iter().enumerate() {
            objects.push(match below {
                Some(p) => spec.f_object(x, p),
                None => obj(x, q),
            });
        }
    }
    let mut horizontals = Vec::with_capacity(cq.horizontal_count());
    for f in 0..c.morphism_count() {
        for (q, &below) in pre.iter().enumerate() {
            horizontals.push(match below {
                Some(p) => spec.f_horizontal(f, p),
                None => hor(f, q),
            });
        }
    }
    let mut vmap = Vec::with_capacity(cq.vertical_count());
    for x in 0..c.object_count() {
        for m in 0..nmq {
            let (q, q2) = (amb_cat.src(m), amb_cat.tgt(m));
            vmap.push(match (pre[q], pre[q2]) {
                (Some(p), Some(p2)) => spec.f_vertical(x, p, p2),
                (None, None) => v_index[&VerticalCell::Adjoined { c: x, q, q2 }],
                (Some(p), None) => {
                    let alpha = spec.f_vertical(x, p, top[q2].unwrap());
                    v_index[&VerticalCell::Formal { c: x, q: q2, alpha }]
                }
                (None, Some(_)) => unreachable!("sieve"),
            });
        }
    }
    let mut smap = Vec::with_capacity(cq.square_count());
    for f in 0..c.morphism_count() {
        for m in 0..nmq {
            let (q, q2) = (amb_cat.src(m), amb_cat.tgt(m));
            smap.push(match (pre[q], pre[q2]) {
                (Some(p), Some(p2)) => spec.f_square(f, p, p2),
                (None, None) => s_index[&SquareCell::Adjoined { f, q, q2 }],
                (Some(p), None) => {
                    let theta = spec.f_square(f, p, top[q2].unwrap());
                    s_index[&SquareCell::Formal { f, q: q2, theta }]
                }
                (None, Some(_)) => unreachable!("sieve"),
            });
        }
    }
    let from_cq = DblFunctor::from_maps(cq, dbl.clone(), objects, vmap, horizontals, smap)?;
    Ok(DblPushout { dbl, from_a, from_cq, verticals, squares })
}
