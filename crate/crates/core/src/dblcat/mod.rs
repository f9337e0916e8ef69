//! Finite double categories, stored as internal categories in finite
//! categories: `A0` holds objects and vertical morphisms, `A1` holds
//! horizontal morphisms (its objects) and squares (its morphisms), with
//! functors `s, t: A1 → A0`, `i: A0 → A1` and `c: A1 ×_{A0} A1 → A1`.
//!
//! A square `α` runs from its top horizontal `src_{A1} α` to its bottom
//! `tgt_{A1} α`; its left and right sides are `s α` and `t α`. Composition in
//! `A1` is vertical pasting and `c` is horizontal pasting, with the pair
//! `(α, β)` meaning `α` on the left.

mod functor;
mod nerve;

use std::sync::Arc;

pub use functor::DblFunctor;
pub use nerve::{
    double_nerve, double_nerve_map, horizontal_nerve, horizontal_nerve_level, HorizontalNerve, NerveLevel,
};

use crate::cat::{self, FinCat, FinFunctor, MorphismSpec, Pullback};
use crate::error::{Axiom, Error, Result, Violation};

#[derive(Clone, Debug)]
pub struct FinDblCat {
    a0: Arc<FinCat>,
    a1: Arc<FinCat>,
    s: FinFunctor,
    t: FinFunctor,
    i: FinFunctor,
    pb: Pullback,
    c: FinFunctor,
}

impl PartialEq for FinDblCat {
    fn eq(&self, other: &Self) -> bool {
        self.a0 == other.a0
            && self.a1 == other.a1
            && [(&self.s, &other.s), (&self.t, &other.t), (&self.i, &other.i), (&self.c, &other.c)]
                .iter()
                .all(|(f, g)| f.object_map() == g.object_map() && f.morphism_map() == g.morphism_map())
    }
}

/// A square given by its label and boundary `(top, bottom, left, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSpec {
    pub label: String,
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl SquareSpec {
    pub fn new(label: impl Into<String>, top: usize, bottom: usize, left: usize, right: usize) -> Self {
        SquareSpec { label: label.into(), top, bottom, left, right }
    }
}

/// The square-level description of a double category, consumed by
/// [`FinDblCat::from_squares`]. Objects and verticals are those of `vertical`.
pub struct SquareData {
    pub vertical: Arc<FinCat>,
    /// `(label, source object, target object)`
    pub horizontals: Vec<MorphismSpec>,
    /// horizontal identity of each object
    pub h_identities: Vec<usize>,
    pub squares: Vec<SquareSpec>,
    /// vertical identity square of each horizontal
    pub v_identity_squares: Vec<usize>,
    /// horizontal identity square of each vertical
    pub h_identity_squares: Vec<usize>,
}

impl FinDblCat {
    /// Builds a double category from squares. `vcomp(upper, lower)` pastes
    /// vertically, `hcomp_h(left, right)` composes horizontals and
    /// `hcomp_sq(left, right)` pastes squares horizontally. The result is
    /// validated.
    pub fn from_squares(
        data: SquareData,
        mut vcomp: impl FnMut(usize, usize) -> Result<usize>,
        mut hcomp_h: impl FnMut(usize, usize) -> Result<usize>,
        mut hcomp_sq: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<FinDblCat> {
        let a0 = data.vertical;
        let a1 = Arc::new(FinCat::from_fn(
            data.horizontals.iter().map(|h| h.0.clone()).collect(),
            data.squares.iter().map(|q| (q.label.clone(), q.top, q.bottom)).collect(),
            data.v_identity_squares.clone(),
            |g, f| vcomp(f, g),
        )?);
        let s = FinFunctor::unchecked(
            a1.clone(),
            a0.clone(),
            data.horizontals.iter().map(|h| h.1).collect(),
            data.squares.iter().map(|q| q.left).collect(),
        )?;
        let t = FinFunctor::unchecked(
            a1.clone(),
            a0.clone(),
            data.horizontals.iter().map(|h| h.2).collect(),
            data.squares.iter().map(|q| q.right).collect(),
        )?;
        let i = FinFunctor::unchecked(a0.clone(), a1.clone(), data.h_identities, data.h_identity_squares)?;
        let pb = cat::pullback(&t, &s)?;
        let c_obj = (0..pb.cat().object_count())
            .map(|x| {
                let (h1, h2) = pb.object_pair(x);
                hcomp_h(h1, h2)
            })
            .collect::<Result<Vec<_>>>()?;
        let c_mor = (0..pb.cat().morphism_count())
            .map(|x| {
                let (a, b) = pb.morphism_pair(x);
                hcomp_sq(a, b)
            })
            .collect::<Result<Vec<_>>>()?;
        let c = FinFunctor::unchecked(pb.cat().clone(), a1.clone(), c_obj, c_mor)?;
        let d = FinDblCat { a0, a1, s, t, i, pb, c };
        d.ensure_valid()?;
        Ok(d)
    }

    /// Assembles the quintuple without checking any axiom. `c_objects` and
    /// `c_morphisms` are indexed by the objects and morphisms of the pullback
    /// `A1 ×_{A0} A1` of `(t, s)`, whose pairs are in lexicographic order.
    pub fn from_parts_unchecked(
        a0: Arc<FinCat>,
        a1: Arc<FinCat>,
        s: FinFunctor,
        t: FinFunctor,
        i: FinFunctor,
        c: impl FnOnce(&Pullback) -> Result<(Vec<usize>, Vec<usize>)>,
    ) -> Result<FinDblCat> {
        for (name, f, src, tgt) in [("s", &s, &a1, &a0), ("t", &t, &a1, &a0), ("i", &i, &a0, &a1)] {
            if **f.source() != **src || **f.target() != **tgt {
                return Err(Error::invalid(format!("{name} has the wrong source or target category")));
            }
        }
        // composable pairs only make sense along functors
        let broken: Vec<Violation> = [("s", &s), ("t", &t)]
            .into_iter()
            .flat_map(|(name, f)| f.validate().into_iter().map(move |v| v.relocated(name)))
            .collect();
        if !broken.is_empty() {
            return Err(Error::Axioms(broken));
        }
        let pb = cat::pullback(&t, &s)?;
        let (co, cm) = c(&pb)?;
        let c = FinFunctor::unchecked(pb.cat().clone(), a1.clone(), co, cm)?;
        Ok(FinDblCat { a0, a1, s, t, i, pb, c })
    }

    pub fn from_parts(
        a0: Arc<FinCat>,
        a1: Arc<FinCat>,
        s: FinFunctor,
        t: FinFunctor,
        i: FinFunctor,
        c: impl FnOnce(&Pullback) -> Result<(Vec<usize>, Vec<usize>)>,
    ) -> Result<FinDblCat> {
        let d = FinDblCat::from_parts_unchecked(a0, a1, s, t, i, c)?;
        d.ensure_valid()?;
        Ok(d)
    }

    pub fn a0(&self) -> &Arc<FinCat> {
        &self.a0
    }

    pub fn a1(&self) -> &Arc<FinCat> {
        &self.a1
    }

    pub fn s(&self) -> &FinFunctor {
        &self.s
    }

    pub fn t(&self) -> &FinFunctor {
        &self.t
    }

    pub fn i(&self) -> &FinFunctor {
        &self.i
    }

    pub fn c(&self) -> &FinFunctor {
        &self.c
    }

    /// `A1 ×_{A0} A1`, the domain of `c`.
    pub fn composable(&self) -> &Pullback {
        &self.pb
    }

    pub fn object_count(&self) -> usize {
        self.a0.object_count()
    }

    pub fn vertical_count(&self) -> usize {
        self.a0.morphism_count()
    }

    pub fn horizontal_count(&self) -> usize {
        self.a1.object_count()
    }

    pub fn square_count(&self) -> usize {
        self.a1.morphism_count()
    }

    pub fn object_label(&self, x: usize) -> &str {
        self.a0.object_label(x)
    }

    pub fn horizontal_label(&self, h: usize) -> &str {
        self.a1.object_label(h)
    }

    pub fn vertical_label(&self, v: usize) -> &str {
        self.a0.morphism_label(v)
    }

    pub fn square_label(&self, q: usize) -> &str {
        self.a1.morphism_label(q)
    }

    pub fn h_source(&self, h: usize) -> usize {
        self.s.on_object(h)
    }

    pub fn h_target(&self, h: usize) -> usize {
        self.t.on_object(h)
    }

    pub fn h_identity(&self, x: usize) -> usize {
        self.i.on_object(x)
    }

    pub fn is_h_identity(&self, h: usize) -> bool {
        self.i.on_object(self.s.on_object(h)) == h
    }

    /// `(top, bottom, left, right)`.
    pub fn boundary(&self, q: usize) -> (usize, usize, usize, usize) {
        (self.a1.src(q), self.a1.tgt(q), self.s.on_morphism(q), self.t.on_morphism(q))
    }

    /// Horizontal composite of `h1` followed by `h2`.
    pub fn hcompose(&self, h1: usize, h2: usize) -> Option<usize> {
        self.pb.object_of(h1, h2).map(|x| self.c.on_object(x))
    }

    /// Horizontal pasting, `left` then `right`.
    pub fn hpaste(&self, left: usize, right: usize) -> Option<usize> {
        self.pb.morphism_of(left, right).map(|x| self.c.on_morphism(x))
    }

    /// Vertical pasting, `upper` above `lower`.
    pub fn vpaste(&self, upper: usize, lower: usize) -> Option<usize> {
        self.a1.compose(lower, upper)
    }

    pub fn nonidentity_verticals(&self) -> usize {
        self.a0.nonidentity_count()
    }

    pub fn nonidentity_horizontals(&self) -> usize {
        (0..self.horizontal_count()).filter(|&h| !self.is_h_identity(h)).count()
    }

    /// Squares that are neither a vertical identity (on a horizontal) nor a
    /// horizontal identity (on a vertical).
    pub fn is_degenerate_square(&self, q: usize) -> bool {
        self.a1.is_identity(q) || self.i.on_morphism(self.s.on_morphism(q)) == q
    }

    pub fn nondegenerate_squares(&self) -> usize {
        (0..self.square_count()).filter(|&q| !self.is_degenerate_square(q)).count()
    }

    /// `(objects, nonidentity verticals, nonidentity horizontals, nondegenerate squares)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (
            self.object_count(),
            self.nonidentity_verticals(),
            self.nonidentity_horizontals(),
            self.nondegenerate_squares(),
        )
    }

    /// Every internal-category axiom, with located witnesses. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = Vec::new();
        out.extend(self.a0.validate().into_iter().map(|v| v.relocated("A0")));
        out.extend(self.a1.validate().into_iter().map(|v| v.relocated("A1")));
        if !out.is_empty() {
            return out;
        }
        for (name, f) in [("s", &self.s), ("t", &self.t), ("i", &self.i)] {
            out.extend(f.validate().into_iter().map(|v| v.relocated(name)));
        }
        for v in self.c.validate() {
            let axiom = match v.axiom {
                Axiom::PreservesComposition | Axiom::PreservesIdentity => Axiom::Interchange,
                a => a,
            };
            out.push(Violation::new("c", axiom, v.witness));
        }
        let (a0, a1) = (&self.a0, &self.a1);
        for x in 0..a0.object_count() {
            let h = self.i.on_object(x);
            if self.s.on_object(h) != x {
                out.push(Violation::new("i", Axiom::SourceOfUnit, a0.object_label(x)));
            }
            if self.t.on_object(h) != x {
                out.push(Violation::new("i", Axiom::TargetOfUnit, a0.object_label(x)));
            }
        }
        for v in 0..a0.morphism_count() {
            let q = self.i.on_morphism(v);
            if self.s.on_morphism(q) != v {
                out.push(Violation::new("i", Axiom::SourceOfUnit, a0.morphism_label(v)));
            }
            if self.t.on_morphism(q) != v {
                out.push(Violation::new("i", Axiom::TargetOfUnit, a0.morphism_label(v)));
            }
        }
        let pb = self.pb.cat();
        for x in 0..pb.object_count() {
            let (h1, h2) = self.pb.object_pair(x);
            let h = self.c.on_object(x);
            let w = || format!("({}, {})", a1.object_label(h1), a1.object_label(h2));
            if self.s.on_object(h) != self.s.on_object(h1) {
                out.push(Violation::new("c", Axiom::SourceOfComposite, w()));
            }
            if self.t.on_object(h) != self.t.on_object(h2) {
                out.push(Violation::new("c", Axiom::TargetOfComposite, w()));
            }
        }
        for x in 0..pb.morphism_count() {
            let (q1, q2) = self.pb.morphism_pair(x);
            let q = self.c.on_morphism(x);
            let w = || format!("({}, {})", a1.morphism_label(q1), a1.morphism_label(q2));
            if self.s.on_morphism(q) != self.s.on_morphism(q1) {
                out.push(Violation::new("c", Axiom::SourceOfComposite, w()));
            }
            if self.t.on_morphism(q) != self.t.on_morphism(q2) {
                out.push(Violation::new("c", Axiom::TargetOfComposite, w()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // units and associativity, on horizontals and on squares
        for h in 0..a1.object_count() {
            let l = self.hcompose(self.i.on_object(self.s.on_object(h)), h);
            let r = self.hcompose(h, self.i.on_object(self.t.on_object(h)));
            if l != Some(h) || r != Some(h) {
                out.push(Violation::new("c", Axiom::HorizontalUnit, a1.object_label(h)));
            }
        }
        for q in 0..a1.morphism_count() {
            let l = self.hpaste(self.i.on_morphism(self.s.on_morphism(q)), q);
            let r = self.hpaste(q, self.i.on_morphism(self.t.on_morphism(q)));
            if l != Some(q) || r != Some(q) {
                out.push(Violation::new("c", Axiom::HorizontalUnit, a1.morphism_label(q)));
            }
        }
        for x in 0..pb.object_count() {
            let (h1, h2) = self.pb.object_pair(x);
            let h12 = self.c.on_object(x);
            for &h3 in &self.right_neighbours_h(h2) {
                let lhs = self.hcompose(h12, h3);
                let rhs = self.hcompose(h2, h3).and_then(|h23| self.hcompose(h1, h23));
                if lhs != rhs {
                    out.push(Violation::new(
                        "c",
                        Axiom::HorizontalAssociativity,
                        format!("({}, {}, {})", a1.object_label(h1), a1.object_label(h2), a1.object_label(h3)),
                    ));
                }
            }
        }
        for x in 0..pb.morphism_count() {
            let (q1, q2) = self.pb.morphism_pair(x);
            let q12 = self.c.on_morphism(x);
            for q3 in 0..a1.morphism_count() {
                if self.s.on_morphism(q3) != self.t.on_morphism(q2) {
                    continue;
                }
                let lhs = self.hpaste(q12, q3);
                let rhs = self.hpaste(q2, q3).and_then(|q23| self.hpaste(q1, q23));
                if lhs != rhs {
                    out.push(Violation::new(
                        "c",
                        Axiom::HorizontalAssociativity,
                        format!("({}, {}, {})", a1.morphism_label(q1), a1.morphism_label(q2), a1.morphism_label(q3)),
                    ));
                }
            }
        }
        out
    }

    fn right_neighbours_h(&self, h: usize) -> Vec<usize> {
        let y = self.t.on_object(h);
        (0..self.horizontal_count()).filter(|&k| self.s.on_object(k) == y).collect()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Axioms(v))
        }
    }

    /// Replaces one image of `s`. For corrupted fixtures only.
    pub fn override_s(&mut self, square: usize, vertical: usize) {
        self.s.override_morphism(square, vertical);
    }

    pub fn override_t(&mut self, square: usize, vertical: usize) {
        self.t.override_morphism(square, vertical);
    }

    pub fn override_i(&mut self, vertical: usize, square: usize) {
        self.i.override_morphism(vertical, square);
    }

    /// Replaces the horizontal pasting of one composable pair of squares.
    pub fn override_hpaste(&mut self, left: usize, right: usize, image: usize) -> Result<()> {
        let x = self
            .pb
            .morphism_of(left, right)
            .ok_or_else(|| Error::invalid("override of a non-composable pair of squares"))?;
        self.c.override_morphism(x, image);
        Ok(())
    }

    /// Replaces the horizontal composite of one composable pair of horizontals.
    pub fn override_hcompose(&mut self, h1: usize, h2: usize, image: usize) -> Result<()> {
        let x = self
            .pb
            .object_of(h1, h2)
            .ok_or_else(|| Error::invalid("override of a non-composable pair of horizontals"))?;
        self.c.override_object(x, image);
        Ok(())
    }

    /// Horizontal morphisms with composition `c`.
    pub fn underlying_h(&self) -> Result<FinCat> {
        let a1 = &self.a1;
        FinCat::from_fn(
            self.a0.object_labels().to_vec(),
            (0..a1.object_count())
                .map(|h| (a1.object_label(h).to_string(), self.s.on_object(h), self.t.on_object(h)))
                .collect(),
            (0..self.object_count()).map(|x| self.i.on_object(x)).collect(),
            |g, f| self.hcompose(f, g).ok_or_else(|| Error::invalid("horizontal composite missing")),
        )
    }

    /// The vertical category `A0`.
    pub fn underlying_v(&self) -> FinCat {
        (*self.a0).clone()
    }

    /// The square-level description, as accepted by [`FinDblCat::from_squares`].
    pub fn square_data(&self) -> SquareData {
        let a1 = &self.a1;
        SquareData {
            vertical: self.a0.clone(),
            horizontals: (0..a1.object_count())
                .map(|h| (a1.object_label(h).to_string(), self.s.on_object(h), self.t.on_object(h)))
                .collect(),
            h_identities: (0..self.object_count()).map(|x| self.i.on_object(x)).collect(),
            squares: (0..a1.morphism_count())
                .map(|q| {
                    let (top, bottom, left, right) = self.boundary(q);
                    SquareSpec::new(a1.morphism_label(q), top, bottom, left, right)
                })
                .collect(),
            v_identity_squares: (0..a1.object_count()).map(|h| a1.identity(h)).collect(),
            h_identity_squares: (0..self.vertical_count()).map(|v| self.i.on_morphism(v)).collect(),
        }
    }
}

/// `H C`: `C` as horizontal morphisms, only identity verticals and squares.
pub fn h_embed(c: &FinCat) -> Result<FinDblCat> {
    let vertical = Arc::new(cat::discrete(c.object_labels().to_vec()));
    let n = c.morphism_count();
    let data = SquareData {
        vertical,
        horizontals: (0..n).map(|f| (c.morphism_label(f).to_string(), c.src(f), c.tgt(f))).collect(),
        h_identities: (0..c.object_count()).map(|x| c.identity(x)).collect(),
        squares: (0..n)
            .map(|f| SquareSpec::new(format!("1_{}", c.morphism_label(f)), f, f, c.src(f), c.tgt(f)))
            .collect(),
        v_identity_squares: (0..n).collect(),
        h_identity_squares: (0..c.object_count()).map(|x| c.identity(x)).collect(),
    };
    let comp =
        |f: usize, g: usize| c.compose(g, f).ok_or_else(|| Error::invalid("horizontal morphisms not composable"));
    FinDblCat::from_squares(data, |a, _| Ok(a), comp, comp)
}

/// `V C`: `C` as vertical morphisms, only identity horizontals.
pub fn v_embed(c: &FinCat) -> Result<FinDblCat> {
    let vertical = Arc::new(c.clone());
    let n = c.morphism_count();
    let data = SquareData {
        vertical,
        horizontals: (0..c.object_count()).map(|x| (format!("1_{}", c.object_label(x)), x, x)).collect(),
        h_identities: (0..c.object_count()).collect(),
        squares: (0..n).map(|v| SquareSpec::new(c.morphism_label(v), c.src(v), c.tgt(v), v, v)).collect(),
        v_identity_squares: (0..c.object_count()).map(|x| c.identity(x)).collect(),
        h_identity_squares: (0..n).collect(),
    };
    FinDblCat::from_squares(
        data,
        |u, v| c.compose(v, u).ok_or_else(|| Error::invalid("verticals not composable")),
        |x, _| Ok(x),
        |q, _| Ok(q),
    )
}

/// Componentwise product; pairs are indexed `i * |second| + j` in every sort.
pub fn product(a: &FinDblCat, b: &FinDblCat) -> Result<FinDblCat> {
    let vertical = Arc::new(cat::product(&a.a0, &b.a0)?);
    let (bo, bh, bv, bq) = (b.object_count(), b.horizontal_count(), b.vertical_count(), b.square_count());
    let pairs = |n: usize, m: usize| (0..n).flat_map(move |i| (0..m).map(move |j| (i, j)));
    let data = SquareData {
        vertical,
        horizontals: pairs(a.horizontal_count(), bh)
            .map(|(h, k)| {
                (
                    format!("({},{})", a.horizontal_label(h), b.horizontal_label(k)),
                    a.h_source(h) * bo + b.h_source(k),
                    a.h_target(h) * bo + b.h_target(k),
                )
            })
            .collect(),
        h_identities: pairs(a.object_count(), bo).map(|(x, y)| a.h_identity(x) * bh + b.h_identity(y)).collect(),
        squares: pairs(a.square_count(), bq)
            .map(|(p, q)| {
                let (pt, pb, pl, pr) = a.boundary(p);
                let (qt, qb, ql, qr) = b.boundary(q);
                SquareSpec::new(
                    format!("({},{})", a.square_label(p), b.square_label(q)),
                    pt * bh + qt,
                    pb * bh + qb,
                    pl * bv + ql,
                    pr * bv + qr,
                )
            })
            .collect(),
        v_identity_squares: pairs(a.horizontal_count(), bh)
            .map(|(h, k)| a.a1.identity(h) * bq + b.a1.identity(k))
            .collect(),
        h_identity_squares: pairs(a.vertical_count(), bv)
            .map(|(v, w)| a.i.on_morphism(v) * bq + b.i.on_morphism(w))
            .collect(),
    };
    let missing = || Error::invalid("product component not composable");
    FinDblCat::from_squares(
        data,
        |u, l| {
            let p = a.vpaste(u / bq, l / bq).ok_or_else(missing)?;
            let q = b.vpaste(u % bq, l % bq).ok_or_else(missing)?;
            Ok(p * bq + q)
        },
        |h1, h2| {
            let h = a.hcompose(h1 / bh, h2 / bh).ok_or_else(missing)?;
            let k = b.hcompose(h1 % bh, h2 % bh).ok_or_else(missing)?;
            Ok(h * bh + k)
        },
        |l, r| {
            let p = a.hpaste(l / bq, r / bq).ok_or_else(missing)?;
            let q = b.hpaste(l % bq, r % bq).ok_or_else(missing)?;
            Ok(p * bq + q)
        },
    )
}

/// Every violated axiom of `a`, each with its location and a witness tuple.
pub fn validate_double_category(a: &FinDblCat) -> Vec<Violation> {
    a.validate()
}

/// `C ⊠ D = H C × V D`.
pub fn box_product(c: &FinCat, d: &FinCat) -> Result<FinDblCat> {
    product(&h_embed(c)?, &v_embed(d)?)
}

/// `H f: H C → H D`.
pub fn h_functor(f: &FinFunctor) -> Result<DblFunctor> {
    let objects = f.object_map().to_vec();
    let morphisms = f.morphism_map().to_vec();
    DblFunctor::from_maps(
        Arc::new(h_embed(f.source())?),
        Arc::new(h_embed(f.target())?),
        objects.clone(),
        objects,
        morphisms.clone(),
        morphisms,
    )
}

/// `F ⊠ G: C ⊠ D → C' ⊠ D'`.
pub fn box_functor(f: &FinFunctor, g: &FinFunctor) -> Result<DblFunctor> {
    let source = Arc::new(box_product(f.source(), g.source())?);
    let target = Arc::new(box_product(f.target(), g.target())?);
    let (d, d2) = (g.source(), g.target());
    let pairs = |n: usize, m: usize, fx: &dyn Fn(usize) -> usize, gx: &dyn Fn(usize) -> usize, m2: usize| {
        (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| fx(i) * m2 + gx(j)).collect::<Vec<_>>()
    };
    let (fo, fm) = (|x| f.on_object(x), |x| f.on_morphism(x));
    let (go, gm) = (|x| g.on_object(x), |x| g.on_morphism(x));
    let objects = pairs(f.source().object_count(), d.object_count(), &fo, &go, d2.object_count());
    let verticals = pairs(f.source().object_count(), d.morphism_count(), &fo, &gm, d2.morphism_count());
    let horizontals = pairs(f.source().morphism_count(), d.object_count(), &fm, &go, d2.object_count());
    let squares = pairs(f.source().morphism_count(), d.morphism_count(), &fm, &gm, d2.morphism_count());
    DblFunctor::from_maps(source, target, objects, verticals, horizontals, squares)
}

/// Unit of `H ⊣ underlying_h` at `c`: the identity-on-labels functor
/// `C → underlying_h(H C)`.
pub fn h_unit(c: &Arc<FinCat>) -> Result<FinFunctor> {
    let hc = Arc::new(h_embed(c)?.underlying_h()?);
    FinFunctor::new(c.clone(), hc, (0..c.object_count()).collect(), (0..c.morphism_count()).collect())
}

/// Counit of `H ⊣ underlying_h` at `a`: `H(underlying_h A) → A`.
pub fn h_counit(a: &Arc<FinDblCat>) -> Result<DblFunctor> {
    let source = Arc::new(h_embed(&a.underlying_h()?)?);
    let f0 = FinFunctor::new(
        source.a0.clone(),
        a.a0.clone(),
        (0..a.object_count()).collect(),
        (0..a.object_count()).map(|x| a.a0.identity(x)).collect(),
    )?;
    let f1 = FinFunctor::new(
        source.a1.clone(),
        a.a1.clone(),
        (0..a.horizontal_count()).collect(),
        (0..a.horizontal_count()).map(|h| a.a1.identity(h)).collect(),
    )?;
    DblFunctor::new(source, a.clone(), f0, f1)
}

/// Unit of `V ⊣ underlying_v` at `c`: `C → A0(V C)`, the identity.
pub fn v_unit(c: &Arc<FinCat>) -> Result<FinFunctor> {
    let vc = Arc::new(v_embed(c)?.underlying_v());
    FinFunctor::new(c.clone(), vc, (0..c.object_count()).collect(), (0..c.morphism_count()).collect())
}

/// Counit of `V ⊣ underlying_v` at `a`: `V(A0) → A`, horizontal identities
/// going to `i`.
pub fn v_counit(a: &Arc<FinDblCat>) -> Result<DblFunctor> {
    let source = Arc::new(v_embed(&a.a0)?);
    let f0 = FinFunctor::identity(a.a0.clone());
    let f0 = FinFunctor::new(source.a0.clone(), a.a0.clone(), f0.object_map().to_vec(), f0.morphism_map().to_vec())?;
    let f1 = FinFunctor::new(
        source.a1.clone(),
        a.a1.clone(),
        (0..a.object_count()).map(|x| a.i.on_object(x)).collect(),
        (0..a.vertical_count()).map(|v| a.i.on_morphism(v)).collect(),
    )?;
    DblFunctor::new(source, a.clone(), f0, f1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::chain_category;

    #[test]
    fn embeddings() {
        let h = h_embed(&chain_category(1)).unwrap();
        assert_eq!(h.counts(), (2, 0, 1, 0));
        let v = v_embed(&chain_category(1)).unwrap();
        assert_eq!(v.counts(), (2, 1, 0, 0));
        for n in 0..3 {
            let c = chain_category(n);
            assert_eq!(h_embed(&c).unwrap().underlying_h().unwrap(), c);
        }
    }

    #[test]
    fn box_of_two_arrows() {
        let b = box_product(&chain_category(1), &chain_category(1)).unwrap();
        assert_eq!(b.counts(), (4, 2, 2, 1));
        assert!(b.validate().is_empty());
    }

    #[test]
    fn degenerate_boxes() {
        for n in 0..3 {
            let b = box_product(&chain_category(n), &chain_category(0)).unwrap();
            let h = h_embed(&chain_category(n)).unwrap();
            assert_eq!(b.counts(), h.counts());
            assert_eq!(b.square_count(), h.square_count());
            let b = box_product(&chain_category(0), &chain_category(n)).unwrap();
            let v = v_embed(&chain_category(n)).unwrap();
            assert_eq!(b.counts(), v.counts());
            assert_eq!(b.square_count(), v.square_count());
        }
    }

    #[test]
    fn corrupted_interchange_is_reported() {
        let mut a = crate::fixtures::parity_squares();
        assert!(a.validate().is_empty());
        let (e, e2, big) = (
            a.a1().find_morphism("e").unwrap(),
            a.a1().find_morphism("e'").unwrap(),
            a.a1().find_morphism("E").unwrap(),
        );
        a.override_hpaste(e, e2, big).unwrap();
        let report = a.validate();
        assert!(report.iter().any(|v| v.axiom == Axiom::Interchange && v.location == "c"));
    }
}
