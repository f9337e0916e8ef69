use std::sync::Arc;

use super::FinDblCat;
use crate::cat::FinFunctor;
use crate::error::{Axiom, Error, Result, Violation};

/// A double functor, given by its components on `A0` and `A1`.
#[derive(Clone, Debug)]
pub struct DblFunctor {
    source: Arc<FinDblCat>,
    target: Arc<FinDblCat>,
    f0: FinFunctor,
    f1: FinFunctor,
}

impl DblFunctor {
    pub fn new(source: Arc<FinDblCat>, target: Arc<FinDblCat>, f0: FinFunctor, f1: FinFunctor) -> Result<Self> {
        if **f0.source() != **source.a0() || **f0.target() != **target.a0() {
            return Err(Error::invalid("object component has the wrong ends"));
        }
        if **f1.source() != **source.a1() || **f1.target() != **target.a1() {
            return Err(Error::invalid("morphism component has the wrong ends"));
        }
        let f = DblFunctor { source, target, f0, f1 };
        let v = f.validate();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Axioms(v))
        }
    }

    /// Builds the components from plain maps on objects, verticals,
    /// horizontals and squares.
    pub fn from_maps(
        source: Arc<FinDblCat>,
        target: Arc<FinDblCat>,
        objects: Vec<usize>,
        verticals: Vec<usize>,
        horizontals: Vec<usize>,
        squares: Vec<usize>,
    ) -> Result<Self> {
        let f0 = FinFunctor::new(source.a0().clone(), target.a0().clone(), objects, verticals)?;
        let f1 = FinFunctor::new(source.a1().clone(), target.a1().clone(), horizontals, squares)?;
        DblFunctor::new(source, target, f0, f1)
    }

    pub fn identity(a: Arc<FinDblCat>) -> Self {
        DblFunctor {
            f0: FinFunctor::identity(a.a0().clone()),
            f1: FinFunctor::identity(a.a1().clone()),
            source: a.clone(),
            target: a,
        }
    }

    pub fn source(&self) -> &Arc<FinDblCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinDblCat> {
        &self.target
    }

    pub fn f0(&self) -> &FinFunctor {
        &self.f0
    }

    pub fn f1(&self) -> &FinFunctor {
        &self.f1
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.f0.on_object(x)
    }

    pub fn on_vertical(&self, v: usize) -> usize {
        self.f0.on_morphism(v)
    }

    pub fn on_horizontal(&self, h: usize) -> usize {
        self.f1.on_object(h)
    }

    pub fn on_square(&self, q: usize) -> usize {
        self.f1.on_morphism(q)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DblFunctor) -> Result<DblFunctor> {
        if *self.target != *other.source {
            return Err(Error::pre("double functors are not composable"));
        }
        Ok(DblFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            f0: self.f0.then(&other.f0)?,
            f1: self.f1.then(&other.f1)?,
        })
    }

    /// Whether every vertical morphism goes to an identity.
    pub fn collapses_verticals(&self) -> bool {
        let b = self.target.a0();
        (0..self.source.vertical_count()).all(|v| b.is_identity(self.on_vertical(v)))
    }

    /// Functoriality of both components and compatibility with `s, t, i, c`.
    pub fn validate(&self) -> Vec<Violation> {
        let (a, b) = (&self.source, &self.target);
        let mut out: Vec<Violation> = Vec::new();
        out.extend(self.f0.validate().into_iter().map(|v| v.relocated("F0")));
        out.extend(self.f1.validate().into_iter().map(|v| v.relocated("F1")));
        for h in 0..a.horizontal_count() {
            let fh = self.on_horizontal(h);
            if b.h_source(fh) != self.on_object(a.h_source(h)) || b.h_target(fh) != self.on_object(a.h_target(h)) {
                out.push(Violation::new("F1", Axiom::Naturality, format!("ends of {}", a.horizontal_label(h))));
            }
        }
        for q in 0..a.square_count() {
            let fq = self.on_square(q);
            let (_, _, l, r) = a.boundary(q);
            let (_, _, fl, fr) = b.boundary(fq);
            if fl != self.on_vertical(l) || fr != self.on_vertical(r) {
                out.push(Violation::new("F1", Axiom::Naturality, format!("sides of {}", a.square_label(q))));
            }
        }
        for x in 0..a.object_count() {
            if self.on_horizontal(a.h_identity(x)) != b.h_identity(self.on_object(x)) {
                out.push(Violation::new("F1", Axiom::PreservesIdentity, format!("i({})", a.object_label(x))));
            }
        }
        for v in 0..a.vertical_count() {
            if self.on_square(a.i().on_morphism(v)) != b.i().on_morphism(self.on_vertical(v)) {
                out.push(Violation::new("F1", Axiom::PreservesIdentity, format!("i({})", a.vertical_label(v))));
            }
        }
        let pb = a.composable();
        for x in 0..pb.cat().object_count() {
            let (h1, h2) = pb.object_pair(x);
            let lhs = self.on_horizontal(a.c().on_object(x));
            if b.hcompose(self.on_horizontal(h1), self.on_horizontal(h2)) != Some(lhs) {
                out.push(Violation::new(
                    "F1",
                    Axiom::PreservesComposition,
                    format!("({}, {})", a.horizontal_label(h1), a.horizontal_label(h2)),
                ));
            }
        }
        for x in 0..pb.cat().morphism_count() {
            let (q1, q2) = pb.morphism_pair(x);
            let lhs = self.on_square(a.c().on_morphism(x));
            if b.hpaste(self.on_square(q1), self.on_square(q2)) != Some(lhs) {
                out.push(Violation::new(
                    "F1",
                    Axiom::PreservesComposition,
                    format!("({}, {})", a.square_label(q1), a.square_label(q2)),
                ));
            }
        }
        out
    }
}
