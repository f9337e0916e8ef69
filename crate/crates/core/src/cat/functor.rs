use std::sync::Arc;

use super::FinCat;
use crate::error::{Axiom, Error, Result, Violation};

/// A functor between finite categories, stored as its object and morphism maps.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl FinFunctor {
    /// Builds a functor and checks that it is one.
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<FinFunctor> {
        let f = FinFunctor::unchecked(source, target, objects, morphisms)?;
        let v = f.validate();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Axioms(v))
        }
    }

    /// Builds the maps after range checks only.
    pub fn unchecked(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<FinFunctor> {
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return Err(Error::invalid("functor maps do not cover the source category"));
        }
        if let Some(&x) = objects.iter().find(|&&x| x >= target.object_count()) {
            return Err(Error::OutOfRange { what: "object", index: x, size: target.object_count() });
        }
        if let Some(&m) = morphisms.iter().find(|&&m| m >= target.morphism_count()) {
            return Err(Error::OutOfRange { what: "morphism", index: m, size: target.morphism_count() });
        }
        Ok(FinFunctor { source, target, objects, morphisms })
    }

    /// The functor determined by its morphism map (objects follow from identities).
    pub fn from_morphisms(source: Arc<FinCat>, target: Arc<FinCat>, morphisms: Vec<usize>) -> Result<FinFunctor> {
        if morphisms.len() != source.morphism_count() {
            return Err(Error::invalid("morphism map does not cover the source category"));
        }
        let objects = (0..source.object_count())
            .map(|x| {
                let m = morphisms[source.identity(x)];
                target.src(m)
            })
            .collect();
        FinFunctor::new(source, target, objects, morphisms)
    }

    pub fn identity(cat: Arc<FinCat>) -> FinFunctor {
        let objects = (0..cat.object_count()).collect();
        let morphisms = (0..cat.morphism_count()).collect();
        FinFunctor { source: cat.clone(), target: cat, objects, morphisms }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    /// Overwrites one morphism image. For corrupted fixtures only.
    pub fn override_morphism(&mut self, f: usize, image: usize) {
        self.morphisms[f] = image;
    }

    pub fn override_object(&mut self, x: usize, image: usize) {
        self.objects[x] = image;
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if *self.target != *other.source {
            return Err(Error::pre("functors are not composable"));
        }
        let objects = self.objects.iter().map(|&x| other.objects[x]).collect();
        let morphisms = self.morphisms.iter().map(|&f| other.morphisms[f]).collect();
        Ok(FinFunctor { source: self.source.clone(), target: other.target.clone(), objects, morphisms })
    }

    pub fn is_injective(&self) -> bool {
        is_injective(&self.objects) && is_injective(&self.morphisms)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective()
            && self.objects.len() == self.target.object_count()
            && self.morphisms.len() == self.target.morphism_count()
    }

    /// Checks preservation of sources, targets, identities and composites.
    pub fn validate(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        for f in 0..s.morphism_count() {
            let m = self.morphisms[f];
            if t.src(m) != self.objects[s.src(f)] {
                out.push(Violation::new("", Axiom::PreservesSource, s.morphism_label(f)));
            }
            if t.tgt(m) != self.objects[s.tgt(f)] {
                out.push(Violation::new("", Axiom::PreservesTarget, s.morphism_label(f)));
            }
        }
        for x in 0..s.object_count() {
            if self.morphisms[s.identity(x)] != t.identity(self.objects[x]) {
                out.push(Violation::new("", Axiom::PreservesIdentity, s.object_label(x)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (g, f) in s.composable_pairs() {
            let gf = s.compose(g, f).expect("composable");
            let image = t.compose(self.morphisms[g], self.morphisms[f]);
            if image != Some(self.morphisms[gf]) {
                out.push(Violation::new(
                    "",
                    Axiom::PreservesComposition,
                    format!("({}, {})", s.morphism_label(g), s.morphism_label(f)),
                ));
            }
        }
        out
    }
}

fn is_injective(v: &[usize]) -> bool {
    let mut w = v.to_vec();
    w.sort_unstable();
    w.windows(2).all(|p| p[0] != p[1])
}

/// Every functor `source → target`, by backtracking over objects and then
/// non-identity morphisms. Only meant for small categories.
pub fn all_functors(source: &Arc<FinCat>, target: &Arc<FinCat>) -> Vec<FinFunctor> {
    let (s, t) = (&**source, &**target);
    let n = s.morphism_count();
    // pairs (g, f) whose three members are all decided once morphism k is
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for (g, f) in s.composable_pairs() {
        let gf = s.compose(g, f).expect("composable");
        checks[g.max(f).max(gf)].push((g, f, gf));
    }
    let mut out = Vec::new();
    let mut objects = vec![0; s.object_count()];
    let mut morphisms = vec![0; n];
    loop_objects(s, t, 0, &mut objects, &mut |objects| {
        for x in 0..s.object_count() {
            morphisms[s.identity(x)] = t.identity(objects[x]);
        }
        assign(s, t, 0, objects, &mut morphisms, &checks, &mut |m| {
            out.push(FinFunctor {
                source: source.clone(),
                target: target.clone(),
                objects: objects.to_vec(),
                morphisms: m.to_vec(),
            })
        });
    });
    out
}

fn loop_objects(s: &FinCat, t: &FinCat, x: usize, objects: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if x == s.object_count() {
        visit(objects);
        return;
    }
    for y in 0..t.object_count() {
        objects[x] = y;
        loop_objects(s, t, x + 1, objects, visit);
    }
}

fn assign(
    s: &FinCat,
    t: &FinCat,
    k: usize,
    objects: &[usize],
    morphisms: &mut Vec<usize>,
    checks: &[Vec<(usize, usize, usize)>],
    visit: &mut dyn FnMut(&[usize]),
) {
    if k == s.morphism_count() {
        visit(morphisms);
        return;
    }
    let ok = |m: &[usize]| checks[k].iter().all(|&(g, f, gf)| t.compose(m[g], m[f]) == Some(m[gf]));
    if s.is_identity(k) {
        if ok(morphisms) {
            assign(s, t, k + 1, objects, morphisms, checks, visit);
        }
        return;
    }
    let candidates: Vec<usize> = t.hom(objects[s.src(k)], objects[s.tgt(k)]).collect();
    for m in candidates {
        morphisms[k] = m;
        if ok(morphisms) {
            assign(s, t, k + 1, objects, morphisms, checks, visit);
        }
    }
}
