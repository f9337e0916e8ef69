//! Grothendieck constructions of diagrams of categories and of double
//! categories, and the zigzag diagrams whose constructions give the sources
//! of the spine and completeness maps.

mod dbl;
mod zigzag;

use std::collections::HashMap;
use std::sync::Arc;

pub use dbl::{grothendieck_dbl, DblDiagram, DblGrothendieck};
pub use zigzag::{completeness_source, spine_source, zigzag_shape};

use crate::cat::{pullback, FinCat, FinFunctor};
use crate::error::{Error, Result};

fn same_maps(f: &FinFunctor, g: &FinFunctor) -> bool {
    f.object_map() == g.object_map() && f.morphism_map() == g.morphism_map()
}

/// A functor `J → Cat`, given by its values and its action on every
/// morphism of `J`.
#[derive(Clone, Debug)]
pub struct Diagram {
    shape: Arc<FinCat>,
    values: Vec<Arc<FinCat>>,
    action: Vec<FinFunctor>,
}

impl Diagram {
    /// Checks ends, identities and composition over all of `J`.
    pub fn new(shape: Arc<FinCat>, values: Vec<Arc<FinCat>>, action: Vec<FinFunctor>) -> Result<Self> {
        if values.len() != shape.object_count() || action.len() != shape.morphism_count() {
            return Err(Error::invalid("diagram does not cover its shape"));
        }
        for (s, f) in action.iter().enumerate() {
            if **f.source() != *values[shape.src(s)] || **f.target() != *values[shape.tgt(s)] {
                return Err(Error::invalid(format!("action of {} has the wrong ends", shape.morphism_label(s))));
            }
        }
        for j in 0..shape.object_count() {
            if !same_maps(&action[shape.identity(j)], &FinFunctor::identity(values[j].clone())) {
                return Err(Error::invalid(format!("identity of {} acts non-trivially", shape.object_label(j))));
            }
        }
        for (g, f) in shape.composable_pairs() {
            let gf = shape.compose(g, f).expect("composable");
            if !same_maps(&action[f].then(&action[g])?, &action[gf]) {
                return Err(Error::invalid(format!(
                    "action does not preserve ({}, {})",
                    shape.morphism_label(g),
                    shape.morphism_label(f)
                )));
            }
        }
        Ok(Diagram { shape, values, action })
    }

    /// The constant diagram.
    pub fn constant(shape: Arc<FinCat>, value: Arc<FinCat>) -> Self {
        let values = vec![value.clone(); shape.object_count()];
        let action = vec![FinFunctor::identity(value); shape.morphism_count()];
        Diagram { shape, values, action }
    }

    pub fn shape(&self) -> &Arc<FinCat> {
        &self.shape
    }

    pub fn value(&self, j: usize) -> &Arc<FinCat> {
        &self.values[j]
    }

    pub fn action(&self, s: usize) -> &FinFunctor {
        &self.action[s]
    }
}

/// `∫_J F` with the pair behind every object and morphism.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub cat: Arc<FinCat>,
    /// `(j, x)`
    pub objects: Vec<(usize, usize)>,
    /// `(s, x, u)` for `(s, u): (j, x) → (j', x')`
    pub morphisms: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize, usize), usize>,
}

impl Grothendieck {
    pub fn object_of(&self, j: usize, x: usize) -> Option<usize> {
        self.object_index.get(&(j, x)).copied()
    }

    pub fn morphism_of(&self, s: usize, x: usize, u: usize) -> Option<usize> {
        self.morphism_index.get(&(s, x, u)).copied()
    }

    /// The projection `∫_J F → J`.
    pub fn projection(&self, shape: &Arc<FinCat>) -> Result<FinFunctor> {
        FinFunctor::new(
            self.cat.clone(),
            shape.clone(),
            self.objects.iter().map(|o| o.0).collect(),
            self.morphisms.iter().map(|m| m.0).collect(),
        )
    }
}

/// Objects `(j, x)`; morphisms `(s, u): (j, x) → (j', x')` with
/// `u: Fs(x) → x'`; `(s', u') ∘ (s, u) = (s' ∘ s, u' ∘ Fs'(u))`.
pub fn grothendieck_cat(d: &Diagram) -> Result<Grothendieck> {
    let shape = &d.shape;
    let objects: Vec<(usize, usize)> =
        (0..shape.object_count()).flat_map(|j| (0..d.values[j].object_count()).map(move |x| (j, x))).collect();
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    for s in 0..shape.morphism_count() {
        let (j, j2) = (shape.src(s), shape.tgt(s));
        for x in 0..d.values[j].object_count() {
            for &u in d.values[j2].outgoing(d.action[s].on_object(x)) {
                morphisms.push((s, x, u));
            }
        }
        crate::limits::check(|| "Grothendieck construction morphisms".into(), morphisms.len())?;
    }
    let morphism_index: HashMap<(usize, usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let obj_label = |j: usize, x: usize| format!("({},{})", shape.object_label(j), d.values[j].object_label(x));
    let cat = FinCat::from_fn(
        objects.iter().map(|&(j, x)| obj_label(j, x)).collect(),
        morphisms
            .iter()
            .map(|&(s, x, u)| {
                let (j, j2) = (shape.src(s), shape.tgt(s));
                let v = &d.values[j2];
                (
                    format!("({},{})", shape.morphism_label(s), v.morphism_label(u)),
                    object_index[&(j, x)],
                    object_index[&(j2, v.tgt(u))],
                )
            })
            .collect(),
        objects.iter().map(|&(j, x)| morphism_index[&(shape.identity(j), x, d.values[j].identity(x))]).collect(),
        |g, f| {
            let ((s2, _, u2), (s, x, u)) = (morphisms[g], morphisms[f]);
            let s21 = shape.compose(s2, s).expect("composable in J");
            let v = &d.values[shape.tgt(s2)];
            let u21 =
                v.compose(u2, d.action[s2].on_morphism(u)).ok_or_else(|| Error::invalid("fibre composite missing"))?;
            Ok(morphism_index[&(s21, x, u21)])
        },
    )?;
    Ok(Grothendieck { cat: Arc::new(cat), objects, morphisms, object_index, morphism_index })
}

/// `∫` of a transformation given by components `F j → G j`, checked natural.
pub fn grothendieck_map(
    alpha: &[FinFunctor],
    from: (&Diagram, &Grothendieck),
    to: (&Diagram, &Grothendieck),
) -> Result<FinFunctor> {
    let (d, gd) = from;
    let (e, ge) = to;
    let shape = &d.shape;
    if **shape != *e.shape || alpha.len() != shape.object_count() {
        return Err(Error::pre("transformation between diagrams of different shapes"));
    }
    for s in 0..shape.morphism_count() {
        let (j, j2) = (shape.src(s), shape.tgt(s));
        if !same_maps(&d.action[s].then(&alpha[j2])?, &alpha[j].then(&e.action[s])?) {
            return Err(Error::pre(format!("transformation is not natural at {}", shape.morphism_label(s))));
        }
    }
    FinFunctor::new(
        gd.cat.clone(),
        ge.cat.clone(),
        gd.objects.iter().map(|&(j, x)| ge.object_index[&(j, alpha[j].on_object(x))]).collect(),
        gd.morphisms
            .iter()
            .map(|&(s, x, u)| {
                let (j, j2) = (shape.src(s), shape.tgt(s));
                ge.morphism_index[&(s, alpha[j].on_object(x), alpha[j2].on_morphism(u))]
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackVerdict {
    pub isomorphic: bool,
    /// a cell of `∫(D1 ×_{D3} D2)` or of the pullback of the `∫`s witnessing failure
    pub counterexample: Option<String>,
}

/// Compares `∫(D1 ×_{D3} D2)` with `∫D1 ×_{∫D3} ∫D2` through the canonical
/// functor, for a cospan `D1 → D3 ← D2` given by components.
pub fn check_pullback_preservation(
    d1: &Diagram,
    d2: &Diagram,
    d3: &Diagram,
    alpha: &[FinFunctor],
    beta: &[FinFunctor],
) -> Result<PullbackVerdict> {
    let (g1, g2, g3) = (grothendieck_cat(d1)?, grothendieck_cat(d2)?, grothendieck_cat(d3)?);
    let int_alpha = grothendieck_map(alpha, (d1, &g1), (d3, &g3))?;
    let int_beta = grothendieck_map(beta, (d2, &g2), (d3, &g3))?;
    let right = pullback(&int_alpha, &int_beta)?;

    // the levelwise pullback diagram
    let shape = d1.shape.clone();
    let fibres = (0..shape.object_count()).map(|j| pullback(&alpha[j], &beta[j])).collect::<Result<Vec<_>>>()?;
    let action = (0..shape.morphism_count())
        .map(|s| {
            let (j, j2) = (shape.src(s), shape.tgt(s));
            let (p, p2) = (&fibres[j], &fibres[j2]);
            let objects = (0..p.cat().object_count())
                .map(|x| {
                    let (a, b) = p.object_pair(x);
                    p2.object_of(d1.action[s].on_object(a), d2.action[s].on_object(b)).expect("naturality")
                })
                .collect();
            let morphisms = (0..p.cat().morphism_count())
                .map(|m| {
                    let (a, b) = p.morphism_pair(m);
                    p2.morphism_of(d1.action[s].on_morphism(a), d2.action[s].on_morphism(b)).expect("naturality")
                })
                .collect();
            FinFunctor::new(p.cat().clone(), p2.cat().clone(), objects, morphisms)
        })
        .collect::<Result<Vec<_>>>()?;
    let dp = Diagram::new(shape.clone(), fibres.iter().map(|p| p.cat().clone()).collect(), action)?;
    let left = grothendieck_cat(&dp)?;

    let objects = left
        .objects
        .iter()
        .map(|&(j, x)| {
            let (a, b) = fibres[j].object_pair(x);
            right.object_of(g1.object_index[&(j, a)], g2.object_index[&(j, b)])
        })
        .collect::<Option<Vec<_>>>();
    let morphisms = left
        .morphisms
        .iter()
        .map(|&(s, x, u)| {
            let (j, j2) = (shape.src(s), shape.tgt(s));
            let (a, b) = fibres[j].object_pair(x);
            let (ua, ub) = fibres[j2].morphism_pair(u);
            right.morphism_of(g1.morphism_index[&(s, a, ua)], g2.morphism_index[&(s, b, ub)])
        })
        .collect::<Option<Vec<_>>>();
    let (Some(objects), Some(morphisms)) = (objects, morphisms) else {
        return Ok(PullbackVerdict { isomorphic: false, counterexample: Some("a cell has no image".into()) });
    };
    let f = FinFunctor::new(left.cat.clone(), right.cat().clone(), objects, morphisms)?;
    if f.is_bijective() {
        return Ok(PullbackVerdict { isomorphic: true, counterexample: None });
    }
    let hit_obj: std::collections::HashSet<usize> = f.object_map().iter().copied().collect();
    let hit_mor: std::collections::HashSet<usize> = f.morphism_map().iter().copied().collect();
    let missed = (0..right.cat().object_count())
        .find(|x| !hit_obj.contains(x))
        .map(|x| right.cat().object_label(x).to_string())
        .or_else(|| {
            (0..right.cat().morphism_count())
                .find(|m| !hit_mor.contains(m))
                .map(|m| right.cat().morphism_label(m).to_string())
        })
        .unwrap_or_else(|| "two cells with the same image".into());
    Ok(PullbackVerdict { isomorphic: false, counterexample: Some(missed) })
}
