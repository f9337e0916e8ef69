//! Decidable limits and colimits of finite categories.
//!
//! Products index the pair `(i, j)` as `i * |D| + j`, for objects and
//! morphisms alike. Other constructions document their own ordering.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCat, FinFunctor, FinPoset};
use crate::error::{Error, Result};

/// The category of the chain poset `[n] = {0 < 1 < … < n}`.
pub fn chain_category(n: usize) -> FinCat {
    FinPoset::chain(n).as_category().expect("chain categories are small")
}

/// The discrete category on the given labels.
pub fn discrete(labels: Vec<String>) -> FinCat {
    let morphisms = labels.iter().enumerate().map(|(i, l)| (format!("id_{l}"), i, i)).collect();
    let identities = (0..labels.len()).collect();
    FinCat::from_fn(labels, morphisms, identities, |g, _| Ok(g)).expect("discrete category")
}

pub fn product(c: &FinCat, d: &FinCat) -> Result<FinCat> {
    let (no, nm) = (d.object_count(), d.morphism_count());
    let objects =
        pairs(c.object_count(), no).map(|(a, b)| format!("({},{})", c.object_label(a), d.object_label(b))).collect();
    let morphisms = pairs(c.morphism_count(), nm)
        .map(|(f, g)| {
            (
                format!("({},{})", c.morphism_label(f), d.morphism_label(g)),
                c.src(f) * no + d.src(g),
                c.tgt(f) * no + d.tgt(g),
            )
        })
        .collect();
    let identities = pairs(c.object_count(), no).map(|(a, b)| c.identity(a) * nm + d.identity(b)).collect();
    FinCat::from_fn(objects, morphisms, identities, |g, f| {
        let (g1, g2) = (g / nm, g % nm);
        let (f1, f2) = (f / nm, f % nm);
        Ok(c.compose(g1, f1).unwrap() * nm + d.compose(g2, f2).unwrap())
    })
}

fn pairs(n: usize, m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..m).map(move |j| (i, j)))
}

/// Disjoint union; objects and morphisms of `c` come first.
pub fn coproduct(c: &FinCat, d: &FinCat) -> Result<FinCat> {
    let (co, cm) = (c.object_count(), c.morphism_count());
    let objects = c
        .object_labels()
        .iter()
        .map(|l| format!("0.{l}"))
        .chain(d.object_labels().iter().map(|l| format!("1.{l}")))
        .collect();
    let morphisms = (0..cm)
        .map(|f| (format!("0.{}", c.morphism_label(f)), c.src(f), c.tgt(f)))
        .chain((0..d.morphism_count()).map(|f| (format!("1.{}", d.morphism_label(f)), co + d.src(f), co + d.tgt(f))))
        .collect();
    let identities = (0..co).map(|x| c.identity(x)).chain((0..d.object_count()).map(|x| cm + d.identity(x))).collect();
    FinCat::from_fn(objects, morphisms, identities, |g, f| {
        Ok(if f < cm { c.compose(g, f).unwrap() } else { cm + d.compose(g - cm, f - cm).unwrap() })
    })
}

/// A strict pullback `X ×_Z Y` together with its pair tables.
#[derive(Clone, Debug)]
pub struct Pullback {
    cat: Arc<FinCat>,
    obj_pairs: Vec<(usize, usize)>,
    mor_pairs: Vec<(usize, usize)>,
    obj_index: HashMap<(usize, usize), usize>,
    mor_index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn object_pair(&self, x: usize) -> (usize, usize) {
        self.obj_pairs[x]
    }

    pub fn morphism_pair(&self, f: usize) -> (usize, usize) {
        self.mor_pairs[f]
    }

    pub fn object_of(&self, x: usize, y: usize) -> Option<usize> {
        self.obj_index.get(&(x, y)).copied()
    }

    pub fn morphism_of(&self, u: usize, v: usize) -> Option<usize> {
        self.mor_index.get(&(u, v)).copied()
    }

    pub fn first_projection(&self, x: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::unchecked(
            self.cat.clone(),
            x.clone(),
            self.obj_pairs.iter().map(|p| p.0).collect(),
            self.mor_pairs.iter().map(|p| p.0).collect(),
        )
        .expect("projection")
    }

    pub fn second_projection(&self, y: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::unchecked(
            self.cat.clone(),
            y.clone(),
            self.obj_pairs.iter().map(|p| p.1).collect(),
            self.mor_pairs.iter().map(|p| p.1).collect(),
        )
        .expect("projection")
    }
}

/// Pullback of `f: X → Z` and `g: Y → Z`. Pairs are listed in lexicographic order.
pub fn pullback(f: &FinFunctor, g: &FinFunctor) -> Result<Pullback> {
    if **f.target() != **g.target() {
        return Err(Error::pre("pullback legs must share their target"));
    }
    let (x, y) = (f.source(), g.source());
    let z = f.target();
    let mut y_over: Vec<Vec<usize>> = vec![Vec::new(); z.object_count()];
    for b in 0..y.object_count() {
        y_over[g.on_object(b)].push(b);
    }
    let mut ym_over: Vec<Vec<usize>> = vec![Vec::new(); z.morphism_count()];
    for v in 0..y.morphism_count() {
        ym_over[g.on_morphism(v)].push(v);
    }
    let obj_pairs: Vec<(usize, usize)> =
        (0..x.object_count()).flat_map(|a| y_over[f.on_object(a)].iter().map(move |&b| (a, b))).collect();
    let mor_pairs: Vec<(usize, usize)> =
        (0..x.morphism_count()).flat_map(|u| ym_over[f.on_morphism(u)].iter().map(move |&v| (u, v))).collect();
    crate::limits::check(|| "pullback morphisms".into(), mor_pairs.len())?;
    let obj_index: HashMap<_, _> = obj_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mor_index: HashMap<_, _> = mor_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let objects = obj_pairs.iter().map(|&(a, b)| format!("({},{})", x.object_label(a), y.object_label(b))).collect();
    let not_functors = || Error::invalid("pullback legs are not functors");
    let morphisms = mor_pairs
        .iter()
        .map(|&(u, v)| {
            let end = |p| obj_index.get(&p).copied().ok_or_else(not_functors);
            Ok((
                format!("({},{})", x.morphism_label(u), y.morphism_label(v)),
                end((x.src(u), y.src(v)))?,
                end((x.tgt(u), y.tgt(v)))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let identities = obj_pairs
        .iter()
        .map(|&(a, b)| mor_index.get(&(x.identity(a), y.identity(b))).copied().ok_or_else(not_functors))
        .collect::<Result<Vec<_>>>()?;
    let cat = FinCat::from_fn(objects, morphisms, identities, |h, k| {
        let (h1, h2) = mor_pairs[h];
        let (k1, k2) = mor_pairs[k];
        let pair = x.compose(h1, k1).zip(y.compose(h2, k2)).ok_or_else(not_functors)?;
        mor_index.get(&pair).copied().ok_or_else(not_functors)
    })?;
    Ok(Pullback { cat: Arc::new(cat), obj_pairs, mor_pairs, obj_index, mor_index })
}
