//! Horizontal nerve levels and the double nerve.
//!
//! Level `m` of the horizontal nerve has as objects the `m`-chains of
//! composable horizontal morphisms and as morphisms the `m`-chains of
//! horizontally composable squares, i.e. the iterated pullback
//! `A1 ×_{A0} ⋯ ×_{A0} A1`. Chains are stored as tuples, so every level is
//! literally a category of tuples; level 0 is `A0` with keys `[x]` and `[v]`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{DblFunctor, FinDblCat};
use crate::cat::{FinCat, FinFunctor};
use crate::error::{Error, Result};
use crate::limits as caps;
use crate::sset::{nerve, nerve_map, BiSimplicialMap, BiTruncSSet, SimplicialMap};

/// One level of the horizontal nerve, with the tuple behind every cell.
#[derive(Clone, Debug)]
pub struct NerveLevel {
    pub cat: Arc<FinCat>,
    pub obj_keys: Vec<Vec<usize>>,
    pub mor_keys: Vec<Vec<usize>>,
    obj_index: HashMap<Vec<usize>, usize>,
    mor_index: HashMap<Vec<usize>, usize>,
}

impl NerveLevel {
    pub fn object_of(&self, key: &[usize]) -> Option<usize> {
        self.obj_index.get(key).copied()
    }

    pub fn morphism_of(&self, key: &[usize]) -> Option<usize> {
        self.mor_index.get(key).copied()
    }
}

fn chains(
    m: usize,
    count: usize,
    start: impl Fn(usize) -> usize,
    end: impl Fn(usize) -> usize,
    what: &str,
) -> Result<Vec<Vec<usize>>> {
    let mut by_start: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..count {
        by_start.entry(start(e)).or_default().push(e);
    }
    let mut level: Vec<Vec<usize>> = (0..count).map(|e| vec![e]).collect();
    for _ in 1..m {
        let mut next = Vec::new();
        for key in &level {
            if let Some(es) = by_start.get(&end(*key.last().unwrap())) {
                for &e in es {
                    let mut k = key.clone();
                    k.push(e);
                    next.push(k);
                }
            }
            caps::check(|| format!("{what} chains of length {m}"), next.len())?;
        }
        level = next;
    }
    Ok(level)
}

fn level(a: &FinDblCat, m: usize) -> Result<NerveLevel> {
    let (obj_keys, mor_keys, cat) = if m == 0 {
        let a0 = a.a0().clone();
        (
            (0..a0.object_count()).map(|x| vec![x]).collect::<Vec<_>>(),
            (0..a0.morphism_count()).map(|v| vec![v]).collect::<Vec<_>>(),
            a0,
        )
    } else {
        let a1 = a.a1();
        let obj_keys = chains(m, a1.object_count(), |h| a.s().on_object(h), |h| a.t().on_object(h), "horizontal")?;
        let mor_keys = chains(m, a1.morphism_count(), |q| a.s().on_morphism(q), |q| a.t().on_morphism(q), "square")?;
        let obj_index: HashMap<Vec<usize>, usize> = obj_keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mor_index: HashMap<Vec<usize>, usize> = mor_keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let join = |labels: Vec<&str>| labels.join("|");
        let cat = FinCat::from_fn(
            obj_keys.iter().map(|k| join(k.iter().map(|&h| a1.object_label(h)).collect())).collect(),
            mor_keys
                .iter()
                .map(|k| {
                    let src: Vec<usize> = k.iter().map(|&q| a1.src(q)).collect();
                    let tgt: Vec<usize> = k.iter().map(|&q| a1.tgt(q)).collect();
                    (join(k.iter().map(|&q| a1.morphism_label(q)).collect()), obj_index[&src], obj_index[&tgt])
                })
                .collect(),
            obj_keys.iter().map(|k| mor_index[&k.iter().map(|&h| a1.identity(h)).collect::<Vec<_>>()]).collect(),
            |g, f| {
                let key: Vec<usize> = mor_keys[g]
                    .iter()
                    .zip(&mor_keys[f])
                    .map(|(&qg, &qf)| a1.compose(qg, qf).expect("componentwise composable"))
                    .collect();
                mor_index
                    .get(&key)
                    .copied()
                    .ok_or_else(|| Error::invalid("vertical pasting breaks horizontal composability"))
            },
        )?;
        (obj_keys, mor_keys, Arc::new(cat))
    };
    let obj_index = obj_keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mor_index = mor_keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    Ok(NerveLevel { cat, obj_keys, mor_keys, obj_index, mor_index })
}

/// The horizontal nerve up to level `m_max`, with face and degeneracy functors.
#[derive(Clone, Debug)]
pub struct HorizontalNerve {
    pub levels: Vec<NerveLevel>,
    /// `faces[m][i]: level m → level m-1`
    pub faces: Vec<Vec<FinFunctor>>,
    /// `degens[m][j]: level m → level m+1`
    pub degens: Vec<Vec<FinFunctor>>,
}

/// The category at level `m` of the horizontal nerve.
pub fn horizontal_nerve_level(a: &FinDblCat, m: usize) -> Result<FinCat> {
    Ok((*level(a, m)?.cat).clone())
}

pub fn horizontal_nerve(a: &FinDblCat, m_max: usize) -> Result<HorizontalNerve> {
    let levels = (0..=m_max).map(|m| level(a, m)).collect::<Result<Vec<_>>>()?;
    // cells of A0 (objects or verticals) at the ends of a cell of A1
    let s = |obj: bool, e: usize| if obj { a.s().on_object(e) } else { a.s().on_morphism(e) };
    let t = |obj: bool, e: usize| if obj { a.t().on_object(e) } else { a.t().on_morphism(e) };
    let unit = |obj: bool, e: usize| if obj { a.i().on_object(e) } else { a.i().on_morphism(e) };
    let comp = |obj: bool, l: usize, r: usize| {
        if obj { a.hcompose(l, r) } else { a.hpaste(l, r) }.expect("chains are composable")
    };
    let face_key = |m: usize, i: usize, obj: bool, key: &[usize]| -> Vec<usize> {
        if m == 1 {
            vec![if i == 0 { t(obj, key[0]) } else { s(obj, key[0]) }]
        } else if i == 0 {
            key[1..].to_vec()
        } else if i == m {
            key[..m - 1].to_vec()
        } else {
            let mut v = key[..i - 1].to_vec();
            v.push(comp(obj, key[i - 1], key[i]));
            v.extend_from_slice(&key[i + 1..]);
            v
        }
    };
    let degen_key = |m: usize, j: usize, obj: bool, key: &[usize]| -> Vec<usize> {
        if m == 0 {
            return vec![unit(obj, key[0])];
        }
        let at = if j == 0 { s(obj, key[0]) } else { t(obj, key[j - 1]) };
        let mut v = key.to_vec();
        v.insert(j, unit(obj, at));
        v
    };
    let functor = |from: &NerveLevel, to: &NerveLevel, f: &dyn Fn(bool, &[usize]) -> Vec<usize>| {
        let objects =
            from.obj_keys.iter().map(|k| to.object_of(&f(true, k)).expect("face of a chain is a chain")).collect();
        let morphisms =
            from.mor_keys.iter().map(|k| to.morphism_of(&f(false, k)).expect("face of a chain is a chain")).collect();
        FinFunctor::new(from.cat.clone(), to.cat.clone(), objects, morphisms)
    };
    let mut faces = vec![Vec::new()];
    for m in 1..=m_max {
        faces.push(
            (0..=m)
                .map(|i| functor(&levels[m], &levels[m - 1], &|obj, k| face_key(m, i, obj, k)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut degens = Vec::new();
    for m in 0..=m_max {
        degens.push(if m == m_max {
            Vec::new()
        } else {
            (0..=m)
                .map(|j| functor(&levels[m], &levels[m + 1], &|obj, k| degen_key(m, j, obj, k)))
                .collect::<Result<Vec<_>>>()?
        });
    }
    Ok(HorizontalNerve { levels, faces, degens })
}

impl HorizontalNerve {
    /// The level functors induced by a double functor between the two nerves.
    pub fn map_levels(f: &DblFunctor, from: &HorizontalNerve, to: &HorizontalNerve) -> Result<Vec<FinFunctor>> {
        from.levels
            .iter()
            .zip(&to.levels)
            .enumerate()
            .map(|(m, (l, r))| {
                let (on_obj, on_mor): (&dyn Fn(usize) -> usize, &dyn Fn(usize) -> usize) = if m == 0 {
                    (&|x| f.on_object(x), &|v| f.on_vertical(v))
                } else {
                    (&|h| f.on_horizontal(h), &|q| f.on_square(q))
                };
                let objects = l
                    .obj_keys
                    .iter()
                    .map(|k| r.object_of(&k.iter().map(|&e| on_obj(e)).collect::<Vec<_>>()).expect("chain image"))
                    .collect();
                let morphisms = l
                    .mor_keys
                    .iter()
                    .map(|k| r.morphism_of(&k.iter().map(|&e| on_mor(e)).collect::<Vec<_>>()).expect("chain image"))
                    .collect();
                FinFunctor::new(l.cat.clone(), r.cat.clone(), objects, morphisms)
            })
            .collect()
    }
}

/// The double nerve truncated at `(n_max, k_max)`: column `n` is the nerve of
/// horizontal nerve level `n`, so a bisimplex at `(n, k)` is a double functor
/// `[n] ⊠ [k] → A`.
pub fn double_nerve(a: &FinDblCat, n_max: usize, k_max: usize) -> Result<BiTruncSSet> {
    let hn = horizontal_nerve(a, n_max)?;
    columns_of(&hn, k_max)
}

fn columns_of(hn: &HorizontalNerve, k_max: usize) -> Result<BiTruncSSet> {
    let columns = hn.levels.iter().map(|l| nerve(&l.cat, k_max).map(Arc::new)).collect::<Result<Vec<_>>>()?;
    let n_max = columns.len() - 1;
    let hfaces = (0..=n_max)
        .map(|n| {
            hn.faces[n]
                .iter()
                .map(|f| nerve_map(f, columns[n].clone(), columns[n - 1].clone()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let hdegens = (0..=n_max)
        .map(|n| {
            hn.degens[n]
                .iter()
                .map(|f| nerve_map(f, columns[n].clone(), columns[n + 1].clone()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BiTruncSSet::new(columns, hfaces, hdegens)
}

/// Double nerves of both ends of `f`, and the induced map.
pub fn double_nerve_map(
    f: &DblFunctor,
    n_max: usize,
    k_max: usize,
) -> Result<(BiTruncSSet, BiTruncSSet, BiSimplicialMap)> {
    let from = horizontal_nerve(f.source(), n_max)?;
    let to = horizontal_nerve(f.target(), n_max)?;
    let levels = HorizontalNerve::map_levels(f, &from, &to)?;
    let x = columns_of(&from, k_max)?;
    let y = columns_of(&to, k_max)?;
    let columns = levels
        .iter()
        .enumerate()
        .map(|(n, g)| nerve_map(g, x.column(n).clone(), y.column(n).clone()))
        .collect::<Result<Vec<SimplicialMap>>>()?;
    Ok((x, y, BiSimplicialMap { columns }))
}
