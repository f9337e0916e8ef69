//! Standard simplices and their subcomplexes, nerves, subdivision, the chain
//! poset model of `cSd²`, and pushouts of simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use super::{SimplicialMap, TruncSSet};
use crate::cat::{FinCat, FinPoset, PosetInclusion};
use crate::error::{Error, Result};
use crate::limits as caps;
use crate::simplex;

/// Which subcomplex of `Δ[k]` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Simplex,
    Boundary,
    /// the horn missing the top cell and the face opposite vertex `t`
    Horn(usize),
}

impl Shape {
    fn check(self, k: usize) -> Result<()> {
        match self {
            Shape::Horn(t) if k == 0 => Err(Error::pre(format!("horn Λ^{t}[0] does not exist"))),
            Shape::Horn(t) if t > k => Err(Error::pre(format!("horn vertex {t} exceeds {k}"))),
            _ => Ok(()),
        }
    }

    /// Whether a face of `Δ[k]` with vertex set `image` belongs to the shape.
    fn contains(self, image: u64, k: usize) -> bool {
        let full = (1u64 << (k + 1)) - 1;
        match self {
            Shape::Simplex => true,
            Shape::Boundary => image != full,
            Shape::Horn(t) => image != full && image != full & !(1 << t),
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Simplex => write!(f, "simplex"),
            Shape::Boundary => write!(f, "boundary"),
            Shape::Horn(t) => write!(f, "horn({t})"),
        }
    }
}

fn vertex_label(key: &[usize], k: usize) -> String {
    let sep = if k < 10 { "" } else { "," };
    key.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn mask(key: &[usize]) -> u64 {
    key.iter().fold(0, |m, &v| m | 1 << v)
}

/// `Δ[k]`, `∂Δ[k]` or `Λ^t[k]`, truncated at `d`. Simplices are keyed by
/// their nondecreasing vertex sequences.
pub fn standard(shape: Shape, k: usize, d: usize) -> Result<TruncSSet> {
    shape.check(k)?;
    if k >= 63 {
        return Err(Error::pre("standard simplices are limited to dimension 62"));
    }
    TruncSSet::from_model(
        d,
        |m| {
            caps::check(|| format!("simplices of Δ[{k}] at level {m}"), simplex::binomial(k + m + 1, m + 1))?;
            Ok(simplex::monotone_maps(m, k).into_iter().filter(|v| shape.contains(mask(v), k)).collect())
        },
        |_, key, i| drop_at(key, i),
        |_, key, j| repeat_at(key, j),
        |_, key| vertex_label(key, k),
    )
}

fn drop_at(key: &[usize], i: usize) -> Vec<usize> {
    let mut v = key.to_vec();
    v.remove(i);
    v
}

fn repeat_at(key: &[usize], j: usize) -> Vec<usize> {
    let mut v = key.to_vec();
    v.insert(j, key[j]);
    v
}

/// The nerve of `c` truncated at `d`. A `k`-simplex is keyed by
/// `[x0, f1, …, fk]`: its first object followed by the composable chain.
pub fn nerve(c: &FinCat, d: usize) -> Result<TruncSSet> {
    // chains of length k ending at each object, to check the cap before enumerating
    let mut ending = vec![1usize; c.object_count()];
    for k in 1..=d {
        let mut next = vec![0usize; c.object_count()];
        for f in 0..c.morphism_count() {
            next[c.tgt(f)] = next[c.tgt(f)].saturating_add(ending[c.src(f)]);
        }
        let total = next.iter().fold(0usize, |a, &b| a.saturating_add(b));
        caps::check(|| format!("nerve simplices at level {k}"), total)?;
        ending = next;
    }
    let tgt_of = |key: &[usize]| if key.len() == 1 { key[0] } else { c.tgt(key[key.len() - 1]) };
    let obj_at = |key: &[usize], j: usize| if j == 0 { key[0] } else { c.tgt(key[j]) };
    TruncSSet::from_model(
        d,
        |k| {
            let mut level: Vec<Vec<usize>> = (0..c.object_count()).map(|x| vec![x]).collect();
            for _ in 0..k {
                level = level
                    .into_iter()
                    .flat_map(|key| {
                        let end = tgt_of(&key);
                        c.outgoing(end)
                            .iter()
                            .map(move |&f| {
                                let mut k2 = key.clone();
                                k2.push(f);
                                k2
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            level.sort();
            Ok(level)
        },
        |k, key, i| {
            if i == 0 {
                let mut v = vec![c.tgt(key[1])];
                v.extend_from_slice(&key[2..]);
                v
            } else if i == k {
                key[..k].to_vec()
            } else {
                let mut v = key[..i].to_vec();
                v.push(c.compose(key[i + 1], key[i]).expect("nerve chains are composable"));
                v.extend_from_slice(&key[i + 2..]);
                v
            }
        },
        |_, key, j| {
            let mut v = key[..=j].to_vec();
            v.push(c.identity(obj_at(key, j)));
            v.extend_from_slice(&key[j + 1..]);
            v
        },
        |_, key| {
            if key.len() == 1 {
                c.object_label(key[0]).to_string()
            } else {
                let parts: Vec<&str> = key[1..].iter().map(|&f| c.morphism_label(f)).collect();
                format!("[{}]", parts.join("|"))
            }
        },
    )
}

/// The map of nerves induced by a functor; `x` and `y` must be the nerves
/// of its source and target.
pub fn nerve_map(f: &crate::cat::FinFunctor, x: Arc<TruncSSet>, y: Arc<TruncSSet>) -> Result<SimplicialMap> {
    SimplicialMap::from_keys(x, y, |_, key| {
        let mut v = vec![f.on_object(key[0])];
        v.extend(key[1..].iter().map(|&m| f.on_morphism(m)));
        v
    })
}

/// The nerve of a poset, through its thin category.
pub fn poset_nerve(p: &FinPoset, d: usize) -> Result<TruncSSet> {
    nerve(&p.as_category()?, d)
}

/// The face poset of the nondegenerate simplices of a complex-like `x`,
/// ordered by inclusion of vertex sets. Only simplices up to the truncation
/// are seen, so this is exact when `x` has no nondegenerate cells above it.
pub fn sd_poset(x: &TruncSSet) -> Result<FinPoset> {
    let mut cells: Vec<(usize, usize, u128)> = Vec::new();
    let mut seen: HashMap<u128, (usize, usize)> = HashMap::new();
    if x.count(0) > 128 {
        return Err(Error::pre("subdivision supports at most 128 vertices"));
    }
    for k in 0..=x.trunc() {
        for s in x.nondegenerate(k) {
            let verts: Vec<usize> = (0..=k).map(|i| x.vertex(k, s, i)).collect();
            let m = verts.iter().fold(0u128, |m, &v| m | 1 << v);
            if m.count_ones() as usize != k + 1 {
                return Err(Error::pre(format!("not complex-like: {} has repeated vertices", x.label(k, s))));
            }
            if let Some((k2, s2)) = seen.insert(m, (k, s)) {
                return Err(Error::pre(format!(
                    "not complex-like: {} and {} share their vertices",
                    x.label(k2, s2),
                    x.label(k, s)
                )));
            }
            cells.push((k, s, m));
        }
    }
    let mut labels: Vec<String> = cells.iter().map(|&(k, s, _)| x.label(k, s).to_string()).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        labels = cells.iter().map(|&(k, s, _)| format!("{k}:{}", x.label(k, s))).collect();
    }
    FinPoset::from_fn(labels, |a, b| cells[a].2 & !cells[b].2 == 0)
}

/// Barycentric subdivision of a complex-like simplicial set, at the same truncation.
pub fn sd(x: &TruncSSet) -> Result<TruncSSet> {
    poset_nerve(&sd_poset(x)?, x.trunc())
}

/// Strict chains of nonempty subsets of `{0..k}` (as bitmasks), restricted
/// to the shape, ordered by inclusion of their sets of entries.
pub fn csd2_poset(shape: Shape, k: usize) -> Result<FinPoset> {
    shape.check(k)?;
    if k > 5 {
        return Err(Error::pre("cSd² chain posets are limited to k ≤ 5"));
    }
    let full = (1u64 << (k + 1)) - 1;
    let mut subsets: Vec<u64> = (1..=full).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), s.reverse_bits()));
    let rank: HashMap<u64, usize> = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut chains: Vec<Vec<u64>> = Vec::new();
    fn extend(c: &mut Vec<u64>, subsets: &[u64], out: &mut Vec<Vec<u64>>) {
        out.push(c.clone());
        let top = *c.last().unwrap();
        for &s in subsets {
            if s != top && s & top == top {
                c.push(s);
                extend(c, subsets, out);
                c.pop();
            }
        }
    }
    for &s in &subsets {
        extend(&mut vec![s], &subsets, &mut chains);
    }
    chains.retain(|c| shape.contains(*c.last().unwrap(), k));
    caps::check(|| format!("cSd² chains for k = {k}"), chains.len())?;
    chains.sort_by_key(|c| (c.len(), c.iter().map(|s| rank[s]).collect::<Vec<_>>()));
    let entries: Vec<u64> = chains.iter().map(|c| c.iter().fold(0, |m, s| m | 1 << rank[s])).collect();
    let labels = chains
        .iter()
        .map(|c| {
            c.iter()
                .map(|&s| vertex_label(&(0..=k).filter(|v| s >> v & 1 == 1).collect::<Vec<_>>(), k))
                .collect::<Vec<_>>()
                .join("<")
        })
        .collect();
    FinPoset::from_fn(labels, |a, b| entries[a] & !entries[b] == 0)
}

/// The inclusion `cSd²(shape) ⊆ cSd²Δ[k]`, matching elements by label.
pub fn csd2_inclusion(shape: Shape, k: usize) -> Result<PosetInclusion> {
    let ambient = Arc::new(csd2_poset(Shape::Simplex, k)?);
    let sub = Arc::new(csd2_poset(shape, k)?);
    let embedding = sub.labels().iter().map(|l| ambient.find(l).expect("shape chains are simplex chains")).collect();
    PosetInclusion::new(sub, ambient, embedding)
}

/// A pushout of simplicial sets, with its two legs.
pub struct SSetPushout {
    pub object: Arc<TruncSSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

/// Levelwise pushout of `b ← a → c`: simplices of `b ⊔ c` glued along `a`.
/// Labels are `0.x` for classes meeting `b` and `1.x` otherwise.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<SSetPushout> {
    if **f.source() != **g.source() {
        return Err(Error::pre("pushout legs must share their source"));
    }
    let (b, c) = (f.target().clone(), g.target().clone());
    let d = b.trunc();
    let mut class_of: Vec<Vec<usize>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    for k in 0..=d {
        let nb = b.count(k);
        let mut uf = UnionFind::new(nb + c.count(k));
        for a in 0..f.source().count(k) {
            uf.union(f.apply(k, a), nb + g.apply(k, a));
        }
        let mut class = vec![usize::MAX; uf.len()];
        let mut names = Vec::new();
        for e in 0..uf.len() {
            let r = uf.find(e);
            if class[r] == usize::MAX {
                class[r] = names.len();
                names.push(if e < nb { format!("0.{}", b.label(k, e)) } else { format!("1.{}", c.label(k, e - nb)) });
            }
            class[e] = class[r];
        }
        class_of.push(class);
        labels.push(names);
    }
    let rep = |k: usize| -> Vec<usize> {
        let mut r = vec![usize::MAX; labels[k].len()];
        for (e, &cl) in class_of[k].iter().enumerate().rev() {
            r[cl] = e;
        }
        r
    };
    let elem_face = |k: usize, e: usize, i: usize| {
        let nb = b.count(k);
        if e < nb {
            class_of[k - 1][b.face(k, e, i)]
        } else {
            class_of[k - 1][b.count(k - 1) + c.face(k, e - nb, i)]
        }
    };
    let elem_degen = |k: usize, e: usize, j: usize| {
        let nb = b.count(k);
        if e < nb {
            class_of[k + 1][b.degeneracy(k, e, j)]
        } else {
            class_of[k + 1][b.count(k + 1) + c.degeneracy(k, e - nb, j)]
        }
    };
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    for k in 0..=d {
        let reps = rep(k);
        faces.push(if k == 0 {
            vec![]
        } else {
            reps.iter().map(|&e| (0..=k).map(|i| elem_face(k, e, i)).collect()).collect()
        });
        degens.push(if k == d {
            vec![]
        } else {
            reps.iter().map(|&e| (0..=k).map(|j| elem_degen(k, e, j)).collect()).collect()
        });
    }
    let object = Arc::new(TruncSSet::from_tables(d, labels, faces, degens)?);
    let left_levels = (0..=d).map(|k| class_of[k][..b.count(k)].to_vec()).collect();
    let right_levels = (0..=d).map(|k| class_of[k][b.count(k)..].to_vec()).collect();
    Ok(SSetPushout {
        left: SimplicialMap::new(b, object.clone(), left_levels)?,
        right: SimplicialMap::new(c, object.clone(), right_levels)?,
        object,
    })
}

/// `Δ[1] ⊔_{Δ[0]} Δ[1]`, both legs the coface `d⁰` (vertex 1). It has three
/// vertices and two edges, so it is a model of `Sd Δ[1]`; `Sd² Δ[1]` has five
/// vertices and four edges.
pub fn glued_edges(d: usize) -> Result<SSetPushout> {
    let point = Arc::new(standard(Shape::Simplex, 0, d)?);
    let edge = Arc::new(standard(Shape::Simplex, 1, d)?);
    let d0 = SimplicialMap::from_keys(point, edge, |_, key| vec![1; key.len()])?;
    pushout(&d0, &d0)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::chain_category;

    #[test]
    fn standard_counts() {
        assert_eq!(standard(Shape::Simplex, 1, 1).unwrap().counts(), vec![2, 3]);
        assert_eq!(standard(Shape::Boundary, 2, 2).unwrap().nondegenerate_counts(), vec![3, 3, 0]);
        assert_eq!(standard(Shape::Horn(1), 2, 2).unwrap().nondegenerate_counts(), vec![3, 2, 0]);
        assert!(standard(Shape::Horn(3), 2, 2).is_err());
        assert!(standard(Shape::Horn(0), 0, 2).is_err());
    }

    #[test]
    fn standard_outputs_satisfy_identities() {
        for k in 0..4 {
            for d in 0..4 {
                assert!(standard(Shape::Simplex, k, d).unwrap().validate().is_empty());
                assert!(standard(Shape::Boundary, k, d).unwrap().validate().is_empty());
            }
        }
    }

    #[test]
    fn nerve_of_chain_counts() {
        for n in 0..=4 {
            let x = nerve(&chain_category(n), 4).unwrap();
            for k in 0..=4 {
                assert_eq!(x.count(k), simplex::binomial(n + k + 1, k + 1));
            }
            assert!(x.validate().is_empty());
        }
    }

    #[test]
    fn subdivisions() {
        let s1 = sd(&standard(Shape::Simplex, 1, 1).unwrap()).unwrap();
        assert_eq!(s1.nondegenerate_counts(), vec![3, 2]);
        let s2 = sd(&standard(Shape::Boundary, 2, 2).unwrap()).unwrap();
        assert_eq!(s2.nondegenerate_counts()[..2], [6, 6]);
        let s3 = sd(&standard(Shape::Simplex, 2, 2).unwrap()).unwrap();
        assert_eq!(s3.nondegenerate_counts(), vec![7, 12, 6]);
    }

    #[test]
    fn sd_rejects_non_complexes() {
        // a loop: one vertex, one nondegenerate edge
        let x = nerve(&loop_category(), 1).unwrap();
        assert!(sd(&x).is_err());
    }

    fn loop_category() -> FinCat {
        // {id, e} with e∘e = e
        FinCat::from_fn(vec!["*".into()], vec![("id".into(), 0, 0), ("e".into(), 0, 0)], vec![0], |g, f| {
            Ok(if g == 0 { f } else { 1 })
        })
        .unwrap()
    }

    #[test]
    fn csd2_small_cases() {
        let p = csd2_poset(Shape::Simplex, 1).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.covers().len(), 4);
        assert_eq!(csd2_poset(Shape::Simplex, 2).unwrap().len(), 25);
        let b = csd2_poset(Shape::Boundary, 1).unwrap();
        assert_eq!(b.len(), 2);
        assert!(!b.leq(0, 1) && !b.leq(1, 0));
    }

    #[test]
    fn glued_edges_is_first_subdivision() {
        let g = glued_edges(1).unwrap();
        assert_eq!(g.object.nondegenerate_counts(), vec![3, 2]);
        let s2 = sd(&sd(&standard(Shape::Simplex, 1, 1).unwrap()).unwrap()).unwrap();
        assert_eq!(s2.nondegenerate_counts(), vec![5, 4]);
    }
}
