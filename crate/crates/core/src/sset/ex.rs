//! Kan's `Ex` on truncated simplicial sets, and the last-vertex map `β: X → Ex X`.
//!
//! An `n`-simplex of `Ex X` is a simplicial map `Sd Δ[n] → X`. Since
//! `Sd Δ[n]` is the nerve of the poset of nonempty subsets of `[n]`, such a
//! map is fixed by where it sends the strict chains, subject to agreeing on
//! faces. Keys list those images in the order of [`SdSimplex::chains`].

use std::collections::HashMap;
use std::sync::Arc;

use super::{SimplicialMap, TruncSSet};
use crate::error::{Error, Result};
use crate::limits as caps;
use crate::simplex;

pub const EX_MAX_LEVEL: usize = 3;

/// Strict chains of nonempty subsets of `[n]`, shortest first.
struct SdSimplex {
    chains: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, usize>,
}

impl SdSimplex {
    fn new(n: usize) -> SdSimplex {
        let full = (1u64 << (n + 1)) - 1;
        let mut chains = Vec::new();
        fn grow(c: &mut Vec<u64>, full: u64, out: &mut Vec<Vec<u64>>) {
            out.push(c.clone());
            let top = *c.last().unwrap();
            for s in top + 1..=full {
                if s & top == top {
                    c.push(s);
                    grow(c, full, out);
                    c.pop();
                }
            }
        }
        for s in 1..=full {
            grow(&mut vec![s], full, &mut chains);
        }
        chains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        SdSimplex { chains, index }
    }
}

fn map_subset(s: u64, theta: &[usize]) -> u64 {
    (0..theta.len()).filter(|&v| s >> v & 1 == 1).fold(0, |m, v| m | 1 << theta[v])
}

struct Ex<'a> {
    x: &'a TruncSSet,
    sd: Vec<SdSimplex>,
}

impl Ex<'_> {
    /// The value of a simplex of `Ex_n` on the (possibly non-strict) chain of
    /// subsets `sets`, of dimension `sets.len() - 1`.
    fn value(&self, n: usize, key: &[usize], sets: &[u64]) -> usize {
        let (epi, strict) = {
            let mut strict: Vec<u64> = Vec::new();
            let mut epi = Vec::new();
            for &s in sets {
                if strict.last() != Some(&s) {
                    strict.push(s);
                }
                epi.push(strict.len() - 1);
            }
            (epi, strict)
        };
        let y = key[self.sd[n].index[&strict]];
        self.x.act(&epi, strict.len() - 1, y)
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let sd = &self.sd[n];
        let mut by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>> = vec![HashMap::new(); n + 1];
        for (r, table) in by_faces.iter_mut().enumerate().skip(1) {
            for y in 0..self.x.count(r) {
                let faces = (0..=r).map(|i| self.x.face(r, y, i)).collect();
                table.entry(faces).or_default().push(y);
            }
        }
        let face_idx: Vec<Vec<usize>> = sd
            .chains
            .iter()
            .map(|c| {
                if c.len() == 1 {
                    return Vec::new();
                }
                (0..c.len())
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        sd.index[&f]
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![usize::MAX; sd.chains.len()];
        let limit = caps::max_cells();
        self.fill(0, &face_idx, &by_faces, &mut cur, &mut out, limit)?;
        Ok(out)
    }

    fn fill(
        &self,
        pos: usize,
        face_idx: &[Vec<usize>],
        by_faces: &[HashMap<Vec<usize>, Vec<usize>>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if pos == cur.len() {
            if out.len() == limit {
                return Err(Error::TooLarge { what: "Ex simplices".into(), limit });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let r = face_idx[pos].len().saturating_sub(1);
        if r == 0 {
            for v in 0..self.x.count(0) {
                cur[pos] = v;
                self.fill(pos + 1, face_idx, by_faces, cur, out, limit)?;
            }
        } else {
            let faces: Vec<usize> = face_idx[pos].iter().map(|&c| cur[c]).collect();
            if let Some(cands) = by_faces[r].get(&faces) {
                for &y in cands {
                    cur[pos] = y;
                    self.fill(pos + 1, face_idx, by_faces, cur, out, limit)?;
                }
            }
        }
        cur[pos] = usize::MAX;
        Ok(())
    }
}

fn check_levels(x: &TruncSSet, n_max: usize) -> Result<()> {
    if n_max > EX_MAX_LEVEL {
        return Err(Error::pre(format!("Ex is only enumerated up to level {EX_MAX_LEVEL}")));
    }
    if x.trunc() < n_max {
        return Err(Error::pre(format!("Ex up to level {n_max} needs the input truncated at {n_max} or above")));
    }
    Ok(())
}

/// `Ex X` truncated at `n_max ≤ 3`.
pub fn ex(x: &TruncSSet, n_max: usize) -> Result<TruncSSet> {
    check_levels(x, n_max)?;
    let e = Ex { x, sd: (0..=n_max + 1).map(SdSimplex::new).collect() };
    TruncSSet::from_model(
        n_max,
        |n| e.enumerate(n),
        |n, key, i| {
            let delta = simplex::coface(n, i);
            e.sd[n - 1]
                .chains
                .iter()
                .map(|c| {
                    let image: Vec<u64> = c.iter().map(|&s| map_subset(s, &delta)).collect();
                    key[e.sd[n].index[&image]]
                })
                .collect()
        },
        |n, key, j| {
            let sigma = simplex::codegeneracy(n, j);
            e.sd[n + 1]
                .chains
                .iter()
                .map(|c| {
                    let image: Vec<u64> = c.iter().map(|&s| map_subset(s, &sigma)).collect();
                    e.value(n, key, &image)
                })
                .collect()
        },
        |n, key| {
            let parts: Vec<&str> = key.iter().zip(&e.sd[n].chains).map(|(&y, c)| x.label(c.len() - 1, y)).collect();
            format!("{{{}}}", parts.join(","))
        },
    )
}

/// `β_X: X → Ex X` at truncation `n_max`: an `n`-simplex goes to its
/// composite with the last-vertex map `Sd Δ[n] → Δ[n]`.
pub fn beta(x: &TruncSSet, n_max: usize) -> Result<SimplicialMap> {
    check_levels(x, n_max)?;
    let source = Arc::new(x.truncate(n_max));
    let target = Arc::new(ex(x, n_max)?);
    let sd: Vec<SdSimplex> = (0..=n_max).map(SdSimplex::new).collect();
    let levels = (0..=n_max)
        .map(|n| {
            (0..x.count(n))
                .map(|s| {
                    let key: Vec<usize> = sd[n]
                        .chains
                        .iter()
                        .map(|c| {
                            let theta: Vec<usize> = c.iter().map(|&m| 63 - m.leading_zeros() as usize).collect();
                            x.act(&theta, n, s)
                        })
                        .collect();
                    target.find_key(n, &key).expect("β lands in Ex")
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(source, target, levels)
}

/// `Ex f: Ex X → Ex Y`, by postcomposition.
pub fn ex_map(f: &SimplicialMap, n_max: usize) -> Result<SimplicialMap> {
    let source = Arc::new(ex(f.source(), n_max)?);
    let target = Arc::new(ex(f.target(), n_max)?);
    let sd: Vec<SdSimplex> = (0..=n_max).map(SdSimplex::new).collect();
    SimplicialMap::from_keys(source, target, |n, key| {
        key.iter().zip(&sd[n].chains).map(|(&y, c)| f.apply(c.len() - 1, y)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{standard, Shape};

    #[test]
    fn ex_of_a_point_is_a_point() {
        let p = TruncSSet::point(3);
        assert_eq!(ex(&p, 3).unwrap().counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn ex_is_simplicial() {
        let x = standard(Shape::Boundary, 2, 2).unwrap();
        let e = ex(&x, 2).unwrap();
        assert!(e.validate().is_empty());
        assert!(beta(&x, 2).unwrap().validate().is_empty());
    }

    #[test]
    fn level_cap() {
        assert!(ex(&TruncSSet::point(4), 4).is_err());
        assert!(ex(&TruncSSet::point(1), 2).is_err());
    }
}
