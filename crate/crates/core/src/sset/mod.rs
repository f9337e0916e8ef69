//! Truncated simplicial and bisimplicial sets.
//!
//! A [`TruncSSet`] keeps, for every level `k ≤ d`, its simplices with face
//! and degeneracy tables, and the Eilenberg–Zilber decomposition of every
//! simplex as a degeneracy of a nondegenerate one. Builders that come from a
//! combinatorial model also keep each simplex's key (a vertex sequence, a
//! chain of morphisms, ...) so that later constructions can look simplices up.

mod bisimplicial;
mod ex;
mod map;
mod standard;

use std::collections::HashMap;

pub use bisimplicial::{diag, diag_map, BiSimplicialMap, BiTruncSSet};
pub use ex::{beta, ex, ex_map, EX_MAX_LEVEL};
pub use map::SimplicialMap;
pub(crate) use standard::UnionFind;
pub use standard::{
    csd2_inclusion, csd2_poset, glued_edges, nerve, nerve_map, poset_nerve, pushout, sd, sd_poset, standard,
    SSetPushout, Shape,
};

use crate::error::{Axiom, Error, Result, Violation};
use crate::limits as caps;
use crate::simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    labels: Vec<String>,
    keys: Vec<Vec<usize>>,
    /// `faces[x * (k + 1) + i] = d_i x`; empty at level 0
    faces: Vec<usize>,
    /// `degens[x * (k + 1) + j] = s_j x`; empty at the top level
    degens: Vec<usize>,
    /// nondegenerate base (at level `surj[k]`) and the surjection `[k] → [m]`
    ez: Vec<(usize, Vec<usize>)>,
}

/// A simplicial set truncated at dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    trunc: usize,
    levels: Vec<Level>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl TruncSSet {
    /// Builds a truncated simplicial set from a model: `simplices(k)` lists
    /// the keys at level `k`, and `face`/`degeneracy` act on keys. Every key
    /// they return must be listed at the neighbouring level.
    pub fn from_model<S, F, D, L>(
        trunc: usize,
        mut simplices: S,
        mut face: F,
        mut degeneracy: D,
        mut label: L,
    ) -> Result<TruncSSet>
    where
        S: FnMut(usize) -> Result<Vec<Vec<usize>>>,
        F: FnMut(usize, &[usize], usize) -> Vec<usize>,
        D: FnMut(usize, &[usize], usize) -> Vec<usize>,
        L: FnMut(usize, &[usize]) -> String,
    {
        let mut keys_per_level = Vec::with_capacity(trunc + 1);
        let mut index = Vec::with_capacity(trunc + 1);
        for k in 0..=trunc {
            let keys = simplices(k)?;
            caps::check(|| format!("simplices at level {k}"), keys.len())?;
            let idx: HashMap<Vec<usize>, usize> = keys.iter().enumerate().map(|(i, key)| (key.clone(), i)).collect();
            if idx.len() != keys.len() {
                return Err(Error::invalid(format!("repeated simplex key at level {k}")));
            }
            keys_per_level.push(keys);
            index.push(idx);
        }
        let lookup = |index: &[HashMap<Vec<usize>, usize>], k: usize, key: Vec<usize>| {
            index[k].get(&key).copied().ok_or_else(|| Error::invalid(format!("simplex {key:?} missing at level {k}")))
        };
        let mut faces = Vec::with_capacity(trunc + 1);
        let mut degens = Vec::with_capacity(trunc + 1);
        for (k, keys) in keys_per_level.iter().enumerate() {
            let mut fk = Vec::new();
            let mut dk = Vec::new();
            for key in keys {
                if k > 0 {
                    for i in 0..=k {
                        fk.push(lookup(&index, k - 1, face(k, key, i))?);
                    }
                }
                if k < trunc {
                    for j in 0..=k {
                        dk.push(lookup(&index, k + 1, degeneracy(k, key, j))?);
                    }
                }
            }
            faces.push(fk);
            degens.push(dk);
        }
        let labels: Vec<Vec<String>> =
            keys_per_level.iter().enumerate().map(|(k, keys)| keys.iter().map(|key| label(k, key)).collect()).collect();
        TruncSSet::assemble(trunc, labels, keys_per_level, faces, degens, index)
    }

    /// Builds from explicit tables. `faces[k][x][i]` is `d_i` of simplex `x`
    /// at level `k` (empty for `k = 0`); `degens[k][x][j]` is `s_j x`
    /// (empty at the top level). The simplicial identities are checked.
    pub fn from_tables(
        trunc: usize,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<TruncSSet> {
        if labels.len() != trunc + 1 || faces.len() != trunc + 1 || degens.len() != trunc + 1 {
            return Err(Error::invalid("table shapes do not match the truncation"));
        }
        let mut flat_f = Vec::new();
        let mut flat_d = Vec::new();
        for k in 0..=trunc {
            let n = labels[k].len();
            caps::check(|| format!("simplices at level {k}"), n)?;
            let want_f = if k == 0 { 0 } else { n };
            let want_d = if k == trunc { 0 } else { n };
            if faces[k].len() != want_f || degens[k].len() != want_d {
                return Err(Error::invalid(format!("level {k}: wrong number of table rows")));
            }
            let mut f = Vec::new();
            for row in &faces[k] {
                if row.len() != k + 1 {
                    return Err(Error::invalid(format!("level {k}: face row of length {}", row.len())));
                }
                for &y in row {
                    if y >= labels[k - 1].len() {
                        return Err(Error::OutOfRange { what: "face", index: y, size: labels[k - 1].len() });
                    }
                }
                f.extend_from_slice(row);
            }
            let mut d = Vec::new();
            for row in &degens[k] {
                if row.len() != k + 1 {
                    return Err(Error::invalid(format!("level {k}: degeneracy row of length {}", row.len())));
                }
                for &y in row {
                    if y >= labels[k + 1].len() {
                        return Err(Error::OutOfRange { what: "degeneracy", index: y, size: labels[k + 1].len() });
                    }
                }
                d.extend_from_slice(row);
            }
            flat_f.push(f);
            flat_d.push(d);
        }
        let keys: Vec<Vec<Vec<usize>>> = labels.iter().map(|l| (0..l.len()).map(|i| vec![i]).collect()).collect();
        let index = keys.iter().map(|ks| ks.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()).collect();
        let x = TruncSSet::assemble(trunc, labels, keys, flat_f, flat_d, index)?;
        let v = x.validate();
        if v.is_empty() {
            Ok(x)
        } else {
            Err(Error::Axioms(v))
        }
    }

    fn assemble(
        trunc: usize,
        labels: Vec<Vec<String>>,
        keys: Vec<Vec<Vec<usize>>>,
        faces: Vec<Vec<usize>>,
        degens: Vec<Vec<usize>>,
        index: Vec<HashMap<Vec<usize>, usize>>,
    ) -> Result<TruncSSet> {
        let mut levels: Vec<Level> = Vec::with_capacity(trunc + 1);
        for (k, ((labels, keys), (faces, degens))) in
            labels.into_iter().zip(keys).zip(faces.into_iter().zip(degens)).enumerate()
        {
            let n = labels.len();
            let mut ez: Vec<Option<(usize, Vec<usize>)>> = vec![None; n];
            if k > 0 {
                let below = &levels[k - 1];
                for y in 0..below.labels.len() {
                    for j in 0..k {
                        let x = below.degens[y * k + j];
                        if ez[x].is_none() {
                            let (base, surj) = &below.ez[y];
                            ez[x] = Some((*base, simplex::compose(surj, &simplex::codegeneracy(k - 1, j))));
                        }
                    }
                }
            }
            let ez = ez.into_iter().enumerate().map(|(x, e)| e.unwrap_or_else(|| (x, simplex::identity(k)))).collect();
            levels.push(Level { labels, keys, faces, degens, ez });
        }
        Ok(TruncSSet { trunc, levels, index })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels[k].labels.len()
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.trunc).map(|k| self.count(k)).collect()
    }

    pub fn label(&self, k: usize, x: usize) -> &str {
        &self.levels[k].labels[x]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.levels[k].labels
    }

    /// The model key a simplex was built from (`[x]` for table-built sets).
    pub fn key(&self, k: usize, x: usize) -> &[usize] {
        &self.levels[k].keys[x]
    }

    pub fn find_key(&self, k: usize, key: &[usize]) -> Option<usize> {
        self.index[k].get(key).copied()
    }

    pub fn find_label(&self, k: usize, label: &str) -> Option<usize> {
        self.levels[k].labels.iter().position(|l| l == label)
    }

    /// `d_i x` for `x` at level `k ≥ 1`.
    pub fn face(&self, k: usize, x: usize, i: usize) -> usize {
        self.levels[k].faces[x * (k + 1) + i]
    }

    /// `s_j x` for `x` at level `k < d`.
    pub fn degeneracy(&self, k: usize, x: usize, j: usize) -> usize {
        self.levels[k].degens[x * (k + 1) + j]
    }

    /// Nondegenerate base of `x` and the surjection `[k] → [m]` with
    /// `x = surj^* base`.
    pub fn ez(&self, k: usize, x: usize) -> (usize, &[usize]) {
        let (b, s) = &self.levels[k].ez[x];
        (*b, s)
    }

    pub fn is_degenerate(&self, k: usize, x: usize) -> bool {
        self.levels[k].ez[x].1[k] != k
    }

    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (0..self.count(k)).filter(|&x| !self.is_degenerate(k, x)).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.trunc).map(|k| self.nondegenerate(k).len()).collect()
    }

    /// `θ^* x` for `θ: [m] → [n]` and `x` at level `n`: faces for the missed
    /// vertices, then degeneracies for the repeats.
    pub fn act(&self, theta: &[usize], n: usize, x: usize) -> usize {
        let (epi, mono) = simplex::epi_mono(theta);
        let mut level = n;
        let mut y = x;
        for i in simplex::missed(&mono, n) {
            y = self.face(level, y, i);
            level -= 1;
        }
        for j in simplex::repeats(&epi) {
            y = self.degeneracy(level, y, j);
            level += 1;
        }
        y
    }

    /// The `i`-th vertex of a simplex at level `k`.
    pub fn vertex(&self, k: usize, x: usize, i: usize) -> usize {
        self.act(&[i], k, x)
    }

    /// Checks every simplicial identity within the truncation range.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |k: usize, x: usize, what: String| {
            out.push(Violation::new(
                format!("level {k}"),
                Axiom::SimplicialIdentity,
                format!("{what} at {}", self.label(k, x)),
            ));
        };
        for k in 0..=self.trunc {
            for x in 0..self.count(k) {
                if k >= 2 {
                    for j in 0..=k {
                        for i in 0..j {
                            let a = self.face(k - 1, self.face(k, x, j), i);
                            let b = self.face(k - 1, self.face(k, x, i), j - 1);
                            if a != b {
                                bad(k, x, format!("d{i} d{j} ≠ d{} d{i}", j - 1));
                            }
                        }
                    }
                }
                if k < self.trunc {
                    for j in 0..=k {
                        let sx = self.degeneracy(k, x, j);
                        for i in 0..=k + 1 {
                            let lhs = self.face(k + 1, sx, i);
                            let rhs = if i == j || i == j + 1 {
                                Some(x)
                            } else if i < j {
                                Some(self.degeneracy(k - 1, self.face(k, x, i), j - 1))
                            } else if k >= 1 {
                                Some(self.degeneracy(k - 1, self.face(k, x, i - 1), j))
                            } else {
                                None
                            };
                            if rhs.is_some_and(|r| r != lhs) {
                                bad(k, x, format!("d{i} s{j}"));
                            }
                        }
                        if k + 1 < self.trunc {
                            for i in 0..=j {
                                let a = self.degeneracy(k + 1, sx, i);
                                let b = self.degeneracy(k + 1, self.degeneracy(k, x, i), j + 1);
                                if a != b {
                                    bad(k, x, format!("s{i} s{j} ≠ s{} s{i}", j + 1));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The same simplicial set cut down to a lower truncation.
    pub fn truncate(&self, d: usize) -> TruncSSet {
        let d = d.min(self.trunc);
        let mut levels: Vec<Level> = self.levels[..=d].to_vec();
        levels[d].degens.clear();
        TruncSSet { trunc: d, levels, index: self.index[..=d].to_vec() }
    }

    /// The one-point simplicial set.
    pub fn point(d: usize) -> TruncSSet {
        standard(Shape::Simplex, 0, d).expect("the point is small")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn act_agrees_with_vertex_sequences() {
        let x = standard(Shape::Simplex, 2, 3).unwrap();
        for k in 0..=3 {
            for s in 0..x.count(k) {
                let key = x.key(k, s).to_vec();
                for m in 0..=3 {
                    for theta in simplex::monotone_maps(m, k) {
                        let y = x.act(&theta, k, s);
                        assert_eq!(x.key(m, y), simplex::compose(&key, &theta).as_slice());
                    }
                }
            }
        }
    }

    #[test]
    fn ez_bases_are_nondegenerate() {
        let x = standard(Shape::Boundary, 2, 3).unwrap();
        for k in 0..=3 {
            for s in 0..x.count(k) {
                let (b, surj) = x.ez(k, s);
                let m = surj[k];
                assert!(!x.is_degenerate(m, b));
                assert_eq!(x.act(surj, m, b), s);
            }
        }
    }

    #[test]
    fn table_round_trip_rejects_broken_identity() {
        let x = standard(Shape::Simplex, 1, 2).unwrap();
        let labels: Vec<Vec<String>> = (0..=2).map(|k| x.labels(k).to_vec()).collect();
        let faces: Vec<Vec<Vec<usize>>> = (0..=2)
            .map(|k| {
                if k == 0 {
                    vec![]
                } else {
                    (0..x.count(k)).map(|s| (0..=k).map(|i| x.face(k, s, i)).collect()).collect()
                }
            })
            .collect();
        let degens: Vec<Vec<Vec<usize>>> = (0..=2)
            .map(|k| {
                if k == 2 {
                    vec![]
                } else {
                    (0..x.count(k)).map(|s| (0..=k).map(|j| x.degeneracy(k, s, j)).collect()).collect()
                }
            })
            .collect();
        let y = TruncSSet::from_tables(2, labels.clone(), faces.clone(), degens.clone()).unwrap();
        assert_eq!(y.nondegenerate_counts(), vec![2, 1, 0]);
        let mut broken = faces;
        broken[1][0].swap(0, 1);
        let broken_degenerate = x.degeneracy(0, 0, 0);
        broken[1][broken_degenerate] = vec![0, 1];
        assert!(TruncSSet::from_tables(2, labels, broken, degens).is_err());
    }
}
