use std::sync::Arc;

use super::{SimplicialMap, TruncSSet};
use crate::error::{Axiom, Error, Result, Violation};

/// A truncated bisimplicial set, stored as its columns: for each horizontal
/// level `n ≤ n_max` a simplicial set truncated at `k_max`, with horizontal
/// faces and degeneracies as simplicial maps between columns. The two
/// structures commute because those maps are simplicial.
#[derive(Clone, Debug)]
pub struct BiTruncSSet {
    columns: Vec<Arc<TruncSSet>>,
    hfaces: Vec<Vec<SimplicialMap>>,
    hdegens: Vec<Vec<SimplicialMap>>,
}

impl BiTruncSSet {
    /// `hfaces[n][i]: X_n → X_{n-1}` (empty for `n = 0`) and
    /// `hdegens[n][j]: X_n → X_{n+1}` (empty at the top).
    pub fn new(
        columns: Vec<Arc<TruncSSet>>,
        hfaces: Vec<Vec<SimplicialMap>>,
        hdegens: Vec<Vec<SimplicialMap>>,
    ) -> Result<Self> {
        let n_max = columns.len().checked_sub(1).ok_or_else(|| Error::invalid("no columns"))?;
        let k_max = columns[0].trunc();
        if columns.iter().any(|c| c.trunc() != k_max) {
            return Err(Error::invalid("columns have different vertical truncations"));
        }
        if hfaces.len() != n_max + 1 || hdegens.len() != n_max + 1 {
            return Err(Error::invalid("one row of horizontal maps per column is required"));
        }
        for n in 0..=n_max {
            let (nf, nd) = (if n == 0 { 0 } else { n + 1 }, if n == n_max { 0 } else { n + 1 });
            if hfaces[n].len() != nf || hdegens[n].len() != nd {
                return Err(Error::invalid(format!("column {n}: wrong number of horizontal maps")));
            }
            for (i, f) in hfaces[n].iter().enumerate() {
                if **f.source() != *columns[n] || **f.target() != *columns[n - 1] {
                    return Err(Error::invalid(format!("horizontal face {i} of column {n} has wrong ends")));
                }
            }
            for (j, f) in hdegens[n].iter().enumerate() {
                if **f.source() != *columns[n] || **f.target() != *columns[n + 1] {
                    return Err(Error::invalid(format!("horizontal degeneracy {j} of column {n} has wrong ends")));
                }
            }
        }
        let b = BiTruncSSet { columns, hfaces, hdegens };
        let v = b.validate();
        if v.is_empty() {
            Ok(b)
        } else {
            Err(Error::Axioms(v))
        }
    }

    pub fn n_max(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn k_max(&self) -> usize {
        self.columns[0].trunc()
    }

    /// The vertical simplicial set at horizontal level `n`.
    pub fn column(&self, n: usize) -> &Arc<TruncSSet> {
        &self.columns[n]
    }

    pub fn count(&self, n: usize, k: usize) -> usize {
        self.columns[n].count(k)
    }

    pub fn hface(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.hfaces[n][i]
    }

    pub fn hdegeneracy(&self, n: usize, j: usize) -> &SimplicialMap {
        &self.hdegens[n][j]
    }

    /// Whether a bisimplex is in the image of some horizontal or vertical degeneracy.
    pub fn is_degenerate(&self, n: usize, k: usize, x: usize) -> bool {
        self.columns[n].is_degenerate(k, x)
            || (n > 0 && (0..n).any(|j| (0..self.count(n - 1, k)).any(|y| self.hdegens[n - 1][j].apply(k, y) == x)))
    }

    /// Horizontal simplicial identities at every vertical level.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n_max = self.n_max();
        for k in 0..=self.k_max() {
            for n in 0..=n_max {
                for x in 0..self.count(n, k) {
                    let mut bad = |what: String| {
                        out.push(Violation::new(
                            format!("column {n}, level {k}"),
                            Axiom::SimplicialIdentity,
                            format!("horizontal {what} at {}", self.columns[n].label(k, x)),
                        ))
                    };
                    let d = |n: usize, i: usize, x: usize| self.hfaces[n][i].apply(k, x);
                    let s = |n: usize, j: usize, x: usize| self.hdegens[n][j].apply(k, x);
                    if n >= 2 {
                        for j in 0..=n {
                            for i in 0..j {
                                if d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x)) {
                                    bad(format!("d{i} d{j}"));
                                }
                            }
                        }
                    }
                    if n < n_max {
                        for j in 0..=n {
                            let sx = s(n, j, x);
                            for i in 0..=n + 1 {
                                let lhs = d(n + 1, i, sx);
                                let rhs = if i == j || i == j + 1 {
                                    Some(x)
                                } else if i < j {
                                    Some(s(n - 1, j - 1, d(n, i, x)))
                                } else if n >= 1 {
                                    Some(s(n - 1, j, d(n, i - 1, x)))
                                } else {
                                    None
                                };
                                if rhs.is_some_and(|r| r != lhs) {
                                    bad(format!("d{i} s{j}"));
                                }
                            }
                            if n + 1 < n_max {
                                for i in 0..=j {
                                    if s(n + 1, i, sx) != s(n + 1, j + 1, s(n, i, x)) {
                                        bad(format!("s{i} s{j}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// A map of bisimplicial sets, column by column.
#[derive(Clone, Debug)]
pub struct BiSimplicialMap {
    pub columns: Vec<SimplicialMap>,
}

/// The diagonal: level `n` is the bisimplices at `([n],[n])`, with
/// `d_i = d^h_i d^v_i` and `s_j = s^h_j s^v_j`.
pub fn diag(b: &BiTruncSSet) -> Result<TruncSSet> {
    if b.n_max() != b.k_max() {
        return Err(Error::pre(format!("diagonal needs equal truncations, got {} and {}", b.n_max(), b.k_max())));
    }
    let d = b.n_max();
    let labels = (0..=d).map(|n| b.columns[n].labels(n).to_vec()).collect();
    let faces = (0..=d)
        .map(|n| {
            if n == 0 {
                return vec![];
            }
            (0..b.count(n, n))
                .map(|x| (0..=n).map(|i| b.hfaces[n][i].apply(n - 1, b.columns[n].face(n, x, i))).collect())
                .collect()
        })
        .collect();
    let degens = (0..=d)
        .map(|n| {
            if n == d {
                return vec![];
            }
            (0..b.count(n, n))
                .map(|x| (0..=n).map(|j| b.hdegens[n][j].apply(n + 1, b.columns[n].degeneracy(n, x, j))).collect())
                .collect()
        })
        .collect();
    TruncSSet::from_tables(d, labels, faces, degens)
}

/// The map induced on diagonals.
pub fn diag_map(f: &BiSimplicialMap, source: &Arc<TruncSSet>, target: &Arc<TruncSSet>) -> Result<SimplicialMap> {
    let levels = (0..=source.trunc()).map(|n| f.columns[n].level(n).to_vec()).collect();
    SimplicialMap::new(source.clone(), target.clone(), levels)
}
