use std::sync::Arc;

use super::TruncSSet;
use crate::error::{Axiom, Error, Result, Violation};

/// A map of truncated simplicial sets, one simplex map per level.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<TruncSSet>,
    target: Arc<TruncSSet>,
    levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(source: Arc<TruncSSet>, target: Arc<TruncSSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        if source.trunc() != target.trunc() {
            return Err(Error::pre("simplicial maps need equal truncations"));
        }
        if levels.len() != source.trunc() + 1 {
            return Err(Error::invalid("one simplex map per level is required"));
        }
        for (k, l) in levels.iter().enumerate() {
            if l.len() != source.count(k) {
                return Err(Error::invalid(format!("level {k} map does not cover the source")));
            }
            if let Some(&y) = l.iter().find(|&&y| y >= target.count(k)) {
                return Err(Error::OutOfRange { what: "simplex", index: y, size: target.count(k) });
            }
        }
        let f = SimplicialMap { source, target, levels };
        let v = f.validate();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Axioms(v))
        }
    }

    /// Extends a vertex-sequence assignment: simplex `x` goes to the target
    /// simplex whose key is `on_key(k, key of x)`.
    pub fn from_keys(
        source: Arc<TruncSSet>,
        target: Arc<TruncSSet>,
        mut on_key: impl FnMut(usize, &[usize]) -> Vec<usize>,
    ) -> Result<Self> {
        let mut levels = Vec::new();
        for k in 0..=source.trunc().min(target.trunc()) {
            let mut l = Vec::with_capacity(source.count(k));
            for x in 0..source.count(k) {
                let key = on_key(k, source.key(k, x));
                let y = target
                    .find_key(k, &key)
                    .ok_or_else(|| Error::invalid(format!("no target simplex {key:?} at level {k}")))?;
                l.push(y);
            }
            levels.push(l);
        }
        SimplicialMap::new(source, target, levels)
    }

    pub fn identity(x: Arc<TruncSSet>) -> Self {
        let levels = (0..=x.trunc()).map(|k| (0..x.count(k)).collect()).collect();
        SimplicialMap { source: x.clone(), target: x, levels }
    }

    pub fn source(&self) -> &Arc<TruncSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncSSet> {
        &self.target
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.levels[k][x]
    }

    pub fn level(&self, k: usize) -> &[usize] {
        &self.levels[k]
    }

    /// The same map between the truncations at `d`.
    pub fn truncate(&self, d: usize) -> SimplicialMap {
        let d = d.min(self.source.trunc());
        SimplicialMap {
            source: Arc::new(self.source.truncate(d)),
            target: Arc::new(self.target.truncate(d)),
            levels: self.levels[..=d].to_vec(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::pre("simplicial maps are not composable"));
        }
        let levels =
            self.levels.iter().enumerate().map(|(k, l)| l.iter().map(|&x| other.levels[k][x]).collect()).collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), levels })
    }

    pub fn validate(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        for k in 0..=s.trunc() {
            for x in 0..s.count(k) {
                let fx = self.levels[k][x];
                if k > 0 {
                    for i in 0..=k {
                        if self.levels[k - 1][s.face(k, x, i)] != t.face(k, fx, i) {
                            out.push(Violation::new(
                                format!("level {k}"),
                                Axiom::Naturality,
                                format!("d{i} at {}", s.label(k, x)),
                            ));
                        }
                    }
                }
                if k < s.trunc() {
                    for j in 0..=k {
                        if self.levels[k + 1][s.degeneracy(k, x, j)] != t.degeneracy(k, fx, j) {
                            out.push(Violation::new(
                                format!("level {k}"),
                                Axiom::Naturality,
                                format!("s{j} at {}", s.label(k, x)),
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}
