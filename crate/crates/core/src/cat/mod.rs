//! Finite categories, posets and functors.
//!
//! Morphisms are globally indexed; composition is stored as a table with one
//! row per morphism `f` and one column per morphism `g` leaving `tgt f`, so
//! every composable pair has exactly one slot.

mod elements;
mod functor;
mod iso;
mod limits;
mod poset;

use std::collections::HashMap;
use std::fmt;

pub use elements::category_of_elements;
pub use functor::{all_functors, FinFunctor};
pub use iso::{iso_check, IsoResult};
pub use limits::{chain_category, coproduct, discrete, product, pullback, Pullback};
pub use poset::{FinPoset, PosetInclusion};

use crate::error::{Axiom, Error, Result, Violation};
use crate::limits as caps;

const MISSING: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identities: Vec<usize>,
    out: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

/// A morphism given as `(label, source, target)` when building a [`FinCat`].
pub type MorphismSpec = (String, usize, usize);

impl FinCat {
    /// Builds a category, asking `compose(g, f)` for `g ∘ f` on every
    /// composable pair. The laws are not checked here; see [`FinCat::validate`].
    pub fn from_fn<F>(
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        identities: Vec<usize>,
        mut compose: F,
    ) -> Result<FinCat>
    where
        F: FnMut(usize, usize) -> Result<usize>,
    {
        let mut cat = FinCat::skeleton(objects, morphisms, identities)?;
        for f in 0..cat.morphisms.len() {
            let mid = cat.tgt[f];
            let row: Vec<usize> = cat.out[mid].iter().map(|&g| compose(g, f)).collect::<Result<_>>()?;
            for &h in &row {
                if h >= cat.morphisms.len() {
                    return Err(Error::OutOfRange { what: "composite", index: h, size: cat.morphisms.len() });
                }
            }
            cat.table[f] = row;
        }
        Ok(cat)
    }

    /// Builds a category from an explicit table of triples `(g, f, g∘f)`.
    /// Every composable pair must appear exactly once.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        identities: Vec<usize>,
        triples: &[(usize, usize, usize)],
    ) -> Result<FinCat> {
        let mut cat = FinCat::skeleton(objects, morphisms, identities)?;
        let n = cat.morphisms.len();
        for f in 0..n {
            cat.table[f] = vec![MISSING; cat.out[cat.tgt[f]].len()];
        }
        for &(g, f, h) in triples {
            for (what, x) in [("morphism", g), ("morphism", f), ("composite", h)] {
                if x >= n {
                    return Err(Error::OutOfRange { what, index: x, size: n });
                }
            }
            if cat.src[g] != cat.tgt[f] {
                return Err(Error::invalid(format!(
                    "composite of non-composable pair ({}, {})",
                    cat.morphisms[g], cat.morphisms[f]
                )));
            }
            let slot = &mut cat.table[f][cat.out_pos[g]];
            if *slot != MISSING {
                return Err(Error::invalid(format!(
                    "composite ({}, {}) given twice",
                    cat.morphisms[g], cat.morphisms[f]
                )));
            }
            *slot = h;
        }
        for f in 0..n {
            for (k, &h) in cat.table[f].iter().enumerate() {
                if h == MISSING {
                    let g = cat.out[cat.tgt[f]][k];
                    return Err(Error::invalid(format!(
                        "composition table is not total: missing ({}, {})",
                        cat.morphisms[g], cat.morphisms[f]
                    )));
                }
            }
        }
        Ok(cat)
    }

    fn skeleton(objects: Vec<String>, morphisms: Vec<MorphismSpec>, identities: Vec<usize>) -> Result<FinCat> {
        caps::check(|| "category morphisms".into(), morphisms.len())?;
        let n_obj = objects.len();
        if identities.len() != n_obj {
            return Err(Error::invalid(format!("{} identities for {} objects", identities.len(), n_obj)));
        }
        let mut labels = Vec::with_capacity(morphisms.len());
        let mut src = Vec::with_capacity(morphisms.len());
        let mut tgt = Vec::with_capacity(morphisms.len());
        let mut out = vec![Vec::new(); n_obj];
        let mut into = vec![Vec::new(); n_obj];
        let mut out_pos = Vec::with_capacity(morphisms.len());
        for (i, (label, s, t)) in morphisms.into_iter().enumerate() {
            for x in [s, t] {
                if x >= n_obj {
                    return Err(Error::OutOfRange { what: "object", index: x, size: n_obj });
                }
            }
            out_pos.push(out[s].len());
            out[s].push(i);
            into[t].push(i);
            labels.push(label);
            src.push(s);
            tgt.push(t);
        }
        for &id in &identities {
            if id >= labels.len() {
                return Err(Error::OutOfRange { what: "identity", index: id, size: labels.len() });
            }
        }
        let table = vec![Vec::new(); labels.len()];
        Ok(FinCat { objects, morphisms: labels, src, tgt, identities, out, into, out_pos, table })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphisms[f]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_labels(&self) -> &[String] {
        &self.morphisms
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src[f]] == f
    }

    /// Morphisms with source `x`, in index order.
    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    /// Morphisms with target `x`, in index order.
    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.into[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[x].iter().copied().filter(move |&f| self.tgt[f] == y)
    }

    /// `g ∘ f`, or `None` when `src g ≠ tgt f`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        if self.src[g] != self.tgt[f] {
            return None;
        }
        match self.table[f][self.out_pos[g]] {
            MISSING => None,
            h => Some(h),
        }
    }

    /// Composable pairs `(g, f)` with `src g = tgt f`, ordered by `f` then `g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.morphisms.len()).flat_map(move |f| self.out[self.tgt[f]].iter().map(move |&g| (g, f)))
    }

    /// Replaces one table entry. Only meant for building corrupted fixtures;
    /// the result generally fails [`FinCat::validate`].
    pub fn override_composite(&mut self, g: usize, f: usize, gf: usize) -> Result<()> {
        let n = self.morphisms.len();
        if g >= n || f >= n || self.src[g] != self.tgt[f] {
            return Err(Error::invalid("override of a non-composable pair"));
        }
        if gf >= self.morphisms.len() {
            return Err(Error::OutOfRange { what: "composite", index: gf, size: self.morphisms.len() });
        }
        let pos = self.out_pos[g];
        self.table[f][pos] = gf;
        Ok(())
    }

    pub fn find_object(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn find_morphism(&self, label: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m == label)
    }

    pub fn object_index(&self) -> HashMap<&str, usize> {
        self.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
    }

    pub fn morphism_index(&self) -> HashMap<&str, usize> {
        self.morphisms.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
    }

    /// At most one morphism between any ordered pair of objects.
    pub fn is_thin(&self) -> bool {
        self.out.iter().all(|fs| {
            let mut seen: Vec<usize> = fs.iter().map(|&f| self.tgt[f]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Thin, and no two distinct objects are isomorphic.
    pub fn is_skeletal_thin(&self) -> bool {
        self.is_thin()
            && (0..self.objects.len()).all(|x| {
                self.out[x].iter().all(|&f| {
                    let y = self.tgt[f];
                    y == x || self.hom(y, x).next().is_none()
                })
            })
    }

    /// Number of non-identity morphisms.
    pub fn nonidentity_count(&self) -> usize {
        (0..self.morphisms.len()).filter(|&f| !self.is_identity(f)).count()
    }

    /// Checks every category law exhaustively. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let lbl = |f: usize| self.morphisms[f].as_str();
        for (x, &id) in self.identities.iter().enumerate() {
            if self.src[id] != x || self.tgt[id] != x {
                out.push(Violation::new("", Axiom::Identity, format!("identity {} of {}", lbl(id), self.objects[x])));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (g, f) in self.composable_pairs() {
            let h = self.table[f][self.out_pos[g]];
            if h == MISSING {
                out.push(Violation::new("", Axiom::Endpoints, format!("missing {} ∘ {}", lbl(g), lbl(f))));
                continue;
            }
            if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                out.push(Violation::new("", Axiom::Endpoints, format!("{} ∘ {} = {}", lbl(g), lbl(f), lbl(h))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..self.morphisms.len() {
            let left = self.identities[self.tgt[f]];
            if self.compose(left, f) != Some(f) {
                out.push(Violation::new("", Axiom::LeftUnit, format!("id ∘ {}", lbl(f))));
            }
            let right = self.identities[self.src[f]];
            if self.compose(f, right) != Some(f) {
                out.push(Violation::new("", Axiom::RightUnit, format!("{} ∘ id", lbl(f))));
            }
        }
        for (g, f) in self.composable_pairs() {
            let gf = self.compose(g, f).unwrap();
            for &h in &self.out[self.tgt[g]] {
                let hg = self.compose(h, g).unwrap();
                if self.compose(h, gf) != self.compose(hg, f) {
                    out.push(Violation::new("", Axiom::Associativity, format!("({}, {}, {})", lbl(h), lbl(g), lbl(f))));
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Axioms(v))
        }
    }

    /// The opposite category, with the same indices.
    pub fn opposite(&self) -> FinCat {
        let morphisms =
            (0..self.morphisms.len()).map(|f| (self.morphisms[f].clone(), self.tgt[f], self.src[f])).collect();
        FinCat::from_fn(self.objects.clone(), morphisms, self.identities.clone(), |g, f| {
            Ok(self.compose(f, g).expect("composable in the original"))
        })
        .expect("opposite of a well-formed category")
    }
}
