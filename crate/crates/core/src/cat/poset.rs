use std::collections::HashMap;
use std::sync::Arc;

use super::FinCat;
use crate::error::{Error, Result};

/// A finite poset storing its full `≤` relation as a dense table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    elements: Vec<String>,
    /// row `a` is the bitset of elements `b` with `a ≤ b`
    up: Vec<Vec<u64>>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn set_bit(row: &mut [u64], b: usize) {
    row[b / 64] |= 1 << (b % 64);
}

fn bit(row: &[u64], b: usize) -> bool {
    row[b / 64] >> (b % 64) & 1 == 1
}

impl FinPoset {
    /// `leq(a, b)` must describe a partial order.
    pub fn from_fn(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<FinPoset> {
        let n = elements.len();
        let mut up = vec![vec![0u64; words(n)]; n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    set_bit(row, b);
                }
            }
        }
        let p = FinPoset { elements, up };
        p.check_order()?;
        Ok(p)
    }

    /// Takes the full relation as pairs of indices; reflexive pairs may be omitted.
    pub fn from_relation(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<FinPoset> {
        let up = FinPoset::seed(elements.len(), pairs)?;
        let p = FinPoset { elements, up };
        p.check_order()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of the given generating pairs.
    pub fn from_generators(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<FinPoset> {
        let n = elements.len();
        let mut up = FinPoset::seed(n, pairs)?;
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if bit(row, k) {
                    for (w, r) in row.iter_mut().zip(&row_k) {
                        *w |= r;
                    }
                }
            }
        }
        let p = FinPoset { elements, up };
        p.check_order()?;
        Ok(p)
    }

    /// The chain `0 < 1 < … < n`.
    pub fn chain(n: usize) -> FinPoset {
        FinPoset::from_fn((0..=n).map(|i| i.to_string()).collect(), |a, b| a <= b).expect("a chain is a poset")
    }

    pub fn antichain(labels: Vec<String>) -> FinPoset {
        FinPoset::from_fn(labels, |a, b| a == b).expect("an antichain is a poset")
    }

    fn seed(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<Vec<u64>>> {
        let mut up = vec![vec![0u64; words(n)]; n];
        for (i, row) in up.iter_mut().enumerate() {
            set_bit(row, i);
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange { what: "poset element", index: a.max(b), size: n });
            }
            set_bit(&mut up[a], b);
        }
        Ok(up)
    }

    fn check_order(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::invalid(format!("not reflexive at {}", self.elements[a])));
            }
            for b in self.above(a) {
                if a != b && self.leq(b, a) {
                    return Err(Error::invalid(format!(
                        "not antisymmetric: {} and {}",
                        self.elements[a], self.elements[b]
                    )));
                }
                // up(b) ⊆ up(a)
                if let Some(c) = (0..self.up[a].len())
                    .find(|&w| self.up[b][w] & !self.up[a][w] != 0)
                    .map(|w| w * 64 + (self.up[b][w] & !self.up[a][w]).trailing_zeros() as usize)
                {
                    return Err(Error::invalid(format!(
                        "not transitive: {} ≤ {} ≤ {}",
                        self.elements[a], self.elements[b], self.elements[c]
                    )));
                }
            }
        }
        let mut seen = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if let Some(j) = seen.insert(e.as_str(), i) {
                return Err(Error::invalid(format!("duplicate element label {e} ({j}, {i})")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        bit(&self.up[a], b)
    }

    /// Elements `b` with `a ≤ b`, ascending.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[a].iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// All pairs `a ≤ b`, row-major.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.above(a).map(move |b| (a, b))).collect()
    }

    /// Covering pairs `a ⋖ b`, computed from the stored relation.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.above(a) {
                if a != b && !self.above(a).any(|c| c != a && c != b && self.leq(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The thin category of this poset. Morphisms are the pairs `a ≤ b` in
    /// row-major order; see [`FinPoset::morphism_of`].
    pub fn as_category(&self) -> Result<FinCat> {
        let pairs = self.relation();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let morphisms =
            pairs.iter().map(|&(a, b)| (format!("{}<={}", self.elements[a], self.elements[b]), a, b)).collect();
        let identities = (0..self.len()).map(|a| index[&(a, a)]).collect();
        FinCat::from_fn(self.elements.clone(), morphisms, identities, |g, f| Ok(index[&(pairs[f].0, pairs[g].1)]))
    }

    /// Index of the morphism `a ≤ b` in [`FinPoset::as_category`].
    pub fn morphism_of(&self, a: usize, b: usize) -> Option<usize> {
        if !self.leq(a, b) {
            return None;
        }
        let before: usize = (0..a).map(|x| self.up_count(x)).sum();
        Some(before + self.above(a).take_while(|&y| y < b).count())
    }

    /// Number of pairs `a ≤ b`, i.e. morphisms of [`FinPoset::as_category`].
    pub fn relation_count(&self) -> usize {
        (0..self.len()).map(|a| self.up_count(a)).sum()
    }

    fn up_count(&self, a: usize) -> usize {
        self.up[a].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Restriction to the given elements, in the given order.
    pub fn subposet(&self, keep: &[usize]) -> FinPoset {
        FinPoset::from_fn(keep.iter().map(|&i| self.elements[i].clone()).collect(), |a, b| self.leq(keep[a], keep[b]))
            .expect("restriction of a poset")
    }
}

/// An injective order-preserving map `sub → ambient`.
#[derive(Clone, Debug)]
pub struct PosetInclusion {
    sub: Arc<FinPoset>,
    ambient: Arc<FinPoset>,
    embedding: Vec<usize>,
}

impl PosetInclusion {
    pub fn new(sub: Arc<FinPoset>, ambient: Arc<FinPoset>, embedding: Vec<usize>) -> Result<Self> {
        if embedding.len() != sub.len() {
            return Err(Error::invalid("embedding does not cover the subposet"));
        }
        let mut seen = vec![false; ambient.len()];
        for &e in &embedding {
            if e >= ambient.len() {
                return Err(Error::OutOfRange { what: "ambient element", index: e, size: ambient.len() });
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::invalid(format!("embedding is not injective at {}", ambient.label(e))));
            }
        }
        for a in 0..sub.len() {
            for b in 0..sub.len() {
                if sub.leq(a, b) && !ambient.leq(embedding[a], embedding[b]) {
                    return Err(Error::invalid(format!(
                        "embedding is not order-preserving on {} ≤ {}",
                        sub.label(a),
                        sub.label(b)
                    )));
                }
            }
        }
        Ok(PosetInclusion { sub, ambient, embedding })
    }

    /// The inclusion of the listed ambient elements with the induced order.
    pub fn induced(ambient: Arc<FinPoset>, keep: Vec<usize>) -> Result<Self> {
        let sub = Arc::new(ambient.subposet(&keep));
        PosetInclusion::new(sub, ambient, keep)
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let embedding = (0..p.len()).collect();
        PosetInclusion { sub: p.clone(), ambient: p, embedding }
    }

    pub fn sub(&self) -> &Arc<FinPoset> {
        &self.sub
    }

    pub fn ambient(&self) -> &Arc<FinPoset> {
        &self.ambient
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn embed(&self, p: usize) -> usize {
        self.embedding[p]
    }

    /// Sub-element mapping to ambient `q`, if any.
    pub fn preimage(&self, q: usize) -> Option<usize> {
        self.embedding.iter().position(|&e| e == q)
    }

    /// `preimage` for every ambient element.
    pub fn preimages(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.ambient.len()];
        for (p, &q) in self.embedding.iter().enumerate() {
            out[q] = Some(p);
        }
        out
    }

    /// Ambient elements outside the image, in order.
    pub fn complement(&self) -> Vec<usize> {
        let pre = self.preimages();
        (0..self.ambient.len()).filter(|&q| pre[q].is_none()).collect()
    }

    /// Full and down-closed.
    pub fn is_sieve(&self) -> bool {
        let (p, q) = (&self.sub, &self.ambient);
        let full =
            (0..p.len()).all(|a| (0..p.len()).all(|b| !q.leq(self.embedding[a], self.embedding[b]) || p.leq(a, b)));
        if !full {
            return false;
        }
        let pre = self.preimages();
        (0..p.len()).all(|a| {
            let qa = self.embedding[a];
            (0..q.len()).all(|x| !q.leq(x, qa) || pre[x].is_some())
        })
    }

    /// Weak solidity of a sieve: any two sub-elements below an ambient `q`
    /// have a joint upper bound in the sub-poset that is still below `q`.
    ///
    /// Checked through the equivalent condition that every down-set
    /// `{p ∈ P : p ≤ q}` is empty or has a greatest element.
    pub fn is_weakly_solid(&self) -> Result<bool> {
        if !self.is_sieve() {
            return Err(Error::pre("weak solidity is only defined for sieves"));
        }
        Ok(self.greatest_below_all().is_some())
    }

    /// For every ambient `q`, the greatest sub-element below it (if the
    /// down-set is nonempty). `None` overall when some down-set has no maximum.
    pub fn greatest_below_all(&self) -> Option<Vec<Option<usize>>> {
        let q = &self.ambient;
        let mut out = Vec::with_capacity(q.len());
        for x in 0..q.len() {
            let below: Vec<usize> = (0..self.sub.len()).filter(|&p| q.leq(self.embedding[p], x)).collect();
            if below.is_empty() {
                out.push(None);
                continue;
            }
            let top = below.iter().copied().find(|&m| below.iter().all(|&p| self.sub.leq(p, m)))?;
            out.push(Some(top));
        }
        Some(out)
    }
}
