//! Pushouts of categories along `C × P → C × Q` for a set `C` and a sieve
//! `P ⊆ Q`.
//!
//! Objects of the result are the objects of `A` and the pairs `(c, q)` with
//! `q ∉ P`. Morphisms are those of `A`, the order relations `(c, q ≤ q')`
//! outside `P`, and formal composites `a → F(c, p) → (c, q)` taken up to
//! sliding along `p ≤ p' ≤ q`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cat::{discrete, product, FinCat, FinFunctor, PosetInclusion};
use crate::error::{Error, Result};
use crate::sset::UnionFind;

/// A functor `F: C × P → A` with `C` a finite set and `P ⊆ Q` a sieve.
///
/// The source of `F` must be `product(discrete(set), P)`, so the pair
/// `(c, p)` has index `c·|P| + p` and `(c, p ≤ p')` has index
/// `c·|Mor P| + (p ≤ p')`.
#[derive(Clone, Debug)]
pub struct SievePushoutSpec {
    pub set: Vec<String>,
    pub inc: PosetInclusion,
    pub f: FinFunctor,
}

/// `a → F(c, p) → (c, q)`, with `p` indexing the sub-poset and `q` the
/// ambient one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormalCell {
    pub c: usize,
    pub alpha: usize,
    pub p: usize,
    pub q: usize,
}

/// Where a morphism of the pushout comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PushoutCell {
    FromA(usize),
    /// `(c, q ≤ q2)` with both ends outside `P`
    Adjoined {
        c: usize,
        q: usize,
        q2: usize,
    },
    /// the representative of a class of formal composites
    Formal(FormalCell),
}

impl SievePushoutSpec {
    pub fn new(set: Vec<String>, inc: PosetInclusion, f: FinFunctor) -> Result<Self> {
        let spec = SievePushoutSpec { set, inc, f };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        if !self.inc.is_sieve() {
            return Err(Error::pre("P ⊆ Q is not a sieve"));
        }
        let expected = product(&discrete(self.set.clone()), &self.inc.sub().as_category()?)?;
        if **self.f.source() != expected {
            return Err(Error::pre("F must start at C × P"));
        }
        Ok(())
    }

    pub fn a(&self) -> &Arc<FinCat> {
        self.f.target()
    }

    /// `F(c, p)`
    pub fn f_object(&self, c: usize, p: usize) -> usize {
        self.f.on_object(c * self.inc.sub().len() + p)
    }

    /// `F(c, p ≤ p2)`
    pub fn f_morphism(&self, c: usize, p: usize, p2: usize) -> usize {
        let sub = self.inc.sub();
        let m = sub.morphism_of(p, p2).expect("p ≤ p2");
        self.f.on_morphism(c * sub.relation_count() + m)
    }

    /// `C × Q`, the other leg's target.
    pub fn c_times_q(&self) -> Result<FinCat> {
        product(&discrete(self.set.clone()), &self.inc.ambient().as_category()?)
    }
}

/// Whether two formal composites into `(c, q)` are equal by a single
/// refinement: either a common `p` with `p1, p2 ≤ p ≤ q` on which both
/// composites agree, or a common factorization through some `p ≤ p1, p2`.
///
/// Cells with different source, `c` or `q` are never equal.
pub fn type3_equal(spec: &SievePushoutSpec, m1: &FormalCell, m2: &FormalCell) -> bool {
    let (a, sub, amb) = (spec.a(), spec.inc.sub(), spec.inc.ambient());
    if m1.c != m2.c || m1.q != m2.q || a.src(m1.alpha) != a.src(m2.alpha) {
        return false;
    }
    if m1 == m2 {
        return true;
    }
    let c = m1.c;
    let below_q = |p: usize| amb.leq(spec.inc.embed(p), m1.q);
    let above = (0..sub.len()).filter(|&p| sub.leq(m1.p, p) && sub.leq(m2.p, p) && below_q(p));
    for p in above {
        let l = a.compose(spec.f_morphism(c, m1.p, p), m1.alpha);
        let r = a.compose(spec.f_morphism(c, m2.p, p), m2.alpha);
        if l.is_some() && l == r {
            return true;
        }
    }
    let below = (0..sub.len()).filter(|&p| sub.leq(p, m1.p) && sub.leq(p, m2.p));
    for p in below {
        let (to1, to2) = (spec.f_morphism(c, p, m1.p), spec.f_morphism(c, p, m2.p));
        for beta in a.hom(a.src(m1.alpha), spec.f_object(c, p)) {
            if a.compose(to1, beta) == Some(m1.alpha) && a.compose(to2, beta) == Some(m2.alpha) {
                return true;
            }
        }
    }
    false
}

/// The pushout together with both cocone functors.
#[derive(Clone, Debug)]
pub struct CatPushout {
    pub cat: Arc<FinCat>,
    /// `A → pushout`
    pub from_a: FinFunctor,
    /// `C × Q → pushout`
    pub from_cq: FinFunctor,
    /// origin of every morphism
    pub cells: Vec<PushoutCell>,
    spec: SievePushoutSpec,
    formal: HashMap<FormalCell, usize>,
}

impl CatPushout {
    /// The morphism a formal composite represents, if the cell is well-formed.
    pub fn formal_index(&self, cell: &FormalCell) -> Option<usize> {
        self.formal.get(cell).copied()
    }

    pub fn spec(&self) -> &SievePushoutSpec {
        &self.spec
    }

    /// The functor out of the pushout induced by a cocone
    /// `g_a: A → T`, `g_cq: C × Q → T`. The cocone condition is not checked;
    /// a non-cocone usually fails to induce a functor and is reported as such.
    pub fn induced(&self, g_a: &FinFunctor, g_cq: &FinFunctor) -> Result<FinFunctor> {
        let spec = &self.spec;
        let a = spec.a();
        let amb = spec.inc.ambient();
        let (nq, nmq) = (amb.len(), amb.relation_count());
        let target = g_a.target().clone();
        let q_mor = |c: usize, q: usize, q2: usize| g_cq.on_morphism(c * nmq + amb.morphism_of(q, q2).expect("q ≤ q2"));
        let mut objects: Vec<usize> = (0..a.object_count()).map(|x| g_a.on_object(x)).collect();
        let comp = spec.inc.complement();
        for c in 0..spec.set.len() {
            for &q in &comp {
                objects.push(g_cq.on_object(c * nq + q));
            }
        }
        let morphisms = self
            .cells
            .iter()
            .map(|cell| match *cell {
                PushoutCell::FromA(m) => Ok(g_a.on_morphism(m)),
                PushoutCell::Adjoined { c, q, q2 } => Ok(q_mor(c, q, q2)),
                PushoutCell::Formal(FormalCell { c, alpha, p, q }) => target
                    .compose(q_mor(c, spec.inc.embed(p), q), g_a.on_morphism(alpha))
                    .ok_or_else(|| Error::invalid("cocone legs disagree on C × P")),
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunctor::new(self.cat.clone(), target, objects, morphisms)
    }
}

/// The pushout of `A ← C × P → C × Q`; formal composites are identified by
/// the equivalence relation generated by sliding along `P`.
pub fn pushout_cat_sieve(spec: &SievePushoutSpec) -> Result<CatPushout> {
    spec.check()?;
    let a = spec.a().clone();
    let (sub, amb) = (spec.inc.sub().clone(), spec.inc.ambient().clone());
    let comp = spec.inc.complement();
    let comp_pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let n_obj_a = a.object_count();
    let new_object = |c: usize, q: usize| n_obj_a + c * comp.len() + comp_pos[&q];

    let mut objects: Vec<String> = a.object_labels().to_vec();
    for c in &spec.set {
        for &q in &comp {
            objects.push(format!("({c},{})", amb.label(q)));
        }
    }
    let mut morphisms: Vec<(String, usize, usize)> =
        (0..a.morphism_count()).map(|m| (a.morphism_label(m).to_string(), a.src(m), a.tgt(m))).collect();
    let mut cells: Vec<PushoutCell> = (0..a.morphism_count()).map(PushoutCell::FromA).collect();
    let mut adjoined: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut identities: Vec<usize> = (0..n_obj_a).map(|x| a.identity(x)).collect();
    for (c, cl) in spec.set.iter().enumerate() {
        for &q in &comp {
            for &q2 in &comp {
                if amb.leq(q, q2) {
                    if q == q2 {
                        identities.push(morphisms.len());
                    }
                    adjoined.insert((c, q, q2), morphisms.len());
                    morphisms.push((
                        format!("({cl},{}<={})", amb.label(q), amb.label(q2)),
                        new_object(c, q),
                        new_object(c, q2),
                    ));
                    cells.push(PushoutCell::Adjoined { c, q, q2 });
                }
            }
        }
    }
    let mut formal: HashMap<FormalCell, usize> = HashMap::new();
    for c in 0..spec.set.len() {
        for &q in &comp {
            let members: Vec<FormalCell> = (0..sub.len())
                .filter(|&p| amb.leq(spec.inc.embed(p), q))
                .flat_map(|p| a.incoming(spec.f_object(c, p)).iter().map(move |&alpha| FormalCell { c, alpha, p, q }))
                .collect();
            let pos: HashMap<FormalCell, usize> = members.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut uf = UnionFind::new(members.len());
            for (i, m) in members.iter().enumerate() {
                for p2 in sub.above(m.p) {
                    if p2 != m.p && amb.leq(spec.inc.embed(p2), q) {
                        let alpha2 = a.compose(spec.f_morphism(c, m.p, p2), m.alpha).expect("composable");
                        uf.union(i, pos[&FormalCell { c, alpha: alpha2, p: p2, q }]);
                    }
                }
            }
            let mut class_index: HashMap<usize, usize> = HashMap::new();
            for (i, m) in members.iter().enumerate() {
                let root = uf.find(i);
                let idx = *class_index.entry(root).or_insert_with(|| {
                    let rep = members[root];
                    morphisms.push((
                        format!(
                            "({},{}<={})*{}",
                            spec.set[c],
                            sub.label(rep.p),
                            amb.label(q),
                            a.morphism_label(rep.alpha)
                        ),
                        a.src(rep.alpha),
                        new_object(c, q),
                    ));
                    cells.push(PushoutCell::Formal(rep));
                    morphisms.len() - 1
                });
                formal.insert(*m, idx);
            }
        }
    }

    let missing = || Error::invalid("pushout composite missing");
    let cat = Arc::new(FinCat::from_fn(objects, morphisms, identities, |g, f| match (cells[g], cells[f]) {
        (PushoutCell::FromA(g), PushoutCell::FromA(f)) => a.compose(g, f).ok_or_else(missing),
        (PushoutCell::Formal(m), PushoutCell::FromA(f)) => {
            let alpha = a.compose(m.alpha, f).ok_or_else(missing)?;
            formal.get(&FormalCell { alpha, ..m }).copied().ok_or_else(missing)
        }
        (PushoutCell::Adjoined { c, q2, .. }, PushoutCell::Formal(m)) => {
            debug_assert_eq!(c, m.c);
            formal.get(&FormalCell { q: q2, ..m }).copied().ok_or_else(missing)
        }
        (PushoutCell::Adjoined { c, q2, .. }, PushoutCell::Adjoined { q, .. }) => {
            adjoined.get(&(c, q, q2)).copied().ok_or_else(missing)
        }
        _ => Err(missing()),
    })?);
    cat.ensure_valid()?;

    let from_a = FinFunctor::new(a.clone(), cat.clone(), (0..n_obj_a).collect(), (0..a.morphism_count()).collect())?;
    let cq = Arc::new(spec.c_times_q()?);
    let pre = spec.inc.preimages();
    let mut cq_objects = Vec::with_capacity(cq.object_count());
    for c in 0..spec.set.len() {
        for (q, &below) in pre.iter().enumerate() {
            cq_objects.push(match below {
                Some(p) => spec.f_object(c, p),
                None => new_object(c, q),
            });
        }
    }
    let amb_cat = amb.as_category()?;
    let mut cq_morphisms = Vec::with_capacity(cq.morphism_count());
    for c in 0..spec.set.len() {
        for m in 0..amb_cat.morphism_count() {
            let (q, q2) = (amb_cat.src(m), amb_cat.tgt(m));
            cq_morphisms.push(match (pre[q], pre[q2]) {
                (Some(p), Some(p2)) => spec.f_morphism(c, p, p2),
                (None, None) => adjoined[&(c, q, q2)],
                (Some(p), None) => formal[&FormalCell { c, alpha: a.identity(spec.f_object(c, p)), p, q: q2 }],
                (None, Some(_)) => return Err(Error::pre("P ⊆ Q is not a sieve")),
            });
        }
    }
    let from_cq = FinFunctor::new(cq, cat.clone(), cq_objects, cq_morphisms)?;
    Ok(CatPushout { cat, from_a, from_cq, cells, spec: spec.clone(), formal })
}
