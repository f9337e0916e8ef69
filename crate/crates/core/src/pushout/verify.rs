//! Levelwise comparison of the horizontal nerve of a double pushout with the
//! pushout of the horizontal nerve levels.
//!
//! At level `m`, `N^h(C ⊠ P)_m = C_m × P` with `C_m` the set of `m`-chains
//! of `C`, so the levelwise pushout is a category pushout along a sieve and
//! is computed by [`pushout_cat_sieve`], independently of the double
//! construction. The canonical map out of it is induced by the nerve of the
//! two comparison double functors.

use std::sync::Arc;

use super::cat::{pushout_cat_sieve, SievePushoutSpec};
use super::dbl::{pushout_dbl_box_sieve, DblSievePushoutSpec};
use crate::cat::{discrete, product, FinCat, FinFunctor};
use crate::dblcat::{h_embed, horizontal_nerve, HorizontalNerve};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub level: usize,
    /// object and morphism counts of `N^h(pushout)_m`
    pub nerve_counts: (usize, usize),
    /// the same for the pushout of the levels
    pub pushout_counts: (usize, usize),
    pub isomorphic: bool,
    /// why the comparison failed, if it did
    pub detail: Option<String>,
}

/// `C_m × X → N^h(C ⊠ X)_m` for `X` a poset category, matching chain keys.
fn chains_times(
    chains: &[Vec<usize>],
    labels: &[String],
    x: &FinCat,
    level: &crate::dblcat::NerveLevel,
    m: usize,
) -> Result<FinFunctor> {
    let source = Arc::new(product(&discrete(labels.to_vec()), x)?);
    let (no, nm) = (x.object_count(), x.morphism_count());
    let mut objects = Vec::with_capacity(source.object_count());
    for chain in chains {
        for p in 0..no {
            // level 0 chains are single objects of C, higher ones morphisms
            let key: Vec<usize> =
                if m == 0 { vec![chain[0] * no + p] } else { chain.iter().map(|&f| f * no + p).collect() };
            objects.push(level.object_of(&key).expect("chain of C ⊠ X"));
        }
    }
    let mut morphisms = Vec::with_capacity(source.morphism_count());
    for chain in chains {
        for e in 0..nm {
            let key: Vec<usize> =
                if m == 0 { vec![chain[0] * nm + e] } else { chain.iter().map(|&f| f * nm + e).collect() };
            morphisms.push(level.morphism_of(&key).expect("chain of C ⊠ X"));
        }
    }
    FinFunctor::new(source, level.cat.clone(), objects, morphisms)
}

/// Compares `N^h(pushout)_m` with the pushout of the levels for `m ≤ m_max`.
pub fn verify_nerve_preserves_pushout(spec: &DblSievePushoutSpec, m_max: usize) -> Result<Vec<LevelVerdict>> {
    let dp = pushout_dbl_box_sieve(spec)?;
    let cp = spec.f.source().clone();
    let cq = dp.from_cq.source().clone();
    let hn = |d: &crate::dblcat::FinDblCat| horizontal_nerve(d, m_max);
    let (n_a, n_cp, n_cq, n_p) = (hn(spec.a())?, hn(&cp)?, hn(&cq)?, hn(&dp.dbl)?);
    let n_c = hn(&h_embed(&spec.c)?)?;
    let f_levels = HorizontalNerve::map_levels(&spec.f, &n_cp, &n_a)?;
    let ga_levels = HorizontalNerve::map_levels(&dp.from_a, &n_a, &n_p)?;
    let gq_levels = HorizontalNerve::map_levels(&dp.from_cq, &n_cq, &n_p)?;
    let (p_cat, q_cat) = (spec.inc.sub().as_category()?, spec.inc.ambient().as_category()?);

    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let chains = &n_c.levels[m].obj_keys;
        let labels = n_c.levels[m].cat.object_labels();
        let to_cp = chains_times(chains, labels, &p_cat, &n_cp.levels[m], m)?;
        let to_cq = chains_times(chains, labels, &q_cat, &n_cq.levels[m], m)?;
        let level_spec = SievePushoutSpec::new(labels.to_vec(), spec.inc.clone(), to_cp.then(&f_levels[m])?)?;
        let po = pushout_cat_sieve(&level_spec)?;
        let target = &n_p.levels[m].cat;
        let nerve_counts = (target.object_count(), target.morphism_count());
        let pushout_counts = (po.cat.object_count(), po.cat.morphism_count());
        let (isomorphic, detail) = match po.induced(&ga_levels[m], &to_cq.then(&gq_levels[m])?) {
            Ok(h) if h.is_bijective() => (true, None),
            Ok(_) => (false, Some("canonical comparison is not bijective".to_string())),
            Err(e) => (false, Some(format!("no canonical comparison: {e}"))),
        };
        out.push(LevelVerdict { level: m, nerve_counts, pushout_counts, isomorphic, detail });
    }
    Ok(out)
}
