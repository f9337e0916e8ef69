use std::sync::Arc;

use super::{FinCat, FinFunctor};

/// Outcome of [`iso_check`].
#[derive(Clone, Debug)]
pub enum IsoResult {
    Found(FinFunctor),
    NotIsomorphic,
    /// The search budget ran out; nothing is claimed either way.
    Inconclusive,
}

impl IsoResult {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoResult::Found(_))
    }

    pub fn functor(self) -> Option<FinFunctor> {
        match self {
            IsoResult::Found(f) => Some(f),
            _ => None,
        }
    }
}

const SEARCH_BUDGET: u64 = 2_000_000;

struct Search<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    hom_c: Vec<Vec<u32>>,
    hom_d: Vec<Vec<u32>>,
    steps: u64,
}

/// Looks for an isomorphism `c → d` by backtracking: objects first, pruned by
/// hom-set size signatures, then morphisms hom-set by hom-set. Thin
/// categories need no morphism search.
pub fn iso_check(c: &Arc<FinCat>, d: &Arc<FinCat>) -> IsoResult {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return IsoResult::NotIsomorphic;
    }
    let mut s = Search { c, d, hom_c: hom_sizes(c), hom_d: hom_sizes(d), steps: 0 };
    let sig_c: Vec<_> = (0..c.object_count()).map(|x| signature(&s.hom_c, x)).collect();
    let sig_d: Vec<_> = (0..d.object_count()).map(|x| signature(&s.hom_d, x)).collect();
    let (mut a, mut b) = (sig_c.clone(), sig_d.clone());
    a.sort();
    b.sort();
    if a != b {
        return IsoResult::NotIsomorphic;
    }
    let n = c.object_count();
    let mut order: Vec<usize> = (0..n).collect();
    // rare signatures first
    order.sort_by_key(|&x| (sig_c.iter().filter(|s| **s == sig_c[x]).count(), x));
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut exhausted = false;
    let found = s.assign_objects(&order, 0, &sig_c, &sig_d, &mut phi, &mut used, &mut exhausted);
    match found {
        Some(f) => IsoResult::Found(
            FinFunctor::new(c.clone(), d.clone(), phi_obj(&f.0), f.1).expect("search only returns functors"),
        ),
        None if exhausted => IsoResult::Inconclusive,
        None => IsoResult::NotIsomorphic,
    }
}

fn phi_obj(p: &[usize]) -> Vec<usize> {
    p.to_vec()
}

fn hom_sizes(c: &FinCat) -> Vec<Vec<u32>> {
    let n = c.object_count();
    let mut h = vec![vec![0u32; n]; n];
    for f in 0..c.morphism_count() {
        h[c.src(f)][c.tgt(f)] += 1;
    }
    h
}

fn signature(h: &[Vec<u32>], x: usize) -> (u32, Vec<u32>, Vec<u32>) {
    let mut out: Vec<u32> = (0..h.len()).filter(|&y| y != x).map(|y| h[x][y]).collect();
    let mut inc: Vec<u32> = (0..h.len()).filter(|&y| y != x).map(|y| h[y][x]).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (h[x][x], out, inc)
}

type Partial = (Vec<usize>, Vec<usize>);

impl Search<'_> {
    #[allow(clippy::too_many_arguments)]
    fn assign_objects(
        &mut self,
        order: &[usize],
        depth: usize,
        sig_c: &[(u32, Vec<u32>, Vec<u32>)],
        sig_d: &[(u32, Vec<u32>, Vec<u32>)],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        exhausted: &mut bool,
    ) -> Option<Partial> {
        if depth == order.len() {
            return self.assign_morphisms(phi, exhausted).map(|m| (phi.clone(), m));
        }
        let x = order[depth];
        for y in 0..self.d.object_count() {
            self.steps += 1;
            if self.steps > SEARCH_BUDGET {
                *exhausted = true;
                return None;
            }
            if used[y] || sig_c[x] != sig_d[y] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&z| self.hom_c[x][z] == self.hom_d[y][phi[z]] && self.hom_c[z][x] == self.hom_d[phi[z]][y]);
            if !consistent {
                continue;
            }
            phi[x] = y;
            used[y] = true;
            if let Some(r) = self.assign_objects(order, depth + 1, sig_c, sig_d, phi, used, exhausted) {
                return Some(r);
            }
            used[y] = false;
            phi[x] = usize::MAX;
            if *exhausted {
                return None;
            }
        }
        None
    }

    fn assign_morphisms(&mut self, phi: &[usize], exhausted: &mut bool) -> Option<Vec<usize>> {
        let (c, d) = (self.c, self.d);
        let mut psi = vec![usize::MAX; c.morphism_count()];
        for x in 0..c.object_count() {
            psi[c.identity(x)] = d.identity(phi[x]);
        }
        let pending: Vec<usize> = (0..c.morphism_count()).filter(|&f| psi[f] == usize::MAX).collect();
        let mut factorizations: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.morphism_count()];
        for (g, f) in c.composable_pairs() {
            factorizations[c.compose(g, f).unwrap()].push((g, f));
        }
        let mut used = vec![false; d.morphism_count()];
        for &m in psi.iter().filter(|&&m| m != usize::MAX) {
            used[m] = true;
        }
        if self.place(&pending, 0, phi, &factorizations, &mut psi, &mut used, exhausted) {
            Some(psi)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &mut self,
        pending: &[usize],
        depth: usize,
        phi: &[usize],
        fact: &[Vec<(usize, usize)>],
        psi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        exhausted: &mut bool,
    ) -> bool {
        let (c, d) = (self.c, self.d);
        if depth == pending.len() {
            return true;
        }
        let f = pending[depth];
        let candidates: Vec<usize> = d.hom(phi[c.src(f)], phi[c.tgt(f)]).filter(|&m| !used[m]).collect();
        for m in candidates {
            self.steps += 1;
            if self.steps > SEARCH_BUDGET {
                *exhausted = true;
                return false;
            }
            psi[f] = m;
            if self.locally_consistent(f, psi, fact) {
                used[m] = true;
                if self.place(pending, depth + 1, phi, fact, psi, used, exhausted) {
                    return true;
                }
                used[m] = false;
            }
            psi[f] = usize::MAX;
            if *exhausted {
                return false;
            }
        }
        false
    }

    fn locally_consistent(&self, f: usize, psi: &[usize], fact: &[Vec<(usize, usize)>]) -> bool {
        let (c, d) = (self.c, self.d);
        let ok = |g: usize, h: usize| {
            let gh = c.compose(g, h).unwrap();
            if psi[g] == usize::MAX || psi[h] == usize::MAX || psi[gh] == usize::MAX {
                return true;
            }
            d.compose(psi[g], psi[h]) == Some(psi[gh])
        };
        c.outgoing(c.tgt(f)).iter().all(|&g| ok(g, f))
            && c.incoming(c.src(f)).iter().all(|&h| ok(f, h))
            && fact[f].iter().all(|&(g, h)| ok(g, h))
    }
}
