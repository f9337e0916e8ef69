//! Random small inputs shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use dblcat::cat::{all_functors, chain_category, FinCat, FinFunctor, FinPoset};
use dblcat::groth::Diagram;
use rand::seq::SliceRandom;
use rand::Rng;

/// A poset on `n` elements whose relations only go up in index.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> FinPoset {
    let rel: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
    FinPoset::from_generators((0..n).map(|i| format!("j{i}")).collect(), &rel).unwrap()
}

/// A random poset shape with at most `max` objects.
pub fn random_shape(rng: &mut impl Rng, max: usize) -> Arc<FinCat> {
    let n = rng.gen_range(1..=max);
    Arc::new(random_poset(rng, n, 0.4).as_category().unwrap())
}

/// A poset shape on at most three objects, where no two distinct paths
/// between the same ends exist, so any choice on covers is a diagram.
pub fn random_small_shape(rng: &mut impl Rng) -> (FinPoset, Arc<FinCat>) {
    let n = rng.gen_range(1..=3);
    let p = random_poset(rng, n, 0.5);
    let c = Arc::new(p.as_category().unwrap());
    (p, c)
}

/// Extends a choice of functors on the covering relations of `p` to a
/// diagram, composing along chains.
pub fn diagram_from_covers(
    p: &FinPoset,
    shape: &Arc<FinCat>,
    values: &[Arc<FinCat>],
    covers: &dyn Fn(usize, usize) -> FinFunctor,
) -> Diagram {
    let mut action = Vec::with_capacity(shape.morphism_count());
    for m in 0..shape.morphism_count() {
        let (a, b) = (shape.src(m), shape.tgt(m));
        action.push(path_functor(p, values, covers, a, b));
    }
    Diagram::new(shape.clone(), values.to_vec(), action).unwrap()
}

fn path_functor(
    p: &FinPoset,
    values: &[Arc<FinCat>],
    covers: &dyn Fn(usize, usize) -> FinFunctor,
    a: usize,
    b: usize,
) -> FinFunctor {
    if a == b {
        return FinFunctor::identity(values[a].clone());
    }
    let next = p.covers().into_iter().find(|&(x, y)| x == a && p.leq(y, b)).map(|(_, y)| y).unwrap();
    covers(a, next).then(&path_functor(p, values, covers, next, b)).unwrap()
}

pub struct Cospan {
    pub d1: Diagram,
    pub d2: Diagram,
    pub d3: Diagram,
    pub alpha: Vec<FinFunctor>,
    pub beta: Vec<FinFunctor>,
}

fn random_chain(rng: &mut impl Rng) -> Arc<FinCat> {
    Arc::new(chain_category(rng.gen_range(0..=2)))
}

/// A diagram `D` over `p` with fibres `≤ [2]` and a natural transformation
/// `D → d3`, built by picking components first and then, on each cover, an
/// action compatible with them.
fn random_over(
    rng: &mut impl Rng,
    p: &FinPoset,
    shape: &Arc<FinCat>,
    d3: &Diagram,
) -> Option<(Diagram, Vec<FinFunctor>)> {
    let n = p.len();
    let values: Vec<Arc<FinCat>> = (0..n).map(|_| random_chain(rng)).collect();
    let alpha: Vec<FinFunctor> =
        (0..n).map(|j| all_functors(&values[j], d3.value(j)).choose(rng).cloned()).collect::<Option<_>>()?;
    let mut chosen = std::collections::HashMap::new();
    for (a, b) in p.covers() {
        let s3 = d3.action(shape.hom(a, b).next().unwrap());
        let want = alpha[a].then(s3).unwrap();
        let ok: Vec<FinFunctor> = all_functors(&values[a], &values[b])
            .into_iter()
            .filter(|f| {
                let got = f.then(&alpha[b]).unwrap();
                got.object_map() == want.object_map() && got.morphism_map() == want.morphism_map()
            })
            .collect();
        chosen.insert((a, b), ok.choose(rng).cloned()?);
    }
    let d = diagram_from_covers(p, shape, &values, &|a, b| chosen[&(a, b)].clone());
    Some((d, alpha))
}

/// A random cospan `D1 → D3 ← D2` over a poset shape with at most three
/// objects and fibres `≤ [2]`.
pub fn random_cospan(rng: &mut impl Rng) -> Cospan {
    loop {
        let (p, shape) = random_small_shape(rng);
        let values: Vec<Arc<FinCat>> = (0..p.len()).map(|_| random_chain(rng)).collect();
        let mut picks = std::collections::HashMap::new();
        for (a, b) in p.covers() {
            picks.insert((a, b), all_functors(&values[a], &values[b]).choose(rng).cloned().unwrap());
        }
        let d3 = diagram_from_covers(&p, &shape, &values, &|a, b| picks[&(a, b)].clone());
        let Some((d1, alpha)) = random_over(rng, &p, &shape, &d3) else { continue };
        let Some((d2, beta)) = random_over(rng, &p, &shape, &d3) else { continue };
        return Cospan { d1, d2, d3, alpha, beta };
    }
}

/// Sequences `x0 ≤ x1 ≤ … ≤ xk` in `p`, counted by their last element.
pub fn weak_chains(p: &FinPoset, k: usize) -> usize {
    chains(p, k, |a, b| p.leq(a, b))
}

/// Sequences `x0 < x1 < … < xk` in `p`.
pub fn strict_chains(p: &FinPoset, k: usize) -> usize {
    chains(p, k, |a, b| p.lt(a, b))
}

fn chains(p: &FinPoset, k: usize, step: impl Fn(usize, usize) -> bool) -> usize {
    let n = p.len();
    let mut ending = vec![1usize; n];
    for _ in 0..k {
        ending = (0..n).map(|b| (0..n).filter(|&a| step(a, b)).map(|a| ending[a]).sum()).collect();
    }
    ending.iter().sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
