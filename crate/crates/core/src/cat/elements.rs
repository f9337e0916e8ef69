use std::collections::HashMap;

use super::FinCat;
use crate::error::Result;
use crate::limits as caps;
use crate::simplex;
use crate::sset::TruncSSet;

/// The category of elements of `x`, cut off at its truncation: objects are
/// all simplices of dimension `≤ d`, and a morphism `(θ, y)` goes from
/// `θ^* y` to `y` for each operator `θ: [m] → [m']` with `m, m' ≤ d`. The
/// full `Δ/X` is infinite; this is its full subcategory on dimensions `≤ d`.
pub fn category_of_elements(x: &TruncSSet) -> Result<FinCat> {
    let d = x.trunc();
    let total: usize =
        (0..=d).map(|m2| x.count(m2) * (0..=d).map(|m| simplex::binomial(m2 + m + 1, m + 1)).sum::<usize>()).sum();
    caps::check(|| "category of elements morphisms".into(), total)?;
    let offset: Vec<usize> = (0..=d)
        .scan(0, |acc, k| {
            let o = *acc;
            *acc += x.count(k);
            Some(o)
        })
        .collect();
    let mut labels: Vec<String> = (0..=d).flat_map(|k| x.labels(k).to_vec()).collect();
    let mut sorted = labels.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        labels = (0..=d).flat_map(|k| x.labels(k).iter().map(move |l| format!("{k}:{l}"))).collect();
    }
    let ops: Vec<Vec<Vec<Vec<usize>>>> =
        (0..=d).map(|m| (0..=d).map(|m2| simplex::monotone_maps(m, m2)).collect()).collect();
    let mut morphisms = Vec::with_capacity(total);
    let mut keys: Vec<(Vec<usize>, usize, usize)> = Vec::with_capacity(total);
    let mut index: HashMap<(Vec<usize>, usize, usize), usize> = HashMap::with_capacity(total);
    for m2 in 0..=d {
        for y in 0..x.count(m2) {
            for m in 0..=d {
                for theta in &ops[m][m2] {
                    let src = offset[m] + x.act(theta, m2, y);
                    let name = theta.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
                    morphisms.push((format!("{name}@{}", labels[offset[m2] + y]), src, offset[m2] + y));
                    index.insert((theta.clone(), m2, y), keys.len());
                    keys.push((theta.clone(), m2, y));
                }
            }
        }
    }
    let identities = (0..=d)
        .flat_map(|k| (0..x.count(k)).map(move |y| (k, y)))
        .map(|(k, y)| index[&(simplex::identity(k), k, y)])
        .collect();
    FinCat::from_fn(labels, morphisms, identities, |g, f| {
        let (outer, m2, z) = &keys[g];
        let (inner, _, _) = &keys[f];
        Ok(index[&(simplex::compose(outer, inner), *m2, *z)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{standard, Shape};

    #[test]
    fn small_cases() {
        let p = category_of_elements(&TruncSSet::point(0)).unwrap();
        assert_eq!((p.object_count(), p.morphism_count()), (1, 1));
        let e = category_of_elements(&standard(Shape::Simplex, 1, 1).unwrap()).unwrap();
        assert_eq!(e.object_count(), 5);
        assert!(e.validate().is_empty());
        // every monotone [1] → [2] misses a vertex, so all of them are edges of ∂Δ[2]
        let x = standard(Shape::Boundary, 2, 1).unwrap();
        let oracle = 3 + crate::simplex::monotone_maps(1, 2).len();
        let b = category_of_elements(&x).unwrap();
        assert_eq!(b.object_count(), oracle);
        assert_eq!(oracle, 9);
        assert!(b.validate().is_empty());
    }
}
