//! Simplicial operators: monotone maps `[m] → [n]` stored as their value
//! sequences, so `θ[i]` is the image of `i`.

/// All monotone maps `[m] → [n]`, in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

/// Binomial coefficient, exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `a ∘ b`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// The coface `δ^i: [n-1] → [n]` that skips `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|v| if v < i { v } else { v + 1 }).collect()
}

/// The codegeneracy `σ^j: [n+1] → [n]` that hits `j` twice.
pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect()
}

pub fn is_monotone(theta: &[usize]) -> bool {
    theta.windows(2).all(|w| w[0] <= w[1])
}

pub fn is_injective(theta: &[usize]) -> bool {
    theta.windows(2).all(|w| w[0] < w[1])
}

/// Splits `θ: [m] → [n]` as `mono ∘ epi` with `epi: [m] → [k]` surjective and
/// `mono: [k] → [n]` injective.
pub fn epi_mono(theta: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut mono: Vec<usize> = Vec::new();
    let mut epi = Vec::with_capacity(theta.len());
    for &v in theta {
        if mono.last() != Some(&v) {
            mono.push(v);
        }
        epi.push(mono.len() - 1);
    }
    (epi, mono)
}

/// Positions `i` where a surjection repeats, `epi[i] = epi[i+1]`, ascending.
pub fn repeats(epi: &[usize]) -> Vec<usize> {
    (0..epi.len().saturating_sub(1)).filter(|&i| epi[i] == epi[i + 1]).collect()
}

/// Targets missed by an injection into `[n]`, descending.
pub fn missed(mono: &[usize], n: usize) -> Vec<usize> {
    (0..=n).rev().filter(|v| !mono.contains(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(monotone_maps(m, n).len(), binomial(n + m + 1, m + 1));
            }
        }
    }

    #[test]
    fn factorization_recovers_the_map() {
        for theta in monotone_maps(3, 3) {
            let (epi, mono) = epi_mono(&theta);
            assert_eq!(compose(&mono, &epi), theta);
            assert!(is_injective(&mono));
            assert_eq!(*epi.last().unwrap() + 1, mono.len());
        }
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 1..5 {
            for j in 0..=n {
                for i in 0..j {
                    assert_eq!(
                        compose(&coface(n + 1, j), &coface(n, i)),
                        compose(&coface(n + 1, i), &coface(n, j - 1))
                    );
                }
            }
            for j in 0..n {
                assert_eq!(compose(&codegeneracy(n, j), &coface(n + 1, j)), identity(n));
                assert_eq!(compose(&codegeneracy(n, j), &coface(n + 1, j + 1)), identity(n));
            }
        }
    }
}
