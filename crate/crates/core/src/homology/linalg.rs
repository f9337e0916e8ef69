//! Exact ranks and Smith normal forms of sparse integer matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer matrix stored by columns; each column lists `(row, entry)`
/// with rows increasing and entries nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    /// Entries are summed per row and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (r, v) in c {
                    assert!(r < rows, "row {r} out of range");
                    *acc.entry(r).or_default() += v;
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for &(i, v) in c {
                out[i][j] = v;
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "shapes do not compose");
        let columns = other
            .columns
            .iter()
            .map(|c| c.iter().flat_map(|&(k, w)| self.columns[k].iter().map(move |&(i, v)| (i, v * w))).collect())
            .collect();
        SparseMatrix::from_columns(self.rows, columns)
    }

    /// `[[a, 0], [c, d]]`.
    pub fn block_lower(a: &SparseMatrix, c: &SparseMatrix, d: &SparseMatrix) -> SparseMatrix {
        assert!(a.cols() == c.cols() && c.rows == d.rows, "blocks do not fit");
        let shift = a.rows;
        let mut columns: Vec<Vec<(usize, i64)>> = a
            .columns
            .iter()
            .zip(&c.columns)
            .map(|(x, y)| x.iter().copied().chain(y.iter().map(|&(i, v)| (i + shift, v))).collect())
            .collect();
        columns.extend(d.columns.iter().map(|y| y.iter().map(|&(i, v)| (i + shift, v)).collect()));
        SparseMatrix { rows: a.rows + c.rows, columns }
    }
}

type BigColumn = Vec<(usize, BigInt)>;

/// `b·x − a·y` on sorted sparse columns.
fn combine(b: &BigInt, x: &BigColumn, a: &BigInt, y: &BigColumn) -> BigColumn {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some((rx, vx)), Some((ry, _))) if rx < ry => {
                i += 1;
                (*rx, b * vx)
            }
            (Some((rx, _)), Some((ry, vy))) if ry < rx => {
                j += 1;
                (*ry, -(a * vy))
            }
            (Some((rx, vx)), Some((_, vy))) => {
                i += 1;
                j += 1;
                (*rx, b * vx - a * vy)
            }
            (Some((rx, vx)), None) => {
                i += 1;
                (*rx, b * vx)
            }
            (None, Some((ry, vy))) => {
                j += 1;
                (*ry, -(a * vy))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    let content = out.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if content > BigInt::one() {
        for (_, v) in &mut out {
            *v /= &content;
        }
    }
    out
}

/// Rank over `Q` by fraction-free column reduction on the lowest entry.
pub fn rank_rational(m: &SparseMatrix) -> usize {
    let mut pivots: HashMap<usize, BigColumn> = HashMap::new();
    for col in &m.columns {
        let mut c: BigColumn = col.iter().map(|&(r, v)| (r, BigInt::from(v))).collect();
        while let Some((low, a)) = c.last().cloned() {
            match pivots.get(&low) {
                Some(p) => {
                    let b = p.last().expect("pivot column is nonzero").1.clone();
                    c = combine(&b, &c, &a, p);
                }
                None => {
                    pivots.insert(low, c);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Symmetric difference of sorted lists.
fn xor(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

/// Rank over `GF(2)`, by the same reduction on odd entries.
pub fn rank_mod2(m: &SparseMatrix) -> usize {
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for col in &m.columns {
        let mut c: Vec<usize> = col.iter().filter(|(_, v)| v % 2 != 0).map(|&(r, _)| r).collect();
        while let Some(&low) = c.last() {
            match pivots.get(&low) {
                Some(p) => c = xor(&c, p),
                None => {
                    pivots.insert(low, c);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// The nonzero diagonal of the Smith normal form over `Z`, each dividing
/// the next. Unit pivots are eliminated sparsely first; what is left goes
/// through a dense reduction that pivots on the least absolute value.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut cols: Vec<BTreeMap<usize, BigInt>> =
        m.columns.iter().map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect()).collect();
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &r in c.keys() {
            rows[r].insert(j);
        }
    }
    let mut units = 0;
    loop {
        // a unit entry with the least fill-in
        let pivot = cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().filter(|(_, v)| v.abs().is_one()).map(move |(&r, _)| (r, j)))
            .min_by_key(|&(r, j)| ((rows[r].len() - 1) * (cols[j].len() - 1), r, j));
        let Some((r, j)) = pivot else { break };
        let u = cols[j][&r].clone();
        let pivot_col = std::mem::take(&mut cols[j]);
        for &i in pivot_col.keys() {
            rows[i].remove(&j);
        }
        for j2 in std::mem::take(&mut rows[r]) {
            let a = &cols[j2][&r] * &u;
            for (i, v) in &pivot_col {
                let entry = cols[j2].entry(*i).or_default();
                *entry -= &a * v;
                if entry.is_zero() {
                    cols[j2].remove(i);
                    rows[*i].remove(&j2);
                } else {
                    rows[*i].insert(j2);
                }
            }
            debug_assert!(!cols[j2].contains_key(&r));
        }
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|r| live_cols.iter().map(|&j| cols[j].get(r).cloned().unwrap_or_default()).collect())
        .collect();
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_smith(dense));
    out
}

// row and column operations touch two lines at once, so indices read best
#[allow(clippy::needless_range_loop)]
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let smallest = |a: &Vec<Vec<BigInt>>| {
            (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        };
        let Some((i, j)) = smallest(&a) else { break };
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a smaller remainder is left in row or column t: make it the pivot
                let (i, j) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| !a[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
                    .expect("pivot is nonzero");
                a.swap(t, i);
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            let p = a[t][t].clone();
            let stray = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match stray {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}
