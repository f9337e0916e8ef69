//! Normalized chains of truncated simplicial sets, their homology over `Q`,
//! `Z` and `GF(2)`, and a homology comparison for maps that can refute a
//! weak equivalence.
//!
//! A `d`-truncated input determines homology only through degree `d − 1`;
//! degree `d` would need the boundaries of `(d + 1)`-simplices.

mod linalg;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

pub use linalg::{invariant_factors, rank_mod2, rank_rational, SparseMatrix};

use crate::cat::FinFunctor;
use crate::dblcat::{double_nerve_map, DblFunctor};
use crate::error::{Error, Result};
use crate::sset::{diag, diag_map, nerve, nerve_map, SimplicialMap, TruncSSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Rationals,
    Integers,
    Mod2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Rationals => "q",
            Ring::Integers => "z",
            Ring::Mod2 => "z2",
        })
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "rationals" => Ok(Ring::Rationals),
            "z" | "Z" | "integers" => Ok(Ring::Integers),
            "z2" | "Z2" | "mod2" | "gf2" => Ok(Ring::Mod2),
            _ => Err(Error::pre(format!("unknown ring {s:?}; expected q, z or z2"))),
        }
    }
}

/// Normalized chains: degree `k` is free on the nondegenerate `k`-simplices
/// and `∂` is the alternating face sum with degenerate faces dropped.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    bases: Vec<Vec<usize>>,
    /// `boundaries[k]: C_k → C_{k−1}`; `boundaries[0]` has no rows
    boundaries: Vec<SparseMatrix>,
}

/// Position of every simplex of `x` in the normalized basis, per level.
fn positions(x: &TruncSSet) -> Vec<Vec<Option<usize>>> {
    (0..=x.trunc())
        .map(|k| {
            let mut pos = vec![None; x.count(k)];
            for (i, s) in x.nondegenerate(k).into_iter().enumerate() {
                pos[s] = Some(i);
            }
            pos
        })
        .collect()
}

pub fn chain_complex(x: &TruncSSet) -> ChainComplex {
    let bases: Vec<Vec<usize>> = (0..=x.trunc()).map(|k| x.nondegenerate(k)).collect();
    let pos = positions(x);
    let boundaries = (0..=x.trunc())
        .map(|k| {
            if k == 0 {
                return SparseMatrix::zero(0, bases[0].len());
            }
            let columns = bases[k]
                .iter()
                .map(|&s| {
                    (0..=k)
                        .filter_map(|i| pos[k - 1][x.face(k, s, i)].map(|r| (r, if i % 2 == 0 { 1 } else { -1 })))
                        .collect()
                })
                .collect();
            SparseMatrix::from_columns(bases[k - 1].len(), columns)
        })
        .collect();
    ChainComplex { bases, boundaries }
}

impl ChainComplex {
    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// The simplices spanning degree `k`.
    pub fn basis(&self, k: usize) -> &[usize] {
        &self.bases[k]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k]
    }

    /// Degrees `k` where `∂_{k−1} ∘ ∂_k ≠ 0`.
    pub fn square_zero_failures(&self) -> Vec<usize> {
        (2..self.boundaries.len()).filter(|&k| !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero()).collect()
    }

    /// Homology through degree `max_degree − 1`. The boundary of each
    /// degree is reduced on its own thread.
    pub fn homology(&self, ring: Ring) -> HomologyReport {
        let d = self.max_degree();
        // per boundary: its rank and, over Z, its invariant factors
        let reduced: Vec<(usize, Vec<BigInt>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = self
                .boundaries
                .iter()
                .map(|b| {
                    scope.spawn(move || match ring {
                        Ring::Rationals => (rank_rational(b), Vec::new()),
                        Ring::Mod2 => (rank_mod2(b), Vec::new()),
                        Ring::Integers => {
                            let f = invariant_factors(b);
                            (f.len(), f.into_iter().filter(|x| !x.is_one()).collect())
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("reduction thread")).collect()
        });
        let degrees = (0..=d)
            .map(|k| {
                if k == d {
                    return DegreeHomology { degree: k, betti: None, torsion: Vec::new() };
                }
                let n = self.bases[k].len();
                let betti = n - reduced[k].0 - reduced[k + 1].0;
                DegreeHomology { degree: k, betti: Some(betti), torsion: reduced[k + 1].1.clone() }
            })
            .collect();
        HomologyReport { ring, valid_through: d.checked_sub(1), degrees }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    /// `None` above the validity bound
    pub betti: Option<usize>,
    /// integral torsion coefficients, each dividing the next
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub ring: Ring,
    /// last degree whose homology is determined; `None` for a 0-truncated input
    pub valid_through: Option<usize>,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self, k: usize) -> Option<usize> {
        self.degrees.get(k).and_then(|h| h.betti)
    }

    /// Betti numbers through the validity bound.
    pub fn known_betti(&self) -> Vec<usize> {
        self.degrees.iter().filter_map(|h| h.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|h| !h.torsion.is_empty())
    }

    /// `Σ (−1)^k b_k` over the valid degrees.
    pub fn euler_characteristic(&self) -> i64 {
        self.known_betti().iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .map(|h| {
                json!({
                    "degree": h.degree,
                    "betti": h.betti.map_or(json!("unknown"), |b| json!(b)),
                    "torsion": h.torsion.iter().map(|t| json!(t.to_string())).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "ring": self.ring.to_string(), "valid_through": self.valid_through, "degrees": degrees })
    }
}

pub fn betti(x: &TruncSSet, ring: Ring) -> HomologyReport {
    chain_complex(x).homology(ring)
}

/// Maps a witness can compare: functors through their nerves, double
/// functors through the diagonals of their double nerves.
pub trait NerveMap {
    /// The comparison map truncated at `d`.
    fn nerve_map(&self, d: usize) -> Result<SimplicialMap>;
}

impl NerveMap for SimplicialMap {
    fn nerve_map(&self, d: usize) -> Result<SimplicialMap> {
        Ok(self.truncate(d))
    }
}

impl NerveMap for FinFunctor {
    fn nerve_map(&self, d: usize) -> Result<SimplicialMap> {
        let x = Arc::new(nerve(self.source(), d)?);
        let y = Arc::new(nerve(self.target(), d)?);
        nerve_map(self, x, y)
    }
}

impl NerveMap for DblFunctor {
    fn nerve_map(&self, d: usize) -> Result<SimplicialMap> {
        let (x, y, f) = double_nerve_map(self, d, d)?;
        diag_map(&f, &Arc::new(diag(&x)?), &Arc::new(diag(&y)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub source_betti: usize,
    pub target_betti: usize,
    /// rank of the induced map on rational homology
    pub induced_rank: usize,
}

impl DegreeComparison {
    pub fn is_iso(&self) -> bool {
        self.source_betti == self.induced_rank && self.target_betti == self.induced_rank
    }
}

/// Whether a map induces isomorphisms on rational homology in each valid
/// degree. A failure refutes weak equivalence; a pass is only a necessary
/// condition and proves nothing by itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessVerdict {
    pub valid_through: Option<usize>,
    pub degrees: Vec<DegreeComparison>,
}

pub const WITNESS_CAVEAT: &str =
    "necessary condition only: a rational homology isomorphism does not imply a weak equivalence";

impl WitnessVerdict {
    pub fn passes(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::is_iso)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.degrees.iter().find(|c| !c.is_iso()).map(|c| c.degree)
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .map(|c| {
                json!({
                    "degree": c.degree,
                    "source_betti": c.source_betti,
                    "target_betti": c.target_betti,
                    "induced_rank": c.induced_rank,
                    "iso": c.is_iso(),
                })
            })
            .collect();
        json!({
            "passes": self.passes(),
            "first_failure": self.first_failure(),
            "valid_through": self.valid_through,
            "degrees": degrees,
            "note": WITNESS_CAVEAT,
        })
    }
}

/// The normalized chain map of `f` in degree `k`.
fn chain_map(f: &SimplicialMap, cx: &ChainComplex, k: usize, ypos: &[Vec<Option<usize>>]) -> SparseMatrix {
    let columns = cx.bases[k].iter().map(|&s| ypos[k][f.apply(k, s)].map(|r| (r, 1)).into_iter().collect()).collect();
    SparseMatrix::from_columns(ypos[k].iter().flatten().count(), columns)
}

/// Compares rational homology of the two ends of `f`'s nerve map, truncated
/// at `d`, through degree `d − 1`.
///
/// In degree `k` the kernel of `M = [[∂ˣ_k, 0], [f_k, ∂ʸ_{k+1}]]` is the
/// cycles `x` with `f x` a boundary, times the `(k+1)`-cycles of `Y`, so
/// `rank H_k(f) = b_k(X) − n_k(X) + rank M − rank ∂ʸ_{k+1} + rank ∂ˣ_{k+1}`.
pub fn we_witness(f: &impl NerveMap, d: usize) -> Result<WitnessVerdict> {
    let f = f.nerve_map(d)?;
    let (x, y) = (f.source(), f.target());
    let (cx, cy) = (chain_complex(x), chain_complex(y));
    let (hx, hy) = (cx.homology(Ring::Rationals), cy.homology(Ring::Rationals));
    let ypos = positions(y);
    let top = cx.max_degree();
    let degrees = (0..top)
        .map(|k| {
            let m = SparseMatrix::block_lower(&cx.boundaries[k], &chain_map(&f, &cx, k, &ypos), &cy.boundaries[k + 1]);
            let bx = hx.betti(k).expect("valid degree");
            let rank = bx + rank_rational(&m) + rank_rational(&cx.boundaries[k + 1])
                - cx.bases[k].len()
                - rank_rational(&cy.boundaries[k + 1]);
            DegreeComparison {
                degree: k,
                source_betti: bx,
                target_betti: hy.betti(k).expect("valid degree"),
                induced_rank: rank,
            }
        })
        .collect();
    Ok(WitnessVerdict { valid_through: top.checked_sub(1), degrees })
}

#[cfg(test)]
mod tests;
