use nalgebra::{DMatrix, Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{from_interleaved, symplectic_defect, to_interleaved};

/// Rotation invariants of a symplectic frame: for each block `k`, the Gram matrix of the row
/// pieces `L_{i,k}` (columns `2k, 2k+1` of the interleaved frame).
///
/// `grams[k][(i, j)] = <L_{i,k}, L_{j,k}>`, indices 0-based over interleaved rows.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFamily {
    pub n: usize,
    pub grams: Vec<DMatrix<f64>>,
}

/// One entry of an invariant family, for flat serialization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

impl InvariantFamily {
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.grams[k][(i, j)]
    }

    pub fn entries(&self) -> Vec<InvariantEntry> {
        let mut out = Vec::new();
        for (k, g) in self.grams.iter().enumerate() {
            for i in 0..2 * self.n {
                for j in 0..2 * self.n {
                    out.push(InvariantEntry {
                        i,
                        j,
                        k,
                        value: g[(i, j)],
                    });
                }
            }
        }
        out
    }

    pub fn from_entries(n: usize, entries: &[InvariantEntry]) -> Result<Self> {
        let mut grams = vec![DMatrix::zeros(2 * n, 2 * n); n];
        for e in entries {
            if e.i >= 2 * n || e.j >= 2 * n || e.k >= n {
                return Err(Error::Parse(format!("invariant index out of range: {e:?}")));
            }
            grams[e.k][(e.i, e.j)] = e.value;
            grams[e.k][(e.j, e.i)] = e.value;
        }
        Ok(Self { n, grams })
    }

    pub fn max_abs_diff(&self, other: &InvariantFamily) -> f64 {
        self.grams
            .iter()
            .zip(&other.grams)
            .map(|(a, b)| crate::linalg::max_abs(&(a - b)))
            .fold(0.0, f64::max)
    }
}

/// Row pieces of block `k`: a `2n x 2` matrix.
fn block_rows(s_int: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    s_int.columns(2 * k, 2).into_owned()
}

/// Invariants of a block-order symplectic frame.
pub fn invariants_from(s: &DMatrix<f64>) -> InvariantFamily {
    let n = s.nrows() / 2;
    let si = to_interleaved(s);
    let grams = (0..n)
        .map(|k| {
            let r = block_rows(&si, k);
            &r * r.transpose()
        })
        .collect();
    InvariantFamily { n, grams }
}

/// `sum_i det(b_{i,k})` for every block `k`, where `b_{i,k}` stacks the row pieces of `x_i` and
/// `xi_i`. Equals 1 for every block of a symplectic frame.
pub fn determinant_sums(s: &DMatrix<f64>) -> Vec<f64> {
    let n = s.nrows() / 2;
    let si = to_interleaved(s);
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    si[(2 * i, 2 * k)] * si[(2 * i + 1, 2 * k + 1)]
                        - si[(2 * i, 2 * k + 1)] * si[(2 * i + 1, 2 * k)]
                })
                .sum()
        })
        .collect()
}

/// Result of [`reconstruct_symplectic`].
#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// Canonical frame in block order.
    pub t: DMatrix<f64>,
    /// Row pair `(i_k, j_k)` used to fix each block.
    pub pairs: Vec<(usize, usize)>,
    /// Number of sign candidates passing the determinant-sum test (1 for valid data).
    pub passing_candidates: usize,
    pub symplectic_residual: f64,
}

/// Row pair with the largest Cauchy-Schwarz gap `a_ii a_jj - a_ij^2` in block `k`.
pub fn best_pair(family: &InvariantFamily, k: usize) -> (usize, usize, f64) {
    let g = &family.grams[k];
    let dim = 2 * family.n;
    let mut best = (0, 1, f64::NEG_INFINITY);
    for i in 0..dim {
        for j in i + 1..dim {
            let gap = g[(i, i)] * g[(j, j)] - g[(i, j)] * g[(i, j)];
            if gap > best.2 {
                best = (i, j, gap);
            }
        }
    }
    best
}

/// Realize the row pieces of one block from its Gram matrix, with `L_{i}` on the positive
/// first axis and `L_{j}` in the upper half plane. The mirror solution is handled by the caller.
fn realize_block(g: &DMatrix<f64>, i: usize, j: usize, block: usize) -> Result<DMatrix<f64>> {
    let dim = g.nrows();
    let scale = (0..dim).map(|r| g[(r, r)].abs()).fold(0.0, f64::max);
    let aii = g[(i, i)];
    if aii <= 1e-14 * scale {
        return Err(Error::InfeasibleInvariants {
            block,
            reason: format!("row {i} has vanishing norm"),
        });
    }
    let vi = Vector2::new(aii.sqrt(), 0.0);
    let x = g[(i, j)] / vi.x;
    let y2 = g[(j, j)] - x * x;
    if y2 <= 1e-14 * scale {
        return Err(Error::InfeasibleInvariants {
            block,
            reason: format!("rows {i} and {j} are parallel"),
        });
    }
    let vj = Vector2::new(x, y2.sqrt());
    let basis = Matrix2::new(vi.x, vi.y, vj.x, vj.y);
    let inv = basis.try_inverse().ok_or_else(|| Error::InfeasibleInvariants {
        block,
        reason: "singular pair".into(),
    })?;
    let mut rows = DMatrix::zeros(dim, 2);
    for r in 0..dim {
        let v = inv * Vector2::new(g[(r, i)], g[(r, j)]);
        rows[(r, 0)] = v.x;
        rows[(r, 1)] = v.y;
    }
    // The family must be a rank-2 Gram matrix.
    let resid = crate::linalg::max_abs(&(&rows * rows.transpose() - g));
    if resid > 1e-8 * scale.max(1.0) {
        return Err(Error::InfeasibleInvariants {
            block,
            reason: format!("not a rank-2 Gram matrix (residual {resid:e})"),
        });
    }
    Ok(rows)
}

/// Rebuild the canonical symplectic frame from its invariants, choosing in each block the row
/// pair with the widest Cauchy-Schwarz gap.
pub fn reconstruct_symplectic(family: &InvariantFamily) -> Result<Reconstruction> {
    let pairs: Vec<(usize, usize)> = (0..family.n)
        .map(|k| {
            let (i, j, _) = best_pair(family, k);
            (i, j)
        })
        .collect();
    reconstruct_with_pairs(family, &pairs)
}

/// As [`reconstruct_symplectic`] with prescribed row pairs.
pub fn reconstruct_with_pairs(
    family: &InvariantFamily,
    pairs: &[(usize, usize)],
) -> Result<Reconstruction> {
    let n = family.n;
    let blocks: Vec<DMatrix<f64>> = (0..n)
        .map(|k| realize_block(&family.grams[k], pairs[k].0, pairs[k].1, k))
        .collect::<Result<_>>()?;
    let mut passing = Vec::new();
    let mut best_resid = f64::INFINITY;
    for mask in 0..(1usize << n) {
        let mut ti = DMatrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            let sign = if mask >> k & 1 == 1 { -1.0 } else { 1.0 };
            for r in 0..2 * n {
                ti[(r, 2 * k)] = blocks[k][(r, 0)];
                ti[(r, 2 * k + 1)] = sign * blocks[k][(r, 1)];
            }
        }
        let t = from_interleaved(&ti);
        let resid = determinant_sums(&t)
            .iter()
            .map(|v| (v - 1.0).abs())
            .fold(0.0, f64::max);
        best_resid = best_resid.min(resid);
        if resid < 1e-6 {
            passing.push(t);
        }
    }
    let count = passing.len();
    let t = passing
        .into_iter()
        .next()
        .ok_or(Error::NoSymplecticCandidate {
            residual: best_resid,
        })?;
    let symplectic_residual = symplectic_defect(&t);
    Ok(Reconstruction {
        t,
        pairs: pairs.to_vec(),
        passing_candidates: count,
        symplectic_residual,
    })
}
