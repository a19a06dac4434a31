use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::precision::Real;

/// Krylov Hamiltonian `H'_ij = ⟨T_i|H'|T_j⟩` and overlap `Υ_ij = ⟨T_i|T_j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrylovMatrices<R: Real = f64> {
    pub hamiltonian: DMatrix<Complex<R>>,
    pub overlap: DMatrix<Complex<R>>,
}

impl<R: Real> KrylovMatrices<R> {
    pub fn dimension(&self) -> usize {
        self.overlap.nrows()
    }
}

fn hermitian_part<R: Real>(m: &DMatrix<Complex<R>>) -> DMatrix<Complex<R>> {
    let half = R::from_f64(0.5);
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        (m[(i, j)] + m[(j, i)].conj()).scale(half)
    })
}

/// Builds the `K × K` Krylov matrices from moments `μ_0 … μ_{2K−1}` using
/// `T_i T_j = (T_{i+j} + T_{|i−j|}) / 2` and `x T_n = (T_{n+1} + T_{|n−1|}) / 2`.
pub fn assemble_matrices<R: Real>(moments: &[Complex<R>], k: usize) -> Result<KrylovMatrices<R>> {
    if k == 0 {
        return Err(Error::EmptyKrylov);
    }
    if moments.len() < 2 * k {
        return Err(Error::MissingMoment {
            needed: 2 * k - 1,
            available: moments.len(),
        });
    }
    let mu = |n: i64| moments[n.unsigned_abs() as usize];
    let (quarter, half) = (R::from_f64(0.25), R::from_f64(0.5));
    let h = DMatrix::from_fn(k, k, |i, j| {
        let (i, j) = (i as i64, j as i64);
        (mu(i + j + 1) + mu(i + j - 1) + mu(i - j + 1) + mu(i - j - 1)).scale(quarter)
    });
    let s = DMatrix::from_fn(k, k, |i, j| {
        let (i, j) = (i as i64, j as i64);
        (mu(i + j) + mu(i - j)).scale(half)
    });
    Ok(KrylovMatrices {
        hamiltonian: hermitian_part(&h),
        overlap: hermitian_part(&s),
    })
}

/// Canonical-orthogonalization solution in scaled units.
#[derive(Debug, Clone, PartialEq)]
pub struct CoSolution {
    /// Ascending eigenvalues of the projected problem.
    pub eigenvalues: Vec<f64>,
    pub retained: usize,
    /// Ascending overlap eigenvalues.
    pub overlap_eigenvalues: Vec<f64>,
}

/// Real symmetric `2K × 2K` form `[[Re, −Im], [Im, Re]]` of a Hermitian matrix.
/// Every eigenvalue of the Hermitian matrix appears twice.
fn real_embedding<R: Real>(m: &DMatrix<Complex<R>>) -> Vec<R> {
    let k = m.nrows();
    let n = 2 * k;
    let mut out = vec![R::zero(); n * n];
    for i in 0..k {
        for j in 0..k {
            let z = m[(i, j)];
            out[i * n + j] = z.re;
            out[i * n + j + k] = -z.im;
            out[(i + k) * n + j] = z.im;
            out[(i + k) * n + j + k] = z.re;
        }
    }
    out
}

/// Solves `H' c = λ Υ c` keeping overlap eigendirections above `xi`.
///
/// Works on the real embedding so that the same symmetric eigen solver serves
/// every scalar type; eigenvalue pairs are collapsed at the end.
pub fn solve_co<R: Real>(km: &KrylovMatrices<R>, xi: f64) -> Result<CoSolution> {
    if xi.is_nan() || xi <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "threshold must be positive, got {xi}"
        )));
    }
    let n = 2 * km.dimension();
    let (s_vals, s_vecs) = R::symmetric_eigen(&real_embedding(&km.overlap), n);
    let overlap_eigenvalues: Vec<f64> = s_vals.iter().step_by(2).map(|v| v.to_f64()).collect();
    // Decide per pair so that a pair is never split by the threshold.
    let keep: Vec<usize> = (0..n / 2)
        .filter(|&p| (s_vals[2 * p] + s_vals[2 * p + 1]).to_f64() / 2.0 > xi)
        .flat_map(|p| [2 * p, 2 * p + 1])
        .collect();
    if keep.is_empty() {
        return Err(Error::EmptyRetainedSpace { xi });
    }
    let r = keep.len();
    // W = V υ^{-1/2}, n × r
    let mut w = vec![R::zero(); n * r];
    for (c, &i) in keep.iter().enumerate() {
        let inv = R::one() / s_vals[i].sqrt();
        for row in 0..n {
            w[row * r + c] = s_vecs[row * n + i] * inv;
        }
    }
    let h = real_embedding(&km.hamiltonian);
    let mut hw = vec![R::zero(); n * r];
    for row in 0..n {
        for c in 0..r {
            hw[row * r + c] = (0..n).fold(R::zero(), |acc, k| acc + h[row * n + k] * w[k * r + c]);
        }
    }
    let mut projected = vec![R::zero(); r * r];
    for a in 0..r {
        for b in 0..=a {
            let v = (0..n).fold(R::zero(), |acc, k| acc + w[k * r + a] * hw[k * r + b]);
            projected[a * r + b] = v;
            projected[b * r + a] = v;
        }
    }
    let (vals, _) = R::symmetric_eigen(&projected, r);
    let eigenvalues = vals
        .chunks(2)
        .map(|p| ((p[0] + p[1]) / R::from_f64(2.0)).to_f64())
        .collect();
    Ok(CoSolution {
        eigenvalues,
        retained: r / 2,
        overlap_eigenvalues,
    })
}
