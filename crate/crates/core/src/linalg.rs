//! Eigensolvers shared by the graph and quantum code.
//!
//! Small problems go through nalgebra's dense symmetric/Hermitian solver.
//! Large ones use Lanczos with full reorthogonalization, which only needs a
//! matrix-vector product.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Residual target for iterative eigenpairs, relative to `max(1, |θ|)`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

/// Ascending eigenvalues of a real symmetric matrix.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Ascending eigenvalues of a complex Hermitian matrix.
pub fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_iter: 1500,
            tol: EIGEN_RESIDUAL_TOL,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// Explicit residual `‖A v − θ v‖` of the returned unit vector.
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn orthogonalize(w: &mut [f64], sets: &[&[Vec<f64>]]) {
    // two passes of classical Gram-Schmidt against every set, so that no
    // set reintroduces components removed by another
    for _ in 0..2 {
        for b in sets.iter().flat_map(|s| s.iter()) {
            let c = dot(w, b);
            axpy(-c, b, w);
        }
    }
}

/// Largest eigenpair of a real symmetric operator restricted to the
/// orthogonal complement of `deflate` (which must be orthonormal).
pub fn lanczos_max<F>(
    dim: usize,
    mut matvec: F,
    deflate: &[Vec<f64>],
    opts: LanczosOptions,
) -> Result<EigenPair>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let effective = dim.saturating_sub(deflate.len());
    if effective == 0 {
        return Err(Error::Precondition(
            "Lanczos: deflation space covers the whole space".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
    orthogonalize(&mut v, &[deflate]);
    let nv = norm(&v);
    if nv == 0.0 {
        return Err(Error::Precondition(
            "Lanczos: degenerate start vector".into(),
        ));
    }
    v.iter_mut().for_each(|x| *x /= nv);

    let max_iter = opts.max_iter.min(effective).max(1);
    let mut basis: Vec<Vec<f64>> = vec![v];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; dim];

    loop {
        let j = basis.len() - 1;
        w.iter_mut().for_each(|x| *x = 0.0);
        matvec(&basis[j], &mut w);
        let alpha = dot(&w, &basis[j]);
        alphas.push(alpha);
        orthogonalize(&mut w, &[deflate, &basis]);
        let beta = norm(&w);

        let steps = alphas.len();
        // a tiny beta means the Krylov space is invariant; dividing by it
        // would only amplify rounding noise
        let breakdown = beta < 1e-10 * alpha.abs().max(1.0);
        let check = steps % 8 == 0 || steps >= max_iter || breakdown;
        if check {
            let t = tridiagonal(&alphas, &betas);
            let eig = t.symmetric_eigen();
            let (top, &theta) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            let s = eig.eigenvectors.column(top);
            let estimate = beta * s[steps - 1].abs();
            let scale = theta.abs().max(1.0);
            if estimate <= opts.tol * scale || steps >= max_iter || breakdown {
                let mut x = vec![0.0; dim];
                for (i, b) in basis.iter().enumerate() {
                    axpy(s[i], b, &mut x);
                }
                let nx = norm(&x);
                x.iter_mut().for_each(|c| *c /= nx);
                let mut ax = vec![0.0; dim];
                matvec(&x, &mut ax);
                axpy(-theta, &x, &mut ax);
                let residual = norm(&ax);
                if residual > 1e3 * opts.tol * scale && (steps >= max_iter || breakdown) {
                    return Err(Error::NoConvergence {
                        iterations: steps,
                        residual,
                    });
                }
                return Ok(EigenPair {
                    value: theta,
                    vector: x,
                    residual,
                    iterations: steps,
                });
            }
        }
        betas.push(beta);
        let next: Vec<f64> = w.iter().map(|x| x / beta).collect();
        basis.push(next);
    }
}

fn tridiagonal(alphas: &[f64], betas: &[f64]) -> DMatrix<f64> {
    let k = alphas.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    t
}

/// Rayleigh quotient `vᵀ A v / vᵀ v` for a dense symmetric matrix.
pub fn rayleigh_quotient(m: &DMatrix<f64>, v: &[f64]) -> f64 {
    let x = DVector::from_column_slice(v);
    (x.transpose() * m * &x)[(0, 0)] / x.norm_squared()
}
