//! Sparse Hermitian operators on tensor products of small local spaces.
//!
//! Both qubit Hamiltonians and their spin-J variants are sums of terms that
//! act on a few sites. Each term is a tensor product of sparse site
//! operators and is scattered row by row into a compressed global matrix. The global index puts site
//! 0 in the most significant position.
//!
//! Top eigenvalues are found per connected component of the sparsity graph.
//! Conserved quantities such as total `Z` split the matrix into many small
//! blocks, so this is usually far cheaper than a full diagonalization.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, LanczosOptions};

/// Entries with magnitude at or below this are dropped during assembly.
pub const DROP_TOL: f64 = 1e-14;

/// Components up to this size are diagonalized densely; larger ones use
/// Lanczos, which is much cheaper when only the top eigenvalue is needed.
pub const DENSE_BLOCK_CAP: usize = 256;

/// Tolerance for the Hermiticity check on assembled operators.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = DMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sparse single-site operator, stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteOp {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SiteOp {
    pub fn from_dense(m: &DMatrix<Complex64>) -> Self {
        let rows = (0..m.nrows())
            .map(|r| {
                (0..m.ncols())
                    .filter_map(|c| (m[(r, c)].norm() > DROP_TOL).then_some((c, m[(r, c)])))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// Row `r` lists the nonzero `(column, value)` pairs of row `r`.
    pub fn from_rows(rows: Vec<Vec<(usize, Complex64)>>) -> Self {
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }
}

/// `coeff · ⊗_l factors[l]`, each factor acting on its own site.
#[derive(Debug, Clone)]
pub struct TensorTerm<'a> {
    pub coeff: f64,
    pub factors: Vec<(usize, &'a SiteOp)>,
}

/// Row-compressed Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHermitian {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

/// Sums tensor-product terms into a global operator on sites with
/// dimensions `dims`.
pub fn assemble(dims: &[usize], terms: &[TensorTerm<'_>]) -> Result<SparseHermitian> {
    let dim = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::InvalidParameter {
            name: "dims",
            reason: "dimension overflows".into(),
        })?;
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    for t in terms {
        for &(site, op) in &t.factors {
            if site >= dims.len() || op.dim() != dims[site] {
                return Err(Error::DimensionMismatch {
                    expected: dims.get(site).copied().unwrap_or(0),
                    found: op.dim(),
                });
            }
        }
    }
    let mut row_ptr = Vec::with_capacity(dim + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);
    let mut row: Vec<(usize, Complex64)> = Vec::new();
    let mut partial: Vec<(usize, Complex64)> = Vec::new();
    let mut next: Vec<(usize, Complex64)> = Vec::new();
    let mut digits = vec![0usize; dims.len()];
    for r in 0..dim {
        if r > 0 {
            // odometer increment, last site fastest
            for site in (0..dims.len()).rev() {
                digits[site] += 1;
                if digits[site] < dims[site] {
                    break;
                }
                digits[site] = 0;
            }
        }
        row.clear();
        for t in terms {
            if t.coeff == 0.0 {
                continue;
            }
            partial.clear();
            partial.push((r, Complex64::new(t.coeff, 0.0)));
            for &(site, op) in &t.factors {
                let digit = digits[site];
                next.clear();
                for &(col, v) in &partial {
                    let base = col - digit * strides[site];
                    for &(c, w) in &op.rows[digit] {
                        next.push((base + c * strides[site], v * w));
                    }
                }
                std::mem::swap(&mut partial, &mut next);
                if partial.is_empty() {
                    break;
                }
            }
            row.extend_from_slice(&partial);
        }
        row.sort_unstable_by_key(|e| e.0);
        let mut i = 0;
        while i < row.len() {
            let c = row[i].0;
            let mut v = Complex64::new(0.0, 0.0);
            while i < row.len() && row[i].0 == c {
                v += row[i].1;
                i += 1;
            }
            if v.norm() > DROP_TOL {
                cols.push(c);
                vals.push(v);
            }
        }
        row_ptr.push(cols.len());
    }
    let op = SparseHermitian {
        dim,
        row_ptr,
        cols,
        vals,
    };
    op.check_hermitian()?;
    Ok(op)
}

impl SparseHermitian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    fn entry(&self, r: usize, c: usize) -> Complex64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(pos) => self.vals[span.start + pos],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    fn check_hermitian(&self) -> Result<()> {
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                let diff = (v - self.entry(c, r).conj()).norm();
                if diff > HERMITIAN_TOL * v.norm().max(1.0) {
                    return Err(Error::InvalidHamiltonian(format!(
                        "operator is not Hermitian at ({r}, {c}): off by {diff:e}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_real(&self) -> bool {
        self.vals.iter().all(|v| v.im.abs() <= DROP_TOL)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|r| self.entry(r, r)).sum()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }

    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = self.row(r).map(|(c, v)| v * x[c]).sum();
        }
    }

    /// Index sets of the connected components of the sparsity pattern.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for r in 0..self.dim {
            for (c, _) in self.row(r) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut slot = vec![usize::MAX; self.dim];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.dim {
            let root = find(&mut parent, v);
            if slot[root] == usize::MAX {
                slot[root] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[root]].push(v);
        }
        comps
    }

    fn block_top(&self, comp: &[usize], pos: &[usize]) -> Result<f64> {
        let size = comp.len();
        if size == 1 {
            return Ok(self.entry(comp[0], comp[0]).re);
        }
        let real = comp
            .iter()
            .all(|&r| self.row(r).all(|(_, v)| v.im.abs() <= DROP_TOL));
        if size <= DENSE_BLOCK_CAP {
            if real {
                let mut m = DMatrix::<f64>::zeros(size, size);
                for (i, &r) in comp.iter().enumerate() {
                    for (c, v) in self.row(r) {
                        m[(i, pos[c])] = v.re;
                    }
                }
                return Ok(*linalg::symmetric_eigenvalues(m).last().unwrap());
            }
            let mut m = DMatrix::<Complex64>::zeros(size, size);
            for (i, &r) in comp.iter().enumerate() {
                for (c, v) in self.row(r) {
                    m[(i, pos[c])] = v;
                }
            }
            return Ok(*linalg::hermitian_eigenvalues(m).last().unwrap());
        }
        // real embedding [[A, -B], [B, A]] of A + iB has the same spectrum,
        // each eigenvalue doubled
        let mut entries: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(size);
        for &r in comp {
            entries.push(self.row(r).map(|(c, v)| (pos[c], v)).collect());
        }
        let width = if real { size } else { 2 * size };
        let pair = linalg::lanczos_max(
            width,
            |x: &[f64], y: &mut [f64]| {
                for (i, row) in entries.iter().enumerate() {
                    let (mut re, mut im) = (0.0, 0.0);
                    for &(c, v) in row {
                        if real {
                            re += v.re * x[c];
                        } else {
                            re += v.re * x[c] - v.im * x[size + c];
                            im += v.im * x[c] + v.re * x[size + c];
                        }
                    }
                    y[i] = re;
                    if !real {
                        y[size + i] = im;
                    }
                }
            },
            &[],
            LanczosOptions::default(),
        )?;
        Ok(pair.value)
    }

    /// Largest eigenvalue.
    pub fn max_eigenvalue(&self) -> Result<f64> {
        self.max_eigenvalue_over(|_| true)
    }

    /// Largest eigenvalue among the components whose smallest index passes
    /// `keep`. The caller is responsible for knowing that those components
    /// carry the top of the spectrum.
    pub fn max_eigenvalue_over(&self, keep: impl Fn(usize) -> bool) -> Result<f64> {
        let comps: Vec<Vec<usize>> = self
            .components()
            .into_iter()
            .filter(|c| keep(c[0]))
            .collect();
        if comps.is_empty() {
            return Err(Error::Precondition("no component selected".into()));
        }
        let mut pos = vec![0; self.dim];
        for comp in &comps {
            for (i, &v) in comp.iter().enumerate() {
                pos[v] = i;
            }
        }
        comps
            .iter()
            .map(|c| self.block_top(c, &pos))
            .try_fold(f64::NEG_INFINITY, |best, v| Ok(best.max(v?)))
    }

    /// All eigenvalues, ascending. Dense; intended for small operators.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if self.dim > crate::spectral::DENSE_SPECTRUM_CAP {
            return Err(Error::TooLarge {
                what: "dense spectrum",
                size: self.dim,
                cap: crate::spectral::DENSE_SPECTRUM_CAP,
            });
        }
        Ok(linalg::hermitian_eigenvalues(self.to_dense()))
    }
}
