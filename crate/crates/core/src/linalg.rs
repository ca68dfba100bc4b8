//! Dense linear algebra and seeded randomness shared by the rest of the crate.
//!
//! Vectors are plain `nalgebra::DVector<f64>`. Symmetric matrices go through
//! [`SymMatrix`], which checks symmetry once at construction so downstream code
//! can rely on it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type ParamVector = DVector<f64>;

const SYMMETRY_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;

/// A finite, symmetric dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(DMatrix<f64>);

impl SymMatrix {
    /// Validates squareness, finiteness and symmetry (to 1e-10 relative), then
    /// stores the exactly symmetrized matrix.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidInput(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidInput("matrix must be at least 1x1".into()));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        let scale = m.amax().max(f64::MIN_POSITIVE);
        let asym = (&m - m.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        Ok(Self(symmetrize(m)))
    }

    pub fn identity(d: usize) -> Self {
        Self(DMatrix::identity(d, d))
    }

    pub fn scaled_identity(d: usize, s: f64) -> Self {
        Self(DMatrix::identity(d, d) * s)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    /// Inverse of a positive-definite matrix via Cholesky.
    pub fn spd_inverse(&self) -> Result<SymMatrix> {
        let chol = self
            .0
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidInput("matrix is not positive definite".into()))?;
        Ok(Self(symmetrize(chol.inverse())))
    }

    /// Smallest and largest eigenvalue.
    pub fn eigen_extremes(&self) -> Result<(f64, f64)> {
        let eig = sym_eig(self)?;
        let d = eig.values.len();
        Ok((eig.values[d - 1], eig.values[0]))
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// Eigendecomposition with eigenvalues in descending order; column `j` of
/// `vectors` belongs to `values[j]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn sym_eig(m: &SymMatrix) -> Result<Eigen> {
    let d = m.dim();
    let raw = SymmetricEigen::new(m.0.clone());
    if raw.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(
            "eigen-solver produced non-finite values".into(),
        ));
    }
    // Stable sort keeps the solver's order inside tied eigenvalues.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| raw.eigenvalues[b].total_cmp(&raw.eigenvalues[a]));
    let values = DVector::from_iterator(d, order.iter().map(|&i| raw.eigenvalues[i]));
    let vectors = DMatrix::from_fn(d, d, |r, c| raw.eigenvectors[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Principal square root of a PSD matrix. Eigenvalues within `1e-10·‖M‖` of
/// zero are treated as zero; anything more negative is rejected.
pub fn psd_sqrt(m: &SymMatrix) -> Result<SymMatrix> {
    let eig = sym_eig(m)?;
    let norm = eig.values.amax();
    let min = eig.values.min();
    if min < -PSD_TOL * norm {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let floor = PSD_TOL * norm;
    let roots = eig.values.map(|l| if l <= floor { 0.0 } else { l.sqrt() });
    let scaled = DMatrix::from_fn(m.dim(), m.dim(), |r, c| eig.vectors[(r, c)] * roots[c]);
    Ok(SymMatrix(symmetrize(scaled * eig.vectors.transpose())))
}

/// Seeded random stream. Identical seed and stream with an identical call
/// sequence reproduce the same output.
#[derive(Debug, Clone)]
pub struct RngHandle {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngHandle {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    /// An independent stream under the same seed, for handing to other work.
    pub fn child(&self, stream: u64) -> Self {
        Self::with_stream(self.seed, stream)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for RngHandle {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

pub fn gaussian_vector(rng: &mut RngHandle, d: usize) -> ParamVector {
    DVector::from_iterator(d, (0..d).map(|_| StandardNormal.sample(rng)))
}

/// Mixes a base seed with a list of integers into a new 64-bit seed
/// (splitmix64 finalizer applied per component).
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(base), |acc, &p| mix(acc ^ mix(p)))
}

/// Mean of the columns of `points` (`d × n`, one point per column).
pub fn column_mean(points: &DMatrix<f64>) -> ParamVector {
    let n = points.ncols();
    points.column_sum() / n as f64
}

/// Covariance of the columns with divisor `n`.
pub fn column_covariance(points: &DMatrix<f64>) -> SymMatrix {
    let n = points.ncols();
    let mean = column_mean(points);
    let mut centered = points.clone();
    for mut col in centered.column_iter_mut() {
        col -= &mean;
    }
    let cov = &centered * centered.transpose() / n as f64;
    SymMatrix(symmetrize(cov))
}
