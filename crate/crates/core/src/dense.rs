//! Dense reference matrices for small registers.
//!
//! These builders write the gate matrices out entry by entry, independently
//! of the matrix-free kernels, so the two routes can be compared in tests.
//! They are capped at [`DENSE_MAX_TOTAL_QUBITS`] total qubits.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::gates::GateKind;
use crate::layout::RegisterLayout;
use crate::oracle::ValidityOracle;
use crate::state::StateVector;

/// Builders refuse layouts above this total qubit count.
pub const DENSE_MAX_TOTAL_QUBITS: u32 = 10;

/// Row-major square matrix of complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix-vector product.
    pub fn apply(&self, xs: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(xs.len(), self.dim);
        let mut out = vec![Complex64::ZERO; self.dim];
        for (row, o) in out.iter_mut().enumerate() {
            let base = row * self.dim;
            let mut acc = Complex64::ZERO;
            for (col, x) in xs.iter().enumerate() {
                acc += self.entries[base + col] * x;
            }
            *o = acc;
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut out = DenseMatrix::zeros(dim);
        for i in 0..dim {
            for k in 0..dim {
                let a = self.entries[i * dim + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..dim {
                    out.entries[i * dim + j] += a * rhs.entries[k * dim + j];
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let dim = self.dim * rhs.dim;
        let mut out = DenseMatrix::zeros(dim);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self.entries[i1 * self.dim + j1];
                if a == Complex64::ZERO {
                    continue;
                }
                for i2 in 0..rhs.dim {
                    for j2 in 0..rhs.dim {
                        out[(i1 * rhs.dim + i2, j1 * rhs.dim + j2)] =
                            a * rhs.entries[i2 * rhs.dim + j2];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.dim + col]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (row, col): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[row * self.dim + col]
    }
}

fn check_layout(layout: RegisterLayout) -> Result<()> {
    if layout.total_qubits() > DENSE_MAX_TOTAL_QUBITS {
        return Err(Error::DenseLimit {
            got: layout.total_qubits(),
            limit: DENSE_MAX_TOTAL_QUBITS,
        });
    }
    Ok(())
}

/// Diagonal phase gate: `-1` exactly at the paired indices `z*2^n_work + z`.
pub fn phase_diagonal_matrix(layout: RegisterLayout) -> Result<DenseMatrix> {
    check_layout(layout)?;
    let mut m = DenseMatrix::identity(layout.dim());
    let pairs = layout.control_dim().min(layout.work_dim());
    for z in 0..pairs {
        let i = layout.index(z, z)?;
        m[(i, i)] = -Complex64::ONE;
    }
    Ok(m)
}

/// Diffusion gate: off-diagonal entries `2/dim`, diagonal `2/dim - 1`.
pub fn diffusion_matrix(layout: RegisterLayout) -> Result<DenseMatrix> {
    check_layout(layout)?;
    let dim = layout.dim();
    let off = Complex64::new(2.0 / dim as f64, 0.0);
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = if i == j { off - Complex64::ONE } else { off };
        }
    }
    Ok(m)
}

/// Single-pair sign flip: identity except `-1` at `|nu, nu>`.
pub fn lambda_matrix(layout: RegisterLayout, nu: u64) -> Result<DenseMatrix> {
    check_layout(layout)?;
    let pairs = layout.control_dim().min(layout.work_dim());
    if nu >= pairs {
        return Err(Error::LambdaRange {
            nu,
            width: layout.n_work(),
        });
    }
    let mut m = DenseMatrix::identity(layout.dim());
    let i = layout.index(nu, nu)?;
    m[(i, i)] = -Complex64::ONE;
    Ok(m)
}

/// Work-zero phase gate as the tensor product `I ⊗ P'`, where `P'` flips the
/// sign of the work-register zero state only.
pub fn phase_work_zero_matrix(layout: RegisterLayout) -> Result<DenseMatrix> {
    check_layout(layout)?;
    let control = DenseMatrix::identity(layout.control_dim() as usize);
    let mut work = DenseMatrix::identity(layout.work_dim() as usize);
    work[(0, 0)] = -Complex64::ONE;
    Ok(control.kron(&work))
}

/// Hadamard on every qubit: `H^{⊗ total}` built by Kronecker powers.
pub fn hadamard_all_matrix(layout: RegisterLayout) -> Result<DenseMatrix> {
    check_layout(layout)?;
    let h1 = {
        let mut m = DenseMatrix::zeros(2);
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        m[(0, 0)] = s;
        m[(0, 1)] = s;
        m[(1, 0)] = s;
        m[(1, 1)] = -s;
        m
    };
    let mut out = h1.clone();
    for _ in 1..layout.total_qubits() {
        out = out.kron(&h1);
    }
    Ok(out)
}

/// `2|0><0| - I` on the full register, the core of the Hadamard-conjugated
/// form of the diffusion gate.
pub fn zero_reflection_matrix(layout: RegisterLayout) -> Result<DenseMatrix> {
    check_layout(layout)?;
    let dim = layout.dim();
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = -Complex64::ONE;
    }
    m[(0, 0)] = Complex64::ONE;
    Ok(m)
}

/// Reflection about an arbitrary state: `2|r><r| - I`.
pub fn reflection_matrix(reference: &StateVector) -> Result<DenseMatrix> {
    check_layout(reference.layout())?;
    let amps = reference.amplitudes();
    let dim = amps.len();
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = 2.0 * amps[i] * amps[j].conj();
        }
        m[(i, i)] -= Complex64::ONE;
    }
    Ok(m)
}

/// Oracle gate as an explicit permutation matrix over the joint basis.
pub fn oracle_matrix(layout: RegisterLayout, oracle: &ValidityOracle) -> Result<DenseMatrix> {
    check_layout(layout)?;
    if oracle.width() != layout.n_work() || oracle.width() != layout.n_control() {
        return Err(Error::LayoutMismatch);
    }
    let dim = layout.dim();
    let mut m = DenseMatrix::zeros(dim);
    for c in 0..layout.control_dim() {
        let mask = c ^ oracle.eval(c)?;
        for w in 0..layout.work_dim() {
            let from = layout.index(c, w)?;
            let to = layout.index(c, w ^ mask)?;
            m[(to, from)] = Complex64::ONE;
        }
    }
    Ok(m)
}

/// Dense realization of a [`GateKind`].
pub fn dense_reference_gate(kind: GateKind, layout: RegisterLayout) -> Result<DenseMatrix> {
    match kind {
        GateKind::HadamardAll => hadamard_all_matrix(layout),
        GateKind::PhaseDiagonal => phase_diagonal_matrix(layout),
        GateKind::Diffusion => diffusion_matrix(layout),
        GateKind::PhaseWorkZero => phase_work_zero_matrix(layout),
        GateKind::Lambda(nu) => lambda_matrix(layout, nu),
    }
}
