//! Dense statevector over the control ⊗ work register pair.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::reduce;

/// Tolerance for the running normalization check.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Full statevector: `2^(n_control + n_work)` complex amplitudes.
#[derive(Debug, Clone)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`: amplitude one at joint index zero.
    pub fn zero(layout: RegisterLayout) -> Self {
        let mut amps = vec![Complex64::ZERO; layout.dim()];
        amps[0] = Complex64::ONE;
        Self { layout, amps }
    }

    /// Build from explicit amplitudes. The length must match the layout and
    /// the vector must be normalized within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::LayoutMismatch);
        }
        let state = Self { layout, amps };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Amplitude of the basis state `(control, work)`.
    pub fn amplitude(&self, control: u64, work: u64) -> Result<Complex64> {
        Ok(self.amps[self.layout.index(control, work)?])
    }

    /// `|a_(c,w)|^2`.
    pub fn probability(&self, control: u64, work: u64) -> Result<f64> {
        Ok(self.amplitude(control, work)?.norm_sqr())
    }

    /// Squared 2-norm, reduced along the fixed deterministic tree.
    pub fn norm_sqr(&self) -> f64 {
        reduce::sum_norm_sqr(&self.amps)
    }

    /// Probabilities of all joint basis states, in index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub(crate) fn debug_check_norm(&self) {
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE,
            "state norm drifted: {}",
            self.norm_sqr()
        );
    }
}
