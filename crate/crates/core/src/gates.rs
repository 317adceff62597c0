//! Matrix-free gate kernels.
//!
//! Each kernel touches amplitudes in place. The `parallel` feature routes
//! large sweeps through rayon; results do not depend on the partitioning
//! because every reduction goes through [`crate::reduce`] and every map
//! writes each element from its own inputs only.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::ValidityOracle;
use crate::reduce;
use crate::state::StateVector;

/// Smallest amplitude count worth handing to the thread pool.
#[cfg(feature = "parallel")]
const PAR_MIN_LEN: usize = 1 << 15;

/// Gate families with a dense reference realization built from the layout
/// alone. The oracle gate and the reflection need extra data and have their
/// own dense constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    /// Hadamard on every qubit of both registers.
    HadamardAll,
    /// Sign flip on every paired basis state `|c, c>`.
    PhaseDiagonal,
    /// Inversion about the mean amplitude.
    Diffusion,
    /// Sign flip on every basis state with work value zero.
    PhaseWorkZero,
    /// Single-pair sign flip: `-1` only at `|nu, nu>`.
    Lambda(u64),
}

fn map_in_place<F>(amps: &mut [Complex64], f: F)
where
    F: Fn(Complex64) -> Complex64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if amps.len() >= PAR_MIN_LEN {
        amps.par_iter_mut().for_each(|a| *a = f(*a));
        return;
    }
    for a in amps.iter_mut() {
        *a = f(*a);
    }
}

fn zip_map_in_place<F>(amps: &mut [Complex64], other: &[Complex64], f: F)
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync + Send,
{
    debug_assert_eq!(amps.len(), other.len());
    #[cfg(feature = "parallel")]
    if amps.len() >= PAR_MIN_LEN {
        amps.par_iter_mut()
            .zip(other.par_iter())
            .for_each(|(a, r)| *a = f(*a, *r));
        return;
    }
    for (a, r) in amps.iter_mut().zip(other) {
        *a = f(*a, *r);
    }
}

fn butterfly(lo: &mut Complex64, hi: &mut Complex64) {
    let a = *lo;
    let b = *hi;
    *lo = FRAC_1_SQRT_2 * (a + b);
    *hi = FRAC_1_SQRT_2 * (a - b);
}

fn hadamard_qubit(amps: &mut [Complex64], qubit: u32) {
    let step = 1usize << qubit;
    #[cfg(feature = "parallel")]
    if amps.len() >= PAR_MIN_LEN {
        if step >= PAR_MIN_LEN / 2 {
            // Few large blocks: parallelize across the paired halves.
            for chunk in amps.chunks_mut(2 * step) {
                let (lo, hi) = chunk.split_at_mut(step);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .for_each(|(a, b)| butterfly(a, b));
            }
        } else {
            amps.par_chunks_mut(2 * step).for_each(|chunk| {
                let (lo, hi) = chunk.split_at_mut(step);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    butterfly(a, b);
                }
            });
        }
        return;
    }
    for chunk in amps.chunks_mut(2 * step) {
        let (lo, hi) = chunk.split_at_mut(step);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            butterfly(a, b);
        }
    }
}

impl StateVector {
    /// Hadamard on all qubits of both registers. Applied to `|0...0>` this
    /// yields the uniform superposition with amplitude `1/sqrt(dim)`.
    pub fn hadamard_all(&mut self) -> &mut Self {
        let total = self.layout().total_qubits();
        let amps = self.amplitudes_mut();
        for qubit in 0..total {
            hadamard_qubit(amps, qubit);
        }
        self.debug_check_norm();
        self
    }

    /// Sign flip on every paired basis state `|c, c>` (the entangling phase
    /// gate). Involution.
    pub fn phase_diagonal(&mut self) -> &mut Self {
        let layout = self.layout();
        let pairs = layout.control_dim().min(layout.work_dim());
        let amps = self.amplitudes_mut();
        for z in 0..pairs {
            let idx = ((z << layout.n_work()) | z) as usize;
            amps[idx] = -amps[idx];
        }
        self.debug_check_norm();
        self
    }

    /// Inversion about the mean: `a_i <- 2*mean(a) - a_i`. Equal to the
    /// reflection about the uniform state. Involution.
    pub fn diffuse(&mut self) -> &mut Self {
        let mean = reduce::sum_complex(self.amplitudes()) / self.amplitudes().len() as f64;
        map_in_place(self.amplitudes_mut(), move |a| 2.0 * mean - a);
        self.debug_check_norm();
        self
    }

    /// Sign flip on every basis state whose work register reads zero.
    /// Involution.
    pub fn phase_work_zero(&mut self) -> &mut Self {
        let layout = self.layout();
        let amps = self.amplitudes_mut();
        for c in 0..layout.control_dim() {
            let idx = (c << layout.n_work()) as usize;
            amps[idx] = -amps[idx];
        }
        self.debug_check_norm();
        self
    }

    /// Reflection about `reference`: `a <- 2 <reference, a> reference - a`.
    /// The inner product is conjugate-linear in the reference. Involution for
    /// a fixed reference; `reflect_about(r, r) = r`.
    pub fn reflect_about(&mut self, reference: &StateVector) -> Result<&mut Self> {
        if reference.layout() != self.layout() {
            return Err(Error::LayoutMismatch);
        }
        let ip = reduce::inner_product(reference.amplitudes(), self.amplitudes());
        let scale = 2.0 * ip;
        zip_map_in_place(self.amplitudes_mut(), reference.amplitudes(), move |a, r| {
            scale * r - a
        });
        self.debug_check_norm();
        Ok(self)
    }

    /// Reversible oracle query: `|c, w> -> |c, w XOR (c XOR f(c))>`. On the
    /// paired states this rewrites the work register to the oracle output,
    /// `|z, z> -> |z, f(z)>`. Self-inverse.
    pub fn apply_oracle(&mut self, oracle: &ValidityOracle) -> Result<&mut Self> {
        let layout = self.layout();
        if oracle.width() != layout.n_work() || oracle.width() != layout.n_control() {
            return Err(Error::LayoutMismatch);
        }
        let work_dim = layout.work_dim();
        let block = work_dim as usize;

        let permute = |c0: u64, chunk: &mut [Complex64]| -> Result<()> {
            let value = oracle.eval(c0)?;
            if value >= work_dim {
                return Err(Error::OracleRange {
                    input: c0,
                    value,
                    width: oracle.width(),
                });
            }
            let mask = c0 ^ value;
            for w in 0..work_dim {
                let p = w ^ mask;
                if w < p {
                    chunk.swap(w as usize, p as usize);
                }
            }
            Ok(())
        };

        #[cfg(feature = "parallel")]
        if self.amplitudes().len() >= PAR_MIN_LEN {
            let result: Result<()> = self
                .amplitudes_mut()
                .par_chunks_mut(block)
                .enumerate()
                .try_for_each(|(c, chunk)| permute(c as u64, chunk));
            result?;
            self.debug_check_norm();
            return Ok(self);
        }

        for (c, chunk) in self.amplitudes_mut().chunks_mut(block).enumerate() {
            permute(c as u64, chunk)?;
        }
        self.debug_check_norm();
        Ok(self)
    }
}
