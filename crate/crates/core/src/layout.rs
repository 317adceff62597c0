//! Register geometry and basis-index conventions.

use crate::error::{Error, Result};

/// Default cap on the total qubit count (control + work).
pub const DEFAULT_MAX_TOTAL_QUBITS: u32 = 26;

/// Hard ceiling that keeps `2^(total)` inside addressable memory.
const ABSOLUTE_MAX_TOTAL_QUBITS: u32 = 40;

/// Qubit counts of the two registers and the basis-index convention.
///
/// The joint basis index of the pair `(c, w)` is `c * 2^n_work + w`: the
/// control register occupies the high-order bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    n_control: u32,
    n_work: u32,
}

impl RegisterLayout {
    /// Layout under the default capacity limit.
    pub fn new(n_control: u32, n_work: u32) -> Result<Self> {
        Self::with_capacity(n_control, n_work, DEFAULT_MAX_TOTAL_QUBITS)
    }

    /// Layout with an explicit cap on the total qubit count.
    pub fn with_capacity(n_control: u32, n_work: u32, max_total: u32) -> Result<Self> {
        if n_control == 0 || n_work == 0 {
            return Err(Error::EmptyRegister);
        }
        let total = n_control + n_work;
        let limit = max_total.min(ABSOLUTE_MAX_TOTAL_QUBITS);
        if total > limit {
            return Err(Error::Capacity {
                requested: total,
                limit,
            });
        }
        Ok(Self { n_control, n_work })
    }

    /// Square layout with `n` qubits in each register.
    pub fn square(n: u32) -> Result<Self> {
        Self::new(n, n)
    }

    /// Square layout under an explicit total-qubit cap.
    pub fn square_with_capacity(n: u32, max_total: u32) -> Result<Self> {
        Self::with_capacity(n, n, max_total)
    }

    pub fn n_control(&self) -> u32 {
        self.n_control
    }

    pub fn n_work(&self) -> u32 {
        self.n_work
    }

    pub fn total_qubits(&self) -> u32 {
        self.n_control + self.n_work
    }

    /// Number of joint basis states, `2^(n_control + n_work)`.
    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    /// Number of control-register basis states.
    pub fn control_dim(&self) -> u64 {
        1u64 << self.n_control
    }

    /// Number of work-register basis states.
    pub fn work_dim(&self) -> u64 {
        1u64 << self.n_work
    }

    /// Joint index of `(control, work)`; control in the high bits.
    pub fn index(&self, control: u64, work: u64) -> Result<usize> {
        if control >= self.control_dim() || work >= self.work_dim() {
            return Err(Error::IndexOutOfRange { control, work });
        }
        Ok(((control << self.n_work) | work) as usize)
    }

    /// Inverse of [`index`](Self::index).
    pub fn split(&self, index: usize) -> (u64, u64) {
        let index = index as u64;
        (index >> self.n_work, index & (self.work_dim() - 1))
    }
}
