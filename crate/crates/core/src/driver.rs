//! Pipeline driver: initialization, the entangling stage, the oracle query,
//! the amplification stage, per-step tracing, query accounting, and
//! measurement sampling.

use std::collections::BTreeMap;
use std::fmt;

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::layout::{RegisterLayout, DEFAULT_MAX_TOTAL_QUBITS};
use crate::oracle::{OracleSpec, ValidityOracle};
use crate::reduce;
use crate::state::StateVector;

/// Counts of gate applications, split by gate role.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryLedger {
    pub phase_diagonal: u64,
    pub diffusion: u64,
    pub phase_work_zero: u64,
    pub reflection: u64,
    pub oracle: u64,
}

impl QueryLedger {
    /// Queries counted against the search bound: both phase-gate families.
    pub fn phase_queries(&self) -> u64 {
        self.phase_diagonal + self.phase_work_zero
    }
}

/// Which stage a trace record was captured after.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TracePhase {
    Init,
    Dp,
    Oracle,
    Grover,
}

impl TracePhase {
    pub fn as_str(&self) -> &'static str {
        match self {
            TracePhase::Init => "init",
            TracePhase::Dp => "dp",
            TracePhase::Oracle => "oracle",
            TracePhase::Grover => "grover",
        }
    }
}

impl fmt::Display for TracePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class totals and the strongest valid state at one pipeline step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub step: usize,
    pub phase: TracePhase,
    pub p_valid: f64,
    pub p_regular: f64,
    pub p_tail: f64,
    pub p_best_valid: f64,
    pub best_valid_index: u64,
}

/// Trace of a full run; `distributions` is populated only at
/// [`TraceDetail::Full`] and holds the per-basis-state probabilities
/// aligned with `records`.
#[derive(Debug, Clone, Default)]
pub struct IterationTrace {
    pub records: Vec<TraceRecord>,
    pub distributions: Option<Vec<Vec<f64>>>,
}

/// How much to capture per step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceDetail {
    #[default]
    ClassTotals,
    Full,
}

/// Probability totals of the three state classes.
///
/// `valid` sums the `(c, 0)` states with `f(c) = 0`, `regular` the
/// `(c, f(c))` states with `f(c) != 0`, and `tail` everything else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassTotals {
    pub valid: f64,
    pub regular: f64,
    pub tail: f64,
    pub p_best_valid: f64,
    pub best_valid_index: u64,
}

/// Classify every basis state of `state` under `oracle`.
///
/// The sums are combined along a fixed tree over control blocks, so the
/// result is identical no matter how the scan is partitioned.
pub fn classify(state: &StateVector, oracle: &ValidityOracle) -> Result<ClassTotals> {
    let layout = state.layout();
    if oracle.width() != layout.n_work() || oracle.width() != layout.n_control() {
        return Err(Error::LayoutMismatch);
    }
    let amps = state.amplitudes();
    let work_dim = layout.work_dim() as usize;

    #[derive(Clone, Copy)]
    struct Partial {
        valid: f64,
        regular: f64,
        tail: f64,
        best: f64,
        best_index: u64,
        has_best: bool,
    }

    let leaf = |lo: usize, hi: usize| {
        let mut acc = Partial {
            valid: 0.0,
            regular: 0.0,
            tail: 0.0,
            best: 0.0,
            best_index: 0,
            has_best: false,
        };
        for c in lo..hi {
            let target = oracle.eval(c as u64).expect("oracle is total") as usize;
            let block = &amps[c * work_dim..(c + 1) * work_dim];
            let mut block_sum = 0.0;
            for a in block {
                block_sum += a.norm_sqr();
            }
            let target_p = block[target].norm_sqr();
            if target == 0 {
                acc.valid += target_p;
                if !acc.has_best || target_p > acc.best {
                    acc.best = target_p;
                    acc.best_index = c as u64;
                    acc.has_best = true;
                }
            } else {
                acc.regular += target_p;
            }
            acc.tail += block_sum - target_p;
        }
        acc
    };
    let combine = |a: Partial, b: Partial| {
        let (best, best_index, has_best) = match (a.has_best, b.has_best) {
            (true, true) if b.best > a.best => (b.best, b.best_index, true),
            (true, _) => (a.best, a.best_index, true),
            (false, true) => (b.best, b.best_index, true),
            (false, false) => (0.0, 0, false),
        };
        Partial {
            valid: a.valid + b.valid,
            regular: a.regular + b.regular,
            tail: a.tail + b.tail,
            best,
            best_index,
            has_best,
        }
    };

    let total = reduce::tree_reduce(layout.control_dim() as usize, &leaf, &combine)
        .expect("control register is non-empty");
    Ok(ClassTotals {
        valid: total.valid,
        regular: total.regular,
        tail: total.tail,
        p_best_valid: if total.has_best { total.best } else { 0.0 },
        best_valid_index: total.best_index,
    })
}

/// Default iteration count for both stages: `floor(2^(n/2))`.
pub fn default_iterations(n: u32) -> u64 {
    (1u64 << n).isqrt()
}

/// Entangling stage: one Hadamard layer, then `m` rounds of the diagonal
/// phase flip followed by the inversion about the mean. Expects the zero
/// state. The probability left on the paired subspace afterwards follows
/// the two-level form `sin^2((2m+1) asin(2^(-n/2)))`.
pub fn prepare_entangled(
    state: &mut StateVector,
    m: u64,
    ledger: &mut QueryLedger,
) -> Result<()> {
    state.hadamard_all();
    for _ in 0..m {
        state.phase_diagonal();
        ledger.phase_diagonal += 1;
        state.diffuse();
        ledger.diffusion += 1;
    }
    Ok(())
}

/// Two-level rotation prediction: probability of the marked subspace after
/// `iterations` amplification rounds starting from overlap `overlap`.
pub fn two_level_probability(overlap: f64, iterations: u64) -> Result<f64> {
    if !(overlap > 0.0 && overlap <= 1.0) {
        return Err(Error::OverlapRange { got: overlap });
    }
    let angle = overlap.asin();
    Ok(((2 * iterations + 1) as f64 * angle).sin().powi(2))
}

/// Full-run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Qubits per register.
    pub n: u32,
    pub oracle: OracleSpec,
    /// Entangling rounds; defaults to `floor(2^(n/2))`.
    pub m: Option<u64>,
    /// Amplification rounds; defaults to `floor(2^(n/2))`.
    pub t: Option<u64>,
    pub detail: TraceDetail,
    /// Seed used when sampling measurements from the final state.
    pub sample_seed: u64,
    /// Cap on the total qubit count.
    pub max_total_qubits: u32,
}

impl RunConfig {
    pub fn new(n: u32, oracle: OracleSpec) -> Self {
        Self {
            n,
            oracle,
            m: None,
            t: None,
            detail: TraceDetail::ClassTotals,
            sample_seed: 0,
            max_total_qubits: DEFAULT_MAX_TOTAL_QUBITS,
        }
    }

    pub fn entangling_rounds(&self) -> u64 {
        self.m.unwrap_or_else(|| default_iterations(self.n))
    }

    pub fn amplification_rounds(&self) -> u64 {
        self.t.unwrap_or_else(|| default_iterations(self.n))
    }
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub state: StateVector,
    pub trace: IterationTrace,
    pub ledger: QueryLedger,
    pub oracle: ValidityOracle,
    pub m: u64,
    pub t: u64,
}

impl SearchOutcome {
    /// Record with the highest valid-class probability in the amplification
    /// stage (falls back to the last record when the stage is empty).
    pub fn peak(&self) -> &TraceRecord {
        self.trace
            .records
            .iter()
            .filter(|r| r.phase == TracePhase::Grover)
            .max_by(|a, b| a.p_valid.total_cmp(&b.p_valid))
            .unwrap_or_else(|| self.trace.records.last().expect("trace is never empty"))
    }

    /// Control indices whose final work-zero probability exceeds a uniform
    /// control slice, `P(c, 0) > 2^(-n)`.
    pub fn amplified_controls(&self) -> Vec<u64> {
        let layout = self.state.layout();
        let threshold = 1.0 / layout.control_dim() as f64;
        (0..layout.control_dim())
            .filter(|&c| {
                self.state
                    .probability(c, 0)
                    .expect("index in range")
                    > threshold
            })
            .collect()
    }
}

/// Run the full pipeline: Hadamard init, `m` entangling rounds, one oracle
/// query, then `t` amplification rounds of the work-zero phase flip followed
/// by the reflection about the post-oracle snapshot. A trace record is
/// captured after initialization, after every entangling round, after the
/// oracle, and after every amplification round.
pub fn run_search(config: &RunConfig) -> Result<SearchOutcome> {
    let layout = RegisterLayout::square_with_capacity(config.n, config.max_total_qubits)?;
    let oracle = ValidityOracle::from_spec(&config.oracle, config.n)?;
    let m = config.entangling_rounds();
    let t = config.amplification_rounds();

    let mut state = StateVector::zero(layout);
    let mut ledger = QueryLedger::default();
    let mut trace = IterationTrace {
        records: Vec::with_capacity((m + t + 2) as usize),
        distributions: match config.detail {
            TraceDetail::ClassTotals => None,
            TraceDetail::Full => Some(Vec::with_capacity((m + t + 2) as usize)),
        },
    };
    let mut step = 0usize;

    let record =
        |state: &StateVector, trace: &mut IterationTrace, step: &mut usize, phase: TracePhase| -> Result<()> {
            let totals = classify(state, &oracle)?;
            trace.records.push(TraceRecord {
                step: *step,
                phase,
                p_valid: totals.valid,
                p_regular: totals.regular,
                p_tail: totals.tail,
                p_best_valid: totals.p_best_valid,
                best_valid_index: totals.best_valid_index,
            });
            if let Some(dists) = trace.distributions.as_mut() {
                dists.push(state.probabilities());
            }
            *step += 1;
            Ok(())
        };

    state.hadamard_all();
    record(&state, &mut trace, &mut step, TracePhase::Init)?;

    for _ in 0..m {
        state.phase_diagonal();
        ledger.phase_diagonal += 1;
        state.diffuse();
        ledger.diffusion += 1;
        record(&state, &mut trace, &mut step, TracePhase::Dp)?;
    }

    state.apply_oracle(&oracle)?;
    ledger.oracle += 1;
    record(&state, &mut trace, &mut step, TracePhase::Oracle)?;

    // The reflection axis stays fixed at the post-oracle snapshot.
    let snapshot = state.clone();
    for _ in 0..t {
        state.phase_work_zero();
        ledger.phase_work_zero += 1;
        state.reflect_about(&snapshot)?;
        ledger.reflection += 1;
        record(&state, &mut trace, &mut step, TracePhase::Grover)?;
    }

    Ok(SearchOutcome {
        state,
        trace,
        ledger,
        oracle,
        m,
        t,
    })
}

/// Draw `shots` measurement outcomes `(control, work)` from the state's
/// probability distribution. Deterministic given the seed.
pub fn sample_measurements(
    state: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<(u64, u64), u64>> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    let layout = state.layout();
    let mut cumulative = Vec::with_capacity(state.amplitudes().len());
    let mut acc = 0.0f64;
    for a in state.amplitudes() {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let total = acc;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for _ in 0..shots {
        let r: f64 = rng.random::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c <= r)
            .min(cumulative.len() - 1);
        *histogram.entry(layout.split(idx)).or_insert(0) += 1;
    }
    Ok(histogram)
}

/// Comparison of the recorded phase-gate queries against the search bound
/// `2^(n/2 + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityReport {
    pub phase_queries: u64,
    pub bound: f64,
    pub within_bound: bool,
}

impl fmt::Display for ComplexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phase queries {} vs bound 2^(n/2+1) = {:.2} -> {}",
            self.phase_queries,
            self.bound,
            if self.within_bound {
                "within bound"
            } else {
                "EXCEEDS bound"
            }
        )
    }
}

/// Compare a ledger's phase-gate query count against `2^(n/2 + 1)`.
pub fn verify_complexity(ledger: &QueryLedger, n: u32) -> ComplexityReport {
    let phase_queries = ledger.phase_queries();
    let bound = 2f64.powf(n as f64 / 2.0 + 1.0);
    ComplexityReport {
        phase_queries,
        bound,
        within_bound: phase_queries as f64 <= bound,
    }
}
