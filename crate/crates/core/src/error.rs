use thiserror::Error;

/// Errors produced by the simulator and the disturbance-vector tooling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("register capacity exceeded: {requested} total qubits > limit {limit}")]
    Capacity { requested: u32, limit: u32 },

    #[error("control and work registers each need at least one qubit")]
    EmptyRegister,

    #[error("states have different register layouts")]
    LayoutMismatch,

    #[error("amplitude vector is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("basis index ({control}, {work}) out of range for the register layout")]
    IndexOutOfRange { control: u64, work: u64 },

    #[error("oracle output {value} for input {input} lies outside [0, 2^{width})")]
    OracleRange { input: u64, value: u64, width: u32 },

    #[error("oracle input {input} lies outside [0, 2^{width})")]
    OracleDomain { input: u64, width: u32 },

    #[error("duplicate oracle entry for input {input}")]
    DuplicateOracleEntry { input: u64 },

    #[error("oracle file line {line}: {message}")]
    OracleParse { line: usize, message: String },

    #[error("oracle file {path}: {source}")]
    OracleIo {
        path: String,
        source: std::io::Error,
    },

    #[error("table oracle requires a 5-qubit register, got {got}")]
    TableWidth { got: u32 },

    #[error("dense reference matrices are limited to {limit} total qubits, got {got}")]
    DenseLimit { got: u32, limit: u32 },

    #[error("diagonal block index {nu} out of range for a {width}-qubit register")]
    LambdaRange { nu: u64, width: u32 },

    #[error("invalid bit template: {reason}")]
    Template { reason: String },

    #[error("word {word} of the seed has bits outside the template positions")]
    SeedOutsideTemplate { word: usize },

    #[error("candidate index {index} out of range for a {bits}-bit encoding")]
    CandidateRange { index: u64, bits: u32 },

    #[error("overlap must lie in (0, 1], got {got}")]
    OverlapRange { got: f64 },

    #[error("measurement sampling needs at least one shot")]
    NoShots,
}

pub type Result<T> = std::result::Result<T, Error>;
