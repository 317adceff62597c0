//! Trace serialization, atomic file writes, histogram printing, and the
//! timing harness behind `bench`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use dvgrover::{
    run_search, IterationTrace, OracleSpec, RegisterLayout, RunConfig, StateVector, ValidityOracle,
};

use crate::CliError;

/// CSV trace: fixed schema, `%.12e` floats.
fn render_trace_csv(trace: &IterationTrace) -> String {
    let mut out = String::from("step,phase,p_valid,p_regular,p_tail,p_best_valid,best_valid_index\n");
    for r in &trace.records {
        out.push_str(&format!(
            "{},{},{:.12e},{:.12e},{:.12e},{:.12e},{}\n",
            r.step, r.phase, r.p_valid, r.p_regular, r.p_tail, r.p_best_valid, r.best_valid_index
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRecord {
    step: usize,
    phase: &'static str,
    p_valid: f64,
    p_regular: f64,
    p_tail: f64,
    p_best_valid: f64,
    best_valid_index: u64,
}

#[derive(Serialize)]
struct JsonTrace<'a> {
    records: Vec<JsonRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distributions: Option<&'a Vec<Vec<f64>>>,
}

fn render_trace_json(trace: &IterationTrace) -> String {
    let doc = JsonTrace {
        records: trace
            .records
            .iter()
            .map(|r| JsonRecord {
                step: r.step,
                phase: r.phase.as_str(),
                p_valid: r.p_valid,
                p_regular: r.p_regular,
                p_tail: r.p_tail,
                p_best_valid: r.p_best_valid,
                best_valid_index: r.best_valid_index,
            })
            .collect(),
        distributions: trace.distributions.as_ref(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("trace serializes");
    text.push('\n');
    text
}

pub fn render_trace(trace: &IterationTrace, format: &str) -> String {
    match format {
        "json" => render_trace_json(trace),
        _ => render_trace_csv(trace),
    }
}

/// Per-state probabilities as `step,index,probability` rows.
pub fn render_distributions_csv(trace: &IterationTrace) -> String {
    let mut out = String::from("step,index,probability\n");
    if let Some(dists) = &trace.distributions {
        for (record, dist) in trace.records.iter().zip(dists) {
            for (index, p) in dist.iter().enumerate() {
                out.push_str(&format!("{},{},{:.12e}\n", record.step, index, p));
            }
        }
    }
    out
}

/// Write through a sibling temp file and rename, so a failed run never
/// leaves a partial trace behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn print_histogram(histogram: &BTreeMap<(u64, u64), u64>, shots: u64, seed: u64) {
    println!("histogram (shots = {shots}, seed = {seed}):");
    let mut entries: Vec<(&(u64, u64), &u64)> = histogram.iter().collect();
    entries.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let shown = entries.len().min(20);
    for ((c, w), count) in entries.iter().take(shown) {
        println!("  ({c},{w})  {count}");
    }
    if entries.len() > shown {
        println!("  ... {} more outcomes", entries.len() - shown);
    }
}

#[derive(Serialize)]
pub struct GateTiming {
    pub min_ns: u64,
    pub median_ns: u64,
}

#[derive(Serialize)]
pub struct BenchReport {
    pub n: u32,
    pub dim: usize,
    pub reps: u32,
    pub gates: BTreeMap<&'static str, GateTiming>,
    pub pipeline: GateTiming,
}

fn summarize(mut samples: Vec<f64>) -> GateTiming {
    samples.sort_by(f64::total_cmp);
    GateTiming {
        min_ns: samples[0] as u64,
        median_ns: samples[samples.len() / 2] as u64,
    }
}

/// Time each gate kind and the full pipeline at register width `n`.
pub fn run_bench(n: u32, reps: u32, max_total_qubits: u32) -> Result<BenchReport, CliError> {
    let layout = RegisterLayout::square_with_capacity(n, max_total_qubits)?;
    let dim = layout.dim();
    let pairs: Vec<(u64, u64)> = (0..layout.control_dim()).map(|c| (c, c ^ 1)).collect();
    let oracle = ValidityOracle::from_pairs(&pairs, n)?;
    let mut state = StateVector::zero(layout);
    state.hadamard_all();
    let reference = state.clone();

    // repeat cheap gates enough times per sample to get off the timer floor
    let inner = ((1usize << 22) / dim).max(1) as u32;
    let sample = |body: &mut dyn FnMut()| -> Vec<f64> {
        body(); // warm up
        (0..reps)
            .map(|_| {
                let t0 = Instant::now();
                for _ in 0..inner {
                    body();
                }
                t0.elapsed().as_nanos() as f64 / f64::from(inner)
            })
            .collect()
    };

    let mut gates = BTreeMap::new();
    gates.insert(
        "phase_diagonal",
        summarize(sample(&mut || {
            state.phase_diagonal();
        })),
    );
    gates.insert(
        "diffusion",
        summarize(sample(&mut || {
            state.diffuse();
        })),
    );
    gates.insert(
        "phase_work_zero",
        summarize(sample(&mut || {
            state.phase_work_zero();
        })),
    );
    gates.insert(
        "reflection",
        summarize(sample(&mut || {
            state.reflect_about(&reference).unwrap();
        })),
    );
    gates.insert(
        "oracle",
        summarize(sample(&mut || {
            state.apply_oracle(&oracle).unwrap();
        })),
    );

    let mut config = RunConfig::new(n, OracleSpec::Toy);
    config.max_total_qubits = max_total_qubits;
    let pipeline = summarize(
        (0..reps)
            .map(|_| {
                let t0 = Instant::now();
                run_search(&config).expect("bench run succeeds");
                t0.elapsed().as_nanos() as f64
            })
            .collect(),
    );

    Ok(BenchReport {
        n,
        dim,
        reps,
        gates,
        pipeline,
    })
}

pub fn print_bench(report: &BenchReport, format: &str) {
    if format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
        return;
    }
    println!(
        "bench  n = {}  dim = {}  reps = {}",
        report.n, report.dim, report.reps
    );
    println!("{:<16} {:>12} {:>12}", "kernel", "min_ns", "median_ns");
    for (name, timing) in &report.gates {
        println!("{:<16} {:>12} {:>12}", name, timing.min_ns, timing.median_ns);
    }
    println!(
        "{:<16} {:>12} {:>12}",
        "pipeline", report.pipeline.min_ns, report.pipeline.median_ns
    );
}
