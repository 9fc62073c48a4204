//! Seeded benchmark sweeps emitted as CSV.
//!
//! Columns, in order: `spec, rep, n, seed, model, alpha, beta, noise, lambda,
//! slot_count, colors, feasible, opt_fixed, opt_pc, ratio_fixed, ratio_pc,
//! wall_ms`. Empty cells mean the value was not computed: oracle columns are
//! empty above the oracle cap (and `opt_pc` whenever `noise > 0`), `wall_ms`
//! is empty when timing is off.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorSpec};
use crate::geometry::ModelKind;
use crate::oracle::{optimal_schedule_fixed, optimal_schedule_pc};
use crate::report::verify;
use crate::scheduler::schedule;

pub const CSV_HEADER: [&str; 17] = [
    "spec",
    "rep",
    "n",
    "seed",
    "model",
    "alpha",
    "beta",
    "noise",
    "lambda",
    "slot_count",
    "colors",
    "feasible",
    "opt_fixed",
    "opt_pc",
    "ratio_fixed",
    "ratio_pc",
    "wall_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub spec: usize,
    pub rep: usize,
    pub n: usize,
    pub seed: u64,
    pub model: ModelKind,
    pub alpha: f64,
    pub beta: f64,
    pub noise: f64,
    pub lambda: f64,
    pub slot_count: usize,
    pub colors: usize,
    pub feasible: bool,
    pub opt_fixed: Option<usize>,
    pub opt_pc: Option<usize>,
    pub ratio_fixed: Option<f64>,
    pub ratio_pc: Option<f64>,
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchOptions {
    pub repetitions: usize,
    /// Largest `n` the oracles run on; `None` skips them.
    pub oracle_max_n: Option<usize>,
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { repetitions: 1, oracle_max_n: None, timing: true }
    }
}

/// Runs every spec `repetitions` times, repetition `r` using seed `seed + r`.
pub fn bench(specs: &[GeneratorSpec], opts: &BenchOptions) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(specs.len() * opts.repetitions);
    for (k, spec) in specs.iter().enumerate() {
        for rep in 0..opts.repetitions {
            let spec = spec.clone().with_seed(spec.seed.wrapping_add(rep as u64));
            rows.push(run_cell(k, rep, &spec, opts)?);
        }
    }
    Ok(rows)
}

fn run_cell(k: usize, rep: usize, spec: &GeneratorSpec, opts: &BenchOptions) -> Result<BenchRow> {
    let inst = generate(spec)?;
    let start = Instant::now();
    let (sched, trace) = schedule(&inst)?;
    let wall = start.elapsed().as_secs_f64() * 1e3;
    let report = verify(&inst, &sched)?;

    let in_cap = opts.oracle_max_n.is_some_and(|m| inst.len() <= m);
    let (mut opt_fixed, mut opt_pc) = (None, None);
    if let Some(max) = opts.oracle_max_n.filter(|_| in_cap) {
        opt_fixed = Some(optimal_schedule_fixed(&inst, &sched.power, max)?);
        if inst.noise == 0.0 {
            opt_pc = Some(optimal_schedule_pc(&inst, max)?);
        }
    }
    let ratio = |opt: usize| report.slot_count as f64 / opt as f64;
    Ok(BenchRow {
        spec: k,
        rep,
        n: inst.len(),
        seed: spec.seed,
        model: inst.model,
        alpha: inst.alpha,
        beta: inst.beta,
        noise: inst.noise,
        lambda: report.lambda,
        slot_count: report.slot_count,
        colors: trace.colors,
        feasible: report.feasible,
        opt_fixed,
        opt_pc,
        ratio_fixed: opt_fixed.map(ratio),
        ratio_pc: opt_pc.map(ratio),
        wall_ms: opts.timing.then_some(wall),
    })
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv output: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::InvalidParameter(format!("csv output: {e}")))?;
    Ok(())
}

pub fn to_csv_string(rows: &[BenchRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::LengthDist;

    fn spec(n: usize) -> GeneratorSpec {
        GeneratorSpec::new(n, 11, 30.0, LengthDist::Uniform { min: 1.0, max: 3.0 })
    }

    #[test]
    fn empty_is_header_only() {
        let text = to_csv_string(&bench(&[], &BenchOptions::default()).unwrap()).unwrap();
        assert_eq!(text, format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn header_matches_row_fields() {
        let rows = bench(&[spec(3)], &BenchOptions::default()).unwrap();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(&rows[0]).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    }

    #[test]
    fn oracle_ratios_at_least_one() {
        let opts = BenchOptions { repetitions: 3, oracle_max_n: Some(8), timing: false };
        let rows = bench(&[spec(8), spec(8).with_model(ModelKind::Bidirectional)], &opts).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert!(r.feasible);
            assert!(r.ratio_fixed.unwrap() >= 1.0 && r.ratio_pc.unwrap() >= 1.0, "{r:?}");
            assert!(r.opt_pc.unwrap() <= r.opt_fixed.unwrap());
        }
    }

    #[test]
    fn repeated_seed_repeats_row() {
        let opts = BenchOptions { repetitions: 1, oracle_max_n: Some(6), timing: false };
        let a = bench(&[spec(6)], &opts).unwrap();
        let b = bench(&[spec(6)], &opts).unwrap();
        assert_eq!(to_csv_string(&a).unwrap(), to_csv_string(&b).unwrap());
    }

    #[test]
    fn oracle_skipped_above_cap() {
        let opts = BenchOptions { repetitions: 1, oracle_max_n: Some(4), timing: true };
        let rows = bench(&[spec(6)], &opts).unwrap();
        assert_eq!(rows[0].opt_fixed, None);
        assert!(rows[0].wall_ms.is_some());
    }
}
