//! Timing harness over generated knapsack instances.
//!
//! For each instance the harness times the generating-function build (`srf`),
//! records the lattice-point count (`latpoints`) and the number of rational
//! function terms (`nosrf`), times the digging solver (`mo-digging`), and
//! records the number of efficient points (`effic`) plus the instance wall
//! time (`total`). Times are whole milliseconds.

use super::knapsack::knapsack_instance;
use crate::genfun::{count, polytope_genfun};
use crate::exactmath::Int;
use crate::moilp::{digging_solve, MoilpError};
use num_traits::ToPrimitive;
use std::fmt::Write as _;
use std::time::Instant;

pub const BENCH_COLUMNS: [&str; 7] =
    ["problem", "srf", "latpoints", "nosrf", "mo-digging", "effic", "total"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub problem: String,
    pub srf_ms: u64,
    pub latpoints: Int,
    pub nosrf: usize,
    pub digging_ms: u64,
    pub effic: usize,
    pub total_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// Runs every `(n, instance)` pair; instance `i` of size `n` is the knapsack
/// instance for seed `seed + i`.
pub fn run_bench(sizes: &[usize], instances: usize, seed: u64) -> Result<BenchReport, MoilpError> {
    let mut rows = Vec::new();
    for &n in sizes {
        for i in 0..instances {
            let file = knapsack_instance(n, seed.wrapping_add(i as u64));
            let total_start = Instant::now();
            let srf_start = Instant::now();
            let g = polytope_genfun(file.problem.constraints())?;
            let srf_ms = srf_start.elapsed().as_millis() as u64;
            let latpoints = count(&g);
            let nosrf = g.terms.len();
            let digging_start = Instant::now();
            let pareto = digging_solve(&file.problem)?;
            let digging_ms = digging_start.elapsed().as_millis() as u64;
            rows.push(BenchRow {
                problem: format!("knap{n}-{i}"),
                srf_ms,
                latpoints,
                nosrf,
                digging_ms,
                effic: pareto.len(),
                total_ms: total_start.elapsed().as_millis() as u64,
            });
        }
    }
    Ok(BenchReport { rows })
}

/// Size prefix (`knap4` of `knap4-2`) used to group instance rows.
fn group_of(problem: &str) -> &str {
    problem.rsplit_once('-').map_or(problem, |(g, _)| g)
}

impl BenchReport {
    /// Instance rows plus one average row per size group.
    pub fn table(&self) -> String {
        let mut lines: Vec<[String; 7]> = Vec::new();
        let mut group: Vec<&BenchRow> = Vec::new();
        let flush = |group: &mut Vec<&BenchRow>, lines: &mut Vec<[String; 7]>| {
            let Some(first) = group.first() else { return };
            let label = format!("{} avg", group_of(&first.problem));
            let m = group.len() as f64;
            let avg = |f: f64| format!("{:.1}", f / m);
            let sum_u64 = |sel: fn(&BenchRow) -> u64| -> f64 {
                group.iter().map(|r| sel(r) as f64).sum()
            };
            lines.push([
                label,
                avg(sum_u64(|r| r.srf_ms)),
                avg(group
                    .iter()
                    .map(|r| r.latpoints.to_f64().expect("count fits in f64"))
                    .sum()),
                avg(sum_u64(|r| r.nosrf as u64)),
                avg(sum_u64(|r| r.digging_ms)),
                avg(sum_u64(|r| r.effic as u64)),
                avg(sum_u64(|r| r.total_ms)),
            ]);
            group.clear();
        };
        for row in &self.rows {
            if group.first().is_some_and(|f| group_of(&f.problem) != group_of(&row.problem)) {
                flush(&mut group, &mut lines);
            }
            lines.push([
                row.problem.clone(),
                row.srf_ms.to_string(),
                row.latpoints.to_string(),
                row.nosrf.to_string(),
                row.digging_ms.to_string(),
                row.effic.to_string(),
                row.total_ms.to_string(),
            ]);
            group.push(row);
        }
        flush(&mut group, &mut lines);
        let mut widths: Vec<usize> = BENCH_COLUMNS.iter().map(|c| c.len()).collect();
        for line in &lines {
            for (w, cell) in widths.iter_mut().zip(line) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for (i, col) in BENCH_COLUMNS.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            if i == 0 {
                let _ = write!(out, "{col:<width$}", width = widths[i]);
            } else {
                let _ = write!(out, "{col:>width$}", width = widths[i]);
            }
        }
        out.push('\n');
        for line in &lines {
            for (i, cell) in line.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                if i == 0 {
                    let _ = write!(out, "{cell:<width$}", width = widths[i]);
                } else {
                    let _ = write!(out, "{cell:>width$}", width = widths[i]);
                }
            }
            out.push('\n');
        }
        out
    }

    /// Instance rows only; averages are recomputed on display.
    pub fn to_csv(&self) -> String {
        let mut out = BENCH_COLUMNS.join(",");
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.problem, r.srf_ms, r.latpoints, r.nosrf, r.digging_ms, r.effic, r.total_ms
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<BenchReport, String> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or("missing header")?;
        if header.trim() != BENCH_COLUMNS.join(",") {
            return Err(format!("unexpected header {header:?}"));
        }
        let mut rows = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != 7 {
                return Err(format!("expected 7 fields: {line:?}"));
            }
            let num = |i: usize| -> Result<u64, String> {
                fields[i].parse().map_err(|_| format!("bad number {:?}", fields[i]))
            };
            rows.push(BenchRow {
                problem: fields[0].to_string(),
                srf_ms: num(1)?,
                latpoints: fields[2]
                    .parse()
                    .map_err(|_| format!("bad count {:?}", fields[2]))?,
                nosrf: num(3)? as usize,
                digging_ms: num(4)?,
                effic: num(5)? as usize,
                total_ms: num(6)?,
            });
        }
        Ok(BenchReport { rows })
    }
}
