//! Timing edge extraction across worker counts.

use std::fmt::Write as _;
use std::time::Instant;

use crate::edges::EdgeSet;
use crate::image::BinaryImage;
use crate::parallel::Workers;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    /// Requested worker count.
    pub workers: usize,
    pub median_ns: u128,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub width: u32,
    pub height: u32,
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
}

/// Times `extract_edges` `repetitions` times per worker count and checks
/// every result against a single-worker run.
pub fn bench(
    img: &BinaryImage,
    worker_counts: &[usize],
    repetitions: usize,
) -> Result<BenchReport, Error> {
    assert!(!worker_counts.is_empty(), "no worker counts given");
    assert!(repetitions > 0, "repetitions must be positive");

    let reference = Workers::sequential().extract_edges(img);
    let mut rows = Vec::with_capacity(worker_counts.len());
    for &n in worker_counts {
        let workers = Workers::new(n)?;
        let mut times = Vec::with_capacity(repetitions);
        let mut last: Option<EdgeSet> = None;
        for _ in 0..repetitions {
            let start = Instant::now();
            let es = workers.extract_edges(img);
            times.push(start.elapsed().as_nanos());
            last = Some(es);
        }
        if last.as_ref() != Some(&reference) {
            return Err(Error::BenchMismatch { workers: n });
        }
        rows.push(BenchRow {
            workers: n,
            median_ns: median(&mut times),
            edges: reference.count(),
        });
    }
    Ok(BenchReport {
        width: img.width(),
        height: img.height(),
        repetitions,
        rows,
    })
}

/// Lower median.
pub fn median(values: &mut [u128]) -> u128 {
    values.sort_unstable();
    values[(values.len() - 1) / 2]
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("workers,median_ns,edges\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.workers, r.median_ns, r.edges);
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "edge extraction, {}x{} image, median of {} runs\n",
            self.width, self.height, self.repetitions
        );
        let _ = writeln!(out, "{:>8} {:>14} {:>12} {:>8}", "workers", "median_ms", "edges", "speedup");
        let base = self.rows.first().map_or(1, |r| r.median_ns.max(1)) as f64;
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>8} {:>14.3} {:>12} {:>7.2}x",
                r.workers,
                r.median_ns as f64 / 1e6,
                r.edges,
                base / r.median_ns.max(1) as f64
            );
        }
        out
    }
}
