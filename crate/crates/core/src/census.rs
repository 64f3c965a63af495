//! Exhaustive counts of strongly extensive and Cantor digraphs on `[n]`.
//!
//! Digraphs are numbered by a counter whose bit `(u-1)*n + (v-1)` is the arrow
//! `(u, v)`. Work is split into contiguous counter ranges, one per job.

use std::fmt;
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::analysis::{is_cantor, is_strongly_extensive, CantorMethod};
use crate::digraph::Digraph;

pub const DEFAULT_MAX_N: usize = 4;
pub const HARD_MAX_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {n} is outside 1..={limit}")]
    GuardExceeded { n: usize, limit: usize },
    #[error("jobs must be positive")]
    NoJobs,
}

fn check_n(n: usize, max_n: usize) -> Result<(), CensusError> {
    let limit = max_n.min(HARD_MAX_N);
    if n == 0 || n > limit {
        return Err(CensusError::GuardExceeded { n, limit });
    }
    Ok(())
}

/// `2^(n^2)`.
pub fn digraph_count(n: usize) -> u64 {
    1 << (n * n)
}

/// All labeled digraphs on `[n]` in counter order.
pub fn enumerate_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>, CensusError> {
    enumerate_digraphs_up_to(n, DEFAULT_MAX_N)
}

/// [`enumerate_digraphs`] with a raised guard (at most 5).
pub fn enumerate_digraphs_up_to(
    n: usize,
    max_n: usize,
) -> Result<impl Iterator<Item = Digraph>, CensusError> {
    check_n(n, max_n)?;
    Ok((0..digraph_count(n)).map(move |code| Digraph::from_code(n, code).expect("n >= 1")))
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub jobs: usize,
    pub method: CantorMethod,
    pub max_n: usize,
    /// Keep every non-Cantor digraph.
    pub list_witnesses: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            jobs: 1,
            method: CantorMethod::Semantic,
            max_n: DEFAULT_MAX_N,
            list_witnesses: false,
        }
    }
}

impl CensusConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        CensusConfig {
            jobs,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusRow {
    pub n: usize,
    pub total: u64,
    /// `e_n`
    pub strongly_extensive: u64,
    /// `c_n`
    pub cantor: u64,
    /// Strongly extensive digraphs that are not Cantor.
    pub violations: Vec<u64>,
    /// Counter values of the non-Cantor digraphs, when requested.
    pub witnesses: Vec<u64>,
    pub elapsed: Duration,
}

impl CensusRow {
    /// `(total, e_n, c_n)`.
    pub fn counts(&self) -> (u64, u64, u64) {
        (self.total, self.strongly_extensive, self.cantor)
    }

    pub fn witness_digraphs(&self) -> impl Iterator<Item = Digraph> + '_ {
        self.witnesses
            .iter()
            .map(|&c| Digraph::from_code(self.n, c).expect("n >= 1"))
    }
}

/// Tab-separated `n total e_n c_n elapsed_ms`.
impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.n,
            self.total,
            self.strongly_extensive,
            self.cantor,
            self.elapsed.as_millis()
        )
    }
}

#[derive(Default)]
struct Partial {
    strongly_extensive: u64,
    cantor: u64,
    violations: Vec<u64>,
    witnesses: Vec<u64>,
}

fn scan(n: usize, range: std::ops::Range<u64>, config: &CensusConfig) -> Partial {
    let mut p = Partial::default();
    for code in range {
        let d = Digraph::from_code(n, code).expect("n >= 1");
        let se = is_strongly_extensive(&d);
        let cantor = is_cantor(&d, config.method);
        p.strongly_extensive += se as u64;
        p.cantor += cantor as u64;
        if se && !cantor {
            p.violations.push(code);
        }
        if !cantor && config.list_witnesses {
            p.witnesses.push(code);
        }
    }
    p
}

/// Splits `0..total` into `jobs` contiguous ranges of near-equal size.
pub fn partition(total: u64, jobs: usize) -> Vec<std::ops::Range<u64>> {
    let jobs = jobs as u64;
    (0..jobs)
        .map(|j| total * j / jobs..total * (j + 1) / jobs)
        .filter(|r| !r.is_empty())
        .collect()
}

pub fn census(n: usize, jobs: usize) -> Result<CensusRow, CensusError> {
    census_with(n, &CensusConfig::with_jobs(jobs))
}

pub fn census_with(n: usize, config: &CensusConfig) -> Result<CensusRow, CensusError> {
    check_n(n, config.max_n)?;
    if config.jobs == 0 {
        return Err(CensusError::NoJobs);
    }
    let start = Instant::now();
    let total = digraph_count(n);
    let parts: Vec<Partial> = thread::scope(|s| {
        let handles: Vec<_> = partition(total, config.jobs)
            .into_iter()
            .map(|r| s.spawn(move || scan(n, r, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut row = CensusRow {
        n,
        total,
        strongly_extensive: 0,
        cantor: 0,
        violations: Vec::new(),
        witnesses: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for p in parts {
        row.strongly_extensive += p.strongly_extensive;
        row.cantor += p.cantor;
        row.violations.extend(p.violations);
        row.witnesses.extend(p.witnesses);
    }
    row.elapsed = start.elapsed();
    Ok(row)
}
