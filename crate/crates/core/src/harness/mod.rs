//! Parameter-grid searches and the reports they emit.

mod conjecture;
pub mod grid;
mod sweeps;
mod trivial_search;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::cosetenum::DEFAULT_MAX_COSETS;
use crate::error::{Error, Result};
use crate::params::TypeFParams;

pub use conjecture::{verify_type_z_tilde_conjecture, PERFECT_LIST_N_MAX};
pub use sweeps::{
    h_family_sweep, named_family_sweep, polynomial_identity_sweep, scaling_sweep, sieradski_sweep, soundness_sweep,
    spectral_sweep, RESIDUAL_TOLERANCE, SPECTRAL_TOLERANCE,
};
pub use trivial_search::{search_trivial_instances, DEFAULT_R_MAX, DEFAULT_R_MIN};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "PRISHCHEPOV_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n_min: u64,
    pub n_max: u64,
    /// Bounds on `r`; each search documents its default.
    pub r_min: Option<u64>,
    pub r_max: Option<u64>,
    /// Worker count; `None` reads [`JOBS_ENV`], then the machine's parallelism.
    pub jobs: Option<usize>,
    pub execution: Execution,
    /// Coset-enumeration strategy seed.
    pub seed: u64,
    pub max_cosets: usize,
    pub lookahead: bool,
}

impl SearchConfig {
    pub fn new(n_max: u64) -> Self {
        SearchConfig {
            n_min: 2,
            n_max,
            r_min: None,
            r_max: None,
            jobs: None,
            execution: Execution::Parallel,
            seed: 0,
            max_cosets: DEFAULT_MAX_COSETS,
            lookahead: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 || self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::InvalidParams(format!(
                "need 2 <= n_min <= n_max, got {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.r_min == Some(0) || self.r_max == Some(0) || self.max_cosets == 0 {
            return Err(Error::InvalidParams("bounds must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidParams("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn worker_count(&self) -> usize {
        self.jobs
            .or_else(|| std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok()))
            .filter(|&j| j > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    fn ns(&self) -> Vec<u64> {
        (self.n_min..=self.n_max).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub schema: u32,
    pub statement: String,
    /// The ranges quantified over.
    pub ranges: String,
    pub checked: u64,
    /// Instances violating the statement; empty exactly when `verified`.
    pub counterexamples: Vec<TypeFParams>,
    /// Further named instance lists, such as inconclusive cases.
    pub lists: BTreeMap<String, Vec<TypeFParams>>,
    pub counts: BTreeMap<String, u64>,
    pub theorem_hits: BTreeMap<String, u64>,
    /// Worst observed numerical errors.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub measures: BTreeMap<String, f64>,
    pub wall_ms: u128,
    pub verified: bool,
}

impl SearchReport {
    fn new(statement: &str, ranges: String) -> Self {
        SearchReport {
            schema: SCHEMA_VERSION,
            statement: statement.into(),
            ranges,
            checked: 0,
            counterexamples: Vec::new(),
            lists: BTreeMap::new(),
            counts: BTreeMap::new(),
            theorem_hits: BTreeMap::new(),
            measures: BTreeMap::new(),
            wall_ms: 0,
            verified: false,
        }
    }

    fn finish(mut self, started: Instant) -> Self {
        let key = |p: &TypeFParams| (p.n, p.r, p.s, p.k, p.q);
        self.counterexamples.sort_by_key(key);
        self.counterexamples.dedup();
        for v in self.lists.values_mut() {
            v.sort_by_key(key);
            v.dedup();
        }
        self.verified = self.counterexamples.is_empty();
        self.wall_ms = started.elapsed().as_millis();
        self
    }

    fn absorb(&mut self, part: Partial) {
        self.checked += part.checked;
        self.counterexamples.extend(part.counterexamples);
        for (k, v) in part.lists {
            self.lists.entry(k).or_default().extend(v);
        }
        for (k, v) in part.counts {
            *self.counts.entry(k).or_default() += v;
        }
        for (k, v) in part.theorem_hits {
            *self.theorem_hits.entry(k).or_default() += v;
        }
        for (k, v) in part.measures {
            let e = self.measures.entry(k).or_insert(0.0);
            *e = e.max(v);
        }
    }

    pub fn list(&self, name: &str) -> &[TypeFParams] {
        self.lists.get(name).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, name: &str) -> u64 {
        self.counts.get(name).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per listed instance, counterexamples first.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Numeric(format!("csv output failed: {e}"));
        out.write_record(["schema", "statement", "list", "r", "n", "k", "s", "q", "epsilon"])
            .map_err(io)?;
        let lists = std::iter::once(("counterexamples", &self.counterexamples))
            .chain(self.lists.iter().map(|(k, v)| (k.as_str(), v)));
        for (name, items) in lists {
            for p in items {
                out.write_record([
                    SCHEMA_VERSION.to_string(),
                    self.statement.clone(),
                    name.to_string(),
                    p.r.to_string(),
                    p.n.to_string(),
                    p.k.to_string(),
                    p.s.to_string(),
                    p.q.to_string(),
                    p.epsilon.as_i64().to_string(),
                ])
                .map_err(io)?;
            }
        }
        out.flush().map_err(|e| Error::Numeric(format!("csv output failed: {e}")))
    }
}

/// Per-worker results merged into a [`SearchReport`].
#[derive(Debug, Default)]
struct Partial {
    checked: u64,
    counterexamples: Vec<TypeFParams>,
    lists: BTreeMap<String, Vec<TypeFParams>>,
    counts: BTreeMap<String, u64>,
    theorem_hits: BTreeMap<String, u64>,
    measures: BTreeMap<String, f64>,
}

impl Partial {
    fn measure(&mut self, name: &str, value: f64) {
        let e = self.measures.entry(name.to_string()).or_insert(0.0);
        *e = e.max(value);
    }

    fn count(&mut self, name: &str, by: u64) {
        *self.counts.entry(name.to_string()).or_default() += by;
    }

    fn hit(&mut self, name: &str) {
        *self.theorem_hits.entry(name.to_string()).or_default() += 1;
    }

    fn push(&mut self, list: &str, p: TypeFParams) {
        self.lists.entry(list.to_string()).or_default().push(p);
    }
}

/// Maps `f` over `items`, in parallel when enabled, returning results in
/// input order.
fn map_ordered<I, T, F>(cfg: &SearchConfig, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.execution == Execution::Parallel {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.worker_count())
            .build()
            .expect("thread pool");
        return pool.install(|| items.into_par_iter().map(f).collect());
    }
    let _ = cfg;
    items.into_iter().map(f).collect()
}

/// Runs `work` for every `n` in range, largest first so long jobs start
/// early, and merges the per-`n` results in increasing `n`.
fn run_by_n<F>(cfg: &SearchConfig, statement: &str, ranges: String, work: F) -> SearchReport
where
    F: Fn(u64) -> Partial + Sync + Send,
{
    let started = Instant::now();
    let mut ns = cfg.ns();
    ns.reverse();
    let mut parts: Vec<(u64, Partial)> = map_ordered(cfg, ns, |n| (n, work(n)));
    parts.sort_by_key(|(n, _)| *n);
    let mut report = SearchReport::new(statement, ranges);
    for (_, part) in parts {
        report.absorb(part);
    }
    report.finish(started)
}
