//! Searching `P(r, n, k, r-1, 1)` with `2 < k <= n` for trivial groups.
//!
//! Instances that are not perfect are skipped; the rest go through
//! [`certify_trivial`], which enumerates cosets when no statement settles
//! triviality.

use super::{run_by_n, Partial, SearchConfig, SearchReport};
use crate::classify::classify;
use crate::cosetenum::{certify_trivial, EnumerationOptions, TrivialityCertificate};
use crate::params::PrishchepovParams;

pub const DEFAULT_R_MIN: u64 = 4;
pub const DEFAULT_R_MAX: u64 = 12;

fn search_r(part: &mut Partial, n: u64, r: u64, opts: &EnumerationOptions, prefix: &str) {
    for k in 3..=n {
        let p = PrishchepovParams::new(r, n, k, r - 1, 1).expect("valid");
        part.checked += 1;
        if !classify(&p.params()).perfect {
            part.count(&format!("{prefix}skipped-not-perfect"), 1);
            continue;
        }
        match certify_trivial(&p, opts) {
            TrivialityCertificate::Trivial { by } => {
                part.push(&format!("{prefix}trivial"), p.params());
                part.hit(by.tag());
            }
            TrivialityCertificate::Nontrivial { by, .. } => {
                part.count(&format!("{prefix}nontrivial"), 1);
                part.hit(by.tag());
            }
            TrivialityCertificate::Unknown { .. } => part.push(&format!("{prefix}unknown"), p.params()),
        }
    }
}

/// Trivial instances with `r in [r_min, r_max]` (defaults 4 and 12) are
/// reported as counterexamples. A separate `r = 3` pass fills the lists
/// `r3-trivial` and `r3-unknown`; instances that enumeration could not
/// settle go to `unknown`.
pub fn search_trivial_instances(cfg: &SearchConfig) -> SearchReport {
    let r_lo = cfg.r_min.unwrap_or(DEFAULT_R_MIN).max(2);
    let r_hi = cfg.r_max.unwrap_or(DEFAULT_R_MAX);
    let opts = EnumerationOptions {
        max_cosets: cfg.max_cosets,
        seed: cfg.seed,
        lookahead: cfg.lookahead,
    };
    let ranges = format!(
        "n in [{}, {}], 2 < k <= n, r in [{r_lo}, {r_hi}] and separately r = 3; coset budget {}",
        cfg.n_min.max(3),
        cfg.n_max,
        cfg.max_cosets
    );
    let mut report = run_by_n(cfg, "no-trivial-instances", ranges, |n| {
        let mut part = Partial::default();
        search_r(&mut part, n, 3, &opts, "r3-");
        for r in r_lo..=r_hi {
            search_r(&mut part, n, r, &opts, "");
        }
        part.counterexamples = part.lists.get("trivial").cloned().unwrap_or_default();
        part
    });
    report.verified = report.counterexamples.is_empty();
    report
}
