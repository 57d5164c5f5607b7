//! Range searches over one family, parallel over candidates with output in
//! ascending `n` whatever the number of workers.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{run_candidate, Candidate, Family, RunOptions, RunRecord, UsageError};
use curveprime::cm::CmContext;
use curveprime::supersingular::{prefilter_35, Prefilter};
use curveprime::HypothesisError;

/// Largest `max_n` accepted; beyond it single runs take hours.
pub const MAX_SEARCH_N: u64 = 100_000;

/// What to sweep. Fields not used by the family are ignored.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub family: Family,
    pub m: Option<u64>,
    pub p: Option<u64>,
    pub h: i64,
    pub f: String,
    pub min_n: Option<u64>,
    pub max_n: u64,
}

/// A candidate left out of the sweep, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub family: Family,
    pub params: BTreeMap<String, String>,
    pub skipped: String,
}

impl Skipped {
    fn new(c: &Candidate, why: String) -> Self {
        Skipped {
            family: c.family(),
            params: c.params(),
            skipped: why,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchItem {
    Run(RunRecord),
    Skipped(Skipped),
}

impl SearchItem {
    pub fn to_json(&self) -> String {
        match self {
            SearchItem::Run(r) => r.to_json(),
            SearchItem::Skipped(s) => serde_json::to_string(s).expect("serializes"),
        }
    }

    pub fn to_human(&self) -> String {
        match self {
            SearchItem::Run(r) => r.to_human(),
            SearchItem::Skipped(s) => {
                let params: Vec<String> = s.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{} {}  skipped: {}", s.family, params.join(" "), s.skipped)
            }
        }
    }
}

enum Planned {
    Run(Candidate),
    Skip(Candidate, String),
}

/// Totals over a finished search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchSummary {
    pub label: String,
    pub certified: Vec<u64>,
    pub composite: usize,
    pub not_certified: usize,
    pub skipped: usize,
    /// Certified prime but oracle composite, or the reverse.
    pub disagreements: Vec<u64>,
    /// Not certified although the oracle says prime.
    pub missed_primes: Vec<u64>,
}

impl fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.certified.iter().map(u64::to_string).collect();
        write!(
            f,
            "{}: certified n = {{{}}} ({} certified, {} composite, {} not certified, {} skipped)",
            self.label,
            list.join(", "),
            self.certified.len(),
            self.composite,
            self.not_certified,
            self.skipped
        )?;
        if !self.disagreements.is_empty() {
            write!(f, "; ORACLE DISAGREES at n = {:?}", self.disagreements)?;
        }
        if !self.missed_primes.is_empty() {
            write!(f, "; oracle-prime but not certified at n = {:?}", self.missed_primes)?;
        }
        Ok(())
    }
}

fn plan(spec: &SearchSpec) -> Result<(String, Vec<Planned>), UsageError> {
    if spec.max_n > MAX_SEARCH_N {
        return Err(UsageError(format!("--max-n above {MAX_SEARCH_N}")));
    }
    let bounded = |lo: u64| -> Result<std::ops::RangeInclusive<u64>, UsageError> {
        let lo = spec.min_n.unwrap_or(lo).max(lo);
        if lo > spec.max_n {
            return Err(UsageError(format!("empty range {lo}..={}", spec.max_n)));
        }
        Ok(lo..=spec.max_n)
    };
    match spec.family {
        Family::A => {
            let m = spec.m.ok_or_else(|| UsageError("search A needs --m".into()))?;
            if m % 2 == 0 {
                return Err(UsageError(format!("m must be odd, got {m}")));
            }
            let items = bounded(2)?
                .map(|n| match prefilter_35(m, n) {
                    Prefilter::DivisibleBy3 => Planned::Skip(Candidate::A { m, n }, "divisible by 3 (residue table)".into()),
                    Prefilter::DivisibleBy5 => Planned::Skip(Candidate::A { m, n }, "divisible by 5 (residue table)".into()),
                    Prefilter::Clean => Planned::Run(Candidate::A { m, n }),
                })
                .collect();
            Ok((format!("A m={m}"), items))
        }
        Family::S => {
            let p = spec.p.ok_or_else(|| UsageError("search S needs --p".into()))?;
            // Only n with 2^n > p.
            let lo = 64 - p.leading_zeros() as u64;
            CmContext::new(p, lo.max(spec.min_n.unwrap_or(0))).map_err(UsageError::from)?;
            let items = bounded(lo)?.map(|n| Planned::Run(Candidate::S { p, n })).collect();
            Ok((format!("S p={p}"), items))
        }
        Family::L => {
            let range = bounded(3)?;
            let mut items = Vec::new();
            for n in range.filter(|n| n % 2 == 1) {
                items.push(Planned::Run(Candidate::lambda(n, spec.h, &spec.f)?));
            }
            Ok((format!("L h={} F={}", spec.h, spec.f), items))
        }
        Family::Mersenne => {
            let items = bounded(3)?.map(|p| Planned::Run(Candidate::Mersenne { p })).collect();
            Ok(("mersenne".into(), items))
        }
    }
}

/// `search FAMILY ...`: run every candidate, hand each item to `sink` in
/// order of `n`, and return the totals.
///
/// `jobs = 0` uses one worker per core. Work is dispatched in batches so
/// output streams while later candidates are still running.
pub fn cmd_search(
    spec: &SearchSpec,
    opts: RunOptions,
    jobs: usize,
    mut sink: impl FnMut(&SearchItem),
) -> Result<SearchSummary, UsageError> {
    let (label, planned) = plan(spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| UsageError(format!("thread pool: {e}")))?;
    let batch = 4 * pool.current_num_threads().max(1);
    let mut summary = SearchSummary {
        label,
        ..SearchSummary::default()
    };
    for chunk in planned.chunks(batch) {
        let results: Vec<Result<SearchItem, UsageError>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|p| match p {
                    Planned::Skip(c, why) => Ok(SearchItem::Skipped(Skipped::new(c, why.clone()))),
                    Planned::Run(c) => match run_candidate(c, opts) {
                        Ok(r) => Ok(SearchItem::Run(r)),
                        Err(e) => skip_on_violation(c, e),
                    },
                })
                .collect()
        });
        for (item, planned) in results.into_iter().zip(chunk) {
            let item = item?;
            let n = match planned {
                Planned::Run(c) | Planned::Skip(c, _) => c.n(),
            };
            tally(&mut summary, &item, n);
            sink(&item);
        }
    }
    Ok(summary)
}

/// Hypothesis failures inside a sweep (e.g. `4m >= 2^n` at the low end)
/// become skip lines; anything else aborts.
fn skip_on_violation(c: &Candidate, e: HypothesisError) -> Result<SearchItem, UsageError> {
    match e {
        HypothesisError::Violated(why) => Ok(SearchItem::Skipped(Skipped::new(c, why))),
        other => Err(other.into()),
    }
}

fn tally(s: &mut SearchSummary, item: &SearchItem, n: u64) {
    match item {
        SearchItem::Skipped(_) => s.skipped += 1,
        SearchItem::Run(r) => {
            if r.is_certified_prime() {
                s.certified.push(n);
            } else if r.is_composite() {
                s.composite += 1;
            } else {
                s.not_certified += 1;
            }
            if r.oracle_disagrees() {
                s.disagreements.push(n);
            }
            if r.missed_prime() {
                s.missed_primes.push(n);
            }
        }
    }
}
