//! Front end for the `curveprime` tests: single runs, range searches and the
//! built-in self-test. The binary in `main.rs` is a thin clap layer over this.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use curveprime::classic::{lucas_lehmer_sequence, mersenne};
use curveprime::cm::{s_number, test_s_run};
use curveprime::genus2::{parse_divisor, test_lambda_run, RationalDivisor};
use curveprime::oracle::is_prime_oracle;
use curveprime::ring::lambda;
use curveprime::supersingular::{a_number, test_a_run};
use curveprime::{CompositeReason, HypothesisError, TestOutcome, TestRun};

pub mod search;
pub mod selftest;

/// Default curve constant and starting divisor for the `L` family.
pub const DEFAULT_H: i64 = 10;
pub const DEFAULT_F: &str = "x+1;3";

pub const EXIT_PRIME: i32 = 0;
pub const EXIT_COMPOSITE: i32 = 1;
pub const EXIT_NOT_CERTIFIED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Family {
    /// `m*2^n - 1`
    #[value(name = "A", alias = "a")]
    A,
    /// `p^2*16^n + 1`
    #[value(name = "S", alias = "s")]
    S,
    /// `4*5^n - 1`
    #[value(name = "L", alias = "l")]
    L,
    /// `2^p - 1`
    #[value(name = "mersenne", alias = "M")]
    #[serde(rename = "mersenne")]
    Mersenne,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::S => "S",
            Family::L => "L",
            Family::Mersenne => "mersenne",
        })
    }
}

/// Bad parameters or ranges; reported with exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl From<HypothesisError> for UsageError {
    fn from(e: HypothesisError) -> Self {
        UsageError(e.to_string())
    }
}

/// One number to test.
#[derive(Debug, Clone)]
pub enum Candidate {
    A { m: u64, n: u64 },
    S { p: u64, n: u64 },
    L { n: u64, h: i64, f_text: String, f: RationalDivisor },
    Mersenne { p: u64 },
}

impl Candidate {
    pub fn lambda(n: u64, h: i64, f_text: &str) -> Result<Self, UsageError> {
        let f = parse_divisor(f_text).map_err(|e| UsageError(format!("bad divisor {f_text:?}: {e}")))?;
        Ok(Candidate::L {
            n,
            h,
            f_text: f_text.to_string(),
            f,
        })
    }

    pub fn family(&self) -> Family {
        match self {
            Candidate::A { .. } => Family::A,
            Candidate::S { .. } => Family::S,
            Candidate::L { .. } => Family::L,
            Candidate::Mersenne { .. } => Family::Mersenne,
        }
    }

    /// The running exponent used to order search output.
    pub fn n(&self) -> u64 {
        match self {
            Candidate::A { n, .. } | Candidate::S { n, .. } | Candidate::L { n, .. } => *n,
            Candidate::Mersenne { p } => *p,
        }
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let pairs: Vec<(&str, String)> = match self {
            Candidate::A { m, n } => vec![("m", m.to_string()), ("n", n.to_string())],
            Candidate::S { p, n } => vec![("p", p.to_string()), ("n", n.to_string())],
            Candidate::L { n, h, f_text, .. } => {
                vec![("n", n.to_string()), ("h", h.to_string()), ("F", f_text.clone())]
            }
            Candidate::Mersenne { p } => vec![("p", p.to_string())],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    /// The integer under test.
    pub fn number(&self) -> BigUint {
        match self {
            Candidate::A { m, n } => a_number(*m, *n),
            Candidate::S { p, n } => s_number(*p, *n),
            Candidate::L { n, .. } => lambda(*n),
            Candidate::Mersenne { p } => mersenne(*p),
        }
    }

    /// Run the matching test. Hypothesis violations come back as `Err`.
    pub fn run(&self, trace: bool) -> Result<TestRun, HypothesisError> {
        match self {
            Candidate::A { m, n } => test_a_run(*m, *n, trace),
            Candidate::S { p, n } => test_s_run(*p, *n, trace),
            Candidate::L { n, h, f, .. } => test_lambda_run(*n, *h, f, trace),
            Candidate::Mersenne { p } => run_mersenne(*p, trace),
        }
    }
}

fn run_mersenne(p: u64, trace: bool) -> Result<TestRun, HypothesisError> {
    let seq = lucas_lehmer_sequence(p).map_err(|e| HypothesisError::Violated(e.to_string()))?;
    let outcome = if seq.last().is_some_and(|r| r.is_zero()) {
        TestOutcome::CertifiedPrime
    } else {
        TestOutcome::composite(CompositeReason::LucasLehmerResidueNonzero)
    };
    let steps = seq.len() as u64 - 1;
    let log = if trace { seq.iter().map(|r| r.to_string()).collect() } else { Vec::new() };
    Ok(TestRun {
        outcome,
        steps,
        trace: log,
    })
}

/// Oracle verdict attached by `--cross-check`. It is never a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleNote {
    pub verdict: String,
    pub prime: bool,
    pub certificate: bool,
}

/// One test result, as printed by `test` and streamed by `search`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub family: Family,
    pub params: BTreeMap<String, String>,
    /// `certified_prime`, `composite` or `not_certified`.
    pub outcome: String,
    pub witness: Option<String>,
    pub steps: u64,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleNote>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

impl RunRecord {
    pub fn is_certified_prime(&self) -> bool {
        self.outcome == "certified_prime"
    }

    pub fn is_composite(&self) -> bool {
        self.outcome == "composite"
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome.as_str() {
            "certified_prime" => EXIT_PRIME,
            "composite" => EXIT_COMPOSITE,
            _ => EXIT_NOT_CERTIFIED,
        }
    }

    /// The certificate and the oracle contradict each other.
    pub fn oracle_disagrees(&self) -> bool {
        match &self.oracle {
            Some(o) => (self.is_certified_prime() && !o.prime) || (self.is_composite() && o.prime),
            None => false,
        }
    }

    /// No certificate although the oracle says prime.
    pub fn missed_prime(&self) -> bool {
        self.outcome == "not_certified" && self.oracle.as_ref().is_some_and(|o| o.prime)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Human-readable form: one summary line, then optional detail lines.
    pub fn to_human(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!(
            "{} {}  {}  steps={}  {} ms",
            self.family,
            params.join(" "),
            self.outcome,
            self.steps,
            self.ms
        );
        if let Some(r) = &self.reason {
            out.push_str(&format!("\n  reason: {r}"));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("\n  witness: {w}"));
        }
        if let Some(o) = &self.oracle {
            out.push_str(&format!("\n  oracle (not a certificate): {}", o.verdict));
            if self.oracle_disagrees() {
                out.push_str("  DISAGREES");
            }
        }
        for (i, t) in self.trace.iter().enumerate() {
            out.push_str(&format!("\n  [{i}] {t}"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub trace: bool,
    pub cross_check: bool,
}

/// Run one candidate and package the result.
pub fn run_candidate(c: &Candidate, opts: RunOptions) -> Result<RunRecord, HypothesisError> {
    let start = Instant::now();
    let run = c.run(opts.trace)?;
    let ms = start.elapsed().as_millis() as u64;
    let oracle = opts.cross_check.then(|| {
        let v = is_prime_oracle(&c.number());
        OracleNote {
            verdict: v.label(),
            prime: v.says_prime(),
            certificate: false,
        }
    });
    Ok(RunRecord {
        family: c.family(),
        params: c.params(),
        outcome: run.outcome.label().to_string(),
        witness: run.outcome.witness().map(|g| g.to_string()),
        steps: run.steps,
        ms,
        reason: run.outcome.reason(),
        oracle,
        trace: run.trace,
    })
}

/// `test FAMILY ...`: the record and the exit code it maps to.
pub fn cmd_test(c: &Candidate, opts: RunOptions) -> Result<(RunRecord, i32), UsageError> {
    let rec = run_candidate(c, opts)?;
    let code = rec.exit_code();
    Ok((rec, code))
}
