//! Verification suites. Each suite samples deterministically from a seed,
//! runs its checks in parallel and folds the outcomes into a report in
//! sample order, so reports do not depend on the number of threads.

mod suites;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::group::{sample_rng, GroupError};
use crate::ideal::{CacheStatus, IdealError, LatticeCache, SContext};

pub use suites::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("unknown result id {0:?} (known: {known})", known = SuiteId::NAMES.join(", "))]
    UnknownSuite(String),
    #[error("{suite} needs a value of q")]
    MissingQ { suite: SuiteId },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sampling parameters shared by all suites. The defaults are the sizes used
/// by the acceptance run.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random words per suite.
    pub samples: usize,
    /// Words with nonzero exponent sum in `T` for the order suite.
    pub nonzero_samples: usize,
    /// Elements per derived layer for the coefficient bounds.
    pub derived_samples: usize,
    /// Depth-`k` trees for the solvability bound.
    pub solvability_samples: usize,
    /// Words for the commutative square.
    pub square_samples: usize,
    /// Depth-`(k-1)` candidate trees tried when looking for a nontrivial element.
    pub witness_budget: usize,
    /// Longest random word.
    pub max_word_len: usize,
    /// Longest leaf word in commutator trees.
    pub base_word_len: usize,
    /// Largest exponent in the power formula check.
    pub max_power: u32,
    /// Basic commutators are checked for `a, b <= max_commutator_index`.
    pub max_commutator_index: u32,
    /// Formal coefficients `A_0..A_n` examined for first-derived elements.
    pub coefficient_cutoff: usize,
    /// Word length for the exhaustive free-group spot check.
    pub sanov_max_len: usize,
    /// Derived layers checked for the coefficient bounds.
    pub derived_layers: Vec<u32>,
    /// Truncation degree override for ideal queries (`0` keeps the default).
    pub degree_override: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 2024,
            samples: 200,
            nonzero_samples: 50,
            derived_samples: 100,
            solvability_samples: 50,
            square_samples: 100,
            witness_budget: 500,
            max_word_len: 12,
            base_word_len: 3,
            max_power: 8,
            max_commutator_index: 4,
            coefficient_cutoff: 8,
            sanov_max_len: 10,
            derived_layers: vec![2, 3, 4],
            degree_override: 0,
        }
    }
}

impl SuiteConfig {
    /// First 16 hex digits of the SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&json);
        hex::encode(&digest[..8])
    }

    /// Deterministic generator for sample `index` of stream `tag`.
    pub(crate) fn rng(&self, tag: u64, index: usize) -> ChaCha8Rng {
        sample_rng(self.seed, (tag << 40) | index as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum SuiteId {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma5,
    Lemma7,
    Lemma8,
    Theorem2,
    Square,
    Sanov,
    Appendix,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::Lemma1,
        SuiteId::Lemma2,
        SuiteId::Lemma3,
        SuiteId::Lemma5,
        SuiteId::Lemma7,
        SuiteId::Lemma8,
        SuiteId::Theorem2,
        SuiteId::Square,
        SuiteId::Sanov,
        SuiteId::Appendix,
    ];

    pub const NAMES: [&'static str; 10] = [
        "lemma1", "lemma2", "lemma3", "lemma5", "lemma7", "lemma8", "theorem2", "square", "sanov", "appendix",
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }

    /// Whether the suite is run once per exponent `q`.
    pub fn needs_q(self) -> bool {
        matches!(self, SuiteId::Lemma3 | SuiteId::Lemma8 | SuiteId::Theorem2 | SuiteId::Square)
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let norm: String = lower.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        // accept "lemma3i", "lemma3iii", "theorem3" and the like
        let alias = match norm.as_str() {
            "lemma3i" | "lemma3ii" | "lemma3iii" => "lemma3",
            "lemma6" | "lemma6ii" | "lemma4" => "lemma7",
            "theorem3" => "theorem2",
            "lemma9" | "commutativesquare" => "square",
            "freeness" | "theorem1" => "sanov",
            other => other,
        };
        SuiteId::NAMES
            .iter()
            .position(|n| *n == alias)
            .map(|i| SuiteId::ALL[i])
            .ok_or_else(|| TheoremError::UnknownSuite(s.to_string()))
    }
}

/// How a failure is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Proved in the source; a failure is a verification failure.
    Proved,
    /// Tested beyond the proved range; failures are reported only.
    Experimental,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub checks: u64,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Maps sample indices to tallies in parallel and merges them in index order.
pub(crate) fn par_tally<F>(n: usize, f: F) -> Tally
where
    F: Fn(usize) -> Tally + Sync + Send,
{
    let parts: Vec<Tally> = (0..n).into_par_iter().map(f).collect();
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Failures listed in a report; the total is always recorded.
pub const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub result: SuiteId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub claim: Claim,
    pub status: Status,
    pub seed: u64,
    pub config_hash: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: u64,
    pub failure_count: usize,
    pub failures: Vec<String>,
    /// Observations that are reported but never fail the suite.
    pub findings: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Experimental claim with failures.
    Reported,
}

impl VerificationReport {
    pub(crate) fn new(result: SuiteId, q: Option<u64>, claim: Claim, cfg: &SuiteConfig, tally: Tally) -> Self {
        let failure_count = tally.failures.len();
        let status = match (failure_count, claim) {
            (0, _) => Status::Pass,
            (_, Claim::Proved) => Status::Fail,
            (_, Claim::Experimental) => Status::Reported,
        };
        let mut failures = tally.failures;
        failures.truncate(MAX_LISTED_FAILURES);
        VerificationReport {
            result,
            q,
            claim,
            status,
            seed: cfg.seed,
            config_hash: cfg.hash(),
            parameters: BTreeMap::new(),
            checks: tally.checks,
            failure_count,
            failures,
            findings: BTreeMap::new(),
            rows: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub(crate) fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.parameters.insert(key.into(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub(crate) fn finding(mut self, key: &str, v: impl Serialize) -> Self {
        self.findings.insert(key.into(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A failed proved claim.
    pub fn is_fatal(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Derived-length bound for `F(S(q)[t^±1])` and the search for a witness
/// that it is sharp.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityReport {
    pub q: u64,
    pub e_phi: u64,
    /// Smallest `k` with `2^(k-1) >= e*phi + 1`.
    pub bound_k: u32,
    pub seed: u64,
    pub config_hash: String,
    pub samples: usize,
    pub upper_bound_passed: bool,
    pub upper_bound_failures: Vec<String>,
    /// A depth-`(k-1)` tree that is not the identity, if one was found.
    pub witness: Option<String>,
    pub witness_candidates_tried: usize,
    pub witness_budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SolvabilityReport {
    pub fn witness_display(&self) -> &str {
        self.witness.as_deref().unwrap_or("not found within budget")
    }
}

/// Output of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum SuiteReport {
    Verification(VerificationReport),
    Solvability(SolvabilityReport),
}

impl SuiteReport {
    /// Whether the run contains a failed proved claim.
    pub fn is_fatal(&self) -> bool {
        match self {
            SuiteReport::Verification(r) => r.is_fatal(),
            SuiteReport::Solvability(r) => !r.upper_bound_passed,
        }
    }

    pub fn set_wall_time(&mut self, ms: u64) {
        match self {
            SuiteReport::Verification(r) => r.wall_time_ms = Some(ms),
            SuiteReport::Solvability(r) => r.wall_time_ms = Some(ms),
        }
    }
}

/// Shared `S(q)` contexts, loaded through the lattice cache when one is set.
pub struct ContextStore {
    cache: Option<LatticeCache>,
    contexts: Mutex<HashMap<u64, Arc<SContext>>>,
    statuses: Mutex<Vec<(u64, [CacheStatus; 2])>>,
}

impl ContextStore {
    pub fn new(cache: Option<LatticeCache>) -> Self {
        ContextStore {
            cache,
            contexts: Mutex::new(HashMap::new()),
            statuses: Mutex::new(Vec::new()),
        }
    }

    pub fn cache(&self) -> Option<&LatticeCache> {
        self.cache.as_ref()
    }

    pub fn get(&self, q: u64) -> Result<Arc<SContext>, IdealError> {
        if let Some(c) = self.contexts.lock().expect("poisoned").get(&q) {
            return Ok(c.clone());
        }
        let ctx = match &self.cache {
            Some(cache) => {
                let (ctx, status) = cache.s_context(q)?;
                self.statuses.lock().expect("poisoned").push((q, status));
                ctx
            }
            None => SContext::new(q)?,
        };
        self.contexts.lock().expect("poisoned").insert(q, ctx.clone());
        Ok(ctx)
    }

    /// Cache outcomes of the contexts loaded so far.
    pub fn statuses(&self) -> Vec<(u64, [CacheStatus; 2])> {
        self.statuses.lock().expect("poisoned").clone()
    }
}

impl Default for ContextStore {
    fn default() -> Self {
        ContextStore::new(None)
    }
}

/// Runs one suite. `q` is required for the per-exponent suites and ignored otherwise.
pub fn run_suite(id: SuiteId, q: Option<u64>, cfg: &SuiteConfig, store: &ContextStore) -> Result<SuiteReport, TheoremError> {
    let need_q = || q.ok_or(TheoremError::MissingQ { suite: id });
    Ok(match id {
        SuiteId::Lemma1 => SuiteReport::Verification(verify_lemma1(cfg)?),
        SuiteId::Lemma2 => SuiteReport::Verification(verify_lemma2(cfg)?),
        SuiteId::Lemma3 => SuiteReport::Verification(verify_lemma3(need_q()?, cfg, store)?),
        SuiteId::Lemma5 => SuiteReport::Verification(verify_lemma5(cfg)?),
        SuiteId::Lemma7 => SuiteReport::Verification(verify_lemma7(cfg)?),
        SuiteId::Lemma8 => SuiteReport::Solvability(verify_lemma8(need_q()?, cfg, store)?),
        SuiteId::Theorem2 => SuiteReport::Verification(verify_theorem2(need_q()?, cfg, store)?),
        SuiteId::Square => SuiteReport::Verification(verify_square(need_q()?, cfg, store)?),
        SuiteId::Sanov => SuiteReport::Verification(verify_sanov(cfg)?),
        SuiteId::Appendix => SuiteReport::Verification(verify_appendix(cfg)?),
    })
}
