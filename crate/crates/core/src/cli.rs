//! The `solvmat` command line.
//!
//! Exit status: 0 when every proved claim checked out, 1 on a verification
//! failure, 2 on a usage or configuration error.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::config::{Config, OutputFormat};
use crate::group::{order_in_g, GroupError, GroupWord, Order};
use crate::ideal::{BurnsideParams, IdealLabel, LatticeCache, CACHE_DIR_ENV};
use crate::ring::parse_poly;
use crate::theorems::{run_suite, timed, ContextStore, SuiteId, SuiteReport, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "solvmat", version, about = "Exact computations in 2x2 metabelian matrix groups and their solvable quotients")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random samples per suite.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Worker threads (default: one per core). Reports do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// text or json (one record per line).
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Lattice cache directory (overrides the environment and the config file).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Build lattices in memory only.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical form, Sigma-valuation and augmentation of a polynomial.
    Ring { expr: String },
    /// Membership of a polynomial in I(q), I(q)Sigma and the powers of Sigma.
    Ideal {
        #[arg(long)]
        q: u64,
        /// Also decide membership in Sigma^k.
        #[arg(long)]
        k: Option<u32>,
        expr: String,
    },
    /// Order of a word in G(q).
    Order {
        #[arg(long)]
        q: u64,
        word: String,
    },
    /// Run one verification suite.
    Verify {
        id: String,
        /// Exponents (comma separated); defaults to the config list.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Run every suite and print the solvability table.
    Report {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Inspect or maintain the lattice cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    Status {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    Build {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    /// Rebuild and compare with the stored copies, replacing mismatches.
    Verify {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
    Clear,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Session<'a> {
    config: Config,
    timings: bool,
    cache: Option<LatticeCache>,
    pool: Option<rayon::ThreadPool>,
    out: &'a mut dyn Write,
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut session = match Session::new(&cli.global, out) {
        Ok(s) => s,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match session.dispatch(&cli.command) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

impl<'a> Session<'a> {
    fn new(g: &GlobalArgs, out: &'a mut dyn Write) -> Result<Self, UsageError> {
        let mut config = match &g.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        if let Some(seed) = g.seed {
            config.suite.seed = seed;
        }
        if let Some(samples) = g.samples {
            config.suite.samples = samples;
        }
        if let Some(jobs) = g.jobs {
            config.jobs = Some(jobs);
        }
        if config.jobs == Some(0) {
            return Err(UsageError("jobs must be at least 1".into()));
        }
        if let Some(f) = g.format {
            config.format = f;
        }
        let cache = (!g.no_cache).then(|| {
            let dir = g
                .cache_dir
                .clone()
                .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
                .or_else(|| config.cache_dir.clone())
                .unwrap_or_else(|| std::env::temp_dir().join("solvmat-cache"));
            LatticeCache::new(dir)
        });
        let pool = match config.jobs {
            Some(n) => Some(rayon::ThreadPoolBuilder::new().num_threads(n).build()?),
            None => None,
        };
        Ok(Session {
            config,
            timings: g.timings,
            cache,
            pool,
            out,
        })
    }

    fn json(&self) -> bool {
        self.config.format == OutputFormat::Json
    }

    fn store(&self) -> ContextStore {
        ContextStore::new(self.cache.clone())
    }

    fn q_list(&self, given: &[u64]) -> Result<Vec<u64>, UsageError> {
        let qs = if given.is_empty() { self.config.q.clone() } else { given.to_vec() };
        for &q in &qs {
            BurnsideParams::new(q)?;
        }
        Ok(qs)
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<i32, UsageError> {
        let code = match cmd {
            Command::Ring { expr } => self.ring(expr)?,
            Command::Ideal { q, k, expr } => self.ideal(*q, *k, expr)?,
            Command::Order { q, word } => self.order(*q, word)?,
            Command::Verify { id, q } => {
                let id: SuiteId = id.parse()?;
                let qs = if id.needs_q() { self.q_list(q)? } else { Vec::new() };
                self.verify(&[(id, qs)])?
            }
            Command::Report { q } => {
                let qs = self.q_list(q)?;
                let plan: Vec<(SuiteId, Vec<u64>)> = SuiteId::ALL
                    .iter()
                    .map(|&id| (id, if id.needs_q() { qs.clone() } else { Vec::new() }))
                    .collect();
                self.verify(&plan)?
            }
            Command::Cache { action } => self.cache(action)?,
        };
        self.out.flush()?;
        Ok(code)
    }

    fn ring(&mut self, expr: &str) -> Result<i32, UsageError> {
        let f = parse_poly(expr)?;
        let valuation = f.sigma_valuation().map(|v| v.to_string()).unwrap_or_else(|_| "undefined (contains t)".into());
        let aug = f.augmentation();
        if self.json() {
            let rec = json!({
                "record": "ring",
                "input": expr,
                "canonical": f.to_string(),
                "sigma_valuation": valuation,
                "augmentation": aug.to_string(),
            });
            writeln!(self.out, "{rec}")?;
        } else {
            writeln!(self.out, "canonical:       {f}")?;
            writeln!(self.out, "sigma valuation: {valuation}")?;
            writeln!(self.out, "augmentation:    {aug}")?;
        }
        Ok(EXIT_OK)
    }

    fn ideal(&mut self, q: u64, k: Option<u32>, expr: &str) -> Result<i32, UsageError> {
        let f = parse_poly(expr)?;
        if f.has_t() {
            return Err(UsageError("ideal membership is defined for polynomials in x and y only".into()));
        }
        let store = self.store();
        let ctx = store.get(q)?;
        let in_cyc = ctx.cyclotomic.contains(&f)?;
        let in_cyc_sigma = ctx.lattice.contains(&f)?;
        let valuation = f.sigma_valuation()?;
        let in_sigma_k = k.map(|k| valuation.at_least(k));
        let statuses = store.statuses();
        let cache: Vec<String> = match statuses.first() {
            Some((_, s)) => s.iter().map(|s| s.to_string()).collect(),
            None => vec!["disabled".into(); 2],
        };
        let verdict = |b: bool| if b { "member" } else { "non-member" };
        if self.json() {
            let rec = json!({
                "record": "ideal",
                "q": q,
                "input": expr,
                "canonical": f.to_string(),
                "cyclotomic": in_cyc,
                "cyclotomic_sigma": in_cyc_sigma,
                "sigma_valuation": valuation.to_string(),
                "sigma_k": k.map(|k| json!({"k": k, "member": in_sigma_k})),
                "cache": {"cyclotomic": cache[0], "cyclotomic_sigma": cache[1]},
            });
            writeln!(self.out, "{rec}")?;
        } else {
            writeln!(self.out, "element:         {f}")?;
            writeln!(self.out, "I({q}):            {}", verdict(in_cyc))?;
            writeln!(self.out, "I({q})Sigma:       {}", verdict(in_cyc_sigma))?;
            writeln!(self.out, "sigma valuation: {valuation} (member of Sigma^k exactly for k <= {valuation})")?;
            if let (Some(k), Some(b)) = (k, in_sigma_k) {
                writeln!(self.out, "Sigma^{k}:         {}", verdict(b))?;
            }
            writeln!(self.out, "cache:           I(q) {}, I(q)Sigma {}", cache[0], cache[1])?;
        }
        Ok(EXIT_OK)
    }

    fn order(&mut self, q: u64, word: &str) -> Result<i32, UsageError> {
        let params = BurnsideParams::new(q)?;
        let w = GroupWord::parse(word)?;
        let ctx = self.store().get(q)?;
        let outcome = match &self.pool {
            Some(pool) => pool.install(|| order_in_g(&w, &ctx)),
            None => order_in_g(&w, &ctx),
        };
        let (order, certificate, code) = match outcome {
            Ok(o @ Order::Finite { order }) => (
                o.to_string(),
                format!("w^{order} = I over S({q})[t^±1] and no smaller divisor of {q} works"),
                EXIT_OK,
            ),
            Ok(o @ Order::Infinite { det_t_degree }) => (
                "infinite".to_string(),
                format!("{o}; exponent sum in T is {det_t_degree}"),
                EXIT_OK,
            ),
            Err(GroupError::TheoremViolation(msg)) => {
                // proved for primes only; for proper prime powers this is an observation
                let code = if params.e == 1 { EXIT_FAILURE } else { EXIT_OK };
                ("does not divide q".to_string(), msg, code)
            }
            Err(e) => return Err(e.into()),
        };
        if self.json() {
            let rec = json!({
                "record": "order",
                "q": q,
                "word": w.to_string(),
                "t_exponent_sum": w.t_exponent_sum(),
                "order": order,
                "certificate": certificate,
            });
            writeln!(self.out, "{rec}")?;
        } else {
            writeln!(self.out, "word:        {w}")?;
            writeln!(self.out, "order:       {order}")?;
            writeln!(self.out, "certificate: {certificate}")?;
        }
        Ok(code)
    }

    fn verify(&mut self, plan: &[(SuiteId, Vec<u64>)]) -> Result<i32, UsageError> {
        let store = self.store();
        let cfg = self.config.suite.clone();
        let mut reports = Vec::new();
        for (id, qs) in plan {
            let runs: Vec<Option<u64>> = if qs.is_empty() { vec![None] } else { qs.iter().copied().map(Some).collect() };
            for q in runs {
                let job = || timed(|| run_suite(*id, q, &cfg, &store));
                let (report, ms) = match &self.pool {
                    Some(pool) => pool.install(job),
                    None => job(),
                };
                let mut report = report?;
                if self.timings {
                    report.set_wall_time(ms);
                }
                reports.push(report);
            }
        }
        if self.json() {
            for r in &reports {
                writeln!(self.out, "{}", serde_json::to_string(r)?)?;
            }
        } else {
            self.text_reports(&reports)?;
        }
        Ok(if reports.iter().any(SuiteReport::is_fatal) { EXIT_FAILURE } else { EXIT_OK })
    }

    fn text_reports(&mut self, reports: &[SuiteReport]) -> io::Result<()> {
        let cfg = &self.config.suite;
        writeln!(self.out, "seed {}  config {}", cfg.seed, cfg.hash())?;
        let verifications: Vec<&VerificationReport> = reports
            .iter()
            .filter_map(|r| match r {
                SuiteReport::Verification(v) => Some(v),
                _ => None,
            })
            .collect();
        if !verifications.is_empty() {
            writeln!(self.out)?;
            write!(self.out, "{:<10} {:>3}  {:<12} {:<8} {:>8} {:>8}", "result", "q", "claim", "status", "checks", "failed")?;
            writeln!(self.out, "{}", if self.timings { "  wall ms" } else { "" })?;
            for v in &verifications {
                let q = v.q.map_or("-".to_string(), |q| q.to_string());
                let claim = serde_json::to_value(v.claim).expect("plain enum");
                let status = serde_json::to_value(v.status).expect("plain enum");
                write!(
                    self.out,
                    "{:<10} {:>3}  {:<12} {:<8} {:>8} {:>8}",
                    v.result.name(),
                    q,
                    claim.as_str().unwrap_or_default(),
                    status.as_str().unwrap_or_default(),
                    v.checks,
                    v.failure_count
                )?;
                match v.wall_time_ms {
                    Some(ms) => writeln!(self.out, "  {ms:>7}")?,
                    None => writeln!(self.out)?,
                }
            }
            for v in &verifications {
                let label = format!("{}{}", v.result.name(), v.q.map_or(String::new(), |q| format!(" q={q}")));
                for (key, value) in &v.findings {
                    writeln!(self.out, "  {label}: {key} = {value}")?;
                }
                for f in &v.failures {
                    writeln!(self.out, "  {label}: FAILED {f}")?;
                }
                if v.failures.len() < v.failure_count {
                    writeln!(self.out, "  {label}: ... {} more", v.failure_count - v.failures.len())?;
                }
            }
        }
        let solvability: Vec<_> = reports
            .iter()
            .filter_map(|r| match r {
                SuiteReport::Solvability(s) => Some(s),
                _ => None,
            })
            .collect();
        if !solvability.is_empty() {
            writeln!(self.out)?;
            writeln!(self.out, "solvability of G(q): derived length at most k, 2^(k-1) >= e*phi(q) + 1")?;
            writeln!(self.out, "{:>3} {:>6} {:>3}  {:<16} witness at depth k-1", "q", "e*phi", "k", "depth-k trees")?;
            for s in solvability {
                let upper = format!("{} ({} sampled)", if s.upper_bound_passed { "all I" } else { "FAILED" }, s.samples);
                let tried = format!("{} of {} tried", s.witness_candidates_tried, s.witness_budget);
                writeln!(self.out, "{:>3} {:>6} {:>3}  {:<16} {} ({tried})", s.q, s.e_phi, s.bound_k, upper, s.witness_display())?;
                for f in &s.upper_bound_failures {
                    writeln!(self.out, "  q={}: FAILED {f}", s.q)?;
                }
            }
        }
        Ok(())
    }

    fn cache(&mut self, action: &CacheAction) -> Result<i32, UsageError> {
        let Some(cache) = self.cache.clone() else {
            return Err(UsageError("the cache is disabled (--no-cache)".into()));
        };
        let mut records = Vec::new();
        match action {
            CacheAction::Status { q } => {
                for q in self.q_list(q)? {
                    let d = BurnsideParams::new(q)?.degree;
                    for label in [IdealLabel::Cyclotomic, IdealLabel::CyclotomicTimesSigma] {
                        let state = match cache.load(label, q, d) {
                            Ok(Some(_)) => "valid".to_string(),
                            Ok(None) => "absent".to_string(),
                            Err(why) => format!("stale ({why})"),
                        };
                        let path = cache.path_for(label, q, d).display().to_string();
                        records.push(json!({"record": "cache", "q": q, "lattice": label.to_string(), "state": state, "path": path}));
                    }
                }
            }
            CacheAction::Build { q } => {
                for q in self.q_list(q)? {
                    let (_, statuses) = cache.s_context(q)?;
                    let labels = [IdealLabel::Cyclotomic, IdealLabel::CyclotomicTimesSigma];
                    for (label, s) in labels.iter().zip(statuses) {
                        records.push(json!({"record": "cache", "q": q, "lattice": label.to_string(), "state": s.to_string()}));
                    }
                }
            }
            CacheAction::Verify { q } => {
                for q in self.q_list(q)? {
                    for (label, ok) in cache.verify(q)? {
                        let state = if ok { "matches rebuild" } else { "replaced" };
                        records.push(json!({"record": "cache", "q": q, "lattice": label.to_string(), "state": state}));
                    }
                }
            }
            CacheAction::Clear => {
                let n = cache.clear()?;
                records.push(json!({"record": "cache", "removed": n, "dir": cache.dir().display().to_string()}));
            }
        }
        for r in records {
            if self.json() {
                writeln!(self.out, "{r}")?;
            } else if let Some(n) = r.get("removed") {
                writeln!(self.out, "removed {n} file(s) from {}", r["dir"].as_str().unwrap_or_default())?;
            } else {
                let path = r.get("path").and_then(|p| p.as_str()).map(|p| format!("  {p}")).unwrap_or_default();
                writeln!(
                    self.out,
                    "q={:<3} {:<17} {}{path}",
                    r["q"],
                    r["lattice"].as_str().unwrap_or_default(),
                    r["state"].as_str().unwrap_or_default()
                )?;
            }
        }
        Ok(EXIT_OK)
    }
}
