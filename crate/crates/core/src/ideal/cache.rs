//! On-disk cache of ideal lattices.
//!
//! One lattice per file. The first line is `label q D dim`; each following
//! line is one HNF row as space-separated decimal integers. A file whose
//! header, dimension or row shape does not match, or whose rows are not a
//! canonical HNF, is treated as stale and rebuilt.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::hnf::HermiteBasis;
use crate::ring::dimension;

use super::lattice::{IdealLabel, IdealLattice};
use super::params::BurnsideParams;
use super::quotient::SContext;
use super::IdealError;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "SOLVMAT_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// The file existed but was rejected; the reason is kept for reports.
    Rebuilt(String),
}

impl std::fmt::Display for CacheStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheStatus::Hit => f.write_str("hit"),
            CacheStatus::Miss => f.write_str("miss (built)"),
            CacheStatus::Rebuilt(why) => write!(f, "stale ({why}), rebuilt"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

pub fn encode(lattice: &IdealLattice) -> String {
    let mut out = format!(
        "{} {} {} {}\n",
        lattice.label,
        lattice.q,
        lattice.degree,
        lattice.dimension()
    );
    for row in lattice.basis().rows() {
        let mut first = true;
        for c in row {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{c}").expect("write to string");
        }
        out.push('\n');
    }
    out
}

/// Parses a cache file, checking it against the expected key.
pub fn decode(text: &str, label: IdealLabel, q: u64, degree: usize) -> Result<IdealLattice, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [l, fq, fd, fdim] = fields.as_slice() else {
        return Err(format!("malformed header {header:?}"));
    };
    let found_label: IdealLabel = l.parse().map_err(|_| format!("unknown label {l}"))?;
    let expected = (label, q, degree, dimension(degree));
    let found = (
        found_label,
        fq.parse::<u64>().map_err(|_| "bad q")?,
        fd.parse::<usize>().map_err(|_| "bad degree")?,
        fdim.parse::<usize>().map_err(|_| "bad dimension")?,
    );
    if found != expected {
        return Err(format!("header {found:?} does not match {expected:?}"));
    }
    let dim = expected.3;
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| format!("row {i}: bad integer {t:?}")))
            .collect::<Result<_, _>>()?;
        if row.len() != dim {
            return Err(format!("row {i} has {} entries, expected {dim}", row.len()));
        }
        rows.push(row);
    }
    let basis = HermiteBasis::from_canonical_rows(dim, rows).map_err(|e| e.to_string())?;
    Ok(IdealLattice::from_basis(label, q, degree, basis))
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    /// Directory from [`CACHE_DIR_ENV`], else `default`.
    pub fn from_env_or(default: impl Into<PathBuf>) -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => LatticeCache::new(d),
            _ => LatticeCache::new(default),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, label: IdealLabel, q: u64, degree: usize) -> PathBuf {
        let name = label.to_string().replace('^', "");
        self.dir.join(format!("{name}_q{q}_D{degree}.hnf"))
    }

    pub fn store(&self, lattice: &IdealLattice) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(lattice.label, lattice.q, lattice.degree);
        let tmp = path.with_extension("hnf.tmp");
        fs::write(&tmp, encode(lattice))?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` when absent, `Err(reason)` when present but unusable.
    pub fn load(&self, label: IdealLabel, q: u64, degree: usize) -> Result<Option<IdealLattice>, String> {
        let path = self.path_for(label, q, degree);
        match fs::read_to_string(&path) {
            Ok(text) => decode(&text, label, q, degree).map(Some),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.to_string()),
        }
    }

    fn load_or<F>(&self, label: IdealLabel, q: u64, degree: usize, build: F) -> Result<(IdealLattice, CacheStatus), IdealError>
    where
        F: FnOnce() -> Result<IdealLattice, IdealError>,
    {
        let status = match self.load(label, q, degree) {
            Ok(Some(l)) => return Ok((l, CacheStatus::Hit)),
            Ok(None) => CacheStatus::Miss,
            Err(why) => CacheStatus::Rebuilt(why),
        };
        let lattice = build()?;
        self.store(&lattice).map_err(|e| IdealError::Io(e.to_string()))?;
        Ok((lattice, status))
    }

    /// `I(q)` and `I(q) Sigma` at degree `e*phi + 1`, from disk when possible.
    pub fn s_context(&self, q: u64) -> Result<(Arc<SContext>, [CacheStatus; 2]), IdealError> {
        let params = BurnsideParams::new(q)?;
        let d = params.degree;
        let (cyc, s1) = self.load_or(IdealLabel::Cyclotomic, q, d, || IdealLattice::cyclotomic(&params, d))?;
        let (cyc_sigma, s2) = self.load_or(IdealLabel::CyclotomicTimesSigma, q, d, || cyc.times_sigma())?;
        Ok((SContext::from_lattices(params, cyc, cyc_sigma)?, [s1, s2]))
    }

    /// `I(q)` at an arbitrary degree.
    pub fn cyclotomic(&self, params: &BurnsideParams, degree: usize) -> Result<(IdealLattice, CacheStatus), IdealError> {
        self.load_or(IdealLabel::Cyclotomic, params.q, degree, || IdealLattice::cyclotomic(params, degree))
    }

    /// Rebuilds the lattices for `q` and compares them with the cached copies.
    /// Returns `(label, matches)` per lattice; mismatching files are replaced.
    pub fn verify(&self, q: u64) -> Result<Vec<(IdealLabel, bool)>, IdealError> {
        let params = BurnsideParams::new(q)?;
        let d = params.degree;
        let cyc = IdealLattice::cyclotomic(&params, d)?;
        let cyc_sigma = cyc.times_sigma()?;
        let mut out = Vec::new();
        for fresh in [cyc, cyc_sigma] {
            let cached = self.load(fresh.label, q, d).ok().flatten();
            let ok = cached.as_ref() == Some(&fresh);
            if !ok {
                self.store(&fresh).map_err(|e| IdealError::Io(e.to_string()))?;
            }
            out.push((fresh.label, ok));
        }
        Ok(out)
    }

    /// Removes every cached lattice file; returns how many were deleted.
    pub fn clear(&self) -> io::Result<usize> {
        let mut n = 0;
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        for entry in entries {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "hnf") {
                fs::remove_file(path)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
