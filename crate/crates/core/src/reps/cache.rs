//! Persistent weight-system cache.
//!
//! One text file per root system (`<dir>/B3.wsc`). The first line carries the
//! format version; every following line is one record:
//!
//! ```text
//! B|3|1,0,0|7|-3/5|1,0,0:1;0,-1,2:1;...
//! ```
//!
//! Fields: family, rank, highest weight, dimension, Casimir value (`p/q`),
//! then `weight:multiplicity` pairs in sorted order. Files are rewritten to a
//! temporary sibling and renamed into place, so a reader sees either the old
//! or the new file, never a partial one. Within one process writers are
//! serialized; across processes the last writer wins, which at worst turns a
//! record into a cache miss.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};
use crate::rootsys::{build_root_system, Family, Weight};

use super::WeightSystem;

pub const FORMAT_VERSION: u32 = 1;
const HEADER_PREFIX: &str = "dolbeault-weight-cache format_version=";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub family: Family,
    pub rank: usize,
    pub system: WeightSystem,
    pub format_version: u32,
}

impl CacheRecord {
    pub fn new(family: Family, rank: usize, system: WeightSystem) -> Self {
        Self {
            family,
            rank,
            system,
            format_version: FORMAT_VERSION,
        }
    }

    pub fn highest(&self) -> &Weight {
        &self.system.highest
    }

    fn casimir(&self) -> Result<Rational> {
        let rs = build_root_system(self.family, self.rank)?;
        super::casimir_value(&rs, &self.system.highest)
    }

    pub fn encode(&self) -> Result<String> {
        let weights: Vec<String> = self
            .system
            .mults
            .iter()
            .map(|(w, m)| format!("{w}:{m}"))
            .collect();
        Ok(format!(
            "{}|{}|{}|{}|{}|{}",
            self.family,
            self.rank,
            self.system.highest,
            self.system.dim,
            self.casimir()?,
            weights.join(";")
        ))
    }

    /// Parses and validates one record line.
    pub fn decode(line: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("cache record: {what}"));
        let fields: Vec<&str> = line.trim_end().split('|').collect();
        let [family, rank, highest, dim, casimir, weights] = fields[..] else {
            return Err(bad("expected 6 fields"));
        };
        let family: Family = family.parse()?;
        let rank: usize = rank.parse().map_err(|_| bad("rank"))?;
        let highest: Weight = highest.parse()?;
        let dim: u128 = dim.parse().map_err(|_| bad("dim"))?;
        let casimir = parse_rational(casimir)?;
        let mut mults = BTreeMap::new();
        for pair in weights.split(';') {
            let (w, m) = pair.split_once(':').ok_or_else(|| bad("weight pair"))?;
            let w: Weight = w.parse()?;
            if w.rank() != rank {
                return Err(bad("weight rank"));
            }
            let m: u64 = m.parse().map_err(|_| bad("multiplicity"))?;
            mults.insert(w, m);
        }
        let rec = CacheRecord::new(
            family,
            rank,
            WeightSystem {
                highest,
                mults,
                dim,
            },
        );
        if rec.system.multiplicity(&rec.system.highest) != 1 {
            return Err(bad("highest weight multiplicity is not 1"));
        }
        if rec.system.total() != dim {
            return Err(bad("multiplicities do not sum to dim"));
        }
        if rec.casimir()? != casimir {
            return Err(bad("Casimir checksum mismatch"));
        }
        Ok(rec)
    }

    fn key_prefix(family: Family, rank: usize, highest: &Weight) -> String {
        format!("{family}|{rank}|{highest}|")
    }
}

#[derive(Debug)]
pub enum CacheLookup {
    Hit(WeightSystem),
    Miss,
    /// The record exists but failed validation.
    Corrupt(String),
}

#[derive(Debug)]
pub struct WeightCache {
    dir: PathBuf,
    writer: Mutex<()>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl WeightCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            writer: Mutex::new(()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn file_for(&self, family: Family, rank: usize) -> PathBuf {
        self.dir.join(format!("{family}{rank}.wsc"))
    }

    /// Record lines of a file in the current format; `None` when missing or
    /// stale.
    fn read_lines(path: &Path) -> Option<Vec<String>> {
        let text = fs::read_to_string(path).ok()?;
        let mut lines = text.lines();
        let version: u32 = lines
            .next()?
            .strip_prefix(HEADER_PREFIX)?
            .trim()
            .parse()
            .ok()?;
        if version != FORMAT_VERSION {
            return None;
        }
        Some(
            lines
                .filter(|l| !l.trim().is_empty())
                .map(str::to_owned)
                .collect(),
        )
    }

    pub fn load(&self, family: Family, rank: usize, highest: &Weight) -> CacheLookup {
        let Some(lines) = Self::read_lines(&self.file_for(family, rank)) else {
            return CacheLookup::Miss;
        };
        let prefix = CacheRecord::key_prefix(family, rank, highest);
        let Some(line) = lines.iter().rev().find(|l| l.starts_with(&prefix)) else {
            return CacheLookup::Miss;
        };
        match CacheRecord::decode(line) {
            Ok(rec) if rec.system.highest == *highest => CacheLookup::Hit(rec.system),
            Ok(_) => CacheLookup::Corrupt(format!("key mismatch for {family}{rank} {highest}")),
            Err(e) => CacheLookup::Corrupt(format!("{family}{rank} {highest}: {e}")),
        }
    }

    pub fn store(&self, record: &CacheRecord) -> Result<()> {
        let line = record.encode()?;
        let path = self.file_for(record.family, record.rank);
        let _guard = self.writer.lock().unwrap_or_else(|p| p.into_inner());
        let prefix = CacheRecord::key_prefix(record.family, record.rank, record.highest());
        let mut lines: Vec<String> = Self::read_lines(&path)
            .unwrap_or_default()
            .into_iter()
            .filter(|l| !l.starts_with(&prefix))
            .collect();
        lines.push(line);

        let tmp = self.dir.join(format!(
            ".{}{}.{}.{}.tmp",
            record.family,
            record.rank,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{HEADER_PREFIX}{FORMAT_VERSION}")?;
            for l in &lines {
                writeln!(f, "{l}")?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}
