//! On-disk cache of Gram tables, one JSON file per `(n, q)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{gram_table, GramTable, Lattice};

pub const CACHE_ENV: &str = "STEINBERG_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".steinberg-cache";
const ORDER: &str = "row-major-superdiagonal";
const FQ_ORDER: &str = "lex-coefficient";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

impl CacheStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Disabled => "disabled",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    q: u32,
    order: String,
    fq_order: String,
    c: Vec<String>,
}

/// Explicit directory, else `STEINBERG_CACHE_DIR`, else `./.steinberg-cache`.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_DIR),
    }
}

pub fn cache_path(dir: &Path, n: usize, q: u32) -> PathBuf {
    dir.join(format!("gram_n{n}_q{q}.json"))
}

fn read(path: &Path, lat: &Lattice) -> Option<GramTable> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.n != lat.n() || file.q != lat.q() || file.order != ORDER || file.fq_order != FQ_ORDER {
        return None;
    }
    if file.c.len() != lat.size() {
        return None;
    }
    let c = file.c.iter().map(|s| s.parse::<i64>().ok()).collect::<Option<Vec<_>>>()?;
    Some(GramTable { n: file.n, q: file.q, c })
}

pub fn write(path: &Path, table: &GramTable) -> Result<()> {
    let file = CacheFile {
        n: table.n,
        q: table.q,
        order: ORDER.into(),
        fq_order: FQ_ORDER.into(),
        c: table.c.iter().map(|x| x.to_string()).collect(),
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::Io(e.to_string()))?;
    }
    let text = serde_json::to_string(&file).map_err(|e| Error::Io(e.to_string()))?;
    // write then rename, so concurrent sweeps never read a partial file
    let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
    fs::write(&tmp, text).map_err(|e| Error::Io(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| Error::Io(e.to_string()))
}

/// The Gram table of `lat`, read from `dir` when present and valid.
/// Unreadable or mismatched files are rebuilt and overwritten.
pub fn load_or_build(lat: &Lattice, dir: Option<&Path>) -> Result<(GramTable, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((gram_table(lat), CacheStatus::Disabled));
    };
    let path = cache_path(dir, lat.n(), lat.q());
    if let Some(t) = read(&path, lat) {
        return Ok((t, CacheStatus::Hit));
    }
    let t = gram_table(lat);
    write(&path, &t)?;
    Ok((t, CacheStatus::Miss))
}
