//! On-disk cache of Coxeter ball tables, one file per (diagram hash, radius).

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use garside_wb::coxeter::{BallTable, CoxeterGroup};

use crate::Failure;

pub const ENV_VAR: &str = "GARSIDE_WB_CACHE";

/// --cache-dir, then $GARSIDE_WB_CACHE, then the platform cache directory.
pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(ENV_VAR).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p).join("garside-wb"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("garside-wb"))
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::usage(format!("cache {}: {e}", path.display()))
}

/// Loads the ball table from the cache or builds and stores it. Writers
/// hold an exclusive lock on a sidecar file and publish by rename, so
/// concurrent processes never see a partial file.
pub fn load_or_build_ball(
    group: &CoxeterGroup,
    radius: usize,
    dir: Option<&Path>,
) -> Result<(Arc<BallTable>, bool), Failure> {
    let Some(dir) = dir else {
        return Ok((Arc::new(BallTable::build(group, radius)?), false));
    };
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let stem = format!("{}-r{radius}", group.diagram().hash());
    let path = dir.join(format!("{stem}.ball"));
    let lock_path = dir.join(format!("{stem}.lock"));
    let lock = OpenOptions::new()
        .create(true)
        .truncate(false)
        .write(true)
        .open(&lock_path)
        .map_err(|e| io_err(&lock_path, e))?;
    lock.lock().map_err(|e| io_err(&lock_path, e))?;
    if let Ok(bytes) = fs::read(&path) {
        match BallTable::from_bytes(&bytes) {
            Ok(t) if t.rank() == group.rank() && t.radius() == radius => return Ok((Arc::new(t), true)),
            // stale or corrupt: rebuild below
            _ => {}
        }
    }
    let table = BallTable::build(group, radius)?;
    let tmp = dir.join(format!("{stem}.tmp{}", std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = File::create(&tmp)?;
        f.write_all(&table.to_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    };
    write().map_err(|e| io_err(&path, e))?;
    lock.unlock().ok();
    Ok((Arc::new(table), false))
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

