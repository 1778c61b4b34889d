//! Versioned JSON cache for the threshold table, the one expensive
//! computation worth persisting. Any mismatch (version, parameters,
//! corruption) falls back to a full recompute with a notice on stderr.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use szeged_core::ThresholdRow;

use crate::records::{ThresholdRowRecord, SCHEMA_VERSION};

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CacheDoc {
    schema_version: u32,
    max_size: usize,
    n_max: usize,
    rows: Vec<ThresholdRowRecord>,
}

fn cache_file(dir: &Path, max_size: usize, n_max: usize) -> PathBuf {
    dir.join(format!("thresholds-{max_size}-{n_max}.json"))
}

pub fn row_to_record(r: &ThresholdRow) -> ThresholdRowRecord {
    ThresholdRowRecord {
        size: r.size,
        threshold: r.threshold,
        child_count: r.child_count,
        children: r.children.clone(),
        tie: r.tie,
        certified: r.certified,
    }
}

fn record_to_row(r: ThresholdRowRecord) -> ThresholdRow {
    ThresholdRow {
        size: r.size,
        threshold: r.threshold,
        child_count: r.child_count,
        children: r.children,
        tie: r.tie,
        certified: r.certified,
    }
}

pub fn load(dir: &Path, max_size: usize, n_max: usize) -> Option<Vec<ThresholdRow>> {
    let path = cache_file(dir, max_size, n_max);
    let text = fs::read_to_string(&path).ok()?;
    let doc: CacheDoc = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(_) => {
            eprintln!("cache file {} is unreadable, recomputing", path.display());
            return None;
        }
    };
    if doc.schema_version != SCHEMA_VERSION || doc.max_size != max_size || doc.n_max != n_max {
        eprintln!("cache file {} does not match, recomputing", path.display());
        return None;
    }
    Some(doc.rows.into_iter().map(record_to_row).collect())
}

pub fn store(dir: &Path, max_size: usize, n_max: usize, rows: &[ThresholdRow]) {
    let doc = CacheDoc {
        schema_version: SCHEMA_VERSION,
        max_size,
        n_max,
        rows: rows.iter().map(row_to_record).collect(),
    };
    if fs::create_dir_all(dir).is_err() {
        eprintln!("cannot create cache directory {}", dir.display());
        return;
    }
    let path = cache_file(dir, max_size, n_max);
    match serde_json::to_string_pretty(&doc) {
        Ok(text) => {
            if fs::write(&path, text).is_err() {
                eprintln!("cannot write cache file {}", path.display());
            }
        }
        Err(e) => eprintln!("cache serialization failed: {e}"),
    }
}
