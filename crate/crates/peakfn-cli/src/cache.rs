//! Advisory on-disk cache for avoidance-class peak-set histograms.
//!
//! Entries are keyed by `(n, canonical pattern encoding)` and validated on
//! load (degree, pattern list, peak-set validity, and count checksum); an
//! entry that fails validation is recomputed and overwritten.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use peakfn::perm::{peak_histogram, IndexSet, PatternSet};

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    patterns: Vec<String>,
    count: u64,
    histogram: Vec<CacheRow>,
}

#[derive(Serialize, Deserialize)]
struct CacheRow {
    peaks: Vec<u8>,
    count: u64,
}

fn cache_path(dir: &Path, patterns: &PatternSet, n: usize) -> PathBuf {
    let sanitized = if patterns.is_empty() {
        "none".to_string()
    } else {
        patterns
            .canonical_string()
            .replace(',', "-")
            .replace(['[', ']'], "")
    };
    dir.join(format!("hist_n{n}_{sanitized}.json"))
}

fn pattern_list(patterns: &PatternSet) -> Vec<String> {
    patterns.iter().map(|p| p.to_string()).collect()
}

fn load(path: &Path, patterns: &PatternSet, n: usize) -> Option<BTreeMap<IndexSet, u64>> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.n != n || file.patterns != pattern_list(patterns) {
        return None;
    }
    let mut hist = BTreeMap::new();
    let mut total = 0u64;
    for row in file.histogram {
        let s = IndexSet::new(row.peaks, n).ok()?;
        if !s.is_peak_set() {
            return None;
        }
        total += row.count;
        if hist.insert(s, row.count).is_some() {
            return None;
        }
    }
    if total != file.count {
        return None;
    }
    Some(hist)
}

fn store(path: &Path, patterns: &PatternSet, n: usize, hist: &BTreeMap<IndexSet, u64>) {
    let file = CacheFile {
        n,
        patterns: pattern_list(patterns),
        count: hist.values().sum(),
        histogram: hist
            .iter()
            .map(|(s, &count)| CacheRow {
                peaks: s.elements().to_vec(),
                count,
            })
            .collect(),
    };
    if let Some(parent) = path.parent() {
        let _ = fs::create_dir_all(parent);
    }
    if let Ok(text) = serde_json::to_string(&file) {
        let _ = fs::write(path, text);
    }
}

/// Returns the peak-set histogram of `Av_n(patterns)`, consulting the cache
/// directory when one is configured.
pub fn histogram(
    cache_dir: Option<&Path>,
    patterns: &PatternSet,
    n: usize,
) -> BTreeMap<IndexSet, u64> {
    let path = cache_dir.map(|dir| cache_path(dir, patterns, n));
    if let Some(path) = &path {
        if let Some(hist) = load(path, patterns, n) {
            return hist;
        }
    }
    let hist = peak_histogram(patterns, n);
    if let Some(path) = &path {
        store(path, patterns, n, &hist);
    }
    hist
}
