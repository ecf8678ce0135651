//! Disk cache for optimized phase-factor artifacts.
//!
//! Optimizing a degree-64 sequence takes tens of seconds, so runs that need
//! phase factors first look for a cached text artifact keyed by the full
//! fitting recipe: `(deviation budget, band width, degree, fit grid size,
//! seed)`. Any change to one of those inputs lands on a different key, and
//! a loaded artifact is re-verified against the requested recipe before use
//! so a stale or hand-edited file can never masquerade as a fresh fit.

use std::fs;
use std::path::PathBuf;

use qpelab::qsp::{optimize_phases, OptimizedPhases, FIT_GRID_POINTS};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "QPELAB_CACHE_DIR";

/// Default cache directory, resolved relative to the working directory.
pub const DEFAULT_CACHE_DIR: &str = ".qpelab-cache";

/// Resolves the cache directory: `$QPELAB_CACHE_DIR` if set, else
/// [`DEFAULT_CACHE_DIR`].
pub fn cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

/// Cache file name for one fitting recipe. Human-readable on purpose: the
/// key doubles as provenance when inspecting the cache by hand.
pub fn cache_key(degree: usize, delta: f64, kappa: f64, seed: u64) -> String {
    format!(
        "phases_d{degree}_delta{delta:e}_kappa{kappa:e}_grid{FIT_GRID_POINTS}_seed{seed}.txt"
    )
}

/// Outcome of a cache lookup, for user-facing status lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    /// Artifact loaded from disk and verified against the recipe.
    Hit,
    /// Freshly optimized (and stored when the cache directory is writable).
    Miss,
}

/// Loads phase factors for the recipe, optimizing and caching on a miss.
///
/// A cached artifact whose recorded recipe disagrees with the request is
/// ignored and rebuilt. Failure to persist the artifact is not fatal — the
/// optimized result is still returned — because the cache is an
/// accelerator, not a correctness requirement.
pub fn load_or_optimize(
    degree: usize,
    delta: f64,
    kappa: f64,
    seed: u64,
) -> Result<(OptimizedPhases, CacheStatus), String> {
    let dir = cache_dir();
    let path = dir.join(cache_key(degree, delta, kappa, seed));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(cached) = OptimizedPhases::from_text(&text) {
            if cached.degree == degree && cached.delta == delta && cached.kappa == kappa {
                return Ok((cached, CacheStatus::Hit));
            }
        }
        eprintln!(
            "warning: ignoring stale cache artifact {} (recipe mismatch)",
            path.display()
        );
    }
    let result = optimize_phases(degree, delta, kappa, seed)
        .map_err(|e| format!("phase optimization failed: {e}"))?;
    if fs::create_dir_all(&dir).is_ok() {
        if let Err(e) = fs::write(&path, result.to_text()) {
            eprintln!("warning: could not cache phases at {}: {e}", path.display());
        }
    }
    Ok((result, CacheStatus::Miss))
}
