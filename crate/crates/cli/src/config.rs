use std::path::PathBuf;

/// Largest truncation the commands accept; the θ-exponent calibration covers
/// structure constants up to this total degree.
pub const MAX_SIZE_CAP: usize = 6;
pub const DEFAULT_MAX_SIZE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub cache_path: Option<PathBuf>,
    pub max_size: usize,
    pub num_threads: Option<usize>,
    pub output: OutputFormat,
}

/// `QTREP_CACHE` when set, otherwise the flag, otherwise the user cache dir.
/// An empty `QTREP_CACHE` disables caching.
pub fn resolve_cache_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    if let Some(env) = std::env::var_os("QTREP_CACHE") {
        return (!env.is_empty()).then(|| PathBuf::from(env));
    }
    flag.or_else(default_cache_path)
}

fn default_cache_path() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("qtrep").join("constants.bin"))
}
