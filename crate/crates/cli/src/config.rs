use std::path::{Path, PathBuf};

use anyhow::Context as _;
use serde::Deserialize;

use crate::report::Format;

pub const DEFAULT_SEED: u64 = 7;
pub const SEED_ENV: &str = "ANOSOVLAB_SEED";

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub timing: Option<bool>,
}

#[derive(Debug, PartialEq)]
pub struct Settings {
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

pub fn load(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
}

fn env_seed() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => Ok(Some(v.trim().parse().with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer"))?)),
        Err(_) => Ok(None),
    }
}

/// Flags win over the config file, which wins over the environment and the defaults.
pub fn resolve(seed: Option<u64>, format: Option<Format>, output: Option<PathBuf>, timing: bool, config: Option<&Path>) -> anyhow::Result<Settings> {
    let file = config.map(load).transpose()?.unwrap_or_default();
    Ok(Settings {
        seed: match seed.or(file.seed) {
            Some(s) => s,
            None => env_seed()?.unwrap_or(DEFAULT_SEED),
        },
        format: format.or(file.format).unwrap_or(Format::Json),
        output: output.or(file.output),
        timing: timing || file.timing.unwrap_or(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "seed = 11\nformat = \"csv\"\n").unwrap();
        let s = resolve(Some(3), None, None, false, Some(&path)).unwrap();
        assert_eq!((s.seed, s.format), (3, Format::Csv));
        let s = resolve(None, Some(Format::Json), None, false, Some(&path)).unwrap();
        assert_eq!((s.seed, s.format), (11, Format::Json));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "sede = 1\n").unwrap();
        assert!(resolve(None, None, None, false, Some(&path)).is_err());
    }
}
