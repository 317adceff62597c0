//! Key-value config files: `key = value` lines with `#` comments, keys
//! mirroring the long flag names. Values merge under explicit flags.

use std::path::Path;

use crate::{BenchArgs, CliError, SimulateArgs};

const KNOWN_KEYS: &[&str] = &[
    "n", "oracle", "m", "t", "trace", "format", "full-dist", "shots", "seed", "reps",
];

pub struct ConfigFile {
    entries: Vec<(String, String)>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected key = value",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {key:?}",
                    lineno + 1
                )));
            }
            entries.push((key, value));
        }
        Ok(Self { entries })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::Usage(format!("config key {key:?}: invalid value {raw:?}"))
            }),
        }
    }

    pub fn merge_simulate(&self, args: &mut SimulateArgs) -> Result<(), CliError> {
        if args.n.is_none() {
            args.n = self.parsed("n")?;
        }
        if args.oracle.is_none() {
            args.oracle = self.get("oracle").map(str::to_string);
        }
        if args.m.is_none() {
            args.m = self.parsed("m")?;
        }
        if args.t.is_none() {
            args.t = self.parsed("t")?;
        }
        if args.trace.is_none() {
            args.trace = self.get("trace").map(std::path::PathBuf::from);
        }
        if args.format.is_none() {
            args.format = self.get("format").map(str::to_string);
        }
        if !args.full_dist {
            args.full_dist = self.parsed::<bool>("full-dist")?.unwrap_or(false);
        }
        if args.shots.is_none() {
            args.shots = self.parsed("shots")?;
        }
        if args.seed.is_none() {
            args.seed = self.parsed("seed")?;
        }
        Ok(())
    }

    pub fn merge_bench(&self, args: &mut BenchArgs) -> Result<(), CliError> {
        if args.n.is_none() {
            args.n = self.parsed("n")?;
        }
        if args.reps.is_none() {
            args.reps = self.parsed("reps")?;
        }
        if args.format.is_none() {
            args.format = self.get("format").map(str::to_string);
        }
        Ok(())
    }
}
