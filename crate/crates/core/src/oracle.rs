//! Validity oracles: total maps `f: [0, 2^n) -> [0, 2^n)` whose zero set
//! marks the collision-inducing candidates.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::table::TypeITable;

/// Allocation guard for the dense oracle table.
const MAX_ORACLE_WIDTH: u32 = 30;

/// How to construct an oracle for an `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleSpec {
    /// Marks index zero only: `f(0) = 0`, `f(z) = z` otherwise.
    Toy,
    /// The type-I starting-point table on a 5-qubit register.
    Table,
    /// Explicit `input output` pairs from a text file.
    File(PathBuf),
}

/// Dense evaluation table for a validity oracle.
///
/// Total on `[0, 2^n)` with outputs in the same range; the valid set is
/// exactly the preimage of zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityOracle {
    width: u32,
    values: Vec<u64>,
}

impl ValidityOracle {
    /// Toy oracle: zero is the only valid candidate.
    pub fn toy(width: u32) -> Result<Self> {
        check_width(width)?;
        let dim = 1u64 << width;
        let values = (0..dim).collect();
        Ok(Self { width, values })
    }

    /// Oracle from the type-I table: `f(l) = start(l)` for the eighteen
    /// table lines, identity elsewhere. Requires a 5-qubit register.
    pub fn from_table(table: &TypeITable, width: u32) -> Result<Self> {
        if width != 5 {
            return Err(Error::TableWidth { got: width });
        }
        let dim = 1u64 << width;
        let mut values: Vec<u64> = (0..dim).collect();
        for &(line, start) in table.entries() {
            values[line as usize] = start;
        }
        Ok(Self { width, values })
    }

    /// Oracle from explicit `(input, output)` pairs. Unlisted inputs default
    /// to `f(z) = z` for nonzero `z`; an unlisted zero maps to one, so only
    /// explicitly listed zero-valued entries are valid.
    pub fn from_pairs(pairs: &[(u64, u64)], width: u32) -> Result<Self> {
        check_width(width)?;
        let dim = 1u64 << width;
        let mut values: Vec<u64> = (0..dim).collect();
        values[0] = 1;
        let mut seen = vec![false; dim as usize];
        for &(input, output) in pairs {
            if input >= dim {
                return Err(Error::OracleDomain { input, width });
            }
            if output >= dim {
                return Err(Error::OracleRange {
                    input,
                    value: output,
                    width,
                });
            }
            if seen[input as usize] {
                return Err(Error::DuplicateOracleEntry { input });
            }
            seen[input as usize] = true;
            values[input as usize] = output;
        }
        Ok(Self { width, values })
    }

    /// Oracle from a text file: one `input output` record per line as
    /// unsigned decimals, lines starting with `#` are comments.
    pub fn from_file(path: &Path, width: u32) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::OracleIo {
            path: path.display().to_string(),
            source,
        })?;
        let pairs = parse_oracle_text(&text)?;
        Self::from_pairs(&pairs, width)
    }

    /// Construct from an [`OracleSpec`].
    pub fn from_spec(spec: &OracleSpec, width: u32) -> Result<Self> {
        match spec {
            OracleSpec::Toy => Self::toy(width),
            OracleSpec::Table => Self::from_table(crate::table::type_i_table(), width),
            OracleSpec::File(path) => Self::from_file(path, width),
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// `f(input)`.
    pub fn eval(&self, input: u64) -> Result<u64> {
        self.values
            .get(input as usize)
            .copied()
            .ok_or(Error::OracleDomain {
                input,
                width: self.width,
            })
    }

    /// Whether `input` is collision-inducing, i.e. `f(input) = 0`.
    pub fn is_valid(&self, input: u64) -> bool {
        self.values.get(input as usize) == Some(&0)
    }

    /// The valid set `f^{-1}(0)`, ascending.
    pub fn valid_indices(&self) -> Vec<u64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0)
            .map(|(i, _)| i as u64)
            .collect()
    }
}

fn check_width(width: u32) -> Result<()> {
    if width == 0 || width > MAX_ORACLE_WIDTH {
        return Err(Error::Capacity {
            requested: width,
            limit: MAX_ORACLE_WIDTH,
        });
    }
    Ok(())
}

fn parse_oracle_text(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut pairs = Vec::new();
    let mut seen = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |field: Option<&str>, lineno: usize| -> Result<u64> {
            field
                .ok_or_else(|| Error::OracleParse {
                    line: lineno + 1,
                    message: "expected two fields: input and output".into(),
                })?
                .parse::<u64>()
                .map_err(|e| Error::OracleParse {
                    line: lineno + 1,
                    message: e.to_string(),
                })
        };
        let input = parse(fields.next(), lineno)?;
        let output = parse(fields.next(), lineno)?;
        if fields.next().is_some() {
            return Err(Error::OracleParse {
                line: lineno + 1,
                message: "trailing fields after the output value".into(),
            });
        }
        if seen.insert(input, output).is_some() {
            return Err(Error::DuplicateOracleEntry { input });
        }
        pairs.push((input, output));
    }
    Ok(pairs)
}
