use std::path::Path;
use std::str::FromStr;

use flexgeom::polymethod::DecompositionConstants;
use flexgeom::{Budget, DividedPower};
use num_rational::BigRational;
use serde::Deserialize;

use crate::{CliError, Format};

/// Settings read from `--config`; every key is optional and command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<Format>,
    pub budget_points: Option<u64>,
    pub budget_lines: Option<u64>,
    pub ext: Option<u32>,
    pub seed: Option<u64>,
    pub field: Option<String>,
    #[serde(alias = "char2-divided-power")]
    pub divided_power: Option<DividedPower>,
    #[serde(default)]
    pub decompose: DecomposeConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct DecomposeConfig {
    pub k: Option<String>,
    pub bucket: Option<String>,
    pub fit: Option<String>,
    pub l_prime: Option<String>,
    pub l_double: Option<String>,
    pub degree_cap: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub budget: Budget,
    pub ext: u32,
    pub seed: u64,
    pub field: Option<String>,
    pub divided_power: DividedPower,
    pub constants: DecompositionConstants,
}

pub fn parse_rational(what: &str, s: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim()).map_err(|_| CliError::Usage(format!("{what}: `{s}` is not a rational number")))
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn constants(&self) -> Result<DecompositionConstants, CliError> {
        let mut c = DecompositionConstants::default();
        let d = &self.decompose;
        if let Some(k) = &d.k {
            c.k = Some(parse_rational("k", k)?);
        }
        for (slot, val, name) in [
            (&mut c.bucket, &d.bucket, "bucket"),
            (&mut c.fit, &d.fit, "fit"),
            (&mut c.l_prime, &d.l_prime, "l-prime"),
            (&mut c.l_double, &d.l_double, "l-double"),
            (&mut c.degree_cap, &d.degree_cap, "degree-cap"),
        ] {
            if let Some(v) = val {
                *slot = parse_rational(name, v)?;
            }
        }
        Ok(c)
    }
}
