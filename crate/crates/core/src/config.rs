//! Constellation description files (TOML, flat key/value).
//!
//! ```toml
//! n1 = 18
//! n2 = 36
//! F = 2
//! altitude_km = 1190
//! polar_threshold_deg = 70
//! ```

use serde::{Deserialize, Serialize};

use crate::angle::rad;
use crate::constellation::ConstellationConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default = "defaults::n1")]
    pub n1: usize,
    #[serde(default = "defaults::n2")]
    pub n2: usize,
    #[serde(default, rename = "F", alias = "f")]
    pub phasing: usize,
    #[serde(default = "defaults::altitude_km")]
    pub altitude_km: f64,
    #[serde(default = "defaults::inclination_deg")]
    pub inclination_deg: f64,
    #[serde(default = "defaults::polar_threshold_deg")]
    pub polar_threshold_deg: f64,
    #[serde(default)]
    pub raan0_deg: f64,
    /// Defaults to `-polar_threshold_deg`.
    #[serde(default)]
    pub phase0_deg: Option<f64>,
}

mod defaults {
    pub fn n1() -> usize {
        18
    }
    pub fn n2() -> usize {
        36
    }
    pub fn altitude_km() -> f64 {
        1190.0
    }
    pub fn inclination_deg() -> f64 {
        90.0
    }
    pub fn polar_threshold_deg() -> f64 {
        70.0
    }
}

impl Default for ConfigFile {
    fn default() -> Self {
        ConfigFile {
            n1: defaults::n1(),
            n2: defaults::n2(),
            phasing: 0,
            altitude_km: defaults::altitude_km(),
            inclination_deg: defaults::inclination_deg(),
            polar_threshold_deg: defaults::polar_threshold_deg(),
            raan0_deg: 0.0,
            phase0_deg: None,
        }
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            // name the offending key when the error points into a value
            let key = e.span().and_then(|span| {
                let line = text[..span.start].rsplit('\n').next()?;
                let (key, _) = line.split_once('=')?;
                Some(key.trim().to_string())
            });
            match key {
                Some(k) => Error::Parse(format!("{k}: {}", e.message())),
                None => Error::Parse(e.message().to_string()),
            }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat struct always serialises")
    }

    pub fn build(&self) -> Result<ConstellationConfig> {
        let mut c = ConstellationConfig::new(
            self.n1,
            self.n2,
            self.phasing,
            self.altitude_km * 1000.0,
            rad(self.polar_threshold_deg),
        )?
        .with_inclination(rad(self.inclination_deg))?
        .with_raan0(rad(self.raan0_deg));
        if let Some(p) = self.phase0_deg {
            c = c.with_phase0(rad(p));
        }
        Ok(c)
    }
}

pub fn load_config(text: &str) -> Result<ConstellationConfig> {
    ConfigFile::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_alias() {
        let c = load_config("f = 2\n").unwrap();
        assert_eq!((c.planes, c.per_plane, c.phasing), (18, 36, 2));
        assert_eq!(c.phase0, -c.polar_threshold);
        let c = load_config("F = 3\nn1 = 6\nn2 = 12\nphase0_deg = 0\n").unwrap();
        assert_eq!((c.planes, c.phasing, c.phase0), (6, 3, 0.0));
    }

    #[test]
    fn errors_name_the_field() {
        let e = load_config("n1 = 1\n").unwrap_err();
        assert!(matches!(e, Error::Config { field: "n1", .. }), "{e}");
        let e = load_config("n3 = 1\n").unwrap_err();
        assert!(e.to_string().contains("n3"), "{e}");
        let e = load_config("n2 = 4\nn1 = \"x\"\n").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.starts_with("n1:")), "{e}");
    }

    #[test]
    fn round_trip() {
        let f = ConfigFile {
            phasing: 5,
            phase0_deg: Some(-64.0),
            ..ConfigFile::default()
        };
        assert_eq!(ConfigFile::parse(&f.to_toml()).unwrap(), f);
    }
}
