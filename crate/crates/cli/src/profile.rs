//! Flat key = value profile files for overriding the built-in constants and
//! device parameters.
//!
//! Recognised keys (any subset; missing keys keep their defaults):
//!   p_th        threshold error rate (probability)
//!   C1          cell-failure prefactor
//!   C2          cell-failure rescaling factor
//!   T_ns        cluster-layer preparation time, nanoseconds
//!   M_mm        photonic-module edge length, millimeters
//!   cf_m_per_s  speed of light in fiber, meters per second
//!
//! Lines starting with '#' and blank lines are ignored. The file given with
//! --profile wins over the SHORCOST_PROFILE environment variable.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use shorcost_core::{HardwareProfile, PhysicalConstants};

#[derive(Debug, Clone, Copy)]
pub struct Profile {
    pub constants: PhysicalConstants,
    pub hardware: HardwareProfile,
}

impl Default for Profile {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            hardware: HardwareProfile::default(),
        }
    }
}

pub const ENV_VAR: &str = "SHORCOST_PROFILE";

pub fn load(explicit: Option<&Path>) -> anyhow::Result<Profile> {
    let path: Option<PathBuf> = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from));
    let Some(path) = path else {
        return Ok(Profile::default());
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading profile {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing profile {}", path.display()))
}

pub fn parse(text: &str) -> anyhow::Result<Profile> {
    let mut profile = Profile::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected `key = value`, got `{raw}`", lineno + 1);
        };
        let key = key.trim();
        let value: f64 = value
            .trim()
            .parse()
            .with_context(|| format!("line {}: value of `{key}` is not a number", lineno + 1))?;
        match key {
            "p_th" => profile.constants.p_th = value,
            "C1" => profile.constants.c1 = value,
            "C2" => profile.constants.c2 = value,
            "T_ns" => profile.hardware.layer_time_s = value * 1e-9,
            "M_mm" => profile.hardware.module_edge_m = value * 1e-3,
            "cf_m_per_s" => profile.hardware.fiber_speed_m_per_s = value,
            _ => bail!("line {}: unknown key `{key}`", lineno + 1),
        }
    }
    profile.constants.validate()?;
    profile.hardware.validate()?;
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_when_empty() {
        let p = parse("").unwrap();
        assert_eq!(p.constants, PhysicalConstants::default());
        assert_eq!(p.hardware, HardwareProfile::default());
    }

    #[test]
    fn parses_all_keys_with_unit_conversion() {
        let p = parse(
            "# device profile\n\
             p_th = 0.01\n\
             C1 = 0.2\n\
             C2 = 0.5\n\
             T_ns = 20\n\
             M_mm = 5\n\
             cf_m_per_s = 1.5e8\n",
        )
        .unwrap();
        assert_eq!(p.constants.p_th, 0.01);
        assert_eq!(p.constants.c1, 0.2);
        assert_eq!(p.constants.c2, 0.5);
        assert_eq!(p.hardware.layer_time_s, 20e-9);
        assert_eq!(p.hardware.module_edge_m, 5e-3);
        assert_eq!(p.hardware.fiber_speed_m_per_s, 1.5e8);
    }

    #[test]
    fn rejects_unknown_keys_and_junk() {
        assert!(parse("p_thh = 0.01").is_err());
        assert!(parse("p_th 0.01").is_err());
        assert!(parse("p_th = fast").is_err());
        assert!(parse("p_th = 2.0").is_err());
    }
}
