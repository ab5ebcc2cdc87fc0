//! Physical constants and experimental lepton reference data.
//!
//! Everything downstream is dimensionless; MeV only enters when mass
//! spectra are reported. Defaults follow the current CODATA/PDG rounding
//! and every value can be overridden from a config file or the CLI, so the
//! provenance of each number in a report is explicit.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inverse fine-structure constant 1/α.
pub const DEFAULT_ALPHA_INVERSE: f64 = 137.035999;
/// Electron rest energy mₑc² (MeV).
pub const DEFAULT_ELECTRON_MASS_MEV: f64 = 0.51099895;
/// ℏc (MeV·fm), used only for optional dimensionful reporting.
pub const DEFAULT_HBAR_C_MEV_FM: f64 = 197.3269804;
/// Muon-to-electron mass ratio m_μ/m_e.
pub const DEFAULT_MU_OVER_E: f64 = 206.768283;
/// Tau-to-electron mass ratio m_τ/m_e.
pub const DEFAULT_TAU_OVER_E: f64 = 3477.23;
/// One-sigma uncertainty on m_μ/m_e.
pub const DEFAULT_MU_OVER_E_UNCERTAINTY: f64 = 4.6e-6;
/// One-sigma uncertainty on m_τ/m_e (dominated by the τ mass).
pub const DEFAULT_TAU_OVER_E_UNCERTAINTY: f64 = 0.23;

/// Fundamental constants used by the spectral and mass-spectrum modules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub alpha_inverse: f64,
    pub electron_mass_mev: f64,
    pub hbar_c: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            alpha_inverse: DEFAULT_ALPHA_INVERSE,
            electron_mass_mev: DEFAULT_ELECTRON_MASS_MEV,
            hbar_c: DEFAULT_HBAR_C_MEV_FM,
        }
    }
}

/// Experimental lepton mass ratios the spectra are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalLeptons {
    pub mu_over_e: f64,
    pub tau_over_e: f64,
    pub mu_uncertainty: f64,
    pub tau_uncertainty: f64,
}

impl Default for ExperimentalLeptons {
    fn default() -> Self {
        ExperimentalLeptons {
            mu_over_e: DEFAULT_MU_OVER_E,
            tau_over_e: DEFAULT_TAU_OVER_E,
            mu_uncertainty: DEFAULT_MU_OVER_E_UNCERTAINTY,
            tau_uncertainty: DEFAULT_TAU_OVER_E_UNCERTAINTY,
        }
    }
}

fn check_positive(key: &str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::config(format!("{key} must be finite, got {value}")));
    }
    if value <= 0.0 {
        return Err(Error::config(format!(
            "{key} must be positive, got {value}"
        )));
    }
    Ok(value)
}

/// Build [`PhysicalConstants`] from defaults plus an override map.
///
/// Recognized keys: `alpha_inverse`, `electron_mass_mev`, `hbar_c`.
pub fn load_constants(overrides: &BTreeMap<String, f64>) -> Result<PhysicalConstants> {
    let mut c = PhysicalConstants::default();
    for (key, &value) in overrides {
        match key.as_str() {
            "alpha_inverse" => c.alpha_inverse = check_positive(key, value)?,
            "electron_mass_mev" => c.electron_mass_mev = check_positive(key, value)?,
            "hbar_c" => c.hbar_c = check_positive(key, value)?,
            other => return Err(Error::config(format!("unknown constants key `{other}`"))),
        }
    }
    Ok(c)
}

/// Build [`ExperimentalLeptons`] from defaults plus an override map.
///
/// Recognized keys: `mu_over_e`, `tau_over_e`, `mu_uncertainty`,
/// `tau_uncertainty`. Ratios must exceed 1, uncertainties must be ≥ 0.
pub fn reference_leptons(overrides: &BTreeMap<String, f64>) -> Result<ExperimentalLeptons> {
    let mut r = ExperimentalLeptons::default();
    for (key, &value) in overrides {
        if !value.is_finite() {
            return Err(Error::config(format!("{key} must be finite, got {value}")));
        }
        match key.as_str() {
            "mu_over_e" | "tau_over_e" => {
                if value <= 1.0 {
                    return Err(Error::config(format!(
                        "{key}: ratio must exceed 1, got {value}"
                    )));
                }
                if key == "mu_over_e" {
                    r.mu_over_e = value;
                } else {
                    r.tau_over_e = value;
                }
            }
            "mu_uncertainty" | "tau_uncertainty" => {
                if value < 0.0 {
                    return Err(Error::config(format!("{key} must be >= 0, got {value}")));
                }
                if key == "mu_uncertainty" {
                    r.mu_uncertainty = value;
                } else {
                    r.tau_uncertainty = value;
                }
            }
            other => return Err(Error::config(format!("unknown reference key `{other}`"))),
        }
    }
    Ok(r)
}

/// Optional `constants.toml` contents. Missing keys fall back to defaults.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
pub struct ConfigFile {
    pub alpha_inverse: Option<f64>,
    pub electron_mass_mev: Option<f64>,
    pub mu_over_e: Option<f64>,
    pub tau_over_e: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(format!("config parse failure: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Split into the override maps consumed by [`load_constants`] and
    /// [`reference_leptons`].
    pub fn into_overrides(self) -> (BTreeMap<String, f64>, BTreeMap<String, f64>) {
        let mut constants = BTreeMap::new();
        let mut leptons = BTreeMap::new();
        if let Some(v) = self.alpha_inverse {
            constants.insert("alpha_inverse".to_string(), v);
        }
        if let Some(v) = self.electron_mass_mev {
            constants.insert("electron_mass_mev".to_string(), v);
        }
        if let Some(v) = self.mu_over_e {
            leptons.insert("mu_over_e".to_string(), v);
        }
        if let Some(v) = self.tau_over_e {
            leptons.insert("tau_over_e".to_string(), v);
        }
        (constants, leptons)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn defaults_match_reference_data() {
        let c = load_constants(&BTreeMap::new()).unwrap();
        assert_eq!(c.alpha_inverse, 137.035999);
        assert_eq!(c.electron_mass_mev, 0.51099895);
        let r = reference_leptons(&BTreeMap::new()).unwrap();
        assert_eq!(r.mu_over_e, 206.768283);
        assert_eq!(r.tau_over_e, 3477.23);
        assert!(r.mu_uncertainty >= 0.0 && r.tau_uncertainty >= 0.0);
    }

    #[test]
    fn override_passthrough() {
        let c = load_constants(&map(&[("alpha_inverse", 137.0)])).unwrap();
        assert_eq!(c.alpha_inverse, 137.0);
        assert_eq!(c.electron_mass_mev, 0.51099895);
    }

    #[test]
    fn negative_alpha_rejected() {
        let err = load_constants(&map(&[("alpha_inverse", -1.0)])).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("alpha_inverse") && msg.contains("positive"),
            "{msg}"
        );
    }

    #[test]
    fn nonfinite_rejected() {
        assert!(load_constants(&map(&[("alpha_inverse", f64::NAN)])).is_err());
        assert!(load_constants(&map(&[("electron_mass_mev", f64::INFINITY)])).is_err());
    }

    #[test]
    fn unknown_key_rejected() {
        let err = load_constants(&map(&[("alpha", 137.0)])).unwrap_err();
        assert!(err.to_string().contains("alpha"));
    }

    #[test]
    fn ratio_below_one_rejected() {
        let err = reference_leptons(&map(&[("mu_over_e", 0.5)])).unwrap_err();
        assert!(err.to_string().contains("exceed 1"), "{err}");
    }

    #[test]
    fn negative_uncertainty_rejected() {
        let err = reference_leptons(&map(&[("tau_uncertainty", -0.1)])).unwrap_err();
        assert!(err.to_string().contains(">= 0"), "{err}");
        let r = reference_leptons(&map(&[("mu_uncertainty", 1e-5)])).unwrap();
        assert_eq!(r.mu_uncertainty, 1e-5);
    }

    #[test]
    fn purity() {
        let o = map(&[("alpha_inverse", 137.0)]);
        assert_eq!(load_constants(&o).unwrap(), load_constants(&o).unwrap());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let c = PhysicalConstants::default();
        let text = serde_json::to_string(&c).unwrap();
        let back: PhysicalConstants = serde_json::from_str(&text).unwrap();
        assert_eq!(c.alpha_inverse.to_bits(), back.alpha_inverse.to_bits());
        assert_eq!(
            c.electron_mass_mev.to_bits(),
            back.electron_mass_mev.to_bits()
        );
        assert_eq!(c.hbar_c.to_bits(), back.hbar_c.to_bits());
    }

    #[test]
    fn toml_config_round_trip() {
        let cfg = ConfigFile::parse("alpha_inverse = 137.0\nmu_over_e = 206.77\n").unwrap();
        let (cmap, lmap) = cfg.into_overrides();
        let c = load_constants(&cmap).unwrap();
        let r = reference_leptons(&lmap).unwrap();
        assert_eq!(c.alpha_inverse, 137.0);
        assert_eq!(r.mu_over_e, 206.77);
        assert_eq!(r.tau_over_e, DEFAULT_TAU_OVER_E);
    }

    #[test]
    fn malformed_toml_rejected() {
        assert!(ConfigFile::parse("alpha_inverse = \"x\"").is_err());
    }
}
