//! JSON parameter documents.
//!
//! Two shapes are accepted:
//!
//! ```text
//! {"v1":[re,im],"v2":[re,im],"alpha":[re,im],"mass":m,"hbar":h}
//! {"preset":{"kind":"non_pt_complex","A":2,"B":1,"C":2,"alpha":1},"mass":m,"hbar":h}
//! ```
//!
//! `mass` and `hbar` default to 1/2 and 1 (units with ħ²/2m = 1).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::MorseParams;
use crate::preset::{PresetArgs, PresetRegistry};

pub const DEFAULT_MASS: f64 = 0.5;
pub const DEFAULT_HBAR: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresetSpec {
    pub kind: String,
    #[serde(flatten)]
    pub args: PresetArgs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamsDocument {
    Preset {
        preset: PresetSpec,
        #[serde(default)]
        mass: Option<f64>,
        #[serde(default)]
        hbar: Option<f64>,
    },
    Explicit {
        v1: [f64; 2],
        v2: [f64; 2],
        alpha: [f64; 2],
        #[serde(default)]
        mass: Option<f64>,
        #[serde(default)]
        hbar: Option<f64>,
    },
}

fn pair(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl ParamsDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::invalid(format!(
                "parameter document is neither explicit {{v1,v2,alpha}} nor {{preset}}: {e}"
            ))
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn resolve(&self, registry: &PresetRegistry) -> Result<MorseParams> {
        match self {
            ParamsDocument::Preset { preset, mass, hbar } => registry.build(
                &preset.kind,
                &preset.args,
                mass.unwrap_or(DEFAULT_MASS),
                hbar.unwrap_or(DEFAULT_HBAR),
            ),
            ParamsDocument::Explicit {
                v1,
                v2,
                alpha,
                mass,
                hbar,
            } => MorseParams::new(
                pair(*v1),
                pair(*v2),
                pair(*alpha),
                mass.unwrap_or(DEFAULT_MASS),
                hbar.unwrap_or(DEFAULT_HBAR),
            ),
        }
    }
}

/// Parse and resolve a parameter document with the default preset registry.
pub fn load_params(text: &str) -> Result<MorseParams> {
    ParamsDocument::from_json(text)?.resolve(&PresetRegistry::default())
}
