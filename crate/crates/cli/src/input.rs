//! Resolution of the single parameter source a run is allowed to name.

use std::path::PathBuf;

use clap::Args;
use gmorse::config::{ParamsDocument, DEFAULT_HBAR, DEFAULT_MASS};
use gmorse::preset::{PresetArgs, PresetRegistry};
use gmorse::{Error, MorseParams, Result};
use num_complex::Complex64;

#[derive(Args, Debug, Default)]
pub struct ParamArgs {
    /// JSON parameter document (explicit or preset form).
    #[arg(long, global = true, value_name = "FILE")]
    pub params: Option<PathBuf>,

    /// Preset name; the numeric flags below become its arguments.
    #[arg(long, global = true, value_name = "NAME")]
    pub preset: Option<String>,

    #[arg(long = "A", global = true, allow_hyphen_values = true)]
    pub a_upper: Option<f64>,
    #[arg(long = "B", global = true, allow_hyphen_values = true)]
    pub b_upper: Option<f64>,
    #[arg(long = "C", global = true, allow_hyphen_values = true)]
    pub c_upper: Option<f64>,

    /// `re` or `re,im`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub v1: Option<Complex64>,
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub v2: Option<Complex64>,
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub alpha: Option<Complex64>,

    /// Imaginary part of alpha for `pt_imaginary_alpha`.
    #[arg(long = "a", global = true, allow_hyphen_values = true)]
    pub a_lower: Option<f64>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
}

pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got `{text}`")),
    }
}

fn real_only(name: &str, z: Complex64) -> Result<f64> {
    if z.im != 0.0 {
        return Err(Error::InvalidParameter(format!("preset argument `{name}` must be real")));
    }
    Ok(z.re)
}

impl ParamArgs {
    fn numeric_flags(&self) -> Vec<(&'static str, Option<Complex64>)> {
        let re = |v: Option<f64>| v.map(|x| Complex64::new(x, 0.0));
        vec![
            ("A", re(self.a_upper)),
            ("B", re(self.b_upper)),
            ("C", re(self.c_upper)),
            ("a", re(self.a_lower)),
            ("v1", self.v1),
            ("v2", self.v2),
            ("alpha", self.alpha),
        ]
    }

    pub fn resolve(&self) -> Result<MorseParams> {
        let flags = self.numeric_flags();
        let any_numeric = flags.iter().any(|(_, v)| v.is_some());
        let sources = [self.params.is_some(), self.preset.is_some(), any_numeric && self.preset.is_none()];
        match sources.iter().filter(|&&s| s).count() {
            0 => return Err(Error::InvalidParameter("no parameters given: use --params, --preset or --v1/--v2/--alpha".into())),
            1 => {}
            _ => {
                return Err(Error::InvalidParameter(
                    "give exactly one parameter source: --params FILE, --preset NAME, or explicit --v1/--v2/--alpha".into(),
                ))
            }
        }
        let registry = PresetRegistry::default();

        if let Some(path) = &self.params {
            let mut doc = ParamsDocument::from_path(path)?;
            // command-line mass/hbar win over the document
            match &mut doc {
                ParamsDocument::Preset { mass, hbar, .. } | ParamsDocument::Explicit { mass, hbar, .. } => {
                    *mass = self.mass.or(*mass);
                    *hbar = self.hbar.or(*hbar);
                }
            }
            return doc.resolve(&registry);
        }

        let mass = self.mass.unwrap_or(DEFAULT_MASS);
        let hbar = self.hbar.unwrap_or(DEFAULT_HBAR);
        if let Some(name) = &self.preset {
            let mut args = PresetArgs::new();
            for (key, value) in flags {
                if let Some(z) = value {
                    args.insert(key.to_string(), real_only(key, z)?);
                }
            }
            return registry.build(name, &args, mass, hbar);
        }

        if let Some((key, _)) = flags[..4].iter().find(|(_, v)| v.is_some()) {
            return Err(Error::InvalidParameter(format!("--{key} is a preset argument; add --preset")));
        }
        let need = |key: &str, v: Option<Complex64>| v.ok_or_else(|| Error::InvalidParameter(format!("explicit parameters need --{key}")));
        MorseParams::new(
            need("v1", self.v1)?,
            need("v2", self.v2)?,
            need("alpha", self.alpha)?,
            mass,
            hbar,
        )
    }
}
