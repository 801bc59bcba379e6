//! Named parameter presets for the three symmetry families.
//!
//! Every preset implements [`Preset`] and is looked up by name through a
//! [`PresetRegistry`]; the CLI and the JSON loader both resolve `kind`
//! strings here.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::MorseParams;

/// Named real inputs of a preset (`v1`, `a`, `A`, ...). Keys are
/// case-sensitive: `A` and `a` are different parameters.
pub type PresetArgs = BTreeMap<String, f64>;

pub trait Preset: Send + Sync {
    fn name(&self) -> &'static str;

    /// Names of the real inputs this preset consumes.
    fn keys(&self) -> &'static [&'static str];

    fn build(&self, args: &PresetArgs, mass: f64, hbar: f64) -> Result<MorseParams>;
}

fn take(args: &PresetArgs, preset: &str, key: &str) -> Result<f64> {
    args.get(key)
        .copied()
        .ok_or_else(|| Error::invalid(format!("preset `{preset}` requires `{key}`")))
}

fn check_keys(preset: &dyn Preset, args: &PresetArgs) -> Result<()> {
    if let Some(extra) = args.keys().find(|k| !preset.keys().contains(&k.as_str())) {
        return Err(Error::invalid(format!(
            "preset `{}` does not take `{extra}` (expects {})",
            preset.name(),
            preset.keys().join(", ")
        )));
    }
    Ok(())
}

/// All-real parameters, passed through unchanged.
pub struct Hermitian;

impl Preset for Hermitian {
    fn name(&self) -> &'static str {
        "hermitian"
    }

    fn keys(&self) -> &'static [&'static str] {
        &["v1", "v2", "alpha"]
    }

    fn build(&self, args: &PresetArgs, mass: f64, hbar: f64) -> Result<MorseParams> {
        check_keys(self, args)?;
        let v1 = take(args, self.name(), "v1")?;
        let v2 = take(args, self.name(), "v2")?;
        let alpha = take(args, self.name(), "alpha")?;
        MorseParams::real(v1, v2, alpha, mass, hbar)
    }
}

/// Real strengths with a purely imaginary width `alpha = i·a`.
pub struct PtImaginaryAlpha;

impl Preset for PtImaginaryAlpha {
    fn name(&self) -> &'static str {
        "pt_imaginary_alpha"
    }

    fn keys(&self) -> &'static [&'static str] {
        &["v1", "v2", "a"]
    }

    fn build(&self, args: &PresetArgs, mass: f64, hbar: f64) -> Result<MorseParams> {
        check_keys(self, args)?;
        let v1 = take(args, self.name(), "v1")?;
        let v2 = take(args, self.name(), "v2")?;
        let a = take(args, self.name(), "a")?;
        MorseParams::new(v1.into(), v2.into(), Complex64::new(0.0, a), mass, hbar)
    }
}

/// `v1 = (A + iB)²`, `v2 = (2C + 1)(A + iB)` with real `alpha`.
pub struct NonPtComplex;

impl Preset for NonPtComplex {
    fn name(&self) -> &'static str {
        "non_pt_complex"
    }

    fn keys(&self) -> &'static [&'static str] {
        &["A", "B", "C", "alpha"]
    }

    fn build(&self, args: &PresetArgs, mass: f64, hbar: f64) -> Result<MorseParams> {
        check_keys(self, args)?;
        let a = take(args, self.name(), "A")?;
        let b = take(args, self.name(), "B")?;
        let c = take(args, self.name(), "C")?;
        let alpha = take(args, self.name(), "alpha")?;
        let z = Complex64::new(a, b);
        MorseParams::new(z * z, (2.0 * c + 1.0) * z, alpha.into(), mass, hbar)
    }
}

#[derive(Clone)]
pub struct PresetRegistry {
    presets: BTreeMap<&'static str, Arc<dyn Preset>>,
}

impl PresetRegistry {
    pub fn empty() -> Self {
        Self {
            presets: BTreeMap::new(),
        }
    }

    pub fn register<P: Preset + 'static>(&mut self, preset: P) {
        self.presets.insert(preset.name(), Arc::new(preset));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Preset>> {
        self.presets
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                family: "preset",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.presets.keys().copied().collect()
    }

    pub fn build(&self, name: &str, args: &PresetArgs, mass: f64, hbar: f64) -> Result<MorseParams> {
        self.get(name)?.build(args, mass, hbar)
    }
}

impl Default for PresetRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Hermitian);
        reg.register(PtImaginaryAlpha);
        reg.register(NonPtComplex);
        reg
    }
}

/// Build a preset from the default registry.
pub fn make_preset(kind: &str, args: &PresetArgs, mass: f64, hbar: f64) -> Result<MorseParams> {
    PresetRegistry::default().build(kind, args, mass, hbar)
}

/// Helper for literal argument lists: `args(&[("v1", 1.0), ...])`.
pub fn args(pairs: &[(&str, f64)]) -> PresetArgs {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}
