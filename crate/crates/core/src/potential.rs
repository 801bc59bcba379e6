//! Generalized Morse potential `V(x) = v1·exp(−2αx) − v2·exp(−αx)` over
//! complex strengths and width.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of probe points in the default classification grid.
pub const DEFAULT_PROBE_COUNT: usize = 41;
/// Half-width of the default probe window in units of `1/|α|`.
pub const DEFAULT_PROBE_HALF_WIDTH: f64 = 5.0;
/// Default classification tolerance, relative to `max |V|` on the probes.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-10;

/// A single generalized Morse model instance.
///
/// Construction validates the parameters, so every other operation in the
/// crate may assume `mass > 0`, `hbar > 0`, `alpha ≠ 0` and `v1 ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MorseParams {
    v1: Complex64,
    v2: Complex64,
    alpha: Complex64,
    mass: f64,
    hbar: f64,
}

impl MorseParams {
    pub fn new(
        v1: Complex64,
        v2: Complex64,
        alpha: Complex64,
        mass: f64,
        hbar: f64,
    ) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid(format!("mass must be finite and > 0, got {mass}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid(format!("hbar must be finite and > 0, got {hbar}")));
        }
        for (name, value) in [("v1", v1), ("v2", v2), ("alpha", alpha)] {
            if !value.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite, got {value}")));
            }
        }
        if alpha == Complex64::new(0.0, 0.0) {
            return Err(Error::invalid("alpha must be nonzero"));
        }
        if v1 == Complex64::new(0.0, 0.0) {
            return Err(Error::invalid("v1 must be nonzero (v1 = 0 has no oscillator map)"));
        }
        Ok(Self { v1, v2, alpha, mass, hbar })
    }

    /// Real-parameter convenience constructor.
    pub fn real(v1: f64, v2: f64, alpha: f64, mass: f64, hbar: f64) -> Result<Self> {
        Self::new(v1.into(), v2.into(), alpha.into(), mass, hbar)
    }

    pub fn v1(&self) -> Complex64 {
        self.v1
    }

    pub fn v2(&self) -> Complex64 {
        self.v2
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// True when every parameter is real, so the Hamiltonian is Hermitian.
    pub fn is_real(&self) -> bool {
        self.v1.im == 0.0 && self.v2.im == 0.0 && self.alpha.im == 0.0
    }

    /// `V(x)`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let e = (-self.alpha * x).exp();
        self.v1 * e * e - self.v2 * e
    }

    /// `dV/dx`.
    pub fn derivative(&self, x: f64) -> Complex64 {
        let e = (-self.alpha * x).exp();
        self.alpha * (self.v2 * e - 2.0 * self.v1 * e * e)
    }

    /// Position and value of the well minimum for a real potential with
    /// `v1 > 0`, `v2 > 0`. `None` otherwise (no interior minimum).
    pub fn minimum(&self) -> Option<(f64, f64)> {
        if !self.is_real() || self.v1.re <= 0.0 || self.v2.re <= 0.0 {
            return None;
        }
        let (v1, v2, alpha) = (self.v1.re, self.v2.re, self.alpha.re);
        // exp(−αx) = v2 / (2 v1) at the stationary point
        let x = -(v2 / (2.0 * v1)).ln() / alpha;
        Some((x, -v2 * v2 / (4.0 * v1)))
    }

    /// Classical Morse Hamiltonian `px²/2m + V(x)`.
    pub fn hamiltonian(&self, x: f64, px: f64) -> Complex64 {
        px * px / (2.0 * self.mass) + self.eval(x)
    }
}

/// Hermiticity / PT classification of a potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    Hermitian,
    PTSymmetric,
    NonPTNonHermitian,
}

impl SymmetryClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymmetryClass::Hermitian => "Hermitian",
            SymmetryClass::PTSymmetric => "PTSymmetric",
            SymmetryClass::NonPTNonHermitian => "NonPTNonHermitian",
        }
    }
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `DEFAULT_PROBE_COUNT` points uniform on `[−5/|α|, 5/|α|]`.
pub fn default_probes(params: &MorseParams) -> Vec<f64> {
    let half = DEFAULT_PROBE_HALF_WIDTH / params.alpha().norm();
    let n = DEFAULT_PROBE_COUNT;
    (0..n)
        .map(|i| {
            // symmetric construction keeps x and −x bitwise opposite
            let k = i as f64 - ((n - 1) / 2) as f64;
            half * k / ((n - 1) / 2) as f64
        })
        .collect()
}

/// Classify with absolute tolerance `tol` on the given probe set.
///
/// Hermitian wins when `max |Im V| ≤ tol`; otherwise PT symmetry is tested
/// through `max |conj(V(−x)) − V(x)| ≤ tol`.
pub fn classify_symmetry(params: &MorseParams, probes: &[f64], tol: f64) -> Result<SymmetryClass> {
    if probes.is_empty() {
        return Err(Error::precondition("probe set is empty"));
    }
    if !(tol > 0.0) {
        return Err(Error::precondition(format!("tolerance must be > 0, got {tol}")));
    }
    let scale = probes.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    for &x in probes {
        let mirrored = probes
            .iter()
            .any(|&y| (x + y).abs() <= 1e-12 * scale.max(1.0));
        if !mirrored {
            return Err(Error::precondition(format!(
                "probe set is not symmetric about 0: {x} has no mirror"
            )));
        }
    }

    let max_imag = probes
        .iter()
        .map(|&x| params.eval(x).im.abs())
        .fold(0.0, f64::max);
    if max_imag <= tol {
        return Ok(SymmetryClass::Hermitian);
    }
    let max_pt = probes
        .iter()
        .map(|&x| (params.eval(-x).conj() - params.eval(x)).norm())
        .fold(0.0, f64::max);
    if max_pt <= tol {
        Ok(SymmetryClass::PTSymmetric)
    } else {
        Ok(SymmetryClass::NonPTNonHermitian)
    }
}

/// Classify on the default probe grid with tolerance `1e−10·max|V|`.
pub fn classify_default(params: &MorseParams) -> SymmetryClass {
    let probes = default_probes(params);
    let peak = probes
        .iter()
        .map(|&x| params.eval(x).norm())
        .fold(0.0, f64::max);
    let tol = DEFAULT_SYMMETRY_TOL * peak.max(f64::MIN_POSITIVE);
    classify_symmetry(params, &probes, tol).expect("default probes are symmetric and nonempty")
}
