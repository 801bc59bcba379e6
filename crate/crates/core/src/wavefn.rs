//! Bound-state wave functions
//! `ψ_n(x) = N · z^{s_n} · exp(−z/2) · L_n^{(2 s_n)}(z)` with
//! `z = z0·exp(−αx)` and `z0 = 2 sqrt(2 m v1)/(αħ)`.
//!
//! The power `z^{s}` is taken as `exp(s·(ln z0 − αx))`, i.e. the principal
//! logarithm of `z0` continued along `x`. For imaginary `α` the point `z`
//! circles the origin and a principal `Log z` would jump across the cut.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::numeric::quadrature::{integrate, QuadConfig};
use crate::potential::MorseParams;
use crate::spectrum::EnergyLevel;

/// Above this `Re z` the factor `exp(−z/2)` leaves double range.
pub const UNDERFLOW_RE_Z: f64 = 700.0;
/// Tail cut for the normalization window, relative to the peak of `|ψ|²`.
pub const TAIL_CUTOFF: f64 = 1e-16;

/// Associated Laguerre polynomial `L_n^{(a)}(z)` by upward recurrence.
pub fn laguerre_assoc(n: usize, a: Complex64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = one + a - z;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0 + a - z) * cur - (kf - 1.0 + a) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `z0 = 2 sqrt(2 m v1)/(αħ)`, principal square root.
pub fn z_scale(params: &MorseParams) -> Complex64 {
    2.0 * (2.0 * params.mass() * params.v1()).sqrt() / (params.alpha() * params.hbar())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    /// Set when `Re z > 700` and the value was flushed to zero.
    pub underflow: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpec {
    pub n: usize,
    pub z0: Complex64,
    pub s_exponent: Complex64,
    pub energy: Complex64,
    pub norm: Complex64,
    /// False when `|ψ|²` is not integrable on the real line and `norm` was
    /// left at 1.
    pub normalizable: bool,
}

impl WaveSpec {
    /// Unnormalized wave function parameters for a level.
    pub fn new(params: &MorseParams, level: &EnergyLevel) -> Self {
        Self {
            n: level.n,
            z0: z_scale(params),
            s_exponent: level.s_exponent,
            energy: level.energy,
            norm: Complex64::new(1.0, 0.0),
            normalizable: decays(params, level),
        }
    }

    pub fn z(&self, params: &MorseParams, x: f64) -> Complex64 {
        self.z0 * (-params.alpha() * x).exp()
    }

    fn log_z(&self, params: &MorseParams, x: f64) -> Complex64 {
        self.z0.ln() - params.alpha() * x
    }

    /// `z^s · exp(−z/2)` evaluated in one exponential.
    fn envelope(&self, params: &MorseParams, x: f64) -> Option<(Complex64, Complex64)> {
        let z = self.z(params, x);
        if z.re > UNDERFLOW_RE_Z {
            return None;
        }
        Some((z, (self.s_exponent * self.log_z(params, x) - 0.5 * z).exp()))
    }

    pub fn eval(&self, params: &MorseParams, x: f64) -> Amplitude {
        match self.envelope(params, x) {
            None => Amplitude {
                value: Complex64::new(0.0, 0.0),
                underflow: true,
            },
            Some((z, env)) => Amplitude {
                value: self.norm * env * laguerre_assoc(self.n, 2.0 * self.s_exponent, z),
                underflow: false,
            },
        }
    }

    /// `dψ/dx = −αz dψ/dz`, using `d/dz L_n^{(a)} = −L_{n−1}^{(a+1)}`.
    pub fn eval_derivative(&self, params: &MorseParams, x: f64) -> Amplitude {
        let Some((z, env)) = self.envelope(params, x) else {
            return Amplitude {
                value: Complex64::new(0.0, 0.0),
                underflow: true,
            };
        };
        let a = 2.0 * self.s_exponent;
        let lag = laguerre_assoc(self.n, a, z);
        let dlag = if self.n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            -laguerre_assoc(self.n - 1, a + 1.0, z)
        };
        // z dψ/dz = env·[(s − z/2)·L + z·L']
        let z_dpsi_dz = env * ((self.s_exponent - 0.5 * z) * lag + z * dlag);
        Amplitude {
            value: -params.alpha() * self.norm * z_dpsi_dz,
            underflow: false,
        }
    }
}

fn decays(params: &MorseParams, level: &EnergyLevel) -> bool {
    params.alpha().im == 0.0 && params.alpha().re > 0.0 && level.s_exponent.re > 0.0
}

/// Unnormalized `ψ_n(x)` for a level of these parameters.
pub fn eval_psi(params: &MorseParams, level: &EnergyLevel, x: f64) -> Amplitude {
    WaveSpec::new(params, level).eval(params, x)
}

/// Window outside of which `|ψ|²` stays below `TAIL_CUTOFF` of its peak.
pub fn tail_window(params: &MorseParams, spec: &WaveSpec) -> Result<(f64, f64)> {
    if !spec.normalizable {
        return Err(Error::precondition("wave function does not decay on the real line"));
    }
    let alpha = params.alpha().re;
    let step = 0.05 / alpha;
    let dens = |x: f64| spec.eval(params, x).value.norm_sqr();
    // start where |z| ~ max(2|s|, 1), near the bulk of the state
    let target = (2.0 * spec.s_exponent.norm()).max(1.0) + spec.n as f64;
    let x_c = (spec.z0.norm().ln() - target.ln()) / alpha;
    let mut peak = dens(x_c);
    let walk = |from: f64, dir: f64, peak: &mut f64| -> Result<f64> {
        let mut x = from;
        let mut last = dens(x);
        for _ in 0..2_000_000 {
            x += dir * step;
            let d = dens(x);
            *peak = peak.max(d);
            if d <= TAIL_CUTOFF * *peak && d <= last {
                return Ok(x);
            }
            last = d;
        }
        Err(Error::numerical("normalization window search did not reach the tail"))
    };
    let mut left = walk(x_c, -1.0, &mut peak)?;
    let right = walk(x_c, 1.0, &mut peak)?;
    // the right walk may have raised the peak; keep extending the left cut
    while dens(left) > TAIL_CUTOFF * peak {
        left = walk(left, -1.0, &mut peak)?;
    }
    Ok((left, right))
}

/// `∫ |ψ|² dx` over a window, split into unit-length pieces of `1/Re α`.
pub fn norm_integral(params: &MorseParams, spec: &WaveSpec, window: (f64, f64), quad: &QuadConfig) -> Result<f64> {
    let piece = 1.0 / params.alpha().norm();
    let pieces = ((window.1 - window.0) / piece).ceil().max(1.0) as usize;
    let width = (window.1 - window.0) / pieces as f64;
    let mut total = 0.0;
    for k in 0..pieces {
        let a = window.0 + k as f64 * width;
        let b = if k + 1 == pieces { window.1 } else { a + width };
        total += integrate(|x| spec.eval(params, x).value.norm_sqr(), a, b, quad)?;
    }
    Ok(total)
}

/// Scale `spec.norm` so that `∫|ψ|² dx = 1` over the given window.
pub fn normalize_on_window(
    params: &MorseParams,
    spec: &WaveSpec,
    window: (f64, f64),
    quad: &QuadConfig,
) -> Result<WaveSpec> {
    let total = norm_integral(params, spec, window, quad)?;
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::numerical(format!("norm integral is {total}")));
    }
    Ok(WaveSpec {
        norm: spec.norm / total.sqrt(),
        ..*spec
    })
}

/// Normalize `spec` when `|ψ|²` is integrable; otherwise return it with
/// `normalizable = false` and the norm untouched.
pub fn normalize_spec(params: &MorseParams, spec: &WaveSpec, quad: &QuadConfig) -> Result<WaveSpec> {
    if !spec.normalizable {
        return Ok(*spec);
    }
    let window = tail_window(params, spec)?;
    normalize_on_window(params, spec, window, quad)
}

pub fn normalize_numeric(params: &MorseParams, level: &EnergyLevel, quad: &QuadConfig) -> Result<WaveSpec> {
    normalize_spec(params, &WaveSpec::new(params, level), quad)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    /// `max |−(ħ²/2m)ψ'' + (V − E)ψ| / max |ψ|` over interior points.
    pub value: f64,
    /// ψ vanished on the whole grid; `value` is +∞.
    pub zero_function: bool,
}

/// Pointwise Schrödinger residual with a 5-point second difference.
pub fn ode_residual(params: &MorseParams, level: &EnergyLevel, grid: &UniformGrid) -> Result<Residual> {
    spec_residual(params, &WaveSpec::new(params, level), grid)
}

pub fn spec_residual(params: &MorseParams, spec: &WaveSpec, grid: &UniformGrid) -> Result<Residual> {
    if grid.n_points < 9 {
        return Err(Error::precondition(format!(
            "residual grid needs at least 9 points, got {}",
            grid.n_points
        )));
    }
    let xs = grid.points();
    let psi: Vec<Complex64> = xs.iter().map(|&x| spec.eval(params, x).value).collect();
    let scale = psi.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(Residual {
            value: f64::INFINITY,
            zero_function: true,
        });
    }
    let h = grid.spacing();
    let kinetic = params.hbar() * params.hbar() / (2.0 * params.mass());
    let mut worst = 0.0_f64;
    for i in 2..xs.len() - 2 {
        let d2 = (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] - psi[i + 2])
            / (12.0 * h * h);
        let r = -kinetic * d2 + (params.eval(xs[i]) - spec.energy) * psi[i];
        worst = worst.max(r.norm());
    }
    Ok(Residual {
        value: worst / scale,
        zero_function: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{bound_levels, energy_level};
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn benchmark() -> MorseParams {
        MorseParams::real(1.0, 2.0, 1.0, 0.5, 1.0).unwrap()
    }

    #[test]
    fn laguerre_low_orders() {
        let z = Complex64::new(0.3, -1.2);
        let a = Complex64::new(1.5, 0.5);
        assert_eq!(laguerre_assoc(0, a, z), c(1.0));
        assert_eq!(laguerre_assoc(1, a, z), 1.0 + a - z);
        assert_eq!(laguerre_assoc(1, c(0.0), c(0.0)), c(1.0));
        assert_abs_diff_eq!(laguerre_assoc(2, c(0.0), c(1.0)).re, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn benchmark_ground_state_shape() {
        let p = benchmark();
        let lvl = energy_level(&p, 0);
        let spec = WaveSpec::new(&p, &lvl);
        assert_abs_diff_eq!(spec.z0.re, 2.0, epsilon = 1e-15);
        let grid = UniformGrid::new(-5.0, 25.0, 2000).unwrap();
        let vals: Vec<f64> = grid.points().iter().map(|&x| spec.eval(&p, x).value.re).collect();
        let sign_changes = vals.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        assert_eq!(sign_changes, 0);
        // exactly one local maximum
        let maxima = vals.windows(3).filter(|w| w[1] > w[0] && w[1] > w[2]).count();
        assert_eq!(maxima, 1);
    }

    #[test]
    fn underflow_flag() {
        let p = benchmark();
        let lvl = energy_level(&p, 0);
        let a = eval_psi(&p, &lvl, -10.0); // z = 2e^{10} ≫ 700
        assert!(a.underflow);
        assert_eq!(a.value, c(0.0));
        assert!(!eval_psi(&p, &lvl, 0.0).underflow);
    }

    #[test]
    fn node_count_matches_level_index() {
        let p = MorseParams::real(1.0, 12.0, 1.0, 0.5, 1.0).unwrap(); // λ = 6
        let levels = bound_levels(&p, 1e-10);
        assert_eq!(levels.len(), 6);
        let grid = UniformGrid::new(-5.0, 25.0, 6000).unwrap();
        for lvl in &levels {
            let spec = WaveSpec::new(&p, lvl);
            let vals: Vec<f64> = grid
                .points()
                .iter()
                .map(|&x| spec.eval(&p, x).value.re)
                .filter(|v| v.abs() > 1e-300)
                .collect();
            let nodes = vals.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            assert_eq!(nodes, lvl.n, "level {}", lvl.n);
        }
    }

    #[test]
    fn normalization_properties() {
        let p = benchmark();
        let quad = QuadConfig::default();
        let spec = normalize_numeric(&p, &energy_level(&p, 0), &quad).unwrap();
        assert!(spec.normalizable);
        let window = tail_window(&p, &spec).unwrap();
        let total = norm_integral(&p, &spec, window, &quad).unwrap();
        assert!((total - 1.0).abs() < 1e-8, "{total}");

        let wide = (window.0 - (window.1 - window.0) / 2.0, window.1 + (window.1 - window.0) / 2.0);
        let raw = WaveSpec::new(&p, &energy_level(&p, 0));
        let again = normalize_on_window(&p, &raw, wide, &quad).unwrap();
        assert!((again.norm - spec.norm).norm() < 1e-10 * spec.norm.norm());

        let twice = normalize_spec(&p, &spec, &quad).unwrap();
        assert!((twice.norm - spec.norm).norm() < 1e-14 * spec.norm.norm());
    }

    #[test]
    fn orthogonality_of_two_levels() {
        let p = MorseParams::real(1.0, 4.0, 1.0, 0.5, 1.0).unwrap(); // λ = 2
        let quad = QuadConfig::default();
        let levels = bound_levels(&p, 1e-10);
        assert_eq!(levels.len(), 2);
        let s0 = normalize_numeric(&p, &levels[0], &quad).unwrap();
        let s1 = normalize_numeric(&p, &levels[1], &quad).unwrap();
        let (a0, b0) = tail_window(&p, &s0).unwrap();
        let (a1, b1) = tail_window(&p, &s1).unwrap();
        let overlap = integrate(
            |x| (s0.eval(&p, x).value * s1.eval(&p, x).value).re,
            a0.min(a1),
            b0.max(b1),
            &quad,
        )
        .unwrap();
        assert!(overlap.abs() < 1e-7, "{overlap}");
    }

    #[test]
    fn pt_case_is_not_normalizable() {
        let p = MorseParams::new(c(1.0), c(2.0), Complex64::new(0.0, 1.0), 0.5, 1.0).unwrap();
        let spec = normalize_numeric(&p, &energy_level(&p, 0), &QuadConfig::default()).unwrap();
        assert!(!spec.normalizable);
        assert_eq!(spec.norm, c(1.0));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = MorseParams::new(Complex64::new(3.0, 4.0), Complex64::new(10.0, 5.0), c(1.0), 0.5, 1.0).unwrap();
        let spec = WaveSpec::new(&p, &energy_level(&p, 1));
        let h = 1e-5;
        for &x in &[-0.5, 0.3, 1.7, 4.0] {
            let fd = (spec.eval(&p, x + h).value - spec.eval(&p, x - h).value) / (2.0 * h);
            let an = spec.eval_derivative(&p, x).value;
            assert!((fd - an).norm() < 1e-7 * an.norm().max(1.0), "{x}: {fd} vs {an}");
        }
    }

    #[test]
    fn residual_guards() {
        let p = benchmark();
        let lvl = energy_level(&p, 0);
        assert!(ode_residual(&p, &lvl, &UniformGrid::new(0.0, 1.0, 8).unwrap()).is_err());
        // the whole grid sits in the underflow region
        let r = ode_residual(&p, &lvl, &UniformGrid::new(-30.0, -20.0, 50).unwrap()).unwrap();
        assert!(r.zero_function);
        assert!(r.value.is_infinite());
    }
}
