//! Duru–Kleinert map of Morse dynamics onto a planar harmonic oscillator.
//!
//! With `u² + v² = ρ² = exp(−αx)` and `p_ρ = −(2/(αρ))·p_x`, multiplying
//! `H − E` by `4/(α²ρ²)` turns the Morse problem into a 2-D isotropic
//! oscillator of frequency `Ω = sqrt(8 v1/(m α²))` at fixed pseudo-energy
//! `ℰ = 4 v2/α²` with angular momentum `L² = −8mE/α²`. The oscillator
//! evolves in the parametric time `s`, related to physical time through
//! `dt = (4/(α²ρ²)) ds`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::ode::Dopri5;
use crate::numeric::quadrature::cumulative_simpson;
use crate::potential::MorseParams;

/// Derived two-oscillator picture of a model at a reference energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorChart {
    pub omega: Complex64,
    pub pseudo_energy: Complex64,
    /// Index `ℓ = 2 sqrt(−2mE)/(αħ)`.
    pub centrifugal: Complex64,
    /// `4/α²`, the factor in `dt/ds = (4/α²)/ρ²`.
    pub time_factor_scale: Complex64,
    pub energy: Complex64,
    pub mass: f64,
    pub hbar: f64,
}

impl OscillatorChart {
    /// Real frequency, if the chart has one.
    pub fn real_omega(&self) -> Option<f64> {
        (self.omega.im == 0.0 && self.omega.re != 0.0).then_some(self.omega.re)
    }
}

pub fn build_chart(params: &MorseParams, energy: Complex64) -> OscillatorChart {
    let m = params.mass();
    let alpha = params.alpha();
    let alpha2 = alpha * alpha;
    OscillatorChart {
        omega: (8.0 * params.v1() / (m * alpha2)).sqrt(),
        pseudo_energy: 4.0 * params.v2() / alpha2,
        centrifugal: 2.0 * (-2.0 * m * energy).sqrt() / (alpha * params.hbar()),
        time_factor_scale: 4.0 / alpha2,
        energy,
        mass: m,
        hbar: params.hbar(),
    }
}

/// A point carrying both the Morse pair `(x, px)` and the oscillator
/// coordinates `(u, v, pu, pv)`, with parametric and physical time.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhasePoint {
    pub x: f64,
    pub px: f64,
    pub u: f64,
    pub v: f64,
    pub pu: f64,
    pub pv: f64,
    pub s: f64,
    pub t: f64,
}

impl PhasePoint {
    pub fn morse(x: f64, px: f64) -> Self {
        Self {
            x,
            px,
            ..Default::default()
        }
    }

    pub fn oscillator(u: f64, v: f64, pu: f64, pv: f64) -> Self {
        Self {
            u,
            v,
            pu,
            pv,
            ..Default::default()
        }
    }

    pub fn rho2(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    fn osc_state(&self) -> OscState {
        [self.u, self.v, self.pu, self.pv]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ToOscillator,
    ToMorse,
}

fn real_alpha(params: &MorseParams) -> Result<f64> {
    if params.alpha().im != 0.0 {
        return Err(Error::precondition("real phase-space map requires real alpha"));
    }
    Ok(params.alpha().re)
}

fn require_hermitian(params: &MorseParams) -> Result<()> {
    if !params.is_real() {
        return Err(Error::precondition("classical dynamics requires Hermitian parameters"));
    }
    Ok(())
}

/// Angular momentum fixed by the Morse energy, `L = sqrt(−8mE)/|α|`;
/// zero for `E ≥ 0`, where only the radial sector is mapped.
pub fn angular_momentum(params: &MorseParams, energy: f64) -> f64 {
    let alpha = params.alpha().norm();
    (-8.0 * params.mass() * energy).max(0.0).sqrt() / alpha
}

/// Map between the Morse and oscillator sides of a phase point. `s` and
/// `t` pass through unchanged.
///
/// `ToOscillator` uses the zero-angle gauge `u = ρ, v = 0`, and sets `pv`
/// from the angular momentum that puts the point on the constraint
/// surface of its own Morse energy.
pub fn map_coords(params: &MorseParams, point: PhasePoint, direction: Direction) -> Result<PhasePoint> {
    require_hermitian(params)?;
    let alpha = real_alpha(params)?;
    let mut out = point;
    match direction {
        Direction::ToOscillator => {
            let rho = (-0.5 * alpha * point.x).exp();
            let energy = params.hamiltonian(point.x, point.px).re;
            out.u = rho;
            out.v = 0.0;
            out.pu = -2.0 / (alpha * rho) * point.px;
            out.pv = angular_momentum(params, energy) / rho;
        }
        Direction::ToMorse => {
            let rho2 = point.rho2();
            if !(rho2 > 0.0) {
                return Err(Error::Singular { at: Some(point.s) });
            }
            out.x = -rho2.ln() / alpha;
            out.px = -0.5 * alpha * (point.u * point.pu + point.v * point.pv);
        }
    }
    Ok(out)
}

/// Cumulative physical time `t(s) = ∫₀ˢ (4/α²)/ρ²(s') ds'` by composite
/// Simpson quadrature over the sampled grid.
pub fn physical_time(s_grid: &[f64], rho2: &[f64], params: &MorseParams) -> Result<Vec<f64>> {
    if s_grid.len() != rho2.len() {
        return Err(Error::precondition(format!(
            "grid has {} points but ρ² has {}",
            s_grid.len(),
            rho2.len()
        )));
    }
    if s_grid.is_empty() {
        return Ok(Vec::new());
    }
    let increasing = s_grid.windows(2).all(|w| w[1] > w[0]);
    let decreasing = s_grid.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(Error::precondition("parametric-time grid is not strictly monotone"));
    }
    if let Some((i, r)) = rho2.iter().enumerate().find(|(_, r)| !(**r > 0.0)) {
        return Err(Error::precondition(format!(
            "ρ² = {r} is not positive at s = {}",
            s_grid[i]
        )));
    }
    let scale = 4.0 / (params.alpha() * params.alpha());
    if scale.im.abs() > 1e-15 * scale.norm() {
        return Err(Error::precondition(format!(
            "time factor 4/α² = {scale} is not real"
        )));
    }
    let integrand: Vec<f64> = rho2.iter().map(|r| scale.re / r).collect();
    if increasing {
        Ok(cumulative_simpson(s_grid, &integrand))
    } else {
        let xs: Vec<f64> = s_grid.iter().map(|s| -s).collect();
        Ok(cumulative_simpson(&xs, &integrand).into_iter().map(|t| -t).collect())
    }
}

/// Oscillator state `[u, v, pu, pv]`.
pub type OscState = [f64; 4];

/// Propagates the planar oscillator `K = p²/2m + mΩ²ρ²/2` in parametric
/// time.
pub trait OscillatorPropagator: Send + Sync {
    fn name(&self) -> &'static str;

    fn propagate(&self, mass: f64, omega: f64, state: OscState, ds: f64) -> OscState;
}

/// Closed-form rotation in each phase plane.
pub struct ExactPropagator;

impl OscillatorPropagator for ExactPropagator {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn propagate(&self, mass: f64, omega: f64, state: OscState, ds: f64) -> OscState {
        let (sn, cs) = (omega * ds).sin_cos();
        let mw = mass * omega;
        let [u, v, pu, pv] = state;
        [
            u * cs + pu / mw * sn,
            v * cs + pv / mw * sn,
            pu * cs - mw * u * sn,
            pv * cs - mw * v * sn,
        ]
    }
}

/// Fourth-order Yoshida composition of velocity-Verlet steps.
pub struct Yoshida4 {
    /// Largest substep; each call splits `ds` into equal substeps no
    /// longer than this.
    pub max_step: f64,
}

impl Default for Yoshida4 {
    fn default() -> Self {
        Self { max_step: 1e-3 }
    }
}

impl Yoshida4 {
    const W1: f64 = 1.351_207_191_959_657_8; // 1/(2 − 2^(1/3))
    const W0: f64 = -1.702_414_383_919_315_5; // 1 − 2·W1
}

impl OscillatorPropagator for Yoshida4 {
    fn name(&self) -> &'static str {
        "yoshida4"
    }

    fn propagate(&self, mass: f64, omega: f64, state: OscState, ds: f64) -> OscState {
        if ds == 0.0 {
            return state;
        }
        let steps = (ds.abs() / self.max_step).ceil().max(1.0) as usize;
        let h = ds / steps as f64;
        let k = mass * omega * omega;
        let [mut u, mut v, mut pu, mut pv] = state;
        let mut verlet = |dt: f64| {
            pu -= 0.5 * dt * k * u;
            pv -= 0.5 * dt * k * v;
            u += dt * pu / mass;
            v += dt * pv / mass;
            pu -= 0.5 * dt * k * u;
            pv -= 0.5 * dt * k * v;
        };
        for _ in 0..steps {
            verlet(Self::W1 * h);
            verlet(Self::W0 * h);
            verlet(Self::W1 * h);
        }
        [u, v, pu, pv]
    }
}

#[derive(Clone)]
pub struct PropagatorRegistry {
    entries: BTreeMap<&'static str, Arc<dyn OscillatorPropagator>>,
}

impl PropagatorRegistry {
    pub fn register<P: OscillatorPropagator + 'static>(&mut self, p: P) {
        self.entries.insert(p.name(), Arc::new(p));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn OscillatorPropagator>> {
        self.entries.get(name).cloned().ok_or_else(|| Error::UnknownStrategy {
            family: "propagator",
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

impl Default for PropagatorRegistry {
    fn default() -> Self {
        let mut reg = Self {
            entries: BTreeMap::new(),
        };
        reg.register(ExactPropagator);
        reg.register(Yoshida4::default());
        reg
    }
}

/// Oscillator invariant `K = (pu² + pv²)/2m + mΩ²(u² + v²)/2`.
pub fn oscillator_energy(mass: f64, omega: f64, p: &PhasePoint) -> f64 {
    (p.pu * p.pu + p.pv * p.pv) / (2.0 * mass) + 0.5 * mass * omega * omega * p.rho2()
}

/// Sample an oscillator orbit on a uniform parametric grid and map every
/// sample back to `(x, px, t)`.
pub fn sample_orbit(
    params: &MorseParams,
    initial: PhasePoint,
    s_span: f64,
    samples: usize,
    propagator: &dyn OscillatorPropagator,
) -> Result<Vec<PhasePoint>> {
    require_hermitian(params)?;
    if samples < 3 {
        return Err(Error::precondition("orbit needs at least 3 samples"));
    }
    if s_span == 0.0 || !s_span.is_finite() {
        return Err(Error::precondition("parametric span must be finite and nonzero"));
    }
    // Ω does not depend on the reference energy
    let omega = build_chart(params, Complex64::new(0.0, 0.0)).omega.re;
    let ds = s_span / (samples - 1) as f64;
    let mut state = initial.osc_state();
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        if i > 0 {
            state = propagator.propagate(params.mass(), omega, state, ds);
        }
        let [u, v, pu, pv] = state;
        let mut p = PhasePoint::oscillator(u, v, pu, pv);
        p.s = initial.s + i as f64 * ds;
        points.push(map_coords(params, p, Direction::ToMorse)?);
    }
    let s: Vec<f64> = points.iter().map(|p| p.s).collect();
    let rho2: Vec<f64> = points.iter().map(|p| p.rho2()).collect();
    let t = physical_time(&s, &rho2, params)?;
    for (p, t) in points.iter_mut().zip(t) {
        p.t = initial.t + t;
    }
    Ok(points)
}

#[derive(Clone, Debug)]
pub struct TrajectoryCheck {
    /// Max violation of `dx/dt = px/m` and `dpx/dt = −V'(x)` along the
    /// mapped orbit.
    pub hamilton_residual: f64,
    /// Max relative deviation of `px²/2m + V(x)` from `E`.
    pub energy_drift: f64,
    /// Max relative drift of the oscillator invariant `K`.
    pub oscillator_drift: f64,
    pub points: Vec<PhasePoint>,
}

/// Run the oscillator flow from a Morse point at energy `E`, map every
/// sample back and measure how well the Morse equations of motion hold.
///
/// `initial.x` fixes the start; the momentum is set to
/// `sign(initial.px)·sqrt(2m(E − V(x)))`.
pub fn verify_trajectory(
    params: &MorseParams,
    energy: f64,
    initial: PhasePoint,
    s_span: f64,
    samples: usize,
    propagator: &dyn OscillatorPropagator,
) -> Result<TrajectoryCheck> {
    require_hermitian(params)?;
    let alpha = real_alpha(params)?;
    let (_, v_min) = params
        .minimum()
        .ok_or_else(|| Error::precondition("potential has no bound well (need v1 > 0, v2 > 0)"))?;
    if !(energy < 0.0 && energy >= v_min * (1.0 + 1e-12)) {
        return Err(Error::precondition(format!(
            "energy {energy} is outside the bound range [{v_min}, 0)"
        )));
    }
    let m = params.mass();
    let kinetic = energy - params.eval(initial.x).re;
    if kinetic < -1e-12 * energy.abs() {
        return Err(Error::precondition(format!(
            "x = {} is classically forbidden at E = {energy}",
            initial.x
        )));
    }
    let px = (2.0 * m * kinetic.max(0.0)).sqrt().copysign(if initial.px < 0.0 { -1.0 } else { 1.0 });
    let mut start = PhasePoint::morse(initial.x, px);
    start.s = initial.s;
    start.t = initial.t;
    let start = map_coords(params, start, Direction::ToOscillator)?;

    let points = sample_orbit(params, start, s_span, samples, propagator)?;
    let omega = build_chart(params, energy.into()).omega.re;
    let k0 = oscillator_energy(m, omega, &points[0]);

    let mut residual = 0.0_f64;
    let mut energy_drift = 0.0_f64;
    let mut osc_drift = 0.0_f64;
    for p in &points {
        let rho2 = p.rho2();
        let d = p.u * p.pu + p.v * p.pv;
        let p2 = p.pu * p.pu + p.pv * p.pv;
        let dt_ds = 4.0 / (alpha * alpha * rho2);
        // chain rule through the map using the oscillator equations of motion
        let dx_ds = -(2.0 * d / m) / (alpha * rho2);
        let dpx_ds = -0.5 * alpha * (p2 / m - m * omega * omega * rho2);
        let r1 = (dx_ds / dt_ds - p.px / m).abs();
        let r2 = (dpx_ds / dt_ds + params.derivative(p.x).re).abs();
        residual = residual.max(r1).max(r2);
        energy_drift = energy_drift.max((params.hamiltonian(p.x, p.px).re - energy).abs() / energy.abs());
        osc_drift = osc_drift.max((oscillator_energy(m, omega, p) - k0).abs() / k0.abs());
    }
    Ok(TrajectoryCheck {
        hamilton_residual: residual,
        energy_drift,
        oscillator_drift: osc_drift,
        points,
    })
}

/// Integrate Morse's equations directly in physical time and return
/// `(x, px)` at each requested time, starting from `(x0, px0)` at `t0`.
pub fn integrate_morse(
    params: &MorseParams,
    x0: f64,
    px0: f64,
    t0: f64,
    times: &[f64],
    solver: &Dopri5,
) -> Result<Vec<(f64, f64)>> {
    require_hermitian(params)?;
    let m = params.mass();
    let rhs = |_: f64, y: &[f64; 2]| [y[1] / m, -params.derivative(y[0]).re];
    let mut y = [x0, px0];
    let mut t = t0;
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        y = solver.integrate(rhs, t, y, target)?;
        t = target;
        out.push((y[0], y[1]));
    }
    Ok(out)
}

/// Classical turning points `V(x) = E` of a bound Hermitian orbit.
pub fn turning_points(params: &MorseParams, energy: f64) -> Result<(f64, f64)> {
    require_hermitian(params)?;
    let (v1, v2, alpha) = (params.v1().re, params.v2().re, params.alpha().re);
    // v1 r² − v2 r − E = 0 with r = exp(−αx)
    let disc = v2 * v2 + 4.0 * v1 * energy;
    if !(disc >= 0.0 && energy < 0.0) {
        return Err(Error::precondition(format!("energy {energy} is not a bound energy")));
    }
    let r_hi = (v2 + disc.sqrt()) / (2.0 * v1);
    let r_lo = (v2 - disc.sqrt()) / (2.0 * v1);
    let (a, b) = (-r_hi.ln() / alpha, -r_lo.ln() / alpha);
    Ok((a.min(b), a.max(b)))
}

/// Period of the bound Morse orbit at energy `E`, measured by direct
/// integration from the left turning point until `px` next turns from
/// negative to positive. `chunk` is the scan step used to bracket sign
/// changes before bisection.
pub fn morse_period_direct(params: &MorseParams, energy: f64, chunk: f64, solver: &Dopri5) -> Result<f64> {
    let (x_left, _) = turning_points(params, energy)?;
    let m = params.mass();
    let rhs = |_: f64, y: &[f64; 2]| [y[1] / m, -params.derivative(y[0]).re];
    let mut t = 0.0;
    let mut y = [x_left, 0.0];
    let mut sign_changes = 0;
    let mut prev = 1.0_f64;
    for _ in 0..1_000_000 {
        let next = solver.integrate(rhs, t, y, t + chunk)?;
        let sign = next[1].signum();
        if next[1] != 0.0 && sign != prev && t > 0.0 {
            sign_changes += 1;
            if sign_changes == 2 {
                let (mut lo, mut hi) = (0.0, chunk);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let ym = solver.integrate(rhs, t, y, t + mid)?;
                    if ym[1].signum() == sign {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Ok(t + 0.5 * (lo + hi));
            }
        }
        if next[1] != 0.0 {
            prev = sign;
        }
        t += chunk;
        y = next;
    }
    Err(Error::numerical("period search did not close the orbit"))
}
