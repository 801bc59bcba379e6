//! Parametric-time coherent states of the two mapped oscillators.
//!
//! Each oscillator is labelled by a holomorphic coordinate
//! `a = sqrt(mΩ/2ħ)(q + ip/(mΩ))`; in parametric time the label only
//! rotates, `a(s) = a(0)·exp(−iΩs)`, so the packet keeps its minimum
//! uncertainty widths for all `s`.

use num_complex::Complex64;

use crate::duru_map::{build_chart, map_coords, physical_time, Direction, OscillatorChart, PhasePoint};
use crate::error::{Error, Result};
use crate::potential::MorseParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentState {
    pub a_u: Complex64,
    pub a_v: Complex64,
    pub chart: OscillatorChart,
    pub s: f64,
}

fn real_omega(chart: &OscillatorChart) -> Result<f64> {
    chart.real_omega().ok_or(Error::UnsupportedChart(chart.omega))
}

/// `a = sqrt(mΩ/2ħ)·(q + i p/(mΩ))` for a real-frequency chart.
pub fn coherent_from_phase_space(q: f64, p: f64, chart: &OscillatorChart) -> Result<Complex64> {
    let omega = real_omega(chart)?;
    let mw = chart.mass * omega;
    Ok((mw / (2.0 * chart.hbar)).sqrt() * Complex64::new(q, p / mw))
}

impl CoherentState {
    pub fn new(a_u: Complex64, a_v: Complex64, chart: OscillatorChart) -> Result<Self> {
        if !(a_u.is_finite() && a_v.is_finite()) {
            return Err(Error::invalid("coherent labels must be finite"));
        }
        if chart.omega == Complex64::new(0.0, 0.0) {
            return Err(Error::invalid("chart frequency is zero"));
        }
        Ok(Self { a_u, a_v, chart, s: 0.0 })
    }

    /// State whose mean orbit is the classical oscillator image of the
    /// Morse point `(x, px)` in the zero-angle gauge.
    pub fn from_morse_point(params: &MorseParams, x: f64, px: f64) -> Result<Self> {
        let point = map_coords(params, PhasePoint::morse(x, px), Direction::ToOscillator)?;
        let chart = build_chart(params, params.hamiltonian(x, px));
        let a_u = coherent_from_phase_space(point.u, point.pu, &chart)?;
        let a_v = coherent_from_phase_space(point.v, point.pv, &chart)?;
        Self::new(a_u, a_v, chart)
    }

    /// Exact phase rotation by `exp(−iΩ ds)`.
    pub fn evolve(&self, ds: f64) -> Self {
        let phase = (-Complex64::i() * self.chart.omega * ds).exp();
        Self {
            a_u: self.a_u * phase,
            a_v: self.a_v * phase,
            chart: self.chart,
            s: self.s + ds,
        }
    }

    pub fn observables(&self) -> Result<[Observables; 2]> {
        let omega = real_omega(&self.chart)?;
        let (m, hbar) = (self.chart.mass, self.chart.hbar);
        let one = |a: Complex64| Observables {
            mean_q: (2.0 * hbar / (m * omega)).sqrt() * a.re,
            mean_p: (2.0 * hbar * m * omega).sqrt() * a.im,
            dq: (hbar / (2.0 * m * omega)).sqrt(),
            dp: (hbar * m * omega / 2.0).sqrt(),
        };
        Ok([one(self.a_u), one(self.a_v)])
    }

    /// Oscillator energy of the mean orbit, `ħΩ(|a_u|² + |a_v|²)`. On the
    /// Morse constraint surface it equals the pseudo-energy `ℰ`.
    pub fn mean_orbit_energy(&self) -> Result<f64> {
        let omega = real_omega(&self.chart)?;
        Ok(self.chart.hbar * omega * (self.a_u.norm_sqr() + self.a_v.norm_sqr()))
    }

    /// Morse energy implied by the angular momentum of the mean orbit,
    /// `E = −α² L²/(8m)`.
    pub fn mean_morse_energy(&self, params: &MorseParams) -> Result<f64> {
        let [u, v] = self.observables()?;
        let l = u.mean_q * v.mean_p - v.mean_q * u.mean_p;
        let alpha2 = (params.alpha() * params.alpha()).re;
        Ok(-alpha2 * l * l / (8.0 * params.mass()))
    }
}

/// Mean position, mean momentum and widths of one oscillator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Observables {
    pub mean_q: f64,
    pub mean_p: f64,
    pub dq: f64,
    pub dp: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanSample {
    pub s: f64,
    pub t: f64,
    pub x_mean: f64,
    pub a_u: Complex64,
    pub a_v: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanTrajectory {
    /// How `x` is obtained from the state; always the classical law
    /// applied to mean values.
    pub mapping: &'static str,
    /// `ħΩ(|a_u|² + |a_v|²) − ℰ`; zero when the mean orbit lies on the
    /// Morse constraint surface of the model.
    pub constraint_gap: f64,
    pub samples: Vec<MeanSample>,
}

pub const CLASSICAL_MEAN_MAPPING: &str = "classical-mean";

/// Map the mean orbit of `state0` to the Morse coordinate,
/// `x(s) = −ln(⟨u⟩² + ⟨v⟩²)/α`, with `t(s)` from the parametric-time
/// quadrature measured from the first grid point.
pub fn mean_morse_trajectory(state0: &CoherentState, s_grid: &[f64], params: &MorseParams) -> Result<MeanTrajectory> {
    let omega = real_omega(&state0.chart)?;
    let scale = (2.0 * state0.chart.hbar / (state0.chart.mass * omega)).sqrt();
    let alpha = params.alpha();
    if alpha.im != 0.0 {
        return Err(Error::precondition("mean trajectory needs real alpha"));
    }
    // radius below 1e-12 of the orbit size counts as passing through the origin
    let floor = 1e-24 * scale * scale * (state0.a_u.norm_sqr() + state0.a_v.norm_sqr());
    let mut samples = Vec::with_capacity(s_grid.len());
    let mut rho2 = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let st = state0.evolve(s - state0.s);
        let (u, v) = (scale * st.a_u.re, scale * st.a_v.re);
        let r2 = u * u + v * v;
        if !(r2 > floor.max(f64::MIN_POSITIVE)) {
            return Err(Error::Singular { at: Some(s) });
        }
        rho2.push(r2);
        samples.push(MeanSample {
            s,
            t: 0.0,
            x_mean: -r2.ln() / alpha.re,
            a_u: st.a_u,
            a_v: st.a_v,
        });
    }
    let t = physical_time(s_grid, &rho2, params)?;
    for (sample, t) in samples.iter_mut().zip(t) {
        sample.t = t;
    }
    let constraint_gap = state0.mean_orbit_energy()? - build_chart(params, 0.0.into()).pseudo_energy.re;
    Ok(MeanTrajectory {
        mapping: CLASSICAL_MEAN_MAPPING,
        constraint_gap,
        samples,
    })
}
