//! Closed-form complex spectrum from the radial oscillator quantization
//! `ℰ = ħΩ(2n + ℓ + 1)`, which gives `ℓ = 2(λ − n − 1/2)` and
//! `E_n = −(α²ħ²/2m)(λ − n − 1/2)²`.

use num_complex::Complex64;

use crate::potential::MorseParams;

/// Default relative tolerance for flagging an eigenvalue as real.
pub const DEFAULT_REALITY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyLevel {
    pub n: usize,
    pub energy: Complex64,
    /// `s_n = λ − n − 1/2`; also the power of `z` in the wave function.
    pub s_exponent: Complex64,
    pub is_real: bool,
}

impl EnergyLevel {
    /// Bound levels have `Re s_n > 0`.
    pub fn is_bound(&self) -> bool {
        self.s_exponent.re > 0.0
    }
}

/// `λ = (v2 / (ħα))·sqrt(m / (2 v1))` on the principal branch.
pub fn lambda_param(params: &MorseParams) -> Complex64 {
    let root = (Complex64::from(params.mass()) / (2.0 * params.v1())).sqrt();
    params.v2() / (params.hbar() * params.alpha()) * root
}

fn flag_real(energy: Complex64, tol: f64) -> bool {
    energy.im.abs() <= tol * energy.re.abs().max(1.0)
}

pub fn energy_level(params: &MorseParams, n: usize) -> EnergyLevel {
    energy_level_with_tol(params, n, DEFAULT_REALITY_TOL)
}

pub fn energy_level_with_tol(params: &MorseParams, n: usize, tol: f64) -> EnergyLevel {
    let s = lambda_param(params) - (n as f64 + 0.5);
    let alpha = params.alpha();
    let scale = -(alpha * alpha) * (params.hbar() * params.hbar() / (2.0 * params.mass()));
    let energy = scale * s * s;
    EnergyLevel {
        n,
        energy,
        s_exponent: s,
        is_real: flag_real(energy, tol),
    }
}

/// Every level with `Re(λ − n − 1/2) > 0`, ascending in `n`. Empty when
/// `Re λ ≤ 1/2`.
pub fn bound_levels(params: &MorseParams, tol: f64) -> Vec<EnergyLevel> {
    let lambda = lambda_param(params);
    (0..)
        .take_while(|&n| lambda.re - (n as f64 + 0.5) > 0.0)
        .map(|n| energy_level_with_tol(params, n, tol))
        .collect()
}

/// Number of bound levels, `ceil(Re λ − 1/2)` clamped at zero.
pub fn bound_count(params: &MorseParams) -> usize {
    let c = (lambda_param(params).re - 0.5).ceil();
    if c > 0.0 {
        c as usize
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset::{args, make_preset};
    use approx::assert_abs_diff_eq;

    fn benchmark() -> MorseParams {
        MorseParams::real(1.0, 2.0, 1.0, 0.5, 1.0).unwrap()
    }

    #[test]
    fn lambda_examples() {
        assert_abs_diff_eq!(lambda_param(&benchmark()).re, 1.0, epsilon = 1e-15);
        let p = MorseParams::real(1.0, 0.0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(lambda_param(&p), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn lambda_independent_of_a_b_for_non_pt() {
        let build = |a: f64, b: f64| {
            make_preset(
                "non_pt_complex",
                &args(&[("A", a), ("B", b), ("C", 2.0), ("alpha", 1.0)]),
                0.5,
                1.0,
            )
            .unwrap()
        };
        let expected = 5.0 * 0.5; // (2C+1)·sqrt(m/2)/(ħα)
        for (a, b) in [(2.0, 1.0), (3.0, 0.0), (0.5, -4.0)] {
            let l = lambda_param(&build(a, b));
            assert!((l - expected).norm() <= 1e-14 * expected, "{a},{b}: {l}");
        }
    }

    #[test]
    fn benchmark_ground_state() {
        let e0 = energy_level(&benchmark(), 0);
        assert_abs_diff_eq!(e0.energy.re, -0.25, epsilon = 1e-15);
        assert_eq!(e0.energy.im, 0.0);
        assert!(e0.is_real);
        assert_abs_diff_eq!(e0.s_exponent.re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn zero_exponent_gives_zero_energy() {
        // λ = 3/2 exactly: v2 = 3 with the benchmark's other parameters
        let p = MorseParams::real(1.0, 3.0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(energy_level(&p, 1).energy, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn pt_imaginary_alpha_flips_sign() {
        let p = make_preset("pt_imaginary_alpha", &args(&[("v1", 1.0), ("v2", 2.0), ("a", 1.0)]), 0.5, 1.0)
            .unwrap();
        let l = lambda_param(&p);
        let s = l - 0.5;
        let expected = (1.0 / (2.0 * 0.5)) * s * s;
        let e0 = energy_level(&p, 0);
        assert!((e0.energy - expected).norm() < 1e-15);
        // λ = 2·sqrt(1/4)/i = −i, so E_0 = (−1/2 − i)² = −3/4 + i
        assert!((e0.energy - Complex64::new(-0.75, 1.0)).norm() < 1e-15);
        assert!(!e0.is_real);
    }

    #[test]
    fn bound_level_counts() {
        assert_eq!(bound_levels(&benchmark(), 1e-10).len(), 1);
        assert_eq!(bound_count(&benchmark()), 1);

        let barrier = MorseParams::real(1.0, 0.0, 1.0, 0.5, 1.0).unwrap();
        assert!(bound_levels(&barrier, 1e-10).is_empty());
        assert_eq!(bound_count(&barrier), 0);

        let non_pt = make_preset(
            "non_pt_complex",
            &args(&[("A", 2.0), ("B", 1.0), ("C", 2.0), ("alpha", 1.0)]),
            0.5,
            1.0,
        )
        .unwrap();
        let levels = bound_levels(&non_pt, 1e-10);
        assert_eq!(levels.len(), 2);
        assert_eq!(bound_count(&non_pt), 2);
        for l in &levels {
            assert!(l.is_real);
            assert!(l.energy.im.abs() <= 1e-10);
        }
    }

    #[test]
    fn hermitian_second_difference_is_constant() {
        let p = MorseParams::real(1.3, 9.0, 0.7, 0.8, 1.1).unwrap();
        let levels = bound_levels(&p, 1e-10);
        assert!(levels.len() >= 4);
        let expected = -(0.7f64 * 0.7 * 1.1 * 1.1) / 0.8;
        for w in levels.windows(3) {
            let d2 = w[2].energy.re - 2.0 * w[1].energy.re + w[0].energy.re;
            assert!((d2 - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
        for w in levels.windows(2) {
            assert!(w[0].energy.re < w[1].energy.re);
        }
        assert!(levels.iter().all(|l| l.energy.re < 0.0 && l.is_bound()));
    }
}
