use gmorse::coherent::CoherentState;
use gmorse::duru_map::{build_chart, map_coords, Direction, PhasePoint};
use gmorse::export::{spectrum_json, to_json_string};
use gmorse::potential::{classify_default, SymmetryClass};
use gmorse::preset::{args, make_preset};
use gmorse::spectrum::{bound_levels, energy_level};
use gmorse::MorseParams;
use num_complex::Complex64;
use proptest::prelude::*;

fn real_params() -> impl Strategy<Value = MorseParams> {
    (0.1f64..10.0, -10.0f64..10.0, 0.2f64..3.0, 0.1f64..5.0, 0.2f64..2.0)
        .prop_map(|(v1, v2, a, m, h)| MorseParams::real(v1, v2, a, m, h).unwrap())
}

proptest! {
    #[test]
    fn real_parameters_classify_hermitian(p in real_params()) {
        prop_assert_eq!(classify_default(&p), SymmetryClass::Hermitian);
    }

    #[test]
    fn imaginary_alpha_satisfies_pt_identity(v1 in -5.0f64..5.0, v2 in -5.0f64..5.0, a in 0.1f64..3.0, x in -10.0f64..10.0) {
        prop_assume!(v1.abs() > 1e-3);
        let p = MorseParams::new(v1.into(), v2.into(), Complex64::new(0.0, a), 1.0, 1.0).unwrap();
        let v = p.eval(x);
        let scale = v1.abs() + v2.abs();
        prop_assert!((p.eval(-x).conj() - v).norm() <= 4.0 * f64::EPSILON * scale);
    }

    #[test]
    fn potential_vanishes_far_right(p in real_params()) {
        let x = 20.0 / p.alpha().re;
        prop_assert!(p.eval(x).norm() < 1e-6 * (p.v1().norm() + p.v2().norm()));
    }

    #[test]
    fn non_pt_spectrum_independent_of_a_b(a in 0.05f64..5.0, b in -5.0f64..5.0, c in 0.0f64..4.0, alpha in 0.3f64..2.0) {
        let build = |a: f64, b: f64| make_preset(
            "non_pt_complex", &args(&[("A", a), ("B", b), ("C", c), ("alpha", alpha)]), 0.5, 1.0).unwrap();
        let reference = build(1.0, 0.0);
        let p = build(a, b);
        for n in 0..4 {
            let x = energy_level(&p, n).energy;
            let y = energy_level(&reference, n).energy;
            prop_assert!((x - y).norm() <= 1e-12 * y.norm().max(1e-300), "n={} {} vs {}", n, x, y);
        }
    }

    #[test]
    fn hermitian_levels_are_negative_and_ordered(p in real_params()) {
        let levels = bound_levels(&p, 1e-10);
        for l in &levels {
            prop_assert!(l.energy.re < 0.0 && l.energy.im == 0.0 && l.s_exponent.re > 0.0);
        }
        for w in levels.windows(2) {
            prop_assert!(w[0].energy.re < w[1].energy.re);
        }
    }

    #[test]
    fn coherent_modulus_and_composition(re_u in -3.0f64..3.0, im_u in -3.0f64..3.0, s1 in -10.0f64..10.0, s2 in -10.0f64..10.0) {
        let p = MorseParams::real(1.0, 2.0, 1.0, 0.5, 1.0).unwrap();
        let chart = build_chart(&p, Complex64::new(-0.2, 0.0));
        let st = CoherentState::new(Complex64::new(re_u, im_u), Complex64::new(im_u, -re_u), chart).unwrap();
        let a = st.evolve(s1).evolve(s2);
        let b = st.evolve(s1 + s2);
        prop_assert!((a.a_u - b.a_u).norm() < 1e-14 * (1.0 + st.a_u.norm()));
        prop_assert!((a.a_u.norm() - st.a_u.norm()).abs() < 1e-14 * (1.0 + st.a_u.norm()));
        let w0 = st.observables().unwrap();
        let w1 = a.observables().unwrap();
        prop_assert_eq!(w0[0].dq.to_bits(), w1[0].dq.to_bits());
        prop_assert_eq!(w0[1].dp.to_bits(), w1[1].dp.to_bits());
    }

    #[test]
    fn spectrum_json_is_deterministic(p in real_params()) {
        let levels = bound_levels(&p, 1e-10);
        let a = to_json_string(&spectrum_json(&levels)).unwrap();
        let b = to_json_string(&spectrum_json(&bound_levels(&p, 1e-10))).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn radial_round_trip(x in -8.0f64..8.0, px in -20.0f64..20.0, alpha in 0.1f64..4.0) {
        let p = MorseParams::real(1.0, 2.0, alpha, 0.5, 1.0).unwrap();
        let osc = map_coords(&p, PhasePoint::morse(x, px), Direction::ToOscillator).unwrap();
        let back = map_coords(&p, osc, Direction::ToMorse).unwrap();
        prop_assert!((back.x - x).abs() <= 8.0 * f64::EPSILON * x.abs().max(1.0 / alpha));
        prop_assert!((back.px - px).abs() <= 8.0 * f64::EPSILON * px.abs().max(f64::MIN_POSITIVE));
    }
}
