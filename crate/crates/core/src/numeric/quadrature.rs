//! Adaptive Gauss–Kronrod (7, 15) quadrature and cumulative quadratic
//! (Simpson-type) integration of sampled data.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of interval bisections.
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK[..7].iter().enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Globally adaptive integral of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    let (v, e) = gk15(&f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    for _ in 0..cfg.max_subdivisions {
        let total: f64 = intervals.iter().map(|iv| iv.2).sum();
        let err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if err <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            return Ok(total);
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = intervals.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
    let err: f64 = intervals.iter().map(|iv| iv.3).sum();
    Err(Error::numerical(format!(
        "quadrature on [{a}, {b}] did not converge after {} subdivisions (error estimate {err:e})",
        cfg.max_subdivisions
    )))
}

/// Integral over `[lo, hi]` of the quadratic through three samples.
fn quadratic_segment(x: [f64; 3], f: [f64; 3], lo: f64, hi: f64) -> f64 {
    // antiderivative of each Lagrange basis polynomial, evaluated by
    // expanding (t − xa)(t − xb) = t² − (xa + xb)t + xa·xb
    let basis = |i: usize| {
        let (a, b) = match i {
            0 => (x[1], x[2]),
            1 => (x[0], x[2]),
            _ => (x[0], x[1]),
        };
        let denom = (x[i] - a) * (x[i] - b);
        let anti = |t: f64| t * t * t / 3.0 - (a + b) * t * t / 2.0 + a * b * t;
        (anti(hi) - anti(lo)) / denom
    };
    (0..3).map(|i| f[i] * basis(i)).sum()
}

/// Cumulative integral of sampled `f` on a strictly increasing grid.
///
/// Interior pairs use the non-uniform composite Simpson rule; with an odd
/// interval count the final interval reuses the last quadratic. Output has
/// the same length as the input with a leading zero.
pub fn cumulative_simpson(xs: &[f64], fs: &[f64]) -> Vec<f64> {
    assert_eq!(xs.len(), fs.len());
    let n = xs.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * (xs[1] - xs[0]) * (fs[0] + fs[1]);
        return out;
    }
    // each quadratic works in coordinates local to its first node
    let segment = |i: usize, lo: usize, hi: usize| {
        let x0 = xs[i];
        let x = [0.0, xs[i + 1] - x0, xs[i + 2] - x0];
        let f = [fs[i], fs[i + 1], fs[i + 2]];
        quadratic_segment(x, f, xs[lo] - x0, xs[hi] - x0)
    };
    let mut acc = 0.0;
    let mut i = 0;
    while i + 2 < n {
        out[i + 1] = acc + segment(i, i, i + 1);
        acc += segment(i, i, i + 2);
        out[i + 2] = acc;
        i += 2;
    }
    if i + 1 < n {
        out[i + 1] = acc + segment(i - 1, i, i + 1);
    }
    out
}
