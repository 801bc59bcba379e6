//! Test-only oracles, independent of the library code paths they check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact complex rational number.
#[derive(Clone, Debug)]
pub struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    pub fn from_f64(z: Complex64) -> Self {
        Self {
            re: BigRational::from_float(z.re).expect("finite"),
            im: BigRational::from_float(z.im).expect("finite"),
        }
    }

    pub fn int(k: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(k)),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            re: &self.re * q,
            im: &self.im * q,
        }
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

/// `L_n^{(a)}(z) = Σ_k (−1)^k binom(n + a, n − k) z^k / k!` in exact
/// rational arithmetic, rounded once at the end.
pub fn laguerre_series_exact(n: usize, a: Complex64, z: Complex64) -> Complex64 {
    let a = QComplex::from_f64(a);
    let z = QComplex::from_f64(z);
    let mut total = QComplex::int(0);
    let mut z_pow = QComplex::one();
    let mut k_fact = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            z_pow = z_pow.mul(&z);
            k_fact *= BigInt::from(k);
        }
        // binom(n + a, n − k) = Π_{j=k+1..n} (a + j) / (n − k)!
        let mut binom = QComplex::one();
        let mut nk_fact = BigInt::one();
        for j in (k + 1)..=n {
            binom = binom.mul(&a.add(&QComplex::int(j as i64)));
            nk_fact *= BigInt::from(j - k);
        }
        let denom = BigRational::new(BigInt::one(), &nk_fact * &k_fact);
        let mut term = binom.mul(&z_pow).scale(&denom);
        if k % 2 == 1 {
            term = term.scale(&BigRational::from_integer(BigInt::from(-1)));
        }
        total = total.add(&term);
    }
    total.to_f64()
}
