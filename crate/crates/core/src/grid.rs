use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `n_points` equally spaced points on `[x_min, x_max]`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl UniformGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::invalid(format!("grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n_points < 2 {
            return Err(Error::invalid(format!("grid needs at least 2 points, got {n_points}")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }

    /// Parse the `a:b:k` form (k points from a to b inclusive).
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::invalid(format!("grid `{text}` is not of the form a:b:k"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let k: usize = parts[2].trim().parse().map_err(|_| bad())?;
        Self::new(a, b, k)
    }
}
