//! Independent finite-difference verifier.
//!
//! The Hamiltonian `−(ħ²/2m) d²/dx² + V(x)` is discretized on the interior
//! points of a uniform grid with `ψ = 0` at both ends. The resulting
//! matrix is complex symmetric (real symmetric for real `V`) and banded,
//! and its low eigenvalues are found by a registered [`EigenSolver`].

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::potential::MorseParams;
use crate::spectrum::EnergyLevel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stencil {
    /// 3-point, second order.
    Second,
    /// 5-point, fourth order.
    Fourth,
}

impl Stencil {
    pub fn from_order(order: u32) -> Result<Self> {
        match order {
            2 => Ok(Stencil::Second),
            4 => Ok(Stencil::Fourth),
            other => Err(Error::invalid(format!("stencil order must be 2 or 4, got {other}"))),
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            Stencil::Second => 2,
            Stencil::Fourth => 4,
        }
    }

    fn bandwidth(&self) -> usize {
        match self {
            Stencil::Second => 1,
            Stencil::Fourth => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub grid: UniformGrid,
    pub stencil: Stencil,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize, stencil: Stencil) -> Result<Self> {
        if n_points < 16 {
            return Err(Error::invalid(format!("oracle grid needs at least 16 points, got {n_points}")));
        }
        Ok(Self {
            grid: UniformGrid::new(x_min, x_max, n_points)?,
            stencil,
        })
    }

    /// Default window `[−5/Re α, 25/Re α]`: steep confinement on the left,
    /// slow exponential tail on the right.
    pub fn default_for(params: &MorseParams, n_points: usize, stencil: Stencil) -> Result<Self> {
        let a = params.alpha().re;
        if !(a > 0.0) {
            return Err(Error::precondition("default oracle window needs Re α > 0"));
        }
        Self::new(-5.0 / a, 25.0 / a, n_points, stencil)
    }

    /// Matrix dimension (interior points only).
    pub fn dim(&self) -> usize {
        self.grid.n_points - 2
    }
}

/// Symmetric banded matrix: `bands[0]` is the diagonal, `bands[k][i]` is
/// the entry at `(i, i + k)` and, by symmetry, `(i + k, i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedMatrix {
    pub bands: Vec<Vec<Complex64>>,
}

impl BandedMatrix {
    pub fn dim(&self) -> usize {
        self.bands[0].len()
    }

    pub fn bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let k = hi - lo;
        if k > self.bandwidth() {
            Complex64::new(0.0, 0.0)
        } else {
            self.bands[k][lo]
        }
    }

    pub fn is_real(&self) -> bool {
        self.bands.iter().flatten().all(|z| z.im == 0.0)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (k, band) in self.bands.iter().enumerate() {
            for (i, &z) in band.iter().enumerate() {
                m[(i, i + k)] = z;
                m[(i + k, i)] = z;
            }
        }
        m
    }

    /// Sum of absolute row entries, bounding every eigenvalue modulus.
    pub fn gershgorin_radius(&self) -> f64 {
        let n = self.dim();
        let b = self.bandwidth() as isize;
        (0..n)
            .map(|i| {
                (-b..=b)
                    .filter_map(|d| {
                        let j = i as isize + d;
                        (0..n as isize).contains(&j).then(|| self.get(i, j as usize).norm())
                    })
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Discretize `−(ħ²/2m) d²/dx² + V(x)` with Dirichlet ends.
///
/// The 5-point stencil reaches one point past each wall at the first
/// interior node; that ghost value is the odd image `ψ(−h) = −ψ(h)`.
pub fn build_hamiltonian<V>(potential: V, mass: f64, hbar: f64, spec: &GridSpec) -> BandedMatrix
where
    V: Fn(f64) -> Complex64,
{
    let n = spec.dim();
    let h = spec.grid.spacing();
    let kin = hbar * hbar / (2.0 * mass * h * h);
    let (center, neighbours): (f64, Vec<f64>) = match spec.stencil {
        Stencil::Second => (2.0, vec![-1.0]),
        Stencil::Fourth => (30.0 / 12.0, vec![-16.0 / 12.0, 1.0 / 12.0]),
    };
    let mut bands = Vec::with_capacity(spec.stencil.bandwidth() + 1);
    let diag: Vec<Complex64> = (0..n)
        .map(|i| {
            let mut d = center;
            if spec.stencil == Stencil::Fourth && (i == 0 || i + 1 == n) {
                // ghost point folded onto the diagonal
                d -= 1.0 / 12.0;
            }
            potential(spec.grid.point(i + 1)) + kin * d
        })
        .collect();
    bands.push(diag);
    for (k, &c) in neighbours.iter().enumerate() {
        let len = n.saturating_sub(k + 1);
        bands.push(vec![Complex64::new(kin * c, 0.0); len]);
    }
    BandedMatrix { bands }
}

pub fn build_grid_hamiltonian(params: &MorseParams, spec: &GridSpec) -> BandedMatrix {
    build_hamiltonian(|x| params.eval(x), params.mass(), params.hbar(), spec)
}

pub trait EigenSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// The `k` eigenvalues with lowest real part, ascending.
    fn lowest(&self, matrix: &BandedMatrix, k: usize) -> Result<Vec<Complex64>>;
}

/// Sturm-count bisection for real symmetric banded matrices.
///
/// The number of negative pivots of `LDLᵀ = A − σI` equals the number of
/// eigenvalues below `σ` (Sylvester's law of inertia).
pub struct SturmBisection;

impl SturmBisection {
    fn count_below(diag: &[f64], off: &[Vec<f64>], sigma: f64, scale: f64) -> usize {
        let n = diag.len();
        let b = off.len();
        // l[i * b + (k - 1)] holds L(i, i - k)
        let mut l = vec![0.0; n * b.max(1)];
        let mut d = vec![0.0; n];
        let mut negatives = 0;
        for i in 0..n {
            let first = i.saturating_sub(b);
            for j in first..i {
                let a_ij = off[i - j - 1][j];
                let mut acc = a_ij;
                let k_start = first.max(j.saturating_sub(b));
                for k in k_start..j {
                    acc -= l[i * b + (i - k - 1)] * l[j * b + (j - k - 1)] * d[k];
                }
                l[i * b + (i - j - 1)] = acc / d[j];
            }
            let mut di = diag[i] - sigma;
            for j in first..i {
                let lij = l[i * b + (i - j - 1)];
                di -= lij * lij * d[j];
            }
            if di == 0.0 {
                di = -f64::EPSILON * scale;
            }
            if di < 0.0 {
                negatives += 1;
            }
            d[i] = di;
        }
        negatives
    }
}

impl EigenSolver for SturmBisection {
    fn name(&self) -> &'static str {
        "sturm"
    }

    fn lowest(&self, matrix: &BandedMatrix, k: usize) -> Result<Vec<Complex64>> {
        if !matrix.is_real() {
            return Err(Error::precondition("sturm bisection needs a real symmetric matrix"));
        }
        let diag: Vec<f64> = matrix.bands[0].iter().map(|z| z.re).collect();
        let off: Vec<Vec<f64>> = matrix.bands[1..]
            .iter()
            .map(|band| band.iter().map(|z| z.re).collect())
            .collect();
        let radius = matrix.gershgorin_radius();
        let scale = radius.max(1.0);
        let mut out = Vec::with_capacity(k);
        let mut lo_start = -radius - 1.0;
        for idx in 0..k {
            let (mut lo, mut hi) = (lo_start, radius + 1.0);
            for _ in 0..200 {
                if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if Self::count_below(&diag, &off, mid, scale) > idx {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let value = 0.5 * (lo + hi);
            out.push(Complex64::new(value, 0.0));
            // eigenvalue idx + 1 is never below eigenvalue idx
            lo_start = lo;
        }
        Ok(out)
    }
}

/// Dense complex Schur decomposition; handles any complex matrix.
#[derive(Default)]
pub struct DenseSchur {
    pub max_iterations: usize,
}

impl EigenSolver for DenseSchur {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn lowest(&self, matrix: &BandedMatrix, k: usize) -> Result<Vec<Complex64>> {
        let dense = matrix.to_dense();
        let diagnostic = || {
            Error::numerical(format!(
                "dense Schur did not converge (dimension {}, Frobenius norm {:e}, Gershgorin radius {:e})",
                dense.nrows(),
                dense.norm(),
                matrix.gershgorin_radius()
            ))
        };
        let schur = nalgebra::linalg::Schur::try_new(dense.clone(), f64::EPSILON, self.max_iterations)
            .ok_or_else(diagnostic)?;
        let eig = schur.eigenvalues().ok_or_else(diagnostic)?;
        let mut values: Vec<Complex64> = eig.iter().copied().collect();
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        values.truncate(k);
        Ok(values)
    }
}

#[derive(Clone)]
pub struct SolverRegistry {
    entries: BTreeMap<&'static str, Arc<dyn EigenSolver>>,
}

impl SolverRegistry {
    pub fn register<S: EigenSolver + 'static>(&mut self, solver: S) {
        self.entries.insert(solver.name(), Arc::new(solver));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn EigenSolver>> {
        self.entries.get(name).cloned().ok_or_else(|| Error::UnknownStrategy {
            family: "eigen solver",
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    /// `sturm` for real symmetric matrices, `dense` otherwise.
    pub fn auto(&self, matrix: &BandedMatrix) -> Result<Arc<dyn EigenSolver>> {
        self.get(if matrix.is_real() { "sturm" } else { "dense" })
    }
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut reg = Self {
            entries: BTreeMap::new(),
        };
        reg.register(SturmBisection);
        reg.register(DenseSchur::default());
        reg
    }
}

/// The `k` lowest-real-part grid eigenvalues, with the solver chosen from
/// the matrix structure.
pub fn eig_low(params: &MorseParams, spec: &GridSpec, k: usize) -> Result<Vec<Complex64>> {
    let matrix = build_grid_hamiltonian(params, spec);
    eig_low_matrix(&matrix, k, &*SolverRegistry::default().auto(&matrix)?)
}

pub fn eig_low_matrix(matrix: &BandedMatrix, k: usize, solver: &dyn EigenSolver) -> Result<Vec<Complex64>> {
    if k >= matrix.dim() {
        return Err(Error::precondition(format!(
            "asked for {k} eigenvalues of a {}-dimensional grid matrix",
            matrix.dim()
        )));
    }
    solver.lowest(matrix, k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumMatch {
    pub n: usize,
    pub analytic: Complex64,
    pub numeric: Option<Complex64>,
    pub delta: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchReport {
    pub matches: Vec<SpectrumMatch>,
    pub pass: bool,
}

/// Greedy nearest matching: each analytic level, in order, takes the
/// closest numeric value not yet used.
pub fn match_spectra(analytic: &[EnergyLevel], numeric: &[Complex64], tol_abs: f64) -> Result<MatchReport> {
    if !(tol_abs > 0.0) {
        return Err(Error::precondition(format!("tolerance must be > 0, got {tol_abs}")));
    }
    let mut used = vec![false; numeric.len()];
    let mut matches = Vec::with_capacity(analytic.len());
    for level in analytic {
        let best = numeric
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, z)| (i, (z - level.energy).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let entry = match best {
            Some((i, delta)) => {
                used[i] = true;
                SpectrumMatch {
                    n: level.n,
                    analytic: level.energy,
                    numeric: Some(numeric[i]),
                    delta,
                    pass: delta <= tol_abs,
                }
            }
            None => SpectrumMatch {
                n: level.n,
                analytic: level.energy,
                numeric: None,
                delta: f64::INFINITY,
                pass: false,
            },
        };
        matches.push(entry);
    }
    let pass = matches.iter().all(|m| m.pass);
    Ok(MatchReport { matches, pass })
}
