//! Periodic grids and the discrete Fourier transform.
//!
//! Samples are stored row-major (last axis fastest). Position `i` on axis `j`
//! sits at `x = i·Δx_j` with `Δx_j = L_j/N_j`. Mode slot `s` on an axis of
//! `N` points carries the signed index `n = s` for `s < N/2` and `n = s − N`
//! otherwise, so the Nyquist slot is the most negative mode `−N/2`.
//!
//! The forward transform is the unnormalized sum
//! `F_n = Σ_x f_x e^{−ik_n·x}`; the inverse carries the `1/∏N_j` factor.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    points: Vec<usize>,
    lengths: Vec<f64>,
}

impl GridSpec {
    /// A grid of dimension `points.len() ∈ {1,2,3}`; each axis needs a
    /// power-of-two point count (at least 2) and a positive finite length.
    pub fn new(points: Vec<usize>, lengths: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() > 3 {
            return Err(Error::InvalidGrid(format!(
                "dimension must be 1, 2 or 3, got {}",
                points.len()
            )));
        }
        if points.len() != lengths.len() {
            return Err(Error::InvalidGrid(format!(
                "{} point counts but {} lengths",
                points.len(),
                lengths.len()
            )));
        }
        for &n in &points {
            if n < 2 || !n.is_power_of_two() {
                return Err(Error::InvalidGrid(format!(
                    "axis size {n} is not a power of two >= 2"
                )));
            }
        }
        for &l in &lengths {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidGrid(format!("axis length {l} must be positive")));
            }
        }
        Ok(Self { points, lengths })
    }

    pub fn uniform_1d(points: usize, length: f64) -> Result<Self> {
        Self::new(vec![points], vec![length])
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn total_points(&self) -> usize {
        self.points.iter().product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.lengths[axis] / self.points[axis] as f64
    }

    /// `∏ Δx_j`.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.spacing(a)).product()
    }

    fn stride(&self, axis: usize) -> usize {
        self.points[axis + 1..].iter().product()
    }

    /// Per-axis sample indices of a flat index.
    pub fn unflatten(&self, flat: usize) -> Vec<usize> {
        (0..self.dim())
            .map(|a| (flat / self.stride(a)) % self.points[a])
            .collect()
    }

    pub fn position(&self, flat: usize) -> Vec<f64> {
        self.unflatten(flat)
            .into_iter()
            .enumerate()
            .map(|(a, i)| i as f64 * self.spacing(a))
            .collect()
    }

    /// Signed mode index stored at a flat slot.
    pub fn mode_index(&self, flat: usize) -> ModeIndex {
        let slots = self.unflatten(flat);
        ModeIndex(
            slots
                .into_iter()
                .zip(&self.points)
                .map(|(s, &n)| signed_mode(s, n))
                .collect(),
        )
    }

    /// `k_j = 2π n_j / L_j`.
    pub fn wavenumber(&self, idx: &ModeIndex) -> Result<Vec<f64>> {
        if idx.0.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "mode index has {} axes, grid has {}",
                idx.0.len(),
                self.dim()
            )));
        }
        idx.0
            .iter()
            .enumerate()
            .map(|(a, &n)| {
                let half = (self.points[a] / 2) as i64;
                if n < -half || n >= half {
                    Err(Error::IndexOutOfRange {
                        what: "mode",
                        index: n,
                        lo: -half,
                        hi: half - 1,
                    })
                } else {
                    Ok(2.0 * PI * n as f64 / self.lengths[a])
                }
            })
            .collect()
    }

    /// Wavenumbers of one axis in storage order.
    pub fn axis_wavenumbers(&self, axis: usize) -> Vec<f64> {
        let n = self.points[axis];
        (0..n)
            .map(|s| 2.0 * PI * signed_mode(s, n) as f64 / self.lengths[axis])
            .collect()
    }

    /// `k²` for every flat mode slot.
    pub fn k_squared(&self) -> Vec<f64> {
        let axes: Vec<Vec<f64>> = (0..self.dim()).map(|a| self.axis_wavenumbers(a)).collect();
        (0..self.total_points())
            .map(|flat| {
                self.unflatten(flat)
                    .iter()
                    .enumerate()
                    .map(|(a, &s)| axes[a][s] * axes[a][s])
                    .sum()
            })
            .collect()
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        let expected = self.total_points();
        if len == expected {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected,
                actual: len,
            })
        }
    }
}

fn signed_mode(slot: usize, n: usize) -> i64 {
    if slot < n / 2 {
        slot as i64
    } else {
        slot as i64 - n as i64
    }
}

/// Signed per-axis mode numbers `n_j ∈ [−N_j/2, N_j/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeIndex(pub Vec<i64>);

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn transform_axes(grid: &GridSpec, data: &mut [Complex64], direction: FftDirection) {
    for axis in 0..grid.dim() {
        let n = grid.points[axis];
        let stride = grid.stride(axis);
        let fft = PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction));
        if stride == 1 {
            fft.process(data);
            continue;
        }
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let block = n * stride;
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, z) in line.iter_mut().enumerate() {
                    *z = data[base + i * stride];
                }
                fft.process(&mut line);
                for (i, z) in line.iter().enumerate() {
                    data[base + i * stride] = *z;
                }
            }
        }
    }
}

/// Unnormalized forward DFT over every axis.
pub fn forward_transform(grid: &GridSpec, samples: &[Complex64]) -> Result<Vec<Complex64>> {
    grid.check_len(samples.len())?;
    let mut out = samples.to_vec();
    transform_axes(grid, &mut out, FftDirection::Forward);
    Ok(out)
}

/// Inverse DFT including the `1/∏N_j` factor.
pub fn inverse_transform(grid: &GridSpec, modes: &[Complex64]) -> Result<Vec<Complex64>> {
    grid.check_len(modes.len())?;
    let mut out = modes.to_vec();
    transform_axes(grid, &mut out, FftDirection::Inverse);
    let scale = 1.0 / grid.total_points() as f64;
    out.iter_mut().for_each(|z| *z *= scale);
    Ok(out)
}

/// Complex samples bound to a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl Field {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        grid.check_len(values.len())?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: &GridSpec) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.total_points()],
            grid: grid.clone(),
        }
    }

    /// Samples `f(x)` at every grid position.
    pub fn from_fn(grid: &GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.total_points()).map(|i| f(&grid.position(i))).collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn same_grid(&self, other: &Field) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Plain Euclidean norm of the samples (no cell volume).
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ conj(self)·other`.
    pub fn inner(&self, other: &Field) -> Result<Complex64> {
        self.same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scaled(&self, factor: Complex64) -> Field {
        Field {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn forward(&self) -> Field {
        let mut values = self.values.clone();
        transform_axes(&self.grid, &mut values, FftDirection::Forward);
        Field {
            grid: self.grid.clone(),
            values,
        }
    }

    pub fn inverse(&self) -> Field {
        let mut values = self.values.clone();
        transform_axes(&self.grid, &mut values, FftDirection::Inverse);
        let scale = 1.0 / self.grid.total_points() as f64;
        values.iter_mut().for_each(|z| *z *= scale);
        Field {
            grid: self.grid.clone(),
            values,
        }
    }

    /// Spectral `∂/∂x_axis`.
    pub fn derivative(&self, axis: usize) -> Result<Field> {
        if axis >= self.grid.dim() {
            return Err(Error::IndexOutOfRange {
                what: "axis",
                index: axis as i64,
                lo: 0,
                hi: self.grid.dim() as i64 - 1,
            });
        }
        let k = self.grid.axis_wavenumbers(axis);
        let mut modes = self.forward();
        for (flat, z) in modes.values.iter_mut().enumerate() {
            let s = (flat / self.grid.stride(axis)) % self.grid.points[axis];
            *z *= Complex64::new(0.0, k[s]);
        }
        Ok(modes.inverse())
    }

    /// Spectral Laplacian `Σ_j ∂²/∂x_j²`.
    pub fn laplacian(&self) -> Field {
        let k2 = self.grid.k_squared();
        let mut modes = self.forward();
        for (z, k2) in modes.values.iter_mut().zip(&k2) {
            *z *= -k2;
        }
        modes.inverse()
    }

    /// Flat sample indices.
    pub fn indices(&self) -> Range<usize> {
        0..self.values.len()
    }
}
