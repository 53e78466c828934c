//! Free-particle dynamics, one Fourier mode at a time.
//!
//! Substituting `∇² → −k²` in the two-component equations gives, per mode,
//! `i∂t(ψ₊, ψ₋) = H(k²)·(ψ₊, ψ₋)` with
//!
//! ```text
//! H = [[ m + k²/2m,      k²/2m    ],
//!      [  −k²/2m,    −(m + k²/2m) ]]
//! ```
//!
//! `H` is traceless with `H² = (m² + k²)·I`, so `exp(−iHt)` has the closed
//! form `cos(Et)·I − i·sin(Et)/E·H`. Every evolution here is exact per mode;
//! the only error left is round-off.

use num_bigint::BigUint;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_mass, Error, Result};
use crate::fields::TwoComponentField;
use crate::grid::Field;

pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A value together with a flag recording that some mode had `k² ≥ m²`,
/// where the `1/m` series for the dispersion no longer converges.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<T> {
    pub value: T,
    pub beyond_radius: bool,
}

fn check_k2(k2: f64) -> Result<()> {
    if k2.is_finite() && k2 >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("k² must be finite and >= 0, got {k2}")))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("time must be finite, got {t}")))
    }
}

/// `E = √(m² + k²)`.
pub fn mode_energy(k2: f64, mass: f64) -> Result<f64> {
    check_mass(mass)?;
    check_k2(k2)?;
    Ok(mass.hypot(k2.sqrt()))
}

/// `E − m`, written as `k²/(E + m)` to avoid cancellation at small `k`.
pub fn kinetic_energy(k2: f64, mass: f64) -> Result<f64> {
    let e = mode_energy(k2, mass)?;
    Ok(k2 / (e + mass))
}

/// `a·b + c·d` with the rounding error of `c·d` recovered by a fused
/// multiply-add, so `a² − b²` stays accurate when `a ≈ b`.
#[inline]
fn dot2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = c * d;
    let err = c.mul_add(d, -w);
    a.mul_add(b, w) + err
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMatrix {
    pub mass: f64,
    pub k2: f64,
    entries: [[f64; 2]; 2],
}

pub fn mode_matrix(k2: f64, mass: f64) -> Result<ModeMatrix> {
    check_mass(mass)?;
    check_k2(k2)?;
    Ok(raw_mode_matrix(k2, mass))
}

#[inline]
fn raw_mode_matrix(k2: f64, mass: f64) -> ModeMatrix {
    let b = k2 / (2.0 * mass);
    let a = mass + b;
    ModeMatrix {
        mass,
        k2,
        entries: [[a, b], [-b, -a]],
    }
}

impl ModeMatrix {
    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn determinant(&self) -> f64 {
        let [[a, b], [c, d]] = self.entries;
        dot2(a, d, -b, c)
    }

    pub fn squared(&self) -> [[f64; 2]; 2] {
        let h = self.entries;
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = dot2(h[i][0], h[0][j], h[i][1], h[1][j]);
            }
        }
        out
    }

    /// `η·H` with `η = diag(1, −1)`; symmetric for every `k²`.
    pub fn eta_h(&self) -> [[f64; 2]; 2] {
        let [r0, r1] = self.entries;
        [r0, [-r1[0], -r1[1]]]
    }

    /// `(+E, −E)` from the characteristic polynomial `λ² − tr·λ + det`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let half_tr = 0.5 * self.trace();
        let disc = (half_tr * half_tr - self.determinant()).sqrt();
        [half_tr + disc, half_tr - disc]
    }

    pub fn energy(&self) -> f64 {
        self.mass.hypot(self.k2.sqrt())
    }

    /// Positive-energy eigenvector `(1, r)` with `r` from
    /// [`small_component_ratio`].
    pub fn positive_eigenvector(&self) -> [f64; 2] {
        [1.0, self.small_ratio()]
    }

    /// Negative-energy eigenvector `(r, 1)`; the generator maps one branch to
    /// the other under `ψ₊ ↔ ψ₋, H → −H`.
    pub fn negative_eigenvector(&self) -> [f64; 2] {
        [self.small_ratio(), 1.0]
    }

    fn small_ratio(&self) -> f64 {
        let s = self.energy() + self.mass;
        -self.k2 / (s * s)
    }

    pub fn to_complex(&self) -> Mat2 {
        self.entries.map(|row| row.map(|x| Complex64::new(x, 0.0)))
    }
}

/// `ψ₋/ψ₊` on the positive-energy eigenvector of `H(k²)`.
///
/// Equal to `(2m(E − m) − k²)/k²`; evaluated as `−k²/(E + m)²`, which is
/// free of cancellation and gives 0 at `k² = 0`.
pub fn small_component_ratio(k2: f64, mass: f64) -> Result<f64> {
    Ok(mode_matrix(k2, mass)?.small_ratio())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    matrix: Mat2,
}

impl Propagator {
    pub fn identity() -> Self {
        Self {
            matrix: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn from_matrix(matrix: Mat2) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    #[inline]
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let p = &self.matrix;
        [
            p[0][0] * v[0] + p[0][1] * v[1],
            p[1][0] * v[0] + p[1][1] * v[1],
        ]
    }

    /// `self · other`.
    pub fn compose(&self, other: &Propagator) -> Propagator {
        Propagator {
            matrix: mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn adjoint(&self) -> Propagator {
        let p = &self.matrix;
        Propagator {
            matrix: [
                [p[0][0].conj(), p[1][0].conj()],
                [p[0][1].conj(), p[1][1].conj()],
            ],
        }
    }

    pub fn determinant(&self) -> Complex64 {
        let p = &self.matrix;
        p[0][0] * p[1][1] - p[0][1] * p[1][0]
    }

    /// Largest entry of `|P†ηP − η|`.
    pub fn eta_unitarity_defect(&self) -> f64 {
        let eta = [[ONE, ZERO], [ZERO, -ONE]];
        let lhs = mat_mul(&self.adjoint().matrix, &mat_mul(&eta, &self.matrix));
        max_entry_diff(&lhs, &eta)
    }

    /// Largest entry of `|self − other|`.
    pub fn max_diff(&self, other: &Propagator) -> f64 {
        max_entry_diff(&self.matrix, &other.matrix)
    }
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn max_entry_diff(a: &Mat2, b: &Mat2) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `exp(−iH(k²)t) = cos(Et)·I − i·(sin(Et)/E)·H`.
pub fn propagator(k2: f64, mass: f64, t: f64) -> Result<Propagator> {
    check_time(t)?;
    let h = mode_matrix(k2, mass)?;
    Ok(propagator_unchecked(&h, t))
}

#[inline]
fn propagator_unchecked(h: &ModeMatrix, t: f64) -> Propagator {
    let e = h.energy();
    let (sin, cos) = (e * t).sin_cos();
    let c = Complex64::new(cos, 0.0);
    let s = Complex64::new(0.0, -sin / e);
    let hm = h.to_complex();
    Propagator {
        matrix: [
            [c + s * hm[0][0], s * hm[0][1]],
            [s * hm[1][0], c + s * hm[1][1]],
        ],
    }
}

/// Exact evolution of `(ψ₊, ψ₋)` by a time `t`.
pub fn evolve_two_component(state: &TwoComponentField, t: f64) -> Result<TwoComponentField> {
    check_time(t)?;
    let mass = state.mass();
    let grid = state.grid().clone();
    let k2 = grid.k_squared();
    let mut plus = state.psi_plus().forward().into_values();
    let mut minus = state.psi_minus().forward().into_values();
    plus.par_iter_mut()
        .zip(minus.par_iter_mut())
        .zip(k2.par_iter())
        .for_each(|((p, q), &k2)| {
            let h = raw_mode_matrix(k2, mass);
            let [np, nq] = propagator_unchecked(&h, t).apply([*p, *q]);
            *p = np;
            *q = nq;
        });
    let plus = Field::new(grid.clone(), plus)?.inverse();
    let minus = Field::new(grid, minus)?.inverse();
    TwoComponentField::new(mass, plus, minus)
}

/// Second-order Klein-Gordon evolution of `(ψ₅, ∂tψ₅)`, exact per mode:
///
/// ```text
/// ψ₅(t)   = ψ₅(0)·cos(Et) + ∂tψ₅(0)·sin(Et)/E
/// ∂tψ₅(t) = −E·ψ₅(0)·sin(Et) + ∂tψ₅(0)·cos(Et)
/// ```
pub fn kg_oracle_evolve(
    psi5: &Field,
    dpsi5_dt: &Field,
    mass: f64,
    t: f64,
) -> Result<(Field, Field)> {
    check_mass(mass)?;
    check_time(t)?;
    psi5.same_grid(dpsi5_dt)?;
    let grid = psi5.grid().clone();
    let k2 = grid.k_squared();
    let mut value = psi5.forward().into_values();
    let mut rate = dpsi5_dt.forward().into_values();
    value
        .par_iter_mut()
        .zip(rate.par_iter_mut())
        .zip(k2.par_iter())
        .for_each(|((v, r), &k2)| {
            let e = mass.hypot(k2.sqrt());
            let (sin, cos) = (e * t).sin_cos();
            let (v0, r0) = (*v, *r);
            *v = v0 * cos + r0 * (sin / e);
            *r = -v0 * (e * sin) + r0 * cos;
        });
    Ok((
        Field::new(grid.clone(), value)?.inverse(),
        Field::new(grid, rate)?.inverse(),
    ))
}

fn apply_phase(field: &Field, t: f64, omega: impl Fn(f64) -> f64 + Sync) -> Result<Field> {
    let grid = field.grid().clone();
    let k2 = grid.k_squared();
    let mut modes = field.forward().into_values();
    modes.par_iter_mut().zip(k2.par_iter()).for_each(|(z, &k2)| {
        let (sin, cos) = (-omega(k2) * t).sin_cos();
        *z *= Complex64::new(cos, sin);
    });
    Ok(Field::new(grid, modes)?.inverse())
}

/// `i∂tφ = −∇²φ/2m`: each mode picks up `exp(−i·k²t/2m)`.
pub fn schrodinger_evolve(phi: &Field, mass: f64, t: f64) -> Result<Field> {
    check_mass(mass)?;
    check_time(t)?;
    apply_phase(phi, t, |k2| k2 / (2.0 * mass))
}

/// Phase-stripped exact evolution of a pure positive-energy large component:
/// each mode picks up `exp(−i(E − m)t)`.
pub fn relativistic_phase_evolve(phi: &Field, mass: f64, t: f64) -> Result<Field> {
    check_mass(mass)?;
    check_time(t)?;
    apply_phase(phi, t, |k2| k2 / (mass.hypot(k2.sqrt()) + mass))
}

/// `c_n = (2n)!/((2n − 1)·(n!)²)`, exactly.
pub fn expansion_coefficient(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let factorial = |k: usize| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
    let nf = factorial(n);
    let numerator = factorial(2 * n);
    let denominator = BigUint::from(2 * n - 1) * &nf * &nf;
    debug_assert!((&numerator % &denominator) == BigUint::from(0u32));
    Ok(numerator / denominator)
}

/// Floating-point `c_n` for `n = 1..=order`, via
/// `C(2n, n) = C(2n − 2, n − 1)·2(2n − 1)/n`.
fn coefficients_f64(order: usize) -> Vec<f64> {
    let mut central = 1.0;
    (1..=order)
        .map(|n| {
            let nf = n as f64;
            central *= 2.0 * (2.0 * nf - 1.0) / nf;
            central / (2.0 * nf - 1.0)
        })
        .collect()
}

/// `E_N − m = m·Σ_{n=1..N} (−1)^{n+1} c_n (k²/4m²)^n`.
pub fn truncated_dispersion(k2: f64, mass: f64, order: usize) -> Result<Truncated<f64>> {
    check_mass(mass)?;
    check_k2(k2)?;
    if order == 0 {
        return Err(Error::InvalidOrder(order));
    }
    let coeffs = coefficients_f64(order);
    Ok(Truncated {
        value: series_sum(&coeffs, k2, mass),
        beyond_radius: k2 >= mass * mass,
    })
}

fn series_sum(coeffs: &[f64], k2: f64, mass: f64) -> f64 {
    let x = k2 / (4.0 * mass * mass);
    let mut power = 1.0;
    let mut sum = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        power *= x;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * c * power;
    }
    mass * sum
}

/// Evolves a large component under the dispersion truncated at order `N`.
pub fn truncated_evolve(phi: &Field, mass: f64, t: f64, order: usize) -> Result<Truncated<Field>> {
    check_mass(mass)?;
    check_time(t)?;
    if order == 0 {
        return Err(Error::InvalidOrder(order));
    }
    let coeffs = coefficients_f64(order);
    let beyond_radius = phi.grid().k_squared().iter().any(|&k2| k2 >= mass * mass);
    let value = apply_phase(phi, t, |k2| series_sum(&coeffs, k2, mass))?;
    Ok(Truncated {
        value,
        beyond_radius,
    })
}
