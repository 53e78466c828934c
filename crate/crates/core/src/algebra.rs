//! Kemmer β-matrices of the five-dimensional representation and the exact
//! checks of the algebra they satisfy.
//!
//! Indices follow the physics convention: spacetime indices `μ ∈ {1,2,3,4}`
//! with `x₄ = it` (pseudo-euclidean metric), and component indices
//! `i ∈ {1,…,5}`. Storage is 0-based internally and never exposed.
//!
//! Plane waves are written `ψ = u·exp(i(k·x − Et))`, so that
//! `∂_k → ik_k`, `∂_t → −iE` and `∂₄ = −i∂_t → −E`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{check_mass, Error, Result};

/// A Gaussian integer `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const I: Self = Self::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub const fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// A 5×5 matrix over the Gaussian integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix5 {
    entries: [[GaussianInt; 5]; 5],
}

impl Default for Matrix5 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Matrix5 {
    pub const fn zero() -> Self {
        Self {
            entries: [[GaussianInt::ZERO; 5]; 5],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..5 {
            m.entries[i][i] = GaussianInt::ONE;
        }
        m
    }

    /// Entry `(i, j)` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> Result<GaussianInt> {
        let (i, j) = (component_slot(i)?, component_slot(j)?);
        Ok(self.entries[i][j])
    }

    /// Sets entry `(i, j)` with 1-based indices.
    pub fn set(&mut self, i: usize, j: usize, value: GaussianInt) -> Result<()> {
        let (i, j) = (component_slot(i)?, component_slot(j)?);
        self.entries[i][j] = value;
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..5 {
            for j in 0..5 {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_zero())
    }

    /// Number of non-zero entries.
    pub fn support(&self) -> usize {
        self.entries.iter().flatten().filter(|z| !z.is_zero()).count()
    }

    pub fn to_complex(&self) -> [[Complex64; 5]; 5] {
        self.entries.map(|row| row.map(GaussianInt::to_complex))
    }
}

impl Add for Matrix5 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (row, rrow) in self.entries.iter_mut().zip(rhs.entries.iter()) {
            for (a, b) in row.iter_mut().zip(rrow.iter()) {
                *a = *a + *b;
            }
        }
        self
    }
}

impl Sub for Matrix5 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Matrix5 {
    type Output = Self;
    fn neg(mut self) -> Self {
        for z in self.entries.iter_mut().flatten() {
            *z = -*z;
        }
        self
    }
}

impl Mul for Matrix5 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..5 {
            for j in 0..5 {
                out.entries[i][j] = (0..5).fold(GaussianInt::ZERO, |acc, l| {
                    acc + self.entries[i][l] * rhs.entries[l][j]
                });
            }
        }
        out
    }
}

impl fmt::Display for Matrix5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|z| format!("{z:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn component_slot(i: usize) -> Result<usize> {
    if (1..=5).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::IndexOutOfRange {
            what: "component",
            index: i as i64,
            lo: 1,
            hi: 5,
        })
    }
}

fn spacetime_slot(mu: usize) -> Result<usize> {
    if (1..=4).contains(&mu) {
        Ok(mu - 1)
    } else {
        Err(Error::IndexOutOfRange {
            what: "spacetime",
            index: mu as i64,
            lo: 1,
            hi: 4,
        })
    }
}

const fn kronecker(a: usize, b: usize) -> bool {
    a == b
}

/// The four β-matrices, indexed `μ = 1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BetaSet {
    beta: [Matrix5; 4],
}

impl BetaSet {
    pub fn from_matrices(beta: [Matrix5; 4]) -> Self {
        Self { beta }
    }

    /// `β_μ` with `μ ∈ {1,2,3,4}`.
    pub fn get(&self, mu: usize) -> Result<&Matrix5> {
        Ok(&self.beta[spacetime_slot(mu)?])
    }

    /// Returns a copy with `β_μ` replaced.
    pub fn with_beta(mut self, mu: usize, matrix: Matrix5) -> Result<Self> {
        self.beta[spacetime_slot(mu)?] = matrix;
        Ok(self)
    }

    /// Returns a copy with `β_μ` and `β_ν` exchanged.
    pub fn swapped(mut self, mu: usize, nu: usize) -> Result<Self> {
        self.beta.swap(spacetime_slot(mu)?, spacetime_slot(nu)?);
        Ok(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Matrix5)> {
        self.beta.iter().enumerate().map(|(s, b)| (s + 1, b))
    }
}

/// Kemmer's explicit representation:
///
/// ```text
/// (β_k)_ij = δ_{i,k+1} δ_{j,5} + δ_{j,k+1} δ_{i,5}     k = 1,2,3
/// (β_4)_ij = i (δ_{i,5} δ_{j,1} − δ_{j,5} δ_{i,1})
/// ```
pub fn build_beta_set() -> BetaSet {
    let mut beta = [Matrix5::zero(); 4];
    for (k, b) in beta.iter_mut().enumerate().take(3) {
        for i in 1..=5 {
            for j in 1..=5 {
                let hit = (kronecker(i, k + 2) && kronecker(j, 5))
                    || (kronecker(j, k + 2) && kronecker(i, 5));
                if hit {
                    b.entries[i - 1][j - 1] = GaussianInt::ONE;
                }
            }
        }
    }
    for i in 1..=5 {
        for j in 1..=5 {
            let value = match (i, j) {
                (5, 1) => GaussianInt::I,
                (1, 5) => -GaussianInt::I,
                _ => GaussianInt::ZERO,
            };
            beta[3].entries[i - 1][j - 1] = value;
        }
    }
    BetaSet { beta }
}

/// `β_μβ_νβ_ρ + β_ρβ_νβ_μ − β_μ δ_νρ − β_ρ δ_νμ`, exactly.
pub fn dkp_residual(b: &BetaSet, mu: usize, nu: usize, rho: usize) -> Result<Matrix5> {
    let (bm, bn, br) = (*b.get(mu)?, *b.get(nu)?, *b.get(rho)?);
    let mut residual = bm * bn * br + br * bn * bm;
    if nu == rho {
        residual = residual - bm;
    }
    if nu == mu {
        residual = residual - br;
    }
    Ok(residual)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DkpReport {
    pub checked: usize,
    /// Triples `(μ, ν, ρ)` whose residual is non-zero, in lexicographic order.
    pub failures: Vec<(usize, usize, usize)>,
}

impl DkpReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_all_dkp(b: &BetaSet) -> DkpReport {
    let mut report = DkpReport::default();
    for mu in 1..=4 {
        for nu in 1..=4 {
            for rho in 1..=4 {
                report.checked += 1;
                let zero = dkp_residual(b, mu, nu, rho)
                    .map(|r| r.is_zero())
                    .unwrap_or(false);
                if !zero {
                    report.failures.push((mu, nu, rho));
                }
            }
        }
    }
    report
}

/// Five-component momentum-space amplitude of a Kemmer plane wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveAmplitude {
    pub u: [Complex64; 5],
    pub energy: f64,
    pub k: [f64; 3],
    pub mass: f64,
}

/// Fills `u₁…u₄` from `u₅` through the component equations
/// `−∂tψ₅ + mψ₁ = 0` and `∂_kψ₅ + mψ_{k+1} = 0`.
pub fn build_planewave_amplitude(
    u5: Complex64,
    energy: f64,
    k: [f64; 3],
    mass: f64,
) -> Result<PlaneWaveAmplitude> {
    check_mass(mass)?;
    let minus_i = Complex64::new(0.0, -1.0);
    let mut u = [Complex64::new(0.0, 0.0); 5];
    u[0] = minus_i * energy * u5 / mass;
    for (axis, kk) in k.iter().enumerate() {
        u[axis + 1] = minus_i * *kk * u5 / mass;
    }
    u[4] = u5;
    Ok(PlaneWaveAmplitude {
        u,
        energy,
        k,
        mass,
    })
}

impl PlaneWaveAmplitude {
    /// Eigenvalues of `∂_μ` on the plane wave: `(ik₁, ik₂, ik₃, −E)`.
    pub fn derivative_eigenvalues(&self) -> [Complex64; 4] {
        [
            Complex64::new(0.0, self.k[0]),
            Complex64::new(0.0, self.k[1]),
            Complex64::new(0.0, self.k[2]),
            Complex64::new(-self.energy, 0.0),
        ]
    }

    /// `E² − m² − |k|²`.
    pub fn mass_shell_defect(&self) -> f64 {
        let k2: f64 = self.k.iter().map(|k| k * k).sum();
        self.energy * self.energy - self.mass * self.mass - k2
    }

    fn shell_scale(&self) -> f64 {
        let k2: f64 = self.k.iter().map(|k| k * k).sum();
        (self.energy * self.energy).max(self.mass * self.mass + k2)
    }
}

fn apply(m: &[[Complex64; 5]; 5], v: &[Complex64; 5]) -> [Complex64; 5] {
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for (o, row) in out.iter_mut().zip(m.iter()) {
        *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

fn norm5(v: &[Complex64; 5]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖(β_μ p_μ + m)·u‖` with `p_μ` the derivative eigenvalues. Equals
/// `|E² − m² − |k|²|·|u₅|/m`, so it vanishes exactly on the mass shell.
pub fn kemmer_equation_residual(b: &BetaSet, a: &PlaneWaveAmplitude) -> f64 {
    let p = a.derivative_eigenvalues();
    let mut total = a.u.map(|z| z * a.mass);
    for (mu, beta) in b.iter() {
        let bu = apply(&beta.to_complex(), &a.u);
        for (t, z) in total.iter_mut().zip(bu.iter()) {
            *t += p[mu - 1] * z;
        }
    }
    norm5(&total)
}

/// Relative mass-shell tolerance for [`derivative_relation_residual`].
pub const SHELL_TOLERANCE: f64 = 1e-9;

/// `‖p_ν u − β_μβ_ν p_μ u‖`. The relation `∂_νψ = β_μβ_ν∂_μψ` only holds for
/// solutions, so off-shell input is rejected.
pub fn derivative_relation_residual(
    b: &BetaSet,
    a: &PlaneWaveAmplitude,
    nu: usize,
) -> Result<f64> {
    let beta_nu = *b.get(nu)?;
    let defect = a.mass_shell_defect();
    if defect.abs() > SHELL_TOLERANCE * a.shell_scale() {
        return Err(Error::OffShell { defect });
    }
    let p = a.derivative_eigenvalues();
    let mut total = a.u.map(|z| z * p[nu - 1]);
    for (mu, beta_mu) in b.iter() {
        let prod = (*beta_mu * beta_nu).to_complex();
        let v = apply(&prod, &a.u);
        for (t, z) in total.iter_mut().zip(v.iter()) {
            *t -= p[mu - 1] * z;
        }
    }
    Ok(norm5(&total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn beta1_entries() {
        let b = build_beta_set();
        let b1 = b.get(1).unwrap();
        assert_eq!(b1.get(2, 5).unwrap(), GaussianInt::ONE);
        assert_eq!(b1.get(5, 2).unwrap(), GaussianInt::ONE);
        assert_eq!(b1.support(), 2);
    }

    #[test]
    fn beta4_entries() {
        let b = build_beta_set();
        let b4 = b.get(4).unwrap();
        assert_eq!(b4.get(5, 1).unwrap(), GaussianInt::I);
        assert_eq!(b4.get(1, 5).unwrap(), -GaussianInt::I);
        assert_eq!(b4.support(), 2);
    }

    #[test]
    fn spatial_betas_couple_gradient_slot_to_scalar() {
        let b = build_beta_set();
        for k in 1..=3 {
            let bk = b.get(k).unwrap();
            assert_eq!(bk.get(k + 1, 5).unwrap(), GaussianInt::ONE);
            assert_eq!(bk.get(5, k + 1).unwrap(), GaussianInt::ONE);
            assert_eq!(bk.support(), 2);
        }
    }

    #[test]
    fn betas_are_hermitian_and_idempotent_cubes() {
        let b = build_beta_set();
        for (_, beta) in b.iter() {
            assert!(beta.is_hermitian());
            assert_eq!(*beta * *beta * *beta, *beta);
        }
    }

    #[test]
    fn residual_examples() {
        let b = build_beta_set();
        for (mu, nu, rho) in [(1, 1, 1), (1, 4, 1), (2, 2, 3)] {
            assert!(dkp_residual(&b, mu, nu, rho).unwrap().is_zero());
        }
        let b1 = *b.get(1).unwrap();
        let b4 = *b.get(4).unwrap();
        assert!((b1 * b4 * b1).is_zero());
    }

    #[test]
    fn residual_rejects_bad_index() {
        let b = build_beta_set();
        assert!(matches!(
            dkp_residual(&b, 0, 1, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(dkp_residual(&b, 1, 5, 1).is_err());
    }

    #[test]
    fn full_verification_passes() {
        let report = verify_all_dkp(&build_beta_set());
        assert_eq!(report.checked, 64);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn zeroed_beta1_breaks_the_algebra() {
        // With β₁ = 0 every term containing β₁ drops; the only survivors are
        // the right-hand sides β_μ δ_{1ρ} (ρ = 1, μ ≠ 1) and β_ρ δ_{1μ}
        // (μ = 1, ρ ≠ 1).
        let b = build_beta_set().with_beta(1, Matrix5::zero()).unwrap();
        let report = verify_all_dkp(&b);
        assert!(!report.passed());
        assert!(!report.failures.contains(&(1, 1, 1)));
        let expected = vec![(1, 1, 2), (1, 1, 3), (1, 1, 4), (2, 1, 1), (3, 1, 1), (4, 1, 1)];
        assert_eq!(report.failures, expected);
    }

    #[test]
    fn swapping_spatial_axes_preserves_the_algebra() {
        let b = build_beta_set().swapped(2, 3).unwrap();
        assert!(verify_all_dkp(&b).passed());
    }

    #[test]
    fn rest_frame_amplitude() {
        let a = build_planewave_amplitude(c(1.0, 0.0), 1.0, [0.0; 3], 1.0).unwrap();
        assert_eq!(a.u, [c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn moving_amplitude() {
        let e = 2f64.sqrt();
        let a = build_planewave_amplitude(c(1.0, 0.0), e, [1.0, 0.0, 0.0], 1.0).unwrap();
        let expected = [c(0.0, -e), c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        for (x, y) in a.u.iter().zip(expected.iter()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_amplitude_is_zero() {
        let a = build_planewave_amplitude(c(0.0, 0.0), 3.0, [0.1, 0.2, 0.3], 2.0).unwrap();
        assert!(a.u.iter().all(|z| z.norm() == 0.0));
        assert_eq!(kemmer_equation_residual(&build_beta_set(), &a), 0.0);
    }

    #[test]
    fn amplitude_rejects_nonpositive_mass() {
        assert!(matches!(
            build_planewave_amplitude(c(1.0, 0.0), 1.0, [0.0; 3], 0.0),
            Err(Error::InvalidMass(_))
        ));
        assert!(build_planewave_amplitude(c(1.0, 0.0), 1.0, [0.0; 3], -1.0).is_err());
    }

    #[test]
    fn kemmer_residual_on_and_off_shell() {
        let b = build_beta_set();
        let k = [0.3, -0.4, 1.2];
        let m = 1.7;
        let e = (m * m + k.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let on = build_planewave_amplitude(c(0.6, -0.8), e, k, m).unwrap();
        assert!(kemmer_equation_residual(&b, &on) < 1e-12);

        let rest = build_planewave_amplitude(c(1.0, 0.0), 1.0, [0.0; 3], 1.0).unwrap();
        assert!(kemmer_equation_residual(&b, &rest) < 1e-12);

        let off = build_planewave_amplitude(c(1.0, 0.0), 1.0, [1.0, 0.0, 0.0], 1.0).unwrap();
        let r = kemmer_equation_residual(&b, &off);
        assert!(r > 0.1);
        // Only the fifth row survives: (m² + k² − E²)·u₅/m.
        assert!((r * off.mass - off.mass_shell_defect().abs()).abs() < 1e-14);
    }

    #[test]
    fn derivative_relation_on_shell() {
        let b = build_beta_set();
        let m = 1.0;
        let k = [0.3, 0.0, 0.0];
        let e = (m * m + 0.09f64).sqrt();
        let a = build_planewave_amplitude(c(1.0, 0.0), e, k, m).unwrap();
        for nu in 1..=4 {
            assert!(derivative_relation_residual(&b, &a, nu).unwrap() < 1e-12);
        }
        let zero = PlaneWaveAmplitude {
            u: [c(0.0, 0.0); 5],
            ..a
        };
        assert_eq!(derivative_relation_residual(&b, &zero, 2).unwrap(), 0.0);
    }

    #[test]
    fn derivative_relation_flags_off_shell() {
        let b = build_beta_set();
        let a = build_planewave_amplitude(c(1.0, 0.0), 1.0, [1.0, 0.0, 0.0], 1.0).unwrap();
        assert!(matches!(
            derivative_relation_residual(&b, &a, 4),
            Err(Error::OffShell { .. })
        ));
    }

    #[test]
    fn display_is_stable() {
        let s = build_beta_set().get(4).unwrap().to_string();
        assert_eq!(s.lines().count(), 5);
        assert!(s.lines().next().unwrap().contains("-i"));
    }
}
