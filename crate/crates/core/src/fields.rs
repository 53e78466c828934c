//! Field containers, wave packets and the charge density.
//!
//! The two descriptions of the same state are linked by
//!
//! ```text
//! ψ₊ = (ψ₅ + iψ₁)/√2,   ψ₋ = (ψ₅ − iψ₁)/√2
//! ψ₁ = ∂tψ₅/m,          ψ_{k+1} = −∂_kψ₅/m
//! ```
//!
//! and the conserved density is `ρ = i(ψ₅*ψ₁ − ψ₁*ψ₅) = |ψ₊|² − |ψ₋|²`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::dynamics::mode_matrix;
use crate::error::{check_mass, Error, Result};
use crate::grid::{Field, GridSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The dynamical state `(ψ₊, ψ₋)`; after [`strip_rest_phase`] the same type
/// holds `(φ₊, φ₋)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoComponentField {
    mass: f64,
    psi_plus: Field,
    psi_minus: Field,
}

impl TwoComponentField {
    pub fn new(mass: f64, psi_plus: Field, psi_minus: Field) -> Result<Self> {
        check_mass(mass)?;
        psi_plus.same_grid(&psi_minus)?;
        Ok(Self {
            mass,
            psi_plus,
            psi_minus,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn grid(&self) -> &GridSpec {
        self.psi_plus.grid()
    }

    pub fn psi_plus(&self) -> &Field {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &Field {
        &self.psi_minus
    }

    pub fn into_components(self) -> (Field, Field) {
        (self.psi_plus, self.psi_minus)
    }
}

/// The five Kemmer components `ψ₁…ψ₅` in position space. Gradient slots for
/// axes the grid does not have are identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct KemmerField {
    mass: f64,
    psi: [Field; 5],
}

impl KemmerField {
    pub fn new(mass: f64, psi: [Field; 5]) -> Result<Self> {
        check_mass(mass)?;
        for c in &psi[1..] {
            psi[0].same_grid(c)?;
        }
        Ok(Self { mass, psi })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn grid(&self) -> &GridSpec {
        self.psi[0].grid()
    }

    /// Component `ψ_i`, `i ∈ {1,…,5}`.
    pub fn component(&self, i: usize) -> Result<&Field> {
        if (1..=5).contains(&i) {
            Ok(&self.psi[i - 1])
        } else {
            Err(Error::IndexOutOfRange {
                what: "component",
                index: i as i64,
                lo: 1,
                hi: 5,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitMode {
    /// Every Fourier mode placed on the positive-energy eigenvector of `H(k²)`.
    #[default]
    PositiveEnergyEigenmode,
    /// `ψ₊` is the envelope and `ψ₋ = 0`; excites both frequency branches.
    PsiMinusZero,
    /// Every mode on the negative-energy eigenvector; normalized to `Q = −1`.
    NegativeEnergyEigenmode,
}

impl InitMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PositiveEnergyEigenmode => "positive-energy-eigenmode",
            Self::PsiMinusZero => "psi-minus-zero",
            Self::NegativeEnergyEigenmode => "negative-energy-eigenmode",
        }
    }
}

impl fmt::Display for InitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for InitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive-energy-eigenmode" | "eigenmode" => Ok(Self::PositiveEnergyEigenmode),
            "psi-minus-zero" => Ok(Self::PsiMinusZero),
            "negative-energy-eigenmode" => Ok(Self::NegativeEnergyEigenmode),
            other => Err(Error::InvalidArgument(format!("unknown init mode '{other}'"))),
        }
    }
}

/// Gaussian packet `exp(−(x − x₀)²/4σ²)·exp(ik₀·x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePacketSpec {
    pub center: Vec<f64>,
    pub sigma: f64,
    pub carrier: Vec<f64>,
    pub init: InitMode,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PacketWarning {
    Underresolved { sigma: f64, min: f64 },
    Wrapping { sigma: f64, max: f64 },
}

impl fmt::Display for PacketWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Underresolved { sigma, min } => {
                write!(f, "packet width {sigma} is below 4 grid spacings ({min})")
            }
            Self::Wrapping { sigma, max } => {
                write!(f, "packet width {sigma} exceeds L/8 ({max}); tails wrap around")
            }
        }
    }
}

impl WavePacketSpec {
    /// Packet centred in the box.
    pub fn centered(grid: &GridSpec, sigma: f64, carrier: Vec<f64>, init: InitMode) -> Self {
        Self {
            center: grid.lengths().iter().map(|l| 0.5 * l).collect(),
            sigma,
            carrier,
            init,
        }
    }

    /// Resolution and wrap-around checks: `4Δx ≤ σ ≤ L/8` on every axis.
    pub fn warnings(&self, grid: &GridSpec) -> Vec<PacketWarning> {
        let mut out = Vec::new();
        let min = (0..grid.dim())
            .map(|a| 4.0 * grid.spacing(a))
            .fold(0.0, f64::max);
        let max = grid
            .lengths()
            .iter()
            .map(|l| l / 8.0)
            .fold(f64::INFINITY, f64::min);
        if self.sigma < min {
            out.push(PacketWarning::Underresolved {
                sigma: self.sigma,
                min,
            });
        }
        if self.sigma > max {
            out.push(PacketWarning::Wrapping {
                sigma: self.sigma,
                max,
            });
        }
        out
    }

    fn validate(&self, grid: &GridSpec) -> Result<()> {
        if self.center.len() != grid.dim() || self.carrier.len() != grid.dim() {
            return Err(Error::InvalidArgument(format!(
                "packet center/carrier need {} components",
                grid.dim()
            )));
        }
        if self.sigma.is_nan() || self.sigma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "packet width must be positive, got {}",
                self.sigma
            )));
        }
        if self.center.iter().chain(&self.carrier).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("packet center/carrier must be finite".into()));
        }
        Ok(())
    }
}

/// Displacement wrapped to `[−L/2, L/2)`.
fn wrap(d: f64, length: f64) -> f64 {
    d - length * (d / length + 0.5).floor()
}

/// The scalar envelope on the grid (minimum-image distances to the centre).
pub fn packet_envelope(spec: &WavePacketSpec, grid: &GridSpec) -> Result<Field> {
    spec.validate(grid)?;
    let lengths = grid.lengths().to_vec();
    Ok(Field::from_fn(grid, |x| {
        let mut arg = 0.0;
        let mut phase = 0.0;
        for a in 0..x.len() {
            let d = wrap(x[a] - spec.center[a], lengths[a]);
            arg += d * d;
            phase += spec.carrier[a] * (spec.center[a] + d);
        }
        let amp = (-arg / (4.0 * spec.sigma * spec.sigma)).exp();
        Complex64::from_polar(amp, phase)
    }))
}

/// Builds a packet and normalizes it to total charge `Q = 1` (`Q = −1` for
/// the negative-energy branch).
pub fn gaussian_packet(
    spec: &WavePacketSpec,
    grid: &GridSpec,
    mass: f64,
) -> Result<TwoComponentField> {
    check_mass(mass)?;
    let envelope = packet_envelope(spec, grid)?;
    let state = match spec.init {
        InitMode::PsiMinusZero => TwoComponentField::new(mass, envelope, Field::zeros(grid))?,
        InitMode::PositiveEnergyEigenmode | InitMode::NegativeEnergyEigenmode => {
            let modes = envelope.forward();
            let k2 = grid.k_squared();
            let mut large = modes.values().to_vec();
            let mut small = modes.values().to_vec();
            for ((l, s), &k2) in large.iter_mut().zip(small.iter_mut()).zip(&k2) {
                let r = mode_matrix(k2, mass)?.positive_eigenvector()[1];
                *s = *l * r;
            }
            let large = Field::new(grid.clone(), std::mem::take(&mut large))?.inverse();
            let small = Field::new(grid.clone(), small)?.inverse();
            if spec.init == InitMode::PositiveEnergyEigenmode {
                TwoComponentField::new(mass, large, small)?
            } else {
                TwoComponentField::new(mass, small, large)?
            }
        }
    };
    let q = total_charge(&state);
    if q == 0.0 || !q.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let scale = Complex64::new(1.0 / q.abs().sqrt(), 0.0);
    let (p, m) = state.into_components();
    TwoComponentField::new(mass, p.scaled(scale), m.scaled(scale))
}

pub fn to_kemmer(f: &TwoComponentField) -> KemmerField {
    let grid = f.grid().clone();
    let mass = f.mass();
    let (p, m) = (f.psi_plus().values(), f.psi_minus().values());
    let psi5: Vec<Complex64> = p.iter().zip(m).map(|(a, b)| (a + b) * FRAC_1_SQRT_2).collect();
    let psi1: Vec<Complex64> = p
        .iter()
        .zip(m)
        .map(|(a, b)| -I * (a - b) * FRAC_1_SQRT_2)
        .collect();
    let psi5 = Field::new(grid.clone(), psi5).expect("length matches grid");
    let psi1 = Field::new(grid.clone(), psi1).expect("length matches grid");
    let gradient = |axis: usize| {
        if axis < grid.dim() {
            psi5.derivative(axis)
                .expect("axis within grid dimension")
                .scaled(Complex64::new(-1.0 / mass, 0.0))
        } else {
            Field::zeros(&grid)
        }
    };
    let psi = [psi1.clone(), gradient(0), gradient(1), gradient(2), psi5.clone()];
    KemmerField { mass, psi }
}

/// Inverse of the `(ψ₅, ψ₁)` block of [`to_kemmer`].
pub fn from_kemmer(k: &KemmerField) -> TwoComponentField {
    let grid = k.grid().clone();
    let (psi1, psi5) = (k.psi[0].values(), k.psi[4].values());
    let plus = psi5.iter().zip(psi1).map(|(a, b)| (a + I * b) * FRAC_1_SQRT_2).collect();
    let minus = psi5.iter().zip(psi1).map(|(a, b)| (a - I * b) * FRAC_1_SQRT_2).collect();
    TwoComponentField {
        mass: k.mass,
        psi_plus: Field::new(grid.clone(), plus).expect("length matches grid"),
        psi_minus: Field::new(grid, minus).expect("length matches grid"),
    }
}

/// Klein-Gordon data `(ψ₅, ∂tψ₅)` with `∂tψ₅ = mψ₁`.
pub fn kg_initial_data(f: &TwoComponentField) -> (Field, Field) {
    let k = to_kemmer(f);
    let rate = k.psi[0].scaled(Complex64::new(f.mass(), 0.0));
    (k.psi[4].clone(), rate)
}

/// Rebuilds `(ψ₊, ψ₋)` from Klein-Gordon data via `ψ₁ = ∂tψ₅/m`.
pub fn from_kg_data(psi5: &Field, dpsi5_dt: &Field, mass: f64) -> Result<TwoComponentField> {
    check_mass(mass)?;
    psi5.same_grid(dpsi5_dt)?;
    let inv_m = 1.0 / mass;
    let (v, r) = (psi5.values(), dpsi5_dt.values());
    let plus = v.iter().zip(r).map(|(a, b)| (a + I * b * inv_m) * FRAC_1_SQRT_2).collect();
    let minus = v.iter().zip(r).map(|(a, b)| (a - I * b * inv_m) * FRAC_1_SQRT_2).collect();
    TwoComponentField::new(
        mass,
        Field::new(psi5.grid().clone(), plus)?,
        Field::new(psi5.grid().clone(), minus)?,
    )
}

/// `ρ = |ψ₊|² − |ψ₋|²`, pointwise.
pub fn density(f: &TwoComponentField) -> Vec<f64> {
    f.psi_plus()
        .values()
        .iter()
        .zip(f.psi_minus().values())
        .map(|(p, m)| p.norm_sqr() - m.norm_sqr())
        .collect()
}

/// `ρ = i(ψ₅*ψ₁ − ψ₁*ψ₅)`, pointwise.
pub fn density_from_kemmer(k: &KemmerField) -> Vec<f64> {
    k.psi[4]
        .values()
        .iter()
        .zip(k.psi[0].values())
        .map(|(p5, p1)| (I * (p5.conj() * p1 - p1.conj() * p5)).re)
        .collect()
}

/// Neumaier-compensated sum in index order.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `Q = Σ ρ·∏Δx_j`.
pub fn total_charge(f: &TwoComponentField) -> f64 {
    compensated_sum(density(f)) * f.grid().cell_volume()
}

/// `⟨x_j⟩ = Σ x_j ρ / Σ ρ` for each axis, using grid coordinates in `[0, L)`.
pub fn position_expectation(f: &TwoComponentField) -> Result<Vec<f64>> {
    let rho = density(f);
    let q = compensated_sum(rho.iter().copied());
    if q == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let grid = f.grid();
    Ok((0..grid.dim())
        .map(|axis| {
            let moment = compensated_sum(
                rho.iter()
                    .enumerate()
                    .map(|(i, r)| grid.position(i)[axis] * r),
            );
            moment / q
        })
        .collect())
}

/// Multiplies both components by `e^{+imt}`, turning `ψ±` into `φ±`.
pub fn strip_rest_phase(f: &TwoComponentField, t: f64) -> TwoComponentField {
    let phase = Complex64::from_polar(1.0, f.mass() * t);
    TwoComponentField {
        mass: f.mass,
        psi_plus: f.psi_plus.scaled(phase),
        psi_minus: f.psi_minus.scaled(phase),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseAlign {
    None,
    /// Remove the global phase that minimizes the distance.
    Global,
}

/// `‖a − e^{iθ}b‖/‖a‖`, with `θ = arg⟨b, a⟩` under [`PhaseAlign::Global`].
pub fn l2_distance(a: &Field, b: &Field, align: PhaseAlign) -> Result<f64> {
    a.same_grid(b)?;
    let norm_a = a.norm();
    if norm_a == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let rotation = match align {
        PhaseAlign::None => Complex64::new(1.0, 0.0),
        PhaseAlign::Global => {
            let overlap = b.inner(a)?;
            if overlap.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                overlap / overlap.norm()
            }
        }
    };
    let diff = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - rotation * y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(diff / norm_a)
}

/// [`l2_distance`] over both components at once, `‖Ψa − e^{iθ}Ψb‖/‖Ψa‖`
/// with `‖Ψ‖² = ‖ψ₊‖² + ‖ψ₋‖²` and one shared phase `θ`.
pub fn state_distance(
    a: &TwoComponentField,
    b: &TwoComponentField,
    align: PhaseAlign,
) -> Result<f64> {
    a.psi_plus.same_grid(&b.psi_plus)?;
    let norm_a = a.psi_plus.norm().hypot(a.psi_minus.norm());
    if norm_a == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let rotation = match align {
        PhaseAlign::None => Complex64::new(1.0, 0.0),
        PhaseAlign::Global => {
            let overlap = b.psi_plus.inner(&a.psi_plus)? + b.psi_minus.inner(&a.psi_minus)?;
            if overlap.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                overlap / overlap.norm()
            }
        }
    };
    let sq = |x: &Field, y: &Field| -> f64 {
        x.values()
            .iter()
            .zip(y.values())
            .map(|(p, q)| (p - rotation * q).norm_sqr())
            .sum()
    };
    let diff = (sq(&a.psi_plus, &b.psi_plus) + sq(&a.psi_minus, &b.psi_minus)).sqrt();
    Ok(diff / norm_a)
}

/// Rest period `2π/m`.
pub fn rest_period(mass: f64) -> f64 {
    2.0 * PI / mass
}
