//! Subcommand implementations. Each returns its CSV/text output so the binary
//! and the tests share one code path.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use kemmer::algebra::{build_beta_set, dkp_residual};
use kemmer::dynamics::{expansion_coefficient, kinetic_energy, truncated_dispersion};
use kemmer::fields::{
    density, gaussian_packet, l2_distance, state_distance, strip_rest_phase, total_charge,
};
use kemmer::model::evolve_model;
use kemmer::{BetaSet, GaussianInt, Model, PhaseAlign, TwoComponentField};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::config::RunConfig;
use crate::{fmt_f64, CliError};

const UNITS: &str = "# units = natural (hbar = c = 1)";

/// Result of `verify-algebra`: the report text and whether every check held.
pub struct AlgebraReport {
    pub text: String,
    pub passed: bool,
}

/// Runs the 64 trilinear identities plus Hermiticity and `β³ = β`. With
/// `perturb`, the sign of `(β₁)₂₅` is flipped first so the checks must fail.
pub fn verify_algebra(perturb: bool) -> AlgebraReport {
    let mut beta = build_beta_set();
    if perturb {
        let mut b1 = *beta.get(1).expect("index 1 is valid");
        b1.set(2, 5, -GaussianInt::ONE).expect("indices are valid");
        beta = beta.with_beta(1, b1).expect("index 1 is valid");
    }
    algebra_report(&beta)
}

fn algebra_report(beta: &BetaSet) -> AlgebraReport {
    let mut text = String::new();
    let status = |ok: bool| if ok { "ok" } else { "FAIL" };
    writeln!(text, "# beta_mu beta_nu beta_rho + beta_rho beta_nu beta_mu = beta_mu delta_nu_rho + beta_rho delta_nu_mu").unwrap();
    writeln!(text, "mu nu rho status").unwrap();
    let mut held = 0;
    for mu in 1..=4 {
        for nu in 1..=4 {
            for rho in 1..=4 {
                let ok = dkp_residual(beta, mu, nu, rho)
                    .map(|r| r.is_zero())
                    .unwrap_or(false);
                held += ok as usize;
                writeln!(text, "{mu} {nu} {rho} {}", status(ok)).unwrap();
            }
        }
    }
    let mut structural = true;
    for (mu, b) in beta.iter() {
        let ok = b.is_hermitian();
        structural &= ok;
        writeln!(text, "hermitian beta_{mu} {}", status(ok)).unwrap();
    }
    for (mu, b) in beta.iter() {
        let ok = *b * *b * *b == *b;
        structural &= ok;
        writeln!(text, "cube beta_{mu} {}", status(ok)).unwrap();
    }
    writeln!(text, "{held}/64 identities hold").unwrap();
    AlgebraReport {
        text,
        passed: held == 64 && structural,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionArgs {
    pub mass: f64,
    pub k_max: f64,
    pub samples: usize,
    pub orders: Vec<usize>,
}

pub fn dispersion(args: &DispersionArgs) -> Result<String, CliError> {
    if !(args.mass.is_finite() && args.mass > 0.0) {
        return Err(CliError::Usage(format!("mass must be positive, got {}", args.mass)));
    }
    if !(args.k_max.is_finite() && args.k_max > 0.0) {
        return Err(CliError::Usage(format!("k-max must be positive, got {}", args.k_max)));
    }
    if args.samples < 2 {
        return Err(CliError::Usage("samples must be at least 2".into()));
    }
    if args.orders.contains(&0) {
        return Err(CliError::Usage("expansion orders must be at least 1".into()));
    }
    let m = args.mass;
    let mut out = String::new();
    writeln!(out, "# kemmer dispersion: kinetic energy E - m per wavenumber").unwrap();
    writeln!(out, "{UNITS}").unwrap();
    writeln!(out, "# mass = {}", fmt_f64(m)).unwrap();
    writeln!(out, "# expansion columns outside k < m lie beyond the series radius").unwrap();
    let mut header = vec!["k".to_string(), "exact".to_string()];
    header.extend(args.orders.iter().map(|n| format!("expansion_{n}")));
    header.push("schrodinger".into());
    writeln!(out, "{}", header.join(",")).unwrap();
    let last = (args.samples - 1) as f64;
    for i in 0..args.samples {
        let k = args.k_max * i as f64 / last;
        let k2 = k * k;
        let mut row = vec![fmt_f64(k), fmt_f64(kinetic_energy(k2, m)?)];
        for &n in &args.orders {
            row.push(fmt_f64(truncated_dispersion(k2, m, n)?.value));
        }
        row.push(fmt_f64(k2 / (2.0 * m)));
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    Ok(out)
}

/// `c_n` and the signed Taylor coefficient `(−1)^{n+1} c_n / 4^n` of `√(1+x)`.
pub fn expand(n_max: usize) -> Result<String, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("n-max must be at least 1".into()));
    }
    let mut out = String::new();
    writeln!(out, "# kemmer expansion coefficients c_n = (2n)!/((2n-1)(n!)^2)").unwrap();
    writeln!(out, "# taylor = (-1)^(n+1) c_n / 4^n, the x^n coefficient of sqrt(1+x)").unwrap();
    writeln!(out, "n,c_n,taylor").unwrap();
    for n in 1..=n_max {
        let c = expansion_coefficient(n)?;
        writeln!(out, "{n},{c},{}", taylor_string(n, &c)).unwrap();
    }
    Ok(out)
}

fn taylor_string(n: usize, c: &BigUint) -> String {
    let den = BigUint::one() << (2 * n);
    let g = c.gcd(&den);
    let (num, den) = (c / &g, den / &g);
    let sign = if n.is_multiple_of(2) { "-" } else { "" };
    if den.is_one() {
        format!("{sign}{num}")
    } else {
        format!("{sign}{num}/{den}")
    }
}

fn initial_state(cfg: &RunConfig) -> Result<TwoComponentField, CliError> {
    for w in cfg.packet.warnings(&cfg.grid) {
        eprintln!("warning: {w}");
    }
    Ok(gaussian_packet(&cfg.packet, &cfg.grid, cfg.mass)?)
}

fn physics_header(out: &mut String, cfg: &RunConfig) {
    let join = |v: &[f64]| v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(";");
    let points: Vec<String> = cfg.grid.points().iter().map(|n| n.to_string()).collect();
    writeln!(out, "{UNITS}").unwrap();
    writeln!(out, "# mass = {}", fmt_f64(cfg.mass)).unwrap();
    writeln!(out, "# grid.dim = {}", cfg.grid.dim()).unwrap();
    writeln!(out, "# grid.n = {}", points.join(";")).unwrap();
    writeln!(out, "# grid.length = {}", join(cfg.grid.lengths())).unwrap();
    writeln!(out, "# packet.center = {}", join(&cfg.packet.center)).unwrap();
    writeln!(out, "# packet.sigma = {}", fmt_f64(cfg.packet.sigma)).unwrap();
    writeln!(out, "# packet.k0 = {}", join(&cfg.packet.carrier)).unwrap();
    writeln!(out, "# packet.init = {}", cfg.packet.init).unwrap();
}

/// One snapshot per configured time. Returns `(file name, contents)` pairs.
pub fn evolve_snapshots(cfg: &RunConfig) -> Result<Vec<(String, String)>, CliError> {
    let initial = initial_state(cfg)?;
    let grid = &cfg.grid;
    let mut files = Vec::with_capacity(cfg.times.len());
    for (index, &t) in cfg.times.iter().enumerate() {
        let run = evolve_model(&initial, cfg.model, t)?;
        if run.beyond_radius && index == 0 {
            eprintln!("warning: grid modes with k >= m lie beyond the expansion's radius of convergence");
        }
        let state = run.value;
        let rho = density(&state);
        let mut out = String::new();
        writeln!(out, "# kemmer evolve snapshot").unwrap();
        physics_header(&mut out, cfg);
        writeln!(out, "# model = {}", cfg.model).unwrap();
        writeln!(out, "# t = {}", fmt_f64(t)).unwrap();
        writeln!(out, "# Q = {}", fmt_f64(total_charge(&state))).unwrap();
        let position_cols = if grid.dim() == 1 {
            "x".to_string()
        } else {
            let axes = ["x", "y", "z"];
            format!("index,{}", axes[..grid.dim()].join(","))
        };
        writeln!(out, "{position_cols},re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus,rho").unwrap();
        let (p, m) = (state.psi_plus().values(), state.psi_minus().values());
        for i in 0..grid.total_points() {
            let pos: Vec<String> = grid.position(i).into_iter().map(fmt_f64).collect();
            if grid.dim() > 1 {
                write!(out, "{i},").unwrap();
            }
            writeln!(
                out,
                "{},{},{},{},{},{}",
                pos.join(","),
                fmt_f64(p[i].re),
                fmt_f64(p[i].im),
                fmt_f64(m[i].re),
                fmt_f64(m[i].im),
                fmt_f64(rho[i])
            )
            .unwrap();
        }
        files.push((format!("snapshot_{index:04}.csv"), out));
    }
    Ok(files)
}

pub fn write_snapshots(dir: &Path, files: &[(String, String)]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    files
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body)?;
            Ok(path)
        })
        .collect()
}

/// Which part of the phase-stripped state `compare` measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum CompareState {
    /// φ₊ only.
    #[default]
    Large,
    /// φ₊ and φ₋ together.
    Full,
}

/// Phase-aligned distance between two models, on `φ₊` or on the whole
/// phase-stripped state. `cfg_b`, when given, supplies model B's packet and
/// must share the grid.
pub fn compare(
    cfg: &RunConfig,
    cfg_b: Option<&RunConfig>,
    model_a: Model,
    model_b: Model,
    state: CompareState,
) -> Result<String, CliError> {
    let initial_a = initial_state(cfg)?;
    let initial_b = match cfg_b {
        Some(b) => {
            if b.grid != cfg.grid {
                return Err(CliError::Config("configs use incompatible grids".into()));
            }
            if b.times != cfg.times {
                return Err(CliError::Config("configs use different output times".into()));
            }
            initial_state(b)?
        }
        None => initial_a.clone(),
    };
    let mut out = String::new();
    let what = match state {
        CompareState::Large => "phi_plus",
        CompareState::Full => "(phi_plus, phi_minus)",
    };
    writeln!(out, "# kemmer compare: phase-aligned relative L2 distance of {what}").unwrap();
    physics_header(&mut out, cfg);
    writeln!(out, "# model_a = {model_a}").unwrap();
    writeln!(out, "# model_b = {model_b}").unwrap();
    writeln!(out, "t,distance").unwrap();
    let mut warned = false;
    for &t in &cfg.times {
        let a = evolve_model(&initial_a, model_a, t)?;
        let b = evolve_model(&initial_b, model_b, t)?;
        if (a.beyond_radius || b.beyond_radius) && !warned {
            eprintln!("warning: grid modes with k >= m lie beyond the expansion's radius of convergence");
            warned = true;
        }
        let (a, b) = (strip_rest_phase(&a.value, t), strip_rest_phase(&b.value, t));
        let d = match state {
            CompareState::Large => l2_distance(a.psi_plus(), b.psi_plus(), PhaseAlign::Global)?,
            CompareState::Full => state_distance(&a, &b, PhaseAlign::Global)?,
        };
        writeln!(out, "{},{}", fmt_f64(t), fmt_f64(d)).unwrap();
    }
    Ok(out)
}
