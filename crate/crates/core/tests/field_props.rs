use kemmer::dynamics::{evolve_two_component, kg_oracle_evolve, small_component_ratio};
use kemmer::fields::{
    density, density_from_kemmer, from_kemmer, gaussian_packet, kg_initial_data, l2_distance,
    to_kemmer, total_charge, PhaseAlign,
};
use kemmer::{Complex64, Field, GridSpec, InitMode, TwoComponentField, WavePacketSpec};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn packet(n: usize, l: f64, sigma: f64, k0: f64, init: InitMode) -> TwoComponentField {
    let grid = GridSpec::uniform_1d(n, l).unwrap();
    let spec = WavePacketSpec::centered(&grid, sigma, vec![k0], init);
    gaussian_packet(&spec, &grid, 1.0).unwrap()
}

fn random_state(seed: u64) -> TwoComponentField {
    let grid = GridSpec::new(vec![16, 8], vec![5.0, 3.0]).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut random = || {
        let values = (0..grid.total_points())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Field::new(grid.clone(), values).unwrap()
    };
    TwoComponentField::new(1.3, random(), random()).unwrap()
}

#[test]
fn charge_conserved_along_a_trajectory() {
    for init in [
        InitMode::PositiveEnergyEigenmode,
        InitMode::PsiMinusZero,
        InitMode::NegativeEnergyEigenmode,
    ] {
        let state = packet(256, 100.0, 4.0, 0.5, init);
        let q0 = total_charge(&state);
        let mut current = state;
        for _ in 0..20 {
            current = evolve_two_component(&current, 3.7).unwrap();
            assert!((total_charge(&current) - q0).abs() < 1e-12, "{init}");
        }
    }
}

#[test]
fn charge_of_random_states_conserved() {
    for seed in 0..5 {
        let state = random_state(seed);
        let q0 = total_charge(&state);
        let scale = state.psi_plus().norm().powi(2) + state.psi_minus().norm().powi(2);
        for t in [0.1, 2.0, 17.0] {
            let q = total_charge(&evolve_two_component(&state, t).unwrap());
            assert!((q - q0).abs() < 1e-12 * scale);
        }
    }
}

#[test]
fn density_routes_agree() {
    for seed in 0..5 {
        let state = random_state(seed);
        let direct = density(&state);
        let via = density_from_kemmer(&to_kemmer(&state));
        let peak = direct.iter().fold(0.0f64, |a, r| a.max(r.abs()));
        for (a, b) in direct.iter().zip(&via) {
            assert!((a - b).abs() < 1e-12 * peak.max(1.0));
        }
        let back = from_kemmer(&to_kemmer(&state));
        assert!(l2_distance(state.psi_plus(), back.psi_plus(), PhaseAlign::None).unwrap() < 1e-14);
        assert!(l2_distance(state.psi_minus(), back.psi_minus(), PhaseAlign::None).unwrap() < 1e-14);
    }
}

#[test]
fn psi5_satisfies_klein_gordon_mode_by_mode() {
    // Second difference in time: ψ̂(t+h) + ψ̂(t−h) = 2cos(E h)ψ̂(t) exactly.
    let state = packet(512, 200.0, 5.0, 0.3, InitMode::PsiMinusZero);
    let grid = state.grid().clone();
    let k2 = grid.k_squared();
    let (t, h) = (7.0, 0.05);
    let psi5 = |s: f64| kg_initial_data(&evolve_two_component(&state, s).unwrap()).0.forward();
    let (a, b, c) = (psi5(t + h), psi5(t - h), psi5(t));
    let peak = c.values().iter().fold(0.0f64, |m, z| m.max(z.norm()));
    for (i, &k2) in k2.iter().enumerate() {
        let e = (1.0 + k2).sqrt();
        let r = a.values()[i] + b.values()[i] - c.values()[i] * (2.0 * (e * h).cos());
        assert!(r.norm() < 1e-10 * peak.max(1.0), "mode {i}: {}", r.norm());
    }
}

#[test]
fn oracle_and_two_component_agree() {
    let state = packet(512, 200.0, 5.0, 0.3, InitMode::PositiveEnergyEigenmode);
    let (psi5, rate) = kg_initial_data(&state);
    for t in [0.5, 1.0, 5.0, 20.0, 100.0, 333.3] {
        let (oracle, _) = kg_oracle_evolve(&psi5, &rate, 1.0, t).unwrap();
        let ours = kg_initial_data(&evolve_two_component(&state, t).unwrap()).0;
        assert!(l2_distance(&oracle, &ours, PhaseAlign::None).unwrap() < 1e-10, "t = {t}");
    }
}

#[test]
fn small_component_scales_like_k_squared() {
    // ‖ψ₋‖/‖ψ₊‖ ≈ k0²/4m² for a narrow-band positive-energy packet.
    for k0 in [0.025, 0.05, 0.1] {
        let state = packet(1024, 800.0, 50.0, k0, InitMode::PositiveEnergyEigenmode);
        let ratio = state.psi_minus().norm() / state.psi_plus().norm();
        let predicted = small_component_ratio(k0 * k0, 1.0).unwrap().abs();
        assert!(ratio / predicted < 1.5 && predicted / ratio < 1.5, "k0 = {k0}");
        assert!((ratio / (k0 * k0 / 4.0) - 1.0).abs() < 0.5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_reverses(seed in 0u64..1000, t in -30.0f64..30.0) {
        let state = random_state(seed);
        let back = evolve_two_component(&evolve_two_component(&state, t).unwrap(), -t).unwrap();
        prop_assert!(l2_distance(state.psi_plus(), back.psi_plus(), PhaseAlign::None).unwrap() < 1e-12);
        prop_assert!(l2_distance(state.psi_minus(), back.psi_minus(), PhaseAlign::None).unwrap() < 1e-12);
    }

    #[test]
    fn evolution_composes(seed in 0u64..1000, t in 0.0f64..10.0, s in 0.0f64..10.0) {
        let state = random_state(seed);
        let two_step = evolve_two_component(&evolve_two_component(&state, t).unwrap(), s).unwrap();
        let one_step = evolve_two_component(&state, t + s).unwrap();
        prop_assert!(l2_distance(one_step.psi_plus(), two_step.psi_plus(), PhaseAlign::None).unwrap() < 1e-11);
    }

    #[test]
    fn packets_carry_unit_charge(
        sigma in 2.0f64..10.0, k0 in -1.0f64..1.0, init_idx in 0usize..3,
    ) {
        let init = [InitMode::PositiveEnergyEigenmode, InitMode::PsiMinusZero, InitMode::NegativeEnergyEigenmode][init_idx];
        let state = packet(256, 100.0, sigma, k0, init);
        let expected = if init == InitMode::NegativeEnergyEigenmode { -1.0 } else { 1.0 };
        prop_assert!((total_charge(&state) - expected).abs() < 1e-12);
    }
}
