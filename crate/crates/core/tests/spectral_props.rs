use kemmer::grid::{forward_transform, inverse_transform};
use kemmer::{Complex64, Field, GridSpec};
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn random_values(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn rel_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

fn grids() -> Vec<GridSpec> {
    vec![
        GridSpec::uniform_1d(512, 200.0).unwrap(),
        GridSpec::new(vec![16, 32], vec![3.0, 7.5]).unwrap(),
        GridSpec::new(vec![8, 4, 16], vec![1.0, 2.0, 4.0]).unwrap(),
    ]
}

#[test]
fn round_trip_is_identity() {
    let mut rng = StdRng::seed_from_u64(7);
    for g in grids() {
        for _ in 0..5 {
            let f = random_values(&mut rng, g.total_points());
            let back = inverse_transform(&g, &forward_transform(&g, &f).unwrap()).unwrap();
            assert!(rel_err(&back, &f) < 1e-12);
        }
    }
}

#[test]
fn parseval() {
    let mut rng = StdRng::seed_from_u64(11);
    for g in grids() {
        let f = random_values(&mut rng, g.total_points());
        let modes = forward_transform(&g, &f).unwrap();
        let dx = g.cell_volume();
        let n = g.total_points() as f64;
        let space: f64 = f.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx;
        let freq: f64 = modes.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx / n;
        assert!((space - freq).abs() < 1e-12 * space);
    }
}

#[test]
fn forward_matches_direct_sum() {
    // Brute-force O(N²) DFT on a small 2-d grid.
    let g = GridSpec::new(vec![4, 8], vec![2.0, 5.0]).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    let f = random_values(&mut rng, g.total_points());
    let modes = forward_transform(&g, &f).unwrap();
    for (slot, mode) in modes.iter().enumerate() {
        let k = g.wavenumber(&g.mode_index(slot)).unwrap();
        let direct: Complex64 = (0..g.total_points())
            .map(|i| {
                let x = g.position(i);
                let phase = -(k[0] * x[0] + k[1] * x[1]);
                f[i] * Complex64::from_polar(1.0, phase)
            })
            .sum();
        assert!((direct - mode).norm() < 1e-12);
    }
}

#[test]
fn laplacian_of_representable_modes_in_3d() {
    let g = GridSpec::new(vec![4, 8, 4], vec![1.0, 2.0, 3.0]).unwrap();
    let k2 = g.k_squared();
    for slot in [0, 5, 17, 63, 100, 127] {
        let k = g.wavenumber(&g.mode_index(slot)).unwrap();
        let f = Field::from_fn(&g, |x| {
            Complex64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2])
        });
        let lap = f.laplacian();
        let expected = f.scaled(Complex64::new(-k2[slot], 0.0));
        let worst = lap
            .values()
            .iter()
            .zip(expected.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12 * (1.0 + k2[slot]), "slot {slot}: {worst}");
    }
}
