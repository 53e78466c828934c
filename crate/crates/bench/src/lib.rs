//! Fixtures shared by the benchmarks.

use kemmer::fields::gaussian_packet;
use kemmer::{GridSpec, InitMode, TwoComponentField, WavePacketSpec};

/// Unit-charge eigenmode packet on a 1-d grid of `n` points, `L = n/4`.
pub fn packet_1d(n: usize) -> TwoComponentField {
    let grid = GridSpec::uniform_1d(n, n as f64 / 4.0).expect("power-of-two grid");
    let spec = WavePacketSpec::centered(&grid, n as f64 / 64.0, vec![0.3], InitMode::default());
    gaussian_packet(&spec, &grid, 1.0).expect("packet")
}

/// The same packet on a square 2-d grid.
pub fn packet_2d(n: usize) -> TwoComponentField {
    let l = n as f64 / 4.0;
    let grid = GridSpec::new(vec![n, n], vec![l, l]).expect("power-of-two grid");
    let spec = WavePacketSpec::centered(&grid, l / 16.0, vec![0.3, 0.1], InitMode::default());
    gaussian_packet(&spec, &grid, 1.0).expect("packet")
}
