//! Seeded fixtures shared by the benchmarks.

use std::collections::BTreeMap;

use cliffrac_core::{
    fif_from_data, AffinePartition, BladeIndex, CliffordRBParams, Grid, Multivector, RBParams,
    SamplingMode, ScalarFn,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_multivector(n: usize, seed: u64) -> Multivector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..1 << n).map(|_| rng.random_range(-1.0..1.0)).collect();
    Multivector::from_coeffs(n, coeffs).expect("n within range")
}

/// Three-point interpolation problem on a grid of `m` cells (`m` even).
pub fn fif_params(m: usize) -> RBParams {
    let data = [(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)];
    fif_from_data(&data, &[0.3, 0.3], m, SamplingMode::Aligned).expect("aligned fixture")
}

/// A lifted operator with random constant `q` on every blade of `ℝₙ`.
pub fn clifford_params(n: usize, pieces: usize, m: usize, seed: u64) -> CliffordRBParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let partition = AffinePartition::uniform(0.0, 1.0, pieces).expect("pieces ≥ 2");
    let grid = Grid::new(0.0, 1.0, m).expect("m ≥ 1");
    let q = (0..pieces)
        .map(|_| {
            (0..1u32 << n)
                .map(|mask| {
                    (
                        BladeIndex::from_mask(mask),
                        ScalarFn::Poly(vec![
                            rng.random_range(-1.0..1.0),
                            rng.random_range(-1.0..1.0),
                        ]),
                    )
                })
                .collect::<BTreeMap<_, _>>()
        })
        .collect();
    let s = (0..pieces)
        .map(|_| ScalarFn::Constant(rng.random_range(-0.6..0.6)))
        .collect();
    CliffordRBParams::new(n, partition, grid, q, s, SamplingMode::Aligned).expect("aligned fixture")
}
