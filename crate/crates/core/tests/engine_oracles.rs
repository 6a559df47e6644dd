//! Fixed-point solver checks against independent evaluations of
//! `ψ(L_i(x)) = q_i(x) + s_i(x) ψ(x)`.

use cliffrac_core::{
    empirical_gamma, fif_from_data, fixed_point, fixed_point_from, norm, rb_apply,
    self_referential_residual, AffinePartition, Grid, GridFunction, RBParams, SamplingMode,
    ScalarFn, SpaceSpec,
};
use proptest::prelude::*;

/// Evaluates the fractal interpolant through `data` (uniform knots, constant
/// multiplier `s`) by following the address of `x` through the inverse maps
/// `depth` times. Built only from the data, not from `RBParams`.
fn address_oracle(data: &[(f64, f64)], s: f64, x: f64, depth: usize) -> f64 {
    if depth == 0 {
        return 0.0;
    }
    let (x0, y0) = data[0];
    let (xn, yn) = data[data.len() - 1];
    let pieces = data.len() - 1;
    // left subinterval owns shared endpoints
    let i = (0..pieces)
        .find(|&i| x <= data[i + 1].0)
        .unwrap_or(pieces - 1);
    let (a, b) = (data[i].0, data[i + 1].0);
    let t = (x - a) / (b - a);
    let pre = x0 + t * (xn - x0);
    // q_i is affine in the pre-image with q_i(x0) = y_{i-1} - s y0, q_i(xn) = y_i - s yN
    let q = (1.0 - t) * (data[i].1 - s * y0) + t * (data[i + 1].1 - s * yn);
    q + s * address_oracle(data, s, pre, depth - 1)
}

#[test]
fn fif_matches_address_oracle() {
    let data = [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0)];
    let params = fif_from_data(&data, &[0.5, 0.5], 1024, SamplingMode::Aligned).unwrap();
    let fp = fixed_point(&params, 1e-12, 1000, 0.5).unwrap();
    let grid = *params.grid();
    let mid = fp.solution.value(512);
    assert!((mid - address_oracle(&data, 0.5, 0.5, 30)).abs() < 1e-8);
    for j in (0..=1024).step_by(37) {
        let oracle = address_oracle(&data, 0.5, grid.point(j), 30);
        assert!(
            (fp.solution.value(j) - oracle).abs() < 1e-8,
            "x = {}",
            grid.point(j)
        );
    }
}

#[test]
fn fif_hits_data_and_satisfies_self_reference() {
    let data = [(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)];
    let params = fif_from_data(&data, &[0.3, 0.3], 1024, SamplingMode::Aligned).unwrap();
    let tol = 1e-12;
    let fp = fixed_point(&params, tol, 1000, 0.3).unwrap();
    for (j, y) in [(0, 0.0), (512, 1.0), (1024, 0.0)] {
        assert!((fp.solution.value(j) - y).abs() <= 1e-10);
    }
    assert!(self_referential_residual(&params, &fp.solution).unwrap() <= 2.0 * tol);
    let again = rb_apply(&params, &fp.solution).unwrap();
    assert!(again.sup_distance(&fp.solution).unwrap() <= 2.0 * tol);
}

#[test]
fn constant_data_fixed_point_and_uniqueness() {
    let tol = 1e-12;
    for pieces in [2, 3, 4] {
        let partition = AffinePartition::uniform(0.0, 1.0, pieces).unwrap();
        let grid = Grid::new(0.0, 1.0, 1020).unwrap();
        let (c, s) = (0.7, -0.6);
        let params = RBParams::new(
            partition,
            grid,
            vec![ScalarFn::Constant(c); pieces],
            vec![ScalarFn::Constant(s); pieces],
            SamplingMode::Aligned,
        )
        .unwrap();
        let from_zero = fixed_point(&params, tol, 1000, 0.6).unwrap();
        let exact = c / (1.0 - s);
        assert!(from_zero
            .solution
            .values()
            .iter()
            .all(|v| (v - exact).abs() <= tol));
        let noisy = GridFunction::from_fn(grid, |x| 5.0 * (13.0 * x).sin()).unwrap();
        let from_noise = fixed_point_from(&params, noisy, tol, 1000, 0.6).unwrap();
        assert!(
            from_zero
                .solution
                .sup_distance(&from_noise.solution)
                .unwrap()
                <= 2.0 * tol
        );
    }
}

#[test]
fn empirical_gamma_matches_exhaustive_maximum() {
    // For constant s, Tf - Tg = s (f - g)∘L_i⁻¹ and every L_i⁻¹ reaches every
    // grid point, so the ratio is exactly |s| up to rounding.
    let partition = AffinePartition::uniform(-1.0, 2.0, 3).unwrap();
    let grid = Grid::new(-1.0, 2.0, 300).unwrap();
    let params = RBParams::new(
        partition,
        grid,
        vec![ScalarFn::Poly(vec![1.0, 2.0, -3.0]); 3],
        vec![ScalarFn::Constant(-0.45); 3],
        SamplingMode::Aligned,
    )
    .unwrap();
    let g = empirical_gamma(&params, 50, 99).unwrap();
    assert!((g - 0.45).abs() < 1e-14, "{g}");
}

#[test]
fn sampled_multiplier_contraction() {
    let partition = AffinePartition::from_knots(&[0.0, 0.5, 0.75, 1.0]).unwrap();
    let grid = Grid::new(0.0, 1.0, 64).unwrap();
    let s_fn = |scale: f64| {
        ScalarFn::Samples(GridFunction::from_fn(grid, |x| scale * (3.0 * x).cos()).unwrap())
    };
    let params = RBParams::new(
        partition,
        grid,
        vec![ScalarFn::Constant(1.0); 3],
        vec![s_fn(0.5), s_fn(-0.8), s_fn(0.2)],
        SamplingMode::Aligned,
    )
    .unwrap();
    let bound = params.max_s();
    assert!(empirical_gamma(&params, 100, 3).unwrap() <= bound + 1e-9);
    let fp = fixed_point(&params, 1e-11, 10_000, bound).unwrap();
    let again = rb_apply(&params, &fp.solution).unwrap();
    assert!(again.sup_distance(&fp.solution).unwrap() <= 2e-11);
    // q_i ≡ 1 with different s_i is discontinuous at the knots, so the
    // self-referential equation fails exactly at the shared junction points
    assert!(self_referential_residual(&params, &fp.solution).unwrap() > 1e-3);
}

#[test]
fn interpolated_mode_converges_to_aligned_solution() {
    // M = 1000 is not aligned with knots at 1/3; compare against M = 999.
    let data = [(0.0, 0.0), (1.0 / 3.0, 1.0), (2.0 / 3.0, -0.5), (1.0, 0.25)];
    let aligned = fif_from_data(&data, &[0.2, -0.3, 0.25], 999, SamplingMode::Aligned).unwrap();
    let interp =
        fif_from_data(&data, &[0.2, -0.3, 0.25], 1000, SamplingMode::Interpolated).unwrap();
    let a = fixed_point(&aligned, 1e-12, 1000, 0.3).unwrap().solution;
    let b = fixed_point(&interp, 1e-12, 1000, 0.3).unwrap().solution;
    let worst = a
        .grid()
        .points()
        .zip(a.values())
        .map(|(x, v)| (b.interpolate(x) - v).abs())
        .fold(0.0, f64::max);
    // the attractor is rough, so only a loose agreement is expected
    assert!(worst < 0.05, "{worst}");
}

#[test]
fn l2_norm_against_closed_form() {
    let f = GridFunction::from_fn(Grid::new(0.0, 1.0, 1024).unwrap(), |x| x).unwrap();
    let got = norm(&SpaceSpec::Lp { p: 2.0 }, &f).unwrap();
    assert!((got - 1.0 / 3f64.sqrt()).abs() < 1.0 / (1024.0 * 1024.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn empirical_gamma_never_exceeds_multiplier_bound(
        pieces in 2usize..=4,
        s in prop::collection::vec(-0.99f64..0.99, 4),
        seed in any::<u64>(),
    ) {
        let partition = AffinePartition::uniform(0.0, 1.0, pieces).unwrap();
        let grid = Grid::new(0.0, 1.0, 96).unwrap();
        let params = RBParams::new(
            partition,
            grid,
            vec![ScalarFn::Poly(vec![0.1, -0.4]); pieces],
            s[..pieces].iter().map(|&v| ScalarFn::Constant(v)).collect(),
            SamplingMode::Aligned,
        ).unwrap();
        prop_assert!(empirical_gamma(&params, 10, seed).unwrap() <= params.max_s() + 1e-9);
    }

    #[test]
    fn fif_interpolates_random_data(
        ys in prop::collection::vec(-5.0f64..5.0, 5),
        s in prop::collection::vec(-0.8f64..0.8, 4),
    ) {
        let data: Vec<_> = ys.iter().enumerate().map(|(j, &y)| (j as f64 * 0.25, y)).collect();
        let params = fif_from_data(&data, &s, 256, SamplingMode::Aligned).unwrap();
        let gamma = params.max_s();
        let fp = fixed_point(&params, 1e-12, 5000, gamma).unwrap();
        for (j, &(_, y)) in data.iter().enumerate() {
            prop_assert!((fp.solution.value(j * 64) - y).abs() <= 1e-10);
        }
    }
}
