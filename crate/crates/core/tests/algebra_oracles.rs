//! Independent oracles for the Clifford algebra kernels.

use cliffrac_core::{blade_mul, BladeIndex, Multivector, Paravector};
use proptest::prelude::*;

/// `e_a e_b` by writing out both index lists, bubble-sorting the
/// concatenation while counting swaps, then cancelling equal neighbours
/// (`e_i e_i = -1`).
fn blade_oracle(a: &[usize], b: &[usize]) -> (i8, Vec<usize>) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1i8;
    for pass in 0..word.len() {
        for i in 0..word.len().saturating_sub(1 + pass) {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
            }
        }
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.len() {
        if i + 1 < word.len() && word[i] == word[i + 1] {
            sign = -sign;
            i += 2;
        } else {
            out.push(word[i]);
            i += 1;
        }
    }
    (sign, out)
}

fn indices_of(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| b + 1)
        .collect()
}

#[test]
fn blade_mul_matches_transposition_oracle_up_to_n8() {
    for n in 1..=8usize {
        let dim = 1u32 << n;
        for a in 0..dim {
            for b in 0..dim {
                let (sign, c) =
                    blade_mul(BladeIndex::from_mask(a), BladeIndex::from_mask(b), n).unwrap();
                let (osign, oc) = blade_oracle(&indices_of(a), &indices_of(b));
                assert_eq!(
                    (sign, c.indices()),
                    (osign, oc),
                    "n = {n}, a = {a:b}, b = {b:b}"
                );
            }
        }
    }
}

#[test]
fn oracle_spot_checks() {
    assert_eq!(blade_oracle(&[1, 2], &[1]), (1, vec![2]));
    assert_eq!(blade_oracle(&[1], &[1]), (-1, vec![]));
    assert_eq!(blade_oracle(&[2], &[1]), (-1, vec![1, 2]));
}

/// Conjugation by reversing the factor list and negating each factor.
fn conj_oracle_sign(indices: &[usize]) -> f64 {
    let reversed: Vec<usize> = indices.iter().rev().copied().collect();
    let negations = if indices.len() % 2 == 1 { -1.0 } else { 1.0 };
    // reorder the reversed word back to increasing order
    let (sign, rest) = blade_oracle(&reversed, &[]);
    assert_eq!(rest, indices);
    negations * sign as f64
}

#[test]
fn conj_matches_reversal_oracle() {
    let n = 6;
    for mask in 0..(1u32 << n) {
        let blade = BladeIndex::from_mask(mask);
        let x = Multivector::blade(n, blade, 1.0).unwrap();
        assert_eq!(
            x.conj().coeff(blade),
            conj_oracle_sign(&blade.indices()),
            "{blade}"
        );
    }
}

#[test]
fn generators_anticommute() {
    for n in 1..=6 {
        for i in 1..=n {
            let ei = Multivector::basis_vector(n, i).unwrap();
            assert_eq!(&ei * &ei, Multivector::scalar(n, -1.0).unwrap());
            for j in i + 1..=n {
                let ej = Multivector::basis_vector(n, j).unwrap();
                assert_eq!(&ei * &ej, -&(&ej * &ei));
            }
        }
    }
}

/// Power series `Σ c_k x^k` with multivector powers; `coeff(k)` gives `c_k`.
fn series(x: &Multivector, terms: usize, coeff: impl Fn(usize) -> f64) -> Multivector {
    let mut power = Multivector::scalar(x.n(), 1.0).unwrap();
    let mut sum = Multivector::zero(x.n()).unwrap();
    for k in 0..terms {
        sum = &sum + &(&power * coeff(k));
        power = &power * x;
    }
    sum
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn exp_series(x: &Multivector) -> Multivector {
    series(x, 30, |k| 1.0 / factorial(k))
}

fn sin_series(x: &Multivector) -> Multivector {
    series(x, 30, |k| match k % 4 {
        1 => 1.0 / factorial(k),
        3 => -1.0 / factorial(k),
        _ => 0.0,
    })
}

fn max_diff(a: &Multivector, b: &Multivector) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn exp_of_one_plus_e1_matches_series() {
    let x = Paravector::new(1.0, vec![1.0]).unwrap();
    let d = max_diff(&x.exp().to_multivector(), &exp_series(&x.to_multivector()));
    assert!(d < 1e-12, "{d}");
}

#[test]
fn sin_of_e1_matches_series() {
    let x = Paravector::new(0.0, vec![1.0, 0.0]).unwrap();
    let d = max_diff(&x.sin().to_multivector(), &sin_series(&x.to_multivector()));
    assert!(d < 1e-14, "{d}");
}

#[test]
fn inverse_examples_multiply_to_one() {
    for (s, v) in [(1.0, vec![0.0]), (0.0, vec![2.0]), (1.0, vec![1.0])] {
        let x = Paravector::new(s, v).unwrap();
        let inv = x.inverse().unwrap().to_multivector();
        let one = Multivector::scalar(x.n(), 1.0).unwrap();
        assert!(max_diff(&(&x.to_multivector() * &inv), &one) < 1e-15);
        assert!(max_diff(&(&inv * &x.to_multivector()), &one) < 1e-15);
    }
}

fn multivector(max_n: usize) -> impl Strategy<Value = Multivector> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, 1 << n)
            .prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
    })
}

fn triple(max_n: usize) -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1..=max_n).prop_flat_map(|n| {
        let v = move || {
            prop::collection::vec(-1.0f64..1.0, 1 << n)
                .prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
        };
        (v(), v(), v())
    })
}

fn paravector(max_n: usize, radius: f64) -> impl Strategy<Value = Paravector> {
    (1..=max_n).prop_flat_map(move |n| {
        (-radius..radius, prop::collection::vec(-radius..radius, n))
            .prop_map(|(s, v)| Paravector::new(s, v).unwrap())
    })
}

proptest! {
    #[test]
    fn product_is_associative((x, y, z) in triple(5)) {
        let left = &(&x * &y) * &z;
        let right = &x * &(&y * &z);
        prop_assert!(max_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn conj_is_an_anti_automorphism((x, y, _z) in triple(5)) {
        let lhs = (&x * &y).conj();
        let rhs = &y.conj() * &x.conj();
        prop_assert!(max_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn conj_is_an_involution(x in multivector(8)) {
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn paravector_times_conjugate_is_norm_squared(p in paravector(6, 2.0)) {
        let x = p.to_multivector();
        let prod = &x * &x.conj();
        let expected = Multivector::scalar(p.n(), p.norm() * p.norm()).unwrap();
        prop_assert!(max_diff(&prod, &expected) < 1e-12);
    }

    #[test]
    fn paravector_inverse(p in paravector(6, 2.0)) {
        prop_assume!(p.norm() > 1e-3);
        let x = p.to_multivector();
        let inv = p.inverse().unwrap().to_multivector();
        let one = Multivector::scalar(p.n(), 1.0).unwrap();
        prop_assert!(max_diff(&(&x * &inv), &one) < 1e-12);
        prop_assert!(max_diff(&(&inv * &x), &one) < 1e-12);
    }

    #[test]
    fn paravector_squares_stay_paravectors(p in paravector(8, 3.0)) {
        let x = p.to_multivector();
        prop_assert_eq!((&x * &x).max_higher_grade(), 0.0);
    }

    #[test]
    fn exp_and_sin_match_series(p in paravector(4, 3.0)) {
        prop_assume!(p.norm() <= 3.0);
        let x = p.to_multivector();
        prop_assert!(max_diff(&p.exp().to_multivector(), &exp_series(&x)) < 1e-10);
        prop_assert!(max_diff(&p.sin().to_multivector(), &sin_series(&x)) < 1e-10);
    }

    #[test]
    fn omega_squares_to_minus_one(p in paravector(6, 2.0)) {
        prop_assume!(p.vector_norm() > 1e-6);
        let w = cliffrac_core::omega(p.vector()).unwrap();
        let sq = &w * &w;
        prop_assert!(max_diff(&sq, &Multivector::scalar(p.n(), -1.0).unwrap()) < 1e-14);
    }

    #[test]
    fn paravector_projection_is_idempotent(x in multivector(6)) {
        let once = x.paravector_part().to_multivector();
        prop_assert_eq!(once.paravector_part().to_multivector(), once);
    }

    #[test]
    fn text_form_round_trips_bits(x in (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![Just(0.0), Just(-0.0), any::<f64>().prop_filter("finite", |v| v.is_finite())], 1 << n)
            .prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
    })) {
        let text = serde_json::to_string(&x).unwrap();
        let back: Multivector = serde_json::from_str(&text).unwrap();
        let bits = |m: &Multivector| m.coeffs().iter().map(|c| c.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back), bits(&x));
    }
}
