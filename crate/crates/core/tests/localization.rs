use indexkit::lattice::{count_jackpots, CountMode, JackpotInstance};
use indexkit::localization::{
    cp1_index, curvature_quadrature, eval_k, k_var, localized_index, parse_fiber, rat, LocalizationError,
    MultivariateRational, WeightedModel,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Monomials of total degree `d` in `n` variables, by direct enumeration.
fn count_monomials(n: usize, d: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (0..=d).map(|e| count_monomials(n - 1, d - e)).sum()
}

fn int(k: i64) -> BigRational {
    rat(k, 1)
}

#[test]
fn jackpot_index_matches_brute_count() {
    let idx = localized_index(&WeightedModel::jackpot()).unwrap();
    for k in 0..50u64 {
        let brute = count_jackpots(JackpotInstance::new(k), CountMode::Brute).unwrap();
        let v = eval_k(&idx.polynomial, k as i64);
        assert_eq!(v, BigRational::from_integer(BigInt::from(brute)), "k = {k}");
    }
}

#[test]
fn answer_is_independent_of_the_torus_parameters() {
    let model = WeightedModel::jackpot();
    let idx = localized_index(&model).unwrap();
    let expected = MultivariateRational::from_poly(idx.polynomial.compose(&[k_var()]));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tried = 0;
    while tried < 50 {
        let a1 = BigRational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=9).into());
        let a2 = BigRational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=9).into());
        let parts: Option<Vec<_>> = idx.per_point.iter().map(|p| p.term.specialize_alphas(&a1, &a2)).collect();
        // a generic choice keeps every fixed point isolated
        let Some(parts) = parts else { continue };
        tried += 1;
        let sum = parts.iter().fold(MultivariateRational::zero(), |acc, t| &acc + t);
        assert_eq!(sum, expected, "a1 = {a1}, a2 = {a2}");
    }
}

#[test]
fn smooth_projective_spaces_count_monomials() {
    for (weights, fiber, scale) in [(vec![1, 1, 1], "k", 1), (vec![1, 1, 1], "2k", 2), (vec![1, 1], "k", 1), (vec![1, 1], "3k", 3)] {
        let model = WeightedModel::new(weights.clone(), parse_fiber(fiber).unwrap()).unwrap();
        let idx = localized_index(&model).unwrap();
        for k in 0..30 {
            let want = count_monomials(weights.len(), scale * k);
            assert_eq!(eval_k(&idx.polynomial, k as i64), int(want as i64), "{weights:?} {fiber} k = {k}");
        }
    }
}

#[test]
fn graded_parts_sum_to_the_index() {
    for model in [WeightedModel::jackpot(), WeightedModel::projective_plane(), WeightedModel::projective_line()] {
        let idx = localized_index(&model).unwrap();
        let total = idx.graded.iter().fold(idx.graded[0].clone() - idx.graded[0].clone(), |acc, g| &acc + g);
        assert_eq!(total, idx.polynomial);
    }
}

#[test]
fn canonical_form_is_idempotent() {
    let idx = localized_index(&WeightedModel::jackpot()).unwrap();
    for p in &idx.per_point {
        let again = MultivariateRational::new(p.term.numerator().clone(), p.term.denominator().clone()).unwrap();
        assert_eq!(again.numerator(), p.term.numerator());
        assert_eq!(again.denominator(), p.term.denominator());
        assert_eq!(again.to_string(), p.term.to_string());
    }
}

#[test]
fn cp1_agrees_with_the_line_count() {
    for k in -5..40i64 {
        assert_eq!(cp1_index(&BigInt::from(k)), BigInt::from(k + 1));
    }
}

#[test]
fn curvature_integral_approaches_one() {
    for (r, tol) in [(10.0, 0.02), (100.0, 2e-4), (1000.0, 2e-6)] {
        let v = curvature_quadrature(r, 100_000).unwrap();
        let closed = r * r / (1.0 + r * r);
        assert!((v - closed).abs() < 1e-9, "R = {r}: {v} vs {closed}");
        assert!((v - 1.0).abs() < tol);
    }
    assert!(matches!(curvature_quadrature(-1.0, 100), Err(LocalizationError::Domain(_))));
    assert!(matches!(curvature_quadrature(1.0, 3), Err(LocalizationError::Domain(_))));
}

#[test]
fn invalid_models_are_rejected() {
    assert!(WeightedModel::new(vec![0, 1, 1], parse_fiber("k").unwrap()).is_err());
    assert!(WeightedModel::new(vec![1, 1, 1, 1], parse_fiber("k").unwrap()).is_err());
    assert!(parse_fiber("k^").is_err());
}
