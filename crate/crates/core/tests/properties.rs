//! Randomized property tests over wider input ranges than the unit suites.

use proptest::prelude::*;

use despeckle::baselines::{median_filter, WindowSpec};
use despeckle::image::reflect;
use despeckle::metrics::mse;
use despeckle::phantom::{generate_phantom, PhantomPattern, PhantomSpec};
use despeckle::speckle::{multiplier_field, SpeckleParams};
use despeckle::tensor::{eigen_2x2, SymTensor2};
use despeckle::ImageBuffer;

fn small_image(side: usize) -> impl Strategy<Value = ImageBuffer> {
    proptest::collection::vec(0.0..1.0f64, side * side)
        .prop_map(move |data| ImageBuffer::from_vec(side, side, data).unwrap())
}

proptest! {
    #[test]
    fn reflect_stays_in_bounds(idx in -1000i64..1000, n in 1usize..50) {
        let r = reflect(idx, n);
        prop_assert!(r < n);
        // in-range indices are fixed points
        if idx >= 0 && (idx as usize) < n {
            prop_assert_eq!(r, idx as usize);
        }
        // mirrored neighbours agree: reflect(-i) == reflect(i)
        prop_assert_eq!(reflect(-idx, n), reflect(idx, n));
    }

    #[test]
    fn phantoms_stay_in_unit_range(
        pattern in prop_oneof![
            Just(PhantomPattern::Rings),
            Just(PhantomPattern::Stripes),
            Just(PhantomPattern::RingsPlusStripes),
        ],
        frequency in 0.5f64..150.0,
        contrast in 0.01f64..0.5,
        seed in any::<u64>(),
    ) {
        let spec = PhantomSpec::new(32, 24, pattern, frequency, contrast, seed).unwrap();
        let img = generate_phantom(&spec);
        prop_assert!(img.min() >= 0.0 && img.max() <= 1.0);
        // deterministic for a fixed spec
        prop_assert_eq!(img, generate_phantom(&spec));
    }

    #[test]
    fn speckle_multipliers_are_floored_and_deterministic(
        variance in 0.0f64..0.5,
        seed in any::<u64>(),
    ) {
        let params = SpeckleParams::new(variance, seed).unwrap();
        let field = multiplier_field(16, 8, &params);
        prop_assert!(field.iter().all(|&v| v >= SpeckleParams::DEFAULT_FLOOR));
        prop_assert_eq!(multiplier_field(16, 8, &params), field);
    }

    #[test]
    fn median_commutes_with_shifts(img in small_image(9), shift in -2.0f64..2.0) {
        let w = WindowSpec::new(1).unwrap();
        let direct = median_filter(&img.map(|v| v + shift), &w);
        let shifted = median_filter(&img, &w).map(|v| v + shift);
        for (&a, &b) in direct.data().iter().zip(shifted.data()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn mse_is_a_symmetric_nonnegative_metric(a in small_image(8), b in small_image(8)) {
        let ab = mse(&a, &b).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(ab, mse(&b, &a).unwrap());
        prop_assert_eq!(mse(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn eigenvalues_satisfy_trace_and_determinant(
        j11 in -10.0f64..10.0,
        j12 in -10.0f64..10.0,
        j22 in -10.0f64..10.0,
    ) {
        let t = SymTensor2::new(j11, j12, j22);
        let e = eigen_2x2(&t);
        prop_assert!(e.lambda_plus >= e.lambda_minus);
        prop_assert!((e.lambda_plus + e.lambda_minus - t.trace()).abs() <= 1e-9);
        prop_assert!((e.lambda_plus * e.lambda_minus - t.det()).abs() <= 1e-8);
    }
}
