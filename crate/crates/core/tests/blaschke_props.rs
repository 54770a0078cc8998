mod common;

use carleson::blaschke::{
    blaschke_eval, blaschke_eval_excluding, blaschke_log_modulus, carleson_constant, separation_constant,
    weak_interpolation_family,
};
use carleson::boundary::boundary_sup;
use carleson::geometry::mobius_transform;
use carleson::harness::generate_radial;
use carleson::PointSequence;
use common::{direct_carleson, direct_separation, disk_value, separated};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn carleson_below_separation(seq in separated(2, 12, 0.05)) {
        // equal for two points, so allow rounding
        prop_assert!(carleson_constant(seq.points()) <= separation_constant(seq.points()) * (1.0 + 1e-14));
    }

    #[test]
    fn matches_direct_products(seq in separated(2, 12, 0.05)) {
        let v = seq.values();
        let c = carleson_constant(seq.points());
        let s = separation_constant(seq.points());
        prop_assert!((c - direct_carleson(&v)).abs() <= 1e-12 * c);
        prop_assert!((s - direct_separation(&v)).abs() <= 1e-12 * s);
    }

    #[test]
    fn removing_a_point_never_lowers_carleson(seq in separated(3, 10, 0.05), drop in any::<prop::sample::Index>()) {
        let k = drop.index(seq.len());
        let mut rest = seq.points().to_vec();
        rest.remove(k);
        let rest = PointSequence::new(rest, None).unwrap();
        prop_assert!(carleson_constant(rest.points()) >= carleson_constant(seq.points()) * (1.0 - 1e-12));
    }

    #[test]
    fn product_factors_through_exclusion(seq in separated(2, 10, 0.05), z in disk_value(0.99), pick in any::<prop::sample::Index>()) {
        let n = pick.index(seq.len());
        let full = blaschke_eval(seq.points(), z);
        let factored = blaschke_eval_excluding(seq.points(), n, z).unwrap() * mobius_transform(seq.points()[n], z);
        prop_assert!((full - factored).norm() <= 1e-12 * full.norm().max(1e-300));
    }

    #[test]
    fn log_and_linear_agree(seq in separated(1, 12, 0.05), z in disk_value(0.99)) {
        let lin = blaschke_eval(seq.points(), z).norm();
        prop_assume!(lin > 1e-250);
        let log = blaschke_log_modulus(seq.points(), z).unwrap();
        prop_assert!((log.exp() - lin).abs() <= 1e-10 * lin);
    }

    #[test]
    fn unimodular_on_circle(seq in separated(1, 12, 0.05), theta in 0.0..std::f64::consts::TAU) {
        let z = common::unit(theta);
        prop_assert!((blaschke_eval(seq.points(), z).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn weak_family_norms_bounded_by_carleson(seq in separated(2, 8, 0.2)) {
        let delta = carleson_constant(seq.points());
        for f in weak_interpolation_family(seq.points()).unwrap() {
            prop_assert!(f.norm <= (1.0 / delta) * (1.0 + 1e-12));
        }
    }
}

#[test]
fn weak_family_sup_matches_norm_on_radial() {
    let seq = generate_radial(0.5, 8).unwrap();
    let hints = seq.values();
    for f in weak_interpolation_family(seq.points()).unwrap() {
        let sup = boundary_sup(|z| f.eval(z), 1024, &hints).unwrap();
        assert!((sup / f.norm - 1.0).abs() < 1e-6);
    }
}
