use std::f64::consts::TAU;

use proptest::prelude::*;

use jratio_core::complex_geometry::{
    chordal_image_distance, derivative_modulus, disk_identity_residual, dist_to_image_puncture,
    mobius_apply, power_map,
};
use jratio_core::domains_metric::{boundary_distance, t_branch, BranchTag};
use jratio_core::lipschitz_search::{diagonal_limit, estimate_lipschitz, ratio_J};
use jratio_core::{j_metric, main_constant, ComplexPoint, DiskAutomorphism, PuncturedDisk, SearchConfig};

fn disk_point(lo: f64, hi: f64) -> impl Strategy<Value = ComplexPoint> {
    (lo..hi, 0.0..TAU).prop_map(|(r, t)| ComplexPoint::from_polar(r, t))
}

fn punctured() -> PuncturedDisk {
    PuncturedDisk::punctured_at(ComplexPoint::ZERO).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn j_is_a_metric(x in disk_point(1e-3, 0.999), y in disk_point(1e-3, 0.999), z in disk_point(1e-3, 0.999)) {
        let g = punctured();
        let xy = j_metric(&g, x, y).unwrap();
        prop_assert!(xy >= 0.0);
        prop_assert_eq!(xy, j_metric(&g, y, x).unwrap());
        prop_assert_eq!(j_metric(&g, x, x).unwrap(), 0.0);
        let via = j_metric(&g, x, z).unwrap() + j_metric(&g, z, y).unwrap();
        prop_assert!(xy <= via * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn removing_a_point_enlarges_j(x in disk_point(1e-3, 0.999), y in disk_point(1e-3, 0.999)) {
        let ball = j_metric(&PuncturedDisk::unit_disk(), x, y).unwrap();
        prop_assert!(ball <= j_metric(&punctured(), x, y).unwrap());
    }

    #[test]
    fn j_is_rotation_invariant(x in disk_point(1e-3, 0.99), y in disk_point(1e-3, 0.99), t in 0.0..TAU) {
        let g = punctured();
        let before = j_metric(&g, x, y).unwrap();
        let after = j_metric(&g, x.rotate(t), y.rotate(t)).unwrap();
        prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
    }

    #[test]
    fn closed_forms_match_direct_evaluation(a in disk_point(0.0, 0.95), z in disk_point(0.0, 0.95), w in disk_point(0.0, 0.95)) {
        let h = DiskAutomorphism::new(a).unwrap();
        let (hz, hw) = (mobius_apply(&h, z).unwrap(), mobius_apply(&h, w).unwrap());
        prop_assert!(hz.norm() < 1.0 && hw.norm() < 1.0);
        let chordal = chordal_image_distance(&h, z, w).unwrap();
        prop_assert!((chordal - hz.dist(hw)).abs() <= 1e-12);
        let puncture = dist_to_image_puncture(&h, z).unwrap();
        prop_assert!((puncture - hz.dist(a)).abs() <= 1e-12);
        prop_assert!(disk_identity_residual(a, z).abs() <= 1e-13);
        prop_assert!(derivative_modulus(&h, z).unwrap() > 0.0);
    }

    #[test]
    fn rotated_parameter_conjugates_the_map(a in disk_point(0.0, 0.95), z in disk_point(0.0, 0.95), t in 0.0..TAU) {
        // h_{a e^{it}}(z e^{it}) = e^{it} h_a(z)
        let h = DiskAutomorphism::new(a).unwrap();
        let hr = DiskAutomorphism::new(a.rotate(t)).unwrap();
        let lhs = mobius_apply(&hr, z.rotate(t)).unwrap();
        let rhs = mobius_apply(&h, z).unwrap().rotate(t);
        prop_assert!(lhs.dist(rhs) <= 1e-14);
    }

    #[test]
    fn branch_value_is_the_image_domain_distance(a in disk_point(0.01, 0.95), z in disk_point(1e-3, 0.99), w in disk_point(1e-3, 0.99)) {
        let h = DiskAutomorphism::new(a).unwrap();
        let image_domain = PuncturedDisk::punctured_at(a).unwrap();
        let dz = boundary_distance(&image_domain, mobius_apply(&h, z).unwrap()).unwrap();
        let dw = boundary_distance(&image_domain, mobius_apply(&h, w).unwrap()).unwrap();
        let branch = t_branch(a, z, w).unwrap();
        prop_assert!((branch.value - dz.min(dw)).abs() <= 1e-12);
        let swapped = t_branch(a, w, z).unwrap();
        prop_assert_eq!(swapped.value, branch.value);
        if branch.tag != BranchTag::ImagePunctureAtZ && branch.tag != BranchTag::BoundaryAtZ {
            prop_assert!(matches!(swapped.tag, BranchTag::ImagePunctureAtZ | BranchTag::BoundaryAtZ));
        }
    }

    #[test]
    fn ratio_is_symmetric_and_bounded(a in disk_point(0.0, 0.95), z in disk_point(1e-3, 0.999), w in disk_point(1e-3, 0.999)) {
        prop_assume!(z.dist(w) > 1e-9);
        let forward = ratio_J(a, z, w).unwrap();
        let backward = ratio_J(a, w, z).unwrap();
        prop_assert!((forward - backward).abs() <= 1e-12 * forward);
        prop_assert!(forward <= main_constant(a.norm()).unwrap() + 1e-9);
    }

    #[test]
    fn diagonal_limit_is_bounded(a in disk_point(0.0, 0.95), z in disk_point(1e-3, 0.999)) {
        let limit = diagonal_limit(a, z).unwrap();
        prop_assert!(limit > 0.0 && limit <= main_constant(a.norm()).unwrap() + 1e-9);
    }

    #[test]
    fn power_map_stays_in_the_disk(a in disk_point(0.0, 0.99), z in disk_point(0.0, 0.999), m in 1u32..=64) {
        let h = DiskAutomorphism::new(a).unwrap();
        prop_assert!(power_map(&h, m, z).unwrap().norm() < 1.0);
    }
}

#[test]
fn estimate_is_rotation_invariant() {
    let cfg = SearchConfig { grid_n: 24, ..SearchConfig::default() };
    let reference = estimate_lipschitz(ComplexPoint::real(0.6), &cfg).unwrap().sup_estimate;
    for t in [0.7, 2.0, 4.5] {
        let rotated = estimate_lipschitz(ComplexPoint::from_polar(0.6, t), &cfg).unwrap().sup_estimate;
        assert!((rotated - reference).abs() <= cfg.tol, "t = {t}: {rotated} vs {reference}");
    }
}

#[test]
fn estimates_never_exceed_the_constant() {
    let cfg = SearchConfig { grid_n: 24, ..SearchConfig::default() };
    for abs_a in [0.05, 0.45, 0.95] {
        let report = estimate_lipschitz(ComplexPoint::real(abs_a), &cfg).unwrap();
        let c = main_constant(abs_a).unwrap();
        assert!(report.sup_estimate <= c + 1e-9);
        assert!(report.sup_estimate >= 1.0);
    }
}
