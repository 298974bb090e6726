mod common;

use astar::geometry::{is_orthogonal, is_parallel, GeometryConfig};
use astar::{al_norm, ComplexMatrix, SolverConfig};
use common::{nonzero_complex, nonzero_real, weighted, weighted_pair};
use proptest::prelude::*;

fn cfg() -> GeometryConfig {
    GeometryConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn multiples_are_parallel((w, x) in weighted(3), lambda in 0.0..=1.0f64, c in nonzero_complex()) {
        let r = is_parallel(&w, lambda, &x, &x.scale(c), &cfg()).unwrap();
        prop_assert!(r.parallel, "defect {}", r.defect);
        // mu undoes the phase of c
        prop_assert!((r.mu * c / c.norm() - 1.0).norm() <= 1e-6);
        prop_assert!(r.cert.max_residual() <= 1e-5 * (1.0 + r.norm_x * r.norm_y));
    }

    #[test]
    fn parallelism_is_symmetric((w, x, y) in weighted_pair(3), lambda in 0.0..=1.0f64) {
        let xy = is_parallel(&w, lambda, &x, &y, &cfg()).unwrap();
        let yx = is_parallel(&w, lambda, &y, &x, &cfg()).unwrap();
        prop_assert_eq!(xy.parallel, yx.parallel);
        prop_assert!((xy.defect - yx.defect).abs() <= 1e-6);
    }

    #[test]
    fn parallelism_is_homogeneous(
        (w, x, y) in weighted_pair(3), lambda in 0.0..=1.0f64, a in nonzero_real(), b in nonzero_real()
    ) {
        let base = is_parallel(&w, lambda, &x, &y, &cfg()).unwrap();
        let scaled = is_parallel(&w, lambda, &x.scale_real(a), &y.scale_real(b), &cfg()).unwrap();
        prop_assert_eq!(base.parallel, scaled.parallel);
        prop_assert!((base.defect - scaled.defect).abs() <= 1e-6);
    }

    #[test]
    fn orthogonality_is_homogeneous(
        (w, x, y) in weighted_pair(3), lambda in 0.0..=1.0f64, a in nonzero_complex(), b in nonzero_complex()
    ) {
        let base = is_orthogonal(&w, lambda, &x, &y, &cfg()).unwrap();
        let scaled = is_orthogonal(&w, lambda, &x.scale(a), &y.scale(b), &cfg()).unwrap();
        prop_assert_eq!(base.orthogonal, scaled.orthogonal);
        prop_assert!((base.defect - scaled.defect).abs() <= 1e-6);
    }

    #[test]
    fn projected_partner_is_orthogonal((w, x, y0) in weighted_pair(3), lambda in 0.0..=1.0f64) {
        let nx = al_norm(&w, lambda, &x, &SolverConfig::default()).unwrap();
        let p = nx.witness.pairing(&w, lambda, &x, &y0);
        let y = &y0 - &x.scale(p / (nx.value * nx.value));
        let r = is_orthogonal(&w, lambda, &x, &y, &cfg()).unwrap();
        prop_assert!(r.orthogonal, "defect {}", r.defect);
        prop_assert!(r.witnesses_hold(1e-5));
    }

    #[test]
    fn nothing_nonzero_is_orthogonal_to_itself((w, x) in weighted(3), lambda in 0.0..=1.0f64) {
        let r = is_orthogonal(&w, lambda, &x, &x, &cfg()).unwrap();
        prop_assert!(!r.orthogonal);
        prop_assert!(r.min_value <= 1e-6 * r.norm_x);
    }
}

#[test]
fn zero_is_orthogonal_and_parallel_to_everything() {
    let w = astar::Weight::identity(2);
    let x = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, -1.0]]);
    let zero = ComplexMatrix::zeros(2);
    assert!(is_orthogonal(&w, 0.5, &zero, &x, &cfg()).unwrap().orthogonal);
    assert!(is_orthogonal(&w, 0.5, &x, &zero, &cfg()).unwrap().orthogonal);
    assert!(is_parallel(&w, 0.5, &x, &zero, &cfg()).unwrap().parallel);
}
