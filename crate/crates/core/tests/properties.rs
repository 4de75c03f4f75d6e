use approx::assert_relative_eq;
use proptest::prelude::*;

use circulant_core::oracle::{
    cyclic_diagonal_average, dense_residual_norm, jacobi_eigenvalues, multiset_distance,
    JacobiSettings,
};
use circulant_core::{
    circulant_eigenvalues, common_correlation, cyclic_shift_power, gs_circulant, nearest_circulant,
    nearest_eigenvalues, scaled_residual_norm_sq_direct, scaled_residual_norm_sq_general,
    symmetric_circulant_eigenvalues, toeplitz_offdiag_norm, Circulant, DenseMatrix,
    SymmetricToeplitz,
};

fn toeplitz_row() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 1..24)
}

fn symmetric_circulant_row() -> impl Strategy<Value = Vec<f64>> {
    (1usize..20).prop_flat_map(|m| {
        prop::collection::vec(-1.0f64..1.0, m / 2 + 1)
            .prop_map(move |half| (0..m).map(|i| half[i.min(m - i)]).collect::<Vec<_>>())
    })
}

proptest! {
    #[test]
    fn offdiag_norm_matches_dense(row in toeplitz_row()) {
        let t = SymmetricToeplitz::new(row.clone()).unwrap();
        let dense = t.to_dense().frobenius_norm();
        prop_assert!((toeplitz_offdiag_norm(&row) - dense).abs() <= 1e-12 * (1.0 + dense));
    }

    #[test]
    fn shift_powers_compose(order in 1usize..12, a in 0usize..12, b in 0usize..12) {
        let (a, b) = (a % order, b % order);
        let pa = cyclic_shift_power(order, a).unwrap();
        let pb = cyclic_shift_power(order, b).unwrap();
        let pab = cyclic_shift_power(order, (a + b) % order).unwrap();
        prop_assert_eq!(pa.matmul(&pb).unwrap(), pab);
        prop_assert_eq!(pa.transpose(), cyclic_shift_power(order, (order - a) % order).unwrap());
    }

    #[test]
    fn nearest_is_symmetric_and_a_projection(row in toeplitz_row()) {
        let t = SymmetricToeplitz::new(row).unwrap();
        let c = nearest_circulant(&t);
        prop_assert!(c.is_symmetric());
        prop_assert_eq!(c.to_dense().max_asymmetry(), 0.0);
        let avg = cyclic_diagonal_average(&t.to_dense()).unwrap();
        for (x, y) in c.row().iter().zip(avg.row()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
        // A circulant is already its own nearest circulant.
        let again = nearest_circulant(&SymmetricToeplitz::new(c.row().to_vec()).unwrap());
        for (x, y) in again.row().iter().zip(c.row()) {
            prop_assert!((x - y).abs() <= 1e-14);
        }
    }

    #[test]
    fn residual_forms_agree(row in toeplitz_row()) {
        let t = SymmetricToeplitz::new(row).unwrap();
        let c = nearest_circulant(&t);
        let direct = scaled_residual_norm_sq_direct(&t, &c).unwrap();
        let general = scaled_residual_norm_sq_general(&t);
        let dense = dense_residual_norm(&t.to_dense(), &c.to_dense()).unwrap();
        let m = t.order() as f64;
        prop_assert!((direct - general).abs() <= 1e-10 * (1.0 + direct));
        prop_assert!((direct - dense * dense / m).abs() <= 1e-10 * (1.0 + direct));
    }

    #[test]
    fn nearest_beats_any_symmetric_circulant(
        row in toeplitz_row(),
        bump in prop::collection::vec(-0.5f64..0.5, 24),
    ) {
        let t = SymmetricToeplitz::new(row).unwrap();
        let m = t.order();
        let c = nearest_circulant(&t);
        let other: Vec<f64> = (0..m).map(|i| c.row()[i] + bump[i.min(m - i)]).collect();
        let other = Circulant::new(other).unwrap();
        let best = scaled_residual_norm_sq_direct(&t, &c).unwrap();
        prop_assert!(best <= scaled_residual_norm_sq_direct(&t, &other).unwrap());
    }

    #[test]
    fn nearest_beats_gs(rho in 0.0f64..0.999, order in 2usize..200) {
        let t = SymmetricToeplitz::exponential(rho, order).unwrap();
        let near = scaled_residual_norm_sq_direct(&t, &nearest_circulant(&t)).unwrap();
        let gs = scaled_residual_norm_sq_direct(&t, &gs_circulant(rho, order).unwrap()).unwrap();
        prop_assert!(near <= gs);
    }

    #[test]
    fn symmetric_spectrum_matches_jacobi(row in symmetric_circulant_row()) {
        let c = Circulant::new(row).unwrap();
        let formula = symmetric_circulant_eigenvalues(&c).unwrap();
        let jacobi = jacobi_eigenvalues(&c.to_dense(), &JacobiSettings::default()).unwrap();
        prop_assert!(multiset_distance(&formula, &jacobi).unwrap() <= 1e-8);
        prop_assert!(circulant_eigenvalues(&c).max_abs_imag() <= 1e-9);
        let trace: f64 = formula.iter().sum();
        prop_assert!((trace - c.to_dense().trace()).abs() <= 1e-9 * (1.0 + trace.abs()));
    }

    #[test]
    fn nearest_eigenvalues_match_general_path(row in toeplitz_row()) {
        let t = SymmetricToeplitz::new(row).unwrap();
        let closed = nearest_eigenvalues(&t);
        let general = symmetric_circulant_eigenvalues(&nearest_circulant(&t)).unwrap();
        for (a, b) in closed.iter().zip(&general) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn common_correlation_spectrum(rho in -0.5f64..1.0, order in 1usize..12) {
        let cc = common_correlation(rho, order).unwrap();
        let jacobi = jacobi_eigenvalues(&cc.matrix, &JacobiSettings::default()).unwrap();
        prop_assert!(multiset_distance(&cc.eigenvalues, &jacobi).unwrap() <= 1e-10);
        let circ = symmetric_circulant_eigenvalues(&Circulant::new(cc.row()).unwrap()).unwrap();
        prop_assert!(multiset_distance(&cc.eigenvalues, &circ).unwrap() <= 1e-10);
    }
}

#[test]
fn jacobi_agrees_with_known_small_spectra() {
    let a = DenseMatrix::from_rows(vec![
        vec![2.0, -1.0, 0.0],
        vec![-1.0, 2.0, -1.0],
        vec![0.0, -1.0, 2.0],
    ])
    .unwrap();
    let ev = jacobi_eigenvalues(&a, &JacobiSettings::default()).unwrap();
    let s = std::f64::consts::SQRT_2;
    assert_relative_eq!(ev[0], 2.0 + s, max_relative = 1e-12);
    assert_relative_eq!(ev[1], 2.0, max_relative = 1e-12);
    assert_relative_eq!(ev[2], 2.0 - s, max_relative = 1e-12);
}
