//! Closed-form eigensystems of circulant matrices.
//!
//! Every circulant `C = c_0 I + c_1 P + … + c_{M-1} P^{M-1}` shares the
//! eigenvectors `x_k = (1, ω^k, ω^{2k}, …, ω^{(M-1)k})` of the cyclic shift
//! `P`, with `ω = e^{2πi/M}`, and has eigenvalues
//! `λ_k = c_0 + Σ_{m≥1} c_m ω^{mk}`.
//!
//! Values are indexed by `k`; they are never reordered by magnitude.
//! Phases are always reduced as `2π((m·k) mod M)/M` before calling
//! `cos`/`sin`, so accuracy does not degrade with `M`.

use num_complex::Complex64;

use crate::toeplitz::Circulant;
use crate::{Error, Result};

pub type ComplexScalar = Complex64;

/// Eigenvalues of a circulant, `values[k]` belonging to eigenvector `x_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    values: Vec<ComplexScalar>,
}

impl EigenSystem {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.im.abs()))
    }

    /// The (unnormalized) eigenvector paired with `values[k]`.
    pub fn eigenvector(&self, k: usize) -> Result<Vec<ComplexScalar>> {
        circulant_eigenvector(self.order(), k)
    }
}

fn reduced_angle(order: usize, j: u128) -> f64 {
    let r = (j % order as u128) as f64;
    std::f64::consts::TAU * r / order as f64
}

/// `ω^j` for `ω = e^{2πi/M}`, with `j` reduced mod `M` first.
pub fn unit_root(order: usize, j: i64) -> ComplexScalar {
    assert!(order >= 1, "unit_root requires M >= 1");
    let j = j.rem_euclid(order as i64) as u128;
    let theta = reduced_angle(order, j);
    Complex64::new(theta.cos(), theta.sin())
}

/// `λ_k(C) = c_0 + Σ_{m=1}^{M-1} c_m ω^{mk}` for `k = 0..M-1`.
pub fn circulant_eigenvalues(c: &Circulant) -> EigenSystem {
    let order = c.order();
    let row = c.row();
    let values = (0..order)
        .map(|k| {
            row.iter()
                .enumerate()
                .fold(Complex64::new(0.0, 0.0), |acc, (m, &cm)| {
                    let theta = reduced_angle(order, m as u128 * k as u128);
                    acc + Complex64::new(cm * theta.cos(), cm * theta.sin())
                })
        })
        .collect();
    EigenSystem { values }
}

/// `x_k = (1, ω^k, …, ω^{(M-1)k})`, unnormalized (Euclidean length `√M`).
pub fn circulant_eigenvector(order: usize, k: usize) -> Result<Vec<ComplexScalar>> {
    if k >= order {
        return Err(Error::domain(format!(
            "eigenvector index {k} out of range for order {order}"
        )));
    }
    Ok((0..order)
        .map(|n| {
            let theta = reduced_angle(order, n as u128 * k as u128);
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect())
}

/// Real eigenvalues `c_0 + Σ_{m≥1} c_m cos(2πmk/M)` of a symmetric circulant.
///
/// The sine terms cancel in pairs when `c_m = c_{M-m}`, which is exactly the
/// condition for every eigenvalue of a real circulant to be real.
pub fn symmetric_circulant_eigenvalues(c: &Circulant) -> Result<Vec<f64>> {
    if !c.is_symmetric() {
        return Err(Error::precondition(
            "circulant is not symmetric (c_m != c_{M-m} for some m)",
        ));
    }
    let order = c.order();
    let row = c.row();
    Ok((0..order)
        .map(|k| {
            row.iter()
                .enumerate()
                .map(|(m, &cm)| cm * reduced_angle(order, m as u128 * k as u128).cos())
                .sum()
        })
        .collect())
}

/// `‖C x_k − λ_k x_k‖₂` computed against the dense matrix.
pub fn eigenpair_residual(c: &Circulant, system: &EigenSystem, k: usize) -> Result<f64> {
    let dense = c.to_dense();
    let x = circulant_eigenvector(c.order(), k)?;
    let lambda = system.values[k];
    let mut sq = 0.0;
    for i in 0..c.order() {
        let cx: Complex64 = dense.row(i).iter().zip(&x).map(|(&a, &xj)| xj * a).sum();
        sq += (cx - lambda * x[i]).norm_sqr();
    }
    Ok(sq.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(row: &[f64]) -> Circulant {
        Circulant::new(row.to_vec()).unwrap()
    }

    #[test]
    fn unit_root_examples() {
        let i = unit_root(4, 1);
        assert_abs_diff_eq!(i.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(i.im, 1.0, epsilon = 1e-15);
        let m1 = unit_root(4, 2);
        assert_abs_diff_eq!(m1.re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m1.im, 0.0, epsilon = 1e-15);
        assert_eq!(unit_root(6, 7), unit_root(6, 1));
        assert_eq!(unit_root(6, -1), unit_root(6, 5));
    }

    #[test]
    fn eigenvalues_of_the_min_distance_circulant() {
        // Reference values from the Jacobi oracle on the dense matrix.
        let sys = circulant_eigenvalues(&c(&[0.0, 1.0, 2.0, 3.0, 2.0, 1.0]));
        let want = [9.0, -4.0, 0.0, -1.0, 0.0, -4.0];
        for (v, w) in sys.values().iter().zip(want) {
            assert_abs_diff_eq!(v.re, w, epsilon = 1e-12);
            assert!(v.im.abs() <= 1e-12);
        }
        let real = symmetric_circulant_eigenvalues(&c(&[0.0, 1.0, 2.0, 3.0, 2.0, 1.0])).unwrap();
        for (v, w) in real.iter().zip(want) {
            assert_abs_diff_eq!(*v, w, epsilon = 1e-12);
        }
    }

    #[test]
    fn identity_and_row_sum() {
        let sys = circulant_eigenvalues(&c(&[1.0, 0.0, 0.0, 0.0]));
        assert!(sys.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        assert_eq!(
            symmetric_circulant_eigenvalues(&c(&[1.0, 0.0, 0.0])).unwrap(),
            vec![1.0; 3]
        );
        let row = [0.3, -1.2, 2.0, 0.7, 5.5];
        let sys = circulant_eigenvalues(&c(&row));
        assert_abs_diff_eq!(sys.values()[0].re, row.iter().sum::<f64>(), epsilon = 1e-14);
        assert_eq!(sys.values()[0].im, 0.0);
    }

    #[test]
    fn nearest_circulant_example_eigenvalues() {
        // nearest circulant of exponential rho = 0.5, M = 3
        let row = [1.0, 5.0 / 12.0, 5.0 / 12.0];
        let vals = symmetric_circulant_eigenvalues(&c(&row)).unwrap();
        assert_abs_diff_eq!(vals[0], 11.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 7.0 / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[2], 7.0 / 12.0, epsilon = 1e-12);
    }

    #[test]
    fn symmetric_eigenvalues_reject_asymmetric_input() {
        assert!(matches!(
            symmetric_circulant_eigenvalues(&c(&[0.0, 1.0, 2.0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn eigenvector_examples() {
        assert!(circulant_eigenvector(5, 0)
            .unwrap()
            .iter()
            .all(|v| *v == Complex64::new(1.0, 0.0)));
        let x = circulant_eigenvector(4, 1).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (v, (re, im)) in x.iter().zip(want) {
            assert_abs_diff_eq!(v.re, re, epsilon = 1e-15);
            assert_abs_diff_eq!(v.im, im, epsilon = 1e-15);
        }
        let x = circulant_eigenvector(3, 2).unwrap();
        assert_eq!(x[2], unit_root(3, 1));
        assert_eq!(x[1], unit_root(3, 2));
        assert!(circulant_eigenvector(3, 3).is_err());
    }

    #[test]
    fn eigenpairs_hold_for_a_general_circulant() {
        let cc = c(&[0.5, -1.0, 2.0, 0.25, 3.0, -0.75, 1.5]);
        let sys = circulant_eigenvalues(&cc);
        let bound = 1e-9 * (1.0 + cc.to_dense().frobenius_norm());
        for k in 0..cc.order() {
            assert!(eigenpair_residual(&cc, &sys, k).unwrap() <= bound);
        }
        assert!(sys.max_abs_imag() > 1e-3);
    }
}
