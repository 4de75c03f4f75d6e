//! Symmetric Toeplitz and circulant matrices stored by their first row.
//!
//! A symmetric Toeplitz matrix `Σ` of order `M` is fixed by `ρ_0..ρ_{M-1}`
//! with `Σ[i][j] = ρ_{|i-j|}`. A circulant `C` is fixed by `c_0..c_{M-1}`
//! with `C[i][j] = c_{(j-i) mod M}`, so every row is the previous one shifted
//! cyclically one place to the right. Both materialize into [`DenseMatrix`]
//! for the brute-force checks in [`crate::oracle`].

use serde::{Deserialize, Serialize};

use crate::num::powu;
use crate::{Error, Result};

fn check_row(row: &[f64], what: &str) -> Result<()> {
    if row.is_empty() {
        return Err(Error::domain(format!(
            "{what} row must have at least one entry"
        )));
    }
    if let Some(i) = row.iter().position(|x| !x.is_finite()) {
        return Err(Error::domain(format!(
            "{what} row entry {i} is not finite ({})",
            row[i]
        )));
    }
    Ok(())
}

/// Real symmetric Toeplitz matrix, represented by its first row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricToeplitz {
    row: Vec<f64>,
}

impl SymmetricToeplitz {
    pub fn new(row: Vec<f64>) -> Result<Self> {
        check_row(&row, "toeplitz")?;
        Ok(Self { row })
    }

    /// The exponential-decay matrix `Σ_e` with `ρ_m = rho^m`.
    pub fn exponential(rho: f64, order: usize) -> Result<Self> {
        Ok(ExponentialToeplitz::new(rho, order)?.expand())
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[f64] {
        &self.row
    }

    pub fn into_row(self) -> Vec<f64> {
        self.row
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let m = self.order();
        DenseMatrix::from_fn(m, |i, j| self.row[i.abs_diff(j)])
    }

    /// Frobenius norm without materializing: each off-diagonal `m` appears `2(M-m)` times.
    pub fn frobenius_norm(&self) -> f64 {
        toeplitz_offdiag_norm(&self.row)
    }
}

/// `Σ_e`: symmetric Toeplitz matrix with exponentially decaying first row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialToeplitz {
    rho: f64,
    order: usize,
}

impl ExponentialToeplitz {
    pub fn new(rho: f64, order: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::domain(format!("rho must lie in [0, 1], got {rho}")));
        }
        if order == 0 {
            return Err(Error::domain("order must be at least 1"));
        }
        Ok(Self { rho, order })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// First row `(1, ρ, ρ², …, ρ^{M-1})`, with `0^0 = 1`.
    pub fn expand(&self) -> SymmetricToeplitz {
        let row = (0..self.order).map(|m| powu(self.rho, m)).collect();
        SymmetricToeplitz { row }
    }
}

/// Real circulant matrix, represented by its first row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circulant {
    row: Vec<f64>,
}

impl Circulant {
    pub fn new(row: Vec<f64>) -> Result<Self> {
        check_row(&row, "circulant")?;
        Ok(Self { row })
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[f64] {
        &self.row
    }

    pub fn into_row(self) -> Vec<f64> {
        self.row
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let m = self.order();
        DenseMatrix::from_fn(m, |i, j| self.row[(j + m - i) % m])
    }

    /// `c_m == c_{M-m}` for every `1 <= m <= M-1`, compared exactly.
    pub fn is_symmetric(&self) -> bool {
        let m = self.order();
        (1..m).all(|k| self.row[k] == self.row[m - k])
    }
}

/// Free-function form of [`Circulant::is_symmetric`].
pub fn is_symmetric_circulant(c: &Circulant) -> bool {
    c.is_symmetric()
}

/// Square matrix of `f64`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    /// Builds a matrix from explicit rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let order = rows.len();
        if let Some(i) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::domain(format!(
                "row {i} has {} entries, expected {order}",
                rows[i].len()
            )));
        }
        Ok(Self {
            order,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.order.max(1)).take(self.order)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_order(other)?;
        let n = self.order;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_order(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DenseMatrix {
            order: self.order,
            data,
        })
    }

    /// `sqrt(Σ a_ij²)`, the real case of `sqrt(trace(AᵀA))`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest entrywise asymmetry `max |a_ij - a_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.order;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    fn check_same_order(&self, other: &DenseMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::domain(format!(
                "order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }
}

/// Frobenius norm of a matrix.
pub fn frobenius_norm(a: &DenseMatrix) -> f64 {
    a.frobenius_norm()
}

/// `P^m` for the cyclic shift `P`: the circulant with a single 1 at index `m` of its first row.
pub fn cyclic_shift_power(order: usize, m: usize) -> Result<DenseMatrix> {
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    if m >= order {
        return Err(Error::domain(format!(
            "shift power {m} out of range for order {order}"
        )));
    }
    Ok(DenseMatrix::from_fn(order, |i, j| {
        if (j + order - i) % order == m {
            1.0
        } else {
            0.0
        }
    }))
}

/// Frobenius norm of the symmetric Toeplitz matrix with first row `r`, in O(M).
///
/// `sqrt(M r_0² + Σ_{m≥1} 2(M-m) r_m²)`. An empty row has norm 0.
pub fn toeplitz_offdiag_norm(r: &[f64]) -> f64 {
    let m = r.len();
    let Some((&r0, rest)) = r.split_first() else {
        return 0.0;
    };
    let off: f64 = rest
        .iter()
        .enumerate()
        .map(|(i, x)| 2.0 * (m - (i + 1)) as f64 * x * x)
        .sum();
    (m as f64 * r0 * r0 + off).sqrt()
}

/// The common-correlation matrix `A(ρ) = ρ·11ᵀ + (1-ρ)·I` with its known spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonCorrelation {
    pub rho: f64,
    pub matrix: DenseMatrix,
    /// `1 + (M-1)ρ` once, then `1 - ρ` with multiplicity `M-1`.
    pub eigenvalues: Vec<f64>,
}

impl CommonCorrelation {
    /// First row of `A(ρ)`. `A(ρ)` is both symmetric Toeplitz and symmetric circulant.
    pub fn row(&self) -> Vec<f64> {
        self.matrix.row(0).to_vec()
    }
}

pub fn common_correlation(rho: f64, order: usize) -> Result<CommonCorrelation> {
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    if !rho.is_finite() {
        return Err(Error::domain(format!("rho must be finite, got {rho}")));
    }
    let matrix = DenseMatrix::from_fn(order, |i, j| if i == j { 1.0 } else { rho });
    let mut eigenvalues = Vec::with_capacity(order);
    eigenvalues.push(1.0 + (order as f64 - 1.0) * rho);
    eigenvalues.extend(std::iter::repeat_n(1.0 - rho, order - 1));
    Ok(CommonCorrelation {
        rho,
        matrix,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn expand_exponential_examples() {
        let t = SymmetricToeplitz::exponential(0.5, 4).unwrap();
        assert_eq!(t.row(), &[1.0, 0.5, 0.25, 0.125]);
        let t = SymmetricToeplitz::exponential(0.0, 3).unwrap();
        assert_eq!(t.row(), &[1.0, 0.0, 0.0]);
        let t = SymmetricToeplitz::exponential(1.0, 3).unwrap();
        assert_eq!(t.row(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn expand_exponential_rejects_bad_input() {
        assert!(matches!(
            ExponentialToeplitz::new(1.5, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ExponentialToeplitz::new(-0.1, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ExponentialToeplitz::new(0.5, 0),
            Err(Error::Domain(_))
        ));
        assert!(ExponentialToeplitz::new(f64::NAN, 2).is_err());
    }

    #[test]
    fn rows_must_be_nonempty_and_finite() {
        assert!(SymmetricToeplitz::new(vec![]).is_err());
        assert!(Circulant::new(vec![]).is_err());
        assert!(Circulant::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn materialize_toeplitz_examples() {
        let d = SymmetricToeplitz::new(vec![1.0, 0.5]).unwrap().to_dense();
        assert_eq!(
            d,
            DenseMatrix::from_rows(vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap()
        );
        let d = SymmetricToeplitz::new(vec![1.0, 0.0, 0.0])
            .unwrap()
            .to_dense();
        assert_eq!(d, DenseMatrix::identity(3));
        let d = SymmetricToeplitz::new(vec![1.0, 0.5, 0.25])
            .unwrap()
            .to_dense();
        let want = DenseMatrix::from_rows(vec![
            vec![1.0, 0.5, 0.25],
            vec![0.5, 1.0, 0.5],
            vec![0.25, 0.5, 1.0],
        ])
        .unwrap();
        assert_eq!(d, want);
    }

    #[test]
    fn materialize_circulant_examples() {
        let c = Circulant::new(vec![0.0, 1.0, 2.0, 3.0, 2.0, 1.0]).unwrap();
        let want = DenseMatrix::from_rows(vec![
            vec![0.0, 1.0, 2.0, 3.0, 2.0, 1.0],
            vec![1.0, 0.0, 1.0, 2.0, 3.0, 2.0],
            vec![2.0, 1.0, 0.0, 1.0, 2.0, 3.0],
            vec![3.0, 2.0, 1.0, 0.0, 1.0, 2.0],
            vec![2.0, 3.0, 2.0, 1.0, 0.0, 1.0],
            vec![1.0, 2.0, 3.0, 2.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(c.to_dense(), want);

        let c = Circulant::new(vec![4.5]).unwrap();
        assert_eq!(
            c.to_dense(),
            DenseMatrix::from_rows(vec![vec![4.5]]).unwrap()
        );

        let p = Circulant::new(vec![0.0, 1.0, 0.0]).unwrap().to_dense();
        assert_eq!(p, cyclic_shift_power(3, 1).unwrap());
    }

    #[test]
    fn cyclic_shift_examples() {
        assert_eq!(cyclic_shift_power(3, 0).unwrap(), DenseMatrix::identity(3));
        // columns (e_3 | e_1 | e_2)
        let p = cyclic_shift_power(3, 1).unwrap();
        let want = DenseMatrix::from_rows(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(p, want);
        let p1 = cyclic_shift_power(4, 1).unwrap();
        assert_eq!(p1.matmul(&p1).unwrap(), cyclic_shift_power(4, 2).unwrap());
        assert!(matches!(cyclic_shift_power(3, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetric_circulant_predicate() {
        let yes = Circulant::new(vec![0.0, 1.0, 2.0, 3.0, 2.0, 1.0]).unwrap();
        assert!(is_symmetric_circulant(&yes));
        assert!(!Circulant::new(vec![0.0, 1.0, 2.0]).unwrap().is_symmetric());
        assert!(Circulant::new(vec![5.0]).unwrap().is_symmetric());
        assert!(Circulant::new(vec![5.0, -2.0]).unwrap().is_symmetric());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_norm(&DenseMatrix::identity(4)), 2.0);
        assert_eq!(frobenius_norm(&DenseMatrix::zeros(3)), 0.0);
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![4.0, 5.0]]).unwrap();
        assert_relative_eq!(frobenius_norm(&a), 46f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn offdiag_norm_examples() {
        let r = [0.0, 1.0 / 12.0, -1.0 / 6.0];
        let dense = SymmetricToeplitz::new(r.to_vec()).unwrap().to_dense();
        assert_relative_eq!(
            toeplitz_offdiag_norm(&r),
            dense.frobenius_norm(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            toeplitz_offdiag_norm(&r),
            (1.0f64 / 12.0).sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(toeplitz_offdiag_norm(&[1.0, 0.0, 0.0]), 3f64.sqrt());
        assert_eq!(toeplitz_offdiag_norm(&[0.0; 5]), 0.0);
    }

    #[test]
    fn common_correlation_examples() {
        let a = common_correlation(0.0, 5).unwrap();
        assert_eq!(a.matrix, DenseMatrix::identity(5));
        assert_eq!(a.eigenvalues, vec![1.0; 5]);

        let a = common_correlation(1.0, 3).unwrap();
        assert_eq!(a.matrix, DenseMatrix::from_fn(3, |_, _| 1.0));
        assert_eq!(a.eigenvalues, vec![3.0, 0.0, 0.0]);

        let a = common_correlation(0.2, 5).unwrap();
        assert_relative_eq!(a.eigenvalues[0], 1.8, max_relative = 1e-15);
        for &v in &a.eigenvalues[1..] {
            assert_relative_eq!(v, 0.8, max_relative = 1e-15);
        }
        assert!(common_correlation(0.2, 0).is_err());
    }

    #[test]
    fn dense_helpers() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(a.transpose().get(0, 1), 3.0);
        assert_eq!(a.trace(), 5.0);
        assert_eq!(a.max_asymmetry(), 1.0);
        assert!(a.sub(&DenseMatrix::identity(3)).is_err());
        assert!(DenseMatrix::from_rows(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert_eq!(a.rows().count(), 2);
    }
}
