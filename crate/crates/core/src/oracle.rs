//! Brute-force reference computations.
//!
//! Nothing here calls into the closed forms it is used to check: eigenvalues
//! come from cyclic Jacobi rotations on the dense matrix, the nearest
//! circulant from averaging cyclic diagonals, power sums from a literal loop,
//! and the GS entries from sampling the truncated symbol on the roots of unity.

use crate::toeplitz::{Circulant, DenseMatrix};
use crate::{Error, Result};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiSettings {
    /// Absolute stopping threshold on the off-diagonal Frobenius mass.
    /// `None` means `1e-12 × ‖A‖_F` of the input.
    pub off_diagonal_tolerance: Option<f64>,
    pub max_sweeps: usize,
}

impl Default for JacobiSettings {
    fn default() -> Self {
        Self {
            off_diagonal_tolerance: None,
            max_sweeps: 100,
        }
    }
}

const SYMMETRY_TOLERANCE: f64 = 1e-12;

fn off_diagonal_mass(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues of a symmetric matrix, in descending order, by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(a: &DenseMatrix, settings: &JacobiSettings) -> Result<Vec<f64>> {
    if settings.max_sweeps == 0 {
        return Err(Error::domain("max_sweeps must be at least 1"));
    }
    if let Some(tol) = settings.off_diagonal_tolerance {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::domain(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
    }
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOLERANCE {
        return Err(Error::domain(format!(
            "jacobi requires a symmetric matrix (max asymmetry {asym:e})"
        )));
    }
    let n = a.order();
    let tol = settings
        .off_diagonal_tolerance
        .unwrap_or(1e-12 * a.frobenius_norm());
    let mut w = a.as_slice().to_vec();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&w, n);
        if off <= tol {
            break;
        }
        if sweeps == settings.max_sweeps {
            return Err(Error::Convergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A ← Jᵀ A J with J the rotation in the (p, q) plane
                for k in 0..n {
                    let akp = w[k * n + p];
                    let akq = w[k * n + q];
                    w[k * n + p] = c * akp - s * akq;
                    w[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = w[p * n + k];
                    let aqk = w[q * n + k];
                    w[p * n + k] = c * apk - s * aqk;
                    w[q * n + k] = s * apk + c * aqk;
                }
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| w[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Largest positional difference after sorting both sides descending.
pub fn multiset_distance(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    Some(
        a.iter()
            .zip(&b)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs())),
    )
}

/// Circulant whose entry `c_m` is the mean of the entries with `(j − i) mod M = m`.
pub fn cyclic_diagonal_average(a: &DenseMatrix) -> Result<Circulant> {
    let n = a.order();
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    let row = (0..n)
        .map(|m| {
            let s: CompensatedSum = (0..n).map(|i| a.get(i, (i + m) % n)).collect();
            s.value() / n as f64
        })
        .collect();
    Circulant::new(row)
}

/// Literal `Σ_{n=1}^{N} n^k p^n` with compensated accumulation.
pub fn direct_power_sum(n: usize, k: usize, p: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let mut p_pow = 1.0;
    for i in 1..=n {
        p_pow *= p;
        acc.add((i as f64).powi(k as i32) * p_pow);
    }
    acc.value()
}

/// Upper bound on `|c_m(K) − c_m(∞)|` for the truncated spectral GS entries, `M >= 2`.
///
/// The sampled inverse DFT keeps exactly the terms `ρ^{|k|}` with `k ≡ −m (mod M)`,
/// so the dropped tail is at most `ρ^{K+1}/(1 − ρ^M)` on each side.
pub fn spectral_truncation_bound(rho: f64, order: usize, truncation: usize) -> f64 {
    2.0 * rho.powi(truncation as i32 + 1) / (1.0 - rho.powi(order as i32))
}

/// GS entries by sampling `f_K(x) = Σ_{|k|≤K} ρ^{|k|} e^{ikx}` at `x_j = 2πj/M`
/// and applying the inverse DFT. `c_0` is `ρ_0 = 1`.
///
/// Fails if any synthesized entry keeps an imaginary part above `1e-10`.
pub fn gs_entries_spectral(rho: f64, order: usize, truncation: usize) -> Result<Circulant> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::domain(format!(
            "rho must satisfy 0 <= rho < 1, got {rho}"
        )));
    }
    if order == 0 || truncation == 0 {
        return Err(Error::domain("order and truncation must be at least 1"));
    }
    let tau = std::f64::consts::TAU;
    let m_f = order as f64;
    // f_K is real and even: 1 + 2 Σ_{k=1}^{K} ρ^k cos(kx)
    let samples: Vec<f64> = (0..order)
        .map(|j| {
            let mut s = CompensatedSum::new();
            s.add(1.0);
            let mut r = 1.0;
            for k in 1..=truncation {
                r *= rho;
                let phase = ((k as u128 * j as u128) % order as u128) as f64;
                s.add(2.0 * r * (tau * phase / m_f).cos());
            }
            s.value()
        })
        .collect();
    let mut row = Vec::with_capacity(order);
    row.push(1.0);
    for m in 1..order {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for (j, f) in samples.iter().enumerate() {
            let phase = ((j as u128 * m as u128) % order as u128) as f64;
            let theta = tau * phase / m_f;
            re.add(f * theta.cos());
            im.add(f * theta.sin());
        }
        let (re, im) = (re.value() / m_f, im.value() / m_f);
        if im.abs() > 1e-10 {
            return Err(Error::domain(format!(
                "spectral GS entry {m} has imaginary part {im:e}"
            )));
        }
        row.push(re);
    }
    Circulant::new(row)
}

/// `‖Σ − C‖_F` by entrywise subtraction.
pub fn dense_residual_norm(sigma: &DenseMatrix, c: &DenseMatrix) -> Result<f64> {
    Ok(sigma.sub(c)?.frobenius_norm())
}
