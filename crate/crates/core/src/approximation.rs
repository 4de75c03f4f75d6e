//! Circulant approximations of a symmetric Toeplitz matrix and their residual norms.
//!
//! The Frobenius objective `‖Σ − C‖²` decouples over the first-row entries of
//! `C`; entry `c_m` collects the `M − m` copies of `ρ_m` and the `m` copies of
//! `ρ_{M-m}` that share its cyclic diagonal, so the minimizer is their average:
//!
//! ```text
//! c_0 = ρ_0,   c_m = ρ_m + (m/M)(ρ_{M-m} − ρ_m)
//! ```
//!
//! The classical alternative ([`gs_circulant`]) samples the symbol
//! `f(x) = Σ_k ρ^{|k|} e^{ikx}` on the roots of unity, which for `ρ_m = ρ^m`
//! gives `c_m = (ρ^m + ρ^{M-m}) / (1 − ρ^M)`.
//!
//! For a symmetric circulant `C`, `R = Σ − C` is again symmetric Toeplitz and
//! `(1/M)‖R‖²` is evaluated in O(M) from its off-diagonals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::num::{check_open_unit, powu};
use crate::toeplitz::{common_correlation, toeplitz_offdiag_norm, Circulant, SymmetricToeplitz};
use crate::{Error, Result};

/// Which circulant stands in for `Σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproximationMethod {
    /// Frobenius-nearest circulant.
    Nearest,
    /// Circulant generated from the spectral symbol.
    Gs,
    /// Common-correlation matrix `A(ρ)`.
    Common,
}

impl ApproximationMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ApproximationMethod::Nearest => "nearest",
            ApproximationMethod::Gs => "gs",
            ApproximationMethod::Common => "common",
        }
    }
}

impl fmt::Display for ApproximationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ApproximationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nearest" => Ok(Self::Nearest),
            "gs" => Ok(Self::Gs),
            "common" => Ok(Self::Common),
            other => Err(Error::Parse(format!("unknown method '{other}'"))),
        }
    }
}

/// Frobenius-nearest circulant `C_Σ` to a symmetric Toeplitz matrix.
pub fn nearest_circulant(t: &SymmetricToeplitz) -> Circulant {
    let rho = t.row();
    let order = t.order();
    let m_f = order as f64;
    let mut row = vec![0.0; order];
    row[0] = rho[0];
    // Fill the lower half and mirror, so c_m == c_{M-m} holds bit for bit.
    for m in 1..=order / 2 {
        let c = rho[m] + (m as f64 / m_f) * (rho[order - m] - rho[m]);
        row[m] = c;
        row[order - m] = c;
    }
    Circulant::new(row).expect("average of finite entries is finite")
}

/// Circulant `C_GS` for `Σ_e` with parameter `rho`: `c_0 = 1`, `c_m = (ρ^m + ρ^{M-m})/(1 − ρ^M)`.
pub fn gs_circulant(rho: f64, order: usize) -> Result<Circulant> {
    check_open_unit(rho, "gs_circulant")?;
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    let denom = 1.0 - powu(rho, order);
    let row = (0..order)
        .map(|m| {
            if m == 0 {
                1.0
            } else {
                (powu(rho, m) + powu(rho, order - m)) / denom
            }
        })
        .collect();
    Circulant::new(row)
}

/// Off-diagonals `r_m = ρ_m − c_m` of `R = Σ − C` for a symmetric circulant `C`.
pub fn residual_offdiagonals(t: &SymmetricToeplitz, c: &Circulant) -> Result<Vec<f64>> {
    if t.order() != c.order() {
        return Err(Error::domain(format!(
            "order mismatch: toeplitz {} vs circulant {}",
            t.order(),
            c.order()
        )));
    }
    if !c.is_symmetric() {
        return Err(Error::precondition(
            "residual against a non-symmetric circulant is not Toeplitz",
        ));
    }
    Ok(t.row().iter().zip(c.row()).map(|(r, c)| r - c).collect())
}

/// `(1/M)‖Σ − C‖²_F` by summing the residual off-diagonals with their multiplicities.
pub fn scaled_residual_norm_sq_direct(t: &SymmetricToeplitz, c: &Circulant) -> Result<f64> {
    let r = residual_offdiagonals(t, c)?;
    let norm = toeplitz_offdiag_norm(&r);
    Ok(norm * norm / t.order() as f64)
}

/// `(1/M)‖R_Σe‖²` for the nearest circulant of `Σ_e`, in closed form.
///
/// `(2ρ²/(M(1−ρ²)))·[(1+ρ^{2(M−1)})/(1−ρ²) − (1+ρ²+ρ^{2(M−1)}−3ρ^{2M})/(M(1−ρ²)²) − ρ^{2(M−1)}(M−1)/M] − (1/3)ρ^M(M − 1/M)`
pub fn scaled_residual_norm_sq_closed_nearest(rho: f64, order: usize) -> Result<f64> {
    check_open_unit(rho, "closed-form nearest residual")?;
    if order < 2 {
        return Err(Error::domain(format!(
            "closed-form nearest residual requires M >= 2, got {order}"
        )));
    }
    let m = order as f64;
    let r2 = rho * rho;
    let q = 1.0 - r2;
    let rho_m = powu(rho, order);
    let rho_2m = powu(rho, 2 * order);
    let rho_2m1 = powu(rho, 2 * (order - 1));
    let bracket = (1.0 + rho_2m1) / q
        - (1.0 + r2 + rho_2m1 - 3.0 * rho_2m) / (m * q * q)
        - rho_2m1 * (m - 1.0) / m;
    Ok(2.0 * r2 / (m * q) * bracket - rho_m * (m - 1.0 / m) / 3.0)
}

/// `(1/M)‖R_GS‖²` in closed form: `(2/(1−ρ^M)²)·[ρ²(1−ρ^{2M})²/((1−ρ²)²M) + (M−2)ρ^{2M}]`.
pub fn scaled_residual_norm_sq_closed_gs(rho: f64, order: usize) -> Result<f64> {
    check_open_unit(rho, "closed-form GS residual")?;
    if order < 2 {
        return Err(Error::domain(format!(
            "closed-form GS residual requires M >= 2, got {order}"
        )));
    }
    let m = order as f64;
    let r2 = rho * rho;
    let q = 1.0 - r2;
    let rho_m = powu(rho, order);
    let rho_2m = powu(rho, 2 * order);
    let d = 1.0 - rho_m;
    let a = 1.0 - rho_2m;
    Ok(2.0 / (d * d) * (r2 * a * a / (q * q * m) + (m - 2.0) * rho_2m))
}

/// `(2/M³) Σ_{m=1}^{M-1} (M−m) m² (ρ_m − ρ_{M−m})²` for an arbitrary symmetric Toeplitz row.
///
/// This is `(1/M)‖Σ − C_Σ‖²` written through the nearest residual `r_m = (m/M)(ρ_m − ρ_{M-m})`.
pub fn scaled_residual_norm_sq_general(t: &SymmetricToeplitz) -> f64 {
    let rho = t.row();
    let order = t.order();
    let m_f = order as f64;
    let sum: f64 = (1..order)
        .map(|m| {
            let a = rho[m];
            let b = rho[order - m];
            let mf = m as f64;
            (m_f - mf) * mf * mf * (a * a - 2.0 * b * a + b * b)
        })
        .sum();
    2.0 * sum / (m_f * m_f * m_f)
}

/// `√2 ρ / ((1 − ρ²) √M)`: leading term of `(1/√M)‖R_Σe‖`.
pub fn leading_term_nearest(rho: f64, order: usize) -> Result<f64> {
    check_open_unit(rho, "leading_term_nearest")?;
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    Ok(std::f64::consts::SQRT_2 * rho / ((1.0 - rho * rho) * (order as f64).sqrt()))
}

/// `√2 ρ / ((1 − ρ²)(1 − ρ^M) √M)`: leading term of `(1/√M)‖R_GS‖`.
pub fn leading_term_gs(rho: f64, order: usize) -> Result<f64> {
    Ok(leading_term_nearest(rho, order)? / (1.0 - powu(rho, order)))
}

/// Eigenvalues of `C_Σ`: `ρ_0 + 2 Σ_{m=1}^{M−1} ((M−m)/M) ρ_m cos(2πmk/M)`.
///
/// Pairing `m` with `M − m` shows this equals the cosine sum over the row of
/// [`nearest_circulant`].
pub fn nearest_eigenvalues(t: &SymmetricToeplitz) -> Vec<f64> {
    let rho = t.row();
    let order = t.order();
    let m_f = order as f64;
    (0..order)
        .map(|k| {
            let s: f64 = (1..order)
                .map(|m| {
                    let phase = ((m as u128 * k as u128) % order as u128) as f64;
                    let theta = std::f64::consts::TAU * phase / m_f;
                    (m_f - m as f64) / m_f * rho[m] * theta.cos()
                })
                .sum();
            rho[0] + 2.0 * s
        })
        .collect()
}

/// Direct, closed-form and leading-term values for one `(method, ρ, M)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub method: ApproximationMethod,
    pub rho: Option<f64>,
    #[serde(rename = "M")]
    pub order: usize,
    pub scaled_norm_sq_direct: f64,
    pub scaled_norm_sq_closed: Option<f64>,
    pub leading_term: Option<f64>,
}

impl ResidualReport {
    /// Report for `Σ_e(ρ)` of order `M`. Closed-form and leading-term fields are
    /// present only where the formulas are defined (`ρ < 1`, and `M ≥ 2` for closed forms).
    pub fn exponential(method: ApproximationMethod, rho: f64, order: usize) -> Result<Self> {
        let t = SymmetricToeplitz::exponential(rho, order)?;
        let c = approximating_circulant(method, &t, rho)?;
        let direct = scaled_residual_norm_sq_direct(&t, &c)?;
        let in_open = rho < 1.0;
        let (closed, leading) = match method {
            ApproximationMethod::Nearest => (
                (in_open && order >= 2)
                    .then(|| scaled_residual_norm_sq_closed_nearest(rho, order))
                    .transpose()?,
                in_open
                    .then(|| leading_term_nearest(rho, order))
                    .transpose()?,
            ),
            ApproximationMethod::Gs => (
                (order >= 2)
                    .then(|| scaled_residual_norm_sq_closed_gs(rho, order))
                    .transpose()?,
                Some(leading_term_gs(rho, order)?),
            ),
            ApproximationMethod::Common => (None, None),
        };
        Ok(Self {
            method,
            rho: Some(rho),
            order,
            scaled_norm_sq_direct: direct,
            scaled_norm_sq_closed: closed,
            leading_term: leading,
        })
    }

    /// Report for an arbitrary row against its nearest circulant; the closed
    /// field carries the general `(2/M³)Σ…` expression.
    pub fn general(t: &SymmetricToeplitz) -> Result<Self> {
        let c = nearest_circulant(t);
        Ok(Self {
            method: ApproximationMethod::Nearest,
            rho: None,
            order: t.order(),
            scaled_norm_sq_direct: scaled_residual_norm_sq_direct(t, &c)?,
            scaled_norm_sq_closed: Some(scaled_residual_norm_sq_general(t)),
            leading_term: None,
        })
    }
}

/// The circulant a method assigns to `Σ_e(ρ)` (given as `t`).
pub fn approximating_circulant(
    method: ApproximationMethod,
    t: &SymmetricToeplitz,
    rho: f64,
) -> Result<Circulant> {
    match method {
        ApproximationMethod::Nearest => Ok(nearest_circulant(t)),
        ApproximationMethod::Gs => gs_circulant(rho, t.order()),
        ApproximationMethod::Common => Circulant::new(common_correlation(rho, t.order())?.row()),
    }
}
