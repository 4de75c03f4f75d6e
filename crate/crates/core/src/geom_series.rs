//! Truncated geometric power sums `Σ_{n=1}^{N} n^k p^n` through geometric moments.
//!
//! With `X` geometric on `{1, 2, …}`, `P(X = n) = p^{n-1}(1-p)`, and
//! `G^{(j)}(0) = E[X^j]`,
//!
//! ```text
//! Σ_{n=1}^{N} n^k p^n = p/(1-p) · [ (1-p^N) G^{(k)}(0) − p^N Σ_{l=1}^{k} C(k,l) N^l G^{(k-l)}(0) ]
//! ```
//!
//! Moments come from factorial moments, `E[X^k] = Σ_j S(k,j) j! p^{j-1}/(1-p)^j`,
//! with `S` the Stirling numbers of the second kind.
//!
//! The bracket cancels heavily (for `k = 5`, `p = 0.9` the moment is ~1e8
//! while the sum is ~1), so the sums are evaluated in double-double
//! arithmetic and rounded to `f64` at the end.

use twofloat::TwoFloat;

use crate::num::{check_open_unit, powu};
use crate::{Error, Result};

/// Largest moment order supported; beyond it `S(k,j)·j!` outgrows exact float integers.
pub const MAX_MOMENT_ORDER: usize = 20;

fn check_order(k: usize) -> Result<()> {
    if k > MAX_MOMENT_ORDER {
        return Err(Error::domain(format!(
            "moment order {k} exceeds the supported maximum {MAX_MOMENT_ORDER}"
        )));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::domain(format!("p must satisfy 0 <= p < 1, got {p}")));
    }
    Ok(())
}

/// Stirling number of the second kind `S(k, j)`, `k <= 20`.
pub fn stirling2(k: usize, j: usize) -> Result<u64> {
    check_order(k)?;
    if j > k {
        return Ok(0);
    }
    // row[j] holds S(n, j) for the current n
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for n in 1..=k {
        for jj in (1..=n).rev() {
            row[jj] = jj as u64 * row[jj] + row[jj - 1];
        }
        row[0] = 0;
    }
    Ok(row[j])
}

/// `C(n, k)` from Pascal's triangle.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; n + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=i).rev() {
            row[j] += row[j - 1];
        }
    }
    row[k]
}

fn factorial(j: usize) -> u64 {
    (1..=j as u64).product()
}

/// Double-double quotient. The crate's own `TwoFloat / TwoFloat` drops the
/// low word of the reciprocal residual, so refine once against `b`.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = TwoFloat::from(a.hi() / b.hi());
    let r = a - q * b;
    q + r / b.hi()
}

fn moment_dd(k: usize, p: TwoFloat) -> TwoFloat {
    if k == 0 {
        return TwoFloat::from(1.0);
    }
    let q = TwoFloat::from(1.0) - p;
    let mut acc = TwoFloat::from(0.0);
    let mut p_pow = TwoFloat::from(1.0); // p^{j-1}
    let mut q_pow = q; // (1-p)^j
    for j in 1..=k {
        // S(k,j) < 2^53 and j! is exact in f64 for j <= 22
        let s = stirling2(k, j).expect("k bounded by caller") as f64;
        let coeff = TwoFloat::from(s) * (factorial(j) as f64);
        acc += coeff * div(p_pow, q_pow);
        p_pow *= p;
        q_pow *= q;
    }
    acc
}

/// `E[X^k]` for `X` geometric on `{1, 2, …}` with `P(X = n) = p^{n-1}(1-p)`.
pub fn geometric_moment(k: usize, p: f64) -> Result<f64> {
    check_order(k)?;
    check_p(p)?;
    Ok(moment_dd(k, TwoFloat::from(p)).into())
}

/// Moments `G^{(0)}(0) ..= G^{(max_k)}(0)` for one `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricMomentTable {
    p: f64,
    moments: Vec<TwoFloat>,
}

impl GeometricMomentTable {
    pub fn new(p: f64, max_k: usize) -> Result<Self> {
        check_order(max_k)?;
        check_p(p)?;
        let pd = TwoFloat::from(p);
        Ok(Self {
            p,
            moments: (0..=max_k).map(|k| moment_dd(k, pd)).collect(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn max_k(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moment(&self, k: usize) -> f64 {
        self.moments[k].into()
    }

    pub fn moments(&self) -> Vec<f64> {
        self.moments.iter().map(|&m| m.into()).collect()
    }

    /// `Σ_{n=1}^{N} n^k p^n` for `k <= max_k`.
    pub fn truncated_power_sum(&self, n: usize, k: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("truncation point N must be at least 1"));
        }
        if k > self.max_k() {
            return Err(Error::domain(format!(
                "moment order {k} exceeds table maximum {}",
                self.max_k()
            )));
        }
        if self.p == 0.0 {
            return Ok(0.0);
        }
        let p = TwoFloat::from(self.p);
        let one = TwoFloat::from(1.0);
        let p_n = p.powi(n as i32);
        let nf = n as f64;
        let mut tail = TwoFloat::from(0.0);
        let mut n_pow = TwoFloat::from(1.0);
        for l in 1..=k {
            n_pow *= nf;
            tail += n_pow * (binomial(k, l) as f64) * self.moments[k - l];
        }
        let bracket = (one - p_n) * self.moments[k] - p_n * tail;
        Ok((div(p, one - p) * bracket).into())
    }
}

/// `Σ_{n=1}^{N} n^k p^n` via the first `k` geometric moments.
pub fn truncated_power_sum(n: usize, k: usize, p: f64) -> Result<f64> {
    GeometricMomentTable::new(p, k)?.truncated_power_sum(n, k)
}

struct SquaredRatio {
    /// ρ²
    p: TwoFloat,
    /// 1 - ρ²
    q: TwoFloat,
    /// ρ^{2(M-1)}
    tail: TwoFloat,
    /// M - 1
    n: f64,
}

impl SquaredRatio {
    fn new(order: usize, rho: f64, what: &str) -> Result<Self> {
        check_open_unit(rho, what)?;
        if order < 2 {
            return Err(Error::domain(format!(
                "{what} requires M >= 2, got {order}"
            )));
        }
        let r = TwoFloat::from(rho);
        let p = r * r;
        Ok(Self {
            p,
            q: TwoFloat::from(1.0) - p,
            tail: p.powi((order - 1) as i32),
            n: (order - 1) as f64,
        })
    }
}

/// `Σ_{m=1}^{M-1} m ρ^{2m}` in closed form (`k = 1`, `p = ρ²`, `N = M-1`).
pub fn power_sum_k1(order: usize, rho: f64) -> Result<f64> {
    let SquaredRatio { p, q, tail, n } = SquaredRatio::new(order, rho, "power_sum_k1")?;
    let one = TwoFloat::from(1.0);
    let v = div(p, q) * (div(one - tail, q) - tail * n);
    Ok(v.into())
}

/// `Σ_{m=1}^{M-1} m² ρ^{2m}` in closed form (`k = 2`, `p = ρ²`, `N = M-1`).
pub fn power_sum_k2(order: usize, rho: f64) -> Result<f64> {
    let SquaredRatio { p, q, tail, n } = SquaredRatio::new(order, rho, "power_sum_k2")?;
    let one = TwoFloat::from(1.0);
    let v = div(p, q)
        * (div((one - tail) * (one + p), q * q) - div(tail * 2.0, q) * n - tail * (n * n));
    Ok(v.into())
}

/// `2ρ^M Σ_{m=1}^{M-1} (m²/M² − m³/M³) = (1/6) ρ^M (M − 1/M)`.
pub fn square_cube_correction(order: usize, rho: f64) -> Result<f64> {
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::domain(format!("rho must lie in [0, 1], got {rho}")));
    }
    let m = order as f64;
    Ok(powu(rho, order) * (m - 1.0 / m) / 6.0)
}

/// `(1/M)‖R_Σe‖²` assembled from the `k = 1, 2` power sums:
/// `2[(1/M) Σ m ρ^{2m} − (1/M²) Σ m² ρ^{2m}] − 2·square_cube_correction`.
pub fn scaled_residual_from_moments(order: usize, rho: f64) -> Result<f64> {
    let m = order as f64;
    let k1 = power_sum_k1(order, rho)?;
    let k2 = power_sum_k2(order, rho)?;
    let sc = square_cube_correction(order, rho)?;
    Ok(2.0 * (k1 / m - k2 / (m * m)) - 2.0 * sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(3, 2).unwrap(), 3);
        assert_eq!(stirling2(4, 2).unwrap(), 7);
        for k in 1..=20 {
            assert_eq!(stirling2(k, 1).unwrap(), 1);
            assert_eq!(stirling2(k, k).unwrap(), 1);
        }
        assert_eq!(stirling2(0, 0).unwrap(), 1);
        assert_eq!(stirling2(5, 0).unwrap(), 0);
        assert_eq!(stirling2(20, 10).unwrap(), 5_917_584_964_655);
        assert!(matches!(stirling2(21, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn stirling_rows_count_surjections() {
        // Σ_j S(k,j) j! (x)_j... simplest identity: Σ_j S(k,j) (3)_j = 3^k
        for k in 0..=12 {
            let s: u64 = (0..=k.min(3))
                .map(|j| {
                    let falling: u64 = (0..j as u64).map(|i| 3 - i).product();
                    stirling2(k, j).unwrap() * falling
                })
                .sum();
            assert_eq!(s, 3u64.pow(k as u32), "k = {k}");
        }
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(geometric_moment(0, 0.3).unwrap(), 1.0);
        assert_relative_eq!(geometric_moment(1, 0.5).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(geometric_moment(2, 0.5).unwrap(), 6.0, max_relative = 1e-15);
        let p = 0.3;
        assert_relative_eq!(
            geometric_moment(1, p).unwrap(),
            1.0 / (1.0 - p),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            geometric_moment(2, p).unwrap(),
            (1.0 + p) / ((1.0 - p) * (1.0 - p)),
            max_relative = 1e-15
        );
        assert!(matches!(geometric_moment(1, 1.0), Err(Error::Domain(_))));
        assert!(geometric_moment(1, -0.1).is_err());
    }

    #[test]
    fn moment_table_invariants() {
        let t = GeometricMomentTable::new(0.25, 4).unwrap();
        assert_eq!(t.max_k(), 4);
        assert_eq!(t.moment(0), 1.0);
        assert_relative_eq!(t.moment(1), 1.0 / 0.75, max_relative = 1e-15);
        assert_eq!(t.moments().len(), 5);
        assert!(t.truncated_power_sum(3, 5).is_err());
        assert!(t.truncated_power_sum(0, 1).is_err());
    }

    #[test]
    fn truncated_sum_examples() {
        assert_relative_eq!(
            truncated_power_sum(3, 1, 0.5).unwrap(),
            1.375,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            truncated_power_sum(5, 2, 0.25).unwrap(),
            0.727_539_062_5,
            max_relative = 1e-15
        );
        for &(n, p) in &[(1usize, 0.3f64), (7, 0.9), (30, 0.5)] {
            let want = p * (1.0 - p.powi(n as i32)) / (1.0 - p);
            assert_relative_eq!(
                truncated_power_sum(n, 0, p).unwrap(),
                want,
                max_relative = 1e-14
            );
        }
        assert_eq!(truncated_power_sum(4, 3, 0.0).unwrap(), 0.0);
        assert!(truncated_power_sum(4, 3, 1.0).is_err());
    }

    #[test]
    fn k1_k2_examples() {
        assert_relative_eq!(power_sum_k1(3, 0.5).unwrap(), 0.375, max_relative = 1e-15);
        assert_relative_eq!(power_sum_k1(2, 0.5).unwrap(), 0.25, max_relative = 1e-15);
        assert_eq!(power_sum_k1(6, 0.0).unwrap(), 0.0);
        assert_relative_eq!(power_sum_k2(3, 0.5).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(power_sum_k2(2, 0.5).unwrap(), 0.25, max_relative = 1e-15);
        assert_eq!(power_sum_k2(6, 0.0).unwrap(), 0.0);
        assert!(power_sum_k1(3, 1.0).is_err());
        assert!(power_sum_k2(1, 0.5).is_err());
    }

    #[test]
    fn square_cube_examples() {
        assert_relative_eq!(
            square_cube_correction(2, 0.5).unwrap(),
            0.0625,
            max_relative = 1e-15
        );
        assert_eq!(square_cube_correction(9, 0.0).unwrap(), 0.0);
        assert_eq!(square_cube_correction(1, 0.7).unwrap(), 0.0);
        // brute force: 2ρ^M Σ (m²/M² − m³/M³)
        for order in 1..40usize {
            let m = order as f64;
            let s: f64 = (1..order)
                .map(|k| {
                    let k = k as f64;
                    k * k / (m * m) - k * k * k / (m * m * m)
                })
                .sum();
            let want = 2.0 * 0.8f64.powi(order as i32) * s;
            assert_relative_eq!(
                square_cube_correction(order, 0.8).unwrap(),
                want,
                max_relative = 1e-12,
                epsilon = 1e-300
            );
        }
    }
}
