//! Oracle-equivalence and property suites behind the `verify` command.
//!
//! Each suite compares one closed form or structural claim against an
//! independent route from [`crate::oracle`] and records its worst observed
//! deviation. Random instances come from a ChaCha stream seeded by
//! `(seed, suite id)`, so a report is reproducible bit for bit.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approximation::{
    gs_circulant, leading_term_nearest, nearest_circulant, nearest_eigenvalues,
    residual_offdiagonals, scaled_residual_norm_sq_closed_gs,
    scaled_residual_norm_sq_closed_nearest, scaled_residual_norm_sq_direct,
    scaled_residual_norm_sq_general,
};
use crate::eigen::{circulant_eigenvalues, eigenpair_residual, symmetric_circulant_eigenvalues};
use crate::geom_series::{power_sum_k1, power_sum_k2, square_cube_correction, truncated_power_sum};
use crate::oracle::{
    cyclic_diagonal_average, direct_power_sum, gs_entries_spectral, jacobi_eigenvalues,
    multiset_distance, JacobiSettings,
};
use crate::toeplitz::{toeplitz_offdiag_norm, Circulant, SymmetricToeplitz};
use crate::{Error, Result};

/// `ρ ∈ {0, 0.1, …, 0.9, 0.99}`, the grid for the closed-form agreement suites.
pub fn closed_form_rho_grid() -> Vec<f64> {
    let mut v: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
    v.push(0.99);
    v
}

pub const CLOSED_FORM_M_RANGE: std::ops::RangeInclusive<usize> = 2..=100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(Error::Parse(format!("unknown level '{other}'"))),
        }
    }
}

/// Direction of a suite's threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when the worst value is `<= limit`.
    AtMost,
    /// Passes when the worst value is `> limit`.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub id: usize,
    pub name: &'static str,
    pub samples: usize,
    pub worst: f64,
    pub limit: f64,
    pub bound: Bound,
    /// Set when the suite could not run to completion.
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        if self.failure.is_some() || self.worst.is_nan() {
            return false;
        }
        match self.bound {
            Bound::AtMost => self.worst <= self.limit,
            Bound::Above => self.worst > self.limit,
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::Above => ">",
        };
        write!(
            f,
            "suite {:>2} {:<28} samples={:<6} worst={:<12.4e} limit {op} {:.1e}  {}",
            self.id,
            self.name,
            self.samples,
            self.worst,
            self.limit,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        if let Some(msg) = &self.failure {
            write!(f, " ({msg})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &SuiteResult> {
        self.suites.iter().filter(|s| !s.passed())
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let failed = self.failed().count();
        write!(
            f,
            "{} suites, {} passed, {} failed",
            self.suites.len(),
            self.suites.len() - failed,
            failed
        )
    }
}

/// Signature shared by the `(ρ, M) ↦ (1/M)‖R‖²` closed forms.
pub type ClosedForm = fn(f64, usize) -> Result<f64>;

#[derive(Debug, Clone)]
pub struct Verifier {
    seed: u64,
    level: Level,
    closed_nearest: ClosedForm,
}

struct Tally {
    samples: usize,
    worst: f64,
}

impl Tally {
    fn new(bound: Bound) -> Self {
        Tally {
            samples: 0,
            worst: match bound {
                Bound::AtMost => 0.0,
                Bound::Above => f64::INFINITY,
            },
        }
    }

    fn max(&mut self, x: f64) {
        self.samples += 1;
        if x.is_nan() || x > self.worst {
            self.worst = x;
        }
    }

    fn min(&mut self, x: f64) {
        self.samples += 1;
        if x.is_nan() || x < self.worst {
            self.worst = x;
        }
    }
}

fn random_row(rng: &mut ChaCha8Rng, order: usize) -> Vec<f64> {
    (0..order).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

fn random_symmetric_row(rng: &mut ChaCha8Rng, order: usize) -> Vec<f64> {
    let mut row = random_row(rng, order);
    for m in 1..order {
        if m > order - m {
            row[m] = row[order - m];
        }
    }
    row
}

impl Verifier {
    pub fn new(seed: u64, level: Level) -> Self {
        Self {
            seed,
            level,
            closed_nearest: scaled_residual_norm_sq_closed_nearest,
        }
    }

    /// Substitutes the nearest-circulant closed form under test.
    pub fn with_closed_nearest(mut self, f: ClosedForm) -> Self {
        self.closed_nearest = f;
        self
    }

    fn rng(&self, suite: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (suite as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn run(&self) -> VerifyReport {
        type Suite = fn(&Verifier, usize) -> Result<Tally>;
        let mut suites: Vec<(&'static str, Suite, f64, Bound)> = vec![
            (
                "closed_vs_direct_nearest",
                Verifier::closed_vs_direct_nearest,
                1e-10,
                Bound::AtMost,
            ),
            (
                "closed_vs_direct_gs",
                Verifier::closed_vs_direct_gs,
                1e-10,
                Bound::AtMost,
            ),
            ("optimality", Verifier::optimality, 0.0, Bound::AtMost),
            (
                "nearest_vs_diagonal_average",
                Verifier::nearest_vs_diagonal_average,
                1e-12,
                Bound::AtMost,
            ),
            (
                "symmetric_real_spectrum",
                Verifier::symmetric_real_spectrum,
                1e-9,
                Bound::AtMost,
            ),
            (
                "asymmetric_complex_spectrum",
                Verifier::asymmetric_complex_spectrum,
                1e-9,
                Bound::Above,
            ),
            (
                "eigenvalues_vs_jacobi",
                Verifier::eigenvalues_vs_jacobi,
                1e-8,
                Bound::AtMost,
            ),
            (
                "eigenpair_residual",
                Verifier::eigenpair_residuals,
                1e-9,
                Bound::AtMost,
            ),
            (
                "truncated_power_sum",
                Verifier::truncated_power_sums,
                1e-12,
                Bound::AtMost,
            ),
            (
                "moment_reconstruction",
                Verifier::moment_reconstruction,
                1e-10,
                Bound::AtMost,
            ),
            (
                "general_closed_form",
                Verifier::general_closed_form,
                1e-10,
                Bound::AtMost,
            ),
            (
                "nearest_eigen_formula",
                Verifier::nearest_eigen_formula,
                1e-10,
                Bound::AtMost,
            ),
            (
                "gs_spectral_entries",
                Verifier::gs_spectral_entries,
                1e-8,
                Bound::AtMost,
            ),
        ];
        if self.level == Level::Full {
            suites.push((
                "leading_term_ratio",
                Verifier::leading_term_ratio,
                0.05,
                Bound::AtMost,
            ));
        }
        let results = suites
            .into_iter()
            .enumerate()
            .map(|(i, (name, f, limit, bound))| {
                let id = i + 1;
                match f(self, id) {
                    Ok(t) => SuiteResult {
                        id,
                        name,
                        samples: t.samples,
                        worst: t.worst,
                        limit,
                        bound,
                        failure: None,
                    },
                    Err(e) => SuiteResult {
                        id,
                        name,
                        samples: 0,
                        worst: f64::NAN,
                        limit,
                        bound,
                        failure: Some(e.to_string()),
                    },
                }
            })
            .collect();
        VerifyReport { suites: results }
    }

    fn exp_direct(rho: f64, order: usize, c: &Circulant) -> Result<f64> {
        let t = SymmetricToeplitz::exponential(rho, order)?;
        scaled_residual_norm_sq_direct(&t, c)
    }

    fn closed_vs_direct_nearest(&self, _id: usize) -> Result<Tally> {
        let mut t = Tally::new(Bound::AtMost);
        for rho in closed_form_rho_grid() {
            for m in CLOSED_FORM_M_RANGE {
                let sigma = SymmetricToeplitz::exponential(rho, m)?;
                let direct = scaled_residual_norm_sq_direct(&sigma, &nearest_circulant(&sigma))?;
                let closed = (self.closed_nearest)(rho, m)?;
                t.max((closed - direct).abs() / (1.0 + direct));
            }
        }
        Ok(t)
    }

    fn closed_vs_direct_gs(&self, _id: usize) -> Result<Tally> {
        let mut t = Tally::new(Bound::AtMost);
        for rho in closed_form_rho_grid() {
            for m in CLOSED_FORM_M_RANGE {
                let direct = Self::exp_direct(rho, m, &gs_circulant(rho, m)?)?;
                let closed = scaled_residual_norm_sq_closed_gs(rho, m)?;
                t.max((closed - direct).abs() / (1.0 + direct));
            }
        }
        Ok(t)
    }

    /// Worst `‖Σ − C_Σ‖² − ‖Σ − C'‖²` over competitors `C'`; must stay `<= 0`.
    fn optimality(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let perturbations = match self.level {
            Level::Quick => 100,
            Level::Full => 1000,
        };
        let mut t = Tally::new(Bound::AtMost);
        // dominance over GS on the whole closed-form grid
        for rho in closed_form_rho_grid() {
            for m in CLOSED_FORM_M_RANGE {
                let sigma = SymmetricToeplitz::exponential(rho, m)?;
                let near = scaled_residual_norm_sq_direct(&sigma, &nearest_circulant(&sigma))?;
                let gs = scaled_residual_norm_sq_direct(&sigma, &gs_circulant(rho, m)?)?;
                t.max(near - gs);
            }
        }
        // random symmetric-circulant competitors on 20 cells
        for rho in [0.1, 0.5, 0.9, 0.99] {
            for m in [2usize, 3, 8, 17, 40] {
                let sigma = SymmetricToeplitz::exponential(rho, m)?;
                let near = nearest_circulant(&sigma);
                let near_sq = toeplitz_offdiag_norm(&residual_offdiagonals(&sigma, &near)?).powi(2);
                for _ in 0..perturbations {
                    let delta = random_symmetric_row(&mut rng, m);
                    let delta_norm = toeplitz_offdiag_norm(&delta).max(f64::MIN_POSITIVE);
                    let radius = rng.random_range(1e-3..=1.0);
                    let row: Vec<f64> = near
                        .row()
                        .iter()
                        .zip(&delta)
                        .map(|(c, d)| c + radius * d / delta_norm)
                        .collect();
                    let other = Circulant::new(row)?;
                    let other_sq =
                        toeplitz_offdiag_norm(&residual_offdiagonals(&sigma, &other)?).powi(2);
                    t.max(near_sq - other_sq);
                }
            }
        }
        Ok(t)
    }

    fn nearest_vs_diagonal_average(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::AtMost);
        for _ in 0..100 {
            let m = rng.random_range(1..=32);
            let sigma = SymmetricToeplitz::new(random_row(&mut rng, m))?;
            let a = nearest_circulant(&sigma);
            let b = cyclic_diagonal_average(&sigma.to_dense())?;
            let dev = a
                .row()
                .iter()
                .zip(b.row())
                .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
            t.max(dev);
        }
        Ok(t)
    }

    fn symmetric_real_spectrum(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::AtMost);
        for _ in 0..200 {
            let m = rng.random_range(1..=32);
            let c = Circulant::new(random_symmetric_row(&mut rng, m))?;
            debug_assert!(c.is_symmetric());
            let sys = circulant_eigenvalues(&c);
            t.max(sys.max_abs_imag() / (1.0 + c.to_dense().frobenius_norm()));
        }
        Ok(t)
    }

    /// Smallest normalized `max_k |Im λ_k|` over asymmetric circulants; must exceed the limit.
    fn asymmetric_complex_spectrum(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::Above);
        for _ in 0..200 {
            let m = rng.random_range(3..=32);
            let mut row = random_row(&mut rng, m);
            let k = loop {
                let k = rng.random_range(1..m);
                if 2 * k != m {
                    break k;
                }
            };
            let gap = rng.random_range(0.1..=1.0);
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            row[m - k] = row[k] + sign * gap;
            let c = Circulant::new(row)?;
            let sys = circulant_eigenvalues(&c);
            t.min(sys.max_abs_imag() / (1.0 + c.to_dense().frobenius_norm()));
        }
        Ok(t)
    }

    fn eigenvalues_vs_jacobi(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::AtMost);
        for _ in 0..50 {
            let m = rng.random_range(1..=16);
            let c = Circulant::new(random_symmetric_row(&mut rng, m))?;
            let formula = symmetric_circulant_eigenvalues(&c)?;
            let oracle = jacobi_eigenvalues(&c.to_dense(), &JacobiSettings::default())?;
            t.max(multiset_distance(&formula, &oracle).expect("same length"));
        }
        Ok(t)
    }

    fn eigenpair_residuals(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::AtMost);
        for _ in 0..50 {
            let m = rng.random_range(1..=64);
            let c = Circulant::new(random_row(&mut rng, m))?;
            let sys = circulant_eigenvalues(&c);
            let scale = 1.0 + c.to_dense().frobenius_norm();
            for k in 0..m {
                t.max(eigenpair_residual(&c, &sys, k)? / scale);
            }
        }
        Ok(t)
    }

    fn truncated_power_sums(&self, _id: usize) -> Result<Tally> {
        let mut t = Tally::new(Bound::AtMost);
        for k in 0..=5 {
            for i in 1..=9 {
                let p = i as f64 / 10.0;
                for n in 1..=30 {
                    let closed = truncated_power_sum(n, k, p)?;
                    let direct = direct_power_sum(n, k, p);
                    t.max((closed - direct).abs() / direct.abs());
                }
            }
        }
        Ok(t)
    }

    fn moment_reconstruction(&self, _id: usize) -> Result<Tally> {
        let mut t = Tally::new(Bound::AtMost);
        for rho in closed_form_rho_grid() {
            for m in CLOSED_FORM_M_RANGE {
                let mf = m as f64;
                let rebuilt = 2.0
                    * (power_sum_k1(m, rho)? / mf - power_sum_k2(m, rho)? / (mf * mf))
                    - 2.0 * square_cube_correction(m, rho)?;
                let closed = (self.closed_nearest)(rho, m)?;
                t.max((rebuilt - closed).abs() / (1.0 + closed.abs()));
            }
        }
        Ok(t)
    }

    fn general_closed_form(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::AtMost);
        for _ in 0..100 {
            let m = rng.random_range(3..=32);
            let sigma = SymmetricToeplitz::new(random_row(&mut rng, m))?;
            let general = scaled_residual_norm_sq_general(&sigma);
            let direct = scaled_residual_norm_sq_direct(&sigma, &nearest_circulant(&sigma))?;
            t.max((general - direct).abs() / direct);
        }
        Ok(t)
    }

    fn nearest_eigen_formula(&self, id: usize) -> Result<Tally> {
        let mut rng = self.rng(id);
        let mut t = Tally::new(Bound::AtMost);
        for _ in 0..100 {
            let m = rng.random_range(1..=32);
            let sigma = SymmetricToeplitz::new(random_row(&mut rng, m))?;
            let a = nearest_eigenvalues(&sigma);
            let b = symmetric_circulant_eigenvalues(&nearest_circulant(&sigma))?;
            let dev = a
                .iter()
                .zip(&b)
                .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
            t.max(dev);
        }
        Ok(t)
    }

    fn gs_spectral_entries(&self, _id: usize) -> Result<Tally> {
        let mut t = Tally::new(Bound::AtMost);
        for i in 0..=9 {
            let rho = i as f64 / 10.0;
            for m in 1..=32 {
                let a = gs_circulant(rho, m)?;
                let b = gs_entries_spectral(rho, m, 200)?;
                let dev = a
                    .row()
                    .iter()
                    .zip(b.row())
                    .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
                t.max(dev);
            }
        }
        Ok(t)
    }

    /// `|(1/√M)‖R_Σe‖ / leading − 1|` at `M = 400`, and the GS-ratio deviation
    /// `|‖R_Σe‖/((1−ρ^M)‖R_GS‖) − 1|` at `M = 400`, which must also shrink
    /// strictly along `M ∈ {50, 100, 200, 400}`.
    fn leading_term_ratio(&self, _id: usize) -> Result<Tally> {
        let mut t = Tally::new(Bound::AtMost);
        for rho in [0.5, 0.9] {
            let sigma = SymmetricToeplitz::exponential(rho, 400)?;
            let near = scaled_residual_norm_sq_direct(&sigma, &nearest_circulant(&sigma))?;
            t.max((near.sqrt() / leading_term_nearest(rho, 400)? - 1.0).abs());

            let devs = gs_ratio_deviations(rho, &[50, 100, 200, 400])?;
            if devs.windows(2).any(|w| w[1] >= w[0]) {
                return Err(Error::Precondition(format!(
                    "GS ratio deviation not decreasing for rho={rho}: {devs:?}"
                )));
            }
            t.max(*devs.last().expect("nonempty"));
        }
        Ok(t)
    }
}

/// `|‖R_Σe‖ / ((1 − ρ^M)‖R_GS‖) − 1|` for each `M`, by direct residuals.
pub fn gs_ratio_deviations(rho: f64, orders: &[usize]) -> Result<Vec<f64>> {
    orders
        .iter()
        .map(|&m| {
            let sigma = SymmetricToeplitz::exponential(rho, m)?;
            let near = scaled_residual_norm_sq_direct(&sigma, &nearest_circulant(&sigma))?;
            let gs = scaled_residual_norm_sq_direct(&sigma, &gs_circulant(rho, m)?)?;
            let ratio = near.sqrt() / ((1.0 - rho.powi(m as i32)) * gs.sqrt());
            Ok((ratio - 1.0).abs())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parsing() {
        assert_eq!("quick".parse::<Level>().unwrap(), Level::Quick);
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("slow".parse::<Level>().is_err());
    }

    #[test]
    fn suite_bounds() {
        let mut s = SuiteResult {
            id: 1,
            name: "x",
            samples: 1,
            worst: 0.5,
            limit: 1.0,
            bound: Bound::AtMost,
            failure: None,
        };
        assert!(s.passed());
        s.bound = Bound::Above;
        assert!(!s.passed());
        s.worst = f64::NAN;
        s.bound = Bound::AtMost;
        assert!(!s.passed());
    }

    #[test]
    fn symmetric_rows_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..20 {
            assert!(Circulant::new(random_symmetric_row(&mut rng, m))
                .unwrap()
                .is_symmetric());
        }
    }

    #[test]
    fn quick_run_is_deterministic_and_green() {
        let a = Verifier::new(7, Level::Quick).run();
        let b = Verifier::new(7, Level::Quick).run();
        assert_eq!(a, b);
        assert!(a.suites.len() >= 8);
        assert!(a.all_passed(), "{a}");
    }
}
