//! The `(ρ, M)` comparison grid written by `circapprox sweep`.

use circulant_core::io::{format_report_csv, REPORT_CSV_HEADER};
use circulant_core::{ApproximationMethod, ResidualReport};

use crate::CliError;

pub const DEFAULT_RHOS: [f64; 4] = [0.1, 0.5, 0.9, 0.99];
pub const DEFAULT_M_MIN: usize = 3;
pub const DEFAULT_M_MAX: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub rho_values: Vec<f64>,
    pub m_min: usize,
    pub m_max: usize,
    pub methods: Vec<ApproximationMethod>,
}

impl Default for SweepRequest {
    fn default() -> Self {
        Self {
            rho_values: DEFAULT_RHOS.to_vec(),
            m_min: DEFAULT_M_MIN,
            m_max: DEFAULT_M_MAX,
            methods: vec![ApproximationMethod::Nearest, ApproximationMethod::Gs],
        }
    }
}

impl SweepRequest {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.rho_values.is_empty() {
            return Err(CliError::usage("--rhos must list at least one value"));
        }
        if let Some(r) = self.rho_values.iter().find(|r| !(0.0..1.0).contains(*r)) {
            return Err(CliError::usage(format!(
                "sweep rho values must lie in [0, 1), got {r}"
            )));
        }
        if self.m_min < 2 {
            return Err(CliError::usage(format!(
                "--m-min must be at least 2, got {}",
                self.m_min
            )));
        }
        if self.m_max < self.m_min {
            return Err(CliError::usage(format!(
                "--m-max ({}) is below --m-min ({})",
                self.m_max, self.m_min
            )));
        }
        if self.methods.is_empty() {
            return Err(CliError::usage("--methods must list at least one method"));
        }
        if self.methods.contains(&ApproximationMethod::Common) {
            return Err(CliError::usage(
                "sweep supports the nearest and gs methods only",
            ));
        }
        Ok(())
    }

    /// Reports ordered by method, then ascending ρ, then ascending M.
    pub fn run(&self) -> Result<Vec<ResidualReport>, CliError> {
        self.validate()?;
        let mut methods = self.methods.clone();
        methods.sort();
        methods.dedup();
        let mut rhos = self.rho_values.clone();
        rhos.sort_by(f64::total_cmp);
        rhos.dedup();

        let mut out =
            Vec::with_capacity(methods.len() * rhos.len() * (self.m_max - self.m_min + 1));
        for &method in &methods {
            for &rho in &rhos {
                for m in self.m_min..=self.m_max {
                    out.push(ResidualReport::exponential(method, rho, m)?);
                }
            }
        }
        Ok(out)
    }
}

/// Header line plus one CSV record per report, newline-terminated.
pub fn render_csv(reports: &[ResidualReport]) -> String {
    let mut s = String::with_capacity(64 * (reports.len() + 1));
    s.push_str(REPORT_CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&format_report_csv(r));
        s.push('\n');
    }
    s
}
