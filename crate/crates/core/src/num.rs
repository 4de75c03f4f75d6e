//! Small scalar helpers shared by the closed-form kernels.

/// `x^n` by binary exponentiation. `0^0 = 1`.
pub fn powu(x: f64, mut n: usize) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        n >>= 1;
        if n > 0 {
            base *= base;
        }
    }
    acc
}

/// Checks `0 <= rho < 1`, the range on which the exponential closed forms are defined.
pub(crate) fn check_open_unit(rho: f64, what: &str) -> crate::Result<()> {
    if !(0.0..1.0).contains(&rho) {
        return Err(crate::Error::domain(format!(
            "{what} requires 0 <= rho < 1, got {rho}"
        )));
    }
    Ok(())
}
