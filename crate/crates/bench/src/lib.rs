//! Benchmark inputs shared by the criterion targets.

use circulant_core::SymmetricToeplitz;

/// Orders used across benchmark groups.
pub const ORDERS: [usize; 4] = [16, 64, 256, 1024];

pub fn exponential_input(order: usize) -> SymmetricToeplitz {
    SymmetricToeplitz::exponential(0.9, order).expect("valid exponential input")
}
