//! Expected bit flips until a target distance is reached.
//!
//! Flipping one uniformly chosen bit per step of a d-dimensional vector is a
//! birth-death chain on the number of positions that differ from the start:
//! from state k the distance grows with probability (d - k) / d and shrinks
//! with probability k / d. The expected number of steps until the chain
//! first hits a target state solves a tridiagonal linear system, which
//! [`expected_flip_count`] solves directly; [`simulate_flip_count`] estimates
//! the same quantity by walking the chain.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::child_rng;

/// Expected number of single-bit flips until a vector of dimensionality `d`
/// first differs from its start in exactly `target` positions.
///
/// Solves u(k) = 1 + ((d - k) u(k+1) + k u(k-1)) / d with u(0) = 1 + u(1)
/// and u(target) = 0 by the Thomas algorithm, returning u(0).
pub fn expected_flip_count(d: usize, target: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    if target == 0 || target > d {
        return Err(Error::TargetOutOfRange { target, d });
    }

    // Unknowns u(0) .. u(target - 1); u(target) = 0 drops out of the last row.
    let n = target;
    let df = d as f64;
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut lower = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    diag[0] = 1.0;
    upper[0] = -1.0;
    rhs[0] = 1.0;
    for k in 1..n {
        lower[k] = -(k as f64);
        diag[k] = df;
        upper[k] = -(df - k as f64);
        rhs[k] = df;
    }

    for k in 1..n {
        let w = lower[k] / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    let mut u = vec![0.0; n];
    u[n - 1] = rhs[n - 1] / diag[n - 1];
    for k in (0..n - 1).rev() {
        u[k] = (rhs[k] - upper[k] * u[k + 1]) / diag[k];
    }
    Ok(u[0])
}

/// Monte-Carlo estimate of [`expected_flip_count`]: mean number of steps
/// over `walks` independent walks of the flip chain.
pub fn simulate_flip_count(d: usize, target: usize, walks: u64, seed: u64) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidDimension);
    }
    if target == 0 || target > d {
        return Err(Error::TargetOutOfRange { target, d });
    }
    if walks == 0 {
        return Err(Error::EmptyOperands);
    }
    let mut rng = child_rng(seed, "markov/walks");
    let mut total: u64 = 0;
    for _ in 0..walks {
        let mut k = 0usize;
        loop {
            if rng.gen_range(0..d) >= k {
                k += 1;
            } else {
                k -= 1;
            }
            total += 1;
            if k == target {
                break;
            }
        }
    }
    Ok(total as f64 / walks as f64)
}
