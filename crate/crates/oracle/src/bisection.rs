//! Root finding on the literal two-state increment numerator.

use crate::{OracleError, Result};

/// `W_+(p) - p W(p)` with `W_+(p) = p(W_+ p + q)` and
/// `W(p) = W_+p² + 2pq + W_-q²`, `q = 1 - p`.
pub fn literal_binary_numerator(w_plus: f64, w_minus: f64, p: f64) -> f64 {
    let q = 1.0 - p;
    let fitness_plus = p * (w_plus * p + q);
    let total = w_plus * p * p + 2.0 * p * q + w_minus * q * q;
    fitness_plus - p * total
}

const EDGE: f64 = 1e-9;
const WIDTH: f64 = 1e-13;

/// Interior root of the two-state increment numerator, by bisection on
/// `[1e-9, 1 - 1e-9]`, accurate to better than `1e-12`.
pub fn bisection_equilibrium(w_plus: f64, w_minus: f64) -> Result<f64> {
    let f = |p: f64| literal_binary_numerator(w_plus, w_minus, p);
    let (mut lo, mut hi) = (EDGE, 1.0 - EDGE);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if (f_lo * f_hi).partial_cmp(&0.0) != Some(std::cmp::Ordering::Less) {
        return Err(OracleError::NoSignChange);
    }
    let lo_positive = f_lo > 0.0;
    for _ in 0..200 {
        if hi - lo <= WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_roots() {
        // V_+ = 0.6, V_- = 0.2
        let root = bisection_equilibrium(0.4, 0.8).unwrap();
        assert!((root - 0.25).abs() < 1e-12);
        let root = bisection_equilibrium(0.7, 0.7).unwrap();
        assert!((root - 0.5).abs() < 1e-12);
    }

    #[test]
    fn neutral_model_has_no_root() {
        assert_eq!(bisection_equilibrium(1.0, 1.0), Err(OracleError::NoSignChange));
        // Directional selection: W_+ = 1 > W_- drives p_+ to fixation.
        assert_eq!(bisection_equilibrium(1.0, 0.5), Err(OracleError::NoSignChange));
    }
}
