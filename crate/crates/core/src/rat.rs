//! Exact rational arithmetic helpers.
//!
//! Amplitudes, quantized samples, noise magnitudes, and difference sequences
//! are all integer multiples of 1/256; correlations multiply two such values.
//! `i64` numerators leave ample headroom at desk scale.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = Ratio<i64>;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

/// `n/256` as an exact rational.
pub fn q256(n: i64) -> Rat {
    Ratio::new(n, 256)
}

/// Lossy conversion for numeric work after all exact decisions are made.
pub fn to_f64(r: Rat) -> f64 {
    r.to_f64().expect("i64 ratio always converts to f64")
}

/// Sign of a rational as -1, 0, or +1.
pub fn sign(r: Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// True if `r` is an integer multiple of 1/256.
pub fn is_multiple_of_q256(r: Rat) -> bool {
    256 % r.denom() == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q256_reduces() {
        assert_eq!(q256(128), rat(1, 2));
        assert_eq!(q256(-22), rat(-11, 128));
        assert!(is_multiple_of_q256(q256(-22)));
        assert!(is_multiple_of_q256(rat(1, 2)));
        assert!(!is_multiple_of_q256(rat(1, 3)));
    }

    #[test]
    fn sign_matches() {
        assert_eq!(sign(rat(-3, 7)), -1);
        assert_eq!(sign(Rat::zero()), 0);
        assert_eq!(sign(rat(5, 2)), 1);
    }
}
