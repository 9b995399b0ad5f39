//! Helpers for exact rational scalars: lossless-ish conversion to `f64`,
//! exact conversion from `f64`, and simplest-rational selection inside an
//! interval (Stern-Brocot).

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, ToPrimitive, Zero};

/// Convert a big rational to the nearest `f64`, robust against numerators
/// and denominators far outside the `f64` range.
///
/// Both parts are shifted into a 64-bit window before dividing, and the
/// exponent is reapplied afterwards, so the result is accurate to the last
/// couple of ulps for arbitrarily large inputs.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    let nbits = numer.bits() as i64;
    let dbits = denom.bits() as i64;
    let nshift = (nbits - 64).max(0);
    let dshift = (dbits - 64).max(0);
    let nwin = (numer >> nshift as usize).to_f64().unwrap_or(f64::NAN);
    let dwin = (denom >> dshift as usize).to_f64().unwrap_or(f64::NAN);
    let exp = nshift - dshift;
    if exp > 2000 {
        return if nwin.is_sign_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    if exp < -2000 {
        return 0.0;
    }
    (nwin / dwin) * 2f64.powi(exp as i32)
}

/// Exact rational value of a finite `f64`.
pub fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Approximate base-2 magnitude of a rational: `log2|r|` within one unit.
/// Returns `None` for zero.
pub fn approx_log2(r: &BigRational) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(r.numer().bits() as i64 - r.denom().bits() as i64)
}

/// The rational with the smallest denominator strictly inside the open
/// interval `(lo, hi)`. Among denominator ties the continued-fraction walk
/// picks a unique representative, so the result is deterministic.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo < hi, "empty interval");
    let fl = lo.floor();
    // An integer strictly inside?
    let candidate = &fl + BigRational::one();
    if candidate < *hi {
        return candidate;
    }
    let lo_frac = lo - &fl;
    if lo_frac.is_zero() {
        // Interval is (fl, hi) with hi <= fl + 1: take fl + 1/q for the
        // smallest q with 1/q < hi - fl.
        let gap = hi - &fl;
        let q = (BigRational::one() / gap).floor() + BigRational::one();
        return fl + BigRational::one() / q;
    }
    let hi_frac = hi - &fl;
    fl + BigRational::one() / simplest_rational_between(&(BigRational::one() / hi_frac), &(BigRational::one() / lo_frac))
}

/// Round `r` outward (away from the interval interior given by `down`) onto
/// a dyadic grid with denominator `2^bits`. Used to replace huge-denominator
/// certified bounds by small certified bounds.
pub fn dyadic_round(r: &BigRational, bits: u32, down: bool) -> BigRational {
    let scale = BigInt::from(1u8) << bits;
    let scaled = r * BigRational::from_integer(scale.clone());
    let snapped = if down { scaled.floor() } else { scaled.ceil() };
    snapped / BigRational::from_integer(scale)
}

/// Signum as an `i8` in {-1, 0, 1}.
pub fn sign_i8(r: &BigRational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip_small() {
        for v in [0.0, 1.0, -2.5, 0.125, 3.0 / 7.0, 1e300, -1e-300] {
            let r = rat_from_f64(v);
            assert_eq!(rat_to_f64(&r), v);
        }
    }

    #[test]
    fn f64_conversion_huge() {
        // 10^400 / (10^400 + something small) should be close to 1.
        let big_pow = BigInt::from(10u8).pow(400);
        let r = BigRational::new(big_pow.clone(), big_pow + BigInt::from(12345));
        let f = rat_to_f64(&r);
        assert!((f - 1.0).abs() < 1e-12);
        // And a value far above f64 range maps to infinity.
        let huge = BigRational::from_integer(BigInt::from(10u8).pow(400));
        assert!(rat_to_f64(&huge).is_infinite());
    }

    #[test]
    fn simplest_rational_picks_small_denominators() {
        let cases = [
            ((big(0), big(4)), big(1)),
            ((big_ratio(1, 6), big(4)), big(1)),
            ((big(0), big_ratio(1, 6)), big_ratio(1, 7)),
            ((big_ratio(-1, 2), big_ratio(1, 2)), big(0)),
            ((big_ratio(7, 2), big(4)), big_ratio(11, 3)),
        ];
        for ((lo, hi), want) in cases {
            let got = simplest_rational_between(&lo, &hi);
            assert!(lo < got && got < hi);
            assert_eq!(got, want);
        }
    }

    #[test]
    fn dyadic_round_brackets() {
        let r = big_ratio(1, 3);
        let down = dyadic_round(&r, 10, true);
        let up = dyadic_round(&r, 10, false);
        assert!(down <= r && r <= up);
        assert!(&up - &down <= big_ratio(1, 1024));
    }
}
