//! Conversions between exact rationals and astro-float values.

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::Zero;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in bits for a target of `digits` decimal digits.
pub fn bits_for(digits: u32) -> usize {
    let b = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    b.div_ceil(64) * 64
}

pub fn from_bigint(x: &BigInt, p: usize) -> BigFloat {
    if x.is_zero() {
        return BigFloat::from_u64(0, p);
    }
    let words: Vec<Word> = x.magnitude().to_u64_digits().into_iter().map(|w| w as Word).collect();
    let sign = if x.sign() == BigSign::Minus {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let e = (words.len() * 64) as Exponent;
    let mut v = BigFloat::from_words(&words, sign, e);
    v.set_precision(p, RM).expect("precision");
    v
}

pub fn from_rational(x: &BigRational, p: usize) -> BigFloat {
    from_bigint(x.numer(), p).div(&from_bigint(x.denom(), p), p, RM)
}

/// The exact rational value of a finite float.
pub fn to_rational(x: &BigFloat) -> Option<BigRational> {
    let (words, _, sign, e, _) = x.as_raw_parts()?;
    let digits: Vec<u64> = words.to_vec();
    let m = BigInt::from(BigUint::new(
        digits.iter().flat_map(|&w| [w as u32, (w >> 32) as u32]).collect(),
    ));
    let shift = e as i64 - (words.len() * 64) as i64;
    let two = BigInt::from(2);
    let mut r = if shift >= 0 {
        BigRational::from_integer(m * num_traits::pow(two, shift as usize))
    } else {
        BigRational::new(m, num_traits::pow(two, (-shift) as usize))
    };
    if sign == Sign::Neg {
        r = -r;
    }
    Some(r)
}

pub fn pi(p: usize, cc: &mut Consts) -> BigFloat {
    cc.pi(p, RM)
}

pub fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn round_trip() {
        let p = bits_for(50);
        for x in [
            ratio(1, 3),
            ratio(-7, 2),
            ratio(12345678901234567, 1 << 40),
            ratio(0, 1),
        ] {
            let f = from_rational(&x, p);
            let back = to_rational(&f).unwrap();
            let err = crate::exactnum::to_f64(&(&back - &x));
            assert!(err.abs() <= 1e-50 * crate::exactnum::to_f64(&x).abs().max(1e-300));
        }
        let big = BigInt::from(3).pow(200);
        let f = from_bigint(&big, 512);
        assert_eq!(to_rational(&f).unwrap(), BigRational::from_integer(big));
    }
}
