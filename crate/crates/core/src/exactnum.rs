//! Exact rational kernel: Bernoulli numbers, the c/d coefficient sequences,
//! half-integer Gamma moments and a log-magnitude that never overflows.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `0!, 1!, ..., n!`.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=n {
        acc *= k;
        out.push(acc.clone());
    }
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Even-index Bernoulli numbers B_0, B_2, B_4, ... computed so far.
static EVEN_BERNOULLI: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

fn extend_bernoulli(cache: &mut Vec<BigRational>, upto: usize) {
    if cache.len() > upto {
        return;
    }
    // tangent numbers T_1..T_n by the integer recurrence of Brent and Harvey,
    // then B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
    let n = upto.max(2 * cache.len()).max(1);
    let mut t = vec![BigInt::zero(); n + 1];
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigRational::one());
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - BigInt::one());
        let b = BigRational::new(tk * (2 * k), den);
        out.push(if k % 2 == 1 { b } else { -b });
    }
    *cache = out;
}

/// B_k, with B_1 = -1/2. Odd k > 1 is an error rather than zero.
pub fn bernoulli(k: usize) -> Result<BigRational> {
    if k == 1 {
        return Ok(ratio(-1, 2));
    }
    if k % 2 == 1 {
        return Err(Error::OddBernoulli(k));
    }
    let idx = k / 2;
    {
        let cache = EVEN_BERNOULLI.read().unwrap_or_else(|e| e.into_inner());
        if let Some(b) = cache.get(idx) {
            return Ok(b.clone());
        }
    }
    let mut cache = EVEN_BERNOULLI.write().unwrap_or_else(|e| e.into_inner());
    extend_bernoulli(&mut cache, idx);
    Ok(cache[idx].clone())
}

fn even_bernoulli(k: usize) -> BigRational {
    bernoulli(2 * k).expect("even index")
}

/// d_n = (-1)^n B_{2n+2} / (n+1).
pub fn d_coeff(n: usize) -> BigRational {
    let b = even_bernoulli(n + 1) / BigInt::from(n + 1);
    if n.is_multiple_of(2) {
        b
    } else {
        -b
    }
}

/// c_n = d_n (1 - 2^{-2n-1}).
pub fn c_coeff(n: usize) -> BigRational {
    let two_pow = BigInt::one() << (2 * n + 1);
    let factor = BigRational::new(&two_pow - BigInt::one(), two_pow);
    d_coeff(n) * factor
}

/// Gamma(h + 1/2) / sqrt(pi) = (2h)! / (4^h h!).
pub fn gauss_moment(h: usize) -> BigRational {
    let mut acc = BigRational::one();
    for j in 1..=h {
        acc = acc * BigInt::from(2 * j - 1) / BigInt::from(2);
    }
    acc
}

fn ln_magnitude(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// ln |x| from bit lengths and the leading 64 bits of numerator and denominator.
pub fn log_abs(x: &BigRational) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::LogOfZero);
    }
    Ok(ln_magnitude(x.numer().magnitude()) - ln_magnitude(x.denom().magnitude()))
}

/// ln n! as a float, summed directly.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `x` in scientific notation with `digits` significant digits, rounded half
/// away from zero. Exact: no floating point is involved.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("0.{}e0", "0".repeat(digits - 1)).replace(".e", "e");
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    // initial exponent guess from the log, then correct so 10^e ≤ a < 10^{e+1}
    let mut e = (log_abs(&a).expect("nonzero") / std::f64::consts::LN_10).floor() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    while rpow(&ten, e) > a {
        e -= 1;
    }
    while rpow(&ten, e + 1) <= a {
        e += 1;
    }
    let scaled = &a * rpow(&ten, digits as i64 - 1 - e);
    let mut m = (scaled + ratio(1, 2)).floor().to_integer();
    if m >= BigInt::from(10).pow(digits as u32) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// Nearest f64 to a rational of any size (0 on underflow, ±inf on overflow).
pub fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let l = log_abs(x).expect("nonzero");
    if l.abs() < 700.0 {
        // scale both sides to 64 leading bits before dividing
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let num = shift_to_f64(x.numer().magnitude(), nb);
        let den = shift_to_f64(x.denom().magnitude(), db);
        let v = num / den * 2f64.powi((nb - db) as i32);
        return if x.is_negative() { -v } else { v };
    }
    let v = l.exp();
    if x.is_negative() {
        -v
    } else {
        v
    }
}

// mantissa in [0.5, 1) taken from the top 64 bits of a value with `bits` bits
fn shift_to_f64(x: &BigUint, bits: i64) -> f64 {
    let top = if bits > 64 {
        (x >> (bits - 64) as u64).to_u64().expect("64 bits") as f64
    } else {
        x.to_u64().expect("fits") as f64 * 2f64.powi((64 - bits) as i32)
    };
    top / 2f64.powi(64)
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Integer power of a rational, allowing negative exponents.
pub fn rpow(x: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k.is_odd() {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bernoulli() {
        assert_eq!(bernoulli(0).unwrap(), int(1));
        assert_eq!(bernoulli(2).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli(4).unwrap(), ratio(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), ratio(-691, 2730));
        assert_eq!(bernoulli(1).unwrap(), ratio(-1, 2));
        assert_eq!(bernoulli(3), Err(Error::OddBernoulli(3)));
    }

    #[test]
    fn bernoulli_against_full_recurrence() {
        // sum_{j<=n} C(n+1, j) B_j = 0 using every index, odd ones included
        let mut b = vec![BigRational::one()];
        for n in 1..=80u64 {
            let mut s = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                s += bj * binomial(n + 1, j as u64);
            }
            b.push(-s / BigInt::from(n + 1));
        }
        for (k, bk) in b.iter().enumerate() {
            if k == 1 || k % 2 == 0 {
                assert_eq!(&bernoulli(k).unwrap(), bk, "B_{k}");
            } else {
                assert!(bk.is_zero());
            }
        }
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(to_decimal(&ratio(1, 3), 5), "3.3333e-1");
        assert_eq!(to_decimal(&ratio(-2, 3), 3), "-6.67e-1");
        assert_eq!(to_decimal(&ratio(9995, 10), 3), "1.00e3");
        assert_eq!(to_decimal(&int(1), 1), "1e0");
        assert_eq!(to_decimal(&int(0), 3), "0.00e0");
        assert_eq!(to_decimal(&ratio(1, 1000), 2), "1.0e-3");
    }

    #[test]
    fn c_and_d_small() {
        assert_eq!(c_coeff(0), ratio(1, 12));
        assert_eq!(c_coeff(1), ratio(7, 480));
        assert_eq!(d_coeff(0), ratio(1, 6));
        assert_eq!(d_coeff(1), ratio(1, 60));
    }

    #[test]
    fn c30_asymptotic() {
        // c_n = 4 (2n+1)! (1 - 2^{-2n-1}) zeta(2n+2) / (2pi)^{2n+2}, and both
        // correction factors are within 1e-18 of 1 at n = 30
        use astro_float::{Consts, RoundingMode};
        let p = 256;
        let rm = RoundingMode::ToEven;
        let mut cc = Consts::new().unwrap();
        let two_pi = cc.pi(p, rm).mul(&astro_float::BigFloat::from_u64(2, p), p, rm);
        let pow = two_pi.powi(62, p, rm);
        let pow = crate::oracle::float_to_rational(&pow).unwrap();
        let ratio = c_coeff(30) * pow / (BigRational::from_integer(factorial(61)) * int(4));
        assert!((to_f64(&ratio) - 1.0).abs() < 1e-15, "{}", to_f64(&ratio) - 1.0);
    }

    #[test]
    fn gauss_moments() {
        assert_eq!(gauss_moment(0), int(1));
        assert_eq!(gauss_moment(1), ratio(1, 2));
        assert_eq!(gauss_moment(4), ratio(105, 16));
        for h in 0..40usize {
            let closed = BigRational::new(factorial(2 * h), BigInt::from(4).pow(h as u32) * factorial(h));
            assert_eq!(gauss_moment(h), closed);
        }
    }

    #[test]
    fn log_abs_values() {
        assert_eq!(log_abs(&int(1)).unwrap(), 0.0);
        let l = log_abs(&ratio(1, 2)).unwrap();
        assert!((l + std::f64::consts::LN_2).abs() < 1e-15);
        let f = BigRational::from_integer(factorial(100));
        assert!((log_abs(&f).unwrap() - 363.73937555556347).abs() < 1e-10);
        assert_eq!(log_abs(&BigRational::zero()), Err(Error::LogOfZero));
    }

    #[test]
    fn to_f64_huge_and_small() {
        assert_eq!(to_f64(&ratio(-3, 4)), -0.75);
        let big = BigRational::from_integer(BigInt::one() << 2000u32);
        assert!(to_f64(&big).is_infinite());
        assert_eq!(to_f64(&big.recip()), 0.0);
        let x = ratio(123456789, 1000);
        assert_eq!(to_f64(&x), 123456.789);
    }
}
