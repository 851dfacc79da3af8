//! Generating-polynomial tables for the rank-1 closed forms. Every table is a
//! polynomial in u = s², stored by ascending power of u.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFamily {
    Beta,
    Gamma,
    Delta,
    Eta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignedTable {
    pub values: Vec<BigRational>,
    pub family: TableFamily,
    pub param: Option<u32>,
}

impl SignedTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Σ values[i] s^{2i}.
    pub fn eval_at(&self, s: &BigRational) -> BigRational {
        let u = s * s;
        self.values
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, v| acc * &u + v)
    }
}

/// Multiply a polynomial in u by (u - root).
fn mul_linear(poly: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); poly.len() + 1];
    for (i, c) in poly.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

/// ∏ (u - r) over the given roots.
fn expand(roots: impl IntoIterator<Item = BigRational>) -> Vec<BigRational> {
    roots
        .into_iter()
        .fold(vec![BigRational::one()], |p, r| mul_linear(&p, &r))
}

/// Squares of the half-integers 1/2, 3/2, ..., (2count-1)/2.
fn half_int_squares(count: u32) -> impl Iterator<Item = BigRational> {
    (0..count).map(|i| {
        let j = BigInt::from(2 * i + 1);
        BigRational::new(&j * &j, BigInt::from(4))
    })
}

/// ∏_{j=1/2}^{m̄-3/2} (s² - j²); β_{0,1} = 1.
pub fn beta_table(mbar: u32) -> Result<SignedTable> {
    if mbar < 1 {
        return Err(Error::Parameter(format!("beta table needs m̄ ≥ 1, got {mbar}")));
    }
    Ok(SignedTable {
        values: expand(half_int_squares(mbar - 1)),
        family: TableFamily::Beta,
        param: Some(mbar),
    })
}

/// The squared linear product ∏_{k=1}^{m̄-1}(s + k - m̄/2)², written in s².
/// Odd m̄: ∏_{j=1/2}^{m̄/2-1}(s²-j²)². Even m̄: s²∏_{j=1}^{m̄/2-1}(s²-j²)².
pub fn gamma_table(mbar: u32) -> Result<SignedTable> {
    if mbar < 2 {
        return Err(Error::Parameter(format!("gamma table needs m̄ ≥ 2, got {mbar}")));
    }
    let roots: Vec<BigRational> = if mbar % 2 == 1 {
        half_int_squares((mbar - 1) / 2).collect()
    } else {
        let mut r = vec![BigRational::zero()];
        r.extend((1..mbar / 2).map(|j| BigRational::from_integer(BigInt::from(j * j))));
        r
    };
    let values = if mbar % 2 == 1 {
        expand(roots.iter().chain(roots.iter()).cloned())
    } else {
        // the zero root appears once: s² · ∏ (s²-j²)²
        expand(roots.iter().chain(roots.iter().skip(1)).cloned())
    };
    Ok(SignedTable {
        values,
        family: TableFamily::Gamma,
        param: Some(mbar),
    })
}

/// ∏_{j=1/2}^{m̄-3/2}(s²-j²) · ∏_{j=1/2}^{m̄-5/2}(s²-j²).
pub fn delta_table(mbar: u32) -> Result<SignedTable> {
    if mbar < 2 {
        return Err(Error::Parameter(format!("delta table needs m̄ ≥ 2, got {mbar}")));
    }
    let roots = half_int_squares(mbar - 1).chain(half_int_squares(mbar - 2));
    Ok(SignedTable {
        values: expand(roots),
        family: TableFamily::Delta,
        param: Some(mbar),
    })
}

/// ∏_{j=1/2}^{9/2}(s²-j²) · (s²-1/4)(s²-9/4), the Cayley-plane multiplicity factor.
pub fn eta_table() -> SignedTable {
    let roots = half_int_squares(5).chain([ratio(1, 4), ratio(9, 4)]);
    SignedTable {
        values: expand(roots),
        family: TableFamily::Eta,
        param: None,
    }
}

/// The η list as printed in the source, (numerator, denominator) for η₀..η₇.
/// Entries 1, 3 and 6 disagree with the expanded product that `eta_table` returns.
pub const ETA_PRINTED: [(i64, i64); 8] = [
    (-8037225, 16384),
    (18455239, 4096),
    (-13020525, 1024),
    (2858418, 256),
    (-262075, 64),
    (10437, 16),
    (-170, 4),
    (1, 1),
];

pub fn eta_printed() -> Vec<BigRational> {
    ETA_PRINTED.iter().map(|&(n, d)| ratio(n, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn beta_examples() {
        assert_eq!(beta_table(1).unwrap().values, vec![int(1)]);
        assert_eq!(beta_table(2).unwrap().values, vec![ratio(-1, 4), int(1)]);
        assert!(beta_table(3).unwrap().eval_at(&ratio(3, 2)).is_zero());
        assert!(beta_table(0).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_table(2).unwrap().values, vec![int(0), int(1)]);
        assert_eq!(gamma_table(3).unwrap().values, vec![ratio(1, 16), ratio(-1, 2), int(1)]);
        assert!(gamma_table(1).is_err());
    }

    #[test]
    fn gamma_is_squared_linear_product() {
        // compare against ∏_{k=1}^{m̄-1}(s + k - m̄/2)² expanded in s directly
        for mbar in 2..=9u32 {
            let mut lin = vec![BigRational::one()];
            for k in 1..mbar {
                let a = int(k as i64) - ratio(mbar as i64, 2);
                let mut next = vec![BigRational::zero(); lin.len() + 1];
                for (i, c) in lin.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] += c * &a;
                }
                lin = next;
            }
            let mut sq = vec![BigRational::zero(); 2 * lin.len() - 1];
            for (i, a) in lin.iter().enumerate() {
                for (j, b) in lin.iter().enumerate() {
                    sq[i + j] += a * b;
                }
            }
            let g = gamma_table(mbar).unwrap();
            for (i, c) in sq.iter().enumerate() {
                if i % 2 == 1 {
                    assert!(c.is_zero());
                } else {
                    assert_eq!(c, &g.values[i / 2], "m̄={mbar} i={i}");
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_table(2).unwrap().values, vec![ratio(-1, 4), int(1)]);
        // (u-1/4)²(u-9/4) = u³ - 11/4 u² + 19/16 u - 9/64
        assert_eq!(
            delta_table(3).unwrap().values,
            vec![ratio(-9, 64), ratio(19, 16), ratio(-11, 4), int(1)]
        );
    }

    #[test]
    fn eta_expanded_vs_printed() {
        let eta = eta_table();
        let printed = eta_printed();
        assert_eq!(eta.values[7], int(1));
        assert_eq!(eta.values[0], ratio(-8037225, 16384));
        let differ: Vec<usize> = (0..8).filter(|&i| eta.values[i] != printed[i]).collect();
        assert_eq!(differ, vec![1, 3, 6]);
        assert_eq!(eta.values[1], ratio(18445239, 4096));
        assert_eq!(eta.values[3], ratio(2864323, 256));
        assert_eq!(eta.values[6], ratio(-175, 4));
    }
}
