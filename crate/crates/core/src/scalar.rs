//! Exact ordered-field scalars.
//!
//! Every geometric routine in the crate is generic over [`Scalar`]. The
//! census itself runs on [`crate::Rat`] (arbitrary precision rationals);
//! fixed-width rationals such as `Ratio<i64>` are handy for small tests.
//! Floating point types are deliberately not implementors: all incidence,
//! rigidity and speciality decisions are equality tests.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Error;

pub trait Scalar: Clone + Ord + Hash + Debug + Display + Send + Sync + Signed + num_traits::Num + 'static {
    fn from_i64(v: i64) -> Self;

    /// `n / d`; panics when `d == 0`.
    fn from_frac(n: i64, d: i64) -> Self;

    fn to_big(&self) -> BigRational;

    /// `None` when the value does not fit the representation.
    fn from_big(v: &BigRational) -> Option<Self>;

    fn floor(&self) -> Self;

    fn is_integral(&self) -> bool;

    /// Lossy conversion, used for visualization output only.
    fn to_f64_lossy(&self) -> f64 {
        let b = self.to_big();
        b.numer().to_f64().unwrap_or(f64::NAN) / b.denom().to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + From<i64>
        + Into<BigInt>
        + TryFrom<BigInt>
        + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn from_frac(n: i64, d: i64) -> Self {
        Ratio::new(T::from(n), T::from(d))
    }

    fn to_big(&self) -> BigRational {
        BigRational::new(self.numer().clone().into(), self.denom().clone().into())
    }

    fn from_big(v: &BigRational) -> Option<Self> {
        let n = T::try_from(v.numer().clone()).ok()?;
        let d = T::try_from(v.denom().clone()).ok()?;
        Some(Ratio::new(n, d))
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_ratio<S: Scalar>(v: &S) -> String {
    let b = v.to_big();
    format!("{}/{}", b.numer(), b.denom())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_ratio<S: Scalar>(text: &str) -> Result<S, Error> {
    let trimmed = text.trim();
    let big: BigRational = match trimmed.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            BigRational::new(n, d)
        }
        None => {
            let n: BigInt = trimmed.parse().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
            BigRational::from_integer(n)
        }
    };
    S::from_big(&big).ok_or_else(|| Error::Parse(format!("rational {text:?} out of range")))
}

pub(crate) fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

pub(crate) fn dot<S: Scalar>(coeffs: &[i64], xs: &[S]) -> S {
    let mut acc = S::zero();
    for (c, x) in coeffs.iter().zip(xs) {
        match *c {
            0 => {}
            1 => acc = acc + x.clone(),
            -1 => acc = acc - x.clone(),
            c => acc = acc + S::from_i64(c) * x.clone(),
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn ratio_round_trip() {
        let v: Rat = parse_ratio("-6/4").unwrap();
        assert_eq!(format_ratio(&v), "-3/2");
        let w: Rat = parse_ratio("7").unwrap();
        assert_eq!(format_ratio(&w), "7/1");
        assert!(parse_ratio::<Rat>("1/0").is_err());
        assert!(parse_ratio::<Rat>("x").is_err());
    }

    #[test]
    fn small_ratio_rejects_overflow() {
        let huge: Rat = parse_ratio("100000000000000000000000/3").unwrap();
        assert!(Ratio::<i64>::from_big(&huge).is_none());
        let small = Ratio::<i64>::from_big(&Rat::from_frac(5, 7)).unwrap();
        assert_eq!(small, Ratio::new(5, 7));
    }

    #[test]
    fn floor_and_dot() {
        let v = Rat::from_frac(-5, 2);
        assert_eq!(Scalar::floor(&v), Rat::from_i64(-3));
        let xs = [Rat::from_frac(1, 2), Rat::from_i64(3), Rat::from_i64(1)];
        assert_eq!(dot(&[2, -1, 4], &xs), Rat::from_i64(2));
    }
}
