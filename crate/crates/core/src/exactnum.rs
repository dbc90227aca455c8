//! Exact scalars and truncated power series.
//!
//! A [`Scalar`] is an arbitrary-precision rational number. A [`Jet`] is an
//! element of `Q[[t]] / (t^K)`, the local ring at a support point kept modulo
//! a fixed truncation order `K`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The base field: exact rationals, always in lowest terms.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a scalar as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::ParseScalar(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Truncated power series `c_0 + c_1 t + ... + c_{K-1} t^{K-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet {
    coeffs: Vec<Scalar>,
}

impl Jet {
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        Jet {
            coeffs: vec![Scalar::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = c;
        j
    }

    /// `c * t^power`; zero when `power >= order`.
    pub fn monomial(c: Scalar, power: usize, order: usize) -> Self {
        let mut j = Self::zero(order);
        if power < order {
            j.coeffs[power] = c;
        }
        j
    }

    /// Builds a jet from leading coefficients; missing ones are zero and
    /// coefficients at or beyond `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        coeffs.resize(order, Scalar::zero());
        Jet { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| scalar(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Index of the first nonzero coefficient, or `K` for the zero jet.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order())
    }

    fn check(&self, other: &Jet) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let k = self.order();
        let mut out = vec![Scalar::zero(); k];
        let va = self.valuation();
        let vb = other.valuation();
        for i in va..k {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in vb..k - i {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Jet { coeffs: out })
    }

    pub fn scale(&self, c: &Scalar) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `t^power`, dropping what falls off the end.
    pub fn shift_up(&self, power: usize) -> Jet {
        let k = self.order();
        let mut out = vec![Scalar::zero(); k];
        if power < k {
            out[power..].clone_from_slice(&self.coeffs[..k - power]);
        }
        Jet { coeffs: out }
    }

    /// Divides by `t^power`. The top `power` coefficients of the result are
    /// unknown in the model and are filled with zeros.
    pub fn shift_down(&self, power: usize) -> Jet {
        let k = self.order();
        let mut out = vec![Scalar::zero(); k];
        if power < k {
            out[..k - power].clone_from_slice(&self.coeffs[power..]);
        }
        Jet { coeffs: out }
    }

    /// Inverse of a unit, computed by the recursive series division.
    pub fn unit_inverse(&self) -> Result<Jet> {
        let v = self.valuation();
        if v > 0 {
            return Err(Error::NonUnit(v));
        }
        let k = self.order();
        let a0_inv = self.coeffs[0].recip();
        let mut inv = vec![Scalar::zero(); k];
        inv[0] = a0_inv.clone();
        for n in 1..k {
            let mut acc = Scalar::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv[n - i];
                }
            }
            inv[n] = -acc * &a0_inv;
        }
        Ok(Jet { coeffs: inv })
    }

    /// Re-embeds the jet at a larger truncation order by zero padding.
    pub fn extend(&self, order: usize) -> Jet {
        assert!(order >= self.order());
        Jet::from_coeffs(self.coeffs.clone(), order)
    }

    /// Drops every coefficient from `t^order` on.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order >= 1 && order <= self.order());
        Jet {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Evaluation at `t = 0`.
    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (mod t^{})", self.order())
        } else {
            write!(f, "{} (mod t^{})", terms.join(" + "), self.order())
        }
    }
}

// Operator impls panic on mismatched orders; use the `try_*` methods for
// untrusted input.
impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.try_add(rhs).expect("jet orders must agree")
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.try_sub(rhs).expect("jet orders must agree")
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.try_mul(rhs).expect("jet orders must agree")
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_conjugates() {
        let a = Jet::from_ints(&[1, 1], 3);
        let b = Jet::from_ints(&[1, -1], 3);
        assert_eq!(&a * &b, Jet::from_ints(&[1, 0, -1], 3));
    }

    #[test]
    fn truncation_boundary() {
        let k = 4;
        let top = Jet::monomial(scalar(1), k - 1, k);
        let t = Jet::monomial(scalar(1), 1, k);
        assert!((&top * &t).is_zero());
    }

    #[test]
    fn multiplicative_identity() {
        let a = Jet::from_ints(&[3, -2, 7, 5], 4);
        assert_eq!(&a * &Jet::one(4), a);
    }

    #[test]
    fn mismatched_orders() {
        let a = Jet::one(3);
        let b = Jet::one(4);
        assert_eq!(a.try_add(&b), Err(Error::TruncationMismatch(3, 4)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(Jet::from_ints(&[0, 0, 1, 1], 5).valuation(), 2);
        assert_eq!(Jet::zero(5).valuation(), 5);
        assert_eq!(Jet::from_ints(&[3, 1], 5).valuation(), 0);
    }

    #[test]
    fn unit_inverses() {
        let a = Jet::from_ints(&[1, -1], 3);
        assert_eq!(a.unit_inverse().unwrap(), Jet::from_ints(&[1, 1, 1], 3));
        let two = Jet::constant(scalar(2), 2);
        assert_eq!(two.unit_inverse().unwrap(), Jet::constant(ratio(1, 2), 2));
        let t = Jet::monomial(scalar(1), 1, 3);
        assert_eq!(t.unit_inverse(), Err(Error::NonUnit(1)));
    }

    #[test]
    fn scalar_strings() {
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(format_scalar(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&scalar(0)), "0");
        assert_eq!(parse_scalar(" 7 ").unwrap(), scalar(7));
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn shifts() {
        let a = Jet::from_ints(&[1, 2, 3], 4);
        assert_eq!(a.shift_up(2), Jet::from_ints(&[0, 0, 1, 2], 4));
        assert_eq!(a.shift_up(2).shift_down(2), Jet::from_ints(&[1, 2], 4));
    }
}
