//! Dense univariate polynomials over an exact scalar ring.
//!
//! The representation is scalar-generic so the same arithmetic serves
//! integer polynomials (`IntPoly`) and rational ones (`RatPoly`, used for
//! number-field reduction and Lagrange interpolation). Coefficients are
//! stored low degree first with no trailing zeros.

use std::fmt;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact commutative-ring scalar: the bounds every coefficient type must meet.
pub trait Scalar:
    Clone + Eq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + fmt::Display
{
}

impl<T> Scalar for T where
    T: Clone + Eq + Zero + One + Neg<Output = T> + Sub<Output = T> + fmt::Display
{
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of degree `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T = BigInt> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of degree `k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = t + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn mul_scalar(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by a monic divisor; errors if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InexactDivision("division by zero polynomial".into()))?;
        if !divisor.coeffs[dd].is_one() {
            return Err(Error::InexactDivision("divisor is not monic".into()));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.iter().all(Zero::is_zero) {
                Ok(Self::zero())
            } else {
                Err(Error::InexactDivision(format!("{} % {}", self, divisor)))
            };
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![T::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = std::mem::replace(&mut rem[i + dd], T::zero());
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate().take(dd) {
                let t = std::mem::replace(&mut rem[i + j], T::zero());
                rem[i + j] = t - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Ok(Self::new(quot))
        } else {
            Err(Error::InexactDivision(format!("{} % {}", self, divisor)))
        }
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Render with a named variable, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (negative, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = mag == "1";
            match (k, unit) {
                (0, _) => out.push_str(&mag),
                (_, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(var);
                }
                (_, true) => out.push_str(var),
            }
            if k > 1 {
                out.push_str(&format!("^{}", k));
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Divide every coefficient by `d`, failing if any division is inexact.
    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = num_integer::Integer::div_rem(c, d);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{} / {}", c, d)));
            }
            out.push(q);
        }
        Ok(Self::new(out))
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl RatPoly {
    pub fn from_coeffs_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Euclidean division over the rationals: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), Self::new(rem));
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = std::mem::replace(&mut rem[i + dd], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            let f = c / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate().take(dd) {
                let t = std::mem::replace(&mut rem[i + j], BigRational::zero());
                rem[i + j] = t - f.clone() * d.clone();
            }
            quot[i] = f;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        (r0, s0, t0)
    }

    /// True when every coefficient has denominator one.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn to_integer(&self) -> Result<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return Err(Error::NonIntegerInterpolation(c.to_string()));
            }
            out.push(c.numer().clone());
        }
        Ok(IntPoly::new(out))
    }
}
