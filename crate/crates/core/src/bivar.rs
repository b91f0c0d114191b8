//! Sparse exact bivariate polynomials, the universal output type for the
//! Tutte and coboundary computations.
//!
//! Exponent pairs map to nonzero coefficients; variable names are carried as
//! metadata only and play no role in the arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{Poly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly<T = BigInt> {
    vars: [String; 2],
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> BivarPoly<T> {
    pub fn zero(v0: &str, v1: &str) -> Self {
        BivarPoly {
            vars: [v0.to_string(), v1.to_string()],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(v0: &str, v1: &str, c: T) -> Self {
        let mut p = Self::zero(v0, v1);
        p.add_term(0, 0, c);
        p
    }

    pub fn one(v0: &str, v1: &str) -> Self {
        Self::constant(v0, v1, T::one())
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars[0], &self.vars[1])
    }

    pub fn with_vars(mut self, v0: &str, v1: &str) -> Self {
        self.vars = [v0.to_string(), v1.to_string()];
        self
    }

    /// Iterate terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e0: u32, e1: u32) -> T {
        self.terms.get(&(e0, e1)).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, e0: u32, e1: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((e0, e1)).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(e0, e1));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(e0, e1), c) in &other.terms {
            out.add_term(e0, e1, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(e0, e1), c) in &other.terms {
            out.add_term(e0, e1, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars[0], &self.vars[1]);
        for (&(a0, a1), ca) in &self.terms {
            for (&(b0, b1), cb) in &other.terms {
                out.add_term(a0 + b0, a1 + b1, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &T) -> Self {
        let mut out = Self::zero(&self.vars[0], &self.vars[1]);
        for (&(e0, e1), a) in &self.terms {
            out.add_term(e0, e1, a.clone() * c.clone());
        }
        out
    }

    /// Outer product of two univariate polynomials, placed on the two axes.
    pub fn from_parts(v0: &str, v1: &str, p0: &Poly<T>, p1: &Poly<T>) -> Self {
        let mut out = Self::zero(v0, v1);
        for (i, a) in p0.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in p1.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, a.clone() * b.clone());
            }
        }
        out
    }

    /// Substitute `var0 -> var0^k`, leaving the second variable untouched.
    pub fn stretch_first(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.vars[0], &self.vars[1]);
        for (&(e0, e1), c) in &self.terms {
            out.add_term(e0 * k, e1, c.clone());
        }
        out
    }

    /// Full substitution `var0 -> p0, var1 -> p1` into fresh variables.
    pub fn compose(&self, v0: &str, v1: &str, p0: &Self, p1: &Self) -> Self {
        let d0 = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let d1 = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut pow0 = Vec::with_capacity(d0 + 1);
        let mut pow1 = Vec::with_capacity(d1 + 1);
        pow0.push(Self::one(v0, v1));
        for i in 1..=d0 {
            let next = pow0[i - 1].mul(p0);
            pow0.push(next);
        }
        pow1.push(Self::one(v0, v1));
        for i in 1..=d1 {
            let next = pow1[i - 1].mul(p1);
            pow1.push(next);
        }
        let mut out = Self::zero(v0, v1);
        for (&(e0, e1), c) in &self.terms {
            let term = pow0[e0 as usize].mul(&pow1[e1 as usize]);
            out = out.add(&term.mul_scalar(c));
        }
        out
    }

    /// Substitute univariate polynomials (in a single shared output variable)
    /// for the two variables.
    pub fn eval_univar(&self, p0: &Poly<T>, p1: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (&(e0, e1), c) in &self.terms {
            let term = p0.pow(e0 as usize).mul(&p1.pow(e1 as usize));
            out = out.add(&term.mul_scalar(c));
        }
        out
    }

    pub fn eval(&self, x0: &T, x1: &T) -> T {
        let mut acc = T::zero();
        for (&(e0, e1), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e0 {
                term = term * x0.clone();
            }
            for _ in 0..e1 {
                term = term * x1.clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// Partially evaluate the first variable, leaving a polynomial in the second.
    pub fn eval_first(&self, x0: &T) -> Poly<T> {
        let mut out = Poly::zero();
        for (&(e0, e1), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e0 {
                term = term * x0.clone();
            }
            out = out.add(&Poly::monomial(term, e1 as usize));
        }
        out
    }

    /// Partially evaluate the second variable, leaving a polynomial in the first.
    pub fn eval_second(&self, x1: &T) -> Poly<T> {
        let mut out = Poly::zero();
        for (&(e0, e1), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e1 {
                term = term * x1.clone();
            }
            out = out.add(&Poly::monomial(term, e0 as usize));
        }
        out
    }

    /// Coefficient of `var1^k` as a polynomial in the first variable.
    pub fn second_coeff(&self, k: u32) -> Poly<T> {
        let mut out = Poly::zero();
        for (&(e0, e1), c) in &self.terms {
            if e1 == k {
                out = out.add(&Poly::monomial(c.clone(), e0 as usize));
            }
        }
        out
    }

    pub fn max_second_exponent(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Embed a univariate polynomial onto the second axis.
    pub fn from_second(v0: &str, v1: &str, p: &Poly<T>) -> Self {
        Self::from_parts(v0, v1, &Poly::one(), p)
    }

    /// Exact division by `(var1 - 1)^k`; errors when any step leaves a remainder.
    pub fn div_exact_second_minus_one(&self, k: u32) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..k {
            // Synthetic division by (y - 1) on the second axis: group by the
            // first exponent and divide each fiber, which must vanish at y = 1.
            let mut fibers: BTreeMap<u32, Vec<(u32, T)>> = BTreeMap::new();
            for (&(e0, e1), c) in &cur.terms {
                fibers.entry(e0).or_default().push((e1, c.clone()));
            }
            let mut out = Self::zero(&cur.vars[0], &cur.vars[1]);
            for (e0, terms) in fibers {
                let deg = terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
                let mut dense = vec![T::zero(); deg + 1];
                for (e1, c) in terms {
                    dense[e1 as usize] = c;
                }
                // divide dense(y) by (y - 1)
                let mut rem = T::zero();
                let mut quot = vec![T::zero(); deg];
                for i in (0..=deg).rev() {
                    let c = dense[i].clone() + rem.clone();
                    if i == 0 {
                        rem = c;
                    } else {
                        quot[i - 1] = c.clone();
                        rem = c;
                    }
                }
                if !rem.is_zero() {
                    return Err(Error::InexactDivision(format!(
                        "({}) not divisible by ({} - 1)",
                        cur, cur.vars[1]
                    )));
                }
                for (i, c) in quot.into_iter().enumerate() {
                    out.add_term(e0, i as u32, c);
                }
            }
            cur = out;
        }
        Ok(cur)
    }

    /// Canonical text rendering: monomials in descending lexicographic
    /// exponent order, `*` between factors.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (&(e0, e1), c) in self.terms.iter().rev() {
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
            let mut factors = Vec::new();
            if e0 > 0 {
                factors.push(if e0 == 1 {
                    self.vars[0].clone()
                } else {
                    format!("{}^{}", self.vars[0], e0)
                });
            }
            if e1 > 0 {
                factors.push(if e1 == 1 {
                    self.vars[1].clone()
                } else {
                    format!("{}^{}", self.vars[1], e1)
                });
            }
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    factors.insert(0, mag);
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl BivarPoly<BigInt> {
    /// Check that every stored coefficient is a non-negative integer.
    pub fn coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl<T: Scalar> fmt::Display for BivarPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;
    use num_traits::Zero;

    fn term(p: &mut BivarPoly, e0: u32, e1: u32, c: i64) {
        p.add_term(e0, e1, BigInt::from(c));
    }

    #[test]
    fn add_and_cancel() {
        let mut a = BivarPoly::zero("x", "y");
        term(&mut a, 1, 0, 2);
        term(&mut a, 0, 1, 1);
        let mut b = BivarPoly::zero("x", "y");
        term(&mut b, 1, 0, -2);
        let s = a.add(&b);
        assert_eq!(s.coeff(1, 0), BigInt::zero());
        assert_eq!(s.coeff(0, 1), BigInt::from(1));
        assert_eq!(s.terms().count(), 1);
    }

    #[test]
    fn render_descending_lex() {
        // x^2 + x + y
        let mut p = BivarPoly::zero("x", "y");
        term(&mut p, 2, 0, 1);
        term(&mut p, 1, 0, 1);
        term(&mut p, 0, 1, 1);
        assert_eq!(p.render(), "x^2 + x + y");

        let mut q = BivarPoly::zero("q", "t");
        term(&mut q, 1, 0, 1);
        term(&mut q, 0, 1, 1);
        term(&mut q, 0, 0, -1);
        assert_eq!(q.render(), "q + t - 1");

        let mut r = BivarPoly::zero("q", "t");
        term(&mut r, 1, 1, 3);
        term(&mut r, 2, 0, -1);
        assert_eq!(r.render(), "-q^2 + 3*q*t");
    }

    #[test]
    fn stretch_scales_first_exponents() {
        let mut p = BivarPoly::zero("q", "t");
        term(&mut p, 1, 0, 1);
        term(&mut p, 0, 1, 1);
        let s = p.stretch_first(2);
        assert_eq!(s.coeff(2, 0), BigInt::from(1));
        assert_eq!(s.coeff(0, 1), BigInt::from(1));
    }

    #[test]
    fn exact_division_by_y_minus_one() {
        // (y - 1) * (x + y) = x*y - x + y^2 - y
        let mut f = BivarPoly::zero("x", "y");
        term(&mut f, 1, 1, 1);
        term(&mut f, 1, 0, -1);
        term(&mut f, 0, 2, 1);
        term(&mut f, 0, 1, -1);
        let q = f.div_exact_second_minus_one(1).unwrap();
        let mut expect = BivarPoly::zero("x", "y");
        term(&mut expect, 1, 0, 1);
        term(&mut expect, 0, 1, 1);
        assert_eq!(q, expect);

        let mut bad = BivarPoly::zero("x", "y");
        term(&mut bad, 0, 0, 1);
        assert!(bad.div_exact_second_minus_one(1).is_err());
    }

    #[test]
    fn eval_univar_substitution() {
        // p = x^2 + y, substitute x -> 1 - q, y -> 0
        let mut p = BivarPoly::zero("x", "y");
        term(&mut p, 2, 0, 1);
        term(&mut p, 0, 1, 1);
        let got = p.eval_univar(&IntPoly::from_i64(&[1, -1]), &IntPoly::zero());
        assert_eq!(got, IntPoly::from_i64(&[1, -2, 1]));
    }
}
