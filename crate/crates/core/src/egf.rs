//! Truncated exponential generating functions with integer-polynomial
//! coefficients, and checkers for the classical product identities these
//! coboundary families satisfy.
//!
//! A series is the list `u_0 .. u_N` of coefficients of `x^n / n!`; products
//! use the binomial convolution. The polynomial variable `q` is always a
//! concrete integer here, since exponents like `(q - 1) / 2` only make sense
//! for concrete values; identities in a symbolic q are checked by running at
//! two or more values.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{family_a, family_b, family_d, family_g, family_i, Arrangement};
use crate::cyclotomic::RingSpec;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::symmetric::{
    braid_equations, coboundary_closed_form, g_equations, type_b_equations, type_d_equations,
    type_i_equations, RepEquation, Symmetry,
};

/// Order-N truncated EGF with exact integer-polynomial terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: Vec<IntPoly>,
}

fn big_binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl TruncatedSeries {
    pub fn new(terms: Vec<IntPoly>) -> Self {
        assert!(!terms.is_empty(), "a truncated series has order >= 0");
        TruncatedSeries { terms }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> IntPoly) -> Self {
        TruncatedSeries {
            terms: (0..=order).map(f).collect(),
        }
    }

    /// The multiplicative identity `1 + 0 x + ...`.
    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { IntPoly::one() } else { IntPoly::zero() })
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, n: usize) -> &IntPoly {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[IntPoly] {
        &self.terms
    }

    /// Binomial convolution: `u_n = sum of binom(n, i) a_i b_(n-i)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::InvalidParameter(format!(
                "series order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = IntPoly::zero();
            for i in 0..=n {
                let prod = self.terms[i].mul(&other.terms[n - i]);
                acc = acc.add(&prod.mul_scalar(&big_binom(n, i)));
            }
            out.push(acc);
        }
        Ok(TruncatedSeries { terms: out })
    }

    /// Repeated product by squaring; `k = 0` gives the identity series.
    pub fn pow(&self, k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("orders match");
            }
            base = base.mul(&base).expect("orders match");
            k >>= 1;
        }
        acc
    }
}

fn choose2(n: usize) -> usize {
    n.saturating_sub(1) * n / 2
}

fn t_power(e: usize) -> IntPoly {
    IntPoly::monomial(BigInt::one(), e)
}

/// `sum of t^binom(n,2) x^n/n!`.
pub fn series_t_choose2(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| t_power(choose2(n)))
}

/// `sum of c^n t^binom(n,2) x^n/n!`.
pub fn series_scaled_t_choose2(order: usize, c: u64) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        t_power(choose2(n)).mul_scalar(&BigInt::from(c).pow(n as u32))
    })
}

/// `sum of t^(n^2) x^n/n!`.
pub fn series_t_square(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| t_power(n * n))
}

/// `sum of t^(n(n-1)) x^n/n!`.
pub fn series_t_nn1(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| t_power(2 * choose2(n)))
}

/// `sum of t^(n + m binom(n,2)) x^n/n!`.
pub fn series_t_linear_choose2(order: usize, m: u32) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| t_power(n + m as usize * choose2(n)))
}

/// `sum of t^(m binom(n,2)) x^n/n!`.
pub fn series_t_m_choose2(order: usize, m: u32) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| t_power(m as usize * choose2(n)))
}

/// Two-part blocks `sum over a+b=n of binom(n,a) t^(a+b+ab)` resp. `t^(ab)`.
pub fn series_block_pair(order: usize, affine: bool) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        let mut acc = IntPoly::zero();
        for a in 0..=n {
            let b = n - a;
            let e = if affine { a + b + a * b } else { a * b };
            acc = acc.add(&t_power(e).mul_scalar(&big_binom(n, a)));
        }
        acc
    })
}

/// The named product identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// Braid family: `(sum t^binom(n,2) x^n/n!)^q`.
    BraidA,
    /// Type B: `(sum t^(n^2)) (sum 2^n t^binom(n,2))^((q-1)/2)`.
    TypeB,
    /// Type D: `(sum t^(n(n-1))) (sum 2^n t^binom(n,2))^((q-1)/2)`.
    TypeD,
    /// The 0/1/sum-to-1 family, with the `(q-3)/2` exponent.
    TypeI,
    /// G(m, p, n) with coordinate hyperplanes, exponent `(|R|-1)/m`.
    Gmpn,
    /// G(m, m, n), exponent `(|R|-1)/m`.
    Gmmn,
}

impl Identity {
    pub fn parse(name: &str) -> Option<Identity> {
        match name {
            "A" => Some(Identity::BraidA),
            "B" => Some(Identity::TypeB),
            "D" => Some(Identity::TypeD),
            "In" | "I" => Some(Identity::TypeI),
            "Gmpn" => Some(Identity::Gmpn),
            "Gmmn" => Some(Identity::Gmmn),
            _ => None,
        }
    }
}

/// Concrete parameters for an identity check. For the classical families
/// `ring_size == q`; for the G identities `ring_size` is the size of the
/// finite coefficient ring standing in for `q^(l_m)`.
#[derive(Debug, Clone, Copy)]
pub struct EgfParams {
    pub q: u64,
    pub m: u32,
    pub p: u32,
    pub ring_size: u64,
}

impl EgfParams {
    pub fn classical(q: u64) -> Self {
        EgfParams {
            q,
            m: 1,
            p: 1,
            ring_size: q,
        }
    }

    pub fn colored(m: u32, p: u32, ring_size: u64) -> Self {
        EgfParams {
            q: ring_size,
            m,
            p,
            ring_size,
        }
    }
}

/// Build the right-hand side product of a named identity, truncated at the
/// given order. Fails when an exponent such as `(q-1)/2` or `(|R|-1)/m` is
/// not a non-negative integer for these parameters.
pub fn build_named_rhs(identity: Identity, params: &EgfParams, order: usize) -> Result<TruncatedSeries> {
    let q = params.q;
    match identity {
        Identity::BraidA => Ok(series_t_choose2(order).pow(q)),
        Identity::TypeB | Identity::TypeD => {
            if q < 1 || q.is_multiple_of(2) {
                return Err(Error::InvalidParameter(format!(
                    "exponent (q-1)/2 needs odd q, got {}",
                    q
                )));
            }
            let head = match identity {
                Identity::TypeB => series_t_square(order),
                _ => series_t_nn1(order),
            };
            head.mul(&series_scaled_t_choose2(order, 2).pow((q - 1) / 2))
        }
        Identity::TypeI => {
            if q < 3 || q.is_multiple_of(2) {
                return Err(Error::InvalidParameter(format!(
                    "exponent (q-3)/2 needs odd q >= 3, got {}",
                    q
                )));
            }
            series_t_choose2(order)
                .mul(&series_block_pair(order, true))?
                .mul(&series_block_pair(order, false).pow((q - 3) / 2))
        }
        Identity::Gmpn | Identity::Gmmn => {
            let m = params.m;
            let size = params.ring_size;
            if m == 0 || !(size - 1).is_multiple_of(m as u64) {
                return Err(Error::InvalidParameter(format!(
                    "exponent (|R|-1)/m needs m | |R|-1, got |R| = {}, m = {}",
                    size, m
                )));
            }
            let head = match identity {
                Identity::Gmpn => series_t_linear_choose2(order, m),
                _ => series_t_m_choose2(order, m),
            };
            head.mul(&series_scaled_t_choose2(order, m as u64).pow((size - 1) / m as u64))
        }
    }
}

/// Where the left-hand side coefficients come from.
#[derive(Debug, Clone)]
pub enum LhsSource {
    /// Brute-force subset sums over each family instance.
    Definition,
    /// The multinomial closed form over the given ring.
    ClosedForm(RingSpec),
}

/// One row of an identity check: the n-th EGF coefficient from arrangements
/// versus the built product.
#[derive(Debug, Clone)]
pub struct EgfEntry {
    pub n: usize,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
}

impl EgfEntry {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct EgfReport {
    pub identity: Identity,
    pub entries: Vec<EgfEntry>,
}

impl EgfReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(EgfEntry::equal)
    }
}

fn identity_arrangement(identity: Identity, params: &EgfParams, n: usize) -> Result<Arrangement> {
    let m = match identity {
        Identity::Gmpn | Identity::Gmmn => params.m,
        _ => 1,
    };
    if n == 0 {
        return Ok(Arrangement::empty(m, 0));
    }
    match identity {
        Identity::BraidA => family_a(n),
        Identity::TypeB => family_b(n),
        Identity::TypeD => family_d(n),
        Identity::TypeI => family_i(n),
        Identity::Gmpn => family_g(params.m, params.p, n),
        Identity::Gmmn => family_g(params.m, params.m, n),
    }
}

fn identity_equations(identity: Identity, params: &EgfParams) -> Result<Vec<RepEquation>> {
    Ok(match identity {
        Identity::BraidA => braid_equations(),
        Identity::TypeB => type_b_equations(),
        Identity::TypeD => type_d_equations(),
        Identity::TypeI => type_i_equations(),
        Identity::Gmpn => g_equations(params.m, params.p)?,
        Identity::Gmmn => g_equations(params.m, params.m)?,
    })
}

fn identity_symmetry(identity: Identity) -> Symmetry {
    match identity {
        Identity::Gmpn | Identity::Gmmn => Symmetry::Colored,
        _ => Symmetry::Plain,
    }
}

/// Check a named identity coefficient by coefficient up to the order.
///
/// The n-th left-hand side is `|R|^(n - r) * coboundary(|R|, t)` for the
/// family instance in C^n (the degenerate small-n instances included), which
/// is exactly the n-th coefficient of the product on the right.
pub fn egf_check(
    identity: Identity,
    params: &EgfParams,
    order: usize,
    source: &LhsSource,
) -> Result<EgfReport> {
    if matches!(identity, Identity::Gmpn) && params.p == params.m {
        return Err(Error::InvalidParameter(
            "the Gmpn identity needs p < m; use Gmmn for p = m".into(),
        ));
    }
    if let LhsSource::ClosedForm(spec) = source {
        if spec.size() != params.ring_size {
            return Err(Error::InvalidParameter(format!(
                "closed-form ring size {} differs from the identity's {}",
                spec.size(),
                params.ring_size
            )));
        }
    }
    let rhs_series = build_named_rhs(identity, params, order)?;
    let node = BigInt::from(params.ring_size);
    let mut entries = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let arr = identity_arrangement(identity, params, n)?;
        let rank = arr.rank();
        let prefactor = node.pow((n - rank) as u32);
        let lhs = match source {
            LhsSource::Definition => arr
                .coboundary()
                .eval_first(&node)
                .mul_scalar(&prefactor),
            LhsSource::ClosedForm(spec) => {
                let eqs = identity_equations(identity, params)?;
                coboundary_closed_form(&eqs, n, spec, identity_symmetry(identity), rank)?
                    .mul_scalar(&prefactor)
            }
        };
        entries.push(EgfEntry {
            n,
            lhs,
            rhs: rhs_series.term(n).clone(),
        });
    }
    Ok(EgfReport { identity, entries })
}
