//! Arithmetic in `Z[zeta_m]`, its canonical number-field model Q(zeta_m), and
//! the finite coefficient rings obtained by reduction mod q.
//!
//! Elements of `Z[zeta_m]` are stored on the spanning set 1, w, ..., w^{l-1}
//! where `w` is a primitive m-th root of unity and `l` is `m` for odd `m`,
//! `m/2` for even `m`. Products fold exponents through `w^m = 1` (odd) or
//! `w^{m/2} = -1` (even). For odd m > 2 this spanning set carries Z-linear
//! relations (e.g. `1 + w + w^2 = 0` for m = 3), so zero tests and rank
//! computations are routed through [`NumberField`], the canonical quotient
//! `Q[x]/(Phi_m)`.
//!
//! Two finite backends realize "reduction mod q":
//!
//! * [`RingSpec::Spanning`]: coordinates reduced into F_q, i.e. the ring
//!   `F_q[x]/(x^m - 1)` or `F_q[x]/(x^{m/2} + 1)`, with q^l elements. This ring
//!   has zero divisors for many (m, q), which downstream engines detect and
//!   report rather than paper over.
//! * [`RingSpec::PrimeField`]: q = 1 (mod m) and `w` is sent to an element of
//!   F_q of multiplicative order m, so the ring is F_q itself.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

/// Dimension of the spanning set of `Z[zeta_m]`: `m` when odd, `m/2` when even.
pub fn l_of(m: u32) -> Result<usize> {
    if m == 0 {
        return Err(Error::InvalidOrder);
    }
    Ok(if m % 2 == 1 { m as usize } else { m as usize / 2 })
}

/// Element of `Z[zeta_m]` as integer coordinates on 1, w, ..., w^{l-1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    m: u32,
    coords: Vec<BigInt>,
}

impl CycElem {
    pub fn new(m: u32, coords: Vec<BigInt>) -> Result<Self> {
        let l = l_of(m)?;
        if coords.len() != l {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates for m = {}, got {}",
                l,
                m,
                coords.len()
            )));
        }
        Ok(CycElem { m, coords })
    }

    pub fn from_i64(m: u32, coords: &[i64]) -> Result<Self> {
        Self::new(m, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(m: u32) -> Self {
        let l = l_of(m).expect("valid order");
        CycElem {
            m,
            coords: vec![BigInt::zero(); l],
        }
    }

    pub fn integer(m: u32, k: i64) -> Self {
        let mut e = Self::zero(m);
        e.coords[0] = BigInt::from(k);
        e
    }

    pub fn one(m: u32) -> Self {
        Self::integer(m, 1)
    }

    /// The root of unity w^k as an element, with exponent folding applied.
    pub fn zeta_pow(m: u32, k: u32) -> Self {
        let l = l_of(m).expect("valid order");
        let mut e = Self::zero(m);
        let k = (k % m) as usize;
        if k < l {
            e.coords[k] = BigInt::one();
        } else {
            // even m only: w^k = -w^{k - m/2}
            e.coords[k - l] = -BigInt::one();
        }
        e
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Literal coordinate zero test; see [`NumberField`] for the canonical one.
    pub fn is_coord_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::IncompatibleRing(self.m, other.m));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(CycElem {
            m: self.m,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycElem {
            m: self.m,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Product with exponent folding: w^{i+j} reduces through w^m = 1 for odd
    /// m and w^{m/2} = -1 for even m.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let l = self.coords.len();
        let mut out = vec![BigInt::zero(); l];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = i + j;
                let prod = a * b;
                if e < l {
                    out[e] += prod;
                } else if self.m % 2 == 1 {
                    out[e - l] += prod;
                } else {
                    out[e - l] -= prod;
                }
            }
        }
        Ok(CycElem {
            m: self.m,
            coords: out,
        })
    }

    /// Reduce every coordinate to its canonical residue in [0, q).
    pub fn reduce_mod_q(&self, q: u64) -> Self {
        let qq = BigInt::from(q);
        CycElem {
            m: self.m,
            coords: self.coords.iter().map(|c| c.mod_floor(&qq)).collect(),
        }
    }

    /// Image in the canonical field `Q[x]/(Phi_m)`.
    pub fn to_number_field(&self) -> NfElem {
        NumberField::new(self.m).from_cyc(self)
    }

    pub fn max_abs_coord(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for CycElem {
    /// Renders as `c0 + c1*w + c2*w^2 + ...`, skipping zero coordinates.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_coord_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
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
            if k == 0 {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push('w');
                if k > 1 {
                    out.push_str(&format!("^{}", k));
                }
            }
        }
        write!(f, "{}", out)
    }
}

/// The m-th cyclotomic polynomial via the divisor recursion
/// `Phi_m(x) = (x^m - 1) / prod_{d | m, d < m} Phi_d(x)`, with exact division.
pub fn cyclotomic_polynomial(m: u32) -> IntPoly {
    assert!(m >= 1, "order must be positive");
    let mut memo: HashMap<u32, IntPoly> = HashMap::new();
    fn go(m: u32, memo: &mut HashMap<u32, IntPoly>) -> IntPoly {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        // x^m - 1
        let mut num = IntPoly::monomial(BigInt::one(), m as usize);
        num = num.sub(&IntPoly::one());
        for d in 1..m {
            if m.is_multiple_of(d) {
                let phi_d = go(d, memo);
                num = num.div_exact_monic(&phi_d).expect("cyclotomic recursion");
            }
        }
        memo.insert(m, num.clone());
        num
    }
    go(m, &mut memo)
}

/// Canonical model `Q[x]/(Phi_m)` of the cyclotomic field, used wherever zero
/// tests and ranks must be decidable.
#[derive(Debug, Clone)]
pub struct NumberField {
    m: u32,
    modulus: RatPoly,
    degree: usize,
}

/// Element of Q(zeta_m): a rational polynomial reduced mod Phi_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfElem {
    m: u32,
    rep: RatPoly,
}

impl NfElem {
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Stable comparison key (numerator/denominator pairs of the reduced rep).
    pub fn key(&self) -> Vec<(BigInt, BigInt)> {
        self.rep
            .coeffs()
            .iter()
            .map(|c| (c.numer().clone(), c.denom().clone()))
            .collect()
    }
}

impl NumberField {
    pub fn new(m: u32) -> Self {
        let modulus = cyclotomic_polynomial(m).to_rational();
        let degree = modulus.degree().expect("cyclotomic polynomial is nonzero");
        NumberField { m, modulus, degree }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> NfElem {
        NfElem {
            m: self.m,
            rep: RatPoly::zero(),
        }
    }

    pub fn one(&self) -> NfElem {
        NfElem {
            m: self.m,
            rep: RatPoly::one(),
        }
    }

    fn reduce(&self, p: RatPoly) -> NfElem {
        NfElem {
            m: self.m,
            rep: p.rem(&self.modulus),
        }
    }

    /// Ring homomorphism from the spanning representation: x maps to x.
    pub fn from_cyc(&self, e: &CycElem) -> NfElem {
        assert_eq!(e.order(), self.m, "mixed cyclotomic orders");
        let p = RatPoly::new(
            e.coords()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        self.reduce(p)
    }

    pub fn from_rational(&self, r: BigRational) -> NfElem {
        self.reduce(RatPoly::constant(r))
    }

    pub fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem {
            m: self.m,
            rep: a.rep.add(&b.rep),
        }
    }

    pub fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem {
            m: self.m,
            rep: a.rep.sub(&b.rep),
        }
    }

    pub fn neg(&self, a: &NfElem) -> NfElem {
        NfElem {
            m: self.m,
            rep: a.rep.neg(),
        }
    }

    pub fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.reduce(a.rep.mul(&b.rep))
    }

    /// Multiplicative inverse; Phi_m is irreducible over Q so every nonzero
    /// element is invertible.
    pub fn inv(&self, a: &NfElem) -> NfElem {
        assert!(!a.is_zero(), "inverse of zero in Q(zeta_m)");
        let (g, s, _) = a.rep.xgcd(&self.modulus);
        // g is a nonzero constant
        let c = g.coeff(0);
        let inv_c = BigRational::one() / c;
        self.reduce(s.mul_scalar(&inv_c))
    }

    pub fn div(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.mul(a, &self.inv(b))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest element of F_q of multiplicative order exactly m, if any.
fn find_order_m_element(m: u32, q: u64) -> Option<u64> {
    if !(q - 1).is_multiple_of(m as u64) {
        return None;
    }
    if m == 1 {
        return Some(1);
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u128;
        let mut bb = b as u128 % q as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % q as u128;
            }
            bb = bb * bb % q as u128;
            e >>= 1;
        }
        b = acc as u64;
        b
    };
    'outer: for g in 2..q {
        if pow(g, m as u64) != 1 {
            continue;
        }
        for d in 1..m {
            if m.is_multiple_of(d) && pow(g, d as u64) == 1 {
                continue 'outer;
            }
        }
        return Some(g);
    }
    None
}

/// Choice of finite coefficient ring for the point-counting method.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Coordinatewise reduction: `F_q[x]/(x^m - 1)` or `F_q[x]/(x^{m/2} + 1)`.
    Spanning { m: u32, q: u64 },
    /// F_q with zeta_m realized as an order-m element of the multiplicative group.
    PrimeField { m: u32, q: u64, zeta: u64 },
}

impl RingSpec {
    pub fn spanning(m: u32, q: u64) -> Result<Self> {
        l_of(m)?;
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("{} is not prime", q)));
        }
        Ok(RingSpec::Spanning { m, q })
    }

    pub fn prime_field(m: u32, q: u64) -> Result<Self> {
        l_of(m)?;
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("{} is not prime", q)));
        }
        let zeta = find_order_m_element(m, q).ok_or(Error::NoPrimitiveRoot { m, q })?;
        Ok(RingSpec::PrimeField { m, q, zeta })
    }

    pub fn m(&self) -> u32 {
        match self {
            RingSpec::Spanning { m, .. } | RingSpec::PrimeField { m, .. } => *m,
        }
    }

    pub fn q(&self) -> u64 {
        match self {
            RingSpec::Spanning { q, .. } | RingSpec::PrimeField { q, .. } => *q,
        }
    }

    /// Number of stored coordinates per element.
    pub fn width(&self) -> usize {
        match self {
            RingSpec::Spanning { m, .. } => l_of(*m).expect("valid order"),
            RingSpec::PrimeField { .. } => 1,
        }
    }

    /// Element count: q^{l_m} for the literal ring, q for the prime field.
    pub fn size(&self) -> u64 {
        let q = self.q();
        (0..self.width()).fold(1u64, |acc, _| {
            acc.checked_mul(q).expect("ring size fits u64")
        })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Spanning { m, q } => {
                let l = l_of(*m).expect("valid order");
                if l == 1 {
                    write!(f, "F_{}", q)
                } else if m % 2 == 1 {
                    write!(f, "F_{}[w]/(w^{} - 1)", q, m)
                } else {
                    write!(f, "F_{}[w]/(w^{} + 1)", q, l)
                }
            }
            RingSpec::PrimeField { m, q, zeta } => {
                write!(f, "F_{} (zeta_{} = {})", q, m, zeta)
            }
        }
    }
}

const TABLE_LIMIT: u64 = 2048;

/// Concrete arithmetic context for a [`RingSpec`].
///
/// Elements are addressed by index in `0..size`; for the literal backend the
/// index is the little-endian base-q encoding of the coordinates. Small rings
/// get dense operation tables since point counting is the hot path.
#[derive(Debug, Clone)]
pub struct RingCtx {
    spec: RingSpec,
    size: u64,
    width: usize,
    q: u64,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    neg_table: Option<Vec<u32>>,
    units: Vec<u64>,
    star_table: Option<Vec<u32>>,
}

impl RingCtx {
    pub fn new(spec: &RingSpec) -> Self {
        let size = spec.size();
        let width = spec.width();
        let q = spec.q();
        let mut ctx = RingCtx {
            spec: spec.clone(),
            size,
            width,
            q,
            add_table: None,
            mul_table: None,
            neg_table: None,
            units: Vec::new(),
            star_table: None,
        };
        if size <= TABLE_LIMIT {
            let n = size as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            let mut neg = vec![0u32; n];
            for a in 0..size {
                neg[a as usize] = ctx.neg_raw(a) as u32;
                for b in a..size {
                    let s = ctx.add_raw(a, b) as u32;
                    let p = ctx.mul_raw(a, b) as u32;
                    add[(a * size + b) as usize] = s;
                    add[(b * size + a) as usize] = s;
                    mul[(a * size + b) as usize] = p;
                    mul[(b * size + a) as usize] = p;
                }
            }
            ctx.add_table = Some(add);
            ctx.mul_table = Some(mul);
            ctx.neg_table = Some(neg);
        }
        ctx.units = ctx.compute_units();
        if size <= TABLE_LIMIT {
            let mut star = vec![0u32; size as usize];
            for a in 0..size {
                star[a as usize] = ctx.star_class_raw(a) as u32;
            }
            ctx.star_table = Some(star);
        }
        ctx
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        match &self.spec {
            RingSpec::Spanning { .. } => 1,
            RingSpec::PrimeField { .. } => 1 % self.q,
        }
    }

    pub fn is_zero(&self, a: u64) -> bool {
        a == 0
    }

    fn idx_to_digits(&self, mut a: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.width];
        for slot in d.iter_mut() {
            *slot = a % self.q;
            a /= self.q;
        }
        d
    }

    fn digits_to_idx(&self, d: &[u64]) -> u64 {
        let mut acc = 0u64;
        for &c in d.iter().rev() {
            acc = acc * self.q + c;
        }
        acc
    }

    fn add_raw(&self, a: u64, b: u64) -> u64 {
        match &self.spec {
            RingSpec::PrimeField { .. } => (a + b) % self.q,
            RingSpec::Spanning { .. } => {
                let da = self.idx_to_digits(a);
                let db = self.idx_to_digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.q).collect();
                self.digits_to_idx(&sum)
            }
        }
    }

    fn neg_raw(&self, a: u64) -> u64 {
        match &self.spec {
            RingSpec::PrimeField { .. } => (self.q - a % self.q) % self.q,
            RingSpec::Spanning { .. } => {
                let da = self.idx_to_digits(a);
                let neg: Vec<u64> = da.iter().map(|x| (self.q - x) % self.q).collect();
                self.digits_to_idx(&neg)
            }
        }
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        match &self.spec {
            RingSpec::PrimeField { .. } => (a as u128 * b as u128 % self.q as u128) as u64,
            RingSpec::Spanning { m, .. } => {
                let da = self.idx_to_digits(a);
                let db = self.idx_to_digits(b);
                let l = self.width;
                let qq = self.q as u128;
                let mut acc = vec![0i128; l];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        if y == 0 {
                            continue;
                        }
                        let prod = (x as u128 * y as u128 % qq) as i128;
                        let e = i + j;
                        if e < l {
                            acc[e] += prod;
                        } else if m % 2 == 1 {
                            acc[e - l] += prod;
                        } else {
                            acc[e - l] -= prod;
                        }
                    }
                }
                let out: Vec<u64> = acc
                    .iter()
                    .map(|&v| (v.rem_euclid(self.q as i128)) as u64)
                    .collect();
                self.digits_to_idx(&out)
            }
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.add_table {
            Some(t) => t[(a * self.size + b) as usize] as u64,
            None => self.add_raw(a, b),
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.mul_table {
            Some(t) => t[(a * self.size + b) as usize] as u64,
            None => self.mul_raw(a, b),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.neg_table {
            Some(t) => t[a as usize] as u64,
            None => self.neg_raw(a),
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Brute-force multiplicative inverse; `None` when `a` is not a unit.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        let one = self.one();
        (0..self.size).find(|&b| self.mul(a, b) == one)
    }

    /// Reduce an exact element into this ring.
    pub fn from_cyc(&self, e: &CycElem) -> Result<u64> {
        if e.order() != self.spec.m() {
            return Err(Error::IncompatibleRing(e.order(), self.spec.m()));
        }
        let qq = BigInt::from(self.q);
        match &self.spec {
            RingSpec::Spanning { .. } => {
                let digits: Vec<u64> = e
                    .coords()
                    .iter()
                    .map(|c| c.mod_floor(&qq).to_u64().expect("residue fits u64"))
                    .collect();
                Ok(self.digits_to_idx(&digits))
            }
            RingSpec::PrimeField { zeta, .. } => {
                // Horner in zeta over F_q
                let mut acc = BigInt::zero();
                let z = BigInt::from(*zeta);
                for c in e.coords().iter().rev() {
                    acc = (acc * &z + c).mod_floor(&qq);
                }
                Ok(acc.to_u64().expect("residue fits u64"))
            }
        }
    }

    /// Exact preimage with coordinates in [0, q); inverse of enumeration order.
    pub fn to_cyc(&self, a: u64) -> CycElem {
        let m = self.spec.m();
        let l = l_of(m).expect("valid order");
        match &self.spec {
            RingSpec::Spanning { .. } => {
                let digits = self.idx_to_digits(a);
                CycElem::new(m, digits.iter().map(|&d| BigInt::from(d)).collect())
                    .expect("digit count matches")
            }
            RingSpec::PrimeField { .. } => {
                let mut coords = vec![BigInt::zero(); l];
                coords[0] = BigInt::from(a);
                CycElem::new(m, coords).expect("constant embeds")
            }
        }
    }

    /// Image of w in this ring.
    pub fn zeta(&self) -> u64 {
        match &self.spec {
            RingSpec::PrimeField { zeta, .. } => *zeta,
            RingSpec::Spanning { m, .. } => match *m {
                1 => self.one(),
                2 => self.neg(self.one()),
                _ => self.q, // digit 1 in position 1
            },
        }
    }

    fn compute_units(&self) -> Vec<u64> {
        let z = self.zeta();
        let mut units = Vec::new();
        let mut cur = self.one();
        for _ in 0..self.spec.m() {
            if !units.contains(&cur) {
                units.push(cur);
            }
            cur = self.mul_raw(cur, z);
        }
        units
    }

    /// The group U_m as ring elements (distinct powers of zeta).
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    fn star_class_raw(&self, a: u64) -> u64 {
        self.units
            .iter()
            .map(|&u| self.mul_raw(u, a))
            .min()
            .expect("units nonempty")
    }

    /// Canonical representative (the least element) of the U_m-orbit of `a`.
    pub fn star_class(&self, a: u64) -> u64 {
        match &self.star_table {
            Some(t) => t[a as usize] as u64,
            None => self.star_class_raw(a),
        }
    }

    /// Distinct elements of the U_m-orbit of `a`.
    pub fn orbit(&self, a: u64) -> Vec<u64> {
        let mut orb: Vec<u64> = self.units.iter().map(|&u| self.mul(u, a)).collect();
        orb.sort_unstable();
        orb.dedup();
        orb
    }

    /// Sorted canonical representatives of all U_m-orbits.
    pub fn star_classes(&self) -> Vec<u64> {
        let mut cls: Vec<u64> = (0..self.size).map(|a| self.star_class(a)).collect();
        cls.sort_unstable();
        cls.dedup();
        cls
    }
}

/// Every element of the ring exactly once, in enumeration order.
pub fn enumerate_ring(spec: &RingSpec) -> impl Iterator<Item = CycElem> {
    let ctx = RingCtx::new(spec);
    (0..ctx.size()).map(move |a| ctx.to_cyc(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_of_matches_parity_rule() {
        assert_eq!(l_of(3).unwrap(), 3);
        assert_eq!(l_of(4).unwrap(), 2);
        assert_eq!(l_of(1).unwrap(), 1);
        assert_eq!(l_of(2).unwrap(), 1);
        assert_eq!(l_of(6).unwrap(), 3);
        assert_eq!(l_of(0), Err(Error::InvalidOrder));
    }

    #[test]
    fn multiplication_folds_exponents() {
        // m = 4: w * w = -1
        let w = CycElem::from_i64(4, &[0, 1]).unwrap();
        assert_eq!(
            w.checked_mul(&w).unwrap(),
            CycElem::from_i64(4, &[-1, 0]).unwrap()
        );
        // m = 3: w^2 * w^2 = w
        let w2 = CycElem::from_i64(3, &[0, 0, 1]).unwrap();
        assert_eq!(
            w2.checked_mul(&w2).unwrap(),
            CycElem::from_i64(3, &[0, 1, 0]).unwrap()
        );
        // identity
        let a = CycElem::from_i64(6, &[3, -1, 2]).unwrap();
        assert_eq!(a.checked_mul(&CycElem::one(6)).unwrap(), a);
    }

    #[test]
    fn addition_is_coordinatewise() {
        let a = CycElem::from_i64(4, &[1, 0]).unwrap();
        let b = CycElem::from_i64(4, &[0, 1]).unwrap();
        assert_eq!(
            a.checked_add(&b).unwrap(),
            CycElem::from_i64(4, &[1, 1]).unwrap()
        );
        let c = CycElem::from_i64(3, &[2, -1, 0]).unwrap();
        assert!(c.checked_add(&c.neg()).unwrap().is_coord_zero());
        assert_eq!(
            a.checked_add(&CycElem::zero(4)).unwrap(),
            a,
            "additive identity"
        );
    }

    #[test]
    fn small_orders_are_plain_integer_arithmetic() {
        // for m in {1, 2} the single coordinate is an ordinary integer
        for m in [1u32, 2] {
            for a in -4i64..=4 {
                for b in -4i64..=4 {
                    let x = CycElem::from_i64(m, &[a]).unwrap();
                    let y = CycElem::from_i64(m, &[b]).unwrap();
                    assert_eq!(
                        x.checked_mul(&y).unwrap(),
                        CycElem::from_i64(m, &[a * b]).unwrap()
                    );
                    assert_eq!(
                        x.checked_add(&y).unwrap(),
                        CycElem::from_i64(m, &[a + b]).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = CycElem::one(3);
        let b = CycElem::one(4);
        assert_eq!(a.checked_add(&b), Err(Error::IncompatibleRing(3, 4)));
        assert_eq!(a.checked_mul(&b), Err(Error::IncompatibleRing(3, 4)));
    }

    #[test]
    fn reduction_gives_canonical_residues() {
        let a = CycElem::from_i64(4, &[7, -1]).unwrap();
        assert_eq!(a.reduce_mod_q(5), CycElem::from_i64(4, &[2, 4]).unwrap());
        let b = CycElem::from_i64(3, &[10, -5, 0]).unwrap();
        assert!(b.reduce_mod_q(5).is_coord_zero());
        let c = CycElem::from_i64(4, &[2, 3]).unwrap();
        assert_eq!(c.reduce_mod_q(7), c);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn number_field_kills_spanning_relations() {
        // 1 + w + w^2 = 0 for m = 3
        let a = CycElem::from_i64(3, &[1, 1, 1]).unwrap();
        assert!(a.to_number_field().is_zero());
        let w = CycElem::from_i64(4, &[0, 1]).unwrap();
        assert_eq!(w.to_number_field().rep(), &RatPoly::from_coeffs_i64(&[0, 1]));
        let k = CycElem::from_i64(1, &[5]).unwrap();
        assert_eq!(k.to_number_field().rep(), &RatPoly::from_coeffs_i64(&[5]));
    }

    #[test]
    fn number_field_inverse() {
        let field = NumberField::new(5);
        let a = field.from_cyc(&CycElem::from_i64(5, &[1, 2, 0, -1, 3]).unwrap());
        let inv = field.inv(&a);
        assert_eq!(field.mul(&a, &inv), field.one());
    }

    #[test]
    fn ring_enumeration_counts() {
        let spec = RingSpec::spanning(4, 3).unwrap();
        assert_eq!(enumerate_ring(&spec).count(), 9);

        let spec = RingSpec::prime_field(3, 7).unwrap();
        assert_eq!(spec, RingSpec::PrimeField { m: 3, q: 7, zeta: 2 });
        assert_eq!(enumerate_ring(&spec).count(), 7);

        let spec = RingSpec::spanning(1, 5).unwrap();
        let elems: Vec<_> = enumerate_ring(&spec).collect();
        assert_eq!(elems.len(), 5);
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(e, &CycElem::from_i64(1, &[i as i64]).unwrap());
        }

        assert_eq!(
            RingSpec::prime_field(3, 5),
            Err(Error::NoPrimitiveRoot { m: 3, q: 5 })
        );
    }

    #[test]
    fn ring_elements_are_distinct() {
        let spec = RingSpec::spanning(3, 3).unwrap();
        let mut seen = std::collections::HashSet::new();
        for e in enumerate_ring(&spec) {
            assert!(seen.insert(e.coords().to_vec()));
        }
        assert_eq!(seen.len(), 27);
    }

    #[test]
    fn ctx_arithmetic_matches_cyc_arithmetic() {
        for spec in [
            RingSpec::spanning(3, 5).unwrap(),
            RingSpec::spanning(4, 3).unwrap(),
            RingSpec::prime_field(4, 5).unwrap(),
        ] {
            let ctx = RingCtx::new(&spec);
            for a in 0..ctx.size() {
                for b in 0..ctx.size() {
                    let ca = ctx.to_cyc(a);
                    let cb = ctx.to_cyc(b);
                    let sum = ctx.from_cyc(&ca.checked_add(&cb).unwrap()).unwrap();
                    assert_eq!(sum, ctx.add(a, b));
                    let prod = ctx.from_cyc(&ca.checked_mul(&cb).unwrap()).unwrap();
                    assert_eq!(prod, ctx.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn units_and_orbits() {
        let spec = RingSpec::prime_field(3, 7).unwrap();
        let ctx = RingCtx::new(&spec);
        let mut units = ctx.units().to_vec();
        units.sort_unstable();
        assert_eq!(units, vec![1, 2, 4]);
        assert_eq!(ctx.orbit(1), vec![1, 2, 4]);
        assert_eq!(ctx.orbit(0), vec![0]);
        assert_eq!(ctx.star_classes().len(), 3); // 0 and two nonzero orbits
    }

    #[test]
    fn zeta_has_order_m_in_literal_ring() {
        for (m, q) in [(3u32, 5u64), (4, 7), (6, 5), (2, 5), (1, 5)] {
            let ctx = RingCtx::new(&RingSpec::spanning(m, q).unwrap());
            let z = ctx.zeta();
            let mut cur = ctx.one();
            for _ in 0..m {
                cur = ctx.mul(cur, z);
            }
            assert_eq!(cur, ctx.one(), "zeta^m = 1 for m={} q={}", m, q);
        }
    }
}
