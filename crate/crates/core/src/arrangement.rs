//! Arrangement data model, ranks over Q(zeta_m), the definitional Tutte and
//! coboundary polynomials, their specializations, and the named family
//! constructors.
//!
//! Ranks and centrality are decided by Gaussian elimination over the
//! canonical number field, never on the spanning coordinates (which carry
//! Z-linear relations for odd m > 1). The subset sums enumerate central
//! subarrangements by depth-first extension, pruning a branch as soon as the
//! linear system becomes inconsistent: supersets of a noncentral set are
//! noncentral, so nothing contributing is skipped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bivar::BivarPoly;
use crate::cyclotomic::{l_of, CycElem, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Affine hyperplane `c_1 z_1 + ... + c_n z_n = d` with cyclotomic coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: Vec<CycElem>,
    rhs: CycElem,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<CycElem>, rhs: CycElem) -> Self {
        Hyperplane { coeffs, rhs }
    }

    pub fn coeffs(&self) -> &[CycElem] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &CycElem {
        &self.rhs
    }

    /// Key identifying the affine set: the number-field coefficient vector
    /// (right-hand side included) scaled so its first nonzero coefficient is
    /// one. Scalar multiples of a hyperplane share a key.
    pub fn canonical_key(&self, field: &NumberField) -> Result<HyperplaneKey> {
        let mut entries: Vec<NfElem> =
            self.coeffs.iter().map(|c| field.from_cyc(c)).collect();
        entries.push(field.from_cyc(&self.rhs));
        let pivot = entries[..entries.len() - 1]
            .iter()
            .position(|e| !e.is_zero())
            .ok_or(Error::ZeroCoefficientVector)?;
        let inv = field.inv(&entries[pivot]);
        Ok(entries.iter().map(|e| field.mul(e, &inv).key()).collect())
    }
}

/// Finite set of hyperplanes in C^n with coefficients in `Z[zeta_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    m: u32,
    n: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Count of central subarrangements per (rank, cardinality) pair.
pub type CentralProfile = BTreeMap<(usize, usize), BigInt>;

/// Canonical identifier of an affine hyperplane: the normalized
/// number-field coefficient vector as comparison keys.
pub type HyperplaneKey = Vec<Vec<(BigInt, BigInt)>>;

#[derive(Clone)]
struct Echelon {
    // rows in echelon form over the augmented columns, pivots normalized to one
    rows: Vec<(usize, Vec<NfElem>)>,
    ncols: usize,
}

enum RowOutcome {
    Inconsistent,
    Dependent,
    Independent(Echelon),
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            ncols,
        }
    }

    /// Reduce an augmented row against the current pivots. The last column is
    /// the right-hand side: a row vanishing everywhere except there makes the
    /// system inconsistent, i.e. the subarrangement noncentral.
    fn offer(&self, field: &NumberField, row: &[NfElem]) -> RowOutcome {
        let mut row = row.to_vec();
        for (pivot, prow) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let f = row[*pivot].clone();
            for j in *pivot..self.ncols {
                let delta = field.mul(&f, &prow[j]);
                row[j] = field.sub(&row[j], &delta);
            }
        }
        match row.iter().position(|e| !e.is_zero()) {
            None => RowOutcome::Dependent,
            Some(p) if p + 1 == self.ncols => RowOutcome::Inconsistent,
            Some(p) => {
                let inv = field.inv(&row[p]);
                let norm: Vec<NfElem> = row.iter().map(|e| field.mul(e, &inv)).collect();
                let mut next = self.clone();
                next.rows.push((p, norm));
                RowOutcome::Independent(next)
            }
        }
    }
}

impl Arrangement {
    pub fn new(m: u32, n: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        l_of(m)?;
        let field = NumberField::new(m);
        let mut seen = std::collections::HashSet::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.coeffs.len() != n
                || h.coeffs.iter().any(|c| c.order() != m)
                || h.rhs.order() != m
            {
                return Err(Error::ShapeMismatch { m, n });
            }
            let key = h.canonical_key(&field)?;
            if !seen.insert(key) {
                return Err(Error::DuplicateHyperplane(i));
            }
        }
        Ok(Arrangement { m, n, hyperplanes })
    }

    /// Like [`Arrangement::new`] but silently collapsing duplicate affine
    /// sets, keeping the first representative of each.
    pub fn new_dedup(m: u32, n: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        l_of(m)?;
        let field = NumberField::new(m);
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::new();
        for h in hyperplanes {
            if h.coeffs.len() != n
                || h.coeffs.iter().any(|c| c.order() != m)
                || h.rhs.order() != m
            {
                return Err(Error::ShapeMismatch { m, n });
            }
            if seen.insert(h.canonical_key(&field)?) {
                kept.push(h);
            }
        }
        Ok(Arrangement {
            m,
            n,
            hyperplanes: kept,
        })
    }

    pub fn empty(m: u32, n: usize) -> Self {
        Arrangement {
            m,
            n,
            hyperplanes: Vec::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    fn augmented_row(&self, field: &NumberField, i: usize) -> Vec<NfElem> {
        let h = &self.hyperplanes[i];
        let mut row: Vec<NfElem> = h.coeffs.iter().map(|c| field.from_cyc(c)).collect();
        row.push(field.from_cyc(&h.rhs));
        row
    }

    /// The set of canonical hyperplane keys; two arrangements with equal sets
    /// define the same family of affine sets.
    pub fn canonical_set(&self) -> std::collections::BTreeSet<HyperplaneKey> {
        let field = NumberField::new(self.m);
        self.hyperplanes
            .iter()
            .map(|h| h.canonical_key(&field).expect("validated at construction"))
            .collect()
    }

    /// True iff the hyperplanes indexed by `sub` have a common point. The
    /// empty subarrangement is central (its intersection is all of C^n).
    pub fn is_central(&self, sub: &[usize]) -> bool {
        let field = NumberField::new(self.m);
        let mut ech = Echelon::new(self.n + 1);
        for &i in sub {
            match ech.offer(&field, &self.augmented_row(&field, i)) {
                RowOutcome::Inconsistent => return false,
                RowOutcome::Dependent => {}
                RowOutcome::Independent(next) => ech = next,
            }
        }
        true
    }

    /// Rank of a subarrangement: the coefficient-matrix rank when central,
    /// otherwise the largest rank over its central subsets. Every central
    /// rank-k subarrangement contains a central independent k-subset, so a
    /// depth-first search over independent central subsets reaches the max.
    pub fn rank_of(&self, sub: &[usize]) -> usize {
        let field = NumberField::new(self.m);
        let rows: Vec<Vec<NfElem>> = sub
            .iter()
            .map(|&i| self.augmented_row(&field, i))
            .collect();
        fn dfs(
            field: &NumberField,
            rows: &[Vec<NfElem>],
            from: usize,
            ech: &Echelon,
            rank: usize,
            best: &mut usize,
        ) {
            *best = (*best).max(rank);
            for (i, row) in rows.iter().enumerate().skip(from) {
                if let RowOutcome::Independent(next) = ech.offer(field, row) {
                    dfs(field, rows, i + 1, &next, rank + 1, best);
                }
            }
        }
        let mut best = 0usize;
        dfs(&field, &rows, 0, &Echelon::new(self.n + 1), 0, &mut best);
        best
    }

    /// Rank of the full arrangement.
    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.len()).collect();
        self.rank_of(&all)
    }

    /// Enumerate every central subarrangement, tallying (rank, size) pairs.
    pub fn central_profile(&self) -> CentralProfile {
        let field = NumberField::new(self.m);
        let rows: Vec<Vec<NfElem>> = (0..self.len())
            .map(|i| self.augmented_row(&field, i))
            .collect();
        fn dfs(
            field: &NumberField,
            rows: &[Vec<NfElem>],
            from: usize,
            ech: &Echelon,
            rank: usize,
            size: usize,
            profile: &mut CentralProfile,
        ) {
            *profile.entry((rank, size)).or_insert_with(BigInt::zero) += 1;
            for (i, row) in rows.iter().enumerate().skip(from) {
                match ech.offer(field, row) {
                    RowOutcome::Inconsistent => {}
                    RowOutcome::Dependent => {
                        dfs(field, rows, i + 1, ech, rank, size + 1, profile)
                    }
                    RowOutcome::Independent(next) => {
                        dfs(field, rows, i + 1, &next, rank + 1, size + 1, profile)
                    }
                }
            }
        }
        let mut profile = CentralProfile::new();
        dfs(
            &field,
            &rows,
            0,
            &Echelon::new(self.n + 1),
            0,
            0,
            &mut profile,
        );
        profile
    }

    fn profile_rank(profile: &CentralProfile) -> usize {
        profile.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// The Tutte polynomial: sum of `(x-1)^(r(A)-r(B)) (y-1)^(|B|-r(B))` over
    /// central subarrangements B.
    pub fn tutte(&self) -> BivarPoly {
        let profile = self.central_profile();
        let r_a = Self::profile_rank(&profile);
        let max_free = profile.keys().map(|&(r, s)| s - r).max().unwrap_or(0);
        let binom = IntPoly::from_i64(&[-1, 1]);
        let xpow: Vec<IntPoly> = (0..=r_a).map(|k| binom.pow(k)).collect();
        let ypow: Vec<IntPoly> = (0..=max_free).map(|k| binom.pow(k)).collect();
        let mut out = BivarPoly::zero("x", "y");
        for (&(r, s), count) in &profile {
            let term = BivarPoly::from_parts("x", "y", &xpow[r_a - r], &ypow[s - r]);
            out = out.add(&term.mul_scalar(count));
        }
        out
    }

    /// The coboundary polynomial: sum of `q^(r(A)-r(B)) (t-1)^|B|` over
    /// central subarrangements B.
    pub fn coboundary(&self) -> BivarPoly {
        let profile = self.central_profile();
        let r_a = Self::profile_rank(&profile);
        let max_size = profile.keys().map(|k| k.1).max().unwrap_or(0);
        let binom = IntPoly::from_i64(&[-1, 1]);
        let tpow: Vec<IntPoly> = (0..=max_size).map(|k| binom.pow(k)).collect();
        let mut out = BivarPoly::zero("q", "t");
        for (&(r, s), count) in &profile {
            let term = BivarPoly::from_parts(
                "q",
                "t",
                &IntPoly::monomial(BigInt::one(), r_a - r),
                &tpow[s],
            );
            out = out.add(&term.mul_scalar(count));
        }
        out
    }

    /// The coboundary polynomial with every q-exponent scaled by l_m,
    /// i.e. the substitution `q -> q^{l_m}`.
    pub fn zeta_coboundary(&self) -> BivarPoly {
        let l = l_of(self.m).expect("valid order") as u32;
        self.coboundary().stretch_first(l)
    }

    /// Verify `T(x, y) = coboundary((x-1)(y-1), y) / (y-1)^r(A)` as an exact
    /// polynomial identity. An inexact division here would mean a bug, not a
    /// property of the input, hence the error variant.
    pub fn tutte_coboundary_check(&self) -> Result<bool> {
        let chi = self.coboundary();
        let r_a = Self::profile_rank(&self.central_profile());
        let binom = IntPoly::from_i64(&[-1, 1]);
        let xm1ym1 = BivarPoly::from_parts("x", "y", &binom, &binom);
        let y = BivarPoly::from_parts(
            "x",
            "y",
            &IntPoly::one(),
            &IntPoly::monomial(BigInt::one(), 1),
        );
        let substituted = chi.compose("x", "y", &xm1ym1, &y);
        let quotient = substituted
            .div_exact_second_minus_one(r_a as u32)
            .map_err(|e| Error::Inconsistency(format!("Tutte conversion: {}", e)))?;
        Ok(quotient == self.tutte())
    }

    /// Characteristic polynomial `q^(n - r(A)) * coboundary(q, 0)`.
    pub fn characteristic(&self) -> IntPoly {
        let profile = self.central_profile();
        let r_a = Self::profile_rank(&profile);
        let chi = self.coboundary();
        chi.eval_second(&BigInt::zero()).shift(self.n - r_a)
    }

    /// Poincare polynomial of the complement: the Whitney-type specialization
    /// `sum over central B of (-1)^|B| (-q)^r(B)`, which equals
    /// `q^r(A) * T((1+q)/q, 0)` after clearing denominators.
    pub fn poincare(&self) -> IntPoly {
        let profile = self.central_profile();
        let mut coeffs = BTreeMap::<usize, BigInt>::new();
        for (&(r, s), count) in &profile {
            let sign = if (r + s) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            *coeffs.entry(r).or_insert_with(BigInt::zero) += sign * count;
        }
        let deg = coeffs.keys().max().copied().unwrap_or(0);
        let mut dense = vec![BigInt::zero(); deg + 1];
        for (r, c) in coeffs {
            dense[r] = c;
        }
        IntPoly::new(dense)
    }

    /// Number of regions a real arrangement cuts R^n into: `|T(2, 0)|`.
    /// Requires real coefficients, i.e. m <= 2.
    pub fn region_count(&self) -> Result<BigInt> {
        if self.m > 2 {
            return Err(Error::NotReal(self.m));
        }
        let t = self.tutte();
        Ok(t.eval(&BigInt::from(2), &BigInt::zero()).abs())
    }
}

fn sparse_hyperplane(m: u32, n: usize, terms: &[(usize, CycElem)], rhs: CycElem) -> Hyperplane {
    let mut coeffs = vec![CycElem::zero(m); n];
    for (idx, c) in terms {
        coeffs[*idx] = c.clone();
    }
    Hyperplane::new(coeffs, rhs)
}

/// Braid arrangement in C^n: `z_i - z_j = 0` for i < j.
pub fn family_a(n: usize) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::InvalidFamily("A requires n >= 1".into()));
    }
    let mut hs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            hs.push(sparse_hyperplane(
                1,
                n,
                &[(i, CycElem::integer(1, 1)), (j, CycElem::integer(1, -1))],
                CycElem::zero(1),
            ));
        }
    }
    Arrangement::new_dedup(1, n, hs)
}

/// Type B/C arrangement: `z_i +- z_j = 0` for i < j together with `z_i = 0`.
pub fn family_b(n: usize) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::InvalidFamily("B requires n >= 1".into()));
    }
    let mut hs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for sign in [1i64, -1] {
                hs.push(sparse_hyperplane(
                    1,
                    n,
                    &[(i, CycElem::integer(1, 1)), (j, CycElem::integer(1, sign))],
                    CycElem::zero(1),
                ));
            }
        }
    }
    for i in 0..n {
        hs.push(sparse_hyperplane(
            1,
            n,
            &[(i, CycElem::integer(1, 1))],
            CycElem::zero(1),
        ));
    }
    Arrangement::new_dedup(1, n, hs)
}

/// Type D arrangement: `z_i +- z_j = 0` for i < j.
pub fn family_d(n: usize) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::InvalidFamily("D requires n >= 1".into()));
    }
    let mut hs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for sign in [1i64, -1] {
                hs.push(sparse_hyperplane(
                    1,
                    n,
                    &[(i, CycElem::integer(1, 1)), (j, CycElem::integer(1, sign))],
                    CycElem::zero(1),
                ));
            }
        }
    }
    Arrangement::new_dedup(1, n, hs)
}

/// The arrangement `z_i = 0`, `z_i = 1`, `z_i + z_j = 1`; at n = 1 this is
/// the two points `{0}` and `{1}` on a line.
pub fn family_i(n: usize) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::InvalidFamily("I requires n >= 1".into()));
    }
    let mut hs = Vec::new();
    for i in 0..n {
        hs.push(sparse_hyperplane(
            1,
            n,
            &[(i, CycElem::integer(1, 1))],
            CycElem::zero(1),
        ));
    }
    for i in 0..n {
        hs.push(sparse_hyperplane(
            1,
            n,
            &[(i, CycElem::integer(1, 1))],
            CycElem::one(1),
        ));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            hs.push(sparse_hyperplane(
                1,
                n,
                &[(i, CycElem::integer(1, 1)), (j, CycElem::integer(1, 1))],
                CycElem::one(1),
            ));
        }
    }
    Arrangement::new_dedup(1, n, hs)
}

/// Reflection arrangement of G(m, p, n): `z_i - xi z_j = 0` over all m-th
/// roots of unity xi, plus the coordinate hyperplanes except when p = m.
pub fn family_g(m: u32, p: u32, n: usize) -> Result<Arrangement> {
    if m < 1 || p < 1 || !m.is_multiple_of(p) {
        return Err(Error::InvalidFamily(format!(
            "G(m, p, n) requires p | m, got m = {}, p = {}",
            m, p
        )));
    }
    if n < 1 {
        return Err(Error::InvalidFamily("G requires n >= 1".into()));
    }
    let mut hs = Vec::new();
    if p != m {
        for i in 0..n {
            hs.push(sparse_hyperplane(
                m,
                n,
                &[(i, CycElem::one(m))],
                CycElem::zero(m),
            ));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..m {
                hs.push(sparse_hyperplane(
                    m,
                    n,
                    &[(i, CycElem::one(m)), (j, CycElem::zeta_pow(m, k).neg())],
                    CycElem::zero(m),
                ));
            }
        }
    }
    Arrangement::new_dedup(m, n, hs)
}

/// Family dispatch by letter, as exposed on the command line.
pub fn family(name: &str, params: &[u32]) -> Result<Arrangement> {
    match (name, params) {
        ("A", [n]) => family_a(*n as usize),
        ("B", [n]) => family_b(*n as usize),
        ("D", [n]) => family_d(*n as usize),
        ("I", [n]) => family_i(*n as usize),
        ("G", [m, p, n]) => family_g(*m, *p, *n as usize),
        _ => Err(Error::InvalidFamily(format!(
            "unknown family {} with {} parameters",
            name,
            params.len()
        ))),
    }
}
