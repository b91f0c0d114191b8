//! The finite-field point-counting method for complex arrangements.
//!
//! When an arrangement reduces correctly into a finite coefficient ring R
//! (all nonzero coefficient minors stay nonzero), the count of points of R^n
//! lying on exactly h hyperplanes packages the coboundary polynomial:
//! `sum over points of t^h = |R|^(n - r(A)) * coboundary(|R|, t)`.
//! Evaluations over several rings are then stitched back into the exact
//! bivariate polynomial by Lagrange interpolation over the rationals.
//!
//! On the literal coordinate rings with zero divisors the identity can fail;
//! every failure path here surfaces as a structured diagnostic instead of a
//! silently wrong polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::bivar::BivarPoly;
use crate::cyclotomic::{l_of, CycElem, NumberField, RingCtx, RingSpec};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

/// Which finite backend to reduce into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Coordinatewise reduction of the spanning representation.
    Spanning,
    /// F_q with q = 1 (mod m), zeta_m an order-m residue.
    PrimeField,
}

impl Backend {
    pub fn spec(self, m: u32, q: u64) -> Result<RingSpec> {
        match self {
            Backend::Spanning => RingSpec::spanning(m, q),
            Backend::PrimeField => RingSpec::prime_field(m, q),
        }
    }
}

/// An arrangement with coefficients pushed into a finite ring.
#[derive(Debug, Clone)]
pub struct ReducedArrangement {
    ctx: RingCtx,
    n: usize,
    // per hyperplane: nonzero (variable, coefficient) pairs and the rhs
    hyperplanes: Vec<(Vec<(usize, u64)>, u64)>,
}

impl ReducedArrangement {
    pub fn new(arr: &Arrangement, spec: &RingSpec) -> Result<Self> {
        if spec.m() != arr.order() {
            return Err(Error::IncompatibleRing(spec.m(), arr.order()));
        }
        let ctx = RingCtx::new(spec);
        let mut hyperplanes = Vec::with_capacity(arr.len());
        for h in arr.hyperplanes() {
            let mut terms = Vec::new();
            for (i, c) in h.coeffs().iter().enumerate() {
                let r = ctx.from_cyc(c)?;
                if !ctx.is_zero(r) {
                    terms.push((i, r));
                }
            }
            if terms.is_empty() {
                return Err(Error::IncorrectReduction {
                    ring: spec.to_string(),
                });
            }
            let rhs = ctx.from_cyc(h.rhs())?;
            hyperplanes.push((terms, rhs));
        }
        Ok(ReducedArrangement {
            ctx,
            n: arr.dim(),
            hyperplanes,
        })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Total number of points of R^n.
    pub fn domain_size(&self) -> u64 {
        self.ctx
            .size()
            .checked_pow(self.n as u32)
            .expect("point domain fits u64")
    }

    /// Number of hyperplanes the given point lies on.
    pub fn membership_count(&self, point: &[u64]) -> usize {
        debug_assert_eq!(point.len(), self.n);
        let ctx = &self.ctx;
        self.hyperplanes
            .iter()
            .filter(|(terms, rhs)| {
                let mut acc = 0u64;
                for &(var, c) in terms {
                    acc = ctx.add(acc, ctx.mul(c, point[var]));
                }
                acc == *rhs
            })
            .count()
    }

    /// Decode the k-th point of the enumeration order (little-endian digits
    /// in base |R|).
    pub fn point(&self, mut k: u64) -> Vec<u64> {
        let size = self.ctx.size();
        let mut p = vec![0u64; self.n];
        for slot in p.iter_mut() {
            *slot = k % size;
            k /= size;
        }
        p
    }
}

/// Histogram of `h` (hyperplanes through a point) over the whole domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HHistogram {
    counts: BTreeMap<usize, u64>,
}

impl HHistogram {
    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().map(|&c| BigInt::from(c)).sum()
    }

    /// The generating polynomial `sum of count * t^h`.
    pub fn to_poly(&self) -> IntPoly {
        let deg = self.counts.keys().max().copied().unwrap_or(0);
        let mut dense = vec![BigInt::zero(); deg + 1];
        for (&h, &c) in &self.counts {
            dense[h] = BigInt::from(c);
        }
        IntPoly::new(dense)
    }
}

/// Histogram over a contiguous index range of the point domain; ranges
/// partition the domain and partial histograms merge by addition.
pub fn histogram_range(red: &ReducedArrangement, start: u64, end: u64) -> HHistogram {
    let mut counts = BTreeMap::new();
    let size = red.ctx.size();
    let mut point = red.point(start);
    for k in start..end {
        if k != start {
            // odometer increment in base |R|
            for digit in point.iter_mut() {
                *digit += 1;
                if *digit == size {
                    *digit = 0;
                } else {
                    break;
                }
            }
        }
        let h = red.membership_count(&point);
        *counts.entry(h).or_insert(0) += 1;
    }
    HHistogram { counts }
}

/// Full-domain histogram, split across threads by index range.
pub fn point_count_histogram(red: &ReducedArrangement) -> HHistogram {
    let total = red.domain_size();
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8) as u64;
    if total < 4096 || threads <= 1 {
        return histogram_range(red, 0, total);
    }
    let chunk = total.div_ceil(threads);
    let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(total);
            if lo >= hi {
                continue;
            }
            handles.push(scope.spawn(move || histogram_range(red, lo, hi)));
        }
        for handle in handles {
            for (h, c) in handle.join().expect("histogram worker").counts {
                *merged.entry(h).or_insert(0) += c;
            }
        }
    });
    HHistogram { counts: merged }
}

/// Determinant of a square CycElem matrix by cofactor expansion. Sizes here
/// are at most n + 1, so the factorial blowup is irrelevant.
fn cyc_det(m: u32, mat: &[Vec<CycElem>]) -> CycElem {
    let k = mat.len();
    if k == 0 {
        return CycElem::one(m);
    }
    if k == 1 {
        return mat[0][0].clone();
    }
    let mut acc = CycElem::zero(m);
    for (j, pivot) in mat[0].iter().enumerate() {
        if pivot.is_coord_zero() {
            continue;
        }
        let minor: Vec<Vec<CycElem>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sub = cyc_det(m, &minor);
        let term = pivot.checked_mul(&sub).expect("same ring");
        acc = if j % 2 == 0 {
            acc.checked_add(&term).expect("same ring")
        } else {
            acc.checked_sub(&term).expect("same ring")
        };
    }
    acc
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Caps beyond which full minor enumeration gives way to a magnitude bound.
const MINOR_ROW_CAP: usize = 20;
const MINOR_DIM_CAP: usize = 4;

/// Decide whether the arrangement reduces correctly into the ring: every
/// square minor of the augmented coefficient matrix that is nonzero in
/// Q(zeta_m) must stay nonzero after reduction.
///
/// Beyond the configured size caps this falls back to a conservative norm
/// bound on the minors (a prime exceeding it cannot divide any nonzero
/// minor); callers relying on the fallback are expected to also run the
/// oracle-equivalence check.
pub fn check_correct_reduction(arr: &Arrangement, spec: &RingSpec) -> Result<bool> {
    if spec.m() != arr.order() {
        return Err(Error::IncompatibleRing(spec.m(), arr.order()));
    }
    let m = arr.order();
    let n = arr.dim();
    let rows: Vec<Vec<CycElem>> = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut row = h.coeffs().to_vec();
            row.push(h.rhs().clone());
            row
        })
        .collect();
    if rows.is_empty() {
        return Ok(true);
    }

    if arr.len() > MINOR_ROW_CAP || n > MINOR_DIM_CAP {
        // Norm bound: a nonzero minor is a nonzero algebraic integer whose
        // rational norm is at most (k! (l B)^k)^phi(m); a prime above that
        // cannot kill it.
        let l = l_of(m)? as u64;
        let b = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|e| e.max_abs_coord())
            .max()
            .unwrap_or_else(BigInt::zero)
            + 1;
        let k = arr.len().min(n + 1) as u64;
        let mut fact = BigInt::one();
        for i in 1..=k {
            fact *= i;
        }
        let entry_bound: BigInt = BigInt::from(l) * b;
        let base = fact * entry_bound.pow(k as u32);
        let phi = NumberField::new(m).degree() as u32;
        let bound = base.pow(phi);
        return Ok(BigInt::from(spec.q()) > bound);
    }

    let field = NumberField::new(m);
    let ctx = RingCtx::new(spec);
    let kmax = arr.len().min(n + 1);
    for k in 1..=kmax {
        for row_set in subsets_of_size(arr.len(), k) {
            for col_set in subsets_of_size(n + 1, k) {
                let mat: Vec<Vec<CycElem>> = row_set
                    .iter()
                    .map(|&r| col_set.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                let det = cyc_det(m, &mat);
                if field.from_cyc(&det).is_zero() {
                    continue;
                }
                if ctx.is_zero(ctx.from_cyc(&det)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The coboundary polynomial evaluated at this ring: builds the histogram
/// generating polynomial and divides by |R|^(n - r(A)) exactly. An inexact
/// division means the point-count identity failed over this ring and is
/// reported as a theorem violation.
pub fn coboundary_at_prime(arr: &Arrangement, spec: &RingSpec) -> Result<IntPoly> {
    if !check_correct_reduction(arr, spec)? {
        return Err(Error::IncorrectReduction {
            ring: spec.to_string(),
        });
    }
    let red = ReducedArrangement::new(arr, spec)?;
    let hist = point_count_histogram(&red);
    let rank = arr.rank();
    let divisor = BigInt::from(spec.size()).pow((arr.dim() - rank) as u32);
    hist.to_poly()
        .div_exact_scalar(&divisor)
        .map_err(|_| Error::IdentityViolation {
            ring: spec.to_string(),
            detail: format!(
                "point sum {} is not divisible by |R|^(n - r) = {}",
                hist.to_poly().display("t"),
                divisor
            ),
        })
}

/// Lagrange interpolation through `(node_i, value_i)` with exact rationals.
fn lagrange(nodes: &[BigInt], values: &[BigInt]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = RatPoly::one();
        let mut denom = BigRational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&RatPoly::new(vec![
                BigRational::from_integer(-xj.clone()),
                BigRational::one(),
            ]));
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        acc = acc.add(&basis.mul_scalar(&scale));
    }
    acc
}

/// Reconstruct a bivariate polynomial in (q, t) from values in t taken at
/// distinct q-nodes, with q-degree at most `q_degree`. Surplus nodes beyond
/// `q_degree + 1` serve as held-out consistency checks; the result must have
/// integer coefficients.
pub fn interpolate_values(
    nodes: &[BigInt],
    values: &[IntPoly],
    q_degree: usize,
) -> Result<BivarPoly> {
    let needed = q_degree + 1;
    if nodes.len() < needed {
        return Err(Error::InsufficientPoints {
            needed,
            got: nodes.len(),
        });
    }
    let (base_nodes, held_out) = nodes.split_at(needed);
    let (base_values, held_values) = values.split_at(needed);

    let tdeg = base_values
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let mut out = BivarPoly::zero("q", "t");
    for k in 0..=tdeg {
        let column: Vec<BigInt> = base_values.iter().map(|p| p.coeff(k)).collect();
        let rat = lagrange(base_nodes, &column);
        let qpoly = rat.to_integer()?;
        for (e, c) in qpoly.coeffs().iter().enumerate() {
            out.add_term(e as u32, k as u32, c.clone());
        }
    }
    for (node, value) in held_out.iter().zip(held_values) {
        if &out.eval_first(node) != value {
            return Err(Error::Inconsistency(format!(
                "interpolated polynomial disagrees with the evaluation at {}",
                node
            )));
        }
    }
    Ok(out)
}

/// Reconstruct the coboundary polynomial from per-ring evaluations.
///
/// Each valid spec contributes the data point `(|R|, coboundary(|R|, t))`;
/// interpolating every t-coefficient in q through r(A) + 1 distinct nodes
/// recovers the polynomial exactly.
pub fn interpolate_coboundary(arr: &Arrangement, specs: &[RingSpec]) -> Result<BivarPoly> {
    let rank = arr.rank();
    let mut nodes: Vec<BigInt> = Vec::new();
    let mut values: Vec<IntPoly> = Vec::new();
    for spec in specs {
        let node = BigInt::from(spec.size());
        if nodes.contains(&node) {
            continue;
        }
        let value = coboundary_at_prime(arr, spec)?;
        nodes.push(node);
        values.push(value);
    }
    interpolate_values(&nodes, &values, rank)
}

/// The zeta-coboundary polynomial recovered from per-ring evaluations:
/// interpolation followed by the substitution `q -> q^{l_m}`.
pub fn interpolate_zeta_coboundary(arr: &Arrangement, specs: &[RingSpec]) -> Result<BivarPoly> {
    let l = l_of(arr.order())? as u32;
    Ok(interpolate_coboundary(arr, specs)?.stretch_first(l))
}

/// First `count` primes whose reduction passes the minor check (and, for the
/// prime-field backend, which split so that zeta_m exists).
pub fn valid_specs(arr: &Arrangement, backend: Backend, count: usize) -> Result<Vec<RingSpec>> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while out.len() < count {
        if q > 100_000 {
            return Err(Error::InsufficientPoints {
                needed: count,
                got: out.len(),
            });
        }
        if let Ok(spec) = backend.spec(arr.order(), q) {
            if check_correct_reduction(arr, &spec)? {
                out.push(spec);
            }
        }
        q = next_prime(q);
    }
    Ok(out)
}

fn next_prime(mut q: u64) -> u64 {
    'outer: loop {
        q += 1;
        if q < 2 {
            continue;
        }
        let mut d = 2;
        while d * d <= q {
            if q.is_multiple_of(d) {
                continue 'outer;
            }
            d += 1;
        }
        return q;
    }
}

/// Outcome of running the point-count pipeline over one ring and comparing
/// it with the definitional polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StressOutcome {
    /// Division exact and the value matches the definitional coboundary.
    ExactMatch,
    /// The minor check already rejects this ring.
    ReductionRejected,
    /// The histogram sum is not divisible by |R|^(n - r).
    DivisionFailed { detail: String },
    /// Division succeeded but the value disagrees with the definition.
    ValueMismatch { expected: IntPoly, actual: IntPoly },
}

#[derive(Debug, Clone)]
pub struct StressCase {
    pub spec: RingSpec,
    pub outcome: StressOutcome,
}

impl StressCase {
    pub fn is_exact(&self) -> bool {
        self.outcome == StressOutcome::ExactMatch
    }

    pub fn describe(&self) -> String {
        match &self.outcome {
            StressOutcome::ExactMatch => format!("{}: exact match", self.spec),
            StressOutcome::ReductionRejected => {
                format!("{}: rejected by the minor check", self.spec)
            }
            StressOutcome::DivisionFailed { detail } => {
                format!("{}: violation (inexact division: {})", self.spec, detail)
            }
            StressOutcome::ValueMismatch { expected, actual } => format!(
                "{}: violation (expected {}, point count gave {})",
                self.spec,
                expected.display("t"),
                actual.display("t")
            ),
        }
    }
}

/// Run the point-count pipeline over the given rings, classifying each run
/// as an exact match or a structured violation. Nothing here is allowed to
/// return a silently wrong polynomial.
pub fn stress_report(arr: &Arrangement, specs: &[RingSpec]) -> Result<Vec<StressCase>> {
    let chi = arr.coboundary();
    let mut out = Vec::new();
    for spec in specs {
        let outcome = if !check_correct_reduction(arr, spec)? {
            StressOutcome::ReductionRejected
        } else {
            match coboundary_at_prime(arr, spec) {
                Err(Error::IdentityViolation { detail, .. }) => {
                    StressOutcome::DivisionFailed { detail }
                }
                Err(e) => return Err(e),
                Ok(actual) => {
                    let expected = chi.eval_first(&BigInt::from(spec.size()));
                    if expected == actual {
                        StressOutcome::ExactMatch
                    } else {
                        StressOutcome::ValueMismatch { expected, actual }
                    }
                }
            }
        };
        out.push(StressCase {
            spec: spec.clone(),
            outcome,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{family_a, family_g, Hyperplane};
    use crate::cyclotomic::CycElem;

    fn single_line() -> Arrangement {
        Arrangement::new(
            1,
            1,
            vec![Hyperplane::new(vec![CycElem::one(1)], CycElem::zero(1))],
        )
        .unwrap()
    }

    fn spec1(q: u64) -> RingSpec {
        RingSpec::spanning(1, q).unwrap()
    }

    #[test]
    fn reduction_check_examples() {
        let braid = family_a(3).unwrap();
        assert!(check_correct_reduction(&braid, &spec1(5)).unwrap());

        // 2 z_1 = 0 vanishes mod 2
        let doubled = Arrangement::new(
            1,
            1,
            vec![Hyperplane::new(
                vec![CycElem::integer(1, 2)],
                CycElem::zero(1),
            )],
        )
        .unwrap();
        assert!(!check_correct_reduction(&doubled, &spec1(2)).unwrap());
        assert!(check_correct_reduction(&doubled, &spec1(5)).unwrap());

        let empty = Arrangement::empty(1, 2);
        assert!(check_correct_reduction(&empty, &spec1(2)).unwrap());
    }

    #[test]
    fn histogram_examples() {
        // single hyperplane z_1 = 0 over F_5
        let red = ReducedArrangement::new(&single_line(), &spec1(5)).unwrap();
        let hist = point_count_histogram(&red);
        assert_eq!(hist.counts(), &BTreeMap::from([(0, 4), (1, 1)]));

        // braid in C^3 over F_5
        let red = ReducedArrangement::new(&family_a(3).unwrap(), &spec1(5)).unwrap();
        let hist = point_count_histogram(&red);
        assert_eq!(hist.counts(), &BTreeMap::from([(0, 60), (1, 60), (3, 5)]));
        assert_eq!(hist.total(), BigInt::from(125));

        // empty arrangement over F_5 in dimension 2
        let red = ReducedArrangement::new(&Arrangement::empty(1, 2), &spec1(5)).unwrap();
        let hist = point_count_histogram(&red);
        assert_eq!(hist.counts(), &BTreeMap::from([(0, 25)]));
    }

    #[test]
    fn partial_histograms_merge() {
        let red = ReducedArrangement::new(&family_a(3).unwrap(), &spec1(5)).unwrap();
        let total = red.domain_size();
        let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
        for (lo, hi) in [(0, 40), (40, 100), (100, total)] {
            for (h, c) in histogram_range(&red, lo, hi).counts {
                *merged.entry(h).or_insert(0) += c;
            }
        }
        assert_eq!(HHistogram { counts: merged }, point_count_histogram(&red));
    }

    #[test]
    fn coboundary_at_prime_examples() {
        // t + 4 = coboundary(5, t) for the single hyperplane
        assert_eq!(
            coboundary_at_prime(&single_line(), &spec1(5)).unwrap(),
            IntPoly::from_i64(&[4, 1])
        );
        // braid at q = 5: t^3 + 12t + 12
        assert_eq!(
            coboundary_at_prime(&family_a(3).unwrap(), &spec1(5)).unwrap(),
            IntPoly::from_i64(&[12, 12, 0, 1])
        );
        // empty arrangement in C^2: 25 / 5^2 = 1
        assert_eq!(
            coboundary_at_prime(&Arrangement::empty(1, 2), &spec1(5)).unwrap(),
            IntPoly::one()
        );
    }

    #[test]
    fn interpolation_recovers_definition() {
        let specs: Vec<RingSpec> = [3, 5, 7].iter().map(|&q| spec1(q)).collect();
        let got = interpolate_coboundary(&single_line(), &specs).unwrap();
        assert_eq!(got.render(), "q + t - 1");

        let braid = family_a(3).unwrap();
        let specs: Vec<RingSpec> = [5, 7, 11].iter().map(|&q| spec1(q)).collect();
        let got = interpolate_coboundary(&braid, &specs).unwrap();
        assert_eq!(got, braid.coboundary());

        // a single node suffices for the empty arrangement
        let got = interpolate_coboundary(&Arrangement::empty(1, 2), &[spec1(5)]).unwrap();
        assert!(got.is_one());

        assert_eq!(
            interpolate_coboundary(&braid, &[spec1(5)]),
            Err(Error::InsufficientPoints { needed: 3, got: 1 })
        );
    }

    #[test]
    fn membership_matches_per_hyperplane_test() {
        let arr = family_g(3, 3, 2).unwrap();
        let spec = RingSpec::prime_field(3, 7).unwrap();
        let red = ReducedArrangement::new(&arr, &spec).unwrap();
        // direct recount for every point
        let mut hist = BTreeMap::new();
        for k in 0..red.domain_size() {
            let p = red.point(k);
            let h = red.membership_count(&p);
            *hist.entry(h).or_insert(0u64) += 1;
        }
        assert_eq!(&hist, point_count_histogram(&red).counts());
        // known shape: one triple point, 18 simple points, 30 free
        assert_eq!(hist, BTreeMap::from([(0, 30), (1, 18), (3, 1)]));
    }

    #[test]
    fn prime_selection_filters() {
        // coefficients contain a 2: q = 2 must be filtered out
        let doubled = Arrangement::new(
            1,
            1,
            vec![Hyperplane::new(
                vec![CycElem::integer(1, 2)],
                CycElem::zero(1),
            )],
        )
        .unwrap();
        let specs = valid_specs(&doubled, Backend::Spanning, 2).unwrap();
        assert_eq!(specs.iter().map(|s| s.q()).collect::<Vec<_>>(), vec![3, 5]);

        let g = family_g(3, 3, 2).unwrap();
        let specs = valid_specs(&g, Backend::PrimeField, 2).unwrap();
        assert!(specs.iter().all(|s| (s.q() - 1) % 3 == 0));
    }

    #[test]
    fn literal_ring_stress_is_classified() {
        // G(3, 3, 2) over F_q[w]/(w^3 - 1): intersection sizes are inflated
        // by zero divisors, and the report must say so.
        let g = family_g(3, 3, 2).unwrap();
        let specs = vec![
            RingSpec::spanning(3, 5).unwrap(),
            RingSpec::spanning(3, 7).unwrap(),
        ];
        let report = stress_report(&g, &specs).unwrap();
        assert_eq!(report.len(), 2);
        for case in &report {
            assert!(
                matches!(
                    case.outcome,
                    StressOutcome::ValueMismatch { .. } | StressOutcome::DivisionFailed { .. }
                ),
                "expected a structured violation, got {}",
                case.describe()
            );
        }
    }

    #[test]
    fn prime_field_backend_is_exact_for_colored() {
        let g = family_g(3, 3, 2).unwrap();
        let spec = RingSpec::prime_field(3, 7).unwrap();
        let got = coboundary_at_prime(&g, &spec).unwrap();
        let expected = g.coboundary().eval_first(&BigInt::from(7));
        assert_eq!(got, expected);
    }
}
