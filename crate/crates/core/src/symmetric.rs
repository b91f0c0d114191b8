//! Closed-form coboundary polynomials for arrangements invariant under
//! coordinate permutations (optionally colored by roots of unity).
//!
//! Such an arrangement is the orbit of a few representative equations. Over
//! a finite ring, the number of hyperplanes through a point depends only on
//! the composition of the point's coordinate values: each deduplicated
//! solution of a representative equation contributes a product of binomials.
//! Summing multinomially over all compositions yields the coboundary value
//! at that ring with no point enumeration at all.
//!
//! Solutions are deduplicated modulo the projective stabilizer of the
//! coefficient tuple (permutations fixing the equation up to a scalar, the
//! scalar fixing the right-hand side); colored solutions are additionally
//! identified when they differ by coordinatewise unit factors. The
//! reconstruction and point-agreement test suites validate this rule
//! instance by instance.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, Hyperplane, HyperplaneKey};
use crate::cyclotomic::{CycElem, NfElem, NumberField, RingCtx, RingSpec};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Which group the arrangement is invariant under: plain coordinate
/// permutations, or permutations combined with coordinatewise m-th roots of
/// unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Plain,
    Colored,
}

/// A representative linear equation `c_1 z_1 + ... + c_j z_j = d` whose
/// orbit generates one symmetric block of hyperplanes. The first and last
/// coefficients must be nonzero in Q(zeta_m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepEquation {
    m: u32,
    coeffs: Vec<CycElem>,
    rhs: CycElem,
}

impl RepEquation {
    pub fn new(m: u32, coeffs: Vec<CycElem>, rhs: CycElem) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "representative equation needs at least one variable".into(),
            ));
        }
        if coeffs.iter().any(|c| c.order() != m) || rhs.order() != m {
            return Err(Error::IncompatibleRing(m, coeffs[0].order()));
        }
        let field = NumberField::new(m);
        let first = field.from_cyc(&coeffs[0]);
        let last = field.from_cyc(coeffs.last().expect("nonempty"));
        if first.is_zero() || last.is_zero() {
            return Err(Error::InvalidParameter(
                "first and last representative coefficients must be nonzero".into(),
            ));
        }
        Ok(RepEquation { m, coeffs, rhs })
    }

    pub fn from_i64(m: u32, coeffs: &[i64], rhs: i64) -> Result<Self> {
        let cs = coeffs
            .iter()
            .map(|&c| CycElem::integer(m, c))
            .collect::<Vec<_>>();
        Self::new(m, cs, CycElem::integer(m, rhs))
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[CycElem] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &CycElem {
        &self.rhs
    }

    /// Permutations `p` of the positions with `c[p(i)] = lambda c[i]` for a
    /// scalar lambda fixing the right-hand side. Solutions related by such a
    /// permutation define the same hyperplanes and are deduplicated together.
    pub fn projective_stabilizer(&self) -> Vec<Vec<usize>> {
        let field = NumberField::new(self.m);
        let cs: Vec<NfElem> = self.coeffs.iter().map(|c| field.from_cyc(c)).collect();
        let d = field.from_cyc(&self.rhs);
        let j = cs.len();
        let mut out = Vec::new();
        for perm in permutations(j) {
            // c[0] is nonzero by construction
            let lambda = field.div(&cs[perm[0]], &cs[0]);
            let coeffs_match = (0..j).all(|i| field.mul(&lambda, &cs[i]) == cs[perm[i]]);
            if !coeffs_match {
                continue;
            }
            if field.mul(&lambda, &d) == d {
                out.push(perm);
            }
        }
        out
    }
}

fn permutations(j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..j).collect();
    fn go(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(k + 1, items, out);
            items.swap(k, i);
        }
    }
    go(0, &mut items, &mut out);
    out
}

/// Number of occurrences of `t` among the coordinates of `v`.
pub fn occurrences(v: &[u64], t: u64) -> usize {
    v.iter().filter(|&&x| x == t).count()
}

/// Set of values taken by the coordinates of `v`.
pub fn support(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

/// Value composition of a tuple: how many coordinates carry each value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionIndex {
    counts: BTreeMap<u64, usize>,
}

impl CompositionIndex {
    pub fn of_tuple(v: &[u64]) -> Self {
        let mut counts = BTreeMap::new();
        for &x in v {
            *counts.entry(x).or_insert(0) += 1;
        }
        CompositionIndex { counts }
    }

    pub fn from_counts(counts: BTreeMap<u64, usize>) -> Self {
        CompositionIndex {
            counts: counts.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    pub fn count(&self, t: u64) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// The norm: total number of coordinates accounted for.
    pub fn norm(&self) -> usize {
        self.counts.values().sum()
    }
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// The binomial-product count: the number of ways to choose, for each value
/// of `v`, that many coordinates of a tuple with composition `a`.
pub fn f_count(a: &CompositionIndex, v: &[u64]) -> u64 {
    let cv = CompositionIndex::of_tuple(v);
    let mut acc = 1u64;
    for (&t, &o) in &cv.counts {
        acc *= binom(a.count(t), o);
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// Sum of [`f_count`] over a set of tuples.
pub fn f_count_set(a: &CompositionIndex, set: &[Vec<u64>]) -> u64 {
    set.iter().map(|v| f_count(a, v)).sum()
}

/// The colored variant: tuples supported entirely on the distinguished class
/// `u` count with weight `m^(j-1)`, all others with weight `m^(occurrences
/// of u)` times the plain count. Here `j` is the tuple length.
pub fn f_colored(a: &CompositionIndex, v: &[u64], u: u64, m: u32) -> u64 {
    let j = v.len();
    let o_u = occurrences(v, u);
    if o_u == j {
        (m as u64).pow(j as u32 - 1) * binom(a.count(u), j)
    } else {
        (m as u64).pow(o_u as u32) * f_count(a, v)
    }
}

pub fn f_colored_set(a: &CompositionIndex, set: &[Vec<u64>], u: u64, m: u32) -> u64 {
    set.iter().map(|v| f_colored(a, v, u, m)).sum()
}

/// Deduplicated solutions of one representative equation over a finite ring.
///
/// Plain vectors are solution tuples (element indices), one representative
/// per stabilizer orbit, lexicographically least. Colored vectors are orbit
/// class tuples: the coordinatewise canonical class of a solution, again
/// reduced modulo the stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub symmetry: Symmetry,
    pub vectors: Vec<Vec<u64>>,
}

/// Enumerate and deduplicate the solutions of a reduced representative
/// equation in `ring^j`.
pub fn solve_representative(
    eq: &RepEquation,
    ctx: &RingCtx,
    symmetry: Symmetry,
) -> Result<SolutionSet> {
    let j = eq.arity();
    let cs: Vec<u64> = eq
        .coeffs()
        .iter()
        .map(|c| ctx.from_cyc(c))
        .collect::<Result<_>>()?;
    let d = ctx.from_cyc(eq.rhs())?;
    if cs.iter().all(|&c| ctx.is_zero(c)) {
        return Err(Error::DegenerateEquation);
    }
    // Unit factors rescale a nonzero right-hand side across a colored orbit,
    // so the orbit-class collapse behind the colored counting only holds for
    // homogeneous multi-variable equations. Reject instead of undercounting.
    if symmetry == Symmetry::Colored && j > 1 && !ctx.is_zero(d) {
        return Err(Error::InvalidParameter(
            "colored representative equations in several variables must be homogeneous".into(),
        ));
    }

    // Prefer solving for a position with an invertible coefficient; fall
    // back to filtering the full cube when the ring has no usable unit.
    let pivot = cs
        .iter()
        .enumerate()
        .rev()
        .find_map(|(i, &c)| ctx.inverse(c).map(|inv| (i, inv)));

    let size = ctx.size();
    let mut raw: Vec<Vec<u64>> = Vec::new();
    match pivot {
        Some((p, inv)) => {
            let free: Vec<usize> = (0..j).filter(|&i| i != p).collect();
            let mut assign = vec![0u64; free.len()];
            loop {
                let mut acc = 0u64;
                let mut tuple = vec![0u64; j];
                for (slot, &i) in free.iter().enumerate() {
                    tuple[i] = assign[slot];
                    acc = ctx.add(acc, ctx.mul(cs[i], assign[slot]));
                }
                tuple[p] = ctx.mul(inv, ctx.sub(d, acc));
                raw.push(tuple);
                // odometer
                let mut done = true;
                for digit in assign.iter_mut() {
                    *digit += 1;
                    if *digit == size {
                        *digit = 0;
                    } else {
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
        }
        None => {
            let mut tuple = vec![0u64; j];
            loop {
                let mut acc = 0u64;
                for i in 0..j {
                    acc = ctx.add(acc, ctx.mul(cs[i], tuple[i]));
                }
                if acc == d {
                    raw.push(tuple.clone());
                }
                let mut done = true;
                for digit in tuple.iter_mut() {
                    *digit += 1;
                    if *digit == size {
                        *digit = 0;
                    } else {
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
        }
    }

    let stab = eq.projective_stabilizer();
    let mut dedup: BTreeSet<Vec<u64>> = BTreeSet::new();
    for v in raw {
        let v = match symmetry {
            Symmetry::Plain => v,
            Symmetry::Colored => v.iter().map(|&x| ctx.star_class(x)).collect(),
        };
        let canon = stab
            .iter()
            .map(|p| p.iter().map(|&i| v[i]).collect::<Vec<u64>>())
            .min()
            .expect("stabilizer contains the identity");
        dedup.insert(canon);
    }
    Ok(SolutionSet {
        symmetry,
        vectors: dedup.into_iter().collect(),
    })
}

/// A solution vector remembered together with the equation it solves;
/// identical tuples from different equations stay distinct contributors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedVector {
    pub equation: usize,
    pub vector: Vec<u64>,
}

/// Support-connected blocks of the union of all solution sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicePartition {
    pub blocks: Vec<Vec<TaggedVector>>,
}

/// Union-find grouping of solution vectors into support-connected blocks:
/// two vectors join a block when their value supports intersect. Singleton
/// blocks are allowed.
pub fn build_indice_partition(sols: &[SolutionSet]) -> IndicePartition {
    let tagged: Vec<TaggedVector> = sols
        .iter()
        .enumerate()
        .flat_map(|(e, s)| {
            s.vectors.iter().map(move |v| TaggedVector {
                equation: e,
                vector: v.clone(),
            })
        })
        .collect();

    let mut parent: Vec<usize> = (0..tagged.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // link vectors through shared support values
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (i, tv) in tagged.iter().enumerate() {
        for &val in tv.vector.iter() {
            match owner.get(&val) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, i));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    owner.insert(val, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<TaggedVector>> = BTreeMap::new();
    for (i, tv) in tagged.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(tv.clone());
    }
    let mut blocks: Vec<Vec<TaggedVector>> = groups.into_values().collect();
    blocks.sort_by_key(|b| {
        b.iter()
            .flat_map(|tv| tv.vector.iter().copied())
            .min()
            .unwrap_or(u64::MAX)
    });
    IndicePartition { blocks }
}

/// Full orbit of a tuple under coordinatewise unit multiplication.
pub fn u_m_star(ctx: &RingCtx, v: &[u64]) -> Vec<Vec<u64>> {
    let mut out: BTreeSet<Vec<u64>> = BTreeSet::new();
    let per_coord: Vec<Vec<u64>> = v.iter().map(|&x| ctx.orbit(x)).collect();
    let mut idx = vec![0usize; v.len()];
    loop {
        out.insert(
            idx.iter()
                .zip(&per_coord)
                .map(|(&i, orb)| orb[i])
                .collect(),
        );
        let mut done = true;
        for (slot, orb) in idx.iter_mut().zip(&per_coord) {
            *slot += 1;
            if *slot == orb.len() {
                *slot = 0;
            } else {
                done = false;
                break;
            }
        }
        if done {
            break;
        }
    }
    out.into_iter().collect()
}

/// Coordinatewise canonical classes of a tuple.
pub fn star_class_tuple(ctx: &RingCtx, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| ctx.star_class(x)).collect()
}

/// Orbit size with the freeness law enforced: the orbit of `v` must have
/// exactly `m^(n - occurrences of zero)` elements. A smaller orbit names the
/// unit power fixing some nonzero coordinate.
pub fn orbit_size_checked(ctx: &RingCtx, v: &[u64]) -> Result<usize> {
    let m = ctx.spec().m();
    let mut actual = 1usize;
    for &x in v {
        let orb = ctx.orbit(x).len();
        actual *= orb;
        if x != 0 && orb != m as usize {
            // find the least power of zeta fixing x
            let z = ctx.zeta();
            let mut factor = z;
            let mut power = 1u32;
            while ctx.mul(factor, x) != x {
                factor = ctx.mul(factor, z);
                power += 1;
            }
            return Err(Error::FreenessViolation {
                element: ctx.to_cyc(x).to_string(),
                found: orb,
                expected: m as usize,
                fixing_power: power,
            });
        }
    }
    let zeros = occurrences(v, 0);
    let expected = (m as usize).pow((v.len() - zeros) as u32);
    debug_assert_eq!(actual, expected);
    Ok(actual)
}

/// Membership count of a point from the composition of its values: the sum
/// of binomial-product counts over all deduplicated solutions.
pub fn h_of_point_sh(u: &[u64], sols: &[SolutionSet]) -> u64 {
    let a = CompositionIndex::of_tuple(u);
    sols.iter().map(|s| f_count_set(&a, &s.vectors)).sum()
}

/// Colored membership count: compositions are taken over orbit classes and
/// the counts weighted by powers of m.
pub fn h_of_point_csh(u: &[u64], sols: &[SolutionSet], ctx: &RingCtx) -> u64 {
    let m = ctx.spec().m();
    let classes = star_class_tuple(ctx, u);
    let a = CompositionIndex::of_tuple(&classes);
    sols.iter()
        .map(|s| f_colored_set(&a, &s.vectors, 0, m))
        .sum()
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// The closed multinomial form of the coboundary value at one ring.
///
/// Sums `multinomial(n, a) * t^(sum of counts)` over all compositions `a` of
/// n indexed by ring elements (plain) or orbit classes with the extra
/// `m^(n - a_0)` weight (colored), then divides by |R|^(n - r) exactly.
/// Compositions are enumerated only over values appearing in some solution;
/// the remaining values are absorbed into a single tail weight.
pub fn coboundary_closed_form(
    eqs: &[RepEquation],
    n: usize,
    spec: &RingSpec,
    symmetry: Symmetry,
    rank: usize,
) -> Result<IntPoly> {
    let ctx = RingCtx::new(spec);
    let m = spec.m();

    if symmetry == Symmetry::Colored {
        // the multinomial weights presume every nonzero element has a free
        // unit orbit; verify rather than assume
        for x in 1..ctx.size() {
            orbit_size_checked(&ctx, &[x])?;
        }
    }

    let mut sols = Vec::with_capacity(eqs.len());
    for eq in eqs {
        sols.push(solve_representative(eq, &ctx, symmetry)?);
    }

    // universe of composition keys
    let universe: Vec<u64> = match symmetry {
        Symmetry::Plain => (0..ctx.size()).collect(),
        Symmetry::Colored => ctx.star_classes(),
    };
    let mut keys: BTreeSet<u64> = sols
        .iter()
        .flat_map(|s| s.vectors.iter().flat_map(|v| v.iter().copied()))
        .collect();
    if symmetry == Symmetry::Colored {
        keys.insert(0); // the zero class always carries its m-power weight
    }
    let keys: Vec<u64> = keys.into_iter().collect();
    let key_pos: HashMap<u64, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let tail = universe.len() - keys.len();

    // translate solution vectors to (key position, occurrences) profiles
    struct Profile {
        occ: Vec<(usize, usize)>,
        len: usize,
        zero_occ: usize,
    }
    let profiles: Vec<Profile> = sols
        .iter()
        .flat_map(|s| s.vectors.iter())
        .map(|v| {
            let comp = CompositionIndex::of_tuple(v);
            Profile {
                occ: comp
                    .counts
                    .iter()
                    .map(|(&t, &o)| (key_pos[&t], o))
                    .collect(),
                len: v.len(),
                zero_occ: occurrences(v, 0),
            }
        })
        .collect();

    let exponent = |counts: &[usize]| -> u64 {
        profiles
            .iter()
            .map(|p| {
                let mut acc = 1u64;
                let mut all_zero_class = true;
                for &(pos, o) in &p.occ {
                    if keys[pos] != 0 {
                        all_zero_class = false;
                    }
                    acc *= binom(counts[pos], o);
                    if acc == 0 {
                        break;
                    }
                }
                match symmetry {
                    Symmetry::Plain => acc,
                    Symmetry::Colored => {
                        if all_zero_class {
                            // tuple supported on the zero class only
                            (m as u64).pow(p.len as u32 - 1) * acc
                        } else {
                            (m as u64).pow(p.zero_occ as u32) * acc
                        }
                    }
                }
            })
            .sum()
    };

    let n_fact = factorial(n);
    let mut terms: BTreeMap<u64, BigInt> = BTreeMap::new();
    let mut counts = vec![0usize; keys.len()];
    fn enumerate(
        idx: usize,
        remaining: usize,
        counts: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if idx == counts.len() {
            visit(counts);
            return;
        }
        for c in 0..=remaining {
            counts[idx] = c;
            enumerate(idx + 1, remaining - c, counts, visit);
        }
        counts[idx] = 0;
    }
    {
        let mut visit = |counts: &[usize]| {
            let used: usize = counts.iter().sum();
            let rest = n - used;
            // multinomial over the named keys and the free tail
            let mut denom = factorial(rest);
            for &c in counts {
                denom *= factorial(c);
            }
            let mut weight = &n_fact / denom;
            let tail_base = match symmetry {
                Symmetry::Plain => BigInt::from(tail as u64),
                Symmetry::Colored => BigInt::from(m as u64 * tail as u64),
            };
            weight *= tail_base.pow(rest as u32);
            if symmetry == Symmetry::Colored {
                let zero_count = key_pos.get(&0).map(|&p| counts[p]).unwrap_or(0);
                weight *= BigInt::from(m as u64).pow((used - zero_count) as u32);
            }
            if weight.is_zero() {
                return;
            }
            let e = exponent(counts);
            *terms.entry(e).or_insert_with(BigInt::zero) += weight;
        };
        enumerate(0, n, &mut counts, &mut visit);
    }

    let deg = terms.keys().max().copied().unwrap_or(0) as usize;
    let mut dense = vec![BigInt::zero(); deg + 1];
    for (e, c) in terms {
        dense[e as usize] = c;
    }
    let numerator = IntPoly::new(dense);
    let divisor = BigInt::from(spec.size()).pow((n - rank) as u32);
    numerator
        .div_exact_scalar(&divisor)
        .map_err(|_| Error::IdentityViolation {
            ring: spec.to_string(),
            detail: format!(
                "closed-form sum {} is not divisible by |R|^(n - r) = {}",
                numerator.display("t"),
                divisor
            ),
        })
}

/// All injective placements of `j` equation positions into `n` variables.
fn injective_tuples(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(j);
    let mut used = vec![false; n];
    fn go(
        j: usize,
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            used[i] = true;
            cur.push(i);
            go(j, n, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
    go(j, n, &mut cur, &mut used, &mut out);
    out
}

/// Expand representative equations into the arrangement they generate in
/// C^n: every injective placement of the variables, with every choice of
/// unit factors in the colored case, duplicates collapsed.
pub fn expand_equations(
    eqs: &[RepEquation],
    n: usize,
    symmetry: Symmetry,
) -> Result<Arrangement> {
    if eqs.is_empty() {
        return Err(Error::InvalidParameter("no representative equations".into()));
    }
    let m = eqs[0].order();
    let mut hyperplanes = Vec::new();
    for eq in eqs {
        if eq.order() != m {
            return Err(Error::IncompatibleRing(m, eq.order()));
        }
        let j = eq.arity();
        if j > n {
            return Err(Error::InvalidParameter(format!(
                "equation arity {} exceeds dimension {}",
                j, n
            )));
        }
        let unit_choices: Vec<Vec<u32>> = match symmetry {
            Symmetry::Plain => vec![vec![0; j]],
            Symmetry::Colored => {
                let mut out = Vec::new();
                let mut cur = vec![0u32; j];
                loop {
                    out.push(cur.clone());
                    let mut done = true;
                    for digit in cur.iter_mut() {
                        *digit += 1;
                        if *digit == m {
                            *digit = 0;
                        } else {
                            done = false;
                            break;
                        }
                    }
                    if done {
                        break;
                    }
                }
                out
            }
        };
        for placement in injective_tuples(n, j) {
            for units in &unit_choices {
                let mut coeffs = vec![CycElem::zero(m); n];
                for (k, &pos) in placement.iter().enumerate() {
                    let factor = CycElem::zeta_pow(m, units[k]);
                    coeffs[pos] = eq.coeffs()[k].checked_mul(&factor)?;
                }
                hyperplanes.push(Hyperplane::new(coeffs, eq.rhs().clone()));
            }
        }
    }
    Arrangement::new_dedup(m, n, hyperplanes)
}

const DECOMPOSE_PLAIN_DIM_CAP: usize = 6;
const DECOMPOSE_COLORED_DIM_CAP: usize = 4;

/// Group the hyperplanes of a symmetric arrangement into orbits of the
/// acting group and return one representative equation per orbit. Fails with
/// a diagnostic when the arrangement is not closed under the group.
pub fn decompose(arr: &Arrangement, symmetry: Symmetry) -> Result<Vec<RepEquation>> {
    let n = arr.dim();
    let m = arr.order();
    let cap = match symmetry {
        Symmetry::Plain => DECOMPOSE_PLAIN_DIM_CAP,
        Symmetry::Colored => DECOMPOSE_COLORED_DIM_CAP,
    };
    if n > cap {
        return Err(Error::NotSymmetric(format!(
            "orbit decomposition supports n <= {} for this symmetry",
            cap
        )));
    }
    if arr.is_empty() {
        return Err(Error::NotSymmetric("empty arrangement".into()));
    }
    let field = NumberField::new(m);

    let unit_choices: Vec<Vec<u32>> = match symmetry {
        Symmetry::Plain => vec![vec![0; n]],
        Symmetry::Colored => {
            let mut out = Vec::new();
            let mut cur = vec![0u32; n];
            loop {
                out.push(cur.clone());
                let mut done = true;
                for digit in cur.iter_mut() {
                    *digit += 1;
                    if *digit == m {
                        *digit = 0;
                    } else {
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            out
        }
    };
    let perms = permutations(n);

    // canonical orbit key: the least canonical form over the whole group
    let orbit_key = |h: &Hyperplane| -> Result<HyperplaneKey> {
        let mut best: Option<HyperplaneKey> = None;
        for perm in &perms {
            for units in &unit_choices {
                let mut coeffs = vec![CycElem::zero(m); n];
                for (k, &pos) in perm.iter().enumerate() {
                    let factor = CycElem::zeta_pow(m, units[k]);
                    coeffs[pos] = h.coeffs()[k].checked_mul(&factor)?;
                }
                let cand = Hyperplane::new(coeffs, h.rhs().clone());
                let key = cand.canonical_key(&field)?;
                if best.as_ref().is_none_or(|b| &key < b) {
                    best = Some(key);
                }
            }
        }
        Ok(best.expect("group is nonempty"))
    };

    let mut groups: BTreeMap<HyperplaneKey, Vec<usize>> = BTreeMap::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        groups.entry(orbit_key(h)?).or_default().push(i);
    }

    let mut eqs = Vec::new();
    for members in groups.values() {
        let h = &arr.hyperplanes()[members[0]];
        let support: Vec<usize> = h
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.from_cyc(c).is_zero())
            .map(|(i, _)| i)
            .collect();
        let coeffs: Vec<CycElem> = support.iter().map(|&i| h.coeffs()[i].clone()).collect();
        eqs.push(RepEquation::new(m, coeffs, h.rhs().clone())?);
    }

    // the equations must regenerate the arrangement exactly
    let regenerated = expand_equations(&eqs, n, symmetry)?;
    let key_set = |a: &Arrangement| -> Result<BTreeSet<HyperplaneKey>> {
        a.hyperplanes()
            .iter()
            .map(|h| h.canonical_key(&field))
            .collect()
    };
    if key_set(&regenerated)? != key_set(arr)? {
        return Err(Error::NotSymmetric(format!(
            "orbit expansion produces {} hyperplanes, the arrangement has {}",
            regenerated.len(),
            arr.len()
        )));
    }
    Ok(eqs)
}

/// Representative equations of the classical families, independent of the
/// ambient dimension.
pub fn braid_equations() -> Vec<RepEquation> {
    vec![RepEquation::from_i64(1, &[1, -1], 0).expect("static")]
}

pub fn type_b_equations() -> Vec<RepEquation> {
    vec![
        RepEquation::from_i64(1, &[1], 0).expect("static"),
        RepEquation::from_i64(1, &[1, -1], 0).expect("static"),
        RepEquation::from_i64(1, &[1, 1], 0).expect("static"),
    ]
}

pub fn type_d_equations() -> Vec<RepEquation> {
    vec![
        RepEquation::from_i64(1, &[1, -1], 0).expect("static"),
        RepEquation::from_i64(1, &[1, 1], 0).expect("static"),
    ]
}

pub fn type_i_equations() -> Vec<RepEquation> {
    vec![
        RepEquation::from_i64(1, &[1], 0).expect("static"),
        RepEquation::from_i64(1, &[1], 1).expect("static"),
        RepEquation::from_i64(1, &[1, 1], 1).expect("static"),
    ]
}

/// Representatives of G(m, p, n): the coordinate hyperplane (absent when
/// p = m) and the difference hyperplane.
pub fn g_equations(m: u32, p: u32) -> Result<Vec<RepEquation>> {
    if m < 1 || p < 1 || !m.is_multiple_of(p) {
        return Err(Error::InvalidFamily(format!(
            "G(m, p, n) requires p | m, got m = {}, p = {}",
            m, p
        )));
    }
    let mut eqs = Vec::new();
    if p != m {
        eqs.push(RepEquation::from_i64(m, &[1], 0)?);
    }
    eqs.push(RepEquation::from_i64(m, &[1, -1], 0)?);
    Ok(eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{family_b, family_g, family_i};
    use crate::finite_field::{coboundary_at_prime, point_count_histogram, ReducedArrangement};

    fn f5() -> RingCtx {
        RingCtx::new(&RingSpec::spanning(1, 5).unwrap())
    }

    fn f7_zeta3() -> RingCtx {
        RingCtx::new(&RingSpec::prime_field(3, 7).unwrap())
    }

    #[test]
    fn composition_basics() {
        assert_eq!(occurrences(&[3, 3], 3), 2);
        assert_eq!(support(&[3, 3]), BTreeSet::from([3]));
        let c = CompositionIndex::of_tuple(&[2, 4]);
        assert_eq!(c.count(2), 1);
        assert_eq!(c.count(4), 1);
        assert_eq!(c.norm(), 2);
        assert_eq!(support(&[]), BTreeSet::new());
    }

    #[test]
    fn f_count_examples() {
        // u = (2, 4, 4): a_2 = 1, a_4 = 2
        let a = CompositionIndex::of_tuple(&[2, 4, 4]);
        assert_eq!(f_count(&a, &[2, 4]), 2); // a_2 * a_4
        assert_eq!(f_count(&a, &[3, 3]), 0); // occurrences exceed counts
        assert_eq!(f_count(&a, &[4, 4]), 1); // binom(2, 2)
    }

    #[test]
    fn f_colored_examples() {
        // all-zero tuple of length 2 with m = 2 and a_0 = 3: 2 * binom(3, 2)
        let a = CompositionIndex::from_counts(BTreeMap::from([(0, 3)]));
        assert_eq!(f_colored(&a, &[0, 0], 0, 2), 6);

        // nonzero diagonal class: plain binomial, no m factor
        let a = CompositionIndex::from_counts(BTreeMap::from([(1, 3)]));
        assert_eq!(f_colored(&a, &[1, 1], 0, 5), 3); // binom(3, 2)

        // single zero with m = 3: 3^0 * binom(1, 1)
        let a = CompositionIndex::from_counts(BTreeMap::from([(0, 1)]));
        assert_eq!(f_colored(&a, &[0], 0, 3), 1);
    }

    #[test]
    fn solve_examples() {
        let ctx = f5();
        // z_1 + z_2 = 1 over F_5, deduplicated under the swap
        let eq = RepEquation::from_i64(1, &[1, 1], 1).unwrap();
        let sols = solve_representative(&eq, &ctx, Symmetry::Plain).unwrap();
        assert_eq!(sols.vectors, vec![vec![0, 1], vec![2, 4], vec![3, 3]]);

        // z_1 = 0
        let eq = RepEquation::from_i64(1, &[1], 0).unwrap();
        let sols = solve_representative(&eq, &ctx, Symmetry::Plain).unwrap();
        assert_eq!(sols.vectors, vec![vec![0]]);

        // z_1 - z_2 = 0 over F_7 with three color classes
        let ctx = f7_zeta3();
        let eq = RepEquation::from_i64(3, &[1, -1], 0).unwrap();
        let sols = solve_representative(&eq, &ctx, Symmetry::Colored).unwrap();
        assert_eq!(sols.vectors, vec![vec![0, 0], vec![1, 1], vec![3, 3]]);
    }

    #[test]
    fn colored_inhomogeneous_pairs_are_rejected() {
        let ctx = f7_zeta3();
        let eq = RepEquation::from_i64(3, &[1, 1], 3).unwrap();
        assert!(matches!(
            solve_representative(&eq, &ctx, Symmetry::Colored),
            Err(Error::InvalidParameter(_))
        ));
        // homogeneous pairs and inhomogeneous singles are fine
        assert!(solve_representative(&eq, &ctx, Symmetry::Plain).is_ok());
        let single = RepEquation::from_i64(3, &[2], 3).unwrap();
        assert!(solve_representative(&single, &ctx, Symmetry::Colored).is_ok());
    }

    #[test]
    fn projective_stabilizer_examples() {
        // z_1 + z_2 = 1: full swap symmetry
        let eq = RepEquation::from_i64(1, &[1, 1], 1).unwrap();
        assert_eq!(eq.projective_stabilizer().len(), 2);

        // z_1 - z_2 = 0: the swap flips the sign, allowed since d = 0
        let eq = RepEquation::from_i64(1, &[1, -1], 0).unwrap();
        assert_eq!(eq.projective_stabilizer().len(), 2);

        // z_1 - z_2 = 1: the sign flip no longer fixes d
        let eq = RepEquation::from_i64(1, &[1, -1], 1).unwrap();
        assert_eq!(eq.projective_stabilizer().len(), 1);
    }

    #[test]
    fn indice_partition_of_type_i() {
        let ctx = f5();
        let eqs = type_i_equations();
        let sols: Vec<SolutionSet> = eqs
            .iter()
            .map(|e| solve_representative(e, &ctx, Symmetry::Plain).unwrap())
            .collect();
        let part = build_indice_partition(&sols);
        assert_eq!(part.blocks.len(), 3);
        // first block: {0}, {1}, (0, 1) linked through shared values
        let block0: Vec<&Vec<u64>> = part.blocks[0].iter().map(|tv| &tv.vector).collect();
        assert_eq!(block0, vec![&vec![0], &vec![1], &vec![0, 1]]);
        assert_eq!(part.blocks[1], vec![TaggedVector { equation: 2, vector: vec![2, 4] }]);
        assert_eq!(part.blocks[2], vec![TaggedVector { equation: 2, vector: vec![3, 3] }]);
    }

    #[test]
    fn indice_partition_of_g() {
        let ctx = f7_zeta3();
        let eqs = g_equations(3, 1).unwrap();
        let sols: Vec<SolutionSet> = eqs
            .iter()
            .map(|e| solve_representative(e, &ctx, Symmetry::Colored).unwrap())
            .collect();
        let part = build_indice_partition(&sols);
        // one block {0, (0,0)}, plus a singleton per nonzero class
        assert_eq!(part.blocks.len(), 3);
        assert_eq!(part.blocks[0].len(), 2);
        assert_eq!(part.blocks[1].len(), 1);
        assert_eq!(part.blocks[2].len(), 1);
    }

    #[test]
    fn disjoint_supports_make_singletons() {
        let ctx = f5();
        let eq0 = RepEquation::from_i64(1, &[1], 2).unwrap();
        let eq1 = RepEquation::from_i64(1, &[1], 4).unwrap();
        let sols = vec![
            solve_representative(&eq0, &ctx, Symmetry::Plain).unwrap(),
            solve_representative(&eq1, &ctx, Symmetry::Plain).unwrap(),
        ];
        let part = build_indice_partition(&sols);
        assert_eq!(part.blocks.len(), 2);
        assert!(part.blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn orbit_examples() {
        let ctx = f7_zeta3();
        assert_eq!(u_m_star(&ctx, &[1]), vec![vec![1], vec![2], vec![4]]);
        assert_eq!(orbit_size_checked(&ctx, &[1]).unwrap(), 3);
        assert_eq!(orbit_size_checked(&ctx, &[1, 0]).unwrap(), 3);
        assert_eq!(orbit_size_checked(&ctx, &[0, 0]).unwrap(), 1);
        assert_eq!(u_m_star(&ctx, &[0, 0]), vec![vec![0, 0]]);
    }

    #[test]
    fn freeness_violation_is_reported() {
        // over F_5[w]/(w^3 - 1) the element 1 + w + w^2 is fixed by w
        let ctx = RingCtx::new(&RingSpec::spanning(3, 5).unwrap());
        let fixed = ctx
            .from_cyc(&CycElem::from_i64(3, &[1, 1, 1]).unwrap())
            .unwrap();
        let err = orbit_size_checked(&ctx, &[fixed]).unwrap_err();
        match err {
            Error::FreenessViolation { fixing_power, .. } => assert_eq!(fixing_power, 1),
            other => panic!("expected freeness violation, got {:?}", other),
        }
    }

    #[test]
    fn membership_count_from_composition() {
        // u = (0, 1, 2) lies on z_1 = 0, z_2 = 1 and z_1 + z_2 = 1
        let ctx = f5();
        let eqs = type_i_equations();
        let sols: Vec<SolutionSet> = eqs
            .iter()
            .map(|e| solve_representative(e, &ctx, Symmetry::Plain).unwrap())
            .collect();
        assert_eq!(h_of_point_sh(&[0, 1, 2], &sols), 3);
        // u = (2, 3, 3): only z_2 + z_3 = 1 holds
        assert_eq!(h_of_point_sh(&[2, 3, 3], &sols), 1);

        // every point agrees with the direct reduced-arrangement count
        let arr = family_i(3).unwrap();
        let spec = RingSpec::spanning(1, 5).unwrap();
        let red = ReducedArrangement::new(&arr, &spec).unwrap();
        for k in 0..red.domain_size() {
            let point = red.point(k);
            assert_eq!(
                h_of_point_sh(&point, &sols) as usize,
                red.membership_count(&point),
                "point {:?}",
                point
            );
        }
    }

    #[test]
    fn colored_membership_count() {
        let ctx = f7_zeta3();
        let eqs = g_equations(3, 3).unwrap();
        let sols: Vec<SolutionSet> = eqs
            .iter()
            .map(|e| solve_representative(e, &ctx, Symmetry::Colored).unwrap())
            .collect();
        // u = (1, 2): both coordinates in the class of 1, h = 1
        assert_eq!(h_of_point_csh(&[1, 2], &sols, &ctx), 1);

        let arr = family_g(3, 3, 2).unwrap();
        let spec = RingSpec::prime_field(3, 7).unwrap();
        let red = ReducedArrangement::new(&arr, &spec).unwrap();
        for k in 0..red.domain_size() {
            let point = red.point(k);
            assert_eq!(
                h_of_point_csh(&point, &sols, &ctx) as usize,
                red.membership_count(&point),
                "point {:?}",
                point
            );
        }
    }

    #[test]
    fn closed_form_matches_point_count_for_braid() {
        let spec = RingSpec::spanning(1, 5).unwrap();
        let got = coboundary_closed_form(&braid_equations(), 3, &spec, Symmetry::Plain, 2)
            .unwrap();
        assert_eq!(got, IntPoly::from_i64(&[12, 12, 0, 1]));
    }

    #[test]
    fn closed_form_matches_brute_force_for_b2_as_colored() {
        // G(2, 1, 2) is the B_2 arrangement
        let arr = family_b(2).unwrap();
        let spec = RingSpec::prime_field(2, 5).unwrap();
        let rank = arr.rank();
        let got =
            coboundary_closed_form(&g_equations(2, 1).unwrap(), 2, &spec, Symmetry::Colored, rank)
                .unwrap();
        let expected = coboundary_at_prime(&family_g(2, 1, 2).unwrap(), &spec).unwrap();
        assert_eq!(got, expected);
        let brute = arr
            .coboundary()
            .eval_first(&num_bigint::BigInt::from(5));
        assert_eq!(got, brute);
    }

    #[test]
    fn closed_form_trivial_at_n_zero() {
        let spec = RingSpec::spanning(1, 5).unwrap();
        let got = coboundary_closed_form(&type_i_equations(), 0, &spec, Symmetry::Plain, 0);
        // arity exceeds dimension is fine for the closed form: no placements
        assert_eq!(got.unwrap(), IntPoly::one());
    }

    #[test]
    fn expansion_regenerates_families() {
        let arr = expand_equations(&type_i_equations(), 3, Symmetry::Plain).unwrap();
        assert_eq!(arr, family_i(3).unwrap());

        let arr = expand_equations(&braid_equations(), 4, Symmetry::Plain).unwrap();
        assert_eq!(arr.len(), 6);

        let arr = expand_equations(&g_equations(3, 3).unwrap(), 2, Symmetry::Colored).unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(
            arr.canonical_set(),
            family_g(3, 3, 2).unwrap().canonical_set()
        );
    }

    #[test]
    fn decompose_recovers_representatives() {
        let eqs = decompose(&family_i(3).unwrap(), Symmetry::Plain).unwrap();
        assert_eq!(eqs.len(), 3);

        let eqs = decompose(&family_g(3, 3, 2).unwrap(), Symmetry::Colored).unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].arity(), 2);

        let eqs = decompose(&family_g(4, 2, 3).unwrap(), Symmetry::Colored).unwrap();
        assert_eq!(eqs.len(), 2);

        // a non-symmetric arrangement is rejected
        let lone = Arrangement::new(
            1,
            2,
            vec![Hyperplane::new(
                vec![CycElem::integer(1, 1), CycElem::integer(1, 2)],
                CycElem::zero(1),
            )],
        )
        .unwrap();
        assert!(matches!(
            decompose(&lone, Symmetry::Plain),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn closed_form_matches_point_count_for_i3() {
        let arr = family_i(3).unwrap();
        let spec = RingSpec::spanning(1, 7).unwrap();
        let rank = arr.rank();
        let got = coboundary_closed_form(&type_i_equations(), 3, &spec, Symmetry::Plain, rank)
            .unwrap();
        let red = ReducedArrangement::new(&arr, &spec).unwrap();
        let hist = point_count_histogram(&red);
        let expected = hist
            .to_poly()
            .div_exact_scalar(&num_bigint::BigInt::from(1))
            .unwrap();
        assert_eq!(got, expected, "rank n means no division at all");
    }
}
