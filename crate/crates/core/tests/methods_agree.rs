//! Cross-module agreement: the definitional sums, the point counts, and the
//! closed multinomial forms must produce identical values wherever all three
//! apply. Randomized symmetric arrangements are generated from representative
//! equations directly, so the instances go beyond the named families.
//!
//! The closed-form machinery needs the representative coefficients to be
//! compatible with value repetitions in solutions (every permutation fixing
//! a solution's values must fix the form up to a scalar), so the random
//! generator draws from the shapes with that property: single-variable
//! equations, equal-coefficient pairs, and opposite-coefficient pairs.

use num_bigint::BigInt;

use zetacob::arrangement::Arrangement;
use zetacob::cyclotomic::{l_of, CycElem, NumberField, RingCtx, RingSpec};
use zetacob::finite_field::{
    coboundary_at_prime, point_count_histogram, valid_specs, Backend, ReducedArrangement,
};
use zetacob::symmetric::{
    coboundary_closed_form, expand_equations, h_of_point_csh, h_of_point_sh,
    solve_representative, RepEquation, Symmetry,
};

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

fn random_cyc(rng: &mut Rng, m: u32) -> CycElem {
    let l = l_of(m).unwrap();
    CycElem::new(m, (0..l).map(|_| BigInt::from(rng.int_in(-2, 2))).collect()).unwrap()
}

fn random_nonzero_cyc(rng: &mut Rng, m: u32) -> CycElem {
    let field = NumberField::new(m);
    loop {
        let c = random_cyc(rng, m);
        if !field.from_cyc(&c).is_zero() {
            return c;
        }
    }
}

/// A random representative equation from the shapes the closed form covers.
///
/// Plain: one variable with any right-hand side, or an equal/opposite
/// coefficient pair (the swap then fixes the form up to a scalar). Colored:
/// additionally every two-variable equation must be homogeneous, since unit
/// factors rescale a nonzero right-hand side across the orbit and the
/// orbit-class counting no longer applies.
fn random_equation(rng: &mut Rng, m: u32, symmetry: Symmetry) -> RepEquation {
    let c = random_nonzero_cyc(rng, m);
    match rng.below(3) {
        0 => RepEquation::new(m, vec![c], random_cyc(rng, m)).unwrap(),
        1 => {
            let rhs = match symmetry {
                Symmetry::Plain => random_cyc(rng, m),
                Symmetry::Colored => CycElem::zero(m),
            };
            RepEquation::new(m, vec![c.clone(), c], rhs).unwrap()
        }
        _ => {
            let second = match symmetry {
                Symmetry::Plain => c.neg(),
                Symmetry::Colored => {
                    // z_1 - xi z_2 = 0 for a random unit xi
                    let xi = CycElem::zeta_pow(m, rng.below(m as u64) as u32);
                    c.checked_mul(&xi).unwrap().neg()
                }
            };
            let rhs = match symmetry {
                Symmetry::Plain => random_cyc(rng, m),
                Symmetry::Colored => CycElem::zero(m),
            };
            RepEquation::new(m, vec![c, second], rhs).unwrap()
        }
    }
}

#[test]
fn three_routes_agree_on_random_symmetric_arrangements() {
    let mut rng = Rng(0x0ff1c1a1);
    let mut done = 0usize;
    while done < 40 {
        let symmetry = if rng.below(2) == 0 {
            Symmetry::Plain
        } else {
            Symmetry::Colored
        };
        let m = match symmetry {
            Symmetry::Plain => [1u32, 2][rng.below(2) as usize],
            Symmetry::Colored => [2u32, 3, 4][rng.below(3) as usize],
        };
        let n = 2 + rng.below(2) as usize;
        let count = 1 + rng.below(2) as usize;
        let eqs: Vec<RepEquation> = (0..count)
            .map(|_| random_equation(&mut rng, m, symmetry))
            .collect();
        let Ok(arr) = expand_equations(&eqs, n, symmetry) else {
            continue;
        };
        if arr.is_empty() || arr.len() != expected_orbit_size(&eqs, n, symmetry, &arr) {
            // overlapping orbits make the equations an invalid decomposition
            continue;
        }

        let rank = arr.rank();
        let chi = arr.coboundary();
        let Ok(specs) = valid_specs(&arr, Backend::PrimeField, 2) else {
            continue;
        };
        for spec in &specs {
            let brute = chi.eval_first(&BigInt::from(spec.size()));
            let points = coboundary_at_prime(&arr, spec).unwrap();
            assert_eq!(points, brute, "point count over {}", spec);
            let closed = coboundary_closed_form(&eqs, n, spec, symmetry, rank).unwrap();
            assert_eq!(closed, brute, "closed form over {}", spec);
        }
        done += 1;
    }
}

/// The expansions of distinct representative equations must be disjoint for
/// the per-equation counting to be meaningful.
fn expected_orbit_size(
    eqs: &[RepEquation],
    n: usize,
    symmetry: Symmetry,
    _arr: &Arrangement,
) -> usize {
    eqs.iter()
        .map(|eq| {
            expand_equations(std::slice::from_ref(eq), n, symmetry)
                .map(|a| a.len())
                .unwrap_or(0)
        })
        .sum()
}

#[test]
fn membership_formula_exhaustive_on_small_domains() {
    // every point of the reduced space, for domains up to 7^3
    let mut rng = Rng(0xf00d);
    let mut done = 0usize;
    while done < 12 {
        let symmetry = if rng.below(2) == 0 {
            Symmetry::Plain
        } else {
            Symmetry::Colored
        };
        let m = match symmetry {
            Symmetry::Plain => 1u32,
            Symmetry::Colored => [2u32, 3][rng.below(2) as usize],
        };
        let n = 2 + rng.below(2) as usize;
        let eqs: Vec<RepEquation> = (0..1 + rng.below(2) as usize)
            .map(|_| random_equation(&mut rng, m, symmetry))
            .collect();
        let Ok(arr) = expand_equations(&eqs, n, symmetry) else {
            continue;
        };
        if arr.is_empty() || arr.len() != expected_orbit_size(&eqs, n, symmetry, &arr) {
            continue;
        }
        let Ok(mut specs) = valid_specs(&arr, Backend::PrimeField, 1) else {
            continue;
        };
        let spec = specs.remove(0);
        if spec.q() > 7 {
            continue;
        }
        let ctx = RingCtx::new(&spec);
        let red = ReducedArrangement::new(&arr, &spec).unwrap();
        let sols: Vec<_> = eqs
            .iter()
            .map(|eq| solve_representative(eq, &ctx, symmetry).unwrap())
            .collect();
        for k in 0..red.domain_size() {
            let point = red.point(k);
            let direct = red.membership_count(&point) as u64;
            let formula = match symmetry {
                Symmetry::Plain => h_of_point_sh(&point, &sols),
                Symmetry::Colored => h_of_point_csh(&point, &sols, &ctx),
            };
            assert_eq!(formula, direct, "point {:?} over {}", point, spec);
        }
        done += 1;
    }
}

#[test]
fn histogram_membership_redundant_paths_agree() {
    // h from the histogram equals testing hyperplanes one at a time
    let braidish = expand_equations(
        &[RepEquation::from_i64(1, &[1, -1], 0).unwrap()],
        3,
        Symmetry::Plain,
    )
    .unwrap();
    let spec = RingSpec::spanning(1, 5).unwrap();
    let red = ReducedArrangement::new(&braidish, &spec).unwrap();
    let hist = point_count_histogram(&red);
    let mut recount = std::collections::BTreeMap::new();
    for k in 0..red.domain_size() {
        let p = red.point(k);
        *recount.entry(red.membership_count(&p)).or_insert(0u64) += 1;
    }
    assert_eq!(&recount, hist.counts());
}
