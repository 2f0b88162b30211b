//! Deterministic generators for the randomized verification suites.
//!
//! Everything is driven by a seeded RNG so that property runs are exactly
//! reproducible. Generated geometry keeps every divisor point at exact
//! rational distance-squared margins from the contours it meets, which keeps
//! the quadrature comfortably converged at the default sample counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bordered::{tame_circle_oracle, BorderedDomain};
use crate::exact::{tame_symbol, FactoredRational, GaussianRational, SpherePoint};
use crate::loops::{pairing_oracle, OrientedCircle};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact symbol values can reach magnitudes like 10¹⁰, where an absolute
/// double-precision comparison at 1e−8 is meaningless. Numeric suites only
/// accept configurations whose exact expected values have magnitude in
/// `[1e−2, 1e2]`, checked over ℚ.
fn magnitude_moderate(value: &GaussianRational) -> bool {
    let n = value.norm_sqr();
    n >= rat(1, 10_000) && n <= rat(10_000, 1)
}

/// Seeded source of random functions, circles, and domains.
pub struct Sampler {
    rng: StdRng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    /// The root pool used by the randomized identities:
    /// `{0, ±1, ±2, ±i, 1±i, 1/2, 3}`.
    pub fn root_pool() -> Vec<GaussianRational> {
        vec![
            GaussianRational::integer(0),
            GaussianRational::integer(1),
            GaussianRational::integer(-1),
            GaussianRational::integer(2),
            GaussianRational::integer(-2),
            GaussianRational::i(),
            -GaussianRational::i(),
            GaussianRational::ratio_pair(1, 1, 1, 1),
            GaussianRational::ratio_pair(1, 1, -1, 1),
            GaussianRational::ratio(1, 2),
            GaussianRational::integer(3),
        ]
    }

    /// Nonzero units for generated functions.
    pub fn unit_pool() -> Vec<GaussianRational> {
        vec![
            GaussianRational::one(),
            GaussianRational::integer(-1),
            GaussianRational::integer(2),
            GaussianRational::ratio(1, 2),
            GaussianRational::i(),
            GaussianRational::ratio_pair(1, 1, 1, 1),
            GaussianRational::ratio_pair(-2, 1, 1, 3),
        ]
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.random_range(0..items.len())]
    }

    /// Nonzero multiplicity in `[−3, 3]`.
    pub fn multiplicity(&mut self) -> i64 {
        let m = self.rng.random_range(1..=3);
        if self.rng.random_bool(0.5) {
            m
        } else {
            -m
        }
    }

    /// Random factored rational with pool roots and small multiplicities.
    pub fn rational_function(&mut self) -> FactoredRational {
        let pool = Self::root_pool();
        let units = Self::unit_pool();
        let count = self.rng.random_range(1..=4);
        let factors: Vec<(GaussianRational, i64)> = (0..count)
            .map(|_| (self.pick(&pool).clone(), self.multiplicity()))
            .collect();
        FactoredRational::from_parts(self.pick(&units).clone(), factors)
            .expect("units are nonzero")
    }

    pub fn rational_pair(&mut self) -> (FactoredRational, FactoredRational) {
        (self.rational_function(), self.rational_function())
    }

    /// A circle whose contour keeps an exact margin of a quarter radius from
    /// every divisor point of the given functions: each point `p` satisfies
    /// `|p−c|² ≤ (3r/4)²` or `|p−c|² ≥ (5r/4)²` over ℚ.
    pub fn circle_with_margin(&mut self, functions: &[&FactoredRational]) -> OrientedCircle {
        let centers = [
            GaussianRational::integer(0),
            GaussianRational::integer(1),
            GaussianRational::i(),
            GaussianRational::ratio(1, 2),
            GaussianRational::integer(-1),
        ];
        let radii = [rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1), rat(3, 1)];
        for _ in 0..500 {
            let center = self.pick(&centers).clone();
            let radius = self.pick(&radii).clone();
            let inner = &radius * &rat(3, 4);
            let outer = &radius * &rat(5, 4);
            let ok = functions.iter().all(|f| {
                f.factors().all(|(root, _)| {
                    let d2 = (root - &center).norm_sqr();
                    d2 <= &inner * &inner || d2 >= &outer * &outer
                })
            });
            if ok {
                return OrientedCircle::ccw(center, radius).expect("pool radii are positive");
            }
        }
        panic!("no margin circle found for the generated functions");
    }

    /// A pair `(f, g)` together with a circle that strictly encloses exactly
    /// one divisor point of the pair, returned with that point. All other
    /// divisor points stay at least one radius away from the contour, and
    /// the exact tame symbol at the point has moderate magnitude.
    pub fn isolated_point_config(
        &mut self,
    ) -> (
        FactoredRational,
        FactoredRational,
        OrientedCircle,
        GaussianRational,
    ) {
        for _ in 0..5000 {
            let (f, g) = self.rational_pair();
            let mut points: Vec<GaussianRational> =
                f.factors().chain(g.factors()).map(|(r, _)| r.clone()).collect();
            points.sort();
            points.dedup();
            let target = self.pick(&points).clone();
            // pool points are at distance ≥ 1/2 from each other, so a radius
            // of 1/4 around one of them encloses it alone with margin 1/4
            let radius = rat(1, 4);
            let circle = OrientedCircle::ccw(target.clone(), radius).expect("positive radius");
            let isolated = points.iter().all(|p| {
                let d2 = (p - &target).norm_sqr();
                *p == target || d2 >= rat(1, 4)
            });
            if !isolated {
                continue;
            }
            if !magnitude_moderate(&tame_symbol(&f, &g, &SpherePoint::Finite(target.clone()))) {
                continue;
            }
            return (f, g, circle, target);
        }
        panic!("no isolated-point configuration found");
    }

    /// A pair `(f, g)` and a margin circle whose exact pairing oracle has
    /// moderate magnitude — the staple configuration for quadrature suites
    /// with absolute tolerances.
    pub fn margin_pair(&mut self) -> (FactoredRational, FactoredRational, OrientedCircle) {
        for _ in 0..5000 {
            let (f, g) = self.rational_pair();
            let circle = self.circle_with_margin(&[&f, &g]);
            let oracle = pairing_oracle(&f, &g, &circle).expect("margin circle avoids divisors");
            if magnitude_moderate(&oracle) {
                return (f, g, circle);
            }
        }
        panic!("no moderate margin pair found");
    }

    /// A further function that respects the margin of an existing circle and
    /// pairs moderately against `g` there. Used by multiplicativity suites.
    pub fn companion_function(
        &mut self,
        g: &FactoredRational,
        circle: &OrientedCircle,
    ) -> FactoredRational {
        let inner = circle.radius() * &rat(3, 4);
        let outer = circle.radius() * &rat(5, 4);
        for _ in 0..5000 {
            let candidate = self.rational_function();
            let margins = candidate.factors().all(|(root, _)| {
                let d2 = (root - circle.center()).norm_sqr();
                d2 <= &inner * &inner || d2 >= &outer * &outer
            });
            if !margins {
                continue;
            }
            let oracle =
                pairing_oracle(&candidate, g, circle).expect("margin keeps divisors off contour");
            if magnitude_moderate(&oracle) {
                return candidate;
            }
        }
        panic!("no moderate companion function found");
    }

    /// A random bordered domain with up to `max_holes` holes, drawn from a
    /// catalog of exactly-validated placements.
    pub fn domain(&mut self, max_holes: usize) -> BorderedDomain {
        let hole_slots = [
            (GaussianRational::integer(0), rat(1, 2)),
            (GaussianRational::integer(1), rat(1, 4)),
            (GaussianRational::integer(-1), rat(1, 4)),
            (GaussianRational::i(), rat(1, 4)),
            (-GaussianRational::i(), rat(1, 4)),
        ];
        let outer_radius = if self.rng.random_bool(0.5) {
            rat(2, 1)
        } else {
            rat(3, 1)
        };
        loop {
            let hole_count = self.rng.random_range(0..=max_holes.min(hole_slots.len()));
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < hole_count {
                let slot = self.rng.random_range(0..hole_slots.len());
                if !picked.contains(&slot) {
                    picked.push(slot);
                }
            }
            picked.sort();
            let holes: Vec<OrientedCircle> = picked
                .iter()
                .map(|&slot| {
                    let (center, radius) = &hole_slots[slot];
                    OrientedCircle::ccw(center.clone(), radius.clone())
                        .expect("catalog radii are positive")
                })
                .collect();
            let outer = OrientedCircle::ccw(GaussianRational::zero(), outer_radius.clone())
                .expect("positive radius");
            if let Ok(domain) = BorderedDomain::new(outer, holes) {
                return domain;
            }
        }
    }

    /// A root admissible for the domain with comfortable exact margins:
    /// strictly inside a hole at no more than half its radius from the
    /// center, or outside the outer circle at half a radius or more.
    pub fn admissible_root(&mut self, domain: &BorderedDomain) -> GaussianRational {
        let use_hole = !domain.holes().is_empty() && self.rng.random_bool(0.5);
        if use_hole {
            let hole = self
                .pick(domain.holes())
                .clone();
            let offsets = [
                GaussianRational::integer(0),
                GaussianRational::one(),
                GaussianRational::integer(-1),
                GaussianRational::i(),
                -GaussianRational::i(),
            ];
            let direction = self.pick(&offsets).clone();
            let shrink = GaussianRational::from_real(hole.radius() * &rat(1, 2));
            hole.center() + &(&direction * &shrink)
        } else {
            let directions = [
                GaussianRational::integer(1),
                GaussianRational::integer(-1),
                GaussianRational::i(),
                -GaussianRational::i(),
                GaussianRational::ratio_pair(1, 1, 1, 1),
                GaussianRational::ratio_pair(-1, 1, 1, 1),
            ];
            let direction = self.pick(&directions).clone();
            let reach = GaussianRational::from_real(domain.outer().radius() * &rat(3, 2));
            domain.outer().center() + &(&direction * &reach)
        }
    }

    /// A function admissible on the domain by construction.
    pub fn admissible_function(&mut self, domain: &BorderedDomain) -> FactoredRational {
        let units = Self::unit_pool();
        let count = self.rng.random_range(1..=3);
        let factors: Vec<(GaussianRational, i64)> = (0..count)
            .map(|_| (self.admissible_root(domain), self.multiplicity()))
            .collect();
        let f = FactoredRational::from_parts(self.pick(&units).clone(), factors)
            .expect("units are nonzero");
        debug_assert!(domain.admissible(&f));
        f
    }

    /// A full randomized admissible configuration whose per-circle oracle
    /// values all have moderate magnitude.
    pub fn admissible_config(
        &mut self,
        max_holes: usize,
    ) -> (BorderedDomain, FactoredRational, FactoredRational) {
        for _ in 0..5000 {
            let domain = self.domain(max_holes);
            let f = self.admissible_function(&domain);
            let g = self.admissible_function(&domain);
            let oracles =
                tame_circle_oracle(&f, &g, &domain).expect("generated configs are admissible");
            if oracles.iter().all(magnitude_moderate) {
                return (domain, f, g);
            }
        }
        panic!("no moderate admissible configuration found");
    }
}
