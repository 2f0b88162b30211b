//! Rational functions in factored normal form.
//!
//! A `FactoredRational` is `unit · ∏ (z − root)^multiplicity` with a nonzero
//! Gaussian-rational unit, pairwise distinct roots, and nonzero integer
//! multiplicities. The representation is closed under multiplication,
//! division, and integer powers, and it carries the divisor of the function
//! exactly — no root finding is ever needed.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::str::FromStr;

use num_complex::Complex64;

use super::divisor::Divisor;
use super::gaussian::GaussianRational;
use super::parser::{parse_rational, ParseError};
use super::point::SpherePoint;
use super::ExactError;

#[derive(Clone, PartialEq, Eq)]
pub struct FactoredRational {
    unit: GaussianRational,
    factors: BTreeMap<GaussianRational, i64>,
}

impl FactoredRational {
    /// The constant function 1.
    pub fn one() -> Self {
        Self {
            unit: GaussianRational::one(),
            factors: BTreeMap::new(),
        }
    }

    /// A nonzero constant function.
    pub fn constant(value: GaussianRational) -> Result<Self, ExactError> {
        if value.is_zero() {
            return Err(ExactError::ZeroUnit);
        }
        Ok(Self {
            unit: value,
            factors: BTreeMap::new(),
        })
    }

    /// The monic linear function `z − root`.
    pub fn linear(root: GaussianRational) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert(root, 1);
        Self {
            unit: GaussianRational::one(),
            factors,
        }
    }

    /// Builds normal form from a unit and a factor list, merging duplicate
    /// roots and dropping zero multiplicities.
    pub fn from_parts(
        unit: GaussianRational,
        factors: impl IntoIterator<Item = (GaussianRational, i64)>,
    ) -> Result<Self, ExactError> {
        if unit.is_zero() {
            return Err(ExactError::ZeroUnit);
        }
        let mut map: BTreeMap<GaussianRational, i64> = BTreeMap::new();
        for (root, mult) in factors {
            if mult == 0 {
                continue;
            }
            match map.entry(root) {
                Entry::Vacant(slot) => {
                    slot.insert(mult);
                }
                Entry::Occupied(mut slot) => {
                    *slot.get_mut() += mult;
                    if *slot.get() == 0 {
                        slot.remove();
                    }
                }
            }
        }
        Ok(Self { unit, factors: map })
    }

    pub fn unit(&self) -> &GaussianRational {
        &self.unit
    }

    pub fn factors(&self) -> impl Iterator<Item = (&GaussianRational, i64)> {
        self.factors.iter().map(|(r, m)| (r, *m))
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of all finite multiplicities (degree of numerator minus denominator).
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    /// Order of zero (negative for a pole) at a sphere point. The
    /// multiplicity at infinity is minus the sum of the finite ones, so the
    /// full divisor always has degree zero.
    pub fn valuation(&self, point: &SpherePoint) -> i64 {
        match point {
            SpherePoint::Finite(p) => self.factors.get(p).copied().unwrap_or(0),
            SpherePoint::Infinity => -self.degree(),
        }
    }

    /// Exact value at a finite point where the function is regular and
    /// nonvanishing.
    pub fn eval(&self, point: &GaussianRational) -> Result<GaussianRational, ExactError> {
        if self.factors.contains_key(point) {
            return Err(ExactError::PoleOrZeroAtEval(point.clone()));
        }
        let mut acc = self.unit.clone();
        for (root, mult) in &self.factors {
            acc = &acc * &(point - root).pow(*mult);
        }
        Ok(acc)
    }

    /// Floating-point value at an arbitrary complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = self.unit.to_complex();
        for (root, mult) in &self.factors {
            let e = i32::try_from(*mult).expect("multiplicity fits in i32");
            acc *= (z - root.to_complex()).powi(e);
        }
        acc
    }

    /// The exact divisor, including the point at infinity when its
    /// multiplicity is nonzero.
    pub fn divisor(&self) -> Divisor {
        let mut entries: BTreeMap<SpherePoint, i64> = self
            .factors
            .iter()
            .map(|(root, mult)| (SpherePoint::Finite(root.clone()), *mult))
            .collect();
        let at_infinity = -self.degree();
        if at_infinity != 0 {
            entries.insert(SpherePoint::Infinity, at_infinity);
        }
        Divisor::from_map(entries)
    }

    /// Exact integer power.
    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        Self {
            unit: self.unit.pow(n),
            factors: self
                .factors
                .iter()
                .map(|(root, mult)| (root.clone(), mult * n))
                .collect(),
        }
    }

    /// Exact reciprocal.
    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// The factored form of `f(1/w)` as a rational function of `w`.
    ///
    /// Sends each nonzero root `a` to `1/a` (absorbing `(−a)^m` into the
    /// unit) and collects the total power of `w` at zero. Applying it twice
    /// returns the original function.
    pub fn substitute_infinity(&self) -> Self {
        let mut unit = self.unit.clone();
        let mut factors: BTreeMap<GaussianRational, i64> = BTreeMap::new();
        for (root, mult) in &self.factors {
            if root.is_zero() {
                continue;
            }
            unit = &unit * &(-root).pow(*mult);
            factors.insert(root.inv(), *mult);
        }
        let at_zero = -self.degree();
        if at_zero != 0 {
            factors.insert(GaussianRational::zero(), at_zero);
        }
        Self { unit, factors }
    }
}

impl Mul for &FactoredRational {
    type Output = FactoredRational;
    fn mul(self, rhs: &FactoredRational) -> FactoredRational {
        let unit = &self.unit * &rhs.unit;
        FactoredRational::from_parts(
            unit,
            self.factors()
                .chain(rhs.factors())
                .map(|(r, m)| (r.clone(), m)),
        )
        .expect("product of nonzero units is nonzero")
    }
}

impl Div for &FactoredRational {
    type Output = FactoredRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FactoredRational) -> FactoredRational {
        self * &rhs.inv()
    }
}

impl Mul for FactoredRational {
    type Output = FactoredRational;
    fn mul(self, rhs: FactoredRational) -> FactoredRational {
        &self * &rhs
    }
}

impl Div for FactoredRational {
    type Output = FactoredRational;
    fn div(self, rhs: FactoredRational) -> FactoredRational {
        &self / &rhs
    }
}

impl Neg for &FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        FactoredRational {
            unit: -&self.unit,
            factors: self.factors.clone(),
        }
    }
}

impl Neg for FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        FactoredRational {
            unit: -self.unit,
            factors: self.factors,
        }
    }
}

impl FromStr for FactoredRational {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse_rational(text)
    }
}

impl fmt::Display for FactoredRational {
    /// Prints in the expression grammar so that parsing the output
    /// reproduces the value exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.unit);
        }
        let mut lead = true;
        if !self.unit.is_one() {
            write!(f, "{}", self.unit)?;
            lead = false;
        }
        for (root, mult) in &self.factors {
            if !lead {
                write!(f, " * ")?;
            }
            lead = false;
            if root.is_zero() && *mult == 1 {
                write!(f, "z")?;
            } else {
                write!(f, "(z-{})", root)?;
                if *mult != 1 {
                    write!(f, "^{}", mult)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::integer(n)
    }

    #[test]
    fn eval_direct_substitution() {
        // f = z − 2 at 3 → 1
        let f = FactoredRational::linear(g(2));
        assert_eq!(f.eval(&g(3)).unwrap(), g(1));

        // f = 2(z−1)² at 0 → 2
        let f = FactoredRational::from_parts(g(2), [(g(1), 2)]).unwrap();
        assert_eq!(f.eval(&g(0)).unwrap(), g(2));
    }

    #[test]
    fn eval_rejects_pole() {
        let f = FactoredRational::linear(GaussianRational::i()).inv();
        let err = f.eval(&GaussianRational::i()).unwrap_err();
        assert!(matches!(err, ExactError::PoleOrZeroAtEval(_)));
    }

    #[test]
    fn valuation_cases() {
        let f = FactoredRational::from_parts(g(1), [(g(1), 2)]).unwrap();
        assert_eq!(f.valuation(&SpherePoint::from(1)), 2);
        assert_eq!(f.valuation(&SpherePoint::from(0)), 0);

        let z = FactoredRational::linear(g(0));
        assert_eq!(z.valuation(&SpherePoint::Infinity), -1);

        let c = FactoredRational::constant(g(5)).unwrap();
        assert_eq!(c.valuation(&SpherePoint::from(3)), 0);
        assert_eq!(c.valuation(&SpherePoint::Infinity), 0);
    }

    #[test]
    fn divisor_examples() {
        let z = FactoredRational::linear(g(0));
        let d = z.divisor();
        assert_eq!(d.multiplicity(&SpherePoint::from(0)), 1);
        assert_eq!(d.multiplicity(&SpherePoint::Infinity), -1);
        assert_eq!(d.degree(), 0);

        let f = &FactoredRational::linear(g(1)) / &FactoredRational::linear(g(-1));
        let d = f.divisor();
        assert_eq!(d.multiplicity(&SpherePoint::from(1)), 1);
        assert_eq!(d.multiplicity(&SpherePoint::from(-1)), -1);
        assert_eq!(d.multiplicity(&SpherePoint::Infinity), 0);
        assert_eq!(d.len(), 2);

        let c = FactoredRational::constant(g(7)).unwrap();
        assert!(c.divisor().is_empty());
    }

    #[test]
    fn multiplication_cancels_to_normal_form() {
        let f = FactoredRational::linear(g(1));
        let prod = &f * &f.inv();
        assert_eq!(prod, FactoredRational::one());
    }

    #[test]
    fn substitute_infinity_examples() {
        // z → w⁻¹
        let z = FactoredRational::linear(g(0));
        assert_eq!(z.substitute_infinity(), z.inv());

        // (z−1) → −(w−1)·w⁻¹
        let f = FactoredRational::linear(g(1));
        let expected = FactoredRational::from_parts(g(-1), [(g(1), 1), (g(0), -1)]).unwrap();
        assert_eq!(f.substitute_infinity(), expected);

        // constants are fixed
        let c = FactoredRational::constant(g(9)).unwrap();
        assert_eq!(c.substitute_infinity(), c);
    }

    #[test]
    fn substitute_infinity_is_an_involution() {
        let f = FactoredRational::from_parts(
            GaussianRational::ratio(2, 3),
            [(g(1), 2), (GaussianRational::i(), -1), (g(0), 3)],
        )
        .unwrap();
        assert_eq!(f.substitute_infinity().substitute_infinity(), f);
    }

    #[test]
    fn divisor_degree_is_always_zero() {
        let f = FactoredRational::from_parts(g(4), [(g(2), -3), (g(1), 1)]).unwrap();
        assert_eq!(f.divisor().degree(), 0);
    }
}
