//! Truncated power series over Gaussian rationals.
//!
//! Fixed-length exact series used by the residue machinery: enough terms to
//! read one Laurent coefficient, nothing symbolic.

use super::gaussian::GaussianRational;

/// Coefficients `c₀ + c₁t + … + c_{L−1}t^{L−1}`, truncation length `L ≥ 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct TruncatedSeries {
    coeffs: Vec<GaussianRational>,
}

impl TruncatedSeries {
    pub(crate) fn constant(value: GaussianRational, len: usize) -> Self {
        assert!(len >= 1, "series length must be positive");
        let mut coeffs = vec![GaussianRational::zero(); len];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The monic linear series `c₀ + t`.
    pub(crate) fn monic_linear(constant: GaussianRational, len: usize) -> Self {
        let mut series = Self::constant(constant, len);
        if len > 1 {
            series.coeffs[1] = GaussianRational::one();
        }
        Self {
            coeffs: series.coeffs,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub(crate) fn coeff(&self, k: usize) -> &GaussianRational {
        &self.coeffs[k]
    }

    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        let len = self.len();
        let mut coeffs = vec![GaussianRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(len - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub(crate) fn inverse(&self) -> Self {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "series with zero constant term has no inverse");
        let c0_inv = c0.inv();
        let len = self.len();
        let mut coeffs = vec![GaussianRational::zero(); len];
        coeffs[0] = c0_inv.clone();
        for k in 1..len {
            let mut acc = GaussianRational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || coeffs[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &coeffs[k - j]);
            }
            coeffs[k] = -&(&c0_inv * &acc);
        }
        Self { coeffs }
    }

    pub(crate) fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::constant(GaussianRational::one(), self.len());
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(GaussianRational::one(), self.len());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::integer(n)
    }

    #[test]
    fn inverse_of_two_plus_t() {
        // 1/(2+t) = 1/2 − t/4 + t²/8 − t³/16
        let s = TruncatedSeries::monic_linear(g(2), 4);
        let inv = s.inverse();
        assert_eq!(*inv.coeff(0), GaussianRational::ratio(1, 2));
        assert_eq!(*inv.coeff(1), GaussianRational::ratio(-1, 4));
        assert_eq!(*inv.coeff(2), GaussianRational::ratio(1, 8));
        assert_eq!(*inv.coeff(3), GaussianRational::ratio(-1, 16));
        // s · s⁻¹ = 1 up to truncation
        let prod = s.mul(&inv);
        assert_eq!(*prod.coeff(0), g(1));
        assert_eq!(*prod.coeff(1), g(0));
        assert_eq!(*prod.coeff(2), g(0));
        assert_eq!(*prod.coeff(3), g(0));
    }

    #[test]
    fn negative_power_matches_inverse_power() {
        let s = TruncatedSeries::monic_linear(g(3), 5);
        assert_eq!(s.pow(-2), s.inverse().mul(&s.inverse()));
    }
}
