//! Sampled loops: nonvanishing functions on an oriented circle, held as
//! uniform samples.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::exact::FactoredRational;

use super::branch::log_continuation;
use super::circle::OrientedCircle;
use super::{check_sample_count, LoopError, ADJACENCY_MARGIN};

/// `N` uniform samples of a smooth nonvanishing function along an oriented
/// circle. Sample `k` sits at parameter `θ_k = 2πk/N` in the positive
/// direction of the circle's orientation.
///
/// Construction validates that `N` is a power of two ≥ 16, that every sample
/// is nonzero and finite, and that adjacent samples stay within
/// `π − ADJACENCY_MARGIN` in argument — otherwise the loop is rejected as
/// under-sampled and the caller should raise `N`.
#[derive(Clone, Debug)]
pub struct SampledLoop {
    circle: OrientedCircle,
    samples: Vec<Complex64>,
    source: Option<FactoredRational>,
}

impl SampledLoop {
    /// Restriction of a rational function to a circle.
    ///
    /// Divisor points are checked against the contour exactly over ℚ before
    /// any sampling happens.
    pub fn restrict(
        f: &FactoredRational,
        circle: &OrientedCircle,
        n: usize,
    ) -> Result<Self, LoopError> {
        check_sample_count(n)?;
        for (root, _) in f.factors() {
            if circle.on_circle(root) {
                return Err(LoopError::DivisorOnContour {
                    point: root.clone(),
                });
            }
        }
        let samples = (0..n)
            .map(|k| f.eval_complex(circle.sample_point(k, n)))
            .collect();
        Self::validated(circle.clone(), samples, Some(f.clone()))
    }

    /// Samples an arbitrary smooth closure along the circle. No provenance
    /// is recorded, so pairings fall back to spectral differentiation.
    pub fn from_fn(
        circle: &OrientedCircle,
        n: usize,
        f: impl Fn(Complex64) -> Complex64,
    ) -> Result<Self, LoopError> {
        check_sample_count(n)?;
        let samples = (0..n).map(|k| f(circle.sample_point(k, n))).collect();
        Self::validated(circle.clone(), samples, None)
    }

    /// Wraps raw sample data, validating the loop invariants.
    pub fn from_samples(circle: OrientedCircle, samples: Vec<Complex64>) -> Result<Self, LoopError> {
        check_sample_count(samples.len())?;
        Self::validated(circle, samples, None)
    }

    fn validated(
        circle: OrientedCircle,
        samples: Vec<Complex64>,
        source: Option<FactoredRational>,
    ) -> Result<Self, LoopError> {
        let n = samples.len();
        for (index, s) in samples.iter().enumerate() {
            if !s.is_finite() {
                return Err(LoopError::NonFiniteSample { index });
            }
            if s.norm_sqr() == 0.0 {
                return Err(LoopError::ZeroSample { index });
            }
        }
        for index in 0..n {
            let jump = (samples[(index + 1) % n] / samples[index]).arg().abs();
            if jump >= PI - ADJACENCY_MARGIN {
                return Err(LoopError::UnderSampled { index, jump });
            }
        }
        Ok(Self {
            circle,
            samples,
            source,
        })
    }

    pub fn circle(&self) -> &OrientedCircle {
        &self.circle
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn source(&self) -> Option<&FactoredRational> {
        self.source.as_ref()
    }

    /// The same path traversed with the opposite orientation: sample `j` of
    /// the reversal is sample `(N−j) mod N` of the original.
    pub fn reversed(&self) -> Self {
        let n = self.len();
        let samples = (0..n).map(|j| self.samples[(n - j) % n]).collect();
        Self {
            circle: self.circle.reversed(),
            samples,
            source: self.source.clone(),
        }
    }

    /// Principal argument increments between consecutive samples, cyclically.
    pub(crate) fn arg_steps(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|k| (self.samples[(k + 1) % n] / self.samples[k]).arg())
            .collect()
    }

    /// Dumps `theta,re,im,arg_unwrapped` rows for plotting.
    pub fn to_csv(&self) -> String {
        let n = self.len();
        let branch = log_continuation(self, 0);
        let mut out = String::from("theta,re,im,arg_unwrapped\n");
        for (k, s) in self.samples.iter().enumerate() {
            let theta = TAU * (k as f64) / (n as f64);
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                theta,
                s.re,
                s.im,
                branch.values()[k].im
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn unit_circle() -> OrientedCircle {
        OrientedCircle::ccw(
            GaussianRational::zero(),
            BigRational::from_integer(BigInt::from(1)),
        )
        .unwrap()
    }

    #[test]
    fn restriction_of_z_samples_the_circle() {
        let f = FactoredRational::linear(GaussianRational::zero());
        let lp = SampledLoop::restrict(&f, &unit_circle(), 64).unwrap();
        for (k, s) in lp.samples().iter().enumerate() {
            let theta = TAU * (k as f64) / 64.0;
            assert!((s - Complex64::from_polar(1.0, theta)).norm() < 1e-14);
        }
    }

    #[test]
    fn constants_sample_constantly() {
        let f = FactoredRational::constant(GaussianRational::integer(5)).unwrap();
        let lp = SampledLoop::restrict(&f, &unit_circle(), 16).unwrap();
        assert!(lp
            .samples()
            .iter()
            .all(|s| (s - Complex64::new(5.0, 0.0)).norm() == 0.0));
    }

    #[test]
    fn divisor_point_on_contour_is_rejected_exactly() {
        let f = FactoredRational::linear(GaussianRational::integer(1));
        let err = SampledLoop::restrict(&f, &unit_circle(), 64).unwrap_err();
        assert!(matches!(err, LoopError::DivisorOnContour { .. }));

        // a rational point on the circle that floating arithmetic would miss
        let f = FactoredRational::linear(GaussianRational::ratio_pair(3, 5, 4, 5));
        let err = SampledLoop::restrict(&f, &unit_circle(), 64).unwrap_err();
        assert!(matches!(err, LoopError::DivisorOnContour { .. }));
    }

    #[test]
    fn under_sampling_is_detected() {
        // root within ~1.4e-5 of the chord between the first two of 16
        // samples, which forces a near-π argument jump across that chord
        let root = GaussianRational::ratio_pair(24, 25, 201, 1000);
        let f = FactoredRational::linear(root);
        let err = SampledLoop::restrict(&f, &unit_circle(), 16).unwrap_err();
        assert!(matches!(err, LoopError::UnderSampled { .. }));
        // raising N makes the same loop admissible
        assert!(SampledLoop::restrict(&f, &unit_circle(), 4096).is_ok());
    }

    #[test]
    fn sample_count_must_be_power_of_two() {
        let f = FactoredRational::linear(GaussianRational::zero());
        assert!(matches!(
            SampledLoop::restrict(&f, &unit_circle(), 48),
            Err(LoopError::BadSampleCount { n: 48 })
        ));
        assert!(matches!(
            SampledLoop::restrict(&f, &unit_circle(), 8),
            Err(LoopError::BadSampleCount { n: 8 })
        ));
    }

    #[test]
    fn zero_samples_are_rejected() {
        let circle = unit_circle();
        let mut samples: Vec<Complex64> = (0..16)
            .map(|k| Complex64::from_polar(1.0, TAU * (k as f64) / 16.0 / 8.0))
            .collect();
        samples[3] = Complex64::new(0.0, 0.0);
        assert!(matches!(
            SampledLoop::from_samples(circle, samples),
            Err(LoopError::ZeroSample { index: 3 })
        ));
    }

    #[test]
    fn reversal_reindexes_the_path() {
        let f: FactoredRational = "(z-3)".parse().unwrap();
        let lp = SampledLoop::restrict(&f, &unit_circle(), 32).unwrap();
        let rev = lp.reversed();
        assert_eq!(rev.circle().orientation(), super::super::Orientation::Cw);
        for j in 0..32 {
            assert_eq!(rev.samples()[j], lp.samples()[(32 - j) % 32]);
        }
        assert_eq!(rev.reversed().samples(), lp.samples());
    }

    #[test]
    fn csv_dump_has_header_and_rows() {
        let f = FactoredRational::linear(GaussianRational::zero());
        let lp = SampledLoop::restrict(&f, &unit_circle(), 16).unwrap();
        let csv = lp.to_csv();
        assert!(csv.starts_with("theta,re,im,arg_unwrapped\n"));
        assert_eq!(csv.lines().count(), 17);
    }
}
