//! Winding numbers and logarithm branches along sampled loops.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::sampled::SampledLoop;
use super::{LoopError, WINDING_DEFECT_LIMIT};

/// Winding number of the loop around the origin: the total turn of the
/// samples divided by 2π, rounded to the nearest integer.
///
/// For a closed cyclic sequence the principal arguments of consecutive
/// ratios sum to an exact multiple of 2π, so the rounding defect only
/// measures floating-point drift; a defect past `WINDING_DEFECT_LIMIT`
/// signals under-sampling.
pub fn winding_number(lp: &SampledLoop) -> Result<i64, LoopError> {
    let turns: f64 = lp.arg_steps().iter().sum::<f64>() / TAU;
    let rounded = turns.round();
    let defect = (turns - rounded).abs();
    if defect >= WINDING_DEFECT_LIMIT {
        return Err(LoopError::AmbiguousWinding { defect });
    }
    Ok(rounded as i64)
}

/// A branch of the logarithm along a sampled loop, continued from a base
/// sample.
///
/// `values[base_index]` is the principal logarithm of the sample there, and
/// consecutive values differ by the principal logarithm of the sample
/// ratio. Going all the way around, the branch gains `2πi·ν`.
#[derive(Clone, Debug)]
pub struct LogBranch {
    base_index: usize,
    values: Vec<Complex64>,
}

impl LogBranch {
    pub fn base_index(&self) -> usize {
        self.base_index
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Continues the logarithm around the loop starting from the principal value
/// at `base_index`. The real part is taken directly from the sample modulus;
/// only the argument needs continuation.
pub fn log_continuation(lp: &SampledLoop, base_index: usize) -> LogBranch {
    let n = lp.len();
    assert!(base_index < n, "base index {base_index} out of range for {n} samples");
    let samples = lp.samples();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let mut arg = samples[base_index].arg();
    values[base_index] = Complex64::new(samples[base_index].norm().ln(), arg);
    for j in 1..n {
        let idx = (base_index + j) % n;
        let prev = (base_index + j - 1) % n;
        arg += (samples[idx] / samples[prev]).arg();
        values[idx] = Complex64::new(samples[idx].norm().ln(), arg);
    }
    LogBranch { base_index, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{FactoredRational, GaussianRational};
    use crate::loops::circle::OrientedCircle;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn unit_circle() -> OrientedCircle {
        OrientedCircle::ccw(
            GaussianRational::zero(),
            BigRational::from_integer(BigInt::from(1)),
        )
        .unwrap()
    }

    fn power_loop(k: i64, n: usize) -> SampledLoop {
        let f = FactoredRational::linear(GaussianRational::zero()).pow(k);
        SampledLoop::restrict(&f, &unit_circle(), n).unwrap()
    }

    #[test]
    fn winding_of_power_loops() {
        for k in -3..=3 {
            let lp = power_loop(k, 64);
            assert_eq!(winding_number(&lp).unwrap(), k, "winding of e^(i{k}θ)");
        }
    }

    #[test]
    fn winding_of_constant_loop_is_zero() {
        let f = FactoredRational::constant(GaussianRational::ratio_pair(2, 1, 1, 3)).unwrap();
        let lp = SampledLoop::restrict(&f, &unit_circle(), 16).unwrap();
        assert_eq!(winding_number(&lp).unwrap(), 0);
    }

    #[test]
    fn winding_when_origin_not_enclosed() {
        // samples of 2 + e^{iθ} stay in the right half-plane
        let f = FactoredRational::linear(GaussianRational::integer(-2));
        let lp = SampledLoop::restrict(&f, &unit_circle(), 64).unwrap();
        assert_eq!(winding_number(&lp).unwrap(), 0);
    }

    #[test]
    fn continuation_of_unit_loop_is_linear() {
        let lp = power_loop(1, 64);
        let branch = log_continuation(&lp, 0);
        for (k, v) in branch.values().iter().enumerate() {
            let theta = TAU * (k as f64) / 64.0;
            assert!((v - Complex64::new(0.0, theta)).norm() < 1e-12);
        }
    }

    #[test]
    fn continuation_of_constant_is_principal_log() {
        let f = FactoredRational::constant(GaussianRational::integer(-3)).unwrap();
        let lp = SampledLoop::restrict(&f, &unit_circle(), 16).unwrap();
        let branch = log_continuation(&lp, 5);
        let expected = Complex64::new(3.0_f64.ln(), std::f64::consts::PI);
        for v in branch.values() {
            assert!((v - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn wrap_defect_matches_winding() {
        // ν = 2 forces a total increment of 4πi around the loop
        let lp = power_loop(2, 128);
        let branch = log_continuation(&lp, 0);
        let n = lp.len();
        let last = branch.values()[n - 1];
        let closing = (lp.samples()[0] / lp.samples()[n - 1]).arg();
        let total = last.im + closing - branch.values()[0].im;
        assert!((total - 2.0 * TAU).abs() < 1e-10);
    }

    #[test]
    fn rebased_branch_agrees_up_to_multiples_of_two_pi() {
        let f: FactoredRational = "(z-1/2)^2 * (z-3)^-1".parse().unwrap();
        let lp = SampledLoop::restrict(&f, &unit_circle(), 256).unwrap();
        let a = log_continuation(&lp, 0);
        let b = log_continuation(&lp, 100);
        for k in 0..lp.len() {
            let diff = (a.values()[k] - b.values()[k]).im / TAU;
            assert!((diff - diff.round()).abs() < 1e-10);
            assert!((a.values()[k] - b.values()[k]).re.abs() < 1e-14);
        }
    }
}
