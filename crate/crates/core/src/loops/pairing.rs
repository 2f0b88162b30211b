//! The Deligne–Beilinson pairing of two loops, its quadrature, and the exact
//! tame-symbol oracle it must reproduce.
//!
//! For loops `f`, `g` on the same oriented circle the pairing is
//!
//! `T(f,g) = exp( (1/2πi) ∫ log f · dg/g ) · g(x₀)^{−ν(f)}`,
//!
//! integrated once around the circle from the base point `x₀` in the
//! positive direction. The value does not depend on the base point or on
//! the branch of the logarithm.
//!
//! Quadrature: the log branch splits as `log f = iνθ + p(θ)` with `p`
//! periodic. The periodic part is integrated against `v = d(log g)/dθ` by
//! the uniform-grid rule, which is spectrally accurate for smooth periodic
//! integrands; the linear part integrates exactly against the discrete
//! Fourier coefficients of `v` via `∫θe^{ikθ}dθ = 2π²δ_{k0} + 2π/(ik)`.
//! Clockwise loops are evaluated as the inverse of the counterclockwise
//! value on the reversed path.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::exact::{tame_symbol, FactoredRational, GaussianRational, SpherePoint};

use super::branch::{log_continuation, winding_number};
use super::circle::{Orientation, OrientedCircle};
use super::fft::{fft_in_place, ifft_in_place, signed_frequency};
use super::sampled::SampledLoop;
use super::{check_sample_count, LoopError};

/// Samples of `d(log f)/dθ` along the circle, computed from the factored
/// form: for the counterclockwise chart `z(θ) = c + re^{iθ}` this is
/// `i(z−c)·Σ mₖ/(z−aₖ)`, negated for clockwise traversal. No differencing
/// is involved.
pub fn dlog_exact(
    f: &FactoredRational,
    circle: &OrientedCircle,
    n: usize,
) -> Result<Vec<Complex64>, LoopError> {
    check_sample_count(n)?;
    for (root, _) in f.factors() {
        if circle.on_circle(root) {
            return Err(LoopError::DivisorOnContour {
                point: root.clone(),
            });
        }
    }
    let sign = match circle.orientation() {
        Orientation::Ccw => 1.0,
        Orientation::Cw => -1.0,
    };
    let center = circle.center().to_complex();
    let roots: Vec<(Complex64, f64)> = f
        .factors()
        .map(|(root, mult)| (root.to_complex(), mult as f64))
        .collect();
    Ok((0..n)
        .map(|k| {
            let z = circle.sample_point(k, n);
            let logder: Complex64 = roots.iter().map(|(a, m)| m / (z - a)).sum();
            Complex64::new(0.0, sign) * (z - center) * logder
        })
        .collect())
}

/// Spectral fallback for `d(log f)/dθ` when no factored source is known:
/// differentiates the periodic part of the log branch through the FFT and
/// adds back the winding term.
pub fn dlog_spectral(lp: &SampledLoop) -> Result<Vec<Complex64>, LoopError> {
    let n = lp.len();
    let nu = winding_number(lp)? as f64;
    let branch = log_continuation(lp, 0);
    let mut work: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = TAU * (k as f64) / (n as f64);
            branch.values()[k] - Complex64::new(0.0, nu * theta)
        })
        .collect();
    fft_in_place(&mut work);
    for (k, c) in work.iter_mut().enumerate() {
        let freq = signed_frequency(k, n) as f64;
        *c *= Complex64::new(0.0, freq);
    }
    ifft_in_place(&mut work);
    Ok(work
        .into_iter()
        .map(|q| q + Complex64::new(0.0, nu))
        .collect())
}

/// The pairing with the base point at sample 0.
pub fn deligne_pairing(
    f_loop: &SampledLoop,
    g_loop: &SampledLoop,
    g_dlog: Option<&[Complex64]>,
) -> Result<Complex64, LoopError> {
    deligne_pairing_at_base(f_loop, g_loop, g_dlog, 0)
}

/// The pairing with the base point `x₀` at an arbitrary sample index.
///
/// `g_dlog`, when given, must hold samples of `d(log g)/dθ` with respect to
/// the loops' own parametrization; otherwise it is derived from `g`'s
/// factored source when available and spectrally from the samples when not.
pub fn deligne_pairing_at_base(
    f_loop: &SampledLoop,
    g_loop: &SampledLoop,
    g_dlog: Option<&[Complex64]>,
    base: usize,
) -> Result<Complex64, LoopError> {
    let n = f_loop.len();
    if f_loop.circle() != g_loop.circle() || n != g_loop.len() {
        return Err(LoopError::MismatchedGrids);
    }
    if let Some(d) = g_dlog {
        if d.len() != n {
            return Err(LoopError::MismatchedGrids);
        }
    }
    if base >= n {
        return Err(LoopError::BadBaseIndex { base, n });
    }
    match f_loop.circle().orientation() {
        Orientation::Ccw => pairing_ccw(f_loop, g_loop, g_dlog, base),
        Orientation::Cw => {
            let f_rev = f_loop.reversed();
            let g_rev = g_loop.reversed();
            let d_rev: Option<Vec<Complex64>> =
                g_dlog.map(|d| (0..n).map(|j| -d[(n - j) % n]).collect());
            let rev_base = (n - base) % n;
            let value = pairing_ccw(&f_rev, &g_rev, d_rev.as_deref(), rev_base)?;
            Ok(Complex64::new(1.0, 0.0) / value)
        }
    }
}

fn pairing_ccw(
    f_loop: &SampledLoop,
    g_loop: &SampledLoop,
    g_dlog: Option<&[Complex64]>,
    base: usize,
) -> Result<Complex64, LoopError> {
    let n = f_loop.len();
    let nu = winding_number(f_loop)?;
    let v: Vec<Complex64> = match g_dlog {
        Some(d) => d.to_vec(),
        None => match g_loop.source() {
            Some(g) => dlog_exact(g, g_loop.circle(), n)?,
            None => dlog_spectral(g_loop)?,
        },
    };
    let branch = log_continuation(f_loop, base);

    // reindex so the base point sits at parameter 0
    let nu_f = nu as f64;
    let mut periodic_dot = Complex64::new(0.0, 0.0);
    let mut v_shifted = vec![Complex64::new(0.0, 0.0); n];
    for (j, slot) in v_shifted.iter_mut().enumerate() {
        let idx = (base + j) % n;
        let theta = TAU * (j as f64) / (n as f64);
        let p = branch.values()[idx] - Complex64::new(0.0, nu_f * theta);
        *slot = v[idx];
        periodic_dot += p * v[idx];
    }
    let quad_periodic = periodic_dot * (TAU / n as f64);

    fft_in_place(&mut v_shifted);
    let scale = 1.0 / (n as f64);
    let v_mean = v_shifted[0] * scale;
    let mut tail = Complex64::new(0.0, 0.0);
    for (k, c) in v_shifted.iter().enumerate().skip(1) {
        let freq = signed_frequency(k, n) as f64;
        tail += (c * scale) / Complex64::new(0.0, freq);
    }
    let quad_linear = Complex64::new(0.0, nu_f) * (2.0 * PI * PI * v_mean + TAU * tail);

    let integral = quad_linear + quad_periodic;
    let g_base = g_loop.samples()[base];
    let nu_i32 = i32::try_from(nu).expect("winding fits in i32");
    Ok((integral * Complex64::new(0.0, -1.0 / TAU)).exp() * g_base.powi(-nu_i32))
}

/// Sum of multiplicities of the roots of `f` strictly inside the circle,
/// decided exactly over ℚ.
pub fn enclosed_valuation_sum(f: &FactoredRational, circle: &OrientedCircle) -> i64 {
    f.factors()
        .filter(|(root, _)| circle.strictly_contains(root))
        .map(|(_, mult)| mult)
        .sum()
}

/// The exact value the numerical pairing must reproduce: the product of
/// tame symbols of `(f, g)` over every divisor point strictly enclosed by
/// the circle, inverted for clockwise orientation. Divisor points on the
/// contour itself are rejected exactly.
pub fn pairing_oracle(
    f: &FactoredRational,
    g: &FactoredRational,
    circle: &OrientedCircle,
) -> Result<GaussianRational, LoopError> {
    let mut points: BTreeSet<GaussianRational> = BTreeSet::new();
    points.extend(f.factors().map(|(root, _)| root.clone()));
    points.extend(g.factors().map(|(root, _)| root.clone()));
    for point in &points {
        if circle.on_circle(point) {
            return Err(LoopError::DivisorOnContour {
                point: point.clone(),
            });
        }
    }
    let mut acc = GaussianRational::one();
    for point in points {
        if circle.strictly_contains(&point) {
            acc = &acc * &tame_symbol(f, g, &SpherePoint::Finite(point));
        }
    }
    Ok(match circle.orientation() {
        Orientation::Ccw => acc,
        Orientation::Cw => acc.inv(),
    })
}
