//! Radix-2 FFT on power-of-two sample grids.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// In-place forward transform: `X_k = Σ_j x_j e^{−2πijk/N}`.
pub(crate) fn fft_in_place(data: &mut [Complex64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "FFT length must be a power of two");
    if n <= 1 {
        return;
    }
    bit_reverse_permute(data);
    // direct twiddle table keeps the stage recurrence from accumulating error
    let table: Vec<Complex64> = (0..n / 2)
        .map(|k| Complex64::from_polar(1.0, -TAU * (k as f64) / (n as f64)))
        .collect();
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for j in 0..len / 2 {
                let w = table[j * stride];
                let lo = data[start + j];
                let hi = w * data[start + j + len / 2];
                data[start + j] = lo + hi;
                data[start + j + len / 2] = lo - hi;
            }
        }
        len <<= 1;
    }
}

/// In-place inverse transform with the 1/N normalization.
pub(crate) fn ifft_in_place(data: &mut [Complex64]) {
    let n = data.len();
    for x in data.iter_mut() {
        *x = x.conj();
    }
    fft_in_place(data);
    let scale = 1.0 / (n as f64);
    for x in data.iter_mut() {
        *x = x.conj() * scale;
    }
}

/// Signed frequency of DFT bin `k` on an `n`-point grid: `0, 1, …, n/2−1,
/// −n/2, …, −1`.
pub(crate) fn signed_frequency(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn bit_reverse_permute(data: &mut [Complex64]) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = (i.reverse_bits() >> (usize::BITS - bits)) & (n - 1);
        if i < j {
            data.swap(i, j);
        }
    }
}
