//! Fast Fourier transforms for arbitrary lengths.
//!
//! Power-of-two lengths use an iterative radix-2 Cooley-Tukey transform;
//! everything else goes through Bluestein's chirp-z algorithm, which reduces
//! an arbitrary-length DFT to a power-of-two cyclic convolution. Kept
//! dependency-free so the crate stays `no_std`.

use crate::Complex64;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

/// In-place forward DFT: `X[k] = sum_n x[n] e^{-2πi kn/N}` (no scaling).
pub fn fft(buf: &mut [Complex64]) {
    transform(buf, false);
}

/// In-place inverse DFT, scaled by `1/N`.
pub fn ifft(buf: &mut [Complex64]) {
    transform(buf, true);
    let scale = 1.0 / buf.len() as f64;
    for x in buf.iter_mut() {
        *x *= scale;
    }
}

fn transform(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, inverse);
    } else {
        bluestein(buf, inverse);
    }
}

fn radix2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());

    // Bit-reversal permutation.
    let shift = usize::BITS - n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> shift;
        if j > i {
            buf.swap(i, j);
        }
    }

    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        for chunk in buf.chunks_mut(len) {
            let mut w = Complex64::new(1.0, 0.0);
            let half = len / 2;
            for i in 0..half {
                let u = chunk[i];
                let v = chunk[i + half] * w;
                chunk[i] = u + v;
                chunk[i + half] = u - v;
                w *= wlen;
            }
        }
        len <<= 1;
    }
}

/// Chirp-z transform: DFT of arbitrary length via a power-of-two convolution.
fn bluestein(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    let sign = if inverse { 1.0 } else { -1.0 };

    // chirp[k] = e^{sign * -iπ k²/n}, with k² reduced mod 2n to keep the
    // angle argument small.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u64 * k as u64) % (2 * n as u64);
            let ang = sign * -PI * k2 as f64 / n as f64;
            Complex64::new(ang.cos(), ang.sin())
        })
        .collect();

    let m = (2 * n - 1).next_power_of_two();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = buf[k] * chirp[k];
    }
    b[0] = chirp[0].conj();
    for k in 1..n {
        let v = chirp[k].conj();
        b[k] = v;
        b[m - k] = v;
    }

    radix2(&mut a, false);
    radix2(&mut b, false);
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x *= *y;
    }
    radix2(&mut a, true);
    let scale = 1.0 / m as f64;
    for (k, out) in buf.iter_mut().enumerate() {
        *out = a[k] * scale * chirp[k];
    }
}
