//! Discrete Fourier helpers over uniformly sampled complex fields.
//!
//! Wavenumbers are signed: bin `j` of an `N`-point transform with sample
//! spacing `h` sits at `2πj/(Nh)` for `j < N/2` and at `2π(j − N)/(Nh)`
//! otherwise. A field `e^{ikx}` peaks at `+k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Forward transform of `values`, zero-padded to `len` (≥ `values.len()`).
pub fn forward(values: &[Complex64], len: usize) -> Vec<Complex64> {
    assert!(len >= values.len());
    let mut buf = Vec::with_capacity(len);
    buf.extend_from_slice(values);
    buf.resize(len, Complex64::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(len).process(&mut buf);
    buf
}

/// Signed wavenumber of a (possibly fractional) bin index.
pub fn bin_wavenumber(bin: f64, len: usize, h: f64) -> f64 {
    let n = len as f64;
    let signed = if bin >= n / 2.0 { bin - n } else { bin };
    2.0 * PI * signed / (n * h)
}

/// Power spectrum `|F(k)|²` paired with signed wavenumbers, unpadded.
pub fn power_spectrum(values: &[Complex64], h: f64) -> Vec<(f64, f64)> {
    let n = values.len();
    forward(values, n)
        .iter()
        .enumerate()
        .map(|(j, z)| (bin_wavenumber(j as f64, n, h), z.norm_sqr()))
        .collect()
}

/// Power-weighted mean wavenumber, `Σ k|F|² / Σ |F|²`.
pub fn spectral_centroid(values: &[Complex64], h: f64) -> f64 {
    let (num, den) = power_spectrum(values, h)
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (k, p)| (a + k * p, b + p));
    num / den
}

/// Share of the spectral power carried by strictly negative wavenumbers.
pub fn negative_wavenumber_fraction(values: &[Complex64], h: f64) -> f64 {
    let (neg, total) = power_spectrum(values, h)
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (k, p)| {
            (if k < 0.0 { a + p } else { a }, b + p)
        });
    neg / total
}

/// Symmetric Hann window of the given length (zero at both ends).
pub fn hann(len: usize) -> Vec<f64> {
    if len == 1 {
        return vec![1.0];
    }
    (0..len)
        .map(|i| 0.5 * (1.0 - (2.0 * PI * i as f64 / (len - 1) as f64).cos()))
        .collect()
}

/// Vertex offset of the parabola through `(−1, a)`, `(0, b)`, `(1, c)`.
///
/// Returns 0 when the three points are collinear.
pub fn parabolic_offset(a: f64, b: f64, c: f64) -> f64 {
    let denom = a - 2.0 * b + c;
    if denom == 0.0 {
        0.0
    } else {
        (0.5 * (a - c) / denom).clamp(-0.5, 0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(k: f64, h: f64, n: usize) -> Vec<Complex64> {
        (0..n).map(|i| Complex64::cis(k * i as f64 * h)).collect()
    }

    #[test]
    fn bins_are_signed() {
        assert_eq!(bin_wavenumber(0.0, 8, 1.0), 0.0);
        assert!(bin_wavenumber(1.0, 8, 1.0) > 0.0);
        assert!(bin_wavenumber(7.0, 8, 1.0) < 0.0);
        assert!((bin_wavenumber(7.0, 8, 1.0) + 2.0 * PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn tone_on_bin_has_exact_centroid() {
        let n = 256;
        let h = 0.1;
        let k = 2.0 * PI * 10.0 / (n as f64 * h);
        assert!((spectral_centroid(&tone(k, h, n), h) - k).abs() < 1e-10);
        let conj: Vec<_> = tone(k, h, n).iter().map(|z| z.conj()).collect();
        assert!((spectral_centroid(&conj, h) + k).abs() < 1e-10);
        assert!(negative_wavenumber_fraction(&conj, h) > 1.0 - 1e-12);
        assert!(negative_wavenumber_fraction(&tone(k, h, n), h) < 1e-12);
    }

    #[test]
    fn parabola_vertex() {
        // y = -(x - 0.3)^2
        let f = |x: f64| -(x - 0.3) * (x - 0.3);
        assert!((parabolic_offset(f(-1.0), f(0.0), f(1.0)) - 0.3).abs() < 1e-14);
        assert_eq!(parabolic_offset(1.0, 1.0, 1.0), 0.0);
    }

    #[test]
    fn hann_is_symmetric_with_zero_ends() {
        let w = hann(9);
        assert_eq!(w[0], 0.0);
        assert!((w[4] - 1.0).abs() < 1e-15);
        for i in 0..9 {
            assert!((w[i] - w[8 - i]).abs() < 1e-15);
        }
    }
}
