//! Periodic differentiation and quadrature on uniform grids.
//!
//! The spectral differentiator truncates Fourier modes below a relative
//! noise floor before multiplying by ik. Repeated differentiation otherwise
//! amplifies FFT rounding noise by a factor of k per pass, which matters
//! here because the second-variation pipeline differentiates four times
//! and then divides second differences by h^2. The fields being sampled
//! are trigonometric polynomials with a few dozen significant modes, so
//! the truncation is far below their spectra.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// How to differentiate periodic samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiffMode {
    /// FFT differentiation with relative noise-floor truncation.
    Spectral { noise_floor: f64 },
    /// Fourth-order central differences.
    Central4,
}

impl Default for DiffMode {
    fn default() -> Self {
        DiffMode::Spectral { noise_floor: 3e-12 }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Differentiator {
    pub mode: DiffMode,
}

impl Differentiator {
    pub fn spectral() -> Self {
        Differentiator {
            mode: DiffMode::default(),
        }
    }

    pub fn central4() -> Self {
        Differentiator {
            mode: DiffMode::Central4,
        }
    }

    /// d/d theta of samples on theta_k = offset + 2 pi k / n.
    pub fn derivative(&self, samples: &[f64]) -> Vec<f64> {
        match self.mode {
            DiffMode::Spectral { noise_floor } => spectral_derivative(samples, noise_floor),
            DiffMode::Central4 => central4_derivative(samples),
        }
    }

    pub fn derivative_vec<const D: usize>(&self, samples: &[[f64; D]]) -> Vec<[f64; D]> {
        let n = samples.len();
        let mut out = vec![[0.0; D]; n];
        let mut component = vec![0.0; n];
        for d in 0..D {
            for (i, s) in samples.iter().enumerate() {
                component[i] = s[d];
            }
            let dc = self.derivative(&component);
            for (i, v) in dc.into_iter().enumerate() {
                out[i][d] = v;
            }
        }
        out
    }
}

fn spectral_derivative(samples: &[f64], noise_floor: f64) -> Vec<f64> {
    let n = samples.len();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);

    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    fft.process(&mut buf);

    let max_mag = buf.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let cutoff = noise_floor * max_mag;
    for (idx, c) in buf.iter_mut().enumerate() {
        if c.norm() <= cutoff {
            *c = Complex::new(0.0, 0.0);
            continue;
        }
        let k = wavenumber(idx, n);
        // the Nyquist mode has no well-defined odd derivative on a real grid
        if 2 * idx == n {
            *c = Complex::new(0.0, 0.0);
        } else {
            *c *= Complex::new(0.0, k as f64);
        }
    }
    ifft.process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

pub(crate) fn wavenumber(idx: usize, n: usize) -> i64 {
    if 2 * idx <= n {
        idx as i64
    } else {
        idx as i64 - n as i64
    }
}

fn central4_derivative(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let at = |i: isize| samples[(i.rem_euclid(n as isize)) as usize];
    (0..n as isize)
        .map(|i| (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h))
        .collect()
}

/// Trapezoid rule over the full period; spectrally accurate for smooth
/// periodic integrands.
pub fn trapezoid_periodic(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    samples.iter().sum::<f64>() * (2.0 * std::f64::consts::PI) / n
}

/// Fourier coefficients c_k (complex, phase-corrected for a grid offset)
/// of real samples at theta_j = offset + 2 pi j / n.
pub fn fourier_coefficients(samples: &[f64], offset: f64) -> Vec<(i64, Complex<f64>)> {
    let n = samples.len();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    fft.process(&mut buf);
    buf.iter()
        .enumerate()
        .map(|(idx, c)| {
            let k = wavenumber(idx, n);
            let phase = Complex::from_polar(1.0, -(k as f64) * offset);
            (k, c * phase / n as f64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
    }

    #[test]
    fn spectral_derivative_of_cosine() {
        let th = grid(64);
        let u: Vec<f64> = th.iter().map(|&t| (3.0 * t).cos()).collect();
        let du = Differentiator::spectral().derivative(&u);
        for (i, &t) in th.iter().enumerate() {
            assert!((du[i] + 3.0 * (3.0 * t).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn central4_derivative_converges() {
        let err = |n: usize| -> f64 {
            let th = grid(n);
            let u: Vec<f64> = th.iter().map(|&t| (2.0 * t).cos()).collect();
            let du = Differentiator::central4().derivative(&u);
            th.iter()
                .enumerate()
                .map(|(i, &t)| (du[i] + 2.0 * (2.0 * t).sin()).abs())
                .fold(0.0, f64::max)
        };
        let e1 = err(64);
        let e2 = err(128);
        assert!(e1 / e2 > 12.0, "expected ~16x reduction, got {}", e1 / e2);
    }

    #[test]
    fn trapezoid_on_trig_polynomials() {
        let th = grid(32);
        let u: Vec<f64> = th.iter().map(|&t| 1.5 + (4.0 * t).cos()).collect();
        assert!((trapezoid_periodic(&u) - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn offset_coefficients() {
        let n = 32;
        let offset = PI / n as f64;
        let u: Vec<f64> = (0..n)
            .map(|j| {
                let t = offset + 2.0 * PI * j as f64 / n as f64;
                2.0 * (2.0 * t).cos() + 0.5
            })
            .collect();
        let coeffs = fourier_coefficients(&u, offset);
        for (k, c) in coeffs {
            let expected = match k {
                0 => 0.5,
                2 | -2 => 1.0,
                _ => 0.0,
            };
            assert!((c.re - expected).abs() < 1e-12, "k={k}");
            assert!(c.im.abs() < 1e-12, "k={k}");
        }
    }
}
