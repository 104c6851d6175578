//! FFT helpers for lattices centered on zero.
//!
//! Every transform in this crate reduces to the "centered DFT"
//!
//! ```text
//! out[r] = sum_k exp(sign * 2*pi*i * (r - n/2)(k - n/2) / n) * in[k]
//! ```
//!
//! which is a plain length-n FFT conjugated by (-1)^k twiddles:
//! (r - n/2)(k - n/2) = rk - (n/2)(r + k) + n^2/4, so the centered kernel
//! equals (-1)^(r+k) * i^(sign*n) * exp(sign * 2*pi*i * rk / n). For the
//! power-of-two sizes used here n % 4 == 0 and the constant is 1, but the
//! general constant is kept for correctness.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelSign {
    /// exp(-2*pi*i * jk / n) kernel.
    Negative,
    /// exp(+2*pi*i * jk / n) kernel (no 1/n normalization).
    Positive,
}

/// Reusable FFT plans for one transform length.
pub struct Dft {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Dft {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    /// In-place plain DFT, sum_k in[k] exp(sign * 2*pi*i * rk / n).
    pub fn plain(&self, data: &mut [Complex64], sign: KernelSign) {
        debug_assert_eq!(data.len(), self.n);
        match sign {
            KernelSign::Negative => self.forward.process(data),
            KernelSign::Positive => self.inverse.process(data),
        }
    }

    /// In-place centered DFT, sum_k in[k] exp(sign * 2*pi*i * (r-n/2)(k-n/2) / n).
    pub fn centered(&self, data: &mut [Complex64], sign: KernelSign) {
        debug_assert_eq!(data.len(), self.n);
        for (k, v) in data.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
        self.plain(data, sign);
        let unit = center_phase(self.n, sign);
        for (r, v) in data.iter_mut().enumerate() {
            *v *= unit;
            if r % 2 == 1 {
                *v = -*v;
            }
        }
    }
}

/// i^(sign * n), computed exactly from n mod 4.
fn center_phase(n: usize, sign: KernelSign) -> Complex64 {
    let quarter = match sign {
        KernelSign::Negative => (4 - (n % 4)) % 4,
        KernelSign::Positive => n % 4,
    };
    match quarter {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}
