//! Iterative radix-2 complex FFT with precomputed twiddles.
//!
//! Grids in this crate are powers of two by construction, so a radix-2
//! kernel covers every size we meet, stays `no_std`, and keeps the whole
//! transform path inside one crate. Forward is un-normalized
//! (`X[k] = Σ x[j] e^{-2πi jk/N}`); `inverse_unscaled` is its adjoint
//! without the `1/N`. Callers fold normalization into their own
//! coefficient conventions.

use crate::Complex64;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct Fft {
    n: usize,
    /// `exp(-2πi k / n)` for `k < n/2`.
    twiddles: Vec<Complex64>,
    /// Bit-reversal permutation, precomputed.
    rev: Vec<u32>,
}

impl Fft {
    pub fn new(n: usize) -> Arc<Fft> {
        assert!(
            n.is_power_of_two() && n >= 2,
            "fft size must be a power of two"
        );
        let mut twiddles = Vec::with_capacity(n / 2);
        for k in 0..n / 2 {
            let theta = -2.0 * core::f64::consts::PI * k as f64 / n as f64;
            twiddles.push(Complex64::new(libm::cos(theta), libm::sin(theta)));
        }
        let bits = n.trailing_zeros();
        let mut rev = vec![0u32; n];
        for (i, r) in rev.iter_mut().enumerate() {
            *r = (i as u32).reverse_bits() >> (32 - bits);
        }
        Arc::new(Fft { n, twiddles, rev })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.n;
        assert_eq!(data.len(), n);
        for i in 0..n {
            let j = self.rev[i] as usize;
            if i < j {
                data.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            let mut base = 0;
            while base < n {
                for j in 0..half {
                    let mut w = self.twiddles[j * step];
                    if inverse {
                        w = w.conj();
                    }
                    let u = data[base + j];
                    let v = data[base + j + half] * w;
                    data[base + j] = u + v;
                    data[base + j + half] = u - v;
                }
                base += len;
            }
            len <<= 1;
        }
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    pub fn inverse_unscaled(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }
}

/// Row-major 2D transform: rows, then columns through a scratch buffer.
pub fn forward_2d(plan: &Fft, data: &mut [Complex64]) {
    dim2(plan, data, false);
}

pub fn inverse_unscaled_2d(plan: &Fft, data: &mut [Complex64]) {
    dim2(plan, data, true);
}

fn dim2(plan: &Fft, data: &mut [Complex64], inverse: bool) {
    let n = plan.len();
    assert_eq!(data.len(), n * n);
    for row in data.chunks_exact_mut(n) {
        plan.transform(row, inverse);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..n {
        for r in 0..n {
            col[r] = data[r * n + c];
        }
        plan.transform(&mut col, inverse);
        for r in 0..n {
            data[r * n + c] = col[r];
        }
    }
}
