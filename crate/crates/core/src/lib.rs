//! Numerics for α-modulation frequency decompositions on the periodic torus.
//!
//! The crate builds smooth frequency coverings whose block bandwidth grows
//! like `⟨k⟩^{α/(1−α)}`, applies the associated decomposition operators to
//! sampled fields with an FFT, evaluates the resulting weighted `ℓ^q(L^p)`
//! (quasi-)norms, and exposes the closed-form critical exponents that govern
//! scaling, embedding and product estimates between these spaces. An
//! experiment layer fits measured log–log slopes against those exponents.
//!
//! Everything here is `no_std + alloc`; all transcendental functions go
//! through `libm` so results are bit-identical across platforms. IO, file
//! formats and the command line live in the companion `alphamod-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod covering;
pub mod error;
pub mod experiments;
pub mod exponents;
pub mod families;
pub mod fft;
pub mod field;
pub mod fit;
pub mod grid;
pub mod rect;
pub mod rng;
pub mod space;
pub mod transform;
pub mod util;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use space::SpaceParams;

pub type Complex64 = num_complex::Complex<f64>;
