//! Seeded generators for test lattices, spectra and band-limited functions.
//!
//! All randomness flows through [`ChaCha8Rng`] so that a seed reproduces the
//! same values on every platform. Independent streams (per trial, per worker)
//! are derived with [`stream_rng`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::lattice::Lattice;
use crate::transform::{inverse, GridFunction, Spectrum};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// RNG for stream `stream` under `seed`; distinct streams never overlap.
pub fn stream_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Complex standard normal: real and imaginary parts `N(0, 1/2)`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Condition number in the 2-norm.
pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Gaussian random generator matrix, resampled until its condition number is
/// below `max_condition`.
pub fn gaussian_lattice<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_condition: f64) -> Lattice {
    loop {
        let m = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        if condition_number(&m) < max_condition {
            if let Ok(lat) = Lattice::new(m) {
                return lat;
            }
        }
    }
}

/// `I + spread * G` with standard normal `G`, resampled until the condition
/// number is below 10.
pub fn perturbed_identity_lattice<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    spread: f64,
) -> Lattice {
    loop {
        let m = DMatrix::from_fn(dim, dim, |i, j| {
            let g: f64 = rng.sample(StandardNormal);
            if i == j {
                1.0 + spread * g
            } else {
                spread * g
            }
        });
        if condition_number(&m) < 10.0 {
            if let Ok(lat) = Lattice::new(m) {
                return lat;
            }
        }
    }
}

/// iid complex standard normal coefficients on every index of `[-band, band]^d`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, lattice: &Lattice, band: usize) -> Spectrum {
    Spectrum::from_fn(lattice.clone(), band, |_| complex_normal(rng))
}

/// [`random_spectrum`] rescaled to unit `ℓ²` norm.
pub fn unit_random_spectrum<R: Rng + ?Sized>(
    rng: &mut R,
    lattice: &Lattice,
    band: usize,
) -> Spectrum {
    let s = random_spectrum(rng, lattice, band);
    let norm = s.energy().sqrt();
    s.map(|_, c| c / norm)
}

/// Band-limited grid function with random coefficients and `‖f‖₂ = 1`,
/// sampled on an `n^d` grid.
pub fn random_band_limited<R: Rng + ?Sized>(
    rng: &mut R,
    lattice: &Lattice,
    n: usize,
    band: usize,
) -> GridFunction {
    let spectrum = unit_random_spectrum(rng, lattice, band);
    inverse(&spectrum, n).expect("caller guarantees 2K+1 <= N")
}
