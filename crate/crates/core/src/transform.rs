//! The Fourier transform on a fundamental domain and its inverse.
//!
//! A function on the domain is pulled back to the unit torus by the change of
//! variables `x = A t`, transformed there by a `d`-dimensional DFT, and the
//! coefficient at integer frequency `k` is attached to the dual point
//! `κ = A^{-T} k`. On the equispaced grid `t = j / N` this is exact for
//! trigonometric polynomials whose frequencies lie in `[-K, K]^d` with
//! `2K + 1 ≤ N`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::lattice::{DualPoint, IndexBox, Lattice};

/// Samples `f(A j / N)` for every `j ∈ {0..N-1}^d`, row-major with the first
/// axis slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    lattice: Lattice,
    n: usize,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_samples(lattice: Lattice, n: usize, samples: Vec<Complex64>) -> Result<Self> {
        let expected = grid_len(n, lattice.dim());
        if samples.len() != expected {
            return Err(Error::SampleCount {
                expected,
                got: samples.len(),
            });
        }
        if samples
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            lattice,
            n,
            samples,
        })
    }

    /// Samples `f` at the deformed grid points `x_j = A j / N`.
    pub fn from_fn(lattice: Lattice, n: usize, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        assert!(n >= 1, "grid needs at least one point per axis");
        let d = lattice.dim();
        let samples = IndexBox::new(d, 0, n as i64 - 1)
            .map(|j| {
                let t: Vec<f64> = j.iter().map(|&v| v as f64 / n as f64).collect();
                f(&lattice.from_basis_coords(&t))
            })
            .collect();
        Self {
            lattice,
            n,
            samples,
        }
    }

    /// The unimodular exponential `e^{2πi κ·x}` with `κ = A^{-T} k`.
    ///
    /// On the grid `κ·x_j = k·j / N`, so the phase is reduced exactly in
    /// integers rather than through the (possibly large) coordinates of `κ`.
    pub fn mode(lattice: Lattice, n: usize, k: &[i64]) -> Self {
        assert!(n >= 1, "grid needs at least one point per axis");
        assert_eq!(k.len(), lattice.dim(), "index dimension");
        let samples = IndexBox::new(lattice.dim(), 0, n as i64 - 1)
            .map(|j| {
                let dot: i64 = k.iter().zip(&j).map(|(a, b)| a * b).sum();
                let r = dot.rem_euclid(n as i64) as f64 / n as f64;
                Complex64::from_polar(1.0, 2.0 * PI * r)
            })
            .collect();
        Self {
            lattice,
            n,
            samples,
        }
    }

    pub fn constant(lattice: Lattice, n: usize, value: Complex64) -> Self {
        let len = grid_len(n, lattice.dim());
        Self {
            lattice,
            n,
            samples: vec![value; len],
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn n_per_axis(&self) -> usize {
        self.n
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn map(&self, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        Self {
            lattice: self.lattice.clone(),
            n: self.n,
            samples: self.samples.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Pointwise `a * self + b * other`; both must live on the same grid.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.samples.len() != other.samples.len() || self.n != other.n {
            return Err(Error::SampleCount {
                expected: self.samples.len(),
                got: other.samples.len(),
            });
        }
        Ok(Self {
            lattice: self.lattice.clone(),
            n: self.n,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
        })
    }

    /// Cyclic shift of the grid: `g(x_j) = f(x_{j - shift})`.
    pub fn cyclic_shift(&self, shift: &[i64]) -> Self {
        let d = self.dim();
        let n = self.n as i64;
        let mut out = vec![Complex64::new(0.0, 0.0); self.samples.len()];
        for (pos, j) in IndexBox::new(d, 0, n - 1).enumerate() {
            let src: Vec<i64> = j
                .iter()
                .zip(shift)
                .map(|(&a, &s)| (a - s).rem_euclid(n))
                .collect();
            out[pos] = self.samples[flat_index(&src, self.n)];
        }
        Self {
            lattice: self.lattice.clone(),
            n: self.n,
            samples: out,
        }
    }

    /// Normalized inner product `(1/N^d) Σ f conj(g)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let sum: Complex64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b.conj())
            .sum();
        sum / self.samples.len() as f64
    }

    /// Mean of `|f|²` over the grid.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Finite set of Fourier coefficients on dual points whose indices lie in
/// `[-band, band]^d`. Absent entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    lattice: Lattice,
    band: usize,
    entries: BTreeMap<DualPoint, Complex64>,
}

impl Spectrum {
    pub fn new(lattice: Lattice, band: usize) -> Self {
        Self {
            lattice,
            band,
            entries: BTreeMap::new(),
        }
    }

    /// Dense spectrum with a value for every index of the band.
    pub fn from_fn(
        lattice: Lattice,
        band: usize,
        mut f: impl FnMut(&DualPoint) -> Complex64,
    ) -> Self {
        let entries = lattice
            .band_points(band)
            .into_iter()
            .map(|p| {
                let v = f(&p);
                (p, v)
            })
            .collect();
        Self {
            lattice,
            band,
            entries,
        }
    }

    /// Single coefficient `value` at index `k`.
    pub fn delta(lattice: Lattice, band: usize, k: &[i64], value: Complex64) -> Result<Self> {
        let mut s = Self::new(lattice, band);
        s.insert(k, value)?;
        Ok(s)
    }

    pub fn insert(&mut self, index: &[i64], value: Complex64) -> Result<()> {
        if index.len() != self.lattice.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.lattice.dim(),
                got: index.len(),
            });
        }
        let b = self.band as i64;
        if index.iter().any(|&k| k < -b || k > b) {
            return Err(Error::Parse(format!(
                "index {index:?} outside band [-{b}, {b}]"
            )));
        }
        self.entries.insert(self.lattice.dual_point(index), value);
        Ok(())
    }

    pub fn get(&self, index: &[i64]) -> Option<Complex64> {
        // DualPoint compares by index only
        let probe = DualPoint {
            index: index.to_vec(),
            coords: Vec::new(),
        };
        self.entries.get(&probe).copied()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DualPoint, &Complex64)> {
        self.entries.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = &DualPoint> {
        self.entries.keys()
    }

    /// Applies `f(κ, c)` to every coefficient, keeping the support.
    pub fn map(&self, mut f: impl FnMut(&DualPoint, Complex64) -> Complex64) -> Self {
        Self {
            lattice: self.lattice.clone(),
            band: self.band,
            entries: self
                .entries
                .iter()
                .map(|(p, &c)| (p.clone(), f(p, c)))
                .collect(),
        }
    }

    /// `Σ |c|²`
    pub fn energy(&self) -> f64 {
        self.entries.values().map(|c| c.norm_sqr()).sum()
    }

    /// Largest coefficient difference against `other`; missing entries count as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (p, a) in &self.entries {
            let b = other.entries.get(p).copied().unwrap_or_default();
            worst = worst.max((a - b).norm());
        }
        for (p, b) in &other.entries {
            if !self.entries.contains_key(p) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }

    /// CSV with columns `k_1..k_d, kappa_1..kappa_d, re, im`, sorted by index.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let d = self.lattice.dim();
        let mut header: Vec<String> = (1..=d).map(|i| format!("k_{i}")).collect();
        header.extend((1..=d).map(|i| format!("kappa_{i}")));
        header.push("re".into());
        header.push("im".into());
        writeln!(out, "# schema=1")?;
        writeln!(out, "{}", header.join(","))?;
        for (p, c) in &self.entries {
            let mut row: Vec<String> = p.index.iter().map(|k| k.to_string()).collect();
            row.extend(p.coords.iter().map(|v| v.to_string()));
            row.push(c.re.to_string());
            row.push(c.im.to_string());
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn grid_len(n: usize, d: usize) -> usize {
    n.pow(d as u32)
}

fn flat_index(j: &[i64], n: usize) -> usize {
    j.iter().fold(0usize, |acc, &v| acc * n + v as usize)
}

fn check_band(band: usize, n: usize) -> Result<()> {
    if 2 * band + 1 > n {
        Err(Error::BandExceedsGrid { band, grid: n })
    } else {
        Ok(())
    }
}

/// Unnormalized in-place DFT along every axis of an `n^d` row-major array.
fn fft_nd(data: &mut [Complex64], n: usize, d: usize, direction: FftDirection) {
    if d == 0 || n == 1 {
        return;
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft(n, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (i, value) in line.iter().enumerate() {
                    data[base + i * stride] = *value;
                }
            }
        }
    }
}

/// Fourier coefficients `(1/N^d) Σ_j f_j e^{-2πi k·j/N}` for `k ∈ [-K, K]^d`.
pub fn forward(f: &GridFunction, band: usize) -> Result<Spectrum> {
    let n = f.n;
    check_band(band, n)?;
    let d = f.dim();
    let mut data = f.samples.clone();
    fft_nd(&mut data, n, d, FftDirection::Forward);
    let scale = 1.0 / data.len() as f64;
    Ok(Spectrum::from_fn(f.lattice.clone(), band, |p| {
        let bin: Vec<i64> = p.index.iter().map(|&k| k.rem_euclid(n as i64)).collect();
        data[flat_index(&bin, n)] * scale
    }))
}

/// Synthesis `Σ_k c_k e^{2πi k·j/N}` on an `N^d` grid.
pub fn inverse(s: &Spectrum, n: usize) -> Result<GridFunction> {
    check_band(s.band, n)?;
    let d = s.lattice.dim();
    let mut data = vec![Complex64::new(0.0, 0.0); grid_len(n, d)];
    for (p, &c) in &s.entries {
        let bin: Vec<i64> = p.index.iter().map(|&k| k.rem_euclid(n as i64)).collect();
        data[flat_index(&bin, n)] += c;
    }
    fft_nd(&mut data, n, d, FftDirection::Inverse);
    Ok(GridFunction {
        lattice: s.lattice.clone(),
        n,
        samples: data,
    })
}

/// Direct-sum evaluation of the forward transform, `O(N^d (2K+1)^d)`.
pub fn slow_forward_oracle(f: &GridFunction, band: usize) -> Result<Spectrum> {
    let n = f.n;
    check_band(band, n)?;
    let d = f.dim();
    let grid: Vec<Vec<i64>> = IndexBox::new(d, 0, n as i64 - 1).collect();
    let scale = 1.0 / f.samples.len() as f64;
    Ok(Spectrum::from_fn(f.lattice.clone(), band, |p| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &value) in grid.iter().zip(&f.samples) {
            let dot: i64 = p.index.iter().zip(j).map(|(k, j)| k * j).sum();
            // reduce the integer phase before scaling to keep the angle small
            let r = dot.rem_euclid(n as i64) as f64 / n as f64;
            acc += value * Complex64::from_polar(1.0, -2.0 * PI * r);
        }
        acc * scale
    }))
}

/// `| (1/N^d) Σ |f_j|² - Σ_κ |f̂(κ)|² |`
pub fn plancherel_defect(f: &GridFunction, s: &Spectrum) -> f64 {
    (f.energy() - s.energy()).abs()
}
