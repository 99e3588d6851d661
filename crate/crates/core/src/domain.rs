//! Fundamental domains: the parallelotope `A [0,1)^d`, the hexagonal domain
//! of `A_d`, reduction modulo the lattice, and Monte Carlo tiling checks.

use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{mat_vec, mat_vec_int, EmbeddedLattice, IndexBox, Lattice};
use crate::random::stream_rng;

/// Samples per independent RNG stream in the Monte Carlo routines.
const CHUNK: usize = 4096;

/// Box `[lo, hi]` in the coordinates of an orthonormal `frame`; the points
/// are `frame * u`.
#[derive(Debug, Clone)]
pub struct SampleRegion {
    pub frame: DMatrix<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SampleRegion {
    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let u: Vec<f64> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(&a, &b)| a + (b - a) * rng.random::<f64>())
            .collect();
        mat_vec(&self.frame, &u)
    }
}

/// A set with a membership test and a region containing it.
pub trait FundamentalDomain: Sync {
    fn id(&self) -> String;
    fn ambient_dim(&self) -> usize;
    fn contains(&self, x: &[f64]) -> bool;
    fn measure(&self) -> f64;
    /// Orthonormal-frame box that contains the domain.
    fn sample_region(&self) -> SampleRegion;
}

/// Anything whose generator columns translate points of the ambient space.
pub trait TranslationLattice: Sync {
    /// `ambient_dim × rank` generator.
    fn translations(&self) -> &DMatrix<f64>;
}

impl TranslationLattice for Lattice {
    fn translations(&self) -> &DMatrix<f64> {
        self.generator()
    }
}

impl TranslationLattice for EmbeddedLattice {
    fn translations(&self) -> &DMatrix<f64> {
        self.generator()
    }
}

/// `Ω_P = { A t : t ∈ [0,1)^d }`.
#[derive(Debug, Clone)]
pub struct Parallelotope {
    lattice: Lattice,
}

impl Parallelotope {
    pub fn new(lattice: Lattice) -> Self {
        Self { lattice }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The representative of `x + L` inside the parallelotope.
    pub fn reduce(&self, x: &[f64]) -> Vec<f64> {
        let t: Vec<f64> = self
            .lattice
            .to_basis_coords(x)
            .into_iter()
            .map(|v| {
                let r = v - v.floor();
                // an integer coordinate that came back as k - ulp lands on
                // the far face; snap it to the near one
                if r >= 1.0 - 1e-12 * (1.0 + v.abs()) {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        self.lattice.from_basis_coords(&t)
    }
}

impl FundamentalDomain for Parallelotope {
    fn id(&self) -> String {
        format!("parallelotope_d{}", self.lattice.dim())
    }

    fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.lattice
            .to_basis_coords(x)
            .iter()
            .all(|&t| (0.0..1.0).contains(&t))
    }

    fn measure(&self) -> f64 {
        self.lattice.covolume()
    }

    fn sample_region(&self) -> SampleRegion {
        let d = self.lattice.dim();
        let mut lo = vec![0.0f64; d];
        let mut hi = vec![0.0f64; d];
        for corner in IndexBox::new(d, 0, 1) {
            let p = self.lattice.point(&corner);
            for i in 0..d {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        SampleRegion {
            frame: DMatrix::identity(d, d),
            lo,
            hi,
        }
    }
}

/// `Ω_H = { t : Σ t_i = 0, -s < t_i - t_j ≤ s for i < j }` with `s = 1` for
/// the fundamental domain of `A_d`. Other scales are only useful to break
/// the tiling on purpose.
#[derive(Debug, Clone)]
pub struct HexDomainAd {
    d: usize,
    scale: f64,
    frame: DMatrix<f64>,
}

impl HexDomainAd {
    pub fn new(d: usize) -> Self {
        Self::scaled(d, 1.0)
    }

    pub fn scaled(d: usize, scale: f64) -> Self {
        assert!(d >= 1 && scale > 0.0);
        Self {
            d,
            scale,
            frame: crate::lattice::a_d_lattice(d).frame().clone(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

impl FundamentalDomain for HexDomainAd {
    fn id(&self) -> String {
        if self.scale == 1.0 {
            format!("hex_a{}", self.d)
        } else {
            format!("hex_a{}_scale{}", self.d, self.scale)
        }
    }

    fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    fn contains(&self, t: &[f64]) -> bool {
        let s = self.scale;
        let norm1: f64 = t.iter().map(|v| v.abs()).sum();
        if t.iter().sum::<f64>().abs() > 1e-9 * (1.0 + norm1) {
            return false;
        }
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let diff = t[i] - t[j];
                if !(diff > -s && diff <= s) {
                    return false;
                }
            }
        }
        true
    }

    fn measure(&self) -> f64 {
        ((self.d + 1) as f64).sqrt() * self.scale.powi(self.d as i32)
    }

    fn sample_region(&self) -> SampleRegion {
        // every point of Ω_H has |t| ≤ sqrt(d+1)/2
        let r = 0.5 * ((self.d + 1) as f64).sqrt() * self.scale * (1.0 + 1e-9);
        SampleRegion {
            frame: self.frame.clone(),
            lo: vec![-r; self.d],
            hi: vec![r; self.d],
        }
    }
}

/// Result of a Monte Carlo tiling check.
#[derive(Debug, Clone, PartialEq)]
pub struct TilingReport {
    pub domain_id: String,
    pub n_samples: usize,
    pub fraction_exactly_one: f64,
    pub seed: u64,
}

impl TilingReport {
    pub const CSV_HEADER: &'static str = "domain_id,n_samples,fraction_exactly_one,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.domain_id, self.n_samples, self.fraction_exactly_one, self.seed
        )
    }
}

/// Smallest index radius guaranteeing that every translate `x - λ` landing in
/// the sample region is visited, for `x` in that region.
pub fn required_shift_radius<D, L>(dom: &D, lat: &L) -> usize
where
    D: FundamentalDomain + ?Sized,
    L: TranslationLattice + ?Sized,
{
    let region = dom.sample_region();
    let g = lat.translations();
    let pinv = g
        .clone()
        .pseudo_inverse(1e-12)
        .expect("pseudo-inverse of a full-rank generator");
    let m = pinv * &region.frame;
    let widths: Vec<f64> = region
        .lo
        .iter()
        .zip(&region.hi)
        .map(|(a, b)| b - a)
        .collect();
    let mut needed = 0.0f64;
    for i in 0..m.nrows() {
        let reach: f64 = (0..m.ncols()).map(|j| m[(i, j)].abs() * widths[j]).sum();
        needed = needed.max(reach);
    }
    (needed - 1e-9).ceil().max(0.0) as usize
}

/// Draws `n_samples` uniform points from the domain's sample region and counts
/// the lattice translates `λ = G m`, `|m|_∞ ≤ shift_radius`, with `x - λ ∈ Ω`.
/// Reports the fraction of points covered exactly once.
pub fn tiling_check<D, L>(
    dom: &D,
    lat: &L,
    n_samples: usize,
    shift_radius: usize,
    seed: u64,
) -> Result<TilingReport>
where
    D: FundamentalDomain + ?Sized,
    L: TranslationLattice + ?Sized,
{
    assert!(n_samples >= 1, "need at least one sample");
    let g = lat.translations();
    if g.nrows() != dom.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: dom.ambient_dim(),
            got: g.nrows(),
        });
    }
    let region = dom.sample_region();
    let r = shift_radius as i64;
    let shifts: Vec<Vec<f64>> = IndexBox::new(g.ncols(), -r, r)
        .map(|m| mat_vec_int(g, &m))
        .collect();

    let chunks = n_samples.div_ceil(CHUNK);
    let counts: Vec<(usize, usize)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c as u64);
            let len = CHUNK.min(n_samples - c * CHUNK);
            let mut exactly_one = 0;
            let mut zero = 0;
            let mut y = vec![0.0; dom.ambient_dim()];
            for _ in 0..len {
                let x = region.sample(&mut rng);
                let mut hits = 0;
                for lambda in &shifts {
                    for i in 0..y.len() {
                        y[i] = x[i] - lambda[i];
                    }
                    if dom.contains(&y) {
                        hits += 1;
                    }
                }
                match hits {
                    0 => zero += 1,
                    1 => exactly_one += 1,
                    _ => {}
                }
            }
            (exactly_one, zero)
        })
        .collect();
    let exactly_one: usize = counts.iter().map(|c| c.0).sum();
    let uncovered: usize = counts.iter().map(|c| c.1).sum();

    let needed = required_shift_radius(dom, lat);
    if uncovered > 0 && shift_radius < needed {
        return Err(Error::InsufficientShiftRadius {
            given: shift_radius,
            needed,
        });
    }
    Ok(TilingReport {
        domain_id: dom.id(),
        n_samples,
        fraction_exactly_one: exactly_one as f64 / n_samples as f64,
        seed,
    })
}

/// Hit-or-miss volume of the domain inside its sample region.
pub fn monte_carlo_measure<D: FundamentalDomain + ?Sized>(
    dom: &D,
    n_samples: usize,
    seed: u64,
) -> f64 {
    let region = dom.sample_region();
    let chunks = n_samples.div_ceil(CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c as u64);
            let len = CHUNK.min(n_samples - c * CHUNK);
            (0..len)
                .filter(|_| dom.contains(&region.sample(&mut rng)))
                .count()
        })
        .sum();
    region.volume() * hits as f64 / n_samples as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::a_d_lattice;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn reduce_examples() {
        let z2 = Parallelotope::new(Lattice::identity(2));
        assert!(close(&z2.reduce(&[0.25, 0.75]), &[0.25, 0.75]));
        assert!(close(&z2.reduce(&[1.25, -0.25]), &[0.25, 0.75]));
        let diag = Parallelotope::new(Lattice::diagonal(&[2.0, 1.0]).unwrap());
        assert!(close(&diag.reduce(&[2.5, 0.0]), &[0.5, 0.0]));
    }

    #[test]
    fn reduce_never_returns_upper_face() {
        let z1 = Parallelotope::new(Lattice::identity(1));
        let y = z1.reduce(&[-1e-18]);
        assert!(z1.contains(&y), "{y:?}");
    }

    #[test]
    fn measures() {
        assert_eq!(Parallelotope::new(Lattice::identity(2)).measure(), 1.0);
        assert!((HexDomainAd::new(2).measure() - 3f64.sqrt()).abs() < 1e-15);
        assert!((HexDomainAd::new(2).measure() - 1.7320508).abs() < 1e-7);
    }

    #[test]
    fn hex_membership_boundary_convention() {
        let hex = HexDomainAd::new(2);
        // t_1 - t_2 = 1 is inside, t_1 - t_2 = -1 is not
        assert!(hex.contains(&[0.5, -0.5, 0.0]));
        assert!(!hex.contains(&[-0.5, 0.5, 0.0]));
        assert!(hex.contains(&[0.0, 0.0, 0.0]));
        assert!(!hex.contains(&[0.1, 0.1, 0.1]));
    }

    #[test]
    fn parallelotope_tiles() {
        let report = tiling_check(
            &Parallelotope::new(Lattice::identity(2)),
            &Lattice::identity(2),
            10_000,
            2,
            1,
        )
        .unwrap();
        assert!(report.fraction_exactly_one >= 0.999);
        assert_eq!(report.csv_row(), "parallelotope_d2,10000,1,1");
    }

    #[test]
    fn hexagon_tiles_and_shrunken_hexagon_does_not() {
        let a2 = a_d_lattice(2);
        let needed = required_shift_radius(&HexDomainAd::new(2), &a2);
        let report = tiling_check(&HexDomainAd::new(2), &a2, 10_000, needed, 3).unwrap();
        assert!(report.fraction_exactly_one >= 0.999, "{report:?}");
        let broken = tiling_check(&HexDomainAd::scaled(2, 0.9), &a2, 10_000, needed, 3).unwrap();
        assert!(broken.fraction_exactly_one < 0.9, "{broken:?}");
    }

    #[test]
    fn insufficient_radius_is_reported() {
        let lat = Lattice::from_rows(&[vec![1.0, 3.0], vec![0.0, 1.0]]).unwrap();
        let dom = Parallelotope::new(lat.clone());
        let err = tiling_check(&dom, &lat, 2000, 0, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::InsufficientShiftRadius { given: 0, .. }
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let err = tiling_check(&HexDomainAd::new(2), &Lattice::identity(2), 10, 1, 0).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn hexagon_monte_carlo_area() {
        let area = monte_carlo_measure(&HexDomainAd::new(2), 400_000, 9);
        assert!((area / 3f64.sqrt() - 1.0).abs() < 0.01, "{area}");
    }
}
