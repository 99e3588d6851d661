//! Lattices `L = A Z^d`, their duals `L⊥ = A^{-T} Z^d`, the `A_d` family and
//! enumeration of dual frequencies inside a ball.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Default cap on the number of index-box candidates visited by
/// [`Lattice::enumerate_dual`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 50_000_000;

/// A full-rank lattice in `R^d` given by a generator matrix whose columns are
/// the basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    generator: DMatrix<f64>,
    inverse: DMatrix<f64>,
    covolume: f64,
}

/// A frequency of the dual lattice together with its integer index:
/// `coords = A^{-T} index`.
///
/// Equality and ordering only look at the index, so points of one lattice
/// sort lexicographically by index.
#[derive(Debug, Clone)]
pub struct DualPoint {
    pub index: Vec<i64>,
    pub coords: Vec<f64>,
}

impl DualPoint {
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }
}

impl PartialEq for DualPoint {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for DualPoint {}

impl PartialOrd for DualPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DualPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index)
    }
}

/// Singularity threshold `1e-10 * max|a_ij|^d`.
fn rank_threshold(m: &DMatrix<f64>) -> f64 {
    let max = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    1e-10 * max.powi(m.nrows() as i32)
}

impl Lattice {
    pub fn new(generator: DMatrix<f64>) -> Result<Self> {
        if generator.nrows() != generator.ncols() {
            return Err(Error::NotSquare {
                rows: generator.nrows(),
                cols: generator.ncols(),
            });
        }
        if generator.nrows() == 0 {
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        if generator.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = generator.determinant();
        let threshold = rank_threshold(&generator);
        if !(det.abs() > threshold) {
            return Err(Error::SingularGenerator { det, threshold });
        }
        let inverse = generator
            .clone()
            .try_inverse()
            .ok_or(Error::SingularGenerator { det, threshold })?;
        Ok(Self {
            generator,
            inverse,
            covolume: det.abs(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(DMatrix::identity(dim, dim)).expect("identity is invertible")
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(
            &nalgebra::DVector::from_column_slice(entries),
        ))
    }

    /// Builds a lattice from matrix rows (row-major input).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        for row in rows {
            if row.len() != d {
                return Err(Error::NotSquare {
                    rows: d,
                    cols: row.len(),
                });
            }
        }
        Self::new(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    /// Parses the plain-text generator format: first line `d`, then `d` rows
    /// of `d` whitespace-separated decimals. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty generator file".into()))?;
        let d: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension line `{header}`")))?;
        if d == 0 {
            return Err(Error::Parse("dimension must be positive".into()));
        }
        let mut rows = Vec::with_capacity(d);
        for r in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {d} rows, found {r}")))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number `{tok}` in row {}", r + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != d {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {d}",
                    r + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content `{extra}`")));
        }
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &DMatrix<f64> {
        &self.generator
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn covolume(&self) -> f64 {
        self.covolume
    }

    /// The dual lattice, generated by `A^{-T}`.
    pub fn dual(&self) -> Lattice {
        let generator = self.inverse.transpose();
        let inverse = self.generator.transpose();
        Lattice {
            generator,
            inverse,
            covolume: 1.0 / self.covolume,
        }
    }

    /// Lattice vector `A m`.
    pub fn point(&self, m: &[i64]) -> Vec<f64> {
        mat_vec_int(&self.generator, m)
    }

    /// Coordinates `A^{-1} x` of a point relative to the basis.
    pub fn to_basis_coords(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.inverse[(i, j)] * x[j]).sum())
            .collect()
    }

    /// Image `A t` of basis coordinates.
    pub fn from_basis_coords(&self, t: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.generator[(i, j)] * t[j]).sum())
            .collect()
    }

    /// The dual frequency `κ = A^{-T} k`.
    pub fn dual_point(&self, index: &[i64]) -> DualPoint {
        let d = self.dim();
        assert_eq!(index.len(), d, "dual index dimension");
        // (A^{-T})_{ij} = (A^{-1})_{ji}
        let coords = (0..d)
            .map(|i| (0..d).map(|j| self.inverse[(j, i)] * index[j] as f64).sum())
            .collect();
        DualPoint {
            index: index.to_vec(),
            coords,
        }
    }

    /// All dual points in the index cube `[-band, band]^d`, lexicographic.
    pub fn band_points(&self, band: usize) -> Vec<DualPoint> {
        let b = band as i64;
        IndexBox::new(self.dim(), -b, b)
            .map(|k| self.dual_point(&k))
            .collect()
    }

    /// Every `κ ∈ L⊥` with `|κ| ≤ radius`, in lexicographic index order.
    pub fn enumerate_dual(&self, radius: f64) -> Result<Vec<DualPoint>> {
        self.enumerate_dual_capped(radius, DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_dual_capped(&self, radius: f64, cap: u128) -> Result<Vec<DualPoint>> {
        assert!(
            radius > 0.0 && radius.is_finite(),
            "radius must be positive"
        );
        // k = A^T κ, so |k_i| ≤ ‖A^T‖₂ |κ|.
        let op_norm = self.generator.clone().singular_values().max();
        let half = (op_norm * radius * (1.0 + 1e-12)).floor() as i64;
        let side: u128 = 2 * half as u128 + 1;
        let candidates = side.checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if candidates > cap {
            return Err(Error::TruncationOverflow { candidates, cap });
        }
        let tol = radius * 1e-12;
        Ok(IndexBox::new(self.dim(), -half, half)
            .map(|k| self.dual_point(&k))
            .filter(|p| p.norm() <= radius + tol)
            .collect())
    }

    /// The bound `∏_j |ã_j·e_j|^{-1} (2R+1)^d` on the number of dual points in
    /// the ball of radius `R`, where `ã_j` are the columns of the dual
    /// generator `A^{-T}`.
    ///
    /// The bound is not universal: strongly sheared lattices, or lattices
    /// whose dual diagonal exceeds one, can beat it.
    pub fn count_bound(&self, radius: f64) -> Result<f64> {
        let dual = self.inverse.transpose();
        let scale = dual.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let mut c = 1.0;
        for j in 0..self.dim() {
            let diag = dual[(j, j)].abs();
            if diag <= 1e-14 * scale {
                return Err(Error::DegenerateAxis { axis: j });
            }
            c /= diag;
        }
        Ok(c * (2.0 * radius + 1.0).powi(self.dim() as i32))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        writeln!(f, "{d}")?;
        for i in 0..d {
            let row: Vec<String> = (0..d)
                .map(|j| format!("{}", self.generator[(i, j)]))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn mat_vec_int(m: &DMatrix<f64>, v: &[i64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j] as f64).sum())
        .collect()
}

pub(crate) fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

/// Odometer over the integer box `[lo, hi]^dim`, first coordinate most
/// significant (lexicographic order).
#[derive(Debug, Clone)]
pub struct IndexBox {
    lo: i64,
    hi: i64,
    current: Option<Vec<i64>>,
}

impl IndexBox {
    pub fn new(dim: usize, lo: i64, hi: i64) -> Self {
        let current = (lo <= hi).then(|| vec![lo; dim]);
        Self { lo, hi, current }
    }
}

impl Iterator for IndexBox {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut axis = cur.len();
        loop {
            if axis == 0 {
                self.current = None;
                break;
            }
            axis -= 1;
            if cur[axis] < self.hi {
                cur[axis] += 1;
                break;
            }
            cur[axis] = self.lo;
        }
        Some(out)
    }
}

/// The root lattice `A_d = Z^{d+1} ∩ {t : Σ t_i = 0}` in homogeneous
/// coordinates, with its `(d+1)×d` generator and dual generator
/// `Ã = A (A^T A)^{-1}`.
#[derive(Debug, Clone)]
pub struct EmbeddedLattice {
    d: usize,
    generator: DMatrix<f64>,
    dual_generator: DMatrix<f64>,
    frame: DMatrix<f64>,
}

impl EmbeddedLattice {
    pub fn intrinsic_dim(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    pub fn generator(&self) -> &DMatrix<f64> {
        &self.generator
    }

    pub fn dual_generator(&self) -> &DMatrix<f64> {
        &self.dual_generator
    }

    /// Orthonormal basis (as columns) of the hyperplane spanned by the
    /// generator.
    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    /// The same lattice written in the orthonormal frame of its hyperplane:
    /// a full-rank `d×d` lattice with covolume `sqrt(det(A^T A))`.
    pub fn intrinsic(&self) -> Lattice {
        Lattice::new(self.frame.transpose() * &self.generator)
            .expect("A_d generator has full column rank")
    }

    /// `(d+1) Ã j`, an integer vector of the lattice for every integer `j`.
    pub fn scaled_dual_point(&self, j: &[i64]) -> Vec<f64> {
        let scale = (self.d + 1) as f64;
        mat_vec_int(&self.dual_generator, j)
            .into_iter()
            .map(|v| v * scale)
            .collect()
    }
}

/// Builds the `A_d` lattice: identity on top, a last row of `-1`.
pub fn a_d_lattice(d: usize) -> EmbeddedLattice {
    assert!(d >= 1, "A_d needs d >= 1");
    let generator = DMatrix::from_fn(d + 1, d, |i, j| {
        if i == d {
            -1.0
        } else if i == j {
            1.0
        } else {
            0.0
        }
    });
    let gram = generator.transpose() * &generator;
    let gram_inv = gram.try_inverse().expect("A^T A = I + J is invertible");
    let dual_generator = &generator * gram_inv;
    let frame = generator.clone().qr().q();
    EmbeddedLattice {
        d,
        generator,
        dual_generator,
        frame,
    }
}
