//! Fourier multipliers `Af = F⁻¹(σ F f)` on a fundamental domain, the growth
//! functional of a symbol, and empirical `L^p → L^q` operator norms.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inequality::{breakpoint_sup, lp_norm_domain};
use crate::lattice::{DualPoint, Lattice};
use crate::random::{complex_normal, stream_rng};
use crate::transform::{forward, inverse, GridFunction, Spectrum};

/// Relative change allowed between growth functionals at `K` and `2K`.
pub const GROWTH_STABILITY_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    /// `σ(κ) = e^{-|κ|²}`
    Gaussian,
    /// `σ(κ) = a₀`, the operator `f ↦ a₀ f`.
    Constant(Complex64),
    /// `σ(κ) = Σ_α a_α (2πiκ)^α`, the symbol of `Σ_α a_α ∂^α`.
    Polynomial(Vec<(Vec<u32>, Complex64)>),
    /// Explicit values by dual index; undefined elsewhere.
    Table(BTreeMap<Vec<i64>, Complex64>),
}

impl Symbol {
    pub fn eval(&self, point: &DualPoint) -> Result<Complex64> {
        match self {
            Symbol::Gaussian => {
                let r2: f64 = point.coords.iter().map(|c| c * c).sum();
                Ok(Complex64::new((-r2).exp(), 0.0))
            }
            Symbol::Constant(a) => Ok(*a),
            Symbol::Polynomial(terms) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (alpha, coeff) in terms {
                    if alpha.len() != point.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: point.dim(),
                            got: alpha.len(),
                        });
                    }
                    let mut term = *coeff;
                    for (&a, &k) in alpha.iter().zip(&point.coords) {
                        term *= Complex64::new(0.0, 2.0 * PI * k).powu(a);
                    }
                    acc += term;
                }
                Ok(acc)
            }
            Symbol::Table(values) => {
                values
                    .get(&point.index)
                    .copied()
                    .ok_or_else(|| Error::SymbolUndefined {
                        index: point.index.clone(),
                    })
            }
        }
    }

    /// The symbol `conj(σ)` of the adjoint operator.
    pub fn conj(&self) -> Symbol {
        match self {
            Symbol::Gaussian => Symbol::Gaussian,
            Symbol::Constant(a) => Symbol::Constant(a.conj()),
            // conj((2πiκ)^α) = (-1)^{|α|} (2πiκ)^α
            Symbol::Polynomial(terms) => Symbol::Polynomial(
                terms
                    .iter()
                    .map(|(alpha, c)| {
                        let order: u32 = alpha.iter().sum();
                        let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
                        (alpha.clone(), c.conj() * sign)
                    })
                    .collect(),
            ),
            Symbol::Table(values) => {
                Symbol::Table(values.iter().map(|(k, v)| (k.clone(), v.conj())).collect())
            }
        }
    }

    /// Tabulates the symbol on `points`.
    pub fn tabulate<'a>(&self, points: impl IntoIterator<Item = &'a DualPoint>) -> Result<Symbol> {
        let mut values = BTreeMap::new();
        for p in points {
            values.insert(p.index.clone(), self.eval(p)?);
        }
        Ok(Symbol::Table(values))
    }

    /// Pointwise product `σ₁ σ₂` tabulated on `points`.
    pub fn product_on<'a>(
        &self,
        other: &Symbol,
        points: impl IntoIterator<Item = &'a DualPoint>,
    ) -> Result<Symbol> {
        let mut values = BTreeMap::new();
        for p in points {
            values.insert(p.index.clone(), self.eval(p)? * other.eval(p)?);
        }
        Ok(Symbol::Table(values))
    }

    fn magnitudes<'a>(&self, points: impl IntoIterator<Item = &'a DualPoint>) -> Result<Vec<f64>> {
        points
            .into_iter()
            .map(|p| self.eval(p).map(|v| v.norm()))
            .collect()
    }

    /// Parses `gaussian`, `const:re,im`, `poly:<a,b=re[:im];...>` or
    /// `table:<path>`. Relative table paths resolve against `base_dir`.
    pub fn parse(spec: &str, base_dir: Option<&Path>) -> Result<Symbol> {
        let spec = spec.trim();
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        match kind {
            "gaussian" if rest.is_empty() => Ok(Symbol::Gaussian),
            "const" => {
                let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
                let num = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad constant `{s}` in `{spec}`")))
                };
                match parts.as_slice() {
                    [re] => Ok(Symbol::Constant(Complex64::new(num(re)?, 0.0))),
                    [re, im] => Ok(Symbol::Constant(Complex64::new(num(re)?, num(im)?))),
                    _ => Err(Error::Parse(format!("expected const:re,im, got `{spec}`"))),
                }
            }
            "poly" => {
                let mut terms = Vec::new();
                for term in rest.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                    let (alpha, coeff) = term
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("term `{term}` lacks `=`")))?;
                    let alpha = alpha
                        .split(',')
                        .map(|a| {
                            a.trim()
                                .parse::<u32>()
                                .map_err(|_| Error::Parse(format!("bad multi-index `{a}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    terms.push((alpha, parse_complex(coeff)?));
                }
                if terms.is_empty() {
                    return Err(Error::Parse("polynomial symbol without terms".into()));
                }
                let dim = terms[0].0.len();
                if terms.iter().any(|(a, _)| a.len() != dim) {
                    return Err(Error::Parse("multi-indices of different lengths".into()));
                }
                Ok(Symbol::Polynomial(terms))
            }
            "table" => {
                let path = Path::new(rest);
                let path = match base_dir {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.to_path_buf(),
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                Symbol::parse_table(&text)
            }
            _ => Err(Error::Parse(format!("unknown symbol `{spec}`"))),
        }
    }

    /// Table CSV: rows `k_1,...,k_d,re,im`. Comment lines (`#`) and a header
    /// row starting with a non-numeric field are skipped.
    pub fn parse_table(text: &str) -> Result<Symbol> {
        let mut values = BTreeMap::new();
        let mut dim = None;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields[0].parse::<i64>().is_err() && values.is_empty() {
                continue;
            }
            if fields.len() < 3 {
                return Err(Error::Parse(format!("table row `{line}` too short")));
            }
            let d = fields.len() - 2;
            if *dim.get_or_insert(d) != d {
                return Err(Error::Parse(format!("table row `{line}` has wrong arity")));
            }
            let index = fields[..d]
                .iter()
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad index `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let re: f64 = fields[d]
                .parse()
                .map_err(|_| Error::Parse(format!("bad value `{}`", fields[d])))?;
            let im: f64 = fields[d + 1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad value `{}`", fields[d + 1])))?;
            values.insert(index, Complex64::new(re, im));
        }
        Ok(Symbol::Table(values))
    }
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(
            re.trim().parse().map_err(|_| bad())?,
            im.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0)),
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Gaussian => write!(f, "gaussian"),
            Symbol::Constant(a) => write!(f, "const:{},{}", a.re, a.im),
            Symbol::Polynomial(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(alpha, c)| {
                        let idx: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
                        format!("{}={}:{}", idx.join(","), c.re, c.im)
                    })
                    .collect();
                write!(f, "poly:{}", parts.join(";"))
            }
            Symbol::Table(values) => write!(f, "table[{}]", values.len()),
        }
    }
}

/// Multiplies every coefficient of `s` by `σ(κ)`.
pub fn multiply_spectrum(sigma: &Symbol, s: &Spectrum) -> Result<Spectrum> {
    let mut out = Spectrum::new(s.lattice().clone(), s.band());
    for (p, &c) in s.iter() {
        out.insert(&p.index, sigma.eval(p)? * c)?;
    }
    Ok(out)
}

/// `Af = F⁻¹(σ · F f)` with the spectrum truncated to `[-K, K]^d`.
pub fn apply(sigma: &Symbol, f: &GridFunction, band: usize) -> Result<GridFunction> {
    let s = forward(f, band)?;
    inverse(&multiply_spectrum(sigma, &s)?, f.n_per_axis())
}

/// `sup_{s>0} s (#{κ ∈ pts : |σ(κ)| ≥ s})^{1/p - 1/q}`.
pub fn symbol_growth(sigma: &Symbol, points: &[DualPoint], p: f64, q: f64) -> Result<f64> {
    if p.is_nan() || q.is_nan() || p < 1.0 || q < 1.0 {
        return Err(Error::BadExponentPair { p, q });
    }
    let exponent = 1.0 / p - 1.0 / q;
    if exponent < 0.0 {
        return Err(Error::BadExponentPair { p, q });
    }
    Ok(breakpoint_sup(
        sigma.magnitudes(points)?.into_iter(),
        exponent,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct L2Bound {
    pub bound: f64,
    /// Lexicographically smallest dual point where `|σ|` is largest.
    pub witness: DualPoint,
}

/// `sup |σ|` over `points`, the `L² → L²` norm of the truncated multiplier.
pub fn l2_opnorm_bound(sigma: &Symbol, points: &[DualPoint]) -> Result<L2Bound> {
    let mut sorted: Vec<&DualPoint> = points.iter().collect();
    sorted.sort();
    let mut best: Option<(f64, &DualPoint)> = None;
    for p in sorted {
        let v = sigma.eval(p)?.norm();
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, p));
        }
    }
    let (bound, witness) = best.ok_or(Error::EmptyWeight)?;
    Ok(L2Bound {
        bound,
        witness: witness.clone(),
    })
}

/// Parameters of an empirical operator-norm estimate.
#[derive(Debug, Clone)]
pub struct OpNormExperiment {
    pub lattice: Lattice,
    pub p: f64,
    pub q: f64,
    pub trials: usize,
    /// Grid points per axis where both norms are evaluated.
    pub grid: usize,
    pub band: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Constant,
    Mode(Vec<i64>),
    Trial(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpNormEstimate {
    pub value: f64,
    pub witness: Witness,
}

fn norm_ratio(sigma: &Symbol, s: &Spectrum, grid: usize, p: f64, q: f64) -> Result<f64> {
    let f = inverse(s, grid)?;
    let af = inverse(&multiply_spectrum(sigma, s)?, grid)?;
    let denom = lp_norm_domain(&f, p)?;
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(lp_norm_domain(&af, q)? / denom)
}

/// Test spectrum for trial `t`: even trials draw iid complex normal
/// coefficients on the whole band, odd trials perturb the constant function
/// by a random band-limited term of random amplitude.
fn trial_spectrum(lattice: &Lattice, band: usize, seed: u64, trial: usize) -> Spectrum {
    let mut rng = stream_rng(seed, trial as u64);
    if trial.is_multiple_of(2) {
        Spectrum::from_fn(lattice.clone(), band, |_| complex_normal(&mut rng))
    } else {
        let n_modes = (2 * band + 1).pow(lattice.dim() as u32) as f64;
        let amplitude = rng.random::<f64>() / n_modes.sqrt();
        Spectrum::from_fn(lattice.clone(), band, |p| {
            let z = complex_normal(&mut rng) * amplitude;
            if p.index.iter().all(|&k| k == 0) {
                z + 1.0
            } else {
                z
            }
        })
    }
}

/// Lower bound on `‖A‖_{L^p → L^q}`: the best of the constant function, every
/// single mode of the band and `trials` random band-limited functions.
pub fn empirical_opnorm(sigma: &Symbol, exp: &OpNormExperiment) -> Result<OpNormEstimate> {
    if 2 * exp.band + 1 > exp.grid {
        return Err(Error::BandExceedsGrid {
            band: exp.band,
            grid: exp.grid,
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let mut best = OpNormEstimate {
        value: norm_ratio(
            sigma,
            &Spectrum::delta(
                exp.lattice.clone(),
                exp.band,
                &vec![0; exp.lattice.dim()],
                one,
            )?,
            exp.grid,
            exp.p,
            exp.q,
        )?,
        witness: Witness::Constant,
    };
    for point in exp.lattice.band_points(exp.band) {
        let s = Spectrum::delta(exp.lattice.clone(), exp.band, &point.index, one)?;
        let v = norm_ratio(sigma, &s, exp.grid, exp.p, exp.q)?;
        if v > best.value {
            best = OpNormEstimate {
                value: v,
                witness: Witness::Mode(point.index.clone()),
            };
        }
    }
    let trial_values: Vec<f64> = (0..exp.trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_spectrum(&exp.lattice, exp.band, exp.seed, t);
            norm_ratio(sigma, &s, exp.grid, exp.p, exp.q)
        })
        .collect::<Result<_>>()?;
    for (t, v) in trial_values.into_iter().enumerate() {
        if v > best.value {
            best = OpNormEstimate {
                value: v,
                witness: Witness::Trial(t),
            };
        }
    }
    Ok(best)
}

/// `|⟨Af, g⟩ - ⟨f, A*g⟩|` where `A*` has symbol `conj(σ)`.
pub fn adjoint_symbol_check(
    sigma: &Symbol,
    f: &GridFunction,
    g: &GridFunction,
    band: usize,
) -> Result<f64> {
    let af = apply(sigma, f, band)?;
    let adj_g = apply(&sigma.conj(), g, band)?;
    Ok((af.inner(g) - f.inner(&adj_g)).norm())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthStability {
    pub at_band: f64,
    pub at_double: f64,
    pub relative_change: f64,
    pub stable: bool,
}

/// Growth functional on the index cubes `[-K, K]^d` and `[-2K, 2K]^d`; stable
/// when they agree within [`GROWTH_STABILITY_TOLERANCE`].
pub fn growth_stability(
    sigma: &Symbol,
    lattice: &Lattice,
    band: usize,
    p: f64,
    q: f64,
) -> Result<GrowthStability> {
    let at_band = symbol_growth(sigma, &lattice.band_points(band), p, q)?;
    let at_double = symbol_growth(sigma, &lattice.band_points(2 * band), p, q)?;
    let relative_change = if at_band > 0.0 {
        (at_double - at_band).abs() / at_band
    } else if at_double == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(GrowthStability {
        at_band,
        at_double,
        relative_change,
        stable: relative_change <= GROWTH_STABILITY_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_band_limited, seeded};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn table_1d(values: &[f64]) -> (Symbol, Vec<DualPoint>) {
        let lat = Lattice::identity(1);
        let pts: Vec<DualPoint> = (0..values.len())
            .map(|i| lat.dual_point(&[i as i64]))
            .collect();
        let table = pts
            .iter()
            .zip(values)
            .map(|(p, &v)| (p.index.clone(), c(v, 0.0)))
            .collect();
        (Symbol::Table(table), pts)
    }

    #[test]
    fn identity_and_constant_symbols() {
        let lat = Lattice::diagonal(&[2.0, 1.0]).unwrap();
        let f = random_band_limited(&mut seeded(1), &lat, 10, 3);
        let same = apply(&Symbol::Constant(c(1.0, 0.0)), &f, 3).unwrap();
        assert!(same.max_abs_diff(&f) < 1e-10);
        let a0 = c(2.0, -0.5);
        let scaled = apply(&Symbol::Constant(a0), &f, 3).unwrap();
        assert!(scaled.max_abs_diff(&f.map(|z| z * a0)) < 1e-10);
    }

    #[test]
    fn derivative_symbol_on_exponential() {
        let lat = Lattice::from_rows(&[vec![1.0, 0.5], vec![0.0, 2.0]]).unwrap();
        let k0 = [2, -1];
        let e = GridFunction::mode(lat.clone(), 9, &k0);
        let d1 = Symbol::Polynomial(vec![(vec![1, 0], c(1.0, 0.0))]);
        let out = apply(&d1, &e, 4).unwrap();
        let kappa = lat.dual_point(&k0).coords[0];
        let expected = e.map(|z| z * c(0.0, 2.0 * PI * kappa));
        assert!(out.max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn polynomial_conjugate_matches_pointwise_conjugate() {
        let sigma = Symbol::parse("poly:2,1=1.5:-0.5;0,1=0:2;0,0=3", None).unwrap();
        let conj = sigma.conj();
        for p in Lattice::identity(2).band_points(2) {
            let a = sigma.eval(&p).unwrap().conj();
            let b = conj.eval(&p).unwrap();
            assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn growth_examples() {
        let (sigma, pts) = table_1d(&[3.0, 2.0, 1.0]);
        assert_eq!(
            symbol_growth(&sigma, &pts, 1.0, f64::INFINITY).unwrap(),
            4.0
        );
        assert_eq!(symbol_growth(&sigma, &pts, 2.0, 2.0).unwrap(), 3.0);
        assert!(matches!(
            symbol_growth(&sigma, &pts, 3.0, 2.0),
            Err(Error::BadExponentPair { .. })
        ));
    }

    #[test]
    fn gaussian_growth_settles() {
        let lat = Lattice::identity(2);
        let values: Vec<f64> = [8usize, 16, 32]
            .iter()
            .map(|&k| {
                symbol_growth(&Symbol::Gaussian, &lat.band_points(k), 4.0 / 3.0, 4.0).unwrap()
            })
            .collect();
        assert!(values.iter().all(|v| v.is_finite() && *v > 0.0));
        assert!((values[1] - values[0]).abs() < 1e-12);
        assert!((values[2] - values[1]).abs() < 1e-12);
        let stab = growth_stability(&Symbol::Gaussian, &lat, 8, 4.0 / 3.0, 4.0).unwrap();
        assert!(stab.stable);
        let poly = Symbol::Polynomial(vec![(vec![1, 0], c(1.0, 0.0))]);
        assert!(
            !growth_stability(&poly, &lat, 8, 4.0 / 3.0, 4.0)
                .unwrap()
                .stable
        );
    }

    #[test]
    fn l2_bound_examples() {
        let lat = Lattice::identity(2);
        let pts = lat.band_points(3);
        let g = l2_opnorm_bound(&Symbol::Gaussian, &pts).unwrap();
        assert_eq!(g.bound, 1.0);
        assert_eq!(g.witness.index, vec![0, 0]);
        let (sigma, pts) = table_1d(&[3.0, 2.0, 1.0]);
        assert_eq!(l2_opnorm_bound(&sigma, &pts).unwrap().bound, 3.0);
        // ties resolve to the smallest index
        let (sigma, pts) = table_1d(&[1.0, 5.0, 5.0]);
        assert_eq!(
            l2_opnorm_bound(&sigma, &pts).unwrap().witness.index,
            vec![1]
        );
    }

    #[test]
    fn empirical_opnorm_constant_symbol() {
        let lat = Lattice::identity(1);
        let exp = OpNormExperiment {
            lattice: lat,
            p: 4.0 / 3.0,
            q: 4.0,
            trials: 8,
            grid: 4 * 9,
            band: 4,
            seed: 1,
        };
        let est = empirical_opnorm(&Symbol::Constant(c(0.0, 2.5)), &exp).unwrap();
        // p < q, so constants are not always the best witness; they give |a₀|
        assert!(est.value >= 2.5 - 1e-12);
        let exp_pp = OpNormExperiment {
            q: 4.0 / 3.0,
            ..exp
        };
        let est = empirical_opnorm(&Symbol::Constant(c(0.0, 2.5)), &exp_pp).unwrap();
        assert!((est.value - 2.5).abs() < 1e-12);
    }

    #[test]
    fn empirical_opnorm_delta_symbol() {
        let lat = Lattice::identity(1);
        let band = 4;
        let pts = lat.band_points(band);
        let sigma = Symbol::Table(
            pts.iter()
                .map(|p| {
                    (
                        p.index.clone(),
                        c(if p.index == [2] { 1.0 } else { 0.0 }, 0.0),
                    )
                })
                .collect(),
        );
        let exp = OpNormExperiment {
            lattice: lat,
            p: 2.0,
            q: 2.0,
            trials: 0,
            grid: 36,
            band,
            seed: 0,
        };
        let est = empirical_opnorm(&sigma, &exp).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        assert_eq!(est.witness, Witness::Mode(vec![2]));
        assert_eq!(symbol_growth(&sigma, &pts, 2.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn adjoint_cases() {
        let lat = Lattice::identity(2);
        let e = GridFunction::mode(lat.clone(), 8, &[1, 2]);
        // zero up to FFT rounding
        assert!(adjoint_symbol_check(&Symbol::Gaussian, &e, &e, 3).unwrap() < 1e-15);

        let mut rng = seeded(4);
        let f = random_band_limited(&mut rng, &lat, 8, 3);
        let g = random_band_limited(&mut rng, &lat, 8, 3);
        let skew = Symbol::Constant(c(0.0, 1.5));
        let af = apply(&skew, &f, 3).unwrap();
        let ag = apply(&skew, &g, 3).unwrap();
        assert!((af.inner(&g) + f.inner(&ag)).norm() < 1e-10);
        let defect = adjoint_symbol_check(&skew, &f, &g, 3).unwrap();
        assert!(defect <= 1e-10 * f.energy().sqrt() * g.energy().sqrt());
    }

    #[test]
    fn symbol_parsing() {
        assert_eq!(Symbol::parse("gaussian", None).unwrap(), Symbol::Gaussian);
        assert_eq!(
            Symbol::parse("const:2,-1", None).unwrap(),
            Symbol::Constant(c(2.0, -1.0))
        );
        assert!(Symbol::parse("const:a", None).is_err());
        assert!(Symbol::parse("poly:1,0=1;0=2", None).is_err());
        assert!(Symbol::parse("wavelet", None).is_err());
        let t = Symbol::parse_table("# schema=1\nk_1,re,im\n0,1,0\n1,0.5,-0.5\n").unwrap();
        let lat = Lattice::identity(1);
        assert_eq!(t.eval(&lat.dual_point(&[1])).unwrap(), c(0.5, -0.5));
        assert!(matches!(
            t.eval(&lat.dual_point(&[2])),
            Err(Error::SymbolUndefined { .. })
        ));
        let poly = Symbol::parse("poly:1,0=0:1;0,0=2", None).unwrap();
        assert_eq!(Symbol::parse(&poly.to_string(), None).unwrap(), poly);
    }
}
