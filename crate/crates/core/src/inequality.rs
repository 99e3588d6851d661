//! Norms on the domain and on the dual lattice, the weak-type constant of a
//! weight, and numerical checks of the Plancherel, Hausdorff-Young, Paley,
//! Hardy-Littlewood and Hausdorff-Young-Paley inequalities.
//!
//! The Paley-type inequalities only hold up to an unknown universal constant,
//! so their reports carry the ratio `lhs / rhs_scaffold` where the scaffold is
//! the right-hand side without that constant.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::DualPoint;
use crate::transform::{forward, inverse, GridFunction, Spectrum};

/// Slack on the pass condition of the constant-free inequalities.
pub const CONSTANT_FREE_TOLERANCE: f64 = 1e-9;

/// Hölder conjugate: `1/p + 1/p' = 1`, with `1' = ∞` and `∞' = 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn require_exponent(p: f64, lo: f64, lo_open: bool, hi: f64, range: &'static str) -> Result<()> {
    let above = if lo_open { p > lo } else { p >= lo };
    if p.is_nan() || !above || p > hi {
        Err(Error::BadExponent { value: p, range })
    } else {
        Ok(())
    }
}

/// `(Σ v^p)^{1/p}` over nonnegative values; `sup` for `p = ∞`; zero when empty.
fn counting_norm(values: impl Iterator<Item = f64>, p: f64) -> f64 {
    if p.is_infinite() {
        values.fold(0.0, f64::max)
    } else if p == 1.0 {
        values.sum()
    } else if p == 2.0 {
        values.map(|v| v * v).sum::<f64>().sqrt()
    } else {
        values.map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// `((1/N^d) Σ_j |f_j|^p)^{1/p}`, or `max_j |f_j|` for `p = ∞`.
pub fn lp_norm_domain(f: &GridFunction, p: f64) -> Result<f64> {
    require_exponent(p, 1.0, false, f64::INFINITY, "[1, inf]")?;
    let samples = f.samples();
    if p.is_infinite() {
        return Ok(samples.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let n = samples.len() as f64;
    let mean = if p == 2.0 {
        samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / n
    } else {
        samples.iter().map(|z| z.norm().powf(p)).sum::<f64>() / n
    };
    Ok(if p == 2.0 {
        mean.sqrt()
    } else {
        mean.powf(1.0 / p)
    })
}

/// Sequences on the dual lattice measured with the counting measure.
pub trait DualSequence {
    fn magnitudes(&self) -> impl Iterator<Item = f64> + '_;
}

impl DualSequence for Spectrum {
    fn magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.iter().map(|(_, c)| c.norm())
    }
}

impl DualSequence for WeightFunction {
    fn magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.values().copied()
    }
}

/// `(Σ_κ |s(κ)|^p)^{1/p}`; an empty sum is zero.
pub fn lp_norm_dual<S: DualSequence + ?Sized>(s: &S, p: f64) -> Result<f64> {
    require_exponent(p, 1.0, false, f64::INFINITY, "[1, inf]")?;
    Ok(counting_norm(s.magnitudes(), p))
}

/// `max_j v_j j^exponent` over the values sorted in decreasing order, which is
/// `sup_{s>0} s (#{v ≥ s})^exponent` for `exponent ≥ 0`. Zeros never count.
pub(crate) fn breakpoint_sup(values: impl Iterator<Item = f64>, exponent: f64) -> f64 {
    let mut sorted: Vec<f64> = values.filter(|v| *v > 0.0).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted
        .iter()
        .enumerate()
        .map(|(j, v)| v * ((j + 1) as f64).powf(exponent))
        .fold(0.0, f64::max)
}

/// A positive weight `φ` on a finite set of dual points.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    values: BTreeMap<DualPoint, f64>,
}

impl WeightFunction {
    pub fn from_fn<'a>(
        points: impl IntoIterator<Item = &'a DualPoint>,
        mut phi: impl FnMut(&DualPoint) -> f64,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for p in points {
            let v = phi(p);
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidWeight {
                    index: p.index.clone(),
                    value: v,
                });
            }
            values.insert(p.clone(), v);
        }
        Ok(Self { values })
    }

    /// `φ(κ) = (1 + |κ|)^exponent`.
    pub fn power<'a>(
        points: impl IntoIterator<Item = &'a DualPoint>,
        exponent: f64,
    ) -> Result<Self> {
        Self::from_fn(points, |p| (1.0 + p.norm()).powf(exponent))
    }

    pub fn from_values(values: impl IntoIterator<Item = (DualPoint, f64)>) -> Result<Self> {
        let values: BTreeMap<DualPoint, f64> = values.into_iter().collect();
        for (p, &v) in &values {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidWeight {
                    index: p.index.clone(),
                    value: v,
                });
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, point: &DualPoint) -> Option<f64> {
        self.values.get(point).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DualPoint, f64)> {
        self.values.iter().map(|(p, &v)| (p, v))
    }

    fn at(&self, point: &DualPoint) -> Result<f64> {
        self.get(point).ok_or_else(|| Error::MissingWeight {
            index: point.index.clone(),
        })
    }
}

/// `M_φ = sup_{s>0} s #{κ : φ(κ) ≥ s}`, attained at one of the values of `φ`.
pub fn weak_constant(phi: &WeightFunction) -> Result<f64> {
    if phi.is_empty() {
        return Err(Error::EmptyWeight);
    }
    Ok(breakpoint_sup(phi.values.values().copied(), 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityKind {
    Plancherel,
    HausdorffYoung,
    HyInverse,
    Paley,
    HardyLittlewood,
    Hyp,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 6] = [
        InequalityKind::Plancherel,
        InequalityKind::HausdorffYoung,
        InequalityKind::HyInverse,
        InequalityKind::Paley,
        InequalityKind::HardyLittlewood,
        InequalityKind::Hyp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityKind::Plancherel => "plancherel",
            InequalityKind::HausdorffYoung => "hy",
            InequalityKind::HyInverse => "hy_inverse",
            InequalityKind::Paley => "paley",
            InequalityKind::HardyLittlewood => "hardy_littlewood",
            InequalityKind::Hyp => "hyp",
        }
    }

    /// Inequalities that hold with constant exactly one.
    pub fn is_constant_free(self) -> bool {
        matches!(
            self,
            InequalityKind::Plancherel | InequalityKind::HausdorffYoung | InequalityKind::HyInverse
        )
    }
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InequalityParams {
    pub p: f64,
    pub p_conj: f64,
    pub b: Option<f64>,
    pub beta: Option<f64>,
    /// `M_φ`, or `Σ φ^{-β}` for Hardy-Littlewood.
    pub m_phi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub lhs: f64,
    pub rhs_scaffold: f64,
    pub ratio: f64,
    pub params: InequalityParams,
}

impl InequalityReport {
    fn new(kind: InequalityKind, lhs: f64, rhs_scaffold: f64, params: InequalityParams) -> Self {
        let ratio = if rhs_scaffold > 0.0 {
            lhs / rhs_scaffold
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            kind,
            lhs,
            rhs_scaffold,
            ratio,
            params,
        }
    }

    /// Hard pass condition; only meaningful for constant-free inequalities.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.ratio.is_finite() && self.ratio <= 1.0 + tolerance
    }

    pub const CSV_HEADER: &'static str = "name,d,N,K,p,b,beta,M_phi,lhs,rhs_scaffold,ratio,seed";

    pub fn csv_row(&self, d: usize, n: usize, band: usize, seed: u64) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            d,
            n,
            band,
            self.params.p,
            opt(self.params.b),
            opt(self.params.beta),
            opt(self.params.m_phi),
            self.lhs,
            self.rhs_scaffold,
            self.ratio,
            seed
        )
    }
}

/// `‖f̂‖₂` against `‖f‖₂`.
pub fn check_plancherel(f: &GridFunction, band: usize) -> Result<InequalityReport> {
    let s = forward(f, band)?;
    let lhs = lp_norm_dual(&s, 2.0)?;
    let rhs = lp_norm_domain(f, 2.0)?;
    Ok(InequalityReport::new(
        InequalityKind::Plancherel,
        lhs,
        rhs,
        InequalityParams {
            p: 2.0,
            p_conj: 2.0,
            ..Default::default()
        },
    ))
}

/// `‖f̂‖_{ℓ^{p'}} ≤ ‖f‖_{L^p}` for `1 ≤ p ≤ 2`.
pub fn check_hausdorff_young(f: &GridFunction, band: usize, p: f64) -> Result<InequalityReport> {
    require_exponent(p, 1.0, false, 2.0, "[1, 2]")?;
    let s = forward(f, band)?;
    hausdorff_young_from(f, &s, p)
}

fn hausdorff_young_from(f: &GridFunction, s: &Spectrum, p: f64) -> Result<InequalityReport> {
    let p_conj = conjugate(p);
    let lhs = lp_norm_dual(s, p_conj)?;
    let rhs = lp_norm_domain(f, p)?;
    Ok(InequalityReport::new(
        InequalityKind::HausdorffYoung,
        lhs,
        rhs,
        InequalityParams {
            p,
            p_conj,
            ..Default::default()
        },
    ))
}

/// `‖f̌‖_{L^{p'}} ≤ ‖f‖_{ℓ^p}` for `1 ≤ p ≤ 2`, synthesized on a grid of
/// `oversample * (2K+1)` points per axis.
pub fn check_hy_inverse(s: &Spectrum, p: f64, oversample: usize) -> Result<InequalityReport> {
    require_exponent(p, 1.0, false, 2.0, "[1, 2]")?;
    let n = oversample.max(1) * (2 * s.band() + 1);
    let synth = inverse(s, n)?;
    let p_conj = conjugate(p);
    let lhs = lp_norm_domain(&synth, p_conj)?;
    let rhs = lp_norm_dual(s, p)?;
    Ok(InequalityReport::new(
        InequalityKind::HyInverse,
        lhs,
        rhs,
        InequalityParams {
            p,
            p_conj,
            ..Default::default()
        },
    ))
}

/// `(Σ |f̂|^p φ^{2-p})^{1/p}` against `M_φ^{(2-p)/p} ‖f‖_p`.
pub fn check_paley(
    f: &GridFunction,
    band: usize,
    p: f64,
    phi: &WeightFunction,
) -> Result<InequalityReport> {
    require_exponent(p, 1.0, true, 2.0, "(1, 2]")?;
    let s = forward(f, band)?;
    let mut sum = 0.0;
    for (point, c) in s.iter() {
        sum += c.norm().powf(p) * phi.at(point)?.powf(2.0 - p);
    }
    let lhs = sum.powf(1.0 / p);
    let m_phi = weak_constant(phi)?;
    let rhs = m_phi.powf((2.0 - p) / p) * lp_norm_domain(f, p)?;
    Ok(InequalityReport::new(
        InequalityKind::Paley,
        lhs,
        rhs,
        InequalityParams {
            p,
            p_conj: conjugate(p),
            m_phi: Some(m_phi),
            ..Default::default()
        },
    ))
}

/// The exponent `β(p-2)` carried by `φ` in the Hardy-Littlewood sum.
pub fn hardy_littlewood_exponent(p: f64, beta: f64) -> f64 {
    beta * (p - 2.0)
}

/// `(Σ |f̂|^p φ^{β(p-2)})^{1/p}` against `C^{(2-p)/p} ‖f‖_p`, with
/// `C = Σ φ^{-β}` over the retained dual points.
pub fn check_hardy_littlewood(
    f: &GridFunction,
    band: usize,
    p: f64,
    phi: &WeightFunction,
    beta: f64,
) -> Result<InequalityReport> {
    require_exponent(p, 1.0, true, 2.0, "(1, 2]")?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::BadExponent {
            value: beta,
            range: "beta in (0, inf)",
        });
    }
    let s = forward(f, band)?;
    let exponent = hardy_littlewood_exponent(p, beta);
    let mut sum = 0.0;
    let mut weight_sum = 0.0;
    for (point, c) in s.iter() {
        let w = phi.at(point)?;
        sum += c.norm().powf(p) * w.powf(exponent);
        weight_sum += w.powf(-beta);
    }
    let lhs = sum.powf(1.0 / p);
    let rhs = weight_sum.powf((2.0 - p) / p) * lp_norm_domain(f, p)?;
    Ok(InequalityReport::new(
        InequalityKind::HardyLittlewood,
        lhs,
        rhs,
        InequalityParams {
            p,
            p_conj: conjugate(p),
            beta: Some(beta),
            m_phi: Some(weight_sum),
            ..Default::default()
        },
    ))
}

/// `(Σ (|f̂| φ^{1/b-1/p'})^b)^{1/b}` against `M_φ^{1/b-1/p'} ‖f‖_p` for
/// `1 < p ≤ 2` and `p ≤ b ≤ p'`.
pub fn check_hyp(
    f: &GridFunction,
    band: usize,
    p: f64,
    b: f64,
    phi: &WeightFunction,
) -> Result<InequalityReport> {
    require_exponent(p, 1.0, true, 2.0, "(1, 2]")?;
    let p_conj = conjugate(p);
    let slack = 1e-12 * p_conj;
    if b.is_nan() || b < p - slack || b > p_conj + slack {
        return Err(Error::BadExponent {
            value: b,
            range: "b in [p, p']",
        });
    }
    let s = forward(f, band)?;
    let exponent = 1.0 / b - 1.0 / p_conj;
    let mut sum = 0.0;
    for (point, c) in s.iter() {
        sum += (c.norm() * phi.at(point)?.powf(exponent)).powf(b);
    }
    let lhs = sum.powf(1.0 / b);
    let m_phi = weak_constant(phi)?;
    let rhs = m_phi.powf(exponent) * lp_norm_domain(f, p)?;
    Ok(InequalityReport::new(
        InequalityKind::Hyp,
        lhs,
        rhs,
        InequalityParams {
            p,
            p_conj,
            b: Some(b),
            m_phi: Some(m_phi),
            ..Default::default()
        },
    ))
}
