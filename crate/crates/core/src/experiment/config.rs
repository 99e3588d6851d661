use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::inequality::{conjugate, WeightFunction};
use crate::lattice::{a_d_lattice, DualPoint, EmbeddedLattice, Lattice};
use crate::multiplier::Symbol;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "LATFOURIER_OUT";

#[derive(Debug, Clone, PartialEq)]
pub enum LatticeSource {
    Identity(usize),
    Diagonal(Vec<f64>),
    /// Row-major inline matrix.
    Rows(Vec<Vec<f64>>),
    File(PathBuf),
    AD(usize),
}

impl LatticeSource {
    /// `identity:<d>`, `diag:<a,b,..>`, `rows:<a,b;c,d>`, `file:<path>` or `a_d:<d>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |msg: &str| Error::config("lattice", format!("{msg}: `{spec}`"));
        let (kind, rest) = spec
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected kind:value"))?;
        let dim = |s: &str| -> Result<usize> {
            match s.trim().parse::<usize>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(bad("dimension must be a positive integer")),
            }
        };
        let numbers = |s: &str| -> Result<Vec<f64>> {
            s.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| bad("bad number")))
                .collect()
        };
        match kind.trim() {
            "identity" => Ok(Self::Identity(dim(rest)?)),
            "a_d" => Ok(Self::AD(dim(rest)?)),
            "diag" => Ok(Self::Diagonal(numbers(rest)?)),
            "rows" => Ok(Self::Rows(
                rest.split(';').map(numbers).collect::<Result<_>>()?,
            )),
            "file" => Ok(Self::File(PathBuf::from(rest.trim()))),
            _ => Err(bad("unknown lattice kind")),
        }
    }

    /// The lattice used by transforms; `A_d` is written in the orthonormal
    /// frame of its hyperplane.
    pub fn resolve(&self, base_dir: &Path) -> Result<Lattice> {
        let wrap = |e: Error| Error::config("lattice", e.to_string());
        match self {
            Self::Identity(d) => Ok(Lattice::identity(*d)),
            Self::Diagonal(v) => Lattice::diagonal(v).map_err(wrap),
            Self::Rows(rows) => Lattice::from_rows(rows).map_err(wrap),
            Self::File(path) => {
                let path = if path.is_relative() {
                    base_dir.join(path)
                } else {
                    path.clone()
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::config("lattice", format!("{}: {e}", path.display())))?;
                Lattice::parse(&text).map_err(wrap)
            }
            Self::AD(d) => Ok(a_d_lattice(*d).intrinsic()),
        }
    }

    pub fn embedded(&self) -> Option<EmbeddedLattice> {
        match self {
            Self::AD(d) => Some(a_d_lattice(*d)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Identity(d) => format!("identity:{d}"),
            Self::AD(d) => format!("a_d:{d}"),
            Self::Diagonal(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("diag:{}", parts.join(","))
            }
            Self::Rows(_) => "rows".into(),
            Self::File(p) => format!("file:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `φ(κ) = (1 + |κ|)^exponent`
    Power(f64),
    /// CSV rows `k_1,...,k_d,value`.
    Table(PathBuf),
}

impl WeightSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || {
            Error::config(
                "weight",
                format!("expected power:<exponent> or table:<path>, got `{spec}`"),
            )
        };
        let (kind, rest) = spec.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "power" => Ok(Self::Power(parse_number(rest).map_err(|_| bad())?)),
            "table" => Ok(Self::Table(PathBuf::from(rest.trim()))),
            _ => Err(bad()),
        }
    }

    pub fn build(&self, points: &[DualPoint], base_dir: &Path) -> Result<WeightFunction> {
        match self {
            Self::Power(e) => WeightFunction::power(points, *e),
            Self::Table(path) => {
                let path = if path.is_relative() {
                    base_dir.join(path)
                } else {
                    path.clone()
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::config("weight", format!("{}: {e}", path.display())))?;
                let mut by_index = BTreeMap::new();
                for line in text.lines().map(str::trim) {
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
                    if fields[0].parse::<i64>().is_err() && by_index.is_empty() {
                        continue;
                    }
                    let (value, index) = fields
                        .split_last()
                        .ok_or_else(|| Error::config("weight", "empty row"))?;
                    let index = index
                        .iter()
                        .map(|s| s.parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::config("weight", format!("bad row `{line}`")))?;
                    let value: f64 = value
                        .parse()
                        .map_err(|_| Error::config("weight", format!("bad row `{line}`")))?;
                    by_index.insert(index, value);
                }
                WeightFunction::from_values(
                    points
                        .iter()
                        .filter_map(|p| by_index.get(&p.index).map(|&v| (p.clone(), v))),
                )
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Power(e) => format!("power:{e}"),
            Self::Table(p) => format!("table:{}", p.display()),
        }
    }
}

/// Numbers may be written as decimals or as fractions `a/b`; `inf` is accepted.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: f64 = a.trim().parse().map_err(|_| format!("bad number `{s}`"))?;
        let b: f64 = b.trim().parse().map_err(|_| format!("bad number `{s}`"))?;
        return Ok(a / b);
    }
    s.parse().map_err(|_| format!("bad number `{s}`"))
}

fn parse_list(key: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_number(t).map_err(|m| Error::config(key, m)))
        .collect()
}

fn parse_usize(key: &str, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::config(key, format!("expected a non-negative integer, got `{s}`")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub lattice: LatticeSource,
    pub n: usize,
    pub band: usize,
    pub oversample: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub b: Vec<f64>,
    pub beta: Option<f64>,
    pub symbol: String,
    pub weight: Option<WeightSpec>,
    pub trials: usize,
    pub samples: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub jobs: usize,
    /// Directory against which relative paths in the config resolve.
    pub base_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            lattice: LatticeSource::Identity(2),
            n: 32,
            band: 8,
            oversample: 4,
            p: vec![1.0, 1.25, 4.0 / 3.0, 1.5, 2.0],
            q: Vec::new(),
            b: Vec::new(),
            beta: None,
            symbol: "gaussian".into(),
            weight: None,
            trials: 50,
            samples: 10_000,
            seed: 0,
            out: std::env::var_os(OUT_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("latfourier-out")),
            jobs: 0,
            base_dir: PathBuf::from("."),
        }
    }
}

impl ExperimentConfig {
    /// Sets one key. Keys match the command-line flags without dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "lattice" => self.lattice = LatticeSource::parse(value)?,
            "N" | "n" => self.n = parse_usize("N", value)?,
            "K" | "k" => self.band = parse_usize("K", value)?,
            "oversample" => self.oversample = parse_usize(key, value)?,
            "p" => self.p = parse_list(key, value)?,
            "q" => self.q = parse_list(key, value)?,
            "b" => self.b = parse_list(key, value)?,
            "beta" => {
                self.beta = Some(parse_number(value).map_err(|m| Error::config(key, m))?);
            }
            "symbol" => self.symbol = value.trim().to_string(),
            "weight" => self.weight = Some(WeightSpec::parse(value)?),
            "trials" => self.trials = parse_usize(key, value)?,
            "samples" => self.samples = parse_usize(key, value)?,
            "seed" => {
                self.seed = value.trim().parse().map_err(|_| {
                    Error::config(key, format!("expected an unsigned integer, got `{value}`"))
                })?;
            }
            "out" => self.out = PathBuf::from(value.trim()),
            "jobs" => self.jobs = parse_usize(key, value)?,
            _ => return Err(Error::config(key, "unknown key")),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected key=value, got `{line}`"),
                )
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("{}: {e}", path.display())))?;
        let mut cfg = Self {
            base_dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
            ..Self::default()
        };
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::config("N", "must be positive"));
        }
        if 2 * self.band + 1 > self.n {
            return Err(Error::config(
                "K",
                format!("2K+1 = {} exceeds N = {}", 2 * self.band + 1, self.n),
            ));
        }
        if self.oversample == 0 {
            return Err(Error::config("oversample", "must be positive"));
        }
        if let Some(&p) = self.p.iter().find(|&&p| !(1.0..=2.0).contains(&p)) {
            return Err(Error::config("p", format!("{p} outside [1, 2]")));
        }
        if let Some(&q) = self.q.iter().find(|&&q| !(q >= 1.0)) {
            return Err(Error::config("q", format!("{q} below 1")));
        }
        if let Some(beta) = self.beta {
            if !(beta > 0.0 && beta.is_finite()) {
                return Err(Error::config("beta", "must be positive"));
            }
        }
        Symbol::parse(&self.symbol, Some(&self.base_dir))
            .map_err(|e| Error::config("symbol", e.to_string()))?;
        Ok(())
    }

    pub fn resolve_lattice(&self) -> Result<Lattice> {
        self.lattice.resolve(&self.base_dir)
    }

    /// HYP exponents for a given `p`: the configured `b` values inside
    /// `[p, p']`, or `{p, 2, p'}` when none were configured.
    pub fn hyp_exponents(&self, p: f64) -> Vec<f64> {
        let pc = conjugate(p);
        if self.b.is_empty() {
            let mut v = vec![p, 2.0, pc];
            v.dedup();
            v
        } else {
            self.b
                .iter()
                .copied()
                .filter(|&b| b >= p && b <= pc)
                .collect()
        }
    }

    /// `(p, q)` pairs for the multiplier suite: configured lists zipped, or
    /// the defaults `(4/3, 4), (3/2, 3), (2, 2)`.
    pub fn multiplier_pairs(&self) -> Vec<(f64, f64)> {
        if self.q.is_empty() {
            vec![(4.0 / 3.0, 4.0), (1.5, 3.0), (2.0, 2.0)]
        } else {
            let ps = if self.p.len() == self.q.len() {
                self.p.clone()
            } else {
                self.q.iter().map(|&q| conjugate(q)).collect()
            };
            ps.into_iter().zip(self.q.iter().copied()).collect()
        }
    }
}
