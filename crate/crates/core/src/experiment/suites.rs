use std::path::PathBuf;

use rayon::prelude::*;

use super::config::{ExperimentConfig, WeightSpec};
use super::report::{CsvTable, Scatter};
use crate::domain::{
    monte_carlo_measure, required_shift_radius, tiling_check, FundamentalDomain, HexDomainAd,
    Parallelotope,
};
use crate::error::{Error, Result};
use crate::inequality::{
    check_hardy_littlewood, check_hausdorff_young, check_hy_inverse, check_hyp, check_paley,
    check_plancherel, InequalityKind, InequalityReport, WeightFunction, CONSTANT_FREE_TOLERANCE,
};
use crate::lattice::Lattice;
use crate::multiplier::{
    adjoint_symbol_check, apply, empirical_opnorm, growth_stability, l2_opnorm_bound,
    symbol_growth, OpNormExperiment, Symbol, Witness,
};
use crate::random::{random_band_limited, stream_rng, unit_random_spectrum};
use crate::transform::{forward, inverse, plancherel_defect, slow_forward_oracle, GridFunction};

/// Oracle-equivalence tolerance for the fast transform (absolute, unit-norm input).
pub const ORACLE_TOLERANCE: f64 = 1e-11;
/// Relative round-trip and Plancherel tolerance.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-10;
/// Slack on the inverse Hausdorff-Young ratio with grid quadrature.
pub const HY_INVERSE_TOLERANCE: f64 = 1e-6;
/// Minimum fraction of samples covered exactly once by a tiling.
pub const TILING_THRESHOLD: f64 = 0.999;
pub const L2_BOUND_TOLERANCE: f64 = 1e-9;
pub const EIGENFUNCTION_TOLERANCE: f64 = 1e-11;
pub const ADJOINT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    TransformSelftest,
    Tiling,
    Inequalities,
    Multiplier,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::TransformSelftest,
        Suite::Tiling,
        Suite::Inequalities,
        Suite::Multiplier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TransformSelftest => "transform-selftest",
            Suite::Tiling => "tiling",
            Suite::Inequalities => "inequalities",
            Suite::Multiplier => "multiplier",
        }
    }

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::config("suite", format!("unknown suite `{name}`")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOutcome {
    pub name: String,
    pub files: Vec<PathBuf>,
    /// Hard criteria that failed.
    pub failures: Vec<String>,
    /// Informational lines for the console.
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        Self {
            name: suite.name().into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub suites: Vec<SuiteOutcome>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] {}\n", s.name));
            for note in &s.notes {
                out.push_str(&format!("    {note}\n"));
            }
            for failure in &s.failures {
                out.push_str(&format!("    failed: {failure}\n"));
            }
            for file in &s.files {
                out.push_str(&format!("    wrote {}\n", file.display()));
            }
        }
        out
    }
}

/// Runs the requested suites in order inside a thread pool of `config.jobs`
/// workers (0 = rayon default). Output files are identical for any job count.
pub fn run(config: &ExperimentConfig, suites: &[Suite]) -> Result<RunOutcome> {
    config.validate()?;
    std::fs::create_dir_all(&config.out)
        .map_err(|e| Error::config("out", format!("{}: {e}", config.out.display())))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::config("jobs", e.to_string()))?;
    pool.install(|| {
        let mut outcome = RunOutcome::default();
        for &suite in suites {
            let result = match suite {
                Suite::TransformSelftest => transform_selftest(config),
                Suite::Tiling => tiling(config),
                Suite::Inequalities => inequalities(config),
                Suite::Multiplier => multiplier(config),
            };
            let result = result.map_err(|e| match e {
                Error::Config { .. } => e,
                other => Error::Io(format!("suite {}: {other}", suite.name())),
            })?;
            outcome.suites.push(result);
        }
        Ok(outcome)
    })
}

fn check_row(
    table: &mut CsvTable,
    outcome: &mut SuiteOutcome,
    check: &str,
    instance: usize,
    value: f64,
    tol: f64,
) {
    let pass = value <= tol;
    table.push(format!("{check},{instance},{value},{tol},{pass}"));
    if !pass {
        outcome
            .failures
            .push(format!("{check} instance {instance}: {value:e} > {tol:e}"));
    }
}

pub fn transform_selftest(config: &ExperimentConfig) -> Result<SuiteOutcome> {
    let mut outcome = SuiteOutcome::new(Suite::TransformSelftest);
    let lattice = config.resolve_lattice()?;
    let (n, band) = (config.n, config.band);
    let trials = config.trials.max(1);
    let oracle_instances = trials.min(20);

    let rows: Vec<(f64, f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(config.seed, t as u64);
            let f = random_band_limited(&mut rng, &lattice, n, band);
            let s = forward(&f, band)?;
            let oracle = if t < oracle_instances {
                slow_forward_oracle(&f, band)?.max_abs_diff(&s)
            } else {
                0.0
            };
            let back = inverse(&s, n)?;
            let scale = f.samples().iter().map(|z| z.norm()).fold(0.0, f64::max);
            let round_trip = back.max_abs_diff(&f) / scale;
            let plancherel = plancherel_defect(&f, &s) / f.energy();
            Ok((oracle, round_trip, plancherel))
        })
        .collect::<Result<_>>()?;

    let mut table = CsvTable::new("check,instance,value,tolerance,pass");
    for (t, &(oracle, _, _)) in rows.iter().enumerate().take(oracle_instances) {
        check_row(
            &mut table,
            &mut outcome,
            "oracle_equivalence",
            t,
            oracle,
            ORACLE_TOLERANCE,
        );
    }
    for (t, &(_, round_trip, _)) in rows.iter().enumerate() {
        check_row(
            &mut table,
            &mut outcome,
            "round_trip",
            t,
            round_trip,
            ROUND_TRIP_TOLERANCE,
        );
    }
    for (t, &(_, _, plancherel)) in rows.iter().enumerate() {
        check_row(
            &mut table,
            &mut outcome,
            "plancherel_defect",
            t,
            plancherel,
            ROUND_TRIP_TOLERANCE,
        );
    }
    let worst = |i: usize| rows.iter().map(|r| [r.0, r.1, r.2][i]).fold(0.0, f64::max);
    outcome.notes.push(format!(
        "max oracle diff {:e}, max round-trip {:e}, max Plancherel defect {:e}",
        worst(0),
        worst(1),
        worst(2)
    ));
    outcome
        .files
        .push(table.write(&config.out, "transform_selftest.csv")?);
    Ok(outcome)
}

pub fn tiling(config: &ExperimentConfig) -> Result<SuiteOutcome> {
    let mut outcome = SuiteOutcome::new(Suite::Tiling);
    let samples = config.samples.max(1);
    let (report, measure, exact) = match config.lattice.embedded() {
        Some(embedded) => {
            let dom = HexDomainAd::new(embedded.intrinsic_dim());
            let radius = required_shift_radius(&dom, &embedded);
            let report = tiling_check(&dom, &embedded, samples, radius, config.seed)?;
            let measure = monte_carlo_measure(&dom, samples, config.seed);
            (report, measure, dom.measure())
        }
        None => {
            let lattice = config.resolve_lattice()?;
            let dom = Parallelotope::new(lattice.clone());
            let radius = required_shift_radius(&dom, &lattice);
            let report = tiling_check(&dom, &lattice, samples, radius, config.seed)?;
            let measure = monte_carlo_measure(&dom, samples, config.seed);
            (report, measure, dom.measure())
        }
    };
    if report.fraction_exactly_one < TILING_THRESHOLD {
        outcome.failures.push(format!(
            "{}: fraction covered exactly once {} < {TILING_THRESHOLD}",
            report.domain_id, report.fraction_exactly_one
        ));
    }
    outcome.notes.push(format!(
        "{}: fraction {} over {} samples; Monte Carlo measure {measure:.6} (exact {exact:.6})",
        report.domain_id, report.fraction_exactly_one, report.n_samples
    ));
    let mut table = CsvTable::new(crate::domain::TilingReport::CSV_HEADER);
    table.push(report.csv_row());
    outcome.files.push(table.write(&config.out, "tiling.csv")?);
    Ok(outcome)
}

/// Weights used by the Paley and HYP checks; defaults to `(1+|κ|)^{-(d+1)}`.
fn paley_weight(config: &ExperimentConfig, lattice: &Lattice) -> Result<WeightFunction> {
    let spec = config
        .weight
        .clone()
        .unwrap_or(WeightSpec::Power(-((lattice.dim() + 1) as f64)));
    let points = lattice.band_points(config.band);
    let phi = spec.build(&points, &config.base_dir)?;
    if phi.len() != points.len() {
        return Err(Error::config(
            "weight",
            "weight table does not cover the band",
        ));
    }
    Ok(phi)
}

pub fn inequalities(config: &ExperimentConfig) -> Result<SuiteOutcome> {
    let mut outcome = SuiteOutcome::new(Suite::Inequalities);
    let lattice = config.resolve_lattice()?;
    let (n, band, d) = (config.n, config.band, lattice.dim());
    let phi = paley_weight(config, &lattice)?;
    let growing = WeightFunction::from_fn(&lattice.band_points(band), |p| 1.0 + p.norm())?;
    let beta = config.beta.unwrap_or((d + 1) as f64);

    let per_trial: Vec<Vec<InequalityReport>> = (0..config.trials.max(1))
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(config.seed, t as u64);
            let f = random_band_limited(&mut rng, &lattice, n, band);
            let s = unit_random_spectrum(&mut rng, &lattice, band);
            let mut reports = vec![check_plancherel(&f, band)?];
            for &p in &config.p {
                reports.push(check_hausdorff_young(&f, band, p)?);
                reports.push(check_hy_inverse(&s, p, config.oversample)?);
                if p > 1.0 {
                    reports.push(check_paley(&f, band, p, &phi)?);
                    reports.push(check_hardy_littlewood(&f, band, p, &growing, beta)?);
                    for b in config.hyp_exponents(p) {
                        reports.push(check_hyp(&f, band, p, b, &phi)?);
                    }
                }
            }
            Ok(reports)
        })
        .collect::<Result<_>>()?;

    let mut table = CsvTable::new(InequalityReport::CSV_HEADER);
    let mut worst: Vec<(InequalityKind, f64)> = Vec::new();
    for (t, reports) in per_trial.iter().enumerate() {
        for r in reports {
            table.push(r.csv_row(d, n, band, config.seed));
            let ok = match r.kind {
                InequalityKind::Plancherel => (r.ratio - 1.0).abs() <= CONSTANT_FREE_TOLERANCE,
                InequalityKind::HausdorffYoung => r.passes(CONSTANT_FREE_TOLERANCE),
                InequalityKind::HyInverse => r.passes(HY_INVERSE_TOLERANCE),
                _ => true,
            };
            if !ok {
                outcome.failures.push(format!(
                    "{} trial {t} p={}: ratio {}",
                    r.kind, r.params.p, r.ratio
                ));
            }
            match worst.iter_mut().find(|(k, _)| *k == r.kind) {
                Some(entry) => entry.1 = entry.1.max(r.ratio),
                None => worst.push((r.kind, r.ratio)),
            }
        }
    }
    for (kind, max) in &worst {
        outcome.notes.push(format!("{kind}: max ratio {max}"));
    }
    outcome
        .files
        .push(table.write(&config.out, "inequalities.csv")?);

    for kind in InequalityKind::ALL {
        let points: Vec<(f64, f64)> = per_trial
            .iter()
            .flatten()
            .filter(|r| r.kind == kind)
            .map(|r| (r.params.p, r.ratio))
            .collect();
        if points.is_empty() {
            continue;
        }
        let plot = Scatter {
            title: format!("{kind}: lhs / rhs scaffold"),
            x_label: "p".into(),
            y_label: "ratio".into(),
            points,
            reference: kind.is_constant_free().then_some(1.0),
        };
        outcome
            .files
            .push(plot.write(&config.out, &format!("ratio_vs_p_{kind}.svg"))?);
    }
    Ok(outcome)
}

pub fn multiplier(config: &ExperimentConfig) -> Result<SuiteOutcome> {
    let mut outcome = SuiteOutcome::new(Suite::Multiplier);
    let lattice = config.resolve_lattice()?;
    let (n, band, d) = (config.n, config.band, lattice.dim());
    let sigma = Symbol::parse(&config.symbol, Some(&config.base_dir))
        .map_err(|e| Error::config("symbol", e.to_string()))?;
    let points = lattice.band_points(band);
    let fine_grid = config.oversample * (2 * band + 1);

    let mut table = CsvTable::new(
        "symbol,d,N,K,p,q,growth,growth_2K,growth_stable,empirical,ratio,witness,seed",
    );
    let mut c_max = 0.0f64;
    for (p, q) in config.multiplier_pairs() {
        let growth = symbol_growth(&sigma, &points, p, q)?;
        let stability = growth_stability(&sigma, &lattice, band, p, q).ok();
        let estimate = empirical_opnorm(
            &sigma,
            &OpNormExperiment {
                lattice: lattice.clone(),
                p,
                q,
                trials: config.trials,
                grid: fine_grid,
                band,
                seed: config.seed,
            },
        )?;
        let ratio = if growth > 0.0 {
            estimate.value / growth
        } else {
            f64::INFINITY
        };
        c_max = c_max.max(ratio);
        let witness = match &estimate.witness {
            Witness::Constant => "constant".to_string(),
            Witness::Mode(k) => {
                let parts: Vec<String> = k.iter().map(|v| v.to_string()).collect();
                format!("mode:{}", parts.join(" "))
            }
            Witness::Trial(t) => format!("trial:{t}"),
        };
        let (g2, stable) = match &stability {
            Some(s) => (s.at_double.to_string(), s.stable.to_string()),
            None => (String::new(), String::new()),
        };
        if stability.as_ref().is_some_and(|s| !s.stable) {
            outcome.notes.push(format!(
                "growth functional for p={p}, q={q} not stable under K -> 2K; symbol fails the growth condition"
            ));
        }
        table.push(format!(
            "{sigma},{d},{fine_grid},{band},{p},{q},{growth},{g2},{stable},{},{ratio},{witness},{}",
            estimate.value, config.seed
        ));
    }
    outcome
        .notes
        .push(format!("empirical / growth constant c = {c_max}"));
    outcome
        .files
        .push(table.write(&config.out, "multiplier.csv")?);

    // hard checks: L² bound, eigenfunctions, adjoint symbol
    let mut checks = CsvTable::new("check,instance,value,tolerance,pass");
    let bound = l2_opnorm_bound(&sigma, &points)?;
    let trials = config.trials.max(1);
    let l2: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(config.seed, t as u64);
            let f = random_band_limited(&mut rng, &lattice, n, band);
            let g = random_band_limited(&mut rng, &lattice, n, band);
            let af = apply(&sigma, &f, band)?;
            let excess = af.energy().sqrt() / f.energy().sqrt() - bound.bound;
            let defect = adjoint_symbol_check(&sigma, &f, &g, band)?;
            let scale = (1.0 + bound.bound) * f.energy().sqrt() * g.energy().sqrt();
            Ok((excess, defect / scale))
        })
        .collect::<Result<_>>()?;
    for (t, &(excess, _)) in l2.iter().enumerate() {
        check_row(
            &mut checks,
            &mut outcome,
            "l2_bound_excess",
            t,
            excess,
            L2_BOUND_TOLERANCE,
        );
    }
    let witness = GridFunction::mode(lattice.clone(), n, &bound.witness.index);
    let attained = apply(&sigma, &witness, band)?.energy().sqrt();
    check_row(
        &mut checks,
        &mut outcome,
        "l2_bound_attained",
        0,
        (attained - bound.bound).abs(),
        L2_BOUND_TOLERANCE,
    );
    let eigen: Vec<f64> = points
        .par_iter()
        .map(|pt| {
            let e = GridFunction::mode(lattice.clone(), n, &pt.index);
            let value = sigma.eval(pt)?;
            let out = apply(&sigma, &e, band)?;
            let expected = e.map(|z| z * value);
            Ok(out.max_abs_diff(&expected) / (1.0 + value.norm()))
        })
        .collect::<Result<_>>()?;
    for (i, &err) in eigen.iter().enumerate() {
        check_row(
            &mut checks,
            &mut outcome,
            "eigenfunction",
            i,
            err,
            EIGENFUNCTION_TOLERANCE,
        );
    }
    for (t, &(_, defect)) in l2.iter().enumerate() {
        check_row(
            &mut checks,
            &mut outcome,
            "adjoint_defect",
            t,
            defect,
            ADJOINT_TOLERANCE,
        );
    }
    outcome.notes.push(format!(
        "sup|sigma| = {} at {:?}; witness attains {attained}",
        bound.bound, bound.witness.index
    ));
    outcome
        .files
        .push(checks.write(&config.out, "multiplier_checks.csv")?);
    Ok(outcome)
}
