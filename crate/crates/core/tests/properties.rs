//! Randomized invariants of the lattice, transform, inequality and
//! multiplier layers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use latfourier::domain::{FundamentalDomain, Parallelotope};
use latfourier::inequality::{conjugate, weak_constant, WeightFunction};
use latfourier::lattice::IndexBox;
use latfourier::multiplier::{
    apply, empirical_opnorm, l2_opnorm_bound, symbol_growth, OpNormExperiment, Symbol,
};
use latfourier::random::{condition_number, gaussian_lattice, random_band_limited, seeded};
use latfourier::{forward, GridFunction, Lattice};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square matrices of size 1..=3 with condition number below `1e3`.
fn well_conditioned() -> impl Strategy<Value = Lattice> {
    (1usize..=3)
        .prop_flat_map(|d| prop::collection::vec(-3.0f64..3.0, d * d).prop_map(move |v| (d, v)))
        .prop_filter_map("ill-conditioned", |(d, v)| {
            let m = DMatrix::from_row_slice(d, d, &v);
            (condition_number(&m) < 1e3)
                .then(|| Lattice::new(m).ok())
                .flatten()
        })
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
}

/// `sup_s s #{v ≥ s}^e` over a dense threshold grid joined with the values.
fn brute_breakpoint_sup(values: &[f64], exponent: f64) -> f64 {
    let top = values.iter().copied().fold(0.0, f64::max);
    let mut thresholds: Vec<f64> = (1..=1000).map(|i| top * i as f64 / 1000.0).collect();
    thresholds.extend_from_slice(values);
    thresholds
        .into_iter()
        .filter(|&s| s > 0.0)
        .map(|s| s * (values.iter().filter(|&&v| v >= s).count() as f64).powf(exponent))
        .fold(0.0, f64::max)
}

fn table(values: &[f64]) -> (Symbol, Vec<latfourier::DualPoint>) {
    let lat = Lattice::identity(1);
    let pts: Vec<_> = (0..values.len() as i64)
        .map(|i| lat.dual_point(&[i]))
        .collect();
    let sigma = Symbol::Table(
        pts.iter()
            .zip(values)
            .map(|(p, &v)| (p.index.clone(), c(v, 0.0)))
            .collect(),
    );
    (sigma, pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dual_of_dual_is_identity(lat in well_conditioned()) {
        let back = lat.dual().dual();
        prop_assert!((back.generator() - lat.generator()).amax() <= 1e-10);
    }

    #[test]
    fn dual_points_pair_integrally(lat in well_conditioned()) {
        let d = lat.dim();
        for k in IndexBox::new(d, -2, 2) {
            let kappa = lat.dual_point(&k);
            for m in IndexBox::new(d, -3, 3) {
                let lambda = lat.point(&m);
                let dot: f64 = kappa.coords.iter().zip(&lambda).map(|(a, b)| a * b).sum();
                prop_assert!((dot - dot.round()).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn enumeration_grows_with_radius(lat in well_conditioned(), r in 0.1f64..3.0, extra in 0.0f64..2.0) {
        let small = lat.enumerate_dual(r).unwrap();
        let large = lat.enumerate_dual(r + extra).unwrap();
        prop_assert!(small.len() <= large.len());
        prop_assert!(small.iter().all(|p| large.binary_search(p).is_ok()));
    }

    #[test]
    fn reduce_is_periodic_and_lands_inside(
        lat in well_conditioned(),
        x in prop::collection::vec(-20.0f64..20.0, 3),
        shift in prop::collection::vec(-5i64..=5, 3),
    ) {
        let d = lat.dim();
        let dom = Parallelotope::new(lat.clone());
        let x = &x[..d];
        let r = dom.reduce(x);
        prop_assert!(dom.contains(&r));
        let moved: Vec<f64> = x.iter().zip(lat.point(&shift[..d])).map(|(a, b)| a + b).collect();
        let r2 = dom.reduce(&moved);
        let gap = r.iter().zip(&r2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(gap <= 1e-10, "gap {gap}");
    }

    #[test]
    fn forward_is_linear(seed in any::<u64>(), a in complex(), b in complex()) {
        let mut rng = seeded(seed);
        let lat = gaussian_lattice(&mut rng, 2, 1e2);
        let f = random_band_limited(&mut rng, &lat, 12, 5);
        let g = random_band_limited(&mut rng, &lat, 12, 5).map(|z| z * c(0.3, -1.7));
        let lhs = forward(&f.combine(a, &g, b).unwrap(), 5).unwrap();
        let (ff, fg) = (forward(&f, 5).unwrap(), forward(&g, 5).unwrap());
        for (p, v) in lhs.iter() {
            let expected = a * ff.get(&p.index).unwrap() + b * fg.get(&p.index).unwrap();
            prop_assert!((v - expected).norm() <= 1e-11);
        }
    }

    #[test]
    fn cyclic_shift_is_a_phase(seed in any::<u64>(), tau in prop::collection::vec(-20i64..20, 2)) {
        let mut rng = seeded(seed);
        let lat = gaussian_lattice(&mut rng, 2, 1e2);
        let n = 16;
        let f = random_band_limited(&mut rng, &lat, n, 6);
        let fhat = forward(&f, 6).unwrap();
        let ghat = forward(&f.cyclic_shift(&tau), 6).unwrap();
        for (p, v) in ghat.iter() {
            let dot: i64 = p.index.iter().zip(&tau).map(|(k, t)| k * t).sum();
            let phase = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * dot as f64 / n as f64);
            prop_assert!((v - phase * fhat.get(&p.index).unwrap()).norm() <= 1e-10);
        }
    }

    #[test]
    fn parseval(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let lat = gaussian_lattice(&mut rng, 2, 1e2);
        let f = random_band_limited(&mut rng, &lat, 14, 6);
        let g = random_band_limited(&mut rng, &lat, 14, 6);
        let (ff, fg) = (forward(&f, 6).unwrap(), forward(&g, 6).unwrap());
        let spectral: Complex64 = ff.iter().map(|(p, v)| v * fg.get(&p.index).unwrap().conj()).sum();
        prop_assert!((f.inner(&g) - spectral).norm() <= 1e-10);
    }

    #[test]
    fn weak_constant_is_monotone_and_matches_brute_force(
        values in prop::collection::vec(0.01f64..10.0, 1..80),
        bumps in prop::collection::vec(0.0f64..3.0, 80),
    ) {
        let lat = Lattice::identity(1);
        let build = |vals: &[f64]| {
            WeightFunction::from_values(
                vals.iter().enumerate().map(|(i, &v)| (lat.dual_point(&[i as i64]), v)),
            )
            .unwrap()
        };
        let larger: Vec<f64> = values.iter().zip(&bumps).map(|(v, b)| v + b).collect();
        let m = weak_constant(&build(&values)).unwrap();
        prop_assert_eq!(m, brute_breakpoint_sup(&values, 1.0));
        prop_assert!(weak_constant(&build(&larger)).unwrap() >= m);
    }

    #[test]
    fn growth_matches_brute_force(
        values in prop::collection::vec(0.0f64..5.0, 1..60),
        pq in prop::sample::select(vec![(4.0 / 3.0, 4.0), (1.5, 3.0), (2.0, 2.0), (1.0, 8.0)]),
    ) {
        let (sigma, pts) = table(&values);
        let e = 1.0 / pq.0 - 1.0 / pq.1;
        let g = symbol_growth(&sigma, &pts, pq.0, pq.1).unwrap();
        let brute = brute_breakpoint_sup(&values, e);
        prop_assert!((g - brute).abs() <= 1e-12 * brute.max(1.0), "{g} vs {brute}");
    }

    #[test]
    fn argmax_survives_positive_rescaling(values in prop::collection::vec(0.0f64..5.0, 1..60), scale in 0.01f64..100.0) {
        let (sigma, pts) = table(&values);
        let scaled: Vec<f64> = values.iter().map(|v| v * scale).collect();
        let (sigma2, _) = table(&scaled);
        let a = l2_opnorm_bound(&sigma, &pts).unwrap();
        let b = l2_opnorm_bound(&sigma2, &pts).unwrap();
        prop_assert_eq!(a.witness.index, b.witness.index);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multipliers_compose(seed in any::<u64>(), a in complex(), b in complex()) {
        let mut rng = seeded(seed);
        let lat = gaussian_lattice(&mut rng, 2, 1e2);
        let band = 4;
        let f = random_band_limited(&mut rng, &lat, 12, band);
        let s1 = Symbol::Polynomial(vec![(vec![1, 0], a), (vec![0, 0], b)]);
        let s2 = Symbol::Gaussian;
        let pts = lat.band_points(band);
        let both = s1.product_on(&s2, &pts).unwrap();
        let nested = apply(&s1, &apply(&s2, &f, band).unwrap(), band).unwrap();
        let direct = apply(&both, &f, band).unwrap();
        prop_assert!(nested.max_abs_diff(&direct) <= 1e-10);
    }

    #[test]
    fn modes_are_eigenfunctions(seed in any::<u64>(), k in prop::collection::vec(-4i64..=4, 2), a in complex()) {
        let lat = gaussian_lattice(&mut seeded(seed), 2, 1e2);
        let sigma = Symbol::Polynomial(vec![(vec![0, 0], c(1.0, 0.0)), (vec![1, 1], a)]);
        let e = GridFunction::mode(lat.clone(), 12, &k);
        let value = sigma.eval(&lat.dual_point(&k)).unwrap();
        let ae = apply(&sigma, &e, 4).unwrap();
        // rounding in apply is relative to the largest symbol value in the band
        let scale = l2_opnorm_bound(&sigma, &lat.band_points(4)).unwrap().bound.max(1.0);
        prop_assert!(ae.max_abs_diff(&e.map(|z| z * value)) <= 1e-11 * scale);
    }

    #[test]
    fn adjoint_estimates_agree(seed in 0u64..1000, pq in prop::sample::select(vec![(4.0 / 3.0, 4.0), (1.5, 3.0), (2.0, 2.0)])) {
        let (p, q) = pq;
        let lat = Lattice::identity(1);
        let band = 8;
        let exp = |p, q| OpNormExperiment { lattice: lat.clone(), p, q, trials: 40, grid: 68, band, seed };
        let sigma = Symbol::Gaussian;
        let forward_norm = empirical_opnorm(&sigma, &exp(p, q)).unwrap().value;
        let adjoint_norm = empirical_opnorm(&sigma.conj(), &exp(conjugate(q), conjugate(p))).unwrap().value;
        let growth = symbol_growth(&sigma, &lat.band_points(band), p, q).unwrap();
        prop_assert!(forward_norm <= 2.0 * growth && adjoint_norm <= 2.0 * growth);
        prop_assert!((forward_norm - adjoint_norm).abs() <= 0.1 * forward_norm.max(adjoint_norm),
            "{forward_norm} vs {adjoint_norm}");
    }
}
