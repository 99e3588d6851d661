// The heat-type multiplier σ(κ) = e^{-|κ|²}: growth functional, empirical
// operator norms and the adjoint identity.
//
//     cargo run --example gaussian_multiplier

use latfourier::multiplier::{
    adjoint_symbol_check, empirical_opnorm, growth_stability, l2_opnorm_bound, symbol_growth,
    OpNormExperiment, Symbol,
};
use latfourier::random::{random_band_limited, seeded};
use latfourier::{Lattice, Result};

pub fn run_example() -> Result<()> {
    let lat = Lattice::identity(1);
    let band = 16;
    let sigma = Symbol::Gaussian;
    let pts = lat.band_points(band);

    let l2 = l2_opnorm_bound(&sigma, &pts)?;
    println!("sup|σ| = {} at k = {:?}", l2.bound, l2.witness.index);

    for (p, q) in [(4.0 / 3.0, 4.0), (1.5, 3.0), (2.0, 2.0)] {
        let growth = symbol_growth(&sigma, &pts, p, q)?;
        let stability = growth_stability(&sigma, &lat, band, p, q)?;
        let estimate = empirical_opnorm(
            &sigma,
            &OpNormExperiment {
                lattice: lat.clone(),
                p,
                q,
                trials: 100,
                grid: 132,
                band,
                seed: 3,
            },
        )?;
        println!(
            "p={p:.4} q={q}: growth {growth:.6} (2K: {:.6}), empirical {:.6} via {:?}",
            stability.at_double, estimate.value, estimate.witness
        );
    }

    // a differential operator is only bounded on L² through its truncation
    let laplacian = Symbol::parse("poly:2=1", None)?;
    println!(
        "truncated d²/dx² on |k| ≤ {band}: sup|σ| = {:.1}",
        l2_opnorm_bound(&laplacian, &pts)?.bound
    );

    let mut rng = seeded(11);
    let f = random_band_limited(&mut rng, &lat, 64, band);
    let g = random_band_limited(&mut rng, &lat, 64, band);
    println!(
        "adjoint defect: {:.2e}",
        adjoint_symbol_check(&laplacian, &f, &g, band)?
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
