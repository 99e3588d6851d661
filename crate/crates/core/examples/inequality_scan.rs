// Ratio scan for Hausdorff-Young and the weighted Paley / HYP family on a
// random band-limited function.
//
//     cargo run --example inequality_scan

use latfourier::inequality::{
    check_hausdorff_young, check_hyp, check_paley, conjugate, weak_constant, InequalityReport,
    WeightFunction,
};
use latfourier::random::{random_band_limited, seeded};
use latfourier::{Lattice, Result};

pub fn run_example() -> Result<()> {
    let lat = Lattice::identity(2);
    let (n, band, seed) = (32, 8, 7);
    let f = random_band_limited(&mut seeded(seed), &lat, n, band);

    let pts = lat.band_points(band);
    let phi = WeightFunction::from_fn(&pts, |p| (1.0 + p.norm()).powi(-3))?;
    println!("M_phi = {:.6}", weak_constant(&phi)?);

    println!("{}", InequalityReport::CSV_HEADER);
    for p in [1.0, 1.25, 4.0 / 3.0, 1.5, 2.0] {
        let hy = check_hausdorff_young(&f, band, p)?;
        println!("{}", hy.csv_row(2, n, band, seed));
        if p > 1.0 {
            println!(
                "{}",
                check_paley(&f, band, p, &phi)?.csv_row(2, n, band, seed)
            );
            for b in [p, 2.0, conjugate(p)] {
                println!(
                    "{}",
                    check_hyp(&f, band, p, b, &phi)?.csv_row(2, n, band, seed)
                );
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
