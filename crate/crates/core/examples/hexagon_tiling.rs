// Monte Carlo check that the hexagon tiles the plane under A_2, and what a
// shrunken hexagon looks like.
//
//     cargo run --example hexagon_tiling

use latfourier::a_d_lattice;
use latfourier::domain::{
    monte_carlo_measure, required_shift_radius, tiling_check, FundamentalDomain, HexDomainAd,
    Parallelotope,
};
use latfourier::{Lattice, Result};

pub fn run_example() -> Result<()> {
    let a2 = a_d_lattice(2);
    let hex = HexDomainAd::new(2);
    let radius = required_shift_radius(&hex, &a2);
    let report = tiling_check(&hex, &a2, 20_000, radius, 1)?;
    println!("{}", latfourier::domain::TilingReport::CSV_HEADER);
    println!("{}", report.csv_row());

    let estimate = monte_carlo_measure(&hex, 200_000, 2);
    println!(
        "measure: exact {:.5}, Monte Carlo {estimate:.5}",
        hex.measure()
    );

    let small = HexDomainAd::scaled(2, 0.9);
    let broken = tiling_check(&small, &a2, 20_000, radius, 1)?;
    println!("{}", broken.csv_row());

    let skew = Lattice::from_rows(&[vec![1.0, 0.4], vec![0.2, 1.5]])?;
    let cell = Parallelotope::new(skew.clone());
    let r = required_shift_radius(&cell, &skew);
    println!("{}", tiling_check(&cell, &skew, 20_000, r, 3)?.csv_row());
    println!("reduce([3.3, -7.1]) = {:?}", cell.reduce(&[3.3, -7.1]));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
