// Forward transform of a sampled trigonometric polynomial, checked against
// the direct sum, plus a round trip and the spectrum CSV.
//
//     cargo run --example transform_roundtrip

use std::f64::consts::PI;

use num_complex::Complex64;

use latfourier::transform::{plancherel_defect, slow_forward_oracle};
use latfourier::{forward, inverse, GridFunction, Lattice, Result};

pub fn run_example() -> Result<()> {
    let lat = Lattice::from_rows(&[vec![1.0, 0.5], vec![0.0, 0.8]])?;
    let band = 3;
    // f(x) = 2 e^{2πi κ(1,0)·x} + i e^{2πi κ(-2,3)·x}
    let k1 = lat.dual_point(&[1, 0]).coords;
    let k2 = lat.dual_point(&[-2, 3]).coords;
    let f = GridFunction::from_fn(lat.clone(), 8, |x| {
        let phase = |k: &[f64]| 2.0 * PI * (k[0] * x[0] + k[1] * x[1]);
        Complex64::from_polar(2.0, phase(&k1)) + Complex64::from_polar(1.0, phase(&k2) + PI / 2.0)
    });

    let fast = forward(&f, band)?;
    let slow = slow_forward_oracle(&f, band)?;
    println!("fast vs direct sum: {:.2e}", fast.max_abs_diff(&slow));
    println!("coefficient at (1,0): {:.12}", fast.get(&[1, 0]).unwrap());
    println!("coefficient at (-2,3): {:.12}", fast.get(&[-2, 3]).unwrap());
    println!("Plancherel defect: {:.2e}", plancherel_defect(&f, &fast));

    let back = inverse(&fast, 8)?;
    println!("round trip error: {:.2e}", back.max_abs_diff(&f));

    let mut csv = Vec::new();
    fast.write_csv(&mut csv)?;
    let text = String::from_utf8(csv).expect("csv is utf-8");
    for line in text.lines().take(4) {
        println!("{line}");
    }
    println!("... {} rows", text.lines().count() - 2);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
