// Dual lattices, dual-point enumeration and the A_2 lattice.
//
//     cargo run --example lattice_duality

use latfourier::{a_d_lattice, Lattice, Result};

pub fn run_example() -> Result<()> {
    let lat = Lattice::diagonal(&[2.0, 1.0])?;
    println!("generator:\n{lat}covolume {}", lat.covolume());

    let dual = lat.dual();
    println!(
        "dual generator diagonal: {:?}",
        dual.generator().diagonal().as_slice()
    );

    let points = lat.enumerate_dual(1.0)?;
    println!("{} dual points with |κ| ≤ 1:", points.len());
    for p in &points {
        println!("  k = {:?}  κ = {:?}", p.index, p.coords);
    }
    println!("count bound at R = 1: {}", lat.count_bound(1.0)?);

    // A_2 sits in the plane t_1 + t_2 + t_3 = 0 of R^3
    let a2 = a_d_lattice(2);
    println!("A_2 dual generator (columns):\n{}", a2.dual_generator());
    for j in [[1, 0], [0, 1], [2, -1]] {
        let scaled: Vec<i64> = a2
            .scaled_dual_point(&j)
            .iter()
            .map(|v| v.round() as i64)
            .collect();
        println!(
            "  3·Ã·{j:?} = {scaled:?}  (residues mod 3: {:?})",
            scaled.iter().map(|v| v.rem_euclid(3)).collect::<Vec<_>>()
        );
    }
    println!("intrinsic covolume {:.6}", a2.intrinsic().covolume());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
