//! Fits the polynomial that |hA| eventually follows and compares its leading
//! coefficient with the normalized hull volume. Works for any point set.
//!
//! cargo run --example khovanskii_fit

use iterated_sumsets::hull::hull_volume_dfact;
use iterated_sumsets::sumset::{cardinality_sequence, khovanskii_fit};
use iterated_sumsets::PointSet;

fn main() -> iterated_sumsets::Result<()> {
    let sets = [
        vec![vec![0], vec![1], vec![3]],
        vec![vec![0], vec![1], vec![5], vec![6]],
        vec![vec![0, 0], vec![1, 0], vec![2, 1], vec![0, 1]],
        vec![vec![0, 0], vec![3, 0], vec![0, 3], vec![1, 1], vec![2, 1]],
    ];
    for points in sets {
        let a = PointSet::from_points(points)?;
        let seq = cardinality_sequence(&a, 24)?;
        let fit = khovanskii_fit(&seq, a.dim())?;
        let coeffs: Vec<String> = fit.coefficients.iter().map(|c| c.to_string()).collect();
        println!("A = {:?}", a.points());
        println!("  |hA| for h <= 10: {:?}", &seq.values[..=10]);
        println!("  polynomial from h0 = {}: coefficients (constant first) {:?}", fit.h0, coeffs);
        println!("  leading * d! = {}, vol * d! = {}", fit.leading_coefficient_times_dfact, hull_volume_dfact(&a)?);
    }
    Ok(())
}
