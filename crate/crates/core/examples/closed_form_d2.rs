//! |hA| for sets of d+2 points: the affine dependency, its Radon split and the
//! closed form, checked against enumeration.
//!
//! cargo run --example closed_form_d2

use iterated_sumsets::d2::{affine_dependency, card_d2_with, InstanceD2};
use iterated_sumsets::hull::hull_volume_dfact;
use iterated_sumsets::sumset::cardinality_sequence;
use iterated_sumsets::PointSet;

fn main() -> iterated_sumsets::Result<()> {
    let sets = [
        vec![vec![0], vec![1], vec![3]],
        vec![vec![0, 0], vec![1, 0], vec![2, 1], vec![0, 1]],
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![2, 2, 3]],
    ];
    for points in sets {
        let a = PointSet::from_points(points)?;
        let inst = InstanceD2::new(a.clone())?;
        let radon = affine_dependency(&inst)?;
        println!("A = {:?}", a.points());
        println!("  lambda = {:?}, X1 = {:?}, X2 = {:?}", radon.lambda, radon.x1, radon.x2);
        println!("  r = {}, vol * d! = {}", radon.r, hull_volume_dfact(&a)?);
        let h_max = 8;
        let brute = cardinality_sequence(&a, h_max)?;
        for (h, b) in brute.values.iter().enumerate() {
            let f = card_d2_with(a.dim(), &radon, h as u64);
            println!("  h = {h:>2}  formula {f:>6}  brute {b:>6}");
        }
    }
    Ok(())
}
