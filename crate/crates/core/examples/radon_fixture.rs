//! Radon partition of six points in Z^4 and the common point of the two part
//! hulls, in exact rationals.
//!
//! cargo run --example radon_fixture

use iterated_sumsets::d2::{affine_dependency, InstanceD2};
use iterated_sumsets::hull::classify_hull;
use iterated_sumsets::PointSet;

fn main() -> iterated_sumsets::Result<()> {
    let a = PointSet::from_points(vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![0, 0, 0, 0],
        vec![1, 1, 1, -1],
    ])?;
    let hull = classify_hull(&a)?;
    let radon = affine_dependency(&InstanceD2::new(a.clone())?)?;
    println!("hull vertices {:?}, simplex: {}", hull.vertex_indices, hull.is_simplex);
    println!("lambda {:?}", radon.lambda);
    println!("X1 {:?}  X2 {:?}  r = {}", radon.x1, radon.x2, radon.r);
    let (p, q) = radon.common_points(&a);
    let show = |v: &[iterated_sumsets::linalg::Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    println!("from X1: ({})", show(&p));
    println!("from X2: ({})", show(&q));
    // conv(A) is covered by the simplices that drop one point of X1
    for &i in &radon.covering {
        println!("covering simplex without point {i}: {:?}", a.without(i).map(|s| s.points().to_vec()));
    }
    Ok(())
}
