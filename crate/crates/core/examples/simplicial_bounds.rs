//! Lower and upper bounds for |hA| when A has d+3 points, a simplex hull and
//! the origin inside it, next to the enumerated values.
//!
//! cargo run --example simplicial_bounds

use iterated_sumsets::d3::{InstanceD3, SimplicialAnalysis};
use iterated_sumsets::sumset::cardinality_sequence;
use iterated_sumsets::PointSet;

fn main() -> iterated_sumsets::Result<()> {
    let fixtures = [
        vec![vec![0, 0], vec![1, 1], vec![1, -2], vec![-2, 1], vec![0, 1]],
        vec![vec![0], vec![-1], vec![2], vec![1]],
    ];
    for points in fixtures {
        let inst = InstanceD3::new(PointSet::from_points(points)?)?;
        let an = SimplicialAnalysis::new(&inst)?;
        let inv = &an.invariants;
        println!("A = {:?}", inst.base().points());
        println!(
            "  N = {}, mu = {:?}, lcc = {}, n' = {}, M_w = {}, equality = {}",
            inv.n_lambda,
            inv.mu.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            inv.lcc,
            inv.n_prime,
            an.m_w,
            an.equality
        );
        let p = inst.predicates();
        println!("  vertex lattice index {}, A - A index {}", p.vertex_lattice_index, p.difference_index);
        let brute = cardinality_sequence(inst.base(), 10)?;
        for (h, b) in brute.values.iter().enumerate() {
            let r = an.bounds(h as u64);
            let exact = r.exact.map_or("-".to_string(), |e| e.to_string());
            println!("  h = {h:>2}  {:>5} <= {b:>5} <= {:<5}  exact {exact}", r.lower, r.upper);
        }
    }
    Ok(())
}
