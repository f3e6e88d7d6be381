//! Lattice cone diagnostics: a fundamental parallelepiped, residues, minimal
//! cone elements and the coset decomposition of a simplicial cone.
//!
//! cargo run --example cone_lab

use iterated_sumsets::cone::{fundamental_domain_points, minimal_elements, residue_of, verify_decomposition};
use iterated_sumsets::d3::{analyze_lattice, InstanceD3};
use iterated_sumsets::sumset::Budget;
use iterated_sumsets::PointSet;

fn main() -> iterated_sumsets::Result<()> {
    let basis = vec![vec![1, 1, 1], vec![1, -2, 1], vec![-2, 1, 1]];
    let fd = fundamental_domain_points(&basis)?;
    println!("domain of {basis:?}: |det| = {}, {} points", fd.det().abs(), fd.count);
    for p in &fd.points {
        println!("  {p:?}");
    }
    println!("residue of (5, 7, 3): {:?}", residue_of(&[5, 7, 3], &fd));

    let a = PointSet::from_points(vec![vec![0, 0], vec![1, 1], vec![1, -2], vec![-2, 1], vec![0, 1]])?;
    let inst = InstanceD3::new(a)?;
    let inv = analyze_lattice(&inst)?;
    let mins = minimal_elements(inst.base(), &inst.lifted_vertices(), inv.n_lambda as u32 + 3, Budget::default())?;
    println!("minimal elements (N = {}):", inv.n_lambda);
    for m in &mins {
        println!("  {:?} at height {} in class {:?}", m.point, m.height, m.residue);
    }

    for (name, inst) in [
        ("A2", inst.clone()),
        ("line", InstanceD3::new(PointSet::from_points(vec![vec![0], vec![-1], vec![2], vec![1]])?)?),
    ] {
        let inv = analyze_lattice(&inst)?;
        let rep = verify_decomposition(&inst, &inv, 8)?;
        println!(
            "{name}: {} translates cover: {}, first {} cover: {}, disjoint: {}",
            rep.cosets, rep.covering, rep.primary_cosets, rep.primary_covering, rep.disjoint
        );
    }
    Ok(())
}
