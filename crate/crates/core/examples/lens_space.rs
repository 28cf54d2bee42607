//! The 16-vertex balanced 2-neighborly lens space: load the shipped
//! certificate (or search for it with `--search`) and check it.

use balkit::construct;
use balkit::enumerate;
use balkit::symmetry::{self, Permutation};
use balkit::verify;
use balkit::{homology, Coefficients};

fn main() -> balkit::Result<()> {
    let doc = if std::env::args().any(|a| a == "--search") {
        let census = enumerate::search_symmetric(&construct::lens16_spec())?;
        println!("search: {:?} after {} nodes", census.outcome, census.nodes);
        census.entries.into_iter().next().expect("search found a complex").document
    } else {
        construct::lens16()?
    };
    let k = &doc.complex;
    let coloring = doc.require_coloring()?;
    println!("f-vector: {:?}", k.f_vector().f);
    println!("balanced: {}", verify::is_balanced_with(k, coloring).passed());
    println!("2-neighborly: {}", verify::is_k_neighborly(k, coloring, 2)?.passed());
    println!("closed 3-manifold: {}", verify::is_closed_homology_manifold(k)?.passed());
    println!("homology: {}", homology(k, Coefficients::Integer)?.to_json());

    let profile = verify::link_intersection_profile(k, coloring, 3)?;
    for p in &profile.pairs {
        println!("lk {} ∩ lk {}: {} components", p.labels[0], p.labels[1], p.components);
    }
    let z = |l: &str| doc.resolve_vertex(l);
    let split = verify::heegaard_profile(k, coloring, [z("z1")?, z("z2")?], [z("z3")?, z("z4")?])?;
    println!("Heegaard splitting {{z1,z2}} | {{z3,z4}}: {}", split.report.passed());
    println!("  surface χ = {}", split.surface_euler_characteristic);

    let group = symmetry::automorphism_group(k)?;
    println!("|Aut| = {}", group.order);
    for (name, cycles) in construct::LENS16_GENERATORS {
        let p = Permutation::parse(cycles, k)?;
        println!("  {name} {cycles}: {}", symmetry::is_automorphism(k, &p));
    }
    Ok(())
}
