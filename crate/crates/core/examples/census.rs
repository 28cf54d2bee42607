//! Census of balanced 2- and 3-spheres with three vertices of each color.

use balkit::enumerate::{enumerate_balanced_spheres, EnumerationSpec};
use balkit::symmetry;

fn main() -> balkit::Result<()> {
    let spec = EnumerationSpec::spheres(2, vec![3, 3, 3]);
    let census = enumerate_balanced_spheres(&spec)?;
    println!("balanced 2-spheres with classes (3,3,3): {}", census.entries.len());

    let start = std::time::Instant::now();
    let spec = EnumerationSpec::spheres(3, vec![3, 3, 3, 3]);
    let census = enumerate_balanced_spheres(&spec)?;
    println!(
        "balanced 3-spheres with classes (3,3,3,3): {} ({:?}, {} nodes, {:?})",
        census.entries.len(),
        census.outcome,
        census.nodes,
        start.elapsed()
    );
    for e in &census.entries {
        println!(
            "  f = {:?}, |Aut| = {}, neighborliness {}",
            e.f_vector.f, e.aut_order, e.neighborliness
        );
        let k = &e.document.complex;
        let z: Vec<String> = e
            .document
            .require_coloring()?
            .class(3)
            .vertices()
            .map(|v| {
                let link = k.link(balkit::Face::singleton(v)).expect("vertex");
                format!("{}:{}", k.vertex_name(v), link.num_vertices())
            })
            .collect();
        println!("    color-4 link sizes {z:?}");
        let _ = symmetry::canonical_form(k)?;
    }
    println!("edge counts: {:?}", census.edge_spectrum());
    Ok(())
}
