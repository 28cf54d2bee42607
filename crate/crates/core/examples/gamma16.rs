//! Build the 16-vertex balanced 2-neighborly 3-sphere from its disc data and
//! check its advertised properties.

use balkit::construct;
use balkit::symmetry;
use balkit::verify;
use balkit::{homology, Coefficients};

fn main() -> balkit::Result<()> {
    let doc = construct::gamma16()?;
    let k = &doc.complex;
    let coloring = doc.require_coloring()?;
    println!("f-vector: {:?}", k.f_vector().f);
    println!("balanced: {}", verify::is_balanced_with(k, coloring).passed());
    println!("2-neighborly: {}", verify::is_k_neighborly(k, coloring, 2)?.passed());
    println!("homology 3-sphere: {}", verify::is_homology_sphere(k)?.passed());
    println!("homology: {}", homology(k, Coefficients::Integer)?.to_json());
    let group = symmetry::automorphism_group(k)?;
    println!("automorphisms: {}", group.to_json(k));
    for g in construct::GAMMA16_GENERATORS {
        let p = symmetry::Permutation::parse(g, k)?;
        println!("  {g} is an automorphism: {}", symmetry::is_automorphism(k, &p));
    }
    for z in ["z1", "z2", "z3", "z4"] {
        let link = k.link(balkit::Face::singleton(doc.resolve_vertex(z)?))?;
        println!("lk {z}: {} vertices, {} triangles", link.num_vertices(), link.facets().len());
    }
    Ok(())
}
