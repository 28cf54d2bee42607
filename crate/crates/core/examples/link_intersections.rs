//! Intersections of color-4 vertex links in the three small balanced 3-spheres.

use balkit::construct;
use balkit::symmetry;
use balkit::verify;

fn main() -> balkit::Result<()> {
    let sigmas = [construct::sigma(1)?, construct::sigma(2)?, construct::sigma(3)?];
    for (i, doc) in construct::small_spheres()?.iter().enumerate() {
        let k = &doc.complex;
        let coloring = doc.require_coloring()?;
        println!("S{} f = {:?}", i + 1, k.f_vector().f);
        let profile = verify::link_intersection_profile(k, coloring, 3)?;
        for p in &profile.pairs {
            println!("  lk {} ∩ lk {}: homology ball {}", p.labels[0], p.labels[1], p.homology_ball);
        }
        for t in &profile.triples {
            println!("  triple {:?}: homology sphere {}", t.labels, t.homology_sphere);
        }
        let types: Vec<String> = coloring
            .class(3)
            .vertices()
            .map(|z| {
                let link = k.link(balkit::Face::singleton(z)).expect("vertex link");
                let which = sigmas
                    .iter()
                    .position(|s| symmetry::are_isomorphic(&link, &s.complex).ok().flatten().is_some())
                    .map_or("?".to_string(), |j| format!("Σ{}", j + 1));
                format!("lk {} ≅ {which}", k.vertex_name(z))
            })
            .collect();
        println!("  {}", types.join(", "));
    }
    Ok(())
}
