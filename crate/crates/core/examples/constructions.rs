//! Building balanced spheres: cross-polytopes, joins, suspensions and
//! balanced connected sums, checked and written in the interchange format.

use balkit::{construct, verify};

fn main() -> balkit::Result<()> {
    let square = construct::cycle(4)?;
    let hexagon = construct::cycle(6)?;
    let docs = [
        construct::cross_polytope(3)?,
        construct::join(&square, &hexagon)?,
        construct::suspension(&hexagon)?,
        construct::balanced_connected_sum_default(&construct::cross_polytope(3)?, &construct::cross_polytope(3)?)?,
        construct::sigma(2)?,
    ];
    for doc in &docs {
        let k = &doc.complex;
        let coloring = doc.require_coloring()?;
        println!(
            "{:<24} f = {:?}, balanced {}, sphere {}",
            doc.name,
            k.f_vector().f,
            verify::is_balanced_with(k, coloring).passed(),
            verify::is_homology_sphere(k)?.passed()
        );
    }
    print!("{}", construct::cycle(4)?.to_json_string());
    Ok(())
}
