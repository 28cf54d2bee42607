//! Shellings: the octahedron and the 16-vertex sphere shell; the 7-vertex
//! torus does not, and the exhausted search certifies it.

use balkit::construct;
use balkit::decomposition::{self, DEFAULT_BUDGET};

fn main() -> balkit::Result<()> {
    for (name, doc) in [
        ("octahedron", construct::cross_polytope(3)?),
        ("gamma16", construct::gamma16()?),
        ("torus7", construct::torus7()?),
    ] {
        let k = &doc.complex;
        let start = std::time::Instant::now();
        let outcome = decomposition::find_shelling(k, DEFAULT_BUDGET)?;
        print!("{name}: {} after {} nodes ({:?})", outcome.label(), outcome.nodes(), start.elapsed());
        if let Some(s) = outcome.witness() {
            print!(", order valid: {}", decomposition::validate_shelling(k, &s.order)?.passed());
        }
        println!();
    }
    Ok(())
}
