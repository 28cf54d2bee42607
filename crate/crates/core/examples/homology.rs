//! Reduced homology over the integers, the rationals and a prime field.

use balkit::{construct, homology, Coefficients};

fn main() -> balkit::Result<()> {
    for name in ["octahedron", "torus7", "rp2-6", "gamma16-rank3", "lens16"] {
        let doc = construct::named(name)?;
        println!("{name}");
        for c in [Coefficients::Integer, Coefficients::Rational, Coefficients::Prime(2), Coefficients::Prime(3)] {
            let h = homology(&doc.complex, c)?;
            println!("  {c:>8}: {}", h.to_json());
        }
    }
    let void = balkit::SimplicialComplex::void();
    let empty = balkit::SimplicialComplex::empty();
    match homology(&void, Coefficients::Integer) {
        Ok(h) => println!("void: {}", h.to_json()),
        Err(e) => println!("void: {e}"),
    }
    println!("{{∅}}: {}", homology(&empty, Coefficients::Integer)?.to_json());
    Ok(())
}
