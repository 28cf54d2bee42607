//! Automorphism groups, with and without fixing colors, and canonical forms.

use balkit::symmetry::{self, Permutation};
use balkit::construct;

fn main() -> balkit::Result<()> {
    for name in ["octahedron", "cross4", "gamma16", "lens16", "s2"] {
        let doc = construct::named(name)?;
        let k = &doc.complex;
        let all = symmetry::automorphism_group(k)?;
        let fixed = symmetry::automorphism_group_with(k, doc.coloring.as_ref())?;
        println!("{name}: |Aut| = {}, color-preserving {}", all.order, fixed.order);
        println!("  orbits {}", all.to_json(k)["orbits"]);
    }

    let gamma = construct::gamma16()?;
    let k = &gamma.complex;
    for g in ["(u1u2)(u3u4)(v1v2)(v3v4)(w1w2)(w3w4)(z1z2)(z3z4)", "(u1w1)(u2w2)(u3w3)(u4w4)(v1z1)(v2z2)(v3z3)(v4z4)"] {
        let p = Permutation::parse(g, k)?;
        println!("{g} is an automorphism: {}", symmetry::is_automorphism(k, &p));
    }

    let n = k.num_vertices();
    let shuffle = Permutation::from_images((0..n).map(|v| (v * 5 + 3) % n).collect())?;
    let moved = k.relabel(|v| shuffle.apply(v))?;
    let same = symmetry::canonical_form(k)?.key() == symmetry::canonical_form(&moved)?.key();
    println!("canonical form survives relabeling: {same}");
    Ok(())
}
