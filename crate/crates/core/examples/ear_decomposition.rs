//! Ear decompositions of the rank-3 selection of the 16-vertex sphere: check
//! the known witness, then search for one from scratch.

use balkit::construct;
use balkit::decomposition::{self, EarSearchOptions};
use balkit::{homology, Coefficients};

fn main() -> balkit::Result<()> {
    let doc = construct::gamma16_rank3()?;
    let k = &doc.complex;
    println!("{} triangles, homology {}", k.facets().len(), homology(k, Coefficients::Integer)?.to_json());

    let ears = construct::gamma16_rank3_ears()?;
    let report = decomposition::validate_ear_decomposition(k, &ears)?;
    println!("(A ∪ B, C, D) is an ear decomposition: {}", report.passed());

    let start = std::time::Instant::now();
    let outcome = decomposition::find_ear_decomposition(k, EarSearchOptions::default())?;
    println!("search: {} after {} nodes in {:?}", outcome.label(), outcome.nodes(), start.elapsed());
    if let Some(w) = outcome.witness() {
        let sizes: Vec<usize> = w.pieces.iter().map(Vec::len).collect();
        println!("piece sizes: {sizes:?}");
        println!("valid: {}", decomposition::validate_ear_decomposition(k, &w.complexes(k)?)?.passed());
    }

    let torus = construct::torus7()?.complex;
    let none = decomposition::find_ear_decomposition(
        &torus,
        EarSearchOptions { homological_pruning: false, ..Default::default() },
    )?;
    println!("7-vertex torus: {} after {} nodes", none.label(), none.nodes());
    Ok(())
}
