//! Flag f- and h-vectors of a balanced sphere, the flag Dehn–Sommerville
//! relations, and Alexander duality between complementary rank selections.

use balkit::{construct, homology, verify, Coefficients, ColorSet, FlagVector};

fn main() -> balkit::Result<()> {
    let doc = construct::gamma16()?;
    let k = &doc.complex;
    let coloring = doc.require_coloring()?;
    let d = coloring.num_colors();
    let flag = FlagVector::of(k, coloring)?;
    println!("f = {:?}, h = {:?}", k.f_vector().f, k.f_vector().h);
    for s in 0..1u32 << d {
        let s = ColorSet(s);
        let t = s.complement(d);
        let hs = homology(&k.rank_selected(coloring, s)?, Coefficients::Integer)?;
        let ht = homology(&k.rank_selected(coloring, t)?, Coefficients::Integer)?;
        println!(
            "S = {:?}: f_S = {:>3}, h_S = {:>3}, h_T = {:>3}, β̃(K_S) = {:?}, β̃(K_T) = {:?}",
            s,
            flag.f_of(s),
            flag.h_of(s),
            flag.h_of(t),
            hs.betti,
            ht.betti
        );
    }
    println!("{:?}", verify::dehn_sommerville_flag(k, coloring)?.verdict);
    Ok(())
}
