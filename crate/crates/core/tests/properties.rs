use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use balkit::construct::{self, ChordedPolygon};
use balkit::decomposition::{self, SearchOutcome};
use balkit::homology::boundary_matrices;
use balkit::io::ComplexDocument;
use balkit::suite;
use balkit::symmetry::{self, Permutation};
use balkit::verify;
use balkit::{homology, Coefficients, ColorSet, Face, FlagVector, SimplicialComplex};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, ..ProptestConfig::default() }
}

/// Nonempty complexes on vertices 0..8 given by up to 8 facet bitmasks.
fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u64..256, 1..8)
        .prop_map(|masks| SimplicialComplex::from_facets(masks.into_iter().map(Face::from_bits)).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn sphere_fixture() -> impl Strategy<Value = (ComplexDocument, u64)> {
    let fixtures = suite::small_balanced_spheres().unwrap();
    (0..fixtures.len(), any::<u64>()).prop_map(move |(i, seed)| (fixtures[i].clone(), seed))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn boundary_squares_to_zero(k in complex()) {
        let mats = boundary_matrices(&k).unwrap();
        for w in mats.windows(2) {
            prop_assert!(w[0].to_dense().mul(&w[1].to_dense()).is_zero());
        }
    }

    #[test]
    fn reduced_euler_characteristic_matches_faces(k in complex()) {
        let h = homology(&k, Coefficients::Integer).unwrap();
        prop_assert_eq!(h.reduced_euler(), k.euler_characteristic() - 1);
    }

    #[test]
    fn integer_and_field_homology_agree_without_torsion(k in complex()) {
        let z = homology(&k, Coefficients::Integer).unwrap();
        let q = homology(&k, Coefficients::Rational).unwrap();
        prop_assert_eq!(&z.betti, &q.betti);
        if !z.has_torsion() {
            prop_assert_eq!(&homology(&k, Coefficients::Prime(2)).unwrap().betti, &z.betti);
        }
    }

    #[test]
    fn faces_are_closed_under_subsets(k in complex()) {
        for f in k.faces().sorted() {
            for g in f.subfaces() {
                prop_assert!(k.contains_face(g));
            }
        }
    }

    #[test]
    fn link_and_star_relation(k in complex(), pick in any::<prop::sample::Index>()) {
        let faces = k.faces().sorted();
        let sigma = faces[pick.index(faces.len())];
        let link = k.link(sigma).unwrap();
        for f in link.faces().sorted() {
            prop_assert!(f.is_disjoint(sigma));
            prop_assert!(k.contains_face(f.union(sigma)));
        }
        let star = k.star(sigma).unwrap();
        prop_assert!(star.facets().iter().all(|f| sigma.is_subset_of(*f)));
    }

    #[test]
    fn flag_vectors_refine_face_vector(seed in any::<u64>()) {
        let (k, coloring) = suite::random_balanced(&mut StdRng::seed_from_u64(seed));
        let flag = FlagVector::of(&k, &coloring).unwrap();
        let f = k.f_vector();
        for i in 0..=coloring.num_colors() {
            prop_assert_eq!(flag.f_rank_sum(i), f.f_i(i as isize - 1));
        }
        let total: i64 = (0..1u32 << coloring.num_colors()).map(|s| flag.h_of(ColorSet(s))).sum();
        prop_assert_eq!(total as u64, flag.f_of(ColorSet::full(coloring.num_colors())));
    }

    #[test]
    fn rank_selection_is_balanced_subcomplex(seed in any::<u64>(), s in 0u32..16) {
        let (k, coloring) = suite::random_balanced(&mut StdRng::seed_from_u64(seed));
        let s = ColorSet(s & ((1 << coloring.num_colors()) - 1));
        let sel = k.rank_selected(&coloring, s).unwrap();
        for f in sel.faces().sorted() {
            prop_assert!(k.contains_face(f));
            prop_assert!(f.vertices().all(|v| s.contains(coloring.color(v).unwrap())));
        }
    }

    #[test]
    fn join_h_polynomial_is_product(a in complex(), b in complex()) {
        let b = b.relabel(|v| v + 8).unwrap();
        let (j, _) = a.join(&b).unwrap();
        let (ha, hb) = (a.f_vector().h, b.f_vector().h);
        let mut prod = vec![0i64; ha.len() + hb.len() - 1];
        for (i, x) in ha.iter().enumerate() {
            for (l, y) in hb.iter().enumerate() {
                prod[i + l] += x * y;
            }
        }
        prop_assert_eq!(j.f_vector().h, prod);
    }

    #[test]
    fn dehn_sommerville_and_alexander_duality((doc, seed) in sphere_fixture()) {
        let doc = suite::shuffle_document(&doc, &mut StdRng::seed_from_u64(seed)).unwrap();
        let c = doc.require_coloring().unwrap();
        let d = c.num_colors();
        let flag = FlagVector::of(&doc.complex, c).unwrap();
        for s in 0..1u32 << d {
            let (s, t) = (ColorSet(s), ColorSet(s).complement(d));
            prop_assert_eq!(flag.h_of(s), flag.h_of(t));
            let hs = homology(&doc.complex.rank_selected(c, s).unwrap(), Coefficients::Integer).unwrap();
            let ht = homology(&doc.complex.rank_selected(c, t).unwrap(), Coefficients::Integer).unwrap();
            for i in -1..d as isize {
                prop_assert_eq!(hs.betti(i), ht.betti(d as isize - 2 - i));
            }
        }
    }

    #[test]
    fn relabeled_spheres_stay_spheres((doc, seed) in sphere_fixture()) {
        let moved = suite::shuffle_document(&doc, &mut StdRng::seed_from_u64(seed)).unwrap();
        prop_assert!(verify::is_homology_sphere(&moved.complex).unwrap().passed());
        prop_assert!(verify::is_balanced_with(&moved.complex, moved.require_coloring().unwrap()).passed());
        prop_assert_eq!(moved.complex.f_vector(), doc.complex.f_vector());
    }

    #[test]
    fn canonical_form_ignores_labels(k in complex(), p in permutation(8)) {
        let moved = k.relabel(|v| p[v]).unwrap();
        prop_assert_eq!(symmetry::canonical_form(&k).unwrap().key(), symmetry::canonical_form(&moved).unwrap().key());
        let iso = symmetry::are_isomorphic(&k, &moved).unwrap();
        prop_assert!(iso.is_some());
        let map: std::collections::BTreeMap<usize, usize> = iso.unwrap().into_iter().collect();
        let image = k.relabel(|v| map[&v]).unwrap();
        prop_assert_eq!(image.facets(), moved.facets());
    }

    #[test]
    fn automorphism_group_is_relabeling_invariant(k in complex(), p in permutation(8)) {
        let moved = k.relabel(|v| p[v]).unwrap();
        let g = symmetry::automorphism_group(&k).unwrap();
        prop_assert_eq!(&g.order, &symmetry::automorphism_group(&moved).unwrap().order);
        for gen in &g.generators {
            prop_assert!(symmetry::is_automorphism(&k, gen));
        }
    }

    #[test]
    fn permutation_inverse_and_composition(p in permutation(8), q in permutation(8)) {
        let (p, q) = (Permutation::from_images(p).unwrap(), Permutation::from_images(q).unwrap());
        prop_assert!(p.compose(&p.inverse()).is_identity());
        let pq = p.compose(&q);
        for v in 0..8 {
            prop_assert_eq!(pq.apply(v), p.apply(q.apply(v)));
        }
        prop_assert_eq!(pq.inverse(), q.inverse().compose(&p.inverse()));
    }

    #[test]
    fn documents_round_trip(k in complex(), seed in any::<u64>()) {
        let doc = ComplexDocument::new("k", k.compacted().0, None);
        prop_assert_eq!(ComplexDocument::from_json_str(&doc.to_json_string()).unwrap(), doc.clone());
        let (b, c) = suite::random_balanced(&mut StdRng::seed_from_u64(seed));
        let colored = ComplexDocument::new("b", b, Some(c)).compacted();
        let back = ComplexDocument::from_json_str(&colored.to_json_string()).unwrap();
        prop_assert_eq!(&back.complex, &colored.complex);
        let (c0, c1) = (colored.coloring.unwrap(), back.coloring.unwrap());
        for v in colored.complex.vertex_ids() {
            prop_assert_eq!(c0.color(v), c1.color(v));
        }
    }

    #[test]
    fn found_shellings_validate(k in complex()) {
        if !k.is_pure() {
            prop_assert!(decomposition::find_shelling(&k, 100_000).is_err());
        } else if let SearchOutcome::Found { witness, .. } = decomposition::find_shelling(&k, 100_000).unwrap() {
            prop_assert!(decomposition::validate_shelling(&k, &witness.order).unwrap().passed());
        }
    }

    #[test]
    fn fan_triangulations_are_balls(n in 4usize..12, start in 0usize..12) {
        let apex = start % n;
        let chords: Vec<(usize, usize)> = (2..n - 1).map(|i| (apex, (apex + i) % n)).collect();
        let disc = construct::triangulate_polygon(&ChordedPolygon { boundary: (0..n).collect(), chords }).unwrap();
        prop_assert_eq!(disc.facets().len(), n - 2);
        prop_assert!(verify::is_homology_ball(&disc).unwrap().passed());
        prop_assert_eq!(disc.boundary_complex().unwrap().facets().len(), n);
    }
}
