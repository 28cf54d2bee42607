//! Library results against brute-force oracles written independently here.

use std::collections::BTreeSet;

use itertools::Itertools;

use balkit::construct;
use balkit::decomposition::{self, EarSearchOptions, SearchOutcome, DEFAULT_BUDGET};
use balkit::enumerate::{self, EnumerationSpec, Strategy};
use balkit::symmetry;
use balkit::verify;
use balkit::{homology, Coefficients, Face, SimplicialComplex};

/// Every face, by brute force over the subsets of each facet.
fn all_faces(k: &SimplicialComplex) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for f in k.facets() {
        let bits = f.bits();
        let mut s = bits;
        loop {
            out.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & bits;
        }
    }
    out
}

fn faces_of_size(k: &SimplicialComplex, size: u32) -> Vec<u64> {
    all_faces(k).into_iter().filter(|f| f.count_ones() == size).collect()
}

fn rank_mod(mut a: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow(a[rank][c], p - 2);
        let pivot = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c] * inv % p;
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the boundary map from `size`-faces, with the empty face included.
fn boundary_rank(k: &SimplicialComplex, size: u32, p: i64) -> usize {
    if size == 0 {
        return 0;
    }
    let rows = faces_of_size(k, size - 1);
    let cols = faces_of_size(k, size);
    if cols.is_empty() {
        return 0;
    }
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, &c) in cols.iter().enumerate() {
        let mut sign = 1;
        for v in 0..64 {
            if c >> v & 1 == 1 {
                let i = rows.binary_search(&(c & !(1 << v))).expect("boundary face");
                m[i][j] = sign;
                sign = -sign;
            }
        }
    }
    rank_mod(m, p)
}

/// Reduced Betti numbers over `F_p`; a large prime stands in for ℚ on these sizes.
fn betti_mod(k: &SimplicialComplex, p: i64) -> Vec<u64> {
    let top = k.dim().max(0) as u32;
    (0..=top)
        .map(|i| {
            let n = faces_of_size(k, i + 1).len();
            (n - boundary_rank(k, i + 1, p) - boundary_rank(k, i + 2, p)) as u64
        })
        .collect()
}

const BIG_PRIME: i64 = 1_000_000_007;

#[test]
fn homology_matches_chain_rank_oracle() {
    let mut fixtures = balkit::suite::small_fixtures().unwrap();
    for name in ["octahedron", "cross4", "s1", "torus7"] {
        fixtures.push((name.into(), construct::named(name).unwrap().complex));
    }
    for (name, k) in &fixtures {
        let q = betti_mod(k, BIG_PRIME);
        let z = homology(k, Coefficients::Integer).unwrap();
        assert_eq!(z.betti, q, "{name}: rational Betti numbers");
        for p in [2i64, 3, 5] {
            let fp = homology(k, Coefficients::Prime(p as u64)).unwrap();
            assert_eq!(fp.betti, betti_mod(k, p), "{name}: Betti numbers mod {p}");
        }
        for p in [2u64, 3, 5] {
            let fp = betti_mod(k, p as i64);
            let t = |i: usize| z.torsion_in(i).iter().filter(|x| *x % p == 0u32.into()).count() as u64;
            for i in 0..q.len() {
                let below = if i > 0 { t(i - 1) } else { 0 };
                assert_eq!(fp[i], q[i] + t(i) + below, "{name}: universal coefficients mod {p} in degree {i}");
            }
        }
    }
}

#[test]
fn gamma16_and_lens16_homology_by_chain_ranks() {
    let g = construct::gamma16().unwrap().complex;
    assert_eq!(betti_mod(&g, BIG_PRIME), [0, 0, 0, 1]);
    let l = construct::lens16().unwrap().complex;
    assert_eq!(betti_mod(&l, BIG_PRIME), [0, 0, 0, 1]);
    assert_eq!(betti_mod(&l, 3), [0, 1, 1, 1]);
    assert_eq!(betti_mod(&l, 2), [0, 0, 0, 1]);
}

#[test]
fn face_counts_by_subset_enumeration() {
    for name in ["gamma16", "lens16", "gamma16-rank3", "s2"] {
        let k = construct::named(name).unwrap().complex;
        let faces = all_faces(&k);
        let f: Vec<u64> = (0..=k.dim() + 1).map(|s| faces.iter().filter(|x| x.count_ones() as isize == s).count() as u64).collect();
        assert_eq!(k.f_vector().f, f, "{name}");
    }
}

/// Automorphisms by backtracking over vertex images, checking every face among
/// assigned vertices; no refinement.
fn brute_force_aut(k: &SimplicialComplex) -> u64 {
    let verts = k.vertex_ids();
    let faces = all_faces(k);
    let n = verts.len();
    fn go(
        i: usize,
        verts: &[usize],
        faces: &BTreeSet<u64>,
        image: &mut Vec<usize>,
        used: &mut u64,
        n: usize,
    ) -> u64 {
        if i == n {
            return 1;
        }
        let mut count = 0;
        for &t in verts {
            if *used >> t & 1 == 1 {
                continue;
            }
            image.push(t);
            let ok = faces.iter().filter(|f| *f >> verts[i] & 1 == 1).all(|&f| {
                let mut mapped = 0u64;
                for (j, &v) in verts[..=i].iter().enumerate() {
                    if f >> v & 1 == 1 {
                        mapped |= 1 << image[j];
                    }
                }
                let rest = f & !verts[..=i].iter().fold(0u64, |a, &v| a | 1 << v);
                rest != 0 || faces.contains(&mapped)
            }) && faces.iter().filter(|f| {
                f.count_ones() > 0 && **f >> t & 1 == 1 && {
                    let assigned: u64 = image.iter().fold(0, |a, &v| a | 1 << v);
                    **f & !assigned == 0
                }
            }).all(|&g| {
                let pre = image.iter().enumerate().filter(|(_, &w)| g >> w & 1 == 1).fold(0u64, |a, (j, _)| a | 1 << verts[j]);
                faces.contains(&pre)
            });
            if ok {
                *used |= 1 << t;
                count += go(i + 1, verts, faces, image, used, n);
                *used &= !(1 << t);
            }
            image.pop();
        }
        count
    }
    let mut image = Vec::new();
    let mut used = 0;
    go(0, &verts, &faces, &mut image, &mut used, n)
}

#[test]
fn automorphism_orders_by_brute_force() {
    for name in ["octahedron", "cross4", "sigma1", "sigma2", "sigma3", "torus7", "rp2-6", "gamma16", "lens16"] {
        let doc = construct::named(name).unwrap();
        let k = &doc.complex;
        let expected = brute_force_aut(k);
        let got = symmetry::automorphism_group(k).unwrap().order;
        assert_eq!(got, expected.into(), "{name}");
    }
    assert_eq!(brute_force_aut(&construct::gamma16().unwrap().complex), 8);
    assert_eq!(brute_force_aut(&construct::lens16().unwrap().complex), 96);
}

fn canonical_by_permutations(facets: &[u64], n: usize) -> Vec<u64> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut img: Vec<u64> = facets
                .iter()
                .map(|&f| (0..n).filter(|&v| f >> v & 1 == 1).fold(0u64, |a, v| a | 1 << p[v]))
                .collect();
            img.sort_unstable();
            img
        })
        .min()
        .expect("at least one permutation")
}

/// 2-spheres on the given color classes, by trying every set of rainbow triangles.
fn brute_force_2_spheres(sizes: [usize; 3]) -> usize {
    let offs = [0, sizes[0], sizes[0] + sizes[1]];
    let n = offs[2] + sizes[2];
    let mut tris = Vec::new();
    for a in 0..sizes[0] {
        for b in 0..sizes[1] {
            for c in 0..sizes[2] {
                tris.push(1u64 << a | 1 << (offs[1] + b) | 1 << (offs[2] + c));
            }
        }
    }
    let all = (1u64 << n) - 1;
    let mut classes = BTreeSet::new();
    for mask in 1u64..1 << tris.len() {
        let chosen: Vec<u64> = (0..tris.len()).filter(|i| mask >> i & 1 == 1).map(|i| tris[i]).collect();
        if chosen.iter().fold(0, |a, f| a | f) != all {
            continue;
        }
        let mut edges = std::collections::BTreeMap::<u64, usize>::new();
        for t in &chosen {
            for v in 0..n {
                if t >> v & 1 == 1 {
                    *edges.entry(t & !(1 << v)).or_default() += 1;
                }
            }
        }
        if edges.values().any(|&c| c != 2) {
            continue;
        }
        // A closed surface with χ = 2 and connected vertex links is a 2-sphere.
        if n as i64 - edges.len() as i64 + chosen.len() as i64 != 2 {
            continue;
        }
        let k = SimplicialComplex::from_facets(chosen.iter().map(|&b| Face::from_bits(b))).unwrap();
        if !k.is_connected() {
            continue;
        }
        let links_ok = (0..n).all(|v| k.link(Face::singleton(v)).unwrap().is_connected());
        if links_ok {
            classes.insert(canonical_by_permutations(&chosen, n));
        }
    }
    classes.len()
}

#[test]
fn small_censuses_match_exhaustive_triangle_sets() {
    for sizes in [[2, 2, 2], [2, 2, 3], [2, 3, 3]] {
        let census = enumerate::enumerate_balanced_spheres(&EnumerationSpec::spheres(2, sizes.to_vec())).unwrap();
        assert!(census.is_complete());
        assert_eq!(census.entries.len(), brute_force_2_spheres(sizes), "{sizes:?}");
    }
}

#[test]
fn octahedron_is_the_only_222_sphere() {
    assert_eq!(brute_force_2_spheres([2, 2, 2]), 1);
    let census = enumerate::enumerate_balanced_spheres(&EnumerationSpec::spheres(2, vec![2, 2, 2])).unwrap();
    let oct = construct::cross_polytope(3).unwrap().complex;
    assert!(symmetry::are_isomorphic(&census.entries[0].document.complex, &oct).unwrap().is_some());
}

#[test]
fn generic_and_star_assembly_agree_on_3333() {
    let mut generic = EnumerationSpec::spheres(3, vec![3, 3, 3, 3]);
    generic.strategy = Strategy::Generic;
    let mut star = generic.clone();
    star.strategy = Strategy::StarAssembly;
    let a = enumerate::enumerate_balanced_spheres(&generic).unwrap();
    let b = enumerate::enumerate_balanced_spheres(&star).unwrap();
    let key = |c: &enumerate::Census| c.entries.iter().map(|e| e.canonical.clone()).collect::<BTreeSet<_>>();
    assert_eq!(key(&a), key(&b));
    assert_eq!(a.entries.len(), 5);
}

/// Independent check of a 3-sphere candidate: pseudomanifold, every vertex link a
/// connected closed surface with χ = 2, and rational homology of S³.
fn looks_like_3_sphere(k: &SimplicialComplex) -> bool {
    let faces = all_faces(k);
    let mut ridges = std::collections::BTreeMap::<u64, usize>::new();
    for f in k.facets() {
        for v in f.vertices() {
            *ridges.entry(f.bits() & !(1 << v)).or_default() += 1;
        }
    }
    if ridges.values().any(|&c| c != 2) || faces.iter().filter(|f| f.count_ones() == 3).count() != ridges.len() {
        return false;
    }
    let links = k.vertex_ids().into_iter().all(|v| {
        let l = k.link(Face::singleton(v)).unwrap();
        l.is_connected() && l.euler_characteristic() == 2
    });
    links && betti_mod(k, BIG_PRIME) == [0, 0, 0, 1] && betti_mod(k, 2) == [0, 0, 0, 1]
}

#[test]
fn census_members_are_spheres_and_pairwise_distinct() {
    let census = enumerate::enumerate_balanced_spheres(&EnumerationSpec::spheres(3, vec![3, 3, 3, 3])).unwrap();
    let mut keys = BTreeSet::new();
    for e in &census.entries {
        let k = &e.document.complex;
        assert!(looks_like_3_sphere(k));
        assert_eq!(k.num_vertices(), 12);
        keys.insert(symmetry::canonical_form(k).unwrap().key());
        assert_eq!(brute_force_aut(k).to_string(), e.aut_order.to_string());
    }
    assert_eq!(keys.len(), census.entries.len());
}

#[test]
fn lens_search_matches_certificate() {
    let census = enumerate::search_symmetric(&construct::lens16_spec()).unwrap();
    let found = &census.entries[0].document.complex;
    let cert = construct::lens16().unwrap().complex;
    assert!(symmetry::are_isomorphic(found, &cert).unwrap().is_some());
    assert_eq!(betti_mod(found, 3), [0, 1, 1, 1]);
}

#[test]
fn faulty_projective_plane_list_is_not_a_pseudomanifold() {
    let t = [124, 125, 134, 136, 156, 235, 236, 245, 346, 456];
    let lists: Vec<Vec<usize>> = t.iter().map(|n| vec![n / 100 - 1, (n / 10) % 10 - 1, n % 10 - 1]).collect();
    let k = SimplicialComplex::from_vertex_lists(&lists).unwrap();
    let edge25 = k.ridge_counts()[&Face::new(&[1, 4]).unwrap()];
    assert_eq!(edge25, 3);
    match verify::is_closed_homology_manifold(&k) {
        Ok(r) => assert!(!r.passed()),
        Err(e) => assert!(matches!(e, balkit::Error::NotPseudomanifold(_)), "{e}"),
    }
    assert_eq!(betti_mod(&k, BIG_PRIME), [0, 1, 1]);
    assert_eq!(betti_mod(&k, 2), [0, 1, 1]);
}

/// Shelling condition checked directly: each facet meets the earlier union in a
/// nonempty union of its ridges.
fn is_shelling(k: &SimplicialComplex, order: &[usize]) -> bool {
    let facets = k.facets();
    for (j, &i) in order.iter().enumerate().skip(1) {
        let f = facets[i].bits();
        let meets: Vec<u64> = order[..j].iter().map(|&e| f & facets[e].bits()).collect();
        let ridge_meets: Vec<u64> = meets.iter().copied().filter(|m| m.count_ones() + 1 == f.count_ones()).collect();
        if ridge_meets.is_empty() {
            return false;
        }
        if !meets.iter().all(|m| ridge_meets.iter().any(|r| m & !r == 0)) {
            return false;
        }
    }
    let mut seen: Vec<usize> = order.to_vec();
    seen.sort_unstable();
    seen == (0..facets.len()).collect::<Vec<_>>()
}

#[test]
fn found_shellings_pass_direct_check() {
    for name in ["octahedron", "cross4", "gamma16", "s1", "s3", "gamma16-rank3"] {
        let k = construct::named(name).unwrap().complex;
        match decomposition::find_shelling(&k, DEFAULT_BUDGET).unwrap() {
            SearchOutcome::Found { witness, .. } => assert!(is_shelling(&k, &witness.order), "{name}"),
            other => panic!("{name}: {}", other.label()),
        }
    }
    let bowtie = SimplicialComplex::from_vertex_lists(&[[0, 1, 2], [2, 3, 4]]).unwrap();
    assert!(matches!(decomposition::find_shelling(&bowtie, DEFAULT_BUDGET).unwrap(), SearchOutcome::NotFound { .. }));
    assert!(!is_shelling(&bowtie, &[0, 1]));
}

#[test]
fn ear_witness_pieces_meet_in_boundaries() {
    let k = construct::gamma16_rank3().unwrap().complex;
    let w = decomposition::find_ear_decomposition(&k, EarSearchOptions::default()).unwrap();
    let pieces = w.witness().expect("decomposition exists").complexes(&k).unwrap();
    assert_eq!(pieces.len(), 3);
    assert_eq!(betti_mod(&pieces[0], BIG_PRIME), [0, 0, 1]);
    let mut union = pieces[0].clone();
    for p in &pieces[1..] {
        assert_eq!(betti_mod(p, BIG_PRIME), [0, 0, 0]);
        let boundary = p.boundary_complex().unwrap();
        assert_eq!(all_faces(&union.intersection(p)), all_faces(&boundary));
        union = union.union(p);
    }
    assert_eq!(all_faces(&union), all_faces(&k));
}
