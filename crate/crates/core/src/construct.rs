//! Builders for the named complexes and the generic constructions behind them.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::complex::{Coloring, Face, Labels, SimplicialComplex, VertexId, MAX_VERTICES};
use crate::enumerate::{self, EnumerationSpec};
use crate::error::{Error, Result};
use crate::io::ComplexDocument;
use crate::verify;

/// Names accepted by [`named`].
pub const NAMES: &[&str] = &[
    "cross4",
    "octahedron",
    "sigma1",
    "sigma2",
    "sigma3",
    "s1",
    "s2",
    "s3",
    "gamma16",
    "gamma16-rank3",
    "lens16",
    "torus7",
    "rp2-6",
];

/// Automorphisms of the 16-vertex sphere, in cycle notation over its labels.
pub const GAMMA16_GENERATORS: [&str; 2] = [
    "(u1u3u2u4)(v1z2v2z1)(v3z4v4z3)(w1w4w2w3)",
    "(z1v1)(z2v2)(z3v3)(z4v4)(u1w1)(u2w2)(u3w3)(u4w4)",
];

/// Rotation of each color class; the symmetry imposed when searching for the lens space.
pub const LENS16_ROTATION: &str = "(u1u3u2u4)(v1v3v2v4)(w1w3w2w4)(z1z3z2z4)";

/// Permutations expected to act on the 16-vertex lens space, as `(name, cycles)`.
/// `index-rotation` is listed as printed; `index-rotation-full` adds the
/// missing `(u4v4w4)` cycle.
pub const LENS16_GENERATORS: [(&str, &str); 6] = [
    ("index-rotation", "(u1v1w1)(u2v2w2)(u3v3w3)"),
    ("index-rotation-full", "(u1v1w1)(u2v2w2)(u3v3w3)(u4v4w4)"),
    ("class-rotation", LENS16_ROTATION),
    ("swap-vw", "(z1z2)(z3z4)(v1w1)(v2w2)(v3w3)(v4w4)"),
    ("swap-uw", "(z1z2)(z3z4)(u1w1)(u2w2)(u3w3)(u4w4)"),
    ("swap-uv", "(z1z2)(z3z4)(u1v1)(u2v2)(u3v3)(u4v4)"),
];

/// Id of a `u/v/w/z` label with index 1..=4 in the 16-vertex complexes.
pub fn letter_vertex(label: &str) -> Result<VertexId> {
    let mut chars = label.chars();
    let letter = chars.next().ok_or_else(|| Error::Input("empty vertex label".into()))?;
    let class = "uvwz".find(letter).ok_or_else(|| Error::Input(format!("unknown vertex label {label:?}")))?;
    let index: usize = chars.as_str().parse().map_err(|_| Error::Input(format!("unknown vertex label {label:?}")))?;
    if !(1..=4).contains(&index) {
        return Err(Error::Input(format!("vertex index out of range in {label:?}")));
    }
    Ok(class * 4 + index - 1)
}

/// Labels `u1..u4, v1..v4, w1..w4, z1..z4` for ids `0..16`.
pub fn letter_labels() -> Labels {
    Labels::new(
        (0..16)
            .map(|v| Some(format!("{}{}", ['u', 'v', 'w', 'z'][v / 4], v % 4 + 1)))
            .collect(),
    )
}

/// Colors by letter: `u` is color 1, …, `z` color 4 (0-based internally).
pub fn letter_coloring(num_colors: usize) -> Coloring {
    Coloring::new(num_colors, (0..num_colors * 4).map(|v| (v, v / 4))).expect("letters stay in range")
}

/// Boundary of the `d`-dimensional cross-polytope: vertices `2i, 2i+1` form color class `i`.
pub fn cross_polytope(d: usize) -> Result<ComplexDocument> {
    if d == 0 || 2 * d > MAX_VERTICES {
        return Err(Error::Input(format!("cross-polytope dimension {d} out of range")));
    }
    let mut facets = Vec::with_capacity(1 << d);
    for mask in 0u64..(1 << d) {
        let verts: Vec<VertexId> = (0..d).map(|i| 2 * i + ((mask >> i) & 1) as usize).collect();
        facets.push(Face::new(&verts)?);
    }
    let complex = SimplicialComplex::from_facets(facets)?;
    let coloring = Coloring::new(d, (0..2 * d).map(|v| (v, v / 2)))?;
    Ok(ComplexDocument::new(format!("cross{d}"), complex, Some(coloring)))
}

/// The `n`-cycle on `0..n`; colored with two alternating colors when `n` is even.
pub fn cycle(n: usize) -> Result<ComplexDocument> {
    if !(3..=MAX_VERTICES).contains(&n) {
        return Err(Error::Input(format!("cycle length {n} out of range")));
    }
    let facets: Vec<Face> = (0..n).map(|i| Face::new(&[i, (i + 1) % n])).collect::<Result<_>>()?;
    let complex = SimplicialComplex::from_facets(facets)?;
    let coloring = n.is_multiple_of(2).then(|| Coloring::new(2, (0..n).map(|v| (v, v % 2))).expect("two colors"));
    Ok(ComplexDocument::new(format!("cycle{n}"), complex, coloring))
}

/// Join with two new vertices (after the largest id); they get a new color.
pub fn suspension(doc: &ComplexDocument) -> Result<ComplexDocument> {
    let top = doc.complex.vertex_set().max_vertex().map_or(0, |m| m + 1);
    let poles = SimplicialComplex::from_vertex_lists(&[[top], [top + 1]])?;
    let pole_doc = ComplexDocument::new(
        "poles",
        poles,
        Some(Coloring::new(1, [(top, 0), (top + 1, 0)])?),
    );
    let mut out = join(doc, &pole_doc)?;
    out.name = format!("suspension({})", doc.name);
    Ok(out)
}

/// Join of two documents; colors of the second are shifted past those of the first.
pub fn join(a: &ComplexDocument, b: &ComplexDocument) -> Result<ComplexDocument> {
    let (complex, relabel) = a.complex.join(&b.complex)?;
    let coloring = match (&a.coloring, &b.coloring) {
        (Some(ca), Some(cb)) => {
            let mut assignments: Vec<(VertexId, usize)> =
                a.complex.vertex_ids().into_iter().filter_map(|v| ca.color(v).map(|c| (v, c))).collect();
            for &(old, new) in &relabel {
                if let Some(c) = cb.color(old) {
                    assignments.push((new, c + ca.num_colors()));
                }
            }
            Some(Coloring::new(ca.num_colors() + cb.num_colors(), assignments)?)
        }
        _ => None,
    };
    Ok(ComplexDocument::new(format!("{}*{}", a.name, b.name), complex, coloring))
}

/// Remove facet `fa` of `a` and `fb` of `b` and glue along their boundaries.
/// `pairing` maps every vertex of `fa` to a vertex of `fb` of the same color.
pub fn balanced_connected_sum(
    a: &ComplexDocument,
    b: &ComplexDocument,
    fa: Face,
    fb: Face,
    pairing: &[(VertexId, VertexId)],
) -> Result<ComplexDocument> {
    let ca = a.require_coloring()?;
    let cb = b.require_coloring()?;
    if a.complex.facet_index(fa).is_none() || b.complex.facet_index(fb).is_none() {
        return Err(Error::Input("connected sum needs one facet of each summand".into()));
    }
    if ca.num_colors() != cb.num_colors() {
        return Err(Error::Input("summands use different numbers of colors".into()));
    }
    let mut back: HashMap<VertexId, VertexId> = HashMap::new();
    for &(x, y) in pairing {
        if !fa.contains(x) || !fb.contains(y) {
            return Err(Error::Input(format!("pairing ({x}, {y}) leaves the chosen facets")));
        }
        if ca.color(x) != cb.color(y) {
            return Err(Error::ImproperColoring(format!("pairing ({x}, {y}) joins different colors")));
        }
        if back.insert(y, x).is_some() {
            return Err(Error::Input(format!("vertex {y} paired twice")));
        }
    }
    if back.len() != fa.len() || back.len() != fb.len() || back.values().collect::<BTreeSet<_>>().len() != fa.len() {
        return Err(Error::Input("pairing is not a bijection between the facets".into()));
    }
    let mut next = a.complex.vertex_set().max_vertex().map_or(0, |m| m + 1);
    let mut map = HashMap::new();
    for v in b.complex.vertex_ids() {
        let image = match back.get(&v) {
            Some(&x) => x,
            None => {
                next += 1;
                next - 1
            }
        };
        map.insert(v, image);
    }
    if next > MAX_VERTICES {
        return Err(Error::Input("connected sum exceeds the vertex limit".into()));
    }
    let shifted = b.complex.relabel(|v| map[&v])?;
    let facets: Vec<Face> = a
        .complex
        .facets()
        .iter()
        .filter(|&&f| f != fa)
        .chain(shifted.facets().iter().filter(|&&f| f != fa))
        .copied()
        .collect();
    let complex = SimplicialComplex::from_facets(facets)?;
    let mut assignments: Vec<(VertexId, usize)> =
        a.complex.vertex_ids().into_iter().filter_map(|v| ca.color(v).map(|c| (v, c))).collect();
    for v in b.complex.vertex_ids() {
        if !back.contains_key(&v) {
            assignments.push((map[&v], cb.color(v).ok_or_else(|| Error::ImproperColoring("uncolored vertex".into()))?));
        }
    }
    let coloring = Coloring::new(ca.num_colors(), assignments)?;
    Ok(ComplexDocument::new(format!("{}#{}", a.name, b.name), complex, Some(coloring)))
}

/// Connected sum along the first facets, pairing vertices by color.
pub fn balanced_connected_sum_default(a: &ComplexDocument, b: &ComplexDocument) -> Result<ComplexDocument> {
    let ca = a.require_coloring()?;
    let cb = b.require_coloring()?;
    let fa = a.complex.facets()[0];
    let fb = b.complex.facets()[0];
    let mut pairing = Vec::new();
    for x in fa.vertices() {
        let y = fb
            .vertices()
            .find(|&y| cb.color(y) == ca.color(x))
            .ok_or_else(|| Error::ImproperColoring("facets carry different colors".into()))?;
        pairing.push((x, y));
    }
    balanced_connected_sum(a, b, fa, fb, &pairing)
}

/// A polygon given by its boundary cycle and a set of non-crossing chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordedPolygon {
    pub boundary: Vec<VertexId>,
    pub chords: Vec<(VertexId, VertexId)>,
}

impl ChordedPolygon {
    fn positions(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.boundary.len();
        let pos: HashMap<VertexId, usize> = self.boundary.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != n || n < 3 {
            return Err(Error::Input("boundary must be a cycle on at least 3 distinct vertices".into()));
        }
        let mut out = Vec::new();
        for &(x, y) in &self.chords {
            let (Some(&a), Some(&b)) = (pos.get(&x), pos.get(&y)) else {
                return Err(Error::Input(format!("chord ({x}, {y}) leaves the boundary cycle")));
            };
            let (a, b) = (a.min(b), a.max(b));
            if a == b || b - a == 1 || (a == 0 && b == n - 1) {
                return Err(Error::Input(format!("({x}, {y}) is not a chord")));
            }
            if out.contains(&(a, b)) {
                return Err(Error::Input(format!("chord ({x}, {y}) listed twice")));
            }
            out.push((a, b));
        }
        Ok(out)
    }
}

/// Triangles of the subdivision of a polygon by `n - 3` non-crossing chords,
/// checked to be a homology ball bounded by the polygon.
pub fn triangulate_polygon(p: &ChordedPolygon) -> Result<SimplicialComplex> {
    let n = p.boundary.len();
    let chords = p.positions()?;
    if chords.len() + 3 != n {
        return Err(Error::Input(format!("a {n}-gon needs {} chords, got {}", n - 3, chords.len())));
    }
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(Error::Input(format!(
                    "chords ({}, {}) and ({}, {}) cross",
                    p.boundary[a], p.boundary[b], p.boundary[c], p.boundary[d]
                )));
            }
        }
    }
    let mut triangles = Vec::new();
    let mut stack = vec![(0..n).collect::<Vec<usize>>()];
    while let Some(poly) = stack.pop() {
        if poly.len() == 3 {
            triangles.push(Face::new(&[p.boundary[poly[0]], p.boundary[poly[1]], p.boundary[poly[2]]])?);
            continue;
        }
        let m = poly.len();
        let split = chords.iter().find_map(|&(a, b)| {
            let x = poly.iter().position(|&x| x == a)?;
            let y = poly.iter().position(|&x| x == b)?;
            let (i, j) = (x.min(y), x.max(y));
            (j - i > 1 && !(i == 0 && j == m - 1)).then_some((i, j))
        });
        let (i, j) = split.ok_or_else(|| Error::Input("chords do not triangulate the polygon".into()))?;
        stack.push(poly[i..=j].to_vec());
        let mut rest = poly[j..].to_vec();
        rest.extend_from_slice(&poly[..=i]);
        stack.push(rest);
    }
    let disc = SimplicialComplex::from_facets(triangles)?;
    let boundary = disc.boundary_complex()?;
    let expected: Vec<Face> =
        (0..n).map(|i| Face::new(&[p.boundary[i], p.boundary[(i + 1) % n]])).collect::<Result<_>>()?;
    if boundary != SimplicialComplex::from_facets(expected)? || !verify::is_homology_ball(&disc)?.passed() {
        return Err(Error::ConstructionData("polygon subdivision is not a disc with the given boundary".into()));
    }
    Ok(disc)
}

#[derive(Deserialize)]
struct DiscFile {
    boundary: HashMap<String, Vec<String>>,
    discs: HashMap<String, DiscRecord>,
    d_prime: DPrimeRecord,
}

#[derive(Deserialize)]
struct DiscRecord {
    boundary: String,
    chords: Vec<[String; 2]>,
}

#[derive(Deserialize)]
struct DPrimeRecord {
    solid: Vec<[String; 2]>,
    dashed: Vec<[String; 2]>,
}

const DISC_DATA: &str = include_str!("../data/discs.toml");

/// The six discs and the `D'` edge data, as complexes on the letter ids.
#[derive(Clone, Debug)]
pub struct GammaDiscs {
    pub a: SimplicialComplex,
    pub b: SimplicialComplex,
    pub c: SimplicialComplex,
    pub d: SimplicialComplex,
    pub a_prime: SimplicialComplex,
    pub b_prime: SimplicialComplex,
    pub polygons: HashMap<String, ChordedPolygon>,
    pub d_prime_solid: Vec<Face>,
    pub d_prime_dashed: Vec<Face>,
}

fn edge(pair: &[String; 2]) -> Result<Face> {
    Face::new(&[letter_vertex(&pair[0])?, letter_vertex(&pair[1])?])
}

pub fn gamma16_discs() -> Result<GammaDiscs> {
    let file: DiscFile =
        toml::from_str(DISC_DATA).map_err(|e| Error::ConstructionData(format!("disc data: {e}")))?;
    let mut polygons = HashMap::new();
    let mut discs = HashMap::new();
    for (name, rec) in &file.discs {
        let cycle = file
            .boundary
            .get(&rec.boundary)
            .ok_or_else(|| Error::ConstructionData(format!("disc {name} names unknown boundary")))?;
        let boundary = cycle.iter().map(|l| letter_vertex(l)).collect::<Result<Vec<_>>>()?;
        let chords = rec
            .chords
            .iter()
            .map(|[x, y]| Ok((letter_vertex(x)?, letter_vertex(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let poly = ChordedPolygon { boundary, chords };
        let disc = triangulate_polygon(&poly)
            .map_err(|e| Error::ConstructionData(format!("disc {name}: {e}")))?
            .with_labels(letter_labels());
        discs.insert(name.clone(), disc);
        polygons.insert(name.clone(), poly);
    }
    let take = |name: &str| {
        discs.get(name).cloned().ok_or_else(|| Error::ConstructionData(format!("disc {name} missing")))
    };
    Ok(GammaDiscs {
        a: take("A")?,
        b: take("B")?,
        c: take("C")?,
        d: take("D")?,
        a_prime: take("A_prime")?,
        b_prime: take("B_prime")?,
        d_prime_solid: file.d_prime.solid.iter().map(edge).collect::<Result<_>>()?,
        d_prime_dashed: file.d_prime.dashed.iter().map(edge).collect::<Result<_>>()?,
        polygons,
    })
}

fn faces_of_size(k: &SimplicialComplex, size: usize) -> BTreeSet<Face> {
    k.faces().of_size(size).iter().copied().collect()
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ConstructionData(what.into()))
    }
}

/// Vertex links of the 16-vertex sphere, keyed by `z1..z4` (ids 12..16).
pub fn gamma16_links(discs: &GammaDiscs) -> Result<[SimplicialComplex; 4]> {
    let links = [
        discs.a.union(&discs.c),
        discs.a_prime.union(&discs.d),
        discs.b.union(&discs.c),
        discs.b_prime.union(&discs.d),
    ];
    for (i, l) in links.iter().enumerate() {
        let r = verify::is_homology_sphere(l)?;
        check(r.passed() && l.dim() == 2, &format!("link of z{} is not a 2-sphere: {:?}", i + 1, r.witness))?;
    }
    Ok(links)
}

fn build_gamma16() -> Result<ComplexDocument> {
    let discs = gamma16_discs()?;
    let bd = |k: &SimplicialComplex| k.boundary_complex();
    check(bd(&discs.a)? == bd(&discs.c)? && bd(&discs.b)? == bd(&discs.c)?, "discs A, B, C differ in boundary")?;
    check(
        bd(&discs.a_prime)? == bd(&discs.d)? && bd(&discs.b_prime)? == bd(&discs.d)?,
        "discs A', B', D differ in boundary",
    )?;
    let ab = faces_of_size(&discs.a, 3).union(&faces_of_size(&discs.b, 3)).copied().collect::<BTreeSet<_>>();
    let ab_prime =
        faces_of_size(&discs.a_prime, 3).union(&faces_of_size(&discs.b_prime, 3)).copied().collect::<BTreeSet<_>>();
    check(ab == ab_prime && ab.len() == 20, "A' and B' do not split the sphere A ∪ B")?;

    let colors = letter_coloring(3);
    let abc_edges: BTreeSet<Face> = [&discs.a, &discs.b, &discs.c].iter().flat_map(|k| faces_of_size(k, 2)).collect();
    let mut missing = BTreeSet::new();
    for x in 0..12 {
        for y in x + 1..12 {
            let e = Face::new(&[x, y])?;
            if colors.color(x) != colors.color(y) && !abc_edges.contains(&e) {
                missing.insert(e);
            }
        }
    }
    let solid: BTreeSet<Face> = discs.d_prime_solid.iter().copied().collect();
    check(solid == missing, "solid edges of D' are not the edges missing from A, B, C")?;
    let ab_edges: BTreeSet<Face> = [&discs.a, &discs.b].iter().flat_map(|k| faces_of_size(k, 2)).collect();
    check(discs.d_prime_dashed.iter().all(|e| ab_edges.contains(e)), "dashed edges of D' are not in A ∪ B")?;
    let d_interior: BTreeSet<Face> =
        faces_of_size(&discs.d, 2).difference(&faces_of_size(&bd(&discs.d)?, 2)).copied().collect();
    check(d_interior == solid, "interior edges of D are not the solid edges of D'")?;

    let links = gamma16_links(&discs)?;
    let mut facets = Vec::new();
    for (i, link) in links.iter().enumerate() {
        facets.extend(link.facets().iter().map(|f| f.with(12 + i)));
    }
    let complex = SimplicialComplex::from_facets(facets)?.with_labels(letter_labels());
    Ok(ComplexDocument::new("gamma16", complex, Some(letter_coloring(4))))
}

/// The 16-vertex balanced 2-neighborly 3-sphere assembled from the disc data.
pub fn gamma16() -> Result<ComplexDocument> {
    static CACHE: OnceLock<std::result::Result<ComplexDocument, String>> = OnceLock::new();
    CACHE
        .get_or_init(|| build_gamma16().map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::ConstructionData)
}

/// The rank-selected subcomplex on colors `u, v, w`.
pub fn gamma16_rank3() -> Result<ComplexDocument> {
    let g = gamma16()?;
    let coloring = g.require_coloring()?;
    let complex = g.complex.rank_selected(coloring, crate::complex::ColorSet::full(3))?;
    Ok(ComplexDocument::new("gamma16-rank3", complex, Some(letter_coloring(3))))
}

/// The ear decomposition `(A ∪ B, C, D)` of [`gamma16_rank3`].
pub fn gamma16_rank3_ears() -> Result<Vec<SimplicialComplex>> {
    let discs = gamma16_discs()?;
    Ok(vec![discs.a.union(&discs.b), discs.c, discs.d])
}

const LENS16_CERTIFICATE: &str = include_str!("../data/lens16.json");

/// The 16-vertex balanced 2-neighborly lens space, from the shipped search certificate
/// or, failing that, from the certificate cache.
pub fn lens16() -> Result<ComplexDocument> {
    if let Ok(doc) = ComplexDocument::from_json_str(LENS16_CERTIFICATE) {
        return Ok(doc);
    }
    if let Some(doc) = crate::cache::load_certificate("lens16")? {
        return Ok(doc);
    }
    Err(Error::Unsupported(
        "no lens16 certificate available; run `balkit search --spec` with the lens specification".into(),
    ))
}

/// The search specification that produces [`lens16`].
pub fn lens16_spec() -> EnumerationSpec {
    EnumerationSpec {
        neighborly: Some(2),
        symmetry: vec![LENS16_ROTATION.to_string()],
        target: Some(enumerate::TargetHomology::new(vec![0, 0, 0, 1], [(1, vec![3])])),
        topology: enumerate::Topology::Manifold,
        budget: Some(10_000_000_000),
        first_only: true,
        ..EnumerationSpec::spheres(3, vec![4, 4, 4, 4])
    }
}

/// `Σ_1` octahedron, `Σ_2` suspension of a 6-cycle, `Σ_3` the balanced 2-sphere on 9 vertices.
pub fn sigma(i: usize) -> Result<ComplexDocument> {
    let mut doc = match i {
        1 => cross_polytope(3)?,
        2 => suspension(&cycle(6)?)?,
        3 => {
            let census = enumerate::enumerate_balanced_spheres(&EnumerationSpec::spheres(2, vec![3, 3, 3]))?;
            census
                .entries
                .first()
                .map(|e| e.document.clone())
                .ok_or_else(|| Error::ConstructionData("no balanced 2-sphere on 9 vertices found".into()))?
        }
        _ => return Err(Error::Input(format!("sigma{i} does not exist (expected 1, 2 or 3)"))),
    };
    doc.name = format!("sigma{i}");
    Ok(doc)
}

/// `S_1` connected sum of two octahedral 3-spheres, `S_2` join of two 6-cycles,
/// `S_3` the census member with 46 edges.
pub fn small_spheres() -> Result<[ComplexDocument; 3]> {
    Ok([small_sphere(1)?, small_sphere(2)?, small_sphere(3)?])
}

pub fn small_sphere(i: usize) -> Result<ComplexDocument> {
    let mut doc = match i {
        1 => balanced_connected_sum_default(&cross_polytope(4)?, &cross_polytope(4)?)?,
        2 => join(&cycle(6)?, &cycle(6)?)?,
        3 => {
            let mut spec = EnumerationSpec::spheres(3, vec![3, 3, 3, 3]);
            spec.max_edges = Some(50);
            let census = crate::cache::census_cached(&spec)?;
            census
                .entries
                .iter()
                .find(|e| e.f_vector.f.get(2) == Some(&46))
                .map(|e| e.document.clone())
                .ok_or_else(|| Error::ConstructionData("census has no member with 46 edges".into()))?
        }
        _ => return Err(Error::Input(format!("s{i} does not exist (expected 1, 2 or 3)"))),
    };
    doc.name = format!("s{i}");
    Ok(doc)
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> Result<ComplexDocument> {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(Face::new(&[i, (i + 1) % 7, (i + 3) % 7])?);
        facets.push(Face::new(&[i, (i + 2) % 7, (i + 3) % 7])?);
    }
    Ok(ComplexDocument::new("torus7", SimplicialComplex::from_facets(facets)?, None))
}

/// The 6-vertex real projective plane (vertices `1..6` stored as ids `0..5`).
pub fn rp2_6() -> Result<ComplexDocument> {
    let triples = [123, 124, 135, 146, 156, 236, 245, 256, 345, 346];
    let facets: Vec<Face> = triples
        .iter()
        .map(|t| Face::new(&[t / 100 - 1, (t / 10) % 10 - 1, t % 10 - 1]))
        .collect::<Result<_>>()?;
    let labels = Labels::new((1..=6).map(|i| Some(i.to_string())).collect());
    Ok(ComplexDocument::new("rp2-6", SimplicialComplex::from_facets(facets)?.with_labels(labels), None))
}

/// Build a complex by name (see [`NAMES`]).
pub fn named(name: &str) -> Result<ComplexDocument> {
    let mut doc = match name {
        "cross4" => cross_polytope(4)?,
        "octahedron" => cross_polytope(3)?,
        "sigma1" | "sigma2" | "sigma3" => sigma(name[5..].parse().expect("digit"))?,
        "s1" | "s2" | "s3" => small_sphere(name[1..].parse().expect("digit"))?,
        "gamma16" => gamma16()?,
        "gamma16-rank3" => gamma16_rank3()?,
        "lens16" => lens16()?,
        "torus7" => torus7()?,
        "rp2-6" => rp2_6()?,
        _ => {
            return Err(Error::Input(format!("unknown complex {name:?}; known names: {}", NAMES.join(", "))));
        }
    };
    doc.name = name.to_string();
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_one_chord() {
        let p = ChordedPolygon { boundary: vec![0, 1, 2, 3], chords: vec![(0, 2)] };
        assert_eq!(triangulate_polygon(&p).unwrap().facets().len(), 2);
    }

    #[test]
    fn crossing_chords_rejected() {
        let p = ChordedPolygon { boundary: vec![0, 1, 2, 3, 4, 5], chords: vec![(0, 3), (1, 4), (2, 5)] };
        assert!(matches!(triangulate_polygon(&p), Err(Error::Input(_))));
        let p = ChordedPolygon { boundary: vec![0, 1, 2, 3, 4], chords: vec![(0, 2)] };
        assert!(triangulate_polygon(&p).is_err());
    }

    #[test]
    fn letters() {
        assert_eq!(letter_vertex("u1").unwrap(), 0);
        assert_eq!(letter_vertex("z4").unwrap(), 15);
        assert!(letter_vertex("x1").is_err());
        assert!(letter_vertex("u5").is_err());
    }

    #[test]
    fn cross_polytope_counts() {
        let c = cross_polytope(4).unwrap();
        assert_eq!(c.complex.f_vector().f, vec![1, 8, 24, 32, 16]);
    }

    #[test]
    fn connected_sum_rejects_color_mismatch() {
        let a = cross_polytope(3).unwrap();
        let f = a.complex.facets()[0];
        let pairing: Vec<(usize, usize)> = vec![(0, 2), (2, 0), (4, 4)];
        assert!(matches!(balanced_connected_sum(&a, &a, f, f, &pairing), Err(Error::ImproperColoring(_))));
    }
}
