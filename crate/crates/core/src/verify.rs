//! Recognition predicates and identity checkers.
//!
//! Every predicate returns a [`PredicateReport`]; failures carry a witness that
//! can be checked by hand (a missing face, a link with the wrong homology, ...).

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{ColorSet, Coloring, Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::homology::{homology, Coefficients, HomologyProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Vertex ids of the certifying face (empty for the empty face or when not face-shaped).
    pub face: Vec<VertexId>,
    /// Display names of the same vertices.
    pub labels: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredicateReport {
    pub predicate: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl PredicateReport {
    pub fn pass(predicate: &str, details: Value) -> Self {
        PredicateReport { predicate: predicate.into(), verdict: Verdict::Pass, witness: None, details }
    }

    pub fn fail(predicate: &str, k: &SimplicialComplex, face: Face, reason: String, details: Value) -> Self {
        let witness = Witness {
            face: face.to_vec(),
            labels: face.vertices().map(|v| k.vertex_name(v)).collect(),
            reason,
        };
        PredicateReport { predicate: predicate.into(), verdict: Verdict::Fail, witness: Some(witness), details }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn adjacency(k: &SimplicialComplex) -> Vec<u64> {
    let n = k.vertex_set().max_vertex().map_or(0, |m| m + 1);
    let mut adj = vec![0u64; n];
    for f in k.facets() {
        for v in f.vertices() {
            adj[v] |= f.without(v).bits();
        }
    }
    adj
}

/// A proper coloring of the 1-skeleton with `d` colors, found by exact backtracking.
pub fn find_proper_coloring(k: &SimplicialComplex, d: usize) -> Result<Option<Coloring>> {
    if k.dim() != d as isize - 1 {
        return Err(Error::DimensionMismatch(format!(
            "a {d}-coloring is sought for a {}-dimensional complex",
            k.dim()
        )));
    }
    let adj = adjacency(k);
    let verts = k.vertex_ids();
    let mut color = vec![usize::MAX; adj.len()];
    if color_rec(&adj, &verts, &mut color, d, 0) {
        Ok(Some(Coloring::new(d, verts.iter().map(|&v| (v, color[v])))?))
    } else {
        Ok(None)
    }
}

fn color_rec(adj: &[u64], verts: &[VertexId], color: &mut [usize], d: usize, used: usize) -> bool {
    // Most saturated uncolored vertex first, ties by degree then id.
    let mut best: Option<(usize, usize, VertexId)> = None;
    for &v in verts {
        if color[v] != usize::MAX {
            continue;
        }
        let mut seen = 0u64;
        for w in Face::from_bits(adj[v]).vertices() {
            if color[w] != usize::MAX {
                seen |= 1 << color[w];
            }
        }
        let key = (seen.count_ones() as usize, adj[v].count_ones() as usize, v);
        let better = match best {
            None => true,
            Some((s, g, b)) => (key.0, key.1) > (s, g) || ((key.0, key.1) == (s, g) && v < b),
        };
        if better {
            best = Some(key);
        }
    }
    let Some((_, _, v)) = best else { return true };
    let mut forbidden = 0u64;
    for w in Face::from_bits(adj[v]).vertices() {
        if color[w] != usize::MAX {
            forbidden |= 1 << color[w];
        }
    }
    for c in 0..d.min(used + 1) {
        if forbidden & (1 << c) != 0 {
            continue;
        }
        color[v] = c;
        if color_rec(adj, verts, color, d, used.max(c + 1)) {
            return true;
        }
    }
    color[v] = usize::MAX;
    false
}

/// Some clique of size `size` in the 1-skeleton, if any.
fn find_clique(adj: &[u64], size: usize) -> Option<Face> {
    fn rec(adj: &[u64], chosen: Face, cand: u64, size: usize) -> Option<Face> {
        if chosen.len() == size {
            return Some(chosen);
        }
        if chosen.len() + (cand.count_ones() as usize) < size {
            return None;
        }
        for v in Face::from_bits(cand).vertices() {
            let rest = cand & adj[v] & !((2u64 << v) - 1);
            if let Some(c) = rec(adj, chosen.with(v), rest, size) {
                return Some(c);
            }
        }
        None
    }
    let all = adj.iter().enumerate().filter(|(_, a)| **a != 0).fold(0u64, |acc, (v, _)| acc | (1 << v));
    rec(adj, Face::EMPTY, all, size)
}

/// Balancedness with a given coloring: `d` colors, proper, `dim = d - 1`.
pub fn is_balanced_with(k: &SimplicialComplex, coloring: &Coloring) -> PredicateReport {
    let d = coloring.num_colors();
    if k.dim() != d as isize - 1 {
        return PredicateReport::fail(
            "balanced",
            k,
            Face::EMPTY,
            format!("dimension {} but {d} colors", k.dim()),
            Value::Null,
        );
    }
    if let Err(Error::ImproperColoring(msg)) = coloring.check_proper(k) {
        let adj = adjacency(k);
        let bad = k
            .vertex_ids()
            .into_iter()
            .find_map(|v| match coloring.color(v) {
                None => Some(Face::singleton(v)),
                Some(c) => Face::from_bits(adj[v])
                    .vertices()
                    .find(|&w| coloring.color(w) == Some(c))
                    .map(|w| Face::singleton(v).with(w)),
            })
            .unwrap_or(Face::EMPTY);
        return PredicateReport::fail("balanced", k, bad, msg, Value::Null);
    }
    PredicateReport::pass("balanced", json!({ "color_class_sizes": class_sizes(coloring) }))
}

/// Balancedness by search: passes iff the 1-skeleton is properly `d`-colorable.
pub fn is_balanced(k: &SimplicialComplex, d: usize) -> Result<(PredicateReport, Option<Coloring>)> {
    match find_proper_coloring(k, d)? {
        Some(c) => {
            let report = PredicateReport::pass("balanced", json!({ "color_class_sizes": class_sizes(&c) }));
            Ok((report, Some(c)))
        }
        None => {
            let adj = adjacency(k);
            let clique = find_clique(&adj, d + 1);
            let reason = match clique {
                Some(_) => format!("the 1-skeleton contains a clique on {} vertices", d + 1),
                None => format!("exhaustive search found no proper {d}-coloring"),
            };
            Ok((PredicateReport::fail("balanced", k, clique.unwrap_or(Face::EMPTY), reason, Value::Null), None))
        }
    }
}

fn class_sizes(c: &Coloring) -> Vec<usize> {
    c.classes().iter().map(|f| f.len()).collect()
}

/// Every rainbow set of at most `k` vertices is a face. The witness is the
/// lexicographically least missing rainbow set.
pub fn is_k_neighborly(cx: &SimplicialComplex, coloring: &Coloring, k: usize) -> Result<PredicateReport> {
    coloring.check_proper(cx)?;
    let verts = cx.vertex_ids();
    let faces = cx.faces();
    // Depth-first over increasing vertex sequences visits sets in lexicographic order.
    fn rec(
        verts: &[VertexId],
        start: usize,
        current: Face,
        used: ColorSet,
        k: usize,
        coloring: &Coloring,
        faces: &crate::complex::FaceLattice,
    ) -> Option<Face> {
        for i in start..verts.len() {
            let v = verts[i];
            let c = coloring.color(v).expect("proper coloring covers every vertex");
            if used.contains(c) {
                continue;
            }
            let next = current.with(v);
            if !faces.contains(next) {
                return Some(next);
            }
            if next.len() < k {
                if let Some(m) = rec(verts, i + 1, next, ColorSet(used.0 | (1 << c)), k, coloring, faces) {
                    return Some(m);
                }
            }
        }
        None
    }
    let missing = if k == 0 { None } else { rec(&verts, 0, Face::EMPTY, ColorSet(0), k, coloring, faces) };
    let name = format!("{k}-neighborly");
    Ok(match missing {
        None => PredicateReport::pass(&name, Value::Null),
        Some(f) => PredicateReport::fail(&name, cx, f, format!("rainbow set {} is not a face", cx.face_name(f)), Value::Null),
    })
}

/// Caches link homology by the order-compacted facet list of the link.
pub struct LinkHomology {
    coefficients: Coefficients,
    memo: HashMap<Vec<u64>, HomologyProfile>,
}

impl LinkHomology {
    pub fn new(coefficients: Coefficients) -> Self {
        LinkHomology { coefficients, memo: HashMap::new() }
    }

    pub fn of(&mut self, k: &SimplicialComplex) -> Result<HomologyProfile> {
        let (compact, _) = k.compacted();
        let key: Vec<u64> = compact.facets().iter().map(|f| f.bits()).collect();
        if let Some(h) = self.memo.get(&key) {
            return Ok(h.clone());
        }
        let h = homology(&compact, self.coefficients)?;
        self.memo.insert(key, h.clone());
        Ok(h)
    }
}

/// Least face whose link violates `ok`, given the expected sphere dimension
/// `top - |σ|` for the link of `σ`. The empty face is checked last but wins ties.
fn least_bad_face(
    k: &SimplicialComplex,
    cache: &mut LinkHomology,
    ok: impl Fn(Face, &HomologyProfile) -> bool,
) -> Result<Option<(Face, HomologyProfile)>> {
    let mut first_bad = None;
    for f in k.faces().sorted() {
        if f.is_empty() {
            continue;
        }
        let h = cache.of(&k.link(f)?)?;
        if !ok(f, &h) {
            first_bad = Some((f, h));
            break;
        }
    }
    let whole = cache.of(k)?;
    if !ok(Face::EMPTY, &whole) {
        return Ok(Some((Face::EMPTY, whole)));
    }
    Ok(first_bad)
}

pub fn is_homology_sphere(k: &SimplicialComplex) -> Result<PredicateReport> {
    is_homology_sphere_with(k, Coefficients::Integer)
}

/// Every link (including that of `∅`) has the homology of a sphere of the right dimension.
pub fn is_homology_sphere_with(k: &SimplicialComplex, coefficients: Coefficients) -> Result<PredicateReport> {
    if k.is_void() {
        return Err(Error::EmptyComplex);
    }
    let top = k.dim();
    let mut cache = LinkHomology::new(coefficients);
    let bad = least_bad_face(k, &mut cache, |f, h| h.is_sphere_like(top - f.len() as isize))?;
    let details = json!({ "dimension": top, "coefficients": coefficients.to_string() });
    Ok(match bad {
        None => PredicateReport::pass("homology-sphere", details),
        Some((f, h)) => {
            let reason = format!(
                "link of {} has homology {} instead of a {}-sphere",
                k.face_name(f),
                h.to_json(),
                top - f.len() as isize
            );
            PredicateReport::fail("homology-sphere", k, f, reason, details)
        }
    })
}

pub fn is_homology_ball(k: &SimplicialComplex) -> Result<PredicateReport> {
    is_homology_ball_with(k, Coefficients::Integer)
}

/// Acyclic, every link is ball- or sphere-like, and the faces with acyclic
/// links form a homology sphere one dimension lower.
pub fn is_homology_ball_with(k: &SimplicialComplex, coefficients: Coefficients) -> Result<PredicateReport> {
    if k.is_void() {
        return Err(Error::EmptyComplex);
    }
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let top = k.dim();
    let mut cache = LinkHomology::new(coefficients);
    let mut boundary_faces = Vec::new();
    let bad = least_bad_face(k, &mut cache, |f, h| {
        if f.is_empty() {
            h.is_acyclic()
        } else {
            h.is_acyclic() || h.is_sphere_like(top - f.len() as isize)
        }
    })?;
    if let Some((f, h)) = bad {
        let reason = if f.is_empty() {
            format!("complex has homology {} instead of vanishing homology", h.to_json())
        } else {
            format!("link of {} has homology {}, neither ball nor sphere", k.face_name(f), h.to_json())
        };
        return Ok(PredicateReport::fail("homology-ball", k, f, reason, Value::Null));
    }
    for f in k.faces().sorted() {
        if cache.of(&k.link(f)?)?.is_acyclic() {
            boundary_faces.push(f);
        }
    }
    let boundary = SimplicialComplex::from_any(boundary_faces.iter().copied()).with_labels_from(k);
    if boundary.faces().len() != boundary_faces.len() {
        let stray = boundary.faces().sorted().into_iter().find(|f| !boundary_faces.contains(f)).unwrap_or(Face::EMPTY);
        return Ok(PredicateReport::fail(
            "homology-ball",
            k,
            stray,
            format!("boundary faces are not closed under inclusion at {}", k.face_name(stray)),
            Value::Null,
        ));
    }
    let sphere = is_homology_sphere_with(&boundary, coefficients)?;
    let boundary_dim = top - 1;
    if !sphere.passed() || boundary.dim() != boundary_dim {
        let w = sphere.witness.clone();
        let face = w.as_ref().map(|w| Face::new(&w.face).expect("witness face is valid")).unwrap_or(Face::EMPTY);
        let reason = match w {
            Some(w) => format!("boundary is not a homology {boundary_dim}-sphere: {}", w.reason),
            None => format!("boundary has dimension {} instead of {boundary_dim}", boundary.dim()),
        };
        return Ok(PredicateReport::fail("homology-ball", k, face, reason, Value::Null));
    }
    let facets: Vec<Vec<String>> =
        boundary.facets().iter().map(|f| f.vertices().map(|v| k.vertex_name(v)).collect()).collect();
    Ok(PredicateReport::pass("homology-ball", json!({ "dimension": top, "boundary_facets": facets })))
}

pub fn is_closed_homology_manifold(k: &SimplicialComplex) -> Result<PredicateReport> {
    is_closed_homology_manifold_with(k, Coefficients::Integer)
}

/// Connected, and every vertex link is a homology sphere of dimension `dim - 1`.
pub fn is_closed_homology_manifold_with(
    k: &SimplicialComplex,
    coefficients: Coefficients,
) -> Result<PredicateReport> {
    if k.is_void() {
        return Err(Error::EmptyComplex);
    }
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let top = k.dim();
    let comps = k.components();
    if comps.len() > 1 {
        let v = comps[1].min_vertex().expect("components are nonempty");
        return Ok(PredicateReport::fail(
            "closed-homology-manifold",
            k,
            Face::singleton(v),
            format!("complex is disconnected ({} components)", comps.len()),
            Value::Null,
        ));
    }
    for v in k.vertex_ids() {
        let link = k.link(Face::singleton(v))?;
        let r = is_homology_sphere_with(&link, coefficients)?;
        if !r.passed() || link.dim() != top - 1 {
            let reason = match r.witness {
                Some(w) => format!("link of {} is not a homology sphere: {}", k.vertex_name(v), w.reason),
                None => format!("link of {} has dimension {}", k.vertex_name(v), link.dim()),
            };
            return Ok(PredicateReport::fail("closed-homology-manifold", k, Face::singleton(v), reason, Value::Null));
        }
    }
    let h = homology(k, coefficients)?;
    Ok(PredicateReport::pass("closed-homology-manifold", json!({ "dimension": top, "homology": h.to_json() })))
}

fn color_set_names(s: ColorSet) -> Vec<usize> {
    s.to_vec().into_iter().map(|c| c + 1).collect()
}

/// Flag Dehn–Sommerville symmetry `h_S = h_{[d]\S}` for a balanced homology sphere.
pub fn dehn_sommerville_flag(k: &SimplicialComplex, coloring: &Coloring) -> Result<PredicateReport> {
    coloring.check_proper(k)?;
    if !is_homology_sphere(k)?.passed() {
        return Err(Error::Precondition("flag Dehn–Sommerville symmetry requires a homology sphere".into()));
    }
    let d = coloring.num_colors();
    let fl = k.flag_vectors(coloring)?;
    for s in 0..(1u32 << d) {
        let s = ColorSet(s);
        let t = s.complement(d);
        if fl.h_of(s) != fl.h_of(t) {
            let reason = format!(
                "h_{:?} = {} but h_{:?} = {}",
                color_set_names(s),
                fl.h_of(s),
                color_set_names(t),
                fl.h_of(t)
            );
            return Ok(PredicateReport::fail("dehn-sommerville", k, Face::EMPTY, reason, json!({ "h": fl.h })));
        }
    }
    Ok(PredicateReport::pass("dehn-sommerville", json!({ "h": fl.h })))
}

/// All color classes have the same size, for a balanced `k`-neighborly homology `(2k-1)`-sphere.
pub fn equal_color_sizes(cx: &SimplicialComplex, coloring: &Coloring, k: usize) -> Result<PredicateReport> {
    if k == 0 || cx.dim() != 2 * k as isize - 1 || coloring.num_colors() != 2 * k {
        return Err(Error::Precondition(format!(
            "expected a {}-dimensional complex with {} colors",
            2 * k as isize - 1,
            2 * k
        )));
    }
    if !coloring.is_proper_on(cx) {
        return Err(Error::Precondition("coloring is not proper".into()));
    }
    if !is_k_neighborly(cx, coloring, k)?.passed() {
        return Err(Error::Precondition(format!("complex is not balanced {k}-neighborly")));
    }
    if !is_homology_sphere(cx)?.passed() {
        return Err(Error::Precondition("complex is not a homology sphere".into()));
    }
    let sizes = class_sizes(coloring);
    let details = json!({ "color_class_sizes": sizes });
    if sizes.iter().all(|&s| s == sizes[0]) {
        return Ok(PredicateReport::pass("equal-color-sizes", details));
    }
    let c = (1..sizes.len()).find(|&c| sizes[c] != sizes[0]).expect("sizes differ somewhere");
    let reason = format!("color 1 has {} vertices, color {} has {}", sizes[0], c + 1, sizes[c]);
    Ok(PredicateReport::fail("equal-color-sizes", cx, coloring.class(c), reason, details))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairIntersection {
    pub vertices: [VertexId; 2],
    pub labels: [String; 2],
    pub components: usize,
    pub homology: Value,
    pub homology_ball: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleIntersection {
    pub vertices: [VertexId; 3],
    pub labels: [String; 3],
    pub components: usize,
    pub homology: Value,
    pub homology_sphere: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkIntersectionProfile {
    pub color: usize,
    pub pairs: Vec<PairIntersection>,
    pub triples: Vec<TripleIntersection>,
}

impl LinkIntersectionProfile {
    pub fn component_counts(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.components).collect()
    }

    pub fn pair(&self, a: VertexId, b: VertexId) -> Option<&PairIntersection> {
        let key = [a.min(b), a.max(b)];
        self.pairs.iter().find(|p| p.vertices == key)
    }
}

/// Pairwise (and triple) intersections of the vertex links of one color class (0-based color).
pub fn link_intersection_profile(
    k: &SimplicialComplex,
    coloring: &Coloring,
    color: usize,
) -> Result<LinkIntersectionProfile> {
    if color >= coloring.num_colors() {
        return Err(Error::Input(format!("color {} does not exist", color + 1)));
    }
    let class = coloring.class(color).intersection(k.vertex_set()).to_vec();
    let links: Vec<SimplicialComplex> =
        class.iter().map(|&v| k.link(Face::singleton(v))).collect::<Result<_>>()?;
    let components = |c: &SimplicialComplex| c.components().iter().filter(|f| !f.is_empty()).count();
    let mut pairs = Vec::new();
    for i in 0..class.len() {
        for j in i + 1..class.len() {
            let inter = links[i].intersection(&links[j]);
            let h = homology(&inter, Coefficients::Integer)?;
            let ball = inter.is_pure() && !inter.is_empty_complex() && is_homology_ball(&inter)?.passed();
            pairs.push(PairIntersection {
                vertices: [class[i], class[j]],
                labels: [k.vertex_name(class[i]), k.vertex_name(class[j])],
                components: components(&inter),
                homology: h.to_json(),
                homology_ball: ball,
            });
        }
    }
    let mut triples = Vec::new();
    for i in 0..class.len() {
        for j in i + 1..class.len() {
            for l in j + 1..class.len() {
                let inter = links[i].intersection(&links[j]).intersection(&links[l]);
                let h = homology(&inter, Coefficients::Integer)?;
                let sphere = is_homology_sphere(&inter)?.passed();
                triples.push(TripleIntersection {
                    vertices: [class[i], class[j], class[l]],
                    labels: [k.vertex_name(class[i]), k.vertex_name(class[j]), k.vertex_name(class[l])],
                    components: components(&inter),
                    homology: h.to_json(),
                    homology_sphere: sphere,
                });
            }
        }
    }
    Ok(LinkIntersectionProfile { color, pairs, triples })
}

#[derive(Clone, Debug, Serialize)]
pub struct HeegaardReport {
    pub handlebody_a: Value,
    pub handlebody_b: Value,
    pub surface: Value,
    pub surface_euler_characteristic: i64,
    pub surface_closed: bool,
    pub report: PredicateReport,
}

/// Homology of `A = st(a) ∪ st(b)`, `B = st(c) ∪ st(d)` and `A ∩ B` for a color
/// class `{a, b, c, d}` of a closed 3-manifold.
pub fn heegaard_profile(
    k: &SimplicialComplex,
    coloring: &Coloring,
    first: [VertexId; 2],
    second: [VertexId; 2],
) -> Result<HeegaardReport> {
    let quad = Face::new(&[first[0], first[1], second[0], second[1]])
        .map_err(|_| Error::Precondition("the four vertices must be distinct".into()))?;
    let color = coloring.color(first[0]);
    let class_ok = color.is_some_and(|c| coloring.class(c).intersection(k.vertex_set()) == quad);
    if !class_ok {
        return Err(Error::Precondition("the two pairs must partition a color class of size 4".into()));
    }
    if k.dim() != 3 || !is_closed_homology_manifold(k)?.passed() {
        return Err(Error::Precondition("Heegaard profile requires a closed homology 3-manifold".into()));
    }
    let star = |v: VertexId| k.star(Face::singleton(v));
    let a = star(first[0])?.union(&star(first[1])?);
    let b = star(second[0])?.union(&star(second[1])?);
    let surf = a.intersection(&b);
    let ha = homology(&a, Coefficients::Integer)?;
    let hb = homology(&b, Coefficients::Integer)?;
    let hs = homology(&surf, Coefficients::Integer)?;
    let chi = surf.euler_characteristic();
    let closed = surf.dim() == 2 && surf.is_pure() && is_closed_homology_manifold(&surf)?.passed();
    let none = Default::default();
    let solid_torus = |h: &HomologyProfile| h.matches(&[0, 1, 0, 0], &none);
    let ok_a = solid_torus(&ha);
    let ok_b = solid_torus(&hb);
    let ok_s = closed && hs.matches(&[0, 2, 1], &none) && chi == 0;
    let details = json!({ "handlebody_a": ha.to_json(), "handlebody_b": hb.to_json(), "surface": hs.to_json() });
    let report = if ok_a && ok_b && ok_s {
        PredicateReport::pass("heegaard", details)
    } else {
        let (face, reason) = if !ok_a {
            (Face::new(&first)?, format!("union of stars has homology {}, not a solid torus", ha.to_json()))
        } else if !ok_b {
            (Face::new(&second)?, format!("union of stars has homology {}, not a solid torus", hb.to_json()))
        } else {
            (Face::EMPTY, format!("intersection has homology {} and Euler characteristic {chi}", hs.to_json()))
        };
        PredicateReport::fail("heegaard", k, face, reason, details)
    };
    Ok(HeegaardReport {
        handlebody_a: ha.to_json(),
        handlebody_b: hb.to_json(),
        surface: hs.to_json(),
        surface_euler_characteristic: chi,
        surface_closed: closed,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> (SimplicialComplex, Coloring) {
        let k = SimplicialComplex::from_vertex_lists(&[
            [0, 2, 4],
            [0, 2, 5],
            [0, 3, 4],
            [0, 3, 5],
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 4],
            [1, 3, 5],
        ])
        .unwrap();
        let c = Coloring::new(3, [(0, 0), (1, 0), (2, 1), (3, 1), (4, 2), (5, 2)]).unwrap();
        (k, c)
    }

    #[test]
    fn octahedron_is_balanced_sphere() {
        let (k, c) = octahedron();
        let found = find_proper_coloring(&k, 3).unwrap().unwrap();
        let mut classes = found.classes();
        classes.sort();
        let mut expected = c.classes();
        expected.sort();
        assert_eq!(classes, expected);
        assert!(is_homology_sphere(&k).unwrap().passed());
        assert!(is_k_neighborly(&k, &c, 3).unwrap().passed());
        assert!(dehn_sommerville_flag(&k, &c).unwrap().passed());
    }

    #[test]
    fn tetrahedron_boundary_not_three_colorable() {
        let k = SimplicialComplex::from_vertex_lists(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert!(find_proper_coloring(&k, 3).unwrap().is_none());
        let (r, _) = is_balanced(&k, 3).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().face.len(), 4);
        assert!(matches!(find_proper_coloring(&k, 4), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn dangling_edge_fails_sphere_with_witness() {
        let (k, _) = octahedron();
        let k = k.union(&SimplicialComplex::from_vertex_lists(&[[0, 6]]).unwrap());
        let r = is_homology_sphere(&k).unwrap();
        assert!(!r.passed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn disc_is_ball_with_cycle_boundary() {
        let k = SimplicialComplex::from_vertex_lists(&[[0, 1, 2], [0, 2, 3]]).unwrap();
        let r = is_homology_ball(&k).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["boundary_facets"].as_array().unwrap().len(), 4);
        assert!(!is_homology_sphere(&k).unwrap().passed());
    }

    #[test]
    fn sphere_is_not_a_ball() {
        let (k, _) = octahedron();
        let r = is_homology_ball(&k).unwrap();
        assert!(!r.passed());
        assert!(r.witness.unwrap().face.is_empty());
    }

    #[test]
    fn neighborly_witness_is_least_missing_set() {
        let (k, c) = octahedron();
        let cyc = k.delete(Face::new(&[4, 5]).unwrap()).unwrap();
        let c2 = Coloring::new(2, [(0, 0), (1, 0), (2, 1), (3, 1)]).unwrap();
        assert!(is_k_neighborly(&cyc, &c2, 2).unwrap().passed());
        let path = SimplicialComplex::from_vertex_lists(&[[0, 2], [2, 1], [1, 3]]).unwrap();
        let r = is_k_neighborly(&path, &c2, 2).unwrap();
        assert_eq!(r.witness.unwrap().face, vec![0, 3]);
        let _ = c;
    }

    #[test]
    fn octahedron_equal_sizes_and_links() {
        let (k, c) = octahedron();
        assert!(matches!(equal_color_sizes(&k, &c, 2), Err(Error::Precondition(_))));
        let prof = link_intersection_profile(&k, &c, 2).unwrap();
        assert_eq!(prof.component_counts(), vec![1]);
    }
}
