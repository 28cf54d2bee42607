//! Faces, simplicial complexes, colorings and face-counting vectors.
//!
//! Faces are bitmasks over vertex ids `0..64`. A [`SimplicialComplex`] stores
//! only its inclusion-maximal faces; the full face lattice is derived on demand
//! and cached. Two degenerate complexes are distinguished:
//!
//! * the *void* complex has no faces at all;
//! * the *empty* complex `{∅}` has exactly one face, the empty face.
//!
//! The link of a facet is `{∅}`; the boundary of a closed pseudomanifold is void.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Vertex identifiers are small integers; at most [`MAX_VERTICES`] per complex.
pub type VertexId = usize;

pub const MAX_VERTICES: usize = 64;

/// An immutable set of vertices.
///
/// Ordering is lexicographic on the ascending vertex sequences, so `{0,1} <
/// {0,1,2} < {0,2} < {1}`; the empty face is the least element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn new(vertices: &[VertexId]) -> Result<Self> {
        let mut bits = 0u64;
        for &v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::Input(format!("vertex id {v} exceeds the {MAX_VERTICES}-vertex limit")));
            }
            if bits & (1 << v) != 0 {
                return Err(Error::Input(format!("duplicate vertex {v} in face {vertices:?}")));
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: VertexId) -> Self {
        Face(1 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|σ| - 1`, so the empty face has dimension -1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, v: VertexId) -> Face {
        Face(self.0 | (1 << v))
    }

    pub fn without(self, v: VertexId) -> Face {
        Face(self.0 & !(1 << v))
    }

    pub fn min_vertex(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_vertex(self) -> Option<VertexId> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.vertices().collect()
    }

    /// All subsets, including `∅` and the face itself.
    pub fn subfaces(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Face(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(out)
        })
    }

    /// Subsets with exactly one vertex removed.
    pub fn ridges(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }

    /// Apply a vertex map; panics if an image is out of range.
    pub fn map(self, f: impl Fn(VertexId) -> VertexId) -> Face {
        Face(self.vertices().fold(0u64, |acc, v| acc | (1 << f(v))))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        if a == b {
            return Ordering::Equal;
        }
        let diff = a ^ b;
        let low = diff & diff.wrapping_neg();
        let m = low.trailing_zeros();
        let above = |x: u64| if m == 63 { 0 } else { x >> (m + 1) };
        if a & low != 0 {
            // `a` carries the smallest differing vertex; it is smaller unless `b` ends there.
            if above(b) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if above(a) != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Ascending iterator over the vertices of a face.
#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Keep only inclusion-maximal faces; output is sorted and deduplicated.
pub fn maximal_faces(faces: impl IntoIterator<Item = Face>) -> Vec<Face> {
    let mut faces: Vec<Face> = faces.into_iter().collect();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset_of(*k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// Optional display labels, indexed by vertex id.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Labels(Arc<Vec<Option<String>>>);

impl Labels {
    pub fn new(labels: Vec<Option<String>>) -> Self {
        Labels(Arc::new(labels))
    }

    pub fn get(&self, v: VertexId) -> Option<&str> {
        self.0.get(v).and_then(|l| l.as_deref())
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    fn merged(&self, other: &Labels) -> Labels {
        let n = self.0.len().max(other.0.len());
        let merged = (0..n)
            .map(|v| self.get(v).or_else(|| other.get(v)).map(str::to_owned))
            .collect();
        Labels::new(merged)
    }
}

impl fmt::Debug for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().enumerate().filter_map(|(i, l)| l.as_ref().map(|l| (i, l)))).finish()
    }
}

/// A finite abstract simplicial complex given by its facets.
#[derive(Clone)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    labels: Labels,
    faces: OnceLock<Arc<FaceLattice>>,
}

/// Faces grouped by size: `by_size[k]` holds the faces with `k` vertices, sorted.
#[derive(Debug)]
pub struct FaceLattice {
    by_size: Vec<Vec<Face>>,
    index: HashSet<u64>,
}

impl FaceLattice {
    pub fn of_size(&self, k: usize) -> &[Face] {
        self.by_size.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, f: Face) -> bool {
        self.index.contains(&f.bits())
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// All faces, lexicographically sorted.
    pub fn sorted(&self) -> Vec<Face> {
        let mut all: Vec<Face> = self.by_size.iter().flatten().copied().collect();
        all.sort();
        all
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex").field("facets", &self.facets).finish()
    }
}

impl SimplicialComplex {
    /// Build from a list of faces; dominated faces and duplicates are dropped.
    pub fn from_facets(facets: impl IntoIterator<Item = Face>) -> Result<Self> {
        let facets: Vec<Face> = facets.into_iter().collect();
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(Self::from_maximal(maximal_faces(facets)))
    }

    pub fn from_vertex_lists<V: AsRef<[VertexId]>>(lists: &[V]) -> Result<Self> {
        let faces = lists.iter().map(|l| Face::new(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::from_facets(faces)
    }

    /// The void complex (no faces).
    pub fn void() -> Self {
        Self::from_maximal(Vec::new())
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Self::from_maximal(vec![Face::EMPTY])
    }

    /// Caller guarantees `facets` is sorted and inclusion-maximal.
    pub(crate) fn from_maximal(facets: Vec<Face>) -> Self {
        SimplicialComplex { facets, labels: Labels::default(), faces: OnceLock::new() }
    }

    pub(crate) fn from_any(faces: impl IntoIterator<Item = Face>) -> Self {
        Self::from_maximal(maximal_faces(faces))
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub fn with_labels_from(self, other: &SimplicialComplex) -> Self {
        let labels = other.labels.clone();
        self.with_labels(labels)
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    /// Display name of a vertex: its label, or its id.
    pub fn vertex_name(&self, v: VertexId) -> String {
        self.labels.get(v).map(str::to_owned).unwrap_or_else(|| v.to_string())
    }

    pub fn face_name(&self, f: Face) -> String {
        let names: Vec<String> = f.vertices().map(|v| self.vertex_name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Vertex id carrying `label`, if any.
    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertex_ids().into_iter().find(|&v| self.labels.get(v) == Some(label))
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets == [Face::EMPTY]
    }

    /// Union of all facets.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertex_set().to_vec()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_set().len()
    }

    /// Maximum face dimension; -1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            Some(first) => self.facets.iter().all(|f| f.len() == first.len()),
            None => true,
        }
    }

    pub fn contains_face(&self, f: Face) -> bool {
        self.facets.iter().any(|g| f.is_subset_of(*g))
    }

    pub fn faces(&self) -> &FaceLattice {
        self.faces.get_or_init(|| Arc::new(self.build_lattice()))
    }

    fn build_lattice(&self) -> FaceLattice {
        let mut index = HashSet::new();
        for f in &self.facets {
            for s in f.subfaces() {
                index.insert(s.bits());
            }
        }
        let top = self.facets.iter().map(|f| f.len()).max().map_or(0, |m| m + 1);
        let mut by_size = vec![Vec::new(); top];
        for &bits in &index {
            let f = Face::from_bits(bits);
            by_size[f.len()].push(f);
        }
        for v in &mut by_size {
            v.sort();
        }
        FaceLattice { by_size, index }
    }

    /// Faces of dimension `k` (so `k = -1` yields `[∅]` for a non-void complex).
    pub fn faces_of_dim(&self, k: isize) -> &[Face] {
        if k < -1 {
            return &[];
        }
        self.faces().of_size((k + 1) as usize)
    }

    pub fn num_faces_of_dim(&self, k: isize) -> usize {
        self.faces_of_dim(k).len()
    }

    /// Alternating face count `Σ (-1)^i f_i` over `i >= 0`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim().max(0))
            .map(|i| {
                let n = self.num_faces_of_dim(i) as i64;
                if i % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Connected components of the 1-skeleton, each as a vertex set.
    pub fn components(&self) -> Vec<Face> {
        let mut comps: Vec<Face> = Vec::new();
        for f in &self.facets {
            if f.is_empty() {
                continue;
            }
            let mut merged = *f;
            comps.retain(|c| {
                if c.is_disjoint(merged) {
                    true
                } else {
                    merged = merged.union(*c);
                    false
                }
            });
            comps.push(merged);
        }
        comps.sort();
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `lk σ = {τ - σ : σ ⊆ τ ∈ K}`.
    pub fn link(&self, sigma: Face) -> Result<SimplicialComplex> {
        let facets: Vec<Face> =
            self.facets.iter().filter(|f| sigma.is_subset_of(**f)).map(|f| f.difference(sigma)).collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(sigma.to_vec()));
        }
        let mut facets = facets;
        facets.sort();
        Ok(Self::from_maximal(facets).with_labels_from(self))
    }

    /// Closed star: the faces `τ` with `σ ∪ τ ∈ K`.
    pub fn star(&self, sigma: Face) -> Result<SimplicialComplex> {
        let facets: Vec<Face> = self.facets.iter().copied().filter(|f| sigma.is_subset_of(*f)).collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(sigma.to_vec()));
        }
        Ok(Self::from_maximal(facets).with_labels_from(self))
    }

    /// Faces disjoint from `w`. Deleting every vertex is an error.
    pub fn delete(&self, w: Face) -> Result<SimplicialComplex> {
        if self.vertex_set().is_subset_of(w) {
            return Err(Error::EmptyComplex);
        }
        Ok(Self::from_any(self.facets.iter().map(|f| f.difference(w))).with_labels_from(self))
    }

    /// Subcomplex induced on the vertex set `w`.
    pub fn induced(&self, w: Face) -> SimplicialComplex {
        Self::from_any(self.facets.iter().map(|f| f.intersection(w))).with_labels_from(self)
    }

    /// Join. If the vertex sets collide, `other` is shifted past this complex's
    /// largest id; the returned map sends each of `other`'s ids to its new id.
    pub fn join(&self, other: &SimplicialComplex) -> Result<(SimplicialComplex, Vec<(VertexId, VertexId)>)> {
        if self.is_void() || other.is_void() {
            return Err(Error::EmptyComplex);
        }
        let offset = if self.vertex_set().is_disjoint(other.vertex_set()) {
            0
        } else {
            self.vertex_set().max_vertex().map_or(0, |m| m + 1)
        };
        let relabel: Vec<(VertexId, VertexId)> = other.vertex_ids().into_iter().map(|v| (v, v + offset)).collect();
        if let Some(&(_, top)) = relabel.last() {
            if top >= MAX_VERTICES {
                return Err(Error::Input(format!("join needs vertex id {top}, beyond the {MAX_VERTICES}-vertex limit")));
            }
        }
        let shifted: Vec<Face> = other.facets.iter().map(|f| f.map(|v| v + offset)).collect();
        let mut facets = Vec::with_capacity(self.facets.len() * shifted.len());
        for a in &self.facets {
            for b in &shifted {
                facets.push(a.union(*b));
            }
        }
        facets.sort();
        let mut labels: Vec<Option<String>> = Vec::new();
        for v in self.vertex_ids() {
            set_label(&mut labels, v, self.labels.get(v));
        }
        for &(v, w) in &relabel {
            set_label(&mut labels, w, other.labels.get(v));
        }
        Ok((Self::from_maximal(facets).with_labels(Labels::new(labels)), relabel))
    }

    /// Faces whose colors lie in `colors` (a bitmask over color indices).
    pub fn rank_selected(&self, coloring: &Coloring, colors: ColorSet) -> Result<SimplicialComplex> {
        if colors.0 >> coloring.num_colors() != 0 {
            return Err(Error::Input(format!(
                "color set {:?} is not contained in the {} available colors",
                colors.to_vec(),
                coloring.num_colors()
            )));
        }
        coloring.check_proper(self)?;
        let keep = coloring.vertices_with_colors(colors);
        Ok(self.induced(keep))
    }

    /// Subcomplex generated by ridges lying in exactly one facet (void if closed).
    pub fn boundary_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let counts = self.ridge_counts();
        if let Some((&r, _)) = counts.iter().filter(|(_, &c)| c > 2).min_by_key(|(r, _)| **r) {
            return Err(Error::NotPseudomanifold(r.to_vec()));
        }
        let ridges: Vec<Face> = counts.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
        let mut ridges = ridges;
        ridges.sort();
        Ok(Self::from_maximal(ridges).with_labels_from(self))
    }

    /// Number of facets containing each codimension-one face.
    pub fn ridge_counts(&self) -> HashMap<Face, usize> {
        let mut counts = HashMap::new();
        for f in &self.facets {
            if f.is_empty() {
                continue;
            }
            for r in f.ridges() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Faces of both complexes.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut faces = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                faces.push(a.intersection(*b));
            }
        }
        Self::from_any(faces).with_labels(self.labels.merged(&other.labels))
    }

    /// Faces of either complex.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_any(self.facets.iter().chain(other.facets.iter()).copied())
            .with_labels(self.labels.merged(&other.labels))
    }

    /// Subcomplex generated by a subset of facets.
    pub fn subcomplex(&self, facet_indices: &[usize]) -> Result<SimplicialComplex> {
        let mut facets = Vec::with_capacity(facet_indices.len());
        for &i in facet_indices {
            let f = self.facets.get(i).ok_or_else(|| Error::Input(format!("facet index {i} out of range")))?;
            facets.push(*f);
        }
        Ok(Self::from_any(facets).with_labels_from(self))
    }

    /// Position of `face` in the facet list.
    pub fn facet_index(&self, face: Face) -> Option<usize> {
        self.facets.binary_search(&face).ok()
    }

    /// Rename vertices through `map` (must be injective on the vertex set).
    pub fn relabel(&self, map: impl Fn(VertexId) -> VertexId) -> Result<SimplicialComplex> {
        let verts = self.vertex_ids();
        let images: Vec<VertexId> = verts.iter().map(|&v| map(v)).collect();
        let mut seen = HashSet::new();
        for &w in &images {
            if w >= MAX_VERTICES || !seen.insert(w) {
                return Err(Error::Input(format!("relabeling is not injective into 0..{MAX_VERTICES}")));
            }
        }
        let mut labels: Vec<Option<String>> = Vec::new();
        for (&v, &w) in verts.iter().zip(&images) {
            set_label(&mut labels, w, self.labels.get(v));
        }
        let facets: Vec<Face> = self.facets.iter().map(|f| f.map(&map)).collect();
        Ok(Self::from_any(facets).with_labels(Labels::new(labels)))
    }

    /// Relabel to ids `0..n` preserving vertex order; returns the old ids in new order.
    pub fn compacted(&self) -> (SimplicialComplex, Vec<VertexId>) {
        let verts = self.vertex_ids();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let k = self.relabel(|v| pos[v]).expect("order-preserving compaction is injective");
        (k, verts)
    }

    pub fn f_vector(&self) -> FaceVector {
        FaceVector::of(self)
    }

    pub fn flag_vectors(&self, coloring: &Coloring) -> Result<FlagVector> {
        FlagVector::of(self, coloring)
    }
}

fn set_label(labels: &mut Vec<Option<String>>, v: VertexId, label: Option<&str>) {
    if let Some(l) = label {
        if labels.len() <= v {
            labels.resize(v + 1, None);
        }
        labels[v] = Some(l.to_owned());
    }
}

/// A set of colors, as a bitmask over color indices `0..32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(pub u32);

impl ColorSet {
    pub fn from_colors(colors: &[usize]) -> Self {
        ColorSet(colors.iter().fold(0u32, |acc, &c| acc | (1 << c)))
    }

    pub fn full(d: usize) -> Self {
        ColorSet(if d >= 32 { u32::MAX } else { (1u32 << d) - 1 })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: usize) -> bool {
        self.0 & (1 << c) != 0
    }

    pub fn complement(self, d: usize) -> ColorSet {
        ColorSet(!self.0 & ColorSet::full(d).0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        (0..32).filter(|&c| self.contains(c)).collect()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

/// Vertex colors `0..d`. Color classes `V_1..V_d` of the literature are
/// classes `0..d-1` here; the file format and CLI use 1-based colors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    colors: Vec<Option<usize>>,
    num_colors: usize,
}

impl Coloring {
    pub fn new(num_colors: usize, assignments: impl IntoIterator<Item = (VertexId, usize)>) -> Result<Self> {
        let mut colors = Vec::new();
        for (v, c) in assignments {
            if c >= num_colors {
                return Err(Error::Input(format!("color {c} out of range for {num_colors} colors")));
            }
            if v >= MAX_VERTICES {
                return Err(Error::Input(format!("vertex id {v} out of range")));
            }
            if colors.len() <= v {
                colors.resize(v + 1, None);
            }
            colors[v] = Some(c);
        }
        Ok(Coloring { colors, num_colors })
    }

    /// Colors given as one vertex class per color.
    pub fn from_classes(classes: &[Face]) -> Result<Self> {
        Self::new(classes.len(), classes.iter().enumerate().flat_map(|(c, cls)| cls.vertices().map(move |v| (v, c))))
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, v: VertexId) -> Option<usize> {
        self.colors.get(v).copied().flatten()
    }

    pub fn class(&self, c: usize) -> Face {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, col)| **col == Some(c))
            .fold(Face::EMPTY, |acc, (v, _)| acc.with(v))
    }

    pub fn classes(&self) -> Vec<Face> {
        (0..self.num_colors).map(|c| self.class(c)).collect()
    }

    pub fn vertices_with_colors(&self, colors: ColorSet) -> Face {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_some_and(|c| colors.contains(c)))
            .fold(Face::EMPTY, |acc, (v, _)| acc.with(v))
    }

    /// `κ(F)` as a color set; `None` if some vertex is uncolored.
    pub fn colors_of(&self, f: Face) -> Option<ColorSet> {
        let mut set = 0u32;
        for v in f.vertices() {
            set |= 1 << self.color(v)?;
        }
        Some(ColorSet(set))
    }

    /// Every vertex colored and no edge monochromatic.
    pub fn check_proper(&self, k: &SimplicialComplex) -> Result<()> {
        for v in k.vertex_ids() {
            if self.color(v).is_none() {
                return Err(Error::ImproperColoring(format!("vertex {} has no color", k.vertex_name(v))));
            }
        }
        for f in k.facets() {
            let verts = f.to_vec();
            for (i, &a) in verts.iter().enumerate() {
                for &b in &verts[i + 1..] {
                    if self.color(a) == self.color(b) {
                        return Err(Error::ImproperColoring(format!(
                            "edge {{{},{}}} is monochromatic",
                            k.vertex_name(a),
                            k.vertex_name(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_proper_on(&self, k: &SimplicialComplex) -> bool {
        self.check_proper(k).is_ok()
    }

    /// Recolor through a vertex map (the coloring of a relabeled complex).
    pub fn relabeled(&self, map: impl Fn(VertexId) -> VertexId) -> Coloring {
        let assignments: Vec<(VertexId, usize)> =
            self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|c| (map(v), c))).collect();
        Coloring::new(self.num_colors, assignments).expect("relabeling keeps colors in range")
    }

    /// Restrict to the vertices of `k`.
    pub fn restricted_to(&self, k: &SimplicialComplex) -> Coloring {
        let assignments: Vec<(VertexId, usize)> =
            k.vertex_ids().into_iter().filter_map(|v| self.color(v).map(|c| (v, c))).collect();
        Coloring::new(self.num_colors, assignments).expect("subset of a valid coloring")
    }
}

/// `f_{-1}, f_0, …, f_{dim}` and `h_0, …, h_{dim+1}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FaceVector {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl FaceVector {
    pub fn of(k: &SimplicialComplex) -> FaceVector {
        if k.is_void() {
            return FaceVector { f: Vec::new(), h: Vec::new() };
        }
        let top = k.dim();
        let f: Vec<u64> = (-1..=top).map(|i| k.num_faces_of_dim(i) as u64).collect();
        let h = h_from_f(&f);
        FaceVector { f, h }
    }

    /// `f_i` for `i >= -1`.
    pub fn f_i(&self, i: isize) -> u64 {
        self.f.get((i + 1) as usize).copied().unwrap_or(0)
    }
}

/// `h_k = Σ_{i<=k} (-1)^{k-i} C(d-i, k-i) f_{i-1}` with `d = f.len() - 1`.
pub fn h_from_f(f: &[u64]) -> Vec<i64> {
    let d = f.len().saturating_sub(1);
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, k - i) as i64 * f[i] as i64
                })
                .sum()
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Flag f- and h-numbers indexed by color subsets (bitmask index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    pub num_colors: usize,
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl FlagVector {
    pub fn of(k: &SimplicialComplex, coloring: &Coloring) -> Result<FlagVector> {
        coloring.check_proper(k)?;
        let d = coloring.num_colors();
        if d > 20 {
            return Err(Error::Input(format!("flag vectors over {d} colors are not supported")));
        }
        let mut f = vec![0u64; 1 << d];
        for size in 0..=(k.dim() + 1).max(0) as usize {
            for face in k.faces().of_size(size) {
                let s = coloring.colors_of(*face).expect("proper coloring colors every vertex");
                f[s.0 as usize] += 1;
            }
        }
        let h = (0..1usize << d)
            .map(|s| {
                let mut total = 0i64;
                let mut t = s;
                loop {
                    let sign = if (s.count_ones() - t.count_ones()) % 2 == 0 { 1 } else { -1 };
                    total += sign * f[t] as i64;
                    if t == 0 {
                        break;
                    }
                    t = (t - 1) & s;
                }
                total
            })
            .collect();
        Ok(FlagVector { num_colors: d, f, h })
    }

    pub fn f_of(&self, s: ColorSet) -> u64 {
        self.f[s.0 as usize]
    }

    pub fn h_of(&self, s: ColorSet) -> i64 {
        self.h[s.0 as usize]
    }

    /// `Σ_{|S|=i} f_S`, which equals `f_{i-1}`.
    pub fn f_rank_sum(&self, i: usize) -> u64 {
        (0..self.f.len()).filter(|s| s.count_ones() as usize == i).map(|s| self.f[s]).sum()
    }

    /// `Σ_{|S|=i} h_S`, which equals `h_i`.
    pub fn h_rank_sum(&self, i: usize) -> i64 {
        (0..self.h.len()).filter(|s| s.count_ones() as usize == i).map(|s| self.h[s]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[usize]) -> Face {
        Face::new(v).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(face(&[a, b, c]));
                }
            }
        }
        SimplicialComplex::from_facets(facets).unwrap()
    }

    #[test]
    fn lexicographic_face_order() {
        let mut faces = vec![face(&[1]), face(&[0, 2]), face(&[0, 1, 2]), face(&[0, 1]), Face::EMPTY, face(&[63])];
        faces.sort();
        assert_eq!(faces, vec![Face::EMPTY, face(&[0, 1]), face(&[0, 1, 2]), face(&[0, 2]), face(&[1]), face(&[63])]);
    }

    #[test]
    fn duplicate_vertex_is_rejected() {
        assert!(matches!(Face::new(&[1, 1]), Err(Error::Input(_))));
        assert!(matches!(SimplicialComplex::from_facets(vec![]), Err(Error::EmptyComplex)));
    }

    #[test]
    fn octahedron_counts() {
        let k = octahedron();
        assert_eq!(k.dim(), 2);
        assert_eq!(k.f_vector().f, vec![1, 6, 12, 8]);
        assert!(k.is_pure());
    }

    #[test]
    fn dominated_face_dropped() {
        let k = SimplicialComplex::from_vertex_lists(&[vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert_eq!(k.facets(), &[face(&[0, 1, 2])]);
    }

    #[test]
    fn link_of_facet_is_empty_complex() {
        let k = octahedron();
        let l = k.link(face(&[0, 2, 4])).unwrap();
        assert!(l.is_empty_complex());
        assert!(matches!(k.link(face(&[0, 1])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn star_and_link_of_vertex() {
        let k = octahedron();
        let st = k.star(face(&[0])).unwrap();
        assert_eq!(st.facets().len(), 4);
        assert_eq!(st.boundary_complex().unwrap(), k.link(face(&[0])).unwrap());
        assert!(k.boundary_complex().unwrap().is_void());
    }

    #[test]
    fn deleting_everything_fails() {
        let k = octahedron();
        assert!(matches!(k.delete(k.vertex_set()), Err(Error::EmptyComplex)));
        let cyc = k.delete(face(&[0, 1])).unwrap();
        assert_eq!(cyc.f_vector().f, vec![1, 4, 4]);
    }

    #[test]
    fn join_of_four_zero_spheres() {
        let s0 = SimplicialComplex::from_vertex_lists(&[vec![0], vec![1]]).unwrap();
        let mut acc = s0.clone();
        for _ in 0..3 {
            acc = acc.join(&s0).unwrap().0;
        }
        let fv = acc.f_vector();
        assert_eq!(fv.f, vec![1, 8, 24, 32, 16]);
        assert_eq!(fv.h, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn join_relabels_collisions() {
        let e = SimplicialComplex::from_vertex_lists(&[vec![0, 1]]).unwrap();
        let (j, map) = e.join(&e).unwrap();
        assert_eq!(map, vec![(0, 2), (1, 3)]);
        assert_eq!(j.facets(), &[face(&[0, 1, 2, 3])]);
    }

    #[test]
    fn ridge_in_three_facets_is_not_pseudomanifold() {
        let k = SimplicialComplex::from_vertex_lists(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).unwrap();
        assert!(matches!(k.boundary_complex(), Err(Error::NotPseudomanifold(_))));
    }

    #[test]
    fn rank_selection_of_octahedron() {
        let k = octahedron();
        let col = Coloring::from_classes(&[face(&[0, 1]), face(&[2, 3]), face(&[4, 5])]).unwrap();
        let sel = k.rank_selected(&col, ColorSet::from_colors(&[0, 1])).unwrap();
        assert_eq!(sel.f_vector().f, vec![1, 4, 4]);
        assert_eq!(k.rank_selected(&col, ColorSet::full(3)).unwrap(), k);
        assert!(k.rank_selected(&col, ColorSet::from_colors(&[3])).is_err());
    }

    #[test]
    fn improper_coloring_rejected_for_flag_vectors() {
        let k = octahedron();
        let col = Coloring::from_classes(&[face(&[0, 2]), face(&[1, 3]), face(&[4, 5])]).unwrap();
        assert!(matches!(k.flag_vectors(&col), Err(Error::ImproperColoring(_))));
    }

    #[test]
    fn flag_h_of_octahedron_is_all_ones() {
        let k = octahedron();
        let col = Coloring::from_classes(&[face(&[0, 1]), face(&[2, 3]), face(&[4, 5])]).unwrap();
        let fl = k.flag_vectors(&col).unwrap();
        assert!(fl.h.iter().all(|&h| h == 1));
        let fv = k.f_vector();
        for i in 0..=3 {
            assert_eq!(fl.f_rank_sum(i), fv.f[i]);
            assert_eq!(fl.h_rank_sum(i), fv.h[i]);
        }
    }

    #[test]
    fn subfaces_enumerates_power_set() {
        let f = face(&[1, 4, 7]);
        let subs: HashSet<Face> = f.subfaces().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&Face::EMPTY));
        assert_eq!(f.ridges().count(), 3);
    }
}
