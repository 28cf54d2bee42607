//! Canonical forms, isomorphism and automorphism groups by
//! individualization–refinement.
//!
//! A partition of the vertices is refined until every vertex in a cell sees the
//! same multiset of cell patterns through its facets. Search individualizes a
//! vertex of the first smallest non-singleton cell; leaves are discrete
//! partitions, i.e. labelings, and the canonical form is the least relabeled
//! facet list over all leaves. The automorphism group is computed exactly along
//! the first path: at each level the orbit of the chosen vertex under the
//! pointwise stabilizer of the earlier choices is found by searching every
//! sibling subtree for a leaf equivalent to the first leaf.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::complex::{Coloring, Face, SimplicialComplex, VertexId, MAX_VERTICES};
use crate::error::{Error, Result};

/// A bijection on vertex ids `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<VertexId>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<VertexId>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::Input("images do not form a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Build from cycles over `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<VertexId>]) -> Result<Self> {
        let mut images: Vec<VertexId> = (0..n).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= n {
                    return Err(Error::Input(format!("cycle entry {x} outside 0..{n}")));
                }
                if used[x] {
                    return Err(Error::Input(format!("vertex {x} appears in two cycles")));
                }
                used[x] = true;
                images[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[VertexId] {
        &self.0
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.0.get(v).copied().unwrap_or(v)
    }

    pub fn apply_face(&self, f: Face) -> Face {
        f.map(|v| self.apply(v))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.len().max(other.len());
        Permutation((0..n).map(|x| self.apply(other.apply(x))).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Nontrivial cycles, each starting at its least element, in order of that element.
    pub fn cycles(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Cycle notation using the complex's labels: `(u1u3u2u4)(v1v2)` when every
    /// moved vertex is labeled, `(0 3 2)(1 4)` otherwise.
    pub fn render(&self, k: &SimplicialComplex) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        let labeled = cycles.iter().flatten().all(|&v| k.labels().get(v).is_some());
        let sep = if labeled { "" } else { " " };
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|&v| k.vertex_name(v)).collect::<Vec<_>>().join(sep)))
            .collect()
    }

    /// Parse cycle notation against the complex's labels. Entries may be
    /// separated by spaces or commas; without separators labels are matched
    /// greedily, longest first.
    pub fn parse(text: &str, k: &SimplicialComplex) -> Result<Permutation> {
        let n = k.vertex_set().max_vertex().map_or(0, |m| m + 1);
        let mut names: Vec<(String, VertexId)> = k
            .vertex_ids()
            .into_iter()
            .filter_map(|v| k.labels().get(v).map(|l| (l.to_string(), v)))
            .collect();
        names.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        let resolve = |tok: &str| -> Result<VertexId> {
            if let Some((_, v)) = names.iter().find(|(l, _)| l == tok) {
                return Ok(*v);
            }
            match tok.parse::<usize>() {
                Ok(v) if v < n => Ok(v),
                _ => Err(Error::Input(format!("unknown vertex {tok:?} in permutation"))),
            }
        };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Input(format!("expected '(' in {text:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Input(format!("unbalanced cycle in {text:?}")))?;
            let body = open[..close].trim();
            rest = open[close + 1..].trim_start();
            let mut cyc = Vec::new();
            if body.contains(|c: char| c.is_whitespace() || c == ',') {
                for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                    cyc.push(resolve(tok)?);
                }
            } else {
                let mut s = body;
                while !s.is_empty() {
                    let (label, v) = names
                        .iter()
                        .find(|(l, _)| s.starts_with(l.as_str()))
                        .ok_or_else(|| Error::Input(format!("cannot read vertex at {s:?} in {text:?}")))?;
                    cyc.push(*v);
                    s = &s[label.len()..];
                }
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
        }
        Permutation::from_cycles(n, &cycles)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}

/// The facet set is mapped onto itself.
pub fn is_automorphism(k: &SimplicialComplex, p: &Permutation) -> bool {
    let verts = k.vertex_set();
    if verts.vertices().any(|v| !verts.contains(p.apply(v))) {
        return false;
    }
    let mut image: Vec<Face> = k.facets().iter().map(|f| p.apply_face(*f)).collect();
    image.sort();
    image == k.facets()
}

/// Colors are permuted as whole classes (`κ(x) = κ(y) ⇔ κ(p x) = κ(p y)`); `fixed` also requires `κ(p x) = κ(x)`.
pub fn preserves_coloring(p: &Permutation, coloring: &Coloring, verts: Face, fixed: bool) -> bool {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for v in verts.vertices() {
        let (Some(a), Some(b)) = (coloring.color(v), coloring.color(p.apply(v))) else { return false };
        if fixed && a != b {
            return false;
        }
        if *map.entry(a).or_insert(b) != b {
            return false;
        }
    }
    let mut targets: Vec<usize> = map.values().copied().collect();
    targets.sort_unstable();
    targets.dedup();
    targets.len() == map.len()
}

type Cells = Vec<Vec<usize>>;

struct Searcher {
    n: usize,
    facets: Vec<u64>,
    incidence: Vec<Vec<usize>>,
    generators: Vec<Vec<usize>>,
}

impl Searcher {
    fn new(k: &SimplicialComplex) -> Self {
        let n = k.num_vertices();
        let facets: Vec<u64> = k.facets().iter().map(|f| f.bits()).collect();
        let mut incidence = vec![Vec::new(); n];
        for (i, &f) in facets.iter().enumerate() {
            for v in Face::from_bits(f).vertices() {
                incidence[v].push(i);
            }
        }
        Searcher { n, facets, incidence, generators: Vec::new() }
    }

    fn refine(&self, mut cells: Cells) -> Cells {
        let mut cell_of = vec![0usize; self.n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            let mut split = false;
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<Vec<usize>>, usize)> = c.iter().map(|&v| (self.signature(v, &cell_of), v)).collect();
                keyed.sort();
                let mut group = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[0].0 != w[1].0 {
                        next.push(std::mem::take(&mut group));
                        split = true;
                    }
                    group.push(w[1].1);
                }
                next.push(group);
            }
            cells = next;
            if !split {
                return cells;
            }
        }
    }

    fn signature(&self, v: usize, cell_of: &[usize]) -> Vec<Vec<usize>> {
        let mut sig: Vec<Vec<usize>> = self.incidence[v]
            .iter()
            .map(|&fi| {
                let mut s: Vec<usize> =
                    Face::from_bits(self.facets[fi]).without(v).vertices().map(|w| cell_of[w]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    fn target_cell(cells: &Cells) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in cells.iter().enumerate() {
            if c.len() > 1 && best.is_none_or(|b| c.len() < cells[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    fn individualize(&self, cells: &Cells, ci: usize, v: usize) -> Cells {
        let mut out = Vec::with_capacity(cells.len() + 1);
        for (i, c) in cells.iter().enumerate() {
            if i == ci {
                out.push(vec![v]);
                out.push(c.iter().copied().filter(|&w| w != v).collect());
            } else {
                out.push(c.clone());
            }
        }
        self.refine(out)
    }

    /// Labeling (vertex -> position) and relabeled sorted facet list.
    fn leaf(&self, cells: &Cells) -> (Vec<usize>, Vec<Face>) {
        let mut label = vec![0; self.n];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let mut form: Vec<Face> = self.facets.iter().map(|&f| Face::from_bits(f).map(|v| label[v])).collect();
        form.sort();
        (label, form)
    }

    /// Vertices of `cell` to try: one per orbit of the generators fixing `prefix` pointwise.
    fn representatives(&self, cell: &[usize], prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for g in &self.generators {
            if prefix.iter().all(|&b| g[b] == b) {
                for (x, &gx) in g.iter().enumerate().take(self.n) {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for &v in cell {
            let r = find(&mut parent, v);
            if !seen.contains(&r) {
                seen.push(r);
                out.push(v);
            }
        }
        out
    }

    /// Some leaf below `cells` whose form equals `target`.
    fn find_equivalent(&self, cells: &Cells, prefix: &mut Vec<usize>, target: &[Face]) -> Option<Vec<usize>> {
        let Some(ci) = Self::target_cell(cells) else {
            let (label, form) = self.leaf(cells);
            return (form == target).then_some(label);
        };
        for v in self.representatives(&cells[ci], prefix) {
            let child = self.individualize(cells, ci, v);
            prefix.push(v);
            let found = self.find_equivalent(&child, prefix, target);
            prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Exact automorphism group; returns the order as a product of orbit lengths.
    fn automorphisms(&mut self, root: &Cells) -> BigUint {
        let mut path = vec![root.clone()];
        let mut chosen = Vec::new();
        while let Some(ci) = Self::target_cell(path.last().expect("nonempty path")) {
            let cells = path.last().expect("nonempty path");
            let v = cells[ci][0];
            let child = self.individualize(cells, ci, v);
            chosen.push((ci, v));
            path.push(child);
        }
        let (first_label, first_form) = self.leaf(path.last().expect("nonempty path"));
        let mut order = BigUint::one();
        for level in (0..chosen.len()).rev() {
            let (ci, b) = chosen[level];
            let prefix: Vec<usize> = chosen[..level].iter().map(|&(_, v)| v).collect();
            let cell = path[level][ci].clone();
            for &w in &cell {
                if w == b || self.in_orbit(b, w, &prefix) {
                    continue;
                }
                let child = self.individualize(&path[level], ci, w);
                let mut pre = prefix.clone();
                pre.push(w);
                if let Some(label) = self.find_equivalent(&child, &mut pre, &first_form) {
                    // g maps the first leaf onto this one: g = label^{-1} ∘ first_label.
                    let mut inv = vec![0; self.n];
                    for (x, &l) in label.iter().enumerate() {
                        inv[l] = x;
                    }
                    let g: Vec<usize> = (0..self.n).map(|x| inv[first_label[x]]).collect();
                    self.generators.push(g);
                }
            }
            let orbit = cell.iter().filter(|&&w| w == b || self.in_orbit(b, w, &prefix)).count();
            order *= BigUint::from(orbit);
        }
        order
    }

    fn in_orbit(&self, a: usize, b: usize, prefix: &[usize]) -> bool {
        let reps = self.representatives(&[a, b], prefix);
        reps.len() == 1
    }

    fn best_leaf(&self, cells: &Cells, prefix: &mut Vec<usize>, best: &mut Option<(Vec<Face>, Vec<usize>)>) {
        let Some(ci) = Self::target_cell(cells) else {
            let (label, form) = self.leaf(cells);
            if best.as_ref().is_none_or(|(b, _)| form < *b) {
                *best = Some((form, label));
            }
            return;
        };
        for v in self.representatives(&cells[ci], prefix) {
            let child = self.individualize(cells, ci, v);
            prefix.push(v);
            self.best_leaf(&child, prefix, best);
            prefix.pop();
        }
    }
}

fn initial_cells(n: usize, colors: Option<Vec<usize>>) -> Cells {
    match colors {
        None => vec![(0..n).collect()],
        Some(col) => {
            let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (v, c) in col.into_iter().enumerate() {
                by.entry(c).or_default().push(v);
            }
            by.into_values().collect()
        }
    }
}

/// Result of the exact search on a compacted complex.
struct Analysis {
    verts: Vec<VertexId>,
    generators: Vec<Vec<usize>>,
    order: BigUint,
    form: Vec<Face>,
    label: Vec<usize>,
}

fn analyse(k: &SimplicialComplex, coloring: Option<&Coloring>) -> Result<Analysis> {
    if k.is_void() {
        return Err(Error::EmptyComplex);
    }
    let (compact, verts) = k.compacted();
    let colors = match coloring {
        Some(c) => Some(
            verts
                .iter()
                .map(|&v| c.color(v).ok_or_else(|| Error::ImproperColoring(format!("vertex {v} has no color"))))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let mut s = Searcher::new(&compact);
    let root = s.refine(initial_cells(s.n, colors));
    let order = s.automorphisms(&root);
    let mut best = None;
    s.best_leaf(&root, &mut Vec::new(), &mut best);
    let (form, label) = best.unwrap_or_else(|| (compact.facets().to_vec(), Vec::new()));
    Ok(Analysis { verts, generators: s.generators, order, form, label })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Relabeled facets on `0..n`, lexicographically sorted.
    pub facets: Vec<Face>,
    /// `(old id, canonical id)` for every vertex, by old id.
    pub relabeling: Vec<(VertexId, VertexId)>,
}

impl CanonicalForm {
    pub fn key(&self) -> Vec<u64> {
        self.facets.iter().map(|f| f.bits()).collect()
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.clone()).expect("canonical form is nonempty")
    }
}

/// Relabeling-invariant normal form.
pub fn canonical_form(k: &SimplicialComplex) -> Result<CanonicalForm> {
    canonical_form_with(k, None)
}

/// Canonical form of a colored complex; only color-preserving relabelings are identified.
pub fn canonical_form_with(k: &SimplicialComplex, coloring: Option<&Coloring>) -> Result<CanonicalForm> {
    if k.is_empty_complex() {
        return Ok(CanonicalForm { facets: vec![Face::EMPTY], relabeling: Vec::new() });
    }
    let a = analyse(k, coloring)?;
    let relabeling = a.verts.iter().enumerate().map(|(i, &v)| (v, a.label[i])).collect();
    Ok(CanonicalForm { facets: a.form, relabeling })
}

/// A facet-preserving bijection `K1 -> K2` as `(vertex of K1, vertex of K2)` pairs.
pub fn are_isomorphic(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Result<Option<Vec<(VertexId, VertexId)>>> {
    if k1.num_vertices() != k2.num_vertices() || k1.facets().len() != k2.facets().len() {
        return Ok(None);
    }
    let c1 = canonical_form(k1)?;
    let c2 = canonical_form(k2)?;
    if c1.facets != c2.facets {
        return Ok(None);
    }
    let mut back = vec![0; MAX_VERTICES];
    for &(v, c) in &c2.relabeling {
        back[c] = v;
    }
    Ok(Some(c1.relabeling.iter().map(|&(v, c)| (v, back[c])).collect()))
}

#[derive(Clone, Debug)]
pub struct GroupDescription {
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    /// Vertex orbits, each sorted, ordered by least element.
    pub orbits: Vec<Vec<VertexId>>,
}

impl GroupDescription {
    pub fn to_json(&self, k: &SimplicialComplex) -> serde_json::Value {
        serde_json::json!({
            "order": self.order.to_string().parse::<u64>().map(serde_json::Value::from)
                .unwrap_or_else(|_| serde_json::Value::from(self.order.to_string())),
            "generators": self.generators.iter().map(|g| g.render(k)).collect::<Vec<_>>(),
            "orbits": self.orbits.iter()
                .map(|o| o.iter().map(|&v| k.vertex_name(v)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Full automorphism group (colors may be permuted).
pub fn automorphism_group(k: &SimplicialComplex) -> Result<GroupDescription> {
    automorphism_group_with(k, None)
}

/// With a coloring, the subgroup fixing every color class.
pub fn automorphism_group_with(k: &SimplicialComplex, coloring: Option<&Coloring>) -> Result<GroupDescription> {
    let a = analyse(k, coloring)?;
    let n = k.vertex_set().max_vertex().map_or(0, |m| m + 1);
    let generators: Vec<Permutation> = a
        .generators
        .iter()
        .map(|g| {
            let mut images: Vec<VertexId> = (0..n).collect();
            for (i, &v) in a.verts.iter().enumerate() {
                images[v] = a.verts[g[i]];
            }
            Permutation(images)
        })
        .collect();
    let orbits = orbits_of(&generators, &a.verts);
    Ok(GroupDescription { generators, order: a.order, orbits })
}

/// Orbits of `points` under the group generated by `generators`.
pub fn orbits_of(generators: &[Permutation], points: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut orbit_of: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<VertexId>> = Vec::new();
    for &p in points {
        if orbit_of.contains_key(&p) {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![p];
        orbit_of.insert(p, id);
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in generators {
                let y = g.apply(x);
                if let std::collections::btree_map::Entry::Vacant(e) = orbit_of.entry(y) {
                    e.insert(id);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort();
    orbits
}

/// Order of the group generated by `generators`, by closure (small groups only).
pub fn group_order_by_closure(generators: &[Permutation], n: usize, limit: usize) -> Option<usize> {
    let id = Permutation::identity(n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn octahedron_group() {
        let k = construct::cross_polytope(3).unwrap().complex;
        let g = automorphism_group(&k).unwrap();
        assert_eq!(g.order, BigUint::from(48u32));
        assert!(g.generators.iter().all(|p| is_automorphism(&k, p)));
        assert_eq!(group_order_by_closure(&g.generators, 6, 1000), Some(48));
        assert_eq!(g.orbits.len(), 1);
    }

    #[test]
    fn relabeled_octahedron_same_form() {
        let k = construct::cross_polytope(3).unwrap().complex;
        let r = k.relabel(|v| (v * 5 + 3) % 6 + 10).unwrap();
        assert_eq!(canonical_form(&k).unwrap().facets, canonical_form(&r).unwrap().facets);
        let iso = are_isomorphic(&k, &r).unwrap().unwrap();
        let map: BTreeMap<_, _> = iso.into_iter().collect();
        let image = k.relabel(|v| map[&v]).unwrap();
        assert_eq!(image, r);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let k = SimplicialComplex::from_vertex_lists(&[[0, 1, 2]])
            .unwrap()
            .with_labels(crate::complex::Labels::new(vec![Some("u1".into()), Some("u12".into()), Some("v1".into())]));
        let p = Permutation::parse("(u1u12v1)", &k).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.render(&k), "(u1u12v1)");
        let q = Permutation::parse("(0, 2)", &k).unwrap();
        assert_eq!(q.images(), &[2, 1, 0]);
        assert!(Permutation::parse("(u1x)", &k).is_err());
    }

    #[test]
    fn compose_convention() {
        let p = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(p.compose(&q).apply(1), 2);
        assert_eq!(p.compose(&q).apply(0), 1);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn color_preserving_subgroup() {
        let doc = construct::cross_polytope(3).unwrap();
        let g = automorphism_group_with(&doc.complex, doc.coloring.as_ref()).unwrap();
        assert_eq!(g.order, BigUint::from(8u32));
    }
}
