//! Ear decompositions and shellings: validators and exhaustive, budgeted searches.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{homology, Coefficients};
use crate::verify::{self, PredicateReport};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Outcome of a budgeted search. `NotFound` is only reported after the whole
/// search space was exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found { witness: T, nodes: u64 },
    NotFound { nodes: u64 },
    Undecided { nodes: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn witness(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. } | SearchOutcome::NotFound { nodes } | SearchOutcome::Undecided { nodes } => {
                *nodes
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found { .. } => "found",
            SearchOutcome::NotFound { .. } => "none",
            SearchOutcome::Undecided { .. } => "undecided",
        }
    }
}

/// Ordered pieces, each a list of facet indices into the decomposed complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EarDecomposition {
    pub pieces: Vec<Vec<usize>>,
}

impl EarDecomposition {
    pub fn complexes(&self, k: &SimplicialComplex) -> Result<Vec<SimplicialComplex>> {
        self.pieces.iter().map(|p| k.subcomplex(p)).collect()
    }
}

/// An ordering of all facets, as facet indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shelling {
    pub order: Vec<usize>,
}

/// Facet indices of `piece` in `k`; errors if some facet of `piece` is not a facet of `k`.
pub fn facet_indices(k: &SimplicialComplex, piece: &SimplicialComplex) -> Result<Vec<usize>> {
    piece
        .facets()
        .iter()
        .map(|f| k.facet_index(*f).ok_or_else(|| Error::Input(format!("{} is not a facet of the complex", k.face_name(*f)))))
        .collect()
}

/// Check the three conditions: the first piece is a homology sphere, later
/// pieces are homology balls meeting the union of their predecessors exactly
/// in their boundary, and the pieces cover the complex.
pub fn validate_ear_decomposition(k: &SimplicialComplex, pieces: &[SimplicialComplex]) -> Result<PredicateReport> {
    const NAME: &str = "ear-decomposition";
    let indices: Vec<Vec<usize>> = pieces.iter().map(|p| facet_indices(k, p)).collect::<Result<_>>()?;
    let top = k.dim();
    let fail = |i: usize, face: Face, reason: String| {
        Ok(PredicateReport::fail(NAME, k, face, format!("piece {}: {reason}", i + 1), json!({ "piece": i + 1 })))
    };
    if pieces.is_empty() {
        return Ok(PredicateReport::fail(NAME, k, Face::EMPTY, "no pieces".into(), Value::Null));
    }
    let mut union: Option<SimplicialComplex> = None;
    for (i, piece) in pieces.iter().enumerate() {
        if piece.dim() != top || !piece.is_pure() {
            return fail(i, Face::EMPTY, format!("not pure of dimension {top}"));
        }
        match &union {
            None => {
                let r = verify::is_homology_sphere(piece)?;
                if !r.passed() {
                    let w = r.witness.expect("failing report has a witness");
                    return fail(i, Face::new(&w.face)?, format!("not a homology sphere: {}", w.reason));
                }
            }
            Some(u) => {
                let r = verify::is_homology_ball(piece)?;
                if !r.passed() {
                    let w = r.witness.expect("failing report has a witness");
                    return fail(i, Face::new(&w.face)?, format!("not a homology ball: {}", w.reason));
                }
                let boundary = piece.boundary_complex()?;
                let meet = piece.intersection(u);
                if meet.faces().sorted() != boundary.faces().sorted() {
                    let stray = meet
                        .faces()
                        .sorted()
                        .into_iter()
                        .find(|f| !boundary.faces().contains(*f))
                        .or_else(|| boundary.faces().sorted().into_iter().find(|f| !meet.faces().contains(*f)))
                        .unwrap_or(Face::EMPTY);
                    return fail(
                        i,
                        stray,
                        format!("meets the earlier pieces in more or less than its boundary (at {})", k.face_name(stray)),
                    );
                }
            }
        }
        union = Some(match union {
            None => piece.clone(),
            Some(u) => u.union(piece),
        });
    }
    let covered: HashSet<usize> = indices.iter().flatten().copied().collect();
    if let Some(missing) = (0..k.facets().len()).find(|i| !covered.contains(i)) {
        let f = k.facets()[missing];
        return Ok(PredicateReport::fail(NAME, k, f, format!("facet {} is in no piece", k.face_name(f)), Value::Null));
    }
    Ok(PredicateReport::pass(NAME, json!({ "pieces": indices })))
}

/// Each facet after the first meets the union of its predecessors in a
/// nonempty pure complex of codimension one.
pub fn validate_shelling(k: &SimplicialComplex, order: &[usize]) -> Result<PredicateReport> {
    const NAME: &str = "shelling";
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let n = k.facets().len();
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::Input(format!("facet index {i} is out of range or repeated")));
        }
        seen[i] = true;
    }
    if order.len() != n {
        let f = k.facets()[(0..n).find(|&i| !seen[i]).expect("some facet unused")];
        return Ok(PredicateReport::fail(NAME, k, f, "order does not list every facet".into(), Value::Null));
    }
    let mut counter = FaceCounter::default();
    for (j, &i) in order.iter().enumerate() {
        let f = k.facets()[i];
        if j > 0 && !counter.meets_in_codim_one(f) {
            return Ok(PredicateReport::fail(
                NAME,
                k,
                f,
                format!("facet {} (position {}) meets its predecessors badly", k.face_name(f), j + 1),
                Value::Null,
            ));
        }
        counter.add(f);
    }
    Ok(PredicateReport::pass(NAME, json!({ "order": order })))
}

/// Multiset of faces of a union of facets.
#[derive(Default, Clone)]
struct FaceCounter {
    counts: HashMap<u64, u32>,
}

impl FaceCounter {
    fn add(&mut self, f: Face) {
        for s in f.subfaces() {
            *self.counts.entry(s.bits()).or_insert(0) += 1;
        }
    }

    fn remove(&mut self, f: Face) {
        for s in f.subfaces() {
            let c = self.counts.get_mut(&s.bits()).expect("face was added");
            *c -= 1;
            if *c == 0 {
                self.counts.remove(&s.bits());
            }
        }
    }

    fn contains(&self, f: Face) -> bool {
        self.counts.contains_key(&f.bits())
    }

    /// `f ∩ X` is generated by ridges of `f` and at least one ridge lies in `X`.
    fn meets_in_codim_one(&self, f: Face) -> bool {
        let ridge_apex: u64 = f.vertices().filter(|&v| self.contains(f.without(v))).fold(0, |m, v| m | (1 << v));
        if ridge_apex == 0 {
            return false;
        }
        f.subfaces().all(|g| g == f || !self.contains(g) || f.difference(g).bits() & ridge_apex != 0)
    }

    fn ridges_in(&self, f: Face) -> usize {
        f.vertices().filter(|&v| self.contains(f.without(v))).count()
    }
}

/// Search for a shelling with a node budget.
pub fn find_shelling(k: &SimplicialComplex, budget: u64) -> Result<SearchOutcome<Shelling>> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = k.facets().to_vec();
    let n = facets.len();
    let mut state = ShellState {
        facets: &facets,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        counter: FaceCounter::default(),
        failed: HashSet::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    for start in 0..n {
        state.push(start);
        let found = state.extend();
        if found {
            let order = state.order.clone();
            return Ok(SearchOutcome::Found { witness: Shelling { order }, nodes: state.nodes });
        }
        state.pop();
        if state.exhausted {
            return Ok(SearchOutcome::Undecided { nodes: state.nodes });
        }
    }
    Ok(SearchOutcome::NotFound { nodes: state.nodes })
}

struct ShellState<'a> {
    facets: &'a [Face],
    used: Vec<bool>,
    order: Vec<usize>,
    counter: FaceCounter,
    failed: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl ShellState<'_> {
    fn key(&self) -> Vec<u64> {
        let mut key = vec![0u64; self.used.len().div_ceil(64)];
        for (i, &u) in self.used.iter().enumerate() {
            if u {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        key
    }

    fn push(&mut self, i: usize) {
        self.used[i] = true;
        self.order.push(i);
        self.counter.add(self.facets[i]);
    }

    fn pop(&mut self) {
        let i = self.order.pop().expect("nonempty order");
        self.used[i] = false;
        self.counter.remove(self.facets[i]);
    }

    fn extend(&mut self) -> bool {
        if self.order.len() == self.facets.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        let key = self.key();
        if self.failed.contains(&key) {
            return false;
        }
        let mut candidates: Vec<(usize, usize)> = (0..self.facets.len())
            .filter(|&i| !self.used[i] && self.counter.meets_in_codim_one(self.facets[i]))
            .map(|i| (self.counter.ridges_in(self.facets[i]), i))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, i) in candidates {
            self.push(i);
            if self.extend() {
                return true;
            }
            self.pop();
            if self.exhausted {
                return false;
            }
        }
        self.failed.insert(key);
        false
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EarSearchOptions {
    pub budget: u64,
    /// Reject at once when the homology rules out any decomposition.
    pub homological_pruning: bool,
}

impl Default for EarSearchOptions {
    fn default() -> Self {
        EarSearchOptions { budget: DEFAULT_BUDGET, homological_pruning: true }
    }
}

/// Exhaustive search for an ear decomposition: candidate initial spheres are
/// enumerated smallest first, then ears are added one at a time.
pub fn find_ear_decomposition(k: &SimplicialComplex, options: EarSearchOptions) -> Result<SearchOutcome<EarDecomposition>> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let top = k.dim();
    if top < 0 {
        return Err(Error::Input("cannot decompose a complex without vertices".into()));
    }
    let mut expected_pieces = None;
    if options.homological_pruning {
        // Gluing balls along boundary spheres adds one free class in the top degree each time.
        let h = homology(k, Coefficients::Integer)?;
        let lower_vanish = (0..top as usize).all(|i| h.betti.get(i).copied().unwrap_or(0) == 0);
        let top_betti = h.betti.get(top as usize).copied().unwrap_or(0);
        if h.has_torsion() || !lower_vanish || top_betti == 0 {
            return Ok(SearchOutcome::NotFound { nodes: 0 });
        }
        expected_pieces = Some(top_betti as usize);
    }
    let facets = k.facets().to_vec();
    let mut ridge_map: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.ridges() {
            ridge_map.entry(r).or_default().push(i);
        }
    }
    let mut search = EarSearch {
        k,
        facets: &facets,
        ridge_map: &ridge_map,
        nodes: 0,
        budget: options.budget,
        exhausted: false,
        failed: HashSet::new(),
        expected_pieces,
    };
    let mut spheres = Vec::new();
    let all_free = vec![true; facets.len()];
    for seed in 0..facets.len() {
        search.closed_sets(seed, &all_free, &HashSet::new(), &mut spheres);
        if search.exhausted {
            return Ok(SearchOutcome::Undecided { nodes: search.nodes });
        }
    }
    spheres.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for s in spheres {
        let cx = k.subcomplex(&s)?;
        if cx.dim() != top || !verify::is_homology_sphere(&cx)?.passed() {
            continue;
        }
        let mut pieces = vec![s.clone()];
        let mut in_x = vec![false; facets.len()];
        for &i in &s {
            in_x[i] = true;
        }
        if search.ears(&mut in_x, &mut pieces)? {
            return Ok(SearchOutcome::Found { witness: EarDecomposition { pieces }, nodes: search.nodes });
        }
        if search.exhausted {
            return Ok(SearchOutcome::Undecided { nodes: search.nodes });
        }
    }
    Ok(SearchOutcome::NotFound { nodes: search.nodes })
}

struct EarSearch<'a> {
    k: &'a SimplicialComplex,
    facets: &'a [Face],
    ridge_map: &'a HashMap<Face, Vec<usize>>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    failed: HashSet<Vec<bool>>,
    expected_pieces: Option<usize>,
}

impl EarSearch<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        self.exhausted
    }

    /// All facet sets with least index `seed`, drawn from `free`, in which every
    /// ridge outside `fixed` lies in exactly two chosen facets and every ridge in
    /// `fixed` (the current union) lies in at most one.
    fn closed_sets(&mut self, seed: usize, free: &[bool], fixed: &HashSet<Face>, out: &mut Vec<Vec<usize>>) {
        if !free[seed] {
            return;
        }
        let mut chosen = vec![seed];
        let mut count: HashMap<Face, u8> = HashMap::new();
        for r in self.facets[seed].ridges() {
            *count.entry(r).or_insert(0) += 1;
        }
        self.grow(seed, free, fixed, &mut chosen, &mut count, out);
    }

    fn grow(
        &mut self,
        seed: usize,
        free: &[bool],
        fixed: &HashSet<Face>,
        chosen: &mut Vec<usize>,
        count: &mut HashMap<Face, u8>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if self.tick() {
            return;
        }
        // Open ridge with the fewest possible closers.
        let mut best: Option<(usize, Face, Vec<usize>)> = None;
        for (&r, &c) in count.iter() {
            if c != 1 || fixed.contains(&r) {
                continue;
            }
            let options: Vec<usize> = self.ridge_map[&r]
                .iter()
                .copied()
                .filter(|&i| i > seed && free[i] && !chosen.contains(&i))
                .filter(|&i| self.facets[i].ridges().all(|q| count.get(&q).copied().unwrap_or(0) < if fixed.contains(&q) { 1 } else { 2 }))
                .collect();
            if best.as_ref().is_none_or(|(n, br, _)| options.len() < *n || (options.len() == *n && r < *br)) {
                best = Some((options.len(), r, options));
            }
        }
        let Some((_, _, options)) = best else {
            let mut set = chosen.clone();
            set.sort_unstable();
            out.push(set);
            return;
        };
        for i in options {
            chosen.push(i);
            for r in self.facets[i].ridges() {
                *count.entry(r).or_insert(0) += 1;
            }
            self.grow(seed, free, fixed, chosen, count, out);
            for r in self.facets[i].ridges() {
                let c = count.get_mut(&r).expect("ridge counted");
                *c -= 1;
                if *c == 0 {
                    count.remove(&r);
                }
            }
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }

    fn ears(&mut self, in_x: &mut Vec<bool>, pieces: &mut Vec<Vec<usize>>) -> Result<bool> {
        if in_x.iter().all(|&b| b) {
            return Ok(self.expected_pieces.is_none_or(|m| m == pieces.len()));
        }
        if self.expected_pieces.is_some_and(|m| pieces.len() >= m) {
            return Ok(false);
        }
        if self.tick() || self.failed.contains(in_x) {
            return Ok(false);
        }
        let union = self.k.subcomplex(&(0..in_x.len()).filter(|&i| in_x[i]).collect::<Vec<_>>())?;
        let union_ridges: HashSet<Face> = {
            let top = self.k.dim() as usize;
            union.faces().of_size(top).iter().copied().collect()
        };
        let free: Vec<bool> = in_x.iter().map(|&b| !b).collect();
        let mut ears = Vec::new();
        for seed in 0..self.facets.len() {
            // Seeds must touch the union along a ridge.
            if !free[seed] || !self.facets[seed].ridges().any(|r| union_ridges.contains(&r)) {
                continue;
            }
            self.closed_sets(seed, &free, &union_ridges, &mut ears);
            if self.exhausted {
                return Ok(false);
            }
        }
        ears.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        for ear in ears {
            let b = self.k.subcomplex(&ear)?;
            if !verify::is_homology_ball(&b)?.passed() {
                continue;
            }
            let boundary = b.boundary_complex()?;
            let meet = b.intersection(&union);
            if meet.faces().sorted() != boundary.faces().sorted() {
                continue;
            }
            for &i in &ear {
                in_x[i] = true;
            }
            pieces.push(ear.clone());
            if self.ears(in_x, pieces)? {
                return Ok(true);
            }
            pieces.pop();
            for &i in &ear {
                in_x[i] = false;
            }
            if self.exhausted {
                return Ok(false);
            }
        }
        self.failed.insert(in_x.clone());
        Ok(false)
    }
}

/// JSON form of a search outcome with the witness rendered by `render`.
pub fn outcome_json<T>(outcome: &SearchOutcome<T>, render: impl Fn(&T) -> Value) -> Value {
    let mut v = json!({ "outcome": outcome.label(), "nodes": outcome.nodes() });
    if let Some(w) = outcome.witness() {
        v["witness"] = render(w);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn octahedron_shells() {
        let k = construct::cross_polytope(3).unwrap().complex;
        let out = find_shelling(&k, DEFAULT_BUDGET).unwrap();
        let w = out.witness().expect("octahedron is shellable");
        assert!(validate_shelling(&k, &w.order).unwrap().passed());
    }

    #[test]
    fn four_cycle_is_its_own_decomposition() {
        let k = construct::cycle(4).unwrap().complex;
        assert!(validate_ear_decomposition(&k, std::slice::from_ref(&k)).unwrap().passed());
        let out = find_ear_decomposition(&k, EarSearchOptions::default()).unwrap();
        assert_eq!(out.witness().unwrap().pieces.len(), 1);
    }

    #[test]
    fn theta_graph_has_two_pieces() {
        // Two triangles sharing an edge, as a graph: a cycle plus one path.
        let k = SimplicialComplex::from_vertex_lists(&[[0, 1], [1, 2], [2, 0], [1, 3], [3, 2]]).unwrap();
        for pruning in [true, false] {
            let out = find_ear_decomposition(&k, EarSearchOptions { budget: 1000, homological_pruning: pruning }).unwrap();
            let w = out.witness().expect("theta graph decomposes");
            assert_eq!(w.pieces.len(), 2);
            assert!(validate_ear_decomposition(&k, &w.complexes(&k).unwrap()).unwrap().passed());
        }
    }

    #[test]
    fn bad_order_fails() {
        let k = construct::cross_polytope(3).unwrap().complex;
        // Two opposite triangles meet in nothing.
        let a = k.facet_index(Face::new(&[0, 2, 4]).unwrap()).unwrap();
        let b = k.facet_index(Face::new(&[1, 3, 5]).unwrap()).unwrap();
        let mut order = vec![a, b];
        order.extend((0..8).filter(|i| *i != a && *i != b));
        assert!(!validate_shelling(&k, &order).unwrap().passed());
    }

    #[test]
    fn tiny_budget_is_undecided() {
        let k = construct::cross_polytope(4).unwrap().complex;
        assert!(matches!(find_shelling(&k, 2).unwrap(), SearchOutcome::Undecided { .. }));
    }
}
