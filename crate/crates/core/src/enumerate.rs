//! Isomorph-free generation of balanced spheres and symmetric backtracking search.
//!
//! Vertices of a specification are laid out color by color: class `c` holds
//! the ids `offset(c)..offset(c)+sizes[c]`, labeled `u1, u2, …` for the first
//! color, `v1, …` for the second, then `w`, `z`, `a`, `b`, ….

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{Coloring, Face, FaceVector, Labels, SimplicialComplex, VertexId, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::homology::{homology, Coefficients, HomologyProfile};
use crate::io::ComplexDocument;
use crate::symmetry::{self, Permutation};
use crate::verify;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
const CLASS_LETTERS: &str = "uvwzabcdefghijklmnopqrst";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    #[default]
    Sphere,
    Manifold,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Auto,
    Generic,
    StarAssembly,
}

/// Reduced Betti numbers from degree 0 and torsion coefficients by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetHomology {
    pub betti: Vec<u64>,
    #[serde(default)]
    pub torsion: BTreeMap<usize, Vec<u64>>,
}

impl TargetHomology {
    pub fn new(betti: Vec<u64>, torsion: impl IntoIterator<Item = (usize, Vec<u64>)>) -> Self {
        TargetHomology { betti, torsion: torsion.into_iter().collect() }
    }

    pub fn sphere(dim: usize) -> Self {
        let mut betti = vec![0; dim + 1];
        betti[dim] = 1;
        TargetHomology { betti, torsion: BTreeMap::new() }
    }

    pub fn matches(&self, h: &HomologyProfile) -> bool {
        h.betti_minus_one == 0 && h.matches(&self.betti, &self.torsion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub dim: usize,
    pub sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighborly: Option<usize>,
    /// Generators in cycle notation over the layout labels.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symmetry: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetHomology>,
    #[serde(default)]
    pub topology: Topology,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Stop at the first verified complex.
    #[serde(default)]
    pub first_only: bool,
    #[serde(default)]
    pub strategy: Strategy,
}

impl EnumerationSpec {
    /// Balanced homology spheres of dimension `dim` with the given class sizes.
    pub fn spheres(dim: usize, sizes: Vec<usize>) -> Self {
        EnumerationSpec {
            dim,
            sizes,
            max_edges: None,
            neighborly: None,
            symmetry: Vec::new(),
            target: None,
            topology: Topology::Sphere,
            budget: None,
            first_only: false,
            strategy: Strategy::Auto,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: EnumerationSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("spec serializes")
    }

    pub fn num_colors(&self) -> usize {
        self.sizes.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    pub fn target(&self) -> TargetHomology {
        self.target.clone().unwrap_or_else(|| TargetHomology::sphere(self.dim))
    }

    /// Stable digest of the specification, used as a cache key.
    pub fn hash(&self) -> String {
        let mut spec = self.clone();
        spec.budget = None;
        hex::encode(Sha256::digest(spec.to_json().to_string().as_bytes()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Input("dimension must be at least 1".into()));
        }
        if self.sizes.len() != self.dim + 1 {
            return Err(Error::Input(format!(
                "a balanced {}-sphere needs {} color classes, got {}",
                self.dim,
                self.dim + 1,
                self.sizes.len()
            )));
        }
        if let Some(&s) = self.sizes.iter().find(|&&s| s < 2) {
            return Err(Error::Input(format!("color class of size {s}: every class needs at least 2 vertices")));
        }
        if self.num_vertices() > MAX_VERTICES {
            return Err(Error::Input(format!("more than {MAX_VERTICES} vertices")));
        }
        if self.sizes.len() > CLASS_LETTERS.len() || self.sizes.iter().any(|&s| s > 9) {
            return Err(Error::Unsupported("at most 9 vertices per color class".into()));
        }
        if let Some(k) = self.neighborly {
            if k > self.num_colors() {
                return Err(Error::Input(format!("{k}-neighborly exceeds the number of colors")));
            }
        }
        if let Some(t) = &self.target {
            if t.betti.len() > self.dim + 1 {
                return Err(Error::Input("target homology above the dimension".into()));
            }
            if self.topology == Topology::Sphere && *t != TargetHomology::sphere(self.dim) {
                return Err(Error::Input("a sphere target must have sphere homology".into()));
            }
        }
        Ok(())
    }

    pub fn offset(&self, color: usize) -> usize {
        self.sizes[..color].iter().sum()
    }

    pub fn class(&self, color: usize) -> Face {
        let o = self.offset(color);
        Face::from_bits(((1u64 << self.sizes[color]) - 1) << o)
    }

    pub fn labels(&self) -> Labels {
        let letters: Vec<char> = CLASS_LETTERS.chars().collect();
        let mut labels = Vec::new();
        for (c, &s) in self.sizes.iter().enumerate() {
            for i in 0..s {
                labels.push(Some(format!("{}{}", letters[c], i + 1)));
            }
        }
        Labels::new(labels)
    }

    pub fn coloring(&self) -> Coloring {
        let assignments = (0..self.num_colors()).flat_map(|c| self.class(c).vertices().map(move |v| (v, c)));
        Coloring::new(self.num_colors(), assignments).expect("layout colors are in range")
    }

    /// Discrete complex on the layout vertices, used to resolve labels.
    pub fn ambient(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets((0..self.num_vertices()).map(Face::singleton))
            .expect("layout is nonempty")
            .with_labels(self.labels())
    }

    pub fn generators(&self) -> Result<Vec<Permutation>> {
        let ambient = self.ambient();
        self.symmetry.iter().map(|g| Permutation::parse(g, &ambient)).collect()
    }
}

/// Partition of all rainbow sets (one vertex per class) into orbits of the
/// group generated by `generators`. Facets in an orbit are sorted and orbits
/// are ordered by their least facet.
pub fn orbit_facets(coloring: &Coloring, generators: &[Permutation]) -> Result<Vec<Vec<Face>>> {
    let classes = coloring.classes();
    let verts = classes.iter().fold(Face::EMPTY, |a, c| a.union(*c));
    for g in generators {
        if !symmetry::preserves_coloring(g, coloring, verts, false) {
            return Err(Error::Input(format!("generator {g:?} does not permute the color classes")));
        }
    }
    let mut rainbow = vec![Face::EMPTY];
    for class in &classes {
        rainbow = rainbow.iter().flat_map(|f| class.vertices().map(move |v| f.with(v))).collect();
    }
    rainbow.sort();
    let mut seen: HashSet<Face> = HashSet::new();
    let mut orbits = Vec::new();
    for f in rainbow {
        if seen.contains(&f) {
            continue;
        }
        let mut orbit = vec![f];
        seen.insert(f);
        let mut i = 0;
        while i < orbit.len() {
            for g in generators {
                let h = g.apply_face(orbit[i]);
                if seen.insert(h) {
                    orbit.push(h);
                }
            }
            i += 1;
        }
        orbit.sort();
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusOutcome {
    /// Every branch was searched.
    Complete,
    /// Stopped at the first verified complex.
    FirstFound,
    /// The node budget ran out; `explored` is the fraction of root branches finished.
    Undecided { explored: f64 },
}

impl CensusOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            CensusOutcome::Complete => "complete",
            CensusOutcome::FirstFound => "first-found",
            CensusOutcome::Undecided { .. } => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub document: ComplexDocument,
    pub f_vector: FaceVector,
    pub aut_order: BigUint,
    pub homology: HomologyProfile,
    /// Largest `k` for which the complex is `k`-neighborly.
    pub neighborliness: usize,
    pub canonical: Vec<u64>,
}

impl CensusEntry {
    pub fn edges(&self) -> u64 {
        self.f_vector.f_i(1)
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub spec: EnumerationSpec,
    pub entries: Vec<CensusEntry>,
    pub outcome: CensusOutcome,
    pub nodes: u64,
    pub strategy: String,
    /// Candidates that closed up during the search but failed re-verification.
    pub rejected: usize,
    pub notes: Vec<String>,
}

impl Census {
    pub fn is_complete(&self) -> bool {
        self.outcome == CensusOutcome::Complete
    }

    pub fn edge_spectrum(&self) -> BTreeSet<u64> {
        self.entries.iter().map(|e| e.edges()).collect()
    }

    pub fn entry_file_name(i: usize) -> String {
        format!("complex-{:03}.json", i + 1)
    }

    pub fn index_json(&self) -> Value {
        json!({
            "schema": 1,
            "spec": self.spec.to_json(),
            "spec_hash": self.spec.hash(),
            "outcome": self.outcome,
            "strategy": self.strategy,
            "nodes": self.nodes,
            "rejected_on_verification": self.rejected,
            "count": self.entries.len(),
            "entries": self.entries.iter().enumerate().map(|(i, e)| json!({
                "file": Self::entry_file_name(i),
                "f_vector": e.f_vector.f,
                "h_vector": e.f_vector.h,
                "aut_order": e.aut_order.to_string(),
                "homology": e.homology.to_json(),
                "neighborliness": e.neighborliness,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    /// Write the index and one complex file per entry into `dir`.
    pub fn write_dir(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (i, e) in self.entries.iter().enumerate() {
            e.document.save(&dir.join(Self::entry_file_name(i)))?;
        }
        std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(&self.index_json())? + "\n")?;
        Ok(())
    }

    /// Load a census written by [`Census::write_dir`], re-verifying every entry.
    pub fn read_dir(dir: &std::path::Path) -> Result<Census> {
        let index: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("index.json"))?)?;
        let spec: EnumerationSpec = serde_json::from_value(index["spec"].clone())?;
        let outcome = match index["outcome"].as_str() {
            Some("complete") => CensusOutcome::Complete,
            Some("first-found") => CensusOutcome::FirstFound,
            _ => return Err(Error::Input(format!("census in {} is not decided", dir.display()))),
        };
        let files = index["entries"].as_array().ok_or_else(|| Error::Input("census index lacks entries".into()))?;
        let mut entries = Vec::new();
        for f in files {
            let name = f["file"].as_str().ok_or_else(|| Error::Input("census entry without file".into()))?;
            let doc = ComplexDocument::load(&dir.join(name))?;
            let entry = verified_entry(&spec, doc.complex)?
                .ok_or_else(|| Error::Input(format!("cached census entry {name} fails verification")))?;
            entries.push(entry);
        }
        sort_entries(&mut entries);
        Ok(Census {
            spec,
            entries,
            outcome,
            nodes: index["nodes"].as_u64().unwrap_or(0),
            strategy: index["strategy"].as_str().unwrap_or("cached").to_string(),
            rejected: index["rejected_on_verification"].as_u64().unwrap_or(0) as usize,
            notes: index["notes"]
                .as_array()
                .map(|a| a.iter().filter_map(|s| s.as_str().map(str::to_owned)).collect())
                .unwrap_or_default(),
        })
    }
}

/// Statements about larger spheres that are out of reach for enumeration.
pub const UNVERIFIED_STATEMENTS: [&str; 2] = [
    "no balanced 2-neighborly homology 4-sphere on 15 vertices: not checked by enumeration",
    "no balanced 2-neighborly homology 5-sphere on 18 vertices: not checked by enumeration",
];

fn sort_entries(entries: &mut [CensusEntry]) {
    entries.sort_by(|a, b| a.edges().cmp(&b.edges()).then(a.canonical.cmp(&b.canonical)));
}

/// Full predicate stack for a candidate on the layout vertices; `None` if it fails.
fn verified_entry(spec: &EnumerationSpec, k: SimplicialComplex) -> Result<Option<CensusEntry>> {
    let coloring = spec.coloring();
    if k.vertex_set() != Face::from_bits((1u64 << spec.num_vertices()) - 1) || k.dim() != spec.dim as isize {
        return Ok(None);
    }
    if !verify::is_balanced_with(&k, &coloring).passed() {
        return Ok(None);
    }
    if spec.max_edges.is_some_and(|m| k.num_faces_of_dim(1) > m) {
        return Ok(None);
    }
    let neighborliness = (1..=spec.num_colors())
        .take_while(|&j| verify::is_k_neighborly(&k, &coloring, j).map(|r| r.passed()).unwrap_or(false))
        .last()
        .unwrap_or(0);
    if spec.neighborly.is_some_and(|j| neighborliness < j) {
        return Ok(None);
    }
    let h = homology(&k, Coefficients::Integer)?;
    if !spec.target().matches(&h) {
        return Ok(None);
    }
    let topo = match spec.topology {
        Topology::Sphere => verify::is_homology_sphere(&k)?,
        Topology::Manifold => verify::is_closed_homology_manifold(&k)?,
    };
    if !topo.passed() {
        return Ok(None);
    }
    if !spec.symmetry.is_empty() && !spec.generators()?.iter().all(|g| symmetry::is_automorphism(&k, g)) {
        return Ok(None);
    }
    let group = symmetry::automorphism_group(&k)?;
    let canonical = symmetry::canonical_form(&k)?.key();
    let k = k.with_labels(spec.labels());
    let document = ComplexDocument::new("census-entry", k.clone(), Some(coloring));
    Ok(Some(CensusEntry { f_vector: k.f_vector(), document, aut_order: group.order, homology: h, neighborliness, canonical }))
}

/// Dedup raw candidates by canonical form, verify, and sort.
fn assemble(
    spec: &EnumerationSpec,
    candidates: Vec<Vec<Face>>,
    outcome: CensusOutcome,
    nodes: u64,
    strategy: &str,
) -> Result<Census> {
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    let mut unique = Vec::new();
    for facets in candidates {
        let k = SimplicialComplex::from_facets(facets)?;
        let key = symmetry::canonical_form(&k)?.key();
        if seen.insert(key, ()).is_none() {
            unique.push(k);
        }
    }
    let verified: Vec<Option<CensusEntry>> =
        unique.into_par_iter().map(|k| verified_entry(spec, k)).collect::<Result<_>>()?;
    let rejected = verified.iter().filter(|e| e.is_none()).count();
    let mut entries: Vec<CensusEntry> = verified.into_iter().flatten().collect();
    if spec.first_only {
        entries.truncate(1);
    }
    sort_entries(&mut entries);
    for (i, e) in entries.iter_mut().enumerate() {
        e.document.name = format!("census-{}", i + 1);
    }
    let mut notes = Vec::new();
    if spec.topology == Topology::Sphere {
        notes.extend(UNVERIFIED_STATEMENTS.iter().map(|s| s.to_string()));
    }
    Ok(Census { spec: spec.clone(), entries, outcome, nodes, strategy: strategy.into(), rejected, notes })
}

/// Exhaustive, isomorph-free census of balanced homology spheres.
pub fn enumerate_balanced_spheres(spec: &EnumerationSpec) -> Result<Census> {
    spec.validate()?;
    if spec.topology != Topology::Sphere {
        return Err(Error::Input("enumeration produces spheres; use the symmetric search for manifolds".into()));
    }
    if !spec.symmetry.is_empty() {
        return Err(Error::Input("symmetry constraints need the symmetric search".into()));
    }
    let d = spec.num_colors();
    let widest = *spec.sizes.iter().max().expect("sizes are nonempty");
    if d * widest > 16 {
        return Err(Error::Unsupported(format!(
            "{d} colors with a class of {widest} vertices is outside the supported range (d·max size ≤ 16)"
        )));
    }
    let star = d >= 3 && spec.sizes[d - 1] == 3;
    match spec.strategy {
        Strategy::StarAssembly if !star => {
            Err(Error::Input("star assembly needs at least 3 colors and a last class of 3 vertices".into()))
        }
        Strategy::StarAssembly => star_assembly(spec),
        Strategy::Auto if star => star_assembly(spec),
        _ => generic(spec),
    }
}

/// Symmetric backtracking over facet orbits of the spec's group.
pub fn search_symmetric(spec: &EnumerationSpec) -> Result<Census> {
    spec.validate()?;
    let gens = spec.generators()?;
    let orbits = orbit_facets(&spec.coloring(), &gens)?;
    let seed = match spec.neighborly {
        Some(k) if k >= 2 => Face::new(&[spec.offset(0), spec.offset(1)])?,
        _ => Face::singleton(spec.offset(0)),
    };
    let engine = Engine::new(spec, orbits, false);
    run_engine(spec, engine, seed, "symmetric")
}

fn generic(spec: &EnumerationSpec) -> Result<Census> {
    let engine = Engine::new(spec, Vec::new(), true);
    let seed = Face::from_bits((0..spec.num_colors()).fold(0, |b, c| b | (1 << spec.offset(c))));
    run_engine(spec, engine, seed, "generic")
}

fn run_engine(spec: &EnumerationSpec, engine: Engine, seed: Face, strategy: &str) -> Result<Census> {
    // Root branches: orbits of facets through the seed face, each excluding
    // the orbits of earlier branches.
    let mut roots: Vec<usize> = Vec::new();
    for (i, o) in engine.orbits.iter().enumerate() {
        if o.iter().any(|f| seed.is_subset_of(*f)) {
            roots.push(i);
        }
    }
    if roots.is_empty() {
        roots = engine.seed_orbits(seed);
    }
    let budget = spec.budget();
    let nodes = AtomicU64::new(0);
    let stop_at = AtomicUsize::new(usize::MAX);
    let out_of_budget = AtomicBool::new(false);
    let results: Vec<(usize, Vec<Vec<Face>>, bool)> = roots
        .par_iter()
        .enumerate()
        .map(|(bi, &root)| {
            let mut e = engine.clone();
            for &earlier in &roots[..bi] {
                e.forbidden[earlier] = true;
            }
            let mut ctx = Ctx {
                nodes: &nodes,
                budget,
                branch: bi,
                stop_at: &stop_at,
                first_only: spec.first_only,
                out_of_budget: &out_of_budget,
                spec,
                leaves: Vec::new(),
                seen: HashSet::new(),
            };
            let ok = e.add_orbit(root);
            let mut finished = true;
            if ok {
                finished = e.dfs(&mut ctx);
            }
            e.remove_orbit(root);
            (bi, ctx.leaves, finished)
        })
        .collect();
    let total_nodes = nodes.load(Ordering::Relaxed);
    let finished = results.iter().filter(|r| r.2).count();
    let mut candidates = Vec::new();
    let winner = stop_at.load(Ordering::Relaxed);
    for (bi, leaves, _) in results {
        if spec.first_only && bi != winner {
            continue;
        }
        candidates.extend(leaves);
    }
    let outcome = if spec.first_only && winner != usize::MAX {
        CensusOutcome::FirstFound
    } else if out_of_budget.load(Ordering::Relaxed) {
        CensusOutcome::Undecided { explored: finished as f64 / roots.len().max(1) as f64 }
    } else {
        CensusOutcome::Complete
    };
    assemble(spec, candidates, outcome, total_nodes, strategy)
}

struct Ctx<'a> {
    nodes: &'a AtomicU64,
    budget: u64,
    branch: usize,
    stop_at: &'a AtomicUsize,
    first_only: bool,
    out_of_budget: &'a AtomicBool,
    spec: &'a EnumerationSpec,
    leaves: Vec<Vec<Face>>,
    seen: HashSet<Vec<u64>>,
}

impl Ctx<'_> {
    /// Whether this branch should stop (budget or an earlier branch already found one).
    fn halted(&self) -> bool {
        self.out_of_budget.load(Ordering::Relaxed) || (self.first_only && self.stop_at.load(Ordering::Relaxed) < self.branch)
    }
}

/// Ridge-closing search state over facet orbits.
#[derive(Clone)]
struct Engine {
    d: usize,
    color: Vec<usize>,
    classes: Vec<Face>,
    /// Empty in generic mode, where every rainbow set is its own orbit.
    orbits: Vec<Vec<Face>>,
    orbit_of: HashMap<Face, usize>,
    used: Vec<bool>,
    forbidden: Vec<bool>,
    /// Generic mode: fresh vertices of a class are interchangeable.
    break_symmetry: bool,
    chosen: HashSet<Face>,
    ridge_count: HashMap<Face, u8>,
    open: BTreeSet<Face>,
    codim2: HashMap<Face, u16>,
    closed: HashSet<Face>,
    closed_log: Vec<Vec<Face>>,
    vertex_facets: Vec<u32>,
    vertex_cap: Vec<u32>,
    edges: HashMap<Face, u32>,
    max_edges: Option<usize>,
}

impl Engine {
    fn new(spec: &EnumerationSpec, orbits: Vec<Vec<Face>>, break_symmetry: bool) -> Engine {
        let d = spec.num_colors();
        let n = spec.num_vertices();
        let classes: Vec<Face> = (0..d).map(|c| spec.class(c)).collect();
        let mut color = vec![0; n];
        for (c, class) in classes.iter().enumerate() {
            for v in class.vertices() {
                color[v] = c;
            }
        }
        let mut orbits = orbits;
        if orbits.is_empty() {
            let mut rainbow = vec![Face::EMPTY];
            for class in &classes {
                rainbow = rainbow.iter().flat_map(|f| class.vertices().map(move |v| f.with(v))).collect();
            }
            rainbow.sort();
            orbits = rainbow.into_iter().map(|f| vec![f]).collect();
        }
        let mut orbit_of = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            for f in o {
                orbit_of.insert(*f, i);
            }
        }
        // A vertex link is a balanced sphere on the other classes.
        let vertex_cap = (0..n)
            .map(|v| {
                let others: Vec<u32> = (0..d).filter(|&c| c != color[v]).map(|c| spec.sizes[c] as u32).collect();
                match others.len() {
                    1 => 2,
                    2 => 2 * others.iter().min().copied().unwrap_or(0),
                    3 => 2 * others.iter().sum::<u32>() - 4,
                    _ => others.iter().product(),
                }
            })
            .collect();
        let m = orbits.len();
        Engine {
            d,
            color,
            classes,
            orbits,
            orbit_of,
            used: vec![false; m],
            forbidden: vec![false; m],
            break_symmetry,
            chosen: HashSet::new(),
            ridge_count: HashMap::new(),
            open: BTreeSet::new(),
            codim2: HashMap::new(),
            closed: HashSet::new(),
            closed_log: Vec::new(),
            vertex_facets: vec![0; n],
            vertex_cap,
            edges: HashMap::new(),
            max_edges: spec.max_edges,
        }
    }

    fn seed_orbits(&self, seed: Face) -> Vec<usize> {
        self.orbit_of.get(&seed).copied().into_iter().collect()
    }

    fn ridge_missing_color(&self, r: Face) -> usize {
        let mut present = vec![false; self.d];
        for v in r.vertices() {
            present[self.color[v]] = true;
        }
        present.iter().position(|p| !p).expect("ridge misses one color")
    }

    /// Add one facet; returns false if a constraint broke (the facet is still added).
    fn add_facet(&mut self, f: Face) -> bool {
        let mut ok = true;
        self.chosen.insert(f);
        for v in f.vertices() {
            self.vertex_facets[v] += 1;
            if self.vertex_facets[v] > self.vertex_cap[v] {
                ok = false;
            }
        }
        let verts = f.to_vec();
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                *self.edges.entry(Face::from_bits((1 << verts[i]) | (1 << verts[j]))).or_insert(0) += 1;
            }
        }
        if self.max_edges.is_some_and(|m| self.edges.len() > m) {
            ok = false;
        }
        for r in f.ridges() {
            let c = self.ridge_count.entry(r).or_insert(0);
            *c += 1;
            match *c {
                1 => {
                    self.open.insert(r);
                }
                2 => {
                    self.open.remove(&r);
                }
                _ => ok = false,
            }
        }
        let mut closed_here = Vec::new();
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                let g = f.without(verts[i]).without(verts[j]);
                if self.closed.contains(&g) {
                    ok = false;
                }
                *self.codim2.entry(g).or_insert(0) += 1;
                if ok {
                    if let Some(len) = self.cycle_through(g, verts[i], verts[j]) {
                        if self.codim2[&g] as usize != len {
                            ok = false;
                        }
                        if self.closed.insert(g) {
                            closed_here.push(g);
                        }
                    }
                }
            }
        }
        self.closed_log.push(closed_here);
        ok
    }

    fn remove_facet(&mut self, f: Face) {
        for g in self.closed_log.pop().expect("log matches additions") {
            self.closed.remove(&g);
        }
        self.chosen.remove(&f);
        for v in f.vertices() {
            self.vertex_facets[v] -= 1;
        }
        let verts = f.to_vec();
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                let e = Face::from_bits((1 << verts[i]) | (1 << verts[j]));
                let c = self.edges.get_mut(&e).expect("edge counted");
                *c -= 1;
                if *c == 0 {
                    self.edges.remove(&e);
                }
                let g = f.without(verts[i]).without(verts[j]);
                let c = self.codim2.get_mut(&g).expect("codim-2 face counted");
                *c -= 1;
                if *c == 0 {
                    self.codim2.remove(&g);
                }
            }
        }
        for r in f.ridges() {
            let c = self.ridge_count.get_mut(&r).expect("ridge counted");
            *c -= 1;
            match *c {
                0 => {
                    self.ridge_count.remove(&r);
                    self.open.remove(&r);
                }
                1 => {
                    self.open.insert(r);
                }
                _ => {}
            }
        }
    }

    /// Length of the cycle through the new link edge `ab` of `g`, if one closed.
    fn cycle_through(&self, g: Face, a: VertexId, b: VertexId) -> Option<usize> {
        let deg = |x: VertexId| self.ridge_count.get(&g.with(x)).copied().unwrap_or(0);
        if deg(a) != 2 || deg(b) != 2 {
            return None;
        }
        let (mut prev, mut cur) = (a, b);
        let mut len = 1;
        loop {
            let other = self.classes[self.color[prev]];
            let next = other.vertices().find(|&y| y != prev && self.chosen.contains(&g.with(cur).with(y)))?;
            len += 1;
            if next == a {
                return Some(len);
            }
            if deg(next) != 2 || len > 64 {
                return None;
            }
            prev = cur;
            cur = next;
        }
    }

    fn add_orbit(&mut self, o: usize) -> bool {
        self.used[o] = true;
        let facets = self.orbits[o].clone();
        let mut ok = true;
        for f in facets {
            ok &= self.add_facet(f);
        }
        ok
    }

    fn remove_orbit(&mut self, o: usize) {
        let facets = self.orbits[o].clone();
        for f in facets.into_iter().rev() {
            self.remove_facet(f);
        }
        self.used[o] = false;
    }

    fn options_for(&mut self, r: Face) -> Vec<usize> {
        let c = self.ridge_missing_color(r);
        let class = self.classes[c];
        let fresh = class.vertices().find(|&v| self.vertex_facets[v] == 0);
        let mut options = Vec::new();
        for x in class.vertices() {
            if self.break_symmetry && self.vertex_facets[x] == 0 && Some(x) != fresh {
                continue;
            }
            let f = r.with(x);
            let o = self.orbit_of[&f];
            if self.used[o] || self.forbidden[o] || options.contains(&o) {
                continue;
            }
            let ok = self.add_orbit(o);
            self.remove_orbit(o);
            if ok {
                options.push(o);
            }
        }
        options
    }

    /// Returns false when the branch was cut short by the budget or by an earlier branch.
    fn dfs(&mut self, ctx: &mut Ctx) -> bool {
        if ctx.halted() {
            return false;
        }
        if ctx.nodes.fetch_add(1, Ordering::Relaxed) >= ctx.budget {
            ctx.out_of_budget.store(true, Ordering::Relaxed);
            return false;
        }
        if self.open.is_empty() {
            self.leaf(ctx);
            return true;
        }
        let mut best: Option<Vec<usize>> = None;
        let open: Vec<Face> = self.open.iter().copied().collect();
        for r in open {
            let opts = self.options_for(r);
            let n = opts.len();
            if best.as_ref().is_none_or(|b| n < b.len()) {
                best = Some(opts);
            }
            if n <= 1 {
                break;
            }
        }
        for o in best.unwrap_or_default() {
            self.add_orbit(o);
            let finished = self.dfs(ctx);
            self.remove_orbit(o);
            if !finished || (ctx.first_only && !ctx.leaves.is_empty()) {
                return finished && ctx.first_only;
            }
        }
        true
    }

    fn leaf(&mut self, ctx: &mut Ctx) {
        if self.vertex_facets.contains(&0) {
            return;
        }
        let mut facets: Vec<Face> = self.chosen.iter().copied().collect();
        facets.sort();
        let Ok(k) = SimplicialComplex::from_facets(facets.clone()) else { return };
        let Ok(form) = symmetry::canonical_form(&k) else { return };
        if !ctx.seen.insert(form.key()) {
            return;
        }
        if ctx.first_only {
            match verified_entry(ctx.spec, k) {
                Ok(Some(_)) => {
                    ctx.stop_at.fetch_min(ctx.branch, Ordering::Relaxed);
                }
                _ => return,
            }
        }
        ctx.leaves.push(facets);
    }
}

/// Links of the last-color vertices are balanced spheres on the other
/// classes; each rainbow set of the other colors lies in zero or two links,
/// so the third link is the symmetric difference of the first two.
fn star_assembly(spec: &EnumerationSpec) -> Result<Census> {
    let d = spec.num_colors();
    let inner = &spec.sizes[..d - 1];
    let widest = *inner.iter().max().expect("at least two inner colors");
    let budget = spec.budget();
    let mut nodes = 0u64;
    // Link types: all balanced (d-2)-spheres with nondecreasing class sizes fitting the spec.
    let mut types: Vec<(Vec<usize>, SimplicialComplex)> = Vec::new();
    let mut size_vectors = vec![vec![]];
    for _ in 0..d - 1 {
        size_vectors = size_vectors
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let lo = s.last().copied().unwrap_or(2);
                (lo..=widest).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    for sizes in size_vectors {
        let sub = EnumerationSpec { budget: Some(budget), ..EnumerationSpec::spheres(d - 2, sizes.clone()) };
        let census = if d > 3 && sizes[d - 2] == 3 { star_assembly(&sub)? } else { generic(&sub)? };
        nodes += census.nodes;
        if !census.is_complete() {
            return Ok(Census { outcome: CensusOutcome::Undecided { explored: 0.0 }, ..census });
        }
        for e in census.entries {
            types.push((sizes.clone(), e.document.complex));
        }
    }
    // Every labeled copy of every type inside the inner classes.
    let inner_classes: Vec<Vec<VertexId>> = (0..d - 1).map(|c| spec.class(c).to_vec()).collect();
    let mut copies: Vec<Vec<Face>> = Vec::new();
    let mut copy_set: HashSet<Vec<Face>> = HashSet::new();
    for (sizes, k) in &types {
        let sub = EnumerationSpec::spheres(d - 2, sizes.clone());
        let type_classes: Vec<Vec<VertexId>> = (0..d - 1).map(|c| sub.class(c).to_vec()).collect();
        for perm in (0..d - 1).permutations(d - 1) {
            if (0..d - 1).any(|c| sizes[c] > inner[perm[c]]) {
                continue;
            }
            let per_class: Vec<Vec<Vec<VertexId>>> = (0..d - 1)
                .map(|c| inner_classes[perm[c]].iter().copied().permutations(sizes[c]).collect())
                .collect();
            for choice in per_class.iter().map(|v| v.iter()).multi_cartesian_product() {
                let mut map = [0usize; MAX_VERTICES];
                for c in 0..d - 1 {
                    for (i, &v) in type_classes[c].iter().enumerate() {
                        map[v] = choice[c][i];
                    }
                }
                let mut facets: Vec<Face> = k.facets().iter().map(|f| f.map(|v| map[v])).collect();
                facets.sort();
                if copy_set.insert(facets.clone()) {
                    copies.push(facets);
                }
            }
        }
    }
    copies.sort();
    // First link up to relabeling inside each class.
    let coloring = spec.coloring();
    let mut reps: Vec<&Vec<Face>> = Vec::new();
    let mut rep_keys = HashSet::new();
    for c in &copies {
        let k = SimplicialComplex::from_facets(c.clone())?;
        let key = symmetry::canonical_form_with(&k, Some(&coloring.restricted_to(&k)))?.key();
        if rep_keys.insert(key) {
            reps.push(c);
        }
    }
    let apex = spec.class(d - 1).to_vec();
    let inner_verts = (0..d - 1).fold(Face::EMPTY, |a, c| a.union(spec.class(c)));
    let pairs: u64 = (reps.len() * copies.len()) as u64;
    if nodes + pairs > budget {
        return Ok(Census {
            spec: spec.clone(),
            entries: Vec::new(),
            outcome: CensusOutcome::Undecided { explored: 0.0 },
            nodes: nodes + pairs,
            strategy: "star-assembly".into(),
            rejected: 0,
            notes: Vec::new(),
        });
    }
    nodes += pairs;
    let candidates: Vec<Vec<Face>> = reps
        .par_iter()
        .flat_map_iter(|l1| {
            let s1: HashSet<Face> = l1.iter().copied().collect();
            let mut found = Vec::new();
            for l2 in &copies {
                if std::ptr::eq(*l1, l2) {
                    continue;
                }
                let mut l3: Vec<Face> = l2.iter().filter(|f| !s1.contains(f)).copied().collect();
                let s2: HashSet<&Face> = l2.iter().collect();
                l3.extend(l1.iter().filter(|f| !s2.contains(f)));
                l3.sort();
                if !copy_set.contains(&l3) {
                    continue;
                }
                let covered = [*l1, l2, &l3].iter().flat_map(|l| l.iter()).fold(Face::EMPTY, |a, f| a.union(*f));
                if covered != inner_verts {
                    continue;
                }
                let mut facets = Vec::new();
                for (z, link) in apex.iter().zip([*l1, l2, &l3]) {
                    facets.extend(link.iter().map(|f| f.with(*z)));
                }
                facets.sort();
                found.push(facets);
            }
            found
        })
        .collect();
    assemble(spec, candidates, CensusOutcome::Complete, nodes, "star-assembly")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_is_the_only_small_2_sphere() {
        let census = enumerate_balanced_spheres(&EnumerationSpec::spheres(2, vec![2, 2, 2])).unwrap();
        assert!(census.is_complete());
        assert_eq!(census.entries.len(), 1);
        assert_eq!(census.entries[0].f_vector.f, vec![1, 6, 12, 8]);
    }

    #[test]
    fn cycles_by_size() {
        let census = enumerate_balanced_spheres(&EnumerationSpec::spheres(1, vec![3, 3])).unwrap();
        assert_eq!(census.entries.len(), 1);
        assert_eq!(census.entries[0].f_vector.f, vec![1, 6, 6]);
    }

    #[test]
    fn nine_vertex_2_sphere_both_strategies() {
        let mut spec = EnumerationSpec::spheres(2, vec![3, 3, 3]);
        let star = enumerate_balanced_spheres(&spec).unwrap();
        spec.strategy = Strategy::Generic;
        let gen = enumerate_balanced_spheres(&spec).unwrap();
        assert_eq!(star.entries.len(), 1);
        assert_eq!(star.entries[0].canonical, gen.entries[0].canonical);
        assert_eq!(gen.entries.len(), 1);
    }

    #[test]
    fn regime_refusal() {
        let spec = EnumerationSpec::spheres(3, vec![5, 5, 5, 5]);
        assert!(matches!(enumerate_balanced_spheres(&spec), Err(Error::Unsupported(_))));
        assert!(matches!(
            enumerate_balanced_spheres(&EnumerationSpec::spheres(2, vec![1, 2, 2])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn identity_orbits_are_singletons() {
        let spec = EnumerationSpec::spheres(2, vec![2, 2, 2]);
        let orbits = orbit_facets(&spec.coloring(), &[]).unwrap();
        assert_eq!(orbits.len(), 8);
        assert!(orbits.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn cross_polytope_under_identity_group() {
        let mut spec = EnumerationSpec::spheres(3, vec![2, 2, 2, 2]);
        spec.neighborly = Some(2);
        let census = search_symmetric(&spec).unwrap();
        assert_eq!(census.entries.len(), 1);
        assert_eq!(census.entries[0].f_vector.f, vec![1, 8, 24, 32, 16]);
    }

    #[test]
    fn spec_json_round_trip() {
        let mut spec = EnumerationSpec::spheres(3, vec![3, 3, 3, 3]);
        spec.max_edges = Some(50);
        let back = EnumerationSpec::from_json_str(&spec.to_json().to_string()).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.hash(), spec.hash());
    }
}
