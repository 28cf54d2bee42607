//! Reduced simplicial homology over the integers, the rationals or a prime field.
//!
//! Chain groups are indexed by faces in lexicographic order, with the empty face
//! as the single generator in dimension -1, so every result is *reduced*.

pub mod smith;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{ColorSet, Coloring, Face, SimplicialComplex};
use crate::error::{Error, Result};
use smith::DenseMatrix;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Coefficients {
    #[default]
    Integer,
    Rational,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integer => write!(f, "integer"),
            Coefficients::Rational => write!(f, "rational"),
            Coefficients::Prime(p) => write!(f, "mod-{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "integer" | "int" | "z" => return Ok(Coefficients::Integer),
            "rational" | "q" => return Ok(Coefficients::Rational),
            _ => {}
        }
        let digits = lower.trim_start_matches("mod-").trim_start_matches("mod").trim_start_matches('f');
        match digits.parse::<u64>() {
            Ok(p) if smith::is_prime(p) && p < (1 << 31) => Ok(Coefficients::Prime(p)),
            _ => Err(Error::Input(format!(
                "unknown coefficients {s:?}; expected integer, rational or a prime such as mod-2"
            ))),
        }
    }
}

/// Boundary map `∂_k : C_k -> C_{k-1}` as sparse columns of `(row, ±1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBoundaryMatrix {
    pub k: usize,
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl ChainBoundaryMatrix {
    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, s) in col {
                m.set(r, c, s as i64);
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
}

/// `∂_0, ∂_1, …, ∂_dim`. `∂_0` is the augmentation onto the empty face.
pub fn boundary_matrices(k: &SimplicialComplex) -> Result<Vec<ChainBoundaryMatrix>> {
    if k.is_void() {
        return Err(Error::EmptyComplex);
    }
    let top = k.dim();
    let mut out = Vec::new();
    for dim in 0..=top {
        out.push(boundary_matrix(k, dim as usize));
    }
    Ok(out)
}

fn boundary_matrix(k: &SimplicialComplex, dim: usize) -> ChainBoundaryMatrix {
    let lower = k.faces().of_size(dim);
    let upper = k.faces().of_size(dim + 1);
    let index: HashMap<Face, usize> = lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let columns = upper
        .iter()
        .map(|f| {
            let mut col: Vec<(usize, i8)> = f
                .vertices()
                .enumerate()
                .map(|(i, v)| (index[&f.without(v)], if i % 2 == 0 { 1 } else { -1 }))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    ChainBoundaryMatrix { k: dim, rows: lower.len(), cols: upper.len(), columns }
}

/// Reduced homology in dimensions `-1..=dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    /// `β̃_0, …, β̃_dim`.
    pub betti: Vec<u64>,
    /// `β̃_{-1}`; nonzero only for the complex `{∅}`.
    pub betti_minus_one: u64,
    /// Invariant factors greater than one, by dimension (integer coefficients only).
    pub torsion: BTreeMap<usize, Vec<BigUint>>,
}

impl HomologyProfile {
    pub fn betti(&self, i: isize) -> u64 {
        if i == -1 {
            return self.betti_minus_one;
        }
        if i < -1 {
            return 0;
        }
        self.betti.get(i as usize).copied().unwrap_or(0)
    }

    pub fn torsion_in(&self, i: usize) -> &[BigUint] {
        self.torsion.get(&i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.values().any(|v| !v.is_empty())
    }

    /// Reduced homology of a `j`-sphere: a single free class in degree `j`.
    pub fn is_sphere_like(&self, j: isize) -> bool {
        !self.has_torsion()
            && (-1..=self.betti.len() as isize).all(|i| self.betti(i) == u64::from(i == j))
            && (j < self.betti.len() as isize || j == -1)
    }

    /// Vanishing reduced homology.
    pub fn is_acyclic(&self) -> bool {
        !self.has_torsion() && self.betti_minus_one == 0 && self.betti.iter().all(|&b| b == 0)
    }

    /// `Σ (-1)^i β̃_i` for `i >= -1`.
    pub fn reduced_euler(&self) -> i64 {
        let mut total = -(self.betti_minus_one as i64);
        for (i, &b) in self.betti.iter().enumerate() {
            total += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        total
    }

    /// Compare against a target of Betti numbers and torsion (trailing zeros ignored).
    pub fn matches(&self, betti: &[u64], torsion: &BTreeMap<usize, Vec<u64>>) -> bool {
        let n = self.betti.len().max(betti.len());
        let ok_betti = (0..n).all(|i| self.betti.get(i).copied().unwrap_or(0) == betti.get(i).copied().unwrap_or(0));
        let mine: BTreeMap<usize, Vec<u64>> = self
            .torsion
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| (*k, v.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()))
            .collect();
        let theirs: BTreeMap<usize, Vec<u64>> =
            torsion.iter().filter(|(_, v)| !v.is_empty()).map(|(k, v)| (*k, v.clone())).collect();
        ok_betti && mine == theirs
    }

    pub fn to_json(&self) -> Value {
        let torsion: serde_json::Map<String, Value> = self
            .torsion
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| (k.to_string(), Value::Array(v.iter().map(big_to_json).collect())))
            .collect();
        let mut obj = json!({
            "betti": self.betti,
            "torsion": torsion,
            "coefficients": self.coefficients.to_string(),
        });
        if self.betti_minus_one != 0 {
            obj["betti_minus_one"] = json!(self.betti_minus_one);
        }
        obj
    }
}

fn big_to_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Reduced homology of `k`.
pub fn homology(k: &SimplicialComplex, coefficients: Coefficients) -> Result<HomologyProfile> {
    if k.is_void() {
        return Err(Error::EmptyComplex);
    }
    if let Coefficients::Prime(p) = coefficients {
        if !smith::is_prime(p) || p >= (1 << 31) {
            return Err(Error::Input(format!("{p} is not a supported prime")));
        }
    }
    if k.is_empty_complex() {
        return Ok(HomologyProfile {
            coefficients,
            betti: Vec::new(),
            betti_minus_one: 1,
            torsion: BTreeMap::new(),
        });
    }
    if k.dim() <= 1 {
        return Ok(graph_homology(k, coefficients));
    }
    let top = k.dim() as usize;
    // ranks[j] = rank ∂_j, torsion from ∂_{j+1} lands in degree j.
    let per_dim: Vec<(usize, Vec<BigUint>)> = (0..=top)
        .into_par_iter()
        .map(|j| {
            let m = boundary_matrix(k, j);
            rank_and_torsion(&m, coefficients)
        })
        .collect();
    let mut betti = Vec::with_capacity(top + 1);
    let mut torsion = BTreeMap::new();
    for j in 0..=top {
        let cj = k.faces().of_size(j + 1).len();
        let r_out = per_dim[j].0;
        let r_in = if j < top { per_dim[j + 1].0 } else { 0 };
        betti.push((cj - r_out - r_in) as u64);
        if j < top && !per_dim[j + 1].1.is_empty() {
            torsion.insert(j, per_dim[j + 1].1.clone());
        }
    }
    Ok(HomologyProfile { coefficients, betti, betti_minus_one: 0, torsion })
}

fn rank_and_torsion(m: &ChainBoundaryMatrix, coefficients: Coefficients) -> (usize, Vec<BigUint>) {
    if m.cols == 0 || m.rows == 0 {
        return (0, Vec::new());
    }
    if m.k == 0 {
        // Augmentation: a single row of ones.
        return (1, Vec::new());
    }
    let dense = m.to_dense();
    match coefficients {
        Coefficients::Integer => {
            let f = smith::invariant_factors(&dense);
            let rank = f.len();
            (rank, f.into_iter().filter(|x| !x.is_one()).collect())
        }
        Coefficients::Rational => (smith::rank_rational(&dense), Vec::new()),
        Coefficients::Prime(p) => (smith::rank_mod_p(&dense, p), Vec::new()),
    }
}

/// Dimension at most one: components and cycle rank, never torsion.
fn graph_homology(k: &SimplicialComplex, coefficients: Coefficients) -> HomologyProfile {
    let comps = k.components().len() as u64;
    let v = k.num_vertices() as u64;
    let e = k.num_faces_of_dim(1) as u64;
    let mut betti = vec![comps - 1];
    if k.dim() == 1 {
        betti.push(e + comps - v);
    }
    HomologyProfile { coefficients, betti, betti_minus_one: 0, torsion: BTreeMap::new() }
}

/// Homology of the rank-selected subcomplex `K_S`.
pub fn betti_of_rank_selection(
    k: &SimplicialComplex,
    coloring: &Coloring,
    colors: ColorSet,
    coefficients: Coefficients,
) -> Result<HomologyProfile> {
    let sub = k.rank_selected(coloring, colors)?;
    if sub.is_void() {
        return Err(Error::EmptyComplex);
    }
    homology(&sub, coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(lists: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(lists).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        let t = [123, 124, 135, 146, 156, 236, 245, 256, 345, 346];
        let lists: Vec<Vec<usize>> =
            t.iter().map(|n| vec![n / 100 - 1, (n / 10) % 10 - 1, n % 10 - 1]).collect();
        SimplicialComplex::from_vertex_lists(&lists).unwrap()
    }

    #[test]
    fn single_edge_boundary() {
        let ms = boundary_matrices(&cx(&[&[0, 1]])).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1].to_dense().data, vec![-1, 1]);
    }

    #[test]
    fn hollow_triangle() {
        let k = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let ms = boundary_matrices(&k).unwrap();
        assert_eq!(smith::rank_rational(&ms[1].to_dense()), 2);
        let h = homology(&k, Coefficients::Integer).unwrap();
        assert_eq!(h.betti, vec![0, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        let k = rp2();
        let z = homology(&k, Coefficients::Integer).unwrap();
        assert_eq!(z.betti, vec![0, 0, 0]);
        assert_eq!(z.torsion_in(1), &[BigUint::from(2u32)]);
        let q = homology(&k, Coefficients::Rational).unwrap();
        assert_eq!(q.betti, vec![0, 0, 0]);
        let f2 = homology(&k, Coefficients::Prime(2)).unwrap();
        assert_eq!(f2.betti, vec![0, 1, 1]);
        let f3 = homology(&k, Coefficients::Prime(3)).unwrap();
        assert_eq!(f3.betti, vec![0, 0, 0]);
    }

    #[test]
    fn empty_complex_has_minus_one_class() {
        let h = homology(&SimplicialComplex::empty(), Coefficients::Integer).unwrap();
        assert_eq!(h.betti_minus_one, 1);
        assert!(h.is_sphere_like(-1));
        assert!(homology(&SimplicialComplex::void(), Coefficients::Integer).is_err());
    }

    #[test]
    fn two_points_is_zero_sphere() {
        let h = homology(&cx(&[&[0], &[1]]), Coefficients::Integer).unwrap();
        assert!(h.is_sphere_like(0));
        assert!(!h.is_sphere_like(1));
    }

    #[test]
    fn json_shape() {
        let h = homology(&rp2(), Coefficients::Integer).unwrap();
        assert_eq!(h.to_json(), json!({"betti":[0,0,0],"torsion":{"1":[2]},"coefficients":"integer"}));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("integer".parse::<Coefficients>().unwrap(), Coefficients::Integer);
        assert_eq!("mod-3".parse::<Coefficients>().unwrap(), Coefficients::Prime(3));
        assert_eq!("2".parse::<Coefficients>().unwrap(), Coefficients::Prime(2));
        assert!("mod-4".parse::<Coefficients>().is_err());
    }
}
