use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::ComplexError;

/// Vertex identifier. The global vertex order is the numeric order.
pub type Vertex = u32;

/// A finite abstract simplicial complex.
///
/// Simplices are stored per dimension, each as a strictly increasing vertex
/// list, and enumerated in lexicographic order. The enumeration order is a
/// function of the simplex set alone, so two complexes with the same simplices
/// index them identically.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    simplices: Vec<Vec<Vec<Vertex>>>,
    index: Vec<HashMap<Vec<Vertex>, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of a list of simplices.
    pub fn from_maximal<S: AsRef<[Vertex]>>(maximal: &[S]) -> Result<Self, ComplexError> {
        let mut sorted = Vec::with_capacity(maximal.len());
        for s in maximal {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(ComplexError::EmptySimplex);
            }
            let mut v = s.to_vec();
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateVertex(s.to_vec()));
            }
            sorted.push(v);
        }
        Ok(Self::closure_of_sorted(sorted))
    }

    /// Closure of simplices already known to be sorted and duplicate free.
    pub(crate) fn closure_of_sorted<I: IntoIterator<Item = Vec<Vertex>>>(simplices: I) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<Vertex>>> = Vec::new();
        for s in simplices {
            debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
            if s.is_empty() {
                continue;
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            if by_dim[d].contains(&s) {
                continue;
            }
            // all nonempty subsets
            let n = s.len();
            for mask in 1u32..(1u32 << n) {
                let face: Vec<Vertex> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        Self::from_sets(by_dim)
    }

    /// Builds from per-dimension sets that are already closed under faces.
    pub(crate) fn from_sets(by_dim: Vec<BTreeSet<Vec<Vertex>>>) -> Self {
        let mut simplices: Vec<Vec<Vec<Vertex>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        let vertices = simplices.first().map(|v| v.iter().map(|s| s[0]).collect()).unwrap_or_default();
        let index = simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex {
            vertices,
            simplices,
            index,
        }
    }

    /// Subcomplex made of the simplices satisfying `keep`. The predicate must
    /// be closed under taking faces for the result to be a subcomplex; the
    /// result is closed regardless.
    pub fn filter<F: Fn(&[Vertex]) -> bool>(&self, keep: F) -> Self {
        Self::closure_of_sorted(self.iter().filter(|s| keep(s)).map(<[Vertex]>::to_vec))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::closure_of_sorted(self.iter().chain(other.iter()).map(<[Vertex]>::to_vec))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::closure_of_sorted(self.iter().filter(|s| other.contains(s)).map(<[Vertex]>::to_vec))
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, with −1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Position of `v` in the global vertex order.
    pub fn vertex_position(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn simplices(&self, d: usize) -> &[Vec<Vertex>] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, simplex: &[Vertex]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        self.index.get(d)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[Vertex]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// All simplices, by increasing dimension.
    pub fn iter(&self) -> impl Iterator<Item = &[Vertex]> + '_ {
        self.simplices.iter().flat_map(|layer| layer.iter().map(Vec::as_slice))
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<Vertex>> {
        let mut covered: BTreeSet<&[Vertex]> = BTreeSet::new();
        for layer in self.simplices.iter().skip(1) {
            for s in layer {
                for skip in 0..s.len() {
                    let face: Vec<Vertex> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    if let Some(i) = self.index_of(&face) {
                        covered.insert(self.simplices[face.len() - 1][i].as_slice());
                    }
                }
            }
        }
        self.iter().filter(|s| !covered.contains(s)).map(<[Vertex]>::to_vec).collect()
    }

    /// Barycentric subdivision.
    ///
    /// New vertex `i` is the barycentre of `origin[i]`, a simplex of `self`.
    /// New vertices are numbered by dimension of their original simplex first,
    /// so every simplex of the subdivision lists its vertices in increasing
    /// original dimension. Any simplicial automorphism of `self` therefore
    /// preserves the vertex order on each simplex of the subdivision.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<Vec<Vertex>>) {
        let origin: Vec<Vec<Vertex>> = self.iter().map(<[Vertex]>::to_vec).collect();
        let id_of: HashMap<&[Vertex], Vertex> =
            origin.iter().enumerate().map(|(i, s)| (s.as_slice(), i as Vertex)).collect();
        let mut chains = Vec::new();
        for top in self.maximal_simplices() {
            for perm in permutations(top.len()) {
                let mut chain = Vec::with_capacity(top.len());
                let mut acc: Vec<Vertex> = Vec::with_capacity(top.len());
                for &p in &perm {
                    acc.push(top[p]);
                    acc.sort_unstable();
                    chain.push(id_of[acc.as_slice()]);
                }
                chain.sort_unstable();
                chains.push(chain);
            }
        }
        (Self::closure_of_sorted(chains), origin)
    }

    /// Parses the text format: one maximal simplex per line, whitespace
    /// separated vertex ids, `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let mut maximal = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let simplex = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<Vertex>().map_err(|e| ComplexError::Parse {
                        line: lineno + 1,
                        message: format!("bad vertex id {tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            maximal.push(simplex);
        }
        Self::from_maximal(&maximal)
    }

    /// Writes the maximal simplices in the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in self.maximal_simplices() {
            let line: Vec<String> = s.iter().map(Vertex::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Standard models used throughout tests, docs and scenarios.
pub mod models {
    use super::*;

    /// Boundary of an `m`-gon, vertices `0..m`.
    pub fn cycle(m: u32) -> SimplicialComplex {
        let edges: Vec<Vec<Vertex>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
        SimplicialComplex::from_maximal(&edges).expect("cycle is well formed")
    }

    /// Boundary of the `(n+1)`-simplex, a model of Sⁿ.
    pub fn simplex_boundary(n: u32) -> SimplicialComplex {
        let all: Vec<Vertex> = (0..=n + 1).collect();
        let facets: Vec<Vec<Vertex>> = (0..=n + 1)
            .map(|skip| all.iter().copied().filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::from_maximal(&facets).expect("simplex boundary is well formed")
    }

    /// Boundary of the `(n+1)`-dimensional cross-polytope, a model of Sⁿ.
    /// Vertex `i` is `+eᵢ` and `i + n + 1` is `−eᵢ`.
    pub fn cross_polytope(n: u32) -> SimplicialComplex {
        let k = n + 1;
        let mut facets = Vec::new();
        for signs in 0u32..(1 << k) {
            let f: Vec<Vertex> = (0..k).map(|i| if signs & (1 << i) == 0 { i } else { i + k }).collect();
            facets.push(f);
        }
        SimplicialComplex::from_maximal(&facets).expect("cross-polytope is well formed")
    }

    pub fn point() -> SimplicialComplex {
        SimplicialComplex::from_maximal(&[vec![0]]).expect("point")
    }
}
