//! Staircase triangulation of a product and the saturated diagonal.

use std::collections::BTreeSet;

use super::action::{GroupAction, MAX_SUBDIVISIONS};
use super::SymmetryError;
use crate::complex::{SimplicialComplex, Vertex};

/// Triangulated product `K × L` with its two projections.
///
/// The vertex `(a, b)` is numbered `pos(a)·|V(L)| + pos(b)`, so the vertex
/// order is lexicographic in (position in K, position in L). A simplex is a
/// chain that is weakly increasing in both coordinates whose projections are
/// simplices of the factors.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub complex: SimplicialComplex,
    left: Vec<Vertex>,
    right: Vec<Vertex>,
}

impl ProductComplex {
    pub fn vertex(&self, a: Vertex, b: Vertex) -> Vertex {
        let i = self.left.binary_search(&a).expect("vertex of the left factor");
        let j = self.right.binary_search(&b).expect("vertex of the right factor");
        (i * self.right.len() + j) as Vertex
    }

    pub fn proj_left(&self, v: Vertex) -> Vertex {
        self.left[v as usize / self.right.len()]
    }

    pub fn proj_right(&self, v: Vertex) -> Vertex {
        self.right[v as usize % self.right.len()]
    }

    pub fn left_vertices(&self) -> &[Vertex] {
        &self.left
    }

    pub fn right_vertices(&self) -> &[Vertex] {
        &self.right
    }
}

/// Every monotone lattice path from (0,0) to (p,q), as index pairs.
fn staircases(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut path = vec![(0, 0)];
    fn rec(p: usize, q: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *path.last().unwrap();
        if i == p && j == q {
            out.push(path.clone());
            return;
        }
        if i < p {
            path.push((i + 1, j));
            rec(p, q, path, out);
            path.pop();
        }
        if j < q {
            path.push((i, j + 1));
            rec(p, q, path, out);
            path.pop();
        }
    }
    rec(p, q, &mut path, &mut out);
    out
}

pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> ProductComplex {
    let left = k.vertices().to_vec();
    let right = l.vertices().to_vec();
    let nr = right.len();
    let mut maximal = Vec::new();
    for s in k.maximal_simplices() {
        for t in l.maximal_simplices() {
            for path in staircases(s.len() - 1, t.len() - 1) {
                maximal.push(
                    path.iter()
                        .map(|&(i, j)| {
                            let a = k.vertex_position(s[i]).unwrap();
                            let b = l.vertex_position(t[j]).unwrap();
                            (a * nr + b) as Vertex
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let complex = SimplicialComplex::from_maximal(&maximal).expect("staircase chains are simplices");
    ProductComplex { complex, left, right }
}

/// The saturated diagonal `{(gx, x)}` inside the product triangulation, one
/// slice per selected group element.
#[derive(Clone, Debug)]
pub struct SaturatedDiagonal {
    /// The action actually used; a subdivision of the input if that was needed.
    pub action: GroupAction,
    pub ambient: ProductComplex,
    /// Selected group elements, in the order of `slices`.
    pub elements: Vec<usize>,
    pub slices: Vec<SimplicialComplex>,
    pub union: SimplicialComplex,
    pub subdivisions: usize,
}

impl SaturatedDiagonal {
    /// The image of a simplex of X under `x ↦ (gx, x)`.
    pub fn graph_simplex(&self, g: usize, s: &[Vertex]) -> Vec<Vertex> {
        graph_simplex(&self.action, &self.ambient, g, s)
    }

    pub fn slice(&self, g: usize) -> Option<&SimplicialComplex> {
        self.elements.iter().position(|&e| e == g).map(|i| &self.slices[i])
    }
}

fn graph_simplex(action: &GroupAction, ambient: &ProductComplex, g: usize, s: &[Vertex]) -> Vec<Vertex> {
    let mut t: Vec<Vertex> = s.iter().map(|&v| ambient.vertex(action.act(g, v), v)).collect();
    t.sort_unstable();
    t
}

/// Builds the slices `ℸ_g` for `g` in `elements` (default: the whole group)
/// and their union. A slice is a subcomplex of the staircase product exactly
/// when `g` preserves the vertex order on every simplex; otherwise the action
/// is subdivided, which makes every element order-preserving.
pub fn saturated_diagonal(action: &GroupAction, elements: Option<&[usize]>) -> Result<SaturatedDiagonal, SymmetryError> {
    let elements: Vec<usize> = match elements {
        Some(l) => {
            if let Some(&bad) = l.iter().find(|&&g| g >= action.group().order()) {
                return Err(SymmetryError::UnknownElement(bad));
            }
            let set: BTreeSet<usize> = l.iter().copied().collect();
            set.into_iter().collect()
        }
        None => action.group().elements().collect(),
    };
    let mut current = action.clone();
    let mut subdivisions = 0;
    while !elements.iter().all(|&g| current.is_order_preserving(g)) {
        if subdivisions == MAX_SUBDIVISIONS {
            return Err(SymmetryError::NotOrderCompatible {
                subdivisions: MAX_SUBDIVISIONS,
            });
        }
        current = current.subdivided();
        subdivisions += 1;
    }
    let k = current.complex();
    let ambient = product_complex(k, k);
    let mut slices = Vec::with_capacity(elements.len());
    let mut all: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    for &g in &elements {
        let simplices: Vec<Vec<Vertex>> = k.maximal_simplices().iter().map(|s| graph_simplex(&current, &ambient, g, s)).collect();
        let slice = SimplicialComplex::from_maximal(&simplices)?;
        debug_assert!(slice.iter().all(|s| ambient.complex.contains(s)));
        all.extend(simplices);
        slices.push(slice);
    }
    let all: Vec<Vec<Vertex>> = all.into_iter().collect();
    let union = if all.is_empty() {
        SimplicialComplex::empty()
    } else {
        SimplicialComplex::from_maximal(&all)?
    };
    Ok(SaturatedDiagonal {
        action: current,
        ambient,
        elements,
        slices,
        union,
        subdivisions,
    })
}
