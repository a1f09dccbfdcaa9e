//! Finite groups acting by simplicial automorphisms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::group::FiniteGroup;
use super::SymmetryError;
use crate::complex::{SimplicialComplex, Vertex};

/// A finite group acting on a complex by vertex permutations.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    complex: SimplicialComplex,
    /// `maps[g][p]` is the image of the vertex at position `p` of the vertex list.
    maps: Vec<Vec<Vertex>>,
}

impl GroupAction {
    /// Checks that every map is a bijection of the vertex set carrying
    /// simplices to simplices and that `g ↦ map(g)` is a homomorphism.
    pub fn new(
        group: FiniteGroup,
        complex: SimplicialComplex,
        maps: Vec<Vec<Vertex>>,
    ) -> Result<Self, SymmetryError> {
        if maps.len() != group.order() {
            return Err(SymmetryError::NotAHomomorphism(format!(
                "{} vertex maps for a group of order {}",
                maps.len(),
                group.order()
            )));
        }
        let verts = complex.vertices();
        for (g, m) in maps.iter().enumerate() {
            let image: BTreeSet<Vertex> = m.iter().copied().collect();
            if m.len() != verts.len() || image.len() != verts.len() || image.iter().any(|v| !complex.vertex_position(*v).is_some()) {
                return Err(SymmetryError::NotAPermutation { element: g });
            }
        }
        let action = GroupAction { group, complex, maps };
        let id = action.group.identity();
        if action.complex.vertices().iter().any(|&v| action.act(id, v) != v) {
            return Err(SymmetryError::NotAHomomorphism("identity does not act trivially".into()));
        }
        for g in action.group.elements() {
            for h in action.group.elements() {
                let gh = action.group.mul(g, h);
                if action.complex.vertices().iter().any(|&v| action.act(gh, v) != action.act(g, action.act(h, v))) {
                    return Err(SymmetryError::NotAHomomorphism(format!(
                        "map({gh}) differs from map({g})∘map({h})"
                    )));
                }
            }
        }
        for g in action.group.elements() {
            for s in action.complex.maximal_simplices() {
                if !action.complex.contains(&action.act_simplex(g, &s)) {
                    return Err(SymmetryError::NotSimplicial { element: g, simplex: s });
                }
            }
        }
        Ok(action)
    }

    /// The group generated by vertex permutations given as lists of images,
    /// one entry per vertex in increasing vertex order.
    pub fn from_generators(complex: SimplicialComplex, generators: &[Vec<Vertex>]) -> Result<Self, SymmetryError> {
        let n = complex.num_vertices();
        let mut as_positions = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(SymmetryError::NotAPermutation { element: i });
            }
            let p: Option<Vec<usize>> = g.iter().map(|&v| complex.vertex_position(v)).collect();
            as_positions.push(p.ok_or(SymmetryError::NotAPermutation { element: i })?);
        }
        let (group, perms) = if generators.is_empty() {
            (FiniteGroup::trivial(), vec![(0..n).collect()])
        } else {
            FiniteGroup::from_permutations(&as_positions)?
        };
        let verts = complex.vertices().to_vec();
        let maps = perms.into_iter().map(|p| p.into_iter().map(|i| verts[i]).collect()).collect();
        Self::new(group, complex, maps)
    }

    pub fn trivial(complex: SimplicialComplex) -> Self {
        let maps = vec![complex.vertices().to_vec()];
        Self::new(FiniteGroup::trivial(), complex, maps).expect("trivial action is valid")
    }

    /// Parses the action text format: one line `g<i>: p(0) p(1) … p(n−1)` per
    /// generator, `#` comments. The complex must have vertices `0..n`.
    pub fn parse(complex: SimplicialComplex, text: &str) -> Result<Self, SymmetryError> {
        let n = complex.num_vertices();
        if complex.vertices().iter().enumerate().any(|(i, &v)| v as usize != i) {
            return Err(SymmetryError::Parse {
                line: 0,
                message: "action files require vertices numbered 0..n".into(),
            });
        }
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| SymmetryError::Parse {
                line: lineno + 1,
                message,
            };
            let (label, rest) = line.split_once(':').ok_or_else(|| err("missing ':'".into()))?;
            let label = label.trim();
            if !label.starts_with('g') || label[1..].parse::<usize>().is_err() {
                return Err(err(format!("bad generator label {label:?}")));
            }
            let images: Vec<Vertex> = rest
                .split_whitespace()
                .map(|t| t.parse::<Vertex>().map_err(|_| err(format!("bad vertex {t:?}"))))
                .collect::<Result<_, _>>()?;
            if images.len() != n {
                return Err(err(format!("expected {n} images, found {}", images.len())));
            }
            gens.push(images);
        }
        Self::from_generators(complex, &gens)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in self.group.elements() {
            if g == self.group.identity() {
                continue;
            }
            let imgs: Vec<String> = self.maps[g].iter().map(u32::to_string).collect();
            out.push_str(&format!("g{g}: {}\n", imgs.join(" ")));
        }
        out
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn vertex_map(&self, g: usize) -> &[Vertex] {
        &self.maps[g]
    }

    pub fn act(&self, g: usize, v: Vertex) -> Vertex {
        let p = self.complex.vertex_position(v).expect("vertex of the complex");
        self.maps[g][p]
    }

    /// Image of a simplex, sorted.
    pub fn act_simplex(&self, g: usize, s: &[Vertex]) -> Vec<Vertex> {
        let mut t: Vec<Vertex> = s.iter().map(|&v| self.act(g, v)).collect();
        t.sort_unstable();
        t
    }

    /// Whether `g` preserves the order of the vertices of every simplex.
    pub fn is_order_preserving(&self, g: usize) -> bool {
        self.complex.iter().all(|s| s.windows(2).all(|w| self.act(g, w[0]) < self.act(g, w[1])))
    }

    pub fn orbit(&self, v: Vertex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.group.elements().map(|g| self.act(g, v)).collect();
        set.into_iter().collect()
    }

    /// Orbit label of every vertex: the smallest vertex of its orbit.
    pub fn orbit_labels(&self) -> BTreeMap<Vertex, Vertex> {
        self.complex
            .vertices()
            .iter()
            .map(|&v| (v, self.orbit(v)[0]))
            .collect()
    }

    /// Free action: no nontrivial element fixes a point of the realization,
    /// i.e. none maps a simplex onto itself.
    pub fn is_free(&self) -> bool {
        let e = self.group.identity();
        self.group
            .elements()
            .filter(|&g| g != e)
            .all(|g| self.complex.iter().all(|s| self.act_simplex(g, s) != s))
    }

    /// Whenever an element maps a simplex onto itself it fixes each of its vertices.
    pub fn setwise_fixed_is_pointwise(&self) -> bool {
        self.group.elements().all(|g| {
            self.complex
                .iter()
                .all(|s| self.act_simplex(g, s) != s || s.iter().all(|&v| self.act(g, v) == v))
        })
    }

    /// Both regularity conditions needed for the orbit space to be the
    /// simplicial quotient: the vertices of each simplex lie in distinct orbits,
    /// and simplices with the same image in the quotient form one orbit.
    pub fn is_regular(&self) -> bool {
        let labels = self.orbit_labels();
        let mut preimages: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for s in self.complex.iter() {
            let mut img: Vec<Vertex> = s.iter().map(|v| labels[v]).collect();
            img.sort_unstable();
            if img.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            *preimages.entry(img).or_default() += 1;
        }
        for s in self.complex.iter() {
            let mut img: Vec<Vertex> = s.iter().map(|v| labels[v]).collect();
            img.sort_unstable();
            let orbit: BTreeSet<Vec<Vertex>> = self.group.elements().map(|g| self.act_simplex(g, s)).collect();
            if orbit.len() != preimages[&img] {
                return false;
            }
        }
        true
    }

    /// The induced action on the barycentric subdivision. Every element of the
    /// subdivided action is order-preserving on simplices and fixes setwise-fixed
    /// simplices pointwise.
    pub fn subdivided(&self) -> GroupAction {
        let (sd, origin) = self.complex.barycentric_subdivision();
        let vertex_of: HashMap<&[Vertex], Vertex> =
            origin.iter().enumerate().map(|(i, s)| (s.as_slice(), i as Vertex)).collect();
        let maps = self
            .group
            .elements()
            .map(|g| origin.iter().map(|s| vertex_of[self.act_simplex(g, s).as_slice()]).collect())
            .collect();
        GroupAction::new(self.group.clone(), sd, maps).expect("induced action on a subdivision is valid")
    }

    /// The subcomplex of simplices fixed pointwise by every element of `h`.
    pub fn fixed_subcomplex(&self, h: &[usize]) -> Result<SimplicialComplex, SymmetryError> {
        if !self.group.is_subgroup(h) {
            return Err(SymmetryError::NotASubgroup(h.to_vec()));
        }
        for &g in h {
            let bad = self
                .complex
                .iter()
                .find(|s| self.act_simplex(g, s) == *s && s.iter().any(|&v| self.act(g, v) != v));
            if let Some(s) = bad {
                return Err(SymmetryError::NotRegular(format!(
                    "element {g} maps {s:?} onto itself without fixing its vertices; subdivide first"
                )));
            }
        }
        Ok(self
            .complex
            .filter(|s| h.iter().all(|&g| s.iter().all(|&v| self.act(g, v) == v))))
    }

    /// This action if setwise-fixed simplices are fixed pointwise, otherwise its
    /// subdivision (which always has the property).
    pub fn with_pointwise_fixed_simplices(&self) -> GroupAction {
        if self.setwise_fixed_is_pointwise() {
            self.clone()
        } else {
            self.subdivided()
        }
    }
}

/// Combinatorial orbit space together with the orbit map on vertices.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// The action actually used; a subdivision of the input if that was needed.
    pub action: GroupAction,
    pub complex: SimplicialComplex,
    /// Orbit map: vertex of `action.complex()` to vertex of `complex`.
    pub orbit_map: BTreeMap<Vertex, Vertex>,
    pub subdivisions: usize,
}

impl Quotient {
    pub fn project(&self, v: Vertex) -> Vertex {
        self.orbit_map[&v]
    }

    pub fn project_simplex(&self, s: &[Vertex]) -> Vec<Vertex> {
        let mut t: Vec<Vertex> = s.iter().map(|v| self.orbit_map[v]).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// All simplices of the source complex whose image lies in `simplices`.
    pub fn preimage(&self, simplices: &[Vec<Vertex>]) -> BTreeSet<Vec<Vertex>> {
        let wanted: BTreeSet<&[Vertex]> = simplices.iter().map(Vec::as_slice).collect();
        self.action
            .complex()
            .iter()
            .filter(|s| wanted.contains(self.project_simplex(s).as_slice()))
            .map(<[Vertex]>::to_vec)
            .collect()
    }
}

/// Number of barycentric subdivisions attempted before giving up.
pub const MAX_SUBDIVISIONS: usize = 2;

/// The quotient complex, subdividing (at most twice) until the action is regular.
pub fn quotient_complex(action: &GroupAction) -> Result<Quotient, SymmetryError> {
    let mut current = action.clone();
    for subdivisions in 0..=MAX_SUBDIVISIONS {
        if current.is_regular() {
            let orbit_map = current.orbit_labels();
            let images: Vec<Vec<Vertex>> = current
                .complex()
                .iter()
                .map(|s| {
                    let mut t: Vec<Vertex> = s.iter().map(|v| orbit_map[v]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            let complex = SimplicialComplex::from_maximal(&images)?;
            return Ok(Quotient {
                action: current,
                complex,
                orbit_map,
                subdivisions,
            });
        }
        if subdivisions < MAX_SUBDIVISIONS {
            current = current.subdivided();
        }
    }
    Err(SymmetryError::RegularityUnachievable {
        subdivisions: MAX_SUBDIVISIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cohomology, models};

    pub(crate) fn hexagon_antipodal() -> GroupAction {
        GroupAction::from_generators(models::cycle(6), &[vec![3, 4, 5, 0, 1, 2]]).unwrap()
    }

    pub(crate) fn hexagon_reflection() -> GroupAction {
        GroupAction::from_generators(models::cycle(6), &[vec![0, 5, 4, 3, 2, 1]]).unwrap()
    }

    #[test]
    fn fixed_sets_on_hexagon() {
        let refl = hexagon_reflection();
        let fixed = refl.fixed_subcomplex(&[0, 1]).unwrap();
        assert_eq!(fixed.f_vector(), vec![2]);
        assert_eq!(fixed.vertices(), &[0, 3]);
        let anti = hexagon_antipodal();
        assert!(anti.fixed_subcomplex(&[0, 1]).unwrap().is_empty());
        assert_eq!(anti.fixed_subcomplex(&[0]).unwrap(), *anti.complex());
        assert!(matches!(anti.fixed_subcomplex(&[1]), Err(SymmetryError::NotASubgroup(_))));
        assert!(anti.is_free());
        assert!(!refl.is_free());
    }

    #[test]
    fn non_simplicial_map_rejected() {
        // swapping 0 and 2 on a path 0-1-2-3 sends the edge 2-3 to 0-3
        let path = SimplicialComplex::from_maximal(&[[0, 1], [1, 2], [2, 3]]).unwrap();
        assert!(matches!(
            GroupAction::from_generators(path, &[vec![2, 1, 0, 3]]),
            Err(SymmetryError::NotSimplicial { .. })
        ));
    }

    #[test]
    fn quotient_of_antipodal_hexagon_is_triangle() {
        let q = quotient_complex(&hexagon_antipodal()).unwrap();
        assert_eq!(q.subdivisions, 0);
        assert_eq!(q.complex.f_vector(), vec![3, 3]);
        assert_eq!(cohomology(&q.complex).betti, vec![1, 1]);
    }

    #[test]
    fn quotient_by_trivial_group_is_identical() {
        let k = models::simplex_boundary(2);
        let q = quotient_complex(&GroupAction::trivial(k.clone())).unwrap();
        assert_eq!(q.complex, k);
    }

    #[test]
    fn quotient_of_swapped_triangles() {
        let k = SimplicialComplex::from_maximal(&[[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        let a = GroupAction::from_generators(k, &[vec![3, 4, 5, 0, 1, 2]]).unwrap();
        let q = quotient_complex(&a).unwrap();
        assert_eq!(q.complex.f_vector(), vec![3, 3]);
    }

    #[test]
    fn reflection_needs_subdivision_for_quotient() {
        let q = quotient_complex(&hexagon_reflection()).unwrap();
        // the orbit space of a reflected circle is an arc
        assert_eq!(cohomology(&q.complex).betti, vec![1, 0]);
        let swap = GroupAction::from_generators(models::simplex_boundary(2), &[vec![1, 0, 2, 3]]).unwrap();
        let q = quotient_complex(&swap).unwrap();
        assert!(q.subdivisions >= 1);
        // a disc
        assert_eq!(cohomology(&q.complex).betti, vec![1, 0, 0]);
    }

    #[test]
    fn subdivision_makes_fixed_sets_honest() {
        let swap = GroupAction::from_generators(models::simplex_boundary(2), &[vec![1, 0, 2, 3]]).unwrap();
        assert!(swap.fixed_subcomplex(&[0, 1]).is_err());
        let sd = swap.subdivided();
        assert!(sd.setwise_fixed_is_pointwise());
        assert!(sd.is_order_preserving(1));
        let fixed = sd.fixed_subcomplex(&[0, 1]).unwrap();
        assert_eq!(fixed.f_vector(), vec![6, 6]);
        assert_eq!(cohomology(&fixed).betti, vec![1, 1]);
    }

    #[test]
    fn preimage_is_invariant() {
        for a in [hexagon_antipodal(), hexagon_reflection()] {
            let q = quotient_complex(&a).unwrap();
            let some: Vec<Vec<Vertex>> = q.complex.iter().step_by(2).map(<[Vertex]>::to_vec).collect();
            let pre = q.preimage(&some);
            for s in &pre {
                for g in q.action.group().elements() {
                    assert!(pre.contains(&q.action.act_simplex(g, s)));
                }
            }
        }
    }

    #[test]
    fn action_text_round_trip() {
        let a = hexagon_antipodal();
        let text = format!("# antipodal\n{}", a.to_text());
        let b = GroupAction::parse(models::cycle(6), &text).unwrap();
        assert_eq!(b.group().order(), 2);
        assert_eq!(b.vertex_map(1), a.vertex_map(1));
        assert!(matches!(
            GroupAction::parse(models::cycle(6), "g1: 3 4 5"),
            Err(SymmetryError::Parse { line: 1, .. })
        ));
    }
}
