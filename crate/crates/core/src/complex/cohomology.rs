//! Simplicial cochains, coboundaries, cohomology and cup products over F₂.

use std::collections::BTreeMap;

use super::linalg::{F2Matrix, Reducer, SparseVec};
use super::simplicial::{SimplicialComplex, Vertex};
use super::ComplexError;

/// An F₂-valued cochain: one bit per simplex of its degree, stored as the set
/// of simplex indices carrying a one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    len: usize,
    support: SparseVec,
}

impl Cochain {
    pub fn zero(k: &SimplicialComplex, degree: usize) -> Self {
        Cochain {
            degree,
            len: k.count(degree),
            support: SparseVec::new(),
        }
    }

    /// Cochain taking the value one on the listed simplex indices.
    pub fn from_support(k: &SimplicialComplex, degree: usize, support: SparseVec) -> Self {
        let len = k.count(degree);
        assert!(
            support.pivot().map_or(true, |p| (p as usize) < len),
            "support index out of range"
        );
        Cochain { degree, len, support }
    }

    /// Cochain taking the value one on the listed simplices.
    pub fn from_simplices<S: AsRef<[Vertex]>>(
        k: &SimplicialComplex,
        degree: usize,
        simplices: &[S],
    ) -> Result<Self, ComplexError> {
        let mut idx = Vec::with_capacity(simplices.len());
        for s in simplices {
            let s = s.as_ref();
            if s.len() != degree + 1 {
                return Err(ComplexError::DegreeMismatch {
                    expected: degree,
                    found: s.len().saturating_sub(1),
                });
            }
            let i = k.index_of(s).ok_or_else(|| ComplexError::UnknownSimplex(s.to_vec()))?;
            idx.push(i as u32);
        }
        Ok(Self::from_support(k, degree, SparseVec::from_indices(idx)))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of degree-d simplices, i.e. the length of the coefficient vector.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn support(&self) -> &SparseVec {
        &self.support
    }

    pub fn value(&self, simplex_index: usize) -> bool {
        self.support.contains(simplex_index as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_zero()
    }

    pub fn sum(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.len, other.len);
        Cochain {
            degree: self.degree,
            len: self.len,
            support: self.support.sum(&other.support),
        }
    }

    fn check_on(&self, k: &SimplicialComplex) -> Result<(), ComplexError> {
        if self.len != k.count(self.degree) {
            return Err(ComplexError::CochainLength {
                degree: self.degree,
                expected: k.count(self.degree),
                found: self.len,
            });
        }
        Ok(())
    }
}

fn facets(s: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (0..s.len()).map(move |skip| {
        s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
    })
}

/// Matrix of δ: Cᵈ → Cᵈ⁺¹. Rows are (d+1)-simplices, columns d-simplices.
pub fn coboundary_matrix(k: &SimplicialComplex, d: usize) -> Result<F2Matrix, ComplexError> {
    if d as isize > k.dimension() {
        return Err(ComplexError::DegreeOutOfRange {
            degree: d,
            dimension: k.dimension(),
        });
    }
    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); k.count(d)];
    for (row, tau) in k.simplices(d + 1).iter().enumerate() {
        for face in facets(tau) {
            let j = k.index_of(&face).expect("complex is closed under faces");
            columns[j].push(row as u32);
        }
    }
    let columns = columns.into_iter().map(SparseVec::from_indices).collect();
    Ok(F2Matrix::from_columns(k.count(d + 1), columns))
}

/// δc, computed directly from the cofaces of the support.
pub fn coboundary(k: &SimplicialComplex, c: &Cochain) -> Cochain {
    let d = c.degree;
    let mut hits = Vec::new();
    for (row, tau) in k.simplices(d + 1).iter().enumerate() {
        let parity = facets(tau)
            .filter(|f| c.value(k.index_of(f).expect("closed under faces")))
            .count()
            % 2;
        if parity == 1 {
            hits.push(row as u32);
        }
    }
    Cochain::from_support(k, d + 1, SparseVec::from_indices(hits))
}

pub fn is_cocycle(k: &SimplicialComplex, c: &Cochain) -> bool {
    coboundary(k, c).is_zero()
}

/// F₂ cohomology of a finite complex with chosen representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologySummary {
    /// F₂-Betti numbers, indexed by degree `0..=dimension`.
    pub betti: Vec<usize>,
    /// Representative cocycles; `representatives[d][i]` is the i-th basis class.
    pub representatives: Vec<Vec<Cochain>>,
    /// Largest degree with nonzero cohomology; −1 for the empty complex.
    pub cd: isize,
    reducers: Vec<Reducer>,
}

impl CohomologySummary {
    pub fn betti(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.betti.iter().sum()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn classify(&self, k: &SimplicialComplex, c: &Cochain) -> Result<SparseVec, ComplexError> {
        c.check_on(k)?;
        if !is_cocycle(k, c) {
            return Err(ComplexError::NotACocycle { degree: c.degree });
        }
        Ok(self.classify_cocycle(c))
    }

    /// As [`classify`](Self::classify) without the cocycle check.
    pub(crate) fn classify_cocycle(&self, c: &Cochain) -> SparseVec {
        match self.reducers.get(c.degree) {
            None => SparseVec::new(),
            Some(r) => {
                let (res, tag) = r.reduce(c.support.clone(), SparseVec::new());
                debug_assert!(res.is_zero(), "cocycle did not reduce against Z^d basis");
                tag
            }
        }
    }

    pub fn is_coboundary(&self, k: &SimplicialComplex, c: &Cochain) -> Result<bool, ComplexError> {
        Ok(self.classify(k, c)?.is_zero())
    }

    /// Cocycle representing the given coordinate vector in degree `d`.
    pub fn class_representative(&self, k: &SimplicialComplex, d: usize, coords: &SparseVec) -> Cochain {
        let mut c = Cochain::zero(k, d);
        for &i in coords.indices() {
            c = c.sum(&self.representatives[d][i as usize]);
        }
        c
    }
}

/// Cohomology with F₂ coefficients: Betti numbers, representative cocycles and
/// cohomological dimension.
pub fn cohomology(k: &SimplicialComplex) -> CohomologySummary {
    let dim = k.dimension();
    if dim < 0 {
        return CohomologySummary {
            betti: vec![],
            representatives: vec![],
            cd: -1,
            reducers: vec![],
        };
    }
    let dim = dim as usize;
    let mut images: Vec<Vec<SparseVec>> = Vec::with_capacity(dim + 1);
    let mut kernels: Vec<Vec<SparseVec>> = Vec::with_capacity(dim + 1);
    for d in 0..=dim {
        let m = coboundary_matrix(k, d).expect("degree within range");
        let (img, ker) = m.image_and_kernel();
        images.push(img);
        kernels.push(ker);
    }
    let mut betti = Vec::with_capacity(dim + 1);
    let mut reps = Vec::with_capacity(dim + 1);
    let mut reducers = Vec::with_capacity(dim + 1);
    for d in 0..=dim {
        let mut r = Reducer::new();
        if d > 0 {
            for b in &images[d - 1] {
                r.insert(b.clone(), SparseVec::new());
            }
        }
        let mut layer = Vec::new();
        for z in &kernels[d] {
            let label = layer.len() as u32;
            let (res, _) = r.reduce(z.clone(), SparseVec::new());
            if !res.is_zero() {
                // the stored row is exactly the representative, so its tag is its own label
                r.insert(res.clone(), SparseVec::unit(label));
                layer.push(Cochain::from_support(k, d, res));
            }
        }
        betti.push(layer.len());
        reps.push(layer);
        reducers.push(r);
    }
    let cd = betti.iter().rposition(|&b| b > 0).map_or(0, |d| d as isize);
    CohomologySummary {
        betti,
        representatives: reps,
        cd,
        reducers,
    }
}

/// Cup product by the front-face/back-face rule relative to the vertex order.
///
/// If the degree sum exceeds the dimension the zero cochain is returned.
pub fn cup_product(k: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<Cochain, ComplexError> {
    a.check_on(k)?;
    b.check_on(k)?;
    let (p, q) = (a.degree, b.degree);
    let n = p + q;
    let mut hits = Vec::new();
    if !a.is_zero() && !b.is_zero() {
        for (i, s) in k.simplices(n).iter().enumerate() {
            let front = k.index_of(&s[..=p]).expect("closed under faces");
            if !a.value(front) {
                continue;
            }
            let back = k.index_of(&s[p..]).expect("closed under faces");
            if b.value(back) {
                hits.push(i as u32);
            }
        }
    }
    Ok(Cochain::from_support(k, n, SparseVec::from_indices(hits)))
}

/// Keeps the cochains whose classes are nonzero and linearly independent of
/// the classes kept before them (per degree).
fn independent_classes(coh: &CohomologySummary, cochains: Vec<Cochain>) -> Vec<Cochain> {
    let mut per_degree: BTreeMap<usize, Reducer> = BTreeMap::new();
    let mut kept = Vec::new();
    for c in cochains {
        let coords = coh.classify_cocycle(&c);
        if coords.is_zero() {
            continue;
        }
        let r = per_degree.entry(c.degree).or_default();
        if r.insert(coords, SparseVec::new()).is_some() {
            kept.push(c);
        }
    }
    kept
}

/// Cup length of a set of positive-degree classes: the largest `m` such that
/// some `m`-fold product of classes from their span is nonzero in cohomology.
pub fn cup_length(
    k: &SimplicialComplex,
    coh: &CohomologySummary,
    subspace: &[Cochain],
) -> Result<usize, ComplexError> {
    for c in subspace {
        c.check_on(k)?;
        if c.degree == 0 {
            return Err(ComplexError::NonPositiveDegree);
        }
        if !is_cocycle(k, c) {
            return Err(ComplexError::NotACocycle { degree: c.degree });
        }
    }
    let base = independent_classes(coh, subspace.to_vec());
    if base.is_empty() {
        return Ok(0);
    }
    let dim = k.dimension().max(0) as usize;
    let mut level = base.clone();
    let mut m = 1;
    loop {
        let mut products = Vec::new();
        for x in &level {
            for v in &base {
                if x.degree + v.degree > dim {
                    continue;
                }
                products.push(cup_product(k, x, v)?);
            }
        }
        let next = independent_classes(coh, products);
        if next.is_empty() {
            return Ok(m);
        }
        level = next;
        m += 1;
    }
}

/// Pulls a cochain back along a vertex map. A simplex whose image is
/// degenerate (repeated vertices) gets value zero.
pub fn pullback(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: impl Fn(Vertex) -> Vertex,
    c: &Cochain,
) -> Result<Cochain, ComplexError> {
    c.check_on(target)?;
    let d = c.degree;
    let mut hits = Vec::new();
    for (i, s) in source.simplices(d).iter().enumerate() {
        let mut image: Vec<Vertex> = s.iter().map(|&v| vertex_map(v)).collect();
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let j = target
            .index_of(&image)
            .ok_or_else(|| ComplexError::UnknownSimplex(image.clone()))?;
        if c.value(j) {
            hits.push(i as u32);
        }
    }
    Ok(Cochain::from_support(source, d, SparseVec::from_indices(hits)))
}

/// Restriction of a cochain on `k` to a subcomplex `sub`.
pub fn restrict(k: &SimplicialComplex, sub: &SimplicialComplex, c: &Cochain) -> Result<Cochain, ComplexError> {
    pullback(sub, k, |v| v, c)
}

#[cfg(test)]
mod tests {
    use super::super::simplicial::models::*;
    use super::*;

    /// Independent oracle: dense Gaussian elimination on boolean rows.
    fn dense_rank(m: &F2Matrix) -> usize {
        let mut rows: Vec<Vec<bool>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m.get(i, j)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.ncols() {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r][col] {
                        let pivot = rows[rank].clone();
                        for (x, y) in rows[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
        let dim = k.dimension() as usize;
        let ranks: Vec<usize> = (0..=dim).map(|d| dense_rank(&coboundary_matrix(k, d).unwrap())).collect();
        (0..=dim)
            .map(|d| k.count(d) - ranks[d] - if d > 0 { ranks[d - 1] } else { 0 })
            .collect()
    }

    fn torus() -> SimplicialComplex {
        // 3x3 grid with opposite sides identified, staircase diagonals
        let mut tris = Vec::new();
        for i in 0..3u32 {
            for j in 0..3u32 {
                let v = |a: u32, b: u32| (a % 3) * 3 + (b % 3);
                tris.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
                tris.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
            }
        }
        SimplicialComplex::from_maximal(&tris).unwrap()
    }

    #[test]
    fn circle_betti_and_rank() {
        let s1 = cycle(3);
        let m = coboundary_matrix(&s1, 0).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (3, 3));
        assert_eq!(m.rank(), 2);
        assert_eq!(dense_rank(&m), 2);
        let h = cohomology(&s1);
        assert_eq!(h.betti, vec![1, 1]);
        assert_eq!(h.betti, betti_oracle(&s1));
        assert_eq!(h.cd, 1);
    }

    #[test]
    fn point_betti() {
        let h = cohomology(&point());
        assert_eq!(h.betti, vec![1]);
        assert_eq!(h.cd, 0);
        let m = coboundary_matrix(&point(), 0).unwrap();
        assert_eq!(m.nrows(), 0);
    }

    #[test]
    fn sphere_betti_and_ranks() {
        let s2 = simplex_boundary(2);
        assert_eq!(coboundary_matrix(&s2, 1).unwrap().rank(), 3);
        assert_eq!(dense_rank(&coboundary_matrix(&s2, 1).unwrap()), 3);
        let h = cohomology(&s2);
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert_eq!(h.betti, betti_oracle(&s2));
        assert_eq!(h.cd, 2);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(
            coboundary_matrix(&cycle(3), 2),
            Err(ComplexError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn torus_and_two_circles() {
        let t = torus();
        assert_eq!(t.f_vector(), vec![9, 27, 18]);
        assert_eq!(cohomology(&t).betti, vec![1, 2, 1]);
        assert_eq!(betti_oracle(&t), vec![1, 2, 1]);
        let two = SimplicialComplex::from_maximal(&[[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert_eq!(cohomology(&two).betti, vec![2, 2]);
        assert_eq!(betti_oracle(&two), vec![2, 2]);
    }

    #[test]
    fn cup_product_on_torus_is_nonzero() {
        let t = torus();
        let h = cohomology(&t);
        let (a, b) = (&h.representatives[1][0], &h.representatives[1][1]);
        let ab = cup_product(&t, a, b).unwrap();
        assert!(is_cocycle(&t, &ab));
        assert!(!h.is_coboundary(&t, &ab).unwrap());
        // brute force over all pairs: some product is nonzero, squares vanish
        let nonzero = h.representatives[1]
            .iter()
            .flat_map(|x| h.representatives[1].iter().map(move |y| (x, y)))
            .filter(|(x, y)| !h.is_coboundary(&t, &cup_product(&t, x, y).unwrap()).unwrap())
            .count();
        assert_eq!(nonzero, 2);
        assert_eq!(cup_length(&t, &h, &h.representatives[1]).unwrap(), 2);
    }

    #[test]
    fn zero_cochain_cups_to_zero() {
        let t = torus();
        let h = cohomology(&t);
        let z = Cochain::zero(&t, 1);
        assert!(cup_product(&t, &z, &h.representatives[1][0]).unwrap().is_zero());
    }

    #[test]
    fn degree_overflow_gives_zero_cochain() {
        let s1 = cycle(3);
        let h = cohomology(&s1);
        let a = &h.representatives[1][0];
        let sq = cup_product(&s1, a, a).unwrap();
        assert_eq!(sq.degree(), 2);
        assert!(sq.is_zero());
        assert_eq!(sq.len(), 0);
    }

    #[test]
    fn sphere_products_and_lengths() {
        let s2 = simplex_boundary(2);
        let h = cohomology(&s2);
        assert_eq!(cup_length(&s2, &h, &h.representatives[2]).unwrap(), 1);
        assert_eq!(cup_length(&s2, &h, &[]).unwrap(), 0);
        // every degree-1 cocycle is a coboundary, so products are too
        let m = coboundary_matrix(&s2, 1).unwrap();
        let (_, ker) = m.image_and_kernel();
        for x in &ker {
            for y in &ker {
                let xc = Cochain::from_support(&s2, 1, x.clone());
                let yc = Cochain::from_support(&s2, 1, y.clone());
                assert!(h.is_coboundary(&s2, &cup_product(&s2, &xc, &yc).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn cup_length_rejects_non_cocycles() {
        let s1 = cycle(3);
        let h = cohomology(&s1);
        let bad = Cochain::from_simplices(&s1, 0, &[[0]]).unwrap();
        assert!(matches!(cup_length(&s1, &h, &[bad]), Err(ComplexError::NonPositiveDegree)));
        let t = torus();
        let ht = cohomology(&t);
        let not_closed = Cochain::from_simplices(&t, 1, &[[0, 1]]).unwrap();
        assert!(matches!(
            cup_length(&t, &ht, &[not_closed]),
            Err(ComplexError::NotACocycle { .. })
        ));
    }

    #[test]
    fn cone_is_acyclic() {
        let k = SimplicialComplex::from_maximal(&[[0, 1, 9], [1, 2, 9], [2, 0, 9], [3, 4, 9]]).unwrap();
        assert_eq!(cohomology(&k).betti, vec![1, 0, 0]);
    }
}
