//! Exact linear algebra over the two-element field.
//!
//! Vectors are stored sparsely as strictly increasing index lists; addition is
//! symmetric difference. Elimination uses the largest index of a vector as its
//! pivot, the same column-reduction scheme used for boundary matrices in
//! persistent homology, which keeps fill-in low on (co)boundary matrices.

use std::collections::HashMap;

/// A vector over F₂, stored as the sorted list of coordinates equal to one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<u32>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    /// Builds a vector from arbitrary indices; repeated indices cancel in pairs.
    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        let mut v: Vec<u32> = indices.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(v.len());
        for i in v {
            if out.last() == Some(&i) {
                out.pop();
            } else {
                out.push(i);
            }
        }
        SparseVec(out)
    }

    pub fn unit(i: u32) -> Self {
        SparseVec(vec![i])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pivot(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// `self += other` over F₂.
    pub fn add_assign(&mut self, other: &SparseVec) {
        if other.0.is_empty() {
            return;
        }
        let a = std::mem::take(&mut self.0);
        let b = &other.0;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.0 = out;
    }

    pub fn sum(&self, other: &SparseVec) -> SparseVec {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    /// Parity of the overlap, i.e. the F₂ dot product.
    pub fn dot(&self, other: &SparseVec) -> bool {
        let (mut i, mut j, mut parity) = (0, 0, false);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    parity = !parity;
                    i += 1;
                    j += 1;
                }
            }
        }
        parity
    }
}

/// Incremental echelon basis of a subspace.
///
/// Every stored vector carries a tag vector that records which labelled
/// generators it is a combination of. Reducing an arbitrary vector against the
/// basis returns the leftover residue together with the accumulated tag.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    pivots: HashMap<u32, usize>,
    rows: Vec<(SparseVec, SparseVec)>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` as far as possible, returning `(residue, tag)`.
    pub fn reduce(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        while let Some(p) = v.pivot() {
            match self.pivots.get(&p) {
                Some(&k) => {
                    v.add_assign(&self.rows[k].0);
                    tag.add_assign(&self.rows[k].1);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Inserts `v` with `tag`. Returns the residue if it was independent of the
    /// current basis, `None` otherwise.
    pub fn insert(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let (r, t) = self.reduce(v, tag);
        let p = r.pivot()?;
        self.pivots.insert(p, self.rows.len());
        self.rows.push((r.clone(), t));
        Some(r)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), SparseVec::new()).0.is_zero()
    }
}

/// A sparse F₂ matrix stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl F2Matrix {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.pivot().map_or(true, |p| (p as usize) < rows)));
        F2Matrix { rows, columns }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.columns[j].contains(i as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    /// Image of a vector of column coordinates.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for &j in v.indices() {
            out.add_assign(&self.columns[j as usize]);
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch");
        F2Matrix {
            rows: self.rows,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut r = Reducer::new();
        for c in &self.columns {
            r.insert(c.clone(), SparseVec::new());
        }
        r.rank()
    }

    /// Column reduction with bookkeeping: returns a basis of the image and a
    /// basis of the kernel (in column coordinates).
    pub fn image_and_kernel(&self) -> (Vec<SparseVec>, Vec<SparseVec>) {
        let mut reducer = Reducer::new();
        let mut kernel = Vec::new();
        let mut image = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            let (res, combo) = reducer.reduce(c.clone(), SparseVec::unit(j as u32));
            match res.pivot() {
                None => kernel.push(combo),
                Some(p) => {
                    reducer.pivots.insert(p, reducer.rows.len());
                    reducer.rows.push((res.clone(), combo));
                    image.push(res);
                }
            }
        }
        (image, kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_indices_cancels_pairs() {
        let v = SparseVec::from_indices([3, 1, 3, 2, 2, 2]);
        assert_eq!(v.indices(), &[1, 2]);
    }

    #[test]
    fn add_is_symmetric_difference() {
        let mut a = SparseVec::from_indices([0, 2, 5]);
        a.add_assign(&SparseVec::from_indices([2, 3]));
        assert_eq!(a.indices(), &[0, 3, 5]);
        assert!(a.dot(&SparseVec::from_indices([0, 5])) == false);
        assert!(a.dot(&SparseVec::from_indices([0])));
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        // columns e0+e1, e1+e2, e0+e2 are dependent (sum zero)
        let m = F2Matrix::from_columns(
            3,
            vec![
                SparseVec::from_indices([0, 1]),
                SparseVec::from_indices([1, 2]),
                SparseVec::from_indices([0, 2]),
            ],
        );
        assert_eq!(m.rank(), 2);
        let (img, ker) = m.image_and_kernel();
        assert_eq!(img.len(), 2);
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).is_zero());
        assert_eq!(ker[0].indices(), &[0, 1, 2]);
    }

    #[test]
    fn reducer_tags_track_combinations() {
        let mut r = Reducer::new();
        r.insert(SparseVec::from_indices([0, 1]), SparseVec::unit(0));
        r.insert(SparseVec::from_indices([1, 2]), SparseVec::unit(1));
        let (res, tag) = r.reduce(SparseVec::from_indices([0, 2]), SparseVec::new());
        assert!(res.is_zero());
        assert_eq!(tag.indices(), &[0, 1]);
    }
}
