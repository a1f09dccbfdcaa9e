//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, HashMap};

use super::SymmetryError;

/// Largest group produced by closing a set of generators.
pub const CLOSURE_CAP: usize = 64;

/// A finite group on the elements `0..order`, with `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table against the group axioms (all triples for
    /// associativity) and builds the group.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, SymmetryError> {
        let n = table.len();
        if n == 0 {
            return Err(SymmetryError::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(SymmetryError::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(SymmetryError::NotAGroup(format!("entry {x} out of range in row {a}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| SymmetryError::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| SymmetryError::NotAGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(SymmetryError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n with element `i` standing for `i mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Closes a set of permutations of `0..m` under composition. Element 0 is
    /// the identity; the product `g·h` is the composite "apply h, then g".
    /// Returns the group and the permutation realizing each element.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>), SymmetryError> {
        let m = generators.first().map_or(0, Vec::len);
        for (i, g) in generators.iter().enumerate() {
            let mut seen = vec![false; m];
            if g.len() != m || g.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
                return Err(SymmetryError::NotAPermutation { element: i });
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let mut elements: Vec<Vec<usize>> = vec![(0..m).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            for s in generators {
                let p = compose(s, &elements[frontier]);
                if !index.contains_key(&p) {
                    if elements.len() == CLOSURE_CAP {
                        return Err(SymmetryError::GroupTooLarge { cap: CLOSURE_CAP });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            frontier += 1;
        }
        let table = elements
            .iter()
            .map(|g| elements.iter().map(|h| index[&compose(g, h)]).collect())
            .collect();
        Ok((Self::from_table(table)?, elements))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// A nonempty subset closed under the product is a subgroup (finite case).
    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&x| x < self.order())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// The subgroup generated by the given elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// All subgroups, each sorted, in a deterministic order (by size, then
    /// lexicographically). Every subgroup is the join of the cyclic subgroups it
    /// contains, so closing the cyclic subgroups under pairwise joins finds them all.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = self.elements().map(|g| self.generated(&[g])).collect();
        loop {
            let current: Vec<Vec<usize>> = all.iter().cloned().collect();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let gens: Vec<usize> = a.iter().chain(b).copied().collect();
                    if all.insert(self.generated(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn nontrivial_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups().into_iter().filter(|h| h.len() > 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
        let n = g.order();
        (1u32..(1 << n))
            .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s| g.is_subgroup(s))
            .collect()
    }

    #[test]
    fn cyclic_group_basics() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(4), 3);
        assert_eq!(g.subgroups().len(), 4);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]).is_err());
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(SymmetryError::NotAGroup(_))));
    }

    #[test]
    fn symmetric_group_from_permutations() {
        let (g, perms) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(perms[0], vec![0, 1, 2]);
        let subs = g.subgroups();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs.iter().cloned().collect::<BTreeSet<_>>(), brute_force_subgroups(&g));
    }

    #[test]
    fn klein_and_dihedral_subgroups_match_brute_force() {
        let (v4, _) = FiniteGroup::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(v4.subgroups().len(), 5);
        assert_eq!(v4.subgroups().into_iter().collect::<BTreeSet<_>>(), brute_force_subgroups(&v4));
        let (d4, _) = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.subgroups().len(), 10);
        assert_eq!(d4.subgroups().into_iter().collect::<BTreeSet<_>>(), brute_force_subgroups(&d4));
    }

    #[test]
    fn closure_cap_enforced() {
        // S_5 has 120 elements
        let r = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]]);
        assert!(matches!(r, Err(SymmetryError::GroupTooLarge { .. })));
    }

    #[test]
    fn non_permutation_rejected() {
        assert!(matches!(
            FiniteGroup::from_permutations(&[vec![0, 0, 1]]),
            Err(SymmetryError::NotAPermutation { element: 0 })
        ));
    }
}
