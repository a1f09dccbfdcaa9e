//! Exact lower bounds over F₂: effective zero-divisors, the cohomological
//! dimension criterion and the nilpotency of the orbit map's image.

use serde::Serialize;

use super::BoundsError;
use crate::complex::{cohomology, cup_length, cup_product, pullback, Cochain, CohomologySummary, Reducer, SimplicialComplex, SparseVec};
use crate::symmetry::{quotient_complex, saturated_diagonal, GroupAction, SaturatedDiagonal};

/// The F₂ cohomology ring of a complex, in the representative basis, with a
/// flat index over all degrees.
struct Ring {
    degree: Vec<usize>,
    /// `product[i][j]`: flat coordinates of `aᵢ ∪ aⱼ`.
    product: Vec<Vec<SparseVec>>,
}

impl Ring {
    fn new(k: &SimplicialComplex, coh: &CohomologySummary) -> Result<Self, BoundsError> {
        let reps: Vec<&Cochain> = coh.representatives.iter().flatten().collect();
        let offset: Vec<usize> = coh
            .representatives
            .iter()
            .scan(0, |acc, layer| {
                let o = *acc;
                *acc += layer.len();
                Some(o)
            })
            .collect();
        let dim = k.dimension().max(0) as usize;
        let mut product = Vec::with_capacity(reps.len());
        for a in &reps {
            let mut row = Vec::with_capacity(reps.len());
            for b in &reps {
                let d = a.degree() + b.degree();
                if d > dim {
                    row.push(SparseVec::new());
                    continue;
                }
                let c = coh.classify(k, &cup_product(k, a, b)?)?;
                row.push(SparseVec::from_indices(c.indices().iter().map(|&i| (offset[d] + i as usize) as u32)));
            }
            product.push(row);
        }
        Ok(Ring {
            degree: reps.iter().map(|c| c.degree()).collect(),
            product,
        })
    }

    fn rank(&self) -> usize {
        self.degree.len()
    }
}

/// Elements of `H*(X) ⊗ H*(X)` in the basis `aᵢ ⊗ aⱼ ↦ i·n + j`.
fn tensor_mul(ring: &Ring, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let n = ring.rank();
    let mut out = SparseVec::new();
    for &p in u.indices() {
        let (i, j) = (p as usize / n, p as usize % n);
        for &q in v.indices() {
            let (k, l) = (q as usize / n, q as usize % n);
            let (left, right) = (&ring.product[i][k], &ring.product[j][l]);
            for &a in left.indices() {
                for &b in right.indices() {
                    out.add_assign(&SparseVec::unit(a * n as u32 + b));
                }
            }
        }
    }
    out
}

/// Cup length of a subspace of a ring given by a multiplication closure.
fn algebraic_cup_length(base: &[SparseVec], mul: impl Fn(&SparseVec, &SparseVec) -> SparseVec) -> usize {
    let span = |vs: Vec<SparseVec>| {
        let mut r = Reducer::new();
        vs.into_iter().filter_map(|v| r.insert(v, SparseVec::new())).collect::<Vec<_>>()
    };
    let base = span(base.to_vec());
    if base.is_empty() {
        return 0;
    }
    let mut level = base.clone();
    let mut m = 1;
    loop {
        let products: Vec<SparseVec> = level.iter().flat_map(|x| base.iter().map(|v| mul(x, v))).collect();
        let next = span(products);
        if next.is_empty() {
            return m;
        }
        level = next;
        m += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroDivisorReport {
    /// Cup length of the kernel in positive degrees.
    pub cup_length: usize,
    /// Dimension of the kernel of `H^d(X×X) → H^d(ℸ)` for each `d`.
    pub kernel_dims: Vec<usize>,
    pub subdivisions: usize,
}

/// Kernel of the restriction to the saturated diagonal, in the tensor basis,
/// together with the cross-product cochains of the basis on the ambient product.
pub(crate) struct ZeroDivisors {
    pub diagonal: SaturatedDiagonal,
    pub kernel: Vec<SparseVec>,
    pub kernel_dims: Vec<usize>,
    pub crosses: Vec<Cochain>,
    ring: Ring,
}

impl ZeroDivisors {
    /// The kernel classes as cochains on the product triangulation.
    pub fn kernel_cochains(&self) -> Vec<Cochain> {
        let p = &self.diagonal.ambient.complex;
        self.kernel
            .iter()
            .map(|v| {
                let d = v.indices().first().map_or(0, |&i| self.crosses[i as usize].degree());
                v.indices().iter().fold(Cochain::zero(p, d), |acc, &i| acc.sum(&self.crosses[i as usize]))
            })
            .collect()
    }
}

pub(crate) fn zero_divisors(action: &GroupAction) -> Result<ZeroDivisors, BoundsError> {
    let diagonal = saturated_diagonal(action, None)?;
    let x = diagonal.action.complex().clone();
    let coh_x = cohomology(&x);
    let ring = Ring::new(&x, &coh_x)?;
    let p = &diagonal.ambient;
    let reps: Vec<&Cochain> = coh_x.representatives.iter().flatten().collect();
    let left: Vec<Cochain> = reps
        .iter()
        .map(|c| pullback(&p.complex, &x, |v| p.proj_left(v), c))
        .collect::<Result<_, _>>()?;
    let right: Vec<Cochain> = reps
        .iter()
        .map(|c| pullback(&p.complex, &x, |v| p.proj_right(v), c))
        .collect::<Result<_, _>>()?;
    let n = reps.len();
    let mut crosses = Vec::with_capacity(n * n);
    for a in &left {
        for b in &right {
            crosses.push(cup_product(&p.complex, a, b)?);
        }
    }
    let coh_d = cohomology(&diagonal.union);
    let top = 2 * x.dimension().max(0) as usize;
    let mut kernel = Vec::new();
    let mut kernel_dims = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let cols: Vec<usize> = (0..n * n).filter(|&i| ring.degree[i / n] + ring.degree[i % n] == d).collect();
        let mut r = Reducer::new();
        let mut dim = 0;
        for &i in &cols {
            let restricted = pullback(&diagonal.union, &p.complex, |v| v, &crosses[i])?;
            let image = if d < coh_d.betti.len() {
                coh_d.classify(&diagonal.union, &restricted)?
            } else {
                SparseVec::new()
            };
            let (res, combo) = r.reduce(image, SparseVec::unit(i as u32));
            if res.is_zero() {
                dim += 1;
                if d > 0 {
                    kernel.push(combo);
                }
            } else {
                r.insert(res, combo);
            }
        }
        kernel_dims.push(dim);
    }
    Ok(ZeroDivisors {
        diagonal,
        kernel,
        kernel_dims,
        crosses,
        ring,
    })
}

/// The same cup length with every product computed on the triangulation of
/// `X × X` itself. Much slower; used as an oracle for [`zero_divisor_cup_length`].
pub fn zero_divisor_cup_length_on_product(action: &GroupAction) -> Result<usize, BoundsError> {
    let z = zero_divisors(action)?;
    let p = &z.diagonal.ambient.complex;
    Ok(cup_length(p, &cohomology(p), &z.kernel_cochains())?)
}

/// Cup length of `ker(H*(X×X;F₂) → H*(ℸ(X);F₂))` in positive degrees, computed
/// in `H*(X) ⊗ H*(X)` with the Künneth cross-product basis.
pub fn zero_divisor_cup_length(action: &GroupAction) -> Result<ZeroDivisorReport, BoundsError> {
    let z = zero_divisors(action)?;
    let cup_length = algebraic_cup_length(&z.kernel, |u, v| tensor_mul(&z.ring, u, v));
    Ok(ZeroDivisorReport {
        cup_length,
        kernel_dims: z.kernel_dims,
        subdivisions: z.diagonal.subdivisions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedSetDimension {
    pub subgroup: Vec<usize>,
    pub cd: isize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionVerdict {
    Positive,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub verdict: CriterionVerdict,
    pub group_order: usize,
    pub cd: isize,
    pub fixed_sets: Vec<FixedSetDimension>,
    /// `cd(X^H) ≤ cd(X)` for every nontrivial subgroup `H`.
    pub hypothesis_holds: bool,
    pub reason: String,
}

impl CriterionReport {
    /// Lower bound for `tc^{G,2}` implied by the verdict.
    pub fn lower_bound(&self) -> usize {
        match self.verdict {
            CriterionVerdict::Positive => 1,
            CriterionVerdict::Inconclusive => 0,
        }
    }
}

fn fixed_set_dimensions(action: &GroupAction) -> Result<(isize, Vec<FixedSetDimension>), BoundsError> {
    let act = action.with_pointwise_fixed_simplices();
    let cd = cohomology(act.complex()).cd;
    let fixed = act
        .group()
        .nontrivial_subgroups()
        .into_iter()
        .map(|h| {
            let f = act.fixed_subcomplex(&h)?;
            Ok(FixedSetDimension {
                subgroup: h,
                cd: cohomology(&f).cd,
            })
        })
        .collect::<Result<Vec<_>, BoundsError>>()?;
    Ok((cd, fixed))
}

/// Positivity of `tc^{G,2}` from `|G| ≤ cd(X)` under the fixed-set hypothesis.
pub fn cd_positivity_criterion(action: &GroupAction) -> Result<CriterionReport, BoundsError> {
    let (cd, fixed_sets) = fixed_set_dimensions(action)?;
    let hypothesis_holds = fixed_sets.iter().all(|f| f.cd <= cd);
    let order = action.group().order();
    let (verdict, reason) = if !hypothesis_holds {
        (CriterionVerdict::Inconclusive, "some fixed set has larger cd than X".to_string())
    } else if order as isize <= cd {
        (CriterionVerdict::Positive, format!("|G| = {order} ≤ cd(X) = {cd}"))
    } else {
        (CriterionVerdict::Inconclusive, format!("|G| = {order} > cd(X) = {cd}"))
    };
    Ok(CriterionReport {
        verdict,
        group_order: order,
        cd,
        fixed_sets,
        hypothesis_holds,
        reason,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CdBoundStatus {
    Pass,
    Fail,
    HypothesisViolated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdBoundReport {
    pub elements: Vec<usize>,
    /// `cd(ℸ_L(X))`.
    pub lhs: isize,
    /// `cd(X) + |L| − 1`.
    pub rhs: isize,
    pub cd: isize,
    pub fixed_sets: Vec<FixedSetDimension>,
    pub subdivisions: usize,
    pub simplices: usize,
    pub status: CdBoundStatus,
}

/// Compares `cd(ℸ_L(X))` with `cd(X) + |L| − 1`, both exact over F₂.
/// `elements = None` takes `L = G`.
pub fn cd_bound_check(action: &GroupAction, elements: Option<&[usize]>) -> Result<CdBoundReport, BoundsError> {
    let (cd, fixed_sets) = fixed_set_dimensions(action)?;
    let diagonal = saturated_diagonal(action, elements)?;
    let lhs = cohomology(&diagonal.union).cd;
    let rhs = cd + diagonal.elements.len() as isize - 1;
    let status = if fixed_sets.iter().any(|f| f.cd > cd) {
        CdBoundStatus::HypothesisViolated
    } else if lhs <= rhs {
        CdBoundStatus::Pass
    } else {
        CdBoundStatus::Fail
    };
    Ok(CdBoundReport {
        elements: diagonal.elements.clone(),
        lhs,
        rhs,
        cd,
        fixed_sets,
        subdivisions: diagonal.subdivisions,
        simplices: diagonal.ambient.complex.len(),
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NilpotencyReport {
    pub nilpotency: usize,
    /// Rank of the image of `H^d(X/G) → H^d(X)` for each `d`.
    pub image_ranks: Vec<usize>,
    pub subdivisions: usize,
}

/// Cup length of the image of `H⁺(X/G;F₂) → H⁺(X;F₂)` under the orbit map.
pub fn orbit_nilpotency_lower_bound(action: &GroupAction) -> Result<NilpotencyReport, BoundsError> {
    let q = quotient_complex(action)?;
    let x = q.action.complex();
    let coh_x = cohomology(x);
    let coh_q = cohomology(&q.complex);
    let mut images = Vec::new();
    let mut image_ranks = vec![0; coh_x.betti.len()];
    for layer in coh_q.representatives.iter().skip(1) {
        let mut r = Reducer::new();
        for c in layer {
            let up = pullback(x, &q.complex, |v| q.project(v), c)?;
            if up.degree() < coh_x.betti.len() && r.insert(coh_x.classify(x, &up)?, SparseVec::new()).is_some() {
                image_ranks[up.degree()] += 1;
            }
            images.push(up);
        }
    }
    let nilpotency = crate::complex::cup_length(x, &coh_x, &images)?;
    Ok(NilpotencyReport {
        nilpotency,
        image_ranks,
        subdivisions: q.subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::models;

    fn torus() -> SimplicialComplex {
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

    fn hexagon(images: Vec<u32>) -> GroupAction {
        GroupAction::from_generators(models::cycle(6), &[images]).unwrap()
    }

    fn full_route(action: &GroupAction) -> usize {
        zero_divisor_cup_length_on_product(action).unwrap()
    }

    #[test]
    fn zero_divisors_of_trivial_actions() {
        let point = GroupAction::trivial(models::point());
        assert_eq!(zero_divisor_cup_length(&point).unwrap().cup_length, 0);
        let t2 = GroupAction::trivial(torus());
        let r = zero_divisor_cup_length(&t2).unwrap();
        assert_eq!(r.cup_length, 2);
        // kernel of the cup product map H*(T²)⊗H*(T²) → H*(T²): ranks 0, 2, 5, 4, 1 minus 1, 2, 1
        assert_eq!(r.kernel_dims, vec![0, 2, 5, 4, 1]);
        assert_eq!(full_route(&t2), 2);
        let s2 = GroupAction::trivial(models::simplex_boundary(2));
        assert_eq!(zero_divisor_cup_length(&s2).unwrap().cup_length, 1);
        assert_eq!(full_route(&s2), 1);
        let s1 = GroupAction::trivial(models::cycle(4));
        assert_eq!(zero_divisor_cup_length(&s1).unwrap().cup_length, 1);
    }

    #[test]
    fn zero_divisors_of_hexagon_actions() {
        let anti = hexagon(vec![3, 4, 5, 0, 1, 2]);
        let r = zero_divisor_cup_length(&anti).unwrap();
        assert_eq!(r.cup_length, 1);
        assert_eq!(r.kernel_dims, vec![0, 1, 1]);
        assert_eq!(full_route(&anti), 1);
        let refl = hexagon(vec![0, 5, 4, 3, 2, 1]);
        assert_eq!(zero_divisor_cup_length(&refl).unwrap().cup_length, full_route(&refl));
    }

    #[test]
    fn criterion_examples() {
        // octahedron with x₀ ↦ −x₀: fixed circle
        let oct = models::cross_polytope(2);
        let refl = GroupAction::from_generators(oct.clone(), &[vec![3, 1, 2, 0, 4, 5]]).unwrap();
        let r = cd_positivity_criterion(&refl).unwrap();
        assert_eq!(r.verdict, CriterionVerdict::Positive);
        assert_eq!(r.fixed_sets[0].cd, 1);
        let s1 = cd_positivity_criterion(&hexagon(vec![3, 4, 5, 0, 1, 2])).unwrap();
        assert_eq!(s1.verdict, CriterionVerdict::Inconclusive);
        assert_eq!(s1.fixed_sets[0].cd, -1);
        let triv = cd_positivity_criterion(&GroupAction::trivial(oct)).unwrap();
        assert_eq!(triv.verdict, CriterionVerdict::Positive);
        assert_eq!(triv.lower_bound(), 1);
        let pt = cd_positivity_criterion(&GroupAction::trivial(models::point())).unwrap();
        assert_eq!(pt.verdict, CriterionVerdict::Inconclusive);
    }

    #[test]
    fn cd_bound_examples() {
        let triv = cd_bound_check(&GroupAction::trivial(models::cycle(5)), None).unwrap();
        assert_eq!((triv.lhs, triv.rhs, triv.status), (1, 1, CdBoundStatus::Pass));
        let anti = cd_bound_check(&hexagon(vec![3, 4, 5, 0, 1, 2]), None).unwrap();
        assert_eq!((anti.lhs, anti.rhs, anti.status), (1, 2, CdBoundStatus::Pass));
        let refl = cd_bound_check(&hexagon(vec![0, 5, 4, 3, 2, 1]), None).unwrap();
        assert_eq!(refl.status, CdBoundStatus::Pass);
        let sub = cd_bound_check(&hexagon(vec![3, 4, 5, 0, 1, 2]), Some(&[0])).unwrap();
        assert_eq!((sub.lhs, sub.rhs), (1, 1));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(orbit_nilpotency_lower_bound(&GroupAction::trivial(models::point())).unwrap().nilpotency, 0);
        assert_eq!(orbit_nilpotency_lower_bound(&GroupAction::trivial(torus())).unwrap().nilpotency, 2);
        let anti = orbit_nilpotency_lower_bound(&hexagon(vec![3, 4, 5, 0, 1, 2])).unwrap();
        // the double cover of a circle kills H¹ over F₂
        assert_eq!(anti.nilpotency, 0);
        assert_eq!(anti.image_ranks, vec![0, 0]);
        let rot = GroupAction::from_generators(models::cycle(6), &[vec![2, 3, 4, 5, 0, 1]]).unwrap();
        // triple cover: degree 3 is odd, so H¹ survives
        assert_eq!(orbit_nilpotency_lower_bound(&rot).unwrap().image_ranks, vec![0, 1]);
    }
}
