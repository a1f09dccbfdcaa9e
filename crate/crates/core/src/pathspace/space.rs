//! Geometric model spaces with explicit metrics and geodesics.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::path::SampledPath;
use super::PathError;

/// Tolerance below which two sphere points count as antipodal for geodesics.
pub const ANTIPODAL_TOLERANCE: f64 = 1e-6;

/// A metric model space with constant-speed shortest paths.
pub trait Space: Send + Sync {
    type Point: Clone + std::fmt::Debug + PartialEq + Send + Sync;

    fn name(&self) -> String;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> f64;

    /// Constant-speed shortest path with `n ≥ 2` samples and exact endpoints.
    fn geodesic(&self, a: &Self::Point, b: &Self::Point, n: usize) -> Result<SampledPath<Self::Point>, PathError>;

    /// How far a point is from lying on the model (0 for exact points).
    fn membership_residual(&self, p: &Self::Point) -> f64;

    /// A deterministic set of about `r` well-spread sample points.
    fn grid(&self, r: usize) -> Vec<Self::Point>;

    /// A random point at distance at most about `h` from `p`.
    fn nudge(&self, p: &Self::Point, h: f64, rng: &mut ChaCha8Rng) -> Self::Point;

    /// Flat coordinates, used for reports and CSV output.
    fn coords(&self, p: &Self::Point) -> Vec<f64>;
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn normalize(mut a: Vec<f64>) -> Vec<f64> {
    let n = norm(&a);
    for x in &mut a {
        *x /= n;
    }
    a
}

pub(crate) fn neg(a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn chord(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Great-circle distance, computed from the chord for accuracy near 0 and π.
pub(crate) fn angle(a: &[f64], b: &[f64]) -> f64 {
    2.0 * (chord(a, b) / 2.0).min(1.0).asin()
}

/// Spherical linear interpolation between unit vectors.
pub(crate) fn slerp(a: &[f64], b: &[f64], n: usize) -> Result<SampledPath<Vec<f64>>, PathError> {
    if n < 2 {
        return Err(PathError::TooFewSamples(n));
    }
    let anti = chord(a, &neg(b));
    if anti < ANTIPODAL_TOLERANCE {
        return Err(PathError::GeodesicDegenerate { separation: anti });
    }
    let theta = angle(a, b);
    let mut pts = Vec::with_capacity(n);
    pts.push(a.to_vec());
    for i in 1..n - 1 {
        let s = i as f64 / (n - 1) as f64;
        let p: Vec<f64> = if theta < 1e-12 {
            a.to_vec()
        } else {
            let (wa, wb) = (((1.0 - s) * theta).sin(), (s * theta).sin());
            normalize(a.iter().zip(b).map(|(x, y)| wa * x + wb * y).collect())
        };
        pts.push(p);
    }
    pts.push(b.to_vec());
    SampledPath::new(pts)
}

/// Half great circle from `x` to `−x` leaving in the unit tangent direction `v`.
pub(crate) fn half_circle(x: &[f64], v: &[f64], n: usize) -> Result<SampledPath<Vec<f64>>, PathError> {
    if n < 2 {
        return Err(PathError::TooFewSamples(n));
    }
    let mut pts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / (n - 1) as f64;
            normalize(x.iter().zip(v).map(|(a, b)| t.cos() * a + t.sin() * b).collect())
        })
        .collect();
    pts[0] = x.to_vec();
    pts[n - 1] = neg(x);
    SampledPath::new(pts)
}

fn sphere_nudge(p: &[f64], h: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let d = p.len() as f64;
    let q: Vec<f64> = p.iter().map(|x| x + rng.gen_range(-h..=h) / d.sqrt()).collect();
    normalize(q)
}

/// Deterministic, antipodally symmetric point set on Sⁿ: the coordinate
/// vectors ±eᵢ followed by pairs ±p of well-spread points.
fn sphere_grid(dim: usize, r: usize) -> Vec<Vec<f64>> {
    let m = dim + 1;
    if dim == 1 {
        return (0..r.max(2))
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / r.max(2) as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
    }
    let mut pts = Vec::with_capacity(r);
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = 1.0;
        pts.push(e.clone());
        e[i] = -1.0;
        pts.push(e);
    }
    let pairs = r.saturating_sub(2 * m).div_ceil(2);
    if dim == 2 {
        // Fibonacci spiral on the upper half, mirrored
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        for k in 0..pairs {
            let z = 1.0 - (k as f64 + 0.5) / pairs as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * k as f64 + 0.3;
            let p = vec![rho * phi.cos(), rho * phi.sin(), z];
            pts.push(neg(&p));
            pts.push(p);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..pairs {
            let p = normalize((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
            pts.push(neg(&p));
            pts.push(p);
        }
    }
    pts
}

/// The unit sphere Sⁿ ⊂ ℝⁿ⁺¹ with the great-circle metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere {
    pub dim: usize,
}

impl Sphere {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "sphere dimension must be positive");
        Sphere { dim }
    }

    pub fn basis(&self, i: usize) -> Vec<f64> {
        let mut e = vec![0.0; self.dim + 1];
        e[i] = 1.0;
        e
    }
}

impl Space for Sphere {
    type Point = Vec<f64>;

    fn name(&self) -> String {
        format!("S^{}", self.dim)
    }

    fn dist(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        angle(a, b)
    }

    fn geodesic(&self, a: &Vec<f64>, b: &Vec<f64>, n: usize) -> Result<SampledPath<Vec<f64>>, PathError> {
        slerp(a, b, n)
    }

    fn membership_residual(&self, p: &Vec<f64>) -> f64 {
        if p.len() != self.dim + 1 {
            return f64::INFINITY;
        }
        (norm(p) - 1.0).abs()
    }

    fn grid(&self, r: usize) -> Vec<Vec<f64>> {
        sphere_grid(self.dim, r)
    }

    fn nudge(&self, p: &Vec<f64>, h: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        sphere_nudge(p, h, rng)
    }

    fn coords(&self, p: &Vec<f64>) -> Vec<f64> {
        p.clone()
    }
}

/// The closed upper hemisphere `{x ∈ Sⁿ : x₀ ≥ 0}`, the orbit space of the
/// reflection in the hyperplane `x₀ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hemisphere {
    pub dim: usize,
}

impl Hemisphere {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1);
        Hemisphere { dim }
    }

    pub fn pole(&self) -> Vec<f64> {
        Sphere::new(self.dim).basis(0)
    }
}

/// `(x₀, …) ↦ (|x₀|, …)`.
pub fn fold(x: &[f64]) -> Vec<f64> {
    let mut y = x.to_vec();
    y[0] = y[0].abs();
    y
}

impl Space for Hemisphere {
    type Point = Vec<f64>;

    fn name(&self) -> String {
        format!("D^{}", self.dim)
    }

    fn dist(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        angle(a, b)
    }

    fn geodesic(&self, a: &Vec<f64>, b: &Vec<f64>, n: usize) -> Result<SampledPath<Vec<f64>>, PathError> {
        slerp(a, b, n)
    }

    fn membership_residual(&self, p: &Vec<f64>) -> f64 {
        if p.len() != self.dim + 1 {
            return f64::INFINITY;
        }
        (norm(p) - 1.0).abs() + (-p[0]).max(0.0)
    }

    fn grid(&self, r: usize) -> Vec<Vec<f64>> {
        let mut pts: Vec<Vec<f64>> = Vec::new();
        for p in sphere_grid(self.dim, 2 * r) {
            let q = fold(&p);
            if !pts.iter().any(|x| chord(x, &q) < 1e-12) {
                pts.push(q);
            }
        }
        pts
    }

    fn nudge(&self, p: &Vec<f64>, h: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        fold(&sphere_nudge(p, h, rng))
    }

    fn coords(&self, p: &Vec<f64>) -> Vec<f64> {
        p.clone()
    }
}

/// The flat torus ℝⁿ / (p₁ℤ × … × pₙℤ) with coordinates in `[0, pᵢ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Torus {
    pub periods: Vec<f64>,
}

impl Torus {
    pub fn standard(dim: usize) -> Self {
        Torus {
            periods: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.periods.len()
    }

    /// Reduces a coordinate vector into the fundamental domain.
    pub fn wrap(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.periods)
            .map(|(&v, &p)| {
                let r = v.rem_euclid(p);
                if r >= p {
                    0.0
                } else {
                    r
                }
            })
            .collect()
    }

    /// Representative of `b − a` with each coordinate in `(−p/2, p/2]`.
    pub fn shortest_displacement(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter()
            .zip(b)
            .zip(&self.periods)
            .map(|((&x, &y), &p)| {
                let mut d = (y - x).rem_euclid(p);
                if d > p / 2.0 {
                    d -= p;
                }
                d
            })
            .collect()
    }

    /// Straight segment `a + s·d`, wrapped, with the given end point.
    pub fn segment(&self, a: &[f64], d: &[f64], end: &[f64], n: usize) -> Result<SampledPath<Vec<f64>>, PathError> {
        if n < 2 {
            return Err(PathError::TooFewSamples(n));
        }
        let mut pts: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                let x: Vec<f64> = a.iter().zip(d).map(|(x, dx)| x + s * dx).collect();
                self.wrap(&x)
            })
            .collect();
        pts[0] = a.to_vec();
        pts[n - 1] = end.to_vec();
        SampledPath::new(pts)
    }
}

impl Space for Torus {
    type Point = Vec<f64>;

    fn name(&self) -> String {
        format!("T^{}", self.dim())
    }

    fn dist(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        norm(&self.shortest_displacement(a, b))
    }

    fn geodesic(&self, a: &Vec<f64>, b: &Vec<f64>, n: usize) -> Result<SampledPath<Vec<f64>>, PathError> {
        let d = self.shortest_displacement(a, b);
        self.segment(a, &d, b, n)
    }

    fn membership_residual(&self, p: &Vec<f64>) -> f64 {
        if p.len() != self.dim() {
            return f64::INFINITY;
        }
        p.iter()
            .zip(&self.periods)
            .map(|(&x, &per)| (-x).max(0.0) + (x - per).max(0.0))
            .sum()
    }

    fn grid(&self, r: usize) -> Vec<Vec<f64>> {
        let n = self.dim();
        let k = (r as f64).powf(1.0 / n as f64).ceil().max(1.0) as usize;
        let mut pts = Vec::with_capacity(k.pow(n as u32));
        for flat in 0..k.pow(n as u32) {
            let mut rest = flat;
            let p: Vec<f64> = self
                .periods
                .iter()
                .map(|&per| {
                    let i = rest % k;
                    rest /= k;
                    per * (i as f64 + 0.25) / k as f64
                })
                .collect();
            pts.push(p);
        }
        pts
    }

    fn nudge(&self, p: &Vec<f64>, h: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let d = (self.dim() as f64).sqrt();
        let q: Vec<f64> = p.iter().map(|x| x + rng.gen_range(-h..=h) / d).collect();
        self.wrap(&q)
    }

    fn coords(&self, p: &Vec<f64>) -> Vec<f64> {
        p.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quarter_great_circle() {
        let s = Sphere::new(2);
        let p = s.geodesic(&s.basis(2), &s.basis(0), 64).unwrap();
        assert!((p.length(&s) - PI / 2.0).abs() < 1e-6);
        assert_eq!(p.start(), &s.basis(2));
        assert_eq!(p.end(), &s.basis(0));
        assert!(p.points().iter().all(|x| s.membership_residual(x) < 1e-9));
    }

    #[test]
    fn antipodal_geodesic_is_degenerate() {
        let s = Sphere::new(2);
        assert!(matches!(
            s.geodesic(&s.basis(0), &neg(&s.basis(0)), 8),
            Err(PathError::GeodesicDegenerate { .. })
        ));
    }

    #[test]
    fn constant_geodesic() {
        let s = Sphere::new(3);
        let x = normalize(vec![1.0, 2.0, 3.0, 4.0]);
        let p = s.geodesic(&x, &x, 10).unwrap();
        assert!(p.points().iter().all(|q| s.dist(q, &x) < 1e-12));
    }

    #[test]
    fn torus_wraps_around() {
        let t = Torus::standard(2);
        let (a, b) = (vec![0.1, 0.1], vec![0.9, 0.1]);
        // oracle: the shortest of the unwrapped representatives
        let oracle = [-1.0, 0.0, 1.0]
            .iter()
            .flat_map(|&i| [-1.0, 0.0, 1.0].map(move |j| ((0.9 + i - 0.1f64).powi(2) + (j as f64).powi(2)).sqrt()))
            .fold(f64::INFINITY, f64::min);
        assert!((t.dist(&a, &b) - oracle).abs() < 1e-12);
        let p = t.geodesic(&a, &b, 32).unwrap();
        assert!((p.length(&t) - 0.2).abs() < 1e-9);
    }

    #[test]
    fn torus_tie_breaks_towards_positive() {
        let t = Torus::standard(1);
        assert_eq!(t.shortest_displacement(&[0.0], &[0.5]), vec![0.5]);
    }

    #[test]
    fn grids_are_on_the_space() {
        let s = Sphere::new(2);
        let g = s.grid(32);
        assert_eq!(g.len(), 32);
        assert!(g.iter().all(|p| s.membership_residual(p) < 1e-12));
        for p in &g {
            assert!(g.iter().any(|q| chord(q, &neg(p)) < 1e-12), "grid is antipodally closed");
        }
        let h = Hemisphere::new(2);
        assert!(h.grid(16).iter().all(|p| h.membership_residual(p) < 1e-12));
        let t = Torus::standard(2);
        assert_eq!(t.grid(32).len(), 36);
    }
}
