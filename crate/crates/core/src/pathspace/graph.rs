//! Metric graphs: geometric realizations of one-dimensional complexes with
//! every edge of length one.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::path::SampledPath;
use super::space::Space;
use super::PathError;
use crate::complex::{SimplicialComplex, Vertex};

/// A point on the edge `a < b` at parameter `t ∈ (0, 1)` measured from `a`,
/// or the vertex `a` when `a == b` (then `t == 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct GraphPoint {
    pub a: Vertex,
    pub b: Vertex,
    pub t: f64,
}

impl GraphPoint {
    pub fn vertex(v: Vertex) -> Self {
        GraphPoint { a: v, b: v, t: 0.0 }
    }

    /// The point at parameter `t` from `a` towards `b`, in normal form.
    pub fn on_edge(a: Vertex, b: Vertex, t: f64) -> Self {
        if a == b || t <= 0.0 {
            GraphPoint::vertex(a)
        } else if t >= 1.0 {
            GraphPoint::vertex(b)
        } else if a < b {
            GraphPoint { a, b, t }
        } else {
            GraphPoint { a: b, b: a, t: 1.0 - t }
        }
    }

    pub fn is_vertex(&self) -> bool {
        self.a == self.b
    }

    /// Endpoints of the carrying edge with the distance to each.
    fn anchors(&self) -> Vec<(Vertex, f64)> {
        if self.is_vertex() {
            vec![(self.a, 0.0)]
        } else {
            vec![(self.a, self.t), (self.b, 1.0 - self.t)]
        }
    }

    /// Parameter of this point on the edge `(lo, hi)`, if it lies on it.
    fn param_on(&self, lo: Vertex, hi: Vertex) -> Option<f64> {
        if self.is_vertex() {
            if self.a == lo {
                Some(0.0)
            } else if self.a == hi {
                Some(1.0)
            } else {
                None
            }
        } else if (self.a, self.b) == (lo, hi) {
            Some(self.t)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct GraphSpace {
    complex: SimplicialComplex,
    edges: Vec<(Vertex, Vertex)>,
    dist: Vec<Vec<f64>>,
    next: Vec<Vec<usize>>,
    cycle: Option<Vec<Vertex>>,
}

impl GraphSpace {
    pub fn new(complex: SimplicialComplex) -> Result<Self, PathError> {
        if complex.is_empty() || complex.dimension() > 1 {
            return Err(PathError::NotAGraph);
        }
        let n = complex.num_vertices();
        let edges: Vec<(Vertex, Vertex)> = complex.simplices(1).iter().map(|e| (e[0], e[1])).collect();
        let mut dist = vec![vec![f64::INFINITY; n]; n];
        let mut next = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            dist[i][i] = 0.0;
            next[i][i] = i;
        }
        for &(a, b) in &edges {
            let (i, j) = (complex.vertex_position(a).unwrap(), complex.vertex_position(b).unwrap());
            dist[i][j] = 1.0;
            dist[j][i] = 1.0;
            next[i][j] = j;
            next[j][i] = i;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if dist[i][k] + dist[k][j] < dist[i][j] {
                        dist[i][j] = dist[i][k] + dist[k][j];
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        let cycle = cycle_order(&complex, &edges);
        Ok(GraphSpace {
            complex,
            edges,
            dist,
            next,
            cycle,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn total_length(&self) -> f64 {
        self.edges.len() as f64
    }

    fn pos(&self, v: Vertex) -> usize {
        self.complex.vertex_position(v).expect("vertex of the graph")
    }

    pub fn vertex_distance(&self, u: Vertex, w: Vertex) -> f64 {
        self.dist[self.pos(u)][self.pos(w)]
    }

    fn vertex_route(&self, u: Vertex, w: Vertex) -> Vec<Vertex> {
        let verts = self.complex.vertices();
        let (mut i, j) = (self.pos(u), self.pos(w));
        let mut route = vec![u];
        while i != j {
            i = self.next[i][j];
            route.push(verts[i]);
        }
        route
    }

    fn same_edge(p: &GraphPoint, q: &GraphPoint) -> Option<(Vertex, Vertex)> {
        if !p.is_vertex() && q.param_on(p.a, p.b).is_some() {
            Some((p.a, p.b))
        } else if !q.is_vertex() && p.param_on(q.a, q.b).is_some() {
            Some((q.a, q.b))
        } else {
            None
        }
    }

    /// The shortest route as a list of waypoints, consecutive ones sharing an
    /// edge, together with its length.
    fn route(&self, p: &GraphPoint, q: &GraphPoint) -> (Vec<GraphPoint>, f64) {
        let mut best: Option<(f64, Vertex, Vertex)> = None;
        for &(u, du) in &p.anchors() {
            for &(w, dw) in &q.anchors() {
                let d = du + self.vertex_distance(u, w) + dw;
                if best.map_or(true, |(b, _, _)| d < b - 1e-12) {
                    best = Some((d, u, w));
                }
            }
        }
        let (d, u, w) = best.expect("points have anchors");
        if let Some((lo, hi)) = Self::same_edge(p, q) {
            let direct = (p.param_on(lo, hi).unwrap() - q.param_on(lo, hi).unwrap()).abs();
            if direct <= d + 1e-12 {
                return (vec![p.clone(), q.clone()], direct);
            }
        }
        let mut way = vec![p.clone()];
        for v in self.vertex_route(u, w) {
            let gv = GraphPoint::vertex(v);
            if *way.last().unwrap() != gv {
                way.push(gv);
            }
        }
        if *way.last().unwrap() != *q {
            way.push(q.clone());
        }
        (way, d)
    }

    fn interpolate(a: &GraphPoint, b: &GraphPoint, f: f64) -> GraphPoint {
        let (lo, hi) = Self::same_edge(a, b).unwrap_or_else(|| (a.a.min(b.a), a.a.max(b.a)));
        let (ta, tb) = (a.param_on(lo, hi).unwrap_or(0.0), b.param_on(lo, hi).unwrap_or(1.0));
        GraphPoint::on_edge(lo, hi, ta + f * (tb - ta))
    }

    fn sample_route(&self, way: &[GraphPoint], n: usize) -> Result<SampledPath<GraphPoint>, PathError> {
        if n < 2 {
            return Err(PathError::TooFewSamples(n));
        }
        if way.len() == 1 {
            return SampledPath::constant(&way[0], n);
        }
        let lens: Vec<f64> = way.windows(2).map(|w| self.dist(&w[0], &w[1])).collect();
        let total: f64 = lens.iter().sum();
        let mut pts = Vec::with_capacity(n);
        pts.push(way[0].clone());
        for i in 1..n - 1 {
            let mut s = total * i as f64 / (n - 1) as f64;
            let mut k = 0;
            while k + 1 < lens.len() && s > lens[k] {
                s -= lens[k];
                k += 1;
            }
            let f = if lens[k] > 0.0 { (s / lens[k]).clamp(0.0, 1.0) } else { 0.0 };
            pts.push(Self::interpolate(&way[k], &way[k + 1], f));
        }
        pts.push(way[way.len() - 1].clone());
        SampledPath::new(pts)
    }

    /// Vertices in cyclic order when the graph is a single cycle, starting at
    /// the smallest vertex and continuing to its smaller neighbour.
    pub fn cycle_order(&self) -> Option<&[Vertex]> {
        self.cycle.as_deref()
    }

    /// Position `θ ∈ [0, m)` along the cycle.
    pub fn cycle_coordinate(&self, p: &GraphPoint) -> Option<f64> {
        let order = self.cycle.as_ref()?;
        let m = order.len();
        let at = |v: Vertex| order.iter().position(|&x| x == v).unwrap();
        if p.is_vertex() {
            return Some(at(p.a) as f64);
        }
        let (ia, ib) = (at(p.a), at(p.b));
        Some(if (ia + 1) % m == ib {
            ia as f64 + p.t
        } else {
            let theta = ib as f64 + (1.0 - p.t);
            if theta >= m as f64 {
                theta - m as f64
            } else {
                theta
            }
        })
    }

    pub fn point_at_coordinate(&self, theta: f64) -> Option<GraphPoint> {
        let order = self.cycle.as_ref()?;
        let m = order.len();
        let theta = theta.rem_euclid(m as f64);
        let i = (theta.floor() as usize).min(m - 1);
        Some(GraphPoint::on_edge(order[i], order[(i + 1) % m], theta - i as f64))
    }

    /// On a cycle, the path from `p` to `q` running in the positive direction.
    pub fn positive_path(&self, p: &GraphPoint, q: &GraphPoint, n: usize) -> Result<SampledPath<GraphPoint>, PathError> {
        if n < 2 {
            return Err(PathError::TooFewSamples(n));
        }
        let m = self.cycle.as_ref().ok_or(PathError::NotACycle)?.len() as f64;
        let (tp, tq) = (self.cycle_coordinate(p).unwrap(), self.cycle_coordinate(q).unwrap());
        let delta = (tq - tp).rem_euclid(m);
        let mut pts: Vec<GraphPoint> = (0..n)
            .map(|i| self.point_at_coordinate(tp + delta * i as f64 / (n - 1) as f64).unwrap())
            .collect();
        pts[0] = p.clone();
        pts[n - 1] = q.clone();
        SampledPath::new(pts)
    }
}

fn cycle_order(complex: &SimplicialComplex, edges: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
    let n = complex.num_vertices();
    if n < 3 || edges.len() != n {
        return None;
    }
    let mut nbrs: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        nbrs[complex.vertex_position(a)?].push(b);
        nbrs[complex.vertex_position(b)?].push(a);
    }
    if nbrs.iter().any(|v| v.len() != 2) {
        return None;
    }
    let start = complex.vertices()[0];
    let mut order = vec![start];
    let first = *nbrs[0].iter().min()?;
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        order.push(cur);
        let nb = &nbrs[complex.vertex_position(cur)?];
        let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = nxt;
        if order.len() > n {
            return None;
        }
    }
    (order.len() == n).then_some(order)
}

impl Space for GraphSpace {
    type Point = GraphPoint;

    fn name(&self) -> String {
        format!("graph({} vertices, {} edges)", self.complex.num_vertices(), self.edges.len())
    }

    fn dist(&self, p: &GraphPoint, q: &GraphPoint) -> f64 {
        let mut best = f64::INFINITY;
        for &(u, du) in &p.anchors() {
            for &(w, dw) in &q.anchors() {
                best = best.min(du + self.vertex_distance(u, w) + dw);
            }
        }
        if let Some((lo, hi)) = Self::same_edge(p, q) {
            best = best.min((p.param_on(lo, hi).unwrap() - q.param_on(lo, hi).unwrap()).abs());
        }
        best
    }

    fn geodesic(&self, p: &GraphPoint, q: &GraphPoint, n: usize) -> Result<SampledPath<GraphPoint>, PathError> {
        let (way, d) = self.route(p, q);
        if !d.is_finite() {
            return Err(PathError::Disconnected);
        }
        self.sample_route(&way, n)
    }

    fn membership_residual(&self, p: &GraphPoint) -> f64 {
        let ok = if p.is_vertex() {
            self.complex.vertex_position(p.a).is_some() && p.t == 0.0
        } else {
            self.complex.contains(&[p.a, p.b]) && p.t > 0.0 && p.t < 1.0
        };
        if ok {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn grid(&self, r: usize) -> Vec<GraphPoint> {
        if self.edges.is_empty() {
            return self.complex.vertices().iter().map(|&v| GraphPoint::vertex(v)).collect();
        }
        let total = self.total_length();
        let r = r.max(1);
        (0..r)
            .map(|i| {
                let s = total * i as f64 / r as f64;
                let k = (s.floor() as usize).min(self.edges.len() - 1);
                let (a, b) = self.edges[k];
                GraphPoint::on_edge(a, b, s - k as f64)
            })
            .collect()
    }

    fn nudge(&self, p: &GraphPoint, h: f64, rng: &mut ChaCha8Rng) -> GraphPoint {
        let step = rng.gen_range(-h..=h);
        if p.is_vertex() {
            let incident: Vec<&(Vertex, Vertex)> = self.edges.iter().filter(|e| e.0 == p.a || e.1 == p.a).collect();
            if incident.is_empty() {
                return p.clone();
            }
            let &(a, b) = incident[rng.gen_range(0..incident.len())];
            let other = if a == p.a { b } else { a };
            GraphPoint::on_edge(p.a, other, step.abs())
        } else {
            GraphPoint::on_edge(p.a, p.b, p.t + step)
        }
    }

    fn coords(&self, p: &GraphPoint) -> Vec<f64> {
        vec![p.a as f64, p.b as f64, p.t]
    }
}
