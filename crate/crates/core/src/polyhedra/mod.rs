//! Exact half-space polytopes.
//!
//! Vertices are found by solving every `n x n` subsystem of facet hyperplanes
//! and keeping the feasible solutions; every feasible basic solution of a
//! pointed polyhedron is a vertex, so no extra extremality test is needed.
//! All certification (latticeness, simplicity, smoothness, volume) runs on
//! `BigRational` with no tolerance.

mod export;
pub(crate) mod linalg;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{primitive_integer_vector, to_pq, Point, Rational};

pub use export::{vertices_to_json, vertices_to_off};
use linalg::{combinations, det, gcd_of_maximal_minors, kernel_vector, rank, solve_square};

/// Default limit on the number of integer candidates scanned by
/// [`HPolytope::lattice_points`].
pub const DEFAULT_LATTICE_CAP: u128 = 100_000_000;

/// `{ x : normal . x <= bound }`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    normal: Vec<BigInt>,
    normal_q: Vec<Rational>,
    bound: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<BigInt>, bound: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::Domain("half-space with zero normal".into()));
        }
        let normal_q = normal.iter().cloned().map(Rational::from_integer).collect();
        Ok(Halfspace {
            normal,
            normal_q,
            bound,
        })
    }

    pub fn from_i64(normal: &[i64], bound: Rational) -> Result<Self> {
        Self::new(normal.iter().map(|&a| BigInt::from(a)).collect(), bound)
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.normal_q
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.bound
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.bound
    }

    /// Image under the linear coordinate map `x -> y` with `y_i = sign * x_{perm[i]}`.
    fn transform(&self, perm: &[usize], sign: i64) -> Halfspace {
        // a.x <= b with x_{perm[i]} = sign * y_i  =>  sum_i sign * a_{perm[i]} y_i <= b
        let normal = perm.iter().map(|&p| &self.normal[p] * sign).collect();
        Halfspace::new(normal, self.bound.clone()).expect("nonzero normal stays nonzero")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    /// Set when boundedness is guaranteed by construction (e.g. twisted cubes).
    bounded_by_construction: bool,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        for h in &halfspaces {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.dim(),
                });
            }
        }
        Ok(HPolytope {
            dim,
            halfspaces,
            bounded_by_construction: false,
        })
    }

    pub(crate) fn new_bounded(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        let mut p = Self::new(dim, halfspaces)?;
        p.bounded_by_construction = true;
        Ok(p)
    }

    /// The box `prod [lo_i, hi_i]`.
    pub fn axis_box(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        let n = lo.len();
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            hs.push(Halfspace::from_i64(&e, hi[i].clone())?);
            e[i] = -1;
            hs.push(Halfspace::from_i64(&e, -lo[i].clone())?);
        }
        Self::new_bounded(n, hs)
    }

    pub fn unit_cube(n: usize) -> Self {
        let lo = vec![Rational::zero(); n];
        let hi = vec![Rational::one(); n];
        Self::axis_box(&lo, &hi).expect("matching lengths")
    }

    /// `conv{0, e_1, ..., e_n}`.
    pub fn standard_simplex(n: usize) -> Self {
        let mut hs = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = -1;
            hs.push(Halfspace::from_i64(&e, Rational::zero()).unwrap());
        }
        if n > 0 {
            hs.push(Halfspace::from_i64(&vec![1; n], Rational::one()).unwrap());
        }
        Self::new_bounded(n, hs).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.halfspaces.iter().all(|h| h.contains(x)))
    }

    /// True iff every point of `v` satisfies every half-space of `self`.
    pub fn contains_polytope(&self, v: &VertexSet) -> Result<bool> {
        for p in v.points() {
            if !self.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `k * P`.
    pub fn dilate(&self, k: &Rational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::Domain("dilation factor must be positive".into()));
        }
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), &h.bound * k))
            .collect::<Result<Vec<_>>>()?;
        Ok(HPolytope {
            dim: self.dim,
            halfspaces: hs,
            bounded_by_construction: self.bounded_by_construction,
        })
    }

    /// `{ x : (x_n, ..., x_1) in P }`
    pub fn reverse_coords(&self) -> Self {
        let perm: Vec<usize> = (0..self.dim).rev().collect();
        self.map_coords(&perm, 1)
    }

    /// `{ x : -x in P }`
    pub fn negate_coords(&self) -> Self {
        let perm: Vec<usize> = (0..self.dim).collect();
        self.map_coords(&perm, -1)
    }

    fn map_coords(&self, perm: &[usize], sign: i64) -> Self {
        HPolytope {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| h.transform(perm, sign))
                .collect(),
            bounded_by_construction: self.bounded_by_construction,
        }
    }

    fn normal_rows(&self) -> Vec<Vec<Rational>> {
        self.halfspaces.iter().map(|h| h.normal_q.clone()).collect()
    }

    /// Exact vertex set. Errors with a recession direction when the system is
    /// not bounded.
    pub fn vertices(&self) -> Result<VertexSet> {
        let n = self.dim;
        if n == 0 {
            let feasible = self.halfspaces.is_empty();
            let points = if feasible {
                vec![Vec::new()]
            } else {
                Vec::new()
            };
            return Ok(VertexSet::from_points(points));
        }
        let rows = self.normal_rows();
        if !self.bounded_by_construction && rank(&rows) < n {
            let ray = kernel_vector(&rows, n).expect("rank deficient system has a kernel");
            return Err(unbounded(&ray));
        }
        let subsets: Vec<Vec<usize>> = combinations(self.halfspaces.len(), n).collect();
        let found: BTreeSet<Point> = subsets
            .par_iter()
            .filter_map(|idx| {
                let a: Vec<Vec<Rational>> = idx.iter().map(|&i| rows[i].clone()).collect();
                let b: Vec<Rational> = idx
                    .iter()
                    .map(|&i| self.halfspaces[i].bound.clone())
                    .collect();
                let x = solve_square(&a, &b)?;
                self.halfspaces.iter().all(|h| h.contains(&x)).then_some(x)
            })
            .collect();
        if !found.is_empty() && !self.bounded_by_construction {
            if let Some(ray) = self.recession_ray(&rows) {
                return Err(unbounded(&ray));
            }
        }
        Ok(VertexSet::from_points(found.into_iter().collect()))
    }

    /// An extreme ray of `{ d : A d <= 0 }` when the normals have full rank.
    fn recession_ray(&self, rows: &[Vec<Rational>]) -> Option<Vec<Rational>> {
        let n = self.dim;
        for idx in combinations(rows.len(), n - 1) {
            let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| rows[i].clone()).collect();
            if rank(&sub) != n - 1 {
                continue;
            }
            let d = kernel_vector(&sub, n)?;
            for cand in [d.clone(), d.iter().map(|x| -x).collect::<Vec<_>>()] {
                let ok = rows.iter().all(|r| {
                    let v: Rational = r.iter().zip(&cand).map(|(a, b)| a * b).sum();
                    !v.is_positive()
                });
                if ok {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// All integer points, scanning the integer bounding box with
    /// interval pruning. Fails if the box holds more than `cap` candidates.
    pub fn lattice_points_capped(&self, cap: u128) -> Result<Vec<Vec<i64>>> {
        let v = self.vertices()?;
        if v.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.dim;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for p in v.points() {
            for i in 0..n {
                lo[i] = lo[i].min(to_i64(&p[i].ceil())?);
                hi[i] = hi[i].max(to_i64(&p[i].floor())?);
            }
        }
        let mut volume: u128 = 1;
        for i in 0..n {
            if hi[i] < lo[i] {
                return Ok(Vec::new());
            }
            volume = volume.saturating_mul((hi[i] - lo[i] + 1) as u128);
        }
        if volume > cap {
            return Err(Error::Resource {
                what: "lattice-point bounding box".into(),
                requested: volume,
                cap,
            });
        }
        let rows: Vec<(Vec<i64>, Rational)> = self
            .halfspaces
            .iter()
            .map(|h| {
                let a = h
                    .normal
                    .iter()
                    .map(|x| x.to_i64().expect("small normal"))
                    .collect();
                (a, h.bound.clone())
            })
            .collect();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        scan_box(&rows, &lo, &hi, 0, &mut x, &mut out);
        Ok(out)
    }

    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        self.lattice_points_capped(DEFAULT_LATTICE_CAP)
    }

    /// Facet description of `conv(points)` for a full-dimensional point set.
    pub fn from_vertices(v: &VertexSet) -> Result<Self> {
        let n = v.ambient_dim();
        let pts = v.points();
        let d = v.affine_dim();
        if pts.is_empty() || d < n {
            return Err(Error::LowerDimensional {
                affine_dim: d,
                ambient: n,
                what: "facet description needs a full-dimensional point set".into(),
            });
        }
        let mut seen = BTreeSet::new();
        let mut hs = Vec::new();
        for idx in combinations(pts.len(), n) {
            let base = &pts[idx[0]];
            let diffs: Vec<Vec<Rational>> = idx[1..]
                .iter()
                .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            if rank(&diffs) != n - 1 {
                continue;
            }
            let normal = primitive_integer_vector(&kernel_vector(&diffs, n).unwrap());
            let nq: Vec<Rational> = normal.iter().cloned().map(Rational::from_integer).collect();
            let dot = |p: &Point| -> Rational { nq.iter().zip(p).map(|(a, b)| a * b).sum() };
            let b = dot(base);
            let (mut le, mut ge) = (true, true);
            for p in pts {
                let val = dot(p);
                le &= val <= b;
                ge &= val >= b;
            }
            let h = if le {
                Halfspace::new(normal, b)?
            } else if ge {
                Halfspace::new(normal.iter().map(|x| -x).collect(), -b)?
            } else {
                continue;
            };
            if seen.insert((h.normal.clone(), h.bound.clone())) {
                hs.push(h);
            }
        }
        Self::new_bounded(n, hs)
    }
}

fn scan_box(
    rows: &[(Vec<i64>, Rational)],
    lo: &[i64],
    hi: &[i64],
    depth: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let n = lo.len();
    // prune: minimum of a.x over the remaining box must not exceed the bound
    for (a, b) in rows {
        let mut min = 0i128;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] as i128;
            min += if i < depth {
                ai * x[i] as i128
            } else if ai > 0 {
                ai * lo[i] as i128
            } else {
                ai * hi[i] as i128
            };
        }
        if Rational::from_integer(BigInt::from(min)) > *b {
            return;
        }
    }
    if depth == n {
        out.push(x.clone());
        return;
    }
    for v in lo[depth]..=hi[depth] {
        x[depth] = v;
        scan_box(rows, lo, hi, depth + 1, x, out);
    }
}

fn to_i64(q: &Rational) -> Result<i64> {
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Domain("coordinate does not fit in i64".into()))
}

fn unbounded(ray: &[Rational]) -> Error {
    Error::Unbounded {
        ray: primitive_integer_vector(ray)
            .iter()
            .map(|x| x.to_string())
            .collect(),
    }
}

/// Sorted, duplicate-free set of rational points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    points: Vec<Point>,
}

impl VertexSet {
    pub fn from_points(points: Vec<Point>) -> Self {
        let set: BTreeSet<Point> = points.into_iter().collect();
        VertexSet {
            points: set.into_iter().collect(),
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.points
            .binary_search_by(|q| q.as_slice().cmp(p))
            .is_ok()
    }

    /// Dimension of the affine hull; `0` for a single point and for the empty set.
    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.points)
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.points.iter().all(|p| p.iter().all(|q| q.is_integer()))
    }

    /// Euclidean volume of the convex hull in the ambient space, computed by
    /// the placing triangulation of the lexicographically sorted vertices.
    /// Zero when the hull is not full-dimensional.
    pub fn volume(&self) -> Rational {
        let n = self.ambient_dim();
        if self.points.is_empty() || self.affine_dim() < n {
            return Rational::zero();
        }
        if n == 0 {
            return Rational::one();
        }
        let simplices = placing_triangulation(&self.points);
        let total: Rational = simplices
            .iter()
            .map(|s| simplex_det(&self.points, s).abs())
            .sum();
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        total / Rational::from_integer(fact)
    }

    pub fn scale(&self, k: &Rational) -> VertexSet {
        VertexSet::from_points(
            self.points
                .iter()
                .map(|p| p.iter().map(|x| x * k).collect())
                .collect(),
        )
    }

    pub fn translate(&self, t: &[Rational]) -> VertexSet {
        VertexSet::from_points(
            self.points
                .iter()
                .map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    /// Points as `"p/q"` strings.
    pub fn to_pq_rows(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| p.iter().map(to_pq).collect())
            .collect()
    }
}

fn affine_dim(points: &[Point]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

fn simplex_det(points: &[Point], s: &[usize]) -> Rational {
    let base = &points[s[0]];
    let m: Vec<Vec<Rational>> = s[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    det(&m)
}

/// Sign of the orientation determinant of `facet ∪ {q}`.
fn orientation(points: &[Point], facet: &[usize], q: &Point) -> i8 {
    let base = &points[facet[0]];
    let mut m: Vec<Vec<Rational>> = facet[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    m.push(q.iter().zip(base).map(|(a, b)| a - b).collect());
    let d = det(&m);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Lexicographic placing triangulation of a full-dimensional set of points
/// in convex position. `points` must be sorted.
fn placing_triangulation(points: &[Point]) -> Vec<Vec<usize>> {
    let n = points[0].len();
    let mut initial = vec![0usize];
    let mut rest = Vec::new();
    for i in 1..points.len() {
        if initial.len() <= n {
            let mut cand: Vec<Point> = initial.iter().map(|&j| points[j].clone()).collect();
            cand.push(points[i].clone());
            if affine_dim(&cand) == initial.len() {
                initial.push(i);
                continue;
            }
        }
        rest.push(i);
    }
    let mut simplices = vec![initial];
    for p in rest {
        // boundary facets: facets occurring in exactly one simplex
        let mut count: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        let mut mult: HashMap<Vec<usize>, usize> = HashMap::new();
        for (si, s) in simplices.iter().enumerate() {
            for drop in 0..s.len() {
                let mut f = s.clone();
                let opp = f.remove(drop);
                f.sort_unstable();
                *mult.entry(f.clone()).or_default() += 1;
                count.insert(f, (si, opp));
            }
        }
        let mut boundary: Vec<(Vec<usize>, usize)> = count
            .into_iter()
            .filter(|(f, _)| mult[f] == 1)
            .map(|(f, (_, opp))| (f, opp))
            .collect();
        boundary.sort();
        for (f, opp) in boundary {
            let side_p = orientation(points, &f, &points[p]);
            let side_opp = orientation(points, &f, &points[opp]);
            if side_p != 0 && side_p == -side_opp {
                let mut s = f.clone();
                s.push(p);
                simplices.push(s);
            }
        }
    }
    simplices
}

/// Vertex/facet incidences of a non-empty polytope.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub vertices: VertexSet,
    pub affine_dim: usize,
    /// Each facet as the sorted list of vertex indices lying on it.
    pub facets: Vec<Vec<usize>>,
    /// Facet indices per vertex.
    pub vertex_facets: Vec<BTreeSet<usize>>,
}

impl Incidence {
    pub fn of(p: &HPolytope) -> Result<Self> {
        let vertices = p.vertices()?;
        if vertices.is_empty() {
            return Err(Error::Domain("empty polytope".into()));
        }
        let d = vertices.affine_dim();
        let pts = vertices.points();
        let mut tight_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        if d > 0 {
            for h in p.halfspaces() {
                let tight: Vec<usize> = (0..pts.len()).filter(|&i| h.is_tight(&pts[i])).collect();
                if tight.len() < d || tight.len() == pts.len() {
                    continue;
                }
                let on: Vec<Point> = tight.iter().map(|&i| pts[i].clone()).collect();
                if affine_dim(&on) == d - 1 {
                    tight_sets.insert(tight);
                }
            }
        }
        let facets: Vec<Vec<usize>> = tight_sets.into_iter().collect();
        let mut vertex_facets = vec![BTreeSet::new(); pts.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f {
                vertex_facets[v].insert(fi);
            }
        }
        Ok(Incidence {
            vertices,
            affine_dim: d,
            facets,
            vertex_facets,
        })
    }

    /// Every vertex lies on exactly `affine_dim` facets.
    pub fn is_simple(&self) -> bool {
        self.vertex_facets
            .iter()
            .all(|f| f.len() == self.affine_dim)
    }

    /// Neighbours of vertex `v` along edges; valid for simple polytopes.
    fn edge_neighbours(&self, v: usize) -> Vec<usize> {
        let d = self.affine_dim;
        (0..self.vertex_facets.len())
            .filter(|&u| {
                u != v
                    && self.vertex_facets[v]
                        .intersection(&self.vertex_facets[u])
                        .count()
                        == d - 1
            })
            .collect()
    }

    /// For a simple lattice polytope: the first vertex whose primitive edge
    /// directions fail to form a basis of the lattice in the affine hull.
    pub fn non_unimodular_vertex(&self) -> Option<usize> {
        let d = self.affine_dim;
        if d == 0 {
            return None;
        }
        let pts = self.vertices.points();
        (0..pts.len()).find(|&v| {
            let nbrs = self.edge_neighbours(v);
            if nbrs.len() != d {
                return true;
            }
            let edges: Vec<Vec<BigInt>> = nbrs
                .iter()
                .map(|&u| {
                    let diff: Vec<Rational> =
                        pts[u].iter().zip(&pts[v]).map(|(a, b)| a - b).collect();
                    primitive_integer_vector(&diff)
                })
                .collect();
            !gcd_of_maximal_minors(&edges).is_one()
        })
    }
}

/// Every vertex lies on exactly `dim` facets, where `dim` is the dimension
/// of the affine hull.
pub fn is_simple(p: &HPolytope) -> Result<bool> {
    Ok(Incidence::of(p)?.is_simple())
}

/// Simple, and at every vertex the primitive edge directions form a lattice
/// basis of the affine hull. Requires a lattice polytope.
pub fn is_smooth(p: &HPolytope) -> Result<bool> {
    let inc = Incidence::of(p)?;
    if !inc.vertices.is_lattice_polytope() {
        return Err(Error::Domain(
            "smoothness is defined for lattice polytopes only".into(),
        ));
    }
    Ok(inc.is_simple() && inc.non_unimodular_vertex().is_none())
}
