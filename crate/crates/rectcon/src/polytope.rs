//! Symmetric convex polygons: the unit balls of planar polyhedral norms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::GEOMETRY_TOL;

/// A point of the plane; bare arrays keep the hull code allocation-free.
pub type Point2 = [f64; 2];

/// Wraps an angle into `[0, 2pi)`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut w = a % two_pi;
    if w < 0.0 {
        w += two_pi;
    }
    // `-1e-30 % tau` rounds to tau: fold the boundary back to zero.
    if w >= two_pi {
        w = 0.0;
    }
    w
}

fn polar_angle(p: Point2) -> f64 {
    wrap_angle(p[1].atan2(p[0]))
}

fn neg(p: Point2) -> Point2 {
    [-p[0], -p[1]]
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// A linear functional `z -> a . z`, scaled to equal 1 on one facet of a
/// polytope (so `|f| <= 1` on the whole body and `||z|| = max_f f(z)`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetFunctional {
    /// Coefficient vector of the functional.
    pub a: Point2,
}

impl FacetFunctional {
    pub fn apply(&self, z: &[f64]) -> f64 {
        debug_assert_eq!(z.len(), 2);
        self.a[0] * z[0] + self.a[1] * z[1]
    }

    pub(crate) fn apply2(&self, z: Point2) -> f64 {
        self.a[0] * z[0] + self.a[1] * z[1]
    }

    /// Angle of the outward normal, in `[0, 2pi)`.
    pub fn angle(&self) -> f64 {
        polar_angle(self.a)
    }
}

/// One facet of the polygon: its supporting functional together with the
/// indices of its endpoints in the canonical vertex list. The edge runs
/// counter-clockwise from `start` to `end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Facet {
    pub functional: FacetFunctional,
    pub start: usize,
    pub end: usize,
}

/// A symmetric convex polygon with the origin in its interior, i.e. the unit
/// ball of a polyhedral norm on the plane.
///
/// Canonical form: extreme points only, listed counter-clockwise starting at
/// the smallest non-negative polar angle, and `v` is a vertex exactly when
/// `-v` is. Facets are listed in increasing order of their outward-normal
/// angle.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    vertices: Vec<Point2>,
    facets: Vec<Facet>,
}

impl Polytope {
    /// Builds the canonical polytope spanned by `raw` and its reflection
    /// through the origin.
    ///
    /// Interior and non-extreme points are dropped; near-duplicates (within
    /// [`GEOMETRY_TOL`]) are merged. Fails when fewer than two distinct
    /// nonzero points remain or when all points are collinear, since the
    /// symmetrized hull then has empty interior.
    pub fn canonicalize(raw: &[Point2]) -> Result<Polytope> {
        for p in raw {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::NonFinite {
                    context: "polytope vertex",
                });
            }
        }

        let scale = raw
            .iter()
            .flat_map(|p| p.iter())
            .fold(1.0_f64, |m, &c| m.max(c.abs()));
        let merge_tol = GEOMETRY_TOL * scale;

        let mut pts: Vec<Point2> = Vec::with_capacity(2 * raw.len());
        for &p in raw {
            push_dedup(&mut pts, p, merge_tol);
            push_dedup(&mut pts, neg(p), merge_tol);
        }
        pts.retain(|p| p[0].abs().max(p[1].abs()) > merge_tol);
        if pts.len() < 4 {
            // A symmetric set needs at least two distinct +/- pairs to have
            // a two-dimensional hull.
            return Err(Error::DegeneratePolytope(
                "need at least 2 distinct nonzero points".into(),
            ));
        }

        let hull = convex_hull(&mut pts, GEOMETRY_TOL * scale * scale);
        if hull.len() < 3 {
            return Err(Error::DegeneratePolytope(
                "input points are collinear".into(),
            ));
        }

        // The hull of a symmetric set is symmetric in exact arithmetic, but
        // tolerance-based popping can break the tie differently on the two
        // sides. Re-impose symmetry exactly: keep one representative per
        // +/- pair (the one with polar angle in [0, pi)) and emit both signs.
        let mut reps: Vec<Point2> = Vec::with_capacity(hull.len() / 2 + 1);
        for &v in &hull {
            let r = if polar_angle(v) < std::f64::consts::PI {
                v
            } else {
                neg(v)
            };
            push_dedup(&mut reps, r, merge_tol);
        }
        let mut vertices: Vec<Point2> = Vec::with_capacity(2 * reps.len());
        for &r in &reps {
            vertices.push(r);
            vertices.push(neg(r));
        }
        vertices.sort_by(|a, b| polar_angle(*a).total_cmp(&polar_angle(*b)));

        let facets = build_facets(&vertices, GEOMETRY_TOL * scale * scale)?;
        Ok(Polytope { vertices, facets })
    }

    /// Canonical vertex list (counter-clockwise, starting at the smallest
    /// non-negative polar angle).
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Facets sorted by outward-normal angle.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// The supporting functionals, in facet order.
    pub fn facet_functionals(&self) -> Vec<FacetFunctional> {
        self.facets.iter().map(|f| f.functional).collect()
    }

    /// Gauge of the polygon: `max_f f(z)` over all facet functionals.
    pub fn gauge(&self, z: Point2) -> f64 {
        self.facets
            .iter()
            .map(|f| f.functional.apply2(z))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Polar angle of each vertex, in vertex order.
    pub fn vertex_angles(&self) -> Vec<f64> {
        self.vertices.iter().map(|&v| polar_angle(v)).collect()
    }

    /// Indices into `facets()` of the two facets meeting at vertex `i`:
    /// `(incoming, outgoing)` in counter-clockwise order.
    pub fn facets_at_vertex(&self, i: usize) -> (usize, usize) {
        let incoming = self
            .facets
            .iter()
            .position(|f| f.end == i)
            .expect("every vertex ends one facet");
        let outgoing = self
            .facets
            .iter()
            .position(|f| f.start == i)
            .expect("every vertex starts one facet");
        (incoming, outgoing)
    }

    /// Indices of facets active at `z` (those with `f(z) >= ||z||(1 - rel)`).
    pub(crate) fn active_facets(&self, z: Point2, rel: f64) -> Vec<usize> {
        let g = self.gauge(z);
        let cut = g * (1.0 - rel);
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.functional.apply2(z) >= cut)
            .map(|(i, _)| i)
            .collect()
    }
}

fn push_dedup(pts: &mut Vec<Point2>, p: Point2, tol: f64) {
    if !pts
        .iter()
        .any(|q| (q[0] - p[0]).abs() <= tol && (q[1] - p[1]).abs() <= tol)
    {
        pts.push(p);
    }
}

/// Monotone-chain convex hull keeping extreme points only: points within
/// `cross_tol` of an edge are treated as collinear and dropped. Returns the
/// hull counter-clockwise, starting at the lexicographically smallest point.
fn convex_hull(pts: &mut [Point2], cross_tol: f64) -> Vec<Point2> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts.iter() {
        while hull.len() >= 2
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= cross_tol
        {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= cross_tol
        {
            hull.pop();
        }
        hull.push(p);
    }
    // The upper chain closes back onto the lower chain's first point.
    hull.pop();
    hull
}

/// Solves `a . v_i = a . v_j = 1` for each counter-clockwise edge and sorts
/// the facets by normal angle. Fails when an edge is collinear with the
/// origin (the origin would not be interior).
fn build_facets(vertices: &[Point2], det_tol: f64) -> Result<Vec<Facet>> {
    let n = vertices.len();
    let mut facets = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        let (vi, vj) = (vertices[i], vertices[j]);
        let det = vi[0] * vj[1] - vj[0] * vi[1];
        if det.abs() <= det_tol {
            return Err(Error::DegeneratePolytope(
                "an edge passes through the origin".into(),
            ));
        }
        let a = [(vj[1] - vi[1]) / det, (vi[0] - vj[0]) / det];
        facets.push(Facet {
            functional: FacetFunctional { a },
            start: i,
            end: j,
        });
    }
    // Edge normals already ascend along the counter-clockwise boundary up to
    // one wrap; rotating to the smallest angle sorts them.
    let first = facets
        .iter()
        .enumerate()
        .min_by(|(_, f), (_, g)| f.functional.angle().total_cmp(&g.functional.angle()))
        .map(|(i, _)| i)
        .unwrap();
    facets.rotate_left(first);
    Ok(facets)
}
