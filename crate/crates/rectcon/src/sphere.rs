//! Geometry of the unit sphere: maximal straight segments, orthogonality of
//! segment endpoints, the flatness/growth dichotomy, and a windowed test for
//! whether the norm is induced by an inner product.
//!
//! The threads tying these together: a planar norm attains the extreme
//! rectangular constant 3 exactly when its sphere carries a segment of
//! length 2 (in the norm itself); spheres without long segments force
//! `||x + lambda y||` to grow past 1 along orthogonal directions; and inner
//! product spaces are exactly the spaces where the rectangular ratio stays
//! at `sqrt(2)` for scales inside the window `(3 - 2 sqrt(2), sqrt(2) + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::Norm;
use crate::ortho::{is_bj_orthogonal, sample_orthogonal_pairs, OrthoCertificate};
use crate::rect::{
    exact_linear_best, mu_ratio_raw, vertex_sweep_max, MuWitness, NumeratorForm, SearchConfig,
};
use crate::sweep::{grid_golden_max, sweep_max};
use crate::tolerances::{ORTHO_TOL, UNIT_NORM_TOL};
use crate::vector::Vector;

/// Lower endpoint of the scale window of the inner-product test:
/// `3 - 2 sqrt(2) = (sqrt(2) - 1)^2`.
pub const IPS_WINDOW_LO: f64 = 3.0 - 2.0 * std::f64::consts::SQRT_2;

/// Upper endpoint of the scale window: `sqrt(2) + 1`, the reciprocal of
/// `sqrt(2) - 1`.
pub const IPS_WINDOW_HI: f64 = std::f64::consts::SQRT_2 + 1.0;

/// An inner product space keeps the windowed supremum at exactly `sqrt(2)`;
/// a computed supremum above `sqrt(2) + IPS_PASS_TOL` fails the test.
pub const IPS_PASS_TOL: f64 = 1e-6;

/// Growth slack: `||x + lambda y|| > 1 - GROWTH_SLACK` counts as staying
/// outside the open unit ball.
const GROWTH_SLACK: f64 = 1e-9;

/// Multipliers applied to the probe length `l`; each is taken with both
/// signs, so every pair is tested at `lambda = +-l, +-1.25 l, +-2 l, +-5 l`.
const GROWTH_MULTIPLIERS: [f64; 4] = [1.0, 1.25, 2.0, 5.0];

/// A straight segment `[u, v]` lying on the unit sphere, with its length
/// measured in the same norm.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SegmentReport {
    pub u: Vector,
    pub v: Vector,
    /// `||v - u||` in the norm under study (not the Euclidean length).
    pub length: f64,
    /// Whether the segment attains the maximal length over the whole sphere.
    pub is_max: bool,
}

/// Length of the longest straight segment on the unit sphere of a planar
/// norm, together with a maximizing segment.
///
/// Polyhedral spheres attain the maximum on an edge, so the edges are
/// scanned directly (ties resolved toward the smallest facet index in
/// canonical order). Strictly convex spheres — Euclidean and `l_p` with
/// `1 < p < infinity` — carry no segments at all and report length 0 with a
/// degenerate segment `u = v`.
pub fn max_segment_length(norm: &Norm) -> Result<SegmentReport> {
    if norm.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: norm.dim(),
        });
    }
    if norm.is_smooth() {
        let u = norm.sphere_point(0.0)?;
        return Ok(SegmentReport {
            u: u.clone(),
            v: u,
            length: 0.0,
            is_max: true,
        });
    }
    let poly = norm.to_polytope().ok_or(Error::UnsupportedNorm {
        op: "max_segment_length",
    })?;
    let verts = poly.vertices();
    let mut best: Option<(usize, f64)> = None;
    for (i, f) in poly.facets().iter().enumerate() {
        let a = verts[f.start];
        let b = verts[f.end];
        let len = norm.eval_unchecked(&[b[0] - a[0], b[1] - a[1]]);
        if best.is_none_or(|(_, bl)| len > bl) {
            best = Some((i, len));
        }
    }
    let (i, length) = best.ok_or_else(|| {
        Error::DegeneratePolytope("polytope has no facets".into())
    })?;
    let f = &poly.facets()[i];
    let (u, v) = (verts[f.start], verts[f.end]);
    Ok(SegmentReport {
        u: Vector::xy(u[0], u[1]),
        v: Vector::xy(v[0], v[1]),
        length,
        is_max: true,
    })
}

/// Checks that the chord `[u, v]` lies on the unit sphere and, if so,
/// decides whether `u` is Birkhoff-James orthogonal to `v - u`.
///
/// The segment precondition is sampled: `u`, `v` and the convex combinations
/// at `t = 0.25, 0.5, 0.75` must all have norm 1 within `1e-9`; convexity of
/// the ball then pins the whole chord to the sphere. A violated precondition
/// is an error, not a `false` verdict.
pub fn segment_orthogonality_check(
    norm: &Norm,
    u: &Vector,
    v: &Vector,
) -> Result<(bool, OrthoCertificate)> {
    u.check_dim(norm.dim())?;
    v.check_dim(norm.dim())?;
    let nu = norm.eval(u)?;
    let nv = norm.eval(v)?;
    if (nu - 1.0).abs() > UNIT_NORM_TOL || (nv - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::NotASegment(format!(
            "endpoints must be unit vectors: ||u|| = {nu}, ||v|| = {nv}"
        )));
    }
    for t in [0.25, 0.5, 0.75] {
        let m = norm.eval_combo(&u.scale(1.0 - t), t, v);
        if (m - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotASegment(format!(
                "||(1 - t) u + t v|| = {m} at t = {t}; the chord leaves the sphere"
            )));
        }
    }
    is_bj_orthogonal(norm, u, &v.sub(u), ORTHO_TOL)
}

/// A sampled orthogonal pair and scale at which the growth inequality
/// failed, i.e. `||x + lambda y|| <= 1 - 1e-9`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatnessViolation {
    pub x: Vector,
    pub y: Vector,
    pub lambda: f64,
    pub norm_value: f64,
}

/// Outcome of [`flatness_growth_check`].
///
/// `premise` states that the sphere carries no segment of length `l`;
/// `growth` states that `||x + lambda y||` stayed above `1 - 1e-9` for every
/// sampled orthogonal unit pair `(x, y)` and every probed scale
/// `|lambda| >= l`. Flatness-free spheres must grow, so `theorem_violation`
/// (premise without growth) can never legitimately be set and marks an
/// internal inconsistency. `converse_candidate` is the weaker, sampling-only
/// signal that growth held even though a strictly longer segment exists; it
/// is informational, not an error.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatnessReport {
    /// The probe length.
    pub l: f64,
    /// Maximal segment length of the sphere, from [`max_segment_length`].
    pub segment_length: f64,
    /// `segment_length < l`.
    pub premise: bool,
    /// No sampled `||x + lambda y||` fell to `1 - 1e-9` or below.
    pub growth: bool,
    /// Orthogonal pairs actually probed (requested trials plus the
    /// deterministic vertex/edge-direction pairs of polyhedral norms).
    pub pairs_tested: usize,
    /// Smallest `||x + lambda y||` seen over all pairs and scales.
    pub min_norm_value: f64,
    /// Growth failures (at most 20 retained).
    pub violations: Vec<FlatnessViolation>,
    /// `premise && !growth` — impossible for a correct implementation.
    pub theorem_violation: bool,
    /// `growth && segment_length > l + 1e-9` — growth observed although the
    /// sphere is strictly flatter than `l` requires. Sampling evidence only.
    pub converse_candidate: bool,
}

/// Probes the flatness/growth dichotomy of a planar norm at length `l`.
///
/// Draws `trials` certified orthogonal unit pairs (plus, for polyhedral
/// norms, every vertex paired with its adjacent edge directions — the
/// configurations where flatness actually lives) and evaluates
/// `||x + lambda y||` at `lambda = +-l, +-1.25 l, +-2 l, +-5 l`. Findings
/// are carried in the report; only invalid arguments are errors.
pub fn flatness_growth_check(
    norm: &Norm,
    l: f64,
    trials: usize,
    seed: u64,
) -> Result<FlatnessReport> {
    if l <= 0.0 || !l.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "probe length must be finite and > 0, got {l}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let segment = max_segment_length(norm)?;
    let premise = segment.length < l;

    let mut pairs = sample_orthogonal_pairs(norm, trials, seed, ORTHO_TOL)?;
    if let Some(poly) = norm.to_polytope() {
        let verts = poly.vertices();
        for (vi, &vtx) in verts.iter().enumerate() {
            let x = Vector::xy(vtx[0], vtx[1]);
            let (inc, out) = poly.facets_at_vertex(vi);
            for fi in [inc, out] {
                let f = &poly.facets()[fi];
                let (a, b) = (verts[f.start], verts[f.end]);
                let d = Vector::xy(b[0] - a[0], b[1] - a[1]);
                if d.is_zero() {
                    continue;
                }
                let y = norm.normalize(&d)?;
                for cand in [y.clone(), y.scale(-1.0)] {
                    if let Ok((true, _)) = is_bj_orthogonal(norm, &x, &cand, ORTHO_TOL) {
                        pairs.push((x.clone(), cand));
                    }
                }
            }
        }
    }

    let mut min_norm_value = f64::INFINITY;
    let mut violation_count = 0usize;
    let mut violations = Vec::new();
    for (x, y) in &pairs {
        for m in GROWTH_MULTIPLIERS {
            for sign in [1.0, -1.0] {
                let lambda = sign * m * l;
                let value = norm.eval_combo(x, lambda, y);
                min_norm_value = min_norm_value.min(value);
                if value <= 1.0 - GROWTH_SLACK {
                    violation_count += 1;
                    if violations.len() < 20 {
                        violations.push(FlatnessViolation {
                            x: x.clone(),
                            y: y.clone(),
                            lambda,
                            norm_value: value,
                        });
                    }
                }
            }
        }
    }
    let growth = violation_count == 0;
    Ok(FlatnessReport {
        l,
        segment_length: segment.length,
        premise,
        growth,
        pairs_tested: pairs.len(),
        min_norm_value,
        violations,
        theorem_violation: premise && !growth,
        converse_candidate: growth && segment.length > l + 1e-9,
    })
}

/// Verdict of the inner-product-space test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IpsReport {
    /// Whether the windowed supremum stayed within `sqrt(2) + 1e-6`, as it
    /// does exactly when the norm comes from an inner product.
    pub passed: bool,
    /// The windowed supremum of `(1 + |t|) / ||y + t x||` over orthogonal
    /// unit pairs.
    pub sup_found: f64,
    /// The pair and scale attaining `sup_found`; on a failing norm this is
    /// the divergence witness.
    pub witness: Option<MuWitness>,
    /// The open `|t|` window `(3 - 2 sqrt(2), sqrt(2) + 1)` the supremum is
    /// restricted to.
    pub lambda_window: (f64, f64),
}

/// Tests whether a planar norm is induced by an inner product.
///
/// Maximizes the rectangular ratio `(1 + |t|) / ||y + t x||` over orthogonal
/// unit pairs, restricting the scale to
/// `|t|` in `(3 - 2 sqrt(2), sqrt(2) + 1)`; inside that window every inner
/// product space stays at exactly `sqrt(2)`, and every other norm rises
/// strictly above it. Polyhedral norms use the exact breakpoint optimizer
/// over the window; smooth norms sweep a direction grid.
pub fn ips_test(norm: &Norm, config: &SearchConfig) -> Result<IpsReport> {
    config.validate()?;
    if norm.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: norm.dim(),
        });
    }
    // Shrink the open window so its excluded endpoints are never sampled.
    let lo = IPS_WINDOW_LO + 1e-9;
    let hi = IPS_WINDOW_HI - 1e-9;
    let outcome = if let Some(poly) = norm.to_polytope() {
        let gauge_norm = Norm::Polyhedral(poly);
        let ranges = [(-hi, -lo), (lo, hi)];
        let objective = move |x: &Vector, y: &Vector| -> Option<(f64, f64)> {
            exact_linear_best(&gauge_norm, y, x, NumeratorForm::OnePlusAbsT, &ranges)
        };
        vertex_sweep_max(norm, &objective)?
    } else {
        let objective = |x: &Vector, y: &Vector| -> Option<(f64, f64)> {
            let f = |t: f64| mu_ratio_raw(norm, x, y, t);
            let (tp, vp) = grid_golden_max(&f, lo, hi, config.t_grid, config.refine_tol);
            let (tn, vn) = grid_golden_max(&f, -hi, -lo, config.t_grid, config.refine_tol);
            let (t, v) = if vp >= vn { (tp, vp) } else { (tn, vn) };
            v.is_finite().then_some((t, v))
        };
        sweep_max(
            norm,
            config.theta_resolution,
            config.phi_resolution,
            config.refine_tol,
            &objective,
        )?
    };
    let out = outcome.ok_or(Error::EmptyCone)?;
    Ok(IpsReport {
        passed: out.value <= std::f64::consts::SQRT_2 + IPS_PASS_TOL,
        sup_found: out.value,
        witness: Some(MuWitness {
            x: out.x,
            y: out.y,
            t: out.t,
            value: out.value,
        }),
        lambda_window: (IPS_WINDOW_LO, IPS_WINDOW_HI),
    })
}
