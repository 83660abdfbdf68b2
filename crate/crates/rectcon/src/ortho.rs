//! Birkhoff-James orthogonality.
//!
//! `x` is Birkhoff-James orthogonal to `y` when `||x|| <= ||x + t y||` for
//! every real `t`. For the convex map `g(t) = ||x + t y||` this is exactly
//! `d_minus <= 0 <= d_plus`, where `d_minus`/`d_plus` are the one-sided
//! derivatives of `g` at `t = 0`. Everything in this module reduces to
//! computing that derivative bracket.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::Norm;
use crate::polytope::{wrap_angle, Polytope};
use crate::tolerances::{DEGENERATE_ARC, FACET_ACTIVITY_REL, QUOTIENT_STOP};
use crate::vector::Vector;

/// How a derivative bracket was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeMethod {
    /// Gradient formula of a smooth norm, or the sign/active-coordinate
    /// formulas of `l_1` / `l_inf`.
    ClosedForm,
    /// Min/max of the active facet functionals of a polyhedral norm.
    ActiveFacets,
    /// Difference-quotient ladder on a dyadic step sequence.
    QuotientLadder,
}

/// Evidence for an orthogonality decision: the one-sided derivatives of
/// `t -> ||x + t y||` at zero, the method that produced them and the
/// tolerance the decision used.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OrthoCertificate {
    pub d_minus: f64,
    pub d_plus: f64,
    pub method: DerivativeMethod,
    pub tol: f64,
}

impl OrthoCertificate {
    /// The decision the certificate supports: zero lies in the bracket up to
    /// the tolerance.
    pub fn asserts_orthogonality(&self) -> bool {
        self.d_minus <= self.tol && self.d_plus >= -self.tol
    }
}

/// One-sided derivatives `(d_minus, d_plus)` of `t -> ||x + t y||` at 0.
///
/// Convexity guarantees `d_minus <= d_plus` and `|d| <= ||y||`.
pub fn one_sided_derivatives(norm: &Norm, x: &Vector, y: &Vector) -> Result<(f64, f64)> {
    derivatives_with_method(norm, x, y).map(|(dm, dp, _)| (dm, dp))
}

pub(crate) fn derivatives_with_method(
    norm: &Norm,
    x: &Vector,
    y: &Vector,
) -> Result<(f64, f64, DerivativeMethod)> {
    x.check_dim(norm.dim())?;
    y.check_dim(norm.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    match norm {
        Norm::Euclidean { .. } => {
            let d = x.dot(y) / norm.eval_unchecked(x.coords());
            Ok((d, d, DerivativeMethod::ClosedForm))
        }
        Norm::Lp { p, .. } if *p > 1.0 && p.is_finite() => {
            // Smooth case: d = sum sign(x_i) |x_i|^(p-1) y_i / ||x||^(p-1).
            let nx = norm.eval_unchecked(x.coords());
            let d = x
                .coords()
                .iter()
                .zip(y.coords())
                .map(|(&xi, &yi)| xi.signum() * (xi.abs() / nx).powf(p - 1.0) * yi)
                .sum::<f64>();
            Ok((d, d, DerivativeMethod::ClosedForm))
        }
        Norm::Lp { p, .. } if *p == 1.0 => {
            // Coordinates at a kink (x_i = 0) contribute |y_i| one-sidedly;
            // the rest differentiate to sign(x_i) y_i.
            let cut = 1e-12 * x.coords().iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            let mut smooth = 0.0;
            let mut kink = 0.0;
            for (&xi, &yi) in x.coords().iter().zip(y.coords()) {
                if xi.abs() <= cut {
                    kink += yi.abs();
                } else {
                    smooth += xi.signum() * yi;
                }
            }
            Ok((smooth - kink, smooth + kink, DerivativeMethod::ClosedForm))
        }
        Norm::Lp { .. } => {
            // l_inf: the derivative bracket ranges over the coordinates
            // attaining the maximum.
            let m = x.coords().iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
            let cut = m * (1.0 - FACET_ACTIVITY_REL);
            let mut dm = f64::INFINITY;
            let mut dp = f64::NEG_INFINITY;
            for (&xi, &yi) in x.coords().iter().zip(y.coords()) {
                if xi.abs() >= cut {
                    let slope = xi.signum() * yi;
                    dm = dm.min(slope);
                    dp = dp.max(slope);
                }
            }
            Ok((dm, dp, DerivativeMethod::ClosedForm))
        }
        Norm::Polyhedral(poly) => {
            let (dm, dp) = facet_derivatives(poly, x.coords(), y.coords());
            Ok((dm, dp, DerivativeMethod::ActiveFacets))
        }
    }
}

/// Derivative bracket from the facets active at `x`: each active functional
/// `f` contributes the slope `f(y)`.
fn facet_derivatives(poly: &Polytope, x: &[f64], y: &[f64]) -> (f64, f64) {
    let xz = [x[0], x[1]];
    let g = poly.gauge(xz);
    let cut = g * (1.0 - FACET_ACTIVITY_REL);
    let mut dm = f64::INFINITY;
    let mut dp = f64::NEG_INFINITY;
    for f in poly.facets() {
        if f.functional.apply2(xz) >= cut {
            let slope = f.functional.apply(y);
            dm = dm.min(slope);
            dp = dp.max(slope);
        }
    }
    (dm, dp)
}

/// Difference-quotient derivative bracket, usable with any norm variant.
///
/// Walks `h = 2^-k` for `k = 10..=40` per side and stops when two successive
/// quotients agree to within [`QUOTIENT_STOP`], or one step before convexity
/// is violated (the violation means rounding noise has overtaken
/// truncation, so the previous quotient is the more accurate one).
pub fn quotient_derivatives(norm: &Norm, x: &Vector, y: &Vector) -> Result<(f64, f64)> {
    x.check_dim(norm.dim())?;
    y.check_dim(norm.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g0 = norm.eval_unchecked(x.coords());
    // Right quotients fall toward d_plus, left quotients rise toward d_minus.
    let dp = ladder(|h| (norm.eval_combo(x, h, y) - g0) / h, true);
    let dm = ladder(|h| (g0 - norm.eval_combo(x, -h, y)) / h, false);
    if dm > dp {
        // The bracket collapsed to a point and noise inverted it. The noise
        // floor scales with the magnitudes involved (the quotients divide
        // norm-sized cancellation errors by h), so the sanity bound does too;
        // it only guards against sign blunders, which invert by O(|y|).
        let scale = 1.0 + g0 + norm.eval_unchecked(y.coords());
        debug_assert!(
            dm - dp < 1e-4 * scale,
            "quotient bracket inverted by {}",
            dm - dp
        );
        let mid = 0.5 * (dm + dp);
        return Ok((mid, mid));
    }
    Ok((dm, dp))
}

fn ladder(q: impl Fn(f64) -> f64, falling: bool) -> f64 {
    let mut prev: Option<f64> = None;
    for k in 10..=40 {
        let quotient = q(2.0_f64.powi(-k));
        if let Some(p) = prev {
            if (quotient - p).abs() < QUOTIENT_STOP {
                return quotient;
            }
            let against_convexity = if falling { quotient > p } else { quotient < p };
            if against_convexity {
                return p;
            }
        }
        prev = Some(quotient);
    }
    prev.unwrap()
}

/// Decides `x` Birkhoff-James orthogonal to `y` and returns the evidence.
///
/// `y = 0` is orthogonal to everything (the bracket is `(0, 0)`).
pub fn is_bj_orthogonal(
    norm: &Norm,
    x: &Vector,
    y: &Vector,
    tol: f64,
) -> Result<(bool, OrthoCertificate)> {
    if tol < 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "orthogonality tolerance must be finite and >= 0, got {tol}"
        )));
    }
    let (d_minus, d_plus, method) = derivatives_with_method(norm, x, y)?;
    let cert = OrthoCertificate {
        d_minus,
        d_plus,
        method,
        tol,
    };
    Ok((cert.asserts_orthogonality(), cert))
}

/// A closed arc of directions `[lo, hi]`, `0 <= lo < 2pi`, `lo <= hi`.
/// Arcs that wrap through zero are encoded with `hi > 2pi`; single
/// directions have `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthoArc {
    pub lo: f64,
    pub hi: f64,
}

impl OrthoArc {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        wrap_angle(0.5 * (self.lo + self.hi))
    }

    /// Membership of a direction, modulo `2pi`, with `slack` radians of
    /// leeway at both ends.
    pub fn contains(&self, phi: f64, slack: f64) -> bool {
        let d = wrap_angle(phi - self.lo);
        d <= self.width() + slack || d >= std::f64::consts::TAU - slack
    }
}

/// All directions `phi` whose unit vector `y(phi)` satisfies `x BJ-orth y`.
///
/// For every supported norm this set is one or two antipodal closed arcs
/// (possibly single directions).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrthoCone {
    /// The vector whose orthogonal directions are described.
    pub base: Vector,
    /// Arcs sorted by `lo`.
    pub arcs: Vec<OrthoArc>,
}

impl OrthoCone {
    pub fn contains(&self, phi: f64, slack: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(phi, slack))
    }
}

/// Computes the orthogonal cone of `x` (dimension 2 only).
///
/// The cone is obtained in closed form from the structure of the unit ball:
/// for a polyhedral norm the arcs rotate the span of active facet normals by
/// a quarter turn; for a smooth norm the arcs collapse to the two directions
/// perpendicular (in the Euclidean sense) to the norm's gradient at `x`.
/// `resolution` is accepted for interface stability but the closed forms
/// need no sampling; it only has to be a sane value (>= 16).
pub fn orthogonal_cone(norm: &Norm, x: &Vector, resolution: usize) -> Result<OrthoCone> {
    if norm.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: norm.dim(),
        });
    }
    if resolution < 16 {
        return Err(Error::InvalidParameter(format!(
            "cone resolution must be >= 16, got {resolution}"
        )));
    }
    x.check_dim(2)?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }

    let span = match norm {
        Norm::Polyhedral(poly) => active_normal_span(poly, [x.coords()[0], x.coords()[1]]),
        Norm::Lp { p, .. } if *p == 1.0 || p.is_infinite() => {
            let poly = norm.to_polytope().expect("planar l1/linf converts");
            active_normal_span(&poly, [x.coords()[0], x.coords()[1]])
        }
        _ => {
            // Smooth norm: the slope toward direction u is grad . u, a
            // sinusoid in the angle, so it vanishes exactly perpendicular
            // to the gradient.
            let (gx, gy) = smooth_gradient(norm, x);
            let alpha = wrap_angle(gy.atan2(gx));
            (alpha, alpha)
        }
    };
    let (alpha_in, alpha_out) = span;
    let turn = alpha_out - alpha_in;
    debug_assert!((0.0..std::f64::consts::PI).contains(&turn));

    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut arcs = Vec::with_capacity(2);
    for offset in [half_pi, 3.0 * half_pi] {
        let lo = wrap_angle(alpha_in + offset);
        let hi = if turn <= DEGENERATE_ARC { lo } else { lo + turn };
        arcs.push(OrthoArc { lo, hi });
    }
    arcs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    if arcs.is_empty() {
        return Err(Error::EmptyCone);
    }
    Ok(OrthoCone {
        base: x.clone(),
        arcs,
    })
}

/// Gradient of a smooth norm at `x != 0` (2D).
fn smooth_gradient(norm: &Norm, x: &Vector) -> (f64, f64) {
    let c = x.coords();
    match norm {
        Norm::Euclidean { .. } => {
            let n = norm.eval_unchecked(c);
            (c[0] / n, c[1] / n)
        }
        Norm::Lp { p, .. } => {
            let n = norm.eval_unchecked(c);
            let g = |xi: f64| xi.signum() * (xi.abs() / n).powf(p - 1.0);
            (g(c[0]), g(c[1]))
        }
        Norm::Polyhedral(_) => unreachable!("polyhedral norms take the facet path"),
    }
}

/// Angular span `(alpha_in, alpha_out)` of the facet normals active at `z`,
/// `alpha_out = alpha_in + turn` with `turn` in `[0, pi)`. The facets active
/// at a boundary point are contiguous in the canonical facet order.
pub(crate) fn active_normal_span(poly: &Polytope, z: [f64; 2]) -> (f64, f64) {
    let active = poly.active_facets(z, FACET_ACTIVITY_REL);
    debug_assert!(!active.is_empty());
    let n = poly.facets().len();
    // Find the start of the contiguous run (mod n).
    let is_active = |i: usize| active.contains(&(i % n));
    let start = *active
        .iter()
        .find(|&&i| !is_active(i + n - 1))
        .unwrap_or(&active[0]);
    let mut end = start;
    while is_active(end + 1) && (end + 1) % n != start {
        end += 1;
    }
    let alpha_in = poly.facets()[start].functional.angle();
    let mut alpha_out = poly.facets()[end % n].functional.angle();
    if alpha_out < alpha_in {
        alpha_out += std::f64::consts::TAU;
    }
    (alpha_in, alpha_out)
}

/// A norming functional for `x`: coefficients `a` with `a . x = ||x||` and
/// dual norm 1. For smooth norms this is the gradient; for `l_1`/`l_inf` the
/// sign/max-coordinate formulas; for polyhedral norms the active facet
/// functional with the smallest index in canonical facet order.
pub fn james_supporting_functional(norm: &Norm, x: &Vector) -> Result<Vector> {
    x.check_dim(norm.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    match norm {
        Norm::Euclidean { .. } => {
            let n = norm.eval_unchecked(x.coords());
            Ok(x.scale(1.0 / n))
        }
        Norm::Lp { p, .. } if *p > 1.0 && p.is_finite() => {
            let n = norm.eval_unchecked(x.coords());
            Vector::new(
                x.coords()
                    .iter()
                    .map(|&xi| xi.signum() * (xi.abs() / n).powf(p - 1.0))
                    .collect(),
            )
        }
        Norm::Lp { p, .. } if *p == 1.0 => {
            Vector::new(x.coords().iter().map(|&xi| xi.signum()).collect())
        }
        Norm::Lp { .. } => {
            // l_inf: indicator of the first coordinate attaining the max.
            let m = x.coords().iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
            let cut = m * (1.0 - FACET_ACTIVITY_REL);
            let lead = x
                .coords()
                .iter()
                .position(|c| c.abs() >= cut)
                .expect("some coordinate attains the max");
            let mut coords = vec![0.0; x.dim()];
            coords[lead] = x.coords()[lead].signum();
            Vector::new(coords)
        }
        Norm::Polyhedral(poly) => {
            let z = [x.coords()[0], x.coords()[1]];
            let active = poly.active_facets(z, FACET_ACTIVITY_REL);
            let first = *active.iter().min().expect("x != 0 activates a facet");
            let a = poly.facets()[first].functional.a;
            Ok(Vector::xy(a[0], a[1]))
        }
    }
}

pub(crate) fn random_unit(norm: &Norm, rng: &mut ChaCha8Rng, dim: usize) -> Option<Vector> {
    for _ in 0..32 {
        let coords: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if coords.iter().map(|c| c * c).sum::<f64>() > 1e-4 {
            let v = Vector::new(coords).ok()?;
            return norm.normalize(&v).ok();
        }
    }
    None
}

/// Finds a unit `y` in the span of `x` and `z` with `x` orthogonal to `y`,
/// by bisecting the rotation `psi -> cos(psi) x + sin(psi) z` on the sign of
/// the derivative bracket. The slope is +1 at `psi = 0` and -1 at `pi`, so a
/// crossing always exists inside.
pub(crate) fn orthogonal_partner(norm: &Norm, x: &Vector, z: &Vector, tol: f64) -> Option<Vector> {
    let probe = |psi: f64| -> Option<(bool, bool)> {
        let raw = x.scale(psi.cos()).add(&z.scale(psi.sin()));
        let y = norm.normalize(&raw).ok()?;
        let (ok, cert) = is_bj_orthogonal(norm, x, &y, tol).ok()?;
        Some((ok, cert.d_minus > tol))
    };
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::PI);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let (ok, positive_side) = probe(mid)?;
        if ok {
            let raw = x.scale(mid.cos()).add(&z.scale(mid.sin()));
            return norm.normalize(&raw).ok();
        }
        if positive_side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// Draws `count` certified Birkhoff-James orthogonal unit pairs, seeded.
///
/// Dimension 2 picks a uniform base direction and a partner direction
/// uniformly from an arc of the base's orthogonal cone; dimension >= 3
/// bisects inside a random two-dimensional section. Every returned pair is
/// re-certified with [`is_bj_orthogonal`] at tolerance `tol`.
pub fn sample_orthogonal_pairs(
    norm: &Norm,
    count: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<(Vector, Vector)>> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be finite and >= 0, got {tol}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 64 * count.max(1);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > budget {
            return Err(Error::InvalidParameter(format!(
                "could not sample {count} orthogonal pairs in {budget} attempts"
            )));
        }
        let pair = if norm.dim() == 2 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let Ok(x) = norm.sphere_point(theta) else { continue };
            let Ok(cone) = orthogonal_cone(norm, &x, 64) else { continue };
            if cone.arcs.is_empty() {
                continue;
            }
            let arc = &cone.arcs[rng.gen_range(0..cone.arcs.len())];
            let phi = wrap_angle(arc.lo + rng.gen_range(0.0..=1.0) * arc.width());
            let Ok(y) = norm.sphere_point(phi) else { continue };
            (x, y)
        } else {
            let Some(x) = random_unit(norm, &mut rng, norm.dim()) else { continue };
            let Some(z) = random_unit(norm, &mut rng, norm.dim()) else { continue };
            let Some(y) = orthogonal_partner(norm, &x, &z, tol) else { continue };
            (x, y)
        };
        if let Ok((true, _)) = is_bj_orthogonal(norm, &pair.0, &pair.1, tol) {
            out.push(pair);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::ORTHO_TOL;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn linf() -> Norm {
        Norm::lp(f64::INFINITY, 2).unwrap()
    }

    fn square() -> Norm {
        Norm::polyhedral(&[[1.0, 1.0], [-1.0, 1.0]]).unwrap()
    }

    #[test]
    fn euclidean_derivatives_are_the_projection() {
        let l2 = Norm::euclidean(2).unwrap();
        let (dm, dp) = one_sided_derivatives(&l2, &Vector::xy(3.0, 4.0), &Vector::xy(1.0, 0.0))
            .unwrap();
        assert!((dm - 0.6).abs() < 1e-15);
        assert!((dp - 0.6).abs() < 1e-15);
    }

    #[test]
    fn linf_corner_has_a_wide_bracket() {
        // x = (1,1), y = (1,-1): the two active coordinates pull apart.
        let (dm, dp) =
            one_sided_derivatives(&linf(), &Vector::xy(1.0, 1.0), &Vector::xy(1.0, -1.0))
                .unwrap();
        assert_eq!((dm, dp), (-1.0, 1.0));
        // Same geometry through the polyhedral path.
        let (dm, dp) =
            one_sided_derivatives(&square(), &Vector::xy(1.0, 1.0), &Vector::xy(1.0, -1.0))
                .unwrap();
        assert!((dm + 1.0).abs() < 1e-15 && (dp - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l1_kink_contributes_one_sidedly() {
        let l1 = Norm::lp(1.0, 2).unwrap();
        let (dm, dp) =
            one_sided_derivatives(&l1, &Vector::xy(1.0, 0.0), &Vector::xy(0.0, 1.0)).unwrap();
        assert_eq!((dm, dp), (-1.0, 1.0));
        let (dm, dp) =
            one_sided_derivatives(&l1, &Vector::xy(1.0, 2.0), &Vector::xy(3.0, -1.0)).unwrap();
        assert_eq!((dm, dp), (2.0, 2.0));
    }

    #[test]
    fn quotient_ladder_agrees_with_closed_forms() {
        let cases: Vec<(Norm, Vector, Vector)> = vec![
            (Norm::euclidean(2).unwrap(), Vector::xy(3.0, 4.0), Vector::xy(-1.0, 2.0)),
            (Norm::lp(1.5, 2).unwrap(), Vector::xy(1.0, -2.0), Vector::xy(0.5, 0.25)),
            (linf(), Vector::xy(1.0, 1.0), Vector::xy(1.0, -1.0)),
            (square(), Vector::xy(1.0, 0.25), Vector::xy(-0.3, 1.0)),
            (Norm::lp(1.0, 3).unwrap(),
             Vector::new(vec![1.0, 0.0, -2.0]).unwrap(),
             Vector::new(vec![0.7, 0.4, 0.1]).unwrap()),
        ];
        for (norm, x, y) in &cases {
            let (dm, dp) = one_sided_derivatives(norm, x, y).unwrap();
            let (qm, qp) = quotient_derivatives(norm, x, y).unwrap();
            assert!(
                (dm - qm).abs() < 1e-6 && (dp - qp).abs() < 1e-6,
                "{}: closed ({dm}, {dp}) vs ladder ({qm}, {qp})",
                norm.describe()
            );
        }
    }

    #[test]
    fn orthogonality_examples() {
        // The square-norm corner (1,1) is orthogonal to every multiple of
        // (1,-1) and also to (-2,0); the Euclidean norm disagrees on the
        // latter.
        for k in [-2.0, -0.5, 1.0, 3.0] {
            let (ok, cert) =
                is_bj_orthogonal(&linf(), &Vector::xy(1.0, 1.0), &Vector::xy(k, -k), ORTHO_TOL)
                    .unwrap();
            assert!(ok, "k = {k}, cert = {cert:?}");
        }
        let (ok, _) =
            is_bj_orthogonal(&linf(), &Vector::xy(1.0, 1.0), &Vector::xy(-2.0, 0.0), ORTHO_TOL)
                .unwrap();
        assert!(ok);
        let l2 = Norm::euclidean(2).unwrap();
        let (ok, _) =
            is_bj_orthogonal(&l2, &Vector::xy(1.0, 1.0), &Vector::xy(-2.0, 0.0), ORTHO_TOL)
                .unwrap();
        assert!(!ok);
        // y = 0 is orthogonal to everything.
        let (ok, cert) =
            is_bj_orthogonal(&l2, &Vector::xy(1.0, 1.0), &Vector::xy(0.0, 0.0), ORTHO_TOL)
                .unwrap();
        assert!(ok && cert.d_minus == 0.0 && cert.d_plus == 0.0);
        // x = 0 is rejected.
        assert!(matches!(
            is_bj_orthogonal(&l2, &Vector::xy(0.0, 0.0), &Vector::xy(1.0, 0.0), ORTHO_TOL),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn euclidean_cone_is_two_perpendicular_directions() {
        let l2 = Norm::euclidean(2).unwrap();
        let cone = orthogonal_cone(&l2, &Vector::xy(1.0, 0.0), 512).unwrap();
        assert_eq!(cone.arcs.len(), 2);
        for arc in &cone.arcs {
            assert!(arc.width() <= DEGENERATE_ARC);
        }
        assert!((cone.arcs[0].lo - FRAC_PI_2).abs() < 1e-12);
        assert!((cone.arcs[1].lo - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn square_corner_cone_spans_a_quarter_turn() {
        // At x = (1,1) the active normals point along 0 and pi/2, so the
        // cone is [pi/2, pi] plus its antipode.
        let cone = orthogonal_cone(&linf(), &Vector::xy(1.0, 1.0), 512).unwrap();
        assert_eq!(cone.arcs.len(), 2);
        assert!((cone.arcs[0].lo - FRAC_PI_2).abs() < 1e-12);
        assert!((cone.arcs[0].hi - PI).abs() < 1e-12);
        assert!((cone.arcs[1].lo - 3.0 * FRAC_PI_2).abs() < 1e-12);
        assert!((cone.arcs[1].hi - TAU).abs() < 1e-12);
    }

    #[test]
    fn square_edge_point_cone_is_degenerate() {
        // In the interior of the right edge only +z1 is active, so the only
        // orthogonal directions are straight up and down.
        let cone = orthogonal_cone(&linf(), &Vector::xy(1.0, 0.25), 512).unwrap();
        assert_eq!(cone.arcs.len(), 2);
        for arc in &cone.arcs {
            assert!(arc.width() <= DEGENERATE_ARC);
        }
        assert!((cone.arcs[0].lo - FRAC_PI_2).abs() < 1e-12);
        assert!((cone.arcs[1].lo - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn cone_agrees_with_pointwise_decisions() {
        // Dense sampling oracle: membership in the cone must match the
        // pointwise test away from arc boundaries.
        let norms = [
            Norm::euclidean(2).unwrap(),
            Norm::lp(3.0, 2).unwrap(),
            Norm::lp(1.0, 2).unwrap(),
            linf(),
            Norm::polyhedral(&[[1.0, 0.2], [0.3, 0.9], [-0.8, 0.6]]).unwrap(),
        ];
        for norm in &norms {
            for theta in [0.0, 0.4, FRAC_PI_2, 2.0, 4.0] {
                let x = norm.sphere_point(theta).unwrap();
                let cone = orthogonal_cone(norm, &x, 512).unwrap();
                for k in 0..4096 {
                    let phi = k as f64 * TAU / 4096.0;
                    let y = norm.sphere_point(phi).unwrap();
                    let (ok, _) = is_bj_orthogonal(norm, &x, &y, 1e-9).unwrap();
                    if ok {
                        assert!(
                            cone.contains(phi, 1e-6),
                            "{}: orthogonal direction {phi} outside cone {:?}",
                            norm.describe(),
                            cone.arcs
                        );
                    } else if cone.contains(phi, -1e-6) {
                        panic!(
                            "{}: strict cone interior {phi} not orthogonal",
                            norm.describe()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cone_rejects_bad_input() {
        let l2 = Norm::euclidean(2).unwrap();
        assert!(orthogonal_cone(&l2, &Vector::xy(0.0, 0.0), 512).is_err());
        assert!(orthogonal_cone(&l2, &Vector::xy(1.0, 0.0), 4).is_err());
        let l23 = Norm::euclidean(3).unwrap();
        let x3 = Vector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert!(orthogonal_cone(&l23, &x3, 512).is_err());
    }

    #[test]
    fn james_functional_examples() {
        let l2 = Norm::euclidean(2).unwrap();
        let f = james_supporting_functional(&l2, &Vector::xy(3.0, 4.0)).unwrap();
        assert!((f.coords()[0] - 0.6).abs() < 1e-15 && (f.coords()[1] - 0.8).abs() < 1e-15);

        // Corner of the square: two facets are active; the canonical choice
        // is the one with the smaller facet index, +z1.
        let f = james_supporting_functional(&linf(), &Vector::xy(1.0, 1.0)).unwrap();
        assert_eq!(f.coords(), &[1.0, 0.0]);
        let f = james_supporting_functional(&square(), &Vector::xy(1.0, 1.0)).unwrap();
        assert!((f.coords()[0] - 1.0).abs() < 1e-15 && f.coords()[1].abs() < 1e-15);

        let l1 = Norm::lp(1.0, 2).unwrap();
        let f = james_supporting_functional(&l1, &Vector::xy(2.0, -3.0)).unwrap();
        assert_eq!(f.coords(), &[1.0, -1.0]);
    }

    #[test]
    fn james_functional_norms_its_vector() {
        // f(x) = ||x|| for a spread of norms and points.
        let norms = [
            Norm::euclidean(2).unwrap(),
            Norm::lp(2.5, 2).unwrap(),
            Norm::lp(1.0, 2).unwrap(),
            linf(),
            Norm::polyhedral(&[[1.0, 0.2], [0.3, 0.9], [-0.8, 0.6]]).unwrap(),
        ];
        for norm in &norms {
            for theta in [0.1, 1.1, 2.9, 4.5, 6.0] {
                let x = norm.sphere_point(theta).unwrap().scale(1.7);
                let f = james_supporting_functional(norm, &x).unwrap();
                let fx = f.dot(&x);
                let nx = norm.eval(&x).unwrap();
                assert!(
                    (fx - nx).abs() <= 1e-9 * (1.0 + nx),
                    "{}: f(x) = {fx}, ||x|| = {nx}",
                    norm.describe()
                );
                // |f(z)| <= ||z|| on sampled points (dual norm at most 1).
                for phi in [0.3, 1.7, 3.3, 5.1] {
                    let z = norm.sphere_point(phi).unwrap();
                    assert!(f.dot(&z).abs() <= 1.0 + 1e-9);
                }
            }
        }
    }
}
