//! The rectangular constant and the rectangular modulus.
//!
//! For a normed plane (or a higher-dimensional space through random
//! two-dimensional sections) this module maximizes, over Birkhoff-James
//! orthogonal pairs of unit vectors:
//!
//! * `mu`: `sup (1 + |t|) / ||y + t x||` over `x` orthogonal to `y` and real
//!   `t` — equivalently `sup (||u|| + ||v||) / ||u + v||` over orthogonal
//!   pairs. Always between `sqrt(2)` and 3.
//! * `mu_star(lambda)`: `sup (lambda + t) / ||u + t v||` over orthogonal
//!   pairs and `t > 0`.
//! * `mu(lambda) = max(mu_star(lambda), lambda * mu_star(1/lambda))`, the
//!   rectangular modulus; `mu(1)` recovers the rectangular constant.
//!
//! Polyhedral norms get an exact path: the supremum is attained with the
//! base point at a polytope vertex, and for a fixed pair the parameter `t`
//! optimizes over a finite set of breakpoints of the piecewise-linear
//! denominator. Smooth norms are swept on dense direction grids.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::Norm;
use crate::ortho::{is_bj_orthogonal, orthogonal_partner, random_unit};
use crate::polytope::wrap_angle;
use crate::sweep::{
    golden_max, grid_golden_max, max_over_indices, sweep_max, Candidate,
};
use crate::tolerances::{DEGENERATE_ARC, DENOM_TOL, ORTHO_TOL};
use crate::vector::Vector;

/// Tunables for the sweep and Monte-Carlo searches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Number of base directions on the circle (also the trial count of the
    /// Monte-Carlo fallback in dimension >= 3).
    pub theta_resolution: usize,
    /// Direction samples per cone arc.
    pub phi_resolution: usize,
    /// Scale parameter range `[-t_max, t_max]`; values of `|t|` beyond
    /// `(sqrt(2)+1)^2 ~ 5.83` cannot influence the supremum, hence the
    /// default 6.
    pub t_max: f64,
    /// Grid points for the scale-parameter scan.
    pub t_grid: usize,
    /// Width to which one-dimensional refinements narrow their bracket.
    pub refine_tol: f64,
    /// Orthogonality tolerance used when certifying witnesses.
    pub tol: f64,
    /// Seed for the Monte-Carlo fallback.
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            theta_resolution: 4096,
            phi_resolution: 512,
            t_max: 6.0,
            t_grid: 512,
            refine_tol: 1e-6,
            tol: ORTHO_TOL,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_resolution < 16 {
            return Err(Error::InvalidParameter(
                "theta_resolution must be >= 16".into(),
            ));
        }
        if self.phi_resolution < 4 {
            return Err(Error::InvalidParameter("phi_resolution must be >= 4".into()));
        }
        if self.t_grid < 16 {
            return Err(Error::InvalidParameter("t_grid must be >= 16".into()));
        }
        if self.t_max < 3.0 || !self.t_max.is_finite() {
            return Err(Error::InvalidParameter(
                "t_max must be finite and >= 3".into(),
            ));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol <= 1e-2) {
            return Err(Error::InvalidParameter(
                "refine_tol must lie in (0, 1e-2]".into(),
            ));
        }
        if !(self.tol >= 0.0 && self.tol <= 1e-3) {
            return Err(Error::InvalidParameter("tol must lie in [0, 1e-3]".into()));
        }
        Ok(())
    }
}

/// A pair realizing a reported value: unit vectors `x` orthogonal to `y`
/// (Birkhoff-James, base `x`) and the scale `t` at which the defining ratio
/// attains `value` — recomputing that ratio at `(x, y, t)` reproduces
/// `value`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuWitness {
    pub x: Vector,
    pub y: Vector,
    pub t: f64,
    pub value: f64,
}

/// `mu_star` at one `lambda`: the value and the pair attaining it, where
/// `value = (lambda + t) / ||x + t y||` at the witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StarModulus {
    pub lambda: f64,
    pub value: f64,
    pub witness: MuWitness,
}

/// One point of the rectangular modulus curve:
/// `value = max(star_value, lambda * mu_star(1/lambda))`. The witness
/// belongs to whichever of the two forms won; when the scaled form wins, the
/// witness ratio is `(1/lambda + t) / ||x + t y||` and `value` is `lambda`
/// times it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModulusPoint {
    pub lambda: f64,
    pub star_value: f64,
    pub value: f64,
    pub witness: MuWitness,
}

/// A sampled modulus curve; lambdas that failed keep their error text
/// instead of silently vanishing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModulusCurve {
    pub points: Vec<ModulusPoint>,
    pub failures: Vec<CurveFailure>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFailure {
    pub lambda: f64,
    pub error: String,
}

/// `(||x|| + ||y||) / ||x + y||` — the quantity whose supremum over
/// orthogonal pairs is the rectangular constant. Orthogonality itself is not
/// checked here.
pub fn mu_pair(norm: &Norm, x: &Vector, y: &Vector) -> Result<f64> {
    let nx = norm.eval(x)?;
    let ny = norm.eval(y)?;
    let den = norm.eval_combo(x, 1.0, y);
    if den <= DENOM_TOL * (1.0 + nx + ny) {
        return Err(Error::VanishingDenominator("mu_pair"));
    }
    Ok((nx + ny) / den)
}

/// `(1 + |t|) / ||y + t x||` for unit `x`, `y`: the scale-parametrized form
/// of [`mu_pair`] along the family `(t x, y)`.
pub fn mu_ratio(norm: &Norm, x: &Vector, y: &Vector, t: f64) -> Result<f64> {
    x.check_dim(norm.dim())?;
    y.check_dim(norm.dim())?;
    if !t.is_finite() {
        return Err(Error::NonFinite { context: "mu_ratio t" });
    }
    let den = norm.eval_combo(y, t, x);
    if den <= DENOM_TOL * (1.0 + t.abs()) {
        return Err(Error::VanishingDenominator("mu_ratio"));
    }
    Ok((1.0 + t.abs()) / den)
}

pub(crate) fn mu_ratio_raw(norm: &Norm, x: &Vector, y: &Vector, t: f64) -> f64 {
    let den = norm.eval_combo(y, t, x);
    if den <= DENOM_TOL * (1.0 + t.abs()) {
        f64::NEG_INFINITY
    } else {
        (1.0 + t.abs()) / den
    }
}

fn star_ratio_raw(norm: &Norm, lambda: f64, x: &Vector, y: &Vector, t: f64) -> f64 {
    let den = norm.eval_combo(x, t, y);
    if den <= DENOM_TOL * (1.0 + t) {
        f64::NEG_INFINITY
    } else {
        (lambda + t) / den
    }
}

/// Maximizes `t -> mu_ratio(x, y, t)` over `[t_lo, t_hi]` by grid scan plus
/// golden-section polish; returns `(argmax, max)`.
pub fn best_t(
    norm: &Norm,
    x: &Vector,
    y: &Vector,
    t_lo: f64,
    t_hi: f64,
    refine_tol: f64,
) -> Result<(f64, f64)> {
    x.check_dim(norm.dim())?;
    y.check_dim(norm.dim())?;
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroVector);
    }
    if t_lo >= t_hi || !t_lo.is_finite() || !t_hi.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need finite t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    if !(refine_tol > 0.0 && refine_tol <= 1e-2) {
        return Err(Error::InvalidParameter(
            "refine_tol must lie in (0, 1e-2]".into(),
        ));
    }
    let f = |t: f64| mu_ratio_raw(norm, x, y, t);
    let (t, v) = grid_golden_max(&f, t_lo, t_hi, 512, refine_tol);
    if !v.is_finite() {
        return Err(Error::VanishingDenominator("best_t"));
    }
    Ok((t, v))
}

/// Estimates the rectangular constant by sweeping orthogonal pairs.
///
/// Dimension 2 uses the cone sweep (with polytope vertex angles added to the
/// grid, where the supremum of a polyhedral norm lives); dimension >= 3
/// falls back to seeded Monte-Carlo sections and is a lower estimate.
pub fn mu_estimate(norm: &Norm, config: &SearchConfig) -> Result<MuWitness> {
    config.validate()?;
    let objective = |x: &Vector, y: &Vector| -> Option<(f64, f64)> {
        let f = |t: f64| mu_ratio_raw(norm, x, y, t);
        let (t, v) = grid_golden_max(&f, -config.t_max, config.t_max, config.t_grid,
                                     config.refine_tol);
        v.is_finite().then_some((t, v))
    };
    let outcome = if norm.dim() == 2 {
        sweep_max(
            norm,
            config.theta_resolution,
            config.phi_resolution,
            config.refine_tol,
            &objective,
        )?
    } else {
        mc_pair_max(norm, config, &objective)
    };
    let out = outcome.ok_or(Error::EmptyCone)?;
    certify_witness(norm, &out.x, &out.y, config.tol)?;
    Ok(MuWitness {
        x: out.x,
        y: out.y,
        t: out.t,
        value: out.value,
    })
}

/// Exact rectangular constant of a polyhedral norm (or a planar `l_1` /
/// `l_inf` norm, whose ball is a polygon).
///
/// The supremum is attained with the base `x` at a polytope vertex; for each
/// vertex the orthogonal directions form two closed arcs bounded by the
/// adjacent edge directions. Arc endpoints, vertex directions inside the
/// arc, and a safety grid are scored with the exact breakpoint optimizer
/// over `t`, and the winner's neighborhood is polished.
pub fn mu_polyhedral_exact(norm: &Norm, config: &SearchConfig) -> Result<MuWitness> {
    config.validate()?;
    let poly = norm.to_polytope().ok_or(Error::UnsupportedNorm {
        op: "mu_polyhedral_exact",
    })?;
    let gauge_norm = Norm::Polyhedral(poly);
    let objective = move |x: &Vector, y: &Vector| -> Option<(f64, f64)> {
        exact_linear_best(
            &gauge_norm,
            y,
            x,
            NumeratorForm::OnePlusAbsT,
            &[(-config.t_max, config.t_max)],
        )
    };
    let out = vertex_sweep_max(norm, &objective)?.ok_or(Error::EmptyCone)?;
    certify_witness(norm, &out.x, &out.y, config.tol)?;
    Ok(MuWitness {
        x: out.x,
        y: out.y,
        t: out.t,
        value: out.value,
    })
}

/// `mu_star(lambda)`: supremum of `(lambda + t) / ||x + t y||` over
/// orthogonal unit pairs and `t > 0`.
///
/// The scan covers `t` in `[0, max(t_max, 2 + 1/lambda)]`: beyond that cap
/// the ratio is dominated by values the cap range already contains.
pub fn modulus_star(norm: &Norm, lambda: f64, config: &SearchConfig) -> Result<StarModulus> {
    config.validate()?;
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lambda must be finite and > 0, got {lambda}"
        )));
    }
    let cap = config.t_max.max(2.0 + 1.0 / lambda);
    let outcome = if let Some(poly) = norm.to_polytope() {
        let gauge_norm = Norm::Polyhedral(poly);
        let objective = move |x: &Vector, y: &Vector| -> Option<(f64, f64)> {
            exact_linear_best(
                &gauge_norm,
                x,
                y,
                NumeratorForm::LambdaPlusT(lambda),
                &[(0.0, cap)],
            )
        };
        vertex_sweep_max(norm, &objective)?
    } else {
        let objective = |x: &Vector, y: &Vector| -> Option<(f64, f64)> {
            let f = |t: f64| star_ratio_raw(norm, lambda, x, y, t);
            let (t, v) = grid_golden_max(&f, 0.0, cap, config.t_grid, config.refine_tol);
            v.is_finite().then_some((t, v))
        };
        if norm.dim() == 2 {
            sweep_max(
                norm,
                config.theta_resolution,
                config.phi_resolution,
                config.refine_tol,
                &objective,
            )?
        } else {
            mc_pair_max(norm, config, &objective)
        }
    };
    let out = outcome.ok_or(Error::EmptyCone)?;
    certify_witness(norm, &out.x, &out.y, config.tol)?;
    Ok(StarModulus {
        lambda,
        value: out.value,
        witness: MuWitness {
            x: out.x,
            y: out.y,
            t: out.t,
            value: out.value,
        },
    })
}

/// The rectangular modulus `mu(lambda) = max(mu_star(lambda),
/// lambda * mu_star(1/lambda))`. At `lambda = 1` this is the rectangular
/// constant.
pub fn modulus(norm: &Norm, lambda: f64, config: &SearchConfig) -> Result<ModulusPoint> {
    let direct = modulus_star(norm, lambda, config)?;
    if lambda == 1.0 {
        return Ok(ModulusPoint {
            lambda,
            star_value: direct.value,
            value: direct.value,
            witness: direct.witness,
        });
    }
    let dual = modulus_star(norm, 1.0 / lambda, config)?;
    let scaled = lambda * dual.value;
    let (value, witness) = if direct.value >= scaled {
        (direct.value, direct.witness)
    } else {
        (scaled, dual.witness)
    };
    Ok(ModulusPoint {
        lambda,
        star_value: direct.value,
        value,
        witness,
    })
}

/// Evaluates [`modulus`] on a list of lambdas, collecting per-lambda
/// failures instead of aborting the curve.
pub fn modulus_curve(norm: &Norm, lambdas: &[f64], config: &SearchConfig) -> ModulusCurve {
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for &lambda in lambdas {
        match modulus(norm, lambda, config) {
            Ok(p) => points.push(p),
            Err(e) => failures.push(CurveFailure {
                lambda,
                error: e.to_string(),
            }),
        }
    }
    ModulusCurve { points, failures }
}

/// Confirms a sweep winner is a genuine orthogonal unit pair.
fn certify_witness(norm: &Norm, x: &Vector, y: &Vector, tol: f64) -> Result<()> {
    let (ok, cert) = is_bj_orthogonal(norm, x, y, tol.max(1e-7))?;
    if !ok {
        return Err(Error::InvalidParameter(format!(
            "internal: witness failed orthogonality (bracket [{}, {}])",
            cert.d_minus, cert.d_plus
        )));
    }
    Ok(())
}

/// Numerator of the exact ratio optimizer.
pub(crate) enum NumeratorForm {
    /// `1 + |t|` (rectangular constant form, denominator `||y + t x||`).
    OnePlusAbsT,
    /// `lambda + t` (modulus form, denominator `||x + t y||`).
    LambdaPlusT(f64),
}

/// Exact maximization of `N(t) / ||fixed + t * moving||` over the given `t`
/// ranges for a polyhedral norm.
///
/// The denominator is the upper envelope of the affine functions
/// `f(fixed) + t f(moving)` over facets, so on every interval between
/// envelope breakpoints the ratio is a monotone Mobius function; the maximum
/// therefore sits at a range end, at the numerator kink `t = 0`, or at an
/// envelope breakpoint. Breakpoints happen where the active facet changes,
/// and the active facet can only move to an angular neighbor: the point
/// `fixed + t * moving` travels along a line, and its angular velocity
/// `cross(fixed + t moving, moving) / |.|^2 = cross(fixed, moving) / |.|^2`
/// has constant sign. Crossings of angularly adjacent facet lines are hence
/// a complete candidate set, and all of them are scored.
pub(crate) fn exact_linear_best(
    gauge_norm: &Norm,
    fixed: &Vector,
    moving: &Vector,
    form: NumeratorForm,
    ranges: &[(f64, f64)],
) -> Option<(f64, f64)> {
    let poly = gauge_norm.as_polytope().expect("exact path gets a polytope");
    let fc = fixed.coords();
    let mc = moving.coords();
    let lines: Vec<(f64, f64)> = poly
        .facets()
        .iter()
        .map(|f| {
            (
                f.functional.apply2([fc[0], fc[1]]),
                f.functional.apply2([mc[0], mc[1]]),
            )
        })
        .collect();

    let numerator = |t: f64| match form {
        NumeratorForm::OnePlusAbsT => 1.0 + t.abs(),
        NumeratorForm::LambdaPlusT(l) => l + t,
    };
    let mut best: Option<(f64, f64)> = None;
    let mut consider = |t: f64| {
        let den = gauge_norm.eval_combo(fixed, t, moving);
        if den <= DENOM_TOL * (1.0 + numerator(t).abs()) {
            return;
        }
        let v = numerator(t) / den;
        if !v.is_finite() {
            return;
        }
        match best {
            Some((bt, bv)) if v < bv || (v == bv && t >= bt) => {}
            _ => best = Some((t, v)),
        }
    };

    for &(lo, hi) in ranges {
        consider(lo);
        consider(hi);
        if lo < 0.0 && hi > 0.0 {
            consider(0.0);
        }
        for i in 0..lines.len() {
            let (ci, di) = lines[i];
            let (cj, dj) = lines[(i + 1) % lines.len()];
            let slope_gap = di - dj;
            if slope_gap == 0.0 {
                continue;
            }
            let t = (cj - ci) / slope_gap;
            if t.is_finite() && t > lo && t < hi {
                consider(t);
            }
        }
    }
    best
}

/// Sweep over polytope vertices only: the exact-path analogue of
/// `sweep_max`. The cone at a vertex is two closed arcs spanned by the
/// adjacent edge directions; candidates are arc ends, interior vertex
/// directions, a small grid, and a golden polish of the winner.
pub(crate) fn vertex_sweep_max<F>(
    norm: &Norm,
    objective: &F,
) -> Result<Option<crate::sweep::SweepOutcome>>
where
    F: Fn(&Vector, &Vector) -> Option<(f64, f64)> + Sync + Send,
{
    let poly = norm.to_polytope().ok_or(Error::UnsupportedNorm {
        op: "vertex sweep",
    })?;
    let vertex_angles = poly.vertex_angles();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let arc_grid = 65usize;

    let per_vertex = |vi: usize| -> Option<Candidate> {
        let v = poly.vertices()[vi];
        let x = Vector::xy(v[0], v[1]);
        let (inc, out) = poly.facets_at_vertex(vi);
        let alpha_in = poly.facets()[inc].functional.angle();
        let mut alpha_out = poly.facets()[out].functional.angle();
        if alpha_out < alpha_in {
            alpha_out += std::f64::consts::TAU;
        }
        let turn = alpha_out - alpha_in;
        let mut best: Option<Candidate> = None;
        for (ai, offset) in [half_pi, 3.0 * half_pi].into_iter().enumerate() {
            let lo = wrap_angle(alpha_in + offset);
            let hi = lo + turn;
            let mut dirs: Vec<f64> = (0..arc_grid)
                .map(|j| lo + turn * j as f64 / (arc_grid - 1) as f64)
                .collect();
            for &va in &vertex_angles {
                let off = wrap_angle(va - lo);
                if off > 0.0 && off < turn {
                    dirs.push(lo + off);
                }
            }
            let spacing = turn / (arc_grid - 1) as f64;
            for (pi, &phi) in dirs.iter().enumerate() {
                let Ok(y) = norm.sphere_point(phi) else { continue };
                let Some((t, value)) = objective(&x, &y) else { continue };
                let cand = Candidate {
                    value,
                    key: (vi as u32, ai as u32, pi as u32),
                    x: x.clone(),
                    y,
                    t,
                    phi_window: ((phi - spacing).max(lo), (phi + spacing).min(hi)),
                };
                best = Some(match best.take() {
                    Some(b) => {
                        if cand.value > b.value || (cand.value == b.value && cand.key < b.key) {
                            cand
                        } else {
                            b
                        }
                    }
                    None => cand,
                });
            }
        }
        best
    };

    let reduced = max_over_indices(poly.vertices().len(), per_vertex);
    let Some(mut best) = reduced else {
        return Ok(None);
    };

    // Polish the winner's arc cell; interior smooth maxima gain ~quadratic
    // accuracy, while structured optima (arc ends, vertex directions) were
    // already hit exactly.
    let (wlo, whi) = best.phi_window;
    if whi - wlo > DEGENERATE_ARC {
        let x = best.x.clone();
        let score = |phi: f64| -> f64 {
            match norm.sphere_point(phi) {
                Ok(y) => objective(&x, &y).map_or(f64::NEG_INFINITY, |(_, v)| v),
                Err(_) => f64::NEG_INFINITY,
            }
        };
        let (phi_ref, val_ref) = golden_max(&score, wlo, whi, 1e-10);
        if val_ref > best.value {
            if let Ok(y) = norm.sphere_point(phi_ref) {
                if let Some((t, value)) = objective(&x, &y) {
                    if value > best.value {
                        best.y = y;
                        best.t = t;
                        best.value = value;
                    }
                }
            }
        }
    }

    Ok(Some(crate::sweep::SweepOutcome {
        x: best.x,
        y: best.y,
        t: best.t,
        value: best.value,
    }))
}

/// Monte-Carlo pair maximization for dimension >= 3: random unit base,
/// random section direction, orthogonal partner by bisection inside the
/// section. Trials are independently seeded, so the reduction is
/// deterministic under any scheduling.
fn mc_pair_max<F>(
    norm: &Norm,
    config: &SearchConfig,
    objective: &F,
) -> Option<crate::sweep::SweepOutcome>
where
    F: Fn(&Vector, &Vector) -> Option<(f64, f64)> + Sync + Send,
{
    let dim = norm.dim();
    let trials = config.theta_resolution;
    let per_trial = |i: usize| -> Option<Candidate> {
        let mut rng =
            ChaCha8Rng::seed_from_u64(config.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let x = random_unit(norm, &mut rng, dim)?;
        for _ in 0..8 {
            let z = random_unit(norm, &mut rng, dim)?;
            if let Some(y) = orthogonal_partner(norm, &x, &z, config.tol) {
                let (t, value) = objective(&x, &y)?;
                return Some(Candidate {
                    value,
                    key: (i as u32, 0, 0),
                    x,
                    y,
                    t,
                    phi_window: (0.0, 0.0),
                });
            }
        }
        None
    };
    max_over_indices(trials, per_trial).map(|b| crate::sweep::SweepOutcome {
        x: b.x,
        y: b.y,
        t: b.t,
        value: b.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn linf() -> Norm {
        Norm::lp(f64::INFINITY, 2).unwrap()
    }

    fn fast_config() -> SearchConfig {
        SearchConfig {
            theta_resolution: 512,
            phi_resolution: 128,
            t_grid: 256,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn mu_pair_examples() {
        let v = mu_pair(&linf(), &Vector::xy(1.0, 1.0), &Vector::xy(-2.0, 0.0)).unwrap();
        assert!((v - 3.0).abs() < 1e-15);

        let l2 = Norm::euclidean(2).unwrap();
        let v = mu_pair(&l2, &Vector::xy(1.0, 0.0), &Vector::xy(0.0, 1.0)).unwrap();
        assert!((v - SQRT2).abs() < 1e-15);

        let l1 = Norm::lp(1.0, 2).unwrap();
        let v = mu_pair(&l1, &Vector::xy(1.0, 0.0), &Vector::xy(0.0, 1.0)).unwrap();
        assert!((v - 1.0).abs() < 1e-15);

        assert!(matches!(
            mu_pair(&l2, &Vector::xy(1.0, 0.0), &Vector::xy(-1.0, 0.0)),
            Err(Error::VanishingDenominator(_))
        ));
    }

    #[test]
    fn mu_ratio_examples() {
        // Diamond ball: x = (1,0), y = (-1/2, 1/2) (unit in l1), t = 1/2.
        let l1 = Norm::lp(1.0, 2).unwrap();
        let v = mu_ratio(&l1, &Vector::xy(1.0, 0.0), &Vector::xy(-0.5, 0.5), 0.5).unwrap();
        assert!((v - 3.0).abs() < 1e-15);
        // mu_ratio at t and mu_pair of (t x, y) agree.
        let x = Vector::xy(1.0, 1.0);
        let y = Vector::xy(-1.0, 0.0);
        for t in [-2.0, -0.5, 0.3, 1.7] {
            let a = mu_ratio(&linf(), &x, &y, t).unwrap();
            let b = mu_pair(&linf(), &x.scale(t), &y).unwrap();
            assert!((a - b).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn best_t_examples() {
        let l2 = Norm::euclidean(2).unwrap();
        let (t, v) = best_t(&l2, &Vector::xy(1.0, 0.0), &Vector::xy(0.0, 1.0), -6.0, 6.0, 1e-9)
            .unwrap();
        assert!((t.abs() - 1.0).abs() < 1e-5, "t = {t}");
        assert!((v - SQRT2).abs() < 1e-9);

        // Kinked peak: the max-norm ratio for x = (-1,0), y = (1,1) climbs
        // linearly to 3 at t = 2 and falls beyond.
        let (t, v) = best_t(&linf(), &Vector::xy(-1.0, 0.0), &Vector::xy(1.0, 1.0), -6.0, 6.0,
                            1e-9).unwrap();
        assert!((t - 2.0).abs() < 1e-5, "t = {t}");
        assert!((v - 3.0).abs() < 1e-5);

        assert!(best_t(&l2, &Vector::xy(1.0, 0.0), &Vector::xy(0.0, 1.0), 2.0, 1.0, 1e-9)
            .is_err());
    }

    #[test]
    fn mu_estimate_euclidean_is_sqrt2() {
        let l2 = Norm::euclidean(2).unwrap();
        let w = mu_estimate(&l2, &fast_config()).unwrap();
        assert!((w.value - SQRT2).abs() < 1e-3, "mu = {}", w.value);
        // Witness self-consistency.
        let again = mu_ratio(&l2, &w.x, &w.y, w.t).unwrap();
        assert!((again - w.value).abs() < 1e-12);
    }

    #[test]
    fn mu_estimate_linf_is_three() {
        let w = mu_estimate(&linf(), &fast_config()).unwrap();
        assert!((w.value - 3.0).abs() < 1e-3, "mu = {}", w.value);
    }

    #[test]
    fn mu_exact_square_and_diamond_hit_three() {
        for norm in [linf(), Norm::lp(1.0, 2).unwrap()] {
            let w = mu_polyhedral_exact(&norm, &SearchConfig::default()).unwrap();
            assert!(
                (w.value - 3.0).abs() < 1e-12,
                "{}: mu = {}",
                norm.describe(),
                w.value
            );
            let again = mu_ratio(&norm, &w.x, &w.y, w.t).unwrap();
            assert!((again - w.value).abs() < 1e-12);
        }
    }

    #[test]
    fn mu_exact_hexagon_is_two() {
        // Regular hexagon: the best configuration is a vertex base with the
        // partner along an adjacent edge, giving exactly 2.
        let s3 = 3.0_f64.sqrt();
        let norm = Norm::polyhedral(&[[1.0, 0.0], [0.5, s3 / 2.0], [-0.5, s3 / 2.0]]).unwrap();
        let w = mu_polyhedral_exact(&norm, &SearchConfig::default()).unwrap();
        assert!((w.value - 2.0).abs() < 1e-9, "mu = {}", w.value);
        assert!(w.value > SQRT2 && w.value < 3.0);
    }

    #[test]
    fn mu_exact_rejects_smooth_norms() {
        let l2 = Norm::euclidean(2).unwrap();
        assert!(matches!(
            mu_polyhedral_exact(&l2, &SearchConfig::default()),
            Err(Error::UnsupportedNorm { .. })
        ));
    }

    #[test]
    fn modulus_star_examples() {
        // Square ball: mu_star(lambda) = lambda + 2 (t = 2 against an
        // adjacent corner direction).
        let s = modulus_star(&linf(), 1.0, &SearchConfig::default()).unwrap();
        assert!((s.value - 3.0).abs() < 1e-12, "{}", s.value);
        let s = modulus_star(&linf(), 0.5, &SearchConfig::default()).unwrap();
        assert!((s.value - 2.5).abs() < 1e-12, "{}", s.value);

        // Euclidean plane: mu_star(lambda) = sqrt(1 + lambda^2) at t = 1/lambda.
        let l2 = Norm::euclidean(2).unwrap();
        let s = modulus_star(&l2, 2.0, &fast_config()).unwrap();
        assert!((s.value - 5.0_f64.sqrt()).abs() < 1e-3, "{}", s.value);
        assert!((s.witness.t - 0.5).abs() < 1e-2, "t = {}", s.witness.t);

        assert!(modulus_star(&l2, 0.0, &fast_config()).is_err());
        assert!(modulus_star(&l2, -1.0, &fast_config()).is_err());
    }

    #[test]
    fn modulus_examples() {
        // Square ball: mu(lambda) = max(lambda + 2, 2 lambda + 1), the upper
        // bound of the general sandwich, attained.
        let p = modulus(&linf(), 2.0, &SearchConfig::default()).unwrap();
        assert!((p.value - 5.0).abs() < 1e-9, "{}", p.value);
        assert!((p.star_value - 4.0).abs() < 1e-9, "{}", p.star_value);

        let p = modulus(&linf(), 1.0, &SearchConfig::default()).unwrap();
        assert!((p.value - 3.0).abs() < 1e-9);

        let l2 = Norm::euclidean(2).unwrap();
        let p = modulus(&l2, 3.0, &fast_config()).unwrap();
        assert!((p.value - 10.0_f64.sqrt()).abs() < 1e-3, "{}", p.value);
        // Sandwich bounds.
        let lam = 3.0_f64;
        assert!(p.value >= (1.0 + lam * lam).sqrt() - 1e-6);
        assert!(p.value <= (lam + 2.0).max(1.0 + 2.0 * lam) + 1e-6);
    }

    #[test]
    fn modulus_curve_collects_failures() {
        let curve = modulus_curve(&linf(), &[0.5, -1.0, 2.0], &SearchConfig::default());
        assert_eq!(curve.points.len(), 2);
        assert_eq!(curve.failures.len(), 1);
        assert_eq!(curve.failures[0].lambda, -1.0);
    }

    #[test]
    fn mc_fallback_reaches_the_euclidean_constant() {
        let l23 = Norm::euclidean(3).unwrap();
        let config = SearchConfig {
            theta_resolution: 200,
            ..fast_config()
        };
        let w = mu_estimate(&l23, &config).unwrap();
        // Every section of a Euclidean space is Euclidean, so any successful
        // trial lands on sqrt(2).
        assert!((w.value - SQRT2).abs() < 1e-3, "mu = {}", w.value);
    }

    #[test]
    fn config_validation() {
        let bad = [
            SearchConfig {
                theta_resolution: 4,
                ..SearchConfig::default()
            },
            SearchConfig {
                t_max: 2.0,
                ..SearchConfig::default()
            },
            SearchConfig {
                refine_tol: 0.0,
                ..SearchConfig::default()
            },
        ];
        for config in bad {
            assert!(config.validate().is_err());
        }
        assert!(SearchConfig::default().validate().is_ok());
    }
}
