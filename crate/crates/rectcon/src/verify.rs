//! Cross-cutting invariant verification.
//!
//! Everything the library computes is tied together by identities: edge
//! endpoints of a polygonal sphere are orthogonal to their edge, orthogonal
//! directions never shrink the norm, the rectangular constant hits 3 exactly
//! when the sphere carries a segment of length 2, the modulus is sandwiched
//! between its Euclidean and extreme values, and the windowed supremum
//! separates inner product spaces from everything else. This module checks
//! those identities numerically over fixture norms and seeded random
//! polygons, reporting one finding per invariant.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::Norm;
use crate::ortho::{
    is_bj_orthogonal, one_sided_derivatives, quotient_derivatives, sample_orthogonal_pairs,
};
use crate::rect::{
    modulus_star, mu_estimate, mu_polyhedral_exact, mu_ratio, MuWitness, SearchConfig,
    StarModulus,
};
use crate::sphere::{
    flatness_growth_check, ips_test, max_segment_length, segment_orthogonality_check,
    IPS_WINDOW_HI, IPS_WINDOW_LO,
};
use crate::tolerances::ORTHO_TOL;
use crate::vector::Vector;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Scales at which modulus invariants are probed; the set is closed under
/// reciprocals, so `mu(lambda)` can be assembled from the probed stars.
pub const LAMBDA_PROBES: [f64; 3] = [0.5, 1.0, 2.0];

/// Tolerance of the exact-value criteria (`mu = 3`, `segment = 2`,
/// `mu_star = lambda + 2`).
pub const CRITERION_TOL: f64 = 1e-6;

/// One verified invariant: how many individual checks ran, how many failed,
/// and up to five failure descriptions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantFinding {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

/// Result of [`verify_suite`]: per-invariant findings over a list of norms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub norms: Vec<String>,
    pub findings: Vec<InvariantFinding>,
    pub passed: bool,
}

/// Accumulator behind an [`InvariantFinding`].
struct Tally {
    name: &'static str,
    checks: usize,
    violations: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            checks: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.push(detail());
            }
        }
    }

    /// A check that could not even run counts as a violation.
    fn error(&mut self, detail: String) {
        self.record(false, || detail);
    }

    fn finish(self) -> InvariantFinding {
        InvariantFinding {
            name: self.name.to_string(),
            passed: self.violations == 0,
            checks: self.checks,
            violations: self.violations,
            examples: self.examples,
        }
    }
}

/// The regular hexagon gauge. Its sphere carries segments of length exactly
/// 1, which puts the rectangular constant at exactly 2 — strictly between
/// the Euclidean sqrt(2) and the extreme 3.
pub fn regular_hexagon() -> Norm {
    let s = 3.0_f64.sqrt() / 2.0;
    Norm::polyhedral(&[[1.0, 0.0], [0.5, s], [-0.5, s]]).expect("hexagon is non-degenerate")
}

/// Fixture norms joined to every verification run: the Euclidean plane, the
/// diamond (`l_1`), the square (`l_inf`), a smooth non-Euclidean `l_3` plane
/// and the regular hexagon.
pub fn standard_fixtures() -> Vec<Norm> {
    vec![
        Norm::euclidean(2).expect("dimension 2 is valid"),
        Norm::lp(1.0, 2).expect("p = 1 is valid"),
        Norm::lp(f64::INFINITY, 2).expect("p = inf is valid"),
        Norm::lp(3.0, 2).expect("p = 3 is valid"),
        regular_hexagon(),
    ]
}

/// Seeded random polygon gauges: `k` points at uniform angles with radii in
/// `[0.5, 1.5]` (with `k` drawn from `3..=20`), symmetrized and
/// canonicalized. Degenerate draws are rejected and redrawn, so the same
/// seed always yields the same polygons.
pub fn random_polygons(count: usize, seed: u64) -> Result<Vec<Norm>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 64 * count.max(1);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > budget {
            return Err(Error::DegeneratePolytope(format!(
                "could not draw {count} polygons in {budget} attempts"
            )));
        }
        let k: usize = rng.gen_range(3..=20);
        let pts: Vec<[f64; 2]> = (0..k)
            .map(|_| {
                let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r: f64 = rng.gen_range(0.5..1.5);
                [r * ang.cos(), r * ang.sin()]
            })
            .collect();
        if let Ok(norm) = Norm::polyhedral(&pts) {
            out.push(norm);
        }
    }
    Ok(out)
}

/// Trials per norm so that a suite totals roughly `trials` checks.
fn per_norm(trials: usize, norms: usize) -> usize {
    trials.div_ceil(norms.max(1)).max(4)
}

/// Derives an independent stream per suite and norm.
fn stream_seed(seed: u64, suite: u64, idx: usize) -> u64 {
    seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (idx as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

/// Orthogonality is invariant under scaling both vectors: certified pairs
/// stay orthogonal after `x -> alpha x`, `y -> beta y` for any nonzero
/// `alpha`, `beta` (the derivative bracket only scales and possibly flips).
pub fn check_scale_invariance(norms: &[Norm], trials: usize, seed: u64) -> InvariantFinding {
    let mut tally = Tally::new("orthogonality-scale-invariance");
    let per = per_norm(trials, norms.len());
    for (i, norm) in norms.iter().enumerate() {
        let s = stream_seed(seed, 1, i);
        let pairs = match sample_orthogonal_pairs(norm, per, s, ORTHO_TOL) {
            Ok(p) => p,
            Err(e) => {
                tally.error(format!("{}: sampling failed: {e}", norm.describe()));
                continue;
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0xA5A5);
        for (x, y) in pairs {
            let alpha: f64 = rng.gen_range(0.2..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let beta: f64 = rng.gen_range(0.2..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            // The bracket scales by |beta| and flips sign with the signs of
            // alpha and beta, so a 1e-9-certified pair stays within 1e-8
            // after scaling by magnitudes up to 3.
            match is_bj_orthogonal(norm, &x.scale(alpha), &y.scale(beta), 1e-8) {
                Ok((ok, cert)) => tally.record(ok, || {
                    format!(
                        "{}: scaled pair lost orthogonality (alpha={alpha}, beta={beta}, \
                         bracket [{}, {}])",
                        norm.describe(),
                        cert.d_minus,
                        cert.d_plus
                    )
                }),
                Err(e) => tally.error(format!("{}: {e}", norm.describe())),
            }
        }
    }
    tally.finish()
}

/// In Euclidean space, Birkhoff-James orthogonality is exactly dot-product
/// orthogonality, in both directions.
pub fn check_euclidean_equivalence(trials: usize, seed: u64) -> InvariantFinding {
    let mut tally = Tally::new("euclidean-dot-agreement");
    let dims = [2usize, 3];
    let per = per_norm(trials, dims.len());
    for (i, &dim) in dims.iter().enumerate() {
        let norm = Norm::euclidean(dim).expect("dimension is valid");
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 2, i));
        let mut done = 0usize;
        while done < per {
            let x = Vector::new((0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let y = Vector::new((0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let (Ok(x), Ok(y)) = (x, y) else { continue };
            let nx = x.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
            let ny = y.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
            if nx < 0.1 || ny < 0.1 {
                continue;
            }
            done += 1;
            let dot = x.dot(&y);
            if dot.abs() > 1e-6 * nx * ny {
                // Clearly non-orthogonal in the inner product sense.
                match is_bj_orthogonal(&norm, &x, &y, ORTHO_TOL) {
                    Ok((ok, _)) => tally.record(!ok, || {
                        format!("dim {dim}: dot = {dot} but Birkhoff-James orthogonal")
                    }),
                    Err(e) => tally.error(format!("dim {dim}: {e}")),
                }
            }
            // Project out the parallel component; the residual is exactly
            // dot-orthogonal, so it must be Birkhoff-James orthogonal too.
            let perp = y.add_scaled(-dot / (nx * nx), &x);
            if perp.coords().iter().map(|c| c * c).sum::<f64>().sqrt() < 1e-6 {
                continue;
            }
            match is_bj_orthogonal(&norm, &x, &perp, ORTHO_TOL) {
                Ok((ok, cert)) => tally.record(ok, || {
                    format!(
                        "dim {dim}: projected perpendicular not orthogonal \
                         (bracket [{}, {}])",
                        cert.d_minus, cert.d_plus
                    )
                }),
                Err(e) => tally.error(format!("dim {dim}: {e}")),
            }
        }
    }
    tally.finish()
}

/// Along an orthogonal direction the norm grows monotonically:
/// `||x + lambda y||` is nondecreasing in `|lambda|` and never falls below
/// `||x||`.
pub fn check_growth_monotonicity(norms: &[Norm], trials: usize, seed: u64) -> InvariantFinding {
    let mut tally = Tally::new("orthogonal-growth-monotone");
    let per = per_norm(trials, norms.len());
    for (i, norm) in norms.iter().enumerate() {
        let s = stream_seed(seed, 3, i);
        let pairs = match sample_orthogonal_pairs(norm, per, s, ORTHO_TOL) {
            Ok(p) => p,
            Err(e) => {
                tally.error(format!("{}: sampling failed: {e}", norm.describe()));
                continue;
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5A5A);
        for (x, y) in pairs {
            let (a, b): (f64, f64) = (rng.gen_range(0.0..6.0), rng.gen_range(0.0..6.0));
            let (l1, l2) = if a <= b { (a, b) } else { (b, a) };
            for sign in [1.0, -1.0] {
                let v1 = norm.eval_combo(&x, sign * l1, &y);
                let v2 = norm.eval_combo(&x, sign * l2, &y);
                tally.record(v2 >= v1 - 1e-9 && v1 >= 1.0 - 1e-9, || {
                    format!(
                        "{}: ||x + {} y|| = {v1}, ||x + {} y|| = {v2} violate monotone growth",
                        norm.describe(),
                        sign * l1,
                        sign * l2
                    )
                });
            }
        }
    }
    tally.finish()
}

/// Every edge of a polygonal unit sphere is a sphere segment whose start is
/// orthogonal to the edge direction — in both edge orientations.
pub fn check_edge_orthogonality(norms: &[Norm]) -> InvariantFinding {
    let mut tally = Tally::new("edge-endpoint-orthogonality");
    for norm in norms {
        let Some(poly) = norm.to_polytope() else { continue };
        let verts = poly.vertices();
        for f in poly.facets() {
            let u = Vector::xy(verts[f.start][0], verts[f.start][1]);
            let v = Vector::xy(verts[f.end][0], verts[f.end][1]);
            for (a, b) in [(&u, &v), (&v, &u)] {
                match segment_orthogonality_check(norm, a, b) {
                    Ok((ok, cert)) => tally.record(ok, || {
                        format!(
                            "{}: edge endpoint not orthogonal to its edge \
                             (bracket [{}, {}])",
                            norm.describe(),
                            cert.d_minus,
                            cert.d_plus
                        )
                    }),
                    Err(e) => tally.error(format!("{}: {e}", norm.describe())),
                }
            }
        }
    }
    tally.finish()
}

/// If an interior point of a sphere segment is orthogonal to `y`, both
/// segment endpoints are orthogonal to `y` as well. Probed on polygon edges,
/// where interior points are orthogonal exactly to the edge direction.
pub fn check_segment_inheritance(norms: &[Norm], trials: usize, seed: u64) -> InvariantFinding {
    let mut tally = Tally::new("segment-interior-inheritance");
    let polys: Vec<&Norm> = norms.iter().filter(|n| n.to_polytope().is_some()).collect();
    if polys.is_empty() {
        return tally.finish();
    }
    let per = per_norm(trials, polys.len());
    for (i, norm) in polys.iter().enumerate() {
        let poly = norm.to_polytope().expect("filtered to polytopes");
        let verts = poly.vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 4, i));
        for _ in 0..per {
            let fi = rng.gen_range(0..poly.facets().len());
            let f = &poly.facets()[fi];
            let (a, b) = (verts[f.start], verts[f.end]);
            let s: f64 = rng.gen_range(0.1..0.9);
            let x0 = Vector::xy(
                (1.0 - s) * a[0] + s * b[0],
                (1.0 - s) * a[1] + s * b[1],
            );
            let dir = Vector::xy(b[0] - a[0], b[1] - a[1]);
            let y = match norm.normalize(&dir) {
                Ok(y) => {
                    if rng.gen::<bool>() {
                        y
                    } else {
                        y.scale(-1.0)
                    }
                }
                Err(e) => {
                    tally.error(format!("{}: {e}", norm.describe()));
                    continue;
                }
            };
            let interior = is_bj_orthogonal(norm, &x0, &y, ORTHO_TOL);
            let at_a = is_bj_orthogonal(norm, &Vector::xy(a[0], a[1]), &y, ORTHO_TOL);
            let at_b = is_bj_orthogonal(norm, &Vector::xy(b[0], b[1]), &y, ORTHO_TOL);
            match (interior, at_a, at_b) {
                (Ok((oi, _)), Ok((oa, _)), Ok((ob, _))) => {
                    tally.record(oi && oa && ob, || {
                        format!(
                            "{}: edge {fi} at s = {s}: interior orthogonal = {oi}, \
                             endpoints = ({oa}, {ob})",
                            norm.describe()
                        )
                    });
                }
                _ => tally.error(format!("{}: bracket computation failed", norm.describe())),
            }
        }
    }
    tally.finish()
}

/// The closed-form/active-facet derivative brackets agree with the generic
/// difference-quotient ladder on random inputs.
///
/// On polyhedral norms the ladder is near-exact (quotients stabilize once
/// the active facet does), so the exact bracket must lie inside the ladder
/// bracket and the two must agree within 1e-6. On smooth norms the ladder's
/// noise floor scales with the magnitudes involved, so the gate does too.
pub fn check_derivative_agreement(norms: &[Norm], trials: usize, seed: u64) -> InvariantFinding {
    let mut tally = Tally::new("derivative-methods-agree");
    let per = per_norm(trials, norms.len());
    for (i, norm) in norms.iter().enumerate() {
        let dim = norm.dim();
        let exact_ladder = norm.as_polytope().is_some();
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 5, i));
        let mut done = 0usize;
        while done < per {
            let x = Vector::new((0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let y = Vector::new((0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let (Ok(x), Ok(y)) = (x, y) else { continue };
            if x.coords().iter().map(|c| c.abs()).sum::<f64>() < 0.1 {
                continue;
            }
            done += 1;
            match (
                one_sided_derivatives(norm, &x, &y),
                quotient_derivatives(norm, &x, &y),
            ) {
                (Ok((dm, dp)), Ok((qm, qp))) => {
                    let ok = if exact_ladder {
                        let contained = qm <= dm + 1e-7 && dp <= qp + 1e-7;
                        contained && (dm - qm).abs() <= 1e-6 && (dp - qp).abs() <= 1e-6
                    } else {
                        let scale =
                            1.0 + y.coords().iter().fold(0.0_f64, |a, c| a.max(c.abs()));
                        (dm - qm).abs() <= 1e-4 * scale && (dp - qp).abs() <= 1e-4 * scale
                    };
                    tally.record(ok, || {
                        format!(
                            "{}: closed-form bracket [{dm}, {dp}] vs ladder [{qm}, {qp}]",
                            norm.describe()
                        )
                    });
                }
                _ => tally.error(format!("{}: bracket computation failed", norm.describe())),
            }
        }
    }
    tally.finish()
}

/// Per-norm quantities shared by the cross-checks of [`verify_suite`].
struct NormCtx {
    norm: Norm,
    label: String,
    mu_exact: Option<MuWitness>,
    mu_sweep: Option<MuWitness>,
    segment: Option<f64>,
}

fn contexts(norms: &[Norm], config: &SearchConfig, tally: &mut Tally) -> Vec<NormCtx> {
    norms
        .iter()
        .map(|norm| {
            let label = norm.describe();
            let mu_exact = if norm.to_polytope().is_some() {
                match mu_polyhedral_exact(norm, config) {
                    Ok(w) => Some(w),
                    Err(e) => {
                        tally.error(format!("{label}: exact mu failed: {e}"));
                        None
                    }
                }
            } else {
                None
            };
            let mu_sweep = match mu_estimate(norm, config) {
                Ok(w) => Some(w),
                Err(e) => {
                    tally.error(format!("{label}: swept mu failed: {e}"));
                    None
                }
            };
            let segment = if norm.dim() == 2 {
                match max_segment_length(norm) {
                    Ok(seg) => Some(seg.length),
                    Err(e) => {
                        tally.error(format!("{label}: segment scan failed: {e}"));
                        None
                    }
                }
            } else {
                None
            };
            tally.record(true, String::new);
            NormCtx {
                norm: norm.clone(),
                label,
                mu_exact,
                mu_sweep,
                segment,
            }
        })
        .collect()
}

/// Runs every invariant over the given norms: the sampled property suites,
/// the norm axioms, and the cross-identities between the rectangular
/// constant, the modulus, sphere segments and the inner-product test.
pub fn verify_suite(
    norms: &[Norm],
    config: &SearchConfig,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport> {
    config.validate()?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let mut findings = Vec::new();

    // Norm axioms on every input.
    let mut axioms = Tally::new("norm-axioms");
    for (i, norm) in norms.iter().enumerate() {
        let rep = norm.validate(per_norm(trials, norms.len()).max(64), stream_seed(seed, 6, i));
        axioms.record(rep.passed, || {
            format!(
                "{}: {}",
                norm.describe(),
                rep.violations.first().cloned().unwrap_or_default()
            )
        });
    }
    findings.push(axioms.finish());

    // Sampled property suites.
    findings.push(check_scale_invariance(norms, trials, seed));
    findings.push(check_euclidean_equivalence(trials, seed));
    findings.push(check_growth_monotonicity(norms, trials, seed));
    findings.push(check_edge_orthogonality(norms));
    findings.push(check_segment_inheritance(norms, trials, seed));
    findings.push(check_derivative_agreement(norms, trials, seed));

    // Expensive per-norm searches, shared below.
    let mut computed = Tally::new("searches-complete");
    let ctxs = contexts(norms, config, &mut computed);
    findings.push(computed.finish());

    // Witnesses reproduce their reported values and are really orthogonal.
    let mut witness = Tally::new("witness-consistency");
    for ctx in &ctxs {
        for w in [ctx.mu_exact.as_ref(), ctx.mu_sweep.as_ref()].into_iter().flatten() {
            match mu_ratio(&ctx.norm, &w.x, &w.y, w.t) {
                Ok(r) => witness.record((r - w.value).abs() <= 1e-9, || {
                    format!("{}: witness ratio {r} vs reported {}", ctx.label, w.value)
                }),
                Err(e) => witness.error(format!("{}: {e}", ctx.label)),
            }
            match is_bj_orthogonal(&ctx.norm, &w.x, &w.y, 1e-7) {
                Ok((ok, _)) => witness.record(ok, || {
                    format!("{}: witness pair is not orthogonal", ctx.label)
                }),
                Err(e) => witness.error(format!("{}: {e}", ctx.label)),
            }
        }
    }
    findings.push(witness.finish());

    // The rectangular constant lives in [sqrt(2), 3].
    let mut bounds = Tally::new("rectangular-constant-bounds");
    for ctx in &ctxs {
        if let Some(w) = &ctx.mu_exact {
            bounds.record(
                w.value >= SQRT2 - 1e-9 && w.value <= 3.0 + 1e-9,
                || format!("{}: exact mu = {} out of [sqrt(2), 3]", ctx.label, w.value),
            );
        }
        if let Some(w) = &ctx.mu_sweep {
            bounds.record(
                w.value >= SQRT2 - 1e-3 && w.value <= 3.0 + 1e-9,
                || format!("{}: swept mu = {} out of [sqrt(2), 3]", ctx.label, w.value),
            );
        }
        // Exact and swept searches agree where both ran.
        if let (Some(e), Some(s)) = (&ctx.mu_exact, &ctx.mu_sweep) {
            bounds.record((e.value - s.value).abs() <= 2e-3, || {
                format!(
                    "{}: exact mu {} vs swept mu {} disagree",
                    ctx.label, e.value, s.value
                )
            });
        }
    }
    findings.push(bounds.finish());

    // Modulus: Euclidean floor, the lambda + 2 ceiling, and the criterion
    // tying mu_star(lambda) = lambda + 2 to segments of length 2.
    let mut mod_bounds = Tally::new("modulus-bounds");
    let mut mod_criterion = Tally::new("modulus-segment-criterion");
    // Index of 1/lambda within LAMBDA_PROBES.
    let reciprocal = [2usize, 1, 0];
    for ctx in &ctxs {
        if ctx.norm.dim() != 2 {
            continue;
        }
        let stars: Vec<Option<StarModulus>> = LAMBDA_PROBES
            .iter()
            .map(|&l| match modulus_star(&ctx.norm, l, config) {
                Ok(s) => Some(s),
                Err(e) => {
                    mod_bounds.error(format!("{}: mu_star({l}) failed: {e}", ctx.label));
                    None
                }
            })
            .collect();
        for (i, &lambda) in LAMBDA_PROBES.iter().enumerate() {
            let (Some(direct), Some(dual)) = (&stars[i], &stars[reciprocal[i]]) else {
                continue;
            };
            let mu_lambda = direct.value.max(lambda * dual.value);
            let floor = (1.0 + lambda * lambda).sqrt();
            let ceiling = (lambda + 2.0).max(1.0 + 2.0 * lambda);
            mod_bounds.record(
                mu_lambda >= floor - CRITERION_TOL && mu_lambda <= ceiling + CRITERION_TOL,
                || {
                    format!(
                        "{}: mu({lambda}) = {mu_lambda} outside [{floor}, {ceiling}]",
                        ctx.label
                    )
                },
            );
            mod_bounds.record(
                direct.value >= lambda.max(1.0) - CRITERION_TOL
                    && direct.value <= lambda + 2.0 + CRITERION_TOL,
                || {
                    format!(
                        "{}: mu_star({lambda}) = {} outside [max(1, lambda), lambda + 2]",
                        ctx.label, direct.value
                    )
                },
            );
            // mu_star(lambda) hits lambda + 2 exactly when the sphere has a
            // segment of length 2 (polyhedral norms, where both sides are
            // exact).
            if ctx.norm.to_polytope().is_some() {
                if let Some(seg) = ctx.segment {
                    let extreme_star = (direct.value - (lambda + 2.0)).abs() <= CRITERION_TOL;
                    let extreme_seg = (seg - 2.0).abs() <= CRITERION_TOL;
                    mod_criterion.record(extreme_star == extreme_seg, || {
                        format!(
                            "{}: mu_star({lambda}) = {} but segment = {seg}",
                            ctx.label, direct.value
                        )
                    });
                }
            }
        }
        // mu(1) is the rectangular constant again.
        if let Some(star1) = &stars[1] {
            if let Some(e) = &ctx.mu_exact {
                mod_bounds.record((star1.value - e.value).abs() <= 1e-9, || {
                    format!(
                        "{}: mu_star(1) = {} vs exact mu = {}",
                        ctx.label, star1.value, e.value
                    )
                });
            } else if let Some(s) = &ctx.mu_sweep {
                mod_bounds.record((star1.value - s.value).abs() <= 1e-3, || {
                    format!(
                        "{}: mu_star(1) = {} vs swept mu = {}",
                        ctx.label, star1.value, s.value
                    )
                });
            }
        }
    }
    findings.push(mod_bounds.finish());
    findings.push(mod_criterion.finish());

    // mu = 3 exactly when the sphere carries a segment of length 2.
    let mut seg_criterion = Tally::new("segment-criterion");
    for ctx in &ctxs {
        let mu = ctx.mu_exact.as_ref().or(ctx.mu_sweep.as_ref());
        let (Some(mu), Some(seg)) = (mu, ctx.segment) else {
            continue;
        };
        let extreme_mu = (mu.value - 3.0).abs() <= CRITERION_TOL;
        let extreme_seg = (seg - 2.0).abs() <= CRITERION_TOL;
        seg_criterion.record(extreme_mu == extreme_seg, || {
            format!("{}: mu = {} but segment = {seg}", ctx.label, mu.value)
        });
    }
    findings.push(seg_criterion.finish());

    // Inner-product test: the Euclidean plane passes; anything whose
    // rectangular constant clears sqrt(2) + 0.01 must fail.
    let mut ips = Tally::new("inner-product-test-consistency");
    for ctx in &ctxs {
        if ctx.norm.dim() != 2 {
            continue;
        }
        let rep = match ips_test(&ctx.norm, config) {
            Ok(r) => r,
            Err(e) => {
                ips.error(format!("{}: inner-product test failed: {e}", ctx.label));
                continue;
            }
        };
        if matches!(ctx.norm, Norm::Euclidean { .. }) {
            ips.record(rep.passed && (rep.sup_found - SQRT2).abs() <= 1e-6, || {
                format!("{}: sup = {}, passed = {}", ctx.label, rep.sup_found, rep.passed)
            });
        }
        let mu = ctx.mu_exact.as_ref().or(ctx.mu_sweep.as_ref());
        if let Some(mu) = mu {
            if mu.value > SQRT2 + 0.01 {
                ips.record(!rep.passed, || {
                    format!(
                        "{}: mu = {} yet the inner-product test passed (sup = {})",
                        ctx.label, mu.value, rep.sup_found
                    )
                });
            }
        }
        // The windowed supremum never exceeds the full supremum.
        if let Some(e) = &ctx.mu_exact {
            ips.record(rep.sup_found <= e.value + 1e-9, || {
                format!(
                    "{}: windowed sup {} above exact mu {}",
                    ctx.label, rep.sup_found, e.value
                )
            });
        }
    }
    findings.push(ips.finish());

    // Flatness/growth: spheres without segments of length l must grow.
    let mut flat = Tally::new("flatness-growth");
    for (i, ctx) in ctxs.iter().enumerate() {
        let Some(seg) = ctx.segment else { continue };
        let mut lengths = vec![seg * 1.05 + 0.01, 2.5];
        if seg > 0.1 {
            lengths.push(seg * 0.5);
        }
        for (j, l) in lengths.into_iter().enumerate() {
            match flatness_growth_check(&ctx.norm, l, 32, stream_seed(seed, 7, i * 8 + j)) {
                Ok(rep) => {
                    flat.record(!rep.theorem_violation, || {
                        format!(
                            "{}: flat sphere failed to grow at l = {l} \
                             (min norm {})",
                            ctx.label, rep.min_norm_value
                        )
                    });
                    if rep.premise {
                        flat.record(rep.growth, || {
                            format!("{}: premise held at l = {l} without growth", ctx.label)
                        });
                    }
                }
                Err(e) => flat.error(format!("{}: {e}", ctx.label)),
            }
        }
    }
    findings.push(flat.finish());

    // Window endpoints: (sqrt(2) - 1)^2 and its reciprocal.
    let mut window = Tally::new("window-identities");
    window.record(
        (IPS_WINDOW_LO - (SQRT2 - 1.0) * (SQRT2 - 1.0)).abs() <= 1e-15,
        || format!("window low endpoint = {IPS_WINDOW_LO}"),
    );
    window.record(
        (IPS_WINDOW_HI * (SQRT2 - 1.0) - 1.0).abs() <= 1e-15,
        || format!("window high endpoint = {IPS_WINDOW_HI}"),
    );
    findings.push(window.finish());

    let passed = findings.iter().all(|f| f.passed);
    Ok(VerifyReport {
        seed,
        trials,
        norms: norms.iter().map(Norm::describe).collect(),
        findings,
        passed,
    })
}
