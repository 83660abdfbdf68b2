//! Sweep infrastructure: maximization of pair objectives over orthogonal
//! pairs of unit vectors, with a deterministic parallel reduction.
//!
//! A sweep walks a grid of base directions `theta`, computes the orthogonal
//! cone at each base point, samples directions `phi` inside the cone arcs
//! and maximizes a caller-supplied objective over the resulting pairs.
//! Candidates carry a structural key `(theta index, arc index, phi index)`
//! so that ties resolve identically no matter how work is scheduled across
//! threads.

use crate::error::Result;
use crate::norm::Norm;
use crate::ortho::orthogonal_cone;
use crate::polytope::wrap_angle;
use crate::tolerances::DEGENERATE_ARC;
use crate::vector::Vector;

/// A scored pair found during a sweep.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub value: f64,
    /// `(theta index, arc index, phi index)`; ties in `value` resolve to the
    /// smallest key, making reductions schedule-independent.
    pub key: (u32, u32, u32),
    pub x: Vector,
    pub y: Vector,
    pub t: f64,
    /// Interval around the winning direction searched during the polish
    /// step.
    pub phi_window: (f64, f64),
}

/// Total order used by reductions: larger value wins, then smaller key.
fn better(a: Candidate, b: Candidate) -> Candidate {
    if b.value > a.value || (b.value == a.value && b.key < a.key) {
        b
    } else {
        a
    }
}

/// Maximum of `per_index` over `0..n`. Runs on the rayon pool when the
/// `parallel` feature is enabled; the reduction is associative and the
/// candidate order total, so both modes return bit-identical results.
pub(crate) fn max_over_indices<F>(n: usize, per_index: F) -> Option<Candidate>
where
    F: Fn(usize) -> Option<Candidate> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .filter_map(per_index)
            .reduce_with(better)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).filter_map(per_index).reduce(better)
    }
}

/// The outcome of a sweep: the best pair found, the parameter that realizes
/// the objective on it, and the objective value.
#[derive(Clone, Debug)]
pub(crate) struct SweepOutcome {
    pub x: Vector,
    pub y: Vector,
    pub t: f64,
    pub value: f64,
}

/// Maximizes `objective(x, y) -> Option<(t, value)>` over pairs `x = x(theta)`,
/// `y = y(phi)` with `phi` ranging over the orthogonal cone of `x`.
///
/// The `theta` grid is augmented with the polytope vertex angles when the
/// unit ball is a polygon: the supremum of the rectangular objectives lives
/// at vertices, which an equispaced grid misses. Cone arcs contribute their
/// endpoints, an equispaced interior grid of `phi_res` points, and any
/// polygon vertex directions they contain; the winner's neighborhood is then
/// polished with a golden-section pass.
pub(crate) fn sweep_max<F>(
    norm: &Norm,
    theta_res: usize,
    phi_res: usize,
    refine_tol: f64,
    objective: &F,
) -> Result<Option<SweepOutcome>>
where
    F: Fn(&Vector, &Vector) -> Option<(f64, f64)> + Sync + Send,
{
    let vertex_angles: Vec<f64> = match norm.to_polytope() {
        Some(poly) => poly.vertex_angles(),
        None => Vec::new(),
    };
    let thetas = theta_grid(theta_res, &vertex_angles);

    let per_theta = |ti: usize| -> Option<Candidate> {
        let x = norm.sphere_point(thetas[ti]).ok()?;
        let cone = orthogonal_cone(norm, &x, phi_res.max(16)).ok()?;
        let mut best: Option<Candidate> = None;
        for (ai, arc) in cone.arcs.iter().enumerate() {
            let dirs = arc_directions(arc.lo, arc.hi, phi_res, &vertex_angles);
            let spacing = if arc.width() > DEGENERATE_ARC {
                arc.width() / (phi_res.max(2) - 1) as f64
            } else {
                0.0
            };
            for (pi, &phi) in dirs.iter().enumerate() {
                let y = match norm.sphere_point(phi) {
                    Ok(y) => y,
                    Err(_) => continue,
                };
                if let Some((t, value)) = objective(&x, &y) {
                    if !value.is_finite() {
                        continue;
                    }
                    let cand = Candidate {
                        value,
                        key: (ti as u32, ai as u32, pi as u32),
                        x: x.clone(),
                        y,
                        t,
                        phi_window: (
                            (phi - spacing).max(arc.lo),
                            (phi + spacing).min(arc.hi),
                        ),
                    };
                    best = Some(match best.take() {
                        Some(b) => better(b, cand),
                        None => cand,
                    });
                }
            }
        }
        best
    };

    let reduced = max_over_indices(thetas.len(), per_theta);
    let Some(mut best) = reduced else {
        return Ok(None);
    };

    // Polish: golden-section over phi in the winner's grid cell. Kept only
    // when it actually improves, so the result never regresses below the
    // grid value.
    let (wlo, whi) = best.phi_window;
    if whi - wlo > DEGENERATE_ARC {
        let x = best.x.clone();
        let score = |phi: f64| -> f64 {
            match norm.sphere_point(phi) {
                Ok(y) => objective(&x, &y).map_or(f64::NEG_INFINITY, |(_, v)| v),
                Err(_) => f64::NEG_INFINITY,
            }
        };
        let (phi_ref, val_ref) = golden_max(&score, wlo, whi, refine_tol.min(1e-7));
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

    Ok(Some(SweepOutcome {
        x: best.x,
        y: best.y,
        t: best.t,
        value: best.value,
    }))
}

/// Equispaced circle grid joined with the polytope vertex angles, sorted and
/// deduplicated.
fn theta_grid(theta_res: usize, vertex_angles: &[f64]) -> Vec<f64> {
    let n = theta_res.max(8);
    let mut thetas: Vec<f64> = (0..n)
        .map(|i| i as f64 * std::f64::consts::TAU / n as f64)
        .collect();
    thetas.extend(vertex_angles.iter().copied());
    thetas.sort_by(f64::total_cmp);
    thetas.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    thetas
}

/// Sample directions for one cone arc `[lo, hi]`: the endpoints, an
/// equispaced interior grid, and any vertex angles falling inside the arc.
fn arc_directions(lo: f64, hi: f64, phi_res: usize, vertex_angles: &[f64]) -> Vec<f64> {
    if hi - lo <= DEGENERATE_ARC {
        return vec![lo];
    }
    let n = phi_res.max(2);
    let width = hi - lo;
    let mut dirs: Vec<f64> = (0..n)
        .map(|j| lo + width * j as f64 / (n - 1) as f64)
        .collect();
    for &va in vertex_angles {
        // Arc angles may exceed 2pi (wrap encoding); compare modulo 2pi.
        let offset = wrap_angle(va - lo);
        if offset > 0.0 && offset < width {
            dirs.push(lo + offset);
        }
    }
    dirs
}

/// Golden-section maximization of `f` on `[lo, hi]`, narrowing to `tol`.
/// Returns the best point evaluated. Exact only for unimodal `f`; callers
/// combine it with a grid so a miss cannot regress the result.
pub(crate) fn golden_max(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    let mut iters = 0;
    while b - a > tol && iters < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        let here = if fc >= fd { (c, fc) } else { (d, fd) };
        if here.1 > best.1 {
            best = here;
        }
        iters += 1;
    }
    best
}

/// Grid scan of `f` over `[lo, hi]` followed by golden-section polish of the
/// cells around the leading local maxima (up to 8, so a multimodal ratio
/// cannot hide its global peak in a cell whose grid sample lost the scan).
/// Ties prefer the smaller argument. Returns `(argmax, max)` among
/// everything evaluated.
pub(crate) fn grid_golden_max(
    f: &impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> (f64, f64) {
    let n = grid.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let samples: Vec<f64> = (0..n).map(|i| f(lo + step * i as f64)).collect();

    let mut best = (lo, samples[0]);
    for (i, &v) in samples.iter().enumerate() {
        let t = lo + step * i as f64;
        if v > best.1 {
            best = (t, v);
        }
    }

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let left_ok = i == 0 || samples[i] >= samples[i - 1];
            let right_ok = i == n - 1 || samples[i] >= samples[i + 1];
            left_ok && right_ok && samples[i].is_finite()
        })
        .collect();
    peaks.sort_by(|&a, &b| samples[b].total_cmp(&samples[a]).then(a.cmp(&b)));
    peaks.truncate(8);

    for &i in &peaks {
        let cell_lo = lo + step * i.saturating_sub(1) as f64;
        let cell_hi = (lo + step * (i + 1) as f64).min(hi);
        if cell_hi > cell_lo {
            let (t_ref, v_ref) = golden_max(f, cell_lo, cell_hi, tol);
            if v_ref > best.1 || (v_ref == best.1 && t_ref < best.0) {
                best = (t_ref, v_ref);
            }
        }
    }
    best
}
