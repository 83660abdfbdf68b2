//! Norm descriptors and pointwise norm evaluation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{Point2, Polytope};
use crate::tolerances::NORM_AXIOM_TOL;
use crate::vector::Vector;

/// A finite-dimensional real normed space.
#[derive(Clone, Debug, PartialEq)]
pub enum Norm {
    /// `||x|| = sqrt(sum x_i^2)`.
    Euclidean { dim: usize },
    /// `||x|| = (sum |x_i|^p)^(1/p)`, with `p = inf` meaning `max |x_i|`.
    Lp { p: f64, dim: usize },
    /// Gauge of a symmetric convex polygon (dimension 2).
    Polyhedral(Polytope),
}

impl Norm {
    pub fn euclidean(dim: usize) -> Result<Norm> {
        check_dim(dim)?;
        Ok(Norm::Euclidean { dim })
    }

    /// `p` must satisfy `1 <= p <= inf`; NaN is rejected.
    pub fn lp(p: f64, dim: usize) -> Result<Norm> {
        check_dim(dim)?;
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "lp exponent must satisfy p >= 1, got {p}"
            )));
        }
        Ok(Norm::Lp { p, dim })
    }

    /// Builds the polyhedral norm whose unit ball is the symmetrized convex
    /// hull of `raw`.
    pub fn polyhedral(raw: &[Point2]) -> Result<Norm> {
        Ok(Norm::Polyhedral(Polytope::canonicalize(raw)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            Norm::Euclidean { dim } | Norm::Lp { dim, .. } => *dim,
            Norm::Polyhedral(_) => 2,
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Norm::Polyhedral(p) => Some(p),
            _ => None,
        }
    }

    /// True for norms that are smooth away from the origin (the one-sided
    /// derivatives coincide everywhere): Euclidean and `l_p` with
    /// `1 < p < inf`.
    pub fn is_smooth(&self) -> bool {
        match self {
            Norm::Euclidean { .. } => true,
            Norm::Lp { p, .. } => *p > 1.0 && p.is_finite(),
            Norm::Polyhedral(_) => false,
        }
    }

    /// The unit ball as a polytope, when the norm is polyhedral or is a
    /// planar `l_1` / `l_inf` norm (whose balls are the diamond and the
    /// square).
    pub fn to_polytope(&self) -> Option<Polytope> {
        match self {
            Norm::Polyhedral(p) => Some(p.clone()),
            Norm::Lp { p, dim: 2 } if *p == 1.0 => {
                Some(Polytope::canonicalize(&[[1.0, 0.0], [0.0, 1.0]]).unwrap())
            }
            Norm::Lp { p, dim: 2 } if p.is_infinite() => {
                Some(Polytope::canonicalize(&[[1.0, 1.0], [-1.0, 1.0]]).unwrap())
            }
            _ => None,
        }
    }

    /// Evaluates the norm, checking dimension and finiteness.
    pub fn eval(&self, v: &Vector) -> Result<f64> {
        v.check_dim(self.dim())?;
        Ok(self.eval_unchecked(v.coords()))
    }

    /// Norm of a coordinate slice; the caller guarantees the dimension.
    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            Norm::Euclidean { .. } => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
            Norm::Lp { p, .. } => lp_norm(*p, x.iter().copied()),
            Norm::Polyhedral(poly) => poly.gauge([x[0], x[1]]),
        }
    }

    /// `||a + t b||` without building the intermediate vector. This is the
    /// hot path of every sweep.
    pub(crate) fn eval_combo(&self, a: &Vector, t: f64, b: &Vector) -> f64 {
        debug_assert_eq!(a.dim(), self.dim());
        debug_assert_eq!(b.dim(), self.dim());
        let (xs, ys) = (a.coords(), b.coords());
        match self {
            Norm::Euclidean { .. } => xs
                .iter()
                .zip(ys)
                .map(|(x, y)| {
                    let c = x + t * y;
                    c * c
                })
                .sum::<f64>()
                .sqrt(),
            Norm::Lp { p, .. } => {
                lp_norm(*p, xs.iter().zip(ys).map(|(x, y)| x + t * y))
            }
            Norm::Polyhedral(poly) => {
                let z = [xs[0] + t * ys[0], xs[1] + t * ys[1]];
                poly.gauge(z)
            }
        }
    }

    /// `v / ||v||`. Fails on the zero vector.
    pub fn normalize(&self, v: &Vector) -> Result<Vector> {
        v.check_dim(self.dim())?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let n = self.eval_unchecked(v.coords());
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::VanishingDenominator("normalize"));
        }
        Ok(v.scale(1.0 / n))
    }

    /// The unit-sphere point in direction `theta` (dimension 2 only):
    /// `(cos theta, sin theta)` rescaled to norm 1.
    pub fn sphere_point(&self, theta: f64) -> Result<Vector> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite {
                context: "sphere_point angle",
            });
        }
        self.normalize(&Vector::xy(theta.cos(), theta.sin()))
    }

    /// Human-readable one-liner for logs and reports.
    pub fn describe(&self) -> String {
        match self {
            Norm::Euclidean { dim } => format!("euclidean(dim={dim})"),
            Norm::Lp { p, dim } if p.is_infinite() => format!("lp(p=inf,dim={dim})"),
            Norm::Lp { p, dim } => format!("lp(p={p},dim={dim})"),
            Norm::Polyhedral(poly) => {
                format!("polyhedral({} vertices)", poly.vertices().len())
            }
        }
    }

    /// Samples vectors and scalars and checks the norm axioms numerically.
    /// A well-formed descriptor always passes; the check exists to catch
    /// damage such as hand-edited polytope data.
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = self.dim();
        let mut violations = Vec::new();
        let record = |list: &mut Vec<String>, msg: String| {
            if list.len() < 20 {
                list.push(msg);
            }
        };

        let zero = Vector::new(vec![0.0; dim]).unwrap();
        if self.eval_unchecked(zero.coords()) != 0.0 {
            record(&mut violations, "||0|| != 0".into());
        }

        for i in 0..samples {
            let x = random_vector(&mut rng, dim);
            let y = random_vector(&mut rng, dim);
            let alpha: f64 = rng.gen_range(-3.0..3.0);
            let nx = self.eval_unchecked(x.coords());
            let ny = self.eval_unchecked(y.coords());

            if nx.is_nan() || nx <= 0.0 {
                record(&mut violations, format!("sample {i}: ||x|| = {nx} for x != 0"));
            }
            let hom = self.eval_unchecked(x.scale(alpha).coords());
            if (hom - alpha.abs() * nx).abs() > NORM_AXIOM_TOL * (1.0 + alpha.abs() * nx) {
                record(
                    &mut violations,
                    format!("sample {i}: homogeneity off by {}", hom - alpha.abs() * nx),
                );
            }
            let tri = self.eval_unchecked(x.add(&y).coords());
            if tri > nx + ny + NORM_AXIOM_TOL {
                record(
                    &mut violations,
                    format!("sample {i}: triangle inequality off by {}", tri - nx - ny),
                );
            }
            let sym = self.eval_unchecked(x.scale(-1.0).coords());
            if (sym - nx).abs() > 1e-12 * (1.0 + nx) {
                record(&mut violations, format!("sample {i}: ||-x|| != ||x||"));
            }
        }
        ValidationReport {
            samples,
            seed,
            passed: violations.is_empty(),
            violations,
        }
    }

    /// Parses a JSON descriptor (see [`NormSpec`]).
    pub fn from_spec(spec: &NormSpec) -> Result<Norm> {
        match spec {
            NormSpec::Euclidean { dim } => Norm::euclidean(*dim),
            NormSpec::Lp { p, dim } => Norm::lp(p.to_f64()?, *dim),
            NormSpec::Polyhedral { vertices } => Norm::polyhedral(vertices),
        }
    }

    /// Canonical JSON descriptor; polyhedral norms echo their canonical
    /// vertex list.
    pub fn to_spec(&self) -> NormSpec {
        match self {
            Norm::Euclidean { dim } => NormSpec::Euclidean { dim: *dim },
            Norm::Lp { p, dim } => NormSpec::Lp {
                p: PValue::from_f64(*p),
                dim: *dim,
            },
            Norm::Polyhedral(poly) => NormSpec::Polyhedral {
                vertices: poly.vertices().to_vec(),
            },
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "norms are defined here for dim >= 2, got {dim}"
        )));
    }
    Ok(())
}

/// `l_p` norm of an iterator of coordinates, max-scaled so that large `p`
/// neither overflows nor underflows.
fn lp_norm(p: f64, coords: impl Iterator<Item = f64> + Clone) -> f64 {
    if p.is_infinite() {
        return coords.fold(0.0_f64, |m, c| m.max(c.abs()));
    }
    if p == 1.0 {
        return coords.map(|c| c.abs()).sum();
    }
    let m = coords.clone().fold(0.0_f64, |m, c| m.max(c.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = coords.map(|c| (c.abs() / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let coords: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if coords.iter().any(|c| c.abs() > 1e-3) {
            return Vector::new(coords).unwrap();
        }
    }
}

/// Outcome of [`Norm::validate`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub violations: Vec<String>,
}

/// JSON-facing norm descriptor:
///
/// ```json
/// {"type": "euclidean", "dim": 2}
/// {"type": "lp", "p": 1.5, "dim": 2}
/// {"type": "lp", "p": "inf", "dim": 2}
/// {"type": "polyhedral", "vertices": [[1.0, 1.0], [-1.0, 1.0]]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum NormSpec {
    Euclidean { dim: usize },
    Lp { p: PValue, dim: usize },
    Polyhedral { vertices: Vec<Point2> },
}

/// The `p` of an `l_p` descriptor: a number, or the string `"inf"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PValue {
    Number(f64),
    Name(String),
}

impl PValue {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            PValue::Number(x) => Ok(*x),
            PValue::Name(s) if s.eq_ignore_ascii_case("inf") => Ok(f64::INFINITY),
            PValue::Name(s) => Err(Error::BadSpec(format!(
                "unrecognized lp exponent {s:?} (expected a number or \"inf\")"
            ))),
        }
    }

    pub fn from_f64(p: f64) -> PValue {
        if p.is_infinite() {
            PValue::Name("inf".into())
        } else {
            PValue::Number(p)
        }
    }
}
