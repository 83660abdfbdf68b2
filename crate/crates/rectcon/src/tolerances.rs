//! Numerical tolerances used throughout the crate.
//!
//! Every comparison against an inexact quantity routes through one of these
//! constants so that the precision contract of the public API lives in a
//! single place.

/// Merge radius for near-duplicate polytope vertices and the collinearity
/// threshold of the convex-hull pass (scaled by the squared coordinate
/// magnitude of the input).
pub const GEOMETRY_TOL: f64 = 1e-12;

/// A polyhedral facet `f` counts as active at `x` when
/// `f(x) >= ||x|| * (1 - FACET_ACTIVITY_REL)`.
pub const FACET_ACTIVITY_REL: f64 = 1e-12;

/// Default tolerance for Birkhoff-James orthogonality certificates: `x` is
/// accepted as orthogonal to `y` when `d_minus <= tol && d_plus >= -tol`.
pub const ORTHO_TOL: f64 = 1e-9;

/// Stopping threshold of the difference-quotient ladder: once two successive
/// one-sided quotients agree to within this value the ladder returns.
pub const QUOTIENT_STOP: f64 = 1e-9;

/// Slack allowed when checking norm axioms (homogeneity, triangle
/// inequality) on sampled inputs.
pub const NORM_AXIOM_TOL: f64 = 1e-9;

/// Relative slack for "this vector has unit norm" assertions.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// Orthogonal-cone arcs narrower than this (radians) are reported as a
/// single direction (lo == hi).
pub const DEGENERATE_ARC: f64 = 1e-12;

/// Guard against division by a vanishing `||x + y||` or `||y + t x||`.
pub const DENOM_TOL: f64 = 1e-14;
