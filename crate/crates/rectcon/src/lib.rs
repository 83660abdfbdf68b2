//! Geometric constants of finite-dimensional real normed spaces.
//!
//! The crate measures how far a norm strays from an inner product through
//! the lens of Birkhoff-James orthogonality (`x` is orthogonal to `y` when
//! `||x + t y|| >= ||x||` for every real `t`):
//!
//! * [`ortho`] decides orthogonality from the one-sided derivatives of
//!   `t -> ||x + t y||`, with closed forms for every supported norm and a
//!   difference-quotient ladder as an independent cross-check, and produces
//!   the full orthogonal cone of a planar direction.
//! * [`rect`] computes the rectangular constant
//!   `mu = sup (||u|| + ||v||) / ||u + v||` over orthogonal pairs — always
//!   between `sqrt(2)` and 3 — and the rectangular modulus `mu(lambda)`.
//!   Polyhedral norms get exact breakpoint optimization; smooth norms are
//!   swept over direction grids, in parallel when the `parallel` feature
//!   (default) is enabled.
//! * [`sphere`] relates those constants to the flat pieces of the unit
//!   sphere: maximal segment length, the flatness/growth dichotomy, and a
//!   windowed test separating inner product spaces from all other norms.
//! * [`verify`] cross-checks everything against everything on fixture norms
//!   and seeded random polygons.
//!
//! ```
//! use rectcon::{mu_polyhedral_exact, Norm, SearchConfig};
//!
//! // The max-norm plane: its sphere carries a segment of length 2, which
//! // forces the extreme rectangular constant 3.
//! let square = Norm::lp(f64::INFINITY, 2)?;
//! let mu = mu_polyhedral_exact(&square, &SearchConfig::default())?;
//! assert!((mu.value - 3.0).abs() < 1e-9);
//! # Ok::<(), rectcon::Error>(())
//! ```

pub mod error;
pub mod norm;
pub mod ortho;
pub mod polytope;
pub mod rect;
pub mod sphere;
mod sweep;
pub mod tolerances;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use norm::{Norm, NormSpec, PValue, ValidationReport};
pub use ortho::{
    is_bj_orthogonal, james_supporting_functional, one_sided_derivatives, orthogonal_cone,
    quotient_derivatives, sample_orthogonal_pairs, DerivativeMethod, OrthoArc, OrthoCertificate,
    OrthoCone,
};
pub use polytope::{Point2, Polytope};
pub use rect::{
    best_t, modulus, modulus_curve, modulus_star, mu_estimate, mu_pair, mu_polyhedral_exact,
    mu_ratio, CurveFailure, ModulusCurve, ModulusPoint, MuWitness, SearchConfig, StarModulus,
};
pub use sphere::{
    flatness_growth_check, ips_test, max_segment_length, segment_orthogonality_check,
    FlatnessReport, FlatnessViolation, IpsReport, SegmentReport, IPS_PASS_TOL, IPS_WINDOW_HI,
    IPS_WINDOW_LO,
};
pub use vector::Vector;
pub use verify::{
    check_derivative_agreement, check_edge_orthogonality, check_euclidean_equivalence,
    check_growth_monotonicity, check_scale_invariance, check_segment_inheritance,
    random_polygons, regular_hexagon, standard_fixtures, verify_suite, InvariantFinding,
    VerifyReport, CRITERION_TOL, LAMBDA_PROBES,
};

/// Caps the number of worker threads used by the parallel sweeps.
///
/// Must be called before the first sweep: the pool is process-global and
/// later calls fail once it is running. Without the `parallel` feature the
/// sweeps are sequential and only `n = 1` is accepted.
pub fn configure_threads(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("thread count must be >= 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
    }
    #[cfg(not(feature = "parallel"))]
    {
        if n == 1 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "built without the `parallel` feature; only one thread is available".into(),
            ))
        }
    }
}
