//! Local homology at a basepoint from a finite sample.
//!
//! Two pipelines are provided:
//!
//! * [`alpha_pipeline`] fixes the ball radius `r` and grows the Rips scale.
//!   It reports the relative persistence of `(R_α(L), R_α(L̃))`, where `L̃`
//!   is the sample with the closed ball `B_r(x)` removed. The diagram is
//!   within `2ε + α + α²/r` of the ideal `α`-filtration diagram for every
//!   `α` below `r`.
//! * [`r_pipeline`] fixes a Rips complex at scale `2ε` and filters it by
//!   `f = -d_x`, the negated distance to the basepoint. Its sublevel diagram
//!   is within `4ε` of the sublevel diagram of `f` on the sampled space, and
//!   [`translate_diagram`] turns it into the relative description of the
//!   shrinking-ball filtration.

use std::fmt;

use crate::complex::{build_rips, lower_star_filtration, restrict_to_vertices};
use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::geometry::{distance_to_basepoint, split_by_ball, LocalQuery, PointCloud};
use crate::persistence::{reduce, relative_reduce};

/// The inputs a certified bound was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundFormula {
    /// `2ε + α + α²/r`, evaluated at the largest scale built.
    Alpha {
        epsilon: f64,
        alpha: f64,
        radius: f64,
    },
    /// `4ε`, for the Rips complex at scale `2ε` filtered by `-d_x`. Assumes a
    /// `2ε`-homotopy equivalence between the `2ε`-offset and the space, which
    /// cannot be checked from samples.
    R { epsilon: f64 },
}

impl BoundFormula {
    pub fn evaluate(&self) -> f64 {
        match *self {
            BoundFormula::Alpha {
                epsilon,
                alpha,
                radius,
            } => 2.0 * epsilon + alpha + alpha * alpha / radius,
            BoundFormula::R { epsilon } => 4.0 * epsilon,
        }
    }

    pub fn pipeline_name(&self) -> &'static str {
        match self {
            BoundFormula::Alpha { .. } => "alpha",
            BoundFormula::R { .. } => "r",
        }
    }
}

impl fmt::Display for BoundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundFormula::Alpha {
                epsilon,
                alpha,
                radius,
            } => write!(
                f,
                "2*eps + alpha + alpha^2/r with eps={epsilon}, alpha={alpha}, r={radius}"
            ),
            BoundFormula::R { epsilon } => write!(
                f,
                "4*eps with eps={epsilon}; assumes a 2*eps-homotopy equivalence between X_2eps and X"
            ),
        }
    }
}

/// A diagram with its certified bottleneck distance to the ideal diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub diagram: PersistenceDiagram,
    pub bound: f64,
    pub bound_formula: BoundFormula,
}

/// `2ε + α + α²/r`; only meaningful for `0 < α < r`.
pub fn certified_bound_alpha(epsilon: f64, alpha: f64, r: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !(alpha > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < alpha and finite r, got alpha={alpha}, r={r}"
        )));
    }
    if alpha >= r {
        return Err(Error::GuaranteeLapsed { alpha, radius: r });
    }
    Ok(BoundFormula::Alpha {
        epsilon,
        alpha,
        radius: r,
    }
    .evaluate())
}

/// Relative persistence of the Rips pair `(R_α(L), R_α(L̃))` for
/// `α <= max_scale`.
pub fn alpha_pipeline(cloud: &PointCloud, query: &LocalQuery) -> Result<ApproxResult> {
    query.validate_for(cloud)?;
    let bound = certified_bound_alpha(query.epsilon, query.max_scale, query.radius)?;
    let split = split_by_ball(cloud, query)?;
    let rips = build_rips(cloud, query.max_scale, query.max_dim)?;
    let pair = restrict_to_vertices(&rips, &split.outside)?;
    let diagram = relative_reduce(&pair, query.max_dim)?;
    Ok(ApproxResult {
        diagram,
        bound,
        bound_formula: BoundFormula::Alpha {
            epsilon: query.epsilon,
            alpha: query.max_scale,
            radius: query.radius,
        },
    })
}

/// Sublevel persistence of `f = -d_x` on the Rips complex at scale `2ε`.
///
/// `query.radius` and `query.max_scale` are not used: the radius is the
/// filtration parameter itself.
pub fn r_pipeline(cloud: &PointCloud, query: &LocalQuery) -> Result<ApproxResult> {
    query.validate_for(cloud)?;
    let f: Vec<f64> = distance_to_basepoint(cloud, query)?
        .into_iter()
        .map(|d| -d)
        .collect();
    let complex = build_rips(cloud, 2.0 * query.epsilon, query.max_dim)?;
    let filtration = lower_star_filtration(&complex, &f)?;
    let diagram = reduce(&filtration, query.max_dim)?;
    let bound_formula = BoundFormula::R {
        epsilon: query.epsilon,
    };
    Ok(ApproxResult {
        diagram,
        bound: bound_formula.evaluate(),
        bound_formula,
    })
}

/// A class of the sublevel diagram that never dies. Under the symmetry it has
/// no finite relative partner and is reported on its own: `dim` is already
/// shifted and `death` is the reflected birth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssentialClass {
    pub dim: usize,
    pub death: f64,
}

/// Relative description of the shrinking-ball filtration of `d_x`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TranslatedDiagram {
    pub points: PersistenceDiagram,
    pub essential: Vec<EssentialClass>,
}

/// Shifts dimension up by one and reflects through the origin:
/// `(k, b, d) -> (k + 1, -d, -b)`. Classes with infinite death go to the
/// essential list as `(k + 1, -b)`.
pub fn translate_diagram(ordinary: &PersistenceDiagram) -> TranslatedDiagram {
    let mut points = Vec::new();
    let mut essential = Vec::new();
    for p in ordinary.points() {
        if p.is_essential() {
            essential.push(EssentialClass {
                dim: p.dim + 1,
                death: -p.birth,
            });
        } else {
            points.push(DiagramPoint::new(p.dim + 1, -p.death, -p.birth));
        }
    }
    TranslatedDiagram {
        points: PersistenceDiagram::from_points(points),
        essential,
    }
}

/// Inverse of [`translate_diagram`].
pub fn untranslate_diagram(translated: &TranslatedDiagram) -> Result<PersistenceDiagram> {
    let mut points = Vec::new();
    for p in translated.points.points() {
        let dim = p.dim.checked_sub(1).ok_or_else(|| {
            Error::InvalidArgument("translated diagram has a point in dimension 0".into())
        })?;
        points.push(DiagramPoint::new(dim, -p.death, -p.birth));
    }
    for e in &translated.essential {
        let dim = e
            .dim
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidArgument("essential class in dimension 0".into()))?;
        points.push(DiagramPoint::new(dim, -e.death, f64::INFINITY));
    }
    PersistenceDiagram::new(points)
}
