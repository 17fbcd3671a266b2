use std::fmt;

use crate::error::{Error, Result};

/// A point of a persistence diagram. `death` is `f64::INFINITY` for classes
/// that never die.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        DiagramPoint { dim, birth, death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Multiset of persistence pairs, kept sorted by `(dim, birth, death)`.
///
/// Zero-persistence points carry no information and are dropped on
/// construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

fn point_order(a: &DiagramPoint, b: &DiagramPoint) -> std::cmp::Ordering {
    a.dim
        .cmp(&b.dim)
        .then(a.birth.total_cmp(&b.birth))
        .then(a.death.total_cmp(&b.death))
}

impl PersistenceDiagram {
    pub fn new(points: Vec<DiagramPoint>) -> Result<Self> {
        for p in &points {
            if !p.birth.is_finite() || p.death.is_nan() || p.death < p.birth {
                return Err(Error::InvalidArgument(format!(
                    "invalid diagram point ({}, {}, {})",
                    p.dim, p.birth, p.death
                )));
            }
        }
        Ok(Self::from_points(points))
    }

    pub(crate) fn from_points(mut points: Vec<DiagramPoint>) -> Self {
        points.retain(|p| p.death != p.birth);
        points.sort_by(point_order);
        PersistenceDiagram { points }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &DiagramPoint> {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.points.iter().map(|p| p.dim).max()
    }

    /// Number of classes in `dim` born by `i` and still alive at `j`: the
    /// rank of `H(K_i) -> H(K_j)` read off the diagram.
    pub fn persistent_betti(&self, dim: usize, i: f64, j: f64) -> usize {
        self.in_dim(dim)
            .filter(|p| p.birth <= i && j < p.death)
            .count()
    }

    /// The diagram restricted to one dimension.
    pub fn restrict_dim(&self, dim: usize) -> PersistenceDiagram {
        PersistenceDiagram {
            points: self.in_dim(dim).copied().collect(),
        }
    }

    /// Shifts every birth and death by `delta`.
    pub fn shifted(&self, delta: f64) -> PersistenceDiagram {
        Self::from_points(
            self.points
                .iter()
                .map(|p| DiagramPoint::new(p.dim, p.birth + delta, p.death + delta))
                .collect(),
        )
    }
}

impl fmt::Display for PersistenceDiagram {
    /// One `dim birth death` line per point; infinite deaths print as `inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.points {
            writeln!(f, "{} {} {}", p.dim, p.birth, p.death)?;
        }
        Ok(())
    }
}
