//! Deterministic samples of simple stratified spaces.
//!
//! Every generator builds an arc-length or grid net whose spacing is at most
//! the requested density, so the output is a certified `density`-sample of
//! the space.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{euclidean, PointCloud};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceKind {
    /// `[0, length] x {0}` in the plane.
    Segment { length: f64 },
    /// Circle centred at the origin.
    Circle { radius: f64 },
    /// Axis-aligned segments `[-h, h] x {0}` and `{0} x [-h, h]`.
    Cross2d { half_length: f64 },
    /// Squares `[-w, w]^2` in the planes `z = 0` and `y = 0`, meeting along
    /// the x axis.
    Planes3d { half_width: f64 },
    /// `rays` segments of the given length leaving the origin at equal angles.
    Cone2d { rays: usize, length: f64 },
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::Segment { .. } => "segment",
            SpaceKind::Circle { .. } => "circle",
            SpaceKind::Cross2d { .. } => "cross2d",
            SpaceKind::Planes3d { .. } => "planes3d",
            SpaceKind::Cone2d { .. } => "cone2d",
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            SpaceKind::Planes3d { .. } => 3,
            _ => 2,
        }
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    /// Parses a kind name with its default size: unit segment, unit circle,
    /// cross and planes of side 1, and a three-ray cone of unit length.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "segment" => SpaceKind::Segment { length: 1.0 },
            "circle" => SpaceKind::Circle { radius: 1.0 },
            "cross2d" => SpaceKind::Cross2d { half_length: 0.5 },
            "planes3d" => SpaceKind::Planes3d { half_width: 0.5 },
            "cone2d" => SpaceKind::Cone2d {
                rays: 3,
                length: 1.0,
            },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unsupported space kind '{other}' (expected segment, circle, cross2d, planes3d or cone2d)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    /// Target sample density: the largest gap between neighbouring samples.
    pub density: f64,
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, density: f64) -> Self {
        SpaceSpec { kind, density }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("density", self.density)?;
        match self.kind {
            SpaceKind::Segment { length } => positive("length", length),
            SpaceKind::Circle { radius } => positive("radius", radius),
            SpaceKind::Cross2d { half_length } => positive("half_length", half_length),
            SpaceKind::Planes3d { half_width } => positive("half_width", half_width),
            SpaceKind::Cone2d { rays, length } => {
                if rays == 0 {
                    return Err(Error::InvalidArgument("cone needs at least one ray".into()));
                }
                positive("length", length)
            }
        }
    }
}

/// Number of intervals of width at most `h` covering a length `len`.
fn intervals(len: f64, h: f64) -> usize {
    ((len / h) - 1e-9).ceil().max(1.0) as usize
}

/// Samples of the ray `t * dir` for `t` in `(0, len]`; the origin is left out.
fn ray(dir: &[f64], len: f64, h: f64) -> impl Iterator<Item = Vec<f64>> + '_ {
    let n = intervals(len, h);
    (1..=n).map(move |i| {
        let t = len * (i as f64 / n as f64);
        dir.iter().map(|d| d * t).collect()
    })
}

pub fn generate(spec: &SpaceSpec) -> Result<PointCloud> {
    spec.validate()?;
    let h = spec.density;
    let points: Vec<Vec<f64>> = match spec.kind {
        SpaceKind::Segment { length } => std::iter::once(vec![0.0, 0.0])
            .chain(ray(&[1.0, 0.0], length, h))
            .collect(),
        SpaceKind::Circle { radius } => {
            let n = intervals(TAU * radius, h).max(3);
            (0..n)
                .map(|k| {
                    let theta = TAU * (k as f64) / (n as f64);
                    vec![radius * theta.cos(), radius * theta.sin()]
                })
                .collect()
        }
        SpaceKind::Cross2d { half_length } => {
            let dirs = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
            let mut pts = vec![vec![0.0, 0.0]];
            for d in &dirs {
                pts.extend(ray(d, half_length, h));
            }
            pts
        }
        SpaceKind::Cone2d { rays, length } => {
            let mut pts = vec![vec![0.0, 0.0]];
            for j in 0..rays {
                let theta = TAU * (j as f64) / (rays as f64);
                let dir = [theta.cos(), theta.sin()];
                pts.extend(ray(&dir, length, h).collect::<Vec<_>>());
            }
            pts
        }
        SpaceKind::Planes3d { half_width } => {
            let mut n = intervals(2.0 * half_width, h);
            // an even count puts grid lines on the shared axis
            n += n % 2;
            let coord = |i: usize| -half_width + 2.0 * half_width * (i as f64 / n as f64);
            let mut pts = Vec::new();
            let mut seen = HashSet::new();
            for i in 0..=n {
                for j in 0..=n {
                    let (a, b) = (coord(i), coord(j));
                    for p in [vec![a, b, 0.0], vec![a, 0.0, b]] {
                        let key: Vec<u64> = p.iter().map(|c| (c + 0.0).to_bits()).collect();
                        if seen.insert(key) {
                            pts.push(p);
                        }
                    }
                }
            }
            pts
        }
    };
    PointCloud::new(points)
}

/// Expected local homology of the sampled space at a canonical basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    pub description: String,
    /// `(dim, rank)` for every nonzero local homology group in positive
    /// dimension; empty when the local homology is trivial there.
    pub ranks: Vec<(usize, usize)>,
}

impl GroundTruth {
    pub fn rank(&self, dim: usize) -> usize {
        self.ranks
            .iter()
            .find(|(d, _)| *d == dim)
            .map_or(0, |&(_, r)| r)
    }
}

impl fmt::Display for GroundTruth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.description)?;
        if self.ranks.is_empty() {
            return write!(f, " trivial in positive dimensions");
        }
        for (d, r) in &self.ranks {
            write!(f, " H{d} rank {r}")?;
        }
        Ok(())
    }
}

/// Records the local homology expected at one of the space's canonical
/// points: its singular point, an interior manifold point or a boundary point.
pub fn ground_truth_note(spec: &SpaceSpec, basepoint: &[f64]) -> Result<GroundTruth> {
    spec.validate()?;
    if basepoint.len() != spec.kind.ambient_dim() {
        return Err(Error::InvalidArgument(format!(
            "basepoint has dimension {} for a space in dimension {}",
            basepoint.len(),
            spec.kind.ambient_dim()
        )));
    }
    let at = |p: &[f64]| euclidean(basepoint, p) < 1e-9;
    let note = |description: &str, ranks: Vec<(usize, usize)>| {
        Ok(GroundTruth {
            description: description.to_string(),
            ranks,
        })
    };
    match spec.kind {
        SpaceKind::Segment { length } => {
            if at(&[0.0, 0.0]) || at(&[length, 0.0]) {
                note("segment endpoint", vec![])
            } else if at(&[length / 2.0, 0.0]) {
                note("segment interior point", vec![(1, 1)])
            } else {
                unsupported(spec, basepoint)
            }
        }
        SpaceKind::Circle { radius } => {
            if (euclidean(basepoint, &[0.0, 0.0]) - radius).abs() < 1e-9 {
                note("circle point", vec![(1, 1)])
            } else {
                unsupported(spec, basepoint)
            }
        }
        SpaceKind::Cross2d { half_length: l } => {
            if at(&[0.0, 0.0]) {
                note("crossing point of four arms", vec![(1, 3)])
            } else if [[l, 0.0], [-l, 0.0], [0.0, l], [0.0, -l]]
                .iter()
                .any(|p| at(p))
            {
                note("arm endpoint", vec![])
            } else if [
                [l / 2.0, 0.0],
                [-l / 2.0, 0.0],
                [0.0, l / 2.0],
                [0.0, -l / 2.0],
            ]
            .iter()
            .any(|p| at(p))
            {
                note("arm interior point", vec![(1, 1)])
            } else {
                unsupported(spec, basepoint)
            }
        }
        SpaceKind::Cone2d { rays, length } => {
            let on_ray = |t: f64| {
                (0..rays).any(|j| {
                    let theta = TAU * (j as f64) / (rays as f64);
                    at(&[t * theta.cos(), t * theta.sin()])
                })
            };
            if at(&[0.0, 0.0]) {
                let ranks = if rays > 1 {
                    vec![(1, rays - 1)]
                } else {
                    vec![]
                };
                note("apex of the cone", ranks)
            } else if on_ray(length) {
                note("ray endpoint", vec![])
            } else if on_ray(length / 2.0) {
                note("ray interior point", vec![(1, 1)])
            } else {
                unsupported(spec, basepoint)
            }
        }
        SpaceKind::Planes3d { half_width: w } => {
            if at(&[0.0, 0.0, 0.0]) {
                note("point on the intersection line", vec![(2, 3)])
            } else if at(&[0.0, w / 2.0, 0.0]) || at(&[0.0, 0.0, w / 2.0]) {
                note("interior point of one sheet", vec![(2, 1)])
            } else if at(&[0.0, w, 0.0]) || at(&[0.0, 0.0, w]) {
                note("boundary point of one sheet", vec![])
            } else {
                unsupported(spec, basepoint)
            }
        }
    }
}

fn unsupported(spec: &SpaceSpec, basepoint: &[f64]) -> Result<GroundTruth> {
    Err(Error::InvalidArgument(format!(
        "{basepoint:?} is not a canonical point of {}",
        spec.kind.name()
    )))
}
