//! Point clouds, metric queries and the ball split around a basepoint.

use crate::error::{Error, Result};

/// Euclidean distance between two coordinate slices of equal length.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A finite sample of points in Euclidean space.
///
/// Point order is stable: the index of a point is its vertex name in every
/// complex built from the cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
}

impl PointCloud {
    /// Builds a cloud, rejecting ragged, zero-dimensional or non-finite input.
    ///
    /// An empty point list is allowed only through [`PointCloud::empty`],
    /// since the ambient dimension cannot be inferred from it.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.len(),
            None => return Err(Error::MalformedInput("point cloud has no points".into())),
        };
        if dim == 0 {
            return Err(Error::MalformedInput(
                "points must have dimension >= 1".into(),
            ));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::MalformedInput(format!(
                    "point {i} has dimension {} but point 0 has dimension {dim}",
                    p.len()
                )));
            }
            if let Some(c) = p.iter().find(|c| !c.is_finite()) {
                return Err(Error::MalformedInput(format!(
                    "point {i} has non-finite coordinate {c}"
                )));
            }
        }
        Ok(PointCloud {
            dim,
            points,
            labels: None,
        })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::MalformedInput(
                "points must have dimension >= 1".into(),
            ));
        }
        Ok(PointCloud {
            dim,
            points: Vec::new(),
            labels: None,
        })
    }

    /// Attaches one label per point.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::MalformedInput(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(&self.points[i], &self.points[j])
    }

    /// The sub-cloud on the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<PointCloud> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::InvalidArgument(format!(
                "index {bad} out of range for {} points",
                self.len()
            )));
        }
        Ok(PointCloud {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        })
    }

    /// Applies `f` to every point; used for rigid motions in tests and demos.
    pub fn map_points(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<PointCloud> {
        let mut out = PointCloud::new(self.points.iter().map(|p| f(p)).collect())?;
        out.labels = self.labels.clone();
        Ok(out)
    }
}

/// Parameters of a local homology query at a basepoint.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalQuery {
    pub basepoint: Vec<f64>,
    /// Radius `r` of the closed ball around the basepoint.
    pub radius: f64,
    /// User-asserted sample density.
    pub epsilon: f64,
    /// Largest Rips scale built by the alpha pipeline.
    pub max_scale: f64,
    /// Top homological dimension reported.
    pub max_dim: usize,
}

impl LocalQuery {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("radius", self.radius),
            ("epsilon", self.epsilon),
            ("max_scale", self.max_scale),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be a positive finite number, got {v}"
                )));
            }
        }
        if self.basepoint.is_empty() || self.basepoint.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "basepoint must have finite coordinates".into(),
            ));
        }
        Ok(())
    }

    /// Validates the query and checks that it lives in the cloud's ambient space.
    pub fn validate_for(&self, cloud: &PointCloud) -> Result<()> {
        self.validate()?;
        if self.basepoint.len() != cloud.dim() {
            return Err(Error::InvalidArgument(format!(
                "basepoint has dimension {} but the cloud has dimension {}",
                self.basepoint.len(),
                cloud.dim()
            )));
        }
        Ok(())
    }
}

/// Dense symmetric matrix of pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

pub fn pairwise_distances(cloud: &PointCloud) -> Result<DistanceMatrix> {
    if cloud.is_empty() {
        return Err(Error::InvalidArgument("point cloud is empty".into()));
    }
    let n = cloud.len();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cloud.distance(i, j);
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { n, data })
}

/// Smallest `eps` such that the points indexed by `subset` form an
/// `eps`-sample of the whole cloud.
pub fn coverage_radius(subset: &[usize], cloud: &PointCloud) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::InvalidArgument("coverage subset is empty".into()));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= cloud.len()) {
        return Err(Error::InvalidArgument(format!(
            "subset index {bad} out of range for {} points",
            cloud.len()
        )));
    }
    let radius = cloud
        .points()
        .iter()
        .map(|p| {
            subset
                .iter()
                .map(|&s| euclidean(p, cloud.point(s)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok(radius)
}

/// Distance from the query basepoint to every sample point.
pub fn distance_to_basepoint(cloud: &PointCloud, query: &LocalQuery) -> Result<Vec<f64>> {
    query.validate_for(cloud)?;
    Ok(cloud
        .points()
        .iter()
        .map(|p| euclidean(p, &query.basepoint))
        .collect())
}

/// Partition of the cloud by the closed ball `B_r(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSplit {
    pub inside: Vec<usize>,
    /// Vertices of the sample with the ball removed.
    pub outside: Vec<usize>,
}

/// Splits the cloud into points in the closed ball (distance `<= r`) and
/// points strictly outside it.
pub fn split_by_ball(cloud: &PointCloud, query: &LocalQuery) -> Result<BallSplit> {
    let dist = distance_to_basepoint(cloud, query)?;
    let (outside, inside): (Vec<usize>, Vec<usize>) =
        (0..cloud.len()).partition(|&i| dist[i] > query.radius);
    Ok(BallSplit { inside, outside })
}
