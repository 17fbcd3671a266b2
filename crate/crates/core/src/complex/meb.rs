//! Minimum enclosing balls, used for Čech filtration values.

use nalgebra::{DMatrix, DVector};

use crate::geometry::euclidean;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn empty() -> Self {
        Ball {
            center: Vec::new(),
            radius: f64::NEG_INFINITY,
        }
    }

    /// Containment with a small relative slack for rounding in the center.
    pub fn contains(&self, p: &[f64]) -> bool {
        if self.radius < 0.0 {
            return false;
        }
        euclidean(&self.center, p) <= self.radius + 1e-12 * self.radius.max(1.0)
    }
}

/// Smallest ball with all of `support` on its boundary, within the affine
/// hull of the support. `None` when the support is affinely dependent.
fn circumball(support: &[&[f64]]) -> Option<Ball> {
    match support.len() {
        0 => Some(Ball::empty()),
        1 => Some(Ball {
            center: support[0].to_vec(),
            radius: 0.0,
        }),
        2 => {
            let (p, q) = (support[0], support[1]);
            let r = euclidean(p, q) / 2.0;
            if r == 0.0 {
                return None;
            }
            Some(Ball {
                center: p.iter().zip(q).map(|(a, b)| (a + b) / 2.0).collect(),
                radius: r,
            })
        }
        k => {
            let origin = support[0];
            let dim = origin.len();
            if k > dim + 1 {
                return None;
            }
            let edges: Vec<Vec<f64>> = support[1..]
                .iter()
                .map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect())
                .collect();
            let m = k - 1;
            let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
            let gram = DMatrix::from_fn(m, m, |i, j| 2.0 * dot(&edges[i], &edges[j]));
            let rhs = DVector::from_fn(m, |i, _| dot(&edges[i], &edges[i]));

            // Gram determinant relative to the squared edge lengths measures
            // affine independence independently of scale.
            let scale: f64 = (0..m).map(|i| gram[(i, i)]).product();
            if scale == 0.0 || (gram.determinant() / scale).abs() < 1e-10 {
                return None;
            }
            let coeffs = gram.lu().solve(&rhs)?;
            let mut center = origin.to_vec();
            for (i, e) in edges.iter().enumerate() {
                for (c, x) in center.iter_mut().zip(e) {
                    *c += coeffs[i] * x;
                }
            }
            let radius = support
                .iter()
                .map(|p| euclidean(&center, p))
                .fold(0.0, f64::max);
            Some(Ball { center, radius })
        }
    }
}

fn welzl(points: &[&[f64]], n: usize, boundary: &mut Vec<usize>) -> Option<Ball> {
    let dim = points[0].len();
    if n == 0 || boundary.len() == dim + 1 {
        let support: Vec<&[f64]> = boundary.iter().map(|&i| points[i]).collect();
        return circumball(&support);
    }
    let p = n - 1;
    let ball = welzl(points, p, boundary)?;
    if ball.contains(points[p]) {
        return Some(ball);
    }
    boundary.push(p);
    let ball = welzl(points, p, boundary);
    boundary.pop();
    ball
}

/// Tries every affinely independent support set of size at most `d + 1`.
fn exhaustive(points: &[&[f64]]) -> Ball {
    let n = points.len();
    let max_support = (points[0].len() + 1).min(n);
    let mut best: Option<Ball> = None;
    let mut idx = Vec::with_capacity(max_support);
    for k in 1..=max_support {
        combinations(n, k, &mut idx, &mut |subset| {
            let support: Vec<&[f64]> = subset.iter().map(|&i| points[i]).collect();
            if let Some(ball) = circumball(&support) {
                if best.as_ref().is_none_or(|b| ball.radius < b.radius)
                    && points.iter().all(|p| ball.contains(p))
                {
                    best = Some(ball);
                }
            }
        });
    }
    best.expect("a single point is always a valid support")
}

fn combinations(n: usize, k: usize, idx: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if idx.len() == k {
        f(idx);
        return;
    }
    let start = idx.last().map_or(0, |&l| l + 1);
    for i in start..n {
        if n - i < k - idx.len() {
            break;
        }
        idx.push(i);
        combinations(n, k, idx, f);
        idx.pop();
    }
}

/// Minimum enclosing ball of a nonempty point set.
///
/// Welzl's recursion handles the generic case; degenerate support sets
/// (coincident or affinely dependent boundary points) fall back to
/// enumerating supports.
pub fn min_enclosing_ball(points: &[&[f64]]) -> Ball {
    assert!(!points.is_empty(), "enclosing ball of an empty set");
    let mut boundary = Vec::new();
    match welzl(points, points.len(), &mut boundary) {
        Some(ball) if points.iter().all(|p| ball.contains(p)) => ball,
        _ => exhaustive(points),
    }
}
