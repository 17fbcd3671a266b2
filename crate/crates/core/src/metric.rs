//! Exact bottleneck distance between persistence diagrams.

use std::collections::{BTreeSet, VecDeque};

use crate::diagram::{DiagramPoint, PersistenceDiagram};

/// Absolute slack allowed by [`interleaving_certificate`].
pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// One matched pair; `None` stands for the diagonal.
pub type MatchedPair = (Option<usize>, Option<usize>);

/// An optimal bottleneck matching. Indices refer to
/// [`PersistenceDiagram::points`] of the two diagrams.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<MatchedPair>,
    pub cost: f64,
}

fn linf(a: &DiagramPoint, b: &DiagramPoint) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

fn diag_cost(p: &DiagramPoint) -> f64 {
    (p.death - p.birth) / 2.0
}

/// Bipartite graph for the finite points of one dimension at a threshold.
/// Left: the `n` points of the first diagram, then `m` diagonal slots.
/// Right: the `m` points of the second diagram, then `n` diagonal slots.
struct Feasibility<'a> {
    a: &'a [(usize, DiagramPoint)],
    b: &'a [(usize, DiagramPoint)],
}

impl Feasibility<'_> {
    fn adjacency(&self, delta: f64) -> Vec<Vec<usize>> {
        let (n, m) = (self.a.len(), self.b.len());
        let mut adj = vec![Vec::new(); n + m];
        for (i, (_, p)) in self.a.iter().enumerate() {
            for (j, (_, q)) in self.b.iter().enumerate() {
                if linf(p, q) <= delta {
                    adj[i].push(j);
                }
            }
            if diag_cost(p) <= delta {
                adj[i].push(m + i);
            }
        }
        for (j, (_, q)) in self.b.iter().enumerate() {
            let row = &mut adj[n + j];
            if diag_cost(q) <= delta {
                row.push(j);
            }
            row.extend(m..m + n);
        }
        adj
    }

    /// Perfect matching at `delta`, as `left -> right`, if one exists.
    fn matching(&self, delta: f64) -> Option<Vec<usize>> {
        let adj = self.adjacency(delta);
        let size = adj.len();
        let matched = hopcroft_karp(&adj, size);
        matched
            .iter()
            .all(|m| m.is_some())
            .then(|| matched.into_iter().map(|m| m.unwrap()).collect())
    }
}

/// Maximum bipartite matching; returns the partner of every left vertex.
fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![FREE; n_left];
    let mut match_r = vec![FREE; n_right];
    let mut layer = vec![0usize; n_left];

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        let mut found = false;
        for u in 0..n_left {
            if match_l[u] == FREE {
                layer[u] = 0;
                queue.push_back(u);
            } else {
                layer[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == FREE {
                    found = true;
                } else if layer[w] == usize::MAX {
                    layer[w] = layer[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        let mut next_edge = vec![0usize; n_left];
        fn augment(
            u: usize,
            adj: &[Vec<usize>],
            layer: &mut [usize],
            next_edge: &mut [usize],
            match_l: &mut [usize],
            match_r: &mut [usize],
        ) -> bool {
            while next_edge[u] < adj[u].len() {
                let v = adj[u][next_edge[u]];
                next_edge[u] += 1;
                let w = match_r[v];
                let ok = w == usize::MAX
                    || (layer[w] == layer[u] + 1
                        && augment(w, adj, layer, next_edge, match_l, match_r));
                if ok {
                    match_l[u] = v;
                    match_r[v] = u;
                    return true;
                }
            }
            layer[u] = usize::MAX;
            false
        }
        let mut progress = false;
        for u in 0..n_left {
            if match_l[u] == FREE
                && augment(
                    u,
                    adj,
                    &mut layer,
                    &mut next_edge,
                    &mut match_l,
                    &mut match_r,
                )
            {
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    match_l
        .into_iter()
        .map(|v| (v != FREE).then_some(v))
        .collect()
}

/// Exact bottleneck matching of the finite points of one dimension.
fn finite_matching(a: &[(usize, DiagramPoint)], b: &[(usize, DiagramPoint)]) -> Matching {
    let (n, m) = (a.len(), b.len());
    if n == 0 && m == 0 {
        return Matching {
            pairs: Vec::new(),
            cost: 0.0,
        };
    }
    let mut candidates: Vec<f64> = a
        .iter()
        .flat_map(|(_, p)| b.iter().map(move |(_, q)| linf(p, q)))
        .chain(a.iter().chain(b).map(|(_, p)| diag_cost(p)))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let graph = Feasibility { a, b };
    // the largest candidate always admits the all-diagonal matching
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if graph.matching(candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let cost = candidates[lo];
    let partner = graph.matching(cost).expect("feasible at the chosen radius");
    let mut pairs = Vec::new();
    for (u, &v) in partner.iter().enumerate() {
        let left = (u < n).then(|| a[u].0);
        let right = (v < m).then(|| b[v].0);
        if left.is_some() || right.is_some() {
            pairs.push((left, right));
        }
    }
    Matching { pairs, cost }
}

/// Optimal matching between two diagrams, or `None` when some dimension has
/// different numbers of essential classes (infinite distance).
///
/// Essential classes are matched among themselves by sorted birth, which is
/// optimal on the line.
pub fn bottleneck_matching(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Option<Matching> {
    let dims: BTreeSet<usize> = d1
        .points()
        .iter()
        .chain(d2.points())
        .map(|p| p.dim)
        .collect();
    let mut pairs = Vec::new();
    let mut cost: f64 = 0.0;
    for dim in dims {
        let split = |d: &PersistenceDiagram| {
            let mut finite = Vec::new();
            let mut essential = Vec::new();
            for (i, p) in d.points().iter().enumerate() {
                if p.dim != dim {
                    continue;
                }
                if p.is_essential() {
                    essential.push((i, *p));
                } else {
                    finite.push((i, *p));
                }
            }
            essential.sort_by(|x, y| x.1.birth.total_cmp(&y.1.birth));
            (finite, essential)
        };
        let (fa, ea) = split(d1);
        let (fb, eb) = split(d2);
        if ea.len() != eb.len() {
            return None;
        }
        for ((i, p), (j, q)) in ea.iter().zip(&eb) {
            cost = cost.max((p.birth - q.birth).abs());
            pairs.push((Some(*i), Some(*j)));
        }
        let m = finite_matching(&fa, &fb);
        cost = cost.max(m.cost);
        pairs.extend(m.pairs);
    }
    Some(Matching { pairs, cost })
}

/// Bottleneck distance; `f64::INFINITY` when essential class counts differ
/// in some dimension.
pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    bottleneck_matching(d1, d2).map_or(f64::INFINITY, |m| m.cost)
}

/// Whether the two diagrams are within `claimed_bound` of each other, up to
/// [`CERTIFICATE_TOLERANCE`].
pub fn interleaving_certificate(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    claimed_bound: f64,
) -> bool {
    bottleneck_distance(d1, d2) <= claimed_bound + CERTIFICATE_TOLERANCE
}
