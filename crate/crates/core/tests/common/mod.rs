//! Random instances and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use localhom::complex::{FilteredPair, Filtration, Simplex};
use localhom::diagram::{DiagramPoint, PersistenceDiagram};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random flag-like complex on up to 9 vertices with random monotone values.
///
/// Values are drawn from a coarse grid so that ties are common.
pub fn random_filtration(rng: &mut impl Rng, max_cells: usize) -> Filtration {
    let n = rng.gen_range(3..=9);
    let edge_p = rng.gen_range(0.3..0.9);
    let fill_p = rng.gen_range(0.3..1.0);
    let mut cells: Vec<(Simplex, f64)> = Vec::new();
    let mut present: HashMap<Vec<usize>, f64> = HashMap::new();
    let grid = |rng: &mut dyn rand::RngCore| (rng.gen_range(0..20) as f64) * 0.05;

    let mut add = |verts: Vec<usize>, raw: f64, cells: &mut Vec<(Simplex, f64)>| {
        let s = Simplex::new(verts.clone()).unwrap();
        let v = s
            .facets()
            .map(|f| present[f.vertices()])
            .fold(raw, f64::max);
        present.insert(verts, v);
        cells.push((s, v));
    };

    for v in 0..n {
        let raw = grid(rng);
        add(vec![v], raw, &mut cells);
    }
    // grow dimension by dimension, keeping only simplices whose facets exist
    let mut layer: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for _dim in 1..=3 {
        let mut next = Vec::new();
        for s in &layer {
            for w in (s.last().unwrap() + 1)..n {
                if cells.len() >= max_cells {
                    break;
                }
                let mut t = s.clone();
                t.push(w);
                let faces_ok = (0..t.len()).all(|skip| {
                    let f: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    f.is_empty() || cells.iter().any(|(c, _)| c.vertices() == f.as_slice())
                });
                let p = if t.len() == 2 { edge_p } else { fill_p };
                if faces_ok && rng.gen_bool(p) {
                    let raw = grid(rng);
                    add(t.clone(), raw, &mut cells);
                    next.push(t);
                }
            }
        }
        layer = next;
    }
    Filtration::new(cells).unwrap()
}

/// Random filtration with a random face-closed flagged subcomplex.
pub fn random_pair(rng: &mut impl Rng, max_cells: usize) -> FilteredPair {
    let f = random_filtration(rng, max_cells);
    let index = f.index_map().unwrap();
    let mut flags = vec![false; f.len()];
    let keep_p = rng.gen_range(0.2..0.9);
    for (pos, cell) in f.cells().iter().enumerate() {
        let faces_flagged = cell.simplex.facets().all(|t| flags[index[&t]]);
        flags[pos] = faces_flagged && rng.gen_bool(keep_p);
    }
    drop(index);
    FilteredPair::new(f, flags).unwrap()
}

/// Adds uniform noise in `[-delta, delta]` to every value, then restores
/// monotonicity by taking the maximum over faces. Every value moves by at
/// most `delta`.
pub fn perturb_values(f: &Filtration, delta: f64, rng: &mut impl Rng) -> Vec<(Simplex, f64)> {
    let mut new_vals: HashMap<&Simplex, f64> = HashMap::new();
    let mut out = Vec::with_capacity(f.len());
    for c in f.cells() {
        let raw = c.value + rng.gen_range(-delta..=delta);
        let v = c.simplex.facets().map(|t| new_vals[&t]).fold(raw, f64::max);
        new_vals.insert(&c.simplex, v);
        out.push((c.simplex.clone(), v));
    }
    out
}

pub fn perturb(f: &Filtration, delta: f64, rng: &mut impl Rng) -> Filtration {
    Filtration::new(perturb_values(f, delta, rng)).unwrap()
}

/// Perturbs the ambient values of a pair, keeping the same flagged simplices.
pub fn perturb_pair(pair: &FilteredPair, delta: f64, rng: &mut impl Rng) -> FilteredPair {
    let flagged: HashMap<Simplex, bool> = pair
        .ambient()
        .cells()
        .iter()
        .zip(pair.flags())
        .map(|(c, &b)| (c.simplex.clone(), b))
        .collect();
    let f = perturb(pair.ambient(), delta, rng);
    let flags = f.cells().iter().map(|c| flagged[&c.simplex]).collect();
    FilteredPair::new(f, flags).unwrap()
}

/// Relative persistence by deleting the subcomplex's rows and columns from
/// the boundary matrix and reducing what is left. Dense bitset reduction,
/// independent of the library's engine.
pub fn quotient_reduce(pair: &FilteredPair, max_dim: usize) -> PersistenceDiagram {
    let f = pair.ambient();
    let keep: Vec<usize> = (0..f.len())
        .filter(|&i| !pair.is_flagged(i) && f.cells()[i].simplex.dim() <= max_dim + 1)
        .collect();
    let local: HashMap<&Simplex, usize> = keep
        .iter()
        .enumerate()
        .map(|(k, &i)| (&f.cells()[i].simplex, k))
        .collect();
    let n = keep.len();
    let mut cols: Vec<Vec<bool>> = keep
        .iter()
        .map(|&i| {
            let mut col = vec![false; n];
            for t in f.cells()[i].simplex.facets() {
                if let Some(&k) = local.get(&t) {
                    col[k] = true;
                }
            }
            col
        })
        .collect();
    let low = |c: &Vec<bool>| c.iter().rposition(|&b| b);
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut paired = vec![false; n];
    for j in 0..n {
        while let Some(l) = low(&cols[j]) {
            match owner.get(&l) {
                Some(&k) => {
                    let other = cols[k].clone();
                    for (a, b) in cols[j].iter_mut().zip(other) {
                        *a ^= b;
                    }
                }
                None => break,
            }
        }
        if let Some(l) = low(&cols[j]) {
            owner.insert(l, j);
            paired[l] = true;
            paired[j] = true;
            let (b, d) = (&f.cells()[keep[l]], &f.cells()[keep[j]]);
            if b.simplex.dim() <= max_dim {
                points.push(DiagramPoint::new(b.simplex.dim(), b.value, d.value));
            }
        }
    }
    for j in 0..n {
        let c = &f.cells()[keep[j]];
        if !paired[j] && c.simplex.dim() <= max_dim {
            points.push(DiagramPoint::new(c.simplex.dim(), c.value, f64::INFINITY));
        }
    }
    PersistenceDiagram::new(points).unwrap()
}

/// Bottleneck distance by enumerating every partial matching. Only for
/// diagrams with a handful of points per dimension.
pub fn brute_bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let max_dim = d1.max_dim().max(d2.max_dim());
    let Some(max_dim) = max_dim else { return 0.0 };
    let mut worst: f64 = 0.0;
    for dim in 0..=max_dim {
        let split = |d: &PersistenceDiagram| {
            let (mut fin, mut ess): (Vec<DiagramPoint>, Vec<f64>) = (Vec::new(), Vec::new());
            for p in d.in_dim(dim) {
                if p.is_essential() {
                    ess.push(p.birth);
                } else {
                    fin.push(*p);
                }
            }
            (fin, ess)
        };
        let (fa, mut ea) = split(d1);
        let (fb, mut eb) = split(d2);
        if ea.len() != eb.len() {
            return f64::INFINITY;
        }
        ea.sort_by(f64::total_cmp);
        eb.sort_by(f64::total_cmp);
        // essential births: try every permutation too
        let ess = brute_line(&ea, &eb);
        let mut used = vec![false; fb.len()];
        let fin = brute_finite(&fa, &fb, 0, &mut used);
        worst = worst.max(ess).max(fin);
    }
    worst
}

fn brute_line(a: &[f64], b: &[f64]) -> f64 {
    fn rec(a: &[f64], b: &[f64], used: &mut Vec<bool>, i: usize) -> f64 {
        if i == a.len() {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let c = (a[i] - b[j]).abs().max(rec(a, b, used, i + 1));
                used[j] = false;
                best = best.min(c);
            }
        }
        best
    }
    rec(a, b, &mut vec![false; b.len()], 0)
}

fn brute_finite(a: &[DiagramPoint], b: &[DiagramPoint], i: usize, used: &mut Vec<bool>) -> f64 {
    let half = |p: &DiagramPoint| (p.death - p.birth) / 2.0;
    if i == a.len() {
        return b
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(q, _)| half(q))
            .fold(0.0, f64::max);
    }
    // a[i] to the diagonal
    let mut best = half(&a[i]).max(brute_finite(a, b, i + 1, used));
    for j in 0..b.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let c = (a[i].birth - b[j].birth)
            .abs()
            .max((a[i].death - b[j].death).abs());
        let rest = brute_finite(a, b, i + 1, used);
        used[j] = false;
        best = best.min(c.max(rest));
    }
    best
}

/// Random diagram with up to `max_points` points in dimensions 0 and 1,
/// including some essential classes.
pub fn random_diagram(rng: &mut impl Rng, max_points: usize) -> PersistenceDiagram {
    let n = rng.gen_range(0..=max_points);
    let points = (0..n)
        .map(|_| {
            let dim = rng.gen_range(0..2);
            let birth = rng.gen_range(0.0..1.0);
            let death = if rng.gen_bool(0.15) {
                f64::INFINITY
            } else {
                birth + rng.gen_range(0.0..1.0)
            };
            DiagramPoint::new(dim, birth, death)
        })
        .collect();
    PersistenceDiagram::new(points).unwrap()
}
