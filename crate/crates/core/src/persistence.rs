//! Persistent homology over Z/2: standard column reduction, relative
//! persistence of filtered pairs through a cone, and a rank oracle.

use std::collections::HashMap;

use crate::complex::{FilteredPair, Filtration};
use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::metric::bottleneck_distance;

/// Z/2 boundary matrix in filtration order. Column `j` lists the positions of
/// the facets of cell `j`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    columns: Vec<Vec<usize>>,
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl BoundaryMatrix {
    /// Boundary matrix of the cells of dimension `<= top_dim`.
    pub fn from_filtration(filtration: &Filtration, top_dim: usize) -> Result<Self> {
        let index = filtration.index_map()?;
        let mut m = BoundaryMatrix {
            columns: Vec::new(),
            dims: Vec::new(),
            values: Vec::new(),
        };
        // cells above top_dim are skipped; positions are renumbered densely
        let mut renumber = vec![usize::MAX; filtration.len()];
        for (pos, cell) in filtration.cells().iter().enumerate() {
            let dim = cell.simplex.dim();
            if dim > top_dim {
                continue;
            }
            let mut col = Vec::with_capacity(dim + 1);
            for facet in cell.simplex.facets() {
                let Some(&fpos) = index.get(&facet) else {
                    return Err(Error::Structural(format!(
                        "face {facet} of {} is missing",
                        cell.simplex
                    )));
                };
                col.push(renumber[fpos]);
            }
            col.sort_unstable();
            renumber[pos] = m.columns.len();
            m.push(col, dim, cell.value);
        }
        m.validate()?;
        Ok(m)
    }

    fn push(&mut self, column: Vec<usize>, dim: usize, value: f64) {
        self.columns.push(column);
        self.dims.push(dim);
        self.values.push(value);
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// Faces precede cofaces, a k-cell has k+1 facets, entries are
    /// (k-1)-cells and values are monotone along the boundary.
    pub fn validate(&self) -> Result<()> {
        for (j, col) in self.columns.iter().enumerate() {
            let dim = self.dims[j];
            let expected = if dim == 0 { 0 } else { dim + 1 };
            if col.len() != expected {
                return Err(Error::Structural(format!(
                    "column {j} of dimension {dim} has {} entries",
                    col.len()
                )));
            }
            for &i in col {
                if i >= j {
                    return Err(Error::Structural(format!(
                        "column {j} references later row {i}"
                    )));
                }
                if self.dims[i] + 1 != dim {
                    return Err(Error::Structural(format!(
                        "column {j} references row {i} of the wrong dimension"
                    )));
                }
                if self.values[i] > self.values[j] {
                    return Err(Error::Structural(format!(
                        "row {i} enters after column {j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Result of reducing a boundary matrix: `(birth, death)` index pairs and the
/// indices of cells that are never paired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
}

/// `a ^= b` on sorted index sets.
fn add_column(a: &mut Vec<usize>, b: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&a[i..]);
    scratch.extend_from_slice(&b[j..]);
    std::mem::swap(a, scratch);
}

/// Left-to-right column reduction with lowest-one pivots.
pub fn reduce_matrix(matrix: &BoundaryMatrix) -> Pairing {
    let n = matrix.len();
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut pivot_col = vec![usize::MAX; n];
    let mut is_birth_paired = vec![false; n];
    let mut pairs = Vec::new();
    let mut scratch = Vec::new();
    for j in 0..n {
        let mut col = matrix.columns[j].clone();
        while let Some(&low) = col.last() {
            let other = pivot_col[low];
            if other == usize::MAX {
                break;
            }
            add_column(&mut col, &reduced[other], &mut scratch);
        }
        if let Some(&low) = col.last() {
            pivot_col[low] = j;
            is_birth_paired[low] = true;
            pairs.push((low, j));
        }
        reduced.push(col);
    }
    let unpaired = (0..n)
        .filter(|&j| reduced[j].is_empty() && !is_birth_paired[j])
        .collect();
    Pairing { pairs, unpaired }
}

fn pairing_to_diagram(
    matrix: &BoundaryMatrix,
    pairing: &Pairing,
    max_dim: usize,
    skip: Option<usize>,
) -> PersistenceDiagram {
    let mut points = Vec::new();
    for &(b, d) in &pairing.pairs {
        if matrix.dim(b) <= max_dim {
            points.push(DiagramPoint::new(
                matrix.dim(b),
                matrix.value(b),
                matrix.value(d),
            ));
        }
    }
    for &u in &pairing.unpaired {
        if Some(u) != skip && matrix.dim(u) <= max_dim {
            points.push(DiagramPoint::new(
                matrix.dim(u),
                matrix.value(u),
                f64::INFINITY,
            ));
        }
    }
    PersistenceDiagram::from_points(points)
}

/// Persistence diagram of a filtration in dimensions `0..=max_dim`.
pub fn reduce(filtration: &Filtration, max_dim: usize) -> Result<PersistenceDiagram> {
    let matrix = BoundaryMatrix::from_filtration(filtration, max_dim + 1)?;
    let pairing = reduce_matrix(&matrix);
    Ok(pairing_to_diagram(&matrix, &pairing, max_dim, None))
}

/// Boundary matrix of the cone `K ∪ ω*A`, with the cone vertex `ω` at index 0.
///
/// Each cone cell `ω*σ` takes the value of `σ` and is ordered after it.
pub fn cone_matrix(pair: &FilteredPair, max_dim: usize) -> Result<BoundaryMatrix> {
    let ambient = pair.ambient();
    let top = max_dim + 1;
    let index = ambient.index_map()?;

    // (value, dim, ambient position, is_cone)
    let mut order: Vec<(f64, usize, usize, bool)> = Vec::new();
    for (pos, cell) in ambient.cells().iter().enumerate() {
        let dim = cell.simplex.dim();
        if dim <= top {
            order.push((cell.value, dim, pos, false));
        }
        if pair.is_flagged(pos) && dim < top {
            order.push((cell.value, dim + 1, pos, true));
        }
    }
    order.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
            .then(a.3.cmp(&b.3))
    });

    let mut plain_idx = vec![usize::MAX; ambient.len()];
    let mut cone_idx = vec![usize::MAX; ambient.len()];
    for (k, &(_, _, pos, is_cone)) in order.iter().enumerate() {
        if is_cone {
            cone_idx[pos] = k + 1;
        } else {
            plain_idx[pos] = k + 1;
        }
    }

    let mut m = BoundaryMatrix {
        columns: Vec::with_capacity(order.len() + 1),
        dims: Vec::with_capacity(order.len() + 1),
        values: Vec::with_capacity(order.len() + 1),
    };
    // the cone vertex precedes everything; its value never reaches a diagram
    m.push(Vec::new(), 0, f64::MIN);
    for &(value, dim, pos, is_cone) in &order {
        let simplex = &ambient.cells()[pos].simplex;
        let mut col = Vec::with_capacity(dim + 1);
        if is_cone {
            col.push(plain_idx[pos]);
            if simplex.dim() == 0 {
                col.push(0);
            }
            for facet in simplex.facets() {
                let fpos = index[&facet];
                col.push(cone_idx[fpos]);
            }
        } else {
            for facet in simplex.facets() {
                col.push(plain_idx[index[&facet]]);
            }
        }
        col.sort_unstable();
        m.push(col, dim, value);
    }
    m.validate()?;
    Ok(m)
}

/// Diagram of the relative module `H(K_a, A_a)` in dimensions `0..=max_dim`.
///
/// Computed as reduced persistent homology of the cone over the subcomplex:
/// the cone vertex's own essential class is discarded.
pub fn relative_reduce(pair: &FilteredPair, max_dim: usize) -> Result<PersistenceDiagram> {
    let matrix = cone_matrix(pair, max_dim)?;
    let pairing = reduce_matrix(&matrix);
    debug_assert!(pairing.unpaired.first() == Some(&0));
    Ok(pairing_to_diagram(&matrix, &pairing, max_dim, Some(0)))
}

/// Bit vector over Z/2.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Row-echelon basis keyed by leading bit.
#[derive(Default)]
struct Echelon {
    rows: HashMap<usize, Bits>,
}

impl Echelon {
    /// Inserts `v`, returning whether it was independent.
    fn insert(&mut self, mut v: Bits) -> bool {
        while let Some(h) = v.highest() {
            match self.rows.get(&h) {
                Some(row) => v.xor(row),
                None => {
                    self.rows.insert(h, v);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of `H_dim(K_i) -> H_dim(K_j)` where `K_t` is the sublevel complex of
/// cells with value `<= t`, by explicit elimination on cycle and boundary
/// spaces. For `i == j` this is the Betti number of `K_i`.
pub fn betti_oracle(
    filtration: &Filtration,
    value_i: f64,
    value_j: f64,
    dim: usize,
) -> Result<usize> {
    if value_i > value_j {
        return Err(Error::InvalidArgument(format!(
            "value_i {value_i} exceeds value_j {value_j}"
        )));
    }
    let cells = filtration.cells();
    let in_j = |c: &&crate::complex::Cell| c.value <= value_j;

    // coordinates of dim-chains and (dim-1)-chains in K_j
    let mut chain_idx: HashMap<&crate::complex::Simplex, usize> = HashMap::new();
    let mut face_idx: HashMap<&crate::complex::Simplex, usize> = HashMap::new();
    for c in cells.iter().filter(in_j) {
        let d = c.simplex.dim();
        if d == dim {
            let k = chain_idx.len();
            chain_idx.insert(&c.simplex, k);
        } else if dim > 0 && d + 1 == dim {
            let k = face_idx.len();
            face_idx.insert(&c.simplex, k);
        }
    }
    let n_chains = chain_idx.len();
    if n_chains == 0 {
        return Ok(0);
    }

    // cycles of K_i: kernel of the boundary on dim-cells entering by value_i
    let mut cycles: Vec<Bits> = Vec::new();
    let mut pivots: HashMap<usize, (Bits, Bits)> = HashMap::new();
    for c in cells
        .iter()
        .filter(|c| c.value <= value_i && c.simplex.dim() == dim)
    {
        let mut combo = Bits::zeros(n_chains);
        combo.set(chain_idx[&c.simplex]);
        if dim == 0 {
            cycles.push(combo);
            continue;
        }
        let mut bd = Bits::zeros(face_idx.len());
        for f in c.simplex.facets() {
            bd.set(face_idx[&f]);
        }
        loop {
            match bd.highest() {
                None => {
                    cycles.push(combo);
                    break;
                }
                Some(h) => match pivots.get(&h) {
                    Some((pb, pc)) => {
                        bd.xor(pb);
                        combo.xor(pc);
                    }
                    None => {
                        pivots.insert(h, (bd, combo));
                        break;
                    }
                },
            }
        }
    }

    // boundaries in K_j
    let mut boundaries = Echelon::default();
    for c in cells
        .iter()
        .filter(in_j)
        .filter(|c| c.simplex.dim() == dim + 1)
    {
        let mut bd = Bits::zeros(n_chains);
        for f in c.simplex.facets() {
            bd.set(chain_idx[&f]);
        }
        boundaries.insert(bd);
    }
    let b_rank = boundaries.rank();
    for z in cycles {
        boundaries.insert(z);
    }
    Ok(boundaries.rank() - b_rank)
}

/// Checks that two filtered pairs related by an `epsilon`-interleaving have
/// relative diagrams within `epsilon` in bottleneck distance.
pub fn relative_stability_check(
    pair_f: &FilteredPair,
    pair_g: &FilteredPair,
    epsilon: f64,
    max_dim: usize,
) -> Result<bool> {
    let df = relative_reduce(pair_f, max_dim)?;
    let dg = relative_reduce(pair_g, max_dim)?;
    Ok(bottleneck_distance(&df, &dg) <= epsilon + crate::metric::CERTIFICATE_TOLERANCE)
}
