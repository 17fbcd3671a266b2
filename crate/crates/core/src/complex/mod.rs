//! Simplicial filtrations: Vietoris-Rips, Čech and lower-star constructions,
//! and vertex restriction into filtered pairs.

pub mod meb;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{pairwise_distances, PointCloud};

/// A simplex named by its strictly increasing vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Structural("simplex with no vertices".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural(format!(
                "simplex {vertices:?} repeats a vertex"
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex from vertices already known to be strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, each obtained by dropping one vertex.
    /// Empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub simplex: Simplex,
    pub value: f64,
}

/// The canonical total order: value, then dimension, then lexicographic vertices.
pub fn cell_order(a: &Cell, b: &Cell) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then_with(|| a.simplex.dim().cmp(&b.simplex.dim()))
        .then_with(|| a.simplex.cmp(&b.simplex))
}

/// A face-closed simplicial complex with monotone entry values, stored in
/// filtration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    cells: Vec<Cell>,
}

impl Filtration {
    /// Sorts the cells into canonical order and checks every invariant.
    pub fn new(cells: Vec<(Simplex, f64)>) -> Result<Self> {
        let mut cells: Vec<Cell> = cells
            .into_iter()
            .map(|(simplex, value)| Cell { simplex, value })
            .collect();
        if let Some(c) = cells.iter().find(|c| c.value.is_nan()) {
            return Err(Error::Structural(format!(
                "simplex {} has NaN value",
                c.simplex
            )));
        }
        cells.sort_by(cell_order);
        let f = Filtration { cells };
        f.validate()?;
        Ok(f)
    }

    /// Keeps the given order as the filtration order, after checking that it
    /// is a valid one (faces first, values monotone). Ties need not follow the
    /// canonical tie-break.
    pub fn with_order(cells: Vec<(Simplex, f64)>) -> Result<Self> {
        let cells: Vec<Cell> = cells
            .into_iter()
            .map(|(simplex, value)| Cell { simplex, value })
            .collect();
        if cells.windows(2).any(|w| w[0].value > w[1].value) {
            return Err(Error::Structural("values are not sorted".into()));
        }
        let f = Filtration { cells };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_unsorted(mut cells: Vec<Cell>) -> Self {
        cells.sort_by(cell_order);
        let f = Filtration { cells };
        debug_assert!(f.validate().is_ok());
        f
    }

    /// Checks face closure, monotone values, face-before-coface order and
    /// absence of duplicates.
    pub fn validate(&self) -> Result<()> {
        let index = self.index_map()?;
        for (pos, cell) in self.cells.iter().enumerate() {
            if cell.value.is_nan() {
                return Err(Error::Structural(format!(
                    "simplex {} has NaN value",
                    cell.simplex
                )));
            }
            for facet in cell.simplex.facets() {
                let Some(&fpos) = index.get(&facet) else {
                    return Err(Error::Structural(format!(
                        "face {facet} of {} is missing",
                        cell.simplex
                    )));
                };
                if fpos > pos {
                    return Err(Error::Structural(format!(
                        "face {facet} appears after its coface {}",
                        cell.simplex
                    )));
                }
                if self.cells[fpos].value > cell.value {
                    return Err(Error::Structural(format!(
                        "face {facet} enters at {} after coface {} at {}",
                        self.cells[fpos].value, cell.simplex, cell.value
                    )));
                }
            }
        }
        Ok(())
    }

    /// Position of every simplex in filtration order.
    pub fn index_map(&self) -> Result<HashMap<&Simplex, usize>> {
        let mut index = HashMap::with_capacity(self.cells.len());
        for (pos, cell) in self.cells.iter().enumerate() {
            if index.insert(&cell.simplex, pos).is_some() {
                return Err(Error::Structural(format!(
                    "simplex {} appears twice",
                    cell.simplex
                )));
            }
        }
        Ok(index)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.simplex.dim()).max()
    }

    /// Sorted list of the vertex indices in the complex.
    pub fn vertex_set(&self) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.simplex.dim() == 0)
            .map(|c| c.simplex.vertices()[0])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Cells with value `<= threshold`, in filtration order.
    pub fn sublevel(&self, threshold: f64) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.value <= threshold)
    }

    pub fn simplex_set_at(&self, threshold: f64) -> HashSet<&Simplex> {
        self.sublevel(threshold).map(|c| &c.simplex).collect()
    }

    /// Debug dump: one cell per line, `value v0 v1 ... vk`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            out.push_str(&format!("{} {}\n", c.value, c.simplex));
        }
        out
    }
}

/// A filtration together with a flagged subfiltration `A ⊆ K`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredPair {
    ambient: Filtration,
    in_subcomplex: Vec<bool>,
}

impl FilteredPair {
    /// Checks that the flagged cells are face-closed. Flagged cells keep their
    /// ambient values, so the inclusion is compatible at every scale.
    pub fn new(ambient: Filtration, in_subcomplex: Vec<bool>) -> Result<Self> {
        if in_subcomplex.len() != ambient.len() {
            return Err(Error::Structural(format!(
                "{} flags for {} cells",
                in_subcomplex.len(),
                ambient.len()
            )));
        }
        let index = ambient.index_map()?;
        for (cell, &flag) in ambient.cells.iter().zip(&in_subcomplex) {
            if !flag {
                continue;
            }
            for facet in cell.simplex.facets() {
                if !in_subcomplex[index[&facet]] {
                    return Err(Error::Structural(format!(
                        "subcomplex contains {} but not its face {facet}",
                        cell.simplex
                    )));
                }
            }
        }
        Ok(FilteredPair {
            ambient,
            in_subcomplex,
        })
    }

    pub fn ambient(&self) -> &Filtration {
        &self.ambient
    }

    pub fn flags(&self) -> &[bool] {
        &self.in_subcomplex
    }

    pub fn is_flagged(&self, pos: usize) -> bool {
        self.in_subcomplex[pos]
    }

    /// The flagged cells, read in ambient order.
    pub fn subfiltration(&self) -> Filtration {
        Filtration {
            cells: self
                .ambient
                .cells
                .iter()
                .zip(&self.in_subcomplex)
                .filter(|(_, &f)| f)
                .map(|(c, _)| c.clone())
                .collect(),
        }
    }
}

fn check_scale(max_scale: f64) -> Result<()> {
    if max_scale.is_nan() || max_scale <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "max_scale must be positive, got {max_scale}"
        )));
    }
    Ok(())
}

/// Vietoris-Rips filtration: every simplex of dimension `<= max_dim + 1`
/// with diameter `<= max_scale`, valued by its diameter.
///
/// The extra dimension lets classes in `max_dim` die.
pub fn build_rips(cloud: &PointCloud, max_scale: f64, max_dim: usize) -> Result<Filtration> {
    check_scale(max_scale)?;
    if cloud.is_empty() {
        return Ok(Filtration { cells: Vec::new() });
    }
    let dist = pairwise_distances(cloud)?;
    let n = cloud.len();
    // upper neighbours, sorted
    let upper: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            ((i + 1)..n)
                .filter(|&j| dist.get(i, j) <= max_scale)
                .collect()
        })
        .collect();

    let top = max_dim + 1;
    let mut cells = Vec::new();
    let mut stack = Vec::new();
    for v in 0..n {
        cells.push(Cell {
            simplex: Simplex::vertex(v),
            value: 0.0,
        });
        if top == 0 {
            continue;
        }
        stack.push((vec![v], 0.0, upper[v].clone()));
        while let Some((verts, value, candidates)) = stack.pop() {
            for (k, &w) in candidates.iter().enumerate() {
                let diam = verts.iter().map(|&u| dist.get(u, w)).fold(value, f64::max);
                let mut next = verts.clone();
                next.push(w);
                if next.len() <= top {
                    let rest: Vec<usize> = candidates[k + 1..]
                        .iter()
                        .copied()
                        .filter(|c| upper[w].binary_search(c).is_ok())
                        .collect();
                    if !rest.is_empty() {
                        stack.push((next.clone(), diam, rest));
                    }
                }
                cells.push(Cell {
                    simplex: Simplex::from_sorted(next),
                    value: diam,
                });
            }
        }
    }
    Ok(Filtration::from_unsorted(cells))
}

/// Čech filtration valued by minimum enclosing ball radius, keeping simplices
/// of dimension `<= max_dim + 1` with radius `<= max_scale`.
///
/// Intended for small, low-dimensional clouds.
pub fn build_cech(cloud: &PointCloud, max_scale: f64, max_dim: usize) -> Result<Filtration> {
    check_scale(max_scale)?;
    if cloud.is_empty() {
        return Ok(Filtration { cells: Vec::new() });
    }
    // Any Čech simplex at radius s has diameter at most 2s.
    let rips = build_rips(cloud, 2.0 * max_scale, max_dim)?;
    let mut values: HashMap<Simplex, f64> = HashMap::with_capacity(rips.len());
    let mut cells = Vec::new();
    // Rips order is face-first, so facet values are available when needed.
    for cell in rips.cells() {
        let pts: Vec<&[f64]> = cell
            .simplex
            .vertices()
            .iter()
            .map(|&v| cloud.point(v))
            .collect();
        let mut radius = meb::min_enclosing_ball(&pts).radius;
        let mut faces_present = true;
        for facet in cell.simplex.facets() {
            match values.get(&facet) {
                Some(&fv) => radius = radius.max(fv),
                None => faces_present = false,
            }
        }
        if faces_present && radius <= max_scale {
            values.insert(cell.simplex.clone(), radius);
            cells.push(Cell {
                simplex: cell.simplex.clone(),
                value: radius,
            });
        }
    }
    Ok(Filtration::from_unsorted(cells))
}

/// Flags the cells whose vertices all lie in `keep`.
pub fn restrict_to_vertices(filtration: &Filtration, keep: &[usize]) -> Result<FilteredPair> {
    let vertices: HashSet<usize> = filtration.vertex_set().into_iter().collect();
    if let Some(v) = keep.iter().find(|v| !vertices.contains(v)) {
        return Err(Error::InvalidArgument(format!(
            "vertex {v} is not in the filtration"
        )));
    }
    let keep: HashSet<usize> = keep.iter().copied().collect();
    let flags = filtration
        .cells
        .iter()
        .map(|c| c.simplex.vertices().iter().all(|v| keep.contains(v)))
        .collect();
    Ok(FilteredPair {
        ambient: filtration.clone(),
        in_subcomplex: flags,
    })
}

/// Re-values a complex by the maximum of its vertex values and re-sorts it.
/// The complex's own values are discarded.
pub fn lower_star_filtration(complex: &Filtration, vertex_values: &[f64]) -> Result<Filtration> {
    let mut cells = Vec::with_capacity(complex.len());
    for c in complex.cells() {
        let mut value = f64::NEG_INFINITY;
        for &v in c.simplex.vertices() {
            let Some(&fv) = vertex_values.get(v) else {
                return Err(Error::InvalidArgument(format!("no value for vertex {v}")));
            };
            if !fv.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} has non-finite value {fv}"
                )));
            }
            value = value.max(fv);
        }
        cells.push(Cell {
            simplex: c.simplex.clone(),
            value,
        });
    }
    Ok(Filtration::from_unsorted(cells))
}

/// Checks `C_{α/2} ⊆ R_α ⊆ C_α ⊆ R_{2α}` simplex by simplex, in every
/// dimension up to `max_dim + 1`.
pub fn verify_interleaving_chain(cloud: &PointCloud, alpha: f64, max_dim: usize) -> Result<bool> {
    check_scale(alpha)?;
    let chain = [
        build_cech(cloud, alpha / 2.0, max_dim)?,
        build_rips(cloud, alpha, max_dim)?,
        build_cech(cloud, alpha, max_dim)?,
        build_rips(cloud, 2.0 * alpha, max_dim)?,
    ];
    Ok(chain.windows(2).all(|w| {
        let larger = w[1].simplex_set_at(f64::INFINITY);
        w[0].cells().iter().all(|c| larger.contains(&c.simplex))
    }))
}
