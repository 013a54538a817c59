use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::point::{AdjacencyKind, Point};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// How adjacency between the points of an image is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// `c_k` adjacency of the ambient grid.
    Grid(AdjacencyKind),
    /// An explicit, symmetric edge list, used for product images whose
    /// relation is not a `c_k` relation of the ambient lattice.
    Explicit,
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjacency::Grid(k) => write!(f, "{k}"),
            Adjacency::Explicit => write!(f, "product"),
        }
    }
}

/// A finite, non-empty set of lattice points with an adjacency relation.
///
/// Points are stored sorted lexicographically; the position of a point in
/// that order is its *index*, and every other module refers to points by
/// index. The adjacency graph is built once at construction.
#[derive(Clone, Debug)]
pub struct DigitalImage {
    dim: usize,
    adjacency: Adjacency,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    labels: Vec<Option<String>>,
    graph: Vec<Vec<usize>>,
}

impl PartialEq for DigitalImage {
    // labels are metadata and do not take part in equality
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.adjacency == other.adjacency
            && self.points == other.points
            && self.graph == other.graph
    }
}

impl Eq for DigitalImage {}

fn sort_labelled(
    dim: usize,
    mut entries: Vec<(Point, Option<String>)>,
) -> Result<(Vec<Point>, Vec<Option<String>>, HashMap<Point, usize>)> {
    if entries.is_empty() {
        return Err(Error::EmptyImage);
    }
    for (p, _) in &entries {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    for w in entries.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicatePoint(w[0].0.to_string()));
        }
    }
    let (points, labels): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    let index = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Ok((points, labels, index))
}

impl DigitalImage {
    pub fn new(kind: AdjacencyKind, points: Vec<Point>) -> Result<Self> {
        Self::with_labels(kind, points.into_iter().map(|p| (p, None)).collect())
    }

    pub fn with_labels(kind: AdjacencyKind, entries: Vec<(Point, Option<String>)>) -> Result<Self> {
        let dim = kind.dim();
        let (points, labels, index) = sort_labelled(dim, entries)?;
        let offsets = kind.offsets();
        let graph = Exec::default().map(points.len(), |i| {
            let mut nb: Vec<usize> = offsets
                .iter()
                .filter_map(|d| index.get(&points[i].offset(d)).copied())
                .collect();
            nb.sort_unstable();
            nb
        });
        Ok(DigitalImage {
            dim,
            adjacency: Adjacency::Grid(kind),
            points,
            index,
            labels,
            graph,
        })
    }

    /// Image with an explicit edge relation. Edges are unordered; repeats are
    /// ignored.
    pub fn from_edges(
        dim: usize,
        entries: Vec<(Point, Option<String>)>,
        edges: &[(Point, Point)],
    ) -> Result<Self> {
        let (points, labels, index) = sort_labelled(dim, entries)?;
        let mut graph = vec![Vec::new(); points.len()];
        for (p, q) in edges {
            let i = *index
                .get(p)
                .ok_or_else(|| Error::PointNotInImage(p.to_string()))?;
            let j = *index
                .get(q)
                .ok_or_else(|| Error::PointNotInImage(q.to_string()))?;
            if i == j {
                return Err(Error::SamePoint);
            }
            graph[i].push(j);
            graph[j].push(i);
        }
        for nb in &mut graph {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(DigitalImage {
            dim,
            adjacency: Adjacency::Explicit,
            points,
            index,
            labels,
            graph,
        })
    }

    /// Explicit-relation image from points already sorted and a symmetric
    /// adjacency list over their indices.
    pub(crate) fn from_sorted_graph(
        dim: usize,
        points: Vec<Point>,
        labels: Vec<Option<String>>,
        graph: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        DigitalImage {
            dim,
            adjacency: Adjacency::Explicit,
            points,
            index,
            labels,
            graph,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    pub fn grid_kind(&self) -> Option<AdjacencyKind> {
        match self.adjacency {
            Adjacency::Grid(k) => Some(k),
            Adjacency::Explicit => None,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; images are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn require_index(&self, p: &Point) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::PointNotInImage(p.to_string()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Label if present, otherwise the coordinates.
    pub fn describe(&self, i: usize) -> String {
        match &self.labels[i] {
            Some(l) => format!("{l}{}", self.points[i]),
            None => self.points[i].to_string(),
        }
    }

    /// Indices of the points adjacent to point `i`, ascending.
    pub fn neighbors_of(&self, i: usize) -> &[usize] {
        &self.graph[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.graph[i].len()
    }

    pub fn graph(&self) -> &[Vec<usize>] {
        &self.graph
    }

    /// Points of the image adjacent to `p`.
    pub fn neighbors(&self, p: &Point) -> Result<Vec<Point>> {
        let i = self.require_index(p)?;
        Ok(self.graph[i]
            .iter()
            .map(|&j| self.points[j].clone())
            .collect())
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.graph[i].binary_search(&j).is_ok()
    }

    /// Equal or adjacent: the relation continuity is tested against.
    pub fn adj_or_eq(&self, i: usize, j: usize) -> bool {
        i == j || self.is_adjacent(i, j)
    }

    /// `i` followed by its neighbours.
    pub fn closed_neighborhood(&self, i: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.graph[i].len() + 1);
        v.push(i);
        v.extend_from_slice(&self.graph[i]);
        v
    }

    pub fn edge_count(&self) -> usize {
        self.graph.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Unordered adjacent pairs `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, nb) in self.graph.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    /// Maximal connected subsets; each part ascending, parts ordered by
    /// their smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut part = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.graph[u] {
                    if !seen[v] {
                        seen[v] = true;
                        part.push(v);
                        queue.push_back(v);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Breadth-first graph distances from point `i`.
    pub fn distances_from(&self, i: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[i] = Some(0);
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.graph[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs distance table; `None` between different components.
    pub fn distance_table(&self) -> Vec<Vec<Option<usize>>> {
        Exec::default().map(self.len(), |i| self.distances_from(i))
    }

    /// Largest distance between two points, `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let table = self.distance_table();
        let mut best = 0;
        for row in &table {
            for d in row {
                best = best.max((*d)?);
            }
        }
        Some(best)
    }

    /// The sub-image on the given indices, with the induced relation.
    pub fn subimage(&self, indices: &[usize]) -> Result<DigitalImage> {
        for &i in indices {
            if i >= self.len() {
                return Err(Error::OutOfRange {
                    index: i,
                    len: self.len(),
                });
            }
        }
        let entries = indices
            .iter()
            .map(|&i| (self.points[i].clone(), self.labels[i].clone()))
            .collect();
        match self.adjacency {
            Adjacency::Grid(kind) => DigitalImage::with_labels(kind, entries),
            Adjacency::Explicit => {
                let keep: std::collections::HashSet<usize> = indices.iter().copied().collect();
                let edges: Vec<(Point, Point)> = self
                    .edges()
                    .into_iter()
                    .filter(|(i, j)| keep.contains(i) && keep.contains(j))
                    .map(|(i, j)| (self.points[i].clone(), self.points[j].clone()))
                    .collect();
                DigitalImage::from_edges(self.dim, entries, &edges)
            }
        }
    }

    /// Apply a coordinate transformation. Grid images recompute adjacency
    /// from the kind; explicit images carry their edges along.
    pub fn map_points<F: Fn(&Point) -> Point>(&self, f: F) -> Result<DigitalImage> {
        let entries: Vec<(Point, Option<String>)> = self
            .points
            .iter()
            .zip(&self.labels)
            .map(|(p, l)| (f(p), l.clone()))
            .collect();
        match self.adjacency {
            Adjacency::Grid(kind) => {
                let dim = entries.first().map(|e| e.0.dim()).unwrap_or(0);
                let kind = if dim == kind.dim() {
                    kind
                } else {
                    AdjacencyKind::new(dim, kind.k().min(dim))?
                };
                DigitalImage::with_labels(kind, entries)
            }
            Adjacency::Explicit => {
                let dim = entries.first().map(|e| e.0.dim()).unwrap_or(self.dim);
                let edges: Vec<(Point, Point)> = self
                    .edges()
                    .into_iter()
                    .map(|(i, j)| (f(&self.points[i]), f(&self.points[j])))
                    .collect();
                DigitalImage::from_edges(dim, entries, &edges)
            }
        }
    }

    /// Copy with labels replaced positionally by points.
    pub fn relabelled(&self, labels: &[(Point, String)]) -> Result<DigitalImage> {
        let mut out = self.clone();
        for (p, l) in labels {
            let i = self.require_index(p)?;
            out.labels[i] = Some(l.clone());
        }
        Ok(out)
    }
}
