use crate::error::{Error, Result};
use crate::grid::DigitalImage;

/// A digital path `[0, n] -> X`, stored as point indices of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitalPath {
    points: Vec<usize>,
}

/// How values of two synchronized paths must relate at each time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathAdjacency {
    /// Equal or adjacent.
    #[default]
    Adjacent,
    /// In the same component of `X`. Every pair of paths in a connected
    /// image is then related; kept for comparison only.
    SameComponent,
}

impl DigitalPath {
    /// Checks that consecutive values are equal or adjacent.
    pub fn new(x: &DigitalImage, points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPath("a path has at least one value".into()));
        }
        if let Some(&bad) = points.iter().find(|&&p| p >= x.len()) {
            return Err(Error::OutOfRange {
                index: bad,
                len: x.len(),
            });
        }
        if let Some(w) = points.windows(2).find(|w| !x.adj_or_eq(w[0], w[1])) {
            return Err(Error::InvalidPath(format!(
                "{} -> {} is not a step",
                x.point(w[0]),
                x.point(w[1])
            )));
        }
        Ok(DigitalPath { points })
    }

    pub(crate) fn unchecked(points: Vec<usize>) -> Self {
        debug_assert!(!points.is_empty());
        DigitalPath { points }
    }

    pub fn constant(p: usize) -> Self {
        DigitalPath { points: vec![p] }
    }

    /// `n`, the last time.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Value at time `t`, holding the end value for `t > n`.
    pub fn at(&self, t: usize) -> usize {
        self.points[t.min(self.points.len() - 1)]
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.points[0], *self.points.last().unwrap())
    }

    pub fn start(&self) -> usize {
        self.points[0]
    }

    pub fn end(&self) -> usize {
        *self.points.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.points.clone();
        p.reverse();
        DigitalPath { points: p }
    }

    /// Same path extended to length `n` by holding its end value.
    pub fn extended(&self, n: usize) -> Self {
        let mut p = self.points.clone();
        while p.len() < n + 1 {
            p.push(self.end());
        }
        DigitalPath { points: p }
    }

    /// Trailing repeats of the end value removed.
    pub fn trimmed(&self) -> Self {
        let mut p = self.points.clone();
        while p.len() > 1 && p[p.len() - 2] == p[p.len() - 1] {
            p.pop();
        }
        DigitalPath { points: p }
    }

    /// `self` followed by `other`, which must start where `self` ends.
    pub fn then(&self, other: &DigitalPath) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::InvalidPath("paths do not meet".into()));
        }
        let mut p = self.points.clone();
        p.extend_from_slice(&other.points[1..]);
        Ok(DigitalPath { points: p })
    }
}

/// Extends the shorter path by holding its end value.
pub fn synchronize(a: &DigitalPath, b: &DigitalPath) -> (DigitalPath, DigitalPath) {
    let n = a.len().max(b.len());
    (a.extended(n), b.extended(n))
}

/// Whether the synchronized paths are related at every time.
pub fn paths_adjacent(
    x: &DigitalImage,
    a: &DigitalPath,
    b: &DigitalPath,
    mode: PathAdjacency,
) -> bool {
    let n = a.len().max(b.len());
    match mode {
        PathAdjacency::Adjacent => (0..=n).all(|t| x.adj_or_eq(a.at(t), b.at(t))),
        PathAdjacency::SameComponent => {
            let comp = component_ids(x);
            (0..=n).all(|t| comp[a.at(t)] == comp[b.at(t)])
        }
    }
}

pub(crate) fn component_ids(x: &DigitalImage) -> Vec<usize> {
    let mut id = vec![0; x.len()];
    for (c, part) in x.components().iter().enumerate() {
        for &i in part {
            id[i] = c;
        }
    }
    id
}

/// A bundle of paths with a common start, drawn on the wedge of `n`
/// intervals; leg `i` ends at the `i`-th coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spider {
    legs: Vec<DigitalPath>,
}

impl Spider {
    pub fn new(legs: Vec<DigitalPath>) -> Result<Self> {
        let first = legs
            .first()
            .ok_or_else(|| Error::InvalidPath("a spider has at least one leg".into()))?
            .start();
        if legs.iter().any(|l| l.start() != first) {
            return Err(Error::InvalidPath(
                "spider legs start at different points".into(),
            ));
        }
        Ok(Spider { legs })
    }

    pub(crate) fn unchecked(legs: Vec<DigitalPath>) -> Self {
        Spider { legs }
    }

    /// Path from `x` to `y` seen as a two-legged spider with a constant
    /// first leg at `x`.
    pub fn from_path(p: &DigitalPath) -> Self {
        Spider {
            legs: vec![DigitalPath::constant(p.start()), p.clone()],
        }
    }

    pub fn legs(&self) -> &[DigitalPath] {
        &self.legs
    }

    pub fn center(&self) -> usize {
        self.legs[0].start()
    }

    pub fn ends(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.end()).collect()
    }
}

/// Legwise [`paths_adjacent`].
pub fn spiders_adjacent(x: &DigitalImage, a: &Spider, b: &Spider, mode: PathAdjacency) -> bool {
    a.legs.len() == b.legs.len()
        && a.legs
            .iter()
            .zip(&b.legs)
            .all(|(p, q)| paths_adjacent(x, p, q, mode))
}
