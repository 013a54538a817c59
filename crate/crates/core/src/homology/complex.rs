use std::collections::HashMap;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grid::{DigitalImage, Point};

/// A total order on the points of an image, used to orient simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    /// `rank[i]` is the position of point `i` in the order.
    rank: Vec<usize>,
}

impl VertexOrder {
    /// The image's own (lexicographic) order.
    pub fn lexicographic(x: &DigitalImage) -> Self {
        VertexOrder {
            rank: (0..x.len()).collect(),
        }
    }

    /// Order given as a list of point indices, smallest first.
    pub fn from_indices(x: &DigitalImage, seq: &[usize]) -> Result<Self> {
        if seq.len() != x.len() {
            return Err(Error::InvalidOrder(format!(
                "order lists {} points, image has {}",
                seq.len(),
                x.len()
            )));
        }
        let mut rank = vec![usize::MAX; x.len()];
        for (pos, &i) in seq.iter().enumerate() {
            if i >= x.len() {
                return Err(Error::OutOfRange {
                    index: i,
                    len: x.len(),
                });
            }
            if rank[i] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{} listed twice", x.point(i))));
            }
            rank[i] = pos;
        }
        Ok(VertexOrder { rank })
    }

    pub fn from_points(x: &DigitalImage, seq: &[Point]) -> Result<Self> {
        let idx = seq
            .iter()
            .map(|p| x.require_index(p))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(x, &idx)
    }

    pub fn from_labels(x: &DigitalImage, seq: &[&str]) -> Result<Self> {
        let idx = seq
            .iter()
            .map(|l| {
                x.find_label(l)
                    .ok_or_else(|| Error::InvalidOrder(format!("no point labelled {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(x, &idx)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// Point indices from smallest to largest.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (i, &r) in self.rank.iter().enumerate() {
            seq[r] = i;
        }
        seq
    }

    fn sort(&self, v: &mut [usize]) {
        v.sort_by_key(|&i| self.rank[i]);
    }
}

/// Clique complex of an image up to a maximal dimension.
///
/// A `q`-simplex is a set of `q + 1` pairwise adjacent points, stored as
/// point indices in increasing vertex order. Simplices of each dimension
/// are listed in lexicographic order of their vertex ranks.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    points: Vec<Point>,
    order: VertexOrder,
    max_dim: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

/// Builds the clique complex of `x` with simplices of dimension at most
/// `max_dim`.
pub fn build_clique_complex(x: &DigitalImage, max_dim: usize, order: &VertexOrder) -> ChainComplex {
    build_clique_complex_with(x, max_dim, order, Exec::default())
}

pub fn build_clique_complex_with(
    x: &DigitalImage,
    max_dim: usize,
    order: &VertexOrder,
    exec: Exec,
) -> ChainComplex {
    let mut levels: Vec<Vec<Vec<usize>>> =
        vec![order.sequence().into_iter().map(|i| vec![i]).collect()];
    // neighbours of each point that come later in the order, sorted by rank
    let later: Vec<Vec<usize>> = (0..x.len())
        .map(|i| {
            let mut v: Vec<usize> = x
                .neighbors_of(i)
                .iter()
                .copied()
                .filter(|&j| order.rank(j) > order.rank(i))
                .collect();
            order.sort(&mut v);
            v
        })
        .collect();
    while levels.len() <= max_dim {
        let prev = levels.last().unwrap();
        let grown: Vec<Vec<Vec<usize>>> = exec.map(prev.len(), |s| {
            let simplex = &prev[s];
            let last = *simplex.last().unwrap();
            later[last]
                .iter()
                .filter(|&&w| {
                    simplex[..simplex.len() - 1]
                        .iter()
                        .all(|&v| x.is_adjacent(v, w))
                })
                .map(|&w| {
                    let mut t = simplex.clone();
                    t.push(w);
                    t
                })
                .collect()
        });
        let next: Vec<Vec<usize>> = grown.into_iter().flatten().collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let lookup = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    ChainComplex {
        points: x.points().to_vec(),
        order: order.clone(),
        max_dim,
        simplices: levels,
        lookup,
    }
}

/// Clique complex in the lexicographic order, up to the ambient dimension
/// plus one.
pub fn clique_complex(x: &DigitalImage) -> ChainComplex {
    build_clique_complex(x, x.dim() + 1, &VertexOrder::lexicographic(x))
}

impl ChainComplex {
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Highest dimension with at least one simplex.
    pub fn top_dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Number of `q`-simplices (zero above the top dimension).
    pub fn count(&self, q: usize) -> usize {
        self.simplices.get(q).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }

    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.simplices.get(q).map_or(&[], |l| l.as_slice())
    }

    pub fn simplex(&self, q: usize, k: usize) -> &[usize] {
        &self.simplices[q][k]
    }

    /// Index of the simplex with the given vertex set, in any order.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        if vertices.is_empty() {
            return None;
        }
        let mut v = vertices.to_vec();
        self.order.sort(&mut v);
        self.lookup.get(v.len() - 1)?.get(&v).copied()
    }

    /// Index of the simplex listed with vertices already in increasing
    /// vertex order.
    pub fn find_sorted(&self, vertices: &[usize]) -> Option<usize> {
        self.lookup
            .get(vertices.len().checked_sub(1)?)?
            .get(vertices)
            .copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, l)| {
                if q % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Faces of simplex `k` of dimension `q >= 1` with their signs.
    pub fn boundary_terms(&self, q: usize, k: usize) -> Vec<(usize, i64)> {
        let s = &self.simplices[q][k];
        (0..s.len())
            .map(|i| {
                let mut face = s.clone();
                face.remove(i);
                let f = self.lookup[q - 1][&face];
                (f, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// `∂_q : C_q -> C_{q-1}` as a `count(q-1) x count(q)` matrix. `∂_0` is
    /// the zero map to the trivial group; above the top dimension the matrix
    /// has no columns.
    pub fn boundary(&self, q: usize) -> Result<IntMatrix> {
        if q > self.max_dim + 1 {
            return Err(Error::OutOfRange {
                index: q,
                len: self.max_dim + 2,
            });
        }
        if q == 0 {
            return Ok(IntMatrix::zeros(0, self.count(0)));
        }
        let mut m = IntMatrix::zeros(self.count(q - 1), self.count(q));
        for k in 0..self.count(q) {
            for (f, s) in self.boundary_terms(q, k) {
                m.set(f, k, s);
            }
        }
        Ok(m)
    }

    /// `δ^q = ∂_{q+1}^T : C^q -> C^{q+1}`.
    pub fn coboundary(&self, q: usize) -> Result<IntMatrix> {
        Ok(self.boundary(q + 1)?.transpose())
    }

    pub(crate) fn same_points(&self, x: &DigitalImage) -> bool {
        self.points == x.points()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grid::AdjacencyKind;

    #[test]
    fn cube_corners_form_a_graph() {
        let x = fixtures::mss6();
        let k = clique_complex(&x);
        assert_eq!(k.counts(), vec![8, 12]);
        assert_eq!(k.euler_characteristic(), -4);
    }

    #[test]
    fn square_under_8_adjacency_is_a_tetrahedron() {
        let k = clique_complex(&fixtures::msc4(8));
        assert_eq!(k.counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn singleton() {
        let x = DigitalImage::new(AdjacencyKind::new(2, 2).unwrap(), vec![Point::from([3, 3])])
            .unwrap();
        let k = clique_complex(&x);
        assert_eq!(k.counts(), vec![1]);
        assert!(k.boundary(0).unwrap().is_zero());
        assert_eq!(k.boundary(1).unwrap().shape(), (1, 0));
    }

    #[test]
    fn explicit_order_orients_edges() {
        let x = fixtures::mss6();
        let order = VertexOrder::from_labels(&x, &fixtures::MSS6_ORDER).unwrap();
        let k = build_clique_complex(&x, 3, &order);
        let p = |l: &str| x.find_label(l).unwrap();
        // <p6 p1>: p6 precedes p1
        let e = k.find(&[p("p1"), p("p6")]).unwrap();
        assert_eq!(k.simplex(1, e), &[p("p6"), p("p1")]);
        let m = k.boundary(1).unwrap();
        let col = m.column(e);
        assert_eq!(col[k.find(&[p("p1")]).unwrap()], 1);
        assert_eq!(col[k.find(&[p("p6")]).unwrap()], -1);
    }

    #[test]
    fn bad_orders() {
        let x = fixtures::mss6();
        assert!(VertexOrder::from_labels(&x, &["p0"]).is_err());
        assert!(VertexOrder::from_indices(&x, &[0, 0, 1, 2, 3, 4, 5, 6]).is_err());
        assert!(
            VertexOrder::from_labels(&x, &["p0", "p1", "p2", "p3", "p4", "p5", "p6", "zz"])
                .is_err()
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        for x in [
            fixtures::msc4(8),
            fixtures::theta(),
            fixtures::interval_power(1, 2),
        ] {
            let k = clique_complex(&x);
            for q in 1..=k.top_dim() {
                let a = k.boundary(q).unwrap();
                let b = k.boundary(q + 1).unwrap();
                assert!(a.mul(&b).unwrap().is_zero());
            }
        }
    }
}
