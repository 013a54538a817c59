use std::fmt;

use crate::error::{Error, Result};

/// A lattice point of `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Point(coords.into())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinates of `self` followed by those of `other`.
    pub fn concat(&self, other: &Point) -> Point {
        let mut c = self.0.clone();
        c.extend_from_slice(&other.0);
        Point(c)
    }

    pub fn offset(&self, delta: &[i64]) -> Point {
        Point(self.0.iter().zip(delta).map(|(a, b)| a + b).collect())
    }

    /// Coordinates joined by `sep`, e.g. `1 0 0` or `1,0,0`.
    pub fn join(&self, sep: &str) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        parts.join(sep)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.join(","))
    }
}

impl From<&[i64]> for Point {
    fn from(c: &[i64]) -> Self {
        Point(c.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(c: [i64; N]) -> Self {
        Point(c.to_vec())
    }
}

/// The `c_k` adjacency on `Z^m`: two distinct points are adjacent when at
/// most `k` coordinates differ, each by exactly one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdjacencyKind {
    dim: usize,
    k: usize,
}

pub(crate) const MAX_GRID_DIM: usize = 4;

impl AdjacencyKind {
    pub fn new(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_GRID_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if k == 0 || k > dim {
            return Err(Error::InvalidAdjacency(format!(
                "c_{k} requires 1 <= k <= {dim}"
            )));
        }
        Ok(AdjacencyKind { dim, k })
    }

    /// Resolve a neighbourhood size such as 4, 8, 6, 18 or 26 in dimension
    /// `dim` to its `c_k`.
    pub fn from_count(dim: usize, count: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_GRID_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        (1..=dim)
            .map(|k| AdjacencyKind { dim, k })
            .find(|a| a.count() == count)
            .ok_or_else(|| {
                Error::InvalidAdjacency(format!("no c_k on Z^{dim} has {count} neighbours"))
            })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of lattice neighbours of a point of `Z^m`, i.e. the usual
    /// name of the adjacency (2, 4, 8, 6, 18, 26, ...).
    pub fn count(&self) -> usize {
        (1..=self.k)
            .map(|j| binomial(self.dim, j) * (1usize << j))
            .sum()
    }

    /// All offset vectors to neighbours of the origin, in lexicographic order.
    pub fn offsets(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![-1i64; self.dim];
        loop {
            let nonzero = cur.iter().filter(|&&c| c != 0).count();
            if nonzero >= 1 && nonzero <= self.k {
                out.push(cur.clone());
            }
            // odometer over {-1,0,1}^m
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < 1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -1;
            }
        }
    }

    pub(crate) fn test(&self, p: &[i64], q: &[i64]) -> bool {
        let mut differing = 0;
        for (a, b) in p.iter().zip(q) {
            match (a - b).abs() {
                0 => {}
                1 => differing += 1,
                _ => return false,
            }
        }
        differing >= 1 && differing <= self.k
    }
}

impl fmt::Display for AdjacencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `c_k` adjacency test for two lattice points.
pub fn adjacent(p: &Point, q: &Point, kind: AdjacencyKind) -> Result<bool> {
    if p.dim() != kind.dim() {
        return Err(Error::DimensionMismatch {
            expected: kind.dim(),
            found: p.dim(),
        });
    }
    if q.dim() != kind.dim() {
        return Err(Error::DimensionMismatch {
            expected: kind.dim(),
            found: q.dim(),
        });
    }
    if p == q {
        return Err(Error::SamePoint);
    }
    Ok(kind.test(p.coords(), q.coords()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alias_counts() {
        let names: Vec<(usize, usize, usize)> = (1..=3)
            .flat_map(|m| (1..=m).map(move |k| (m, k, AdjacencyKind::new(m, k).unwrap().count())))
            .collect();
        assert_eq!(
            names,
            vec![
                (1, 1, 2),
                (2, 1, 4),
                (2, 2, 8),
                (3, 1, 6),
                (3, 2, 18),
                (3, 3, 26)
            ]
        );
        assert_eq!(AdjacencyKind::from_count(3, 18).unwrap().k(), 2);
        assert!(AdjacencyKind::from_count(2, 6).is_err());
        for m in 1..=4 {
            for k in 1..=m {
                let a = AdjacencyKind::new(m, k).unwrap();
                assert_eq!(a.offsets().len(), a.count());
            }
        }
    }

    #[test]
    fn examples() {
        let c1 = AdjacencyKind::new(3, 1).unwrap();
        assert!(adjacent(&Point::from([0, 0, 0]), &Point::from([1, 0, 0]), c1).unwrap());
        assert!(adjacent(&Point::from([1, 1, 0]), &Point::from([1, 1, 1]), c1).unwrap());
        let four = AdjacencyKind::from_count(2, 4).unwrap();
        let eight = AdjacencyKind::from_count(2, 8).unwrap();
        let (a, b) = (Point::from([0, 0]), Point::from([1, 1]));
        assert!(!adjacent(&a, &b, four).unwrap());
        assert!(adjacent(&a, &b, eight).unwrap());
    }

    #[test]
    fn errors() {
        let four = AdjacencyKind::from_count(2, 4).unwrap();
        assert_eq!(
            adjacent(&Point::from([0, 0]), &Point::from([0, 0]), four),
            Err(Error::SamePoint)
        );
        assert!(matches!(
            adjacent(&Point::from([0, 0]), &Point::from([0, 0, 1]), four),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(AdjacencyKind::new(2, 3).is_err());
        assert!(AdjacencyKind::new(5, 1).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_and_irreflexive(
            m in 1usize..=4,
            k_seed in 0usize..4,
            p in proptest::collection::vec(-2i64..=2, 4),
            q in proptest::collection::vec(-2i64..=2, 4),
        ) {
            let kind = AdjacencyKind::new(m, 1 + k_seed % m).unwrap();
            let p = Point::new(p[..m].to_vec());
            let q = Point::new(q[..m].to_vec());
            if p == q {
                prop_assert_eq!(adjacent(&p, &q, kind), Err(Error::SamePoint));
            } else {
                prop_assert_eq!(adjacent(&p, &q, kind).unwrap(), adjacent(&q, &p, kind).unwrap());
            }
        }
    }
}
