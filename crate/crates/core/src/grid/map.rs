use super::image::DigitalImage;
use super::point::Point;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// A total map between the point sets of two images, stored as a table of
/// codomain indices.
#[derive(Clone, Debug)]
pub struct DigitalMap<'a> {
    domain: &'a DigitalImage,
    codomain: &'a DigitalImage,
    table: Vec<usize>,
}

impl<'a> DigitalMap<'a> {
    pub fn new(
        domain: &'a DigitalImage,
        codomain: &'a DigitalImage,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::MalformedMap(format!(
                "table has {} entries for a domain of {} points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::OutOfRange {
                index: bad,
                len: codomain.len(),
            });
        }
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    /// Build from a function on points; every value must lie in the codomain.
    pub fn from_fn<F: Fn(&Point) -> Point>(
        domain: &'a DigitalImage,
        codomain: &'a DigitalImage,
        f: F,
    ) -> Result<Self> {
        let table = domain
            .points()
            .iter()
            .map(|p| codomain.require_index(&f(p)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, table)
    }

    /// Build from `(source, target)` point pairs covering the whole domain.
    pub fn from_pairs(
        domain: &'a DigitalImage,
        codomain: &'a DigitalImage,
        pairs: &[(Point, Point)],
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (p, q) in pairs {
            let i = domain.require_index(p)?;
            let j = codomain.require_index(q)?;
            if table[i] != usize::MAX && table[i] != j {
                return Err(Error::MalformedMap(format!("{p} mapped twice")));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&j| j == usize::MAX) {
            return Err(Error::MalformedMap(format!(
                "no value for {}",
                domain.point(i)
            )));
        }
        Self::new(domain, codomain, table)
    }

    pub fn identity(x: &'a DigitalImage) -> Self {
        DigitalMap {
            domain: x,
            codomain: x,
            table: (0..x.len()).collect(),
        }
    }

    pub fn constant(
        domain: &'a DigitalImage,
        codomain: &'a DigitalImage,
        value: usize,
    ) -> Result<Self> {
        Self::new(domain, codomain, vec![value; domain.len()])
    }

    pub fn domain(&self) -> &'a DigitalImage {
        self.domain
    }

    pub fn codomain(&self) -> &'a DigitalImage {
        self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_point(&self, p: &Point) -> Option<&'a Point> {
        let i = self.domain.index_of(p)?;
        Some(self.codomain.point(self.table[i]))
    }

    /// First adjacent pair `(i, j)` of the domain whose images are neither
    /// equal nor adjacent.
    pub fn continuity_violation(&self) -> Option<(usize, usize)> {
        self.continuity_violation_with(Exec::default())
    }

    pub fn continuity_violation_with(&self, exec: Exec) -> Option<(usize, usize)> {
        exec.find_map_first(self.domain.len(), |i| {
            self.domain
                .neighbors_of(i)
                .iter()
                .find(|&&j| j > i && !self.codomain.adj_or_eq(self.table[i], self.table[j]))
                .map(|&j| (i, j))
        })
    }

    /// Pointwise continuity: adjacent points go to equal or adjacent points.
    pub fn is_continuous(&self) -> bool {
        self.continuity_violation().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.len() != self.codomain.len() {
            return false;
        }
        let mut seen = vec![false; self.codomain.len()];
        for &j in &self.table {
            if std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Option<DigitalMap<'a>> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (i, &j) in self.table.iter().enumerate() {
            inv[j] = i;
        }
        Some(DigitalMap {
            domain: self.codomain,
            codomain: self.domain,
            table: inv,
        })
    }

    /// Bijective, continuous, with continuous inverse.
    pub fn is_isomorphism(&self) -> bool {
        match self.inverse() {
            Some(inv) => self.is_continuous() && inv.is_continuous(),
            None => false,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DigitalMap<'a>) -> Result<DigitalMap<'a>> {
        if !std::ptr::eq(self.codomain, other.domain) && self.codomain != other.domain {
            return Err(Error::MalformedMap(
                "codomain of the first map is not the domain of the second".into(),
            ));
        }
        Ok(DigitalMap {
            domain: self.domain,
            codomain: other.codomain,
            table: self.table.iter().map(|&j| other.table[j]).collect(),
        })
    }

    pub fn into_table(self) -> Vec<usize> {
        self.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grid::{product, AdjacencyKind};

    #[test]
    fn identity_and_constant_are_continuous() {
        for x in [fixtures::mss6(), fixtures::theta(), fixtures::msc4(4)] {
            assert!(DigitalMap::identity(&x).is_continuous());
            assert!(DigitalMap::constant(&x, &x, 0).unwrap().is_continuous());
        }
    }

    #[test]
    fn xor_multiplication_is_continuous() {
        let x = fixtures::interval(1);
        let xx = product(&x, &x);
        let f = DigitalMap::from_fn(&xx, &x, |p| {
            Point::from([(p.coords()[0] != p.coords()[1]) as i64])
        })
        .unwrap();
        assert!(f.is_continuous());
    }

    #[test]
    fn isomorphisms() {
        let mss = fixtures::mss6();
        let perm = DigitalMap::from_fn(&mss, &mss, |p| {
            let c = p.coords();
            Point::from([c[2], c[0], c[1]])
        })
        .unwrap();
        assert!(perm.is_isomorphism());

        let two = fixtures::interval(1);
        assert!(!DigitalMap::constant(&two, &two, 0)
            .unwrap()
            .is_isomorphism());

        // 4-cycle onto the same points with 8-adjacency: continuous one way,
        // the inverse breaks at the diagonals
        let c4 = fixtures::msc4(4);
        let k4 = fixtures::msc4(8);
        let f = DigitalMap::from_fn(&c4, &k4, |p| p.clone()).unwrap();
        assert!(f.is_continuous());
        assert!(!f.inverse().unwrap().is_continuous());
        assert!(!f.is_isomorphism());
    }

    #[test]
    fn malformed_maps() {
        let x = fixtures::interval(2);
        assert!(DigitalMap::new(&x, &x, vec![0, 1]).is_err());
        assert!(DigitalMap::new(&x, &x, vec![0, 1, 7]).is_err());
        let y =
            DigitalImage::new(AdjacencyKind::new(1, 1).unwrap(), vec![Point::from([0])]).unwrap();
        assert!(DigitalMap::from_fn(&x, &y, |p| p.clone()).is_err());
    }
}
