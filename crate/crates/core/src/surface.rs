//! Neighbour-count classification and genus of closed 6-surfaces.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grid::{AdjacencyKind, DigitalImage, Point};

/// Number of points with each in-image neighbour count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceClassification {
    /// `counts[i - 3]` is `|M_i|` for `i` in `3..=6`.
    pub counts: [usize; 4],
    /// Points whose neighbour count lies outside `3..=6`.
    pub leftover: Vec<usize>,
}

impl SurfaceClassification {
    pub fn m(&self, i: usize) -> usize {
        match i {
            3..=6 => self.counts[i - 3],
            _ => 0,
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.leftover.len()
    }

    /// `|M_5| + 2|M_6| - |M_3|`, which equals `8 (g - 1)` on a closed surface.
    pub fn numerator(&self) -> i64 {
        self.m(5) as i64 + 2 * self.m(6) as i64 - self.m(3) as i64
    }
}

pub fn classify_neighbors(x: &DigitalImage) -> SurfaceClassification {
    let mut counts = [0; 4];
    let mut leftover = Vec::new();
    for i in 0..x.len() {
        match x.degree(i) {
            d @ 3..=6 => counts[d - 3] += 1,
            _ => leftover.push(i),
        }
    }
    SurfaceClassification { counts, leftover }
}

/// `g = 1 + (|M_5| + 2|M_6| - |M_3|) / 8`.
pub fn genus(x: &DigitalImage) -> Result<i64> {
    if !is_closed_surface(x)? {
        return Err(Error::NotClosedSurface(
            "every edge must bound exactly two squares and every vertex link must be a cycle"
                .into(),
        ));
    }
    genus_from_counts(&classify_neighbors(x))
}

/// The genus formula on its own, without the surface check.
pub fn genus_from_counts(c: &SurfaceClassification) -> Result<i64> {
    if let Some(&i) = c.leftover.first() {
        return Err(Error::NotClosedSurface(format!(
            "{} points have a neighbour count outside 3..=6 (first: index {i})",
            c.leftover.len()
        )));
    }
    let n = c.numerator();
    if n % 8 != 0 {
        return Err(Error::NonIntegralGenus(n));
    }
    Ok(1 + n / 8)
}

fn require_6_surface_kind(x: &DigitalImage) -> Result<()> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    match x.grid_kind() {
        Some(k) if k.k() == 1 => Ok(()),
        _ => Err(Error::InvalidAdjacency(
            "surface checks need 6-adjacency".into(),
        )),
    }
}

/// Closed-surface test on the unit-square cell structure of `X`.
///
/// A face is a unit lattice square whose four corners lie in `X`. `X` is
/// accepted when it is connected, every 6-edge lies on exactly two faces
/// and the faces around every point close up into a single cycle through
/// all of its neighbours. This is the condition under which the formula
/// `1 + (|M_5| + 2|M_6| - |M_3|) / 8` equals the genus of the quad surface.
pub fn is_closed_surface(x: &DigitalImage) -> Result<bool> {
    require_6_surface_kind(x)?;
    if !x.is_connected() {
        return Ok(false);
    }
    let has = |p: &Point| x.contains(p);
    for (i, p) in x.points().iter().enumerate() {
        let nbrs = x.neighbors_of(i);
        if nbrs.len() < 3 {
            return Ok(false);
        }
        // link graph on the neighbours of p: two neighbours are joined when
        // they span a face with p
        let mut link: HashMap<usize, Vec<usize>> = HashMap::new();
        for (a, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[a + 1..] {
                let du: Vec<i64> = diff(x.point(u), p);
                let dv: Vec<i64> = diff(x.point(v), p);
                if du.iter().zip(&dv).any(|(s, t)| s * t != 0) {
                    continue; // collinear
                }
                let corner = p.offset(&du).offset(&dv);
                if has(&corner) {
                    link.entry(u).or_default().push(v);
                    link.entry(v).or_default().push(u);
                }
            }
        }
        if nbrs.iter().any(|u| link.get(u).map_or(0, |l| l.len()) != 2) {
            return Ok(false);
        }
        let mut seen = HashSet::from([nbrs[0]]);
        let mut queue = VecDeque::from([nbrs[0]]);
        while let Some(u) = queue.pop_front() {
            for &v in &link[&u] {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        if seen.len() != nbrs.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn diff(a: &Point, b: &Point) -> Vec<i64> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(s, t)| s - t)
        .collect()
}

/// Local separation test: for every point `p`, the lattice points of the
/// 3x3x3 block around `p` that are not in `X` form exactly two
/// 26-components. Every point of the block is 26-adjacent to `p`, so both
/// components touch it.
///
/// Thick surfaces such as the boundary of a solid pass; the unit cube
/// corner set does not, having no lattice points inside it.
pub fn is_separating_surface(x: &DigitalImage) -> Result<bool> {
    require_6_surface_kind(x)?;
    if !x.is_connected() {
        return Ok(false);
    }
    let k26 = AdjacencyKind::new(3, 3)?;
    let block = k26.offsets();
    for p in x.points() {
        let outside: Vec<Point> = block
            .iter()
            .map(|d| p.offset(d))
            .filter(|q| !x.contains(q))
            .collect();
        let local: HashSet<&Point> = outside.iter().collect();
        let mut comp: HashMap<&Point, usize> = HashMap::new();
        let mut ncomp = 0;
        for q in &outside {
            if comp.contains_key(q) {
                continue;
            }
            comp.insert(q, ncomp);
            let mut queue = VecDeque::from([q.clone()]);
            while let Some(r) = queue.pop_front() {
                for d in &block {
                    let s = r.offset(d);
                    if let Some(s) = local.get(&s) {
                        if !comp.contains_key(*s) {
                            comp.insert(s, ncomp);
                            queue.push_back((*s).clone());
                        }
                    }
                }
            }
            ncomp += 1;
        }
        if ncomp != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// ASCII OBJ with one axis-aligned unit cube centred on every point.
/// Vertices are shared between cubes.
pub fn export_obj(x: &DigitalImage) -> Result<String> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    // corners in doubled coordinates, so that centre +- 1/2 stays integral
    let mut vindex: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    let mut order: Vec<[i64; 3]> = Vec::new();
    let mut faces: Vec<[usize; 4]> = Vec::new();
    const QUADS: [[usize; 4]; 6] = [
        [0, 2, 3, 1],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 4, 6, 2],
        [1, 3, 7, 5],
    ];
    for p in x.points() {
        let c = p.coords();
        let mut ids = [0usize; 8];
        for (corner, id) in ids.iter_mut().enumerate() {
            let v = [
                2 * c[0] + if corner & 4 != 0 { 1 } else { -1 },
                2 * c[1] + if corner & 2 != 0 { 1 } else { -1 },
                2 * c[2] + if corner & 1 != 0 { 1 } else { -1 },
            ];
            *id = *vindex.entry(v).or_insert_with(|| {
                order.push(v);
                order.len()
            });
        }
        for q in QUADS {
            faces.push(q.map(|k| ids[k]));
        }
    }
    let mut out = String::new();
    writeln!(out, "# {} voxels", x.len()).unwrap();
    for v in &order {
        writeln!(out, "v {} {} {}", half(v[0]), half(v[1]), half(v[2])).unwrap();
    }
    for f in &faces {
        writeln!(out, "f {} {} {} {}", f[0], f[1], f[2], f[3]).unwrap();
    }
    Ok(out)
}

fn half(v: i64) -> String {
    format!("{:.1}", v as f64 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn box_boundary(n: i64) -> DigitalImage {
        fixtures::thick_boundary(n, n, n, &[])
    }

    #[test]
    fn cube_corners() {
        let x = fixtures::mss6();
        let c = classify_neighbors(&x);
        assert_eq!(c.counts, [8, 0, 0, 0]);
        assert!(is_closed_surface(&x).unwrap());
        assert!(!is_separating_surface(&x).unwrap());
        assert_eq!(genus(&x).unwrap(), 0);
    }

    #[test]
    fn interval_has_leftovers() {
        let c = classify_neighbors(&fixtures::interval(2));
        assert_eq!(c.leftover.len(), 3);
        assert_eq!(c.total(), 3);
    }

    #[test]
    fn solid_block_is_not_a_surface() {
        let pts = (0..27)
            .map(|i| Point::from([i / 9, (i / 3) % 3, i % 3]))
            .collect();
        let solid = DigitalImage::new(AdjacencyKind::new(3, 1).unwrap(), pts).unwrap();
        assert!(!is_closed_surface(&solid).unwrap());
        assert!(!is_separating_surface(&solid).unwrap());
        assert!(matches!(genus(&solid), Err(Error::NotClosedSurface(_))));
    }

    #[test]
    fn box_boundary_is_a_sphere() {
        let b = box_boundary(2);
        assert_eq!(b.len(), 26);
        assert!(is_closed_surface(&b).unwrap());
        assert!(is_separating_surface(&b).unwrap());
        assert_eq!(genus(&b).unwrap(), 0);
    }

    #[test]
    fn fixtures_genus() {
        let g1 = fixtures::genus1();
        let c = classify_neighbors(&g1);
        assert_eq!((c.m(3), c.m(4), c.m(5), c.m(6)), (8, 112, 8, 0));
        assert!(is_separating_surface(&g1).unwrap());
        assert_eq!(genus(&g1).unwrap(), 1);

        let g2 = fixtures::genus2();
        let c = classify_neighbors(&g2);
        assert_eq!((c.m(3), c.m(4), c.m(5), c.m(6)), (8, 174, 16, 0));
        assert!(is_separating_surface(&g2).unwrap());
        assert_eq!(genus(&g2).unwrap(), 2);
    }

    #[test]
    fn wrong_inputs() {
        assert!(matches!(
            is_closed_surface(&fixtures::theta()),
            Err(Error::DimensionMismatch { .. })
        ));
        let x = fixtures::mss6();
        let x26 =
            DigitalImage::new(AdjacencyKind::new(3, 3).unwrap(), x.points().to_vec()).unwrap();
        assert!(matches!(
            is_closed_surface(&x26),
            Err(Error::InvalidAdjacency(_))
        ));
        let c = SurfaceClassification {
            counts: [1, 0, 0, 0],
            leftover: vec![],
        };
        assert_eq!(genus_from_counts(&c), Err(Error::NonIntegralGenus(-1)));
    }

    #[test]
    fn obj_shares_vertices() {
        let obj = export_obj(
            &fixtures::interval_power(1, 1)
                .map_points(|p| Point::from([p.coords()[0], 0, 0]))
                .unwrap(),
        )
        .unwrap();
        let v = obj.lines().filter(|l| l.starts_with("v ")).count();
        let f = obj.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!((v, f), (12, 12));
        assert!(obj.contains("v -0.5 -0.5 -0.5"));
    }
}
