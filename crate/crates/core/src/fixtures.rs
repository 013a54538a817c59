//! Built-in images used throughout the tests, the certificates and the CLI.
//!
//! Every fixture is available by name through [`lookup`], which also
//! re-checks the properties each one is meant to have.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::grid::{is_simple_closed_curve, power, wedge, AdjacencyKind, DigitalImage, Point};

fn kind(dim: usize, count: usize) -> AdjacencyKind {
    AdjacencyKind::from_count(dim, count).expect("fixture adjacency")
}

fn labelled(k: AdjacencyKind, entries: &[(&str, &[i64])]) -> DigitalImage {
    let entries = entries
        .iter()
        .map(|(l, c)| (Point::from(*c), Some(l.to_string())))
        .collect();
    DigitalImage::with_labels(k, entries).expect("fixture points")
}

/// The eight corners of the unit cube with 6-adjacency, labelled `p0`..`p7`.
pub fn mss6() -> DigitalImage {
    labelled(
        kind(3, 6),
        &[
            ("p0", &[1, 0, 0]),
            ("p1", &[1, 1, 0]),
            ("p2", &[1, 1, 1]),
            ("p3", &[1, 0, 1]),
            ("p4", &[0, 0, 1]),
            ("p5", &[0, 1, 1]),
            ("p6", &[0, 1, 0]),
            ("p7", &[0, 0, 0]),
        ],
    )
}

/// Vertex order under which the clique complex of [`mss6`] orients its
/// twelve edges as `<p0 p1>, <p0 p3>, <p1 p2>, <p6 p1>, ...`.
pub const MSS6_ORDER: [&str; 8] = ["p7", "p4", "p6", "p5", "p0", "p3", "p1", "p2"];

/// The twelve oriented edges `<a b>` of [`mss6`], with `d<a b> = b - a`.
pub const MSS6_EDGES: [(&str, &str); 12] = [
    ("p0", "p1"),
    ("p0", "p3"),
    ("p1", "p2"),
    ("p6", "p1"),
    ("p5", "p2"),
    ("p3", "p2"),
    ("p4", "p3"),
    ("p7", "p4"),
    ("p4", "p5"),
    ("p6", "p5"),
    ("p7", "p6"),
    ("p7", "p0"),
];

/// The unit square `{(0,0),(1,0),(1,1),(0,1)}` under 4- or 8-adjacency.
pub fn msc4(count: usize) -> DigitalImage {
    let pts = [[0, 0], [1, 0], [1, 1], [0, 1]];
    DigitalImage::new(
        kind(2, count),
        pts.iter().map(|c| Point::from(*c)).collect(),
    )
    .expect("fixture points")
}

/// `[0, n]` with 2-adjacency.
pub fn interval(n: i64) -> DigitalImage {
    DigitalImage::new(kind(1, 2), (0..=n).map(|i| Point::from([i])).collect())
        .expect("fixture points")
}

/// `[0, n]^k` with the product adjacency.
pub fn interval_power(n: i64, k: usize) -> DigitalImage {
    power(&interval(n), k).expect("k >= 1")
}

/// Upper copy of the cube used for the contractible wedge: `[0,1]^3`,
/// 6-adjacency, with `b1`, `b2`, `b3` on the bottom face.
pub fn msc6p_upper() -> DigitalImage {
    cube_copy(1, ["b1", "b2", "b3"])
}

/// Lower copy, `[-1,0]^3`, carrying `b4`, `b5`, `b6`.
pub fn msc6p_lower() -> DigitalImage {
    cube_copy(-1, ["b4", "b5", "b6"])
}

fn cube_copy(s: i64, names: [&str; 3]) -> DigitalImage {
    let mut entries = Vec::new();
    for x in [0, s] {
        for y in [0, s] {
            for z in [0, s] {
                let label = match (x, y, z) {
                    (x, 0, 0) if x == s => Some(names[0]),
                    (x, y, 0) if x == s && y == s => Some(names[1]),
                    (0, y, 0) if y == s => Some(names[2]),
                    _ => None,
                };
                entries.push((Point::from([x, y, z]), label.map(String::from)));
            }
        }
    }
    DigitalImage::with_labels(kind(3, 6), entries).expect("fixture points")
}

/// The two cubes wedged at the origin.
pub fn wedge_msc6p() -> DigitalImage {
    wedge(&msc6p_upper(), &msc6p_lower(), &Point::from([0, 0, 0])).expect("valid wedge")
}

/// Figure-eight of two 8-point 4-curves, the boundaries of `[0,2]^2` and
/// `[2,4]^2`, meeting at `a5 = (2,2)`.
pub fn theta() -> DigitalImage {
    labelled(
        kind(2, 4),
        &[
            ("a1", &[0, 0]),
            ("a2", &[0, 1]),
            ("a3", &[0, 2]),
            ("a4", &[1, 2]),
            ("a5", &[2, 2]),
            ("a6", &[2, 3]),
            ("a7", &[2, 4]),
            ("a8", &[3, 4]),
            ("a9", &[4, 4]),
            ("a10", &[4, 3]),
            ("a11", &[4, 2]),
            ("a12", &[3, 2]),
            ("a13", &[2, 1]),
            ("a14", &[2, 0]),
            ("a15", &[1, 0]),
        ],
    )
}

/// Labels of the two arcs of [`theta`] from `a1` to `a9`.
pub const THETA_ALPHA: [&str; 9] = ["a1", "a15", "a14", "a13", "a5", "a6", "a7", "a8", "a9"];
pub const THETA_BETA: [&str; 9] = ["a1", "a2", "a3", "a4", "a5", "a12", "a11", "a10", "a9"];

/// Point indices of a labelled arc of `x`.
pub fn arc(x: &DigitalImage, labels: &[&str]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| x.find_label(l).expect("fixture label"))
        .collect()
}

/// Boundary of `[0,2]^2`, a simple closed 4-curve of eight points.
pub fn ring8() -> DigitalImage {
    let pts: Vec<Point> = (0..=2)
        .flat_map(|x| (0..=2).map(move |y| Point::from([x, y])))
        .filter(|p| p.coords() != [1, 1])
        .collect();
    DigitalImage::new(kind(2, 4), pts).expect("fixture points")
}

/// The unit cube with two antipodal corners removed: a simple closed
/// 6-curve of six points.
pub fn hex_curve6() -> DigitalImage {
    let pts = [
        [0, 0, 0],
        [1, 0, 0],
        [1, 1, 0],
        [1, 1, 1],
        [0, 1, 1],
        [0, 0, 1],
    ];
    DigitalImage::new(kind(3, 6), pts.iter().map(|c| Point::from(*c)).collect())
        .expect("fixture points")
}

/// Lattice points of the box `[0,nx] x [0,ny] x [0,nz]` minus the given
/// vertical columns, keeping only points 26-adjacent to the complement.
pub fn thick_boundary(nx: i64, ny: i64, nz: i64, holes: &[(i64, i64)]) -> DigitalImage {
    let holes: HashSet<(i64, i64)> = holes.iter().copied().collect();
    let solid = |x: i64, y: i64, z: i64| {
        (0..=nx).contains(&x)
            && (0..=ny).contains(&y)
            && (0..=nz).contains(&z)
            && !holes.contains(&(x, y))
    };
    let k26 = kind(3, 26);
    let offsets = k26.offsets();
    let mut pts = Vec::new();
    for x in 0..=nx {
        for y in 0..=ny {
            for z in 0..=nz {
                if solid(x, y, z) && offsets.iter().any(|d| !solid(x + d[0], y + d[1], z + d[2])) {
                    pts.push(Point::from([x, y, z]));
                }
            }
        }
    }
    DigitalImage::new(kind(3, 6), pts).expect("fixture points")
}

/// Closed 6-surface of genus one: the boundary of a slab with one tunnel.
pub fn genus1() -> DigitalImage {
    thick_boundary(6, 6, 2, &[(3, 3)])
}

/// Closed 6-surface of genus two: the boundary of a slab with two tunnels.
pub fn genus2() -> DigitalImage {
    thick_boundary(10, 6, 2, &[(3, 3), (7, 3)])
}

/// Names accepted by [`lookup`], besides `interval<n>` and `interval<n>^<k>`.
pub const NAMES: [&str; 12] = [
    "mss6",
    "genus0",
    "msc4",
    "msc4_8",
    "msc6p",
    "wedge_msc6p",
    "theta",
    "genus1",
    "genus2",
    "ring8",
    "hexcurve6",
    "interval1",
];

/// Fixture by name, validated.
pub fn lookup(name: &str) -> Result<DigitalImage> {
    let name = name.strip_prefix('@').unwrap_or(name);
    let img = match name {
        "mss6" | "genus0" => mss6(),
        "msc4" => msc4(4),
        "msc4_8" => msc4(8),
        "msc6p" => msc6p_upper(),
        "wedge_msc6p" => wedge_msc6p(),
        "theta" => theta(),
        "genus1" => genus1(),
        "genus2" => genus2(),
        "ring8" => ring8(),
        "hexcurve6" => hex_curve6(),
        _ => parse_interval(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?,
    };
    validate(name, &img)?;
    Ok(img)
}

fn parse_interval(name: &str) -> Option<DigitalImage> {
    let rest = name.strip_prefix("interval")?;
    let (n, k) = match rest.split_once('^') {
        Some((n, k)) => (n.parse::<i64>().ok()?, k.parse::<usize>().ok()?),
        None => (rest.parse::<i64>().ok()?, 1),
    };
    if n < 0 || k == 0 || k > 4 {
        return None;
    }
    Some(interval_power(n, k))
}

fn validate(name: &str, img: &DigitalImage) -> Result<()> {
    let fail = |what: &str| Err(Error::UnknownFixture(format!("{name}: {what}")));
    if !img.is_connected() {
        return fail("not connected");
    }
    match name {
        "msc4" | "ring8" | "hexcurve6" if !is_simple_closed_curve(img) => {
            fail("not a simple closed curve")
        }
        "mss6" | "genus0" | "genus1" | "genus2" if !crate::surface::is_closed_surface(img)? => {
            fail("not a closed surface")
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_loads_everything() {
        for n in NAMES {
            assert!(lookup(n).is_ok(), "{n}");
        }
        assert_eq!(lookup("@interval3^2").unwrap().len(), 16);
        assert!(matches!(lookup("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn theta_shape() {
        let t = theta();
        assert_eq!(t.len(), 15);
        assert_eq!(t.edge_count(), 16);
        let a13 = t.index_of(&Point::from([2, 1])).unwrap();
        assert_eq!(
            t.neighbors(t.point(a13)).unwrap(),
            vec![Point::from([2, 0]), Point::from([2, 2])]
        );
        let alpha = arc(&t, &THETA_ALPHA);
        let beta = arc(&t, &THETA_BETA);
        for w in alpha.windows(2).chain(beta.windows(2)) {
            assert!(t.is_adjacent(w[0], w[1]));
        }
        let all: HashSet<usize> = alpha.iter().chain(&beta).copied().collect();
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn genus_fixture_sizes() {
        assert_eq!(genus1().len(), 128);
        assert_eq!(genus2().len(), 198);
        assert_eq!(wedge_msc6p().len(), 15);
        assert_eq!(
            wedge_msc6p().find_label("b5"),
            wedge_msc6p().index_of(&Point::from([-1, -1, 0]))
        );
    }
}
