use std::collections::HashSet;

use super::image::{Adjacency, DigitalImage};
use super::point::Point;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Cartesian product with the product adjacency: `(x, y)` and `(x', y')`
/// are adjacent when each coordinate pair is equal or adjacent and the two
/// pairs are not identical.
///
/// The point of index `i * |Y| + j` is `x_i` followed by `y_j`.
pub fn product(x: &DigitalImage, y: &DigitalImage) -> DigitalImage {
    let ny = y.len();
    let mut points = Vec::with_capacity(x.len() * ny);
    let mut labels = Vec::with_capacity(x.len() * ny);
    for (i, p) in x.points().iter().enumerate() {
        for (j, q) in y.points().iter().enumerate() {
            points.push(p.concat(q));
            labels.push(match (x.label(i), y.label(j)) {
                (Some(a), Some(b)) => Some(format!("{a}*{b}")),
                _ => None,
            });
        }
    }
    let graph = Exec::default().map(x.len() * ny, |idx| {
        let (i, j) = (idx / ny, idx % ny);
        let mut nb = Vec::new();
        for a in x.closed_neighborhood(i) {
            for b in y.closed_neighborhood(j) {
                if a != i || b != j {
                    nb.push(a * ny + b);
                }
            }
        }
        nb.sort_unstable();
        nb
    });
    DigitalImage::from_sorted_graph(x.dim() + y.dim(), points, labels, graph)
}

/// `X^n` with the product adjacency; `X^1` is `X` itself.
pub fn power(x: &DigitalImage, n: usize) -> Result<DigitalImage> {
    if n == 0 {
        return Err(Error::InvalidAdjacency(
            "X^0 is not a digital image here".into(),
        ));
    }
    let mut acc = x.clone();
    for _ in 1..n {
        acc = product(&acc, x);
    }
    Ok(acc)
}

/// Digital wedge `X ∨ Y` at `x0`: the images share exactly `x0`, and no
/// point of `X \ {x0}` is adjacent to a point of `Y \ {x0}`.
pub fn wedge(x: &DigitalImage, y: &DigitalImage, x0: &Point) -> Result<DigitalImage> {
    let kind = match (x.adjacency(), y.adjacency()) {
        (Adjacency::Grid(a), Adjacency::Grid(b)) if a == b => a,
        _ => {
            return Err(Error::InvalidWedge(
                "both images must carry the same c_k adjacency".into(),
            ))
        }
    };
    if !x.contains(x0) || !y.contains(x0) {
        return Err(Error::InvalidWedge(format!("{x0} is not in both images")));
    }
    let shared: Vec<&Point> = x.points().iter().filter(|p| y.contains(p)).collect();
    if shared.len() != 1 {
        return Err(Error::InvalidWedge(format!(
            "images share {} points, expected only {x0}",
            shared.len()
        )));
    }
    let offsets = kind.offsets();
    for p in x.points().iter().filter(|p| *p != x0) {
        for d in &offsets {
            let q = p.offset(d);
            if &q != x0 && y.contains(&q) {
                return Err(Error::InvalidWedge(format!("{p} is adjacent to {q}")));
            }
        }
    }
    let mut entries: Vec<(Point, Option<String>)> = x
        .points()
        .iter()
        .cloned()
        .zip(x.labels().iter().cloned())
        .collect();
    let seen: HashSet<Point> = x.points().iter().cloned().collect();
    for (p, l) in y.points().iter().zip(y.labels()) {
        if !seen.contains(p) {
            entries.push((p.clone(), l.clone()));
        }
    }
    DigitalImage::with_labels(kind, entries)
}

/// Connected, at least four points, every point with exactly two neighbours.
pub fn is_simple_closed_curve(x: &DigitalImage) -> bool {
    x.len() >= 4 && x.is_connected() && (0..x.len()).all(|i| x.degree(i) == 2)
}
