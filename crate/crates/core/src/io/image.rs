use std::fmt::Write;

use crate::error::{parse_err, Result};
use crate::grid::{Adjacency, AdjacencyKind, DigitalImage, Point};

/// Reads `dim <m> adjacency <name>` followed by one point per line, with an
/// optional `# label`. For `adjacency product` the relation is given by
/// `edge <p> <q>` lines.
pub fn read_image(text: &str) -> Result<DigitalImage> {
    let mut header: Option<(usize, usize, Option<usize>)> = None;
    let mut entries: Vec<(Point, Option<String>)> = Vec::new();
    let mut edge_lines: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c.trim())),
            None => (raw.trim(), None),
        };
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        if header.is_none() {
            match words.as_slice() {
                ["dim", m, "adjacency", name] => {
                    let m: usize = m
                        .parse()
                        .map_err(|_| parse_err(line, format!("bad dimension `{m}`")))?;
                    let count = if *name == "product" {
                        None
                    } else {
                        Some(
                            name.parse()
                                .map_err(|_| parse_err(line, format!("bad adjacency `{name}`")))?,
                        )
                    };
                    header = Some((line, m, count));
                    continue;
                }
                _ => return Err(parse_err(line, "expected `dim <m> adjacency <name>`")),
            }
        }
        if words[0] == "edge" {
            if words.len() != 3 {
                return Err(parse_err(line, "expected `edge <p> <q>`"));
            }
            edge_lines.push((line, words[1].to_string(), words[2].to_string()));
            continue;
        }
        let coords: std::result::Result<Vec<i64>, _> =
            words.iter().map(|w| w.parse::<i64>()).collect();
        let coords = coords.map_err(|_| parse_err(line, format!("bad point `{body}`")))?;
        let m = header.unwrap().1;
        if coords.len() != m {
            return Err(parse_err(
                line,
                format!("expected {m} coordinates, found {}", coords.len()),
            ));
        }
        let label = comment.filter(|c| !c.is_empty()).map(str::to_string);
        entries.push((Point::new(coords), label));
    }
    let (hline, m, count) = header.ok_or_else(|| parse_err(1, "missing header"))?;
    if entries.is_empty() {
        return Err(parse_err(hline, "image has no points"));
    }
    {
        let mut seen = std::collections::HashSet::new();
        for (k, (p, _)) in entries.iter().enumerate() {
            if !seen.insert(p) {
                let line = point_line(text, k);
                return Err(parse_err(line, format!("duplicate point {p}")));
            }
        }
    }
    match count {
        Some(c) => {
            if let Some((line, _, _)) = edge_lines.first() {
                return Err(parse_err(*line, "edge lines need `adjacency product`"));
            }
            let kind =
                AdjacencyKind::from_count(m, c).map_err(|e| parse_err(hline, e.to_string()))?;
            DigitalImage::with_labels(kind, entries).map_err(|e| parse_err(hline, e.to_string()))
        }
        None => {
            let probe = DigitalImage::from_edges(m, entries.clone(), &[])
                .map_err(|e| parse_err(hline, e.to_string()))?;
            let mut edges = Vec::with_capacity(edge_lines.len());
            for (line, a, b) in &edge_lines {
                let i = super::point_token(&probe, a, *line)?;
                let j = super::point_token(&probe, b, *line)?;
                if i == j {
                    return Err(parse_err(*line, "a point is not adjacent to itself"));
                }
                edges.push((probe.point(i).clone(), probe.point(j).clone()));
            }
            DigitalImage::from_edges(m, entries, &edges)
                .map_err(|e| parse_err(hline, e.to_string()))
        }
    }
}

fn point_line(text: &str, k: usize) -> usize {
    let mut seen = 0;
    let mut header = false;
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        if !header {
            header = true;
            continue;
        }
        if body.starts_with("edge") {
            continue;
        }
        if seen == k {
            return i + 1;
        }
        seen += 1;
    }
    0
}

pub fn write_image(x: &DigitalImage) -> String {
    let mut out = String::new();
    writeln!(out, "dim {} adjacency {}", x.dim(), x.adjacency()).unwrap();
    for i in 0..x.len() {
        out.push_str(&x.point(i).join(" "));
        if let Some(l) = x.label(i) {
            write!(out, " # {l}").unwrap();
        }
        out.push('\n');
    }
    if x.adjacency() == Adjacency::Explicit {
        for (i, j) in x.edges() {
            writeln!(
                out,
                "edge {} {}",
                super::point_text(x, i),
                super::point_text(x, j)
            )
            .unwrap();
        }
    }
    out
}
