use std::fmt::Write;

use super::{content_lines, keyword_usize, point_text, point_token};
use crate::error::{parse_err, Error, Result};
use crate::grid::DigitalImage;

/// A parsed homotopy script: the domain points in the order of the `t 0`
/// block and, per time, the image of each of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptFile {
    pub domain: Vec<usize>,
    pub steps: Vec<Vec<usize>>,
}

impl ScriptFile {
    /// Step tables in index order, for a script over all of a domain of
    /// `n` points.
    pub fn full_tables(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let mut pos = vec![usize::MAX; n];
        for (k, &d) in self.domain.iter().enumerate() {
            pos[d] = k;
        }
        if self.domain.len() != n || pos.contains(&usize::MAX) {
            return Err(Error::MalformedMap(format!(
                "script lists {} of {n} domain points",
                self.domain.len()
            )));
        }
        Ok(self
            .steps
            .iter()
            .map(|s| pos.iter().map(|&k| s[k]).collect())
            .collect())
    }
}

fn arrow(line: usize, l: &str) -> Result<(&str, &str)> {
    let (a, b) = l
        .split_once("->")
        .ok_or_else(|| parse_err(line, "expected `<point> -> <point>`"))?;
    Ok((a.trim(), b.trim()))
}

/// Reads `homotopy <n>` and blocks `t 0` .. `t n` of `p -> q` lines. Every
/// block must list the same domain points.
pub fn read_script(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    text: &str,
) -> Result<ScriptFile> {
    let lines = content_lines(text);
    let Some(&(hline, head)) = lines.first() else {
        return Err(parse_err(1, "missing `homotopy <n>` header"));
    };
    let n = match head.strip_prefix("homotopy") {
        Some(rest) => keyword_usize(hline, rest, "a step count")?,
        None => return Err(parse_err(hline, "expected `homotopy <n>`")),
    };
    let mut blocks: Vec<(usize, Vec<(usize, usize, usize)>)> = Vec::new();
    for &(line, l) in &lines[1..] {
        if let Some(rest) = l.strip_prefix("t ") {
            let t = keyword_usize(line, rest, "a time")?;
            if t != blocks.len() {
                return Err(parse_err(line, format!("expected `t {}`", blocks.len())));
            }
            blocks.push((line, Vec::new()));
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(parse_err(line, "mapping line before `t 0`"));
        };
        let (a, b) = arrow(line, l)?;
        let p = point_token(domain, a, line)?;
        let q = point_token(codomain, b, line)?;
        block.1.push((line, p, q));
    }
    if blocks.len() != n + 1 {
        return Err(parse_err(
            hline,
            format!("header promises {} blocks, found {}", n + 1, blocks.len()),
        ));
    }
    let order: Vec<usize> = blocks[0].1.iter().map(|&(_, p, _)| p).collect();
    let mut pos = vec![usize::MAX; domain.len()];
    for (k, &(line, p, _)) in blocks[0].1.iter().enumerate() {
        if pos[p] != usize::MAX {
            return Err(parse_err(
                line,
                format!("{} is mapped twice", domain.point(p)),
            ));
        }
        pos[p] = k;
    }
    let mut steps = Vec::with_capacity(blocks.len());
    for (bline, entries) in &blocks {
        let mut table = vec![usize::MAX; order.len()];
        for &(line, p, q) in entries {
            let k = pos[p];
            if k == usize::MAX {
                return Err(parse_err(
                    line,
                    format!("{} is not in the `t 0` block", domain.point(p)),
                ));
            }
            if table[k] != usize::MAX {
                return Err(parse_err(
                    line,
                    format!("{} is mapped twice", domain.point(p)),
                ));
            }
            table[k] = q;
        }
        if let Some(k) = table.iter().position(|&v| v == usize::MAX) {
            return Err(parse_err(
                *bline,
                format!("{} has no image", domain.point(order[k])),
            ));
        }
        steps.push(table);
    }
    Ok(ScriptFile {
        domain: order,
        steps,
    })
}

pub fn write_script(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    members: &[usize],
    steps: &[Vec<usize>],
) -> String {
    let mut out = String::new();
    writeln!(out, "homotopy {}", steps.len().saturating_sub(1)).unwrap();
    for (t, s) in steps.iter().enumerate() {
        writeln!(out, "t {t}").unwrap();
        for (k, &p) in members.iter().enumerate() {
            writeln!(
                out,
                "{} -> {}",
                point_text(domain, p),
                point_text(codomain, s[k])
            )
            .unwrap();
        }
    }
    out
}

/// Reads a total map as `p -> q` lines, with an optional `map` header.
pub fn read_map(domain: &DigitalImage, codomain: &DigitalImage, text: &str) -> Result<Vec<usize>> {
    let mut table = vec![usize::MAX; domain.len()];
    let mut last = 0;
    for (k, &(line, l)) in content_lines(text).iter().enumerate() {
        last = line;
        if k == 0 && l == "map" {
            continue;
        }
        let (a, b) = arrow(line, l)?;
        let p = point_token(domain, a, line)?;
        let q = point_token(codomain, b, line)?;
        if table[p] != usize::MAX {
            return Err(parse_err(
                line,
                format!("{} is mapped twice", domain.point(p)),
            ));
        }
        table[p] = q;
    }
    if let Some(p) = table.iter().position(|&v| v == usize::MAX) {
        return Err(parse_err(
            last.max(1),
            format!("{} has no image", domain.point(p)),
        ));
    }
    Ok(table)
}

pub fn write_map(domain: &DigitalImage, codomain: &DigitalImage, table: &[usize]) -> String {
    let mut out = String::from("map\n");
    for (p, &q) in table.iter().enumerate() {
        writeln!(
            out,
            "{} -> {}",
            point_text(domain, p),
            point_text(codomain, q)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn script_round_trip() {
        let x = fixtures::interval(2);
        let steps = vec![vec![0, 1, 2], vec![1, 1, 1]];
        let text = write_script(&x, &x, &[0, 1, 2], &steps);
        assert!(text.starts_with("homotopy 1\nt 0\n0 -> 0\n"));
        let s = read_script(&x, &x, &text).unwrap();
        assert_eq!(s.steps, steps);
        assert_eq!(s.full_tables(3).unwrap(), steps);
    }

    #[test]
    fn script_order_follows_first_block() {
        let x = fixtures::interval(1);
        let s = read_script(
            &x,
            &x,
            "homotopy 1\nt 0\n1 -> 1\n0 -> 0\nt 1\n0 -> 1\n1 -> 1\n",
        )
        .unwrap();
        assert_eq!(s.domain, vec![1, 0]);
        assert_eq!(s.steps[1], vec![1, 1]);
        assert_eq!(s.full_tables(2).unwrap(), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn script_errors() {
        let x = fixtures::interval(1);
        let bad = [
            ("t 0\n0 -> 0\n", 1),
            ("homotopy 1\nt 0\n0 -> 0\n1 -> 1\n", 1),
            ("homotopy 0\nt 0\n0 -> 0\n0 -> 1\n", 4),
            ("homotopy 0\nt 0\n0 -> 7\n", 3),
            ("homotopy 1\nt 0\n0 -> 0\n1 -> 1\nt 1\n0 -> 0\n", 5),
            ("homotopy 0\n0 -> 0\n", 2),
            ("homotopy 0\nt 0\n0 => 0\n", 3),
        ];
        for (text, line) in bad {
            match read_script(&x, &x, text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn labels_resolve() {
        let x = fixtures::mss6();
        let t = read_map(
            &x,
            &x,
            "p0 -> p1\np1 -> p1\np2 -> p2\np3 -> p3\np4 -> p4\np5 -> p5\np6 -> p6\np7 -> p7\n",
        )
        .unwrap();
        assert_eq!(t[x.find_label("p0").unwrap()], x.find_label("p1").unwrap());
        let text = write_map(&x, &x, &t);
        assert_eq!(read_map(&x, &x, &text).unwrap(), t);
        assert!(matches!(
            read_map(&x, &x, "p0 -> p1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
