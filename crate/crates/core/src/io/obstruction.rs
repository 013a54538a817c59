use std::fmt::Write;

use super::{content_lines, point_text, point_token};
use crate::error::{parse_err, Result};
use crate::grid::DigitalImage;
use crate::homotopy::RetractionObstruction;

/// Reads `obstruction`, `cycle <points>` in cyclic order, then the
/// retraction as `p -> q` lines for every point.
pub fn read_obstruction(x: &DigitalImage, text: &str) -> Result<RetractionObstruction> {
    let lines = content_lines(text);
    let Some(&(hline, head)) = lines.first() else {
        return Err(parse_err(1, "missing `obstruction` header"));
    };
    if head != "obstruction" {
        return Err(parse_err(hline, "expected `obstruction`"));
    }
    let Some(&(cline, c)) = lines.get(1) else {
        return Err(parse_err(hline, "missing `cycle` line"));
    };
    let cycle = c
        .strip_prefix("cycle")
        .ok_or_else(|| parse_err(cline, "expected `cycle <points>`"))?
        .split_whitespace()
        .map(|t| point_token(x, t, cline))
        .collect::<Result<Vec<_>>>()?;
    let rest: Vec<String> = vec![String::new(); cline]
        .into_iter()
        .chain(text.lines().skip(cline).map(String::from))
        .collect();
    let retraction = super::read_map(x, x, &rest.join("\n")).map_err(|e| match e {
        crate::Error::Parse { line, message } => parse_err(line.max(cline), message),
        other => other,
    })?;
    Ok(RetractionObstruction { cycle, retraction })
}

pub fn write_obstruction(x: &DigitalImage, o: &RetractionObstruction) -> String {
    let cyc: Vec<String> = o.cycle.iter().map(|&i| point_text(x, i)).collect();
    let mut out = format!("obstruction\ncycle {}\n", cyc.join(" "));
    for (p, &q) in o.retraction.iter().enumerate() {
        writeln!(out, "{} -> {}", point_text(x, p), point_text(x, q)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homotopy::{find_obstruction, verify_obstruction, DEFAULT_BUDGET};

    #[test]
    fn round_trip() {
        let x = fixtures::theta();
        let o = find_obstruction(&x, DEFAULT_BUDGET).unwrap();
        let back = read_obstruction(&x, &write_obstruction(&x, &o)).unwrap();
        assert_eq!(back, o);
        assert!(verify_obstruction(&x, &back));
    }

    #[test]
    fn errors() {
        let x = fixtures::interval(1);
        assert!(matches!(
            read_obstruction(&x, "cycle 0 1\n"),
            Err(crate::Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_obstruction(&x, "obstruction\ncycle 0 1\n0 -> 0\n"),
            Err(crate::Error::Parse { line: 3, .. })
        ));
    }
}
