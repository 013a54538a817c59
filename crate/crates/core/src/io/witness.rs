use std::collections::HashMap;
use std::fmt::Write;

use super::{content_lines, keyword_usize, point_text, point_token, read_script, write_script};
use crate::error::{parse_err, Result};
use crate::grid::DigitalImage;
use crate::motion::{
    CatWitness, DigitalPath, GroupTable, SectionPart, Spider, TcWitness, TcnWitness,
};

fn tuple_text(x: &DigitalImage, u: &[usize]) -> String {
    let parts: Vec<String> = u.iter().map(|&i| point_text(x, i)).collect();
    format!("({})", parts.join(" "))
}

fn path_text(x: &DigitalImage, p: &DigitalPath) -> String {
    let parts: Vec<String> = p.points().iter().map(|&i| point_text(x, i)).collect();
    format!("path: {}", parts.join(" "))
}

fn parse_tuple(x: &DigitalImage, s: &str, line: usize) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected `(<points>)`, found `{}`", s.trim())))?;
    inner
        .split_whitespace()
        .map(|t| point_token(x, t, line))
        .collect()
}

fn parse_path(x: &DigitalImage, s: &str, line: usize) -> Result<DigitalPath> {
    let rest = s
        .trim()
        .strip_prefix("path:")
        .ok_or_else(|| parse_err(line, "expected `path: <points>`"))?;
    let pts: Vec<usize> = rest
        .split_whitespace()
        .map(|t| point_token(x, t, line))
        .collect::<Result<_>>()?;
    if pts.is_empty() {
        return Err(parse_err(line, "empty path"));
    }
    Ok(DigitalPath::unchecked(pts))
}

enum RuleValue {
    Path(DigitalPath),
    Legs(Vec<DigitalPath>),
}

struct RawWitness {
    arity: usize,
    header: usize,
    parts: Vec<(usize, Vec<(usize, Vec<usize>)>)>,
    rules: Vec<(usize, Vec<(usize, Vec<usize>, RuleValue)>)>,
}

fn read_raw(x: &DigitalImage, text: &str) -> Result<RawWitness> {
    let lines = content_lines(text);
    let Some(&(hline, head)) = lines.first() else {
        return Err(parse_err(1, "missing `cover <l>` header"));
    };
    let words: Vec<&str> = head.split_whitespace().collect();
    let (count, arity) = match words.as_slice() {
        ["cover", l] => (keyword_usize(hline, l, "a part count")?, 2),
        ["cover", l, "arity", n] => (
            keyword_usize(hline, l, "a part count")?,
            keyword_usize(hline, n, "an arity")?,
        ),
        _ => {
            return Err(parse_err(
                hline,
                "expected `cover <l>` or `cover <l> arity <n>`",
            ))
        }
    };
    let mut raw = RawWitness {
        arity,
        header: hline,
        parts: Vec::new(),
        rules: Vec::new(),
    };
    enum Block {
        None,
        Part,
        Rule,
    }
    let mut block = Block::None;
    let mut k = 1;
    while k < lines.len() {
        let (line, l) = lines[k];
        k += 1;
        if let Some(rest) = l.strip_prefix("part ") {
            let i = keyword_usize(line, rest, "a part number")?;
            if i != raw.parts.len() + 1 {
                return Err(parse_err(
                    line,
                    format!("expected `part {}`", raw.parts.len() + 1),
                ));
            }
            raw.parts.push((line, Vec::new()));
            block = Block::Part;
            continue;
        }
        if let Some(rest) = l.strip_prefix("rule ") {
            let i = keyword_usize(line, rest, "a rule number")?;
            if i != raw.rules.len() + 1 {
                return Err(parse_err(
                    line,
                    format!("expected `rule {}`", raw.rules.len() + 1),
                ));
            }
            raw.rules.push((line, Vec::new()));
            block = Block::Rule;
            continue;
        }
        match block {
            Block::None => return Err(parse_err(line, "expected `part <i>` or `rule <i>`")),
            Block::Part => {
                let u = parse_tuple(x, l, line)?;
                if u.len() != arity {
                    return Err(parse_err(line, format!("expected {arity} points")));
                }
                raw.parts.last_mut().unwrap().1.push((line, u));
            }
            Block::Rule => {
                let (a, b) = l.split_once("->").ok_or_else(|| {
                    parse_err(line, "expected `(<u>) -> path: ...` or `(<u>) -> legs <n>`")
                })?;
                let u = parse_tuple(x, a, line)?;
                if u.len() != arity {
                    return Err(parse_err(line, format!("expected {arity} points")));
                }
                let b = b.trim();
                let value = if let Some(n) = b.strip_prefix("legs") {
                    let n = keyword_usize(line, n, "a leg count")?;
                    let mut legs = Vec::with_capacity(n);
                    for _ in 0..n {
                        let Some(&(pl, p)) = lines.get(k) else {
                            return Err(parse_err(line, format!("expected {n} `path:` lines")));
                        };
                        k += 1;
                        legs.push(parse_path(x, p, pl)?);
                    }
                    RuleValue::Legs(legs)
                } else {
                    RuleValue::Path(parse_path(x, b, line)?)
                };
                raw.rules.last_mut().unwrap().1.push((line, u, value));
            }
        }
    }
    if raw.rules.len() != count || (!raw.parts.is_empty() && raw.parts.len() != count) {
        return Err(parse_err(
            hline,
            format!(
                "header promises {count} parts, found {} part and {} rule blocks",
                raw.parts.len(),
                raw.rules.len()
            ),
        ));
    }
    Ok(raw)
}

/// Members of each part with their rule values, aligned.
fn aligned<T>(
    x: &DigitalImage,
    raw: RawWitness,
    mut convert: impl FnMut(usize, RuleValue) -> Result<T>,
) -> Result<Vec<SectionPart<T>>> {
    let has_parts = !raw.parts.is_empty();
    let mut parts_iter = raw.parts.into_iter();
    let mut out = Vec::new();
    for (rline, entries) in raw.rules {
        let mut by_tuple: HashMap<Vec<usize>, (usize, RuleValue)> = HashMap::new();
        let mut order = Vec::new();
        for (line, u, v) in entries {
            if by_tuple.contains_key(&u) {
                return Err(parse_err(
                    line,
                    format!("second rule for {}", tuple_text(x, &u)),
                ));
            }
            order.push((line, u.clone()));
            by_tuple.insert(u, (line, v));
        }
        let members: Vec<(usize, Vec<usize>)> = if has_parts {
            parts_iter.next().unwrap().1
        } else {
            order
        };
        let mut part = SectionPart {
            members: Vec::with_capacity(members.len()),
            rules: Vec::with_capacity(members.len()),
        };
        for (line, u) in members {
            let (vl, v) = by_tuple
                .remove(&u)
                .ok_or_else(|| parse_err(line, format!("no rule for {}", tuple_text(x, &u))))?;
            part.members.push(u);
            part.rules.push(convert(vl, v)?);
        }
        if let Some((line, _)) = by_tuple.values().min_by_key(|(l, _)| *l) {
            return Err(parse_err(
                *line,
                format!("rule outside its part (block at line {rline})"),
            ));
        }
        out.push(part);
    }
    Ok(out)
}

/// Reads a cover of `X x X` with path rules.
pub fn read_tc_witness(x: &DigitalImage, text: &str) -> Result<TcWitness> {
    let raw = read_raw(x, text)?;
    if raw.arity != 2 {
        return Err(parse_err(raw.header, "a TC witness has arity 2"));
    }
    let parts = aligned(x, raw, |line, v| match v {
        RuleValue::Path(p) => Ok(p),
        RuleValue::Legs(_) => Err(parse_err(line, "expected `path:`")),
    })?;
    Ok(TcWitness { parts })
}

/// Reads a cover of `X^n` with spider rules. With arity 2, `path:` rules
/// are read as spiders with a constant first leg.
pub fn read_tcn_witness(x: &DigitalImage, text: &str) -> Result<TcnWitness> {
    let raw = read_raw(x, text)?;
    let n = raw.arity;
    let parts = aligned(x, raw, |line, v| match v {
        RuleValue::Path(p) if n == 2 => Ok(Spider::from_path(&p)),
        RuleValue::Path(_) => Err(parse_err(line, format!("expected `legs {n}`"))),
        RuleValue::Legs(l) if l.len() == n => Ok(Spider::unchecked(l)),
        RuleValue::Legs(l) => Err(parse_err(
            line,
            format!("expected {n} legs, found {}", l.len()),
        )),
    })?;
    Ok(TcnWitness { n, parts })
}

fn write_cover<T>(
    x: &DigitalImage,
    header: String,
    parts: &[SectionPart<T>],
    mut rule: impl FnMut(&mut String, &T),
) -> String {
    let mut out = header;
    for (i, p) in parts.iter().enumerate() {
        writeln!(out, "part {}", i + 1).unwrap();
        for u in &p.members {
            writeln!(out, "{}", tuple_text(x, u)).unwrap();
        }
    }
    for (i, p) in parts.iter().enumerate() {
        writeln!(out, "rule {}", i + 1).unwrap();
        for (u, r) in p.members.iter().zip(&p.rules) {
            write!(out, "{} -> ", tuple_text(x, u)).unwrap();
            rule(&mut out, r);
        }
    }
    out
}

pub fn write_tc_witness(x: &DigitalImage, w: &TcWitness) -> String {
    write_cover(
        x,
        format!("cover {}\n", w.parts.len()),
        &w.parts,
        |out, p| {
            writeln!(out, "{}", path_text(x, p)).unwrap();
        },
    )
}

pub fn write_tcn_witness(x: &DigitalImage, w: &TcnWitness) -> String {
    write_cover(
        x,
        format!("cover {} arity {}\n", w.parts.len(), w.n),
        &w.parts,
        |out, s| {
            writeln!(out, "legs {}", s.legs().len()).unwrap();
            for l in s.legs() {
                writeln!(out, "{}", path_text(x, l)).unwrap();
            }
        },
    )
}

/// Reads `cat <l>` and, per part, `part <i>` followed by a homotopy
/// script whose `t 0` block lists the part.
pub fn read_cat_witness(x: &DigitalImage, text: &str) -> Result<CatWitness> {
    let lines = content_lines(text);
    let Some(&(hline, head)) = lines.first() else {
        return Err(parse_err(1, "missing `cat <l>` header"));
    };
    let count = match head.strip_prefix("cat") {
        Some(rest) => keyword_usize(hline, rest, "a part count")?,
        None => return Err(parse_err(hline, "expected `cat <l>`")),
    };
    let mut starts = Vec::new();
    for (k, &(line, l)) in lines.iter().enumerate().skip(1) {
        if let Some(rest) = l.strip_prefix("part ") {
            let i = keyword_usize(line, rest, "a part number")?;
            if i != starts.len() + 1 {
                return Err(parse_err(
                    line,
                    format!("expected `part {}`", starts.len() + 1),
                ));
            }
            starts.push(k);
        } else if starts.is_empty() {
            return Err(parse_err(line, "expected `part 1`"));
        }
    }
    if starts.len() != count {
        return Err(parse_err(
            hline,
            format!("header promises {count} parts, found {}", starts.len()),
        ));
    }
    let total = text.lines().count();
    let mut w = CatWitness {
        parts: Vec::new(),
        contractions: Vec::new(),
    };
    for (j, &s) in starts.iter().enumerate() {
        let end = starts.get(j + 1).copied().unwrap_or(lines.len());
        // keep original line numbers by blanking everything else
        let mut chunk = vec![""; total];
        for &(line, l) in &lines[s + 1..end] {
            chunk[line - 1] = l;
        }
        let script = read_script(x, x, &chunk.join("\n")).map_err(|e| match e {
            crate::Error::Parse { line, message }
                if line == 1 && !lines[s + 1..end].iter().any(|&(l, _)| l == 1) =>
            {
                parse_err(lines[s].0, message)
            }
            other => other,
        })?;
        w.parts.push(script.domain);
        w.contractions.push(script.steps);
    }
    Ok(w)
}

pub fn write_cat_witness(x: &DigitalImage, w: &CatWitness) -> String {
    let mut out = format!("cat {}\n", w.parts.len());
    for (i, (part, steps)) in w.parts.iter().zip(&w.contractions).enumerate() {
        writeln!(out, "part {}", i + 1).unwrap();
        out.push_str(&write_script(x, x, part, steps));
    }
    out
}

/// Reads `group`, `identity <p>`, then `mul <a> <b> -> <c>` for every pair
/// and `inv <a> -> <b>` for every point.
pub fn read_group(x: &DigitalImage, text: &str) -> Result<GroupTable> {
    let lines = content_lines(text);
    let n = x.len();
    let mut identity = None;
    let mut mul = vec![vec![usize::MAX; n]; n];
    let mut inv = vec![usize::MAX; n];
    let mut last = 1;
    for (k, &(line, l)) in lines.iter().enumerate() {
        last = line;
        if k == 0 && l == "group" {
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        let p = |t: &str| point_token(x, t, line);
        match words.as_slice() {
            ["identity", e] => identity = Some(p(e)?),
            ["mul", a, b, "->", c] => {
                let (a, b) = (p(a)?, p(b)?);
                if mul[a][b] != usize::MAX {
                    return Err(parse_err(line, "product given twice"));
                }
                mul[a][b] = p(c)?;
            }
            ["inv", a, "->", b] => {
                let a = p(a)?;
                if inv[a] != usize::MAX {
                    return Err(parse_err(line, "inverse given twice"));
                }
                inv[a] = p(b)?;
            }
            _ => return Err(parse_err(line, "expected `identity`, `mul` or `inv`")),
        }
    }
    let identity = identity.ok_or_else(|| parse_err(last, "missing `identity`"))?;
    if mul.iter().flatten().any(|&v| v == usize::MAX) || inv.contains(&usize::MAX) {
        return Err(parse_err(last, "table is not total"));
    }
    Ok(GroupTable { identity, mul, inv })
}

pub fn write_group(x: &DigitalImage, t: &GroupTable) -> String {
    let mut out = String::from("group\n");
    writeln!(out, "identity {}", point_text(x, t.identity)).unwrap();
    for (a, row) in t.mul.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            writeln!(
                out,
                "mul {} {} -> {}",
                point_text(x, a),
                point_text(x, b),
                point_text(x, c)
            )
            .unwrap();
        }
    }
    for (a, &b) in t.inv.iter().enumerate() {
        writeln!(out, "inv {} -> {}", point_text(x, a), point_text(x, b)).unwrap();
    }
    out
}
