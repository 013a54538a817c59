use std::collections::HashMap;
use std::fmt;

use super::path::{spiders_adjacent, DigitalPath, PathAdjacency, Spider};
use crate::exec::Exec;
use crate::grid::{DigitalImage, Point};

/// Points of a tuple, for reports.
fn pts(x: &DigitalImage, u: &[usize]) -> Vec<Point> {
    u.iter().map(|&i| x.point(i).clone()).collect()
}

fn show(u: &[Point]) -> String {
    let parts: Vec<String> = u.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(" "))
}

/// First reason a cover or section is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionFailure {
    /// A tuple of the base lies in no part.
    NotCovered { u: Vec<Point> },
    /// A member has the wrong arity or leaves `X`.
    OutsideBase { member: usize },
    /// A member is listed twice in one part.
    Duplicate { u: Vec<Point> },
    /// Members and rules do not line up.
    NotTotal { members: usize, rules: usize },
    /// A rule value is not a path, or its legs do not share a start.
    BadPath { u: Vec<Point> },
    /// A rule value does not end at the member's coordinates.
    Endpoint { u: Vec<Point> },
    /// Two adjacent members get paths that are not adjacent.
    Discontinuous { u: Vec<Point>, v: Vec<Point> },
}

impl fmt::Display for SectionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionFailure::NotCovered { u } => write!(f, "{} is not covered", show(u)),
            SectionFailure::OutsideBase { member } => {
                write!(f, "member #{member} is not a tuple of points of the image")
            }
            SectionFailure::Duplicate { u } => write!(f, "{} is listed twice", show(u)),
            SectionFailure::NotTotal { members, rules } => {
                write!(f, "{members} members but {rules} rules")
            }
            SectionFailure::BadPath { u } => write!(f, "the rule at {} is not a path", show(u)),
            SectionFailure::Endpoint { u } => {
                write!(f, "the rule at {} has the wrong endpoints", show(u))
            }
            SectionFailure::Discontinuous { u, v } => write!(
                f,
                "{} and {} are adjacent but their paths are not",
                show(u),
                show(v)
            ),
        }
    }
}

/// A failure located in a part of a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFailure {
    /// `None` for failures of the cover as a whole.
    pub part: Option<usize>,
    pub failure: SectionFailure,
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Some(i) => write!(f, "part {}: {}", i + 1, self.failure),
            None => write!(f, "{}", self.failure),
        }
    }
}

/// Equal or adjacent in every coordinate, and not identical.
pub fn tuples_adjacent(x: &DigitalImage, u: &[usize], v: &[usize]) -> bool {
    u != v && u.iter().zip(v).all(|(&a, &b)| x.adj_or_eq(a, b))
}

/// Neighbours of `u` in `X^n` under the product adjacency.
pub fn tuple_neighbors(x: &DigitalImage, u: &[usize]) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = u.iter().map(|&a| x.closed_neighborhood(a)).collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<usize>| {
                c.iter().map(move |&v| {
                    let mut p = pre.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.retain(|v| v.as_slice() != u);
    out
}

/// All tuples of `X^n` in lexicographic index order.
pub fn all_tuples(x: &DigitalImage, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<usize>| {
                (0..x.len()).map(move |v| {
                    let mut p = pre.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Every tuple of `X^n` lies in some part.
pub fn verify_cover(
    x: &DigitalImage,
    n: usize,
    parts: &[Vec<Vec<usize>>],
) -> Result<(), SectionFailure> {
    let mut covered = vec![false; x.len().pow(n as u32)];
    for part in parts {
        for (k, u) in part.iter().enumerate() {
            if u.len() != n || u.iter().any(|&i| i >= x.len()) {
                return Err(SectionFailure::OutsideBase { member: k });
            }
            covered[u.iter().fold(0, |acc, &i| acc * x.len() + i)] = true;
        }
    }
    match covered.iter().position(|c| !c) {
        None => Ok(()),
        Some(code) => {
            let mut u = vec![0; n];
            let mut c = code;
            for slot in u.iter_mut().rev() {
                *slot = c % x.len();
                c /= x.len();
            }
            Err(SectionFailure::NotCovered { u: pts(x, &u) })
        }
    }
}

fn is_path(x: &DigitalImage, p: &DigitalPath) -> bool {
    p.points().iter().all(|&v| v < x.len())
        && p.points().windows(2).all(|w| x.adj_or_eq(w[0], w[1]))
}

/// Checks a rule `u -> spider` on the members of one part: leg `i` of the
/// spider at `u` ends at `u_i`, and adjacent members get legwise adjacent
/// spiders.
pub fn verify_spider_section(
    x: &DigitalImage,
    n: usize,
    members: &[Vec<usize>],
    rules: &[Spider],
    mode: PathAdjacency,
    exec: Exec,
) -> Result<(), SectionFailure> {
    if members.len() != rules.len() {
        return Err(SectionFailure::NotTotal {
            members: members.len(),
            rules: rules.len(),
        });
    }
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    for (k, u) in members.iter().enumerate() {
        if u.len() != n || u.iter().any(|&i| i >= x.len()) {
            return Err(SectionFailure::OutsideBase { member: k });
        }
        if index.insert(u.as_slice(), k).is_some() {
            return Err(SectionFailure::Duplicate { u: pts(x, u) });
        }
    }
    for (u, s) in members.iter().zip(rules) {
        let legs = s.legs();
        if legs
            .iter()
            .any(|l| !is_path(x, l) || l.start() != legs[0].start())
        {
            return Err(SectionFailure::BadPath { u: pts(x, u) });
        }
        if s.ends() != *u {
            return Err(SectionFailure::Endpoint { u: pts(x, u) });
        }
    }
    let hit = exec.find_map_first(members.len(), |k| {
        let u = &members[k];
        tuple_neighbors(x, u).into_iter().find_map(|v| {
            let &j = index.get(v.as_slice())?;
            (j > k && !spiders_adjacent(x, &rules[k], &rules[j], mode)).then_some((k, j))
        })
    });
    match hit {
        None => Ok(()),
        Some((k, j)) => Err(SectionFailure::Discontinuous {
            u: pts(x, &members[k]),
            v: pts(x, &members[j]),
        }),
    }
}

/// Checks a motion-planning rule on a subset `U` of `X x X`: the path at
/// `(x, y)` runs from `x` to `y`, and adjacent pairs get adjacent paths.
pub fn verify_section(
    x: &DigitalImage,
    members: &[Vec<usize>],
    rules: &[DigitalPath],
    mode: PathAdjacency,
) -> Result<(), SectionFailure> {
    let spiders: Vec<Spider> = rules.iter().map(Spider::from_path).collect();
    verify_spider_section(x, 2, members, &spiders, mode, Exec::default())
}

/// One part of a witness with its rule, aligned with `members`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPart<T> {
    pub members: Vec<Vec<usize>>,
    pub rules: Vec<T>,
}

/// Cover of `X x X` with a path rule on every part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcWitness {
    pub parts: Vec<SectionPart<DigitalPath>>,
}

/// Cover of `X^n` with a spider rule on every part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcnWitness {
    pub n: usize,
    pub parts: Vec<SectionPart<Spider>>,
}

impl TcWitness {
    /// The same witness with every path read as a two-legged spider.
    pub fn as_spiders(&self) -> TcnWitness {
        TcnWitness {
            n: 2,
            parts: self
                .parts
                .iter()
                .map(|p| SectionPart {
                    members: p.members.clone(),
                    rules: p.rules.iter().map(Spider::from_path).collect(),
                })
                .collect(),
        }
    }
}

/// Certifies `TC(X) <= l` and returns `l`, the number of parts.
pub fn verify_tc_witness(
    x: &DigitalImage,
    w: &TcWitness,
    mode: PathAdjacency,
) -> Result<usize, WitnessFailure> {
    verify_tcn_witness(x, &w.as_spiders(), mode)
}

/// Certifies `TC_n(X) <= l` and returns `l`.
pub fn verify_tcn_witness(
    x: &DigitalImage,
    w: &TcnWitness,
    mode: PathAdjacency,
) -> Result<usize, WitnessFailure> {
    verify_tcn_witness_with(x, w, mode, Exec::default())
}

pub fn verify_tcn_witness_with(
    x: &DigitalImage,
    w: &TcnWitness,
    mode: PathAdjacency,
    exec: Exec,
) -> Result<usize, WitnessFailure> {
    if w.n < 2 {
        return Err(WitnessFailure {
            part: None,
            failure: SectionFailure::OutsideBase { member: 0 },
        });
    }
    let members: Vec<Vec<Vec<usize>>> = w.parts.iter().map(|p| p.members.clone()).collect();
    verify_cover(x, w.n, &members).map_err(|failure| WitnessFailure {
        part: None,
        failure,
    })?;
    for (i, p) in w.parts.iter().enumerate() {
        verify_spider_section(x, w.n, &p.members, &p.rules, mode, exec).map_err(|failure| {
            WitnessFailure {
                part: Some(i),
                failure,
            }
        })?;
    }
    Ok(w.parts.len())
}
