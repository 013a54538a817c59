use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{DigitalImage, DigitalMap, Point};

/// A digital homotopy `G : X x [0,n] -> Y` tabulated as the maps
/// `f_0, ..., f_n`, each a table of codomain indices.
#[derive(Clone, Debug)]
pub struct HomotopyScript<'a> {
    domain: &'a DigitalImage,
    codomain: &'a DigitalImage,
    steps: Vec<Vec<usize>>,
}

/// First condition a script breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyFailure {
    /// `p`, `q` adjacent in `X` but `f_t(p)`, `f_t(q)` neither equal nor adjacent.
    Discontinuous { t: usize, p: Point, q: Point },
    /// `f_t(p)` and `f_{t+1}(p)` neither equal nor adjacent.
    Jump { t: usize, p: Point },
    /// `f_0(p) != p`.
    StartNotIdentity { p: Point },
    /// `f_n(p)` differs from the target.
    EndNotConstant { p: Point },
    /// Domain and codomain differ where a self-homotopy is required.
    NotSelfMap,
}

impl fmt::Display for HomotopyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyFailure::Discontinuous { t, p, q } => {
                write!(f, "f_{t} is not continuous at the adjacent pair {p}, {q}")
            }
            HomotopyFailure::Jump { t, p } => {
                write!(f, "{p} jumps between t={t} and t={}", t + 1)
            }
            HomotopyFailure::StartNotIdentity { p } => write!(f, "f_0 moves {p}"),
            HomotopyFailure::EndNotConstant { p } => {
                write!(f, "the last map sends {p} away from the target")
            }
            HomotopyFailure::NotSelfMap => write!(f, "domain and codomain differ"),
        }
    }
}

impl<'a> HomotopyScript<'a> {
    pub fn new(
        domain: &'a DigitalImage,
        codomain: &'a DigitalImage,
        steps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::MalformedMap("a homotopy needs at least f_0".into()));
        }
        for (t, s) in steps.iter().enumerate() {
            if s.len() != domain.len() {
                return Err(Error::MalformedMap(format!(
                    "f_{t} is defined on {} of {} points",
                    s.len(),
                    domain.len()
                )));
            }
            if let Some(&bad) = s.iter().find(|&&j| j >= codomain.len()) {
                return Err(Error::OutOfRange {
                    index: bad,
                    len: codomain.len(),
                });
            }
        }
        Ok(HomotopyScript {
            domain,
            codomain,
            steps,
        })
    }

    pub fn from_maps(maps: &[DigitalMap<'a>]) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::MalformedMap("a homotopy needs at least f_0".into()))?;
        let (d, c) = (first.domain(), first.codomain());
        if maps.iter().any(|m| m.domain() != d || m.codomain() != c) {
            return Err(Error::MalformedMap(
                "maps of a homotopy must share domain and codomain".into(),
            ));
        }
        Self::new(d, c, maps.iter().map(|m| m.table().to_vec()).collect())
    }

    pub fn domain(&self) -> &'a DigitalImage {
        self.domain
    }

    pub fn codomain(&self) -> &'a DigitalImage {
        self.codomain
    }

    /// `n`, the last time.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn step(&self, t: usize) -> DigitalMap<'a> {
        DigitalMap::new(self.domain, self.codomain, self.steps[t].clone()).expect("validated")
    }

    /// `G(x, t)` for every time, read along the path of `x`.
    pub fn track(&self, i: usize) -> Vec<usize> {
        self.steps.iter().map(|s| s[i]).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.reverse();
        HomotopyScript { steps, ..*self }
    }

    /// `self` followed by `other`; the last map of `self` must be the first
    /// of `other`, and appears once.
    pub fn concat(&self, other: &HomotopyScript<'a>) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::MalformedMap(
                "scripts act between different images".into(),
            ));
        }
        if self.steps.last() != other.steps.first() {
            return Err(Error::MalformedMap(
                "scripts do not meet at the seam".into(),
            ));
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps[1..].iter().cloned());
        Ok(HomotopyScript { steps, ..*self })
    }

    pub fn into_steps(self) -> Vec<Vec<usize>> {
        self.steps
    }
}

/// Checks that each `f_t` is continuous and that every point moves to an
/// equal or adjacent point from one time to the next.
pub fn verify_homotopy(s: &HomotopyScript) -> std::result::Result<(), HomotopyFailure> {
    let (x, y) = (s.domain, s.codomain);
    for t in 0..s.steps.len() {
        let f = &s.steps[t];
        for i in 0..x.len() {
            for &j in x.neighbors_of(i) {
                if j > i && !y.adj_or_eq(f[i], f[j]) {
                    return Err(HomotopyFailure::Discontinuous {
                        t,
                        p: x.point(i).clone(),
                        q: x.point(j).clone(),
                    });
                }
            }
        }
        if let Some(g) = s.steps.get(t + 1) {
            if let Some(i) = (0..x.len()).find(|&i| !y.adj_or_eq(f[i], g[i])) {
                return Err(HomotopyFailure::Jump {
                    t,
                    p: x.point(i).clone(),
                });
            }
        }
    }
    Ok(())
}

/// A homotopy from the identity of `X` to the constant map at `target`.
#[derive(Clone, Debug)]
pub struct ContractionCertificate<'a> {
    pub script: HomotopyScript<'a>,
    pub target: usize,
}

impl<'a> ContractionCertificate<'a> {
    pub fn new(script: HomotopyScript<'a>, target: usize) -> Result<Self> {
        if target >= script.codomain.len() {
            return Err(Error::OutOfRange {
                index: target,
                len: script.codomain.len(),
            });
        }
        Ok(ContractionCertificate { script, target })
    }

    pub fn target_point(&self) -> &'a Point {
        self.script.codomain.point(self.target)
    }
}

pub fn verify_contraction(c: &ContractionCertificate) -> std::result::Result<(), HomotopyFailure> {
    let s = &c.script;
    if s.domain != s.codomain {
        return Err(HomotopyFailure::NotSelfMap);
    }
    if let Some(i) = (0..s.domain.len()).find(|&i| s.steps[0][i] != i) {
        return Err(HomotopyFailure::StartNotIdentity {
            p: s.domain.point(i).clone(),
        });
    }
    let last = s.steps.last().unwrap();
    if let Some(i) = (0..s.domain.len()).find(|&i| last[i] != c.target) {
        return Err(HomotopyFailure::EndNotConstant {
            p: s.domain.point(i).clone(),
        });
    }
    verify_homotopy(s)
}

/// Checks a contraction of the inclusion `U -> X` inside `X`: `f_0` is the
/// inclusion, the last map is constant, and the steps form a homotopy of
/// maps `U -> X`, where `U` carries the adjacency induced from `X`.
pub fn verify_inclusion_contraction(
    x: &DigitalImage,
    part: &[usize],
    steps: &[Vec<usize>],
) -> std::result::Result<(), HomotopyFailure> {
    let u = x.subimage(part).map_err(|_| HomotopyFailure::NotSelfMap)?;
    let mut ordered = part.to_vec();
    ordered.sort_unstable();
    ordered.dedup();
    if ordered.len() != part.len()
        || steps.is_empty()
        || steps.iter().any(|s| s.len() != part.len())
    {
        return Err(HomotopyFailure::NotSelfMap);
    }
    // the subimage lists members in sorted order; tables follow `part`
    let pos: Vec<usize> = ordered
        .iter()
        .map(|m| part.iter().position(|p| p == m).unwrap())
        .collect();
    let tables: Vec<Vec<usize>> = steps
        .iter()
        .map(|s| pos.iter().map(|&k| s[k]).collect())
        .collect();
    if let Some(k) = (0..ordered.len()).find(|&k| tables[0][k] != ordered[k]) {
        return Err(HomotopyFailure::StartNotIdentity {
            p: x.point(ordered[k]).clone(),
        });
    }
    let last = tables.last().unwrap();
    if let Some(k) = (0..ordered.len()).find(|&k| last[k] != last[0]) {
        return Err(HomotopyFailure::EndNotConstant {
            p: x.point(ordered[k]).clone(),
        });
    }
    let script = HomotopyScript::new(&u, x, tables).map_err(|_| HomotopyFailure::NotSelfMap)?;
    verify_homotopy(&script)
}
