use std::fmt;

use super::cat::{verify_cat_witness, CatFailure, CatWitness};
use crate::grid::{power, DigitalImage};

/// A group law on the points of an image, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub identity: usize,
    /// `mul[a][b] = a * b`.
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl GroupTable {
    /// Addition modulo `n` on the points `0..n` in index order.
    pub fn cyclic(n: usize) -> Self {
        GroupTable {
            identity: 0,
            mul: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            inv: (0..n).map(|a| (n - a) % n).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFailure {
    /// The table is not a group law on `X`.
    Axiom(String),
    /// Multiplication or inversion is not continuous.
    Discontinuous(String),
}

impl fmt::Display for GroupFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFailure::Axiom(m) => write!(f, "not a group: {m}"),
            GroupFailure::Discontinuous(m) => write!(f, "not continuous: {m}"),
        }
    }
}

fn axioms(x: &DigitalImage, t: &GroupTable) -> Result<(), String> {
    let n = x.len();
    if t.mul.len() != n || t.mul.iter().any(|r| r.len() != n) || t.inv.len() != n {
        return Err(format!("tables must be {n}x{n} and {n}"));
    }
    if t.identity >= n || t.inv.iter().chain(t.mul.iter().flatten()).any(|&v| v >= n) {
        return Err("entry outside the image".into());
    }
    let e = t.identity;
    let p = |i: usize| x.describe(i);
    if let Some(a) = (0..n).find(|&a| t.mul[e][a] != a || t.mul[a][e] != a) {
        return Err(format!("{} is not an identity for {}", p(e), p(a)));
    }
    if let Some(a) = (0..n).find(|&a| t.mul[a][t.inv[a]] != e || t.mul[t.inv[a]][a] != e) {
        return Err(format!("{} is not an inverse of {}", p(t.inv[a]), p(a)));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]] {
                    return Err(format!("({} {}) {} is not associative", p(a), p(b), p(c)));
                }
            }
        }
    }
    Ok(())
}

/// Group axioms, then continuity of multiplication on `X x X` and of
/// inversion on `X`.
pub fn group_check(x: &DigitalImage, t: &GroupTable) -> Result<(), GroupFailure> {
    axioms(x, t).map_err(GroupFailure::Axiom)?;
    let p = |i: usize| x.describe(i);
    for (a, b) in x.edges() {
        if !x.adj_or_eq(t.inv[a], t.inv[b]) {
            return Err(GroupFailure::Discontinuous(format!(
                "inversion sends {} and {} to {} and {}",
                p(a),
                p(b),
                p(t.inv[a]),
                p(t.inv[b])
            )));
        }
    }
    let n = x.len();
    for a in 0..n {
        for b in 0..n {
            for &a2 in &x.closed_neighborhood(a) {
                for &b2 in &x.closed_neighborhood(b) {
                    if !x.adj_or_eq(t.mul[a][b], t.mul[a2][b2]) {
                        return Err(GroupFailure::Discontinuous(format!(
                            "multiplication sends ({} {}) and ({} {}) to {} and {}",
                            p(a),
                            p(b),
                            p(a2),
                            p(b2),
                            p(t.mul[a][b]),
                            p(t.mul[a2][b2])
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupBoundError {
    Group(GroupFailure),
    Cat(CatFailure),
    Disconnected,
    Arity(usize),
}

impl fmt::Display for GroupBoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupBoundError::Group(g) => write!(f, "{g}"),
            GroupBoundError::Cat(c) => write!(f, "cat witness: {c}"),
            GroupBoundError::Disconnected => write!(f, "the group image is not connected"),
            GroupBoundError::Arity(n) => write!(f, "n must be at least 2, got {n}"),
        }
    }
}

/// For a connected image with a continuous group law, `TC_n(H)` equals
/// `cat(H^(n-1))`. Checks the law and the witness, indexed over
/// `power(H, n - 1)`, and returns the bound.
pub fn tcn_upper_via_group(
    h: &DigitalImage,
    t: &GroupTable,
    n: usize,
    cat: &CatWitness,
) -> Result<usize, GroupBoundError> {
    if n < 2 {
        return Err(GroupBoundError::Arity(n));
    }
    group_check(h, t).map_err(GroupBoundError::Group)?;
    if !h.is_connected() {
        return Err(GroupBoundError::Disconnected);
    }
    let base = power(h, n - 1).map_err(|_| GroupBoundError::Arity(n))?;
    verify_cat_witness(&base, cat).map_err(GroupBoundError::Cat)
}
