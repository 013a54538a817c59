//! Budgeted search for contractions and for obstructions to them.

use std::collections::{HashMap, VecDeque};

use super::script::{ContractionCertificate, HomotopyScript};
use crate::exec::Exec;
use crate::grid::{is_simple_closed_curve, DigitalImage};

/// Default node budget for the searches in this crate.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

const GREEDY_NODES: u64 = 20_000;
const GREEDY_SOLUTIONS: usize = 16;

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole reachable space was enumerated without success.
    Refuted,
    /// Budget or depth limit reached first.
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Enum {
    Completed,
    Stopped,
    OutOfBudget,
}

/// Backtracking enumeration of maps `g : D -> X` with `g(i)` drawn from
/// `allowed[i]` (tried in the given order) and `g` continuous. `visit`
/// returns `false` to stop.
pub(crate) fn enumerate_maps(
    d: &DigitalImage,
    x: &DigitalImage,
    allowed: &[Vec<usize>],
    nodes: &mut u64,
    limit: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Enum {
    let order = bfs_order(d);
    let mut pos = vec![0; d.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .map(|&i| {
            d.neighbors_of(i)
                .iter()
                .copied()
                .filter(|&j| pos[j] < pos[i])
                .collect()
        })
        .collect();
    let mut g = vec![usize::MAX; d.len()];
    fn rec(
        k: usize,
        order: &[usize],
        earlier: &[Vec<usize>],
        allowed: &[Vec<usize>],
        x: &DigitalImage,
        g: &mut Vec<usize>,
        nodes: &mut u64,
        limit: u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Enum {
        if k == order.len() {
            return if visit(g) {
                Enum::Completed
            } else {
                Enum::Stopped
            };
        }
        let i = order[k];
        for &v in &allowed[i] {
            if *nodes >= limit {
                return Enum::OutOfBudget;
            }
            *nodes += 1;
            if earlier[k].iter().all(|&j| x.adj_or_eq(v, g[j])) {
                g[i] = v;
                match rec(k + 1, order, earlier, allowed, x, g, nodes, limit, visit) {
                    Enum::Completed => {}
                    other => return other,
                }
            }
        }
        g[i] = usize::MAX;
        Enum::Completed
    }
    rec(0, &order, &earlier, allowed, x, &mut g, nodes, limit, visit)
}

/// Vertices in breadth-first order, component by component.
pub(crate) fn bfs_order(d: &DigitalImage) -> Vec<usize> {
    let mut seen = vec![false; d.len()];
    let mut out = Vec::with_capacity(d.len());
    for s in 0..d.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            out.push(i);
            for &j in d.neighbors_of(i) {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
    }
    out
}

fn image_set(f: &[usize]) -> Vec<usize> {
    let mut s = f.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Shrinking moves towards `c`: repeatedly pick a continuous map of the
/// current image into `X` that moves each point to an equal or adjacent
/// point, preferring points closer to `c`, until the image is a point.
fn greedy(x: &DigitalImage, f0: &[usize], c: usize, max_steps: usize) -> Option<Vec<Vec<usize>>> {
    let dist = x.distances_from(c);
    let key = |v: usize| (dist[v].unwrap_or(usize::MAX), v);
    let mut steps = vec![f0.to_vec()];
    let mut f = f0.to_vec();
    let mut nodes = 0u64;
    while image_set(&f).len() > 1 {
        if steps.len() > max_steps {
            return None;
        }
        let s = image_set(&f);
        let sub = x.subimage(&s).ok()?;
        let allowed: Vec<Vec<usize>> = s
            .iter()
            .map(|&p| {
                let mut n = x.closed_neighborhood(p);
                n.sort_by_key(|&v| key(v));
                n
            })
            .collect();
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut seen = 0;
        enumerate_maps(&sub, x, &allowed, &mut nodes, GREEDY_NODES, &mut |h| {
            let size = image_set(h).len();
            if best.as_ref().is_none_or(|(b, _)| size < *b) {
                best = Some((size, h.to_vec()));
            }
            seen += 1;
            seen < GREEDY_SOLUTIONS && size > 1
        });
        let (size, h) = best?;
        if size >= s.len() {
            return None;
        }
        let at: HashMap<usize, usize> = s.iter().enumerate().map(|(k, &p)| (p, h[k])).collect();
        f = f.iter().map(|v| at[v]).collect();
        steps.push(f.clone());
    }
    Some(steps)
}

/// Breadth-first search over all homotopy steps from `f0`. Returns the
/// shortest sequence ending in a constant map.
fn exhaustive(
    d: &DigitalImage,
    x: &DigitalImage,
    f0: Vec<usize>,
    max_steps: usize,
    budget: u64,
) -> SearchOutcome<Vec<Vec<usize>>> {
    let is_const = |f: &[usize]| f.iter().all(|&v| v == f[0]);
    let mut parent: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
    let rebuild = |parent: &HashMap<Vec<usize>, Option<Vec<usize>>>, end: Vec<usize>| {
        let mut path = vec![end];
        while let Some(Some(p)) = parent.get(path.last().unwrap()) {
            path.push(p.clone());
        }
        path.reverse();
        path
    };
    if is_const(&f0) {
        return SearchOutcome::Found(vec![f0]);
    }
    parent.insert(f0.clone(), None);
    let mut frontier = vec![f0];
    let mut nodes = 0u64;
    for _ in 0..max_steps {
        let mut next = Vec::new();
        for f in &frontier {
            let allowed: Vec<Vec<usize>> = f.iter().map(|&v| x.closed_neighborhood(v)).collect();
            let mut hit = None;
            let status = enumerate_maps(d, x, &allowed, &mut nodes, budget, &mut |g| {
                if !parent.contains_key(g) {
                    parent.insert(g.to_vec(), Some(f.clone()));
                    if is_const(g) {
                        hit = Some(g.to_vec());
                        return false;
                    }
                    next.push(g.to_vec());
                }
                true
            });
            if let Some(end) = hit {
                return SearchOutcome::Found(rebuild(&parent, end));
            }
            if status == Enum::OutOfBudget {
                return SearchOutcome::Unknown;
            }
        }
        if next.is_empty() {
            return SearchOutcome::Refuted;
        }
        frontier = next;
    }
    SearchOutcome::Unknown
}

/// Contraction search for a map `D -> X` starting at `f0`. Greedy shrinking
/// towards each point of `X` in turn, then an exhaustive search which is the
/// only source of `Refuted`.
pub(crate) fn contract_from(
    d: &DigitalImage,
    x: &DigitalImage,
    f0: Vec<usize>,
    max_steps: usize,
    budget: u64,
    exec: Exec,
) -> SearchOutcome<Vec<Vec<usize>>> {
    if let Some(steps) = exec.find_map_first(x.len(), |c| greedy(x, &f0, c, max_steps)) {
        return SearchOutcome::Found(steps);
    }
    exhaustive(d, x, f0, max_steps, budget)
}

/// Result of [`find_contraction`].
#[derive(Clone, Debug)]
pub enum ContractionSearch<'a> {
    Found(ContractionCertificate<'a>),
    NotContractible,
    Unknown,
}

impl ContractionSearch<'_> {
    pub fn is_found(&self) -> bool {
        matches!(self, ContractionSearch::Found(_))
    }
}

/// Looks for a contraction of `x` with at most `max_steps` steps.
///
/// `NotContractible` is only returned when every map reachable from the
/// identity by homotopy steps has been enumerated.
pub fn find_contraction(x: &DigitalImage, max_steps: usize, budget: u64) -> ContractionSearch<'_> {
    find_contraction_with(x, max_steps, budget, Exec::default())
}

pub fn find_contraction_with(
    x: &DigitalImage,
    max_steps: usize,
    budget: u64,
    exec: Exec,
) -> ContractionSearch<'_> {
    let id: Vec<usize> = (0..x.len()).collect();
    match contract_from(x, x, id, max_steps, budget, exec) {
        SearchOutcome::Found(steps) => {
            let target = steps.last().unwrap()[0];
            let script = HomotopyScript::new(x, x, steps).expect("tables built over x");
            ContractionSearch::Found(
                ContractionCertificate::new(script, target).expect("target in x"),
            )
        }
        SearchOutcome::Refuted => ContractionSearch::NotContractible,
        SearchOutcome::Unknown => ContractionSearch::Unknown,
    }
}

/// Looks for a contraction of the inclusion `part -> X` inside `X`.
/// Tables are indexed like `part`.
pub fn find_inclusion_contraction(
    x: &DigitalImage,
    part: &[usize],
    max_steps: usize,
    budget: u64,
) -> SearchOutcome<Vec<Vec<usize>>> {
    let mut sorted = part.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let Ok(u) = x.subimage(&sorted) else {
        return SearchOutcome::Refuted;
    };
    match contract_from(&u, x, sorted.clone(), max_steps, budget, Exec::default()) {
        SearchOutcome::Found(steps) => {
            let pos: Vec<usize> = part
                .iter()
                .map(|p| sorted.binary_search(p).unwrap())
                .collect();
            SearchOutcome::Found(
                steps
                    .into_iter()
                    .map(|s| pos.iter().map(|&k| s[k]).collect())
                    .collect(),
            )
        }
        SearchOutcome::Refuted => SearchOutcome::Refuted,
        SearchOutcome::Unknown => SearchOutcome::Unknown,
    }
}

/// Proof that an image is not contractible: a simple closed curve `C`
/// of at least five points inside `X` and a continuous retraction `X -> C`.
///
/// Maps of a curve of `m >= 5` points into itself have a winding number,
/// and two maps whose values are pointwise equal or adjacent have the same
/// one. The identity winds once and a constant map does not, so `C` is not
/// contractible, and neither is any image retracting onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionObstruction {
    /// Points of `C`, as indices into `X`.
    pub cycle: Vec<usize>,
    /// `r(i)` for every point of `X`.
    pub retraction: Vec<usize>,
}

pub fn verify_obstruction(x: &DigitalImage, o: &RetractionObstruction) -> bool {
    let mut cyc = o.cycle.clone();
    cyc.sort_unstable();
    cyc.dedup();
    if cyc.len() != o.cycle.len() || cyc.len() < 5 || o.retraction.len() != x.len() {
        return false;
    }
    let Ok(c) = x.subimage(&cyc) else {
        return false;
    };
    if !is_simple_closed_curve(&c) {
        return false;
    }
    if o.retraction.iter().any(|v| cyc.binary_search(v).is_err()) {
        return false;
    }
    if cyc.iter().any(|&v| o.retraction[v] != v) {
        return false;
    }
    (0..x.len()).all(|i| {
        x.neighbors_of(i)
            .iter()
            .all(|&j| x.adj_or_eq(o.retraction[i], o.retraction[j]))
    })
}

/// Searches induced cycles of length at least five and retractions onto
/// them, within `budget` nodes.
pub fn find_obstruction(x: &DigitalImage, budget: u64) -> Option<RetractionObstruction> {
    let mut nodes = 0u64;
    for cycle in induced_cycles(x, &mut nodes, budget) {
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        let allowed: Vec<Vec<usize>> = (0..x.len())
            .map(|i| {
                if sorted.binary_search(&i).is_ok() {
                    vec![i]
                } else {
                    let d = x.distances_from(i);
                    let mut s = sorted.clone();
                    s.sort_by_key(|&v| (d[v].unwrap_or(usize::MAX), v));
                    s
                }
            })
            .collect();
        let mut found = None;
        let status = enumerate_maps(x, x, &allowed, &mut nodes, budget, &mut |r| {
            found = Some(r.to_vec());
            false
        });
        if let Some(retraction) = found {
            return Some(RetractionObstruction { cycle, retraction });
        }
        if status == Enum::OutOfBudget {
            return None;
        }
    }
    None
}

/// Induced cycles with at least five vertices, each listed once starting
/// from its smallest vertex, shortest first.
fn induced_cycles(x: &DigitalImage, nodes: &mut u64, budget: u64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in 0..x.len() {
        let mut path = vec![s];
        extend_cycle(x, &mut path, &mut out, nodes, budget);
    }
    out.sort_by_key(|c| c.len());
    out
}

fn extend_cycle(
    x: &DigitalImage,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut u64,
    budget: u64,
) {
    if *nodes >= budget {
        return;
    }
    *nodes += 1;
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 3 && x.is_adjacent(last, s) {
        if path.len() >= 5 && path[1] < last {
            out.push(path.clone());
        }
        return;
    }
    for &n in x.neighbors_of(last) {
        if n <= s || path.contains(&n) {
            continue;
        }
        // chordless: apart from its predecessor, n may only touch the start
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| x.is_adjacent(p, n)) {
            continue;
        }
        path.push(n);
        extend_cycle(x, path, out, nodes, budget);
        path.pop();
    }
}
