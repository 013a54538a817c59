//! Constraint search for motion-planning rules.
//!
//! A rule on `U ⊂ X^n` assigns each member a spider whose legs all have the
//! same length `L`; shorter rules are padded by holding the last value,
//! which synchronization does anyway, so nothing is lost by fixing `L`.
//! Members are visited breadth-first in the product adjacency and each leg
//! is built time step by time step, steps closer to the leg's end first.

use std::collections::{HashMap, VecDeque};

use super::path::{DigitalPath, PathAdjacency, Spider};
use super::section::{
    all_tuples, tuple_neighbors, verify_spider_section, verify_tc_witness, SectionPart, TcWitness,
    TcnWitness,
};
use crate::exec::Exec;
use crate::grid::DigitalImage;
use crate::homotopy::{
    find_contraction_with, find_obstruction, ContractionCertificate, ContractionSearch,
    RetractionObstruction, DEFAULT_BUDGET,
};

/// Knobs shared by the searches in this module.
#[derive(Clone, Copy, Debug)]
pub struct SynthesisOptions {
    /// Leg length; `None` means `diameter(X) + 4`.
    pub max_len: Option<usize>,
    pub budget: u64,
    pub mode: PathAdjacency,
    /// Look for a slice obstruction before searching.
    pub obstructions: bool,
    pub exec: Exec,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            max_len: None,
            budget: DEFAULT_BUDGET,
            mode: PathAdjacency::Adjacent,
            obstructions: true,
            exec: Exec::default(),
        }
    }
}

impl SynthesisOptions {
    pub fn leg_length(&self, x: &DigitalImage) -> usize {
        self.max_len
            .unwrap_or_else(|| x.diameter().unwrap_or(x.len()) + 4)
    }
}

/// A slice of `U` that no rule can handle.
///
/// Fix every coordinate but `coordinate` as in `member`; if the remaining
/// coordinate ranges over a set containing the cycle of `obstruction`, a
/// rule on `U` would contract the cycle inside `X`, which the retraction
/// forbids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceObstruction {
    pub coordinate: usize,
    pub member: Vec<usize>,
    pub obstruction: RetractionObstruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthesisOutcome<T> {
    Found(T),
    /// No rule exists on this part at any length.
    Obstructed(SliceObstruction),
    /// Every rule with legs of at most this length was ruled out.
    ExhaustedAtLength(usize),
    /// Budget reached.
    Unknown,
}

impl<T> SynthesisOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SynthesisOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> SynthesisOutcome<U> {
        match self {
            SynthesisOutcome::Found(t) => SynthesisOutcome::Found(f(t)),
            SynthesisOutcome::Obstructed(o) => SynthesisOutcome::Obstructed(o),
            SynthesisOutcome::ExhaustedAtLength(l) => SynthesisOutcome::ExhaustedAtLength(l),
            SynthesisOutcome::Unknown => SynthesisOutcome::Unknown,
        }
    }
}

/// Looks for a slice of `members` covering the cycle of `o`.
pub fn find_slice_obstruction(
    n: usize,
    members: &[Vec<usize>],
    o: &RetractionObstruction,
) -> Option<SliceObstruction> {
    let mut cycle = o.cycle.clone();
    cycle.sort_unstable();
    for i in 0..n {
        let mut slices: HashMap<Vec<usize>, (usize, Vec<usize>)> = HashMap::new();
        for (k, u) in members.iter().enumerate() {
            let mut key = u.clone();
            key[i] = usize::MAX;
            slices.entry(key).or_insert((k, Vec::new())).1.push(u[i]);
        }
        let mut hits: Vec<usize> = slices
            .values_mut()
            .filter_map(|(k, vals)| {
                vals.sort_unstable();
                cycle
                    .iter()
                    .all(|c| vals.binary_search(c).is_ok())
                    .then_some(*k)
            })
            .collect();
        hits.sort_unstable();
        if let Some(&k) = hits.first() {
            return Some(SliceObstruction {
                coordinate: i,
                member: members[k].clone(),
                obstruction: o.clone(),
            });
        }
    }
    None
}

enum Flow {
    Found,
    Exhausted,
    Budget,
}

struct Csp<'a> {
    x: &'a DigitalImage,
    n: usize,
    members: &'a [Vec<usize>],
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    /// Leg 0 is the constant path at the first coordinate.
    centered: bool,
    len: usize,
    dist: Vec<Vec<Option<usize>>>,
    comp: Vec<usize>,
    mode: PathAdjacency,
    nodes: u64,
    budget: u64,
    assign: Vec<Vec<Vec<usize>>>,
}

impl Csp<'_> {
    fn related(&self, a: usize, b: usize) -> bool {
        match self.mode {
            PathAdjacency::Adjacent => self.x.adj_or_eq(a, b),
            PathAdjacency::SameComponent => self.comp[a] == self.comp[b],
        }
    }

    fn d(&self, a: usize, b: usize) -> usize {
        self.dist[a][b].unwrap_or(usize::MAX)
    }

    fn fits(&self, k: usize, leg: usize, t: usize, v: usize) -> bool {
        self.earlier[k]
            .iter()
            .all(|&j| self.related(v, self.assign[j][leg][t]))
    }

    fn solve(&mut self, k: usize) -> Flow {
        if k == self.order.len() {
            return Flow::Found;
        }
        let m = self.order[k];
        let u = self.members[m].clone();
        let centers: Vec<usize> = if self.centered {
            vec![u[0]]
        } else {
            let mut c: Vec<usize> = (0..self.x.len())
                .filter(|&c| u.iter().all(|&e| self.d(c, e) <= self.len))
                .collect();
            c.sort_by_key(|&c| (u.iter().map(|&e| self.d(c, e)).sum::<usize>(), c));
            c
        };
        for c in centers {
            if self.nodes >= self.budget {
                return Flow::Budget;
            }
            self.nodes += 1;
            if !(0..self.n).all(|leg| self.fits(k, leg, 0, c)) {
                continue;
            }
            let mut legs = Vec::with_capacity(self.n);
            let first = if self.centered {
                let fixed = vec![c; self.len + 1];
                if !(1..=self.len).all(|t| self.fits(k, 0, t, c)) {
                    continue;
                }
                legs.push(fixed);
                1
            } else {
                0
            };
            let mut cur = vec![c];
            match self.leg(k, &u, first, &mut cur, &mut legs) {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }

    fn leg(
        &mut self,
        k: usize,
        u: &[usize],
        leg: usize,
        cur: &mut Vec<usize>,
        legs: &mut Vec<Vec<usize>>,
    ) -> Flow {
        if leg == self.n {
            let m = self.order[k];
            self.assign[m] = legs.clone();
            let r = self.solve(k + 1);
            if !matches!(r, Flow::Found) {
                self.assign[m].clear();
            }
            return r;
        }
        let t = cur.len();
        if t == self.len + 1 {
            legs.push(cur.clone());
            let mut next = vec![cur[0]];
            let r = self.leg(k, u, leg + 1, &mut next, legs);
            legs.pop();
            return r;
        }
        let end = u[leg];
        let mut cands = self.x.closed_neighborhood(cur[t - 1]);
        cands.retain(|&v| self.d(v, end) <= self.len - t);
        cands.sort_by_key(|&v| (self.d(v, end), v));
        for v in cands {
            if self.nodes >= self.budget {
                return Flow::Budget;
            }
            self.nodes += 1;
            if !self.fits(k, leg, t, v) {
                continue;
            }
            cur.push(v);
            let r = self.leg(k, u, leg, cur, legs);
            cur.pop();
            match r {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }
}

/// Members in breadth-first order of the product adjacency, and for each
/// position the adjacent members visited before it.
fn member_order(x: &DigitalImage, members: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let index: HashMap<&[usize], usize> = members
        .iter()
        .enumerate()
        .map(|(k, u)| (u.as_slice(), k))
        .collect();
    let adj: Vec<Vec<usize>> = members
        .iter()
        .map(|u| {
            let mut a: Vec<usize> = tuple_neighbors(x, u)
                .iter()
                .filter_map(|v| index.get(v.as_slice()).copied())
                .collect();
            a.sort_unstable();
            a
        })
        .collect();
    let mut seen = vec![false; members.len()];
    let mut order = Vec::with_capacity(members.len());
    let mut by_tuple: Vec<usize> = (0..members.len()).collect();
    by_tuple.sort_by(|&a, &b| members[a].cmp(&members[b]));
    for s in by_tuple {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            order.push(i);
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
    }
    let mut pos = vec![0; members.len()];
    for (k, &m) in order.iter().enumerate() {
        pos[m] = k;
    }
    let earlier = order
        .iter()
        .map(|&m| {
            adj[m]
                .iter()
                .copied()
                .filter(|&j| pos[j] < pos[m])
                .collect()
        })
        .collect();
    (order, earlier)
}

fn trim(leg: &[usize]) -> DigitalPath {
    let mut end = leg.len();
    while end > 1 && leg[end - 1] == leg[end - 2] {
        end -= 1;
    }
    DigitalPath::unchecked(leg[..end].to_vec())
}

fn synthesize(
    x: &DigitalImage,
    n: usize,
    members: &[Vec<usize>],
    centered: bool,
    opts: &SynthesisOptions,
) -> SynthesisOutcome<Vec<Spider>> {
    let mut members_sorted = members.to_vec();
    members_sorted.sort();
    members_sorted.dedup();
    if members_sorted.len() != members.len()
        || members
            .iter()
            .any(|u| u.len() != n || u.iter().any(|&i| i >= x.len()))
    {
        return SynthesisOutcome::Unknown;
    }
    if opts.obstructions && !members.is_empty() {
        if let Some(o) = find_obstruction(x, opts.budget) {
            if let Some(s) = find_slice_obstruction(n, members, &o) {
                return SynthesisOutcome::Obstructed(s);
            }
        }
    }
    let len = opts.leg_length(x);
    let (order, earlier) = member_order(x, members);
    let comp = super::path::component_ids(x);
    let mut csp = Csp {
        x,
        n,
        members,
        order,
        earlier,
        centered,
        len,
        dist: x.distance_table(),
        comp,
        mode: opts.mode,
        nodes: 0,
        budget: opts.budget,
        assign: vec![Vec::new(); members.len()],
    };
    match csp.solve(0) {
        Flow::Found => {
            let rules: Vec<Spider> = csp
                .assign
                .iter()
                .map(|legs| Spider::unchecked(legs.iter().map(|l| trim(l)).collect()))
                .collect();
            verify_spider_section(x, n, members, &rules, opts.mode, opts.exec)
                .expect("a synthesized rule passes the verifier");
            SynthesisOutcome::Found(rules)
        }
        Flow::Exhausted => SynthesisOutcome::ExhaustedAtLength(len),
        Flow::Budget => SynthesisOutcome::Unknown,
    }
}

/// Searches a motion-planning rule on `members ⊂ X x X`; rules are aligned
/// with `members`.
pub fn synthesize_section(
    x: &DigitalImage,
    members: &[Vec<usize>],
    opts: &SynthesisOptions,
) -> SynthesisOutcome<Vec<DigitalPath>> {
    synthesize(x, 2, members, true, opts)
        .map(|rules| rules.into_iter().map(|s| s.legs()[1].clone()).collect())
}

/// Searches a spider rule on `members ⊂ X^n`.
pub fn synthesize_spider_section(
    x: &DigitalImage,
    n: usize,
    members: &[Vec<usize>],
    opts: &SynthesisOptions,
) -> SynthesisOutcome<Vec<Spider>> {
    synthesize(x, n, members, false, opts)
}

/// Searches a single rule on all of `X^n`, certifying `TC_n(X) = 1`.
pub fn synthesize_tcn_rule(
    x: &DigitalImage,
    n: usize,
    opts: &SynthesisOptions,
) -> SynthesisOutcome<TcnWitness> {
    let members = all_tuples(x, n);
    synthesize_spider_section(x, n, &members, opts).map(|rules| TcnWitness {
        n,
        parts: vec![SectionPart { members, rules }],
    })
}

/// The rule `(x, y) -> track(x) then track(y) backwards` built from a
/// contraction, on all of `X x X`.
pub fn section_from_contraction(c: &ContractionCertificate) -> TcWitness {
    let x = c.script.domain();
    let tracks: Vec<Vec<usize>> = (0..x.len()).map(|i| c.script.track(i)).collect();
    let members = all_tuples(x, 2);
    let rules = members
        .iter()
        .map(|u| {
            let mut p = tracks[u[0]].clone();
            p.extend(tracks[u[1]].iter().rev().skip(1));
            trim(&p)
        })
        .collect();
    TcWitness {
        parts: vec![SectionPart { members, rules }],
    }
}

/// The spider rule `u -> (track(x_i) backwards)_i` built from a
/// contraction, on all of `X^n`.
pub fn spider_rule_from_contraction(c: &ContractionCertificate, n: usize) -> TcnWitness {
    let x = c.script.domain();
    let back: Vec<Vec<usize>> = (0..x.len())
        .map(|i| c.script.track(i).into_iter().rev().collect())
        .collect();
    let members = all_tuples(x, n);
    let rules = members
        .iter()
        .map(|u| Spider::unchecked(u.iter().map(|&e| trim(&back[e])).collect()))
        .collect();
    TcnWitness {
        n,
        parts: vec![SectionPart { members, rules }],
    }
}

/// Why `TC(X)` exceeds one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotOne {
    /// No path joins some pair.
    Disconnected,
    /// Exhaustive contraction search failed.
    NotContractible,
    Obstruction(RetractionObstruction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcOne {
    Yes(TcWitness),
    No(NotOne),
    Unknown,
}

/// Decides whether one rule on `X x X` exists.
///
/// A rule on `X x X` restricted to `X x {y}` is a contraction of `X`, and a
/// contraction gives the rule of [`section_from_contraction`], so the
/// question is whether `X` is contractible. The contraction search runs
/// first; when it is inconclusive a retraction obstruction or a direct
/// rule search may still settle it.
pub fn tc_is_one(x: &DigitalImage, opts: &SynthesisOptions) -> TcOne {
    if !x.is_connected() {
        return TcOne::No(NotOne::Disconnected);
    }
    match find_contraction_with(x, usize::MAX, opts.budget, opts.exec) {
        ContractionSearch::Found(c) => {
            let w = section_from_contraction(&c);
            verify_tc_witness(x, &w, PathAdjacency::Adjacent)
                .expect("rules from a contraction verify");
            return TcOne::Yes(w);
        }
        ContractionSearch::NotContractible => return TcOne::No(NotOne::NotContractible),
        ContractionSearch::Unknown => {}
    }
    if let Some(o) = find_obstruction(x, opts.budget) {
        return TcOne::No(NotOne::Obstruction(o));
    }
    let members = all_tuples(x, 2);
    match synthesize_section(
        x,
        &members,
        &SynthesisOptions {
            obstructions: false,
            ..*opts
        },
    ) {
        SynthesisOutcome::Found(rules) => TcOne::Yes(TcWitness {
            parts: vec![SectionPart { members, rules }],
        }),
        _ => TcOne::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::motion::section::{verify_section, verify_tcn_witness};

    fn members_of(x: &DigitalImage, a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
        let _ = x;
        a.iter()
            .flat_map(|&p| b.iter().map(move |&q| vec![p, q]))
            .collect()
    }

    #[test]
    fn single_pair_gets_a_geodesic() {
        let x = fixtures::interval(4);
        let members = vec![vec![0, 4]];
        let rules = synthesize_section(&x, &members, &SynthesisOptions::default())
            .found()
            .unwrap();
        assert_eq!(rules[0].points(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn arm_of_theta() {
        let x = fixtures::theta();
        let alpha = fixtures::arc(&x, &fixtures::THETA_ALPHA);
        let members = members_of(&x, &alpha, &alpha);
        let rules = synthesize_section(&x, &members, &SynthesisOptions::default())
            .found()
            .unwrap();
        assert_eq!(
            verify_section(&x, &members, &rules, PathAdjacency::Adjacent),
            Ok(())
        );
    }

    #[test]
    fn theta_has_no_global_rule() {
        let x = fixtures::theta();
        let members = all_tuples(&x, 2);
        let out = synthesize_section(&x, &members, &SynthesisOptions::default());
        assert!(matches!(out, SynthesisOutcome::Obstructed(_)));
        assert!(matches!(
            tc_is_one(&x, &SynthesisOptions::default()),
            TcOne::No(_)
        ));
    }

    #[test]
    fn contractible_images_have_tc_one() {
        for x in [
            fixtures::interval(3),
            fixtures::msc4(8),
            fixtures::msc4(4),
            fixtures::interval_power(1, 2),
        ] {
            assert!(matches!(
                tc_is_one(&x, &SynthesisOptions::default()),
                TcOne::Yes(_)
            ));
        }
    }

    #[test]
    fn hexagon_is_not_one() {
        let x = fixtures::hex_curve6();
        assert_eq!(
            tc_is_one(&x, &SynthesisOptions::default()),
            TcOne::No(NotOne::NotContractible)
        );
    }

    #[test]
    fn disconnected() {
        let x = DigitalImage::new(
            crate::AdjacencyKind::new(1, 1).unwrap(),
            vec![crate::Point::from([0]), crate::Point::from([2])],
        )
        .unwrap();
        assert_eq!(
            tc_is_one(&x, &SynthesisOptions::default()),
            TcOne::No(NotOne::Disconnected)
        );
    }

    #[test]
    fn spider_rule_on_cube() {
        let x = fixtures::interval(1);
        let w = synthesize_tcn_rule(&x, 3, &SynthesisOptions::default())
            .found()
            .unwrap();
        assert_eq!(w.parts[0].members.len(), 8);
        assert_eq!(verify_tcn_witness(&x, &w, PathAdjacency::Adjacent), Ok(1));
    }

    #[test]
    fn rules_from_contractions() {
        let x = fixtures::msc4(4);
        let ContractionSearch::Found(c) =
            find_contraction_with(&x, 8, DEFAULT_BUDGET, Exec::Sequential)
        else {
            panic!("msc4 contracts");
        };
        let w = spider_rule_from_contraction(&c, 3);
        assert_eq!(verify_tcn_witness(&x, &w, PathAdjacency::Adjacent), Ok(1));
        let w2 = section_from_contraction(&c);
        assert_eq!(verify_tc_witness(&x, &w2, PathAdjacency::Adjacent), Ok(1));
    }

    #[test]
    fn exhaustion_at_short_length() {
        let x = fixtures::interval(4);
        let opts = SynthesisOptions {
            max_len: Some(2),
            ..Default::default()
        };
        let out = synthesize_section(&x, &[vec![0, 4]], &opts);
        assert_eq!(out, SynthesisOutcome::ExhaustedAtLength(2));
    }
}
